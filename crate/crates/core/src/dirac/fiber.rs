//! Pointwise linear algebra in a fiber of `ℰₙ(E)`.
//!
//! Fiber coordinates of a jet form are taken in the connection-split
//! representation `(μ₀ + dμ₁, μ₁)`, which is function-linear, unlike the
//! pair `(μ₀, μ₁)` itself. A derivation contributes its frame coefficients.

use crate::chart::ChartConfig;
use crate::derivation::Derivation;
use crate::error::Result;
use crate::forms::{EForm, EKey};
use crate::index::IndexSet;
use crate::jet::JForm;
use crate::linalg;
use crate::omni::OmniSection;
use crate::poly::Poly;
use crate::scalar::Scalar;

fn jet_slots(chart: ChartConfig, n: isize) -> (Vec<EKey>, Vec<EKey>) {
    let (m, r) = (chart.dim(), chart.rank());
    let keys = |k: isize| -> Vec<EKey> {
        if k < 0 {
            return Vec::new();
        }
        IndexSet::subsets(m, k as usize)
            .into_iter()
            .flat_map(|set| (0..r).map(move |alpha| EKey::new(set, alpha)))
            .collect()
    };
    (keys(n), keys(n - 1))
}

/// Dimension of the fiber of `𝔍ₙE`.
pub fn jet_fiber_dim(chart: ChartConfig, n: isize) -> usize {
    let (a, b) = jet_slots(chart, n);
    a.len() + b.len()
}

/// Coordinates of a jet form's value at `point`.
pub fn jet_coordinates<S: Scalar>(mu: &JForm<S>, point: &[S]) -> Result<Vec<S>> {
    let (t0, t1) = mu.to_split();
    let (k0, k1) = jet_slots(mu.chart(), mu.degree());
    let mut out = Vec::with_capacity(k0.len() + k1.len());
    for k in &k0 {
        out.push(t0.component(k).evaluate(point)?);
    }
    for k in &k1 {
        out.push(t1.component(k).evaluate(point)?);
    }
    Ok(out)
}

/// Constant sections of `𝔍ₙE` whose values form the coordinate basis.
pub fn jet_fiber_basis<S: Scalar>(chart: ChartConfig, n: isize) -> Vec<JForm<S>> {
    let (k0, k1) = jet_slots(chart, n);
    let one = Poly::one(chart.dim());
    let mut out = Vec::new();
    for k in k0 {
        let mut t0 = EForm::zero(chart, n);
        t0.try_add_component(k, one.clone()).expect("valid slot");
        out.push(JForm::from_split(t0, EForm::zero(chart, n - 1)).expect("degrees match"));
    }
    for k in k1 {
        let mut t1 = EForm::zero(chart, n - 1);
        t1.try_add_component(k, one.clone()).expect("valid slot");
        out.push(JForm::from_split(EForm::zero(chart, n), t1).expect("degrees match"));
    }
    out
}

/// Coordinates of a section's value at `point`: frame coefficients of the
/// derivation part, then the jet coordinates.
pub fn section_coordinates<S: Scalar>(e: &OmniSection<S>, point: &[S]) -> Result<Vec<S>> {
    let mut out = e
        .anchor()
        .frame_coefficients()
        .iter()
        .map(|p| p.evaluate(point))
        .collect::<Result<Vec<_>>>()?;
    out.extend(jet_coordinates(e.jpart(), point)?);
    Ok(out)
}

/// Sections whose values at a point form a basis of the fiber of `ℰₙ(E)`.
pub fn omni_fiber_basis<S: Scalar>(chart: ChartConfig, n: isize) -> Vec<OmniSection<S>> {
    let mut out: Vec<OmniSection<S>> = (0..chart.frame_size())
        .map(|a| OmniSection::new(Derivation::frame(chart, a), JForm::zero(chart, n)).expect("n >= 1"))
        .collect();
    for j in jet_fiber_basis(chart, n) {
        out.push(OmniSection::new(Derivation::zero(chart), j).expect("n >= 1"));
    }
    out
}

/// Pointwise comparison of the span `L_p` of some sections with its
/// orthogonal `L_p^⊥` under the pairing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MaximalityReport {
    pub span_dim: usize,
    pub perp_dim: usize,
    pub isotropic: bool,
}

impl MaximalityReport {
    /// `L_p` is maximal isotropic exactly when it is isotropic and
    /// `L_p = L_p^⊥`, i.e. the two dimensions agree.
    pub fn maximal_isotropic(&self) -> bool {
        self.isotropic && self.span_dim == self.perp_dim
    }
}

/// Compares the span of `gens` at `point` with its orthogonal: every fiber
/// vector pairing to zero with all generators must already be in the span.
pub fn maximality_at<S: Scalar>(gens: &[OmniSection<S>], point: &[S]) -> Result<MaximalityReport> {
    let first = gens.first().expect("at least one generator");
    let (chart, n) = (first.chart(), first.n());
    let basis = omni_fiber_basis::<S>(chart, n);
    let span_rows = gens.iter().map(|g| section_coordinates(g, point)).collect::<Result<Vec<_>>>()?;
    let span_dim = linalg::rank(span_rows, basis.len());

    let mut isotropic = true;
    for (i, a) in gens.iter().enumerate() {
        for b in &gens[i..] {
            if jet_coordinates(&a.pairing(b)?, point)?.iter().any(|v| !v.is_zero()) {
                isotropic = false;
            }
        }
    }

    // one equation per (generator, output coordinate); one unknown per basis vector
    let out_dim = jet_fiber_dim(chart, n - 1);
    let mut rows = Vec::new();
    for g in gens {
        let columns = basis
            .iter()
            .map(|u| jet_coordinates(&u.pairing(g)?, point))
            .collect::<Result<Vec<_>>>()?;
        for k in 0..out_dim {
            rows.push(columns.iter().map(|col| col[k].clone()).collect());
        }
    }
    let perp_dim = linalg::nullspace(rows, basis.len()).len();
    Ok(MaximalityReport { span_dim, perp_dim, isotropic })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dirac::BMapD;
    use crate::scalar::{int, Rational};

    type P = Poly<Rational>;
    type J = JForm<Rational>;

    #[test]
    fn coordinates_are_function_linear() {
        let c = ChartConfig::new(2, 1).unwrap();
        let mu = J::new(EForm::zero(c, 1), EForm::basis(c, &[], 0, P::var(2, 1)).unwrap()).unwrap();
        let f = &P::var(2, 0) + &P::one(2);
        let point = [int(2), int(-1)];
        let lhs = jet_coordinates(&mu.mul_fn(&f), &point).unwrap();
        let scale = f.evaluate(&point).unwrap();
        let rhs: Vec<Rational> = jet_coordinates(&mu, &point).unwrap().into_iter().map(|v| v * &scale).collect();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn graphs_of_flat_maps_are_maximal() {
        let c = ChartConfig::new(2, 2).unwrap();
        let mu = J::new(
            EForm::basis(c, &[0, 1], 1, P::var(2, 0)).unwrap(),
            EForm::basis(c, &[1], 0, &P::var(2, 1) * &P::var(2, 1)).unwrap(),
        )
        .unwrap();
        let b = BMapD::from_form(&mu).unwrap();
        let gens: Vec<_> = (0..c.frame_size()).map(|a| b.graph_generator(a)).collect();
        let report = maximality_at(&gens, &[int(1), int(3)]).unwrap();
        assert!(report.maximal_isotropic(), "{report:?}");
        let half = maximality_at(&gens[..3], &[int(1), int(3)]).unwrap();
        assert!(!half.maximal_isotropic());
    }
}
