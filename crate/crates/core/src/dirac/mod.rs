//! Isotropic and involutive subbundles of `ℰₙ(E)` given as graphs.
//!
//! Graphs over `𝔇E` are described by a [`BMapD`], the images of the frame
//! derivations. Graphs over `𝔍ₙE` appear in [`rigidity`] (for `1 < n < m+1`)
//! and [`volume`] (for `n = m+1`). All conditions are function-bilinear, so
//! checking them on frame or generator pairs is enough.

pub mod fiber;
pub mod rigidity;
pub mod volume;

use std::fmt;

use crate::chart::ChartConfig;
use crate::derivation::Derivation;
use crate::error::{Error, Result};
use crate::forms::{EForm, EKey};
use crate::index::IndexSet;
use crate::jet::JForm;
use crate::omni::OmniSection;
use crate::scalar::Scalar;

/// A yes/no answer with the failing equations spelled out.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub holds: bool,
    pub witness: Vec<String>,
}

impl Verdict {
    pub fn from_witness(witness: Vec<String>) -> Self {
        Verdict { holds: witness.is_empty(), witness }
    }
}

/// A bundle map `B : 𝔇E → 𝔍ₙE`, stored by its values on the frame
/// `D_1..D_N` and extended function-linearly.
#[derive(Clone, PartialEq)]
pub struct BMapD<S> {
    chart: ChartConfig,
    n: isize,
    values: Vec<JForm<S>>,
}

impl<S: Scalar> BMapD<S> {
    pub fn new(chart: ChartConfig, n: isize, values: Vec<JForm<S>>) -> Result<Self> {
        if n < 1 {
            return Err(Error::Degree(format!("graph maps target degree n >= 1, got {n}")));
        }
        if values.len() != chart.frame_size() {
            return Err(Error::Dimension { expected: chart.frame_size(), found: values.len() });
        }
        if let Some(bad) = values.iter().find(|v| v.degree() != n || v.chart() != chart) {
            return Err(Error::Degree(format!("frame image of degree {} in a map to degree {n}", bad.degree())));
        }
        Ok(BMapD { chart, n, values })
    }

    pub fn zero(chart: ChartConfig, n: isize) -> Self {
        BMapD { chart, n, values: vec![JForm::zero(chart, n); chart.frame_size()] }
    }

    /// `B_μ : 𝔡 ↦ ι_𝔡 μ` for `μ` of degree `n + 1`.
    pub fn from_form(mu: &JForm<S>) -> Result<Self> {
        let c = mu.chart();
        let values = (0..c.frame_size())
            .map(|a| mu.jiota(&Derivation::frame(c, a)))
            .collect::<Result<Vec<_>>>()?;
        Self::new(c, mu.degree() - 1, values)
    }

    pub fn chart(&self) -> ChartConfig {
        self.chart
    }

    pub fn n(&self) -> isize {
        self.n
    }

    pub fn values(&self) -> &[JForm<S>] {
        &self.values
    }

    pub fn apply(&self, d: &Derivation<S>) -> JForm<S> {
        let mut out = JForm::zero(self.chart, self.n);
        for (coef, value) in d.frame_coefficients().iter().zip(&self.values) {
            if !coef.is_zero() {
                out = out.add(&value.mul_fn(coef));
            }
        }
        out
    }

    /// Graph section `D_a + B(D_a)`.
    pub fn graph_generator(&self, a: usize) -> OmniSection<S> {
        OmniSection::new(Derivation::frame(self.chart, a), self.values[a].clone()).expect("n >= 1")
    }

    /// `ι_{D_a} B(D_b) + ι_{D_b} B(D_a) = 0` on every frame pair.
    pub fn isotropy_check(&self) -> Verdict
    where
        S: fmt::Display,
    {
        let mut witness = Vec::new();
        let size = self.chart.frame_size();
        for a in 0..size {
            for b in a..size {
                let da = Derivation::frame(self.chart, a);
                let db = Derivation::frame(self.chart, b);
                let sum = self.values[b]
                    .jiota(&da)
                    .expect("n >= 1")
                    .add(&self.values[a].jiota(&db).expect("n >= 1"));
                if !sum.is_zero() {
                    witness.push(format!("pair (D{}, D{}): {}", a + 1, b + 1, sum));
                }
            }
        }
        Verdict::from_witness(witness)
    }

    /// The unique `μ` of degree `n + 1` with `B = B_μ`, if there is one.
    ///
    /// `μ₁ = (ι_{Id} μ)₀` is read off the diagonal matrix units, then
    /// `ι_{∂_i} μ₀ = B(∂_i)₀ − L_{∂_i} μ₁` fixes `μ₀`.
    pub fn reconstruct(&self) -> Result<JForm<S>>
    where
        S: fmt::Display,
    {
        let c = self.chart;
        let (m, r) = (c.dim(), c.rank());
        let mut mu1 = EForm::zero(c, self.n);
        for alpha in 0..r {
            mu1 = mu1.add(self.values[m + alpha * r + alpha].mu0());
        }
        let contracted: Vec<EForm<S>> = (0..m)
            .map(|i| self.values[i].mu0().sub(&mu1.lie_vec(Derivation::<S>::coordinate(c, i).symbol())))
            .collect();
        let mut mu0 = EForm::zero(c, self.n + 1);
        if self.n < m as isize {
            for set in IndexSet::subsets(m, (self.n + 1) as usize) {
                let first = set.iter().next().expect("nonempty");
                for alpha in 0..r {
                    let coef = contracted[first].component(&EKey::new(set.remove(first), alpha));
                    mu0.try_add_component(EKey::new(set, alpha), coef)?;
                }
            }
        }
        let mu = JForm::new(mu0, mu1)?;
        let rebuilt = Self::from_form(&mu)?;
        if rebuilt != *self {
            let a = (0..c.frame_size()).find(|&a| rebuilt.values[a] != self.values[a]).expect("differs");
            return Err(Error::Precondition(format!(
                "not the flat map of a jet form: D{} must map to {} but maps to {}",
                a + 1,
                rebuilt.values[a],
                self.values[a]
            )));
        }
        Ok(mu)
    }

    /// Involutivity of an isotropic graph, decided as closedness `𝕕μ = 0`
    /// of the form with `B = B_μ`. The witness lists the components of `μ₀`,
    /// which is exactly what `𝕕μ` carries.
    pub fn involutivity_check(&self) -> Result<Verdict>
    where
        S: fmt::Display,
    {
        let iso = self.isotropy_check();
        if !iso.holds {
            return Err(Error::Precondition(format!("graph is not isotropic: {}", iso.witness[0])));
        }
        let mu = self.reconstruct()?;
        let witness = if mu.jd().is_zero() {
            Vec::new()
        } else {
            vec![format!("d mu = {}", mu.jd())]
        };
        Ok(Verdict::from_witness(witness))
    }

    /// Involutivity decided directly: the bracket of any two frame graph
    /// sections `D_a + B(D_a)` must again lie in the graph.
    pub fn closure_check(&self) -> Verdict
    where
        S: fmt::Display,
    {
        let mut witness = Vec::new();
        let size = self.chart.frame_size();
        for a in 0..size {
            for b in 0..size {
                let br = self
                    .graph_generator(a)
                    .dorfman(&self.graph_generator(b))
                    .expect("same degree");
                let expected = self.apply(br.anchor());
                if &expected != br.jpart() {
                    witness.push(format!(
                        "{{D{} + B, D{} + B}} has jet part {} but B of its anchor is {}",
                        a + 1,
                        b + 1,
                        br.jpart(),
                        expected
                    ));
                }
            }
        }
        Verdict::from_witness(witness)
    }
}

/// The higher Dirac–Jacobi structure `graph B_{𝕕(ν, 0)}` attached to an
/// `E`-valued `n`-form.
pub fn dirac_from_eform<S: Scalar>(nu: &EForm<S>) -> Result<BMapD<S>> {
    BMapD::from_form(&JForm::from_eform(nu.clone()).jd())
}

impl<S: Scalar + fmt::Display> fmt::Display for BMapD<S> {
    /// `bmap(n; B(D1); ..; B(DN))`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "bmap({}", self.n)?;
        for v in &self.values {
            write!(f, "; {v}")?;
        }
        f.write_str(")")
    }
}

impl<S: Scalar + fmt::Display> fmt::Debug for BMapD<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Poly;
    use crate::scalar::Rational;

    type P = Poly<Rational>;
    type EF = EForm<Rational>;
    type J = JForm<Rational>;
    type B = BMapD<Rational>;

    fn chart(m: usize, r: usize) -> ChartConfig {
        ChartConfig::new(m, r).unwrap()
    }

    fn x(m: usize, i: usize) -> P {
        P::var(m, i)
    }

    fn sample(c: ChartConfig, n: isize) -> J {
        let m = c.dim();
        let mut mu0 = EF::zero(c, n);
        let mut mu1 = EF::zero(c, n - 1);
        for (k, set) in IndexSet::subsets(m, n as usize).into_iter().enumerate() {
            mu0.try_add_component(EKey::new(set, k % c.rank()), &x(m, k % m) * &x(m, 0)).unwrap();
        }
        for (k, set) in IndexSet::subsets(m, (n - 1) as usize).into_iter().enumerate() {
            mu1.try_add_component(EKey::new(set, (k + 1) % c.rank()), &x(m, (k + 1) % m) + &P::one(m)).unwrap();
        }
        J::new(mu0, mu1).unwrap()
    }

    #[test]
    fn flat_maps_are_isotropic_and_reconstruct() {
        for (m, r) in [(1, 1), (2, 1), (2, 2)] {
            let c = chart(m, r);
            for n in 1..=(m as isize + 1) {
                let mu = sample(c, n + 1);
                let b = B::from_form(&mu).unwrap();
                assert!(b.isotropy_check().holds);
                assert_eq!(b.reconstruct().unwrap(), mu, "m={m} r={r} n={n}");
            }
        }
        let zero = B::zero(chart(2, 1), 1);
        assert!(zero.isotropy_check().holds);
        assert!(zero.involutivity_check().unwrap().holds);
    }

    #[test]
    fn diagonal_image_breaks_isotropy() {
        let c = chart(1, 1);
        let mut b = B::zero(c, 1);
        b.values[0] = J::from_eform(EF::basis(c, &[0], 0, P::one(1)).unwrap());
        let verdict = b.isotropy_check();
        assert!(!verdict.holds);
        assert!(verdict.witness[0].starts_with("pair (D1, D1)"));
        assert!(matches!(b.involutivity_check(), Err(Error::Precondition(_))));
    }

    #[test]
    fn involutive_iff_closed() {
        let c = chart(2, 1);
        let closed = B::from_form(&sample(c, 1).jd()).unwrap();
        assert!(closed.involutivity_check().unwrap().holds);
        assert!(closed.closure_check().holds);

        let mu = J::from_eform(EF::basis(c, &[0, 1], 0, x(2, 0)).unwrap());
        let open = B::from_form(&mu).unwrap();
        assert!(!open.involutivity_check().unwrap().holds);
        assert!(!open.closure_check().holds);
    }

    #[test]
    fn direct_route_agrees_on_rank_two() {
        let c = chart(1, 2);
        for n in 1..=2 {
            let mu = sample(c, n + 1);
            let b = B::from_form(&mu).unwrap();
            assert_eq!(b.closure_check().holds, mu.jd().is_zero());
            assert_eq!(b.involutivity_check().unwrap().holds, mu.jd().is_zero());
        }
    }

    #[test]
    fn eform_correspondence_is_injective() {
        let c = chart(2, 2);
        let nu = EF::basis(c, &[0], 1, x(2, 1)).unwrap();
        let nu2 = nu.add(&EF::basis(c, &[1], 0, P::one(2)).unwrap());
        let (b, b2) = (dirac_from_eform(&nu).unwrap(), dirac_from_eform(&nu2).unwrap());
        assert!(b.isotropy_check().holds && b.involutivity_check().unwrap().holds);
        assert_ne!(b, b2);
        assert_eq!(dirac_from_eform(&EF::zero(c, 1)).unwrap(), B::zero(c, 1));
    }
}
