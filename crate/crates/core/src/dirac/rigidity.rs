//! Isotropic graphs over `𝔍ₙE` for `1 < n < m + 1` are trivial.
//!
//! A bundle map `B : 𝔍ₙE → 𝔇E` is fixed by its values on the local basis
//! [`GeneratorSet`]. With polynomial coefficients of bounded degree the
//! isotropy equations become a finite linear system over the scalars, and
//! the dimension of its solution space is what [`rigidity_solve`] returns.

use std::collections::BTreeMap;

use crate::chart::ChartConfig;
use crate::derivation::Derivation;
use crate::error::{Error, Result};
use crate::forms::{EForm, EKey, ScalarForm};
use crate::index::IndexSet;
use crate::jet::JForm;
use crate::linalg;
use crate::poly::{monomials_up_to, Exponents, Poly};
use crate::scalar::Scalar;

/// Local basis of `𝔍ₙE` over functions: `vol_I ⊗ e_α` with `|I| = m − n`
/// and `vol_J ∧ 𝕕e_α` with `|J| = m − n + 1`, where
/// `vol_I = ι_{∂_{i_1}} .. ι_{∂_{i_k}} vol`.
#[derive(Clone, Debug)]
pub struct GeneratorSet<S: Scalar + std::fmt::Display> {
    pub values: Vec<(IndexSet, usize, JForm<S>)>,
    pub jets: Vec<(IndexSet, usize, JForm<S>)>,
}

/// `vol_I` for an increasing multi-index.
pub fn partial_volume<S: Scalar>(chart: ChartConfig, set: IndexSet) -> ScalarForm<S> {
    let mut out = ScalarForm::volume(chart);
    for i in set.to_vec().into_iter().rev() {
        out = out.iota(Derivation::<S>::coordinate(chart, i).symbol());
    }
    out
}

impl<S: Scalar + std::fmt::Display> GeneratorSet<S> {
    pub fn new(chart: ChartConfig, n: isize) -> Result<Self> {
        let m = chart.dim() as isize;
        if n < 1 || n > m + 1 {
            return Err(Error::Range(format!("generator degree must lie in 1..={}, got {n}", m + 1)));
        }
        let mut values = Vec::new();
        if n <= m {
            for set in IndexSet::subsets(chart.dim(), (m - n) as usize) {
                for alpha in 0..chart.rank() {
                    let form = partial_volume::<S>(chart, set).tensor(alpha);
                    values.push((set, alpha, JForm::from_eform(form)));
                }
            }
        }
        let mut jets = Vec::new();
        for set in IndexSet::subsets(chart.dim(), (m - n + 1) as usize) {
            for alpha in 0..chart.rank() {
                let first_jet = JForm::from_eform(EForm::frame_section(chart, alpha)).jd();
                jets.push((set, alpha, first_jet.jwedge(&partial_volume(chart, set))));
            }
        }
        Ok(GeneratorSet { values, jets })
    }

    pub fn all(&self) -> Vec<JForm<S>> {
        self.values.iter().chain(&self.jets).map(|(_, _, j)| j.clone()).collect()
    }
}

/// Size of the linear system solved by [`rigidity_solve`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RigidityReport {
    pub unknowns: usize,
    pub equations: usize,
    pub solution_dim: usize,
}

/// Solves `⟨B(μ), ν⟩ + ⟨B(ν), μ⟩ = 0` over all generator pairs for an unknown
/// `B : 𝔍ₙE → 𝔇E` whose frame coefficients on each generator are
/// polynomials of total degree at most `max_deg`.
pub fn rigidity_solve<S: Scalar + std::fmt::Display>(
    chart: ChartConfig,
    n: isize,
    max_deg: u32,
) -> Result<RigidityReport> {
    let m = chart.dim() as isize;
    if !(1 < n && n < m + 1) {
        return Err(Error::Range(format!("rigidity needs 1 < n < {}, got n = {n}", m + 1)));
    }
    let gens = GeneratorSet::<S>::new(chart, n)?.all();
    let frame = chart.frame_size();
    let monos = monomials_up_to(chart.dim(), max_deg);
    let nv = chart.dim();

    // contracted[t][a] = ι_{D_a} g_t
    let contracted: Vec<Vec<JForm<S>>> = gens
        .iter()
        .map(|g| (0..frame).map(|a| g.jiota(&Derivation::frame(chart, a))).collect::<Result<Vec<_>>>())
        .collect::<Result<_>>()?;

    let column = |s: usize, a: usize, k: usize| (s * frame + a) * monos.len() + k;
    let unknowns = gens.len() * frame * monos.len();

    let mut rows: Vec<Vec<S>> = Vec::new();
    for s in 0..gens.len() {
        for t in s..gens.len() {
            // equation slot (entry, form slot, exponent) -> row
            let mut eqs: BTreeMap<(u8, EKey, Exponents), Vec<S>> = BTreeMap::new();
            let mut push = |col: usize, j: &JForm<S>| {
                for (part, form) in [(0u8, j.mu0()), (1u8, j.mu1())] {
                    for (key, p) in form.components() {
                        for (e, c) in p.terms() {
                            let row = eqs.entry((part, *key, e.clone())).or_insert_with(|| vec![S::zero(); unknowns]);
                            row[col] = row[col].clone() + c.clone();
                        }
                    }
                }
            };
            for a in 0..frame {
                for (k, e) in monos.iter().enumerate() {
                    let mono = Poly::monomial(nv, e.clone(), S::one());
                    // ⟨B(g_s), g_t⟩ contributes b_{s,a} ι_{D_a} g_t, and symmetrically
                    push(column(s, a, k), &contracted[t][a].mul_fn(&mono));
                    push(column(t, a, k), &contracted[s][a].mul_fn(&mono));
                }
            }
            rows.extend(eqs.into_values());
        }
    }
    let equations = rows.len();
    let solution_dim = linalg::nullspace(rows, unknowns).len();
    Ok(RigidityReport { unknowns, equations, solution_dim })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dirac::fiber::{jet_coordinates, jet_fiber_dim, maximality_at};
    use crate::omni::OmniSection;
    use crate::scalar::{int, Rational};

    #[test]
    fn generators_form_a_fiber_basis() {
        for (m, r) in [(1, 1), (2, 1), (2, 2), (3, 1)] {
            let c = ChartConfig::new(m, r).unwrap();
            for n in 1..=(m as isize + 1) {
                let gens = GeneratorSet::<Rational>::new(c, n).unwrap().all();
                let point: Vec<Rational> = (0..m).map(|i| int(i as i64 + 1)).collect();
                let rows: Vec<_> = gens.iter().map(|g| jet_coordinates(g, &point).unwrap()).collect();
                let dim = jet_fiber_dim(c, n);
                assert_eq!(gens.len(), dim);
                assert_eq!(linalg::rank(rows, dim), dim, "m={m} r={r} n={n}");
            }
        }
    }

    #[test]
    fn partial_volumes() {
        let c = ChartConfig::new(3, 1).unwrap();
        let v = partial_volume::<Rational>(c, IndexSet::singleton(1));
        // ι_{∂2}(dx1∧dx2∧dx3) = −dx1∧dx3
        assert_eq!(v, ScalarForm::basis(c, &[0, 2], Poly::constant(3, int(-1))).unwrap());
    }

    #[test]
    fn small_cases_are_rigid() {
        for (m, r, n, d) in [(3, 1, 2, 0), (2, 2, 2, 0), (2, 2, 2, 1)] {
            let c = ChartConfig::new(m, r).unwrap();
            let report = rigidity_solve::<Rational>(c, n, d).unwrap();
            assert_eq!(report.solution_dim, 0, "{m} {r} {n} {d}: {report:?}");
        }
    }

    // For a line bundle with n = m the value generator has empty multi-index,
    // and `vol ⊗ e ↦ Id`, `vol_i ∧ 𝕕e ↦ ∂_i` has an isotropic graph.
    #[test]
    fn line_bundle_top_degree_is_not_rigid() {
        for (m, d) in [(2, 0), (3, 0), (2, 1)] {
            let c = ChartConfig::new(m, 1).unwrap();
            let report = rigidity_solve::<Rational>(c, m as isize, d).unwrap();
            assert!(report.solution_dim >= 1, "{report:?}");

            let set = GeneratorSet::<Rational>::new(c, m as isize).unwrap();
            let sign = if m % 2 == 0 { int(1) } else { int(-1) };
            let mut graph = vec![OmniSection::new(Derivation::identity(c).scale(&sign), set.values[0].2.clone()).unwrap()];
            for (j, _, nu) in &set.jets {
                let i = j.to_vec()[0];
                graph.push(OmniSection::new(Derivation::coordinate(c, i), nu.clone()).unwrap());
            }
            for a in &graph {
                for b in &graph {
                    assert!(a.pairing(b).unwrap().is_zero());
                }
            }
            let report = maximality_at(&graph, &vec![int(1); m]).unwrap();
            assert!(report.isotropic && report.span_dim == jet_fiber_dim(c, m as isize));
        }
    }

    #[test]
    fn rigidity_fails_for_n_equal_one() {
        let c = ChartConfig::new(2, 1).unwrap();
        assert!(matches!(rigidity_solve::<Rational>(c, 1, 0), Err(Error::Range(_))));
        assert!(matches!(rigidity_solve::<Rational>(c, 3, 0), Err(Error::Range(_))));
    }
}
