//! Generic `E`-valued forms on the gauge algebroid `𝔇E` and their
//! Chevalley–Eilenberg calculus.
//!
//! The frame of `𝔇E` is `D_1..D_N` with `N = m + r²`: first the coordinate
//! derivations `∂_1..∂_m`, then the matrix units in row-major order, so the
//! unit sending `e_β ↦ e_γ` sits at position `m + (γ-1) r + β` (1-based).
//! A generic `k`-form is stored by its values on increasing frame tuples.
//!
//! This layer is deliberately naive: every operation is evaluated straight
//! from the defining alternating-sum formulas on frame tuples. It serves as
//! the reference the pair calculus of [`crate::jet`] is checked against.

use std::fmt;

use crate::chart::ChartConfig;
use crate::derivation::{frame_bracket, Derivation};
use crate::error::{Error, Result};
use crate::forms::{basis_text, render_terms, EForm, Form, Slot, TermSeparator};
use crate::index::IndexSet;
use crate::poly::Poly;
use crate::scalar::Scalar;

/// Slot `D^basis ⊗ e_{value+1}` of a generic form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GKey {
    pub basis: IndexSet,
    pub value: usize,
}

impl GKey {
    pub fn new(basis: IndexSet, value: usize) -> Self {
        GKey { basis, value }
    }
}

impl Slot for GKey {
    fn basis(&self) -> IndexSet {
        self.basis
    }

    fn rebase(&self, basis: IndexSet) -> Self {
        GKey { basis, value: self.value }
    }

    fn validate(&self, chart: &ChartConfig) -> Result<()> {
        if self.basis.span() > chart.frame_size() {
            return Err(Error::Index { index: self.basis.span(), bound: chart.frame_size() });
        }
        if self.value >= chart.rank() {
            return Err(Error::Index { index: self.value + 1, bound: chart.rank() });
        }
        Ok(())
    }
}

#[derive(Clone, PartialEq)]
pub struct GenForm<S> {
    inner: Form<S, GKey>,
}

/// Frame mask of the coordinate derivations.
fn coordinate_mask(chart: ChartConfig) -> IndexSet {
    IndexSet::from_bits(((1u64 << chart.dim()) - 1) as u32)
}

/// `D_a` acting on a section given by its frame components.
fn frame_act<S: Scalar>(chart: ChartConfig, a: usize, value: &[Poly<S>]) -> Vec<Poly<S>> {
    let (m, r) = (chart.dim(), chart.rank());
    if a < m {
        value.iter().map(|p| p.d(a)).collect()
    } else {
        let (gamma, beta) = ((a - m) / r, (a - m) % r);
        let mut out = vec![Poly::zero(m); r];
        out[gamma] = value[beta].clone();
        out
    }
}

impl<S: Scalar> GenForm<S> {
    pub fn zero(chart: ChartConfig, degree: isize) -> Self {
        GenForm { inner: Form::zero(chart, degree) }
    }

    pub fn chart(&self) -> ChartConfig {
        self.inner.chart()
    }

    pub fn degree(&self) -> isize {
        self.inner.degree()
    }

    pub fn is_zero(&self) -> bool {
        self.inner.is_zero()
    }

    pub fn components(&self) -> impl Iterator<Item = (&GKey, &Poly<S>)> {
        self.inner.components()
    }

    pub fn num_components(&self) -> usize {
        self.inner.num_components()
    }

    pub fn component(&self, key: &GKey) -> Poly<S> {
        self.inner.component(key)
    }

    pub fn try_add_component(&mut self, key: GKey, coef: Poly<S>) -> Result<()> {
        self.inner.try_add_component(key, coef)
    }

    /// `coef · D^{a_1} ∧ .. ∧ D^{a_k} ⊗ e_{alpha+1}` (0-based frame indices).
    pub fn basis(chart: ChartConfig, indices: &[usize], alpha: usize, coef: Poly<S>) -> Result<Self> {
        let mut out = Self::zero(chart, indices.len() as isize);
        if let Some((negative, set)) = IndexSet::sorted(indices) {
            out.try_add_component(GKey::new(set, alpha), coef.scale(&S::sign(negative)))?;
        }
        Ok(out)
    }

    fn accumulate(&mut self, key: GKey, coef: &Poly<S>, factor: &S) {
        self.inner.accumulate(key, coef, factor);
    }

    pub fn add(&self, other: &Self) -> Self {
        GenForm { inner: self.inner.add(&other.inner) }
    }

    pub fn sub(&self, other: &Self) -> Self {
        GenForm { inner: self.inner.sub(&other.inner) }
    }

    pub fn neg(&self) -> Self {
        GenForm { inner: self.inner.neg() }
    }

    pub fn scale(&self, c: &S) -> Self {
        GenForm { inner: self.inner.scale(c) }
    }

    pub fn mul_fn(&self, f: &Poly<S>) -> Self {
        GenForm { inner: self.inner.mul_fn(f) }
    }

    /// Value on the increasing frame tuple `set`, as frame components.
    pub fn value_on(&self, set: IndexSet) -> Vec<Poly<S>> {
        let c = self.chart();
        (0..c.rank()).map(|alpha| self.component(&GKey::new(set, alpha))).collect()
    }

    /// Pullback `𝕛*ν` along the anchor: the form that evaluates `ν` on the
    /// symbols of its arguments.
    pub fn pullback(nu: &EForm<S>) -> Self {
        let mut out = Self::zero(nu.chart(), nu.degree());
        for (k, p) in nu.components() {
            out.accumulate(GKey::new(k.basis, k.value), p, &S::one());
        }
        out
    }

    /// Components on tuples of coordinate derivations only, read as an
    /// ordinary `E`-valued form.
    pub fn pure_part(&self) -> EForm<S> {
        let mask = coordinate_mask(self.chart());
        let mut out = EForm::zero(self.chart(), self.degree());
        for (k, p) in self.components() {
            if k.basis.is_subset_of(mask) {
                out.accumulate(crate::forms::EKey::new(k.basis, k.value), p, &S::one());
            }
        }
        out
    }

    /// Whether some nonzero component has a matrix unit among its arguments.
    pub fn has_gl_components(&self) -> bool {
        let mask = coordinate_mask(self.chart());
        self.components().any(|(k, _)| !k.basis.is_subset_of(mask))
    }

    /// Chevalley–Eilenberg differential
    /// `dg(D_0..D_k) = Σ (−1)^i D_i·g(..^i..) + Σ_{i<j} (−1)^{i+j} g([D_i, D_j], ..^i..^j..)`.
    pub fn ce_differential(&self) -> Self {
        let c = self.chart();
        let n = c.frame_size() as isize;
        let k = self.degree();
        let mut out = Self::zero(c, k + 1);
        if k + 1 < 0 || k + 1 > n {
            return out;
        }
        for set in IndexSet::subsets(c.frame_size(), (k + 1) as usize) {
            let args = set.to_vec();
            let mut total = vec![Poly::zero(c.dim()); c.rank()];
            for (i, &a) in args.iter().enumerate() {
                let acted = frame_act(c, a, &self.value_on(set.remove(a)));
                let sign = S::sign(i % 2 == 1);
                for (t, v) in total.iter_mut().zip(&acted) {
                    t.add_scaled(v, &sign);
                }
            }
            for (i, &a) in args.iter().enumerate() {
                for (j, &b) in args.iter().enumerate().skip(i + 1) {
                    let rest = set.remove(a).remove(b);
                    for (cidx, coef) in frame_bracket::<S>(c, a, b) {
                        if rest.contains(cidx) {
                            continue;
                        }
                        // g(D_c, rest) with D_c moved into increasing position
                        let negative = (i + j + rest.count_below(cidx)) % 2 == 1;
                        let factor = coef * S::sign(negative);
                        let vals = self.value_on(rest.insert(cidx));
                        for (t, v) in total.iter_mut().zip(&vals) {
                            t.add_scaled(v, &factor);
                        }
                    }
                }
            }
            for (alpha, p) in total.iter().enumerate() {
                out.accumulate(GKey::new(set, alpha), p, &S::one());
            }
        }
        out
    }

    /// Contraction in the first argument; a 0-form contracts to zero.
    fn contract(&self, d: &Derivation<S>) -> Self {
        let c = self.chart();
        c.expect_same(&d.chart());
        let coeffs = d.frame_coefficients();
        let mut out = Self::zero(c, self.degree() - 1);
        for (k, p) in self.components() {
            for a in k.basis.iter() {
                if coeffs[a].is_zero() {
                    continue;
                }
                let negative = k.basis.count_below(a) % 2 == 1;
                out.accumulate(k.rebase(k.basis.remove(a)), &(&coeffs[a] * p), &S::sign(negative));
            }
        }
        out
    }

    /// `ι_𝔡 g = g(𝔡, ..)`.
    pub fn gen_iota(&self, d: &Derivation<S>) -> Result<Self> {
        if self.degree() < 1 {
            return Err(Error::Degree(format!("cannot contract a generic {}-form", self.degree())));
        }
        Ok(self.contract(d))
    }

    /// `𝔏_𝔡 = ι_𝔡 d + d ι_𝔡`.
    pub fn gen_lie(&self, d: &Derivation<S>) -> Self {
        self.ce_differential().contract(d).add(&self.contract(d).ce_differential())
    }

    /// Whether `d ι_{Id} g + ι_{Id} d g = g`.
    pub fn homotopy_check(&self) -> bool {
        let id = Derivation::identity(self.chart());
        let lhs = self.contract(&id).ce_differential().add(&self.ce_differential().contract(&id));
        lhs == *self
    }
}

impl<S: Scalar + fmt::Display> fmt::Display for GenForm<S> {
    /// `genform(k; c*D1^D3 @ e1; ...)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "genform({}", self.degree())?;
        if self.is_zero() {
            return f.write_str("; 0)");
        }
        let terms = self
            .components()
            .map(|(k, p)| (basis_text("D", k.basis), Some(k.value), p.clone()));
        write!(f, "{})", render_terms(terms, TermSeparator::Semicolon))
    }
}

impl<S: Scalar + fmt::Display> fmt::Debug for GenForm<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    type P = Poly<Rational>;
    type G = GenForm<Rational>;
    type D = Derivation<Rational>;

    fn chart(m: usize, r: usize) -> ChartConfig {
        ChartConfig::new(m, r).unwrap()
    }

    fn sample(c: ChartConfig, k: usize) -> G {
        let m = c.dim();
        let mut g = G::zero(c, k as isize);
        for (n, set) in IndexSet::subsets(c.frame_size(), k).into_iter().enumerate() {
            for alpha in 0..c.rank() {
                let coef = &P::var(m, (n + alpha) % m).pow(((n + alpha) % 3) as u32)
                    + &P::constant(m, Rational::from_integer(((n as i64 % 5) - 2).into()));
                g.try_add_component(GKey::new(set, alpha), coef).unwrap();
            }
        }
        g
    }

    #[test]
    fn differential_squares_to_zero() {
        for (m, r) in [(1, 1), (2, 1), (1, 2), (2, 2)] {
            let c = chart(m, r);
            for k in 0..c.frame_size() {
                let g = sample(c, k);
                assert!(g.ce_differential().ce_differential().is_zero(), "m={m} r={r} k={k}");
            }
        }
    }

    #[test]
    fn homotopy_on_every_degree() {
        for (m, r) in [(1, 1), (2, 1), (1, 2), (2, 2)] {
            let c = chart(m, r);
            assert!(G::zero(c, 1).homotopy_check());
            for k in 0..=c.frame_size() {
                assert!(sample(c, k).homotopy_check(), "m={m} r={r} k={k}");
            }
        }
    }

    #[test]
    fn identity_acts_as_identity() {
        let c = chart(1, 2);
        for k in 0..=c.frame_size() {
            let g = sample(c, k);
            assert_eq!(g.gen_lie(&D::identity(c)), g);
            assert!(g.gen_lie(&D::zero(c)).is_zero());
        }
    }

    #[test]
    fn contraction_is_function_linear_and_nilpotent() {
        let c = chart(2, 2);
        let g = sample(c, 3);
        let d = D::coordinate(c, 1).add(&D::matrix_unit(c, 0, 1).mul_fn(&P::var(2, 0)));
        let f = &P::var(2, 1) + &P::one(2);
        assert_eq!(g.gen_iota(&d.mul_fn(&f)).unwrap(), g.gen_iota(&d).unwrap().mul_fn(&f));
        assert!(g.gen_iota(&d).unwrap().gen_iota(&d).unwrap().is_zero());
        assert!(matches!(sample(c, 0).gen_iota(&d), Err(Error::Degree(_))));
    }

    #[test]
    fn lie_commutes_with_differential() {
        let c = chart(2, 2);
        let d = D::coordinate(c, 0).mul_fn(&P::var(2, 1)).add(&D::matrix_unit(c, 1, 0));
        for k in 0..4 {
            let g = sample(c, k);
            assert_eq!(g.gen_lie(&d).ce_differential(), g.ce_differential().gen_lie(&d));
        }
    }

    #[test]
    fn pullback_of_a_section_differential() {
        // d(𝕛* u)(E_{γβ}) = u^β e_γ is nonzero even though u has no x-dependence
        let c = chart(1, 2);
        let u = EForm::frame_section(c, 1);
        let du = G::pullback(&u).ce_differential();
        let unit = 1 + 0 * 2 + 1; // matrix unit e_2 ↦ e_1
        assert_eq!(du.component(&GKey::new(IndexSet::singleton(unit), 0)), P::one(1));
        assert!(du.has_gl_components());
    }

    #[test]
    fn display() {
        let c = chart(1, 1);
        let g = G::basis(c, &[1, 0], 0, P::var(1, 0)).unwrap();
        assert_eq!(g.to_string(), "genform(2; -x1*D1^D2 @ e1)");
        assert_eq!(G::zero(c, 1).to_string(), "genform(1; 0)");
    }
}
