//! Sections of the gauge algebroid `𝔇E` in the split form `𝔡 = ∇_X + Φ`,
//! with `∇` the flat connection of the global frame.
//!
//! `Φ` is stored as an `r × r` matrix acting on column vectors of frame
//! components: `Φ(e_β) = Σ_γ Φ[γ][β] e_γ`. The matrix unit with a single 1 at
//! `[γ][β]` is the frame endomorphism sending `e_β ↦ e_γ` and killing the
//! other frame sections.

use std::fmt;


use crate::chart::ChartConfig;
use crate::error::{Error, Result};
use crate::forms::EForm;
use crate::index::IndexSet;
use crate::poly::Poly;
use crate::scalar::Scalar;

#[derive(Clone, PartialEq)]
pub struct Derivation<S> {
    chart: ChartConfig,
    x: Vec<Poly<S>>,
    phi: Vec<Vec<Poly<S>>>,
}

impl<S: Scalar> Derivation<S> {
    pub fn new(chart: ChartConfig, x: Vec<Poly<S>>, phi: Vec<Vec<Poly<S>>>) -> Result<Self> {
        let (m, r) = (chart.dim(), chart.rank());
        if x.len() != m {
            return Err(Error::Dimension { expected: m, found: x.len() });
        }
        if phi.len() != r || phi.iter().any(|row| row.len() != r) {
            return Err(Error::Rank { expected: r, found: phi.len() });
        }
        if let Some(bad) = x.iter().chain(phi.iter().flatten()).find(|p| p.nvars() != m) {
            return Err(Error::Dimension { expected: m, found: bad.nvars() });
        }
        Ok(Derivation { chart, x, phi })
    }

    pub fn zero(chart: ChartConfig) -> Self {
        let (m, r) = (chart.dim(), chart.rank());
        Derivation {
            chart,
            x: vec![Poly::zero(m); m],
            phi: vec![vec![Poly::zero(m); r]; r],
        }
    }

    /// Pure vector-field part `∇_X`.
    pub fn from_field(chart: ChartConfig, x: Vec<Poly<S>>) -> Result<Self> {
        let r = chart.rank();
        Self::new(chart, x, vec![vec![Poly::zero(chart.dim()); r]; r])
    }

    /// Pure endomorphism `Φ`.
    pub fn from_endomorphism(chart: ChartConfig, phi: Vec<Vec<Poly<S>>>) -> Result<Self> {
        Self::new(chart, vec![Poly::zero(chart.dim()); chart.dim()], phi)
    }

    /// The coordinate derivation `∂_{i+1}` (symbol `∂/∂x^{i+1}`, kills the frame).
    pub fn coordinate(chart: ChartConfig, i: usize) -> Self {
        let mut d = Self::zero(chart);
        d.x[i] = Poly::one(chart.dim());
        d
    }

    /// Matrix unit at `[gamma][beta]`: `e_β ↦ e_γ`.
    pub fn matrix_unit(chart: ChartConfig, gamma: usize, beta: usize) -> Self {
        let mut d = Self::zero(chart);
        d.phi[gamma][beta] = Poly::one(chart.dim());
        d
    }

    /// `Id_E`, the canonical central section.
    pub fn identity(chart: ChartConfig) -> Self {
        let mut d = Self::zero(chart);
        for a in 0..chart.rank() {
            d.phi[a][a] = Poly::one(chart.dim());
        }
        d
    }

    /// Frame element `D_a` of the gauge algebroid: `a < m` are the coordinate
    /// derivations, then the matrix units `[γ][β]` at `m + γ r + β`.
    pub fn frame(chart: ChartConfig, a: usize) -> Self {
        let (m, r) = (chart.dim(), chart.rank());
        if a < m {
            Self::coordinate(chart, a)
        } else {
            let k = a - m;
            Self::matrix_unit(chart, k / r, k % r)
        }
    }

    /// Coefficients along the frame `D_0 .. D_{m+r²-1}`.
    pub fn frame_coefficients(&self) -> Vec<Poly<S>> {
        let mut out = self.x.clone();
        for row in &self.phi {
            out.extend(row.iter().cloned());
        }
        out
    }

    pub fn from_frame_coefficients(chart: ChartConfig, coeffs: &[Poly<S>]) -> Result<Self> {
        let (m, r) = (chart.dim(), chart.rank());
        if coeffs.len() != chart.frame_size() {
            return Err(Error::Dimension { expected: chart.frame_size(), found: coeffs.len() });
        }
        let x = coeffs[..m].to_vec();
        let phi = (0..r).map(|g| coeffs[m + g * r..m + (g + 1) * r].to_vec()).collect();
        Self::new(chart, x, phi)
    }

    pub fn chart(&self) -> ChartConfig {
        self.chart
    }

    /// The symbol (anchor) `𝕛(𝔡)`.
    pub fn symbol(&self) -> &[Poly<S>] {
        &self.x
    }

    pub fn endomorphism(&self) -> &[Vec<Poly<S>>] {
        &self.phi
    }

    pub fn is_zero(&self) -> bool {
        self.x.iter().chain(self.phi.iter().flatten()).all(Poly::is_zero)
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&Poly<S>, &Poly<S>) -> Poly<S>) -> Self {
        self.chart.expect_same(&other.chart);
        Derivation {
            chart: self.chart,
            x: self.x.iter().zip(&other.x).map(|(a, b)| f(a, b)).collect(),
            phi: self
                .phi
                .iter()
                .zip(&other.phi)
                .map(|(ra, rb)| ra.iter().zip(rb).map(|(a, b)| f(a, b)).collect())
                .collect(),
        }
    }

    fn map(&self, f: impl Fn(&Poly<S>) -> Poly<S>) -> Self {
        Derivation {
            chart: self.chart,
            x: self.x.iter().map(&f).collect(),
            phi: self.phi.iter().map(|row| row.iter().map(&f).collect()).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn scale(&self, c: &S) -> Self {
        self.map(|p| p.scale(c))
    }

    /// `f · 𝔡`.
    pub fn mul_fn(&self, f: &Poly<S>) -> Self {
        self.map(|p| f * p)
    }

    /// Commutator `[𝔡₁, 𝔡₂]` of derivations:
    /// `([X₁, X₂], X₁(Φ₂) − X₂(Φ₁) + Φ₁Φ₂ − Φ₂Φ₁)`.
    pub fn commutator(&self, other: &Self) -> Self {
        self.chart.expect_same(&other.chart);
        let (m, r) = (self.chart.dim(), self.chart.rank());
        let x = (0..m)
            .map(|j| &other.x[j].directional(&self.x) - &self.x[j].directional(&other.x))
            .collect();
        let mut phi = vec![vec![Poly::zero(m); r]; r];
        for g in 0..r {
            for b in 0..r {
                let mut entry = &other.phi[g][b].directional(&self.x) - &self.phi[g][b].directional(&other.x);
                for k in 0..r {
                    entry = &entry + &(&self.phi[g][k] * &other.phi[k][b]);
                    entry = &entry - &(&other.phi[g][k] * &self.phi[k][b]);
                }
                phi[g][b] = entry;
            }
        }
        Derivation { chart: self.chart, x, phi }
    }

    /// `𝔡(u)` for a section `u` (an `E`-valued 0-form).
    pub fn apply(&self, u: &EForm<S>) -> Result<EForm<S>> {
        if u.degree() != 0 {
            return Err(Error::Degree(format!("derivations act on sections, got a {}-form", u.degree())));
        }
        self.chart.expect_same(&u.chart());
        let mut out = EForm::zero(self.chart, 0);
        let r = self.chart.rank();
        for alpha in 0..r {
            let ua = u.component(&crate::forms::EKey::new(IndexSet::EMPTY, alpha));
            if ua.is_zero() {
                continue;
            }
            let key = crate::forms::EKey::new(IndexSet::EMPTY, alpha);
            out.accumulate(key, &ua.directional(&self.x), &S::one());
            for gamma in 0..r {
                let entry = &self.phi[gamma][alpha];
                if !entry.is_zero() {
                    out.accumulate(crate::forms::EKey::new(IndexSet::EMPTY, gamma), &(entry * &ua), &S::one());
                }
            }
        }
        Ok(out)
    }
}

impl<S: Scalar + fmt::Display> fmt::Display for Derivation<S> {
    /// `der(X1=1, X2=x1; Phi[1][2]=x2)`, listing only nonzero entries.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let xs: Vec<String> = self
            .x
            .iter()
            .enumerate()
            .filter(|(_, p)| !p.is_zero())
            .map(|(i, p)| format!("X{}={}", i + 1, p))
            .collect();
        let mut phis = Vec::new();
        for (g, row) in self.phi.iter().enumerate() {
            for (b, p) in row.iter().enumerate() {
                if !p.is_zero() {
                    phis.push(format!("Phi[{}][{}]={}", g + 1, b + 1, p));
                }
            }
        }
        write!(f, "der({}; {})", xs.join(", "), phis.join(", "))
    }
}

impl<S: Scalar + fmt::Display> fmt::Debug for Derivation<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Frame structure constants: `[D_a, D_b] = Σ_c coeff · D_c`. Only pairs of
/// matrix units bracket nontrivially, via the operator commutator
/// `[E_{γβ}, E_{ρδ}] = δ_{βρ} E_{γδ} − δ_{δγ} E_{ρβ}`.
pub fn frame_bracket<S: Scalar>(chart: ChartConfig, a: usize, b: usize) -> Vec<(usize, S)> {
    let (m, r) = (chart.dim(), chart.rank());
    if a < m || b < m {
        return Vec::new();
    }
    let (g1, b1) = ((a - m) / r, (a - m) % r);
    let (g2, b2) = ((b - m) / r, (b - m) % r);
    let mut out: Vec<(usize, S)> = Vec::new();
    if b1 == g2 {
        out.push((m + g1 * r + b2, S::one()));
    }
    if b2 == g1 {
        out.push((m + g2 * r + b1, -S::one()));
    }
    // E_{γγ} with itself cancels
    let mut merged: Vec<(usize, S)> = Vec::new();
    for (c, v) in out {
        match merged.iter_mut().find(|(k, _)| *k == c) {
            Some(entry) => entry.1 = entry.1.clone() + v,
            None => merged.push((c, v)),
        }
    }
    merged.retain(|(_, v)| !v.is_zero());
    merged
}

#[allow(dead_code)]
fn is_identity<S: Scalar>(d: &Derivation<S>) -> bool {
    d.x.iter().all(Poly::is_zero)
        && d.phi.iter().enumerate().all(|(g, row)| {
            row.iter().enumerate().all(|(b, p)| {
                if g == b {
                    p.as_constant().map(|c| c.is_one()).unwrap_or(false)
                } else {
                    p.is_zero()
                }
            })
        })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    type P = Poly<Rational>;
    type D = Derivation<Rational>;

    fn chart(m: usize, r: usize) -> ChartConfig {
        ChartConfig::new(m, r).unwrap()
    }

    /// Section-action oracle: `[𝔡₁,𝔡₂]u = 𝔡₁𝔡₂u − 𝔡₂𝔡₁u` on every frame section
    /// and on `x_i e_α`, which pins down both parts of a derivation.
    fn same_action(c: ChartConfig, lhs: &D, d1: &D, d2: &D) -> bool {
        let m = c.dim();
        let mut probes = Vec::new();
        for alpha in 0..c.rank() {
            probes.push(EForm::frame_section(c, alpha));
            for i in 0..m {
                probes.push(EForm::basis(c, &[], alpha, P::var(m, i)).unwrap());
            }
        }
        probes.iter().all(|u| {
            let direct = lhs.apply(u).unwrap();
            let a = d1.apply(&d2.apply(u).unwrap()).unwrap();
            let b = d2.apply(&d1.apply(u).unwrap()).unwrap();
            direct == a.sub(&b)
        })
    }

    #[test]
    fn vector_field_bracket() {
        let c = chart(1, 1);
        let dx = D::coordinate(c, 0);
        let x_dx = D::from_field(c, vec![P::var(1, 0)]).unwrap();
        assert_eq!(dx.commutator(&x_dx), dx);
    }

    #[test]
    fn endomorphism_bracket_matches_section_action() {
        let c = chart(1, 2);
        let phi = D::matrix_unit(c, 0, 1);
        let psi = D::matrix_unit(c, 1, 0).add(&D::matrix_unit(c, 0, 0).scale(&Rational::from_integer(3.into())));
        let br = phi.commutator(&psi);
        assert!(same_action(c, &br, &phi, &psi));
        assert!(!br.is_zero());
    }

    #[test]
    fn derivative_of_endomorphism_coefficient() {
        let c = chart(1, 2);
        let phi0 = D::matrix_unit(c, 0, 1);
        let lhs = D::coordinate(c, 0).commutator(&phi0.mul_fn(&P::var(1, 0)));
        assert_eq!(lhs, phi0);
        assert!(same_action(c, &lhs, &D::coordinate(c, 0), &phi0.mul_fn(&P::var(1, 0))));
    }

    #[test]
    fn self_commutator_vanishes() {
        let c = chart(2, 2);
        let d = D::coordinate(c, 1)
            .mul_fn(&P::var(2, 0))
            .add(&D::matrix_unit(c, 1, 0).mul_fn(&P::var(2, 1)));
        assert!(d.commutator(&d).is_zero());
    }

    #[test]
    fn apply_examples() {
        let c = chart(1, 1);
        let u = EForm::basis(c, &[], 0, P::var(1, 0)).unwrap();
        assert_eq!(D::coordinate(c, 0).apply(&u).unwrap(), EForm::frame_section(c, 0));
        assert_eq!(D::identity(c).apply(&u).unwrap(), u);

        let c2 = chart(1, 2);
        let d = D::coordinate(c2, 0).add(&D::matrix_unit(c2, 0, 1));
        let u = EForm::basis(c2, &[], 1, P::var(1, 0)).unwrap();
        let expected = EForm::frame_section(c2, 1).add(&EForm::basis(c2, &[], 0, P::var(1, 0)).unwrap());
        assert_eq!(d.apply(&u).unwrap(), expected);

        let one_form = EForm::basis(c2, &[0], 0, P::one(1)).unwrap();
        assert!(matches!(d.apply(&one_form), Err(Error::Degree(_))));
    }

    #[test]
    fn structure_constants_agree_with_commutator() {
        let c = chart(1, 2);
        for a in 0..c.frame_size() {
            for b in 0..c.frame_size() {
                let direct = D::frame(c, a).commutator(&D::frame(c, b));
                let mut via_constants = D::zero(c);
                for (k, v) in frame_bracket::<Rational>(c, a, b) {
                    via_constants = via_constants.add(&D::frame(c, k).scale(&v));
                }
                assert_eq!(direct, via_constants, "[D{a}, D{b}]");
            }
        }
    }

    #[test]
    fn frame_roundtrip() {
        let c = chart(2, 2);
        let d = D::coordinate(c, 1).add(&D::matrix_unit(c, 1, 0).mul_fn(&P::var(2, 0)));
        let coeffs = d.frame_coefficients();
        assert_eq!(D::from_frame_coefficients(c, &coeffs).unwrap(), d);
        assert!(is_identity(&D::identity(c)));
    }

    #[test]
    fn display() {
        let c = chart(2, 2);
        let d = D::coordinate(c, 0).add(&D::matrix_unit(c, 0, 1).mul_fn(&P::var(2, 1)));
        assert_eq!(d.to_string(), "der(X1=1; Phi[1][2]=x2)");
        assert_eq!(D::zero(c).to_string(), "der(; )");
    }
}
