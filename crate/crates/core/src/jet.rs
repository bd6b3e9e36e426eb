//! Jet-valued forms `Ω^n_{𝔍E}` in the pair representation `(μ₀, μ₁)`,
//! where `μ₀` is an `E`-valued `n`-form and `μ₁` an `E`-valued `(n-1)`-form.
//!
//! As a generic form on `𝔇E` the pair stands for `𝕛*μ₀ + 𝕕 𝕛*μ₁`; the
//! conversions to and from [`GenForm`] are [`JForm::embed`] and
//! [`project`]. Multiplication by a function must go through [`jwedge`]:
//! the pair of `f μ` is `(f μ₀ − df ∧ μ₁, f μ₁)`, not the componentwise product.

use std::fmt;

use crate::chart::ChartConfig;
use crate::derivation::Derivation;
use crate::error::{Error, Result};
use crate::forms::{EForm, ScalarForm};
use crate::gauge::{GKey, GenForm};
use crate::poly::Poly;
use crate::scalar::Scalar;

#[derive(Clone, PartialEq)]
pub struct JForm<S> {
    chart: ChartConfig,
    degree: isize,
    mu0: EForm<S>,
    mu1: EForm<S>,
}

impl<S: Scalar> JForm<S> {
    pub fn new(mu0: EForm<S>, mu1: EForm<S>) -> Result<Self> {
        let chart = mu0.chart();
        if mu1.chart() != chart {
            return Err(Error::Dimension { expected: chart.dim(), found: mu1.chart().dim() });
        }
        let n = mu0.degree();
        if n < 0 {
            return Err(Error::Degree(format!("jet forms have degree >= 0, got {n}")));
        }
        if mu1.degree() != n - 1 {
            return Err(Error::Degree(format!(
                "second entry of a degree {n} pair must have degree {}, got {}",
                n - 1,
                mu1.degree()
            )));
        }
        Ok(JForm { chart, degree: n, mu0, mu1 })
    }

    pub fn zero(chart: ChartConfig, n: isize) -> Self {
        JForm { chart, degree: n, mu0: EForm::zero(chart, n), mu1: EForm::zero(chart, n - 1) }
    }

    /// `(ν, 0)`.
    pub fn from_eform(nu: EForm<S>) -> Self {
        let (chart, n) = (nu.chart(), nu.degree());
        JForm { chart, degree: n, mu0: nu, mu1: EForm::zero(chart, n - 1) }
    }

    pub fn chart(&self) -> ChartConfig {
        self.chart
    }

    pub fn degree(&self) -> isize {
        self.degree
    }

    pub fn mu0(&self) -> &EForm<S> {
        &self.mu0
    }

    pub fn mu1(&self) -> &EForm<S> {
        &self.mu1
    }

    pub fn is_zero(&self) -> bool {
        self.mu0.is_zero() && self.mu1.is_zero()
    }

    fn map2(&self, other: &Self, f: impl Fn(&EForm<S>, &EForm<S>) -> EForm<S>) -> Self {
        assert_eq!(self.degree, other.degree, "combining jet forms of different degree");
        JForm {
            chart: self.chart,
            degree: self.degree,
            mu0: f(&self.mu0, &other.mu0),
            mu1: f(&self.mu1, &other.mu1),
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        if self.degree != other.degree {
            return Err(Error::Degree(format!("adding jet forms of degree {} and {}", self.degree, other.degree)));
        }
        Ok(self.add(other))
    }

    pub fn add(&self, other: &Self) -> Self {
        self.map2(other, |a, b| a.add(b))
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.map2(other, |a, b| a.sub(b))
    }

    pub fn neg(&self) -> Self {
        JForm { chart: self.chart, degree: self.degree, mu0: self.mu0.neg(), mu1: self.mu1.neg() }
    }

    pub fn scale(&self, c: &S) -> Self {
        JForm { chart: self.chart, degree: self.degree, mu0: self.mu0.scale(c), mu1: self.mu1.scale(c) }
    }

    /// `ω ∧ μ = (ω∧μ₀ − (−1)^{|ω|} dω∧μ₁, (−1)^{|ω|} ω∧μ₁)`.
    pub fn jwedge(&self, omega: &ScalarForm<S>) -> Self {
        let sign = S::sign(omega.degree() % 2 != 0);
        let mu0 = omega.wedge(&self.mu0).sub(&omega.d().wedge(&self.mu1).scale(&sign));
        JForm {
            chart: self.chart,
            degree: self.degree + omega.degree(),
            mu0,
            mu1: omega.wedge(&self.mu1).scale(&sign),
        }
    }

    /// `f · μ` for a function `f`.
    pub fn mul_fn(&self, f: &Poly<S>) -> Self {
        self.jwedge(&ScalarForm::function(self.chart, f.clone()))
    }

    /// `𝕕μ = (0, μ₀)`.
    pub fn jd(&self) -> Self {
        JForm {
            chart: self.chart,
            degree: self.degree + 1,
            mu0: EForm::zero(self.chart, self.degree + 1),
            mu1: self.mu0.clone(),
        }
    }

    /// `ι_𝔡 μ = (ι_X μ₀ + 𝔏_𝔡 μ₁, −ι_X μ₁)` with `X` the symbol of `𝔡`.
    pub fn jiota(&self, d: &Derivation<S>) -> Result<Self> {
        if self.degree < 1 {
            return Err(Error::Degree(format!("cannot contract a jet form of degree {}", self.degree)));
        }
        let x = d.symbol();
        Ok(JForm {
            chart: self.chart,
            degree: self.degree - 1,
            mu0: self.mu0.iota(x).add(&self.mu1.lie(d)),
            mu1: self.mu1.iota(x).neg(),
        })
    }

    /// `𝔏_𝔡 μ = (𝔏_𝔡 μ₀, 𝔏_𝔡 μ₁)`.
    pub fn jlie(&self, d: &Derivation<S>) -> Self {
        JForm { chart: self.chart, degree: self.degree, mu0: self.mu0.lie(d), mu1: self.mu1.lie(d) }
    }

    /// Connection-split view `(μ₀ + dμ₁, μ₁)` for the flat frame connection.
    pub fn to_split(&self) -> (EForm<S>, EForm<S>) {
        (self.mu0.add(&self.mu1.d()), self.mu1.clone())
    }

    pub fn from_split(tilde0: EForm<S>, tilde1: EForm<S>) -> Result<Self> {
        let mu0 = tilde0.sub(&tilde1.d());
        Self::new(mu0, tilde1)
    }

    /// The generic form `𝕛*μ₀ + 𝕕 𝕛*μ₁` on `𝔇E`.
    pub fn embed(&self) -> GenForm<S> {
        let base = GenForm::pullback(&self.mu0);
        if self.degree == 0 {
            return base;
        }
        base.add(&GenForm::pullback(&self.mu1).ce_differential())
    }
}

/// Outcome of testing whether a generic form is a jet form.
#[derive(Clone, PartialEq)]
pub struct Membership<S> {
    /// The candidate `λ_g`, read off the coordinate components of `ι_{Id} g`.
    pub lambda: EForm<S>,
    /// Failing component equations, formatted for humans; empty on success.
    pub witness: Vec<String>,
}

impl<S> Membership<S> {
    pub fn holds(&self) -> bool {
        self.witness.is_empty()
    }
}

impl<S: Scalar + fmt::Display> fmt::Debug for Membership<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Membership").field("lambda", &self.lambda).field("witness", &self.witness).finish()
    }
}

/// Decides whether `g` lies in the image of [`JForm::embed`]: `ρ = ι_{Id} g`
/// must vanish whenever a matrix unit is among its arguments, and with
/// `λ` the rest of `ρ`, `ι_Φ g = Φ ∘ 𝕛*λ` for every matrix unit `Φ`.
pub fn membership_check<S: Scalar + fmt::Display>(g: &GenForm<S>) -> Membership<S> {
    let c = g.chart();
    let mut witness = Vec::new();
    if g.degree() < 1 {
        return Membership { lambda: EForm::zero(c, g.degree() - 1), witness };
    }
    let id = Derivation::identity(c);
    let rho = g.gen_iota(&id).expect("positive degree");
    let lambda = rho.pure_part();
    if rho.has_gl_components() {
        let residual = rho.sub(&GenForm::pullback(&lambda));
        for (k, p) in residual.components() {
            witness.push(format!("iota_Id g on {} @ e{} = {} but must vanish", slot_text(k), k.value + 1, p));
        }
    }
    let pulled = GenForm::pullback(&lambda);
    let (m, r) = (c.dim(), c.rank());
    for gamma in 0..r {
        for beta in 0..r {
            let unit = Derivation::matrix_unit(c, gamma, beta);
            let lhs = g.gen_iota(&unit).expect("positive degree");
            let mut rhs = GenForm::zero(c, g.degree() - 1);
            for (k, p) in pulled.components() {
                if k.value == beta {
                    rhs.try_add_component(GKey::new(k.basis, gamma), p.clone()).expect("valid slot");
                }
            }
            for (k, p) in lhs.sub(&rhs).components() {
                witness.push(format!(
                    "iota_D{} g - D{} o j*lambda on {} @ e{} = {}",
                    m + gamma * r + beta + 1,
                    m + gamma * r + beta + 1,
                    slot_text(k),
                    k.value + 1,
                    p
                ));
            }
        }
    }
    Membership { lambda, witness }
}

fn slot_text(k: &GKey) -> String {
    if k.basis.is_empty() {
        "()".to_string()
    } else {
        crate::forms::basis_text("D", k.basis)
    }
}

/// Inverse of [`JForm::embed`]: `(λ_{dg}, λ_g)`.
pub fn project<S: Scalar + fmt::Display>(g: &GenForm<S>) -> Result<JForm<S>> {
    let own = membership_check(g);
    if !own.holds() {
        return Err(Error::NotJetForm(own.witness[0].clone()));
    }
    let c = g.chart();
    let dg = g.ce_differential();
    let mu0 = dg.gen_iota(&Derivation::identity(c)).expect("positive degree").pure_part();
    let mu1 = if g.degree() == 0 { EForm::zero(c, -1) } else { own.lambda };
    JForm::new(mu0, mu1)
}

impl<S: Scalar + fmt::Display> fmt::Display for JForm<S> {
    /// `jform(n; mu0; mu1)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "jform({}; {}; {})", self.degree, self.mu0, self.mu1)
    }
}

impl<S: Scalar + fmt::Display> fmt::Debug for JForm<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
