//! The higher omni-Lie algebroid `ℰₙ(E) = 𝔇E ⊕ 𝔍ₙE`: anchor, Dorfman
//! bracket, symmetric pairing and the bracket twisted by a jet form.

use std::fmt;

use crate::chart::ChartConfig;
use crate::derivation::Derivation;
use crate::error::{Error, Result};
use crate::forms::{EForm, ScalarForm};
use crate::jet::JForm;
use crate::poly::Poly;
use crate::scalar::Scalar;

/// A section `𝔡 + μ` with `μ` a jet form of the fixed degree `n ≥ 1`.
#[derive(Clone, PartialEq)]
pub struct OmniSection<S> {
    dpart: Derivation<S>,
    jpart: JForm<S>,
}

impl<S: Scalar> OmniSection<S> {
    pub fn new(dpart: Derivation<S>, jpart: JForm<S>) -> Result<Self> {
        if dpart.chart() != jpart.chart() {
            return Err(Error::Dimension { expected: dpart.chart().dim(), found: jpart.chart().dim() });
        }
        if jpart.degree() < 1 {
            return Err(Error::Degree(format!("omni sections need n >= 1, got {}", jpart.degree())));
        }
        Ok(OmniSection { dpart, jpart })
    }

    pub fn zero(chart: ChartConfig, n: isize) -> Self {
        OmniSection { dpart: Derivation::zero(chart), jpart: JForm::zero(chart, n) }
    }

    pub fn chart(&self) -> ChartConfig {
        self.dpart.chart()
    }

    pub fn n(&self) -> isize {
        self.jpart.degree()
    }

    /// `ρ(𝔡 + μ) = 𝔡`.
    pub fn anchor(&self) -> &Derivation<S> {
        &self.dpart
    }

    pub fn jpart(&self) -> &JForm<S> {
        &self.jpart
    }

    pub fn is_zero(&self) -> bool {
        self.dpart.is_zero() && self.jpart.is_zero()
    }

    fn same_degree(&self, other: &Self) -> Result<()> {
        if self.n() != other.n() {
            return Err(Error::Degree(format!("sections of degree {} and {}", self.n(), other.n())));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_degree(other)?;
        Ok(OmniSection { dpart: self.dpart.add(&other.dpart), jpart: self.jpart.add(&other.jpart) })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.same_degree(other)?;
        Ok(OmniSection { dpart: self.dpart.sub(&other.dpart), jpart: self.jpart.sub(&other.jpart) })
    }

    pub fn scale(&self, c: &S) -> Self {
        OmniSection { dpart: self.dpart.scale(c), jpart: self.jpart.scale(c) }
    }

    /// `f · (𝔡 + μ) = f𝔡 + f∧μ`.
    pub fn mul_fn(&self, f: &Poly<S>) -> Self {
        OmniSection { dpart: self.dpart.mul_fn(f), jpart: self.jpart.mul_fn(f) }
    }

    /// `{𝔡 + μ, 𝔯 + ν} = [𝔡, 𝔯] + 𝔏_𝔡 ν − ι_𝔯 𝕕μ`.
    pub fn dorfman(&self, other: &Self) -> Result<Self> {
        self.same_degree(other)?;
        let lie = other.jpart.jlie(&self.dpart);
        let contracted = self.jpart.jd().jiota(&other.dpart)?;
        Ok(OmniSection { dpart: self.dpart.commutator(&other.dpart), jpart: lie.sub(&contracted) })
    }

    /// The bracket in its other form, `[𝔡, 𝔯] + 𝔏_𝔡 ν − 𝔏_𝔯 μ + 𝕕 ι_𝔯 μ`.
    pub fn dorfman_expanded(&self, other: &Self) -> Result<Self> {
        self.same_degree(other)?;
        let jpart = other
            .jpart
            .jlie(&self.dpart)
            .sub(&self.jpart.jlie(&other.dpart))
            .add(&self.jpart.jiota(&other.dpart)?.jd());
        Ok(OmniSection { dpart: self.dpart.commutator(&other.dpart), jpart })
    }

    /// `(𝔡 + μ, 𝔯 + ν)₊ = ½ (ι_𝔡 ν + ι_𝔯 μ)`, a jet form of degree `n − 1`.
    pub fn pairing(&self, other: &Self) -> Result<JForm<S>> {
        self.same_degree(other)?;
        let sum = other.jpart.jiota(&self.dpart)?.add(&self.jpart.jiota(&other.dpart)?);
        Ok(sum.scale(&S::half()))
    }

    /// `{e₁, e₂}_ω = {e₁, e₂} + ι_{ρ(e₂)} ι_{ρ(e₁)} ω` for `ω` of degree `n + 2`.
    pub fn twisted_dorfman(&self, other: &Self, omega: &JForm<S>) -> Result<Self> {
        self.same_degree(other)?;
        if omega.degree() != self.n() + 2 {
            return Err(Error::Degree(format!(
                "twisting form must have degree {}, got {}",
                self.n() + 2,
                omega.degree()
            )));
        }
        let mut out = self.dorfman(other)?;
        let twist = omega.jiota(&self.dpart)?.jiota(&other.dpart)?;
        out.jpart = out.jpart.add(&twist);
        Ok(out)
    }
}

/// Which bracket a Jacobiator is taken for.
#[derive(Clone, Copy)]
pub enum Bracket<'a, S> {
    Plain,
    Twisted(&'a JForm<S>),
}

impl<S: Scalar> Bracket<'_, S> {
    pub fn apply(&self, a: &OmniSection<S>, b: &OmniSection<S>) -> Result<OmniSection<S>> {
        match self {
            Bracket::Plain => a.dorfman(b),
            Bracket::Twisted(omega) => a.twisted_dorfman(b, omega),
        }
    }
}

/// `{e₁,{e₂,e₃}} − {{e₁,e₂},e₃} − {e₂,{e₁,e₃}}`.
pub fn jacobiator<S: Scalar>(
    bracket: Bracket<'_, S>,
    e1: &OmniSection<S>,
    e2: &OmniSection<S>,
    e3: &OmniSection<S>,
) -> Result<OmniSection<S>> {
    let a = bracket.apply(e1, &bracket.apply(e2, e3)?)?;
    let b = bracket.apply(&bracket.apply(e1, e2)?, e3)?;
    let c = bracket.apply(e2, &bracket.apply(e1, e3)?)?;
    a.sub(&b)?.sub(&c)
}

/// Predicted Jacobiator of the `ω`-twisted bracket:
/// `ι_{ρ(e₃)} ι_{ρ(e₂)} ι_{ρ(e₁)} 𝕕ω` as a section with zero derivation part.
pub fn twisted_jacobiator_expected<S: Scalar>(
    omega: &JForm<S>,
    e1: &OmniSection<S>,
    e2: &OmniSection<S>,
    e3: &OmniSection<S>,
) -> Result<OmniSection<S>> {
    let j = omega.jd().jiota(e1.anchor())?.jiota(e2.anchor())?.jiota(e3.anchor())?;
    OmniSection::new(Derivation::zero(e1.chart()), j)
}

/// The conjectural replacement of the self-bracket axiom,
/// `({e, e}, e')₊ = ι_{ρ(e')} 𝕕 (e, e)₊`, as a predicate. It is not a
/// theorem and is not asserted anywhere.
pub fn self_bracket_conjecture<S: Scalar>(e: &OmniSection<S>, e_prime: &OmniSection<S>) -> Result<bool> {
    let lhs = e.dorfman(e)?.pairing(e_prime)?;
    let rhs = e.pairing(e)?.jd().jiota(e_prime.anchor())?;
    Ok(lhs == rhs)
}

/// A section of `(TM ⊕ ℝ) ⊕ (∧ⁿT*M ⊕ ∧ⁿ⁻¹T*M)` for the trivial line bundle,
/// in the split representation of the trivial connection.
#[derive(Clone, PartialEq)]
pub struct LineSection<S> {
    pub field: Vec<Poly<S>>,
    pub function: Poly<S>,
    pub tilde0: ScalarForm<S>,
    pub tilde1: ScalarForm<S>,
}

fn expect_line(chart: ChartConfig) -> Result<()> {
    if chart.rank() != 1 {
        return Err(Error::Rank { expected: 1, found: chart.rank() });
    }
    Ok(())
}

fn scalar_part<S: Scalar>(nu: &EForm<S>) -> ScalarForm<S> {
    nu.value_component(0)
}

impl<S: Scalar> LineSection<S> {
    pub fn from_omni(e: &OmniSection<S>) -> Result<Self> {
        expect_line(e.chart())?;
        let (t0, t1) = e.jpart.to_split();
        Ok(LineSection {
            field: e.dpart.symbol().to_vec(),
            function: e.dpart.endomorphism()[0][0].clone(),
            tilde0: scalar_part(&t0),
            tilde1: scalar_part(&t1),
        })
    }

    pub fn to_omni(&self) -> Result<OmniSection<S>> {
        let chart = self.tilde0.chart();
        expect_line(chart)?;
        let d = Derivation::new(chart, self.field.clone(), vec![vec![self.function.clone()]])?;
        let j = JForm::from_split(self.tilde0.tensor(0), self.tilde1.tensor(0))?;
        OmniSection::new(d, j)
    }
}

/// Pairing of two trivial-line sections, written with ordinary Cartan
/// calculus: `½ (ι_X ν̃₀ + f ν̃₁ + ι_Y μ̃₀ + g μ̃₁, −ι_X ν̃₁ − ι_Y μ̃₁)`.
pub fn trivial_line_pairing<S: Scalar>(
    a: &LineSection<S>,
    b: &LineSection<S>,
) -> Result<(ScalarForm<S>, ScalarForm<S>)> {
    expect_line(a.tilde0.chart())?;
    let half = S::half();
    let first = b
        .tilde0
        .iota(&a.field)
        .add(&b.tilde1.mul_fn(&a.function))
        .add(&a.tilde0.iota(&b.field))
        .add(&a.tilde1.mul_fn(&b.function));
    let second = b.tilde1.iota(&a.field).add(&a.tilde1.iota(&b.field)).neg();
    Ok((first.scale(&half), second.scale(&half)))
}

/// Dorfman bracket of two trivial-line sections in Cartan-calculus form.
pub fn trivial_line_dorfman<S: Scalar>(a: &LineSection<S>, b: &LineSection<S>) -> Result<LineSection<S>> {
    let chart = a.tilde0.chart();
    expect_line(chart)?;
    let d_a = Derivation::new(chart, a.field.clone(), vec![vec![Poly::zero(chart.dim())]])?;
    let d_b = Derivation::new(chart, b.field.clone(), vec![vec![Poly::zero(chart.dim())]])?;
    let field = d_a.commutator(&d_b).symbol().to_vec();
    let function = &b.function.directional(&a.field) - &a.function.directional(&b.field);

    let df = ScalarForm::function(chart, a.function.clone()).d();
    let closed_part = a.tilde0.sub(&a.tilde1.d());
    let tilde0 = b
        .tilde0
        .lie_vec(&a.field)
        .add(&b.tilde0.mul_fn(&a.function))
        .add(&df.wedge(&b.tilde1))
        .sub(&a.tilde0.d().iota(&b.field))
        .sub(&closed_part.mul_fn(&b.function));
    let tilde1 = b
        .tilde1
        .lie_vec(&a.field)
        .add(&b.tilde1.mul_fn(&a.function))
        .add(&closed_part.iota(&b.field));
    Ok(LineSection { field, function, tilde0, tilde1 })
}

impl<S: Scalar + fmt::Display> fmt::Display for OmniSection<S> {
    /// `omni(der(...); jform(...))`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "omni({}; {})", self.dpart, self.jpart)
    }
}

impl<S: Scalar + fmt::Display> fmt::Debug for OmniSection<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl<S: Scalar + fmt::Display> fmt::Debug for LineSection<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let field: Vec<String> = self.field.iter().map(|p| p.to_string()).collect();
        write!(f, "(({}), {}) + ({}, {})", field.join(", "), self.function, self.tilde0, self.tilde1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::EKey;
    use crate::scalar::Rational;

    type P = Poly<Rational>;
    type EF = EForm<Rational>;
    type J = JForm<Rational>;
    type D = Derivation<Rational>;
    type O = OmniSection<Rational>;

    fn chart(m: usize, r: usize) -> ChartConfig {
        ChartConfig::new(m, r).unwrap()
    }

    fn x(m: usize, i: usize) -> P {
        P::var(m, i)
    }

    fn example_section() -> O {
        let c = chart(1, 1);
        let mu = J::from_eform(EF::basis(c, &[0], 0, x(1, 0)).unwrap());
        O::new(D::coordinate(c, 0), mu).unwrap()
    }

    fn sections(c: ChartConfig, n: isize) -> Vec<O> {
        let m = c.dim();
        let mut out = Vec::new();
        for s in 0..3 {
            let mut d = D::coordinate(c, s % m).mul_fn(&(&x(m, (s + 1) % m) + &P::constant(m, Rational::from_integer((s as i64).into()))));
            d = d.add(&D::matrix_unit(c, s % c.rank(), 0).mul_fn(&x(m, 0)));
            let mut mu0 = EF::zero(c, n);
            let mut mu1 = EF::zero(c, n - 1);
            for (k, set) in crate::index::IndexSet::subsets(m, n as usize).into_iter().enumerate() {
                mu0.try_add_component(EKey::new(set, (k + s) % c.rank()), &x(m, (k + s) % m) * &x(m, 0)).unwrap();
            }
            for (k, set) in crate::index::IndexSet::subsets(m, (n - 1) as usize).into_iter().enumerate() {
                mu1.try_add_component(EKey::new(set, 0), x(m, (k + 2 * s) % m).pow((s % 3) as u32)).unwrap();
            }
            out.push(O::new(d, J::new(mu0, mu1).unwrap()).unwrap());
        }
        out
    }

    #[test]
    fn bracket_of_derivations_is_commutator() {
        let c = chart(1, 1);
        let a = O::new(D::coordinate(c, 0), J::zero(c, 1)).unwrap();
        let b = O::new(D::from_field(c, vec![x(1, 0)]).unwrap(), J::zero(c, 1)).unwrap();
        assert_eq!(a.dorfman(&b).unwrap(), a);
    }

    #[test]
    fn self_bracket_and_pairing_example() {
        let e = example_section();
        let c = e.chart();
        let xe = J::from_eform(EF::basis(c, &[], 0, x(1, 0)).unwrap());
        assert_eq!(e.pairing(&e).unwrap(), xe);
        assert_eq!(e.dorfman(&e).unwrap(), O::new(D::zero(c), xe.jd()).unwrap());
    }

    #[test]
    fn pure_jet_sections_commute_trivially() {
        let c = chart(2, 1);
        let s = sections(c, 1);
        let a = O::new(D::zero(c), s[0].jpart().clone()).unwrap();
        let b = O::new(D::zero(c), s[1].jpart().clone()).unwrap();
        assert!(a.dorfman(&b).unwrap().is_zero());
        assert!(a.pairing(&b).unwrap().is_zero());
    }

    #[test]
    fn leibniz_and_anchor() {
        for (m, r) in [(1, 1), (2, 2)] {
            let c = chart(m, r);
            for n in 1..=(m as isize + 1) {
                let s = sections(c, n);
                let jac = jacobiator(Bracket::Plain, &s[0], &s[1], &s[2]).unwrap();
                assert!(jac.is_zero(), "m={m} r={r} n={n}");
                let br = s[0].dorfman(&s[1]).unwrap();
                assert_eq!(br.anchor(), &s[0].anchor().commutator(s[1].anchor()));
                assert_eq!(br, s[0].dorfman_expanded(&s[1]).unwrap());
            }
        }
    }

    #[test]
    fn function_linearity_in_second_slot() {
        let c = chart(2, 2);
        let s = sections(c, 1);
        let f = &x(2, 0) * &x(2, 1);
        let lhs = s[0].dorfman(&s[1].mul_fn(&f)).unwrap();
        let rhs = s[0]
            .dorfman(&s[1])
            .unwrap()
            .mul_fn(&f)
            .add(&s[1].mul_fn(&f.directional(s[0].anchor().symbol())))
            .unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn twisted_jacobiator_identity() {
        let c = chart(3, 1);
        let s = sections(c, 1);
        let mut om0 = EF::zero(c, 3);
        om0.try_add_component(EKey::new(crate::index::IndexSet::from_bits(0b111), 0), x(3, 0)).unwrap();
        let mut om1 = EF::zero(c, 2);
        om1.try_add_component(EKey::new(crate::index::IndexSet::from_bits(0b011), 0), x(3, 2)).unwrap();
        let omega = J::new(om0, om1).unwrap();
        let jac = jacobiator(Bracket::Twisted(&omega), &s[0], &s[1], &s[2]).unwrap();
        let expected = twisted_jacobiator_expected(&omega, &s[0], &s[1], &s[2]).unwrap();
        assert_eq!(jac, expected);
        assert!(!expected.is_zero());
        let closed = J::from_eform(EF::zero(c, 2)).jd();
        let jac = jacobiator(Bracket::Twisted(&closed), &s[0], &s[1], &s[2]).unwrap();
        assert!(jac.is_zero());
    }

    #[test]
    fn twisted_requires_matching_degree() {
        let c = chart(2, 1);
        let s = sections(c, 1);
        assert!(matches!(s[0].twisted_dorfman(&s[1], &J::zero(c, 2)), Err(Error::Degree(_))));
        assert!(matches!(s[0].dorfman(&sections(c, 2)[0]), Err(Error::Degree(_))));
    }

    #[test]
    fn trivial_line_formulas_match() {
        let c = chart(2, 1);
        for n in 1..=3 {
            let s = sections(c, n);
            let (a, b) = (LineSection::from_omni(&s[0]).unwrap(), LineSection::from_omni(&s[1]).unwrap());
            let via_line = trivial_line_dorfman(&a, &b).unwrap().to_omni().unwrap();
            assert_eq!(via_line, s[0].dorfman(&s[1]).unwrap(), "n={n}");
            let (p0, p1) = trivial_line_pairing(&a, &b).unwrap();
            let general = s[0].pairing(&s[1]).unwrap().to_split();
            assert_eq!((p0.tensor(0), p1.tensor(0)), general);
        }
        let wide = sections(chart(1, 2), 1);
        assert!(matches!(LineSection::from_omni(&wide[0]), Err(Error::Rank { .. })));
    }

    #[test]
    fn display() {
        assert_eq!(example_section().to_string(), "omni(der(X1=1; ); jform(1; x1*dx1 @ e1; 0))");
    }
}
