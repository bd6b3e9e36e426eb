//! Graphs over `𝔍_{m+1}E ≅ ∧ᵐT*M ⊗ E` and volumes with values in Lie algebras.
//!
//! A [`ZStructure`] is `Z = top · ∂_1∧..∧∂_m ⊗ c`, with `c^γ_{αβ}` skew in
//! `(α, β)`. Pairing with `vol = dx1∧..∧dxm` gives the bracket
//! `b(e_α, e_β) = top · Σ_γ c^γ_{αβ} e_γ`, and `B_Z` sends the generator
//! `𝕕𝕛*(vol ⊗ e_α) = (0, vol ⊗ e_α)` to the endomorphism `b(e_α, −)`.

use std::collections::BTreeMap;
use std::fmt;

use crate::chart::ChartConfig;
use crate::derivation::Derivation;
use crate::dirac::Verdict;
use crate::error::{Error, Result};
use crate::forms::{EForm, EKey, ScalarForm};
use crate::index::IndexSet;
use crate::jet::JForm;
use crate::omni::OmniSection;
use crate::poly::Poly;
use crate::scalar::Scalar;

#[derive(Clone, PartialEq)]
pub struct ZStructure<S> {
    chart: ChartConfig,
    top: Poly<S>,
    /// `(γ, α, β) ↦ c^γ_{αβ}` for `α < β`.
    c: BTreeMap<(usize, usize, usize), Poly<S>>,
}

impl<S: Scalar> ZStructure<S> {
    pub fn new(chart: ChartConfig, top: Poly<S>) -> Result<Self> {
        if top.nvars() != chart.dim() {
            return Err(Error::Dimension { expected: chart.dim(), found: top.nvars() });
        }
        Ok(ZStructure { chart, top, c: BTreeMap::new() })
    }

    /// Sets `c^γ_{αβ}`, storing it under `α < β` with the sign that entails.
    pub fn set(&mut self, gamma: usize, alpha: usize, beta: usize, value: Poly<S>) -> Result<()> {
        let r = self.chart.rank();
        if let Some(&bad) = [gamma, alpha, beta].iter().find(|&&i| i >= r) {
            return Err(Error::Index { index: bad + 1, bound: r });
        }
        if value.nvars() != self.chart.dim() {
            return Err(Error::Dimension { expected: self.chart.dim(), found: value.nvars() });
        }
        if alpha == beta {
            return if value.is_zero() {
                Ok(())
            } else {
                Err(Error::Precondition(format!("c[{}][{}][{}] must vanish by skew-symmetry", gamma + 1, alpha + 1, beta + 1)))
            };
        }
        let (key, value) = if alpha < beta { ((gamma, alpha, beta), value) } else { ((gamma, beta, alpha), -value) };
        if value.is_zero() {
            self.c.remove(&key);
        } else {
            self.c.insert(key, value);
        }
        Ok(())
    }

    pub fn chart(&self) -> ChartConfig {
        self.chart
    }

    pub fn top(&self) -> &Poly<S> {
        &self.top
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(usize, usize, usize), &Poly<S>)> {
        self.c.iter()
    }

    /// `c^γ_{αβ}` for any ordering of `α, β`.
    pub fn structure(&self, gamma: usize, alpha: usize, beta: usize) -> Poly<S> {
        let zero = || Poly::zero(self.chart.dim());
        match alpha.cmp(&beta) {
            std::cmp::Ordering::Equal => zero(),
            std::cmp::Ordering::Less => self.c.get(&(gamma, alpha, beta)).cloned().unwrap_or_else(zero),
            std::cmp::Ordering::Greater => self.c.get(&(gamma, beta, alpha)).map(|p| -p).unwrap_or_else(zero),
        }
    }

    /// `b(u, v)` on sections given by frame components.
    pub fn bracket(&self, u: &[Poly<S>], v: &[Poly<S>]) -> Vec<Poly<S>> {
        let r = self.chart.rank();
        let mut out = vec![Poly::zero(self.chart.dim()); r];
        for alpha in 0..r {
            for beta in 0..r {
                let uv = &u[alpha] * &v[beta];
                if uv.is_zero() {
                    continue;
                }
                for (gamma, slot) in out.iter_mut().enumerate() {
                    let c = self.structure(gamma, alpha, beta);
                    if !c.is_zero() {
                        *slot = &*slot + &(&(&c * &self.top) * &uv);
                    }
                }
            }
        }
        out
    }

    /// Endomorphism `b(e_α, −)` as a matrix `[γ][β]`.
    pub fn adjoint(&self, alpha: usize) -> Vec<Vec<Poly<S>>> {
        let r = self.chart.rank();
        (0..r)
            .map(|gamma| (0..r).map(|beta| &self.top * &self.structure(gamma, alpha, beta)).collect())
            .collect()
    }
}

fn unit<S: Scalar>(chart: ChartConfig, alpha: usize) -> Vec<Poly<S>> {
    let mut v = vec![Poly::zero(chart.dim()); chart.rank()];
    v[alpha] = Poly::one(chart.dim());
    v
}

fn section_text<S: Scalar + fmt::Display>(chart: ChartConfig, v: &[Poly<S>]) -> String {
    EForm::section(chart, v).map(|s| s.to_string()).unwrap_or_default()
}

/// Jacobi identity `b(e₁,b(e₂,e₃)) + b(e₂,b(e₃,e₁)) + b(e₃,b(e₁,e₂)) = 0` on
/// frame triples. The Jacobiator is alternating, so increasing triples do.
pub fn jacobi_check<S: Scalar + fmt::Display>(z: &ZStructure<S>) -> Verdict {
    let c = z.chart;
    let r = c.rank();
    let mut witness = Vec::new();
    for a in 0..r {
        for b in (a + 1)..r {
            for g in (b + 1)..r {
                let (ea, eb, eg) = (unit::<S>(c, a), unit(c, b), unit(c, g));
                let terms = [
                    z.bracket(&ea, &z.bracket(&eb, &eg)),
                    z.bracket(&eb, &z.bracket(&eg, &ea)),
                    z.bracket(&eg, &z.bracket(&ea, &eb)),
                ];
                let sum: Vec<Poly<S>> = (0..r)
                    .map(|k| &(&terms[0][k] + &terms[1][k]) + &terms[2][k])
                    .collect();
                if sum.iter().any(|p| !p.is_zero()) {
                    witness.push(format!("Jacobiator(e{}, e{}, e{}) = {}", a + 1, b + 1, g + 1, section_text(c, &sum)));
                }
            }
        }
    }
    Verdict::from_witness(witness)
}

/// `(0, vol ⊗ e_α)`, the image of `vol ⊗ e_α` in `𝔍_{m+1}E`.
pub fn top_generator<S: Scalar>(chart: ChartConfig, alpha: usize) -> JForm<S> {
    let top = ScalarForm::<S>::volume(chart).tensor(alpha);
    JForm::new(EForm::zero(chart, chart.dim() as isize + 1), top).expect("degrees match")
}

/// Graph generator `B_Z(μ_α) + μ_α`.
pub fn graph_generator<S: Scalar>(z: &ZStructure<S>, alpha: usize) -> OmniSection<S> {
    let d = Derivation::from_endomorphism(z.chart, z.adjoint(alpha)).expect("square matrix");
    OmniSection::new(d, top_generator(z.chart, alpha)).expect("n >= 1")
}

/// `B_Z` on an arbitrary jet form of degree `m + 1`.
pub fn apply_bz<S: Scalar>(z: &ZStructure<S>, mu: &JForm<S>) -> Derivation<S> {
    let c = z.chart;
    let vol = IndexSet::from_bits(((1u64 << c.dim()) - 1) as u32);
    let mut out = Derivation::zero(c);
    for alpha in 0..c.rank() {
        let h = mu.mu1().component(&EKey::new(vol, alpha));
        if !h.is_zero() {
            out = out.add(&graph_generator(z, alpha).anchor().mul_fn(&h));
        }
    }
    out
}

/// Pairing of graph generators vanishes.
pub fn isotropy_check_j<S: Scalar + fmt::Display>(z: &ZStructure<S>) -> Verdict {
    let r = z.chart.rank();
    let mut witness = Vec::new();
    for a in 0..r {
        for b in a..r {
            let p = graph_generator(z, a).pairing(&graph_generator(z, b)).expect("same degree");
            if !p.is_zero() {
                witness.push(format!("(G{}, G{}) = {}", a + 1, b + 1, p));
            }
        }
    }
    Verdict::from_witness(witness)
}

/// Involutivity of `graph B_Z`: the bracket of any two graph generators
/// `{B_Z(μ_α) + μ_α, B_Z(μ_β) + μ_β}` must be of the form `B_Z(η) + η`.
pub fn involutivity_check_j<S: Scalar + fmt::Display>(z: &ZStructure<S>, n: isize) -> Result<Verdict> {
    let m = z.chart.dim() as isize;
    if n != m + 1 {
        return Err(Error::Range(format!("graphs over the top jet bundle need n = {}, got {n}", m + 1)));
    }
    let r = z.chart.rank();
    let mut witness = Vec::new();
    for a in 0..r {
        for b in 0..r {
            let br = graph_generator(z, a).dorfman(&graph_generator(z, b))?;
            let expected = apply_bz(z, br.jpart());
            if &expected != br.anchor() {
                witness.push(format!(
                    "{{G{}, G{}}} has anchor {} but B_Z of its jet part is {}",
                    a + 1,
                    b + 1,
                    br.anchor(),
                    expected
                ));
            }
        }
    }
    Ok(Verdict::from_witness(witness))
}

impl<S: Scalar + fmt::Display> fmt::Display for ZStructure<S> {
    /// `zstruct(top=..; c[g][a][b]=..; ..)` with `a < b`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "zstruct(top={}", self.top)?;
        for ((g, a, b), p) in &self.c {
            write!(f, "; c[{}][{}][{}]={}", g + 1, a + 1, b + 1, p)?;
        }
        f.write_str(")")
    }
}

impl<S: Scalar + fmt::Display> fmt::Debug for ZStructure<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dirac::fiber::maximality_at;
    use crate::scalar::{int, Rational};

    type P = Poly<Rational>;
    type Z = ZStructure<Rational>;

    fn so3(m: usize) -> Z {
        let c = ChartConfig::new(m, 3).unwrap();
        let mut z = Z::new(c, P::one(m)).unwrap();
        z.set(2, 0, 1, P::one(m)).unwrap();
        z.set(0, 1, 2, P::one(m)).unwrap();
        z.set(1, 2, 0, P::one(m)).unwrap();
        z
    }

    fn broken(m: usize) -> Z {
        let c = ChartConfig::new(m, 3).unwrap();
        let mut z = Z::new(c, P::one(m)).unwrap();
        z.set(2, 0, 1, P::one(m)).unwrap();
        z.set(0, 1, 2, P::one(m)).unwrap();
        z.set(0, 2, 0, P::one(m)).unwrap();
        z
    }

    #[test]
    fn lie_algebra_passes() {
        let z = so3(1);
        assert!(jacobi_check(&z).holds);
        assert!(involutivity_check_j(&z, 2).unwrap().holds);
        assert!(isotropy_check_j(&z).holds);
    }

    #[test]
    fn broken_bracket_fails_with_expected_jacobiator() {
        let z = broken(1);
        let v = jacobi_check(&z);
        assert!(!v.holds);
        assert_eq!(v.witness, vec!["Jacobiator(e1, e2, e3) = -1 @ e3".to_string()]);
        assert!(!involutivity_check_j(&z, 2).unwrap().holds);
    }

    #[test]
    fn rank_two_is_automatic() {
        let c = ChartConfig::new(2, 2).unwrap();
        let mut z = Z::new(c, &P::var(2, 0) + &P::one(2)).unwrap();
        z.set(0, 0, 1, P::var(2, 1)).unwrap();
        z.set(1, 1, 0, P::constant(2, int(3))).unwrap();
        assert!(jacobi_check(&z).holds);
        assert!(involutivity_check_j(&z, 3).unwrap().holds);
        assert!(matches!(involutivity_check_j(&z, 2), Err(Error::Range(_))));
    }

    #[test]
    fn zero_structure_is_abelian() {
        let c = ChartConfig::new(2, 3).unwrap();
        let z = Z::new(c, P::one(2)).unwrap();
        assert!(jacobi_check(&z).holds);
        assert!(involutivity_check_j(&z, 3).unwrap().holds);
    }

    #[test]
    fn graph_is_maximal_isotropic() {
        let z = so3(1);
        let gens: Vec<_> = (0..3).map(|a| graph_generator(&z, a)).collect();
        let report = maximality_at(&gens, &[int(2)]).unwrap();
        assert!(report.maximal_isotropic(), "{report:?}");
    }

    #[test]
    fn skew_storage_and_display() {
        let z = broken(1);
        assert_eq!(z.structure(0, 0, 2), P::constant(1, int(-1)));
        assert_eq!(z.to_string(), "zstruct(top=1; c[1][1][3]=-1; c[1][2][3]=1; c[3][1][2]=1)");
    }
}
