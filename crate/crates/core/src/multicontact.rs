//! Pointwise kernels of line-valued forms and the forms induced by
//! distributions.
//!
//! Everything here happens in a single tangent space `T_pM` at a rational
//! point. A line-valued form is an [`EForm`] over a chart of rank 1.

use std::fmt;

use crate::chart::ChartConfig;
use crate::error::{Error, Result};
use crate::forms::{EForm, ScalarForm};
use crate::index::IndexSet;
use crate::linalg;
use crate::poly::Poly;
use crate::scalar::Scalar;

fn check_point<S>(chart: ChartConfig, point: &[S]) -> Result<()> {
    if point.len() != chart.dim() {
        return Err(Error::Dimension { expected: chart.dim(), found: point.len() });
    }
    Ok(())
}

/// Basis of `{v ∈ T_pM : ι_v ν|_p = 0}`.
pub fn kernel_at_point<S: Scalar>(nu: &EForm<S>, point: &[S]) -> Result<Vec<Vec<S>>> {
    let chart = nu.chart();
    if chart.rank() != 1 {
        return Err(Error::Rank { expected: 1, found: chart.rank() });
    }
    check_point(chart, point)?;
    let m = chart.dim();
    let n = nu.degree();
    if n < 1 {
        return Ok((0..m).map(|i| unit(m, i)).collect());
    }
    // row per (n−1)-slot, column per coordinate direction
    let values = nu.evaluate_at(point)?;
    let slots = IndexSet::subsets(m, (n - 1) as usize);
    let mut rows = vec![vec![S::zero(); m]; slots.len()];
    for (key, value) in &values {
        for i in key.basis.iter() {
            let rest = key.basis.remove(i);
            let row = slots.iter().position(|s| *s == rest).expect("slot of degree n - 1");
            // ι_{∂_i} dx^I = (−1)^{#(I below i)} dx^{I∖i}
            let signed = if key.basis.count_below(i) % 2 == 0 { value.clone() } else { -value.clone() };
            rows[row][i] = signed;
        }
    }
    Ok(linalg::nullspace(rows, m))
}

fn unit<S: Scalar>(m: usize, i: usize) -> Vec<S> {
    let mut v = vec![S::zero(); m];
    v[i] = S::one();
    v
}

/// Codimension of the kernel of `ν` at `point`.
pub fn corank_at<S: Scalar>(nu: &EForm<S>, point: &[S]) -> Result<usize> {
    Ok(nu.chart().dim() - kernel_at_point(nu, point)?.len())
}

/// Whether the kernel of `ν` has corank exactly `deg ν` at each point.
pub fn is_multicontact_at<S: Scalar>(nu: &EForm<S>, points: &[Vec<S>]) -> Result<Vec<bool>> {
    points
        .iter()
        .map(|p| Ok(corank_at(nu, p)? as isize == nu.degree()))
        .collect()
}

/// A distribution `D ⊂ TM` presented by generating vector fields.
#[derive(Clone, PartialEq)]
pub struct DistributionFrame<S: Scalar> {
    chart: ChartConfig,
    generators: Vec<Vec<Poly<S>>>,
}

impl<S: Scalar> DistributionFrame<S> {
    pub fn new(chart: ChartConfig, generators: Vec<Vec<Poly<S>>>) -> Result<Self> {
        let m = chart.dim();
        if generators.len() > m {
            return Err(Error::Range(format!("at most {m} generators on a chart of dimension {m}")));
        }
        for g in &generators {
            if g.len() != m {
                return Err(Error::Dimension { expected: m, found: g.len() });
            }
            if let Some(p) = g.iter().find(|p| p.nvars() != m) {
                return Err(Error::Dimension { expected: m, found: p.nvars() });
            }
        }
        Ok(DistributionFrame { chart, generators })
    }

    pub fn chart(&self) -> ChartConfig {
        self.chart
    }

    pub fn generators(&self) -> &[Vec<Poly<S>>] {
        &self.generators
    }

    /// Corank of the distribution, i.e. the degree of the induced form.
    pub fn corank(&self) -> usize {
        self.chart.dim() - self.generators.len()
    }

    pub fn values_at(&self, point: &[S]) -> Result<Vec<Vec<S>>> {
        check_point(self.chart, point)?;
        self.generators
            .iter()
            .map(|g| g.iter().map(|p| p.evaluate(point)).collect())
            .collect()
    }
}

impl<S: Scalar + fmt::Display> fmt::Display for DistributionFrame<S> {
    /// `dist(X1=1, X3=x2; X2=1)`, one generator per `;`-separated group.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self
            .generators
            .iter()
            .map(|g| {
                let parts: Vec<String> = g
                    .iter()
                    .enumerate()
                    .filter(|(_, p)| !p.is_zero())
                    .map(|(i, p)| format!("X{}={}", i + 1, p))
                    .collect();
                parts.join(", ")
            })
            .collect();
        write!(f, "dist({})", gens.join("; "))
    }
}

impl<S: Scalar + fmt::Display> fmt::Debug for DistributionFrame<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// The form `ν_D(v₁,…,vₙ) = (v₁+D)∧⋯∧(vₙ+D)` at a point, written in the
/// quotient basis induced by `completion`.
#[derive(Clone, PartialEq)]
pub struct QuotientForm<S: Scalar> {
    /// Rank-1 form whose single value slot stands for
    /// `(u₁+D)∧⋯∧(uₙ+D)`, with `uⱼ` the completion vectors.
    pub form: EForm<S>,
    pub completion: Vec<Vec<S>>,
}

/// Completes the frame of `D_p` greedily with coordinate vectors in index
/// order and returns `ν_D` as the wedge of the quotient coordinates.
pub fn nu_from_distribution<S: Scalar>(dist: &DistributionFrame<S>, point: &[S]) -> Result<QuotientForm<S>> {
    let m = dist.chart.dim();
    let mut basis = dist.values_at(point)?;
    let k = basis.len();
    if linalg::rank(basis.clone(), m) < k {
        return Err(Error::Degenerate("distribution generators are dependent at the point".into()));
    }
    let mut completion = Vec::new();
    for i in 0..m {
        let mut trial = basis.clone();
        trial.push(unit(m, i));
        if linalg::rank(trial.clone(), m) == trial.len() {
            basis = trial;
            completion.push(unit(m, i));
        }
    }
    // columns of P are the basis vectors, so the rows of P⁻¹ are the dual coordinates
    let columns: Vec<Vec<S>> = (0..m).map(|i| basis.iter().map(|v| v[i].clone()).collect()).collect();
    let dual = linalg::inverse(&columns).expect("completed basis is invertible");

    let chart = ChartConfig::new(m, 1)?;
    let mut form = ScalarForm::function(chart, Poly::one(m));
    for row in &dual[k..] {
        let mut xi = ScalarForm::zero(chart, 1);
        for (i, c) in row.iter().enumerate() {
            if !c.is_zero() {
                xi.try_add_component(IndexSet::singleton(i), Poly::constant(m, c.clone()))?;
            }
        }
        form = form.wedge(&xi);
    }
    Ok(QuotientForm { form: form.tensor(0), completion })
}

/// Whether two families of vectors span the same subspace.
pub fn same_span<S: Scalar>(a: &[Vec<S>], b: &[Vec<S>], dim: usize) -> bool {
    let ra = linalg::rank(a.to_vec(), dim);
    let rb = linalg::rank(b.to_vec(), dim);
    let both = linalg::rank(a.iter().chain(b).cloned().collect(), dim);
    ra == rb && rb == both
}
