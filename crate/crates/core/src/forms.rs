//! Scalar and `E`-valued differential forms on the chart.
//!
//! A form of degree `k` is a sparse map from slots to polynomial
//! coefficients. For scalar forms a slot is an increasing multi-index `I`
//! (meaning `dx^I`); for `E`-valued forms it is `(I, α)` (meaning
//! `dx^I ⊗ e_α`). Evaluation follows `ω(X_1, .., X_k) = ι_{X_k}..ι_{X_1} ω`,
//! so `ι_{∂_1}(dx1 ∧ dx2) = dx2`.
//!
//! Degrees outside `0..=m` are allowed and always carry the zero form, which
//! is what contraction of a 0-form or wedging past the top degree produce.

use std::collections::BTreeMap;
use std::fmt;
use std::fmt::Debug;


use crate::chart::ChartConfig;
use crate::derivation::Derivation;
use crate::error::{Error, Result};
use crate::index::IndexSet;
use crate::poly::Poly;
use crate::scalar::Scalar;

/// Addressing of one coefficient of a form.
pub trait Slot: Ord + Copy + Debug + Send + Sync + 'static {
    fn basis(&self) -> IndexSet;
    fn rebase(&self, basis: IndexSet) -> Self;
    fn validate(&self, chart: &ChartConfig) -> Result<()>;
}

impl Slot for IndexSet {
    fn basis(&self) -> IndexSet {
        *self
    }

    fn rebase(&self, basis: IndexSet) -> Self {
        basis
    }

    fn validate(&self, chart: &ChartConfig) -> Result<()> {
        if self.span() > chart.dim() {
            return Err(Error::Index { index: self.span(), bound: chart.dim() });
        }
        Ok(())
    }
}

/// Slot `dx^basis ⊗ e_{value+1}` of an `E`-valued form (or, for generic
/// forms on the gauge algebroid, `D^basis ⊗ e_{value+1}`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EKey {
    pub basis: IndexSet,
    pub value: usize,
}

impl EKey {
    pub fn new(basis: IndexSet, value: usize) -> Self {
        EKey { basis, value }
    }
}

impl Slot for EKey {
    fn basis(&self) -> IndexSet {
        self.basis
    }

    fn rebase(&self, basis: IndexSet) -> Self {
        EKey { basis, value: self.value }
    }

    fn validate(&self, chart: &ChartConfig) -> Result<()> {
        self.basis.validate(chart)?;
        if self.value >= chart.rank() {
            return Err(Error::Index { index: self.value + 1, bound: chart.rank() });
        }
        Ok(())
    }
}

#[derive(Clone, PartialEq)]
pub struct Form<S, K> {
    chart: ChartConfig,
    degree: isize,
    comps: BTreeMap<K, Poly<S>>,
}

/// `Ω^k(M)`.
pub type ScalarForm<S> = Form<S, IndexSet>;
/// `Ω^k(M, E)`.
pub type EForm<S> = Form<S, EKey>;

impl<S: Scalar, K: Slot> Form<S, K> {
    pub fn zero(chart: ChartConfig, degree: isize) -> Self {
        Form { chart, degree, comps: BTreeMap::new() }
    }

    pub fn chart(&self) -> ChartConfig {
        self.chart
    }

    pub fn degree(&self) -> isize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.comps.is_empty()
    }

    pub fn components(&self) -> impl Iterator<Item = (&K, &Poly<S>)> {
        self.comps.iter()
    }

    pub fn num_components(&self) -> usize {
        self.comps.len()
    }

    pub fn component(&self, key: &K) -> Poly<S> {
        self.comps.get(key).cloned().unwrap_or_else(|| Poly::zero(self.chart.dim()))
    }

    /// Adds `coef` at `key`, checking the slot against the chart and degree.
    pub fn try_add_component(&mut self, key: K, coef: Poly<S>) -> Result<()> {
        key.validate(&self.chart)?;
        if key.basis().len() as isize != self.degree {
            return Err(Error::Degree(format!(
                "slot of degree {} in a form of degree {}",
                key.basis().len(),
                self.degree
            )));
        }
        if coef.nvars() != self.chart.dim() {
            return Err(Error::Dimension { expected: self.chart.dim(), found: coef.nvars() });
        }
        self.accumulate(key, &coef, &S::one());
        Ok(())
    }

    pub(crate) fn accumulate(&mut self, key: K, coef: &Poly<S>, factor: &S) {
        if coef.is_zero() || factor.is_zero() {
            return;
        }
        let nvars = self.chart.dim();
        let entry = self.comps.entry(key).or_insert_with(|| Poly::zero(nvars));
        entry.add_scaled(coef, factor);
        if entry.is_zero() {
            self.comps.remove(&key);
        }
    }

    pub(crate) fn accumulate_signed(&mut self, key: K, coef: &Poly<S>, negative: bool) {
        self.accumulate(key, coef, &S::sign(negative));
    }

    fn assert_compatible(&self, other: &Self) {
        self.chart.expect_same(&other.chart);
        assert_eq!(self.degree, other.degree, "adding forms of different degree");
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        if self.chart != other.chart {
            return Err(Error::Dimension { expected: self.chart.dim(), found: other.chart.dim() });
        }
        if self.degree != other.degree {
            return Err(Error::Degree(format!(
                "cannot add forms of degree {} and {}",
                self.degree, other.degree
            )));
        }
        Ok(self.combine(other, &S::one()))
    }

    pub fn add(&self, other: &Self) -> Self {
        self.assert_compatible(other);
        self.combine(other, &S::one())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.assert_compatible(other);
        self.combine(other, &-S::one())
    }

    /// `self + factor * other`.
    pub fn combine(&self, other: &Self, factor: &S) -> Self {
        let mut out = self.clone();
        for (k, p) in &other.comps {
            out.accumulate(*k, p, factor);
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.scale(&-S::one())
    }

    pub fn scale(&self, c: &S) -> Self {
        let mut out = Self::zero(self.chart, self.degree);
        for (k, p) in &self.comps {
            out.accumulate(*k, p, c);
        }
        out
    }

    /// Pointwise product with a function.
    pub fn mul_fn(&self, f: &Poly<S>) -> Self {
        let mut out = Self::zero(self.chart, self.degree);
        if f.is_zero() {
            return out;
        }
        for (k, p) in &self.comps {
            out.accumulate(*k, &(f * p), &S::one());
        }
        out
    }

    /// Exterior derivative in the fixed frame (componentwise; flat).
    pub fn d(&self) -> Self {
        let m = self.chart.dim();
        let mut out = Self::zero(self.chart, self.degree + 1);
        for (k, p) in &self.comps {
            let basis = k.basis();
            for i in (0..m).filter(|&i| !basis.contains(i)) {
                let dp = p.d(i);
                if dp.is_zero() {
                    continue;
                }
                // dx^i ∧ dx^I: move dx^i past the entries of I below i
                let negative = basis.count_below(i) % 2 == 1;
                out.accumulate_signed(k.rebase(basis.insert(i)), &dp, negative);
            }
        }
        out
    }

    /// Interior product `ι_X` with a vector field given by its components.
    pub fn iota(&self, field: &[Poly<S>]) -> Self {
        assert_eq!(field.len(), self.chart.dim(), "vector field length");
        let mut out = Self::zero(self.chart, self.degree - 1);
        for (k, p) in &self.comps {
            let basis = k.basis();
            for i in basis.iter() {
                if field[i].is_zero() {
                    continue;
                }
                let negative = basis.count_below(i) % 2 == 1;
                out.accumulate_signed(k.rebase(basis.remove(i)), &(&field[i] * p), negative);
            }
        }
        out
    }

    /// Classical Lie derivative `L_X = ι_X d + d ι_X`, applied in each frame
    /// component.
    pub fn lie_vec(&self, field: &[Poly<S>]) -> Self {
        self.d().iota(field).add(&self.iota(field).d())
    }

    /// Substitutes a rational point into every coefficient.
    pub fn evaluate_at(&self, point: &[S]) -> Result<BTreeMap<K, S>> {
        let mut out = BTreeMap::new();
        for (k, p) in &self.comps {
            let v = p.evaluate(point)?;
            if !v.is_zero() {
                out.insert(*k, v);
            }
        }
        Ok(out)
    }
}

impl<S: Scalar> ScalarForm<S> {
    /// `coef · dx^{i_1} ∧ .. ∧ dx^{i_k}` for 0-based, not necessarily sorted indices.
    pub fn basis(chart: ChartConfig, indices: &[usize], coef: Poly<S>) -> Result<Self> {
        let mut out = Self::zero(chart, indices.len() as isize);
        if let Some((negative, set)) = IndexSet::sorted(indices) {
            out.try_add_component(set, coef.scale(&S::sign(negative)))?;
        }
        Ok(out)
    }

    pub fn function(chart: ChartConfig, f: Poly<S>) -> Self {
        let mut out = Self::zero(chart, 0);
        out.accumulate(IndexSet::EMPTY, &f, &S::one());
        out
    }

    /// Coordinate volume form `dx1 ∧ .. ∧ dxm`.
    pub fn volume(chart: ChartConfig) -> Self {
        let all: Vec<usize> = (0..chart.dim()).collect();
        Self::basis(chart, &all, Poly::one(chart.dim())).unwrap()
    }

    /// Exterior product `self ∧ b`, for `b` scalar- or `E`-valued.
    pub fn wedge<K: Slot>(&self, b: &Form<S, K>) -> Form<S, K> {
        self.chart.expect_same(&b.chart);
        let mut out = Form::zero(self.chart, self.degree + b.degree);
        for (ka, pa) in &self.comps {
            for (kb, pb) in &b.comps {
                if let Some(negative) = ka.basis().wedge_sign(kb.basis()) {
                    out.accumulate_signed(kb.rebase(ka.basis().union(kb.basis())), &(pa * pb), negative);
                }
            }
        }
        out
    }

    /// `self ⊗ e_{alpha+1}`.
    pub fn tensor(&self, alpha: usize) -> EForm<S> {
        let mut out = EForm::zero(self.chart, self.degree);
        for (k, p) in &self.comps {
            out.accumulate(EKey::new(*k, alpha), p, &S::one());
        }
        out
    }
}

impl<S: Scalar> EForm<S> {
    /// `coef · dx^{i_1} ∧ .. ∧ dx^{i_k} ⊗ e_{alpha+1}` (0-based indices).
    pub fn basis(chart: ChartConfig, indices: &[usize], alpha: usize, coef: Poly<S>) -> Result<Self> {
        ScalarForm::basis(chart, indices, coef)?.tensor_checked(alpha)
    }

    /// The section `Σ u_α e_α` as a 0-form.
    pub fn section(chart: ChartConfig, values: &[Poly<S>]) -> Result<Self> {
        if values.len() != chart.rank() {
            return Err(Error::Rank { expected: chart.rank(), found: values.len() });
        }
        let mut out = Self::zero(chart, 0);
        for (alpha, v) in values.iter().enumerate() {
            out.try_add_component(EKey::new(IndexSet::EMPTY, alpha), v.clone())?;
        }
        Ok(out)
    }

    /// Frame section `e_{alpha+1}`.
    pub fn frame_section(chart: ChartConfig, alpha: usize) -> Self {
        Self::basis(chart, &[], alpha, Poly::one(chart.dim())).expect("frame index in range")
    }

    /// Scalar form carried by the frame component `e_{alpha+1}`.
    pub fn value_component(&self, alpha: usize) -> ScalarForm<S> {
        let mut out = ScalarForm::zero(self.chart, self.degree);
        for (k, p) in &self.comps {
            if k.value == alpha {
                out.accumulate(k.basis, p, &S::one());
            }
        }
        out
    }

    /// Applies a pointwise endomorphism `phi[γ][β]` (acting on column vectors
    /// of frame components) to the values.
    pub fn apply_endomorphism(&self, phi: &[Vec<Poly<S>>]) -> Self {
        let mut out = Self::zero(self.chart, self.degree);
        for (k, p) in &self.comps {
            for (gamma, row) in phi.iter().enumerate() {
                let entry = &row[k.value];
                if !entry.is_zero() {
                    out.accumulate(EKey::new(k.basis, gamma), &(entry * p), &S::one());
                }
            }
        }
        out
    }

    /// Lie derivative along a derivation of `E`:
    /// `𝔏_𝔡 ν (X_1..X_k) = 𝔡(ν(X_1..X_k)) − Σ ν(.., [X, X_i], ..)` with `X` the
    /// symbol of `𝔡`. In the flat frame this is `L_X ν + Φ ∘ ν`.
    pub fn lie(&self, d: &Derivation<S>) -> Self {
        self.chart.expect_same(&d.chart());
        self.lie_vec(d.symbol()).add(&self.apply_endomorphism(d.endomorphism()))
    }
}

impl<S: Scalar> ScalarForm<S> {
    fn tensor_checked(&self, alpha: usize) -> Result<EForm<S>> {
        if alpha >= self.chart.rank() {
            return Err(Error::Index { index: alpha + 1, bound: self.chart.rank() });
        }
        Ok(self.tensor(alpha))
    }
}

fn fmt_basis(f: &mut String, prefix: &str, basis: IndexSet) {
    let parts: Vec<String> = basis.iter().map(|i| format!("{prefix}{}", i + 1)).collect();
    f.push_str(&parts.join("^"));
}

/// Renders `coef * basis [@ e<α>]` terms joined by `+`/`-`; shared by the
/// form printers.
pub(crate) fn render_terms<S: Scalar + fmt::Display>(
    terms: impl Iterator<Item = (String, Option<usize>, Poly<S>)>,
    separator_style: TermSeparator,
) -> String {
    let mut out = String::new();
    for (n, (basis, value, coef)) in terms.enumerate() {
        let mut text = String::new();
        let simple = coef.num_terms() == 1;
        let c = coef.to_string();
        if basis.is_empty() {
            if simple {
                text.push_str(&c);
            } else {
                text.push_str(&format!("({c})"));
            }
        } else if coef.as_constant().map(|k| k.is_one()).unwrap_or(false) {
            text.push_str(&basis);
        } else if coef.as_constant().map(|k| (-k).is_one()).unwrap_or(false) {
            text.push('-');
            text.push_str(&basis);
        } else if simple {
            text.push_str(&format!("{c}*{basis}"));
        } else {
            text.push_str(&format!("({c})*{basis}"));
        }
        if let Some(alpha) = value {
            text.push_str(&format!(" @ e{}", alpha + 1));
        }
        match separator_style {
            TermSeparator::Sum => {
                if n == 0 {
                    out.push_str(&text);
                } else if let Some(rest) = text.strip_prefix('-') {
                    out.push_str(" - ");
                    out.push_str(rest);
                } else {
                    out.push_str(" + ");
                    out.push_str(&text);
                }
            }
            TermSeparator::Semicolon => {
                out.push_str("; ");
                out.push_str(&text);
            }
        }
    }
    out
}

#[derive(Clone, Copy)]
pub(crate) enum TermSeparator {
    Sum,
    Semicolon,
}

pub(crate) fn basis_text(prefix: &str, basis: IndexSet) -> String {
    let mut s = String::new();
    fmt_basis(&mut s, prefix, basis);
    s
}

impl<S: Scalar + fmt::Display> fmt::Display for ScalarForm<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.comps.is_empty() {
            return f.write_str("0");
        }
        let terms = self.comps.iter().map(|(k, p)| (basis_text("dx", *k), None, p.clone()));
        f.write_str(&render_terms(terms, TermSeparator::Sum))
    }
}

impl<S: Scalar + fmt::Display> fmt::Display for EForm<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.comps.is_empty() {
            return f.write_str("0");
        }
        let terms = self
            .comps
            .iter()
            .map(|(k, p)| (basis_text("dx", k.basis), Some(k.value), p.clone()));
        f.write_str(&render_terms(terms, TermSeparator::Sum))
    }
}

impl<S: Scalar + fmt::Display, K: Slot> fmt::Debug for Form<S, K>
where
    Form<S, K>: fmt::Display,
{
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[deg {}] {}", self.degree, self)
    }
}
