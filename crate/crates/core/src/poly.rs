//! Sparse multivariate polynomials in the chart coordinates `x1..xm`.
//!
//! Terms live in a `BTreeMap` keyed by exponent vectors, and zero
//! coefficients are never stored, so structural equality is mathematical
//! equality.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};


use crate::error::{Error, Result};
use crate::scalar::Scalar;

pub type Exponents = Vec<u32>;

#[derive(Clone, PartialEq)]
pub struct Poly<S> {
    nvars: usize,
    terms: BTreeMap<Exponents, S>,
}

impl<S: Scalar> Poly<S> {
    pub fn zero(nvars: usize) -> Self {
        Poly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: S) -> Self {
        Self::monomial(nvars, vec![0; nvars], c)
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, S::one())
    }

    /// The coordinate function `x_{i+1}` (0-based `i`).
    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(nvars, e, S::one())
    }

    pub fn monomial(nvars: usize, exponents: Exponents, c: S) -> Self {
        assert_eq!(exponents.len(), nvars, "exponent vector length");
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(exponents, c);
        }
        p
    }

    /// Builds a polynomial from (exponents, coefficient) pairs, merging
    /// repeated monomials.
    pub fn from_terms<I>(nvars: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Exponents, S)>,
    {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            if e.len() != nvars {
                return Err(Error::Dimension { expected: nvars, found: e.len() });
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &S)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, exponents: &[u32]) -> S {
        self.terms.get(exponents).cloned().unwrap_or_else(S::zero)
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    /// `Some(c)` when the polynomial is a constant (zero included).
    pub fn as_constant(&self) -> Option<S> {
        match self.terms.len() {
            0 => Some(S::zero()),
            1 => {
                let (e, c) = self.terms.iter().next().unwrap();
                e.iter().all(|&k| k == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    pub(crate) fn add_term(&mut self, e: Exponents, c: S) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(existing) => {
                let sum = existing.clone() + c;
                if sum.is_zero() {
                    self.terms.remove(&e);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.nvars == other.nvars {
            Ok(())
        } else {
            Err(Error::Dimension { expected: self.nvars, found: other.nvars })
        }
    }

    /// `self += factor * other`.
    pub fn add_scaled(&mut self, other: &Self, factor: &S) {
        assert_eq!(self.nvars, other.nvars, "chart dimension mismatch");
        if factor.is_zero() {
            return;
        }
        for (e, c) in &other.terms {
            self.add_term(e.clone(), c.clone() * factor.clone());
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = self.clone();
        out.add_scaled(other, &S::one());
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = self.clone();
        out.add_scaled(other, &-S::one());
        Ok(out)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = Self::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Exponents = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca.clone() * cb.clone());
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &S) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v.clone() * c.clone())).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::one(self.nvars);
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    /// Partial derivative with respect to `x_{i+1}` (0-based `i`).
    pub fn partial(&self, i: usize) -> Result<Self> {
        if i >= self.nvars {
            return Err(Error::Index { index: i + 1, bound: self.nvars });
        }
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut de = e.clone();
            de[i] -= 1;
            out.add_term(de, c.clone() * S::from_int(e[i] as i64));
        }
        Ok(out)
    }

    pub(crate) fn d(&self, i: usize) -> Self {
        self.partial(i).expect("coordinate index within chart")
    }

    /// Directional derivative `X(p) = Σ X^i ∂_i p`.
    pub fn directional(&self, field: &[Poly<S>]) -> Self {
        assert_eq!(field.len(), self.nvars, "vector field length");
        let mut out = Self::zero(self.nvars);
        for (i, xi) in field.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            let di = self.d(i);
            if !di.is_zero() {
                out = &out + &(xi * &di);
            }
        }
        out
    }

    pub fn evaluate(&self, point: &[S]) -> Result<S> {
        if point.len() != self.nvars {
            return Err(Error::Dimension { expected: self.nvars, found: point.len() });
        }
        let mut total = S::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in point.iter().zip(e) {
                for _ in 0..k {
                    t = t * x.clone();
                }
            }
            total = total + t;
        }
        Ok(total)
    }

    /// Monomials sorted by descending total degree, then descending
    /// exponents: the canonical printing order.
    pub fn graded_terms(&self) -> Vec<(&Exponents, &S)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| {
            let da: u32 = a.0.iter().sum();
            let db: u32 = b.0.iter().sum();
            db.cmp(&da).then_with(|| b.0.cmp(a.0))
        });
        v
    }
}

/// All exponent vectors in `nvars` variables of total degree at most `max_deg`,
/// in ascending graded order.
pub fn monomials_up_to(nvars: usize, max_deg: u32) -> Vec<Exponents> {
    fn rec(prefix: &mut Exponents, left: usize, budget: u32, out: &mut Vec<Exponents>) {
        if left == 0 {
            out.push(prefix.clone());
            return;
        }
        for k in 0..=budget {
            prefix.push(k);
            rec(prefix, left - 1, budget - k, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), nvars, max_deg, &mut out);
    out.sort_by_key(|e| (e.iter().sum::<u32>(), std::cmp::Reverse(e.clone())));
    out
}

impl<'a, S: Scalar> Add<&'a Poly<S>> for &'a Poly<S> {
    type Output = Poly<S>;
    fn add(self, rhs: &'a Poly<S>) -> Poly<S> {
        self.try_add(rhs).expect("chart dimension mismatch")
    }
}

impl<'a, S: Scalar> Sub<&'a Poly<S>> for &'a Poly<S> {
    type Output = Poly<S>;
    fn sub(self, rhs: &'a Poly<S>) -> Poly<S> {
        self.try_sub(rhs).expect("chart dimension mismatch")
    }
}

impl<'a, S: Scalar> Mul<&'a Poly<S>> for &'a Poly<S> {
    type Output = Poly<S>;
    fn mul(self, rhs: &'a Poly<S>) -> Poly<S> {
        self.try_mul(rhs).expect("chart dimension mismatch")
    }
}

impl<S: Scalar> Neg for &Poly<S> {
    type Output = Poly<S>;
    fn neg(self) -> Poly<S> {
        self.scale(&-S::one())
    }
}

impl<S: Scalar> Add for Poly<S> {
    type Output = Poly<S>;
    fn add(self, rhs: Poly<S>) -> Poly<S> {
        &self + &rhs
    }
}

impl<S: Scalar> Sub for Poly<S> {
    type Output = Poly<S>;
    fn sub(self, rhs: Poly<S>) -> Poly<S> {
        &self - &rhs
    }
}

impl<S: Scalar> Mul for Poly<S> {
    type Output = Poly<S>;
    fn mul(self, rhs: Poly<S>) -> Poly<S> {
        &self * &rhs
    }
}

impl<S: Scalar> Neg for Poly<S> {
    type Output = Poly<S>;
    fn neg(self) -> Poly<S> {
        -&self
    }
}

impl<S: Scalar + fmt::Display> fmt::Display for Poly<S> {
    /// `3/2*x1^2*x2 - x2 + 1`; the zero polynomial prints as `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (e, c)) in self.graded_terms().into_iter().enumerate() {
            let mut text = String::new();
            let vars: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &p)| p > 0)
                .map(|(i, &p)| if p == 1 { format!("x{}", i + 1) } else { format!("x{}^{}", i + 1, p) })
                .collect();
            let coef = c.to_string();
            if vars.is_empty() {
                text.push_str(&coef);
            } else if c.is_one() {
                text.push_str(&vars.join("*"));
            } else if (-c.clone()).is_one() {
                text.push('-');
                text.push_str(&vars.join("*"));
            } else {
                text.push_str(&coef);
                text.push('*');
                text.push_str(&vars.join("*"));
            }
            if k == 0 {
                f.write_str(&text)?;
            } else if let Some(rest) = text.strip_prefix('-') {
                write!(f, " - {rest}")?;
            } else {
                write!(f, " + {text}")?;
            }
        }
        Ok(())
    }
}

impl<S: Scalar + fmt::Display> fmt::Debug for Poly<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat, Rational};

    type P = Poly<Rational>;

    fn x(n: usize, i: usize) -> P {
        P::var(n, i)
    }

    #[test]
    fn difference_of_squares() {
        let one = P::one(1);
        let p = &(&x(1, 0) + &one) * &(&x(1, 0) - &one);
        let expected = &x(1, 0).pow(2) - &one;
        assert_eq!(p, expected);
        assert_eq!(p.to_string(), "x1^2 - 1");
    }

    #[test]
    fn additive_identity() {
        let p = &x(2, 0) + &P::constant(2, rat(3, 2));
        assert_eq!(&p + &P::zero(2), p);
    }

    #[test]
    fn rational_coefficient_product() {
        let a = x(1, 0).scale(&rat(1, 2));
        let b = x(1, 0).scale(&rat(2, 3));
        assert_eq!(&a * &b, x(1, 0).pow(2).scale(&rat(1, 3)));
    }

    #[test]
    fn mismatched_dimensions() {
        let err = x(1, 0).try_add(&x(2, 0)).unwrap_err();
        assert_eq!(err, Error::Dimension { expected: 1, found: 2 });
        assert!(x(1, 0).try_mul(&x(3, 1)).is_err());
    }

    #[test]
    fn partials() {
        assert_eq!(x(1, 0).pow(2).partial(0).unwrap(), x(1, 0).scale(&int(2)));
        assert!(x(2, 1).pow(3).partial(0).unwrap().is_zero());
        let p = &(&x(2, 0) * &x(2, 1)) + &x(2, 0);
        assert_eq!(p.partial(0).unwrap(), &x(2, 1) + &P::one(2));
        assert_eq!(p.partial(2).unwrap_err(), Error::Index { index: 3, bound: 2 });
    }

    #[test]
    fn evaluation() {
        let p = &x(1, 0).pow(2) + &P::one(1);
        assert_eq!(p.evaluate(&[int(2)]).unwrap(), int(5));
        assert_eq!(P::zero(3).evaluate(&[int(1), int(2), int(3)]).unwrap(), int(0));
        let q = &x(2, 0) * &x(2, 1);
        assert_eq!(q.evaluate(&[rat(1, 2), int(4)]).unwrap(), int(2));
        assert!(q.evaluate(&[int(1)]).is_err());
    }

    #[test]
    fn display_is_canonical() {
        let p = P::from_terms(
            2,
            vec![(vec![2, 1], rat(3, 2)), (vec![0, 1], int(-1)), (vec![0, 0], int(1))],
        )
        .unwrap();
        assert_eq!(p.to_string(), "3/2*x1^2*x2 - x2 + 1");
        assert_eq!(P::zero(2).to_string(), "0");
        assert_eq!(x(2, 1).scale(&rat(-1, 3)).to_string(), "-1/3*x2");
    }

    #[test]
    fn cancellation_leaves_no_terms() {
        let p = &(&x(2, 0) * &x(2, 1)) + &P::constant(2, int(7));
        assert_eq!((&p - &p).num_terms(), 0);
    }

    #[test]
    fn monomial_enumeration() {
        assert_eq!(monomials_up_to(2, 2).len(), 6);
        assert_eq!(monomials_up_to(3, 1).len(), 4);
        assert_eq!(monomials_up_to(2, 0), vec![vec![0, 0]]);
    }

    #[test]
    fn works_over_f64() {
        let p: Poly<f64> = Poly::var(1, 0).pow(2);
        assert_eq!(p.partial(0).unwrap().evaluate(&[1.5]).unwrap(), 3.0);
    }
}
