//! Seeded random generation of every object in the crate.
//!
//! The generator is ChaCha8. A [`Sampler`] is keyed by `(seed, suite, trial)`,
//! so each trial of each suite draws from its own stream and results do not
//! depend on the order in which trials run. Coefficients are integers in
//! `[-3, 3]` and polynomial total degree is bounded by `max_deg`.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::chart::ChartConfig;
use crate::derivation::Derivation;
use crate::dirac::volume::ZStructure;
use crate::forms::{EForm, EKey, ScalarForm};
use crate::gauge::{GKey, GenForm};
use crate::index::IndexSet;
use crate::jet::JForm;
use crate::multicontact::DistributionFrame;
use crate::omni::OmniSection;
use crate::poly::{monomials_up_to, Poly};
use crate::scalar::Scalar;

/// Largest absolute value of a sampled integer coefficient.
pub const COEFF_BOUND: i64 = 3;

/// Upper bound on the number of terms of a sampled polynomial.
pub const MAX_TERMS: usize = 3;

fn stream_id(suite: &str, trial: u64) -> u64 {
    // FNV-1a over the suite name, then mixed with the trial index
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in suite.bytes() {
        h ^= b as u64;
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    h ^ trial.wrapping_mul(0x9e37_79b9_7f4a_7c15)
}

pub struct Sampler {
    rng: ChaCha8Rng,
    max_deg: u32,
}

impl Sampler {
    pub fn new(seed: u64, suite: &str, trial: u64, max_deg: u32) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream_id(suite, trial));
        Sampler { rng, max_deg }
    }

    pub fn max_deg(&self) -> u32 {
        self.max_deg
    }

    pub fn coin(&mut self, p: f64) -> bool {
        self.rng.gen_bool(p)
    }

    pub fn index(&mut self, bound: usize) -> usize {
        self.rng.gen_range(0..bound)
    }

    pub fn integer<S: Scalar>(&mut self) -> S {
        S::from_int(self.rng.gen_range(-COEFF_BOUND..=COEFF_BOUND))
    }

    pub fn nonzero_integer<S: Scalar>(&mut self) -> S {
        let v = self.rng.gen_range(1..=COEFF_BOUND);
        S::from_int(if self.rng.gen_bool(0.5) { v } else { -v })
    }

    /// A rational with numerator in `[-3, 3]` and denominator in `1..=3`.
    pub fn rational<S: Scalar>(&mut self) -> S {
        let num = self.integer::<S>();
        num / S::from_int(self.rng.gen_range(1..=3))
    }

    pub fn point<S: Scalar>(&mut self, m: usize) -> Vec<S> {
        (0..m).map(|_| self.rational()).collect()
    }

    pub fn poly<S: Scalar>(&mut self, nvars: usize) -> Poly<S> {
        self.poly_with_degree(nvars, self.max_deg)
    }

    pub fn poly_with_degree<S: Scalar>(&mut self, nvars: usize, max_deg: u32) -> Poly<S> {
        let monos = monomials_up_to(nvars, max_deg);
        let terms = self.rng.gen_range(0..=MAX_TERMS.min(monos.len()));
        let chosen: Vec<_> = monos.choose_multiple(&mut self.rng, terms).cloned().collect();
        let mut out = Poly::zero(nvars);
        for e in chosen {
            let c = self.nonzero_integer::<S>();
            out = &out + &Poly::monomial(nvars, e, c);
        }
        out
    }

    pub fn nonzero_poly<S: Scalar>(&mut self, nvars: usize) -> Poly<S> {
        loop {
            let p = self.poly(nvars);
            if !p.is_zero() {
                return p;
            }
        }
    }

    fn sparse_slots<K: Copy>(&mut self, slots: Vec<K>) -> Vec<K> {
        // about two components on average, never more than all of them
        let p = (2.0 / slots.len().max(1) as f64).min(1.0);
        slots.into_iter().filter(|_| self.rng.gen_bool(p)).collect()
    }

    pub fn scalar_form<S: Scalar>(&mut self, chart: ChartConfig, degree: isize) -> ScalarForm<S> {
        let mut out = ScalarForm::zero(chart, degree);
        if degree < 0 || degree as usize > chart.dim() {
            return out;
        }
        for set in self.sparse_slots(IndexSet::subsets(chart.dim(), degree as usize)) {
            let p = self.poly(chart.dim());
            out.try_add_component(set, p).expect("valid slot");
        }
        out
    }

    pub fn eform<S: Scalar>(&mut self, chart: ChartConfig, degree: isize) -> EForm<S> {
        let mut out = EForm::zero(chart, degree);
        if degree < 0 || degree as usize > chart.dim() {
            return out;
        }
        let slots: Vec<EKey> = IndexSet::subsets(chart.dim(), degree as usize)
            .into_iter()
            .flat_map(|set| (0..chart.rank()).map(move |a| EKey::new(set, a)))
            .collect();
        for key in self.sparse_slots(slots) {
            let p = self.poly(chart.dim());
            out.try_add_component(key, p).expect("valid slot");
        }
        out
    }

    pub fn jform<S: Scalar>(&mut self, chart: ChartConfig, n: isize) -> JForm<S> {
        let mu0 = self.eform(chart, n);
        let mu1 = self.eform(chart, n - 1);
        JForm::new(mu0, mu1).expect("matching degrees")
    }

    pub fn derivation<S: Scalar>(&mut self, chart: ChartConfig) -> Derivation<S> {
        let (m, r) = (chart.dim(), chart.rank());
        let x = (0..m).map(|_| if self.coin(0.7) { self.poly(m) } else { Poly::zero(m) }).collect();
        let phi = (0..r)
            .map(|_| (0..r).map(|_| if self.coin(0.5) { self.poly(m) } else { Poly::zero(m) }).collect())
            .collect();
        Derivation::new(chart, x, phi).expect("well-shaped derivation")
    }

    pub fn genform<S: Scalar>(&mut self, chart: ChartConfig, degree: isize) -> GenForm<S> {
        let mut out = GenForm::zero(chart, degree);
        let frame = chart.frame_size();
        if degree < 0 || degree as usize > frame {
            return out;
        }
        let slots: Vec<GKey> = IndexSet::subsets(frame, degree as usize)
            .into_iter()
            .flat_map(|set| (0..chart.rank()).map(move |a| GKey::new(set, a)))
            .collect();
        for key in self.sparse_slots(slots) {
            let p = self.poly(chart.dim());
            out.try_add_component(key, p).expect("valid slot");
        }
        out
    }

    pub fn section<S: Scalar>(&mut self, chart: ChartConfig, n: isize) -> OmniSection<S> {
        let d = self.derivation(chart);
        let j = self.jform(chart, n);
        OmniSection::new(d, j).expect("n >= 1")
    }

    /// A structure with constant top coefficient and constant brackets.
    pub fn constant_zstructure<S: Scalar>(&mut self, chart: ChartConfig) -> ZStructure<S> {
        let m = chart.dim();
        let r = chart.rank();
        let mut z = ZStructure::new(chart, Poly::constant(m, self.nonzero_integer())).expect("valid top");
        for gamma in 0..r {
            for alpha in 0..r {
                for beta in alpha + 1..r {
                    if self.coin(0.5) {
                        let c = self.integer::<S>();
                        z.set(gamma, alpha, beta, Poly::constant(m, c)).expect("valid entry");
                    }
                }
            }
        }
        z
    }

    /// A distribution with `count` generators, independent at every point:
    /// each generator is 1 on its own pivot coordinate and 0 on the others.
    pub fn distribution<S: Scalar>(&mut self, chart: ChartConfig, count: usize) -> DistributionFrame<S> {
        let m = chart.dim();
        let pivots = {
            let mut all: Vec<usize> = (0..m).collect();
            all.shuffle(&mut self.rng);
            all.truncate(count);
            all
        };
        let gens = pivots
            .iter()
            .map(|&pivot| {
                (0..m)
                    .map(|i| {
                        if i == pivot {
                            Poly::one(m)
                        } else if pivots.contains(&i) {
                            Poly::zero(m)
                        } else {
                            self.poly(m)
                        }
                    })
                    .collect()
            })
            .collect();
        DistributionFrame::new(chart, gens).expect("well-shaped distribution")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    #[test]
    fn streams_are_reproducible_and_distinct() {
        let c = ChartConfig::new(2, 2).unwrap();
        let a: JForm<Rational> = Sampler::new(42, "cartan", 3, 2).jform(c, 1);
        let b: JForm<Rational> = Sampler::new(42, "cartan", 3, 2).jform(c, 1);
        assert_eq!(a, b);
        let draws: Vec<Poly<Rational>> = (0..8).map(|t| Sampler::new(42, "cartan", t, 2).nonzero_poly(2)).collect();
        assert!(draws.windows(2).any(|w| w[0] != w[1]));
    }

    #[test]
    fn bounds_are_respected() {
        let mut s = Sampler::new(7, "bounds", 0, 2);
        for _ in 0..50 {
            let p: Poly<Rational> = s.poly(3);
            assert!(p.degree().unwrap_or(0) <= 2);
            assert!(p.num_terms() <= MAX_TERMS);
            for (_, c) in p.terms() {
                assert!(c.is_integer() && c.numer().magnitude() <= &3u32.into());
            }
        }
    }

    #[test]
    fn distributions_are_independent_everywhere() {
        let c = ChartConfig::new(3, 1).unwrap();
        let mut s = Sampler::new(42, "dist", 0, 2);
        for _ in 0..10 {
            let d: DistributionFrame<Rational> = s.distribution(c, 2);
            let p = s.point::<Rational>(3);
            let v = d.values_at(&p).unwrap();
            assert_eq!(crate::linalg::rank(v, 3), 2);
        }
    }
}
