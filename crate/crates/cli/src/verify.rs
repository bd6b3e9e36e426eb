//! Seeded randomized verification suites.
//!
//! Trial `t` of suite `name` draws everything from
//! `Sampler::new(seed, name, t, max_deg)`, so trials are independent of
//! each other and of scheduling. Trials run in parallel; outcomes are
//! aggregated in trial order, which keeps reports deterministic.

use rayon::prelude::*;
use serde::Serialize;

use omni_core::derivation::Derivation;
use omni_core::dirac::volume::{involutivity_check_j, jacobi_check};
use omni_core::dirac::{dirac_from_eform, BMapD};
use omni_core::forms::EForm;
use omni_core::gauge::GenForm;
use omni_core::jet::{membership_check, project, JForm};
use omni_core::multicontact::{is_multicontact_at, kernel_at_point, nu_from_distribution, same_span};
use omni_core::omni::{
    jacobiator, trivial_line_dorfman, trivial_line_pairing, twisted_jacobiator_expected, Bracket, LineSection,
    OmniSection,
};
use omni_core::poly::Poly;
use omni_core::random::Sampler;
use omni_core::{ChartConfig, Rational};

use crate::parse::point_text;

/// Dimension of the chart used by the twisted-bracket suites; it is the
/// smallest one on which `𝕕ω` can be nonzero for `n = 1`.
pub const TWISTED_DIM: usize = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteConfig {
    pub m: usize,
    pub r: usize,
    pub n: isize,
    pub seed: u64,
    pub trials: usize,
    pub max_deg: u32,
}

impl SuiteConfig {
    pub fn chart(&self) -> ChartConfig {
        ChartConfig::new(self.m, self.r).expect("validated chart")
    }
}

/// A failing trial, with every input serialized in the object grammar.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub trial: u64,
    pub inputs: Vec<Input>,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Input {
    pub name: String,
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteOutcome {
    pub name: String,
    pub trials: usize,
    pub failures: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    pub counterexample: Option<Counterexample>,
}

impl SuiteOutcome {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

/// Failure of one trial: named inputs and what went wrong.
pub struct Failure {
    inputs: Vec<Input>,
    detail: String,
}

type Trial = std::result::Result<(), Failure>;

/// Collects the named inputs of a trial as it draws them.
#[derive(Default)]
struct Inputs(Vec<Input>);

impl Inputs {
    fn add<T: std::fmt::Display>(&mut self, name: &str, value: &T) {
        self.0.push(Input { name: name.to_string(), value: value.to_string() });
    }

    fn fail(self, detail: impl Into<String>) -> Trial {
        Err(Failure { inputs: self.0, detail: detail.into() })
    }

    fn check(self, ok: bool, detail: impl FnOnce() -> String) -> Trial {
        if ok {
            Ok(())
        } else {
            self.fail(detail())
        }
    }
}

/// Runs `trials` independent trials of a suite in parallel.
pub fn run_suite<F>(name: &str, cfg: &SuiteConfig, trials: usize, body: F) -> SuiteOutcome
where
    F: Fn(&mut Sampler) -> Trial + Sync,
{
    let results: Vec<Trial> = (0..trials as u64)
        .into_par_iter()
        .map(|t| {
            let mut s = Sampler::new(cfg.seed, name, t, cfg.max_deg);
            body(&mut s)
        })
        .collect();
    let mut failures = 0;
    let mut counterexample = None;
    for (t, r) in results.into_iter().enumerate() {
        if let Err(f) = r {
            failures += 1;
            if counterexample.is_none() {
                counterexample = Some(Counterexample { trial: t as u64, inputs: f.inputs, detail: f.detail });
            }
        }
    }
    SuiteOutcome { name: name.to_string(), trials, failures, note: None, counterexample }
}

fn skipped(name: &str, note: &str) -> SuiteOutcome {
    SuiteOutcome { name: name.to_string(), trials: 0, failures: 0, note: Some(note.to_string()), counterexample: None }
}

fn err_text(e: omni_core::Error) -> String {
    format!("unexpected error: {e}")
}

macro_rules! tryf {
    ($inputs:ident, $e:expr) => {
        match $e {
            Ok(v) => v,
            Err(e) => return $inputs.fail(err_text(e)),
        }
    };
}

/// Graded-commutator identities of the jet Cartan calculus.
pub fn cartan(cfg: &SuiteConfig) -> Vec<SuiteOutcome> {
    let c = cfg.chart();
    let n = cfg.n;
    vec![
        run_suite("cartan.iota_d", cfg, cfg.trials, |s| {
            let mut i = Inputs::default();
            let mu: JForm<Rational> = s.jform(c, n);
            let d = s.derivation::<Rational>(c);
            i.add("mu", &mu);
            i.add("d", &d);
            let lhs = tryf!(i, mu.jd().jiota(&d)).add(&tryf!(i, mu.jiota(&d)).jd());
            let rhs = mu.jlie(&d);
            i.check(lhs == rhs, || format!("[iota, d] mu = {lhs} but lie mu = {rhs}"))
        }),
        run_suite("cartan.lie_d", cfg, cfg.trials, |s| {
            let mut i = Inputs::default();
            let mu: JForm<Rational> = s.jform(c, n);
            let d = s.derivation::<Rational>(c);
            i.add("mu", &mu);
            i.add("d", &d);
            let lhs = mu.jd().jlie(&d);
            let rhs = mu.jlie(&d).jd();
            i.check(lhs == rhs, || format!("lie d mu = {lhs} but d lie mu = {rhs}"))
        }),
        run_suite("cartan.iota_lie", cfg, cfg.trials, |s| {
            let mut i = Inputs::default();
            let mu: JForm<Rational> = s.jform(c, n);
            let d1 = s.derivation::<Rational>(c);
            let d2 = s.derivation::<Rational>(c);
            i.add("mu", &mu);
            i.add("d1", &d1);
            i.add("d2", &d2);
            let lhs = tryf!(i, mu.jlie(&d2).jiota(&d1)).sub(&tryf!(i, mu.jiota(&d1)).jlie(&d2));
            let rhs = tryf!(i, mu.jiota(&d1.commutator(&d2)));
            i.check(lhs == rhs, || format!("[iota_1, lie_2] mu = {lhs} but iota_[1,2] mu = {rhs}"))
        }),
    ]
}

/// The five clauses of the Leibniz-algebroid structure of `ℰₙ(E)` and the
/// agreement of the two forms of the bracket.
pub fn omni_axioms(cfg: &SuiteConfig) -> Vec<SuiteOutcome> {
    let c = cfg.chart();
    let n = cfg.n;
    let three = |s: &mut Sampler, i: &mut Inputs| {
        let e: Vec<OmniSection<Rational>> = (0..3).map(|_| s.section(c, n)).collect();
        for (k, v) in e.iter().enumerate() {
            i.add(&format!("e{}", k + 1), v);
        }
        e
    };
    vec![
        run_suite("omni.leibniz", cfg, cfg.trials, |s| {
            let mut i = Inputs::default();
            let e = three(s, &mut i);
            let j = tryf!(i, jacobiator(Bracket::Plain, &e[0], &e[1], &e[2]));
            i.check(j.is_zero(), || format!("Jacobiator = {j}"))
        }),
        run_suite("omni.anchor", cfg, cfg.trials, |s| {
            let mut i = Inputs::default();
            let e = three(s, &mut i);
            let b = tryf!(i, e[0].dorfman(&e[1]));
            let expected = e[0].anchor().commutator(e[1].anchor());
            i.check(b.anchor() == &expected, || format!("anchor of bracket = {} but commutator = {expected}", b.anchor()))
        }),
        run_suite("omni.function_linearity", cfg, cfg.trials, |s| {
            let mut i = Inputs::default();
            let e = three(s, &mut i);
            let f = s.poly::<Rational>(c.dim());
            i.add("f", &f);
            let lhs = tryf!(i, e[0].dorfman(&e[1].mul_fn(&f)));
            let xf = f.directional(e[0].anchor().symbol());
            let rhs = tryf!(i, tryf!(i, e[0].dorfman(&e[1])).mul_fn(&f).add(&e[1].mul_fn(&xf)));
            i.check(lhs == rhs, || format!("{{e1, f e2}} = {lhs} but expected {rhs}"))
        }),
        run_suite("omni.invariance", cfg, cfg.trials, |s| {
            let mut i = Inputs::default();
            let e = three(s, &mut i);
            let lhs = tryf!(i, e[1].pairing(&e[2])).jlie(e[0].anchor());
            let a = tryf!(i, tryf!(i, e[0].dorfman(&e[1])).pairing(&e[2]));
            let b = tryf!(i, e[1].pairing(&tryf!(i, e[0].dorfman(&e[2]))));
            let rhs = a.add(&b);
            i.check(lhs == rhs, || format!("lie (e2, e3) = {lhs} but expected {rhs}"))
        }),
        run_suite("omni.self_bracket", cfg, cfg.trials, |s| {
            let mut i = Inputs::default();
            let e = three(s, &mut i);
            let b = tryf!(i, e[0].dorfman(&e[0]));
            let expected = tryf!(i, OmniSection::new(Derivation::zero(c), tryf!(i, e[0].pairing(&e[0])).jd()));
            i.check(b == expected, || format!("{{e, e}} = {b} but expected {expected}"))
        }),
        run_suite("omni.bracket_forms", cfg, cfg.trials, |s| {
            let mut i = Inputs::default();
            let e = three(s, &mut i);
            let a = tryf!(i, e[0].dorfman(&e[1]));
            let b = tryf!(i, e[0].dorfman_expanded(&e[1]));
            i.check(a == b, || format!("contracted form {a} differs from expanded form {b}"))
        }),
    ]
}

/// `[𝕕, ι_Id] = id` on generic forms of every degree and on jet forms of
/// every degree; each trial covers all degrees once.
pub fn homotopy(cfg: &SuiteConfig) -> Vec<SuiteOutcome> {
    let c = cfg.chart();
    vec![
        run_suite("homotopy.genform", cfg, cfg.trials, |s| {
            let mut i = Inputs::default();
            for k in 0..=c.frame_size() as isize {
                let g: GenForm<Rational> = s.genform(c, k);
                if !g.homotopy_check() {
                    i.add("g", &g);
                    return i.fail(format!("homotopy fails in degree {k}"));
                }
            }
            Ok(())
        }),
        run_suite("homotopy.jform", cfg, cfg.trials, |s| {
            let mut i = Inputs::default();
            let id = Derivation::identity(c);
            for k in 0..=c.dim() as isize + 1 {
                let mu: JForm<Rational> = s.jform(c, k);
                let back = tryf!(i, mu.jd().jiota(&id)).add(&if k >= 1 { tryf!(i, mu.jiota(&id)).jd() } else { JForm::zero(c, k) });
                if back != mu {
                    i.add("mu", &mu);
                    return i.fail(format!("[d, iota_Id] mu = {back}"));
                }
            }
            Ok(())
        }),
    ]
}

/// The jet operations agree with the generic operations on `𝔇E`-forms
/// through the embedding, and projection inverts the embedding.
pub fn oracle(cfg: &SuiteConfig) -> Vec<SuiteOutcome> {
    let c = cfg.chart();
    let n = cfg.n;
    vec![run_suite("oracle.embed", cfg, cfg.trials, |s| {
        let mut i = Inputs::default();
        let mu: JForm<Rational> = s.jform(c, n);
        let d = s.derivation::<Rational>(c);
        i.add("mu", &mu);
        i.add("d", &d);
        let g = mu.embed();
        if mu.jd().embed() != g.ce_differential() {
            return i.fail("embedding does not intertwine d");
        }
        if tryf!(i, mu.jiota(&d)).embed() != tryf!(i, g.gen_iota(&d)) {
            return i.fail("embedding does not intertwine iota");
        }
        if mu.jlie(&d).embed() != g.gen_lie(&d) {
            return i.fail("embedding does not intertwine lie");
        }
        let back = tryf!(i, project(&g));
        i.check(back == mu, || format!("project(embed(mu)) = {back}"))
    })]
}

/// Graphs of `B_μ`: isotropic always, involutive exactly when `μ` is closed,
/// and closed forms are exact with primitive `ι_Id μ`.
pub fn graph(cfg: &SuiteConfig) -> Vec<SuiteOutcome> {
    let c = cfg.chart();
    let n = cfg.n;
    let mut out = vec![run_suite("graph.closed", cfg, cfg.trials, |s| {
        let mut i = Inputs::default();
        let nu: EForm<Rational> = s.eform(c, n);
        i.add("nu", &nu);
        let b = tryf!(i, dirac_from_eform(&nu));
        let iso = b.isotropy_check();
        if !iso.holds {
            return i.fail(format!("not isotropic: {}", iso.witness.join("; ")));
        }
        let inv = tryf!(i, b.involutivity_check());
        if !inv.holds {
            return i.fail(format!("not involutive: {}", inv.witness.join("; ")));
        }
        let direct = b.closure_check();
        i.check(direct.holds, || format!("frame generators not closed: {}", direct.witness.join("; ")))
    })];
    // jd of a degree-(n+1) form is (0, μ₀), so non-closed forms need n + 1 ≤ m
    if n < c.dim() as isize {
        out.push(run_suite("graph.nonclosed", cfg, cfg.trials, |s| {
            let mut i = Inputs::default();
            let mu = loop {
                let mu: JForm<Rational> = s.jform(c, n + 1);
                if !mu.jd().is_zero() {
                    break mu;
                }
            };
            i.add("mu", &mu);
            let b = tryf!(i, BMapD::from_form(&mu));
            let inv = tryf!(i, b.involutivity_check());
            if inv.holds {
                return i.fail("graph of a non-closed form reported involutive");
            }
            let direct = b.closure_check();
            i.check(!direct.holds, || "frame generators closed for a non-closed form".into())
        }));
    } else {
        out.push(skipped("graph.nonclosed", "every form of degree n + 1 is closed when n >= m"));
    }
    out.push(run_suite("graph.exact", cfg, cfg.trials, |s| {
        let mut i = Inputs::default();
        let mu = s.jform::<Rational>(c, n).jd();
        i.add("mu", &mu);
        let primitive = tryf!(i, mu.jiota(&Derivation::identity(c)));
        let back = primitive.jd();
        i.check(back == mu, || format!("d(iota_Id mu) = {back}"))
    }));
    out
}

/// Jacobiator of the `ω`-twisted bracket on a chart of dimension
/// [`TWISTED_DIM`] with `n = 1`.
pub fn twisted(cfg: &SuiteConfig) -> Vec<SuiteOutcome> {
    let c = ChartConfig::new(TWISTED_DIM, cfg.r).expect("valid chart");
    let n = 1;
    let sections = |s: &mut Sampler, i: &mut Inputs| {
        let e: Vec<OmniSection<Rational>> = (0..3).map(|_| s.section(c, n)).collect();
        for (k, v) in e.iter().enumerate() {
            i.add(&format!("e{}", k + 1), v);
        }
        e
    };
    vec![
        run_suite("twisted.jacobiator", cfg, cfg.trials, |s| {
            let mut i = Inputs::default();
            let omega: JForm<Rational> = s.jform(c, n + 2);
            i.add("omega", &omega);
            let e = sections(s, &mut i);
            let actual = tryf!(i, jacobiator(Bracket::Twisted(&omega), &e[0], &e[1], &e[2]));
            let expected = tryf!(i, twisted_jacobiator_expected(&omega, &e[0], &e[1], &e[2]));
            i.check(actual == expected, || format!("Jacobiator = {actual} but expected {expected}"))
        }),
        run_suite("twisted.exact", cfg, cfg.trials, |s| {
            let mut i = Inputs::default();
            let omega = s.jform::<Rational>(c, n + 1).jd();
            i.add("omega", &omega);
            let e = sections(s, &mut i);
            let actual = tryf!(i, jacobiator(Bracket::Twisted(&omega), &e[0], &e[1], &e[2]));
            i.check(actual.is_zero(), || format!("Jacobiator = {actual} for exact twist"))
        }),
    ]
}

/// Involutivity of the graph of `B_Z` agrees with the Jacobi identity, for
/// random constant structures of rank 2 and 3.
pub fn volume(cfg: &SuiteConfig) -> Vec<SuiteOutcome> {
    [2usize, 3]
        .into_iter()
        .map(|r| {
            let c = ChartConfig::new(cfg.m, r).expect("valid chart");
            run_suite(&format!("volume.rank{r}"), cfg, cfg.trials, move |s| {
                let mut i = Inputs::default();
                let z = s.constant_zstructure::<Rational>(c);
                i.add("z", &z);
                let jac = jacobi_check(&z);
                let inv = tryf!(i, involutivity_check_j(&z, c.dim() as isize + 1));
                if r == 2 && !jac.holds {
                    return i.fail("Jacobi identity fails in rank 2");
                }
                i.check(jac.holds == inv.holds, || format!("jacobi = {} but involutive = {}", jac.holds, inv.holds))
            })
        })
        .collect()
}

/// A degree-1 generic form with a single gl component that no jet form
/// embeds to, scaled by a nonzero polynomial drawn from `s`. Needs rank at
/// least 2; for a line bundle the embedding is onto in every degree.
pub fn gl_perturbation(s: &mut Sampler, c: ChartConfig) -> GenForm<Rational> {
    let (m, r) = (c.dim(), c.rank());
    assert!(r >= 2, "line bundles admit no gl perturbation");
    // E_{γβ} with γ ≠ α never feeds the e_α component of an embedded form
    let alpha = s.index(r);
    let gamma = (alpha + 1 + s.index(r - 1)) % r;
    let beta = s.index(r);
    let f = s.nonzero_poly::<Rational>(m);
    GenForm::basis(c, &[m + gamma * r + beta], alpha, f).expect("valid slot")
}

/// Membership in the image of the embedding: images of jet forms and of
/// E-valued forms pass with the right `λ`; gl perturbations fail, on rank
/// at least 2.
pub fn membership(cfg: &SuiteConfig) -> Vec<SuiteOutcome> {
    let c = cfg.chart();
    let n = cfg.n;
    vec![
        run_suite("membership.embed", cfg, cfg.trials, |s| {
            let mut i = Inputs::default();
            let mu: JForm<Rational> = s.jform(c, n);
            i.add("mu", &mu);
            let m = membership_check(&mu.embed());
            if !m.holds() {
                return i.fail(m.witness.join("; "));
            }
            i.check(&m.lambda == mu.mu1(), || format!("lambda = {} but mu1 = {}", m.lambda, mu.mu1()))
        }),
        run_suite("membership.pullback", cfg, cfg.trials, |s| {
            let mut i = Inputs::default();
            let nu: EForm<Rational> = s.eform(c, n);
            i.add("nu", &nu);
            let m = membership_check(&GenForm::pullback(&nu));
            if !m.holds() {
                return i.fail(m.witness.join("; "));
            }
            i.check(m.lambda.is_zero(), || format!("lambda = {} but expected 0", m.lambda))
        }),
        run_suite("membership.perturbed", cfg, cfg.trials, |s| {
            let mut i = Inputs::default();
            let c = ChartConfig::new(cfg.m, cfg.r.max(2)).expect("valid chart");
            let mu: JForm<Rational> = s.jform(c, 1);
            let p = gl_perturbation(s, c);
            let g = mu.embed().add(&p);
            i.add("g", &g);
            let m = membership_check(&g);
            i.check(!m.holds() && !m.witness.is_empty(), || "perturbed form accepted".into())
        }),
    ]
}

/// Kernel of `ν_D` recovers `D` pointwise on `ℝ³`; the contact form has
/// corank 1 everywhere.
pub fn multicontact(cfg: &SuiteConfig, points: usize) -> Vec<SuiteOutcome> {
    let c = ChartConfig::new(3, 1).expect("valid chart");
    vec![
        run_suite("multicontact.roundtrip", cfg, cfg.trials, |s| {
            let mut i = Inputs::default();
            let count = 1 + s.index(2);
            let dist = s.distribution::<Rational>(c, count);
            i.add("dist", &dist);
            for _ in 0..points {
                let p = s.point::<Rational>(3);
                let q = tryf!(i, nu_from_distribution(&dist, &p));
                let kernel = tryf!(i, kernel_at_point(&q.form, &p));
                let d = tryf!(i, dist.values_at(&p));
                if !same_span(&kernel, &d, 3) {
                    return i.fail(format!("kernel of {} at {} is not D", q.form, point_text(&p)));
                }
            }
            Ok(())
        }),
        run_suite("multicontact.contact", cfg, cfg.trials, |s| {
            let mut i = Inputs::default();
            let nu = EForm::basis(c, &[2], 0, Poly::one(3))
                .expect("valid")
                .sub(&EForm::basis(c, &[0], 0, Poly::var(3, 1)).expect("valid"));
            let pts: Vec<Vec<Rational>> = (0..points).map(|_| s.point(3)).collect();
            let verdicts = tryf!(i, is_multicontact_at(&nu, &pts));
            if let Some(k) = verdicts.iter().position(|v| !v) {
                i.add("point", &point_text(&pts[k]));
                return i.fail("contact form has corank != 1");
            }
            Ok(())
        }),
    ]
}

/// The Cartan-calculus formulas for the trivial line bundle agree with the
/// general engine through the split representation.
pub fn trivial_line(cfg: &SuiteConfig) -> Vec<SuiteOutcome> {
    let c = ChartConfig::new(cfg.m, 1).expect("valid chart");
    let n = cfg.n;
    vec![run_suite("trivial_line", cfg, cfg.trials, |s| {
        let mut i = Inputs::default();
        let a: OmniSection<Rational> = s.section(c, n);
        let b: OmniSection<Rational> = s.section(c, n);
        i.add("a", &a);
        i.add("b", &b);
        let (la, lb) = (tryf!(i, LineSection::from_omni(&a)), tryf!(i, LineSection::from_omni(&b)));
        if tryf!(i, la.to_omni()) != a {
            return i.fail("split roundtrip failed");
        }
        let (p0, p1) = tryf!(i, trivial_line_pairing(&la, &lb));
        let (g0, g1) = tryf!(i, a.pairing(&b)).to_split();
        if p0.tensor(0) != g0 || p1.tensor(0) != g1 {
            return i.fail("pairing formulas disagree");
        }
        let special = tryf!(i, trivial_line_dorfman(&la, &lb));
        let general = tryf!(i, LineSection::from_omni(&tryf!(i, a.dorfman(&b))));
        i.check(special == general, || "bracket formulas disagree".into())
    })]
}

/// Every suite at one configuration, in a fixed order.
pub fn all_suites(cfg: &SuiteConfig) -> Vec<SuiteOutcome> {
    let mut out = Vec::new();
    out.extend(cartan(cfg));
    out.extend(omni_axioms(cfg));
    out.extend(homotopy(cfg));
    out.extend(oracle(cfg));
    out.extend(graph(cfg));
    out.extend(twisted(cfg));
    out.extend(volume(cfg));
    out.extend(membership(cfg));
    out.extend(multicontact(cfg, 10));
    out.extend(trivial_line(cfg));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(m: usize, r: usize, n: isize) -> SuiteConfig {
        SuiteConfig { m, r, n, seed: 42, trials: 4, max_deg: 2 }
    }

    #[test]
    fn small_run_passes() {
        for c in [cfg(1, 1, 1), cfg(2, 2, 1), cfg(2, 1, 2)] {
            for o in all_suites(&c) {
                assert!(o.passed(), "{o:?}");
            }
        }
    }

    #[test]
    fn outcomes_are_deterministic() {
        assert_eq!(cartan(&cfg(2, 2, 1)), cartan(&cfg(2, 2, 1)));
    }

    #[test]
    fn failures_are_reported_with_inputs() {
        let o = run_suite("demo", &cfg(1, 1, 1), 3, |s| {
            let mut i = Inputs::default();
            i.add("p", &s.poly::<Rational>(1));
            i.fail("always")
        });
        assert_eq!(o.failures, 3);
        let ce = o.counterexample.unwrap();
        assert_eq!(ce.trial, 0);
        assert_eq!(ce.inputs[0].name, "p");
    }
}
