//! Command dispatch and JSON reports.
//!
//! Every command returns a [`Report`]. Objects in a report are serialized in
//! the object grammar, so any of them can be fed back as an operand.

use std::time::Instant;

use serde::Serialize;
use serde_json::{json, Value};

use omni_core::dirac::rigidity::rigidity_solve;
use omni_core::dirac::volume::{involutivity_check_j, isotropy_check_j, jacobi_check};
use omni_core::dirac::{dirac_from_eform, Verdict};
use omni_core::forms::ScalarForm;
use omni_core::jet::membership_check;
use omni_core::multicontact::{corank_at, is_multicontact_at, kernel_at_point, nu_from_distribution, same_span};
use omni_core::omni::{jacobiator, twisted_jacobiator_expected, Bracket, OmniSection};
use omni_core::{ChartConfig, Rational};

use crate::parse::{self, parse_object, point_text, Object, ParseError};
use crate::verify::{all_suites, SuiteConfig};

/// Name of the generator used by `verify`.
pub const RNG_NAME: &str = "ChaCha8";

pub const COMMANDS: [&str; 16] = [
    "d",
    "wedge",
    "iota",
    "lie",
    "dorfman",
    "pair",
    "twist",
    "jacobiator",
    "member",
    "isotropic",
    "involutive",
    "dirac-from-form",
    "rigidity",
    "jacobi",
    "multicontact",
    "verify",
];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Request {
    pub command: String,
    pub m: usize,
    pub r: usize,
    /// Form degree; commands pick their own default when absent.
    pub n: Option<isize>,
    pub seed: u64,
    pub trials: usize,
    pub max_deg: u32,
    /// Coefficient degree bound of the `rigidity` ansatz.
    pub deg: u32,
    pub operands: Vec<String>,
}

impl Request {
    pub fn new(command: &str, operands: &[&str]) -> Self {
        Request {
            command: command.to_string(),
            m: 2,
            r: 1,
            n: None,
            seed: 42,
            trials: 50,
            max_deg: 2,
            deg: 0,
            operands: operands.iter().map(|s| s.to_string()).collect(),
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("operand {operand}: {error}")]
    Parse { operand: usize, error: ParseError },
    #[error("{0}")]
    Core(#[from] omni_core::Error),
}

impl CliError {
    fn kind(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "usage",
            CliError::Parse { error: ParseError::Syntax { .. }, .. } => "syntax",
            CliError::Parse { .. } => "semantic",
            CliError::Core(_) => "domain",
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ConfigEcho {
    pub m: usize,
    pub r: usize,
    pub n: Option<isize>,
    pub seed: u64,
    pub trials: usize,
    pub max_deg: u32,
    pub deg: u32,
    pub rng: &'static str,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub config: ConfigEcho,
    pub operands: Vec<String>,
    pub ok: bool,
    pub result: Value,
    /// Wall-clock milliseconds; the only nondeterministic field.
    pub timing_ms: u128,
}

impl Report {
    /// 0 when the command succeeded and its predicate held, 1 when the
    /// predicate failed, 2 on usage, parse or domain errors.
    pub fn exit_code(&self) -> i32 {
        if self.result.get("error").is_some() {
            2
        } else if self.ok {
            0
        } else {
            1
        }
    }

    pub fn to_json(&self, pretty: bool) -> String {
        if pretty {
            serde_json::to_string_pretty(self).expect("serializable report")
        } else {
            serde_json::to_string(self).expect("serializable report")
        }
    }
}

/// Runs a request and wraps the outcome, including errors, in a report.
pub fn dispatch(req: &Request) -> Report {
    let start = Instant::now();
    let (ok, result) = match run(req) {
        Ok(v) => v,
        Err(e) => (false, json!({ "error": { "kind": e.kind(), "message": e.to_string() } })),
    };
    Report {
        command: req.command.clone(),
        config: ConfigEcho {
            m: req.m,
            r: req.r,
            n: req.n,
            seed: req.seed,
            trials: req.trials,
            max_deg: req.max_deg,
            deg: req.deg,
            rng: RNG_NAME,
        },
        operands: req.operands.clone(),
        ok,
        result,
        timing_ms: start.elapsed().as_millis(),
    }
}

type Outcome = Result<(bool, Value), CliError>;

fn arity(req: &Request, allowed: std::ops::RangeInclusive<usize>, shape: &str) -> Result<(), CliError> {
    if allowed.contains(&req.operands.len()) {
        Ok(())
    } else {
        Err(CliError::Usage(format!("{} expects {shape}, got {} operand(s)", req.command, req.operands.len())))
    }
}

fn operand(req: &Request, k: usize, chart: ChartConfig, n: isize) -> Result<Object, CliError> {
    parse_object(&req.operands[k], chart, n).map_err(|error| CliError::Parse { operand: k + 1, error })
}

fn typed<T>(k: usize, r: parse::ParseResult<T>) -> Result<T, CliError> {
    r.map_err(|error| CliError::Parse { operand: k + 1, error })
}

fn wrong(k: usize, expected: &str, got: &Object) -> CliError {
    CliError::Usage(format!("operand {} must be {expected}, got {}", k + 1, got.kind()))
}

fn verdict(v: &Verdict) -> Value {
    json!({ "holds": v.holds, "witness": v.witness })
}

fn output(input: &Object, out: impl ToString) -> Value {
    json!({ "input": input.kind(), "output": out.to_string() })
}

fn sections(req: &Request, chart: ChartConfig, count: usize) -> Result<Vec<OmniSection<Rational>>, CliError> {
    (0..count).map(|k| typed(k, parse::parse_omni(&req.operands[k], chart))).collect()
}

fn run(req: &Request) -> Outcome {
    let chart = ChartConfig::new(req.m, req.r).map_err(|e| CliError::Usage(e.to_string()))?;
    let n = req.n.unwrap_or(1);
    match req.command.as_str() {
        "d" => {
            arity(req, 1..=1, "one form")?;
            let x = operand(req, 0, chart, n)?;
            let out = match &x {
                Object::JForm(v) => v.jd().to_string(),
                Object::GenForm(v) => v.ce_differential().to_string(),
                Object::EForm(v) => v.d().to_string(),
                Object::Poly(f) => ScalarForm::function(chart, f.clone()).d().to_string(),
                other => return Err(wrong(0, "a form", other)),
            };
            Ok((true, output(&x, out)))
        }
        "wedge" => {
            arity(req, 2..=2, "a scalar form and a form")?;
            let omega = typed(0, parse::parse_scalar_form(&req.operands[0], chart, None))?;
            let x = operand(req, 1, chart, n)?;
            let out = match &x {
                Object::JForm(v) => v.jwedge(&omega).to_string(),
                Object::EForm(v) => omega.wedge(v).to_string(),
                Object::Poly(f) => omega.wedge(&ScalarForm::function(chart, f.clone())).to_string(),
                other => return Err(wrong(1, "a jet, E-valued or scalar form", other)),
            };
            Ok((true, output(&x, out)))
        }
        "iota" | "lie" => {
            arity(req, 2..=2, "a derivation and a form")?;
            let d = typed(0, parse::parse_derivation(&req.operands[0], chart))?;
            let x = operand(req, 1, chart, n)?;
            let iota = req.command == "iota";
            let out = match &x {
                Object::JForm(v) if iota => v.jiota(&d)?.to_string(),
                Object::JForm(v) => v.jlie(&d).to_string(),
                Object::GenForm(v) if iota => v.gen_iota(&d)?.to_string(),
                Object::GenForm(v) => v.gen_lie(&d).to_string(),
                Object::EForm(v) if iota => v.iota(d.symbol()).to_string(),
                Object::EForm(v) => v.lie(&d).to_string(),
                other => return Err(wrong(1, "a jet, generic or E-valued form", other)),
            };
            Ok((true, output(&x, out)))
        }
        "dorfman" | "pair" => {
            arity(req, 2..=2, "two omni sections")?;
            let e = sections(req, chart, 2)?;
            let out = if req.command == "dorfman" {
                e[0].dorfman(&e[1])?.to_string()
            } else {
                e[0].pairing(&e[1])?.to_string()
            };
            Ok((true, json!({ "output": out })))
        }
        "twist" => {
            arity(req, 3..=3, "two omni sections and a twisting jet form")?;
            let e = sections(req, chart, 2)?;
            let omega = typed(2, parse::parse_jform(&req.operands[2], chart))?;
            Ok((true, json!({ "output": e[0].twisted_dorfman(&e[1], &omega)?.to_string() })))
        }
        "jacobiator" => {
            arity(req, 3..=4, "three omni sections and an optional twisting jet form")?;
            let e = sections(req, chart, 3)?;
            let omega = match req.operands.get(3) {
                Some(t) => Some(typed(3, parse::parse_jform(t, chart))?),
                None => None,
            };
            let (actual, expected) = match &omega {
                Some(w) => (
                    jacobiator(Bracket::Twisted(w), &e[0], &e[1], &e[2])?,
                    twisted_jacobiator_expected(w, &e[0], &e[1], &e[2])?,
                ),
                None => (jacobiator(Bracket::Plain, &e[0], &e[1], &e[2])?, OmniSection::zero(e[0].chart(), e[0].n())),
            };
            let holds = actual == expected;
            Ok((
                holds,
                json!({ "jacobiator": actual.to_string(), "expected": expected.to_string(), "holds": holds }),
            ))
        }
        "member" => {
            arity(req, 1..=1, "one generic form")?;
            let g = typed(0, parse::parse_genform(&req.operands[0], chart))?;
            let m = membership_check(&g);
            let holds = m.holds();
            Ok((holds, json!({ "holds": holds, "lambda": m.lambda.to_string(), "witness": m.witness })))
        }
        "isotropic" | "involutive" => {
            arity(req, 1..=1, "a bundle map or a volume structure")?;
            let isotropic = req.command == "isotropic";
            match operand(req, 0, chart, n)? {
                Object::BMap(b) if isotropic => {
                    let v = b.isotropy_check();
                    Ok((v.holds, verdict(&v)))
                }
                Object::BMap(b) => {
                    let v = b.involutivity_check()?;
                    let closure = b.closure_check();
                    let form = b.reconstruct()?;
                    let mut out = verdict(&v);
                    out["closure"] = verdict(&closure);
                    out["form"] = json!(form.to_string());
                    Ok((v.holds, out))
                }
                Object::ZStruct(z) if isotropic => {
                    let v = isotropy_check_j(&z);
                    Ok((v.holds, verdict(&v)))
                }
                Object::ZStruct(z) => {
                    let v = involutivity_check_j(&z, req.n.unwrap_or(req.m as isize + 1))?;
                    Ok((v.holds, verdict(&v)))
                }
                other => Err(wrong(0, "a bmap or a zstruct", &other)),
            }
        }
        "dirac-from-form" => {
            arity(req, 1..=1, "one E-valued form")?;
            let nu = typed(0, parse::parse_eform(&req.operands[0], chart, Some(n)))?;
            let b = dirac_from_eform(&nu)?;
            let iso = b.isotropy_check();
            let inv = b.involutivity_check()?;
            let ok = iso.holds && inv.holds;
            Ok((ok, json!({ "bmap": b.to_string(), "isotropic": verdict(&iso), "involutive": verdict(&inv) })))
        }
        "rigidity" => {
            arity(req, 0..=0, "no operands")?;
            let rep = rigidity_solve::<Rational>(chart, n, req.deg)?;
            let rigid = rep.solution_dim == 0;
            Ok((
                rigid,
                json!({
                    "unknowns": rep.unknowns,
                    "equations": rep.equations,
                    "solution_dim": rep.solution_dim,
                    "rigid": rigid,
                }),
            ))
        }
        "jacobi" => {
            arity(req, 1..=1, "one volume structure")?;
            let z = typed(0, parse::parse_zstruct(&req.operands[0], chart))?;
            let v = jacobi_check(&z);
            Ok((v.holds, verdict(&v)))
        }
        "multicontact" => {
            if req.operands.len() < 2 {
                return Err(CliError::Usage("multicontact expects a form or distribution and at least one point".into()));
            }
            let points = (1..req.operands.len())
                .map(|k| typed(k, parse::parse_point(&req.operands[k], chart)))
                .collect::<Result<Vec<_>, _>>()?;
            match operand(req, 0, chart, n)? {
                Object::EForm(nu) => {
                    let verdicts = is_multicontact_at(&nu, &points)?;
                    let rows = points
                        .iter()
                        .zip(&verdicts)
                        .map(|(p, v)| {
                            let kernel = kernel_at_point(&nu, p)?;
                            Ok(json!({
                                "point": point_text(p),
                                "kernel": kernel.iter().map(|k| point_text(k)).collect::<Vec<_>>(),
                                "corank": corank_at(&nu, p)?,
                                "multicontact": v,
                            }))
                        })
                        .collect::<Result<Vec<_>, omni_core::Error>>()?;
                    Ok((verdicts.iter().all(|v| *v), json!({ "points": rows })))
                }
                Object::Dist(dist) => {
                    let mut all = true;
                    let rows = points
                        .iter()
                        .map(|p| {
                            let q = nu_from_distribution(&dist, p)?;
                            let roundtrip = same_span(&kernel_at_point(&q.form, p)?, &dist.values_at(p)?, dist.chart().dim());
                            all &= roundtrip;
                            Ok(json!({
                                "point": point_text(p),
                                "form": q.form.to_string(),
                                "completion": q.completion.iter().map(|k| point_text(k)).collect::<Vec<_>>(),
                                "roundtrip": roundtrip,
                            }))
                        })
                        .collect::<Result<Vec<_>, omni_core::Error>>()?;
                    Ok((all, json!({ "points": rows })))
                }
                other => Err(wrong(0, "an E-valued form or a dist", &other)),
            }
        }
        "verify" => {
            arity(req, 0..=0, "no operands")?;
            if !(1..=req.m as isize + 1).contains(&n) {
                return Err(CliError::Usage(format!("verify needs 1 <= n <= {}, got {n}", req.m + 1)));
            }
            let cfg = SuiteConfig { m: req.m, r: req.r, n, seed: req.seed, trials: req.trials, max_deg: req.max_deg };
            let suites = all_suites(&cfg);
            let failures: usize = suites.iter().map(|s| s.failures).sum();
            Ok((failures == 0, json!({ "suites": suites, "failures": failures })))
        }
        other => Err(CliError::Usage(format!("unknown command `{other}`; expected one of {}", COMMANDS.join(", ")))),
    }
}

/// Strips the timing field so two reports can be compared byte for byte.
pub fn without_timing(report_json: &str) -> String {
    let mut v: Value = serde_json::from_str(report_json).expect("report is JSON");
    if let Some(obj) = v.as_object_mut() {
        obj.remove("timing_ms");
    }
    v.to_string()
}
