use std::process::{Command, Output};

use proptest::prelude::*;

use omni_cli::commands::without_timing;
use omni_cli::parse::{parse_kind, Object};
use omni_core::dirac::BMapD;
use omni_core::random::Sampler;
use omni_core::ChartConfig;

fn omni(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_omni")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("stdout is one JSON document")
}

#[test]
fn jet_differential_example() {
    let out = omni(&["d", "jform(1; x1*dx1 @ e1; 0)"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["result"]["output"], "jform(2; 0; x1*dx1 @ e1)");
}

#[test]
fn exit_codes() {
    assert_eq!(omni(&["rigidity", "--m", "2", "--r", "2", "--n", "2"]).status.code(), Some(0));
    let broken = "zstruct(top=1; c[3][1][2]=1; c[1][2][3]=1; c[1][3][1]=1)";
    let out = omni(&["jacobi", "--m", "1", "--r", "3", broken]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["result"]["witness"][0], "Jacobiator(e1, e2, e3) = -1 @ e3");
    assert_eq!(omni(&["frobnicate"]).status.code(), Some(2));
    let out = omni(&["d", "jform(1; x3*dx1 @ e1; 0)"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json(&out)["result"]["error"]["kind"], "semantic");
}

#[test]
fn file_input_and_output() {
    let dir = std::env::temp_dir().join(format!("omni-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let input = dir.join("ops.txt");
    let report = dir.join("report.json");
    std::fs::write(&input, "# two sections\nomni(der(X1=1); jform(1; x2*dx2 @ e1; 1 @ e1))\n\nomni(der(X2=x1); jform(1; dx1 @ e1; 0))\n").unwrap();
    let out = omni(&["pair", "--in", input.to_str().unwrap(), "--out", report.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(v["result"]["output"], "jform(0; (1/2*x1*x2 + 1/2) @ e1; 0)");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn verify_is_deterministic() {
    let args = ["verify", "--m", "1", "--r", "2", "--n", "2", "--trials", "5", "--seed", "7"];
    let (a, b) = (omni(&args), omni(&args));
    assert_eq!(a.status.code(), Some(0));
    let (a, b) = (String::from_utf8(a.stdout).unwrap(), String::from_utf8(b.stdout).unwrap());
    assert_eq!(without_timing(&a), without_timing(&b));
    let pretty = omni(&[&args[..], &["--pretty"]].concat());
    assert_eq!(json(&pretty)["result"], serde_json::from_str::<serde_json::Value>(&a).unwrap()["result"]);
}

fn sample(seed: u64, kind: usize) -> (Object, ChartConfig, isize) {
    let mut s = Sampler::new(seed, "cli.roundtrip", kind as u64, 2);
    let c = ChartConfig::new(1 + s.index(2), 1 + s.index(2)).unwrap();
    let n = 1 + s.index(c.dim() + 1) as isize;
    let obj = match kind {
        0 => Object::Poly(s.poly(c.dim())),
        1 => Object::EForm(s.eform(c, n)),
        2 => Object::JForm(s.jform(c, n)),
        3 => Object::GenForm(s.genform(c, n)),
        4 => Object::Derivation(s.derivation(c)),
        5 => Object::Omni(s.section(c, n)),
        6 => {
            let c = ChartConfig::new(c.dim(), 3).unwrap();
            return (Object::ZStruct(s.constant_zstructure(c)), c, n);
        }
        7 => {
            let values = (0..c.frame_size()).map(|_| s.jform(c, n)).collect();
            Object::BMap(BMapD::new(c, n, values).unwrap())
        }
        8 => {
            let c = ChartConfig::new(3, 1).unwrap();
            let count = 1 + s.index(2);
            return (Object::Dist(s.distribution(c, count)), c, n);
        }
        _ => Object::Point(s.point(c.dim())),
    };
    (obj, c, n)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn serialization_roundtrips(seed in any::<u64>(), kind in 0usize..10) {
        let (obj, c, n) = sample(seed, kind);
        let text = obj.to_string();
        let back = parse_kind(obj.kind(), &text, c, n).unwrap();
        prop_assert_eq!(back.to_string(), text);
        prop_assert_eq!(back, obj);
    }
}
