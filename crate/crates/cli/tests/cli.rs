use std::process::{Command, Output};

use ample::fullgroup::thompson::Table;
use ample::sampling::random_table;
use ample::starconv::ShiftElement;
use ample_cli::calc::{CalcOp, Calculator};
use ample_cli::suites::{run_suite, Suite, SuiteOptions};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn ample(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ample"))
        .args(args)
        .env_remove("AMPLE_DEPTH_CEILING")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).trim().to_string()
}

#[test]
fn calc_examples() {
    let o = ample(&["calc", "mul", "{1<-0,0<-1}", "{1<-0,0<-1}"]);
    assert_eq!((o.status.code(), stdout(&o).as_str()), (Some(0), "{e<-e}"));
    let o = ample(&["calc", "conv", "Z(1<-01)", "Z(0<-1)"]);
    assert_eq!(stdout(&o), "Z(1<-11)");
    let o = ample(&["calc", "psi", "{0<-00,10<-01,11<-1}"]);
    let out = stdout(&o);
    assert!(out.contains("breakpoints: 0, 1/4, 1/2") && out.contains("slopes: 2, 1, 1/2"), "{out}");
}

#[test]
fn calc_json_has_schema() {
    let o = ample(&["calc", "inv", "{0<-00,10<-01,11<-1}", "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["schema"], "ample.calc/1");
    assert_eq!(v["result"], "{00<-0, 01<-10, 1<-11}");
}

#[test]
fn parse_errors_are_usage_errors() {
    let o = ample(&["calc", "reduce", "{0<-0"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("position"));
    assert_eq!(ample(&["verify", "no-such-suite"]).status.code(), Some(2));
    assert_eq!(ample(&["measure", "--model", "bogus"]).status.code(), Some(2));
}

#[test]
fn depth_ceiling_comes_from_the_environment() {
    assert_eq!(ample(&["measure", "--model", "shift", "--depth", "9"]).status.code(), Some(2));
    let o = Command::new(env!("CARGO_BIN_EXE_ample"))
        .args(["calc", "reduce", "{000<-001,001<-000,01<-01,1<-1}"])
        .env("AMPLE_DEPTH_CEILING", "2")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn measure_examples() {
    let o = ample(&["measure", "--model", "shift", "--depth", "1"]);
    let out = stdout(&o);
    assert!(out.contains("INFEASIBLE") && out.contains("certificate") && out.contains("verified: yes"), "{out}");
    let out = stdout(&ample(&["measure", "--model", "pair3"]));
    assert!(out.contains("FEASIBLE") && out.matches("= 1/3").count() == 3, "{out}");
    let out = stdout(&ample(&["measure", "--model", "H-restriction"]));
    assert!(out.contains("on the tail containing +∞: 1;"), "{out}");
}

#[test]
fn measure_json_certificate() {
    let o = ample(&["measure", "--model", "shift", "--depth", "2", "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["schema"], "ample.measure/1");
    assert_eq!(v["verdict"], "infeasible");
    assert!(!v["certificate"].as_array().unwrap().is_empty());
}

#[test]
fn verify_examples() {
    let o = ample(&["verify", "tec", "--n", "100", "--seed", "7"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let o = ample(&["verify", "imp-finite", "--model", "pair3"]);
    assert!(stdout(&o).contains("B dim 4, hereditary"));
    let o = ample(&["verify", "cor", "--tail", "5"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("none contains (1, +∞)"));
}

#[test]
fn verify_json_is_deterministic() {
    let run = || {
        let o = ample(&["verify", "duv", "--n", "20", "--seed", "3", "--json"]);
        let mut v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
        v.as_object_mut().unwrap().remove("wall_seconds");
        v
    };
    let a = run();
    assert_eq!(a["schema"], "ample.suite/1");
    assert_eq!(a, run());
}

#[test]
fn main_finite_rejects_small_orbits() {
    let o = ample(&["verify", "main-finite", "--model", "pair2"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn every_suite_passes_on_small_bounds() {
    let small = SuiteOptions { seed: 11, n: Some(5), tail: Some(2), depth: Some(2), model: None, ceiling: 8 };
    for suite in [
        Suite::Tec,
        Suite::Duv,
        Suite::Cuida,
        Suite::TCovers,
        Suite::Cor,
        Suite::Dihedral,
        Suite::PutnamRoundtrip,
        Suite::ImpFinite,
        Suite::MainFinite,
        Suite::BonitinhoFinite,
    ] {
        let r = run_suite(suite, &small).unwrap();
        assert!(r.passed() && r.cases > 0, "{}", r.render_text());
    }
    let r = run_suite(Suite::Nonsplit, &SuiteOptions { n: Some(10), ..small.clone() }).unwrap();
    assert!(r.passed());
    let r = run_suite(Suite::AmenFolner, &SuiteOptions { n: Some(6), ..small }).unwrap();
    assert!(r.passed());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn printed_tables_reparse(seed in any::<u64>(), depth in 1usize..=4) {
        let t = random_table(&mut ChaCha8Rng::seed_from_u64(seed), 2, depth);
        let calc = Calculator { k: 2, ceiling: 8, cap: 8 };
        let printed = calc.run(CalcOp::Reduce, &[t.to_string()]).unwrap().text;
        prop_assert_eq!(Table::parse(2, &printed).unwrap(), t);
        prop_assert_eq!(calc.run(CalcOp::Reduce, &[printed.clone()]).unwrap().text, printed);
    }

    #[test]
    fn printed_products_reparse(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (a, b) = (random_table(&mut rng, 2, 3), random_table(&mut rng, 2, 3));
        let calc = Calculator { k: 2, ceiling: 8, cap: 8 };
        let f = format!("(-i)*Z(0<-1) + (1/2)*Z(e<-e) + {}", a.bisection());
        let conv = calc.run(CalcOp::Conv, &[f.clone(), b.bisection().to_string()]).unwrap().text;
        let canon = calc.run(CalcOp::Canon, &[conv.clone()]).unwrap().text;
        prop_assert_eq!(&canon, &conv);
        prop_assert_eq!(ShiftElement::parse(2, &canon).unwrap().to_string(), conv);
    }
}
