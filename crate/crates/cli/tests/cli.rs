use std::process::Command;

use affweyl_cli::config::{CommandName, Format, JobConfig, DEPTH_CAP_ENV};
use affweyl_cli::report::{CertifyReport, Envelope, SymLevelsReport};
use affweyl_cli::{reemit_json, run};
use proptest::prelude::*;

fn cli(args: &[&str]) -> affweyl_cli::Outcome {
    let mut full = vec!["affweyl"];
    full.extend(args);
    run(full)
}

#[test]
fn algebra_reports() {
    let out = cli(&["algebra", "A", "1"]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.contains("h∨ = 2"));
    assert!(out.stdout.contains("|rho|^2 = 1/2"));
    let out = cli(&["algebra", "A", "2", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["result"]["dual_coxeter"], 3);
    assert_eq!(v["result"]["positive_roots"].as_array().unwrap().len(), 3);
}

#[test]
fn usage_errors_exit_with_one() {
    for args in [
        vec!["algebra", "Z", "9"],
        vec!["algebra", "A", "x"],
        vec!["algebra", "B", "1"],
        vec!["certify", "A", "1", "--hw", "1,0", "--kappa", "-1"],
        vec!["certify", "A", "1", "--hw", "2", "--kappa", "not-a-number"],
        vec!["nonsense"],
        vec!["decompose", "A", "1", "--hw", "1"],
    ] {
        let out = cli(&args);
        assert_eq!(out.code, 1, "{args:?}");
        assert!(out.stdout.is_empty());
        assert!(!out.stderr.is_empty());
    }
    assert_eq!(cli(&["--help"]).code, 0);
}

#[test]
fn symlevels_dimensions() {
    let out = cli(&["symlevels", "A", "1", "--n", "2", "--format", "json"]);
    let env: Envelope<SymLevelsReport> = serde_json::from_str(&out.stdout).unwrap();
    let dims: Vec<u64> = env.result.levels.iter().map(|l| l.dim).collect();
    assert_eq!(dims, vec![1, 3, 9]);
    let out = cli(&["symlevels", "A", "2", "--n", "0", "--format", "json"]);
    let env: Envelope<SymLevelsReport> = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(env.result.levels.len(), 1);
    assert_eq!(env.result.levels[0].decomposition[0].highest_weight, vec![0, 0]);
}

#[test]
fn certify_exit_codes() {
    let out = cli(&["certify", "A", "1", "--hw", "0", "--kappa", "-1", "--format", "json"]);
    assert_eq!(out.code, 0);
    let env: Envelope<CertifyReport> = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(serde_json::to_value(env.result.reason).unwrap(), "OutsideXLambda");

    let out = cli(&["certify", "A", "1", "--hw", "2", "--kappa", "-2", "--format", "json"]);
    assert_eq!(out.code, 2);
    let env: Envelope<CertifyReport> = serde_json::from_str(&out.stdout).unwrap();
    assert!(env.result.candidates.iter().any(|c| c.mu == vec![-1] && c.n == 1));

    let out = cli(&["certify", "A", "1", "--hw", "2", "--kappa", "1"]);
    assert_eq!(out.code, 1);
    assert!(out.stderr.contains("non-negative"));

    let out = cli(&["certify", "A", "1", "--hw", "2", "--kappa", "-100"]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.contains("KostantBound"));
}

#[test]
fn crossvalidate_examples() {
    let out = cli(&["crossvalidate", "A", "1", "--hw", "0", "--kappa", "-1", "--depth", "4"]);
    assert_eq!(out.code, 0, "{}", out.stdout);
    assert!(out.stdout.contains("all checks passed"));
    let out = cli(&["crossvalidate", "A", "1", "--hw", "2", "--kappa", "-2", "--depth", "3"]);
    assert_eq!(out.code, 0, "{}", out.stdout);
    assert!(out.stdout.contains("singular vectors in degree 1"));
    let out = cli(&["crossvalidate", "A", "1", "--hw", "0", "--kappa", "-1", "--depth", "40"]);
    assert_eq!(out.code, 1);
    assert!(out.stderr.contains("depth"));
}

#[test]
fn depth_cap_from_environment() {
    let bin = env!("CARGO_BIN_EXE_affweyl");
    let args = ["crossvalidate", "A", "1", "--hw", "0", "--kappa", "-1", "--depth", "3"];
    let capped = Command::new(bin).args(args).env(DEPTH_CAP_ENV, "2").output().unwrap();
    assert_eq!(capped.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&capped.stderr).contains("1..=2"));
    let ok = Command::new(bin).args(args).env_remove(DEPTH_CAP_ENV).output().unwrap();
    assert_eq!(ok.status.code(), Some(0));
    let bad = Command::new(bin).args(args).env(DEPTH_CAP_ENV, "lots").output().unwrap();
    assert_eq!(bad.status.code(), Some(1));
}

#[test]
fn binary_matches_library() {
    let bin = env!("CARGO_BIN_EXE_affweyl");
    let args = ["certify", "A", "1", "--hw", "2", "--kappa", "-2", "--format", "json"];
    let out = Command::new(bin).args(args).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(String::from_utf8(out.stdout).unwrap(), cli(&args).stdout);
}

#[test]
fn dump_is_exact_and_round_trips() {
    let out = cli(&["dump", "A", "1", "--hw", "1", "--kappa", "-1/2+i", "--depth", "2", "--format", "json"]);
    assert_eq!(out.code, 0);
    assert_eq!(reemit_json(&out.stdout).unwrap(), out.stdout);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["result"]["central_charge"], "-5/2+i");
    // L0 on degree 0 is a/2κ with a = 3/2, and 3/2 / (-1+2i) = (-3-6i)/10
    let l0 = &v["result"]["l0"][0]["entries"];
    assert_eq!(l0[0][2], "-3/10-3/5i");
}

#[test]
fn output_is_deterministic() {
    let args = ["candidates", "A", "2", "--hw", "1,1", "--kappa", "-3/2", "--n", "3", "--format", "json"];
    assert_eq!(cli(&args), cli(&args));
}

fn format_strategy() -> impl Strategy<Value = Format> {
    prop_oneof![Just(Format::Text), Just(Format::Json)]
}

proptest! {
    #[test]
    fn job_config_round_trips(
        num in -50i64..50,
        den in 1i64..9,
        re in -9i64..9,
        im in -9i64..9,
        n in proptest::option::of(0u64..10),
        format in format_strategy(),
    ) {
        let mut cfg = JobConfig::new(CommandName::Certify, "a", 2, format).unwrap();
        cfg.push_weight(&format!("{num}/{den}, {den}")).unwrap();
        cfg.set_kappa(&format!("{re}/{den}{im:+}i")).unwrap();
        cfg.n_max = n;
        let text = serde_json::to_string(&cfg).unwrap();
        let back: JobConfig = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(&back, &cfg);
        // normalized strings are fixed points of the parsers
        let mut again = JobConfig::new(CommandName::Certify, &cfg.series, 2, format).unwrap();
        again.push_weight(&cfg.weights[0].join(",")).unwrap();
        again.set_kappa(cfg.kappa.as_ref().unwrap()).unwrap();
        again.n_max = n;
        prop_assert_eq!(again, cfg);
    }
}
