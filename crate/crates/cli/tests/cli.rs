use std::process::Command;

use koszul_bar_cli::{emit_report, run_suite, ConfigError, Injection, ReportFormat, Suite, SuiteConfig};

fn cfg(suite: Suite, dim: usize) -> SuiteConfig {
    SuiteConfig {
        dim,
        ..SuiteConfig::new(suite)
    }
}

#[test]
fn phi_theorem_dim_2_passes() {
    let r = run_suite(&cfg(Suite::PhiTheorem, 2)).unwrap();
    assert!(r.passed, "{}", r.to_text());
}

#[test]
fn relations_k_dim_1_arity_4_passes() {
    let r = run_suite(&SuiteConfig {
        max_arity: 4,
        ..cfg(Suite::RelationsK, 1)
    })
    .unwrap();
    assert!(r.passed);
    assert_eq!(r.checks.len(), 15);
}

#[test]
fn flipped_m21_fails_with_witness() {
    let r = run_suite(&SuiteConfig {
        max_weight: 1,
        inject: Some(Injection::FlipM21),
        ..cfg(Suite::RelationsK, 2)
    })
    .unwrap();
    assert!(!r.passed);
    let bad: Vec<_> = r.failures().collect();
    assert_eq!(bad[0].name, "relation K (2,2)");
    assert_eq!(bad[0].witness.as_deref(), Some("(x1, x2 | 1 | e1, e2)"));
}

#[test]
fn json_schema() {
    let r = run_suite(&cfg(Suite::Homology, 1)).unwrap();
    let v: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
    assert_eq!(v["passed"], serde_json::Value::Bool(true));
    assert_eq!(v["suite"], "homology");
    assert_eq!(v["params"]["dim"], 1);
    let check = &v["checks"][0];
    for key in ["name", "input", "cases", "status", "residual_terms", "witness"] {
        assert!(check.get(key).is_some(), "missing {key}");
    }
    assert_eq!(check["status"], "ok");
}

#[test]
fn text_has_one_line_per_check() {
    let r = run_suite(&cfg(Suite::QuasiIso, 1)).unwrap();
    let mut buf = Vec::new();
    emit_report(&r, ReportFormat::Text, &mut buf).unwrap();
    let text = String::from_utf8(buf).unwrap();
    // header, checks, summary
    assert_eq!(text.lines().count(), r.checks.len() + 2);
    assert!(text.lines().nth(1).unwrap().starts_with("ok   quasi-iso Φ"));
}

#[test]
fn config_errors() {
    assert!(matches!("nope".parse::<Suite>(), Err(ConfigError::UnknownSuite(_))));
    assert_eq!("Relations-KV".parse::<Suite>().unwrap(), Suite::RelationsKV);
    for bad in [
        SuiteConfig { dim: 7, ..SuiteConfig::default() },
        SuiteConfig { dim: 0, ..SuiteConfig::default() },
        SuiteConfig { max_weight: 99, ..SuiteConfig::default() },
        SuiteConfig { max_bar_length: 0, ..SuiteConfig::default() },
    ] {
        assert!(matches!(run_suite(&bad), Err(ConfigError::BoundOverflow(_))));
    }
}

#[test]
fn seeds_change_samples_but_not_verdicts() {
    let at = |seed| {
        run_suite(&SuiteConfig {
            seed,
            samples: 50,
            max_weight: 2,
            ..cfg(Suite::RelationsK, 3)
        })
        .unwrap()
    };
    let (a, b) = (at(1), at(2));
    assert!(a.passed && b.passed);
    assert_eq!(a.to_json(), at(1).to_json());
    assert_ne!(a.to_json(), b.to_json());
}

#[test]
fn all_runs_each_suite_in_order() {
    let r = run_suite(&SuiteConfig {
        max_weight: 1,
        max_arity: 2,
        max_bar_length: 2,
        ..cfg(Suite::All, 1)
    })
    .unwrap();
    assert!(r.passed, "{}", r.to_text());
    let mut seen: Vec<&str> = r.checks.iter().map(|c| c.name.split(':').next().unwrap()).collect();
    seen.dedup();
    let expect: Vec<&str> = Suite::EACH.iter().map(|s| s.as_str()).collect();
    assert_eq!(seen, expect);
}

#[test]
fn homology_subcommand_exports_triplets() {
    let dir = std::env::temp_dir().join(format!("kbar-export-{}", std::process::id()));
    let out = Command::new(env!("CARGO_BIN_EXE_kbar"))
        .args(["homology", "--complex", "koszul", "--dim", "1", "--max-weight", "1", "--export"])
        .arg(&dir)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let table = String::from_utf8(out.stdout).unwrap();
    assert!(table.starts_with("K(V), dim 1"));
    assert_eq!(std::fs::read_to_string(&dir).unwrap(), "1 -1 0 0 1/1\n");
    std::fs::remove_file(dir).unwrap();
}

#[test]
fn json_report_to_file() {
    let path = std::env::temp_dir().join(format!("kbar-report-{}.json", std::process::id()));
    let status = Command::new(env!("CARGO_BIN_EXE_kbar"))
        .args(["run", "--suite", "homotopy", "--dim", "1", "--report", "json", "--out"])
        .arg(&path)
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["passed"], serde_json::Value::Bool(true));
    std::fs::remove_file(path).unwrap();
}
