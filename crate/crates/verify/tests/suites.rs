use orbitkit_verify::*;

fn quick(seed: u64, threads: usize) -> VerifyOptions {
    VerifyOptions { seed, tolerance: DEFAULT_TOLERANCE, samples: Some(8), threads }
}

#[test]
fn suite_names_parse() {
    for n in Suite::NAMES {
        assert_eq!(n.parse::<Suite>().unwrap().name(), n);
    }
    let err = run_verify_suite("everything", &VerifyOptions::default()).unwrap_err();
    assert!(err.to_string().contains("unknown suite 'everything'"));
}

#[test]
fn every_check_belongs_to_one_suite() {
    let all = suite_checks(Suite::All);
    let mut total = 0;
    for n in &Suite::NAMES[..8] {
        let s: Suite = n.parse().unwrap();
        let cs = suite_checks(s);
        assert!(!cs.is_empty(), "{n}");
        assert!(cs.iter().all(|c| c.name.starts_with(&format!("{n}."))));
        total += cs.len();
    }
    assert_eq!(total, all.len());
    let mut names: Vec<_> = all.iter().map(|c| c.name).collect();
    names.dedup();
    assert_eq!(names.len(), all.len());
    assert!(find_check("triples.relations").is_some());
    assert!(find_check("nope").is_none());
}

#[test]
fn triples_suite_passes_with_exit_zero() {
    let rep = run_verify_suite("triples", &VerifyOptions { seed: 1, ..Default::default() }).unwrap();
    assert!(rep.pass, "{}", rep.to_table());
    assert_eq!(rep.exit_code(), 0);
    assert_eq!(rep.check("triples.relations").unwrap().residual, 0.0);
}

#[test]
fn reduction_suite_passes_at_200_samples() {
    let opts = VerifyOptions { seed: 1, samples: Some(200), ..Default::default() };
    let rep = run_verify_suite("reduction", &opts).unwrap();
    assert!(rep.pass, "{}", rep.to_table());
}

#[test]
fn reports_are_deterministic_across_thread_counts() {
    for suite in ["contraction", "jordan", "closure"] {
        let a = run_verify_suite(suite, &quick(5, 1)).unwrap();
        let b = run_verify_suite(suite, &quick(5, 4)).unwrap();
        let (ja, jb) = (serde_json::to_string(&a.to_json()).unwrap(), serde_json::to_string(&b.to_json()).unwrap());
        assert_eq!(ja, jb, "{suite}");
    }
}

#[test]
fn seed_changes_sampled_details() {
    let a = run_verify_suite("contraction", &quick(1, 1)).unwrap();
    let b = run_verify_suite("contraction", &quick(2, 1)).unwrap();
    assert_ne!(a.check("contraction.stereographic").unwrap().residual, b.check("contraction.stereographic").unwrap().residual);
}

#[test]
fn failing_check_gives_exit_one() {
    let rep = run_verify_suite("invariants", &quick(1, 0)).unwrap();
    let c = rep.check("invariants.alpha_images").unwrap();
    assert!(!c.pass);
    assert_eq!(rep.exit_code(), 1);
    // the images are −2 times the triple elements
    for img in c.detail["images"].as_array().unwrap() {
        assert!((img["multiple_of_e"].as_f64().unwrap() + 2.0).abs() < 1e-12);
        assert!(img["residual_after_rescaling"].as_f64().unwrap() < 1e-12);
    }
    assert!(rep.check("invariants.nilcone_cube").unwrap().pass);
    assert!(rep.to_table().contains("FAIL"));
}

#[test]
fn report_json_shape() {
    let rep = run_verify_suite("triples", &quick(3, 0)).unwrap();
    let j = rep.to_json();
    assert_eq!(j["suite"], "triples");
    assert_eq!(j["options"]["seed"], 3);
    assert_eq!(j["options"]["samples"], 8);
    for c in j["checks"].as_array().unwrap() {
        for key in ["name", "suite", "pass", "residual", "statement", "detail"] {
            assert!(c.get(key).is_some(), "{key}");
        }
        assert!(c.get("elapsed").is_none());
    }
}
