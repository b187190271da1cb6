use qpsi_core::verify::*;

fn opts(seed: u64) -> RunOptions {
    RunOptions {
        seed,
        timing: false,
        ..RunOptions::default()
    }
}

#[test]
fn reduction_tower_to_1e_10() {
    let o = RunOptions {
        tol: Some(1e-10),
        ..opts(42)
    };
    let r = run_suite("reductions", &o).unwrap();
    assert_eq!(r.summary.total, 80);
    assert_eq!(r.summary.failed, 0, "{:?}", r.worst_by_identity());
}

#[test]
fn summary_and_pass_flags_are_consistent() {
    let o = RunOptions {
        trials: Some(5),
        ..opts(3)
    };
    for suite in ["ramanujan-1psi1", "askey-I", "bc1-shift", "classical"] {
        let parts = parts_of(suite).unwrap();
        let r = run_suite(suite, &o).unwrap();
        let s = r.summary;
        assert_eq!(s.total, s.passed + s.failed + s.skipped);
        for rec in &r.results {
            let part = parts.iter().find(|p| p.identity == rec.identity).unwrap();
            if rec.pass {
                assert!(rec.rel_err <= part.tol, "{}", rec.identity);
            }
            assert!(rec.wall_ms.is_none());
        }
    }
}

#[test]
fn a_tolerance_override_can_fail_a_suite() {
    let o = RunOptions {
        tol: Some(0.0),
        trials: Some(20),
        ..opts(1)
    };
    let r = run_suite("ramanujan-1psi1", &o).unwrap();
    assert!(r.summary.failed > 0);
}

#[test]
fn listing_names_every_part_and_region() {
    let text = listing();
    for p in registry() {
        assert!(text.contains(p.identity), "{}", p.identity);
        assert!(text.contains(p.region), "{}", p.identity);
        assert!(p.trials > 0 && p.tol > 0.0);
    }
    for s in SUITES {
        assert!(text.lines().any(|l| l == *s), "{s}");
    }
}

#[test]
fn parts_are_independent_of_suite_selection() {
    let o = RunOptions {
        trials: Some(2),
        ..opts(9)
    };
    let alone = run_suite("nabla", &o).unwrap();
    let all = run_suite("all", &o).unwrap();
    let from_all: Vec<_> = all
        .results
        .iter()
        .filter(|r| r.identity.starts_with("nabla"))
        .cloned()
        .collect();
    assert_eq!(alone.results, from_all);
}
