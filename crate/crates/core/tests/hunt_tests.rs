use std::sync::OnceLock;

use delpezzo_core::field::FieldSpec;
use delpezzo_core::hunt::{canonicalize, consistency_match, hunt, Census, ProfileTable, Substitution};
use delpezzo_core::verify::counterexamples;
use delpezzo_core::{builtin_catalog, surface_report};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn f2() -> FieldSpec {
    FieldSpec::new(2, 1, None).unwrap()
}

fn census_q2() -> &'static Census {
    static C: OnceLock<Census> = OnceLock::new();
    C.get_or_init(|| hunt(f2(), true, false).unwrap())
}

#[test]
fn canonical_form_is_invariant() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for spec in [f2(), FieldSpec::new(3, 1, None).unwrap()] {
        let samples: Vec<_> = if spec.q() == 2 {
            census_q2().entries.iter().step_by(97).map(|e| e.surface.clone()).collect()
        } else {
            hunt(spec, true, false).unwrap().entries.iter().take(12).map(|e| e.surface.clone()).collect()
        };
        for s in samples {
            let moved = Substitution::random(spec.field(), &mut rng).apply(&s).unwrap();
            assert_eq!(canonicalize(&moved).unwrap(), canonicalize(&s).unwrap());
            // The property searched for is a coordinate invariant.
            assert_eq!(surface_report(&moved).n_smooth, 0);
        }
    }
}

#[test]
fn census_is_deterministic_across_thread_counts() {
    let run = |threads| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap()
            .install(|| hunt(f2(), true, true).unwrap().to_jsonl())
    };
    assert_eq!(run(1), run(4));
}

#[test]
fn jsonl_round_trip() {
    let text = hunt(f2(), true, true).unwrap().to_jsonl();
    let back = Census::from_jsonl(&text).unwrap();
    assert_eq!(back.to_jsonl(), text);
    assert!(text.lines().next().unwrap().contains("\"version\""));
}

#[test]
fn prefilter_is_sound_on_the_full_sweep() {
    for e in &census_q2().entries {
        if e.surface.g2.iter().any(|&c| c != 0) {
            assert_eq!(e.branch_count, e.report.n_points);
        }
        assert!(e.report.n_smooth == 0 && e.report.n_points > 0);
        assert_eq!(e.exceeds_singular_bound, e.report.n_points > 7);
    }
}

#[test]
fn counterexamples_match_catalog_types() {
    let table = ProfileTable::new(builtin_catalog()).unwrap();
    let census = census_q2();
    for ex in counterexamples() {
        let entry = census.entries.iter().find(|e| e.surface == ex.surface).expect("in census");
        let labels: Vec<String> = consistency_match(entry, &table).into_iter().map(|m| m.0).collect();
        assert!(!labels.is_empty(), "{}", ex.name);
    }
}

#[test]
fn odd_and_quartic_field_sweeps() {
    let c3 = hunt(FieldSpec::new(3, 1, None).unwrap(), true, true).unwrap();
    assert!(c3.entries.iter().all(|e| e.surface.g2.iter().all(|&c| c == 0)));
    assert!(c3.entries.iter().all(|e| e.orbit_canonical));
    let c4 = hunt(FieldSpec::new(2, 2, None).unwrap(), true, false).unwrap();
    assert!(c4.entries.iter().all(|e| e.report.n_smooth == 0));
    let plain = hunt(FieldSpec::new(2, 2, None).unwrap(), false, false).unwrap();
    assert_eq!(plain.entries, c4.entries);
}
