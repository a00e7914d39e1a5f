use delpezzo_core::symmetry::{automorphisms, find_isomorphism};
use delpezzo_core::trace::{fixes_canonical_class, profiles_by_element, smooth_point_guaranteed, trace_pic_direct, TraceEngine};
use delpezzo_core::{builtin_catalog, negative_curve_graph, Catalog, Model};
use proptest::prelude::*;

fn blowup_labels() -> Vec<String> {
    builtin_catalog()
        .classes()
        .iter()
        .filter(|c| c.model == Model::Blowup && c.degree >= 4)
        .map(|c| c.label.clone())
        .collect()
}

#[test]
fn both_trace_routes_agree() {
    for label in blowup_labels() {
        let g = negative_curve_graph(builtin_catalog().get(&label).unwrap()).unwrap();
        let engine = TraceEngine::new(&label, &g).unwrap();
        for p in automorphisms(&g).unwrap() {
            assert_eq!(engine.profile(&p).unwrap().tr_pic, trace_pic_direct(&g, &p).unwrap(), "{label}");
            assert!(fixes_canonical_class(&g, &p).unwrap());
        }
    }
}

#[test]
fn identity_profile_counts_all_lines_and_roots() {
    for c in builtin_catalog().of_degree(4) {
        let (p, prof) = profiles_by_element(c).unwrap().into_iter().find(|(p, _)| p.is_identity()).unwrap();
        assert!(p.is_identity());
        assert_eq!(prof.tr_pic as usize, c.n() + 1);
        assert_eq!(prof.tr_r as usize, c.simple_roots.len());
    }
}

#[test]
fn guarantees_are_monotone_in_the_witness() {
    for c in builtin_catalog().of_degree(2) {
        for q in [2, 3, 4, 5, 7, 8, 9] {
            let g = smooth_point_guaranteed(c, q).unwrap();
            assert_eq!(g.guaranteed, g.witness.is_none());
            if let Some(w) = g.witness {
                assert_eq!(w.count(q), w.delta as i64);
            }
        }
    }
}

#[test]
fn catalog_text_survives_a_round_trip() {
    let text = builtin_catalog().to_text();
    assert_eq!(Catalog::from_text(&text).unwrap().to_text(), text);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn relabeling_preserves_structure(idx in 0usize..64, shift in 1usize..50, mul in prop::sample::select(vec![1usize, 5, 7, 11, 13])) {
        let labels = blowup_labels();
        let label = &labels[idx % labels.len()];
        let g = negative_curve_graph(builtin_catalog().get(label).unwrap()).unwrap();
        let n = g.len();
        // i -> (mul * i + shift) mod n is a permutation when gcd(mul, n) = 1.
        prop_assume!((1..=n).all(|d| !(mul.is_multiple_of(d) && n.is_multiple_of(d)) || d == 1));
        let h = g.relabeled(&(0..n).map(|i| (mul * i + shift) % n).collect::<Vec<_>>());
        let iso = find_isomorphism(&g, &h);
        prop_assert!(iso.is_some());
        let iso = iso.unwrap();
        for i in 0..n {
            for j in 0..n {
                prop_assert_eq!(g.mult[i][j], h.mult[iso[i]][iso[j]]);
            }
        }
        prop_assert_eq!(automorphisms(&g).unwrap().len(), automorphisms(&h).unwrap().len());
    }
}
