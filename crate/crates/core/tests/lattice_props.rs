use delpezzo_core::lattice::{as_set, enumerate_exceptional, enumerate_roots, is_exceptional, is_root, pair, LatticeVector};
use proptest::prelude::*;

fn reflect(v: &LatticeVector, a: &LatticeVector) -> LatticeVector {
    // s_a(v) = v + (v.a) a for a root a.
    v.add(&a.scale(pair(v, a).unwrap())).unwrap()
}

proptest! {
    #[test]
    fn reflections_permute_roots_and_lines(n in 2usize..=7, i in 0usize..126, j in 0usize..126) {
        let roots = enumerate_roots(n).unwrap();
        let a = &roots[i % roots.len()];
        let root_set = as_set(roots);
        let r = reflect(&roots[j % roots.len()], a);
        prop_assert!(root_set.contains(&r));
        let exc = enumerate_exceptional(n).unwrap();
        let e = reflect(&exc[j % exc.len()], a);
        prop_assert!(is_exceptional(&e));
        prop_assert!(as_set(exc).contains(&e));
    }

    #[test]
    fn pairing_is_symmetric_bilinear(a in prop::collection::vec(-5i64..5, 5), b in prop::collection::vec(-5i64..5, 5), c in prop::collection::vec(-5i64..5, 5)) {
        let (a, b, c) = (LatticeVector::new(a).unwrap(), LatticeVector::new(b).unwrap(), LatticeVector::new(c).unwrap());
        prop_assert_eq!(pair(&a, &b).unwrap(), pair(&b, &a).unwrap());
        prop_assert_eq!(pair(&a.add(&b).unwrap(), &c).unwrap(), pair(&a, &c).unwrap() + pair(&b, &c).unwrap());
        prop_assert_eq!(pair(&a, &a).unwrap(), a.square());
    }

    #[test]
    fn text_form_round_trips(c in prop::collection::vec(-9i64..9, 2..=8)) {
        let v = LatticeVector::new(c).unwrap();
        let back: LatticeVector = v.to_string().parse().unwrap();
        prop_assert_eq!(back, v);
    }
}

#[test]
fn every_root_is_a_root() {
    for n in 1..=7 {
        assert!(enumerate_roots(n).unwrap().iter().all(is_root));
        assert!(enumerate_exceptional(n).unwrap().iter().all(is_exceptional));
    }
}
