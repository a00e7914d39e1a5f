use delpezzo_core::field::FieldSpec;
use delpezzo_core::pointcount::{plane_curve_points, projective_points, surface_report, wps_points, DegreeTwoSurface, WpsPoint};
use proptest::prelude::*;

fn surface() -> impl Strategy<Value = DegreeTwoSurface> {
    prop::sample::select(vec![(2, 1), (3, 1), (2, 2), (5, 1), (3, 2)]).prop_flat_map(|(p, k)| {
        let spec = FieldSpec::new(p, k, None).unwrap();
        let q = spec.q();
        (prop::collection::vec(0..q, 6), prop::collection::vec(0..q, 15))
            .prop_map(move |(g2, g4)| DegreeTwoSurface::new(spec, &g2, &g4).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn weighted_scaling(s in surface(), c in prop::array::uniform4(0u8..9), l in 1u8..9) {
        let f = s.field();
        let q = f.q() as u8;
        let c = c.map(|x| x % q);
        let l = 1 + l % (q - 1);
        let scaled = [f.mul(l, c[0]), f.mul(l, c[1]), f.mul(l, c[2]), f.mul(f.mul(l, l), c[3])];
        prop_assert_eq!(s.evaluate_at(scaled), f.mul(f.pow(l, 4), s.evaluate_at(c)));
    }

    #[test]
    fn report_partitions_points(s in surface()) {
        let r = surface_report(&s);
        prop_assert_eq!(r.n_points, r.n_singular + r.n_smooth);
        let infinity = WpsPoint { coords: [0, 0, 0, 1] };
        prop_assert!(!r.points.contains(&infinity));
        for p in &r.points {
            let verdicts: std::collections::BTreeSet<bool> = (0..3).filter_map(|c| s.singular_in_chart(p.coords, c)).collect();
            prop_assert_eq!(verdicts.len(), 1);
            prop_assert_eq!(verdicts.contains(&true), r.singular.contains(p));
        }
    }

    #[test]
    fn json_round_trip(s in surface()) {
        let text = s.to_json();
        let back = DegreeTwoSurface::from_json(&text).unwrap();
        prop_assert_eq!(back.to_json(), text);
        prop_assert_eq!(back, s);
    }
}

#[test]
fn ambient_counts() {
    for (p, k) in [(2, 1), (3, 1), (2, 2), (5, 1), (7, 1), (3, 2)] {
        let spec = FieldSpec::new(p, k, None).unwrap();
        let q = spec.q() as usize;
        assert_eq!(wps_points(spec).len(), q * q * q + q * q + q + 1);
        assert_eq!(projective_points(spec.field(), 5).len(), (q.pow(5) - 1) / (q - 1));
    }
}

#[test]
fn irreducible_conic_over_f2_has_one_point() {
    // y^2 + yz + z^2 over F_2: only [1:0:0] among the 7 plane points, checked by hand.
    let pts = plane_curve_points(FieldSpec::new(2, 1, None).unwrap(), 2, &[0, 0, 0, 1, 1, 1]).unwrap();
    assert_eq!(pts, vec![[1, 0, 0]]);
}

#[test]
fn malformed_surfaces_are_rejected() {
    let bad = [
        r#"{"p":2,"k":1,"modulus":null,"g2":[0,0,0],"g4":[]}"#,
        r#"{"p":2,"k":1,"modulus":null,"g2":[0,0,0,0,0,2],"g4":[0,0,0,0,0,0,0,0,0,0,0,0,0,0,0]}"#,
        r#"{"p":11,"k":1,"modulus":null,"g2":[0,0,0,0,0,0],"g4":[0,0,0,0,0,0,0,0,0,0,0,0,0,0,0]}"#,
        r#"{"p":2,"k":1}"#,
    ];
    for text in bad {
        assert!(DegreeTwoSurface::from_json(text).is_err(), "{text}");
    }
}

#[test]
fn smooth_point_is_reported() {
    // w^2 - x^4 over F_3: [1:0:0:1] has dF/dw = 2 != 0.
    let mut g4 = vec![0; 15];
    g4[0] = 2;
    let s = DegreeTwoSurface::new(FieldSpec::new(3, 1, None).unwrap(), &[0; 6], &g4).unwrap();
    let r = surface_report(&s);
    assert!(r.smooth.contains(&WpsPoint { coords: [1, 0, 0, 1] }));
}
