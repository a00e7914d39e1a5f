//! Fixtures shared by the benchmarks.

use delpezzo_core::{DegreeTwoSurface, FieldSpec};

/// A smooth-pointless degree-2 model over `F_2` with one `A1` point.
pub fn a1_surface() -> DegreeTwoSurface {
    let spec = FieldSpec::new(2, 1, None).expect("F_2");
    let json = r#"{"p":2,"k":1,"modulus":null,"g2":[0,0,0,1,1,1],"g4":[0,0,0,0,1,0,0,0,1,0,1,0,1,0,1]}"#;
    let s = DegreeTwoSurface::from_json(json).expect("fixture parses");
    assert_eq!(s.spec, spec);
    s
}

/// A dense model over `F_9`, every coefficient set.
pub fn dense_surface_f9() -> DegreeTwoSurface {
    let spec = FieldSpec::new(3, 2, None).expect("F_9");
    let g2 = (0..6u32).map(|i| (i * 5 + 1) % 9).collect::<Vec<_>>();
    let g4 = (0..15u32).map(|i| (i * 7 + 2) % 9).collect::<Vec<_>>();
    let json = serde_json::json!({"p": 3, "k": 2, "modulus": null, "g2": g2, "g4": g4}).to_string();
    let s = DegreeTwoSurface::from_json(&json).expect("fixture parses");
    assert_eq!(s.spec, spec);
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_load() {
        assert_eq!(delpezzo_core::surface_report(&a1_surface()).n_points, 1);
        assert_eq!(dense_surface_f9().spec.q(), 9);
    }
}
