use delpezzo_core::field::{FieldElement, FieldSpec};
use delpezzo_core::Error;
use proptest::prelude::*;

fn specs() -> impl Strategy<Value = FieldSpec> {
    prop::sample::select(vec![(2, 1), (3, 1), (5, 1), (7, 1), (2, 2), (3, 2), (5, 2), (7, 2)])
        .prop_map(|(p, k)| FieldSpec::new(p, k, None).unwrap())
}

proptest! {
    #[test]
    fn field_laws(spec in specs(), a in 0u32..49, b in 0u32..49) {
        let q = spec.q();
        let (a, b) = (FieldElement::new(spec, a % q).unwrap(), FieldElement::new(spec, b % q).unwrap());
        let f = spec.field();
        prop_assert_eq!(a.sub(&b).unwrap().add(&b).unwrap(), a);
        if b.rep != 0 {
            prop_assert_eq!(b.mul(&b.inv().unwrap()).unwrap().rep, 1);
        }
        // Fermat: a^q = a.
        prop_assert_eq!(a.pow(q as u64), a);
        prop_assert_eq!(f.frobenius(f.mul(a.rep, b.rep)), f.mul(f.frobenius(a.rep), f.frobenius(b.rep)));
        // Norms land in the prime field.
        prop_assert!((f.norm(a.rep) as u32) < spec.p);
        if let Some(r) = f.sqrt(a.rep) {
            prop_assert_eq!(f.mul(r, r), a.rep);
        }
    }
}

#[test]
fn spec_examples() {
    let f9 = FieldSpec::new(3, 2, None).unwrap();
    assert_eq!(f9.modulus, Some([2, 2]));
    let x = FieldElement::new(f9, 3).unwrap();
    // x^2 = x + 1, worked by hand: x + 1 has rep 1 + 3.
    assert_eq!(x.mul(&x).unwrap().rep, 4);
    let f4 = FieldSpec::new(2, 2, None).unwrap();
    let y = FieldElement::new(f4, 2).unwrap();
    assert_eq!(y.mul(&y).unwrap().rep, 3);
    let zero = FieldElement::new(FieldSpec::new(5, 1, None).unwrap(), 0).unwrap();
    assert_eq!(zero.inv(), Err(Error::DivisionByZero));
    // Moduli x^2 + 1 over F_5 and x^2 + 2 over F_3 are reducible / irreducible.
    assert!(FieldSpec::new(5, 2, Some([1, 0])).is_err());
    assert!(FieldSpec::new(3, 2, Some([1, 0])).is_ok());
}
