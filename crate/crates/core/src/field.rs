//! Small finite fields `F_p` and `F_{p^2}` with table-driven arithmetic.
//!
//! An element `c0 + c1 x` of `F_p[x]/(x^2 + m1 x + m0)` is stored as the
//! index `c0 + p c1`. Tables are built once per field and shared.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Element index; `q <= 49` so a byte suffices.
pub type Fq = u8;

/// The parameters that identify a field: characteristic, degree and, for
/// `k = 2`, the monic modulus `x^2 + m1 x + m0` stored as `[m0, m1]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FieldSpec {
    pub p: u32,
    pub k: u32,
    pub modulus: Option<[u32; 2]>,
}

impl FieldSpec {
    /// Checks the parameters and fills in the default modulus.
    pub fn new(p: u32, k: u32, modulus: Option<[u32; 2]>) -> Result<Self> {
        if ![2, 3, 5, 7].contains(&p) || !(1..=2).contains(&k) {
            return Err(Error::UnsupportedField { p, k });
        }
        let modulus = match (k, modulus) {
            (1, None) => None,
            (1, Some(_)) => return Err(Error::Unsupported("modulus given for a prime field".into())),
            (_, Some(m)) => {
                if m.iter().any(|&c| c >= p) || (0..p).any(|r| (r * r + m[1] * r + m[0]) % p == 0) {
                    return Err(Error::ReducibleModulus(vec![m[0], m[1], 1]));
                }
                Some(m)
            }
            (_, None) => Some(default_modulus(p)),
        };
        Ok(Self { p, k, modulus })
    }

    pub fn q(&self) -> u32 {
        self.p.pow(self.k)
    }

    /// The shared arithmetic tables for this field.
    pub fn field(&self) -> &'static Field {
        static CACHE: OnceLock<Mutex<HashMap<FieldSpec, &'static Field>>> = OnceLock::new();
        let mut map = CACHE.get_or_init(Default::default).lock().expect("field cache poisoned");
        map.entry(*self).or_insert_with(|| Box::leak(Box::new(Field::build(*self))))
    }
}

/// `x^2 + x + 1`, `x^2 - x - 1`, `x^2 - 2`, `x^2 + 1` for `p = 2, 3, 5, 7`.
fn default_modulus(p: u32) -> [u32; 2] {
    match p {
        2 => [1, 1],
        3 => [2, 2],
        5 => [3, 0],
        7 => [1, 0],
        _ => unreachable!("checked by FieldSpec::new"),
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.modulus {
            None => write!(f, "F_{}", self.p),
            Some([m0, m1]) => {
                let mut poly = "x^2".to_string();
                match m1 {
                    0 => {}
                    1 => poly.push_str("+x"),
                    c => poly.push_str(&format!("+{c}x")),
                }
                if m0 != 0 {
                    poly.push_str(&format!("+{m0}"));
                }
                write!(f, "F_{} = F_{}[x]/({poly})", self.q(), self.p)
            }
        }
    }
}

pub struct Field {
    spec: FieldSpec,
    q: usize,
    add: Vec<Fq>,
    mul: Vec<Fq>,
    neg: Vec<Fq>,
    inv: Vec<Fq>,
    frob: Vec<Fq>,
    square: Vec<bool>,
    sqrt: Vec<Option<Fq>>,
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Field({})", self.spec)
    }
}

impl Field {
    fn build(spec: FieldSpec) -> Self {
        let p = spec.p as usize;
        let q = spec.q() as usize;
        let split = |a: usize| (a % p, a / p);
        let join = |c0: usize, c1: usize| (c0 % p + p * (c1 % p)) as Fq;
        let [m0, m1] = spec.modulus.map_or([0, 0], |m| [m[0] as usize, m[1] as usize]);
        let mut add = vec![0; q * q];
        let mut mul = vec![0; q * q];
        for a in 0..q {
            for b in 0..q {
                let (a0, a1) = split(a);
                let (b0, b1) = split(b);
                add[a * q + b] = join(a0 + b0, a1 + b1);
                // (a0 + a1 x)(b0 + b1 x) with x^2 = -m1 x - m0.
                let c2 = a1 * b1;
                let c1 = a0 * b1 + a1 * b0 + c2 * (p - m1) % p;
                let c0 = a0 * b0 + c2 * (p - m0) % p;
                mul[a * q + b] = join(c0, c1);
            }
        }
        let neg: Vec<Fq> = (0..q).map(|a| (0..q).find(|&b| add[a * q + b] == 0).unwrap() as Fq).collect();
        let inv: Vec<Fq> = (0..q)
            .map(|a| if a == 0 { 0 } else { (1..q).find(|&b| mul[a * q + b] == 1).unwrap() as Fq })
            .collect();
        let pow = |a: usize, e: usize| (0..e).fold(1usize, |acc, _| mul[acc * q + a] as usize) as Fq;
        let frob: Vec<Fq> = (0..q).map(|a| pow(a, p)).collect();
        let mut sqrt = vec![None; q];
        for a in 0..q {
            let s = mul[a * q + a] as usize;
            if sqrt[s].is_none() {
                sqrt[s] = Some(a as Fq);
            }
        }
        let square = sqrt.iter().map(Option::is_some).collect();
        Self {
            spec,
            q,
            add,
            mul,
            neg,
            inv,
            frob,
            square,
            sqrt,
        }
    }

    pub fn spec(&self) -> FieldSpec {
        self.spec
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn p(&self) -> usize {
        self.spec.p as usize
    }

    pub fn elements(&self) -> impl Iterator<Item = Fq> {
        (0..self.q).map(|a| a as Fq)
    }

    #[inline]
    pub fn add(&self, a: Fq, b: Fq) -> Fq {
        self.add[a as usize * self.q + b as usize]
    }

    #[inline]
    pub fn mul(&self, a: Fq, b: Fq) -> Fq {
        self.mul[a as usize * self.q + b as usize]
    }

    #[inline]
    pub fn neg(&self, a: Fq) -> Fq {
        self.neg[a as usize]
    }

    #[inline]
    pub fn sub(&self, a: Fq, b: Fq) -> Fq {
        self.add(a, self.neg(b))
    }

    pub fn inv(&self, a: Fq) -> Result<Fq> {
        if a == 0 {
            Err(Error::DivisionByZero)
        } else {
            Ok(self.inv[a as usize])
        }
    }

    pub fn div(&self, a: Fq, b: Fq) -> Result<Fq> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: Fq, e: u64) -> Fq {
        let (mut base, mut e, mut acc) = (a, e, 1);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// `a^p`.
    pub fn frobenius(&self, a: Fq) -> Fq {
        self.frob[a as usize]
    }

    /// `a^(1+p)` for `k = 2`, `a` for prime fields. The result lies in the
    /// prime field, whose elements are the indices `0..p`.
    pub fn norm(&self, a: Fq) -> Fq {
        if self.spec.k == 1 {
            a
        } else {
            self.mul(a, self.frobenius(a))
        }
    }

    pub fn is_square(&self, a: Fq) -> bool {
        self.square[a as usize]
    }

    pub fn sqrt(&self, a: Fq) -> Option<Fq> {
        self.sqrt[a as usize]
    }

    /// Image of an integer under `Z -> F_p -> F_q`.
    pub fn from_int(&self, n: i64) -> Fq {
        n.rem_euclid(self.spec.p as i64) as Fq
    }

    /// The class of `x` in `F_{p^2}`; `None` for prime fields.
    pub fn x(&self) -> Option<Fq> {
        (self.spec.k == 2).then_some(self.spec.p as Fq)
    }

    /// Smallest generator of the multiplicative group.
    pub fn primitive(&self) -> Fq {
        (1..self.q as u64)
            .map(|a| a as Fq)
            .find(|&a| (1..self.q as u64 - 1).all(|e| self.pow(a, e) != 1))
            .expect("finite fields have primitive elements")
    }

    /// Number of roots in the field of `w^2 + a w + b`.
    pub fn quadratic_roots(&self, a: Fq, b: Fq) -> usize {
        if self.spec.p == 2 {
            if a == 0 {
                1
            } else {
                // w = a u turns it into u^2 + u = b / a^2, solvable iff the
                // absolute trace of b / a^2 vanishes.
                let c = self.mul(b, self.inv[self.mul(a, a) as usize]);
                let tr = if self.spec.k == 1 { c } else { self.add(c, self.mul(c, c)) };
                if tr == 0 {
                    2
                } else {
                    0
                }
            }
        } else {
            let four = self.from_int(4);
            let disc = self.sub(self.mul(a, a), self.mul(four, b));
            if disc == 0 {
                1
            } else if self.is_square(disc) {
                2
            } else {
                0
            }
        }
    }

    /// The roots themselves, ascending.
    pub fn solve_quadratic(&self, a: Fq, b: Fq) -> Vec<Fq> {
        self.elements()
            .filter(|&w| self.add(self.mul(w, self.add(w, a)), b) == 0)
            .collect()
    }

    /// Renders `c0 + c1 x` as `c0+c1x`, or just `c0` in the prime field.
    pub fn render(&self, a: Fq) -> String {
        let p = self.p() as Fq;
        let (c0, c1) = (a % p, a / p);
        match (c0, c1) {
            (_, 0) => c0.to_string(),
            (0, 1) => "x".into(),
            (0, _) => format!("{c1}x"),
            (_, 1) => format!("{c0}+x"),
            _ => format!("{c0}+{c1}x"),
        }
    }
}

/// An element bundled with its field, for callers that want checked mixing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FieldElement {
    pub spec: FieldSpec,
    pub rep: Fq,
}

impl FieldElement {
    pub fn new(spec: FieldSpec, rep: u32) -> Result<Self> {
        if rep >= spec.q() {
            return Err(Error::CoefficientRange { value: rep, q: spec.q() });
        }
        Ok(Self { spec, rep: rep as Fq })
    }

    fn with(&self, other: &Self, op: impl Fn(&Field, Fq, Fq) -> Fq) -> Result<Self> {
        if self.spec != other.spec {
            return Err(Error::FieldMismatch);
        }
        Ok(Self {
            spec: self.spec,
            rep: op(self.spec.field(), self.rep, other.rep),
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.with(other, Field::add)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.with(other, Field::sub)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.with(other, Field::mul)
    }

    pub fn inv(&self) -> Result<Self> {
        Ok(Self {
            spec: self.spec,
            rep: self.spec.field().inv(self.rep)?,
        })
    }

    pub fn pow(&self, e: u64) -> Self {
        Self {
            spec: self.spec,
            rep: self.spec.field().pow(self.rep, e),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u32, k: u32) -> &'static Field {
        FieldSpec::new(p, k, None).unwrap().field()
    }

    #[test]
    fn display_modulus() {
        let show = |p, k| FieldSpec::new(p, k, None).unwrap().to_string();
        assert_eq!(show(2, 2), "F_4 = F_2[x]/(x^2+x+1)");
        assert_eq!(show(7, 2), "F_49 = F_7[x]/(x^2+1)");
        assert_eq!(show(3, 2), "F_9 = F_3[x]/(x^2+2x+2)");
        assert_eq!(show(5, 1), "F_5");
    }

    #[test]
    fn defaults_and_small_identities() {
        assert_eq!(FieldSpec::new(3, 2, None).unwrap().modulus, Some([2, 2]));
        assert_eq!(FieldSpec::new(2, 2, None).unwrap().modulus, Some([1, 1]));
        assert_eq!(f(2, 1).add(1, 1), 0);
        let f4 = f(2, 2);
        let x = f4.x().unwrap();
        assert_eq!(f4.mul(x, x), f4.add(x, 1));
        let f9 = f(3, 2);
        let x = f9.x().unwrap();
        assert_eq!(f9.mul(x, x), f9.add(x, 1));
        assert_eq!(f(5, 1).inv(2), Ok(3));
        assert_eq!(f(3, 1).pow(2, 2), 1);
        assert!(!f(3, 1).is_square(2));
        assert_eq!(f(5, 1).inv(0), Err(Error::DivisionByZero));
    }

    #[test]
    fn bad_specs() {
        assert_eq!(FieldSpec::new(3, 2, Some([0, 1])), Err(Error::ReducibleModulus(vec![0, 1, 1])));
        assert_eq!(FieldSpec::new(11, 1, None), Err(Error::UnsupportedField { p: 11, k: 1 }));
        assert!(FieldSpec::new(2, 3, None).is_err());
    }

    #[test]
    fn all_tables_satisfy_the_axioms() {
        for (p, k) in [(2, 1), (3, 1), (5, 1), (7, 1), (2, 2), (3, 2), (5, 2), (7, 2)] {
            let fl = f(p, k);
            let els: Vec<Fq> = fl.elements().collect();
            for &a in &els {
                for &b in &els {
                    assert_eq!(fl.add(a, b), fl.add(b, a));
                    assert_eq!(fl.mul(a, b), fl.mul(b, a));
                    for &c in &els {
                        assert_eq!(fl.add(fl.add(a, b), c), fl.add(a, fl.add(b, c)));
                        assert_eq!(fl.mul(fl.mul(a, b), c), fl.mul(a, fl.mul(b, c)));
                        assert_eq!(fl.mul(a, fl.add(b, c)), fl.add(fl.mul(a, b), fl.mul(a, c)));
                    }
                }
                if a != 0 {
                    assert_eq!(fl.mul(a, fl.inv(a).unwrap()), 1);
                }
                assert_eq!(fl.add(a, fl.neg(a)), 0);
            }
            // Frobenius: automorphism of order k.
            for &a in &els {
                for &b in &els {
                    assert_eq!(fl.frobenius(fl.mul(a, b)), fl.mul(fl.frobenius(a), fl.frobenius(b)));
                    assert_eq!(fl.frobenius(fl.add(a, b)), fl.add(fl.frobenius(a), fl.frobenius(b)));
                }
                let back = (0..k).fold(a, |x, _| fl.frobenius(x));
                assert_eq!(back, a);
            }
            let squares = els.iter().filter(|&&a| a != 0 && fl.is_square(a)).count();
            let q = fl.q();
            assert_eq!(squares, if p == 2 { q - 1 } else { (q - 1) / 2 });
            for &a in &els {
                for &b in &els {
                    assert_eq!(fl.quadratic_roots(a, b), fl.solve_quadratic(a, b).len(), "{p}^{k}: {a} {b}");
                }
            }
        }
    }

    #[test]
    fn norm_and_frobenius_on_f9() {
        let f9 = f(3, 2);
        let fixed = f9.elements().filter(|&a| f9.frobenius(a) == a).count();
        assert_eq!(fixed, 3);
        let norms: std::collections::BTreeSet<Fq> = (1..9).map(|a| f9.norm(a)).collect();
        assert_eq!(norms, [1, 2].into());
    }

    #[test]
    fn checked_elements() {
        let s5 = FieldSpec::new(5, 1, None).unwrap();
        let s3 = FieldSpec::new(3, 1, None).unwrap();
        let a = FieldElement::new(s5, 2).unwrap();
        assert_eq!(a.inv().unwrap().rep, 3);
        assert_eq!(a.add(&FieldElement::new(s3, 1).unwrap()), Err(Error::FieldMismatch));
        assert!(FieldElement::new(s3, 3).is_err());
        assert_eq!(a.pow(4).rep, 1);
    }
}
