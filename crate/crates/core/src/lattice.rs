//! The odd unimodular lattice `I^{1,n}` with form `diag(1, -1, ..., -1)`,
//! its canonical vector and the roots / exceptional vectors of `E_n`.
//!
//! Coordinates are `(d0; d1, ..., dn)` against the basis `e0, ..., en`, where
//! `e0` is the pullback of a line and `ei` the exceptional curve over the
//! i-th blown-up point. In the intersection-graph notation `l0 = e0`,
//! `li = ei` and `lij = l0 - li - lj`.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported rank (`E_7`, degree-2 surfaces).
pub const MAX_RANK: usize = 7;

/// Coefficient bound used by [`enumerate_roots`] and [`enumerate_exceptional`].
pub const ENUMERATION_BOUND: i64 = 3;

/// An element of `I^{1,n}`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "Vec<i64>", try_from = "Vec<i64>")]
pub struct LatticeVector {
    coeffs: Vec<i64>,
}

impl LatticeVector {
    /// Builds a vector from `(d0, d1, ..., dn)`; the rank is `coeffs.len() - 1`.
    pub fn new(coeffs: Vec<i64>) -> Result<Self> {
        if coeffs.len() < 2 || coeffs.len() > MAX_RANK + 1 {
            return Err(Error::RankOutOfRange(coeffs.len().saturating_sub(1)));
        }
        Ok(Self { coeffs })
    }

    pub fn zero(n: usize) -> Result<Self> {
        check_rank(n)?;
        Ok(Self { coeffs: vec![0; n + 1] })
    }

    /// The basis vector `e_i` of `I^{1,n}` (`i = 0` is the class of a line).
    pub fn basis(n: usize, i: usize) -> Result<Self> {
        let mut v = Self::zero(n)?;
        if i > n {
            return Err(Error::RankOutOfRange(i));
        }
        v.coeffs[i] = 1;
        Ok(v)
    }

    /// Rank parameter `n`.
    pub fn n(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn square(&self) -> i64 {
        form(&self.coeffs, &self.coeffs)
    }

    pub fn neg(&self) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        same_rank(self, other)?;
        Ok(Self {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn scale(&self, k: i64) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|c| c * k).collect(),
        }
    }

    /// Renders the class in the `l`-notation used for graph labels:
    /// `l3` for `e3`, `l12` for `l0 - l1 - l2`, and a signed combination such
    /// as `l1-l2` or `2l0-l1-l2-l3-l4-l5` otherwise.
    pub fn l_notation(&self) -> String {
        let c = &self.coeffs;
        let nonzero: Vec<usize> = (0..c.len()).filter(|&i| c[i] != 0).collect();
        if nonzero.len() == 1 && nonzero[0] > 0 && c[nonzero[0]] == 1 {
            return format!("l{}", nonzero[0]);
        }
        if c[0] == 1 && nonzero.len() == 3 && nonzero[1..].iter().all(|&i| c[i] == -1) {
            return format!("l{}{}", nonzero[1], nonzero[2]);
        }
        let mut out = String::new();
        for &i in &nonzero {
            let v = c[i];
            if v < 0 {
                out.push('-');
            } else if !out.is_empty() {
                out.push('+');
            }
            if v.abs() != 1 {
                out.push_str(&v.abs().to_string());
            }
            out.push_str(&format!("l{i}"));
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

fn form(a: &[i64], b: &[i64]) -> i64 {
    a[0] * b[0] - a[1..].iter().zip(&b[1..]).map(|(x, y)| x * y).sum::<i64>()
}

fn same_rank(u: &LatticeVector, v: &LatticeVector) -> Result<()> {
    if u.n() != v.n() {
        return Err(Error::RankMismatch {
            left: u.n(),
            right: v.n(),
        });
    }
    Ok(())
}

fn check_rank(n: usize) -> Result<()> {
    if (1..=MAX_RANK).contains(&n) {
        Ok(())
    } else {
        Err(Error::RankOutOfRange(n))
    }
}

/// The intersection pairing `u0 v0 - sum_{i>=1} ui vi`.
pub fn pair(u: &LatticeVector, v: &LatticeVector) -> Result<i64> {
    same_rank(u, v)?;
    Ok(form(&u.coeffs, &v.coeffs))
}

/// `k_n = -3 e0 + e1 + ... + en`, the canonical class of the blow-up of the
/// plane in `n` points.
pub fn canonical_vector(n: usize) -> Result<LatticeVector> {
    check_rank(n)?;
    let mut coeffs = vec![1; n + 1];
    coeffs[0] = -3;
    Ok(LatticeVector { coeffs })
}

/// All `v` with `v.k_n = k_pair` and `v^2 = square`, every coefficient in
/// `[-bound, bound]`, in lexicographic order.
///
/// Fixing `d0` pins both `sum di = -3 d0 - k_pair` and
/// `sum di^2 = d0^2 - square`, so the inner search is a bounded
/// composition problem.
pub fn enumerate_with_bound(n: usize, bound: i64, square: i64, k_pair: i64) -> Result<Vec<LatticeVector>> {
    check_rank(n)?;
    let mut out = Vec::new();
    let mut tail = vec![0i64; n];
    for d0 in -bound..=bound {
        let target_sum = -3 * d0 - k_pair;
        let target_sq = d0 * d0 - square;
        if target_sq < 0 {
            continue;
        }
        fill(&mut tail, 0, bound, target_sum, target_sq, &mut |t| {
            let mut coeffs = Vec::with_capacity(n + 1);
            coeffs.push(d0);
            coeffs.extend_from_slice(t);
            out.push(LatticeVector { coeffs });
        });
    }
    out.sort();
    Ok(out)
}

fn fill(
    tail: &mut [i64],
    pos: usize,
    bound: i64,
    sum_left: i64,
    sq_left: i64,
    emit: &mut dyn FnMut(&[i64]),
) {
    let slots = (tail.len() - pos) as i64;
    if slots == 0 {
        if sum_left == 0 && sq_left == 0 {
            emit(tail);
        }
        return;
    }
    // Cauchy-Schwarz: sum^2 <= slots * sum of squares.
    if sum_left * sum_left > slots * sq_left || sum_left.abs() > slots * bound {
        return;
    }
    for d in -bound..=bound {
        let sq = d * d;
        if sq > sq_left {
            continue;
        }
        tail[pos] = d;
        fill(tail, pos + 1, bound, sum_left - d, sq_left - sq, emit);
    }
    tail[pos] = 0;
}

fn cached(cache: &'static [OnceLock<Vec<LatticeVector>>; MAX_RANK], n: usize, square: i64, k_pair: i64) -> Result<&'static [LatticeVector]> {
    check_rank(n)?;
    let slot = &cache[n - 1];
    if let Some(v) = slot.get() {
        return Ok(v);
    }
    let found = enumerate_with_bound(n, ENUMERATION_BOUND, square, k_pair)?;
    Ok(slot.get_or_init(|| found))
}

static ROOTS: [OnceLock<Vec<LatticeVector>>; MAX_RANK] = [const { OnceLock::new() }; MAX_RANK];
static EXCEPTIONAL: [OnceLock<Vec<LatticeVector>>; MAX_RANK] = [const { OnceLock::new() }; MAX_RANK];

/// Roots of `E_n`: `a.k_n = 0`, `a^2 = -2`. Lexicographically ordered.
pub fn enumerate_roots(n: usize) -> Result<&'static [LatticeVector]> {
    cached(&ROOTS, n, -2, 0)
}

/// Exceptional vectors: `v.k_n = -1`, `v^2 = -1`. Lexicographically ordered.
pub fn enumerate_exceptional(n: usize) -> Result<&'static [LatticeVector]> {
    cached(&EXCEPTIONAL, n, -1, -1)
}

/// Whether `v` is a root of `E_n`.
pub fn is_root(v: &LatticeVector) -> bool {
    let k = canonical_vector(v.n()).expect("rank checked at construction");
    v.square() == -2 && form(&v.coeffs, &k.coeffs) == 0
}

pub fn is_exceptional(v: &LatticeVector) -> bool {
    let k = canonical_vector(v.n()).expect("rank checked at construction");
    v.square() == -1 && form(&v.coeffs, &k.coeffs) == -1
}

/// Vectors of the enumerated set that have some coefficient of absolute
/// value `bound`. Used to confirm the bound is not binding.
pub fn touching_bound(set: &[LatticeVector], bound: i64) -> Vec<LatticeVector> {
    set.iter()
        .filter(|v| v.coeffs.iter().any(|c| c.abs() == bound))
        .cloned()
        .collect()
}

/// Sorted set view, handy for set comparisons in tests and checks.
pub fn as_set(v: &[LatticeVector]) -> BTreeSet<LatticeVector> {
    v.iter().cloned().collect()
}

impl fmt::Display for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({};", self.coeffs[0])?;
        for (i, c) in self.coeffs[1..].iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

impl fmt::Debug for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for LatticeVector {
    type Err = Error;

    /// Parses the text form `(d0;d1,...,dn)`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::ParseVector(s.to_string());
        let inner = s
            .trim()
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .ok_or_else(bad)?;
        let (head, tail) = inner.split_once(';').ok_or_else(bad)?;
        let mut coeffs = vec![head.trim().parse::<i64>().map_err(|_| bad())?];
        for part in tail.split(',') {
            coeffs.push(part.trim().parse::<i64>().map_err(|_| bad())?);
        }
        Self::new(coeffs).map_err(|_| bad())
    }
}

impl From<LatticeVector> for Vec<i64> {
    fn from(v: LatticeVector) -> Self {
        v.coeffs
    }
}

impl TryFrom<Vec<i64>> for LatticeVector {
    type Error = Error;

    fn try_from(v: Vec<i64>) -> Result<Self> {
        Self::new(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(c: &[i64]) -> LatticeVector {
        LatticeVector::new(c.to_vec()).unwrap()
    }

    #[test]
    fn pairing_basics() {
        let e0 = LatticeVector::basis(7, 0).unwrap();
        let e1 = LatticeVector::basis(7, 1).unwrap();
        let e2 = LatticeVector::basis(7, 2).unwrap();
        assert_eq!(pair(&e0, &e0).unwrap(), 1);
        assert_eq!(pair(&e1, &e2).unwrap(), 0);
        let k7 = canonical_vector(7).unwrap();
        assert_eq!(pair(&k7, &k7).unwrap(), 2);
        assert_eq!(k7.to_string(), "(-3;1,1,1,1,1,1,1)");
    }

    #[test]
    fn canonical_pairs() {
        let k5 = canonical_vector(5).unwrap();
        assert_eq!(pair(&k5, &k5).unwrap(), 4);
        for n in 1..=7 {
            let k = canonical_vector(n).unwrap();
            for i in 1..=n {
                assert_eq!(pair(&k, &LatticeVector::basis(n, i).unwrap()).unwrap(), -1);
            }
        }
    }

    #[test]
    fn rank_errors() {
        assert_eq!(canonical_vector(0), Err(Error::RankOutOfRange(0)));
        assert_eq!(canonical_vector(8), Err(Error::RankOutOfRange(8)));
        assert!(enumerate_roots(9).is_err());
        let a = LatticeVector::basis(3, 1).unwrap();
        let b = LatticeVector::basis(4, 1).unwrap();
        assert_eq!(pair(&a, &b), Err(Error::RankMismatch { left: 3, right: 4 }));
        assert_ne!(LatticeVector::zero(3).unwrap(), LatticeVector::zero(4).unwrap());
    }

    #[test]
    fn simple_difference_is_a_root() {
        for n in 2..=7 {
            let mut c = vec![0; n + 1];
            c[1] = 1;
            c[2] = -1;
            assert!(enumerate_roots(n).unwrap().contains(&v(&c)));
            assert!(enumerate_exceptional(n).unwrap().contains(&LatticeVector::basis(n, 1).unwrap()));
        }
    }

    #[test]
    fn only_the_cubic_family_touches_the_bound() {
        for n in 1..=7 {
            assert!(touching_bound(enumerate_roots(n).unwrap(), ENUMERATION_BOUND).is_empty());
            for t in touching_bound(enumerate_exceptional(n).unwrap(), ENUMERATION_BOUND) {
                assert_eq!(t.coeffs()[0], 3, "{t}");
                assert!(t.coeffs()[1..].iter().all(|c| c.abs() < ENUMERATION_BOUND));
            }
        }
    }

    #[test]
    fn text_form_round_trip() {
        let x: LatticeVector = "(1;-1,-1,0,0,0)".parse().unwrap();
        assert_eq!(x, v(&[1, -1, -1, 0, 0, 0]));
        assert_eq!(x.to_string().parse::<LatticeVector>().unwrap(), x);
        assert!("(1,2)".parse::<LatticeVector>().is_err());
        assert!("1;2".parse::<LatticeVector>().is_err());
    }

    #[test]
    fn l_notation_labels() {
        assert_eq!(v(&[0, 1, -1, 0, 0, 0]).l_notation(), "l1-l2");
        assert_eq!(v(&[1, -1, -1, 0, 0, 0]).l_notation(), "l12");
        assert_eq!(v(&[0, 0, 0, 1, 0, 0]).l_notation(), "l3");
        assert_eq!(v(&[1, -1, -1, -1, 0, 0]).l_notation(), "l0-l1-l2-l3");
        assert_eq!(v(&[2, -1, -1, -1, -1, -1]).l_notation(), "2l0-l1-l2-l3-l4-l5");
    }
}
