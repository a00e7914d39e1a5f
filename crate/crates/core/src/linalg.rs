//! Exact linear algebra over the rationals for small integer matrices.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Q = BigRational;

pub fn q(v: i64) -> Q {
    Q::from_integer(BigInt::from(v))
}

/// Reduced row echelon form of `m` (in place). Returns the pivot columns.
pub fn rref(m: &mut [Vec<Q>]) -> Vec<usize> {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..cols {
                    let t = &m[r][j] * &f;
                    m[i][j] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn to_q(m: &[Vec<i64>]) -> Vec<Vec<Q>> {
    m.iter().map(|row| row.iter().map(|&v| q(v)).collect()).collect()
}

pub fn rank(m: &[Vec<i64>]) -> usize {
    rref(&mut to_q(m)).len()
}

/// Null space of `m` in the form returned by elimination: one basis vector
/// per free column `f`, with a 1 in position `f` and zeros in every other
/// free column. Returns `(basis, free_columns)`.
pub fn nullspace(m: &[Vec<i64>]) -> (Vec<Vec<Q>>, Vec<usize>) {
    let cols = m.first().map_or(0, Vec::len);
    let mut r = to_q(m);
    let pivots = rref(&mut r);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    let basis = free
        .iter()
        .map(|&f| {
            let mut v = vec![Q::zero(); cols];
            v[f] = Q::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -r[row][f].clone();
            }
            v
        })
        .collect();
    (basis, free)
}

/// Solves `m x = b` for one particular solution, if any.
pub fn solve(m: &[Vec<i64>], b: &[i64]) -> Option<Vec<Q>> {
    let cols = m.first().map_or(0, Vec::len);
    let mut aug: Vec<Vec<Q>> = m
        .iter()
        .zip(b)
        .map(|(row, &bi)| row.iter().map(|&v| q(v)).chain(std::iter::once(q(bi))).collect())
        .collect();
    let pivots = rref(&mut aug);
    if pivots.contains(&cols) {
        return None;
    }
    let mut x = vec![Q::zero(); cols];
    for (row, &pc) in pivots.iter().enumerate() {
        x[pc] = aug[row][cols].clone();
    }
    Some(x)
}

/// Inverse of a square integer matrix, if it is invertible over `Q`.
pub fn inverse(m: &[Vec<i64>]) -> Option<Vec<Vec<Q>>> {
    let n = m.len();
    let mut aug: Vec<Vec<Q>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            row.iter()
                .map(|&v| q(v))
                .chain((0..n).map(|j| if i == j { Q::one() } else { Q::zero() }))
                .collect()
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    Some(aug.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// Converts a rational known to be integral; `None` otherwise.
pub fn as_integer(x: &Q) -> Option<i64> {
    if x.is_integer() {
        let v = x.to_integer();
        i64::try_from(v).ok()
    } else {
        None
    }
}

pub fn mat_vec(m: &[Vec<i64>], v: &[Q]) -> Vec<Q> {
    m.iter()
        .map(|row| row.iter().zip(v).fold(Q::zero(), |acc, (&a, x)| acc + q(a) * x))
        .collect()
}

pub fn is_zero_vec(v: &[Q]) -> bool {
    v.iter().all(|x| x.is_zero())
}

pub fn abs_max(v: &[Q]) -> Q {
    v.iter().map(|x| x.abs()).fold(Q::zero(), |a, b| if b > a { b } else { a })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nullspace_of_path() {
        // Gram of a (-2)-curve meeting two (-1)-curves that meet nothing else.
        let m = vec![vec![-2, 1, 1], vec![1, -1, 0], vec![1, 0, -1]];
        let (basis, free) = nullspace(&m);
        assert_eq!(free, vec![2]);
        assert_eq!(basis.len(), 1);
        assert!(is_zero_vec(&mat_vec(&m, &basis[0])));
        assert_eq!(rank(&m), 2);
    }

    #[test]
    fn inverse_and_solve() {
        let m = vec![vec![2, 1], vec![1, 1]];
        let inv = inverse(&m).unwrap();
        assert_eq!(inv, vec![vec![q(1), q(-1)], vec![q(-1), q(2)]]);
        let x = solve(&m, &[3, 2]).unwrap();
        assert_eq!(x, vec![q(1), q(1)]);
        assert!(inverse(&[vec![1, 2], vec![2, 4]]).is_none());
        assert!(solve(&[vec![1, 2], vec![2, 4]], &[1, 3]).is_none());
    }
}
