//! Dense exact linear algebra over `Q` and over quadratic towers.
//!
//! Matrices are row-major `Vec<Vec<T>>`. Elimination is plain Gauss-Jordan
//! with exact division; everything here is desk-scale.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::scalar::{ExactScalar, Rational};

/// Minimal field interface for exact elimination.
pub trait FieldElem: Clone + PartialEq {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add_ref(&self, o: &Self) -> Self;
    fn sub_ref(&self, o: &Self) -> Self;
    fn mul_ref(&self, o: &Self) -> Self;
    /// Inverse of a nonzero element.
    fn inv_ref(&self) -> Self;
    fn neg_ref(&self) -> Self;
}

impl FieldElem for Rational {
    fn zero() -> Self {
        <Rational as Zero>::zero()
    }
    fn one() -> Self {
        <Rational as One>::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add_ref(&self, o: &Self) -> Self {
        self + o
    }
    fn sub_ref(&self, o: &Self) -> Self {
        self - o
    }
    fn mul_ref(&self, o: &Self) -> Self {
        self * o
    }
    fn inv_ref(&self) -> Self {
        self.recip()
    }
    fn neg_ref(&self) -> Self {
        -self
    }
}

impl FieldElem for ExactScalar {
    fn zero() -> Self {
        ExactScalar::zero()
    }
    fn one() -> Self {
        ExactScalar::one()
    }
    fn is_zero(&self) -> bool {
        ExactScalar::is_zero(self)
    }
    fn add_ref(&self, o: &Self) -> Self {
        self + o
    }
    fn sub_ref(&self, o: &Self) -> Self {
        self - o
    }
    fn mul_ref(&self, o: &Self) -> Self {
        self * o
    }
    fn inv_ref(&self) -> Self {
        self.inv().expect("inverse of zero")
    }
    fn neg_ref(&self) -> Self {
        -self
    }
}

/// Row echelon reduction in place; returns pivot columns.
pub fn rref<T: FieldElem>(mat: &mut [Vec<T>]) -> Vec<usize> {
    let rows = mat.len();
    if rows == 0 {
        return Vec::new();
    }
    let cols = mat[0].len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r >= rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !mat[i][c].is_zero()) else {
            continue;
        };
        mat.swap(r, p);
        let inv = mat[r][c].inv_ref();
        for j in c..cols {
            mat[r][j] = mat[r][j].mul_ref(&inv);
        }
        for i in 0..rows {
            if i != r && !mat[i][c].is_zero() {
                let f = mat[i][c].clone();
                for j in c..cols {
                    let t = mat[r][j].mul_ref(&f);
                    mat[i][j] = mat[i][j].sub_ref(&t);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank<T: FieldElem>(mat: &[Vec<T>]) -> usize {
    let mut m: Vec<Vec<T>> = mat.to_vec();
    rref(&mut m).len()
}

/// Solves `A x = b`. Returns `None` when inconsistent, otherwise a
/// particular solution together with a basis of the kernel of `A`.
pub fn solve<T: FieldElem>(a: &[Vec<T>], b: &[T]) -> Option<(Vec<T>, Vec<Vec<T>>)> {
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut aug: Vec<Vec<T>> = a
        .iter()
        .zip(b.iter())
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    // inconsistent iff a pivot lands in the rhs column
    if pivots.iter().any(|&c| c == cols) {
        return None;
    }
    let mut particular = vec![T::zero(); cols];
    for (i, &c) in pivots.iter().enumerate() {
        particular[c] = aug[i][cols].clone();
    }
    let kernel = kernel_from_rref(&aug, &pivots, cols);
    Some((particular, kernel))
}

/// Kernel basis of `A` (columns `0..cols` of an rref'd augmented matrix).
fn kernel_from_rref<T: FieldElem>(rref_mat: &[Vec<T>], pivots: &[usize], cols: usize) -> Vec<Vec<T>> {
    let mut basis = Vec::new();
    let pivot_set: Vec<bool> = {
        let mut v = vec![false; cols];
        for &c in pivots {
            v[c] = true;
        }
        v
    };
    for free in 0..cols {
        if pivot_set[free] {
            continue;
        }
        let mut vecb = vec![T::zero(); cols];
        vecb[free] = T::one();
        for (i, &c) in pivots.iter().enumerate() {
            vecb[c] = rref_mat[i][free].neg_ref();
        }
        basis.push(vecb);
    }
    basis
}

/// Basis of the nullspace of `A`.
pub fn nullspace<T: FieldElem>(a: &[Vec<T>]) -> Vec<Vec<T>> {
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut m: Vec<Vec<T>> = a.to_vec();
    let pivots = rref(&mut m);
    kernel_from_rref(&m, &pivots, cols)
}

/// Inverse of a square matrix, if nonsingular.
pub fn invert<T: FieldElem>(a: &[Vec<T>]) -> Option<Vec<Vec<T>>> {
    let n = a.len();
    let mut aug: Vec<Vec<T>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            for j in 0..n {
                r.push(if i == j { T::one() } else { T::zero() });
            }
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.len() != n || pivots.iter().enumerate().any(|(i, &c)| i != c) {
        return None;
    }
    Some(aug.into_iter().map(|row| row[n..].to_vec()).collect())
}

// ---- integer-vector utilities -------------------------------------------

pub fn dot_int(a: &[BigInt], b: &[BigInt]) -> BigInt {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn dot_int_rat(a: &[BigInt], b: &[Rational]) -> Rational {
    debug_assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .map(|(x, y)| y * Rational::from(x.clone()))
        .sum()
}

pub fn dot_rat(a: &[Rational], b: &[Rational]) -> Rational {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Scales an integer vector to its primitive representative (gcd 1),
/// preserving direction. The zero vector is returned unchanged.
pub fn primitive(v: &[BigInt]) -> Vec<BigInt> {
    let mut g = BigInt::zero();
    for x in v {
        g = g.gcd(x);
    }
    if g.is_zero() || g.is_one() {
        return v.to_vec();
    }
    v.iter().map(|x| x / &g).collect()
}

/// Clears denominators and reduces: the primitive integer vector spanning
/// the same ray as the rational input.
pub fn rational_to_primitive(v: &[Rational]) -> Vec<BigInt> {
    let mut l = BigInt::one();
    for x in v {
        l = l.lcm(x.denom());
    }
    let ints: Vec<BigInt> = v
        .iter()
        .map(|x| (x * Rational::from(l.clone())).to_integer())
        .collect();
    primitive(&ints)
}

pub fn int_to_rational_vec(v: &[BigInt]) -> Vec<Rational> {
    v.iter().map(|x| Rational::from(x.clone())).collect()
}

/// Lex comparison of integer vectors.
pub fn lex_cmp(a: &[BigInt], b: &[BigInt]) -> core::cmp::Ordering {
    for (x, y) in a.iter().zip(b.iter()) {
        match x.cmp(y) {
            core::cmp::Ordering::Equal => continue,
            o => return o,
        }
    }
    a.len().cmp(&b.len())
}

/// 1-norm of an integer vector.
pub fn l1_norm(v: &[BigInt]) -> BigInt {
    v.iter().map(|x| x.abs()).sum()
}

/// 1-norm of a rational vector.
pub fn l1_norm_rat(v: &[Rational]) -> Rational {
    v.iter().map(|x| x.abs()).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ratio;

    fn rmat(rows: &[&[i64]]) -> Vec<Vec<Rational>> {
        rows.iter()
            .map(|r| r.iter().map(|&x| Rational::from(BigInt::from(x))).collect())
            .collect()
    }

    #[test]
    fn solve_and_kernel() {
        let a = rmat(&[&[1, 1]]);
        let b = vec![ratio(1, 1)];
        let (p, k) = solve(&a, &b).unwrap();
        assert_eq!(dot_rat(&a[0], &p), ratio(1, 1));
        assert_eq!(k.len(), 1);
        assert_eq!(dot_rat(&a[0], &k[0]), ratio(0, 1));
    }

    #[test]
    fn inconsistent_detected() {
        let a = rmat(&[&[1, 1], &[1, 1]]);
        let b = vec![ratio(1, 1), ratio(2, 1)];
        assert!(solve(&a, &b).is_none());
    }

    #[test]
    fn invert_small() {
        let a = rmat(&[&[2, 1], &[1, 1]]);
        let inv = invert(&a).unwrap();
        assert_eq!(inv[0][0], ratio(1, 1));
        assert_eq!(inv[0][1], ratio(-1, 1));
    }

    #[test]
    fn primitive_reduces() {
        let v = vec![BigInt::from(4), BigInt::from(-6)];
        assert_eq!(primitive(&v), vec![BigInt::from(2), BigInt::from(-3)]);
        let r = vec![ratio(1, 2), ratio(1, 3)];
        assert_eq!(rational_to_primitive(&r), vec![BigInt::from(3), BigInt::from(2)]);
    }
}
