//! Exact linear algebra over the integers and rationals.
//!
//! Everything here is small and dense: Gram matrices of a single weight space
//! and Cartan matrices. Elimination is fraction-free (Bareiss) where only rank
//! or determinants are needed and rational Gauss-Jordan where solutions are.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub type IntMatrix = Vec<Vec<BigInt>>;
pub type RatMatrix = Vec<Vec<BigRational>>;

fn exact_div(num: &BigInt, den: &BigInt) -> BigInt {
    let (q, r) = num.div_rem(den);
    assert!(r.is_zero(), "Bareiss step produced an inexact division");
    q
}

/// Fraction-free row reduction. Returns the pivot columns in increasing order
/// and the reduced matrix. A column is a pivot column iff it is linearly
/// independent of the columns to its left.
fn bareiss_echelon(m: &[Vec<BigInt>]) -> (Vec<usize>, IntMatrix, bool) {
    let mut a: IntMatrix = m.to_vec();
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut prev = BigInt::one();
    let mut pivots = Vec::new();
    let mut row = 0;
    let mut negate = false;
    for col in 0..cols {
        if row == rows {
            break;
        }
        let Some(p) = (row..rows).find(|&p| !a[p][col].is_zero()) else {
            continue;
        };
        if p != row {
            a.swap(p, row);
            negate = !negate;
        }
        for i in row + 1..rows {
            for j in col + 1..cols {
                let num = &a[row][col] * &a[i][j] - &a[i][col] * &a[row][j];
                a[i][j] = exact_div(&num, &prev);
            }
            a[i][col] = BigInt::zero();
        }
        prev = a[row][col].clone();
        pivots.push(col);
        row += 1;
    }
    (pivots, a, negate)
}

/// Indices of a maximal set of linearly independent columns, chosen greedily
/// from the left.
pub fn independent_columns(m: &[Vec<BigInt>]) -> Vec<usize> {
    bareiss_echelon(m).0
}

pub fn rank(m: &[Vec<BigInt>]) -> usize {
    independent_columns(m).len()
}

pub fn determinant(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let (pivots, a, negate) = bareiss_echelon(m);
    if pivots.len() < n {
        return BigInt::zero();
    }
    let det = a[n - 1][n - 1].clone();
    if negate {
        -det
    } else {
        det
    }
}

/// Inverse of a square integer matrix over the rationals, `None` if singular.
pub fn inverse(m: &[Vec<BigInt>]) -> Option<RatMatrix> {
    let n = m.len();
    let mut a: RatMatrix = m
        .iter()
        .map(|row| {
            row.iter()
                .map(|x| BigRational::from_integer(x.clone()))
                .collect()
        })
        .collect();
    let mut inv: RatMatrix = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        BigRational::one()
                    } else {
                        BigRational::zero()
                    }
                })
                .collect()
        })
        .collect();
    for col in 0..n {
        let p = (col..n).find(|&p| !a[p][col].is_zero())?;
        a.swap(p, col);
        inv.swap(p, col);
        let pivot = a[col][col].clone();
        for j in 0..n {
            a[col][j] = &a[col][j] / &pivot;
            inv[col][j] = &inv[col][j] / &pivot;
        }
        for i in 0..n {
            if i == col || a[i][col].is_zero() {
                continue;
            }
            let factor = a[i][col].clone();
            for j in 0..n {
                let da = &factor * &a[col][j];
                a[i][j] -= da;
                let di = &factor * &inv[col][j];
                inv[i][j] -= di;
            }
        }
    }
    Some(inv)
}

pub fn mat_vec(m: &[Vec<BigRational>], v: &[BigRational]) -> Vec<BigRational> {
    m.iter()
        .map(|row| {
            row.iter()
                .zip(v)
                .filter(|(_, x)| !x.is_zero())
                .fold(BigRational::zero(), |acc, (a, x)| acc + a * x)
        })
        .collect()
}

pub fn dot(a: &[BigRational], b: &[BigRational]) -> BigRational {
    a.iter()
        .zip(b)
        .filter(|(x, y)| !x.is_zero() && !y.is_zero())
        .fold(BigRational::zero(), |acc, (x, y)| acc + x * y)
}

pub fn to_int_matrix(m: &[Vec<i64>]) -> IntMatrix {
    m.iter()
        .map(|row| row.iter().map(|&x| BigInt::from(x)).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(m: &[&[i64]]) -> IntMatrix {
        m.iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect()
    }

    #[test]
    fn determinant_small() {
        assert_eq!(determinant(&int(&[&[2, -1], &[-1, 2]])), BigInt::from(3));
        assert_eq!(determinant(&int(&[&[0, 1], &[1, 0]])), BigInt::from(-1));
        assert_eq!(determinant(&int(&[&[1, 2], &[2, 4]])), BigInt::zero());
        // A4 Cartan matrix has determinant 5
        let a4 = int(&[
            &[2, -1, 0, 0],
            &[-1, 2, -1, 0],
            &[0, -1, 2, -1],
            &[0, 0, -1, 2],
        ]);
        assert_eq!(determinant(&a4), BigInt::from(5));
    }

    #[test]
    fn independent_columns_skip_dependent() {
        let m = int(&[&[1, 2, 0, 1], &[1, 2, 1, 0], &[0, 0, 1, -1]]);
        assert_eq!(independent_columns(&m), vec![0, 2]);
        assert_eq!(rank(&m), 2);
    }

    #[test]
    fn inverse_roundtrip() {
        let m = int(&[&[2, -1, 0], &[-1, 2, -2], &[0, -1, 2]]);
        let inv = inverse(&m).unwrap();
        for i in 0..3 {
            let col: Vec<BigRational> = (0..3).map(|k| inv[k][i].clone()).collect();
            let rows: RatMatrix = m
                .iter()
                .map(|r| {
                    r.iter()
                        .map(|x| BigRational::from_integer(x.clone()))
                        .collect()
                })
                .collect();
            let e = mat_vec(&rows, &col);
            for (k, x) in e.iter().enumerate() {
                let want = if k == i {
                    BigRational::one()
                } else {
                    BigRational::zero()
                };
                assert_eq!(x, &want);
            }
        }
        assert!(inverse(&int(&[&[1, 2], &[2, 4]])).is_none());
    }
}
