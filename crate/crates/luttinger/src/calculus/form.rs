//! Exact signature and determinant of intersection form records.

use crate::blocks::IntersectionFormRecord;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Symmetric Gaussian elimination over the rationals. Returns the diagonal
/// of a congruent diagonal matrix.
fn congruent_diagonal(m: &[Vec<i64>]) -> Vec<BigRational> {
    let n = m.len();
    let mut a: Vec<Vec<BigRational>> =
        m.iter().map(|r| r.iter().map(|&v| BigRational::from_integer(v.into())).collect()).collect();
    let mut diag = Vec::with_capacity(n);
    for k in 0..n {
        if a[k][k].is_zero() {
            // pull in a row with nonzero diagonal, or add one with a nonzero off-diagonal entry
            if let Some(j) = (k + 1..n).find(|&j| !a[j][j].is_zero()) {
                a.swap(k, j);
                for r in a.iter_mut() {
                    r.swap(k, j);
                }
            } else if let Some(j) = (k + 1..n).find(|&j| !a[k][j].is_zero()) {
                for c in 0..n {
                    let v = a[j][c].clone();
                    a[k][c] += v;
                }
                for r in 0..n {
                    let v = a[r][j].clone();
                    a[r][k] += v;
                }
            }
        }
        let p = a[k][k].clone();
        diag.push(p.clone());
        if p.is_zero() {
            continue;
        }
        for i in k + 1..n {
            let f = &a[i][k] / &p;
            if f.is_zero() {
                continue;
            }
            for c in k..n {
                let v = &f * &a[k][c];
                a[i][c] -= v;
            }
            for r in k..n {
                let v = &f * &a[r][k];
                a[r][i] -= v;
            }
        }
    }
    diag
}

/// Signature of the whole form: hyperbolic pairs contribute zero.
pub fn form_signature(record: &IntersectionFormRecord) -> i64 {
    matrix_signature(&record.odd_block)
}

pub fn matrix_signature(m: &[Vec<i64>]) -> i64 {
    congruent_diagonal(m)
        .iter()
        .map(|d| if d.is_positive() { 1 } else if d.is_negative() { -1 } else { 0 })
        .sum()
}

/// Determinant of the named block, by exact elimination.
pub fn block_determinant(record: &IntersectionFormRecord) -> BigRational {
    let m = &record.odd_block;
    let n = m.len();
    let mut a: Vec<Vec<BigRational>> =
        m.iter().map(|r| r.iter().map(|&v| BigRational::from_integer(v.into())).collect()).collect();
    let mut det = BigRational::one();
    for k in 0..n {
        let Some(piv) = (k..n).find(|&r| !a[r][k].is_zero()) else {
            return BigRational::zero();
        };
        if piv != k {
            a.swap(k, piv);
            det = -det;
        }
        let p = a[k][k].clone();
        det *= &p;
        for i in k + 1..n {
            let f = &a[i][k] / &p;
            for c in k..n {
                let v = &f * &a[k][c];
                a[i][c] -= v;
            }
        }
    }
    det
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn simple_forms() {
        assert_eq!(form_signature(&IntersectionFormRecord::diagonal(1, &[])), 0);
        assert_eq!(form_signature(&IntersectionFormRecord::diagonal(0, &[-1, -1])), -2);
        assert_eq!(matrix_signature(&[vec![0, 1], vec![1, 0]]), 0);
        assert_eq!(matrix_signature(&[vec![2, 1], vec![1, 2]]), 2);
    }

    #[test]
    fn zero_leading_entry() {
        // [[0,1],[1,-1]] has signature 0, determinant -1
        let r = IntersectionFormRecord { hyperbolic_pairs: 0, basis: vec![], odd_block: vec![vec![0, 1], vec![1, -1]] };
        assert_eq!(form_signature(&r), 0);
        assert_eq!(block_determinant(&r), BigRational::from_integer((-1).into()));
    }
}
