//! Abelianization through the Smith normal form of the exponent-sum matrix.

use super::presentation::Presentation;
use super::word::Word;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;

/// A finitely generated abelian group `Z^free_rank ⊕ Z/d1 ⊕ … ⊕ Z/dk` in
/// invariant-factor form: every `di > 1` and `di | d(i+1)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AbelianGroup {
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
}

impl AbelianGroup {
    pub fn trivial() -> Self {
        AbelianGroup { free_rank: 0, torsion: vec![] }
    }

    pub fn free(rank: usize) -> Self {
        AbelianGroup { free_rank: rank, torsion: vec![] }
    }

    /// `Z/c1 ⊕ … ⊕ Z/cn` in canonical form; `ci = 0` contributes a copy of `Z`.
    pub fn from_cyclic_orders<I: IntoIterator<Item = BigInt>>(orders: I) -> Self {
        let diag: Vec<BigInt> = orders.into_iter().map(|c| c.abs()).collect();
        let n = diag.len();
        let mut m = vec![vec![BigInt::zero(); n]; n];
        for (i, d) in diag.into_iter().enumerate() {
            m[i][i] = d;
        }
        Self::from_relation_matrix(&m, n)
    }

    /// Quotient of `Z^ncols` by the row span of `rows`.
    pub fn from_relation_matrix(rows: &[Vec<BigInt>], ncols: usize) -> Self {
        let snf = SmithForm::compute(rows, ncols);
        snf.group()
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    /// Order when finite.
    pub fn order(&self) -> Option<BigInt> {
        if self.free_rank > 0 {
            return None;
        }
        Some(self.torsion.iter().fold(BigInt::one(), |a, b| a * b))
    }

    pub fn torsion_u64(&self) -> Vec<u64> {
        self.torsion.iter().map(|d| d.to_u64().unwrap_or(u64::MAX)).collect()
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if self.free_rank == 1 {
            parts.push("Z".to_string());
        } else if self.free_rank > 1 {
            parts.push(format!("Z^{}", self.free_rank));
        }
        for d in &self.torsion {
            parts.push(format!("Z/{d}"));
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Smith normal form `U A V = D` of an integer matrix. Only `V` is kept: it
/// turns generator coordinates into coordinates along the invariant factors.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub ncols: usize,
    /// Diagonal entries `d0, d1, …` (nonnegative, divisibility chain), length ≤ ncols.
    pub diagonal: Vec<BigInt>,
    /// Column transform, `ncols × ncols`, unimodular.
    pub v: Vec<Vec<BigInt>>,
}

impl SmithForm {
    pub fn compute(rows: &[Vec<BigInt>], ncols: usize) -> Self {
        let mut a: Vec<Vec<BigInt>> = rows.iter().filter(|r| r.iter().any(|x| !x.is_zero())).cloned().collect();
        let m = a.len();
        let n = ncols;
        let mut v: Vec<Vec<BigInt>> = (0..n)
            .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
            .collect();
        let mut diagonal = Vec::new();
        let mut t = 0;
        while t < m.min(n) {
            // pivot: smallest nonzero magnitude in the trailing block
            let mut best: Option<(usize, usize)> = None;
            for i in t..m {
                for j in t..n {
                    if !a[i][j].is_zero()
                        && best.map_or(true, |(bi, bj)| a[i][j].abs() < a[bi][bj].abs())
                    {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else { break };
            a.swap(t, pi);
            swap_cols(&mut a, &mut v, t, pj);
            loop {
                let mut dirty = false;
                for i in t + 1..m {
                    if !a[i][t].is_zero() {
                        let q = a[i][t].div_floor(&a[t][t]);
                        for j in t..n {
                            let d = &q * &a[t][j];
                            a[i][j] -= d;
                        }
                        if !a[i][t].is_zero() {
                            dirty = true;
                        }
                    }
                }
                for j in t + 1..n {
                    if !a[t][j].is_zero() {
                        let q = a[t][j].div_floor(&a[t][t]);
                        add_col_multiple(&mut a, &mut v, j, t, &(-q));
                        if !a[t][j].is_zero() {
                            dirty = true;
                        }
                    }
                }
                if !dirty {
                    // divisibility: fold an offending row into the pivot row
                    let mut bad = None;
                    'outer: for i in t + 1..m {
                        for j in t + 1..n {
                            if !a[i][j].is_zero() && !(&a[i][j] % &a[t][t]).is_zero() {
                                bad = Some(i);
                                break 'outer;
                            }
                        }
                    }
                    match bad {
                        Some(i) => {
                            for j in t..n {
                                let x = a[i][j].clone();
                                a[t][j] += x;
                            }
                        }
                        None => break,
                    }
                }
                // re-pivot on the smallest entry of row/column t
                let mut best = (t, t);
                for i in t..m {
                    if !a[i][t].is_zero() && a[i][t].abs() < a[best.0][best.1].abs() {
                        best = (i, t);
                    }
                }
                for j in t..n {
                    if !a[t][j].is_zero() && a[t][j].abs() < a[best.0][best.1].abs() {
                        best = (t, j);
                    }
                }
                if best.0 != t {
                    a.swap(t, best.0);
                }
                if best.1 != t {
                    swap_cols(&mut a, &mut v, t, best.1);
                }
            }
            diagonal.push(a[t][t].abs());
            t += 1;
        }
        SmithForm { ncols: n, diagonal, v }
    }

    pub fn group(&self) -> AbelianGroup {
        let torsion: Vec<BigInt> = self.diagonal.iter().filter(|d| **d > BigInt::one()).cloned().collect();
        let nonzero = self.diagonal.iter().filter(|d| !d.is_zero()).count();
        AbelianGroup { free_rank: self.ncols - nonzero, torsion }
    }

    /// Indices of the free coordinates (diagonal zero or absent).
    pub fn free_columns(&self) -> Vec<usize> {
        (0..self.ncols)
            .filter(|&j| j >= self.diagonal.len() || self.diagonal[j].is_zero())
            .collect()
    }

    /// Image of a generator-coordinate vector in the free part `Z^free_rank`.
    pub fn free_coordinates(&self, x: &[i64]) -> Vec<BigInt> {
        self.free_columns()
            .into_iter()
            .map(|j| (0..self.ncols).map(|i| BigInt::from(x[i]) * &self.v[i][j]).sum())
            .collect()
    }

    /// Full coordinates: free part followed by residues along each torsion factor.
    pub fn coordinates(&self, x: &[i64]) -> (Vec<BigInt>, Vec<BigInt>) {
        let mut tors = Vec::new();
        for (j, d) in self.diagonal.iter().enumerate() {
            if *d > BigInt::one() {
                let c: BigInt = (0..self.ncols).map(|i| BigInt::from(x[i]) * &self.v[i][j]).sum();
                tors.push(c.mod_floor(d));
            }
        }
        (self.free_coordinates(x), tors)
    }
}

fn swap_cols(a: &mut [Vec<BigInt>], v: &mut [Vec<BigInt>], i: usize, j: usize) {
    if i == j {
        return;
    }
    for row in a.iter_mut() {
        row.swap(i, j);
    }
    for row in v.iter_mut() {
        row.swap(i, j);
    }
}

/// column j += k * column t
fn add_col_multiple(a: &mut [Vec<BigInt>], v: &mut [Vec<BigInt>], j: usize, t: usize, k: &BigInt) {
    for row in a.iter_mut() {
        let d = k * &row[t];
        row[j] += d;
    }
    for row in v.iter_mut() {
        let d = k * &row[t];
        row[j] += d;
    }
}

/// Canonical abelianization of a presentation.
pub fn abelianize(p: &Presentation) -> AbelianGroup {
    smith_of(p).group()
}

pub fn smith_of(p: &Presentation) -> SmithForm {
    let rows: Vec<Vec<BigInt>> = p
        .exponent_matrix()
        .into_iter()
        .map(|r| r.into_iter().map(BigInt::from).collect())
        .collect();
    SmithForm::compute(&rows, p.ngens())
}

/// Coordinates of `w` in the free abelian quotient, relative to a basis given
/// by `basis` words. Returns `None` when the basis does not span or `w` is not
/// an integral combination.
pub fn express_in_basis(snf: &SmithForm, basis: &[Word], w: &Word) -> Option<Vec<BigInt>> {
    let n = snf.ncols;
    let cols: Vec<Vec<BigInt>> = basis.iter().map(|b| snf.free_coordinates(&b.exponent_sums(n))).collect();
    let target = snf.free_coordinates(&w.exponent_sums(n));
    solve_integral(&cols, &target)
}

/// Solve `sum_i c_i cols[i] = target` with a square, invertible system.
pub fn solve_integral(cols: &[Vec<BigInt>], target: &[BigInt]) -> Option<Vec<BigInt>> {
    let k = cols.len();
    if target.len() != k || cols.iter().any(|c| c.len() != k) {
        return None;
    }
    // augmented matrix rows = coordinates, columns = unknowns
    let mut m: Vec<Vec<BigRational>> = (0..k)
        .map(|r| {
            let mut row: Vec<BigRational> = (0..k).map(|c| BigRational::from_integer(cols[c][r].clone())).collect();
            row.push(BigRational::from_integer(target[r].clone()));
            row
        })
        .collect();
    for c in 0..k {
        let piv = (c..k).find(|&r| !m[r][c].is_zero())?;
        m.swap(c, piv);
        let p = m[c][c].clone();
        for x in m[c].iter_mut() {
            *x = &*x / &p;
        }
        for r in 0..k {
            if r != c && !m[r][c].is_zero() {
                let f = m[r][c].clone();
                for j in 0..=k {
                    let d = &f * &m[c][j];
                    m[r][j] -= d;
                }
            }
        }
    }
    m.iter()
        .map(|row| if row[k].is_integer() { Some(row[k].to_integer()) } else { None })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: &[&[i64]]) -> Vec<Vec<BigInt>> {
        v.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    #[test]
    fn cyclic_torsion() {
        let p = Presentation::new(&["x"]).unwrap().with_relators([Word::power_of(0, 5)]).unwrap();
        assert_eq!(abelianize(&p), AbelianGroup { free_rank: 0, torsion: vec![BigInt::from(5)] });
    }

    #[test]
    fn invariant_factors_of_two_three_four() {
        let g = AbelianGroup::from_cyclic_orders([2, 3, 4].map(BigInt::from));
        assert_eq!(g.torsion, vec![BigInt::from(2), BigInt::from(12)]);
    }

    #[test]
    fn zero_order_is_free() {
        let g = AbelianGroup::from_cyclic_orders([0, 0, 5, 1].map(BigInt::from));
        assert_eq!(g.free_rank, 2);
        assert_eq!(g.torsion, vec![BigInt::from(5)]);
        assert_eq!(g.to_string(), "Z^2 + Z/5");
    }

    #[test]
    fn dense_matrix() {
        let g = AbelianGroup::from_relation_matrix(&big(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]), 3);
        assert_eq!(g.torsion, vec![BigInt::from(2), BigInt::from(6), BigInt::from(12)]);
    }

    #[test]
    fn commutators_only_give_free_group() {
        let p = Presentation::new(&["a", "b"])
            .unwrap()
            .with_relators([Word::commutator(&Word::gen(0), &Word::gen(1))])
            .unwrap();
        assert_eq!(abelianize(&p), AbelianGroup::free(2));
    }

    #[test]
    fn coordinates_in_free_quotient() {
        // <x, y, z | x y^-1> : free rank 2
        let p = Presentation::new(&["x", "y", "z"])
            .unwrap()
            .with_relators([Word::from_syllables([(0, 1), (1, -1)])])
            .unwrap();
        let snf = smith_of(&p);
        let basis = [Word::gen(0), Word::gen(2)];
        let c = express_in_basis(&snf, &basis, &Word::gen(1)).unwrap();
        assert_eq!(c, vec![BigInt::from(1), BigInt::from(0)]);
    }
}
