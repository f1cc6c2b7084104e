//! Sparse exact rational matrices.
//!
//! Rank uses fraction-free row reduction: rows are scaled to primitive
//! integer vectors and eliminated by integer cross-multiplication, dividing
//! out the row content after every step so entries stay small.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::poly::Rational;

/// Row-major sparse matrix; absent entries are zero and stored entries are nonzero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BTreeMap<usize, Rational>>,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix {
            rows,
            cols,
            data: vec![BTreeMap::new(); rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn from_dense(rows: &[Vec<Rational>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged dense matrix");
            for (j, v) in row.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    pub fn to_dense(&self) -> Vec<Vec<Rational>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j)).collect())
            .collect()
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> Rational {
        self.data[i].get(&j).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        if v.is_zero() {
            self.data[i].remove(&j);
        } else {
            self.data[i].insert(j, v);
        }
    }

    pub fn row(&self, i: usize) -> &BTreeMap<usize, Rational> {
        &self.data[i]
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(BTreeMap::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(BTreeMap::is_empty)
    }

    /// Entry of largest absolute value, or zero.
    pub fn max_abs(&self) -> Rational {
        self.data
            .iter()
            .flat_map(|r| r.values())
            .map(|v| v.abs())
            .max()
            .unwrap_or_else(Rational::zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for (i, row) in self.data.iter().enumerate() {
            for (&j, v) in row {
                t.data[j].insert(i, v.clone());
            }
        }
        t
    }

    pub fn mul(&self, rhs: &RatMatrix) -> RatMatrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch in product");
        let mut out = Self::zeros(self.rows, rhs.cols);
        for (i, row) in self.data.iter().enumerate() {
            let mut acc: BTreeMap<usize, Rational> = BTreeMap::new();
            for (&k, a) in row {
                for (&j, b) in &rhs.data[k] {
                    *acc.entry(j).or_insert_with(Rational::zero) += a * b;
                }
            }
            acc.retain(|_, v| !v.is_zero());
            out.data[i] = acc;
        }
        out
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.cols);
        self.data
            .iter()
            .map(|row| row.iter().fold(Rational::zero(), |acc, (&j, a)| acc + a * &v[j]))
            .collect()
    }

    pub fn sub(&self, rhs: &RatMatrix) -> RatMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let mut out = self.clone();
        for (i, row) in rhs.data.iter().enumerate() {
            for (&j, v) in row {
                let nv = out.get(i, j) - v;
                out.set(i, j, nv);
            }
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> RatMatrix {
        let mut out = Self::zeros(self.rows, self.cols);
        if c.is_zero() {
            return out;
        }
        for (i, row) in self.data.iter().enumerate() {
            out.data[i] = row.iter().map(|(&j, v)| (j, v * c)).collect();
        }
        out
    }

    /// Submatrix on the given row and column index lists (in that order).
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> RatMatrix {
        let col_pos: BTreeMap<usize, usize> = cols.iter().enumerate().map(|(n, &c)| (c, n)).collect();
        let mut out = Self::zeros(rows.len(), cols.len());
        for (ni, &i) in rows.iter().enumerate() {
            for (&j, v) in &self.data[i] {
                if let Some(&nj) = col_pos.get(&j) {
                    out.data[ni].insert(nj, v.clone());
                }
            }
        }
        out
    }

    /// Exact rank by fraction-free elimination.
    pub fn rank(&self) -> usize {
        let mut pivots: BTreeMap<usize, BTreeMap<usize, BigInt>> = BTreeMap::new();
        for row in &self.data {
            let mut r = primitive_integer_row(row);
            while let Some((&lead, lead_val)) = r.iter().next() {
                let Some(p) = pivots.get(&lead) else { break };
                let p_lead = &p[&lead];
                let lead_val = lead_val.clone();
                // r <- p_lead * r - lead_val * p, cancelling column `lead`
                let mut next: BTreeMap<usize, BigInt> = BTreeMap::new();
                for (&j, v) in &r {
                    next.insert(j, v * p_lead);
                }
                for (&j, v) in p {
                    let e = next.entry(j).or_insert_with(BigInt::zero);
                    *e -= v * &lead_val;
                }
                next.retain(|_, v| !v.is_zero());
                r = make_primitive(next);
            }
            if let Some((&lead, _)) = r.iter().next() {
                pivots.insert(lead, r);
            }
        }
        pivots.len()
    }

    pub fn kernel_dim(&self) -> usize {
        self.cols - self.rank()
    }

    /// Exact inverse by Gauss-Jordan elimination.
    pub fn inverse(&self) -> Result<RatMatrix> {
        let n = self.rows;
        let singular = || Error::NonInvertibleBlock {
            rows: self.rows,
            cols: self.cols,
            rank: self.rank(),
        };
        if self.cols != n {
            return Err(singular());
        }
        let mut a = self.to_dense();
        let mut inv = RatMatrix::identity(n).to_dense();
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !a[r][col].is_zero()) else {
                return Err(singular());
            };
            a.swap(col, p);
            inv.swap(col, p);
            let pivot = a[col][col].clone();
            for j in 0..n {
                a[col][j] /= &pivot;
                inv[col][j] /= &pivot;
            }
            for r in 0..n {
                if r == col || a[r][col].is_zero() {
                    continue;
                }
                let f = a[r][col].clone();
                for j in 0..n {
                    let t = &f * &a[col][j];
                    a[r][j] -= t;
                    let t = &f * &inv[col][j];
                    inv[r][j] -= t;
                }
            }
        }
        Ok(RatMatrix::from_dense(&inv))
    }
}

/// Solves `a x = rhs` when the solution exists and is unique.
pub fn solve_unique(a: &RatMatrix, rhs: &[Rational]) -> Option<Vec<Rational>> {
    let (m, n) = (a.rows(), a.cols());
    let mut aug: Vec<Vec<Rational>> = a
        .to_dense()
        .into_iter()
        .zip(rhs.iter())
        .map(|(mut row, b)| {
            row.push(b.clone());
            row
        })
        .collect();
    let mut r = 0;
    for col in 0..n {
        let p = (r..m).find(|&i| !aug[i][col].is_zero())?;
        aug.swap(r, p);
        let pivot = aug[r][col].clone();
        for v in aug[r].iter_mut() {
            *v /= &pivot;
        }
        for i in 0..m {
            if i != r && !aug[i][col].is_zero() {
                let f = aug[i][col].clone();
                for j in 0..=n {
                    let t = &f * &aug[r][j];
                    aug[i][j] -= t;
                }
            }
        }
        r += 1;
    }
    if aug[r..].iter().any(|row| !row[n].is_zero()) {
        return None;
    }
    Some((0..n).map(|i| aug[i][n].clone()).collect())
}

fn primitive_integer_row(row: &BTreeMap<usize, Rational>) -> BTreeMap<usize, BigInt> {
    let lcm = row
        .values()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
    let ints = row
        .iter()
        .map(|(&j, v)| (j, (v * Rational::from_integer(lcm.clone())).to_integer()))
        .collect();
    make_primitive(ints)
}

fn make_primitive(mut row: BTreeMap<usize, BigInt>) -> BTreeMap<usize, BigInt> {
    let g = row.values().fold(BigInt::zero(), |acc, v| acc.gcd(v));
    if !g.is_zero() && !g.is_one() {
        for v in row.values_mut() {
            *v /= &g;
        }
    }
    row
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{int, rat};
    use crate::random::FieldRng;
    use rand::Rng;

    /// Plain rational Gaussian elimination on a dense copy.
    fn rank_oracle(m: &RatMatrix) -> usize {
        let mut a = m.to_dense();
        let (rows, cols) = (m.rows(), m.cols());
        let mut r = 0;
        for c in 0..cols {
            let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else { continue };
            a.swap(r, p);
            for i in (r + 1)..rows {
                if a[i][c].is_zero() {
                    continue;
                }
                let f = &a[i][c] / &a[r][c];
                for j in c..cols {
                    let t = &f * &a[r][j];
                    a[i][j] -= t;
                }
            }
            r += 1;
        }
        r
    }

    fn random_matrix(rng: &mut FieldRng, rows: usize, cols: usize, rank: usize) -> RatMatrix {
        // product of rows x rank and rank x cols factors, usually of rank `rank`
        let mut f = |r: usize, c: usize| {
            let mut m = RatMatrix::zeros(r, c);
            for i in 0..r {
                for j in 0..c {
                    if rng.inner().gen_bool(0.4) {
                        m.set(i, j, rng.rational(4, 3));
                    }
                }
            }
            m
        };
        let a = f(rows, rank);
        let b = f(rank, cols);
        a.mul(&b)
    }

    #[test]
    fn zero_matrix_has_rank_zero() {
        assert_eq!(RatMatrix::zeros(4, 7).rank(), 0);
        assert_eq!(RatMatrix::zeros(4, 7).kernel_dim(), 7);
        assert_eq!(RatMatrix::zeros(0, 0).rank(), 0);
    }

    #[test]
    fn rank_matches_dense_oracle() {
        let mut rng = FieldRng::new(123);
        for trial in 0..40 {
            let rows = 3 + trial % 9;
            let cols = 2 + (trial * 7) % 11;
            let r = 1 + trial % 5;
            let m = random_matrix(&mut rng, rows, cols, r);
            assert_eq!(m.rank(), rank_oracle(&m), "trial {trial}");
            assert_eq!(m.transpose().rank(), m.rank());
        }
    }

    #[test]
    fn inverse_round_trip() {
        let m = RatMatrix::from_dense(&[
            vec![int(2), int(1), int(0)],
            vec![rat(1, 3), int(0), int(-1)],
            vec![int(0), int(5), int(1)],
        ]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), RatMatrix::identity(3));
        assert_eq!(inv.mul(&m), RatMatrix::identity(3));
    }

    #[test]
    fn singular_inverse_reports_rank() {
        let m = RatMatrix::from_dense(&[vec![int(1), int(2)], vec![int(2), int(4)]]);
        match m.inverse() {
            Err(Error::NonInvertibleBlock { rank, .. }) => assert_eq!(rank, 1),
            other => panic!("expected NonInvertibleBlock, got {other:?}"),
        }
        let rect = RatMatrix::zeros(2, 3);
        assert!(rect.inverse().is_err());
    }

    #[test]
    fn unique_solve() {
        let a = RatMatrix::from_dense(&[vec![int(1), int(1)], vec![int(1), int(-1)], vec![int(2), int(0)]]);
        assert_eq!(solve_unique(&a, &[int(3), int(1), int(4)]), Some(vec![int(2), int(1)]));
        assert_eq!(solve_unique(&a, &[int(3), int(1), int(5)]), None);
    }

    #[test]
    fn product_and_select() {
        let a = RatMatrix::from_dense(&[vec![int(1), int(2)], vec![int(0), int(3)]]);
        let b = RatMatrix::from_dense(&[vec![int(4)], vec![int(-1)]]);
        assert_eq!(a.mul(&b).to_dense(), vec![vec![int(2)], vec![int(-3)]]);
        assert_eq!(a.select(&[1], &[1, 0]).to_dense(), vec![vec![int(3), int(0)]]);
        assert_eq!(a.mul_vec(&[int(1), int(1)]), vec![int(3), int(3)]);
        assert!(a.sub(&a).is_zero());
        assert_eq!(a.max_abs(), int(3));
    }
}
