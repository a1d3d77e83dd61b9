//! Exact rational matrices: row reduction, rank, nullspace.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Q = BigRational;

pub fn q(v: i64) -> Q {
    Q::from_integer(BigInt::from(v))
}

/// Dense row-major matrix over `Q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Vec<Q>>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![vec![Q::zero(); cols]; rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for k in 0..n {
            m.data[k][k] = Q::one();
        }
        m
    }

    pub fn from_i64(rows: usize, cols: usize, entries: &[Vec<i64>]) -> Self {
        let data: Vec<Vec<Q>> = entries
            .iter()
            .map(|r| r.iter().map(|&v| q(v)).collect())
            .collect();
        assert!(data.len() == rows && data.iter().all(|r| r.len() == cols));
        Matrix { rows, cols, data }
    }

    pub fn get(&self, r: usize, c: usize) -> &Q {
        &self.data[r][c]
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "shape mismatch");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self.data[i][k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other.data[k][j];
                    if !b.is_zero() {
                        out.data[i][j] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.data[j][i] = self.data[i][j].clone();
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().flatten().all(|v| v.is_zero())
    }

    /// Reduced row echelon form in place; returns pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(p) = (row..self.rows).find(|&r| !self.data[r][col].is_zero()) else {
                continue;
            };
            self.data.swap(row, p);
            let inv = self.data[row][col].recip();
            for v in self.data[row].iter_mut() {
                *v *= &inv;
            }
            for r in 0..self.rows {
                if r != row && !self.data[r][col].is_zero() {
                    let factor = self.data[r][col].clone();
                    for c in col..self.cols {
                        let delta = &factor * &self.data[row][c];
                        self.data[r][c] -= delta;
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// Basis of `{x : A x = 0}` as columns of the returned `cols × k` matrix.
    pub fn nullspace(&self) -> Matrix {
        let mut r = self.clone();
        let pivots = r.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut out = Matrix::zeros(self.cols, free.len());
        for (k, &f) in free.iter().enumerate() {
            out.data[f][k] = Q::one();
            for (row, &p) in pivots.iter().enumerate() {
                out.data[p][k] = -r.data[row][f].clone();
            }
        }
        out
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut aug = Matrix::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.data[i][j] = self.data[i][j].clone();
            }
            aug.data[i][n + i] = Q::one();
        }
        let pivots = aug.rref();
        if pivots.len() < n || (n > 0 && pivots[n - 1] != n - 1) {
            return None;
        }
        let mut out = Matrix::zeros(n, n);
        for i in 0..n {
            out.data[i] = aug.data[i][n..].to_vec();
        }
        Some(out)
    }

    pub fn column(&self, c: usize) -> Vec<Q> {
        self.data.iter().map(|r| r[c].clone()).collect()
    }

    pub fn apply(&self, x: &[Q]) -> Vec<Q> {
        assert_eq!(x.len(), self.cols);
        self.data
            .iter()
            .map(|r| r.iter().zip(x).map(|(a, b)| a * b).sum())
            .collect()
    }
}

/// Rank of an integer matrix by fraction-free (Bareiss) elimination.
pub fn rank_i64(rows: usize, cols: usize, entries: &[Vec<i64>]) -> usize {
    assert!(entries.len() == rows && entries.iter().all(|r| r.len() == cols));
    let mut a: Vec<Vec<BigInt>> = entries
        .iter()
        .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
        .collect();
    let mut prev = BigInt::one();
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        for r in rank + 1..rows {
            for c in col + 1..cols {
                let v = (&a[rank][col] * &a[r][c] - &a[r][col] * &a[rank][c]) / &prev;
                a[r][c] = v;
            }
            a[r][col] = BigInt::zero();
        }
        prev = a[rank][col].clone();
        rank += 1;
    }
    rank
}

/// Smallest positive integer multiple of `v` (clears denominators, divides
/// out the content). Zero stays zero.
pub fn primitive_integer(v: &[Q]) -> Vec<BigInt> {
    use num_integer::Integer;
    let lcm = v
        .iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * Q::from_integer(lcm.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return ints;
    }
    let g = g.abs();
    ints.into_iter().map(|x| x / &g).collect()
}
