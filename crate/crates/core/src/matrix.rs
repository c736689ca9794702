//! Dense rectangular matrices over a [`Scalar`].

use std::fmt;
use std::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::scalar::{Rational, Scalar};

/// Row-major dense matrix. `rows * cols == data.len()` always holds.
#[derive(Clone, PartialEq)]
pub struct RectMatrix<S> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

impl<S: Scalar> RectMatrix<S> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RectMatrix {
            rows,
            cols,
            data: vec![S::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = RectMatrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = S::one();
        }
        m
    }

    pub fn diagonal(values: &[S]) -> Self {
        let mut m = RectMatrix::zeros(values.len(), values.len());
        for (i, v) in values.iter().enumerate() {
            m[(i, i)] = v.clone();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> S) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        RectMatrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<S>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::InvalidArgument("ragged matrix rows".into()));
        }
        Ok(RectMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(rows: usize, columns: &[Vec<S>]) -> Result<Self> {
        if columns.iter().any(|c| c.len() != rows) {
            return Err(Error::InvalidArgument("column length mismatch".into()));
        }
        Ok(RectMatrix::from_fn(rows, columns.len(), |i, j| {
            columns[j][i].clone()
        }))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn data(&self) -> &[S] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[S] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<S> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<S>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Self {
        RectMatrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn matmul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::ShapeMismatch {
                op: "matmul",
                left: self.shape(),
                right: rhs.shape(),
            });
        }
        let mut out = RectMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self.data[i * self.cols + k];
                if a.is_zero() {
                    continue;
                }
                let rrow = rhs.row(k);
                let orow: &mut [S] = &mut out.data[i * rhs.cols..(i + 1) * rhs.cols];
                for (o, b) in orow.iter_mut().zip(rrow) {
                    if !b.is_zero() {
                        *o = o.clone() + a.clone() * b.clone();
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[S]) -> Result<Vec<S>> {
        if self.cols != v.len() {
            return Err(Error::ShapeMismatch {
                op: "mul_vec",
                left: self.shape(),
                right: (v.len(), 1),
            });
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(S::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
            })
            .collect())
    }

    fn zip_with(&self, rhs: &Self, op: &'static str, f: impl Fn(&S, &S) -> S) -> Result<Self> {
        if self.shape() != rhs.shape() {
            return Err(Error::ShapeMismatch {
                op,
                left: self.shape(),
                right: rhs.shape(),
            });
        }
        Ok(RectMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| f(a, b)).collect(),
        })
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        self.zip_with(rhs, "add", |a, b| a.clone() + b.clone())
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        self.zip_with(rhs, "sub", |a, b| a.clone() - b.clone())
    }

    pub fn scale(&self, c: &S) -> Self {
        self.map(|x| x.clone() * c.clone())
    }

    /// `self - c·Id`; requires a square matrix.
    pub fn shift(&self, c: &S) -> Result<Self> {
        self.require_square()?;
        let mut out = self.clone();
        for i in 0..self.rows {
            out[(i, i)] = out[(i, i)].clone() - c.clone();
        }
        Ok(out)
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> RectMatrix<T> {
        RectMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn to_f64(&self) -> RectMatrix<f64> {
        self.map(Scalar::to_f64)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_negligible)
    }

    pub fn approx_eq(&self, other: &Self) -> bool {
        self.shape() == other.shape() && self.data.iter().zip(&other.data).all(|(a, b)| a.approx_eq(b))
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self[(i, j)].is_negligible()))
    }

    pub fn diag(&self) -> Vec<S> {
        (0..self.rows.min(self.cols))
            .map(|i| self[(i, i)].clone())
            .collect()
    }

    pub fn trace(&self) -> S {
        self.diag().into_iter().fold(S::zero(), |a, b| a + b)
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (0..i).all(|j| self[(i, j)].approx_eq(&self[(j, i)])))
    }

    pub fn require_square(&self) -> Result<()> {
        if self.is_square() {
            Ok(())
        } else {
            Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            })
        }
    }

    /// Sum of squared entries.
    pub fn frobenius_sq(&self) -> S {
        self.data
            .iter()
            .fold(S::zero(), |acc, x| acc + x.clone() * x.clone())
    }

    /// Kronecker product `self ⊗ rhs` under the pair-index convention where
    /// the first factor varies fastest: entry
    /// `(i1 + rows1·i2, j1 + cols1·j2)` is `self[i1, j1] · rhs[i2, j2]`.
    pub fn kron(&self, rhs: &Self) -> Self {
        let (r1, c1) = self.shape();
        RectMatrix::from_fn(r1 * rhs.rows, c1 * rhs.cols, |i, j| {
            let (i1, i2) = (i % r1, i / r1);
            let (j1, j2) = (j % c1, j / c1);
            self[(i1, j1)].clone() * rhs[(i2, j2)].clone()
        })
    }
}

impl RectMatrix<f64> {
    pub fn frobenius_norm(&self) -> f64 {
        self.frobenius_sq().sqrt()
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.shape(), other.shape());
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    pub fn max_asymmetry(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..self.rows {
            for j in 0..i {
                worst = worst.max((self[(i, j)] - self[(j, i)]).abs());
            }
        }
        worst
    }
}

impl RectMatrix<Rational> {
    /// Exact rank by fraction-free (Bareiss) elimination.
    ///
    /// Rows are first scaled to integers by their denominators' lcm, which
    /// leaves the row space unchanged.
    pub fn rank_exact(&self) -> usize {
        let mut a: Vec<Vec<BigInt>> = (0..self.rows)
            .map(|i| {
                let row = self.row(i);
                let lcm = row
                    .iter()
                    .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
                row.iter()
                    .map(|x| x.numer() * (&lcm / x.denom()))
                    .collect()
            })
            .collect();
        bareiss_rank(&mut a, self.cols)
    }
}

fn bareiss_rank(a: &mut [Vec<BigInt>], cols: usize) -> usize {
    let rows = a.len();
    let mut rank = 0;
    let mut prev = BigInt::one();
    for col in 0..cols {
        if rank == rows {
            break;
        }
        // smallest nonzero pivot keeps intermediate sizes down
        let pivot = (rank..rows)
            .filter(|&r| !a[r][col].is_zero())
            .min_by_key(|&r| a[r][col].abs());
        let Some(p) = pivot else { continue };
        a.swap(rank, p);
        let (top, bottom) = a.split_at_mut(rank + 1);
        let prow = &top[rank];
        for row in bottom.iter_mut() {
            let factor = row[col].clone();
            for j in col..cols {
                let v = &prow[col] * &row[j] - &factor * &prow[j];
                row[j] = v / &prev;
            }
            // columns left of `col` are already zero below the pivot rows
        }
        prev = prow[col].clone();
        rank += 1;
    }
    rank
}

impl<S> Index<(usize, usize)> for RectMatrix<S> {
    type Output = S;

    fn index(&self, (i, j): (usize, usize)) -> &S {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl<S> IndexMut<(usize, usize)> for RectMatrix<S> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut S {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl<S: Scalar> fmt::Debug for RectMatrix<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RectMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let cells: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        f.write_str("]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::from_ratio(n, d)
    }

    fn qm(rows: &[&[i64]]) -> RectMatrix<Rational> {
        RectMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| q(x, 1)).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn matmul_and_transpose() {
        let a = qm(&[&[1, 2, 3], &[4, 5, 6]]);
        let b = a.transpose();
        assert_eq!(b.shape(), (3, 2));
        let c = a.matmul(&b).unwrap();
        assert_eq!(c, qm(&[&[14, 32], &[32, 77]]));
        assert_eq!(b.transpose(), a);
        assert!(a.matmul(&a).is_err());
    }

    #[test]
    fn rank_of_known_matrices() {
        assert_eq!(qm(&[&[1, 2], &[2, 4]]).rank_exact(), 1);
        assert_eq!(qm(&[&[0, 0], &[0, 0]]).rank_exact(), 0);
        assert_eq!(RectMatrix::<Rational>::identity(5).rank_exact(), 5);
        assert_eq!(qm(&[&[0, 1, 0, 0], &[0, 0, 0, 1], &[0, 1, 0, 1]]).rank_exact(), 2);
        let frac = RectMatrix::from_rows(vec![
            vec![q(1, 2), q(1, 3), q(1, 4)],
            vec![q(1, 3), q(1, 4), q(1, 5)],
            vec![q(1, 4), q(1, 5), q(1, 6)],
        ])
        .unwrap();
        assert_eq!(frac.rank_exact(), 3);
        let dep = RectMatrix::from_rows(vec![
            vec![q(1, 2), q(1, 3), q(5, 6)],
            vec![q(3, 7), q(-2, 9), q(13, 63)],
            vec![q(1, 1), q(2, 3), q(5, 3)],
        ])
        .unwrap();
        assert_eq!(dep.rank_exact(), 2);
    }

    #[test]
    fn kron_pair_order() {
        let a = qm(&[&[1, 2], &[3, 4]]);
        let id = RectMatrix::<Rational>::identity(2);
        // (A ⊗ Id) acts on the fast index
        let k = a.kron(&id);
        assert_eq!(k[(0, 1)], q(2, 1));
        assert_eq!(k[(2, 3)], q(2, 1));
        assert_eq!(k[(0, 2)], q(0, 1));
    }

    #[test]
    fn shift_requires_square() {
        assert!(qm(&[&[1, 2]]).shift(&q(1, 1)).is_err());
        assert_eq!(qm(&[&[3, 1], &[1, 3]]).shift(&q(3, 1)).unwrap(), qm(&[&[0, 1], &[1, 0]]));
    }
}
