//! Exact linear algebra over ℚ.
//!
//! Vectors are rows unless stated otherwise. Echelon forms pick the first
//! nonzero entry as pivot, so every result depends only on the input order.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::Mul;

use num_traits::{One, Zero};

use crate::Rational;

pub type QVector = Vec<Rational>;

pub fn zero_vector(n: usize) -> QVector {
    vec![Rational::zero(); n]
}

pub fn unit_vector(n: usize, k: usize) -> QVector {
    let mut v = zero_vector(n);
    v[k] = Rational::one();
    v
}

pub fn is_zero_vector(v: &[Rational]) -> bool {
    v.iter().all(Zero::is_zero)
}

pub fn dot(u: &[Rational], v: &[Rational]) -> Rational {
    u.iter().zip(v).fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}

pub fn axpy(y: &mut [Rational], a: &Rational, x: &[Rational]) {
    if a.is_zero() {
        return;
    }
    for (yi, xi) in y.iter_mut().zip(x) {
        if !xi.is_zero() {
            *yi += a * xi;
        }
    }
}

pub fn scale(v: &[Rational], a: &Rational) -> QVector {
    v.iter().map(|x| x * a).collect()
}

/// Dense matrix over ℚ.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMatrix { rows, cols, data: zero_vector(rows * cols) }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = QMatrix::zeros(n, n);
        for k in 0..n {
            m.data[k * n + k] = Rational::one();
        }
        m
    }

    pub fn from_rows(rows: &[QVector]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged matrix");
            data.extend_from_slice(r);
        }
        QMatrix { rows: rows.len(), cols, data }
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(rows: usize, columns: &[QVector]) -> Self {
        let mut m = QMatrix::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            for (i, x) in c.iter().take(rows).enumerate() {
                m.set(i, j, x.clone());
            }
        }
        m
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let r: Vec<QVector> = rows.iter().map(|row| row.iter().map(|&x| Rational::from_integer(x.into())).collect()).collect();
        QMatrix::from_rows(&r)
    }

    pub fn num_rows(&self) -> usize {
        self.rows
    }

    pub fn num_cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: Rational) {
        self.data[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> QVector {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn rows_vec(&self) -> Vec<QVector> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn entries(&self) -> &[Rational] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        is_zero_vector(&self.data)
    }

    pub fn transpose(&self) -> QMatrix {
        let mut t = QMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    /// Row vector times matrix.
    pub fn left_apply(&self, v: &[Rational]) -> QVector {
        assert_eq!(v.len(), self.rows);
        let mut out = zero_vector(self.cols);
        for (i, vi) in v.iter().enumerate() {
            axpy(&mut out, vi, self.row(i));
        }
        out
    }

    /// Matrix times column vector.
    pub fn right_apply(&self, v: &[Rational]) -> QVector {
        assert_eq!(v.len(), self.cols);
        (0..self.rows).map(|i| dot(self.row(i), v)).collect()
    }

    pub fn rank(&self) -> usize {
        rref(self).1.len()
    }

    /// Basis of `{x : x·self = 0}`.
    pub fn left_kernel(&self) -> Vec<QVector> {
        self.transpose().right_kernel()
    }

    /// Basis of `{x : self·x = 0}`, one vector per free column.
    pub fn right_kernel(&self) -> Vec<QVector> {
        let (r, pivots) = rref(self);
        let mut out = Vec::new();
        for free in 0..self.cols {
            if pivots.contains(&free) {
                continue;
            }
            let mut x = zero_vector(self.cols);
            x[free] = Rational::one();
            for (k, &p) in pivots.iter().enumerate() {
                x[p] = -r.get(k, free).clone();
            }
            out.push(x);
        }
        out
    }

    /// Some `x` with `x·self = b`, if one exists.
    pub fn solve_left(&self, b: &[Rational]) -> Option<QVector> {
        let mut basis = SpanBasis::new(self.cols);
        for i in 0..self.rows {
            basis.push(self.row(i).to_vec());
        }
        basis.coordinates(b)
    }

    /// Inverse of a square matrix, if invertible.
    pub fn inverse(&self) -> Option<QMatrix> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut aug = QMatrix::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, Rational::one());
        }
        let (r, pivots) = rref(&aug);
        if pivots.len() < n || pivots[n - 1] >= n {
            return None;
        }
        let mut inv = QMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, r.get(i, n + j).clone());
            }
        }
        Some(inv)
    }

    pub fn trace(&self) -> Rational {
        (0..self.rows.min(self.cols)).fold(Rational::zero(), |acc, k| acc + self.get(k, k))
    }

    pub fn scaled(&self, a: &Rational) -> QMatrix {
        QMatrix { rows: self.rows, cols: self.cols, data: scale(&self.data, a) }
    }

    pub fn add(&self, other: &QMatrix) -> QMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        QMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&other.data).map(|(x, y)| x + y).collect() }
    }

    pub fn sub(&self, other: &QMatrix) -> QMatrix {
        self.add(&other.scaled(&-Rational::one()))
    }
}

impl Mul for &QMatrix {
    type Output = QMatrix;
    fn mul(self, rhs: &QMatrix) -> QMatrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch");
        let mut out = QMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            let mut acc = zero_vector(rhs.cols);
            for k in 0..self.cols {
                axpy(&mut acc, self.get(i, k), rhs.row(k));
            }
            out.data[i * rhs.cols..(i + 1) * rhs.cols].clone_from_slice(&acc);
        }
        out
    }
}

impl fmt::Debug for QMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[")?;
        for i in 0..self.rows {
            write!(f, " ")?;
            for x in self.row(i) {
                write!(f, " {x}")?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

/// Reduced row echelon form and the pivot column of each nonzero row.
pub fn rref(m: &QMatrix) -> (QMatrix, Vec<usize>) {
    let mut a = m.clone();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..a.cols {
        if r == a.rows {
            break;
        }
        let Some(p) = (r..a.rows).find(|&i| !a.get(i, c).is_zero()) else { continue };
        if p != r {
            for j in 0..a.cols {
                a.data.swap(p * a.cols + j, r * a.cols + j);
            }
        }
        let inv = a.get(r, c).recip();
        for j in c..a.cols {
            let x = a.get(r, j) * &inv;
            a.set(r, j, x);
        }
        let pivot_row = a.row(r).to_vec();
        for i in 0..a.rows {
            if i != r && !a.get(i, c).is_zero() {
                let f = -a.get(i, c).clone();
                let start = i * a.cols;
                axpy(&mut a.data[start..start + a.cols], &f, &pivot_row);
            }
        }
        pivots.push(c);
        r += 1;
    }
    (a, pivots)
}

/// Incremental basis of a subspace of ℚⁿ, spanned by the pushed vectors
/// that were independent of their predecessors.
#[derive(Clone, Debug)]
pub struct SpanBasis {
    dim: usize,
    vectors: Vec<QVector>,
    echelon: Vec<(usize, QVector, QVector)>,
}

impl SpanBasis {
    pub fn new(dim: usize) -> Self {
        SpanBasis { dim, vectors: Vec::new(), echelon: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    /// The independent vectors in insertion order.
    pub fn vectors(&self) -> &[QVector] {
        &self.vectors
    }

    fn reduce(&self, v: &[Rational]) -> (QVector, QVector) {
        let mut residual = v.to_vec();
        let mut combo = zero_vector(self.vectors.len());
        for (p, row, c) in &self.echelon {
            let f = residual[*p].clone();
            if !f.is_zero() {
                axpy(&mut residual, &-f.clone(), row);
                axpy(&mut combo, &f, c);
            }
        }
        (residual, combo)
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        is_zero_vector(&self.reduce(v).0)
    }

    /// Coefficients expressing `v` in the basis, if `v` is in the span.
    pub fn coordinates(&self, v: &[Rational]) -> Option<QVector> {
        let (res, combo) = self.reduce(v);
        is_zero_vector(&res).then_some(combo)
    }

    /// Add `v` if independent; returns its basis index.
    pub fn push(&mut self, v: QVector) -> Option<usize> {
        assert_eq!(v.len(), self.dim);
        let (res, combo) = self.reduce(&v);
        let p = res.iter().position(|x| !x.is_zero())?;
        let inv = res[p].recip();
        let row = scale(&res, &inv);
        let m = self.vectors.len();
        let mut c: QVector = combo.iter().map(|x| -x * &inv).collect();
        for (_, _, old) in &mut self.echelon {
            old.push(Rational::zero());
        }
        c.push(inv);
        self.echelon.push((p, row, c));
        self.vectors.push(v);
        Some(m)
    }
}

/// Rank of an integer matrix by fraction-free elimination, falling back
/// to rational arithmetic if an intermediate value overflows.
pub fn integer_rank(rows: &[Vec<i64>]) -> usize {
    if let Some(r) = bareiss_rank(rows) {
        return r;
    }
    let q: Vec<QVector> = rows.iter().map(|r| r.iter().map(|&x| Rational::from_integer(x.into())).collect()).collect();
    QMatrix::from_rows(&q).rank()
}

fn bareiss_rank(rows: &[Vec<i64>]) -> Option<usize> {
    let n = rows.len();
    if n == 0 {
        return Some(0);
    }
    let m = rows[0].len();
    let mut a: Vec<Vec<i128>> = rows.iter().map(|r| r.iter().map(|&x| i128::from(x)).collect()).collect();
    let mut prev: i128 = 1;
    let mut r = 0;
    for c in 0..m {
        if r == n {
            break;
        }
        let Some(p) = (r..n).find(|&i| a[i][c] != 0) else { continue };
        a.swap(p, r);
        for i in r + 1..n {
            for j in c + 1..m {
                let v = a[i][j].checked_mul(a[r][c])?.checked_sub(a[i][c].checked_mul(a[r][j])?)?;
                a[i][j] = v / prev;
            }
            a[i][c] = 0;
        }
        prev = a[r][c];
        r += 1;
    }
    Some(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(x: i64) -> Rational {
        Rational::from_integer(x.into())
    }

    #[test]
    fn rank_and_kernel() {
        let m = QMatrix::from_i64(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(m.rank(), 2);
        let k = m.right_kernel();
        assert_eq!(k.len(), 1);
        assert!(is_zero_vector(&m.right_apply(&k[0])));
        let lk = m.left_kernel();
        assert_eq!(lk.len(), 1);
        assert!(is_zero_vector(&m.left_apply(&lk[0])));
    }

    #[test]
    fn span_basis_coordinates() {
        let mut b = SpanBasis::new(3);
        assert_eq!(b.push(vec![q(1), q(1), q(0)]), Some(0));
        assert_eq!(b.push(vec![q(0), q(1), q(1)]), Some(1));
        assert_eq!(b.push(vec![q(1), q(2), q(1)]), None);
        let c = b.coordinates(&[q(2), q(3), q(1)]).unwrap();
        assert_eq!(c, vec![q(2), q(1)]);
        assert!(b.coordinates(&[q(0), q(0), q(1)]).is_none());
    }

    #[test]
    fn inverse_round_trip() {
        let m = QMatrix::from_i64(&[&[2, 1], &[1, 1]]);
        let inv = m.inverse().unwrap();
        assert_eq!(&m * &inv, QMatrix::identity(2));
        assert!(QMatrix::from_i64(&[&[1, 2], &[2, 4]]).inverse().is_none());
    }

    #[test]
    fn integer_rank_matches_rational_rank() {
        let rows = vec![vec![0, 1, 0], vec![1, 0, 0], vec![1, 1, 0]];
        assert_eq!(integer_rank(&rows), 2);
    }
}
