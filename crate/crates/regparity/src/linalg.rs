//! Exact dense linear algebra over the rationals and the integers.
//!
//! Everything is exact. Rational matrices use `BigRational` entries; integer
//! matrices use `BigInt` and fraction-free elimination (Bareiss) for
//! determinants, plus Hermite normal forms for integer kernels.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rat = BigRational;

#[must_use]
pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

#[must_use]
pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Dense matrix with exact rational entries, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

impl fmt::Debug for QMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "QMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self[(r, c)].to_string()).collect();
            writeln!(f, "  {}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

impl Index<(usize, usize)> for QMatrix {
    type Output = Rat;
    fn index(&self, (r, c): (usize, usize)) -> &Rat {
        debug_assert!(r < self.rows && c < self.cols);
        &self.data[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for QMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Rat {
        debug_assert!(r < self.rows && c < self.cols);
        &mut self.data[r * self.cols + c]
    }
}

impl QMatrix {
    #[must_use]
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![Rat::zero(); rows * cols] }
    }

    #[must_use]
    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rat::one();
        }
        m
    }

    #[must_use]
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rat) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Self { rows, cols, data }
    }

    /// Builds a matrix from integer rows. Panics on ragged input.
    #[must_use]
    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        Self::from_fn(rows.len(), cols, |r, c| rat(rows[r][c]))
    }

    /// Builds a matrix whose columns are the given vectors.
    #[must_use]
    pub fn from_columns(rows: usize, columns: &[Vec<Rat>]) -> Self {
        assert!(columns.iter().all(|c| c.len() == rows), "column length mismatch");
        Self::from_fn(rows, columns.len(), |r, c| columns[c][r].clone())
    }

    #[must_use]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[must_use]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[must_use]
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[must_use]
    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    #[must_use]
    pub fn column(&self, c: usize) -> Vec<Rat> {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    #[must_use]
    pub fn row(&self, r: usize) -> Vec<Rat> {
        self.data[r * self.cols..(r + 1) * self.cols].to_vec()
    }

    #[must_use]
    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self[(c, r)].clone())
    }

    #[must_use]
    pub fn scale(&self, s: &Rat) -> Self {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * s).collect() }
    }

    /// Columns selected by index, in the given order.
    #[must_use]
    pub fn select_columns(&self, idx: &[usize]) -> Self {
        Self::from_fn(self.rows, idx.len(), |r, c| self[(r, idx[c])].clone())
    }

    /// Horizontal concatenation `[self | other]`.
    #[must_use]
    pub fn hcat(&self, other: &Self) -> Self {
        assert_eq!(self.rows, other.rows, "hcat row mismatch");
        Self::from_fn(self.rows, self.cols + other.cols, |r, c| {
            if c < self.cols {
                self[(r, c)].clone()
            } else {
                other[(r, c - self.cols)].clone()
            }
        })
    }

    /// Vertical concatenation.
    #[must_use]
    pub fn vcat(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols, "vcat column mismatch");
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Self { rows: self.rows + other.rows, cols: self.cols, data }
    }

    /// Block diagonal sum.
    #[must_use]
    pub fn direct_sum(&self, other: &Self) -> Self {
        let mut m = Self::zeros(self.rows + other.rows, self.cols + other.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                m[(r, c)] = self[(r, c)].clone();
            }
        }
        for r in 0..other.rows {
            for c in 0..other.cols {
                m[(self.rows + r, self.cols + c)] = other[(r, c)].clone();
            }
        }
        m
    }

    #[must_use]
    pub fn trace(&self) -> Rat {
        assert!(self.is_square(), "trace of non-square matrix");
        (0..self.rows).map(|i| self[(i, i)].clone()).sum()
    }

    #[must_use]
    pub fn mul_vec(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(v.len(), self.cols, "dimension mismatch");
        (0..self.rows)
            .map(|r| {
                let mut acc = Rat::zero();
                for (c, x) in v.iter().enumerate() {
                    let a = &self[(r, c)];
                    if !a.is_zero() && !x.is_zero() {
                        acc += a * x;
                    }
                }
                acc
            })
            .collect()
    }

    /// Reduced row echelon form together with the pivot columns.
    #[must_use]
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&r| !m[(r, col)].is_zero()) else {
                continue;
            };
            m.swap_rows(row, p);
            let inv = m[(row, col)].recip();
            for c in col..m.cols {
                let v = &m[(row, c)] * &inv;
                m[(row, c)] = v;
            }
            for r in 0..m.rows {
                if r != row && !m[(r, col)].is_zero() {
                    let f = m[(r, col)].clone();
                    for c in col..m.cols {
                        if !m[(row, c)].is_zero() {
                            let v = &m[(r, c)] - &f * &m[(row, c)];
                            m[(r, c)] = v;
                        }
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    #[must_use]
    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right kernel, as the columns of the returned matrix.
    #[must_use]
    pub fn nullspace(&self) -> Self {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut out = Self::zeros(self.cols, free.len());
        for (k, &fc) in free.iter().enumerate() {
            out[(fc, k)] = Rat::one();
            for (i, &pc) in pivots.iter().enumerate() {
                out[(pc, k)] = -r[(i, fc)].clone();
            }
        }
        out
    }

    /// Reduced column echelon form of the column space: a canonical basis
    /// whose first nonzero entry in each column is 1.
    #[must_use]
    pub fn column_echelon(&self) -> Self {
        let (r, pivots) = self.transpose().rref();
        let k = pivots.len();
        Self::from_fn(self.rows, k, |row, col| r[(col, row)].clone())
    }

    #[must_use]
    pub fn det(&self) -> Rat {
        assert!(self.is_square(), "determinant of non-square matrix");
        let n = self.rows;
        let mut m = self.clone();
        let mut det = Rat::one();
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !m[(r, col)].is_zero()) else {
                return Rat::zero();
            };
            if p != col {
                m.swap_rows(p, col);
                det = -det;
            }
            let piv = m[(col, col)].clone();
            det *= &piv;
            let inv = piv.recip();
            for r in col + 1..n {
                if m[(r, col)].is_zero() {
                    continue;
                }
                let f = &m[(r, col)] * &inv;
                for c in col..n {
                    if !m[(col, c)].is_zero() {
                        let v = &m[(r, c)] - &f * &m[(col, c)];
                        m[(r, c)] = v;
                    }
                }
            }
        }
        det
    }

    #[must_use]
    pub fn inverse(&self) -> Option<Self> {
        assert!(self.is_square(), "inverse of non-square matrix");
        let n = self.rows;
        let (r, pivots) = self.hcat(&Self::identity(n)).rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        Some(Self::from_fn(n, n, |i, j| r[(i, n + j)].clone()))
    }

    /// Solves `self * X = rhs` when `self` has full column rank and the
    /// columns of `rhs` lie in its column space.
    #[must_use]
    pub fn solve_in_span(&self, rhs: &Self) -> Option<Self> {
        assert_eq!(self.rows, rhs.rows, "row mismatch");
        let k = self.cols;
        let (r, pivots) = self.hcat(rhs).rref();
        if pivots.len() < k || pivots[..k].iter().enumerate().any(|(i, &p)| i != p) {
            return None;
        }
        if pivots.len() > k {
            return None;
        }
        Some(Self::from_fn(k, rhs.cols, |i, j| r[(i, k + j)].clone()))
    }

    /// Characteristic polynomial `det(xI - A)`, coefficients low to high.
    #[must_use]
    pub fn charpoly(&self) -> Vec<Rat> {
        assert!(self.is_square(), "charpoly of non-square matrix");
        let n = self.rows;
        let h = self.hessenberg();
        // p[k] is the charpoly of the leading k x k block.
        let mut p: Vec<Vec<Rat>> = vec![vec![Rat::one()]];
        for k in 1..=n {
            let kk = k - 1;
            // (x - h[kk][kk]) * p[k-1]
            let prev = &p[k - 1];
            let mut next = vec![Rat::zero(); k + 1];
            for (i, c) in prev.iter().enumerate() {
                next[i + 1] += c;
                next[i] -= &h[(kk, kk)] * c;
            }
            let mut prod = Rat::one();
            for i in (0..kk).rev() {
                prod *= &h[(i + 1, i)];
                if prod.is_zero() {
                    break;
                }
                let coef = &h[(i, kk)] * &prod;
                if coef.is_zero() {
                    continue;
                }
                for (j, c) in p[i].iter().enumerate() {
                    next[j] -= &coef * c;
                }
            }
            p.push(next);
        }
        p.pop().expect("nonempty")
    }

    /// Upper Hessenberg form by elementary similarity transforms.
    fn hessenberg(&self) -> Self {
        let n = self.rows;
        let mut h = self.clone();
        for m in 1..n.saturating_sub(1) {
            let Some(i) = (m..n).find(|&i| !h[(i, m - 1)].is_zero()) else {
                continue;
            };
            if i != m {
                h.swap_rows(i, m);
                for r in 0..n {
                    h.data.swap(r * n + i, r * n + m);
                }
            }
            let inv = h[(m, m - 1)].recip();
            for i in m + 1..n {
                if h[(i, m - 1)].is_zero() {
                    continue;
                }
                let u = &h[(i, m - 1)] * &inv;
                for c in 0..n {
                    if !h[(m, c)].is_zero() {
                        let v = &h[(i, c)] - &u * &h[(m, c)];
                        h[(i, c)] = v;
                    }
                }
                for r in 0..n {
                    if !h[(r, i)].is_zero() {
                        let v = &h[(r, m)] + &u * &h[(r, i)];
                        h[(r, m)] = v;
                    }
                }
            }
        }
        h
    }

    /// Evaluates a polynomial (coefficients low to high) at this matrix.
    #[must_use]
    pub fn eval_poly(&self, coeffs: &[Rat]) -> Self {
        assert!(self.is_square(), "polynomial of non-square matrix");
        let n = self.rows;
        let mut acc = Self::zeros(n, n);
        for c in coeffs.iter().rev() {
            acc = &acc * self;
            for i in 0..n {
                acc[(i, i)] += c;
            }
        }
        acc
    }

    /// Integer matrix with the same entries, if all entries are integral.
    #[must_use]
    pub fn to_integer(&self) -> Option<ZMatrix> {
        if self.data.iter().any(|x| !x.is_integer()) {
            return None;
        }
        Some(ZMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x.to_integer()).collect(),
        })
    }

    #[must_use]
    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|r| (0..r).all(|c| self[(r, c)] == self[(c, r)]))
    }

    /// Positive definiteness via leading principal minors.
    #[must_use]
    pub fn is_positive_definite(&self) -> bool {
        if !self.is_symmetric() {
            return false;
        }
        (1..=self.rows).all(|k| {
            let minor = Self::from_fn(k, k, |r, c| self[(r, c)].clone());
            minor.det().is_positive()
        })
    }
}

impl Mul for &QMatrix {
    type Output = QMatrix;
    fn mul(self, rhs: &QMatrix) -> QMatrix {
        assert_eq!(self.cols, rhs.rows, "matrix product dimension mismatch");
        let mut out = QMatrix::zeros(self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(r, k)];
                if a.is_zero() {
                    continue;
                }
                for c in 0..rhs.cols {
                    let b = &rhs[(k, c)];
                    if !b.is_zero() {
                        out.data[r * rhs.cols + c] += a * b;
                    }
                }
            }
        }
        out
    }
}

impl Add for &QMatrix {
    type Output = QMatrix;
    fn add(self, rhs: &QMatrix) -> QMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "shape mismatch");
        QMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &QMatrix {
    type Output = QMatrix;
    fn sub(self, rhs: &QMatrix) -> QMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "shape mismatch");
        QMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &QMatrix {
    type Output = QMatrix;
    fn neg(self) -> QMatrix {
        QMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| -a).collect() }
    }
}

/// Dense matrix with exact integer entries, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ZMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl fmt::Debug for ZMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ZMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self[(r, c)].to_string()).collect();
            writeln!(f, "  {}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

impl Index<(usize, usize)> for ZMatrix {
    type Output = BigInt;
    fn index(&self, (r, c): (usize, usize)) -> &BigInt {
        debug_assert!(r < self.rows && c < self.cols);
        &self.data[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for ZMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut BigInt {
        debug_assert!(r < self.rows && c < self.cols);
        &mut self.data[r * self.cols + c]
    }
}

impl ZMatrix {
    #[must_use]
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    #[must_use]
    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    #[must_use]
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> BigInt) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Self { rows, cols, data }
    }

    #[must_use]
    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        Self::from_fn(rows.len(), cols, |r, c| BigInt::from(rows[r][c]))
    }

    #[must_use]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[must_use]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[must_use]
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[must_use]
    pub fn row(&self, r: usize) -> Vec<BigInt> {
        self.data[r * self.cols..(r + 1) * self.cols].to_vec()
    }

    #[must_use]
    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self[(c, r)].clone())
    }

    #[must_use]
    pub fn to_rational(&self) -> QMatrix {
        QMatrix::from_fn(self.rows, self.cols, |r, c| Rat::from_integer(self[(r, c)].clone()))
    }

    #[must_use]
    pub fn scale(&self, s: &BigInt) -> Self {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * s).collect() }
    }

    #[must_use]
    pub fn direct_sum(&self, other: &Self) -> Self {
        let mut m = Self::zeros(self.rows + other.rows, self.cols + other.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                m[(r, c)] = self[(r, c)].clone();
            }
        }
        for r in 0..other.rows {
            for c in 0..other.cols {
                m[(self.rows + r, self.cols + c)] = other[(r, c)].clone();
            }
        }
        m
    }

    /// Rows and columns permuted: entry `(i, j)` of the result is
    /// `self[(row_perm[i], col_perm[j])]`.
    #[must_use]
    pub fn permuted(&self, row_perm: &[usize], col_perm: &[usize]) -> Self {
        Self::from_fn(row_perm.len(), col_perm.len(), |r, c| self[(row_perm[r], col_perm[c])].clone())
    }

    /// Sub-block with the given row and column ranges.
    #[must_use]
    pub fn block(&self, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> Self {
        let (r0, c0) = (rows.start, cols.start);
        Self::from_fn(rows.len(), cols.len(), |r, c| self[(r0 + r, c0 + c)].clone())
    }

    #[must_use]
    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    #[must_use]
    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|r| (0..r).all(|c| self[(r, c)] == self[(c, r)]))
    }

    /// Determinant by Bareiss fraction-free elimination.
    #[must_use]
    pub fn det(&self) -> BigInt {
        assert!(self.is_square(), "determinant of non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut m = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if m[(k, k)].is_zero() {
                let Some(p) = (k + 1..n).find(|&r| !m[(r, k)].is_zero()) else {
                    return BigInt::zero();
                };
                for c in 0..n {
                    m.data.swap(k * n + c, p * n + c);
                }
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (&m[(i, j)] * &m[(k, k)] - &m[(i, k)] * &m[(k, j)]) / &prev;
                    m[(i, j)] = v;
                }
            }
            prev = m[(k, k)].clone();
        }
        sign * &m[(n - 1, n - 1)]
    }

    /// Row-style Hermite normal form; zero rows are dropped.
    ///
    /// Pivots are positive, entries above a pivot lie in `[0, pivot)`.
    #[must_use]
    pub fn hermite(&self) -> Self {
        let mut m = self.clone();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            // Euclid down the column until a single nonzero entry remains.
            loop {
                let nonzero: Vec<usize> = (row..m.rows).filter(|&r| !m[(r, col)].is_zero()).collect();
                if nonzero.is_empty() {
                    break;
                }
                let best = *nonzero
                    .iter()
                    .min_by(|&&a, &&b| m[(a, col)].abs().cmp(&m[(b, col)].abs()))
                    .expect("nonempty");
                m.swap_rows(row, best);
                let mut done = true;
                for r in row + 1..m.rows {
                    if m[(r, col)].is_zero() {
                        continue;
                    }
                    let q = m[(r, col)].div_floor(&m[(row, col)]);
                    m.add_row_multiple(r, row, &-q);
                    if !m[(r, col)].is_zero() {
                        done = false;
                    }
                }
                if done {
                    break;
                }
            }
            if m[(row, col)].is_zero() {
                continue;
            }
            if m[(row, col)].is_negative() {
                for c in 0..m.cols {
                    let v = -&m[(row, c)];
                    m[(row, c)] = v;
                }
            }
            for r in 0..row {
                let q = m[(r, col)].div_floor(&m[(row, col)]);
                if !q.is_zero() {
                    m.add_row_multiple(r, row, &-q);
                }
            }
            row += 1;
        }
        Self::from_fn(row, m.cols, |r, c| m[(r, c)].clone())
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    fn add_row_multiple(&mut self, target: usize, source: usize, factor: &BigInt) {
        for c in 0..self.cols {
            if !self[(source, c)].is_zero() {
                let v = &self[(target, c)] + factor * &self[(source, c)];
                self[(target, c)] = v;
            }
        }
    }

    /// Saturated basis of `{x in Z^cols : self * x = 0}` as the rows of the
    /// result, in Hermite normal form.
    #[must_use]
    pub fn integer_kernel(&self) -> Self {
        // Row-reduce [A^T | I]; rows whose A^T part vanishes span the kernel.
        let n = self.cols;
        let m = self.rows;
        let aug = Self::from_fn(n, m + n, |r, c| {
            if c < m {
                self[(c, r)].clone()
            } else if c - m == r {
                BigInt::one()
            } else {
                BigInt::zero()
            }
        });
        let h = aug.hermite();
        let kernel_rows: Vec<usize> =
            (0..h.rows).filter(|&r| (0..m).all(|c| h[(r, c)].is_zero())).collect();
        let basis = Self::from_fn(kernel_rows.len(), n, |r, c| h[(kernel_rows[r], m + c)].clone());
        basis.hermite()
    }
}

impl Mul for &ZMatrix {
    type Output = ZMatrix;
    fn mul(self, rhs: &ZMatrix) -> ZMatrix {
        assert_eq!(self.cols, rhs.rows, "matrix product dimension mismatch");
        let mut out = ZMatrix::zeros(self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(r, k)];
                if a.is_zero() {
                    continue;
                }
                for c in 0..rhs.cols {
                    let b = &rhs[(k, c)];
                    if !b.is_zero() {
                        out.data[r * rhs.cols + c] += a * b;
                    }
                }
            }
        }
        out
    }
}

impl Add for &ZMatrix {
    type Output = ZMatrix;
    fn add(self, rhs: &ZMatrix) -> ZMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "shape mismatch");
        ZMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &ZMatrix {
    type Output = ZMatrix;
    fn sub(self, rhs: &ZMatrix) -> ZMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "shape mismatch");
        ZMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(rows: &[Vec<i64>]) -> QMatrix {
        QMatrix::from_i64_rows(rows)
    }

    #[test]
    fn determinant_agrees_between_fields() {
        let rows = vec![vec![2, -1, 0, 3], vec![1, 4, 2, -2], vec![0, 5, 1, 1], vec![7, 0, -3, 2]];
        let qd = q(&rows).det();
        let zd = ZMatrix::from_i64_rows(&rows).det();
        assert_eq!(qd, Rat::from_integer(zd.clone()));
        assert_eq!(zd, BigInt::from(264));
    }

    #[test]
    fn nullspace_is_annihilated() {
        let a = q(&[vec![1, 2, 3, 4], vec![2, 4, 6, 8], vec![1, 0, 1, 0]]);
        let n = a.nullspace();
        assert_eq!(n.cols(), 2);
        assert!((&a * &n).is_zero());
    }

    #[test]
    fn charpoly_of_companion() {
        // Companion matrix of x^3 - 2x^2 + 3x - 5.
        let a = q(&[vec![0, 0, 5], vec![1, 0, -3], vec![0, 1, 2]]);
        assert_eq!(a.charpoly(), vec![rat(-5), rat(3), rat(-2), rat(1)]);
        // Cayley-Hamilton on a dense matrix.
        let b = q(&[vec![1, 2, 0, -1], vec![3, 0, 1, 1], vec![0, 2, 2, 0], vec![1, 1, 1, 1]]);
        assert!(b.eval_poly(&b.charpoly()).is_zero());
    }

    #[test]
    fn inverse_and_solve() {
        let a = q(&[vec![2, 1], vec![1, 1]]);
        let inv = a.inverse().expect("invertible");
        assert_eq!(&a * &inv, QMatrix::identity(2));
        let w = q(&[vec![1, 0], vec![1, 1], vec![0, 1]]);
        let y = q(&[vec![2], vec![5], vec![3]]);
        let x = w.solve_in_span(&y).expect("in span");
        assert_eq!(x, q(&[vec![2], vec![3]]));
        assert!(w.solve_in_span(&q(&[vec![1], vec![0], vec![1]])).is_none());
    }

    #[test]
    fn hermite_and_integer_kernel() {
        let a = ZMatrix::from_i64_rows(&[vec![2, 4, 6], vec![1, 3, 5]]);
        let k = a.integer_kernel();
        assert_eq!(k, ZMatrix::from_i64_rows(&[vec![1, -2, 1]]));
        let h = ZMatrix::from_i64_rows(&[vec![4, 6], vec![6, 9], vec![2, 3]]).hermite();
        assert_eq!(h, ZMatrix::from_i64_rows(&[vec![2, 3]]));
        // Saturation: 2x + 4y = 0 has kernel generated by (2, -1), not (4, -2).
        let s = ZMatrix::from_i64_rows(&[vec![2, 4]]).integer_kernel();
        assert_eq!(s, ZMatrix::from_i64_rows(&[vec![2, -1]]));
    }

    #[test]
    fn column_echelon_is_canonical() {
        let a = q(&[vec![2, 4], vec![1, 3], vec![0, 2]]);
        let b = q(&[vec![6, 2], vec![4, 2], vec![2, 2]]);
        assert_eq!(a.column_echelon(), b.column_echelon());
        let e = a.column_echelon();
        assert_eq!(e[(0, 0)], rat(1));
        assert_eq!(e[(0, 1)], rat(0));
    }

    #[test]
    fn positive_definite() {
        assert!(q(&[vec![2, -1], vec![-1, 2]]).is_positive_definite());
        assert!(!q(&[vec![1, 2], vec![2, 1]]).is_positive_definite());
    }
}
