//! Exact rational scalars and dense matrices.
//!
//! Vectors are rows: a vector `x` is mapped by `m` to `x·m`.

pub mod modular;
pub mod poly;
mod yale;

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

pub use yale::YaleTriplet;

/// Exact fraction in lowest terms with positive denominator.
pub type Rational = BigRational;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum LinalgError {
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("matrix is not square ({0}x{1})")]
    NotSquare(usize, usize),
    #[error("linear system has no solution")]
    NoSolution,
    #[error("matrix is singular")]
    Singular,
    #[error("cannot parse rational {0:?}")]
    Parse(String),
    #[error("index ({0},{1}) outside a {2}x{3} matrix")]
    IndexOutOfRange(usize, usize, usize, usize),
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn parse_rational(s: &str) -> Result<Rational, LinalgError> {
    let t = s.trim();
    let bad = || LinalgError::Parse(s.to_string());
    match t.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(p, q))
        }
        None => {
            let p: BigInt = t.parse().map_err(|_| bad())?;
            Ok(Rational::from_integer(p))
        }
    }
}

/// "p/q" text, or "p" when the denominator is one.
pub fn fmt_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl fmt::Debug for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RatMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(fmt_rational).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl fmt::Display for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(fmt_rational).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

impl Index<(usize, usize)> for RatMatrix {
    type Output = Rational;
    fn index(&self, (r, c): (usize, usize)) -> &Rational {
        debug_assert!(r < self.rows && c < self.cols);
        &self.data[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for RatMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Rational {
        debug_assert!(r < self.rows && c < self.cols);
        &mut self.data[r * self.cols + c]
    }
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix { rows, cols, data: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    pub fn scalar(n: usize, s: &Rational) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = s.clone();
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<Rational>) -> Result<Self, LinalgError> {
        if data.len() != rows * cols {
            return Err(LinalgError::Shape(format!(
                "{} entries for a {}x{} matrix",
                data.len(),
                rows,
                cols
            )));
        }
        Ok(RatMatrix { rows, cols, data })
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self, LinalgError> {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        if rows.iter().any(|x| x.len() != c) {
            return Err(LinalgError::Shape("ragged rows".into()));
        }
        Ok(RatMatrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    /// Integer entries, row-major. Panics on a length mismatch (test and fixture helper).
    pub fn from_i64(rows: usize, cols: usize, vals: &[i64]) -> Self {
        assert_eq!(vals.len(), rows * cols, "from_i64 length");
        RatMatrix { rows, cols, data: vals.iter().map(|&v| int(v)).collect() }
    }

    pub fn row_vector(v: Vec<Rational>) -> Self {
        RatMatrix { rows: 1, cols: v.len(), data: v }
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

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn data(&self) -> &[Rational] {
        &self.data
    }

    pub fn into_data(self) -> Vec<Rational> {
        self.data
    }

    pub fn row(&self, r: usize) -> &[Rational] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_mut(&mut self, r: usize) -> &mut [Rational] {
        let c = self.cols;
        &mut self.data[r * c..(r + 1) * c]
    }

    pub fn column(&self, c: usize) -> Vec<Rational> {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().filter(|x| !x.is_zero()).count()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t[(c, r)] = self[(r, c)].clone();
            }
        }
        t
    }

    pub fn scale(&self, s: &Rational) -> Self {
        if s.is_zero() {
            return Self::zeros(self.rows, self.cols);
        }
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| if x.is_zero() { x.clone() } else { x * s }).collect(),
        }
    }

    pub fn trace(&self) -> Rational {
        let mut t = Rational::zero();
        for i in 0..self.rows.min(self.cols) {
            t += &self[(i, i)];
        }
        t
    }

    pub fn try_mul(&self, other: &RatMatrix) -> Result<RatMatrix, LinalgError> {
        if self.cols != other.rows {
            return Err(LinalgError::Shape(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = &self.data[r * self.cols + k];
                if a.is_zero() {
                    continue;
                }
                let orow = other.row(k);
                let dst = &mut out.data[r * other.cols..(r + 1) * other.cols];
                for (d, b) in dst.iter_mut().zip(orow) {
                    if !b.is_zero() {
                        *d += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    /// `self += s * other` in place.
    pub fn add_scaled(&mut self, other: &RatMatrix, s: &Rational) {
        assert_eq!(self.shape(), other.shape(), "add_scaled shape");
        if s.is_zero() {
            return;
        }
        for (d, b) in self.data.iter_mut().zip(&other.data) {
            if !b.is_zero() {
                *d += b * s;
            }
        }
    }

    pub fn kron(&self, other: &RatMatrix) -> RatMatrix {
        let (r2, c2) = other.shape();
        let mut out = Self::zeros(self.rows * r2, self.cols * c2);
        for r in 0..self.rows {
            for c in 0..self.cols {
                let a = &self[(r, c)];
                if a.is_zero() {
                    continue;
                }
                for i in 0..r2 {
                    for j in 0..c2 {
                        let b = &other[(i, j)];
                        if !b.is_zero() {
                            out[(r * r2 + i, c * c2 + j)] = a * b;
                        }
                    }
                }
            }
        }
        out
    }

    pub fn hstack(blocks: &[&RatMatrix]) -> Result<RatMatrix, LinalgError> {
        let rows = blocks.first().map_or(0, |b| b.rows);
        if blocks.iter().any(|b| b.rows != rows) {
            return Err(LinalgError::Shape("hstack row counts differ".into()));
        }
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Self::zeros(rows, cols);
        let mut off = 0;
        for b in blocks {
            out.set_block(0, off, b);
            off += b.cols;
        }
        Ok(out)
    }

    pub fn vstack(blocks: &[&RatMatrix]) -> Result<RatMatrix, LinalgError> {
        let cols = blocks.first().map_or(0, |b| b.cols);
        if blocks.iter().any(|b| b.cols != cols) {
            return Err(LinalgError::Shape("vstack column counts differ".into()));
        }
        let mut data = Vec::new();
        let mut rows = 0;
        for b in blocks {
            data.extend(b.data.iter().cloned());
            rows += b.rows;
        }
        Ok(RatMatrix { rows, cols, data })
    }

    pub fn block_diag(blocks: &[&RatMatrix]) -> RatMatrix {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Self::zeros(rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            out.set_block(r0, c0, b);
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, b: &RatMatrix) {
        assert!(r0 + b.rows <= self.rows && c0 + b.cols <= self.cols, "set_block out of range");
        for r in 0..b.rows {
            for c in 0..b.cols {
                self[(r0 + r, c0 + c)] = b[(r, c)].clone();
            }
        }
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> RatMatrix {
        assert!(r0 + rows <= self.rows && c0 + cols <= self.cols, "block out of range");
        let mut out = Self::zeros(rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                out[(r, c)] = self[(r0 + r, c0 + c)].clone();
            }
        }
        out
    }

    pub fn select_rows(&self, idx: &[usize]) -> RatMatrix {
        let mut data = Vec::with_capacity(idx.len() * self.cols);
        for &r in idx {
            data.extend(self.row(r).iter().cloned());
        }
        RatMatrix { rows: idx.len(), cols: self.cols, data }
    }

    pub fn select_cols(&self, idx: &[usize]) -> RatMatrix {
        let mut out = Self::zeros(self.rows, idx.len());
        for r in 0..self.rows {
            for (j, &c) in idx.iter().enumerate() {
                out[(r, j)] = self[(r, c)].clone();
            }
        }
        out
    }

    /// Reduced row echelon form with leftmost-column, topmost-row pivots.
    /// Returns the reduced matrix and its pivot columns.
    pub fn rref(&self) -> (RatMatrix, Vec<usize>) {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        (m, pivots)
    }

    fn rref_in_place(&mut self) -> Vec<usize> {
        let (rows, cols) = self.shape();
        let mut pivots = Vec::new();
        let mut pr = 0;
        for c in 0..cols {
            if pr == rows {
                break;
            }
            let Some(p) = (pr..rows).find(|&r| !self[(r, c)].is_zero()) else { continue };
            if p != pr {
                for j in 0..cols {
                    self.data.swap(p * cols + j, pr * cols + j);
                }
            }
            let inv = self[(pr, c)].recip();
            for j in c..cols {
                let v = &self.data[pr * cols + j];
                if !v.is_zero() {
                    self.data[pr * cols + j] = v * &inv;
                }
            }
            let prow: Vec<(usize, Rational)> = (c..cols)
                .filter(|&j| !self.data[pr * cols + j].is_zero())
                .map(|j| (j, self.data[pr * cols + j].clone()))
                .collect();
            for r in 0..rows {
                if r == pr {
                    continue;
                }
                let f = self.data[r * cols + c].clone();
                if f.is_zero() {
                    continue;
                }
                for (j, v) in &prow {
                    self.data[r * cols + j] -= &f * v;
                }
            }
            pivots.push(c);
            pr += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        if self.rows > self.cols {
            self.transpose().rref().1.len()
        } else {
            self.rref().1.len()
        }
    }

    /// Basis of `{x : x·m = 0}`, returned as rows in reduced echelon form.
    pub fn kernel_basis(&self) -> Vec<Vec<Rational>> {
        let basis = right_null_space(&self.transpose());
        if basis.is_empty() {
            return basis;
        }
        let n = self.rows;
        let m = RatMatrix { rows: basis.len(), cols: n, data: basis.into_iter().flatten().collect() };
        let (r, piv) = m.rref();
        (0..piv.len()).map(|i| r.row(i).to_vec()).collect()
    }

    /// Basis of `{x : m·x = 0}` (column kernel), as vectors.
    pub fn right_kernel_basis(&self) -> Vec<Vec<Rational>> {
        right_null_space(self)
    }

    /// Exact determinant. Denominators are cleared row by row; small matrices use
    /// fraction-free Bareiss elimination, larger ones a multi-modular CRT.
    pub fn det(&self) -> Result<Rational, LinalgError> {
        if !self.is_square() {
            return Err(LinalgError::NotSquare(self.rows, self.cols));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(Rational::one());
        }
        let (ints, scale) = self.clear_row_denominators();
        let d = if n <= 24 { bareiss_det(ints, n) } else { modular::det_integer(&ints, n) };
        Ok(Rational::new(d, scale))
    }

    /// Each row multiplied by the lcm of its denominators; returns the integer rows and
    /// the product of the multipliers.
    pub fn clear_row_denominators(&self) -> (Vec<BigInt>, BigInt) {
        let mut out = Vec::with_capacity(self.data.len());
        let mut scale = BigInt::one();
        for r in 0..self.rows {
            let mut l = BigInt::one();
            for x in self.row(r) {
                if !x.denom().is_one() {
                    l = l.lcm(x.denom());
                }
            }
            for x in self.row(r) {
                out.push(x.numer() * (&l / x.denom()));
            }
            scale *= l;
        }
        (out, scale)
    }

    /// Some `x` with `x·self = b`; free variables are set to zero.
    pub fn solve(&self, b: &RatMatrix) -> Result<RatMatrix, LinalgError> {
        if self.cols != b.cols {
            return Err(LinalgError::Shape(format!(
                "x·a = b with a {}x{} and b {}x{}",
                self.rows, self.cols, b.rows, b.cols
            )));
        }
        // a^T x^T = b^T
        let at = self.transpose();
        let bt = b.transpose();
        let aug = RatMatrix::hstack(&[&at, &bt])?;
        let (r, piv) = aug.rref();
        let n = self.rows;
        if piv.iter().any(|&c| c >= n) {
            return Err(LinalgError::NoSolution);
        }
        let mut x = RatMatrix::zeros(b.rows, n);
        for (i, &c) in piv.iter().enumerate() {
            for k in 0..b.rows {
                x[(k, c)] = r[(i, n + k)].clone();
            }
        }
        Ok(x)
    }

    pub fn inverse(&self) -> Result<RatMatrix, LinalgError> {
        if !self.is_square() {
            return Err(LinalgError::NotSquare(self.rows, self.cols));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(RatMatrix::zeros(0, 0));
        }
        let aug = RatMatrix::hstack(&[self, &RatMatrix::identity(n)])?;
        let (r, piv) = aug.rref();
        if piv.len() < n || piv[n - 1] >= n {
            return Err(LinalgError::Singular);
        }
        Ok(r.block(0, n, n, n))
    }

    pub fn pow(&self, k: u32) -> RatMatrix {
        let mut out = RatMatrix::identity(self.rows);
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    pub fn to_yale(&self) -> YaleTriplet {
        YaleTriplet::from_matrix(self)
    }

    pub fn from_yale(t: &YaleTriplet, rows: usize, cols: usize) -> Result<RatMatrix, LinalgError> {
        t.to_matrix(rows, cols)
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.data.iter().map(|x| x.to_f64().unwrap_or(f64::NAN)).collect()
    }

    /// Largest absolute numerator or denominator, in bits (a height measure).
    pub fn height_bits(&self) -> u64 {
        self.data
            .iter()
            .map(|x| x.numer().bits().max(x.denom().bits()))
            .max()
            .unwrap_or(0)
    }

    pub fn max_abs(&self) -> Rational {
        self.data.iter().map(|x| x.abs()).max().unwrap_or_else(Rational::zero)
    }
}

fn right_null_space(m: &RatMatrix) -> Vec<Vec<Rational>> {
    let (r, piv) = m.rref();
    let n = m.cols;
    let mut is_piv = vec![false; n];
    for &c in &piv {
        is_piv[c] = true;
    }
    let mut out = Vec::new();
    for f in (0..n).filter(|&c| !is_piv[c]) {
        let mut v = vec![Rational::zero(); n];
        v[f] = Rational::one();
        for (i, &c) in piv.iter().enumerate() {
            let e = &r[(i, f)];
            if !e.is_zero() {
                v[c] = -e;
            }
        }
        out.push(v);
    }
    out
}

/// Fraction-free determinant of an integer matrix given row-major.
pub fn bareiss_det(mut a: Vec<BigInt>, n: usize) -> BigInt {
    let mut sign = 1i32;
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k * n + k].is_zero() {
            let Some(p) = (k + 1..n).find(|&r| !a[r * n + k].is_zero()) else {
                return BigInt::zero();
            };
            for j in 0..n {
                a.swap(k * n + j, p * n + j);
            }
            sign = -sign;
        }
        let piv = a[k * n + k].clone();
        for i in k + 1..n {
            let aik = a[i * n + k].clone();
            for j in k + 1..n {
                let v = (&a[i * n + j] * &piv - &aik * &a[k * n + j]) / &prev;
                a[i * n + j] = v;
            }
            a[i * n + k] = BigInt::zero();
        }
        prev = piv;
    }
    let d = a[n * n - 1].clone();
    if sign < 0 {
        -d
    } else {
        d
    }
}

impl<'a> Mul<&'a RatMatrix> for &'a RatMatrix {
    type Output = RatMatrix;
    fn mul(self, rhs: &'a RatMatrix) -> RatMatrix {
        self.try_mul(rhs).expect("matrix product shape mismatch")
    }
}

impl<'a> Add<&'a RatMatrix> for &'a RatMatrix {
    type Output = RatMatrix;
    fn add(self, rhs: &'a RatMatrix) -> RatMatrix {
        assert_eq!(self.shape(), rhs.shape(), "matrix sum shape mismatch");
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl<'a> Sub<&'a RatMatrix> for &'a RatMatrix {
    type Output = RatMatrix;
    fn sub(self, rhs: &'a RatMatrix) -> RatMatrix {
        assert_eq!(self.shape(), rhs.shape(), "matrix difference shape mismatch");
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &RatMatrix {
    type Output = RatMatrix;
    fn neg(self) -> RatMatrix {
        RatMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| -a).collect() }
    }
}

/// Text interchange form: shape plus "p/q" entries, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixText {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<String>,
}

impl From<&RatMatrix> for MatrixText {
    fn from(m: &RatMatrix) -> Self {
        MatrixText { rows: m.rows, cols: m.cols, entries: m.data.iter().map(fmt_rational).collect() }
    }
}

impl TryFrom<&MatrixText> for RatMatrix {
    type Error = LinalgError;
    fn try_from(t: &MatrixText) -> Result<Self, LinalgError> {
        let data = t.entries.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>, _>>()?;
        RatMatrix::from_vec(t.rows, t.cols, data)
    }
}

impl Serialize for RatMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        MatrixText::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for RatMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let t = MatrixText::deserialize(d)?;
        RatMatrix::try_from(&t).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: usize, cols: usize, v: &[i64]) -> RatMatrix {
        RatMatrix::from_i64(rows, cols, v)
    }

    #[test]
    fn rank_examples() {
        assert_eq!(RatMatrix::identity(2).rank(), 2);
        assert_eq!(RatMatrix::zeros(3, 4).rank(), 0);
        assert_eq!(m(2, 2, &[1, 2, 2, 4]).rank(), 1);
    }

    #[test]
    fn kernel_examples() {
        assert!(RatMatrix::identity(3).kernel_basis().is_empty());
        let k = RatMatrix::zeros(2, 3).kernel_basis();
        assert_eq!(k, vec![vec![int(1), int(0)], vec![int(0), int(1)]]);
        let k = m(2, 2, &[1, 1, 1, 1]).kernel_basis();
        assert_eq!(k, vec![vec![int(1), int(-1)]]);
    }

    #[test]
    fn det_examples() {
        assert_eq!(RatMatrix::identity(4).det().unwrap(), int(1));
        assert_eq!(m(2, 2, &[0, 1, 1, 0]).det().unwrap(), int(-1));
        let d = RatMatrix::from_rows(vec![vec![rat(1, 2), int(0)], vec![int(0), rat(1, 8)]]).unwrap();
        assert_eq!(d.det().unwrap(), rat(1, 16));
        assert!(matches!(m(1, 2, &[1, 2]).det(), Err(LinalgError::NotSquare(1, 2))));
    }

    #[test]
    fn solve_examples() {
        let b = m(2, 2, &[3, 4, 5, 6]);
        assert_eq!(RatMatrix::identity(2).solve(&b).unwrap(), b);
        let z = RatMatrix::zeros(1, 1);
        assert_eq!(z.solve(&m(1, 1, &[1])), Err(LinalgError::NoSolution));
        assert_eq!(m(1, 1, &[2]).solve(&m(1, 1, &[1])).unwrap().data()[0], rat(1, 2));
    }

    #[test]
    fn solve_sets_free_variables_to_zero() {
        // x·[[1],[1]] = [[2]] has solutions (t, 2-t); the particular one is (2, 0)
        let a = m(2, 1, &[1, 1]);
        let x = a.solve(&m(1, 1, &[2])).unwrap();
        assert_eq!(x, m(1, 2, &[2, 0]));
    }

    #[test]
    fn inverse_roundtrip() {
        let a = m(3, 3, &[2, 1, 0, 1, 3, 1, 0, 1, 4]);
        let inv = a.inverse().unwrap();
        assert_eq!(&a * &inv, RatMatrix::identity(3));
        assert_eq!(m(2, 2, &[1, 2, 2, 4]).inverse(), Err(LinalgError::Singular));
    }

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rational("-3/6").unwrap(), rat(-1, 2));
        assert_eq!(parse_rational(" 7 ").unwrap(), int(7));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        assert_eq!(fmt_rational(&rat(2, -4)), "-1/2");
        assert_eq!(fmt_rational(&int(0)), "0");
    }

    #[test]
    fn large_det_uses_crt_and_agrees() {
        let n = 30;
        let mut v = Vec::new();
        for i in 0..n {
            for j in 0..n {
                v.push(((i * 7 + j * 13 + i * j) % 11) as i64 - 5);
            }
        }
        let a = m(n, n, &v);
        let (ints, _) = a.clear_row_denominators();
        assert_eq!(a.det().unwrap().numer().clone(), bareiss_det(ints, n));
    }

    #[test]
    fn text_roundtrip() {
        let a = RatMatrix::from_rows(vec![vec![rat(1, 3), int(-2)]]).unwrap();
        let s = serde_json::to_string(&a).unwrap();
        let b: RatMatrix = serde_json::from_str(&s).unwrap();
        assert_eq!(a, b);
    }
}
