//! Exact scalar and linear algebra over the quadratic field Q(√3).
//!
//! Every certificate produced by this crate bottoms out in rank, null-space
//! and positive-definiteness computations performed here with arbitrary
//! precision rationals, so all verdicts are exact.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ExactLinError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("matrix is not square")]
    NotSquare,
    #[error("empty input")]
    EmptyInput,
    #[error("cannot parse scalar {0:?}")]
    Parse(String),
    #[error("division by zero")]
    DivisionByZero,
}

fn rat_sign(r: &BigRational) -> i32 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

/// An element a + b·√3 of Q(√3), with exact rational components.
///
/// Classical root systems only ever use b = 0; the √3 part carries the
/// half-integer E6 coordinates.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Scalar {
    a: BigRational,
    b: BigRational,
}

impl Scalar {
    pub fn new(a: BigRational, b: BigRational) -> Self {
        Scalar { a, b }
    }

    pub fn rational(a: BigRational) -> Self {
        Scalar {
            a,
            b: BigRational::zero(),
        }
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Scalar::rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    /// n/d · √3
    pub fn sqrt3_ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Scalar {
            a: BigRational::zero(),
            b: BigRational::new(BigInt::from(num), BigInt::from(den)),
        }
    }

    pub fn zero() -> Self {
        Scalar::from_int(0)
    }

    pub fn one() -> Self {
        Scalar::from_int(1)
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.a
    }

    pub fn sqrt3_part(&self) -> &BigRational {
        &self.b
    }

    /// Exact: a + b√3 = 0 iff a = 0 and b = 0 (√3 is irrational).
    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    /// Exact sign: -1, 0 or 1.
    pub fn signum(&self) -> i32 {
        let sa = rat_sign(&self.a);
        let sb = rat_sign(&self.b);
        if sb == 0 {
            return sa;
        }
        if sa == 0 || sa == sb {
            return sb;
        }
        // Opposite signs: compare a^2 against 3 b^2.
        let d = &self.a * &self.a - BigRational::from_integer(BigInt::from(3)) * &self.b * &self.b;
        sa * rat_sign(&d)
    }

    pub fn is_positive(&self) -> bool {
        self.signum() > 0
    }

    pub fn abs(&self) -> Scalar {
        if self.signum() < 0 {
            -self
        } else {
            self.clone()
        }
    }

    pub fn inv(&self) -> Result<Scalar, ExactLinError> {
        if self.is_zero() {
            return Err(ExactLinError::DivisionByZero);
        }
        // 1/(a + b√3) = (a - b√3) / (a² - 3b²); the norm is nonzero for nonzero input.
        let norm =
            &self.a * &self.a - BigRational::from_integer(BigInt::from(3)) * &self.b * &self.b;
        Ok(Scalar {
            a: &self.a / &norm,
            b: -(&self.b / &norm),
        })
    }

    /// A rational upper bound (√3 < 2) used for Gershgorin-style bounds.
    pub fn rational_upper_bound(&self) -> BigRational {
        if self.b.is_positive() {
            &self.a + BigRational::from_integer(BigInt::from(2)) * &self.b
        } else {
            &self.a + &self.b
        }
    }

    pub fn to_f64(&self) -> f64 {
        fn rat_f64(r: &BigRational) -> f64 {
            let n = r.numer().to_string().parse::<f64>().unwrap_or(f64::NAN);
            let d = r.denom().to_string().parse::<f64>().unwrap_or(f64::NAN);
            n / d
        }
        rat_f64(&self.a) + rat_f64(&self.b) * 3.0_f64.sqrt()
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", self.a);
        }
        if self.a.is_zero() {
            return write!(f, "{}r3", self.b);
        }
        if self.b.is_positive() {
            write!(f, "{}+{}r3", self.a, self.b)
        } else {
            write!(f, "{}{}r3", self.a, self.b)
        }
    }
}

impl FromStr for Scalar {
    type Err = ExactLinError;

    /// Accepts strings like "3/2", "-1/2+1/2r3", "r3", "2-r3".
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() {
            return Err(ExactLinError::Parse(s.to_string()));
        }
        let err = || ExactLinError::Parse(s.to_string());
        let mut a = BigRational::zero();
        let mut b = BigRational::zero();
        let bytes = s.as_bytes();
        let mut start = 0;
        let mut i = if bytes[0] == b'+' || bytes[0] == b'-' { 1 } else { 0 };
        loop {
            if i == bytes.len() || bytes[i] == b'+' || bytes[i] == b'-' {
                let term = &s[start..i];
                if term.is_empty() {
                    return Err(err());
                }
                let (sign, body) = match term.as_bytes()[0] {
                    b'+' => (1, &term[1..]),
                    b'-' => (-1, &term[1..]),
                    _ => (1, term),
                };
                let (coef_str, is_r3) = match body.strip_suffix("r3") {
                    Some(rest) => (rest, true),
                    None => (body, false),
                };
                let coef = if coef_str.is_empty() {
                    if !is_r3 {
                        return Err(err());
                    }
                    BigRational::one()
                } else {
                    BigRational::from_str(coef_str).map_err(|_| err())?
                };
                let coef = if sign < 0 { -coef } else { coef };
                if is_r3 {
                    b += coef;
                } else {
                    a += coef;
                }
                if i == bytes.len() {
                    break;
                }
                start = i;
            }
            i += 1;
        }
        Ok(Scalar { a, b })
    }
}

macro_rules! scalar_binop {
    ($trait:ident, $method:ident, |$x:ident, $y:ident| $body:expr) => {
        impl $trait<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                let $x = self;
                let $y = rhs;
                $body
            }
        }
        impl $trait for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                $trait::$method(&self, &rhs)
            }
        }
        impl $trait<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                $trait::$method(&self, rhs)
            }
        }
        impl $trait<Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                $trait::$method(self, &rhs)
            }
        }
    };
}

scalar_binop!(Add, add, |x, y| Scalar {
    a: &x.a + &y.a,
    b: &x.b + &y.b,
});
scalar_binop!(Sub, sub, |x, y| Scalar {
    a: &x.a - &y.a,
    b: &x.b - &y.b,
});
scalar_binop!(Mul, mul, |x, y| Scalar {
    a: &x.a * &y.a + BigRational::from_integer(BigInt::from(3)) * &x.b * &y.b,
    b: &x.a * &y.b + &x.b * &y.a,
});
scalar_binop!(Div, div, |x, y| {
    let inv = y.inv().expect("division by zero scalar");
    x * &inv
});

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            a: -&self.a,
            b: -&self.b,
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

/// Dense matrix over Q(√3), row major.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0, "matrix dimensions must be positive");
        ExactMatrix {
            rows,
            cols,
            data: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = ExactMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Result<Self, ExactLinError> {
        if rows.is_empty() || rows[0].is_empty() {
            return Err(ExactLinError::EmptyInput);
        }
        let cols = rows[0].len();
        if rows.iter().any(|r| r.len() != cols) {
            return Err(ExactLinError::DimensionMismatch(
                "ragged rows".to_string(),
            ));
        }
        let nrows = rows.len();
        Ok(ExactMatrix {
            rows: nrows,
            cols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> Scalar) -> Self {
        let mut m = ExactMatrix::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> ExactMatrix {
        ExactMatrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn is_symmetric(&self) -> bool {
        if self.rows != self.cols {
            return false;
        }
        for i in 0..self.rows {
            for j in (i + 1)..self.cols {
                if self.get(i, j) != self.get(j, i) {
                    return false;
                }
            }
        }
        true
    }

    pub fn matmul(&self, other: &ExactMatrix) -> Result<ExactMatrix, ExactLinError> {
        if self.cols != other.rows {
            return Err(ExactLinError::DimensionMismatch(format!(
                "{}x{} * {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(ExactMatrix::from_fn(self.rows, other.cols, |i, j| {
            let mut acc = Scalar::zero();
            for k in 0..self.cols {
                acc = acc + self.get(i, k) * other.get(k, j);
            }
            acc
        }))
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Result<Vec<Scalar>, ExactLinError> {
        if v.len() != self.cols {
            return Err(ExactLinError::DimensionMismatch(format!(
                "matrix {}x{} times vector of length {}",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        Ok((0..self.rows)
            .map(|i| {
                let mut acc = Scalar::zero();
                for k in 0..self.cols {
                    acc = acc + self.get(i, k) * &v[k];
                }
                acc
            })
            .collect())
    }

    /// Rank over Q(√3) via fraction-free Bareiss elimination.
    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        let mut prev = Scalar::one();
        let mut rank = 0;
        let mut col = 0;
        while rank < m.rows && col < m.cols {
            // Pivot search in the current column.
            let pivot_row = (rank..m.rows).find(|&r| !m.get(r, col).is_zero());
            let pr = match pivot_row {
                Some(pr) => pr,
                None => {
                    col += 1;
                    continue;
                }
            };
            if pr != rank {
                for j in 0..m.cols {
                    let tmp = m.get(rank, j).clone();
                    m.set(rank, j, m.get(pr, j).clone());
                    m.set(pr, j, tmp);
                }
            }
            let pivot = m.get(rank, col).clone();
            for i in (rank + 1)..m.rows {
                for j in (col + 1)..m.cols {
                    let val = (&pivot * m.get(i, j) - m.get(i, col) * m.get(rank, j)) / &prev;
                    m.set(i, j, val);
                }
                m.set(i, col, Scalar::zero());
            }
            prev = pivot;
            rank += 1;
            col += 1;
        }
        rank
    }

    /// Determinant via Bareiss (square matrices only).
    pub fn determinant(&self) -> Result<Scalar, ExactLinError> {
        if self.rows != self.cols {
            return Err(ExactLinError::NotSquare);
        }
        let n = self.rows;
        let mut m = self.clone();
        let mut prev = Scalar::one();
        let mut sign = 1;
        for k in 0..n {
            let pivot_row = (k..n).find(|&r| !m.get(r, k).is_zero());
            let pr = match pivot_row {
                Some(pr) => pr,
                None => return Ok(Scalar::zero()),
            };
            if pr != k {
                sign = -sign;
                for j in 0..n {
                    let tmp = m.get(k, j).clone();
                    m.set(k, j, m.get(pr, j).clone());
                    m.set(pr, j, tmp);
                }
            }
            let pivot = m.get(k, k).clone();
            for i in (k + 1)..n {
                for j in (k + 1)..n {
                    let val = (&pivot * m.get(i, j) - m.get(i, k) * m.get(k, j)) / &prev;
                    m.set(i, j, val);
                }
                m.set(i, k, Scalar::zero());
            }
            prev = pivot;
        }
        let det = m.get(n - 1, n - 1).clone();
        Ok(if sign < 0 { -det } else { det })
    }

    /// Basis of {x : Mx = 0}, each vector satisfying Mx = 0 exactly.
    pub fn null_space(&self) -> Vec<Vec<Scalar>> {
        let mut rs = RowSpace::new(self.cols);
        for i in 0..self.rows {
            rs.insert(self.row(i).to_vec());
        }
        rs.null_space()
    }

    /// Exact positive-definiteness by leading principal minors.
    pub fn is_positive_definite(&self) -> Result<bool, ExactLinError> {
        if !self.is_symmetric() {
            return Err(ExactLinError::NotSymmetric);
        }
        for k in 1..=self.rows {
            let sub = ExactMatrix::from_fn(k, k, |i, j| self.get(i, j).clone());
            if sub.determinant()?.signum() <= 0 {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Solve Mx = rhs for square nonsingular M.
    pub fn solve(&self, rhs: &[Scalar]) -> Result<Vec<Scalar>, ExactLinError> {
        if self.rows != self.cols {
            return Err(ExactLinError::NotSquare);
        }
        if rhs.len() != self.rows {
            return Err(ExactLinError::DimensionMismatch(
                "rhs length != matrix size".to_string(),
            ));
        }
        let n = self.rows;
        // Augmented Gauss-Jordan.
        let mut aug: Vec<Vec<Scalar>> = (0..n)
            .map(|i| {
                let mut r = self.row(i).to_vec();
                r.push(rhs[i].clone());
                r
            })
            .collect();
        for col in 0..n {
            let pr = (col..n).find(|&r| !aug[r][col].is_zero());
            let pr = pr.ok_or(ExactLinError::DivisionByZero)?;
            aug.swap(col, pr);
            let inv = aug[col][col].inv()?;
            for j in col..=n {
                aug[col][j] = &aug[col][j] * &inv;
            }
            for r in 0..n {
                if r != col && !aug[r][col].is_zero() {
                    let f = aug[r][col].clone();
                    for j in col..=n {
                        aug[r][j] = &aug[r][j] - &(&f * &aug[col][j]);
                    }
                }
            }
        }
        Ok(aug.into_iter().map(|mut r| r.pop().unwrap()).collect())
    }
}

/// Rank of the difference set {p_i - p_0}; k+1 points are an affine basis of a
/// k-dimensional affine space iff this equals k.
pub fn affine_rank(points: &[Vec<Scalar>]) -> Result<usize, ExactLinError> {
    if points.is_empty() {
        return Err(ExactLinError::EmptyInput);
    }
    if points.len() == 1 {
        return Ok(0);
    }
    let p0 = &points[0];
    let mut rs = RowSpace::new(p0.len());
    for p in &points[1..] {
        if p.len() != p0.len() {
            return Err(ExactLinError::DimensionMismatch(
                "points of unequal dimension".to_string(),
            ));
        }
        let diff: Vec<Scalar> = p.iter().zip(p0.iter()).map(|(x, y)| x - y).collect();
        rs.insert(diff);
    }
    Ok(rs.rank())
}

/// Incremental reduced row echelon form. Rows can be streamed in one at a
/// time; the structure keeps at most `cols` reduced basis rows, so feeding it
/// tens of thousands of evaluation rows stays cheap.
#[derive(Clone, Debug)]
pub struct RowSpace {
    cols: usize,
    rows: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl RowSpace {
    pub fn new(cols: usize) -> Self {
        RowSpace {
            cols,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, row: &mut [Scalar]) {
        for (r, &p) in self.rows.iter().zip(self.pivots.iter()) {
            if !row[p].is_zero() {
                let f = row[p].clone();
                for j in 0..self.cols {
                    row[j] = &row[j] - &(&f * &r[j]);
                }
            }
        }
    }

    /// Insert a row; returns true when the rank grew.
    pub fn insert(&mut self, mut row: Vec<Scalar>) -> bool {
        assert_eq!(row.len(), self.cols, "row length mismatch");
        self.reduce(&mut row);
        let pivot = match row.iter().position(|x| !x.is_zero()) {
            Some(p) => p,
            None => return false,
        };
        let inv = row[pivot].inv().unwrap();
        for x in row.iter_mut() {
            *x = &*x * &inv;
        }
        // Back-substitute into the existing basis to keep the form reduced.
        for r in self.rows.iter_mut() {
            if !r[pivot].is_zero() {
                let f = r[pivot].clone();
                for j in 0..self.cols {
                    r[j] = &r[j] - &(&f * &row[j]);
                }
            }
        }
        let pos = self
            .pivots
            .iter()
            .position(|&p| p > pivot)
            .unwrap_or(self.pivots.len());
        self.pivots.insert(pos, pivot);
        self.rows.insert(pos, row);
        true
    }

    /// True when the covector already lies in the row space.
    pub fn contains(&self, row: &[Scalar]) -> bool {
        let mut r = row.to_vec();
        self.reduce(&mut r);
        r.iter().all(|x| x.is_zero())
    }

    /// Basis of the common null space of all inserted rows.
    pub fn null_space(&self) -> Vec<Vec<Scalar>> {
        let pivot_of_col: HashMap<usize, usize> = self
            .pivots
            .iter()
            .enumerate()
            .map(|(r, &c)| (c, r))
            .collect();
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_of_col.contains_key(&free) {
                continue;
            }
            let mut v = vec![Scalar::zero(); self.cols];
            v[free] = Scalar::one();
            for (r, &p) in self.rows.iter().zip(self.pivots.iter()) {
                v[p] = -&r[free];
            }
            basis.push(v);
        }
        basis
    }
}
