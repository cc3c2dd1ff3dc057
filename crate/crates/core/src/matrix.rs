//! Square matrices over a commutative ring: characteristic polynomials,
//! companion matrices, unimodularity and the inertia of symmetric forms.

use std::fmt;
use std::ops::{Mul, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::scalar::Ring;
use crate::IntPoly;

/// Square `dim x dim` matrix stored row-major.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Matrix<T> {
    dim: usize,
    entries: Vec<T>,
}

impl<T: Ring> Matrix<T> {
    pub fn new(dim: usize, entries: Vec<T>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidInput(
                "matrix dimension must be at least 1".into(),
            ));
        }
        if entries.len() != dim * dim {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {dim}x{dim} matrix",
                entries.len()
            )));
        }
        Ok(Matrix { dim, entries })
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let dim = rows.len();
        if rows.iter().any(|r| r.len() != dim) {
            return Err(Error::DimensionMismatch("matrix is not square".into()));
        }
        Matrix::new(dim, rows.into_iter().flatten().collect())
    }

    pub fn identity(dim: usize) -> Self {
        Matrix::from_fn(dim, |i, j| if i == j { T::one() } else { T::zero() })
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        assert!(dim >= 1, "matrix dimension must be at least 1");
        let mut entries = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                entries.push(f(i, j));
            }
        }
        Matrix { dim, entries }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.entries[i * self.dim + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: T) {
        self.entries[i * self.dim + j] = value;
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.entries[i * self.dim..(i + 1) * self.dim]
    }

    pub fn rows(&self) -> Vec<Vec<T>> {
        (0..self.dim).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.dim, |i, j| self.get(j, i).clone())
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.dim).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn scale(&self, c: &T) -> Self {
        Matrix {
            dim: self.dim,
            entries: self.entries.iter().map(|a| a.clone() * c.clone()).collect(),
        }
    }

    /// Principal submatrix on the index range `start..end`.
    pub fn principal(&self, start: usize, end: usize) -> Self {
        Matrix::from_fn(end - start, |i, j| self.get(start + i, start + j).clone())
    }

    pub fn try_mul(&self, rhs: &Self) -> Result<Self> {
        if self.dim != rhs.dim {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.dim, self.dim, rhs.dim, rhs.dim
            )));
        }
        Ok(self * rhs)
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Matrix::identity(self.dim);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn map<U: Ring>(&self, f: impl FnMut(&T) -> U) -> Matrix<U> {
        Matrix {
            dim: self.dim,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    /// `det(x I - M)` by Berkowitz's division-free algorithm.
    pub fn charpoly(&self) -> Poly<T> {
        let n = self.dim;
        // Coefficients highest degree first.
        let mut c: Vec<T> = vec![T::one(), -self.get(0, 0).clone()];
        for r in 1..n {
            // Toeplitz column: 1, -a_rr, -R A^k S for k = 0..r-1
            let mut col: Vec<T> = Vec::with_capacity(r + 2);
            col.push(T::one());
            col.push(-self.get(r, r).clone());
            let mut v: Vec<T> = (0..r).map(|i| self.get(i, r).clone()).collect();
            for _ in 0..r {
                let dot = (0..r).fold(T::zero(), |acc, j| {
                    acc + self.get(r, j).clone() * v[j].clone()
                });
                col.push(-dot);
                v = (0..r)
                    .map(|i| {
                        (0..r).fold(T::zero(), |acc, j| {
                            acc + self.get(i, j).clone() * v[j].clone()
                        })
                    })
                    .collect();
            }
            let next: Vec<T> = (0..r + 2)
                .map(|i| {
                    (0..=i.min(r)).fold(T::zero(), |acc, j| acc + col[i - j].clone() * c[j].clone())
                })
                .collect();
            c = next;
        }
        c.reverse();
        Poly::new(c)
    }

    pub fn trace(&self) -> T {
        (0..self.dim).fold(T::zero(), |acc, i| acc + self.get(i, i).clone())
    }
}

impl<T: Ring> Mul for &Matrix<T> {
    type Output = Matrix<T>;

    fn mul(self, rhs: &Matrix<T>) -> Matrix<T> {
        assert_eq!(self.dim, rhs.dim, "matrix dimensions differ");
        let n = self.dim;
        let mut entries = vec![T::zero(); n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let idx = i * n + j;
                    entries[idx] = entries[idx].clone() + a.clone() * rhs.get(k, j).clone();
                }
            }
        }
        Matrix { dim: n, entries }
    }
}

impl<T: Ring> Sub for &Matrix<T> {
    type Output = Matrix<T>;

    fn sub(self, rhs: &Matrix<T>) -> Matrix<T> {
        assert_eq!(self.dim, rhs.dim, "matrix dimension mismatch");
        Matrix::from_fn(self.dim, |i, j| {
            self.get(i, j).clone() - rhs.get(i, j).clone()
        })
    }
}

impl<T: Ring> Mul for Matrix<T> {
    type Output = Matrix<T>;
    fn mul(self, rhs: Matrix<T>) -> Matrix<T> {
        &self * &rhs
    }
}

impl Matrix<BigInt> {
    pub fn from_i64_rows(rows: &[&[i64]]) -> Result<Self> {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
                .collect(),
        )
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> BigInt {
        let n = self.dim;
        let mut m: Vec<Vec<BigInt>> = self.rows();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n.saturating_sub(1) {
            if m[k][k].is_zero() {
                match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                    Some(i) => {
                        m.swap(k, i);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                    m[i][j] = v.div_floor(&prev);
                }
            }
            prev = m[k][k].clone();
        }
        sign * &m[n - 1][n - 1]
    }

    /// `det M = +-1`.
    pub fn is_unimodular(&self) -> bool {
        self.det().abs().is_one()
    }

    /// Inertia `(positive, negative, zero)` of a symmetric matrix, read off
    /// its characteristic polynomial by Descartes' rule of signs (exact
    /// because a real symmetric matrix has only real eigenvalues).
    pub fn signature(&self) -> Result<(usize, usize, usize)> {
        if !self.is_symmetric() {
            return Err(Error::NotSymmetric);
        }
        Ok(real_rooted_sign_counts(&self.charpoly()))
    }
}

/// `(positive, negative, zero)` root counts with multiplicity for a
/// polynomial whose roots are all real.
pub(crate) fn real_rooted_sign_counts(p: &IntPoly) -> (usize, usize, usize) {
    let (zero, rest) = p.split_x_power();
    let pos = sign_variations(rest.coeffs());
    let neg = sign_variations(rest.negate_variable().coeffs());
    (pos, neg, zero)
}

fn sign_variations(coeffs: &[BigInt]) -> usize {
    let mut last: Option<bool> = None;
    let mut count = 0;
    for c in coeffs.iter().filter(|c| !c.is_zero()) {
        let neg = c.is_negative();
        if last.is_some_and(|l| l != neg) {
            count += 1;
        }
        last = Some(neg);
    }
    count
}

/// Companion matrix of the monic polynomial
/// `x^d + a_d x^(d-1) + ... + a_2 x + a_1`: ones on the superdiagonal and
/// last row `(-a_1, ..., -a_d)`.
pub fn companion(p: &IntPoly) -> Result<Matrix<BigInt>> {
    let d = p.degree().ok_or(Error::DegreeTooSmall(0, 1))?;
    if d < 1 {
        return Err(Error::DegreeTooSmall(d, 1));
    }
    if !p.is_monic() {
        return Err(Error::NotMonic);
    }
    Ok(Matrix::from_fn(d, |i, j| {
        if i == d - 1 {
            -p.coeff(j)
        } else if j == i + 1 {
            BigInt::one()
        } else {
            BigInt::zero()
        }
    }))
}

/// Rows separated by `;`, entries by `,`; a JSON array of arrays is also
/// accepted.
impl FromStr for Matrix<BigInt> {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let text = s.trim();
        if text.starts_with('[') {
            let rows: Vec<Vec<serde_json::Value>> = serde_json::from_str(text)
                .map_err(|e| Error::Parse(format!("bad JSON matrix: {e}")))?;
            let rows = rows
                .into_iter()
                .map(|r| r.iter().map(crate::json::bigint_from_value).collect())
                .collect::<Result<Vec<Vec<BigInt>>>>()?;
            return Matrix::from_rows(rows);
        }
        let rows = text
            .split(';')
            .map(|row| {
                row.split(',')
                    .map(|t| {
                        t.trim()
                            .parse::<BigInt>()
                            .map_err(|e| Error::Parse(format!("bad entry {t:?}: {e}")))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Matrix::from_rows(rows)
    }
}

impl<T: Ring + fmt::Display> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.dim {
            if i > 0 {
                f.write_str(";")?;
            }
            for (j, v) in self.row(i).iter().enumerate() {
                if j > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{v}")?;
            }
        }
        Ok(())
    }
}
