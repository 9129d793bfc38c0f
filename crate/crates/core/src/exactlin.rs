//! Exact rational scalars and dense linear algebra over ℚ.
//!
//! Every coefficient in the crate is a [`Rational`]: an arbitrary-precision
//! fraction kept in lowest terms with a positive denominator. Elimination is
//! plain Gauss–Jordan with the first nonzero entry of each column chosen as
//! pivot, so reduced forms and kernel bases are reproducible for identical
//! input.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

pub fn frac(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Parses `"num"` or `"num/den"` with an optional leading minus sign.
///
/// The result is normalized, so `"2/4"` and `"1/2"` parse to the same value.
pub fn parse_rational(text: &str) -> Result<Rational> {
    fn digits(s: &str) -> bool {
        !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit())
    }
    let (neg, body) = match text.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, text),
    };
    let (num, den) = match body.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (body, None),
    };
    if !digits(num) || den.is_some_and(|d| !digits(d)) {
        return Err(Error::Parse(format!("malformed rational {text:?}")));
    }
    let mut numer: BigInt = num.parse().expect("validated digits");
    if neg {
        numer = -numer;
    }
    let denom: BigInt = match den {
        Some(d) => d.parse().expect("validated digits"),
        None => BigInt::one(),
    };
    if denom.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {text:?}")));
    }
    Ok(Rational::new(numer, denom))
}

/// Canonical text form: `"num"` when the denominator is one, else `"num/den"`.
pub fn format_rational(value: &Rational) -> String {
    if value.denom().is_one() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

pub fn is_zero_vector(v: &[Rational]) -> bool {
    v.iter().all(Zero::is_zero)
}

pub fn zero_vector(len: usize) -> Vec<Rational> {
    vec![Rational::zero(); len]
}

/// `acc += scale * v`, skipping zero entries of `v`.
pub fn axpy(acc: &mut [Rational], scale: &Rational, v: &[Rational]) {
    debug_assert_eq!(acc.len(), v.len());
    if scale.is_zero() {
        return;
    }
    for (a, x) in acc.iter_mut().zip(v) {
        if !x.is_zero() {
            *a += scale * x;
        }
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: zero_vector(rows * cols),
        }
    }

    pub fn identity(size: usize) -> Self {
        let mut m = Self::zeros(size, size);
        for i in 0..size {
            m.set(i, i, Rational::one());
        }
        m
    }

    /// Builds a matrix from rows that must all have length `cols`.
    pub fn from_rows(cols: usize, rows: Vec<Vec<Rational>>) -> Result<Self> {
        let nrows = rows.len();
        let mut entries = Vec::with_capacity(nrows * cols);
        for (idx, row) in rows.into_iter().enumerate() {
            if row.len() != cols {
                return Err(Error::Dimension(format!(
                    "row {idx} has {} entries, expected {cols}",
                    row.len()
                )));
            }
            entries.extend(row);
        }
        Ok(Self {
            rows: nrows,
            cols,
            entries,
        })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let data = rows
            .iter()
            .map(|r| r.iter().map(|&v| int(v)).collect())
            .collect();
        Self::from_rows(cols, data).expect("ragged literal matrix")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Rational {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: Rational) {
        self.entries[r * self.cols + c] = value;
    }

    pub fn row(&self, r: usize) -> &[Rational] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        is_zero_vector(&self.entries)
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.cols, "vector length does not match columns");
        (0..self.rows)
            .map(|r| {
                let mut acc = Rational::zero();
                for (a, x) in self.row(r).iter().zip(v) {
                    if !a.is_zero() && !x.is_zero() {
                        acc += a * x;
                    }
                }
                acc
            })
            .collect()
    }

    pub fn mul(&self, other: &RationalMatrix) -> RationalMatrix {
        assert_eq!(self.cols, other.rows, "inner dimensions differ");
        let mut out = RationalMatrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.get(k, c);
                    if !b.is_zero() {
                        out.entries[r * other.cols + c] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, other: &RationalMatrix) -> RationalMatrix {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &RationalMatrix) -> RationalMatrix {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn scale(&self, factor: &Rational) -> RationalMatrix {
        RationalMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|e| e * factor).collect(),
        }
    }

    fn zip_with(
        &self,
        other: &RationalMatrix,
        f: impl Fn(&Rational, &Rational) -> Rational,
    ) -> RationalMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        RationalMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| f(a, b))
                .collect(),
        }
    }

    pub fn rref(&self) -> Rref {
        let mut rows: Vec<Vec<Rational>> = (0..self.rows).map(|r| self.row(r).to_vec()).collect();
        let pivots = reduce_in_place(&mut rows, self.cols);
        rows.truncate(pivots.len());
        Rref {
            cols: self.cols,
            rows,
            pivots,
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().pivots.len()
    }

    pub fn kernel_basis(&self) -> Vec<Vec<Rational>> {
        self.rref().kernel_basis()
    }
}

impl fmt::Debug for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RationalMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let cells: Vec<String> = self.row(r).iter().map(format_rational).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Reduced row echelon form: nonzero rows only, with their pivot columns.
#[derive(Clone, Debug)]
pub struct Rref {
    pub cols: usize,
    pub rows: Vec<Vec<Rational>>,
    pub pivots: Vec<usize>,
}

impl Rref {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// One vector per free column, ascending: the free variable is 1, the
    /// other free variables 0, pivots solved from the reduced rows.
    pub fn kernel_basis(&self) -> Vec<Vec<Rational>> {
        let mut is_pivot = vec![false; self.cols];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = zero_vector(self.cols);
                v[free] = Rational::one();
                for (row, &p) in self.rows.iter().zip(&self.pivots) {
                    if !row[free].is_zero() {
                        v[p] = -row[free].clone();
                    }
                }
                v
            })
            .collect()
    }
}

/// Gauss–Jordan elimination in place. Returns pivot columns; the first
/// `pivots.len()` rows hold the reduced nonzero rows afterwards.
fn reduce_in_place(rows: &mut [Vec<Rational>], cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut next = 0;
    for col in 0..cols {
        if next == rows.len() {
            break;
        }
        let Some(found) = (next..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(next, found);
        let inv = rows[next][col].recip();
        let support: Vec<usize> = (col..cols).filter(|&c| !rows[next][c].is_zero()).collect();
        for &c in &support {
            rows[next][c] *= &inv;
        }
        let (head, tail) = rows.split_at_mut(next);
        let (pivot_row, tail) = tail.split_first_mut().expect("pivot row exists");
        for other in head.iter_mut().chain(tail.iter_mut()) {
            if other[col].is_zero() {
                continue;
            }
            let factor = other[col].clone();
            for &c in &support {
                let delta = &factor * &pivot_row[c];
                other[c] -= delta;
            }
        }
        pivots.push(col);
        next += 1;
    }
    pivots
}

pub fn kernel_basis(m: &RationalMatrix) -> Vec<Vec<Rational>> {
    m.kernel_basis()
}

pub fn rank(m: &RationalMatrix) -> usize {
    m.rank()
}

/// Canonical basis (reduced echelon rows) of the span of `vectors`.
pub fn span_basis(dim: usize, vectors: Vec<Vec<Rational>>) -> Vec<Vec<Rational>> {
    let mut rows = vectors;
    let pivots = reduce_in_place(&mut rows, dim);
    rows.truncate(pivots.len());
    rows
}

/// Solves `sum_i c_i * generators[i] = target` for the coefficients, if any.
pub fn solve_combination(
    generators: &[Vec<Rational>],
    target: &[Rational],
) -> Option<Vec<Rational>> {
    let k = generators.len();
    let len = target.len();
    // Augmented system: one row per coordinate, columns are generators then rhs.
    let mut rows: Vec<Vec<Rational>> = (0..len)
        .map(|r| {
            let mut row: Vec<Rational> = generators.iter().map(|g| g[r].clone()).collect();
            row.push(target[r].clone());
            row
        })
        .collect();
    let pivots = reduce_in_place(&mut rows, k + 1);
    if pivots.last() == Some(&k) {
        return None;
    }
    let mut coeffs = zero_vector(k);
    for (row, &p) in rows.iter().zip(&pivots) {
        coeffs[p] = row[k].clone();
    }
    Some(coeffs)
}

pub fn abs(value: &Rational) -> Rational {
    value.abs()
}
