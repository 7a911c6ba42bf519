//! Exact rational scalars, vectors and matrices.
//!
//! Rank, kernel and solve all run on a fraction-free (Bareiss) row echelon
//! form over the integers; rows are cleared of denominators first, which
//! does not change the row space.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Index, IndexMut};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always in lowest terms with a positive
/// denominator.
pub type Rational = BigRational;

/// Shorthand for the integer `n` as a [`Rational`].
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// The rational `num / den`. Panics if `den == 0`.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Parses `"p/q"` or `"p"` (surrounding whitespace ignored).
pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    let bad = || Error::Parse(format!("invalid rational {s:?}"));
    match t.split_once('/') {
        Some((p, q)) => {
            let p = BigInt::from_str(p.trim()).map_err(|_| bad())?;
            let q = BigInt::from_str(q.trim()).map_err(|_| bad())?;
            if q.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            Ok(Rational::new(p, q))
        }
        None => Ok(Rational::from_integer(BigInt::from_str(t).map_err(|_| bad())?)),
    }
}

/// Formats as `"p/q"`, or `"p"` when the denominator is one.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Serde adapter storing a [`Rational`] as a `"p/q"` string.
pub mod rational_str {
    use super::*;

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(serde::de::Error::custom)
    }
}

/// A vector of exact rationals. Its dimension is its length.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct QVector(Vec<Rational>);

impl QVector {
    pub fn new(entries: Vec<Rational>) -> Self {
        QVector(entries)
    }

    pub fn from_i64s(entries: &[i64]) -> Self {
        QVector(entries.iter().map(|&v| rat(v)).collect())
    }

    pub fn zeros(dim: usize) -> Self {
        QVector(vec![Rational::zero(); dim])
    }

    /// The `i`-th standard basis vector of length `dim`.
    pub fn unit(dim: usize, i: usize) -> Self {
        let mut v = Self::zeros(dim);
        v.0[i] = Rational::one();
        v
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[Rational] {
        &self.0
    }

    pub fn into_entries(self) -> Vec<Rational> {
        self.0
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Rational> {
        self.0.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn dot(&self, other: &QVector) -> Rational {
        debug_assert_eq!(self.dim(), other.dim());
        self.0.iter().zip(&other.0).fold(Rational::zero(), |acc, (a, b)| acc + a * b)
    }

    pub fn checked_dot(&self, other: &QVector) -> Result<Rational> {
        check_dim(self.dim(), other.dim())?;
        Ok(self.dot(other))
    }

    pub fn add(&self, other: &QVector) -> QVector {
        QVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &QVector) -> QVector {
        QVector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, s: &Rational) -> QVector {
        QVector(self.0.iter().map(|a| a * s).collect())
    }

    pub fn neg(&self) -> QVector {
        QVector(self.0.iter().map(|a| -a).collect())
    }

    /// `max_i |x_i|`.
    pub fn norm_inf(&self) -> Rational {
        self.0.iter().map(|a| a.abs()).max().unwrap_or_else(Rational::zero)
    }

    /// `sum_i |x_i|`.
    pub fn norm_1(&self) -> Rational {
        self.0.iter().fold(Rational::zero(), |acc, a| acc + a.abs())
    }

    /// Scales by a positive factor to the unique primitive integer vector
    /// on the same ray. The zero vector is returned unchanged.
    pub fn primitive(&self) -> QVector {
        QVector(primitive_ints(&clear_denominators(&self.0)).into_iter().map(Rational::from_integer).collect())
    }

    /// Primitive form with the first nonzero entry made positive. Use for
    /// spanning directions, never for rays.
    pub fn primitive_unsigned(&self) -> QVector {
        let p = self.primitive();
        match p.0.iter().find(|a| !a.is_zero()) {
            Some(a) if a.is_negative() => p.neg(),
            _ => p,
        }
    }

    /// Parses a comma-separated list of rationals such as `"1,-1/2,3"`.
    pub fn parse(s: &str) -> Result<QVector> {
        let t = s.trim();
        if t.is_empty() {
            return Err(Error::Parse("empty vector".into()));
        }
        t.split(',').map(parse_rational).collect::<Result<Vec<_>>>().map(QVector)
    }
}

impl Index<usize> for QVector {
    type Output = Rational;
    fn index(&self, i: usize) -> &Rational {
        &self.0[i]
    }
}

impl IndexMut<usize> for QVector {
    fn index_mut(&mut self, i: usize) -> &mut Rational {
        &mut self.0[i]
    }
}

impl FromIterator<Rational> for QVector {
    fn from_iter<I: IntoIterator<Item = Rational>>(iter: I) -> Self {
        QVector(iter.into_iter().collect())
    }
}

impl PartialOrd for QVector {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Lexicographic on entries, shorter first on ties.
impl Ord for QVector {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.cmp(&other.0)
    }
}

impl fmt::Debug for QVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.0.iter().map(format_rational).collect::<Vec<_>>().join(","))
    }
}

impl fmt::Display for QVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0.iter().map(format_rational).collect::<Vec<_>>().join(","))
    }
}

impl Serialize for QVector {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        let mut seq = s.serialize_seq(Some(self.0.len()))?;
        for r in &self.0 {
            seq.serialize_element(&format_rational(r))?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for QVector {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = Vec::<String>::deserialize(d)?;
        raw.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>>>().map(QVector).map_err(serde::de::Error::custom)
    }
}

pub(crate) fn check_dim(expected: usize, got: usize) -> Result<()> {
    if expected == got {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, got })
    }
}

/// A dense rational matrix stored by rows.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QMatrix {
    rows: Vec<QVector>,
    ncols: usize,
}

impl QMatrix {
    /// Builds a matrix from rows; every row must have length `ncols`.
    pub fn from_rows(ncols: usize, rows: Vec<QVector>) -> Result<Self> {
        for r in &rows {
            check_dim(ncols, r.dim())?;
        }
        Ok(QMatrix { rows, ncols })
    }

    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        QMatrix { rows: vec![QVector::zeros(ncols); nrows], ncols }
    }

    pub fn identity(n: usize) -> Self {
        QMatrix { rows: (0..n).map(|i| QVector::unit(n, i)).collect(), ncols: n }
    }

    pub fn from_i64_rows(ncols: usize, rows: &[&[i64]]) -> Result<Self> {
        Self::from_rows(ncols, rows.iter().map(|r| QVector::from_i64s(r)).collect())
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rows(&self) -> &[QVector] {
        &self.rows
    }

    pub fn into_rows(self) -> Vec<QVector> {
        self.rows
    }

    pub fn row(&self, i: usize) -> &QVector {
        &self.rows[i]
    }

    pub fn column(&self, j: usize) -> QVector {
        self.rows.iter().map(|r| r[j].clone()).collect()
    }

    pub fn transpose(&self) -> QMatrix {
        QMatrix { rows: (0..self.ncols).map(|j| self.column(j)).collect(), ncols: self.rows.len() }
    }

    pub fn mul_vec(&self, x: &QVector) -> Result<QVector> {
        check_dim(self.ncols, x.dim())?;
        Ok(self.rows.iter().map(|r| r.dot(x)).collect())
    }

    pub fn mul(&self, other: &QMatrix) -> Result<QMatrix> {
        check_dim(self.ncols, other.nrows())?;
        let t = other.transpose();
        let rows = self.rows.iter().map(|r| t.rows.iter().map(|c| r.dot(c)).collect()).collect();
        Ok(QMatrix { rows, ncols: other.ncols })
    }

    /// Exact rank over the rationals.
    pub fn rank(&self) -> usize {
        echelon(&integer_rows(&self.rows), self.ncols).pivots.len()
    }

    /// A basis of `{x : self * x = 0}`; empty when the kernel is trivial.
    pub fn kernel_basis(&self) -> Vec<QVector> {
        let ech = echelon(&integer_rows(&self.rows), self.ncols);
        let free: Vec<usize> = (0..self.ncols).filter(|c| !ech.pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut x = QVector::zeros(self.ncols);
                x[f] = Rational::one();
                back_substitute(&ech, &mut x, None);
                x.primitive()
            })
            .collect()
    }

    /// Solves `self * x = b`. `Ok(None)` means the system is inconsistent;
    /// otherwise free variables are set to zero.
    pub fn solve(&self, b: &QVector) -> Result<Option<QVector>> {
        check_dim(self.nrows(), b.dim())?;
        let aug: Vec<QVector> = self
            .rows
            .iter()
            .zip(b.iter())
            .map(|(r, bi)| r.iter().cloned().chain(std::iter::once(bi.clone())).collect())
            .collect();
        let ech = echelon(&integer_rows(&aug), self.ncols + 1);
        if ech.pivots.last() == Some(&self.ncols) {
            return Ok(None);
        }
        let mut x = QVector::zeros(self.ncols);
        back_substitute(&ech, &mut x, Some(self.ncols));
        Ok(Some(x))
    }

    /// Reduced row echelon basis of the row space with primitive integer
    /// rows, leading entries positive. Canonical for the subspace.
    pub fn row_space_basis(&self) -> Vec<QVector> {
        rref_basis(&self.rows, self.ncols)
    }
}

/// Canonical basis of `span(vectors)`: reduced row echelon form, each row
/// scaled to a primitive integer vector.
pub fn rref_basis(vectors: &[QVector], dim: usize) -> Vec<QVector> {
    let mut rows: Vec<QVector> = vectors.to_vec();
    let mut pivot_row = 0;
    for c in 0..dim {
        let Some(p) = (pivot_row..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(pivot_row, p);
        let inv = rows[pivot_row][c].recip();
        rows[pivot_row] = rows[pivot_row].scale(&inv);
        let pr = rows[pivot_row].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != pivot_row && !row[c].is_zero() {
                let f = row[c].clone();
                *row = row.sub(&pr.scale(&f));
            }
        }
        pivot_row += 1;
        if pivot_row == rows.len() {
            break;
        }
    }
    rows.truncate(pivot_row);
    rows.into_iter().map(|r| r.primitive_unsigned()).collect()
}

/// Rank of a list of vectors of common dimension `dim`.
pub fn rank_of(vectors: &[QVector], dim: usize) -> usize {
    echelon(&integer_rows(vectors), dim).pivots.len()
}

/// True when `span(a) == span(b)`.
pub fn same_span(a: &[QVector], b: &[QVector], dim: usize) -> bool {
    rref_basis(a, dim) == rref_basis(b, dim)
}

pub(crate) fn clear_denominators(v: &[Rational]) -> Vec<BigInt> {
    let l = v.iter().fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
    v.iter().map(|r| r.numer() * (&l / r.denom())).collect()
}

pub(crate) fn primitive_ints(v: &[BigInt]) -> Vec<BigInt> {
    let g = v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() || g.is_one() {
        v.to_vec()
    } else {
        v.iter().map(|x| x / &g).collect()
    }
}

fn integer_rows(rows: &[QVector]) -> Vec<Vec<BigInt>> {
    rows.iter().map(|r| clear_denominators(r.entries())).collect()
}

pub(crate) struct Echelon {
    pub rows: Vec<Vec<BigInt>>,
    pub pivots: Vec<usize>,
}

/// Fraction-free Gaussian elimination. Every division is exact because the
/// entries after step `k` are `(k+1)`-minors of the input.
pub(crate) fn echelon(input: &[Vec<BigInt>], ncols: usize) -> Echelon {
    let mut a: Vec<Vec<BigInt>> = input.to_vec();
    let mut pivots = Vec::new();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..ncols {
        if r == a.len() {
            break;
        }
        let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let (top, bottom) = a.split_at_mut(r + 1);
        let prow = &top[r];
        for row in bottom.iter_mut() {
            for j in c + 1..ncols {
                let v = &prow[c] * &row[j] - &row[c] * &prow[j];
                row[j] = v / &prev;
            }
            row[c] = BigInt::zero();
        }
        prev = a[r][c].clone();
        pivots.push(c);
        r += 1;
    }
    a.truncate(r);
    Echelon { rows: a, pivots }
}

/// Fills pivot variables of `x` from the echelon form, given the free
/// variables already set. With `rhs = Some(col)`, that column is the
/// augmented right-hand side.
fn back_substitute(ech: &Echelon, x: &mut QVector, rhs: Option<usize>) {
    for (i, &p) in ech.pivots.iter().enumerate().rev() {
        let row = &ech.rows[i];
        let mut acc = match rhs {
            Some(col) => Rational::from_integer(row[col].clone()),
            None => Rational::zero(),
        };
        for j in p + 1..x.dim() {
            if !row[j].is_zero() {
                acc -= Rational::from_integer(row[j].clone()) * &x[j];
            }
        }
        x[p] = acc / Rational::from_integer(row[p].clone());
    }
}
