use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{format_rational, Rational};

/// A polynomial with rational coefficients in ascending degree. The last
/// stored coefficient is nonzero; the zero polynomial has none.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct QPolynomial {
    coefficients: Vec<Rational>,
}

impl QPolynomial {
    pub fn new(mut coefficients: Vec<Rational>) -> Self {
        while coefficients.last().is_some_and(Zero::is_zero) {
            coefficients.pop();
        }
        QPolynomial { coefficients }
    }

    pub fn zero() -> Self {
        QPolynomial::default()
    }

    /// `1 + x + ... + x^n`.
    pub fn geometric(n: usize) -> Self {
        QPolynomial::new(vec![Rational::one(); n + 1])
    }

    pub fn coefficients(&self) -> &[Rational] {
        &self.coefficients
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coefficients.len().checked_sub(1)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coefficients.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn add(&self, other: &QPolynomial) -> QPolynomial {
        let n = self.coefficients.len().max(other.coefficients.len());
        let zero = Rational::zero();
        QPolynomial::new(
            (0..n)
                .map(|i| self.coefficients.get(i).unwrap_or(&zero) + other.coefficients.get(i).unwrap_or(&zero))
                .collect(),
        )
    }

    pub fn scale(&self, s: &Rational) -> QPolynomial {
        QPolynomial::new(self.coefficients.iter().map(|c| c * s).collect())
    }

    pub fn sub(&self, other: &QPolynomial) -> QPolynomial {
        self.add(&other.scale(&-Rational::one()))
    }

    /// Largest absolute coefficient: the sup norm on coefficient sequences.
    pub fn coefficient_sup(&self) -> Rational {
        self.coefficients.iter().map(|c| c.abs()).max().unwrap_or_else(Rational::zero)
    }

    /// `sum |c_i| b^i`, an upper bound for `sup_{[a,b]} |g|` when `0 <= a <= b`.
    pub fn sup_bound(&self, b: &Rational) -> Rational {
        let mut power = Rational::one();
        let mut total = Rational::zero();
        for c in &self.coefficients {
            total += c.abs() * &power;
            power *= b;
        }
        total
    }

    /// Parses comma-separated ascending coefficients, e.g. `"0,-1"` for `-x`.
    pub fn parse(s: &str) -> Result<QPolynomial> {
        if s.trim().is_empty() {
            return Ok(QPolynomial::zero());
        }
        s.split(',').map(crate::linalg::parse_rational).collect::<Result<Vec<_>>>().map(QPolynomial::new)
    }
}

impl fmt::Debug for QPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QPolynomial[{}]", self.coefficients.iter().map(format_rational).collect::<Vec<_>>().join(", "))
    }
}

impl Serialize for QPolynomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.coefficients.iter().map(format_rational).collect::<Vec<_>>().serialize(s)
    }
}

impl<'de> Deserialize<'de> for QPolynomial {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = Vec::<String>::deserialize(d)?;
        raw.iter()
            .map(|s| crate::linalg::parse_rational(s))
            .collect::<Result<Vec<_>>>()
            .map(QPolynomial::new)
            .map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DensityWitness {
    /// `g + eps * (1 + x + ... + x^n)`, nonnegative on `[a, b]`.
    pub p: QPolynomial,
    pub n: usize,
    /// The bound `sum |c_i| b^i` used in place of `sup_{[a,b]} |g|`.
    #[serde(with = "crate::linalg::rational_str")]
    pub bound: Rational,
    /// `eps * sum_{k<=n} a^k`, strictly above `bound`.
    #[serde(with = "crate::linalg::rational_str")]
    pub lower: Rational,
}

/// A polynomial within coefficient distance `eps` of `g` that is
/// nonnegative on `[a, b]`. For `x >= a >= 1` the added term is at least
/// `eps * sum a^k`, which exceeds the bound on `|g|`; `n` is the least
/// degree for which that holds.
pub fn density_witness(g: &QPolynomial, a: &Rational, b: &Rational, eps: &Rational) -> Result<DensityWitness> {
    if *a < Rational::one() || a >= b {
        return Err(Error::Precondition("need 1 <= a < b".into()));
    }
    if !eps.is_positive() {
        return Err(Error::Precondition("eps must be positive".into()));
    }
    let bound = g.sup_bound(b);
    let mut n = 0;
    let mut power = Rational::one();
    let mut lower = eps.clone();
    while lower <= bound {
        n += 1;
        power *= a;
        lower += eps * &power;
    }
    let p = g.add(&QPolynomial::geometric(n).scale(eps));
    Ok(DensityWitness { p, n, bound, lower })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{rat, ratio};

    fn poly(c: &[i64]) -> QPolynomial {
        QPolynomial::new(c.iter().map(|&x| rat(x)).collect())
    }

    #[test]
    fn zero_polynomial() {
        let w = density_witness(&QPolynomial::zero(), &rat(1), &rat(3), &ratio(1, 5)).unwrap();
        assert_eq!(w.n, 0);
        assert_eq!(w.p, QPolynomial::new(vec![ratio(1, 5)]));
    }

    #[test]
    fn minus_x_on_1_2() {
        let g = poly(&[0, -1]);
        let w = density_witness(&g, &rat(1), &rat(2), &rat(1)).unwrap();
        assert_eq!(w.bound, rat(2));
        assert_eq!(w.n, 2);
        assert_eq!(w.p, poly(&[1, 0, 1]));
        assert_eq!(w.p.sub(&g).coefficient_sup(), rat(1));
        for k in 0..=100 {
            let x = rat(1) + ratio(k, 100);
            assert!(!w.p.eval(&x).is_negative());
        }
    }

    #[test]
    fn bound_ten_at_a_one() {
        // constant -10 has bound 10 on any interval
        let g = poly(&[-10]);
        let w = density_witness(&g, &rat(1), &rat(2), &ratio(1, 2)).unwrap();
        assert_eq!(w.n, 20);
        assert_eq!(w.lower, ratio(21, 2));
    }

    #[test]
    fn preconditions() {
        let g = poly(&[1]);
        assert!(density_witness(&g, &ratio(1, 2), &rat(2), &rat(1)).is_err());
        assert!(density_witness(&g, &rat(2), &rat(2), &rat(1)).is_err());
        assert!(density_witness(&g, &rat(1), &rat(2), &rat(0)).is_err());
    }

    #[test]
    fn arithmetic() {
        let p = poly(&[1, 2, 3]);
        assert_eq!(p.eval(&rat(2)), rat(17));
        assert_eq!(p.sub(&p), QPolynomial::zero());
        assert_eq!(p.degree(), Some(2));
        assert_eq!(QPolynomial::zero().degree(), None);
        assert_eq!(QPolynomial::parse("0, -1").unwrap(), poly(&[0, -1]));
    }
}
