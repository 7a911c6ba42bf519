//! Distance to a cone under a polyhedral norm, and the monotone seminorm
//! `x -> max(d(x, C), d(-x, C))` built from it.
//!
//! Every distance is the optimum of an exact rational LP over the cone's
//! generators, so all values are exact rationals.

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::cone::PolyhedralCone;
use crate::error::{Error, Result};
use crate::linalg::{check_dim, QVector, Rational};
use crate::lp::{LinearProgram, LpOutcome, Relation};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NormKind {
    Ell1,
    Ellinf,
    Polytope,
}

/// A norm whose unit ball is a symmetric polytope with the origin in its
/// interior. For `Polytope` the ball is `{x : <x, h> <= beta}` over the
/// listed facets; the other kinds carry no facets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyhedralNorm {
    kind: NormKind,
    unit_ball_halfspaces: Vec<(QVector, Rational)>,
}

impl PolyhedralNorm {
    pub fn ell1() -> Self {
        PolyhedralNorm { kind: NormKind::Ell1, unit_ball_halfspaces: Vec::new() }
    }

    pub fn ellinf() -> Self {
        PolyhedralNorm { kind: NormKind::Ellinf, unit_ball_halfspaces: Vec::new() }
    }

    /// Checks that the ball is symmetric, bounded and has 0 in its interior.
    pub fn polytope(dim: usize, facets: Vec<(QVector, Rational)>) -> Result<Self> {
        let mut scaled = Vec::with_capacity(facets.len());
        for (h, beta) in &facets {
            check_dim(dim, h.dim())?;
            if !beta.is_positive() {
                return Err(Error::Precondition("unit ball must contain 0 in its interior".into()));
            }
            scaled.push(h.scale(&beta.recip()));
        }
        if scaled.iter().any(|h| !scaled.contains(&h.neg())) {
            return Err(Error::Precondition("unit ball must be symmetric".into()));
        }
        let normals = PolyhedralCone::from_generators(dim, scaled)?;
        if !normals.halfspaces().is_empty() {
            return Err(Error::Precondition("unit ball must be bounded".into()));
        }
        Ok(PolyhedralNorm { kind: NormKind::Polytope, unit_ball_halfspaces: facets })
    }

    pub fn kind(&self) -> NormKind {
        self.kind
    }

    pub fn facets(&self) -> &[(QVector, Rational)] {
        &self.unit_ball_halfspaces
    }

    /// The norm itself (the gauge of the unit ball).
    pub fn eval(&self, x: &QVector) -> Rational {
        match self.kind {
            NormKind::Ell1 => x.norm_1(),
            NormKind::Ellinf => x.norm_inf(),
            NormKind::Polytope => self
                .unit_ball_halfspaces
                .iter()
                .map(|(h, beta)| h.dot(x) / beta)
                .max()
                .unwrap_or_else(Rational::zero)
                .max(Rational::zero()),
        }
    }

    fn check(&self, dim: usize) -> Result<()> {
        match self.unit_ball_halfspaces.first() {
            Some((h, _)) => check_dim(h.dim(), dim),
            None => Ok(()),
        }
    }
}

/// The LP whose optimum is the distance from `x` to `cone`. Variables are
/// the generator weights `lambda`, then either `t` (polytope and
/// sup-norm balls) or the split residual `u, v` (ell-1).
pub fn distance_lp(x: &QVector, cone: &PolyhedralCone, norm: &PolyhedralNorm) -> Result<LinearProgram> {
    check_dim(cone.dim(), x.dim())?;
    norm.check(x.dim())?;
    let gens = cone.generators();
    let m = gens.len();
    let n = x.dim();
    let zero = Rational::zero;
    let one = Rational::one;

    if norm.kind == NormKind::Ell1 {
        let mut lp = LinearProgram::new(m + 2 * n);
        let mut obj = vec![zero(); m];
        obj.extend(std::iter::repeat_with(one).take(2 * n));
        lp.set_objective(obj);
        for i in 0..n {
            let mut row: Vec<Rational> = gens.iter().map(|g| g[i].clone()).collect();
            row.extend((0..n).map(|k| if k == i { one() } else { zero() }));
            row.extend((0..n).map(|k| if k == i { -one() } else { zero() }));
            lp.add_constraint(row, Relation::Eq, x[i].clone());
        }
        return Ok(lp);
    }

    let facets: Vec<(QVector, Rational)> = match norm.kind {
        NormKind::Ellinf => {
            (0..n).flat_map(|i| [(QVector::unit(n, i), one()), (QVector::unit(n, i).neg(), one())]).collect()
        }
        _ => norm.unit_ball_halfspaces.clone(),
    };
    let mut lp = LinearProgram::new(m + 1);
    let mut obj = vec![zero(); m];
    obj.push(one());
    lp.set_objective(obj);
    // <x - y, h> <= t * beta  with  y = sum lambda_i g_i
    for (h, beta) in &facets {
        let mut row: Vec<Rational> = gens.iter().map(|g| g.dot(h)).collect();
        row.push(beta.clone());
        lp.add_constraint(row, Relation::Ge, x.dot(h));
    }
    Ok(lp)
}

/// `inf_{y in cone} ||x - y||`.
pub fn distance_to_cone(x: &QVector, cone: &PolyhedralCone, norm: &PolyhedralNorm) -> Result<Rational> {
    match distance_lp(x, cone, norm)?.solve() {
        LpOutcome::Optimal { value, .. } => Ok(value),
        other => Err(Error::Inconsistent(format!("distance LP must have an optimum, got {other:?}"))),
    }
}

/// `max(d(x, C), d(-x, C))`: a seminorm for which the cone is normal,
/// dominated by the base norm, and a norm exactly when the cone is proper.
pub fn monotone_norm(x: &QVector, cone: &PolyhedralCone, norm: &PolyhedralNorm) -> Result<Rational> {
    let a = distance_to_cone(x, cone, norm)?;
    let b = distance_to_cone(&x.neg(), cone, norm)?;
    Ok(a.max(b))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PairIssue {
    /// `x` is not in the cone.
    LowerNotPositive,
    /// `y - x` is not in the cone.
    NotOrdered,
    NotMonotone,
    NotDominated,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairReport {
    pub index: usize,
    pub issue: PairIssue,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NormalityCertificate {
    /// Monotone and dominated on every well-formed pair.
    pub holds: bool,
    /// Pairs that failed the precondition `0 <= x <= y`; skipped.
    pub invalid_pairs: Vec<PairReport>,
    pub failures: Vec<PairReport>,
}

/// Checks `||x||_m <= ||y||_m` for each ordered pair `0 <= x <= y`, and
/// `||z||_m <= ||z||` at every sampled point.
pub fn normality_certificate(
    cone: &PolyhedralCone,
    norm: &PolyhedralNorm,
    samples: &[(QVector, QVector)],
) -> Result<NormalityCertificate> {
    let mut invalid_pairs = Vec::new();
    let mut failures = Vec::new();
    for (index, (x, y)) in samples.iter().enumerate() {
        if !cone.contains(x)? {
            invalid_pairs.push(PairReport { index, issue: PairIssue::LowerNotPositive });
            continue;
        }
        if !cone.contains(&y.sub(x))? {
            invalid_pairs.push(PairReport { index, issue: PairIssue::NotOrdered });
            continue;
        }
        let mx = monotone_norm(x, cone, norm)?;
        let my = monotone_norm(y, cone, norm)?;
        if mx > my {
            failures.push(PairReport { index, issue: PairIssue::NotMonotone });
        }
        if mx > norm.eval(x) || my > norm.eval(y) {
            failures.push(PairReport { index, issue: PairIssue::NotDominated });
        }
    }
    Ok(NormalityCertificate { holds: failures.is_empty(), invalid_pairs, failures })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rat;

    fn v(x: &[i64]) -> QVector {
        QVector::from_i64s(x)
    }

    fn upper_half_plane() -> PolyhedralCone {
        PolyhedralCone::from_halfspaces(2, vec![v(&[0, 1])]).unwrap()
    }

    #[test]
    fn distance_examples() {
        let o2 = PolyhedralCone::nonnegative_orthant(2);
        assert_eq!(distance_to_cone(&v(&[2, 3]), &o2, &PolyhedralNorm::ellinf()).unwrap(), rat(0));
        assert_eq!(distance_to_cone(&v(&[-1, 0]), &o2, &PolyhedralNorm::ellinf()).unwrap(), rat(1));
        assert_eq!(distance_to_cone(&v(&[-1, -2]), &o2, &PolyhedralNorm::ell1()).unwrap(), rat(3));
        assert!(distance_to_cone(&v(&[1]), &o2, &PolyhedralNorm::ell1()).is_err());
    }

    #[test]
    fn monotone_norm_examples() {
        let o2 = PolyhedralCone::nonnegative_orthant(2);
        let inf = PolyhedralNorm::ellinf();
        assert_eq!(monotone_norm(&v(&[0, 0]), &o2, &inf).unwrap(), rat(0));
        assert_eq!(monotone_norm(&v(&[1, 0]), &upper_half_plane(), &inf).unwrap(), rat(0));
        assert_eq!(monotone_norm(&v(&[0, -1]), &o2, &inf).unwrap(), rat(1));
    }

    #[test]
    fn zero_cone_distance_is_the_norm() {
        let z = PolyhedralCone::zero(3);
        let x = v(&[1, -4, 2]);
        assert_eq!(distance_to_cone(&x, &z, &PolyhedralNorm::ell1()).unwrap(), rat(7));
        assert_eq!(distance_to_cone(&x, &z, &PolyhedralNorm::ellinf()).unwrap(), rat(4));
    }

    #[test]
    fn certificate_examples() {
        let o2 = PolyhedralCone::nonnegative_orthant(2);
        let inf = PolyhedralNorm::ellinf();
        let c = normality_certificate(&o2, &inf, &[(v(&[1, 0]), v(&[1, 1]))]).unwrap();
        assert!(c.holds && c.invalid_pairs.is_empty());
        assert!(normality_certificate(&o2, &inf, &[(v(&[0, 0]), v(&[5, 7]))]).unwrap().holds);
        assert!(normality_certificate(&upper_half_plane(), &inf, &[]).unwrap().holds);
        let c = normality_certificate(&o2, &inf, &[(v(&[-1, 0]), v(&[1, 1])), (v(&[2, 2]), v(&[1, 1]))]).unwrap();
        assert_eq!(
            c.invalid_pairs,
            vec![
                PairReport { index: 0, issue: PairIssue::LowerNotPositive },
                PairReport { index: 1, issue: PairIssue::NotOrdered }
            ]
        );
    }

    #[test]
    fn polytope_norm_validation() {
        // hexagon-like ball in the plane: |x| <= 1, |y| <= 1, |x + y| <= 1
        let facets = vec![
            (v(&[1, 0]), rat(1)),
            (v(&[-1, 0]), rat(1)),
            (v(&[0, 1]), rat(1)),
            (v(&[0, -1]), rat(1)),
            (v(&[1, 1]), rat(1)),
            (v(&[-1, -1]), rat(1)),
        ];
        let n = PolyhedralNorm::polytope(2, facets.clone()).unwrap();
        assert_eq!(n.eval(&v(&[1, 1])), rat(2));
        assert_eq!(n.eval(&v(&[1, -1])), rat(1));
        let o2 = PolyhedralCone::nonnegative_orthant(2);
        assert_eq!(distance_to_cone(&v(&[-1, -1]), &o2, &n).unwrap(), rat(2));

        assert!(PolyhedralNorm::polytope(2, facets[..5].to_vec()).is_err());
        assert!(PolyhedralNorm::polytope(2, facets[..2].to_vec()).is_err());
        assert!(PolyhedralNorm::polytope(2, vec![(v(&[1, 0]), rat(0)), (v(&[-1, 0]), rat(0))]).is_err());
    }
}
