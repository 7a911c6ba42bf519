//! The second-order cone `{x in R^3 : sqrt(x1^2 + x2^2) <= x3}` and its
//! quotient by a line. Quotienting by a boundary ray gives a cone that is
//! proper but not closed: an open half-plane together with the origin.
//!
//! Everything is decided with squared inequalities over the rationals; no
//! square roots are taken.

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::cone::PolyhedralCone;
use crate::error::{Error, Result};
use crate::linalg::{check_dim, rat, QMatrix, QVector, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SocPoint {
    #[serde(with = "crate::linalg::rational_str")]
    pub x1: Rational,
    #[serde(with = "crate::linalg::rational_str")]
    pub x2: Rational,
    #[serde(with = "crate::linalg::rational_str")]
    pub x3: Rational,
}

impl SocPoint {
    pub fn new(x1: Rational, x2: Rational, x3: Rational) -> Self {
        SocPoint { x1, x2, x3 }
    }

    pub fn from_i64s(x1: i64, x2: i64, x3: i64) -> Self {
        SocPoint::new(rat(x1), rat(x2), rat(x3))
    }

    pub fn from_vector(v: &QVector) -> Result<Self> {
        check_dim(3, v.dim())?;
        Ok(SocPoint::new(v[0].clone(), v[1].clone(), v[2].clone()))
    }

    pub fn to_vector(&self) -> QVector {
        QVector::new(vec![self.x1.clone(), self.x2.clone(), self.x3.clone()])
    }

    pub fn is_zero(&self) -> bool {
        self.x1.is_zero() && self.x2.is_zero() && self.x3.is_zero()
    }

    /// `x1^2 + x2^2 - x3^2`: negative inside, zero on the boundary.
    fn lorentz(&self) -> Rational {
        &self.x1 * &self.x1 + &self.x2 * &self.x2 - &self.x3 * &self.x3
    }
}

pub fn soc_contains(p: &SocPoint) -> bool {
    !p.x3.is_negative() && !p.lorentz().is_positive()
}

/// True iff `p` spans a boundary ray: `x3 > 0` and `x1^2 + x2^2 = x3^2`.
pub fn is_extremal_ray(p: &SocPoint) -> Result<bool> {
    if p.is_zero() {
        return Err(Error::Precondition("zero vector spans no ray".into()));
    }
    Ok(p.x3.is_positive() && p.lorentz().is_zero())
}

/// The quotient `R^3 -> R^3 / span(p)` in fixed coordinates: `p` is
/// completed to a basis `{p, e_i, e_j}` with the smallest indices `i < j`
/// giving a nonzero determinant, and `x` maps to its coordinates along
/// `(e_i, e_j)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RayQuotient {
    ray: SocPoint,
    complement: [usize; 2],
    /// `2 x 3`; rows are functionals vanishing on `p`.
    projection: QMatrix,
}

impl RayQuotient {
    pub fn new(p: &SocPoint) -> Result<Self> {
        if p.is_zero() {
            return Err(Error::Precondition("cannot quotient by the zero vector".into()));
        }
        let pv = p.to_vector();
        let pairs = [[0usize, 1usize], [0, 2], [1, 2]];
        let complement = pairs
            .into_iter()
            .find(|&[i, j]| {
                let basis = vec![pv.clone(), QVector::unit(3, i), QVector::unit(3, j)];
                QMatrix::from_rows(3, basis).expect("3x3").rank() == 3
            })
            .expect("a nonzero vector extends to a basis");
        // B has columns p, e_i, e_j. Row k of B^-1 solves B^t y = e_k; rows
        // 1 and 2 are the quotient coordinates.
        let bt = QMatrix::from_rows(3, vec![pv, QVector::unit(3, complement[0]), QVector::unit(3, complement[1])])?;
        let rows = (1..3)
            .map(|k| bt.solve(&QVector::unit(3, k)).map(|y| y.expect("B is invertible")))
            .collect::<Result<Vec<_>>>()?;
        let projection = QMatrix::from_rows(3, rows)?;
        Ok(RayQuotient { ray: p.clone(), complement, projection })
    }

    pub fn ray(&self) -> &SocPoint {
        &self.ray
    }

    pub fn complement(&self) -> [usize; 2] {
        self.complement
    }

    pub fn projection(&self) -> &QMatrix {
        &self.projection
    }

    pub fn apply(&self, x: &QVector) -> Result<QVector> {
        self.projection.mul_vec(x)
    }

    /// `v1 e_i + v2 e_j`, the representative of `v` with no `p` component.
    pub fn lift(&self, v: &QVector) -> Result<QVector> {
        check_dim(2, v.dim())?;
        let mut w = QVector::zeros(3);
        w[self.complement[0]] = v[0].clone();
        w[self.complement[1]] = v[1].clone();
        Ok(w)
    }

    /// Expresses a functional `y` on `R^3` vanishing on `p` as a functional
    /// `psi` on the quotient coordinates, `y = projection^t psi`.
    pub fn functional_on_quotient(&self, y: &QVector) -> Result<Option<QVector>> {
        self.projection.transpose().solve(y)
    }
}

/// Exact membership of `v` in the image of the second-order cone under the
/// quotient by an extremal ray. On success returns a preimage in the cone.
///
/// Writing the candidate preimage as `x = a p + w` (`w` the lift of `v`),
/// the Lorentz form is linear in `a` because `p` is on the boundary:
/// `q(x) = 2 a B + C` with `B = <w, Jp>`, `C = q(w)`, `J = diag(1, 1, -1)`.
/// For `B < 0` a large `a` works; for `B >= 0` only `w` on the line of `p`
/// works, which means `v = 0`.
pub fn pushforward_preimage(q: &RayQuotient, v: &QVector) -> Result<Option<QVector>> {
    check_dim(2, v.dim())?;
    if !is_extremal_ray(&q.ray)? {
        return Err(Error::Precondition("pushforward membership needs an extremal ray".into()));
    }
    if v.is_zero() {
        return Ok(Some(QVector::zeros(3)));
    }
    let p = q.ray.to_vector();
    let w = q.lift(v)?;
    let b = &w[0] * &p[0] + &w[1] * &p[1] - &w[2] * &p[2];
    if !b.is_negative() {
        return Ok(None);
    }
    let c = &w[0] * &w[0] + &w[1] * &w[1] - &w[2] * &w[2];
    // q(x) <= 0 needs a >= C / (2|B|); x3 >= 0 needs a >= -w3 / p3.
    let a_lorentz = &c / (rat(2) * b.abs());
    let a_height = -&w[2] / &p[2];
    let a = a_lorentz.max(a_height);
    let x = p.scale(&a).add(&w);
    debug_assert!(soc_contains(&SocPoint::from_vector(&x)?));
    Ok(Some(x))
}

pub fn pushforward_membership(p: &SocPoint, v: &QVector) -> Result<bool> {
    let q = RayQuotient::new(p)?;
    Ok(pushforward_preimage(&q, v)?.is_some())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuotientClassification {
    pub is_proper: bool,
    pub is_closed: bool,
    pub is_semisimple: bool,
    /// Dimension of the span of the positive functionals vanishing on `p`.
    pub perp_positive_dim: usize,
    /// Spans the lineality space of the closure of the image, when that
    /// space is a line.
    pub witness_line: Option<QVector>,
    /// Functional on the quotient whose nonnegative side is the closure of
    /// the image, when that closure is a half-plane.
    pub closure_halfspace: Option<QVector>,
}

/// Dimension of `span(p^perp ∩ K)` for the (self-dual) second-order cone
/// `K`, read off the Lorentz form restricted to `p^perp`. When that
/// dimension is 1, also returns the spanning ray.
fn perp_positive_dim(p: &SocPoint) -> Result<(usize, Option<QVector>)> {
    let basis = QMatrix::from_rows(3, vec![p.to_vector()])?.kernel_basis();
    let form = |a: &QVector, b: &QVector| &a[0] * &b[0] + &a[1] * &b[1] - &a[2] * &b[2];
    let (u, w) = (&basis[0], &basis[1]);
    let g11 = form(u, u);
    let g12 = form(u, w);
    let g22 = form(w, w);
    let det = &g11 * &g22 - &g12 * &g12;
    if det.is_negative() {
        // Indefinite: the plane passes through the interior of K.
        return Ok((2, None));
    }
    if det.is_positive() {
        // Definite. The form has signature (2, 1), so no plane is negative
        // definite; positive definite planes meet K only at 0.
        return Ok(if g11.is_positive() { (0, None) } else { (2, None) });
    }
    // Degenerate: positive semidefinite with an isotropic kernel line, the
    // only part of the plane inside K or -K.
    let dir = if g11.is_zero() { u.clone() } else { w.scale(&g11).sub(&u.scale(&g12)) };
    if dir[2].is_zero() {
        return Err(Error::Inconsistent("isotropic direction must have nonzero height".into()));
    }
    let dir = if dir[2].is_negative() { dir.neg() } else { dir };
    Ok((1, Some(dir.primitive())))
}

/// Classifies the image of the second-order cone under `R^3 -> R^3/span(p)`.
///
/// For an extremal `p` the image is an open half-plane plus the origin:
/// proper, not closed, and its closure (a half-plane) is not proper, so it
/// is not semisimple. With `allow_non_extremal`, an interior `p` gives the
/// whole plane and an exterior `p` gives a closed proper cone.
pub fn quotient_by_ray(p: &SocPoint, allow_non_extremal: bool) -> Result<QuotientClassification> {
    let extremal = is_extremal_ray(p)?;
    let (perp_dim, iso) = perp_positive_dim(p)?;
    let q = RayQuotient::new(p)?;

    if extremal {
        let y = iso.ok_or_else(|| Error::Inconsistent("boundary ray must have an isotropic dual ray".into()))?;
        let psi = q
            .functional_on_quotient(&y)?
            .ok_or_else(|| Error::Inconsistent("dual ray must vanish on p".into()))?
            .primitive();
        // Nonzero members satisfy <psi, v> > 0, so v and -v are never both
        // members: the image is proper whenever psi is nonzero.
        let is_proper = !psi.is_zero();
        let witness = QVector::new(vec![-psi[1].clone(), psi[0].clone()]).primitive_unsigned();
        // The witness lies in the closure {<psi, v> >= 0}; the image is
        // closed only if it is a member.
        let is_closed = pushforward_preimage(&q, &witness)?.is_some();
        let closure = PolyhedralCone::from_halfspaces(2, vec![psi.clone()])?;
        let is_semisimple = closure.semisimplicity_report()?.is_semisimple();
        return Ok(QuotientClassification {
            is_proper,
            is_closed,
            is_semisimple,
            perp_positive_dim: perp_dim,
            witness_line: Some(witness),
            closure_halfspace: Some(psi),
        });
    }
    if !allow_non_extremal {
        return Err(Error::Precondition(format!("({}, {}, {}) does not span an extremal ray", p.x1, p.x2, p.x3)));
    }
    let lightlike = p.lorentz().is_zero();
    let inside = p.lorentz().is_negative();
    if lightlike {
        // -p is extremal and spans the same line.
        return quotient_by_ray(&SocPoint::new(-&p.x1, -&p.x2, -&p.x3), false);
    }
    if inside {
        // The line meets the interior, so the image is the whole plane.
        return Ok(QuotientClassification {
            is_proper: false,
            is_closed: true,
            is_semisimple: false,
            perp_positive_dim: perp_dim,
            witness_line: None,
            closure_halfspace: None,
        });
    }
    // The line meets K only at 0, so the image is closed; p^perp contains
    // interior points of the dual, which are strictly positive on the image.
    if perp_dim != 2 {
        return Err(Error::Inconsistent("exterior line must have a generating positive perp".into()));
    }
    Ok(QuotientClassification {
        is_proper: true,
        is_closed: true,
        is_semisimple: true,
        perp_positive_dim: perp_dim,
        witness_line: None,
        closure_halfspace: None,
    })
}

/// Members of the image converging to `witness` (which is not a member):
/// `witness + n_k` with `n_k` shrinking into the open side.
pub fn closure_witness_sequence(p: &SocPoint, terms: usize) -> Result<Vec<(QVector, QVector)>> {
    let q = RayQuotient::new(p)?;
    let class = quotient_by_ray(p, false)?;
    let witness = class.witness_line.expect("extremal quotient has a witness line");
    let psi = class.closure_halfspace.expect("extremal quotient has a closure halfspace");
    let inward = psi.scale(&psi.dot(&psi).recip());
    (1..=terms)
        .map(|k| {
            let v = witness.add(&inward.scale(&Rational::new(One::one(), (k as i64 * k as i64).into())));
            let pre = pushforward_preimage(&q, &v)?
                .ok_or_else(|| Error::Inconsistent("sequence point must be a member".into()))?;
            Ok((v, pre))
        })
        .collect()
}
