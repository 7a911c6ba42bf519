//! Cones under subspace pullback, finite products and quotients.
//!
//! Polyhedral images are closed, so the pushforward here is always a
//! closed cone. The proper-but-not-closed quotient lives in [`crate::soc`].

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::cone::{greedy_full_rank, PolyhedralCone};
use crate::dd::generators_of;
use crate::error::{Error, Result};
use crate::linalg::{check_dim, rank_of, rref_basis, QMatrix, QVector};

/// An injective linear map `Q^k -> Q^n` given by its `n x k` matrix; its
/// columns span the subspace.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubspaceEmbedding {
    basis_matrix: QMatrix,
}

impl SubspaceEmbedding {
    /// Embedding whose image is spanned by `columns` (each of length
    /// `ambient_dim`). The columns must be linearly independent.
    pub fn from_columns(ambient_dim: usize, columns: Vec<QVector>) -> Result<Self> {
        if columns.is_empty() {
            return Err(Error::Precondition("subspace must be nonzero".into()));
        }
        let k = columns.len();
        let t = QMatrix::from_rows(ambient_dim, columns)?;
        if t.rank() != k {
            return Err(Error::Precondition("embedding columns must be independent".into()));
        }
        Ok(SubspaceEmbedding { basis_matrix: t.transpose() })
    }

    pub fn identity(dim: usize) -> Self {
        SubspaceEmbedding { basis_matrix: QMatrix::identity(dim) }
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis_matrix.nrows()
    }

    pub fn sub_dim(&self) -> usize {
        self.basis_matrix.ncols()
    }

    pub fn matrix(&self) -> &QMatrix {
        &self.basis_matrix
    }

    pub fn apply(&self, x: &QVector) -> Result<QVector> {
        self.basis_matrix.mul_vec(x)
    }
}

/// `{x : f(x) in cone}`, from the cone's halfspaces `h -> f^t h`.
pub fn pullback_cone(f: &SubspaceEmbedding, cone: &PolyhedralCone) -> Result<PolyhedralCone> {
    check_dim(cone.dim(), f.ambient_dim())?;
    let bt = f.basis_matrix.transpose();
    let pulled = cone.halfspaces().iter().map(|h| bt.mul_vec(h)).collect::<Result<Vec<_>>>()?;
    PolyhedralCone::from_halfspaces(f.sub_dim(), pulled)
}

/// The product cone in the direct sum, generated by the block-embedded
/// factor generators.
pub fn product_cone(cones: &[PolyhedralCone]) -> Result<PolyhedralCone> {
    if cones.is_empty() {
        return Err(Error::Precondition("product needs at least one factor".into()));
    }
    let total: usize = cones.iter().map(|c| c.dim()).sum();
    let mut gens = Vec::new();
    let mut offset = 0;
    for c in cones {
        for g in c.generators() {
            let mut v = QVector::zeros(total);
            for (i, x) in g.iter().enumerate() {
                v[offset + i] = x.clone();
            }
            gens.push(v);
        }
        offset += c.dim();
    }
    PolyhedralCone::from_generators(total, gens)
}

/// The quotient `Q^n -> Q^n / I` in explicit coordinates. With `I` in
/// reduced row echelon form, the non-pivot coordinates of the unique
/// representative supported off the pivot columns serve as coordinates on
/// the quotient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientMap {
    kernel_basis: Vec<QVector>,
    projection_matrix: QMatrix,
}

impl QuotientMap {
    pub fn new(dim: usize, kernel: Vec<QVector>) -> Result<Self> {
        for k in &kernel {
            check_dim(dim, k.dim())?;
        }
        let basis: Vec<QVector> = rref_basis(&kernel, dim)
            .into_iter()
            .map(|r| {
                let lead = r.iter().find(|x| !x.is_zero()).cloned().expect("basis row is nonzero");
                r.scale(&lead.recip())
            })
            .collect();
        let pivots: Vec<usize> = basis.iter().map(|r| r.iter().position(|x| !x.is_zero()).expect("nonzero")).collect();
        if basis.len() == dim {
            return Err(Error::Precondition("quotient by the whole space is zero-dimensional".into()));
        }
        let rows = (0..dim)
            .filter(|i| !pivots.contains(i))
            .map(|i| {
                let mut row = QVector::unit(dim, i);
                for (b, &p) in basis.iter().zip(&pivots) {
                    row[p] -= &b[i];
                }
                row
            })
            .collect();
        let projection_matrix = QMatrix::from_rows(dim, rows)?;
        Ok(QuotientMap { kernel_basis: basis, projection_matrix })
    }

    pub fn kernel_basis(&self) -> &[QVector] {
        &self.kernel_basis
    }

    pub fn projection(&self) -> &QMatrix {
        &self.projection_matrix
    }

    pub fn dim(&self) -> usize {
        self.projection_matrix.ncols()
    }

    pub fn quotient_dim(&self) -> usize {
        self.projection_matrix.nrows()
    }

    pub fn apply(&self, x: &QVector) -> Result<QVector> {
        self.projection_matrix.mul_vec(x)
    }
}

/// Image of the cone in the quotient, re-canonicalized.
pub fn pushforward_cone(q: &QuotientMap, cone: &PolyhedralCone) -> Result<PolyhedralCone> {
    check_dim(cone.dim(), q.dim())?;
    let gens = cone.generators().iter().map(|g| q.apply(g)).collect::<Result<Vec<_>>>()?;
    Ok(PolyhedralCone::from_generators(q.quotient_dim(), gens)?.canonical())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuotientVerdict {
    pub semisimple: bool,
    /// `dim I^perp`.
    pub perp_dim: usize,
    /// Dimension of the span of the positive part of `I^perp`.
    pub perp_positive_dim: usize,
    /// Positive functionals vanishing on `I` that span `I^perp`; present
    /// when semisimple.
    pub spanning_positive_set: Vec<QVector>,
    /// A functional in `I^perp` outside the span of its positive part;
    /// present when not semisimple.
    pub missing_direction: Option<QVector>,
}

/// The pushforward is semisimple iff the positive part of `I^perp` (the
/// positive functionals vanishing on `I`) spans `I^perp`. Checked against
/// the semisimplicity report of the pushforward itself.
pub fn quotient_semisimple(q: &QuotientMap, cone: &PolyhedralCone) -> Result<QuotientVerdict> {
    check_dim(cone.dim(), q.dim())?;
    let n = q.dim();
    let mut constraints: Vec<QVector> = cone.generators().to_vec();
    for k in q.kernel_basis() {
        constraints.push(k.clone());
        constraints.push(k.neg());
    }
    let positive_perp = generators_of(&constraints, n).into_list();
    let perp_dim = n - q.kernel_basis().len();
    let perp_positive_dim = rank_of(&positive_perp, n);
    let semisimple = perp_positive_dim == perp_dim;

    let direct = pushforward_cone(q, cone)?.semisimplicity_report()?.is_semisimple();
    if direct != semisimple {
        return Err(Error::Inconsistent(format!(
            "quotient criterion says {semisimple}, pushforward report says {direct}"
        )));
    }

    let (spanning_positive_set, missing_direction) = if semisimple {
        (greedy_full_rank(&positive_perp, n), None)
    } else {
        let perp_basis = q.projection().rows();
        let missing = perp_basis
            .iter()
            .find(|p| {
                let mut with = positive_perp.clone();
                with.push((*p).clone());
                rank_of(&with, n) > perp_positive_dim
            })
            .cloned();
        (Vec::new(), missing)
    };
    Ok(QuotientVerdict { semisimple, perp_dim, perp_positive_dim, spanning_positive_set, missing_direction })
}
