//! Finite representations `T : E -> R^Omega`, stored by their transpose:
//! row `omega` of the matrix is the functional `T^t(omega)`, so that
//! `T(x)(omega) = <x, T^t(omega)>`. `R^Omega` carries the componentwise
//! order.

use serde::{Deserialize, Serialize};

use crate::cone::{greedy_full_rank, PolyhedralCone};
use crate::error::{Error, Result};
use crate::linalg::{check_dim, QMatrix, QVector, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteRepresentation {
    matrix: QMatrix,
    omega_labels: Vec<String>,
    domain_dim: usize,
}

/// JSON form: `{"domain_dim": n, "rows": [...], "labels": [...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RepresentationFile {
    pub domain_dim: usize,
    pub rows: Vec<QVector>,
    pub labels: Vec<String>,
}

impl FiniteRepresentation {
    pub fn new(domain_dim: usize, rows: Vec<QVector>, labels: Vec<String>) -> Result<Self> {
        if domain_dim == 0 {
            return Err(Error::Precondition("domain dimension must be positive".into()));
        }
        if rows.len() != labels.len() {
            return Err(Error::Precondition(format!("{} rows but {} labels", rows.len(), labels.len())));
        }
        let matrix = QMatrix::from_rows(domain_dim, rows)?;
        Ok(FiniteRepresentation { matrix, omega_labels: labels, domain_dim })
    }

    /// Rows labelled `phi1`, `phi2`, ...
    pub fn with_default_labels(domain_dim: usize, rows: Vec<QVector>) -> Result<Self> {
        let labels = (1..=rows.len()).map(|i| format!("phi{i}")).collect();
        Self::new(domain_dim, rows, labels)
    }

    pub fn matrix(&self) -> &QMatrix {
        &self.matrix
    }

    pub fn rows(&self) -> &[QVector] {
        self.matrix.rows()
    }

    pub fn labels(&self) -> &[String] {
        &self.omega_labels
    }

    pub fn domain_dim(&self) -> usize {
        self.domain_dim
    }

    /// `T(x) = (<x, T^t(omega)>)_omega`.
    pub fn apply(&self, x: &QVector) -> Result<QVector> {
        self.matrix.mul_vec(x)
    }

    /// The transpose `omega -> T^t(omega)` as an explicit table.
    pub fn transpose_map(&self) -> Vec<(String, QVector)> {
        self.omega_labels.iter().cloned().zip(self.matrix.rows().iter().cloned()).collect()
    }

    /// Rebuilds `T` from a map `f : Omega -> E'` by evaluating
    /// `T(e_j)(omega) = f(omega)(e_j)` on the standard basis.
    pub fn from_transpose_map(domain_dim: usize, f: &[(String, QVector)]) -> Result<Self> {
        for (_, phi) in f {
            check_dim(domain_dim, phi.dim())?;
        }
        let columns: Vec<QVector> = (0..domain_dim)
            .map(|j| {
                let e = QVector::unit(domain_dim, j);
                f.iter().map(|(_, phi)| phi.dot(&e)).collect()
            })
            .collect();
        let rows = (0..f.len()).map(|w| columns.iter().map(|c| c[w].clone()).collect()).collect();
        Self::new(domain_dim, rows, f.iter().map(|(l, _)| l.clone()).collect())
    }

    /// `T -> T^t -> (T^t)^t`; always equal to `self`.
    pub fn transpose_roundtrip(&self) -> Result<Self> {
        Self::from_transpose_map(self.domain_dim, &self.transpose_map())
    }

    /// `max_omega |T(x)(omega)|`, the seminorm induced by sup-norm on
    /// `R^Omega`. Zero for an empty `Omega`.
    pub fn sup_seminorm(&self, x: &QVector) -> Result<Rational> {
        Ok(self.apply(x)?.norm_inf())
    }

    pub fn to_file(&self) -> RepresentationFile {
        RepresentationFile {
            domain_dim: self.domain_dim,
            rows: self.matrix.rows().to_vec(),
            labels: self.omega_labels.clone(),
        }
    }

    pub fn from_file(file: RepresentationFile) -> Result<Self> {
        Self::new(file.domain_dim, file.rows, file.labels)
    }

    /// Injectivity, positivity and bipositivity with respect to `cone`.
    /// Bipositivity is decided twice: as `T^-1[R^Omega_+] = cone`, and as
    /// `cone(rows) = dual(cone)`; the routes must agree.
    pub fn verify(&self, cone: &PolyhedralCone) -> Result<RepresentationVerdict> {
        check_dim(cone.dim(), self.domain_dim)?;
        let injective = self.matrix.rank() == self.domain_dim;
        let dual = cone.dual();
        let mut positive = true;
        for row in self.rows() {
            positive &= dual.contains(row)?;
        }
        let pullback_cone = PolyhedralCone::from_halfspaces(self.domain_dim, self.rows().to_vec())?;
        let by_pullback = cone.set_eq(&pullback_cone)?;
        let row_cone = PolyhedralCone::from_generators(self.domain_dim, self.rows().to_vec())?;
        let by_dual = dual.set_eq(&row_cone)?;
        if by_pullback != by_dual {
            return Err(Error::Inconsistent(format!(
                "bipositivity routes disagree: pullback={by_pullback}, dual={by_dual}"
            )));
        }
        if by_pullback && !positive {
            return Err(Error::Inconsistent("bipositive but not positive".into()));
        }
        if by_pullback && injective != cone.is_proper() {
            return Err(Error::Inconsistent("bipositive map must be injective exactly when the cone is proper".into()));
        }
        Ok(RepresentationVerdict { injective, positive, bipositive: by_pullback, pullback_cone })
    }
}

#[derive(Clone, Debug)]
pub struct RepresentationVerdict {
    pub injective: bool,
    pub positive: bool,
    pub bipositive: bool,
    /// `T^-1[R^Omega_+] = {x : T(x) >= 0}`.
    pub pullback_cone: PolyhedralCone,
}

#[derive(Clone, Debug)]
pub enum Synthesis {
    Found(FiniteRepresentation),
    /// No representation with the requested properties exists.
    /// `certificate` spans the obstruction (the order radical for positive
    /// injective maps, the lineality space for bipositive injective maps).
    /// `fallback` is the best available non-injective representation, if any.
    Infeasible {
        certificate: Vec<QVector>,
        fallback: Option<FiniteRepresentation>,
    },
}

impl Synthesis {
    pub fn representation(&self) -> Option<&FiniteRepresentation> {
        match self {
            Synthesis::Found(r) => Some(r),
            Synthesis::Infeasible { .. } => None,
        }
    }

    pub fn is_found(&self) -> bool {
        matches!(self, Synthesis::Found(_))
    }
}

/// An injective positive representation, which exists exactly when the
/// cone is semisimple. Rows are picked greedily from the dual generators in
/// canonical order, keeping each one that raises the rank.
pub fn synthesize_positive(cone: &PolyhedralCone) -> Result<Synthesis> {
    let report = cone.semisimplicity_report()?;
    if !report.is_semisimple() {
        return Ok(Synthesis::Infeasible { certificate: report.radical_basis, fallback: None });
    }
    let rows = greedy_full_rank(cone.halfspaces(), cone.dim());
    Ok(Synthesis::Found(FiniteRepresentation::with_default_labels(cone.dim(), rows)?))
}

/// An injective bipositive representation, which exists exactly when the
/// cone is proper. Uses every dual generator, so `cone(rows)` is the whole
/// dual cone by construction. For a non-proper cone the same rows still
/// give a bipositive but non-injective map, returned as the fallback.
pub fn synthesize_bipositive(cone: &PolyhedralCone) -> Result<Synthesis> {
    let rep = FiniteRepresentation::with_default_labels(cone.dim(), cone.halfspaces().to_vec())?;
    let lineality = cone.lineality_space();
    if lineality.is_empty() {
        Ok(Synthesis::Found(rep))
    } else {
        Ok(Synthesis::Infeasible { certificate: lineality, fallback: Some(rep) })
    }
}

/// Whether `sup|T x| <= sup|T y|`. For a positive `T` this holds whenever
/// `0 <= x <= y` in the cone order, since then `0 <= T x <= T y`.
pub fn seminorm_is_monotone_on(rep: &FiniteRepresentation, x: &QVector, y: &QVector) -> Result<bool> {
    Ok(rep.sup_seminorm(x)? <= rep.sup_seminorm(y)?)
}
