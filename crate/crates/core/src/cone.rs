//! Polyhedral cones in dual representation and the order-theoretic
//! quantities attached to them: dual cone, bipolar, lineality, supporting
//! hyperplanes, order radical and the semisimplicity verdict.
//!
//! In finite dimension every polyhedral cone is closed and the weak and
//! norm topologies agree, so the weak closure is the cone itself and the
//! topological and algebraic radicals coincide. Regularity and
//! semisimplicity are then the same property; the report states it once.

use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::dd::{self, generators_of};
use crate::error::{Error, Result};
use crate::linalg::{check_dim, rank_of, rref_basis, QMatrix, QVector};
use crate::lp::{LinearProgram, LpOutcome, Relation};

/// A convex cone `cone(generators)` in `Q^dim`. An empty generator list is
/// the cone `{0}`. The halfspace list `h` (meaning `<x, h> >= 0`) is
/// computed on first use and equals the canonical generators of the dual.
#[derive(Clone, Debug)]
pub struct PolyhedralCone {
    dim: usize,
    generators: Vec<QVector>,
    halfspaces: OnceLock<Vec<QVector>>,
}

impl PolyhedralCone {
    pub fn from_generators(dim: usize, generators: Vec<QVector>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::Precondition("cone dimension must be positive".into()));
        }
        for g in &generators {
            check_dim(dim, g.dim())?;
        }
        Ok(PolyhedralCone { dim, generators, halfspaces: OnceLock::new() })
    }

    /// `{x : <x, h> >= 0 for all h}`, converted to generators by double
    /// description.
    pub fn from_halfspaces(dim: usize, halfspaces: Vec<QVector>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::Precondition("cone dimension must be positive".into()));
        }
        for h in &halfspaces {
            check_dim(dim, h.dim())?;
        }
        let gens = generators_of(&halfspaces, dim).into_list();
        Ok(PolyhedralCone { dim, generators: gens, halfspaces: OnceLock::new() })
    }

    /// Builds from both representations after checking that they describe
    /// the same set.
    pub fn from_both(dim: usize, generators: Vec<QVector>, halfspaces: Vec<QVector>) -> Result<Self> {
        let v = Self::from_generators(dim, generators)?;
        let h = Self::from_halfspaces(dim, halfspaces)?;
        if !v.set_eq(&h)? {
            return Err(Error::Precondition("generators and halfspaces describe different cones".into()));
        }
        Ok(v)
    }

    pub fn nonnegative_orthant(dim: usize) -> Self {
        Self::from_generators(dim, (0..dim).map(|i| QVector::unit(dim, i)).collect()).expect("orthant is well formed")
    }

    pub fn full_space(dim: usize) -> Self {
        let gens = (0..dim).flat_map(|i| [QVector::unit(dim, i), QVector::unit(dim, i).neg()]).collect();
        Self::from_generators(dim, gens).expect("full space is well formed")
    }

    pub fn zero(dim: usize) -> Self {
        Self::from_generators(dim, Vec::new()).expect("zero cone is well formed")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> &[QVector] {
        &self.generators
    }

    /// Canonical H-representation: the generators of the dual cone.
    pub fn halfspaces(&self) -> &[QVector] {
        self.halfspaces.get_or_init(|| generators_of(&self.generators, self.dim).into_list())
    }

    /// Same set with canonical generators: primitive integer extreme rays
    /// orthogonal to the lineality space plus `±` a reduced basis of it.
    pub fn canonical(&self) -> PolyhedralCone {
        let hs = self.halfspaces().to_vec();
        let gens = generators_of(&hs, self.dim).into_list();
        let lock = OnceLock::new();
        let _ = lock.set(hs);
        PolyhedralCone { dim: self.dim, generators: gens, halfspaces: lock }
    }

    /// The dual cone `{phi : <x, phi> >= 0 for all x in self}`.
    pub fn dual(&self) -> PolyhedralCone {
        PolyhedralCone { dim: self.dim, generators: self.halfspaces().to_vec(), halfspaces: OnceLock::new() }
    }

    /// Dual of the dual. Equal to `self` as a set, since polyhedral cones
    /// are closed.
    pub fn bipolar(&self) -> PolyhedralCone {
        self.dual().dual()
    }

    pub fn contains(&self, x: &QVector) -> Result<bool> {
        check_dim(self.dim, x.dim())?;
        Ok(dd::satisfies(self.halfspaces(), x))
    }

    /// Set equality by mutual containment of generators.
    pub fn set_eq(&self, other: &PolyhedralCone) -> Result<bool> {
        check_dim(self.dim, other.dim)?;
        Ok(self.generators.iter().all(|g| dd::satisfies(other.halfspaces(), g))
            && other.generators.iter().all(|g| dd::satisfies(self.halfspaces(), g)))
    }

    /// Basis of `self ∩ -self`, computed from the generators alone: it is
    /// spanned by the generators `g` with `-g` in the cone, each tested by
    /// an exact feasibility LP.
    pub fn lineality_space(&self) -> Vec<QVector> {
        let reversible: Vec<QVector> = self
            .generators
            .iter()
            .filter(|g| !g.is_zero() && in_conic_hull(&self.generators, &g.neg()))
            .cloned()
            .collect();
        rref_basis(&reversible, self.dim)
    }

    pub fn is_proper(&self) -> bool {
        self.lineality_space().is_empty()
    }

    /// Normals of the closed supporting hyperplanes: the generators of the
    /// dual cone. Every nonzero positive functional is a nonnegative
    /// combination of them.
    pub fn supporting_hyperplanes(&self) -> Vec<QVector> {
        self.halfspaces().to_vec()
    }

    /// Basis of the order radical: the common kernel of all positive
    /// functionals.
    pub fn order_radical(&self) -> Vec<QVector> {
        if self.halfspaces().is_empty() {
            return (0..self.dim).map(|i| QVector::unit(self.dim, i)).collect();
        }
        QMatrix::from_rows(self.dim, self.halfspaces().to_vec())
            .expect("halfspaces share the cone dimension")
            .kernel_basis()
    }

    /// Evaluates the three semisimplicity criteria by separate routes and
    /// fails if they disagree.
    pub fn semisimplicity_report(&self) -> Result<SemisimplicityReport> {
        let dual_gens = self.halfspaces();
        let separates_points = rank_of(dual_gens, self.dim) == self.dim;
        let weak_closure_proper = self.bipolar().lineality_space().is_empty();
        let radical_basis = self.order_radical();
        let hyperplane_intersection_trivial = radical_basis.is_empty();

        if separates_points != weak_closure_proper || separates_points != hyperplane_intersection_trivial {
            return Err(Error::Inconsistent(format!(
                "semisimplicity criteria disagree: separates={separates_points}, \
                 closure_proper={weak_closure_proper}, radical_trivial={hyperplane_intersection_trivial}"
            )));
        }
        let separating_set = if separates_points { greedy_full_rank(dual_gens, self.dim) } else { Vec::new() };
        Ok(SemisimplicityReport {
            separates_points,
            weak_closure_proper,
            hyperplane_intersection_trivial,
            radical_basis,
            separating_set,
        })
    }
}

/// Outcome of the semisimplicity test. In finite dimension semisimple and
/// regular coincide.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SemisimplicityReport {
    /// The dual cone separates points.
    pub separates_points: bool,
    /// The (weak) closure of the cone is proper.
    pub weak_closure_proper: bool,
    /// The closed supporting hyperplanes meet only in zero.
    pub hyperplane_intersection_trivial: bool,
    pub radical_basis: Vec<QVector>,
    /// Positive functionals with trivial common kernel; empty unless
    /// semisimple.
    pub separating_set: Vec<QVector>,
}

impl SemisimplicityReport {
    pub fn is_semisimple(&self) -> bool {
        self.separates_points
    }
}

/// First vector, then every vector that raises the rank, in input order.
pub(crate) fn greedy_full_rank(vectors: &[QVector], dim: usize) -> Vec<QVector> {
    let mut chosen: Vec<QVector> = Vec::new();
    for v in vectors {
        if chosen.len() == dim {
            break;
        }
        chosen.push(v.clone());
        if rank_of(&chosen, dim) < chosen.len() {
            chosen.pop();
        }
    }
    chosen
}

/// Whether `x` is a nonnegative combination of `gens`.
pub(crate) fn in_conic_hull(gens: &[QVector], x: &QVector) -> bool {
    if x.is_zero() {
        return true;
    }
    if gens.is_empty() {
        return false;
    }
    let mut lp = LinearProgram::new(gens.len());
    for i in 0..x.dim() {
        lp.add_constraint(gens.iter().map(|g| g[i].clone()).collect(), Relation::Eq, x[i].clone());
    }
    matches!(lp.solve(), LpOutcome::Optimal { .. })
}
