//! Deterministic inputs for the benchmarks.

use semisimple_core::lab::{make_gn, PiecewiseLinear};
use semisimple_core::{PolyhedralCone, QVector};

/// The cone over `count` points of the moment curve `(1, t, t^2, ...)` in
/// `Q^dim`. Every generator is extreme, so facet counts grow quickly.
pub fn moment_cone(dim: usize, count: usize) -> PolyhedralCone {
    let gens = (1..=count as i64)
        .map(|t| QVector::from_i64s(&(0..dim as u32).map(|k| t.pow(k)).collect::<Vec<_>>()))
        .collect();
    PolyhedralCone::from_generators(dim, gens).expect("moment cone is well formed")
}

/// A moment cone plus a line, so the order radical is nontrivial.
pub fn cone_with_line(dim: usize, count: usize) -> PolyhedralCone {
    let base = moment_cone(dim, count);
    let mut gens = base.generators().to_vec();
    let mut line = vec![0; dim];
    line[dim - 1] = 1;
    gens.push(QVector::from_i64s(&line));
    line[dim - 1] = -1;
    gens.push(QVector::from_i64s(&line));
    PolyhedralCone::from_generators(dim, gens).expect("well formed")
}

/// A point outside most test cones.
pub fn probe(dim: usize) -> QVector {
    QVector::from_i64s(&(0..dim as i64).map(|i| if i % 2 == 0 { -1 - i } else { 2 + i }).collect::<Vec<_>>())
}

/// The ramps `g_1 .. g_n`.
pub fn ramps(n: usize) -> Vec<PiecewiseLinear> {
    (1..=n).map(|k| make_gn(k).expect("k >= 1")).collect()
}
