//! Floating-point demo: `g_n(x) = g(nx)/n` with `g(x) = (1 + sin x)/2` is
//! Cauchy for `sup_[0,1] |h| + |h'(0)|`, yet every `g_n` has norm at least
//! `1/2`, so the sequence has no limit among the `C^1` functions.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const GRID_POINTS: usize = 100_000;
pub const TOLERANCE: f64 = 1e-9;

fn g_n(n: usize, x: f64) -> f64 {
    let n = n as f64;
    (1.0 + (n * x).sin()) / 2.0 / n
}

fn dg_n(n: usize, x: f64) -> f64 {
    (n as f64 * x).cos() / 2.0
}

fn grid() -> impl Iterator<Item = f64> {
    (0..=GRID_POINTS).map(|i| i as f64 / GRID_POINTS as f64)
}

fn norm_e(h: impl Fn(f64) -> f64, dh0: f64) -> f64 {
    grid().map(|x| h(x).abs()).fold(0.0, f64::max) + dh0.abs()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CompletionRow {
    pub n: usize,
    pub m: usize,
    pub value: f64,
    pub bound: f64,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CompletionReport {
    pub approximate: bool,
    pub grid_points: usize,
    pub tolerance: f64,
    pub rows: Vec<CompletionRow>,
    /// `||g_n||` for `n = 1..=n_max`.
    pub norms: Vec<f64>,
    pub cauchy_holds: bool,
    pub bounded_below: bool,
}

pub fn completion_cauchy_demo(n_max: usize) -> Result<CompletionReport> {
    if n_max < 2 {
        return Err(Error::Precondition("n_max must be at least 2".into()));
    }
    let mut rows = Vec::new();
    for n in 1..n_max {
        for m in n + 1..=n_max {
            let value = norm_e(|x| g_n(n, x) - g_n(m, x), dg_n(n, 0.0) - dg_n(m, 0.0));
            let bound = 1.0 / n as f64 + 1.0 / m as f64;
            rows.push(CompletionRow { n, m, value, bound, holds: value <= bound + TOLERANCE });
        }
    }
    let norms: Vec<f64> = (1..=n_max).map(|n| norm_e(|x| g_n(n, x), dg_n(n, 0.0))).collect();
    Ok(CompletionReport {
        approximate: true,
        grid_points: GRID_POINTS,
        tolerance: TOLERANCE,
        cauchy_holds: rows.iter().all(|r| r.holds),
        bounded_below: norms.iter().all(|&v| v >= 0.5 - TOLERANCE),
        rows,
        norms,
    })
}
