#![allow(dead_code)]

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use semisimple_core::linalg::rank_of;
use semisimple_core::lp::{LinearProgram, LpOutcome, Relation, StandardForm};
use semisimple_core::{rat, PolyhedralCone, QVector, Rational};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_vector(rng: &mut ChaCha8Rng, dim: usize, bound: i64) -> QVector {
    QVector::from_i64s(&(0..dim).map(|_| rng.gen_range(-bound..=bound)).collect::<Vec<_>>())
}

pub fn random_nonzero_vector(rng: &mut ChaCha8Rng, dim: usize, bound: i64) -> QVector {
    loop {
        let v = random_vector(rng, dim, bound);
        if !v.is_zero() {
            return v;
        }
    }
}

/// A random cone in dimension `1..=max_dim`: mostly finitely generated by
/// up to `max_gens` vectors with entries in `[-3, 3]`, sometimes the zero
/// cone, the whole space, or an intersection of halfspaces.
pub fn random_cone(rng: &mut ChaCha8Rng, max_dim: usize, max_gens: usize) -> PolyhedralCone {
    let dim = rng.gen_range(1..=max_dim);
    match rng.gen_range(0..10) {
        0 => PolyhedralCone::zero(dim),
        1 => PolyhedralCone::full_space(dim),
        2 => {
            let k = rng.gen_range(1..=dim + 2);
            let hs = (0..k).map(|_| random_vector(rng, dim, 3)).collect();
            PolyhedralCone::from_halfspaces(dim, hs).unwrap()
        }
        _ => {
            let k = rng.gen_range(1..=max_gens);
            let gens = (0..k).map(|_| random_vector(rng, dim, 3)).collect();
            PolyhedralCone::from_generators(dim, gens).unwrap()
        }
    }
}

/// Hand-picked edge cases followed by random cones.
pub fn corpus(seed: u64, count: usize, max_dim: usize, max_gens: usize) -> Vec<PolyhedralCone> {
    let mut cones = vec![
        PolyhedralCone::zero(1),
        PolyhedralCone::zero(3),
        PolyhedralCone::full_space(1),
        PolyhedralCone::full_space(4),
        PolyhedralCone::nonnegative_orthant(3),
        PolyhedralCone::from_halfspaces(2, vec![QVector::from_i64s(&[1, 0])]).unwrap(),
        PolyhedralCone::from_generators(2, vec![QVector::from_i64s(&[1, 1]), QVector::from_i64s(&[-1, -1])]).unwrap(),
    ];
    let mut r = rng(seed);
    while cones.len() < count {
        cones.push(random_cone(&mut r, max_dim, max_gens));
    }
    cones
}

/// A random nonnegative combination of the generators.
pub fn random_member(rng: &mut ChaCha8Rng, cone: &PolyhedralCone) -> QVector {
    let mut x = QVector::zeros(cone.dim());
    for g in cone.generators() {
        let w = rat(rng.gen_range(0..=3)) / rat(rng.gen_range(1..=3));
        x = x.add(&g.scale(&w));
    }
    x
}

/// Whether `x` is a nonnegative combination of `gens`, by a feasibility LP.
pub fn lp_contains(dim: usize, gens: &[QVector], x: &QVector) -> bool {
    let mut lp = LinearProgram::new(gens.len());
    for i in 0..dim {
        lp.add_constraint(gens.iter().map(|g| g[i].clone()).collect(), Relation::Eq, x[i].clone());
    }
    !matches!(lp.solve(), LpOutcome::Infeasible)
}

/// Whether the cone contains no line: the only nonnegative combination of
/// the nonzero generators equal to zero is the trivial one.
pub fn lp_is_pointed(cone: &PolyhedralCone) -> bool {
    let gens: Vec<&QVector> = cone.generators().iter().filter(|g| !g.is_zero()).collect();
    if gens.is_empty() {
        return true;
    }
    let mut lp = LinearProgram::new(gens.len());
    lp.set_objective(vec![-Rational::one(); gens.len()]);
    for i in 0..cone.dim() {
        lp.add_constraint(gens.iter().map(|g| g[i].clone()).collect(), Relation::Eq, Rational::zero());
    }
    lp.add_constraint(vec![Rational::one(); gens.len()], Relation::Le, Rational::one());
    match lp.solve() {
        LpOutcome::Optimal { value, .. } => value.is_zero(),
        other => panic!("pointedness LP is feasible and bounded, got {other:?}"),
    }
}

/// Minimum of `c.x` over the basic feasible solutions of `A x = b, x >= 0`,
/// by enumerating every set of `rank(A)` columns and solving each square
/// system by Cramer's rule in fixed-width integers. `None` when no basic
/// solution is feasible.
pub fn vertex_enumeration_min(sf: &StandardForm) -> Option<Rational> {
    let n = sf.a.ncols();
    let rows: Vec<QVector> = sf.a.rows().to_vec();
    let augmented: Vec<QVector> =
        rows.iter().zip(sf.b.iter()).map(|(row, b)| QVector::new(row.iter().chain([b]).cloned().collect())).collect();
    if rank_of(&augmented, n + 1) > rank_of(&rows, n) {
        return None;
    }
    // the system is consistent, so a maximal independent set of rows suffices
    let mut kept: Vec<usize> = Vec::new();
    for i in 0..rows.len() {
        kept.push(i);
        let chosen: Vec<QVector> = kept.iter().map(|&k| rows[k].clone()).collect();
        if rank_of(&chosen, n) < kept.len() {
            kept.pop();
        }
    }
    let r = kept.len();
    if r == 0 {
        return Some(Rational::zero());
    }
    // clear denominators row by row
    let (a, b): (Vec<Vec<i128>>, Vec<i128>) = kept
        .iter()
        .map(|&i| {
            let row = sf.a.row(i);
            let l = row.iter().chain([&sf.b[i]]).fold(BigInt::one(), |l, v| l.lcm(v.denom()));
            let int = |v: &Rational| (v * Rational::from_integer(l.clone())).to_integer().to_i128().unwrap();
            (row.iter().map(int).collect(), int(&sf.b[i]))
        })
        .unzip();

    let mut best: Option<Rational> = None;
    let mut cols: Vec<usize> = (0..r).collect();
    loop {
        if let Some(y) = cramer(&a, &b, &cols) {
            let value: Rational = cols.iter().zip(&y).map(|(&j, v)| &sf.c[j] * v).sum();
            if best.as_ref().is_none_or(|b| value < *b) {
                best = Some(value);
            }
        }
        // next r-subset of 0..n in lexicographic order
        let Some(k) = (0..r).rev().find(|&k| cols[k] < n - r + k) else { break };
        cols[k] += 1;
        for t in k + 1..r {
            cols[t] = cols[t - 1] + 1;
        }
    }
    best
}

/// The solution of `A[:, cols] y = b` if that square system is nonsingular
/// and its solution is nonnegative.
fn cramer(a: &[Vec<i128>], b: &[i128], cols: &[usize]) -> Option<Vec<Rational>> {
    let square = |replace: Option<usize>| -> Vec<Vec<i128>> {
        a.iter()
            .zip(b)
            .map(|(row, &bi)| {
                cols.iter().enumerate().map(|(k, &j)| if Some(k) == replace { bi } else { row[j] }).collect()
            })
            .collect()
    };
    let d = bareiss_det(square(None));
    if d == 0 {
        return None;
    }
    let mut y = Vec::with_capacity(cols.len());
    for k in 0..cols.len() {
        let dk = bareiss_det(square(Some(k)));
        if dk != 0 && (dk < 0) != (d < 0) {
            return None;
        }
        y.push(Rational::new(BigInt::from(dk), BigInt::from(d)));
    }
    Some(y)
}

fn bareiss_det(mut m: Vec<Vec<i128>>) -> i128 {
    let n = m.len();
    let mut sign = 1;
    let mut prev = 1i128;
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| m[i][k] != 0) else { return 0 };
        if p != k {
            m.swap(p, k);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = m[i][j]
                    .checked_mul(m[k][k])
                    .and_then(|x| x.checked_sub(m[i][k].checked_mul(m[k][j])?))
                    .expect("determinant overflow");
                m[i][j] = v / prev;
            }
        }
        prev = m[k][k];
    }
    sign * m[n - 1][n - 1]
}

/// Determinant by cofactor expansion along the first row.
pub fn det(m: &[Vec<Rational>]) -> Rational {
    match m.len() {
        0 => Rational::one(),
        1 => m[0][0].clone(),
        n => (0..n)
            .filter(|&j| !m[0][j].is_zero())
            .map(|j| {
                let minor: Vec<Vec<Rational>> = m[1..]
                    .iter()
                    .map(|row| row.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, v)| v.clone()).collect())
                    .collect();
                let term = &m[0][j] * det(&minor);
                if j % 2 == 0 {
                    term
                } else {
                    -term
                }
            })
            .sum(),
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// Rank as the size of the largest nonvanishing minor.
pub fn brute_rank(rows: &[QVector], ncols: usize) -> usize {
    let nrows = rows.len();
    for k in (1..=nrows.min(ncols)).rev() {
        for rs in subsets(nrows, k) {
            for cs in subsets(ncols, k) {
                let minor: Vec<Vec<Rational>> =
                    rs.iter().map(|&i| cs.iter().map(|&j| rows[i][j].clone()).collect()).collect();
                if !det(&minor).is_zero() {
                    return k;
                }
            }
        }
    }
    0
}

/// Prints one gate line and returns whether it passed.
pub fn report(name: &str, ok: bool, detail: &str) -> bool {
    println!("[{}] {:<32} {}", if ok { "PASS" } else { "FAIL" }, name, detail);
    ok
}
