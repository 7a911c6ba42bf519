//! Double description: from `{x : <a_i, x> >= 0}` to generators.
//!
//! Constraints are inserted in lexicographic order. The running cone is kept
//! as `L + cone(R)` where `L` is its lineality space (an explicit basis) and
//! `R` its extreme rays modulo `L`. A constraint that is not identically
//! zero on `L` consumes one lineality direction; otherwise the classical
//! positive/negative ray split runs, with adjacency decided by rank of the
//! jointly tight constraints.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::linalg::{clear_denominators, echelon, primitive_ints, rref_basis, QMatrix, QVector, Rational};

/// Generators of a polyhedral cone: a canonical basis of its lineality
/// space plus its extreme rays projected onto the orthogonal complement of
/// that space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generators {
    pub lineality: Vec<QVector>,
    pub rays: Vec<QVector>,
}

impl Generators {
    /// `±l` for each lineality basis vector followed by the rays, sorted in
    /// descending lexicographic order.
    pub fn into_list(self) -> Vec<QVector> {
        let mut out: Vec<QVector> = Vec::with_capacity(2 * self.lineality.len() + self.rays.len());
        for l in self.lineality {
            out.push(l.neg());
            out.push(l);
        }
        out.extend(self.rays);
        out.sort_by(|a, b| b.cmp(a));
        out
    }
}

struct Ray {
    v: Vec<BigInt>,
    /// `tight[k]` is true when constraint `k` vanishes on the ray.
    tight: Vec<bool>,
}

fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn combine(ca: &BigInt, a: &[BigInt], cb: &BigInt, b: &[BigInt]) -> Vec<BigInt> {
    primitive_ints(&a.iter().zip(b).map(|(x, y)| ca * x - cb * y).collect::<Vec<_>>())
}

fn to_ints(v: &QVector) -> Vec<BigInt> {
    primitive_ints(&clear_denominators(v.entries()))
}

fn to_qvector(v: &[BigInt]) -> QVector {
    v.iter().cloned().map(Rational::from_integer).collect()
}

/// Generators of `{x in Q^dim : <a, x> >= 0 for every a in constraints}`.
pub fn generators_of(constraints: &[QVector], dim: usize) -> Generators {
    let mut cons: Vec<Vec<BigInt>> =
        constraints.iter().map(to_ints).filter(|c| c.iter().any(|x| !x.is_zero())).collect();
    cons.sort();
    cons.dedup();

    let mut lin: Vec<Vec<BigInt>> =
        (0..dim).map(|i| (0..dim).map(|j| BigInt::from((i == j) as i32)).collect()).collect();
    let mut rays: Vec<Ray> = Vec::new();
    let mut processed: Vec<Vec<BigInt>> = Vec::new();

    for a in cons {
        if let Some(idx) = lin.iter().position(|l| !dot(&a, l).is_zero()) {
            let mut l = lin.remove(idx);
            let mut al = dot(&a, &l);
            if al.is_negative() {
                l.iter_mut().for_each(|x| *x = -&*x);
                al = -al;
            }
            for l2 in lin.iter_mut() {
                let a2 = dot(&a, l2);
                if !a2.is_zero() {
                    *l2 = combine(&al, l2, &a2, &l);
                }
            }
            for r in rays.iter_mut() {
                let ar = dot(&a, &r.v);
                if !ar.is_zero() {
                    r.v = combine(&al, &r.v, &ar, &l);
                }
                r.tight.push(true);
            }
            let mut tight = vec![true; processed.len()];
            tight.push(false);
            rays.push(Ray { v: primitive_ints(&l), tight });
            processed.push(a);
            continue;
        }

        let vals: Vec<BigInt> = rays.iter().map(|r| dot(&a, &r.v)).collect();
        // A 2-face of the pointed part is cut out by n - |L| - 2 independent
        // tight constraints.
        let target = dim - lin.len();
        let mut next: Vec<Ray> = Vec::new();
        for (i, p) in rays.iter().enumerate() {
            if !vals[i].is_positive() {
                continue;
            }
            for (j, q) in rays.iter().enumerate() {
                if !vals[j].is_negative() {
                    continue;
                }
                let common: Vec<usize> = (0..processed.len()).filter(|&k| p.tight[k] && q.tight[k]).collect();
                if target < 2 || common.len() < target - 2 {
                    continue;
                }
                let sub: Vec<Vec<BigInt>> = common.iter().map(|&k| processed[k].clone()).collect();
                if echelon(&sub, dim).pivots.len() != target - 2 {
                    continue;
                }
                let v = combine(&vals[i], &q.v, &vals[j], &p.v);
                let mut tight: Vec<bool> = (0..processed.len()).map(|k| p.tight[k] && q.tight[k]).collect();
                tight.push(true);
                next.push(Ray { v, tight });
            }
        }
        for (r, val) in rays.into_iter().zip(&vals) {
            if !val.is_negative() {
                let mut r = r;
                r.tight.push(val.is_zero());
                next.push(r);
            }
        }
        rays = next;
        processed.push(a);
    }

    let lin_q: Vec<QVector> = lin.iter().map(|l| to_qvector(l)).collect();
    let lineality = rref_basis(&lin_q, dim);
    let rays = project_out(rays.iter().map(|r| to_qvector(&r.v)).collect(), &lineality, dim);
    Generators { lineality, rays }
}

/// Projects each ray onto the orthogonal complement of `span(basis)` and
/// normalizes to primitive form, sorted descending.
fn project_out(rays: Vec<QVector>, basis: &[QVector], dim: usize) -> Vec<QVector> {
    let mut out: Vec<QVector> = if basis.is_empty() {
        rays.into_iter().map(|r| r.primitive()).collect()
    } else {
        let b = QMatrix::from_rows(dim, basis.to_vec()).expect("basis dims");
        let gram = b.mul(&b.transpose()).expect("gram dims");
        rays.into_iter()
            .map(|r| {
                let rhs = b.mul_vec(&r).expect("ray dims");
                let coef = gram.solve(&rhs).expect("gram dims").expect("gram matrix of a basis is invertible");
                let mut proj = r;
                for (c, bv) in coef.iter().zip(basis) {
                    proj = proj.sub(&bv.scale(c));
                }
                proj.primitive()
            })
            .collect()
    };
    out.sort_by(|a, b| b.cmp(a));
    out.dedup();
    out
}

/// Whether every constraint is satisfied by `x`.
pub(crate) fn satisfies(constraints: &[QVector], x: &QVector) -> bool {
    constraints.iter().all(|h| !h.dot(x).is_negative())
}
