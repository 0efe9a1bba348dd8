//! Incremental double description for homogeneous cones.
//!
//! Computes generators (extreme rays and a lineality basis) of
//! `{z : ⟨a, z⟩ ≥ 0 for every a in ineqs, ⟨e, z⟩ = 0 for every e in eqs}`.
//! Lineality is eliminated as constraints arrive, so the ray set is always
//! the minimal one modulo the current lineality space and the combinatorial
//! adjacency test applies.

use fixedbitset::FixedBitSet;
use num_traits::{Signed, Zero};

use crate::exact::{QMatrix, QVector, Rat};

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub(crate) struct ConeGenerators {
    /// Primitive integer extreme rays, reduced modulo `lineality`, sorted.
    pub rays: Vec<QVector>,
    /// Integer rows in reduced echelon shape (positive pivots).
    pub lineality: Vec<QVector>,
}

struct Ray {
    v: QVector,
    zeros: FixedBitSet,
}

pub(crate) fn cone_generators(dim: usize, ineqs: &[QVector], eqs: &[QVector]) -> ConeGenerators {
    let mut lineality: Vec<QVector> = if eqs.is_empty() {
        (0..dim).map(|i| QVector::unit(dim, i)).collect()
    } else {
        QMatrix::new(eqs.to_vec(), dim).kernel()
    };
    let mut rays: Vec<Ray> = Vec::new();
    let m = ineqs.len();

    for (k, a) in ineqs.iter().enumerate() {
        if let Some(pos) = lineality.iter().position(|l| !a.dot(l).is_zero()) {
            let mut l = lineality.swap_remove(pos);
            let mut al = a.dot(&l);
            if al.is_negative() {
                l = l.neg();
                al = -al;
            }
            let project = |x: &QVector| {
                let ax = a.dot(x);
                if ax.is_zero() {
                    x.clone()
                } else {
                    x.axpy(&(-(ax / &al)), &l)
                }
            };
            for other in lineality.iter_mut() {
                *other = project(other).primitive_direction();
            }
            for r in rays.iter_mut() {
                r.v = project(&r.v).primitive_direction();
                r.zeros.insert(k);
            }
            let mut zeros = FixedBitSet::with_capacity(m);
            zeros.insert_range(..k);
            rays.push(Ray { v: l.primitive_direction(), zeros });
            continue;
        }

        let values: Vec<Rat> = rays.iter().map(|r| a.dot(&r.v)).collect();
        if values.iter().all(|v| !v.is_negative()) {
            for (r, v) in rays.iter_mut().zip(&values) {
                if v.is_zero() {
                    r.zeros.insert(k);
                }
            }
            continue;
        }

        let pos: Vec<usize> = (0..rays.len()).filter(|&i| values[i].is_positive()).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&i| values[i].is_negative()).collect();
        let mut next: Vec<Ray> = Vec::new();
        for &p in &pos {
            for &n in &neg {
                let mut common = rays[p].zeros.clone();
                common.intersect_with(&rays[n].zeros);
                let adjacent = rays
                    .iter()
                    .enumerate()
                    .all(|(i, r)| i == p || i == n || !common.is_subset(&r.zeros));
                if !adjacent {
                    continue;
                }
                let v = rays[n]
                    .v
                    .scale(&values[p])
                    .axpy(&(-values[n].clone()), &rays[p].v)
                    .primitive_direction();
                common.insert(k);
                next.push(Ray { v, zeros: common });
            }
        }
        let old = std::mem::take(&mut rays);
        for (mut r, v) in old.into_iter().zip(values) {
            if v.is_zero() {
                r.zeros.insert(k);
                rays.push(r);
            } else if v.is_positive() {
                rays.push(r);
            }
        }
        rays.extend(next);
    }

    canonicalize(dim, rays.into_iter().map(|r| r.v).collect(), lineality)
}

fn canonicalize(dim: usize, rays: Vec<QVector>, lineality: Vec<QVector>) -> ConeGenerators {
    let (basis, pivots) = if lineality.is_empty() {
        (Vec::new(), Vec::new())
    } else {
        QMatrix::new(lineality, dim).rref()
    };
    let mut out_rays: Vec<QVector> = rays
        .into_iter()
        .map(|mut r| {
            for (row, &p) in basis.iter().zip(&pivots) {
                if !r[p].is_zero() {
                    let f = -r[p].clone();
                    r = r.axpy(&f, row);
                }
            }
            r.primitive_direction()
        })
        .filter(|r| !r.is_zero())
        .collect();
    out_rays.sort();
    out_rays.dedup();
    let lineality = basis.iter().map(QVector::primitive_direction).collect();
    ConeGenerators { rays: out_rays, lineality }
}
