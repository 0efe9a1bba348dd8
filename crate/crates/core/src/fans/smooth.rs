use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::cone::Cone;
use super::fan::Fan;
use crate::error::{Error, Result};
use crate::exact::{linear_solve, rank_of, QMatrix, QVector, Rat, SolutionDescriptor};

pub const SMOOTH_DIM_CAP: usize = 4;
pub const DEFAULT_REFINE_BUDGET: usize = 10_000;
const PARALLELEPIPED_LIMIT: usize = 4_000_000;

/// Simplicial with rays forming part of a lattice basis.
pub fn is_smooth(c: &Cone) -> bool {
    c.is_simplicial() && c.multiplicity().is_one()
}

pub fn is_smooth_fan(f: &Fan) -> bool {
    f.maximal_cones().iter().all(is_smooth)
}

/// Placing triangulation of one cone, adding rays in lexicographic order.
fn place(c: &Cone) -> Vec<Cone> {
    let rays = c.rays();
    if rays.len() <= c.dim() {
        return vec![c.clone()];
    }
    let n = c.ambient_dim();
    let mut simplices: Vec<Vec<QVector>> = vec![vec![rays[0].clone()]];
    let mut used = vec![rays[0].clone()];
    for r in &rays[1..] {
        let before = rank_of(&used);
        used.push(r.clone());
        if rank_of(&used) > before {
            for s in simplices.iter_mut() {
                s.push(r.clone());
            }
            continue;
        }
        let current = Cone::from_generators(n, &used[..used.len() - 1]).expect("subcone of a pointed cone");
        let mut added = Vec::new();
        for s in &simplices {
            for drop in 0..s.len() {
                let facet: Vec<QVector> =
                    s.iter().enumerate().filter(|&(i, _)| i != drop).map(|(_, x)| x.clone()).collect();
                let visible = current
                    .facet_normals()
                    .iter()
                    .find(|u| facet.iter().all(|x| u.dot(x).is_zero()))
                    .is_some_and(|u| u.dot(r).is_negative());
                if visible {
                    let mut t = facet;
                    t.push(r.clone());
                    added.push(t);
                }
            }
        }
        simplices.extend(added);
    }
    simplices
        .into_iter()
        .map(|s| Cone::from_generators(n, &s).expect("subcone of a pointed cone"))
        .collect()
}

/// Triangulates every maximal cone with a common ray order, so the pieces fit
/// together along shared faces.
pub fn triangulate(f: &Fan) -> Fan {
    let cones = f.maximal_cones().iter().flat_map(place).collect();
    Fan::new(f.ambient_dim(), cones)
}

fn to_i64(v: &QVector) -> Vec<i64> {
    v.to_i64().expect("ray entries fit in i64")
}

/// Nonzero primitive lattice points `Σ tᵢ rᵢ` with all `tᵢ ∈ [0, 1)`.
fn parallelepiped_points(c: &Cone, mult: &BigInt) -> Result<Vec<QVector>> {
    let m = mult.to_i64().expect("multiplicity fits in i64");
    let k = c.rays().len();
    let total = (m as u128).checked_pow(k as u32).unwrap_or(u128::MAX);
    if total > PARALLELEPIPED_LIMIT as u128 {
        return Err(Error::EnumerationBudget { limit: PARALLELEPIPED_LIMIT });
    }
    let rays: Vec<Vec<i64>> = c.rays().iter().map(to_i64).collect();
    let n = c.ambient_dim();
    let mut out = Vec::new();
    let mut a = vec![0i64; k];
    loop {
        let sum: Vec<i64> = (0..n).map(|j| (0..k).map(|i| a[i] * rays[i][j]).sum()).collect();
        if a.iter().any(|&x| x != 0) && sum.iter().all(|&x| x % m == 0) {
            let p = QVector::from_ints(&sum.iter().map(|x| x / m).collect::<Vec<_>>());
            if p.primitive_direction() == p {
                out.push(p);
            }
        }
        let Some(i) = (0..k).find(|&i| a[i] + 1 < m) else { break };
        a[i] += 1;
        a[..i].iter_mut().for_each(|x| *x = 0);
    }
    out.sort();
    Ok(out)
}

fn coordinates(c: &Cone, p: &QVector) -> QVector {
    match linear_solve(&QMatrix::from_columns(c.rays(), c.ambient_dim()), p) {
        SolutionDescriptor::Consistent { particular, .. } => particular,
        SolutionDescriptor::Inconsistent => unreachable!("point lies in the cone"),
    }
}

/// Smooth refinement with the default subdivision budget.
pub fn smooth_refine(f: &Fan) -> Result<Fan> {
    smooth_refine_with_budget(f, DEFAULT_REFINE_BUDGET)
}

/// Triangulates, then stellar-subdivides the first non-smooth cone at the
/// primitive parallelepiped point that minimizes the largest multiplicity it
/// creates (ties to the lexicographically smallest point).
pub fn smooth_refine_with_budget(f: &Fan, budget: usize) -> Result<Fan> {
    let n = f.ambient_dim();
    if n > SMOOTH_DIM_CAP {
        return Err(Error::DimensionCap { dim: n, cap: SMOOTH_DIM_CAP });
    }
    let mut fan = triangulate(f);
    for _ in 0..budget {
        let mults: Vec<BigInt> = fan.maximal_cones().iter().map(Cone::multiplicity).collect();
        let Some(bad) = mults.iter().position(|m| !m.is_one()) else {
            return Ok(fan);
        };
        let cones = fan.maximal_cones();
        let mut best: Option<(Rat, QVector)> = None;
        for p in parallelepiped_points(&cones[bad], &mults[bad])? {
            let mut worst = Rat::zero();
            for (c, m) in cones.iter().zip(&mults).filter(|(c, _)| c.contains(&p)) {
                let m = Rat::from_integer(m.clone());
                for t in coordinates(c, &p).iter().filter(|t| t.is_positive()) {
                    worst = worst.max(t * &m);
                }
            }
            if best.as_ref().is_none_or(|(w, _)| worst < *w) {
                best = Some((worst, p));
            }
        }
        let (_, p) = best.expect("a cone of multiplicity > 1 has an interior lattice point");
        let mut next = Vec::with_capacity(cones.len() + n);
        for c in cones {
            if !c.contains(&p) {
                next.push(c.clone());
                continue;
            }
            let t = coordinates(c, &p);
            for i in (0..t.dim()).filter(|&i| t[i].is_positive()) {
                let mut rays = c.rays().to_vec();
                rays[i] = p.clone();
                next.push(Cone::from_generators(n, &rays).expect("subcone of a pointed cone"));
            }
        }
        fan = Fan::new(n, next);
    }
    Err(Error::RefinementBudget { iterations: budget })
}
