use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::cone::Cone;
use super::fan::DEFAULT_GENERATOR_CAP;
use crate::error::{Error, Result};
use crate::exact::{linear_solve, rank_of, QMatrix, QVector, Rat, SolutionDescriptor};
use crate::lp::phi_alpha;

/// All index sets `J` whose generators are linearly independent, including
/// the empty set, ordered by size and then lexicographically.
pub fn independent_subsets(gens: &[QVector]) -> Result<Vec<Vec<usize>>> {
    if gens.len() > DEFAULT_GENERATOR_CAP {
        return Err(Error::GeneratorCap { count: gens.len(), cap: DEFAULT_GENERATOR_CAP });
    }
    let mut out = Vec::new();
    for k in 0..=gens.len() {
        for subset in crate::exact::combinations(gens.len(), k) {
            let vs: Vec<QVector> = subset.iter().map(|&i| gens[i].clone()).collect();
            if rank_of(&vs) == k {
                out.push(subset);
            }
        }
    }
    Ok(out)
}

fn support(lam: &QVector) -> Vec<usize> {
    (0..lam.dim()).filter(|&i| !lam[i].is_zero()).collect()
}

/// One exchange step along the relation `Σ bᵢ vᵢ = 0`: subtracts `t·b` with
/// `t = min{λᵢ / bᵢ : bᵢ > 0}`. Returns the index that drops to zero.
fn pivot(lam: &mut QVector, b: &QVector) -> usize {
    let (j, t) = (0..b.dim())
        .filter(|&i| b[i].is_positive())
        .map(|i| (i, &lam[i] / &b[i]))
        .reduce(|best, cur| if cur.1 < best.1 { cur } else { best })
        .expect("relation has a positive entry");
    for i in 0..lam.dim() {
        if !b[i].is_zero() {
            lam[i] = &lam[i] - &t * &b[i];
        }
    }
    lam[j] = Rat::zero();
    j
}

/// Removes linear dependencies from the support of `lam` without changing
/// `Σ λᵢ vᵢ` and without increasing `Σ λᵢ αᵢ`.
pub fn caratheodory_reduce(gens: &[QVector], alpha: &QVector, lam: &QVector) -> QVector {
    assert_eq!(gens.len(), lam.dim());
    assert_eq!(gens.len(), alpha.dim());
    assert!(lam.is_nonnegative() && alpha.is_nonnegative());
    let n = gens.first().map_or(0, QVector::dim);
    let mut lam = lam.clone();
    loop {
        let j = support(&lam);
        let cols: Vec<QVector> = j.iter().map(|&i| gens[i].clone()).collect();
        let Some(rel) = QMatrix::from_columns(&cols, n).kernel().into_iter().next() else {
            return lam;
        };
        let mut b = QVector::zeros(gens.len());
        for (k, &i) in j.iter().enumerate() {
            b[i] = rel[k].clone();
        }
        let cost = b.dot(alpha);
        if cost.is_negative() || (cost.is_zero() && !b.iter().any(|x| x.is_positive())) {
            b = b.neg();
        }
        pivot(&mut lam, &b);
    }
}

/// Iterates exchange steps from `lam` until no generator outside the current
/// basis lowers the cost. Entering and leaving indices follow Bland's rule,
/// so the iteration terminates at a minimizer of `Σ λᵢ αᵢ`.
pub fn caratheodory_descent(gens: &[QVector], alpha: &QVector, lam: &QVector) -> QVector {
    let n = gens.first().map_or(0, QVector::dim);
    let mut lam = caratheodory_reduce(gens, alpha, lam);
    let mut basis = support(&lam);
    let mut current: Vec<QVector> = basis.iter().map(|&i| gens[i].clone()).collect();
    for (i, g) in gens.iter().enumerate() {
        if basis.contains(&i) {
            continue;
        }
        current.push(g.clone());
        if rank_of(&current) == current.len() {
            basis.push(i);
        } else {
            current.pop();
        }
    }
    basis.sort();

    loop {
        let rows: Vec<QVector> = basis.iter().map(|&i| gens[i].clone()).collect();
        let costs: QVector = basis.iter().map(|&i| alpha[i].clone()).collect();
        let y = match linear_solve(&QMatrix::new(rows, n), &costs) {
            SolutionDescriptor::Consistent { particular, .. } => particular,
            SolutionDescriptor::Inconsistent => unreachable!("basis rows are independent"),
        };
        let Some(k) = (0..gens.len()).find(|&k| (&alpha[k] - y.dot(&gens[k])).is_negative()) else {
            return lam;
        };
        let cols: Vec<QVector> = basis.iter().map(|&i| gens[i].clone()).collect();
        let coeffs = match linear_solve(&QMatrix::from_columns(&cols, n), &gens[k]) {
            SolutionDescriptor::Consistent { particular, .. } => particular,
            SolutionDescriptor::Inconsistent => unreachable!("basis spans every generator"),
        };
        let mut b = QVector::zeros(gens.len());
        for (c, &i) in coeffs.iter().zip(&basis) {
            b[i] = c.clone();
        }
        b[k] = -Rat::from_integer(1.into());
        // Bland: among minimum ratios the smallest index leaves.
        let leave = pivot(&mut lam, &b);
        basis.retain(|&i| i != leave);
        basis.push(k);
        basis.sort();
    }
}

/// Exact check that `φ_α` is additive on `c`, at the rays, at their sum and at
/// `sample_count` pseudo-random nonnegative rational combinations.
pub fn is_linear_on(
    gens: &[QVector],
    alpha: &QVector,
    c: &Cone,
    sample_count: usize,
    seed: u64,
) -> Result<bool> {
    let phi = |v: &QVector| phi_alpha(gens, alpha, v).map(|p| p.value);
    let at_rays: Vec<Rat> = c.rays().iter().map(phi).collect::<Result<_>>()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for s in 0..=sample_count {
        let t: Vec<Rat> = if s == 0 {
            vec![Rat::from_integer(1.into()); c.rays().len()]
        } else {
            (0..c.rays().len())
                .map(|_| {
                    let num: i64 = rng.random_range(0..=9);
                    let den: i64 = rng.random_range(1..=4);
                    Rat::new(num.into(), den.into())
                })
                .collect()
        };
        let v = c
            .rays()
            .iter()
            .zip(&t)
            .fold(QVector::zeros(c.ambient_dim()), |acc, (r, ti)| acc.axpy(ti, r));
        let expected: Rat = at_rays.iter().zip(&t).map(|(p, ti)| p * ti).sum();
        if phi(&v)? != expected {
            return Ok(false);
        }
    }
    Ok(true)
}
