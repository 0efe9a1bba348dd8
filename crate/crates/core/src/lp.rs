//! Exact two-phase simplex with duality certificates, and the cone-constrained
//! minimum-cost function `φ_α(v) = min{⟨α, λ⟩ : λ ≥ 0, Σ λᵢ vᵢ = v}`.

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{linear_solve, QMatrix, QVector, Rat, SolutionDescriptor};
use crate::polyhedra::{minimize_linear, HPolyhedron, LinearMin};

/// `min ⟨cost, x⟩` subject to `constraint_matrix · x = rhs`, `x ≥ 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LpInstance {
    pub cost: QVector,
    pub constraint_matrix: QMatrix,
    pub rhs: QVector,
}

impl LpInstance {
    pub fn new(cost: QVector, constraint_matrix: QMatrix, rhs: QVector) -> Self {
        assert_eq!(constraint_matrix.ncols(), cost.dim(), "one cost per column");
        assert_eq!(constraint_matrix.nrows(), rhs.dim(), "one rhs entry per row");
        LpInstance { cost, constraint_matrix, rhs }
    }

    /// Whether `y` is feasible for the dual `max ⟨rhs, y⟩ s.t. Aᵀy ≤ cost`.
    pub fn dual_feasible(&self, y: &QVector) -> bool {
        self.constraint_matrix
            .vec_mul(y)
            .iter()
            .zip(self.cost.iter())
            .all(|(a, c)| a <= c)
    }

    pub fn primal_feasible(&self, x: &QVector) -> bool {
        x.is_nonnegative() && self.constraint_matrix.mul_vec(x) == self.rhs
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpOutcome {
    /// Primal and dual optima with `⟨cost, primal⟩ = ⟨rhs, dual⟩ = value`.
    Optimal { value: Rat, primal: QVector, dual: QVector },
    /// Farkas certificate: `yᵀA ≤ 0` and `yᵀb > 0`.
    Infeasible { farkas: QVector },
    /// A feasible `point` and a `ray` with `A·ray = 0`, `ray ≥ 0`, `⟨cost, ray⟩ < 0`.
    Unbounded { point: QVector, ray: QVector },
}

impl LpOutcome {
    pub fn value(&self) -> Option<&Rat> {
        match self {
            LpOutcome::Optimal { value, .. } => Some(value),
            _ => None,
        }
    }
}

struct Tableau {
    rows: Vec<Vec<Rat>>,
    /// Reduced costs followed by the negated objective value in the last slot.
    z: Vec<Rat>,
    basis: Vec<usize>,
    width: usize,
}

impl Tableau {
    fn rhs(&self, i: usize) -> &Rat {
        &self.rows[i][self.width]
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let inv = self.rows[r][c].recip();
        for x in self.rows[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *x -= &f * p;
                }
            }
        }
        if !self.z[c].is_zero() {
            let f = self.z[c].clone();
            for (x, p) in self.z.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *x -= &f * p;
                }
            }
        }
        self.basis[r] = c;
    }

    /// Bland's rule iterations over the columns in `0..allowed`. Returns the
    /// entering column of an unbounded direction, if any.
    fn run(&mut self, allowed: usize) -> Option<usize> {
        loop {
            let c = (0..allowed).find(|&j| self.z[j].is_negative())?;
            let mut leave: Option<(usize, Rat)> = None;
            for i in 0..self.rows.len() {
                let a = &self.rows[i][c];
                if !a.is_positive() {
                    continue;
                }
                let ratio = self.rhs(i) / a;
                let better = match &leave {
                    None => true,
                    Some((l, best)) => {
                        ratio < *best || (ratio == *best && self.basis[i] < self.basis[*l])
                    }
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            match leave {
                Some((r, _)) => self.pivot(r, c),
                None => return Some(c),
            }
        }
    }

    fn solution(&self, n: usize) -> QVector {
        let mut x = QVector::zeros(n);
        for (i, &b) in self.basis.iter().enumerate() {
            if b < n {
                x[b] = self.rhs(i).clone();
            }
        }
        x
    }
}

/// Two-phase simplex over exact rationals with Bland's anti-cycling rule.
/// Every certificate is checked independently before it is returned.
pub fn simplex_solve(inst: &LpInstance) -> LpOutcome {
    let a = &inst.constraint_matrix;
    let (m, n) = (a.nrows(), a.ncols());
    let width = n + m;

    let signs: Vec<bool> = inst.rhs.iter().map(|b| b.is_negative()).collect();
    let rows: Vec<Vec<Rat>> = (0..m)
        .map(|i| {
            let mut row: Vec<Rat> = a.row(i).0.clone();
            let mut b = inst.rhs[i].clone();
            if signs[i] {
                row.iter_mut().for_each(|x| *x = -x.clone());
                b = -b;
            }
            row.extend((0..m).map(|k| if k == i { Rat::one() } else { Rat::zero() }));
            row.push(b);
            row
        })
        .collect();

    // Phase 1: minimize the sum of artificials.
    let mut z = vec![Rat::zero(); width + 1];
    for row in &rows {
        for j in 0..n {
            z[j] -= &row[j];
        }
        z[width] -= &row[width];
    }
    let mut t = Tableau { rows, z, basis: (n..n + m).collect(), width };
    t.run(width);

    if t.z[width].is_negative() {
        // y' = 1 − d_artificial, undo the row sign flips.
        let farkas: QVector = (0..m)
            .map(|i| {
                let y = Rat::one() - &t.z[n + i];
                if signs[i] {
                    -y
                } else {
                    y
                }
            })
            .collect();
        assert!(
            a.vec_mul(&farkas).iter().all(|v| !v.is_positive()) && farkas.dot(&inst.rhs).is_positive(),
            "simplex produced an invalid Farkas certificate"
        );
        return LpOutcome::Infeasible { farkas };
    }

    // Drive artificials out of the basis; rows that cannot be pivoted are redundant.
    let mut i = 0;
    while i < t.rows.len() {
        if t.basis[i] >= n {
            match (0..n).find(|&j| !t.rows[i][j].is_zero()) {
                Some(j) => t.pivot(i, j),
                None => {
                    t.rows.remove(i);
                    t.basis.remove(i);
                    continue;
                }
            }
        }
        i += 1;
    }

    // Phase 2 on the original costs.
    let mut z: Vec<Rat> = inst.cost.0.clone();
    z.resize(width + 1, Rat::zero());
    for (row, &b) in t.rows.iter().zip(&t.basis) {
        let cb = &inst.cost[b];
        if cb.is_zero() {
            continue;
        }
        for (x, r) in z.iter_mut().zip(row) {
            *x -= cb * r;
        }
    }
    t.z = z;
    if let Some(c) = t.run(n) {
        let point = t.solution(n);
        let mut ray = QVector::zeros(n);
        ray[c] = Rat::one();
        for (i, &b) in t.basis.iter().enumerate() {
            ray[b] = -t.rows[i][c].clone();
        }
        assert!(
            inst.primal_feasible(&point)
                && ray.is_nonnegative()
                && a.mul_vec(&ray).is_zero()
                && inst.cost.dot(&ray).is_negative(),
            "simplex produced an invalid unbounded certificate"
        );
        return LpOutcome::Unbounded { point, ray };
    }

    let primal = t.solution(n);
    let value = inst.cost.dot(&primal);
    let dual = extract_dual(a, &t.basis, &inst.cost);
    assert!(inst.primal_feasible(&primal), "simplex primal is infeasible");
    assert!(inst.dual_feasible(&dual), "simplex dual is infeasible");
    assert_eq!(dual.dot(&inst.rhs), value, "simplex duality gap is nonzero");
    LpOutcome::Optimal { value, primal, dual }
}

/// Solves `A_Bᵀ y = c_B` for the final basis.
fn extract_dual(a: &QMatrix, basis: &[usize], cost: &QVector) -> QVector {
    let m = a.nrows();
    if basis.is_empty() {
        return QVector::zeros(m);
    }
    let at_b = QMatrix::new(basis.iter().map(|&j| a.column(j)).collect(), m);
    let c_b: QVector = basis.iter().map(|&j| cost[j].clone()).collect();
    match linear_solve(&at_b, &c_b) {
        SolutionDescriptor::Consistent { particular, .. } => particular,
        SolutionDescriptor::Inconsistent => unreachable!("basis columns are independent"),
    }
}

/// Optimal value of `φ_α(v)` with an optimal λ and the dual optimum γ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhiValue {
    pub value: Rat,
    pub witness: QVector,
    pub dual: QVector,
}

fn check_phi_inputs(generators: &[QVector], alpha: &QVector, v: &QVector) -> Result<()> {
    if alpha.dim() != generators.len() {
        return Err(Error::DimensionMismatch { expected: generators.len(), found: alpha.dim() });
    }
    if let Some(g) = generators.iter().find(|g| g.dim() != v.dim()) {
        return Err(Error::DimensionMismatch { expected: v.dim(), found: g.dim() });
    }
    if !alpha.is_nonnegative() {
        return Err(Error::NegativeCost);
    }
    Ok(())
}

/// `φ_α(v)`; errors with [`Error::NotInCone`] when no λ ≥ 0 represents `v`.
pub fn phi_alpha(generators: &[QVector], alpha: &QVector, v: &QVector) -> Result<PhiValue> {
    check_phi_inputs(generators, alpha, v)?;
    let inst = LpInstance::new(
        alpha.clone(),
        QMatrix::from_columns(generators, v.dim()),
        v.clone(),
    );
    match simplex_solve(&inst) {
        LpOutcome::Optimal { value, primal, dual } => Ok(PhiValue { value, witness: primal, dual }),
        LpOutcome::Infeasible { .. } => Err(Error::NotInCone(v.clone())),
        LpOutcome::Unbounded { .. } => unreachable!("nonnegative costs are bounded below"),
    }
}

/// `Q(α) = {γ : ⟨vᵢ, γ⟩ ≤ αᵢ}`.
pub fn build_q(generators: &[QVector], alpha: &QVector) -> HPolyhedron {
    assert_eq!(generators.len(), alpha.dim(), "one cost per generator");
    let n = generators.first().map_or(0, QVector::dim);
    build_q_in(n, generators, alpha)
}

/// [`build_q`] with an explicit ambient dimension (needed when there are no generators).
pub fn build_q_in(n: usize, generators: &[QVector], alpha: &QVector) -> HPolyhedron {
    generators
        .iter()
        .zip(alpha.iter())
        .fold(HPolyhedron::new(n), |q, (g, a)| q.leq(g.clone(), a.clone()))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualityCheck {
    pub primal_value: Rat,
    pub dual_value: Rat,
    pub gap_zero: bool,
    pub maximizer: QVector,
}

/// Compares the simplex value of `φ_α(v)` with `max_{γ ∈ Q(α)} ⟨v, γ⟩`
/// computed from the vertices of `Q(α)`.
pub fn verify_duality(generators: &[QVector], alpha: &QVector, v: &QVector) -> Result<DualityCheck> {
    let primal = phi_alpha(generators, alpha, v)?;
    let q = build_q_in(v.dim(), generators, alpha);
    match minimize_linear(&q, &v.neg())? {
        LinearMin::Min { value, argmin } => {
            let dual_value = -value;
            Ok(DualityCheck {
                gap_zero: primal.value == dual_value,
                primal_value: primal.value,
                dual_value,
                maximizer: argmin,
            })
        }
        LinearMin::Unbounded { .. } => unreachable!("v in C keeps ⟨v, ·⟩ bounded on Q(α)"),
    }
}
