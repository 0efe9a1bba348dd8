use std::collections::{HashMap, HashSet};
use std::fmt;
use std::sync::Mutex;

use num_traits::Zero;

use super::ideal::{newton_h, weight_valuation, MonomialIdeal, WeightValuation};
use crate::error::{Error, Result};
use crate::exact::{ExtRat, QVector, Rat};
use crate::fans::Cone;
use crate::lp::phi_alpha;
use crate::polyhedra::{project, Constraint, HPolyhedron};

/// Node budget for degree expansion.
pub const EXPANSION_BUDGET: usize = 1_000_000;

/// A graded system of monomial ideals defined by generator data: `a_m` is the
/// sum of the products `∏ a_{m_i}^{ℓ_i}` over all `ℓ ≥ 0` with `Σ ℓᵢ mᵢ = m`.
pub struct GradedSystem {
    grading_rank: usize,
    ambient_dim: usize,
    degrees: Vec<QVector>,
    ideals: Vec<MonomialIdeal>,
    cone: Cone,
    functional: QVector,
    cache: Mutex<HashMap<QVector, MonomialIdeal>>,
}

impl Clone for GradedSystem {
    fn clone(&self) -> Self {
        GradedSystem {
            grading_rank: self.grading_rank,
            ambient_dim: self.ambient_dim,
            degrees: self.degrees.clone(),
            ideals: self.ideals.clone(),
            cone: self.cone.clone(),
            functional: self.functional.clone(),
            cache: Mutex::new(HashMap::new()),
        }
    }
}

impl fmt::Debug for GradedSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GradedSystem")
            .field("grading_rank", &self.grading_rank)
            .field("ambient_dim", &self.ambient_dim)
            .field("degrees", &self.degrees)
            .field("ideals", &self.ideals)
            .finish()
    }
}

impl GradedSystem {
    /// Builds a system from `(degree, ideal)` pairs; repeated degrees are
    /// merged by ideal sum, keeping the first position.
    pub fn new(
        grading_rank: usize,
        ambient_dim: usize,
        generators: Vec<(Vec<i64>, MonomialIdeal)>,
    ) -> Result<Self> {
        let mut degrees: Vec<QVector> = Vec::new();
        let mut ideals: Vec<MonomialIdeal> = Vec::new();
        for (deg, ideal) in generators {
            if deg.len() != grading_rank {
                return Err(Error::DimensionMismatch { expected: grading_rank, found: deg.len() });
            }
            if ideal.ambient_dim() != ambient_dim {
                return Err(Error::DimensionMismatch { expected: ambient_dim, found: ideal.ambient_dim() });
            }
            if deg.iter().all(|&x| x == 0) {
                return Err(Error::InvalidSystem("generator degrees must be nonzero".into()));
            }
            let deg = QVector::from_ints(&deg);
            match degrees.iter().position(|d| *d == deg) {
                Some(i) => ideals[i] = ideals[i].sum(&ideal),
                None => {
                    degrees.push(deg);
                    ideals.push(ideal);
                }
            }
        }
        if degrees.is_empty() {
            return Err(Error::InvalidSystem("at least one generator is required".into()));
        }
        let cone = Cone::from_generators(grading_rank, &degrees)?;
        let functional = cone.positive_functional();
        Ok(GradedSystem {
            grading_rank,
            ambient_dim,
            degrees,
            ideals,
            cone,
            functional,
            cache: Mutex::new(HashMap::new()),
        })
    }

    pub fn grading_rank(&self) -> usize {
        self.grading_rank
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn degrees(&self) -> &[QVector] {
        &self.degrees
    }

    pub fn ideals(&self) -> &[MonomialIdeal] {
        &self.ideals
    }

    /// `C = cone(m_1, …, m_r)`.
    pub fn cone(&self) -> &Cone {
        &self.cone
    }

    /// Indices of generators with a nonzero ideal.
    pub fn active(&self) -> Vec<usize> {
        (0..self.ideals.len()).filter(|&i| !self.ideals[i].is_zero()).collect()
    }

    pub fn active_degrees(&self) -> Vec<QVector> {
        self.active().into_iter().map(|i| self.degrees[i].clone()).collect()
    }

    fn check_degree(&self, m: &QVector) -> Result<()> {
        if m.dim() != self.grading_rank {
            return Err(Error::DimensionMismatch { expected: self.grading_rank, found: m.dim() });
        }
        if !m.is_integral() {
            return Err(Error::NotIntegral(m.clone()));
        }
        Ok(())
    }

    /// `a_m`. Degrees are expanded bottom-up along `m − mᵢ`, using
    /// `a_m = Σᵢ a_{mᵢ} · a_{m − mᵢ}`, and results are memoized.
    pub fn expand_degree(&self, m: &QVector) -> Result<MonomialIdeal> {
        self.check_degree(m)?;
        if m.is_zero() {
            return Ok(MonomialIdeal::unit(self.ambient_dim));
        }
        let mut cache = self.cache.lock().expect("cache lock");
        if let Some(hit) = cache.get(m) {
            return Ok(hit.clone());
        }
        let active = self.active();
        let mut seen: HashSet<QVector> = HashSet::new();
        let mut stack = vec![m.clone()];
        let mut order: Vec<QVector> = Vec::new();
        seen.insert(m.clone());
        let mut work = 0usize;
        while let Some(x) = stack.pop() {
            order.push(x.clone());
            for &i in &active {
                work += 1;
                if work > EXPANSION_BUDGET {
                    return Err(Error::EnumerationBudget { limit: EXPANSION_BUDGET });
                }
                let y = x.sub(&self.degrees[i]);
                if y.is_zero() || !self.cone.contains(&y) || cache.contains_key(&y) {
                    continue;
                }
                if seen.insert(y.clone()) {
                    stack.push(y);
                }
            }
        }
        order.sort_by(|a, b| self.functional.dot(a).cmp(&self.functional.dot(b)).then(a.cmp(b)));
        let unit = MonomialIdeal::unit(self.ambient_dim);
        for x in order {
            let mut acc = MonomialIdeal::zero(self.ambient_dim);
            for &i in &active {
                let y = x.sub(&self.degrees[i]);
                let rest = if y.is_zero() {
                    &unit
                } else {
                    match cache.get(&y) {
                        Some(r) => r,
                        None => continue,
                    }
                };
                if !rest.is_zero() {
                    acc = acc.sum(&self.ideals[i].product(rest));
                }
            }
            cache.insert(x, acc);
        }
        Ok(cache.get(m).cloned().unwrap_or_else(|| MonomialIdeal::zero(self.ambient_dim)))
    }

    /// `(degrees, costs)` of the generators that have a nonzero ideal, with
    /// costs `v_w(a_{mᵢ})`.
    fn lp_data(&self, w: &WeightValuation) -> (Vec<QVector>, QVector) {
        let active = self.active();
        let degrees = active.iter().map(|&i| self.degrees[i].clone()).collect();
        let costs = active
            .iter()
            .map(|&i| match weight_valuation(w, &self.ideals[i]) {
                ExtRat::Finite(v) => v,
                ExtRat::PlusInfinity => unreachable!("active ideals are nonzero"),
            })
            .collect();
        (degrees, costs)
    }
}

/// `v^{a•}(m) = min{Σ λᵢ v_w(a_{mᵢ}) : λ ≥ 0, Σ λᵢ mᵢ = m}`, or `+inf` when `m`
/// has no such representation.
pub fn asymptotic_valuation(sys: &GradedSystem, w: &WeightValuation, m: &QVector) -> Result<ExtRat> {
    sys.check_degree(m)?;
    if w.weight().dim() != sys.ambient_dim {
        return Err(Error::DimensionMismatch { expected: sys.ambient_dim, found: w.weight().dim() });
    }
    if m.is_zero() {
        return Ok(ExtRat::Finite(Rat::zero()));
    }
    let (degrees, costs) = sys.lp_data(w);
    if degrees.is_empty() {
        return Ok(ExtRat::PlusInfinity);
    }
    match phi_alpha(&degrees, &costs, m) {
        Ok(p) => Ok(ExtRat::Finite(p.value)),
        Err(Error::NotInCone(_)) => Ok(ExtRat::PlusInfinity),
        Err(e) => Err(e),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LimitCheck {
    pub lp_value: ExtRat,
    /// `v_w(a_{ℓm}) / ℓ` for `ℓ = 1, …, L`.
    pub sequence: Vec<ExtRat>,
    pub consistent: bool,
}

/// Compares the LP value with the finite sequence `v_w(a_{ℓm})/ℓ`, `ℓ ≤ L`:
/// every term must be at least the LP value and the minimum must attain it.
pub fn asymptotic_limit_check(
    sys: &GradedSystem,
    w: &WeightValuation,
    m: &QVector,
    ell_bound: u64,
) -> Result<LimitCheck> {
    let lp_value = asymptotic_valuation(sys, w, m)?;
    let mut sequence = Vec::with_capacity(ell_bound as usize);
    for ell in 1..=ell_bound {
        let t = Rat::from_integer(ell.into());
        let ideal = sys.expand_degree(&m.scale(&t))?;
        sequence.push(weight_valuation(w, &ideal).scale(&t.recip()));
    }
    let above = sequence.iter().all(|s| *s >= lp_value);
    let consistent = match sequence.iter().min() {
        Some(min) if !min.is_infinite() => above && *min == lp_value,
        _ => above,
    };
    Ok(LimitCheck { lp_value, sequence, consistent })
}

/// The polyhedron `{x : x ∈ Σ λᵢ NP(a_{mᵢ}) + R^n_{≥0} for some λ ≥ 0 with
/// Σ λᵢ mᵢ = m}`, whose support function in direction `w` is `v^{a•}(m)`.
pub fn asymptotic_newton(sys: &GradedSystem, m: &QVector) -> Result<HPolyhedron> {
    sys.check_degree(m)?;
    let n = sys.ambient_dim;
    if m.is_zero() {
        return newton_h(&MonomialIdeal::unit(n));
    }
    // Variables: one μ per (active generator, ideal generator), then x.
    let mut columns: Vec<(QVector, QVector)> = Vec::new();
    for i in sys.active() {
        for g in sys.ideals[i].generators() {
            let exp: QVector = g.iter().map(|&e| Rat::from_integer(e.into())).collect();
            columns.push((sys.degrees[i].clone(), exp));
        }
    }
    if columns.is_empty() {
        return Err(Error::NotInCone(m.clone()));
    }
    let k = columns.len();
    let dim = k + n;
    let var = |j: usize| QVector::unit(dim, j);
    let mut ineqs: Vec<Constraint> = Vec::new();
    let mut eqs: Vec<Constraint> = Vec::new();
    for j in 0..k {
        ineqs.push(Constraint::new(var(j).neg(), Rat::zero()));
    }
    for t in 0..sys.grading_rank {
        let mut a = QVector::zeros(dim);
        for (j, (deg, _)) in columns.iter().enumerate() {
            a[j] = deg[t].clone();
        }
        eqs.push(Constraint::new(a, m[t].clone()));
    }
    for c in 0..n {
        // Σ μ_j g_{j,c} − x_c ≤ 0
        let mut a = QVector::zeros(dim);
        for (j, (_, exp)) in columns.iter().enumerate() {
            a[j] = exp[c].clone();
        }
        a[k + c] = -Rat::from_integer(1.into());
        ineqs.push(Constraint::new(a, Rat::zero()));
    }
    let lifted = HPolyhedron::from_constraints(dim, ineqs, eqs);
    let keep: Vec<usize> = (k..dim).collect();
    let image = project(&lifted, &keep);
    if image.is_marked_empty() {
        return Err(Error::NotInCone(m.clone()));
    }
    Ok(image)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use crate::graded::ideal::{closure_equal, newton_polyhedron};
    use crate::polyhedra::{minimize_linear, LinearMin, VRepresentation};

    pub(crate) fn ideal(n: usize, gens: &[&[u64]]) -> MonomialIdeal {
        MonomialIdeal::new(n, gens.iter().map(|g| g.to_vec()).collect()).unwrap()
    }

    fn worked() -> GradedSystem {
        GradedSystem::new(
            2,
            2,
            vec![
                (vec![1, 0], ideal(2, &[&[1, 0]])),
                (vec![0, 1], ideal(2, &[&[0, 1]])),
                (vec![1, 1], ideal(2, &[&[1, 1], &[2, 0]])),
            ],
        )
        .unwrap()
    }

    fn qv(xs: &[i64]) -> QVector {
        QVector::from_ints(xs)
    }

    fn weight(w: &[i64]) -> WeightValuation {
        WeightValuation::new(qv(w)).unwrap()
    }

    /// Depth-first enumeration of all `ℓ` with `Σ ℓᵢ mᵢ = m`.
    fn brute_force(sys: &GradedSystem, m: &QVector) -> MonomialIdeal {
        fn rec(sys: &GradedSystem, i: usize, rest: &QVector, acc: &MonomialIdeal, out: &mut MonomialIdeal) {
            if rest.is_zero() {
                *out = out.sum(acc);
                return;
            }
            if i == sys.degrees.len() || !sys.cone.contains(rest) {
                return;
            }
            rec(sys, i + 1, rest, acc, out);
            let mut r = rest.sub(&sys.degrees[i]);
            let mut a = acc.product(&sys.ideals[i]);
            while sys.cone.contains(&r) {
                rec(sys, i + 1, &r, &a, out);
                r = r.sub(&sys.degrees[i]);
                a = a.product(&sys.ideals[i]);
            }
        }
        let mut out = MonomialIdeal::zero(sys.ambient_dim);
        rec(sys, 0, m, &MonomialIdeal::unit(sys.ambient_dim), &mut out);
        out
    }

    #[test]
    fn expand_examples() {
        let sys = worked();
        assert_eq!(sys.expand_degree(&qv(&[1, 1])).unwrap(), ideal(2, &[&[1, 1], &[2, 0]]));
        assert!(sys.expand_degree(&qv(&[0, 0])).unwrap().is_unit());
        assert!(sys.expand_degree(&qv(&[-1, 2])).unwrap().is_zero());
        let gapped = GradedSystem::new(1, 1, vec![(vec![2], ideal(1, &[&[1]]))]).unwrap();
        assert!(gapped.expand_degree(&qv(&[3])).unwrap().is_zero());
        assert_eq!(gapped.expand_degree(&qv(&[4])).unwrap(), ideal(1, &[&[2]]));
    }

    #[test]
    fn expansion_matches_brute_force() {
        let sys = worked();
        for a in 0..=5 {
            for b in 0..=5 {
                let m = qv(&[a, b]);
                assert_eq!(sys.expand_degree(&m).unwrap(), brute_force(&sys, &m), "degree {m}");
            }
        }
        let fresh = worked();
        assert_eq!(fresh.expand_degree(&qv(&[4, 3])).unwrap(), sys.expand_degree(&qv(&[4, 3])).unwrap());
    }

    #[test]
    fn graded_compatibility() {
        let sys = worked();
        for (m, mp) in [([1, 0], [1, 1]), ([2, 1], [0, 3]), ([1, 2], [2, 2])] {
            let (m, mp) = (qv(&m), qv(&mp));
            let prod = sys.expand_degree(&m).unwrap().product(&sys.expand_degree(&mp).unwrap());
            assert!(sys.expand_degree(&m.add(&mp)).unwrap().contains(&prod));
        }
    }

    #[test]
    fn duplicate_degrees_merge() {
        let sys = GradedSystem::new(
            1,
            2,
            vec![(vec![1], ideal(2, &[&[2, 0]])), (vec![1], ideal(2, &[&[0, 2]]))],
        )
        .unwrap();
        assert_eq!(sys.degrees().len(), 1);
        assert_eq!(sys.ideals()[0], ideal(2, &[&[0, 2], &[2, 0]]));
        assert!(matches!(
            GradedSystem::new(1, 1, vec![(vec![1], ideal(1, &[&[1]])), (vec![-1], ideal(1, &[&[1]]))]),
            Err(Error::NotPointed { .. })
        ));
        assert!(GradedSystem::new(1, 1, vec![(vec![0], ideal(1, &[&[1]]))]).is_err());
    }

    #[test]
    fn asymptotic_valuation_examples() {
        let sys = worked();
        assert_eq!(asymptotic_valuation(&sys, &weight(&[1, 1]), &qv(&[1, 1])).unwrap(), ExtRat::Finite(rat(2)));
        assert_eq!(asymptotic_valuation(&sys, &weight(&[1, 2]), &qv(&[3, 0])).unwrap(), ExtRat::Finite(rat(3)));
        let free = GradedSystem::new(1, 1, vec![(vec![1], MonomialIdeal::unit(1))]).unwrap();
        assert_eq!(asymptotic_valuation(&free, &weight(&[1]), &qv(&[5])).unwrap(), ExtRat::Finite(rat(0)));
        assert_eq!(asymptotic_valuation(&sys, &weight(&[1, 1]), &qv(&[-1, 0])).unwrap(), ExtRat::PlusInfinity);
    }

    #[test]
    fn limit_check_examples() {
        let sys = worked();
        let c = asymptotic_limit_check(&sys, &weight(&[1, 1]), &qv(&[1, 1]), 4).unwrap();
        assert!(c.consistent);
        assert!(c.sequence.iter().all(|s| *s == ExtRat::Finite(rat(2))));

        let c = asymptotic_limit_check(&sys, &weight(&[1, 1]), &qv(&[0, 0]), 3).unwrap();
        assert_eq!(c.lp_value, ExtRat::Finite(rat(0)));
        assert!(c.consistent);

        let single = GradedSystem::new(1, 2, vec![(vec![1], ideal(2, &[&[2, 0], &[0, 3]]))]).unwrap();
        let c = asymptotic_limit_check(&single, &weight(&[3, 2]), &qv(&[1]), 6).unwrap();
        assert_eq!(c.lp_value, ExtRat::Finite(rat(6)));
        assert!(c.consistent);
    }

    #[test]
    fn asymptotic_newton_examples() {
        let sys = worked();
        let a = asymptotic_newton(&sys, &qv(&[1, 1])).unwrap();
        let expected = newton_h(&ideal(2, &[&[1, 1], &[2, 0]])).unwrap();
        assert_eq!(a, expected);
        for w in [[1, 1], [1, 2], [2, 1]] {
            let min = match minimize_linear(&a, &qv(&w)).unwrap() {
                LinearMin::Min { value, .. } => ExtRat::Finite(value),
                LinearMin::Unbounded { .. } => unreachable!(),
            };
            assert_eq!(min, asymptotic_valuation(&sys, &weight(&w), &qv(&[1, 1])).unwrap());
        }
        let a = asymptotic_newton(&sys, &qv(&[1, 0])).unwrap();
        assert_eq!(a, newton_h(&ideal(2, &[&[1, 0]])).unwrap());
        let a2 = asymptotic_newton(&sys, &qv(&[2, 0])).unwrap();
        assert_eq!(a2, a.scale(&rat(2)).canonical());
    }

    #[test]
    fn asymptotic_newton_with_half_vertex() {
        // a_1 = (x³), a_2 = (x²): the asymptotic polyhedron at degree 1 is [1, ∞)
        let sys = GradedSystem::new(
            1,
            1,
            vec![(vec![1], ideal(1, &[&[3]])), (vec![2], ideal(1, &[&[2]]))],
        )
        .unwrap();
        let a = asymptotic_newton(&sys, &qv(&[1])).unwrap();
        let expected = VRepresentation::new(1, vec![QVector(vec![rat(1)])], vec![qv(&[1])]);
        assert_eq!(a, crate::polyhedra::vrep_to_h(&expected));
        assert!(!closure_equal(&sys.expand_degree(&qv(&[1])).unwrap(), &ideal(1, &[&[1]])));
        assert_eq!(newton_polyhedron(&sys.expand_degree(&qv(&[2])).unwrap()).unwrap().vertices, vec![qv(&[2])]);
    }
}
