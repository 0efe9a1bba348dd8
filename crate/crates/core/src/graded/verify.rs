use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::ideal::{closure_equal, newton_h, weight_valuation, MonomialIdeal, WeightValuation};
use super::system::{asymptotic_newton, asymptotic_valuation, GradedSystem};
use crate::error::{Error, Result};
use crate::exact::{ExtRat, QVector, Rat};
use crate::fans::{linearity_fan, smooth_refine, Fan};

/// Stabilizing exponent found for one ray.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RayExponent {
    pub ray: QVector,
    pub d: u64,
    /// Whether `a_{dℓe} = a_{de}^ℓ` holds exactly for every tested `ℓ`.
    pub ideal_level: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExponentSearch {
    pub d: u64,
    pub per_ray: Vec<RayExponent>,
}

fn int(k: u64) -> Rat {
    Rat::from_integer(k.into())
}

/// For every ray `e` of `fan`, the smallest `d ≤ d_cap` with
/// `NP(a_{de}) = d · A(e)` where `A` is the asymptotic Newton polyhedron,
/// confirmed by `closure(a_{dℓe}) = closure(a_{de}^ℓ)` for `ℓ ≤ ell_bound`.
/// The overall `d` is the least common multiple.
pub fn find_d(sys: &GradedSystem, fan: &Fan, d_cap: u64, ell_bound: u64) -> Result<ExponentSearch> {
    let mut per_ray = Vec::new();
    let mut lcm = BigInt::from(1);
    for ray in fan.rays() {
        let target = asymptotic_newton(sys, &ray)?;
        let mut found = None;
        for d in 1..=d_cap {
            let base = sys.expand_degree(&ray.scale(&int(d)))?;
            if base.is_zero() || newton_h(&base)? != target.scale(&int(d)).canonical() {
                continue;
            }
            let mut closure_ok = true;
            let mut ideal_level = true;
            for ell in 2..=ell_bound {
                let big = sys.expand_degree(&ray.scale(&int(d * ell)))?;
                let pow = base.power(ell);
                closure_ok &= closure_equal(&big, &pow);
                ideal_level &= big == pow;
            }
            if closure_ok {
                found = Some(RayExponent { ray: ray.clone(), d, ideal_level });
                break;
            }
        }
        let found = found.ok_or_else(|| Error::NoStableExponent { ray: ray.clone(), d_cap })?;
        lcm = lcm.lcm(&BigInt::from(found.d));
        per_ray.push(found);
    }
    let d = u64::try_from(lcm).expect("lcm of values below the cap fits");
    Ok(ExponentSearch { d, per_ray })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyConfig {
    pub p_bound: u64,
    pub d_cap: u64,
    pub ell_bound: u64,
    pub refine_smooth: bool,
    /// Use the single cone `C` instead of the linearity fan.
    pub single_cone: bool,
    pub seed: u64,
    pub random_weights: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            p_bound: 4,
            d_cap: 64,
            ell_bound: 4,
            refine_smooth: true,
            single_cone: false,
            seed: 0,
            random_weights: 20,
        }
    }
}

/// The valuation chain
/// `v(a_{dm}) ≤ Σ pᵢ v(a_{deᵢ}) = Σ pᵢ v^{a•}(deᵢ) = v^{a•}(dm) ≤ v(a_{dm})`
/// evaluated for one weight.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValuationChain {
    pub weight: QVector,
    pub value_dm: ExtRat,
    pub sum_of_rays: ExtRat,
    pub sum_of_asymptotic: ExtRat,
    pub asymptotic_dm: ExtRat,
}

impl ValuationChain {
    pub fn inclusion_holds(&self) -> bool {
        self.value_dm <= self.sum_of_rays
    }

    pub fn stable_on_rays(&self) -> bool {
        self.sum_of_rays == self.sum_of_asymptotic
    }

    pub fn additive(&self) -> bool {
        self.sum_of_asymptotic == self.asymptotic_dm
    }

    pub fn collapses(&self) -> bool {
        self.inclusion_holds()
            && self.stable_on_rays()
            && self.additive()
            && self.asymptotic_dm <= self.value_dm
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TupleCheck {
    pub p: Vec<u64>,
    pub closure_equal: bool,
    /// First weight at which the chain does not collapse, if any.
    pub failed_chain: Option<ValuationChain>,
    /// A weight separating the two Newton polyhedra, when they differ.
    pub witness: Option<QVector>,
    pub weights_tested: usize,
}

impl TupleCheck {
    pub fn passed(&self) -> bool {
        self.closure_equal && self.failed_chain.is_none()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConeCheck {
    pub rays: Vec<QVector>,
    pub tuples: Vec<TupleCheck>,
}

impl ConeCheck {
    pub fn passed(&self) -> bool {
        self.tuples.iter().all(TupleCheck::passed)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Verified,
    Falsified,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    pub config: VerifyConfig,
    pub fan: Fan,
    pub exponents: ExponentSearch,
    pub cones: Vec<ConeCheck>,
    pub verdict: Verdict,
}

impl VerificationReport {
    /// First failing cone and tuple.
    pub fn first_failure(&self) -> Option<(&ConeCheck, &TupleCheck)> {
        self.cones
            .iter()
            .find_map(|c| c.tuples.iter().find(|t| !t.passed()).map(|t| (c, t)))
    }
}

fn tuples(len: usize, bound: u64) -> Vec<Vec<u64>> {
    fn rec(len: usize, left: u64, cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        for x in 0..=left {
            cur.push(x);
            rec(len, left - x, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(len, bound, &mut Vec::with_capacity(len), &mut out);
    out.retain(|p| p.iter().any(|&x| x > 0));
    out
}

/// Deterministic primitive nonnegative weights.
pub fn random_weights(n: usize, count: usize, seed: u64) -> Vec<QVector> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count && n > 0 {
        let w: Vec<i64> = (0..n).map(|_| rng.random_range(0..=9)).collect();
        let w = QVector::from_ints(&w);
        if !w.is_zero() {
            out.push(w.primitive_direction());
        }
    }
    out
}

/// Inner facet normals of the Newton polyhedra of nonzero ideals.
fn facet_weights(ideals: &[&MonomialIdeal]) -> Result<BTreeSet<QVector>> {
    let mut out = BTreeSet::new();
    for ideal in ideals.iter().filter(|i| !i.is_zero()) {
        for c in newton_h(ideal)?.inequalities() {
            out.insert(c.normal.neg());
        }
    }
    Ok(out)
}

fn sum_scaled(terms: &[(u64, ExtRat)]) -> ExtRat {
    terms
        .iter()
        .fold(ExtRat::Finite(Rat::from_integer(0.into())), |acc, (p, v)| &acc + &v.scale(&int(*p)))
}

/// Checks `closure(a_{dm}) = closure(∏ a_{deᵢ}^{pᵢ})` on every maximal cone of
/// the fan and every tuple with `Σ pᵢ ≤ p_bound`, together with the valuation
/// chain for a battery of weights.
pub fn verify_proposition(sys: &GradedSystem, config: &VerifyConfig) -> Result<VerificationReport> {
    let s = sys.grading_rank();
    let mut fan = if config.single_cone {
        Fan::from_cone(sys.cone().clone())
    } else {
        linearity_fan(s, &sys.active_degrees())?
    };
    if config.refine_smooth {
        fan = smooth_refine(&fan)?;
    }
    let exponents = find_d(sys, &fan, config.d_cap, config.ell_bound)?;
    let d = int(exponents.d);
    let battery_random = random_weights(sys.ambient_dim(), config.random_weights, config.seed);

    let mut cones = Vec::new();
    for cone in fan.maximal_cones() {
        let rays = cone.rays().to_vec();
        let ray_ideals: Vec<MonomialIdeal> =
            rays.iter().map(|e| sys.expand_degree(&e.scale(&d))).collect::<Result<_>>()?;
        let mut checks = Vec::new();
        for p in tuples(rays.len(), config.p_bound) {
            let m = rays
                .iter()
                .zip(&p)
                .fold(QVector::zeros(s), |acc, (e, &k)| acc.axpy(&int(k), e));
            let dm = m.scale(&d);
            let left = sys.expand_degree(&dm)?;
            let right = ray_ideals
                .iter()
                .zip(&p)
                .fold(MonomialIdeal::unit(sys.ambient_dim()), |acc, (i, &k)| acc.product(&i.power(k)));
            let equal = closure_equal(&left, &right);

            let mut battery = facet_weights(&[&left, &right])?;
            battery.extend(battery_random.iter().cloned());
            let mut witness = None;
            let mut failed_chain = None;
            for w in &battery {
                let val = WeightValuation::new(w.clone())?;
                let value_dm = weight_valuation(&val, &left);
                if witness.is_none() && value_dm != weight_valuation(&val, &right) {
                    witness = Some(w.clone());
                }
                if failed_chain.is_some() {
                    continue;
                }
                let mut on_rays = Vec::with_capacity(rays.len());
                let mut asym = Vec::with_capacity(rays.len());
                for ((e, ideal), &k) in rays.iter().zip(&ray_ideals).zip(&p) {
                    on_rays.push((k, weight_valuation(&val, ideal)));
                    asym.push((k, asymptotic_valuation(sys, &val, &e.scale(&d))?));
                }
                let chain = ValuationChain {
                    weight: w.clone(),
                    value_dm,
                    sum_of_rays: sum_scaled(&on_rays),
                    sum_of_asymptotic: sum_scaled(&asym),
                    asymptotic_dm: asymptotic_valuation(sys, &val, &dm)?,
                };
                if !chain.collapses() {
                    failed_chain = Some(chain);
                }
            }
            checks.push(TupleCheck {
                p,
                closure_equal: equal,
                failed_chain,
                witness,
                weights_tested: battery.len(),
            });
        }
        cones.push(ConeCheck { rays, tuples: checks });
    }
    let verdict = if cones.iter().all(ConeCheck::passed) {
        Verdict::Verified
    } else {
        Verdict::Falsified
    };
    Ok(VerificationReport { config: config.clone(), fan, exponents, cones, verdict })
}
