//! Monomial ideals and finitely generated graded systems of them.

mod ideal;
mod system;
mod verify;

pub use ideal::{
    closure_equal, newton_h, newton_polyhedron, weight_valuation, MonomialIdeal, WeightValuation,
};
pub use system::{
    asymptotic_limit_check, asymptotic_newton, asymptotic_valuation, GradedSystem, LimitCheck,
    EXPANSION_BUDGET,
};
pub use verify::{
    find_d, random_weights, verify_proposition, ConeCheck, ExponentSearch, RayExponent,
    TupleCheck, ValuationChain, VerificationReport, Verdict, VerifyConfig,
};
