//! Rational polyhedral cones and fans.

mod caratheodory;
mod cone;
mod fan;
mod smooth;

pub use caratheodory::{caratheodory_descent, caratheodory_reduce, independent_subsets, is_linear_on};
pub use cone::Cone;
pub use fan::{common_refinement, linearity_fan, normal_fan, refines, Fan, DEFAULT_GENERATOR_CAP};
pub use smooth::{
    is_smooth, is_smooth_fan, smooth_refine, smooth_refine_with_budget, triangulate,
    DEFAULT_REFINE_BUDGET, SMOOTH_DIM_CAP,
};
