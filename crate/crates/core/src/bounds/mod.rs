//! The derivation engine: axioms and rules that produce certified
//! [`BoundInterval`](crate::spaces::BoundInterval)s.

mod engine;
mod formulas;
pub mod replay;

pub use engine::{
    exponent_interval, iterated_bundle_upper, sp_interval, sphere_exponent,
    two_cell_bundle_interval, Engine, RuleContext,
};
pub use formulas::{fibration_upper, su_lower, su_upper_closed, su_upper_recursive};
