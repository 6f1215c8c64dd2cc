//! The p-local spaces whose exponents are bounded, together with the
//! interval and certificate types the engine returns.

mod certificate;
mod interval;
mod parse;
mod space;

pub use certificate::{
    render_value as certificate_value_text, Certificate, Citation, Relation, Rule,
};
pub use interval::BoundInterval;
pub use parse::parse_space;
pub use space::{render_space, validate_for_prime, Bundle, ExoticAtom, LieGroup, Space};
