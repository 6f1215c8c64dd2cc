//! Certified bounds on odd-primary homotopy exponents of compact Lie groups.
//!
//! The homotopy `p`-exponent `exp_p(X)` is the largest `e` such that some
//! homotopy group of `X` has a `Z/p^e` summand. This crate computes
//! intervals `[lower, upper]` for `exp_p(X)` with exact integer arithmetic,
//! where `X` is a sphere, an α₁ sphere bundle `B(d₁,…,d_k)`, a classical or
//! exceptional Lie group, or a product of these, all localized at an odd
//! prime `p`. Every bound carries a [`Certificate`](spaces::Certificate)
//! tree naming the rule and source behind each step, and every tree can be
//! replayed independently with [`bounds::replay::replay`].
//!
//! ```
//! use homexp::{arith::OddPrime, bounds::{exponent_interval, RuleContext}, spaces::parse_space};
//!
//! let p = OddPrime::new(5).unwrap();
//! let iv = exponent_interval(&parse_space("SU(18)").unwrap(), &RuleContext::new(p)).unwrap();
//! assert_eq!(iv.bounds(), (18, Some(20)));
//! ```

pub mod arith;
pub mod bounds;
pub mod cli;
pub mod error;
pub mod exceptional;
pub mod facts;
pub mod output;
pub mod spaces;
pub mod splittings;

pub use error::{Error, Result};
