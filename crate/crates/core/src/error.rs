use thiserror::Error;

use crate::exceptional::ExceptionalGroup;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),

    #[error("prime {p} exceeds the supported maximum of {max}")]
    PrimeTooLarge { p: u64, max: u64 },

    #[error("valuation of zero is infinite")]
    ZeroValuation,

    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("invalid space: {0}")]
    InvalidSpace(String),

    #[error("{space} does not match p = {p}: {reason}")]
    PrimeMismatch {
        space: String,
        p: u64,
        reason: String,
    },

    #[error("rule {rule} does not apply: {reason}")]
    RuleInapplicable { rule: &'static str, reason: String },

    #[error("({group}, {p}) is a torsion case outside the supported range")]
    ExcludedTorsion { group: ExceptionalGroup, p: u64 },

    #[error("inconsistent bounds for {space}: lower {lower} exceeds upper {upper}")]
    Inconsistent {
        space: String,
        lower: u64,
        upper: u64,
    },
}
