use std::fmt;

use serde::Serialize;

use super::certificate::{render_value, Certificate};
use crate::error::{Error, Result};

/// Bounds `[lower, upper]` on a homotopy exponent, each side justified by
/// its own certificate. `upper == None` means no upper-bound rule applied.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundInterval {
    lower: u64,
    upper: Option<u64>,
    lower_cert: Certificate,
    upper_cert: Certificate,
}

impl BoundInterval {
    pub fn new(lower_cert: Certificate, upper_cert: Certificate) -> Result<Self> {
        let lower = lower_cert.value.unwrap_or(u64::MAX);
        let upper = upper_cert.value;
        if let Some(hi) = upper {
            if lower > hi {
                return Err(Error::Inconsistent {
                    space: lower_cert.statement.clone(),
                    lower,
                    upper: hi,
                });
            }
        }
        Ok(BoundInterval {
            lower,
            upper,
            lower_cert,
            upper_cert,
        })
    }

    pub fn lower(&self) -> u64 {
        self.lower
    }

    pub fn upper(&self) -> Option<u64> {
        self.upper
    }

    pub fn lower_cert(&self) -> &Certificate {
        &self.lower_cert
    }

    pub fn upper_cert(&self) -> &Certificate {
        &self.upper_cert
    }

    pub fn bounds(&self) -> (u64, Option<u64>) {
        (self.lower, self.upper)
    }

    pub fn is_exact(&self) -> bool {
        self.upper == Some(self.lower)
    }

    pub fn contains(&self, v: u64) -> bool {
        self.lower <= v && self.upper.is_none_or(|hi| v <= hi)
    }

    /// The admissible values, for a finite interval.
    pub fn values(&self) -> Option<Vec<u64>> {
        self.upper.map(|hi| (self.lower..=hi).collect())
    }
}

impl fmt::Display for BoundInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.upper {
            Some(hi) if hi == self.lower => write!(f, "{{{hi}}}"),
            Some(_) => write!(f, "[{}, {}]", self.lower, render_value(self.upper)),
            None => write!(f, "[{}, ∞)", self.lower),
        }
    }
}
