//! Independent re-checking of certificate trees.
//!
//! Replay recomputes every node from its rule arguments and its premises'
//! stated values, without consulting the engine's dispatch logic.

use std::fmt;

use crate::arith::{choose2, nu_factorial, OddPrime};
use crate::facts::FactBase;
use crate::spaces::{Certificate, Relation, Rule};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReplayError {
    pub statement: String,
    pub reason: String,
}

impl fmt::Display for ReplayError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "replay failed at '{}': {}", self.statement, self.reason)
    }
}

impl std::error::Error for ReplayError {}

pub fn replay(cert: &Certificate, facts: &FactBase) -> Result<(), ReplayError> {
    for premise in &cert.premises {
        replay(premise, facts)?;
    }
    let fail = |reason: String| ReplayError {
        statement: cert.statement.clone(),
        reason,
    };
    let expected = evaluate(cert, facts).map_err(fail)?;
    if expected != cert.value {
        return Err(fail(format!(
            "rule {} yields {expected:?}, certificate states {:?}",
            cert.rule.id(),
            cert.value
        )));
    }
    let tail = format!(
        " {} {}",
        cert.relation.symbol(),
        crate::spaces::certificate_value_text(cert.value)
    );
    if !cert.statement.ends_with(&tail) {
        return Err(fail("statement does not match value".into()));
    }
    Ok(())
}

fn prime(p: u64) -> Result<OddPrime, String> {
    OddPrime::new(p).map_err(|e| e.to_string())
}

fn no_premises(cert: &Certificate) -> Result<(), String> {
    if cert.premises.is_empty() {
        Ok(())
    } else {
        Err(format!("{} takes no premises", cert.rule.id()))
    }
}

fn same_direction(cert: &Certificate, premise: &Certificate) -> Result<(), String> {
    let ok = match cert.relation {
        Relation::Exact => premise.relation == Relation::Exact,
        r => premise.relation == r || premise.relation == Relation::Exact,
    };
    if ok {
        Ok(())
    } else {
        Err(format!(
            "premise '{}' bounds the wrong side",
            premise.statement
        ))
    }
}

fn evaluate(cert: &Certificate, facts: &FactBase) -> Result<Option<u64>, String> {
    match &cert.rule {
        Rule::SphereExponent { p, dim } => {
            prime(*p)?;
            no_premises(cert)?;
            if *dim < 3 || dim % 2 == 0 {
                return Err(format!("S^{dim} is not an odd sphere"));
            }
            Ok(Some((dim - 1) / 2))
        }
        Rule::TwoCellLower { p, bottom } | Rule::TwoCellUpper { p, bottom } => {
            prime(*p)?;
            no_premises(cert)?;
            if *bottom < 3 || bottom % 2 == 0 {
                return Err(format!("bad bottom cell {bottom}"));
            }
            let n = (bottom - 1) / 2;
            let lower = matches!(cert.rule, Rule::TwoCellLower { .. });
            Ok(Some(match (n, lower) {
                (1, _) => p + 1,
                (_, true) => n + p - 1,
                (_, false) => n + p,
            }))
        }
        Rule::SuLowerFactorial { p, n } => {
            let pp = prime(*p)?;
            no_premises(cert)?;
            Ok(Some(n.saturating_sub(1) + nu_factorial(pp, n / p)))
        }
        Rule::SuLowerBand { p, n, t } => {
            prime(*p)?;
            no_premises(cert)?;
            if !(1..*p).contains(t) || !(t * p - t + 2 <= *n && *n <= t * p + 1) {
                return Err(format!("t = {t} does not place n = {n} in a band"));
            }
            Ok(Some(*n))
        }
        Rule::SuUpperSmall { p, n } => {
            let pp = prime(*p)?;
            no_premises(cert)?;
            if *n >= p * p + p {
                return Err(format!("n = {n} is outside n < p^2 + p"));
            }
            Ok(Some(
                n.saturating_sub(1) + nu_factorial(pp, n.saturating_sub(1)),
            ))
        }
        Rule::SuUpperLarge { p, n } => {
            prime(*p)?;
            no_premises(cert)?;
            if *n <= p * p {
                return Err(format!("n = {n} is outside n ≥ p^2 + 1"));
            }
            let k = ((n - 2) / (p - 1)) as i64;
            Ok(Some(n + p - 3 + choose2(k - *p as i64 + 2)))
        }
        Rule::BhCokernel { p, m } => {
            let pp = prime(*p)?;
            no_premises(cert)?;
            if *m < 2 {
                return Err("m must be at least 2".into());
            }
            Ok(Some(nu_factorial(pp, m - 1)))
        }
        Rule::AlphaCokernel { p, dims } => {
            let pp = prime(*p)?;
            no_premises(cert)?;
            let q = pp.q();
            let top = *dims.last().ok_or("empty tower")?;
            if dims.len() < 2
                || dims.windows(2).any(|w| w[1] <= w[0] || w[1] - w[0] != q)
                || dims.iter().any(|&d| (top - d) / q > p - 1)
            {
                return Err(format!("{dims:?} violates the α1 order-p guard"));
            }
            Ok(Some(dims.len() as u64 - 1))
        }
        Rule::Fibration { base_n } => {
            let [fiber, coker] = cert.premises.as_slice() else {
                return Err("fibration needs [fiber, cokernel] premises".into());
            };
            same_direction(cert, fiber)?;
            if coker.relation != Relation::Upper {
                return Err("cokernel premise must be an upper bound".into());
            }
            let r = coker.value.ok_or("unbounded cokernel")?;
            Ok(fiber.value.map(|f| r + f.max(*base_n)))
        }
        Rule::ProductMax => {
            if cert.premises.is_empty() {
                return Err("product of no factors".into());
            }
            let mut acc = Some(0u64);
            for pr in &cert.premises {
                same_direction(cert, pr)?;
                acc = match (acc, pr.value) {
                    (Some(a), Some(v)) => Some(a.max(v)),
                    _ => None,
                };
            }
            Ok(acc)
        }
        Rule::Equivalence { .. } => {
            let [inner] = cert.premises.as_slice() else {
                return Err("equivalence needs exactly one premise".into());
            };
            same_direction(cert, inner)?;
            Ok(inner.value)
        }
        Rule::CitedFact { p, space } => {
            no_premises(cert)?;
            let fact = facts
                .lookup_rendered(space, *p)
                .ok_or_else(|| format!("no cited fact for {space} at p = {p}"))?;
            let side = match cert.relation {
                Relation::Lower => fact.lower,
                Relation::Upper => fact.upper,
                Relation::Exact => None,
            };
            match side {
                Some((v, c)) if c == cert.citation => Ok(Some(v)),
                Some(_) => Err("citation differs from the fact base".into()),
                None => Err("fact base has no bound on this side".into()),
            }
        }
        Rule::PointSpace => {
            no_premises(cert)?;
            Ok(Some(0))
        }
        Rule::Unconstrained => {
            no_premises(cert)?;
            Ok(match cert.relation {
                Relation::Upper => None,
                _ => Some(0),
            })
        }
    }
}
