//! Rule dispatch: gathers every applicable lower- and upper-bound derivation
//! for a space and keeps the sharpest of each.

use std::cmp::Reverse;

use once_cell::sync::Lazy;

use super::formulas::{
    large_branch, small_branch, su_lower_band, su_lower_factorial, su_prime_tower, su_upper_large,
    su_upper_small, two_cell_values,
};
use crate::arith::{nu_factorial, OddPrime};
use crate::error::{Error, Result};
use crate::exceptional::ExceptionalGroup;
use crate::facts::FactBase;
use crate::spaces::{
    validate_for_prime, BoundInterval, Bundle, Certificate, Citation, LieGroup, Relation, Rule,
    Space,
};
use crate::splittings::{mnt_su_factors, recognize_su, su_prime_factor};

/// The prime being worked at, and whether extrapolated rule instances are
/// allowed to fire.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RuleContext {
    pub p: OddPrime,
    pub strict: bool,
}

impl RuleContext {
    pub fn new(p: OddPrime) -> Self {
        RuleContext { p, strict: false }
    }

    pub fn strict(p: OddPrime) -> Self {
        RuleContext { p, strict: true }
    }
}

#[derive(Debug, Default)]
struct Candidates {
    lower: Vec<Certificate>,
    upper: Vec<Certificate>,
}

impl Candidates {
    fn push_interval(&mut self, iv: BoundInterval) {
        let (lo, hi) = (iv.lower_cert().clone(), iv.upper_cert().clone());
        self.lower.push(lo);
        self.upper.push(hi);
    }

    fn extend(&mut self, other: Candidates) {
        self.lower.extend(other.lower);
        self.upper.extend(other.upper);
    }
}

/// Derivation engine over an immutable [`FactBase`].
#[derive(Debug, Clone, Default)]
pub struct Engine {
    facts: FactBase,
}

static STANDARD: Lazy<Engine> = Lazy::new(|| Engine::new(FactBase::standard()));

fn subject(p: OddPrime, s: impl std::fmt::Display) -> String {
    format!("exp_{p}({s})")
}

fn is_verbatim_tower(p: OddPrime, dims: &[u64]) -> bool {
    p.get() == 7 && (dims == [23, 35, 47] || dims == [23, 35, 47, 59])
}

impl Engine {
    pub fn new(facts: FactBase) -> Self {
        Engine { facts }
    }

    /// The engine over the standard fact base.
    pub fn standard() -> &'static Engine {
        &STANDARD
    }

    pub fn facts(&self) -> &FactBase {
        &self.facts
    }

    /// Bounds `exp_p(s)` by every applicable rule.
    pub fn exponent_interval(&self, s: &Space, ctx: &RuleContext) -> Result<BoundInterval> {
        validate_for_prime(s, ctx.p)?;
        let cands = self.candidates(s, ctx)?;
        select(&subject(ctx.p, s), cands)
    }

    fn candidates(&self, s: &Space, ctx: &RuleContext) -> Result<Candidates> {
        let p = ctx.p;
        let mut c = match s {
            Space::Sphere(d) => {
                let cert = sphere_cert(p, *d);
                Candidates {
                    lower: vec![cert.clone()],
                    upper: vec![cert],
                }
            }
            Space::Bundle(b) => self.bundle_candidates(b, ctx)?,
            Space::Product(factors) => {
                let mut c = self.product_route(s, factors, ctx)?;
                if let Some(n) = recognize_su(factors, p) {
                    c.extend(wrap_all(
                        su_direct(p, n),
                        format!("SU({n}) ≃ {s}"),
                        Citation::Mnt,
                        &subject(p, s),
                    ));
                }
                c
            }
            Space::Group(g) => self.group_candidates(*g, s, ctx)?,
            Space::Exotic(_) => Candidates::default(),
        };
        if let Some(fact) = self.facts.lookup(s, p) {
            let subj = subject(p, s);
            let rule = Rule::CitedFact {
                p: p.get(),
                space: s.to_string(),
            };
            if let Some((v, cite)) = fact.lower {
                c.lower.push(Certificate::new(
                    rule.clone(),
                    cite,
                    Relation::Lower,
                    &subj,
                    Some(v),
                    vec![],
                ));
            }
            if let Some((v, cite)) = fact.upper {
                c.upper.push(Certificate::new(
                    rule,
                    cite,
                    Relation::Upper,
                    &subj,
                    Some(v),
                    vec![],
                ));
            }
        }
        Ok(c)
    }

    fn product_route(&self, s: &Space, factors: &[Space], ctx: &RuleContext) -> Result<Candidates> {
        let mut lowers = Vec::with_capacity(factors.len());
        let mut uppers = Vec::with_capacity(factors.len());
        for f in factors {
            let iv = self.exponent_interval(f, ctx)?;
            lowers.push(iv.lower_cert().clone());
            uppers.push(iv.upper_cert().clone());
        }
        let subj = subject(ctx.p, s);
        Ok(Candidates {
            lower: vec![product_max(&subj, Relation::Lower, lowers)],
            upper: vec![product_max(&subj, Relation::Upper, uppers)],
        })
    }

    fn bundle_candidates(&self, b: &Bundle, ctx: &RuleContext) -> Result<Candidates> {
        let p = ctx.p;
        let mut c = Candidates::default();
        if b.attaching() != 1 {
            return Ok(c);
        }
        if b.cells() == 2 {
            c.push_interval(two_cell_bundle_interval(p, b)?);
        }
        // a complete residue class is SU'(m) for its top index m
        if b.bottom() < 2 * p.get() {
            let m = b.top().div_ceil(2);
            c.upper.push(su_tower_cert(p, m));
        }
        if b.cells() > 2 {
            if let Some(cert) = self.iterated_bundle_upper(ctx, b)? {
                c.upper.push(cert);
            }
        }
        Ok(c)
    }

    /// Upper bound for a bundle from the tower of fibrations
    /// `B(d₁..d_{k-1}) → B(d₁..d_k) → S^{d_k}`, each cokernel bounded by one
    /// factor of `p` per lower sphere. Returns `None` when the rule does not
    /// apply: some `(d_k - d_i)/q ≥ p`, or (in strict mode) the instance is
    /// not one of the two worked towers at `p = 7`.
    pub fn iterated_bundle_upper(
        &self,
        ctx: &RuleContext,
        b: &Bundle,
    ) -> Result<Option<Certificate>> {
        let p = ctx.p;
        validate_for_prime(&Space::Bundle(b.clone()), p)?;
        if b.attaching() != 1 {
            return Ok(None);
        }
        let Some(fiber) = b.fiber() else {
            let iv = two_cell_bundle_interval(p, b)?;
            return Ok(Some(iv.upper_cert().clone()));
        };
        if !alpha_guard(p, b.dims()) {
            return Ok(None);
        }
        let verbatim = is_verbatim_tower(p, b.dims());
        if ctx.strict && !verbatim {
            return Ok(None);
        }
        let fiber_space = Space::Bundle(fiber);
        let fiber_cert = self
            .exponent_interval(&fiber_space, ctx)?
            .upper_cert()
            .clone();
        let top = b.top();
        let base_n = (top - 1) / 2;
        let r = (b.cells() - 1) as u64;
        let coker = Certificate::new(
            Rule::AlphaCokernel {
                p: p.get(),
                dims: b.dims().to_vec(),
            },
            Citation::Alpha1,
            Relation::Upper,
            format!("ν_{p}|coker(π_{}({b}) → π_{}(S^{top}))|", top, top),
            Some(r),
            vec![],
        );
        let value = fiber_cert
            .value
            .map(|f| super::formulas::fibration_upper(r, base_n, f));
        Ok(Some(
            Certificate::new(
                Rule::Fibration { base_n },
                Citation::Th1Lemma,
                Relation::Upper,
                subject(p, b),
                value,
                vec![fiber_cert, coker],
            )
            .extrapolated(!verbatim),
        ))
    }

    fn group_candidates(&self, g: LieGroup, s: &Space, ctx: &RuleContext) -> Result<Candidates> {
        let p = ctx.p;
        let subj = subject(p, s);
        Ok(match g {
            LieGroup::SU(1) => {
                let cert = Certificate::new(
                    Rule::PointSpace,
                    Citation::Trivial,
                    Relation::Exact,
                    &subj,
                    Some(0),
                    vec![],
                );
                Candidates {
                    lower: vec![cert.clone()],
                    upper: vec![cert],
                }
            }
            LieGroup::SU(n) => {
                let mut c = su_direct(p, n);
                let split = Space::product(mnt_su_factors(p, n))?;
                let route = match &split {
                    Space::Product(fs) => self.product_route(&split, fs, ctx)?,
                    single => self.candidates(single, ctx)?,
                };
                c.extend(wrap_all(
                    route,
                    format!("{s} ≃ {split}"),
                    Citation::Mnt,
                    &subj,
                ));
                c
            }
            LieGroup::Sp(n) => self.sp_candidates(p, n, ctx)?,
            LieGroup::Spin(m) if m % 2 == 1 => {
                let n = (m - 1) / 2;
                let sp = Space::Group(LieGroup::Sp(n));
                let iv = self.exponent_interval(&sp, ctx)?;
                let mut c = Candidates::default();
                c.push_interval(iv);
                wrap_all(c, format!("{s} ≃ {sp}"), Citation::Harris, &subj)
            }
            LieGroup::Spin(m) => {
                let n = (m - 2) / 2;
                let split =
                    Space::product([Space::Group(LieGroup::Sp(n)), Space::Sphere(2 * n + 1)])?;
                let Space::Product(fs) = &split else {
                    unreachable!()
                };
                let route = self.product_route(&split, fs, ctx)?;
                wrap_all(route, format!("{s} ≃ {split}"), Citation::Harris, &subj)
            }
            LieGroup::G2 | LieGroup::F4 | LieGroup::E6 | LieGroup::E7 | LieGroup::E8 => {
                let group = ExceptionalGroup::try_from(g).expect("exceptional");
                let row = self.exceptional_row(group, ctx)?;
                let via = match row.via_su {
                    Some(n) => format!("{} factor of {s} and of SU({n})", row.factor),
                    None => format!("{} factor of {s}", row.factor),
                };
                let mut c = Candidates::default();
                c.push_interval(row.interval);
                wrap_all(c, via, Citation::BdmiSplitting, &subj)
            }
        })
    }

    fn sp_candidates(&self, p: OddPrime, n: u64, ctx: &RuleContext) -> Result<Candidates> {
        let sp = Space::Group(LieGroup::Sp(n));
        let subj = subject(p, &sp);
        let su = Space::Group(LieGroup::SU(2 * n));
        let su_iv = self.exponent_interval(&su, ctx)?;
        let direct = su_direct(p, 2 * n);
        let mut c = Candidates::default();
        for cert in direct.lower {
            c.lower.push(Certificate::transfer(
                cert,
                format!("v1-periodic classes of {su} lie in {sp}"),
                Citation::BdSpin,
                Relation::Lower,
                &subj,
            ));
        }
        let sphere = sphere_cert(p, 2 * n + 1);
        c.lower.push(Certificate::transfer(
            sphere,
            format!("S^{} ⊂ Spin({}) ≃ {sp}", 2 * n + 1, 2 * n + 1),
            Citation::Harris,
            Relation::Lower,
            &subj,
        ));
        c.upper.push(Certificate::transfer(
            su_iv.upper_cert().clone(),
            format!("{sp} is a factor of {su}"),
            Citation::Harris,
            Relation::Upper,
            &subj,
        ));
        Ok(c)
    }
}

fn alpha_guard(p: OddPrime, dims: &[u64]) -> bool {
    let q = p.q();
    let top = *dims.last().unwrap();
    dims.windows(2).all(|w| w[1] - w[0] == q) && dims.iter().all(|&d| (top - d) / q < p.get())
}

fn sphere_cert(p: OddPrime, dim: u64) -> Certificate {
    Certificate::new(
        Rule::SphereExponent { p: p.get(), dim },
        Citation::Cmn,
        Relation::Exact,
        subject(p, format!("S^{dim}")),
        Some(super::formulas::sphere_value(dim)),
        vec![],
    )
}

fn product_max(subj: &str, relation: Relation, premises: Vec<Certificate>) -> Certificate {
    let value = premises
        .iter()
        .map(|c| c.value)
        .try_fold(0u64, |acc, v| v.map(|v| acc.max(v)));
    Certificate::new(
        Rule::ProductMax,
        Citation::Product,
        relation,
        subj,
        value,
        premises,
    )
}

fn wrap_all(c: Candidates, via: String, citation: Citation, subj: &str) -> Candidates {
    Candidates {
        lower: c
            .lower
            .into_iter()
            .map(|x| Certificate::transfer(x, via.clone(), citation, Relation::Lower, subj))
            .collect(),
        upper: c
            .upper
            .into_iter()
            .map(|x| Certificate::transfer(x, via.clone(), citation, Relation::Upper, subj))
            .collect(),
    }
}

/// The group-level rules for `SU(n)`, `n ≥ 2`: both closed-form upper
/// bounds where they apply and both v₁-periodic lower bounds.
fn su_direct(p: OddPrime, n: u64) -> Candidates {
    let subj = subject(p, format!("SU({n})"));
    let pp = p.get();
    let mut c = Candidates::default();
    c.lower.push(Certificate::new(
        Rule::SuLowerFactorial { p: pp, n },
        Citation::Ds,
        Relation::Lower,
        &subj,
        Some(su_lower_factorial(p, n)),
        vec![],
    ));
    if let Some(t) = su_lower_band(p, n) {
        c.lower.push(Certificate::new(
            Rule::SuLowerBand { p: pp, n, t },
            Citation::Dy,
            Relation::Lower,
            &subj,
            Some(n),
            vec![],
        ));
    }
    if small_branch(p, n) {
        c.upper.push(Certificate::new(
            Rule::SuUpperSmall { p: pp, n },
            Citation::Derived,
            Relation::Upper,
            &subj,
            Some(su_upper_small(p, n)),
            vec![],
        ));
    }
    if large_branch(p, n) {
        c.upper.push(Certificate::new(
            Rule::SuUpperLarge { p: pp, n },
            Citation::Derived,
            Relation::Upper,
            &subj,
            Some(su_upper_large(p, n)),
            vec![],
        ));
    }
    c
}

/// Certificate for the recursive bound on `SU'(m)`.
pub(crate) fn su_tower_cert(p: OddPrime, m: u64) -> Certificate {
    let f = su_prime_tower(p, m);
    tower_node(p, m, &f)
}

fn tower_node(p: OddPrime, m: u64, f: &[u64]) -> Certificate {
    let step = p.get() - 1;
    if m < step + 2 {
        return sphere_cert(p, 2 * m - 1);
    }
    let fiber = tower_node(p, m - step, f);
    let factor = su_prime_factor(p, m);
    let coker = Certificate::new(
        Rule::BhCokernel { p: p.get(), m },
        Citation::Bh,
        Relation::Upper,
        format!(
            "ν_{p}|coker(π_{}({factor}) → π_{}(S^{}))|",
            2 * m - 1,
            2 * m - 1,
            2 * m - 1
        ),
        Some(nu_factorial(p, m - 1)),
        vec![],
    );
    Certificate::new(
        Rule::Fibration { base_n: m - 1 },
        Citation::Th1Lemma,
        Relation::Upper,
        subject(p, &factor),
        Some(f[m as usize]),
        vec![fiber, coker],
    )
}

/// Keeps the largest lower and smallest upper bound. Ties go to the
/// certificate with fewer extrapolated nodes, then fewer nodes, then the
/// earlier candidate.
fn select(subj: &str, c: Candidates) -> Result<BoundInterval> {
    let lower = c
        .lower
        .into_iter()
        .min_by_key(|x| {
            (
                Reverse(x.value.unwrap_or(u64::MAX)),
                x.extrapolated_count(),
                x.node_count(),
            )
        })
        .unwrap_or_else(|| Certificate::unconstrained(subj, Relation::Lower));
    let upper = c
        .upper
        .into_iter()
        .min_by_key(|x| {
            (
                x.value.unwrap_or(u64::MAX),
                x.extrapolated_count(),
                x.node_count(),
            )
        })
        .unwrap_or_else(|| Certificate::unconstrained(subj, Relation::Upper));
    BoundInterval::new(lower, upper).map_err(|e| match e {
        Error::Inconsistent { lower, upper, .. } => Error::Inconsistent {
            space: subj.to_string(),
            lower,
            upper,
        },
        other => other,
    })
}

/// Bounds for `B(2n+1, 2n+1+q)` attached by α₁.
pub fn two_cell_bundle_interval(p: OddPrime, b: &Bundle) -> Result<BoundInterval> {
    if b.attaching() != 1 || b.cells() != 2 {
        return Err(Error::RuleInapplicable {
            rule: "two_cell_bundle",
            reason: format!("{b} is not a two-cell α1 bundle"),
        });
    }
    if b.top() - b.bottom() != p.q() {
        return Err(Error::RuleInapplicable {
            rule: "two_cell_bundle",
            reason: format!("gap {} of {b} is not q = {}", b.top() - b.bottom(), p.q()),
        });
    }
    let (lo, hi) = two_cell_values(p, b.bottom());
    let subj = subject(p, b);
    let lower = Certificate::new(
        Rule::TwoCellLower {
            p: p.get(),
            bottom: b.bottom(),
        },
        Citation::BdmiLower,
        Relation::Lower,
        &subj,
        Some(lo),
        vec![],
    );
    let upper = Certificate::new(
        Rule::TwoCellUpper {
            p: p.get(),
            bottom: b.bottom(),
        },
        Citation::Th1Bundle,
        Relation::Upper,
        &subj,
        Some(hi),
        vec![],
    );
    BoundInterval::new(lower, upper)
}

/// `exp_p(S^dim) = (dim-1)/2`, as a certificate.
pub fn sphere_exponent(p: OddPrime, dim: u64) -> Result<Certificate> {
    Space::sphere(dim)?;
    Ok(sphere_cert(p, dim))
}

/// [`Engine::exponent_interval`] over the standard fact base.
pub fn exponent_interval(s: &Space, ctx: &RuleContext) -> Result<BoundInterval> {
    Engine::standard().exponent_interval(s, ctx)
}

/// [`Engine::iterated_bundle_upper`] over the standard fact base.
pub fn iterated_bundle_upper(ctx: &RuleContext, b: &Bundle) -> Result<Option<Certificate>> {
    Engine::standard().iterated_bundle_upper(ctx, b)
}

/// Bounds for `Sp(n)`: lower from the v₁-periodic classes of `SU(2n)`, which
/// sit in its `Sp(n)` factor; upper from `SU(2n)` itself.
pub fn sp_interval(p: OddPrime, n: u64) -> Result<BoundInterval> {
    exponent_interval(&Space::group(LieGroup::Sp(n))?, &RuleContext::new(p))
}
