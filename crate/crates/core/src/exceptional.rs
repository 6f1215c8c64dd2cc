//! The exceptional-group exponent table, with each band either derived by
//! the engine from its dominant factor or taken from the fact base.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith::{odd_primes_up_to, OddPrime};
use crate::bounds::replay::replay;
use crate::bounds::{Engine, RuleContext};
use crate::error::{Error, Result};
use crate::spaces::{BoundInterval, Bundle, ExoticAtom, LieGroup, Space};
use crate::splittings::su_prime_factor;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ExceptionalGroup {
    G2,
    F4,
    E6,
    E7,
    E8,
}

impl ExceptionalGroup {
    pub const ALL: [ExceptionalGroup; 5] = [
        ExceptionalGroup::G2,
        ExceptionalGroup::F4,
        ExceptionalGroup::E6,
        ExceptionalGroup::E7,
        ExceptionalGroup::E8,
    ];

    /// The torsion primes left out of the table.
    pub fn is_excluded(self, p: u64) -> bool {
        p == 3 && matches!(self, ExceptionalGroup::E7 | ExceptionalGroup::E8)
    }

    pub fn lie_group(self) -> LieGroup {
        match self {
            ExceptionalGroup::G2 => LieGroup::G2,
            ExceptionalGroup::F4 => LieGroup::F4,
            ExceptionalGroup::E6 => LieGroup::E6,
            ExceptionalGroup::E7 => LieGroup::E7,
            ExceptionalGroup::E8 => LieGroup::E8,
        }
    }
}

impl TryFrom<LieGroup> for ExceptionalGroup {
    type Error = LieGroup;

    fn try_from(g: LieGroup) -> std::result::Result<Self, LieGroup> {
        match g {
            LieGroup::G2 => Ok(ExceptionalGroup::G2),
            LieGroup::F4 => Ok(ExceptionalGroup::F4),
            LieGroup::E6 => Ok(ExceptionalGroup::E6),
            LieGroup::E7 => Ok(ExceptionalGroup::E7),
            LieGroup::E8 => Ok(ExceptionalGroup::E8),
            other => Err(other),
        }
    }
}

impl fmt::Display for ExceptionalGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.lie_group().fmt(f)
    }
}

/// Which odd primes a band covers.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PrimeCondition {
    Exact(u64),
    Set(Vec<u64>),
    /// Inclusive.
    Range(u64, u64),
    /// Strictly greater than.
    Above(u64),
}

impl PrimeCondition {
    pub fn contains(&self, p: u64) -> bool {
        match self {
            PrimeCondition::Exact(q) => p == *q,
            PrimeCondition::Set(qs) => qs.contains(&p),
            PrimeCondition::Range(a, b) => (*a..=*b).contains(&p),
            PrimeCondition::Above(c) => p > *c,
        }
    }

    pub fn label(&self) -> String {
        match self {
            PrimeCondition::Exact(q) => q.to_string(),
            PrimeCondition::Set(qs) => qs.iter().map(u64::to_string).collect::<Vec<_>>().join(","),
            PrimeCondition::Range(a, b) => format!("{a}-{b}"),
            PrimeCondition::Above(c) => format!(">{c}"),
        }
    }
}

/// The dominant factor of a band, possibly depending on `p`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FactorTemplate {
    Fixed(Space),
    /// `B(top-q, top)`.
    BelowTop(u64),
}

impl FactorTemplate {
    pub fn instantiate(&self, p: OddPrime) -> Result<Space> {
        match self {
            FactorTemplate::Fixed(s) => Ok(s.clone()),
            FactorTemplate::BelowTop(top) => {
                let bottom = top.checked_sub(p.q()).filter(|&b| b >= 3).ok_or_else(|| {
                    Error::InvalidSpace(format!("B({top}-q,{top}) is empty at p = {p}"))
                })?;
                Space::bundle([bottom, *top])
            }
        }
    }

    pub fn symbolic(&self) -> String {
        match self {
            FactorTemplate::Fixed(s) => s.to_string(),
            FactorTemplate::BelowTop(top) => format!("B({top}-q,{top})"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RowMode {
    /// Both bounds come out of the engine.
    Derived,
    /// Both bounds come from the fact base.
    CitedFact,
    /// The lower bound is cited, the upper derived.
    Mixed,
}

impl fmt::Display for RowMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RowMode::Derived => "derived",
            RowMode::CitedFact => "cited-fact",
            RowMode::Mixed => "mixed",
        })
    }
}

/// One band of the table as stated in the literature.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableBand {
    pub group: ExceptionalGroup,
    pub condition: PrimeCondition,
    pub stated: (u64, u64),
    pub factor: FactorTemplate,
    /// Bound the factor through `SU(n)` rather than directly.
    pub via_su: Option<u64>,
    pub mode: RowMode,
    pub references: Vec<String>,
}

/// A computed table row, possibly covering several primes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableRow {
    pub groups: Vec<ExceptionalGroup>,
    pub condition: PrimeCondition,
    pub primes: Vec<u64>,
    pub interval: BoundInterval,
    pub factor: Space,
    pub template: FactorTemplate,
    pub via_su: Option<u64>,
    pub mode: RowMode,
    pub references: Vec<String>,
}

impl TableRow {
    pub fn group_label(&self) -> String {
        self.groups
            .iter()
            .map(ExceptionalGroup::to_string)
            .collect::<Vec<_>>()
            .join(",")
    }

    /// The factor, written in terms of `q` when the row spans several primes.
    pub fn factor_label(&self) -> String {
        if self.primes.len() > 1 {
            self.template.symbolic()
        } else {
            self.factor.to_string()
        }
    }

    fn same_content(&self, other: &TableRow) -> bool {
        self.condition == other.condition
            && self.primes == other.primes
            && self.interval.bounds() == other.interval.bounds()
            && self.template == other.template
            && self.factor_label() == other.factor_label()
            && self.mode == other.mode
            && self.references == other.references
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExceptionalTable {
    pub rows: Vec<TableRow>,
    /// Requested `(group, p)` pairs that are outside the table.
    pub skipped: Vec<(ExceptionalGroup, u64)>,
}

fn refs(items: &[&str]) -> Vec<String> {
    items.iter().map(|s| s.to_string()).collect()
}

fn band(
    group: ExceptionalGroup,
    condition: PrimeCondition,
    stated: (u64, u64),
    factor: FactorTemplate,
    mode: RowMode,
    references: &[&str],
) -> TableBand {
    TableBand {
        group,
        condition,
        stated,
        factor,
        via_su: None,
        mode,
        references: refs(references),
    }
}

fn fixed(expr: &str) -> FactorTemplate {
    FactorTemplate::Fixed(crate::spaces::parse_space(expr).expect("static factor"))
}

pub fn standard_bands() -> Vec<TableBand> {
    use ExceptionalGroup::*;
    use PrimeCondition::*;
    use RowMode::*;

    let mut bands = vec![
        band(
            G2,
            Exact(3),
            (6, 6),
            FactorTemplate::Fixed(Space::Bundle(Bundle::new(vec![3, 11], 2).unwrap())),
            CitedFact,
            &["BDMi 1.3", "Th1 2.2"],
        ),
        band(G2, Exact(5), (6, 6), fixed("B(3,11)"), Derived, &[]),
        band(G2, Above(5), (5, 5), fixed("S^11"), Derived, &[]),
    ];
    for g in [F4, E6] {
        bands.extend([
            band(
                g,
                Exact(3),
                (12, 12),
                FactorTemplate::Fixed(Space::Exotic(ExoticAtom::K3)),
                CitedFact,
                &["BDF4 1.6", "Th1 1.2"],
            ),
            band(
                g,
                Set(vec![5, 7]),
                (11, 12),
                FactorTemplate::BelowTop(23),
                Derived,
                &[],
            ),
            band(g, Exact(11), (12, 12), fixed("B(3,23)"), Derived, &[]),
            band(g, Above(11), (11, 11), fixed("S^23"), Derived, &[]),
        ]);
    }
    bands.extend([
        TableBand {
            via_su: Some(18),
            ..band(
                E7,
                Exact(5),
                (18, 20),
                fixed("B(3,11,19,27,35)"),
                Derived,
                &["factor of SU(18)"],
            )
        },
        TableBand {
            via_su: Some(18),
            ..band(
                E7,
                Exact(7),
                (17, 19),
                fixed("B(11,23,35)"),
                Derived,
                &["factor of SU(18)"],
            )
        },
        band(
            E7,
            Set(vec![11, 13]),
            (17, 18),
            FactorTemplate::BelowTop(35),
            Derived,
            &[],
        ),
        band(E7, Exact(17), (18, 18), fixed("B(3,35)"), Derived, &[]),
        band(E7, Above(17), (17, 17), fixed("S^35"), Derived, &[]),
        band(
            E8,
            Exact(5),
            (30, 31),
            FactorTemplate::Fixed(Space::Exotic(ExoticAtom::W)),
            CitedFact,
            &["Rep 1.1", "Th2 1.2"],
        ),
        band(
            E8,
            Exact(7),
            (29, 32),
            fixed("B(23,35,47,59)"),
            Mixed,
            &["BDMi 1.4", "iterated fibration"],
        ),
        band(
            E8,
            Range(11, 23),
            (29, 30),
            FactorTemplate::BelowTop(59),
            Derived,
            &[],
        ),
        band(E8, Exact(29), (30, 30), fixed("B(3,59)"), Derived, &[]),
        band(E8, Above(29), (29, 29), fixed("S^59"), Derived, &[]),
    ]);
    bands
}

/// The primes listed explicitly in the table, plus one beyond every
/// threshold.
pub fn default_table_primes() -> Vec<OddPrime> {
    odd_primes_up_to(31)
}

impl Engine {
    pub fn band(&self, group: ExceptionalGroup, p: OddPrime) -> Result<&TableBand> {
        if group.is_excluded(p.get()) {
            return Err(Error::ExcludedTorsion { group, p: p.get() });
        }
        self.facts()
            .bands
            .iter()
            .find(|b| b.group == group && b.condition.contains(p.get()))
            .ok_or(Error::ExcludedTorsion { group, p: p.get() })
    }

    /// The table row for `group` at `p`, computed by the engine from the
    /// band's factor (or from `SU(n)` for bands bounded through it).
    pub fn exceptional_row(&self, group: ExceptionalGroup, ctx: &RuleContext) -> Result<TableRow> {
        let band = self.band(group, ctx.p)?;
        let factor = band.factor.instantiate(ctx.p)?;
        let target = match band.via_su {
            Some(n) => Space::group(LieGroup::SU(n))?,
            None => factor.clone(),
        };
        let interval = self.exponent_interval(&target, ctx)?;
        Ok(TableRow {
            groups: vec![group],
            condition: band.condition.clone(),
            primes: vec![ctx.p.get()],
            interval,
            factor,
            template: band.factor.clone(),
            via_su: band.via_su,
            mode: band.mode,
            references: band.references.clone(),
        })
    }

    /// Rows for every group at every prime in `primes`, coalesced into
    /// prime bands, with identical adjacent groups merged.
    pub fn exceptional_table(&self, primes: &[OddPrime], strict: bool) -> Result<ExceptionalTable> {
        let mut primes: Vec<OddPrime> = primes.to_vec();
        primes.sort();
        primes.dedup();
        let mut skipped = Vec::new();
        let mut per_group: Vec<Vec<TableRow>> = Vec::new();
        for group in ExceptionalGroup::ALL {
            let mut rows: Vec<TableRow> = Vec::new();
            for &p in &primes {
                if group.is_excluded(p.get()) {
                    skipped.push((group, p.get()));
                    continue;
                }
                let ctx = RuleContext { p, strict };
                let row = self.exceptional_row(group, &ctx)?;
                match rows.last_mut() {
                    Some(prev)
                        if prev.condition == row.condition
                            && prev.interval.bounds() == row.interval.bounds()
                            && prev.template == row.template =>
                    {
                        prev.primes.push(p.get());
                    }
                    _ => rows.push(row),
                }
            }
            per_group.push(rows);
        }
        let mut merged: Vec<Vec<TableRow>> = Vec::new();
        for rows in per_group {
            if let Some(prev) = merged.last_mut() {
                let same = !rows.is_empty()
                    && prev.len() == rows.len()
                    && prev.iter().zip(&rows).all(|(a, b)| a.same_content(b));
                if same {
                    for (a, b) in prev.iter_mut().zip(rows) {
                        a.groups.extend(b.groups);
                    }
                    continue;
                }
            }
            merged.push(rows);
        }
        Ok(ExceptionalTable {
            rows: merged.into_iter().flatten().collect(),
            skipped,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CheckStatus {
    /// Derived by the engine and equal to the stated interval.
    Match,
    /// Rests on the fact base and equals the stated interval.
    Stored,
    Mismatch(String),
    /// A certificate failed to replay or the engine produced crossed bounds.
    Internal(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrosscheckEntry {
    pub group: ExceptionalGroup,
    pub condition: String,
    pub p: u64,
    pub stated: (u64, u64),
    pub computed: Option<(u64, Option<u64>)>,
    pub status: CheckStatus,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrosscheckReport {
    pub entries: Vec<CrosscheckEntry>,
}

/// Primes at which every band is recomputed.
pub const CROSSCHECK_PRIME_LIMIT: u64 = 61;

/// Recomputes every band at every odd prime up to
/// [`CROSSCHECK_PRIME_LIMIT`] and compares with the stated intervals.
pub fn crosscheck_table(engine: &Engine, strict: bool) -> CrosscheckReport {
    let mut entries = Vec::new();
    for p in odd_primes_up_to(CROSSCHECK_PRIME_LIMIT) {
        for group in ExceptionalGroup::ALL {
            let Ok(band) = engine.band(group, p) else {
                continue;
            };
            let ctx = RuleContext { p, strict };
            let (computed, status) = match engine.exceptional_row(group, &ctx) {
                Err(e @ Error::Inconsistent { .. }) => (None, CheckStatus::Internal(e.to_string())),
                Err(e) => (None, CheckStatus::Mismatch(e.to_string())),
                Ok(row) => (
                    Some(row.interval.bounds()),
                    check_row(engine, band, &row, p),
                ),
            };
            entries.push(CrosscheckEntry {
                group,
                condition: band.condition.label(),
                p: p.get(),
                stated: band.stated,
                computed,
                status,
            });
        }
    }
    CrosscheckReport { entries }
}

fn check_row(engine: &Engine, band: &TableBand, row: &TableRow, p: OddPrime) -> CheckStatus {
    for cert in [row.interval.lower_cert(), row.interval.upper_cert()] {
        if let Err(e) = replay(cert, engine.facts()) {
            return CheckStatus::Internal(e.to_string());
        }
    }
    if let Some(n) = band.via_su {
        let expected = su_prime_factor(p, n);
        if expected != row.factor {
            return CheckStatus::Mismatch(format!(
                "factor {} is not SU'({n}) = {expected}",
                row.factor
            ));
        }
    }
    let (lo, hi) = row.interval.bounds();
    if (lo, hi) != (band.stated.0, Some(band.stated.1)) {
        return CheckStatus::Mismatch(format!(
            "stated [{}, {}], computed {}",
            band.stated.0, band.stated.1, row.interval
        ));
    }
    match band.mode {
        RowMode::Derived => CheckStatus::Match,
        RowMode::CitedFact | RowMode::Mixed => CheckStatus::Stored,
    }
}

impl CrosscheckReport {
    fn cells(&self) -> BTreeMap<(ExceptionalGroup, String), Vec<&CrosscheckEntry>> {
        let mut cells: BTreeMap<_, Vec<_>> = BTreeMap::new();
        for e in &self.entries {
            cells
                .entry((e.group, e.condition.clone()))
                .or_default()
                .push(e);
        }
        cells
    }

    pub fn mismatches(&self) -> impl Iterator<Item = &CrosscheckEntry> {
        self.entries
            .iter()
            .filter(|e| matches!(e.status, CheckStatus::Mismatch(_)))
    }

    pub fn internal_failures(&self) -> impl Iterator<Item = &CrosscheckEntry> {
        self.entries
            .iter()
            .filter(|e| matches!(e.status, CheckStatus::Internal(_)))
    }

    /// Number of table cells (group × band) whose stated interval rests on
    /// the fact base.
    pub fn stored_cells(&self) -> usize {
        self.cells()
            .values()
            .filter(|es| es.iter().any(|e| e.status == CheckStatus::Stored))
            .count()
    }

    pub fn derived_cells(&self) -> usize {
        self.cells()
            .values()
            .filter(|es| es.iter().all(|e| e.status == CheckStatus::Match))
            .count()
    }

    pub fn exit_code(&self) -> i32 {
        if self.internal_failures().next().is_some() {
            2
        } else if self.mismatches().next().is_some() {
            1
        } else {
            0
        }
    }

    pub fn summary(&self) -> String {
        let bad = self.mismatches().count() + self.internal_failures().count();
        if bad == 0 {
            format!(
                "all derived rows match ({} cells); {} cited cells",
                self.derived_cells(),
                self.stored_cells()
            )
        } else {
            format!("{bad} table checks failed")
        }
    }

    /// One line per cell, ordered as the table is.
    pub fn render(&self) -> String {
        let mut out = String::new();
        let mut seen = Vec::new();
        for e in &self.entries {
            let key = (e.group, e.condition.clone());
            if seen.contains(&key) {
                continue;
            }
            seen.push(key.clone());
        }
        seen.sort_by_key(|(g, _)| *g);
        let cells = self.cells();
        for key in seen {
            let es = &cells[&key];
            let failure = es.iter().find(|e| {
                matches!(
                    e.status,
                    CheckStatus::Mismatch(_) | CheckStatus::Internal(_)
                )
            });
            let primes: Vec<String> = es.iter().map(|e| e.p.to_string()).collect();
            let (lo, hi) = es[0].stated;
            let status = match failure {
                Some(CrosscheckEntry {
                    status: CheckStatus::Mismatch(m),
                    p,
                    ..
                }) => format!("MISMATCH at p={p}: {m}"),
                Some(CrosscheckEntry {
                    status: CheckStatus::Internal(m),
                    p,
                    ..
                }) => format!("INTERNAL at p={p}: {m}"),
                _ if es[0].status == CheckStatus::Stored => "stored".to_string(),
                _ => "match".to_string(),
            };
            out.push_str(&format!(
                "{:<3} p {:<6} {:<8} {:<9} checked p = {}\n",
                key.0.to_string(),
                key.1,
                format!("[{lo},{hi}]"),
                status,
                primes.join(",")
            ));
        }
        out
    }
}
