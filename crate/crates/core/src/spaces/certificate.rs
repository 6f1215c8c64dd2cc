//! Provenance trees for derived bounds.
//!
//! Each node names the rule that produced it, the source it rests on, and the
//! numeric conclusion. Rules carry the arguments needed to recompute their
//! value from the premises, so any tree can be replayed independently of the
//! engine that built it (see [`crate::bounds::replay`]).

use std::fmt;

use serde::{Deserialize, Serialize};

/// The fixed set of sources a certificate node may cite.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Citation {
    #[serde(rename = "CMN")]
    Cmn,
    #[serde(rename = "DS 1.1")]
    Ds,
    #[serde(rename = "DY 1.8")]
    Dy,
    #[serde(rename = "BDMi 1.1")]
    BdmiSplitting,
    #[serde(rename = "BDMi 1.3")]
    BdmiLower,
    #[serde(rename = "BDMi 1.4")]
    BdmiE8,
    #[serde(rename = "BDspin 1.2")]
    BdSpin,
    #[serde(rename = "BDF4 1.6")]
    Bdf4,
    #[serde(rename = "BH 26.7")]
    Bh,
    #[serde(rename = "Th1 1.2")]
    Th1Harper,
    #[serde(rename = "Th1 2.1")]
    Th1Bundle,
    #[serde(rename = "Th1 2.2")]
    Th1Lemma,
    #[serde(rename = "Th2 1.2")]
    Th2,
    #[serde(rename = "Rep 1.1")]
    Rep,
    #[serde(rename = "Harris")]
    Harris,
    #[serde(rename = "MNT")]
    Mnt,
    /// Order-p cyclicity of the α₁ family in the relevant stems.
    #[serde(rename = "alpha1")]
    Alpha1,
    /// Arithmetic composition of other cited results.
    #[serde(rename = "derived")]
    Derived,
    /// The exponent of a product is the maximum over its factors.
    #[serde(rename = "product")]
    Product,
    #[serde(rename = "none")]
    Trivial,
}

impl Citation {
    pub fn label(self) -> &'static str {
        match self {
            Citation::Cmn => "CMN",
            Citation::Ds => "DS 1.1",
            Citation::Dy => "DY 1.8",
            Citation::BdmiSplitting => "BDMi 1.1",
            Citation::BdmiLower => "BDMi 1.3",
            Citation::BdmiE8 => "BDMi 1.4",
            Citation::BdSpin => "BDspin 1.2",
            Citation::Bdf4 => "BDF4 1.6",
            Citation::Bh => "BH 26.7",
            Citation::Th1Harper => "Th1 1.2",
            Citation::Th1Bundle => "Th1 2.1",
            Citation::Th1Lemma => "Th1 2.2",
            Citation::Th2 => "Th2 1.2",
            Citation::Rep => "Rep 1.1",
            Citation::Harris => "Harris",
            Citation::Mnt => "MNT",
            Citation::Alpha1 => "alpha1",
            Citation::Derived => "derived",
            Citation::Product => "product",
            Citation::Trivial => "none",
        }
    }
}

impl fmt::Display for Citation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    Lower,
    Upper,
    Exact,
}

impl Relation {
    pub fn symbol(self) -> &'static str {
        match self {
            Relation::Lower => "≥",
            Relation::Upper => "≤",
            Relation::Exact => "=",
        }
    }
}

/// A rule instance together with the arguments its replay needs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "rule", content = "args", rename_all = "snake_case")]
pub enum Rule {
    /// `exp_p(S^{2n+1}) = n`.
    SphereExponent { p: u64, dim: u64 },
    /// `B(2n+1, 2n+1+q)`: `p+1` when `n = 1`, else `n+p-1`.
    TwoCellLower { p: u64, bottom: u64 },
    /// `B(2n+1, 2n+1+q)`: `p+1` when `n = 1`, else `n+p`.
    TwoCellUpper { p: u64, bottom: u64 },
    /// `exp_p(SU(n)) ≥ n-1+ν_p(⌊n/p⌋!)`.
    SuLowerFactorial { p: u64, n: u64 },
    /// `exp_p(SU(n)) ≥ n` when `tp-t+2 ≤ n ≤ tp+1`, `1 ≤ t < p`.
    SuLowerBand { p: u64, n: u64, t: u64 },
    /// `exp_p(SU(n)) ≤ n-1+ν_p((n-1)!)` for `n < p²+p`.
    SuUpperSmall { p: u64, n: u64 },
    /// `exp_p(SU(n)) ≤ n+p-3+C(⌊(n-2)/(p-1)⌋-p+2, 2)` for `n ≥ p²+1`.
    SuUpperLarge { p: u64, n: u64 },
    /// Cokernel of `π_{2m-1}(SU'(m)) → π_{2m-1}(S^{2m-1})` has valuation at
    /// most `ν_p((m-1)!)`.
    BhCokernel { p: u64, m: u64 },
    /// Cokernel for `B(d₁..d_{k-1}) → B(d₁..d_k) → S^{d_k}` has valuation at
    /// most `k-1`, each lower sphere contributing one `Z/p`.
    AlphaCokernel { p: u64, dims: Vec<u64> },
    /// `exp(E) ≤ r + max(exp(F), n)` for `F → E → S^{2n+1}`; premises are
    /// `[fiber upper bound, cokernel valuation]`.
    Fibration { base_n: u64 },
    /// Maximum over the premises.
    ProductMax,
    /// Value carried over unchanged through a p-local equivalence or factor
    /// inclusion; the single premise concerns the other side.
    Equivalence { via: String },
    /// Looked up in the fact base.
    CitedFact { p: u64, space: String },
    /// The one-point space.
    PointSpace,
    /// No rule applied: `0` for lower bounds, `+∞` for upper bounds.
    Unconstrained,
}

impl Rule {
    pub fn id(&self) -> &'static str {
        match self {
            Rule::SphereExponent { .. } => "sphere_exponent",
            Rule::TwoCellLower { .. } => "two_cell_lower",
            Rule::TwoCellUpper { .. } => "two_cell_upper",
            Rule::SuLowerFactorial { .. } => "su_lower_factorial",
            Rule::SuLowerBand { .. } => "su_lower_band",
            Rule::SuUpperSmall { .. } => "su_upper_small",
            Rule::SuUpperLarge { .. } => "su_upper_large",
            Rule::BhCokernel { .. } => "bh_cokernel",
            Rule::AlphaCokernel { .. } => "alpha_cokernel",
            Rule::Fibration { .. } => "fibration",
            Rule::ProductMax => "product_max",
            Rule::Equivalence { .. } => "equivalence",
            Rule::CitedFact { .. } => "cited_fact",
            Rule::PointSpace => "point_space",
            Rule::Unconstrained => "unconstrained",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    #[serde(flatten)]
    pub rule: Rule,
    pub citation: Citation,
    pub relation: Relation,
    pub statement: String,
    /// `None` stands for `+∞`.
    pub value: Option<u64>,
    pub extrapolated: bool,
    pub premises: Vec<Certificate>,
}

pub fn render_value(value: Option<u64>) -> String {
    value.map_or_else(|| "∞".to_string(), |v| v.to_string())
}

impl Certificate {
    pub fn new(
        rule: Rule,
        citation: Citation,
        relation: Relation,
        subject: impl fmt::Display,
        value: Option<u64>,
        premises: Vec<Certificate>,
    ) -> Self {
        Certificate {
            rule,
            citation,
            relation,
            statement: format!("{subject} {} {}", relation.symbol(), render_value(value)),
            value,
            extrapolated: false,
            premises,
        }
    }

    pub fn extrapolated(mut self, flag: bool) -> Self {
        self.extrapolated = flag;
        self
    }

    pub fn unconstrained(subject: impl fmt::Display, relation: Relation) -> Self {
        let value = match relation {
            Relation::Upper => None,
            _ => Some(0),
        };
        Certificate::new(
            Rule::Unconstrained,
            Citation::Trivial,
            relation,
            subject,
            value,
            vec![],
        )
    }

    /// Wraps `inner` as a conclusion about `subject`, carried over unchanged.
    pub fn transfer(
        inner: Certificate,
        via: impl Into<String>,
        citation: Citation,
        relation: Relation,
        subject: impl fmt::Display,
    ) -> Self {
        let value = inner.value;
        Certificate::new(
            Rule::Equivalence { via: via.into() },
            citation,
            relation,
            subject,
            value,
            vec![inner],
        )
    }

    pub fn node_count(&self) -> usize {
        1 + self
            .premises
            .iter()
            .map(Certificate::node_count)
            .sum::<usize>()
    }

    pub fn extrapolated_count(&self) -> usize {
        usize::from(self.extrapolated)
            + self
                .premises
                .iter()
                .map(Certificate::extrapolated_count)
                .sum::<usize>()
    }

    /// Whether any node in the tree rests on the fact base.
    pub fn uses_cited_fact(&self) -> bool {
        matches!(self.rule, Rule::CitedFact { .. })
            || self.premises.iter().any(Certificate::uses_cited_fact)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("certificates always serialize")
    }
}
