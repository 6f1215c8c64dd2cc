//! The immutable knowledge the engine consults but cannot derive: exponent
//! facts cited from the literature, and the exceptional-group table bands.

use crate::arith::OddPrime;
use crate::exceptional::{standard_bands, TableBand};
use crate::spaces::{Bundle, Citation, ExoticAtom, Space};

/// A bound on `exp_p(space)` taken from the literature.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CitedFact {
    pub space: Space,
    pub p: OddPrime,
    pub lower: Option<(u64, Citation)>,
    pub upper: Option<(u64, Citation)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactBase {
    pub cited: Vec<CitedFact>,
    pub bands: Vec<TableBand>,
}

impl FactBase {
    pub fn standard() -> Self {
        let p3 = OddPrime::new(3).unwrap();
        let p5 = OddPrime::new(5).unwrap();
        let p7 = OddPrime::new(7).unwrap();
        let cited = vec![
            CitedFact {
                space: Space::Bundle(Bundle::new(vec![3, 11], 2).unwrap()),
                p: p3,
                lower: Some((6, Citation::BdmiLower)),
                upper: Some((6, Citation::Th1Lemma)),
            },
            CitedFact {
                space: Space::Exotic(ExoticAtom::K3),
                p: p3,
                lower: Some((12, Citation::Bdf4)),
                upper: Some((12, Citation::Th1Harper)),
            },
            CitedFact {
                space: Space::Exotic(ExoticAtom::W),
                p: p5,
                lower: Some((30, Citation::Rep)),
                upper: Some((31, Citation::Th2)),
            },
            CitedFact {
                space: Space::bundle([23, 35, 47, 59]).unwrap(),
                p: p7,
                lower: Some((29, Citation::BdmiE8)),
                upper: None,
            },
        ];
        FactBase {
            cited,
            bands: standard_bands(),
        }
    }

    pub fn lookup(&self, space: &Space, p: OddPrime) -> Option<&CitedFact> {
        self.cited.iter().find(|f| f.p == p && &f.space == space)
    }

    /// Lookup keyed by the rendered space, as stored in certificates.
    pub fn lookup_rendered(&self, space: &str, p: u64) -> Option<&CitedFact> {
        self.cited
            .iter()
            .find(|f| f.p.get() == p && f.space.to_string() == space)
    }
}

impl Default for FactBase {
    fn default() -> Self {
        FactBase::standard()
    }
}
