use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith::{OddPrime, MAX_INPUT};
use crate::error::{Error, Result};

/// A sphere bundle `B(d₁,…,d_k)`: iterated fibrations of odd spheres glued by
/// `α_a`. Only `a = 1` bundles carry derivation rules; the single `α₂` bundle
/// is `B₂(3,11)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Bundle {
    dims: Vec<u64>,
    attaching: u32,
}

impl Bundle {
    pub fn new(dims: Vec<u64>, attaching: u32) -> Result<Self> {
        if dims.len() < 2 {
            return Err(Error::InvalidSpace(format!(
                "a bundle needs at least two cells, got {}",
                dims.len()
            )));
        }
        for &d in &dims {
            check_sphere_dim(d)?;
        }
        if let Some(w) = dims.windows(2).find(|w| w[0] >= w[1]) {
            return Err(Error::InvalidSpace(format!(
                "bundle dimensions must be strictly increasing ({} then {})",
                w[0], w[1]
            )));
        }
        match attaching {
            1 => {}
            2 if dims == [3, 11] => {}
            0 => {
                return Err(Error::InvalidSpace(
                    "attaching index must be positive".into(),
                ))
            }
            a => {
                return Err(Error::InvalidSpace(format!(
                    "no bundle with attaching map α{a} on {dims:?} is modeled"
                )))
            }
        }
        Ok(Bundle { dims, attaching })
    }

    /// `B(d₁,…,d_k)` attached by α₁.
    pub fn alpha1(dims: impl Into<Vec<u64>>) -> Result<Self> {
        Bundle::new(dims.into(), 1)
    }

    pub fn dims(&self) -> &[u64] {
        &self.dims
    }

    pub fn attaching(&self) -> u32 {
        self.attaching
    }

    pub fn bottom(&self) -> u64 {
        self.dims[0]
    }

    pub fn top(&self) -> u64 {
        *self.dims.last().expect("bundle has at least two cells")
    }

    pub fn cells(&self) -> usize {
        self.dims.len()
    }

    /// The bundle with its top cell removed, i.e. the fiber over `S^top`.
    /// `None` for a two-cell bundle, whose fiber is a sphere.
    pub fn fiber(&self) -> Option<Bundle> {
        (self.dims.len() > 2).then(|| Bundle {
            dims: self.dims[..self.dims.len() - 1].to_vec(),
            attaching: self.attaching,
        })
    }

    /// True when every consecutive gap is exactly `q`.
    pub fn has_gaps(&self, q: u64) -> bool {
        self.dims.windows(2).all(|w| w[1] - w[0] == q)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum LieGroup {
    SU(u64),
    Sp(u64),
    Spin(u64),
    G2,
    F4,
    E6,
    E7,
    E8,
}

/// Opaque p-local factors of exceptional groups that are known only through
/// cited exponent facts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ExoticAtom {
    K3,
    K5,
    W,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Space {
    Sphere(u64),
    Bundle(Bundle),
    /// Flat, nonempty, with at least two factors.
    Product(Vec<Space>),
    Group(LieGroup),
    Exotic(ExoticAtom),
}

fn check_sphere_dim(d: u64) -> Result<()> {
    if d < 3 || d.is_multiple_of(2) {
        return Err(Error::InvalidSpace(format!(
            "sphere dimension {d} must be odd and at least 3"
        )));
    }
    if d > MAX_INPUT {
        return Err(Error::InvalidSpace(format!("dimension {d} is too large")));
    }
    Ok(())
}

impl Space {
    pub fn sphere(dim: u64) -> Result<Space> {
        check_sphere_dim(dim)?;
        Ok(Space::Sphere(dim))
    }

    pub fn bundle(dims: impl Into<Vec<u64>>) -> Result<Space> {
        Ok(Space::Bundle(Bundle::alpha1(dims)?))
    }

    pub fn group(g: LieGroup) -> Result<Space> {
        let s = Space::Group(g);
        s.validate()?;
        Ok(s)
    }

    /// Builds a product in canonical form: nested products are spliced in
    /// place and a single factor is returned as itself.
    pub fn product(factors: impl IntoIterator<Item = Space>) -> Result<Space> {
        let mut flat = Vec::new();
        for f in factors {
            match f {
                Space::Product(inner) => flat.extend(inner),
                other => flat.push(other),
            }
        }
        match flat.len() {
            0 => Err(Error::InvalidSpace("empty product".into())),
            1 => Ok(flat.pop().unwrap()),
            _ => Ok(Space::Product(flat)),
        }
    }

    /// Checks the structural invariants of every node.
    pub fn validate(&self) -> Result<()> {
        match self {
            Space::Sphere(d) => check_sphere_dim(*d),
            Space::Bundle(b) => Bundle::new(b.dims.clone(), b.attaching).map(|_| ()),
            Space::Product(fs) => {
                if fs.len() < 2 {
                    return Err(Error::InvalidSpace(
                        "a product needs at least two factors".into(),
                    ));
                }
                for f in fs {
                    if matches!(f, Space::Product(_)) {
                        return Err(Error::InvalidSpace("nested product".into()));
                    }
                    f.validate()?;
                }
                Ok(())
            }
            Space::Group(g) => match *g {
                LieGroup::SU(n) | LieGroup::Sp(n) if n == 0 => Err(Error::InvalidSpace(format!(
                    "{} needs rank at least 1",
                    render_space(self)
                ))),
                LieGroup::Spin(n) if n < 3 => Err(Error::InvalidSpace(format!(
                    "Spin({n}) is not supported; need n >= 3"
                ))),
                LieGroup::SU(n) | LieGroup::Sp(n) | LieGroup::Spin(n) if n > MAX_INPUT => {
                    Err(Error::InvalidSpace(format!("rank {n} is too large")))
                }
                _ => Ok(()),
            },
            Space::Exotic(_) => Ok(()),
        }
    }
}

impl fmt::Display for LieGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LieGroup::SU(n) => write!(f, "SU({n})"),
            LieGroup::Sp(n) => write!(f, "Sp({n})"),
            LieGroup::Spin(n) => write!(f, "Spin({n})"),
            LieGroup::G2 => f.write_str("G2"),
            LieGroup::F4 => f.write_str("F4"),
            LieGroup::E6 => f.write_str("E6"),
            LieGroup::E7 => f.write_str("E7"),
            LieGroup::E8 => f.write_str("E8"),
        }
    }
}

impl fmt::Display for ExoticAtom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ExoticAtom::K3 => "K3",
            ExoticAtom::K5 => "K5",
            ExoticAtom::W => "W",
        })
    }
}

impl fmt::Display for Bundle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.attaching == 1 {
            f.write_str("B(")?;
        } else {
            write!(f, "B{}(", self.attaching)?;
        }
        for (i, d) in self.dims.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{d}")?;
        }
        f.write_str(")")
    }
}

impl fmt::Display for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Space::Sphere(d) => write!(f, "S^{d}"),
            Space::Bundle(b) => b.fmt(f),
            Space::Product(fs) => {
                for (i, s) in fs.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" x ")?;
                    }
                    s.fmt(f)?;
                }
                Ok(())
            }
            Space::Group(g) => g.fmt(f),
            Space::Exotic(a) => a.fmt(f),
        }
    }
}

/// Renders `s` in the expression grammar accepted by [`parse_space`](super::parse_space).
pub fn render_space(s: &Space) -> String {
    s.to_string()
}

/// Checks that every bundle inside `s` is compatible with `p`: an `α_a`
/// bundle must have every consecutive gap equal to `a·q`, `q = 2p-2`.
pub fn validate_for_prime(s: &Space, p: OddPrime) -> Result<&Space> {
    s.validate()?;
    check_prime(s, p)?;
    Ok(s)
}

fn check_prime(s: &Space, p: OddPrime) -> Result<()> {
    let q = p.q();
    match s {
        Space::Bundle(b) => {
            for w in b.dims.windows(2) {
                let gap = w[1] - w[0];
                if gap != u64::from(b.attaching) * q {
                    return Err(Error::PrimeMismatch {
                        space: b.to_string(),
                        p: p.get(),
                        reason: format!("gap {gap} between S^{} and S^{} vs q = {q}", w[0], w[1]),
                    });
                }
            }
            Ok(())
        }
        Space::Product(fs) => fs.iter().try_for_each(|f| check_prime(f, p)),
        _ => Ok(()),
    }
}
