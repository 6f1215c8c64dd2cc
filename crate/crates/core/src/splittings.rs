//! p-local product decompositions of the classical groups.

use crate::arith::OddPrime;
use crate::error::Result;
use crate::spaces::{Bundle, LieGroup, Space};

/// Indices `m ∈ {2..=n}` of the sphere `S^{2m-1}` in `SU(n)`, grouped by
/// `m mod (p-1)`, each class ascending. Classes are ordered by their least
/// member.
fn residue_classes(p: OddPrime, n: u64) -> Vec<Vec<u64>> {
    let step = p.get() - 1;
    (2..=n.min(step + 1))
        .map(|first| (first..=n).step_by(step as usize).collect())
        .collect()
}

fn class_space(indices: &[u64]) -> Space {
    let dims: Vec<u64> = indices.iter().map(|m| 2 * m - 1).collect();
    if dims.len() == 1 {
        Space::Sphere(dims[0])
    } else {
        Space::Bundle(Bundle::alpha1(dims).expect("residue class dims are odd and increasing"))
    }
}

/// The factors of the mod-`q` residue splitting of `SU(n)`, one per nonempty
/// residue class of sphere dimensions `{3, 5, …, 2n-1}`.
pub fn mnt_su_factors(p: OddPrime, n: u64) -> Vec<Space> {
    residue_classes(p, n)
        .iter()
        .map(|c| class_space(c))
        .collect()
}

/// `SU'(n)`: the factor of `SU(n)` containing `S^{2n-1}`.
pub fn su_prime_factor(p: OddPrime, n: u64) -> Space {
    assert!(n >= 2, "SU'({n}) is undefined");
    let step = p.get() - 1;
    let first = 2 + (n - 2) % step;
    let indices: Vec<u64> = (first..=n).step_by(step as usize).collect();
    class_space(&indices)
}

/// Rewrites `SU(n)` and `Spin(n)` into their p-local splittings. Every other
/// space, `Sp(n)` included, is returned unchanged.
pub fn decompose(s: &Space, p: OddPrime) -> Result<Space> {
    s.validate()?;
    Ok(match *s {
        Space::Group(LieGroup::SU(n)) if n >= 2 => Space::product(mnt_su_factors(p, n))?,
        Space::Group(LieGroup::Spin(m)) if m % 2 == 1 => Space::Group(LieGroup::Sp((m - 1) / 2)),
        Space::Group(LieGroup::Spin(m)) => {
            let n = (m - 2) / 2;
            Space::product([Space::Group(LieGroup::Sp(n)), Space::Sphere(2 * n + 1)])?
        }
        _ => s.clone(),
    })
}

/// If `factors` is exactly the residue splitting of some `SU(n)` (as a
/// multiset), returns that `n`.
pub fn recognize_su(factors: &[Space], p: OddPrime) -> Option<u64> {
    let mut top = 0;
    for f in factors {
        match f {
            Space::Sphere(d) => top = top.max(*d),
            Space::Bundle(b) if b.attaching() == 1 => top = top.max(b.top()),
            _ => return None,
        }
    }
    let n = top.div_ceil(2);
    if n < 2 {
        return None;
    }
    let mut expected = mnt_su_factors(p, n);
    if expected.len() != factors.len() {
        return None;
    }
    for f in factors {
        let pos = expected.iter().position(|e| e == f)?;
        expected.swap_remove(pos);
    }
    Some(n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spaces::parse_space;

    fn p(n: u64) -> OddPrime {
        OddPrime::new(n).unwrap()
    }

    fn rendered(v: &[Space]) -> Vec<String> {
        v.iter().map(Space::to_string).collect()
    }

    #[test]
    fn su_factor_examples() {
        assert_eq!(
            rendered(&mnt_su_factors(p(5), 6)),
            ["B(3,11)", "S^5", "S^7", "S^9"]
        );
        assert_eq!(rendered(&mnt_su_factors(p(3), 3)), ["S^3", "S^5"]);
        // m ∈ {2,4,6} and {3,5}
        assert_eq!(rendered(&mnt_su_factors(p(3), 6)), ["B(3,7,11)", "B(5,9)"]);
        assert!(mnt_su_factors(p(7), 1).is_empty());
    }

    #[test]
    fn su_prime_examples() {
        assert_eq!(su_prime_factor(p(5), 18).to_string(), "B(3,11,19,27,35)");
        assert_eq!(su_prime_factor(p(7), 18).to_string(), "B(11,23,35)");
        assert_eq!(su_prime_factor(p(5), 3).to_string(), "S^5");
    }

    #[test]
    fn decompose_examples() {
        let spin10 = parse_space("Spin(10)").unwrap();
        assert_eq!(decompose(&spin10, p(3)).unwrap().to_string(), "Sp(4) x S^9");
        let spin9 = parse_space("Spin(9)").unwrap();
        assert_eq!(decompose(&spin9, p(5)).unwrap().to_string(), "Sp(4)");
        let su6 = parse_space("SU(6)").unwrap();
        assert_eq!(
            decompose(&su6, p(5)).unwrap().to_string(),
            "B(3,11) x S^5 x S^7 x S^9"
        );
        let sp4 = parse_space("Sp(4)").unwrap();
        assert_eq!(decompose(&sp4, p(5)).unwrap(), sp4);
        let su1 = parse_space("SU(1)").unwrap();
        assert_eq!(decompose(&su1, p(5)).unwrap(), su1);
        assert!(decompose(&Space::Group(LieGroup::Spin(2)), p(3)).is_err());
    }

    #[test]
    fn recognizes_permuted_splitting() {
        let f = parse_space("S^9 x S^5 x B(3,11) x S^7").unwrap();
        let Space::Product(factors) = f else {
            unreachable!()
        };
        assert_eq!(recognize_su(&factors, p(5)), Some(6));
        assert_eq!(recognize_su(&factors[..3], p(5)), None);
        assert_eq!(recognize_su(&factors, p(7)), None);
    }
}
