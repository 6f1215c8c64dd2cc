//! Recursive-descent parser for space expressions.
//!
//! ```text
//! space := term ( ("x" | "*") term )*
//! term  := "S^" ODD | "SU(" N ")" | "Sp(" N ")" | "Spin(" N ")"
//!        | "G2" | "F4" | "E6" | "E7" | "E8"
//!        | "B(" ODD ("," ODD)+ ")" | "B2(3,11)" | "K3" | "K5" | "W"
//! ```
//!
//! Whitespace is ignored everywhere. Error positions are byte offsets into the
//! original input.

use super::space::{Bundle, ExoticAtom, LieGroup, Space};
use crate::arith::MAX_INPUT;
use crate::error::{Error, Result};

pub fn parse_space(text: &str) -> Result<Space> {
    let mut p = Parser::new(text);
    let space = p.space()?;
    if !p.at_end() {
        return Err(p.error("expected 'x', '*' or end of input"));
    }
    space.validate()?;
    Ok(space)
}

struct Parser {
    /// Non-whitespace characters paired with their byte offset in the input.
    chars: Vec<(usize, char)>,
    pos: usize,
    len: usize,
}

impl Parser {
    fn new(text: &str) -> Self {
        Parser {
            chars: text
                .char_indices()
                .filter(|(_, c)| !c.is_whitespace())
                .collect(),
            pos: 0,
            len: text.len(),
        }
    }

    fn at_end(&self) -> bool {
        self.pos >= self.chars.len()
    }

    fn offset(&self) -> usize {
        self.chars.get(self.pos).map_or(self.len, |&(i, _)| i)
    }

    fn error(&self, msg: impl Into<String>) -> Error {
        Error::Syntax {
            pos: self.offset(),
            msg: msg.into(),
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn eat(&mut self, lit: &str) -> bool {
        let n = lit.chars().count();
        let matches = self.chars.len() >= self.pos + n
            && self.chars[self.pos..self.pos + n]
                .iter()
                .map(|&(_, c)| c)
                .eq(lit.chars());
        if matches {
            self.pos += n;
        }
        matches
    }

    fn expect(&mut self, lit: &str) -> Result<()> {
        if self.eat(lit) {
            Ok(())
        } else {
            Err(self.error(format!("expected '{lit}'")))
        }
    }

    fn space(&mut self) -> Result<Space> {
        let mut factors = vec![self.term()?];
        while self.eat("x") || self.eat("*") {
            factors.push(self.term()?);
        }
        Space::product(factors)
    }

    fn number(&mut self) -> Result<(usize, u64)> {
        let start = self.offset();
        let mut value: u64 = 0;
        let mut digits = 0;
        while let Some(d) = self.peek().and_then(|c| c.to_digit(10)) {
            value = value
                .checked_mul(10)
                .and_then(|v| v.checked_add(u64::from(d)))
                .filter(|&v| v <= MAX_INPUT)
                .ok_or_else(|| Error::Syntax {
                    pos: start,
                    msg: "number too large".into(),
                })?;
            self.pos += 1;
            digits += 1;
        }
        if digits == 0 {
            return Err(self.error("expected a number"));
        }
        Ok((start, value))
    }

    fn odd_dim(&mut self) -> Result<u64> {
        let (pos, d) = self.number()?;
        if d < 3 || d % 2 == 0 {
            return Err(Error::Syntax {
                pos,
                msg: format!("sphere dimension {d} must be odd and at least 3"),
            });
        }
        Ok(d)
    }

    fn rank(&mut self) -> Result<u64> {
        let n = self.number()?.1;
        self.expect(")")?;
        Ok(n)
    }

    fn term(&mut self) -> Result<Space> {
        let start = self.offset();
        let space = if self.eat("S^") {
            Space::Sphere(self.odd_dim()?)
        } else if self.eat("SU(") {
            Space::Group(LieGroup::SU(self.rank()?))
        } else if self.eat("Spin(") {
            Space::Group(LieGroup::Spin(self.rank()?))
        } else if self.eat("Sp(") {
            Space::Group(LieGroup::Sp(self.rank()?))
        } else if self.eat("B2(3,11)") {
            Space::Bundle(Bundle::new(vec![3, 11], 2)?)
        } else if self.eat("B(") {
            let mut dims = vec![self.odd_dim()?];
            while self.eat(",") {
                dims.push(self.odd_dim()?);
            }
            self.expect(")")?;
            if dims.len() < 2 {
                return Err(Error::Syntax {
                    pos: start,
                    msg: "a bundle needs at least two cells".into(),
                });
            }
            if dims.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::Syntax {
                    pos: start,
                    msg: "bundle dimensions must be strictly increasing".into(),
                });
            }
            Space::Bundle(Bundle::alpha1(dims)?)
        } else if self.eat("G2") {
            Space::Group(LieGroup::G2)
        } else if self.eat("F4") {
            Space::Group(LieGroup::F4)
        } else if self.eat("E6") {
            Space::Group(LieGroup::E6)
        } else if self.eat("E7") {
            Space::Group(LieGroup::E7)
        } else if self.eat("E8") {
            Space::Group(LieGroup::E8)
        } else if self.eat("K3") {
            Space::Exotic(ExoticAtom::K3)
        } else if self.eat("K5") {
            Space::Exotic(ExoticAtom::K5)
        } else if self.eat("W") {
            Space::Exotic(ExoticAtom::W)
        } else {
            return Err(self.error("expected a sphere, bundle, group or atom"));
        };
        space.validate().map_err(|e| match e {
            Error::InvalidSpace(msg) => Error::Syntax { pos: start, msg },
            other => other,
        })?;
        Ok(space)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn atoms_and_products() {
        assert_eq!(
            parse_space("SU(18)").unwrap(),
            Space::Group(LieGroup::SU(18))
        );
        assert_eq!(
            parse_space("B(23,35,47)").unwrap(),
            Space::bundle([23, 35, 47]).unwrap()
        );
        assert_eq!(
            parse_space("S^11 x Sp(4)").unwrap(),
            Space::Product(vec![Space::Sphere(11), Space::Group(LieGroup::Sp(4))])
        );
        assert_eq!(
            parse_space(" Spin ( 10 ) * K3*W").unwrap().to_string(),
            "Spin(10) x K3 x W"
        );
        assert_eq!(parse_space("B2(3, 11)").unwrap().to_string(), "B2(3,11)");
        assert_eq!(parse_space("E8").unwrap(), Space::Group(LieGroup::E8));
    }

    #[test]
    fn syntax_errors_carry_positions() {
        match parse_space("S^3 x S^4") {
            Err(Error::Syntax { pos, .. }) => assert_eq!(pos, 8),
            other => panic!("unexpected {other:?}"),
        }
        match parse_space("B(3,11,5)") {
            Err(Error::Syntax { pos, msg }) => {
                assert_eq!(pos, 0);
                assert!(msg.contains("increasing"));
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(
            parse_space("S^1"),
            Err(Error::Syntax { pos: 2, .. })
        ));
        assert!(matches!(parse_space("B(3)"), Err(Error::Syntax { .. })));
        assert!(matches!(
            parse_space("SU(3"),
            Err(Error::Syntax { pos: 4, .. })
        ));
        assert!(matches!(
            parse_space("Spin(2)"),
            Err(Error::Syntax { pos: 0, .. })
        ));
        assert!(matches!(parse_space("SU(0)"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_space("B3(3,11)"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_space(""), Err(Error::Syntax { pos: 0, .. })));
        assert!(matches!(
            parse_space("S^3 x"),
            Err(Error::Syntax { pos: 5, .. })
        ));
        assert!(matches!(
            parse_space("S^99999999999999999999"),
            Err(Error::Syntax { .. })
        ));
        assert!(matches!(
            parse_space("G2 G2"),
            Err(Error::Syntax { pos: 3, .. })
        ));
    }
}
