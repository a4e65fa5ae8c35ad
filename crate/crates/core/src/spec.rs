//! Text descriptors for group constructions, e.g. `C(4)xC(2)`, `D(16)`,
//! `M(3,3)` or `P"<x | x^5>"`.
//!
//! Family atoms take the *total order* of the group: `D(16)` is the dihedral
//! group of order 16. `M(p,k)` is the modular group of order `p^k`.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::constructions::{
    cyclic, dihedral, direct_product_capped, generalized_quaternion, heisenberg, modular, semidihedral,
};
use crate::group::{is_prime, GroupError, GroupTable};
use crate::presentation::{parse_presentation, realize, Presentation, PresentationError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SpecError {
    #[error("syntax error at byte {pos}: {message}")]
    Syntax { pos: usize, message: String },
    #[error("invalid {atom}: {rule}")]
    Constraint { atom: String, rule: String },
    #[error("group order {order} exceeds the cap of {cap}")]
    OrderCap { order: usize, cap: usize },
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Presentation(#[from] PresentationError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Atom {
    Cyclic(usize),
    Dihedral(usize),
    Quaternion(usize),
    Semidihedral(usize),
    Modular { p: usize, k: u32 },
    Heisenberg(usize),
    Presented(Presentation),
}

impl Atom {
    /// Order of the group, if known without coset enumeration.
    pub fn order(&self) -> Option<usize> {
        match *self {
            Atom::Cyclic(n) | Atom::Dihedral(n) | Atom::Quaternion(n) | Atom::Semidihedral(n) => Some(n),
            Atom::Modular { p, k } => p.checked_pow(k),
            Atom::Heisenberg(p) => p.checked_pow(3),
            Atom::Presented(_) => None,
        }
    }

    fn validate(&self) -> Result<(), SpecError> {
        let fail = |rule: String| {
            Err(SpecError::Constraint {
                atom: self.to_string(),
                rule,
            })
        };
        let two_power = |n: usize, min: usize, family: &str| {
            if !n.is_power_of_two() || n < min {
                fail(format!("{family} order must be a power of 2 and at least {min}"))
            } else {
                Ok(())
            }
        };
        match *self {
            Atom::Cyclic(0) => fail("cyclic order must be positive".into()),
            Atom::Cyclic(_) => Ok(()),
            Atom::Dihedral(n) => two_power(n, 8, "dihedral"),
            Atom::Quaternion(n) => two_power(n, 8, "generalized quaternion"),
            Atom::Semidihedral(n) => two_power(n, 16, "semidihedral"),
            Atom::Modular { p, k } => {
                if !is_prime(p) {
                    fail(format!("modular group needs a prime, got {p}"))
                } else if k < 3 {
                    fail("modular group requires k >= 3 (alpha >= 2)".into())
                } else if p == 2 && k < 4 {
                    fail("modular group requires alpha >= 3 for p = 2, so k >= 4".into())
                } else {
                    Ok(())
                }
            }
            Atom::Heisenberg(p) => {
                if p == 2 || !is_prime(p) {
                    fail("Heisenberg group needs an odd prime".into())
                } else {
                    Ok(())
                }
            }
            Atom::Presented(_) => Ok(()),
        }
    }

    fn build(&self) -> Result<GroupTable, SpecError> {
        let g = match self {
            Atom::Cyclic(n) => cyclic(*n)?,
            Atom::Dihedral(n) => dihedral(*n)?,
            Atom::Quaternion(n) => generalized_quaternion(n.trailing_zeros() - 1)?,
            Atom::Semidihedral(n) => semidihedral(*n)?,
            Atom::Modular { p, k } => modular(*p, k - 1)?,
            Atom::Heisenberg(p) => heisenberg(*p)?,
            Atom::Presented(pres) => realize(pres, crate::presentation::DEFAULT_MAX_COSETS)?,
        };
        Ok(g.with_label(self.to_string()))
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Atom::Cyclic(n) => write!(f, "C({n})"),
            Atom::Dihedral(n) => write!(f, "D({n})"),
            Atom::Quaternion(n) => write!(f, "Q({n})"),
            Atom::Semidihedral(n) => write!(f, "SD({n})"),
            Atom::Modular { p, k } => write!(f, "M({p},{k})"),
            Atom::Heisenberg(p) => write!(f, "H({p})"),
            Atom::Presented(pres) => write!(f, "P\"{pres}\""),
        }
    }
}

/// A direct product of one or more atoms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupSpec {
    pub atoms: Vec<Atom>,
}

impl GroupSpec {
    pub fn atom(a: Atom) -> Self {
        GroupSpec { atoms: vec![a] }
    }

    pub fn times(mut self, a: Atom) -> Self {
        self.atoms.push(a);
        self
    }

    /// Product order, if every factor's order is known up front.
    pub fn order(&self) -> Option<usize> {
        self.atoms
            .iter()
            .try_fold(1usize, |acc, a| a.order().and_then(|o| acc.checked_mul(o)))
    }

    pub fn build(&self, cap: usize) -> Result<GroupTable, SpecError> {
        if let Some(order) = self.order() {
            if order > cap {
                return Err(SpecError::OrderCap { order, cap });
            }
        } else {
            let known = self.atoms.iter().filter_map(Atom::order).try_fold(1usize, |a, o| a.checked_mul(o));
            match known {
                Some(k) if k <= cap => {}
                Some(order) => return Err(SpecError::OrderCap { order, cap }),
                None => return Err(SpecError::OrderCap { order: usize::MAX, cap }),
            }
        }
        let mut acc: Option<GroupTable> = None;
        for a in &self.atoms {
            let factor = a.build()?;
            if factor.order() > cap {
                return Err(SpecError::OrderCap {
                    order: factor.order(),
                    cap,
                });
            }
            acc = Some(match acc {
                None => factor,
                Some(prev) => direct_product_capped(&prev, &factor, cap).map_err(|e| match e {
                    GroupError::OrderCap { order, cap } => SpecError::OrderCap { order, cap },
                    other => SpecError::Group(other),
                })?,
            });
        }
        let g = acc.expect("a spec has at least one atom");
        Ok(g.with_label(self.to_string()))
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, a) in self.atoms.iter().enumerate() {
            if i > 0 {
                f.write_str("x")?;
            }
            write!(f, "{a}")?;
        }
        Ok(())
    }
}

struct SpecParser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> SpecParser<'a> {
    fn err(&self, message: impl Into<String>) -> SpecError {
        SpecError::Syntax {
            pos: self.pos,
            message: message.into(),
        }
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.src.len() - trimmed.len();
    }

    fn eat(&mut self, token: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(token) {
            self.pos += token.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, token: &str) -> Result<(), SpecError> {
        if self.eat(token) {
            Ok(())
        } else {
            Err(self.err(format!("expected `{token}`")))
        }
    }

    fn int(&mut self) -> Result<usize, SpecError> {
        self.skip_ws();
        let len = self.rest().bytes().take_while(u8::is_ascii_digit).count();
        if len == 0 {
            return Err(self.err("expected an integer"));
        }
        let value = self.rest()[..len]
            .parse()
            .map_err(|_| self.err("integer out of range"))?;
        self.pos += len;
        Ok(value)
    }

    fn paren_int(&mut self) -> Result<usize, SpecError> {
        self.expect("(")?;
        let n = self.int()?;
        self.expect(")")?;
        Ok(n)
    }

    fn atom(&mut self) -> Result<Atom, SpecError> {
        self.skip_ws();
        let start = self.pos;
        let atom = if self.eat("SD") {
            Atom::Semidihedral(self.paren_int()?)
        } else if self.eat("C") {
            Atom::Cyclic(self.paren_int()?)
        } else if self.eat("D") {
            Atom::Dihedral(self.paren_int()?)
        } else if self.eat("Q") {
            Atom::Quaternion(self.paren_int()?)
        } else if self.eat("H") {
            Atom::Heisenberg(self.paren_int()?)
        } else if self.eat("M") {
            self.expect("(")?;
            let p = self.int()?;
            self.expect(",")?;
            let k = self.int()?;
            self.expect(")")?;
            let k = u32::try_from(k).map_err(|_| self.err("exponent out of range"))?;
            Atom::Modular { p, k }
        } else if self.eat("P\"") {
            let body_start = self.pos;
            let len = self
                .rest()
                .find('"')
                .ok_or_else(|| self.err("unterminated presentation string"))?;
            let body = &self.rest()[..len];
            let pres = parse_presentation(body).map_err(|e| match e {
                PresentationError::Syntax { pos, message } => SpecError::Syntax {
                    pos: body_start + pos,
                    message,
                },
                other => SpecError::Presentation(other),
            })?;
            self.pos += len + 1;
            Atom::Presented(pres)
        } else {
            return Err(self.err("expected one of C( D( Q( SD( M( H( P\""));
        };
        atom.validate().map_err(|e| match e {
            SpecError::Constraint { atom, rule } => SpecError::Constraint {
                atom: format!("{atom} at byte {start}"),
                rule,
            },
            other => other,
        })?;
        Ok(atom)
    }

    fn spec(&mut self) -> Result<GroupSpec, SpecError> {
        let mut atoms = vec![self.atom()?];
        while self.eat("x") {
            atoms.push(self.atom()?);
        }
        self.skip_ws();
        if !self.rest().is_empty() {
            return Err(self.err("trailing input"));
        }
        Ok(GroupSpec { atoms })
    }
}

pub fn parse_spec(text: &str) -> Result<GroupSpec, SpecError> {
    SpecParser { src: text, pos: 0 }.spec()
}

impl FromStr for GroupSpec {
    type Err = SpecError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_spec(s)
    }
}
