//! Group specifications such as `C4*D16` or `(D8xC2)*Q8`.
//!
//! Atoms are a family name followed by a decimal order. `x` is the direct
//! product and `*` the central product; both are left associative with the
//! same precedence. Whitespace between tokens is ignored.

use std::fmt;

use pglab_core::group::{central_product, direct_product, make_named, Family, FiniteGroup, GroupError};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GroupSpec {
    Atom(Family, u64),
    Direct(Box<GroupSpec>, Box<GroupSpec>),
    Central(Box<GroupSpec>, Box<GroupSpec>),
}

#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum SpecError {
    #[error("syntax error at byte {offset}: {message}")]
    SyntaxError { offset: usize, message: String },
    #[error("unknown group family {name:?} at byte {offset}")]
    UnknownFamily { offset: usize, name: String },
    #[error("{family}{order} is not a valid order for family {family}")]
    IllegalOrderForFamily { family: String, order: u64 },
}

impl GroupSpec {
    pub fn direct(a: GroupSpec, b: GroupSpec) -> GroupSpec {
        GroupSpec::Direct(Box::new(a), Box::new(b))
    }

    pub fn central(a: GroupSpec, b: GroupSpec) -> GroupSpec {
        GroupSpec::Central(Box::new(a), Box::new(b))
    }

    /// The order of the group the spec describes.
    pub fn order(&self) -> u64 {
        match self {
            GroupSpec::Atom(_, n) => *n,
            GroupSpec::Direct(a, b) => a.order() * b.order(),
            GroupSpec::Central(a, b) => a.order() * b.order() / 2,
        }
    }

    pub fn build(&self) -> Result<FiniteGroup, GroupError> {
        match self {
            GroupSpec::Atom(f, n) => make_named(*f, *n),
            GroupSpec::Direct(a, b) => direct_product(&a.build()?, &b.build()?),
            GroupSpec::Central(a, b) => central_product(&a.build()?, &b.build()?),
        }
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (a, op, b) = match self {
            GroupSpec::Atom(fam, n) => return write!(f, "{fam}{n}"),
            GroupSpec::Direct(a, b) => (a, 'x', b),
            GroupSpec::Central(a, b) => (a, '*', b),
        };
        match **b {
            GroupSpec::Atom(..) => write!(f, "{a}{op}{b}"),
            _ => write!(f, "{a}{op}({b})"),
        }
    }
}

impl std::str::FromStr for GroupSpec {
    type Err = SpecError;
    fn from_str(s: &str) -> Result<Self, SpecError> {
        parse_group_spec(s)
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn error<T>(&self, message: &str) -> Result<T, SpecError> {
        Err(SpecError::SyntaxError { offset: self.pos, message: message.into() })
    }

    fn expr(&mut self) -> Result<GroupSpec, SpecError> {
        let mut left = self.term()?;
        loop {
            match self.peek() {
                Some(b'x') => {
                    self.pos += 1;
                    left = GroupSpec::direct(left, self.term()?);
                }
                Some(b'*') => {
                    self.pos += 1;
                    left = GroupSpec::central(left, self.term()?);
                }
                _ => return Ok(left),
            }
        }
    }

    fn term(&mut self) -> Result<GroupSpec, SpecError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return self.error("expected ')'");
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_alphabetic() => self.atom(),
            Some(_) => self.error("expected a group name or '('"),
            None => self.error("unexpected end of input"),
        }
    }

    fn atom(&mut self) -> Result<GroupSpec, SpecError> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_alphabetic() {
            self.pos += 1;
        }
        let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        let family: Family =
            name.parse().map_err(|_| SpecError::UnknownFamily { offset: start, name: name.into() })?;
        let digits = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if digits == self.pos {
            return self.error("expected an order after the family name");
        }
        let text = std::str::from_utf8(&self.src[digits..self.pos]).unwrap();
        let illegal = || SpecError::IllegalOrderForFamily { family: family.to_string(), order: 0 };
        let order: u64 = text.parse().map_err(|_| illegal())?;
        family
            .check_order(order)
            .map_err(|_| SpecError::IllegalOrderForFamily { family: family.to_string(), order })?;
        Ok(GroupSpec::Atom(family, order))
    }
}

pub fn parse_group_spec(text: &str) -> Result<GroupSpec, SpecError> {
    let mut p = Parser { src: text.as_bytes(), pos: 0 };
    let spec = p.expr()?;
    if p.peek().is_some() {
        return p.error("unexpected trailing input");
    }
    Ok(spec)
}
