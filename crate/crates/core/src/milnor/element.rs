use std::collections::BTreeSet;
use std::fmt;
use std::ops::{Add, AddAssign, Mul};
use std::str::FromStr;

use super::{multiply, MilnorMonomial, EXPONENT_LIMIT};
use crate::error::Error;

/// A GF(2) sum of Milnor monomials, kept in degree-then-lex order.
#[derive(Clone, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct MilnorElement {
    terms: BTreeSet<MilnorMonomial>,
}

impl MilnorElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        MilnorMonomial::unit().into()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Adds `m` with coefficient 1; a second copy cancels the first.
    pub fn toggle(&mut self, m: MilnorMonomial) {
        if !self.terms.remove(&m) {
            self.terms.insert(m);
        }
    }

    pub fn contains(&self, m: &MilnorMonomial) -> bool {
        self.terms.contains(m)
    }

    pub fn iter(&self) -> impl Iterator<Item = &MilnorMonomial> + '_ {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// The common degree of all terms, if there is one. Zero counts as
    /// homogeneous of every degree and returns `None`.
    pub fn homogeneous_degree(&self) -> Option<u64> {
        let mut it = self.terms.iter().map(MilnorMonomial::degree);
        let d = it.next()?;
        it.all(|e| e == d).then_some(d)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.homogeneous_degree().is_some()
    }

    /// Terms of maximal excess.
    pub fn max_excess(&self) -> Option<u64> {
        self.terms.iter().map(MilnorMonomial::excess).max()
    }
}

impl From<MilnorMonomial> for MilnorElement {
    fn from(m: MilnorMonomial) -> Self {
        let mut terms = BTreeSet::new();
        terms.insert(m);
        MilnorElement { terms }
    }
}

impl FromIterator<MilnorMonomial> for MilnorElement {
    fn from_iter<I: IntoIterator<Item = MilnorMonomial>>(iter: I) -> Self {
        let mut out = MilnorElement::zero();
        for m in iter {
            out.toggle(m);
        }
        out
    }
}

impl AddAssign<&MilnorElement> for MilnorElement {
    fn add_assign(&mut self, rhs: &MilnorElement) {
        for m in &rhs.terms {
            self.toggle(m.clone());
        }
    }
}

impl Add for &MilnorElement {
    type Output = MilnorElement;

    fn add(self, rhs: &MilnorElement) -> MilnorElement {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Mul for &MilnorElement {
    type Output = MilnorElement;

    fn mul(self, rhs: &MilnorElement) -> MilnorElement {
        multiply(self, rhs)
    }
}

impl fmt::Display for MilnorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, m) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{m}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for MilnorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Recursive-descent reader for `term ('+' term)*` with
/// `term := 'Sq(' int (',' int)* ')' | '1' | '0'`. Positions in errors are
/// character offsets into the input.
struct Parser<'a> {
    chars: Vec<(usize, char)>,
    pos: usize,
    src: &'a str,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Parser {
            chars: src.chars().enumerate().filter(|(_, c)| !c.is_whitespace()).collect(),
            pos: 0,
            src,
        }
    }

    fn offset(&self) -> usize {
        self.chars
            .get(self.pos)
            .map_or_else(|| self.src.chars().count(), |&(i, _)| i)
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn error(&self, message: impl Into<String>) -> Error {
        Error::Syntax {
            position: self.offset(),
            message: message.into(),
        }
    }

    fn expect(&mut self, c: char) -> Result<(), Error> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(format!("expected '{c}'")))
        }
    }

    fn int(&mut self) -> Result<u32, Error> {
        let start = self.offset();
        let mut value: u64 = 0;
        let mut digits = 0;
        while let Some(d) = self.peek().and_then(|c| c.to_digit(10)) {
            value = value.saturating_mul(10).saturating_add(d as u64);
            self.pos += 1;
            digits += 1;
        }
        if digits == 0 {
            return Err(self.error("expected a non-negative integer"));
        }
        if value >= EXPONENT_LIMIT {
            return Err(Error::OutOfRange(format!(
                "exponent {value} at position {start} exceeds 2^31"
            )));
        }
        Ok(value as u32)
    }

    fn term(&mut self) -> Result<Option<MilnorMonomial>, Error> {
        match self.peek() {
            Some('1') => {
                self.pos += 1;
                Ok(Some(MilnorMonomial::unit()))
            }
            Some('0') => {
                self.pos += 1;
                Ok(None)
            }
            Some('S') => {
                let start = self.offset();
                self.pos += 1;
                self.expect('q')?;
                self.expect('(')?;
                let mut exps = vec![self.int()?];
                while self.peek() == Some(',') {
                    self.pos += 1;
                    exps.push(self.int()?);
                }
                self.expect(')')?;
                let m = MilnorMonomial::new(exps);
                if m.degree() >= EXPONENT_LIMIT {
                    return Err(Error::OutOfRange(format!(
                        "degree of term at position {start} exceeds 2^31"
                    )));
                }
                Ok(Some(m))
            }
            _ => Err(self.error("expected 'Sq(', '1' or '0'")),
        }
    }

    fn element(&mut self) -> Result<MilnorElement, Error> {
        let mut out = MilnorElement::zero();
        loop {
            if let Some(m) = self.term()? {
                out.toggle(m);
            }
            match self.peek() {
                None => return Ok(out),
                Some('+') => self.pos += 1,
                Some(_) => return Err(self.error("expected '+' or end of input")),
            }
        }
    }
}

impl FromStr for MilnorElement {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        Parser::new(s).element()
    }
}

impl FromStr for MilnorMonomial {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let e: MilnorElement = s.parse()?;
        let mut it = e.terms.into_iter();
        match (it.next(), it.next()) {
            (Some(m), None) => Ok(m),
            _ => Err(Error::Syntax {
                position: 0,
                message: "expected a single Milnor monomial".into(),
            }),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_examples() {
        let e: MilnorElement = "Sq(3,1)".parse().unwrap();
        assert_eq!(e, MilnorMonomial::new(vec![3, 1]).into());
        assert!("Sq(1)+Sq(1)".parse::<MilnorElement>().unwrap().is_zero());
        let e: MilnorElement = " Sq( 0 , 2 ) ".parse().unwrap();
        assert_eq!(e.homogeneous_degree(), Some(6));
        assert_eq!("1".parse::<MilnorElement>().unwrap(), MilnorElement::one());
        assert_eq!("0".parse::<MilnorElement>().unwrap(), MilnorElement::zero());
    }

    #[test]
    fn parse_errors_carry_positions() {
        match "Sq(1)+Sx(2)".parse::<MilnorElement>() {
            Err(Error::Syntax { position, .. }) => assert_eq!(position, 7),
            other => panic!("{other:?}"),
        }
        match "Sq(1,)".parse::<MilnorElement>() {
            Err(Error::Syntax { position, .. }) => assert_eq!(position, 5),
            other => panic!("{other:?}"),
        }
        assert!("".parse::<MilnorElement>().is_err());
        assert!("Sq(1) Sq(2)".parse::<MilnorElement>().is_err());
        assert!(matches!(
            "Sq(2147483648)".parse::<MilnorElement>(),
            Err(Error::OutOfRange(_))
        ));
        assert!(matches!(
            "Sq(0,1073741824)".parse::<MilnorElement>(),
            Err(Error::OutOfRange(_))
        ));
    }

    #[test]
    fn format_is_sorted_and_round_trips() {
        let e: MilnorElement = "Sq(3) + Sq(0,1) + 1".parse().unwrap();
        assert_eq!(e.to_string(), "1 + Sq(0,1) + Sq(3)");
        assert_eq!(e.to_string().parse::<MilnorElement>().unwrap(), e);
        assert_eq!(MilnorElement::zero().to_string(), "0");
    }
}
