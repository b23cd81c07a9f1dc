use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Structured vertex label.
///
/// Labels record how a vertex was built, so maps defined on the factors
/// (negation, in practice) can be transported to the assembled complex.
/// The derived order is the global vertex order used for orientations.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Label {
    /// Vertex `±e_axis` of a cross-polytope sphere. `+` sorts before `−`.
    Cross { axis: u32, neg: bool },
    /// Vertex of a simplex-boundary sphere.
    Vertex(u32),
    /// Point of a discrete space.
    Point(u32),
    /// Vertex of a product complex.
    Pair(Box<Label>, Box<Label>),
    /// Vertex coming from the first factor of a join.
    Left(Box<Label>),
    /// Vertex coming from the second factor of a join.
    Right(Box<Label>),
    /// Barycenter of a simplex, listed by its sorted vertices.
    Simplex(Vec<Label>),
    /// Orbit of an involution, named by its least member.
    Orbit(Box<Label>),
}

impl Label {
    pub fn pair(a: Label, b: Label) -> Self {
        Label::Pair(Box::new(a), Box::new(b))
    }

    /// Antipodal image: negates every cross-polytope coordinate.
    /// `None` when some component has no antipode.
    pub fn negated(&self) -> Option<Label> {
        Some(match self {
            Label::Cross { axis, neg } => Label::Cross { axis: *axis, neg: !neg },
            Label::Vertex(_) | Label::Point(_) | Label::Orbit(_) => return None,
            Label::Pair(a, b) => Label::pair(a.negated()?, b.negated()?),
            Label::Left(a) => Label::Left(Box::new(a.negated()?)),
            Label::Right(b) => Label::Right(Box::new(b.negated()?)),
            Label::Simplex(vs) => {
                let mut out = vs.iter().map(Label::negated).collect::<Option<Vec<_>>>()?;
                out.sort();
                Label::Simplex(out)
            }
        })
    }

    /// Name of the first component that blocks [`Label::negated`].
    pub(crate) fn antipode_obstruction(&self) -> Option<&'static str> {
        match self {
            Label::Cross { .. } => None,
            Label::Vertex(_) => Some("simplex-boundary sphere"),
            Label::Point(_) => Some("discrete point set"),
            Label::Orbit(_) => Some("quotient complex"),
            Label::Pair(a, b) => a.antipode_obstruction().or_else(|| b.antipode_obstruction()),
            Label::Left(a) | Label::Right(a) => a.antipode_obstruction(),
            Label::Simplex(vs) => vs.iter().find_map(Label::antipode_obstruction),
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Cross { axis, neg } => write!(f, "{}{axis}", if *neg { '-' } else { '+' }),
            Label::Vertex(i) => write!(f, "v{i}"),
            Label::Point(i) => write!(f, "p{i}"),
            Label::Pair(a, b) => write!(f, "({a},{b})"),
            Label::Left(a) => write!(f, "L[{a}]"),
            Label::Right(b) => write!(f, "R[{b}]"),
            Label::Simplex(vs) => {
                f.write_str("S{")?;
                for (i, v) in vs.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{v}")?;
                }
                f.write_str("}")
            }
            Label::Orbit(a) => write!(f, "O[{a}]"),
        }
    }
}

impl FromStr for Label {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut p = Parser { s: s.as_bytes(), pos: 0 };
        let label = p.label()?;
        if p.pos != s.len() {
            return Err(p.error("trailing characters"));
        }
        Ok(label)
    }
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, what: &str) -> Error {
        let text = String::from_utf8_lossy(self.s);
        Error::Parse { line: 0, message: format!("bad label `{text}` at byte {}: {what}", self.pos) }
    }

    fn peek(&self) -> Option<u8> {
        self.s.get(self.pos).copied()
    }

    fn expect(&mut self, b: u8) -> Result<()> {
        if self.peek() == Some(b) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(&format!("expected `{}`", b as char)))
        }
    }

    fn number(&mut self) -> Result<u32> {
        let start = self.pos;
        while self.peek().is_some_and(|b| b.is_ascii_digit()) {
            self.pos += 1;
        }
        std::str::from_utf8(&self.s[start..self.pos])
            .ok()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| self.error("expected a number"))
    }

    fn wrapped(&mut self) -> Result<Box<Label>> {
        self.expect(b'[')?;
        let inner = self.label()?;
        self.expect(b']')?;
        Ok(Box::new(inner))
    }

    fn label(&mut self) -> Result<Label> {
        let Some(head) = self.peek() else { return Err(self.error("unexpected end")) };
        self.pos += 1;
        match head {
            b'+' | b'-' => Ok(Label::Cross { axis: self.number()?, neg: head == b'-' }),
            b'v' => Ok(Label::Vertex(self.number()?)),
            b'p' => Ok(Label::Point(self.number()?)),
            b'L' => Ok(Label::Left(self.wrapped()?)),
            b'R' => Ok(Label::Right(self.wrapped()?)),
            b'O' => Ok(Label::Orbit(self.wrapped()?)),
            b'(' => {
                let a = self.label()?;
                self.expect(b',')?;
                let b = self.label()?;
                self.expect(b')')?;
                Ok(Label::pair(a, b))
            }
            b'S' => {
                self.expect(b'{')?;
                let mut vs = vec![self.label()?];
                while self.peek() == Some(b',') {
                    self.pos += 1;
                    vs.push(self.label()?);
                }
                self.expect(b'}')?;
                Ok(Label::Simplex(vs))
            }
            _ => {
                self.pos -= 1;
                Err(self.error("unknown label kind"))
            }
        }
    }
}
