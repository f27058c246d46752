//! Group-spec mini-language.
//!
//! ```text
//! C(n)                cyclic group of order n
//! C(n1)xC(n2)x...     direct product of cyclic groups
//! Sym(n), Alt(n)
//! PSL(n,q), PGL(n,q)  q a prime power
//! Perm[(1 2 3)(4 5), (1 2)]   explicit generators, 1-based cycle notation
//! M11 M12 M22 M23 M24 HS PSU(3,3) PSU(3,5) PSU(4,3) PSp(6,2) PSp(8,2) PSp(4,3)
//! ```
//!
//! The named groups at the end are lookup-only: they carry tabulated
//! statistics but are never materialized.

use std::fmt;

use crate::error::{Error, Result};
use crate::groupcore::perm::Permutation;
use crate::util::prime_power;

/// Names accepted as lookup-only groups, in canonical spelling.
pub const NAMED_GROUPS: [&str; 12] = [
    "M11", "M12", "M22", "M23", "M24", "HS", "PSU(3,3)", "PSU(3,5)", "PSU(4,3)", "PSp(6,2)", "PSp(8,2)", "PSp(4,3)",
];

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupSpec {
    Cyclic(u64),
    CyclicProduct(Vec<u64>),
    Sym(u64),
    Alt(u64),
    Psl(LinearParams),
    Pgl(LinearParams),
    Perm(Vec<Permutation>),
    Named(String),
}

/// Dimension and field size of a projective linear group, with `q = p^a`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct LinearParams {
    pub n: u32,
    pub q: u64,
    pub p: u64,
    pub a: u32,
}

impl LinearParams {
    pub fn new(n: u32, q: u64) -> Result<Self> {
        if n < 2 {
            return Err(Error::Semantic(format!("dimension {n} must be at least 2")));
        }
        let (p, a) = prime_power(q).ok_or_else(|| Error::Semantic(format!("{q} is not a prime power")))?;
        Ok(LinearParams { n, q, p, a })
    }
}

impl GroupSpec {
    pub fn parse(text: &str) -> Result<GroupSpec> {
        let mut parser = Parser { src: text, pos: 0 };
        let spec = parser.spec()?;
        parser.skip_ws();
        if parser.pos != text.len() {
            return Err(parser.err("trailing input"));
        }
        spec.validate()?;
        Ok(spec)
    }

    /// Semantic checks shared by the parser and programmatic construction.
    pub fn validate(&self) -> Result<()> {
        match self {
            GroupSpec::Cyclic(n) => check_positive("C", *n),
            GroupSpec::CyclicProduct(ns) => {
                if ns.len() < 2 {
                    return Err(Error::Semantic("a product needs at least two factors".into()));
                }
                ns.iter().try_for_each(|&n| check_positive("C", n))
            }
            GroupSpec::Sym(n) => check_positive("Sym", *n),
            GroupSpec::Alt(n) => check_positive("Alt", *n),
            GroupSpec::Psl(lp) => {
                if lp.n == 2 && (lp.q == 2 || lp.q == 3) {
                    return Err(Error::Semantic(format!("PSL(2,{}) is excluded (not simple)", lp.q)));
                }
                Ok(())
            }
            GroupSpec::Pgl(_) => Ok(()),
            GroupSpec::Perm(gens) => {
                let Some(first) = gens.first() else {
                    return Err(Error::Semantic("Perm[...] needs a generator".into()));
                };
                for g in gens {
                    if g.degree() != first.degree() {
                        return Err(Error::DegreeMismatch {
                            left: first.degree(),
                            right: g.degree(),
                        });
                    }
                }
                Ok(())
            }
            GroupSpec::Named(name) => {
                if NAMED_GROUPS.contains(&name.as_str()) {
                    Ok(())
                } else {
                    Err(Error::UnknownName(name.clone()))
                }
            }
        }
    }

    pub fn is_named(&self) -> bool {
        matches!(self, GroupSpec::Named(_))
    }
}

fn check_positive(kind: &str, n: u64) -> Result<()> {
    if n == 0 {
        Err(Error::Semantic(format!("{kind}(0) is not a group")))
    } else {
        Ok(())
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Cyclic(n) => write!(f, "C({n})"),
            GroupSpec::CyclicProduct(ns) => {
                for (i, n) in ns.iter().enumerate() {
                    if i > 0 {
                        f.write_str("x")?;
                    }
                    write!(f, "C({n})")?;
                }
                Ok(())
            }
            GroupSpec::Sym(n) => write!(f, "Sym({n})"),
            GroupSpec::Alt(n) => write!(f, "Alt({n})"),
            GroupSpec::Psl(lp) => write!(f, "PSL({},{})", lp.n, lp.q),
            GroupSpec::Pgl(lp) => write!(f, "PGL({},{})", lp.n, lp.q),
            GroupSpec::Perm(gens) => {
                let degree = gens[0].degree();
                let moved = gens
                    .iter()
                    .flat_map(|g| g.cycles().into_iter().flatten())
                    .max()
                    .map_or(0, |p| p as usize + 1);
                f.write_str("Perm[")?;
                for (i, g) in gens.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    if g.is_identity() && (i > 0 || degree == moved) {
                        f.write_str("()")?;
                    } else if !g.is_identity() {
                        write!(f, "{g}")?;
                    }
                    // pin the degree with a trailing 1-cycle
                    if i == 0 && degree > moved {
                        write!(f, "({degree})")?;
                    }
                }
                f.write_str("]")
            }
            GroupSpec::Named(name) => f.write_str(name),
        }
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err(&self, msg: impl Into<String>) -> Error {
        Error::Syntax {
            pos: self.pos,
            msg: msg.into(),
        }
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.src.len() - trimmed.len();
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.rest().chars().next()
    }

    fn eat(&mut self, lit: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(lit) {
            self.pos += lit.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, lit: &str) -> Result<()> {
        if self.eat(lit) {
            Ok(())
        } else {
            Err(self.err(format!("expected '{lit}'")))
        }
    }

    fn number(&mut self) -> Result<u64> {
        self.skip_ws();
        let digits: &str = {
            let r = self.rest();
            let end = r.find(|c: char| !c.is_ascii_digit()).unwrap_or(r.len());
            &r[..end]
        };
        if digits.is_empty() {
            return Err(self.err("expected a number"));
        }
        let value = digits.parse::<u64>().map_err(|_| self.err("number too large"))?;
        self.pos += digits.len();
        Ok(value)
    }

    fn pair(&mut self) -> Result<(u64, u64)> {
        self.expect("(")?;
        let a = self.number()?;
        self.expect(",")?;
        let b = self.number()?;
        self.expect(")")?;
        Ok((a, b))
    }

    fn single(&mut self) -> Result<u64> {
        self.expect("(")?;
        let n = self.number()?;
        self.expect(")")?;
        Ok(n)
    }

    fn linear(&mut self, at: usize) -> Result<LinearParams> {
        let (n, q) = self.pair()?;
        let n = u32::try_from(n).map_err(|_| Error::Syntax {
            pos: at,
            msg: "dimension too large".into(),
        })?;
        LinearParams::new(n, q)
    }

    fn spec(&mut self) -> Result<GroupSpec> {
        self.skip_ws();
        let start = self.pos;
        if self.eat("Perm") {
            return self.perm_list();
        }
        if self.eat("PSL") {
            return Ok(GroupSpec::Psl(self.linear(start)?));
        }
        if self.eat("PGL") {
            return Ok(GroupSpec::Pgl(self.linear(start)?));
        }
        for family in ["PSU", "PSp"] {
            if self.eat(family) {
                let (n, q) = self.pair()?;
                return Ok(GroupSpec::Named(format!("{family}({n},{q})")));
            }
        }
        if self.eat("Sym") {
            return Ok(GroupSpec::Sym(self.single()?));
        }
        if self.eat("Alt") {
            return Ok(GroupSpec::Alt(self.single()?));
        }
        if self.eat("HS") {
            return Ok(GroupSpec::Named("HS".into()));
        }
        if self.eat("M") {
            let n = self.number()?;
            return Ok(GroupSpec::Named(format!("M{n}")));
        }
        if self.eat("C") {
            let mut factors = vec![self.single()?];
            while self.eat("x") {
                self.expect("C")?;
                factors.push(self.single()?);
            }
            return Ok(if factors.len() == 1 {
                GroupSpec::Cyclic(factors[0])
            } else {
                GroupSpec::CyclicProduct(factors)
            });
        }
        Err(self.err("expected a group"))
    }

    fn perm_list(&mut self) -> Result<GroupSpec> {
        self.expect("[")?;
        let mut raw: Vec<Vec<Vec<u32>>> = Vec::new();
        loop {
            let mut cycles = Vec::new();
            while self.peek() == Some('(') {
                self.expect("(")?;
                let mut cycle = Vec::new();
                while self.peek().is_some_and(|c| c.is_ascii_digit()) {
                    let p = self.number()?;
                    let p = u32::try_from(p)
                        .ok()
                        .filter(|&p| p >= 1)
                        .ok_or_else(|| self.err("points are 1-based"))?;
                    cycle.push(p);
                }
                self.expect(")")?;
                cycles.push(cycle);
            }
            if cycles.is_empty() {
                return Err(self.err("expected a cycle"));
            }
            raw.push(cycles);
            if !self.eat(",") {
                break;
            }
        }
        self.expect("]")?;
        let degree = raw.iter().flatten().flatten().copied().max().unwrap_or(1) as usize;
        let gens = raw
            .iter()
            .map(|cycles| {
                let nontrivial: Vec<Vec<u32>> = cycles.iter().filter(|c| c.len() > 1).cloned().collect();
                Permutation::from_cycles(degree, &nontrivial)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(GroupSpec::Perm(gens))
    }
}

pub fn parse_group_spec(text: &str) -> Result<GroupSpec> {
    GroupSpec::parse(text)
}
