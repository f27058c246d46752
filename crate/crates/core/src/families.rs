//! Closed formulas and embedded reference data for the named families.
//!
//! The embedded file `data/golden.tsv` is line oriented:
//! `name<TAB>statistic<TAB>value<TAB>provenance`, `#` starts a comment, and
//! one comment line must read `# format-version: 1`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::groupcore::NAMED_GROUPS;
use crate::util::prime_power;

pub const GOLDEN_FORMAT_VERSION: u32 = 1;

const EMBEDDED: &str = include_str!("../data/golden.tsv");

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Statistic {
    Order,
    Psi,
    Meo,
    M,
    M2,
}

impl Statistic {
    pub fn as_str(self) -> &'static str {
        match self {
            Statistic::Order => "order",
            Statistic::Psi => "psi",
            Statistic::Meo => "meo",
            Statistic::M => "m",
            Statistic::M2 => "m2",
        }
    }
}

impl fmt::Display for Statistic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Statistic {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "order" => Statistic::Order,
            "psi" => Statistic::Psi,
            "meo" => Statistic::Meo,
            "m" => Statistic::M,
            "m2" => Statistic::M2,
            other => return Err(Error::Semantic(format!("unknown statistic {other:?}"))),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FactSource {
    Formula,
    Lookup,
}

impl FactSource {
    pub fn as_str(self) -> &'static str {
        match self {
            FactSource::Formula => "formula",
            FactSource::Lookup => "lookup",
        }
    }
}

/// One statistic of one group, with where it came from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyFact {
    pub group: String,
    pub statistic: Statistic,
    pub value: u128,
    pub source: FactSource,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GoldenEntry {
    pub name: String,
    pub statistic: Statistic,
    pub value: u128,
    pub provenance: String,
}

/// Parsed reference data, keyed by `(name, statistic)`; file order is kept.
#[derive(Debug, Clone, Default)]
pub struct GoldenData {
    entries: Vec<GoldenEntry>,
    index: BTreeMap<(String, Statistic), usize>,
}

impl GoldenData {
    pub fn parse(text: &str) -> Result<Self> {
        let mut data = GoldenData::default();
        let mut version = None;
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let trimmed = raw.trim();
            if let Some(comment) = trimmed.strip_prefix('#') {
                if let Some(v) = comment.trim().strip_prefix("format-version:") {
                    let v: u32 = v.trim().parse().map_err(|_| Error::Data {
                        line,
                        msg: "bad format-version".into(),
                    })?;
                    version = Some(v);
                }
                continue;
            }
            if trimmed.is_empty() {
                continue;
            }
            let fields: Vec<&str> = raw.split('\t').collect();
            if fields.len() != 4 {
                return Err(Error::Data {
                    line,
                    msg: format!("expected 4 tab-separated fields, found {}", fields.len()),
                });
            }
            let statistic = fields[1].parse().map_err(|e: Error| Error::Data {
                line,
                msg: e.to_string(),
            })?;
            let value = fields[2].parse().map_err(|_| Error::Data {
                line,
                msg: format!("value {:?} is not a non-negative integer", fields[2]),
            })?;
            let entry = GoldenEntry {
                name: fields[0].to_string(),
                statistic,
                value,
                provenance: fields[3].trim_end().to_string(),
            };
            let key = (entry.name.clone(), statistic);
            if data.index.insert(key, data.entries.len()).is_some() {
                return Err(Error::Data {
                    line,
                    msg: format!("duplicate entry {} {}", entry.name, statistic),
                });
            }
            data.entries.push(entry);
        }
        match version {
            Some(GOLDEN_FORMAT_VERSION) => Ok(data),
            Some(v) => Err(Error::Data {
                line: 0,
                msg: format!("unsupported format-version {v}"),
            }),
            None => Err(Error::Data {
                line: 0,
                msg: "missing format-version header".into(),
            }),
        }
    }

    /// The data file compiled into the library.
    pub fn embedded() -> &'static GoldenData {
        static DATA: OnceLock<GoldenData> = OnceLock::new();
        DATA.get_or_init(|| GoldenData::parse(EMBEDDED).expect("embedded golden data parses"))
    }

    pub fn embedded_text() -> &'static str {
        EMBEDDED
    }

    pub fn entries(&self) -> &[GoldenEntry] {
        &self.entries
    }

    pub fn get(&self, name: &str, statistic: Statistic) -> Option<&GoldenEntry> {
        self.index
            .get(&(name.to_string(), statistic))
            .map(|&i| &self.entries[i])
    }

    pub fn value(&self, name: &str, statistic: Statistic) -> Option<u128> {
        self.get(name, statistic).map(|e| e.value)
    }
}

fn check_linear(n: u32, q: u64) -> Result<()> {
    if n < 2 {
        return Err(Error::OutOfRange(format!("n = {n} must be at least 2")));
    }
    if prime_power(q).is_none() {
        return Err(Error::OutOfRange(format!("q = {q} is not a prime power")));
    }
    Ok(())
}

/// `(qⁿ − 1)/(q − 1)`, the number of points of projective (n−1)-space.
fn projective_points(n: u32, q: u64) -> Result<u128> {
    let mut total = 0u128;
    let mut power = 1u128;
    for _ in 0..n {
        total = total
            .checked_add(power)
            .ok_or_else(|| Error::Overflow(format!("({q}^{n}-1)/({q}-1)")))?;
        power = power
            .checked_mul(q as u128)
            .ok_or_else(|| Error::Overflow(format!("({q}^{n}-1)/({q}-1)")))?;
    }
    Ok(total)
}

/// Minimal index of a proper subgroup of `PSL(n, q)`.
pub fn m_psl(n: u32, q: u64) -> Result<u128> {
    check_linear(n, q)?;
    if n == 2 && (q == 2 || q == 3) {
        return Err(Error::OutOfRange(format!("PSL(2,{q}) is not simple")));
    }
    Ok(match (n, q) {
        (4, 2) => 8,
        (2, 9) => 6,
        (2, 5) | (2, 7) | (2, 11) => q as u128,
        _ => projective_points(n, q)?,
    })
}

/// `meo(PGL(n, q)) = (qⁿ − 1)/(q − 1)`, an upper bound for `meo(PSL(n, q))`.
pub fn meo_pgl_bound(n: u32, q: u64) -> Result<u128> {
    check_linear(n, q)?;
    projective_points(n, q)
}

/// Simple groups for which the bound `meo(Aut(S)) < m(S)/4` can fail.
/// `Alt(n)` and `PSL(n,q)` stand for their whole families.
pub fn exception_table() -> BTreeSet<&'static str> {
    let mut set: BTreeSet<&'static str> = NAMED_GROUPS.iter().copied().collect();
    set.insert("Alt(n)");
    set.insert("PSL(n,q)");
    set
}

/// `(meo, m)` for a lookup-only group.
pub fn sporadic_stats(name: &str) -> Result<(FamilyFact, FamilyFact)> {
    sporadic_stats_in(GoldenData::embedded(), name)
}

pub fn sporadic_stats_in(data: &GoldenData, name: &str) -> Result<(FamilyFact, FamilyFact)> {
    if !NAMED_GROUPS.contains(&name) {
        return Err(Error::UnknownName(name.to_string()));
    }
    let fact = |statistic| {
        data.value(name, statistic)
            .map(|value| FamilyFact {
                group: name.to_string(),
                statistic,
                value,
                source: FactSource::Lookup,
            })
            .ok_or_else(|| Error::Unavailable(format!("no {statistic} for {name} in golden data")))
    };
    Ok((fact(Statistic::Meo)?, fact(Statistic::M)?))
}

/// `|G|` for a lookup-only group.
pub fn named_order(data: &GoldenData, name: &str) -> Result<u128> {
    if !NAMED_GROUPS.contains(&name) {
        return Err(Error::UnknownName(name.to_string()));
    }
    data.value(name, Statistic::Order)
        .ok_or_else(|| Error::Unavailable(format!("no order for {name} in golden data")))
}
