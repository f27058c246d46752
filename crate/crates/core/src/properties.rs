//! Decisions for the meo-group and B_ψ properties.
//!
//! A group `G` is a meo-group when `meo(G) ≤ m(G)`, and a B_ψ-group when
//! `ψ(H) < |G|` for every proper subgroup `H`. Every nontrivial meo-group is
//! B_ψ, so `meo ≤ m` certifies B_ψ; the converse fails, so a failed
//! certificate is only ever inconclusive.

use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::groupcore::{PermGroup, Permutation};
use crate::orderstats::{meo_alternating, meo_bruteforce, psi_alternating, psi_bruteforce};
use crate::subgroups::{all_subgroups, Lattice, LatticeLimits, SubgroupRecord};
use crate::util::factorial;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Property {
    MeoGroup,
    BPsi,
}

impl Property {
    pub fn as_str(self) -> &'static str {
        match self {
            Property::MeoGroup => "meo-group",
            Property::BPsi => "bpsi",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Outcome {
    Holds,
    Fails,
    Inconclusive,
}

impl Outcome {
    pub fn as_str(self) -> &'static str {
        match self {
            Outcome::Holds => "holds",
            Outcome::Fails => "fails",
            Outcome::Inconclusive => "inconclusive",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    /// Plain comparison of `meo` with `m`.
    Direct,
    Exhaustive,
    Certificate,
    AltPath,
    Witness,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Direct => "direct",
            Method::Exhaustive => "exhaustive",
            Method::Certificate => "certificate",
            Method::AltPath => "alt-path",
            Method::Witness => "witness",
        }
    }
}

/// How a number was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Source {
    BruteForce,
    CycleType,
    Lattice,
    Formula,
    Lookup,
}

impl Source {
    pub fn as_str(self) -> &'static str {
        match self {
            Source::BruteForce => "brute-force",
            Source::CycleType => "cycle-type",
            Source::Lattice => "lattice",
            Source::Formula => "formula",
            Source::Lookup => "lookup",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sourced<T> {
    pub value: T,
    pub source: Source,
}

impl<T> Sourced<T> {
    pub fn new(value: T, source: Source) -> Self {
        Sourced { value, source }
    }
}

/// A proper subgroup `H` with `ψ(H) ≥ |G|`, or the best candidate found.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubgroupWitness {
    pub description: String,
    pub order: BigUint,
    pub psi: BigUint,
    pub generators: Vec<Permutation>,
}

/// `ψ(G) < |G|·meo(G)`, checked wherever all three numbers are at hand.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PsiBound {
    pub psi: BigUint,
    pub order: BigUint,
    pub meo: u128,
}

impl PsiBound {
    pub fn new(psi: BigUint, order: BigUint, meo: u128) -> Result<Self> {
        if !order.is_one() && psi >= &order * BigUint::from(meo) {
            return Err(Error::Invariant(format!(
                "psi = {psi} is not below |G| * meo = {order} * {meo}"
            )));
        }
        Ok(PsiBound { psi, order, meo })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Evidence {
    MeoVsM {
        meo: Sourced<u128>,
        /// `None` for the trivial group, which has no proper subgroup.
        m: Option<Sourced<u128>>,
    },
    Exhaustive {
        group_order: BigUint,
        proper_subgroups: usize,
        max_proper_psi: BigUint,
        witness: Option<SubgroupWitness>,
    },
    Certificate {
        group_order: BigUint,
        meo: Sourced<u128>,
        m: Option<Sourced<u128>>,
    },
    AltPath {
        n: u64,
        group_order: BigUint,
        meo: Sourced<u128>,
        m2: Sourced<u128>,
        psi_point_stabilizer: Sourced<BigUint>,
    },
    Witness {
        group_order: BigUint,
        witness: Option<SubgroupWitness>,
        candidates: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PropertyVerdict {
    pub property: Property,
    pub outcome: Outcome,
    pub method: Method,
    pub evidence: Evidence,
    pub psi_bound: Option<PsiBound>,
}

impl PropertyVerdict {
    pub fn holds(&self) -> bool {
        self.outcome == Outcome::Holds
    }

    pub fn with_psi_bound(mut self, bound: PsiBound) -> Self {
        self.psi_bound = Some(bound);
        self
    }
}

impl fmt::Display for PropertyVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {} ({})",
            self.property.as_str(),
            self.outcome.as_str(),
            self.method.as_str()
        )
    }
}

/// `meo ≤ m`; with no `m` (trivial group) the condition holds vacuously.
pub fn meo_verdict(meo: Sourced<u128>, m: Option<Sourced<u128>>) -> PropertyVerdict {
    let holds = m.as_ref().is_none_or(|m| meo.value <= m.value);
    PropertyVerdict {
        property: Property::MeoGroup,
        outcome: if holds { Outcome::Holds } else { Outcome::Fails },
        method: Method::Direct,
        evidence: Evidence::MeoVsM { meo, m },
        psi_bound: None,
    }
}

/// meo by brute force, m from the lattice.
pub fn is_meo_group(group: &PermGroup, limits: &LatticeLimits) -> Result<PropertyVerdict> {
    let lattice = all_subgroups(group, limits)?;
    let meo = Sourced::new(meo_bruteforce(group)?, Source::BruteForce);
    let m = lattice.summary().m.map(|m| Sourced::new(m as u128, Source::Lattice));
    Ok(meo_verdict(meo, m).with_psi_bound(lattice_psi_bound(&lattice)?))
}

fn lattice_psi_bound(lattice: &Lattice) -> Result<PsiBound> {
    let n = lattice.group_order() as u32;
    let psi: u128 = (0..n).map(|i| lattice.element_order(i) as u128).sum();
    let meo = (0..n).map(|i| lattice.element_order(i) as u128).max().unwrap_or(1);
    PsiBound::new(psi.into(), lattice.group_order().into(), meo)
}

fn record_witness(group: &PermGroup, lattice: &Lattice, r: &SubgroupRecord) -> Result<SubgroupWitness> {
    let elements = group.elements()?;
    Ok(SubgroupWitness {
        description: format!("subgroup of order {} and index {}", r.order, r.index),
        order: r.order.into(),
        psi: lattice.psi(r).into(),
        generators: r.generators.iter().map(|&i| elements[i as usize].clone()).collect(),
    })
}

/// ψ(H) < |G| over every proper subgroup of a computed lattice. A failure
/// names the first violating maximal subgroup in lattice order.
pub fn is_bpsi_exhaustive(group: &PermGroup, lattice: &Lattice) -> Result<PropertyVerdict> {
    let n = lattice.group_order() as u128;
    let mut max_psi = 0u128;
    let mut proper = 0usize;
    for r in lattice.proper() {
        proper += 1;
        max_psi = max_psi.max(lattice.psi(r));
    }
    // ψ only grows along inclusions, so some maximal subgroup violates iff any does
    let witness = lattice
        .maximal()
        .find(|r| lattice.psi(r) >= n)
        .map(|r| record_witness(group, lattice, r))
        .transpose()?;
    Ok(PropertyVerdict {
        property: Property::BPsi,
        outcome: if witness.is_some() {
            Outcome::Fails
        } else {
            Outcome::Holds
        },
        method: Method::Exhaustive,
        evidence: Evidence::Exhaustive {
            group_order: n.into(),
            proper_subgroups: proper,
            max_proper_psi: max_psi.into(),
            witness,
        },
        psi_bound: Some(lattice_psi_bound(lattice)?),
    })
}

/// `meo ≤ m` proves B_ψ for a nontrivial group; anything else is inconclusive.
pub fn certify_bpsi(group_order: BigUint, meo: Sourced<u128>, m: Option<Sourced<u128>>) -> PropertyVerdict {
    let proven = !group_order.is_one() && m.as_ref().is_some_and(|m| meo.value <= m.value);
    PropertyVerdict {
        property: Property::BPsi,
        outcome: if proven { Outcome::Holds } else { Outcome::Inconclusive },
        method: Method::Certificate,
        evidence: Evidence::Certificate { group_order, meo, m },
        psi_bound: None,
    }
}

/// Certificate with meo by brute force and m from the lattice.
pub fn is_bpsi_certified(group: &PermGroup, limits: &LatticeLimits) -> Result<PropertyVerdict> {
    let lattice = all_subgroups(group, limits)?;
    let meo = Sourced::new(meo_bruteforce(group)?, Source::BruteForce);
    let m = lattice.summary().m.map(|m| Sourced::new(m as u128, Source::Lattice));
    Ok(certify_bpsi(lattice.group_order().into(), meo, m).with_psi_bound(lattice_psi_bound(&lattice)?))
}

fn alt_order(n: u64) -> BigUint {
    if n < 2 {
        BigUint::one()
    } else {
        factorial(n) / 2u32
    }
}

/// Alt(n) for 8 ≤ n ≤ 13. A maximal subgroup other than the point stabilizer
/// has index at least m₂, so `meo ≤ m₂` bounds its ψ by `|Alt(n)|`, and the
/// point stabilizer `Alt(n−1)` is compared directly.
pub fn is_bpsi_alt_path(n: u64, m2: Sourced<u128>) -> Result<PropertyVerdict> {
    if !(8..=13).contains(&n) {
        return Err(Error::OutOfRange(format!("alt-path needs 8 <= n <= 13, got {n}")));
    }
    let order = alt_order(n);
    let meo = meo_alternating(n)?;
    let psi_prev = psi_alternating(n - 1)?;
    let outcome = if psi_prev >= order {
        Outcome::Fails
    } else if meo <= m2.value {
        Outcome::Holds
    } else {
        Outcome::Inconclusive
    };
    let bound = PsiBound::new(psi_alternating(n)?, order.clone(), meo)?;
    Ok(PropertyVerdict {
        property: Property::BPsi,
        outcome,
        method: Method::AltPath,
        evidence: Evidence::AltPath {
            n,
            group_order: order,
            meo: Sourced::new(meo, Source::CycleType),
            m2,
            psi_point_stabilizer: Sourced::new(psi_prev, Source::CycleType),
        },
        psi_bound: Some(bound),
    })
}

fn witness_verdict(group_order: BigUint, witness: Option<SubgroupWitness>, candidates: usize) -> PropertyVerdict {
    PropertyVerdict {
        property: Property::BPsi,
        outcome: if witness.is_some() {
            Outcome::Fails
        } else {
            Outcome::Inconclusive
        },
        method: Method::Witness,
        evidence: Evidence::Witness {
            group_order,
            witness,
            candidates,
        },
        psi_bound: None,
    }
}

fn alt_witness(k: u64, degree: u64) -> Result<SubgroupWitness> {
    let mut generators = Vec::new();
    if k >= 3 {
        let d = degree as usize;
        generators.push(Permutation::from_cycles(d, &[vec![1, 2, 3]])?);
        let long: Vec<u32> = if k % 2 == 1 {
            (1..=k as u32).collect()
        } else {
            (2..=k as u32).collect()
        };
        if long.len() > 1 {
            generators.push(Permutation::from_cycles(d, &[long])?);
        }
    }
    Ok(SubgroupWitness {
        description: format!("Alt({k})"),
        order: alt_order(k),
        psi: psi_alternating(k)?,
        generators,
    })
}

/// Alt(n−1) ≤ Alt(n): a negative verdict when ψ(Alt(n−1)) ≥ |Alt(n)|.
pub fn not_bpsi_witness_alt(n: u64) -> Result<PropertyVerdict> {
    if n < 6 {
        return Err(Error::OutOfRange(format!("witness test needs n >= 6, got {n}")));
    }
    let order = alt_order(n);
    let candidate = alt_witness(n - 1, n)?;
    let hit = (candidate.psi >= order).then_some(candidate);
    let bound = PsiBound::new(psi_alternating(n)?, order.clone(), meo_alternating(n)?)?;
    Ok(witness_verdict(order, hit, 1).with_psi_bound(bound))
}

/// Alt(n) has index 2 in Sym(n), and ψ(Alt(n)) ≥ n! from n = 3 on.
pub fn not_bpsi_witness_sym(n: u64) -> Result<PropertyVerdict> {
    if n < 3 {
        return Err(Error::OutOfRange(format!("witness test needs n >= 3, got {n}")));
    }
    let order = factorial(n);
    let candidate = alt_witness(n, n)?;
    let hit = (candidate.psi >= order).then_some(candidate);
    Ok(witness_verdict(order, hit, 1))
}

/// Point stabilizers and cyclic subgroups of a materialized group, checked
/// against `|G|` without building the lattice.
pub fn witness_scan(group: &PermGroup) -> Result<PropertyVerdict> {
    let elements = group.elements()?;
    let n = elements.len() as u128;
    let orders: Vec<u128> = elements.iter().map(Permutation::order).collect();
    let mut candidates = 0;
    for point in 0..group.degree() {
        let members: Vec<usize> = (0..elements.len())
            .filter(|&i| elements[i].apply(point) == point)
            .collect();
        if members.len() as u128 == n {
            continue;
        }
        candidates += 1;
        let psi: u128 = members.iter().map(|&i| orders[i]).sum();
        if psi >= n {
            let witness = SubgroupWitness {
                description: format!("stabilizer of point {}", point + 1),
                order: members.len().into(),
                psi: psi.into(),
                generators: Vec::new(),
            };
            return Ok(witness_verdict(n.into(), Some(witness), candidates));
        }
    }
    // ψ(⟨g⟩) depends only on o(g): Σ_{d | k} d·φ(d)
    let mut best: Option<(u128, usize)> = None;
    for (i, &k) in orders.iter().enumerate() {
        if k == n {
            continue;
        }
        candidates += 1;
        let psi = cyclic_psi(k);
        if psi >= n && best.is_none_or(|(b, _)| psi > b) {
            best = Some((psi, i));
        }
    }
    let witness = best.map(|(psi, i)| SubgroupWitness {
        description: format!("cyclic subgroup of order {}", orders[i]),
        order: orders[i].into(),
        psi: psi.into(),
        generators: vec![elements[i].clone()],
    });
    let meo = orders.iter().copied().max().unwrap_or(1);
    let bound = PsiBound::new(psi_bruteforce(group)?.into(), n.into(), meo)?;
    Ok(witness_verdict(n.into(), witness, candidates).with_psi_bound(bound))
}

/// ψ(C_k).
pub fn cyclic_psi(k: u128) -> u128 {
    (1..=k).filter(|d| k.is_multiple_of(*d)).map(|d| d * totient(d)).sum()
}

fn totient(mut n: u128) -> u128 {
    let mut out = n;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            out -= out / p;
        }
        p += 1;
    }
    if n > 1 {
        out -= out / n;
    }
    out
}

/// Largest ψ over proper subgroups, zero for the trivial group.
pub fn max_proper_psi(lattice: &Lattice) -> BigUint {
    lattice
        .proper()
        .map(|r| lattice.psi(r))
        .max()
        .map(BigUint::from)
        .unwrap_or_else(BigUint::zero)
}
