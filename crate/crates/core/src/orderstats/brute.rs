use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::groupcore::PermGroup;
use crate::util::lcm_u128;

/// ψ(G) = Σ o(g) over all elements.
pub fn psi_bruteforce(group: &PermGroup) -> Result<u128> {
    Ok(group.elements()?.iter().map(|g| g.order()).sum())
}

/// Largest element order.
pub fn meo_bruteforce(group: &PermGroup) -> Result<u128> {
    Ok(group.elements()?.iter().map(|g| g.order()).max().unwrap_or(1))
}

/// lcm of all element orders.
pub fn exponent(group: &PermGroup) -> Result<u128> {
    Ok(group.elements()?.iter().fold(1u128, |acc, g| lcm_u128(acc, g.order())))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StatsMethod {
    BruteForce,
    CycleType,
    Lookup,
}

impl StatsMethod {
    pub fn as_str(self) -> &'static str {
        match self {
            StatsMethod::BruteForce => "brute-force",
            StatsMethod::CycleType => "cycle-type",
            StatsMethod::Lookup => "lookup",
        }
    }
}

/// ψ, meo and exponent of one group, with the route that produced them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderStats {
    pub label: String,
    pub order: BigUint,
    pub psi: BigUint,
    pub meo: u128,
    pub exponent: u128,
    pub method: StatsMethod,
}

impl OrderStats {
    /// Builds the record, rejecting values that no finite group can have.
    pub fn new(
        label: impl Into<String>,
        order: BigUint,
        psi: BigUint,
        meo: u128,
        exponent: u128,
        method: StatsMethod,
    ) -> Result<Self> {
        let stats = OrderStats {
            label: label.into(),
            order,
            psi,
            meo,
            exponent,
            method,
        };
        stats.check()?;
        Ok(stats)
    }

    fn check(&self) -> Result<()> {
        let one = BigUint::from(1u32);
        let fail = |what: &str| Err(Error::Invariant(format!("{}: {what}", self.label)));
        if self.psi < self.order || ((self.psi == self.order) != (self.order == one)) {
            return fail("psi >= |G| with equality exactly for the trivial group");
        }
        if self.meo == 0 || !self.exponent.is_multiple_of(self.meo) {
            return fail("meo divides the exponent");
        }
        if &self.order % BigUint::from(self.exponent) != BigUint::from(0u32) {
            return fail("exponent divides |G|");
        }
        if self.order > one && self.psi >= &self.order * BigUint::from(self.meo) {
            return fail("psi < |G| * meo");
        }
        Ok(())
    }
}

/// All statistics in one pass over a materialized group.
pub fn stats_bruteforce(label: impl Into<String>, group: &PermGroup) -> Result<OrderStats> {
    let elements = group.elements()?;
    let mut psi = 0u128;
    let mut meo = 1u128;
    let mut exp = 1u128;
    for g in elements {
        let o = g.order();
        psi += o;
        meo = meo.max(o);
        exp = lcm_u128(exp, o);
    }
    OrderStats::new(
        label,
        BigUint::from(elements.len()),
        BigUint::from(psi),
        meo,
        exp,
        StatsMethod::BruteForce,
    )
}
