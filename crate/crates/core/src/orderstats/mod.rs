//! ψ(G), meo(G) and exp(G): brute force over materialized elements, and a
//! cycle-type route for the symmetric and alternating groups.

pub mod brute;
pub mod cycle_type;

use num_bigint::BigUint;

use crate::error::Result;
use crate::util::factorial;

pub use brute::{exponent, meo_bruteforce, psi_bruteforce, stats_bruteforce, OrderStats, StatsMethod};
pub use cycle_type::{
    enumerate_cycle_types, exponent_alternating, exponent_symmetric, meo_alternating, meo_symmetric, psi_alternating,
    psi_symmetric, CycleType, MAX_PARTITION_DEGREE,
};

pub fn stats_symmetric(n: u64) -> Result<OrderStats> {
    OrderStats::new(
        format!("Sym({n})"),
        factorial(n),
        psi_symmetric(n)?,
        meo_symmetric(n)?,
        exponent_symmetric(n)?,
        StatsMethod::CycleType,
    )
}

pub fn stats_alternating(n: u64) -> Result<OrderStats> {
    let order = if n >= 2 {
        factorial(n) / 2u32
    } else {
        BigUint::from(1u32)
    };
    OrderStats::new(
        format!("Alt({n})"),
        order,
        psi_alternating(n)?,
        meo_alternating(n)?,
        exponent_alternating(n)?,
        StatsMethod::CycleType,
    )
}
