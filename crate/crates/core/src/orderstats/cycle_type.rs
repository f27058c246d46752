//! Cycle types of `Sym(n)`: the fast path for ψ, meo and exponent of the
//! symmetric and alternating groups.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::util::{factorial, lcm_u128};

/// Default upper bound on `n` for partition enumeration.
pub const MAX_PARTITION_DEGREE: u64 = 40;

/// A partition of `n` read as the cycle type of a permutation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleType {
    n: u64,
    /// Parts in non-increasing order, fixed points included.
    parts: Vec<u64>,
}

impl CycleType {
    pub fn new(mut parts: Vec<u64>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::Semantic("cycle lengths must be positive".into()));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        let n = parts.iter().sum();
        if n == 0 {
            return Err(Error::Semantic("empty cycle type".into()));
        }
        Ok(CycleType { n, parts })
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn parts(&self) -> &[u64] {
        &self.parts
    }

    /// cycle length → number of cycles of that length
    pub fn multiplicities(&self) -> BTreeMap<u64, u64> {
        let mut m = BTreeMap::new();
        for &p in &self.parts {
            *m.entry(p).or_insert(0) += 1;
        }
        m
    }

    /// `z_λ = Π mᵢ! · i^{mᵢ}`, the centralizer order in `Sym(n)`.
    pub fn centralizer_order(&self) -> BigUint {
        self.multiplicities()
            .into_iter()
            .fold(BigUint::from(1u32), |acc, (len, mult)| {
                acc * factorial(mult) * BigUint::from(len).pow(mult as u32)
            })
    }

    /// Number of permutations of this type, `n! / z_λ`.
    pub fn count(&self) -> BigUint {
        factorial(self.n) / self.centralizer_order()
    }

    /// Order of any permutation of this type.
    pub fn element_order(&self) -> u128 {
        self.parts.iter().fold(1u128, |acc, &p| lcm_u128(acc, p as u128))
    }

    /// `(-1)^(n - parts)`.
    pub fn is_even(&self) -> bool {
        (self.n - self.parts.len() as u64).is_multiple_of(2)
    }

    pub fn sign(&self) -> i8 {
        if self.is_even() {
            1
        } else {
            -1
        }
    }
}

fn check_bound(n: u64) -> Result<()> {
    if n == 0 {
        return Err(Error::OutOfRange("n must be positive".into()));
    }
    if n > MAX_PARTITION_DEGREE {
        return Err(Error::CapExceeded {
            what: format!("partition degree {n}"),
            cap: MAX_PARTITION_DEGREE as u128,
        });
    }
    Ok(())
}

/// All partitions of `n`, in decreasing lexicographic order.
pub fn enumerate_cycle_types(n: u64) -> Result<Vec<CycleType>> {
    check_bound(n)?;
    let mut out = Vec::new();
    let mut parts = vec![n];
    loop {
        out.push(CycleType {
            n,
            parts: parts.clone(),
        });
        // strip trailing ones, then decrement the last part > 1 and refill
        let mut ones = 0;
        while parts.last() == Some(&1) {
            parts.pop();
            ones += 1;
        }
        let Some(last) = parts.pop() else {
            break;
        };
        let k = last - 1;
        let mut rest = ones + 1 + k;
        while rest > 0 {
            let piece = k.min(rest);
            parts.push(piece);
            rest -= piece;
        }
    }
    Ok(out)
}

/// `(ψ, meo, exponent)` over the types selected by `keep`.
fn stats_over(n: u64, keep: impl Fn(&CycleType) -> bool) -> Result<(BigUint, u128, u128)> {
    let mut psi = BigUint::zero();
    let mut meo = 1u128;
    let mut exp = 1u128;
    for t in enumerate_cycle_types(n)?.iter().filter(|t| keep(t)) {
        let o = t.element_order();
        psi += t.count() * o;
        meo = meo.max(o);
        exp = lcm_u128(exp, o);
    }
    Ok((psi, meo, exp))
}

pub fn psi_symmetric(n: u64) -> Result<BigUint> {
    Ok(stats_over(n, |_| true)?.0)
}

pub fn psi_alternating(n: u64) -> Result<BigUint> {
    Ok(stats_over(n, CycleType::is_even)?.0)
}

pub fn meo_symmetric(n: u64) -> Result<u128> {
    Ok(stats_over(n, |_| true)?.1)
}

pub fn meo_alternating(n: u64) -> Result<u128> {
    Ok(stats_over(n, CycleType::is_even)?.1)
}

pub fn exponent_symmetric(n: u64) -> Result<u128> {
    Ok(stats_over(n, |_| true)?.2)
}

pub fn exponent_alternating(n: u64) -> Result<u128> {
    Ok(stats_over(n, CycleType::is_even)?.2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groupcore::{enumerate_elements, Permutation};

    fn sym_elements(n: usize) -> Vec<Permutation> {
        if n == 1 {
            return vec![Permutation::identity(1)];
        }
        let t = Permutation::from_cycles(n, &[vec![1, 2]]).unwrap();
        let c = Permutation::from_cycles(n, &[(1..=n as u32).collect()]).unwrap();
        enumerate_elements(&[t, c], 1_000_000).unwrap()
    }

    #[test]
    fn type_2_2_in_sym4_has_three_elements() {
        let brute = sym_elements(4)
            .iter()
            .filter(|p| p.cycle_lengths() == vec![2, 2])
            .count();
        assert_eq!(brute, 3);
        let t = CycleType::new(vec![2, 2]).unwrap();
        assert_eq!(t.count(), BigUint::from(3u32));
    }

    #[test]
    fn small_partition_counts() {
        let one = enumerate_cycle_types(1).unwrap();
        assert_eq!(one.len(), 1);
        assert_eq!(one[0].parts(), &[1]);
        assert_eq!(one[0].count(), BigUint::from(1u32));

        // p(5) by direct enumeration of non-increasing sequences
        fn p(n: u64, max: u64) -> usize {
            if n == 0 {
                return 1;
            }
            (1..=max.min(n)).map(|k| p(n - k, k)).sum()
        }
        assert_eq!(p(5, 5), 7);
        assert_eq!(enumerate_cycle_types(5).unwrap().len(), 7);
        for n in 1..=25 {
            assert_eq!(enumerate_cycle_types(n).unwrap().len(), p(n, n));
        }
    }

    #[test]
    fn decreasing_lexicographic_order() {
        let parts: Vec<Vec<u64>> = enumerate_cycle_types(5).unwrap().into_iter().map(|t| t.parts).collect();
        let expected: Vec<Vec<u64>> = vec![
            vec![5],
            vec![4, 1],
            vec![3, 2],
            vec![3, 1, 1],
            vec![2, 2, 1],
            vec![2, 1, 1, 1],
            vec![1, 1, 1, 1, 1],
        ];
        assert_eq!(parts, expected);
        for n in 1..=15 {
            let ts = enumerate_cycle_types(n).unwrap();
            assert!(ts.windows(2).all(|w| w[0].parts > w[1].parts));
        }
    }

    #[test]
    fn counts_sum_to_group_orders() {
        for n in 1..=20 {
            let ts = enumerate_cycle_types(n).unwrap();
            let all: BigUint = ts.iter().map(CycleType::count).sum();
            assert_eq!(all, factorial(n));
            if n >= 2 {
                let even: BigUint = ts.iter().filter(|t| t.is_even()).map(CycleType::count).sum();
                assert_eq!(even, factorial(n) / 2u32);
            }
        }
    }

    #[test]
    fn parity_of_types() {
        assert!(CycleType::new(vec![3, 1, 1]).unwrap().is_even());
        assert!(!CycleType::new(vec![2, 1]).unwrap().is_even());
        assert_eq!(CycleType::new(vec![4]).unwrap().sign(), -1);
    }

    #[test]
    fn psi_sym3_by_brute_force() {
        let brute: u128 = sym_elements(3).iter().map(|p| p.order()).sum();
        assert_eq!(brute, 13);
        assert_eq!(psi_symmetric(3).unwrap(), BigUint::from(13u32));
    }

    #[test]
    fn cycle_type_matches_brute_force_on_sym() {
        for n in 1..=7 {
            let els = sym_elements(n);
            let psi: u128 = els.iter().map(|p| p.order()).sum();
            let meo = els.iter().map(|p| p.order()).max().unwrap();
            assert_eq!(psi_symmetric(n as u64).unwrap(), BigUint::from(psi));
            assert_eq!(meo_symmetric(n as u64).unwrap(), meo);
        }
    }

    #[test]
    fn alternating_table_values() {
        assert_eq!(psi_alternating(12).unwrap(), BigUint::from(2_973_194_071u64));
        assert_eq!(psi_alternating(14).unwrap(), BigUint::from(835_826_439_631u64));
        assert_eq!(meo_alternating(10).unwrap(), 21);
        assert_eq!(meo_alternating(13).unwrap(), 35);
        assert_eq!(meo_alternating(3).unwrap(), 3);
    }

    #[test]
    fn bounds() {
        assert!(matches!(enumerate_cycle_types(41), Err(Error::CapExceeded { .. })));
        assert!(enumerate_cycle_types(0).is_err());
        assert!(psi_alternating(40).is_ok());
    }
}
