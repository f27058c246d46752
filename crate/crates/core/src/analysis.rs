//! Per-group orchestration: pick the cheapest sound route to each statistic
//! and to each verdict, and record which route was taken.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};

use crate::error::{Error, Result};
use crate::families::{m_psl, named_order, GoldenData, Statistic};
use crate::groupcore::{materialize, predicted_order, GroupSpec, PermGroup, DEFAULT_ELEMENT_CAP};
use crate::orderstats::{stats_alternating, stats_bruteforce, stats_symmetric, MAX_PARTITION_DEGREE};
use crate::properties::{
    certify_bpsi, is_bpsi_alt_path, is_bpsi_exhaustive, meo_verdict, not_bpsi_witness_alt, not_bpsi_witness_sym,
    witness_scan, Method, Outcome, PropertyVerdict, PsiBound, Source, Sourced,
};
use crate::subgroups::{all_subgroups, Lattice, LatticeLimits, DEFAULT_LATTICE_CAP};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    /// Largest group whose elements are enumerated.
    pub elements: u64,
    /// Largest group whose subgroup lattice is built.
    pub lattice: u64,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            elements: DEFAULT_ELEMENT_CAP,
            lattice: DEFAULT_LATTICE_CAP,
        }
    }
}

/// Everything known about one group, each number tagged with its source.
#[derive(Debug)]
pub struct GroupAnalysis {
    pub spec: GroupSpec,
    pub order: Option<Sourced<BigUint>>,
    pub psi: Option<Sourced<BigUint>>,
    pub meo: Option<Sourced<u128>>,
    pub exponent: Option<Sourced<u128>>,
    pub m: Option<Sourced<u128>>,
    pub m2: Option<Sourced<u128>>,
    pub subgroup_count: Option<u64>,
    pub maximal_count: Option<u64>,
    /// Why a statistic or route was skipped.
    pub notes: Vec<String>,
    group: Option<PermGroup>,
    lattice: Option<Lattice>,
}

/// A verdict plus the routes tried before it.
#[derive(Debug, Clone)]
pub struct CheckOutcome {
    pub verdict: PropertyVerdict,
    pub attempts: Vec<Attempt>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Attempt {
    pub method: Method,
    pub note: String,
}

fn small_primes_dividing(n: &BigUint) -> Vec<u128> {
    let Some(mut n) = n.to_u128() else {
        return Vec::new();
    };
    let mut out = Vec::new();
    let mut p = 2u128;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

impl GroupAnalysis {
    pub fn run(spec: &GroupSpec, caps: &Caps, golden: &GoldenData) -> Result<Self> {
        spec.validate()?;
        let mut a = GroupAnalysis {
            spec: spec.clone(),
            order: None,
            psi: None,
            meo: None,
            exponent: None,
            m: None,
            m2: None,
            subgroup_count: None,
            maximal_count: None,
            notes: Vec::new(),
            group: None,
            lattice: None,
        };
        a.order = match spec {
            GroupSpec::Named(name) => Some(Sourced::new(named_order(golden, name)?.into(), Source::Lookup)),
            _ => predicted_order(spec).map(|o| Sourced::new(o, Source::Formula)),
        };
        a.resolve_stats(caps, golden)?;
        a.resolve_lattice(caps)?;
        a.resolve_fallback_m(golden)?;
        if let (Some(psi), Some(order), Some(meo)) = (&a.psi, &a.order, &a.meo) {
            PsiBound::new(psi.value.clone(), order.value.clone(), meo.value)?;
        }
        Ok(a)
    }

    fn resolve_stats(&mut self, caps: &Caps, golden: &GoldenData) -> Result<()> {
        let cycle_type = match self.spec {
            GroupSpec::Sym(n) if n <= MAX_PARTITION_DEGREE => Some(stats_symmetric(n)?),
            GroupSpec::Alt(n) if n <= MAX_PARTITION_DEGREE => Some(stats_alternating(n)?),
            _ => None,
        };
        if let GroupSpec::Named(name) = &self.spec {
            if let Some(meo) = golden.value(name, Statistic::Meo) {
                self.meo = Some(Sourced::new(meo, Source::Lookup));
            }
            self.notes
                .push(format!("{name} is lookup-only: psi and exponent unavailable"));
            return Ok(());
        }
        let within = |cap: u64| self.order.as_ref().is_some_and(|o| o.value <= BigUint::from(cap));
        let fits = within(caps.elements);
        // with cycle types at hand the elements are only needed for the lattice
        if cycle_type.is_some() && !within(caps.lattice) {
        } else if fits {
            match materialize(&self.spec, caps.elements) {
                Ok(g) => self.group = Some(g),
                Err(e @ Error::CapExceeded { .. }) => self.notes.push(format!("not materialized: {e}")),
                Err(e) => return Err(e),
            }
        } else {
            self.notes.push(format!("order exceeds element cap {}", caps.elements));
        }
        if let Some(s) = cycle_type {
            self.psi = Some(Sourced::new(s.psi, Source::CycleType));
            self.meo = Some(Sourced::new(s.meo, Source::CycleType));
            self.exponent = Some(Sourced::new(s.exponent, Source::CycleType));
        } else if let Some(g) = &self.group {
            let s = stats_bruteforce(self.spec.to_string(), g)?;
            self.psi = Some(Sourced::new(s.psi, Source::BruteForce));
            self.meo = Some(Sourced::new(s.meo, Source::BruteForce));
            self.exponent = Some(Sourced::new(s.exponent, Source::BruteForce));
        } else {
            self.notes.push("psi, meo and exponent unavailable within caps".into());
        }
        Ok(())
    }

    fn resolve_lattice(&mut self, caps: &Caps) -> Result<()> {
        let Some(g) = &self.group else {
            return Ok(());
        };
        let n = g.elements()?.len() as u64;
        if n > caps.lattice {
            self.notes
                .push(format!("order {n} exceeds lattice cap {}", caps.lattice));
            return Ok(());
        }
        match all_subgroups(g, &LatticeLimits::with_cap(caps.lattice)) {
            Ok(lattice) => {
                let s = lattice.summary();
                self.m = s.m.map(|v| Sourced::new(v as u128, Source::Lattice));
                self.m2 = s.m2.map(|v| Sourced::new(v as u128, Source::Lattice));
                self.subgroup_count = Some(s.subgroup_count);
                self.maximal_count = Some(s.maximal_count);
                self.lattice = Some(lattice);
            }
            Err(e @ Error::LatticeUnavailable(_)) => self.notes.push(e.to_string()),
            Err(e) => return Err(e),
        }
        Ok(())
    }

    fn resolve_fallback_m(&mut self, golden: &GoldenData) -> Result<()> {
        if self.lattice.is_some() {
            return Ok(());
        }
        let lookup = |stat| {
            golden
                .value(&self.spec.to_string(), stat)
                .map(|v| Sourced::new(v, Source::Lookup))
        };
        match &self.spec {
            GroupSpec::Alt(_) | GroupSpec::Named(_) => {
                self.m = lookup(Statistic::M);
                self.m2 = lookup(Statistic::M2);
            }
            GroupSpec::Psl(lp) => {
                self.m = Some(Sourced::new(m_psl(lp.n, lp.q)?, Source::Formula));
                self.m2 = lookup(Statistic::M2);
            }
            GroupSpec::Sym(n) if *n >= 2 => {
                self.m = Some(Sourced::new(2, Source::Formula));
            }
            // abelian: the maximal subgroups are exactly those of prime index
            GroupSpec::Cyclic(_) | GroupSpec::CyclicProduct(_) => {
                if let Some(order) = &self.order {
                    let primes = small_primes_dividing(&order.value);
                    self.m = primes.first().map(|&p| Sourced::new(p, Source::Formula));
                    self.m2 = primes.get(1).map(|&p| Sourced::new(p, Source::Formula));
                }
            }
            _ => {}
        }
        if self.m.is_none() {
            self.notes.push("m unavailable within caps".into());
        }
        Ok(())
    }

    pub fn group(&self) -> Option<&PermGroup> {
        self.group.as_ref()
    }

    pub fn lattice(&self) -> Option<&Lattice> {
        self.lattice.as_ref()
    }

    fn psi_bound(&self) -> Result<Option<PsiBound>> {
        match (&self.psi, &self.order, &self.meo) {
            (Some(psi), Some(order), Some(meo)) => {
                Ok(Some(PsiBound::new(psi.value.clone(), order.value.clone(), meo.value)?))
            }
            _ => Ok(None),
        }
    }

    /// meo ≤ m, from whatever sources are available.
    pub fn check_meo(&self) -> Result<CheckOutcome> {
        let meo = self
            .meo
            .clone()
            .ok_or_else(|| Error::Unavailable(format!("meo of {} within caps", self.spec)))?;
        let trivial = self.order.as_ref().is_some_and(|o| o.value.is_one());
        if self.m.is_none() && !trivial {
            return Err(Error::Unavailable(format!("m of {} within caps", self.spec)));
        }
        let mut verdict = meo_verdict(meo, self.m.clone());
        verdict.psi_bound = self.psi_bound()?;
        Ok(CheckOutcome {
            verdict,
            attempts: Vec::new(),
        })
    }

    /// B_ψ by the first applicable route: exhaustive, alt-path, certificate,
    /// then witness. Inconclusive routes fall through to the next.
    pub fn check_bpsi(&self) -> Result<CheckOutcome> {
        let mut attempts = Vec::new();
        let mut fallback: Option<PropertyVerdict> = None;

        match (&self.group, &self.lattice) {
            (Some(g), Some(lattice)) => {
                return Ok(CheckOutcome {
                    verdict: is_bpsi_exhaustive(g, lattice)?,
                    attempts,
                })
            }
            _ => attempts.push(Attempt {
                method: Method::Exhaustive,
                note: "lattice not available".into(),
            }),
        }

        if let GroupSpec::Alt(n) = self.spec {
            if (8..=13).contains(&n) {
                if let Some(m2) = &self.m2 {
                    let v = is_bpsi_alt_path(n, m2.clone())?;
                    if v.outcome != Outcome::Inconclusive {
                        return Ok(CheckOutcome { verdict: v, attempts });
                    }
                    attempts.push(Attempt {
                        method: Method::AltPath,
                        note: "meo exceeds m2".into(),
                    });
                    fallback = Some(v);
                } else {
                    attempts.push(Attempt {
                        method: Method::AltPath,
                        note: "m2 unavailable".into(),
                    });
                }
            } else {
                attempts.push(Attempt {
                    method: Method::AltPath,
                    note: format!("n = {n} outside 8..=13"),
                });
            }
        }

        match (&self.order, &self.meo) {
            (Some(order), Some(meo)) if self.m.is_some() => {
                let mut v = certify_bpsi(order.value.clone(), meo.clone(), self.m.clone());
                v.psi_bound = self.psi_bound()?;
                if v.outcome == Outcome::Holds {
                    return Ok(CheckOutcome { verdict: v, attempts });
                }
                attempts.push(Attempt {
                    method: Method::Certificate,
                    note: "meo exceeds m".into(),
                });
                fallback = fallback.or(Some(v));
            }
            _ => attempts.push(Attempt {
                method: Method::Certificate,
                note: "meo or m unavailable".into(),
            }),
        }

        let witness = match &self.spec {
            GroupSpec::Alt(n) if *n >= 6 && *n <= MAX_PARTITION_DEGREE => Some(not_bpsi_witness_alt(*n)?),
            GroupSpec::Sym(n) if *n >= 3 && *n <= MAX_PARTITION_DEGREE => Some(not_bpsi_witness_sym(*n)?),
            _ => match &self.group {
                Some(g) if g.is_materialized() => Some(witness_scan(g)?),
                _ => None,
            },
        };
        match witness {
            Some(v) if v.outcome == Outcome::Fails => return Ok(CheckOutcome { verdict: v, attempts }),
            Some(v) => {
                attempts.push(Attempt {
                    method: Method::Witness,
                    note: "no violating subgroup among the candidates".into(),
                });
                fallback = fallback.or(Some(v));
            }
            None => attempts.push(Attempt {
                method: Method::Witness,
                note: "no witness candidates".into(),
            }),
        }

        match fallback {
            Some(verdict) => Ok(CheckOutcome { verdict, attempts }),
            None => Err(Error::Unavailable(format!(
                "no decision route for {} within caps",
                self.spec
            ))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(spec: &str) -> GroupAnalysis {
        GroupAnalysis::run(
            &GroupSpec::parse(spec).unwrap(),
            &Caps::default(),
            GoldenData::embedded(),
        )
        .unwrap()
    }

    #[test]
    fn stats_alt6() {
        let a = run("Alt(6)");
        assert_eq!(a.psi.as_ref().unwrap().value, BigUint::from(1411u32));
        assert_eq!(a.meo.as_ref().unwrap().value, 5);
        assert_eq!((a.m.unwrap().value, a.m2.unwrap().value), (6, 10));
    }

    #[test]
    fn psl29_is_alt6_numerically() {
        let a = run("PSL(2,9)");
        assert_eq!(a.order.as_ref().unwrap().value, BigUint::from(360u32));
        assert_eq!(a.psi.as_ref().unwrap().value, BigUint::from(1411u32));
        assert_eq!(a.meo.as_ref().unwrap().value, 5);
        assert_eq!(a.m.as_ref().unwrap().source, Source::Lattice);
    }

    #[test]
    fn trivial_group() {
        let a = run("C(1)");
        assert_eq!(a.psi.as_ref().unwrap().value, BigUint::one());
        assert!(a.check_meo().unwrap().verdict.holds());
        assert!(a.check_bpsi().unwrap().verdict.holds());
    }

    #[test]
    fn route_priority() {
        let a = run("Alt(14)");
        let c = a.check_bpsi().unwrap();
        assert_eq!((c.verdict.method, c.verdict.outcome), (Method::Witness, Outcome::Fails));
        let c = run("Alt(10)").check_bpsi().unwrap();
        assert_eq!((c.verdict.method, c.verdict.outcome), (Method::AltPath, Outcome::Holds));
        let c = run("Alt(7)").check_bpsi().unwrap();
        assert_eq!(
            (c.verdict.method, c.verdict.outcome),
            (Method::Exhaustive, Outcome::Holds)
        );
        let c = run("PSL(3,3)").check_bpsi().unwrap();
        assert_eq!(
            (c.verdict.method, c.verdict.outcome),
            (Method::Certificate, Outcome::Holds)
        );
        let c = run("M11").check_bpsi().unwrap();
        assert_eq!(
            (c.verdict.method, c.verdict.outcome),
            (Method::Certificate, Outcome::Holds)
        );
        let c = run("Sym(9)").check_bpsi().unwrap();
        assert_eq!((c.verdict.method, c.verdict.outcome), (Method::Witness, Outcome::Fails));
    }

    #[test]
    fn meo_checks() {
        assert!(run("M11").check_meo().unwrap().verdict.holds());
        assert_eq!(run("Alt(8)").check_meo().unwrap().verdict.outcome, Outcome::Fails);
        assert!(run("Alt(14)").check_meo().is_err());
        assert_eq!(
            run("C(2)xC(2)xC(2)").check_meo().unwrap().verdict.outcome,
            Outcome::Holds
        );
    }

    #[test]
    fn abelian_formula_m_matches_lattice() {
        let caps = Caps {
            elements: DEFAULT_ELEMENT_CAP,
            lattice: 0,
        };
        for spec in ["C(12)", "C(2)xC(9)", "C(49)", "C(30)"] {
            let s = GroupSpec::parse(spec).unwrap();
            let formula = GroupAnalysis::run(&s, &caps, GoldenData::embedded()).unwrap();
            let full = run(spec);
            assert_eq!(formula.m.map(|x| x.value), full.m.map(|x| x.value), "{spec}");
            assert_eq!(formula.m2.map(|x| x.value), full.m2.map(|x| x.value), "{spec}");
        }
    }
}
