use std::collections::HashSet;

use num_bigint::BigUint;
use num_traits::One;

use crate::error::{Error, Result};
use crate::gfmatrix::{self, Field};
use crate::groupcore::perm::Permutation;
use crate::groupcore::schreier::generated_order;
use crate::groupcore::spec::GroupSpec;
use crate::util::factorial;

/// Default cap on the number of elements enumerated by closure.
pub const DEFAULT_ELEMENT_CAP: u64 = 1_000_000;

/// A permutation group given by generators, optionally with its full element
/// list materialized in lexicographic order.
#[derive(Debug, Clone)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    elements: Option<Vec<Permutation>>,
    order: Option<BigUint>,
}

impl PermGroup {
    pub fn new(degree: usize, generators: Vec<Permutation>) -> Result<Self> {
        if degree == 0 {
            return Err(Error::InvalidPermutation("degree must be positive".into()));
        }
        let generators = if generators.is_empty() {
            vec![Permutation::identity(degree)]
        } else {
            generators
        };
        for g in &generators {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch {
                    left: degree,
                    right: g.degree(),
                });
            }
        }
        Ok(PermGroup {
            degree,
            generators,
            elements: None,
            order: None,
        })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn is_materialized(&self) -> bool {
        self.elements.is_some()
    }

    /// Sorted element list; errors unless materialized.
    pub fn elements(&self) -> Result<&[Permutation]> {
        self.elements.as_deref().ok_or(Error::NotMaterialized)
    }

    /// Exact order, via Schreier–Sims when not yet known.
    pub fn order(&mut self) -> BigUint {
        if self.order.is_none() {
            self.order = Some(generated_order(self.degree, &self.generators));
        }
        self.order.clone().unwrap()
    }

    pub fn known_order(&self) -> Option<&BigUint> {
        self.order.as_ref()
    }

    /// Position of `g` in the canonical element order.
    pub fn index_of(&self, g: &Permutation) -> Option<usize> {
        self.elements.as_ref()?.binary_search(g).ok()
    }

    /// Enumerates all elements unless the order exceeds `cap`, in which case
    /// the group is left generators-only.
    pub fn materialize(&mut self, cap: u64) -> Result<()> {
        if self.elements.is_some() {
            return Ok(());
        }
        let order = self.order();
        if order > BigUint::from(cap) {
            return Ok(());
        }
        let elements = enumerate_elements(&self.generators, cap)?;
        debug_assert_eq!(BigUint::from(elements.len()), order);
        self.elements = Some(elements);
        Ok(())
    }

    pub(crate) fn with_known_order(mut self, order: BigUint) -> Self {
        self.order = Some(order);
        self
    }
}

/// Closure of `generators` under right multiplication, sorted
/// lexicographically.
pub fn enumerate_elements(generators: &[Permutation], cap: u64) -> Result<Vec<Permutation>> {
    let Some(first) = generators.first() else {
        return Err(Error::Semantic("empty generator set".into()));
    };
    let degree = first.degree();
    if let Some(g) = generators.iter().find(|g| g.degree() != degree) {
        return Err(Error::DegreeMismatch {
            left: degree,
            right: g.degree(),
        });
    }
    let identity = Permutation::identity(degree);
    let mut seen: HashSet<Permutation> = HashSet::new();
    seen.insert(identity.clone());
    let mut queue = vec![identity];
    let mut head = 0;
    while head < queue.len() {
        let x = queue[head].clone();
        head += 1;
        for s in generators {
            let y = x.compose_unchecked(s);
            if !seen.contains(&y) {
                if queue.len() as u64 >= cap {
                    return Err(Error::CapExceeded {
                        what: "element enumeration".into(),
                        cap: cap as u128,
                    });
                }
                seen.insert(y.clone());
                queue.push(y);
            }
        }
    }
    queue.sort_unstable();
    Ok(queue)
}

fn cycle_on(degree: usize, points: impl IntoIterator<Item = u32>) -> Result<Permutation> {
    let cycle: Vec<u32> = points.into_iter().collect();
    if cycle.len() < 2 {
        return Ok(Permutation::identity(degree));
    }
    Permutation::from_cycles(degree, &[cycle])
}

/// Canonical generators for every materializable spec.
pub fn canonical_generators(spec: &GroupSpec) -> Result<PermGroup> {
    spec.validate()?;
    match spec {
        GroupSpec::Cyclic(n) => {
            let n = small_degree(*n)?;
            PermGroup::new(n, vec![cycle_on(n, 1..=n as u32)?])
        }
        GroupSpec::CyclicProduct(ns) => {
            let degree = ns.iter().try_fold(0usize, |acc, &n| Ok(acc + small_degree(n)?))?;
            let mut gens = Vec::new();
            let mut offset = 0u32;
            for &n in ns {
                gens.push(cycle_on(degree, offset + 1..=offset + n as u32)?);
                offset += n as u32;
            }
            PermGroup::new(degree, gens)
        }
        GroupSpec::Sym(n) => {
            let n = small_degree(*n)?;
            let gens = vec![cycle_on(n, 1..=2.min(n as u32))?, cycle_on(n, 1..=n as u32)?];
            PermGroup::new(n, gens)
        }
        GroupSpec::Alt(n) => {
            let n = small_degree(*n)?;
            if n < 3 {
                return PermGroup::new(n, vec![]);
            }
            let long = if n % 2 == 1 {
                cycle_on(n, 1..=n as u32)?
            } else {
                cycle_on(n, 2..=n as u32)?
            };
            PermGroup::new(n, vec![cycle_on(n, 1..=3)?, long])
        }
        GroupSpec::Psl(lp) => {
            let field = Field::new(lp.p, lp.a)?;
            gfmatrix::check_projective_bounds(lp.n, lp.q)?;
            let gens = gfmatrix::sl_generators(lp.n as usize, &field);
            let group = gfmatrix::projective_action(&gens, &field)?;
            Ok(group.with_known_order(gfmatrix::psl_order(lp.n, lp.q)))
        }
        GroupSpec::Pgl(lp) => {
            let field = Field::new(lp.p, lp.a)?;
            gfmatrix::check_projective_bounds(lp.n, lp.q)?;
            let gens = gfmatrix::gl_generators(lp.n as usize, &field);
            let group = gfmatrix::projective_action(&gens, &field)?;
            Ok(group.with_known_order(gfmatrix::pgl_order(lp.n, lp.q)))
        }
        GroupSpec::Perm(gens) => PermGroup::new(gens[0].degree(), gens.clone()),
        GroupSpec::Named(name) => Err(Error::Semantic(format!(
            "{name} is lookup-only and cannot be materialized"
        ))),
    }
}

/// Order predicted from the family formula, without building anything.
pub fn predicted_order(spec: &GroupSpec) -> Option<BigUint> {
    match spec {
        GroupSpec::Cyclic(n) => Some(BigUint::from(*n)),
        GroupSpec::CyclicProduct(ns) => Some(ns.iter().fold(BigUint::one(), |a, &n| a * n)),
        GroupSpec::Sym(n) => Some(factorial(*n)),
        GroupSpec::Alt(n) if *n >= 2 => Some(factorial(*n) / 2u32),
        GroupSpec::Alt(_) => Some(BigUint::one()),
        GroupSpec::Psl(lp) => Some(gfmatrix::psl_order(lp.n, lp.q)),
        GroupSpec::Pgl(lp) => Some(gfmatrix::pgl_order(lp.n, lp.q)),
        GroupSpec::Perm(gens) => Some(generated_order(gens[0].degree(), gens)),
        GroupSpec::Named(_) => None,
    }
}

/// Builds the canonical permutation group for `spec` and enumerates its
/// elements when the order is at most `cap`; otherwise the group is returned
/// generators-only.
pub fn materialize(spec: &GroupSpec, cap: u64) -> Result<PermGroup> {
    let mut group = canonical_generators(spec)?;
    if let Some(order) = predicted_order(spec) {
        group = group.with_known_order(order);
    }
    group.materialize(cap)?;
    Ok(group)
}

fn small_degree(n: u64) -> Result<usize> {
    // Larger degrees are only ever handled through cycle types.
    const MAX_DEGREE: u64 = 100_000;
    if n > MAX_DEGREE {
        return Err(Error::CapExceeded {
            what: format!("degree {n}"),
            cap: MAX_DEGREE as u128,
        });
    }
    Ok(n as usize)
}
