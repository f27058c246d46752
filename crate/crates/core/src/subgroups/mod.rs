//! Subgroup lattices of small materialized groups.
//!
//! Every subgroup is reached from the trivial group by repeatedly joining a
//! cyclic subgroup of prime-power order, since any group is generated by its
//! prime-power elements. The search runs over conjugacy classes: only one
//! representative per class is extended, and a new subgroup is expanded into
//! its full conjugacy class the moment it is found. For a representative `H`,
//! joins `⟨H, c⟩` and `⟨H, c^h⟩` coincide, so one cyclic subgroup per
//! `H`-orbit suffices. `H` is maximal exactly when every such join is the
//! whole group.

mod arith;

use std::collections::HashMap;

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::groupcore::schreier::generated_order;
use crate::groupcore::{PermGroup, Permutation};
use crate::util::{gcd_u128, is_prime_power};

use arith::Arith;

/// Default bound on |G| for full lattice enumeration.
pub const DEFAULT_LATTICE_CAP: u64 = 2520;

#[derive(Debug, Clone, Copy)]
pub struct LatticeLimits {
    /// Largest group order accepted.
    pub max_group_order: u64,
    /// Work budget: give up once this many subgroups have been found.
    pub max_subgroups: usize,
    /// Largest group for which a full multiplication table is built.
    pub table_limit: usize,
}

impl Default for LatticeLimits {
    fn default() -> Self {
        LatticeLimits {
            max_group_order: DEFAULT_LATTICE_CAP,
            max_subgroups: 500_000,
            table_limit: 2520,
        }
    }
}

impl LatticeLimits {
    pub fn with_cap(cap: u64) -> Self {
        LatticeLimits {
            max_group_order: cap,
            ..Default::default()
        }
    }
}

/// A subgroup stored as sorted indices into the parent's element list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubgroupRecord {
    pub elements: Vec<u32>,
    pub generators: Vec<u32>,
    pub order: u64,
    pub index: u64,
    pub is_maximal: bool,
    /// Conjugacy class, numbered in canonical order of first member.
    pub class: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubgroupClass {
    pub members: Vec<usize>,
    pub order: u64,
    pub is_maximal: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LatticeSummary {
    pub subgroup_count: u64,
    pub maximal_count: u64,
    /// Smallest index of a maximal subgroup; absent for the trivial group.
    pub m: Option<u64>,
    /// Second-smallest distinct index of a maximal subgroup.
    pub m2: Option<u64>,
}

/// Complete subgroup lattice; records are in canonical order (by order, then
/// by element indices).
#[derive(Debug, Clone)]
pub struct Lattice {
    group_order: u64,
    records: Vec<SubgroupRecord>,
    classes: Vec<SubgroupClass>,
    element_orders: Vec<u64>,
}

impl Lattice {
    pub fn group_order(&self) -> u64 {
        self.group_order
    }

    pub fn records(&self) -> &[SubgroupRecord] {
        &self.records
    }

    pub fn classes(&self) -> &[SubgroupClass] {
        &self.classes
    }

    pub fn maximal(&self) -> impl Iterator<Item = &SubgroupRecord> {
        self.records.iter().filter(|r| r.is_maximal)
    }

    pub fn proper(&self) -> impl Iterator<Item = &SubgroupRecord> {
        let n = self.group_order;
        self.records.iter().filter(move |r| r.order < n)
    }

    pub fn element_order(&self, idx: u32) -> u64 {
        self.element_orders[idx as usize]
    }

    /// ψ of a subgroup: orders are the same in the subgroup and the parent.
    pub fn psi(&self, record: &SubgroupRecord) -> u128 {
        record
            .elements
            .iter()
            .map(|&i| self.element_orders[i as usize] as u128)
            .sum()
    }

    pub fn summary(&self) -> LatticeSummary {
        let mut indices: Vec<u64> = self.maximal().map(|r| r.index).collect();
        indices.sort_unstable();
        indices.dedup();
        LatticeSummary {
            subgroup_count: self.records.len() as u64,
            maximal_count: self.maximal().count() as u64,
            m: indices.first().copied(),
            m2: indices.get(1).copied(),
        }
    }

    /// Largest order of a maximal subgroup whose index exceeds `threshold`.
    pub fn largest_maximal_order_with_index_above(&self, threshold: u64) -> Option<u64> {
        self.maximal().filter(|r| r.index > threshold).map(|r| r.order).max()
    }

    /// Index of the subgroup with exactly these (sorted) elements.
    pub fn find(&self, elements: &[u32]) -> Option<usize> {
        self.records
            .binary_search_by(|r| (r.elements.len(), r.elements.as_slice()).cmp(&(elements.len(), elements)))
            .ok()
    }
}

/// Lattice summary of an already computed lattice.
pub fn lattice_summary(lattice: &Lattice) -> LatticeSummary {
    lattice.summary()
}

/// A cyclic subgroup `⟨g⟩`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclicSubgroup {
    pub elements: Vec<u32>,
    pub generator: u32,
    pub order: u64,
    pub index: u64,
}

/// All distinct cyclic subgroups, ordered by order and then elements.
pub fn cyclic_subgroups(group: &PermGroup) -> Result<Vec<CyclicSubgroup>> {
    let elements = group.elements()?;
    let ar = Arith::new(elements, 0);
    let n = elements.len() as u64;
    let mut seen: HashMap<Vec<u32>, u32> = HashMap::new();
    for x in 0..elements.len() as u32 {
        let mut powers = ar.powers(x);
        powers.sort_unstable();
        seen.entry(powers).or_insert(x);
    }
    let mut out: Vec<CyclicSubgroup> = seen
        .into_iter()
        .map(|(elements, generator)| {
            let order = elements.len() as u64;
            CyclicSubgroup {
                elements,
                generator,
                order,
                index: n / order,
            }
        })
        .collect();
    out.sort_by(|a, b| (a.order, &a.elements).cmp(&(b.order, &b.elements)));
    Ok(out)
}

/// The complete subgroup lattice of a materialized group.
pub fn all_subgroups(group: &PermGroup, limits: &LatticeLimits) -> Result<Lattice> {
    let elements = group.elements()?;
    let n = elements.len() as u64;
    if n > limits.max_group_order {
        return Err(Error::LatticeUnavailable(format!(
            "|G| = {n} exceeds lattice cap {}",
            limits.max_group_order
        )));
    }
    let ar = Arith::new(elements, limits.table_limit);
    let g_gens: Vec<u32> = group
        .generators()
        .iter()
        .map(|g| ar.index(g))
        .filter(|&i| i != 0)
        .collect();
    let mut b = Builder::new(&ar, g_gens, group.degree(), *limits);
    b.run()?;
    b.finish()
}

struct Sub {
    elements: Vec<u32>,
    gens: Vec<u32>,
    class: usize,
}

struct Class {
    rep: usize,
    members: Vec<usize>,
    maximal: bool,
}

struct Builder<'a> {
    ar: &'a Arith<'a>,
    n: usize,
    degree: usize,
    limits: LatticeLimits,
    g_gens: Vec<u32>,
    /// For each generator g of G, the map x ↦ g⁻¹xg on element indices.
    g_conj: Vec<Vec<u32>>,
    /// Generators of the cyclic subgroups of prime-power order.
    cyclic_gens: Vec<u32>,
    /// Element → id of the cyclic subgroup it generates (prime-power elements only).
    cyclic_of: Vec<u32>,
    subs: Vec<Sub>,
    index: HashMap<Vec<u32>, usize>,
    classes: Vec<Class>,
    mark: Vec<bool>,
    in_rep: Vec<bool>,
}

const NONE: u32 = u32::MAX;

impl<'a> Builder<'a> {
    fn new(ar: &'a Arith<'a>, g_gens: Vec<u32>, degree: usize, limits: LatticeLimits) -> Self {
        let n = ar.len();
        let g_conj = g_gens
            .iter()
            .map(|&g| (0..n as u32).map(|x| ar.conj(x, g)).collect())
            .collect();
        let mut cyclic_gens = Vec::new();
        let mut cyclic_of = vec![NONE; n];
        for x in 1..n as u32 {
            let o = ar.order(x);
            if cyclic_of[x as usize] != NONE || !is_prime_power(o as u128) {
                continue;
            }
            let id = cyclic_gens.len() as u32;
            cyclic_gens.push(x);
            for (k, &y) in ar.powers(x).iter().enumerate() {
                if gcd_u128(k as u128, o as u128) == 1 {
                    cyclic_of[y as usize] = id;
                }
            }
        }
        Builder {
            ar,
            n,
            degree,
            limits,
            g_gens,
            g_conj,
            cyclic_gens,
            cyclic_of,
            subs: Vec::new(),
            index: HashMap::new(),
            classes: Vec::new(),
            mark: vec![false; n],
            in_rep: vec![false; n],
        }
    }

    fn run(&mut self) -> Result<()> {
        self.add_class(vec![0], vec![])?;
        let mut next = 0;
        while next < self.classes.len() {
            self.process(next)?;
            next += 1;
        }
        // joins that reach G are never materialized, so G itself goes in last
        let whole: Vec<u32> = (0..self.n as u32).collect();
        if !self.index.contains_key(&whole) {
            self.add_class(whole, self.g_gens.clone())?;
        }
        Ok(())
    }

    /// Registers `elements` and all its conjugates as a new class.
    fn add_class(&mut self, elements: Vec<u32>, gens: Vec<u32>) -> Result<usize> {
        let class = self.classes.len();
        let first = self.insert(elements, gens, class)?;
        let mut members = vec![first];
        let mut head = 0;
        while head < members.len() {
            let s = members[head];
            head += 1;
            for gi in 0..self.g_conj.len() {
                let map = &self.g_conj[gi];
                let mut conj: Vec<u32> = self.subs[s].elements.iter().map(|&x| map[x as usize]).collect();
                conj.sort_unstable();
                if self.index.contains_key(&conj) {
                    continue;
                }
                let gens = self.subs[s].gens.iter().map(|&x| map[x as usize]).collect();
                members.push(self.insert(conj, gens, class)?);
            }
        }
        self.classes.push(Class {
            rep: first,
            members,
            maximal: false,
        });
        Ok(class)
    }

    fn insert(&mut self, elements: Vec<u32>, gens: Vec<u32>, class: usize) -> Result<usize> {
        if self.subs.len() >= self.limits.max_subgroups {
            return Err(Error::LatticeUnavailable(format!(
                "more than {} subgroups",
                self.limits.max_subgroups
            )));
        }
        let id = self.subs.len();
        self.index.insert(elements.clone(), id);
        self.subs.push(Sub { elements, gens, class });
        Ok(id)
    }

    fn process(&mut self, class: usize) -> Result<()> {
        let rep = self.classes[class].rep;
        if self.subs[rep].elements.len() == self.n {
            return Ok(());
        }
        let h_elements = self.subs[rep].elements.clone();
        let h_gens = self.subs[rep].gens.clone();
        for &x in &h_elements {
            self.in_rep[x as usize] = true;
        }

        // H-orbits on the prime-power cyclic subgroups
        let nc = self.cyclic_gens.len();
        let mut parent: Vec<u32> = (0..nc as u32).collect();
        for &h in &h_gens {
            for i in 0..nc {
                let y = self.ar.conj(self.cyclic_gens[i], h);
                let j = self.cyclic_of[y as usize] as usize;
                union(&mut parent, i, j);
            }
        }

        let mut maximal = true;
        let mut visited = vec![false; nc];
        for i in 0..nc {
            let root = find(&mut parent, i);
            if visited[root] {
                continue;
            }
            visited[root] = true;
            let c = self.cyclic_gens[i];
            if self.in_rep[c as usize] {
                continue;
            }
            let Some((elements, gens)) = self.join(&h_elements, &h_gens, c) else {
                continue;
            };
            maximal = false;
            if !self.index.contains_key(&elements) {
                self.add_class(elements, gens)?;
            }
        }
        for &x in &h_elements {
            self.in_rep[x as usize] = false;
        }
        self.classes[class].maximal = maximal;
        Ok(())
    }

    /// `⟨H, c⟩` as (sorted elements, generators), or `None` for the whole group.
    fn join(&mut self, h_elements: &[u32], h_gens: &[u32], c: u32) -> Option<(Vec<u32>, Vec<u32>)> {
        let mut gens = h_gens.to_vec();
        gens.push(c);
        let use_chain = !self.ar.has_table();
        if use_chain {
            let perms: Vec<Permutation> = gens.iter().map(|&i| self.ar.element(i).clone()).collect();
            if generated_order(self.degree, &perms) == BigUint::from(self.n) {
                return None;
            }
        }
        // right cosets H·r, explored by right multiplication with generators
        let mut elements = h_elements.to_vec();
        for &x in h_elements {
            self.mark[x as usize] = true;
        }
        let mut reps = vec![0u32];
        let mut head = 0;
        let mut whole = false;
        'outer: while head < reps.len() {
            let r = reps[head];
            head += 1;
            for &s in &gens {
                let y = self.ar.mul(r, s);
                if self.mark[y as usize] {
                    continue;
                }
                for &h in h_elements {
                    let z = self.ar.mul(h, y);
                    self.mark[z as usize] = true;
                    elements.push(z);
                }
                reps.push(y);
                if !use_chain && elements.len() * 2 > self.n {
                    whole = true;
                    break 'outer;
                }
            }
        }
        for &x in &elements {
            self.mark[x as usize] = false;
        }
        if whole || elements.len() == self.n {
            return None;
        }
        elements.sort_unstable();
        Some((elements, gens))
    }

    fn finish(self) -> Result<Lattice> {
        let n = self.n as u64;
        // closure audit on class representatives; conjugates inherit it
        for class in &self.classes {
            let sub = &self.subs[class.rep];
            for &x in &sub.elements {
                for &s in &sub.gens {
                    let y = self.ar.mul(x, s);
                    if sub.elements.binary_search(&y).is_err() {
                        return Err(Error::Invariant("subgroup not closed".into()));
                    }
                }
            }
        }
        let mut order: Vec<usize> = (0..self.subs.len()).collect();
        order.sort_by(|&a, &b| {
            let (x, y) = (&self.subs[a].elements, &self.subs[b].elements);
            (x.len(), x).cmp(&(y.len(), y))
        });
        let mut position = vec![0usize; self.subs.len()];
        for (pos, &id) in order.iter().enumerate() {
            position[id] = pos;
        }
        let mut class_number: Vec<Option<usize>> = vec![None; self.classes.len()];
        let mut classes: Vec<SubgroupClass> = Vec::new();
        let mut records = Vec::with_capacity(order.len());
        for &id in &order {
            let sub = &self.subs[id];
            let old = sub.class;
            let cn = *class_number[old].get_or_insert_with(|| {
                let c = &self.classes[old];
                let mut members: Vec<usize> = c.members.iter().map(|&m| position[m]).collect();
                members.sort_unstable();
                classes.push(SubgroupClass {
                    members,
                    order: sub.elements.len() as u64,
                    is_maximal: c.maximal,
                });
                classes.len() - 1
            });
            let order = sub.elements.len() as u64;
            records.push(SubgroupRecord {
                elements: sub.elements.clone(),
                generators: sub.gens.clone(),
                order,
                index: n / order,
                is_maximal: self.classes[old].maximal,
                class: cn,
            });
        }
        Ok(Lattice {
            group_order: n,
            records,
            classes,
            element_orders: self.ar.orders().to_vec(),
        })
    }
}

fn find(parent: &mut [u32], mut i: usize) -> usize {
    while parent[i] as usize != i {
        parent[i] = parent[parent[i] as usize];
        i = parent[i] as usize;
    }
    i
}

fn union(parent: &mut [u32], a: usize, b: usize) {
    let (ra, rb) = (find(parent, a), find(parent, b));
    if ra != rb {
        let (lo, hi) = (ra.min(rb), ra.max(rb));
        parent[hi] = lo as u32;
    }
}

/// Largest order among maximal subgroups of `Alt(n)` (natural action) other
/// than the point stabilizers, i.e. those of index greater than `n`.
pub fn max_subgroup_order_excluding_point_stabilizer(group: &PermGroup, lattice: &Lattice) -> Result<u64> {
    let n = group.degree() as u64;
    lattice
        .largest_maximal_order_with_index_above(n)
        .ok_or_else(|| Error::Unavailable("no maximal subgroup of index above the degree".into()))
}

#[cfg(test)]
mod tests;
