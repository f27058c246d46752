//! Deterministic Schreier–Sims over the base `0, 1, ..., degree-1`.
//!
//! Used to predict group orders before enumerating elements and to decide
//! quickly whether a set of permutations generates a whole group.

use std::collections::HashMap;

use num_bigint::BigUint;
use num_traits::One;

use crate::groupcore::perm::Permutation;

#[derive(Default)]
struct Level {
    /// Strong generators introduced at this level; they fix every earlier base point.
    gens: Vec<Permutation>,
    /// Coset representatives keyed by the image of this level's base point.
    transversal: HashMap<usize, Permutation>,
    /// Insertion order of `transversal`, for deterministic iteration.
    orbit: Vec<usize>,
}

enum Task {
    Update(usize, Permutation),
    Sift(usize, Permutation),
}

pub struct StabilizerChain {
    degree: usize,
    levels: Vec<Level>,
}

impl StabilizerChain {
    pub fn new<'a>(degree: usize, gens: impl IntoIterator<Item = &'a Permutation>) -> Self {
        let mut levels: Vec<Level> = (0..degree).map(|_| Level::default()).collect();
        for (k, level) in levels.iter_mut().enumerate() {
            level.transversal.insert(k, Permutation::identity(degree));
            level.orbit.push(k);
        }
        let mut chain = StabilizerChain { degree, levels };
        for g in gens {
            assert_eq!(g.degree(), degree, "generator degree");
            chain.run(Task::Sift(0, g.clone()));
        }
        chain
    }

    fn run(&mut self, first: Task) {
        let mut work = vec![first];
        while let Some(task) = work.pop() {
            match task {
                Task::Sift(k, g) => {
                    if let Some((k, residue)) = self.sift_from(k, g) {
                        self.add_generator(k, residue, &mut work);
                    }
                }
                Task::Update(k, g) => {
                    let x = g.apply(k);
                    match self.levels[k].transversal.get(&x) {
                        Some(u) => {
                            let h = u.inverse().compose_unchecked(&g);
                            work.push(Task::Sift(k + 1, h));
                        }
                        None => {
                            self.levels[k].transversal.insert(x, g.clone());
                            self.levels[k].orbit.push(x);
                            for j in k..self.degree {
                                for s in &self.levels[j].gens {
                                    work.push(Task::Update(k, s.compose_unchecked(&g)));
                                }
                            }
                        }
                    }
                }
            }
        }
    }

    fn add_generator(&mut self, k: usize, g: Permutation, work: &mut Vec<Task>) {
        self.levels[k].gens.push(g.clone());
        for i in 0..=k {
            for &x in &self.levels[i].orbit {
                let u = &self.levels[i].transversal[&x];
                work.push(Task::Update(i, g.compose_unchecked(u)));
            }
        }
    }

    /// Sifts `g` from level `k`; `None` when it reduces to the identity,
    /// otherwise the level where it got stuck and the residue there.
    fn sift_from(&self, mut k: usize, mut g: Permutation) -> Option<(usize, Permutation)> {
        while k < self.degree {
            if g.is_identity() {
                return None;
            }
            let x = g.apply(k);
            match self.levels[k].transversal.get(&x) {
                Some(u) => {
                    g = u.inverse().compose_unchecked(&g);
                    k += 1;
                }
                None => return Some((k, g)),
            }
        }
        None
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        g.degree() == self.degree && self.sift_from(0, g.clone()).is_none()
    }

    pub fn order(&self) -> BigUint {
        self.levels.iter().fold(BigUint::one(), |acc, l| acc * l.orbit.len())
    }
}

/// Order of the group generated by `gens` (all of one degree).
pub fn generated_order(degree: usize, gens: &[Permutation]) -> BigUint {
    StabilizerChain::new(degree, gens).order()
}
