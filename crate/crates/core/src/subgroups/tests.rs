use std::collections::BTreeSet;

use super::*;
use crate::groupcore::{enumerate_elements, materialize, GroupSpec, DEFAULT_ELEMENT_CAP};

fn group(spec: &str) -> PermGroup {
    materialize(&GroupSpec::parse(spec).unwrap(), DEFAULT_ELEMENT_CAP).unwrap()
}

fn lattice(spec: &str) -> Lattice {
    all_subgroups(&group(spec), &LatticeLimits::default()).unwrap()
}

/// Independent oracle: close the set of cyclic subgroups under pairwise
/// joins, each join computed by plain generator closure.
fn pairwise_join_oracle(g: &PermGroup) -> BTreeSet<Vec<u32>> {
    let els = g.elements().unwrap();
    let to_idx = |ps: &[Permutation]| -> Vec<u32> {
        let mut v: Vec<u32> = ps.iter().map(|p| g.index_of(p).unwrap() as u32).collect();
        v.sort();
        v
    };
    let mut all: BTreeSet<Vec<u32>> = els
        .iter()
        .map(|x| to_idx(&enumerate_elements(std::slice::from_ref(x), 1 << 20).unwrap()))
        .collect();
    loop {
        let current: Vec<Vec<u32>> = all.iter().cloned().collect();
        let mut grew = false;
        for a in &current {
            for b in &current {
                if a >= b {
                    continue;
                }
                let gens: Vec<Permutation> = a.iter().chain(b.iter()).map(|&i| els[i as usize].clone()).collect();
                let joined = to_idx(&enumerate_elements(&gens, 1 << 20).unwrap());
                grew |= all.insert(joined);
            }
        }
        if !grew {
            return all;
        }
    }
}

#[test]
fn cyclic_subgroup_counts() {
    assert_eq!(cyclic_subgroups(&group("C(6)")).unwrap().len(), 4);
    assert_eq!(cyclic_subgroups(&group("C(1)")).unwrap().len(), 1);
    // brute force over elements of Sym(3): {1}, three of order 2, one of order 3
    let s3 = group("Sym(3)");
    let distinct: BTreeSet<Vec<Permutation>> = s3
        .elements()
        .unwrap()
        .iter()
        .map(|x| enumerate_elements(std::slice::from_ref(x), 10).unwrap())
        .collect();
    assert_eq!(distinct.len(), 5);
    let cs = cyclic_subgroups(&s3).unwrap();
    assert_eq!(cs.len(), 5);
    let orders: Vec<u64> = cs.iter().map(|c| c.order).collect();
    assert_eq!(orders, vec![1, 2, 2, 2, 3]);
}

#[test]
fn subgroup_counts_match_oracle() {
    for (spec, expected) in [
        ("Alt(4)", 10),
        ("C(7)", 2),
        ("Sym(4)", 30),
        ("Alt(5)", 59),
        ("C(2)xC(2)xC(2)", 16),
    ] {
        let g = group(spec);
        let oracle = pairwise_join_oracle(&g);
        assert_eq!(oracle.len(), expected, "{spec} oracle");
        let lat = all_subgroups(&g, &LatticeLimits::default()).unwrap();
        let ours: BTreeSet<Vec<u32>> = lat.records().iter().map(|r| r.elements.clone()).collect();
        assert_eq!(ours, oracle, "{spec}");
    }
}

#[test]
fn alt4_by_subset_enumeration() {
    let g = group("Alt(4)");
    let n = g.elements().unwrap().len();
    let ar = Arith::new(g.elements().unwrap(), 100);
    let mut count = 0;
    for mask in 1u32..(1 << n) {
        let set: Vec<u32> = (0..n as u32).filter(|i| mask >> i & 1 == 1).collect();
        let closed = set.iter().all(|&a| set.iter().all(|&b| mask >> ar.mul(a, b) & 1 == 1));
        if closed && mask & 1 == 1 {
            count += 1;
        }
    }
    assert_eq!(count, 10);
    assert_eq!(lattice("Alt(4)").records().len(), 10);
}

#[test]
fn summaries() {
    let a5 = lattice("Alt(5)").summary();
    assert_eq!((a5.m, a5.m2), (Some(5), Some(6)));
    let a6 = lattice("Alt(6)").summary();
    assert_eq!((a6.m, a6.m2), (Some(6), Some(10)));
    for p in [2u64, 3, 5, 7] {
        let s = lattice(&format!("C({})", p * p)).summary();
        assert_eq!(s.maximal_count, 1);
        assert_eq!((s.m, s.m2), (Some(p), None));
    }
    let trivial = lattice("C(1)").summary();
    assert_eq!((trivial.subgroup_count, trivial.maximal_count, trivial.m), (1, 0, None));
}

#[test]
fn alt5_maximal_indices() {
    let lat = lattice("Alt(5)");
    let idx: BTreeSet<u64> = lat.maximal().map(|r| r.index).collect();
    assert_eq!(idx, BTreeSet::from([5, 6, 10]));
}

#[test]
fn largest_non_point_stabilizer() {
    let a5 = group("Alt(5)");
    let lat = all_subgroups(&a5, &LatticeLimits::default()).unwrap();
    assert_eq!(max_subgroup_order_excluding_point_stabilizer(&a5, &lat).unwrap(), 10);
    let a6 = group("Alt(6)");
    let lat = all_subgroups(&a6, &LatticeLimits::default()).unwrap();
    // index m2 = 10 gives 360 / 10
    assert_eq!(max_subgroup_order_excluding_point_stabilizer(&a6, &lat).unwrap(), 36);
}

fn audit(spec: &str) {
    let g = group(spec);
    let lat = all_subgroups(&g, &LatticeLimits::default()).unwrap();
    let n = lat.group_order();
    let ar = Arith::new(g.elements().unwrap(), 0);
    let sets: Vec<BTreeSet<u32>> = lat
        .records()
        .iter()
        .map(|r| r.elements.iter().copied().collect())
        .collect();
    for (r, set) in lat.records().iter().zip(&sets) {
        assert_eq!(n % r.order, 0, "{spec}: Lagrange");
        assert_eq!(r.order * r.index, n);
        assert!(set.contains(&0));
        for &a in set {
            assert!(set.contains(&ar.inv(a)), "{spec}: inverses");
            for &b in set {
                assert!(set.contains(&ar.mul(a, b)), "{spec}: closure");
            }
        }
    }
    for (i, r) in lat.records().iter().enumerate() {
        let proper = r.order < n;
        let contained_in_larger_proper = sets
            .iter()
            .zip(lat.records())
            .any(|(s, o)| o.order < n && o.order > r.order && sets[i].is_subset(s));
        assert_eq!(
            r.is_maximal,
            proper && !contained_in_larger_proper,
            "{spec}: maximality"
        );
    }
}

#[test]
fn closure_lagrange_and_maximality_audit() {
    for spec in ["Sym(4)", "Alt(5)", "C(12)", "C(2)xC(4)", "PSL(2,7)", "Sym(5)"] {
        audit(spec);
    }
}

#[test]
fn point_stabilizer_is_maximal() {
    for n in 5..=7u64 {
        let g = group(&format!("Alt({n})"));
        let lat = all_subgroups(&g, &LatticeLimits::default()).unwrap();
        let last = n as usize - 1;
        let stab: Vec<u32> = g
            .elements()
            .unwrap()
            .iter()
            .enumerate()
            .filter(|(_, p)| p.apply(last) == last)
            .map(|(i, _)| i as u32)
            .collect();
        let rec = &lat.records()[lat.find(&stab).expect("stabilizer is a subgroup")];
        assert_eq!(rec.index, n);
        assert!(rec.is_maximal);
        assert_eq!(lat.summary().m, Some(n));
    }
}

#[test]
fn chain_path_matches_table_path() {
    for spec in ["Sym(4)", "Alt(5)", "C(3)xC(3)", "PSL(2,7)"] {
        let g = group(spec);
        let table = all_subgroups(&g, &LatticeLimits::default()).unwrap();
        let limits = LatticeLimits {
            table_limit: 0,
            ..Default::default()
        };
        let chain = all_subgroups(&g, &limits).unwrap();
        let a: Vec<(&Vec<u32>, bool)> = table.records().iter().map(|r| (&r.elements, r.is_maximal)).collect();
        let b: Vec<(&Vec<u32>, bool)> = chain.records().iter().map(|r| (&r.elements, r.is_maximal)).collect();
        assert_eq!(a, b, "{spec}");
    }
}

#[test]
fn caps_are_enforced() {
    let g = group("Alt(7)");
    let small = LatticeLimits::with_cap(1000);
    assert!(matches!(all_subgroups(&g, &small), Err(Error::LatticeUnavailable(_))));
    let tight = LatticeLimits {
        max_subgroups: 10,
        ..Default::default()
    };
    assert!(matches!(
        all_subgroups(&group("Sym(4)"), &tight),
        Err(Error::LatticeUnavailable(_))
    ));
    let unmat = materialize(&GroupSpec::Alt(9), 10).unwrap();
    assert!(matches!(all_subgroups(&unmat, &small), Err(Error::NotMaterialized)));
}

#[test]
fn classes_partition_records() {
    let lat = lattice("Sym(4)");
    let mut seen = vec![false; lat.records().len()];
    for (ci, c) in lat.classes().iter().enumerate() {
        for &m in &c.members {
            assert!(!seen[m]);
            seen[m] = true;
            assert_eq!(lat.records()[m].class, ci);
            assert_eq!(lat.records()[m].order, c.order);
        }
    }
    assert!(seen.into_iter().all(|s| s));
    // Sym(4) has 11 conjugacy classes of subgroups
    assert_eq!(lat.classes().len(), 11);
}
