//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fail.

use std::process::Command;
use std::sync::OnceLock;
use std::time::{Duration, Instant};

use bpsi_core::families::{m_psl, sporadic_stats, GoldenData, Statistic};
use bpsi_core::groupcore::{materialize, GroupSpec, PermGroup, Permutation, NAMED_GROUPS};
use bpsi_core::orderstats::{meo_alternating, meo_bruteforce, psi_alternating, psi_bruteforce, stats_alternating};
use bpsi_core::properties::{certify_bpsi, is_bpsi_exhaustive, meo_verdict, Outcome, PsiBound, Source, Sourced};
use bpsi_core::subgroups::{all_subgroups, Lattice, LatticeLimits};
use bpsi_core::util::{is_prime, prime_power};
use num_bigint::BigUint;
use rayon::prelude::*;

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn group(spec: &str) -> PermGroup {
    materialize(&GroupSpec::parse(spec).unwrap(), 1 << 20).unwrap()
}

/// The flagged run: the full lattice of PSL(4,2), order 20160.
fn psl42_lattice() -> &'static (PermGroup, Lattice) {
    static CELL: OnceLock<(PermGroup, Lattice)> = OnceLock::new();
    CELL.get_or_init(|| {
        let g = group("PSL(4,2)");
        let lat = all_subgroups(&g, &LatticeLimits::with_cap(20160)).unwrap();
        (g, lat)
    })
}

struct CorpusEntry {
    label: String,
    group: PermGroup,
    lattice: Lattice,
    abelian_factors: Option<Vec<u64>>,
}

/// Partitions of `e`, largest part first.
fn partitions(e: u32, max: u32) -> Vec<Vec<u32>> {
    if e == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for k in (1..=max.min(e)).rev() {
        for mut rest in partitions(e - k, k) {
            rest.insert(0, k);
            out.push(rest);
        }
    }
    out
}

/// Every abelian group of order `n`, as prime-power cyclic factors.
fn abelian_groups(n: u64) -> Vec<Vec<u64>> {
    let mut primes = Vec::new();
    let mut rest = n;
    let mut p = 2;
    while rest > 1 {
        if rest.is_multiple_of(p) {
            let mut e = 0;
            while rest.is_multiple_of(p) {
                rest /= p;
                e += 1;
            }
            primes.push((p, e));
        }
        p += 1;
    }
    let mut out = vec![vec![]];
    for (p, e) in primes {
        let mut next = Vec::new();
        for prefix in &out {
            for part in partitions(e, e) {
                let mut f = prefix.clone();
                f.extend(part.iter().map(|&k| p.pow(k)));
                next.push(f);
            }
        }
        out = next;
    }
    out
}

fn abelian_spec(factors: &[u64]) -> String {
    if factors.len() == 1 {
        format!("C({})", factors[0])
    } else {
        factors.iter().map(|f| format!("C({f})")).collect::<Vec<_>>().join("x")
    }
}

fn dihedral(n: u32) -> PermGroup {
    let rotation = Permutation::from_images((0..n).map(|i| (i + 1) % n).collect()).unwrap();
    let reflection = Permutation::from_images((0..n).map(|i| (n - i) % n).collect()).unwrap();
    let mut g = PermGroup::new(n as usize, vec![rotation, reflection]).unwrap();
    g.materialize(1 << 20).unwrap();
    g
}

fn corpus() -> &'static Vec<CorpusEntry> {
    static CELL: OnceLock<Vec<CorpusEntry>> = OnceLock::new();
    CELL.get_or_init(|| {
        let mut items: Vec<(String, Option<Vec<u64>>)> = Vec::new();
        items.push(("C(1)".into(), Some(vec![])));
        for n in 2..=200u64 {
            for f in abelian_groups(n) {
                items.push((abelian_spec(&f), Some(f)));
            }
        }
        // cyclic groups of composite order beyond the prime-power factors
        for n in 2..=200u64 {
            if prime_power(n).is_none() {
                items.push((format!("C({n})"), None));
            }
        }
        for n in 1..=6 {
            items.push((format!("Sym({n})"), None));
        }
        for n in 1..=7 {
            items.push((format!("Alt({n})"), None));
        }
        for q in [4, 5, 7, 8, 9, 11] {
            items.push((format!("PSL(2,{q})"), None));
        }
        let mut entries: Vec<CorpusEntry> = items
            .into_par_iter()
            .map(|(label, abelian_factors)| {
                let group = group(&label);
                let lattice = all_subgroups(&group, &LatticeLimits::default()).unwrap();
                CorpusEntry {
                    label,
                    group,
                    lattice,
                    abelian_factors,
                }
            })
            .collect();
        let dihedral: Vec<CorpusEntry> = (3..=100u32)
            .into_par_iter()
            .map(|n| {
                let group = dihedral(n);
                let lattice = all_subgroups(&group, &LatticeLimits::default()).unwrap();
                CorpusEntry {
                    label: format!("D({})", 2 * n),
                    group,
                    lattice,
                    abelian_factors: None,
                }
            })
            .collect();
        entries.extend(dihedral);
        entries
    })
}

const ALT_PSI: [u64; 11] = [
    211,
    1411,
    12601,
    137047,
    1516831,
    18111751,
    223179001,
    2973194071,
    46287964867,
    835826439631,
    15722804528341,
];
const ALT_ORDER: [u64; 11] = [
    60,
    360,
    2520,
    20160,
    181440,
    1814400,
    19958400,
    239500800,
    3113510400,
    43589145600,
    653837184000,
];
const ALT_MEO: [u128; 9] = [5, 5, 7, 15, 15, 21, 21, 35, 35];
const ALT_M: [u128; 9] = [5, 6, 7, 8, 9, 10, 11, 12, 13];
const ALT_M2: [u128; 9] = [6, 10, 15, 15, 36, 45, 55, 66, 78];

fn criterion_1() -> Check {
    let start = Instant::now();
    for (i, n) in (5..=15u64).enumerate() {
        let psi = psi_alternating(n).map_err(|e| e.to_string())?;
        ensure(
            psi == BigUint::from(ALT_PSI[i]),
            format!("psi(Alt({n})) = {psi}, expected {}", ALT_PSI[i]),
        )?;
        let order = stats_alternating(n).map_err(|e| e.to_string())?.order;
        ensure(order == BigUint::from(ALT_ORDER[i]), format!("|Alt({n})| = {order}"))?;
    }
    let took = start.elapsed();
    ensure(took < Duration::from_secs(5), format!("took {took:?}"))?;
    Ok(format!("psi(Alt(n)) for n=5..15 exact in {took:.2?}"))
}

fn criterion_2() -> Check {
    for (i, n) in (5..=13u64).enumerate() {
        let meo = meo_alternating(n).map_err(|e| e.to_string())?;
        ensure(meo == ALT_MEO[i], format!("meo(Alt({n})) = {meo}"))?;
    }
    for (i, n) in (5..=7u64).enumerate() {
        let lat = all_subgroups(&group(&format!("Alt({n})")), &LatticeLimits::default()).map_err(|e| e.to_string())?;
        let s = lat.summary();
        let got = (s.m.map(u128::from), s.m2.map(u128::from));
        ensure(
            got == (Some(ALT_M[i]), Some(ALT_M2[i])),
            format!("Alt({n}) lattice gives {got:?}"),
        )?;
    }
    let golden = GoldenData::embedded();
    for (i, n) in (8..=13u64).enumerate().map(|(i, n)| (i + 3, n)) {
        let name = format!("Alt({n})");
        let got = (golden.value(&name, Statistic::M), golden.value(&name, Statistic::M2));
        ensure(
            got == (Some(ALT_M[i]), Some(ALT_M2[i])),
            format!("{name} golden gives {got:?}"),
        )?;
    }
    // Alt(8) cross-check through the flagged PSL(4,2) lattice
    let s = psl42_lattice().1.summary();
    ensure(
        (s.m, s.m2) == (Some(8), Some(15)),
        format!("PSL(4,2) lattice gives {:?}", (s.m, s.m2)),
    )?;
    Ok("meo n=5..13, m/m2 from lattices n=5..7 (and 8 via PSL(4,2)), golden n=8..13".into())
}

fn criterion_3() -> Check {
    let start = Instant::now();
    for n in 3..=9u64 {
        let g = group(&format!("Alt({n})"));
        let psi = psi_bruteforce(&g).map_err(|e| e.to_string())?;
        let meo = meo_bruteforce(&g).map_err(|e| e.to_string())?;
        ensure(
            BigUint::from(psi) == psi_alternating(n).unwrap(),
            format!("psi mismatch at n={n}"),
        )?;
        ensure(meo == meo_alternating(n).unwrap(), format!("meo mismatch at n={n}"))?;
    }
    let took = start.elapsed();
    ensure(took < Duration::from_secs(120), format!("took {took:?}"))?;
    Ok(format!("cycle-type and brute force agree for n=3..9 in {took:.2?}"))
}

fn criterion_4() -> Check {
    let cases = [
        ((2u32, 5u64), 60usize, 5u128),
        ((2, 7), 168, 7),
        ((2, 9), 360, 5),
        ((2, 11), 660, 11),
        ((4, 2), 20160, 15),
    ];
    for ((n, q), order, meo) in cases {
        let g = group(&format!("PSL({n},{q})"));
        let els = g.elements().map_err(|e| e.to_string())?;
        ensure(els.len() == order, format!("|PSL({n},{q})| = {}", els.len()))?;
        let got = meo_bruteforce(&g).map_err(|e| e.to_string())?;
        ensure(got == meo, format!("meo(PSL({n},{q})) = {got}"))?;
        let m = if (n, q) == (4, 2) {
            psl42_lattice().1.summary().m
        } else {
            all_subgroups(&g, &LatticeLimits::default())
                .map_err(|e| e.to_string())?
                .summary()
                .m
        };
        let expected = if (n, q) == (4, 2) { 8 } else { m_psl(n, q).unwrap() };
        ensure(m.map(u128::from) == Some(expected), format!("m(PSL({n},{q})) = {m:?}"))?;
    }
    Ok("orders, meo and lattice m for PSL(2,5|7|9|11) and PSL(4,2)".into())
}

fn criterion_5() -> Check {
    let lat = &psl42_lattice().1;
    // subgroups of index 8 are the Alt(7) copies; everything else has index > 8
    let index8: Vec<_> = lat.maximal().filter(|r| r.index == 8).collect();
    ensure(
        !index8.is_empty() && index8.iter().all(|r| r.order == 2520),
        "index-8 maximal subgroups should have order 2520",
    )?;
    let largest = lat
        .largest_maximal_order_with_index_above(8)
        .ok_or("no other maximal subgroup")?;
    ensure(largest == 1344, format!("largest other maximal order = {largest}"))?;
    let meo = meo_bruteforce(&psl42_lattice().0).map_err(|e| e.to_string())?;
    ensure(largest as u128 * meo == 20160, format!("{largest} * {meo} != 20160"))?;
    let psi7 = psi_alternating(7).unwrap();
    ensure(
        psi7 == BigUint::from(12601u32) && psi7 < BigUint::from(20160u32),
        "psi(Alt(7))",
    )?;
    Ok(format!(
        "largest other maximal order {largest}, {largest}*{meo} = 20160, psi(Alt(7)) = {psi7} < 20160"
    ))
}

fn criterion_6() -> Check {
    let mut detail = Vec::new();
    for (n, psi, order) in [
        (14u64, "46287964867", "43589145600"),
        (15, "835826439631", "653837184000"),
    ] {
        let out = Command::new(env!("CARGO_BIN_EXE_bpsi"))
            .args(["check", "--bpsi", &format!("Alt({n})"), "--format", "json"])
            .output()
            .map_err(|e| e.to_string())?;
        ensure(
            out.status.code() == Some(1),
            format!("Alt({n}) exit {:?}", out.status.code()),
        )?;
        let v: serde_json::Value = serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())?;
        let verdict = &v["groups"][0]["verdict"];
        ensure(
            verdict["outcome"] == "fails",
            format!("Alt({n}) outcome {}", verdict["outcome"]),
        )?;
        ensure(
            verdict["evidence"]["witness"]["psi"] == psi,
            format!("Alt({n}) witness psi {}", verdict["evidence"]["witness"]["psi"]),
        )?;
        ensure(verdict["evidence"]["group_order"] == order, "group order")?;
        ensure(
            psi.parse::<u128>().unwrap() >= order.parse::<u128>().unwrap(),
            "witness inequality",
        )?;
        detail.push(format!("Alt({n}): {psi} >= {order}"));
    }
    Ok(detail.join("; "))
}

fn criterion_7() -> Check {
    let c = corpus();
    let mut certified = 0;
    for e in c {
        let exhaustive = is_bpsi_exhaustive(&e.group, &e.lattice).map_err(|x| x.to_string())?;
        let meo = meo_bruteforce(&e.group).map_err(|x| x.to_string())?;
        let m = e.lattice.summary().m.map(|m| Sourced::new(m as u128, Source::Lattice));
        let cert = certify_bpsi(e.lattice.group_order().into(), Sourced::new(meo, Source::BruteForce), m);
        if cert.outcome == Outcome::Holds {
            certified += 1;
            ensure(
                exhaustive.outcome == Outcome::Holds,
                format!("{} certified but not B_psi", e.label),
            )?;
        }
    }
    Ok(format!("{} groups, {certified} certified, no contradiction", c.len()))
}

fn is_elementary(factors: &[u64]) -> bool {
    !factors.is_empty() && factors.iter().all(|&f| f == factors[0] && is_prime(f))
}

fn criterion_8() -> Check {
    let mut count = 0;
    for e in corpus() {
        let Some(f) = &e.abelian_factors else { continue };
        if f.is_empty() {
            continue;
        }
        count += 1;
        let bpsi = is_bpsi_exhaustive(&e.group, &e.lattice)
            .map_err(|x| x.to_string())?
            .holds();
        let cyclic_p2 = f.len() == 1 && prime_power(f[0]).is_some_and(|(_, a)| a == 2);
        ensure(
            bpsi == (cyclic_p2 || is_elementary(f)),
            format!("{}: B_psi = {bpsi}", e.label),
        )?;
        let meo = meo_bruteforce(&e.group).map_err(|x| x.to_string())?;
        let m = e.lattice.summary().m.map(|m| Sourced::new(m as u128, Source::Lattice));
        let meo_group = meo_verdict(Sourced::new(meo, Source::BruteForce), m).holds();
        ensure(
            meo_group == is_elementary(f),
            format!("{}: meo-group = {meo_group}", e.label),
        )?;
    }
    Ok(format!("{count} abelian groups of order 2..200 classified"))
}

fn criterion_9() -> Check {
    let mut count = 0;
    for e in corpus() {
        let n = e.lattice.group_order();
        if n == 1 {
            continue;
        }
        count += 1;
        let psi = psi_bruteforce(&e.group).map_err(|x| x.to_string())?;
        let meo = meo_bruteforce(&e.group).map_err(|x| x.to_string())?;
        ensure(psi < n as u128 * meo, format!("{}: psi {psi} >= {n}*{meo}", e.label))?;
        PsiBound::new(psi.into(), n.into(), meo).map_err(|x| x.to_string())?;
    }
    Ok(format!("psi(G) < |G|*meo(G) for {count} nontrivial groups"))
}

fn criterion_10() -> Check {
    let expected: [(&str, u128, u128); 12] = [
        ("M11", 11, 11),
        ("M12", 11, 12),
        ("M22", 11, 22),
        ("M23", 23, 23),
        ("M24", 23, 24),
        ("HS", 20, 100),
        ("PSU(3,3)", 12, 28),
        ("PSU(3,5)", 10, 50),
        ("PSU(4,3)", 12, 112),
        ("PSp(6,2)", 15, 28),
        ("PSp(8,2)", 30, 120),
        ("PSp(4,3)", 12, 27),
    ];
    ensure(NAMED_GROUPS.len() == expected.len(), "named group count")?;
    for (name, meo, m) in expected {
        let (a, b) = sporadic_stats(name).map_err(|e| e.to_string())?;
        ensure(
            (a.value, b.value) == (meo, m),
            format!("{name}: ({}, {})", a.value, b.value),
        )?;
        ensure(a.value <= b.value, format!("{name}: meo > m"))?;
    }
    Ok("twelve (meo, m) pairs exact, all meo <= m".into())
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("alternating psi table n=5..15", criterion_1),
        ("alternating meo/m/m2 rows", criterion_2),
        ("cycle-type vs brute-force oracle", criterion_3),
        ("PSL constructions", criterion_4),
        ("PSL(4,2) maximal-subgroup argument", criterion_5),
        ("Alt(14) and Alt(15) counterexamples", criterion_6),
        ("certificate soundness over corpus", criterion_7),
        ("abelian classifications", criterion_8),
        ("psi bound sweep", criterion_9),
        ("exception-list (meo, m) data", criterion_10),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
        let took = start.elapsed();
        match result {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail} [{took:.2?}]", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {why} [{took:.2?}]", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
