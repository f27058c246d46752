//! Recomputation of the reference tables, cell by cell, against the data file.

use bpsi_core::analysis::{Caps, GroupAnalysis};
use bpsi_core::families::{m_psl, meo_pgl_bound, sporadic_stats_in, GoldenData, Statistic};
use bpsi_core::groupcore::{GroupSpec, NAMED_GROUPS};
use bpsi_core::properties::{Source, Sourced};
use clap::ValueEnum;
use rayon::prelude::*;

use crate::report::{Cell, Quantity, TableReport, TableRow};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TableName {
    AltSmall,
    AltLarge,
    Sporadic,
    PslM,
}

impl TableName {
    pub fn as_str(self) -> &'static str {
        match self {
            TableName::AltSmall => "alt-small",
            TableName::AltLarge => "alt-large",
            TableName::Sporadic => "sporadic",
            TableName::PslM => "psl-m",
        }
    }
}

pub const PSL_ROWS: [(u32, u64); 12] = [
    (2, 4),
    (2, 5),
    (2, 7),
    (2, 8),
    (2, 9),
    (2, 11),
    (2, 13),
    (2, 16),
    (2, 17),
    (3, 2),
    (3, 3),
    (4, 2),
];

fn reference(golden: &GoldenData, name: &str, stat: Statistic) -> Option<String> {
    golden.value(name, stat).map(|v| v.to_string())
}

fn alt_row(n: u64, caps: &Caps, golden: &GoldenData) -> anyhow::Result<TableRow> {
    let a = GroupAnalysis::run(&GroupSpec::Alt(n), caps, golden)?;
    let name = a.spec.to_string();
    let q = |s: &Option<Sourced<_>>| s.as_ref().map(Quantity::from);
    let cells = vec![
        Cell::compare(
            "meo",
            a.meo.as_ref().map(Quantity::from),
            reference(golden, &name, Statistic::Meo),
        ),
        Cell::compare(
            "m",
            a.m.as_ref().map(Quantity::from),
            reference(golden, &name, Statistic::M),
        ),
        Cell::compare(
            "m2",
            a.m2.as_ref().map(Quantity::from),
            reference(golden, &name, Statistic::M2),
        ),
        Cell::compare("psi", q(&a.psi), reference(golden, &name, Statistic::Psi)),
        Cell::compare("order", q(&a.order), reference(golden, &name, Statistic::Order)),
    ];
    Ok(TableRow { group: name, cells })
}

fn sporadic_row(name: &str, golden: &GoldenData) -> anyhow::Result<TableRow> {
    let (meo, m) = sporadic_stats_in(golden, name)?;
    let lookup = |v: u128| Quantity {
        value: v.to_string(),
        source: Source::Lookup.as_str().to_string(),
    };
    let holds = meo.value <= m.value;
    let mut cells = vec![
        Cell::compare("meo", Some(lookup(meo.value)), reference(golden, name, Statistic::Meo)),
        Cell::compare("m", Some(lookup(m.value)), reference(golden, name, Statistic::M)),
        Cell::compare(
            "order",
            golden.value(name, Statistic::Order).map(lookup),
            reference(golden, name, Statistic::Order),
        ),
    ];
    cells.push(Cell {
        statistic: "meo<=m".into(),
        value: Some(if holds { "yes" } else { "no" }.into()),
        source: None,
        reference: Some("yes".into()),
        status: if holds { "match" } else { "mismatch" }.into(),
    });
    Ok(TableRow {
        group: name.to_string(),
        cells,
    })
}

fn psl_row(n: u32, q: u64, caps: &Caps, golden: &GoldenData) -> anyhow::Result<TableRow> {
    let spec = GroupSpec::parse(&format!("PSL({n},{q})"))?;
    let name = spec.to_string();
    let a = GroupAnalysis::run(&spec, caps, golden)?;
    let formula = m_psl(n, q)?;
    let bound = meo_pgl_bound(n, q)?;
    let formula_q = Quantity {
        value: formula.to_string(),
        source: Source::Formula.as_str().to_string(),
    };
    let lattice_m = a.m.as_ref().filter(|m| m.source == Source::Lattice).map(Quantity::from);
    let meo = a.meo.as_ref().map(Quantity::from);
    let meo_ok = a.meo.as_ref().map(|m| m.value <= bound);
    let cells = vec![
        Cell::compare("m", Some(formula_q), reference(golden, &name, Statistic::M)),
        Cell::compare("m-lattice", lattice_m, Some(formula.to_string())),
        Cell::compare("meo", meo, reference(golden, &name, Statistic::Meo)),
        Cell {
            statistic: "meo-pgl".into(),
            value: Some(bound.to_string()),
            source: Some(Source::Formula.as_str().into()),
            reference: None,
            status: match meo_ok {
                Some(false) => "mismatch",
                _ => "computed",
            }
            .into(),
        },
        Cell::compare("order", a.order.as_ref().map(Quantity::from), None),
    ];
    Ok(TableRow { group: name, cells })
}

pub fn build(name: TableName, caps: &Caps, golden: &GoldenData) -> anyhow::Result<TableReport> {
    let (statistics, rows): (Vec<&str>, anyhow::Result<Vec<TableRow>>) = match name {
        TableName::AltSmall => (
            vec!["meo", "m", "m2", "psi", "order"],
            (5..=11u64).into_par_iter().map(|n| alt_row(n, caps, golden)).collect(),
        ),
        TableName::AltLarge => (
            vec!["meo", "m", "m2", "psi", "order"],
            (12..=15u64).into_par_iter().map(|n| alt_row(n, caps, golden)).collect(),
        ),
        TableName::Sporadic => (
            vec!["meo", "m", "order", "meo<=m"],
            NAMED_GROUPS.par_iter().map(|n| sporadic_row(n, golden)).collect(),
        ),
        TableName::PslM => (
            vec!["m", "m-lattice", "meo", "meo-pgl", "order"],
            PSL_ROWS.par_iter().map(|&(n, q)| psl_row(n, q, caps, golden)).collect(),
        ),
    };
    let rows = rows?;
    let mismatches = rows
        .iter()
        .flat_map(|r| {
            r.cells.iter().filter(|c| c.status == "mismatch").map(move |c| {
                format!(
                    "{} {}: computed {} vs {}",
                    r.group,
                    c.statistic,
                    c.value.as_deref().unwrap_or("-"),
                    c.reference.as_deref().unwrap_or("bound")
                )
            })
        })
        .collect();
    Ok(TableReport {
        name: name.as_str().to_string(),
        statistics: statistics.into_iter().map(String::from).collect(),
        rows,
        mismatches,
    })
}
