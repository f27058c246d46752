//! Report model shared by the JSON and table renderings. Every integer is
//! carried as a decimal string so both renderings print the same digits.

use std::fmt::Write as _;

use bpsi_core::analysis::{Attempt, CheckOutcome, GroupAnalysis};
use bpsi_core::properties::{Evidence, PsiBound, Sourced, SubgroupWitness};
use serde::Serialize;
use serde_json::{json, Value};

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub tool: &'static str,
    pub version: &'static str,
    pub invocation: Invocation,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub groups: Vec<GroupReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub table: Option<TableReport>,
    pub exit_code: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct Invocation {
    pub command: String,
    pub args: Vec<String>,
    pub cap_elements: String,
    pub cap_lattice: String,
    pub threads: String,
    pub golden: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct Quantity {
    pub value: String,
    pub source: String,
}

impl<T: ToString> From<&Sourced<T>> for Quantity {
    fn from(s: &Sourced<T>) -> Self {
        Quantity {
            value: s.value.to_string(),
            source: s.source.as_str().to_string(),
        }
    }
}

fn quantity<T: ToString>(s: &Option<Sourced<T>>) -> Option<Quantity> {
    s.as_ref().map(Quantity::from)
}

#[derive(Debug, Clone, Serialize)]
pub struct GroupReport {
    pub spec: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub order: Option<Quantity>,
    pub psi: Option<Quantity>,
    pub meo: Option<Quantity>,
    pub exponent: Option<Quantity>,
    pub m: Option<Quantity>,
    pub m2: Option<Quantity>,
    pub subgroups: Option<String>,
    pub maximal_subgroups: Option<String>,
    pub notes: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verdict: Option<VerdictReport>,
}

impl GroupReport {
    pub fn failed(spec: String, error: String) -> Self {
        GroupReport {
            spec,
            error: Some(error),
            order: None,
            psi: None,
            meo: None,
            exponent: None,
            m: None,
            m2: None,
            subgroups: None,
            maximal_subgroups: None,
            notes: Vec::new(),
            verdict: None,
        }
    }

    pub fn from_analysis(a: &GroupAnalysis) -> Self {
        GroupReport {
            spec: a.spec.to_string(),
            error: None,
            order: quantity(&a.order),
            psi: quantity(&a.psi),
            meo: quantity(&a.meo),
            exponent: quantity(&a.exponent),
            m: quantity(&a.m),
            m2: quantity(&a.m2),
            subgroups: a.subgroup_count.map(|c| c.to_string()),
            maximal_subgroups: a.maximal_count.map(|c| c.to_string()),
            notes: a.notes.clone(),
            verdict: None,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct VerdictReport {
    pub property: String,
    pub outcome: String,
    pub method: String,
    pub evidence: Value,
    pub psi_bound: Option<Value>,
    pub attempts: Vec<AttemptReport>,
}

#[derive(Debug, Clone, Serialize)]
pub struct AttemptReport {
    pub method: String,
    pub note: String,
}

impl From<&Attempt> for AttemptReport {
    fn from(a: &Attempt) -> Self {
        AttemptReport {
            method: a.method.as_str().to_string(),
            note: a.note.clone(),
        }
    }
}

fn sourced_json<T: ToString>(s: &Sourced<T>) -> Value {
    json!({ "value": s.value.to_string(), "source": s.source.as_str() })
}

fn witness_json(w: &SubgroupWitness) -> Value {
    json!({
        "description": w.description,
        "order": w.order.to_string(),
        "psi": w.psi.to_string(),
        "generators": w.generators.iter().map(|g| g.to_string()).collect::<Vec<_>>(),
    })
}

fn psi_bound_json(b: &PsiBound) -> Value {
    json!({ "psi": b.psi.to_string(), "order": b.order.to_string(), "meo": b.meo.to_string() })
}

fn evidence_json(e: &Evidence) -> Value {
    match e {
        Evidence::MeoVsM { meo, m } => json!({
            "kind": "meo-vs-m",
            "meo": sourced_json(meo),
            "m": m.as_ref().map(sourced_json),
        }),
        Evidence::Exhaustive {
            group_order,
            proper_subgroups,
            max_proper_psi,
            witness,
        } => json!({
            "kind": "exhaustive",
            "group_order": group_order.to_string(),
            "proper_subgroups": proper_subgroups.to_string(),
            "max_proper_psi": max_proper_psi.to_string(),
            "witness": witness.as_ref().map(witness_json),
        }),
        Evidence::Certificate { group_order, meo, m } => json!({
            "kind": "certificate",
            "group_order": group_order.to_string(),
            "meo": sourced_json(meo),
            "m": m.as_ref().map(sourced_json),
        }),
        Evidence::AltPath {
            n,
            group_order,
            meo,
            m2,
            psi_point_stabilizer,
        } => json!({
            "kind": "alt-path",
            "n": n.to_string(),
            "group_order": group_order.to_string(),
            "meo": sourced_json(meo),
            "m2": sourced_json(m2),
            "psi_point_stabilizer": sourced_json(psi_point_stabilizer),
        }),
        Evidence::Witness {
            group_order,
            witness,
            candidates,
        } => json!({
            "kind": "witness",
            "group_order": group_order.to_string(),
            "candidates": candidates.to_string(),
            "witness": witness.as_ref().map(witness_json),
        }),
    }
}

impl From<&CheckOutcome> for VerdictReport {
    fn from(c: &CheckOutcome) -> Self {
        let v = &c.verdict;
        VerdictReport {
            property: v.property.as_str().to_string(),
            outcome: v.outcome.as_str().to_string(),
            method: v.method.as_str().to_string(),
            evidence: evidence_json(&v.evidence),
            psi_bound: v.psi_bound.as_ref().map(psi_bound_json),
            attempts: c.attempts.iter().map(AttemptReport::from).collect(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct TableReport {
    pub name: String,
    /// Statistic names, one per rendered row.
    pub statistics: Vec<String>,
    /// One entry per group, in display order.
    pub rows: Vec<TableRow>,
    pub mismatches: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct TableRow {
    pub group: String,
    pub cells: Vec<Cell>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Cell {
    pub statistic: String,
    pub value: Option<String>,
    pub source: Option<String>,
    pub reference: Option<String>,
    /// `match`, `mismatch`, `computed` (nothing to compare against),
    /// `reference-only` (value taken from the data file) or `unavailable`.
    pub status: String,
}

impl Cell {
    pub fn compare(statistic: &str, value: Option<Quantity>, reference: Option<String>) -> Self {
        let status = match (&value, &reference) {
            (None, None) => "unavailable",
            (None, Some(_)) => "unavailable",
            (Some(v), _) if v.source == "lookup" => "reference-only",
            (Some(_), None) => "computed",
            (Some(v), Some(r)) if &v.value == r => "match",
            _ => "mismatch",
        };
        Cell {
            statistic: statistic.to_string(),
            source: value.as_ref().map(|v| v.source.clone()),
            value: value.map(|v| v.value),
            reference,
            status: status.to_string(),
        }
    }

    fn render(&self) -> String {
        match (&self.value, self.status.as_str()) {
            (None, _) => "-".to_string(),
            (Some(v), "mismatch") => format!("{v}!={}", self.reference.as_deref().unwrap_or("-")),
            (Some(v), "reference-only") => format!("{v}*"),
            (Some(v), _) => v.clone(),
        }
    }
}

fn aligned(rows: &[Vec<String>]) -> String {
    let cols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> = (0..cols)
        .map(|c| {
            rows.iter()
                .filter_map(|r| r.get(c))
                .map(|s| s.chars().count())
                .max()
                .unwrap_or(0)
        })
        .collect();
    let mut out = String::new();
    for r in rows {
        let line: Vec<String> = r
            .iter()
            .enumerate()
            .map(|(i, s)| format!("{s:>w$}", w = widths[i]))
            .collect();
        out.push_str(line.join("  ").trim_end());
        out.push('\n');
    }
    out
}

fn render_quantity(name: &str, q: &Option<Quantity>) -> Vec<String> {
    match q {
        Some(q) => vec![name.to_string(), q.value.clone(), format!("({})", q.source)],
        None => vec![name.to_string(), "-".to_string(), String::new()],
    }
}

fn render_json_inline(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".to_string(),
        Value::Array(items) => items.iter().map(render_json_inline).collect::<Vec<_>>().join(", "),
        Value::Object(map) => {
            if let (Some(Value::String(value)), Some(Value::String(source))) = (map.get("value"), map.get("source")) {
                return format!("{value} ({source})");
            }
            map.iter()
                .map(|(k, v)| match v {
                    Value::Object(_) => format!("{k}={{{}}}", render_json_inline(v)),
                    _ => format!("{k}={}", render_json_inline(v)),
                })
                .collect::<Vec<_>>()
                .join(", ")
        }
        other => other.to_string(),
    }
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    pub fn to_table(&self) -> String {
        let mut out = String::new();
        let inv = &self.invocation;
        let _ = writeln!(
            out,
            "bpsi {} {} [cap-elements {}, cap-lattice {}, threads {}, golden {}]",
            inv.command,
            inv.args.join(" "),
            inv.cap_elements,
            inv.cap_lattice,
            inv.threads,
            inv.golden
        );
        for g in &self.groups {
            out.push('\n');
            let _ = writeln!(out, "{}", g.spec);
            if let Some(e) = &g.error {
                let _ = writeln!(out, "  error: {e}");
                continue;
            }
            let mut rows = vec![
                render_quantity("order", &g.order),
                render_quantity("psi", &g.psi),
                render_quantity("meo", &g.meo),
                render_quantity("exponent", &g.exponent),
                render_quantity("m", &g.m),
                render_quantity("m2", &g.m2),
            ];
            if let Some(s) = &g.subgroups {
                rows.push(vec!["subgroups".into(), s.clone(), String::new()]);
            }
            if let Some(s) = &g.maximal_subgroups {
                rows.push(vec!["maximal".into(), s.clone(), String::new()]);
            }
            for line in aligned(&rows).lines() {
                let _ = writeln!(out, "  {line}");
            }
            if let Some(v) = &g.verdict {
                let _ = writeln!(out, "  verdict: {} {} ({})", v.property, v.outcome, v.method);
                let _ = writeln!(out, "    evidence: {}", render_json_inline(&v.evidence));
                if let Some(b) = &v.psi_bound {
                    let _ = writeln!(out, "    psi bound: {}", render_json_inline(b));
                }
                for a in &v.attempts {
                    let _ = writeln!(out, "    skipped {}: {}", a.method, a.note);
                }
            }
            for n in &g.notes {
                let _ = writeln!(out, "  note: {n}");
            }
        }
        if let Some(t) = &self.table {
            out.push('\n');
            let _ = writeln!(out, "table {}", t.name);
            let mut rows = vec![std::iter::once("")
                .chain(t.rows.iter().map(|r| r.group.as_str()))
                .map(String::from)
                .collect::<Vec<_>>()];
            for (i, stat) in t.statistics.iter().enumerate() {
                let mut row = vec![stat.clone()];
                row.extend(
                    t.rows
                        .iter()
                        .map(|r| r.cells.get(i).map_or("-".to_string(), Cell::render)),
                );
                rows.push(row);
            }
            out.push_str(&aligned(&rows));
            out.push_str("(* value read from the data file, a!=b computed a against reference b)\n");
            if t.mismatches.is_empty() {
                out.push_str("all comparable cells match\n");
            } else {
                for m in &t.mismatches {
                    let _ = writeln!(out, "MISMATCH {m}");
                }
            }
        }
        let _ = writeln!(out, "\nexit code {}", self.exit_code);
        out
    }
}
