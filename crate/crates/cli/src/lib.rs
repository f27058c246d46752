//! The `bpsi` command line.

pub mod report;
pub mod tables;

use std::ffi::OsString;
use std::path::PathBuf;

use anyhow::Context;
use bpsi_core::analysis::{Caps, GroupAnalysis};
use bpsi_core::families::GoldenData;
use bpsi_core::groupcore::{GroupSpec, DEFAULT_ELEMENT_CAP};
use bpsi_core::properties::Outcome;
use bpsi_core::subgroups::DEFAULT_LATTICE_CAP;
use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use report::{GroupReport, Invocation, Report, VerdictReport};
use tables::TableName;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILS: i32 = 1;
pub const EXIT_INCONCLUSIVE: i32 = 2;
pub const EXIT_ERROR: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "bpsi",
    version,
    about = "Element-order statistics and B_psi / meo-group checks"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalArgs {
    /// Largest group whose elements are enumerated
    #[arg(long, global = true, default_value_t = DEFAULT_ELEMENT_CAP)]
    pub cap_elements: u64,
    /// Largest group whose subgroup lattice is built (20160 enables Alt(8))
    #[arg(long, global = true, default_value_t = DEFAULT_LATTICE_CAP)]
    pub cap_lattice: u64,
    /// Worker threads; 0 picks one per core
    #[arg(long, global = true, default_value_t = 0)]
    pub threads: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    pub format: Format,
    /// Reference data file replacing the embedded one
    #[arg(long, global = true)]
    pub golden: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Order, psi, meo, exponent, m and m2 of each group
    Stats {
        #[arg(required = true)]
        specs: Vec<String>,
    },
    /// Decide a property for each group
    Check {
        #[command(flatten)]
        property: PropertyFlag,
        #[arg(required = true)]
        specs: Vec<String>,
    },
    /// Recompute a reference table and compare it with the data file
    Table {
        #[arg(value_enum)]
        name: TableName,
    },
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct PropertyFlag {
    /// every proper subgroup H has psi(H) < |G|
    #[arg(long)]
    pub bpsi: bool,
    /// meo(G) <= m(G)
    #[arg(long)]
    pub meo: bool,
}

/// Rendered output and process exit code.
#[derive(Debug, Clone)]
pub struct RunOutput {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

fn analyze(spec: &str, caps: &Caps, golden: &GoldenData) -> anyhow::Result<GroupAnalysis> {
    let parsed = GroupSpec::parse(spec).with_context(|| format!("group {spec:?}"))?;
    GroupAnalysis::run(&parsed, caps, golden).with_context(|| format!("group {spec:?}"))
}

fn stats(specs: &[String], caps: &Caps, golden: &GoldenData) -> (Vec<GroupReport>, i32) {
    let groups: Vec<GroupReport> = specs
        .par_iter()
        .map(|s| match analyze(s, caps, golden) {
            Ok(a) => GroupReport::from_analysis(&a),
            Err(e) => GroupReport::failed(s.clone(), format!("{e:#}")),
        })
        .collect();
    let code = if groups.iter().any(|g| g.error.is_some()) {
        EXIT_ERROR
    } else {
        EXIT_OK
    };
    (groups, code)
}

fn check(specs: &[String], bpsi: bool, caps: &Caps, golden: &GoldenData) -> (Vec<GroupReport>, i32) {
    let results: Vec<(GroupReport, Option<Outcome>)> = specs
        .par_iter()
        .map(|s| {
            let run = || -> anyhow::Result<(GroupReport, Outcome)> {
                let a = analyze(s, caps, golden)?;
                let outcome =
                    if bpsi { a.check_bpsi() } else { a.check_meo() }.with_context(|| format!("group {s:?}"))?;
                let mut g = GroupReport::from_analysis(&a);
                g.verdict = Some(VerdictReport::from(&outcome));
                Ok((g, outcome.verdict.outcome))
            };
            match run() {
                Ok((g, o)) => (g, Some(o)),
                Err(e) => (GroupReport::failed(s.clone(), format!("{e:#}")), None),
            }
        })
        .collect();
    let code = exit_code_for(results.iter().map(|(_, o)| *o));
    (results.into_iter().map(|(g, _)| g).collect(), code)
}

/// Errors dominate, then failures, then inconclusive verdicts.
pub fn exit_code_for(outcomes: impl IntoIterator<Item = Option<Outcome>>) -> i32 {
    let mut code = EXIT_OK;
    for o in outcomes {
        let c = match o {
            None => EXIT_ERROR,
            Some(Outcome::Fails) => EXIT_FAILS,
            Some(Outcome::Inconclusive) => EXIT_INCONCLUSIVE,
            Some(Outcome::Holds) => EXIT_OK,
        };
        code = match (code, c) {
            (EXIT_ERROR, _) | (_, EXIT_ERROR) => EXIT_ERROR,
            (EXIT_FAILS, _) | (_, EXIT_FAILS) => EXIT_FAILS,
            (EXIT_INCONCLUSIVE, _) | (_, EXIT_INCONCLUSIVE) => EXIT_INCONCLUSIVE,
            _ => EXIT_OK,
        };
    }
    code
}

fn load_golden(path: &Option<PathBuf>) -> anyhow::Result<GoldenData> {
    match path {
        None => Ok(GoldenData::embedded().clone()),
        Some(p) => {
            let text = std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
            GoldenData::parse(&text).with_context(|| format!("parsing {}", p.display()))
        }
    }
}

fn execute(cli: &Cli) -> anyhow::Result<(Report, i32)> {
    let g = &cli.global;
    let caps = Caps {
        elements: g.cap_elements,
        lattice: g.cap_lattice,
    };
    let golden = load_golden(&g.golden)?;
    let pool = rayon::ThreadPoolBuilder::new().num_threads(g.threads).build()?;
    let (command, args) = match &cli.command {
        Command::Stats { specs } => ("stats", specs.clone()),
        Command::Check { property, specs } => {
            let flag = if property.bpsi { "--bpsi" } else { "--meo" };
            (
                "check",
                std::iter::once(flag.to_string()).chain(specs.iter().cloned()).collect(),
            )
        }
        Command::Table { name } => ("table", vec![name.as_str().to_string()]),
    };
    let (groups, table, code) = pool.install(|| -> anyhow::Result<_> {
        Ok(match &cli.command {
            Command::Stats { specs } => {
                let (groups, code) = stats(specs, &caps, &golden);
                (groups, None, code)
            }
            Command::Check { property, specs } => {
                let (groups, code) = check(specs, property.bpsi, &caps, &golden);
                (groups, None, code)
            }
            Command::Table { name } => {
                let t = tables::build(*name, &caps, &golden)?;
                let code = if t.mismatches.is_empty() { EXIT_OK } else { EXIT_FAILS };
                (Vec::new(), Some(t), code)
            }
        })
    })?;
    let report = Report {
        tool: "bpsi",
        version: env!("CARGO_PKG_VERSION"),
        invocation: Invocation {
            command: command.to_string(),
            args,
            cap_elements: g.cap_elements.to_string(),
            cap_lattice: g.cap_lattice.to_string(),
            threads: g.threads.to_string(),
            golden: g
                .golden
                .as_ref()
                .map_or_else(|| "embedded".to_string(), |p| p.display().to_string()),
        },
        groups,
        table,
        exit_code: code.to_string(),
    };
    Ok((report, code))
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I) -> RunOutput
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return if e.use_stderr() {
                RunOutput {
                    stdout: String::new(),
                    stderr: rendered,
                    code: EXIT_ERROR,
                }
            } else {
                RunOutput {
                    stdout: rendered,
                    stderr: String::new(),
                    code: EXIT_OK,
                }
            };
        }
    };
    match execute(&cli) {
        Ok((report, code)) => {
            let stdout = match cli.global.format {
                Format::Json => report.to_json(),
                Format::Table => report.to_table(),
            };
            let stderr = report
                .groups
                .iter()
                .filter_map(|g| g.error.as_ref().map(|e| format!("error: {e}\n")))
                .chain(
                    report
                        .table
                        .iter()
                        .flat_map(|t| t.mismatches.iter().map(|m| format!("mismatch: {m}\n"))),
                )
                .collect();
            RunOutput { stdout, stderr, code }
        }
        Err(e) => RunOutput {
            stdout: String::new(),
            stderr: format!("error: {e:#}\n"),
            code: EXIT_ERROR,
        },
    }
}
