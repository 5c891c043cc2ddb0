//! Command-line front end. [`run`] is pure apart from reading input files,
//! so it can be driven directly from tests.

pub mod input;
mod repro;

use crate::bounds::{
    gap_witness_with_budget, ip_optimize, lp_ip_sweep, lp_optimize, IpResult, LpResult, Sense, StandardFormProgram,
    DEFAULT_GAP_BUDGET,
};
use crate::compressed::{is_compressed, FacetLevelProfile};
use crate::cutpoly::cut_classify;
use crate::error::Error;
use crate::exact::{format_rational, Rational};
use crate::margins::{margins_compressed, Verdict};
use crate::polytope::{FacetIneq, LatticePolytope};
use crate::triangulate::{is_unimodular, PointConfiguration};
use clap::{Parser, Subcommand, ValueEnum};
use input::InputError;
use num_bigint::BigInt;
use serde_json::{json, Value};

/// Exit code, standard output and standard error of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliOutput {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Parser, Debug)]
#[command(name = "polycomp", version, about = "Compressed lattice polytopes, cut polytopes, marginal polytopes and cell bounds")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Tsv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Facet-level certificate for a polytope.
    Certify {
        #[arg(long)]
        polytope: String,
    },
    /// Pulling triangulation of the lattice points of a polytope.
    Triangulate {
        #[arg(long)]
        polytope: String,
        /// 0-based point indices pulled first; the rest follow in order.
        #[arg(long)]
        order: Option<String>,
    },
    /// Compressedness of a cut polytope from graph minors and induced cycles.
    CutClassify {
        #[arg(long)]
        graph: String,
    },
    /// Compressedness of a hierarchical model's marginal polytope.
    MarginClassify {
        #[arg(long)]
        model: String,
    },
    /// LP relaxation and integer optimum of one cell.
    Bounds {
        #[arg(long)]
        matrix: String,
        /// Right-hand side, comma separated.
        #[arg(long)]
        b: String,
        /// 1-based column index.
        #[arg(long)]
        cell: usize,
        /// Minimize the cell instead of maximizing it.
        #[arg(long)]
        min: bool,
    },
    /// Right-hand side separating the LP and IP optima.
    GapWitness {
        #[arg(long)]
        matrix: String,
        #[arg(long, default_value_t = DEFAULT_GAP_BUDGET)]
        budget: usize,
    },
    /// Compare LP and IP optima over all small right-hand sides.
    Sweep {
        #[arg(long)]
        matrix: String,
        #[arg(long, default_value_t = 4)]
        budget: usize,
        /// 1-based cells to test, comma separated (default all).
        #[arg(long)]
        cells: Option<String>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Recompute the reference examples and print a pass/fail table.
    Repro {
        #[arg(long)]
        all: bool,
        /// Run only checks whose name contains this string.
        #[arg(long)]
        only: Option<String>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
}

enum Failure {
    Input(String),
    Compute(Error),
}

impl From<InputError> for Failure {
    fn from(e: InputError) -> Self {
        Failure::Input(e.0)
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Compute(e)
    }
}

/// Result of a command: the JSON (or text) body and whether the verdict was
/// negative.
struct Report {
    body: String,
    negative: bool,
}

fn json_report(v: Value, negative: bool) -> Report {
    Report {
        body: serde_json::to_string_pretty(&v).expect("serializable") + "\n",
        negative,
    }
}

pub fn run<I, T>(argv: I) -> CliOutput
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                CliOutput {
                    code: 2,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                CliOutput {
                    code: 0,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    match dispatch(cli.command) {
        Ok(r) => CliOutput {
            code: i32::from(r.negative),
            stdout: r.body,
            stderr: String::new(),
        },
        Err(Failure::Input(msg)) => CliOutput {
            code: 2,
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
        },
        Err(Failure::Compute(e)) => CliOutput {
            code: 2,
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

fn dispatch(cmd: Command) -> Result<Report, Failure> {
    match cmd {
        Command::Certify { polytope } => certify(&polytope),
        Command::Triangulate { polytope, order } => triangulate(&polytope, order.as_deref()),
        Command::CutClassify { graph } => {
            let g = input::graph(&input::read_json(&graph)?)?;
            let c = cut_classify(&g);
            Ok(json_report(
                json!({
                    "compressed": c.compressed,
                    "k5_minor": c.k5_minor,
                    "max_induced_cycle": c.max_induced_cycle,
                }),
                !c.compressed,
            ))
        }
        Command::MarginClassify { model } => {
            let (delta, d) = input::model(&input::read_json(&model)?)?;
            let c = margins_compressed(&delta, &d)?;
            Ok(json_report(
                json!({ "compressed": c.verdict.as_str(), "rule": c.rule }),
                c.verdict == Verdict::False,
            ))
        }
        Command::Bounds { matrix, b, cell, min } => bounds(&matrix, &b, cell, min),
        Command::GapWitness { matrix, budget } => {
            let a = input::matrix(&input::read_json(&matrix)?)?;
            let w = gap_witness_with_budget(&a, budget)?;
            let body = match w {
                None => json!({ "witness": Value::Null }),
                Some(w) => json!({
                    "witness": {
                        "facet": facet_json(&w.facet),
                        "b": ints(&w.b),
                        "cell": w.cell + 1,
                        "lp_value": format_rational(&w.lp_value),
                        "ip_value": w.ip_value.to_string(),
                        "v": w.v.as_deref().map(ints),
                    }
                }),
            };
            Ok(json_report(body, false))
        }
        Command::Sweep {
            matrix,
            budget,
            cells,
            format,
        } => sweep(&matrix, budget, cells.as_deref(), format),
        Command::Repro { all, only, format } => {
            if !all && only.is_none() {
                return Err(Failure::Input("repro needs --all or --only NAME".into()));
            }
            let results = repro::run_checks(only.as_deref());
            if results.is_empty() {
                return Err(Failure::Input("no check matches --only".into()));
            }
            let failed = results.iter().filter(|r| !r.pass).count();
            let body = match format {
                Format::Json => {
                    let checks: Vec<Value> = results
                        .iter()
                        .map(|r| json!({ "name": r.name, "pass": r.pass, "detail": r.detail }))
                        .collect();
                    serde_json::to_string_pretty(&json!({
                        "checks": checks,
                        "passed": results.len() - failed,
                        "failed": failed,
                    }))
                    .expect("serializable")
                        + "\n"
                }
                Format::Tsv => {
                    let mut s = String::from("name\tstatus\tdetail\n");
                    for r in &results {
                        s += &format!("{}\t{}\t{}\n", r.name, if r.pass { "PASS" } else { "FAIL" }, r.detail);
                    }
                    s
                }
            };
            Ok(Report {
                body,
                negative: failed > 0,
            })
        }
    }
}

fn ints(v: &[BigInt]) -> Value {
    Value::Array(v.iter().map(|x| Value::String(x.to_string())).collect())
}

fn facet_json(f: &FacetIneq) -> Value {
    json!({ "normal": ints(&f.normal), "offset": f.offset.to_string() })
}

fn profile_json(p: &FacetLevelProfile) -> Value {
    json!({
        "facet": facet_json(&p.facet),
        "levels": ints(&p.levels),
        "lattice_levels": ints(&p.lattice_levels()),
        "lattice_step": p.lattice_step.to_string(),
        "witnesses": p.witnesses.iter().map(|w| ints(w)).collect::<Vec<_>>(),
    })
}

fn load_polytope(path: &str) -> Result<LatticePolytope, Failure> {
    let p = input::polytope(&input::read_json(path)?)?;
    Ok(LatticePolytope::new(&p.points, p.mode)?)
}

fn certify(path: &str) -> Result<Report, Failure> {
    let p = load_polytope(path)?;
    let cert = is_compressed(&p)?;
    let violation = cert.violation.as_ref().map(|v| {
        json!({
            "facet_index": v.facet_index,
            "facet": facet_json(&v.facet),
            "high": v.high.to_string(),
            "low": v.low.to_string(),
            "high_witness": ints(&v.high_witness),
            "low_witness": ints(&v.low_witness),
        })
    });
    Ok(json_report(
        json!({
            "verdict": cert.verdict,
            "dim": p.dim(),
            "facets": p.facets().len(),
            "profiles": cert.profiles.iter().map(profile_json).collect::<Vec<_>>(),
            "violation": violation,
        }),
        !cert.verdict,
    ))
}

fn triangulate(path: &str, order: Option<&str>) -> Result<Report, Failure> {
    let p = load_polytope(path)?;
    let config = PointConfiguration::lattice_points_of(&p)?;
    let mut full = match order {
        Some(s) => input::index_list(s, "order")?,
        None => Vec::new(),
    };
    if let Some(&bad) = full.iter().find(|&&i| i >= config.len()) {
        return Err(Failure::Input(format!(
            "order: index {bad} out of range for {} points",
            config.len()
        )));
    }
    let mut seen = vec![false; config.len()];
    for &i in &full {
        if std::mem::replace(&mut seen[i], true) {
            return Err(Failure::Input(format!("order: index {i} repeated")));
        }
    }
    full.extend((0..config.len()).filter(|&i| !seen[i]));
    let t = config.pulling_triangulation(&full)?;
    let volumes = t
        .simplices
        .iter()
        .map(|s| config.cell_volume(s))
        .collect::<crate::Result<Vec<_>>>()?;
    let (unimodular, _) = is_unimodular(&t, &config)?;
    Ok(json_report(
        json!({
            "points": config.points().iter().map(|q| ints(q)).collect::<Vec<_>>(),
            "order": full,
            "simplices": t.simplices,
            "volumes": ints(&volumes),
            "unimodular": unimodular,
        }),
        false,
    ))
}

fn bounds(path: &str, b: &str, cell: usize, min: bool) -> Result<Report, Failure> {
    let a = input::matrix(&input::read_json(path)?)?;
    let b = input::integer_list(b, "b")?;
    if cell == 0 {
        return Err(Failure::Input("cell: columns are numbered from 1".into()));
    }
    let prog = StandardFormProgram::new(a, b, cell - 1)?;
    let sense = if min { Sense::Min } else { Sense::Max };
    let lp = lp_optimize(&prog, sense);
    let ip = ip_optimize(&prog, sense)?;
    let (status, ip_value, ip_point) = match &ip {
        IpResult::Optimal { value, x } => ("optimal", Value::String(value.to_string()), ints(x)),
        IpResult::IntegerInfeasible => ("integer-infeasible", Value::Null, Value::Null),
        IpResult::LpInfeasible => ("lp-infeasible", Value::Null, Value::Null),
    };
    let (lp_value, lp_point) = match &lp {
        LpResult::Optimal { value, x } => (Value::String(format_rational(value)), rationals(x)),
        LpResult::Infeasible => (Value::Null, Value::Null),
    };
    Ok(json_report(
        json!({
            "sense": if min { "min" } else { "max" },
            "cell": cell,
            "status": status,
            "lp": lp_value,
            "ip": ip_value,
            "lp_point": lp_point,
            "ip_point": ip_point,
        }),
        false,
    ))
}

fn rationals(v: &[Rational]) -> Value {
    Value::Array(v.iter().map(|x| Value::String(format_rational(x))).collect())
}

fn sweep(path: &str, budget: usize, cells: Option<&str>, format: Format) -> Result<Report, Failure> {
    let a = input::matrix(&input::read_json(path)?)?;
    let cells = match cells {
        None => None,
        Some(s) => {
            let list = input::index_list(s, "cells")?;
            if list.contains(&0) {
                return Err(Failure::Input("cells: columns are numbered from 1".into()));
            }
            Some(list.into_iter().map(|c| c - 1).collect::<Vec<_>>())
        }
    };
    let r = lp_ip_sweep(&a, budget, cells.as_deref())?;
    let body = match format {
        Format::Json => {
            let gaps: Vec<Value> = r
                .gaps
                .iter()
                .map(|g| {
                    json!({
                        "b": ints(&g.b),
                        "cell": g.cell + 1,
                        "lp": format_rational(&g.lp),
                        "ip": g.ip.to_string(),
                    })
                })
                .collect();
            serde_json::to_string_pretty(&json!({
                "budget": r.budget,
                "cells": r.cells.iter().map(|c| c + 1).collect::<Vec<_>>(),
                "rhs_checked": r.rhs_checked,
                "holds": r.holds(),
                "gaps": gaps,
            }))
            .expect("serializable")
                + "\n"
        }
        Format::Tsv => {
            let mut s = String::from("b\tcell\tlp\tip\n");
            for g in &r.gaps {
                let b: Vec<String> = g.b.iter().map(|x| x.to_string()).collect();
                s += &format!("{}\t{}\t{}\t{}\n", b.join(","), g.cell + 1, format_rational(&g.lp), g.ip);
            }
            s
        }
    };
    Ok(Report {
        body,
        negative: !r.holds(),
    })
}
