//! Command implementations behind the `rescurv` binary.

use std::fmt::Write as _;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use rescurv::bounds::{validate_bounds, BoundScalar};
use rescurv::curvature::{graph_curvature, sign_classify, DEFAULT_FLOAT_EPSILON};
use rescurv::export::{matrix_to_csv, to_dot};
use rescurv::grids::{
    central_edge_resistance_sweep, exceeds_sqrt3_minus_1, grid_sign_scan, ladder, ladder_alpha, ladder_curvatures,
    rail_resistance, rung_resistance, verify_grid_theorem, DEFAULT_EXACT_GRID_CAP, DEFAULT_FLOAT_GRID_CAP,
};
use rescurv::laws::mc_effective_resistance;
use rescurv::products::{classify_boundary_interior, Position};
use rescurv::{
    effective_resistance, graph_node_curvatures, graph_resistances, load_input, Backend, ProductDescriptor, Rational,
    Scalar, Sign, WeightedGraph,
};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] rescurv::Error),
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Io(#[from] std::io::Error),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BackendArg {
    Exact,
    Float,
}

impl From<BackendArg> for Backend {
    fn from(b: BackendArg) -> Self {
        match b {
            BackendArg::Exact => Backend::Exact,
            BackendArg::Float => Backend::Float,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Dot,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Report {
    Signs,
    Values,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SweepKind {
    /// n, α_n
    Alpha,
    /// n, corner curvature of the ladder P2□Pn
    Corner,
    /// m, n, minimum boundary curvature of the m×n grid
    GridMin,
    /// n, resistance of the central edge of the n×n grid
    CentralEdge,
}

/// Effective resistance and node resistance curvature of graphs.
#[derive(Debug, Parser)]
#[command(name = "rescurv", version)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalArgs {
    #[arg(long, value_enum, default_value = "exact", global = true)]
    pub backend: BackendArg,
    #[arg(long, value_enum, default_value = "json", global = true)]
    pub format: Format,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<std::path::PathBuf>,
    #[arg(long, default_value_t = 1_000_000, global = true)]
    pub walks: u64,
    #[arg(long, default_value_t = 0, global = true)]
    pub seed: u64,
    /// Largest vertex count the exact backend accepts.
    #[arg(long, default_value_t = 256, global = true)]
    pub max_exact_n: usize,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Node curvatures of a graph file or shorthand (`P4`, `P3xP4`, `Q3`).
    Curvature { input: String },
    /// Resistance matrix, or one pair with `--pair U V`.
    Resistance {
        input: String,
        #[arg(long, num_args = 2, value_names = ["U", "V"])]
        pair: Option<Vec<usize>>,
    },
    /// Curvatures of a Cartesian product with boundary/interior classes.
    Product {
        input: String,
        #[arg(long, value_enum, default_value = "signs")]
        report: Report,
    },
    /// Sign pattern of curvature on the m×n grid (exact only).
    GridVerify { m: usize, n: usize },
    /// Closed-form resistances and curvatures of the ladder P2□Pn, checked
    /// against the spectral computation.
    Ladder { n: usize },
    /// Per-edge check of the product-edge resistance bounds.
    BoundsCheck {
        #[arg(long)]
        g1: String,
        #[arg(long)]
        g2: String,
    },
    /// Monte Carlo commute-time estimate against the exact resistance.
    McCheck { input: String, u: usize, v: usize },
    /// Tables for external plotting.
    Sweep {
        kind: SweepKind,
        #[arg(long, default_value_t = 12)]
        max: usize,
    },
}

/// Rendered output and whether every checked property held.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub output: String,
    pub verified: bool,
}

impl Outcome {
    fn ok(output: String) -> Self {
        Outcome { output, verified: true }
    }
}

fn json_text(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json values serialize");
    s.push('\n');
    s
}

fn value<S: Scalar>(x: &S) -> Value {
    if S::EXACT {
        Value::String(x.to_string())
    } else {
        serde_json::Number::from_f64(x.to_f64()).map_or(Value::Null, Value::Number)
    }
}

fn check_size(global: &GlobalArgs, n: usize) -> Result<(), CliError> {
    if global.backend == BackendArg::Exact && n > global.max_exact_n {
        return Err(CliError::Usage(format!(
            "exact backend is limited to {} vertices (graph has {n}); use --backend float or raise --max-exact-n",
            global.max_exact_n
        )));
    }
    Ok(())
}

fn sign_name(s: Sign) -> &'static str {
    match s {
        Sign::Negative => "negative",
        Sign::Zero => "zero",
        Sign::Positive => "positive",
    }
}

fn epsilon<S: Scalar>() -> f64 {
    if S::EXACT {
        0.0
    } else {
        DEFAULT_FLOAT_EPSILON
    }
}

/// Runs one parsed command.
pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let exact = cli.global.backend == BackendArg::Exact;
    match &cli.command {
        Command::Curvature { input } => {
            let pd = load_input(input)?;
            check_size(&cli.global, pd.total_n())?;
            if exact {
                curvature::<Rational>(&pd, cli.global.format)
            } else {
                curvature::<f64>(&pd, cli.global.format)
            }
        }
        Command::Resistance { input, pair } => {
            let pd = load_input(input)?;
            check_size(&cli.global, pd.total_n())?;
            let pair = pair.as_ref().map(|p| (p[0], p[1]));
            if exact {
                resistance::<Rational>(&pd.graph(), pair, cli.global.format)
            } else {
                resistance::<f64>(&pd.graph(), pair, cli.global.format)
            }
        }
        Command::Product { input, report } => {
            let pd = load_input(input)?;
            check_size(&cli.global, pd.total_n())?;
            if exact {
                product::<Rational>(&pd, *report, cli.global.format)
            } else {
                product::<f64>(&pd, *report, cli.global.format)
            }
        }
        Command::GridVerify { m, n } => grid_verify(*m, *n, &cli.global),
        Command::Ladder { n } => ladder_report(*n, cli.global.format),
        Command::BoundsCheck { g1, g2 } => {
            let g1 = load_input(g1)?.graph();
            let g2 = load_input(g2)?.graph();
            check_size(&cli.global, g1.n() * g2.n())?;
            if exact {
                bounds_check::<Rational>(&g1, &g2, cli.global.format)
            } else {
                bounds_check::<f64>(&g1, &g2, cli.global.format)
            }
        }
        Command::McCheck { input, u, v } => mc_check(input, *u, *v, &cli.global),
        Command::Sweep { kind, max } => sweep(*kind, *max, &cli.global),
    }
}

fn curvature<S: Scalar>(pd: &ProductDescriptor, format: Format) -> Result<Outcome, CliError> {
    let g = pd.graph();
    let p = graph_node_curvatures::<S>(&g)?;
    let output = match format {
        Format::Json => {
            let mut s = p.to_json().to_string();
            s.push('\n');
            s
        }
        Format::Csv => p.to_csv(),
        Format::Dot => to_dot(&g, (pd.dimension() > 1).then_some(pd), Some(&p)),
    };
    Ok(Outcome::ok(output))
}

fn resistance<S: Scalar>(g: &WeightedGraph, pair: Option<(usize, usize)>, format: Format) -> Result<Outcome, CliError> {
    if let Some((u, v)) = pair {
        let r = effective_resistance::<S>(g, u, v)?;
        let output = match format {
            Format::Json => json_text(&json!({"u": u, "v": v, "resistance": value(&r)})),
            Format::Csv => format!("u,v,resistance\n{u},{v},{r}\n"),
            Format::Dot => return Err(CliError::Usage("dot output needs a curvature command".into())),
        };
        return Ok(Outcome::ok(output));
    }
    let omega = graph_resistances::<S>(g)?;
    let output = match format {
        Format::Json => {
            let rows: Vec<Value> = omega.matrix().to_rows().iter().map(|r| r.iter().map(value).collect()).collect();
            json_text(&Value::Array(rows))
        }
        Format::Csv => matrix_to_csv(omega.matrix()),
        Format::Dot => return Err(CliError::Usage("dot output needs a curvature command".into())),
    };
    Ok(Outcome::ok(output))
}

fn product<S: Scalar>(pd: &ProductDescriptor, report: Report, format: Format) -> Result<Outcome, CliError> {
    let p = rescurv::products::product_node_curvatures::<S>(pd)?;
    let signs = sign_classify(&p, epsilon::<S>())?;
    let positions = classify_boundary_interior(pd).ok();
    let position_name = |v: usize| match positions.as_ref().map(|ps| ps[v]) {
        Some(Position::Boundary) => Value::from("boundary"),
        Some(Position::Interior) => Value::from("interior"),
        None => Value::Null,
    };
    if format == Format::Dot {
        return Ok(Outcome::ok(to_dot(&pd.graph(), Some(pd), Some(&p))));
    }
    if format == Format::Csv {
        let mut out = String::from("vertex,label,position,curvature,sign\n");
        for (v, s) in signs.iter().enumerate() {
            let pos = position_name(v);
            writeln!(out, "{v},\"{}\",{},{},{}", pd.label(v), pos.as_str().unwrap_or(""), p.get(v), sign_name(*s))
                .expect("string write");
        }
        return Ok(Outcome::ok(out));
    }
    let count = |s: Sign| signs.iter().filter(|x| **x == s).count();
    let negative: Vec<Value> = signs
        .iter()
        .enumerate()
        .filter(|(_, s)| **s == Sign::Negative)
        .map(|(v, _)| json!({"vertex": v, "label": pd.label(v).to_string(), "position": position_name(v), "curvature": value(p.get(v))}))
        .collect();
    let negative_boundary = positions.as_ref().map(|ps| {
        signs.iter().zip(ps).filter(|(s, pos)| **s == Sign::Negative && **pos == Position::Boundary).count()
    });
    let mut doc = Map::new();
    doc.insert("factor_sizes".into(), json!(pd.sizes()));
    doc.insert("n".into(), json!(pd.total_n()));
    doc.insert("graph_curvature".into(), graph_curvature(&p).as_ref().map_or(Value::Null, value));
    doc.insert("sum".into(), value(&p.sum()));
    doc.insert("negative".into(), json!(count(Sign::Negative)));
    doc.insert("zero".into(), json!(count(Sign::Zero)));
    doc.insert("positive".into(), json!(count(Sign::Positive)));
    doc.insert("negative_boundary".into(), json!(negative_boundary));
    match report {
        Report::Signs => {
            doc.insert("negative_vertices".into(), Value::Array(negative));
        }
        Report::Values => {
            let values: Map<String, Value> =
                (0..p.len()).map(|v| (pd.label(v).to_string(), value(p.get(v)))).collect();
            doc.insert("curvatures".into(), Value::Object(values));
        }
    }
    Ok(Outcome::ok(json_text(&Value::Object(doc))))
}

fn grid_verify(m: usize, n: usize, global: &GlobalArgs) -> Result<Outcome, CliError> {
    if global.backend != BackendArg::Exact {
        return Err(rescurv::Error::BackendNotExact.into());
    }
    check_size(global, m * n)?;
    let r = verify_grid_theorem(m, n, m.max(n))?;
    let argmin: Vec<String> = r.boundary_argmin.iter().map(ToString::to_string).collect();
    let holds = r.holds();
    let output = match global.format {
        Format::Csv => format!(
            "m,n,interior_all_negative,boundary_all_nonnegative,boundary_min,interior_max,holds\n{m},{n},{},{},{},{},{holds}\n",
            r.interior_all_negative,
            r.boundary_all_nonnegative,
            r.boundary_min,
            r.interior_max.as_ref().map(ToString::to_string).unwrap_or_default()
        ),
        _ => json_text(&json!({
            "m": m,
            "n": n,
            "interior_all_negative": r.interior_all_negative,
            "boundary_all_nonnegative": r.boundary_all_nonnegative,
            "boundary_min": r.boundary_min.to_string(),
            "boundary_min_float": r.boundary_min.to_f64(),
            "boundary_argmin": argmin,
            "interior_max": r.interior_max.as_ref().map(ToString::to_string),
            "holds": holds,
        })),
    };
    Ok(Outcome { output, verified: holds })
}

fn ladder_report(n: usize, format: Format) -> Result<Outcome, CliError> {
    let table = ladder_alpha(n)?;
    let closed = ladder_curvatures(n)?;
    let g = ladder(n)?;
    let spectral = graph_node_curvatures::<Rational>(&g)?;
    let mut matches = closed == spectral;
    let rungs: Vec<Rational> = (1..=n).map(|k| rung_resistance(n, k)).collect::<Result<_, _>>()?;
    let rails: Vec<Rational> = (1..n).map(|k| rail_resistance(n, k)).collect::<Result<_, _>>()?;
    for (k, r) in rungs.iter().enumerate() {
        matches &= effective_resistance::<Rational>(&g, k, n + k)? == *r;
    }
    for (k, r) in rails.iter().enumerate() {
        matches &= effective_resistance::<Rational>(&g, k, k + 1)? == *r;
    }
    let output = match format {
        Format::Csv => {
            let mut out = String::from("k,rung,rail,curvature\n");
            for k in 1..=n {
                let rail = rails.get(k - 1).map(ToString::to_string).unwrap_or_default();
                writeln!(out, "{k},{},{rail},{}", rungs[k - 1], closed.get(k - 1)).expect("string write");
            }
            out
        }
        _ => json_text(&json!({
            "n": n,
            "alpha_n": table.alpha(n).to_string(),
            "rungs": rungs.iter().map(ToString::to_string).collect::<Vec<_>>(),
            "rails": rails.iter().map(ToString::to_string).collect::<Vec<_>>(),
            "curvatures": closed.to_json(),
            "matches_spectral": matches,
        })),
    };
    Ok(Outcome { output, verified: matches })
}

fn bounds_check<S: BoundScalar>(g1: &WeightedGraph, g2: &WeightedGraph, format: Format) -> Result<Outcome, CliError> {
    let report = validate_bounds::<S>(g1, g2)?;
    let tol = S::from_rational(&rescurv::scalar::rational_from_f64(epsilon::<S>())?);
    let holds = report.all_hold(&tol);
    let output = match format {
        Format::Json => {
            let rows: Vec<Value> = report
                .rows
                .iter()
                .map(|r| {
                    json!({
                        "edge": [r.edge.0, r.edge.1],
                        "factor_edge": [r.factor_edge.0, r.factor_edge.1],
                        "v2": r.v2,
                        "d": r.d,
                        "actual": value(&r.actual),
                        "lb": value(&r.lb),
                        "ub": value(&r.ub),
                        "lb_holds": r.lb_holds(&tol),
                        "ub_holds": r.ub_holds(&tol),
                    })
                })
                .collect();
            json_text(&json!({"holds": holds, "rows": rows}))
        }
        _ => report.to_csv(),
    };
    Ok(Outcome { output, verified: holds })
}

fn mc_check(input: &str, u: usize, v: usize, global: &GlobalArgs) -> Result<Outcome, CliError> {
    let g = load_input(input)?.graph();
    let est = mc_effective_resistance(&g, u, v, global.walks, global.seed)?;
    let exact = (g.n() <= global.max_exact_n).then(|| effective_resistance::<Rational>(&g, u, v)).transpose()?;
    let exact_f = match &exact {
        Some(x) => x.to_f64(),
        None => effective_resistance::<f64>(&g, u, v)?,
    };
    let z = est.z_score(exact_f);
    let verified = z.abs() <= 3.0;
    let output = match global.format {
        Format::Csv => format!(
            "u,v,walks,seed,estimate,stderr,exact,z\n{u},{v},{},{},{},{},{},{z}\n",
            est.walks,
            global.seed,
            est.estimate,
            est.stderr,
            exact.as_ref().map_or_else(|| exact_f.to_string(), ToString::to_string)
        ),
        _ => json_text(&json!({
            "u": u,
            "v": v,
            "walks": est.walks,
            "seed": global.seed,
            "estimate": est.estimate,
            "stderr": est.stderr,
            "exact": exact.as_ref().map(ToString::to_string),
            "exact_float": exact_f,
            "z": z,
        })),
    };
    Ok(Outcome { output, verified })
}

fn sweep(kind: SweepKind, max: usize, global: &GlobalArgs) -> Result<Outcome, CliError> {
    let exact = global.backend == BackendArg::Exact;
    let mut rows: Vec<Vec<String>> = Vec::new();
    let header: &[&str] = match kind {
        SweepKind::Alpha => {
            let table = ladder_alpha(max.max(1))?;
            for (k, a) in table.values().iter().enumerate() {
                rows.push(vec![(k + 1).to_string(), a.to_string(), a.to_f64().to_string(), exceeds_sqrt3_minus_1(a).to_string()]);
            }
            &["n", "alpha", "alpha_float", "above_limit"]
        }
        SweepKind::Corner => {
            for n in 1..=max.max(1) {
                let c = ladder_curvatures(n)?.get(0).clone();
                rows.push(vec![n.to_string(), c.to_string(), c.to_f64().to_string()]);
            }
            &["n", "corner_curvature", "corner_float"]
        }
        SweepKind::GridMin => {
            let cap = if exact { DEFAULT_EXACT_GRID_CAP } else { DEFAULT_FLOAT_GRID_CAP };
            if max > cap {
                return Err(CliError::Usage(format!("grid sweep is capped at {cap} for this backend")));
            }
            for m in 3..=max {
                for n in m..=max {
                    let (min, holds) = if exact {
                        let r = grid_sign_scan::<Rational>(m, n, 0.0)?;
                        (r.boundary_min.to_string(), r.holds())
                    } else {
                        let r = grid_sign_scan::<f64>(m, n, DEFAULT_FLOAT_EPSILON)?;
                        (r.boundary_min.to_string(), r.interior_all_negative && r.boundary_all_nonnegative)
                    };
                    rows.push(vec![m.to_string(), n.to_string(), min, holds.to_string()]);
                }
            }
            &["m", "n", "boundary_min", "holds"]
        }
        SweepKind::CentralEdge => {
            if exact {
                for (n, w) in central_edge_resistance_sweep::<Rational>(max)? {
                    rows.push(vec![n.to_string(), w.to_string(), w.to_f64().to_string()]);
                }
            } else {
                for (n, w) in central_edge_resistance_sweep::<f64>(max)? {
                    rows.push(vec![n.to_string(), w.to_string(), w.to_string()]);
                }
            }
            &["n", "resistance", "resistance_float"]
        }
    };
    let output = match global.format {
        Format::Json => {
            let objs: Vec<Value> = rows
                .iter()
                .map(|r| Value::Object(header.iter().zip(r).map(|(h, x)| (h.to_string(), Value::from(x.clone()))).collect()))
                .collect();
            json_text(&Value::Array(objs))
        }
        _ => {
            let mut out = header.join(",");
            out.push('\n');
            for r in rows {
                out.push_str(&r.join(","));
                out.push('\n');
            }
            out
        }
    };
    Ok(Outcome::ok(output))
}
