//! Command-line front end: every library operation behind reproducible,
//! machine-readable subcommands.
//!
//! Output goes to stdout as JSON (default) or CSV where tabular; every run
//! also carries a manifest (command, parameters, seed, version, duration) so
//! results can be reproduced byte for byte, timing aside. Diagnostics go to
//! stderr. Exit codes: 0 success, 1 usage or domain error, 2 budget
//! exceeded.

use std::fmt::Write as _;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use serde::Serialize;
use serde_json::json;

use pebbling::numeric::rational_to_f64;
use pebbling::*;

const DEFAULT_BUDGET: u64 = DEFAULT_STATE_BUDGET;

#[derive(Parser, Serialize)]
#[command(name = "pebbling", version, about = "q-pebbling on d-dimensional grids: solvers, sampling, counting, thresholds")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
enum Command {
    /// Decide solvability of a configuration (one target or the whole grid)
    Solve(SolveArgs),
    /// Brute-force pebbling number of a grid
    Pnum(PnumArgs),
    /// Draw a uniformly random configuration of k pebbles
    Sample(SampleArgs),
    /// Exact solvability probability, or an exact pin-event probability
    ProbExact(ProbExactArgs),
    /// Monte Carlo estimate of the solvability probability
    Mc(McArgs),
    /// Bracket the half-probability pebble count by bisection
    Phalf(PhalfArgs),
    /// Exact counting helpers
    #[command(subcommand)]
    Count(CountCmd),
    /// Partitions of q^t into powers of q, with the printed asymptotic
    Mahler(MahlerArgs),
    /// Closed-form threshold shapes
    #[command(subcommand)]
    Formula(FormulaCmd),
    /// Iterated product-inequality table for hypercube doublings
    Graham(GrahamArgs),
}

#[derive(Args, Serialize, Clone)]
struct GridArgs {
    /// Side lengths, e.g. 5 or 4x4x2
    #[arg(long)]
    shape: String,
    /// Per-axis move costs, e.g. 2 or 2,2,3
    #[arg(long)]
    q: String,
}

#[derive(Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Method {
    Exact,
    Greedy,
    Criteria,
}

#[derive(Args, Serialize)]
struct SolveArgs {
    /// Side lengths, e.g. 5 or 4x4x2 (not needed with --config)
    #[arg(long)]
    shape: Option<String>,
    /// Per-axis move costs, e.g. 2 or 2,2,3 (not needed with --config)
    #[arg(long)]
    q: Option<String>,
    /// Configuration file (JSON with shape, q, counts)
    #[arg(long, conflicts_with = "counts")]
    config: Option<String>,
    /// Comma-separated pebble counts in row-major order
    #[arg(long)]
    counts: Option<String>,
    /// Target vertex coordinates, e.g. 1 or 2,3; omit to check every vertex
    #[arg(long)]
    target: Option<String>,
    #[arg(long, value_enum, default_value = "exact")]
    method: Method,
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Args, Serialize)]
struct PnumArgs {
    #[command(flatten)]
    grid: GridArgs,
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Args, Serialize)]
struct SampleArgs {
    #[command(flatten)]
    grid: GridArgs,
    /// Number of pebbles
    #[arg(long)]
    k: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Args, Serialize)]
struct ProbExactArgs {
    #[command(flatten)]
    grid: GridArgs,
    #[arg(long)]
    k: u64,
    /// Pin a vertex to an exact count, e.g. --pin 1,2=3 (repeatable);
    /// without pins the solvability probability is computed
    #[arg(long)]
    pin: Vec<String>,
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Args, Serialize)]
struct McArgs {
    #[command(flatten)]
    grid: GridArgs,
    #[arg(long)]
    k: u64,
    #[arg(long, default_value_t = 10_000)]
    trials: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    #[arg(long, default_value_t = 1)]
    threads: usize,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Args, Serialize)]
struct PhalfArgs {
    #[command(flatten)]
    grid: GridArgs,
    #[arg(long)]
    k_min: u64,
    #[arg(long)]
    k_max: u64,
    /// Trials per probed k (doubled until the interval excludes 1/2)
    #[arg(long, default_value_t = 1000)]
    trials: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    #[arg(long, default_value_t = 1)]
    threads: usize,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
enum CountCmd {
    /// Lattice points of sum x_i / a_i < 1
    Simplex(SimplexArgs),
    /// Distributions on a distance neighborhood with weight below a bound
    Lowweight(LowweightArgs),
    /// The distance neighborhood itself
    Lambda(NeighborhoodArgs),
    /// Sum of reciprocal distances beyond a cutoff
    Tailsum(NeighborhoodArgs),
    /// Product of distances over the neighborhood
    Product(NeighborhoodArgs),
}

#[derive(Args, Serialize)]
struct SimplexArgs {
    /// Comma-separated positive rationals, e.g. 2,2 or 5/2,7/3
    #[arg(long)]
    a: String,
    /// Also report the volume bounds for this split parameter
    #[arg(long)]
    s: Option<usize>,
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Args, Serialize)]
struct LowweightArgs {
    #[command(flatten)]
    grid: GridArgs,
    /// Center vertex coordinates
    #[arg(long)]
    v: String,
    /// Neighborhood radius (pebbling distance)
    #[arg(long)]
    c: f64,
    /// Strict weight bound, e.g. 1 or 3/2
    #[arg(long)]
    ell: String,
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Args, Serialize)]
struct NeighborhoodArgs {
    #[command(flatten)]
    grid: GridArgs,
    /// Center vertex coordinates
    #[arg(long)]
    v: String,
    /// Distance radius or cutoff
    #[arg(long)]
    c: f64,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Args, Serialize)]
struct MahlerArgs {
    #[arg(long)]
    t: u32,
    #[arg(long)]
    q: u64,
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
enum FormulaCmd {
    /// Grid threshold shape in dimension d
    Thm1(Thm1Args),
    /// Path threshold shape
    Thm2(Thm2Args),
}

#[derive(Args, Serialize)]
struct Thm1Args {
    #[arg(long)]
    n: u64,
    #[arg(long)]
    d: usize,
    /// Comma-separated costs, one per axis
    #[arg(long)]
    q: String,
    /// Additive constant in the exponent
    #[arg(long, default_value_t = 0.0)]
    gamma: f64,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Args, Serialize)]
struct Thm2Args {
    #[arg(long)]
    n: u64,
    #[arg(long)]
    q: u64,
    /// Additive constant in the exponent
    #[arg(long, default_value_t = 0.0)]
    delta: f64,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Args, Serialize)]
struct GrahamArgs {
    /// Starting hypercube dimension
    #[arg(long)]
    n0: u64,
    /// Universal constant in the product inequality
    #[arg(long, default_value_t = 1.0)]
    c: f64,
    /// Assumed threshold value at dimension n0
    #[arg(long)]
    b: f64,
    #[arg(long, default_value_t = 5)]
    s_max: u32,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

// ---------------------------------------------------------------------------
// parsing helpers

fn parse_shape(s: &str) -> std::result::Result<Vec<usize>, String> {
    s.split('x')
        .map(|part| part.trim().parse::<usize>().map_err(|_| format!("bad shape component {part:?}")))
        .collect()
}

fn parse_u64_list(s: &str) -> std::result::Result<Vec<u64>, String> {
    s.split(',')
        .map(|part| part.trim().parse::<u64>().map_err(|_| format!("bad integer {part:?}")))
        .collect()
}

fn parse_usize_list(s: &str) -> std::result::Result<Vec<usize>, String> {
    s.split(',')
        .map(|part| part.trim().parse::<usize>().map_err(|_| format!("bad coordinate {part:?}")))
        .collect()
}

fn parse_rational(s: &str) -> std::result::Result<BigRational, String> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: i64 = num.parse().map_err(|_| format!("bad rational numerator {num:?}"))?;
    let den: i64 = den.parse().map_err(|_| format!("bad rational denominator {den:?}"))?;
    if den == 0 {
        return Err("rational denominator must be nonzero".into());
    }
    Ok(BigRational::new(num.into(), den.into()))
}

fn parse_rational_list(s: &str) -> std::result::Result<Vec<BigRational>, String> {
    s.split(',').map(parse_rational).collect()
}

/// `coords=count`, coordinates comma-separated.
fn parse_pin(s: &str) -> std::result::Result<(Vertex, u64), String> {
    let (coords, count) = s
        .split_once('=')
        .ok_or_else(|| format!("pin {s:?} must look like coords=count"))?;
    let coords = parse_usize_list(coords)?;
    let count: u64 = count.trim().parse().map_err(|_| format!("bad pin count in {s:?}"))?;
    Ok((Vertex::new(coords), count))
}

fn build_grid(args: &GridArgs) -> std::result::Result<GridSpec, CliError> {
    let sides = parse_shape(&args.shape).map_err(CliError::Usage)?;
    let costs = parse_u64_list(&args.q).map_err(CliError::Usage)?;
    GridSpec::new(sides, costs).map_err(CliError::from)
}

fn parse_vertex(s: &str) -> std::result::Result<Vertex, CliError> {
    Ok(Vertex::new(parse_usize_list(s).map_err(CliError::Usage)?))
}

// ---------------------------------------------------------------------------
// output plumbing

#[derive(Serialize)]
struct Manifest<'a> {
    command: &'static str,
    version: &'static str,
    seed: Option<u64>,
    params: &'a Command,
    duration_ms: f64,
}

#[derive(Serialize)]
struct RationalOut {
    rational: String,
    value: f64,
}

fn rational_out(r: &BigRational) -> RationalOut {
    RationalOut {
        rational: r.to_string(),
        value: rational_to_f64(r),
    }
}

struct Output {
    result: serde_json::Value,
    /// CSV rows (with header) when the command is tabular.
    csv: Option<String>,
    format: Format,
    exit: u8,
}

impl Output {
    fn json(result: serde_json::Value, format: Format) -> Self {
        Output {
            result,
            csv: None,
            format,
            exit: 0,
        }
    }
}

enum CliError {
    Usage(String),
    Lib(Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Lib(e)
    }
}

fn vertex_json(v: &Vertex) -> serde_json::Value {
    json!(v.coords())
}

fn moves_json(moves: &[Move]) -> serde_json::Value {
    serde_json::to_value(moves).expect("serializable")
}

// ---------------------------------------------------------------------------
// command handlers

fn cmd_solve(args: &SolveArgs) -> std::result::Result<Output, CliError> {
    let grid = match (&args.shape, &args.q) {
        (Some(shape), Some(q)) => Some(GridArgs { shape: shape.clone(), q: q.clone() }),
        (None, None) => None,
        _ => return Err(CliError::Usage("--shape and --q go together".into())),
    };
    let (g, c) = match (&args.config, &args.counts, &grid) {
        (Some(path), None, grid) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::Usage(format!("cannot read {path}: {e}")))?;
            let file: ConfigFile = serde_json::from_str(&text)
                .map_err(|e| CliError::Usage(format!("bad configuration file {path}: {e}")))?;
            let (gf, cf) = file.into_parts()?;
            if let Some(grid) = grid {
                let stated = build_grid(grid)?;
                if stated != gf {
                    return Err(CliError::Usage(format!(
                        "--shape/--q disagree with the grid in {path}"
                    )));
                }
            }
            (gf, cf)
        }
        (None, Some(counts), Some(grid)) => {
            let g = build_grid(grid)?;
            let counts = parse_u64_list(counts).map_err(CliError::Usage)?;
            let c = Configuration::new(&g, counts)?;
            (g, c)
        }
        _ => {
            return Err(CliError::Usage(
                "provide either --config FILE, or --shape/--q with --counts".into(),
            ));
        }
    };
    let target = args.target.as_deref().map(parse_vertex).transpose()?;

    let mut exit = 0u8;
    let result = match (args.method, &target) {
        (Method::Criteria, Some(v)) => {
            let report = weight_sufficient_check(&g, &c, v)?;
            let on_path = if g.dim() == 1 {
                Some(path_solvable(&g, &c, v.coords()[0])?)
            } else {
                None
            };
            json!({
                "target": vertex_json(v),
                "method": "criteria",
                "weight_sum": rational_out(&report.weight_sum),
                "necessary_met": report.necessary_met,
                "sufficient_threshold": rational_out(&report.sufficient_threshold),
                "sufficient_met": report.sufficient_met,
                "path_solvable": on_path,
            })
        }
        (Method::Criteria, None) => {
            return Err(CliError::Usage("--method criteria needs a --target".into()));
        }
        (Method::Greedy, Some(v)) => {
            let r = greedy_solve(&g, &c, v)?;
            json!({
                "target": vertex_json(v),
                "method": "greedy",
                "verdict": r.verdict,
                "certificate": r.certificate.as_deref().map(moves_json),
                "states_explored": r.states_explored,
            })
        }
        (Method::Greedy, None) => {
            return Err(CliError::Usage("--method greedy needs a --target".into()));
        }
        (Method::Exact, Some(v)) => {
            let r = is_v_solvable_exact(&g, &c, v, args.budget)?;
            if r.verdict == Verdict::BudgetExceeded {
                exit = 2;
            }
            json!({
                "target": vertex_json(v),
                "method": "exact",
                "verdict": r.verdict,
                "certificate": r.certificate.as_deref().map(moves_json),
                "states_explored": r.states_explored,
            })
        }
        (Method::Exact, None) => {
            let r = is_solvable_exact(&g, &c, args.budget)?;
            if r.verdict == Verdict::BudgetExceeded {
                exit = 2;
            }
            json!({
                "method": "exact",
                "verdict": r.verdict,
                "failing_vertex": r.failing_vertex.as_ref().map(vertex_json),
                "per_vertex": r.per_vertex.iter()
                    .map(|(v, verdict)| json!({"vertex": vertex_json(v), "verdict": verdict}))
                    .collect::<Vec<_>>(),
                "states_explored": r.states_explored,
            })
        }
    };
    Ok(Output {
        result,
        csv: None,
        format: args.format,
        exit,
    })
}

fn cmd_pnum(args: &PnumArgs) -> std::result::Result<Output, CliError> {
    let g = build_grid(&args.grid)?;
    let r = pebbling_number(&g, args.budget)?;
    Ok(Output::json(
        json!({
            "value": r.value,
            "witness": r.witness.to_file(&g),
            "configs_checked": r.configs_checked,
        }),
        args.format,
    ))
}

fn cmd_sample(args: &SampleArgs) -> std::result::Result<Output, CliError> {
    let g = build_grid(&args.grid)?;
    let c = sample_uniform(&g, args.k, args.seed);
    Ok(Output::json(
        serde_json::to_value(c.to_file(&g)).expect("serializable"),
        args.format,
    ))
}

fn cmd_prob_exact(args: &ProbExactArgs) -> std::result::Result<Output, CliError> {
    let g = build_grid(&args.grid)?;
    if args.pin.is_empty() {
        let p = exact_solvable_prob(&g, args.k, args.budget)?;
        return Ok(Output::json(
            json!({
                "k": args.k,
                "probability": rational_out(&p),
                "config_count": config_count(&g, args.k).to_string(),
            }),
            args.format,
        ));
    }
    let pins: Vec<(Vertex, u64)> = args
        .pin
        .iter()
        .map(|s| parse_pin(s).map_err(CliError::Usage))
        .collect::<std::result::Result<_, _>>()?;
    let p = exact_event_probability(&g, args.k, &pins)?;
    Ok(Output::json(
        json!({
            "k": args.k,
            "pins": pins.iter()
                .map(|(v, f)| json!({"vertex": v.coords(), "count": f}))
                .collect::<Vec<_>>(),
            "probability": rational_out(&p),
        }),
        args.format,
    ))
}

const MC_CSV_HEADER: &str = "k,trials,successes,p_hat,ci_lo,ci_hi,max_pile_max,budget_exceeded";

fn mc_csv_row(e: &McEstimate) -> String {
    format!(
        "{},{},{},{},{},{},{},{}",
        e.k, e.trials, e.successes, e.p_hat, e.ci_lo, e.ci_hi, e.max_pile_max, e.excluded
    )
}

fn cmd_mc(args: &McArgs) -> std::result::Result<Output, CliError> {
    let g = build_grid(&args.grid)?;
    let est = mc_solvable_prob(&g, args.k, args.trials, args.seed, args.budget, args.threads)?;
    let mut csv = String::new();
    let _ = writeln!(csv, "{MC_CSV_HEADER}");
    let _ = writeln!(csv, "{}", mc_csv_row(&est));
    let histogram: serde_json::Map<String, serde_json::Value> = est
        .max_pile_histogram
        .iter()
        .map(|(pile, n)| (pile.to_string(), json!(n)))
        .collect();
    Ok(Output {
        result: json!({
            "k": est.k,
            "trials": est.trials,
            "successes": est.successes,
            "excluded": est.excluded,
            "p_hat": est.p_hat,
            "ci": [est.ci_lo, est.ci_hi],
            "max_pile_max": est.max_pile_max,
            "max_pile_histogram": histogram,
            "seed": est.seed,
        }),
        csv: Some(csv),
        format: args.format,
        exit: 0,
    })
}

fn cmd_phalf(args: &PhalfArgs) -> std::result::Result<Output, CliError> {
    let g = build_grid(&args.grid)?;
    let est = phalf_bisect(
        &g,
        args.k_min,
        args.k_max,
        args.trials,
        args.seed,
        args.budget,
        args.threads,
    )?;
    let mut csv = String::new();
    let _ = writeln!(csv, "{MC_CSV_HEADER}");
    for s in &est.per_k {
        let _ = writeln!(
            csv,
            "{},{},{},{},{},{},{},{}",
            s.k, s.trials, s.successes, s.p_hat, s.ci_lo, s.ci_hi, s.max_pile_max, s.excluded
        );
    }
    Ok(Output {
        result: serde_json::to_value(&est).expect("serializable"),
        csv: Some(csv),
        format: args.format,
        exit: 0,
    })
}

fn cmd_count(cmd: &CountCmd) -> std::result::Result<Output, CliError> {
    match cmd {
        CountCmd::Simplex(args) => {
            let a = parse_rational_list(&args.a).map_err(CliError::Usage)?;
            let count = simplex_lattice_count(&a, args.budget)?;
            let bounds = args
                .s
                .map(|s| simplex_bounds(&a, s))
                .transpose()?
                .map(|b| {
                    json!({
                        "s": b.s,
                        "lower": rational_out(&b.lower),
                        "upper": rational_out(&b.upper),
                    })
                });
            Ok(Output::json(
                json!({"count": count.to_string(), "bounds": bounds}),
                args.format,
            ))
        }
        CountCmd::Lowweight(args) => {
            let g = build_grid(&args.grid)?;
            let v = parse_vertex(&args.v)?;
            let ell = parse_rational(&args.ell).map_err(CliError::Usage)?;
            let count = count_low_weight_distributions(&g, &v, args.c, &ell, args.budget)?;
            let size = lambda_set(&g, &v, args.c)?.len();
            Ok(Output::json(
                json!({
                    "count": count.to_string(),
                    "neighborhood_size": size,
                }),
                args.format,
            ))
        }
        CountCmd::Lambda(args) => {
            let g = build_grid(&args.grid)?;
            let v = parse_vertex(&args.v)?;
            let set = lambda_set(&g, &v, args.c)?;
            let (t, estimate) = if g.is_cubic() && args.c > 1.0 {
                let t = central_class(&g, &v, args.c)?.t;
                (Some(t), Some(lambda_size_estimate(&g, t, args.c)?))
            } else {
                (None, None)
            };
            Ok(Output::json(
                json!({
                    "vertices": set.iter().map(vertex_json).collect::<Vec<_>>(),
                    "size": set.len(),
                    "centrality_t": t,
                    "size_estimate": estimate,
                }),
                args.format,
            ))
        }
        CountCmd::Tailsum(args) => {
            let g = build_grid(&args.grid)?;
            let v = parse_vertex(&args.v)?;
            let sum = tail_weight_sum(&g, &v, args.c)?;
            Ok(Output::json(json!({"sum": rational_out(&sum)}), args.format))
        }
        CountCmd::Product(args) => {
            let g = build_grid(&args.grid)?;
            let v = parse_vertex(&args.v)?;
            let product = weight_product(&g, &v, args.c)?;
            let log_estimate = if g.is_cubic() && args.c > 1.0 {
                let t = central_class(&g, &v, args.c)?.t;
                Some(weight_product_log_estimate(&g, t, args.c)?)
            } else {
                None
            };
            Ok(Output::json(
                json!({
                    "product": product.to_string(),
                    "log_estimate": log_estimate,
                }),
                args.format,
            ))
        }
    }
}

fn cmd_mahler(args: &MahlerArgs) -> std::result::Result<Output, CliError> {
    let h = mahler_h(args.t, args.q, args.budget)?;
    let ln_h = pebbling::numeric::log_biguint(&h);
    let printed = if args.t >= 2 {
        Some(mahler_asymptotic(args.t, args.q)?)
    } else {
        None
    };
    Ok(Output::json(
        json!({
            "t": args.t,
            "q": args.q,
            "h": h.to_string(),
            "ln_h": ln_h,
            "printed_exponent": printed,
            "gap": printed.map(|p| ln_h - p),
        }),
        args.format,
    ))
}

fn cmd_formula(cmd: &FormulaCmd) -> std::result::Result<Output, CliError> {
    match cmd {
        FormulaCmd::Thm1(args) => {
            let q = parse_u64_list(&args.q).map_err(CliError::Usage)?;
            let value = theorem1_value(args.n, args.d, &q, args.gamma)?;
            Ok(Output::json(json!({"value": value}), args.format))
        }
        FormulaCmd::Thm2(args) => {
            let value = theorem2_value(args.n, args.q, args.delta)?;
            Ok(Output::json(json!({"value": value}), args.format))
        }
    }
}

fn cmd_graham(args: &GrahamArgs) -> std::result::Result<Output, CliError> {
    let rows = graham_table(args.n0, args.c, args.b, args.s_max)?;
    let mut csv = String::from("s,log2_upper,lower_exponent,contradiction\n");
    for r in &rows {
        let _ = writeln!(csv, "{},{},{},{}", r.s, r.log2_upper, r.lower_exponent, r.contradiction);
    }
    Ok(Output {
        result: json!({"rows": rows}),
        csv: Some(csv),
        format: args.format,
        exit: 0,
    })
}

// ---------------------------------------------------------------------------

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Solve(_) => "solve",
        Command::Pnum(_) => "pnum",
        Command::Sample(_) => "sample",
        Command::ProbExact(_) => "prob-exact",
        Command::Mc(_) => "mc",
        Command::Phalf(_) => "phalf",
        Command::Count(_) => "count",
        Command::Mahler(_) => "mahler",
        Command::Formula(_) => "formula",
        Command::Graham(_) => "graham",
    }
}

fn command_seed(c: &Command) -> Option<u64> {
    match c {
        Command::Sample(a) => Some(a.seed),
        Command::Mc(a) => Some(a.seed),
        Command::Phalf(a) => Some(a.seed),
        _ => None,
    }
}

fn run(command: &Command) -> std::result::Result<Output, CliError> {
    match command {
        Command::Solve(args) => cmd_solve(args),
        Command::Pnum(args) => cmd_pnum(args),
        Command::Sample(args) => cmd_sample(args),
        Command::ProbExact(args) => cmd_prob_exact(args),
        Command::Mc(args) => cmd_mc(args),
        Command::Phalf(args) => cmd_phalf(args),
        Command::Count(cmd) => cmd_count(cmd),
        Command::Mahler(args) => cmd_mahler(args),
        Command::Formula(cmd) => cmd_formula(cmd),
        Command::Graham(args) => cmd_graham(args),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // help and version requests are successes, anything else is usage
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let started = Instant::now();
    match run(&cli.command) {
        Ok(out) => {
            let manifest = Manifest {
                command: command_name(&cli.command),
                version: env!("CARGO_PKG_VERSION"),
                seed: command_seed(&cli.command),
                params: &cli.command,
                duration_ms: started.elapsed().as_secs_f64() * 1e3,
            };
            match out.format {
                Format::Json => {
                    let wrapped = json!({
                        "manifest": manifest,
                        "result": out.result,
                    });
                    println!("{}", serde_json::to_string_pretty(&wrapped).expect("serializable"));
                }
                Format::Csv => {
                    let Some(csv) = out.csv else {
                        eprintln!("error: this command has no tabular form; use --format json");
                        return ExitCode::from(1);
                    };
                    print!("{csv}");
                    eprintln!("{}", serde_json::to_string(&manifest).expect("serializable"));
                }
            }
            ExitCode::from(out.exit)
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(CliError::Lib(e)) => {
            eprintln!("error: {e}");
            match e {
                Error::BudgetExceeded { .. } => ExitCode::from(2),
                _ => ExitCode::from(1),
            }
        }
    }
}
