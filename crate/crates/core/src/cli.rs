//! Command-line front end. All angles are radians unless `--degrees` is
//! given; numbers are printed with 12 significant digits.

use std::ffi::OsString;
use std::io::Write;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::geometry::{center_distances, PairSpec};
use crate::paths::{sample, shortest_path, DubinsPath};
use crate::regions::classify;
use crate::verify::{lemma_suite, run_lemma, LemmaReport, DEFAULT_GRID, LEMMA_IDS};
use crate::worst_case::{DubPoint, DubSolver};

/// Environment variable that overrides the computed d*.
pub const DSTAR_ENV: &str = "DUBINS_DSTAR";

pub const GRAPH_HEADER: &str = "d,dub,case,alpha,beta,attained";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum OutputFormat {
    #[default]
    Json,
    Csv,
    Text,
}

#[derive(Debug, Parser)]
#[command(
    name = "dubins-cost",
    version,
    about = "Shortest Dubins paths and the worst-case extra length Dub(d)",
    long_about = "Shortest Dubins paths and the worst-case extra length Dub(d).\n\n\
        Instances are canonical: start (0, 0, alpha), goal (d, 0, beta), unit turning radius. \
        Angles are in radians unless --degrees is given."
)]
pub struct Cli {
    #[arg(long, value_enum, default_value_t, global = true)]
    format: OutputFormat,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, clap::Args)]
struct Instance {
    /// Distance between start and goal.
    #[arg(long, allow_negative_numbers = true)]
    d: f64,
    /// Start heading (radians).
    #[arg(long, allow_negative_numbers = true)]
    alpha: f64,
    /// Goal heading (radians).
    #[arg(long, allow_negative_numbers = true)]
    beta: f64,
    /// Read alpha and beta as degrees.
    #[arg(long)]
    degrees: bool,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Shortest path between the two configurations.
    Shortest {
        #[command(flatten)]
        inst: Instance,
        /// Also emit this many evenly spaced waypoints.
        #[arg(long)]
        samples: Option<usize>,
    },
    /// Case label (A, B, C1, C2, C3) and the four center distances.
    Classify {
        #[command(flatten)]
        inst: Instance,
    },
    /// Dub(d) with its witness heading pair.
    Dub {
        #[arg(long, allow_negative_numbers = true)]
        d: f64,
    },
    /// Dub(d) plus the shortest path at the witness.
    Worst {
        #[arg(long, allow_negative_numbers = true)]
        d: f64,
    },
    /// Dub(d) sampled on [dmin, dmax].
    Graph {
        #[arg(long, allow_negative_numbers = true)]
        dmin: f64,
        #[arg(long, allow_negative_numbers = true)]
        dmax: f64,
        #[arg(long, allow_negative_numbers = true)]
        step: f64,
    },
    /// Numeric check batteries. Exit code 1 if any check fails.
    Verify {
        /// `all` or one battery id.
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Per-axis resolution of grid-based batteries.
        #[arg(long, default_value_t = DEFAULT_GRID)]
        grid: usize,
    },
}

/// Formats with 12 significant digits, trailing zeros dropped.
pub fn fmt_num(x: f64) -> String {
    if !x.is_finite() {
        return x.to_string();
    }
    if x == 0.0 {
        return "0".to_string();
    }
    let exp = x.abs().log10().floor() as i32;
    if !(-5..=15).contains(&exp) {
        return format!("{x:.11e}");
    }
    let decimals = (11 - exp).max(0) as usize;
    let s = format!("{x:.decimals$}");
    let s = if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    };
    if s == "-0" {
        "0".to_string()
    } else {
        s
    }
}

fn num(x: f64) -> Value {
    // Round-trips through the 12-digit text so JSON and CSV agree.
    json!(fmt_num(x).parse::<f64>().unwrap_or(x))
}

struct Usage(String);

/// Parses `args` (including the program name), runs the command and
/// returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    0
                }
                _ => {
                    let _ = write!(err, "{e}");
                    2
                }
            };
            return code;
        }
    };
    match execute(&cli, out) {
        Ok(code) => code,
        Err(Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
    }
}

fn solver() -> Result<DubSolver, Usage> {
    match std::env::var(DSTAR_ENV) {
        Ok(v) => {
            let x: f64 = v
                .trim()
                .parse()
                .map_err(|_| Usage(format!("{DSTAR_ENV} = {v:?} is not a number")))?;
            if !(x.is_finite() && x > 0.0) {
                return Err(Usage(format!("{DSTAR_ENV} must be positive")));
            }
            Ok(DubSolver::with_d_star(x))
        }
        Err(_) => Ok(DubSolver::default()),
    }
}

fn check_d(d: f64) -> Result<(), Usage> {
    if d.is_finite() && d >= 0.0 {
        Ok(())
    } else {
        Err(Usage(format!("d = {d} must be finite and nonnegative")))
    }
}

fn pair(inst: &Instance) -> Result<PairSpec, Usage> {
    check_d(inst.d)?;
    let (a, b) = if inst.degrees {
        (inst.alpha.to_radians(), inst.beta.to_radians())
    } else {
        (inst.alpha, inst.beta)
    };
    PairSpec::new(inst.d, a, b).map_err(|e| Usage(e.to_string()))
}

fn io(e: std::io::Error) -> Usage {
    Usage(format!("write failed: {e}"))
}

fn execute(cli: &Cli, out: &mut dyn Write) -> Result<i32, Usage> {
    let f = cli.format;
    match &cli.command {
        Command::Shortest { inst, samples } => {
            let p = pair(inst)?;
            let (path, _) = shortest_path(&p);
            emit_shortest(out, f, &p, &path, *samples)?;
        }
        Command::Classify { inst } => {
            let p = pair(inst)?;
            let cd = center_distances(&p);
            let label = classify(&p).to_string();
            let v = json!({
                "d": num(p.d), "alpha": num(p.alpha), "beta": num(p.beta),
                "case": label,
                "d_l": num(cd.d_l), "d_r": num(cd.d_r), "d_lr": num(cd.d_lr), "d_rl": num(cd.d_rl),
            });
            match f {
                OutputFormat::Json => writeln!(out, "{v}").map_err(io)?,
                OutputFormat::Csv => {
                    writeln!(out, "d,alpha,beta,case,d_l,d_r,d_lr,d_rl").map_err(io)?;
                    let row = [p.d, p.alpha, p.beta]
                        .map(fmt_num)
                        .into_iter()
                        .chain([label])
                        .chain([cd.d_l, cd.d_r, cd.d_lr, cd.d_rl].map(fmt_num))
                        .collect::<Vec<_>>();
                    writeln!(out, "{}", row.join(",")).map_err(io)?;
                }
                OutputFormat::Text => {
                    writeln!(out, "case: {label}").map_err(io)?;
                    for (k, x) in [("d_L", cd.d_l), ("d_R", cd.d_r), ("d_LR", cd.d_lr), ("d_RL", cd.d_rl)] {
                        writeln!(out, "{k}: {}", fmt_num(x)).map_err(io)?;
                    }
                }
            }
        }
        Command::Dub { d } | Command::Worst { d } => {
            check_d(*d)?;
            let pt = solver()?.dub(*d).map_err(|e| Usage(e.to_string()))?;
            let worst = matches!(cli.command, Command::Worst { .. });
            let path = worst.then(|| shortest_path(&PairSpec::new(pt.d, pt.alpha, pt.beta).expect("valid witness")).0);
            emit_dub(out, f, &pt, path.as_ref())?;
        }
        Command::Graph { dmin, dmax, step } => {
            if !(dmin.is_finite() && dmax.is_finite() && step.is_finite())
                || *dmin < 0.0
                || dmax <= dmin
                || *step <= 0.0
            {
                return Err(Usage(format!(
                    "need 0 <= dmin < dmax and step > 0, got dmin = {dmin}, dmax = {dmax}, step = {step}"
                )));
            }
            let n = ((dmax - dmin) / step + 1e-9).floor() as usize + 1;
            let solver = solver()?;
            let rows = (0..n)
                .map(|i| solver.dub(dmin + i as f64 * step))
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| Usage(e.to_string()))?;
            emit_graph(out, f, &rows)?;
        }
        Command::Verify {
            suite,
            samples,
            seed,
            grid,
        } => {
            if *samples == 0 {
                return Err(Usage("samples must be at least 1".into()));
            }
            let reports = if suite == "all" {
                lemma_suite(*seed, *samples, *grid)
            } else {
                match run_lemma(suite, *seed, *samples, *grid) {
                    Some(r) => vec![r],
                    None => {
                        return Err(Usage(format!(
                            "unknown suite {suite:?}; expected all or one of {}",
                            LEMMA_IDS.join(", ")
                        )))
                    }
                }
            };
            emit_verify(out, f, &reports)?;
            if reports.iter().any(|r| !r.passed()) {
                return Ok(1);
            }
        }
    }
    Ok(0)
}

fn path_json(path: &DubinsPath) -> Value {
    json!({
        "word": path.word.as_str(),
        "segments": path.segments.iter().map(|s| json!({
            "kind": s.kind.letter().to_string(),
            "length": num(s.length),
        })).collect::<Vec<_>>(),
        "total": num(path.total_length),
    })
}

fn emit_shortest(
    out: &mut dyn Write,
    f: OutputFormat,
    p: &PairSpec,
    path: &DubinsPath,
    k: Option<usize>,
) -> Result<(), Usage> {
    let waypoints = match k {
        None | Some(0) => Vec::new(),
        Some(1) => vec![0.0],
        Some(k) => (0..k).map(|i| path.total_length * i as f64 / (k - 1) as f64).collect(),
    };
    let points = waypoints
        .iter()
        .map(|&s| sample(path, s, p).map(|c| (s, c)))
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| Usage(e.to_string()))?;
    match f {
        OutputFormat::Json => {
            let mut v = path_json(path);
            if k.is_some() {
                v["waypoints"] = points
                    .iter()
                    .map(|(s, c)| json!({"s": num(*s), "x": num(c.x), "y": num(c.y), "theta": num(c.theta)}))
                    .collect();
            }
            writeln!(out, "{v}").map_err(io)?;
        }
        OutputFormat::Csv => {
            writeln!(out, "word,len1,len2,len3,total").map_err(io)?;
            let l = path.lengths();
            writeln!(
                out,
                "{},{},{},{},{}",
                path.word,
                fmt_num(l[0]),
                fmt_num(l[1]),
                fmt_num(l[2]),
                fmt_num(path.total_length)
            )
            .map_err(io)?;
            if !points.is_empty() {
                writeln!(out, "\ns,x,y,theta").map_err(io)?;
                for (s, c) in &points {
                    writeln!(
                        out,
                        "{},{},{},{}",
                        fmt_num(*s),
                        fmt_num(c.x),
                        fmt_num(c.y),
                        fmt_num(c.theta)
                    )
                    .map_err(io)?;
                }
            }
        }
        OutputFormat::Text => {
            let segs = path
                .segments
                .iter()
                .map(|s| format!("{} {}", s.kind.letter(), fmt_num(s.length)))
                .collect::<Vec<_>>();
            writeln!(
                out,
                "{}  total {}  ({})",
                path.word,
                fmt_num(path.total_length),
                segs.join(", ")
            )
            .map_err(io)?;
            for (s, c) in &points {
                writeln!(
                    out,
                    "s={}  x={}  y={}  theta={}",
                    fmt_num(*s),
                    fmt_num(c.x),
                    fmt_num(c.y),
                    fmt_num(c.theta)
                )
                .map_err(io)?;
            }
        }
    }
    Ok(())
}

fn dub_json(pt: &DubPoint) -> Value {
    json!({
        "d": num(pt.d),
        "dub": num(pt.dub),
        "case": pt.case.to_string(),
        "alpha": num(pt.alpha),
        "beta": num(pt.beta),
        "attained": pt.attained,
    })
}

fn dub_csv_row(pt: &DubPoint) -> String {
    format!(
        "{},{},{},{},{},{}",
        fmt_num(pt.d),
        fmt_num(pt.dub),
        pt.case,
        fmt_num(pt.alpha),
        fmt_num(pt.beta),
        pt.attained
    )
}

fn emit_dub(out: &mut dyn Write, f: OutputFormat, pt: &DubPoint, path: Option<&DubinsPath>) -> Result<(), Usage> {
    match f {
        OutputFormat::Json => {
            let mut v = dub_json(pt);
            if let Some(p) = path {
                v["witness_path"] = path_json(p);
            }
            writeln!(out, "{v}").map_err(io)?;
        }
        OutputFormat::Csv => {
            writeln!(out, "{GRAPH_HEADER}").map_err(io)?;
            writeln!(out, "{}", dub_csv_row(pt)).map_err(io)?;
        }
        OutputFormat::Text => {
            writeln!(out, "Dub({}) = {}  case {}", fmt_num(pt.d), fmt_num(pt.dub), pt.case).map_err(io)?;
            let kind = if pt.attained { "attained at" } else { "approached near" };
            writeln!(out, "{kind} alpha = {}, beta = {}", fmt_num(pt.alpha), fmt_num(pt.beta)).map_err(io)?;
            if let Some(p) = path {
                writeln!(
                    out,
                    "shortest path there: {} of length {}",
                    p.word,
                    fmt_num(p.total_length)
                )
                .map_err(io)?;
            }
        }
    }
    Ok(())
}

fn emit_graph(out: &mut dyn Write, f: OutputFormat, rows: &[DubPoint]) -> Result<(), Usage> {
    match f {
        OutputFormat::Json => {
            let v: Vec<Value> = rows.iter().map(dub_json).collect();
            writeln!(out, "{}", Value::Array(v)).map_err(io)?;
        }
        OutputFormat::Csv | OutputFormat::Text => {
            writeln!(out, "{GRAPH_HEADER}").map_err(io)?;
            for r in rows {
                writeln!(out, "{}", dub_csv_row(r)).map_err(io)?;
            }
        }
    }
    Ok(())
}

fn emit_verify(out: &mut dyn Write, f: OutputFormat, reports: &[LemmaReport]) -> Result<(), Usage> {
    match f {
        OutputFormat::Json => {
            let v: Vec<Value> = reports
                .iter()
                .map(|r| {
                    json!({
                        "lemma_id": r.lemma_id,
                        "samples": r.samples,
                        "violations": r.violations,
                        "worst_margin": num(r.worst_margin),
                        "passed": r.passed(),
                    })
                })
                .collect();
            writeln!(out, "{}", Value::Array(v)).map_err(io)?;
        }
        OutputFormat::Csv => {
            writeln!(out, "lemma_id,samples,violations,worst_margin,passed").map_err(io)?;
            for r in reports {
                writeln!(
                    out,
                    "{},{},{},{},{}",
                    r.lemma_id,
                    r.samples,
                    r.violations,
                    fmt_num(r.worst_margin),
                    r.passed()
                )
                .map_err(io)?;
            }
        }
        OutputFormat::Text => {
            for r in reports {
                let tag = if r.passed() { "PASS" } else { "FAIL" };
                writeln!(
                    out,
                    "{tag} {:<26} samples={:<6} violations={:<5} worst_margin={}",
                    r.lemma_id,
                    r.samples,
                    r.violations,
                    fmt_num(r.worst_margin)
                )
                .map_err(io)?;
            }
        }
    }
    Ok(())
}
