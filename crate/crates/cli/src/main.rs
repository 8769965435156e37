//! `abramowitz` command-line tool.
//!
//! Exit codes: 0 success, 1 failure (tolerance missed, I/O, no convergence),
//! 2 usage or domain error.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use abramowitz::{CoefficientFile, Complex64, Evaluator, Region, TableSet};
use abramowitz_precision::fitter::{fit_region_with, FitReport, RegionSpec};
use abramowitz_precision::oracle::FIT_DIGITS;
use abramowitz_precision::verify::{self, SweepStats};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

#[derive(Parser)]
#[command(
    name = "abramowitz",
    version,
    about = "Abramowitz functions J_n(z) = int_0^inf t^n exp(-t^2 - z/t) dt"
)]
struct Cli {
    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Worker threads for sweeps and fits (default: all cores)
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate J_n(z), or e^nu J_n(z) with --scaled
    Eval {
        #[arg(short, long, allow_hyphen_values = true)]
        n: i32,
        /// Argument as "re,im" (or "re")
        #[arg(short, long, value_parser = parse_complex, allow_hyphen_values = true)]
        z: Complex64,
        #[arg(long)]
        scaled: bool,
        /// Coefficient file replacing an embedded table; repeatable
        #[arg(long)]
        tables: Vec<PathBuf>,
    },
    /// Scaled relative error against the 30-digit oracle.
    ///
    /// CSV columns: region,n,count,max_rel_err,mean_rel_err. Orders >= 3 are
    /// checked through the forward recurrence and get one row per region
    /// plus an "all" row.
    Sweep {
        /// Orders, comma separated (default -1,0,1,2)
        #[arg(short, long, allow_hyphen_values = true, value_delimiter = ',')]
        n: Vec<i32>,
        /// Regions, comma separated (default all five)
        #[arg(short, long, value_delimiter = ',')]
        region: Vec<Region>,
        #[arg(long, default_value_t = 100_000)]
        count: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Outer radius for recurrence sweeps
        #[arg(long, default_value_t = 1000.0)]
        rmax: f64,
        /// Write the report here instead of stdout
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Fit a modified Laurent table on a quarter annulus
    Fit {
        #[arg(short, long, allow_hyphen_values = true)]
        n: i32,
        #[arg(long)]
        r_lo: f64,
        #[arg(long)]
        r_hi: f64,
        #[arg(long, default_value_t = 1e-20)]
        epsilon: f64,
        #[arg(long, default_value_t = FIT_DIGITS)]
        digits: u32,
        #[arg(short, long)]
        out: PathBuf,
    },
    /// Count zeros inside a quarter annulus by the argument principle
    Zeros {
        #[arg(short, long, allow_hyphen_values = true)]
        n: i32,
        #[arg(long, default_value_t = 1.0)]
        r_lo: f64,
        #[arg(long, default_value_t = 120.0)]
        r_hi: f64,
        /// Initial Gauss-Legendre nodes per side
        #[arg(long, default_value_t = 64)]
        nodes: usize,
    },
    /// Time scaled evaluation against the complex exponential
    Bench {
        #[arg(long, default_value_t = 100_000)]
        count: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Print an embedded table as a coefficient file
    Table {
        #[arg(short, long, allow_hyphen_values = true)]
        n: i32,
        #[arg(short, long)]
        region: Region,
    },
}

enum Failure {
    Usage(String),
    Internal(String),
}

impl From<abramowitz::Error> for Failure {
    fn from(e: abramowitz::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<abramowitz_precision::Error> for Failure {
    fn from(e: abramowitz_precision::Error) -> Self {
        use abramowitz_precision::Error as E;
        match e {
            E::Core(e) => e.into(),
            E::InvalidParameter(m) => Failure::Usage(m),
            e => Failure::Internal(e.to_string()),
        }
    }
}

fn parse_complex(s: &str) -> Result<Complex64, String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let num = |p: &str| {
        p.parse::<f64>()
            .map_err(|_| format!("'{p}' is not a number"))
    };
    match parts.as_slice() {
        [re] => Ok(Complex64::new(num(re)?, 0.0)),
        [re, im] => Ok(Complex64::new(num(re)?, num(im)?)),
        _ => Err(format!("expected re,im, got '{s}'")),
    }
}

fn read_tables(paths: &[PathBuf]) -> Result<TableSet, Failure> {
    let mut set = TableSet::embedded().clone();
    for p in paths {
        let text = fs::read_to_string(p)
            .map_err(|e| Failure::Internal(format!("{}: {e}", p.display())))?;
        let file: CoefficientFile = text.parse()?;
        set.replace(file.to_table()?)?;
    }
    Ok(set)
}

fn write_out(path: Option<&Path>, text: &str) -> Result<(), Failure> {
    match path {
        Some(p) => {
            fs::write(p, text).map_err(|e| Failure::Internal(format!("{}: {e}", p.display())))
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn cmd_eval(
    format: Format,
    n: i32,
    z: Complex64,
    scaled: bool,
    tables: &[PathBuf],
) -> Result<(), Failure> {
    let ev = if tables.is_empty() {
        Evaluator::new()
    } else {
        Evaluator::with_tables(read_tables(tables)?)
    };
    let v = if scaled {
        ev.eval_scaled(n, z)?
    } else {
        ev.eval(n, z)?
    };
    match format {
        Format::Text if v.im == 0.0 => println!("{:.16e}", v.re),
        Format::Text => println!("{:.16e} {:+.16e}i", v.re, v.im),
        Format::Csv => {
            println!("n,z_re,z_im,scaled,re,im");
            println!(
                "{n},{:e},{:e},{scaled},{:.16e},{:.16e}",
                z.re, z.im, v.re, v.im
            );
        }
        Format::Json => println!(
            "{}",
            json!({"n": n, "z": [z.re, z.im], "scaled": scaled, "re": v.re, "im": v.im})
        ),
    }
    Ok(())
}

fn sweep_rows(
    orders: &[i32],
    regions: &[Region],
    count: usize,
    seed: u64,
    rmax: f64,
) -> Result<Vec<(String, SweepStats)>, Failure> {
    let mut rows = Vec::new();
    let base: Vec<i32> = orders
        .iter()
        .copied()
        .filter(|n| (-1..=2).contains(n))
        .collect();
    for &region in regions {
        if base.is_empty() {
            break;
        }
        for s in verify::error_sweep_all(region, count, seed)? {
            if base.contains(&s.order) {
                rows.push((region.to_string(), s));
            }
        }
    }
    for &n in orders.iter().filter(|&&n| !(-1..=2).contains(&n)) {
        for s in verify::recurrence_sweep(n, count, rmax, seed)? {
            let label = s
                .region
                .map_or_else(|| "all".to_string(), |r| r.to_string());
            if s.region.is_none() || regions.contains(&s.region.unwrap()) {
                rows.push((label, s));
            }
        }
    }
    Ok(rows)
}

fn render_sweep(format: Format, rows: &[(String, SweepStats)]) -> String {
    match format {
        Format::Json => rows
            .iter()
            .map(|(r, s)| {
                format!(
                    "{}\n",
                    json!({"region": r, "n": s.order, "count": s.count, "max_rel_err": s.max_rel_err, "mean_rel_err": s.mean_rel_err})
                )
            })
            .collect(),
        Format::Csv | Format::Text => {
            let mut out = String::from("region,n,count,max_rel_err,mean_rel_err\n");
            for (r, s) in rows {
                out += &format!("{r},{},{},{:.3e},{:.3e}\n", s.order, s.count, s.max_rel_err, s.mean_rel_err);
            }
            out
        }
    }
}

fn coefficient_file(report: &FitReport) -> CoefficientFile {
    CoefficientFile {
        order: report.order,
        r_lo: report.region.r_lo,
        r_hi: report.region.r_hi,
        n1: report.n1,
        n2: report.n2,
        residual: Some(report.residual),
        digits: report.digits,
        coeffs: report.decimal_coeffs(),
    }
}

fn cmd_fit(
    format: Format,
    n: i32,
    r_lo: f64,
    r_hi: f64,
    epsilon: f64,
    digits: u32,
    out: &Path,
) -> Result<(), Failure> {
    let region = RegionSpec::new(r_lo, r_hi)?;
    let report = fit_region_with(n, &region, epsilon, digits)?;
    write_out(Some(out), &coefficient_file(&report).to_text())?;
    let summary = match format {
        Format::Json => json!({
            "n": n, "r_lo": r_lo, "r_hi": r_hi, "N1": report.n1, "N2": report.n2, "NT": report.nt,
            "residual": report.residual, "midpoint_error": report.midpoint_error,
            "nodes_per_segment": report.nodes_per_segment, "rank": report.rank,
        })
        .to_string(),
        _ => format!(
            "n={n} [{r_lo}, {r_hi}] N1={} N2={} NT={} residual={:.3e} midpoint={:.3e} Nb={}",
            report.n1,
            report.n2,
            report.nt,
            report.residual,
            report.midpoint_error,
            report.nodes_per_segment
        ),
    };
    println!("{summary}");
    if !report.meets_target() {
        return Err(Failure::Internal(format!(
            "best residual {:.3e} misses epsilon {epsilon:e}",
            report.residual
        )));
    }
    Ok(())
}

fn cmd_zeros(format: Format, n: i32, r_lo: f64, r_hi: f64, nodes: usize) -> Result<(), Failure> {
    let r = verify::zero_count(n, r_lo, r_hi, nodes)?;
    match format {
        Format::Json => println!(
            "{}",
            json!({"n": n, "r_lo": r_lo, "r_hi": r_hi, "zeros": r.zeros, "integral": [r.integral.re, r.integral.im],
                   "residual": r.residual, "nodes_per_segment": r.nodes_per_segment})
        ),
        Format::Csv => {
            println!("n,r_lo,r_hi,zeros,integral_re,integral_im,residual,nodes_per_segment");
            println!(
                "{n},{r_lo},{r_hi},{},{:e},{:e},{:e},{}",
                r.zeros, r.integral.re, r.integral.im, r.residual, r.nodes_per_segment
            );
        }
        Format::Text => {
            println!("Z = {}", r.zeros);
            println!("I = {:.3e} {:+.3e}i", r.integral.re, r.integral.im);
            println!(
                "residual = {:.3e}, {} nodes per side",
                r.residual, r.nodes_per_segment
            );
        }
    }
    Ok(())
}

fn cmd_bench(format: Format, count: usize, seed: u64) -> Result<(), Failure> {
    // timings stay on this thread
    let b = verify::bench_ratio(count, seed)?;
    match format {
        Format::Json => {
            let regions: serde_json::Map<String, serde_json::Value> = b
                .per_region
                .iter()
                .map(|(r, ns)| (r.to_string(), json!(ns)))
                .collect();
            println!(
                "{}",
                json!({"count": count, "ratio": b.ratio, "ns_per_eval": b.ns_per_eval, "ns_per_exp": b.ns_per_exp, "ns_per_region": regions})
            );
        }
        Format::Csv => {
            println!("what,ns_per_call");
            println!("eval,{:.2}", b.ns_per_eval);
            println!("exp,{:.2}", b.ns_per_exp);
            for (r, ns) in &b.per_region {
                println!("{r},{ns:.2}");
            }
        }
        Format::Text => {
            println!("ratio = {:.2}", b.ratio);
            println!(
                "eval {:.1} ns, exp {:.1} ns ({count} calls)",
                b.ns_per_eval, b.ns_per_exp
            );
            for (r, ns) in &b.per_region {
                println!("  {r:>2} {ns:.1} ns");
            }
        }
    }
    Ok(())
}

fn cmd_table(n: i32, region: Region) -> Result<(), Failure> {
    if !region.is_intermediate() {
        return Err(Failure::Usage(format!("{region} has no fitted table")));
    }
    let table = TableSet::embedded()
        .get(n, region)
        .ok_or(abramowitz::Error::UnsupportedOrder(n))?;
    print!(
        "{}",
        CoefficientFile::from_table(table, None, table.source_digits()).to_text()
    );
    Ok(())
}

fn run(cli: Cli) -> Result<(), Failure> {
    if let Some(t) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()
            .map_err(|e| Failure::Internal(e.to_string()))?;
    }
    let format = cli.format;
    match cli.command {
        Command::Eval {
            n,
            z,
            scaled,
            tables,
        } => cmd_eval(format, n, z, scaled, &tables),
        Command::Sweep {
            n,
            region,
            count,
            seed,
            rmax,
            out,
        } => {
            let orders = if n.is_empty() { vec![-1, 0, 1, 2] } else { n };
            let regions = if region.is_empty() {
                Region::ALL.to_vec()
            } else {
                region
            };
            let rows = sweep_rows(&orders, &regions, count, seed, rmax)?;
            write_out(out.as_deref(), &render_sweep(format, &rows))
        }
        Command::Fit {
            n,
            r_lo,
            r_hi,
            epsilon,
            digits,
            out,
        } => cmd_fit(format, n, r_lo, r_hi, epsilon, digits, &out),
        Command::Zeros {
            n,
            r_lo,
            r_hi,
            nodes,
        } => cmd_zeros(format, n, r_lo, r_hi, nodes),
        Command::Bench { count, seed } => cmd_bench(format, count, seed),
        Command::Table { n, region } => cmd_table(n, region),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Internal(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
    }
}
