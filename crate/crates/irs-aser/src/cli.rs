//! Command-line front end: curve computation, figure reproduction as CSV plus
//! a plot script, and the self-validation suites.
//!
//! Exit codes: 0 ok, 2 usage, 3 numeric/IO failure, 4 validation failure.

use std::fmt::Write as _;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::aser::{self, CurveMethod, Method};
use crate::asymptotics;
use crate::channel::{self, link_params};
use crate::error::Error;
use crate::modem::{self, ModulationScheme};
use crate::montecarlo::{self, ChannelMode, SimulationConfig};
use crate::specfun;

const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Error carrying the process exit code.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Numeric(String),
    Validation(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Numeric(_) => 3,
            CliError::Validation(_) => 4,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Numeric(m) | CliError::Validation(m) => m,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Domain(_) => CliError::Usage(e.to_string()),
            Error::Numeric { .. } => CliError::Numeric(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Numeric(format!("io error: {e}"))
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

#[derive(Debug, Parser)]
#[command(
    name = "irs-aser",
    version,
    about = "Average symbol error rate of IRS-assisted links with QAM signaling"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute ASER curves over an SNR grid and write them as CSV.
    Curve(CurveArgs),
    /// Reproduce one of the reference figures (fig2..fig7) as CSV + plot script.
    Figure(FigureArgs),
    /// Run the built-in validation suites.
    Validate(ValidateArgs),
}

#[derive(Debug, Args)]
pub struct CurveArgs {
    /// Modulation: "rqam:MIxMQ:b=BETA" | "sqam:M" | "xqam:M" | "bpsk".
    #[arg(long)]
    pub scheme: String,
    /// IRS element count.
    #[arg(long = "elements", short = 'N', default_value_t = 32)]
    pub elements: u32,
    /// SNR grid "start:step:stop" in dB.
    #[arg(long, default_value = "-20:0.5:30", allow_hyphen_values = true)]
    pub snr: String,
    /// Comma-separated methods: closed-form, quadrature, monte-carlo,
    /// low-snr, high-snr, awgn-bound, awgn-exact.
    #[arg(long, default_value = "closed-form")]
    pub methods: String,
    /// Monte Carlo symbol budget per grid point.
    #[arg(long, default_value_t = 1_000_000)]
    pub symbols: u64,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    /// Output CSV path.
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct FigureArgs {
    /// Figure id: fig2 | fig3 | fig4 | fig5 | fig6 | fig7.
    pub id: FigureId,
    /// Output directory for CSVs and the plot script.
    #[arg(long = "out-dir")]
    pub out_dir: PathBuf,
    /// Monte Carlo symbol budget per simulated point.
    #[arg(long, default_value_t = 1_000_000)]
    pub symbols: u64,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FigureId {
    Fig2,
    Fig3,
    Fig4,
    Fig5,
    Fig6,
    Fig7,
}

#[derive(Debug, Args)]
pub struct ValidateArgs {
    /// Suite depth.
    #[arg(long, value_enum, default_value_t = ValidateLevel::Fast)]
    pub level: ValidateLevel,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ValidateLevel {
    Fast,
    Full,
}

/// Entry point used by the binary.
pub fn run(cli: Cli) -> CliResult<()> {
    init_thread_pool();
    match cli.command {
        Command::Curve(args) => cmd_curve(&args),
        Command::Figure(args) => {
            cmd_figure(args.id, &args.out_dir, args.symbols, args.seed)?;
            Ok(())
        }
        Command::Validate(args) => {
            let mut out = std::io::stdout().lock();
            let ok = run_validate(args.level, args.seed, &mut out)?;
            if ok {
                Ok(())
            } else {
                Err(CliError::Validation("validation suite reported failures".into()))
            }
        }
    }
}

/// Cap the rayon pool from ASER_THREADS, if set.
fn init_thread_pool() {
    if let Ok(v) = std::env::var("ASER_THREADS") {
        if let Ok(threads) = v.parse::<usize>() {
            let _ = rayon::ThreadPoolBuilder::new()
                .num_threads(threads.max(1))
                .build_global();
        }
    }
}

/// Parse a scheme spec: "rqam:8x4:b=1.0" | "sqam:16" | "xqam:32" | "bpsk".
pub fn parse_scheme(spec: &str) -> CliResult<ModulationScheme> {
    let parts: Vec<&str> = spec.split(':').collect();
    let usage = |tok: &str| CliError::Usage(format!("cannot parse scheme '{spec}': bad token '{tok}'"));
    match parts.as_slice() {
        ["bpsk"] => Ok(ModulationScheme::Bpsk),
        ["sqam", m] => {
            let m: u32 = m.parse().map_err(|_| usage(m))?;
            Ok(ModulationScheme::sqam(m)?)
        }
        ["xqam", m] => {
            let m: u32 = m.parse().map_err(|_| usage(m))?;
            Ok(ModulationScheme::xqam(m)?)
        }
        ["rqam", grid, beta] => {
            let (mi, mq) = grid.split_once('x').ok_or_else(|| usage(grid))?;
            let m_i: u32 = mi.parse().map_err(|_| usage(grid))?;
            let m_q: u32 = mq.parse().map_err(|_| usage(grid))?;
            let b = beta.strip_prefix("b=").ok_or_else(|| usage(beta))?;
            let beta: f64 = b.parse().map_err(|_| usage(b))?;
            Ok(ModulationScheme::rqam(m_i, m_q, beta)?)
        }
        _ => Err(CliError::Usage(format!(
            "cannot parse scheme '{spec}': expected rqam:MIxMQ:b=BETA | sqam:M | xqam:M | bpsk"
        ))),
    }
}

/// Parse an SNR range "start:step:stop" (dB).
pub fn parse_snr_range(spec: &str) -> CliResult<Vec<f64>> {
    let parts: Vec<&str> = spec.split(':').collect();
    if parts.len() != 3 {
        return Err(CliError::Usage(format!(
            "cannot parse snr range '{spec}': expected start:step:stop"
        )));
    }
    let nums: Vec<f64> = parts
        .iter()
        .map(|p| {
            p.parse::<f64>()
                .map_err(|_| CliError::Usage(format!("cannot parse snr range '{spec}': bad number '{p}'")))
        })
        .collect::<CliResult<Vec<_>>>()?;
    Ok(aser::snr_grid(nums[0], nums[1], nums[2])?)
}

/// One named column of a CSV table.
struct Column {
    name: String,
    values: Vec<f64>,
}

/// Write a CSV with a comment-prefixed manifest header. Deterministic for
/// fixed (version, seed, parameters): the manifest deliberately carries no
/// timestamp so outputs stay byte-stable across runs.
fn write_csv(path: &Path, command: &str, seed: Option<u64>, snr_db: &[f64], cols: &[Column]) -> CliResult<()> {
    let mut text = String::new();
    let seed_part = seed.map(|s| format!(" seed={s}")).unwrap_or_default();
    writeln!(
        text,
        "# manifest tool=irs-aser version={VERSION} command=\"{command}\"{seed_part}"
    )
    .unwrap();
    write!(text, "snr_db").unwrap();
    for c in cols {
        write!(text, ",{}", c.name).unwrap();
    }
    writeln!(text).unwrap();
    for (i, db) in snr_db.iter().enumerate() {
        write!(text, "{db}").unwrap();
        for c in cols {
            write!(text, ",{:.12e}", c.values[i]).unwrap();
        }
        writeln!(text).unwrap();
    }
    if let Some(parent) = path.parent() {
        fs::create_dir_all(parent)?;
    }
    fs::write(path, text)?;
    Ok(())
}

fn method_column(
    method: CurveMethod,
    scheme: &ModulationScheme,
    n: u32,
    snr_db: &[f64],
    symbols: u64,
    seed: u64,
) -> CliResult<Column> {
    let terms = modem::decompose(scheme)?;
    let values: Vec<f64> = match method {
        CurveMethod::ClosedForm | CurveMethod::Quadrature => {
            let m = if method == CurveMethod::ClosedForm {
                Method::ClosedForm
            } else {
                Method::Quadrature
            };
            snr_db
                .iter()
                .map(|&db| Ok(aser::aser_from_terms(&terms, &link_params(n, db)?, m)?.clamped))
                .collect::<CliResult<Vec<_>>>()?
        }
        CurveMethod::LowSnr => snr_db
            .iter()
            .map(|&db| Ok(asymptotics::low_snr_from_terms(&terms, &link_params(n, db)?)))
            .collect::<CliResult<Vec<_>>>()?,
        CurveMethod::HighSnr => snr_db
            .iter()
            .map(|&db| {
                Ok(asymptotics::high_snr_from_terms(
                    &terms,
                    &link_params(n, db)?,
                    asymptotics::HighSnrVariant::Derived,
                )?)
            })
            .collect::<CliResult<Vec<_>>>()?,
        CurveMethod::AwgnBound => match scheme {
            ModulationScheme::Xqam { .. } => {
                return Err(CliError::Usage(
                    "awgn-bound is defined for rectangular schemes only".into(),
                ))
            }
            _ => snr_db
                .iter()
                .map(|&db| {
                    let g = 10f64.powf(db / 10.0);
                    let (m_i, m_q, beta) = rectangular_of(scheme);
                    Ok(asymptotics::aser_rqam_awgn_bound(m_i, m_q, beta, g)?)
                })
                .collect::<CliResult<Vec<_>>>()?,
        },
        CurveMethod::AwgnExact => snr_db
            .iter()
            .map(|&db| Ok(asymptotics::aser_awgn_exact(scheme, 10f64.powf(db / 10.0))?))
            .collect::<CliResult<Vec<_>>>()?,
        CurveMethod::MonteCarlo => {
            let mut warned = false;
            snr_db
                .iter()
                .map(|&db| {
                    let mut cfg =
                        SimulationConfig::new(*scheme, ChannelMode::Irs { n }, db);
                    cfg.num_symbols = symbols;
                    cfg.seed = seed;
                    let rep = montecarlo::simulate_ser(&cfg)?;
                    if rep.low_count_warning && !warned {
                        eprintln!(
                            "warning: fewer than 100 errors at some points; \
                             SER below ~{:.1e} is not reliably observable with {} symbols",
                            100.0 / symbols as f64,
                            symbols
                        );
                        warned = true;
                    }
                    Ok(rep.ser_estimate)
                })
                .collect::<CliResult<Vec<_>>>()?
        }
    };
    Ok(Column {
        name: method.label().to_string(),
        values,
    })
}

fn rectangular_of(scheme: &ModulationScheme) -> (u32, u32, f64) {
    match *scheme {
        ModulationScheme::Rqam { m_i, m_q, beta } => (m_i, m_q, beta),
        ModulationScheme::Sqam { m } => {
            let r = (m as f64).sqrt().round() as u32;
            (r, r, 1.0)
        }
        ModulationScheme::Bpsk => (2, 1, 0.0),
        ModulationScheme::Xqam { .. } => unreachable!("checked by caller"),
    }
}

/// `curve` subcommand.
pub fn cmd_curve(args: &CurveArgs) -> CliResult<()> {
    let scheme = parse_scheme(&args.scheme)?;
    let snr_db = parse_snr_range(&args.snr)?;
    let methods: Vec<CurveMethod> = args
        .methods
        .split(',')
        .map(|m| CurveMethod::parse(m.trim()).map_err(|e| CliError::Usage(e.to_string())))
        .collect::<CliResult<Vec<_>>>()?;
    if methods.is_empty() {
        return Err(CliError::Usage("no methods requested".into()));
    }
    let cols = methods
        .iter()
        .map(|&m| method_column(m, &scheme, args.elements, &snr_db, args.symbols, args.seed))
        .collect::<CliResult<Vec<_>>>()?;
    let command = format!(
        "curve --scheme {} -N {} --snr {} --methods {}",
        args.scheme, args.elements, args.snr, args.methods
    );
    write_csv(&args.out, &command, Some(args.seed), &snr_db, &cols)?;
    Ok(())
}

/// `figure` subcommand; returns the files written.
pub fn cmd_figure(id: FigureId, out_dir: &Path, symbols: u64, seed: u64) -> CliResult<Vec<PathBuf>> {
    fs::create_dir_all(out_dir)?;
    let grid = aser::snr_grid(-20.0, 0.5, 30.0)?;
    let mut files = Vec::new();

    let closed = |scheme: &ModulationScheme, n: u32, grid: &[f64]| -> CliResult<Vec<f64>> {
        let terms = modem::decompose(scheme)?;
        grid.iter()
            .map(|&db| {
                Ok(aser::aser_from_terms(&terms, &link_params(n, db)?, Method::ClosedForm)?.clamped)
            })
            .collect()
    };

    match id {
        FigureId::Fig2 => {
            let scheme = ModulationScheme::rqam(4, 2, 1.0)?;
            let cols = vec![
                Column { name: "irs_n16".into(), values: closed(&scheme, 16, &grid)? },
                Column { name: "irs_n32".into(), values: closed(&scheme, 32, &grid)? },
                Column {
                    name: "awgn".into(),
                    values: grid
                        .iter()
                        .map(|&db| Ok(asymptotics::aser_awgn_exact(&scheme, 10f64.powf(db / 10.0))?))
                        .collect::<CliResult<Vec<_>>>()?,
                },
            ];
            let path = out_dir.join("fig2.csv");
            write_csv(&path, "figure fig2", None, &grid, &cols)?;
            files.push(path);
        }
        FigureId::Fig3 => {
            let scheme = ModulationScheme::rqam(4, 2, 1.0)?;
            let ns = [4u32, 8, 16, 32, 64, 128, 256];
            let cols = ns
                .iter()
                .map(|&n| {
                    Ok(Column {
                        name: format!("analytic_n{n}"),
                        values: closed(&scheme, n, &grid)?,
                    })
                })
                .collect::<CliResult<Vec<_>>>()?;
            let path = out_dir.join("fig3_analytic.csv");
            write_csv(&path, "figure fig3", None, &grid, &cols)?;
            files.push(path);

            let mc_grid = aser::snr_grid(-20.0, 5.0, 30.0)?;
            let mc_cols = ns
                .iter()
                .map(|&n| {
                    let values = mc_grid
                        .iter()
                        .map(|&db| {
                            let mut cfg =
                                SimulationConfig::new(scheme, ChannelMode::Irs { n }, db);
                            cfg.num_symbols = symbols;
                            cfg.seed = seed.wrapping_add(n as u64);
                            Ok(montecarlo::simulate_ser(&cfg)?.ser_estimate)
                        })
                        .collect::<CliResult<Vec<_>>>()?;
                    Ok(Column { name: format!("montecarlo_n{n}"), values })
                })
                .collect::<CliResult<Vec<_>>>()?;
            let path = out_dir.join("fig3_montecarlo.csv");
            write_csv(&path, "figure fig3", Some(seed), &mc_grid, &mc_cols)?;
            files.push(path);
        }
        FigureId::Fig4 => {
            let mut cols = Vec::new();
            for &(m_i, m_q) in &[(8u32, 4u32), (16, 2)] {
                for &beta in &[1.0, 8.0] {
                    for &n in &[16u32, 32, 64] {
                        let scheme = ModulationScheme::rqam(m_i, m_q, beta)?;
                        cols.push(Column {
                            name: format!("rqam{m_i}x{m_q}_b{beta}_n{n}"),
                            values: closed(&scheme, n, &grid)?,
                        });
                    }
                }
            }
            let path = out_dir.join("fig4.csv");
            write_csv(&path, "figure fig4", None, &grid, &cols)?;
            files.push(path);
        }
        FigureId::Fig5 => {
            let mut cols = Vec::new();
            for &beta in &[0.25, 0.5, 0.75, 1.0] {
                let scheme = ModulationScheme::rqam(8, 4, beta)?;
                cols.push(Column {
                    name: format!("rqam8x4_b{beta}"),
                    values: closed(&scheme, 32, &grid)?,
                });
            }
            let path = out_dir.join("fig5.csv");
            write_csv(&path, "figure fig5", None, &grid, &cols)?;
            files.push(path);
        }
        FigureId::Fig6 => {
            let schemes: Vec<(String, ModulationScheme)> = vec![
                ("bpsk".into(), ModulationScheme::Bpsk),
                ("rqam2x2".into(), ModulationScheme::rqam(2, 2, 1.0)?),
                ("rqam4x2".into(), ModulationScheme::rqam(4, 2, 1.0)?),
                ("rqam4x4".into(), ModulationScheme::rqam(4, 4, 1.0)?),
                ("rqam8x4".into(), ModulationScheme::rqam(8, 4, 1.0)?),
                ("rqam8x8".into(), ModulationScheme::rqam(8, 8, 1.0)?),
                ("rqam16x8".into(), ModulationScheme::rqam(16, 8, 1.0)?),
                ("rqam16x16".into(), ModulationScheme::rqam(16, 16, 1.0)?),
            ];
            let cols = schemes
                .into_iter()
                .map(|(name, s)| {
                    Ok(Column { name, values: closed(&s, 32, &grid)? })
                })
                .collect::<CliResult<Vec<_>>>()?;
            let path = out_dir.join("fig6.csv");
            write_csv(&path, "figure fig6", None, &grid, &cols)?;
            files.push(path);
        }
        FigureId::Fig7 => {
            let rqam = ModulationScheme::rqam(8, 4, 1.0)?;
            let xqam = ModulationScheme::xqam(32)?;
            let mut cols = Vec::new();
            for &n in &[16u32, 32, 64] {
                cols.push(Column {
                    name: format!("rqam8x4_n{n}"),
                    values: closed(&rqam, n, &grid)?,
                });
                cols.push(Column {
                    name: format!("xqam32_n{n}"),
                    values: closed(&xqam, n, &grid)?,
                });
            }
            let path = out_dir.join("fig7.csv");
            write_csv(&path, "figure fig7", None, &grid, &cols)?;
            files.push(path);
        }
    }

    let plot = out_dir.join("plot.py");
    fs::write(&plot, PLOT_SCRIPT)?;
    files.push(plot);
    Ok(files)
}

const PLOT_SCRIPT: &str = r##"#!/usr/bin/env python3
"""Plot every CSV in this directory on a semilog-y SER axis."""
import csv
import glob
import os

import matplotlib.pyplot as plt

for path in sorted(glob.glob(os.path.join(os.path.dirname(__file__) or ".", "*.csv"))):
    with open(path) as fh:
        rows = [r for r in csv.reader(fh) if not r[0].startswith("#")]
    header, data = rows[0], rows[1:]
    snr = [float(r[0]) for r in data]
    plt.figure()
    for i, name in enumerate(header[1:], start=1):
        ys = [float(r[i]) for r in data]
        plt.semilogy(snr, [max(y, 1e-12) for y in ys], label=name)
    plt.xlabel("average SNR (dB)")
    plt.ylabel("ASER")
    plt.grid(True, which="both", alpha=0.3)
    plt.legend(fontsize=7)
    out = os.path.splitext(path)[0] + ".png"
    plt.savefig(out, dpi=150, bbox_inches="tight")
    print("wrote", out)
"##;

/// Run the validation suite, writing one line per check. Returns whether all
/// checks passed.
pub fn run_validate(level: ValidateLevel, seed: u64, out: &mut dyn Write) -> CliResult<bool> {
    let mut all_ok = true;
    let mut check = |out: &mut dyn Write, name: &str, ok: bool, detail: String| -> CliResult<()> {
        all_ok &= ok;
        writeln!(out, "{} {name}: {detail}", if ok { "PASS" } else { "FAIL" })?;
        Ok(())
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    // Gaussian Q against the Craig integral on a grid.
    let mut worst = 0.0f64;
    for i in 1..=20 {
        let t = 0.25 * i as f64;
        let q = specfun::gaussian_q(t)?;
        let z = specfun::qz(t, std::f64::consts::FRAC_PI_2)?;
        worst = worst.max((q - z).abs() / q.max(1e-300));
    }
    check(out, "gaussian-q-craig-equivalence", worst < 1e-8, format!("max rel diff {worst:.3e}"))?;

    // Term-set zero-SNR limits.
    let schemes = [
        ModulationScheme::Bpsk,
        ModulationScheme::rqam(4, 2, 1.0)?,
        ModulationScheme::rqam(8, 4, 1.0)?,
        ModulationScheme::rqam(16, 2, 8.0)?,
        ModulationScheme::sqam(16)?,
        ModulationScheme::xqam(32)?,
        ModulationScheme::xqam(128)?,
    ];
    let mut worst = 0.0f64;
    for s in &schemes {
        let limit = modem::decompose(s)?.zero_snr_limit();
        worst = worst.max((limit - (1.0 - 1.0 / s.order() as f64)).abs());
    }
    check(out, "term-set-zero-snr-limits", worst < 1e-12, format!("max abs diff {worst:.3e}"))?;

    // Closed form vs quadrature on randomized tuples.
    let tuples = if level == ValidateLevel::Full { 50 } else { 10 };
    let ns = [16u32, 32, 64, 128, 256];
    let mut worst = 0.0f64;
    for _ in 0..tuples {
        let scheme = schemes[rng.gen_range(0..schemes.len())];
        let n = ns[rng.gen_range(0..ns.len())];
        let db = rng.gen_range(-20.0..30.0);
        let link = link_params(n, db)?;
        let terms = modem::decompose(&scheme)?;
        let c = aser::aser_from_terms(&terms, &link, Method::ClosedForm)?.raw;
        let q = aser::aser_from_terms(&terms, &link, Method::Quadrature)?.raw;
        worst = worst.max((c - q).abs() / q.abs().max(1e-300));
    }
    check(out, "closed-vs-quadrature", worst < 1e-6, format!("{tuples} tuples, max rel diff {worst:.3e}"))?;

    // CLT moments.
    let (n_clt, samples) = if level == ValidateLevel::Full { (64u32, 1_000_000u64) } else { (16, 200_000) };
    let stats = montecarlo::validate_clt(n_clt, samples, seed)?;
    let exp_mean = std::f64::consts::PI * n_clt as f64 / 4.0;
    let exp_var = channel::element_variance() * n_clt as f64;
    let mean_ok = (stats.mean_a - exp_mean).abs() / exp_mean < 0.01;
    let var_ok = (stats.var_a - exp_var).abs() / exp_var < 0.03;
    check(
        out,
        "clt-moments",
        mean_ok && var_ok,
        format!(
            "N={n_clt}: mean {:.4} (ref {:.4}), var {:.4} (ref {:.4})",
            stats.mean_a, exp_mean, stats.var_a, exp_var
        ),
    )?;

    // AWGN BPSK simulation against the Q function.
    let mut cfg = SimulationConfig::new(ModulationScheme::Bpsk, ChannelMode::Awgn, 6.0);
    cfg.num_symbols = if level == ValidateLevel::Full { 1_000_000 } else { 200_000 };
    cfg.seed = seed;
    let rep = montecarlo::simulate_ser(&cfg)?;
    let expected = specfun::gaussian_q((2.0 * 10f64.powf(0.6)).sqrt())?;
    let ok = (rep.ser_estimate - expected).abs() < 3.5 * rep.standard_error;
    check(
        out,
        "awgn-bpsk-monte-carlo",
        ok,
        format!("est {:.4e} ref {expected:.4e} se {:.1e}", rep.ser_estimate, rep.standard_error),
    )?;

    if level == ValidateLevel::Full {
        // Monte Carlo vs closed form over the IRS cascade.
        let scheme = ModulationScheme::rqam(4, 2, 1.0)?;
        let mut worst_sigma = 0.0f64;
        // Points where the predicted SER (2e-1 .. 3e-2) gives both a healthy
        // error count in 1e6 symbols and a small approximation bias at N=64.
        for &db in &[-26.0, -24.0, -22.0] {
            let mut cfg = SimulationConfig::new(scheme, ChannelMode::Irs { n: 64 }, db);
            cfg.num_symbols = 1_000_000;
            cfg.seed = seed;
            let rep = montecarlo::simulate_ser(&cfg)?;
            let link = link_params(64, db)?;
            let analytic = aser::aser(&scheme, &link)?.clamped;
            let sigma = (rep.ser_estimate - analytic).abs() / rep.standard_error.max(1e-300);
            worst_sigma = worst_sigma.max(sigma);
        }
        check(
            out,
            "irs-monte-carlo-vs-closed-form",
            worst_sigma < 3.5,
            format!("4x2-QAM N=64, worst deviation {worst_sigma:.2} sigma"),
        )?;

        // KS ordering: the CLT reference fits better at large N.
        let ks_small = montecarlo::validate_clt(4, 200_000, seed)?.ks_statistic;
        let ks_large = montecarlo::validate_clt(256, 200_000, seed)?.ks_statistic;
        check(
            out,
            "clt-ks-ordering",
            ks_large < ks_small,
            format!("KS(N=256)={ks_large:.4} < KS(N=4)={ks_small:.4}"),
        )?;
    }

    writeln!(out, "{}", if all_ok { "RESULT PASS" } else { "RESULT FAIL" })?;
    Ok(all_ok)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scheme_grammar() {
        assert_eq!(parse_scheme("bpsk").unwrap(), ModulationScheme::Bpsk);
        assert_eq!(
            parse_scheme("rqam:8x4:b=1.0").unwrap(),
            ModulationScheme::Rqam { m_i: 8, m_q: 4, beta: 1.0 }
        );
        assert_eq!(parse_scheme("sqam:16").unwrap(), ModulationScheme::Sqam { m: 16 });
        assert_eq!(parse_scheme("xqam:32").unwrap(), ModulationScheme::Xqam { m: 32 });
    }

    #[test]
    fn scheme_grammar_rejects() {
        for bad in ["", "qam:16", "rqam:8x4", "rqam:8y4:b=1", "xqam:64", "sqam:12", "rqam:8x4:c=1"] {
            let e = parse_scheme(bad).unwrap_err();
            assert_eq!(e.exit_code(), 2, "{bad}");
        }
    }

    #[test]
    fn xqam64_error_names_admissible_sizes() {
        let e = parse_scheme("xqam:64").unwrap_err();
        assert!(e.message().contains("32"));
        assert!(e.message().contains("2048"));
    }

    #[test]
    fn snr_range_grammar() {
        let g = parse_snr_range("-20:1:10").unwrap();
        assert_eq!(g.len(), 31);
        assert!(parse_snr_range("0:0:10").is_err());
        assert!(parse_snr_range("1:2").is_err());
        assert!(parse_snr_range("a:b:c").is_err());
    }

    #[test]
    fn validate_fast_passes_and_is_deterministic() {
        let mut buf1 = Vec::new();
        let mut buf2 = Vec::new();
        assert!(run_validate(ValidateLevel::Fast, 42, &mut buf1).unwrap());
        assert!(run_validate(ValidateLevel::Fast, 42, &mut buf2).unwrap());
        assert_eq!(buf1, buf2);
        let text = String::from_utf8(buf1).unwrap();
        assert!(text.contains("RESULT PASS"));
    }
}
