use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use evt_cli::commands::{
    cmd_constants, cmd_diagnose, cmd_lambert, cmd_simulate, cmd_table, cmd_ugamma, parse_methods,
    Diagnosis, SimulateArgs, TableId, UgammaArgs, UgammaMode,
};
use evt_cli::dist::{from_flags, DistSpec};
use evt_cli::number::{
    parse_count, parse_grid, parse_n_list, parse_real, parse_real_list, parse_step_range,
};
use evt_cli::record::{Format, OutputRecord};
use evt_cli::{CliError, Result};
use evt_core::convergence::Grid;
use evt_core::special_fn::Branch;

/// Norming constants for maxima of Weibull-like distributions.
#[derive(Debug, Parser)]
#[command(name = "evt", version)]
struct Cli {
    /// Emit JSON instead of CSV.
    #[arg(long, global = true)]
    json: bool,
    /// Write to FILE instead of stdout.
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct DistFlags {
    /// Generalized Weibull tail K x^alpha exp(-C x^tau): K=..,C=..,tau=..,alpha=..[,x0=..]
    #[arg(long, value_name = "SPEC")]
    gw: Option<String>,
    /// Gamma law: nu=..,theta=..
    #[arg(long, value_name = "SPEC")]
    gamma: Option<String>,
    /// Chi-square law with M degrees of freedom.
    #[arg(long, value_name = "M")]
    chi2: Option<String>,
}

impl DistFlags {
    fn spec(&self) -> Result<DistSpec> {
        from_flags(
            self.gw.as_deref(),
            self.gamma.as_deref(),
            self.chi2.as_deref(),
        )
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Norming constants per sample size.
    Constants {
        #[command(flatten)]
        dist: DistFlags,
        /// Sample sizes: 10,100 or decade ranges 1e1:1e6.
        #[arg(long, default_value = "10,100,1000")]
        n: String,
        /// Any of exact,standard,improved.
        #[arg(long, default_value = "exact,standard,improved")]
        methods: String,
    },
    /// Reproduce a published table (1, 2, 3 or 4).
    Table { id: u32 },
    /// Simulate normalized maxima.
    Simulate {
        #[command(flatten)]
        dist: DistFlags,
        #[arg(long, default_value = "100")]
        n: String,
        #[arg(long, default_value = "10000")]
        reps: String,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Normalizations applied to the same maxima.
        #[arg(long, default_value = "improved,standard")]
        methods: String,
        /// Also write the 50-bin histogram over [-4, 8] to FILE.
        #[arg(long, value_name = "FILE")]
        hist: Option<PathBuf>,
    },
    /// Convergence diagnostics.
    Diagnose {
        #[command(flatten)]
        dist: DistFlags,
        #[arg(long, default_value = "exact")]
        method: String,
        /// Sample sizes for the rate or perturbation report.
        #[arg(long, default_value = "1e2:1e8")]
        ngrid: String,
        /// Evaluation grid lo:hi:points.
        #[arg(long, default_value = "-3:6:201", allow_hyphen_values = true)]
        xgrid: String,
        /// Compare the exact constants with METHOD term by term.
        #[arg(long, value_name = "METHOD", conflicts_with = "optimal_a")]
        against: Option<String>,
        /// Scan a = 1/C + delta/b (needs tau = 1).
        #[arg(long)]
        optimal_a: bool,
        /// Sample size for the scan.
        #[arg(long, default_value = "1e4")]
        n: String,
        /// delta range lo:hi:step.
        #[arg(long, default_value = "0:2:0.1", allow_hyphen_values = true)]
        delta: String,
    },
    /// Real branches of the Lambert W function.
    Lambert {
        #[arg(long, value_enum, default_value = "0", allow_hyphen_values = true)]
        branch: BranchArg,
        /// Comma-separated arguments.
        #[arg(long, allow_hyphen_values = true)]
        x: String,
    },
    /// Large root of t^gamma e^t D(1/t) = x with D(t) = d0 + d1 t.
    Ugamma {
        #[arg(long, allow_hyphen_values = true)]
        gamma: String,
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        d0: String,
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        d1: String,
        #[arg(long)]
        x: String,
        #[arg(long, default_value_t = 1)]
        order: usize,
        #[arg(long, value_enum, default_value = "numeric")]
        mode: ModeArg,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum BranchArg {
    #[value(name = "0")]
    Principal,
    #[value(name = "-1")]
    Secondary,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ModeArg {
    Numeric,
    Expansion,
}

fn xgrid(s: &str) -> Result<Grid> {
    let (lo, hi, pts) = parse_grid(s)?;
    Ok(Grid::new(lo, hi, pts)?)
}

fn method(s: &str) -> Result<evt_core::norming::Method> {
    match parse_methods(s)?[..] {
        [m] => Ok(m),
        _ => Err(CliError::Usage(format!("expected one method, got {s:?}"))),
    }
}

fn emit(rec: &OutputRecord, format: Format, path: Option<&PathBuf>) -> Result<()> {
    match path {
        Some(p) => {
            let mut w = BufWriter::new(File::create(p)?);
            rec.write(format, &mut w)?;
            w.flush()?;
        }
        None => {
            let stdout = io::stdout();
            let mut w = stdout.lock();
            rec.write(format, &mut w)?;
        }
    }
    Ok(())
}

fn echo() -> String {
    let mut parts = vec!["evt".to_string()];
    let mut args = std::env::args().skip(1);
    while let Some(a) = args.next() {
        match a.as_str() {
            "--out" | "--hist" => {
                args.next();
            }
            s if s.starts_with("--out=") || s.starts_with("--hist=") => {}
            _ => parts.push(a),
        }
    }
    parts.join(" ")
}

fn run(cli: Cli) -> Result<()> {
    let format = if cli.json { Format::Json } else { Format::Csv };
    let mut extra = None;
    let mut rec = match cli.command {
        Command::Constants { dist, n, methods } => {
            cmd_constants(&dist.spec()?, &parse_n_list(&n)?, &parse_methods(&methods)?)?
        }
        Command::Table { id } => cmd_table(TableId::from_number(id)?)?,
        Command::Simulate {
            dist,
            n,
            reps,
            seed,
            methods,
            hist,
        } => {
            let args = SimulateArgs {
                dist: dist.spec()?,
                n: parse_count(&n)?,
                reps: parse_count(&reps)? as usize,
                seed,
                methods: parse_methods(&methods)?,
            };
            let (maxima, h) = cmd_simulate(&args)?;
            extra = hist.map(|p| (h, p));
            maxima
        }
        Command::Diagnose {
            dist,
            method: m,
            ngrid,
            xgrid: xg,
            against,
            optimal_a,
            n,
            delta,
        } => {
            let what = if optimal_a {
                Diagnosis::OptimalA {
                    n: parse_count(&n)?,
                    deltas: parse_step_range(&delta)?,
                }
            } else if let Some(a) = against {
                Diagnosis::Perturbation {
                    method: method(&a)?,
                    ns: parse_n_list(&ngrid)?,
                }
            } else {
                Diagnosis::Rate {
                    method: method(&m)?,
                    ns: parse_n_list(&ngrid)?,
                }
            };
            cmd_diagnose(&dist.spec()?, &what, &xgrid(&xg)?)?
        }
        Command::Lambert { branch, x } => {
            let b = match branch {
                BranchArg::Principal => Branch::Principal,
                BranchArg::Secondary => Branch::Secondary,
            };
            cmd_lambert(b, &parse_real_list(&x)?)?
        }
        Command::Ugamma {
            gamma,
            d0,
            d1,
            x,
            order,
            mode,
        } => cmd_ugamma(&UgammaArgs {
            gamma: parse_real(&gamma)?,
            d: [parse_real(&d0)?, parse_real(&d1)?],
            xs: parse_real_list(&x)?,
            order,
            mode: match mode {
                ModeArg::Numeric => UgammaMode::Numeric,
                ModeArg::Expansion => UgammaMode::Expansion,
            },
        })?,
    };
    let cmd = echo();
    rec.command = cmd.clone();
    emit(&rec, format, cli.out.as_ref())?;
    if let Some((mut h, path)) = extra {
        h.command = cmd;
        emit(&h, format, Some(&path))?;
    }
    Ok(())
}

fn init_threads() -> Result<()> {
    if let Ok(v) = std::env::var("EVT_THREADS") {
        let n = parse_count(&v)? as usize;
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::Usage(format!("EVT_THREADS: {e}")))?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match init_threads().and_then(|()| run(cli)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("evt: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
