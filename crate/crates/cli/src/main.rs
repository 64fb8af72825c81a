use std::fs;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use prioq_core::asymptotics::{find_critical_params, ScanParam, ScanPath};
use prioq_core::gf::boundary_gf;
use prioq_core::oracle::{solve_truncated_with, SolveMethod, SolverOptions};
use prioq_core::report::{analyze, validate, RecordSelection, Report, ValidateOptions};
use prioq_core::sim::{default_warmup, simulate, tv_distance, SimConfig, SimParams};
use prioq_core::{Error, ModelParams};

#[derive(Parser)]
#[command(name = "prioq", version, about = "Tail asymptotics of a discrete-time two-class preemptive priority queue")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Regime, decay rates, powers and constants from the closed forms.
    Analyze {
        #[command(flatten)]
        params: ParamArgs,
        #[command(flatten)]
        out: OutputArgs,
        #[command(flatten)]
        records: RecordArgs,
    },
    /// Closed forms refereed by the truncated solver (and optionally the simulator).
    Validate {
        #[command(flatten)]
        params: ParamArgs,
        #[command(flatten)]
        out: OutputArgs,
        #[command(flatten)]
        records: RecordArgs,
        /// Truncation extents NH,NL.
        #[arg(long, value_parser = parse_pair::<usize>, default_value = "400,400")]
        trunc: (usize, usize),
        /// Fit window A,B (indices along the tail direction).
        #[arg(long, value_parser = parse_pair::<usize>, default_value = "40,80")]
        fit_window: (usize, usize),
        /// Also simulate this many slots and report the total-variation distance.
        #[arg(long)]
        simulate: Option<u64>,
        #[arg(long, default_value_t = 42)]
        seed: u64,
    },
    /// Bisect along a parameter path to the boundary case F(y0) = 0.
    Critical {
        /// Anchor parameters; the scanned value replaces one coordinate.
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, value_enum, default_value = "q")]
        scan: ScanArg,
        /// Scan range A,B.
        #[arg(long, value_parser = parse_pair::<f64>)]
        range: (f64, f64),
        /// Write the parameter file here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Solve the truncated chain and write the grid.
    Solve {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, value_parser = parse_pair::<usize>, default_value = "200,200")]
        trunc: (usize, usize),
        #[arg(long, value_enum, default_value = "iterative")]
        method: MethodArg,
        /// Converge every cell in relative terms (slower, needed for deep tails).
        #[arg(long)]
        tails: bool,
        /// Output file (CSV `i,j,pi` unless --binary); standard output if absent.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        binary: bool,
    },
    /// Simulate the slot dynamics and write occupation frequencies.
    Simulate {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, default_value_t = 10_000_000)]
        slots: u64,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long)]
        warmup: Option<u64>,
        /// Tally window NH,NL.
        #[arg(long, value_parser = parse_pair::<usize>, default_value = "60,60")]
        tally: (usize, usize),
        /// Compare against a truncated solve of this size and report the distance.
        #[arg(long, value_parser = parse_pair::<usize>)]
        reference: Option<(usize, usize)>,
        /// Write the frequency grid as CSV here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct ParamArgs {
    #[arg(long)]
    p: Option<f64>,
    #[arg(long)]
    q: Option<f64>,
    #[arg(long = "mu-h")]
    mu_h: Option<f64>,
    #[arg(long = "mu-l")]
    mu_l: Option<f64>,
    /// Flat `key = value` file with p, q, mu_h, mu_l.
    #[arg(long, conflicts_with_all = ["p", "q", "mu_h", "mu_l"])]
    config: Option<PathBuf>,
}

#[derive(Args)]
struct OutputArgs {
    #[arg(long)]
    json: bool,
    #[arg(long, conflicts_with = "json")]
    csv: bool,
}

#[derive(Args)]
struct RecordArgs {
    /// Fixed high-priority counts for the joint low-direction records.
    #[arg(long, value_delimiter = ',', default_value = "1,2,3")]
    joint_i: Vec<usize>,
    /// Fixed low-priority counts for the joint high-direction records.
    #[arg(long, value_delimiter = ',', default_value = "0,1")]
    joint_j: Vec<usize>,
}

#[derive(Clone, Copy, ValueEnum)]
enum ScanArg {
    Q,
    P,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Direct,
    Iterative,
}

fn parse_pair<T: std::str::FromStr>(s: &str) -> Result<(T, T), String>
where
    T::Err: std::fmt::Display,
{
    let (a, b) = s.split_once(',').ok_or_else(|| format!("expected A,B, got `{s}`"))?;
    let a = a.trim().parse().map_err(|e| format!("`{a}`: {e}"))?;
    let b = b.trim().parse().map_err(|e| format!("`{b}`: {e}"))?;
    Ok((a, b))
}

/// Outcome classes and their exit codes.
enum Failure {
    Input(String),
    Validation(Vec<String>),
    NoConvergence(String),
    NoBracket(String),
    Io(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Input(_) => 2,
            Failure::Validation(_) => 3,
            Failure::NoConvergence(_) => 4,
            Failure::NoBracket(_) => 5,
            Failure::Io(_) => 1,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::BudgetExceeded { .. } => Failure::NoConvergence(e.to_string()),
            Error::NoBracket { .. } => Failure::NoBracket(e.to_string()),
            Error::Inconsistent(_) => Failure::Io(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e.to_string())
    }
}

impl ParamArgs {
    fn resolve(&self) -> Result<ModelParams, Failure> {
        if let Some(path) = &self.config {
            let text = fs::read_to_string(path)
                .map_err(|e| Failure::Input(format!("cannot read {}: {e}", path.display())))?;
            return Ok(ModelParams::from_config_str(&text)?);
        }
        match (self.p, self.q, self.mu_h, self.mu_l) {
            (Some(p), Some(q), Some(mh), Some(ml)) => Ok(ModelParams::new(p, q, mh, ml)?),
            _ => Err(Failure::Input(
                "give --p --q --mu-h --mu-l or --config FILE".into(),
            )),
        }
    }
}

fn selection(r: &RecordArgs) -> RecordSelection {
    RecordSelection {
        joint_i: r.joint_i.clone(),
        joint_j: r.joint_j.clone(),
    }
}

fn emit_report(report: &Report, out: &OutputArgs) -> Result<(), Failure> {
    let text = if out.json {
        report.to_json()? + "\n"
    } else if out.csv {
        report.to_csv()
    } else {
        render_text(report)
    };
    io::stdout().write_all(text.as_bytes())?;
    Ok(())
}

fn render_text(r: &Report) -> String {
    let p = &r.params;
    let g = &r.regime;
    let mut s = format!(
        "params   p={} q={} mu_h={} mu_l={}  rho_h={:.6} rho_l={:.6} rho={:.6}\n",
        p.p, p.q, p.mu_h, p.mu_l, p.rho_h, p.rho_l, p.rho
    );
    s += &format!(
        "regime   {}  F(y0)={:.6e}  singularity={:.9}  y0={:.9} 1/eta1={:.9}\n",
        g.tag.as_str(),
        g.f_at_y0,
        g.dominant_singularity,
        g.y0,
        1.0 / g.eta1
    );
    s += &format!(
        "spectral pi00={:.9} r0={:.9} w={:.9} C={:.10} (limit form {:.10})\n",
        g.pi00, g.r0, g.w, g.high_c, g.high_c_limit
    );
    for rec in &r.asymptotics {
        let f = rec.formula;
        s += &format!(
            "{:<16} rate={:.9} power={:<5} constant={:.9e}",
            rec.name, f.decay_rate, f.power, f.constant
        );
        if let (Some(fit), Some(gap)) = (rec.fit, rec.constant_gap) {
            s += &format!(
                "  fit={:.9e} gap={:.3e} {}",
                fit.constant,
                gap,
                if rec.passed == Some(true) { "ok" } else { "FAIL" }
            );
        }
        s.push('\n');
    }
    if let Some(o) = &r.oracle {
        s += &format!(
            "oracle   {}x{} sweeps={} residual={:.2e} edge_mass={:.2e} pi00={:.12} gap={:.2e}\n",
            o.nh + 1,
            o.nl + 1,
            o.sweeps,
            o.residual,
            o.edge_mass,
            o.pi00,
            o.pi00_gap
        );
    }
    if let Some(sim) = &r.simulation {
        s += &format!(
            "simulate slots={} seed={} pi00={:.6}+-{:.1e} tv={}\n",
            sim.slots,
            sim.seed,
            sim.pi00,
            sim.pi00_std_err,
            sim.tv_distance.map_or("n/a".into(), |t| format!("{t:.4e}"))
        );
    }
    for n in &r.notes {
        s += &format!("note     {}: used {:.9} (alternative {:.9})\n", n.topic, n.used, n.alternative);
    }
    s
}

fn open_out(path: &Option<PathBuf>) -> Result<Box<dyn Write>, Failure> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(fs::File::create(p).map_err(|e| {
            Failure::Io(format!("cannot create {}: {e}", p.display()))
        })?)),
        None => Box::new(BufWriter::new(io::stdout())),
    })
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Analyze {
            params,
            out,
            records,
        } => {
            let m = params.resolve()?;
            let report = analyze(&m, &selection(&records))?;
            emit_report(&report, &out)
        }
        Command::Validate {
            params,
            out,
            records,
            trunc,
            fit_window,
            simulate,
            seed,
        } => {
            let m = params.resolve()?;
            let opts = ValidateOptions {
                nh: trunc.0,
                nl: trunc.1,
                window: fit_window,
                simulate: simulate.map(|n| (n, seed)),
                ..ValidateOptions::default()
            };
            let v = validate(&m, &selection(&records), &opts)?;
            emit_report(&v.report, &out)?;
            if v.failures.is_empty() {
                Ok(())
            } else {
                Err(Failure::Validation(v.failures))
            }
        }
        Command::Critical {
            params,
            scan,
            range,
            out,
        } => {
            let anchor = params.resolve()?;
            let path = ScanPath {
                param: match scan {
                    ScanArg::Q => ScanParam::Q,
                    ScanArg::P => ScanParam::P,
                },
                lo: range.0,
                hi: range.1,
            };
            let m = find_critical_params(&anchor, &path)?;
            let g = boundary_gf(&m)?;
            let f = g.big_f_real(g.spectral.y0);
            let mut w = open_out(&out)?;
            writeln!(w, "# boundary case: F(y0) = {f:e}, y0 = {:?}", g.spectral.y0)?;
            write!(w, "{}", m.to_config_string())?;
            w.flush()?;
            Ok(())
        }
        Command::Solve {
            params,
            trunc,
            method,
            tails,
            out,
            binary,
        } => {
            let m = params.resolve()?;
            let mut opts = match method {
                MethodArg::Direct => SolverOptions::new(SolveMethod::Direct),
                MethodArg::Iterative => SolverOptions::new(SolveMethod::Iterative),
            };
            if tails {
                opts.rel_tol = SolverOptions::for_tails().rel_tol;
            }
            let grid = solve_truncated_with(&m, trunc.0, trunc.1, &opts)?;
            let mut w = open_out(&out)?;
            if binary {
                grid.write_binary(&mut w)?;
            } else {
                grid.write_csv(&mut w)?;
            }
            w.flush()?;
            eprintln!(
                "solved {}x{}: sweeps={} residual={:.2e} edge_mass={:.2e}",
                grid.nh() + 1,
                grid.nl() + 1,
                grid.sweeps(),
                grid.residual().unwrap_or(f64::NAN),
                grid.edge_mass()
            );
            Ok(())
        }
        Command::Simulate {
            params,
            slots,
            seed,
            warmup,
            tally,
            reference,
            out,
        } => {
            let m = params.resolve()?;
            let sp = SimParams::from(m);
            let cfg = SimConfig {
                warmup_slots: warmup.unwrap_or_else(|| default_warmup(&sp)),
                nh: tally.0,
                nl: tally.1,
                ..SimConfig::new(sp, slots, seed)
            };
            let est = simulate(&cfg)?;
            let tv = match reference {
                Some((nh, nl)) => {
                    let grid = solve_truncated_with(&m, nh, nl, &SolverOptions::new(SolveMethod::Iterative))?;
                    Some(tv_distance(&est, &grid))
                }
                None => None,
            };
            if out.is_some() {
                let mut w = open_out(&out)?;
                est.to_grid()?.write_csv(&mut w)?;
                w.flush()?;
            }
            let summary = serde_json::json!({
                "slots": est.slots,
                "seed": est.seed,
                "warmup": est.warmup,
                "overflow": est.overflow,
                "pi00": est.get(0, 0),
                "pi00_std_err": est.std_err_at(0, 0),
                "tv_distance": tv,
            });
            println!("{summary}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            match &f {
                Failure::Validation(items) => {
                    eprintln!("validation failed ({} record(s)):", items.len());
                    for it in items {
                        eprintln!("  {it}");
                    }
                }
                Failure::Input(m) | Failure::NoConvergence(m) | Failure::NoBracket(m) | Failure::Io(m) => {
                    eprintln!("error: {m}")
                }
            }
            ExitCode::from(f.code())
        }
    }
}
