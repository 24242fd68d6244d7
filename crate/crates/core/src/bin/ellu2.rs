use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64 as C64;
use serde_json::json;

use elliptic_u2::dynrep::rep_pairing_extract;
use elliptic_u2::ehs::{v_series, VParams};
use elliptic_u2::pairing::closed::closed_form_value;
use elliptic_u2::pairing::matrix::pair_matrix_matrix_oracle;
use elliptic_u2::rmatrix::elliptic_r;
use elliptic_u2::{CampaignConfig, Error, MatrixElementIndex, ModulusParams, Report, Suite};

#[derive(Parser)]
#[command(name = "ellu2", version, about = "Elliptic U(2) dynamical quantum group: evaluation and verification")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a verification campaign.
    Verify {
        #[arg(value_enum)]
        suite: SuiteArg,
        #[command(flatten)]
        opts: VerifyOpts,
    },
    /// Print a single evaluated value as JSON.
    Eval {
        #[command(subcommand)]
        what: EvalCmd,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Theta,
    Qdybe,
    GenPairing,
    DetPairing,
    MatrixPairing,
    Action,
    Antipode,
    Star,
    Singular,
    All,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Self {
        match s {
            SuiteArg::Theta => Suite::Theta,
            SuiteArg::Qdybe => Suite::Qdybe,
            SuiteArg::GenPairing => Suite::GenPairing,
            SuiteArg::DetPairing => Suite::DetPairing,
            SuiteArg::MatrixPairing => Suite::MatrixPairing,
            SuiteArg::Action => Suite::Action,
            SuiteArg::Antipode => Suite::Antipode,
            SuiteArg::Star => Suite::Star,
            SuiteArg::Singular => Suite::Singular,
            SuiteArg::All => Suite::All,
        }
    }
}

#[derive(Args)]
struct VerifyOpts {
    /// TOML file with the same keys as the flags; flags win.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    p: Option<f64>,
    #[arg(long)]
    q: Option<f64>,
    #[arg(long)]
    seed: Option<u64>,
    /// Sample count for every check.
    #[arg(long)]
    samples: Option<usize>,
    /// Tolerance for every check.
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long)]
    max_mn: Option<i32>,
    /// Write the JSON report here (`-` for stdout).
    #[arg(long)]
    json: Option<PathBuf>,
}

#[derive(Args)]
struct Modulus {
    #[arg(long, default_value_t = 0.2)]
    p: f64,
    #[arg(long, default_value_t = 0.5)]
    q: f64,
}

#[derive(Subcommand)]
enum EvalCmd {
    /// θ(z; p).
    Theta {
        #[arg(long, allow_hyphen_values = true)]
        z: C64,
        #[command(flatten)]
        m: Modulus,
    },
    /// The elliptic R(λ, z) as a 4×4 matrix.
    Rmatrix {
        #[arg(long, allow_hyphen_values = true)]
        lambda: C64,
        #[arg(long, allow_hyphen_values = true)]
        z: C64,
        #[command(flatten)]
        m: Modulus,
    },
    /// Terminating very-well-poised series r+1V_r(a1; a6, …).
    Vseries {
        #[arg(long, allow_hyphen_values = true)]
        a1: C64,
        /// Comma-separated a6, a7, …
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        params: Vec<C64>,
        #[command(flatten)]
        m: Modulus,
    },
    /// Coefficient of ⟨t^M_rs(w), t^N_kj(z)⟩ at λ.
    Pairing {
        #[arg(long = "M")]
        big_m: i32,
        #[arg(long)]
        r: i32,
        #[arg(long)]
        s: i32,
        #[arg(long, allow_hyphen_values = true)]
        w: C64,
        #[arg(long = "N")]
        big_n: i32,
        #[arg(long)]
        k: i32,
        #[arg(long)]
        j: i32,
        #[arg(long, allow_hyphen_values = true)]
        z: C64,
        #[arg(long, allow_hyphen_values = true)]
        lambda: C64,
        #[arg(long, value_enum, default_value_t = Method::Closed)]
        method: Method,
        #[command(flatten)]
        m: Modulus,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Closed,
    Oracle,
    Rep,
}

fn cjson(c: C64) -> serde_json::Value {
    json!([c.re, c.im])
}

fn build_config(opts: &VerifyOpts) -> elliptic_u2::Result<CampaignConfig> {
    let mut cfg = match &opts.config {
        Some(path) => CampaignConfig::from_file(path)?,
        None => CampaignConfig::default(),
    };
    cfg.apply_env()?;
    if let Some(v) = opts.p {
        cfg.p = v;
    }
    if let Some(v) = opts.q {
        cfg.q = v;
    }
    if let Some(v) = opts.seed {
        cfg.seed = v;
    }
    if opts.samples.is_some() {
        cfg.samples = opts.samples;
    }
    if opts.tol.is_some() {
        cfg.tol = opts.tol;
    }
    if let Some(v) = opts.max_mn {
        cfg.max_mn = v;
    }
    if opts.json.is_some() {
        cfg.json = opts.json.clone();
    }
    cfg.validate()?;
    Ok(cfg)
}

fn print_report(report: &Report) {
    for c in &report.checks {
        println!(
            "{} {:<24} max_residual={:.3e} tol={:.0e} samples={} resampled={} {:.1} ms{}",
            if c.passed { "PASS" } else { "FAIL" },
            c.id,
            c.max_residual,
            c.tolerance,
            c.samples,
            c.resampled,
            c.wall_ms,
            c.note.as_deref().map(|n| format!("  ({n})")).unwrap_or_default(),
        );
    }
    let failed = report.checks.iter().filter(|c| !c.passed).count();
    println!(
        "{}: {} checks, {failed} failed",
        if report.passed() { "PASS" } else { "FAIL" },
        report.checks.len()
    );
}

fn verify(suite: Suite, opts: &VerifyOpts) -> Result<bool, Error> {
    let cfg = build_config(opts)?;
    let report = elliptic_u2::run_suite(suite, &cfg)?;
    let text = elliptic_u2::verify::report_json(&report);
    match cfg.json.as_deref() {
        Some(p) if p.as_os_str() == "-" => println!("{text}"),
        Some(p) => {
            std::fs::write(p, text).map_err(|e| Error::Config(format!("{}: {e}", p.display())))?;
            print_report(&report);
        }
        None => print_report(&report),
    }
    Ok(report.passed())
}

fn eval(what: EvalCmd) -> elliptic_u2::Result<serde_json::Value> {
    Ok(match what {
        EvalCmd::Theta { z, m } => {
            let params = ModulusParams::new(m.p, m.q)?;
            json!({ "theta": cjson(params.theta(z)?) })
        }
        EvalCmd::Rmatrix { lambda, z, m } => {
            let params = ModulusParams::new(m.p, m.q)?;
            let r = elliptic_r(&params, lambda, z)?;
            let rows: Vec<Vec<_>> = r.m.iter().map(|row| row.iter().map(|&c| cjson(c)).collect()).collect();
            json!({ "rmatrix": rows })
        }
        EvalCmd::Vseries { a1, params: trailing, m } => {
            let params = ModulusParams::new(m.p, m.q)?;
            json!({ "vseries": cjson(v_series(&params, &VParams::new(a1, trailing))?) })
        }
        EvalCmd::Pairing {
            big_m,
            r,
            s,
            w,
            big_n,
            k,
            j,
            z,
            lambda,
            method,
            m,
        } => {
            let params = ModulusParams::new(m.p, m.q)?;
            let x = MatrixElementIndex::new(big_m, r, s, w)?;
            let t = MatrixElementIndex::new(big_n, k, j, z)?;
            let value = match method {
                Method::Closed => closed_form_value(&params, &x, &t, lambda)?,
                Method::Oracle => pair_matrix_matrix_oracle(&params, &x, &t)?.eval(lambda),
                Method::Rep => {
                    rep_pairing_extract(&params, &x, big_n, k, j, z, lambda - (2 * s - big_m) as f64)?
                }
            };
            json!({ "pairing": cjson(value), "shift": big_n + big_m - 2 * s - 2 * j })
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Verify { suite, opts } => match verify(suite.into(), &opts) {
            Ok(true) => ExitCode::SUCCESS,
            Ok(false) => ExitCode::from(1),
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(2)
            }
        },
        Command::Eval { what } => match eval(what) {
            Ok(v) => {
                println!("{v}");
                ExitCode::SUCCESS
            }
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(2)
            }
        },
    }
}
