use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use jacobi_integrals::closedforms::{evaluate, legendre_route};
use jacobi_integrals::{EvalResult, IntegralSpec, JacobiParams};
use jacobi_verify::config::default_tol;
use jacobi_verify::identities::DEFAULT_IDENTITY_SEED;
use jacobi_verify::{compare_quad, run_identities, run_sweep, write_report_file, SweepConfig};

const EXIT_FAIL: u8 = 1;
const EXIT_INVALID: u8 = 2;

#[derive(Parser)]
#[command(name = "jacint", version, about = "Singular Jacobi integrals: closed forms and oracle checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a closed form.
    Eval(SpecArgs),
    /// Compare a closed form with quadrature.
    Verify {
        #[command(flatten)]
        spec: SpecArgs,
        /// Comparison tolerance [default: 1e-7, or $JACINT_TOL]
        #[arg(long)]
        tol: Option<f64>,
        /// Print the record as JSON.
        #[arg(long)]
        json: bool,
    },
    /// Run a seeded sweep from a key = value config file.
    Sweep {
        config: Option<PathBuf>,
        #[arg(long, default_value = "sweep_report.jsonl")]
        out: PathBuf,
    },
    /// Run the identity suites.
    Identities {
        #[arg(long, default_value_t = DEFAULT_IDENTITY_SEED)]
        seed: u64,
        /// Print one JSON record per family.
        #[arg(long)]
        json: bool,
    },
}

#[derive(Args)]
struct SpecArgs {
    /// Theorem number 1..4: full range, upper tail, zero singularity, lower tail.
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=4),
          conflicts_with_all = ["gegenbauer", "legendre_route", "remark"])]
    theorem: Option<u8>,
    /// Gegenbauer integral over [0, 1].
    #[arg(long, conflicts_with_all = ["legendre_route", "remark"])]
    gegenbauer: bool,
    /// The Gegenbauer integral via the Legendre function at zero.
    #[arg(long, conflicts_with = "remark")]
    legendre_route: bool,
    /// Jacobi integral with the shifted weight (1+t)^{β-λ}.
    #[arg(long)]
    remark: bool,
    #[arg(long, allow_hyphen_values = true)]
    alpha: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    beta: Option<f64>,
    #[arg(long, default_value_t = 0)]
    n: u32,
    #[arg(long, allow_hyphen_values = true)]
    lambda: f64,
    #[arg(long, allow_hyphen_values = true)]
    z: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    x: Option<f64>,
    /// Gegenbauer index.
    #[arg(long, allow_hyphen_values = true)]
    a: Option<f64>,
}

fn need(v: Option<f64>, flag: &str, what: &str) -> Result<f64, String> {
    v.ok_or_else(|| format!("--{flag} is required for {what}"))
}

impl SpecArgs {
    fn jacobi(&self) -> Result<JacobiParams, String> {
        JacobiParams::new(self.alpha.unwrap_or(0.0), self.beta.unwrap_or(0.0), self.n)
            .map_err(|e| e.to_string())
    }

    fn spec(&self) -> Result<IntegralSpec, String> {
        let lambda = self.lambda;
        let spec = if self.gegenbauer || self.legendre_route {
            let a = need(self.a, "a", "the Gegenbauer integral")?;
            IntegralSpec::gegenbauer_zero(a, self.n, lambda)
        } else if self.remark {
            IntegralSpec::remark_weight(self.jacobi()?, lambda)
        } else {
            let p = self.jacobi()?;
            match self.theorem {
                Some(1) => IntegralSpec::full_range(p, lambda, need(self.z, "z", "--theorem 1")?),
                Some(2) => IntegralSpec::upper_tail(p, lambda, need(self.x, "x", "--theorem 2")?),
                Some(3) => IntegralSpec::zero_singular(p, lambda),
                Some(4) => IntegralSpec::lower_tail(p, lambda, need(self.x, "x", "--theorem 4")?),
                _ => return Err("choose one of --theorem N, --gegenbauer, --legendre-route, --remark".into()),
            }
        };
        spec.map_err(|e| e.to_string())
    }

    fn closed(&self, spec: &IntegralSpec) -> jacobi_integrals::Result<EvalResult> {
        if self.legendre_route {
            legendre_route(self.a.unwrap_or_default(), self.n, self.lambda)
        } else {
            evaluate(spec)
        }
    }
}

fn invalid(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(EXIT_INVALID)
}

fn cmd_eval(args: &SpecArgs) -> ExitCode {
    let spec = match args.spec() {
        Ok(s) => s,
        Err(e) => return invalid(e),
    };
    let r = match args.closed(&spec) {
        Ok(r) => r,
        Err(e) => return invalid(e),
    };
    println!("value = {}", r.value.re);
    if r.value.im != 0.0 {
        println!("imag = {}", r.value.im);
    }
    println!("abs_err_estimate = {:e}", r.abs_err_estimate);
    println!("terms = {}", r.terms_or_panels);
    println!("converged = {}", r.converged);
    ExitCode::SUCCESS
}

fn cmd_verify(args: &SpecArgs, tol: Option<f64>, json: bool) -> ExitCode {
    let spec = match args.spec() {
        Ok(s) => s,
        Err(e) => return invalid(e),
    };
    let tol = tol.unwrap_or_else(default_tol);
    if !(tol > 0.0) {
        return invalid(format!("--tol must be positive, got {tol}"));
    }
    if let Err(e) = args.closed(&spec) {
        return invalid(e);
    }
    let mut rec = compare_quad(&spec, tol);
    if args.legendre_route {
        rec.kind = "legendre_route".into();
    }
    if json {
        println!("{}", serde_json::to_string(&rec).expect("record serializes"));
    } else {
        let show = |v: Option<f64>| v.map_or("-".to_string(), |v| v.to_string());
        println!("kind = {}", rec.kind);
        println!("closed = {} + {}i", show(rec.closed_re), show(rec.closed_im));
        println!("oracle = {}", show(rec.oracle));
        println!("rel_error = {}", rec.rel_error.map_or("-".to_string(), |e| format!("{e:e}")));
        if let Some(e) = &rec.error {
            println!("error = {e}");
        }
        println!("{}", if rec.pass { "PASS" } else { "FAIL" });
    }
    if rec.pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_FAIL)
    }
}

fn cmd_sweep(config: Option<&PathBuf>, out: &PathBuf) -> ExitCode {
    let cfg = match config.map_or_else(|| Ok(SweepConfig::default()), |p| SweepConfig::from_file(p)) {
        Ok(c) => c,
        Err(e) => return invalid(e),
    };
    let records = match run_sweep(&cfg) {
        Ok(r) => r,
        Err(e) => return invalid(e),
    };
    if let Err(e) = write_report_file(out, &cfg, &records) {
        eprintln!("error: writing {}: {e}", out.display());
        return ExitCode::from(EXIT_FAIL);
    }
    let failed = records.iter().filter(|r| !r.pass).count();
    println!("{} comparisons, {failed} failed, report {}", records.len(), out.display());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        eprintln!("{failed} comparisons failed");
        ExitCode::from(EXIT_FAIL)
    }
}

fn cmd_identities(seed: u64, json: bool) -> ExitCode {
    let records = run_identities(seed);
    for r in &records {
        if json {
            println!("{}", serde_json::to_string(r).expect("record serializes"));
        } else {
            let err = r.max_error.map_or_else(|| r.error.clone().unwrap_or_default(), |e| format!("{e:.3e}"));
            println!(
                "{:<20} {:>4} draws  max {:<12} tol {:.0e}  {}",
                r.family,
                r.draws,
                err,
                r.tol,
                if r.pass { "PASS" } else { "FAIL" }
            );
        }
    }
    if records.iter().all(|r| r.pass) {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_FAIL)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match &cli.command {
        Command::Eval(args) => cmd_eval(args),
        Command::Verify { spec, tol, json } => cmd_verify(spec, *tol, *json),
        Command::Sweep { config, out } => cmd_sweep(config.as_ref(), out),
        Command::Identities { seed, json } => cmd_identities(*seed, *json),
    }
}
