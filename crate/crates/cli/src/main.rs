use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use tauforge::render::render_poly;
use tauforge::serial::Basis;
use tauforge_cli::job::{render_tau, run_job, ExitStatus, Hierarchy, JobConfig, JobError};
use tauforge_cli::selfcheck::{run_selfcheck, Bounds, Suite};

/// Construct and verify polynomial tau-functions exactly.
#[derive(Debug, Parser)]
#[command(name = "tauforge", version)]
struct Cli {
    /// kp, bkp, skp or lkdv.
    #[arg(long)]
    hierarchy: Option<Hierarchy>,
    /// Full job configuration; the other flags override its fields.
    #[arg(long, value_name = "FILE")]
    job: Option<PathBuf>,
    /// Constructor name; defaults to the hierarchy's main constructor.
    #[arg(long)]
    constructor: Option<String>,
    /// Constructor spec JSON.
    #[arg(long, value_name = "FILE")]
    spec: Option<PathBuf>,
    /// Exponent vector, overriding the spec.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    alpha: Option<Vec<i64>>,
    #[arg(long)]
    basis: Option<Basis>,
    #[arg(long)]
    verify: bool,
    #[arg(long)]
    jmax: Option<u32>,
    /// Artifact path; the rendering goes next to it with a `.txt` extension.
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
    /// Number of components for s-component jobs and the Clifford suite.
    #[arg(long)]
    components: Option<usize>,
    /// Render a polynomial, Fock vector or job artifact JSON file and exit.
    #[arg(long, value_name = "FILE")]
    render: Option<PathBuf>,
    /// clifford, series, oracles or all.
    #[arg(long)]
    selfcheck: Option<Suite>,
    #[arg(long, default_value_t = 6)]
    max_degree: u32,
    #[arg(long, default_value_t = 4)]
    max_mode: i64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

fn configure_threads() {
    if let Some(n) = std::env::var("TAUFORGE_THREADS")
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&n| n > 0)
    {
        // Only fails if a pool already exists, which cannot happen here.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
}

fn selfcheck(cli: &Cli, suite: Suite) -> ExitCode {
    let bounds = Bounds {
        max_degree: cli.max_degree,
        max_mode: cli.max_mode,
        components: cli.components.unwrap_or(2),
        seed: cli.seed,
    };
    let lines = run_selfcheck(suite, &bounds);
    let failed = lines.iter().filter(|l| !l.passed).count();
    for line in &lines {
        println!("{line}");
    }
    println!("{} checks, {failed} failed", lines.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(ExitStatus::VerificationFailed.code() as u8)
    }
}

fn render(path: &PathBuf, basis: Basis) -> anyhow::Result<String> {
    let text = std::fs::read_to_string(path)?;
    let mut value: serde_json::Value = serde_json::from_str(&text)?;
    // Job artifacts wrap the vector.
    if let Some(tau) = value.get_mut("tau") {
        value = tau.take();
    }
    Ok(if value.get("sectors").is_some() {
        render_tau(&serde_json::from_value(value)?, basis)
    } else {
        render_poly(&serde_json::from_value(value)?, basis)
    })
}

fn build_config(cli: &Cli) -> Result<JobConfig, JobError> {
    let mut config = match (&cli.job, cli.hierarchy) {
        (Some(path), _) => JobConfig::from_json(&std::fs::read_to_string(path)?)?,
        (None, Some(h)) => JobConfig::new(h),
        (None, None) => {
            return Err(JobError::Input(
                "one of --hierarchy, --job, --selfcheck or --render is required".into(),
            ))
        }
    };
    if let Some(h) = cli.hierarchy {
        if h != config.hierarchy {
            config.hierarchy = h;
            config.constructor.name = h.default_constructor().into();
        }
    }
    if let Some(name) = &cli.constructor {
        config.constructor.name = name.clone();
    }
    if let Some(path) = &cli.spec {
        let text = std::fs::read_to_string(path)?;
        let spec = serde_json::from_str(&text)
            .map_err(|e| JobError::Input(format!("{}: {e}", path.display())))?;
        config.constructor.spec = Some(spec);
    }
    if let Some(alpha) = &cli.alpha {
        config.alpha = Some(alpha.clone());
    }
    if let Some(b) = cli.basis {
        config.basis = b;
    }
    config.verify |= cli.verify;
    if cli.jmax.is_some() {
        config.j_max = cli.jmax;
    }
    if cli.out.is_some() {
        config.output = cli.out.clone();
    }
    if cli.components.is_some() {
        config.s = cli.components;
    }
    Ok(config)
}

fn job(cli: &Cli) -> ExitCode {
    let outcome = build_config(cli).and_then(|config| run_job(&config).map(|o| (config, o)));
    let (config, outcome) = match outcome {
        Ok(x) => x,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(ExitStatus::InputError.code() as u8);
        }
    };
    // Keep stdout clean for the artifact when no output file was given.
    let note = |msg: &str| {
        if config.output.is_some() {
            println!("{msg}");
        } else {
            eprintln!("{msg}");
        }
    };
    note(&outcome.rendering);
    match (&outcome.report, outcome.status) {
        (_, ExitStatus::ZeroWithVerify) => {
            eprintln!("error: the constructor produced the zero vector, which is not a tau-function")
        }
        (Some(r), _) if r.passed => note("verification: passed"),
        (Some(r), _) => eprintln!("verification: FAILED ({})", r.failures().join(", ")),
        (None, _) => {}
    }
    ExitCode::from(outcome.status.code() as u8)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            // Usage errors are input errors; help and version are not errors.
            return if e.use_stderr() {
                ExitCode::from(ExitStatus::InputError.code() as u8)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    configure_threads();
    if let Some(suite) = cli.selfcheck {
        return selfcheck(&cli, suite);
    }
    if let Some(path) = &cli.render {
        return match render(path, cli.basis.unwrap_or(Basis::T)) {
            Ok(text) => {
                println!("{text}");
                ExitCode::SUCCESS
            }
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(ExitStatus::InputError.code() as u8)
            }
        };
    }
    job(&cli)
}
