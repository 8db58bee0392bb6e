//! Job configuration, constructor dispatch and the output artifact.

use std::path::PathBuf;

use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use tauforge::algebra::{LaurentPoly, Partition, Poly, Rational, StrictPartition};
use tauforge::fock::{ChargeVector, FockVector};
use tauforge::render::{render_fock, render_poly};
use tauforge::serial::{Basis, FockRepr};
use tauforge::symfun::{jacobi_trudi, q_schur, ShiftVector};
use tauforge::taugen::{
    bkp_closed_form_chi, bkp_coeff_oracle, bkp_coeff_pf, kp_closed_form, kp_coeff_det,
    kp_coeff_oracle, lkdv_tau, skp_assignment_sum, skp_closed_form, skp_coeff_full, BkpSpec,
    KpSpec, LkdvSpec, SkpClosedData, SkpSpec,
};
use tauforge::verify::{verify_bkp, verify_kp, verify_lkdv, verify_skp, VerificationReport};

#[derive(Debug, Error)]
pub enum JobError {
    #[error("input error: {0}")]
    Input(String),
    #[error(transparent)]
    Algebra(#[from] tauforge::Error),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl JobError {
    fn input(msg: impl Into<String>) -> Self {
        JobError::Input(msg.into())
    }
}

pub type JobResult<T> = std::result::Result<T, JobError>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Hierarchy {
    Kp,
    Bkp,
    Skp,
    Lkdv,
}

impl Hierarchy {
    pub fn default_constructor(self) -> &'static str {
        match self {
            Hierarchy::Kp => "kp_coeff_det",
            Hierarchy::Bkp => "bkp_coeff_pf",
            Hierarchy::Skp => "skp_coeff_full",
            Hierarchy::Lkdv => "lkdv_tau",
        }
    }

    pub fn constructors(self) -> &'static [&'static str] {
        match self {
            Hierarchy::Kp => &["kp_coeff_det", "kp_coeff_oracle", "kp_closed_form", "jacobi_trudi", "input"],
            Hierarchy::Bkp => &["bkp_coeff_pf", "bkp_coeff_oracle", "bkp_closed_form_chi", "q_schur", "input"],
            Hierarchy::Skp => &["skp_coeff_full", "skp_assignment_sum", "skp_closed_form", "input"],
            Hierarchy::Lkdv => &["lkdv_tau", "input"],
        }
    }
}

impl std::str::FromStr for Hierarchy {
    type Err = JobError;

    fn from_str(s: &str) -> JobResult<Self> {
        match s.to_ascii_lowercase().as_str() {
            "kp" => Ok(Hierarchy::Kp),
            "bkp" => Ok(Hierarchy::Bkp),
            "skp" => Ok(Hierarchy::Skp),
            "lkdv" => Ok(Hierarchy::Lkdv),
            other => Err(JobError::input(format!("unknown hierarchy {other:?}"))),
        }
    }
}

/// Constructor name and its spec; a missing spec means `A ≡ 1` for the
/// generating-function constructors.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Constructor {
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub spec: Option<Value>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobConfig {
    pub hierarchy: Hierarchy,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub s: Option<usize>,
    pub constructor: Constructor,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<Vec<i64>>,
    /// Rendering basis; `t` unless given.
    #[serde(default = "rendering_basis")]
    pub basis: Basis,
    #[serde(default)]
    pub verify: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub j_max: Option<u32>,
    /// `None` writes the artifact to stdout.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<PathBuf>,
}

fn rendering_basis() -> Basis {
    Basis::T
}

impl JobConfig {
    pub fn new(hierarchy: Hierarchy) -> Self {
        JobConfig {
            hierarchy,
            s: None,
            constructor: Constructor {
                name: hierarchy.default_constructor().into(),
                spec: None,
            },
            alpha: None,
            basis: rendering_basis(),
            verify: false,
            j_max: None,
            output: None,
        }
    }

    pub fn from_json(text: &str) -> JobResult<Self> {
        serde_json::from_str(text).map_err(|e| JobError::input(format!("job config: {e}")))
    }
}

/// Process exit codes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExitStatus {
    Success = 0,
    InputError = 1,
    VerificationFailed = 2,
    ZeroWithVerify = 3,
}

impl ExitStatus {
    pub fn code(self) -> i32 {
        self as i32
    }
}

/// Serialized job result.
#[derive(Debug, Serialize)]
pub struct Artifact<'a> {
    pub hierarchy: Hierarchy,
    pub constructor: &'a str,
    pub tau: FockRepr<'a>,
    pub rendering: &'a str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verification: Option<&'a VerificationReport>,
}

#[derive(Debug)]
pub struct JobOutcome {
    pub tau: FockVector,
    pub rendering: String,
    pub report: Option<VerificationReport>,
    pub status: ExitStatus,
    /// Canonical artifact JSON.
    pub json: String,
}

fn parse<T: for<'de> Deserialize<'de>>(value: &Value, what: &str) -> JobResult<T> {
    T::deserialize(value).map_err(|e| JobError::input(format!("{what} spec: {e}")))
}

fn require_spec<'a>(config: &'a JobConfig) -> JobResult<&'a Value> {
    config
        .constructor
        .spec
        .as_ref()
        .ok_or_else(|| JobError::input(format!("constructor {} needs a spec", config.constructor.name)))
}

fn override_alpha(config: &JobConfig) -> JobResult<&[i64]> {
    config
        .alpha
        .as_deref()
        .ok_or_else(|| JobError::input("either a spec or an alpha vector is required"))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct KpClosedSpec {
    #[serde(with = "tauforge::serial::rational_list")]
    b: Vec<Rational>,
    #[serde(rename = "M")]
    m: Vec<i64>,
    c: Vec<ShiftVector>,
    alpha: Vec<i64>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct BkpClosedSpec {
    #[serde(with = "tauforge::serial::rational_list")]
    b: Vec<Rational>,
    c: Vec<ShiftVector>,
    alpha: Vec<i64>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PartitionSpec {
    lambda: Vec<u32>,
}

/// A polynomial (charge-zero sector) or a full Fock vector.
enum TauInput {
    Fock(FockVector),
    Poly(Poly),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct InputSpec {
    #[serde(default)]
    lambda: Option<Vec<u32>>,
    tau: Value,
}

fn parse_tau(spec: &InputSpec, s: usize) -> JobResult<FockVector> {
    // Try the Fock form first so that a malformed Fock vector reports its
    // own error rather than an untagged-enum summary.
    let is_fock = spec.tau.get("sectors").is_some();
    let input: TauInput = if is_fock {
        TauInput::Fock(parse(&spec.tau, "tau")?)
    } else {
        TauInput::Poly(parse(&spec.tau, "tau")?)
    };
    let v = match input {
        TauInput::Fock(v) => v,
        TauInput::Poly(f) => {
            let s = f.s();
            FockVector::sector(ChargeVector::zero(s), f)?
        }
    };
    if v.s() != s {
        return Err(JobError::input(format!("tau has {} components, job expects {s}", v.s())));
    }
    Ok(v)
}

fn poly_vector(f: Poly) -> JobResult<FockVector> {
    let mut v = FockVector::zero(f.s());
    v.add_sector(ChargeVector::zero(f.s()), f)?;
    Ok(v)
}

fn ones(l: usize) -> Vec<LaurentPoly> {
    vec![LaurentPoly::one(); l]
}

fn check_s(config: &JobConfig, s: usize) -> JobResult<()> {
    match config.s {
        Some(given) if given != s => Err(JobError::input(format!(
            "job declares s = {given} but the spec has {s} components"
        ))),
        _ => Ok(()),
    }
}

fn kp_spec(config: &JobConfig) -> JobResult<KpSpec> {
    let spec = match &config.constructor.spec {
        Some(v) => parse::<KpSpec>(v, "KP")?,
        None => {
            let alpha = override_alpha(config)?;
            KpSpec::new(ones(alpha.len()), alpha.to_vec())?
        }
    };
    Ok(match &config.alpha {
        Some(alpha) => spec.with_alpha(alpha.clone())?,
        None => spec,
    })
}

fn bkp_spec(config: &JobConfig) -> JobResult<BkpSpec> {
    let spec = match &config.constructor.spec {
        Some(v) => parse::<BkpSpec>(v, "BKP")?,
        None => {
            let alpha = override_alpha(config)?;
            BkpSpec::new(ones(alpha.len()), alpha.to_vec())?
        }
    };
    Ok(match &config.alpha {
        Some(alpha) => spec.with_alpha(alpha.clone())?,
        None => spec,
    })
}

fn skp_spec(config: &JobConfig) -> JobResult<SkpSpec> {
    let spec = match &config.constructor.spec {
        Some(v) => parse::<SkpSpec>(v, "s-component")?,
        None => {
            let alpha = override_alpha(config)?;
            let s = config
                .s
                .ok_or_else(|| JobError::input("s-component jobs without a spec need s"))?;
            SkpSpec::ones(s, alpha.to_vec())?
        }
    };
    check_s(config, spec.s())?;
    Ok(match &config.alpha {
        Some(alpha) => spec.with_alpha(alpha.clone())?,
        None => spec,
    })
}

/// Builds the tau-function named by the job, before any verification.
pub fn construct(config: &JobConfig) -> JobResult<FockVector> {
    let name = config.constructor.name.as_str();
    let h = config.hierarchy;
    if !h.constructors().contains(&name) {
        return Err(JobError::input(format!(
            "constructor {name:?} is not available for this hierarchy (choose from {})",
            h.constructors().join(", ")
        )));
    }
    let single = |config: &JobConfig| check_s(config, 1);
    match (h, name) {
        (Hierarchy::Kp, "kp_coeff_det") => {
            single(config)?;
            poly_vector(kp_coeff_det(&kp_spec(config)?)?)
        }
        (Hierarchy::Kp, "kp_coeff_oracle") => {
            single(config)?;
            poly_vector(kp_coeff_oracle(&kp_spec(config)?)?)
        }
        (Hierarchy::Kp, "kp_closed_form") => {
            single(config)?;
            let mut d: KpClosedSpec = parse(require_spec(config)?, "closed form")?;
            if let Some(alpha) = &config.alpha {
                d.alpha = alpha.clone();
            }
            poly_vector(kp_closed_form(&d.b, &d.m, &d.c, &d.alpha)?)
        }
        (Hierarchy::Kp, "jacobi_trudi") => {
            single(config)?;
            let p: PartitionSpec = parse(require_spec(config)?, "partition")?;
            poly_vector(jacobi_trudi(&Partition::new(p.lambda)?, 1, 1)?)
        }
        (Hierarchy::Bkp, "bkp_coeff_pf") => {
            single(config)?;
            poly_vector(bkp_coeff_pf(&bkp_spec(config)?)?)
        }
        (Hierarchy::Bkp, "bkp_coeff_oracle") => {
            single(config)?;
            poly_vector(bkp_coeff_oracle(&bkp_spec(config)?)?)
        }
        (Hierarchy::Bkp, "bkp_closed_form_chi") => {
            single(config)?;
            let mut d: BkpClosedSpec = parse(require_spec(config)?, "closed form")?;
            if let Some(alpha) = &config.alpha {
                d.alpha = alpha.clone();
            }
            poly_vector(bkp_closed_form_chi(&d.b, &d.c, &d.alpha)?)
        }
        (Hierarchy::Bkp, "q_schur") => {
            single(config)?;
            let p: PartitionSpec = parse(require_spec(config)?, "strict partition")?;
            poly_vector(q_schur(&StrictPartition::new(p.lambda)?, None, 1, 1)?)
        }
        (Hierarchy::Skp, "skp_coeff_full") => Ok(skp_coeff_full(&skp_spec(config)?)?),
        (Hierarchy::Skp, "skp_assignment_sum") => Ok(skp_assignment_sum(&skp_spec(config)?)?),
        (Hierarchy::Skp, "skp_closed_form") => {
            let mut d: SkpClosedData = parse(require_spec(config)?, "closed form")?;
            check_s(config, d.s())?;
            if let Some(alpha) = &config.alpha {
                d = d.with_alpha(alpha.clone())?;
            }
            Ok(skp_closed_form(&d)?)
        }
        (Hierarchy::Lkdv, "lkdv_tau") => {
            let mut spec: LkdvSpec = parse(require_spec(config)?, "λ-KdV")?;
            check_s(config, spec.s())?;
            if let Some(alpha) = &config.alpha {
                spec = spec.with_alpha(alpha.clone())?;
            }
            Ok(lkdv_tau(&spec)?)
        }
        (_, "input") => {
            let spec: InputSpec = parse(require_spec(config)?, "input")?;
            let s = match h {
                Hierarchy::Kp | Hierarchy::Bkp => 1,
                Hierarchy::Skp | Hierarchy::Lkdv => match (config.s, &spec.lambda) {
                    (Some(s), _) => s,
                    (None, Some(l)) if h == Hierarchy::Lkdv => l.len(),
                    _ => infer_s(&spec.tau)?,
                },
            };
            check_s(config, s)?;
            let v = parse_tau(&spec, s)?;
            if h == Hierarchy::Bkp && v.num_sectors() > 1 {
                return Err(JobError::input("a BKP input is a single polynomial"));
            }
            Ok(v)
        }
        _ => unreachable!("constructor list checked above"),
    }
}

fn infer_s(tau: &Value) -> JobResult<usize> {
    tau.get("s")
        .and_then(Value::as_u64)
        .map(|s| s as usize)
        .ok_or_else(|| JobError::input("cannot determine s for the input tau"))
}

fn lkdv_lambda(config: &JobConfig) -> JobResult<Partition> {
    let parts: Vec<u32> = match require_spec(config)?.get("lambda") {
        Some(l) => parse(l, "lambda")?,
        None => return Err(JobError::input("λ-KdV verification needs lambda")),
    };
    Ok(Partition::new(parts)?)
}

/// Runs the matching verifier on a nonzero tau.
pub fn verify_tau(config: &JobConfig, tau: &FockVector) -> JobResult<VerificationReport> {
    Ok(match config.hierarchy {
        Hierarchy::Kp => verify_kp(tau)?,
        Hierarchy::Skp => verify_skp(tau)?,
        Hierarchy::Bkp => {
            let (_, f) = tau.sectors().next().expect("nonzero tau has a sector");
            verify_bkp(f)?
        }
        Hierarchy::Lkdv => verify_lkdv(tau, &lkdv_lambda(config)?, config.j_max.unwrap_or(2))?,
    })
}

/// Single-component charge-zero vectors render as their polynomial.
pub fn render_tau(tau: &FockVector, basis: Basis) -> String {
    if tau.s() == 1 && tau.num_sectors() <= 1 {
        match tau.sectors().next() {
            None => return render_poly(&Poly::zero(1), basis),
            Some((m, f)) if m.get(1) == 0 => return render_poly(f, basis),
            _ => {}
        }
    }
    render_fock(tau, basis)
}

/// Constructs, optionally verifies and serializes; writes nothing.
pub fn evaluate(config: &JobConfig) -> JobResult<JobOutcome> {
    let tau = construct(config)?;
    let rendering = render_tau(&tau, config.basis);
    let (report, status) = if !config.verify {
        (None, ExitStatus::Success)
    } else if tau.is_zero() {
        (None, ExitStatus::ZeroWithVerify)
    } else {
        let report = verify_tau(config, &tau)?;
        let status = if report.passed {
            ExitStatus::Success
        } else {
            ExitStatus::VerificationFailed
        };
        (Some(report), status)
    };
    let artifact = Artifact {
        hierarchy: config.hierarchy,
        constructor: &config.constructor.name,
        tau: FockRepr {
            vector: &tau,
            basis: config.basis,
        },
        rendering: &rendering,
        verification: report.as_ref(),
    };
    let json = tauforge::serial::to_json_string(&artifact)?;
    Ok(JobOutcome {
        tau,
        rendering,
        report,
        status,
        json,
    })
}

/// [`evaluate`] plus writing: the artifact goes to `output` (or stdout) and
/// the rendering to `output` with a `.txt` extension.
pub fn run_job(config: &JobConfig) -> JobResult<JobOutcome> {
    let outcome = evaluate(config)?;
    match &config.output {
        Some(path) => {
            std::fs::write(path, &outcome.json)?;
            let mut text = outcome.rendering.clone();
            text.push('\n');
            std::fs::write(path.with_extension("txt"), text)?;
        }
        None => print!("{}", outcome.json),
    }
    Ok(outcome)
}
