//! Command-line front end. [`run`] takes the argument list and returns the
//! exit code with everything that would be printed, so it is testable
//! without spawning a process.

use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::bosonise::{bosonise, bosonise_algebra, octonion_relations, verify_algebra};
use crate::category::LeftModule;
use crate::constructions::{group_function_algebra, octonions, twisted_double, verify_graded_quasialgebra, GradedQuasiAlgebra};
use crate::groups::{
    braiding_of_cochain, coboundary, cyclic_cocycle, octonion_cochain_restricted, Cochain, Cochain2, Cochain3, FiniteGroup, GroupSpec,
};
use crate::iso::{check_counit_is_product, chi_with, sigma, verify_morphism, MorphismFlags};
use crate::quasihopf::{
    derive_elements, quasihopf_from_json, quasihopf_to_json, quasitriangular_from_json, quasitriangular_to_json, verify_derived, verify_qp,
    verify_quasihopf, verify_quasitriangular, DerivedElements, QuasiHopfAlgebra, QuasiTriangular, VerifyOptions,
};
use crate::report::Report;
use crate::scalars::Scalar;
use crate::tensor::{BasedSpace, LinearMap, Tensor};
use crate::transmute::{transmute_with, verify_braided_group, verify_comult_characterization, BraidedGroup};

#[derive(Parser, Debug)]
#[command(name = "qhopf", version, about = "Exact quasi-Hopf algebra constructions and verifiers")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Print a JSON report instead of the text table.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for sampled checks.
    #[arg(long, global = true, default_value_t = VerifyOptions::default().seed)]
    seed: u64,
    /// Samples taken when a check is too large to run exhaustively.
    #[arg(long, global = true, default_value_t = VerifyOptions::default().samples)]
    samples: usize,
    /// Largest dimension checked exhaustively.
    #[arg(long, global = true, default_value_t = VerifyOptions::default().exhaustive_limit)]
    exhaustive_limit: usize,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build a structure and print (or write) its structure constants.
    Build {
        #[arg(value_enum, default_value_t = Kind::Dqd)]
        kind: Kind,
        #[arg(long)]
        preset: Option<String>,
        #[command(flatten)]
        cochains: Cochains,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Run the quasi-Hopf, quasitriangular and derived-element verifiers.
    Verify(Source),
    /// Transmute a host into a braided group and verify it.
    Transmute {
        #[command(flatten)]
        source: Source,
        /// Also write the braided group's structure tables here.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Bosonise a braided group and verify the result.
    Bosonise {
        #[command(flatten)]
        source: Source,
        /// A braided group written by `transmute --output`; needs `--host`.
        #[arg(long, requires = "input")]
        braided: Option<PathBuf>,
    },
    /// Smash product of an algebra in the module category.
    BosoniseAlgebra {
        #[arg(long, conflicts_with = "algebra")]
        preset: Option<String>,
        /// An algebra written by `build octonions`.
        #[arg(long)]
        algebra: Option<PathBuf>,
        /// Host to use instead of the one stored with the algebra.
        #[arg(long, requires = "algebra")]
        host: Option<PathBuf>,
    },
    /// Check one of the two isomorphisms.
    IsoCheck {
        which: Iso,
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        cochains: Cochains,
    },
    /// Print a structure as JSON.
    Dump {
        #[command(flatten)]
        source: Source,
        #[arg(long, value_enum, default_value_t = DumpWhat::Host)]
        what: DumpWhat,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Run a bundled suite.
    Suite {
        #[arg(long)]
        preset: String,
    },
}

#[derive(Args, Debug, Clone)]
struct Source {
    /// z2, z2squared, z2cubed (alias octonion) or cyclic-N.
    #[arg(long, conflicts_with = "input")]
    preset: Option<String>,
    /// A host written by `build` or `dump`.
    #[arg(long, alias = "host")]
    input: Option<PathBuf>,
}

/// Group and cochains given as JSON files.
#[derive(Args, Debug, Clone)]
struct Cochains {
    /// `{"cyclic": [2,2,2]}` or `{"table": [[...], ...]}`.
    #[arg(long)]
    group: Option<PathBuf>,
    /// 3-cocycle values as a list of `[[a,b,c], scalar]`.
    #[arg(long)]
    cocycle: Option<PathBuf>,
    /// r-function values as a list of `[[a,b], scalar]`.
    #[arg(long)]
    rfun: Option<PathBuf>,
}

#[derive(ValueEnum, Debug, Clone, Copy)]
enum Kind {
    /// Twisted quantum double.
    Dqd,
    /// Function algebra with an associator and an r-function.
    Kphi,
    /// The octonions as an algebra over their grading host.
    Octonions,
}

#[derive(ValueEnum, Debug, Clone, Copy)]
enum Iso {
    Chi,
    Sigma,
}

#[derive(ValueEnum, Debug, Clone, Copy)]
enum DumpWhat {
    Host,
    Transmuted,
    Bosonised,
    Double,
}

/// Exit code and captured output of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("cannot read input: {0}")]
    Parse(String),
    #[error("{0}")]
    Build(String),
}

impl CliError {
    fn build(e: impl std::fmt::Display) -> Self {
        CliError::Build(e.to_string())
    }

    fn parse(e: impl std::fmt::Display) -> Self {
        CliError::Parse(e.to_string())
    }
}

enum Output {
    Reports(Vec<Report>),
    Json(Value),
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code: 2,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome {
                    code: 0,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    let opts = VerifyOptions {
        exhaustive_limit: cli.exhaustive_limit,
        samples: cli.samples,
        seed: cli.seed,
    };
    let name = command_name(&cli.command);
    match execute(&cli.command, &opts) {
        Ok(Output::Json(v)) => Outcome {
            code: 0,
            stdout: pretty(&v),
            stderr: String::new(),
        },
        Ok(Output::Reports(reports)) => {
            let passed = reports.iter().all(Report::passed);
            let stdout = if cli.json {
                pretty(&json!({ "command": name, "passed": passed, "reports": reports }))
            } else {
                reports.iter().map(ToString::to_string).collect::<Vec<_>>().join("\n")
            };
            Outcome {
                code: if passed { 0 } else { 1 },
                stdout,
                stderr: String::new(),
            }
        }
        Err(e) => {
            let stdout = if cli.json {
                pretty(&json!({ "command": name, "error": e.to_string() }))
            } else {
                String::new()
            };
            Outcome {
                code: 2,
                stdout,
                stderr: format!("error: {e}\n"),
            }
        }
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json values serialize");
    s.push('\n');
    s
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Build { .. } => "build",
        Command::Verify(_) => "verify",
        Command::Transmute { .. } => "transmute",
        Command::Bosonise { .. } => "bosonise",
        Command::BosoniseAlgebra { .. } => "bosonise-algebra",
        Command::IsoCheck { .. } => "iso-check",
        Command::Dump { .. } => "dump",
        Command::Suite { .. } => "suite",
    }
}

/// The twisted double behind a preset name.
pub fn preset_host(name: &str) -> Result<QuasiTriangular, String> {
    let phi = preset_cocycle(name)?;
    twisted_double(&phi).map(|d| d.algebra).map_err(|e| e.to_string())
}

fn elementary(k: usize) -> Arc<FiniteGroup> {
    Arc::new(FiniteGroup::cyclic_product(&vec![2; k]).expect("elementary abelian group"))
}

fn octonion_rank(name: &str) -> Option<usize> {
    match name {
        "z2" => Some(1),
        "z2squared" => Some(2),
        "z2cubed" | "octonion" => Some(3),
        _ => None,
    }
}

fn preset_cocycle(name: &str) -> Result<Cochain3, String> {
    match (name, octonion_rank(name)) {
        // The restricted octonion coboundary is trivial on Z2, so the
        // smallest preset takes the nontrivial cyclic cocycle instead.
        ("z2", _) => cyclic_cocycle(2, 1).map_err(|e| e.to_string()),
        (_, Some(k)) => preset_sigma_data_rank(k).map(|(phi, _)| phi),
        _ => match name.strip_prefix("cyclic-").map(str::parse::<u32>) {
            Some(Ok(n)) if (1..=12).contains(&n) => cyclic_cocycle(n, 1).map_err(|e| e.to_string()),
            _ => Err(format!(
                "unknown preset `{name}` (expected z2, z2squared, z2cubed, octonion or cyclic-N with N ≤ 12)"
            )),
        },
    }
}

/// `(φ, r)`: the coboundary of the (restricted) octonion cochain and its
/// braiding function.
fn preset_sigma_data_rank(k: usize) -> Result<(Cochain3, Cochain2), String> {
    let f = octonion_cochain_restricted(&elementary(k)).map_err(|e| e.to_string())?;
    let phi = coboundary(&f).map_err(|e| e.to_string())?;
    let r = braiding_of_cochain(&f).map_err(|e| e.to_string())?;
    Ok((phi, r))
}

fn preset_sigma_data(name: &str) -> Result<(Cochain3, Cochain2), CliError> {
    let k = octonion_rank(name).ok_or_else(|| CliError::Usage(format!("presets with an r-function are z2, z2squared and z2cubed, not `{name}`")))?;
    preset_sigma_data_rank(k).map_err(CliError::Build)
}

fn read_json(path: &Path) -> Result<Value, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))
}

fn write_json(path: &Path, v: &Value) -> Result<(), CliError> {
    fs::write(path, pretty(v)).map_err(|e| CliError::Usage(format!("cannot write {}: {e}", path.display())))
}

fn load_group(path: &Path) -> Result<Arc<FiniteGroup>, CliError> {
    let spec: GroupSpec = serde_json::from_value(read_json(path)?).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
    FiniteGroup::from_spec(&spec).map(Arc::new).map_err(CliError::parse)
}

fn load_cochain(group: &Arc<FiniteGroup>, arity: usize, path: &Path) -> Result<Cochain, CliError> {
    let entries: Vec<(Vec<usize>, Scalar)> =
        serde_json::from_value(read_json(path)?).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
    Cochain::from_dump(group.clone(), arity, &entries).map_err(CliError::parse)
}

/// `(φ, r)` from a preset or from files; `r` only when `with_r`.
fn cochain_data(preset: Option<&str>, c: &Cochains, with_r: bool) -> Result<(Cochain3, Option<Cochain2>), CliError> {
    match (preset, &c.group, &c.cocycle) {
        (Some(p), None, None) if c.rfun.is_none() => {
            if with_r {
                preset_sigma_data(p).map(|(phi, r)| (phi, Some(r)))
            } else {
                preset_cocycle(p).map(|phi| (phi, None)).map_err(CliError::Usage)
            }
        }
        (None, Some(g), Some(phi)) => {
            let grp = load_group(g)?;
            let phi = load_cochain(&grp, 3, phi)?;
            let r = match (&c.rfun, with_r) {
                (Some(rf), true) => Some(load_cochain(&grp, 2, rf)?),
                (None, false) => None,
                (None, true) => return Err(CliError::Usage("an r-function (--rfun) is required".into())),
                (Some(_), false) => return Err(CliError::Usage("--rfun is not used here".into())),
            };
            Ok((phi, r))
        }
        _ => Err(CliError::Usage(
            "give --preset, or --group with --cocycle (and --rfun where an r-function is needed)".into(),
        )),
    }
}

enum Host {
    Triangular(QuasiTriangular),
    Plain(QuasiHopfAlgebra),
}

fn host_from_json(v: &Value) -> Result<Host, CliError> {
    if v.get("r").is_some() {
        quasitriangular_from_json(v).map(Host::Triangular).map_err(CliError::parse)
    } else {
        quasihopf_from_json(v).map(Host::Plain).map_err(CliError::parse)
    }
}

fn load(source: &Source) -> Result<Host, CliError> {
    match (&source.preset, &source.input) {
        (Some(p), None) => preset_host(p).map(Host::Triangular).map_err(CliError::Usage),
        (None, Some(path)) => host_from_json(&read_json(path)?),
        _ => Err(CliError::Usage("give exactly one of --preset or --input".into())),
    }
}

fn load_triangular(source: &Source) -> Result<QuasiTriangular, CliError> {
    match load(source)? {
        Host::Triangular(h) => Ok(h),
        Host::Plain(_) => Err(CliError::Usage("this command needs a quasitriangular host (the input has no `r`)".into())),
    }
}

fn transmuted(h: QuasiTriangular) -> Result<(BraidedGroup, DerivedElements), CliError> {
    let h = Arc::new(h);
    let d = derive_elements(&h).map_err(CliError::build)?;
    let b = transmute_with(h, &d).map_err(CliError::build)?;
    Ok((b, d))
}

fn braided_to_json(b: &BraidedGroup) -> Value {
    json!({
        "host": b.host.name,
        "labels": b.carrier.space.labels(),
        "action": b.carrier.action.to_json(),
        "mult": b.mult.to_json(),
        "unit": b.unit.to_json(),
        "delta": b.delta.to_json(),
        "counit": b.counit.to_json(),
        "antipode": b.antipode.to_json(),
    })
}

fn field<'a>(v: &'a Value, k: &str) -> Result<&'a Value, CliError> {
    v.get(k).ok_or_else(|| CliError::Parse(format!("missing {k}")))
}

fn map_field(v: &Value, k: &str) -> Result<LinearMap, CliError> {
    LinearMap::from_json(field(v, k)?).map_err(CliError::parse)
}

fn tensor_field(v: &Value, k: &str) -> Result<Tensor, CliError> {
    Tensor::from_json(field(v, k)?).map_err(CliError::parse)
}

fn carrier_from_json(v: &Value, host_dim: usize) -> Result<LeftModule, CliError> {
    let labels: Vec<String> = serde_json::from_value(field(v, "labels")?.clone()).map_err(CliError::parse)?;
    LeftModule::new("B", BasedSpace::new(labels), map_field(v, "action")?, host_dim).map_err(CliError::parse)
}

fn braided_from_json(v: &Value, host: QuasiTriangular) -> Result<BraidedGroup, CliError> {
    if let Some(name) = v.get("host").and_then(Value::as_str) {
        if name != host.name {
            return Err(CliError::Usage(format!("braided group was built over `{name}`, not `{}`", host.name)));
        }
    }
    let carrier = carrier_from_json(v, host.dim())?;
    BraidedGroup::new(
        Arc::new(host),
        carrier,
        map_field(v, "mult")?,
        tensor_field(v, "unit")?,
        map_field(v, "delta")?,
        map_field(v, "counit")?,
        map_field(v, "antipode")?,
    )
    .map_err(CliError::parse)
}

fn algebra_to_json(a: &GradedQuasiAlgebra) -> Value {
    json!({
        "host": quasihopf_to_json(&a.host, None),
        "labels": a.carrier.space.labels(),
        "action": a.carrier.action.to_json(),
        "mult": a.mult.to_json(),
        "unit": a.unit.to_json(),
    })
}

fn verify_host(h: &Host, opts: &VerifyOptions) -> Result<Vec<Report>, CliError> {
    let (mut reports, qh) = match h {
        Host::Triangular(t) => (vec![verify_quasitriangular(t, opts)], &t.qh),
        Host::Plain(q) => (vec![verify_quasihopf(q, opts)], q),
    };
    let d = derive_elements(qh).map_err(CliError::build)?;
    reports.push(verify_derived(qh, &d, opts));
    reports.push(verify_qp(qh, &d, opts));
    Ok(reports)
}

fn transmute_reports(b: &BraidedGroup, d: &DerivedElements, opts: &VerifyOptions) -> Vec<Report> {
    let mut report = verify_braided_group(b, opts);
    report.push(verify_comult_characterization(b, d));
    vec![report]
}

fn octonion_suite(opts: &VerifyOptions) -> Result<Vec<Report>, CliError> {
    let o = octonions().map_err(CliError::build)?;
    let s = bosonise_algebra(&o.host, &o.carrier, &o.mult, &o.unit).map_err(CliError::build)?;
    Ok(vec![
        verify_graded_quasialgebra(&o),
        verify_algebra("octonions ⋊ k_phi(Z2^3)", &s.mult, &s.unit, &s.space, opts),
        octonion_relations(&s, &o.group, &o.phi, &o.cochain),
    ])
}

fn chi_reports(h: QuasiTriangular, opts: &VerifyOptions) -> Result<Vec<Report>, CliError> {
    // The antipode is transported and checked only when the pair is small
    // enough for that to be quick.
    let small = h.dim() <= 16;
    let chi = chi_with(Arc::new(h), small).map_err(CliError::build)?;
    let mut m = chi.morphism.clone();
    let flags = if small { MorphismFlags::ALL } else { MorphismFlags::BIALGEBRA };
    let mut report = verify_morphism(&mut m, flags, opts);
    report.push(check_counit_is_product(&chi.double));
    Ok(vec![report])
}

fn sigma_reports(phi: &Cochain3, r: &Cochain2, opts: &VerifyOptions) -> Result<Vec<Report>, CliError> {
    let s = sigma(phi, r).map_err(CliError::build)?;
    let mut m = s.morphism.clone();
    let report = verify_morphism(&mut m, MorphismFlags::ALL, opts);
    let rb = s.transported().map_err(CliError::build)?;
    let mut rb_report = verify_quasitriangular(&rb, opts);
    rb_report.subject = format!("transported R_B on {}", rb.name);
    Ok(vec![report, rb_report])
}

fn build(kind: Kind, preset: Option<&str>, c: &Cochains) -> Result<Value, CliError> {
    match kind {
        Kind::Dqd => {
            let (phi, _) = cochain_data(preset, c, false)?;
            let d = twisted_double(&phi).map_err(CliError::build)?;
            Ok(quasitriangular_to_json(&d.algebra))
        }
        Kind::Kphi => {
            let (phi, r) = cochain_data(preset, c, true)?;
            let h = group_function_algebra(&phi, &r.expect("r requested")).map_err(CliError::build)?;
            Ok(quasitriangular_to_json(&h))
        }
        Kind::Octonions => {
            if preset.is_some() || c.group.is_some() || c.cocycle.is_some() || c.rfun.is_some() {
                return Err(CliError::Usage("`build octonions` takes no group or cochain options".into()));
            }
            Ok(algebra_to_json(&octonions().map_err(CliError::build)?))
        }
    }
}

fn emit(v: Value, output: Option<&PathBuf>) -> Result<Output, CliError> {
    match output {
        Some(path) => {
            write_json(path, &v)?;
            Ok(Output::Reports(Vec::new()))
        }
        None => Ok(Output::Json(v)),
    }
}

fn execute(command: &Command, opts: &VerifyOptions) -> Result<Output, CliError> {
    match command {
        Command::Build {
            kind,
            preset,
            cochains,
            output,
        } => emit(build(*kind, preset.as_deref(), cochains)?, output.as_ref()),
        Command::Verify(source) => verify_host(&load(source)?, opts).map(Output::Reports),
        Command::Transmute { source, output } => {
            let (b, d) = transmuted(load_triangular(source)?)?;
            if let Some(path) = output {
                write_json(path, &braided_to_json(&b))?;
            }
            Ok(Output::Reports(transmute_reports(&b, &d, opts)))
        }
        Command::Bosonise { source, braided } => {
            if matches!(source.preset.as_deref(), Some("octonion")) {
                return Err(CliError::Usage(
                    "the octonions are an algebra in the module category, not a braided group; use `bosonise-algebra --preset octonion`".into(),
                ));
            }
            let b = match braided {
                Some(path) => braided_from_json(&read_json(path)?, load_triangular(source)?)?,
                None => transmuted(load_triangular(source)?)?.0,
            };
            let bos = bosonise(&b).materialize().map_err(CliError::build)?;
            Ok(Output::Reports(vec![verify_quasihopf(&bos, opts)]))
        }
        Command::BosoniseAlgebra { preset, algebra, host } => match (preset.as_deref(), algebra) {
            (Some("octonion") | None, None) => octonion_suite(opts).map(Output::Reports),
            (Some(other), None) => Err(CliError::Usage(format!("no algebra preset `{other}` (only `octonion`)"))),
            (_, Some(path)) => {
                let v = read_json(path)?;
                let host = match host {
                    Some(h) => host_from_json(&read_json(h)?)?,
                    None => host_from_json(field(&v, "host")?)?,
                };
                let host = match host {
                    Host::Triangular(t) => t.qh,
                    Host::Plain(q) => q,
                };
                let carrier = carrier_from_json(&v, host.dim())?;
                let s = bosonise_algebra(&host, &carrier, &map_field(&v, "mult")?, &tensor_field(&v, "unit")?).map_err(CliError::build)?;
                let name = format!("algebra ⋊ {}", host.name);
                Ok(Output::Reports(vec![verify_algebra(&name, &s.mult, &s.unit, &s.space, opts)]))
            }
        },
        Command::IsoCheck { which: Iso::Chi, source, .. } => chi_reports(load_triangular(source)?, opts).map(Output::Reports),
        Command::IsoCheck {
            which: Iso::Sigma,
            source,
            cochains,
        } => {
            if source.input.is_some() {
                return Err(CliError::Usage("sigma takes --preset, or --group with --cocycle and --rfun".into()));
            }
            let (phi, r) = cochain_data(source.preset.as_deref(), cochains, true)?;
            sigma_reports(&phi, &r.expect("r requested"), opts).map(Output::Reports)
        }
        Command::Dump { source, what, output } => {
            let h = load_triangular(source)?;
            let v = match what {
                DumpWhat::Host => quasitriangular_to_json(&h),
                DumpWhat::Transmuted => braided_to_json(&transmuted(h)?.0),
                DumpWhat::Bosonised => {
                    let bos = bosonise(&transmuted(h)?.0).materialize().map_err(CliError::build)?;
                    quasihopf_to_json(&bos, None)
                }
                DumpWhat::Double => {
                    let chi = chi_with(Arc::new(h), true).map_err(CliError::build)?;
                    quasihopf_to_json(&chi.double.materialize().map_err(CliError::build)?, None)
                }
            };
            emit(v, output.as_ref())
        }
        Command::Suite { preset } => suite(preset, opts).map(Output::Reports),
    }
}

fn suite(preset: &str, opts: &VerifyOptions) -> Result<Vec<Report>, CliError> {
    let host = |p: &str| preset_host(p).map_err(CliError::Build);
    match preset {
        "octonion-bosonisation" => octonion_suite(opts),
        "axioms" => {
            let mut reports = Vec::new();
            for p in ["z2", "z2squared", "z2cubed", "cyclic-3", "cyclic-4"] {
                reports.extend(verify_host(&Host::Triangular(host(p)?), opts)?);
            }
            Ok(reports)
        }
        "transmutation" => {
            let (b, d) = transmuted(host("z2cubed")?)?;
            Ok(transmute_reports(&b, &d, opts))
        }
        "sigma" => {
            let (phi, r) = preset_sigma_data("z2cubed")?;
            sigma_reports(&phi, &r, opts)
        }
        "chi" => {
            let mut reports = Vec::new();
            for p in ["z2", "z2squared"] {
                reports.extend(chi_reports(host(p)?, opts)?);
            }
            Ok(reports)
        }
        other => Err(CliError::Usage(format!(
            "unknown suite `{other}` (expected octonion-bosonisation, axioms, transmutation, sigma or chi)"
        ))),
    }
}
