//! Command-line surface. Load an instance (file or builtin), then: run the
//! axiom battery (`check`), evaluate a differential exactly
//! (`differential`), rebuild structure data from the operator family
//! (`reconstruct`), rewrite an algebroid as the other definition shape
//! (`convert`), or run the full seeded property battery (`proptest`).
//!
//! Exit codes: 0 all checks passed, 1 a check failed or an operation was
//! refused, 2 bad input (unreadable file, malformed data, missing flags).

mod io;

use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use homlie_core::algebroid::{HomAlgebroid, PerturbPath, Variant};
use homlie_core::equivalence::{
    build_family, check_theorem_conditions, convert, reconstruct_anchor, reconstruct_bracket,
    round_trip,
};
use homlie_core::homlie::{check_d_squared_vec, Representation};
use homlie_core::kernel::poly::Poly;
use homlie_core::report::{CheckConfig, Report, Status};
use homlie_core::Error;
use io::LoadedInstance;
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "homlie", version)]
#[command(about = "Exact verification and conversion for twisted bracket structures")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the axiom battery appropriate to the input kind
    Check(CheckCmd),
    /// Apply d^s to a cochain and print the exact value on given sections
    Differential(DifferentialCmd),
    /// Rebuild anchor and bracket from the differential family and emit them
    Reconstruct(ReconstructCmd),
    /// Rewrite an algebroid as the other definition shape
    Convert(ConvertCmd),
    /// Run the full seeded property battery
    Proptest(ProptestCmd),
}

#[derive(Args)]
struct CommonArgs {
    /// Instance file (JSON); "builtin:NAME" is accepted too
    #[arg(long)]
    input: Option<String>,

    /// Builtin fixture: twisted-line, tangent-line, tangent-plane, heisenberg, aff2
    #[arg(long)]
    builtin: Option<String>,

    /// Definition shape to apply instead of the declared one. check,
    /// differential, and convert reread the data under it; reconstruct uses
    /// its extraction recipe; proptest probes its family laws.
    #[arg(long, value_parser = parse_variant)]
    variant: Option<Variant>,

    /// Seed for the deterministic sample generator
    #[arg(long, default_value_t = 7)]
    seed: u64,

    /// Random tuples drawn per identity
    #[arg(long, default_value_t = 8)]
    trials: usize,

    /// Degree cap for random polynomial coefficients
    #[arg(long, default_value_t = 2)]
    max_degree: u32,

    /// Largest cochain degree swept by differential batteries
    #[arg(long, default_value_t = 2)]
    max_cochain_degree: usize,

    /// Report format: text or json
    #[arg(long, default_value = "text")]
    emit: String,
}

#[derive(Args)]
struct CheckCmd {
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args)]
struct DifferentialCmd {
    #[command(flatten)]
    common: CommonArgs,

    /// Degree-0 cochain: a polynomial on the base
    #[arg(long)]
    function: Option<String>,

    /// Cochain literal, e.g. {"kind":"basis","k":1,"twist":0,"components":{"1":"1"}}
    #[arg(long)]
    cochain: Option<String>,

    /// Twist index s of the differential
    #[arg(long, default_value_t = 0)]
    s: i64,

    /// Sections to evaluate on, e.g. "[e1]" or "[x*e1 + 2*e2, e2]"
    #[arg(long)]
    args: String,
}

#[derive(Args)]
struct ReconstructCmd {
    #[command(flatten)]
    common: CommonArgs,

    /// Write the emitted instance here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ConvertCmd {
    #[command(flatten)]
    common: CommonArgs,

    /// Target shape
    #[arg(long, value_parser = parse_variant)]
    target: Variant,

    /// Write the emitted instance here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ProptestCmd {
    #[command(flatten)]
    common: CommonArgs,

    /// Inject a single-coefficient perturbation before checking:
    /// bracket:I,J,K[:POLY] | anchor:I,VAR[:POLY] | alpha:I,J[:POLY] (1-based)
    #[arg(long)]
    perturb: Option<String>,
}

fn parse_variant(s: &str) -> Result<Variant, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

impl CommonArgs {
    fn config(&self) -> CheckConfig {
        CheckConfig {
            seed: self.seed,
            trials: self.trials,
            max_degree: self.max_degree,
            max_cochain_degree: self.max_cochain_degree,
            ..CheckConfig::default()
        }
    }

    fn input_label(&self) -> String {
        match (&self.input, &self.builtin) {
            (Some(path), _) => path.clone(),
            (None, Some(name)) => format!("builtin:{name}"),
            (None, None) => "<missing>".to_string(),
        }
    }

    fn json_emit(&self) -> Result<bool, Error> {
        match self.emit.as_str() {
            "text" => Ok(false),
            "json" => Ok(true),
            other => Err(Error::parse(
                0,
                format!("unknown --emit {other:?}; expected text or json"),
            )),
        }
    }

    fn load(&self) -> Result<LoadedInstance, Error> {
        io::load(self.input.as_deref(), self.builtin.as_deref())
    }

    /// Loads, demanding an algebroid. The instance keeps its declared shape;
    /// each command decides what `--variant` means for it.
    fn load_algebroid(&self) -> Result<Arc<HomAlgebroid>, Error> {
        match self.load()? {
            LoadedInstance::Algebroid(ab) => Ok(ab),
            other => Err(Error::parse(
                0,
                format!(
                    "this command needs an algebroid instance, got {}",
                    other.kind()
                ),
            )),
        }
    }

    /// The algebroid reread under `--variant`: same stored tables, the other
    /// shape's extension and scaling rules.
    fn load_algebroid_reread(&self) -> Result<Arc<HomAlgebroid>, Error> {
        let ab = self.load_algebroid()?;
        Ok(match self.variant {
            Some(v) if v != ab.variant() => Arc::new(ab.with_variant(v)),
            _ => ab,
        })
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match run(cli) {
        Ok(code) => code,
        Err(Failure { code, message }) => {
            eprintln!("error: {message}");
            code
        }
    };
    ExitCode::from(code)
}

/// Terminal failure with its exit code: refusals and singular data are check
/// failures (1), everything else is an input error (2).
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        let code = match &e {
            Error::Refused { .. } | Error::Singular(_) => 1,
            _ => 2,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn run(cli: Cli) -> Result<u8, Failure> {
    match cli.command {
        Command::Check(cmd) => cmd_check(cmd),
        Command::Differential(cmd) => cmd_differential(cmd),
        Command::Reconstruct(cmd) => cmd_reconstruct(cmd),
        Command::Convert(cmd) => cmd_convert(cmd),
        Command::Proptest(cmd) => cmd_proptest(cmd),
    }
}

/// Prints the report (and any extra payload fields) in the requested format
/// and returns the exit code the report dictates.
fn finish(
    command: &str,
    common: &CommonArgs,
    report: &Report,
    extra: Vec<(&str, Value)>,
) -> Result<u8, Failure> {
    let as_json = common.json_emit()?;
    if as_json {
        let mut envelope = json!({
            "command": command,
            "input": common.input_label(),
            "config": common.config(),
            "title": report.title,
            "checks": report.checks,
            "summary": {
                "total": report.checks.len(),
                "failed": report.n_failed(),
                "passed": report.passed(),
            },
        });
        let map = envelope.as_object_mut().expect("object literal");
        for (key, value) in extra {
            map.insert(key.to_string(), value);
        }
        println!(
            "{}",
            serde_json::to_string_pretty(&envelope).expect("serializable")
        );
    } else {
        println!("{report}");
        for (key, value) in &extra {
            match value {
                Value::String(s) => println!("{key}: {s}"),
                other => println!(
                    "{key}:\n{}",
                    serde_json::to_string_pretty(other).expect("serializable")
                ),
            }
        }
        if report.passed() {
            println!("result: PASS");
        } else {
            println!(
                "result: FAIL ({} of {} checks)",
                report.n_failed(),
                report.checks.len()
            );
        }
    }
    Ok(if report.passed() { 0 } else { 1 })
}

/// Refusals carry a report; surface it through the normal channel with the
/// refusal context as an extra field, exit 1.
fn finish_refusal(command: &str, common: &CommonArgs, err: Error) -> Result<u8, Failure> {
    match err {
        Error::Refused { context, report } => {
            finish(command, common, &report, vec![("refusal", json!(context))])?;
            Ok(1)
        }
        other => Err(other.into()),
    }
}

fn cmd_check(cmd: CheckCmd) -> Result<u8, Failure> {
    let common = cmd.common;
    let report = match common.load()? {
        LoadedInstance::HomLie { algebra, rep } => {
            if common.variant.is_some() {
                return Err(Error::parse(
                    0,
                    "--variant applies to algebroid instances".to_string(),
                )
                .into());
            }
            let mut report = match &rep {
                None => Report::new("hom-lie structure"),
                Some(_) => Report::new("hom-lie structure with action"),
            };
            report.absorb("", algebra.check_hom_jacobi());
            if let Some(rep) = &rep {
                report.absorb("", rep.check_representation());
            }
            report
        }
        LoadedInstance::Algebroid(ab) => {
            let ab = match common.variant {
                Some(v) if v != ab.variant() => Arc::new(ab.with_variant(v)),
                _ => ab,
            };
            ab.check_axioms(&common.config())
        }
    };
    finish("check", &common, &report, vec![])
}

fn cmd_differential(cmd: DifferentialCmd) -> Result<u8, Failure> {
    let common = cmd.common;
    let ab = common.load_algebroid_reread()?;
    let cochain = match (&cmd.function, &cmd.cochain) {
        (Some(poly), None) => {
            let f = Poly::parse(poly, ab.base().vars()).map_err(Failure::from)?;
            homlie_core::calculus::AlgebroidCochain::function(ab.clone(), f)
                .map_err(Failure::from)?
        }
        (None, Some(literal)) => io::parse_cochain(&ab, literal).map_err(Failure::from)?,
        _ => {
            return Err(
                Error::parse(0, "give exactly one of --function or --cochain".to_string()).into(),
            )
        }
    };
    let sections = io::parse_sections(&ab, &cmd.args).map_err(Failure::from)?;
    let derivative = match cochain.d(cmd.s) {
        Ok(d) => d,
        Err(err) => return finish_refusal("differential", &common, err),
    };
    let value = derivative.evaluate(&sections).map_err(Failure::from)?;

    if common.json_emit()? {
        let envelope = json!({
            "command": "differential",
            "input": common.input_label(),
            "config": common.config(),
            "s": cmd.s,
            "value": value.to_string(),
        });
        println!(
            "{}",
            serde_json::to_string_pretty(&envelope).expect("serializable")
        );
    } else {
        println!("{value}");
    }
    Ok(0)
}

/// Emits an instance either to --out or as part of the command output.
fn emit_instance(
    out: &Option<PathBuf>,
    instance: &Value,
    as_json: bool,
) -> Result<Vec<(&'static str, Value)>, Failure> {
    let pretty = serde_json::to_string_pretty(instance).expect("serializable");
    match out {
        Some(path) => {
            std::fs::write(path, format!("{pretty}\n")).map_err(|e| Failure {
                code: 2,
                message: format!("cannot write {}: {e}", path.display()),
            })?;
            Ok(vec![("out", json!(path.display().to_string()))])
        }
        None => {
            if as_json {
                Ok(vec![("emitted", instance.clone())])
            } else {
                Ok(vec![("emitted", Value::String(pretty))])
            }
        }
    }
}

fn cmd_reconstruct(cmd: ReconstructCmd) -> Result<u8, Failure> {
    let common = cmd.common;
    let ab = common.load_algebroid()?;
    let config = common.config();
    // --variant selects the extraction recipe; its linearity gate refuses
    // recipes the family does not satisfy
    let recipe = common.variant.unwrap_or_else(|| ab.variant());

    let fam = match build_family(ab.clone(), &config) {
        Ok(fam) => fam,
        Err(err) => return finish_refusal("reconstruct", &common, err),
    };
    let anchors = match reconstruct_anchor(&fam, recipe, &config) {
        Ok(a) => a,
        Err(err) => return finish_refusal("reconstruct", &common, err),
    };
    let bracket = match reconstruct_bracket(&fam, recipe, &config) {
        Ok(b) => b,
        Err(err) => return finish_refusal("reconstruct", &common, err),
    };
    let rebuilt = HomAlgebroid::new(
        ab.base().clone(),
        ab.rank(),
        bracket,
        anchors.iter().map(|d| d.coefficients().to_vec()).collect(),
        ab.alpha_sf().clone(),
        recipe,
    )
    .map_err(Failure::from)?;

    let report = if recipe == ab.variant() {
        round_trip(&ab, &config).map_err(Failure::from)?
    } else {
        // foreign recipe: the rebuilt structure answers to the other shape's
        // axioms, not to a comparison with the stored tables
        rebuilt.check_axioms(&config)
    };
    let mut extra = emit_instance(&cmd.out, &io::emit_algebroid(&rebuilt), common.json_emit()?)?;
    extra.insert(0, ("variant", json!(recipe.to_string())));
    finish("reconstruct", &common, &report, extra)
}

fn cmd_convert(cmd: ConvertCmd) -> Result<u8, Failure> {
    let common = cmd.common;
    let ab = common.load_algebroid_reread()?;
    let config = common.config();
    let (converted, report) = match convert(&ab, cmd.target, &config) {
        Ok(pair) => pair,
        Err(err) => return finish_refusal("convert", &common, err),
    };
    let mut extra = emit_instance(
        &cmd.out,
        &io::emit_algebroid(&converted),
        common.json_emit()?,
    )?;
    extra.insert(0, ("target", json!(cmd.target.to_string())));
    finish("convert", &common, &report, extra)
}

fn parse_perturb(spec: &str) -> Result<(PerturbPath, String), Error> {
    let parts: Vec<&str> = spec.splitn(3, ':').collect();
    if parts.len() < 2 {
        return Err(Error::parse(0, format!(
            "perturbation {spec:?} must look like bracket:I,J,K[:POLY], anchor:I,VAR[:POLY], or alpha:I,J[:POLY]"
        )));
    }
    let indices: Vec<usize> = parts[1]
        .split(',')
        .map(|t| {
            t.trim()
                .parse::<usize>()
                .ok()
                .filter(|&n| n > 0)
                .ok_or_else(|| {
                    Error::parse(
                        0,
                        format!("perturbation index {t:?} must be a positive integer"),
                    )
                })
        })
        .collect::<Result<_, _>>()?;
    let delta = parts.get(2).unwrap_or(&"1").to_string();
    let path = match (parts[0], indices.as_slice()) {
        ("bracket", [i, j, k]) => PerturbPath::Bracket {
            i: i - 1,
            j: j - 1,
            component: k - 1,
        },
        ("anchor", [i, v]) => PerturbPath::Anchor {
            i: i - 1,
            var: v - 1,
        },
        ("alpha", [i, j]) => PerturbPath::Alpha { i: i - 1, j: j - 1 },
        _ => {
            return Err(Error::parse(
                0,
                format!("perturbation {spec:?}: wrong kind or index count"),
            ))
        }
    };
    Ok((path, delta))
}

fn cmd_proptest(cmd: ProptestCmd) -> Result<u8, Failure> {
    let common = cmd.common;
    let config = common.config();
    let instance = common.load()?;

    let report = match instance {
        LoadedInstance::HomLie { algebra, rep } => {
            if cmd.perturb.is_some() {
                return Err(Error::parse(
                    0,
                    "--perturb applies to algebroid instances".to_string(),
                )
                .into());
            }
            let mut report = Report::new("property battery (finite-dimensional)");
            report.absorb("", algebra.check_hom_jacobi());
            let action = match rep {
                Some(rep) => {
                    report.absorb("", rep.check_representation());
                    rep
                }
                None => Representation::trivial(algebra.clone(), 1),
            };
            for s in config.s_range() {
                let d2 = check_d_squared_vec(&action, s, config.max_cochain_degree + 1)
                    .map_err(Failure::from)?;
                report.absorb(&format!("s{s}_"), d2);
            }
            report
        }
        LoadedInstance::Algebroid(ab) => {
            let ab = match &cmd.perturb {
                None => ab,
                Some(spec) => {
                    let (path, delta_text) = parse_perturb(spec)?;
                    let delta =
                        Poly::parse(&delta_text, ab.base().vars()).map_err(Failure::from)?;
                    Arc::new(ab.perturbed(&path, &delta).map_err(Failure::from)?)
                }
            };
            // --variant picks which shape's family laws are probed against
            // the instance as declared; everything else stays native
            let condition_shape = common.variant.unwrap_or_else(|| ab.variant());
            let mut report = Report::new("property battery (algebroid)");
            let axioms = ab.check_axioms(&config);
            let structure_ok = axioms.passed();
            report.absorb("", axioms);
            if structure_ok {
                let fam = build_family(ab.clone(), &config).map_err(Failure::from)?;
                report.absorb("", check_theorem_conditions(&fam, condition_shape, &config));
                report.absorb("", round_trip(&ab, &config).map_err(Failure::from)?);
                let (status, witness) = convert_involution(&ab, &config);
                report.push("convert_involution", status, witness);
            }
            report
        }
    };
    finish("proptest", &common, &report, vec![])
}

/// Converting to the other shape and back must reproduce the data exactly.
/// Vacuous (recorded as such) when the twist matrix is not invertible over
/// the base, since conversion is then refused by design.
fn convert_involution(ab: &Arc<HomAlgebroid>, config: &CheckConfig) -> (Status, Option<Value>) {
    let other = match ab.variant() {
        Variant::A => Variant::B,
        Variant::B => Variant::A,
    };
    let forward = match convert(ab, other, config) {
        Ok((converted, _)) => converted,
        Err(_) => {
            return (
                Status::Pass,
                Some(json!({
                    "vacuous": "conversion is refused for this structure",
                })),
            )
        }
    };
    let back = match convert(&forward, ab.variant(), config) {
        Ok((converted, _)) => converted,
        Err(e) => {
            return (
                Status::Fail,
                Some(json!({ "return_conversion": e.to_string() })),
            )
        }
    };
    let fmt_rows = |rows: Vec<Vec<Poly>>| -> Vec<Vec<String>> {
        rows.iter()
            .map(|r| r.iter().map(|p| p.to_string()).collect())
            .collect()
    };
    let same = back.anchor_coeffs() == ab.anchor_coeffs()
        && back.bracket_sf() == ab.bracket_sf()
        && back.alpha_sf() == ab.alpha_sf()
        && back.variant() == ab.variant();
    if same {
        (Status::Pass, None)
    } else {
        (
            Status::Fail,
            Some(json!({
                "returned_anchor": fmt_rows(back.anchor_coeffs()),
                "original_anchor": fmt_rows(ab.anchor_coeffs()),
            })),
        )
    }
}
