//! Batch front end over the core library: ingest JSON problem bundles and
//! run validate / resolve / stratify / clip / stalk / check pipelines.
//!
//! Exit codes: 0 = success (or verification true), 1 = verification false,
//! 2 = input error (malformed JSON, schema violations, failed preconditions
//! such as non-compact support). Output is deterministic byte-for-byte for
//! a given bundle and flag set.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};

use strata_core::complex::ComplexJson;
use strata_core::encoding::{Encoding, EncodingJson, PLComplex};
use strata_core::geometry::arrangement::{ArrangementJson, HyperplaneJson};
use strata_core::geometry::cone::ConeJson;
use strata_core::indicator::{pull_back, IndicatorComplex, IndicatorComplexJson, Semantics};
use strata_core::poset::PosetJson;
use strata_core::resolution::{resolve_complex, Kind};
use strata_core::scalar::{format_rat, parse_rat};
use strata_core::stalk::StalkContext;
use strata_core::stratify::{
    clip_bounded, conic_stratification, verify_clip, verify_stratification,
};
use strata_core::{Error as CoreError, Field, PosetComplex};

#[derive(Parser)]
#[command(
    name = "strata",
    version,
    about = "Exact conic-topology calculus for PL poset modules"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct CommonArgs {
    /// Problem bundle (JSON).
    bundle: PathBuf,
    /// Ground field: `q` or `fp:<prime>` (overrides the bundle option).
    #[arg(long)]
    field: Option<String>,
    /// Write the JSON report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker threads for verification passes (default: serial).
    #[arg(long)]
    parallel: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Validate the bundle: encoding order-preservation, module path
    /// independence, differential identities.
    Validate(CommonArgs),
    /// Compute an indicator resolution of the bundle's complex.
    Resolve {
        #[command(flatten)]
        common: CommonArgs,
        /// Resolution kind.
        #[arg(long, value_parser = parse_kind, default_value = "upset")]
        kind: Kind,
        /// Apply the open/closed topology adjustment to the summands.
        #[arg(long)]
        adjust: bool,
    },
    /// Conic stratification of the support (requires compact support).
    Stratify(CommonArgs),
    /// Bounded locally-closed decomposition by cone-adapted clipping.
    Clip(CommonArgs),
    /// Conic stalk of the complex at a rational point.
    Stalk {
        #[command(flatten)]
        common: CommonArgs,
        /// Evaluation point, e.g. `1/2,3`.
        #[arg(long)]
        point: String,
    },
    /// Full verification suite with one pass/fail line per property.
    Check {
        #[command(flatten)]
        common: CommonArgs,
        /// Restrict the verification semantics (default: both).
        #[arg(long)]
        semantics: Option<String>,
    },
}

fn parse_kind(s: &str) -> Result<Kind, String> {
    match s {
        "upset" => Ok(Kind::Upset),
        "downset" => Ok(Kind::Downset),
        _ => Err(format!("unknown kind `{s}` (expected upset|downset)")),
    }
}

// ---------------------------------------------------------------------------
// Bundle schema
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct BundleOptions {
    #[serde(default)]
    field: Option<String>,
    #[serde(default)]
    semantics: Option<String>,
}

#[derive(Serialize, Deserialize)]
struct BundleJson {
    cone: ConeJson,
    hyperplanes: Vec<HyperplaneJson>,
    poset: PosetJson,
    assign: BTreeMap<String, String>,
    complex: ComplexJson,
    #[serde(default)]
    options: Option<BundleOptions>,
}

struct Problem {
    plc: PLComplex,
    field: Field,
}

enum CliError {
    /// Exit 2: malformed input or violated precondition.
    Input(String),
    /// Exit 1: verification returned false.
    Verification(String),
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        CliError::Input(e.to_string())
    }
}

fn load_problem(common: &CommonArgs) -> Result<Problem, CliError> {
    let text = std::fs::read_to_string(&common.bundle)
        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", common.bundle.display())))?;
    let bundle: BundleJson =
        serde_json::from_str(&text).map_err(|e| CliError::Input(format!("bundle JSON: {e}")))?;
    let field = match (
        &common.field,
        bundle.options.as_ref().and_then(|o| o.field.as_ref()),
    ) {
        (Some(f), _) => Field::parse(f)?,
        (None, Some(f)) => Field::parse(f)?,
        (None, None) => Field::Rational,
    };
    let encoding_json = EncodingJson {
        arrangement: ArrangementJson {
            dim: bundle.cone.dim,
            hyperplanes: bundle.hyperplanes,
        },
        cone: bundle.cone,
        poset: bundle.poset,
        assign: bundle.assign,
    };
    let encoding = Arc::new(
        Encoding::from_json(&encoding_json).map_err(|e| CliError::Input(format!("bundle: {e}")))?,
    );
    let complex = PosetComplex::from_json(&bundle.complex, encoding.poset(), field)
        .map_err(|e| CliError::Input(format!("bundle complex: {e}")))?;
    let plc = PLComplex::new(encoding, complex)?;
    Ok(Problem { plc, field })
}

fn emit(common: &CommonArgs, value: &impl Serialize) -> Result<(), CliError> {
    let mut text = serde_json::to_string_pretty(value)
        .map_err(|e| CliError::Input(format!("serialization: {e}")))?;
    text.push('\n');
    match &common.out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| CliError::Input(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

// ---------------------------------------------------------------------------
// Commands
// ---------------------------------------------------------------------------

#[derive(Serialize)]
struct ValidationJson {
    valid: bool,
    violations: Vec<String>,
}

fn run_validate(common: &CommonArgs) -> Result<(), CliError> {
    let problem = load_problem(common)?;
    let plc = &problem.plc;
    let mut violations = Vec::new();
    let enc = plc.encoding();
    let arr = enc.arrangement();
    for (f, g) in enc.validate() {
        violations.push(format!(
            "assign not order-preserving on comparable face pair ({}, {}): `{}` is not below `{}`",
            arr.face(f).sign_string(),
            arr.face(g).sign_string(),
            enc.poset().name(enc.assign(f)),
            enc.poset().name(enc.assign(g)),
        ));
    }
    for (d, m) in plc.complex().terms() {
        let report = m.validate();
        for line in report.describe(enc.poset()) {
            violations.push(format!("term at degree {d}: {line}"));
        }
    }
    if violations.is_empty() {
        if let Err(e) = plc.complex().validate() {
            violations.push(e.to_string());
        }
    }
    let report = ValidationJson {
        valid: violations.is_empty(),
        violations,
    };
    emit(common, &report)?;
    if report.valid {
        Ok(())
    } else {
        Err(CliError::Verification("bundle is invalid".into()))
    }
}

fn resolve_pipeline(
    problem: &Problem,
    kind: Kind,
    adjust: bool,
) -> Result<IndicatorComplex, CliError> {
    let plc = &problem.plc;
    plc.validate()?;
    let res = resolve_complex(plc.complex(), kind)?;
    let ind = pull_back(&res, plc.encoding())?;
    Ok(if adjust { ind.adjust_topology() } else { ind })
}

fn run_resolve(common: &CommonArgs, kind: Kind, adjust: bool) -> Result<(), CliError> {
    let problem = load_problem(common)?;
    let ind = resolve_pipeline(&problem, kind, adjust)?;
    emit(common, &ind.to_json())
}

fn run_stratify(common: &CommonArgs) -> Result<(), CliError> {
    let problem = load_problem(common)?;
    problem.plc.validate()?;
    let s = conic_stratification(&problem.plc)?;
    emit(common, &s.to_json())
}

fn run_clip(common: &CommonArgs) -> Result<(), CliError> {
    let problem = load_problem(common)?;
    let adjusted = resolve_pipeline(&problem, Kind::Upset, true)?;
    let out = clip_bounded(&adjusted)?;
    emit(common, &out.to_json())
}

#[derive(Serialize)]
struct StalkJson {
    point: Vec<String>,
    ranks: BTreeMap<String, usize>,
    differentials: BTreeMap<String, Vec<Vec<String>>>,
    homology: BTreeMap<String, usize>,
}

fn run_stalk(common: &CommonArgs, point: &str) -> Result<(), CliError> {
    let problem = load_problem(common)?;
    problem.plc.validate()?;
    let q: Result<Vec<_>, _> = point.split(',').map(|s| parse_rat(s.trim())).collect();
    let q = q.map_err(|e| CliError::Input(format!("--point: {e}")))?;
    let enc = problem.plc.encoding();
    if q.len() != enc.arrangement().dim() {
        return Err(CliError::Input(format!(
            "--point has {} coordinates, ambient dimension is {}",
            q.len(),
            enc.arrangement().dim()
        )));
    }
    let ctx = StalkContext::new(enc.arrangement().clone(), enc.cone().clone())?;
    let stalk = problem.plc.conic_stalk(&ctx, &q);
    let report = StalkJson {
        point: q.iter().map(format_rat).collect(),
        ranks: stalk
            .dims
            .iter()
            .map(|(d, r)| (d.to_string(), *r))
            .collect(),
        differentials: stalk
            .diffs
            .iter()
            .map(|(d, m)| (d.to_string(), m.to_strings()))
            .collect(),
        homology: stalk
            .homology()
            .iter()
            .map(|(d, r)| (d.to_string(), *r))
            .collect(),
    };
    emit(common, &report)
}

#[derive(Serialize)]
struct CheckLine {
    property: String,
    pass: bool,
    detail: String,
}

#[derive(Serialize)]
struct CheckJson {
    pass: bool,
    properties: Vec<CheckLine>,
}

fn line(property: String, pass: bool, detail: String) -> CheckLine {
    CheckLine {
        property,
        pass,
        detail,
    }
}

/// Verification lines for one resolution kind.
fn kind_lines(
    problem: &Problem,
    ctx: &StalkContext,
    kind: Kind,
    wanted: &[Semantics],
) -> Result<Vec<CheckLine>, CliError> {
    let plc = &problem.plc;
    let name = match kind {
        Kind::Upset => "upset",
        Kind::Downset => "downset",
    };
    let mut lines = Vec::new();
    let res = resolve_complex(plc.complex(), kind)?;
    let ind = pull_back(&res, plc.encoding())?;
    let adj = ind.adjust_topology();

    let json = serde_json::to_string(&ind.to_json()).map_err(|e| CliError::Input(e.to_string()))?;
    let parsed: IndicatorComplexJson =
        serde_json::from_str(&json).map_err(|e| CliError::Input(e.to_string()))?;
    let round_trip_ok = IndicatorComplex::from_json(&parsed, problem.field).is_ok();
    lines.push(line(
        format!("{name} resolution round-trips through JSON"),
        round_trip_ok,
        String::new(),
    ));

    for semantics in wanted {
        match semantics {
            Semantics::Alexandrov => {
                let out = ind.verify_resolution(ctx, Semantics::Alexandrov)?;
                lines.push(line(
                    format!("{name} resolution exact pointwise (pre-adjustment)"),
                    out.ok,
                    out.failures
                        .first()
                        .map(|f| format!("face {}: {}", f.face, f.detail))
                        .unwrap_or_default(),
                ));
            }
            Semantics::Conic => {
                let pre = ind.verify_resolution(ctx, Semantics::Conic)?;
                let post = adj.verify_resolution(ctx, Semantics::Conic)?;
                lines.push(line(
                    format!("{name} resolution conic stalks verified (pre and post adjustment)"),
                    pre.ok && post.ok,
                    pre.failures
                        .iter()
                        .chain(post.failures.iter())
                        .next()
                        .map(|f| format!("face {}: {}", f.face, f.detail))
                        .unwrap_or_default(),
                ));
            }
        }
    }
    Ok(lines)
}

fn run_check(common: &CommonArgs, semantics: Option<&str>, parallel: bool) -> Result<(), CliError> {
    let problem = load_problem(common)?;
    let plc = &problem.plc;
    let wanted = match semantics {
        None => vec![Semantics::Alexandrov, Semantics::Conic],
        Some(s) => vec![Semantics::parse(s)?],
    };
    let mut lines: Vec<CheckLine> = Vec::new();

    match plc.validate() {
        Ok(()) => lines.push(line("bundle validation".into(), true, String::new())),
        Err(e) => {
            lines.push(line("bundle validation".into(), false, e.to_string()));
            for l in &lines {
                println!("FAIL {} — {}", l.property, l.detail);
            }
            let report = CheckJson {
                pass: false,
                properties: lines,
            };
            emit(common, &report)?;
            return Err(CliError::Verification("bundle is invalid".into()));
        }
    }

    let enc = plc.encoding();
    let ctx = StalkContext::new(enc.arrangement().clone(), enc.cone().clone())?;

    // The two resolution kinds verify independently; `--parallel` runs them
    // on the rayon pool. Output order stays fixed either way.
    let (up, down) = if parallel {
        rayon::join(
            || kind_lines(&problem, &ctx, Kind::Upset, &wanted),
            || kind_lines(&problem, &ctx, Kind::Downset, &wanted),
        )
    } else {
        (
            kind_lines(&problem, &ctx, Kind::Upset, &wanted),
            kind_lines(&problem, &ctx, Kind::Downset, &wanted),
        )
    };
    lines.extend(up?);
    lines.extend(down?);

    let compact = plc.is_compactly_supported()?;
    if compact {
        let s = conic_stratification(plc)?;
        let (ok, problems) = verify_stratification(&s);
        lines.push(line(
            "conic stratification invariants".into(),
            ok,
            problems.first().cloned().unwrap_or_default(),
        ));
        let adjusted = resolve_pipeline(&problem, Kind::Upset, true)?;
        let out = clip_bounded(&adjusted)?;
        let (ok, problems) = verify_clip(&out)?;
        lines.push(line(
            "bounded clipping invariants".into(),
            ok,
            problems.first().cloned().unwrap_or_default(),
        ));
    } else {
        lines.push(line(
            "compact-support pipelines skipped (support is not compact)".into(),
            true,
            String::new(),
        ));
    }

    for l in &lines {
        println!(
            "{} {}{}",
            if l.pass { "PASS" } else { "FAIL" },
            l.property,
            if l.detail.is_empty() {
                String::new()
            } else {
                format!(" — {}", l.detail)
            }
        );
    }
    let pass = lines.iter().all(|l| l.pass);
    let report = CheckJson {
        pass,
        properties: lines,
    };
    emit(common, &report)?;
    if pass {
        Ok(())
    } else {
        Err(CliError::Verification("check failed".into()))
    }
}

fn configure_parallelism(common: &CommonArgs) {
    if let Some(k) = common.parallel {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(k.max(1))
            .build_global();
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Validate(c) => {
            configure_parallelism(c);
            run_validate(c)
        }
        Command::Resolve {
            common,
            kind,
            adjust,
        } => {
            configure_parallelism(common);
            run_resolve(common, *kind, *adjust)
        }
        Command::Stratify(c) => {
            configure_parallelism(c);
            run_stratify(c)
        }
        Command::Clip(c) => {
            configure_parallelism(c);
            run_clip(c)
        }
        Command::Stalk { common, point } => {
            configure_parallelism(common);
            run_stalk(common, point)
        }
        Command::Check { common, semantics } => {
            configure_parallelism(common);
            run_check(common, semantics.as_deref(), common.parallel.is_some())
        }
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Verification(msg)) => {
            eprintln!("verification failed: {msg}");
            ExitCode::from(1)
        }
        Err(CliError::Input(msg)) => {
            eprintln!("input error: {msg}");
            ExitCode::from(2)
        }
    }
}
