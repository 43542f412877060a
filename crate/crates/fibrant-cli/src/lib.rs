//! Subcommands of the `fibrant` binary. Every JSON emission is checked by
//! parsing it back into its own type and re-serializing byte for byte.

use clap::{Parser, Subcommand, ValueEnum};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use fibrant::blowup::{
    cusp_model, regularize, resolve_local, BaseModification, BlowupEvent, ChartSummary, CollisionRecord, DivisorRecord,
    DEFAULT_BUDGET,
};
use fibrant::exactpoly::{parse_rational, rational_to_string, Order, Rational};
use fibrant::lagrange::{
    build_global_sections, first_integrals, integral_residuals, lie_derivative, lie_poisson_bracket, sample_fiber_points,
    PhasePointNumeric, TopParams,
};
use fibrant::miranda::{analyze_lagrange_family, collide, AnalysisError, ClassificationReport, MirandaFiber};
use fibrant::monodromy::{build_presentation, Presentation};
use fibrant::weierstrass::{kodaira_classify, kodaira_tag, DualGraph, KodairaType, OrderTriple};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Rejected(String),
    #[error("internal error: {0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) | CliError::Rejected(_) => 2,
            CliError::Internal(_) => 1,
        }
    }
}

impl From<AnalysisError> for CliError {
    fn from(e: AnalysisError) -> Self {
        if e.is_rejection() {
            CliError::Rejected(e.to_string())
        } else {
            CliError::Internal(e.to_string())
        }
    }
}

fn internal(e: impl std::fmt::Display) -> CliError {
    CliError::Internal(e.to_string())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Md,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Demo {
    Cusp,
    P010,
    P001,
}

#[derive(Debug, Parser)]
#[command(name = "fibrant", version, about = "Exact analysis of the Lagrange top elliptic fibration")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Full classification report for the family at `alpha`.
    Analyze {
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Kodaira type of an order triple (`inf` for a vanishing section).
    ClassifyTriple { l: String, k: String, n: String },
    /// Miranda fibre over a node where two types collide.
    Collide { first: String, second: String },
    /// Blow-up sequence at one of the three special centers.
    BlowupDemo {
        #[arg(value_enum)]
        center: Demo,
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        alpha: String,
    },
    /// Pairwise Poisson brackets of the four integrals and their flow derivatives.
    BracketCheck {
        #[arg(long, allow_hyphen_values = true)]
        m: String,
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        a: String,
    },
    /// Seeded complex points on a fibre of the energy-momentum map.
    SampleFiber {
        #[arg(long, allow_hyphen_values = true)]
        h3: String,
        #[arg(long, allow_hyphen_values = true)]
        h4: String,
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        m: String,
        #[arg(short = 'n', default_value_t = 10)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Zariski-van Kampen presentation and SL(2,Z) monodromy.
    Monodromy {
        #[arg(long, default_value_t = 10)]
        bound: i64,
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        alpha: String,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TripleReport {
    pub triple: OrderTriple,
    #[serde(with = "kodaira_tag")]
    pub kodaira: KodairaType,
    pub components: usize,
    pub multiplicities: Vec<u32>,
    pub euler_number: u32,
    pub dynkin: String,
    pub dual_graph: DualGraph,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BlowupDemoReport {
    pub center: String,
    pub events: Vec<BlowupEvent>,
    pub divisors: Vec<DivisorRecord>,
    pub collisions: Vec<CollisionRecord>,
    pub charts: Vec<ChartSummary>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolyCheck {
    pub name: String,
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BracketReport {
    pub params: TopParams,
    pub brackets: Vec<PolyCheck>,
    pub lie_derivatives: Vec<PolyCheck>,
    pub all_zero: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SampleReport {
    pub params: TopParams,
    pub h3: String,
    pub h4: String,
    pub seed: u64,
    pub points: Vec<PhasePointNumeric>,
    pub max_integral_residual: f64,
}

pub fn rational_arg(name: &str, s: &str) -> Result<Rational, CliError> {
    parse_rational(s).map_err(|e| CliError::Input(format!("--{name}: {e}")))
}

fn order_arg(s: &str) -> Result<Order, CliError> {
    if s == "inf" {
        return Ok(Order::Infinite);
    }
    s.parse().map(Order::Finite).map_err(|_| CliError::Input(format!("bad order {s:?}: expected a natural number or inf")))
}

fn kodaira_arg(s: &str) -> Result<KodairaType, CliError> {
    s.parse().map_err(|e| CliError::Input(format!("{e}")))
}

/// Serializes `v`, then checks the text parses back into `T` and
/// re-serializes to the same bytes.
pub fn emit_json<T: Serialize + DeserializeOwned>(v: &T) -> Result<String, CliError> {
    let s = serde_json::to_string_pretty(v).map_err(internal)?;
    let back: T = serde_json::from_str(&s).map_err(|e| internal(format!("emitted JSON does not parse back: {e}")))?;
    let again = serde_json::to_string_pretty(&back).map_err(internal)?;
    if again != s {
        return Err(internal("emitted JSON is not stable under a round trip"));
    }
    Ok(s)
}

pub fn classify_triple(l: &str, k: &str, n: &str) -> Result<TripleReport, CliError> {
    let triple = OrderTriple { l: order_arg(l)?, k: order_arg(k)?, n: order_arg(n)? };
    let kodaira = kodaira_classify(&triple).map_err(|e| CliError::Input(e.to_string()))?;
    let g = kodaira.dual_graph();
    Ok(TripleReport {
        triple,
        kodaira,
        components: g.component_count(),
        multiplicities: g.multiplicities.clone(),
        euler_number: kodaira.euler_number(),
        dynkin: kodaira.dynkin(),
        dual_graph: g,
    })
}

pub fn collide_types(a: &str, b: &str) -> Result<MirandaFiber, CliError> {
    collide(kodaira_arg(a)?, kodaira_arg(b)?).map_err(|e| CliError::Rejected(e.to_string()))
}

fn restrict(m: BaseModification, center: &str) -> BlowupDemoReport {
    BlowupDemoReport {
        center: center.into(),
        events: m.events.into_iter().filter(|e| e.center == center).collect(),
        divisors: m.divisors.into_iter().filter(|d| d.origin == center).collect(),
        collisions: m.collisions.into_iter().filter(|c| c.point.center == center).collect(),
        charts: m.leaves.into_iter().filter(|l| l.center == center).collect(),
    }
}

pub fn blowup_demo(demo: Demo, alpha: &Rational) -> Result<BlowupDemoReport, CliError> {
    match demo {
        Demo::Cusp => {
            let m = resolve_local(cusp_model("cusp", Some(("Q~", KodairaType::I(1)))), DEFAULT_BUDGET).map_err(internal)?;
            Ok(restrict(m, "cusp"))
        }
        Demo::P010 | Demo::P001 => {
            fibrant::weierstrass::genericity_guard(alpha).map_err(|e| CliError::Rejected(e.to_string()))?;
            let fib = build_global_sections(alpha).map_err(internal)?;
            let m = regularize(&fib).map_err(internal)?;
            Ok(restrict(m, if demo == Demo::P010 { "(0:1:0)" } else { "(0:0:1)" }))
        }
    }
}

pub fn bracket_check(m: &Rational, a: &Rational) -> Result<BracketReport, CliError> {
    let params = TopParams::new(m.clone(), a.clone()).map_err(|e| CliError::Input(e.to_string()))?;
    let (h1, h2, h3, h4) = first_integrals(&params);
    let hs = [h1, h2, h3, h4];
    let mut brackets = Vec::new();
    let mut lie = Vec::new();
    for i in 0..4 {
        for j in i + 1..4 {
            let v = lie_poisson_bracket(&hs[i], &hs[j]);
            brackets.push(PolyCheck { name: format!("{{H{}, H{}}}", i + 1, j + 1), value: v.to_string() });
        }
        lie.push(PolyCheck { name: format!("dH{}/dt", i + 1), value: lie_derivative(&hs[i], &params).to_string() });
    }
    let all_zero = brackets.iter().chain(&lie).all(|c| c.value == "0");
    Ok(BracketReport { params, brackets, lie_derivatives: lie, all_zero })
}

pub fn sample_fiber(h3: &Rational, h4: &Rational, a: &Rational, m: &Rational, n: usize, seed: u64) -> Result<SampleReport, CliError> {
    let params = TopParams::new(m.clone(), a.clone()).map_err(|e| CliError::Input(e.to_string()))?;
    let points = sample_fiber_points(h3, h4, &params, seed, n).map_err(internal)?;
    let max_integral_residual = points
        .iter()
        .flat_map(|p| integral_residuals(p, h3, h4, &params))
        .fold(0.0, f64::max);
    Ok(SampleReport { params, h3: rational_to_string(h3), h4: rational_to_string(h4), seed, points, max_integral_residual })
}

pub fn monodromy(alpha: &Rational, bound: i64) -> Result<Presentation, CliError> {
    if bound < 1 {
        return Err(CliError::Input("--bound must be positive".into()));
    }
    let report = analyze_lagrange_family(alpha)?;
    let p = build_presentation(&report, bound).map_err(internal)?;
    p.validate().map_err(internal)?;
    Ok(p)
}

/// The versioned report schema shipped in `docs/`.
pub const REPORT_SCHEMA: &str = include_str!("../../../docs/report.schema.json");

/// [`emit_json`] for a report, additionally checked against [`REPORT_SCHEMA`].
pub fn emit_report(report: &ClassificationReport) -> Result<String, CliError> {
    let text = emit_json(report)?;
    let schema: serde_json::Value = serde_json::from_str(REPORT_SCHEMA).map_err(internal)?;
    let validator = jsonschema::validator_for(&schema).map_err(internal)?;
    let value: serde_json::Value = serde_json::from_str(&text).map_err(internal)?;
    if let Some(e) = validator.iter_errors(&value).next() {
        return Err(internal(format!("report violates the schema at {}: {e}", e.instance_path())));
    }
    Ok(text)
}

/// Runs one command and returns the text for stdout.
pub fn run(cli: &Cli) -> Result<String, CliError> {
    match &cli.command {
        Command::Analyze { alpha, format } => {
            let report = analyze_lagrange_family(&rational_arg("alpha", alpha)?)?;
            match format {
                Format::Json => emit_report(&report),
                Format::Md => Ok(report.to_markdown()),
            }
        }
        Command::ClassifyTriple { l, k, n } => emit_json(&classify_triple(l, k, n)?),
        Command::Collide { first, second } => emit_json(&collide_types(first, second)?),
        Command::BlowupDemo { center, alpha } => emit_json(&blowup_demo(*center, &rational_arg("alpha", alpha)?)?),
        Command::BracketCheck { m, a } => emit_json(&bracket_check(&rational_arg("m", m)?, &rational_arg("a", a)?)?),
        Command::SampleFiber { h3, h4, a, m, n, seed } => emit_json(&sample_fiber(
            &rational_arg("h3", h3)?,
            &rational_arg("h4", h4)?,
            &rational_arg("a", a)?,
            &rational_arg("m", m)?,
            *n,
            *seed,
        )?),
        Command::Monodromy { bound, alpha } => emit_json(&monodromy(&rational_arg("alpha", alpha)?, *bound)?),
    }
}

/// Parses `args` (program name first) and runs the command.
pub fn run_from<I, T>(args: I) -> Result<String, CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = Cli::try_parse_from(args).map_err(|e| CliError::Input(e.to_string()))?;
    run(&cli)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arguments() {
        assert!(rational_arg("a", "-3/6").is_ok());
        assert!(matches!(rational_arg("a", "1/0"), Err(CliError::Input(_))));
        assert_eq!(order_arg("inf").unwrap(), Order::Infinite);
        assert!(order_arg("-1").is_err());
        assert!(kodaira_arg("I0*").is_ok());
        assert!(kodaira_arg("V").is_err());
    }

    #[test]
    fn exit_codes() {
        assert_eq!(run_from(["fibrant", "analyze", "--alpha", "4"]).unwrap_err().exit_code(), 2);
        assert_eq!(run_from(["fibrant", "bogus"]).unwrap_err().exit_code(), 2);
        assert_eq!(CliError::Internal("x".into()).exit_code(), 1);
    }

    #[test]
    fn schema_rejects_a_broken_report() {
        let mut r = analyze_lagrange_family(&Rational::from_integer(2.into())).unwrap();
        assert!(emit_report(&r).is_ok());
        r.divisors[0].name.clear();
        r.version = "fibrant-report/0".into();
        assert!(matches!(emit_report(&r), Err(CliError::Internal(_))));
    }

    #[test]
    fn triple_report() {
        let r = classify_triple("inf", "inf", "inf");
        assert!(r.is_err());
        let r = classify_triple("1", "2", "3").unwrap();
        assert_eq!(r.kodaira, KodairaType::III);
        assert_eq!(r.components, 2);
    }

    #[test]
    fn demo_centers() {
        for (demo, center) in [(Demo::Cusp, "cusp"), (Demo::P010, "(0:1:0)"), (Demo::P001, "(0:0:1)")] {
            let r = blowup_demo(demo, &Rational::from_integer(1.into())).unwrap();
            assert!(!r.events.is_empty());
            assert!(r.events.iter().all(|e| e.center.contains(center)), "{demo:?}");
        }
    }
}
