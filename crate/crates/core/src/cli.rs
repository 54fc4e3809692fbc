//! The `zoll-ech` command line.
//!
//! Exit codes: `0` success, `1` an obstruction or consistency check failed
//! (the witness is printed), `2` usage error, `3` numerical instability.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::capseq::{ball_capacities, dstar_capacities, ellipsoid_capacities, CapacitySequence, Surface};
use crate::error::{ComplexError, ExactError, NumericError};
use crate::exact::ExactQuantity;
use crate::momentmap::limit::{default_ladder, default_limit_grid, limit_area, sup_distance_to_limit};
use crate::momentmap::{admissible_grid, boundary_curve, limit_domain, PerturbParams, PlanarCurve, Variant};
use crate::obstruct::{dominates_certified, gromov_width_upto, Dominance, UpperSource, DEFAULT_WIDTH_TERMS};
use crate::zollcx::{
    closed_form_index, formula_capacities, generators_by_grading, grading, index_components, spectrum, u_chain,
    ModelName, OrbitSet, ZollModel,
};
use crate::SCHEMA;

/// Environment variable capping the worker threads used for moment-map grids.
pub const THREADS_ENV: &str = "ZOLL_ECH_THREADS";

#[derive(Debug, Parser)]
#[command(name = "zoll-ech", version, about = "ECH capacities of disk cotangent bundles of S2 and RP2")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum DStar {
    #[value(name = "dstar-s2")]
    S2,
    #[value(name = "dstar-rp2")]
    Rp2,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum VariantArg {
    Full,
    Hemisphere,
}

impl From<VariantArg> for Variant {
    fn from(v: VariantArg) -> Self {
        match v {
            VariantArg::Full => Variant::Full,
            VariantArg::Hemisphere => Variant::Hemisphere,
        }
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Capacity sequence of a ball, ellipsoid or disk cotangent bundle.
    Capacities {
        /// ball:A, ellipsoid:A,B, dstar-s2 or dstar-rp2
        #[arg(long, value_parser = parse_domain)]
        domain: DomainSpec,
        #[arg(long)]
        count: usize,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
        #[arg(long, conflicts_with = "float")]
        exact: bool,
        #[arg(long)]
        float: bool,
    },
    /// Spectrum from the chain-complex model, side by side with the formula.
    Spectrum {
        #[arg(long, value_parser = parse_model)]
        model: ModelName,
        #[arg(long)]
        count: usize,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// ECH index of a pair of orbit sets.
    Index {
        #[arg(long, value_parser = parse_model)]
        model: ModelName,
        #[arg(long, value_parser = parse_orbit_set)]
        alpha: OrbitSet,
        #[arg(long, value_parser = parse_orbit_set)]
        beta: OrbitSet,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Generators up to a grading, in grading order.
    Generators {
        #[arg(long, value_parser = parse_model)]
        model: ModelName,
        #[arg(long)]
        max_grading: u64,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Iterates the U map from an orbit set.
    Umap {
        #[arg(long, value_parser = parse_model)]
        model: ModelName,
        #[arg(long, value_parser = parse_orbit_set)]
        alpha: OrbitSet,
        /// Number of steps; defaults to running until the empty set.
        #[arg(long)]
        steps: Option<usize>,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Checks c_k(inner) <= c_k(outer) for k <= upto.
    Obstruct {
        #[arg(long, value_parser = parse_domain)]
        inner: DomainSpec,
        #[arg(long, value_parser = parse_domain)]
        outer: DomainSpec,
        #[arg(long)]
        upto: usize,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Gromov width with matching upper and lower bounds.
    Width {
        #[arg(long, value_enum)]
        domain: DStar,
        #[arg(long, default_value_t = DEFAULT_WIDTH_TERMS)]
        upto: usize,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Boundary curve of the moment-map image at one epsilon.
    MomentBoundary {
        #[arg(long, value_enum)]
        variant: VariantArg,
        #[arg(long)]
        epsilon: f64,
        /// Even number of Chebyshev samples in j.
        #[arg(long, default_value_t = 64)]
        samples: usize,
        /// Output file; `.json` selects JSON, anything else CSV. Defaults to stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Extrapolated eps -> 0 boundary and a convergence report.
    MomentLimit {
        #[arg(long, value_enum)]
        variant: VariantArg,
        /// `default` or a comma-separated strictly decreasing list.
        #[arg(long, default_value = "default")]
        ladder: String,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Area enclosed by a curve file and the axes.
    Area {
        #[arg(long)]
        curve: PathBuf,
        /// Close the curve at j = -1, 0, 1 by continuity first.
        #[arg(long)]
        close: bool,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
}

#[derive(Debug, Clone)]
enum DomainSpec {
    Ball(ExactQuantity),
    Ellipsoid(ExactQuantity, ExactQuantity),
    DStar(Surface),
}

impl DomainSpec {
    fn capacities(&self) -> Result<CapacitySequence, ExactError> {
        match self {
            DomainSpec::Ball(a) => ball_capacities(*a),
            DomainSpec::Ellipsoid(a, b) => ellipsoid_capacities(*a, *b),
            DomainSpec::DStar(s) => Ok(dstar_capacities(*s)),
        }
    }

    fn name(&self) -> String {
        match self {
            DomainSpec::Ball(a) => format!("ball:{a}"),
            DomainSpec::Ellipsoid(a, b) => format!("ellipsoid:{a},{b}"),
            DomainSpec::DStar(Surface::S2) => "dstar-s2".into(),
            DomainSpec::DStar(Surface::RP2) => "dstar-rp2".into(),
        }
    }
}

fn parse_domain(s: &str) -> Result<DomainSpec, String> {
    let q = |t: &str| t.trim().parse::<ExactQuantity>().map_err(|e| e.to_string());
    match s {
        "dstar-s2" => Ok(DomainSpec::DStar(Surface::S2)),
        "dstar-rp2" => Ok(DomainSpec::DStar(Surface::RP2)),
        _ => {
            if let Some(a) = s.strip_prefix("ball:") {
                Ok(DomainSpec::Ball(q(a)?))
            } else if let Some(rest) = s.strip_prefix("ellipsoid:") {
                let (a, b) = rest
                    .split_once(',')
                    .ok_or_else(|| format!("expected ellipsoid:A,B, got {s:?}"))?;
                Ok(DomainSpec::Ellipsoid(q(a)?, q(b)?))
            } else {
                Err(format!(
                    "unknown domain {s:?} (expected ball:A, ellipsoid:A,B, dstar-s2 or dstar-rp2)"
                ))
            }
        }
    }
}

fn parse_model(s: &str) -> Result<ModelName, String> {
    s.parse().map_err(|e: ComplexError| e.to_string())
}

fn parse_orbit_set(s: &str) -> Result<OrbitSet, String> {
    let (a, b) = s.split_once(',').ok_or_else(|| format!("expected m1,m2, got {s:?}"))?;
    let n = |t: &str| t.trim().parse::<u64>().map_err(|e| format!("{t:?}: {e}"));
    Ok(OrbitSet::new(n(a)?, n(b)?))
}

/// How a command failed, and with which exit code.
#[derive(Debug)]
enum Failure {
    Usage(String),
    Check(String),
    Instability(String),
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Check(_) => 1,
            Failure::Usage(_) => 2,
            Failure::Instability(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Check(m) | Failure::Instability(m) => m,
        }
    }
}

impl From<ExactError> for Failure {
    fn from(e: ExactError) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<ComplexError> for Failure {
    fn from(e: ComplexError) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<NumericError> for Failure {
    fn from(e: NumericError) -> Self {
        match e {
            NumericError::Instability(m) => Failure::Instability(m),
            NumericError::Geometry(m) => Failure::Check(format!("curve geometry: {m}")),
            other => Failure::Usage(other.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Usage(format!("I/O: {e}"))
    }
}

/// A rendered result: text for stdout, plus a failure that still prints it.
struct Outcome {
    text: String,
    failure: Option<Failure>,
}

impl Outcome {
    fn ok(text: String) -> Result<Self, Failure> {
        Ok(Self { text, failure: None })
    }
}

/// `v` with 15 significant digits, in scientific notation outside
/// `[1e-4, 1e15)`.
pub fn format_float(v: f64) -> String {
    if v == 0.0 || !v.is_finite() {
        return format!("{v}");
    }
    let magnitude = v.abs().log10().floor() as i32;
    if !(-4..15).contains(&magnitude) {
        return format!("{v:.14e}");
    }
    let decimals = (14 - magnitude).max(0) as usize;
    format!("{v:.decimals$}")
}

fn document(kind: &str, mut body: Value) -> String {
    let mut doc = json!({ "schema": SCHEMA, "kind": kind });
    if let (Some(d), Some(b)) = (doc.as_object_mut(), body.as_object_mut()) {
        d.append(b);
    }
    let mut s = serde_json::to_string_pretty(&doc).expect("json values serialize");
    s.push('\n');
    s
}

fn quantity_text(q: &ExactQuantity, float: bool) -> String {
    if float {
        format_float(q.to_f64())
    } else {
        q.to_string()
    }
}

/// Parses `args` (including the program name) and runs one command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = out.write_all(text.as_bytes());
                    0
                }
                _ => {
                    let _ = err.write_all(text.as_bytes());
                    2
                }
            };
        }
    };
    let result = match thread_cap() {
        Ok(Some(n)) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(|| dispatch(cli.command)),
            Err(e) => Err(Failure::Usage(format!("thread pool: {e}"))),
        },
        Ok(None) => dispatch(cli.command),
        Err(f) => Err(f),
    };
    match result {
        Ok(outcome) => {
            let _ = out.write_all(outcome.text.as_bytes());
            match outcome.failure {
                None => 0,
                Some(f) => {
                    let _ = writeln!(err, "{}", f.message());
                    f.code()
                }
            }
        }
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message());
            f.code()
        }
    }
}

fn thread_cap() -> Result<Option<usize>, Failure> {
    match std::env::var(THREADS_ENV) {
        Err(_) => Ok(None),
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(Some(n)),
            _ => Err(Failure::Usage(format!("{THREADS_ENV}={v:?} is not a positive integer"))),
        },
    }
}

fn dispatch(command: Command) -> Result<Outcome, Failure> {
    match command {
        Command::Capacities { domain, count, format, exact: _, float } => capacities(&domain, count, format, float),
        Command::Spectrum { model, count, format } => spectrum_cmd(model, count, format),
        Command::Index { model, alpha, beta, format } => index_cmd(model, alpha, beta, format),
        Command::Generators { model, max_grading, format } => generators_cmd(model, max_grading, format),
        Command::Umap { model, alpha, steps, format } => umap_cmd(model, alpha, steps, format),
        Command::Obstruct { inner, outer, upto, format } => obstruct_cmd(&inner, &outer, upto, format),
        Command::Width { domain, upto, format } => width_cmd(domain, upto, format),
        Command::MomentBoundary { variant, epsilon, samples, out } => boundary_cmd(variant.into(), epsilon, samples, out),
        Command::MomentLimit { variant, ladder, out, format } => limit_cmd(variant.into(), &ladder, out, format),
        Command::Area { curve, close, format } => area_cmd(&curve, close, format),
    }
}

fn capacities(domain: &DomainSpec, count: usize, format: Format, float: bool) -> Result<Outcome, Failure> {
    if count == 0 {
        return Err(Failure::Usage("--count must be at least 1".into()));
    }
    let seq = domain.capacities()?;
    let terms = seq.prefix(count)?;
    let text = match format {
        Format::Table => {
            let parts: Vec<String> = terms.iter().map(|q| quantity_text(q, float)).collect();
            format!("{}\n", parts.join(", "))
        }
        Format::Csv => {
            let mut s = String::from("k,value\n");
            for (k, q) in terms.iter().enumerate() {
                s.push_str(&format!("{k},{}\n", quantity_text(q, float)));
            }
            s
        }
        Format::Json => {
            let values: Value = if float {
                json!(terms.iter().map(|q| q.to_f64()).collect::<Vec<_>>())
            } else {
                json!(terms)
            };
            document(
                "capacities",
                json!({
                    "domain": domain.name(),
                    "rule": seq.label(),
                    "count": count,
                    "terms": values,
                    "display": terms.iter().map(|q| q.to_string()).collect::<Vec<_>>(),
                }),
            )
        }
    };
    Outcome::ok(text)
}

fn spectrum_cmd(name: ModelName, count: usize, format: Format) -> Result<Outcome, Failure> {
    if count == 0 {
        return Err(Failure::Usage("--count must be at least 1".into()));
    }
    let model = ZollModel::from_name(name);
    let chain = spectrum(&model, count)?;
    let formula_seq = formula_capacities(&model);
    let formula = formula_seq.prefix(count)?;
    let first_diff = chain.iter().zip(&formula).position(|(a, b)| a != b);
    let text = match format {
        Format::Table | Format::Csv => {
            let sep = if format == Format::Csv { "," } else { "\t" };
            let mut s = format!("k{sep}chain{sep}formula{sep}match\n");
            for (k, (a, b)) in chain.iter().zip(&formula).enumerate() {
                s.push_str(&format!("{k}{sep}{a}{sep}{b}{sep}{}\n", if a == b { "yes" } else { "NO" }));
            }
            s
        }
        Format::Json => document(
            "spectrum",
            json!({
                "model": name.to_string(),
                "formula": formula_seq.label(),
                "chain": chain,
                "sequence": formula,
                "equal": first_diff.is_none(),
            }),
        ),
    };
    let failure = first_diff.map(|k| {
        Failure::Check(format!(
            "spectrum differs from {} at k={k}: {} != {}",
            formula_seq.label(),
            chain[k],
            formula[k]
        ))
    });
    Ok(Outcome { text, failure })
}

fn index_cmd(name: ModelName, alpha: OrbitSet, beta: OrbitSet, format: Format) -> Result<Outcome, Failure> {
    let model = ZollModel::from_name(name);
    let parts = index_components(&model, alpha, beta)?;
    let total = parts.total();
    let closed = closed_form_index(&model, alpha, beta)?;
    let text = match format {
        Format::Json => document(
            "index",
            json!({
                "model": name.to_string(),
                "alpha": alpha,
                "beta": beta,
                "c_tau": parts.c_tau.to_string(),
                "q_tau": parts.q_tau.to_string(),
                "cz_alpha": parts.cz_sum_alpha,
                "cz_beta": parts.cz_sum_beta,
                "index": total,
                "closed_form": closed,
            }),
        ),
        _ => format!(
            "alpha: {alpha}\nbeta: {beta}\nc_tau: {}\nQ_tau: {}\nCZ(alpha): {}\nCZ(beta): {}\nI: {total}\n",
            parts.c_tau, parts.q_tau, parts.cz_sum_alpha, parts.cz_sum_beta
        ),
    };
    let failure = (closed != total)
        .then(|| Failure::Check(format!("assembled index {total} differs from closed form {closed}")));
    Ok(Outcome { text, failure })
}

fn generators_cmd(name: ModelName, max_grading: u64, format: Format) -> Result<Outcome, Failure> {
    let model = ZollModel::from_name(name);
    let gens = generators_by_grading(&model, max_grading)?;
    let rows: Vec<(i64, OrbitSet, ExactQuantity)> = gens
        .iter()
        .map(|&a| Ok((grading(&model, a)?, a, crate::zollcx::action(&model, a))))
        .collect::<Result<_, ComplexError>>()?;
    let text = match format {
        Format::Json => document(
            "generators",
            json!({
                "model": name.to_string(),
                "generators": rows.iter().map(|(g, a, act)| json!({
                    "grading": g, "m1": a.m1, "m2": a.m2, "action": act,
                })).collect::<Vec<_>>(),
            }),
        ),
        _ => {
            let sep = if format == Format::Csv { "," } else { "\t" };
            let mut s = format!("grading{sep}generator{sep}action\n");
            for (g, a, act) in &rows {
                s.push_str(&format!("{g}{sep}{a}{sep}{act}\n"));
            }
            s
        }
    };
    Outcome::ok(text)
}

fn umap_cmd(name: ModelName, alpha: OrbitSet, steps: Option<usize>, format: Format) -> Result<Outcome, Failure> {
    let model = ZollModel::from_name(name);
    let mut chain = u_chain(&model, alpha)?;
    if let Some(n) = steps {
        if n + 1 > chain.len() {
            return Err(Failure::Usage(format!(
                "{alpha} reaches the empty set after {} steps; cannot take {n}",
                chain.len() - 1
            )));
        }
        chain.truncate(n + 1);
    }
    let gradings: Vec<i64> = chain.iter().map(|&a| grading(&model, a)).collect::<Result<_, _>>()?;
    let bad = gradings.windows(2).position(|w| w[0] - w[1] != 2);
    let text = match format {
        Format::Json => document(
            "umap",
            json!({
                "model": name.to_string(),
                "chain": chain.iter().zip(&gradings).map(|(a, g)| json!({"m1": a.m1, "m2": a.m2, "grading": g})).collect::<Vec<_>>(),
            }),
        ),
        _ => {
            let sep = if format == Format::Csv { "," } else { "\t" };
            let mut s = format!("step{sep}orbit_set{sep}grading\n");
            for (i, (a, g)) in chain.iter().zip(&gradings).enumerate() {
                s.push_str(&format!("{i}{sep}{a}{sep}{g}\n"));
            }
            s
        }
    };
    let failure = bad.map(|i| {
        Failure::Check(format!(
            "U map step {i} changes grading by {} instead of -2",
            gradings[i + 1] - gradings[i]
        ))
    });
    Ok(Outcome { text, failure })
}

fn obstruct_cmd(inner: &DomainSpec, outer: &DomainSpec, upto: usize, format: Format) -> Result<Outcome, Failure> {
    let d = dominates_certified(&inner.capacities()?, &outer.capacities()?, upto)?;
    let text = match format {
        Format::Json => document(
            "obstruct",
            json!({ "inner": inner.name(), "outer": outer.name(), "upto": upto, "result": d }),
        ),
        _ => format!("{d}\n"),
    };
    let failure = match &d {
        Dominance::Holds { .. } => None,
        Dominance::FailsAt { .. } => Some(Failure::Check(format!(
            "{} does not embed in {}: {d}",
            inner.name(),
            outer.name()
        ))),
    };
    Ok(Outcome { text, failure })
}

fn width_cmd(domain: DStar, upto: usize, format: Format) -> Result<Outcome, Failure> {
    let surface = match domain {
        DStar::S2 => Surface::S2,
        DStar::Rp2 => Surface::RP2,
    };
    let cert = std::panic::catch_unwind(|| gromov_width_upto(surface, upto))
        .map_err(|_| Failure::Check("upper and lower width bounds disagree".into()))??;
    let upper_text = match cert.upper_source {
        UpperSource::CapacityRatio { k } => format!("c_{k} ratio at k={k}"),
        UpperSource::Volume { volume } => format!("volume sqrt(2*{volume}) = {}", cert.upper),
    };
    let text = match format {
        Format::Json => document("width", serde_json::to_value(&cert).expect("certificate serializes")),
        _ => format!("{}\nupper: {upper_text}; lower: {}\n", cert.width, cert.lower_source),
    };
    Outcome::ok(text)
}

fn write_curve(curve: &PlanarCurve, path: &Path) -> Result<(), Failure> {
    if path.extension().is_some_and(|e| e == "json") {
        fs::write(path, curve.to_json() + "\n")?;
    } else {
        let file = fs::File::create(path)?;
        curve.write_csv(file)?;
    }
    Ok(())
}

fn read_curve(path: &Path) -> Result<PlanarCurve, Failure> {
    let text = fs::read_to_string(path)?;
    let curve = if text.trim_start().starts_with(['{', '[']) {
        PlanarCurve::from_json(&text)?
    } else {
        PlanarCurve::read_csv(text.as_bytes())?
    };
    Ok(curve)
}

fn curve_csv(curve: &PlanarCurve) -> Result<String, Failure> {
    let mut buf = Vec::new();
    curve.write_csv(&mut buf)?;
    Ok(String::from_utf8(buf).expect("csv output is utf-8"))
}

fn boundary_cmd(variant: Variant, epsilon: f64, samples: usize, out: Option<PathBuf>) -> Result<Outcome, Failure> {
    let params = PerturbParams::for_variant(variant, epsilon)?;
    let grid = admissible_grid(&params, samples)?;
    let curve = boundary_curve(&params, &grid)?;
    match out {
        Some(path) => {
            write_curve(&curve, &path)?;
            Outcome::ok(format!(
                "wrote {} samples ({variant}, epsilon {}, C {}) to {}\n",
                curve.len(),
                format_float(epsilon),
                format_float(params.c()),
                path.display()
            ))
        }
        None => Outcome::ok(curve_csv(&curve)?),
    }
}

fn parse_ladder(s: &str) -> Result<Vec<f64>, Failure> {
    if s == "default" {
        return Ok(default_ladder());
    }
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<f64>()
                .map_err(|e| Failure::Usage(format!("ladder value {t:?}: {e}")))
        })
        .collect()
}

fn limit_cmd(variant: Variant, ladder: &str, out: Option<PathBuf>, format: Format) -> Result<Outcome, Failure> {
    let ladder = parse_ladder(ladder)?;
    let grid = default_limit_grid();
    let domain = limit_domain(variant, &ladder, &grid)?;
    let sup = sup_distance_to_limit(variant, &domain.curve)?;
    let area = domain.curve.closed_by_continuity()?.toric_area()?;
    let target_area = limit_area(variant)?;
    if let Some(path) = &out {
        write_curve(&domain.curve, path)?;
    }
    let r = &domain.report;
    let text = match format {
        Format::Json => document(
            "moment-limit",
            json!({
                "variant": variant.to_string(),
                "ladder": r.ladder,
                "class": r.class,
                "expected_ratio": r.expected_ratio,
                "median_ratio": r.median_ratio,
                "max_shift": r.max_shift,
                "max_err": domain.curve.max_err(),
                "nesting_holds": r.nesting_holds,
                "sup_distance_to_limit": sup,
                "area": area,
                "limit_area": target_area,
                "samples": domain.curve.len(),
            }),
        ),
        _ => {
            let opt = |v: Option<f64>| v.map(format_float).unwrap_or_else(|| "n/a".into());
            let mut s = String::new();
            s.push_str(&format!("variant: {variant}\n"));
            s.push_str(&format!(
                "ladder: {}\n",
                r.ladder.iter().map(|e| format!("{e:e}")).collect::<Vec<_>>().join(", ")
            ));
            s.push_str(&format!(
                "convergence: {:?} (difference ratio {} vs {} for linear)\n",
                r.class,
                opt(r.median_ratio),
                opt(r.expected_ratio)
            ));
            s.push_str(&format!("extrapolation shift: {}\n", format_float(r.max_shift)));
            s.push_str(&format!("max error bar: {}\n", format_float(domain.curve.max_err())));
            s.push_str(&format!("nesting: {}\n", if r.nesting_holds { "holds" } else { "violated" }));
            s.push_str(&format!("sup distance to limit: {}\n", format_float(sup)));
            s.push_str(&format!("area: {} (limit {})\n", format_float(area), format_float(target_area)));
            if out.is_none() {
                s.push_str(&curve_csv(&domain.curve)?);
            }
            s
        }
    };
    let failure = (!r.nesting_holds).then(|| Failure::Instability("images are not nested along the ladder".into()));
    Ok(Outcome { text, failure })
}

fn area_cmd(path: &Path, close: bool, format: Format) -> Result<Outcome, Failure> {
    let mut curve = read_curve(path)?;
    if close {
        curve = curve.closed_by_continuity()?;
    }
    let area = curve.toric_area()?;
    let text = match format {
        Format::Json => document("area", json!({ "curve": path.display().to_string(), "closed": close, "area": area })),
        _ => format!("{}\n", format_float(area)),
    };
    Outcome::ok(text)
}
