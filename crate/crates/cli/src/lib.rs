//! Command-line surface for the closed-form spectral engine.
//!
//! Subcommands: `spectrum` (adjacency closed form), `laplacian`
//! (Laplacian closed form), `invariants`, `hjoin` (generalized
//! composition) and `verify` (build the product explicitly, eigensolve,
//! compare). Exit codes: 0 success or PASS, 1 verification FAIL, 2 usage
//! or size errors, 3 violated closed-form hypothesis.

pub mod json;

use std::fmt;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};

use lexspectra_core::eigen::{
    eigen_spectrum, multiset_equal, resolve_spectrum, BaseSpectrum, ExactReal, MatrixKind,
    GROUPING_TOLERANCE,
};
use lexspectra_core::graph::{parse_graph, power_graph, Graph, GraphSpec};
use lexspectra_core::invariants::{power_invariants, PowerInvariants};
use lexspectra_core::lexpower::{
    hjoin_adjacency_spectrum, hjoin_laplacian_spectrum, power_adjacency_spectrum,
    power_laplacian_spectrum, JoinPart, PowerParams,
};
use lexspectra_core::model::{Layer, SpectrumDescriptor};
use lexspectra_core::{Caps, Error as CoreError};

use json::{descriptor_json, GraphJson, InvariantsJson};

pub const ORACLE_CAP_ENV: &str = "LEXSPECTRA_ORACLE_CAP";

/// Oracle comparison tolerance used by `verify`.
pub const VERIFY_TOLERANCE: f64 = 1e-6;

#[derive(Debug, Parser)]
#[command(
    name = "lexspectra",
    version,
    about = "Exact spectra and invariants of iterated lexicographic graph products"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Adjacency spectrum of the k-fold product of H over G (regular factors)
    Spectrum(SpectrumArgs),
    /// Laplacian spectrum of the k-fold product of H over G (any factors)
    Laplacian(SpectrumArgs),
    /// Closed-form invariants of H^k
    Invariants(InvariantsArgs),
    /// Spectra of the generalized composition H[G_1, ..., G_n]
    Hjoin(HjoinArgs),
    /// Build the k-fold product explicitly, eigensolve it, and compare with the closed forms
    Verify(VerifyArgs),
}

/// Graph arguments accept generator strings (`cycle:4`, `petersen`),
/// inline JSON (`{"order":2,"edges":[[0,1]]}`) or `@path` to a JSON file.
#[derive(Debug, Args)]
pub struct SpectrumArgs {
    /// Outer factor H
    #[arg(long = "h")]
    pub h: String,
    /// Inner factor G; omitted means the pure power H^k
    #[arg(long = "g")]
    pub g: Option<String>,
    /// Number of product iterations
    #[arg(long = "k", default_value_t = 1)]
    pub k: u32,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    pub format: Format,
    /// Fractional digits in decimal columns
    #[arg(long, default_value_t = 12)]
    pub precision: usize,
    /// Most distinct degree-sum offsets per layer before summarizing
    #[arg(long = "expansion-cap", default_value_t = 1_000_000)]
    pub expansion_cap: usize,
    /// Use only the exact rational spectrum registry; never fall back to floats
    #[arg(long)]
    pub exact: bool,
}

#[derive(Debug, Args)]
pub struct InvariantsArgs {
    /// Base graph H
    #[arg(long = "h")]
    pub h: String,
    #[arg(long = "k", default_value_t = 1)]
    pub k: u32,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    pub format: Format,
    #[arg(long, default_value_t = 12)]
    pub precision: usize,
    /// Cap for the brute-force searches behind the exact invariants
    #[arg(long = "oracle-cap")]
    pub oracle_cap: Option<usize>,
}

#[derive(Debug, Args)]
pub struct HjoinArgs {
    /// Backbone graph H; one part is substituted per vertex
    #[arg(long = "h")]
    pub h: String,
    /// Part graphs, one per vertex of H, in vertex order
    #[arg(long = "part", required = true)]
    pub parts: Vec<String>,
    #[arg(long, value_enum, default_value_t = JoinKind::Both)]
    pub kind: JoinKind,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    pub format: Format,
    #[arg(long, default_value_t = 12)]
    pub precision: usize,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long = "h")]
    pub h: String,
    #[arg(long = "g")]
    pub g: Option<String>,
    #[arg(long = "k", default_value_t = 1)]
    pub k: u32,
    /// Largest product the oracle may build and eigensolve
    /// (default 2048; env LEXSPECTRA_ORACLE_CAP overrides)
    #[arg(long = "oracle-cap")]
    pub oracle_cap: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum JoinKind {
    Adjacency,
    Laplacian,
    Both,
}

#[derive(Debug)]
pub enum CliError {
    Core(CoreError),
    Io(String),
    Json(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Core(e) => e.fmt(f),
            CliError::Io(m) => write!(f, "io error: {m}"),
            CliError::Json(m) => write!(f, "json error: {m}"),
        }
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        CliError::Core(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(CoreError::Hypothesis(_)) => 3,
            _ => 2,
        }
    }
}

type CliResult<T> = Result<T, CliError>;

/// Parses a graph argument: generator string, inline JSON, or `@file`.
pub fn parse_spec(input: &str) -> CliResult<GraphSpec> {
    let trimmed = input.trim();
    if let Some(path) = trimmed.strip_prefix('@') {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Io(format!("cannot read {path}: {e}")))?;
        let parsed: GraphJson =
            serde_json::from_str(&text).map_err(|e| CliError::Json(format!("{path}: {e}")))?;
        return Ok(parsed.into());
    }
    if trimmed.starts_with('{') {
        let parsed: GraphJson =
            serde_json::from_str(trimmed).map_err(|e| CliError::Json(e.to_string()))?;
        return Ok(parsed.into());
    }
    Ok(trimmed.parse::<GraphSpec>()?)
}

fn effective_caps(oracle_cap: Option<usize>) -> Caps {
    let mut caps = Caps::default();
    let from_env = std::env::var(ORACLE_CAP_ENV)
        .ok()
        .and_then(|v| v.parse::<usize>().ok());
    if let Some(cap) = oracle_cap.or(from_env) {
        caps.construction = cap;
        caps.dense = caps.dense.min(cap);
        caps.search = caps.search.min(cap);
    }
    caps
}

/// Executes a parsed command, writing human/JSON output to `out`.
/// Returns the process exit code.
pub fn run(cli: Cli, out: &mut dyn Write) -> i32 {
    let result = match cli.command {
        Command::Spectrum(args) => spectrum_command(&args, MatrixKind::Adjacency, out),
        Command::Laplacian(args) => spectrum_command(&args, MatrixKind::Laplacian, out),
        Command::Invariants(args) => invariants_command(&args, out),
        Command::Hjoin(args) => hjoin_command(&args, out),
        Command::Verify(args) => verify_command(&args, out),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(out, "error: {e}");
            e.exit_code()
        }
    }
}

fn resolved(
    input: &str,
    kind: MatrixKind,
    exact: bool,
    caps: &Caps,
) -> CliResult<(GraphSpec, Graph, BaseSpectrum)> {
    let spec = parse_spec(input)?;
    let graph = parse_graph(&spec)?;
    let spectrum = resolve_spectrum(&spec, &graph, kind, exact, caps)?;
    Ok((spec, graph, spectrum))
}

fn spectrum_command(args: &SpectrumArgs, kind: MatrixKind, out: &mut dyn Write) -> CliResult<i32> {
    let caps = effective_caps(None);
    let (h_spec, h, h_spectrum) = resolved(&args.h, kind, args.exact, &caps)?;
    let g = match &args.g {
        Some(g) => {
            let (spec, graph, spectrum) = resolved(g, kind, args.exact, &caps)?;
            Some((spec, graph, spectrum))
        }
        None => None,
    };
    let g_label = g.as_ref().map(|(spec, _, _)| spec.to_string());
    let params = PowerParams::new(
        h,
        h_spectrum,
        g.map(|(_, graph, spectrum)| (graph, spectrum)),
        args.k,
    )?;
    let descriptor = match kind {
        MatrixKind::Adjacency => power_adjacency_spectrum(&params)?,
        MatrixKind::Laplacian => power_laplacian_spectrum(&params, args.expansion_cap)?,
        MatrixKind::SignlessLaplacian => unreachable!("no closed form is exposed"),
    };
    let normalized = descriptor.normalize();
    let regularity = normalized
        .entries()
        .iter()
        .find(|e| e.layer == Layer::Perron)
        .map(|e| e.value.decimal(args.precision))
        .transpose()?;
    match args.format {
        Format::Json => {
            let doc = descriptor_json(&normalized, regularity);
            let text =
                serde_json::to_string_pretty(&doc).map_err(|e| CliError::Json(e.to_string()))?;
            writeln!(out, "{text}")?;
        }
        Format::Table => {
            let title = match &g_label {
                Some(g) => format!("{kind} spectrum of H^{}[G], H = {h_spec}, G = {g}", args.k),
                None => format!("{kind} spectrum of H^{}, H = {h_spec}", args.k),
            };
            writeln!(out, "{title}")?;
            write!(out, "order: {}", normalized.order())?;
            if let Some(r) = &regularity {
                write!(out, "    regularity: {r}")?;
            }
            writeln!(out)?;
            render_descriptor_table(&normalized, args.precision, out)?;
        }
    }
    Ok(0)
}

/// Renders one affine value at the requested precision, backing off to the
/// guaranteed digit count when the scaled error bound cannot support it.
fn display_value(
    value: &lexspectra_core::model::AffineEigenvalue,
    precision: usize,
) -> CliResult<String> {
    match value.decimal(precision) {
        Ok(s) => Ok(s),
        Err(CoreError::Precision { achievable, .. }) if achievable >= 0 => {
            let s = value.decimal(achievable as usize)?;
            Ok(format!("~{s}"))
        }
        Err(CoreError::Precision { .. }) => Ok(format!("~{:e}", value.approx())),
        Err(e) => Err(e.into()),
    }
}

fn render_descriptor_table(
    d: &SpectrumDescriptor,
    precision: usize,
    out: &mut dyn Write,
) -> CliResult<()> {
    let mut rows = vec![[
        "value".to_string(),
        "multiplicity".to_string(),
        "symbolic".to_string(),
        "layer".to_string(),
    ]];
    for e in d.entries() {
        rows.push([
            display_value(&e.value, precision)?,
            e.multiplicity.to_string(),
            e.value.symbolic(),
            e.layer.to_string(),
        ]);
    }
    let mut widths = [0usize; 4];
    for row in &rows {
        for (w, cell) in widths.iter_mut().zip(row.iter()) {
            *w = (*w).max(cell.len());
        }
    }
    for row in &rows {
        writeln!(
            out,
            "{:>w0$}  {:>w1$}  {:<w2$}  {}",
            row[0],
            row[1],
            row[2],
            row[3],
            w0 = widths[0],
            w1 = widths[1],
            w2 = widths[2],
        )?;
    }
    if !d.summarized().is_empty() {
        writeln!(out, "summarized layers (offsets above the expansion cap):")?;
        for s in d.summarized() {
            let base = s
                .base
                .as_ref()
                .map(|b| b.value.to_string())
                .unwrap_or_else(|| "0".to_string());
            writeln!(
                out,
                "  layer {}: {}*({}) + offsets[count {}, sum {}, min {}, max {}] x{}",
                s.layer,
                s.scale,
                base,
                s.summary.count,
                s.summary.sum,
                s.summary.min,
                s.summary.max,
                s.base_multiplicity,
            )?;
        }
    }
    Ok(())
}

fn exact_real_string(v: &ExactReal) -> String {
    v.to_string()
}

fn invariants_command(args: &InvariantsArgs, out: &mut dyn Write) -> CliResult<i32> {
    let caps = effective_caps(args.oracle_cap);
    let spec = parse_spec(&args.h)?;
    let record = power_invariants(&spec, args.k, &caps)?;
    let h = parse_graph(&spec)?;
    let order = num_string_pow(h.order(), args.k);
    let doc = invariants_json(&spec, args.k, &order, &record);
    match args.format {
        Format::Json => {
            let text =
                serde_json::to_string_pretty(&doc).map_err(|e| CliError::Json(e.to_string()))?;
            writeln!(out, "{text}")?;
        }
        Format::Table => {
            writeln!(out, "invariants of H^{}, H = {spec}", args.k)?;
            let mut lines: Vec<(&str, String)> = vec![
                ("order", doc.order.clone()),
                ("min degree", doc.min_degree.clone()),
                ("max degree", doc.max_degree.clone()),
                ("diameter", doc.diameter.clone()),
                ("independence number", doc.independence_number.clone()),
                ("clique number", doc.clique_number.clone()),
                ("vertex connectivity", doc.vertex_connectivity.clone()),
            ];
            if let (Some(lo), Some(hi)) =
                (&doc.connectivity_lower_bound, &doc.connectivity_upper_bound)
            {
                lines.push(("connectivity bounds", format!("[{lo}, {hi}]")));
            }
            lines.push((
                "signless index bounds",
                format!(
                    "[{}, {}]",
                    doc.signless_index_lower, doc.signless_index_upper
                ),
            ));
            lines.push((
                "signless least bound",
                format!("< {}", doc.signless_least_strict_upper),
            ));
            if let (Some(b), Some(c)) = (&doc.hoffman_chromatic_lower_bound, &doc.hoffman_ceiling) {
                lines.push(("chromatic lower bound", format!("{b} (ceiling {c})")));
            }
            lines.push(("stability number", doc.stability_number.clone()));
            lines.push(("stability upper bound", doc.stability_upper_bound.clone()));
            let width = lines.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
            for (key, value) in lines {
                writeln!(out, "{key:<width$}  {value}")?;
            }
        }
    }
    Ok(0)
}

fn num_string_pow(n: usize, k: u32) -> String {
    // n^k as a decimal string; little-endian digit vector, one multiply
    // per iteration, since the order can exceed every machine word
    let mut digits: Vec<u32> = vec![1];
    for _ in 0..k {
        let mut carry = 0u64;
        for d in digits.iter_mut() {
            let v = *d as u64 * n as u64 + carry;
            *d = (v % 10) as u32;
            carry = v / 10;
        }
        while carry > 0 {
            digits.push((carry % 10) as u32);
            carry /= 10;
        }
    }
    digits
        .iter()
        .rev()
        .map(|d| char::from_digit(*d, 10).unwrap())
        .collect()
}

fn invariants_json(
    spec: &GraphSpec,
    k: u32,
    order: &str,
    record: &PowerInvariants,
) -> InvariantsJson {
    InvariantsJson {
        base: spec.to_string(),
        k,
        order: order.to_string(),
        min_degree: record.min_degree.to_string(),
        max_degree: record.max_degree.to_string(),
        diameter: record.diameter.to_string(),
        independence_number: record.independence_number.to_string(),
        clique_number: record.clique_number.to_string(),
        vertex_connectivity: record.vertex_connectivity.to_string(),
        connectivity_lower_bound: record
            .connectivity_bounds
            .as_ref()
            .map(|(lo, _)| exact_real_string(lo)),
        connectivity_upper_bound: record
            .connectivity_bounds
            .as_ref()
            .map(|(_, hi)| hi.to_string()),
        signless_index_lower: record.signless_index_bounds.0.to_string(),
        signless_index_upper: record.signless_index_bounds.1.to_string(),
        signless_least_strict_upper: record.signless_least_upper.to_string(),
        hoffman_chromatic_lower_bound: record
            .hoffman_bound
            .as_ref()
            .map(|b| exact_real_string(&b.bound)),
        hoffman_ceiling: record.hoffman_bound.as_ref().map(|b| b.ceiling.to_string()),
        stability_number: record.stability_bound.exact.to_string(),
        stability_upper_bound: exact_real_string(&record.stability_bound.tight),
    }
}

fn render_pairs(
    title: &str,
    pairs: &[(f64, u64)],
    precision: usize,
    out: &mut dyn Write,
) -> CliResult<()> {
    writeln!(out, "{title}")?;
    for (value, mult) in pairs {
        let mut text = format!("{value:.prec$}", prec = precision.min(15));
        if text.starts_with('-') && text[1..].bytes().all(|b| b == b'0' || b == b'.') {
            text.remove(0);
        }
        writeln!(out, "  {text}  x{mult}")?;
    }
    Ok(())
}

#[derive(Debug, serde::Serialize)]
struct HjoinJson {
    adjacency: Option<Vec<PairJson>>,
    laplacian: Option<Vec<PairJson>>,
}

#[derive(Debug, serde::Serialize)]
struct PairJson {
    value: f64,
    multiplicity: u64,
}

fn hjoin_command(args: &HjoinArgs, out: &mut dyn Write) -> CliResult<i32> {
    let caps = effective_caps(None);
    let h_spec = parse_spec(&args.h)?;
    let h = parse_graph(&h_spec)?;
    if args.parts.len() != h.order() {
        return Err(CoreError::Parse(format!(
            "H has {} vertices but {} parts were given",
            h.order(),
            args.parts.len()
        ))
        .into());
    }
    let mut adjacency_parts = Vec::new();
    let mut laplacian_parts = Vec::new();
    for part in &args.parts {
        let spec = parse_spec(part)?;
        let graph = parse_graph(&spec)?;
        let adjacency = resolve_spectrum(&spec, &graph, MatrixKind::Adjacency, false, &caps)?;
        let laplacian = resolve_spectrum(&spec, &graph, MatrixKind::Laplacian, false, &caps)?;
        adjacency_parts.push(JoinPart::new(adjacency, graph.order(), graph.regularity())?);
        laplacian_parts.push(JoinPart::new(laplacian, graph.order(), graph.regularity())?);
    }
    let adjacency = match args.kind {
        JoinKind::Adjacency => Some(hjoin_adjacency_spectrum(&h, &adjacency_parts)?),
        JoinKind::Laplacian => None,
        JoinKind::Both => match hjoin_adjacency_spectrum(&h, &adjacency_parts) {
            Ok(s) => Some(s),
            Err(CoreError::Hypothesis(m)) => {
                if args.format == Format::Table {
                    writeln!(out, "adjacency spectrum skipped: {m}")?;
                }
                None
            }
            Err(e) => return Err(e.into()),
        },
    };
    let laplacian = match args.kind {
        JoinKind::Adjacency => None,
        _ => Some(hjoin_laplacian_spectrum(&h, &laplacian_parts)?),
    };
    match args.format {
        Format::Json => {
            let to_json = |pairs: &Vec<(f64, u64)>| {
                pairs
                    .iter()
                    .map(|&(value, multiplicity)| PairJson {
                        value,
                        multiplicity,
                    })
                    .collect::<Vec<_>>()
            };
            let doc = HjoinJson {
                adjacency: adjacency.as_ref().map(to_json),
                laplacian: laplacian.as_ref().map(to_json),
            };
            let text =
                serde_json::to_string_pretty(&doc).map_err(|e| CliError::Json(e.to_string()))?;
            writeln!(out, "{text}")?;
        }
        Format::Table => {
            if let Some(pairs) = &adjacency {
                render_pairs("adjacency spectrum:", pairs, args.precision, out)?;
            }
            if let Some(pairs) = &laplacian {
                render_pairs("laplacian spectrum:", pairs, args.precision, out)?;
            }
        }
    }
    Ok(0)
}

fn verify_command(args: &VerifyArgs, out: &mut dyn Write) -> CliResult<i32> {
    let caps = effective_caps(args.oracle_cap);
    let h_spec = parse_spec(&args.h)?;
    let h = parse_graph(&h_spec)?;
    let g = match &args.g {
        Some(g) => {
            let spec = parse_spec(g)?;
            Some((spec.clone(), parse_graph(&spec)?))
        }
        None => None,
    };
    let built = power_graph(&h, args.k, g.as_ref().map(|(_, g)| g), caps.dense)?;
    writeln!(
        out,
        "verify: built the explicit product ({})",
        built.describe()
    )?;
    let mut failed = false;
    for kind in [MatrixKind::Adjacency, MatrixKind::Laplacian] {
        let label = kind.to_string();
        let h_spectrum = resolve_spectrum(&h_spec, &h, kind, false, &caps)?;
        let g_pair = match &g {
            Some((spec, graph)) => Some((
                graph.clone(),
                resolve_spectrum(spec, graph, kind, false, &caps)?,
            )),
            None => None,
        };
        let params = PowerParams::new(h.clone(), h_spectrum, g_pair, args.k)?;
        let descriptor = match kind {
            MatrixKind::Adjacency => match power_adjacency_spectrum(&params) {
                Ok(d) => d,
                Err(CoreError::Hypothesis(m)) => {
                    writeln!(out, "{label}: skipped ({m})")?;
                    continue;
                }
                Err(e) => return Err(e.into()),
            },
            _ => power_laplacian_spectrum(&params, caps.expansion)?,
        };
        let closed = descriptor.expand_numeric(caps.dense)?;
        let oracle = eigen_spectrum(&built, kind, GROUPING_TOLERANCE, &caps)?.to_pairs();
        let cmp = multiset_equal(&closed, &oracle, VERIFY_TOLERANCE);
        if cmp.equal {
            writeln!(out, "{label}: PASS")?;
        } else {
            failed = true;
            writeln!(out, "{label}: FAIL ({})", cmp.report())?;
        }
    }
    Ok(if failed { 1 } else { 0 })
}
