//! Output formats. Rationals are always written as `{"num", "den"}` pairs in
//! JSON and as separate columns in CSV; `pretty` renders `a/b`.

use std::fmt::Write as _;

use serde::Serialize;

use crate::bott::CohomologyVerdict;
use crate::datum::{AssociatedDatum, DatumEntry, DatumMatrices, DatumSource, HighestWeight};
use crate::error::{Error, Result};
use crate::rootsys::{ParabolicSet, RootSystem};
use crate::search::SearchReport;
use crate::ulrich::{FilterReport, UlrichVerdict};
use crate::Rational;

pub const SCHEMA: &str = "ulrich-lab/1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Pretty,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct WireRational {
    pub num: i64,
    pub den: i64,
}

impl From<Rational> for WireRational {
    fn from(q: Rational) -> Self {
        Self { num: *q.numer(), den: *q.denom() }
    }
}

fn json<T: Serialize>(v: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(v).map_err(|e| Error::Internal(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

fn csv_text(header: &[&str], rows: Vec<Vec<String>>) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let internal = |e: csv::Error| Error::Internal(e.to_string());
    w.write_record(header).map_err(internal)?;
    for r in rows {
        w.write_record(&r).map_err(internal)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Internal(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Error::Internal(e.to_string()))
}

fn tuple(a: &[i64]) -> String {
    let parts: Vec<String> = a.iter().map(i64::to_string).collect();
    format!("({})", parts.join(","))
}

fn type_name(rs: &RootSystem) -> String {
    format!("{}{}", rs.family(), rs.rank())
}

#[derive(Serialize)]
struct WireEntry {
    source: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    root: Option<Vec<i64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    i: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    j: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    u: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    v: Option<usize>,
    num: i64,
    den: i64,
}

impl From<&DatumEntry> for WireEntry {
    fn from(e: &DatumEntry) -> Self {
        let q = WireRational::from(e.value);
        let mut w = WireEntry {
            source: e.source.to_string(),
            root: None,
            i: None,
            j: None,
            u: None,
            v: None,
            num: q.num,
            den: q.den,
        };
        match &e.source {
            DatumSource::Root(r) => w.root = Some(r.coeffs().to_vec()),
            DatumSource::Matrix { label, i, j, u, v } => {
                w.source = label.short();
                (w.i, w.j, w.u, w.v) = (Some(*i), Some(*j), Some(*u), Some(*v));
            }
        }
        w
    }
}

fn entries(d: &AssociatedDatum) -> Vec<WireEntry> {
    d.entries().iter().map(WireEntry::from).collect()
}

#[derive(Serialize)]
struct WireRoot {
    coeffs: Vec<i64>,
    label: String,
    height: i64,
    #[serde(skip_serializing_if = "Option::is_none")]
    marked: Option<bool>,
}

#[derive(Serialize)]
struct RootsView {
    schema: &'static str,
    r#type: String,
    rank: usize,
    symmetrizer: Vec<WireRational>,
    cartan: Vec<Vec<i64>>,
    count: usize,
    positive_roots: Vec<WireRoot>,
    #[serde(skip_serializing_if = "Option::is_none")]
    nodes: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    dim: Option<usize>,
}

/// Positive roots; with a node set, each root is flagged by membership in
/// `Φ_J^+`.
pub fn render_roots(rs: &RootSystem, j: Option<&ParabolicSet>, format: Format) -> Result<String> {
    let marked = |coeffs: &[i64]| j.map(|j| j.nodes().iter().any(|&d| coeffs[d - 1] != 0));
    let roots: Vec<WireRoot> = rs
        .positive_roots()
        .iter()
        .map(|r| WireRoot {
            coeffs: r.coeffs().to_vec(),
            label: r.to_string(),
            height: r.height(),
            marked: marked(r.coeffs()),
        })
        .collect();
    let dim = j.map(|j| rs.dimension(j)).transpose()?;
    match format {
        Format::Json => json(&RootsView {
            schema: SCHEMA,
            r#type: type_name(rs),
            rank: rs.rank(),
            symmetrizer: rs.symmetrizer().iter().map(|&d| d.into()).collect(),
            cartan: rs.cartan().to_vec(),
            count: roots.len(),
            positive_roots: roots,
            nodes: j.map(|j| j.nodes().to_vec()),
            dim,
        }),
        Format::Csv => csv_text(
            &["root", "height", "coeffs", "marked"],
            roots
                .into_iter()
                .map(|r| {
                    let parts: Vec<String> = r.coeffs.iter().map(i64::to_string).collect();
                    vec![
                        r.label,
                        r.height.to_string(),
                        parts.join(" "),
                        r.marked.map(|m| m.to_string()).unwrap_or_default(),
                    ]
                })
                .collect(),
        ),
        Format::Pretty => {
            let mut s = format!("{}: {} positive roots\n", type_name(rs), roots.len());
            for r in roots {
                let flag = match r.marked {
                    Some(true) => "  *",
                    _ => "",
                };
                let _ = writeln!(s, "  {:<24} height {}{flag}", r.label, r.height);
            }
            if let (Some(j), Some(dim)) = (j, dim) {
                let _ = writeln!(s, "J = {j}: dim G/P_J = {dim} (* marks the roots counted)");
            }
            Ok(s)
        }
    }
}

#[derive(Serialize)]
struct ClosedFormView {
    case: String,
    mirrored: bool,
    entries: Vec<WireEntry>,
}

#[derive(Serialize)]
struct DatumView {
    schema: &'static str,
    r#type: String,
    nodes: Vec<usize>,
    normalized_nodes: Vec<usize>,
    case: String,
    weight: Vec<i64>,
    dim: usize,
    datum: Vec<WireEntry>,
    closed_form: Option<ClosedFormView>,
    equivalent: Option<bool>,
}

/// The root-by-root datum and, where one exists, the closed form.
pub fn render_datum(
    rs: &RootSystem,
    lw: &HighestWeight,
    generic: &AssociatedDatum,
    closed: Option<&DatumMatrices>,
    normalized: &ParabolicSet,
    case: &str,
    format: Format,
) -> Result<String> {
    let flat = closed.map(DatumMatrices::flatten);
    let equivalent = flat.as_ref().map(|f| f.values() == generic.values());
    match format {
        Format::Json => json(&DatumView {
            schema: SCHEMA,
            r#type: type_name(rs),
            nodes: lw.nodes().nodes().to_vec(),
            normalized_nodes: normalized.nodes().to_vec(),
            case: case.to_string(),
            weight: lw.coeffs().to_vec(),
            dim: generic.len(),
            datum: entries(generic),
            closed_form: closed.zip(flat.as_ref()).map(|(c, f)| ClosedFormView {
                case: c.case.tag().to_string(),
                mirrored: c.mirrored,
                entries: entries(f),
            }),
            equivalent,
        }),
        Format::Csv => {
            let shown = flat.as_ref().unwrap_or(generic);
            let opt = |x: Option<usize>| x.map(|v| v.to_string()).unwrap_or_default();
            let rows = entries(shown)
                .into_iter()
                .map(|e| {
                    vec![
                        e.source,
                        opt(e.i),
                        opt(e.j),
                        opt(e.u),
                        opt(e.v),
                        e.num.to_string(),
                        e.den.to_string(),
                    ]
                })
                .collect();
            csv_text(&["source", "i", "j", "u", "v", "num", "den"], rows)
        }
        Format::Pretty => {
            let mut s = format!("{} J={} weight {} [{case}]\n", type_name(rs), lw.nodes(), tuple(lw.coeffs()));
            let _ = writeln!(s, "dim X = {}", generic.len());
            for e in flat.as_ref().unwrap_or(generic).entries() {
                let _ = writeln!(s, "  {:<24} {}", e.source.to_string(), e.value);
            }
            if let Some(eq) = equivalent {
                let _ = writeln!(s, "closed form agrees with root-by-root values: {eq}");
            }
            Ok(s)
        }
    }
}

#[derive(Serialize)]
struct WireViolation {
    rule: String,
    index: usize,
    requirement: String,
    actual: WireRational,
}

#[derive(Serialize)]
struct FilterView {
    passed: bool,
    violations: Vec<WireViolation>,
}

impl From<&FilterReport> for FilterView {
    fn from(r: &FilterReport) -> Self {
        FilterView {
            passed: r.passed,
            violations: r
                .violations
                .iter()
                .map(|v| WireViolation {
                    rule: v.rule.to_string(),
                    index: v.index,
                    requirement: v.requirement.to_string(),
                    actual: v.actual.into(),
                })
                .collect(),
        }
    }
}

#[derive(Serialize)]
struct CheckView {
    schema: &'static str,
    r#type: String,
    nodes: Vec<usize>,
    normalized_nodes: Vec<usize>,
    case: String,
    weight: Vec<i64>,
    ulrich: bool,
    dim: usize,
    rank: u128,
    datum: Vec<WireRational>,
    witness: Option<String>,
    filters: FilterView,
}

pub struct CheckOutcome<'a> {
    pub rs: &'a RootSystem,
    pub lw: &'a HighestWeight,
    pub normalized: &'a ParabolicSet,
    pub case: &'a str,
    pub verdict: &'a UlrichVerdict,
    pub rank: u128,
    pub filters: &'a FilterReport,
}

pub fn render_check(c: &CheckOutcome<'_>, format: Format) -> Result<String> {
    let witness = c.verdict.witness.map(|w| w.to_string());
    match format {
        Format::Json => json(&CheckView {
            schema: SCHEMA,
            r#type: type_name(c.rs),
            nodes: c.lw.nodes().nodes().to_vec(),
            normalized_nodes: c.normalized.nodes().to_vec(),
            case: c.case.to_string(),
            weight: c.lw.coeffs().to_vec(),
            ulrich: c.verdict.is_ulrich,
            dim: c.verdict.dim,
            rank: c.rank,
            datum: c.verdict.datum.values().into_iter().map(Into::into).collect(),
            witness,
            filters: c.filters.into(),
        }),
        Format::Csv => csv_text(
            &["type", "nodes", "weight", "ulrich", "dim", "rank", "witness", "filters"],
            vec![vec![
                type_name(c.rs),
                c.lw.nodes().to_string(),
                tuple(c.lw.coeffs()),
                c.verdict.is_ulrich.to_string(),
                c.verdict.dim.to_string(),
                c.rank.to_string(),
                witness.unwrap_or_default(),
                if c.filters.passed { "pass".into() } else { "fail".into() },
            ]],
        ),
        Format::Pretty => {
            let mut s = format!(
                "{} J={} weight {}: {}\n",
                type_name(c.rs),
                c.lw.nodes(),
                tuple(c.lw.coeffs()),
                if c.verdict.is_ulrich { "Ulrich" } else { "not Ulrich" }
            );
            let _ = writeln!(s, "  dim X = {}, rank E = {}", c.verdict.dim, c.rank);
            let vals: Vec<String> = c.verdict.datum.values().iter().map(|v| v.to_string()).collect();
            let _ = writeln!(s, "  datum: {{{}}}", vals.join(", "));
            if let Some(w) = &witness {
                let _ = writeln!(s, "  witness: {w}");
            }
            for v in &c.filters.violations {
                let _ = writeln!(s, "  filter {v}");
            }
            Ok(s)
        }
    }
}

/// A disagreement found by a randomized cross-check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub nodes: Vec<usize>,
    pub weight: Vec<i64>,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CrossCheck {
    pub schema: &'static str,
    pub r#type: String,
    pub seed: u64,
    pub samples_per_case: usize,
    pub cases: usize,
    pub checked: usize,
    pub ulrich: usize,
    pub mismatches: Vec<Mismatch>,
}

pub fn render_cross_check(c: &CrossCheck, format: Format) -> Result<String> {
    match format {
        Format::Json => json(c),
        Format::Csv => csv_text(
            &["nodes", "weight", "detail"],
            c.mismatches
                .iter()
                .map(|m| {
                    let nodes: Vec<String> = m.nodes.iter().map(usize::to_string).collect();
                    vec![format!("{{{}}}", nodes.join(",")), tuple(&m.weight), m.detail.clone()]
                })
                .collect(),
        ),
        Format::Pretty => {
            let mut s = format!(
                "{} seed {}: {} weights over {} node sets, {} Ulrich, {} mismatches\n",
                c.r#type,
                c.seed,
                c.checked,
                c.cases,
                c.ulrich,
                c.mismatches.len()
            );
            for m in &c.mismatches {
                let _ = writeln!(s, "  {:?} {}: {}", m.nodes, tuple(&m.weight), m.detail);
            }
            Ok(s)
        }
    }
}

#[derive(Serialize)]
struct TwistView {
    t: i64,
    shifted: Vec<i64>,
    verdict: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    degree: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    dominant: Option<Vec<i64>>,
}

#[derive(Serialize)]
struct BottView {
    schema: &'static str,
    r#type: String,
    nodes: Vec<usize>,
    weight: Vec<i64>,
    dim: usize,
    twists: Vec<TwistView>,
    ulrich: bool,
}

pub struct BottOutcome<'a> {
    pub rs: &'a RootSystem,
    pub lw: &'a HighestWeight,
    pub dim: usize,
    /// `(t, shifted weight, verdict)`.
    pub twists: Vec<(i64, Vec<i64>, CohomologyVerdict)>,
    pub ulrich: bool,
}

pub fn render_bott(b: &BottOutcome<'_>, format: Format) -> Result<String> {
    let twists: Vec<TwistView> = b
        .twists
        .iter()
        .map(|(t, shifted, v)| match v {
            CohomologyVerdict::AllVanish => TwistView {
                t: *t,
                shifted: shifted.clone(),
                verdict: "ALL_VANISH",
                degree: None,
                dominant: None,
            },
            CohomologyVerdict::Nonzero { degree, dominant } => TwistView {
                t: *t,
                shifted: shifted.clone(),
                verdict: "NONZERO",
                degree: Some(*degree),
                dominant: Some(dominant.coeffs().to_vec()),
            },
        })
        .collect();
    match format {
        Format::Json => json(&BottView {
            schema: SCHEMA,
            r#type: type_name(b.rs),
            nodes: b.lw.nodes().nodes().to_vec(),
            weight: b.lw.coeffs().to_vec(),
            dim: b.dim,
            twists,
            ulrich: b.ulrich,
        }),
        Format::Csv => csv_text(
            &["t", "shifted", "verdict", "degree", "dominant"],
            twists
                .into_iter()
                .map(|t| {
                    vec![
                        t.t.to_string(),
                        tuple(&t.shifted),
                        t.verdict.to_string(),
                        t.degree.map(|d| d.to_string()).unwrap_or_default(),
                        t.dominant.map(|d| tuple(&d)).unwrap_or_default(),
                    ]
                })
                .collect(),
        ),
        Format::Pretty => {
            let mut s = format!("{} J={} weight {}\n", type_name(b.rs), b.lw.nodes(), tuple(b.lw.coeffs()));
            for (t, _, v) in &b.twists {
                let _ = writeln!(s, "  t = {t:>3}: {v}");
            }
            let _ = writeln!(s, "Ulrich by cohomology: {}", b.ulrich);
            Ok(s)
        }
    }
}

#[derive(Serialize)]
struct WireBound {
    k: usize,
    bound: i64,
    abar_bound: i64,
    root: Vec<i64>,
    eta_pairing: WireRational,
    coefficient: i64,
    symmetrizer: WireRational,
}

#[derive(Serialize)]
struct WireTouch {
    found: usize,
    k: usize,
}

#[derive(Serialize)]
struct WireFilterFailure {
    weight: Vec<i64>,
    rule: String,
    index: usize,
    requirement: String,
}

#[derive(Serialize)]
struct WireOracle {
    checked: usize,
    disagreements: Vec<Vec<i64>>,
}

#[derive(Serialize)]
struct CaseView {
    family: String,
    rank: usize,
    nodes: Vec<usize>,
    normalized_nodes: Vec<usize>,
    case: String,
    dim: usize,
    candidates: u128,
    evaluated: u128,
    pruned: u128,
    pruning: bool,
    found: Vec<Vec<i64>>,
    complete: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    time: Option<f64>,
    bounds: Vec<WireBound>,
    oracle: WireOracle,
    bound_touches: Vec<WireTouch>,
    filter_failures: Vec<WireFilterFailure>,
}

impl CaseView {
    fn new(r: &SearchReport, timing: bool) -> Self {
        CaseView {
            family: r.family.to_string(),
            rank: r.rank,
            nodes: r.nodes.nodes().to_vec(),
            normalized_nodes: r.normalized.nodes().to_vec(),
            case: r.case.tag().to_string(),
            dim: r.dim,
            candidates: r.candidates,
            evaluated: r.evaluated,
            pruned: r.pruned,
            pruning: r.use_filters,
            found: r.found.iter().map(|w| w.coeffs().to_vec()).collect(),
            complete: r.complete,
            time: timing.then(|| crate::search::seconds(r.elapsed)),
            bounds: r
                .bounds
                .trace
                .iter()
                .map(|s| WireBound {
                    k: s.k,
                    bound: r.bounds.upper[s.k - 1],
                    abar_bound: s.abar_bound,
                    root: s.root.coeffs().to_vec(),
                    eta_pairing: s.eta_pairing.into(),
                    coefficient: s.coefficient,
                    symmetrizer: s.symmetrizer.into(),
                })
                .collect(),
            oracle: WireOracle { checked: r.oracle.checked, disagreements: r.oracle.disagreements.clone() },
            bound_touches: r.bound_touches.iter().map(|&(found, k)| WireTouch { found, k }).collect(),
            filter_failures: r
                .filter_failures
                .iter()
                .map(|(w, v)| WireFilterFailure {
                    weight: w.clone(),
                    rule: v.rule.to_string(),
                    index: v.index,
                    requirement: v.requirement.to_string(),
                })
                .collect(),
        }
    }
}

#[derive(Serialize)]
struct ReportView {
    schema: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    passed: Option<bool>,
    cases: Vec<CaseView>,
}

fn found_cell(r: &SearchReport) -> String {
    if !r.complete {
        return "INCOMPLETE".into();
    }
    let parts: Vec<String> = r.found.iter().map(|w| tuple(w.coeffs())).collect();
    format!("[{}]", parts.join(","))
}

/// Search reports with stable columns `family, rank, nodes, dim, candidates,
/// pruned, found, time`. Wall time is only written when `timing` is set, so
/// that default output is reproducible byte for byte.
pub fn emit_report(reports: &[SearchReport], passed: Option<bool>, format: Format, timing: bool) -> Result<String> {
    let time = |r: &SearchReport| {
        if timing {
            format!("{:.3}", crate::search::seconds(r.elapsed))
        } else {
            "-".to_string()
        }
    };
    match format {
        Format::Json => json(&ReportView {
            schema: SCHEMA,
            passed,
            cases: reports.iter().map(|r| CaseView::new(r, timing)).collect(),
        }),
        Format::Csv => csv_text(
            &["family", "rank", "nodes", "dim", "candidates", "pruned", "found", "time"],
            reports
                .iter()
                .map(|r| {
                    vec![
                        r.family.to_string(),
                        r.rank.to_string(),
                        r.nodes.to_string(),
                        r.dim.to_string(),
                        r.candidates.to_string(),
                        r.pruned.to_string(),
                        found_cell(r),
                        time(r),
                    ]
                })
                .collect(),
        ),
        Format::Pretty => {
            let mut s = format!(
                "{:<6} {:>4} {:<14} {:>4} {:>14} {:>14} {:<12} {:>8}\n",
                "family", "rank", "nodes", "dim", "candidates", "pruned", "found", "time"
            );
            for r in reports {
                let _ = writeln!(
                    s,
                    "{:<6} {:>4} {:<14} {:>4} {:>14} {:>14} {:<12} {:>8}",
                    r.family.to_string(),
                    r.rank,
                    r.nodes.to_string(),
                    r.dim,
                    r.candidates,
                    r.pruned,
                    found_cell(r),
                    time(r)
                );
            }
            if let Some(p) = passed {
                let _ = writeln!(s, "{}", if p { "PASS: no Ulrich weights found" } else { "FAIL" });
            }
            Ok(s)
        }
    }
}
