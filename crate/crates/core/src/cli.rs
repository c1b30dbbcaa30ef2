//! Command-line surface.
//!
//! Exit codes: 0 when a result was computed, 1 when `verify` finds an Ulrich
//! weight or leaves a case incomplete (and when a randomized `check` finds a
//! disagreement), 2 for invalid input.

use std::ffi::OsString;
use std::path::PathBuf;
use std::time::Duration;

use clap::{Args, Parser, Subcommand};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bott::{bott_cohomology, stable_window, ulrich_via_bott, TwistedWeight};
use crate::datum::{classify_case, datum_closed_form, datum_equivalent, datum_generic, ClosedFormCase, HighestWeight};
use crate::error::{Error, Result};
use crate::parse::{parse_family_list, parse_int_list, parse_nodes, parse_rank};
use crate::report::{
    emit_report, render_bott, render_check, render_cross_check, render_datum, render_roots, BottOutcome,
    CheckOutcome, CrossCheck, Format, Mismatch, SCHEMA,
};
use crate::rootsys::{Family, LieType, ParabolicSet, RootSystem};
use crate::search::{exhaustive_search, verify_theorem, SearchOptions};
use crate::ulrich::{bundle_rank, is_ulrich, necessary_filters};

#[derive(Parser, Debug)]
#[command(name = "ulrich-lab", version, about = "Ulrich tests for homogeneous bundles on classical G/P")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[arg(long, global = true, value_enum, default_value = "json")]
    format: Format,
    /// Write output to FILE instead of standard output.
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List positive roots, optionally marking those of a parabolic.
    Roots(RootsArgs),
    /// Associated datum of a highest weight, root by root and in closed form.
    Datum(WeightArgs),
    /// Decide the Ulrich property, or cross-check deciders on random weights.
    Check(CheckArgs),
    /// Cohomology of the twists of a bundle.
    Bott(BottArgs),
    /// Exhaustive bounded search on one node set.
    Search(SearchArgs),
    /// Search every node set with at least two marked nodes.
    Verify(VerifyArgs),
}

#[derive(Args, Debug)]
struct TypeArgs {
    /// Root system family: A, B, C or D.
    #[arg(long = "type", value_name = "FAMILY")]
    family: String,
    /// Rank n: A from 1, B and C from 2 (C_2 is B_2 with nodes swapped), D from 4.
    #[arg(long)]
    rank: String,
}

#[derive(Args, Debug)]
struct RootsArgs {
    #[command(flatten)]
    ty: TypeArgs,
    #[arg(long)]
    nodes: Option<String>,
}

#[derive(Args, Debug)]
struct WeightArgs {
    #[command(flatten)]
    ty: TypeArgs,
    #[arg(long)]
    nodes: String,
    /// Coefficients a_1..a_n in the fundamental-weight basis.
    #[arg(long, allow_hyphen_values = true)]
    weight: String,
}

#[derive(Args, Debug)]
struct CheckArgs {
    #[command(flatten)]
    ty: TypeArgs,
    /// Node set; every node set when omitted in randomized mode.
    #[arg(long)]
    nodes: Option<String>,
    #[arg(long, allow_hyphen_values = true, conflicts_with = "seed")]
    weight: Option<String>,
    /// Cross-check on random weights drawn from this seed.
    #[arg(long)]
    seed: Option<u64>,
    /// Random weights per node set.
    #[arg(long, default_value_t = 200, requires = "seed")]
    samples: usize,
    /// Largest random coefficient.
    #[arg(long, default_value_t = 10, requires = "seed")]
    max_coeff: i64,
}

#[derive(Args, Debug)]
struct BottArgs {
    #[command(flatten)]
    weight: WeightArgs,
    /// A single twist; the whole decisive window when omitted.
    #[arg(long, allow_hyphen_values = true)]
    twist: Option<i64>,
}

#[derive(Args, Debug)]
struct SearchFlags {
    /// Enumerate the full bound box without pruning.
    #[arg(long)]
    no_prune: bool,
    /// Per-case time budget in seconds.
    #[arg(long, default_value_t = 300.0, value_parser = parse_budget)]
    budget: f64,
    #[arg(long)]
    threads: Option<usize>,
    /// Include wall time in the output.
    #[arg(long)]
    timing: bool,
}

impl SearchFlags {
    fn options(&self) -> SearchOptions {
        SearchOptions {
            use_filters: !self.no_prune,
            budget: Some(Duration::from_secs_f64(self.budget)),
            threads: self.threads,
            ..SearchOptions::default()
        }
    }
}

fn parse_budget(s: &str) -> std::result::Result<f64, String> {
    match s.parse::<f64>() {
        Ok(b) if b.is_finite() && (0.0..=1e9).contains(&b) => Ok(b),
        _ => Err(format!("budget must be a number of seconds between 0 and 1e9, got {s:?}")),
    }
}

#[derive(Args, Debug)]
struct SearchArgs {
    #[command(flatten)]
    ty: TypeArgs,
    #[arg(long)]
    nodes: String,
    #[command(flatten)]
    flags: SearchFlags,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// Comma list of families.
    #[arg(long = "type", value_name = "FAMILIES", default_value = "B,C,D")]
    families: String,
    #[arg(long, default_value_t = 6)]
    max_rank: usize,
    #[command(flatten)]
    flags: SearchFlags,
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(code: i32, stdout: String) -> Self {
        Self { code, stdout, stderr: String::new() }
    }

    fn err(code: i32, stderr: String) -> Self {
        Self { code, stdout: String::new(), stderr }
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Internal(_) => 1,
        _ => 2,
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() { Outcome::err(2, text) } else { Outcome::ok(0, text) };
        }
    };
    match dispatch(&cli) {
        Ok((code, text)) => match &cli.out {
            Some(path) => match std::fs::write(path, &text) {
                Ok(()) => Outcome::ok(code, String::new()),
                Err(e) => Outcome::err(2, format!("cannot write {}: {e}\n", path.display())),
            },
            None => Outcome::ok(code, text),
        },
        Err(e) => Outcome::err(exit_code(&e), format!("ulrich-lab: {e}\n")),
    }
}

fn root_system(ty: &TypeArgs) -> Result<RootSystem> {
    let family: Family = ty.family.parse()?;
    let rank = parse_rank(&ty.rank)?;
    Ok(RootSystem::new(LieType::new(family, rank)?))
}

fn highest_weight(w: &WeightArgs) -> Result<(RootSystem, HighestWeight)> {
    let rs = root_system(&w.ty)?;
    let nodes = parse_nodes(&w.nodes, rs.rank())?;
    let a = parse_int_list(&w.weight)?;
    let lw = HighestWeight::new(a, nodes)?;
    Ok((rs, lw))
}

fn dispatch(cli: &Cli) -> Result<(i32, String)> {
    let format = cli.format;
    match &cli.command {
        Command::Roots(a) => {
            let rs = root_system(&a.ty)?;
            let j = a.nodes.as_deref().map(|s| parse_nodes(s, rs.rank())).transpose()?;
            Ok((0, render_roots(&rs, j.as_ref(), format)?))
        }
        Command::Datum(a) => {
            let (rs, lw) = highest_weight(a)?;
            let generic = datum_generic(&lw, &rs)?;
            let class = classify_case(rs.lie_type(), lw.nodes());
            let closed = match class.case {
                ClosedFormCase::GenericOnly => None,
                _ => Some(datum_closed_form(&lw, &rs)?),
            };
            let text =
                render_datum(&rs, &lw, &generic, closed.as_ref(), &class.normalized, class.case.tag(), format)?;
            Ok((0, text))
        }
        Command::Check(a) => match (&a.weight, a.seed) {
            (Some(w), _) => {
                let nodes = a.nodes.clone().ok_or_else(|| Error::Usage("--weight needs --nodes".into()))?;
                let (rs, lw) = highest_weight(&WeightArgs { ty: clone_ty(&a.ty), nodes, weight: w.clone() })?;
                let class = classify_case(rs.lie_type(), lw.nodes());
                let verdict = is_ulrich(&lw, &rs)?;
                let filters = necessary_filters(&lw, &rs, class.case)?;
                let outcome = CheckOutcome {
                    rs: &rs,
                    lw: &lw,
                    normalized: &class.normalized,
                    case: class.case.tag(),
                    verdict: &verdict,
                    rank: bundle_rank(&lw, &rs)?,
                    filters: &filters,
                };
                Ok((0, render_check(&outcome, format)?))
            }
            (None, Some(seed)) => {
                let rs = root_system(&a.ty)?;
                let sets = match &a.nodes {
                    Some(s) => vec![parse_nodes(s, rs.rank())?],
                    None => ParabolicSet::all(rs.rank()),
                };
                if a.max_coeff < 0 {
                    return Err(Error::Usage("--max-coeff must be non-negative".into()));
                }
                let report = cross_check(&rs, &sets, a.samples, seed, a.max_coeff)?;
                let code = i32::from(!report.mismatches.is_empty());
                Ok((code, render_cross_check(&report, format)?))
            }
            (None, None) => Err(Error::Usage("check needs --weight (with --nodes) or --seed".into())),
        },
        Command::Bott(a) => {
            let (rs, lw) = highest_weight(&a.weight)?;
            if !lw.is_nonnegative() {
                return Err(Error::Domain("cohomology scan needs every a_i >= 0".into()));
            }
            let dim = rs.dimension(lw.nodes())?;
            let ts: Vec<i64> = match a.twist {
                Some(t) => vec![t],
                None => {
                    let (lo, hi) = stable_window(&lw, &rs)?;
                    (lo.min(1)..=hi.max(dim as i64)).collect()
                }
            };
            let mut twists = Vec::with_capacity(ts.len());
            for t in ts {
                let tw = TwistedWeight::new(lw.clone(), t);
                let v = bott_cohomology(&tw, &rs)?;
                twists.push((t, tw.shifted().coeffs().to_vec(), v));
            }
            let ulrich = ulrich_via_bott(&lw, &rs)?;
            Ok((0, render_bott(&BottOutcome { rs: &rs, lw: &lw, dim, twists, ulrich }, format)?))
        }
        Command::Search(a) => {
            let rs = root_system(&a.ty)?;
            let j = parse_nodes(&a.nodes, rs.rank())?;
            let report = exhaustive_search(&rs, &j, &a.flags.options())?;
            Ok((0, emit_report(&[report], None, format, a.flags.timing)?))
        }
        Command::Verify(a) => {
            let families = parse_family_list(&a.families)?;
            if families.contains(&Family::A) {
                return Err(Error::Config("verify covers types B, C and D; use search for type A".into()));
            }
            if families.iter().all(|f| a.max_rank < f.min_rank()) {
                return Err(Error::Config(format!("--max-rank {} leaves no case to search", a.max_rank)));
            }
            if a.max_rank > crate::parse::MAX_RANK {
                return Err(Error::Usage(format!("--max-rank above {}", crate::parse::MAX_RANK)));
            }
            let v = verify_theorem(&families, a.max_rank, &a.flags.options())?;
            let code = i32::from(!v.passed);
            Ok((code, emit_report(&v.reports, Some(v.passed), format, a.flags.timing)?))
        }
    }
}

fn clone_ty(t: &TypeArgs) -> TypeArgs {
    TypeArgs { family: t.family.clone(), rank: t.rank.clone() }
}

/// Draws `samples` weights with coefficients in `0..=max_coeff` for each node
/// set and compares the datum criterion, the cohomology oracle and (types B,
/// C, D) the closed form.
pub fn cross_check(
    rs: &RootSystem,
    sets: &[ParabolicSet],
    samples: usize,
    seed: u64,
    max_coeff: i64,
) -> Result<CrossCheck> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = CrossCheck {
        schema: SCHEMA,
        r#type: format!("{}{}", rs.family(), rs.rank()),
        seed,
        samples_per_case: samples,
        cases: sets.len(),
        checked: 0,
        ulrich: 0,
        mismatches: Vec::new(),
    };
    for j in sets {
        let closed = classify_case(rs.lie_type(), j).case != ClosedFormCase::GenericOnly;
        for _ in 0..samples {
            let a: Vec<i64> = (0..rs.rank()).map(|_| rng.gen_range(0..=max_coeff)).collect();
            let lw = HighestWeight::new(a, j.clone())?;
            let criterion = is_ulrich(&lw, rs)?.is_ulrich;
            let oracle = ulrich_via_bott(&lw, rs)?;
            report.checked += 1;
            report.ulrich += usize::from(criterion);
            let mut push = |detail: String| {
                report.mismatches.push(Mismatch {
                    nodes: j.nodes().to_vec(),
                    weight: lw.coeffs().to_vec(),
                    detail,
                })
            };
            if criterion != oracle {
                push(format!("datum criterion {criterion}, cohomology {oracle}"));
            }
            if closed {
                let eq = datum_equivalent(&lw, rs)?;
                if let Some(d) = eq.discrepancy {
                    push(format!(
                        "closed form has {} copies of {}, root-by-root {}",
                        d.closed_form_count, d.value, d.generic_count
                    ));
                }
            }
        }
    }
    Ok(report)
}
