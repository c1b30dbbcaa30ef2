//! Bounded exhaustive search for Ulrich weights.
//!
//! If `E_λ` is Ulrich then every value `φ(α)` lies in `[1, dim X]`. Since
//! `(λ + ρ, α) = Σ_j c_j ā_j d_j` with every `ā_j ≥ 1`, any root `α ∈ Φ_J^+`
//! with `c_k ≥ 1` gives `ā_k c_k d_k ≤ φ(α)(η, α) ≤ dim X · (η, α)`. The
//! minimum over such roots bounds `ā_k`, so the candidate set is a finite box
//! and searching it is a proof of emptiness.
//!
//! The pruned search assigns coefficients in order `a_1, a_2, …` and checks a
//! root's value as soon as its last nonzero coefficient is assigned: it must
//! be an integer in `[1, dim X]` not already taken. Undetermined roots are
//! bounded below by setting the remaining `ā` to 1. Every such prune rejects
//! only weights whose datum cannot be `{1, …, dim X}`.

use std::sync::atomic::{AtomicBool, Ordering};
use std::time::{Duration, Instant};

use num_traits::ToPrimitive;
use rayon::prelude::*;

use crate::bott::ulrich_via_bott;
use crate::datum::{classify_case, polarization_pairing, ClosedFormCase, HighestWeight};
use crate::error::{Error, Result};
use crate::rootsys::{Family, ParabolicSet, Root, RootSystem};
use crate::ulrich::{coefficient_moduli, is_ulrich, necessary_filters, Violation};
use crate::Rational;

/// How one coefficient bound was obtained.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundStep {
    pub k: usize,
    pub root: Root,
    /// `(η, α)`.
    pub eta_pairing: Rational,
    /// `c_k`, the coefficient of `α_k` in the root.
    pub coefficient: i64,
    /// `d_k`.
    pub symmetrizer: Rational,
    /// `⌊dim X · (η, α) / (c_k d_k)⌋`, the bound on `ā_k`.
    pub abar_bound: i64,
}

/// Upper bounds on `a_k` for every Ulrich weight on one `G/P_J`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchBounds {
    pub dim: usize,
    /// Bound on `a_k`, index `k - 1`.
    pub upper: Vec<i64>,
    pub trace: Vec<BoundStep>,
}

impl SearchBounds {
    /// Number of weights in the box `0 ≤ a_k ≤ upper_k`.
    pub fn box_size(&self) -> u128 {
        self.upper.iter().map(|&b| if b < 0 { 0 } else { b as u128 + 1 }).product()
    }

    pub fn contains(&self, a: &[i64]) -> bool {
        a.len() == self.upper.len() && a.iter().zip(&self.upper).all(|(&x, &b)| 0 <= x && x <= b)
    }
}

pub fn coefficient_bounds(rs: &RootSystem, j: &ParabolicSet) -> Result<SearchBounds> {
    let roots = rs.phi_j_plus(j)?;
    let dim = roots.len();
    let mut upper = Vec::with_capacity(rs.rank());
    let mut trace = Vec::with_capacity(rs.rank());
    for k in 1..=rs.rank() {
        let d = rs.symmetrizer()[k - 1];
        let best = roots
            .iter()
            .filter(|r| r.coeff(k) >= 1)
            .map(|r| {
                let eta = polarization_pairing(rs, j, r);
                let c = r.coeff(k);
                let q = Rational::from(dim as i64) * eta / (Rational::from(c) * d);
                let step = BoundStep {
                    k,
                    root: r.clone(),
                    eta_pairing: eta,
                    coefficient: c,
                    symmetrizer: d,
                    abar_bound: q.floor().to_integer(),
                };
                (step.abar_bound, step)
            })
            .min_by(|x, y| x.0.cmp(&y.0).then_with(|| x.1.root.cmp(&y.1.root)));
        let Some((abar, step)) = best else {
            return Err(Error::Internal(format!("no root of Φ_J^+ involves α_{k}")));
        };
        upper.push(abar - 1);
        trace.push(step);
    }
    Ok(SearchBounds { dim, upper, trace })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchOptions {
    pub use_filters: bool,
    /// Wall-clock budget per case; `None` for unlimited.
    pub budget: Option<Duration>,
    /// Worker threads; `None` uses the global pool.
    pub threads: Option<usize>,
    /// One in `sample_rate` evaluated candidates is also run through both
    /// deciders; 0 disables sampling.
    pub sample_rate: u64,
}

impl Default for SearchOptions {
    fn default() -> Self {
        Self { use_filters: true, budget: Some(Duration::from_secs(300)), threads: None, sample_rate: 100 }
    }
}

/// Cross-checks run during a search.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct OracleAudit {
    /// Candidates checked against both the datum criterion and cohomology.
    pub checked: usize,
    /// Coefficient vectors where the fast test, the datum criterion and the
    /// cohomology oracle did not all agree.
    pub disagreements: Vec<Vec<i64>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchReport {
    pub family: Family,
    pub rank: usize,
    pub nodes: ParabolicSet,
    /// Node set actually searched (differs from `nodes` for type D sets that
    /// mark `n` but not `n - 1`).
    pub normalized: ParabolicSet,
    pub case: ClosedFormCase,
    pub dim: usize,
    pub candidates: u128,
    pub evaluated: u128,
    pub pruned: u128,
    /// Ulrich weights on `nodes`, sorted.
    pub found: Vec<HighestWeight>,
    pub complete: bool,
    pub elapsed: Duration,
    pub use_filters: bool,
    pub bounds: SearchBounds,
    pub oracle: OracleAudit,
    /// `(index into found, k)` where `a_k` equals its bound.
    pub bound_touches: Vec<(usize, usize)>,
    /// Found weights that violate a necessary condition; always empty unless a
    /// filter is unsound.
    pub filter_failures: Vec<(Vec<i64>, Violation)>,
}

/// Roots of `Φ_J^+` in integer form: `2(λ + ρ, α) = Σ w_k ā_k` and
/// `2(η, α) = den`.
struct Compiled {
    n: usize,
    dim: i64,
    upper: Vec<i64>,
    moduli: Vec<i64>,
    odd: Vec<bool>,
    rows: Vec<Row>,
    /// Rows whose weight at coordinate `k` is positive.
    touching: Vec<Vec<usize>>,
}

struct Row {
    w: Vec<i64>,
    den: i64,
    last: usize,
    /// `Σ_{i ≥ k} w_i`, the contribution of coordinates `k..` at `ā = 1`.
    tail: Vec<i64>,
}

impl Compiled {
    fn new(rs: &RootSystem, j: &ParabolicSet, upper: Vec<i64>, case: ClosedFormCase) -> Result<Self> {
        let n = rs.rank();
        let d2 = rs.symmetrizer_x2();
        let rows: Vec<Row> = rs
            .phi_j_plus(j)?
            .iter()
            .map(|r| {
                let w: Vec<i64> = r.coeffs().iter().zip(&d2).map(|(c, d)| c * d).collect();
                let den = j.nodes().iter().map(|&k| w[k - 1]).sum();
                let last = w.iter().rposition(|&x| x != 0).unwrap_or(0);
                let mut tail = vec![0; n + 1];
                for k in (0..n).rev() {
                    tail[k] = tail[k + 1] + w[k];
                }
                Row { w, den, last, tail }
            })
            .collect();
        let touching = (0..n).map(|k| (0..rows.len()).filter(|&r| rows[r].w[k] > 0).collect()).collect();
        let generic = case == ClosedFormCase::GenericOnly;
        Ok(Self {
            n,
            dim: rows.len() as i64,
            upper,
            moduli: coefficient_moduli(rs, j),
            odd: (1..=n).map(|k| !generic && j.contains(k)).collect(),
            rows,
            touching,
        })
    }

    /// Direct test of `{φ(α)} = {1, …, dim}` on a full coefficient vector.
    fn leaf_is_ulrich(&self, abar: &[i64], seen: &mut [bool]) -> bool {
        seen.iter_mut().for_each(|s| *s = false);
        for row in &self.rows {
            let num: i64 = row.w.iter().zip(abar).map(|(w, a)| w * a).sum();
            if num % row.den != 0 {
                return false;
            }
            let v = num / row.den;
            if v < 1 || v > self.dim || seen[v as usize] {
                return false;
            }
            seen[v as usize] = true;
        }
        true
    }
}

fn sample_hit(abar: &[i64], rate: u64) -> bool {
    if rate == 0 {
        return false;
    }
    let mut h: u64 = 0x9e37_79b9_7f4a_7c15;
    for &x in abar {
        h ^= x as u64;
        h = h.wrapping_mul(0xbf58_476d_1ce4_e5b9);
        h ^= h >> 31;
    }
    h.is_multiple_of(rate)
}

const CHECK_EVERY: u64 = 1 << 14;

#[derive(Default)]
struct Tally {
    evaluated: u128,
    hits: Vec<Vec<i64>>,
    samples: Vec<(Vec<i64>, bool)>,
    ticks: u64,
}

struct Walker<'a> {
    c: &'a Compiled,
    deadline: Option<Instant>,
    stop: &'a AtomicBool,
    sample_rate: u64,
}

impl Walker<'_> {
    fn tick(&self, t: &mut Tally) -> bool {
        t.ticks += 1;
        if t.ticks % CHECK_EVERY == 1 {
            if let Some(d) = self.deadline {
                if Instant::now() >= d {
                    self.stop.store(true, Ordering::Relaxed);
                }
            }
        }
        self.stop.load(Ordering::Relaxed)
    }

    fn record_leaf(&self, abar: &[i64], ok: bool, t: &mut Tally) {
        t.evaluated += 1;
        if ok {
            t.hits.push(abar.to_vec());
        }
        if sample_hit(abar, self.sample_rate) {
            t.samples.push((abar.to_vec(), ok));
        }
    }

    /// Every point of the box with the given first coordinate.
    fn naive(&self, first: i64, t: &mut Tally) {
        let c = self.c;
        let mut a = vec![0i64; c.n];
        a[0] = first;
        let mut abar = vec![0i64; c.n];
        let mut seen = vec![false; c.dim as usize + 1];
        loop {
            if self.tick(t) {
                return;
            }
            for (b, x) in abar.iter_mut().zip(&a) {
                *b = x + 1;
            }
            let ok = c.leaf_is_ulrich(&abar, &mut seen);
            self.record_leaf(&abar, ok, t);
            let mut k = c.n;
            loop {
                if k == 1 {
                    return;
                }
                k -= 1;
                if a[k] < c.upper[k] {
                    a[k] += 1;
                    break;
                }
                a[k] = 0;
            }
        }
    }

    fn pruned(&self, first: i64, t: &mut Tally) {
        let c = self.c;
        let mut abar = vec![0i64; c.n];
        let mut num = vec![0i64; c.rows.len()];
        let mut seen = vec![false; c.dim as usize + 1];
        self.descend(0, Some(first + 1), &mut abar, &mut num, &mut seen, t);
    }

    fn descend(
        &self,
        k: usize,
        only: Option<i64>,
        abar: &mut [i64],
        num: &mut [i64],
        seen: &mut [bool],
        t: &mut Tally,
    ) {
        let c = self.c;
        if k == c.n {
            self.record_leaf(abar, true, t);
            return;
        }
        let (lo, hi) = match only {
            Some(v) => (v, v),
            None => (1, c.upper[k] + 1),
        };
        let mut marked: Vec<usize> = Vec::with_capacity(c.touching[k].len());
        'values: for v in lo..=hi {
            if self.tick(t) {
                return;
            }
            if v % c.moduli[k] != 0 || (c.odd[k] && v % 2 == 0) {
                continue;
            }
            marked.clear();
            let mut ok = true;
            for &r in &c.touching[k] {
                let row = &c.rows[r];
                let value = num[r] + row.w[k] * v;
                if value + row.tail[k + 1] > c.dim * row.den {
                    // Larger `v` only increases this value.
                    for &m in &marked {
                        seen[m] = false;
                    }
                    break 'values;
                }
                if row.last == k && ok {
                    if value % row.den != 0 {
                        ok = false;
                        continue;
                    }
                    let q = (value / row.den) as usize;
                    if q < 1 || seen[q] {
                        ok = false;
                        continue;
                    }
                    seen[q] = true;
                    marked.push(q);
                }
            }
            if ok {
                abar[k] = v;
                for &r in &c.touching[k] {
                    num[r] += c.rows[r].w[k] * v;
                }
                let saved = marked.clone();
                self.descend(k + 1, None, abar, num, seen, t);
                for &r in &c.touching[k] {
                    num[r] -= c.rows[r].w[k] * v;
                }
                for &m in &saved {
                    seen[m] = false;
                }
            } else {
                for &m in &marked {
                    seen[m] = false;
                }
            }
            if self.stop.load(Ordering::Relaxed) {
                return;
            }
        }
    }
}

/// Searches the bound box of `(rs, j)` for Ulrich weights.
pub fn exhaustive_search(rs: &RootSystem, j: &ParabolicSet, opts: &SearchOptions) -> Result<SearchReport> {
    match opts.threads {
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t.max(1))
            .build()
            .map_err(|e| Error::Internal(e.to_string()))?
            .install(|| search_in_pool(rs, j, opts)),
        None => search_in_pool(rs, j, opts),
    }
}

fn search_in_pool(rs: &RootSystem, j: &ParabolicSet, opts: &SearchOptions) -> Result<SearchReport> {
    let start = Instant::now();
    let class = classify_case(rs.lie_type(), j);
    let bounds = coefficient_bounds(rs, j)?;
    let search_bounds = coefficient_bounds(rs, &class.normalized)?;
    let compiled = Compiled::new(rs, &class.normalized, search_bounds.upper.clone(), class.case)?;
    let stop = AtomicBool::new(false);
    let walker = Walker {
        c: &compiled,
        deadline: opts.budget.map(|b| start + b),
        stop: &stop,
        sample_rate: opts.sample_rate,
    };

    let firsts: Vec<i64> = (0..=compiled.upper[0]).collect();
    let mut tallies: Vec<Tally> = firsts
        .par_iter()
        .map(|&first| {
            let mut t = Tally::default();
            if opts.use_filters {
                walker.pruned(first, &mut t);
            } else {
                walker.naive(first, &mut t);
            }
            t
        })
        .collect();
    let complete = !stop.load(Ordering::Relaxed);

    let evaluated: u128 = tallies.iter().map(|t| t.evaluated).sum();
    let mut hits: Vec<Vec<i64>> = tallies.iter_mut().flat_map(|t| std::mem::take(&mut t.hits)).collect();
    let mut samples: Vec<(Vec<i64>, bool)> =
        tallies.iter_mut().flat_map(|t| std::mem::take(&mut t.samples)).collect();
    hits.sort();
    samples.sort();

    let to_weight = |abar: &[i64]| -> Result<HighestWeight> {
        let w = HighestWeight::new(abar.iter().map(|x| x - 1).collect(), class.normalized.clone())?;
        Ok(if class.mirrored { w.mirrored() } else { w })
    };

    let mut oracle = OracleAudit::default();
    let mut found = Vec::new();
    let mut filter_failures = Vec::new();
    let mut check = |abar: &[i64], fast: bool| -> Result<bool> {
        let w = to_weight(abar)?;
        let datum = is_ulrich(&w, rs)?.is_ulrich;
        let bott = ulrich_via_bott(&w, rs)?;
        oracle.checked += 1;
        if datum != fast || bott != fast {
            oracle.disagreements.push(w.coeffs().to_vec());
        }
        Ok(datum)
    };
    for abar in &hits {
        if check(abar, true)? {
            let w = to_weight(abar)?;
            let report = necessary_filters(&w, rs, class.case)?;
            for v in report.violations {
                filter_failures.push((w.coeffs().to_vec(), v));
            }
            found.push(w);
        }
    }
    for (abar, fast) in samples.iter().filter(|(_, fast)| !fast) {
        check(abar, *fast)?;
    }
    found.sort();
    filter_failures.sort_by(|a, b| a.0.cmp(&b.0));

    let bound_touches = found
        .iter()
        .enumerate()
        .flat_map(|(i, w)| {
            (1..=w.rank()).filter(|&k| w.a(k) == bounds.upper[k - 1]).map(move |k| (i, k)).collect::<Vec<_>>()
        })
        .collect();

    let candidates = bounds.box_size();
    Ok(SearchReport {
        family: rs.family(),
        rank: rs.rank(),
        nodes: j.clone(),
        normalized: class.normalized,
        case: class.case,
        dim: bounds.dim,
        candidates,
        evaluated,
        pruned: candidates.saturating_sub(evaluated),
        found,
        complete,
        elapsed: start.elapsed(),
        use_filters: opts.use_filters,
        bounds,
        oracle,
        bound_touches,
        filter_failures,
    })
}

/// Node sets searched by [`verify_theorem`] for one `(family, rank)`: every
/// `J` with `|J| ≥ 2`, keeping one representative of each type-D mirror pair.
pub fn theorem_cases(family: Family, rank: usize) -> Vec<ParabolicSet> {
    let mut cases: Vec<ParabolicSet> = ParabolicSet::all(rank)
        .into_iter()
        .filter(|j| j.len() >= 2)
        .filter(|j| family != Family::D || !(j.contains(rank) && !j.contains(rank - 1)))
        .collect();
    cases.sort();
    cases
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verification {
    pub reports: Vec<SearchReport>,
    /// Every case complete with nothing found.
    pub passed: bool,
}

/// Runs [`exhaustive_search`] on every case of [`theorem_cases`] for the given
/// families and ranks up to `max_rank`. Type A is skipped.
pub fn verify_theorem(families: &[Family], max_rank: usize, opts: &SearchOptions) -> Result<Verification> {
    let mut families: Vec<Family> = families.iter().copied().filter(|f| *f != Family::A).collect();
    families.sort();
    families.dedup();
    let mut reports = Vec::new();
    for f in families {
        for n in f.min_rank()..=max_rank {
            let rs = RootSystem::build(f, n)?;
            for j in theorem_cases(f, n) {
                reports.push(exhaustive_search(&rs, &j, opts)?);
            }
        }
    }
    let passed = reports.iter().all(|r| r.complete && r.found.is_empty());
    Ok(Verification { reports, passed })
}

/// `ā_k` bound as a float-free ratio, for display.
pub fn bound_ratio(step: &BoundStep, dim: usize) -> Rational {
    Rational::from(dim as i64) * step.eta_pairing / (Rational::from(step.coefficient) * step.symmetrizer)
}

/// Elapsed seconds with millisecond resolution.
pub fn seconds(d: Duration) -> f64 {
    (d.as_millis().to_f64().unwrap_or(0.0)) / 1000.0
}

#[cfg(test)]
mod tests {
    use super::*;

    fn setup(f: Family, n: usize, nodes: &[usize]) -> (RootSystem, ParabolicSet) {
        (RootSystem::build(f, n).unwrap(), ParabolicSet::new(nodes.to_vec(), n).unwrap())
    }

    fn opts(use_filters: bool) -> SearchOptions {
        SearchOptions { use_filters, budget: None, threads: None, sample_rate: 100 }
    }

    #[test]
    fn bounds_examples() {
        let (rs, j) = setup(Family::A, 1, &[1]);
        assert_eq!(coefficient_bounds(&rs, &j).unwrap().upper, vec![0]);
        let (rs, j) = setup(Family::B, 2, &[1, 2]);
        assert_eq!(coefficient_bounds(&rs, &j).unwrap().upper, vec![3, 3]);
        let (rs, j) = setup(Family::B, 2, &[1]);
        let b = coefficient_bounds(&rs, &j).unwrap();
        assert_eq!(b.upper, vec![2, 2]);
        assert_eq!(b.trace[1].root, Root::from_coeffs(vec![1, 2]));
        assert_eq!(b.trace[1].abar_bound, 3);
    }

    #[test]
    fn search_examples() {
        let (rs, j) = setup(Family::B, 2, &[1]);
        for f in [true, false] {
            let r = exhaustive_search(&rs, &j, &opts(f)).unwrap();
            assert_eq!(r.found.len(), 1);
            assert_eq!(r.found[0].coeffs(), &[0, 1]);
            assert!(r.complete && r.oracle.disagreements.is_empty());
        }
        let (rs, j) = setup(Family::A, 1, &[1]);
        let r = exhaustive_search(&rs, &j, &opts(true)).unwrap();
        assert_eq!(r.found[0].coeffs(), &[0]);
        assert_eq!(r.bound_touches, vec![(0, 1)]);
        let (rs, j) = setup(Family::B, 2, &[1, 2]);
        let r = exhaustive_search(&rs, &j, &opts(false)).unwrap();
        assert!(r.found.is_empty());
        assert_eq!((r.candidates, r.evaluated, r.pruned), (16, 16, 0));
    }

    #[test]
    fn pruning_preserves_found_lists() {
        for (f, n) in [(Family::A, 3), (Family::B, 3), (Family::C, 3), (Family::D, 4)] {
            let rs = RootSystem::build(f, n).unwrap();
            for j in ParabolicSet::all(n) {
                let a = exhaustive_search(&rs, &j, &opts(true)).unwrap();
                let b = exhaustive_search(&rs, &j, &opts(false)).unwrap();
                assert_eq!(a.found, b.found, "{f}{n} {j}");
                assert!(b.filter_failures.is_empty(), "{:?}", b.filter_failures);
                assert!(a.oracle.disagreements.is_empty() && b.oracle.disagreements.is_empty());
            }
        }
    }

    #[test]
    fn mirrored_d_cases_map_back() {
        let rs = RootSystem::build(Family::D, 4).unwrap();
        let j = ParabolicSet::new(vec![4], 4).unwrap();
        let m = ParabolicSet::new(vec![3], 4).unwrap();
        let a = exhaustive_search(&rs, &j, &opts(true)).unwrap();
        let b = exhaustive_search(&rs, &m, &opts(true)).unwrap();
        assert_eq!(a.normalized, m);
        assert_eq!(a.found.len(), b.found.len());
        for (x, y) in a.found.iter().zip(&b.found) {
            assert_eq!(x.mirrored().coeffs(), y.coeffs());
            assert_eq!(x.nodes(), &j);
        }
    }

    #[test]
    fn theorem_case_lists() {
        assert_eq!(theorem_cases(Family::B, 2).len(), 1);
        assert_eq!(theorem_cases(Family::D, 4).len(), 8);
        assert_eq!(theorem_cases(Family::D, 5).len(), 19);
    }

    #[test]
    fn small_verification_passes() {
        let v = verify_theorem(&[Family::B, Family::C, Family::D], 4, &opts(true)).unwrap();
        assert!(v.passed);
        assert_eq!(v.reports.len(), 2 * (1 + 4 + 11) + 8);
    }

    #[test]
    fn budget_exhaustion_marks_incomplete() {
        let (rs, j) = setup(Family::D, 4, &[1, 2, 3, 4]);
        let o = SearchOptions { use_filters: false, budget: Some(Duration::ZERO), threads: Some(1), sample_rate: 0 };
        let r = exhaustive_search(&rs, &j, &o).unwrap();
        assert!(!r.complete);
    }
}
