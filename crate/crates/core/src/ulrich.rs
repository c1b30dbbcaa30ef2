//! The Ulrich decision and the divisibility filters that prune it.
//!
//! A bundle `E_λ` is Ulrich for the minimal ample class exactly when its
//! associated datum is `{1, 2, …, dim X}`, each value once. The filters are
//! necessary conditions read off the closed-form matrices: differences of
//! neighbouring entries must be integers, which forces the coefficients
//! `ā_k` between marked nodes to be divisible by specific lcm's, and
//! parity/minimum arguments constrain the `ā_{d_i}` at the marked nodes.
//! Each rule is applied only in the closed-form case it was derived for. The
//! filters never decide anything; [`is_ulrich`] does.

use std::fmt;

use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::datum::{
    classify_case, datum_closed_form, datum_generic, AssociatedDatum, ClosedFormCase,
    EpsilonConstant, HighestWeight, MatrixFamily,
};
use crate::error::Result;
use crate::rootsys::{Family, ParabolicSet, RootSystem, Weight};
use crate::Rational;

/// Why a datum fails to be `{1, …, dim X}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Witness {
    NonInteger(Rational),
    OutOfRange(Rational),
    Duplicate(Rational),
    Missing(i64),
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::NonInteger(v) => write!(f, "non-integer entry {v}"),
            Witness::OutOfRange(v) => write!(f, "value out of range {v}"),
            Witness::Duplicate(v) => write!(f, "duplicate entry {v}"),
            Witness::Missing(t) => write!(f, "missing value {t}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UlrichVerdict {
    pub is_ulrich: bool,
    pub dim: usize,
    pub datum: AssociatedDatum,
    pub witness: Option<Witness>,
}

/// Decides the Ulrich property from the root-by-root datum.
pub fn is_ulrich(lw: &HighestWeight, rs: &RootSystem) -> Result<UlrichVerdict> {
    let datum = datum_generic(lw, rs)?;
    let dim = datum.len();
    let witness = datum_witness(&datum.values(), dim);
    Ok(UlrichVerdict { is_ulrich: witness.is_none(), dim, datum, witness })
}

/// First reason a sorted list of values differs from `1..=dim`, checking
/// integrality, then range, then multiplicity.
pub fn datum_witness(sorted: &[Rational], dim: usize) -> Option<Witness> {
    if let Some(v) = sorted.iter().find(|v| !v.is_integer()) {
        return Some(Witness::NonInteger(*v));
    }
    let hi = Rational::from(dim as i64);
    if let Some(v) = sorted.iter().find(|v| **v < Rational::one() || **v > hi) {
        return Some(Witness::OutOfRange(*v));
    }
    if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
        return Some(Witness::Duplicate(w[0]));
    }
    (1..=dim as i64)
        .zip(sorted.iter().map(|v| v.to_integer()).chain(std::iter::repeat(0)))
        .find(|(want, got)| want != got)
        .map(|(want, _)| Witness::Missing(want))
}

/// `Π_{α ∈ Φ^+ \ Φ_J^+} (λ + ρ, α) / (ρ, α)`: the rank of `E_λ`, by the
/// Weyl dimension formula for the Levi factor.
pub fn bundle_rank(lw: &HighestWeight, rs: &RootSystem) -> Result<u128> {
    let n = rs.rank();
    let rho = Weight::rho(n);
    let shifted = lw.weight().add(&rho);
    let mut acc = num_rational::Ratio::<i128>::one();
    for alpha in rs.levi_roots(lw.nodes())? {
        let num = rs.pairing(&shifted, &alpha)?;
        let den = rs.pairing(&rho, &alpha)?;
        let q = num / den;
        acc *= num_rational::Ratio::new(i128::from(*q.numer()), i128::from(*q.denom()));
    }
    debug_assert!(acc.is_integer() && acc > num_rational::Ratio::zero());
    Ok(acc.to_integer().to_u128().unwrap_or(0))
}

/// Named necessary conditions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FilterRule {
    /// Every `a_i ≥ 0`.
    NonNegative,
    /// An lcm divides `ā_k` for `k` strictly between marked nodes.
    GapDivisibility,
    /// An lcm divides `𝔢 ā_n` (types B, C) or `ā_n` (type D).
    LastNodeDivisibility,
    /// An lcm divides `ā_n − ā_{n−1}` when both spin nodes are marked.
    SpinDifferenceDivisibility,
    /// `ā_k` even between marked nodes when both spin nodes are marked.
    GapParity,
    /// `ā_{d_i}` odd.
    NodeParity,
    /// `ā_{d_i}` pairwise distinct.
    NodeDistinct,
    /// `min_i ā_{d_i} = 1`.
    NodeMinimum,
    /// `ā_n ≠ ā_{n−1}` with no spin node marked.
    SpinDistinct,
    /// `d_i = i` with one spin node marked.
    NodeSpacing,
    /// R-matrix entries bounded below with both spin nodes marked.
    TriangleLowerBound,
}

impl FilterRule {
    pub fn name(self) -> &'static str {
        match self {
            FilterRule::NonNegative => "non-negative",
            FilterRule::GapDivisibility => "gap-divisibility",
            FilterRule::LastNodeDivisibility => "last-node-divisibility",
            FilterRule::SpinDifferenceDivisibility => "spin-difference-divisibility",
            FilterRule::GapParity => "gap-parity",
            FilterRule::NodeParity => "node-parity",
            FilterRule::NodeDistinct => "node-distinct",
            FilterRule::NodeMinimum => "node-minimum",
            FilterRule::SpinDistinct => "spin-distinct",
            FilterRule::NodeSpacing => "node-spacing",
            FilterRule::TriangleLowerBound => "triangle-lower-bound",
        }
    }
}

impl fmt::Display for FilterRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Requirement {
    Divisible(i64),
    Even,
    Odd,
    NonNegative,
    DistinctFrom(usize),
    EqualsOne,
    NotEqualTo(usize),
    Equals(i64),
    GreaterThan(Rational),
}

impl fmt::Display for Requirement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Requirement::Divisible(m) => write!(f, "divisible by {m}"),
            Requirement::Even => write!(f, "even"),
            Requirement::Odd => write!(f, "odd"),
            Requirement::NonNegative => write!(f, ">= 0"),
            Requirement::DistinctFrom(k) => write!(f, "distinct from index {k}"),
            Requirement::EqualsOne => write!(f, "= 1"),
            Requirement::NotEqualTo(k) => write!(f, "!= value at index {k}"),
            Requirement::Equals(v) => write!(f, "= {v}"),
            Requirement::GreaterThan(v) => write!(f, "> {v}"),
        }
    }
}

/// One failed condition. `index` is the coefficient index `k` for
/// coefficient rules, the node position `i` for node rules, and the matrix
/// index `i` for the triangle bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub rule: FilterRule,
    pub index: usize,
    pub requirement: Requirement,
    pub actual: Rational,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {} required at {}, got {}", self.rule, self.requirement, self.index, self.actual)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct FilterReport {
    pub passed: bool,
    pub violations: Vec<Violation>,
}

/// `lcm` of a set of positive integers; 1 for the empty set.
pub fn lcm_of(values: impl IntoIterator<Item = i64>) -> i64 {
    values.into_iter().filter(|&v| v > 0).fold(1, |acc, v| acc.lcm(&v))
}

/// `lcm(1, …, lo_end, hi_start, …, hi_end)` with empty runs ignored.
fn lcm_runs(lo_end: i64, hi_start: i64, hi_end: i64) -> i64 {
    lcm_of((1..=lo_end).chain(hi_start.max(1)..=hi_end))
}

/// Modulus forced on `ā_k` for `k` strictly inside gap `i`, i.e.
/// `d_{i-1} < k < d_i` (with `d_{s+1} = n`), for a closed-form case with `s`
/// marked nodes. `None` if the case carries no rule for that gap.
pub fn gap_modulus(case: ClosedFormCase, family: Family, s: usize, i: usize) -> Option<i64> {
    let (s, i) = (s as i64, i as i64);
    match case {
        ClosedFormCase::BcGeneral if i <= s + 1 => Some(lcm_runs(2 * s - i + 1, 0, 0)),
        ClosedFormCase::BcLast if i <= s => {
            let two_e = if family == Family::B { 1 } else { 2 };
            Some(lcm_runs(s - i, s - i + two_e, 2 * s + two_e - 1 - i))
        }
        ClosedFormCase::DInterior if i == 1 => Some(lcm_runs(2 * s - 1, 0, 0)),
        ClosedFormCase::DInterior if i <= s + 1 => {
            Some(lcm_runs(2 * s - 2 * i + 1, 2 * s - 2 * i + 3, 2 * s - i + 1))
        }
        ClosedFormCase::DSingleSpin if i == 1 => Some(lcm_runs(2 * s - 2, 0, 0)),
        ClosedFormCase::DSingleSpin if i <= s => Some(lcm_runs(2 * s - 2 * i, 2 * s - 2 * i + 2, 2 * s - i)),
        ClosedFormCase::DBothSpin if i == 1 => Some(lcm_runs(2 * s - 3, 0, 0)),
        ClosedFormCase::DBothSpin if i < s => {
            Some(lcm_runs(2 * s - 2 * i - 1, 2 * s - 2 * i + 1, 2 * s - i - 1))
        }
        _ => None,
    }
}

/// Per-coefficient moduli implied by the gap and last-node rules: entry
/// `k - 1` divides `ā_k` for every Ulrich weight. The node set must already
/// be normalized (see [`classify_case`]).
pub fn coefficient_moduli(rs: &RootSystem, j: &ParabolicSet) -> Vec<i64> {
    let n = rs.rank();
    let class = classify_case(rs.lie_type(), j);
    let case = class.case;
    let s = j.len();
    let mut moduli = vec![1i64; n];
    if case == ClosedFormCase::GenericOnly {
        return moduli;
    }
    for i in 1..=s + 1 {
        if let Some(m) = gap_modulus(case, rs.family(), s, i) {
            for k in j.d(i - 1) + 1..j.d(i) {
                moduli[k - 1] = moduli[k - 1].lcm(&m);
            }
        }
        if case == ClosedFormCase::DBothSpin && i < s {
            for k in j.d(i - 1) + 1..j.d(i) {
                moduli[k - 1] = moduli[k - 1].lcm(&2);
            }
        }
    }
    if let Some(m) = last_node_modulus(case, rs.family(), s) {
        moduli[n - 1] = moduli[n - 1].lcm(&m);
    }
    moduli
}

/// Modulus on `ā_n` itself (`𝔢 ā_n` divisible by `lcm(1..s)` becomes
/// `ā_n` divisible by `2 lcm(1..s)` in type B).
fn last_node_modulus(case: ClosedFormCase, family: Family, s: usize) -> Option<i64> {
    let l = lcm_runs(s as i64, 0, 0);
    match case {
        ClosedFormCase::BcGeneral => Some(if family == Family::B { 2 * l } else { l }),
        ClosedFormCase::DInterior => Some(l),
        ClosedFormCase::DSingleSpin if s >= 2 => Some(l),
        _ => None,
    }
}

/// Evaluates every necessary condition that applies to `case`, reporting all
/// violations. `case` must be the classification of the weight's node set.
pub fn necessary_filters(lw: &HighestWeight, rs: &RootSystem, case: ClosedFormCase) -> Result<FilterReport> {
    let mut violations = Vec::new();
    for k in 1..=lw.rank() {
        if lw.a(k) < 0 {
            violations.push(Violation {
                rule: FilterRule::NonNegative,
                index: k,
                requirement: Requirement::NonNegative,
                actual: Rational::from(lw.a(k)),
            });
        }
    }
    let class = classify_case(rs.lie_type(), lw.nodes());
    if case != ClosedFormCase::GenericOnly && case == class.case {
        let lw = if class.mirrored { lw.mirrored() } else { lw.clone() };
        case_filters(&lw, rs, case, &mut violations)?;
    }
    Ok(FilterReport { passed: violations.is_empty(), violations })
}

fn case_filters(
    lw: &HighestWeight,
    rs: &RootSystem,
    case: ClosedFormCase,
    out: &mut Vec<Violation>,
) -> Result<()> {
    let j = lw.nodes();
    let (n, s) = (rs.rank(), j.len());
    let abar = |k: usize| Rational::from(lw.abar(k));

    for i in 1..=s + 1 {
        let gap = j.d(i - 1) + 1..j.d(i);
        if let Some(m) = gap_modulus(case, rs.family(), s, i) {
            for k in gap.clone() {
                if lw.abar(k) % m != 0 {
                    out.push(Violation {
                        rule: FilterRule::GapDivisibility,
                        index: k,
                        requirement: Requirement::Divisible(m),
                        actual: abar(k),
                    });
                }
            }
        }
        if case == ClosedFormCase::DBothSpin && i < s {
            for k in gap {
                if lw.abar(k) % 2 != 0 {
                    out.push(Violation {
                        rule: FilterRule::GapParity,
                        index: k,
                        requirement: Requirement::Even,
                        actual: abar(k),
                    });
                }
            }
        }
    }

    let l = lcm_runs(s as i64, 0, 0);
    match case {
        ClosedFormCase::BcGeneral => {
            let eps = EpsilonConstant::for_family(rs.family()).expect("types B, C").value();
            let v = eps * abar(n);
            if !v.is_integer() || v.to_integer() % l != 0 {
                out.push(Violation {
                    rule: FilterRule::LastNodeDivisibility,
                    index: n,
                    requirement: Requirement::Divisible(l),
                    actual: v,
                });
            }
        }
        ClosedFormCase::DInterior | ClosedFormCase::DSingleSpin => {
            if case == ClosedFormCase::DInterior && lw.abar(n) == lw.abar(n - 1) {
                out.push(Violation {
                    rule: FilterRule::SpinDistinct,
                    index: n,
                    requirement: Requirement::NotEqualTo(n - 1),
                    actual: abar(n),
                });
            }
            let applies = case == ClosedFormCase::DInterior || s >= 2;
            if applies && lw.abar(n) % l != 0 {
                out.push(Violation {
                    rule: FilterRule::LastNodeDivisibility,
                    index: n,
                    requirement: Requirement::Divisible(l),
                    actual: abar(n),
                });
            }
        }
        ClosedFormCase::DBothSpin => {
            let m = lcm_runs(s as i64 - 1, 0, 0);
            let diff = lw.abar(n) - lw.abar(n - 1);
            if diff % m != 0 {
                out.push(Violation {
                    rule: FilterRule::SpinDifferenceDivisibility,
                    index: n,
                    requirement: Requirement::Divisible(m),
                    actual: Rational::from(diff),
                });
            }
        }
        _ => {}
    }

    // Marked nodes: distinct odd values with minimum 1.
    let node_vals: Vec<i64> = j.nodes().iter().map(|&d| lw.abar(d)).collect();
    for (pos, &v) in node_vals.iter().enumerate() {
        if v.rem_euclid(2) != 1 {
            out.push(Violation {
                rule: FilterRule::NodeParity,
                index: pos + 1,
                requirement: Requirement::Odd,
                actual: Rational::from(v),
            });
        }
        if let Some(first) = node_vals[..pos].iter().position(|&w| w == v) {
            out.push(Violation {
                rule: FilterRule::NodeDistinct,
                index: pos + 1,
                requirement: Requirement::DistinctFrom(first + 1),
                actual: Rational::from(v),
            });
        }
    }
    let min = node_vals.iter().copied().min().unwrap_or(1);
    if min != 1 {
        out.push(Violation {
            rule: FilterRule::NodeMinimum,
            index: 1 + node_vals.iter().position(|&v| v == min).unwrap_or(0),
            requirement: Requirement::EqualsOne,
            actual: Rational::from(min),
        });
    }

    if case == ClosedFormCase::DSingleSpin && s >= 2 {
        for (pos, &d) in j.nodes().iter().enumerate() {
            if d != pos + 1 {
                out.push(Violation {
                    rule: FilterRule::NodeSpacing,
                    index: pos + 1,
                    requirement: Requirement::Equals((pos + 1) as i64),
                    actual: Rational::from(d as i64),
                });
            }
        }
    }

    if case == ClosedFormCase::DBothSpin {
        let bound = Rational::from(if s >= 4 { 4 } else { 2 });
        let matrices = datum_closed_form(lw, rs)?;
        for (&(label, i, _), m) in &matrices.matrices {
            if label.family != MatrixFamily::R {
                continue;
            }
            if let Some(v) = m.min().filter(|v| *v <= bound) {
                out.push(Violation {
                    rule: FilterRule::TriangleLowerBound,
                    index: i,
                    requirement: Requirement::GreaterThan(bound),
                    actual: v,
                });
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::datum::classify_case;

    fn lw(f: Family, n: usize, nodes: &[usize], a: &[i64]) -> (RootSystem, HighestWeight) {
        let rs = RootSystem::build(f, n).unwrap();
        let j = ParabolicSet::new(nodes.to_vec(), n).unwrap();
        (rs, HighestWeight::new(a.to_vec(), j).unwrap())
    }

    #[test]
    fn verdict_examples() {
        let (rs, w) = lw(Family::A, 1, &[1], &[0]);
        let v = is_ulrich(&w, &rs).unwrap();
        assert!(v.is_ulrich && v.witness.is_none() && v.dim == 1);

        let (rs, w) = lw(Family::B, 2, &[1], &[0, 1]);
        assert!(is_ulrich(&w, &rs).unwrap().is_ulrich);

        let (rs, w) = lw(Family::B, 2, &[1, 2], &[0, 0]);
        let v = is_ulrich(&w, &rs).unwrap();
        assert!(!v.is_ulrich);
        assert_eq!(v.witness, Some(Witness::Duplicate(Rational::from(1))));
        assert_eq!(v.witness.unwrap().to_string(), "duplicate entry 1");
    }

    #[test]
    fn witness_kinds() {
        let r = |n, d| Rational::new(n, d);
        assert_eq!(datum_witness(&[r(1, 1), r(3, 2)], 2), Some(Witness::NonInteger(r(3, 2))));
        assert_eq!(datum_witness(&[r(1, 1), r(3, 1)], 2), Some(Witness::OutOfRange(r(3, 1))));
        assert_eq!(datum_witness(&[r(0, 1), r(1, 1)], 2), Some(Witness::OutOfRange(r(0, 1))));
        assert_eq!(datum_witness(&[r(1, 1), r(2, 1)], 2), None);
        assert_eq!(datum_witness(&[r(1, 1)], 2), Some(Witness::Missing(2)));
    }

    #[test]
    fn negative_marked_coefficient_is_never_ulrich() {
        let (rs, w) = lw(Family::B, 3, &[1, 3], &[-1, 2, 0]);
        assert!(!is_ulrich(&w, &rs).unwrap().is_ulrich);
        let case = classify_case(rs.lie_type(), w.nodes()).case;
        let rep = necessary_filters(&w, &rs, case).unwrap();
        assert!(rep.violations.iter().any(|v| v.rule == FilterRule::NonNegative && v.index == 1));
    }

    #[test]
    fn bundle_rank_examples() {
        let (rs, w) = lw(Family::B, 2, &[1], &[0, 1]);
        assert_eq!(bundle_rank(&w, &rs).unwrap(), 2);
        let (rs, w) = lw(Family::A, 3, &[2], &[1, 0, 0]);
        assert_eq!(bundle_rank(&w, &rs).unwrap(), 2);
        let (rs, w) = lw(Family::C, 4, &[1, 2, 3, 4], &[5, 0, 2, 7]);
        assert_eq!(bundle_rank(&w, &rs).unwrap(), 1);
        // Sym^2 of the tautological quotient on P^3: rank 6.
        let (rs, w) = lw(Family::A, 3, &[1], &[0, 2, 0]);
        assert_eq!(bundle_rank(&w, &rs).unwrap(), 6);
    }

    #[test]
    fn filters_pass_for_spinor_bundle() {
        let (rs, w) = lw(Family::B, 2, &[1], &[0, 1]);
        let rep = necessary_filters(&w, &rs, ClosedFormCase::BcGeneral).unwrap();
        assert!(rep.passed, "{:?}", rep.violations);
    }

    #[test]
    fn gap_divisibility_violation_b5() {
        // s = 2, gap i = 2 holds k = 3 only; the modulus is lcm(1, 2, 3).
        let (rs, w) = lw(Family::B, 5, &[2, 4], &[0, 0, 2, 2, 1]);
        let rep = necessary_filters(&w, &rs, ClosedFormCase::BcGeneral).unwrap();
        let v = rep
            .violations
            .iter()
            .find(|v| v.rule == FilterRule::GapDivisibility && v.index == 3)
            .expect("violation at k = 3");
        assert_eq!(v.requirement, Requirement::Divisible(6));
        assert_eq!(v.actual, Rational::from(3));
        assert!(!rep.passed);
    }

    #[test]
    fn spin_distinct_violation_d5() {
        let (rs, w) = lw(Family::D, 5, &[1, 2], &[0, 2, 1, 3, 3]);
        let rep = necessary_filters(&w, &rs, ClosedFormCase::DInterior).unwrap();
        assert!(rep.violations.iter().any(|v| v.rule == FilterRule::SpinDistinct));
    }

    #[test]
    fn reports_every_violation() {
        let (rs, w) = lw(Family::C, 5, &[1, 3], &[1, 0, 1, 0, 0]);
        let rep = necessary_filters(&w, &rs, ClosedFormCase::BcGeneral).unwrap();
        let rules: Vec<FilterRule> = rep.violations.iter().map(|v| v.rule).collect();
        assert!(rules.contains(&FilterRule::GapDivisibility));
        assert!(rules.contains(&FilterRule::NodeDistinct));
        assert!(rules.contains(&FilterRule::NodeMinimum));
        assert!(rules.contains(&FilterRule::NodeParity));
    }

    #[test]
    fn filters_are_case_scoped() {
        let (rs, w) = lw(Family::B, 3, &[1, 2], &[1, 1, 1]);
        let wrong = necessary_filters(&w, &rs, ClosedFormCase::DInterior).unwrap();
        assert!(wrong.passed);
        let right = necessary_filters(&w, &rs, ClosedFormCase::BcGeneral).unwrap();
        assert!(!right.passed);
    }

    #[test]
    fn node_spacing_in_single_spin_case() {
        let (rs, w) = lw(Family::D, 5, &[2, 4], &[0, 0, 0, 0, 0]);
        let rep = necessary_filters(&w, &rs, ClosedFormCase::DSingleSpin).unwrap();
        assert!(rep.violations.iter().any(|v| v.rule == FilterRule::NodeSpacing && v.index == 1));
    }

    #[test]
    fn mirrored_single_spin_uses_swapped_coefficients() {
        let (rs, w) = lw(Family::D, 4, &[4], &[0, 0, 0, 0]);
        let rep = necessary_filters(&w, &rs, ClosedFormCase::DSingleSpin).unwrap();
        assert!(rep.passed, "{:?}", rep.violations);
        let (rs, w) = lw(Family::D, 4, &[4], &[0, 0, 0, 2]);
        let rep = necessary_filters(&w, &rs, ClosedFormCase::DSingleSpin).unwrap();
        assert!(rep.violations.iter().any(|v| v.rule == FilterRule::NodeMinimum));
    }

    #[test]
    fn both_spin_triangle_bound() {
        let (rs, w) = lw(Family::D, 4, &[3, 4], &[0, 0, 0, 0]);
        let rep = necessary_filters(&w, &rs, ClosedFormCase::DBothSpin).unwrap();
        assert!(rep.violations.iter().any(|v| v.rule == FilterRule::TriangleLowerBound));
        assert!(rep.violations.iter().any(|v| v.rule == FilterRule::NodeDistinct));
    }

    #[test]
    fn gap_modulus_tables() {
        use ClosedFormCase::*;
        let table = |case, f, s: usize| -> Vec<Option<i64>> {
            (1..=s + 1).map(|i| gap_modulus(case, f, s, i)).collect()
        };
        assert_eq!(table(BcGeneral, Family::B, 1), vec![Some(2), Some(1)]);
        assert_eq!(table(BcGeneral, Family::C, 2), vec![Some(12), Some(6), Some(2)]);
        assert_eq!(table(BcGeneral, Family::B, 3), vec![Some(60), Some(60), Some(12), Some(6)]);
        assert_eq!(table(BcLast, Family::B, 1), vec![Some(1), None]);
        assert_eq!(table(BcLast, Family::B, 2), vec![Some(6), Some(2), None]);
        assert_eq!(table(BcLast, Family::B, 3), vec![Some(60), Some(12), Some(6), None]);
        assert_eq!(table(BcLast, Family::C, 1), vec![Some(2), None]);
        assert_eq!(table(BcLast, Family::C, 2), vec![Some(12), Some(6), None]);
        assert_eq!(table(BcLast, Family::C, 3), vec![Some(60), Some(60), Some(12), None]);
        assert_eq!(table(DInterior, Family::D, 1), vec![Some(1), Some(1)]);
        assert_eq!(table(DInterior, Family::D, 2), vec![Some(6), Some(3), Some(2)]);
        assert_eq!(table(DSingleSpin, Family::D, 2), vec![Some(2), Some(2), None]);
        assert_eq!(table(DBothSpin, Family::D, 3), vec![Some(6), Some(3), None, None]);
    }

    #[test]
    fn coefficient_moduli_examples() {
        let rs = RootSystem::build(Family::B, 5).unwrap();
        let j = ParabolicSet::new(vec![2, 4], 5).unwrap();
        // gap 1: k = 1 (lcm 1..4), gap 2: k = 3 (lcm 1..3), tail: none,
        // last node: 𝔢 ā_5 divisible by lcm(1, 2) in type B.
        assert_eq!(coefficient_moduli(&rs, &j), vec![12, 1, 6, 1, 4]);
        let rs = RootSystem::build(Family::A, 3).unwrap();
        assert_eq!(coefficient_moduli(&rs, &ParabolicSet::full(3)), vec![1, 1, 1]);
    }
}
