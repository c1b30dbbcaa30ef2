//! The associated datum of an irreducible homogeneous bundle.
//!
//! For a highest weight `λ` on `G/P_J` the datum is the multiset of values
//! `φ(α) = (λ + ρ, α) / (η, α)` over the positive roots `α` that meet a
//! marked node, where `η = Σ_{j∈J} λ_j` is the minimal ample class. It is
//! computed here root by root ([`datum_generic`]) and, for types B, C and D,
//! through closed-form matrix families indexed by the gaps between marked
//! nodes ([`datum_closed_form`]). Multiplicities are kept: the Ulrich test
//! needs to see repeated values.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rootsys::{Family, LieType, ParabolicSet, Root, RootSystem, Weight};
use crate::Rational;

/// `λ = Σ a_i λ_i` together with the marked nodes of the parabolic.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct HighestWeight {
    a: Vec<i64>,
    nodes: ParabolicSet,
}

impl HighestWeight {
    /// Rejects weights that are not dominant on the unmarked nodes, since
    /// those do not index irreducible representations of the parabolic.
    pub fn new(a: Vec<i64>, nodes: ParabolicSet) -> Result<Self> {
        if a.len() != nodes.rank() {
            return Err(Error::Usage(format!(
                "weight has {} coefficients but the rank is {}",
                a.len(),
                nodes.rank()
            )));
        }
        if let Some(k) = (1..=a.len()).find(|&k| !nodes.contains(k) && a[k - 1] < 0) {
            return Err(Error::Domain(format!(
                "weight is not P-dominant: a_{k} = {} < 0 at unmarked node {k}",
                a[k - 1]
            )));
        }
        Ok(Self { a, nodes })
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.a
    }

    /// `a_k`, 1-based.
    pub fn a(&self, k: usize) -> i64 {
        self.a[k - 1]
    }

    /// `ā_k = a_k + 1`.
    pub fn abar(&self, k: usize) -> i64 {
        self.a[k - 1] + 1
    }

    pub fn nodes(&self) -> &ParabolicSet {
        &self.nodes
    }

    pub fn rank(&self) -> usize {
        self.a.len()
    }

    pub fn weight(&self) -> Weight {
        Weight(self.a.clone())
    }

    /// All `a_i ≥ 0`, necessary for the Ulrich property.
    pub fn is_nonnegative(&self) -> bool {
        self.a.iter().all(|&x| x >= 0)
    }

    /// Image under the type-D diagram automorphism exchanging nodes `n-1`, `n`.
    pub fn mirrored(&self) -> HighestWeight {
        let n = self.rank();
        let mut a = self.a.clone();
        a.swap(n - 2, n - 1);
        HighestWeight { a, nodes: mirror_nodes(&self.nodes) }
    }
}

impl fmt::Display for HighestWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.a.iter().map(|x| x.to_string()).collect();
        write!(f, "({}) on J={}", parts.join(","), self.nodes)
    }
}

/// Swaps nodes `n-1` and `n`.
pub fn mirror_nodes(j: &ParabolicSet) -> ParabolicSet {
    let n = j.rank();
    let mut nodes: Vec<usize> = j
        .nodes()
        .iter()
        .map(|&d| match d {
            d if d == n => n - 1,
            d if d + 1 == n => n,
            d => d,
        })
        .collect();
    nodes.sort_unstable();
    ParabolicSet::new(nodes, n).expect("mirror of a valid node set is valid")
}

/// The weight `η = Σ_{j∈J} λ_j` of the minimal ample class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polarization {
    eta: Weight,
}

impl Polarization {
    pub fn minimal(j: &ParabolicSet) -> Self {
        let eta = (1..=j.rank()).map(|k| i64::from(j.contains(k))).collect();
        Self { eta: Weight(eta) }
    }

    pub fn weight(&self) -> &Weight {
        &self.eta
    }
}

/// Which closed-form description of the datum applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ClosedFormCase {
    /// Types B, C with `d_s ≠ n`.
    BcGeneral,
    /// Types B, C with `d_s = n`.
    BcLast,
    /// Type D with `d_s ≤ n - 2`.
    DInterior,
    /// Type D with exactly one spin node marked, normalized to `n - 1`.
    DSingleSpin,
    /// Type D with both spin nodes marked.
    DBothSpin,
    /// Type A: only the root-by-root datum is available.
    GenericOnly,
}

impl ClosedFormCase {
    pub fn tag(self) -> &'static str {
        match self {
            ClosedFormCase::BcGeneral => "BC_GENERAL",
            ClosedFormCase::BcLast => "BC_LAST",
            ClosedFormCase::DInterior => "D_INTERIOR",
            ClosedFormCase::DSingleSpin => "D_SINGLE_SPIN",
            ClosedFormCase::DBothSpin => "D_BOTH_SPIN",
            ClosedFormCase::GenericOnly => "GENERIC_ONLY",
        }
    }
}

impl fmt::Display for ClosedFormCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// A case tag plus the node set the closed form is written for. Only a type-D
/// node set marking `n` but not `n - 1` is changed (`mirrored`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification {
    pub case: ClosedFormCase,
    pub normalized: ParabolicSet,
    pub mirrored: bool,
}

pub fn classify_case(t: LieType, j: &ParabolicSet) -> Classification {
    let n = t.rank();
    let plain = |case| Classification { case, normalized: j.clone(), mirrored: false };
    match t.family() {
        Family::A => plain(ClosedFormCase::GenericOnly),
        Family::B | Family::C => {
            if j.contains(n) {
                plain(ClosedFormCase::BcLast)
            } else {
                plain(ClosedFormCase::BcGeneral)
            }
        }
        Family::D => match (j.contains(n - 1), j.contains(n)) {
            (true, true) => plain(ClosedFormCase::DBothSpin),
            (true, false) => plain(ClosedFormCase::DSingleSpin),
            (false, true) => Classification {
                case: ClosedFormCase::DSingleSpin,
                normalized: mirror_nodes(j),
                mirrored: true,
            },
            (false, false) => plain(ClosedFormCase::DInterior),
        },
    }
}

/// The constant `𝔢`: 1/2 for type B and 1 for type C.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EpsilonConstant(Rational);

impl EpsilonConstant {
    pub fn for_family(f: Family) -> Option<Self> {
        match f {
            Family::B => Some(Self(Rational::new(1, 2))),
            Family::C => Some(Self(Rational::one())),
            _ => None,
        }
    }

    pub fn value(self) -> Rational {
        self.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum MatrixFamily {
    P,
    Q,
    R,
}

/// Plain, tilde and hat variants of the matrix families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Decoration {
    Plain,
    Tilde,
    Hat,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MatrixLabel {
    pub family: MatrixFamily,
    pub decoration: Decoration,
}

impl MatrixLabel {
    /// Short ASCII label such as `P`, `Q~` or `R^`.
    pub fn short(&self) -> String {
        let f = match self.family {
            MatrixFamily::P => "P",
            MatrixFamily::Q => "Q",
            MatrixFamily::R => "R",
        };
        let d = match self.decoration {
            Decoration::Plain => "",
            Decoration::Tilde => "~",
            Decoration::Hat => "^",
        };
        format!("{f}{d}")
    }
}

impl fmt::Display for MatrixLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.short())
    }
}

/// Where a datum value came from.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum DatumSource {
    /// `φ(α)` for a root `α`.
    Root(Root),
    /// Entry `(u, v)` of matrix `label^{ij}`; R-matrices have `j = i`.
    Matrix { label: MatrixLabel, i: usize, j: usize, u: usize, v: usize },
}

impl fmt::Display for DatumSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DatumSource::Root(r) => write!(f, "phi({r})"),
            DatumSource::Matrix { label, i, j, u, v } => {
                if label.family == MatrixFamily::R {
                    write!(f, "{label}{i}[{u},{v}]")
                } else {
                    write!(f, "{label}{i}{j}[{u},{v}]")
                }
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DatumEntry {
    pub value: Rational,
    pub source: DatumSource,
}

/// The associated datum as a sorted multiset.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct AssociatedDatum {
    entries: Vec<DatumEntry>,
}

impl AssociatedDatum {
    pub fn new(mut entries: Vec<DatumEntry>) -> Self {
        entries.sort();
        Self { entries }
    }

    pub fn entries(&self) -> &[DatumEntry] {
        &self.entries
    }

    pub fn values(&self) -> Vec<Rational> {
        self.entries.iter().map(|e| e.value).collect()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn min(&self) -> Option<Rational> {
        self.entries.first().map(|e| e.value)
    }

    pub fn max(&self) -> Option<Rational> {
        self.entries.last().map(|e| e.value)
    }
}

/// Index range of one closed-form matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MatrixShape {
    /// `1 ≤ u ≤ rows`, `1 ≤ v ≤ cols`.
    Rectangular,
    /// `1 ≤ u ≤ v ≤ rows`.
    UpperTriangular,
    /// `1 ≤ u < v ≤ rows`.
    StrictlyUpperTriangular,
}

/// One matrix of the closed form. Cells are kept in row-major order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DatumMatrix {
    pub rows: usize,
    pub cols: usize,
    pub shape: MatrixShape,
    cells: Vec<(usize, usize, Rational)>,
}

impl DatumMatrix {
    pub fn cells(&self) -> &[(usize, usize, Rational)] {
        &self.cells
    }

    pub fn get(&self, u: usize, v: usize) -> Option<Rational> {
        self.cells.iter().find(|c| c.0 == u && c.1 == v).map(|c| c.2)
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn min(&self) -> Option<Rational> {
        self.cells.iter().map(|c| c.2).min()
    }

    pub fn max(&self) -> Option<Rational> {
        self.cells.iter().map(|c| c.2).max()
    }
}

/// Key of a matrix: label and upper indices `(i, j)` (`j = i` for R).
pub type MatrixKey = (MatrixLabel, usize, usize);

/// The closed-form matrix family realizing the datum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DatumMatrices {
    pub case: ClosedFormCase,
    pub normalized: ParabolicSet,
    pub mirrored: bool,
    pub matrices: BTreeMap<MatrixKey, DatumMatrix>,
}

impl DatumMatrices {
    pub fn get(&self, label: MatrixLabel, i: usize, j: usize) -> Option<&DatumMatrix> {
        self.matrices.get(&(label, i, j))
    }

    pub fn entry_count(&self) -> usize {
        self.matrices.values().map(DatumMatrix::len).sum()
    }

    pub fn flatten(&self) -> AssociatedDatum {
        let entries = self
            .matrices
            .iter()
            .flat_map(|(&(label, i, j), m)| {
                m.cells.iter().map(move |&(u, v, value)| DatumEntry {
                    value,
                    source: DatumSource::Matrix { label, i, j, u, v },
                })
            })
            .collect();
        AssociatedDatum::new(entries)
    }
}

/// `(η, α)` for the minimal ample class.
pub fn polarization_pairing(rs: &RootSystem, j: &ParabolicSet, alpha: &Root) -> Rational {
    j.nodes()
        .iter()
        .map(|&d| rs.symmetrizer()[d - 1] * Rational::from(alpha.coeff(d)))
        .fold(Rational::zero(), |a, b| a + b)
}

/// `φ(α) = (λ + ρ, α) / (η, α)`.
pub fn phi_value(lw: &HighestWeight, alpha: &Root, rs: &RootSystem) -> Result<Rational> {
    if lw.rank() != rs.rank() || alpha.coeffs().len() != rs.rank() {
        return Err(Error::Usage(format!(
            "dimension mismatch: {} has rank {}, weight has {} coefficients",
            rs.lie_type(),
            rs.rank(),
            lw.rank()
        )));
    }
    let den = polarization_pairing(rs, lw.nodes(), alpha);
    if den.is_zero() {
        return Err(Error::Domain(format!(
            "denominator vanishes: {alpha} does not meet any node of J={}",
            lw.nodes()
        )));
    }
    let shifted = lw.weight().add(&Weight::rho(rs.rank()));
    Ok(rs.pairing_unchecked(shifted.coeffs(), alpha.coeffs()) / den)
}

/// One datum entry per root of `Φ_J^+`.
pub fn datum_generic(lw: &HighestWeight, rs: &RootSystem) -> Result<AssociatedDatum> {
    let entries = rs
        .phi_j_plus(lw.nodes())?
        .into_iter()
        .map(|alpha| {
            let value = phi_value(lw, &alpha, rs)?;
            Ok(DatumEntry { value, source: DatumSource::Root(alpha) })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(AssociatedDatum::new(entries))
}

/// Closed-form matrices for the case of `(rs, J)`. Fails for type A.
pub fn datum_closed_form(lw: &HighestWeight, rs: &RootSystem) -> Result<DatumMatrices> {
    rs.check_nodes(lw.nodes())?;
    let class = classify_case(rs.lie_type(), lw.nodes());
    if class.case == ClosedFormCase::GenericOnly {
        return Err(Error::Unsupported(format!(
            "no closed form for type {}; use the root-by-root datum",
            rs.family()
        )));
    }
    let weight = if class.mirrored { lw.mirrored() } else { lw.clone() };
    let eps = EpsilonConstant::for_family(rs.family()).map(EpsilonConstant::value);
    let builder = ClosedForm::new(&weight, class.case, eps);
    Ok(DatumMatrices {
        case: class.case,
        normalized: class.normalized,
        mirrored: class.mirrored,
        matrices: builder.build(),
    })
}

/// Evaluates the displayed formulas of one case.
struct ClosedForm<'a> {
    lw: &'a HighestWeight,
    case: ClosedFormCase,
    eps: Rational,
    n: usize,
    s: usize,
    /// `prefix[k] = ā_1 + … + ā_k`.
    prefix: Vec<i64>,
}

impl<'a> ClosedForm<'a> {
    fn new(lw: &'a HighestWeight, case: ClosedFormCase, eps: Option<Rational>) -> Self {
        let n = lw.rank();
        let mut prefix = vec![0; n + 1];
        for k in 1..=n {
            prefix[k] = prefix[k - 1] + lw.abar(k);
        }
        Self {
            lw,
            case,
            eps: eps.unwrap_or_else(Rational::zero),
            n,
            s: lw.nodes().len(),
            prefix,
        }
    }

    fn d(&self, i: usize) -> usize {
        self.lw.nodes().d(i)
    }

    /// `Σ_{k=lo}^{hi} ā_k`; empty when `lo > hi`.
    fn sum(&self, lo: usize, hi: usize) -> Rational {
        if lo > hi {
            return Rational::zero();
        }
        Rational::from(self.prefix[hi] - self.prefix[lo - 1])
    }

    fn is_bc(&self) -> bool {
        matches!(self.case, ClosedFormCase::BcGeneral | ClosedFormCase::BcLast)
    }

    fn decoration(&self) -> Decoration {
        match self.case {
            ClosedFormCase::BcLast | ClosedFormCase::DSingleSpin => Decoration::Tilde,
            ClosedFormCase::DBothSpin => Decoration::Hat,
            _ => Decoration::Plain,
        }
    }

    /// Largest `j` for the P-matrices (and the Q-matrices, up to the
    /// single-spin exclusion `i ≠ s`).
    fn pair_limit(&self) -> usize {
        match self.case {
            ClosedFormCase::BcLast | ClosedFormCase::DBothSpin => self.s - 1,
            _ => self.s,
        }
    }

    fn r_limit(&self) -> usize {
        match self.case {
            ClosedFormCase::DBothSpin => self.s - 1,
            _ => self.s,
        }
    }

    fn two_eps_abar_n(&self) -> Rational {
        Rational::from(2) * self.eps * Rational::from(self.lw.abar(self.n))
    }

    fn p_entry(&self, i: usize, j: usize, u: usize, v: usize) -> Rational {
        self.sum(self.d(i) - u + 1, self.d(j) + v - 1) / Rational::from((j - i + 1) as i64)
    }

    fn q_entry(&self, i: usize, j: usize, u: usize, v: usize) -> Rational {
        let (n, s) = (self.n, self.s as i64);
        let (ii, jj) = (i as i64, j as i64);
        let num = if self.is_bc() {
            self.sum(self.d(i - 1) + u, n - 1) + self.sum(self.d(j) + v, n - 1) + self.two_eps_abar_n()
        } else {
            self.sum(self.d(i - 1) + u, n - 2) + self.sum(self.d(j) + v, n)
        };
        let den = match self.case {
            ClosedFormCase::BcGeneral | ClosedFormCase::DInterior => Rational::from(2 * s + 1 - (ii + jj)),
            ClosedFormCase::BcLast => {
                Rational::from(2) * (Rational::from(s) + self.eps) - Rational::from(ii + jj + 1)
            }
            ClosedFormCase::DSingleSpin => Rational::from(2 * s - (ii + jj)),
            ClosedFormCase::DBothSpin => Rational::from(2 * s - 1 - (ii + jj)),
            ClosedFormCase::GenericOnly => unreachable!("no closed form"),
        };
        num / den
    }

    fn r_entry(&self, i: usize, u: usize, v: usize) -> Rational {
        let (n, s, ii) = (self.n, self.s as i64, i as i64);
        let base = self.d(i - 1);
        let num = if self.is_bc() {
            self.sum(base + u, n - 1) + self.sum(base + v, n - 1) + self.two_eps_abar_n()
        } else {
            self.sum(base + u, n - 2) + self.sum(base + v, n)
        };
        let den = match self.case {
            ClosedFormCase::BcGeneral | ClosedFormCase::DInterior => Rational::from(2 * (s + 1 - ii)),
            ClosedFormCase::BcLast => Rational::from(2) * (Rational::from(s) + self.eps - Rational::from(ii)),
            ClosedFormCase::DSingleSpin => Rational::from(2 * (s - ii) + 1),
            ClosedFormCase::DBothSpin => Rational::from(2 * (s - ii)),
            ClosedFormCase::GenericOnly => unreachable!("no closed form"),
        };
        num / den
    }

    fn build(&self) -> BTreeMap<MatrixKey, DatumMatrix> {
        let deco = self.decoration();
        let label = |family| MatrixLabel { family, decoration: deco };
        let mut out = BTreeMap::new();
        let limit = self.pair_limit();
        for i in 1..=limit {
            for j in i..=limit {
                let rows = self.d(i) - self.d(i - 1);
                let cols = self.d(j + 1) - self.d(j);
                let rect = |f: &dyn Fn(usize, usize) -> Rational| DatumMatrix {
                    rows,
                    cols,
                    shape: MatrixShape::Rectangular,
                    cells: (1..=rows)
                        .flat_map(|u| (1..=cols).map(move |v| (u, v)))
                        .map(|(u, v)| (u, v, f(u, v)))
                        .collect(),
                };
                out.insert((label(MatrixFamily::P), i, j), rect(&|u, v| self.p_entry(i, j, u, v)));
                let q_excluded = self.case == ClosedFormCase::DSingleSpin && i == self.s;
                if !q_excluded {
                    out.insert((label(MatrixFamily::Q), i, j), rect(&|u, v| self.q_entry(i, j, u, v)));
                }
            }
        }
        let strict = !self.is_bc();
        for i in 1..=self.r_limit() {
            let m = self.d(i) - self.d(i - 1);
            let cells = (1..=m)
                .flat_map(|u| (1..=m).map(move |v| (u, v)))
                .filter(|&(u, v)| if strict { u < v } else { u <= v })
                .map(|(u, v)| (u, v, self.r_entry(i, u, v)))
                .collect();
            let shape = if strict {
                MatrixShape::StrictlyUpperTriangular
            } else {
                MatrixShape::UpperTriangular
            };
            out.insert((label(MatrixFamily::R), i, i), DatumMatrix { rows: m, cols: m, shape, cells });
        }
        out
    }
}

/// The first value whose multiplicity differs between the two routes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Discrepancy {
    pub value: Rational,
    pub generic_count: usize,
    pub closed_form_count: usize,
    pub generic_source: Option<DatumSource>,
    pub closed_form_source: Option<DatumSource>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Equivalence {
    pub equal: bool,
    pub discrepancy: Option<Discrepancy>,
}

/// Compares the closed form with the root-by-root datum as multisets.
/// On mismatch reports the smallest value whose multiplicities differ.
pub fn datum_equivalent(lw: &HighestWeight, rs: &RootSystem) -> Result<Equivalence> {
    let generic = datum_generic(lw, rs)?;
    let closed = datum_closed_form(lw, rs)?.flatten();
    let count = |d: &AssociatedDatum| {
        let mut m: BTreeMap<Rational, (usize, Option<DatumSource>)> = BTreeMap::new();
        for e in d.entries() {
            let slot = m.entry(e.value).or_insert((0, None));
            slot.0 += 1;
            slot.1.get_or_insert_with(|| e.source.clone());
        }
        m
    };
    let g = count(&generic);
    let c = count(&closed);
    let mismatch = g
        .keys()
        .chain(c.keys())
        .copied()
        .filter(|v| g.get(v).map(|x| x.0) != c.get(v).map(|x| x.0))
        .min();
    Ok(match mismatch {
        None => Equivalence { equal: true, discrepancy: None },
        Some(value) => Equivalence {
            equal: false,
            discrepancy: Some(Discrepancy {
                value,
                generic_count: g.get(&value).map_or(0, |x| x.0),
                closed_form_count: c.get(&value).map_or(0, |x| x.0),
                generic_source: g.get(&value).and_then(|x| x.1.clone()),
                closed_form_source: c.get(&value).and_then(|x| x.1.clone()),
            }),
        },
    })
}
