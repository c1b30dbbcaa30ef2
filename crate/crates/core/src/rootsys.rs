//! Root systems of classical type in simple-root coordinates.
//!
//! Roots are stored as coefficient vectors over the simple roots, weights as
//! coefficient vectors over the fundamental weights. With the symmetrizer
//! `d_j = (α_j, α_j) / 2` the invariant form reduces to
//! `(μ, α) = Σ_j m_j c_j d_j`, which is all the downstream modules need.
//! Roots of the simply-laced chain have squared length 2; the odd node has
//! length 1 in type B and 4 in type C.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
}

impl Family {
    pub const ALL: [Family; 4] = [Family::A, Family::B, Family::C, Family::D];

    /// Smallest admissible rank.
    pub fn min_rank(self) -> usize {
        match self {
            Family::A => 1,
            Family::B | Family::C => 2,
            Family::D => 4,
        }
    }

    pub fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "A" | "a" => Ok(Family::A),
            "B" | "b" => Ok(Family::B),
            "C" | "c" => Ok(Family::C),
            "D" | "d" => Ok(Family::D),
            other => Err(Error::Usage(format!(
                "unknown Lie family {other:?}; expected one of A, B, C, D"
            ))),
        }
    }
}

/// A classical Cartan type `X_n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LieType {
    family: Family,
    rank: usize,
}

impl LieType {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let min = family.min_rank();
        if rank < min {
            return Err(Error::Config(format!(
                "type {family} requires rank n >= {min}, got n = {rank}"
            )));
        }
        Ok(Self { family, rank })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }
}

impl fmt::Display for LieType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family, self.rank)
    }
}

/// A positive root, as coefficients over the simple roots.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Root(Vec<i64>);

impl Root {
    pub fn coeffs(&self) -> &[i64] {
        &self.0
    }

    /// Coefficient of the simple root `α_j` (1-based).
    pub fn coeff(&self, j: usize) -> i64 {
        self.0[j - 1]
    }

    pub fn height(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn is_simple(&self) -> bool {
        self.height() == 1
    }

    pub fn simple(j: usize, rank: usize) -> Self {
        let mut c = vec![0; rank];
        c[j - 1] = 1;
        Root(c)
    }

    /// Wraps a coefficient vector without checking membership in a root system.
    pub fn from_coeffs(coeffs: Vec<i64>) -> Self {
        Root(coeffs)
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (j, &c) in self.0.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, "+")?;
            }
            first = false;
            if c != 1 {
                write!(f, "{c}")?;
            }
            write!(f, "a{}", j + 1)?;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// An integral weight, as coefficients over the fundamental weights.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Weight(pub Vec<i64>);

impl Weight {
    pub fn zero(rank: usize) -> Self {
        Weight(vec![0; rank])
    }

    /// The fundamental weight `λ_i` (1-based).
    pub fn fundamental(i: usize, rank: usize) -> Self {
        let mut m = vec![0; rank];
        m[i - 1] = 1;
        Weight(m)
    }

    /// `ρ = λ_1 + … + λ_n`.
    pub fn rho(rank: usize) -> Self {
        Weight(vec![1; rank])
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.0
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn add(&self, other: &Weight) -> Weight {
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Weight) -> Weight {
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, k: i64) -> Weight {
        Weight(self.0.iter().map(|a| a * k).collect())
    }
}

/// A set of marked Dynkin nodes `d_1 < … < d_s`, 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ParabolicSet {
    nodes: Vec<usize>,
    rank: usize,
}

impl ParabolicSet {
    pub fn new(nodes: Vec<usize>, rank: usize) -> Result<Self> {
        if nodes.is_empty() {
            return Err(Error::Config("node set J must be non-empty".into()));
        }
        if let Some(&bad) = nodes.iter().find(|&&d| d == 0 || d > rank) {
            return Err(Error::Config(format!(
                "node {bad} is outside the Dynkin index range 1..={rank}"
            )));
        }
        if nodes.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Config(format!(
                "nodes must be strictly increasing, got {nodes:?}"
            )));
        }
        Ok(Self { nodes, rank })
    }

    /// All nodes `{1, …, n}`: the full flag.
    pub fn full(rank: usize) -> Self {
        Self { nodes: (1..=rank).collect(), rank }
    }

    pub fn nodes(&self) -> &[usize] {
        &self.nodes
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Picard number `s = |J|`.
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// `d_i` with the conventions `d_0 = 0` and `d_{s+1} = n`.
    pub fn d(&self, i: usize) -> usize {
        match i {
            0 => 0,
            i if i == self.nodes.len() + 1 => self.rank,
            i => self.nodes[i - 1],
        }
    }

    pub fn contains(&self, node: usize) -> bool {
        self.nodes.binary_search(&node).is_ok()
    }

    /// Every non-empty subset of `{1, …, n}`, in lexicographic order of the
    /// membership bitmask.
    pub fn all(rank: usize) -> Vec<ParabolicSet> {
        (1u32..(1 << rank))
            .map(|mask| ParabolicSet {
                nodes: (1..=rank).filter(|&k| mask & (1 << (k - 1)) != 0).collect(),
                rank,
            })
            .collect()
    }
}

impl fmt::Display for ParabolicSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.nodes.iter().map(|d| d.to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// Positive roots of a classical root system together with the data needed
/// to pair weights against them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootSystem {
    lie_type: LieType,
    positive_roots: Vec<Root>,
    symmetrizer: Vec<Rational>,
    /// `cartan[i][j] = ⟨α_i, α_j^∨⟩`; row `i` is `α_i` in fundamental weights.
    cartan: Vec<Vec<i64>>,
}

impl RootSystem {
    pub fn new(lie_type: LieType) -> Self {
        let n = lie_type.rank();
        let gram = gram_matrix(lie_type);
        let symmetrizer: Vec<Rational> = (0..n).map(|j| gram[j][j] / Rational::from(2)).collect();
        let cartan = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let v = gram[i][j] / symmetrizer[j];
                        debug_assert!(v.is_integer());
                        v.to_integer()
                    })
                    .collect()
            })
            .collect::<Vec<Vec<i64>>>();
        let positive_roots = close_positive_roots(&cartan);
        Self { lie_type, positive_roots, symmetrizer, cartan }
    }

    /// Builds the root system of `family` and `rank`, rejecting ranks below
    /// the family floor.
    pub fn build(family: Family, rank: usize) -> Result<Self> {
        Ok(Self::new(LieType::new(family, rank)?))
    }

    pub fn lie_type(&self) -> LieType {
        self.lie_type
    }

    pub fn family(&self) -> Family {
        self.lie_type.family()
    }

    pub fn rank(&self) -> usize {
        self.lie_type.rank()
    }

    pub fn positive_roots(&self) -> &[Root] {
        &self.positive_roots
    }

    pub fn symmetrizer(&self) -> &[Rational] {
        &self.symmetrizer
    }

    /// The symmetrizer scaled by 2, which is integral for every classical type.
    pub fn symmetrizer_x2(&self) -> Vec<i64> {
        self.symmetrizer.iter().map(|d| (d * Rational::from(2)).to_integer()).collect()
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    /// `(μ, α) = Σ_j c_j m_j d_j`.
    pub fn pairing(&self, mu: &Weight, alpha: &Root) -> Result<Rational> {
        let n = self.rank();
        if mu.rank() != n || alpha.coeffs().len() != n {
            return Err(Error::Usage(format!(
                "dimension mismatch: rank {n}, weight has {} coefficients, root has {}",
                mu.rank(),
                alpha.coeffs().len()
            )));
        }
        Ok(self.pairing_unchecked(mu.coeffs(), alpha.coeffs()))
    }

    pub(crate) fn pairing_unchecked(&self, mu: &[i64], alpha: &[i64]) -> Rational {
        mu.iter()
            .zip(alpha)
            .zip(&self.symmetrizer)
            .fold(Rational::zero(), |acc, ((&m, &c), &d)| acc + d * Rational::from(m * c))
    }

    /// Positive roots with a nonzero coefficient at some marked node.
    pub fn phi_j_plus(&self, j: &ParabolicSet) -> Result<Vec<Root>> {
        self.check_nodes(j)?;
        Ok(self
            .positive_roots
            .iter()
            .filter(|r| j.nodes().iter().any(|&d| r.coeff(d) != 0))
            .cloned()
            .collect())
    }

    /// Positive roots of the Levi factor, `Φ^+ \ Φ_J^+`.
    pub fn levi_roots(&self, j: &ParabolicSet) -> Result<Vec<Root>> {
        self.check_nodes(j)?;
        Ok(self
            .positive_roots
            .iter()
            .filter(|r| j.nodes().iter().all(|&d| r.coeff(d) == 0))
            .cloned()
            .collect())
    }

    /// `dim G/P_J = |Φ_J^+|`.
    pub fn dimension(&self, j: &ParabolicSet) -> Result<usize> {
        Ok(self.phi_j_plus(j)?.len())
    }

    pub(crate) fn check_nodes(&self, j: &ParabolicSet) -> Result<()> {
        if j.rank() != self.rank() {
            return Err(Error::Usage(format!(
                "node set built for rank {} used with {}",
                j.rank(),
                self.lie_type
            )));
        }
        Ok(())
    }

    /// The simple reflection `s_j` acting on a weight in fundamental-weight
    /// coordinates: `s_j(μ) = μ − m_j α_j`.
    pub fn reflect(&self, mu: &mut [i64], j: usize) {
        let m = mu[j - 1];
        if m == 0 {
            return;
        }
        for (i, coeff) in mu.iter_mut().enumerate() {
            *coeff -= m * self.cartan[j - 1][i];
        }
    }
}

/// `(α_i, α_j)`; chain roots have squared length 2.
fn gram_matrix(t: LieType) -> Vec<Vec<Rational>> {
    let n = t.rank();
    let mut g = vec![vec![Rational::zero(); n]; n];
    for i in 0..n {
        g[i][i] = Rational::from(2);
        if i + 1 < n {
            g[i][i + 1] = Rational::from(-1);
            g[i + 1][i] = Rational::from(-1);
        }
    }
    match t.family() {
        Family::A => {}
        Family::B => {
            g[n - 1][n - 1] = Rational::from(1);
        }
        Family::C => {
            g[n - 1][n - 1] = Rational::from(4);
            g[n - 2][n - 1] = Rational::from(-2);
            g[n - 1][n - 2] = Rational::from(-2);
        }
        Family::D => {
            g[n - 2][n - 1] = Rational::zero();
            g[n - 1][n - 2] = Rational::zero();
            g[n - 3][n - 1] = Rational::from(-1);
            g[n - 1][n - 3] = Rational::from(-1);
        }
    }
    g
}

/// Closes the simple roots under root strings: for a root `β` and simple `α_j`,
/// `β + α_j` is a root iff `q − ⟨β, α_j^∨⟩ > 0`, where `q` is the length of the
/// `α_j`-string below `β`.
fn close_positive_roots(cartan: &[Vec<i64>]) -> Vec<Root> {
    let n = cartan.len();
    let mut seen: HashSet<Vec<i64>> = HashSet::new();
    let mut layer: Vec<Vec<i64>> = (1..=n).map(|j| Root::simple(j, n).0).collect();
    let mut all = Vec::new();
    for r in &layer {
        seen.insert(r.clone());
    }
    while !layer.is_empty() {
        let mut next = Vec::new();
        for beta in &layer {
            for j in 0..n {
                let mut q = 0;
                let mut lower = beta.clone();
                loop {
                    lower[j] -= 1;
                    if seen.contains(&lower) {
                        q += 1;
                    } else {
                        break;
                    }
                }
                let pair: i64 = (0..n).map(|i| beta[i] * cartan[i][j]).sum();
                if q - pair > 0 {
                    let mut up = beta.clone();
                    up[j] += 1;
                    if seen.insert(up.clone()) {
                        next.push(up);
                    }
                }
            }
        }
        all.append(&mut layer);
        layer = next;
    }
    let mut roots: Vec<Root> = all.into_iter().map(Root).collect();
    roots.sort();
    roots
}
