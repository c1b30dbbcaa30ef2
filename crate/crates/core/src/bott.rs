//! Borel–Weil–Bott for the twists `E_λ ⊗ O_X(−t)`.
//!
//! The shifted weight `λ − tη + ρ` is either singular (some pairing with a
//! positive root vanishes, and all cohomology vanishes) or regular, in which
//! case exactly one cohomology group survives, in degree equal to the number
//! of positive roots pairing negatively. This gives a decision procedure for
//! the Ulrich property straight from its cohomological definition, with no
//! reference to the associated datum beyond choosing a finite window of `t`.

use std::fmt;

use num_integer::Integer;

use crate::datum::{HighestWeight, Polarization};
use crate::error::{Error, Result};
use crate::rootsys::{RootSystem, Weight};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwistedWeight {
    base: HighestWeight,
    twist: i64,
    shifted: Weight,
}

impl TwistedWeight {
    pub fn new(base: HighestWeight, twist: i64) -> Self {
        let shifted = Weight(
            (1..=base.rank())
                .map(|k| base.abar(k) - if base.nodes().contains(k) { twist } else { 0 })
                .collect(),
        );
        Self { base, twist, shifted }
    }

    pub fn base(&self) -> &HighestWeight {
        &self.base
    }

    pub fn twist(&self) -> i64 {
        self.twist
    }

    /// `λ − tη + ρ`.
    pub fn shifted(&self) -> &Weight {
        &self.shifted
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CohomologyVerdict {
    AllVanish,
    /// The only nonzero group is `H^degree`, isomorphic to the irreducible
    /// `G`-module with highest weight `dominant`.
    Nonzero { degree: usize, dominant: Weight },
}

impl fmt::Display for CohomologyVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CohomologyVerdict::AllVanish => f.write_str("ALL_VANISH"),
            CohomologyVerdict::Nonzero { degree, dominant } => {
                let parts: Vec<String> = dominant.coeffs().iter().map(|x| x.to_string()).collect();
                write!(f, "NONZERO(degree {degree}, dominant ({}))", parts.join(","))
            }
        }
    }
}

/// `2 (μ, α)`, integral for every classical type.
fn pairing_x2(d2: &[i64], mu: &[i64], alpha: &[i64]) -> i64 {
    mu.iter().zip(alpha).zip(d2).map(|((&m, &c), &d)| m * c * d).sum()
}

pub fn bott_cohomology(tw: &TwistedWeight, rs: &RootSystem) -> Result<CohomologyVerdict> {
    let mu = tw.shifted.coeffs();
    if mu.len() != rs.rank() {
        return Err(Error::Usage(format!(
            "weight has {} coefficients but the rank is {}",
            mu.len(),
            rs.rank()
        )));
    }
    let d2 = rs.symmetrizer_x2();
    let mut degree = 0;
    for alpha in rs.positive_roots() {
        match pairing_x2(&d2, mu, alpha.coeffs()).signum() {
            0 => return Ok(CohomologyVerdict::AllVanish),
            -1 => degree += 1,
            _ => {}
        }
    }

    // Each reflection in a simple root pairing negatively removes exactly one
    // inversion, so `degree` steps suffice; the cap only guards that invariant.
    let max_coeff = mu.iter().map(|m| m.abs()).max().unwrap_or(0).max(1);
    let cap = rs.positive_roots().len() * max_coeff as usize;
    let mut w = mu.to_vec();
    let mut steps = 0;
    while let Some(j) = w.iter().position(|&m| m < 0) {
        rs.reflect(&mut w, j + 1);
        steps += 1;
        if steps > cap {
            return Err(Error::Internal(format!("dominant translate of {mu:?} not reached")));
        }
    }
    if steps != degree {
        return Err(Error::Internal(format!(
            "{steps} reflections for {degree} inversions of {mu:?}"
        )));
    }
    let dominant = Weight(w).sub(&Weight::rho(rs.rank()));
    Ok(CohomologyVerdict::Nonzero { degree, dominant })
}

/// Twists outside `[lo, hi]` are cohomologically stable: for `t ≤ lo` only
/// `H^0` survives and for `t ≥ hi` only `H^{dim X}` does.
///
/// Pairings of `λ − tη + ρ` with Levi roots do not involve `t` (the roots have
/// no marked-node coefficient) and are positive because `λ` is dominant on
/// unmarked nodes. For `α ∈ Φ_J^+` the pairing is `(η, α)(φ(α) − t)` with
/// `(η, α) > 0`, so every such pairing is positive once `t < min φ` and
/// negative once `t > max φ`. The first gives a regular dominant weight
/// (degree 0), the second exactly `|Φ_J^+| = dim X` inversions.
pub fn stable_window(lw: &HighestWeight, rs: &RootSystem) -> Result<(i64, i64)> {
    let datum = crate::datum::datum_generic(lw, rs)?;
    let (Some(min), Some(max)) = (datum.min(), datum.max()) else {
        return Err(Error::Internal("empty datum".into()));
    };
    let lo = min.numer().div_ceil(min.denom()) - 1;
    let hi = max.numer().div_floor(max.denom()) + 1;
    Ok((lo, hi))
}

/// Checks the three vanishing conditions of the Ulrich definition: no middle
/// cohomology for any `t`, no `H^0` for `t ≥ 1`, and no `H^{dim X}` for
/// `t ≤ dim X`. By [`stable_window`] every `t` outside
/// `[min(lo, 1), max(hi, dim X)]` satisfies all three automatically, so
/// scanning that range decides all of `ℤ`.
pub fn ulrich_via_bott(lw: &HighestWeight, rs: &RootSystem) -> Result<bool> {
    let dim = rs.dimension(lw.nodes())?;
    let (lo, hi) = stable_window(lw, rs)?;
    let top = dim as i64;
    for t in lo.min(1)..=hi.max(top) {
        if let CohomologyVerdict::Nonzero { degree, .. } =
            bott_cohomology(&TwistedWeight::new(lw.clone(), t), rs)?
        {
            let middle = degree > 0 && degree < dim;
            let sections = degree == 0 && t >= 1;
            let top_class = degree == dim && t <= top;
            if middle || sections || top_class {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `η` as a weight, for callers that want to form twists by hand.
pub fn polarization_weight(lw: &HighestWeight) -> Weight {
    Polarization::minimal(lw.nodes()).weight().clone()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::{Family, ParabolicSet};

    fn lw(f: Family, n: usize, nodes: &[usize], a: &[i64]) -> (RootSystem, HighestWeight) {
        let rs = RootSystem::build(f, n).unwrap();
        let j = ParabolicSet::new(nodes.to_vec(), n).unwrap();
        (rs, HighestWeight::new(a.to_vec(), j).unwrap())
    }

    #[test]
    fn projective_line_twists() {
        let (rs, w) = lw(Family::A, 1, &[1], &[0]);
        let v = bott_cohomology(&TwistedWeight::new(w.clone(), 1), &rs).unwrap();
        assert_eq!(v, CohomologyVerdict::AllVanish);
        let v = bott_cohomology(&TwistedWeight::new(w.clone(), 2), &rs).unwrap();
        // H^1(O(-2)) is the trivial module.
        assert_eq!(v, CohomologyVerdict::Nonzero { degree: 1, dominant: Weight(vec![0]) });
        let v = bott_cohomology(&TwistedWeight::new(w, 0), &rs).unwrap();
        assert_eq!(v, CohomologyVerdict::Nonzero { degree: 0, dominant: Weight(vec![0]) });
    }

    #[test]
    fn shifted_coordinates() {
        let (_, w) = lw(Family::B, 2, &[1], &[0, 1]);
        let tw = TwistedWeight::new(w, 2);
        assert_eq!(tw.shifted(), &Weight(vec![-1, 2]));
        assert_eq!(tw.twist(), 2);
    }

    #[test]
    fn spinor_bundle_on_quadric() {
        let (rs, w) = lw(Family::B, 2, &[1], &[0, 1]);
        for t in 1..=3 {
            let v = bott_cohomology(&TwistedWeight::new(w.clone(), t), &rs).unwrap();
            assert_eq!(v, CohomologyVerdict::AllVanish, "t = {t}");
        }
        assert!(ulrich_via_bott(&w, &rs).unwrap());
    }

    #[test]
    fn full_flag_b2_is_not_ulrich() {
        let (rs, w) = lw(Family::B, 2, &[1, 2], &[0, 0]);
        assert!(!ulrich_via_bott(&w, &rs).unwrap());
    }

    #[test]
    fn projective_space_structure_sheaf() {
        for n in 1..=5 {
            let (rs, w) = lw(Family::A, n, &[1], &vec![0; n]);
            assert!(ulrich_via_bott(&w, &rs).unwrap(), "n = {n}");
        }
        let (rs, w) = lw(Family::A, 2, &[1], &[1, 0]);
        assert!(!ulrich_via_bott(&w, &rs).unwrap());
    }

    #[test]
    fn global_sections_at_zero_twist() {
        let (rs, w) = lw(Family::C, 3, &[1, 3], &[2, 1, 0]);
        let v = bott_cohomology(&TwistedWeight::new(w.clone(), 0), &rs).unwrap();
        let dominant = Weight(w.coeffs().to_vec());
        assert_eq!(v, CohomologyVerdict::Nonzero { degree: 0, dominant });
    }

    #[test]
    fn window_tails_are_stable() {
        let (rs, w) = lw(Family::D, 5, &[2, 4], &[1, 3, 0, 2, 1]);
        let dim = rs.dimension(w.nodes()).unwrap();
        let (lo, hi) = stable_window(&w, &rs).unwrap();
        for t in lo - 5..=lo {
            let v = bott_cohomology(&TwistedWeight::new(w.clone(), t), &rs).unwrap();
            assert!(matches!(v, CohomologyVerdict::Nonzero { degree: 0, .. }), "t = {t}");
        }
        for t in hi..=hi + 5 {
            let v = bott_cohomology(&TwistedWeight::new(w.clone(), t), &rs).unwrap();
            assert!(matches!(v, CohomologyVerdict::Nonzero { degree, .. } if degree == dim), "t = {t}");
        }
    }

    #[test]
    fn polarization_weight_marks_nodes() {
        let (_, w) = lw(Family::B, 3, &[1, 3], &[0, 0, 0]);
        assert_eq!(polarization_weight(&w), Weight(vec![1, 0, 1]));
    }
}
