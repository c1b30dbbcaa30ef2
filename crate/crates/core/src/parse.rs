//! Text input: comma lists for the command line and the JSON emitted by the
//! `datum` subcommand.

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::rootsys::{Family, ParabolicSet};
use crate::Rational;

/// Largest rank accepted from text.
pub const MAX_RANK: usize = 30;
/// Largest coefficient magnitude accepted from text; keeps every pairing and
/// shifted weight well inside `i64`.
pub const MAX_COEFF: i64 = 1 << 40;

fn items(s: &str) -> impl Iterator<Item = &str> {
    s.split(',').map(str::trim)
}

pub fn parse_family_list(s: &str) -> Result<Vec<Family>> {
    let mut out: Vec<Family> = items(s).map(str::parse).collect::<Result<_>>()?;
    out.sort();
    out.dedup();
    Ok(out)
}

pub fn parse_int_list(s: &str) -> Result<Vec<i64>> {
    items(s)
        .map(|t| {
            let v: i64 = t.parse().map_err(|_| Error::Usage(format!("not an integer: {t:?}")))?;
            if v.abs() > MAX_COEFF {
                return Err(Error::Usage(format!("|{v}| exceeds the limit {MAX_COEFF}")));
            }
            Ok(v)
        })
        .collect()
}

pub fn parse_rank(s: &str) -> Result<usize> {
    let n: usize = s.trim().parse().map_err(|_| Error::Usage(format!("not a rank: {s:?}")))?;
    if n == 0 || n > MAX_RANK {
        return Err(Error::Usage(format!("rank must be between 1 and {MAX_RANK}, got {n}")));
    }
    Ok(n)
}

/// `"1,3"` as marked nodes of a rank-`rank` diagram. Nodes must be listed in
/// increasing order without repeats.
pub fn parse_nodes(s: &str, rank: usize) -> Result<ParabolicSet> {
    let raw = parse_int_list(s)?;
    let nodes = raw
        .iter()
        .map(|&x| usize::try_from(x).map_err(|_| Error::Config(format!("node {x} is not in 1..={rank}"))))
        .collect::<Result<Vec<_>>>()?;
    ParabolicSet::new(nodes, rank)
}

/// `"3/2"`, `"-4"` or `"7/1"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Usage(format!("not a rational: {s:?}"));
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim().parse::<i64>().map_err(|_| bad())?, d.trim().parse::<i64>().map_err(|_| bad())?),
        None => (s.parse::<i64>().map_err(|_| bad())?, 1),
    };
    if den == 0 {
        return Err(Error::Domain(format!("zero denominator in {s:?}")));
    }
    if num == i64::MIN || den == i64::MIN {
        return Err(bad());
    }
    Ok(Rational::new(num, den))
}

#[derive(Deserialize)]
struct WireValue {
    num: i64,
    den: i64,
}

#[derive(Deserialize)]
struct WireDatum {
    datum: Vec<WireValue>,
}

/// The values listed under `"datum"` in `datum` or `check` JSON output,
/// sorted.
pub fn decode_datum_json(s: &str) -> Result<Vec<Rational>> {
    let wire: WireDatum = serde_json::from_str(s).map_err(|e| Error::Usage(format!("bad datum JSON: {e}")))?;
    let mut out = wire
        .datum
        .into_iter()
        .map(|v| {
            if v.den == 0 {
                return Err(Error::Domain("zero denominator in datum JSON".into()));
            }
            if v.num == i64::MIN || v.den == i64::MIN {
                return Err(Error::Usage("datum value out of range".into()));
            }
            Ok(Rational::new(v.num, v.den))
        })
        .collect::<Result<Vec<_>>>()?;
    out.sort();
    Ok(out)
}
