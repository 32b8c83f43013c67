//! Text syntax for vectors: `x1,x2,...,xn`, optionally parenthesized.
//!
//! Entries may be rationals such as `1/2`; the vector is then multiplied by
//! the least common multiple of the denominators, which keeps its direction.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{IntVector, Rational};

fn parse_entry(tok: &str) -> Result<Rational> {
    let tok = tok.trim().replace('\u{2212}', "-");
    let bad = || Error::Parse(format!("invalid coordinate {tok:?}"));
    match tok.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {tok:?}")));
            }
            Ok(Rational::new(n, d))
        }
        None => Ok(Rational::from_integer(tok.parse().map_err(|_| bad())?)),
    }
}

pub fn parse_vector(text: &str) -> Result<IntVector> {
    let v = parse_coords(text)?;
    if v.is_zero() {
        return Err(Error::Parse(format!("zero vector: {text:?}")));
    }
    Ok(v)
}

fn parse_coords(text: &str) -> Result<IntVector> {
    let mut s = text.trim();
    for (open, close) in [('(', ')'), ('[', ']')] {
        if let Some(inner) = s.strip_prefix(open).and_then(|r| r.strip_suffix(close)) {
            s = inner.trim();
        }
    }
    if s.is_empty() {
        return Err(Error::Parse("empty vector".into()));
    }
    let entries = s.split(',').map(parse_entry).collect::<Result<Vec<_>>>()?;
    if entries.len() < 2 {
        return Err(Error::Parse(format!(
            "vector needs at least 2 coordinates: {text:?}"
        )));
    }
    let lcm = entries
        .iter()
        .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let coords: Vec<BigInt> = entries
        .iter()
        .map(|q| (q * Rational::from_integer(lcm.clone())).to_integer())
        .collect();
    IntVector::new(coords)
}

/// One vector per line; blank lines and `#` comments are skipped.
///
/// Zero vectors are let through so that a verifier can report where they occur.
pub fn parse_sequence(text: &str) -> Result<Vec<IntVector>> {
    text.lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty())
        .map(parse_coords)
        .collect()
}
