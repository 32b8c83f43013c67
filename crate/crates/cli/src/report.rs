//! JSON shapes for command output. Integers are strings so nothing is lost.

use multisect::{CosineChain, EquisectorSequence, IntVector, SectorDecision, VerificationReport};
use num_bigint::BigInt;
use serde::Serialize;

pub fn int(x: &BigInt) -> String {
    x.to_string()
}

pub fn vector(v: &IntVector) -> Vec<String> {
    v.coords().iter().map(int).collect()
}

pub fn sequence(s: &EquisectorSequence) -> Vec<Vec<String>> {
    s.vectors.iter().map(vector).collect()
}

#[derive(Debug, Serialize)]
pub struct Antiparallel {
    pub root: String,
    pub sequence: Vec<Vec<String>>,
}

#[derive(Debug, Serialize)]
pub struct SectableReport {
    pub status: String,
    pub m: u32,
    pub a: Vec<String>,
    pub b: Vec<String>,
    pub p: String,
    pub na: String,
    pub nb: String,
    pub s2: String,
    pub route: String,
    /// Coefficients from the constant term up.
    pub polynomial: Option<Vec<String>>,
    pub roots: Vec<String>,
    pub sequences: Vec<Vec<Vec<String>>>,
    pub rejected_antiparallel: Vec<Antiparallel>,
    pub budget_exhausted: bool,
}

impl SectableReport {
    pub fn new(a: &IntVector, b: &IntVector, d: &SectorDecision) -> Self {
        SectableReport {
            status: d.status.to_string(),
            m: d.m,
            a: vector(a),
            b: vector(b),
            p: int(&d.gram.p),
            na: int(&d.gram.na),
            nb: int(&d.gram.nb),
            s2: int(&d.gram.s2),
            route: format!("{:?}", d.route),
            polynomial: d
                .polynomial
                .as_ref()
                .map(|f| f.coeffs().iter().map(int).collect()),
            roots: d.roots.iter().map(int).collect(),
            sequences: d.sequences.iter().map(sequence).collect(),
            rejected_antiparallel: d
                .rejected_antiparallel
                .iter()
                .map(|(t, s)| Antiparallel {
                    root: int(t),
                    sequence: sequence(s),
                })
                .collect(),
            budget_exhausted: d.budget_exhausted,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct BisectorReport {
    pub exists: bool,
    pub bisector: Option<Vec<String>>,
}

#[derive(Debug, Serialize)]
pub struct Pow2Report {
    pub e: u32,
    pub holds: bool,
    pub cosines: Vec<String>,
}

impl From<&CosineChain> for Pow2Report {
    fn from(c: &CosineChain) -> Self {
        Pow2Report {
            e: c.e,
            holds: c.holds,
            cosines: c.cosines.iter().map(|q| q.to_string()).collect(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct SequenceReport {
    pub sequence: Vec<Vec<String>>,
}

#[derive(Debug, Serialize)]
pub struct FailureReport {
    pub sequence: usize,
    pub index: usize,
    pub kind: String,
}

#[derive(Debug, Serialize)]
pub struct VerifyReport {
    pub valid: bool,
    pub checked: usize,
    pub failure: Option<FailureReport>,
}

impl VerifyReport {
    pub fn new(results: &[VerificationReport]) -> Self {
        let failure = results.iter().enumerate().find_map(|(i, r)| {
            r.failure.map(|f| FailureReport {
                sequence: i,
                index: f.index,
                kind: f.kind.to_string(),
            })
        });
        VerifyReport {
            valid: failure.is_none(),
            checked: results.len(),
            failure,
        }
    }
}
