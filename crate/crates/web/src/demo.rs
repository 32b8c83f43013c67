use std::fmt::Write as _;

use multisect::{
    extend_sequence, msect, parse_vector, pow2_sectable, render_svg, EquisectorSequence, IntVector,
    MsectOptions, PlotSpec, SectorStatus,
};

type Result<T> = std::result::Result<T, String>;

/// Browsers should not sit on a factoring job, so the budget is smaller than the library default.
const BUDGET: u64 = 2_000_000;

fn vector(s: &str) -> Result<IntVector> {
    parse_vector(s).map_err(|e| e.to_string())
}

pub fn fan_svg(c0: &str, c1: &str, steps: usize, labels: bool) -> Result<String> {
    if steps > 64 {
        return Err("at most 64 steps".into());
    }
    let seq = EquisectorSequence {
        vectors: vec![vector(c0)?, vector(c1)?],
        verified: false,
    };
    let seq = extend_sequence(&seq, steps).map_err(|e| e.to_string())?;
    let mut spec = PlotSpec::new(&seq);
    spec.labels = labels;
    render_svg(&spec).map_err(|e| e.to_string())
}

pub fn sectable(m: u32, a: &str, b: &str) -> Result<String> {
    let (a, b) = (vector(a)?, vector(b)?);
    let mut opts = MsectOptions::default();
    opts.search.budget = BUDGET;
    let d = msect(&a, &b, m, &opts).map_err(|e| e.to_string())?;
    let mut out = format!("{}\n", d.status);
    if let Some(f) = &d.polynomial {
        let _ = writeln!(out, "f(t) = {f}");
    }
    match d.status {
        SectorStatus::Indeterminate => out.push_str("search budget exhausted\n"),
        _ if d.roots.is_empty() => out.push_str("no integer roots\n"),
        _ => {
            let roots: Vec<String> = d.roots.iter().map(|t| t.to_string()).collect();
            let _ = writeln!(out, "roots: {}", roots.join(", "));
        }
    }
    for s in &d.sequences {
        let vs: Vec<String> = s.vectors.iter().map(|v| v.to_string()).collect();
        let _ = writeln!(out, "{}", vs.join(" \u{2192} "));
    }
    Ok(out)
}

pub fn cosine_chain(e: u32, a: &str, b: &str) -> Result<String> {
    if e > 32 {
        return Err("e must be at most 32".into());
    }
    let c = pow2_sectable(&vector(a)?, &vector(b)?, e).map_err(|e| e.to_string())?;
    let cos: Vec<String> = c.cosines.iter().map(|q| q.to_string()).collect();
    Ok(format!(
        "{}-sectable: {}\ncosines: {}\n",
        1u64 << e,
        c.holds,
        if cos.is_empty() {
            "irrational".to_string()
        } else {
            cos.join(", ")
        }
    ))
}
