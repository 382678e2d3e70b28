//! Text renderings: fixed-significance numbers, JSON documents, CSV tables
//! and human-readable summaries.

use std::fmt::Write as _;

use serde::Serialize;
use serde_json::Value;

use crate::entropy::EntropyReport;
use crate::temperature::{CounterexampleReport, CrossingReport, Crossings};
use crate::walks::WalkRegularityVerdict;

/// Significant digits in machine-readable output.
pub const MACHINE_DIGITS: usize = 12;
/// Significant digits in human-readable output.
pub const HUMAN_DIGITS: usize = 6;

/// `%g`-style formatting with `sig` significant digits.
pub fn fmt_sig(x: f64, sig: usize) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sig = sig.max(1);
    let sci = format!("{:.*e}", sig - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -4 || exp >= sig as i32 {
        return format!("{}e{}", trim_zeros(mantissa), exp);
    }
    let decimals = (sig as i32 - 1 - exp).max(0) as usize;
    trim_zeros(&format!("{x:.decimals$}")).to_string()
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

pub fn round_sig(x: f64, sig: usize) -> f64 {
    fmt_sig(x, sig).parse().unwrap_or(x)
}

fn round_floats(value: &mut Value, sig: usize) {
    match value {
        Value::Number(num) if num.is_f64() => {
            let x = num.as_f64().expect("f64 number");
            if let Some(rounded) = serde_json::Number::from_f64(round_sig(x, sig)) {
                *num = rounded;
            }
        }
        Value::Array(items) => items.iter_mut().for_each(|v| round_floats(v, sig)),
        Value::Object(map) => map.values_mut().for_each(|v| round_floats(v, sig)),
        _ => {}
    }
}

/// Pretty JSON with every float rounded to [`MACHINE_DIGITS`].
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut v = serde_json::to_value(value).expect("report types serialize");
    round_floats(&mut v, MACHINE_DIGITS);
    let mut out = serde_json::to_string_pretty(&v).expect("json value serializes");
    out.push('\n');
    out
}

/// One row per report: `beta,entropy,max_entropy,deficit,spread,f_<rep>...`,
/// with one `f` column per vertex-class representative.
pub fn scan_csv(reports: &[EntropyReport], classes: &[Vec<usize>]) -> String {
    let mut out = String::from("beta,entropy,max_entropy,deficit,spread");
    for class in classes {
        let _ = write!(out, ",f_{}", class[0]);
    }
    out.push('\n');
    for r in reports {
        let mut cells = vec![r.beta, r.entropy, r.max_entropy, r.deficit, r.spread];
        cells.extend(classes.iter().map(|c| r.diagonal[c[0]]));
        out.push_str(&join(&cells, MACHINE_DIGITS, ","));
        out.push('\n');
    }
    out
}

pub fn crossings_csv(crossings: &[CrossingReport], classes: &[Vec<usize>]) -> String {
    let mut out = String::from("beta_star,bracket_lo,bracket_hi,spread");
    for class in classes {
        let _ = write!(out, ",f_{}", class[0]);
    }
    out.push('\n');
    for c in crossings {
        let mut cells = vec![c.beta_star, c.bracket_lo, c.bracket_hi, c.spread];
        cells.extend(c.classes.iter().map(|v| v.value));
        out.push_str(&join(&cells, MACHINE_DIGITS, ","));
        out.push('\n');
    }
    out
}

fn join(values: &[f64], sig: usize, sep: &str) -> String {
    values
        .iter()
        .map(|&v| fmt_sig(v, sig))
        .collect::<Vec<_>>()
        .join(sep)
}

fn h(x: f64) -> String {
    fmt_sig(x, HUMAN_DIGITS)
}

fn class_lines(out: &mut String, classes: &[Vec<usize>]) {
    let _ = writeln!(out, "classes: {}", classes.len());
    for (idx, class) in classes.iter().enumerate() {
        let members: Vec<String> = class.iter().map(usize::to_string).collect();
        let _ = writeln!(out, "  class {idx} ({} vertices): {}", class.len(), members.join(" "));
    }
}

pub fn verdict_human(v: &WalkRegularityVerdict, vertices: usize) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "walk-regular: {}", v.is_walk_regular);
    let _ = writeln!(out, "vertices: {vertices}");
    if let Some(w) = &v.witness {
        let _ = writeln!(
            out,
            "witness: length {}: vertex {} lies on {} closed walks, vertex {} on {}",
            w.length, w.first, w.first_count, w.second, w.second_count
        );
    }
    class_lines(&mut out, &v.classes);
    out
}

pub fn entropy_human(r: &EntropyReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "beta: {}", h(r.beta));
    let _ = writeln!(out, "entropy: {}", h(r.entropy));
    let _ = writeln!(out, "max entropy: {}", h(r.max_entropy));
    let _ = writeln!(out, "deficit: {}", h(r.deficit));
    let _ = writeln!(out, "spread: {}", h(r.spread));
    let _ = writeln!(out, "maximal: {}", r.is_maximal);
    out
}

pub fn scan_human(reports: &[EntropyReport]) -> String {
    let mut out = format!("{:>12} {:>12} {:>12} {:>12}  maximal\n", "beta", "entropy", "deficit", "spread");
    for r in reports {
        let _ = writeln!(
            out,
            "{:>12} {:>12} {:>12} {:>12}  {}",
            h(r.beta),
            h(r.entropy),
            h(r.deficit),
            h(r.spread),
            r.is_maximal
        );
    }
    out
}

fn crossing_line(out: &mut String, c: &CrossingReport) {
    let values: Vec<String> = c
        .classes
        .iter()
        .map(|v| format!("f_{}={}", v.representative, h(v.value)))
        .collect();
    let _ = writeln!(
        out,
        "  beta* = {}  bracket width {}  spread {}  {}",
        h(c.beta_star),
        h(c.bracket_hi - c.bracket_lo),
        h(c.spread),
        values.join(" ")
    );
}

/// JSON-ready view of a crossing search.
#[derive(Serialize)]
pub struct CrossingsDocument<'a> {
    pub all_beta: bool,
    pub classes: &'a [Vec<usize>],
    pub crossings: &'a [CrossingReport],
    pub pairwise_only: &'a [CrossingReport],
    pub warnings: &'a [String],
}

impl<'a> CrossingsDocument<'a> {
    pub fn new(c: &'a Crossings, classes: &'a [Vec<usize>]) -> Self {
        match c {
            Crossings::AllBeta => CrossingsDocument {
                all_beta: true,
                classes,
                crossings: &[],
                pairwise_only: &[],
                warnings: &[],
            },
            Crossings::Finite(scan) => CrossingsDocument {
                all_beta: false,
                classes,
                crossings: &scan.crossings,
                pairwise_only: &scan.pairwise_only,
                warnings: &scan.warnings,
            },
        }
    }
}

pub fn crossings_human(c: &Crossings) -> String {
    let mut out = String::new();
    match c {
        Crossings::AllBeta => {
            let _ = writeln!(out, "walk-regular: entropy is maximal at every beta");
        }
        Crossings::Finite(scan) => {
            let _ = writeln!(out, "maximal-entropy temperatures: {}", scan.crossings.len());
            for cr in &scan.crossings {
                crossing_line(&mut out, cr);
            }
            if !scan.pairwise_only.is_empty() {
                let _ = writeln!(out, "pairwise-only crossings: {}", scan.pairwise_only.len());
                for cr in &scan.pairwise_only {
                    crossing_line(&mut out, cr);
                }
            }
        }
    }
    out
}

pub fn counterexample_human(r: &CounterexampleReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "counterexample: {}", r.counterexample);
    let _ = writeln!(out, "vertices: {}  edges: {}", r.vertices, r.edges);
    let _ = writeln!(out, "walk-regular: {}", r.walk_regularity.is_walk_regular);
    if let Some(w) = &r.walk_regularity.witness {
        let _ = writeln!(
            out,
            "witness: length {}: {} vs {} closed walks (vertices {} and {})",
            w.length, w.first_count, w.second_count, w.first, w.second
        );
    }
    let _ = writeln!(out, "degree-regular: {}", r.degree_regular);
    let hist: Vec<String> = r
        .degree_histogram
        .iter()
        .map(|(d, c)| format!("{d}:{c}"))
        .collect();
    let _ = writeln!(out, "degree histogram: {}", hist.join(" "));
    if r.maximal_at_all_beta {
        let _ = writeln!(out, "maximal entropy at every beta");
    } else {
        let _ = writeln!(
            out,
            "maximal-entropy temperatures on (0, {}]: {}",
            h(r.scan_beta_max),
            r.crossing_count
        );
        for c in &r.crossings {
            crossing_line(&mut out, c);
        }
    }
    let _ = writeln!(out, "maximal at beta = 1: {}", r.maximal_at_beta_one);
    let _ = writeln!(
        out,
        "crossing count {} <= n - 1 = {}: {}",
        r.crossing_count, r.crossing_bound, r.within_crossing_bound
    );
    for f in &r.findings {
        let _ = writeln!(out, "FINDING: {f}");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn g_style_formatting() {
        assert_eq!(fmt_sig(0.0, 12), "0");
        assert_eq!(fmt_sig(0.49900141293330663, 12), "0.499001412933");
        assert_eq!(fmt_sig(1.9120235051788492, 6), "1.91202");
        assert_eq!(fmt_sig(24.0, 12), "24");
        assert_eq!(fmt_sig(3.178053830347945, 12), "3.17805383035");
        assert_eq!(fmt_sig(1e-13, 12), "1e-13");
        assert_eq!(fmt_sig(-2.5e-7, 6), "-2.5e-7");
        assert_eq!(fmt_sig(123456789012345.0, 12), "1.23456789012e14");
        assert_eq!(fmt_sig(0.0001, 6), "0.0001");
    }

    #[test]
    fn json_rounds_floats_only() {
        #[derive(Serialize)]
        struct Doc {
            count: usize,
            x: f64,
        }
        let s = to_json(&Doc {
            count: 3,
            x: std::f64::consts::PI,
        });
        assert!(s.contains("\"count\": 3"));
        assert!(s.contains("\"x\": 3.14159265359"));
    }

    proptest! {
        #[test]
        fn rounding_keeps_twelve_digits(x in -1e6f64..1e6) {
            let r = round_sig(x, 12);
            prop_assert!((r - x).abs() <= 1e-11 * x.abs().max(1e-300) + f64::MIN_POSITIVE);
            prop_assert_eq!(round_sig(r, 12), r);
        }
    }
}
