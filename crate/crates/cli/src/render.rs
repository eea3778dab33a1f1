//! Plain-text rendering of reports. Gaussian integers use the canonical literal grammar.

use std::fmt::Write;

use gauss_css::code::Distance;
use gauss_css::doc::{CodeReport, CssReport, FieldReport};
use gauss_css::table::{Consistency, ReadingReport, TableReport};
use gauss_css::{GaussInt, Polynomial, PrimeField, ProtocolTranscript};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimulateReport {
    pub n: usize,
    #[serde(rename = "K")]
    pub k: usize,
    pub x: Vec<GaussInt>,
    pub e1: Vec<GaussInt>,
    pub e2: Vec<GaussInt>,
    pub transcript: ProtocolTranscript,
}

fn list(v: &[GaussInt]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
}

fn dist(d: Option<Distance>) -> String {
    d.map_or_else(|| "-".to_string(), |d| d.to_string())
}

fn poly_text(pi: GaussInt, coeffs: &[GaussInt]) -> String {
    match PrimeField::new(pi) {
        Ok(f) => Polynomial::new(&f, coeffs.iter().copied()).to_algebraic(),
        Err(_) => list(coeffs),
    }
}

pub fn field(r: &FieldReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "field G_{{{}}}  p = {}", r.pi, r.p);
    let _ = writeln!(out, "residues (label order): {}", list(&r.residues));
    let weights: Vec<String> = r.weights.iter().map(ToString::to_string).collect();
    let _ = writeln!(out, "mannheim weights: {}", weights.join(" "));
    let _ = writeln!(out, "alpha1 = {}  alpha2 = {}", r.alpha1, r.alpha2);
    let f = &r.factorization;
    let q = (r.p - 1) / 4;
    let ok = |b: bool| if b { "ok" } else { "FAILED" };
    let _ = writeln!(
        out,
        "factorizations: x^{q} - i {}, x^{q} + i {}, x^{} + 1 {}, x^{} - 1 {}",
        ok(f.quartic_minus_i),
        ok(f.quartic_plus_i),
        2 * q,
        ok(f.half_plus_one),
        4 * q,
        ok(f.full_minus_one)
    );
    for o in &f.offending {
        let _ = writeln!(out, "  {o}");
    }
    out
}

pub fn code(r: &CodeReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "code over G_{{{}}} (p = {}): n = {}, k = {}", r.pi, r.p, r.n, r.k);
    let _ = writeln!(out, "d_M = {}  d_H = {}", dist(r.d_m), dist(r.d_h));
    if let (Some(g), Some(m)) = (&r.generator_poly, r.modulus) {
        let sign = match m {
            gauss_css::Modulus::PlusOne => "+",
            gauss_css::Modulus::MinusOne => "-",
        };
        let _ = writeln!(out, "generator polynomial: {} (modulus x^{} {sign} 1)", poly_text(r.pi, g), r.n);
    }
    let _ = writeln!(out, "generator matrix:");
    for row in &r.generator_matrix {
        let _ = writeln!(out, "  {}", list(row));
    }
    let _ = writeln!(out, "parity-check matrix:");
    for row in &r.parity_check_matrix {
        let _ = writeln!(out, "  {}", list(row));
    }
    let _ = writeln!(out, "dual: k = {}  d_M = {}  d_H = {}", r.dual.k, dist(r.dual.d_m), dist(r.dual.d_h));
    out
}

pub fn css(r: &CssReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "[[{},{},{}]]_{{{}}}  (Hamming: [[{},{},{}]])", r.n, r.k, r.d_m, r.pi, r.n, r.k, r.d_h);
    let _ = writeln!(out, "k1 = {}  k2 = {}  p = {}", r.k1, r.k2, r.p);
    let c = &r.components;
    let _ = writeln!(
        out,
        "d_M(C1) = {}  d_M(C2⊥) = {}  d_H(C1) = {}  d_H(C2⊥) = {}",
        dist(c.c1_m),
        dist(c.c2_dual_m),
        dist(c.c1_h),
        dist(c.c2_dual_h)
    );
    for e in [&r.counts.mannheim, &r.counts.hamming] {
        let _ = writeln!(out, "correctable errors ({}): d = {}, t = {}, count = {}", e.metric, e.d, e.t, e.count);
    }
    let verdict = if r.singleton.attains { "attains" } else { "does not attain" };
    let _ = writeln!(out, "singleton bound: {verdict} (slack {})", r.singleton.slack);
    let _ = writeln!(out, "notes:");
    for note in &r.interpretation_notes {
        let _ = writeln!(out, "  - {note}");
    }
    out
}

fn consistency(c: Consistency) -> &'static str {
    match c {
        Consistency::Match => "match",
        Consistency::Mismatch => "mismatch",
        Consistency::Undetermined => "undetermined",
    }
}

fn reading_line(r: &ReadingReport) -> String {
    let tag = if r.documented { "interpretation" } else { "diagnostic" };
    let mut line = format!("  {tag} {} (h1 {}, g2 {}):", r.name, r.h1_role, r.g2_role);
    match (r.k1, r.k2, r.nested) {
        (Some(k1), Some(k2), Some(true)) => {
            let _ = write!(
                line,
                " k1 = {k1}, k2 = {k2}, K = {}, d_M = {} [C1 {}, C2⊥ {}], d_H = {} [C1 {}, C2⊥ {}]",
                r.k.unwrap_or(0),
                dist(r.d_m),
                dist(r.c1_m),
                dist(r.c2_dual_m),
                dist(r.d_h),
                dist(r.c1_h),
                dist(r.c2_dual_h)
            );
            if r.reproduces_nk {
                let _ = write!(line, "; HM {}, MM {}", consistency(r.hm), consistency(r.mm));
            } else {
                line.push_str("; [[n, K]] differs");
            }
        }
        _ => {
            if let Some(k1) = r.k1 {
                let _ = write!(line, " k1 = {k1}, d_M(C1) = {}, d_H(C1) = {};", dist(r.c1_m), dist(r.c1_h));
            }
            if let Some(k2) = r.k2 {
                let _ = write!(line, " k2 = {k2};");
            }
            let _ = write!(line, " {}", r.notes.join("; "));
        }
    }
    line
}

pub fn table(r: &TableReport) -> String {
    let mut out = String::new();
    for row in &r.rows {
        let p = if row.p_printed == row.p { row.p.to_string() } else { format!("{} (printed {})", row.p, row.p_printed) };
        let _ = writeln!(
            out,
            "row {}: p = {p}, π = {}, n = {}, HM {}, MM {} -> {}",
            row.index + 1,
            row.pi,
            row.n,
            row.hm,
            row.mm,
            row.status
        );
        let _ = writeln!(out, "  h1 = {}   g2 = {}", poly_text(row.pi, &row.h1), poly_text(row.pi, &row.g2));
        let _ = writeln!(
            out,
            "  α1 = {} (printed {}), α2 = {} (printed {})",
            row.alpha1, row.alpha1_printed, row.alpha2, row.alpha2_printed
        );
        for reading in &row.readings {
            let _ = writeln!(out, "{}", reading_line(reading));
        }
        for note in &row.notes {
            let _ = writeln!(out, "  note: {note}");
        }
    }
    out
}

pub fn simulate(r: &SimulateReport) -> String {
    let t = &r.transcript;
    let mut out = String::new();
    let mode = match t.mode {
        gauss_css::ProtocolMode::Full => "full",
        gauss_css::ProtocolMode::SyndromeOnly => "syndrome-only",
    };
    let _ = writeln!(out, "protocol ({mode}) on n = {}, K = {}; radii t1 = {}, t2 = {}", r.n, r.k, t.t1, t.t2);
    let _ = writeln!(out, "x  = {}", list(&r.x));
    let _ = writeln!(out, "e1 = {}", list(&r.e1));
    let _ = writeln!(out, "e2 = {}", list(&r.e2));
    let _ = writeln!(out, "bit syndrome:   {}", list(&t.bit_syndrome));
    let _ = writeln!(out, "phase syndrome: {}", list(&t.phase_syndrome));
    let show = |v: &Option<Vec<GaussInt>>| v.as_deref().map_or_else(|| "-".to_string(), list);
    let _ = writeln!(out, "recovered e1: {}", show(&t.recovered_e1));
    let _ = writeln!(out, "recovered e2: {}", show(&t.recovered_e2));
    if let Some(f) = t.fidelity {
        let _ = writeln!(out, "fidelity: {f:.12}");
    }
    let _ = writeln!(out, "within capacity: {}", t.within_capacity);
    let _ = writeln!(out, "corrected: {}", t.corrected);
    for note in &t.notes {
        let _ = writeln!(out, "note: {note}");
    }
    out
}
