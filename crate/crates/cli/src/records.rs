//! Per-point records for the scans and their CSV form.

use std::io::Write;

use anyhow::Result;
use serde::Serialize;

use chtri::criteria::{
    alpha_from_sin2_half, alpha_from_u, f_a, f_b, sup_f_a, Decision, Region, RegionTag, RegionVerdict,
};
use chtri::heisenberg::{shimizu_test, ShimizuBranch};
use chtri::{classify_trace, IsometryTag, TriangleParams};

pub fn region_name(r: Region) -> String {
    match r {
        Region::TypeA { k } => format!("type-a({k})"),
        Region::TypeB => "type-b".to_string(),
        Region::IdealTypeB => "ideal-type-b".to_string(),
    }
}

pub fn tag_name(t: &RegionTag) -> String {
    match *t {
        RegionTag::Interior { region } => region_name(region),
        RegionTag::Boundary { left, right } => format!("boundary({}|{})", region_name(left), region_name(right)),
    }
}

/// Angles in `[0, pi]` at which the criteria switch, for fixed `(r1, r2)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Thresholds {
    /// Conditions (*) hold for `alpha >= alpha_star`.
    pub alpha_star: Option<f64>,
    /// `sin(alpha/2) >= 1/(r1 + r2)` for `alpha >= alpha_sine`.
    pub alpha_sine: Option<f64>,
    /// `Re trace(w_B) <= -5` for `alpha >= alpha_wb`; type B regions only.
    pub alpha_wb: Option<f64>,
    /// `w_A^(k)` is non-elliptic for `alpha >= alpha_type_a`; type A only.
    pub alpha_type_a: Option<f64>,
    /// The Shimizu test fires for `alpha < alpha_shimizu`.
    pub alpha_shimizu: Option<f64>,
}

fn alpha_for_u(need: f64, r1: f64, r2: f64) -> Option<f64> {
    if need <= 0.0 {
        Some(0.0)
    } else if need > 4.0 * r1 * r2 {
        None
    } else {
        Some(alpha_from_u(need, r1, r2))
    }
}

pub fn thresholds(r1: f64, r2: f64, region: &RegionVerdict) -> Thresholds {
    let (r1, r2) = if r1 < r2 { (r2, r1) } else { (r1, r2) };
    let alpha_star = alpha_for_u(sup_f_a(r1, r2).value.max(f_b(r1, r2)), r1, r2);
    let alpha_sine = Some(2.0 * (1.0 / (r1 + r2)).min(1.0).asin());
    let alpha_wb = region.tag.is_type_b_like().then(|| {
        let c = (r1 * r1 + r2 * r2 - 1.0) / (2.0 * r1 * r2);
        if c >= 1.0 {
            Some(0.0)
        } else if c < -1.0 {
            None
        } else {
            Some(c.acos())
        }
    });
    let alpha_type_a = region
        .k
        .filter(|_| region.point.defined)
        .and_then(|k| alpha_for_u(f_a(k as i64, r1, r2).expect("k >= 1"), r1, r2));
    let sh = shimizu_test(&TriangleParams::new(r1, r2, 1.0).expect("radii >= 1"));
    let x_thr = match sh.branch {
        ShimizuBranch::RealRoots => (sh.b - sh.discriminant.sqrt()).min(sh.d),
        ShimizuBranch::NoRealRoots => sh.d,
    };
    let alpha_shimizu = (x_thr > 0.0).then(|| alpha_from_sin2_half(x_thr / (64.0 * r1 * r2)));
    Thresholds {
        alpha_star,
        alpha_sine,
        alpha_wb: alpha_wb.flatten(),
        alpha_type_a,
        alpha_shimizu,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanRecord {
    pub i: usize,
    pub j: usize,
    /// Grid coordinates: `(X, Y)` or `(r1, r2)`.
    pub x: f64,
    pub y: f64,
    pub r1: f64,
    pub r2: f64,
    pub region_label: String,
    pub region: RegionVerdict,
    pub thresholds: Thresholds,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AlphaRecord {
    pub index: usize,
    pub alpha: f64,
    pub sin_half: f64,
    pub verdict: String,
    pub label: String,
    pub conflict: bool,
    pub conditions_star: bool,
    pub star_margin: f64,
    pub simple_sine: bool,
    pub shimizu: bool,
    pub witnesses: usize,
    pub first_witness: Option<String>,
    pub trace_wb_re: f64,
    pub trace_wb_im: f64,
    pub wb_class: IsometryTag,
    pub trace_wa_k: Option<f64>,
}

impl AlphaRecord {
    pub fn from_decision(index: usize, d: &Decision) -> Self {
        AlphaRecord {
            index,
            alpha: d.params.alpha,
            sin_half: (d.params.alpha / 2.0).sin(),
            verdict: d.verdict.as_str().to_string(),
            label: d.label(),
            conflict: d.conflict,
            conditions_star: d.star.holds,
            star_margin: d.star.margin(),
            simple_sine: d.evidence.iter().any(|e| e.criterion == "simple-sine" && e.holds),
            shimizu: d.evidence.iter().any(|e| e.criterion == "shimizu" && e.holds),
            witnesses: d.witnesses.len(),
            first_witness: d.witnesses.first().map(|w| w.word.to_string()),
            trace_wb_re: d.trace_wb.re,
            trace_wb_im: d.trace_wb.im,
            wb_class: classify_trace(d.trace_wb).tag,
            trace_wa_k: d.trace_wa_k,
        }
    }
}

/// 17 significant digits.
pub fn fmt_f64(v: f64) -> String {
    format!("{v:.16e}")
}

fn fmt_opt(v: Option<f64>) -> String {
    v.map(fmt_f64).unwrap_or_default()
}

fn tag_kebab(t: IsometryTag) -> &'static str {
    match t {
        IsometryTag::RegularElliptic => "regular-elliptic",
        IsometryTag::Loxodromic => "loxodromic",
        IsometryTag::Boundary => "boundary",
    }
}

pub const SCAN_HEADER: [&str; 16] = [
    "i",
    "j",
    "x",
    "y",
    "r1",
    "r2",
    "region",
    "k",
    "interior",
    "all_alpha_discrete",
    "phi_k_satisfied",
    "alpha_star",
    "alpha_sine",
    "alpha_wb",
    "alpha_type_a",
    "alpha_shimizu",
];

pub fn write_scan_csv(out: impl Write, records: &[ScanRecord]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(SCAN_HEADER)?;
    for r in records {
        let t = &r.thresholds;
        w.write_record([
            r.i.to_string(),
            r.j.to_string(),
            fmt_f64(r.x),
            fmt_f64(r.y),
            fmt_f64(r.r1),
            fmt_f64(r.r2),
            r.region_label.clone(),
            r.region.k.map(|k| k.to_string()).unwrap_or_default(),
            r.region.tag.is_interior().to_string(),
            r.region.all_alpha_discrete.to_string(),
            r.region.phi_k_satisfied.to_string(),
            fmt_opt(t.alpha_star),
            fmt_opt(t.alpha_sine),
            fmt_opt(t.alpha_wb),
            fmt_opt(t.alpha_type_a),
            fmt_opt(t.alpha_shimizu),
        ])?;
    }
    w.flush()?;
    Ok(())
}

pub const ALPHA_HEADER: [&str; 16] = [
    "index",
    "alpha",
    "sin_half",
    "verdict",
    "label",
    "conflict",
    "conditions_star",
    "star_margin",
    "simple_sine",
    "shimizu",
    "witnesses",
    "first_witness",
    "trace_wb_re",
    "trace_wb_im",
    "wb_class",
    "trace_wa_k",
];

pub fn write_alpha_csv(out: impl Write, records: &[AlphaRecord]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(ALPHA_HEADER)?;
    for r in records {
        w.write_record([
            r.index.to_string(),
            fmt_f64(r.alpha),
            fmt_f64(r.sin_half),
            r.verdict.clone(),
            r.label.clone(),
            r.conflict.to_string(),
            r.conditions_star.to_string(),
            fmt_f64(r.star_margin),
            r.simple_sine.to_string(),
            r.shimizu.to_string(),
            r.witnesses.to_string(),
            r.first_witness.clone().unwrap_or_default(),
            fmt_f64(r.trace_wb_re),
            fmt_f64(r.trace_wb_im),
            tag_kebab(r.wb_class).to_string(),
            fmt_opt(r.trace_wa_k),
        ])?;
    }
    w.flush()?;
    Ok(())
}
