//! Region diagram in the `(X, Y)` figure plane, as data and as SVG.

use std::fmt::Write as _;

use serde::Serialize;

use chtri::criteria::{phi_k, Region, RegionTag};

use crate::records::ScanRecord;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PhiValue {
    pub k: u64,
    pub x: f64,
    pub phi: f64,
}

/// Boundary curves visible in a window of the figure plane.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Overlay {
    /// Corners `(2/k, 1/(k(k+1)))` of the broken line, `k = 1, 2, ...`.
    pub vertices: Vec<[f64; 2]>,
    /// `Phi_k(2/k) = 1/(4k(k+1))`.
    pub phi_at_vertices: Vec<PhiValue>,
    /// Broken line including the ray of slope 1/2 from `(2, 1/2)`.
    pub broken_line: Vec<[f64; 2]>,
    /// `Y = Phi_k(X)` sampled over its strip.
    pub phi_curves: Vec<Vec<[f64; 2]>>,
}

const MAX_STRIPS: u64 = 200;
const CURVE_SAMPLES: usize = 64;

pub fn overlay(xrange: (f64, f64)) -> Overlay {
    let xmax = xrange.1.max(2.0);
    let mut vertices = Vec::new();
    let mut phi_at_vertices = Vec::new();
    let mut phi_curves = Vec::new();
    for k in 1..=MAX_STRIPS {
        let kf = k as f64;
        let x = 2.0 / kf;
        let hi = if k == 1 { xmax } else { 2.0 / (kf - 1.0) };
        if hi < xrange.0 {
            break;
        }
        vertices.push([x, 1.0 / (kf * (kf + 1.0))]);
        phi_at_vertices.push(PhiValue { k, x, phi: phi_k(k, x) });
        let lo = x.max(xrange.0);
        phi_curves.push(
            (0..=CURVE_SAMPLES)
                .map(|s| {
                    let t = lo + (hi - lo) * s as f64 / CURVE_SAMPLES as f64;
                    [t, phi_k(k, t)]
                })
                .collect(),
        );
    }
    let mut broken_line: Vec<[f64; 2]> = vertices.iter().rev().copied().collect();
    broken_line.push([xmax, (xmax - 1.0) / 2.0]);
    Overlay {
        vertices,
        phi_at_vertices,
        broken_line,
        phi_curves,
    }
}

/// `(X, Y)` to `(r1, r2)`.
pub fn radii(x: f64, y: f64) -> (f64, f64) {
    let r2sq = 1.0 + 1.0 / y;
    (
        (r2sq + x / y).sqrt(),
        r2sq.sqrt(),
    )
}

const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 600.0;
const MARGIN: f64 = 50.0;
const PALETTE: [&str; 6] = ["#1b9e77", "#d95f02", "#7570b3", "#e7298a", "#66a61e", "#e6ab02"];

fn colour(tag: &RegionTag) -> &'static str {
    match tag {
        RegionTag::Boundary { .. } => "#000000",
        RegionTag::Interior {
            region: Region::TypeA { k },
        } => PALETTE[((k - 1) % PALETTE.len() as u64) as usize],
        RegionTag::Interior { .. } => "#bbbbbb",
    }
}

/// Points coloured by region with the overlay drawn on top. In `(r1, r2)`
/// mode the overlay is mapped through [`radii`].
pub fn render(records: &[ScanRecord], xrange: (f64, f64), yrange: (f64, f64), figure_plane: bool) -> String {
    let sx = |x: f64| MARGIN + (x - xrange.0) / (xrange.1 - xrange.0) * (WIDTH - 2.0 * MARGIN);
    let sy = |y: f64| HEIGHT - MARGIN - (y - yrange.0) / (yrange.1 - yrange.0) * (HEIGHT - 2.0 * MARGIN);
    let inside = |x: f64, y: f64| x >= xrange.0 && x <= xrange.1 && y >= yrange.0 && y <= yrange.1;
    let to_plot = |p: [f64; 2]| -> Option<(f64, f64)> {
        let (x, y) = if figure_plane {
            (p[0], p[1])
        } else {
            if p[1] <= 0.0 {
                return None;
            }
            radii(p[0], p[1])
        };
        inside(x, y).then_some((x, y))
    };

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
    );
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(
        s,
        r#"<rect x="{MARGIN}" y="{MARGIN}" width="{}" height="{}" fill="none" stroke="black"/>"#,
        WIDTH - 2.0 * MARGIN,
        HEIGHT - 2.0 * MARGIN
    );
    let (xl, yl) = if figure_plane { ("X", "Y") } else { ("r1", "r2") };
    let _ = writeln!(
        s,
        r#"<text x="{}" y="{}" font-size="14">{xl} [{}, {}]</text>"#,
        WIDTH / 2.0,
        HEIGHT - 15.0,
        xrange.0,
        xrange.1
    );
    let _ = writeln!(s, r#"<text x="5" y="30" font-size="14">{yl} [{}, {}]</text>"#, yrange.0, yrange.1);

    let _ = writeln!(s, r#"<g id="points">"#);
    for r in records {
        let _ = writeln!(
            s,
            r#"<circle cx="{:.2}" cy="{:.2}" r="2" fill="{}"/>"#,
            sx(r.x),
            sy(r.y),
            colour(&r.region.tag)
        );
    }
    let _ = writeln!(s, "</g>");

    let ov = overlay(if figure_plane { xrange } else { (0.0, 2.0 * xrange.1 * xrange.1) });
    let polyline = |s: &mut String, pts: &[[f64; 2]], stroke: &str, id: &str| {
        let path: Vec<String> = pts
            .iter()
            .filter_map(|&p| to_plot(p))
            .map(|(x, y)| format!("{:.2},{:.2}", sx(x), sy(y)))
            .collect();
        if path.len() >= 2 {
            let _ = writeln!(
                s,
                r#"<polyline id="{id}" points="{}" fill="none" stroke="{stroke}" stroke-width="1.5"/>"#,
                path.join(" ")
            );
        }
    };
    polyline(&mut s, &ov.broken_line, "#d62728", "broken-line");
    for (i, c) in ov.phi_curves.iter().enumerate() {
        polyline(&mut s, c, "#1f77b4", &format!("phi-{}", i + 1));
    }
    for v in &ov.vertices {
        if let Some((x, y)) = to_plot(*v) {
            let _ = writeln!(s, r##"<circle cx="{:.2}" cy="{:.2}" r="3" fill="#d62728"/>"##, sx(x), sy(y));
        }
    }
    s.push_str("</svg>\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn vertices_and_phi_values() {
        let ov = overlay((0.0, 3.0));
        assert_eq!(ov.vertices[0], [2.0, 0.5]);
        assert!((ov.vertices[1][0] - 1.0).abs() < 1e-15 && (ov.vertices[1][1] - 1.0 / 6.0).abs() < 1e-15);
        assert!((ov.vertices[2][0] - 2.0 / 3.0).abs() < 1e-15 && (ov.vertices[2][1] - 1.0 / 12.0).abs() < 1e-15);
        for p in &ov.phi_at_vertices {
            let k = p.k as f64;
            assert!((p.phi - 1.0 / (4.0 * k * (k + 1.0))).abs() < 1e-15);
        }
        // ray of slope 1/2 from (2, 1/2)
        assert_eq!(*ov.broken_line.last().unwrap(), [3.0, 1.0]);
    }

    #[test]
    fn broken_line_is_continuous_in_each_strip() {
        // inside strip k the line is Y = (X - 1/k)/(k + 1)
        let ov = overlay((0.1, 3.0));
        for k in 2..10u64 {
            let kf = k as f64;
            let line = |x: f64| (x - 1.0 / kf) / (kf + 1.0);
            let a = ov.vertices[(k - 1) as usize];
            let b = ov.vertices[(k - 2) as usize];
            assert!((line(a[0]) - a[1]).abs() < 1e-15);
            assert!((line(b[0]) - b[1]).abs() < 1e-15);
        }
    }

    #[test]
    fn radii_round_trip() {
        let (r1, r2) = radii(1.0, 1.0 / 6.0);
        assert!((r1 - 13f64.sqrt()).abs() < 1e-14 && (r2 - 7f64.sqrt()).abs() < 1e-14);
    }
}
