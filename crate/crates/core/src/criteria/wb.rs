//! Where `w_B = I1 I2 I3` is elliptic.
//!
//! `trace(w_B)` runs over the circle of centre `-(4 r1^2 + 4 r2^2 + 1)` and
//! radius `8 r1 r2`. It meets the deltoid `2e^{i phi} + e^{-2i phi}` exactly
//! when `X = cos(phi)` is a root of
//! `Q(X) = 4X^3 + X^2 - 2X + 1 + 4(r1^2 + r2^2) X (1 + X) + 4(r1^2 - r2^2)^2`.
//! `Q` is positive at both ends of `[-1, 1]` and its only critical point
//! there is the minimum at `X = -1/2`.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::hermitian::{classify_trace, IsometryTag};
use crate::triangle::TriangleParams;

use super::trace_wb;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum WbTag {
    NeverElliptic,
    /// Two crossings `alpha1 <= alpha2` in `(0, pi)`.
    Window { alpha1: f64, alpha2: f64 },
    /// Equal radii: one crossing besides `alpha = 0`.
    IsoscelesThreshold { alpha0: f64 },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WbEllipticity {
    pub tag: WbTag,
    /// Roots of `Q` in `[-1, 1]`, ascending.
    pub q_roots: Vec<f64>,
    /// `max |Q(root)|`.
    pub q_residual: f64,
    /// Subintervals of `(0, pi]` on which `w_B` is regular elliptic, found by
    /// testing the midpoint between consecutive crossings. The set is
    /// symmetric under `alpha -> 2 pi - alpha`.
    pub elliptic_intervals: Vec<(f64, f64)>,
    /// Whether the elliptic set has the claimed shape: inside
    /// the window, or beyond `alpha0` in the isosceles case.
    pub claimed_shape_holds: bool,
    /// Whether a 720-point sweep of `alpha` agrees with `elliptic_intervals`.
    pub sweep_agrees: bool,
}

impl WbEllipticity {
    /// Whether `alpha` (any real) lies in the elliptic set.
    pub fn contains(&self, alpha: f64) -> bool {
        let a = fold(alpha);
        self.elliptic_intervals.iter().any(|&(lo, hi)| a > lo && a < hi)
    }
}

/// `alpha` reduced to `[0, pi]` by `alpha -> 2 pi - alpha`.
fn fold(alpha: f64) -> f64 {
    let a = alpha.rem_euclid(TAU);
    if a > PI {
        TAU - a
    } else {
        a
    }
}

pub fn q_poly(x: f64, r1: f64, r2: f64) -> f64 {
    let s = r1 * r1 + r2 * r2;
    let d = r1 * r1 - r2 * r2;
    ((4.0 * x + 1.0) * x - 2.0) * x + 1.0 + 4.0 * s * x * (1.0 + x) + 4.0 * d * d
}

/// `7 - 4(r1^2 + r2^2) + 16(r1^2 - r2^2)^2 = 4 Q(-1/2)`; positive means `w_B`
/// is never elliptic.
pub fn wb_never_elliptic_margin(r1: f64, r2: f64) -> f64 {
    let d = r1 * r1 - r2 * r2;
    7.0 - 4.0 * (r1 * r1 + r2 * r2) + 16.0 * d * d
}

/// `sin^2(alpha0 / 2)` for `r1 = r2 = r`:
/// `(2r^2 - 2) / (r^2 (64r^4 - 80r^2 + 13 + (8r^2 - 7)^{3/2} (8r^2 + 1)^{1/2}))`.
/// At `r = 1` both numerator and denominator vanish; the limit is `3/128`.
pub fn isosceles_wb_threshold(r: f64) -> f64 {
    let q = r * r;
    if (q - 1.0).abs() < 1e-7 {
        return 3.0 / 128.0;
    }
    let den = q * (64.0 * q * q - 80.0 * q + 13.0 + (8.0 * q - 7.0).powf(1.5) * (8.0 * q + 1.0).sqrt());
    (2.0 * q - 2.0) / den
}

/// Bisection for a sign change of `f` on `[lo, hi]`, `f(lo) >= 0 >= f(hi)` or
/// the reverse.
fn bisect(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    let lo_sign = f(lo) >= 0.0;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if (f(mid) >= 0.0) == lo_sign {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// `alpha` in `[0, pi]` where the circle meets the deltoid at `cos(phi) = x`.
fn alpha_of_root(x: f64, r1: f64, r2: f64) -> f64 {
    let phi = x.clamp(-1.0, 1.0).acos();
    let centre = 4.0 * r1 * r1 + 4.0 * r2 * r2 + 1.0;
    let e = (2.0 * Complex64::from_polar(1.0, phi) + Complex64::from_polar(1.0, -2.0 * phi) + centre)
        / (8.0 * r1 * r2);
    e.arg().abs()
}

fn elliptic_at(r1: f64, r2: f64, alpha: f64) -> Option<bool> {
    let p = TriangleParams::new(r1, r2, alpha).ok()?;
    match classify_trace(trace_wb(&p)).tag {
        IsometryTag::RegularElliptic => Some(true),
        IsometryTag::Loxodromic => Some(false),
        IsometryTag::Boundary => None,
    }
}

pub fn wb_ellipticity(r1: f64, r2: f64) -> WbEllipticity {
    let (r1, r2) = if r1 < r2 { (r2, r1) } else { (r1, r2) };
    let q = |x: f64| q_poly(x, r1, r2);
    let isosceles = r1 == r2;

    let q_roots: Vec<f64> = if wb_never_elliptic_margin(r1, r2) > 0.0 {
        Vec::new()
    } else if isosceles {
        vec![-1.0, bisect(q, -0.5, 1.0)]
    } else {
        vec![bisect(q, -1.0, -0.5), bisect(q, -0.5, 1.0)]
    };
    let q_residual = q_roots.iter().map(|&x| q(x).abs()).fold(0.0, f64::max);

    let mut crossings: Vec<f64> = q_roots
        .iter()
        .map(|&x| alpha_of_root(x, r1, r2))
        .filter(|&a| a > 1e-12)
        .collect();
    crossings.sort_by(f64::total_cmp);
    crossings.dedup();

    let tag = match (isosceles, crossings.as_slice()) {
        (_, []) => WbTag::NeverElliptic,
        (true, [a0, ..]) => WbTag::IsoscelesThreshold { alpha0: *a0 },
        (false, [a]) => WbTag::Window { alpha1: *a, alpha2: *a },
        (false, [a1, .., a2]) => WbTag::Window {
            alpha1: *a1,
            alpha2: *a2,
        },
    };

    let mut breaks = vec![0.0];
    breaks.extend(crossings.iter().copied());
    breaks.push(PI);
    let mut elliptic_intervals: Vec<(f64, f64)> = Vec::new();
    for pair in breaks.windows(2) {
        let (lo, hi) = (pair[0], pair[1]);
        if hi - lo <= 0.0 {
            continue;
        }
        if elliptic_at(r1, r2, 0.5 * (lo + hi)) == Some(true) {
            match elliptic_intervals.last_mut() {
                Some(last) if last.1 == lo => last.1 = hi,
                _ => elliptic_intervals.push((lo, hi)),
            }
        }
    }

    let claimed_shape_holds = match tag {
        WbTag::NeverElliptic => elliptic_intervals.is_empty(),
        WbTag::Window { alpha1, alpha2 } => {
            alpha2 < PI / 2.0 && (alpha1 == alpha2 || elliptic_intervals == vec![(alpha1, alpha2)])
        }
        WbTag::IsoscelesThreshold { alpha0 } => alpha0 < PI / 2.0 && elliptic_intervals == vec![(alpha0, PI)],
    };

    let mut result = WbEllipticity {
        tag,
        q_roots,
        q_residual,
        elliptic_intervals,
        claimed_shape_holds,
        sweep_agrees: true,
    };
    result.sweep_agrees = (0..720).all(|j| {
        let alpha = (j as f64 + 0.5) * TAU / 720.0;
        let near = crossings.iter().any(|&c| (fold(alpha) - c).abs() < 1e-7);
        match elliptic_at(r1, r2, alpha) {
            _ if near => true,
            None => true,
            Some(e) => e == result.contains(alpha),
        }
    });
    result
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::criteria::alpha_from_sin2_half;
    use proptest::prelude::*;

    #[test]
    fn anchors() {
        for (r1, r2) in [(1.0, 1.0), (1.3, 1.2), (2.5, 1.0), (4.0, 3.0)] {
            let s: f64 = r1 * r1 + r2 * r2;
            let d: f64 = r1 * r1 - r2 * r2;
            assert!((q_poly(-1.0, r1, r2) - 4.0 * d * d).abs() < 1e-12);
            assert!((q_poly(1.0, r1, r2) - (4.0 + 8.0 * s + 4.0 * d * d)).abs() < 1e-12);
            assert!((q_poly(-0.5, r1, r2) - (1.75 - s + 4.0 * d * d)).abs() < 1e-12);
        }
    }

    #[test]
    fn isosceles_threshold_matches_roots() {
        for r in [1.0, 1.2, 1.5, 2.0, 3.0] {
            let wb = wb_ellipticity(r, r);
            let WbTag::IsoscelesThreshold { alpha0 } = wb.tag else {
                panic!("{wb:?}");
            };
            let s0 = isosceles_wb_threshold(r);
            assert!((alpha0 - alpha_from_sin2_half(s0)).abs() < 1e-9, "r={r}");
            assert!(wb.q_residual < 1e-9);
            assert!(wb.sweep_agrees);
            // elliptic below the threshold, loxodromic above
            assert_eq!(wb.elliptic_intervals, vec![(0.0, alpha0)]);
            assert!(!wb.claimed_shape_holds);
        }
    }

    #[test]
    fn window_for_close_radii() {
        let wb = wb_ellipticity(1.3, 1.2);
        let WbTag::Window { alpha1, alpha2 } = wb.tag else {
            panic!("{wb:?}");
        };
        assert!(0.0 < alpha1 && alpha1 < alpha2 && alpha2 < PI / 2.0);
        assert_eq!(wb.elliptic_intervals, vec![(alpha1, alpha2)]);
        assert!(wb.claimed_shape_holds && wb.sweep_agrees);
        assert!(wb.contains(0.5 * (alpha1 + alpha2)));
        assert!(wb.contains(TAU - 0.5 * (alpha1 + alpha2)));
        assert!(!wb.contains(alpha2 + 0.1));
    }

    #[test]
    fn never_elliptic_far_apart() {
        let wb = wb_ellipticity(3.0, 1.0);
        assert!(wb_never_elliptic_margin(3.0, 1.0) > 0.0);
        assert_eq!(wb.tag, WbTag::NeverElliptic);
        assert!(wb.elliptic_intervals.is_empty() && wb.sweep_agrees);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn roots_are_roots_and_sweep_agrees(r1 in 1.0f64..4.0, t in 0.0f64..1.0) {
            let r2 = 1.0 + t * (r1 - 1.0);
            let wb = wb_ellipticity(r1, r2);
            prop_assert!(wb.q_residual < 1e-9);
            prop_assert!(wb.sweep_agrees, "{:?}", wb);
            if wb_never_elliptic_margin(r1, r2) > 0.0 {
                prop_assert!(wb.elliptic_intervals.is_empty());
            }
        }
    }
}
