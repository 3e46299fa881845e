//! Closed-form discreteness, non-discreteness and ellipticity criteria.
//!
//! Everything here is a function of `(r1, r2)` and, where it matters,
//! `u = 4 r1 r2 sin^2(alpha / 2)`. Conditions (*) ask for `u >= f_B` and
//! `u >= f_A(l)` for every integer `l` outside `{-1, 0}`.

mod decide;
mod region;
mod wb;
mod window;

pub use decide::{decide, DecideOptions, Decision, Evidence, Verdict};
pub use region::{
    all_alpha_discrete, classify_region, phi_k, phi_k_satisfied, region_point, type_a_threshold, Region, RegionPoint, RegionTag,
    RegionVerdict,
};
pub use wb::{isosceles_wb_threshold, q_poly, wb_ellipticity, wb_never_elliptic_margin, WbEllipticity, WbTag};
pub use window::{wak_elliptic_window, WakWindow};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tolerance;
use crate::triangle::TriangleParams;

/// Largest scan half-width used by [`sup_f_a`].
pub const MAX_SCAN_WINDOW: i64 = 1_000_000;

fn check_ell(ell: i64) -> Result<()> {
    if ell == 0 || ell == -1 {
        return Err(Error::ParameterOutOfRange {
            name: "ell",
            value: ell as f64,
            bound: "integer outside {-1, 0}",
        });
    }
    Ok(())
}

/// `f_A(l) = (1 - (l r1 - (l + 1) r2)^2) / (l (l + 1))`.
pub fn f_a(ell: i64, r1: f64, r2: f64) -> Result<f64> {
    check_ell(ell)?;
    let l = ell as f64;
    let m = l * r1 - (l + 1.0) * r2;
    Ok((1.0 - m * m) / (l * (l + 1.0)))
}

/// `f_A(l)` as `(r1^2 - 1)/(l + 1) - (r2^2 - 1)/l - (r1 - r2)^2`.
pub fn f_a_rearranged(ell: i64, r1: f64, r2: f64) -> Result<f64> {
    check_ell(ell)?;
    let l = ell as f64;
    Ok((r1 * r1 - 1.0) / (l + 1.0) - (r2 * r2 - 1.0) / l - (r1 - r2).powi(2))
}

/// `f_B = 1 - (r1 - r2)^2`.
pub fn f_b(r1: f64, r2: f64) -> f64 {
    1.0 - (r1 - r2).powi(2)
}

/// Scan half-width `L` beyond which `f_A` is nonpositive, and whether it hit
/// [`MAX_SCAN_WINDOW`].
pub fn scan_window(r1: f64, r2: f64) -> (i64, bool) {
    let spread = (r1 * r1 + r2 * r2 - 2.0).max(0.0);
    let gap = (r1 - r2).powi(2).max(1e-8);
    let raw = 2.0 + (spread / gap).ceil();
    if raw >= MAX_SCAN_WINDOW as f64 {
        (MAX_SCAN_WINDOW, true)
    } else {
        (raw as i64, false)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SupFa {
    pub value: f64,
    pub argmax: i64,
    pub window: i64,
    pub saturated: bool,
}

/// Supremum of `f_A` over the integers outside `{-1, 0}`.
///
/// For `r1 = r2 = r` every value is `-(r^2 - 1)/(l(l+1)) <= 0` and the
/// supremum `0` is approached as `|l|` grows; `argmax` is then the best index
/// of the short window `[-2, 2]`.
pub fn sup_f_a(r1: f64, r2: f64) -> SupFa {
    let (window, saturated) = if r1 == r2 { (2, false) } else { scan_window(r1, r2) };
    let mut best = (f64::NEG_INFINITY, 1);
    for ell in (-window..=window).filter(|&l| l != 0 && l != -1) {
        let v = f_a(ell, r1, r2).expect("index filtered");
        if v > best.0 {
            best = (v, ell);
        }
    }
    let value = if r1 == r2 { 0.0 } else { best.0 };
    SupFa {
        value,
        argmax: best.1,
        window,
        saturated,
    }
}

/// Result of testing conditions (*).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StarCheck {
    /// `4 r1 r2 sin^2(alpha / 2)`.
    pub lhs: f64,
    pub sup_fa: f64,
    pub argmax_l: i64,
    pub f_b: f64,
    pub holds: bool,
    pub scan_window: i64,
    pub saturated: bool,
}

impl StarCheck {
    /// `lhs - max(sup_fa, f_b)`; nonnegative when the conditions hold.
    pub fn margin(&self) -> f64 {
        self.lhs - self.sup_fa.max(self.f_b)
    }
}

pub fn conditions_star(p: &TriangleParams) -> StarCheck {
    let sup = sup_f_a(p.r1, p.r2);
    let lhs = 4.0 * p.r1 * p.r2 * p.sin2_half();
    let fb = f_b(p.r1, p.r2);
    let holds = lhs >= sup.value.max(fb) - tolerance::get().star;
    let check = StarCheck {
        lhs,
        sup_fa: sup.value,
        argmax_l: sup.argmax,
        f_b: fb,
        holds,
        scan_window: sup.window,
        saturated: sup.saturated,
    };
    #[cfg(debug_assertions)]
    if check.margin().abs() > 1e-9 && sup.window <= 10_000 {
        debug_assert_eq!(holds, star_direct(p, sup.window), "conditions (*) disagree at {p:?}");
    }
    check
}

/// `a(l) = |r2 e^{i theta} + l (r2 e^{i theta} + r1 e^{-i theta})|`.
pub fn a_ell(ell: i64, p: &TriangleParams) -> f64 {
    let e = Complex64::from_polar(1.0, p.theta);
    let base = p.r2 * e;
    (base + ell as f64 * (base + p.r1 * e.conj())).norm()
}

/// `b = |r2 e^{i theta} + r1 e^{-i theta}|`.
pub fn b_coef(p: &TriangleParams) -> f64 {
    let e = Complex64::from_polar(1.0, p.theta);
    (p.r2 * e + p.r1 * e.conj()).norm()
}

/// Conditions (*) in their original form: `b >= 1` and `a(l) >= 1` for
/// `l` in `[-window, window]` outside `{-1, 0}`.
pub fn star_direct(p: &TriangleParams, window: i64) -> bool {
    b_coef(p) >= 1.0
        && (-window..=window)
            .filter(|&l| l != 0 && l != -1)
            .all(|l| a_ell(l, p) >= 1.0)
}

/// `sin(alpha / 2) >= 1 / (r1 + r2)`.
pub fn simple_sine_test(p: &TriangleParams) -> bool {
    (p.alpha / 2.0).sin() >= 1.0 / (p.r1 + p.r2)
}

/// Closed-form trace of `I1 (I2 I1)^l I3`.
pub fn trace_wa(ell: i64, p: &TriangleParams) -> f64 {
    let l = ell as f64;
    let m = l * p.r1 - (l + 1.0) * p.r2;
    4.0 * m * m - 1.0 + 16.0 * l * (l + 1.0) * p.r1 * p.r2 * p.sin2_half()
}

/// Closed-form trace of `I1 I2 I3`.
pub fn trace_wb(p: &TriangleParams) -> Complex64 {
    let centre = -(4.0 * p.r1 * p.r1 + 4.0 * p.r2 * p.r2 + 1.0);
    centre + 8.0 * p.r1 * p.r2 * Complex64::from_polar(1.0, p.alpha)
}

/// A violation of the ordering of `f_A` values for the hypotheses in force at
/// `(r1, r2)`, searched over `l1, l2` in `[-range, range]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OrderingViolation {
    pub k: i64,
    pub l1: i64,
    pub l2: i64,
    pub deficit: f64,
}

/// Which of the two ordering hypotheses hold for `k`: `r1^2 - 1 >= (k+2)/k (r2^2 - 1)`
/// (any `k >= 1`) and `r1^2 - 1 <= (k+1)/(k-1) (r2^2 - 1)` (`k >= 2`).
pub fn ordering_hypotheses(r1: f64, r2: f64, k: i64) -> (bool, bool) {
    let (a, b) = (r1 * r1 - 1.0, r2 * r2 - 1.0);
    let kf = k as f64;
    let lower = k >= 1 && a >= (kf + 2.0) / kf * b;
    let upper = k >= 2 && a <= (kf + 1.0) / (kf - 1.0) * b;
    (lower, upper)
}

/// Brute-force search for a counterexample to the orderings of `f_A`:
/// under the first hypothesis `f_A(l1) >= f_A(l2)` whenever `k <= l1 < l2`
/// or `l2 <= -2, l1 >= k/2`; under the second, whenever `1 <= l2 < l1 <= k`.
pub fn ordering_counterexample(r1: f64, r2: f64, k: i64, range: i64) -> Option<OrderingViolation> {
    let (lower, upper) = ordering_hypotheses(r1, r2, k);
    let values: Vec<(i64, f64)> = (-range..=range)
        .filter(|&l| l != 0 && l != -1)
        .map(|l| (l, f_a(l, r1, r2).expect("index filtered")))
        .collect();
    let slack = |x: f64, y: f64| 1e-12 * x.abs().max(y.abs()).max(1.0);
    for &(l1, v1) in &values {
        for &(l2, v2) in &values {
            let claimed = (lower && ((k <= l1 && l1 < l2) || (l2 <= -2 && 2 * l1 >= k)))
                || (upper && 1 <= l2 && l2 < l1 && l1 <= k);
            if claimed && v1 < v2 - slack(v1, v2) {
                return Some(OrderingViolation {
                    k,
                    l1,
                    l2,
                    deficit: v2 - v1,
                });
            }
        }
    }
    None
}

/// `sin(alpha/2)` below which the ideal triangle group is known to be
/// non-discrete, and at or above which it is discrete: `sqrt(6) / 16`.
pub const IDEAL_DISCRETE_SIN_HALF: f64 = 0.153_093_108_923_948_62;

/// `alpha` in `(0, pi]` with the given `sin^2(alpha / 2)`, clamped to `[0, 1]`.
pub fn alpha_from_sin2_half(s: f64) -> f64 {
    2.0 * s.clamp(0.0, 1.0).sqrt().asin()
}

/// `alpha` in `(0, pi]` with the given `u = 4 r1 r2 sin^2(alpha / 2)`.
pub fn alpha_from_u(u: f64, r1: f64, r2: f64) -> f64 {
    alpha_from_sin2_half(u / (4.0 * r1 * r2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hermitian::{classify_trace, IsometryTag};
    use proptest::prelude::*;
    use std::f64::consts::{PI, TAU};

    fn params(r1: f64, r2: f64, alpha: f64) -> TriangleParams {
        TriangleParams::new(r1, r2, alpha).unwrap()
    }

    #[test]
    fn f_a_examples() {
        assert_eq!(f_a(1, 3.0, 2.0).unwrap(), 0.0);
        assert!(f_a(0, 3.0, 2.0).is_err());
        assert!(f_a(-1, 3.0, 2.0).is_err());
        for k in 2..=6i64 {
            let (r1, r2) = ((k + 1) as f64, k as f64);
            assert_eq!(f_b(r1, r2), 0.0);
            assert_eq!(f_a(k - 1, r1, r2).unwrap(), 0.0);
            assert_eq!(f_a(k + 1, r1, r2).unwrap(), 0.0);
            let expected = 1.0 / (k * (k + 1)) as f64;
            assert!((f_a(k, r1, r2).unwrap() - expected).abs() < 1e-15);
        }
    }

    #[test]
    fn sup_at_3_2() {
        let sup = sup_f_a(3.0, 2.0);
        assert_eq!(sup.argmax, 2);
        assert!((sup.value - 1.0 / 6.0).abs() < 1e-15);
        assert!(!sup.saturated);
        // brute-force oracle over a much wider range
        let wide = (-1000..=1000i64)
            .filter(|&l| l != 0 && l != -1)
            .map(|l| f_a(l, 3.0, 2.0).unwrap())
            .fold(f64::NEG_INFINITY, f64::max);
        assert_eq!(wide, sup.value);
    }

    #[test]
    fn sup_equal_radii_is_nonpositive() {
        for r in [1.0, 1.5, 4.0] {
            let sup = sup_f_a(r, r);
            assert_eq!(sup.value, 0.0);
            for l in (-200..=200i64).filter(|&l| l != 0 && l != -1) {
                assert!(f_a(l, r, r).unwrap() <= 0.0);
            }
        }
    }

    #[test]
    fn sup_argmax_one_when_x_at_least_two() {
        // X = (r1^2 - r2^2)/(r2^2 - 1) >= 2 and typeA(1)
        let (r1, r2) = (4.0f64, 2.0f64);
        assert!((r1 * r1 - r2 * r2) / (r2 * r2 - 1.0) >= 2.0);
        assert_eq!(sup_f_a(r1, r2).argmax, 1);
    }

    #[test]
    fn star_isosceles_threshold() {
        let r = 1.7;
        let s_above = 1.0 / (4.0 * r * r) * 1.001;
        let s_below = 1.0 / (4.0 * r * r) * 0.999;
        assert!(conditions_star(&params(r, r, alpha_from_sin2_half(s_above))).holds);
        assert!(!conditions_star(&params(r, r, alpha_from_sin2_half(s_below))).holds);
    }

    #[test]
    fn a_at_minus_one_and_zero() {
        let p = params(2.7, 1.3, 0.9);
        assert!((a_ell(-1, &p) - 2.7).abs() < 1e-14);
        assert!((a_ell(0, &p) - 1.3).abs() < 1e-14);
    }

    #[test]
    fn star_fails_below_f_a_2_at_3_2() {
        // just below f_A(2) = 1/6 on the u scale
        let u = (1.0 / 6.0) * (1.0 - 1e-6);
        let p = params(3.0, 2.0, alpha_from_sin2_half(u / 24.0));
        let star = conditions_star(&p);
        assert!(!star.holds);
        assert_eq!(star.argmax_l, 2);
        assert!(a_ell(2, &p) < 1.0);
        assert!((-50..=50).filter(|&l| l != 2 && l != 0 && l != -1).all(|l| a_ell(l, &p) >= 1.0));
    }

    #[test]
    fn simple_examples() {
        assert!(simple_sine_test(&params(1.0, 1.0, PI)));
        let r: f64 = 2.5;
        let threshold = 2.0 * (1.0 / (2.0 * r)).asin();
        assert!(simple_sine_test(&params(r, r, threshold + 1e-9)));
        assert!(!simple_sine_test(&params(r, r, threshold - 1e-9)));
        let p = params(3.0, 2.0, 2.0 * 0.21f64.asin());
        assert!(simple_sine_test(&p));
        assert!(conditions_star(&p).holds);
    }

    #[test]
    fn trace_examples() {
        for r2 in [1.0, 1.6] {
            let p = params(2.0, r2, 1.0);
            assert!((trace_wa(0, &p) - (4.0 * r2 * r2 - 1.0)).abs() < 1e-14);
        }
        let t = trace_wb(&params(1.0, 1.0, PI));
        assert!((t - Complex64::new(-17.0, 0.0)).norm() < 1e-14);
        assert_eq!(classify_trace(t).tag, IsometryTag::Loxodromic);
        let p = params(2.2, 1.9, 2.3);
        assert!((trace_wa(-1, &p) - (4.0 * p.r1 * p.r1 - 1.0)).abs() < 1e-12);
    }

    #[test]
    fn ordering_at_3_2() {
        for k in 1..=4 {
            assert_eq!(ordering_counterexample(3.0, 2.0, k, 50), None);
        }
    }

    #[test]
    fn ideal_constant() {
        assert_eq!(IDEAL_DISCRETE_SIN_HALF, 6f64.sqrt() / 16.0);
    }

    fn any_params() -> impl Strategy<Value = TriangleParams> {
        (1.0f64..5.0, 0.0f64..1.0, 1e-3f64..(TAU - 1e-3))
            .prop_map(|(r1, t, a)| params(r1, 1.0 + t * (r1 - 1.0), a))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn rearranged_form_agrees(r1 in 1.0f64..6.0, r2 in 1.0f64..6.0, ell in -40i64..40) {
            prop_assume!(ell != 0 && ell != -1);
            let a = f_a(ell, r1, r2).unwrap();
            let b = f_a_rearranged(ell, r1, r2).unwrap();
            prop_assert!((a - b).abs() < 1e-12 * (r1 * r1 + r2 * r2));
        }

        #[test]
        fn simple_implies_star(p in any_params()) {
            if simple_sine_test(&p) {
                prop_assert!(conditions_star(&p).holds);
            }
        }

        #[test]
        fn star_matches_direct(p in any_params()) {
            let star = conditions_star(&p);
            prop_assume!(star.margin().abs() > 1e-9);
            prop_assert_eq!(star.holds, star_direct(&p, star.scan_window));
        }

        #[test]
        fn trace_wa_at_least_minus_one(p in any_params(), ell in -30i64..30) {
            prop_assert!(trace_wa(ell, &p) >= -1.0 - 1e-9);
        }

        #[test]
        fn trace_wb_on_circle(p in any_params()) {
            let centre = 4.0 * p.r1 * p.r1 + 4.0 * p.r2 * p.r2 + 1.0;
            prop_assert!(((trace_wb(&p) + centre).norm() - 8.0 * p.r1 * p.r2).abs() < 1e-12 * centre);
        }

        #[test]
        fn wa_trace_at_least_three_iff_f_a(p in any_params(), ell in -20i64..20) {
            prop_assume!(ell != 0 && ell != -1);
            let lhs = 4.0 * p.r1 * p.r2 * p.sin2_half();
            let f = f_a(ell, p.r1, p.r2).unwrap();
            prop_assume!((lhs - f).abs() > 1e-9);
            prop_assert_eq!(trace_wa(ell, &p) >= 3.0, lhs >= f);
        }

        #[test]
        fn ordering_has_no_counterexample(r1 in 1.0f64..6.0, t in 0.0f64..1.0, k in 1i64..8) {
            let r2 = 1.0 + t * (r1 - 1.0);
            prop_assert_eq!(ordering_counterexample(r1, r2, k, 30), None);
        }
    }
}
