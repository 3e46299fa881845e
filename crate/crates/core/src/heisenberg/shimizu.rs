//! Shimizu-type non-discreteness test for the pair `g = I2 I1`, `h = I3`.
//!
//! `g` is a Heisenberg translation by `(xi, v)` and `h` has a unit isometric
//! sphere centred at the origin. If `sqrt(|xi|^4 + v^2) + 4|xi|^2 < 1` the
//! group cannot be discrete.
//!
//! With `X = 64 r1 r2 sin^2(alpha/2)`, `delta = r1 - r2`, `S = r1^2 + r2^2`
//! the inequality reads `X^2 - 2bX + c > 0` together with `X < d`, where
//! `d = 1 - 16 delta^2`, `b = d + S`, `c = d^2 - 16 delta^4`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{isometric_sphere_radius, translation_parts};
use crate::triangle::{build_rep_from, TriangleParams};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ShimizuBranch {
    /// `b^2 - c >= 0`: compare `X` with the smaller root `b - sqrt(b^2 - c)`.
    RealRoots,
    /// `b^2 - c < 0`: the quadratic has no real root, only `X < d` matters.
    NoRealRoots,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ShimizuVerdict {
    NonDiscrete,
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ShimizuReport {
    pub xi: Complex64,
    pub v: f64,
    /// Squared isometric sphere radius of `I3`.
    pub lhs: f64,
    /// `sqrt(|xi|^4 + v^2) + 4|xi|^2` from the matrix of `I2 I1`.
    pub rhs: f64,
    /// The same quantity from its closed form in `r1, r2, alpha`.
    pub rhs_closed: f64,
    pub branch: ShimizuBranch,
    /// `b^2 - c = 34 r1^2 r2^2 - 15 r1^4 - 15 r2^4 + 2 r1^2 + 2 r2^2`.
    pub discriminant: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
    /// `64 r1 r2 sin^2(alpha/2)`.
    pub x: f64,
    /// Branch inequality as printed, without the `X < d` guard.
    pub branch_only: bool,
    /// Branch inequality together with `X < d`.
    pub closed_form: bool,
    /// `rhs < lhs`.
    pub direct: bool,
    pub verdict: ShimizuVerdict,
}

impl ShimizuReport {
    /// `d^2 - 2bd + c`.
    pub fn sign_quantity(&self) -> f64 {
        self.d * self.d - 2.0 * self.b * self.d + self.c
    }
}

pub fn shimizu_test(params: &TriangleParams) -> ShimizuReport {
    let TriangleParams { r1, r2, .. } = *params;
    let s = params.sin2_half();
    let delta = r1 - r2;
    let delta2 = delta * delta;
    let sum = r1 * r1 + r2 * r2;
    let x = 64.0 * r1 * r2 * s;
    let d = 1.0 - 16.0 * delta2;
    let b = d + sum;
    let c = d * d - 16.0 * delta2 * delta2;
    let discriminant = 34.0 * r1 * r1 * r2 * r2 - 15.0 * r1.powi(4) - 15.0 * r2.powi(4)
        + 2.0 * r1 * r1
        + 2.0 * r2 * r2;
    let (branch, branch_only) = if discriminant >= 0.0 {
        (ShimizuBranch::RealRoots, x < b - discriminant.sqrt())
    } else {
        (ShimizuBranch::NoRealRoots, x < d)
    };
    let closed_form = branch_only && x < d;

    // the parameters are validated, so the construction cannot fail
    let rep = build_rep_from(*params).expect("validated parameters");
    let g = rep.i2.compose(&rep.i1);
    let (xi, v) = translation_parts(&g);
    let lhs = isometric_sphere_radius(&rep.i3).map(|r| r * r).unwrap_or(f64::INFINITY);
    let xi2 = xi.norm_sqr();
    let rhs = (xi2 * xi2 + v * v).sqrt() + 4.0 * xi2;
    let rhs_closed = (16.0 * delta2 * delta2 + 2.0 * sum * x).sqrt() + 16.0 * delta2 + x;
    let direct = rhs < lhs;

    ShimizuReport {
        xi,
        v,
        lhs,
        rhs,
        rhs_closed,
        branch,
        discriminant,
        b,
        c,
        d,
        x,
        branch_only,
        closed_form,
        direct,
        verdict: if closed_form {
            ShimizuVerdict::NonDiscrete
        } else {
            ShimizuVerdict::Inconclusive
        },
    }
}

/// The largest `sin^2(alpha/2)` at `r1 = r2 = r` for which the test fires:
/// `(2r^2 + 1 - 2r sqrt(r^2 + 1)) / (64 r^2)`.
pub fn isosceles_shimizu_threshold(r: f64) -> f64 {
    (2.0 * r * r + 1.0 - 2.0 * r * (r * r + 1.0).sqrt()) / (64.0 * r * r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::f64::consts::{PI, TAU};

    fn alpha_for_sin2(s: f64) -> f64 {
        2.0 * s.sqrt().asin()
    }

    #[test]
    fn isosceles_unit_threshold() {
        let t = isosceles_shimizu_threshold(1.0);
        assert!((t - (3.0 - 2.0 * 2f64.sqrt()) / 64.0).abs() < 1e-17);
        let p = TriangleParams::new(1.0, 1.0, alpha_for_sin2(0.9 * t)).unwrap();
        let r = shimizu_test(&p);
        assert_eq!(r.verdict, ShimizuVerdict::NonDiscrete);
        assert!(r.direct);
        let p = TriangleParams::new(1.0, 1.0, alpha_for_sin2(1.1 * t)).unwrap();
        assert_eq!(shimizu_test(&p).verdict, ShimizuVerdict::Inconclusive);
    }

    #[test]
    fn ideal_at_pi_is_inconclusive() {
        let r = shimizu_test(&TriangleParams::new(1.0, 1.0, PI).unwrap());
        assert_eq!(r.verdict, ShimizuVerdict::Inconclusive);
        assert!((r.xi.norm_sqr() - 16.0).abs() < 1e-12);
        assert!(r.rhs > 64.0);
        assert!((r.lhs - 1.0).abs() < 1e-15);
    }

    #[test]
    fn branch_follows_discriminant_sign() {
        // isosceles: 34 r^4 - 30 r^4 + 4 r^2 > 0
        let r = shimizu_test(&TriangleParams::new(1.2, 1.2, 0.5).unwrap());
        assert_eq!(r.branch, ShimizuBranch::RealRoots);
        // far apart radii: -15 r1^4 dominates
        let r = shimizu_test(&TriangleParams::new(4.0, 1.0, 0.5).unwrap());
        assert!(r.discriminant < 0.0);
        assert_eq!(r.branch, ShimizuBranch::NoRealRoots);
    }

    #[test]
    fn discriminant_matches_b2_minus_c() {
        for (r1, r2) in [(1.0, 1.0), (1.3, 1.1), (2.5, 1.0), (4.0, 3.9)] {
            let r = shimizu_test(&TriangleParams::new(r1, r2, 1.0).unwrap());
            assert!((r.b * r.b - r.c - r.discriminant).abs() < 1e-10 * r.b.abs().max(1.0).powi(2));
        }
    }

    #[test]
    fn unguarded_bullet_can_overclaim() {
        let r = shimizu_test(&TriangleParams::new(1.316, 1.0, 0.01).unwrap());
        assert!(r.d < 0.0);
        assert!(r.branch_only);
        assert!(!r.direct);
        assert_eq!(r.verdict, ShimizuVerdict::Inconclusive);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn closed_form_agrees_with_direct(r1 in 1.0f64..1.6, t in 0.0f64..1.0, alpha in 1e-4f64..(TAU - 1e-4)) {
            let r2 = 1.0 + t * (r1 - 1.0);
            let rep = shimizu_test(&TriangleParams::new(r1, r2, alpha).unwrap());
            prop_assert!((rep.rhs - rep.rhs_closed).abs() < 1e-10 * rep.rhs.max(1.0));
            // avoid the measure-zero boundary
            if (rep.rhs - 1.0).abs() > 1e-9 {
                prop_assert_eq!(rep.closed_form, rep.direct);
            }
            let identity = -2.0 * rep.d * (r1 * r1 + r2 * r2) - 16.0 * (r1 - r2).powi(4);
            prop_assert!((rep.sign_quantity() - identity).abs() < 1e-9 * rep.b.abs().max(1.0).powi(2));
            if rep.d > 0.0 {
                prop_assert!(rep.sign_quantity() < 0.0);
            }
        }
    }
}
