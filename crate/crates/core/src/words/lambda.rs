//! The planar group generated by the half-turns `J1(z) = 2 p1 - z` and
//! `J2(z) = 2 p2 - z` about `p1 = r2 e^{i theta}` and `p2 = -r1 e^{-i theta}`.
//!
//! Every element is `(J2 J1)^l` or `J1 (J2 J1)^l`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::triangle::TriangleParams;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "form", content = "ell")]
pub enum LambdaElement {
    /// `(J2 J1)^l`, a translation by `-2 l (p1 - p2)`.
    Rotation(i64),
    /// `J1 (J2 J1)^l`, a half-turn.
    Reflection(i64),
}

impl LambdaElement {
    pub fn is_identity(&self) -> bool {
        matches!(self, LambdaElement::Rotation(0))
    }
}

fn centres(p: &TriangleParams) -> (Complex64, Complex64) {
    let e = Complex64::from_polar(1.0, p.theta);
    (p.r2 * e, -p.r1 * e.conj())
}

/// `|g(0)|` from the closed forms `(J2 J1)^l(0) = -2 l (r2 e^{i theta} + r1 e^{-i theta})`
/// and `J1 (J2 J1)^l(0) = 2 r2 e^{i theta} + 2 l (r2 e^{i theta} + r1 e^{-i theta})`.
pub fn lambda_orbit_norm(e: LambdaElement, p: &TriangleParams) -> f64 {
    let (p1, p2) = centres(p);
    let step = p1 - p2;
    match e {
        LambdaElement::Rotation(l) => (-2.0 * l as f64 * step).norm(),
        LambdaElement::Reflection(l) => (2.0 * p1 + 2.0 * l as f64 * step).norm(),
    }
}

/// `g(0)` by applying the half-turns one at a time.
pub fn lambda_orbit_point(e: LambdaElement, p: &TriangleParams) -> Complex64 {
    let (p1, p2) = centres(p);
    let j1 = |z: Complex64| 2.0 * p1 - z;
    let j2 = |z: Complex64| 2.0 * p2 - z;
    let (l, reflect) = match e {
        LambdaElement::Rotation(l) => (l, false),
        LambdaElement::Reflection(l) => (l, true),
    };
    let mut z = Complex64::new(0.0, 0.0);
    // (J2 J1)^{-1} = J1 J2
    for _ in 0..l.unsigned_abs() {
        z = if l > 0 { j2(j1(z)) } else { j1(j2(z)) };
    }
    if reflect {
        z = j1(z);
    }
    z
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LambdaCheck {
    pub holds: bool,
    /// Element of the window with the smallest `|g(0)|`, identity excluded.
    pub closest: LambdaElement,
    pub min_norm: f64,
    pub window: i64,
}

/// Whether `|g(0)| >= 2` for every non-identity `g` with `|l| <= window`.
///
/// Orbit points are produced by iterating the half-turns, independently of
/// the closed forms.
pub fn lambda_condition_check(p: &TriangleParams, window: i64) -> LambdaCheck {
    let window = window.max(1);
    let (p1, p2) = centres(p);
    let j1 = |z: Complex64| 2.0 * p1 - z;
    let j2 = |z: Complex64| 2.0 * p2 - z;
    let mut best = (f64::INFINITY, LambdaElement::Reflection(0));
    let mut visit = |z: Complex64, e: LambdaElement| {
        let n = z.norm();
        if n < best.0 {
            best = (n, e);
        }
    };
    let origin = Complex64::new(0.0, 0.0);
    visit(j1(origin), LambdaElement::Reflection(0));
    let (mut fwd, mut back) = (origin, origin);
    for l in 1..=window {
        fwd = j2(j1(fwd));
        back = j1(j2(back));
        visit(fwd, LambdaElement::Rotation(l));
        visit(back, LambdaElement::Rotation(-l));
        visit(j1(fwd), LambdaElement::Reflection(l));
        visit(j1(back), LambdaElement::Reflection(-l));
    }
    LambdaCheck {
        holds: best.0 >= 2.0 - 1e-12,
        closest: best.1,
        min_norm: best.0,
        window,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::criteria::{a_ell, b_coef, conditions_star};
    use proptest::prelude::*;
    use std::f64::consts::PI;

    #[test]
    fn anchors() {
        let p = TriangleParams::new(1.0, 1.0, PI).unwrap();
        assert_eq!(lambda_orbit_norm(LambdaElement::Rotation(0), &p), 0.0);
        assert!(LambdaElement::Rotation(0).is_identity());
        assert!((lambda_orbit_norm(LambdaElement::Reflection(0), &p) - 2.0).abs() < 1e-15);
        assert!(lambda_condition_check(&p, 50).holds);

        let p = TriangleParams::new(2.5, 1.7, 0.9).unwrap();
        let b = b_coef(&p);
        let b2 = (p.r1 - p.r2).powi(2) + 4.0 * p.r1 * p.r2 * p.theta.cos().powi(2);
        assert!((b * b - b2).abs() < 1e-12);
        assert!((lambda_orbit_norm(LambdaElement::Rotation(1), &p) - 2.0 * b).abs() < 1e-12);
    }

    #[test]
    fn small_angle_fails_at_two() {
        let p = TriangleParams::new(3.0, 2.0, 2.0 * (0.001f64).asin()).unwrap();
        let c = lambda_condition_check(&p, 100);
        assert!(!c.holds);
        assert_eq!(c.closest, LambdaElement::Reflection(2));
        assert_eq!(conditions_star(&p).argmax_l, 2);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(300))]

        #[test]
        fn closed_form_matches_iteration(r1 in 1.0f64..4.0, t in 0.0f64..1.0, alpha in 0.01f64..6.27, l in -40i64..40) {
            let p = TriangleParams::new(r1, 1.0 + t * (r1 - 1.0), alpha).unwrap();
            for e in [LambdaElement::Rotation(l), LambdaElement::Reflection(l)] {
                let z = lambda_orbit_point(e, &p);
                prop_assert!((z.norm() - lambda_orbit_norm(e, &p)).abs() < 1e-10 * z.norm().max(1.0));
            }
            prop_assert!((lambda_orbit_norm(LambdaElement::Reflection(l), &p) - 2.0 * a_ell(l, &p)).abs() < 1e-10 * (l.abs() as f64 + 1.0) * r1);
            prop_assert!((lambda_orbit_norm(LambdaElement::Rotation(l), &p) - 2.0 * b_coef(&p) * l.abs() as f64).abs() < 1e-10 * (l.abs() as f64 + 1.0) * r1);
        }
    }
}
