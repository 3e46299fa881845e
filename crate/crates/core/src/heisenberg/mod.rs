//! Boundary geometry in the Heisenberg model.
//!
//! Coordinates `(zeta, v)` come from the stereographic projection
//! `[z1:z2:z3] -> (z2 / (z3 sqrt 2), Im(z1 / z3))`. The group law matching
//! the action of [`heis_translation`] is
//! `(zeta1, v1) * (zeta2, v2) = (zeta1 + zeta2, v1 + v2 + 2 Im(zeta1 conj(zeta2)))`.

mod shimizu;

pub use shimizu::{isosceles_shimizu_threshold, shimizu_test, ShimizuBranch, ShimizuReport, ShimizuVerdict};

use std::f64::consts::SQRT_2;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hermitian::{require_null, require_positive, HVector, Isometry};
use crate::tolerance;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum HeisPoint {
    Finite { zeta: Complex64, v: f64 },
    Infinity,
}

impl HeisPoint {
    pub const ORIGIN: HeisPoint = HeisPoint::Finite {
        zeta: Complex64::new(0.0, 0.0),
        v: 0.0,
    };

    pub fn finite(zeta: Complex64, v: f64) -> Self {
        HeisPoint::Finite { zeta, v }
    }

    pub fn coords(&self) -> Result<(Complex64, f64)> {
        match *self {
            HeisPoint::Finite { zeta, v } => Ok((zeta, v)),
            HeisPoint::Infinity => Err(Error::PointAtInfinity),
        }
    }

    /// Null representative `(-|zeta|^2 + i v, sqrt 2 zeta, 1)`, or `(1, 0, 0)`.
    pub fn lift(&self) -> HVector {
        match *self {
            HeisPoint::Finite { zeta, v } => HVector::new(
                Complex64::new(-zeta.norm_sqr(), v),
                SQRT_2 * zeta,
                Complex64::new(1.0, 0.0),
            ),
            HeisPoint::Infinity => HVector::real(1.0, 0.0, 0.0),
        }
    }

    /// Left multiplication by `(tau, t)` in the Heisenberg group; fixes infinity.
    pub fn translate(&self, tau: Complex64, t: f64) -> HeisPoint {
        match *self {
            HeisPoint::Finite { zeta, v } => HeisPoint::Finite {
                zeta: zeta + tau,
                v: v + t + 2.0 * (tau * zeta.conj()).im,
            },
            HeisPoint::Infinity => HeisPoint::Infinity,
        }
    }

    /// Image under an isometry, via the projective action on the lift.
    pub fn image(&self, m: &Isometry) -> Result<HeisPoint> {
        stereo_project(&m.apply(&self.lift()))
    }
}

pub fn stereo_project(p: &HVector) -> Result<HeisPoint> {
    require_null(p)?;
    let z3 = p.z(3);
    if z3.norm_sqr() <= tolerance::get().sig * p.euclid_norm_sqr() {
        return Ok(HeisPoint::Infinity);
    }
    Ok(HeisPoint::Finite {
        zeta: p.z(2) / (z3 * SQRT_2),
        v: (p.z(1) / z3).im,
    })
}

/// Cygan distance `| |z1 - z2|^2 - i(v1 - v2) - 2i Im(z1 conj z2) |^{1/2}`.
pub fn cygan_distance(p: &HeisPoint, q: &HeisPoint) -> Result<f64> {
    let (z1, v1) = p.coords()?;
    let (z2, v2) = q.coords()?;
    let w = Complex64::new((z1 - z2).norm_sqr(), -(v1 - v2) - 2.0 * (z1 * z2.conj()).im);
    Ok(w.norm().sqrt())
}

/// Heisenberg translation by `(tau, t)`, acting by left multiplication.
pub fn heis_translation(tau: Complex64, t: f64) -> Isometry {
    let one = Complex64::new(1.0, 0.0);
    let zero = Complex64::new(0.0, 0.0);
    Isometry::from_rows([
        [one, -SQRT_2 * tau.conj(), Complex64::new(-tau.norm_sqr(), t)],
        [zero, one, SQRT_2 * tau],
        [zero, zero, one],
    ])
}

/// Reads `(tau, t)` back from an upper unitriangular Heisenberg translation.
pub fn translation_parts(m: &Isometry) -> (Complex64, f64) {
    (m.entry(2, 3) / SQRT_2, m.entry(1, 3).im)
}

/// Heisenberg group product matching [`heis_translation`] composition.
pub fn heis_mul(a: (Complex64, f64), b: (Complex64, f64)) -> (Complex64, f64) {
    (a.0 + b.0, a.1 + b.1 + 2.0 * (a.0 * b.0.conj()).im)
}

/// The boundary circle of a complex geodesic.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Chain {
    /// Vertical line over `zeta0`, through infinity.
    Vertical { zeta0: Complex64 },
    Finite { zeta0: Complex64, v0: f64, radius: f64 },
}

impl Chain {
    pub fn polar(&self) -> HVector {
        polar_of_chain(self)
    }
}

/// Chain polar to a positive vector. Representatives are rescaled so that
/// `c3 = 1` when possible, else `c2 = 1`.
pub fn chain_from_polar(c: &HVector) -> Result<Chain> {
    require_positive(c)?;
    let scale = c.euclid_norm_sqr();
    if c.z(3).norm_sqr() > tolerance::get().sig * scale {
        let n = c.scale(c.z(3).inv());
        let radius = (n.norm_form() / 2.0).sqrt();
        Ok(Chain::Finite {
            zeta0: n.z(2) / SQRT_2,
            v0: n.z(1).im,
            radius,
        })
    } else {
        let n = c.scale(c.z(2).inv());
        Ok(Chain::Vertical {
            zeta0: -n.z(1).conj() / SQRT_2,
        })
    }
}

pub fn polar_of_chain(ch: &Chain) -> HVector {
    match *ch {
        Chain::Vertical { zeta0 } => HVector::new(
            -SQRT_2 * zeta0.conj(),
            Complex64::new(1.0, 0.0),
            Complex64::new(0.0, 0.0),
        ),
        Chain::Finite { zeta0, v0, radius } => HVector::new(
            Complex64::new(radius * radius - zeta0.norm_sqr(), v0),
            SQRT_2 * zeta0,
            Complex64::new(1.0, 0.0),
        ),
    }
}

/// Horizontal action of the inversion in the vertical chain over `zeta` on
/// the vertical chain over `xi`.
pub fn vertical_inversion_action(zeta: Complex64, xi: Complex64) -> Complex64 {
    2.0 * zeta - xi
}

/// Radius `1 / sqrt|h31|` of the isometric sphere of `h`.
pub fn isometric_sphere_radius(h: &Isometry) -> Result<f64> {
    let h31 = h.entry(3, 1).norm();
    if h31 <= tolerance::get().sig * h.max_abs() {
        return Err(Error::FixesInfinity(h31));
    }
    Ok(1.0 / h31.sqrt())
}

/// Centre `h^{-1}(infinity)` of the isometric sphere of `h`.
pub fn isometric_sphere_center(h: &Isometry) -> Result<HeisPoint> {
    isometric_sphere_radius(h)?;
    HeisPoint::Infinity.image(&h.inverse())
}

/// `|zeta|^4 + v^2 - 1`: zero on the unit spinal sphere, negative inside.
pub fn unit_spinal_residual(p: &HeisPoint) -> Result<f64> {
    let (zeta, v) = p.coords()?;
    Ok(zeta.norm_sqr().powi(2) + v * v - 1.0)
}

/// Point of the unit spinal sphere at latitude `phi` in `[-pi/2, pi/2]` and
/// longitude `psi`.
pub fn unit_spinal_point(phi: f64, psi: f64) -> HeisPoint {
    let rho = phi.cos().max(0.0).sqrt();
    HeisPoint::finite(Complex64::from_polar(rho, psi), phi.sin())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::triangle::build_rep;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn assert_point(p: HeisPoint, zeta: Complex64, v: f64, tol: f64) {
        let (z, w) = p.coords().unwrap();
        assert!((z - zeta).norm() < tol && (w - v).abs() < tol, "{p:?} vs ({zeta}, {v})");
    }

    #[test]
    fn projection_examples() {
        assert_eq!(stereo_project(&HVector::real(0.0, 0.0, 1.0)).unwrap(), HeisPoint::ORIGIN);
        assert_eq!(stereo_project(&HVector::real(1.0, 0.0, 0.0)).unwrap(), HeisPoint::Infinity);
        let p = HVector::new(c(0.0, 1.0), c(0.0, 0.0), c(1.0, 0.0));
        assert_eq!(p.norm_form(), 0.0);
        assert_point(stereo_project(&p).unwrap(), c(0.0, 0.0), 1.0, 1e-15);
        assert!(stereo_project(&HVector::real(-1.0, 0.0, 1.0)).is_err());
    }

    #[test]
    fn projection_is_projective() {
        let p = HeisPoint::finite(c(0.3, -1.2), 0.7);
        let lifted = p.lift().scale(c(-2.0, 5.0));
        assert_point(stereo_project(&lifted).unwrap(), c(0.3, -1.2), 0.7, 1e-14);
    }

    #[test]
    fn cygan_examples() {
        let o = HeisPoint::ORIGIN;
        assert_eq!(cygan_distance(&o, &HeisPoint::finite(c(1.0, 0.0), 0.0)).unwrap(), 1.0);
        assert_eq!(cygan_distance(&o, &HeisPoint::finite(c(0.0, 0.0), 1.0)).unwrap(), 1.0);
        let (zeta, v) = (c(0.6, -0.2), 1.7);
        let expected = c(zeta.norm_sqr(), -v).norm().sqrt();
        let got = cygan_distance(&o, &HeisPoint::finite(zeta, v)).unwrap();
        assert!((got - expected).abs() < 1e-15);
        assert_eq!(cygan_distance(&o, &HeisPoint::Infinity), Err(Error::PointAtInfinity));
    }

    #[test]
    fn translation_examples() {
        let m = heis_translation(c(0.0, 0.0), 2.5);
        assert_eq!(m.entry(1, 3), c(0.0, 2.5));
        let tau = c(1.5, -0.3);
        assert_point(HeisPoint::ORIGIN.image(&heis_translation(tau, 0.9)).unwrap(), tau, 0.9, 1e-14);
        assert!(m.form_defect() < 1e-15);
    }

    #[test]
    fn translation_matrix_matches_group_law() {
        let (tau, t) = (c(0.4, 1.1), -0.6);
        let p = HeisPoint::finite(c(-0.7, 0.2), 0.35);
        let by_matrix = p.image(&heis_translation(tau, t)).unwrap();
        let (zeta, v) = p.coords().unwrap();
        assert_point(by_matrix, zeta + tau, v + t - 2.0 * (zeta * tau.conj()).im, 1e-14);
        let (z, w) = by_matrix.coords().unwrap();
        assert_point(p.translate(tau, t), z, w, 1e-14);
    }

    #[test]
    fn composition_law() {
        let a = (c(0.4, 1.1), -0.6);
        let b = (c(-2.0, 0.3), 1.25);
        let prod = heis_translation(a.0, a.1).compose(&heis_translation(b.0, b.1));
        let ab = heis_mul(a, b);
        assert!(prod.max_abs_diff(&heis_translation(ab.0, ab.1)) < 1e-14);
    }

    #[test]
    fn product_of_inversions_is_translation() {
        let rep = build_rep(2.3, 1.4, 1.1).unwrap();
        let g = rep.i2.compose(&rep.i1);
        let p = rep.params;
        let xi = 2.0 * (p.r1 * Complex64::from_polar(1.0, -p.theta) + p.r2 * Complex64::from_polar(1.0, p.theta));
        let v = -8.0 * p.r1 * p.r2 * (2.0 * p.theta).sin();
        assert!(g.max_abs_diff(&heis_translation(xi, v)) < 1e-12);
        let (tau, t) = translation_parts(&g);
        assert!((tau - xi).norm() < 1e-13 && (t - v).abs() < 1e-12);
    }

    #[test]
    fn chain_examples() {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        match chain_from_polar(&HVector::real(h, 0.0, h)).unwrap() {
            Chain::Finite { zeta0, v0, radius } => {
                assert!(zeta0.norm() < 1e-15 && v0.abs() < 1e-15);
                assert!((radius - 1.0).abs() < 1e-15);
            }
            other => panic!("{other:?}"),
        }
        let z0 = c(-0.8, 2.1);
        let polar = HVector::new(-SQRT_2 * z0.conj(), c(1.0, 0.0), c(0.0, 0.0));
        match chain_from_polar(&polar).unwrap() {
            Chain::Vertical { zeta0 } => assert!((zeta0 - z0).norm() < 1e-14),
            other => panic!("{other:?}"),
        }
        let axis = Chain::Vertical { zeta0: c(0.0, 0.0) }.polar();
        assert!(axis.projectively_eq(&HVector::real(0.0, 1.0, 0.0), 1e-15));
        assert!(chain_from_polar(&HVector::real(-1.0, 0.0, 1.0)).is_err());
    }

    #[test]
    fn vertical_inversion_examples() {
        let xi = c(1.3, -0.4);
        assert_eq!(vertical_inversion_action(c(0.0, 0.0), xi), -xi);
        assert_eq!(vertical_inversion_action(xi, xi), xi);
        let zeta = c(-0.25, 0.9);
        let m = crate::triangle::reflection_matrix(&Chain::Vertical { zeta0: zeta }.polar()).unwrap();
        let image = m.apply(&Chain::Vertical { zeta0: xi }.polar());
        let expected = Chain::Vertical { zeta0: vertical_inversion_action(zeta, xi) }.polar();
        assert!(image.projectively_eq(&expected, 1e-14));
    }

    #[test]
    fn isometric_sphere_examples() {
        let rep = build_rep(1.0, 1.0, 1.0).unwrap();
        assert!((isometric_sphere_radius(&rep.i3).unwrap() - 1.0).abs() < 1e-15);
        assert_eq!(isometric_sphere_center(&rep.i3).unwrap(), HeisPoint::ORIGIN);
        let tau = c(0.7, 0.2);
        let g = heis_translation(tau, 0.0);
        let conj = rep.i3.conjugate_by(&g);
        let expected = 1.0 / conj.entry(3, 1).norm().sqrt();
        assert!((isometric_sphere_radius(&conj).unwrap() - expected).abs() < 1e-15);
        assert!((expected - 1.0).abs() < 1e-14);
        assert_point(isometric_sphere_center(&conj).unwrap(), tau, 0.0, 1e-14);
        assert!(matches!(isometric_sphere_radius(&heis_translation(c(1.0, 0.0), 0.0)), Err(Error::FixesInfinity(_))));
    }

    #[test]
    fn spinal_examples() {
        assert_eq!(unit_spinal_residual(&HeisPoint::finite(c(1.0, 0.0), 0.0)).unwrap(), 0.0);
        assert_eq!(unit_spinal_residual(&HeisPoint::ORIGIN).unwrap(), -1.0);
        let i3 = build_rep(1.0, 1.0, 1.0).unwrap().i3;
        for k in 0..20 {
            let p = unit_spinal_point(-1.5 + 0.15 * k as f64, 0.37 * k as f64);
            let q = p.image(&i3).unwrap();
            assert!(unit_spinal_residual(&q).unwrap().abs() < 1e-9);
        }
    }

    fn finite_point() -> impl Strategy<Value = HeisPoint> {
        (-3.0f64..3.0, -3.0f64..3.0, -5.0f64..5.0).prop_map(|(a, b, v)| HeisPoint::finite(c(a, b), v))
    }

    proptest! {
        #[test]
        fn cygan_is_symmetric_and_translation_invariant(
            p in finite_point(), q in finite_point(), a in -2.0f64..2.0, b in -2.0f64..2.0, t in -3.0f64..3.0
        ) {
            let d = cygan_distance(&p, &q).unwrap();
            prop_assert_eq!(d, cygan_distance(&q, &p).unwrap());
            let g = heis_translation(c(a, b), t);
            let d2 = cygan_distance(&p.image(&g).unwrap(), &q.image(&g).unwrap()).unwrap();
            prop_assert!((d - d2).abs() < 1e-10 * d.max(1.0));
        }

        #[test]
        fn chain_round_trip(a in -2.0f64..2.0, b in -2.0f64..2.0, v0 in -2.0f64..2.0, r in 0.1f64..3.0) {
            let ch = Chain::Finite { zeta0: c(a, b), v0, radius: r };
            let back = chain_from_polar(&ch.polar().scale(c(0.3, -1.7))).unwrap();
            prop_assert!(back.polar().projectively_eq(&ch.polar(), 1e-12));
            let vert = Chain::Vertical { zeta0: c(a, b) };
            let back = chain_from_polar(&vert.polar().scale(c(-2.0, 0.5))).unwrap();
            prop_assert!(back.polar().projectively_eq(&vert.polar(), 1e-12));
        }
    }
}
