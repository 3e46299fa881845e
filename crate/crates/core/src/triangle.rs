//! The standard parametrisation of ultra-parallel `[m1, m2, 0]`-triangle
//! groups by `(r1, r2, alpha)`, where `r_j = cosh(m_j / 2)`.

use std::f64::consts::{PI, SQRT_2, TAU};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hermitian::{herm, require_positive, HVector, Isometry};

/// `r = cosh(m / 2)`.
pub fn r_from_length(m: f64) -> f64 {
    (m / 2.0).cosh()
}

/// `m = 2 arccosh(r)`.
pub fn length_from_r(r: f64) -> f64 {
    2.0 * r.acosh()
}

/// Validated parameters with `r1 >= r2 >= 1` and `alpha` in `(0, 2 pi)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TriangleParams {
    pub r1: f64,
    pub r2: f64,
    pub alpha: f64,
    /// `(pi - alpha) / 2`.
    pub theta: f64,
    /// Set when the caller passed `r1 < r2` and the radii were exchanged.
    pub swapped: bool,
}

impl TriangleParams {
    pub fn new(r1: f64, r2: f64, alpha: f64) -> Result<Self> {
        for (name, r) in [("r1", r1), ("r2", r2)] {
            if !(r.is_finite() && r >= 1.0) {
                return Err(Error::ParameterOutOfRange {
                    name,
                    value: r,
                    bound: "finite and >= 1",
                });
            }
        }
        if !(alpha > 0.0 && alpha < TAU) {
            return Err(Error::ParameterOutOfRange {
                name: "alpha",
                value: alpha,
                bound: "open interval (0, 2 pi)",
            });
        }
        let swapped = r1 < r2;
        let (r1, r2) = if swapped { (r2, r1) } else { (r1, r2) };
        Ok(TriangleParams {
            r1,
            r2,
            alpha,
            theta: (PI - alpha) / 2.0,
            swapped,
        })
    }

    /// Parameters from the distances `m1, m2 >= 0` between the complex
    /// geodesics.
    pub fn from_lengths(m1: f64, m2: f64, alpha: f64) -> Result<Self> {
        for (name, m) in [("m1", m1), ("m2", m2)] {
            if !(m.is_finite() && m >= 0.0) {
                return Err(Error::ParameterOutOfRange {
                    name,
                    value: m,
                    bound: "finite and >= 0",
                });
            }
        }
        Self::new(r_from_length(m1), r_from_length(m2), alpha)
    }

    pub fn m1(&self) -> f64 {
        length_from_r(self.r1)
    }

    pub fn m2(&self) -> f64 {
        length_from_r(self.r2)
    }

    /// `sin^2(alpha / 2)`.
    pub fn sin2_half(&self) -> f64 {
        (self.alpha / 2.0).sin().powi(2)
    }
}

/// A concrete representation: normalised polar vectors and the reflections
/// in the corresponding complex geodesics.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TriangleRep {
    pub params: TriangleParams,
    pub c1: HVector,
    pub c2: HVector,
    pub c3: HVector,
    pub i1: Isometry,
    pub i2: Isometry,
    pub i3: Isometry,
}

impl TriangleRep {
    /// Generator `I_k`, 1-based.
    pub fn generator(&self, k: u8) -> Result<&Isometry> {
        match k {
            1 => Ok(&self.i1),
            2 => Ok(&self.i2),
            3 => Ok(&self.i3),
            _ => Err(Error::InvalidLetter(k)),
        }
    }

    pub fn polars(&self) -> [HVector; 3] {
        [self.c1, self.c2, self.c3]
    }
}

/// Order-two complex reflection `z -> -z + 2 <z,c>/<c,c> c` in the complex
/// geodesic polar to `c`.
pub fn reflection_matrix(c: &HVector) -> Result<Isometry> {
    require_positive(c)?;
    let q = c.norm_form();
    let mut rows = [[Complex64::new(0.0, 0.0); 3]; 3];
    for (i, row) in rows.iter_mut().enumerate() {
        for (j, cell) in row.iter_mut().enumerate() {
            // <z, c> = sum_j z_j conj(c_{2-j})
            *cell = 2.0 * c.0[i] * c.0[2 - j].conj() / q;
            if i == j {
                *cell -= 1.0;
            }
        }
    }
    Ok(Isometry::from_rows(rows))
}

pub fn build_rep(r1: f64, r2: f64, alpha: f64) -> Result<TriangleRep> {
    build_rep_from(TriangleParams::new(r1, r2, alpha)?)
}

pub fn build_rep_from(params: TriangleParams) -> Result<TriangleRep> {
    let TriangleParams { r1, r2, theta, .. } = params;
    let one = Complex64::new(1.0, 0.0);
    let zero = Complex64::new(0.0, 0.0);
    let c1 = HVector::new(SQRT_2 * r2 * Complex64::from_polar(1.0, -theta), one, zero);
    let c2 = HVector::new(-SQRT_2 * r1 * Complex64::from_polar(1.0, theta), one, zero);
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let c3 = HVector::real(h, 0.0, h);
    Ok(TriangleRep {
        params,
        c1,
        c2,
        c3,
        i1: reflection_matrix(&c1)?,
        i2: reflection_matrix(&c2)?,
        i3: reflection_matrix(&c3)?,
    })
}

/// Whether a triangle of complex geodesics with `|<c_j, c_k>| = r` values
/// `r1, r2, r3` and angular invariant `alpha` exists.
pub fn existence_check(r1: f64, r2: f64, r3: f64, alpha: f64) -> bool {
    alpha.cos() < (r1 * r1 + r2 * r2 + r3 * r3 - 1.0) / (2.0 * r1 * r2 * r3)
}

/// Angular invariant `arg(<c3,c2><c1,c3><c2,c1>)` in `[0, 2 pi)`.
pub fn angular_invariant(c1: &HVector, c2: &HVector, c3: &HVector) -> f64 {
    let prod = herm(c3, c2) * herm(c1, c3) * herm(c2, c1);
    prod.arg().rem_euclid(TAU)
}

/// Residuals of every [`TriangleRep`] invariant.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RepReport {
    /// `|<c_k, c_k> - 1|`.
    pub normalisation: [f64; 3],
    /// `| |<c3,c2>| - r1 |`, `| |<c1,c3>| - r2 |`, `| |<c2,c1>| - 1 |`.
    pub pairing: [f64; 3],
    /// Distances `2 arccosh |<c_j,c_k>|` recovered from the pairings, in the
    /// same order as `pairing`.
    pub distances: [f64; 3],
    /// Wrapped difference between the recovered angular invariant and alpha.
    pub angle: f64,
    /// Max entry of `I_k^2 - id`.
    pub involution: [f64; 3],
    /// Max form defect over the three generators.
    pub form: f64,
    /// Max `|det I_k - 1|`.
    pub det: f64,
    pub passed: bool,
}

const PAIRING_TOL: f64 = 1e-10;
const MATRIX_TOL: f64 = 1e-9;

pub fn verify_rep(rep: &TriangleRep) -> RepReport {
    let p = &rep.params;
    let cs = rep.polars();
    let gens = [rep.i1, rep.i2, rep.i3];
    let normalisation = cs.map(|c| (herm(&c, &c) - 1.0).norm());
    let moduli = [
        herm(&rep.c3, &rep.c2).norm(),
        herm(&rep.c1, &rep.c3).norm(),
        herm(&rep.c2, &rep.c1).norm(),
    ];
    let targets = [p.r1, p.r2, 1.0];
    let pairing = [0, 1, 2].map(|k| (moduli[k] - targets[k]).abs());
    let distances = moduli.map(|m| length_from_r(m.max(1.0)));
    let recovered = angular_invariant(&rep.c1, &rep.c2, &rep.c3);
    let diff = (recovered - p.alpha).rem_euclid(TAU);
    let angle = diff.min(TAU - diff);
    let involution = gens.map(|g| g.compose(&g).max_abs_diff(&Isometry::IDENTITY));
    let form = gens.iter().map(Isometry::form_defect).fold(0.0, f64::max);
    let det = gens.iter().map(|g| (g.det() - 1.0).norm()).fold(0.0, f64::max);
    let passed = normalisation.iter().all(|&r| r < PAIRING_TOL)
        && pairing.iter().all(|&r| r < PAIRING_TOL)
        && angle < PAIRING_TOL
        && involution.iter().all(|&r| r < MATRIX_TOL)
        && form < MATRIX_TOL
        && det < PAIRING_TOL;
    RepReport {
        normalisation,
        pairing,
        distances,
        angle,
        involution,
        form,
        det,
        passed,
    }
}
