//! Linear algebra over C^{2,1}.
//!
//! The Hermitian form is the anti-diagonal one,
//! `<z, w> = z1 conj(w3) + z2 conj(w2) + z3 conj(w1)`, with Gram matrix
//! `J = antidiag(1, 1, 1)`. Isometries are stored as SU(2,1) matrices, so
//! traces are exact representatives and no cube root of unity ambiguity
//! arises.

use std::fmt;
use std::ops::Mul;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tolerance;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// A vector of C^{2,1}, also used as a homogeneous representative of a
/// projective point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HVector(pub [Complex64; 3]);

impl HVector {
    pub fn new(z1: Complex64, z2: Complex64, z3: Complex64) -> Self {
        HVector([z1, z2, z3])
    }

    pub fn real(z1: f64, z2: f64, z3: f64) -> Self {
        HVector([z1.into(), z2.into(), z3.into()])
    }

    /// Standard basis vector `e_i`, 1-based.
    pub fn basis(i: usize) -> Self {
        let mut v = [ZERO; 3];
        v[i - 1] = ONE;
        HVector(v)
    }

    /// Component `z_i`, 1-based.
    pub fn z(&self, i: usize) -> Complex64 {
        self.0[i - 1]
    }

    /// Euclidean squared norm of the coordinates.
    pub fn euclid_norm_sqr(&self) -> f64 {
        self.0.iter().map(|c| c.norm_sqr()).sum()
    }

    pub fn scale(&self, lambda: Complex64) -> Self {
        HVector(self.0.map(|c| c * lambda))
    }

    pub fn add(&self, other: &HVector) -> Self {
        HVector([
            self.0[0] + other.0[0],
            self.0[1] + other.0[1],
            self.0[2] + other.0[2],
        ])
    }

    /// `<self, self>`, always real.
    pub fn norm_form(&self) -> f64 {
        herm(self, self).re
    }

    /// True when `self` and `other` span the same complex line, up to `tol`
    /// relative to the larger representative.
    pub fn projectively_eq(&self, other: &HVector, tol: f64) -> bool {
        let a = self.euclid_norm_sqr();
        let b = other.euclid_norm_sqr();
        if a == 0.0 || b == 0.0 {
            return a == b;
        }
        // residual of `other` after projecting onto the line of `self`
        let dot: Complex64 = (0..3).map(|i| self.0[i].conj() * other.0[i]).sum();
        let residual = other.add(&self.scale(-dot / a));
        residual.euclid_norm_sqr().sqrt() <= tol * b.sqrt()
    }
}

/// The Hermitian form of signature (2,1).
pub fn herm(z: &HVector, w: &HVector) -> Complex64 {
    z.0[0] * w.0[2].conj() + z.0[1] * w.0[1].conj() + z.0[2] * w.0[0].conj()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum VectorClass {
    Negative,
    Null,
    Positive,
}

/// Sign of `herm(z, z)`, with a band of `eps_sig * |z|^2` counted as null.
pub fn classify_vector(z: &HVector) -> Result<VectorClass> {
    let scale = z.euclid_norm_sqr();
    if scale == 0.0 {
        return Err(Error::ZeroVector);
    }
    let q = z.norm_form();
    let band = tolerance::get().sig * scale;
    Ok(if q < -band {
        VectorClass::Negative
    } else if q > band {
        VectorClass::Positive
    } else {
        VectorClass::Null
    })
}

fn require_class(z: &HVector, class: VectorClass, name: &'static str) -> Result<()> {
    if classify_vector(z)? != class {
        return Err(Error::WrongVectorClass {
            expected: name,
            value: z.norm_form(),
        });
    }
    Ok(())
}

pub(crate) fn require_negative(z: &HVector) -> Result<()> {
    require_class(z, VectorClass::Negative, "negative")
}

pub(crate) fn require_null(z: &HVector) -> Result<()> {
    require_class(z, VectorClass::Null, "null")
}

pub(crate) fn require_positive(z: &HVector) -> Result<()> {
    require_class(z, VectorClass::Positive, "positive")
}

/// Bergman distance between two points of the complex hyperbolic plane,
/// from `cosh^2(d/2) = <z,w><w,z> / (<z,z><w,w>)`.
pub fn bergman_distance(p: &HVector, q: &HVector) -> Result<f64> {
    require_negative(p)?;
    require_negative(q)?;
    let ratio = herm(p, q).norm_sqr() / (p.norm_form() * q.norm_form());
    Ok(2.0 * ratio.max(1.0).sqrt().acosh())
}

/// An element of SU(2,1) acting on the left of column vectors.
#[derive(Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Isometry {
    pub rows: [[Complex64; 3]; 3],
}

impl fmt::Debug for Isometry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Isometry [")?;
        for row in &self.rows {
            writeln!(f, "  {:?}", row)?;
        }
        write!(f, "]")
    }
}

impl Isometry {
    pub const IDENTITY: Isometry = Isometry {
        rows: [[ONE, ZERO, ZERO], [ZERO, ONE, ZERO], [ZERO, ZERO, ONE]],
    };

    pub fn from_rows(rows: [[Complex64; 3]; 3]) -> Self {
        Isometry { rows }
    }

    /// Entry `h_ij`, 1-based.
    pub fn entry(&self, i: usize, j: usize) -> Complex64 {
        self.rows[i - 1][j - 1]
    }

    pub fn trace(&self) -> Complex64 {
        self.rows[0][0] + self.rows[1][1] + self.rows[2][2]
    }

    pub fn det(&self) -> Complex64 {
        let m = &self.rows;
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    }

    pub fn compose(&self, other: &Isometry) -> Isometry {
        let mut out = [[ZERO; 3]; 3];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = (0..3).map(|k| self.rows[i][k] * other.rows[k][j]).sum();
            }
        }
        Isometry { rows: out }
    }

    /// Inverse through form-unitarity: `M^{-1} = J M^H J`.
    pub fn inverse(&self) -> Isometry {
        let mut out = [[ZERO; 3]; 3];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                // (J M^H J)_{ij} = conj(M_{2-j, 2-i})
                *cell = self.rows[2 - j][2 - i].conj();
            }
        }
        Isometry { rows: out }
    }

    pub fn apply(&self, z: &HVector) -> HVector {
        let mut out = [ZERO; 3];
        for (i, cell) in out.iter_mut().enumerate() {
            *cell = (0..3).map(|k| self.rows[i][k] * z.0[k]).sum();
        }
        HVector(out)
    }

    /// `g self g^{-1}`.
    pub fn conjugate_by(&self, g: &Isometry) -> Isometry {
        g.compose(self).compose(&g.inverse())
    }

    pub fn scale(&self, lambda: Complex64) -> Isometry {
        Isometry {
            rows: self.rows.map(|r| r.map(|c| c * lambda)),
        }
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Isometry) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..3 {
            for j in 0..3 {
                worst = worst.max((self.rows[i][j] - other.rows[i][j]).norm());
            }
        }
        worst
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.rows
            .iter()
            .flatten()
            .map(|c| c.norm())
            .fold(0.0, f64::max)
    }

    /// Largest deviation of `herm(M e_i, M e_j)` from `herm(e_i, e_j)` over the
    /// standard basis.
    pub fn form_defect(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 1..=3 {
            for j in 1..=3 {
                let ei = HVector::basis(i);
                let ej = HVector::basis(j);
                let lhs = herm(&self.apply(&ei), &self.apply(&ej));
                worst = worst.max((lhs - herm(&ei, &ej)).norm());
            }
        }
        worst
    }

    /// `self^n` by binary exponentiation.
    pub fn pow(&self, mut n: u64) -> Isometry {
        let mut base = *self;
        let mut acc = Isometry::IDENTITY;
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.compose(&base);
            }
            base = base.compose(&base);
            n >>= 1;
        }
        acc
    }

    /// Distance from the nearest scalar matrix `omega I` with `omega^3 = 1`,
    /// i.e. from the identity of PU(2,1).
    pub fn projective_identity_defect(&self) -> f64 {
        (0..3)
            .map(|k| {
                let omega = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * k as f64 / 3.0);
                self.max_abs_diff(&Isometry::IDENTITY.scale(omega))
            })
            .fold(f64::INFINITY, f64::min)
    }
}

impl Mul for Isometry {
    type Output = Isometry;

    fn mul(self, rhs: Isometry) -> Isometry {
        self.compose(&rhs)
    }
}

impl<'a> Mul<&'a Isometry> for &'a Isometry {
    type Output = Isometry;

    fn mul(self, rhs: &'a Isometry) -> Isometry {
        self.compose(rhs)
    }
}

/// `|z|^4 - 8 Re(z^3) + 18 |z|^2 - 27`: negative strictly inside the deltoid,
/// positive outside, zero on it.
pub fn deltoid_discriminant(z: Complex64) -> f64 {
    let a = z.norm_sqr();
    a * a - 8.0 * (z * z * z).re + 18.0 * a - 27.0
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum IsometryTag {
    RegularElliptic,
    Loxodromic,
    Boundary,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IsometryClass {
    pub tag: IsometryTag,
    pub discriminant: f64,
}

/// Classification of an SU(2,1) trace against the deltoid, with a band of
/// `eps_deltoid * max(1, |t|^4)` reported as [`IsometryTag::Boundary`].
pub fn classify_trace(t: Complex64) -> IsometryClass {
    let discriminant = deltoid_discriminant(t);
    let band = tolerance::get().deltoid * t.norm_sqr().powi(2).max(1.0);
    let tag = if discriminant < -band {
        IsometryTag::RegularElliptic
    } else if discriminant > band {
        IsometryTag::Loxodromic
    } else {
        IsometryTag::Boundary
    };
    IsometryClass { tag, discriminant }
}

pub fn classify_isometry(m: &Isometry) -> IsometryClass {
    classify_trace(m.trace())
}

/// Eigenvalues of an SU(2,1) element with trace `t`: the roots of
/// `x^3 - t x^2 + conj(t) x - 1`.
pub fn su21_eigenvalues(t: Complex64) -> [Complex64; 3] {
    complex_cubic_roots(-t, t.conj(), -ONE)
}

/// Rotation angles of a regular elliptic element, or `None` when the
/// eigenvalues are not all on the unit circle within `1e-9`.
pub fn rotation_angles(t: Complex64) -> Option<[f64; 3]> {
    let ev = su21_eigenvalues(t);
    if ev.iter().all(|l| (l.norm() - 1.0).abs() < 1e-9) {
        Some(ev.map(|l| l.arg()))
    } else {
        None
    }
}

/// Roots of the monic cubic `x^3 + a x^2 + b x + c` over C, by Cardano with
/// Newton polishing.
fn complex_cubic_roots(a: Complex64, b: Complex64, c: Complex64) -> [Complex64; 3] {
    let shift = a / 3.0;
    let p = b - a * a / 3.0;
    let q = 2.0 * a * a * a / 27.0 - a * b / 3.0 + c;
    let disc = (q * q / 4.0 + p * p * p / 27.0).sqrt();
    // pick the branch with the larger modulus to avoid cancellation
    let s = if (-q / 2.0 + disc).norm() >= (-q / 2.0 - disc).norm() {
        -q / 2.0 + disc
    } else {
        -q / 2.0 - disc
    };
    let u = s.powf(1.0 / 3.0);
    let omega = Complex64::new(-0.5, 3f64.sqrt() / 2.0);
    let mut roots = [ZERO; 3];
    let mut uk = u;
    for root in roots.iter_mut() {
        let y = if uk.norm() == 0.0 { ZERO } else { uk - p / (3.0 * uk) };
        *root = y - shift;
        uk *= omega;
    }
    let f = |x: Complex64| ((x + a) * x + b) * x + c;
    let df = |x: Complex64| (3.0 * x + 2.0 * a) * x + b;
    for root in roots.iter_mut() {
        for _ in 0..3 {
            let d = df(*root);
            if d.norm() == 0.0 {
                break;
            }
            let next = *root - f(*root) / d;
            if f(next).norm() < f(*root).norm() {
                *root = next;
            } else {
                break;
            }
        }
    }
    roots
}
