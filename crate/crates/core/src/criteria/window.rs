//! Angles at which exactly one `w_A^(k)` is elliptic.

use serde::{Deserialize, Serialize};

use crate::tolerance;

use super::{alpha_from_u, f_a};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum WakWindow {
    Empty {
        reason: String,
    },
    /// `lower_u <= 4 r1 r2 sin^2(alpha/2) < upper_u`, equivalently
    /// `alpha_lo <= alpha < alpha_hi` in `[0, pi]` (and the mirror image in
    /// `[pi, 2 pi]`).
    Interval {
        k: i64,
        lower_u: f64,
        upper_u: f64,
        alpha_lo: f64,
        alpha_hi: f64,
    },
}

impl WakWindow {
    pub fn is_empty(&self) -> bool {
        matches!(self, WakWindow::Empty { .. })
    }

    /// Whether `u = 4 r1 r2 sin^2(alpha/2)` lies in the window.
    pub fn contains_u(&self, u: f64) -> bool {
        match *self {
            WakWindow::Empty { .. } => false,
            WakWindow::Interval { lower_u, upper_u, .. } => lower_u <= u && u < upper_u,
        }
    }
}

fn empty(reason: impl Into<String>) -> WakWindow {
    WakWindow::Empty { reason: reason.into() }
}

/// The window `max(f_A(k+1), f_A(k-1)) <= u < f_A(k)` on which `w_A^(k)` is
/// elliptic while every other `w_A^(l)` is not.
///
/// Requires `k >= 2`, `r2 > 1` and
/// `max(1/k + (k+1)/(r2^2-1), 2/k) <= (r1^2 - r2^2)/(r2^2 - 1) <= 2/(k-1)`.
pub fn wak_elliptic_window(r1: f64, r2: f64, k: i64) -> WakWindow {
    let (r1, r2) = if r1 < r2 { (r2, r1) } else { (r1, r2) };
    if k < 2 {
        return empty(format!("k = {k} is below 2"));
    }
    if r2 <= 1.0 {
        return empty("r2 = 1: region coordinate undefined");
    }
    let eps = tolerance::get().star;
    let kf = k as f64;
    let w = r2 * r2 - 1.0;
    let x = (r1 * r1 - r2 * r2) / w;
    let lower_x = (1.0 / kf + (kf + 1.0) / w).max(2.0 / kf);
    let upper_x = 2.0 / (kf - 1.0);
    if x < lower_x - eps || x > upper_x + eps {
        return empty(format!(
            "region hypothesis fails: X = {x} outside [{lower_x}, {upper_x}]"
        ));
    }
    let upper_u = f_a(k, r1, r2).expect("k >= 2");
    let lower_u = f_a(k + 1, r1, r2)
        .expect("k >= 2")
        .max(f_a(k - 1, r1, r2).expect("k >= 2"))
        .max(0.0);
    let max_u = 4.0 * r1 * r2;
    if upper_u <= lower_u {
        return empty(format!("f_A({k}) = {upper_u} does not exceed {lower_u}"));
    }
    WakWindow::Interval {
        k,
        lower_u,
        upper_u,
        alpha_lo: alpha_from_u(lower_u, r1, r2),
        alpha_hi: alpha_from_u(upper_u.min(max_u), r1, r2),
    }
}
