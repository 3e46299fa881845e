//! Regions of the `(r1, r2)` plane.
//!
//! Region tests are written in `u = r1^2 - r2^2` and `w = r2^2 - 1`, so that
//! `X = u / w` and `Y = 1 / w` never have to be formed; this keeps `r2 = 1`
//! inside the same code path.

use serde::{Deserialize, Serialize};

use super::f_a;
use crate::tolerance;

/// Figure coordinates `X = (r1^2 - r2^2)/(r2^2 - 1)`, `Y = 1/(r2^2 - 1)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RegionPoint {
    pub x: f64,
    pub y: f64,
    /// False when `r2 = 1`.
    pub defined: bool,
}

pub fn region_point(r1: f64, r2: f64) -> RegionPoint {
    let w = r2 * r2 - 1.0;
    if w <= 0.0 {
        return RegionPoint {
            x: f64::INFINITY,
            y: f64::INFINITY,
            defined: false,
        };
    }
    RegionPoint {
        x: (r1 * r1 - r2 * r2) / w,
        y: 1.0 / w,
        defined: true,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "region")]
pub enum Region {
    /// Conditions (*) reduce to the single inequality for `w_A^(k)`.
    TypeA { k: u64 },
    /// Conditions (*) reduce to the inequality for `w_B`.
    TypeB,
    /// `r2 = 1` and `r1 <= sqrt 3`.
    IdealTypeB,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum RegionTag {
    Interior { region: Region },
    /// Within tolerance of the edge between two regions.
    Boundary { left: Region, right: Region },
}

impl RegionTag {
    /// The `TypeA` index carried by the tag, if any.
    pub fn type_a_k(&self) -> Option<u64> {
        match *self {
            RegionTag::Interior {
                region: Region::TypeA { k },
            } => Some(k),
            RegionTag::Boundary { left, right } => match (left, right) {
                (Region::TypeA { k }, _) | (_, Region::TypeA { k }) => Some(k),
                _ => None,
            },
            _ => None,
        }
    }

    pub fn is_type_b_like(&self) -> bool {
        let b = |r: Region| matches!(r, Region::TypeB | Region::IdealTypeB);
        match *self {
            RegionTag::Interior { region } => b(region),
            RegionTag::Boundary { left, right } => b(left) || b(right),
        }
    }

    /// True for an interior tag.
    pub fn is_interior(&self) -> bool {
        matches!(self, RegionTag::Interior { .. })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RegionVerdict {
    pub point: RegionPoint,
    pub tag: RegionTag,
    /// `k` of the `TypeA` region, when the point is in or on one.
    pub k: Option<u64>,
    pub all_alpha_discrete: bool,
    pub phi_k_satisfied: bool,
}

/// `k` with `2w/k <= u <= 2w/(k-1)`, i.e. `2/k <= X <= 2/(k-1)`.
fn strip_index(u: f64, w: f64) -> u64 {
    if w <= 0.0 || u >= 2.0 * w {
        return 1;
    }
    if u <= 0.0 {
        return u64::MAX;
    }
    let k = (2.0 * w / u).ceil();
    if k >= u64::MAX as f64 {
        u64::MAX
    } else {
        (k as u64).max(1)
    }
}

/// `u - (w/k + k + 1)`, the signed distance from the broken line in strip `k`.
fn line_gap(u: f64, w: f64, k: u64) -> f64 {
    let kf = k as f64;
    u - (w / kf + kf + 1.0)
}

pub fn classify_region(r1: f64, r2: f64) -> RegionVerdict {
    let (r1, r2) = if r1 < r2 { (r2, r1) } else { (r1, r2) };
    let u = r1 * r1 - r2 * r2;
    let w = (r2 * r2 - 1.0).max(0.0);
    let eps = tolerance::get().star * u.abs().max(w).max(1.0);
    let below = if w == 0.0 { Region::IdealTypeB } else { Region::TypeB };

    let k = strip_index(u, w);
    let tag = if k == u64::MAX {
        RegionTag::Interior { region: below }
    } else {
        let gap = line_gap(u, w, k);
        if gap.abs() <= eps {
            RegionTag::Boundary {
                left: below,
                right: Region::TypeA { k },
            }
        } else if gap < 0.0 {
            RegionTag::Interior { region: below }
        } else if w > 0.0 && (u - 2.0 * w / k as f64).abs() <= eps && line_gap(u, w, k + 1) >= -eps {
            RegionTag::Boundary {
                left: Region::TypeA { k: k + 1 },
                right: Region::TypeA { k },
            }
        } else if w > 0.0 && k >= 2 && (u - 2.0 * w / (k - 1) as f64).abs() <= eps && line_gap(u, w, k - 1) >= -eps {
            RegionTag::Boundary {
                left: Region::TypeA { k },
                right: Region::TypeA { k: k - 1 },
            }
        } else {
            RegionTag::Interior {
                region: Region::TypeA { k },
            }
        }
    };
    RegionVerdict {
        point: region_point(r1, r2),
        tag,
        k: tag.type_a_k(),
        all_alpha_discrete: all_alpha_discrete(r1, r2),
        phi_k_satisfied: phi_k_satisfied(r1, r2),
    }
}

/// Whether `r1 - r2` lies in `[r2 + 1, inf)` or in some `[(r2+1)/k, (r2-1)/(k-1)]`
/// with `k >= 2`; then conditions (*) hold for every `alpha`.
pub fn all_alpha_discrete(r1: f64, r2: f64) -> bool {
    let (r1, r2) = if r1 < r2 { (r2, r1) } else { (r1, r2) };
    let delta = r1 - r2;
    let eps = tolerance::get().star * r1.max(1.0);
    if delta >= r2 + 1.0 - eps {
        return true;
    }
    if delta <= 0.0 {
        return false;
    }
    // the smallest k with (r2 + 1)/k <= delta; the upper ends shrink with k
    let k = ((r2 + 1.0) / delta - eps).ceil().max(2.0);
    delta <= (r2 - 1.0) / (k - 1.0) + eps
}

/// `Phi_k(X) = (k^2 X - 2k - 1)^2 / (4k(k+1)(kX - 1))`.
pub fn phi_k(k: u64, x: f64) -> f64 {
    let k = k as f64;
    let num = k * k * x - 2.0 * k - 1.0;
    num * num / (4.0 * k * (k + 1.0) * (k * x - 1.0))
}

/// For `r2 = 1`: `r1 >= 3`. Otherwise `Y <= Phi_k(X)` in a strip
/// `2/k <= X <= 2/(k-1)` (no upper bound when `k = 1`).
pub fn phi_k_satisfied(r1: f64, r2: f64) -> bool {
    let (r1, r2) = if r1 < r2 { (r2, r1) } else { (r1, r2) };
    let eps = tolerance::get().star;
    let p = region_point(r1, r2);
    if !p.defined {
        return r1 >= 3.0 - eps;
    }
    if p.x <= 0.0 {
        return false;
    }
    let k = strip_index(r1 * r1 - r2 * r2, r2 * r2 - 1.0);
    if k == u64::MAX {
        return false;
    }
    // on a strip edge both neighbours qualify
    [k.saturating_sub(1), k, k + 1]
        .into_iter()
        .filter(|&j| j >= 1)
        .filter(|&j| {
            let jf = j as f64;
            let inside_lower = p.x >= 2.0 / jf - eps;
            let inside_upper = j == 1 || p.x <= 2.0 / (jf - 1.0) + eps;
            inside_lower && inside_upper
        })
        .any(|j| p.y <= phi_k(j, p.x) + eps)
}

/// `f_A(k)` is the binding threshold inside `TypeA { k }`.
pub fn type_a_threshold(k: u64, r1: f64, r2: f64) -> f64 {
    f_a(k as i64, r1, r2).expect("k >= 1")
}
