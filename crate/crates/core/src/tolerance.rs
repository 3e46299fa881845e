//! Process-wide numerical tolerances.
//!
//! The defaults are tuned for double precision at desk scale. A front end may
//! replace them once at startup with [`set`]; every comparison in the crate
//! reads them through [`get`].

use std::sync::atomic::{AtomicU64, Ordering};

use serde::{Deserialize, Serialize};

/// Tolerance bundle used by the classification routines.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    /// Relative band around zero for the sign of `herm(z, z)`.
    pub sig: f64,
    /// Relative band around the deltoid, scaled by `max(1, |trace|^4)`.
    pub deltoid: f64,
    /// Absolute slack for the inequalities of conditions (*) and region edges.
    pub star: f64,
}

impl Tolerances {
    pub const DEFAULT: Tolerances = Tolerances {
        sig: 1e-10,
        deltoid: 1e-9,
        star: 1e-12,
    };
}

impl Default for Tolerances {
    fn default() -> Self {
        Self::DEFAULT
    }
}

static SIG: AtomicU64 = AtomicU64::new(0x3DDB_7CDF_D9D7_BDBB); // 1e-10
static DELTOID: AtomicU64 = AtomicU64::new(0x3E11_2E0B_E826_D695); // 1e-9
static STAR: AtomicU64 = AtomicU64::new(0x3D71_9799_812D_EA11); // 1e-12

/// Current tolerances.
pub fn get() -> Tolerances {
    Tolerances {
        sig: f64::from_bits(SIG.load(Ordering::Relaxed)),
        deltoid: f64::from_bits(DELTOID.load(Ordering::Relaxed)),
        star: f64::from_bits(STAR.load(Ordering::Relaxed)),
    }
}

/// Replace the process-wide tolerances.
pub fn set(tol: Tolerances) {
    SIG.store(tol.sig.to_bits(), Ordering::Relaxed);
    DELTOID.store(tol.deltoid.to_bits(), Ordering::Relaxed);
    STAR.store(tol.star.to_bits(), Ordering::Relaxed);
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn static_bits_match_defaults() {
        assert_eq!(f64::from_bits(0x3DDB_7CDF_D9D7_BDBB), 1e-10);
        assert_eq!(f64::from_bits(0x3E11_2E0B_E826_D695), 1e-9);
        assert_eq!(f64::from_bits(0x3D71_9799_812D_EA11), 1e-12);
        assert_eq!(get(), Tolerances::DEFAULT);
    }
}
