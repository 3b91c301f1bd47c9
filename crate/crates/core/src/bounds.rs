//! Snapping a general order onto the half-odd lattice, and the resulting bound pair.

use crate::error::{Error, Result};
use crate::special::half_odd_index;

/// Closed-form values at the two half-odd orders bracketing n.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundPair {
    pub lower: f64,
    pub upper: f64,
    /// ⌈n + 1/2⌉ − 1/2, the order used for `lower`.
    pub n_lower_snap: f64,
    /// ⌊n − 1/2⌋ + 1/2, the order used for `upper`.
    pub n_upper_snap: f64,
}

impl BoundPair {
    pub fn contains(&self, value: f64) -> bool {
        self.lower <= value && value <= self.upper
    }
}

/// ⌈n + 1/2⌉ − 1/2: the smallest half-odd order ≥ n.
pub fn ceil_snap(n: f64) -> f64 {
    match half_odd_index(n) {
        Some(nu) => f64::from(nu) + 0.5,
        None => (n + 0.5).ceil() - 0.5,
    }
}

/// ⌊n − 1/2⌋ + 1/2: the largest half-odd order ≤ n. Fails for n < 1/2.
pub fn floor_snap(n: f64) -> Result<f64> {
    let snapped = match half_odd_index(n) {
        Some(nu) => f64::from(nu) + 0.5,
        None => (n - 0.5).floor() + 0.5,
    };
    if snapped < 0.0 {
        return Err(Error::domain(format!(
            "upper bound needs n ≥ 1/2: no half-odd order lies below n = {n}"
        )));
    }
    Ok(snapped)
}

pub(crate) fn check_snap_le_m(m: f64, snapped: f64, which: &str) -> Result<()> {
    if snapped > m {
        return Err(Error::domain(format!(
            "{which} bound needs m ≥ {snapped} (the snapped order), got m = {m}"
        )));
    }
    Ok(())
}
