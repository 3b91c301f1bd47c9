//! Closed-form bounds for T_B(m, n, r) at general order n.
//!
//! The lower bound is the closed form at the nearest half-odd order above n and the upper
//! bound the closed form at the nearest half-odd order below. Both rely on T decreasing in n,
//! which holds for r up to about 1 (more for larger B) and fails beyond; see
//! [`toronto_bounds`].

use super::{toronto_closed_form, TorontoParams};
use crate::bounds::{ceil_snap, check_snap_le_m, floor_snap, BoundPair};
use crate::error::{Error, Result};

/// Closed form at order ⌈n + 1/2⌉ − 1/2.
pub fn toronto_lower_bound(p: &TorontoParams) -> Result<f64> {
    let snapped = ceil_snap(p.n());
    check_snap_le_m(p.m(), snapped, "lower")?;
    toronto_closed_form(&p.with_n(snapped)?)
}

/// Closed form at order ⌊n − 1/2⌋ + 1/2. Fails for n < 1/2.
pub fn toronto_upper_bound(p: &TorontoParams) -> Result<f64> {
    let snapped = floor_snap(p.n())?;
    check_snap_le_m(p.m(), snapped, "upper")?;
    toronto_closed_form(&p.with_n(snapped)?)
}

/// Both bounds. Returns [`Error::BoundsInverted`] where T increases with n, since the pair
/// would then bracket nothing.
pub fn toronto_bounds(p: &TorontoParams) -> Result<BoundPair> {
    let lower = toronto_lower_bound(p)?;
    let upper = toronto_upper_bound(p)?;
    if lower > upper {
        return Err(Error::BoundsInverted { lower, upper });
    }
    Ok(BoundPair {
        lower,
        upper,
        n_lower_snap: ceil_snap(p.n()),
        n_upper_snap: floor_snap(p.n())?,
    })
}
