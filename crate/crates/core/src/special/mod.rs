//! Foundation special functions: incomplete gamma, Pochhammer symbol, modified Bessel I_n,
//! and the Marcum Q-function.

mod bessel;
mod gamma;
mod marcum;

pub use bessel::{
    bessel_i_half_odd, bessel_i_series, bessel_i_series_reduced, half_odd_index, is_half_odd,
    BesselArgs, SERIES_MAX_ARG, SERIES_MAX_TERMS,
};
pub(crate) use bessel::{half_odd_coefficient, spherical_reduced};
pub use gamma::{
    gamma, gaussian_moment, gaussian_moment_between, lower_gamma, lower_incomplete_gamma,
    pochhammer, regularized_gamma_p, regularized_gamma_q, GammaArgs,
};
pub use marcum::{marcum_q, marcum_q_complement, MarcumArgs};
