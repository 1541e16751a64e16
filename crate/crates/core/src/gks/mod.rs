//! Gas-kinetic BGK interface flux.

pub mod flux;
pub mod moments;
pub mod slope;

pub use flux::{
    collision_time, compatibility_residual, equilibrium_merge, flux_and_derivative, gks_flux, gks_time_integrated_flux,
    GaussPointInput, GksInterfaceState, GksParams,
};
pub use moments::{moments, Half, MomentTable};
pub use slope::{micro_slope, MicroSlope};
