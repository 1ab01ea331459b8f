//! Micropolar thin-film lubrication over riblet-textured walls.
//!
//! The crate computes the flow factor (`Theta`) entering the generalized
//! Reynolds equation of a micropolar film bounded by a rough wall, where
//! the riblet texture acts through effective wall coefficients obtained
//! from periodic half-strip cell problems. On top of that sit the
//! small-roughness developments, a closed-form Reynolds pressure, and a
//! quasi-static squeeze-film bearing simulation with half-life sweeps.
//!
//! Layout:
//!
//! * [`params`] - physical inputs, validation, derived scalars, config IO.
//! * [`kernels`] - stable hyperbolic kernels for the Newtonian limit.
//! * [`coeffs`] - closed-form profiles and flow factors per regime, in
//!   wall-exact and benchmark-tabulated formulations.
//! * [`asympt`] - small-roughness developments (`Theta_0`, `Theta_1`,
//!   profile series, pressure split).
//! * [`cell`] - riblet profiles and the Stokes/Laplace cell solves that
//!   produce the roughness energies `E` and `F`.
//! * [`lubrication`] - the 1D Reynolds pressure and its weak residual.
//! * [`bearing`] - squeeze-film ODE, half-life times, parameter sweeps.
//! * [`oracle`] - independent finite-difference solver for the wall-law
//!   boundary-value problem; the ground truth for the closed forms.
//! * [`cli`] - the command-line surface of the `riblube` binary.
//!
//! Start with the examples: each major capability has a runnable one
//! (`cargo run --example theta_curve`, `... --example riblet_energies`,
//! `... --example sweep_timeratio`, and so on).

pub mod asympt;
mod banded;
pub mod bearing;
pub mod cell;
pub mod cli;
pub mod coeffs;
pub mod csvout;
pub mod kernels;
pub mod lubrication;
pub mod oracle;
pub mod params;

pub use coeffs::{Formulation, Regime};
pub use params::{derive, validate, DerivedParams, FluidWallParams};
