//! Quantized circulating states of a ring-confined Bose-Einstein condensate
//! threaded by an Aharonov-Casher phase.
//!
//! The crate is organised bottom-up:
//!
//! - [`units`] turns laboratory knobs (charge densities, radii, fields) into
//!   the dimensionless phase `eta`.
//! - [`reduction`] maps a toroidally trapped 3D condensate onto the two numbers
//!   of the 1D ring model, `eta` and the interaction `u_tilde`.
//! - [`ring`] holds the closed-form theory: plane-wave chemical potentials,
//!   the ground winding, and the two-mode barrier.
//! - [`solver`] is an independent spectral imaginary-time solver for the 1D
//!   nonlinear equation on the ring.
//! - [`sweeps`] builds the staircase, landscape and hysteresis tables.
//! - [`cli`] wires everything to the `acring` command line tool.

pub mod cli;
mod error;
pub mod reduction;
pub mod ring;
pub mod solver;
pub mod sweeps;
pub mod units;

pub use error::{Error, Result};
pub use reduction::{RingParams, TrapSetup};
pub use ring::{GroundWindingResult, MixedState, PlaneWaveState};
pub use solver::{GroundStateReport, RingWavefunction, SolverSettings};
