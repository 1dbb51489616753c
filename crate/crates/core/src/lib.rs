//! Exact decision procedure for smooth equivalence between Chen and Lorenz
//! systems.
//!
//! The [`equiv`] module matches the spectra of a Chen system's equilibria
//! against a hypothetical Lorenz system and eliminates the unknown Lorenz
//! parameter with a resultant, `M0`. A nonzero `M0` certifies that no Lorenz
//! system can be smoothly equivalent to the given Chen system. Everything
//! algebraic runs on exact rationals ([`exact`]); the [`dynamics`] module
//! adds floating-point corroboration (trajectories, volume contraction,
//! largest Lyapunov exponent).

pub mod cli;
pub mod dynamics;
pub mod equiv;
pub mod exact;
pub mod systems;
