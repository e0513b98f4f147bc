//! Numerical and symbolic workbench for spectral geometry on surfaces.
//!
//! The crate combines three layers:
//!
//! * exact arithmetic on hyperelliptic curves (divisors, Riemann-Roch,
//!   pencils) in [`curve`],
//! * finite-element Laplace spectra under conformal densities with conical
//!   singularities in [`mesh`] and [`spectral`], together with conformal
//!   maximization of the first normalized eigenvalue in [`maximize`],
//! * Weierstrass data for branched minimal immersions in [`weierstrass`] and
//!   integer bookkeeping for harmonic sequences in [`ledger`].
//!
//! The `spectralab` binary exposes every operation as a subcommand emitting a
//! common JSON report; see the crate README.

pub mod cli;
pub mod curve;
pub mod ledger;
pub mod maximize;
pub mod mesh;
pub mod report;
pub mod spectral;
pub mod weierstrass;

pub use report::Report;
