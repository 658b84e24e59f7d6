//! Exact algebra for comparing the two natural volume forms on `GL_n`.
//!
//! Everything here is exact: scalars live in `Q(i)[pi]`, differential forms
//! at the identity are sparse elements of the exterior algebra on the `n^2`
//! coordinate one-forms `dz_ij`, and the Chevalley–Eilenberg complex of
//! `gl_n` is assembled over the integers. The crate is `no_std` and only
//! needs `alloc`; numerical integration and IO live in the `glvol` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod error;
pub mod exterior;
pub mod fiber_integration;
pub mod lie_cohomology;
pub mod linalg;
pub mod scalars;

pub use error::{Error, Result};
pub use exterior::{Blade, CoordIndex, Form, TangentVector};
pub use fiber_integration::{
    basis_change_factor, contract_step, derive_alpha, lift_frame, sphere_surface, superfactorial,
    volume_closed_form, volume_recursive, LiftFrame, RecursionTrace, VolumeResult,
};
pub use lie_cohomology::{betti, expected_poincare, BettiTable, CEComplex};
pub use scalars::{ExactScalar, GaussianRational};
