//! Linear BDF2 projection schemes for the Landau-Lifshitz equation
//!
//! ```text
//! m_t = -m x Δm + α Δm + α |∇m|² m,   ∂_n m = 0,   |m| = 1
//! ```
//!
//! on the unit box in one, two or three dimensions. The diffusion term is
//! treated implicitly, the two nonlinear terms explicitly through a
//! second-order extrapolation, and a point-wise projection restores the unit
//! length after every step. The implicit part has constant coefficients and is
//! inverted exactly with a cosine transform.
//!
//! The crate is `no_std` (it needs `alloc`); the `std` feature only adds
//! `std::error::Error` impls.
#![cfg_attr(not(any(test, feature = "std")), no_std)]
#![deny(unsafe_code)]
#![warn(missing_docs)]
// `!(x > 0.0)` is used on purpose so that NaN is rejected too
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

mod error;
pub mod helmholtz;
pub mod mesh;
pub mod ops;
pub mod stepper;
pub mod verify;

pub use error::{Error, Result};
pub use helmholtz::{HelmholtzPlan, Modes};
pub use mesh::{GridSpec, ScalarField, VectorField};
pub use ops::{GradientField, Norms};
pub use stepper::{Algorithm, Forcing, SolverConfig, StepView, Stepper, StepperState};
