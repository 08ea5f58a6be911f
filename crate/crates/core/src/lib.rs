//! Gabor analysis on finite abelian groups.
//!
//! The crate is organized bottom-up:
//!
//! * [`group`]: group arithmetic, subgroups, annihilators, transversals and
//!   the Haar weight chain.
//! * [`numerics`]: dense complex linear algebra (Hermitian eigenvalues,
//!   singular values, positive-definite solves).
//! * [`transforms`]: Fourier, Zak, fiberization and short-time Fourier
//!   transforms.
//! * [`gabor`]: Gabor systems, their frame operators, Zak-domain frame
//!   bounds, dual windows and adjoint systems.
//! * [`oracle`]: a brute-force reference built only on `group` and
//!   `numerics`.

pub mod error;
pub mod gabor;
pub mod group;
pub mod numerics;
pub mod oracle;
pub mod rng;
pub mod transforms;

pub use error::{Error, Result};
pub use num_complex::Complex64;
