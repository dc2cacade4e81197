//! Numerical toolkit for meromorphic connections `∇ = d − Φ` on the punctured
//! Riemann sphere with matrix structure group.
//!
//! The crate covers five layers that build on each other:
//!
//! * [`algebra`] — dense complex matrices constrained to `gl_n`/`sl_n`,
//!   commutators, adjoint actions, matrix exponentials and joint commutants;
//! * [`geometry`] — the affine chart of the sphere: punctures, piecewise
//!   paths (polylines and circular arcs) and third-kind differentials;
//! * [`connection`] — rational gauge potentials stored by Laurent data, and
//!   [`transport`] — adaptive Runge–Kutta parallel transport, flat adjoint
//!   sections and monodromy;
//! * [`regint`] — regularised divergent endpoint integrals together with
//!   their one-parameter envelope families;
//! * [`homology`], [`deformation`], [`envelope`] — chains with flat local
//!   coefficients and the graded boundary operator, cycle-driven deformations
//!   of the gauge potential, and the renormalised integral representation of
//!   adjoint flat sections.
//!
//! All values are immutable after construction and all operations are pure;
//! everything is safe to use from multiple threads. With the default
//! `parallel` feature, batch operations (quadrature nodes, per-cell
//! transports, sample grids) run on rayon; without it the same code runs
//! sequentially.

pub mod algebra;
pub mod connection;
pub mod deformation;
pub mod envelope;
pub mod error;
mod exec;
pub mod geometry;
pub mod homology;
pub mod regint;
pub mod transport;
pub mod verify;
pub mod wire;

pub use error::{Error, ErrorKind, Result};
pub use num_complex::Complex64;

/// Dense complex matrix used for all Lie-algebra and group values.
pub type CMatrix = nalgebra::DMatrix<Complex64>;
