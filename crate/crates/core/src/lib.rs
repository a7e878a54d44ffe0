//! Exact intertwining (supersymmetric) hierarchies for a charged particle in the
//! cylindrical magnetic field of `A = (c k / (e rho)) e_z`, together with an
//! independent finite-difference oracle that checks every closed-form result.
//!
//! * [`expalg`]: exact exponential-polynomial algebra all wavefunctions live in.
//! * [`nr`]: the shape-invariant Schrodinger hierarchy.
//! * [`dirac`]: the matrix intertwiners and four eigenvector families of the
//!   rotated radial Dirac operator.
//! * [`oracle`]: finite-difference eigen-solvers, residuals and quadrature that
//!   only ever see sampled values and raw parameters.
//! * [`cli`]: table and figure emission plus a one-shot verification suite.

pub mod cli;
pub mod dirac;
pub mod error;
pub mod expalg;
pub mod nr;
pub mod oracle;
pub mod params;

pub use error::{Error, Result};
pub use expalg::{Context, DecayIndex, ExpoPoly, ExpoTerm, Exponent};
pub use params::{DiracParams, NRParams, PhysicalParams};
