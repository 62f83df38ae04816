//! Finite-dimensional normed spaces and their duals, the isometric embedding
//! of a space into sup-normed functions on its dual unit sphere, vector-valued
//! function spaces over a finite set, and kernel operators with exact and
//! estimated operator-norm bounds.
//!
//! Every inequality the library computes with is also machine-checkable:
//! [`suite::run_suite`] drives randomized, seeded checks of all of them and
//! produces a deterministic [`suite::Report`].

pub mod check;
pub mod error;
pub mod function_space;
pub mod io;
pub mod kernel;
pub mod norm;
pub mod pnorm;
pub mod polytope;
pub mod random;
pub mod rng;
pub mod sphere;
pub mod suite;
pub mod tol;

pub use error::{Error, Result};
pub use function_space::{IndexSet, ScalarFunction, VValuedFunction};
pub use kernel::Kernel;
pub use norm::{Exponent, Family, Field, Functional, NormSpec, Scalar, Vector};
