//! Exact rational arithmetic for the combinatorics and analysis attached to
//! an ordered list of vectors: the realized matroid with its activities and
//! Tutte polynomials, the dual pair of polynomial spaces spanned by products
//! of linear forms and by kernels of cocircuit ideals, canonical dual bases
//! for both, forward exchange matroids and the standard basis families,
//! power-ideal kernels, and exact evaluation of truncated powers and box
//! splines.
//!
//! Everything is computed over arbitrary-precision rationals; every check in
//! the crate is an exact identity with zero tolerance. See the `examples/`
//! directory for one runnable walk-through per capability, and the
//! `zonotopal` binary for a scriptable JSON front end.

pub mod error;
pub mod fem;
pub mod io;
pub mod linalg;
pub mod matroid;
pub mod poly;
pub mod spaces;
pub mod spline;

pub use error::{Error, Result};
pub use linalg::{Matrix, Rational};
pub use matroid::{BasisId, TuttePolynomial, VectorList};
pub use poly::{HilbertVector, MPoly, Side};
pub use spaces::SpaceBasis;
pub use spline::GenericShift;
