//! Exact character computations for free alternative algebras: Laurent
//! polynomials in the sl3 torus variables, truncated series, residue checks
//! of dimension sequences, and the symmetric-function prediction of the
//! symmetric-group modules `Alt(n)`.

pub mod conjecture;
pub mod dims;
pub mod laurent;
pub mod sl3char;
pub mod symfunc;
pub mod zseries;

pub use laurent::{Coeff, IntLaurent, LaurentPoly, RatLaurent};
pub use zseries::TruncatedSeries;
