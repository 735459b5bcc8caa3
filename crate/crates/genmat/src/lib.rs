//! Exact symbolic calculus for a pair of generic traceless 2x2 matrices.
//!
//! The crate works in the associative algebra generated by two generic
//! traceless 2x2 matrices `x` and `y` over the rationals.  Every element
//! is a combination of `1`, `x`, `y`, and `z = [x, y]` with coefficients
//! that are polynomials in the three trace invariants `t = tr(x²)`,
//! `u = tr(y²)`, `v = tr(xy)`.  On top of that normal form the crate
//! provides:
//!
//! - exact polynomial and truncated-series arithmetic over the invariants
//!   ([`poly`], [`series`], [`uniseries`]);
//! - the four-component normal form with its closed multiplication rule,
//!   brackets, and powers of the adjoint action ([`walg`]);
//! - membership in the Lie subalgebra spanned by brackets, with the
//!   rewriting of members into explicit bracket words ([`lie`]);
//! - the adjoint calculus: 3x3 adjoint matrices, their closed-form
//!   exponentials, exact logarithms, and the induced composition law
//!   ([`inner`], [`mat3`]);
//! - a three-dimensional companion algebra whose adjoint calculus mirrors
//!   the construction and cross-checks it ([`g3`]);
//! - oracles that do the same computations from first principles: the
//!   free associative algebra with its exp/log/composition series
//!   ([`free`]) and a nilpotent 2x2 worked example ([`nilpotent`]);
//! - generic-matrix ground truth via explicit 2x2 products ([`mat2`]);
//! - a seeded verification suite exercising all of the above ([`verify`]).
//!
//! Heavy polynomial products run data-parallel under the `parallel`
//! feature (enabled by default) and sequentially otherwise.

pub mod error;
pub mod free;
pub mod g3;
pub mod inner;
pub mod lie;
pub mod mat2;
pub mod mat3;
pub mod nilpotent;
pub mod poly;
pub mod rat;
pub mod series;
pub mod uniseries;
pub mod verify;
pub mod walg;

pub use error::{Error, NotLieReason, Result};
pub use free::FreeSeries;
pub use g3::G3Element;
pub use inner::{AdMatrix, AutMatrix, LogTriple};
pub use lie::{LieDecomp, LieExpr};
pub use mat2::{Gen, GenMat};
pub use mat3::Mat3;
pub use nilpotent::{NilpMat, NilpotentReport};
pub use poly::{Poly, VarSpec};
pub use rat::Rat;
pub use series::TruncSeries;
pub use uniseries::UniSeries;
pub use verify::Outcome;
pub use walg::WElement;
