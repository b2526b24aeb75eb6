//! Exact computational algebra for bound quiver algebras `KQ/I`.
//!
//! The crate builds finite-dimensional quotients of path algebras over the
//! rationals or a prime field, entirely with exact arithmetic:
//!
//! * [`quiver`] — quivers, paths and finitely supported path-algebra elements;
//! * [`order`] — the length-lexicographic admissible order on paths;
//! * [`linalg`] — sparse exact row reduction, ranks and kernels;
//! * [`groebner`] — noncommutative Buchberger completion with a finiteness
//!   certificate;
//! * [`algebra`] — quotient algebras presented by a reduced Groebner basis and
//!   their normal-word bases;
//! * [`stretch`] — the arrow-stretching construction `Q -> Q~` together with
//!   the corner-algebra, dimension and stratifying-ideal verifiers;
//! * [`homology`] — structure-constant algebras (opposite, enveloping),
//!   finite-dimensional right modules, minimal projective resolutions,
//!   `d`-Koszul / `(D,A)`-stacked detectors and the bimodule dimension ledger.
//!
//! Everything is deterministic: fixed monomial order, fixed pivot rules, no
//! floating point anywhere.

pub mod algebra;
pub mod groebner;
pub mod homology;
pub mod linalg;
pub mod order;
pub mod quiver;
pub mod scalar;
pub mod stretch;

pub use scalar::{FieldSpec, Scalar};
