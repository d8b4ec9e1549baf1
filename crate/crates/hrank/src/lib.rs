//! Exact computation of the hermitian rank of polynomials and truncated
//! real-analytic functions on `C^n`, with the normal-form reduction and
//! pivot-structure machinery needed to certify the rank inequality
//! `rank(Q P^d) >= rank(P^d) = C(rank P + d - 1, d)` for bidegree-(1,1)
//! polynomials `P` with a zero set and functions `Q` nonvanishing at a
//! base point on it.

pub mod error;
pub mod scalar;
pub mod monomial;
pub mod poly;
pub mod linalg;
pub mod matrix;
pub mod index_sets;
pub mod normal_form;
pub mod jet;
pub mod parse;
pub mod random;
pub mod verify;
pub mod gallery;
pub mod report;

pub use error::Error;
pub use monomial::{ExponentVector, HoloMonomial, PolarizedMonomial};
pub use poly::{Bidegree, Point, PolarizedPolynomial};
pub use scalar::{Scalar, ScalarField};
