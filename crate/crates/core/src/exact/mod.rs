//! Exact-arithmetic kernel: rationals, polynomials, determinants, resultants
//! and real-root isolation. Every zero test in this module is exact.

mod matrix;
mod multipoly;
mod rational;
mod resultant;
mod ring;
mod roots;
mod unipoly;

pub use matrix::{determinant, MatrixError, SquareMatrix};
pub use multipoly::{mpoly_divide_exact, DivisionError, Monomial, MultiPoly, TermRecord, NVARS};
pub use rational::{rat, ParseRationalError, Rational};
pub use resultant::{resultant, resultant_prs, sylvester_from_coeffs, sylvester_matrix, ResultantError};
pub use ring::{ExactDiv, Ring};
pub use roots::{default_refinement_width, real_roots, real_roots_with_width, sturm_count, RealRoot, SturmChain};
pub use unipoly::{poly_eval, poly_gcd, UniPoly};
