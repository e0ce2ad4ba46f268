//! Sparse multivariate polynomials over the rationals.

mod gcd;
mod matrix;
mod monomial;
mod order;
mod polynomial;

pub use gcd::{gcd, gcd_all, is_squarefree, squarefree_part};
pub use matrix::{PolyMatrix, RationalMatrix};
pub use monomial::Monomial;
pub use order::{OrderKind, TermOrder};
pub use polynomial::{default_var_names, rat, ratio, Polynomial, Rational, RationalPoint};
