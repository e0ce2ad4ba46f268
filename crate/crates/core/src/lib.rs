//! Exact symbolic analysis of polynomial automorphisms of affine space and
//! of the hypersurfaces contained in their fixed-point sets.
//!
//! The crate is layered bottom-up:
//!
//! * [`poly`]: sparse rational polynomials, gcd, squarefree parts, Bareiss
//!   determinants;
//! * [`groebner`]: Buchberger bases and the membership, emptiness and
//!   radical-membership certificates;
//! * [`factor`]: univariate factorization over the rationals (Hensel lifting
//!   and recombination) and a Kronecker-substitution irreducibility test;
//! * [`automorphism`]: maps, certified automorphisms, Jacobians, fixed loci;
//! * [`theorem`]: smoothness checks, ruled witnesses and the full
//!   [`FixReport`](theorem::FixReport).

pub mod automorphism;
pub mod error;
pub mod factor;
pub mod groebner;
pub mod poly;
pub mod random;
pub mod theorem;

pub use error::{Error, Result};
pub use poly::{Monomial, Polynomial, Rational, RationalPoint, TermOrder};
