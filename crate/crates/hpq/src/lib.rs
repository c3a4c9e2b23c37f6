//! Exact computation with bidegree spherical harmonics on the unit sphere of
//! C^n.
//!
//! The crate builds the spaces H(p,q) of harmonic polynomials that are
//! homogeneous of degree `p` in `z_1..z_n` and degree `q` in their
//! conjugates, entirely over Gaussian-rational arithmetic:
//!
//! - [`poly::BiPoly`]: sparse polynomials in `z` and `conj(z)` with exact
//!   coefficients, closed under product, Laplacian, radial dilation, and
//!   unitary substitution.
//! - [`sphere::SphereContext`]: exact integration over the sphere, harmonic
//!   bases with Gram matrices, zonal reproducing kernels, and the bidegree
//!   projections.
//! - [`pattern`] / [`family`]: the combinatorics of bidegree index sets —
//!   product-closure, the canonical algebra-pattern families, and the
//!   Mobius-ladder classification with its six fixpoints.
//! - [`span`]: exact bidegree supports of products H(p,q)·H(r,s), the
//!   analytic oracle for the combinatorial closure rule.
//! - [`mc`]: a floating-point Monte Carlo harness for the identities exact
//!   arithmetic cannot reach (Haar-unitary averages, Mobius compositions).
//! - [`verify`]: the bundled verification suites behind `hpq verify`.

pub mod error;
pub mod gauss;
pub mod matrix;
pub mod multiindex;
pub mod parse;
pub mod poly;
pub mod scalar;

pub mod harmonic;
pub mod project;
pub mod sphere;
pub mod zonal;

pub mod family;
pub mod pattern;

pub mod span;

pub mod mc;

pub mod verify;

/// Arbitrary-precision rational: always reduced, positive denominator.
pub type Rational = num_rational::BigRational;

/// Exact matrix over the Gaussian rationals, the workhorse grid type.
pub type RatMatrix = matrix::Matrix<gauss::GaussRational>;

pub use error::{Error, Result};
pub use gauss::GaussRational;
pub use matrix::Matrix;
pub use multiindex::{BiMonomial, MultiIndex};
pub use parse::parse_poly;
pub use pattern::{Bidegree, PatternBox};
pub use poly::BiPoly;
pub use sphere::SphereContext;
