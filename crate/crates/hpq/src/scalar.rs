//! Scalar abstraction for the exact linear algebra.
//!
//! The elimination and solve routines in [`crate::matrix`] are generic over
//! any exact field with a conjugation, so the same code runs over plain
//! rationals (harmonic-basis kernels, whose matrices are integer-valued) and
//! over Gaussian rationals (Gram solves, zonal kernels). Floating-point types
//! deliberately do not implement this trait: every consumer relies on exact
//! equality against zero.

use std::fmt::{Debug, Display};
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::gauss::GaussRational;
use crate::Rational;

/// An exact field scalar with conjugation.
pub trait Scalar:
    Clone
    + PartialEq
    + Debug
    + Display
    + Zero
    + One
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    /// Complex conjugate; the identity on real scalars.
    fn conj(&self) -> Self;

    /// `a * b` without consuming the operands.
    fn mul_ref(a: &Self, b: &Self) -> Self {
        a.clone() * b.clone()
    }

    /// `a / b` without consuming the operands. `b` must be nonzero.
    fn div_ref(a: &Self, b: &Self) -> Self {
        a.clone() / b.clone()
    }

    /// `self += a * b`, the fused update used by the hot matrix loops.
    fn add_assign_mul(&mut self, a: &Self, b: &Self) {
        *self = self.clone() + Self::mul_ref(a, b);
    }

    /// `self -= a * b`.
    fn sub_assign_mul(&mut self, a: &Self, b: &Self) {
        *self = self.clone() - Self::mul_ref(a, b);
    }
}

impl Scalar for Rational {
    fn conj(&self) -> Self {
        self.clone()
    }

    fn mul_ref(a: &Self, b: &Self) -> Self {
        a * b
    }

    fn div_ref(a: &Self, b: &Self) -> Self {
        a / b
    }

    fn add_assign_mul(&mut self, a: &Self, b: &Self) {
        *self += a * b;
    }

    fn sub_assign_mul(&mut self, a: &Self, b: &Self) {
        *self -= a * b;
    }
}

impl Scalar for GaussRational {
    fn conj(&self) -> Self {
        GaussRational::conj(self)
    }

    fn mul_ref(a: &Self, b: &Self) -> Self {
        a * b
    }

    fn div_ref(a: &Self, b: &Self) -> Self {
        a / b
    }

    fn add_assign_mul(&mut self, a: &Self, b: &Self) {
        self.add_mul_in_place(a, b);
    }

    fn sub_assign_mul(&mut self, a: &Self, b: &Self) {
        self.sub_mul_in_place(a, b);
    }
}
