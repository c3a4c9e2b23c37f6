//! Gaussian rationals: exact complex numbers with rational real and
//! imaginary parts. These are the coefficients of every polynomial in the
//! crate, even when the imaginary part is zero.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::Rational;

/// Exact complex number `re + im·i` with arbitrary-precision rational parts.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct GaussRational {
    pub re: Rational,
    pub im: Rational,
}

impl GaussRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        GaussRational { re, im }
    }

    /// Purely real value.
    pub fn from_rational(re: Rational) -> Self {
        GaussRational {
            re,
            im: Rational::zero(),
        }
    }

    /// Exact rational `num/den`. Panics if `den == 0`.
    pub fn from_ratio(num: i64, den: i64) -> Self {
        GaussRational::from_rational(Rational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn from_int(v: i64) -> Self {
        GaussRational::from_rational(Rational::from(BigInt::from(v)))
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        GaussRational {
            re: Rational::zero(),
            im: Rational::one(),
        }
    }

    pub fn conj(&self) -> Self {
        GaussRational {
            re: self.re.clone(),
            im: -self.im.clone(),
        }
    }

    /// `|x|^2 = x·conj(x)`, always a nonnegative rational.
    pub fn norm_sqr(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn recip(&self) -> Self {
        let n = self.norm_sqr();
        assert!(!n.is_zero(), "division by zero GaussRational");
        GaussRational {
            re: &self.re / &n,
            im: -(&self.im / &n),
        }
    }

    pub(crate) fn add_mul_in_place(&mut self, a: &Self, b: &Self) {
        self.re += &a.re * &b.re - &a.im * &b.im;
        self.im += &a.re * &b.im + &a.im * &b.re;
    }

    pub(crate) fn sub_mul_in_place(&mut self, a: &Self, b: &Self) {
        self.re -= &a.re * &b.re - &a.im * &b.im;
        self.im -= &a.re * &b.im + &a.im * &b.re;
    }

    /// Nearest `f64` complex value, for the Monte Carlo lane and display.
    pub fn to_complex64(&self) -> Complex64 {
        Complex64::new(
            self.re.to_f64().unwrap_or(f64::NAN),
            self.im.to_f64().unwrap_or(f64::NAN),
        )
    }
}

impl From<Rational> for GaussRational {
    fn from(re: Rational) -> Self {
        GaussRational::from_rational(re)
    }
}

impl Zero for GaussRational {
    fn zero() -> Self {
        GaussRational::default()
    }

    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for GaussRational {
    fn one() -> Self {
        GaussRational::from_rational(Rational::one())
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for GaussRational {
            type Output = GaussRational;
            fn $method(self, rhs: GaussRational) -> GaussRational {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&GaussRational> for GaussRational {
            type Output = GaussRational;
            fn $method(self, rhs: &GaussRational) -> GaussRational {
                (&self).$method(rhs)
            }
        }
        impl $trait<GaussRational> for &GaussRational {
            type Output = GaussRational;
            fn $method(self, rhs: GaussRational) -> GaussRational {
                self.$method(&rhs)
            }
        }
    };
}

impl Add<&GaussRational> for &GaussRational {
    type Output = GaussRational;
    fn add(self, rhs: &GaussRational) -> GaussRational {
        GaussRational {
            re: &self.re + &rhs.re,
            im: &self.im + &rhs.im,
        }
    }
}
forward_binop!(Add, add);

impl Sub<&GaussRational> for &GaussRational {
    type Output = GaussRational;
    fn sub(self, rhs: &GaussRational) -> GaussRational {
        GaussRational {
            re: &self.re - &rhs.re,
            im: &self.im - &rhs.im,
        }
    }
}
forward_binop!(Sub, sub);

impl Mul<&GaussRational> for &GaussRational {
    type Output = GaussRational;
    fn mul(self, rhs: &GaussRational) -> GaussRational {
        GaussRational {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }
}
forward_binop!(Mul, mul);

impl Div<&GaussRational> for &GaussRational {
    type Output = GaussRational;
    fn div(self, rhs: &GaussRational) -> GaussRational {
        self * rhs.recip()
    }
}
forward_binop!(Div, div);

impl Neg for GaussRational {
    type Output = GaussRational;
    fn neg(self) -> GaussRational {
        GaussRational {
            re: -self.re,
            im: -self.im,
        }
    }
}

impl Neg for &GaussRational {
    type Output = GaussRational;
    fn neg(self) -> GaussRational {
        GaussRational {
            re: -self.re.clone(),
            im: -self.im.clone(),
        }
    }
}

impl AddAssign<&GaussRational> for GaussRational {
    fn add_assign(&mut self, rhs: &GaussRational) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl SubAssign<&GaussRational> for GaussRational {
    fn sub_assign(&mut self, rhs: &GaussRational) {
        self.re -= &rhs.re;
        self.im -= &rhs.im;
    }
}

impl MulAssign<&GaussRational> for GaussRational {
    fn mul_assign(&mut self, rhs: &GaussRational) {
        *self = (&*self) * rhs;
    }
}

/// Renders a rational in the `num/den` text form, with `/den` omitted for
/// integers: `3`, `-1/2`.
pub fn rational_to_string(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Renders a rational always as an explicit `num/den` pair, the wire form
/// used in JSON reports.
pub fn rational_to_wire(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

impl fmt::Display for GaussRational {
    /// `3/5` for real values, `(1/2+1/3i)` otherwise — the coefficient forms
    /// accepted by the polynomial grammar.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return write!(f, "{}", rational_to_string(&self.re));
        }
        let sign = if self.im.is_negative() { "-" } else { "+" };
        write!(
            f,
            "({}{}{}i)",
            rational_to_string(&self.re),
            sign,
            rational_to_string(&self.im.abs())
        )
    }
}

impl Serialize for GaussRational {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut s = serializer.serialize_struct("GaussRational", 2)?;
        s.serialize_field("re", &rational_to_wire(&self.re))?;
        s.serialize_field("im", &rational_to_wire(&self.im))?;
        s.end()
    }
}

impl<'de> Deserialize<'de> for GaussRational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Wire {
            re: String,
            im: String,
        }
        let w = Wire::deserialize(deserializer)?;
        let re = crate::parse::parse_rational(&w.re).map_err(D::Error::custom)?;
        let im = crate::parse::parse_rational(&w.im).map_err(D::Error::custom)?;
        Ok(GaussRational::new(re, im))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(re: (i64, i64), im: (i64, i64)) -> GaussRational {
        GaussRational::new(
            Rational::new(BigInt::from(re.0), BigInt::from(re.1)),
            Rational::new(BigInt::from(im.0), BigInt::from(im.1)),
        )
    }

    #[test]
    fn conj_involution_and_norm() {
        let x = g((3, 5), (-4, 5));
        assert_eq!(x.conj().conj(), x);
        let n = (&x * x.conj()).re;
        assert_eq!(n, x.norm_sqr());
        assert!((&x * x.conj()).im.is_zero());
        assert_eq!(x.norm_sqr(), Rational::one());
    }

    #[test]
    fn division_inverts_multiplication() {
        let x = g((2, 3), (1, 7));
        let y = g((-5, 2), (1, 1));
        let q = &(&x * &y) / &y;
        assert_eq!(q, x);
        assert_eq!(&x * x.recip(), GaussRational::one());
    }

    #[test]
    fn display_forms() {
        assert_eq!(g((3, 5), (0, 1)).to_string(), "3/5");
        assert_eq!(g((0, 1), (1, 1)).to_string(), "(0+1i)");
        assert_eq!(g((1, 2), (-1, 3)).to_string(), "(1/2-1/3i)");
        assert_eq!(GaussRational::from_int(7).to_string(), "7");
    }
}
