//! Extended-precision scalars.
//!
//! [`Real`] and [`Cplx`] wrap MPFR/MPC values. Every value carries its own
//! precision; a binary operation produces a result at the larger of the two
//! operand precisions, and mixing with a primitive (`f64`, `i32`)
//! keeps the precision of the extended operand. Values built from a context
//! therefore stay at the working precision without any global state.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, DivAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use rug::float::Constant;
use rug::ops::{AddFrom, DivFrom, MulFrom, Pow, SubFrom};
use rug::Assign;
use rug::{Complex, Float};

/// Guard bits added on top of the requested decimal digits.
const GUARD_BITS: u32 = 16;

/// Binary precision needed to carry `digits` significant decimal digits.
pub fn digits_to_bits(digits: u32) -> u32 {
    (f64::from(digits) * std::f64::consts::LOG2_10).ceil() as u32 + GUARD_BITS
}

/// Decimal digits represented by `bits` (guard bits excluded).
pub fn bits_to_digits(bits: u32) -> u32 {
    (f64::from(bits.saturating_sub(GUARD_BITS)) / std::f64::consts::LOG2_10).floor() as u32
}

/// An extended-precision real number.
#[derive(Clone, PartialEq, PartialOrd)]
pub struct Real(Float);

impl Real {
    pub fn from_f64(x: f64, bits: u32) -> Real {
        Real(Float::with_val(bits, x))
    }

    pub fn from_int(n: i64, bits: u32) -> Real {
        Real(Float::with_val(bits, n))
    }

    /// An exact integer or rational rounded to `bits`.
    pub fn from_integer(n: &rug::Integer, bits: u32) -> Real {
        Real(Float::with_val(bits, n))
    }

    pub fn from_rational(q: &rug::Rational, bits: u32) -> Real {
        Real(Float::with_val(bits, q))
    }

    /// Parses a decimal string (`"0.7"`, `"-1e-3"`) at `bits` precision.
    pub fn parse(s: &str, bits: u32) -> Result<Real, ParseRealError> {
        let parsed = Float::parse(s.trim()).map_err(|_| ParseRealError(s.to_string()))?;
        Ok(Real(Float::with_val(bits, parsed)))
    }

    pub fn pi(bits: u32) -> Real {
        Real(Float::with_val(bits, Constant::Pi))
    }

    pub fn zero(bits: u32) -> Real {
        Real(Float::with_val(bits, 0))
    }

    pub fn one(bits: u32) -> Real {
        Real(Float::with_val(bits, 1))
    }

    /// `x` at this value's precision.
    pub fn like(&self, x: f64) -> Real {
        Real::from_f64(x, self.prec())
    }

    /// `n` at this value's precision.
    pub fn int_like(&self, n: i64) -> Real {
        Real::from_int(n, self.prec())
    }

    pub fn pi_like(&self) -> Real {
        Real::pi(self.prec())
    }

    /// Smallest positive value with `bits` significant bits relative to one.
    pub fn epsilon(bits: u32) -> Real {
        Real(Float::with_val(bits, Float::i_exp(1, 1 - bits as i32)))
    }

    pub fn prec(&self) -> u32 {
        self.0.prec()
    }

    /// Same value, re-rounded to `bits`.
    pub fn with_prec(&self, bits: u32) -> Real {
        Real(Float::with_val(bits, &self.0))
    }

    pub fn as_float(&self) -> &Float {
        &self.0
    }

    pub fn into_float(self) -> Float {
        self.0
    }

    pub fn from_float(f: Float) -> Real {
        Real(f)
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_finite(&self) -> bool {
        self.0.is_finite()
    }

    pub fn is_sign_negative(&self) -> bool {
        self.0.is_sign_negative()
    }

    /// Approximate `log10 |x|`, valid far outside the `f64` exponent range.
    pub fn log10_abs(&self) -> f64 {
        if self.0.is_zero() {
            return f64::NEG_INFINITY;
        }
        let (mantissa, exp) = self.0.to_f64_exp();
        mantissa.abs().log10() + f64::from(exp) * std::f64::consts::LOG10_2
    }

    pub fn abs(&self) -> Real {
        Real(self.0.clone().abs())
    }

    pub fn sqrt(&self) -> Real {
        Real(Float::with_val(self.prec(), self.0.sqrt_ref()))
    }

    pub fn square(&self) -> Real {
        Real(Float::with_val(self.prec(), self.0.square_ref()))
    }

    pub fn recip(&self) -> Real {
        Real(Float::with_val(self.prec(), self.0.recip_ref()))
    }

    pub fn exp(&self) -> Real {
        Real(Float::with_val(self.prec(), self.0.exp_ref()))
    }

    pub fn ln(&self) -> Real {
        Real(Float::with_val(self.prec(), self.0.ln_ref()))
    }

    pub fn sin(&self) -> Real {
        Real(Float::with_val(self.prec(), self.0.sin_ref()))
    }

    pub fn cos(&self) -> Real {
        Real(Float::with_val(self.prec(), self.0.cos_ref()))
    }

    pub fn tan(&self) -> Real {
        Real(Float::with_val(self.prec(), self.0.tan_ref()))
    }

    pub fn sin_cos(&self) -> (Real, Real) {
        let mut s = Float::new(self.prec());
        let mut c = Float::new(self.prec());
        (&mut s, &mut c).assign(self.0.sin_cos_ref());
        (Real(s), Real(c))
    }

    pub fn sinh(&self) -> Real {
        Real(Float::with_val(self.prec(), self.0.sinh_ref()))
    }

    pub fn cosh(&self) -> Real {
        Real(Float::with_val(self.prec(), self.0.cosh_ref()))
    }

    pub fn tanh(&self) -> Real {
        Real(Float::with_val(self.prec(), self.0.tanh_ref()))
    }

    pub fn coth(&self) -> Real {
        Real(Float::with_val(self.prec(), self.0.coth_ref()))
    }

    pub fn cot(&self) -> Real {
        Real(Float::with_val(self.prec(), self.0.cot_ref()))
    }

    pub fn asin(&self) -> Real {
        Real(Float::with_val(self.prec(), self.0.asin_ref()))
    }

    pub fn atan(&self) -> Real {
        Real(Float::with_val(self.prec(), self.0.atan_ref()))
    }

    /// Arithmetic-geometric mean of `self` and `other`.
    pub fn agm(&self, other: &Real) -> Real {
        let p = self.prec().max(other.prec());
        Real(Float::with_val(p, self.0.agm_ref(&other.0)))
    }

    pub fn powi(&self, n: i32) -> Real {
        Real(Float::with_val(self.prec(), (&self.0).pow(n)))
    }

    pub fn floor(&self) -> Real {
        Real(Float::with_val(self.prec(), self.0.floor_ref()))
    }

    pub fn round(&self) -> Real {
        Real(Float::with_val(self.prec(), self.0.round_ref()))
    }

    /// Nearest integer as `i64`; panics when the value does not fit.
    pub fn round_to_i64(&self) -> i64 {
        self.0
            .to_integer()
            .and_then(|i| i.to_i64())
            .expect("value out of i64 range")
    }

    pub fn max(self, other: Real) -> Real {
        if other > self {
            other
        } else {
            self
        }
    }

    pub fn min(self, other: Real) -> Real {
        if other < self {
            other
        } else {
            self
        }
    }

    /// Decimal string with `digits` significant digits, in a form that
    /// [`Real::parse`] reads back.
    pub fn to_decimal(&self, digits: u32) -> String {
        if self.0.is_zero() {
            return "0".to_string();
        }
        self.0.to_string_radix(10, Some(digits.max(1) as usize))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("not a decimal number: {0:?}")]
pub struct ParseRealError(pub String);

impl FromStr for Real {
    type Err = ParseRealError;

    /// Parses at 53 bits; use [`Real::parse`] to choose the precision.
    fn from_str(s: &str) -> Result<Real, ParseRealError> {
        Real::parse(s, 53)
    }
}

impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = f
            .precision()
            .map_or(bits_to_digits(self.prec()), |p| p as u32);
        f.write_str(&self.to_decimal(digits))
    }
}

impl fmt::Debug for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Real({})", self.to_decimal(20))
    }
}

impl PartialEq<f64> for Real {
    fn eq(&self, other: &f64) -> bool {
        self.0 == *other
    }
}

impl PartialOrd<f64> for Real {
    fn partial_cmp(&self, other: &f64) -> Option<Ordering> {
        self.0.partial_cmp(other)
    }
}

impl Neg for Real {
    type Output = Real;
    fn neg(self) -> Real {
        Real(-self.0)
    }
}

impl Neg for &Real {
    type Output = Real;
    fn neg(self) -> Real {
        Real(Float::with_val(self.prec(), -&self.0))
    }
}

macro_rules! real_binop {
    ($Op:ident, $op:ident, $OpAssign:ident, $op_assign:ident, $From:ident, $from:ident) => {
        impl $Op<&Real> for &Real {
            type Output = Real;
            fn $op(self, rhs: &Real) -> Real {
                let p = self.prec().max(rhs.prec());
                Real(Float::with_val(p, $Op::$op(&self.0, &rhs.0)))
            }
        }

        impl $Op<&Real> for Real {
            type Output = Real;
            fn $op(mut self, rhs: &Real) -> Real {
                if self.0.prec() < rhs.0.prec() {
                    self.0.set_prec(rhs.0.prec());
                }
                $OpAssign::$op_assign(&mut self.0, &rhs.0);
                self
            }
        }

        impl $Op<Real> for Real {
            type Output = Real;
            fn $op(self, rhs: Real) -> Real {
                $Op::$op(self, &rhs)
            }
        }

        impl $Op<Real> for &Real {
            type Output = Real;
            fn $op(self, mut rhs: Real) -> Real {
                if rhs.0.prec() < self.0.prec() {
                    rhs.0.set_prec(self.0.prec());
                }
                $From::$from(&mut rhs.0, &self.0);
                rhs
            }
        }

        impl $OpAssign<&Real> for Real {
            fn $op_assign(&mut self, rhs: &Real) {
                if self.0.prec() < rhs.0.prec() {
                    self.0.set_prec(rhs.0.prec());
                }
                $OpAssign::$op_assign(&mut self.0, &rhs.0);
            }
        }

        impl $OpAssign<Real> for Real {
            fn $op_assign(&mut self, rhs: Real) {
                $OpAssign::$op_assign(self, &rhs);
            }
        }

        real_binop!(@prim $Op, $op, $OpAssign, $op_assign, $From, $from, f64);
        real_binop!(@prim $Op, $op, $OpAssign, $op_assign, $From, $from, i32);
    };
    (@prim $Op:ident, $op:ident, $OpAssign:ident, $op_assign:ident, $From:ident, $from:ident, $T:ty) => {
        impl $Op<$T> for Real {
            type Output = Real;
            fn $op(mut self, rhs: $T) -> Real {
                $OpAssign::$op_assign(&mut self.0, rhs);
                self
            }
        }

        impl $Op<$T> for &Real {
            type Output = Real;
            fn $op(self, rhs: $T) -> Real {
                Real(Float::with_val(self.prec(), $Op::$op(&self.0, rhs)))
            }
        }

        impl $Op<Real> for $T {
            type Output = Real;
            fn $op(self, mut rhs: Real) -> Real {
                $From::$from(&mut rhs.0, self);
                rhs
            }
        }

        impl $Op<&Real> for $T {
            type Output = Real;
            fn $op(self, rhs: &Real) -> Real {
                Real(Float::with_val(rhs.prec(), $Op::$op(self, &rhs.0)))
            }
        }

        impl $OpAssign<$T> for Real {
            fn $op_assign(&mut self, rhs: $T) {
                $OpAssign::$op_assign(&mut self.0, rhs);
            }
        }
    };
}

real_binop!(Add, add, AddAssign, add_assign, AddFrom, add_from);
real_binop!(Sub, sub, SubAssign, sub_assign, SubFrom, sub_from);
real_binop!(Mul, mul, MulAssign, mul_assign, MulFrom, mul_from);
real_binop!(Div, div, DivAssign, div_assign, DivFrom, div_from);

impl<'a> std::iter::Sum<&'a Real> for Real {
    /// Panics on an empty iterator: there is no precision to give the zero.
    fn sum<I: Iterator<Item = &'a Real>>(mut iter: I) -> Real {
        let first = iter
            .next()
            .expect("sum of an empty sequence of Reals")
            .clone();
        iter.fold(first, |acc, x| acc + x)
    }
}

/// An extended-precision complex number.
#[derive(Clone, PartialEq)]
pub struct Cplx(Complex);

impl Cplx {
    pub fn new(re: &Real, im: &Real) -> Cplx {
        let p = re.prec().max(im.prec());
        Cplx(Complex::with_val(p, (&re.0, &im.0)))
    }

    pub fn from_real(re: &Real) -> Cplx {
        Cplx(Complex::with_val(re.prec(), (&re.0, 0)))
    }

    /// The purely imaginary number `i·im`.
    pub fn imag(im: &Real) -> Cplx {
        Cplx(Complex::with_val(im.prec(), (0, &im.0)))
    }

    pub fn zero(bits: u32) -> Cplx {
        Cplx(Complex::new(bits))
    }

    pub fn prec(&self) -> u32 {
        self.0.prec().0.max(self.0.prec().1)
    }

    pub fn re(&self) -> Real {
        Real(self.0.real().clone())
    }

    pub fn im(&self) -> Real {
        Real(self.0.imag().clone())
    }

    pub fn as_complex(&self) -> &Complex {
        &self.0
    }

    pub fn abs(&self) -> Real {
        Real(Float::with_val(self.prec(), self.0.abs_ref()))
    }

    pub fn conj(&self) -> Cplx {
        Cplx(Complex::with_val(self.prec(), self.0.conj_ref()))
    }

    pub fn exp(&self) -> Cplx {
        Cplx(Complex::with_val(self.prec(), self.0.exp_ref()))
    }

    pub fn ln(&self) -> Cplx {
        Cplx(Complex::with_val(self.prec(), self.0.ln_ref()))
    }

    pub fn sin(&self) -> Cplx {
        Cplx(Complex::with_val(self.prec(), self.0.sin_ref()))
    }

    pub fn cos(&self) -> Cplx {
        Cplx(Complex::with_val(self.prec(), self.0.cos_ref()))
    }

    pub fn square(&self) -> Cplx {
        Cplx(Complex::with_val(self.prec(), self.0.square_ref()))
    }

    pub fn recip(&self) -> Cplx {
        Cplx(Complex::with_val(self.prec(), self.0.recip_ref()))
    }

    pub fn powi(&self, n: i32) -> Cplx {
        Cplx(Complex::with_val(self.prec(), (&self.0).pow(n)))
    }

    pub fn is_zero(&self) -> bool {
        self.0.real().is_zero() && self.0.imag().is_zero()
    }

    pub fn to_decimal(&self, digits: u32) -> (String, String) {
        (self.re().to_decimal(digits), self.im().to_decimal(digits))
    }
}

impl fmt::Display for Cplx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = f
            .precision()
            .map_or(bits_to_digits(self.prec()), |p| p as u32);
        let (re, im) = self.to_decimal(digits);
        write!(f, "({re}, {im})")
    }
}

impl fmt::Debug for Cplx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (re, im) = self.to_decimal(20);
        write!(f, "Cplx({re}, {im})")
    }
}

impl Neg for Cplx {
    type Output = Cplx;
    fn neg(self) -> Cplx {
        Cplx(-self.0)
    }
}

impl Neg for &Cplx {
    type Output = Cplx;
    fn neg(self) -> Cplx {
        Cplx(Complex::with_val(self.prec(), -&self.0))
    }
}

macro_rules! cplx_binop {
    ($Op:ident, $op:ident, $OpAssign:ident, $op_assign:ident) => {
        impl $Op<&Cplx> for &Cplx {
            type Output = Cplx;
            fn $op(self, rhs: &Cplx) -> Cplx {
                let p = self.prec().max(rhs.prec());
                Cplx(Complex::with_val(p, $Op::$op(&self.0, &rhs.0)))
            }
        }
        impl $Op<&Cplx> for Cplx {
            type Output = Cplx;
            fn $op(self, rhs: &Cplx) -> Cplx {
                $Op::$op(&self, rhs)
            }
        }
        impl $Op<Cplx> for Cplx {
            type Output = Cplx;
            fn $op(self, rhs: Cplx) -> Cplx {
                $Op::$op(&self, &rhs)
            }
        }
        impl $Op<Cplx> for &Cplx {
            type Output = Cplx;
            fn $op(self, rhs: Cplx) -> Cplx {
                $Op::$op(self, &rhs)
            }
        }
        impl $Op<&Real> for &Cplx {
            type Output = Cplx;
            fn $op(self, rhs: &Real) -> Cplx {
                let p = self.prec().max(rhs.prec());
                Cplx(Complex::with_val(p, $Op::$op(&self.0, &rhs.0)))
            }
        }
        impl $Op<&Real> for Cplx {
            type Output = Cplx;
            fn $op(self, rhs: &Real) -> Cplx {
                $Op::$op(&self, rhs)
            }
        }
        impl $Op<Real> for Cplx {
            type Output = Cplx;
            fn $op(self, rhs: Real) -> Cplx {
                $Op::$op(&self, &rhs)
            }
        }
        impl $Op<&Cplx> for &Real {
            type Output = Cplx;
            fn $op(self, rhs: &Cplx) -> Cplx {
                $Op::$op(&Cplx::from_real(self), rhs)
            }
        }
        impl $Op<Cplx> for Real {
            type Output = Cplx;
            fn $op(self, rhs: Cplx) -> Cplx {
                $Op::$op(&Cplx::from_real(&self), &rhs)
            }
        }
        impl $Op<f64> for &Cplx {
            type Output = Cplx;
            fn $op(self, rhs: f64) -> Cplx {
                Cplx(Complex::with_val(self.prec(), $Op::$op(&self.0, rhs)))
            }
        }
        impl $Op<f64> for Cplx {
            type Output = Cplx;
            fn $op(self, rhs: f64) -> Cplx {
                $Op::$op(&self, rhs)
            }
        }
        impl $Op<i32> for &Cplx {
            type Output = Cplx;
            fn $op(self, rhs: i32) -> Cplx {
                Cplx(Complex::with_val(self.prec(), $Op::$op(&self.0, rhs)))
            }
        }
        impl $Op<i32> for Cplx {
            type Output = Cplx;
            fn $op(self, rhs: i32) -> Cplx {
                $Op::$op(&self, rhs)
            }
        }
        impl $OpAssign<&Cplx> for Cplx {
            fn $op_assign(&mut self, rhs: &Cplx) {
                *self = $Op::$op(&*self, rhs);
            }
        }
        impl $OpAssign<Cplx> for Cplx {
            fn $op_assign(&mut self, rhs: Cplx) {
                *self = $Op::$op(&*self, &rhs);
            }
        }
        impl $OpAssign<&Real> for Cplx {
            fn $op_assign(&mut self, rhs: &Real) {
                *self = $Op::$op(&*self, rhs);
            }
        }
    };
}

cplx_binop!(Add, add, AddAssign, add_assign);
cplx_binop!(Sub, sub, SubAssign, sub_assign);
cplx_binop!(Mul, mul, MulAssign, mul_assign);
cplx_binop!(Div, div, DivAssign, div_assign);

/// Relative distance `|a − b| / max(|b|, floor)`.
pub fn rel_diff(a: &Real, b: &Real, floor: f64) -> Real {
    let scale = b.abs().max(b.like(floor));
    (a - b).abs() / scale
}

/// Serializes as a decimal string carrying every significant digit of the
/// value's precision.
impl serde::Serialize for Real {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        ser.serialize_str(&self.to_decimal(bits_to_digits(self.prec()).max(17)))
    }
}

/// Reads a decimal string (or a plain JSON number) at a precision wide
/// enough for the digits present.
impl<'de> serde::Deserialize<'de> for Real {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> Result<Real, D::Error> {
        #[derive(serde::Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Text(String),
            Number(f64),
        }
        match Repr::deserialize(de)? {
            Repr::Text(s) => {
                let digits = s.chars().filter(|c| c.is_ascii_digit()).count() as u32;
                Real::parse(&s, digits_to_bits(digits.max(17))).map_err(serde::de::Error::custom)
            }
            Repr::Number(x) => Ok(Real::from_f64(x, 53)),
        }
    }
}
