use std::fmt::Debug;
use std::ops::Neg;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Num, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact rational number backed by arbitrary-precision integers, always kept
/// in lowest terms with a positive denominator.
pub type Rational = BigRational;

/// Number type the polynomial and hypergeometric kernels are generic over.
///
/// Implemented for `f64` (production path) and [`Rational`] (exact oracle path).
pub trait Scalar: Clone + Debug + PartialEq + Num + Neg<Output = Self> {
    fn from_int(n: i64) -> Self;

    fn from_ratio(num: i64, den: i64) -> Self;

    /// `Some(n)` when the value is exactly the integer `n`.
    fn as_integer(&self) -> Option<i64>;

    fn to_f64(&self) -> f64;

    fn from_rational(q: &Rational) -> Self;

    /// Generalized binomial coefficient `C(a, r) = a (a-1) ... (a-r+1) / r!`.
    fn binom(a: &Self, r: u32) -> Self {
        let mut acc = Self::one();
        for i in 0..r {
            acc = acc * (a.clone() - Self::from_int(i as i64)) / Self::from_int(i as i64 + 1);
        }
        acc
    }

    /// `falling(a, r) / falling(b, r)` where `falling(a, r) = a (a-1) ... (a-r+1)`.
    fn falling_ratio(a: &Self, b: &Self, r: u32) -> Self {
        let mut num = Self::one();
        let mut den = Self::one();
        for i in 0..r {
            let shift = Self::from_int(i as i64);
            num = num * (a.clone() - shift.clone());
            den = den * (b.clone() - shift);
        }
        num / den
    }
}

/// Sizes above which the `f64` path switches to log-domain Gamma ratios.
pub(crate) const LOG_DOMAIN_THRESHOLD: f64 = 60.0;

impl Scalar for f64 {
    fn from_int(n: i64) -> Self {
        n as f64
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        num as f64 / den as f64
    }

    fn as_integer(&self) -> Option<i64> {
        if self.is_finite() && self.fract() == 0.0 && self.abs() < 9.0e15 {
            Some(*self as i64)
        } else {
            None
        }
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn from_rational(q: &Rational) -> Self {
        rational_to_f64(q)
    }

    fn binom(a: &Self, r: u32) -> Self {
        if (r as f64) <= LOG_DOMAIN_THRESHOLD && a.abs() <= LOG_DOMAIN_THRESHOLD {
            let mut acc = 1.0;
            for i in 0..r {
                acc = acc * (a - i as f64) / (i as f64 + 1.0);
            }
            return acc;
        }
        let (ln_num, sign) = match ln_abs_falling(*a, r) {
            Some(v) => v,
            None => return 0.0,
        };
        sign * (ln_num - libm::lgamma(r as f64 + 1.0)).exp()
    }

    fn falling_ratio(a: &Self, b: &Self, r: u32) -> Self {
        if (r as f64) <= LOG_DOMAIN_THRESHOLD
            && a.abs() <= LOG_DOMAIN_THRESHOLD
            && b.abs() <= LOG_DOMAIN_THRESHOLD
        {
            let mut acc = 1.0;
            for i in 0..r {
                acc *= (a - i as f64) / (b - i as f64);
            }
            return acc;
        }
        let (ln_a, sa) = match ln_abs_falling(*a, r) {
            Some(v) => v,
            None => return 0.0,
        };
        match ln_abs_falling(*b, r) {
            Some((ln_b, sb)) => sa * sb * (ln_a - ln_b).exp(),
            None => f64::INFINITY,
        }
    }
}

/// `(ln |falling(a, r)|, sign)`, or `None` when the product vanishes.
fn ln_abs_falling(a: f64, r: u32) -> Option<(f64, f64)> {
    if r == 0 {
        return Some((0.0, 1.0));
    }
    let last = a - (r as f64 - 1.0);
    if last > 0.0 {
        // all factors positive
        return Some((libm::lgamma(a + 1.0) - libm::lgamma(last), 1.0));
    }
    let mut ln = 0.0;
    let mut sign = 1.0;
    for i in 0..r {
        let f = a - i as f64;
        if f == 0.0 {
            return None;
        }
        if f < 0.0 {
            sign = -sign;
        }
        ln += f.abs().ln();
    }
    Some((ln, sign))
}

impl Scalar for BigRational {
    fn from_int(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }

    fn as_integer(&self) -> Option<i64> {
        if self.is_integer() {
            ToPrimitive::to_i64(&self.to_integer())
        } else {
            None
        }
    }

    fn to_f64(&self) -> f64 {
        rational_to_f64(self)
    }

    fn from_rational(q: &Rational) -> Self {
        q.clone()
    }
}

/// Lossy conversion that stays accurate when numerator and denominator are
/// individually far outside the `f64` range.
pub fn rational_to_f64(q: &Rational) -> f64 {
    if q.is_zero() {
        return 0.0;
    }
    if let Some(v) = ToPrimitive::to_f64(q) {
        if v.is_finite() && v != 0.0 {
            return v;
        }
    }
    let sign = if q.is_negative() { -1.0 } else { 1.0 };
    sign * ln_abs_rational(q).exp()
}

/// `ln |q|` for a nonzero rational of any size.
pub fn ln_abs_rational(q: &Rational) -> f64 {
    ln_abs_bigint(q.numer()) - ln_abs_bigint(q.denom())
}

fn ln_abs_bigint(n: &BigInt) -> f64 {
    let bits = n.bits();
    if bits <= 1000 {
        return ToPrimitive::to_f64(&n.abs()).map_or(f64::INFINITY, f64::ln);
    }
    let shift = bits - 64;
    let top = ToPrimitive::to_f64(&(n.abs() >> shift)).unwrap_or(f64::NAN);
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

/// Parse `"num/den"` or an integer string into an exact rational.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parameter(format!("expected a rational like \"1/3\", got {s:?}"));
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num = BigInt::from_str_radix(num, 10).map_err(|_| bad())?;
    let den = BigInt::from_str_radix(den, 10).map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(num, den))
}

/// Exact square root when `q` is the square of a rational.
pub fn rational_sqrt(q: &Rational) -> Option<Rational> {
    if q.is_negative() {
        return None;
    }
    let n = q.numer().sqrt();
    let d = q.denom().sqrt();
    if &(&n * &n) == q.numer() && &(&d * &d) == q.denom() {
        Some(BigRational::new(n, d))
    } else {
        None
    }
}

/// Integer power of a scalar by repeated squaring; negative exponents invert.
pub fn powi<T: Scalar>(x: &T, e: i64) -> T {
    let mut base = if e < 0 {
        T::one() / x.clone()
    } else {
        x.clone()
    };
    let mut e = e.unsigned_abs();
    let mut acc = T::one();
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base.clone();
        }
        base = base.clone() * base;
        e >>= 1;
    }
    acc
}
