//! Exact scalar fields.
//!
//! Every sum in this crate is evaluated over a type implementing [`Field`]:
//! big rationals, Gaussian rationals (`a + b i` with rational `a`, `b`) or
//! residues modulo a prime. The prime modulus lives in the value itself, so
//! constants are created from a [`Field::Ctx`] rather than through
//! `num_traits::Zero`/`One`.

mod gaussian;
mod rational;
mod residue;
mod scalar;

use std::fmt::{Debug, Display};
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub use gaussian::GaussianRational;
pub use rational::{parse_rational, render_rational};
pub use residue::{is_prime, Modulus, PrimeResidue};
pub use scalar::{ExactScalar, ScalarKind};

/// A commutative field with exact arithmetic.
pub trait Field:
    Clone
    + PartialEq
    + Debug
    + Display
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
{
    /// Whatever is needed to build constants: `()` for characteristic zero,
    /// the modulus for prime fields.
    type Ctx: Copy + Debug + PartialEq + Send + Sync;

    fn ctx(&self) -> Self::Ctx;

    fn from_bigint(ctx: Self::Ctx, n: &BigInt) -> Self;

    fn vanishes(&self) -> bool;

    /// Multiplicative inverse; errors on zero.
    fn try_inv(&self) -> Result<Self>;

    /// Squared absolute value, when the field carries one.
    fn norm_sq(&self) -> Option<BigRational>;

    fn to_exact(&self) -> ExactScalar;

    fn from_int(ctx: Self::Ctx, n: i64) -> Self {
        Self::from_bigint(ctx, &BigInt::from(n))
    }

    fn zero_in(ctx: Self::Ctx) -> Self {
        Self::from_int(ctx, 0)
    }

    fn one_in(ctx: Self::Ctx) -> Self {
        Self::from_int(ctx, 1)
    }

    fn from_rational(ctx: Self::Ctx, q: &BigRational) -> Result<Self> {
        let num = Self::from_bigint(ctx, q.numer());
        let den = Self::from_bigint(ctx, q.denom());
        Ok(num * &den.try_inv()?)
    }

    fn checked_div(&self, rhs: &Self) -> Result<Self> {
        Ok(self.clone() * &rhs.try_inv()?)
    }

    fn powu(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one_in(self.ctx());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * &base;
            }
            base = base.clone() * &base;
            e >>= 1;
        }
        acc
    }

    /// `|self| >= 1`, decided exactly. Prime fields have no absolute value.
    fn has_modulus_at_least_one(&self) -> Option<bool> {
        self.norm_sq().map(|n| n >= BigRational::one())
    }
}

/// Rational upper bound on `sqrt(q)` for `q >= 0`, tight to roughly 15
/// significant digits.
pub fn sqrt_upper_bound(q: &BigRational) -> BigRational {
    if q.is_zero() {
        return BigRational::zero();
    }
    assert!(!q.is_negative(), "square root of a negative rational");
    let scale = BigInt::from(10u32).pow(30);
    // sqrt(a/b) = sqrt(a*b*10^30) / (b*10^15)
    let radicand = q.numer() * q.denom() * &scale;
    let mut root = radicand.sqrt();
    if &root * &root < radicand {
        root += 1;
    }
    BigRational::new(root, q.denom() * BigInt::from(10u32).pow(15))
}

/// Rational upper bound on `|z|`; exact when `z` is rational.
pub fn abs_upper_bound(z: &ExactScalar) -> Option<BigRational> {
    match z {
        ExactScalar::Rational(q) => Some(q.abs()),
        ExactScalar::Gaussian(g) if g.im.is_zero() => Some(g.re.abs()),
        ExactScalar::Gaussian(g) => Some(sqrt_upper_bound(&g.norm_sq_exact())),
        ExactScalar::Residue(_) => None,
    }
}

/// Decimal rendering with `digits` significant digits, e.g. `1.25000000000e-3`.
pub fn render_decimal(q: &BigRational, digits: usize) -> String {
    if q.is_zero() {
        return "0".to_string();
    }
    let neg = q.is_negative();
    let a = q.abs();
    let ten = BigInt::from(10u32);
    // Find exponent e with 10^e <= a < 10^(e+1).
    let approx = a.numer().bits() as i64 - a.denom().bits() as i64;
    let mut e = (approx as f64 * std::f64::consts::LOG10_2).floor() as i64;
    let pow10 = |k: i64| -> BigRational {
        if k >= 0 {
            BigRational::from_integer(ten.pow(k as u32))
        } else {
            BigRational::new(BigInt::one(), ten.pow((-k) as u32))
        }
    };
    while a < pow10(e) {
        e -= 1;
    }
    while a >= pow10(e + 1) {
        e += 1;
    }
    let shift = digits as i64 - 1 - e;
    let scaled = &a * pow10(shift);
    // round half up
    let twice = scaled.clone() * BigRational::from_integer(BigInt::from(2));
    let mut mant = ((twice.numer() + twice.denom()) / (twice.denom() * BigInt::from(2))).clone();
    if mant >= ten.pow(digits as u32) {
        mant /= &ten;
        e += 1;
    }
    let s = mant.to_string();
    let (head, tail) = s.split_at(1);
    let mut out = String::new();
    if neg {
        out.push('-');
    }
    out.push_str(head);
    if !tail.is_empty() {
        out.push('.');
        out.push_str(tail);
    }
    if e != 0 {
        out.push_str(&format!("e{e}"));
    }
    out
}

/// Rational approximation of a float, exact in binary.
pub fn rational_from_f64(x: f64) -> BigRational {
    BigRational::from_float(x).expect("finite float")
}

pub(crate) fn to_f64(q: &BigRational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

pub(crate) fn mismatch(left: &impl Display, right: &impl Display) -> Error {
    Error::ScalarMismatch {
        left: left.to_string(),
        right: right.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn decimal_rendering() {
        assert_eq!(render_decimal(&q(1, 3), 12), "3.33333333333e-1");
        assert_eq!(render_decimal(&q(-5, 4), 3), "-1.25");
        assert_eq!(render_decimal(&q(100, 1), 2), "1.0e2");
        assert_eq!(render_decimal(&q(999_999, 1_000_000), 3), "1.00");
        assert_eq!(render_decimal(&q(0, 1), 12), "0");
    }

    #[test]
    fn sqrt_bound_is_upper_and_tight() {
        for (n, d) in [(2, 1), (1, 1000), (49, 4), (7, 3)] {
            let x = q(n, d);
            let r = sqrt_upper_bound(&x);
            assert!(&r * &r >= x);
            let rel = (to_f64(&r) - (n as f64 / d as f64).sqrt()).abs();
            assert!(rel < 1e-12, "{n}/{d}");
        }
        assert_eq!(sqrt_upper_bound(&q(49, 4)), q(7, 2));
    }
}
