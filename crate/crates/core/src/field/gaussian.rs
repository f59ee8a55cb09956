use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{parse_rational, ExactScalar, Field};
use crate::error::{Error, Result};

/// An element `re + im*i` of the field of Gaussian rationals.
///
/// Ordered lexicographically by `(re, im)` so that words over Gaussian
/// parameters can be used as map keys; the order has no algebraic meaning.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GaussianRational {
    pub re: BigRational,
    pub im: BigRational,
}

impl GaussianRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussianRational { re, im }
    }

    pub fn from_ints(re: i64, im: i64) -> Self {
        Self::new(BigRational::from_integer(re.into()), BigRational::from_integer(im.into()))
    }

    pub fn i() -> Self {
        Self::from_ints(0, 1)
    }

    pub fn real(re: BigRational) -> Self {
        Self::new(re, BigRational::zero())
    }

    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), -self.im.clone())
    }

    pub fn norm_sq_exact(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    /// Parses `a`, `b*i`, `i`, `-i`, `a+b*i`, `a-b*i`, `a+i` where `a`, `b`
    /// are rational literals.
    pub fn parse(s: &str) -> Result<Self> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || Error::parse(format!("invalid Gaussian rational literal `{s}`"));
        let Some(body) = s.strip_suffix('i') else {
            return Ok(Self::real(parse_rational(&s)?));
        };
        // split at the last sign that is not the leading character
        let split = body
            .char_indices()
            .filter(|&(pos, c)| pos > 0 && (c == '+' || c == '-'))
            .map(|(pos, _)| pos)
            .next_back();
        let (re_part, im_part) = match split {
            Some(pos) => (&body[..pos], &body[pos..]),
            None => ("", body),
        };
        let im_part = im_part.strip_suffix('*').unwrap_or(im_part);
        let im = match im_part {
            "" | "+" => BigRational::one(),
            "-" => -BigRational::one(),
            other => parse_rational(other.strip_prefix('+').unwrap_or(other)).map_err(|_| bad())?,
        };
        let re = if re_part.is_empty() {
            BigRational::zero()
        } else {
            parse_rational(re_part).map_err(|_| bad())?
        };
        Ok(Self::new(re, im))
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_negative() {
            write!(f, "{}-{}*i", self.re, -self.im.clone())
        } else {
            write!(f, "{}+{}*i", self.re, self.im)
        }
    }
}

impl Add for GaussianRational {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        self + &rhs
    }
}

impl<'a> Add<&'a GaussianRational> for GaussianRational {
    type Output = Self;
    fn add(self, rhs: &'a Self) -> Self {
        Self::new(self.re + &rhs.re, self.im + &rhs.im)
    }
}

impl Sub for GaussianRational {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self - &rhs
    }
}

impl<'a> Sub<&'a GaussianRational> for GaussianRational {
    type Output = Self;
    fn sub(self, rhs: &'a Self) -> Self {
        Self::new(self.re - &rhs.re, self.im - &rhs.im)
    }
}

impl Mul for GaussianRational {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        self * &rhs
    }
}

impl<'a> Mul<&'a GaussianRational> for GaussianRational {
    type Output = Self;
    fn mul(self, rhs: &'a Self) -> Self {
        if self.im.is_zero() && rhs.im.is_zero() {
            return Self::real(self.re * &rhs.re);
        }
        let re = &self.re * &rhs.re - &self.im * &rhs.im;
        let im = &self.re * &rhs.im + &self.im * &rhs.re;
        Self::new(re, im)
    }
}

impl Neg for GaussianRational {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.re, -self.im)
    }
}

impl Zero for GaussianRational {
    fn zero() -> Self {
        Self::from_ints(0, 0)
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for GaussianRational {
    fn one() -> Self {
        Self::from_ints(1, 0)
    }
}

impl num_traits::Inv for GaussianRational {
    type Output = Result<Self>;
    fn inv(self) -> Result<Self> {
        Field::try_inv(&self)
    }
}

impl From<BigRational> for GaussianRational {
    fn from(q: BigRational) -> Self {
        Self::real(q)
    }
}

impl Field for GaussianRational {
    type Ctx = ();

    fn ctx(&self) {}

    fn from_bigint(_: (), n: &BigInt) -> Self {
        Self::real(BigRational::from_integer(n.clone()))
    }

    fn vanishes(&self) -> bool {
        Zero::is_zero(self)
    }

    fn try_inv(&self) -> Result<Self> {
        if Zero::is_zero(self) {
            return Err(Error::DivisionByZero);
        }
        if self.im.is_zero() {
            return Ok(Self::real(self.re.recip()));
        }
        let n = self.norm_sq_exact();
        Ok(Self::new(&self.re / &n, -(&self.im / &n)))
    }

    fn norm_sq(&self) -> Option<BigRational> {
        Some(self.norm_sq_exact())
    }

    fn to_exact(&self) -> ExactScalar {
        ExactScalar::Gaussian(self.clone())
    }

    fn from_rational(_: (), q: &BigRational) -> Result<Self> {
        Ok(Self::real(q.clone()))
    }
}
