use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::{ExactScalar, Field};
use crate::error::{Error, Result};

impl Field for BigRational {
    type Ctx = ();

    fn ctx(&self) {}

    fn from_bigint(_: (), n: &BigInt) -> Self {
        BigRational::from_integer(n.clone())
    }

    fn vanishes(&self) -> bool {
        Zero::is_zero(self)
    }

    fn try_inv(&self) -> Result<Self> {
        if Zero::is_zero(self) {
            Err(Error::DivisionByZero)
        } else {
            Ok(self.recip())
        }
    }

    fn norm_sq(&self) -> Option<BigRational> {
        Some(self * self)
    }

    fn to_exact(&self) -> ExactScalar {
        ExactScalar::Rational(self.clone())
    }

    fn from_rational(_: (), q: &BigRational) -> Result<Self> {
        Ok(q.clone())
    }
}

/// `p/q`, or `p` when the denominator is one.
pub fn render_rational(q: &BigRational) -> String {
    q.to_string()
}

/// Parses `p`, `-p`, `p/q` (any sign placement num-rational accepts is
/// normalized; `q` must be nonzero).
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::parse(format!("invalid rational literal `{s}`"));
    if s.is_empty() {
        return Err(bad());
    }
    match s.split_once('/') {
        None => s.parse::<BigInt>().map(BigRational::from_integer).map_err(|_| bad()),
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::parse(format!("zero denominator in `{s}`")));
            }
            if d.is_negative() {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
    }
}
