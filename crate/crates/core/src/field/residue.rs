use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::ToPrimitive;

use super::{ExactScalar, Field};
use crate::error::{Error, Result};

/// A prime modulus. Construction checks primality.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Modulus(u64);

impl Modulus {
    pub fn new(p: u64) -> Result<Self> {
        if is_prime(p) {
            Ok(Modulus(p))
        } else {
            Err(Error::domain(format!("{p} is not prime")))
        }
    }

    pub fn get(self) -> u64 {
        self.0
    }
}

/// Trial division; moduli here are small.
pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// A residue modulo a prime, stored as its representative in `[0, p)`.
///
/// Binary operators panic when the moduli differ; use [`ExactScalar`] for
/// checked mixing.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrimeResidue {
    value: u64,
    modulus: Modulus,
}

impl PrimeResidue {
    pub fn new(value: i64, modulus: Modulus) -> Self {
        let p = modulus.0 as i128;
        let v = (value as i128).rem_euclid(p) as u64;
        PrimeResidue { value: v, modulus }
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    fn same(&self, rhs: &Self) {
        assert_eq!(self.modulus, rhs.modulus, "residues with different moduli");
    }

    fn with(&self, value: u64) -> Self {
        PrimeResidue { value, modulus: self.modulus }
    }

    /// Parses `v mod p`.
    pub fn parse(s: &str) -> Result<Self> {
        let bad = || Error::parse(format!("invalid residue literal `{s}`"));
        let (v, p) = s.split_once("mod").ok_or_else(bad)?;
        let v: i64 = v.trim().parse().map_err(|_| bad())?;
        let p: u64 = p.trim().parse().map_err(|_| bad())?;
        Ok(PrimeResidue::new(v, Modulus::new(p)?))
    }
}

impl fmt::Display for PrimeResidue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} mod {}", self.value, self.modulus.0)
    }
}

#[allow(clippy::op_ref)]
impl Add for PrimeResidue {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        self + &rhs
    }
}

impl<'a> Add<&'a PrimeResidue> for PrimeResidue {
    type Output = Self;
    fn add(self, rhs: &'a Self) -> Self {
        self.same(rhs);
        let s = (self.value as u128 + rhs.value as u128) % self.modulus.0 as u128;
        self.with(s as u64)
    }
}

#[allow(clippy::op_ref)]
impl Sub for PrimeResidue {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self - &rhs
    }
}

impl<'a> Sub<&'a PrimeResidue> for PrimeResidue {
    type Output = Self;
    fn sub(self, rhs: &'a Self) -> Self {
        self.same(rhs);
        let p = self.modulus.0 as u128;
        let s = (self.value as u128 + p - rhs.value as u128) % p;
        self.with(s as u64)
    }
}

#[allow(clippy::op_ref)]
impl Mul for PrimeResidue {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        self * &rhs
    }
}

impl<'a> Mul<&'a PrimeResidue> for PrimeResidue {
    type Output = Self;
    fn mul(self, rhs: &'a Self) -> Self {
        self.same(rhs);
        let s = (self.value as u128 * rhs.value as u128) % self.modulus.0 as u128;
        self.with(s as u64)
    }
}

impl Neg for PrimeResidue {
    type Output = Self;
    fn neg(self) -> Self {
        let p = self.modulus.0;
        self.with((p - self.value) % p)
    }
}

impl Field for PrimeResidue {
    type Ctx = Modulus;

    fn ctx(&self) -> Modulus {
        self.modulus
    }

    fn from_bigint(ctx: Modulus, n: &BigInt) -> Self {
        let r = n.mod_floor(&BigInt::from(ctx.0));
        PrimeResidue { value: r.to_u64().expect("reduced residue fits"), modulus: ctx }
    }

    fn from_int(ctx: Modulus, n: i64) -> Self {
        PrimeResidue::new(n, ctx)
    }

    fn vanishes(&self) -> bool {
        self.value == 0
    }

    fn try_inv(&self) -> Result<Self> {
        if self.value == 0 {
            return Err(Error::NotInvertible { value: self.value.to_string(), modulus: self.modulus.0 });
        }
        Ok(self.powu(self.modulus.0 - 2))
    }

    fn norm_sq(&self) -> Option<BigRational> {
        None
    }

    fn to_exact(&self) -> ExactScalar {
        ExactScalar::Residue(*self)
    }

    fn from_rational(ctx: Modulus, q: &BigRational) -> Result<Self> {
        let den = Self::from_bigint(ctx, q.denom());
        if den.vanishes() {
            return Err(Error::NotInvertible { value: q.denom().to_string(), modulus: ctx.0 });
        }
        Ok(Self::from_bigint(ctx, q.numer()) * den.try_inv()?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(p: u64) -> Modulus {
        Modulus::new(p).unwrap()
    }

    #[test]
    fn primality() {
        let primes: Vec<u64> = (0..30).filter(|&n| is_prime(n)).collect();
        assert_eq!(primes, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
        assert!(Modulus::new(9).is_err());
    }

    #[test]
    fn arithmetic_matches_integers() {
        let p = m(13);
        for a in -20i64..20 {
            for b in -20i64..20 {
                let (x, y) = (PrimeResidue::new(a, p), PrimeResidue::new(b, p));
                assert_eq!(x + y, PrimeResidue::new(a + b, p));
                assert_eq!(x - y, PrimeResidue::new(a - b, p));
                assert_eq!(x * y, PrimeResidue::new(a * b, p));
            }
        }
    }

    #[test]
    fn inverses() {
        let p = m(97);
        for a in 1..97 {
            let x = PrimeResidue::new(a, p);
            assert_eq!(x * x.try_inv().unwrap(), PrimeResidue::new(1, p));
        }
        let err = PrimeResidue::new(97, p).try_inv().unwrap_err();
        assert!(matches!(err, Error::NotInvertible { modulus: 97, .. }));
    }

    #[test]
    fn parse_and_render() {
        let x = PrimeResidue::parse("-3 mod 7").unwrap();
        assert_eq!(x.to_string(), "4 mod 7");
        assert!(PrimeResidue::parse("3 mod 8").is_err());
        assert!(PrimeResidue::parse("3").is_err());
    }

    #[test]
    fn rationals_reduce() {
        let p = m(7);
        let half = BigRational::new(1.into(), 2.into());
        assert_eq!(PrimeResidue::from_rational(p, &half).unwrap(), PrimeResidue::new(4, p));
        let bad = BigRational::new(1.into(), 14.into());
        assert!(PrimeResidue::from_rational(p, &bad).is_err());
    }

    #[test]
    #[should_panic(expected = "different moduli")]
    fn mixing_moduli_panics() {
        let _ = PrimeResidue::new(1, m(5)) + PrimeResidue::new(1, m(7));
    }
}
