use std::fmt;

use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{mismatch, parse_rational, GaussianRational, Modulus, PrimeResidue};
use crate::error::{Error, Result};
use crate::Field;

/// Which field a scalar lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ScalarKind {
    Rational,
    Gaussian,
    Residue(Modulus),
}

impl fmt::Display for ScalarKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScalarKind::Rational => f.write_str("rational"),
            ScalarKind::Gaussian => f.write_str("gaussian"),
            ScalarKind::Residue(p) => write!(f, "residue mod {}", p.get()),
        }
    }
}

/// A field element of any supported kind.
///
/// Arithmetic between different kinds (or different moduli) is an error;
/// promotion from rational to Gaussian has to be asked for explicitly.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ExactScalar {
    Rational(BigRational),
    Gaussian(GaussianRational),
    Residue(PrimeResidue),
}

macro_rules! lift {
    ($name:ident, $op:tt) => {
        pub fn $name(&self, rhs: &Self) -> Result<Self> {
            use ExactScalar::*;
            match (self, rhs) {
                (Rational(a), Rational(b)) => Ok(Rational(a $op b)),
                (Gaussian(a), Gaussian(b)) => Ok(Gaussian(a.clone() $op b)),
                (Residue(a), Residue(b)) if a.modulus() == b.modulus() => Ok(Residue(*a $op b)),
                _ => Err(mismatch(&self.kind(), &rhs.kind())),
            }
        }
    };
}

impl ExactScalar {
    pub fn kind(&self) -> ScalarKind {
        match self {
            ExactScalar::Rational(_) => ScalarKind::Rational,
            ExactScalar::Gaussian(_) => ScalarKind::Gaussian,
            ExactScalar::Residue(r) => ScalarKind::Residue(r.modulus()),
        }
    }

    pub fn from_i64(kind: ScalarKind, n: i64) -> Self {
        match kind {
            ScalarKind::Rational => ExactScalar::Rational(BigRational::from_integer(n.into())),
            ScalarKind::Gaussian => ExactScalar::Gaussian(GaussianRational::from_ints(n, 0)),
            ScalarKind::Residue(p) => ExactScalar::Residue(PrimeResidue::new(n, p)),
        }
    }

    lift!(checked_add, +);
    lift!(checked_sub, -);
    lift!(checked_mul, *);

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        use ExactScalar::*;
        match (self, rhs) {
            (Rational(a), Rational(b)) => Ok(Rational(Field::checked_div(a, b)?)),
            (Gaussian(a), Gaussian(b)) => Ok(Gaussian(Field::checked_div(a, b)?)),
            (Residue(a), Residue(b)) if a.modulus() == b.modulus() => Ok(Residue(Field::checked_div(a, b)?)),
            _ => Err(mismatch(&self.kind(), &rhs.kind())),
        }
    }

    pub fn neg(&self) -> Self {
        match self {
            ExactScalar::Rational(a) => ExactScalar::Rational(-a),
            ExactScalar::Gaussian(a) => ExactScalar::Gaussian(-a.clone()),
            ExactScalar::Residue(a) => ExactScalar::Residue(-*a),
        }
    }

    /// Nearest `f64` of a rational value, `None` for the other kinds.
    pub fn approx_f64(&self) -> Option<f64> {
        match self {
            ExactScalar::Rational(a) => Some(super::to_f64(a)),
            _ => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            ExactScalar::Rational(a) => a.is_zero(),
            ExactScalar::Gaussian(a) => a.is_zero(),
            ExactScalar::Residue(a) => a.vanishes(),
        }
    }

    /// Rational and Gaussian values as a Gaussian rational; residues have no
    /// such embedding.
    pub fn to_gaussian(&self) -> Result<GaussianRational> {
        match self {
            ExactScalar::Rational(a) => Ok(GaussianRational::real(a.clone())),
            ExactScalar::Gaussian(a) => Ok(a.clone()),
            ExactScalar::Residue(_) => Err(mismatch(&self.kind(), &ScalarKind::Gaussian)),
        }
    }

    /// The Gaussian value with zero imaginary part collapsed to a rational.
    pub fn simplify(g: GaussianRational) -> Self {
        if g.im.is_zero() {
            ExactScalar::Rational(g.re)
        } else {
            ExactScalar::Gaussian(g)
        }
    }

    /// Squared absolute value of the difference, when defined.
    pub fn dist_sq(&self, rhs: &Self) -> Result<BigRational> {
        let d = self.checked_sub(rhs)?;
        match d {
            ExactScalar::Rational(q) => Ok(&q * &q),
            ExactScalar::Gaussian(g) => Ok(g.norm_sq_exact()),
            ExactScalar::Residue(_) => Err(Error::domain("residues carry no absolute value")),
        }
    }

    /// Grammar: `p/q`, `a+b*i` forms, or `v mod p`.
    pub fn parse(s: &str) -> Result<Self> {
        let t = s.trim();
        if t.contains("mod") {
            Ok(ExactScalar::Residue(PrimeResidue::parse(t)?))
        } else if t.ends_with('i') {
            Ok(ExactScalar::Gaussian(GaussianRational::parse(t)?))
        } else {
            Ok(ExactScalar::Rational(parse_rational(t)?))
        }
    }

    pub fn is_negative_rational(&self) -> bool {
        matches!(self, ExactScalar::Rational(q) if q.is_negative())
    }
}

impl fmt::Display for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExactScalar::Rational(a) => write!(f, "{a}"),
            ExactScalar::Gaussian(a) => write!(f, "{a}"),
            ExactScalar::Residue(a) => write!(f, "{a}"),
        }
    }
}

impl Serialize for ExactScalar {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for ExactScalar {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        ExactScalar::parse(&s).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(x: &str) -> ExactScalar {
        ExactScalar::parse(x).unwrap()
    }

    #[test]
    fn same_kind_arithmetic() {
        assert_eq!(s("1/2").checked_add(&s("1/3")).unwrap(), s("5/6"));
        assert_eq!(s("i").checked_mul(&s("i")).unwrap(), s("-1+0*i"));
        assert_eq!(s("3 mod 5").checked_mul(&s("4 mod 5")).unwrap(), s("2 mod 5"));
        assert_eq!(s("1 mod 5").checked_div(&s("2 mod 5")).unwrap(), s("3 mod 5"));
    }

    #[test]
    fn mixing_is_an_error() {
        let cases = [("1/2", "i"), ("1", "1 mod 5"), ("1 mod 5", "1 mod 7")];
        for (a, b) in cases {
            assert!(matches!(s(a).checked_add(&s(b)), Err(Error::ScalarMismatch { .. })));
            assert!(matches!(s(a).checked_div(&s(b)), Err(Error::ScalarMismatch { .. })));
        }
    }

    #[test]
    fn render_round_trip() {
        for x in ["-7/3", "0", "1/2-3*i", "0+1*i", "6 mod 11"] {
            assert_eq!(s(x).to_string(), x);
        }
        let json = serde_json::to_string(&s("2/3")).unwrap();
        assert_eq!(json, "\"2/3\"");
        assert_eq!(serde_json::from_str::<ExactScalar>(&json).unwrap(), s("2/3"));
    }
}
