//! Exact evaluation of discrete multiple polylogarithms and discrete
//! iterated-integral sums, with machine checks of the identities relating
//! them.

pub mod error;
pub mod eval;
pub mod field;
pub mod index;
pub mod special;
pub mod suite;
pub mod words;

pub use error::{Error, Result};
pub use eval::ParamPoint;
pub use field::{ExactScalar, Field, GaussianRational, Modulus, PrimeResidue, ScalarKind};
pub use index::{Index, IndexCombo};
pub use words::{Letter, Word, WordCombo};

/// Big rationals, eagerly normalized.
pub type Rational = num_rational::BigRational;

pub type RationalPoint = ParamPoint<Rational>;
pub type GaussianPoint = ParamPoint<GaussianRational>;
pub type ResiduePoint = ParamPoint<PrimeResidue>;
