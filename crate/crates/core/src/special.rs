//! Binomial coefficients with field-valued top argument, rising factorials
//! and unsigned Stirling numbers of the first kind.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::Result;
use crate::field::{ExactScalar, Field, GaussianRational, PrimeResidue};
use crate::Rational;

/// `x (x-1) ... (x-n+1) / n!`. In characteristic `p` this fails for
/// `n >= p` since `n!` is not invertible.
pub fn gen_binomial<F: Field>(x: &F, n: u64) -> Result<F> {
    let ctx = x.ctx();
    let mut num = F::one_in(ctx);
    for j in 0..n {
        num = num * &(x.clone() - F::from_int(ctx, j as i64));
    }
    let fact = F::from_bigint(ctx, &factorial(n));
    num.checked_div(&fact)
}

/// `binom(x, 0), binom(x, 1), ...` by the ratio step
/// `binom(x, n) = binom(x, n-1) (x-n+1) / n`.
pub struct BinomialSeq<F: Field> {
    x: F,
    n: u64,
    current: F,
}

impl<F: Field> BinomialSeq<F> {
    pub fn new(x: F) -> Self {
        let current = F::one_in(x.ctx());
        BinomialSeq { x, n: 0, current }
    }

    /// Index of the value [`current`](Self::current) returns.
    pub fn index(&self) -> u64 {
        self.n
    }

    pub fn current(&self) -> &F {
        &self.current
    }

    /// Moves to `binom(x, n+1)`.
    pub fn advance(&mut self) -> Result<&F> {
        let ctx = self.x.ctx();
        self.n += 1;
        let step = (self.x.clone() - F::from_int(ctx, self.n as i64 - 1))
            .checked_div(&F::from_int(ctx, self.n as i64))?;
        self.current = self.current.clone() * &step;
        Ok(&self.current)
    }
}

/// `x (x+1) ... (x+n-1)`.
pub fn rising_factorial<F: Field>(x: &F, n: u64) -> F {
    let ctx = x.ctx();
    (0..n).fold(F::one_in(ctx), |acc, j| acc * &(x.clone() + F::from_int(ctx, j as i64)))
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, j| acc * j)
}

/// Unsigned Stirling numbers of the first kind, `table[n][j]` for
/// `0 <= j <= n <= max`.
pub fn stirling_table(max: usize) -> Vec<Vec<BigInt>> {
    let mut t = vec![vec![BigInt::one()]];
    for n in 0..max {
        let prev = &t[n];
        let mut row = vec![BigInt::zero(); n + 2];
        for j in 0..=n + 1 {
            let mut v = BigInt::zero();
            if j >= 1 {
                v += &prev[j - 1];
            }
            if j <= n {
                v += &prev[j] * n;
            }
            row[j] = v;
        }
        t.push(row);
    }
    t
}

/// Coefficient of `x^j` in `x (x+1) ... (x+n-1)`; zero when `j > n`.
pub fn stirling_first(n: usize, j: usize) -> BigInt {
    if j > n {
        return BigInt::zero();
    }
    stirling_table(n)[n][j].clone()
}

/// [`gen_binomial`] on a tagged scalar.
pub fn gen_binomial_exact(x: &ExactScalar, n: u64) -> Result<ExactScalar> {
    Ok(match x {
        ExactScalar::Rational(q) => gen_binomial::<Rational>(q, n)?.to_exact(),
        ExactScalar::Gaussian(g) => gen_binomial::<GaussianRational>(g, n)?.to_exact(),
        ExactScalar::Residue(r) => gen_binomial::<PrimeResidue>(r, n)?.to_exact(),
    })
}

/// [`rising_factorial`] on a tagged scalar.
pub fn rising_factorial_exact(x: &ExactScalar, n: u64) -> ExactScalar {
    match x {
        ExactScalar::Rational(q) => rising_factorial(q, n).to_exact(),
        ExactScalar::Gaussian(g) => rising_factorial(g, n).to_exact(),
        ExactScalar::Residue(r) => rising_factorial(r, n).to_exact(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Modulus;

    fn q(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    #[test]
    fn small_values() {
        assert_eq!(gen_binomial(&q(7), 0).unwrap(), q(1));
        assert_eq!(gen_binomial(&q(5), 2).unwrap(), q(10));
        assert_eq!(gen_binomial(&q(3), 5).unwrap(), q(0));
        // binom(-N-1, n) = (-1)^n binom(N+n, n) at N = 3, n = 2
        assert_eq!(gen_binomial(&q(-4), 2).unwrap(), gen_binomial(&q(5), 2).unwrap());
        assert_eq!(rising_factorial(&q(1), 4), q(24));
        assert_eq!(rising_factorial(&q(2), 3), q(24));
        assert_eq!(rising_factorial(&q(9), 0), q(1));
    }

    #[test]
    fn stirling_rows() {
        assert_eq!(stirling_first(3, 2), BigInt::from(3));
        assert_eq!(stirling_first(5, 5), BigInt::one());
        assert_eq!(stirling_first(2, 3), BigInt::zero());
        let row_sum: BigInt = stirling_table(4)[4].iter().sum();
        assert_eq!(row_sum, BigInt::from(24));
    }

    #[test]
    fn prime_field_factorial_blocks_large_n() {
        let p = Modulus::new(5).unwrap();
        let x = PrimeResidue::new(3, p);
        assert!(gen_binomial(&x, 4).is_ok());
        assert!(gen_binomial(&x, 5).is_err());
        let mut seq = BinomialSeq::new(x);
        for _ in 0..4 {
            seq.advance().unwrap();
        }
        assert!(seq.advance().is_err());
    }

    #[test]
    fn exact_dispatch() {
        let x = ExactScalar::parse("1+i").unwrap();
        // (1+i) i / 2
        assert_eq!(gen_binomial_exact(&x, 2).unwrap(), ExactScalar::parse("-1/2+1/2*i").unwrap());
        assert_eq!(rising_factorial_exact(&ExactScalar::parse("3 mod 7").unwrap(), 2), ExactScalar::parse("5 mod 7").unwrap());
    }
}
