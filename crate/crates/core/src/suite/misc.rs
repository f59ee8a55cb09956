use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::eval::{Order, SumSignature};
use crate::special::{gen_binomial, stirling_table};
use crate::suite::{run_jobs, Campaign, CaseResult, Status};
use crate::Rational;

fn q(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

fn frac(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

fn alt(n: usize) -> Rational {
    if n.is_multiple_of(2) {
        q(1)
    } else {
        q(-1)
    }
}

fn binom_int(n: usize, k: usize) -> Rational {
    gen_binomial(&q(n as i64), k as u64).expect("characteristic zero")
}

/// `a_n^{(N)} = prod_{i<=n} (N-i)/(i^2+N^2) * sum_{0<=j<n/2} (-1)^{n+j+1} s(n+1, 2j+2) N^{2j+1}`
/// with `s` the unsigned Stirling numbers of the first kind.
pub fn a_coefficient(n: usize, big_n: usize, table: &[Vec<BigInt>]) -> Rational {
    let nn = big_n as i64;
    let mut prod = q(1);
    for i in 1..=n as i64 {
        prod *= frac(nn - i, i * i + nn * nn);
    }
    let mut s = BigInt::zero();
    let mut j = 0;
    while 2 * j < n {
        let term = &table[n + 1][2 * j + 2] * BigInt::from(nn).pow(2 * j as u32 + 1);
        if (n + j + 1).is_multiple_of(2) {
            s += term;
        } else {
            s -= term;
        }
        j += 1;
    }
    prod * Rational::from_integer(s)
}

/// `sum_{n<N} a_n^{(N)}/n` and `sum_{n<N} N/(n^2+N^2)`.
pub fn stirling_pi4_sides(big_n: usize) -> (Rational, Rational) {
    let table = stirling_table(big_n + 1);
    let nn = big_n as i64;
    let mut lhs = q(0);
    let mut rhs = q(0);
    for n in 1..big_n {
        lhs += a_coefficient(n, big_n, &table) / q(n as i64);
        rhs += frac(nn, n as i64 * n as i64 + nn * nn);
    }
    (lhs, rhs)
}

/// `lim_N a_n^{(N)}`.
fn a_limit(n: usize) -> Rational {
    if n.is_multiple_of(2) {
        q(0)
    } else {
        alt((n - 1) / 2)
    }
}

/// `sum_{1<=n_1<=...<=n_k<=upper} 1/((n_1+N) n_2 ... n_k)`.
fn shifted_weak_chain(k: usize, big_n: usize, upper: usize) -> Rational {
    let mut sig = SumSignature::new((), upper);
    let nn = big_n as i64;
    sig.push(Order::Strict, |n| Ok(frac(1, n as i64 + nn))).expect("no poles");
    for _ in 1..k {
        sig.push(Order::Weak, |n| Ok(frac(1, n as i64))).expect("no poles");
    }
    sig.total()
}

/// The even/odd closed forms for [`shifted_weak_chain`] with `upper = N`.
fn chain_closed_form(k: usize, big_n: usize) -> Rational {
    let r = k / 2;
    if k.is_multiple_of(2) {
        let mut sig = SumSignature::new((), big_n);
        for t in 0..r {
            let order = if t == 0 { Order::Strict } else { Order::Weak };
            sig.push(order, |m| Ok(frac(1, (m * m) as i64))).expect("no poles");
        }
        sig.total() / q(2)
    } else {
        // variables n <= 2 m_1 <= ... <= 2 m_r <= 2N on one line; odd values
        // of the later variables carry factor 0
        let mut sig = SumSignature::new((), 2 * big_n);
        sig.push(Order::Strict, |n| Ok(alt(n - 1) / q(n as i64))).expect("no poles");
        for _ in 0..r {
            sig.push(Order::Weak, |v| Ok(if v % 2 == 0 { frac(4, (v * v) as i64) } else { q(0) })).expect("no poles");
        }
        sig.total()
    }
}

/// `sum_{n=1}^{N} (-1)^n n^{-k} binom(N,n)/binom(N+n,n)`.
fn alternating_binomial_sum(k: usize, big_n: usize) -> Rational {
    let mut s = q(0);
    for n in 1..=big_n {
        s += alt(n) / q(n as i64).pow(k as i32) * binom_int(big_n, n) / binom_int(big_n + n, n);
    }
    s
}

/// `sum_{n=1}^{N-1} (-1)^{n-1} n^{-k} binom(N-1,n)/binom(N+n,n)`.
fn depth_one_lhs(k: usize, big_n: usize) -> Rational {
    let mut s = q(0);
    for n in 1..big_n {
        s += alt(n - 1) / q(n as i64).pow(k as i32) * binom_int(big_n - 1, n) / binom_int(big_n + n, n);
    }
    s
}

fn alternating_harmonic(upper: usize) -> Rational {
    (1..=upper).fold(q(0), |acc, n| acc + alt(n - 1) / q(n as i64))
}

enum Job {
    Pi4(usize),
    ALimit(usize),
    ClosedForm(usize, usize),
    DepthOneFull(usize, usize),
    DepthOneShort(usize, usize),
    Log2(usize),
    Log2Second(usize),
    HalfSum(usize),
    WeightedHalfSum(usize),
    SquareTransport(usize, usize),
}

/// Ladder on which `|a_n^{(N)} - lim|` must decrease.
pub const A_LADDER: [usize; 4] = [40, 80, 160, 320];

fn decreasing_case(id: String, n: usize) -> CaseResult {
    let lim = a_limit(n);
    let dist: Vec<Rational> = A_LADDER
        .iter()
        .map(|&big_n| {
            let t = stirling_table(n + 1);
            (a_coefficient(n, big_n, &t) - &lim).abs()
        })
        .collect();
    if dist.windows(2).all(|w| w[1] < w[0]) {
        CaseResult::new(id, Status::Pass)
    } else {
        let mut c = CaseResult::new(id, Status::Fail);
        c.lhs = Some(dist.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(";"));
        c.note = Some("distance to the limit does not decrease".into());
        c
    }
}

pub(crate) fn verify_misc(c: &Campaign) -> Vec<CaseResult> {
    let mut jobs = Vec::new();
    for n in 1..=c.n_max {
        jobs.push(Job::Pi4(n));
    }
    for n in 1..=6 {
        jobs.push(Job::ALimit(n));
    }
    for k in 1..=7 {
        for n in 1..=c.n_max.min(40) {
            jobs.push(Job::ClosedForm(k, n));
        }
    }
    for k in 1..=6 {
        for n in 1..=c.n_max.min(40) {
            jobs.push(Job::DepthOneFull(k, n));
            jobs.push(Job::DepthOneShort(k, n));
        }
    }
    for n in 1..=c.n_max.min(50) {
        jobs.push(Job::Log2(n));
        jobs.push(Job::Log2Second(n));
    }
    for m in 1..=30 {
        jobs.push(Job::HalfSum(m));
        jobs.push(Job::WeightedHalfSum(m));
        for n in 1..=m {
            jobs.push(Job::SquareTransport(n, m));
        }
    }
    run_jobs(&jobs, |_, j| match *j {
        Job::Pi4(n) => {
            let (a, b) = stirling_pi4_sides(n);
            CaseResult::compare(format!("misc/pi4/N={n}"), &a, &b)
        }
        Job::ALimit(n) => decreasing_case(format!("misc/a-limit/n={n}"), n),
        Job::ClosedForm(k, n) => {
            CaseResult::compare(format!("misc/closed-form/k={k}/N={n}"), &shifted_weak_chain(k, n, n), &chain_closed_form(k, n))
        }
        Job::DepthOneFull(k, n) => CaseResult::compare(
            format!("misc/depth-one-full/k={k}/N={n}"),
            &alternating_binomial_sum(k, n),
            &-shifted_weak_chain(k, n, n),
        ),
        Job::DepthOneShort(k, n) => CaseResult::compare(
            format!("misc/depth-one/k={k}/N={n}"),
            &depth_one_lhs(k, n),
            &shifted_weak_chain(k, n, n - 1),
        ),
        Job::Log2(n) => {
            let rhs = (0..n).fold(q(0), |acc, m| acc + frac(1, (m + n) as i64));
            CaseResult::compare(format!("misc/log2/N={n}"), &alternating_harmonic(2 * n - 1), &rhs)
        }
        Job::Log2Second(n) => {
            let lhs = (1..=n).fold(q(0), |acc, m| acc + frac(1, (m + n) as i64));
            CaseResult::compare(format!("misc/log2-second/N={n}"), &lhs, &alternating_harmonic(2 * n))
        }
        Job::HalfSum(m) => {
            let s = (1..=m).fold(q(0), |acc, n| acc + alt(n) * binom_int(m, n) / binom_int(m + n, n));
            CaseResult::compare(format!("misc/half-sum/m={m}"), &s, &frac(-1, 2))
        }
        Job::WeightedHalfSum(m) => {
            let s = (1..=m).fold(q(0), |acc, n| acc + alt(n) / q(n as i64) * binom_int(m, n) / binom_int(m + n, n));
            CaseResult::compare(format!("misc/weighted-half-sum/m={m}"), &s, &-alternating_harmonic(2 * m))
        }
        Job::SquareTransport(n, m) => {
            let kernel = |b: usize| binom_int(b, n) / binom_int(b + n, n);
            let lhs = kernel(m) / q((n * n) as i64);
            let rhs = (n..=m).fold(q(0), |acc, b| acc + kernel(b) / q((b * b) as i64));
            CaseResult::compare(format!("misc/square-transport/n={n}/m={m}"), &lhs, &rhs)
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spot_values() {
        assert_eq!(stirling_pi4_sides(2), (frac(2, 5), frac(2, 5)));
        assert_eq!(alternating_harmonic(3), frac(5, 6));
        assert_eq!(chain_closed_form(2, 3), frac(49, 72));
        assert_eq!(shifted_weak_chain(2, 3, 3), frac(49, 72));
    }

    #[test]
    fn limits() {
        assert_eq!(a_limit(1), q(1));
        assert_eq!(a_limit(3), q(-1));
        assert_eq!(a_limit(4), q(0));
    }
}
