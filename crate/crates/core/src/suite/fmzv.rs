use crate::error::Result;
use crate::eval::{iterated_sum, li_star_truncated, li_tilde, Order, ParamPoint, SumSignature};
use crate::field::{is_prime, Field, Modulus, PrimeResidue};
use crate::index::{between_chain, coarsenings_star, enumerate_indices, refinements, weak_compositions, Index};
use crate::suite::{run_jobs, sign, Campaign, CaseResult};
use crate::words::underline_harmonic_combo;

/// `zeta_{<p}(k) mod p`.
pub fn zeta_mod_p(k: &Index, p: Modulus) -> Result<PrimeResidue> {
    let ones = ParamPoint::new(p, vec![PrimeResidue::new(1, p); k.depth()]);
    li_star_truncated(k, &ones, p.get() as usize)
}

fn ones(p: Modulus, r: usize) -> ParamPoint<PrimeResidue> {
    ParamPoint::new(p, vec![PrimeResidue::new(1, p); r])
}

fn refinement_sum(k: &Index, p: Modulus) -> Result<PrimeResidue> {
    let mut acc = PrimeResidue::new(0, p);
    for l in refinements(k) {
        acc = acc + zeta_mod_p(&l, p)?;
    }
    Ok(acc)
}

/// `zeta_{<p}(k)` and `(-1)^r sum_{k ≼ l} zeta_{<p}(l)`.
pub fn hoffman_sides(k: &Index, p: Modulus) -> Result<(PrimeResidue, PrimeResidue)> {
    Ok((zeta_mod_p(k, p)?, sign(k.depth() % 2 == 1, refinement_sum(k, p)?)))
}

/// Both sides of the congruence with variables, each multiplied by
/// `prod_i (x_i + 1)_{p-1}` so that no denominator involves `x`.
pub fn cleared_sides(k: &Index, x: &[PrimeResidue], p: Modulus) -> Result<(PrimeResidue, PrimeResidue)> {
    let pu = p.get() as usize;
    let r = k.depth();
    let int = |n: usize| PrimeResidue::new(n as i64, p);
    // tails[i][n] = prod_{j=n+1}^{p-1} (x_i + j)
    let tails: Vec<Vec<PrimeResidue>> = x
        .iter()
        .map(|xi| {
            let mut t = vec![int(1); pu];
            for n in (0..pu - 1).rev() {
                t[n] = t[n + 1] * (*xi + int(n + 1));
            }
            t
        })
        .collect();

    let mut lhs = SumSignature::new(p, pu - 1);
    for i in 0..r {
        let ki = k.parts()[i];
        let mut rising = int(1);
        lhs.push(Order::Strict, |n| {
            rising = if i + 1 < r { rising * (x[i + 1] + int(n)) } else { rising * int(n) };
            Ok(rising * tails[i][n] * int(n).powu(ki as u64).try_inv()?)
        })?;
    }

    let mut rhs = SumSignature::new(p, pu - 1);
    for (j, &kj) in k.parts().iter().enumerate() {
        let mut head = int(1);
        rhs.push(Order::Strict, |n| {
            // prod_{1<=m<n} (x_j + m) * prod_{n<m<p} (x_j + m)
            let v = head * tails[j][n];
            head = head * (x[j] + int(n));
            Ok(v)
        })?;
        for _ in 1..kj {
            rhs.push(Order::Weak, |n| int(n).try_inv())?;
        }
    }
    Ok((lhs.total(), sign(r % 2 == 1, rhs.total())))
}

/// `zeta_{<p}(k ∗̲ ({1}^m)^⋆)` (just `zeta_{<p}(k)` for `m = 0`) and the
/// signed sum over `l ⊕ k ≼ h ≼ l ⊘ k`.
pub fn underline_sides(k: &Index, m: usize, p: Modulus) -> Result<(PrimeResidue, PrimeResidue)> {
    let lhs = if m == 0 {
        zeta_mod_p(k, p)?
    } else {
        let star = coarsenings_star(&Index::of(&vec![1; m]));
        let mut acc = PrimeResidue::new(0, p);
        for (h, c) in underline_harmonic_combo(k, &star)?.terms() {
            acc = acc + PrimeResidue::from_rational(p, c)? * zeta_mod_p(h, p)?;
        }
        acc
    };
    let mut rhs = PrimeResidue::new(0, p);
    for l in weak_compositions(m, k.depth()) {
        for h in between_chain(&l, k)? {
            rhs = rhs + zeta_mod_p(&h, p)?;
        }
    }
    Ok((lhs, sign(k.depth() % 2 == 1, rhs)))
}

enum Job {
    Hoffman(Index, Modulus),
    BinomialAtP(Index, Modulus),
    IteratedAtP(Index, Modulus),
    Cleared(Index, Modulus),
    Underline(Index, usize, Modulus),
}

fn primes(lo: u64, hi: u64) -> Vec<Modulus> {
    (lo..=hi).filter(|&p| is_prime(p)).map(|p| Modulus::new(p).expect("prime")).collect()
}

/// Every point of `F_p^r`, in lexicographic order, stopping at the first
/// disagreement.
fn cleared_everywhere(k: &Index, p: Modulus) -> CaseResult {
    let r = k.depth();
    let pu = p.get();
    let id = format!("fmzv/cleared/k={k}/p={pu}");
    let mut digits = vec![0u64; r];
    loop {
        let x: Vec<PrimeResidue> = digits.iter().map(|&d| PrimeResidue::new(d as i64, p)).collect();
        match cleared_sides(k, &x, p) {
            Ok((a, b)) if a == b => {}
            other => {
                let point = ParamPoint::new(p, x).to_string();
                return CaseResult::from_result(id, other).with_point(Some(point));
            }
        }
        let mut pos = 0;
        loop {
            if pos == r {
                return CaseResult::compare(id, &PrimeResidue::new(0, p), &PrimeResidue::new(0, p));
            }
            digits[pos] += 1;
            if digits[pos] < pu {
                break;
            }
            digits[pos] = 0;
            pos += 1;
        }
    }
}

pub(crate) fn verify_fmzv(c: &Campaign) -> Result<Vec<CaseResult>> {
    let idx: Vec<Index> =
        enumerate_indices(c.max_weight, c.max_depth, false).into_iter().filter(|k| !k.is_empty()).collect();
    let mut jobs = Vec::new();
    for p in primes(c.p_min.max(5), c.p_max) {
        for k in &idx {
            jobs.push(Job::Hoffman(k.clone(), p));
            jobs.push(Job::BinomialAtP(k.clone(), p));
            jobs.push(Job::IteratedAtP(k.clone(), p));
        }
    }
    for p in primes(c.p_min.max(5), c.p_max.min(31)) {
        for k in idx.iter().filter(|k| k.weight() <= 3) {
            jobs.push(Job::Cleared(k.clone(), p));
        }
    }
    for p in primes(c.p_min.max(7), c.p_max) {
        for k in &idx {
            for m in 0..=c.m_max {
                jobs.push(Job::Underline(k.clone(), m, p));
            }
        }
    }
    Ok(run_jobs(&jobs, |_, j| match j {
        Job::Hoffman(k, p) => CaseResult::from_result(format!("fmzv/hoffman/k={k}/p={}", p.get()), hoffman_sides(k, *p)),
        Job::BinomialAtP(k, p) => {
            let r = (|| Ok((li_tilde(k, &ones(*p, k.depth()), p.get() as usize)?, zeta_mod_p(k, *p)?)))();
            CaseResult::from_result(format!("fmzv/binomial-at-p/k={k}/p={}", p.get()), r)
        }
        Job::IteratedAtP(k, p) => {
            let r = (|| Ok((iterated_sum(k, &ones(*p, k.depth()), p.get() as usize, false)?, refinement_sum(k, *p)?)))();
            CaseResult::from_result(format!("fmzv/iterated-at-p/k={k}/p={}", p.get()), r)
        }
        Job::Cleared(k, p) => cleared_everywhere(k, *p),
        Job::Underline(k, m, p) => {
            CaseResult::from_result(format!("fmzv/underline/k={k}/m={m}/p={}", p.get()), underline_sides(k, *m, *p))
        }
    }))
}
