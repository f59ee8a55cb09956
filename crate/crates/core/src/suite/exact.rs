use crate::error::{Error, Result};
use crate::eval::{connected_sum, connector, iterated_sum, li_tilde, modified_lhs, modified_main_sides, ParamPoint};
use crate::field::{Field, GaussianRational};
use crate::index::{enumerate_indices, Index};
use crate::special::gen_binomial;
use crate::suite::{gaussian_point, run_jobs, sample_case, sign, Campaign, CaseResult, Sampler};
use crate::Rational;

#[derive(Clone, Copy)]
enum PointKind {
    Rational(usize),
    Gaussian(usize),
    Bridge(usize),
}

struct Job {
    k: Index,
    n: usize,
    kind: PointKind,
}

fn sweep_jobs(c: &Campaign, n_min: usize, gaussian_trials: usize, bridge: bool) -> Vec<Job> {
    let mut jobs = Vec::new();
    for k in enumerate_indices(c.max_weight, c.max_depth, false) {
        if k.is_empty() {
            continue;
        }
        for n in n_min.max(c.n_min)..=c.n_max {
            if c.scalar.rational() {
                for t in 0..c.trials {
                    jobs.push(Job { k: k.clone(), n, kind: PointKind::Rational(t) });
                }
                if bridge && n >= 2 {
                    for t in 0..c.trials {
                        jobs.push(Job { k: k.clone(), n, kind: PointKind::Bridge(t) });
                    }
                }
            }
            if c.scalar.gaussian() {
                for t in 0..gaussian_trials {
                    jobs.push(Job { k: k.clone(), n, kind: PointKind::Gaussian(t) });
                }
            }
        }
    }
    jobs
}

fn job_id(tag: &str, j: &Job) -> String {
    let kind = match j.kind {
        PointKind::Rational(t) => format!("q{t}"),
        PointKind::Gaussian(t) => format!("g{t}"),
        PointKind::Bridge(t) => format!("bridge{t}"),
    };
    format!("{tag}/k={}/N={}/{kind}", j.k, j.n)
}

/// Both sides of the main identity: `L~i_k(x)` and `(-1)^r I^{(N)}_k(x)`.
pub fn main_sides<F: Field>(k: &Index, x: &ParamPoint<F>, n: usize) -> Result<(F, F)> {
    let lhs = li_tilde(k, x, n)?;
    let rhs = sign(k.depth() % 2 == 1, iterated_sum(k, x, n, false)?);
    Ok((lhs, rhs))
}

/// The main identity read off the variant with ranges up to `N`: both
/// `L~i_k(x)` at `N` and the variant's left side at `x N/(N-1)`, `N-1`.
pub fn bridge_sides(k: &Index, x: &ParamPoint<Rational>, n: usize) -> Result<(Rational, Rational)> {
    let scale = Rational::new((n as i64).into(), (n as i64 - 1).into());
    let y = x.map(|v| v * &scale);
    Ok((li_tilde(k, x, n)?, modified_lhs(k, &y, n - 1)?))
}

pub(crate) fn verify_main(c: &Campaign) -> Vec<CaseResult> {
    let jobs = sweep_jobs(c, 1, 3, false);
    run_jobs(&jobs, |i, j| {
        let id = job_id("main", j);
        let r = j.k.depth();
        match j.kind {
            PointKind::Gaussian(t) => {
                let x = gaussian_point(r, t);
                CaseResult::from_result(id, main_sides(&j.k, &x, j.n)).with_point(Some(x.to_string()))
            }
            _ => {
                let mut s = Sampler::new(c.seed, i as u64, c.height);
                sample_case(id, &mut s, |s| s.point(r), |x| main_sides(&j.k, x, j.n))
            }
        }
    })
}

pub(crate) fn verify_modified(c: &Campaign) -> Vec<CaseResult> {
    let jobs = sweep_jobs(c, 1, 3, true);
    run_jobs(&jobs, |i, j| {
        let id = job_id("modified", j);
        let r = j.k.depth();
        let mut s = Sampler::new(c.seed, i as u64, c.height);
        match j.kind {
            PointKind::Gaussian(t) => {
                let x = gaussian_point(r, t);
                CaseResult::from_result(id, modified_main_sides(&j.k, &x, j.n)).with_point(Some(x.to_string()))
            }
            PointKind::Rational(_) => sample_case(id, &mut s, |s| s.point(r), |x| modified_main_sides(&j.k, x, j.n)),
            PointKind::Bridge(_) => sample_case(id, &mut s, |s| s.point(r), |x| bridge_sides(&j.k, x, j.n)),
        }
    })
}

/// `Z(k|)` against the first link of `Z(k|) = Z(k_-|k_r) = ... = Z(|k)` that
/// differs from it, or against `Z(|k)` when the whole chain agrees.
pub fn transport_chain<F: Field>(k: &Index, x: &ParamPoint<F>, n: usize) -> Result<(F, F)> {
    let r = k.depth();
    let first = connected_sum(k, &Index::empty(), x, n)?;
    let mut last = first.clone();
    for cut in (0..r).rev() {
        let (a, b) = k.parts().split_at(cut);
        last = connected_sum(&Index::of(a), &Index::of(b), x, n)?;
        if last != first {
            break;
        }
    }
    Ok((first, last))
}

/// The three pointwise connector identities; `which` is 2, 3 or 4.
pub fn connector_identity<F: Field>(which: u8, x: &F, xp: &F, n: usize, m: usize, big_n: usize) -> Result<(F, F)> {
    let ctx = x.ctx();
    let int = |v: usize| F::from_int(ctx, v as i64);
    match which {
        2 => {
            let lhs = connector(x, n, m, big_n)?.checked_div(&int(n))?;
            let mut rhs = F::zero_in(ctx);
            for b in n..=m {
                rhs = rhs + connector(x, n, b, big_n)?.checked_div(&int(b))?;
            }
            Ok((lhs, rhs))
        }
        3 => {
            let mut lhs = F::zero_in(ctx);
            for a in n + 1..=m {
                lhs = lhs + connector(x, a, m, big_n)?.checked_div(&int(m))?;
            }
            let den = int(big_n) * x - int(m);
            if den.vanishes() {
                return Err(Error::Pole { slot: 1, n: m as i64 });
            }
            Ok((lhs, connector(x, n, m - 1, big_n)?.checked_div(&den)?))
        }
        4 => {
            let one = F::one_in(ctx);
            let top = gen_binomial(&(int(big_n) * xp - one.clone()), n as u64)?;
            let bottom = gen_binomial(&(int(big_n) * x - one), n as u64)?;
            if bottom.vanishes() {
                return Err(Error::Pole { slot: 1, n: n as i64 });
            }
            let lhs = top.checked_div(&bottom)? * &connector(xp, n, m - 1, big_n)?;
            Ok((lhs, connector(x, n, m - 1, big_n)?))
        }
        _ => Err(Error::domain(format!("no connector identity {which}"))),
    }
}

/// The telescoping closed form for `sum_{r<i<=n} binom(x'+1,i)/binom(x,i)`.
pub fn binomial_telescope<F: Field>(x: &F, xp: &F, r: usize, n: usize) -> Result<(F, F)> {
    let ctx = x.ctx();
    let one = F::one_in(ctx);
    let ratio = |top: &F, i: usize| -> Result<F> {
        let b = gen_binomial(x, i as u64)?;
        if b.vanishes() {
            return Err(Error::Pole { slot: 1, n: i as i64 });
        }
        gen_binomial(top, i as u64)?.checked_div(&b)
    };
    let xp1 = xp.clone() + one.clone();
    let mut lhs = F::zero_in(ctx);
    for i in r + 1..=n {
        lhs = lhs + ratio(&xp1, i)?;
    }
    let diff = x.clone() - xp;
    if diff.vanishes() {
        return Err(Error::domain("x and x' must differ"));
    }
    let rhs = xp1.checked_div(&diff)? * &(ratio(xp, r)? - ratio(xp, n)?);
    Ok((lhs, rhs))
}

enum TransportJob {
    Chain { k: Index, n: usize, gaussian: Option<usize> },
    Connector { which: u8, n: usize, m: usize, big_n: usize },
    Telescope { r: usize, n: usize },
}

pub(crate) fn verify_transport(c: &Campaign) -> Vec<CaseResult> {
    let mut jobs = Vec::new();
    for k in enumerate_indices(c.max_weight, c.max_depth, false) {
        if k.is_empty() {
            continue;
        }
        for n in c.n_min..=c.n_max {
            if c.scalar.rational() {
                for _ in 0..c.trials {
                    jobs.push(TransportJob::Chain { k: k.clone(), n, gaussian: None });
                }
            }
            if c.scalar.gaussian() {
                for t in 0..3 {
                    jobs.push(TransportJob::Chain { k: k.clone(), n, gaussian: Some(t) });
                }
            }
        }
    }
    let bound = 12;
    for t in 0..c.trials {
        let big_n = c.n_min + t % (c.n_max - c.n_min + 1);
        for m in 0..=bound {
            for n in 0..=m {
                if n > 0 {
                    jobs.push(TransportJob::Connector { which: 2, n, m, big_n });
                }
                if n < m {
                    jobs.push(TransportJob::Connector { which: 3, n, m, big_n });
                    jobs.push(TransportJob::Connector { which: 4, n, m, big_n });
                    jobs.push(TransportJob::Telescope { r: n, n: m });
                }
            }
        }
    }
    run_jobs(&jobs, |i, j| {
        let mut s = Sampler::new(c.seed, i as u64, c.height);
        match j {
            TransportJob::Chain { k, n, gaussian: Some(t) } => {
                let x: ParamPoint<GaussianRational> = gaussian_point(k.depth(), *t);
                let id = format!("transport/chain/k={k}/N={n}/g{t}");
                CaseResult::from_result(id, transport_chain(k, &x, *n)).with_point(Some(x.to_string()))
            }
            TransportJob::Chain { k, n, gaussian: None } => {
                let id = format!("transport/chain/k={k}/N={n}/q{i}");
                sample_case(id, &mut s, |s| s.point(k.depth()), |x| transport_chain(k, x, *n))
            }
            TransportJob::Connector { which, n, m, big_n } => {
                let id = format!("transport/connector-{which}/n={n}/m={m}/N={big_n}/q{i}");
                let draw = |s: &mut Sampler| {
                    let a = s.rational();
                    let b = s.rational_avoiding(std::slice::from_ref(&a));
                    ParamPoint::new((), vec![a, b])
                };
                sample_case(id, &mut s, draw, |p| connector_identity(*which, &p.values()[0], &p.values()[1], *n, *m, *big_n))
            }
            TransportJob::Telescope { r, n } => {
                let id = format!("transport/telescope/r={r}/n={n}/q{i}");
                let draw = |s: &mut Sampler| {
                    let a = s.rational();
                    let b = s.rational_avoiding(std::slice::from_ref(&a));
                    ParamPoint::new((), vec![a, b])
                };
                sample_case(id, &mut s, draw, |p| binomial_telescope(&p.values()[0], &p.values()[1], *r, *n))
            }
        }
    })
}
