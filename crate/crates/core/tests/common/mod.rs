#![allow(dead_code)]

pub mod naive;

use dmpl::eval::{
    connected_sum, iterated_sum, li_sh_truncated, li_star_prefix, li_star_truncated, li_tilde, modified_lhs,
    r_value_plain, r_value_twisted,
};
use dmpl::index::enumerate_indices;
use dmpl::suite::{gaussian_point, Sampler};
use dmpl::{Field, Index, Modulus, ParamPoint, PrimeResidue, Rational, Result};

pub fn q(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

pub fn rpoint(v: &[(i64, i64)]) -> ParamPoint<Rational> {
    ParamPoint::new((), v.iter().map(|&(n, d)| q(n, d)).collect())
}

/// Tally of one oracle comparison run.
#[derive(Default, Debug)]
pub struct Tally {
    pub checked: usize,
    pub skipped: usize,
    pub mismatches: Vec<String>,
}

impl Tally {
    pub fn record<F: Field>(&mut self, what: impl FnOnce() -> String, dp: Result<F>, brute: Option<F>) {
        match (dp, brute) {
            (Ok(a), Some(b)) if a == b => self.checked += 1,
            // the DP runs each slot over the full range and may meet a pole
            // the brute force never reaches
            (Err(e), _) if e.is_pole() => self.skipped += 1,
            (Err(_), None) => self.skipped += 1,
            (dp, brute) => self.mismatches.push(format!("{}: dp {:?} brute {:?}", what(), dp, brute)),
        }
    }

    pub fn merge(&mut self, other: Tally) {
        self.checked += other.checked;
        self.skipped += other.skipped;
        self.mismatches.extend(other.mismatches);
    }
}

/// Every evaluator against the brute force at one point.
pub fn compare_all<F: Field>(k: &Index, x: &ParamPoint<F>, n: usize, t: &mut Tally) {
    let tag = |name: &str| format!("{name} k={k} x={x} N={n}");
    t.record(|| tag("li_tilde"), li_tilde(k, x, n), naive::li_tilde(k, x, n));
    // the shuffle-convention series divides by every z_i
    if x.values().iter().all(|v| !v.vanishes()) {
        t.record(|| tag("li_sh"), li_sh_truncated(k, x, n), naive::li_sh(k, x, n));
    } else {
        t.skipped += 1;
    }
    t.record(|| tag("li_star"), li_star_truncated(k, x, n), naive::li_star(k, x, n));
    t.record(|| tag("iterated"), iterated_sum(k, x, n, false), naive::iterated(k, x, n, false));
    t.record(|| tag("iterated-incl"), iterated_sum(k, x, n, true), naive::iterated(k, x, n, true));
    t.record(|| tag("modified"), modified_lhs(k, x, n), naive::modified_lhs(k, x, n));
    if let Ok(pre) = li_star_prefix(k, x, n) {
        for m in 1..=n {
            t.record(|| tag(&format!("li_star_prefix[{m}]")), Ok(pre[m].clone()), naive::li_star(k, x, m));
        }
    }
    for cut in 0..=k.depth() {
        let (a, b) = k.parts().split_at(cut);
        let (a, b) = (Index::of(a), Index::of(b));
        t.record(|| tag(&format!("connected cut={cut}")), connected_sum(&a, &b, x, n), naive::connected(&a, &b, x, n));
    }
}

/// `(a, b)` pairs of the error sums with total exponent at most `w` and
/// `b_i >= 0`, `a_i + b_i >= 1`.
pub fn r_shapes(w: usize) -> Vec<(Vec<usize>, Vec<usize>)> {
    let mut out = Vec::new();
    for k in enumerate_indices(w, w, false).into_iter().filter(|k| !k.is_empty()) {
        let mut splits: Vec<(Vec<usize>, Vec<usize>)> = vec![(Vec::new(), Vec::new())];
        for &p in k.parts() {
            splits = splits
                .into_iter()
                .flat_map(|(a, b)| (0..=p).map(move |ai| ([a.clone(), vec![ai]].concat(), [b.clone(), vec![p - ai]].concat())))
                .collect();
        }
        out.extend(splits);
    }
    out
}

/// The oracle sweep: weight at most 4, `N <= 8`, `points` seeded points
/// per `(k, N)`, every fifth one Gaussian, plus a prime field.
pub fn oracle_sweep(seed: u64, points: usize) -> Tally {
    let mut t = Tally::default();
    let indices = enumerate_indices(4, 4, false);
    let mut stream = 0u64;
    for k in &indices {
        for n in 1..=8 {
            let mut s = Sampler::new(seed, stream, 50);
            stream += 1;
            for j in 0..points {
                if j % 5 == 4 {
                    compare_all(k, &gaussian_point(k.depth(), j), n, &mut t);
                } else {
                    compare_all(k, &s.point(k.depth()), n, &mut t);
                }
            }
            let p = Modulus::new(11).expect("prime");
            for j in 0..3 {
                let x = ParamPoint::new(p, (0..k.depth()).map(|_| PrimeResidue::new(s.below(11) as i64 + j, p)).collect());
                compare_all(k, &x, n, &mut t);
            }
        }
    }
    for (a, b) in r_shapes(4) {
        for n in 1..=8 {
            t.record(
                || format!("r_plain a={a:?} b={b:?} N={n}"),
                r_value_plain::<Rational>((), &a, &b, n),
                naive::r_plain((), &a, &b, n),
            );
            let mut s = Sampler::new(seed, 1_000_000 + stream, 50);
            stream += 1;
            for _ in 0..5 {
                // 1 + v^2 keeps every twist point outside the unit disc
                let z: Vec<Vec<Rational>> = a
                    .iter()
                    .map(|&ai| (0..ai).map(|_| s.rational()).map(|v| &v * &v + Rational::from_integer(1.into())).collect())
                    .collect();
                t.record(
                    || format!("r_twisted z={z:?} b={b:?} N={n}"),
                    r_value_twisted((), &z, &b, n),
                    naive::r_twisted((), &z, &b, n),
                );
            }
        }
    }
    t
}
