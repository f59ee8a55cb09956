use crate::error::{Error, Result};
use crate::eval::{difference_quotient, iterated_sum, li_tilde, ParamPoint};
use crate::field::Field;
use crate::index::{enumerate_indices, Index};
use crate::suite::{run_jobs, sample_case, sign, Campaign, CaseResult, Sampler};

/// Labels of the difference equations: `1*` for `i = 1`, `2*` for
/// `1 < i < r`, `3*` for `i = r > 1`.
pub const DIFF_CASES: [&str; 11] = ["1a", "1b", "1c", "2a", "2b", "2c", "2d", "3a", "3b", "3c", "3d"];

/// Case label for slot `i` (0-based) of `k`.
pub fn diff_case_label(k: &Index, i: usize) -> &'static str {
    let p = k.parts();
    let r = p.len();
    if i == 0 {
        return if p[0] > 1 {
            "1a"
        } else if r == 1 {
            "1b"
        } else {
            "1c"
        };
    }
    let inner = i < r - 1;
    match (p[i - 1] > 1, p[i] > 1, inner) {
        (true, true, true) => "2a",
        (true, false, true) => "2b",
        (false, true, true) => "2c",
        (false, false, true) => "2d",
        (true, true, false) => "3a",
        (true, false, false) => "3b",
        (false, true, false) => "3c",
        (false, false, false) => "3d",
    }
}

/// Right-hand side of the difference equation for `Δ g(k, x) / Δ x_i`
/// (`i` 0-based) in terms of `g` at lower weight, with `x_{r+1} = 1`.
pub fn diff_rhs<F: Field>(
    g: &dyn Fn(&Index, &ParamPoint<F>) -> Result<F>,
    k: &Index,
    x: &ParamPoint<F>,
    n_big: usize,
    i: usize,
) -> Result<F> {
    let ctx = x.ctx();
    let r = k.depth();
    let h = F::from_int(ctx, n_big as i64).try_inv()?;
    let sh = x.shifted(i, &h);
    let v = x.values();
    let div = |a: F, b: F| a.checked_div(&b);
    if i == 0 {
        if k.parts()[0] > 1 {
            return div(-g(&k.lower(0), x)?, v[0].clone());
        }
        if r == 1 {
            let one = F::one_in(ctx);
            let a = (v[0].clone() + &h - one.clone()).try_inv()?;
            let b = v[0].try_inv()?;
            return Ok(a - b);
        }
        let k1 = k.remove(0);
        let x1 = x.removed(0);
        let g1 = g(&k1, &x1)?;
        let t1 = div(-g1.clone(), v[0].clone())?;
        let t2 = div(g1 - g(&k1, &sh.removed(1))?, v[0].clone() + &h - v[1].clone())?;
        return Ok(t1 + t2);
    }
    let last = i == r - 1;
    let next_shifted = |kk: &Index| -> Result<F> {
        if last {
            Ok(F::zero_in(ctx))
        } else {
            g(kk, &sh.removed(i + 1))
        }
    };
    let (xi, xp, xn) = (v[i].clone(), v[i - 1].clone(), x.next_or_one(i));
    let (kp, kc) = (k.parts()[i - 1], k.parts()[i]);
    let x_wo_i = x.removed(i);
    let x_wo_p = x.removed(i - 1);
    match (kp > 1, kc > 1) {
        (true, true) => div(g(&k.lower(i - 1), &sh)? - g(&k.lower(i), x)?, xi),
        (true, false) => {
            let ka = k.remove(i);
            let kd = k.lower(i - 1).remove(i);
            let ga = g(&ka, &x_wo_i)?;
            let gap = xi.clone() + &h - xn;
            let t1 = div(g(&k.lower(i - 1), &sh)? - ga.clone(), xi.clone())?;
            let t2 = div(ga - next_shifted(&ka)?, gap.clone())?;
            let t3 = div(h.clone(), xi * &gap)? * &(next_shifted(&kd)? - g(&kd, &x_wo_i)?);
            Ok(t1 + t2 + t3)
        }
        (false, true) => {
            let ka = k.remove(i - 1);
            let kd = k.lower(i).remove(i - 1);
            let ga = g(&ka, &x_wo_i)?;
            let gap = xi.clone() - xp;
            let t1 = div(g(&ka, &x_wo_p)? - ga.clone(), gap.clone())?;
            let t2 = div(ga - g(&k.lower(i), x)?, xi.clone())?;
            let t3 = div(h, xi * &gap)? * &(g(&kd, &x_wo_i)? - g(&kd, &x_wo_p)?);
            Ok(t1 + t2 + t3)
        }
        (false, false) => {
            let ka = k.remove(i - 1);
            let kb = k.remove(i);
            let gb = g(&kb, &x_wo_i)?;
            let t1 = div(g(&ka, &x_wo_p)? - gb.clone(), xi.clone() - xp)?;
            let t2 = div(gb - next_shifted(&kb)?, xi + &h - xn)?;
            Ok(t1 + t2)
        }
    }
}

/// Which family the equation is checked on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// `g = I^{(N)}`
    Iterated,
    /// `g = (-1)^{dep} L~i`
    Binomial,
}

pub fn side_fn<F: Field>(side: Side, n_big: usize) -> impl Fn(&Index, &ParamPoint<F>) -> Result<F> {
    move |k, x| match side {
        Side::Iterated => iterated_sum(k, x, n_big, false),
        Side::Binomial => Ok(sign(k.depth() % 2 == 1, li_tilde(k, x, n_big)?)),
    }
}

/// Both sides of one difference equation.
pub fn diff_sides<F: Field>(side: Side, k: &Index, x: &ParamPoint<F>, n_big: usize, i: usize) -> Result<(F, F)> {
    let g = side_fn::<F>(side, n_big);
    let lhs = difference_quotient(|p| g(k, p), x, i, n_big)?;
    let rhs = diff_rhs(&g, k, x, n_big, i)?;
    Ok((lhs, rhs))
}

struct Job {
    k: Index,
    i: usize,
    n: usize,
    side: Side,
}

pub(crate) fn verify_difference_equations(c: &Campaign) -> Result<Vec<CaseResult>> {
    if let Some(case) = &c.case {
        if !DIFF_CASES.contains(&case.as_str()) {
            return Err(Error::parse(format!("unknown difference-equation case `{case}`")));
        }
    }
    let mut jobs = Vec::new();
    for k in enumerate_indices(c.max_weight, c.max_depth, false) {
        for i in 0..k.depth() {
            if c.case.as_deref().is_some_and(|l| l != diff_case_label(&k, i)) {
                continue;
            }
            for n in c.n_min.max(2)..=c.n_max {
                for side in [Side::Iterated, Side::Binomial] {
                    for _ in 0..c.trials {
                        jobs.push(Job { k: k.clone(), i, n, side });
                    }
                }
            }
        }
    }
    Ok(run_jobs(&jobs, |ord, j| {
        let side = match j.side {
            Side::Iterated => "I",
            Side::Binomial => "L",
        };
        let id = format!("diff/{}/{side}/k={}/i={}/N={}/q{ord}", diff_case_label(&j.k, j.i), j.k, j.i + 1, j.n);
        let mut s = Sampler::new(c.seed, ord as u64, c.height);
        sample_case(id, &mut s, |s| s.point(j.k.depth()), |x| diff_sides(j.side, &j.k, x, j.n, j.i))
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    fn pt(v: &[i64]) -> ParamPoint<Rational> {
        ParamPoint::new((), v.iter().map(|&n| Rational::from_integer(n.into())).collect())
    }

    #[test]
    fn labels_cover_positions() {
        assert_eq!(diff_case_label(&Index::of(&[2]), 0), "1a");
        assert_eq!(diff_case_label(&Index::of(&[1]), 0), "1b");
        assert_eq!(diff_case_label(&Index::of(&[1, 3]), 0), "1c");
        assert_eq!(diff_case_label(&Index::of(&[2, 1, 2]), 1), "2b");
        assert_eq!(diff_case_label(&Index::of(&[1, 1]), 1), "3d");
    }

    #[test]
    fn named_examples() {
        for side in [Side::Iterated, Side::Binomial] {
            let (a, b) = diff_sides(side, &Index::of(&[2]), &pt(&[3]), 5, 0).unwrap();
            assert_eq!(a, b);
            let (a, b) = diff_sides(side, &Index::of(&[1, 1]), &pt(&[2, 3]), 7, 1).unwrap();
            assert_eq!(a, b);
            let (a, b) = diff_sides(side, &Index::of(&[2, 1, 2]), &pt(&[2, 3, 5]), 6, 1).unwrap();
            assert_eq!(a, b);
        }
    }
}
