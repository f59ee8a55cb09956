//! Connectors and connected sums: the hybrid sums that interpolate between
//! the two sides of the binomial-corrected identity.

use crate::error::{Error, Result};
use crate::eval::chain::{Order, SumSignature};
use crate::eval::point::ParamPoint;
use crate::eval::sums::{div_or_pole, int, inv_pow, modified_lhs, modified_rhs, push_iterated_slots, scaled};
use crate::field::Field;
use crate::index::Index;
use crate::special::gen_binomial;

/// `binom(m, n) / binom(N x - 1, n)`.
pub fn connector<F: Field>(x: &F, n: usize, m: usize, n_big: usize) -> Result<F> {
    let ctx = x.ctx();
    let top = gen_binomial(&F::from_int(ctx, m as i64), n as u64)?;
    let bottom = gen_binomial(&(scaled(x, n_big) - F::one_in(ctx)), n as u64)?;
    div_or_pole(top, &bottom, 1, n)
}

/// `Z_N(k | l)` at `x = (x_1, ..., x_{r+s})`. With `l` empty this is the
/// binomial side of the identity, with `k` empty the iterated side.
pub fn connected_sum<F: Field>(k: &Index, l: &Index, x: &ParamPoint<F>, n_big: usize) -> Result<F> {
    let (r, s) = (k.depth(), l.depth());
    if x.len() != r + s {
        return Err(Error::Shape { expected: r + s, got: x.len() });
    }
    if s == 0 {
        return modified_lhs(k, x, n_big);
    }
    if r == 0 {
        return modified_rhs(l, x, n_big);
    }
    if n_big == 0 {
        return Err(Error::domain("N must be positive"));
    }
    let ctx = x.ctx();
    let head = x.slice(0..r);

    let mut left = SumSignature::new(ctx, n_big - 1);
    for i in 0..r - 1 {
        let ki = k.parts()[i];
        let top = scaled(&head.values()[i + 1], n_big);
        let bottom = scaled(&head.values()[i], n_big);
        let mut ratio = F::one_in(ctx);
        left.push(Order::Strict, |n| {
            let num = top.clone() - int::<F>(ctx, n);
            let den = bottom.clone() - int::<F>(ctx, n);
            ratio = div_or_pole(ratio.clone() * &num, &den, i + 1, n)?;
            Ok(ratio.clone() * &inv_pow::<F>(ctx, n, ki)?)
        })?;
    }
    let kr = k.parts()[r - 1];
    let bottom = scaled(&head.values()[r - 1], n_big);
    let mut inv_binom = F::one_in(ctx);
    left.push(Order::Strict, |n| {
        let den = bottom.clone() - int::<F>(ctx, n);
        inv_binom = div_or_pole(inv_binom.clone() * &int::<F>(ctx, n), &den, r, n)?;
        Ok(inv_binom.clone() * &inv_pow::<F>(ctx, n, kr)?)
    })?;
    let prof = left.profile();

    // g[m] = sum_{0<n<m} prof[n] binom(m-1, n), the numerator of the
    // connector with its Pascal row carried along in the field.
    let mut coupled = vec![F::zero_in(ctx); n_big + 1];
    let mut row = vec![F::one_in(ctx)];
    for m in 1..=n_big {
        let mut g = F::zero_in(ctx);
        for (n, b) in row.iter().enumerate().skip(1) {
            g = g + &(prof[n].clone() * b);
        }
        coupled[m] = g;
        let mut next = Vec::with_capacity(row.len() + 1);
        next.push(F::one_in(ctx));
        for j in 1..row.len() {
            next.push(row[j - 1].clone() + &row[j]);
        }
        next.push(F::one_in(ctx));
        row = next;
    }

    let tail = &x.values()[r..];
    let first = scaled(&tail[0], n_big);
    // the strict order n_r < m_{1,1} is already inside `coupled`
    let mut init = vec![F::zero_in(ctx); n_big + 1];
    for m in 1..=n_big {
        init[m] = div_or_pole(coupled[m].clone(), &(first.clone() - int::<F>(ctx, m)), r + 1, m)?;
    }

    let mut rest = SumSignature::new(ctx, n_big);
    for _ in 1..l.parts()[0] {
        rest.push(Order::Weak, |m| int::<F>(ctx, m).try_inv())?;
    }
    push_iterated_slots(&mut rest, &l.remove(0), &tail[1..], n_big, r + 1)?;
    let out = rest.profile_from(init);
    let total = out.iter().skip(1).fold(F::zero_in(ctx), |acc, v| acc + v);
    // later blocks carry 1/(N x - m) rather than the 1/(m - N x) pushed above
    Ok(if s % 2 == 0 { -total } else { total })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn pt(v: &[(i64, i64)]) -> ParamPoint<Rational> {
        ParamPoint::new((), v.iter().map(|&(n, d)| q(n, d)).collect())
    }

    #[test]
    fn connector_values() {
        // binom(3, 2) / binom(2 * 5/2 - 1, 2) = 3 / 6
        assert_eq!(connector(&q(5, 2), 2, 3, 2).unwrap(), q(1, 2));
        assert_eq!(connector(&q(7, 3), 0, 4, 3).unwrap(), q(1, 1));
        assert!(connector(&q(1, 1), 2, 4, 2).unwrap_err().is_pole());
    }

    #[test]
    fn transport_steps_agree() {
        let x = pt(&[(-3, 2), (5, 3), (-7, 4)]);
        let k = Index::of(&[2, 1, 3]);
        let n_big = 9;
        let first = connected_sum(&k, &Index::empty(), &x, n_big).unwrap();
        for cut in (0..3).rev() {
            let (a, b) = k.parts().split_at(cut);
            let v = connected_sum(&Index::of(a), &Index::of(b), &x, n_big).unwrap();
            assert_eq!(v, first, "cut at {cut}");
        }
    }

    #[test]
    fn depth_one_ends() {
        let x = pt(&[(-1, 1)]);
        let a = connected_sum(&Index::of(&[1]), &Index::empty(), &x, 2).unwrap();
        let b = connected_sum(&Index::empty(), &Index::of(&[1]), &x, 2).unwrap();
        assert_eq!(a, q(-7, 12));
        assert_eq!(a, b);
    }

    #[test]
    fn shape_is_checked() {
        let e = connected_sum(&Index::of(&[1]), &Index::of(&[1]), &pt(&[(2, 1)]), 4).unwrap_err();
        assert_eq!(e, Error::Shape { expected: 2, got: 1 });
    }
}
