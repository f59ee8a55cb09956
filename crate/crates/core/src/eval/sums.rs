//! The truncated polylogarithms, the binomial-corrected sum and the discrete
//! iterated integral, each as a single pass over a [`SumSignature`].

use crate::error::{Error, Result};
use crate::eval::chain::{Order, SumSignature};
use crate::eval::point::ParamPoint;
use crate::field::Field;
use crate::index::Index;

pub(crate) fn int<F: Field>(ctx: F::Ctx, n: usize) -> F {
    F::from_int(ctx, n as i64)
}

/// `1 / n^k`.
pub(crate) fn inv_pow<F: Field>(ctx: F::Ctx, n: usize, k: usize) -> Result<F> {
    int::<F>(ctx, n).powu(k as u64).try_inv()
}

/// Divides, turning a vanishing denominator into a pole at `(slot, n)`.
pub(crate) fn div_or_pole<F: Field>(num: F, den: &F, slot: usize, n: usize) -> Result<F> {
    if den.vanishes() {
        return Err(Error::Pole { slot, n: n as i64 });
    }
    num.checked_div(den)
}

/// `N * x`.
pub(crate) fn scaled<F: Field>(x: &F, n_big: usize) -> F {
    int::<F>(x.ctx(), n_big) * x
}

/// `sum_{0<n_1<...<n_r<N} prod n_i^{-k_i} (z_{i+1}/z_i)^{n_i}`, `z_{r+1} = 1`.
pub fn li_sh_truncated<F: Field>(k: &Index, z: &ParamPoint<F>, n_big: usize) -> Result<F> {
    z.check_depth(k)?;
    if let Some(i) = z.values().iter().position(|v| v.vanishes()) {
        return Err(Error::domain(format!("z_{} = 0", i + 1)));
    }
    let ctx = z.ctx();
    let mut sig = SumSignature::new(ctx, n_big.saturating_sub(1));
    for (i, &ki) in k.parts().iter().enumerate() {
        let q = z.next_or_one(i).checked_div(&z.values()[i])?;
        let mut pw = F::one_in(ctx);
        sig.push(Order::Strict, |n| {
            pw = pw.clone() * &q;
            Ok(pw.clone() * &inv_pow::<F>(ctx, n, ki)?)
        })?;
    }
    Ok(sig.total())
}

/// `sum_{0<n_1<...<n_r<N} prod xi_i^{n_i} / n_i^{k_i}`.
pub fn li_star_truncated<F: Field>(k: &Index, xi: &ParamPoint<F>, n_big: usize) -> Result<F> {
    xi.check_depth(k)?;
    let ctx = xi.ctx();
    let mut sig = SumSignature::new(ctx, n_big.saturating_sub(1));
    for (i, &ki) in k.parts().iter().enumerate() {
        let q = xi.values()[i].clone();
        let mut pw = F::one_in(ctx);
        sig.push(Order::Strict, |n| {
            pw = pw.clone() * &q;
            Ok(pw.clone() * &inv_pow::<F>(ctx, n, ki)?)
        })?;
    }
    Ok(sig.total())
}

/// `out[N] = Li*_k^{<N}(xi)` for every `N = 1..=n_max`; `out[0]` repeats
/// `out[1]`.
pub fn li_star_prefix<F: Field>(k: &Index, xi: &ParamPoint<F>, n_max: usize) -> Result<Vec<F>> {
    xi.check_depth(k)?;
    let ctx = xi.ctx();
    let mut sig = SumSignature::new(ctx, n_max.saturating_sub(1));
    for (i, &ki) in k.parts().iter().enumerate() {
        let q = xi.values()[i].clone();
        let mut pw = F::one_in(ctx);
        sig.push(Order::Strict, |n| {
            pw = pw.clone() * &q;
            Ok(pw.clone() * &inv_pow::<F>(ctx, n, ki)?)
        })?;
    }
    let pre = sig.prefix_totals();
    let mut out = Vec::with_capacity(n_max + 1);
    out.push(pre[0].clone());
    out.extend(pre);
    out.truncate(n_max + 1);
    Ok(out)
}

/// Pushes the strict slots `n^{-k_i} binom(N x_{i+1}-1, n)/binom(N x_i-1, n)`
/// for `i < count`, the ratio advanced by `(N x_{i+1} - n)/(N x_i - n)`.
fn push_ratio_slots<F: Field>(
    sig: &mut SumSignature<F>,
    k: &Index,
    x: &ParamPoint<F>,
    n_big: usize,
    count: usize,
) -> Result<()> {
    let ctx = x.ctx();
    for i in 0..count {
        let ki = k.parts()[i];
        let top = scaled(&x.next_or_one(i), n_big);
        let bottom = scaled(&x.values()[i], n_big);
        let mut ratio = F::one_in(ctx);
        sig.push(Order::Strict, |n| {
            let num = top.clone() - int::<F>(ctx, n);
            let den = bottom.clone() - int::<F>(ctx, n);
            ratio = div_or_pole(ratio.clone() * &num, &den, i + 1, n)?;
            Ok(ratio.clone() * &inv_pow::<F>(ctx, n, ki)?)
        })?;
    }
    Ok(())
}

/// The binomial-corrected truncated polylogarithm
/// `sum_{0<n_1<...<n_r<N} prod n_i^{-k_i} binom(N x_{i+1}-1, n_i)/binom(N x_i-1, n_i)`.
pub fn li_tilde<F: Field>(k: &Index, x: &ParamPoint<F>, n_big: usize) -> Result<F> {
    x.check_depth(k)?;
    let mut sig = SumSignature::new(x.ctx(), n_big.saturating_sub(1));
    push_ratio_slots(&mut sig, k, x, n_big, k.depth())?;
    Ok(sig.total())
}

/// Pushes the slots of the discrete iterated integral: per block `j`, a
/// strict slot `1/(n - N x_j)` followed by `k_j - 1` weak slots `1/n`.
pub(crate) fn push_iterated_slots<F: Field>(
    sig: &mut SumSignature<F>,
    k: &Index,
    x: &[F],
    n_big: usize,
    slot_offset: usize,
) -> Result<()> {
    for (j, &kj) in k.parts().iter().enumerate() {
        let ctx = x[j].ctx();
        let nx = scaled(&x[j], n_big);
        sig.push(Order::Strict, |n| {
            div_or_pole(F::one_in(ctx), &(int::<F>(ctx, n) - &nx), slot_offset + j + 1, n)
        })?;
        for _ in 1..kj {
            sig.push(Order::Weak, |n| int::<F>(ctx, n).try_inv())?;
        }
    }
    Ok(())
}

/// The discrete iterated integral
/// `sum prod_j 1/((n_{j,1} - N x_j) n_{j,2} ... n_{j,k_j})` with weak order
/// inside blocks and strict order between them; variables below `N`, or up
/// to `N` when `inclusive`.
pub fn iterated_sum<F: Field>(k: &Index, x: &ParamPoint<F>, n_big: usize, inclusive: bool) -> Result<F> {
    x.check_depth(k)?;
    let upper = if inclusive { n_big } else { n_big.saturating_sub(1) };
    let mut sig = SumSignature::new(x.ctx(), upper);
    push_iterated_slots(&mut sig, k, x.values(), n_big, 0)?;
    Ok(sig.total())
}

/// Both sides of the variant with ranges up to `N` and trailing factor
/// `binom(N, n_r)/binom(N x_r - 1, n_r)`.
pub fn modified_main_sides<F: Field>(k: &Index, x: &ParamPoint<F>, n_big: usize) -> Result<(F, F)> {
    Ok((modified_lhs(k, x, n_big)?, modified_rhs(k, x, n_big)?))
}

pub fn modified_lhs<F: Field>(k: &Index, x: &ParamPoint<F>, n_big: usize) -> Result<F> {
    x.check_depth(k)?;
    let ctx = x.ctx();
    let r = k.depth();
    let mut sig = SumSignature::new(ctx, n_big);
    if r == 0 {
        return Ok(sig.total());
    }
    push_ratio_slots(&mut sig, k, x, n_big, r - 1)?;
    let kr = k.parts()[r - 1];
    let bottom = scaled(&x.values()[r - 1], n_big);
    let mut ratio = F::one_in(ctx);
    sig.push(Order::Strict, |n| {
        let num = int::<F>(ctx, n_big + 1 - n);
        let den = bottom.clone() - int::<F>(ctx, n);
        ratio = div_or_pole(ratio.clone() * &num, &den, r, n)?;
        Ok(ratio.clone() * &inv_pow::<F>(ctx, n, kr)?)
    })?;
    Ok(sig.total())
}

/// `(-1)^r` times the inclusive iterated sum.
pub fn modified_rhs<F: Field>(k: &Index, x: &ParamPoint<F>, n_big: usize) -> Result<F> {
    let v = iterated_sum(k, x, n_big, true)?;
    Ok(if k.depth() % 2 == 1 { -v } else { v })
}

/// Plain error sum `sum_{0<n_1<...<n_k<N} prod 1/((N-n_i)^{a_i} n_i^{b_i})`.
pub fn r_value_plain<F: Field>(ctx: F::Ctx, a: &[usize], b: &[usize], n_big: usize) -> Result<F> {
    check_ab(a, b)?;
    let mut sig = SumSignature::new(ctx, n_big.saturating_sub(1));
    for (&ai, &bi) in a.iter().zip(b) {
        sig.push(Order::Strict, |n| {
            (int::<F>(ctx, n_big - n).powu(ai as u64) * &int::<F>(ctx, n).powu(bi as u64)).try_inv()
        })?;
    }
    Ok(sig.total())
}

/// Twisted error sum with `prod_j (n_i - N z_{i,j})` in place of `(N-n_i)^{a_i}`;
/// `z[i]` holds the `a_i` points of group `i`.
pub fn r_value_twisted<F: Field>(ctx: F::Ctx, z: &[Vec<F>], b: &[usize], n_big: usize) -> Result<F> {
    let a: Vec<usize> = z.iter().map(Vec::len).collect();
    check_ab(&a, b)?;
    for zi in z.iter().flatten() {
        if zi.has_modulus_at_least_one() == Some(false) {
            return Err(Error::domain(format!("|{zi}| < 1")));
        }
    }
    let mut sig = SumSignature::new(ctx, n_big.saturating_sub(1));
    for (i, (zi, &bi)) in z.iter().zip(b).enumerate() {
        let nz: Vec<F> = zi.iter().map(|v| scaled(v, n_big)).collect();
        sig.push(Order::Strict, |n| {
            let nn = int::<F>(ctx, n);
            let den = nz.iter().fold(nn.powu(bi as u64), |acc, v| acc * &(nn.clone() - v));
            div_or_pole(F::one_in(ctx), &den, i + 1, n)
        })?;
    }
    Ok(sig.total())
}

fn check_ab(a: &[usize], b: &[usize]) -> Result<()> {
    if a.len() != b.len() {
        return Err(Error::Shape { expected: a.len(), got: b.len() });
    }
    if a.iter().zip(b).any(|(x, y)| x + y == 0) {
        return Err(Error::domain("every a_i + b_i must be at least 1"));
    }
    Ok(())
}

/// `N (f(x + e_i/N) - f(x))`.
pub fn difference_quotient<F: Field>(
    f: impl Fn(&ParamPoint<F>) -> Result<F>,
    x: &ParamPoint<F>,
    i: usize,
    n_big: usize,
) -> Result<F> {
    let ctx = x.ctx();
    let h = int::<F>(ctx, n_big).try_inv()?;
    let shifted = f(&x.shifted(i, &h))?;
    let base = f(x)?;
    Ok(int::<F>(ctx, n_big) * &(shifted - base))
}
