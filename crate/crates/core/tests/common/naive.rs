//! Brute-force evaluators: enumerate every summation tuple and multiply the
//! summand out from scratch. Nothing here shares code with the library's
//! dynamic programming; `None` means some denominator vanished.

use dmpl::{Field, Index, ParamPoint};

#[derive(Clone, Copy, PartialEq)]
pub enum Rel {
    Lt,
    Le,
}

/// All tuples `1 <= t_1 ? t_2 ? ... <= upper`, `rels[i]` relating `t_i` to
/// `t_{i+1}`.
pub fn tuples(len: usize, rels: &[Rel], upper: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(len);
    fn go(len: usize, rels: &[Rel], upper: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        let lo = match cur.last() {
            None => 1,
            Some(&p) => match rels[cur.len() - 1] {
                Rel::Lt => p + 1,
                Rel::Le => p,
            },
        };
        for t in lo..=upper {
            cur.push(t);
            go(len, rels, upper, cur, out);
            cur.pop();
        }
    }
    go(len, rels, upper, &mut cur, &mut out);
    out
}

fn int<F: Field>(ctx: F::Ctx, n: i64) -> F {
    F::from_int(ctx, n)
}

fn inv<F: Field>(v: F) -> Option<F> {
    v.try_inv().ok()
}

/// `a (a-1) ... (a-n+1) / n!`.
pub fn binom<F: Field>(a: &F, n: usize) -> F {
    let ctx = a.ctx();
    let mut num = int::<F>(ctx, 1);
    let mut den = int::<F>(ctx, 1);
    for j in 0..n {
        num = num * (a.clone() - int::<F>(ctx, j as i64));
        den = den * int::<F>(ctx, j as i64 + 1);
    }
    num * den.try_inv().expect("n! is invertible in the fields used here")
}

fn pow<F: Field>(v: &F, e: usize) -> F {
    let mut out = int::<F>(v.ctx(), 1);
    for _ in 0..e {
        out = out * v;
    }
    out
}

fn nx<F: Field>(x: &F, n_big: usize) -> F {
    int::<F>(x.ctx(), n_big as i64) * x
}

fn n_pow_inv<F: Field>(ctx: F::Ctx, n: usize, k: usize) -> Option<F> {
    inv(pow(&int::<F>(ctx, n as i64), k))
}

fn sum_over<F: Field>(ctx: F::Ctx, ts: Vec<Vec<usize>>, term: impl Fn(&[usize]) -> Option<F>) -> Option<F> {
    let mut acc = int::<F>(ctx, 0);
    for t in ts {
        acc = acc + term(&t)?;
    }
    Some(acc)
}

fn strict(r: usize) -> Vec<Rel> {
    vec![Rel::Lt; r.saturating_sub(1)]
}

fn next_or_one<F: Field>(x: &[F], i: usize, ctx: F::Ctx) -> F {
    x.get(i + 1).cloned().unwrap_or_else(|| int::<F>(ctx, 1))
}

pub fn li_tilde<F: Field>(k: &Index, x: &ParamPoint<F>, n_big: usize) -> Option<F> {
    let ctx = x.ctx();
    let (kk, v) = (k.parts(), x.values());
    let r = kk.len();
    let one = int::<F>(ctx, 1);
    sum_over(ctx, tuples(r, &strict(r), n_big.saturating_sub(1)), |t| {
        let mut p = one.clone();
        for i in 0..r {
            let top = binom(&(nx(&next_or_one(v, i, ctx), n_big) - &one), t[i]);
            let bottom = binom(&(nx(&v[i], n_big) - &one), t[i]);
            p = p * top * inv(bottom)? * n_pow_inv::<F>(ctx, t[i], kk[i])?;
        }
        Some(p)
    })
}

pub fn li_sh<F: Field>(k: &Index, z: &ParamPoint<F>, n_big: usize) -> Option<F> {
    let ctx = z.ctx();
    let (kk, v) = (k.parts(), z.values());
    let r = kk.len();
    sum_over(ctx, tuples(r, &strict(r), n_big.saturating_sub(1)), |t| {
        let mut p = int::<F>(ctx, 1);
        for i in 0..r {
            let q = next_or_one(v, i, ctx) * inv(v[i].clone())?;
            p = p * pow(&q, t[i]) * n_pow_inv::<F>(ctx, t[i], kk[i])?;
        }
        Some(p)
    })
}

pub fn li_star<F: Field>(k: &Index, xi: &ParamPoint<F>, n_big: usize) -> Option<F> {
    let ctx = xi.ctx();
    let (kk, v) = (k.parts(), xi.values());
    let r = kk.len();
    sum_over(ctx, tuples(r, &strict(r), n_big.saturating_sub(1)), |t| {
        let mut p = int::<F>(ctx, 1);
        for i in 0..r {
            p = p * pow(&v[i], t[i]) * n_pow_inv::<F>(ctx, t[i], kk[i])?;
        }
        Some(p)
    })
}

/// Relations and block starts of the flattened iterated-sum variables.
fn iterated_shape(k: &[usize]) -> (Vec<Rel>, Vec<bool>) {
    let mut rels = Vec::new();
    let mut starts = Vec::new();
    for (j, &kj) in k.iter().enumerate() {
        for t in 0..kj {
            if !(j == 0 && t == 0) {
                rels.push(if t == 0 { Rel::Lt } else { Rel::Le });
            }
            starts.push(t == 0);
        }
    }
    (rels, starts)
}

/// `prod 1/((m_{j,1} - N x_j) m_{j,2} ... m_{j,k_j})` over the flattened
/// variables `m`.
fn blocks_term<F: Field>(starts: &[bool], x: &[F], m: &[usize], n_big: usize, ctx: F::Ctx) -> Option<F> {
    let mut p = int::<F>(ctx, 1);
    let mut j = 0;
    for (pos, &s) in starts.iter().enumerate() {
        let mm = int::<F>(ctx, m[pos] as i64);
        if s {
            p = p * inv(mm - &nx(&x[j], n_big))?;
            j += 1;
        } else {
            p = p * inv(mm)?;
        }
    }
    Some(p)
}

pub fn iterated<F: Field>(k: &Index, x: &ParamPoint<F>, n_big: usize, inclusive: bool) -> Option<F> {
    let ctx = x.ctx();
    let (rels, starts) = iterated_shape(k.parts());
    let upper = if inclusive { n_big } else { n_big.saturating_sub(1) };
    sum_over(ctx, tuples(starts.len(), &rels, upper), |m| blocks_term(&starts, x.values(), m, n_big, ctx))
}

/// Left side of the variant with ranges up to `N`.
pub fn modified_lhs<F: Field>(k: &Index, x: &ParamPoint<F>, n_big: usize) -> Option<F> {
    let ctx = x.ctx();
    let (kk, v) = (k.parts(), x.values());
    let r = kk.len();
    let one = int::<F>(ctx, 1);
    sum_over(ctx, tuples(r, &strict(r), n_big), |t| {
        let mut p = one.clone();
        for i in 0..r {
            let top = if i + 1 < r {
                binom(&(nx(&v[i + 1], n_big) - &one), t[i])
            } else {
                binom(&int::<F>(ctx, n_big as i64), t[i])
            };
            let bottom = binom(&(nx(&v[i], n_big) - &one), t[i]);
            p = p * top * inv(bottom)? * n_pow_inv::<F>(ctx, t[i], kk[i])?;
        }
        Some(p)
    })
}

pub fn modified_rhs<F: Field>(k: &Index, x: &ParamPoint<F>, n_big: usize) -> Option<F> {
    let v = iterated(k, x, n_big, true)?;
    Some(if k.depth() % 2 == 1 { -v } else { v })
}

/// The connected sum straight from its definition.
pub fn connected<F: Field>(k: &Index, l: &Index, x: &ParamPoint<F>, n_big: usize) -> Option<F> {
    let (r, s) = (k.depth(), l.depth());
    let v = x.values();
    if s == 0 {
        return modified_lhs(k, x, n_big);
    }
    if r == 0 {
        return modified_rhs(l, x, n_big);
    }
    let ctx = x.ctx();
    let one = int::<F>(ctx, 1);
    let (mrels, starts) = iterated_shape(l.parts());
    let mut rels = strict(r);
    rels.push(Rel::Lt);
    rels.extend(mrels);
    let total = r + starts.len();
    sum_over(ctx, tuples(total, &rels, n_big), |t| {
        let (n, m) = t.split_at(r);
        let mut p = one.clone();
        for i in 0..r {
            if i + 1 < r {
                let top = binom(&(nx(&v[i + 1], n_big) - &one), n[i]);
                let bottom = binom(&(nx(&v[i], n_big) - &one), n[i]);
                p = p * top * inv(bottom)?;
            }
            p = p * n_pow_inv::<F>(ctx, n[i], k.parts()[i])?;
        }
        let conn_top = binom(&int::<F>(ctx, m[0] as i64 - 1), n[r - 1]);
        let conn_bottom = binom(&(nx(&v[r - 1], n_big) - &one), n[r - 1]);
        p = p * conn_top * inv(conn_bottom)?;
        // P uses 1/(N x - m_1), the opposite sign of the iterated sum's factor
        let sign = if s % 2 == 1 { -one.clone() } else { one.clone() };
        Some(p * blocks_term(&starts, &v[r..], m, n_big, ctx)? * sign)
    })
}

pub fn r_plain<F: Field>(ctx: F::Ctx, a: &[usize], b: &[usize], n_big: usize) -> Option<F> {
    let r = a.len();
    sum_over(ctx, tuples(r, &strict(r), n_big.saturating_sub(1)), |t| {
        let mut p = int::<F>(ctx, 1);
        for i in 0..r {
            p = p * n_pow_inv::<F>(ctx, n_big - t[i], a[i])? * n_pow_inv::<F>(ctx, t[i], b[i])?;
        }
        Some(p)
    })
}

pub fn r_twisted<F: Field>(ctx: F::Ctx, z: &[Vec<F>], b: &[usize], n_big: usize) -> Option<F> {
    let r = z.len();
    sum_over(ctx, tuples(r, &strict(r), n_big.saturating_sub(1)), |t| {
        let mut p = int::<F>(ctx, 1);
        for i in 0..r {
            let n = int::<F>(ctx, t[i] as i64);
            for zi in &z[i] {
                p = p * inv(n.clone() - &nx(zi, n_big))?;
            }
            p = p * n_pow_inv::<F>(ctx, t[i], b[i])?;
        }
        Some(p)
    })
}
