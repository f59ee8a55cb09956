//! Nested sums over a chain `0 < n_1 <(=) n_2 <(=) ... <= upper` whose summand
//! factorizes into one factor per variable.

use std::cell::Cell;

use crate::error::Result;
use crate::field::Field;

/// How a slot's variable compares with the previous one.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Order {
    /// `n_prev < n`
    Strict,
    /// `n_prev <= n`
    Weak,
}

/// One summation variable: its ordering against the previous variable and
/// its factor for `n = 1..=upper` (entry 0 is unused).
#[derive(Clone, Debug)]
pub struct Slot<F> {
    pub order: Order,
    pub factors: Vec<F>,
}

thread_local! {
    static CELL_UPDATES: Cell<u64> = const { Cell::new(0) };
}

/// Number of DP cell updates performed on this thread so far.
pub fn cell_updates() -> u64 {
    CELL_UPDATES.with(|c| c.get())
}

pub fn reset_cell_updates() {
    CELL_UPDATES.with(|c| c.set(0));
}

/// A chain of slots sharing one upper bound: the normal form every nested
/// sum in this crate is reduced to.
#[derive(Clone, Debug)]
pub struct SumSignature<F: Field> {
    ctx: F::Ctx,
    upper: usize,
    slots: Vec<Slot<F>>,
}

impl<F: Field> SumSignature<F> {
    pub fn new(ctx: F::Ctx, upper: usize) -> Self {
        SumSignature { ctx, upper, slots: Vec::new() }
    }

    pub fn upper(&self) -> usize {
        self.upper
    }

    pub fn len(&self) -> usize {
        self.slots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.slots.is_empty()
    }

    /// Adds a slot whose factor at `n` is `factor(n)`, called for
    /// `n = 1, 2, ..., upper` in order.
    pub fn push(&mut self, order: Order, mut factor: impl FnMut(usize) -> Result<F>) -> Result<()> {
        let mut factors = Vec::with_capacity(self.upper + 1);
        factors.push(F::zero_in(self.ctx));
        for n in 1..=self.upper {
            factors.push(factor(n)?);
        }
        self.slots.push(Slot { order, factors });
        Ok(())
    }

    /// `profile[n]` is the sum over all chains whose last variable equals
    /// `n`, starting from `init` (the weight on the virtual variable
    /// `n_0`). The default start is `n_0 = 0` with weight 1.
    pub fn profile_from(&self, init: Vec<F>) -> Vec<F> {
        assert_eq!(init.len(), self.upper + 1);
        let mut cur = init;
        for slot in &self.slots {
            let mut next = Vec::with_capacity(self.upper + 1);
            next.push(F::zero_in(self.ctx));
            let mut acc = cur[0].clone();
            for n in 1..=self.upper {
                let v = match slot.order {
                    Order::Strict => {
                        let v = acc.clone();
                        acc = acc + &cur[n];
                        v
                    }
                    Order::Weak => {
                        acc = acc + &cur[n];
                        acc.clone()
                    }
                };
                next.push(v * &slot.factors[n]);
            }
            CELL_UPDATES.with(|c| c.set(c.get() + self.upper as u64));
            cur = next;
        }
        cur
    }

    pub fn profile(&self) -> Vec<F> {
        self.profile_from(self.unit_start())
    }

    fn unit_start(&self) -> Vec<F> {
        let mut v = vec![F::zero_in(self.ctx); self.upper + 1];
        v[0] = F::one_in(self.ctx);
        v
    }

    /// The full sum; an empty chain sums to 1.
    pub fn total(&self) -> F {
        if self.slots.is_empty() {
            return F::one_in(self.ctx);
        }
        sum_tail(self.ctx, &self.profile())
    }

    /// `out[m]` is the sum over chains whose last variable is at most `m`,
    /// for `m = 0..=upper`; every entry is 1 for an empty chain.
    pub fn prefix_totals(&self) -> Vec<F> {
        if self.slots.is_empty() {
            return vec![F::one_in(self.ctx); self.upper + 1];
        }
        let mut out = Vec::with_capacity(self.upper + 1);
        let mut acc = F::zero_in(self.ctx);
        for (n, v) in self.profile().into_iter().enumerate() {
            if n > 0 {
                acc = acc + &v;
            }
            out.push(acc.clone());
        }
        out
    }
}

/// `v[1] + ... + v[len-1]`.
pub(crate) fn sum_tail<F: Field>(ctx: F::Ctx, v: &[F]) -> F {
    v.iter().skip(1).fold(F::zero_in(ctx), |a, b| a + b)
}
