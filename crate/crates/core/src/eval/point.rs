use std::fmt;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::index::Index;

/// A tuple `(x_1, ..., x_r)` over one field. The convention `x_{r+1} = 1`
/// is applied by the evaluators and never stored.
#[derive(Clone, Debug, PartialEq)]
pub struct ParamPoint<F: Field> {
    ctx: F::Ctx,
    values: Vec<F>,
}

impl<F: Field> ParamPoint<F> {
    pub fn new(ctx: F::Ctx, values: Vec<F>) -> Self {
        debug_assert!(values.iter().all(|v| v.ctx() == ctx));
        ParamPoint { ctx, values }
    }

    pub fn empty(ctx: F::Ctx) -> Self {
        ParamPoint { ctx, values: Vec::new() }
    }

    pub fn ctx(&self) -> F::Ctx {
        self.ctx
    }

    pub fn values(&self) -> &[F] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// `x_{i+1}` for 0-based `i`, reading past the end as 1.
    pub fn next_or_one(&self, i: usize) -> F {
        self.values.get(i + 1).cloned().unwrap_or_else(|| F::one_in(self.ctx))
    }

    pub fn check_depth(&self, k: &Index) -> Result<()> {
        if self.values.len() != k.depth() {
            return Err(Error::Shape { expected: k.depth(), got: self.values.len() });
        }
        Ok(())
    }

    /// `x` with `h` added to slot `i`.
    pub fn shifted(&self, i: usize, h: &F) -> Self {
        let mut v = self.values.clone();
        v[i] = v[i].clone() + h;
        ParamPoint { ctx: self.ctx, values: v }
    }

    /// `x` with slot `i` removed.
    pub fn removed(&self, i: usize) -> Self {
        let mut v = self.values.clone();
        v.remove(i);
        ParamPoint { ctx: self.ctx, values: v }
    }

    pub fn slice(&self, range: std::ops::Range<usize>) -> Self {
        ParamPoint { ctx: self.ctx, values: self.values[range].to_vec() }
    }

    pub fn map(&self, f: impl Fn(&F) -> F) -> Self {
        ParamPoint { ctx: self.ctx, values: self.values.iter().map(f).collect() }
    }
}

impl<F: Field> fmt::Display for ParamPoint<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v: Vec<String> = self.values.iter().map(|x| x.to_exact().to_string()).collect();
        write!(f, "({})", v.join(","))
    }
}
