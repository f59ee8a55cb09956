//! Exact evaluators. Every sum is reduced to a [`SumSignature`] and
//! evaluated in one pass costing `O(N * slots)` field operations.

mod chain;
mod connected;
mod point;
mod sums;

pub use chain::{cell_updates, reset_cell_updates, Order, Slot, SumSignature};
pub use connected::{connected_sum, connector};
pub use point::ParamPoint;
pub use sums::{
    difference_quotient, iterated_sum, li_sh_truncated, li_star_prefix, li_star_truncated, li_tilde, modified_lhs,
    modified_main_sides, modified_rhs, r_value_plain, r_value_twisted,
};
