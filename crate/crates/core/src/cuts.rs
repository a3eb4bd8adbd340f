//! Exhaustive search over the cuts of a small graph.

use crate::error::{Error, Result};
use crate::graph::Pair;

/// Largest vertex count the exhaustive searches accept.
pub const MAX_EXHAUSTIVE_VERTICES: usize = 24;

pub(crate) fn check_budget(n: usize) -> Result<()> {
    if n > MAX_EXHAUSTIVE_VERTICES {
        return Err(Error::BudgetExceeded {
            what: "vertices",
            got: n,
            limit: MAX_EXHAUSTIVE_VERTICES,
        });
    }
    Ok(())
}

fn masks(n: usize, pairs: &[Pair]) -> Vec<u32> {
    let mut out = vec![0u32; n];
    for &(u, v) in pairs {
        out[u] |= 1 << v;
        out[v] |= 1 << u;
    }
    out
}

/// Minimises `#{a in A : a not crossing W} + #{b in B : b crossing W}` over
/// all `W` not containing vertex 0, walking subsets in Gray-code order.
/// Returns the minimum and a minimising `W` as a bit mask.
pub(crate) fn min_over_cuts(n: usize, inside_cost: &[Pair], crossing_cost: &[Pair]) -> (usize, u32) {
    debug_assert!(n <= MAX_EXHAUSTIVE_VERTICES);
    let a = masks(n, inside_cost);
    let b = masks(n, crossing_cost);
    let full: u32 = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
    let mut w: u32 = 0;
    let mut cost = inside_cost.len() as i64;
    let (mut best, mut best_w) = (cost, 0u32);
    let free = n.saturating_sub(1);
    for step in 1u64..(1u64 << free) {
        let v = step.trailing_zeros() as usize + 1;
        let bit = 1u32 << v;
        let same = if w & bit != 0 { w } else { full & !w };
        let other = full & !same;
        cost += (a[v] & other).count_ones() as i64 - (a[v] & same).count_ones() as i64;
        cost += (b[v] & same).count_ones() as i64 - (b[v] & other).count_ones() as i64;
        w ^= bit;
        if cost < best {
            best = cost;
            best_w = w;
        }
    }
    (best as usize, best_w)
}
