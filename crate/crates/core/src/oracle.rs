//! Exhaustive ground truth for small graphs.

use crate::coloring::Coloring;
use crate::exact;
use crate::graph::Graph;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Default order cap for exhaustive decisions.
pub const DEFAULT_CAP: usize = 16;
/// Independence numbers use 64-bit masks.
const HARD_CAP: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("order {order} exceeds the oracle cap {cap}")]
    CapExceeded { order: usize, cap: usize },
    #[error("k = {k} must lie in 1..={order}")]
    InvalidK { k: usize, order: usize },
}

fn check_cap(g: &Graph, cap: usize) -> Result<(), OracleError> {
    let cap = cap.min(HARD_CAP);
    if g.order() > cap {
        return Err(OracleError::CapExceeded { order: g.order(), cap });
    }
    Ok(())
}

/// An equitable `k`-colouring if one exists; `None` is definitive.
pub fn decide_equitable(g: &Graph, k: usize) -> Result<Option<Coloring>, OracleError> {
    decide_equitable_with_cap(g, k, DEFAULT_CAP)
}

pub fn decide_equitable_with_cap(g: &Graph, k: usize, cap: usize) -> Result<Option<Coloring>, OracleError> {
    check_cap(g, cap)?;
    if k == 0 || k > g.order() {
        return Err(OracleError::InvalidK { k, order: g.order() });
    }
    Ok(exact::search(g, k, true).map(|classes| Coloring::new(g.order(), classes).expect("search yields a partition")))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExactParams {
    /// Chromatic number.
    pub chi: usize,
    /// Least `k` with an equitable `k`-colouring.
    pub chi_eq: usize,
    /// Least `m` such that every `k` in `m..=|G|` admits one.
    pub chi_eq_star: usize,
    /// Independence number.
    pub alpha: usize,
}

/// Exact `χ`, `χ=`, `χ=*` and `α`.
///
/// `χ=*` is checked for every `k` from `χ` up to `|G|`, not only up to
/// `Δ+1`.
pub fn exact_params(g: &Graph) -> Result<ExactParams, OracleError> {
    exact_params_with_cap(g, DEFAULT_CAP)
}

pub fn exact_params_with_cap(g: &Graph, cap: usize) -> Result<ExactParams, OracleError> {
    check_cap(g, cap)?;
    let n = g.order();
    if n == 0 {
        return Ok(ExactParams {
            chi: 0,
            chi_eq: 0,
            chi_eq_star: 0,
            alpha: 0,
        });
    }
    let chi = (1..=n).find(|&k| exact::search(g, k, false).is_some()).expect("n classes always suffice");
    let equitable: Vec<bool> = (1..=n).map(|k| k >= chi && exact::search(g, k, true).is_some()).collect();
    let chi_eq = 1 + equitable.iter().position(|&b| b).expect("n singletons are equitable");
    let chi_eq_star = 1 + equitable.iter().rposition(|&b| !b).map_or(0, |i| i + 1);
    Ok(ExactParams {
        chi,
        chi_eq,
        chi_eq_star,
        alpha: independence_number(g),
    })
}

/// Size of a maximum independent set, by branching on a vertex of the
/// remaining set: either it is left out, or it joins and its neighbours go.
pub fn independence_number(g: &Graph) -> usize {
    assert!(g.order() <= HARD_CAP, "independence number needs order ≤ {HARD_CAP}");
    let adj: Vec<u64> = (0..g.order())
        .map(|v| g.neighbors(v).iter().fold(0u64, |m, u| m | (1 << u)))
        .collect();
    let all = if g.order() == 64 { u64::MAX } else { (1u64 << g.order()) - 1 };
    let mut best = 0;
    mis(&adj, all, 0, &mut best);
    best
}

fn mis(adj: &[u64], avail: u64, size: usize, best: &mut usize) {
    if avail == 0 {
        *best = (*best).max(size);
        return;
    }
    if size + avail.count_ones() as usize <= *best {
        return;
    }
    // A vertex of degree ≤ 1 in what remains can always be taken.
    let mut rest = avail;
    while rest != 0 {
        let v = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        if (adj[v] & avail).count_ones() <= 1 {
            return mis(adj, avail & !(1 << v) & !adj[v], size + 1, best);
        }
    }
    let v = (0..adj.len())
        .filter(|&v| avail & (1 << v) != 0)
        .max_by_key(|&v| ((adj[v] & avail).count_ones(), std::cmp::Reverse(v)))
        .expect("avail is non-empty");
    mis(adj, avail & !(1 << v) & !adj[v], size + 1, best);
    mis(adj, avail & !(1 << v), size, best);
}
