//! Lexicographic local search over small class repartitions.
//!
//! A move takes the union of at most `radius` colour classes and
//! repartitions it into independent blocks of size at most three so that
//! the profile `(r, s)` strictly increases. Running moves until none
//! applies yields a move-closed `[r,s,t]`-colouring: the executable
//! stand-in for a lexicographically maximal one.

mod audit;
mod repartition;

pub use audit::{audit, AuditReport, AuditViolation};

use crate::coloring::{lex_compare, Coloring, ColoringError, Profile};
use crate::graph::Graph;
use repartition::LocalUnion;
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use thiserror::Error;

/// Default move radius, in classes.
pub const DEFAULT_RADIUS: usize = 4;
/// Largest supported radius (the local search packs unions into 64-bit masks).
pub const MAX_RADIUS: usize = 21;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error(transparent)]
    Coloring(#[from] ColoringError),
    #[error("radius {0} outside 1..={MAX_RADIUS}")]
    Radius(usize),
    #[error("colouring does not cover the graph (order {graph} vs {coloring})")]
    OrderMismatch { graph: usize, coloring: usize },
    #[error("class {0} is not independent")]
    NotIndependent(usize),
    #[error("stale move: source classes no longer match the colouring")]
    StaleMove,
    #[error("step budget of {0} moves exceeded")]
    BudgetExceeded(usize),
}

/// A lex-improving repartition of a few colour classes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Move {
    /// Ascending class indices into the colouring the move was found on.
    pub sources: Vec<usize>,
    /// Snapshot of the source classes, used to reject stale moves.
    pub source_classes: Vec<Vec<usize>>,
    /// New classes covering exactly the union of the sources.
    pub replacement: Vec<Vec<usize>>,
    pub before: Profile,
    pub after: Profile,
}

impl Move {
    /// `(Δr, Δs, Δt)`.
    pub fn delta(&self) -> [i64; 3] {
        [
            self.after.r as i64 - self.before.r as i64,
            self.after.s as i64 - self.before.s as i64,
            self.after.t as i64 - self.before.t as i64,
        ]
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceStep {
    pub sources: Vec<usize>,
    pub replacement: Vec<Vec<usize>>,
    pub delta: [i64; 3],
    pub profile: Profile,
}

/// Audit trail of a local-search run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Trace {
    pub initial_profile: Profile,
    pub radius: usize,
    pub steps: Vec<TraceStep>,
}

impl Trace {
    pub fn final_profile(&self) -> Profile {
        self.steps.last().map_or(self.initial_profile, |s| s.profile)
    }

    /// Profiles strictly increase in `(r, s)` from the initial one on.
    pub fn is_strictly_increasing(&self) -> bool {
        let mut prev = self.initial_profile;
        self.steps.iter().all(|s| {
            let ok = lex_compare(&s.profile, &prev) == Ordering::Greater;
            prev = s.profile;
            ok
        })
    }
}

/// The `[0,0,|G|]`-colouring.
pub fn trivial_coloring(g: &Graph) -> Coloring {
    Coloring::trivial(g.order())
}

fn check_start(g: &Graph, c: &Coloring, radius: usize) -> Result<Profile, SearchError> {
    if radius == 0 || radius > MAX_RADIUS {
        return Err(SearchError::Radius(radius));
    }
    if c.order() != g.order() {
        return Err(SearchError::OrderMismatch {
            graph: g.order(),
            coloring: c.order(),
        });
    }
    let p = c.profile()?;
    if let Some(i) = c.classes().iter().position(|cl| !g.is_independent(cl)) {
        return Err(SearchError::NotIndependent(i));
    }
    Ok(p)
}

/// First lex-improving move over class tuples of size `2..=radius`,
/// smallest size first, tuples in ascending lexicographic order.
///
/// `None` means no union of at most `radius` classes can be repartitioned
/// into independent blocks of size ≤ 3 with a larger `(r, s)`.
pub fn find_improving_move(g: &Graph, c: &Coloring, radius: usize) -> Result<Option<Move>, SearchError> {
    let before = check_start(g, c, radius)?;
    Ok(scan(g, c, radius, before))
}

fn scan(g: &Graph, c: &Coloring, radius: usize, before: Profile) -> Option<Move> {
    let k = c.len();
    let mut tuple = Vec::with_capacity(radius);
    for size in 2..=radius.min(k) {
        tuple.clear();
        tuple.extend(0..size);
        loop {
            if let Some(found) = try_tuple(g, c, &tuple, before) {
                return Some(found);
            }
            if !next_combination(&mut tuple, k) {
                break;
            }
        }
    }
    None
}

fn try_tuple(g: &Graph, c: &Coloring, tuple: &[usize], before: Profile) -> Option<Move> {
    let (mut r0, mut s0, mut t0) = (0, 0, 0);
    for &i in tuple {
        match c.class(i).len() {
            3 => r0 += 1,
            2 => s0 += 1,
            _ => t0 += 1,
        }
    }
    // An all-triple union cannot gain; a union needs 3 spare vertices for a
    // new triple, or two singletons' worth of room for a new pair.
    if 2 * s0 + t0 < 2 {
        return None;
    }
    let local = LocalUnion::new(g, tuple.iter().flat_map(|&i| c.class(i).iter().copied()));
    let blocks = local.improve(r0, s0)?;
    let (mut r1, mut s1, mut t1) = (0, 0, 0);
    for b in &blocks {
        match b.len() {
            3 => r1 += 1,
            2 => s1 += 1,
            _ => t1 += 1,
        }
    }
    let after = Profile::new(before.r + r1 - r0, before.s + s1 - s0, before.t + t1 - t0);
    debug_assert_eq!(lex_compare(&after, &before), Ordering::Greater);
    Some(Move {
        sources: tuple.to_vec(),
        source_classes: tuple.iter().map(|&i| c.class(i).to_vec()).collect(),
        replacement: blocks,
        before,
        after,
    })
}

/// Advances `tuple` to the next ascending combination of `0..n`.
fn next_combination(tuple: &mut [usize], n: usize) -> bool {
    let k = tuple.len();
    for i in (0..k).rev() {
        if tuple[i] < n - k + i {
            tuple[i] += 1;
            for j in i + 1..k {
                tuple[j] = tuple[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Removes the move's source classes and appends its replacement blocks.
pub fn apply_move(c: &Coloring, m: &Move) -> Result<Coloring, SearchError> {
    let matches = m.sources.len() == m.source_classes.len()
        && m.sources.windows(2).all(|w| w[0] < w[1])
        && m.sources
            .iter()
            .zip(&m.source_classes)
            .all(|(&i, cls)| i < c.len() && c.class(i) == cls.as_slice());
    if !matches {
        return Err(SearchError::StaleMove);
    }
    let mut covered: Vec<usize> = m.replacement.iter().flatten().copied().collect();
    let mut removed: Vec<usize> = m.source_classes.iter().flatten().copied().collect();
    covered.sort_unstable();
    removed.sort_unstable();
    if covered != removed || m.replacement.iter().any(|b| b.is_empty() || b.len() > 3) {
        return Err(SearchError::StaleMove);
    }
    Ok(c.replace(&m.sources, m.replacement.clone()))
}

/// Lex-ascent from `start` until no move of at most `radius` classes
/// improves `(r, s)`.
pub fn run_local_search(g: &Graph, start: &Coloring, radius: usize) -> Result<(Coloring, Trace), SearchError> {
    let initial_profile = check_start(g, start, radius)?;
    let n = g.order();
    let budget = 4 * n * n;
    let mut current = start.clone();
    let mut profile = initial_profile;
    let mut steps = Vec::new();
    while let Some(m) = scan(g, &current, radius, profile) {
        if steps.len() == budget {
            return Err(SearchError::BudgetExceeded(budget));
        }
        current = apply_move(&current, &m)?;
        profile = m.after;
        debug_assert_eq!(current.profile().ok(), Some(profile));
        steps.push(TraceStep {
            delta: m.delta(),
            sources: m.sources,
            replacement: m.replacement,
            profile,
        });
    }
    Ok((
        current,
        Trace {
            initial_profile,
            radius,
            steps,
        },
    ))
}

/// Greedy start: scan vertices in order and put each into the first open
/// class (size < 3) it has no neighbour in.
pub fn greedy_coloring(g: &Graph) -> Coloring {
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for v in 0..g.order() {
        match classes
            .iter_mut()
            .find(|c| c.len() < 3 && c.iter().all(|&u| !g.adjacent(u, v)))
        {
            Some(c) => c.push(v),
            None => classes.push(vec![v]),
        }
    }
    Coloring::new(g.order(), classes).expect("greedy classes partition the vertices")
}
