//! Equitable colourings with `k ≥ Δ+1` classes.
//!
//! The graph is padded with a small clique to `s·k` vertices and built up
//! edge by edge from an equitable colouring of the edgeless graph. When a
//! new edge lands inside a class, one endpoint moves out, leaving one class
//! short (`V⁻`) and one class over (`V⁺`). The repair shifts vertices along
//! paths of the "movable into" digraph between classes:
//!
//! * if `V⁺` reaches `V⁻`, shift along the path;
//! * otherwise trade a vertex of an accessible class for one of its solo
//!   neighbours among the inaccessible classes, and repair those alone;
//! * otherwise swap a pair `z, w` across the accessible/inaccessible cut and
//!   repair the inaccessible side plus one class.
//!
//! If no repair applies the exhaustive search finishes the job.

use crate::coloring::{verify_classes, Coloring};
use crate::exact;
use crate::graph::Graph;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HsError {
    #[error("graph has no vertices")]
    Empty,
    #[error("{k} classes is below Δ+1 = {}", max_degree + 1)]
    TooFewClasses { k: usize, max_degree: usize },
    #[error("{k} non-empty classes exceed the order {order}")]
    TooManyClasses { k: usize, order: usize },
    #[error("internal failure: no equitable {0}-colouring found")]
    Internal(usize),
}

/// How a run got to its colouring.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct HsStats {
    /// Edges that landed inside a class.
    pub conflicts: usize,
    pub path_shifts: usize,
    pub solo_trades: usize,
    pub pair_swaps: usize,
    /// The repair stalled and the exhaustive search was used instead.
    pub exhaustive: bool,
}

/// An equitable colouring with exactly `Δ+1` classes.
pub fn hs_delta_plus_one(g: &Graph) -> Result<Coloring, HsError> {
    hs_equitable(g, g.max_degree() + 1)
}

/// An equitable colouring with exactly `k` classes, for `Δ < k ≤ |G|`.
pub fn hs_equitable(g: &Graph, k: usize) -> Result<Coloring, HsError> {
    hs_equitable_with_stats(g, k).map(|(c, _)| c)
}

pub fn hs_equitable_with_stats(g: &Graph, k: usize) -> Result<(Coloring, HsStats), HsError> {
    let n = g.order();
    if n == 0 {
        return Err(HsError::Empty);
    }
    let max_degree = g.max_degree();
    if k <= max_degree {
        return Err(HsError::TooFewClasses { k, max_degree });
    }
    if k > n {
        return Err(HsError::TooManyClasses { k, order: n });
    }
    let total = n.div_ceil(k) * k;
    let mut st = State::new(total, k);
    for a in n..total {
        for b in a + 1..total {
            st.add_edge(a, b);
        }
    }
    let mut stats = HsStats::default();
    let mut repaired = true;
    for (u, v) in g.edges() {
        st.add_edge(u, v);
        if st.class_of[u] != st.class_of[v] {
            continue;
        }
        stats.conflicts += 1;
        let from = st.class_of[v];
        let to = (0..k)
            .find(|&x| x != from && st.nb[v][x] == 0)
            .expect("fewer than k neighbours leave a free class");
        st.move_vertex(v, to);
        if !st.rebalance(from, to, &mut stats) {
            repaired = false;
            break;
        }
    }
    let built = repaired.then(|| {
        st.members
            .iter()
            .map(|m| {
                let mut c: Vec<usize> = m.iter().copied().filter(|&v| v < n).collect();
                c.sort_unstable();
                c
            })
            .collect::<Vec<_>>()
    });
    if let Some(classes) = built.filter(|cl| verify_classes(g, cl, Some(k)).ok()) {
        let c = Coloring::new(n, classes).map_err(|_| HsError::Internal(k))?;
        return Ok((c, stats));
    }
    stats.exhaustive = true;
    let classes = exact::search(g, k, true).ok_or(HsError::Internal(k))?;
    let c = Coloring::new(n, classes).map_err(|_| HsError::Internal(k))?;
    Ok((c, stats))
}

struct State {
    adj: Vec<Vec<usize>>,
    class_of: Vec<usize>,
    members: Vec<Vec<usize>>,
    /// `nb[v][c]`: neighbours of `v` currently in class `c`.
    nb: Vec<Vec<u32>>,
    /// `(vertex, previous class)` for every move, newest last.
    log: Vec<(usize, usize)>,
}

impl State {
    fn new(total: usize, k: usize) -> Self {
        let class_of: Vec<usize> = (0..total).map(|v| v % k).collect();
        let mut members = vec![Vec::new(); k];
        for v in 0..total {
            members[v % k].push(v);
        }
        Self {
            adj: vec![Vec::new(); total],
            class_of,
            members,
            nb: vec![vec![0; k]; total],
            log: Vec::new(),
        }
    }

    fn k(&self) -> usize {
        self.members.len()
    }

    fn add_edge(&mut self, u: usize, v: usize) {
        self.adj[u].push(v);
        self.adj[v].push(u);
        self.nb[u][self.class_of[v]] += 1;
        self.nb[v][self.class_of[u]] += 1;
    }

    fn relocate(&mut self, v: usize, to: usize) -> usize {
        let from = self.class_of[v];
        let pos = self.members[from].iter().position(|&x| x == v).expect("member");
        self.members[from].swap_remove(pos);
        self.members[to].push(v);
        self.class_of[v] = to;
        for &u in &self.adj[v] {
            self.nb[u][from] -= 1;
            self.nb[u][to] += 1;
        }
        from
    }

    fn move_vertex(&mut self, v: usize, to: usize) {
        let from = self.relocate(v, to);
        self.log.push((v, from));
    }

    fn undo_to(&mut self, mark: usize) {
        while self.log.len() > mark {
            let (v, from) = self.log.pop().expect("log entry");
            self.relocate(v, from);
        }
    }

    /// Lowest vertex of class `u` with no neighbour in class `x`.
    fn witness(&self, u: usize, x: usize, exclude: Option<usize>) -> Option<usize> {
        self.members[u]
            .iter()
            .copied()
            .filter(|&v| self.nb[v][x] == 0 && Some(v) != exclude)
            .min()
    }

    /// Classes of `scope` that can shift a vertex toward `target`, with the
    /// next hop of each.
    fn reach_to(&self, target: usize, scope: &[bool], exclude: Option<usize>) -> (Vec<Option<usize>>, Vec<bool>) {
        let k = self.k();
        let mut next = vec![None; k];
        let mut reached = vec![false; k];
        reached[target] = true;
        let mut queue = vec![target];
        let mut head = 0;
        while head < queue.len() {
            let x = queue[head];
            head += 1;
            for u in 0..k {
                if scope[u] && !reached[u] && self.witness(u, x, exclude).is_some() {
                    reached[u] = true;
                    next[u] = Some(x);
                    queue.push(u);
                }
            }
        }
        (next, reached)
    }

    /// Classes of `scope` that `source` can shift a vertex into, with the
    /// previous hop of each.
    fn reach_from(&self, source: usize, scope: &[bool]) -> (Vec<Option<usize>>, Vec<bool>) {
        let k = self.k();
        let mut prev = vec![None; k];
        let mut reached = vec![false; k];
        reached[source] = true;
        let mut queue = vec![source];
        let mut head = 0;
        while head < queue.len() {
            let u = queue[head];
            head += 1;
            for x in 0..k {
                if scope[x] && !reached[x] && self.witness(u, x, None).is_some() {
                    reached[x] = true;
                    prev[x] = Some(u);
                    queue.push(x);
                }
            }
        }
        (prev, reached)
    }

    /// Moves one vertex along each hop, last hop first, so every class on
    /// the path except the ends keeps its size.
    fn shift(&mut self, path: &[usize], exclude: Option<usize>) {
        for i in (0..path.len().saturating_sub(1)).rev() {
            let skip = if i == 0 { exclude } else { None };
            let v = self.witness(path[i], path[i + 1], skip).expect("hop witness");
            self.move_vertex(v, path[i + 1]);
        }
    }

    /// Restores equal class sizes when `vminus` is one short and `vplus`
    /// one over. `false` if no repair applies.
    fn rebalance(&mut self, mut vminus: usize, mut vplus: usize, stats: &mut HsStats) -> bool {
        let k = self.k();
        let mut scope = vec![true; k];
        for _ in 0..4 * (self.adj.len() + k) {
            let (next, in_a) = self.reach_to(vminus, &scope, None);
            if in_a[vplus] {
                self.shift(&path_forward(vplus, &next), None);
                stats.path_shifts += 1;
                return true;
            }
            let in_b: Vec<bool> = (0..k).map(|c| scope[c] && !in_a[c]).collect();
            if let Some(short) = self.solo_trade(vminus, &in_a, &in_b) {
                stats.solo_trades += 1;
                if short == vplus {
                    return true;
                }
                scope = in_b;
                vminus = short;
                continue;
            }
            if let Some((short, over)) = self.pair_swap(vminus, vplus, &in_a, &in_b) {
                stats.pair_swaps += 1;
                scope = in_b;
                scope[short] = true;
                vminus = short;
                vplus = over;
                continue;
            }
            return false;
        }
        false
    }

    /// A terminal accessible class `W` gives up a vertex `z` to another
    /// accessible class and takes in a solo neighbour `y` of `z` from the
    /// inaccessible side. Returns the class `y` left.
    fn solo_trade(&mut self, vminus: usize, in_a: &[bool], in_b: &[bool]) -> Option<usize> {
        let k = self.k();
        for w in (0..k).filter(|&c| in_a[c] && c != vminus) {
            let mut inner = in_a.to_vec();
            inner[w] = false;
            let (next, reached) = self.reach_to(vminus, &inner, None);
            if (0..k).any(|c| inner[c] && !reached[c]) {
                continue;
            }
            let mut zs = self.members[w].clone();
            zs.sort_unstable();
            for z in zs {
                let Some(x) = (0..k).find(|&x| inner[x] && self.nb[z][x] == 0) else {
                    continue;
                };
                let solo = self.adj[z]
                    .iter()
                    .copied()
                    .filter(|&y| in_b[self.class_of[y]] && self.nb[y][w] == 1)
                    .min();
                let Some(y) = solo else {
                    continue;
                };
                let left = self.class_of[y];
                self.move_vertex(z, x);
                self.shift(&path_forward(x, &next), None);
                self.move_vertex(y, w);
                return Some(left);
            }
        }
        None
    }

    /// Some `z` reachable from `V⁺` has a single neighbour `w` in an
    /// accessible class `W`: `W` sheds a vertex toward `V⁻`, `V⁺` sheds one
    /// toward `z`'s class, `z` enters `W` and `w` leaves for an inaccessible
    /// class. Returns the new short and over classes.
    fn pair_swap(&mut self, vminus: usize, vplus: usize, in_a: &[bool], in_b: &[bool]) -> Option<(usize, usize)> {
        let k = self.k();
        let (prev, from_plus) = self.reach_from(vplus, in_b);
        for wc in (0..k).filter(|&c| in_a[c]) {
            let mut ws = self.members[wc].clone();
            ws.sort_unstable();
            for w in ws {
                let path_a = if wc == vminus {
                    vec![vminus]
                } else {
                    let (next, reached) = self.reach_to(vminus, in_a, Some(w));
                    if !reached[wc] {
                        continue;
                    }
                    path_forward(wc, &next)
                };
                let mut zs: Vec<usize> = self.adj[w]
                    .iter()
                    .copied()
                    .filter(|&z| from_plus[self.class_of[z]] && self.nb[z][wc] == 1)
                    .collect();
                zs.sort_unstable();
                for z in zs {
                    let mark = self.log.len();
                    let zc = self.class_of[z];
                    self.shift(&path_a, Some(w));
                    self.shift(&path_backward(zc, &prev), None);
                    self.move_vertex(z, wc);
                    if let Some(over) = (0..k).find(|&c| in_b[c] && self.nb[w][c] == 0) {
                        self.move_vertex(w, over);
                        return Some((wc, over));
                    }
                    self.undo_to(mark);
                }
            }
        }
        None
    }
}

fn path_forward(start: usize, next: &[Option<usize>]) -> Vec<usize> {
    let mut path = vec![start];
    while let Some(x) = next[*path.last().expect("non-empty")] {
        path.push(x);
    }
    path
}

fn path_backward(end: usize, prev: &[Option<usize>]) -> Vec<usize> {
    let mut path = vec![end];
    while let Some(u) = prev[*path.last().expect("non-empty")] {
        path.push(u);
    }
    path.reverse();
    path
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::verify;
    use crate::graph::{generate, GeneratorSpec};

    fn sizes(c: &Coloring) -> Vec<usize> {
        c.size_multiset()
    }

    #[test]
    fn small_examples() {
        let k4 = generate(&GeneratorSpec::Complete(4), 0).unwrap();
        let c = hs_delta_plus_one(&k4).unwrap();
        assert_eq!(sizes(&c), vec![1, 1, 1, 1]);

        let c5 = generate(&GeneratorSpec::Cycle(5), 0).unwrap();
        let c = hs_delta_plus_one(&c5).unwrap();
        assert!(verify(&c5, &c, Some(3)).ok());
        assert_eq!(sizes(&c), vec![2, 2, 1]);

        let k33 = generate(&GeneratorSpec::CompleteBipartite(3, 3), 0).unwrap();
        let c = hs_delta_plus_one(&k33).unwrap();
        assert!(verify(&k33, &c, Some(4)).ok());
        assert_eq!(sizes(&c), vec![2, 2, 1, 1]);
    }

    #[test]
    fn rejects_bad_class_counts() {
        let c5 = generate(&GeneratorSpec::Cycle(5), 0).unwrap();
        assert_eq!(hs_equitable(&c5, 2), Err(HsError::TooFewClasses { k: 2, max_degree: 2 }));
        assert_eq!(hs_equitable(&c5, 6), Err(HsError::TooManyClasses { k: 6, order: 5 }));
        assert_eq!(hs_delta_plus_one(&Graph::empty(0)), Err(HsError::Empty));
        assert_eq!(sizes(&hs_equitable(&c5, 5).unwrap()), vec![1; 5]);
    }

    /// Moves one vertex out of an equitable colouring and repairs directly.
    fn perturbed_repairs(seeds: std::ops::Range<u64>) -> HsStats {
        use rand::seq::SliceRandom;
        use rand::{Rng, SeedableRng};
        let mut total = HsStats::default();
        for seed in seeds {
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let mut g = Graph::empty(0);
            for _ in 0..rng.random_range(1..5) {
                let part = match rng.random_range(0..3) {
                    0 => GeneratorSpec::Complete(rng.random_range(2..7)),
                    1 => {
                        let a = rng.random_range(1..5);
                        GeneratorSpec::CompleteBipartite(a, a)
                    }
                    _ => GeneratorSpec::Gnp {
                        n: rng.random_range(4..12),
                        p: rng.random_range(0.3..0.9),
                    },
                };
                g = g.disjoint_union(&generate(&part, seed).unwrap());
            }
            let k = g.max_degree() + 1;
            let pad = (k - g.order() % k) % k;
            g = g.disjoint_union(&generate(&GeneratorSpec::Complete(pad), 0).unwrap());
            let mut perm: Vec<usize> = (0..g.order()).collect();
            perm.shuffle(&mut rng);
            let g = g.relabel(&perm);
            let n = g.order();
            if k == n {
                continue;
            }
            let c = hs_equitable(&g, k).unwrap();
            let mut st = State::new(n, k);
            for v in 0..n {
                st.relocate(v, c.class_of(v));
            }
            for (u, v) in g.edges() {
                st.add_edge(u, v);
            }
            let v = rng.random_range(0..n);
            let from = st.class_of[v];
            let Some(to) = (0..k).find(|&x| x != from && st.nb[v][x] == 0) else {
                continue;
            };
            st.move_vertex(v, to);
            let mut stats = HsStats::default();
            if st.rebalance(from, to, &mut stats) {
                let classes: Vec<Vec<usize>> = st.members.clone();
                assert!(crate::coloring::verify_classes(&g, &classes, Some(k)).ok(), "seed {seed}");
                assert!(classes.iter().all(|cl| cl.len() == n / k), "seed {seed}");
            } else {
                total.exhaustive = true;
            }
            total.path_shifts += stats.path_shifts;
            total.solo_trades += stats.solo_trades;
            total.pair_swaps += stats.pair_swaps;
        }
        total
    }

    #[test]
    fn direct_repairs_stay_equitable() {
        let stats = perturbed_repairs(0..400);
        assert!(stats.path_shifts > 0);
    }

    #[test]
    fn random_graphs_get_equitable_colourings() {
        for seed in 0..60 {
            let p = [0.1, 0.3, 0.5][seed as usize % 3];
            let g = generate(&GeneratorSpec::Gnp { n: 20 + seed as usize % 25, p }, seed).unwrap();
            for k in [g.max_degree() + 1, g.max_degree() + 3] {
                if k > g.order() {
                    continue;
                }
                let (c, stats) = hs_equitable_with_stats(&g, k).unwrap();
                assert!(verify(&g, &c, Some(k)).ok(), "seed {seed} k {k}");
                assert!(!stats.exhaustive, "seed {seed} k {k}: {stats:?}");
            }
        }
    }
}

#[cfg(test)]
mod repair {
    use super::*;
    use rand::seq::SliceRandom;
    use rand::{Rng, SeedableRng};

    pub(super) fn random_state(seed: u64) -> Option<(Graph, State, usize, usize)> {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let k = rng.random_range(3..6);
        let s = rng.random_range(2..5);
        let n = k * s;
        let mut sizes = vec![s; k];
        sizes[0] -= 1;
        sizes[1] += 1;
        let mut verts: Vec<usize> = (0..n).collect();
        verts.shuffle(&mut rng);
        let mut label = vec![0; n];
        let mut it = verts.into_iter();
        for (c, &sz) in sizes.iter().enumerate() {
            for v in it.by_ref().take(sz) {
                label[v] = c;
            }
        }
        let mut deg = vec![0; n];
        let mut edges = Vec::new();
        let p = rng.random_range(0.3..1.0);
        let mut pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        pairs.shuffle(&mut rng);
        for (u, v) in pairs {
            if label[u] != label[v] && deg[u] < k - 1 && deg[v] < k - 1 && rng.random_bool(p) {
                deg[u] += 1;
                deg[v] += 1;
                edges.push((u, v));
            }
        }
        let g = Graph::from_edges(n, edges).ok()?;
        let mut st = State::new(n, k);
        for (v, &c) in label.iter().enumerate() {
            st.relocate(v, c);
        }
        for (u, v) in g.edges() {
            st.add_edge(u, v);
        }
        Some((g, st, 0, 1))
    }

    fn sizes_and_proper(g: &Graph, st: &State) -> (Vec<usize>, bool) {
        let proper = g.edges().all(|(u, v)| st.class_of[u] != st.class_of[v]);
        (st.members.iter().map(Vec::len).collect(), proper)
    }

    #[test]
    fn pair_swap_moves_the_imbalance() {
        let mut swaps = 0;
        for seed in 0..20_000 {
            let Some((g, mut st, vm, vp)) = random_state(seed) else { continue };
            let k = st.k();
            let scope = vec![true; k];
            let (_, in_a) = st.reach_to(vm, &scope, None);
            if in_a[vp] {
                continue;
            }
            let in_b: Vec<bool> = in_a.iter().map(|&a| !a).collect();
            let s = g.order() / k;
            let Some((short, over)) = st.pair_swap(vm, vp, &in_a, &in_b) else { continue };
            swaps += 1;
            let (sizes, proper) = sizes_and_proper(&g, &st);
            assert!(proper, "seed {seed}");
            assert!(in_a[short] && in_b[over], "seed {seed}");
            for (c, &sz) in sizes.iter().enumerate() {
                let want = if c == short { s - 1 } else if c == over { s + 1 } else { s };
                assert_eq!(sz, want, "seed {seed} class {c}");
            }
        }
        assert!(swaps > 0);
    }

    #[test]
    fn solo_trade_leaves_one_short_class() {
        let mut trades = 0;
        for seed in 0..20_000 {
            let Some((g, mut st, vm, vp)) = random_state(seed) else { continue };
            let k = st.k();
            let scope = vec![true; k];
            let (_, in_a) = st.reach_to(vm, &scope, None);
            if in_a[vp] {
                continue;
            }
            let in_b: Vec<bool> = in_a.iter().map(|&a| !a).collect();
            let s = g.order() / k;
            let Some(short) = st.solo_trade(vm, &in_a, &in_b) else { continue };
            trades += 1;
            let (sizes, proper) = sizes_and_proper(&g, &st);
            assert!(proper, "seed {seed}");
            assert!(in_b[short]);
            for (c, &sz) in sizes.iter().enumerate() {
                let want = if c == short && c != vp { s - 1 } else if c == vp && c != short { s + 1 } else { s };
                assert_eq!(sz, want, "seed {seed} class {c}");
            }
        }
        assert!(trades > 0);
    }
}
