//! Exhaustive repartition of a small vertex union into independent blocks.

use crate::graph::Graph;

/// A union of at most 64 vertices with adjacency packed into local masks.
pub(crate) struct LocalUnion {
    verts: Vec<usize>,
    /// `adj[i]` has bit `j` set iff `verts[i] ~ verts[j]`.
    adj: Vec<u64>,
}

type Blocks = (Vec<[usize; 3]>, Vec<[usize; 2]>);

impl LocalUnion {
    pub(crate) fn new<I: IntoIterator<Item = usize>>(g: &Graph, verts: I) -> Self {
        let verts: Vec<usize> = verts.into_iter().collect();
        assert!(verts.len() <= 64, "union of {} vertices exceeds local mask width", verts.len());
        let adj = verts
            .iter()
            .map(|&u| {
                verts
                    .iter()
                    .enumerate()
                    .filter(|&(_, &v)| g.adjacent(u, v))
                    .fold(0u64, |m, (j, _)| m | (1 << j))
            })
            .collect();
        Self { verts, adj }
    }

    fn full(&self) -> u64 {
        if self.verts.len() == 64 {
            u64::MAX
        } else {
            (1u64 << self.verts.len()) - 1
        }
    }

    /// A partition into independent blocks of size ≤ 3 whose `(triples,
    /// pairs)` beats `(r0, s0)` lexicographically, if one exists.
    ///
    /// A partition with `r0 + 1` triples is tried first; its leftover is
    /// then paired up as far as possible. Otherwise `r0` triples with
    /// `s0 + 1` pairs.
    pub(crate) fn improve(&self, r0: usize, s0: usize) -> Option<Vec<Vec<usize>>> {
        let all = self.full();
        if let Some((triples, _)) = self.pack(all, r0 + 1, 0) {
            let used = triples.iter().flatten().fold(0u64, |m, &i| m | (1 << i));
            let pairs = self.max_pairs(all & !used);
            return Some(self.materialize(&triples, &pairs, all));
        }
        let (triples, pairs) = self.pack(all, r0, s0 + 1)?;
        Some(self.materialize(&triples, &pairs, all))
    }

    /// Exactly `triples` disjoint independent triples and `pairs` disjoint
    /// independent pairs inside `avail`; other vertices stay singletons.
    fn pack(&self, avail: u64, triples: usize, pairs: usize) -> Option<Blocks> {
        if triples == 0 && pairs == 0 {
            return Some((Vec::new(), Vec::new()));
        }
        if (avail.count_ones() as usize) < 3 * triples + 2 * pairs {
            return None;
        }
        let v = avail.trailing_zeros() as usize;
        let rest = avail & !(1 << v);
        let free_v = rest & !self.adj[v];
        if triples > 0 {
            let mut ws = free_v;
            while ws != 0 {
                let w = ws.trailing_zeros() as usize;
                ws &= ws - 1;
                // Third member above `w` so each triple is tried once.
                let mut xs = ws & !self.adj[w];
                while xs != 0 {
                    let x = xs.trailing_zeros() as usize;
                    xs &= xs - 1;
                    let left = rest & !(1 << w) & !(1 << x);
                    if let Some((mut t, p)) = self.pack(left, triples - 1, pairs) {
                        t.push([v, w, x]);
                        return Some((t, p));
                    }
                }
            }
        }
        if pairs > 0 {
            let mut ws = free_v;
            while ws != 0 {
                let w = ws.trailing_zeros() as usize;
                ws &= ws - 1;
                if let Some((t, mut p)) = self.pack(rest & !(1 << w), triples, pairs - 1) {
                    p.push([v, w]);
                    return Some((t, p));
                }
            }
        }
        self.pack(rest, triples, pairs)
    }

    /// Maximum set of disjoint independent pairs in `avail`.
    fn max_pairs(&self, avail: u64) -> Vec<[usize; 2]> {
        let mut best = Vec::new();
        let mut k = 1;
        while let Some((_, p)) = self.pack(avail, 0, k) {
            best = p;
            k += 1;
        }
        best
    }

    fn materialize(&self, triples: &[[usize; 3]], pairs: &[[usize; 2]], all: u64) -> Vec<Vec<usize>> {
        let mut used = 0u64;
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        let mut push = |locals: &[usize], blocks: &mut Vec<Vec<usize>>| {
            let mut b: Vec<usize> = locals.iter().map(|&i| self.verts[i]).collect();
            b.sort_unstable();
            for &i in locals {
                used |= 1 << i;
            }
            blocks.push(b);
        };
        let mut ts = triples.to_vec();
        ts.sort_unstable();
        for t in &ts {
            push(t, &mut blocks);
        }
        let mut ps = pairs.to_vec();
        ps.sort_unstable();
        for p in &ps {
            push(p, &mut blocks);
        }
        let mut single = all & !used;
        while single != 0 {
            let i = single.trailing_zeros() as usize;
            single &= single - 1;
            blocks.push(vec![self.verts[i]]);
        }
        blocks
    }
}
