//! Exhaustive colouring search shared by the oracle and the equitable
//! fallback.

use crate::bitset::VertexSet;
use crate::graph::Graph;

const UNSET: usize = usize::MAX;

/// A proper colouring with at most `k` classes, or, when `equitable`, with
/// exactly `k` classes of sizes `⌈n/k⌉` and `⌊n/k⌋`. `None` is a
/// definitive no.
///
/// Branches on the vertex with the fewest feasible classes (ties: larger
/// degree, then lower index); classes are opened in order, at most one new
/// class per branch.
pub(crate) fn search(g: &Graph, k: usize, equitable: bool) -> Option<Vec<Vec<usize>>> {
    let n = g.order();
    if n == 0 {
        return (!equitable || k == 0).then(Vec::new);
    }
    if k == 0 || (equitable && k > n) {
        return None;
    }
    let mut s = Search {
        g,
        k,
        equitable,
        small: n / k,
        big_left: n % k,
        members: Vec::with_capacity(k),
        sizes: Vec::with_capacity(k),
        label: vec![UNSET; n],
    };
    s.run(0).then(|| {
        s.members
            .iter()
            .map(|m| m.iter().collect::<Vec<_>>())
            .collect()
    })
}

struct Search<'a> {
    g: &'a Graph,
    k: usize,
    equitable: bool,
    small: usize,
    big_left: usize,
    members: Vec<VertexSet>,
    sizes: Vec<usize>,
    label: Vec<usize>,
}

impl Search<'_> {
    fn fits(&self, c: usize) -> bool {
        !self.equitable || self.sizes[c] < self.small || (self.sizes[c] == self.small && self.big_left > 0)
    }

    fn can_open(&self) -> bool {
        self.members.len() < self.k
    }

    fn options(&self, v: usize) -> usize {
        let open = (0..self.members.len())
            .filter(|&c| self.fits(c) && self.g.neighbors(v).is_disjoint(&self.members[c]))
            .count();
        open + self.can_open() as usize
    }

    fn place(&mut self, v: usize, c: usize) {
        if c == self.members.len() {
            self.members.push(VertexSet::with_capacity(self.g.order()));
            self.sizes.push(0);
        }
        if self.equitable && self.sizes[c] == self.small {
            self.big_left -= 1;
        }
        self.members[c].insert(v);
        self.sizes[c] += 1;
        self.label[v] = c;
    }

    fn unplace(&mut self, v: usize, c: usize) {
        self.members[c].remove(v);
        self.sizes[c] -= 1;
        if self.equitable && self.sizes[c] == self.small {
            self.big_left += 1;
        }
        self.label[v] = UNSET;
        if self.sizes[c] == 0 && c + 1 == self.members.len() {
            self.members.pop();
            self.sizes.pop();
        }
    }

    fn run(&mut self, assigned: usize) -> bool {
        let n = self.g.order();
        if assigned == n {
            return !self.equitable || self.members.len() == self.k;
        }
        let mut pick: Option<(usize, usize)> = None;
        for v in (0..n).filter(|&v| self.label[v] == UNSET) {
            let opts = self.options(v);
            if opts == 0 {
                return false;
            }
            let better = match pick {
                None => true,
                Some((best, o)) => opts < o || (opts == o && self.g.degree(v) > self.g.degree(best)),
            };
            if better {
                pick = Some((v, opts));
            }
        }
        let (v, _) = pick.expect("an unassigned vertex remains");
        let used = self.members.len();
        for c in 0..used {
            if self.fits(c) && self.g.neighbors(v).is_disjoint(&self.members[c]) {
                self.place(v, c);
                if self.run(assigned + 1) {
                    return true;
                }
                self.unplace(v, c);
            }
        }
        if self.can_open() {
            self.place(v, used);
            if self.run(assigned + 1) {
                return true;
            }
            self.unplace(v, used);
        }
        false
    }
}
