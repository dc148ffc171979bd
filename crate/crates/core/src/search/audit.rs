//! Structural audit of an `[r,s,t]`-colouring.
//!
//! Thirteen local properties hold in every lex-maximal colouring; each has
//! a short proof that turns a counterexample into an improving
//! repartition of at most three classes. A move-closed colouring at radius
//! ≥ 3 must therefore pass all of them. Every check is in implication
//! form: a vacuous hypothesis never produces a violation.
//!
//! Notation in the comments: `X` is a class of size 3, `U = {u, v}` a
//! class of size 2, `w` the member of a singleton class, and `‖A,B‖` the
//! number of edges between `A` and `B`.

use crate::coloring::Coloring;
use crate::graph::Graph;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditViolation {
    /// Which of the thirteen properties failed (1-based).
    pub statement: u8,
    pub classes: Vec<usize>,
    pub vertices: Vec<usize>,
    pub detail: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditReport {
    pub violations: Vec<AuditViolation>,
}

impl AuditReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }
}

struct Ctx<'a> {
    g: &'a Graph,
    c: &'a Coloring,
    triples: Vec<usize>,
    pairs: Vec<usize>,
    singles: Vec<usize>,
    out: Vec<AuditViolation>,
}

impl Ctx<'_> {
    fn e(&self, a: &[usize], b: &[usize]) -> usize {
        a.iter()
            .map(|&x| b.iter().filter(|&&y| self.g.adjacent(x, y)).count())
            .sum()
    }

    fn cls(&self, i: usize) -> &[usize] {
        self.c.class(i)
    }

    fn w(&self, i: usize) -> usize {
        self.c.class(i)[0]
    }

    fn report(&mut self, statement: u8, classes: &[usize], detail: String) {
        let vertices = classes.iter().flat_map(|&i| self.c.class(i).iter().copied()).collect();
        self.out.push(AuditViolation {
            statement,
            classes: classes.to_vec(),
            vertices,
            detail,
        });
    }

    fn union(&self, classes: &[usize]) -> Vec<usize> {
        classes.iter().flat_map(|&i| self.cls(i).iter().copied()).collect()
    }
}

/// Sorted component sizes and edge count of `G[verts]`.
fn induced_shape(g: &Graph, verts: &[usize]) -> (Vec<usize>, usize) {
    let n = verts.len();
    let mut seen = vec![false; n];
    let mut sizes = Vec::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut stack = vec![s];
        let mut size = 0;
        while let Some(i) = stack.pop() {
            size += 1;
            for j in 0..n {
                if !seen[j] && g.adjacent(verts[i], verts[j]) {
                    seen[j] = true;
                    stack.push(j);
                }
            }
        }
        sizes.push(size);
    }
    sizes.sort_unstable();
    (sizes, g.induced_edge_count(verts))
}

/// Checks all thirteen properties over every applicable class tuple.
/// Classes larger than three are ignored.
pub fn audit(g: &Graph, c: &Coloring) -> AuditReport {
    let mut ctx = Ctx {
        g,
        c,
        triples: Vec::new(),
        pairs: Vec::new(),
        singles: Vec::new(),
        out: Vec::new(),
    };
    for (i, cl) in c.classes().iter().enumerate() {
        match cl.len() {
            1 => ctx.singles.push(i),
            2 => ctx.pairs.push(i),
            3 => ctx.triples.push(i),
            _ => {}
        }
    }
    singles_mutually_adjacent(&mut ctx);
    single_sees_each_pair(&mut ctx);
    unique_neighbour_is_shared(&mut ctx);
    two_singles_against_triple(&mut ctx);
    single_free_triple(&mut ctx);
    pairs_matched(&mut ctx);
    pairs_form_two_cliques(&mut ctx);
    triple_pair_sparse(&mut ctx);
    triple_against_two_pairs(&mut ctx);
    AuditReport { violations: ctx.out }
}

/// (1) singletons are mutually adjacent.
fn singles_mutually_adjacent(ctx: &mut Ctx) {
    let ws = ctx.singles.clone();
    for (a, &k) in ws.iter().enumerate() {
        for &k2 in &ws[a + 1..] {
            if !ctx.g.adjacent(ctx.w(k), ctx.w(k2)) {
                ctx.report(1, &[k, k2], "non-adjacent singletons".into());
            }
        }
    }
}

/// (2) `‖w,U‖ ≥ 1`.
fn single_sees_each_pair(ctx: &mut Ctx) {
    for &k in &ctx.singles.clone() {
        for &j in &ctx.pairs.clone() {
            if ctx.e(&[ctx.w(k)], ctx.cls(j)) == 0 {
                ctx.report(2, &[k, j], "singleton with no edge to a pair".into());
            }
        }
    }
}

/// (3), (4): if `w` has exactly one neighbour in a pair (3) or triple (4),
/// every other singleton is adjacent to that neighbour too.
fn unique_neighbour_is_shared(ctx: &mut Ctx) {
    let ws = ctx.singles.clone();
    for (statement, group) in [(3u8, ctx.pairs.clone()), (4u8, ctx.triples.clone())] {
        for &k in &ws {
            let w = ctx.w(k);
            for &j in &group {
                let nbrs: Vec<usize> = ctx.cls(j).iter().copied().filter(|&x| ctx.g.adjacent(w, x)).collect();
                if let [x] = nbrs[..] {
                    for &k2 in ws.iter().filter(|&&k2| k2 != k) {
                        if !ctx.g.adjacent(ctx.w(k2), x) {
                            ctx.report(statement, &[k, j, k2], format!("{} ~ {x} only; {} ≁ {x}", w, ctx.w(k2)));
                        }
                    }
                }
            }
        }
    }
}

/// (5) `‖{w,w'},X‖ ≥ 2`, and equality forces `‖w,X‖ = ‖w',X‖ = 1`.
fn two_singles_against_triple(ctx: &mut Ctx) {
    let ws = ctx.singles.clone();
    for &i in &ctx.triples.clone() {
        for (a, &k) in ws.iter().enumerate() {
            for &k2 in &ws[a + 1..] {
                let d1 = ctx.e(&[ctx.w(k)], ctx.cls(i));
                let d2 = ctx.e(&[ctx.w(k2)], ctx.cls(i));
                if d1 + d2 < 2 || (d1 + d2 == 2 && (d1 != 1 || d2 != 1)) {
                    ctx.report(5, &[i, k, k2], format!("edge counts {d1} + {d2}"));
                }
            }
        }
    }
}

/// (6) if `‖w,X‖ = 0` then for every pair `U`: `‖X,U‖ ≥ 3`,
/// `‖w∪X,U‖ ≥ 4`, and some `β ∈ U` has `‖w∪X,β‖ ≥ 3`.
fn single_free_triple(ctx: &mut Ctx) {
    for &k in &ctx.singles.clone() {
        let w = ctx.w(k);
        for &i in &ctx.triples.clone() {
            if ctx.e(&[w], ctx.cls(i)) != 0 {
                continue;
            }
            let mut wx = ctx.cls(i).to_vec();
            wx.push(w);
            for &j in &ctx.pairs.clone() {
                let xu = ctx.e(ctx.cls(i), ctx.cls(j));
                let wxu = ctx.e(&wx, ctx.cls(j));
                let best = ctx.cls(j).iter().map(|&b| ctx.e(&wx, &[b])).max().unwrap_or(0);
                if xu < 3 || wxu < 4 || best < 3 {
                    ctx.report(6, &[k, i, j], format!("‖X,U‖={xu}, ‖w∪X,U‖={wxu}, max ‖w∪X,β‖={best}"));
                }
            }
        }
    }
}

/// (7) any two pairs span a 2-matching.
fn pairs_matched(ctx: &mut Ctx) {
    let us = ctx.pairs.clone();
    for (a, &j) in us.iter().enumerate() {
        for &j2 in &us[a + 1..] {
            let (u, v) = (ctx.cls(j)[0], ctx.cls(j)[1]);
            let (u2, v2) = (ctx.cls(j2)[0], ctx.cls(j2)[1]);
            let adj = |x, y| ctx.g.adjacent(x, y);
            if !((adj(u, u2) && adj(v, v2)) || (adj(u, v2) && adj(v, u2))) {
                ctx.report(7, &[j, j2], "no 2-matching".into());
            }
        }
    }
}

/// (8) if every two pairs span exactly two edges, all pairs together
/// induce `2K_s`.
fn pairs_form_two_cliques(ctx: &mut Ctx) {
    let us = ctx.pairs.clone();
    let s = us.len();
    if s < 2 {
        return;
    }
    let hypothesis = us
        .iter()
        .enumerate()
        .all(|(a, &j)| us[a + 1..].iter().all(|&j2| ctx.e(ctx.cls(j), ctx.cls(j2)) == 2));
    if !hypothesis {
        return;
    }
    let verts = ctx.union(&us);
    let (sizes, edges) = induced_shape(ctx.g, &verts);
    if sizes != vec![s, s] || edges != s * (s - 1) {
        ctx.report(8, &us, format!("components {sizes:?}, {edges} edges"));
    }
}

/// (9), (10): a triple nearly disconnected from a pair.
///
/// (9) if `‖X,U‖ = 0`: every singleton has `‖w,X‖ ≥ 2` and
/// `‖w,X∪U‖ ≥ 4`; every vertex `γ` of another pair has `‖γ,X‖ ≥ 2` and
/// `‖γ,X∪U‖ ≥ 4`.
/// (10) if `‖X,U‖ = 1`: `‖X,U'‖ ≥ 3` for every other pair.
fn triple_pair_sparse(ctx: &mut Ctx) {
    for &i in &ctx.triples.clone() {
        for &j in &ctx.pairs.clone() {
            let xu = ctx.e(ctx.cls(i), ctx.cls(j));
            if xu == 0 {
                let xu_set = ctx.union(&[i, j]);
                for &k in &ctx.singles.clone() {
                    let w = ctx.w(k);
                    let (a, b) = (ctx.e(&[w], ctx.cls(i)), ctx.e(&[w], &xu_set));
                    if a < 2 || b < 4 {
                        ctx.report(9, &[i, j, k], format!("‖w,X‖={a}, ‖w,X∪U‖={b}"));
                    }
                }
                for &j2 in ctx.pairs.clone().iter().filter(|&&j2| j2 != j) {
                    for &gamma in &ctx.cls(j2).to_vec() {
                        let (a, b) = (ctx.e(&[gamma], ctx.cls(i)), ctx.e(&[gamma], &xu_set));
                        if a < 2 || b < 4 {
                            ctx.report(9, &[i, j, j2], format!("γ={gamma}: ‖γ,X‖={a}, ‖γ,X∪U‖={b}"));
                        }
                    }
                }
            } else if xu == 1 {
                for &j2 in ctx.pairs.clone().iter().filter(|&&j2| j2 != j) {
                    let other = ctx.e(ctx.cls(i), ctx.cls(j2));
                    if other < 3 {
                        ctx.report(10, &[i, j, j2], format!("‖X,U'‖={other}"));
                    }
                }
            }
        }
    }
}

/// (11) `‖X,U∪U'‖ ≥ 4`; (12) if `‖X,U‖ = ‖X,U'‖ = ‖U,U'‖ = 2` then
/// `G[X∪U∪U'] = K_1 ∪ 2K_3`; (13) if `‖w,U‖ = ‖w,U'‖ = 1` and
/// `‖U,U'‖ = 2` then `G[w∪U∪U'] = K_2 ∪ K_3`.
fn triple_against_two_pairs(ctx: &mut Ctx) {
    let us = ctx.pairs.clone();
    for (a, &j) in us.iter().enumerate() {
        for &j2 in &us[a + 1..] {
            let uu = ctx.e(ctx.cls(j), ctx.cls(j2));
            for &i in &ctx.triples.clone() {
                let (x1, x2) = (ctx.e(ctx.cls(i), ctx.cls(j)), ctx.e(ctx.cls(i), ctx.cls(j2)));
                if x1 + x2 < 4 {
                    ctx.report(11, &[i, j, j2], format!("‖X,U∪U'‖={}", x1 + x2));
                }
                if x1 == 2 && x2 == 2 && uu == 2 {
                    let verts = ctx.union(&[i, j, j2]);
                    let (sizes, edges) = induced_shape(ctx.g, &verts);
                    if sizes != [1, 3, 3] || edges != 6 {
                        ctx.report(12, &[i, j, j2], format!("components {sizes:?}, {edges} edges"));
                    }
                }
            }
            if uu != 2 {
                continue;
            }
            for &k in &ctx.singles.clone() {
                let w = ctx.w(k);
                if ctx.e(&[w], ctx.cls(j)) == 1 && ctx.e(&[w], ctx.cls(j2)) == 1 {
                    let verts = ctx.union(&[k, j, j2]);
                    let (sizes, edges) = induced_shape(ctx.g, &verts);
                    if sizes != [2, 3] || edges != 4 {
                        ctx.report(13, &[k, j, j2], format!("components {sizes:?}, {edges} edges"));
                    }
                }
            }
        }
    }
}
