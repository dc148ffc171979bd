//! From an `[r,s,t]`-colouring with `r+s+t ≤ Δ < |G|/2` to an equitable
//! colouring with any class count `m` in `[r+s+t, Δ]`.
//!
//! [`split_to`] raises the class count by breaking triples into a pair and
//! a singleton; [`balance`] then removes singletons one at a time, each
//! step trading one triple and one singleton for two pairs.

use crate::coloring::{Coloring, ColoringError, Profile};
use crate::graph::Graph;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReduceError {
    #[error(transparent)]
    Coloring(#[from] ColoringError),
    #[error("target {m} outside [{lo}, {hi}]")]
    TargetOutOfRange { m: usize, lo: usize, hi: usize },
    #[error("need {q} triples to split but only {r} exist")]
    NotEnoughTriples { q: usize, r: usize },
    #[error("2Δ = {} is not below |G| = {order}", 2 * max_degree)]
    DegreeTooLarge { max_degree: usize, order: usize },
    #[error("class count {classes} exceeds Δ = {max_degree}")]
    TooManyClasses { classes: usize, max_degree: usize },
    #[error("no singleton class to eliminate")]
    NoSingleton,
    #[error("expected r > t, found profile {0}")]
    TriplesNotDominant(Profile),
    #[error("internal contradiction: no reduction case applies at profile {0}")]
    NoCaseApplies(Profile),
}

/// Which branch of the reduction produced a step.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CaseTag {
    /// Two non-adjacent singletons pair up; a triple gives up a pair.
    SingletonPair,
    /// A singleton joins a non-neighbour taken from a triple.
    TripleSingleton,
    /// A triple vertex, a singleton and a pair class regroup into two pairs.
    MixedU,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionStep {
    pub case_tag: CaseTag,
    /// Ascending indices of the classes replaced.
    pub touched: Vec<usize>,
    pub replacement: Vec<Vec<usize>>,
    pub before: Profile,
    pub after: Profile,
}

impl ReductionStep {
    /// Removes the touched classes and appends the replacement.
    pub fn apply(&self, c: &Coloring) -> Coloring {
        c.replace(&self.touched, self.replacement.clone())
    }
}

fn check_hypotheses(g: &Graph, p: Profile) -> Result<(), ReduceError> {
    let max_degree = g.max_degree();
    if 2 * max_degree >= g.order() {
        return Err(ReduceError::DegreeTooLarge {
            max_degree,
            order: g.order(),
        });
    }
    if p.class_count() > max_degree {
        return Err(ReduceError::TooManyClasses {
            classes: p.class_count(),
            max_degree,
        });
    }
    Ok(())
}

/// Splits the `q = m - (r+s+t)` lowest-index triples, each into its first
/// two vertices (kept in place) and its last vertex (appended as a
/// singleton). The profile becomes `(r-q, s+q, t+q)`.
pub fn split_to(g: &Graph, c: &Coloring, m: usize) -> Result<Coloring, ReduceError> {
    let p = c.profile()?;
    let max_degree = g.max_degree();
    if 2 * max_degree >= g.order() {
        return Err(ReduceError::DegreeTooLarge {
            max_degree,
            order: g.order(),
        });
    }
    let sigma = p.class_count();
    if m < sigma || m > max_degree {
        return Err(ReduceError::TargetOutOfRange {
            m,
            lo: sigma,
            hi: max_degree,
        });
    }
    let q = m - sigma;
    if q == 0 {
        return Ok(c.clone());
    }
    if q >= p.r {
        return Err(ReduceError::NotEnoughTriples { q, r: p.r });
    }
    let mut classes = c.classes().to_vec();
    let mut tails = Vec::with_capacity(q);
    for class in classes.iter_mut().filter(|cl| cl.len() == 3).take(q) {
        tails.push(vec![class.pop().expect("triple")]);
    }
    classes.extend(tails);
    Ok(Coloring::new(g.order(), classes)?)
}

/// One reduction step, trying the three cases in order.
pub fn balance_step(g: &Graph, c: &Coloring) -> Result<ReductionStep, ReduceError> {
    let before = c.profile()?;
    if before.t == 0 {
        return Err(ReduceError::NoSingleton);
    }
    check_hypotheses(g, before)?;
    if before.r <= before.t {
        return Err(ReduceError::TriplesNotDominant(before));
    }
    let after = Profile::new(before.r - 1, before.s + 2, before.t - 1);
    let of_size = |k: usize| -> Vec<usize> { (0..c.len()).filter(|&i| c.class(i).len() == k).collect() };
    let (triples, pairs, singles) = (of_size(3), of_size(2), of_size(1));
    let step = |case_tag, mut touched: Vec<usize>, replacement| {
        touched.sort_unstable();
        ReductionStep {
            case_tag,
            touched,
            replacement,
            before,
            after,
        }
    };

    for (a, &k) in singles.iter().enumerate() {
        for &k2 in &singles[a + 1..] {
            let (w, w2) = (c.class(k)[0], c.class(k2)[0]);
            if !g.adjacent(w, w2) {
                let x = triples[0];
                let cl = c.class(x);
                return Ok(step(
                    CaseTag::SingletonPair,
                    vec![x, k, k2],
                    vec![vec![cl[0], cl[1]], vec![cl[2]], vec![w, w2]],
                ));
            }
        }
    }

    for &i in &triples {
        for &k in &singles {
            let w = c.class(k)[0];
            if let Some(&z) = c.class(i).iter().find(|&&z| !g.adjacent(z, w)) {
                let rest: Vec<usize> = c.class(i).iter().copied().filter(|&v| v != z).collect();
                return Ok(step(CaseTag::TripleSingleton, vec![i, k], vec![rest, vec![z, w]]));
            }
        }
    }

    // Every singleton now sees every triple vertex.
    for &i in &triples {
        for &k in &singles {
            let w = c.class(k)[0];
            for &x in c.class(i) {
                for &j in &pairs {
                    let (u, v) = (c.class(j)[0], c.class(j)[1]);
                    let links = [x, w]
                        .iter()
                        .map(|&a| g.adjacent(a, u) as usize + g.adjacent(a, v) as usize)
                        .sum::<usize>();
                    if links > 1 {
                        continue;
                    }
                    let matchings = [[[x, w], [u, v]], [[x, u], [w, v]], [[x, v], [w, u]]];
                    let independent = |p: [usize; 2]| !g.adjacent(p[0], p[1]);
                    if let Some([a, b]) = matchings.into_iter().find(|m| independent(m[0]) && independent(m[1])) {
                        let rest: Vec<usize> = c.class(i).iter().copied().filter(|&y| y != x).collect();
                        return Ok(step(CaseTag::MixedU, vec![i, j, k], vec![a.to_vec(), b.to_vec(), rest]));
                    }
                }
            }
        }
    }
    Err(ReduceError::NoCaseApplies(before))
}

/// Applies [`balance_step`] exactly `t` times; the result has profile
/// `(r-t, s+2t, 0)` and the same class count, hence is equitable.
pub fn balance(g: &Graph, c: &Coloring) -> Result<(Coloring, Vec<ReductionStep>), ReduceError> {
    let start = c.profile()?;
    if start.t == 0 {
        return Ok((c.clone(), Vec::new()));
    }
    check_hypotheses(g, start)?;
    if start.r <= start.t {
        return Err(ReduceError::TriplesNotDominant(start));
    }
    let mut current = c.clone();
    let mut steps = Vec::with_capacity(start.t);
    for _ in 0..start.t {
        let step = balance_step(g, &current)?;
        current = step.apply(&current);
        debug_assert_eq!(current.profile().ok(), Some(step.after));
        steps.push(step);
    }
    Ok((current, steps))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::verify;

    fn chorded_c7() -> Graph {
        let mut edges: Vec<_> = (0..7).map(|i| (i, (i + 1) % 7)).collect();
        edges.push((0, 3));
        Graph::from_edges(7, edges).unwrap()
    }

    /// Three independent triples {0,1,2}, {3,4,5}, {6,7,8} with Δ = 4.
    fn nine_vertex_delta4() -> Graph {
        let edges = [(0, 3), (0, 4), (0, 6), (0, 7), (1, 5), (1, 8), (2, 5), (3, 6), (4, 8)];
        let g = Graph::from_edges(9, edges).unwrap();
        assert_eq!(g.max_degree(), 4);
        g
    }

    #[test]
    fn split_examples() {
        let g = nine_vertex_delta4();
        let c = Coloring::new(9, vec![vec![0, 1, 2], vec![3, 4, 5], vec![6, 7, 8]]).unwrap();
        let split = split_to(&g, &c, 4).unwrap();
        assert_eq!(split.profile().unwrap(), Profile::new(2, 1, 1));
        assert_eq!(split.classes(), &[vec![0, 1], vec![3, 4, 5], vec![6, 7, 8], vec![2]]);
        assert!(verify(&g, &split, Some(4)).proper);

        assert_eq!(split_to(&g, &c, 3).unwrap(), c);

        let g = chorded_c7();
        let c = Coloring::new(7, vec![vec![0, 2, 5], vec![4, 6], vec![1, 3]]).unwrap();
        assert_eq!(
            split_to(&g, &c, 5),
            Err(ReduceError::TargetOutOfRange { m: 5, lo: 3, hi: 3 })
        );
    }

    #[test]
    fn split_rejects_degree_hypothesis() {
        let k33 = Graph::from_edges(6, (0..3).flat_map(|a| (3..6).map(move |b| (a, b)))).unwrap();
        let c = Coloring::new(6, vec![vec![0, 1, 2], vec![3, 4, 5]]).unwrap();
        assert!(matches!(split_to(&k33, &c, 3), Err(ReduceError::DegreeTooLarge { .. })));
    }

    #[test]
    fn case_two_on_chorded_cycle() {
        let g = chorded_c7();
        // {v2,v5,v7}, {v1,v3,v6}, {v4}
        let c = Coloring::new(7, vec![vec![1, 4, 6], vec![0, 2, 5], vec![3]]).unwrap();
        let step = balance_step(&g, &c).unwrap();
        assert_eq!(step.case_tag, CaseTag::TripleSingleton);
        assert_eq!(step.touched, vec![0, 2]);
        assert_eq!(step.replacement, vec![vec![4, 6], vec![1, 3]]);
        let next = step.apply(&c);
        assert_eq!(next.profile().unwrap(), Profile::new(1, 2, 0));
        assert!(verify(&g, &next, Some(3)).ok());
    }

    #[test]
    fn split_then_balance_on_nine_vertices() {
        let g = nine_vertex_delta4();
        let c = Coloring::new(9, vec![vec![0, 1, 2], vec![3, 4, 5], vec![6, 7, 8]]).unwrap();
        let split = split_to(&g, &c, 4).unwrap();
        let step = balance_step(&g, &split).unwrap();
        assert_eq!(step.after, Profile::new(1, 3, 0));
        assert!(verify(&g, &step.apply(&split), Some(4)).ok());
    }

    #[test]
    fn singleton_pair_case() {
        // Triples {0,1,2}, {3,4,5}, {6,7,8} and free singletons 9, 10; Δ = 5.
        let edges = [(9, 0), (9, 1), (9, 3), (9, 4), (9, 6), (10, 2)];
        let g = Graph::from_edges(11, edges).unwrap();
        assert_eq!(g.max_degree(), 5);
        let c = Coloring::new(11, vec![vec![0, 1, 2], vec![3, 4, 5], vec![6, 7, 8], vec![9], vec![10]]).unwrap();
        let step = balance_step(&g, &c).unwrap();
        assert_eq!(step.case_tag, CaseTag::SingletonPair);
        assert_eq!(step.touched, vec![0, 3, 4]);
        assert_eq!(step.replacement, vec![vec![0, 1], vec![2], vec![9, 10]]);
        let (out, steps) = balance(&g, &c).unwrap();
        assert_eq!(steps.len(), 2);
        assert_eq!(out.profile().unwrap(), Profile::new(1, 4, 0));
        assert!(verify(&g, &out, Some(5)).ok());
    }

    #[test]
    fn hypotheses_are_checked() {
        let edges = [(0, 3), (0, 4), (1, 5), (2, 3), (6, 0), (7, 1)];
        let g = Graph::from_edges(8, edges).unwrap();
        let c = Coloring::new(8, vec![vec![0, 1, 2], vec![3, 4, 5], vec![6], vec![7]]).unwrap();
        assert!(matches!(balance_step(&g, &c), Err(ReduceError::TooManyClasses { .. })));
    }

    #[test]
    fn balance_examples() {
        let g = chorded_c7();
        let c = Coloring::new(7, vec![vec![1, 4, 6], vec![0, 2, 5], vec![3]]).unwrap();
        let (out, steps) = balance(&g, &c).unwrap();
        assert_eq!(steps.len(), 1);
        assert_eq!(out.profile().unwrap(), Profile::new(1, 2, 0));

        let eq = Coloring::new(7, vec![vec![0, 2, 5], vec![4, 6], vec![1, 3]]).unwrap();
        let (same, steps) = balance(&g, &eq).unwrap();
        assert!(steps.is_empty());
        assert_eq!(same, eq);

        assert_eq!(balance_step(&g, &eq), Err(ReduceError::NoSingleton));
    }
}
