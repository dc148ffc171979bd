//! Colour-class partitions, the `[r,s,t]` profile and verification.

use crate::graph::Graph;
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ColoringError {
    #[error("class {0} is empty")]
    EmptyClass(usize),
    #[error("vertex {0} appears in more than one class")]
    Duplicate(usize),
    #[error("vertex {vertex} out of range for order {order}")]
    OutOfRange { vertex: usize, order: usize },
    #[error("vertex {0} is not covered by any class")]
    Missing(usize),
    #[error("class {class} has size {size}; profiles need sizes 1..=3")]
    ProfileUndefined { class: usize, size: usize },
}

/// A partition of `0..order` into nonempty colour classes.
///
/// Classes keep a stable order (moves remove classes and append new ones)
/// and each class is stored sorted ascending. Whether the classes are
/// independent is a property of a graph; see [`verify`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Coloring {
    classes: Vec<Vec<usize>>,
    class_of: Vec<usize>,
}

impl Coloring {
    pub fn new(order: usize, mut classes: Vec<Vec<usize>>) -> Result<Self, ColoringError> {
        let mut class_of = vec![usize::MAX; order];
        for (i, class) in classes.iter_mut().enumerate() {
            if class.is_empty() {
                return Err(ColoringError::EmptyClass(i));
            }
            class.sort_unstable();
            for &v in class.iter() {
                if v >= order {
                    return Err(ColoringError::OutOfRange { vertex: v, order });
                }
                if class_of[v] != usize::MAX {
                    return Err(ColoringError::Duplicate(v));
                }
                class_of[v] = i;
            }
        }
        if let Some(v) = class_of.iter().position(|&c| c == usize::MAX) {
            return Err(ColoringError::Missing(v));
        }
        Ok(Self { classes, class_of })
    }

    /// Builds from a colour label per vertex; labels are renumbered by first
    /// appearance.
    pub fn from_labels(labels: &[usize]) -> Self {
        let mut remap = std::collections::HashMap::new();
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for (v, &label) in labels.iter().enumerate() {
            let idx = *remap.entry(label).or_insert_with(|| {
                classes.push(Vec::new());
                classes.len() - 1
            });
            classes[idx].push(v);
        }
        Self::new(labels.len(), classes).expect("labels cover every vertex once")
    }

    /// `|G|` singleton classes.
    pub fn trivial(order: usize) -> Self {
        Self {
            classes: (0..order).map(|v| vec![v]).collect(),
            class_of: (0..order).collect(),
        }
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn class(&self, i: usize) -> &[usize] {
        &self.classes[i]
    }

    #[inline]
    pub fn class_of(&self, v: usize) -> usize {
        self.class_of[v]
    }

    /// Number of classes `k`.
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn order(&self) -> usize {
        self.class_of.len()
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.classes.iter().map(Vec::len).collect()
    }

    /// Sorted class sizes, largest first.
    pub fn size_multiset(&self) -> Vec<usize> {
        let mut s = self.sizes();
        s.sort_unstable_by(|a, b| b.cmp(a));
        s
    }

    /// The `(r, s, t)` profile; undefined if any class has size > 3.
    pub fn profile(&self) -> Result<Profile, ColoringError> {
        let mut p = Profile::default();
        for (class, c) in self.classes.iter().enumerate() {
            match c.len() {
                1 => p.t += 1,
                2 => p.s += 1,
                3 => p.r += 1,
                size => return Err(ColoringError::ProfileUndefined { class, size }),
            }
        }
        Ok(p)
    }

    /// Removes the `sources` classes (in place order is kept for the rest)
    /// and appends `replacement`. The caller guarantees the replacement
    /// covers exactly the removed vertices.
    pub(crate) fn replace(&self, sources: &[usize], replacement: Vec<Vec<usize>>) -> Coloring {
        let mut classes: Vec<Vec<usize>> = self
            .classes
            .iter()
            .enumerate()
            .filter(|(i, _)| !sources.contains(i))
            .map(|(_, c)| c.clone())
            .collect();
        for mut block in replacement {
            block.sort_unstable();
            classes.push(block);
        }
        let mut class_of = vec![usize::MAX; self.order()];
        for (i, c) in classes.iter().enumerate() {
            for &v in c {
                class_of[v] = i;
            }
        }
        debug_assert!(class_of.iter().all(|&c| c != usize::MAX));
        Coloring { classes, class_of }
    }
}

/// Counts of size-3, size-2 and size-1 classes.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct Profile {
    pub r: usize,
    pub s: usize,
    pub t: usize,
}

impl Profile {
    pub fn new(r: usize, s: usize, t: usize) -> Self {
        Self { r, s, t }
    }

    /// `r + s + t`.
    pub fn class_count(&self) -> usize {
        self.r + self.s + self.t
    }

    /// `3r + 2s + t`.
    pub fn vertex_count(&self) -> usize {
        3 * self.r + 2 * self.s + self.t
    }
}

impl Serialize for Profile {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        [self.r, self.s, self.t].serialize(ser)
    }
}

impl<'de> Deserialize<'de> for Profile {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let [r, s, t] = <[usize; 3]>::deserialize(de)?;
        Ok(Self { r, s, t })
    }
}

impl std::fmt::Display for Profile {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[{},{},{}]", self.r, self.s, self.t)
    }
}

/// Orders by `r`, then `s`. `t` is ignored: at a fixed order it is
/// determined by the other two.
pub fn lex_compare(a: &Profile, b: &Profile) -> Ordering {
    (a.r, a.s).cmp(&(b.r, b.s))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    /// Both endpoints of an edge share a class.
    Edge { u: usize, v: usize, class: usize },
    /// Two classes whose sizes differ by more than one.
    SizeGap {
        larger: usize,
        smaller: usize,
        sizes: [usize; 2],
    },
    EmptyClass { class: usize },
    MissingVertex { vertex: usize },
    DuplicateVertex { vertex: usize },
    OutOfRange { vertex: usize },
    ClassCount { expected: usize, actual: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub proper: bool,
    pub equitable: bool,
    /// Every vertex of the graph appears exactly once.
    pub universe_ok: bool,
    pub class_count: usize,
    pub size_spread: usize,
    pub violations: Vec<Violation>,
}

impl VerifyReport {
    /// Proper, equitable, covering, and with the expected class count.
    pub fn ok(&self) -> bool {
        self.proper && self.equitable && self.universe_ok && self.violations.is_empty()
    }
}

pub fn verify(g: &Graph, c: &Coloring, expected_k: Option<usize>) -> VerifyReport {
    verify_classes(g, c.classes(), expected_k)
}

/// Verifies raw classes, which need not even be a partition; every defect
/// is reported rather than rejected.
pub fn verify_classes(g: &Graph, classes: &[Vec<usize>], expected_k: Option<usize>) -> VerifyReport {
    let n = g.order();
    let mut violations = Vec::new();
    let mut seen = vec![0usize; n];
    for (i, class) in classes.iter().enumerate() {
        if class.is_empty() {
            violations.push(Violation::EmptyClass { class: i });
        }
        for &v in class {
            if v >= n {
                violations.push(Violation::OutOfRange { vertex: v });
            } else {
                seen[v] += 1;
                if seen[v] == 2 {
                    violations.push(Violation::DuplicateVertex { vertex: v });
                }
            }
        }
    }
    violations.extend(
        seen.iter()
            .enumerate()
            .filter(|(_, &c)| c == 0)
            .map(|(vertex, _)| Violation::MissingVertex { vertex }),
    );
    let universe_ok = violations.is_empty();

    let mut proper = true;
    for (i, class) in classes.iter().enumerate() {
        let members: Vec<usize> = class.iter().copied().filter(|&v| v < n).collect();
        for (a, &u) in members.iter().enumerate() {
            for &v in &members[a + 1..] {
                if u != v && g.adjacent(u, v) {
                    proper = false;
                    violations.push(Violation::Edge {
                        u: u.min(v),
                        v: u.max(v),
                        class: i,
                    });
                }
            }
        }
    }

    let sizes: Vec<usize> = classes.iter().map(Vec::len).collect();
    let (size_spread, equitable) = match (sizes.iter().max(), sizes.iter().min()) {
        (Some(&max), Some(&min)) => (max - min, max - min <= 1),
        _ => (0, true),
    };
    if !equitable {
        let larger = sizes.iter().position(|&s| s == sizes.iter().copied().max().unwrap()).unwrap();
        let smaller = sizes.iter().position(|&s| s == sizes.iter().copied().min().unwrap()).unwrap();
        violations.push(Violation::SizeGap {
            larger,
            smaller,
            sizes: [sizes[larger], sizes[smaller]],
        });
    }
    if let Some(expected) = expected_k {
        if expected != classes.len() {
            violations.push(Violation::ClassCount {
                expected,
                actual: classes.len(),
            });
        }
    }
    VerifyReport {
        proper,
        equitable,
        universe_ok,
        class_count: classes.len(),
        size_spread,
        violations,
    }
}

/// `{"k": int, "classes": [[v,...],...], "profile": [r,s,t] | null}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColoringJson {
    pub k: usize,
    pub classes: Vec<Vec<usize>>,
    pub profile: Option<Profile>,
}

impl From<&Coloring> for ColoringJson {
    fn from(c: &Coloring) -> Self {
        Self {
            k: c.len(),
            classes: c.classes().to_vec(),
            profile: c.profile().ok(),
        }
    }
}

impl ColoringJson {
    pub fn into_coloring(self, order: usize) -> Result<Coloring, ColoringError> {
        Coloring::new(order, self.classes)
    }
}
