//! Run the solver over a corpus and tally what happened to each graph.

use crate::coloring::verify;
use crate::graph::{to_graph6, Graph};
use crate::oracle::{decide_equitable_with_cap, DEFAULT_CAP};
use crate::solver::{equitable_delta_with, SolveError, SolveOptions};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::time::Instant;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SweepOptions {
    pub solve: SolveOptions,
    /// Also ask the oracle for an equitable `Δ`-colouring of each solved
    /// graph no larger than `oracle_cap`.
    pub oracle_check: bool,
    pub oracle_cap: usize,
    /// Worker threads; `None` uses rayon's default pool.
    pub jobs: Option<usize>,
}

impl Default for SweepOptions {
    fn default() -> Self {
        Self {
            solve: SolveOptions::default(),
            oracle_check: false,
            oracle_cap: DEFAULT_CAP,
            jobs: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Disposition {
    Solved,
    OutOfWindow,
    ForbiddenComponent,
    Stall,
    VerificationFailure,
}

/// Per-disposition counts; `solved + … + verification_failures == graphs`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepTotals {
    pub graphs: usize,
    pub solved: usize,
    pub out_of_window: usize,
    pub forbidden_component: usize,
    pub stalls: usize,
    pub verification_failures: usize,
    pub oracle_checked: usize,
    pub oracle_disagreements: usize,
}

impl SweepTotals {
    fn add(&mut self, d: Disposition) {
        self.graphs += 1;
        match d {
            Disposition::Solved => self.solved += 1,
            Disposition::OutOfWindow => self.out_of_window += 1,
            Disposition::ForbiddenComponent => self.forbidden_component += 1,
            Disposition::Stall => self.stalls += 1,
            Disposition::VerificationFailure => self.verification_failures += 1,
        }
    }

    pub fn consistent(&self) -> bool {
        self.solved + self.out_of_window + self.forbidden_component + self.stalls + self.verification_failures
            == self.graphs
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FailureRecord {
    /// Position in the corpus.
    pub index: usize,
    pub graph6: String,
    pub disposition: Disposition,
    pub detail: String,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct RuntimeStats {
    pub elapsed_ms: u128,
    pub jobs: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepReport {
    pub radius: usize,
    pub totals: SweepTotals,
    /// Largest local-search step count seen.
    pub max_trace_steps: usize,
    pub failures: Vec<FailureRecord>,
    pub runtime: RuntimeStats,
}

impl SweepReport {
    /// JSON with the runtime zeroed, for byte-level comparison of runs.
    pub fn canonical_json(&self) -> String {
        let mut copy = self.clone();
        copy.runtime = RuntimeStats::default();
        serde_json::to_string_pretty(&copy).expect("report serializes")
    }

    pub fn is_clean(&self) -> bool {
        self.failures.is_empty() && self.totals.oracle_disagreements == 0
    }
}

impl fmt::Display for SweepReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let t = &self.totals;
        writeln!(f, "{:<22}{:>10}", "graphs", t.graphs)?;
        writeln!(f, "{:<22}{:>10}", "solved", t.solved)?;
        writeln!(f, "{:<22}{:>10}", "out of window", t.out_of_window)?;
        writeln!(f, "{:<22}{:>10}", "forbidden component", t.forbidden_component)?;
        writeln!(f, "{:<22}{:>10}", "stalls", t.stalls)?;
        writeln!(f, "{:<22}{:>10}", "verification failures", t.verification_failures)?;
        if t.oracle_checked > 0 {
            writeln!(f, "{:<22}{:>10}", "oracle checked", t.oracle_checked)?;
            writeln!(f, "{:<22}{:>10}", "oracle disagreements", t.oracle_disagreements)?;
        }
        writeln!(f, "{:<22}{:>10}", "max trace steps", self.max_trace_steps)?;
        write!(f, "{:<22}{:>8}ms, jobs: {}", "elapsed", self.runtime.elapsed_ms, self.runtime.jobs)?;
        for rec in &self.failures {
            write!(f, "\n{:?} #{} {}: {}", rec.disposition, rec.index, rec.graph6, rec.detail)?;
        }
        Ok(())
    }
}

struct Outcome {
    disposition: Disposition,
    steps: usize,
    oracle: Option<bool>,
    detail: Option<String>,
}

fn classify(g: &Graph, opts: &SweepOptions) -> Outcome {
    let mut out = Outcome {
        disposition: Disposition::Solved,
        steps: 0,
        oracle: None,
        detail: None,
    };
    match equitable_delta_with(g, opts.solve) {
        Ok(res) => {
            out.steps = res.trace.as_ref().map_or(0, |t| t.steps.len());
            let report = verify(g, &res.coloring, Some(g.max_degree()));
            if !report.ok() {
                out.disposition = Disposition::VerificationFailure;
                out.detail = Some(format!("{:?}", report.violations));
            }
            if opts.oracle_check && g.order() <= opts.oracle_cap {
                let yes = decide_equitable_with_cap(g, g.max_degree(), opts.oracle_cap)
                    .map(|w| w.is_some())
                    .unwrap_or(false);
                out.oracle = Some(yes);
                if !yes {
                    out.detail = Some("oracle found no equitable Δ-colouring".into());
                }
            }
        }
        Err(SolveError::OutOfWindow(_)) => out.disposition = Disposition::OutOfWindow,
        Err(SolveError::ForbiddenComponent(_)) => out.disposition = Disposition::ForbiddenComponent,
        Err(e @ SolveError::Stall(_)) => {
            out.disposition = Disposition::Stall;
            out.detail = Some(e.to_string());
        }
        Err(e) => {
            out.disposition = Disposition::VerificationFailure;
            out.detail = Some(e.to_string());
        }
    }
    out
}

/// Classifies every graph, solving the admissible ones. Never stops early;
/// failures are recorded with their graph6 code.
pub fn sweep(corpus: &[Graph], opts: SweepOptions) -> SweepReport {
    let started = Instant::now();
    let run = || corpus.par_iter().map(|g| classify(g, &opts)).collect::<Vec<_>>();
    let (outcomes, jobs) = match opts.jobs {
        Some(j) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(j)
                .build()
                .expect("thread pool");
            (pool.install(run), j)
        }
        None => (run(), rayon::current_num_threads()),
    };
    let mut totals = SweepTotals::default();
    let mut failures = Vec::new();
    let mut max_trace_steps = 0;
    for (index, (g, out)) in corpus.iter().zip(outcomes).enumerate() {
        totals.add(out.disposition);
        max_trace_steps = max_trace_steps.max(out.steps);
        if let Some(yes) = out.oracle {
            totals.oracle_checked += 1;
            totals.oracle_disagreements += (!yes) as usize;
        }
        if let Some(detail) = out.detail {
            failures.push(FailureRecord {
                index,
                graph6: to_graph6(g),
                disposition: out.disposition,
                detail,
            });
        }
    }
    SweepReport {
        radius: opts.solve.radius,
        totals,
        max_trace_steps,
        failures,
        runtime: RuntimeStats {
            elapsed_ms: started.elapsed().as_millis(),
            jobs,
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, read_graph6_lines, GeneratorSpec};

    #[test]
    fn all_six_vertex_graphs() {
        let corpus = read_graph6_lines(include_str!("../fixtures/graphs6.g6")).unwrap();
        let opts = SweepOptions {
            oracle_check: true,
            ..SweepOptions::default()
        };
        let report = sweep(&corpus, opts);
        assert_eq!(report.totals.graphs, 156);
        assert!(report.totals.consistent());
        assert!(report.is_clean(), "{report}");
        // |G| = 6 leaves no room for 7 ≤ 3Δ and 2Δ < 6 at once.
        assert_eq!(report.totals.out_of_window, 156);
    }

    #[test]
    fn small_corpora() {
        let k4 = generate(&GeneratorSpec::Complete(4), 0).unwrap();
        let k3 = generate(&GeneratorSpec::Complete(3), 0).unwrap();
        let report = sweep(&[k4.disjoint_union(&k3)], SweepOptions::default());
        assert_eq!(report.totals.forbidden_component, 1);

        let k33 = generate(&GeneratorSpec::CompleteBipartite(3, 3), 0).unwrap();
        let report = sweep(&[k33], SweepOptions::default());
        assert_eq!(report.totals.out_of_window, 1);
    }

    #[test]
    fn canonical_json_ignores_runtime() {
        let corpus = read_graph6_lines(include_str!("../fixtures/graphs7.g6")).unwrap();
        let a = sweep(&corpus[..200], SweepOptions::default());
        let b = sweep(
            &corpus[..200],
            SweepOptions {
                jobs: Some(1),
                ..SweepOptions::default()
            },
        );
        assert_eq!(a.canonical_json(), b.canonical_json());
        assert!(a.totals.solved > 0);
    }
}
