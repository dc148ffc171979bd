//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Set `EQUICOLOR_SWEEP_N9=1` to include the 274,668 graphs on nine
//! vertices in the exhaustive criteria.

use equicolor::coloring::{verify, Coloring, Profile};
use equicolor::graph::{generate, read_graph6_lines, GeneratorSpec, Graph};
use equicolor::hs::hs_delta_plus_one;
use equicolor::oracle::decide_equitable;
use equicolor::reduce::{balance, split_to};
use equicolor::search::{audit, greedy_coloring, run_local_search, trivial_coloring, DEFAULT_RADIUS};
use equicolor::solver::equitable_delta;
use equicolor::sweep::{sweep, SweepOptions};
use rand::seq::{IndexedRandom, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use std::time::{Duration, Instant};

const EXHAUSTIVE_BUDGET: Duration = Duration::from_secs(600);
const HS_BUDGET: Duration = Duration::from_secs(120);
const ORACLE_SAMPLE: usize = 1_000;
const REDUCTION_RUNS: usize = 10_000;
const SPLIT_CASES: usize = 10_000;
const HS_GRAPHS: usize = 500;
const HS_MAX_ORDER: usize = 60;
const SEED: u64 = 0x5eed_c010;

fn corpus(n: usize) -> Vec<Graph> {
    let path = format!("{}/fixtures/graphs{n}.g6", env!("CARGO_MANIFEST_DIR"));
    let text = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{path}: {e}"));
    read_graph6_lines(&text).expect("fixture parses")
}

fn include_nine() -> bool {
    std::env::var("EQUICOLOR_SWEEP_N9").is_ok_and(|v| v == "1")
}

struct Corpora {
    /// Every graph of the exhaustive range, in fixture order.
    exhaustive: Vec<Graph>,
    orders: String,
    /// Admissible graphs on 7 to 9 vertices, for sampling.
    admissible_pool: Vec<Graph>,
}

fn load() -> Corpora {
    let top = if include_nine() { 9 } else { 8 };
    let mut exhaustive = Vec::new();
    for n in 6..=top {
        exhaustive.extend(corpus(n));
    }
    let mut admissible_pool: Vec<Graph> = exhaustive
        .iter()
        .filter(|g| g.window_check().admissible())
        .cloned()
        .collect();
    if top < 9 {
        admissible_pool.extend(corpus(9).into_iter().filter(|g| g.window_check().admissible()));
    }
    Corpora {
        exhaustive,
        orders: format!("6..={top}"),
        admissible_pool,
    }
}

fn random_relabel(g: &Graph, rng: &mut ChaCha8Rng) -> Graph {
    let mut perm: Vec<usize> = (0..g.order()).collect();
    perm.shuffle(rng);
    g.relabel(&perm)
}

fn sizes_spread(c: &Coloring) -> usize {
    let s = c.sizes();
    s.iter().max().unwrap_or(&0) - s.iter().min().unwrap_or(&0)
}

struct Outcome {
    pass: bool,
    summary: String,
}

fn outcome(pass: bool, summary: String) -> Outcome {
    Outcome { pass, summary }
}

fn exhaustive_validation(c: &Corpora) -> Outcome {
    let started = Instant::now();
    let results: Vec<(bool, bool, bool)> = c
        .exhaustive
        .par_iter()
        .filter(|g| g.window_check().admissible())
        .map(|g| match equitable_delta(g) {
            Ok(res) => {
                let ok = verify(g, &res.coloring, Some(g.max_degree())).ok() && res.coloring.len() == g.max_degree();
                (true, ok, false)
            }
            Err(equicolor::solver::SolveError::Stall(_)) => (false, false, true),
            Err(_) => (false, false, false),
        })
        .collect();
    let elapsed = started.elapsed();
    let total = results.len();
    let solved = results.iter().filter(|r| r.0 && r.1).count();
    let stalls = results.iter().filter(|r| r.2).count();
    outcome(
        total > 0 && solved == total && stalls == 0 && elapsed < EXHAUSTIVE_BUDGET,
        format!(
            "exhaustive n={}: {solved}/{total} admissible graphs get a verified equitable Δ-colouring, {stalls} stalls, {:.1}s",
            c.orders,
            elapsed.as_secs_f64()
        ),
    )
}

fn oracle_agreement(c: &Corpora) -> Outcome {
    let admissible: Vec<&Graph> = c.exhaustive.iter().filter(|g| g.window_check().admissible()).collect();
    let disagreements = admissible
        .par_iter()
        .filter(|g| {
            let solved = equitable_delta(g).is_ok();
            let witness = decide_equitable(g, g.max_degree()).expect("order below cap");
            solved && witness.is_none_or(|w| !verify(g, &w, Some(g.max_degree())).ok())
        })
        .count();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let sample: Vec<&Graph> = (0..ORACLE_SAMPLE)
        .map(|_| c.admissible_pool.choose(&mut rng).expect("pool is non-empty"))
        .collect();
    let sample_failures = sample
        .par_iter()
        .filter(|g| {
            let k = g.max_degree();
            let ours = equitable_delta(g).map(|r| verify(g, &r.coloring, Some(k)).ok());
            let theirs = decide_equitable(g, k).expect("order below cap").map(|w| verify(g, &w, Some(k)).ok());
            !(ours == Ok(true) && theirs == Some(true))
        })
        .count();
    outcome(
        disagreements == 0 && sample_failures == 0,
        format!(
            "oracle agreement: {disagreements} disagreements over {} admissible graphs; {sample_failures}/{ORACLE_SAMPLE} sampled pairs of witnesses failed",
            admissible.len()
        ),
    )
}

fn bipartite_non_monotone() -> Outcome {
    let k33 = generate(&GeneratorSpec::CompleteBipartite(3, 3), 0).expect("K_{3,3}");
    let answers: Vec<bool> = (2..=4)
        .map(|k| {
            decide_equitable(&k33, k)
                .expect("small")
                .is_some_and(|w| verify(&k33, &w, Some(k)).ok())
        })
        .collect();
    outcome(
        answers == [true, false, true],
        format!("K_3,3 equitably colourable at k = 2, 3, 4: {answers:?} (want [true, false, true])"),
    )
}

fn reduction_contract(c: &Corpora) -> Outcome {
    let violations: Vec<String> = (0..REDUCTION_RUNS)
        .into_par_iter()
        .filter_map(|run| {
            let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ run as u64);
            let g = random_relabel(c.admissible_pool.choose(&mut rng).expect("pool"), &mut rng);
            let start = if rng.random_bool(0.5) { trivial_coloring(&g) } else { greedy_coloring(&g) };
            let (closed, _) = run_local_search(&g, &start, DEFAULT_RADIUS).expect("search runs");
            let delta = g.max_degree();
            let sigma = closed.len();
            if sigma > delta {
                return Some(format!("run {run}: σ = {sigma} > Δ = {delta}"));
            }
            let m = rng.random_range(sigma..=delta);
            let split = match split_to(&g, &closed, m) {
                Ok(x) => x,
                Err(e) => return Some(format!("run {run}: split: {e}")),
            };
            let p0 = split.profile().expect("split classes have size ≤ 3");
            if p0.r <= p0.t {
                return Some(format!("run {run}: r > t fails at {p0}"));
            }
            let (out, steps) = match balance(&g, &split) {
                Ok(x) => x,
                Err(e) => return Some(format!("run {run}: {e}")),
            };
            if steps.len() != p0.t {
                return Some(format!("run {run}: {} steps for t = {}", steps.len(), p0.t));
            }
            let mut cur = split.clone();
            for step in &steps {
                let before = cur.profile().expect("profile");
                cur = step.apply(&cur);
                let Ok(after) = cur.profile() else {
                    return Some(format!("run {run}: step left a class outside sizes 1..=3"));
                };
                let d = (
                    after.r as i64 - before.r as i64,
                    after.s as i64 - before.s as i64,
                    after.t as i64 - before.t as i64,
                );
                if d != (-1, 2, -1) || !verify(&g, &cur, None).proper {
                    return Some(format!("run {run}: step delta {d:?}"));
                }
            }
            (cur != out || !verify(&g, &out, Some(m)).ok()).then(|| format!("run {run}: final colouring"))
        })
        .collect();
    outcome(
        violations.is_empty(),
        format!(
            "reduction contract: {} violations in {REDUCTION_RUNS} seeded runs{}",
            violations.len(),
            violations.first().map(|v| format!(" (first: {v})")).unwrap_or_default()
        ),
    )
}

fn lex_ascent(c: &Corpora) -> Outcome {
    let failures: Vec<String> = c
        .exhaustive
        .par_iter()
        .filter_map(|g| {
            let n = g.order();
            let bound = (n / 3 + 1) * (n / 2 + 1);
            let (closed, trace) = run_local_search(g, &trivial_coloring(g), DEFAULT_RADIUS).expect("search runs");
            if !trace.is_strictly_increasing() || trace.steps.len() > bound {
                return Some(format!("{} steps, bound {bound}", trace.steps.len()));
            }
            let report = audit(g, &closed);
            (g.window_check().in_window && !report.is_clean()).then(|| format!("{:?}", report.violations[0]))
        })
        .collect();
    outcome(
        failures.is_empty(),
        format!(
            "lex ascent n={}: {} traces, {} exceptions (non-increasing, over the step bound, or audit violations)",
            c.orders,
            c.exhaustive.len(),
            failures.len()
        ),
    )
}

fn split_formula(c: &Corpora) -> Outcome {
    let violations = (0..SPLIT_CASES)
        .into_par_iter()
        .filter(|&case| {
            let mut rng = ChaCha8Rng::seed_from_u64(SEED.rotate_left(17) ^ case as u64);
            let g = if case % 2 == 0 {
                random_relabel(c.admissible_pool.choose(&mut rng).expect("pool"), &mut rng)
            } else {
                let n = rng.random_range(10..=24);
                let spec = GeneratorSpec::WindowedGnp {
                    n,
                    p: rng.random_range(0.25..0.4),
                    max_tries: 10_000,
                };
                generate(&spec, rng.random()).expect("an admissible graph within the retry cap")
            };
            let (closed, _) = run_local_search(&g, &trivial_coloring(&g), DEFAULT_RADIUS).expect("search runs");
            let Profile { r, s, t } = closed.profile().expect("profile");
            let sigma = r + s + t;
            let delta = g.max_degree();
            if sigma > delta {
                return true;
            }
            let m = rng.random_range(sigma..=delta);
            let q = m - sigma;
            match split_to(&g, &closed, m) {
                Ok(split) => split.profile() != Ok(Profile::new(r - q, s + q, t + q)) || !verify(&g, &split, Some(m)).proper,
                Err(_) => true,
            }
        })
        .count();
    outcome(
        violations == 0,
        format!("split formula: {violations} violations in {SPLIT_CASES} randomized cases"),
    )
}

fn hs_fallback() -> Outcome {
    let started = Instant::now();
    let failures = (0..HS_GRAPHS)
        .into_par_iter()
        .filter(|&i| {
            let mut rng = ChaCha8Rng::seed_from_u64(SEED.wrapping_add(i as u64));
            let n = rng.random_range(1..=HS_MAX_ORDER);
            let p = [0.1, 0.3, 0.5][i % 3];
            let g = generate(&GeneratorSpec::Gnp { n, p }, rng.random()).expect("gnp");
            let k = g.max_degree() + 1;
            match hs_delta_plus_one(&g) {
                Ok(col) => !(verify(&g, &col, Some(k)).proper && col.len() == k && sizes_spread(&col) <= 1),
                Err(_) => true,
            }
        })
        .count();
    let elapsed = started.elapsed();
    outcome(
        failures == 0 && elapsed < HS_BUDGET,
        format!(
            "Δ+1 fallback: {}/{HS_GRAPHS} random graphs (n ≤ {HS_MAX_ORDER}, p ∈ {{0.1, 0.3, 0.5}}) proper with Δ+1 classes and spread ≤ 1, {:.1}s",
            HS_GRAPHS - failures,
            elapsed.as_secs_f64()
        ),
    )
}

fn determinism(c: &Corpora) -> Outcome {
    let first = sweep(&c.exhaustive, SweepOptions::default());
    let second = sweep(
        &c.exhaustive,
        SweepOptions {
            jobs: Some(2),
            ..SweepOptions::default()
        },
    );
    let same = first.canonical_json() == second.canonical_json();
    outcome(
        same && first.is_clean(),
        format!(
            "determinism n={}: two sweeps of {} graphs {} (solved {}, stalls {})",
            c.orders,
            first.totals.graphs,
            if same { "byte-identical" } else { "differ" },
            first.totals.solved,
            first.totals.stalls
        ),
    )
}

fn main() {
    let corpora = load();
    let criteria: Vec<(u8, Box<dyn Fn() -> Outcome + '_>)> = vec![
        (1, Box::new(|| exhaustive_validation(&corpora))),
        (2, Box::new(|| oracle_agreement(&corpora))),
        (3, Box::new(bipartite_non_monotone)),
        (4, Box::new(|| reduction_contract(&corpora))),
        (5, Box::new(|| lex_ascent(&corpora))),
        (6, Box::new(|| split_formula(&corpora))),
        (7, Box::new(hs_fallback)),
        (8, Box::new(|| determinism(&corpora))),
    ];
    let mut failed = 0;
    for (id, run) in &criteria {
        let o = run();
        println!("[{}] criterion {id}: {}", if o.pass { "PASS" } else { "FAIL" }, o.summary);
        failed += (!o.pass) as usize;
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
