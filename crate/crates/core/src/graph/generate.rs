//! Named graph families and seeded random graphs.

use super::Graph;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GenerateError {
    #[error("invalid generator parameters: {0}")]
    InvalidParameter(String),
    #[error("no in-window sample after {0} tries")]
    RetryCapExhausted(usize),
    #[error("unrecognised generator spec `{0}`")]
    UnknownSpec(String),
}

/// What to generate. The textual form (used by the CLI) is
/// `name:arg:arg`, e.g. `cycle:5`, `kab:3:3`, `gnp:10:0.4`,
/// `window-gnp:12:0.3:1000`.
#[derive(Debug, Clone, PartialEq)]
pub enum GeneratorSpec {
    Empty(usize),
    Complete(usize),
    Cycle(usize),
    Path(usize),
    CompleteBipartite(usize, usize),
    Hypercube(u32),
    Gnp { n: usize, p: f64 },
    /// Erdős–Rényi resampled until the degree window holds with no
    /// `K_{Δ+1}` component.
    WindowedGnp { n: usize, p: f64, max_tries: usize },
}

/// Deterministic for a fixed `(spec, seed)`.
pub fn generate(spec: &GeneratorSpec, seed: u64) -> Result<Graph, GenerateError> {
    let clique = |n: usize| Graph::from_edges(n, (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))));
    let g = match *spec {
        GeneratorSpec::Empty(n) => Ok(Graph::empty(n)),
        GeneratorSpec::Complete(n) => clique(n),
        GeneratorSpec::Cycle(n) => {
            if n < 3 {
                return Err(GenerateError::InvalidParameter(format!("cycle needs n >= 3, got {n}")));
            }
            Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n)))
        }
        GeneratorSpec::Path(n) => Graph::from_edges(n, (1..n).map(|i| (i - 1, i))),
        GeneratorSpec::CompleteBipartite(a, b) => {
            Graph::from_edges(a + b, (0..a).flat_map(|x| (a..a + b).map(move |y| (x, y))))
        }
        GeneratorSpec::Hypercube(d) => {
            if d > 16 {
                return Err(GenerateError::InvalidParameter(format!("hypercube dimension {d} too large")));
            }
            let n = 1usize << d;
            Graph::from_edges(
                n,
                (0..n).flat_map(|v| (0..d).map(move |b| (v, v ^ (1 << b))).filter(|(u, w)| u < w)),
            )
        }
        GeneratorSpec::Gnp { n, p } => {
            check_probability(p)?;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            Ok(gnp(n, p, &mut rng))
        }
        GeneratorSpec::WindowedGnp { n, p, max_tries } => {
            check_probability(p)?;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..max_tries {
                let g = gnp(n, p, &mut rng);
                if g.window_check().admissible() {
                    return Ok(g);
                }
            }
            return Err(GenerateError::RetryCapExhausted(max_tries));
        }
    };
    Ok(g.expect("generators stay in range"))
}

fn check_probability(p: f64) -> Result<(), GenerateError> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(GenerateError::InvalidParameter(format!("edge probability {p} outside [0, 1]")))
    }
}

fn gnp<R: Rng>(n: usize, p: f64, rng: &mut R) -> Graph {
    let mut g = Graph::empty(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.random_bool(p) {
                g.add_edge(u, v).expect("in range");
            }
        }
    }
    g
}

impl FromStr for GeneratorSpec {
    type Err = GenerateError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let unknown = || GenerateError::UnknownSpec(s.to_string());
        let parts: Vec<&str> = s.split(':').collect();
        let int = |i: usize| parts.get(i).and_then(|x| x.parse::<usize>().ok()).ok_or_else(unknown);
        let float = |i: usize| parts.get(i).and_then(|x| x.parse::<f64>().ok()).ok_or_else(unknown);
        let arity = |k: usize| if parts.len() == k + 1 { Ok(()) } else { Err(unknown()) };
        match parts[0] {
            "empty" => arity(1).and(Ok(Self::Empty(int(1)?))),
            "complete" | "k" => arity(1).and(Ok(Self::Complete(int(1)?))),
            "cycle" | "c" => arity(1).and(Ok(Self::Cycle(int(1)?))),
            "path" | "p" => arity(1).and(Ok(Self::Path(int(1)?))),
            "kab" | "bipartite" => arity(2).and(Ok(Self::CompleteBipartite(int(1)?, int(2)?))),
            "hypercube" | "q" => arity(1).and(Ok(Self::Hypercube(int(1)? as u32))),
            "gnp" => arity(2).and(Ok(Self::Gnp { n: int(1)?, p: float(2)? })),
            "window-gnp" => {
                let max_tries = if parts.len() == 4 { int(3)? } else { arity(2).map(|_| 10_000)? };
                Ok(Self::WindowedGnp { n: int(1)?, p: float(2)?, max_tries })
            }
            _ => Err(unknown()),
        }
    }
}

impl fmt::Display for GeneratorSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Empty(n) => write!(f, "empty:{n}"),
            Self::Complete(n) => write!(f, "complete:{n}"),
            Self::Cycle(n) => write!(f, "cycle:{n}"),
            Self::Path(n) => write!(f, "path:{n}"),
            Self::CompleteBipartite(a, b) => write!(f, "kab:{a}:{b}"),
            Self::Hypercube(d) => write!(f, "hypercube:{d}"),
            Self::Gnp { n, p } => write!(f, "gnp:{n}:{p}"),
            Self::WindowedGnp { n, p, max_tries } => write!(f, "window-gnp:{n}:{p}:{max_tries}"),
        }
    }
}
