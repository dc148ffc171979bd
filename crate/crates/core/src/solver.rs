//! End-to-end pipelines: equitable `Δ`-colourings in the degree window,
//! equitable `k`-colourings above the achieved class count, and the
//! `k ≥ Δ+1` fallback.

use crate::coloring::{verify, Coloring, Profile};
use crate::graph::{to_graph6, EdgeListJson, Graph, WindowStatus};
use crate::hs::{hs_equitable, HsError};
use crate::reduce::{balance, split_to, ReduceError, ReductionStep};
use crate::search::{audit, greedy_coloring, run_local_search, trivial_coloring, AuditReport, SearchError, Trace, DEFAULT_RADIUS};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Where the local search starts.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Start {
    /// Every vertex in its own class.
    #[default]
    Trivial,
    /// First-fit into classes of size at most three.
    Greedy,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolveOptions {
    pub radius: usize,
    pub start: Start,
}

impl Default for SolveOptions {
    fn default() -> Self {
        Self {
            radius: DEFAULT_RADIUS,
            start: Start::Trivial,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProfileHistory {
    pub after_search: Profile,
    pub after_split: Profile,
    pub after_balance: Profile,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    /// Local search, split, balance.
    Reduction,
    /// Repair-based construction for `k ≥ Δ+1`.
    Fallback,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveResult {
    pub coloring: Coloring,
    pub k: usize,
    pub method: Method,
    /// Class count of the move-closed colouring, when the local search ran.
    pub sigma: Option<usize>,
    pub profile_history: Option<ProfileHistory>,
    pub trace: Option<Trace>,
    pub reduction: Vec<ReductionStep>,
}

/// A move-closed colouring with more than `Δ` classes on an admissible
/// graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StallCertificate {
    pub graph6: String,
    pub graph: EdgeListJson,
    pub classes: Vec<Vec<usize>>,
    pub profile: Profile,
    pub max_degree: usize,
    pub radius: usize,
    pub audit: AuditReport,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error("graph is outside the degree window (|G| = {}, Δ = {})", .0.order, .0.max_degree)]
    OutOfWindow(WindowStatus),
    #[error("component {0:?} is a complete graph on Δ+1 vertices")]
    ForbiddenComponent(Vec<usize>),
    #[error("local search stalled at profile {} with Δ = {}", .0.profile, .0.max_degree)]
    Stall(Box<StallCertificate>),
    #[error("k = {k} is below the achieved class count {sigma}; this is not a proof that no equitable {k}-colouring exists")]
    Unsupported { k: usize, sigma: usize },
    #[error("k = {k} must lie in 1..={order}")]
    InvalidK { k: usize, order: usize },
    #[error("internal error: {0}")]
    Internal(String),
}

impl From<SearchError> for SolveError {
    fn from(e: SearchError) -> Self {
        SolveError::Internal(e.to_string())
    }
}

impl From<ReduceError> for SolveError {
    fn from(e: ReduceError) -> Self {
        SolveError::Internal(e.to_string())
    }
}

impl From<HsError> for SolveError {
    fn from(e: HsError) -> Self {
        SolveError::Internal(e.to_string())
    }
}

/// Equitable `Δ`-colouring of a graph in the degree window with no
/// `K_{Δ+1}` component.
pub fn equitable_delta(g: &Graph) -> Result<SolveResult, SolveError> {
    equitable_delta_with(g, SolveOptions::default())
}

pub fn equitable_delta_with(g: &Graph, opts: SolveOptions) -> Result<SolveResult, SolveError> {
    let window = admissible(g)?;
    let (closed, trace) = closed_coloring(g, opts)?;
    let sigma = check_stall(g, &closed, opts.radius, window.max_degree)?;
    reduce_to(g, closed, trace, sigma, window.max_degree)
}

/// Equitable `k`-colouring. For `k ≤ Δ` this needs the degree window and
/// `k` at least the achieved class count; `k > Δ` always succeeds.
pub fn equitable_k(g: &Graph, k: usize) -> Result<SolveResult, SolveError> {
    equitable_k_with(g, k, SolveOptions::default())
}

pub fn equitable_k_with(g: &Graph, k: usize, opts: SolveOptions) -> Result<SolveResult, SolveError> {
    let n = g.order();
    if k == 0 || k > n {
        return Err(SolveError::InvalidK { k, order: n });
    }
    let max_degree = g.max_degree();
    if k > max_degree {
        let coloring = hs_equitable(g, k)?;
        return Ok(SolveResult {
            coloring,
            k,
            method: Method::Fallback,
            sigma: None,
            profile_history: None,
            trace: None,
            reduction: Vec::new(),
        });
    }
    let (closed, trace) = closed_coloring(g, opts)?;
    let window = g.window_check();
    let sigma = if window.admissible() {
        check_stall(g, &closed, opts.radius, max_degree)?
    } else {
        closed.len()
    };
    if k < sigma {
        return Err(SolveError::Unsupported { k, sigma });
    }
    admissible(g)?;
    reduce_to(g, closed, trace, sigma, k)
}

fn admissible(g: &Graph) -> Result<WindowStatus, SolveError> {
    let window = g.window_check();
    if !window.in_window {
        return Err(SolveError::OutOfWindow(window));
    }
    if let Some(block) = window.forbidden_component.clone() {
        return Err(SolveError::ForbiddenComponent(block));
    }
    Ok(window)
}

fn closed_coloring(g: &Graph, opts: SolveOptions) -> Result<(Coloring, Trace), SolveError> {
    let start = match opts.start {
        Start::Trivial => trivial_coloring(g),
        Start::Greedy => greedy_coloring(g),
    };
    Ok(run_local_search(g, &start, opts.radius)?)
}

fn check_stall(g: &Graph, closed: &Coloring, radius: usize, max_degree: usize) -> Result<usize, SolveError> {
    let profile = closed.profile().map_err(|e| SolveError::Internal(e.to_string()))?;
    if profile.class_count() <= max_degree {
        return Ok(profile.class_count());
    }
    Err(SolveError::Stall(Box::new(StallCertificate {
        graph6: to_graph6(g),
        graph: EdgeListJson::from(g),
        classes: closed.classes().to_vec(),
        profile,
        max_degree,
        radius,
        audit: audit(g, closed),
    })))
}

fn reduce_to(g: &Graph, closed: Coloring, trace: Trace, sigma: usize, k: usize) -> Result<SolveResult, SolveError> {
    let split = split_to(g, &closed, k)?;
    let (coloring, reduction) = balance(g, &split)?;
    let report = verify(g, &coloring, Some(k));
    if !report.ok() {
        return Err(SolveError::Internal(format!("output failed verification: {:?}", report.violations)));
    }
    let profile = |c: &Coloring| c.profile().map_err(|e| SolveError::Internal(e.to_string()));
    let profile_history = ProfileHistory {
        after_search: profile(&closed)?,
        after_split: profile(&split)?,
        after_balance: profile(&coloring)?,
    };
    Ok(SolveResult {
        coloring,
        k,
        method: Method::Reduction,
        sigma: Some(sigma),
        profile_history: Some(profile_history),
        trace: Some(trace),
        reduction,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Ok,
    OutOfWindow,
    ForbiddenComponent,
    Stall,
    Unsupported,
    /// A step that cannot fail did; the message says which.
    Internal,
}

/// Machine-readable outcome of a solve.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolveReport {
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub classes: Option<Vec<Vec<usize>>>,
    pub sigma: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub profiles: Option<ProfileHistory>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub method: Option<Method>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub message: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub window: Option<WindowStatus>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub forbidden_component: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trace: Option<Trace>,
}

impl SolveReport {
    pub fn new(outcome: &Result<SolveResult, SolveError>, include_trace: bool) -> Self {
        let mut report = SolveReport {
            status: Status::Ok,
            k: None,
            classes: None,
            sigma: None,
            profiles: None,
            method: None,
            message: None,
            window: None,
            forbidden_component: None,
            trace: None,
        };
        match outcome {
            Ok(res) => {
                report.k = Some(res.k);
                report.classes = Some(res.coloring.classes().to_vec());
                report.sigma = res.sigma;
                report.profiles = res.profile_history;
                report.method = Some(res.method);
                if include_trace {
                    report.trace = res.trace.clone();
                }
            }
            Err(e) => {
                report.message = Some(e.to_string());
                report.status = match e {
                    SolveError::OutOfWindow(w) => {
                        report.window = Some(w.clone());
                        Status::OutOfWindow
                    }
                    SolveError::ForbiddenComponent(block) => {
                        report.forbidden_component = Some(block.clone());
                        Status::ForbiddenComponent
                    }
                    SolveError::Stall(cert) => {
                        report.sigma = Some(cert.profile.class_count());
                        Status::Stall
                    }
                    SolveError::Unsupported { sigma, .. } => {
                        report.sigma = Some(*sigma);
                        Status::Unsupported
                    }
                    SolveError::InvalidK { .. } => Status::Unsupported,
                    SolveError::Internal(_) => Status::Internal,
                };
            }
        }
        report
    }
}
