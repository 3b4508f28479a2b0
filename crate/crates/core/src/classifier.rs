//! Predicts the generalized 3-connectivity from the shape of the edge set
//! missing from `K_n`, and sweeps graphs to check the prediction against
//! the exact oracle.

use std::fmt;
use std::time::Instant;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::graph::{profile_deleted_set, ComplementProfile, EdgeSet, Shape, SimpleGraph};
use crate::oracle::{kappa3, verify_packing, MAX_ORACLE_ORDER};

/// Predicted value: exact, or only an upper bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "value")]
pub enum Kappa3Verdict {
    Exact(usize),
    UpperBound(usize),
}

impl Kappa3Verdict {
    /// Whether an exact value is consistent with this verdict.
    pub fn admits(self, value: usize) -> bool {
        match self {
            Kappa3Verdict::Exact(v) => v == value,
            Kappa3Verdict::UpperBound(b) => value <= b,
        }
    }
}

impl fmt::Display for Kappa3Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Kappa3Verdict::Exact(v) => write!(f, "Exact({v})"),
            Kappa3Verdict::UpperBound(b) => write!(f, "UpperBound({b})"),
        }
    }
}

/// Which characterization produced the verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Rule {
    Disconnected,
    SmallOrder,
    #[serde(rename = "Thm1-Complete")]
    Complete,
    #[serde(rename = "Thm1-MinusEdge")]
    MinusEdge,
    #[serde(rename = "Thm2-P4")]
    P4,
    #[serde(rename = "Thm2-P3P2")]
    P3PlusP2,
    #[serde(rename = "Thm2-C3P2")]
    C3PlusP2,
    #[serde(rename = "Thm2-Matching")]
    Matching,
    /// `K_n[M] = P3`: contains `K_n` minus `P3 ∪ P2`.
    #[serde(rename = "Monotone-P3")]
    LoneP3,
    /// `K_n[M] = C3`: contains `K_n` minus `C3 ∪ P2`.
    #[serde(rename = "Monotone-C3")]
    LoneC3,
    #[serde(rename = "Obs1-Or-Thm2-Complement")]
    Bounded,
}

impl Rule {
    pub fn as_str(self) -> &'static str {
        match self {
            Rule::Disconnected => "Disconnected",
            Rule::SmallOrder => "SmallOrder",
            Rule::Complete => "Thm1-Complete",
            Rule::MinusEdge => "Thm1-MinusEdge",
            Rule::P4 => "Thm2-P4",
            Rule::P3PlusP2 => "Thm2-P3P2",
            Rule::C3PlusP2 => "Thm2-C3P2",
            Rule::Matching => "Thm2-Matching",
            Rule::LoneP3 => "Monotone-P3",
            Rule::LoneC3 => "Monotone-C3",
            Rule::Bounded => "Obs1-Or-Thm2-Complement",
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassifierReport {
    pub verdict: Kappa3Verdict,
    pub profile: ComplementProfile,
    pub rule_fired: Rule,
}

/// Reads the verdict off the structure of `M = E(K_n) \ E(G)`; never runs
/// the oracle.
///
/// Exact `n - 2` for at most one missing edge. Exact `n - 3` when `K_n[M]`
/// is `P4`, `P3 ∪ P2`, `C3 ∪ P2`, a matching of two or more edges, or a lone
/// `P3` or `C3` (the last two contain, as graphs, the `P3 ∪ P2` and
/// `C3 ∪ P2` cases and so cannot drop lower, while two missing edges
/// already rule out `n - 2`). Everything else is bounded by `n - 4`.
pub fn classify(g: &SimpleGraph) -> ClassifierReport {
    let n = g.order();
    let profile = profile_deleted_set(&g.deleted_set(), n);
    let (verdict, rule_fired) = if !g.is_connected() {
        (Kappa3Verdict::Exact(0), Rule::Disconnected)
    } else if n < 3 {
        (Kappa3Verdict::Exact(1), Rule::SmallOrder)
    } else if profile.edge_count <= 1 {
        let rule = if profile.edge_count == 0 { Rule::Complete } else { Rule::MinusEdge };
        (Kappa3Verdict::Exact(n - 2), rule)
    } else if let Some(rule) = near_complete_rule(&profile) {
        if rule == Rule::Matching {
            assert!(profile.edge_count <= n / 2, "a matching has at most n/2 edges");
        }
        (Kappa3Verdict::Exact(n - 3), rule)
    } else {
        (Kappa3Verdict::UpperBound(n.saturating_sub(4)), Rule::Bounded)
    };
    ClassifierReport { verdict, profile, rule_fired }
}

fn near_complete_rule(p: &ComplementProfile) -> Option<Rule> {
    use Shape::{Cycle, Path};
    if p.is(&[Path(4)]) {
        Some(Rule::P4)
    } else if p.is(&[Path(3), Path(2)]) {
        Some(Rule::P3PlusP2)
    } else if p.is(&[Cycle(3), Path(2)]) {
        Some(Rule::C3PlusP2)
    } else if p.shapes.len() >= 2 && p.count(Path(2)) == p.shapes.len() {
        Some(Rule::Matching)
    } else if p.is(&[Path(3)]) {
        Some(Rule::LoneP3)
    } else if p.is(&[Cycle(3)]) {
        Some(Rule::LoneC3)
    } else {
        None
    }
}

/// Orders swept exhaustively; larger orders are sampled.
pub const EXHAUSTIVE_MAX_ORDER: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SweepError {
    #[error("n_max must be at least 3, got {0}")]
    OrderTooSmall(usize),
    #[error("n_max {0} exceeds the oracle limit of {MAX_ORACLE_ORDER}")]
    OrderTooLarge(usize),
}

#[derive(Debug, Clone)]
pub struct SweepConfig {
    pub n_max: usize,
    /// Random connected graphs per order above [`EXHAUSTIVE_MAX_ORDER`].
    pub sample_budget: usize,
    pub seed: u64,
    /// Worker threads; `None` uses the rayon default.
    pub jobs: Option<usize>,
}

impl SweepConfig {
    pub fn new(n_max: usize, sample_budget: usize) -> Self {
        Self { n_max, sample_budget, seed: 0, jobs: None }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub graph6: String,
    /// `verdict`, `witness` or `bound`.
    pub kind: &'static str,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct ValidationReport {
    pub n: usize,
    pub graphs_checked: usize,
    pub exact_checked: usize,
    pub bound_checked: usize,
    pub mismatches: Vec<Mismatch>,
    pub wallclock_ms: u64,
    pub max_graph_ms: f64,
}

struct GraphCheck {
    exact: bool,
    mismatches: Vec<Mismatch>,
    elapsed_ms: f64,
}

/// Classifier against oracle on one graph, plus the oracle's own
/// invariants: a valid witness of the reported size, and
/// `1 <= κ₃ <= min(κ, δ, n - 2)` for connected graphs of order 3 or more.
fn check_graph(g: &SimpleGraph) -> GraphCheck {
    let start = Instant::now();
    let report = classify(g);
    let k = kappa3(g).expect("sweep orders are within the oracle limit");
    let mut mismatches = Vec::new();
    let mut flag = |kind, detail: String| mismatches.push(Mismatch { graph6: g.to_graph6(), kind, detail });

    if !report.verdict.admits(k.value) {
        flag("verdict", format!("classifier {} via {}, oracle {}", report.verdict, report.rule_fired, k.value));
    }
    if let (Some(s), Some(w)) = (k.terminals, &k.witness) {
        if let Err(v) = verify_packing(g, &s, w) {
            flag("witness", v.to_string());
        } else if w.len() != k.value {
            flag("witness", format!("witness has {} trees for value {}", w.len(), k.value));
        }
    }
    let n = g.order();
    if n >= 3 && g.is_connected() {
        let cap = g.vertex_connectivity().min(g.min_degree()).min(n - 2);
        if k.value < 1 || k.value > cap {
            flag("bound", format!("value {} outside 1..={cap}", k.value));
        }
    }
    GraphCheck {
        exact: matches!(report.verdict, Kappa3Verdict::Exact(_)),
        mismatches,
        elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
    }
}

/// Random connected graph: alternately `G(n, 1/2)` and `K_n` minus a few
/// random edges, so near-complete shapes show up often.
pub fn random_connected_graph<R: Rng>(n: usize, near_complete: bool, rng: &mut R) -> SimpleGraph {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    loop {
        let g = if near_complete {
            let k = rng.gen_range(0..=n.min(pairs.len()));
            let deleted: EdgeSet = sample(rng, pairs.len(), k).into_iter().map(|i| pairs[i]).collect();
            SimpleGraph::complete_minus(n, &deleted)
        } else {
            SimpleGraph::from_edges(n, pairs.iter().copied().filter(|_| rng.gen_bool(0.5)))
        }
        .expect("order validated by caller");
        if g.is_connected() {
            return g;
        }
    }
}

/// Every connected labeled graph up to order `min(n_max, 6)`, then
/// `sample_budget` random connected graphs for each order `7..=n_max`.
/// Mismatches are reported in graph6 order.
pub fn cross_validate(config: &SweepConfig) -> Result<ValidationReport, SweepError> {
    if config.n_max < 3 {
        return Err(SweepError::OrderTooSmall(config.n_max));
    }
    if config.n_max > MAX_ORACLE_ORDER {
        return Err(SweepError::OrderTooLarge(config.n_max));
    }
    let start = Instant::now();
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(jobs) = config.jobs {
        builder = builder.num_threads(jobs);
    }
    let pool = builder.build().expect("thread pool");

    let mut checks: Vec<GraphCheck> = Vec::new();
    for n in 1..=config.n_max.min(EXHAUSTIVE_MAX_ORDER) {
        let pairs = n * (n - 1) / 2;
        let batch: Vec<GraphCheck> = pool.install(|| {
            (0..1u64 << pairs)
                .into_par_iter()
                .filter_map(|mask| {
                    let g = SimpleGraph::from_pair_mask(n, mask).expect("order in range");
                    g.is_connected().then(|| check_graph(&g))
                })
                .collect()
        });
        checks.extend(batch);
    }
    for n in EXHAUSTIVE_MAX_ORDER + 1..=config.n_max {
        let mut rng = ChaCha8Rng::seed_from_u64(config.seed ^ (n as u64).rotate_left(32));
        let graphs: Vec<SimpleGraph> = (0..config.sample_budget)
            .map(|i| random_connected_graph(n, i % 2 == 1, &mut rng))
            .collect();
        let batch: Vec<GraphCheck> = pool.install(|| graphs.par_iter().map(check_graph).collect());
        checks.extend(batch);
    }

    let exact_checked = checks.iter().filter(|c| c.exact).count();
    let mut mismatches: Vec<Mismatch> = checks.iter().flat_map(|c| c.mismatches.iter().cloned()).collect();
    mismatches.sort_by(|a, b| (a.graph6.len(), &a.graph6).cmp(&(b.graph6.len(), &b.graph6)));
    Ok(ValidationReport {
        n: config.n_max,
        graphs_checked: checks.len(),
        exact_checked,
        bound_checked: checks.len() - exact_checked,
        mismatches,
        wallclock_ms: start.elapsed().as_millis() as u64,
        max_graph_ms: checks.iter().map(|c| c.elapsed_ms).fold(0.0, f64::max),
    })
}
