//! Exact max-flow/min-cut on information flow graphs, the worst case over
//! failure patterns and collectors, and a storage-threshold oracle that is
//! independent of the closed forms.
//!
//! Capacities are rationals; before running Dinic's algorithm they are
//! multiplied by the lcm of their denominators, and every infinite edge gets
//! the sentinel `Σ finite + 1`, which can never sit in a minimum cut.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::flowgraph::{CapacityKind, Edge, FailurePattern, FlowGraph, FlowGraphError, GraphMode};
use crate::params::SystemParams;
use crate::rational::{lcm_denominators, ExtendedRational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MincutError {
    #[error("graph has no data collector attached")]
    NoCollector,
    #[error("{graphs} graphs to evaluate exceeds the budget of {budget}")]
    BudgetExceeded { graphs: u128, budget: u128 },
    #[error("scaled capacities overflow 128-bit integers")]
    Overflow,
    #[error("alpha must be positive and finite, beta non-negative")]
    BadWeights,
    #[error(transparent)]
    Graph(#[from] FlowGraphError),
}

/// Dinic's blocking-flow algorithm on integer capacities.
#[derive(Clone, Debug, Default)]
pub struct Dinic {
    adj: Vec<Vec<u32>>,
    to: Vec<u32>,
    cap: Vec<i128>,
    initial: Vec<i128>,
    level: Vec<i32>,
    iter: Vec<usize>,
}

impl Dinic {
    pub fn new(vertices: usize) -> Self {
        Self {
            adj: vec![Vec::new(); vertices],
            ..Default::default()
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    /// Adds `u → v` and its residual twin; returns the forward edge id.
    pub fn add_edge(&mut self, u: usize, v: usize, c: i128) -> usize {
        let id = self.to.len();
        self.adj[u].push(id as u32);
        self.to.push(v as u32);
        self.cap.push(c);
        self.initial.push(c);
        self.adj[v].push(id as u32 + 1);
        self.to.push(u as u32);
        self.cap.push(0);
        self.initial.push(0);
        id
    }

    pub fn set_capacity(&mut self, edge: usize, c: i128) {
        self.initial[edge] = c;
        self.cap[edge] = c;
    }

    /// Clears all flow.
    pub fn reset(&mut self) {
        self.cap.copy_from_slice(&self.initial);
    }

    pub fn flow_on(&self, edge: usize) -> i128 {
        self.initial[edge] - self.cap[edge]
    }

    fn bfs(&mut self, s: usize, t: usize) -> bool {
        self.level.clear();
        self.level.resize(self.adj.len(), -1);
        let mut queue = std::collections::VecDeque::new();
        self.level[s] = 0;
        queue.push_back(s);
        while let Some(u) = queue.pop_front() {
            for &e in &self.adj[u] {
                let v = self.to[e as usize] as usize;
                if self.cap[e as usize] > 0 && self.level[v] < 0 {
                    self.level[v] = self.level[u] + 1;
                    queue.push_back(v);
                }
            }
        }
        self.level[t] >= 0
    }

    fn dfs(&mut self, u: usize, t: usize, pushed: i128) -> i128 {
        if u == t {
            return pushed;
        }
        while self.iter[u] < self.adj[u].len() {
            let e = self.adj[u][self.iter[u]] as usize;
            let v = self.to[e] as usize;
            if self.cap[e] > 0 && self.level[v] == self.level[u] + 1 {
                let d = self.dfs(v, t, pushed.min(self.cap[e]));
                if d > 0 {
                    self.cap[e] -= d;
                    self.cap[e ^ 1] += d;
                    return d;
                }
            }
            self.iter[u] += 1;
        }
        0
    }

    /// Maximum flow from `s` to `t`, stopping once it reaches `limit`.
    /// Below the limit the returned value is exact.
    pub fn max_flow(&mut self, s: usize, t: usize, limit: i128) -> i128 {
        let mut flow = 0;
        while flow < limit && self.bfs(s, t) {
            self.iter.clear();
            self.iter.resize(self.adj.len(), 0);
            loop {
                let d = self.dfs(s, t, limit - flow);
                if d == 0 {
                    break;
                }
                flow += d;
                if flow >= limit {
                    break;
                }
            }
        }
        flow
    }

    /// Vertices reachable from `s` in the residual graph.
    pub fn source_side(&self, s: usize) -> Vec<bool> {
        let mut seen = vec![false; self.adj.len()];
        let mut stack = vec![s];
        seen[s] = true;
        while let Some(u) = stack.pop() {
            for &e in &self.adj[u] {
                let v = self.to[e as usize] as usize;
                if self.cap[e as usize] > 0 && !seen[v] {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
        seen
    }
}

/// Capacities of each [`CapacityKind`] scaled to integers by `scale`.
#[derive(Clone, Debug)]
struct IntWeights {
    scale: BigInt,
    alpha: i128,
    alpha1: i128,
    loss: i128,
    beta: Option<i128>,
}

impl IntWeights {
    /// `beta = None` means an unbounded broadcast.
    fn new(
        alpha: &BigRational,
        alpha1: &BigRational,
        beta: Option<&BigRational>,
        extra: &[&BigRational],
    ) -> Result<Self, MincutError> {
        let loss = alpha - alpha1;
        let mut all = vec![alpha, alpha1, &loss];
        all.extend(beta);
        all.extend_from_slice(extra);
        let scale = lcm_denominators(all);
        let to_int = |v: &BigRational| -> Result<i128, MincutError> {
            (v * BigRational::from_integer(scale.clone()))
                .to_integer()
                .to_i128()
                .ok_or(MincutError::Overflow)
        };
        Ok(Self {
            alpha: to_int(alpha)?,
            alpha1: to_int(alpha1)?,
            loss: to_int(&loss)?,
            beta: beta.map(to_int).transpose()?,
            scale,
        })
    }

    fn finite(&self, kind: CapacityKind) -> Option<i128> {
        match kind {
            CapacityKind::Alpha => Some(self.alpha),
            CapacityKind::Alpha1 => Some(self.alpha1),
            CapacityKind::AlphaLoss => Some(self.loss),
            CapacityKind::Beta => self.beta,
            CapacityKind::Infinite => None,
        }
    }

    fn scaled(&self, v: &BigRational) -> Result<i128, MincutError> {
        (v * BigRational::from_integer(self.scale.clone()))
            .to_integer()
            .to_i128()
            .ok_or(MincutError::Overflow)
    }
}

/// Integer network mirroring a graph's edges (ids `2·i` for edge `i`).
fn build_network(
    edges: &[Edge],
    vertices: usize,
    w: &IntWeights,
) -> Result<(Dinic, i128), MincutError> {
    let mut total: i128 = 0;
    for e in edges {
        if let Some(c) = w.finite(e.kind) {
            total = total.checked_add(c).ok_or(MincutError::Overflow)?;
        }
    }
    let sentinel = total.checked_add(1).ok_or(MincutError::Overflow)?;
    let mut net = Dinic::new(vertices);
    for e in edges {
        net.add_edge(e.from, e.to, w.finite(e.kind).unwrap_or(sentinel));
    }
    Ok((net, sentinel))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Side {
    /// Source side `U`.
    U,
    /// Collector side `Ū`.
    UBar,
}

/// A minimum cut with its witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CutReport {
    pub value: ExtendedRational,
    /// Indices into the graph's edge list.
    pub cut_edges: Vec<usize>,
    pub sides: Vec<Side>,
}

#[derive(Serialize)]
struct CutReportJson {
    value: String,
    cut_edges: Vec<String>,
}

impl CutReport {
    /// `{"value": "...", "cut_edges": ["from → to cap=...", ...]}`.
    pub fn to_json(&self, g: &FlowGraph) -> String {
        let v = g.vertices();
        let doc = CutReportJson {
            value: self.value.to_string(),
            cut_edges: self
                .cut_edges
                .iter()
                .map(|&i| {
                    let e = &g.edges()[i];
                    format!("{} → {} cap={}", v[e.from], v[e.to], g.capacity(e))
                })
                .collect(),
        };
        serde_json::to_string(&doc).expect("plain strings serialize")
    }

    /// Coefficients `(a, b)` of the cut value `a·α + b·β`.
    pub fn line(&self, g: &FlowGraph) -> (ExtendedRational, usize) {
        let kinds: Vec<CapacityKind> = self.cut_edges.iter().map(|&i| g.edges()[i].kind).collect();
        cut_line(&kinds, g.params())
    }
}

fn cut_line(kinds: &[CapacityKind], params: &SystemParams) -> (ExtendedRational, usize) {
    let mut a = ExtendedRational::zero();
    let mut b = 0;
    for kind in kinds {
        match kind {
            CapacityKind::Alpha => a = a + ExtendedRational::one(),
            CapacityKind::Alpha1 => a = a + params.rho().clone(),
            CapacityKind::AlphaLoss => a = a + params.one_minus_rho(),
            CapacityKind::Beta => b += 1,
            CapacityKind::Infinite => {}
        }
    }
    (a, b)
}

fn collector_reachable(g: &FlowGraph, dc: usize) -> bool {
    let mut out: Vec<Vec<usize>> = vec![Vec::new(); g.vertex_count()];
    for e in g.edges() {
        out[e.from].push(e.to);
    }
    let mut seen = vec![false; g.vertex_count()];
    let mut stack = vec![g.source()];
    seen[g.source()] = true;
    while let Some(u) = stack.pop() {
        for &v in &out[u] {
            if !seen[v] {
                seen[v] = true;
                stack.push(v);
            }
        }
    }
    seen[dc]
}

/// Exact min-cut between the source and the attached collector at the
/// graph's current weights.
pub fn max_flow(g: &FlowGraph) -> Result<CutReport, MincutError> {
    let dc = g.collector().ok_or(MincutError::NoCollector)?;
    if !collector_reachable(g, dc) {
        return Ok(CutReport {
            value: ExtendedRational::zero(),
            cut_edges: Vec::new(),
            sides: vec![Side::U; g.vertex_count()],
        });
    }
    let w = g.weights();
    let (alpha, alpha1, beta) = match (
        w.alpha.as_finite(),
        w.alpha1.as_finite(),
        w.beta.as_finite(),
    ) {
        (Some(a), Some(a1), Some(b)) => (a, a1, b),
        _ => return Err(MincutError::BadWeights),
    };
    let iw = IntWeights::new(alpha, alpha1, Some(beta), &[])?;
    let (mut net, sentinel) = build_network(g.edges(), g.vertex_count(), &iw)?;
    let flow = net.max_flow(g.source(), dc, i128::MAX);
    let reach = net.source_side(g.source());
    let cut_edges: Vec<usize> = g
        .edges()
        .iter()
        .enumerate()
        .filter(|(_, e)| reach[e.from] && !reach[e.to])
        .map(|(i, _)| i)
        .collect();
    let value = if flow >= sentinel {
        ExtendedRational::Infinite
    } else {
        ExtendedRational::from(BigRational::new(BigInt::from(flow), iw.scale.clone()))
    };
    Ok(CutReport {
        value,
        cut_edges,
        sides: reach
            .iter()
            .map(|&r| if r { Side::U } else { Side::UBar })
            .collect(),
    })
}

/// Limits for the exhaustive searches.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleOptions {
    /// Longest failure pattern; `None` means ⌈k/r⌉.
    pub max_rounds: Option<usize>,
    /// Maximum number of (pattern, collector) graphs per evaluation.
    pub budget: u128,
}

impl Default for OracleOptions {
    fn default() -> Self {
        Self {
            max_rounds: None,
            budget: 5_000_000,
        }
    }
}

impl OracleOptions {
    fn rounds(&self, params: &SystemParams) -> usize {
        self.max_rounds.unwrap_or_else(|| params.rounds())
    }
}

/// Failure patterns up to node relabelling. Touched nodes are always the
/// prefix `0..t`: a round picks some touched nodes plus the next untouched
/// ones.
fn canonical_patterns(n: usize, r: usize, max_rounds: usize) -> Vec<(FailurePattern, usize)> {
    fn rec(
        n: usize,
        r: usize,
        left: usize,
        touched: usize,
        cur: &mut Vec<Vec<usize>>,
        out: &mut Vec<(FailurePattern, usize)>,
    ) {
        out.push((FailurePattern::new(cur.clone()), touched));
        if left == 0 {
            return;
        }
        for old in r.saturating_sub(n - touched)..=r.min(touched) {
            let fresh = r - old;
            for subset in combinations(touched, old) {
                let mut round = subset;
                round.extend(touched..touched + fresh);
                cur.push(round);
                rec(n, r, left - 1, touched + fresh, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(n, r, max_rounds, 0, &mut Vec::new(), &mut out);
    out
}

/// Collectors up to relabelling of untouched nodes.
fn canonical_collectors(n: usize, k: usize, touched: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for old in k.saturating_sub(n - touched)..=k.min(touched) {
        for mut subset in combinations(touched, old) {
            subset.extend(touched..touched + (k - old));
            out.push(subset);
        }
    }
    out
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// All (pattern, collector) graphs the searches evaluate.
struct Search {
    params: SystemParams,
    patterns: Vec<(FailurePattern, Vec<Vec<usize>>)>,
}

impl Search {
    fn new(params: &SystemParams, opts: &OracleOptions) -> Result<Self, MincutError> {
        let (n, k, r) = (params.n(), params.k(), params.r());
        let patterns: Vec<_> = canonical_patterns(n, r, opts.rounds(params))
            .into_iter()
            .map(|(p, t)| (p, canonical_collectors(n, k, t)))
            .collect();
        let graphs: u128 = patterns.iter().map(|(_, d)| d.len() as u128).sum();
        if graphs > opts.budget {
            return Err(MincutError::BudgetExceeded {
                graphs,
                budget: opts.budget,
            });
        }
        Ok(Self {
            params: params.clone(),
            patterns,
        })
    }

    fn graph_count(&self) -> usize {
        self.patterns.iter().map(|(_, d)| d.len()).sum()
    }

    /// Compact topology of a pattern, a collector vertex and one
    /// zero-capacity edge from every node's active output to it.
    fn network(&self, pattern: &FailurePattern, w: &IntWeights) -> Result<PatternNet, MincutError> {
        let unit = ExtendedRational::one();
        let mut g =
            FlowGraph::build_initial_with_mode(&self.params, unit.clone(), GraphMode::Compact)?;
        for failed in &pattern.rounds {
            g.apply_repair_round(failed, ExtendedRational::zero())?;
        }
        let t = g.vertex_count();
        let (mut net, sentinel) = build_network(g.edges(), t + 1, w)?;
        let dc_edges: Vec<usize> = (0..self.params.n())
            .map(|j| net.add_edge(g.active_out(j), t, 0))
            .collect();
        let kinds = g.edges().iter().map(|e| e.kind).collect();
        Ok(PatternNet {
            net,
            dc_edges,
            kinds,
            sentinel,
            collector: t,
        })
    }
}

/// Result of evaluating one (pattern, collector) graph.
#[derive(Clone, Debug)]
struct Evaluated {
    index: usize,
    flow: i128,
    line: (ExtendedRational, usize),
}

/// Integer network of one pattern with switchable collector edges.
struct PatternNet {
    net: Dinic,
    dc_edges: Vec<usize>,
    kinds: Vec<CapacityKind>,
    sentinel: i128,
    collector: usize,
}

impl PatternNet {
    /// Flow to the collector reading `dc`, capped at `limit`; below the cap
    /// also the witness cut line.
    fn run(
        &mut self,
        dc: &[usize],
        limit: i128,
        params: &SystemParams,
    ) -> (i128, Option<(ExtendedRational, usize)>) {
        for &e in &self.dc_edges {
            self.net.set_capacity(e, 0);
        }
        for &j in dc {
            self.net.set_capacity(self.dc_edges[j], self.sentinel);
        }
        self.net.reset();
        let flow = self.net.max_flow(0, self.collector, limit);
        if flow >= limit {
            return (flow, None);
        }
        let reach = self.net.source_side(0);
        let to = &self.net.to;
        let cut: Vec<CapacityKind> = self
            .kinds
            .iter()
            .enumerate()
            .filter(|(i, _)| reach[to[2 * i + 1] as usize] && !reach[to[2 * i] as usize])
            .map(|(_, k)| *k)
            .collect();
        (flow, Some(cut_line(&cut, params)))
    }
}

/// Minimum cut over every failure pattern and collector.
#[derive(Clone, Debug)]
pub struct WorstCaseReport {
    pub value: ExtendedRational,
    pub pattern: FailurePattern,
    pub collector: Vec<usize>,
    /// `(a, b)` with value `a·α + b·β`.
    pub line: (ExtendedRational, usize),
    /// Min-cut of the canonical worst-case graph.
    pub canonical: ExtendedRational,
    pub graphs_evaluated: usize,
    /// The minimising pattern fails some node twice.
    pub beyond_proof: bool,
    pub outside_proof_regime: bool,
}

/// Flow, pattern index, collector index and cut line of one graph.
type Candidate = (i128, usize, usize, (ExtendedRational, usize));

fn check_weights(alpha: &ExtendedRational, beta: &ExtendedRational) -> Result<(), MincutError> {
    if !alpha.is_finite() || alpha.is_negative() || alpha.is_zero() || beta.is_negative() {
        return Err(MincutError::BadWeights);
    }
    Ok(())
}

pub fn worst_case_mincut(
    params: &SystemParams,
    alpha: &ExtendedRational,
    beta: &ExtendedRational,
    opts: &OracleOptions,
) -> Result<WorstCaseReport, MincutError> {
    check_weights(alpha, beta)?;
    let search = Search::new(params, opts)?;
    let a = alpha.as_finite().expect("checked");
    let a1 = params.alpha1(alpha).into_finite().expect("finite");
    let w = IntWeights::new(a, &a1, beta.as_finite(), &[])?;

    let per_pattern: Vec<Result<Option<Candidate>, MincutError>> = search
        .patterns
        .par_iter()
        .enumerate()
        .map(|(pi, (pattern, collectors))| {
            let mut pn = search.network(pattern, &w)?;
            let mut best: Option<Candidate> = None;
            for (ci, dc) in collectors.iter().enumerate() {
                let (flow, line) = pn.run(dc, i128::MAX, params);
                if best.as_ref().is_none_or(|b| flow < b.0) {
                    best = Some((flow, pi, ci, line.expect("no early stop")));
                }
            }
            Ok(best)
        })
        .collect();
    let mut best: Option<(i128, usize, usize, (ExtendedRational, usize))> = None;
    for r in per_pattern {
        if let Some(cand) = r? {
            if best.as_ref().is_none_or(|b| cand.0 < b.0) {
                best = Some(cand);
            }
        }
    }
    let (flow, pi, ci, line) = best.expect("the empty pattern is always present");
    let (pattern, collectors) = &search.patterns[pi];

    let canonical_graph =
        FlowGraph::canonical_worst_case(params, alpha.clone(), beta.clone(), GraphMode::Compact)?;
    let canonical = max_flow(&canonical_graph)?.value;
    Ok(WorstCaseReport {
        value: ExtendedRational::from(BigRational::new(BigInt::from(flow), w.scale.clone())),
        beyond_proof: pattern.has_repeated_failure(),
        pattern: pattern.clone(),
        collector: collectors[ci].clone(),
        line,
        canonical,
        graphs_evaluated: search.graph_count(),
        outside_proof_regime: params.outside_proof_regime(),
    })
}

/// Outcome of the threshold search.
#[derive(Clone, Debug)]
pub struct OracleReport {
    pub alpha_star: ExtendedRational,
    /// Graph whose cut line fixed the final value, if any.
    pub binding_pattern: Option<FailurePattern>,
    pub binding_collector: Option<Vec<usize>>,
    pub iterations: usize,
    pub graphs_per_iteration: usize,
    pub beyond_proof: bool,
    pub outside_proof_regime: bool,
}

/// Minimal α whose worst-case cut reaches the file size at bandwidth γ.
///
/// Every graph's cut is a concave piecewise-linear function of α, the
/// minimum of its cut lines `a·α + b·β`. Starting from `α = M/k` (the
/// failure-free collector forces `kα ≥ M`), each pass finds the graphs still
/// short of `M` and jumps to the largest root `(M − bβ)/a` of their witness
/// lines. Each jump is a lower bound on the threshold and the line set is
/// finite, so the loop ends exactly on the threshold.
pub fn oracle_alpha_star(
    params: &SystemParams,
    gamma: &ExtendedRational,
    opts: &OracleOptions,
) -> Result<OracleReport, MincutError> {
    if gamma.is_negative() {
        return Err(MincutError::BadWeights);
    }
    let search = Search::new(params, opts)?;
    let m = params.file_size().as_finite().expect("validated").clone();
    let beta_ext = params.beta_for(gamma);
    let beta = beta_ext.as_finite().cloned();
    let mut alpha = &m / BigRational::from_integer(BigInt::from(params.k()));
    let mut binding: Option<(usize, usize)> = None;
    let mut iterations = 0;

    loop {
        iterations += 1;
        let a1 = params
            .alpha1(&ExtendedRational::from(alpha.clone()))
            .into_finite()
            .expect("finite");
        let w = IntWeights::new(&alpha, &a1, beta.as_ref(), &[&m])?;
        let target = w.scaled(&m)?;
        let evaluated: Vec<Result<Vec<Evaluated>, MincutError>> = search
            .patterns
            .par_iter()
            .enumerate()
            .map(|(pi, (pattern, collectors))| {
                let mut pn = search.network(pattern, &w)?;
                let mut short = Vec::new();
                for (ci, dc) in collectors.iter().enumerate() {
                    let (flow, line) = pn.run(dc, target, params);
                    if let Some(line) = line {
                        short.push(Evaluated {
                            index: pi << 32 | ci,
                            flow,
                            line,
                        });
                    }
                }
                Ok(short)
            })
            .collect();

        let mut next: Option<(ExtendedRational, usize)> = None;
        for batch in evaluated {
            for ev in batch? {
                debug_assert!(ev.flow < target);
                let (a, b) = &ev.line;
                let root = if a.is_zero() {
                    ExtendedRational::Infinite
                } else {
                    let bb = match &beta {
                        Some(beta) => beta * BigRational::from_integer(BigInt::from(*b)),
                        None => unreachable!("unbounded broadcast edges never sit in a finite cut"),
                    };
                    ExtendedRational::from(&m - bb) / a.clone()
                };
                if next.as_ref().is_none_or(|(v, _)| root > *v) {
                    next = Some((root, ev.index));
                }
            }
        }
        match next {
            None => {
                let (pattern, collector) = binding
                    .map(|(pi, ci)| {
                        let (p, d) = &search.patterns[pi];
                        (Some(p.clone()), Some(d[ci].clone()))
                    })
                    .unwrap_or((None, None));
                return Ok(OracleReport {
                    alpha_star: ExtendedRational::from(alpha),
                    beyond_proof: pattern
                        .as_ref()
                        .is_some_and(FailurePattern::has_repeated_failure),
                    binding_pattern: pattern,
                    binding_collector: collector,
                    iterations,
                    graphs_per_iteration: search.graph_count(),
                    outside_proof_regime: params.outside_proof_regime(),
                });
            }
            Some((ExtendedRational::Infinite, idx)) => {
                let (pi, ci) = (idx >> 32, idx & 0xffff_ffff);
                let (p, d) = &search.patterns[pi];
                return Ok(OracleReport {
                    alpha_star: ExtendedRational::Infinite,
                    beyond_proof: p.has_repeated_failure(),
                    binding_pattern: Some(p.clone()),
                    binding_collector: Some(d[ci].clone()),
                    iterations,
                    graphs_per_iteration: search.graph_count(),
                    outside_proof_regime: params.outside_proof_regime(),
                });
            }
            Some((ExtendedRational::Finite(root), idx)) => {
                assert!(root > alpha, "threshold search must strictly increase");
                alpha = root;
                binding = Some((idx >> 32, idx & 0xffff_ffff));
            }
        }
    }
}
