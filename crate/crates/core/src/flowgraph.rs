//! Time-evolving information flow graph of a cache with partial failures.
//!
//! Storage node `j` (0-based) carries the label `s·n + j + 1` after round
//! `s`; the source and the collector carry label 0. Edge capacities are
//! symbolic ([`CapacityKind`]) and resolved against the graph's current
//! [`Weights`], so one topology can be evaluated at many `(α, β)` pairs.
//!
//! Two layouts are offered. [`GraphMode::Full`] keeps every vertex type
//! and copies complete nodes each round. [`GraphMode::Compact`] drops the
//! copies and the dangling failed vertices and chains a faulty node's old
//! output straight into its newcomer through an `α₁` edge; both layouts have
//! the same source-to-collector cuts.

use std::collections::VecDeque;
use std::fmt;

use thiserror::Error;

use crate::params::SystemParams;
use crate::rational::ExtendedRational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FlowGraphError {
    #[error("a repair round needs exactly {expected} failed nodes, got {got}")]
    FailureCount { expected: usize, got: usize },
    #[error("node {0} is not an active node")]
    UnknownNode(usize),
    #[error("node {0} listed twice")]
    DuplicateNode(usize),
    #[error("collector needs exactly {expected} nodes, got {got}")]
    CollectorSize { expected: usize, got: usize },
    #[error("a collector is already attached")]
    CollectorAttached,
    #[error("no repair rounds may be applied after the collector is attached")]
    Frozen,
    #[error("alpha must be positive and finite")]
    BadAlpha,
    #[error("beta must be non-negative and finite")]
    BadBeta,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VertexKind {
    Source,
    In,
    Mid,
    Out,
    Failed,
    Helper,
    Collector,
}

impl VertexKind {
    pub fn name(self) -> &'static str {
        match self {
            VertexKind::Source => "source",
            VertexKind::In => "in",
            VertexKind::Mid => "mid",
            VertexKind::Out => "out",
            VertexKind::Failed => "failed",
            VertexKind::Helper => "helper",
            VertexKind::Collector => "collector",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexId {
    pub kind: VertexKind,
    pub label: usize,
    pub round: usize,
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}", self.kind.name(), self.label, self.round)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CapacityKind {
    /// α
    Alpha,
    /// α₁ = ρα, what survives a partial failure
    Alpha1,
    /// α − α₁, what a partial failure destroys
    AlphaLoss,
    /// β
    Beta,
    Infinite,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Edge {
    pub from: usize,
    pub to: usize,
    pub kind: CapacityKind,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Weights {
    pub alpha: ExtendedRational,
    pub alpha1: ExtendedRational,
    pub beta: ExtendedRational,
}

impl Weights {
    pub fn new(params: &SystemParams, alpha: ExtendedRational, beta: ExtendedRational) -> Self {
        Self {
            alpha1: params.alpha1(&alpha),
            alpha,
            beta,
        }
    }

    pub fn capacity(&self, kind: CapacityKind) -> ExtendedRational {
        match kind {
            CapacityKind::Alpha => self.alpha.clone(),
            CapacityKind::Alpha1 => self.alpha1.clone(),
            CapacityKind::AlphaLoss => &self.alpha - &self.alpha1,
            CapacityKind::Beta => self.beta.clone(),
            CapacityKind::Infinite => ExtendedRational::Infinite,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum GraphMode {
    #[default]
    Full,
    Compact,
}

/// Sequence of failed-node sets, one per repair round (0-based nodes).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct FailurePattern {
    pub rounds: Vec<Vec<usize>>,
}

impl FailurePattern {
    pub fn new(rounds: Vec<Vec<usize>>) -> Self {
        Self { rounds }
    }

    /// Round `s` fails nodes `(s−1)r .. s·r` (wrapping modulo `n`).
    pub fn canonical(params: &SystemParams, rounds: usize) -> Self {
        let (n, r) = (params.n(), params.r());
        Self {
            rounds: (0..rounds)
                .map(|s| (s * r..(s + 1) * r).map(|j| j % n).collect())
                .collect(),
        }
    }

    /// True if some node fails in two different rounds.
    pub fn has_repeated_failure(&self) -> bool {
        let mut seen = std::collections::HashSet::new();
        self.rounds.iter().flatten().any(|&j| !seen.insert(j))
    }
}

impl fmt::Display for FailurePattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rounds: Vec<String> = self
            .rounds
            .iter()
            .map(|r| {
                let ids: Vec<String> = r.iter().map(|j| (j + 1).to_string()).collect();
                format!("{{{}}}", ids.join(","))
            })
            .collect();
        write!(f, "[{}]", rounds.join(" "))
    }
}

#[derive(Clone, Debug)]
pub struct FlowGraph {
    mode: GraphMode,
    n: usize,
    k: usize,
    r: usize,
    vertices: Vec<VertexId>,
    edges: Vec<Edge>,
    weights: Weights,
    params: SystemParams,
    /// Current (in, out) vertex per node.
    active: Vec<(usize, usize)>,
    /// Index of the in→out edge of each node's current copy.
    storage_edge: Vec<usize>,
    source: usize,
    collector: Option<usize>,
    pattern: FailurePattern,
}

impl FlowGraph {
    pub fn build_initial(
        params: &SystemParams,
        alpha: ExtendedRational,
    ) -> Result<Self, FlowGraphError> {
        Self::build_initial_with_mode(params, alpha, GraphMode::Full)
    }

    pub fn build_initial_with_mode(
        params: &SystemParams,
        alpha: ExtendedRational,
        mode: GraphMode,
    ) -> Result<Self, FlowGraphError> {
        if !alpha.is_finite() || alpha.is_negative() || alpha.is_zero() {
            return Err(FlowGraphError::BadAlpha);
        }
        let n = params.n();
        let mut g = Self {
            mode,
            n,
            k: params.k(),
            r: params.r(),
            vertices: Vec::with_capacity(1 + 2 * n),
            edges: Vec::with_capacity(2 * n),
            weights: Weights::new(params, alpha, ExtendedRational::zero()),
            params: params.clone(),
            active: Vec::with_capacity(n),
            storage_edge: Vec::with_capacity(n),
            source: 0,
            collector: None,
            pattern: FailurePattern::default(),
        };
        g.source = g.add_vertex(VertexKind::Source, 0, 0);
        for j in 0..n {
            let vin = g.add_vertex(VertexKind::In, j + 1, 0);
            let vout = g.add_vertex(VertexKind::Out, j + 1, 0);
            g.add_edge(g.source, vin, CapacityKind::Infinite);
            let e = g.add_edge(vin, vout, CapacityKind::Alpha);
            g.active.push((vin, vout));
            g.storage_edge.push(e);
        }
        Ok(g)
    }

    fn add_vertex(&mut self, kind: VertexKind, label: usize, round: usize) -> usize {
        self.vertices.push(VertexId { kind, label, round });
        self.vertices.len() - 1
    }

    fn add_edge(&mut self, from: usize, to: usize, kind: CapacityKind) -> usize {
        self.edges.push(Edge { from, to, kind });
        self.edges.len() - 1
    }

    fn label(&self, node: usize, round: usize) -> usize {
        round * self.n + node + 1
    }

    /// Applies one repair round in which `failed` partially fail and the
    /// remaining nodes broadcast `beta` each.
    pub fn apply_repair_round(
        &mut self,
        failed: &[usize],
        beta: ExtendedRational,
    ) -> Result<(), FlowGraphError> {
        if self.collector.is_some() {
            return Err(FlowGraphError::Frozen);
        }
        if !beta.is_finite() || beta.is_negative() {
            return Err(FlowGraphError::BadBeta);
        }
        if failed.len() != self.r {
            return Err(FlowGraphError::FailureCount {
                expected: self.r,
                got: failed.len(),
            });
        }
        let mut is_failed = vec![false; self.n];
        for &j in failed {
            if j >= self.n {
                return Err(FlowGraphError::UnknownNode(j));
            }
            if is_failed[j] {
                return Err(FlowGraphError::DuplicateNode(j));
            }
            is_failed[j] = true;
        }
        self.weights.beta = beta;
        let s = self.pattern.rounds.len() + 1;
        self.pattern.rounds.push(failed.to_vec());

        let mut helpers = Vec::with_capacity(self.n - self.r);
        for j in (0..self.n).filter(|&j| !is_failed[j]) {
            let h = self.add_vertex(VertexKind::Helper, self.label(j, s - 1), s);
            self.add_edge(self.active[j].1, h, CapacityKind::Beta);
            helpers.push(h);
        }
        match self.mode {
            GraphMode::Full => self.full_round(s, &is_failed, &helpers),
            GraphMode::Compact => self.compact_round(s, &is_failed, &helpers),
        }
        Ok(())
    }

    fn full_round(&mut self, s: usize, is_failed: &[bool], helpers: &[usize]) {
        for (j, &failed) in is_failed.iter().enumerate() {
            let (old_in, old_out) = self.active[j];
            let new_in = self.add_vertex(VertexKind::In, self.label(j, s), s);
            let new_out = self.add_vertex(VertexKind::Out, self.label(j, s), s);
            if failed {
                let old_label = self.label(j, s - 1);
                let mid = self.add_vertex(VertexKind::Mid, old_label, s);
                let lost = self.add_vertex(VertexKind::Failed, old_label, s);
                self.edges[self.storage_edge[j]] = Edge {
                    from: old_in,
                    to: mid,
                    kind: CapacityKind::Alpha,
                };
                self.add_edge(mid, old_out, CapacityKind::Alpha1);
                self.add_edge(mid, lost, CapacityKind::AlphaLoss);
                self.add_edge(old_out, new_in, CapacityKind::Infinite);
                for &h in helpers {
                    self.add_edge(h, new_in, CapacityKind::Infinite);
                }
            } else {
                self.add_edge(old_out, new_in, CapacityKind::Infinite);
            }
            let e = self.add_edge(new_in, new_out, CapacityKind::Alpha);
            self.active[j] = (new_in, new_out);
            self.storage_edge[j] = e;
        }
    }

    fn compact_round(&mut self, s: usize, is_failed: &[bool], helpers: &[usize]) {
        for j in (0..self.n).filter(|&j| is_failed[j]) {
            let old_out = self.active[j].1;
            let new_in = self.add_vertex(VertexKind::In, self.label(j, s), s);
            let new_out = self.add_vertex(VertexKind::Out, self.label(j, s), s);
            self.add_edge(old_out, new_in, CapacityKind::Alpha1);
            for &h in helpers {
                self.add_edge(h, new_in, CapacityKind::Infinite);
            }
            let e = self.add_edge(new_in, new_out, CapacityKind::Alpha);
            self.active[j] = (new_in, new_out);
            self.storage_edge[j] = e;
        }
    }

    pub fn attach_collector(&mut self, nodes: &[usize]) -> Result<usize, FlowGraphError> {
        if self.collector.is_some() {
            return Err(FlowGraphError::CollectorAttached);
        }
        if nodes.len() != self.k {
            return Err(FlowGraphError::CollectorSize {
                expected: self.k,
                got: nodes.len(),
            });
        }
        let mut seen = vec![false; self.n];
        for &j in nodes {
            if j >= self.n {
                return Err(FlowGraphError::UnknownNode(j));
            }
            if seen[j] {
                return Err(FlowGraphError::DuplicateNode(j));
            }
            seen[j] = true;
        }
        let dc = self.add_vertex(VertexKind::Collector, 0, self.rounds());
        for &j in nodes {
            self.add_edge(self.active[j].1, dc, CapacityKind::Infinite);
        }
        self.collector = Some(dc);
        Ok(dc)
    }

    /// The worst-case graph of the threshold argument: ⌈k/r⌉ rounds, each
    /// repairing a fresh block of `r` nodes, with the collector reading the
    /// first `k` newcomers in round order.
    pub fn canonical_worst_case(
        params: &SystemParams,
        alpha: ExtendedRational,
        beta: ExtendedRational,
        mode: GraphMode,
    ) -> Result<Self, FlowGraphError> {
        let rounds = params.rounds();
        let pattern = FailurePattern::canonical(params, rounds);
        let mut g = Self::build_initial_with_mode(params, alpha, mode)?;
        for failed in &pattern.rounds {
            g.apply_repair_round(failed, beta.clone())?;
        }
        let mut dc: Vec<usize> = Vec::with_capacity(params.k());
        for j in pattern.rounds.iter().flatten() {
            if dc.len() < params.k() && !dc.contains(j) {
                dc.push(*j);
            }
        }
        g.attach_collector(&dc)?;
        Ok(g)
    }

    pub fn mode(&self) -> GraphMode {
        self.mode
    }

    pub fn params(&self) -> &SystemParams {
        &self.params
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn weights(&self) -> &Weights {
        &self.weights
    }

    /// Re-evaluates the same topology at a new `(α, β)`.
    pub fn reweight(
        &mut self,
        alpha: ExtendedRational,
        beta: ExtendedRational,
    ) -> Result<(), FlowGraphError> {
        if !alpha.is_finite() || alpha.is_negative() || alpha.is_zero() {
            return Err(FlowGraphError::BadAlpha);
        }
        if !beta.is_finite() || beta.is_negative() {
            return Err(FlowGraphError::BadBeta);
        }
        self.weights = Weights::new(&self.params, alpha, beta);
        Ok(())
    }

    pub fn capacity(&self, edge: &Edge) -> ExtendedRational {
        self.weights.capacity(edge.kind)
    }

    pub fn source(&self) -> usize {
        self.source
    }

    pub fn collector(&self) -> Option<usize> {
        self.collector
    }

    /// Current output vertex of `node`.
    pub fn active_out(&self, node: usize) -> usize {
        self.active[node].1
    }

    pub fn rounds(&self) -> usize {
        self.pattern.rounds.len()
    }

    pub fn pattern(&self) -> &FailurePattern {
        &self.pattern
    }

    /// A node failing in two rounds is allowed but not covered by the
    /// worst-case argument.
    pub fn beyond_proof(&self) -> bool {
        self.pattern.has_repeated_failure()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Kahn's algorithm; `None` if a cycle exists.
    pub fn topological_order(&self) -> Option<Vec<usize>> {
        let nv = self.vertices.len();
        let mut indeg = vec![0usize; nv];
        let mut out: Vec<Vec<usize>> = vec![Vec::new(); nv];
        for e in &self.edges {
            indeg[e.to] += 1;
            out[e.from].push(e.to);
        }
        let mut queue: VecDeque<usize> = (0..nv).filter(|&v| indeg[v] == 0).collect();
        let mut order = Vec::with_capacity(nv);
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for &w in &out[v] {
                indeg[w] -= 1;
                if indeg[w] == 0 {
                    queue.push_back(w);
                }
            }
        }
        (order.len() == nv).then_some(order)
    }

    pub fn is_acyclic(&self) -> bool {
        self.topological_order().is_some()
    }

    /// Checks the structural rules on vertex kinds joined by each capacity
    /// class. Returns the first offending edge.
    pub fn check_edge_kinds(&self) -> Result<(), Edge> {
        use CapacityKind::*;
        use VertexKind::*;
        for e in &self.edges {
            let pair = (self.vertices[e.from].kind, self.vertices[e.to].kind);
            let ok = match (self.mode, e.kind) {
                (_, Infinite) => matches!(
                    pair,
                    (Source, In) | (Helper, In) | (Out, In) | (Out, Collector)
                ),
                (_, Alpha) => matches!(pair, (In, Out) | (In, Mid)),
                (GraphMode::Full, Alpha1) => pair == (Mid, Out),
                (GraphMode::Compact, Alpha1) => pair == (Out, In),
                (_, AlphaLoss) => pair == (Mid, Failed),
                (_, Beta) => pair == (Out, Helper),
            };
            if !ok {
                return Err(*e);
            }
        }
        Ok(())
    }

    /// One line per edge: `from → to cap=<value>`.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        for e in &self.edges {
            out.push_str(&format!(
                "{} → {} cap={}\n",
                self.vertices[e.from],
                self.vertices[e.to],
                self.capacity(e)
            ));
        }
        out
    }
}

/// Vertex count of a full-layout graph after `rounds` rounds.
pub fn full_vertex_count(n: usize, r: usize, rounds: usize, collector: bool) -> usize {
    1 + 2 * n + rounds * (3 * n + r) + usize::from(collector)
}

/// Edge count of a full-layout graph after `rounds` rounds.
pub fn full_edge_count(n: usize, k: usize, r: usize, rounds: usize, collector: bool) -> usize {
    2 * n + rounds * (4 * r + 3 * (n - r) + (n - r) * r) + if collector { k } else { 0 }
}
