//! Triple-weighted directed networks.
//!
//! Every edge carries a `(cost, time, risk)` triple of finite reals; a
//! scalar weight only appears once an [`EvalMap`](crate::EvalMap) has been
//! applied ([`Network::scalarize`]). Parallel edges and self-loops are
//! allowed. Negative components are gated behind an explicit
//! `allow_negative` flag so accidental negatives surface as errors.
//!
//! Networks are immutable once built, and every consumer of predecessor
//! information goes through [`Network::predecessors`], which models the
//! walk start by adding a virtual predecessor token at the source.

mod format;
mod generate;

use thiserror::Error;

use crate::algebra::{EvalMap, Value};

/// One `(cost, time, risk)` edge annotation. All components are finite.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EdgeTriple {
    pub cost: f64,
    pub time: f64,
    pub risk: f64,
}

impl EdgeTriple {
    pub fn new(cost: f64, time: f64, risk: f64) -> Result<EdgeTriple, GraphError> {
        if !(cost.is_finite() && time.is_finite() && risk.is_finite()) {
            return Err(GraphError::InvalidNetwork(format!(
                "edge components must be finite, got ({cost}, {time}, {risk})"
            )));
        }
        Ok(EdgeTriple { cost, time, risk })
    }

    fn has_negative(&self) -> bool {
        self.cost < 0.0 || self.time < 0.0 || self.risk < 0.0
    }
}

/// A directed edge. `weight` stays unset until scalarization.
#[derive(Debug, Clone, PartialEq)]
pub struct Edge {
    pub from: usize,
    pub to: usize,
    pub triple: EdgeTriple,
    pub weight: Option<Value>,
}

/// A predecessor token: either a real vertex or the virtual start-of-walk
/// marker that only ever appears at the source. `Virtual` sorts before
/// every vertex id, which the solver's tie-breaking relies on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Predecessor {
    Virtual,
    Vertex(usize),
}

impl std::fmt::Display for Predecessor {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Predecessor::Virtual => write!(f, "virtual"),
            Predecessor::Vertex(v) => write!(f, "{v}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GraphError {
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("invalid network: {0}")]
    InvalidNetwork(String),
    #[error("invalid generator parameters: {0}")]
    InvalidGenerator(String),
    #[error("vertex {vertex} out of range (n = {n})")]
    VertexOutOfRange { vertex: usize, n: usize },
}

/// A directed network with a distinguished source.
#[derive(Debug, Clone)]
pub struct Network {
    n: usize,
    source: usize,
    edges: Vec<Edge>,
    /// Outgoing edge ids per vertex, in input order.
    forward: Vec<Vec<usize>>,
    /// Deduplicated, sorted in-neighbour vertex ids per vertex.
    preds: Vec<Vec<usize>>,
    allow_negative: bool,
}

impl Network {
    /// Builds a network from raw edges, validating vertex ranges and the
    /// negativity policy.
    pub fn new(
        n: usize,
        source: usize,
        edges: Vec<(usize, usize, EdgeTriple)>,
        allow_negative: bool,
    ) -> Result<Network, GraphError> {
        if n == 0 {
            return Err(GraphError::InvalidNetwork(
                "a network needs at least one vertex".into(),
            ));
        }
        if source >= n {
            return Err(GraphError::InvalidNetwork(format!(
                "source {source} out of range (n = {n})"
            )));
        }
        for &(from, to, triple) in &edges {
            for vertex in [from, to] {
                if vertex >= n {
                    return Err(GraphError::VertexOutOfRange { vertex, n });
                }
            }
            if triple.has_negative() && !allow_negative {
                return Err(GraphError::InvalidNetwork(format!(
                    "edge ({from}, {to}) has a negative component; \
                     negative weights require allow_negative"
                )));
            }
        }
        let edges = edges
            .into_iter()
            .map(|(from, to, triple)| Edge {
                from,
                to,
                triple,
                weight: None,
            })
            .collect();
        Ok(Network::assemble(n, source, edges, allow_negative))
    }

    /// Builds a network whose weights are already scalar: each edge gets
    /// the triple `(w, 0, 0)` and the scalar weight `w` directly. Handy for
    /// callers (and tests) that never work with full triples.
    pub fn from_scalar_edges(
        n: usize,
        source: usize,
        edges: &[(usize, usize, f64)],
        allow_negative: bool,
    ) -> Result<Network, GraphError> {
        let triples = edges
            .iter()
            .map(|&(from, to, w)| {
                if !w.is_finite() {
                    return Err(GraphError::InvalidNetwork(format!(
                        "edge weight {w} is not finite"
                    )));
                }
                Ok((from, to, EdgeTriple::new(w, 0.0, 0.0)?))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let mut net = Network::new(n, source, triples, allow_negative)?;
        for edge in &mut net.edges {
            edge.weight = Some(Value::new(edge.triple.cost));
        }
        Ok(net)
    }

    /// Internal constructor for inputs that are already validated.
    fn assemble(n: usize, source: usize, edges: Vec<Edge>, allow_negative: bool) -> Network {
        let mut forward = vec![Vec::new(); n];
        let mut preds = vec![Vec::new(); n];
        for (id, edge) in edges.iter().enumerate() {
            forward[edge.from].push(id);
            preds[edge.to].push(edge.from);
        }
        for list in &mut preds {
            list.sort_unstable();
            list.dedup();
        }
        Network {
            n,
            source,
            edges,
            forward,
            preds,
            allow_negative,
        }
    }

    /// Parses the `ttgn` text format; see the module docs of this crate's
    /// `graph::format` for the grammar.
    pub fn parse(text: &str, allow_negative: bool) -> Result<Network, GraphError> {
        format::parse(text, allow_negative)
    }

    /// Serializes to the canonical `ttgn` form; `parse ∘ serialize` is the
    /// identity on everything but the scalar weights.
    pub fn serialize(&self) -> String {
        format::serialize(self)
    }

    /// Draws each ordered pair `u ≠ v` independently with probability
    /// `edge_prob`; triples are uniform in the given `(lo, hi)` ranges.
    /// Deterministic for a fixed seed. The source is vertex 0.
    pub fn generate_random(
        n: usize,
        edge_prob: f64,
        ranges: [(f64, f64); 3],
        seed: u64,
    ) -> Result<Network, GraphError> {
        generate::generate(n, edge_prob, ranges, seed)
    }

    /// Returns a copy with every edge weight set to `h(triple)`. Triples
    /// are retained for reporting.
    pub fn scalarize(&self, h: &EvalMap) -> Network {
        let mut net = self.clone();
        for edge in &mut net.edges {
            edge.weight = Some(h.evaluate(edge.triple.cost, edge.triple.time, edge.triple.risk));
        }
        net
    }

    /// Predecessor tokens of `u`: its in-neighbours, plus the virtual
    /// start-of-walk token when `u` is the source.
    pub fn predecessors(&self, u: usize) -> Result<Vec<Predecessor>, GraphError> {
        if u >= self.n {
            return Err(GraphError::VertexOutOfRange { vertex: u, n: self.n });
        }
        let mut tokens = Vec::with_capacity(self.preds[u].len() + 1);
        if u == self.source {
            tokens.push(Predecessor::Virtual);
        }
        tokens.extend(self.preds[u].iter().map(|&p| Predecessor::Vertex(p)));
        Ok(tokens)
    }

    /// Number of ternary evaluations one full relaxation sweep performs:
    /// the sum over edges `(u, v)` of `|predecessors(u)|`.
    pub fn relaxations_per_sweep(&self) -> u64 {
        self.edges
            .iter()
            .map(|edge| {
                let real = self.preds[edge.from].len() as u64;
                let virtual_token = u64::from(edge.from == self.source);
                real + virtual_token
            })
            .sum()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn source(&self) -> usize {
        self.source
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn allow_negative(&self) -> bool {
        self.allow_negative
    }

    /// Outgoing edge ids of `u`, in input order.
    pub fn out_edges(&self, u: usize) -> &[usize] {
        &self.forward[u]
    }

    /// In-neighbour vertex ids of `u` (sorted, deduplicated), without the
    /// virtual token.
    pub fn in_neighbors(&self, u: usize) -> &[usize] {
        &self.preds[u]
    }

    pub fn is_scalarized(&self) -> bool {
        self.edges.iter().all(|e| e.weight.is_some())
    }
}
