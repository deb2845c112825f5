//! Weighted directed multigraphs with exact arc weights.
//!
//! Nodes are dense `0..node_count` internally and 1-based in files. Arcs are
//! identified by their position in the arc list, which is also the coordinate
//! index of every [`ArcVector`] over the graph.

use std::collections::BTreeSet;
use std::fmt::{self, Write as _};
use std::ops::{Index, IndexMut};

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::rational::{format_rational, parse_rational, Rational, Q};

pub type NodeId = usize;
pub type ArcId = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("arc id {0} out of range")]
    InvalidArc(ArcId),
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },
    #[error("graph must have at least one node")]
    NoNodes,
    #[error("arc {arc} references node {node} outside 0..{node_count}")]
    InvalidNode {
        arc: ArcId,
        node: NodeId,
        node_count: usize,
    },
}

fn parse_error(line: usize, message: impl Into<String>) -> GraphError {
    GraphError::Parse {
        line,
        message: message.into(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arc {
    pub tail: NodeId,
    pub head: NodeId,
    pub weight: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedDigraph {
    node_count: usize,
    arcs: Vec<Arc>,
    labels: Option<Vec<String>>,
}

impl WeightedDigraph {
    pub fn new(node_count: usize, arcs: Vec<Arc>) -> Result<Self, GraphError> {
        if node_count == 0 {
            return Err(GraphError::NoNodes);
        }
        for (id, arc) in arcs.iter().enumerate() {
            for node in [arc.tail, arc.head] {
                if node >= node_count {
                    return Err(GraphError::InvalidNode {
                        arc: id,
                        node,
                        node_count,
                    });
                }
            }
        }
        Ok(Self {
            node_count,
            arcs,
            labels: None,
        })
    }

    /// Builds a graph from `(tail, head, weight)` triples.
    pub fn from_triples(
        node_count: usize,
        triples: impl IntoIterator<Item = (NodeId, NodeId, Rational)>,
    ) -> Result<Self, GraphError> {
        let arcs = triples
            .into_iter()
            .map(|(tail, head, weight)| Arc { tail, head, weight })
            .collect();
        Self::new(node_count, arcs)
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.node_count, "one label per node");
        self.labels = Some(labels);
        self
    }

    pub fn node_count(&self) -> usize {
        self.node_count
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub fn arc(&self, id: ArcId) -> &Arc {
        &self.arcs[id]
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn weight(&self, id: ArcId) -> &Rational {
        &self.arcs[id].weight
    }

    /// Outgoing arc ids per node, in increasing arc id order.
    pub fn out_arcs(&self) -> Vec<Vec<ArcId>> {
        let mut out = vec![Vec::new(); self.node_count];
        for (id, arc) in self.arcs.iter().enumerate() {
            out[arc.tail].push(id);
        }
        out
    }

    fn check_ids(&self, ids: &[ArcId]) -> Result<(), GraphError> {
        match ids.iter().find(|&&id| id >= self.arcs.len()) {
            Some(&id) => Err(GraphError::InvalidArc(id)),
            None => Ok(()),
        }
    }

    /// `w(X)`, the total weight of an arc set.
    pub fn total_weight(&self, ids: &[ArcId]) -> Result<Rational, GraphError> {
        self.check_ids(ids)?;
        Ok(ids.iter().map(|&id| &self.arcs[id].weight).sum())
    }

    /// `χ(X)`: 1 on the arcs of `X`, 0 elsewhere.
    pub fn characteristic_vector(&self, ids: &[ArcId]) -> Result<ArcVector, GraphError> {
        self.check_ids(ids)?;
        let mut v = ArcVector::zeros(self.arc_count());
        for &id in ids {
            v[id] = Rational::one();
        }
        Ok(v)
    }

    /// Maximal strongly connected components, each sorted, ordered by their
    /// smallest node.
    pub fn strongly_connected_components(&self) -> Vec<Vec<NodeId>> {
        let succ: Vec<Vec<NodeId>> = self
            .out_arcs()
            .into_iter()
            .map(|ids| ids.into_iter().map(|id| self.arcs[id].head).collect())
            .collect();
        let mut components = tarjan(&succ);
        for c in &mut components {
            c.sort_unstable();
        }
        components.sort_unstable_by_key(|c| c[0]);
        components
    }

    /// The graph restricted to the arcs `ids` and their endpoints.
    pub fn subgraph(&self, ids: &[ArcId]) -> Result<Subgraph, GraphError> {
        self.check_ids(ids)?;
        let arc_origin: Vec<ArcId> = ids
            .iter()
            .copied()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let node_origin: Vec<NodeId> = arc_origin
            .iter()
            .flat_map(|&id| [self.arcs[id].tail, self.arcs[id].head])
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let local = |node: NodeId| node_origin.binary_search(&node).expect("endpoint recorded");
        let arcs = arc_origin
            .iter()
            .map(|&id| {
                let arc = &self.arcs[id];
                Arc {
                    tail: local(arc.tail),
                    head: local(arc.head),
                    weight: arc.weight.clone(),
                }
            })
            .collect();
        // An empty arc set still yields a valid (single node) graph.
        let node_count = node_origin.len().max(1);
        let labels = (0..node_count)
            .map(|i| match node_origin.get(i) {
                Some(&orig) => self.node_label(orig),
                None => String::new(),
            })
            .collect();
        let graph = WeightedDigraph::new(node_count, arcs)?.with_labels(labels);
        Ok(Subgraph {
            graph,
            arc_origin,
            node_origin,
        })
    }

    /// Label of a node: the stored label, or its 1-based index.
    pub fn node_label(&self, node: NodeId) -> String {
        match &self.labels {
            Some(labels) => labels[node].clone(),
            None => (node + 1).to_string(),
        }
    }

    pub fn parse(text: &str) -> Result<Self, GraphError> {
        let mut header: Option<(usize, usize, usize)> = None;
        let mut arcs = Vec::new();
        let mut last_line = 0;
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            last_line = line_no;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('c') {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            match fields[0] {
                "p" => {
                    if header.is_some() {
                        return Err(parse_error(line_no, "duplicate header"));
                    }
                    if fields.len() != 3 {
                        return Err(parse_error(line_no, "expected `p <nodes> <arcs>`"));
                    }
                    let nodes = parse_count(fields[1], line_no)?;
                    let arc_count = parse_count(fields[2], line_no)?;
                    if nodes == 0 {
                        return Err(parse_error(line_no, "node count must be positive"));
                    }
                    header = Some((nodes, arc_count, line_no));
                }
                "a" => {
                    let (nodes, _, _) =
                        header.ok_or_else(|| parse_error(line_no, "arc before header"))?;
                    if fields.len() != 4 {
                        return Err(parse_error(line_no, "expected `a <tail> <head> <weight>`"));
                    }
                    let endpoint = |s: &str| -> Result<NodeId, GraphError> {
                        let v = parse_count(s, line_no)?;
                        if v == 0 || v > nodes {
                            return Err(parse_error(
                                line_no,
                                format!("node {v} out of range 1..={nodes}"),
                            ));
                        }
                        Ok(v - 1)
                    };
                    let tail = endpoint(fields[1])?;
                    let head = endpoint(fields[2])?;
                    let weight = parse_rational(fields[3])
                        .map_err(|e| parse_error(line_no, e.to_string()))?;
                    arcs.push(Arc { tail, head, weight });
                }
                other => return Err(parse_error(line_no, format!("unknown line type `{other}`"))),
            }
        }
        let (nodes, arc_count, header_line) =
            header.ok_or_else(|| parse_error(last_line.max(1), "missing header"))?;
        if arcs.len() != arc_count {
            return Err(parse_error(
                header_line,
                format!("header declares {arc_count} arcs, found {}", arcs.len()),
            ));
        }
        Self::new(nodes, arcs)
    }

    /// Serializes to the graph file format. `comments` are emitted as `c`
    /// lines before the header.
    pub fn to_text_with_comments<S: AsRef<str>>(&self, comments: &[S]) -> String {
        let mut out = String::new();
        for c in comments {
            let _ = writeln!(out, "c {}", c.as_ref());
        }
        let _ = writeln!(out, "p {} {}", self.node_count, self.arcs.len());
        for arc in &self.arcs {
            let _ = writeln!(
                out,
                "a {} {} {}",
                arc.tail + 1,
                arc.head + 1,
                Q(&arc.weight)
            );
        }
        out
    }

    pub fn to_text(&self) -> String {
        self.to_text_with_comments::<&str>(&[])
    }
}

fn parse_count(s: &str, line: usize) -> Result<usize, GraphError> {
    s.parse::<usize>()
        .map_err(|_| parse_error(line, format!("expected non-negative integer, got `{s}`")))
}

/// Iterative Tarjan. Components come out in reverse topological order.
fn tarjan(succ: &[Vec<NodeId>]) -> Vec<Vec<NodeId>> {
    const UNSEEN: usize = usize::MAX;
    let n = succ.len();
    let mut index = vec![UNSEEN; n];
    let mut low = vec![0; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut components = Vec::new();
    let mut next = 0;
    for root in 0..n {
        if index[root] != UNSEEN {
            continue;
        }
        let mut call: Vec<(NodeId, usize)> = vec![(root, 0)];
        index[root] = next;
        low[root] = next;
        next += 1;
        stack.push(root);
        on_stack[root] = true;
        while let Some(&mut (v, ref mut pos)) = call.last_mut() {
            if let Some(&w) = succ[v].get(*pos) {
                *pos += 1;
                if index[w] == UNSEEN {
                    index[w] = next;
                    low[w] = next;
                    next += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
                continue;
            }
            call.pop();
            if let Some(&(parent, _)) = call.last() {
                low[parent] = low[parent].min(low[v]);
            }
            if low[v] == index[v] {
                let mut comp = Vec::new();
                loop {
                    let w = stack.pop().expect("tarjan stack");
                    on_stack[w] = false;
                    comp.push(w);
                    if w == v {
                        break;
                    }
                }
                components.push(comp);
            }
        }
    }
    components
}

/// A subgraph together with the original ids of its arcs and nodes.
#[derive(Debug, Clone)]
pub struct Subgraph {
    pub graph: WeightedDigraph,
    /// `arc_origin[local] = original arc id`, increasing.
    pub arc_origin: Vec<ArcId>,
    pub node_origin: Vec<NodeId>,
}

/// Exact rational vector indexed by arc id.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ArcVector(Vec<Rational>);

impl ArcVector {
    pub fn zeros(dimension: usize) -> Self {
        Self(vec![Rational::zero(); dimension])
    }

    pub fn from_vec(entries: Vec<Rational>) -> Self {
        Self(entries)
    }

    pub fn dimension(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[Rational] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<Rational> {
        self.0
    }

    /// Arc ids with a strictly positive entry.
    pub fn support(&self) -> Vec<ArcId> {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, q)| q.is_positive())
            .map(|(i, _)| i)
            .collect()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|q| !q.is_negative())
    }

    pub fn sum(&self) -> Rational {
        self.0.iter().sum()
    }

    /// `Σ w_e y_e` for the weights of `g`.
    pub fn weighted_sum(&self, g: &WeightedDigraph) -> Rational {
        self.0
            .iter()
            .zip(g.arcs())
            .map(|(y, arc)| y * &arc.weight)
            .sum()
    }

    pub fn scaled(&self, factor: &Rational) -> Self {
        Self(self.0.iter().map(|q| q * factor).collect())
    }

    /// `self += factor * other`.
    pub fn add_scaled(&mut self, factor: &Rational, other: &ArcVector) {
        assert_eq!(self.dimension(), other.dimension());
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a += factor * b;
        }
    }

    /// Parses the `e <arc_id> <rational>` format; omitted arcs are zero.
    pub fn parse(text: &str, dimension: usize) -> Result<Self, GraphError> {
        let mut v = Self::zeros(dimension);
        let mut seen = vec![false; dimension];
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('c') {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            if fields.len() != 3 || fields[0] != "e" {
                return Err(parse_error(line_no, "expected `e <arc_id> <rational>`"));
            }
            let id = parse_count(fields[1], line_no)?;
            if id >= dimension {
                return Err(parse_error(
                    line_no,
                    format!("arc id {id} out of range 0..{dimension}"),
                ));
            }
            if seen[id] {
                return Err(parse_error(line_no, format!("arc id {id} given twice")));
            }
            seen[id] = true;
            v[id] = parse_rational(fields[2]).map_err(|e| parse_error(line_no, e.to_string()))?;
        }
        Ok(v)
    }

    /// `e` lines for the nonzero entries.
    pub fn to_e_lines(&self) -> String {
        let mut out = String::new();
        for (id, q) in self.0.iter().enumerate() {
            if !q.is_zero() {
                let _ = writeln!(out, "e {id} {}", Q(q));
            }
        }
        out
    }
}

impl Index<ArcId> for ArcVector {
    type Output = Rational;
    fn index(&self, id: ArcId) -> &Rational {
        &self.0[id]
    }
}

impl IndexMut<ArcId> for ArcVector {
    fn index_mut(&mut self, id: ArcId) -> &mut Rational {
        &mut self.0[id]
    }
}

/// Dense tuple form, e.g. `(1/3,1/3,1/3)`.
impl fmt::Display for ArcVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, q) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            f.write_str(&format_rational(q))?;
        }
        f.write_str(")")
    }
}

impl ArcVector {
    /// Inverse of the `Display` tuple form.
    pub fn parse_tuple(text: &str) -> Result<Self, GraphError> {
        let inner = text
            .trim()
            .strip_prefix('(')
            .and_then(|s| s.strip_suffix(')'))
            .ok_or_else(|| parse_error(1, "expected `(q,q,...)`"))?;
        if inner.trim().is_empty() {
            return Ok(Self(Vec::new()));
        }
        inner
            .split(',')
            .map(|s| parse_rational(s).map_err(|e| parse_error(1, e.to_string())))
            .collect::<Result<Vec<_>, _>>()
            .map(Self)
    }
}
