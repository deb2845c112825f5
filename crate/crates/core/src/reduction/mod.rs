//! The CNF → weighted digraph reduction whose flow polyhedron has only 0/1
//! vertices, and the VE-0/1 decision it encodes.
//!
//! For every literal occurrence `ℓ` two three-arc paths are created:
//! `p→a→b→q` with weights `1/2, −1/2, 0`, and `r→b′→a′→s` with weights
//! `0, −1/2, 1/2`; then `a′` is merged into `a` and `b′` into `b`, so the
//! arcs `a→b` and `b→a` close a digon of weight −1. The `p…q` paths of each
//! variable are chained into two parallel chains (positive and negated
//! occurrences) between connectors `v_{i−1}` and `v_i`; the `r…s` paths of
//! clause `j` run in parallel between `v′_{j−1}` and `v′_j` (with
//! `v′_0 = v_n`), and the arc `v′_m → v_0` of weight −1 closes the loop.
//!
//! A cycle through every connector ("long cycle") picks one chain per
//! variable and one literal path per clause; it can use a clause path only if
//! the chain it skipped left that literal's digon free, i.e. when the
//! literal is true. So long cycles exist exactly for satisfiable formulas.

mod cnf;

use std::collections::BTreeSet;
use std::fmt::{self, Write as _};

use num_traits::{One, Zero};
use thiserror::Error;

pub use cnf::{
    brute_force_sat, parse_dimacs_cnf, Clause, CnfError, CnfFormula, Literal,
    MAX_BRUTE_FORCE_VARIABLES,
};

use crate::characterize::vertices_from_families;
use crate::cycles::{CycleFamilies, CyclesError, SignClass};
use crate::graph::{ArcId, ArcVector, NodeId, WeightedDigraph};
use crate::polyhedra::{build_p, HRep, VertexSet};
use crate::rational::{int, rat, Rational};
use crate::Cycle;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReductionError {
    #[error(transparent)]
    Cnf(#[from] CnfError),
    #[error(transparent)]
    Cycles(#[from] CyclesError),
}

/// One literal occurrence `ℓ = ℓ^j`: the `position`-th literal of clause
/// `clause` (both 0-based).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Occurrence {
    pub clause: usize,
    pub position: usize,
    pub literal: Literal,
}

impl fmt::Display for Occurrence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@C{}", self.literal, self.clause + 1)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RoleKind {
    /// `v_i`, `0 ≤ i ≤ n`.
    V(usize),
    /// `v′_j`, `1 ≤ j ≤ m`.
    VPrime(usize),
    P,
    A,
    B,
    Q,
    R,
    S,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Role {
    pub kind: RoleKind,
    /// Index into [`ReductionArtifact::occurrences`] for per-literal roles.
    pub occurrence: Option<usize>,
}

/// The digon `{(a,b), (b,a)}` of one occurrence.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Gadget {
    pub occurrence: usize,
    pub a: NodeId,
    pub b: NodeId,
    pub arc_ab: ArcId,
    pub arc_ba: ArcId,
}

#[derive(Debug, Clone)]
pub struct ReductionArtifact {
    pub formula: CnfFormula,
    pub graph: WeightedDigraph,
    /// Occurrences in clause order.
    pub occurrences: Vec<Occurrence>,
    pub roles: Vec<Vec<Role>>,
    /// One gadget per occurrence, same order as `occurrences`.
    pub gadgets: Vec<Gadget>,
    /// `v_0, …, v_n, v′_1, …, v′_m`.
    pub connectors: Vec<NodeId>,
    /// `(variable, positive)` for chains replaced by a single zero arc.
    pub degenerate_chains: Vec<(usize, bool)>,
    /// Clauses (0-based) with a single literal.
    pub unit_clauses: Vec<usize>,
    /// Node count before `a′`, `b′` are merged into `a`, `b`.
    pub nodes_before_identification: usize,
    pub closing_arc: ArcId,
}

struct Builder {
    raw_nodes: usize,
    roles: Vec<Vec<Role>>,
    arcs: Vec<(NodeId, NodeId, Rational)>,
}

impl Builder {
    fn node(&mut self, role: Option<Role>) -> NodeId {
        self.raw_nodes += 1;
        self.roles.push(role.into_iter().collect());
        self.raw_nodes - 1
    }

    fn arc(&mut self, tail: NodeId, head: NodeId, weight: Rational) -> ArcId {
        self.arcs.push((tail, head, weight));
        self.arcs.len() - 1
    }

    fn tag(&mut self, node: NodeId, kind: RoleKind, occurrence: usize) {
        self.roles[node].push(Role {
            kind,
            occurrence: Some(occurrence),
        });
    }
}

/// Builds the reduction graph of `f`.
pub fn build_reduction(f: &CnfFormula) -> ReductionArtifact {
    let n = f.variable_count();
    let m = f.clauses().len();
    let occurrences: Vec<Occurrence> = f
        .clauses()
        .iter()
        .enumerate()
        .flat_map(|(clause, c)| {
            c.iter()
                .enumerate()
                .map(move |(position, &literal)| Occurrence {
                    clause,
                    position,
                    literal,
                })
        })
        .collect();

    let mut b = Builder {
        raw_nodes: 0,
        roles: Vec::new(),
        arcs: Vec::new(),
    };
    let v: Vec<NodeId> = (0..=n)
        .map(|i| {
            b.node(Some(Role {
                kind: RoleKind::V(i),
                occurrence: None,
            }))
        })
        .collect();
    let v_prime: Vec<NodeId> = (1..=m)
        .map(|j| {
            b.node(Some(Role {
                kind: RoleKind::VPrime(j),
                occurrence: None,
            }))
        })
        .collect();
    // v′_0 is v_n.
    let clause_connector = |j: usize| if j == 0 { v[n] } else { v_prime[j - 1] };

    let half = rat(1, 2);
    let mut a_node = vec![0; occurrences.len()];
    let mut b_node = vec![0; occurrences.len()];
    let mut arc_ab = vec![0; occurrences.len()];
    let mut degenerate_chains = Vec::new();
    for var in 1..=n {
        for positive in [true, false] {
            let chain: Vec<usize> = (0..occurrences.len())
                .filter(|&o| occurrences[o].literal == Literal::new(var, positive))
                .collect();
            if chain.is_empty() {
                b.arc(v[var - 1], v[var], Rational::zero());
                degenerate_chains.push((var, positive));
                continue;
            }
            let mut prev = v[var - 1];
            for (t, &o) in chain.iter().enumerate() {
                b.tag(prev, RoleKind::P, o);
                let a = b.node(Some(Role {
                    kind: RoleKind::A,
                    occurrence: Some(o),
                }));
                let bb = b.node(Some(Role {
                    kind: RoleKind::B,
                    occurrence: Some(o),
                }));
                let q = if t + 1 == chain.len() {
                    v[var]
                } else {
                    b.node(None)
                };
                b.tag(q, RoleKind::Q, o);
                b.arc(prev, a, half.clone());
                arc_ab[o] = b.arc(a, bb, -half.clone());
                b.arc(bb, q, Rational::zero());
                a_node[o] = a;
                b_node[o] = bb;
                prev = q;
            }
        }
    }

    // Clause paths r → b′ → a′ → s, with b′ and a′ created as separate nodes
    // and merged afterwards.
    let mut merge: Vec<Option<NodeId>> = Vec::new();
    let mut arc_ba = vec![0; occurrences.len()];
    for (o, occ) in occurrences.iter().enumerate() {
        let r = clause_connector(occ.clause);
        let s = clause_connector(occ.clause + 1);
        b.tag(r, RoleKind::R, o);
        b.tag(s, RoleKind::S, o);
        let b_prime = b.node(None);
        let a_prime = b.node(None);
        merge.resize(b.raw_nodes, None);
        merge[b_prime] = Some(b_node[o]);
        merge[a_prime] = Some(a_node[o]);
        b.arc(r, b_prime, Rational::zero());
        arc_ba[o] = b.arc(b_prime, a_prime, -half.clone());
        b.arc(a_prime, s, half.clone());
    }
    let closing_arc = b.arc(clause_connector(m), v[0], -Rational::one());
    merge.resize(b.raw_nodes, None);

    // Compact: merged copies take their partner's id, the rest keep raw order.
    let mut new_id = vec![usize::MAX; b.raw_nodes];
    let mut next = 0;
    for raw in 0..b.raw_nodes {
        if merge[raw].is_none() {
            new_id[raw] = next;
            next += 1;
        }
    }
    for raw in 0..b.raw_nodes {
        if let Some(target) = merge[raw] {
            new_id[raw] = new_id[target];
        }
    }
    let node_count = next;
    let mut roles: Vec<Vec<Role>> = vec![Vec::new(); node_count];
    for raw in 0..b.raw_nodes {
        roles[new_id[raw]].extend(b.roles[raw].iter().copied());
    }
    let triples = b
        .arcs
        .iter()
        .map(|(t, h, w)| (new_id[*t], new_id[*h], w.clone()));
    let graph = WeightedDigraph::from_triples(node_count, triples).expect("valid node ids");

    let gadgets = (0..occurrences.len())
        .map(|o| Gadget {
            occurrence: o,
            a: new_id[a_node[o]],
            b: new_id[b_node[o]],
            arc_ab: arc_ab[o],
            arc_ba: arc_ba[o],
        })
        .collect();
    let connectors = v.iter().chain(&v_prime).map(|&raw| new_id[raw]).collect();
    let unit_clauses = f
        .clauses()
        .iter()
        .enumerate()
        .filter(|(_, c)| c.len() == 1)
        .map(|(j, _)| j)
        .collect();

    let mut artifact = ReductionArtifact {
        formula: f.clone(),
        graph,
        occurrences,
        roles,
        gadgets,
        connectors,
        degenerate_chains,
        unit_clauses,
        nodes_before_identification: b.raw_nodes,
        closing_arc,
    };
    let labels = (0..node_count).map(|u| artifact.node_label(u)).collect();
    artifact.graph = artifact.graph.clone().with_labels(labels);
    artifact
}

impl ReductionArtifact {
    /// Role label of a node, e.g. `v'1` or `a[x2@C3]`; merged roles are
    /// joined with `=`.
    pub fn node_label(&self, node: NodeId) -> String {
        let parts: Vec<String> = self.roles[node]
            .iter()
            .map(|role| {
                let name = match role.kind {
                    RoleKind::V(i) => return format!("v{i}"),
                    RoleKind::VPrime(j) => return format!("v'{j}"),
                    RoleKind::P => "p",
                    RoleKind::A => "a",
                    RoleKind::B => "b",
                    RoleKind::Q => "q",
                    RoleKind::R => "r",
                    RoleKind::S => "s",
                };
                match role.occurrence {
                    Some(o) => format!("{name}[{}]", self.occurrences[o]),
                    None => name.to_string(),
                }
            })
            .collect();
        parts.join("=")
    }

    /// Graph file text with `c role:` lines.
    pub fn to_graph_text(&self) -> String {
        let mut comments = vec![format!("reduction of {}", self.formula)];
        comments.extend(
            (0..self.graph.node_count()).map(|u| format!("role: {} {}", u + 1, self.node_label(u))),
        );
        self.graph.to_text_with_comments(&comments)
    }

    /// `6·Σ|C_j| + 1`, plus one per degenerate chain.
    pub fn expected_arc_count(&self) -> usize {
        6 * self.occurrences.len() + 1 + self.degenerate_chains.len()
    }

    pub fn is_long(&self, cycle: &Cycle) -> bool {
        let nodes: BTreeSet<NodeId> = cycle.nodes(&self.graph).into_iter().collect();
        self.connectors.iter().all(|c| nodes.contains(c))
    }

    pub fn gadget_arcs(&self) -> BTreeSet<BTreeSet<ArcId>> {
        self.gadgets
            .iter()
            .map(|g| [g.arc_ab, g.arc_ba].into())
            .collect()
    }
}

/// The trivial vertex family `𝒳`: `χ({(a,b),(b,a)})` per occurrence.
pub fn trivial_vertex_family(art: &ReductionArtifact) -> Vec<ArcVector> {
    art.gadgets
        .iter()
        .map(|g| {
            art.graph
                .characteristic_vector(&[g.arc_ab, g.arc_ba])
                .expect("gadget arcs exist")
        })
        .collect()
}

/// The first negative long cycle in canonical order, found by exhaustive
/// enumeration.
///
/// Cycles through every connector can also be nonnegative: they enter the
/// clause section through a merged `a`/`b` node and come back the same way.
/// Only the negative ones are vertices of `P`, so only those are returned.
pub fn has_long_cycle(art: &ReductionArtifact, cap: usize) -> Result<Option<Cycle>, CyclesError> {
    let cycles = crate::cycles::enumerate_cycles(&art.graph, cap)?;
    Ok(cycles
        .into_iter()
        .find(|c| c.sign() == SignClass::Negative && art.is_long(c)))
}

/// Every cycle through all connectors, whatever its weight.
pub fn long_cycles<'a>(art: &ReductionArtifact, cycles: &'a [Cycle]) -> Vec<&'a Cycle> {
    cycles.iter().filter(|c| art.is_long(c)).collect()
}

/// The VE-0/1 question for a reduction graph: is `𝒳` all of `𝒱(P)`?
#[derive(Debug, Clone)]
pub struct Ve01Instance {
    pub artifact: ReductionArtifact,
    pub polyhedron: HRep,
    pub claimed: VertexSet,
}

impl Ve01Instance {
    pub fn new(f: &CnfFormula) -> Self {
        let artifact = build_reduction(f);
        Self {
            polyhedron: build_p(&artifact.graph),
            claimed: VertexSet::from_points(trivial_vertex_family(&artifact)),
            artifact,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Ve01Report {
    pub x_size: usize,
    pub vertex_count: usize,
    pub x_subset_of_v: bool,
    pub x_equals_v: bool,
    /// `None` when the formula is too large for brute force.
    pub sat: Option<Option<Vec<bool>>>,
    /// Negative cycles whose vertices lie outside `𝒳`.
    pub extra_cycles: Vec<Cycle>,
    /// Every extra cycle is long and weighs −1.
    pub extras_are_long: bool,
    pub all_negative_weight_minus_one: bool,
    pub families: CycleFamilies,
    pub vertices: VertexSet,
}

impl Ve01Report {
    pub fn is_satisfiable(&self) -> Option<bool> {
        self.sat.as_ref().map(Option::is_some)
    }

    /// `𝒱 = 𝒳` exactly when the formula is unsatisfiable.
    pub fn consistent(&self) -> Option<bool> {
        self.is_satisfiable().map(|sat| self.x_equals_v != sat)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let yes_no = |b: Option<bool>| b.map_or("unknown".to_string(), |b| b.to_string());
        let _ = writeln!(out, "X_size: {}", self.x_size);
        let _ = writeln!(out, "V_size: {}", self.vertex_count);
        let _ = writeln!(out, "X_subset_V: {}", self.x_subset_of_v);
        let _ = writeln!(out, "X_equals_V: {}", self.x_equals_v);
        let _ = writeln!(out, "sat: {}", yes_no(self.is_satisfiable()));
        if let Some(Some(assignment)) = &self.sat {
            let bits: Vec<String> = assignment
                .iter()
                .enumerate()
                .map(|(i, &b)| format!("x{}={}", i + 1, u8::from(b)))
                .collect();
            let _ = writeln!(out, "assignment: {}", bits.join(" "));
        }
        let _ = writeln!(out, "consistent: {}", yes_no(self.consistent()));
        let _ = writeln!(out, "negative_cycles: {}", self.families.negative.len());
        let _ = writeln!(out, "zero_cycles: {}", self.families.zero.len());
        let _ = writeln!(out, "positive_cycles: {}", self.families.positive.len());
        let _ = writeln!(
            out,
            "all_negative_weight_minus_one: {}",
            self.all_negative_weight_minus_one
        );
        let _ = writeln!(out, "extra_vertices: {}", self.extra_cycles.len());
        let _ = writeln!(out, "extras_are_long: {}", self.extras_are_long);
        if let Some(c) = self.extra_cycles.first() {
            let _ = writeln!(out, "witness_long_cycle: {c}");
        }
        out
    }
}

/// Builds the reduction, computes `𝒱(P)` from the negative cycles and
/// compares it with `𝒳`, cross-checking with brute-force satisfiability.
pub fn decide_ve01(f: &CnfFormula, cap: usize) -> Result<Ve01Report, ReductionError> {
    let inst = Ve01Instance::new(f);
    let art = &inst.artifact;
    let families = CycleFamilies::of(&art.graph, cap)?;
    let vertices = vertices_from_families(&art.graph, &families);
    let gadgets = art.gadget_arcs();
    let extra_cycles: Vec<Cycle> = families
        .negative
        .iter()
        .filter(|c| !gadgets.contains(&c.arc_set()))
        .cloned()
        .collect();
    let minus_one = int(-1);
    let extras_are_long = extra_cycles
        .iter()
        .all(|c| art.is_long(c) && *c.weight() == minus_one);
    let sat = match brute_force_sat(f) {
        Ok(s) => Some(s),
        Err(CnfError::TooManyVariables(_)) => None,
        Err(e) => return Err(e.into()),
    };
    Ok(Ve01Report {
        x_size: inst.claimed.len(),
        vertex_count: vertices.len(),
        x_subset_of_v: inst.claimed.points().iter().all(|x| vertices.contains(x)),
        x_equals_v: inst.claimed.points() == vertices.points(),
        sat,
        extras_are_long,
        all_negative_weight_minus_one: families.negative.iter().all(|c| *c.weight() == minus_one),
        extra_cycles,
        families,
        vertices,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cycles::enumerate_cycles;
    use crate::polyhedra::is_feasible_point;

    fn three_clause() -> CnfFormula {
        CnfFormula::from_dimacs_clauses(3, &[&[1, 2, -3], &[1, -2, 3], &[-1, 2, -3]]).unwrap()
    }

    fn unsat_two() -> CnfFormula {
        CnfFormula::from_dimacs_clauses(2, &[&[1, 2], &[-1, 2], &[1, -2], &[-1, -2]]).unwrap()
    }

    #[test]
    fn three_clause_counts() {
        let art = build_reduction(&three_clause());
        assert_eq!(art.graph.arc_count(), 55);
        assert!(art.degenerate_chains.is_empty());
        // Before merging a′/b′: 5·9 + 3 − 3 + 1.
        assert_eq!(art.nodes_before_identification, 46);
        // After merging: 3·9 + 3 − 3 + 1.
        assert_eq!(art.graph.node_count(), 28);
        assert_eq!(art.connectors.len(), 7);
    }

    #[test]
    fn tautological_clause() {
        let f = CnfFormula::from_dimacs_clauses(1, &[&[1, -1]]).unwrap();
        let art = build_reduction(&f);
        assert_eq!(art.graph.arc_count(), 13);
        assert_eq!(art.expected_arc_count(), 13);
        assert_eq!(trivial_vertex_family(&art).len(), 2);
    }

    #[test]
    fn arc_weights_follow_the_gadget_table() {
        let art = build_reduction(&three_clause());
        let g = &art.graph;
        for gadget in &art.gadgets {
            assert_eq!(g.weight(gadget.arc_ab), &rat(-1, 2));
            assert_eq!(g.weight(gadget.arc_ba), &rat(-1, 2));
            assert_eq!(
                (g.arc(gadget.arc_ab).tail, g.arc(gadget.arc_ab).head),
                (gadget.a, gadget.b)
            );
            assert_eq!(
                (g.arc(gadget.arc_ba).tail, g.arc(gadget.arc_ba).head),
                (gadget.b, gadget.a)
            );
            // p→a carries 1/2 and a′→s carries 1/2.
            let into_a: Vec<&Rational> = g
                .arcs()
                .iter()
                .filter(|arc| arc.head == gadget.a && arc.tail != gadget.b)
                .map(|arc| &arc.weight)
                .collect();
            assert_eq!(into_a, vec![&half()]);
        }
        assert_eq!(g.weight(art.closing_arc), &int(-1));
        assert_eq!(g.arc(art.closing_arc).head, art.connectors[0]);
    }

    fn half() -> Rational {
        rat(1, 2)
    }

    #[test]
    fn negative_cycles_weigh_minus_one() {
        for f in [three_clause(), unsat_two()] {
            let art = build_reduction(&f);
            let fam = CycleFamilies::of(&art.graph, 100_000).unwrap();
            assert!(fam.negative.iter().all(|c| *c.weight() == int(-1)));
        }
    }

    #[test]
    fn trivial_family_vectors_are_feasible_zero_one() {
        let art = build_reduction(&three_clause());
        let xs = trivial_vertex_family(&art);
        assert_eq!(xs.len(), 9);
        let h = build_p(&art.graph);
        for x in &xs {
            assert_eq!(x.support().len(), 2);
            assert!(x.entries().iter().all(|q| q.is_zero() || q.is_one()));
            assert!(is_feasible_point(&h, x).unwrap().is_feasible());
            assert!(h.is_vertex(x).unwrap());
        }
    }

    #[test]
    fn long_cycles_track_satisfiability() {
        let art = build_reduction(&three_clause());
        let c = has_long_cycle(&art, 100_000).unwrap().expect("satisfiable");
        assert_eq!(c.weight(), &int(-1));
        let art = build_reduction(&unsat_two());
        assert!(has_long_cycle(&art, 100_000).unwrap().is_none());
    }

    #[test]
    fn nonnegative_cycles_can_pass_every_connector() {
        let art = build_reduction(&unsat_two());
        let cycles = enumerate_cycles(&art.graph, 100_000).unwrap();
        let long = long_cycles(&art, &cycles);
        assert!(!long.is_empty());
        assert!(long.iter().all(|c| c.sign() != SignClass::Negative));
    }

    #[test]
    fn decide_examples() {
        let r = decide_ve01(&unsat_two(), 100_000).unwrap();
        assert!(r.x_equals_v);
        assert_eq!(r.x_size, 8);
        assert_eq!(r.is_satisfiable(), Some(false));
        assert_eq!(r.consistent(), Some(true));

        let r = decide_ve01(&three_clause(), 100_000).unwrap();
        assert!(!r.x_equals_v && r.x_subset_of_v);
        assert_eq!(r.is_satisfiable(), Some(true));
        assert!(r.extras_are_long && !r.extra_cycles.is_empty());
        assert_eq!(r.consistent(), Some(true));
        let text = r.to_text();
        assert!(text.contains("X_equals_V: false\n"));
        assert!(text.contains("sat: true\n"));
        assert!(text.contains("witness_long_cycle: C -1 :"));

        let single = CnfFormula::from_dimacs_clauses(2, &[&[1, 2]]).unwrap();
        let r = decide_ve01(&single, 100_000).unwrap();
        assert_eq!(r.consistent(), Some(true));
    }

    #[test]
    fn degenerate_chains_are_zero_arcs() {
        // x1 never appears negated, x3 never appears at all.
        let f = CnfFormula::from_dimacs_clauses(3, &[&[1, 2], &[1, -2]]).unwrap();
        let art = build_reduction(&f);
        assert_eq!(
            art.degenerate_chains,
            vec![(1, false), (3, true), (3, false)]
        );
        assert_eq!(art.graph.arc_count(), art.expected_arc_count());
        let r = decide_ve01(&f, 100_000).unwrap();
        assert_eq!(r.consistent(), Some(true));
    }

    #[test]
    fn unit_clauses_are_flagged() {
        let f = CnfFormula::from_dimacs_clauses(2, &[&[1], &[-1, 2]]).unwrap();
        let art = build_reduction(&f);
        assert_eq!(art.unit_clauses, vec![0]);
        assert!(enumerate_cycles(&art.graph, 100_000).is_ok());
    }

    #[test]
    fn role_labels() {
        let art = build_reduction(&three_clause());
        let text = art.to_graph_text();
        assert!(text.contains("c role: 1 v0"));
        assert!(text.contains("a[x1@C1]"));
        assert!(WeightedDigraph::parse(&text).is_ok());
        assert_eq!(
            art.node_label(art.connectors[4]).split('=').next(),
            Some("v'1")
        );
    }
}
