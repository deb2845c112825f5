//! Simple directed cycles: enumeration, sign classes, 2-cycles and the
//! decomposition of circulations into cycles.

use std::cmp::Ordering;
use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::graph::{ArcId, ArcVector, GraphError, NodeId, WeightedDigraph};
use crate::rational::{Rational, Q};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CyclesError {
    #[error("more than {cap} items; raise the cycle cap")]
    CapExceeded { cap: usize },
    #[error("not a circulation: flow conservation fails at node {node}")]
    NotACirculation { node: NodeId },
    #[error("negative entry on arc {arc}")]
    NegativeEntry { arc: ArcId },
    #[error("arcs {0:?} do not form a simple directed cycle")]
    NotACycle(Vec<ArcId>),
    #[error("2-cycle ({c1:?}, {c2:?}) is neither edge-disjoint nor a union of three paths")]
    ShapeDichotomy { c1: Vec<ArcId>, c2: Vec<ArcId> },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// A simple directed cycle, stored as its arc sequence rotated to start at
/// the smallest arc id.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Cycle {
    arcs: Vec<ArcId>,
    weight: Rational,
}

impl Cycle {
    /// Validates `arcs` as a closed simple walk of `g` and canonicalizes it.
    pub fn from_arcs(g: &WeightedDigraph, arcs: &[ArcId]) -> Result<Self, CyclesError> {
        let bad = || CyclesError::NotACycle(arcs.to_vec());
        if arcs.is_empty() || arcs.iter().any(|&a| a >= g.arc_count()) {
            return Err(bad());
        }
        let mut seen = BTreeSet::new();
        for (i, &a) in arcs.iter().enumerate() {
            let next = arcs[(i + 1) % arcs.len()];
            if g.arc(a).head != g.arc(next).tail || !seen.insert(g.arc(a).tail) {
                return Err(bad());
            }
        }
        let start = (0..arcs.len()).min_by_key(|&i| arcs[i]).expect("nonempty");
        let mut canon = arcs[start..].to_vec();
        canon.extend_from_slice(&arcs[..start]);
        let weight = g.total_weight(&canon)?;
        Ok(Self {
            arcs: canon,
            weight,
        })
    }

    pub fn arcs(&self) -> &[ArcId] {
        &self.arcs
    }

    /// `|C|`.
    pub fn len(&self) -> usize {
        self.arcs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arcs.is_empty()
    }

    /// `w(C)`.
    pub fn weight(&self) -> &Rational {
        &self.weight
    }

    pub fn sign(&self) -> SignClass {
        classify(self)
    }

    pub fn nodes(&self, g: &WeightedDigraph) -> Vec<NodeId> {
        self.arcs.iter().map(|&a| g.arc(a).tail).collect()
    }

    pub fn arc_set(&self) -> BTreeSet<ArcId> {
        self.arcs.iter().copied().collect()
    }

    pub fn characteristic_vector(&self, g: &WeightedDigraph) -> ArcVector {
        g.characteristic_vector(&self.arcs)
            .expect("cycle arcs are valid")
    }
}

impl PartialOrd for Cycle {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Cycle {
    fn cmp(&self, other: &Self) -> Ordering {
        self.arcs.cmp(&other.arcs)
    }
}

/// `C <weight> : <arc_id> ...`
impl fmt::Display for Cycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "C {} :", Q(&self.weight))?;
        for a in &self.arcs {
            write!(f, " {a}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SignClass {
    Negative,
    Zero,
    Positive,
}

pub fn classify(c: &Cycle) -> SignClass {
    if c.weight.is_negative() {
        SignClass::Negative
    } else if c.weight.is_zero() {
        SignClass::Zero
    } else {
        SignClass::Positive
    }
}

/// Johnson-style circuit search specialised to multigraphs: paths are arc
/// sequences, so parallel arcs give distinct cycles.
struct CircuitSearch<'g> {
    g: &'g WeightedDigraph,
    out: Vec<Vec<ArcId>>,
    start: NodeId,
    blocked: Vec<bool>,
    block_lists: Vec<BTreeSet<NodeId>>,
    path: Vec<ArcId>,
    found: Vec<Vec<ArcId>>,
    cap: usize,
}

impl CircuitSearch<'_> {
    fn unblock(&mut self, v: NodeId) {
        let mut pending = vec![v];
        while let Some(u) = pending.pop() {
            if self.blocked[u] {
                self.blocked[u] = false;
                pending.extend(std::mem::take(&mut self.block_lists[u]));
            }
        }
    }

    fn circuit(&mut self, v: NodeId) -> Result<bool, CyclesError> {
        let mut closed = false;
        self.blocked[v] = true;
        for i in 0..self.out[v].len() {
            let a = self.out[v][i];
            let w = self.g.arc(a).head;
            if w < self.start {
                continue;
            }
            if w == self.start {
                self.path.push(a);
                self.found.push(self.path.clone());
                self.path.pop();
                if self.found.len() > self.cap {
                    return Err(CyclesError::CapExceeded { cap: self.cap });
                }
                closed = true;
            } else if !self.blocked[w] {
                self.path.push(a);
                let sub = self.circuit(w);
                self.path.pop();
                if sub? {
                    closed = true;
                }
            }
        }
        if closed {
            self.unblock(v);
        } else {
            for &a in &self.out[v] {
                let w = self.g.arc(a).head;
                if w >= self.start {
                    self.block_lists[w].insert(v);
                }
            }
        }
        Ok(closed)
    }
}

/// All simple directed cycles of `g`, sorted by canonical arc sequence.
/// Fails once more than `cap` cycles have been found.
pub fn enumerate_cycles(g: &WeightedDigraph, cap: usize) -> Result<Vec<Cycle>, CyclesError> {
    let n = g.node_count();
    let mut search = CircuitSearch {
        g,
        out: g.out_arcs(),
        start: 0,
        blocked: vec![false; n],
        block_lists: vec![BTreeSet::new(); n],
        path: Vec::new(),
        found: Vec::new(),
        cap,
    };
    for s in 0..n {
        search.start = s;
        for v in s..n {
            search.blocked[v] = false;
            search.block_lists[v].clear();
        }
        search.circuit(s)?;
    }
    let mut cycles: Vec<Cycle> = search
        .found
        .iter()
        .map(|arcs| Cycle::from_arcs(g, arcs).expect("search yields simple cycles"))
        .collect();
    cycles.sort();
    Ok(cycles)
}

/// Cycles of `g` split by sign.
#[derive(Debug, Clone, Default)]
pub struct CycleFamilies {
    pub negative: Vec<Cycle>,
    pub zero: Vec<Cycle>,
    pub positive: Vec<Cycle>,
}

impl CycleFamilies {
    pub fn from_cycles(cycles: Vec<Cycle>) -> Self {
        let mut fam = Self::default();
        for c in cycles {
            match classify(&c) {
                SignClass::Negative => fam.negative.push(c),
                SignClass::Zero => fam.zero.push(c),
                SignClass::Positive => fam.positive.push(c),
            }
        }
        fam
    }

    pub fn of(g: &WeightedDigraph, cap: usize) -> Result<Self, CyclesError> {
        enumerate_cycles(g, cap).map(Self::from_cycles)
    }

    pub fn total(&self) -> usize {
        self.negative.len() + self.zero.len() + self.positive.len()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TwoCycleShape {
    /// The two cycles share no arc.
    EdgeDisjoint,
    /// The cycles share one directed path `P1`; `C1 = P1 ∪ P2`, `C2 = P1 ∪ P3`.
    ThreePath,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoCycle {
    pub c1: Cycle,
    pub c2: Cycle,
    pub shape: TwoCycleShape,
    pub mu: Rational,
    pub mu_prime: Rational,
}

impl TwoCycle {
    /// `μ χ(C1) + μ′ χ(C2)`.
    pub fn direction(&self, g: &WeightedDigraph) -> ArcVector {
        let mut v = ArcVector::zeros(g.arc_count());
        v.add_scaled(&self.mu, &self.c1.characteristic_vector(g));
        v.add_scaled(&self.mu_prime, &self.c2.characteristic_vector(g));
        v
    }
}

/// `(μ, μ′)` for a negative cycle `c1` and a positive cycle `c2`.
///
/// Panics if the common denominator `w(C2)|C1| − w(C1)|C2|` is not positive,
/// which happens only when the sign preconditions are violated.
pub fn two_cycle_coefficients(c1: &Cycle, c2: &Cycle) -> (Rational, Rational) {
    let len1 = Rational::from_integer(c1.len().into());
    let len2 = Rational::from_integer(c2.len().into());
    let denom = c2.weight() * &len1 - c1.weight() * &len2;
    assert!(
        denom.is_positive(),
        "2-cycle denominator must be positive (w(C1)={}, w(C2)={})",
        Q(c1.weight()),
        Q(c2.weight())
    );
    (c2.weight() / &denom, -c1.weight() / &denom)
}

fn shared_path_shape(c1: &Cycle, c2: &Cycle) -> Option<TwoCycleShape> {
    let s2 = c2.arc_set();
    let shared: Vec<bool> = c1.arcs().iter().map(|a| s2.contains(a)).collect();
    let k = shared.iter().filter(|&&b| b).count();
    if k == 0 {
        return Some(TwoCycleShape::EdgeDisjoint);
    }
    if k == c1.len() || k == c2.len() {
        return None;
    }
    // The shared arcs must be one contiguous run in both cyclic sequences,
    // in the same order.
    let n = c1.len();
    let begin = (0..n).find(|&i| shared[i] && !shared[(i + n - 1) % n])?;
    let run: Vec<ArcId> = (0..k).map(|j| c1.arcs()[(begin + j) % n]).collect();
    if run.iter().any(|a| !s2.contains(a)) || (0..k).any(|j| !shared[(begin + j) % n]) {
        return None;
    }
    let m = c2.len();
    let pos = c2.arcs().iter().position(|&a| a == run[0])?;
    if (0..k).all(|j| c2.arcs()[(pos + j) % m] == run[j]) {
        Some(TwoCycleShape::ThreePath)
    } else {
        None
    }
}

/// Returns the 2-cycle `(c1, c2)` if `c1` is negative, `c2` is positive and
/// the union of their arcs contains no cycle besides the two.
pub fn is_two_cycle(
    g: &WeightedDigraph,
    c1: &Cycle,
    c2: &Cycle,
) -> Result<Option<TwoCycle>, CyclesError> {
    if classify(c1) != SignClass::Negative || classify(c2) != SignClass::Positive {
        return Ok(None);
    }
    let union: Vec<ArcId> = c1.arc_set().union(&c2.arc_set()).copied().collect();
    let sub = g.subgraph(&union)?;
    let inner = match enumerate_cycles(&sub.graph, 2) {
        Ok(cycles) => cycles,
        Err(CyclesError::CapExceeded { .. }) => return Ok(None),
        Err(e) => return Err(e),
    };
    let found: BTreeSet<BTreeSet<ArcId>> = inner
        .iter()
        .map(|c| c.arcs().iter().map(|&a| sub.arc_origin[a]).collect())
        .collect();
    let expected: BTreeSet<BTreeSet<ArcId>> = [c1.arc_set(), c2.arc_set()].into();
    if found != expected {
        return Ok(None);
    }
    make_two_cycle(c1, c2).map(Some)
}

fn make_two_cycle(c1: &Cycle, c2: &Cycle) -> Result<TwoCycle, CyclesError> {
    let shape = shared_path_shape(c1, c2).ok_or_else(|| CyclesError::ShapeDichotomy {
        c1: c1.arcs().to_vec(),
        c2: c2.arcs().to_vec(),
    })?;
    let (mu, mu_prime) = two_cycle_coefficients(c1, c2);
    Ok(TwoCycle {
        c1: c1.clone(),
        c2: c2.clone(),
        shape,
        mu,
        mu_prime,
    })
}

/// 2-cycles among already enumerated cycle families, ordered by `(C1, C2)`.
///
/// `families` must hold every cycle of `g`: a pair is accepted when no other
/// listed cycle fits inside its union.
pub fn two_cycles_of(
    g: &WeightedDigraph,
    families: &CycleFamilies,
    cap: usize,
) -> Result<Vec<TwoCycle>, CyclesError> {
    let pairs = families
        .negative
        .len()
        .saturating_mul(families.positive.len());
    if pairs > cap {
        return Err(CyclesError::CapExceeded { cap });
    }
    let words = g.arc_count().div_ceil(64);
    let mask = |c: &Cycle| {
        let mut m = vec![0u64; words];
        for &a in c.arcs() {
            m[a / 64] |= 1 << (a % 64);
        }
        m
    };
    let all: Vec<Vec<u64>> = families
        .negative
        .iter()
        .chain(&families.zero)
        .chain(&families.positive)
        .map(mask)
        .collect();
    let neg = &all[..families.negative.len()];
    let pos = &all[families.negative.len() + families.zero.len()..];
    let mut union = vec![0u64; words];
    let mut out = Vec::new();
    for (c1, m1) in families.negative.iter().zip(neg) {
        for (c2, m2) in families.positive.iter().zip(pos) {
            for (u, (a, b)) in union.iter_mut().zip(m1.iter().zip(m2)) {
                *u = a | b;
            }
            let blocked = all
                .iter()
                .any(|m| m != m1 && m != m2 && m.iter().zip(&union).all(|(x, u)| x & !u == 0));
            if !blocked {
                out.push(make_two_cycle(c1, c2)?);
            }
        }
    }
    Ok(out)
}

pub fn enumerate_two_cycles(g: &WeightedDigraph, cap: usize) -> Result<Vec<TwoCycle>, CyclesError> {
    let families = CycleFamilies::of(g, cap)?;
    two_cycles_of(g, &families, cap)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleDecomposition {
    /// `(C, λ_C)` with `λ_C > 0`, in peeling order.
    pub terms: Vec<(Cycle, Rational)>,
}

impl CycleDecomposition {
    /// `Σ λ_C χ(C)`.
    pub fn reconstruct(&self, g: &WeightedDigraph) -> ArcVector {
        let mut v = ArcVector::zeros(g.arc_count());
        for (c, lambda) in &self.terms {
            v.add_scaled(lambda, &c.characteristic_vector(g));
        }
        v
    }
}

/// Node at which `y` violates flow conservation, if any.
pub fn conservation_violation(g: &WeightedDigraph, y: &ArcVector) -> Option<NodeId> {
    let mut balance = vec![Rational::zero(); g.node_count()];
    for (id, arc) in g.arcs().iter().enumerate() {
        balance[arc.tail] += &y[id];
        balance[arc.head] -= &y[id];
    }
    balance.iter().position(|b| !b.is_zero())
}

/// Peels cycles off a nonnegative circulation. Each step takes the support
/// arc with the smallest id, closes it with a shortest support path and
/// subtracts the minimum value along the resulting cycle.
pub fn decompose_circulation(
    g: &WeightedDigraph,
    y: &ArcVector,
) -> Result<CycleDecomposition, CyclesError> {
    if y.dimension() != g.arc_count() {
        return Err(GraphError::DimensionMismatch {
            expected: g.arc_count(),
            actual: y.dimension(),
        }
        .into());
    }
    if let Some(arc) = y.entries().iter().position(|q| q.is_negative()) {
        return Err(CyclesError::NegativeEntry { arc });
    }
    if let Some(node) = conservation_violation(g, y) {
        return Err(CyclesError::NotACirculation { node });
    }
    let out = g.out_arcs();
    let mut residual = y.clone();
    let mut terms = Vec::new();
    while let Some(&first) = residual.support().first() {
        let arc = g.arc(first);
        let mut cycle_arcs = vec![first];
        if arc.head != arc.tail {
            let path = support_path(g, &out, &residual, arc.head, arc.tail)
                .expect("every support arc of a circulation lies on a support cycle");
            cycle_arcs.extend(path);
        }
        let cycle = Cycle::from_arcs(g, &cycle_arcs)?;
        let lambda = cycle
            .arcs()
            .iter()
            .map(|&a| residual[a].clone())
            .min()
            .expect("nonempty cycle");
        for &a in cycle.arcs() {
            residual[a] -= &lambda;
        }
        terms.push((cycle, lambda));
    }
    Ok(CycleDecomposition { terms })
}

/// Shortest path from `from` to `to` using arcs with positive residual,
/// exploring arcs in id order.
fn support_path(
    g: &WeightedDigraph,
    out: &[Vec<ArcId>],
    residual: &ArcVector,
    from: NodeId,
    to: NodeId,
) -> Option<Vec<ArcId>> {
    let mut parent: Vec<Option<ArcId>> = vec![None; g.node_count()];
    let mut seen = vec![false; g.node_count()];
    seen[from] = true;
    let mut queue = VecDeque::from([from]);
    while let Some(v) = queue.pop_front() {
        if v == to {
            let mut path = Vec::new();
            let mut cur = to;
            while cur != from {
                let a = parent[cur].expect("bfs parent");
                path.push(a);
                cur = g.arc(a).tail;
            }
            path.reverse();
            return Some(path);
        }
        for &a in &out[v] {
            let w = g.arc(a).head;
            if !seen[w] && residual[a].is_positive() {
                seen[w] = true;
                parent[w] = Some(a);
                queue.push_back(w);
            }
        }
    }
    None
}

/// `μ|C1| + μ′|C2| = 1` and `μ w(C1) + μ′ w(C2) = 0` with both coefficients
/// positive.
pub fn coefficient_identities_hold(tc: &TwoCycle) -> bool {
    let len1 = Rational::from_integer(tc.c1.len().into());
    let len2 = Rational::from_integer(tc.c2.len().into());
    tc.mu.is_positive()
        && tc.mu_prime.is_positive()
        && &tc.mu * len1 + &tc.mu_prime * len2 == Rational::one()
        && (&tc.mu * tc.c1.weight() + &tc.mu_prime * tc.c2.weight()).is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn graph(n: usize, arcs: &[(usize, usize, i64)]) -> WeightedDigraph {
        WeightedDigraph::from_triples(n, arcs.iter().map(|&(t, h, w)| (t, h, int(w)))).unwrap()
    }

    fn triangle() -> WeightedDigraph {
        graph(3, &[(0, 1, -1), (1, 2, -1), (2, 0, -1)])
    }

    /// Disjoint triangles of total weight -1 (arcs 0..3) and +1 (arcs 3..6).
    fn disjoint_triangles() -> WeightedDigraph {
        graph(
            6,
            &[
                (0, 1, -1),
                (1, 2, 0),
                (2, 0, 0),
                (3, 4, 1),
                (4, 5, 0),
                (5, 3, 0),
            ],
        )
    }

    /// P1 = u->v (0), P2 = v->u (-1), P3 = v->w->u (+1 total).
    fn three_path() -> WeightedDigraph {
        graph(3, &[(0, 1, 0), (1, 0, -1), (1, 2, 1), (2, 0, 0)])
    }

    #[test]
    fn triangle_has_one_cycle() {
        let cycles = enumerate_cycles(&triangle(), 10).unwrap();
        assert_eq!(cycles.len(), 1);
        assert_eq!(cycles[0].len(), 3);
        assert_eq!(cycles[0].weight(), &int(-3));
        assert_eq!(cycles[0].to_string(), "C -3 : 0 1 2");
    }

    #[test]
    fn dag_has_no_cycles() {
        assert!(enumerate_cycles(&graph(3, &[(0, 1, 1), (1, 2, 1)]), 10)
            .unwrap()
            .is_empty());
    }

    #[test]
    fn parallel_arcs_and_self_loops_count() {
        let g = graph(2, &[(0, 1, 1), (0, 1, 2), (1, 0, 0), (1, 1, -5)]);
        let cycles = enumerate_cycles(&g, 10).unwrap();
        let seqs: Vec<&[ArcId]> = cycles.iter().map(Cycle::arcs).collect();
        assert_eq!(seqs, vec![&[0, 2][..], &[1, 2][..], &[3][..]]);
    }

    #[test]
    fn cap_is_enforced() {
        let g = graph(2, &[(0, 1, 1), (0, 1, 2), (1, 0, 0)]);
        assert_eq!(
            enumerate_cycles(&g, 1),
            Err(CyclesError::CapExceeded { cap: 1 })
        );
    }

    #[test]
    fn canonical_rotation() {
        let g = triangle();
        let c = Cycle::from_arcs(&g, &[1, 2, 0]).unwrap();
        assert_eq!(c.arcs(), &[0, 1, 2]);
        assert!(Cycle::from_arcs(&g, &[0, 2]).is_err());
        assert!(Cycle::from_arcs(&g, &[]).is_err());
    }

    #[test]
    fn classification() {
        let t = &enumerate_cycles(&triangle(), 10).unwrap()[0];
        assert_eq!(classify(t), SignClass::Negative);
        let z = graph(3, &[(0, 1, 1), (1, 2, -1), (2, 0, 0)]);
        assert_eq!(
            classify(&enumerate_cycles(&z, 10).unwrap()[0]),
            SignClass::Zero
        );
        let digon =
            WeightedDigraph::from_triples(2, [(0, 1, rat(-1, 2)), (1, 0, rat(-1, 2))]).unwrap();
        let c = &enumerate_cycles(&digon, 10).unwrap()[0];
        assert_eq!(c.weight(), &int(-1));
        assert_eq!(classify(c), SignClass::Negative);
    }

    #[test]
    fn edge_disjoint_two_cycle() {
        let g = disjoint_triangles();
        let fam = CycleFamilies::of(&g, 10).unwrap();
        let tc = is_two_cycle(&g, &fam.negative[0], &fam.positive[0])
            .unwrap()
            .unwrap();
        assert_eq!(tc.shape, TwoCycleShape::EdgeDisjoint);
        assert_eq!(tc.mu, rat(1, 6));
        assert_eq!(tc.mu_prime, rat(1, 6));
        assert!(coefficient_identities_hold(&tc));
        // Order matters: (positive, negative) is not a 2-cycle.
        assert!(is_two_cycle(&g, &fam.positive[0], &fam.negative[0])
            .unwrap()
            .is_none());
    }

    #[test]
    fn three_path_two_cycle() {
        let g = three_path();
        let fam = CycleFamilies::of(&g, 10).unwrap();
        let (c1, c2) = (&fam.negative[0], &fam.positive[0]);
        assert_eq!((c1.len(), c1.weight()), (2, &int(-1)));
        assert_eq!((c2.len(), c2.weight()), (3, &int(1)));
        let tc = is_two_cycle(&g, c1, c2).unwrap().unwrap();
        assert_eq!(tc.shape, TwoCycleShape::ThreePath);
        assert_eq!((tc.mu.clone(), tc.mu_prime.clone()), (rat(1, 5), rat(1, 5)));
        assert_eq!(
            tc.direction(&g),
            ArcVector::from_vec(vec![rat(2, 5), rat(1, 5), rat(1, 5), rat(1, 5)])
        );
    }

    #[test]
    fn edge_disjoint_triangles_sharing_two_nodes_are_not_a_two_cycle() {
        // Negative triangle 0->1->2->0 and positive triangle 1->0->3->1 share
        // nodes 0 and 1; the union also contains 0->1->0.
        let g = graph(
            4,
            &[
                (0, 1, -1),
                (1, 2, -1),
                (2, 0, -1),
                (1, 0, 1),
                (0, 3, 1),
                (3, 1, 1),
            ],
        );
        let neg = Cycle::from_arcs(&g, &[0, 1, 2]).unwrap();
        let pos = Cycle::from_arcs(&g, &[3, 4, 5]).unwrap();
        assert!(is_two_cycle(&g, &neg, &pos).unwrap().is_none());
        let union = g.subgraph(&[0, 1, 2, 3, 4, 5]).unwrap();
        assert!(enumerate_cycles(&union.graph, 100).unwrap().len() > 2);
    }

    #[test]
    fn no_positive_cycle_no_two_cycles() {
        assert!(enumerate_two_cycles(&triangle(), 100).unwrap().is_empty());
    }

    #[test]
    fn decompose_single_cycle() {
        let g = triangle();
        let y = ArcVector::from_vec(vec![rat(1, 3); 3]);
        let d = decompose_circulation(&g, &y).unwrap();
        assert_eq!(d.terms.len(), 1);
        assert_eq!(d.terms[0].0.arcs(), &[0, 1, 2]);
        assert_eq!(d.terms[0].1, rat(1, 3));
    }

    #[test]
    fn decompose_disjoint_digons() {
        let g = graph(4, &[(0, 1, 1), (1, 0, 1), (2, 3, 1), (3, 2, 1)]);
        let y = ArcVector::from_vec(vec![int(1), int(1), int(2), int(2)]);
        let d = decompose_circulation(&g, &y).unwrap();
        let coeffs: Vec<Rational> = d.terms.iter().map(|t| t.1.clone()).collect();
        assert_eq!(coeffs, vec![int(1), int(2)]);
        assert_eq!(d.reconstruct(&g), y);
    }

    #[test]
    fn decompose_three_path_union() {
        let g = three_path();
        let fam = CycleFamilies::of(&g, 10).unwrap();
        let (c1, c2) = (&fam.negative[0], &fam.positive[0]);
        let mut y = c1.characteristic_vector(&g);
        y.add_scaled(&int(1), &c2.characteristic_vector(&g));
        let d = decompose_circulation(&g, &y).unwrap();
        assert_eq!(d.terms.len(), 2);
        assert_eq!(d.reconstruct(&g), y);
        let total: Rational = d.terms.iter().map(|(c, l)| c.weight() * l).sum();
        assert_eq!(total, c1.weight() + c2.weight());
    }

    #[test]
    fn decompose_rejects_non_circulations() {
        let g = triangle();
        let y = ArcVector::from_vec(vec![int(1), int(0), int(0)]);
        assert_eq!(
            decompose_circulation(&g, &y),
            Err(CyclesError::NotACirculation { node: 0 })
        );
        let y = ArcVector::from_vec(vec![int(-1), int(-1), int(-1)]);
        assert_eq!(
            decompose_circulation(&g, &y),
            Err(CyclesError::NegativeEntry { arc: 0 })
        );
    }

    proptest::proptest! {
        #[test]
        fn pair_filter_agrees_with_subgraph_test(
            arcs in proptest::collection::vec((0usize..4, 0usize..4, -3i64..=3), 1..9)
        ) {
            let g = graph(4, &arcs);
            let fam = CycleFamilies::of(&g, 10_000).unwrap();
            let mut slow = Vec::new();
            for c1 in &fam.negative {
                for c2 in &fam.positive {
                    if let Some(tc) = is_two_cycle(&g, c1, c2).unwrap() {
                        slow.push(tc);
                    }
                }
            }
            proptest::prop_assert_eq!(two_cycles_of(&g, &fam, 10_000).unwrap(), slow);
        }
    }
}
