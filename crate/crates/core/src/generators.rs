//! Instance families: the 2-cycle shapes, the family with exponentially many
//! positive cycles but few 2-cycles, and seeded random graphs and formulas.

use num_traits::One;
use thiserror::Error;

use crate::graph::{GraphError, WeightedDigraph};
use crate::rational::{int, Rational};
use crate::reduction::{CnfFormula, Literal};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeneratorError {
    #[error("parameter out of range: {0}")]
    InvalidParameter(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Portable 64-bit linear congruential generator
/// `s ← 6364136223846793005·s + 1442695040888963407 (mod 2^64)`, starting
/// from `s = seed`; each draw advances once and returns the high 32 bits.
/// Bounded draws use `draw mod n`.
#[derive(Debug, Clone)]
pub struct Lcg(u64);

impl Lcg {
    pub const MULTIPLIER: u64 = 6364136223846793005;
    pub const INCREMENT: u64 = 1442695040888963407;

    pub fn new(seed: u64) -> Self {
        Self(seed)
    }

    pub fn next_u32(&mut self) -> u32 {
        self.0 = self
            .0
            .wrapping_mul(Self::MULTIPLIER)
            .wrapping_add(Self::INCREMENT);
        (self.0 >> 32) as u32
    }

    /// Uniform-ish in `0..n`.
    pub fn below(&mut self, n: u32) -> u32 {
        assert!(n > 0);
        self.next_u32() % n
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Fig1Shape {
    EdgeDisjoint,
    ThreePath,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GeneratorSpec {
    Fig3 {
        k: usize,
    },
    Fig1 {
        shape: Fig1Shape,
    },
    Random {
        nodes: usize,
        arcs: usize,
        wmax: u32,
        seed: u64,
    },
}

impl GeneratorSpec {
    pub fn generate(&self) -> Result<WeightedDigraph, GeneratorError> {
        match *self {
            GeneratorSpec::Fig3 { k } => gen_fig3(k),
            GeneratorSpec::Fig1 { shape } => Ok(gen_fig1(shape)),
            GeneratorSpec::Random {
                nodes,
                arcs,
                wmax,
                seed,
            } => gen_random(nodes, arcs, wmax, seed),
        }
    }

    /// Text of the `c family:` comment line.
    pub fn comment(&self) -> String {
        match self {
            GeneratorSpec::Fig3 { k } => format!("family: fig3 k={k}"),
            GeneratorSpec::Fig1 { shape } => format!(
                "family: fig1 shape={}",
                match shape {
                    Fig1Shape::EdgeDisjoint => "edge-disjoint",
                    Fig1Shape::ThreePath => "three-path",
                }
            ),
            GeneratorSpec::Random {
                nodes,
                arcs,
                wmax,
                seed,
            } => format!("family: random nodes={nodes} arcs={arcs} wmax={wmax} seed={seed}"),
        }
    }

    pub fn to_text(&self) -> Result<String, GeneratorError> {
        Ok(self.generate()?.to_text_with_comments(&[self.comment()]))
    }
}

/// A `2k`-cycle `x1 y1 x2 y2 … xk yk` of weight −1 arcs, and for every `i`
/// two paths `xi → zi → yi`, `xi → z′i → yi` with weight `k` on each arc.
///
/// Arc ids: the base cycle first (`2i` is `xi→yi`, `2i+1` is `yi→x(i+1)`),
/// then per `i` the four path arcs.
pub fn gen_fig3(k: usize) -> Result<WeightedDigraph, GeneratorError> {
    if k == 0 {
        return Err(GeneratorError::InvalidParameter(
            "k must be at least 1".into(),
        ));
    }
    let x = |i: usize| 2 * i;
    let y = |i: usize| 2 * i + 1;
    let z = |i: usize| 2 * k + 2 * i;
    let z2 = |i: usize| 2 * k + 2 * i + 1;
    let minus_one = -Rational::one();
    let path_arc = int(k as i64);
    let mut triples = Vec::with_capacity(6 * k);
    for i in 0..k {
        triples.push((x(i), y(i), minus_one.clone()));
        triples.push((y(i), x((i + 1) % k), minus_one.clone()));
    }
    for i in 0..k {
        triples.push((x(i), z(i), path_arc.clone()));
        triples.push((z(i), y(i), path_arc.clone()));
        triples.push((x(i), z2(i), path_arc.clone()));
        triples.push((z2(i), y(i), path_arc.clone()));
    }
    let mut labels = vec![String::new(); 4 * k];
    for i in 0..k {
        labels[x(i)] = format!("x{}", i + 1);
        labels[y(i)] = format!("y{}", i + 1);
        labels[z(i)] = format!("z{}", i + 1);
        labels[z2(i)] = format!("z'{}", i + 1);
    }
    Ok(WeightedDigraph::from_triples(4 * k, triples)?.with_labels(labels))
}

/// The smallest instance of each 2-cycle shape.
///
/// * `EdgeDisjoint`: triangles of total weight −1 (arcs 0 to 2) and +1 (arcs 3 to 5).
/// * `ThreePath`: shared arc `u→v` (0), return arc `v→u` (−1) and return
///   path `v→w→u` (+1 total).
pub fn gen_fig1(shape: Fig1Shape) -> WeightedDigraph {
    let (n, arcs): (usize, &[(usize, usize, i64)]) = match shape {
        Fig1Shape::EdgeDisjoint => (
            6,
            &[
                (0, 1, -1),
                (1, 2, 0),
                (2, 0, 0),
                (3, 4, 1),
                (4, 5, 0),
                (5, 3, 0),
            ],
        ),
        Fig1Shape::ThreePath => (3, &[(0, 1, 0), (1, 0, -1), (1, 2, 1), (2, 0, 0)]),
    };
    WeightedDigraph::from_triples(n, arcs.iter().map(|&(t, h, w)| (t, h, int(w))))
        .expect("static instance")
}

/// A simple digraph (no self-loops or parallel arcs) with `arcs` distinct
/// arcs and integer weights in `[−wmax, wmax]`.
///
/// Each arc draws `tail = below(n)`, `head = below(n)` and is redrawn when it
/// is a loop or a repeat; its weight is `below(2·wmax+1) − wmax`.
pub fn gen_random(
    nodes: usize,
    arcs: usize,
    wmax: u32,
    seed: u64,
) -> Result<WeightedDigraph, GeneratorError> {
    if nodes == 0 {
        return Err(GeneratorError::InvalidParameter(
            "nodes must be positive".into(),
        ));
    }
    if arcs > nodes * (nodes - 1) {
        return Err(GeneratorError::InvalidParameter(format!(
            "{arcs} arcs exceed the {} possible in a simple digraph on {nodes} nodes",
            nodes * (nodes - 1)
        )));
    }
    if nodes > u32::MAX as usize || wmax > u32::MAX / 2 - 1 {
        return Err(GeneratorError::InvalidParameter(
            "parameters too large".into(),
        ));
    }
    let mut rng = Lcg::new(seed);
    let mut used = vec![vec![false; nodes]; nodes];
    let mut triples = Vec::with_capacity(arcs);
    while triples.len() < arcs {
        let tail = rng.below(nodes as u32) as usize;
        let head = rng.below(nodes as u32) as usize;
        if tail == head || used[tail][head] {
            continue;
        }
        used[tail][head] = true;
        let w = i64::from(rng.below(2 * wmax + 1)) - i64::from(wmax);
        triples.push((tail, head, int(w)));
    }
    Ok(WeightedDigraph::from_triples(nodes, triples)?)
}

/// A CNF with `clauses` clauses of 2 or 3 literals over distinct variables
/// (size capped by `variables`), drawn from the same generator.
pub fn gen_random_cnf(
    variables: usize,
    clauses: usize,
    seed: u64,
) -> Result<CnfFormula, GeneratorError> {
    if variables < 2 || clauses == 0 {
        return Err(GeneratorError::InvalidParameter(
            "need at least 2 variables and 1 clause".into(),
        ));
    }
    let mut rng = Lcg::new(seed);
    let mut out = Vec::with_capacity(clauses);
    for _ in 0..clauses {
        let size = (2 + rng.below(2) as usize).min(variables);
        let mut vars: Vec<usize> = Vec::with_capacity(size);
        while vars.len() < size {
            let v = 1 + rng.below(variables as u32) as usize;
            if !vars.contains(&v) {
                vars.push(v);
            }
        }
        out.push(
            vars.into_iter()
                .map(|v| Literal::new(v, rng.below(2) == 0))
                .collect(),
        );
    }
    CnfFormula::new(variables, out).map_err(|e| GeneratorError::InvalidParameter(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cycles::{enumerate_cycles, enumerate_two_cycles, CycleFamilies};

    #[test]
    fn lcg_sequence_is_pinned() {
        let mut rng = Lcg::new(1);
        let first: Vec<u32> = (0..3).map(|_| rng.next_u32()).collect();
        // s1 = a + c, s2 = a·s1 + c, ... computed with wrapping u64 arithmetic.
        let mut s: u64 = 1;
        let expect: Vec<u32> = (0..3)
            .map(|_| {
                s = s.wrapping_mul(Lcg::MULTIPLIER).wrapping_add(Lcg::INCREMENT);
                (s >> 32) as u32
            })
            .collect();
        assert_eq!(first, expect);
    }

    #[test]
    fn random_is_reproducible() {
        let a = gen_random(4, 8, 3, 1).unwrap();
        let b = gen_random(4, 8, 3, 1).unwrap();
        assert_eq!(a.to_text(), b.to_text());
        assert_eq!(a.arc_count(), 8);
        assert!(a.arcs().iter().all(|arc| arc.tail != arc.head));
        assert_ne!(a.to_text(), gen_random(4, 8, 3, 2).unwrap().to_text());
    }

    #[test]
    fn random_degenerate_and_invalid() {
        let g = gen_random(1, 0, 3, 7).unwrap();
        assert_eq!((g.node_count(), g.arc_count()), (1, 0));
        assert!(gen_random(1, 1, 3, 7).is_err());
        assert!(gen_random(0, 0, 3, 7).is_err());
        assert!(gen_random(3, 7, 3, 7).is_err());
    }

    #[test]
    fn fig3_shape() {
        let g = gen_fig3(4).unwrap();
        assert_eq!((g.node_count(), g.arc_count()), (16, 24));
        assert!(gen_fig3(0).is_err());
    }

    #[test]
    fn fig3_counts_small_k() {
        for (k, positive, two) in [(1, 2, 2), (3, 26, 6)] {
            let g = gen_fig3(k).unwrap();
            let fam = CycleFamilies::of(&g, 10_000).unwrap();
            assert_eq!(fam.negative.len(), 1);
            assert_eq!(fam.negative[0].weight(), &int(-2 * k as i64));
            assert_eq!(fam.zero.len(), 0);
            assert_eq!(fam.positive.len(), positive);
            assert_eq!(enumerate_two_cycles(&g, 10_000).unwrap().len(), two);
        }
        assert_eq!(
            enumerate_cycles(&gen_fig3(3).unwrap(), 10_000)
                .unwrap()
                .len(),
            27
        );
    }

    #[test]
    fn fig1_instances() {
        for shape in [Fig1Shape::EdgeDisjoint, Fig1Shape::ThreePath] {
            let g = gen_fig1(shape);
            assert_eq!(enumerate_two_cycles(&g, 100).unwrap().len(), 1);
        }
    }

    #[test]
    fn generator_text_parses_back() {
        for spec in [
            GeneratorSpec::Fig3 { k: 2 },
            GeneratorSpec::Fig1 {
                shape: Fig1Shape::ThreePath,
            },
            GeneratorSpec::Random {
                nodes: 5,
                arcs: 10,
                wmax: 3,
                seed: 9,
            },
        ] {
            let text = spec.to_text().unwrap();
            assert!(text.starts_with("c family: "));
            let parsed = WeightedDigraph::parse(&text).unwrap();
            assert_eq!(parsed.to_text(), spec.generate().unwrap().to_text());
        }
    }

    #[test]
    fn random_cnf_shape() {
        let f = gen_random_cnf(4, 3, 5).unwrap();
        assert_eq!(f.variable_count(), 4);
        assert_eq!(f.clauses().len(), 3);
        for c in f.clauses() {
            assert!((2..=3).contains(&c.len()));
        }
        assert_eq!(f, gen_random_cnf(4, 3, 5).unwrap());
    }
}
