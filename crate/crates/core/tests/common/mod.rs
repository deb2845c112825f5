#![allow(dead_code)]

use negflow_core::generators::{gen_fig1, gen_fig3, gen_random, gen_random_cnf, Fig1Shape};
use negflow_core::reduction::{Clause, CnfFormula, Literal};
use negflow_core::WeightedDigraph;

/// Parameters of the random graph for `seed`.
pub fn random_params(seed: u64) -> (usize, usize) {
    let nodes = 4 + (seed % 3) as usize;
    let arcs = (6 + (seed % 7) as usize).min(nodes * (nodes - 1));
    (nodes, arcs)
}

pub fn random_graph(seed: u64) -> WeightedDigraph {
    let (nodes, arcs) = random_params(seed);
    gen_random(nodes, arcs, 3, seed).expect("valid parameters")
}

/// Random graphs for seeds `1..=count`, then both `gen_fig1` shapes and
/// `gen_fig3(k)` for `k = 1..=max_k`.
pub fn graph_corpus(count: u64, max_k: usize) -> Vec<(String, WeightedDigraph)> {
    let mut out: Vec<(String, WeightedDigraph)> = (1..=count)
        .map(|s| (format!("random seed {s}"), random_graph(s)))
        .collect();
    out.push((
        "fig1 edge-disjoint".into(),
        gen_fig1(Fig1Shape::EdgeDisjoint),
    ));
    out.push(("fig1 three-path".into(), gen_fig1(Fig1Shape::ThreePath)));
    for k in 1..=max_k {
        out.push((format!("fig3 k={k}"), gen_fig3(k).unwrap()));
    }
    out
}

/// Every clause of 2 or 3 literals over distinct variables in `1..=n`.
fn all_clauses(n: usize) -> Vec<Clause> {
    let mut out = Vec::new();
    for size in 2..=3.min(n) {
        for vars in subsets(n, size) {
            for signs in 0..(1u32 << size) {
                out.push(
                    vars.iter()
                        .enumerate()
                        .map(|(i, &v)| Literal::new(v + 1, signs >> i & 1 == 0))
                        .collect(),
                );
            }
        }
    }
    out
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Every formula of 1 to 3 distinct clauses over `n ∈ {2, 3}` variables,
/// followed by ten random 4-variable formulas.
pub fn cnf_corpus() -> Vec<CnfFormula> {
    let mut out = Vec::new();
    for n in 2..=3 {
        let clauses = all_clauses(n);
        for m in 1..=3 {
            for pick in subsets(clauses.len(), m) {
                let chosen = pick.iter().map(|&i| clauses[i].clone()).collect();
                out.push(CnfFormula::new(n, chosen).unwrap());
            }
        }
    }
    for seed in 1..=10 {
        out.push(gen_random_cnf(4, 3, seed).unwrap());
    }
    out
}

/// Formulas beyond the corpus that include unsatisfiable ones: every set of
/// four distinct 2-literal clauses over three variables, and one 5-clause
/// unsatisfiable formula mixing clause sizes.
pub fn cnf_supplement() -> Vec<CnfFormula> {
    let pairs: Vec<Clause> = all_clauses(3)
        .into_iter()
        .filter(|c| c.len() == 2)
        .collect();
    let mut out: Vec<CnfFormula> = subsets(pairs.len(), 4)
        .into_iter()
        .map(|pick| CnfFormula::new(3, pick.iter().map(|&i| pairs[i].clone()).collect()).unwrap())
        .collect();
    out.push(
        CnfFormula::from_dimacs_clauses(
            3,
            &[&[1, 2], &[-1, 2], &[1, -2], &[-1, -2, 3], &[-1, -2, -3]],
        )
        .unwrap(),
    );
    out
}

/// `(x1 ∨ x2 ∨ ¬x3) ∧ (x1 ∨ ¬x2 ∨ x3) ∧ (¬x1 ∨ x2 ∨ ¬x3)`.
pub fn three_clause_formula() -> CnfFormula {
    CnfFormula::from_dimacs_clauses(3, &[&[1, 2, -3], &[1, -2, 3], &[-1, 2, -3]]).unwrap()
}
