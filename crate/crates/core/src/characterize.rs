//! Vertices and extreme directions of `P(G,w)` built directly from cycles,
//! and the comparison against the constraint-level oracle.
//!
//! * every negative cycle `C` gives the vertex `−χ(C)/w(C)`;
//! * every zero-weight cycle `C` gives the direction `χ(C)/|C|`;
//! * every 2-cycle `(C1, C2)` gives the direction `μ χ(C1) + μ′ χ(C2)`.
//!
//! Directions are normalized to coordinate sum 1, which is how the oracle
//! sees them (as vertices of `P′(G,w)`).

use std::fmt::Write as _;

use num_traits::One;
use thiserror::Error;

use crate::cycles::{self, CycleFamilies, CyclesError, TwoCycle};
use crate::graph::{ArcVector, WeightedDigraph};
use crate::polyhedra::{self, PolyError, VertexSet};
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CharacterizeError {
    #[error(transparent)]
    Cycles(#[from] CyclesError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Enumeration budgets: cycles (and cycle pairs), and oracle supports.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    pub cycles: usize,
    pub oracle: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Self {
            cycles: crate::DEFAULT_CYCLE_CAP,
            oracle: polyhedra::DEFAULT_ORACLE_CAP,
        }
    }
}

pub fn vertices_from_families(g: &WeightedDigraph, families: &CycleFamilies) -> VertexSet {
    let set = VertexSet::from_points(families.negative.iter().map(|c| {
        let scale = -Rational::one() / c.weight();
        c.characteristic_vector(g).scaled(&scale)
    }));
    assert_eq!(
        set.len(),
        families.negative.len(),
        "distinct negative cycles must give distinct vertices"
    );
    set
}

pub fn directions_from_families(
    g: &WeightedDigraph,
    families: &CycleFamilies,
    two_cycles: &[TwoCycle],
) -> VertexSet {
    let zero = families.zero.iter().map(|c| {
        let scale = Rational::one() / Rational::from_integer(c.len().into());
        c.characteristic_vector(g).scaled(&scale)
    });
    let paired = two_cycles.iter().map(|tc| tc.direction(g));
    let set = VertexSet::from_points(zero.chain(paired));
    assert_eq!(
        set.len(),
        families.zero.len() + two_cycles.len(),
        "distinct zero cycles and 2-cycles must give distinct directions"
    );
    set
}

/// `{ −χ(C)/w(C) : C negative }`.
pub fn vertices_from_negative_cycles(
    g: &WeightedDigraph,
    cap: usize,
) -> Result<VertexSet, CyclesError> {
    Ok(vertices_from_families(g, &CycleFamilies::of(g, cap)?))
}

/// Zero-cycle directions together with 2-cycle directions.
pub fn directions_from_cycles(g: &WeightedDigraph, cap: usize) -> Result<VertexSet, CyclesError> {
    let families = CycleFamilies::of(g, cap)?;
    let two = cycles::two_cycles_of(g, &families, cap)?;
    Ok(directions_from_families(g, &families, &two))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Counts {
    pub negative_cycles: usize,
    pub zero_cycles: usize,
    pub positive_cycles: usize,
    pub two_cycles: usize,
    pub vertices: usize,
    pub directions: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharacterizationReport {
    pub vertices_match: bool,
    pub directions_match: bool,
    /// Oracle vertices the cycle formula did not produce.
    pub missing_vertices: Vec<ArcVector>,
    /// Formula vertices the oracle rejected.
    pub extra_vertices: Vec<ArcVector>,
    pub missing_directions: Vec<ArcVector>,
    pub extra_directions: Vec<ArcVector>,
    pub counts: Counts,
    pub polyhedron_empty: bool,
    pub formula_vertices: VertexSet,
    pub formula_directions: VertexSet,
    pub oracle_vertices: VertexSet,
    /// Vertices of `P′`.
    pub oracle_directions: VertexSet,
    pub two_cycles: Vec<TwoCycle>,
}

impl CharacterizationReport {
    pub fn holds(&self) -> bool {
        self.vertices_match && self.directions_match
    }

    /// `key: value` lines.
    pub fn to_text(&self) -> String {
        let c = &self.counts;
        let mut out = String::new();
        let _ = writeln!(out, "vertices_match: {}", self.vertices_match);
        let _ = writeln!(out, "directions_match: {}", self.directions_match);
        let _ = writeln!(out, "polyhedron_empty: {}", self.polyhedron_empty);
        let _ = writeln!(out, "negative_cycles: {}", c.negative_cycles);
        let _ = writeln!(out, "zero_cycles: {}", c.zero_cycles);
        let _ = writeln!(out, "positive_cycles: {}", c.positive_cycles);
        let _ = writeln!(out, "two_cycles: {}", c.two_cycles);
        let _ = writeln!(out, "vertices: {}", c.vertices);
        let _ = writeln!(out, "directions: {}", c.directions);
        for (key, list) in [
            ("missing_vertex", &self.missing_vertices),
            ("extra_vertex", &self.extra_vertices),
            ("missing_direction", &self.missing_directions),
            ("extra_direction", &self.extra_directions),
        ] {
            for v in list {
                let _ = writeln!(out, "{key}: {v}");
            }
        }
        out
    }
}

/// Compares the cycle-built vertex and direction sets with the oracle's, as
/// exact sets.
pub fn verify_theorem1(
    g: &WeightedDigraph,
    caps: Caps,
) -> Result<CharacterizationReport, CharacterizeError> {
    let families = CycleFamilies::of(g, caps.cycles)?;
    let two_cycles = cycles::two_cycles_of(g, &families, caps.cycles)?;
    let formula_vertices = vertices_from_families(g, &families);
    let formula_directions = directions_from_families(g, &families, &two_cycles);

    let oracle_v = polyhedra::oracle_vertices(&polyhedra::build_p(g), caps.oracle)?;
    let oracle_d = polyhedra::oracle_extreme_directions(g, caps.oracle)?;

    let missing_vertices = oracle_v.difference(&formula_vertices);
    let extra_vertices = formula_vertices.difference(&oracle_v);
    let missing_directions = oracle_d.difference(&formula_directions);
    let extra_directions = formula_directions.difference(&oracle_d);

    Ok(CharacterizationReport {
        vertices_match: missing_vertices.is_empty() && extra_vertices.is_empty(),
        directions_match: missing_directions.is_empty() && extra_directions.is_empty(),
        counts: Counts {
            negative_cycles: families.negative.len(),
            zero_cycles: families.zero.len(),
            positive_cycles: families.positive.len(),
            two_cycles: two_cycles.len(),
            vertices: oracle_v.len(),
            directions: oracle_d.len(),
        },
        polyhedron_empty: oracle_v.polyhedron_empty,
        missing_vertices,
        extra_vertices,
        missing_directions,
        extra_directions,
        formula_vertices,
        formula_directions,
        oracle_vertices: oracle_v,
        oracle_directions: oracle_d,
        two_cycles,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyhedra::{build_p, build_p_prime};
    use crate::rational::{int, rat};
    use num_traits::Zero;

    fn graph(n: usize, arcs: &[(usize, usize, i64)]) -> WeightedDigraph {
        WeightedDigraph::from_triples(n, arcs.iter().map(|&(t, h, w)| (t, h, int(w)))).unwrap()
    }

    #[test]
    fn triangle_vertex_formula() {
        let g = graph(3, &[(0, 1, -1), (1, 2, -1), (2, 0, -1)]);
        let vs = vertices_from_negative_cycles(&g, 10).unwrap();
        assert_eq!(vs.points(), &[ArcVector::from_vec(vec![rat(1, 3); 3])]);
        let report = verify_theorem1(&g, Caps::default()).unwrap();
        assert!(report.vertices_match && report.directions_match);
        assert_eq!(report.counts.directions, 0);
    }

    #[test]
    fn gadget_digon_gives_zero_one_vertex() {
        let g = WeightedDigraph::from_triples(2, [(0, 1, rat(-1, 2)), (1, 0, rat(-1, 2))]).unwrap();
        let vs = vertices_from_negative_cycles(&g, 10).unwrap();
        assert_eq!(vs.points(), &[ArcVector::from_vec(vec![int(1), int(1)])]);
    }

    #[test]
    fn no_negative_cycle_no_vertex() {
        let g = graph(2, &[(0, 1, 1), (1, 0, 0)]);
        assert!(vertices_from_negative_cycles(&g, 10).unwrap().is_empty());
    }

    #[test]
    fn zero_cycle_direction() {
        let g = graph(3, &[(0, 1, 1), (1, 2, -1), (2, 0, 0)]);
        let ds = directions_from_cycles(&g, 10).unwrap();
        assert_eq!(ds.points(), &[ArcVector::from_vec(vec![rat(1, 3); 3])]);
    }

    #[test]
    fn disjoint_triangles_direction() {
        let g = graph(
            6,
            &[
                (0, 1, -1),
                (1, 2, 0),
                (2, 0, 0),
                (3, 4, 1),
                (4, 5, 0),
                (5, 3, 0),
            ],
        );
        let ds = directions_from_cycles(&g, 10).unwrap();
        assert_eq!(ds.points(), &[ArcVector::from_vec(vec![rat(1, 6); 6])]);
        assert!(verify_theorem1(&g, Caps::default()).unwrap().holds());
    }

    #[test]
    fn three_path_direction() {
        let g = graph(3, &[(0, 1, 0), (1, 0, -1), (1, 2, 1), (2, 0, 0)]);
        let ds = directions_from_cycles(&g, 10).unwrap();
        let d = &ds.points()[0];
        assert_eq!(
            d,
            &ArcVector::from_vec(vec![rat(2, 5), rat(1, 5), rat(1, 5), rat(1, 5)])
        );
        assert_eq!(d.sum(), int(1));
        assert!(d.weighted_sum(&g).is_zero());
        assert!(build_p_prime(&g).is_vertex(d).unwrap());
        assert!(verify_theorem1(&g, Caps::default()).unwrap().holds());
    }

    #[test]
    fn formula_vertices_are_feasible_and_single_cycle_supported() {
        let g = graph(
            4,
            &[
                (0, 1, -2),
                (1, 0, 1),
                (1, 2, -1),
                (2, 3, 3),
                (3, 1, -3),
                (2, 0, 1),
            ],
        );
        let h = build_p(&g);
        let families = CycleFamilies::of(&g, 100).unwrap();
        for c in &families.negative {
            let v = c
                .characteristic_vector(&g)
                .scaled(&(-Rational::one() / c.weight()));
            assert!(h.check_point(&v).unwrap().is_feasible());
            assert_eq!(v.support(), c.arc_set().into_iter().collect::<Vec<_>>());
        }
        let report = verify_theorem1(&g, Caps::default()).unwrap();
        assert!(report.holds(), "{}", report.to_text());
    }

    #[test]
    fn report_text() {
        let g = graph(3, &[(0, 1, -1), (1, 2, -1), (2, 0, -1)]);
        let text = verify_theorem1(&g, Caps::default()).unwrap().to_text();
        assert!(text.starts_with("vertices_match: true\ndirections_match: true\n"));
        assert!(text.contains("negative_cycles: 1\n"));
    }
}
