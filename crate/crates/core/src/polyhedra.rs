//! H-representations of the negative-weight flow polyhedron `P(G,w)` and of
//! the direction polytope `P′(G,w)`, plus a brute-force vertex oracle that
//! works from the constraint system alone.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::graph::{ArcId, ArcVector, GraphError, WeightedDigraph};
use crate::linalg::{self, EchelonBasis, Solution};
use crate::rational::{Rational, Q};

/// Default budget for the oracle: candidate supports examined.
pub const DEFAULT_ORACLE_CAP: usize = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("oracle examined more than {cap} candidate supports; raise the oracle cap")]
    CapExceeded { cap: usize },
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },
    #[error("feasible polyhedron without a vertex: it is not pointed")]
    NotPointed,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Equality {
    pub label: String,
    pub coefficients: ArcVector,
    pub rhs: Rational,
}

/// `{ y ≥ 0 : a_i · y = b_i for every row }`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HRep {
    pub dimension: usize,
    pub equalities: Vec<Equality>,
}

fn flow_rows(g: &WeightedDigraph) -> Vec<Equality> {
    let mut rows: Vec<ArcVector> = vec![ArcVector::zeros(g.arc_count()); g.node_count()];
    for (id, arc) in g.arcs().iter().enumerate() {
        rows[arc.tail][id] += Rational::one();
        rows[arc.head][id] -= Rational::one();
    }
    rows.into_iter()
        .enumerate()
        .map(|(u, coefficients)| Equality {
            label: format!("F{}", u + 1),
            coefficients,
            rhs: Rational::zero(),
        })
        .collect()
}

fn weight_row(g: &WeightedDigraph, rhs: Rational) -> Equality {
    Equality {
        label: "N".into(),
        coefficients: ArcVector::from_vec(g.arcs().iter().map(|a| a.weight.clone()).collect()),
        rhs,
    }
}

/// Flow conservation at every node and `Σ w_e y_e = −1`.
pub fn build_p(g: &WeightedDigraph) -> HRep {
    let mut equalities = flow_rows(g);
    equalities.push(weight_row(g, -Rational::one()));
    HRep {
        dimension: g.arc_count(),
        equalities,
    }
}

/// Flow conservation, `Σ w_e y_e = 0` and `Σ y_e = 1`.
pub fn build_p_prime(g: &WeightedDigraph) -> HRep {
    let mut equalities = flow_rows(g);
    equalities.push(weight_row(g, Rational::zero()));
    equalities.push(Equality {
        label: "N'".into(),
        coefficients: ArcVector::from_vec(vec![Rational::one(); g.arc_count()]),
        rhs: Rational::one(),
    });
    HRep {
        dimension: g.arc_count(),
        equalities,
    }
}

impl HRep {
    fn matrix(&self) -> (Vec<Vec<Rational>>, Vec<Rational>) {
        self.equalities
            .iter()
            .map(|e| (e.coefficients.entries().to_vec(), e.rhs.clone()))
            .unzip()
    }

    /// `eq <rhs> : <coef> ...` per row, then `nonneg all`.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for e in &self.equalities {
            let _ = write!(out, "eq {} :", Q(&e.rhs));
            for c in e.coefficients.entries() {
                let _ = write!(out, " {}", Q(c));
            }
            out.push('\n');
        }
        out.push_str("nonneg all\n");
        out
    }

    fn check_dimension(&self, y: &ArcVector) -> Result<(), PolyError> {
        if y.dimension() != self.dimension {
            return Err(PolyError::DimensionMismatch {
                expected: self.dimension,
                actual: y.dimension(),
            });
        }
        Ok(())
    }

    /// Exact membership test with a list of violated constraints.
    pub fn check_point(&self, y: &ArcVector) -> Result<FeasibilityReport, PolyError> {
        self.check_dimension(y)?;
        let mut violations = Vec::new();
        for (index, e) in self.equalities.iter().enumerate() {
            let lhs: Rational = e
                .coefficients
                .entries()
                .iter()
                .zip(y.entries())
                .map(|(a, x)| a * x)
                .sum();
            if lhs != e.rhs {
                violations.push(Violation::Equality {
                    index,
                    label: e.label.clone(),
                });
            }
        }
        for (arc, q) in y.entries().iter().enumerate() {
            if q.is_negative() {
                violations.push(Violation::Negative { arc });
            }
        }
        Ok(FeasibilityReport { violations })
    }

    /// Rank of the constraints tight at `y`: every equality plus `y_e ≥ 0`
    /// for each zero coordinate.
    pub fn tight_rank(&self, y: &ArcVector) -> Result<usize, PolyError> {
        self.check_dimension(y)?;
        let (mut rows, _) = self.matrix();
        for (e, q) in y.entries().iter().enumerate() {
            if q.is_zero() {
                let mut unit = vec![Rational::zero(); self.dimension];
                unit[e] = Rational::one();
                rows.push(unit);
            }
        }
        Ok(linalg::rank(&rows))
    }

    /// Feasible with tight constraints of full rank.
    pub fn is_vertex(&self, y: &ArcVector) -> Result<bool, PolyError> {
        Ok(self.check_point(y)?.is_feasible() && self.tight_rank(y)? == self.dimension)
    }

    /// Some feasible point, found by exact phase-one simplex.
    pub fn feasible_point(&self) -> Option<ArcVector> {
        let (a, b) = self.matrix();
        linalg::nonnegative_feasible_point(&a, &b, self.dimension).map(ArcVector::from_vec)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    Equality { index: usize, label: String },
    Negative { arc: ArcId },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FeasibilityReport {
    pub violations: Vec<Violation>,
}

impl FeasibilityReport {
    pub fn is_feasible(&self) -> bool {
        self.violations.is_empty()
    }
}

pub fn is_feasible_point(h: &HRep, y: &ArcVector) -> Result<FeasibilityReport, PolyError> {
    h.check_point(y)
}

/// A deduplicated, sorted set of points.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct VertexSet {
    points: Vec<ArcVector>,
    /// Set by the oracle when the polyhedron has no feasible point at all.
    pub polyhedron_empty: bool,
}

impl VertexSet {
    pub fn from_points(points: impl IntoIterator<Item = ArcVector>) -> Self {
        let points: BTreeSet<ArcVector> = points.into_iter().collect();
        Self {
            points: points.into_iter().collect(),
            polyhedron_empty: false,
        }
    }

    pub fn points(&self) -> &[ArcVector] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains(&self, y: &ArcVector) -> bool {
        self.points.binary_search(y).is_ok()
    }

    /// Points of `self` not in `other`.
    pub fn difference(&self, other: &VertexSet) -> Vec<ArcVector> {
        self.points
            .iter()
            .filter(|p| !other.contains(p))
            .cloned()
            .collect()
    }

    /// One line per point, `<tag> (q,q,...)`.
    pub fn to_text(&self, tag: &str) -> String {
        self.points.iter().map(|p| format!("{tag} {p}\n")).collect()
    }

    /// Inverse of [`VertexSet::to_text`]; other tags and comments are skipped.
    pub fn parse(text: &str, tag: &str) -> Result<Self, GraphError> {
        let mut points = Vec::new();
        for (idx, line) in text.lines().enumerate() {
            let line = line.trim();
            let Some(rest) = line.strip_prefix(tag).filter(|r| r.starts_with(' ')) else {
                continue;
            };
            let p = ArcVector::parse_tuple(rest).map_err(|e| match e {
                GraphError::Parse { message, .. } => GraphError::Parse {
                    line: idx + 1,
                    message,
                },
                other => other,
            })?;
            points.push(p);
        }
        Ok(Self::from_points(points))
    }
}

struct SupportSearch<'a> {
    columns: Vec<Vec<num_bigint::BigInt>>,
    rows: &'a [Vec<Rational>],
    rhs: &'a [Rational],
    basis: EchelonBasis,
    support: Vec<ArcId>,
    examined: usize,
    cap: usize,
    found: Vec<ArcVector>,
    dimension: usize,
}

impl SupportSearch<'_> {
    /// Visits every support with linearly independent constraint columns.
    /// Dependent supports never give a unique solution, nor do their
    /// supersets.
    fn visit(&mut self, next: ArcId) -> Result<(), PolyError> {
        self.examined += 1;
        if self.examined > self.cap {
            return Err(PolyError::CapExceeded { cap: self.cap });
        }
        self.try_support();
        for e in next..self.dimension {
            if self.basis.try_push(self.columns[e].clone()) {
                self.support.push(e);
                let r = self.visit(e + 1);
                self.support.pop();
                self.basis.pop();
                r?;
            }
        }
        Ok(())
    }

    fn try_support(&mut self) {
        let sub: Vec<Vec<Rational>> = self
            .rows
            .iter()
            .map(|row| self.support.iter().map(|&e| row[e].clone()).collect())
            .collect();
        if let Solution::Unique(x) = linalg::solve(&sub, self.rhs, self.support.len()) {
            if x.iter().all(Signed::is_positive) {
                let mut y = ArcVector::zeros(self.dimension);
                for (&e, q) in self.support.iter().zip(x) {
                    y[e] = q;
                }
                self.found.push(y);
            }
        }
    }
}

/// All vertices of `h`, computed from the definition: for each support `S`,
/// solve the equalities with `y_e = 0` off `S` and keep unique, strictly
/// positive solutions.
pub fn oracle_vertices(h: &HRep, cap: usize) -> Result<VertexSet, PolyError> {
    let (rows, rhs) = h.matrix();
    let mut search = SupportSearch {
        columns: linalg::integer_columns(&rows, h.dimension),
        rows: &rows,
        rhs: &rhs,
        basis: EchelonBasis::new(),
        support: Vec::new(),
        examined: 0,
        cap,
        found: Vec::new(),
        dimension: h.dimension,
    };
    search.visit(0)?;
    let mut set = VertexSet::from_points(search.found);
    set.polyhedron_empty = h.feasible_point().is_none();
    // Nonnegativity rules out lines, so feasibility forces a vertex.
    if set.is_empty() && !set.polyhedron_empty {
        return Err(PolyError::NotPointed);
    }
    Ok(set)
}

/// Vertices of `P′(G,w)`, i.e. the normalized extreme directions of `P(G,w)`.
pub fn oracle_extreme_directions(g: &WeightedDigraph, cap: usize) -> Result<VertexSet, PolyError> {
    oracle_vertices(&build_p_prime(g), cap)
}
