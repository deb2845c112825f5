use std::fmt;

use thiserror::Error;

/// Largest formula `brute_force_sat` will enumerate.
pub const MAX_BRUTE_FORCE_VARIABLES: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CnfError {
    #[error("line {line}: malformed header, expected `p cnf <vars> <clauses>`")]
    MalformedHeader { line: usize },
    #[error("missing `p cnf` header")]
    MissingHeader,
    #[error("line {line}: duplicate header")]
    DuplicateHeader { line: usize },
    #[error("line {line}: invalid literal `{token}`")]
    InvalidLiteral { line: usize, token: String },
    #[error("line {line}: variable {variable} outside 1..={max}")]
    VariableOutOfRange {
        line: usize,
        variable: usize,
        max: usize,
    },
    #[error("line {line}: empty clause")]
    EmptyClause { line: usize },
    #[error("last clause is not terminated by 0")]
    UnterminatedClause,
    #[error("header declares {declared} clauses, found {found}")]
    ClauseCount { declared: usize, found: usize },
    #[error("formula has {0} variables; brute force handles at most {MAX_BRUTE_FORCE_VARIABLES}")]
    TooManyVariables(usize),
    #[error("invalid formula: {0}")]
    Invalid(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Literal {
    /// 1-based variable index.
    pub variable: usize,
    pub positive: bool,
}

impl Literal {
    pub fn new(variable: usize, positive: bool) -> Self {
        Self { variable, positive }
    }

    pub fn from_dimacs(value: i64) -> Self {
        Self::new(value.unsigned_abs() as usize, value > 0)
    }

    pub fn is_satisfied_by(&self, assignment: &[bool]) -> bool {
        assignment[self.variable - 1] == self.positive
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.positive {
            write!(f, "x{}", self.variable)
        } else {
            write!(f, "-x{}", self.variable)
        }
    }
}

pub type Clause = Vec<Literal>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CnfFormula {
    variable_count: usize,
    clauses: Vec<Clause>,
}

impl CnfFormula {
    pub fn new(variable_count: usize, clauses: Vec<Clause>) -> Result<Self, CnfError> {
        if variable_count == 0 {
            return Err(CnfError::Invalid(
                "at least one variable is required".into(),
            ));
        }
        for (j, clause) in clauses.iter().enumerate() {
            if clause.is_empty() {
                return Err(CnfError::Invalid(format!("clause {} is empty", j + 1)));
            }
            if let Some(l) = clause
                .iter()
                .find(|l| l.variable == 0 || l.variable > variable_count)
            {
                return Err(CnfError::Invalid(format!(
                    "clause {} uses variable {} outside 1..={variable_count}",
                    j + 1,
                    l.variable
                )));
            }
        }
        Ok(Self {
            variable_count,
            clauses,
        })
    }

    /// Builds a formula from DIMACS-style signed integers.
    pub fn from_dimacs_clauses(
        variable_count: usize,
        clauses: &[&[i64]],
    ) -> Result<Self, CnfError> {
        Self::new(
            variable_count,
            clauses
                .iter()
                .map(|c| c.iter().map(|&v| Literal::from_dimacs(v)).collect())
                .collect(),
        )
    }

    pub fn variable_count(&self) -> usize {
        self.variable_count
    }

    pub fn clauses(&self) -> &[Clause] {
        &self.clauses
    }

    /// `Σ_j |C_j|`.
    pub fn occurrence_count(&self) -> usize {
        self.clauses.iter().map(Vec::len).sum()
    }

    pub fn is_satisfied_by(&self, assignment: &[bool]) -> bool {
        self.clauses
            .iter()
            .all(|c| c.iter().any(|l| l.is_satisfied_by(assignment)))
    }

    pub fn to_dimacs(&self) -> String {
        let mut out = format!("p cnf {} {}\n", self.variable_count, self.clauses.len());
        for c in &self.clauses {
            for l in c {
                let v = l.variable as i64;
                out.push_str(&format!("{} ", if l.positive { v } else { -v }));
            }
            out.push_str("0\n");
        }
        out
    }
}

impl fmt::Display for CnfFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (j, c) in self.clauses.iter().enumerate() {
            if j > 0 {
                f.write_str(" & ")?;
            }
            f.write_str("(")?;
            for (i, l) in c.iter().enumerate() {
                if i > 0 {
                    f.write_str(" | ")?;
                }
                write!(f, "{l}")?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

/// Parses DIMACS CNF. Clauses may span lines; a line starting with `%`
/// ends the input.
pub fn parse_dimacs_cnf(text: &str) -> Result<CnfFormula, CnfError> {
    let mut header: Option<(usize, usize)> = None;
    let mut clauses: Vec<Clause> = Vec::new();
    let mut current: Clause = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        if line.starts_with('%') {
            break;
        }
        if line.starts_with('p') {
            if header.is_some() {
                return Err(CnfError::DuplicateHeader { line: line_no });
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            let parsed = match fields.as_slice() {
                ["p", "cnf", v, c] => v.parse().ok().zip(c.parse().ok()),
                _ => None,
            };
            header = Some(parsed.ok_or(CnfError::MalformedHeader { line: line_no })?);
            continue;
        }
        let (vars, _) = header.ok_or(CnfError::MissingHeader)?;
        for token in line.split_whitespace() {
            let value: i64 = token.parse().map_err(|_| CnfError::InvalidLiteral {
                line: line_no,
                token: token.to_string(),
            })?;
            if value == 0 {
                if current.is_empty() {
                    return Err(CnfError::EmptyClause { line: line_no });
                }
                clauses.push(std::mem::take(&mut current));
                continue;
            }
            let lit = Literal::from_dimacs(value);
            if lit.variable > vars {
                return Err(CnfError::VariableOutOfRange {
                    line: line_no,
                    variable: lit.variable,
                    max: vars,
                });
            }
            current.push(lit);
        }
    }
    let (vars, declared) = header.ok_or(CnfError::MissingHeader)?;
    if !current.is_empty() {
        return Err(CnfError::UnterminatedClause);
    }
    if declared != clauses.len() {
        return Err(CnfError::ClauseCount {
            declared,
            found: clauses.len(),
        });
    }
    CnfFormula::new(vars, clauses)
}

/// Exhaustive truth-table search. Assignments are tried in increasing order
/// of the bit mask with bit `i` holding `x_{i+1}`; the first satisfying one
/// is returned.
pub fn brute_force_sat(f: &CnfFormula) -> Result<Option<Vec<bool>>, CnfError> {
    let n = f.variable_count();
    if n > MAX_BRUTE_FORCE_VARIABLES {
        return Err(CnfError::TooManyVariables(n));
    }
    let mut assignment = vec![false; n];
    for mask in 0u32..(1u32 << n) {
        for (i, a) in assignment.iter_mut().enumerate() {
            *a = mask >> i & 1 == 1;
        }
        if f.is_satisfied_by(&assignment) {
            return Ok(Some(assignment));
        }
    }
    Ok(None)
}
