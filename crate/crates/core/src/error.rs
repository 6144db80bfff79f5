use thiserror::Error;

/// Errors raised across the crate.
///
/// [`Error::is_hypothesis_violation`] separates the structural refusals
/// (the matrix is valid input but outside the formula's hypotheses, or has no
/// group inverse) from malformed input.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("vertex {vertex} out of range 1..={n}")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("digraph is not simple symmetric: {0}")]
    NotSimpleSymmetric(String),

    #[error("class violation: {0}")]
    ClassViolation(ClassViolation),

    /// `vanishing` lists the hub vertices whose pendant cycle products sum
    /// to zero; it is empty when the failure was detected algebraically.
    #[error("group inverse does not exist{}", fmt_vanishing(.vanishing))]
    NoGroupInverse { vanishing: Vec<usize> },

    #[error("brute-force matching enumeration capped at n={cap}, got n={n}")]
    BruteForceCap { n: usize, cap: usize },

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("generator gave up after {attempts} attempts: {reason}")]
    Generation { attempts: usize, reason: String },

    #[error("invariant violated: {0}")]
    Invariant(String),
}

fn fmt_vanishing(v: &[usize]) -> String {
    if v.is_empty() {
        String::new()
    } else {
        let list: Vec<String> = v.iter().map(|x| x.to_string()).collect();
        format!(" (pendant cycle sum vanishes at vertex {})", list.join(", "))
    }
}

/// Reason a matrix falls outside the hypotheses of the combinatorial formula.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ClassViolation {
    #[error("digraph is not simple symmetric")]
    NotSimpleSymmetric,
    #[error("digraph is not strongly connected")]
    NotStronglyConnected,
    #[error("digraph is not in class D (a non-pendant vertex has no pendant neighbor)")]
    NotInClassD,
    #[error("digraph has no 2-cycles")]
    Degenerate,
}

impl Error {
    pub fn is_hypothesis_violation(&self) -> bool {
        matches!(
            self,
            Error::ClassViolation(_) | Error::NoGroupInverse { .. } | Error::NotSimpleSymmetric(_)
        )
    }

    /// Stable snake_case tag used in machine-readable reports.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::DimensionMismatch(_) => "dimension_mismatch",
            Error::NotSquare { .. } => "not_square",
            Error::VertexOutOfRange { .. } => "vertex_out_of_range",
            Error::NotSimpleSymmetric(_) => "not_simple_symmetric",
            Error::ClassViolation(_) => "class_violation",
            Error::NoGroupInverse { .. } => "no_group_inverse",
            Error::BruteForceCap { .. } => "brute_force_cap",
            Error::Parse { .. } => "parse",
            Error::Generation { .. } => "generation",
            Error::Invariant(_) => "invariant",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
