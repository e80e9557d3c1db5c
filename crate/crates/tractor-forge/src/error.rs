//! Engine-wide error type.
//!
//! Every fallible operation in the engine funnels into [`Error`]; the CLI maps
//! any `Err` to exit code 2 and check failures (which are *not* errors) to
//! exit code 1.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error)]
pub enum Error {
    /// Jet division (or reciprocal/log) where the divisor's constant term vanishes.
    #[error("division by a jet whose constant term is zero (|c0| = {magnitude:.3e})")]
    DivisionByZeroConstant { magnitude: f64 },

    /// A derivative chain consumed more orders than the seed jet carried.
    #[error("jet derivative requested below validity order zero ({context})")]
    DepthExceeded { context: String },

    /// Surface-expression parse failure, with the byte offset of the offending
    /// token and the set of token classes that would have been legal there.
    #[error("syntax error at byte {offset}: found {found:?}, expected {}", expected.join(" | "))]
    SyntaxError {
        offset: usize,
        found: String,
        expected: Vec<&'static str>,
    },

    /// An identifier in a surface expression that the active chart does not declare.
    #[error("unknown identifier {name:?} in expression (declared: {declared})")]
    UnknownIdentifier { name: String, declared: String },

    /// Tensor-slot incompatibility in contraction, addition, or index motion.
    #[error("tensor slot mismatch in {op}: {detail}")]
    SlotMismatch { op: &'static str, detail: String },

    /// A metric whose condition-number estimate is beyond use for index motion.
    #[error("singular metric: condition estimate {cond:.3e} exceeds 1e12")]
    SingularMetric { cond: f64 },

    /// Hypersurface sampling hit a point where the defining function's gradient vanishes.
    #[error("critical point of the defining function near ({})", point.iter().map(|x| format!("{x:.4}")).collect::<Vec<_>>().join(", "))]
    CriticalPoint { point: Vec<f64> },

    /// The Levi form (or another structure that must be definite/nondegenerate) degenerates.
    #[error("degenerate structure: {detail}")]
    Degenerate { detail: String },

    /// A linear system that should have full rank does not.
    #[error("rank-deficient system while {context}")]
    RankDeficient { context: String },

    /// A frame or coefficient matrix that must be invertible is numerically singular.
    #[error("singular system while {context} (pivot {pivot:.3e})")]
    SingularSystem { context: String, pivot: f64 },

    /// A density or scale that must be nonvanishing hits zero.
    #[error("zero scale encountered while {context}")]
    ZeroScale { context: String },

    /// A field on the circle bundle that was asked to descend but is not
    /// invariant along the fibers.
    #[error("field is not projectable to the base: fiber-invariance residual {residual:.3e}")]
    NotProjectable { residual: f64 },

    /// A vector field submitted for symmetry decomposition that does not
    /// satisfy the conformal Killing equation.
    #[error("field is not a conformal Killing field: equation residual {residual:.3e}")]
    NotKilling { residual: f64 },

    /// Bad CLI arguments or configuration file contents.
    #[error("configuration error: {detail}")]
    ConfigError { detail: String },

    /// Unknown manifold name or malformed manifold arguments.
    #[error("manifold error: {detail}")]
    ManifoldError { detail: String },
}

impl Error {
    pub fn depth(context: impl Into<String>) -> Self {
        Error::DepthExceeded { context: context.into() }
    }

    pub fn degenerate(detail: impl Into<String>) -> Self {
        Error::Degenerate { detail: detail.into() }
    }

    pub fn config(detail: impl Into<String>) -> Self {
        Error::ConfigError { detail: detail.into() }
    }

    pub fn manifold(detail: impl Into<String>) -> Self {
        Error::ManifoldError { detail: detail.into() }
    }
}
