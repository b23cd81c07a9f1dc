use thiserror::Error;

/// Errors produced anywhere in the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("graded group has torsion in degree {degree}; only torsion-free inputs are supported")]
    TorsionPresent { degree: usize },

    #[error("field coefficients cannot carry torsion (degree {degree})")]
    TorsionWithFieldCoefficients { degree: usize },

    #[error("block in degree {degree} does not preserve the augmentation kernel")]
    KernelNotPreserved { degree: usize },

    #[error("map is not an involution ({0})")]
    NotInvolution(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("invalid signature (p={p}, q={q}, n={n}): {reason}")]
    InvalidSignature { p: usize, q: usize, n: usize, reason: String },

    #[error("{0}")]
    ProjectiveSpaceReferral(String),

    #[error("signature (p={p}, q={q}, n={n}) is not degenerate (n = p + q)")]
    NotDegenerate { p: usize, q: usize, n: usize },

    #[error("signature (p={p}, q={q}, n={n}) is degenerate (n > p + q)")]
    NotNonDegenerate { p: usize, q: usize, n: usize },

    #[error("invariant-factor recursion produced l_{degree} = {value} < 0")]
    Inconsistent { degree: usize, value: i64 },

    #[error("involution fixes vertex {0}")]
    NotFree(String),

    #[error("involution is not regular ({0}); subdivide the complex before taking the quotient")]
    NotRegular(String),

    #[error("map is not simplicial: {0}")]
    NotSimplicial(String),

    #[error("no simplicial antipode for {0}")]
    UnsupportedModel(String),

    #[error("quotient still irregular after {0} barycentric subdivisions")]
    RegularityUnreachable(usize),

    #[error("oracle infeasible: estimated {estimated} simplices exceeds cap {cap}")]
    Infeasible { estimated: u64, cap: u64 },

    #[error("torsion coefficient {0} does not fit in 64 bits")]
    TorsionOverflow(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
