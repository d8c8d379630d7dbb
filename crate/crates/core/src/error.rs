use thiserror::Error;

/// Errors produced by the analysis engine.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("empty Pauli string")]
    EmptyPauli,
    #[error("invalid Pauli letter {letter:?} at position {position}")]
    InvalidPauliLetter { letter: char, position: usize },
    #[error("{n} qubits requested, at most {max} supported")]
    TooManyQubits { n: usize, max: usize },
    #[error("qubit count mismatch: {left} vs {right}")]
    SizeMismatch { left: usize, right: usize },
    #[error("invalid support: {0}")]
    InvalidSupport(String),

    #[error("no generators given")]
    NoGenerators,
    #[error("generators have mixed lengths ({first} and {other})")]
    MixedLengths { first: usize, other: usize },
    #[error("{r} generators on {n} qubits")]
    TooManyGenerators { r: usize, n: usize },
    #[error("generators g_{0} and g_{1} anticommute")]
    NonCommuting(usize, usize),
    #[error("generators are dependent: product of g_{{{}}} is the identity", join_indices(.0))]
    DependentGenerators(Vec<usize>),
    #[error("operator {0} is not in the centralizer of the stabilizer")]
    NotInCentralizer(String),
    #[error("search over {k} logical qubits is too large (limit {max})")]
    TooManyLogicalQubits { k: usize, max: usize },
    #[error("unknown objective {0:?} (expected lex or p=<value>)")]
    UnknownObjective(String),
    #[error("code has no logical qubits")]
    NoLogicalQubits,
    #[error("{what} needs n <= {max}, code has n = {n}")]
    CodeTooLarge { what: &'static str, n: usize, max: usize },

    #[error("invalid syndrome {0:?}")]
    InvalidSyndrome(String),
    #[error("syndrome {syndrome} is not attainable from support {support}")]
    NotAttainable { syndrome: String, support: String },
    #[error("support of size {size} is too large to materialize (limit {max})")]
    MaterializationTooLarge { size: usize, max: usize },

    #[error("correction table is missing {count} syndrome(s), first {first}")]
    MissingSyndromes { count: usize, first: String },
    #[error("duplicate entry for syndrome {0}")]
    DuplicateSyndrome(String),
    #[error("entry for syndrome {expected} is {pauli}, whose syndrome is {actual}")]
    InconsistentEntry { expected: String, pauli: String, actual: String },
    #[error("entry for the zero syndrome is {0}, which is not a stabilizer element")]
    NontrivialZeroEntry(String),
    #[error("unknown builtin code {0:?} (expected five, steane or shor)")]
    UnknownBuiltin(String),

    #[error("probability {0} outside [0, 1]")]
    ProbabilityOutOfRange(f64),
    #[error("syndrome {0} is measured with probability zero")]
    ZeroProbabilitySyndrome(String),
    #[error("rational arithmetic overflow")]
    Overflow,

    #[error("state has zero norm")]
    ZeroNormState,
    #[error("projection onto the code space failed after {0} attempts")]
    ProjectionFailed(usize),

    #[error("{path}: {message}")]
    Io { path: String, message: String },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

fn join_indices(v: &[usize]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}

pub type Result<T> = std::result::Result<T, Error>;
