use thiserror::Error;

/// Errors surfaced by matrix construction, state validation, and the solver
/// pipeline.
#[derive(Debug, Error)]
pub enum Error {
    #[error("bad bipartite split: dimension {dim} does not equal {dim_a} x {dim_b}")]
    BadBipartiteSplit {
        dim: usize,
        dim_a: usize,
        dim_b: usize,
    },
    #[error("dimension mismatch: {0}")]
    DimMismatch(String),
    #[error("non-finite entries")]
    NonFinite,
    #[error("not Hermitian: asymmetry {asymmetry:.3e} exceeds tolerance")]
    NotHermitian { asymmetry: f64 },
    #[error("trace invariant violated: Tr = {trace:.10} must equal 1 within 1e-8")]
    TraceNotOne { trace: f64 },
    #[error("positivity invariant violated: minimum eigenvalue {min_eig:.3e} is below -1e-8")]
    NotPositive { min_eig: f64 },
    #[error("not unitary: |U^H U - I|_F = {deviation:.3e} exceeds 1e-10")]
    NotUnitary { deviation: f64 },
    #[error("empty input: {0}")]
    Empty(String),
    #[error("parameter out of range: {0}")]
    OutOfRange(String),
    #[error("state not useful; no witness exists")]
    NoWitness,
    #[error("zero witness cannot be normalized")]
    ZeroWitness,
}

pub type Result<T> = std::result::Result<T, Error>;
