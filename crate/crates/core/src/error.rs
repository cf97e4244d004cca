use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range [0, {universe})")]
    VertexOutOfRange { vertex: u32, universe: u32 },

    #[error("head {head} is not a vertex of its triple {triple:?}")]
    HeadNotInTriple { triple: [u32; 3], head: u32 },

    #[error("triple {triple:?} has a repeated vertex")]
    RepeatedVertex { triple: [u32; 3] },

    #[error("input set is not independent: edge {edge:?} lies inside it")]
    NotIndependent { edge: [u32; 3] },

    #[error("invalid parameters: {}", .0.join("; "))]
    InvalidParams(Vec<String>),

    #[error("unsupported {what} = {got} (limit {limit})")]
    SizeGuard {
        what: &'static str,
        got: u64,
        limit: u64,
    },

    #[error("{what} = {got} is outside the valid range {range}")]
    OutOfDomain {
        what: &'static str,
        got: f64,
        range: &'static str,
    },

    #[error("edge density {0} is infeasible (must lie in [0, 1])")]
    InfeasibleDensity(f64),

    #[error("family size {family_size} is at most C({m}-1,{k}-1) = {threshold}; beta <= 0")]
    BetaNonpositive {
        m: u32,
        k: u32,
        family_size: u64,
        threshold: u64,
    },

    #[error("embedding precondition violated: e(G \\ S) = {edges_outside} < m^2 = {required}")]
    EmbeddingPrecondition { edges_outside: u64, required: u64 },

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("{0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
