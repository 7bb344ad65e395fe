use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed input: {0}")]
    MalformedInput(String),

    #[error("malformed input at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("empty complex: no facets given")]
    EmptyComplex,

    #[error("face {0} is not in the complex")]
    FaceNotFound(String),

    #[error("vertex {0} already belongs to the complex")]
    VertexCollision(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("not a pseudomanifold: ridge {ridge} lies in {count} facets")]
    NotPseudomanifold { ridge: String, count: usize },

    #[error("not a shelling: step {step} meets the earlier facets in {intersection}")]
    NotShelling { step: usize, intersection: String },

    #[error("criterion failed: {0}")]
    CriterionFailed(String),

    #[error("construction invariant violated: {0}")]
    ConstructionInvariant(String),

    #[error("gluing error: {0}")]
    Gluing(String),

    #[error("illegal handle addition: {vertex} and its image share a neighbor")]
    HandleIllegal { vertex: String },

    #[error("symmetry check failed for {generator}: facet {facet} is not mapped to a facet")]
    Symmetry { generator: String, facet: String },

    #[error("search budget of {0} nodes exceeded")]
    BudgetExceeded(u64),

    #[error("group closure exceeded the cap of {0} elements")]
    CapExceeded(usize),

    #[error("i/o error on {path}: {message}")]
    Io { path: String, message: String },

    #[error("unsupported: {0}")]
    Unsupported(String),
}

impl Error {
    /// Budget and cap overruns: the question was not decided.
    pub fn is_resource_limit(&self) -> bool {
        matches!(self, Error::BudgetExceeded(_) | Error::CapExceeded(_))
    }
}
