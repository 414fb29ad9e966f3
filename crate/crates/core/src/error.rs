use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid document: {0}")]
    Document(String),
    #[error("duplicate id `{0}`")]
    DuplicateId(String),
    #[error("edge `{edge}` references unknown vertex `{vertex}`")]
    UnknownVertex { edge: String, vertex: String },
    #[error("unknown vertex `{0}`")]
    UnknownVertexId(String),
    #[error("unknown letter `{0}`")]
    UnknownLetter(String),
    #[error("graph has no edges")]
    NoEdges,
    #[error("{0} vertices exceed the limit of 64")]
    TooManyVertices(usize),
    #[error("input too large: {0}")]
    TooLarge(String),
    #[error("family is not accommodating")]
    NotAccommodating,
    #[error("family is not closed under relative complements")]
    NoComplements,
    #[error("family is not weakly left-resolving")]
    NotWeaklyLeftResolving,
    #[error("graph is not left-resolving")]
    NotLeftResolving,
    #[error("family is not the full power set")]
    NotPowerSet,
    #[error("invalid semigroup element: {0}")]
    InvalidElement(String),
    #[error("element is not an idempotent")]
    NotIdempotent,
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("assignment is not filter-consistent: {0}")]
    Inconsistent(String),
}
