use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("group models differ: {0}")]
    GroupMismatch(String),

    #[error("invalid group model: {0}")]
    BadGroup(String),

    #[error("invalid group element: {0}")]
    BadElement(String),

    #[error("matrix entry ({row},{col}) breaks the symmetry contract: {detail}")]
    NotHermitian {
        row: usize,
        col: usize,
        detail: String,
    },

    #[error("operation needs a +1-symmetric form, got parity -1")]
    SkewForm,

    #[error("torus evaluation needs a quadrature spec")]
    MissingQuadrature,

    #[error("unsupported group model here: {0}")]
    UnsupportedModel(String),

    #[error("invalid group map: {0}")]
    BadMap(String),

    #[error("invalid simplicial complex: {0}")]
    BadComplex(String),

    #[error("not a closed pseudomanifold: {0}")]
    NotPseudomanifold(String),

    #[error("complex is not orientable: {0}")]
    NonOrientable(String),

    #[error("invalid covering cocycle: {0}")]
    BadCocycle(String),

    #[error("invalid vertex ordering: {0}")]
    BadOrdering(String),

    #[error("complex is not a barycentric subdivision: {0}")]
    NotSubdivision(String),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("invalid input data: {0}")]
    BadData(String),
}
