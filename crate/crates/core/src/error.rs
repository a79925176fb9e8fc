use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("schema error: {0}")]
    Schema(String),
    #[error("topology error: {0}")]
    Topology(String),
    #[error("grading error: {0}")]
    Grading(String),
    #[error("chord {0} has no height")]
    MissingHeight(String),
    #[error("chord {0} has non-positive height")]
    NonPositiveHeight(String),
    #[error("chord {0} has no geometry and no extendability assertion")]
    MissingGeometry(String),
    #[error("scale factor must be positive")]
    NonPositiveScale,
    #[error("differential does not square to zero: {0}")]
    DSquared(String),
    #[error("differential is not of degree -1: {0}")]
    Degree(String),
    #[error("action filtration violated: {0}")]
    Filtration(String),
    #[error("size limit exceeded: {0}")]
    SizeLimit(String),
    #[error("not an augmentation: {0}")]
    InvalidAugmentation(String),
    #[error("linearized differential does not square to zero: {0}")]
    Linearization(String),
    #[error("marked-point class is not a cocycle: {0}")]
    NotCocycle(String),
    #[error("marked-point class vanishes: {0}")]
    NullClass(String),
    #[error("no arc {0}: the diagram has {1} arcs")]
    UnknownArc(usize, usize),
    #[error("the knot admits no augmentation")]
    NoAugmentation,
    #[error("width bounds out of order: {0}")]
    BoundOrder(String),
    #[error("unavailable: {0}")]
    Unavailable(String),
}

pub type Result<T> = std::result::Result<T, Error>;
