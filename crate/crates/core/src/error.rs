use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("unsupported surface S_{{{genus},{punctures}}}: complexity 3g-3+p must be at least 1")]
    UnsupportedSurface { genus: u32, punctures: u32 },

    #[error("invalid pants decomposition: {0}")]
    InvalidDecomposition(String),

    #[error("unknown curve identifier `{0}`")]
    UnknownCurve(String),

    #[error("empty multicurve")]
    EmptySimplex,

    #[error("invalid word: {0}")]
    InvalidWord(String),

    #[error("length must be positive, got {0}")]
    NonPositiveLength(f64),

    #[error("not a hyperbolic class: |trace| = {trace}")]
    NotHyperbolic { trace: f64 },

    #[error("degenerate gluing along curve `{curve}`: {reason}")]
    DegenerateGluing { curve: String, reason: String },

    #[error("twist action table missing for curve `{0}`")]
    ActionTableMissing(String),

    #[error("epsilon {epsilon} out of range (must lie in (0, {max}])")]
    EpsilonOutOfRange { epsilon: f64, max: f64 },

    #[error("word bound must be at least 1")]
    InvalidWordBound,

    #[error("short-curve enumeration incomplete at word bound {word_bound}")]
    IncompleteEnumeration { word_bound: usize },

    #[error("path leaves the thin part at vertex {index}")]
    PathLeavesTile { index: usize },

    #[error("points belong to different decompositions")]
    DecompositionMismatch,

    #[error("schema violation at {path}: {message}")]
    Schema { path: String, message: String },

    #[error("complex is disconnected")]
    Disconnected,

    #[error("complex is not pure: simplex `{0}` is not a face of a maximal simplex")]
    NotPure(String),

    #[error("invalid cone point: {0}")]
    InvalidConePoint(String),

    #[error("catalog has no maximal simplices carrying a decomposition")]
    MissingMaximalSimplices,

    #[error("point is not in the net")]
    NotInNet,

    #[error("probe requires complexity at least 2 (got {0})")]
    UnsupportedProbe(u32),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("io error: {0}")]
    Io(String),
}

impl Error {
    /// Machine-readable code used by the CLI.
    pub fn code(&self) -> &'static str {
        match self {
            Error::UnsupportedSurface { .. } => "unsupported_surface",
            Error::InvalidDecomposition(_) => "invalid_decomposition",
            Error::UnknownCurve(_) => "unknown_curve",
            Error::EmptySimplex => "empty_simplex",
            Error::InvalidWord(_) => "invalid_word",
            Error::NonPositiveLength(_) => "non_positive_length",
            Error::NotHyperbolic { .. } => "not_hyperbolic",
            Error::DegenerateGluing { .. } => "degenerate_gluing",
            Error::ActionTableMissing(_) => "action_table_missing",
            Error::EpsilonOutOfRange { .. } => "epsilon_out_of_range",
            Error::InvalidWordBound => "invalid_word_bound",
            Error::IncompleteEnumeration { .. } => "incomplete_enumeration",
            Error::PathLeavesTile { .. } => "path_leaves_tile",
            Error::DecompositionMismatch => "decomposition_mismatch",
            Error::Schema { .. } => "schema",
            Error::Disconnected => "disconnected",
            Error::NotPure(_) => "not_pure",
            Error::InvalidConePoint(_) => "invalid_cone_point",
            Error::MissingMaximalSimplices => "missing_maximal_simplices",
            Error::NotInNet => "not_in_net",
            Error::UnsupportedProbe(_) => "unsupported_probe",
            Error::InvalidArgument(_) => "invalid_argument",
            Error::Io(_) => "io",
        }
    }

    pub fn is_io(&self) -> bool {
        matches!(self, Error::Io(_) | Error::Schema { .. })
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
