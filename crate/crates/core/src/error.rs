use thiserror::Error;

/// Errors raised by every module of the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("marked set needs n >= 1 and n <= {max}, got {n}")]
    InvalidMarkCount { n: usize, max: usize },

    #[error("mark {0} does not belong to the marked set")]
    UnknownMark(String),

    #[error("mark {0} is fixed (0, 1 and inf cannot be contracted)")]
    FixedMark(String),

    #[error("partition part {part} is not stable: both sides need at least two marks")]
    UnstablePartition { part: String },

    #[error("partitions live on different marked sets (n = {left} vs n = {right})")]
    HostMismatch { left: usize, right: usize },

    #[error("family contains the partition {0} more than once")]
    DuplicateMember(String),

    #[error("family is not good: {0}")]
    NotGood(String),

    #[error("face is not a vertex: codimension {codim}, expected {n}")]
    NotAVertex { codim: usize, n: usize },

    #[error("codimension {k} out of range 1..={n}")]
    CodimOutOfRange { k: usize, n: usize },

    #[error("no member of the vertex restricts stably to {{0, s{0}, 1, inf}}")]
    InteriorImage(usize),

    #[error("vertex members restrict to different points of the 4-point space for s{0}")]
    InconsistentImage(usize),

    #[error("vertex maps to the point inf under the projection onto {{0, s{0}, 1, inf}}")]
    InfinityImage(usize),

    #[error("contraction of a vertex produced {collapsed} collapsed and {merged} merged members")]
    ContractionAnomaly { collapsed: usize, merged: usize },

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("vector length {got} does not match the marked set (n = {expected})")]
    LengthMismatch { expected: usize, got: usize },

    #[error("value {0} must differ from 0 and 1")]
    SpecialValue(String),

    #[error("divergent parameters: {0}")]
    Divergent(String),

    #[error("series did not reach tolerance {tol:e} within {max_terms} terms (bound {bound:e})")]
    TermBudget { tol: f64, max_terms: usize, bound: f64 },

    #[error("convergence condition violated: {0}")]
    ConvergenceFlag(String),

    #[error("invalid path: {0}")]
    InvalidPath(String),

    #[error("path passes within {distance:e} of singularity {point} (clearance {clearance:e})")]
    Clearance { point: String, distance: f64, clearance: f64 },

    #[error("quadrature exceeded its panel budget of {0}")]
    PanelBudget(usize),

    #[error("weight {n} exceeds the configured maximum {max}")]
    WeightTooLarge { n: usize, max: usize },

    #[error("cycle radius {eps} too large, must stay below {limit}")]
    RadiusTooLarge { eps: f64, limit: f64 },

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Stable machine-readable name of the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidMarkCount { .. } => "invalid_mark_count",
            Error::UnknownMark(_) => "unknown_mark",
            Error::FixedMark(_) => "fixed_mark",
            Error::UnstablePartition { .. } => "unstable_partition",
            Error::HostMismatch { .. } => "host_mismatch",
            Error::DuplicateMember(_) => "duplicate_member",
            Error::NotGood(_) => "not_good",
            Error::NotAVertex { .. } => "not_a_vertex",
            Error::CodimOutOfRange { .. } => "codim_out_of_range",
            Error::InteriorImage(_) => "interior_image",
            Error::InconsistentImage(_) => "inconsistent_image",
            Error::InfinityImage(_) => "infinity_image",
            Error::ContractionAnomaly { .. } => "contraction_anomaly",
            Error::Precondition(_) => "precondition",
            Error::LengthMismatch { .. } => "length_mismatch",
            Error::SpecialValue(_) => "special_value",
            Error::Divergent(_) => "divergent",
            Error::TermBudget { .. } => "term_budget",
            Error::ConvergenceFlag(_) => "convergence_flag",
            Error::InvalidPath(_) => "invalid_path",
            Error::Clearance { .. } => "clearance",
            Error::PanelBudget(_) => "panel_budget",
            Error::WeightTooLarge { .. } => "weight_too_large",
            Error::RadiusTooLarge { .. } => "radius_too_large",
            Error::Parse(_) => "parse",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
