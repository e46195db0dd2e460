use thiserror::Error;

/// Errors raised by the geometry, kernel, solver and harness layers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum BemError {
    #[error("polar angle {0} outside [0, pi]")]
    PolarAngleOutOfRange(f64),

    #[error("tangent basis undefined at a pole (theta = {theta})")]
    PoleTangent { theta: f64 },

    #[error("degenerate curve: {0}")]
    DegenerateCurve(String),

    #[error("panelization with {0} panels is too coarse (need at least 4)")]
    TooCoarse(usize),

    #[error("kernel evaluated at coincident points (1 - <x, y> = {gap:e})")]
    Singularity { gap: f64 },

    #[error("evaluation point lies {distance:e} from the curve (stand-off {standoff:e})")]
    StandOff { distance: f64, standoff: f64 },

    #[error("singular Galerkin system ({size}x{size}), pivot ratio estimate {condition:e}")]
    SingularSystem { size: usize, condition: f64 },

    #[error("invalid domain: {0}")]
    Domain(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("run with {dof} panels failed: {source}")]
    AtDof {
        dof: usize,
        #[source]
        source: Box<BemError>,
    },

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for BemError {
    fn from(e: std::io::Error) -> Self {
        BemError::Io(e.to_string())
    }
}

impl BemError {
    /// True for errors caused by bad user input rather than numerics.
    pub fn is_config(&self) -> bool {
        match self {
            BemError::Config(_)
            | BemError::Domain(_)
            | BemError::PolarAngleOutOfRange(_)
            | BemError::TooCoarse(_)
            | BemError::DegenerateCurve(_)
            | BemError::Io(_) => true,
            BemError::AtDof { source, .. } => source.is_config(),
            _ => false,
        }
    }
}

pub type Result<T> = std::result::Result<T, BemError>;
