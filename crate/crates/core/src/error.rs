use thiserror::Error;

use crate::flex::FlexBranch;

/// Which of the three moving lengths of the tetrahedral brick collapsed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MovingLength {
    /// `|CN| = h + tu`
    H,
    /// `|CA| = p + tv`
    P,
    /// `|CB| = q + tw`
    Q,
}

impl std::fmt::Display for MovingLength {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            MovingLength::H => "h",
            MovingLength::P => "p",
            MovingLength::Q => "q",
        })
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("non-realizable hyperbolic triangle: law-of-cosines value {cosine} outside [-1, 1]")]
    HyperbolicDomain { cosine: f64 },

    #[error("non-realizable spherical triangle: law-of-cosines value {cosine} outside [-1, 1]")]
    SphericalDomain { cosine: f64 },

    #[error("deformation out of range: length {length} = {value} is not positive")]
    DeformationRange { length: MovingLength, value: f64 },

    #[error("invalid suspension parameters: {0}")]
    InvalidParams(String),

    #[error("no flexible q on the {branch} branch: tanh q would be {argument}")]
    NoFlexSolution { branch: FlexBranch, argument: f64 },

    #[error("ill-conditioned {what}: sine {sin} is below {threshold}")]
    Conditioning {
        what: &'static str,
        sin: f64,
        threshold: f64,
    },

    #[error("degenerate face or edge in {0}")]
    Degenerate(&'static str),

    #[error("cevians are not concurrent: third cevian misses the intersection by {residual}")]
    CevaInconsistent { residual: f64 },

    #[error("invalid Ceva configuration: {0}")]
    InvalidCeva(String),

    #[error("non-finite sample at t = {t}")]
    NonFinite { t: f64 },

    #[error("orthoscheme with angles ({0}, {1}, {2}) is not compact")]
    NonCompactOrthoscheme(f64, f64, f64),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
