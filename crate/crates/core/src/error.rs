use crate::exactnum::ExactError;
use crate::geometry::GeometryError;
use crate::presentation::PresentationError;
use crate::projective::ProjectiveError;
use crate::wiring::WiringError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Wiring(#[from] WiringError),
    #[error(transparent)]
    Presentation(#[from] PresentationError),
    #[error(transparent)]
    Projective(#[from] ProjectiveError),
    #[error("{0}")]
    Inapplicable(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("invariant violated: {0}")]
    Invariant(String),
}

/// Coarse classification, used for process exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorClass {
    Input,
    Genericity,
    Internal,
}

impl Error {
    pub fn class(&self) -> ErrorClass {
        match self {
            Error::Geometry(GeometryError::GenericityExhausted { .. }) => ErrorClass::Genericity,
            Error::Wiring(WiringError::Irregular(_)) => ErrorClass::Genericity,
            Error::Projective(ProjectiveError::SectionExhausted { .. }) => ErrorClass::Genericity,
            Error::Wiring(WiringError::Geometry(GeometryError::GenericityExhausted { .. })) => ErrorClass::Genericity,
            Error::Wiring(WiringError::Invariant(_)) | Error::Presentation(_) | Error::Invariant(_) => ErrorClass::Internal,
            Error::Wiring(WiringError::DuplicateAbscissa) => ErrorClass::Internal,
            Error::Exact(_)
            | Error::Geometry(_)
            | Error::Projective(_)
            | Error::Wiring(WiringError::Geometry(_))
            | Error::Inapplicable(_)
            | Error::InvalidInput(_) => ErrorClass::Input,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
