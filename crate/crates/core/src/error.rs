use alloc::string::String;

/// Errors raised by surface, curve and mapping class operations.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("genus {0} is not supported (closed surfaces need genus >= 2)")]
    UnsupportedGenus(usize),
    #[error("invalid triangulation: {0}")]
    InvalidTriangulation(String),
    #[error("path is not a closed walk through adjacent triangles")]
    InvalidPath,
    #[error("path is not tightened")]
    NotTight,
    #[error("invalid normal coordinates: {0}")]
    InvalidCoordinates(String),
    #[error("multicurve is empty or has an inessential component")]
    NotEssential,
    #[error("multicurve is not connected")]
    NotConnected,
    #[error("objects live on different surfaces")]
    SurfaceMismatch,
    #[error("curve with {0} crossings exceeds the explicit representation cap")]
    CurveTooLarge(String),
    #[error("no flip sequence found that shortens the twist curve")]
    ShorteningFailed,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unknown curve name `{0}`")]
    UnknownCurve(String),
    #[error("curves do not fill the surface")]
    NotFilling,
    #[error("bad curve pair: {0}")]
    BadCurvePair(String),
    #[error("condition (*) unverified: {0}")]
    ConditionStarUnverified(String),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}

pub type Result<T> = core::result::Result<T, Error>;
