use alloc::string::String;

/// Errors raised by instance construction, tour handling and the oracles.
///
/// Point indices in `DuplicatePoint` and `CollinearTriple` are 1-based labels.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("instance needs at least 3 points, got {0}")]
    TooSmall(usize),
    #[error("points {0} and {1} coincide")]
    DuplicatePoint(u32, u32),
    #[error("points {0}, {1} and {2} are collinear")]
    CollinearTriple(u32, u32, u32),
    #[error("coordinate ({x}, {y}) of point {label} lies outside the {m}x{m} grid")]
    CoordinateOutOfRange { label: u32, x: i32, y: i32, m: u32 },
    #[error("generation exhausted its retry budget of {0} draws")]
    GenerationExhausted(u64),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("not a permutation of 1..={0}")]
    NotAPermutation(usize),
    #[error("instance too large for this oracle: {0}")]
    TooLarge(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }
}
