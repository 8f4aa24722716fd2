use thiserror::Error;

/// Errors raised by the value types, the canvas and the category operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PaintError {
    #[error("color channel {0} outside [0, 65535]")]
    ChannelOutOfRange(i64),
    #[error("load {0} outside [0, 256]")]
    LoadOutOfRange(i64),
    #[error("malformed hex color `{0}`")]
    BadHexColor(String),
    #[error("unknown texture `{0}`")]
    UnknownTexture(String),
    #[error("texture `blank` cannot be painted")]
    BlankTexture,
    #[error("scale_load denominator must be positive")]
    ZeroDenominator,

    #[error("region `{0}` is already declared")]
    DuplicateRegion(String),
    #[error("region `{0}` must be at least 1x1")]
    EmptyRegion(String),
    #[error("region `{0}` overlaps region `{1}`")]
    RegionOverlap(String, String),
    #[error("unknown region `{0}`")]
    UnknownRegion(String),
    #[error("paint states lie in different regions (`{0}` vs `{1}`)")]
    RegionMismatch(String, String),
    #[error("region `{name}` does not fit in a {width}x{height} image")]
    RegionOutOfBounds { name: String, width: u32, height: u32 },

    #[error("position {position} out of range for a word of length {len}")]
    PositionOutOfRange { position: usize, len: usize },
    #[error("cannot compose: target {left} does not match source {right}")]
    BoundaryMismatch { left: String, right: String },
    #[error("word state does not match the morphism's region signature")]
    SignatureMismatch,

    #[error("invalid law-check configuration: {0}")]
    InvalidConfig(String),
    #[error("image size must be positive")]
    EmptyImage,
}
