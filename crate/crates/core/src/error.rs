use thiserror::Error;

use crate::grid::PixelCoord;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("adjacency must be 4 or 8, got {0}")]
    InvalidAdjacency(u32),

    #[error("image dimensions must be positive, got {width}x{height}")]
    InvalidDimensions { width: usize, height: usize },

    #[error("pixel ({}, {}) is white; neighborhood configurations describe black points", .0.col, .0.row)]
    CenterNotBlack(PixelCoord),

    #[error("the Hilditch crossing number is only defined for 8-adjacency")]
    HilditchRequiresEight,

    #[error("oracle canvas must be an odd size of at least 3, got {0}")]
    InvalidCanvas(usize),

    #[error("invalid configuration {input:?}: {reason}")]
    ConfigParse { input: String, reason: String },

    #[error(transparent)]
    Pbm(#[from] PbmError),

    #[error(
        "topology changed: black components {black_before} -> {black_after}, white components {white_before} -> {white_after}"
    )]
    TopologyChanged {
        black_before: usize,
        black_after: usize,
        white_before: usize,
        white_after: usize,
    },
}

/// A PBM parse failure, located by byte offset into the input.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("PBM parse error at byte {offset}: {kind}")]
pub struct PbmError {
    pub offset: usize,
    pub kind: PbmErrorKind,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PbmErrorKind {
    #[error("unsupported magic {0:?}")]
    UnsupportedMagic(String),
    #[error("unexpected end of data")]
    Truncated,
    #[error("expected an unsigned integer")]
    ExpectedNumber,
    #[error("dimensions must be positive")]
    NonPositiveDimensions,
    #[error("unexpected byte {0:#04x} in raster")]
    UnexpectedByte(u8),
    #[error("missing whitespace after header")]
    MissingWhitespace,
}
