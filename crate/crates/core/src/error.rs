use thiserror::Error;

use crate::blockgrid::Pattern;

/// Errors produced while loading images, addressing blocks, or moving data
/// in and out of a host image.
#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed PBM header: {0}")]
    MalformedHeader(String),

    #[error("PBM raster truncated: expected {expected} pixels, found {found}")]
    TruncatedData { expected: usize, found: usize },

    #[error("invalid PBM raster token {0:?}")]
    InvalidToken(char),

    #[error("pixel buffer length {len} does not match {width}x{height}")]
    BadPixelBuffer {
        width: usize,
        height: usize,
        len: usize,
    },

    #[error("pixel value {0} is not binary")]
    NonBinaryPixel(u8),

    #[error("image dimensions differ: {0}x{1} vs {2}x{3}")]
    DimensionMismatch(usize, usize, usize, usize),

    #[error("image {width}x{height} is smaller than one {k}x{k} block")]
    ImageTooSmall {
        width: usize,
        height: usize,
        k: usize,
    },

    #[error("block size {0} is not supported (only 2)")]
    UnsupportedBlockSize(usize),

    #[error("block ({row}, {col}) is outside the {rows}x{cols} grid")]
    IndexOutOfGrid {
        row: usize,
        col: usize,
        rows: usize,
        cols: usize,
    },

    #[error("pattern {0} is not in the code table")]
    NotInTable(Pattern),

    #[error("insufficient capacity: {required} bits required, {available} available")]
    InsufficientCapacity { required: usize, available: usize },

    #[error("payload of {0} bytes exceeds the 32-bit length header")]
    PayloadTooLarge(usize),

    #[error(
        "corrupt stream: block ({row}, {col}) carries pattern {pattern}, absent from both tables"
    )]
    CorruptStream {
        row: usize,
        col: usize,
        pattern: Pattern,
    },

    #[error("not enough data: needed {needed} bits, image holds {available}")]
    NotEnoughData { needed: usize, available: usize },

    #[error("header declares {declared} payload bits but only {available} remain")]
    HeaderExceedsCapacity { declared: usize, available: usize },

    #[error("declared payload length {0} bits is not a whole number of bytes")]
    NotByteAligned(usize),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
