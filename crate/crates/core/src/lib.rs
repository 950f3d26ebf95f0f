//! Data hiding in binary images by 2×2 block pattern coding.
//!
//! The host image is cut into non-overlapping 2×2 blocks. Blocks that are all
//! white or all black are left alone. Every other block is overwritten with a
//! pattern from one of two small code tables: a block with two black pixels
//! carries three bits and becomes a pattern with one or three black pixels,
//! while a block with one or three black pixels carries two bits and becomes a
//! pattern with exactly two. The parity flip tells the extractor how many bits
//! each block holds.
//!
//! ```
//! use blockstego::{embed_payload, extract_payload, synth};
//!
//! let host = synth::random_image(64, 64, 0.5, 1);
//! let stego = embed_payload(&host, b"hello").unwrap();
//! assert_eq!(extract_payload(&stego).unwrap(), b"hello");
//! ```

pub mod bitmap;
pub mod blockgrid;
pub mod codec;
pub mod engine;
mod error;
pub mod metrics;
pub mod synth;

pub use bitmap::{flip_count, load_pbm, save_pbm, BinaryImage, PbmFormat};
pub use blockgrid::{classify, get_block, grid_dims, set_block, Category, GridDims, Pattern};
pub use codec::{decode2, decode3, encode2, encode3};
pub use engine::{
    capacity, embed_bits, embed_payload, extract_bits, extract_payload, BitStream, CapacityReport,
};
pub use error::{Error, Result};
pub use metrics::{analyze, mse, psnr, AnalysisReport, Psnr};

// Compile and run the guide's code listings as doc-tests.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/images.md")]
    mod images {}
    #[doc = include_str!("../../../book/src/blocks.md")]
    mod blocks {}
    #[doc = include_str!("../../../book/src/code-tables.md")]
    mod code_tables {}
    #[doc = include_str!("../../../book/src/stream-format.md")]
    mod stream_format {}
    #[doc = include_str!("../../../book/src/metrics.md")]
    mod metrics {}
}
