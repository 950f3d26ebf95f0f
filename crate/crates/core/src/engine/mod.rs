//! Capacity analysis, payload framing, embedding and extraction.
//!
//! Embedding walks the block grid in scan order. Pure blocks are skipped and
//! left as they are. A host block with two black pixels takes the next three
//! bits and is overwritten with the Table I pattern; a block with one or three
//! black pixels takes the next two bits and gets the Table II pattern. A final
//! partial group is padded with zero bits. Blocks after the stream runs out
//! are untouched.
//!
//! Extraction repeats the walk on the stego image. A block with an odd number
//! of black pixels yields three bits and a block with two yields two bits;
//! since the tables never produce pure patterns, both sides skip exactly the
//! same blocks.
//!
//! # Framed stream layout
//!
//! ```text
//! +--------------------------+---------------------------+---------+
//! | length L (32 bits, MSB)  | payload, L bits, MSB-first | padding |
//! +--------------------------+---------------------------+---------+
//! ```
//!
//! `L` counts payload bits and is a multiple of 8. Padding is whatever zero
//! bits are needed to complete the last block's group (0 to 2 bits).

mod bitstream;

pub use bitstream::{BitReader, BitStream};

use crate::bitmap::BinaryImage;
use crate::blockgrid::{read_block, write_block, Category, GridDims, Pattern};
use crate::codec;
use crate::error::{Error, Result};

/// Size of the length header in framed mode.
pub const HEADER_BITS: usize = 32;

/// Block census and bit capacity of a host image.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct CapacityReport {
    /// Blocks with two black pixels (3 bits each).
    pub count_a: usize,
    /// Blocks with one or three black pixels (2 bits each).
    pub count_b: usize,
    /// All-white or all-black blocks.
    pub count_pure: usize,
    /// `3·count_a + 2·count_b`.
    pub gross_bits: usize,
    /// Gross bits minus the framing header, floored at zero.
    pub net_bits: usize,
}

impl CapacityReport {
    pub fn total_blocks(&self) -> usize {
        self.count_a + self.count_b + self.count_pure
    }

    /// Largest payload, in whole bytes, that [`embed_payload`] accepts.
    pub fn max_payload_bytes(&self) -> usize {
        self.net_bits / 8
    }
}

/// Classifies every block of `image` and totals the bit capacity.
pub fn capacity(image: &BinaryImage) -> Result<CapacityReport> {
    let dims = GridDims::of(image)?;
    let mut report = CapacityReport::default();
    for row in 0..dims.m {
        for col in 0..dims.n {
            match read_block(image, row, col).category() {
                Category::A => report.count_a += 1,
                Category::B => report.count_b += 1,
                Category::PureWhite | Category::PureBlack => report.count_pure += 1,
            }
        }
    }
    report.gross_bits = 3 * report.count_a + 2 * report.count_b;
    report.net_bits = report.gross_bits.saturating_sub(HEADER_BITS);
    Ok(report)
}

/// Hides `bits` in `image` without any framing.
pub fn embed_bits(image: &BinaryImage, bits: &BitStream) -> Result<BinaryImage> {
    let available = capacity(image)?.gross_bits;
    if bits.len() > available {
        return Err(Error::InsufficientCapacity {
            required: bits.len(),
            available,
        });
    }
    let dims = GridDims::of(image)?;
    let mut stego = image.clone();
    let mut reader = bits.reader();
    'scan: for row in 0..dims.m {
        for col in 0..dims.n {
            if reader.remaining() == 0 {
                break 'scan;
            }
            let code = match read_block(image, row, col).category() {
                Category::A => codec::encode3(reader.read_group(3).unwrap_or(0)),
                Category::B => codec::encode2(reader.read_group(2).unwrap_or(0)),
                Category::PureWhite | Category::PureBlack => continue,
            };
            write_block(&mut stego, row, col, code);
        }
    }
    Ok(stego)
}

/// Recovers the first `nbits` raw bits hidden in `stego`.
pub fn extract_bits(stego: &BinaryImage, nbits: usize) -> Result<BitStream> {
    let mut blocks = BlockDecoder::new(stego)?;
    let mut out = BitStream::with_capacity(nbits + 2);
    blocks.fill(&mut out, nbits)?;
    out.truncate(nbits);
    Ok(out)
}

/// Builds the framed stream: 32-bit bit-length header, then the payload.
pub fn frame_payload(payload: &[u8]) -> Result<BitStream> {
    let bit_len = payload
        .len()
        .checked_mul(8)
        .filter(|&n| u32::try_from(n).is_ok())
        .ok_or(Error::PayloadTooLarge(payload.len()))?;
    let mut stream = BitStream::with_capacity(HEADER_BITS + bit_len);
    stream.push_bits(bit_len as u64, HEADER_BITS as u32);
    stream.extend_from_bytes(payload);
    Ok(stream)
}

/// Hides `payload` behind a length header so [`extract_payload`] can find
/// its end.
pub fn embed_payload(image: &BinaryImage, payload: &[u8]) -> Result<BinaryImage> {
    embed_bits(image, &frame_payload(payload)?)
}

/// Recovers a payload hidden with [`embed_payload`].
pub fn extract_payload(stego: &BinaryImage) -> Result<Vec<u8>> {
    let mut blocks = BlockDecoder::new(stego)?;
    let mut bits = BitStream::new();
    blocks.fill(&mut bits, HEADER_BITS)?;
    let declared = bits.read_bits(0, HEADER_BITS as u32) as usize;
    if !declared.is_multiple_of(8) {
        return Err(Error::NotByteAligned(declared));
    }
    let total = HEADER_BITS + declared;
    match blocks.fill(&mut bits, total) {
        Ok(()) => {}
        Err(Error::NotEnoughData { available, .. }) => {
            return Err(Error::HeaderExceedsCapacity {
                declared,
                available: available - HEADER_BITS,
            })
        }
        Err(e) => return Err(e),
    }
    Ok(bits.slice(HEADER_BITS, total).into_bytes())
}

/// Number of blocks an embedding of `nbits` bits into `image` consumes, or
/// `None` if the image cannot hold that many.
pub fn blocks_needed(image: &BinaryImage, nbits: usize) -> Result<Option<usize>> {
    let dims = GridDims::of(image)?;
    let mut carried = 0;
    let mut consumed = 0;
    for row in 0..dims.m {
        for col in 0..dims.n {
            if carried >= nbits {
                return Ok(Some(consumed));
            }
            let width = read_block(image, row, col).category().embed_width();
            if width > 0 {
                carried += width;
                consumed += 1;
            }
        }
    }
    Ok((carried >= nbits).then_some(consumed))
}

/// Bits a block of the stego image decodes to: 3 for odd black count, 2 for
/// two black pixels, 0 for pure blocks.
pub fn decode_width(p: Pattern) -> usize {
    match p.black_count() {
        1 | 3 => 3,
        2 => 2,
        _ => 0,
    }
}

/// Walks data-carrying blocks of a stego image in scan order.
struct BlockDecoder<'a> {
    image: &'a BinaryImage,
    dims: GridDims,
    next: usize,
}

impl<'a> BlockDecoder<'a> {
    fn new(image: &'a BinaryImage) -> Result<Self> {
        Ok(Self {
            image,
            dims: GridDims::of(image)?,
            next: 0,
        })
    }

    /// Decodes the next data-carrying block into `(group, width)`.
    fn next_group(&mut self) -> Result<Option<(u8, u32)>> {
        while self.next < self.dims.total_blocks() {
            let (row, col) = (self.next / self.dims.n, self.next % self.dims.n);
            self.next += 1;
            let p = read_block(self.image, row, col);
            return match decode_width(p) {
                0 => continue,
                3 => Ok(Some((codec::decode3(p)?, 3))),
                _ => match codec::decode2(p) {
                    Ok(g) => Ok(Some((g, 2))),
                    Err(_) => Err(Error::CorruptStream {
                        row,
                        col,
                        pattern: p,
                    }),
                },
            };
        }
        Ok(None)
    }

    /// Appends decoded groups to `out` until it holds at least `target` bits.
    fn fill(&mut self, out: &mut BitStream, target: usize) -> Result<()> {
        while out.len() < target {
            match self.next_group()? {
                Some((group, width)) => out.push_bits(u64::from(group), width),
                None => {
                    return Err(Error::NotEnoughData {
                        needed: target,
                        available: out.len(),
                    })
                }
            }
        }
        Ok(())
    }
}
