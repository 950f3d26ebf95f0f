//! Seeded generators for test fixtures and benchmark corpora.

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bitmap::{BinaryImage, BLACK, WHITE};
use crate::blockgrid::{write_block, GridDims, Pattern};
use crate::engine::BitStream;

/// Pixel checkerboard; every 2×2 block is `"0101"` or `"1010"`.
pub fn checkerboard(width: usize, height: usize) -> BinaryImage {
    let pixels = (0..height)
        .flat_map(|y| (0..width).map(move |x| ((x + y) % 2) as u8))
        .collect();
    BinaryImage::new(width, height, pixels).expect("valid dimensions")
}

/// Independent pixels, each black with probability `black_density`.
pub fn random_image(width: usize, height: usize, black_density: f64, seed: u64) -> BinaryImage {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let p = black_density.clamp(0.0, 1.0);
    let pixels = (0..width * height)
        .map(|_| if rng.gen_bool(p) { BLACK } else { WHITE })
        .collect();
    BinaryImage::new(width, height, pixels).expect("valid dimensions")
}

/// An image in which exactly `round(pure_fraction · blocks)` blocks are pure
/// (white or black at random) and the rest carry a random non-pure pattern.
/// Pure blocks are placed at random positions.
pub fn with_pure_fraction(
    width: usize,
    height: usize,
    pure_fraction: f64,
    seed: u64,
) -> BinaryImage {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut image = BinaryImage::filled(width, height, WHITE);
    let dims = GridDims::of(&image).expect("image holds at least one block");
    let total = dims.total_blocks();
    let pure = (pure_fraction.clamp(0.0, 1.0) * total as f64).round() as usize;

    let mut is_pure: Vec<bool> = (0..total).map(|i| i < pure).collect();
    rand::seq::SliceRandom::shuffle(is_pure.as_mut_slice(), &mut rng);

    for (i, pure) in is_pure.into_iter().enumerate() {
        let p = if pure {
            if rng.gen_bool(0.5) {
                Pattern::ALL_WHITE
            } else {
                Pattern::ALL_BLACK
            }
        } else {
            Pattern::new(rng.gen_range(1..15))
        };
        write_block(&mut image, i / dims.n, i % dims.n, p);
    }
    image
}

pub fn random_bytes(len: usize, seed: u64) -> Vec<u8> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = vec![0u8; len];
    rng.fill_bytes(&mut out);
    out
}

pub fn random_bits(len: usize, seed: u64) -> BitStream {
    let mut bits = BitStream::from_bytes(&random_bytes(len.div_ceil(8), seed));
    bits.truncate(len);
    bits
}
