//! Partitioning into non-overlapping 2×2 blocks and block classification.
//!
//! An image of `height × width` pixels yields `m = ⌊height/2⌋` block rows and
//! `n = ⌊width/2⌋` block columns. A trailing odd row or column lies outside the
//! grid and is never read or written. Blocks are visited in row-major order
//! over the grid; embedder and extractor both rely on that order.

use std::fmt;
use std::str::FromStr;

use crate::bitmap::BinaryImage;
use crate::error::{Error, Result};

/// Block side length in pixels.
pub const BLOCK_SIZE: usize = 2;

/// Shape of the block grid laid over an image.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GridDims {
    /// Block rows.
    pub m: usize,
    /// Block columns.
    pub n: usize,
    /// Block side length.
    pub k: usize,
}

impl GridDims {
    pub fn total_blocks(&self) -> usize {
        self.m * self.n
    }

    pub fn of(image: &BinaryImage) -> Result<Self> {
        grid_dims(image.height(), image.width(), BLOCK_SIZE)
    }
}

/// Floor-divides the image dimensions by `k`. Only `k = 2` is accepted.
pub fn grid_dims(height: usize, width: usize, k: usize) -> Result<GridDims> {
    if k != BLOCK_SIZE {
        return Err(Error::UnsupportedBlockSize(k));
    }
    if height < k || width < k {
        return Err(Error::ImageTooSmall { width, height, k });
    }
    Ok(GridDims {
        m: height / k,
        n: width / k,
        k,
    })
}

/// The four pixels of a block packed into a nibble.
///
/// Bit 3 holds the top-left pixel, then top-right, bottom-left and
/// bottom-right in bit 0, so `Pattern(0b0111)` is the block written `"0111"`:
/// a black pixel at the top left and white elsewhere.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Pattern(u8);

impl Pattern {
    pub const ALL_WHITE: Pattern = Pattern(0b1111);
    pub const ALL_BLACK: Pattern = Pattern(0b0000);

    /// # Panics
    /// If `code` does not fit in four bits.
    pub const fn new(code: u8) -> Self {
        assert!(code < 16, "pattern code must fit in 4 bits");
        Pattern(code)
    }

    pub const fn code(self) -> u8 {
        self.0
    }

    /// Pixels in row-major order.
    pub const fn pixels(self) -> [u8; 4] {
        [
            (self.0 >> 3) & 1,
            (self.0 >> 2) & 1,
            (self.0 >> 1) & 1,
            self.0 & 1,
        ]
    }

    pub const fn from_pixels(px: [u8; 4]) -> Self {
        Pattern(((px[0] & 1) << 3) | ((px[1] & 1) << 2) | ((px[2] & 1) << 1) | (px[3] & 1))
    }

    /// Number of black (`0`) pixels.
    pub const fn black_count(self) -> u32 {
        4 - self.0.count_ones()
    }

    pub const fn category(self) -> Category {
        match self.black_count() {
            0 => Category::PureWhite,
            4 => Category::PureBlack,
            2 => Category::A,
            _ => Category::B,
        }
    }

    /// Iterates all 16 patterns in code order.
    pub fn all() -> impl Iterator<Item = Pattern> {
        (0..16).map(Pattern)
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:04b}", self.0)
    }
}

impl fmt::Debug for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Pattern({self})")
    }
}

impl FromStr for Pattern {
    type Err = Error;

    /// Parses the four-character form, e.g. `"0111"`.
    fn from_str(s: &str) -> Result<Self> {
        if s.len() != 4 {
            return Err(Error::MalformedHeader(format!(
                "pattern {s:?} must have exactly 4 characters"
            )));
        }
        let mut code = 0u8;
        for c in s.chars() {
            code <<= 1;
            match c {
                '0' => {}
                '1' => code |= 1,
                other => return Err(Error::InvalidToken(other)),
            }
        }
        Ok(Pattern(code))
    }
}

/// Block taxonomy by black-pixel count.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Category {
    /// No black pixels; never carries data.
    PureWhite,
    /// Four black pixels; never carries data.
    PureBlack,
    /// Exactly two black pixels; carries 3 bits.
    A,
    /// One or three black pixels; carries 2 bits.
    B,
}

impl Category {
    pub const fn is_pure(self) -> bool {
        matches!(self, Category::PureWhite | Category::PureBlack)
    }

    /// Bits an embedder hides in a host block of this category.
    pub const fn embed_width(self) -> usize {
        match self {
            Category::A => 3,
            Category::B => 2,
            Category::PureWhite | Category::PureBlack => 0,
        }
    }
}

pub fn classify(p: Pattern) -> Category {
    p.category()
}

fn check_index(dims: GridDims, row: usize, col: usize) -> Result<()> {
    if row >= dims.m || col >= dims.n {
        return Err(Error::IndexOutOfGrid {
            row,
            col,
            rows: dims.m,
            cols: dims.n,
        });
    }
    Ok(())
}

/// Reads block (`row`, `col`).
pub fn get_block(image: &BinaryImage, row: usize, col: usize) -> Result<Pattern> {
    check_index(GridDims::of(image)?, row, col)?;
    Ok(read_block(image, row, col))
}

/// Overwrites the four pixels of block (`row`, `col`) with `p`.
pub fn set_block(image: &mut BinaryImage, row: usize, col: usize, p: Pattern) -> Result<()> {
    check_index(GridDims::of(image)?, row, col)?;
    write_block(image, row, col, p);
    Ok(())
}

#[inline]
pub(crate) fn read_block(image: &BinaryImage, row: usize, col: usize) -> Pattern {
    let w = image.width();
    let top = 2 * row * w + 2 * col;
    let px = image.pixels();
    Pattern::from_pixels([px[top], px[top + 1], px[top + w], px[top + w + 1]])
}

#[inline]
pub(crate) fn write_block(image: &mut BinaryImage, row: usize, col: usize, p: Pattern) {
    let w = image.width();
    let top = 2 * row * w + 2 * col;
    let [a, b, c, d] = p.pixels();
    let px = image.pixels_mut();
    px[top] = a;
    px[top + 1] = b;
    px[top + w] = c;
    px[top + w + 1] = d;
}

/// Iterates `(row, col, pattern)` over every block in scan order.
pub fn blocks(image: &BinaryImage) -> Result<impl Iterator<Item = (usize, usize, Pattern)> + '_> {
    let dims = GridDims::of(image)?;
    Ok((0..dims.m).flat_map(move |r| (0..dims.n).map(move |c| (r, c, read_block(image, r, c)))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bitmap::{flip_count, WHITE};

    #[test]
    fn grid_dims_floor() {
        let g = grid_dims(768, 1024, 2).unwrap();
        assert_eq!((g.m, g.n, g.total_blocks()), (384, 512, 196_608));
        let g = grid_dims(5, 5, 2).unwrap();
        assert_eq!((g.m, g.n), (2, 2));
        let g = grid_dims(2, 2, 2).unwrap();
        assert_eq!((g.m, g.n), (1, 1));
    }

    #[test]
    fn grid_dims_errors() {
        assert!(matches!(
            grid_dims(1, 8, 2),
            Err(Error::ImageTooSmall { .. })
        ));
        assert!(matches!(
            grid_dims(8, 1, 2),
            Err(Error::ImageTooSmall { .. })
        ));
        assert!(matches!(
            grid_dims(8, 8, 3),
            Err(Error::UnsupportedBlockSize(3))
        ));
    }

    #[test]
    fn classify_examples() {
        let c = |s: &str| classify(s.parse().unwrap());
        assert_eq!(c("1111"), Category::PureWhite);
        assert_eq!(c("0000"), Category::PureBlack);
        assert_eq!(c("0011"), Category::A);
        assert_eq!(c("0001"), Category::B);
        assert_eq!(c("0111"), Category::B);
    }

    #[test]
    fn classify_all_sixteen() {
        let mut counts = [0usize; 4];
        for p in Pattern::all() {
            let blacks = p.pixels().iter().filter(|&&v| v == 0).count();
            let expected = match blacks {
                0 => Category::PureWhite,
                4 => Category::PureBlack,
                2 => Category::A,
                1 | 3 => Category::B,
                _ => unreachable!(),
            };
            assert_eq!(classify(p), expected, "{p}");
            counts[expected as usize] += 1;
        }
        assert_eq!(counts, [1, 1, 6, 8]);
    }

    #[test]
    fn pattern_string_form() {
        let p: Pattern = "0111".parse().unwrap();
        assert_eq!(p.pixels(), [0, 1, 1, 1]);
        assert_eq!(p.to_string(), "0111");
        assert!("011".parse::<Pattern>().is_err());
        assert!("01x1".parse::<Pattern>().is_err());
    }

    #[test]
    fn get_block_reads_row_major() {
        let img = BinaryImage::filled(6, 4, WHITE);
        assert_eq!(get_block(&img, 1, 2).unwrap(), Pattern::ALL_WHITE);

        let img = BinaryImage::from_rows(&["0111", "1111"]).unwrap();
        assert_eq!(get_block(&img, 0, 0).unwrap().to_string(), "0111");
        assert_eq!(get_block(&img, 0, 1).unwrap().to_string(), "1111");
    }

    #[test]
    fn remainder_pixels_belong_to_no_block() {
        let mut img = BinaryImage::filled(5, 5, WHITE);
        for i in 0..5 {
            img.set(4, i, 0);
            img.set(i, 4, 0);
        }
        assert!(blocks(&img)
            .unwrap()
            .all(|(_, _, p)| p == Pattern::ALL_WHITE));
        assert_eq!(blocks(&img).unwrap().count(), 4);
        assert!(matches!(
            get_block(&img, 2, 0),
            Err(Error::IndexOutOfGrid { .. })
        ));
    }

    #[test]
    fn set_then_get_all_patterns() {
        for p in Pattern::all() {
            let mut img = BinaryImage::filled(2, 2, WHITE);
            set_block(&mut img, 0, 0, p).unwrap();
            assert_eq!(get_block(&img, 0, 0).unwrap(), p);
        }
    }

    #[test]
    fn set_block_touches_only_its_pixels() {
        let host = BinaryImage::from_rows(&["010110", "110100", "001011", "101100"]).unwrap();
        let current = get_block(&host, 1, 1).unwrap();
        let mut same = host.clone();
        set_block(&mut same, 1, 1, current).unwrap();
        assert_eq!(flip_count(&host, &same).unwrap(), 0);

        let mut img = BinaryImage::filled(4, 4, 0);
        set_block(&mut img, 1, 0, Pattern::ALL_WHITE).unwrap();
        assert_eq!(flip_count(&img, &BinaryImage::filled(4, 4, 0)).unwrap(), 4);
        for (r, c) in [(2, 0), (2, 1), (3, 0), (3, 1)] {
            assert_eq!(img.get(r, c), 1);
        }
        assert!(matches!(
            set_block(&mut img, 0, 2, Pattern::ALL_BLACK),
            Err(Error::IndexOutOfGrid { .. })
        ));
    }

    #[test]
    fn blocks_partition_the_grid() {
        let (w, h) = (7, 9);
        let img = BinaryImage::filled(w, h, WHITE);
        let mut owner = vec![0u32; w * h];
        for (r, c, _) in blocks(&img).unwrap() {
            for (dr, dc) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
                owner[(2 * r + dr) * w + 2 * c + dc] += 1;
            }
        }
        for y in 0..h {
            for x in 0..w {
                let inside = y < 8 && x < 6;
                assert_eq!(owner[y * w + x], u32::from(inside), "({y},{x})");
            }
        }
    }
}
