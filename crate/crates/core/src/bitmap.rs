//! Binary image model and PBM (Netpbm P1/P4) I/O.
//!
//! Pixels are stored one per byte with `0` meaning black and `1` meaning
//! white. PBM uses the opposite convention (`1` = black), so the reader and
//! writer invert every pixel at the boundary.

use std::fs;
use std::path::Path;

use crate::error::{Error, Result};

pub const BLACK: u8 = 0;
pub const WHITE: u8 = 1;

/// A rectangular grid of binary pixels, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BinaryImage {
    width: usize,
    height: usize,
    pixels: Vec<u8>,
}

impl BinaryImage {
    /// Builds an image from a row-major pixel buffer (`0` = black, `1` = white).
    pub fn new(width: usize, height: usize, pixels: Vec<u8>) -> Result<Self> {
        if width == 0 || height == 0 {
            return Err(Error::MalformedHeader(format!(
                "image dimensions must be positive, got {width}x{height}"
            )));
        }
        let expected = width.checked_mul(height).ok_or_else(|| {
            Error::MalformedHeader(format!("{width}x{height} overflows the pixel count"))
        })?;
        if pixels.len() != expected {
            return Err(Error::BadPixelBuffer {
                width,
                height,
                len: pixels.len(),
            });
        }
        if let Some(&bad) = pixels.iter().find(|&&p| p > 1) {
            return Err(Error::NonBinaryPixel(bad));
        }
        Ok(Self {
            width,
            height,
            pixels,
        })
    }

    /// An image with every pixel set to `value`.
    ///
    /// # Panics
    /// If either dimension is zero or `value` is not 0 or 1.
    pub fn filled(width: usize, height: usize, value: u8) -> Self {
        assert!(width > 0 && height > 0, "image dimensions must be positive");
        assert!(value <= 1, "pixel value must be 0 or 1");
        Self {
            width,
            height,
            pixels: vec![value; width * height],
        }
    }

    /// Parses rows written as strings of `'0'`/`'1'` characters, e.g.
    /// `["01", "11"]`. Handy for fixtures.
    pub fn from_rows<S: AsRef<str>>(rows: &[S]) -> Result<Self> {
        let height = rows.len();
        let width = rows.first().map_or(0, |r| r.as_ref().len());
        let mut pixels = Vec::with_capacity(width * height);
        for row in rows {
            let row = row.as_ref();
            if row.len() != width {
                return Err(Error::BadPixelBuffer {
                    width,
                    height,
                    len: row.len(),
                });
            }
            for c in row.chars() {
                match c {
                    '0' => pixels.push(BLACK),
                    '1' => pixels.push(WHITE),
                    other => return Err(Error::InvalidToken(other)),
                }
            }
        }
        Self::new(width, height, pixels)
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn pixel_count(&self) -> usize {
        self.pixels.len()
    }

    /// Row-major pixel buffer.
    pub fn pixels(&self) -> &[u8] {
        &self.pixels
    }

    /// Pixel at (`row`, `col`).
    ///
    /// # Panics
    /// If the position lies outside the image.
    pub fn get(&self, row: usize, col: usize) -> u8 {
        assert!(row < self.height && col < self.width, "pixel out of bounds");
        self.pixels[row * self.width + col]
    }

    /// # Panics
    /// If the position lies outside the image or `value` is not binary.
    pub fn set(&mut self, row: usize, col: usize, value: u8) {
        assert!(row < self.height && col < self.width, "pixel out of bounds");
        assert!(value <= 1, "pixel value must be 0 or 1");
        self.pixels[row * self.width + col] = value;
    }

    /// Every pixel inverted.
    pub fn complement(&self) -> Self {
        Self {
            width: self.width,
            height: self.height,
            pixels: self.pixels.iter().map(|p| p ^ 1).collect(),
        }
    }

    pub fn black_count(&self) -> usize {
        self.pixels.iter().filter(|&&p| p == BLACK).count()
    }

    pub(crate) fn pixels_mut(&mut self) -> &mut [u8] {
        &mut self.pixels
    }

    pub(crate) fn same_dims(&self, other: &Self) -> Result<()> {
        if self.width != other.width || self.height != other.height {
            return Err(Error::DimensionMismatch(
                self.width,
                self.height,
                other.width,
                other.height,
            ));
        }
        Ok(())
    }
}

impl std::fmt::Debug for BinaryImage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "BinaryImage({}x{}", self.width, self.height)?;
        if self.pixels.len() <= 64 {
            for row in self.pixels.chunks(self.width) {
                f.write_str(" ")?;
                for p in row {
                    write!(f, "{p}")?;
                }
            }
        }
        f.write_str(")")
    }
}

/// Number of positions at which `a` and `b` differ.
pub fn flip_count(a: &BinaryImage, b: &BinaryImage) -> Result<usize> {
    a.same_dims(b)?;
    Ok(a.pixels
        .iter()
        .zip(&b.pixels)
        .filter(|(x, y)| x != y)
        .count())
}

/// PBM encodings.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PbmFormat {
    /// Plain (ASCII) PBM.
    P1,
    /// Raw PBM, eight pixels per byte, rows padded to whole bytes.
    P4,
}

/// Decodes a P1 or P4 PBM file.
pub fn load_pbm(bytes: &[u8]) -> Result<BinaryImage> {
    let mut cursor = Cursor { bytes, pos: 0 };
    let format = match bytes.get(..2) {
        Some(b"P1") => PbmFormat::P1,
        Some(b"P4") => PbmFormat::P4,
        _ => return Err(Error::MalformedHeader("expected magic P1 or P4".into())),
    };
    cursor.pos = 2;
    let width = cursor.header_number("width")?;
    let height = cursor.header_number("height")?;
    if width == 0 || height == 0 {
        return Err(Error::MalformedHeader(format!(
            "dimensions must be positive, got {width}x{height}"
        )));
    }
    let expected = width
        .checked_mul(height)
        .ok_or_else(|| Error::MalformedHeader("pixel count overflows".into()))?;

    let pixels = match format {
        PbmFormat::P1 => cursor.plain_raster(expected)?,
        PbmFormat::P4 => {
            // Exactly one whitespace byte separates the header from the raster.
            match cursor.next() {
                Some(b) if b.is_ascii_whitespace() => {}
                _ => {
                    return Err(Error::MalformedHeader(
                        "missing whitespace before raster".into(),
                    ))
                }
            }
            raw_raster(&bytes[cursor.pos..], width, height)?
        }
    };
    BinaryImage::new(width, height, pixels)
}

/// Encodes `image` as PBM. `load_pbm(&save_pbm(x, f))` reproduces `x` exactly.
pub fn save_pbm(image: &BinaryImage, format: PbmFormat) -> Vec<u8> {
    let (w, h) = (image.width, image.height);
    let mut out = Vec::new();
    match format {
        PbmFormat::P1 => {
            out.extend_from_slice(format!("P1\n{w} {h}\n").as_bytes());
            for row in image.pixels.chunks(w) {
                // Netpbm asks for lines of at most 70 characters.
                for (i, line) in row.chunks(35).enumerate() {
                    if i > 0 {
                        out.push(b'\n');
                    }
                    for (j, &p) in line.iter().enumerate() {
                        if j > 0 {
                            out.push(b' ');
                        }
                        out.push(if p == BLACK { b'1' } else { b'0' });
                    }
                }
                out.push(b'\n');
            }
        }
        PbmFormat::P4 => {
            out.extend_from_slice(format!("P4\n{w} {h}\n").as_bytes());
            let row_bytes = w.div_ceil(8);
            out.reserve(row_bytes * h);
            for row in image.pixels.chunks(w) {
                let mut packed = vec![0u8; row_bytes];
                for (x, &p) in row.iter().enumerate() {
                    if p == BLACK {
                        packed[x / 8] |= 0x80 >> (x % 8);
                    }
                }
                out.extend_from_slice(&packed);
            }
        }
    }
    out
}

pub fn read_pbm_file(path: impl AsRef<Path>) -> Result<BinaryImage> {
    load_pbm(&fs::read(path)?)
}

pub fn write_pbm_file(
    path: impl AsRef<Path>,
    image: &BinaryImage,
    format: PbmFormat,
) -> Result<()> {
    fs::write(path, save_pbm(image, format))?;
    Ok(())
}

fn raw_raster(data: &[u8], width: usize, height: usize) -> Result<Vec<u8>> {
    let row_bytes = width.div_ceil(8);
    let available_rows = data.len() / row_bytes;
    if available_rows < height {
        let found = (data.len() * 8).min(width * height);
        return Err(Error::TruncatedData {
            expected: width * height,
            found,
        });
    }
    let mut pixels = Vec::with_capacity(width * height);
    for row in data.chunks_exact(row_bytes).take(height) {
        for x in 0..width {
            let bit = row[x / 8] & (0x80 >> (x % 8));
            pixels.push(if bit != 0 { BLACK } else { WHITE });
        }
    }
    Ok(pixels)
}

struct Cursor<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl Cursor<'_> {
    fn next(&mut self) -> Option<u8> {
        let b = self.bytes.get(self.pos).copied();
        if b.is_some() {
            self.pos += 1;
        }
        b
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn skip_whitespace_and_comments(&mut self) {
        while let Some(b) = self.peek() {
            if b.is_ascii_whitespace() {
                self.pos += 1;
            } else if b == b'#' {
                while let Some(c) = self.next() {
                    if c == b'\n' || c == b'\r' {
                        break;
                    }
                }
            } else {
                break;
            }
        }
    }

    fn header_number(&mut self, what: &str) -> Result<usize> {
        let start_pos = self.pos;
        self.skip_whitespace_and_comments();
        if self.pos == start_pos && start_pos == 2 {
            return Err(Error::MalformedHeader(format!(
                "expected whitespace after magic before {what}"
            )));
        }
        let start = self.pos;
        while self.peek().is_some_and(|b| b.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(Error::MalformedHeader(format!("missing {what}")));
        }
        std::str::from_utf8(&self.bytes[start..self.pos])
            .ok()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| Error::MalformedHeader(format!("{what} out of range")))
    }

    fn plain_raster(&mut self, expected: usize) -> Result<Vec<u8>> {
        let mut pixels = Vec::with_capacity(expected);
        while pixels.len() < expected {
            match self.next() {
                None => {
                    return Err(Error::TruncatedData {
                        expected,
                        found: pixels.len(),
                    })
                }
                Some(b'0') => pixels.push(WHITE),
                Some(b'1') => pixels.push(BLACK),
                Some(b) if b.is_ascii_whitespace() => {}
                Some(b'#') => {
                    self.pos -= 1;
                    self.skip_whitespace_and_comments();
                }
                Some(b) => return Err(Error::InvalidToken(char::from(b))),
            }
        }
        Ok(pixels)
    }
}
