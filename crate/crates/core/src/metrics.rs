//! Distortion metrics between a host image and its stego counterpart.
//!
//! Binary pixels are scaled to `{0, 255}` and `MAX_I = 255`, so
//!
//! ```text
//! MSE  = 255² · flips / (width · height)
//! PSNR = 10 · log10(255² / MSE) = 10 · log10(pixels / flips)
//! ```
//!
//! The PSNR value is scale-free: `{0, 1}` pixels with `MAX_I = 1` give the
//! same number. Identical images have infinite PSNR.

use std::fmt;

use crate::bitmap::{flip_count, BinaryImage};
use crate::engine::{self, CapacityReport, HEADER_BITS};
use crate::error::Result;

/// Peak pixel value after scaling.
pub const MAX_I: f64 = 255.0;

/// Peak signal-to-noise ratio.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub enum Psnr {
    Decibels(f64),
    /// No pixel differs.
    Infinite,
}

impl Psnr {
    pub fn is_infinite(self) -> bool {
        matches!(self, Psnr::Infinite)
    }

    /// Decibels, or `f64::INFINITY`.
    pub fn as_f64(self) -> f64 {
        match self {
            Psnr::Decibels(db) => db,
            Psnr::Infinite => f64::INFINITY,
        }
    }
}

impl fmt::Display for Psnr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Psnr::Decibels(db) => write!(f, "{db:.4}"),
            Psnr::Infinite => f.write_str("inf"),
        }
    }
}

/// Mean squared error over all pixels, summed pixel by pixel on the
/// `{0, 255}` scale.
pub fn mse(original: &BinaryImage, stego: &BinaryImage) -> Result<f64> {
    original.same_dims(stego)?;
    let sum: f64 = original
        .pixels()
        .iter()
        .zip(stego.pixels())
        .map(|(&i, &k)| {
            let d = (f64::from(i) - f64::from(k)) * MAX_I;
            d * d
        })
        .sum();
    Ok(sum / original.pixel_count() as f64)
}

/// PSNR from the pixel-sum MSE.
pub fn psnr(original: &BinaryImage, stego: &BinaryImage) -> Result<Psnr> {
    Ok(psnr_from_mse(mse(original, stego)?))
}

pub fn psnr_from_mse(mse: f64) -> Psnr {
    if mse == 0.0 {
        Psnr::Infinite
    } else {
        Psnr::Decibels(10.0 * (MAX_I * MAX_I / mse).log10())
    }
}

/// Closed form `10 · log10(pixels / flips)`.
pub fn psnr_from_flips(pixel_count: usize, flips: usize) -> Psnr {
    if flips == 0 {
        Psnr::Infinite
    } else {
        Psnr::Decibels(10.0 * (pixel_count as f64 / flips as f64).log10())
    }
}

/// Flip, MSE, PSNR and capacity figures for a host/stego pair.
#[derive(Debug, Clone, PartialEq)]
pub struct AnalysisReport {
    pub width: usize,
    pub height: usize,
    pub flips: usize,
    pub mse: f64,
    pub psnr: Psnr,
    /// Census of the original image.
    pub capacity: CapacityReport,
    /// Blocks the embedding used. Taken from the stego header when it parses
    /// and fits the host; otherwise the number of blocks that differ.
    pub blocks_consumed_estimate: usize,
}

pub fn analyze(original: &BinaryImage, stego: &BinaryImage) -> Result<AnalysisReport> {
    let flips = flip_count(original, stego)?;
    let mse = mse(original, stego)?;
    let psnr = psnr_from_mse(mse);
    debug_assert!(agree(psnr, psnr_from_flips(original.pixel_count(), flips)));
    let capacity = engine::capacity(original)?;
    Ok(AnalysisReport {
        width: original.width(),
        height: original.height(),
        flips,
        mse,
        psnr,
        capacity,
        blocks_consumed_estimate: consumed_estimate(original, stego)?,
    })
}

fn agree(a: Psnr, b: Psnr) -> bool {
    match (a, b) {
        (Psnr::Infinite, Psnr::Infinite) => true,
        (Psnr::Decibels(x), Psnr::Decibels(y)) => (x - y).abs() <= 1e-9 * x.abs().max(y.abs()),
        _ => false,
    }
}

fn consumed_estimate(original: &BinaryImage, stego: &BinaryImage) -> Result<usize> {
    if let Ok(header) = engine::extract_bits(stego, HEADER_BITS) {
        let framed = HEADER_BITS + header.read_bits(0, HEADER_BITS as u32) as usize;
        if let Some(n) = engine::blocks_needed(original, framed)? {
            return Ok(n);
        }
    }
    let changed = crate::blockgrid::blocks(original)?
        .zip(crate::blockgrid::blocks(stego)?)
        .filter(|(a, b)| a.2 != b.2)
        .count();
    Ok(changed)
}

impl AnalysisReport {
    /// Human-readable, one `label: value` per line.
    pub fn to_text(&self) -> String {
        let c = &self.capacity;
        format!(
            "dimensions: {}x{}\n\
             flips: {}\n\
             mse: {:.6}\n\
             psnr_db: {}\n\
             blocks_a: {}\n\
             blocks_b: {}\n\
             blocks_pure: {}\n\
             gross_bits: {}\n\
             net_bits: {}\n\
             blocks_consumed_estimate: {}\n",
            self.width,
            self.height,
            self.flips,
            self.mse,
            self.psnr,
            c.count_a,
            c.count_b,
            c.count_pure,
            c.gross_bits,
            c.net_bits,
            self.blocks_consumed_estimate,
        )
    }

    /// Machine-readable `key=value` pairs, one per line, full precision.
    pub fn to_key_values(&self) -> String {
        let c = &self.capacity;
        let psnr = match self.psnr {
            Psnr::Decibels(db) => db.to_string(),
            Psnr::Infinite => "inf".into(),
        };
        [
            ("width", self.width.to_string()),
            ("height", self.height.to_string()),
            ("flips", self.flips.to_string()),
            ("mse", self.mse.to_string()),
            ("psnr_db", psnr),
            ("count_a", c.count_a.to_string()),
            ("count_b", c.count_b.to_string()),
            ("count_pure", c.count_pure.to_string()),
            ("gross_bits", c.gross_bits.to_string()),
            ("net_bits", c.net_bits.to_string()),
            (
                "blocks_consumed_estimate",
                self.blocks_consumed_estimate.to_string(),
            ),
        ]
        .iter()
        .map(|(k, v)| format!("{k}={v}\n"))
        .collect()
    }
}
