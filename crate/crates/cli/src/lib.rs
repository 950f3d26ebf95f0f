//! Command implementations behind the `blockstego` binary.
//!
//! Each command writes its report to `out`; the binary passes stdout. Errors
//! bubble up as `anyhow::Error` and are printed to stderr by `main`.

pub mod bench;

use std::fs;
use std::io::Write;
use std::path::Path;

use anyhow::{bail, Context, Result};
use blockstego::bitmap::{load_pbm, read_pbm_file, save_pbm, PbmFormat};
use blockstego::engine::HEADER_BITS;
use blockstego::{analyze, capacity, embed_payload, extract_payload, flip_count, metrics};

/// Output encoding for reports.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum ReportFormat {
    #[default]
    Text,
    /// `key=value` lines.
    Kv,
}

pub fn cmd_capacity(image: &Path, out: &mut impl Write) -> Result<()> {
    let img = load(image)?;
    let c = capacity(&img)?;
    writeln!(out, "count_a={}", c.count_a)?;
    writeln!(out, "count_b={}", c.count_b)?;
    writeln!(out, "count_pure={}", c.count_pure)?;
    writeln!(out, "gross_bits={}", c.gross_bits)?;
    writeln!(out, "net_bits={}", c.net_bits)?;
    Ok(())
}

pub fn cmd_embed(host: &Path, payload: &Path, out_path: &Path, out: &mut impl Write) -> Result<()> {
    let host_bytes = fs::read(host).with_context(|| format!("reading {}", host.display()))?;
    let img = load_pbm(&host_bytes).with_context(|| format!("loading {}", host.display()))?;
    let data = fs::read(payload).with_context(|| format!("reading {}", payload.display()))?;
    let cap = capacity(&img)?;
    let required = HEADER_BITS + data.len() * 8;
    if required > cap.gross_bits {
        bail!(
            "payload does not fit: {required} bits required ({} payload + {HEADER_BITS} header), {} available",
            data.len() * 8,
            cap.gross_bits
        );
    }
    let stego = embed_payload(&img, &data)?;
    // Keep the original format so plain fixtures stay plain.
    let format = if host_bytes.starts_with(b"P1") {
        PbmFormat::P1
    } else {
        PbmFormat::P4
    };
    write_atomic(out_path, &save_pbm(&stego, format))?;

    let flips = flip_count(&img, &stego)?;
    let psnr = metrics::psnr(&img, &stego)?;
    writeln!(out, "embedded_bits={required}")?;
    writeln!(out, "flips={flips}")?;
    writeln!(out, "psnr_db={psnr}")?;
    Ok(())
}

pub fn cmd_extract(stego: &Path, out_path: &Path) -> Result<()> {
    let img = load(stego)?;
    let payload = extract_payload(&img).context("extracting payload")?;
    write_atomic(out_path, &payload)
}

pub fn cmd_analyze(
    original: &Path,
    stego: &Path,
    format: ReportFormat,
    out: &mut impl Write,
) -> Result<()> {
    let a = load(original)?;
    let b = load(stego)?;
    let report = analyze(&a, &b)?;
    match format {
        ReportFormat::Text => out.write_all(report.to_text().as_bytes())?,
        ReportFormat::Kv => out.write_all(report.to_key_values().as_bytes())?,
    }
    Ok(())
}

// The command-line chapter of the guide runs against this crate.
#[cfg(doctest)]
#[doc = include_str!("../../../book/src/cli.md")]
mod book_cli {}

fn load(path: &Path) -> Result<blockstego::BinaryImage> {
    read_pbm_file(path).with_context(|| format!("loading {}", path.display()))
}

/// Writes via a temporary file in the target directory so a failed run never
/// leaves a partial output behind.
fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)
        .with_context(|| format!("creating temporary file in {}", dir.display()))?;
    tmp.write_all(bytes)?;
    tmp.persist(path)
        .map_err(|e| e.error)
        .with_context(|| format!("writing {}", path.display()))?;
    Ok(())
}
