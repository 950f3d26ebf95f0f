//! Capacity / distortion / timing harness over a directory of PBM images.
//!
//! Each image is filled to its full framed capacity with a seeded pseudorandom
//! payload. Embedding and extraction are timed separately, excluding file I/O,
//! and the mean over all repetitions is reported.

use std::fmt::Write as _;
use std::hash::{DefaultHasher, Hash, Hasher};
use std::io::Write;
use std::path::Path;
use std::time::Instant;

use anyhow::{bail, ensure, Context, Result};
use blockstego::bitmap::read_pbm_file;
use blockstego::{capacity, embed_payload, extract_payload, metrics, synth, BinaryImage, Psnr};

#[derive(Debug, Clone, PartialEq)]
pub struct BenchResult {
    pub image_id: String,
    pub width: usize,
    pub height: usize,
    /// Gross capacity in bits.
    pub capacity_bits: usize,
    pub payload_bytes: usize,
    /// Mean embedding time in milliseconds.
    pub hide_ms: f64,
    /// Mean extraction time in milliseconds.
    pub extract_ms: f64,
    pub psnr: Psnr,
    pub repetitions: usize,
    /// Hash of the stego pixels, for spotting nondeterminism.
    pub stego_digest: u64,
}

/// Loads every `*.pbm` file in `dir`, sorted by file name.
pub fn load_corpus(dir: &Path) -> Result<Vec<(String, BinaryImage)>> {
    let mut paths: Vec<_> = std::fs::read_dir(dir)
        .with_context(|| format!("reading corpus directory {}", dir.display()))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.is_file() && p.extension().is_some_and(|x| x.eq_ignore_ascii_case("pbm")))
        .collect();
    paths.sort();
    paths
        .into_iter()
        .map(|p| {
            let id = p
                .file_stem()
                .unwrap_or_default()
                .to_string_lossy()
                .into_owned();
            let img = read_pbm_file(&p).with_context(|| format!("loading {}", p.display()))?;
            Ok((id, img))
        })
        .collect()
}

pub fn bench_image(
    id: &str,
    host: &BinaryImage,
    repetitions: usize,
    seed: u64,
) -> Result<BenchResult> {
    ensure!(repetitions > 0, "repetitions must be at least 1");
    let cap = capacity(host)?;
    let payload = synth::random_bytes(cap.max_payload_bytes(), seed);

    let mut stego = None;
    let mut hide_total = 0.0;
    for _ in 0..repetitions {
        let start = Instant::now();
        let s = embed_payload(host, &payload)?;
        hide_total += start.elapsed().as_secs_f64();
        stego = Some(s);
    }
    let stego = stego.expect("at least one repetition");

    let mut extract_total = 0.0;
    for _ in 0..repetitions {
        let start = Instant::now();
        let recovered = extract_payload(&stego)?;
        extract_total += start.elapsed().as_secs_f64();
        if recovered != payload {
            bail!("{id}: extracted payload differs from embedded payload");
        }
    }

    let mut h = DefaultHasher::new();
    stego.hash(&mut h);

    Ok(BenchResult {
        image_id: id.to_owned(),
        width: host.width(),
        height: host.height(),
        capacity_bits: cap.gross_bits,
        payload_bytes: payload.len(),
        hide_ms: hide_total * 1e3 / repetitions as f64,
        extract_ms: extract_total * 1e3 / repetitions as f64,
        psnr: metrics::psnr(host, &stego)?,
        repetitions,
        stego_digest: h.finish(),
    })
}

pub fn run(
    corpus: &[(String, BinaryImage)],
    repetitions: usize,
    seed: u64,
) -> Result<Vec<BenchResult>> {
    if corpus.is_empty() {
        bail!("corpus is empty");
    }
    corpus
        .iter()
        .map(|(id, img)| bench_image(id, img, repetitions, seed))
        .collect()
}

pub fn render_table(results: &[BenchResult]) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        "{:<16} {:>11} {:>14} {:>10} {:>11} {:>13} {:>5}",
        "image", "size", "capacity(bits)", "psnr(dB)", "hide(ms)", "extract(ms)", "reps"
    );
    for r in results {
        let _ = writeln!(
            s,
            "{:<16} {:>11} {:>14} {:>10} {:>11.3} {:>13.3} {:>5}",
            r.image_id,
            format!("{}x{}", r.width, r.height),
            r.capacity_bits,
            r.psnr.to_string(),
            r.hide_ms,
            r.extract_ms,
            r.repetitions
        );
    }
    s
}

pub fn render_csv(results: &[BenchResult]) -> String {
    let mut s = String::from(
        "image,width,height,capacity_bits,payload_bytes,psnr_db,hide_ms,extract_ms,repetitions\n",
    );
    for r in results {
        let _ = writeln!(
            s,
            "{},{},{},{},{},{},{:.6},{:.6},{}",
            r.image_id,
            r.width,
            r.height,
            r.capacity_bits,
            r.payload_bytes,
            r.psnr.as_f64(),
            r.hide_ms,
            r.extract_ms,
            r.repetitions
        );
    }
    s
}

/// CSV goes to `out`, the aligned table to `table`.
pub fn cmd_bench(
    corpus: &Path,
    repetitions: usize,
    seed: u64,
    out: &mut impl Write,
    table: &mut impl Write,
) -> Result<()> {
    let images = load_corpus(corpus)?;
    if images.is_empty() {
        bail!("no .pbm images in {}", corpus.display());
    }
    let results = run(&images, repetitions, seed)?;
    table.write_all(render_table(&results).as_bytes())?;
    out.write_all(render_csv(&results).as_bytes())?;
    Ok(())
}
