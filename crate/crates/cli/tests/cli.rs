use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use blockstego::bitmap::{save_pbm, write_pbm_file, PbmFormat};
use blockstego::{synth, BinaryImage};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_blockstego"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn kv(text: &str, key: &str) -> String {
    text.lines()
        .find_map(|l| l.strip_prefix(&format!("{key}=")))
        .unwrap_or_else(|| panic!("{key} missing in {text}"))
        .to_owned()
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn capacity_of_white_and_checkerboard() {
    let dir = tempfile::tempdir().unwrap();
    let white = dir.path().join("white.pbm");
    let checker = dir.path().join("checker.pbm");
    write_pbm_file(&white, &BinaryImage::filled(1024, 768, 1), PbmFormat::P4).unwrap();
    write_pbm_file(&checker, &synth::checkerboard(1024, 768), PbmFormat::P4).unwrap();

    let o = run(&["capacity", p(&white)]);
    assert!(o.status.success());
    assert_eq!(kv(&stdout(&o), "gross_bits"), "0");
    assert_eq!(kv(&stdout(&o), "net_bits"), "0");

    let o = run(&["capacity", p(&checker)]);
    assert!(o.status.success());
    assert_eq!(kv(&stdout(&o), "gross_bits"), "589824");
    assert_eq!(kv(&stdout(&o), "count_a"), "196608");
}

#[test]
fn missing_file_fails() {
    let o = run(&["capacity", "/nonexistent/x.pbm"]);
    assert!(!o.status.success());
    assert!(!o.stderr.is_empty());
    assert!(o.stdout.is_empty());
}

#[test]
fn embed_extract_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let host = dir.path().join("host.pbm");
    let payload = dir.path().join("secret.bin");
    let stego = dir.path().join("stego.pbm");
    let recovered = dir.path().join("recovered.bin");
    write_pbm_file(
        &host,
        &synth::random_image(200, 150, 0.45, 11),
        PbmFormat::P4,
    )
    .unwrap();
    let secret = synth::random_bytes(1500, 12);
    fs::write(&payload, &secret).unwrap();

    let o = run(&[
        "embed",
        "--host",
        p(&host),
        "--payload",
        p(&payload),
        "--out",
        p(&stego),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let flips: usize = kv(&stdout(&o), "flips").parse().unwrap();
    assert!(flips > 0);

    let o = run(&["extract", "--stego", p(&stego), "--out", p(&recovered)]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(fs::read(&recovered).unwrap(), secret);
}

#[test]
fn plain_host_gives_plain_stego() {
    let dir = tempfile::tempdir().unwrap();
    let host = dir.path().join("host.pbm");
    let payload = dir.path().join("empty");
    let stego = dir.path().join("stego.pbm");
    let recovered = dir.path().join("out");
    write_pbm_file(&host, &synth::checkerboard(8, 8), PbmFormat::P1).unwrap();
    fs::write(&payload, b"").unwrap();

    let o = run(&[
        "embed",
        "--host",
        p(&host),
        "--payload",
        p(&payload),
        "--out",
        p(&stego),
    ]);
    assert!(o.status.success());
    assert!(fs::read(&stego).unwrap().starts_with(b"P1"));
    assert_eq!(kv(&stdout(&o), "embedded_bits"), "32");

    let o = run(&["extract", "--stego", p(&stego), "--out", p(&recovered)]);
    assert!(o.status.success());
    assert!(fs::read(&recovered).unwrap().is_empty());
}

#[test]
fn oversized_payload_writes_nothing() {
    let dir = tempfile::tempdir().unwrap();
    let host = dir.path().join("host.pbm");
    let payload = dir.path().join("big.bin");
    let stego = dir.path().join("stego.pbm");
    write_pbm_file(&host, &synth::checkerboard(8, 8), PbmFormat::P4).unwrap();
    // 48 gross bits: 16 bits of room after the header, so 3 bytes is too many.
    fs::write(&payload, [1, 2, 3]).unwrap();

    let o = run(&[
        "embed",
        "--host",
        p(&host),
        "--payload",
        p(&payload),
        "--out",
        p(&stego),
    ]);
    assert!(!o.status.success());
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(
        err.contains("56 bits required") && err.contains("48 available"),
        "{err}"
    );
    assert!(!stego.exists());
}

#[test]
fn extract_failures() {
    let dir = tempfile::tempdir().unwrap();
    let white = dir.path().join("white.pbm");
    let out = dir.path().join("out.bin");
    write_pbm_file(&white, &BinaryImage::filled(32, 32, 1), PbmFormat::P4).unwrap();
    let o = run(&["extract", "--stego", p(&white), "--out", p(&out)]);
    assert!(!o.status.success());
    assert!(String::from_utf8_lossy(&o.stderr).contains("not enough data"));
    assert!(!out.exists());

    let truncated = dir.path().join("trunc.pbm");
    let mut bytes = save_pbm(&synth::checkerboard(32, 32), PbmFormat::P4);
    bytes.truncate(bytes.len() - 10);
    fs::write(&truncated, bytes).unwrap();
    let o = run(&["extract", "--stego", p(&truncated), "--out", p(&out)]);
    assert!(!o.status.success());
    assert!(String::from_utf8_lossy(&o.stderr).contains("truncated"));
}

#[test]
fn analyze_reports() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.pbm");
    let b = dir.path().join("b.pbm");
    let small = dir.path().join("small.pbm");
    let img = synth::random_image(64, 32, 0.5, 1);
    let mut one_flip = img.clone();
    one_flip.set(5, 7, 1 - img.get(5, 7));
    write_pbm_file(&a, &img, PbmFormat::P4).unwrap();
    write_pbm_file(&b, &one_flip, PbmFormat::P4).unwrap();
    write_pbm_file(&small, &BinaryImage::filled(4, 4, 1), PbmFormat::P4).unwrap();

    let o = run(&[
        "analyze",
        "--original",
        p(&a),
        "--stego",
        p(&a),
        "--format",
        "kv",
    ]);
    assert!(o.status.success());
    assert_eq!(kv(&stdout(&o), "flips"), "0");
    assert_eq!(kv(&stdout(&o), "psnr_db"), "inf");

    let o = run(&[
        "analyze",
        "--original",
        p(&a),
        "--stego",
        p(&b),
        "--format",
        "kv",
    ]);
    let db: f64 = kv(&stdout(&o), "psnr_db").parse().unwrap();
    assert!((db - 10.0 * 2048f64.log10()).abs() < 1e-9);

    let o = run(&["analyze", "--original", p(&a), "--stego", p(&b)]);
    assert!(stdout(&o).contains("flips: 1\n"));

    let o = run(&["analyze", "--original", p(&a), "--stego", p(&small)]);
    assert!(!o.status.success());
}

#[test]
fn bench_table_and_determinism() {
    let dir = tempfile::tempdir().unwrap();
    for i in 0..6 {
        let img = synth::with_pure_fraction(1024, 768, 0.15 * i as f64, i as u64);
        write_pbm_file(
            dir.path().join(format!("{}.pbm", i + 1)),
            &img,
            PbmFormat::P4,
        )
        .unwrap();
    }
    let columns = |o: &Output| -> Vec<(String, String, String)> {
        stdout(o)
            .lines()
            .skip(1)
            .map(|l| {
                let f: Vec<_> = l.split(',').collect();
                (f[0].to_owned(), f[3].to_owned(), f[5].to_owned())
            })
            .collect()
    };

    let one = run(&[
        "bench",
        "--corpus",
        p(dir.path()),
        "--reps",
        "1",
        "--seed",
        "7",
    ]);
    assert!(
        one.status.success(),
        "{}",
        String::from_utf8_lossy(&one.stderr)
    );
    let many = run(&[
        "bench",
        "--corpus",
        p(dir.path()),
        "--reps",
        "20",
        "--seed",
        "7",
    ]);
    assert!(many.status.success());

    let a = columns(&one);
    assert_eq!(a.len(), 6);
    assert_eq!(a, columns(&many));
    // Human-readable table on stderr, one row per image plus a header.
    assert_eq!(String::from_utf8_lossy(&one.stderr).lines().count(), 7);
}

#[test]
fn bench_empty_corpus_fails() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&["bench", "--corpus", p(dir.path()), "--reps", "1"]);
    assert!(!o.status.success());
}
