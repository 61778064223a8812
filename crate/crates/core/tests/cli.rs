use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use fastgf::io::{decode, encode, BitDepth};
use fastgf::{synth, MultiImage};

fn fastgf(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fastgf"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn write_rgb(dir: &Path, name: &str, seed: u64) -> PathBuf {
    let planes = (0..3)
        .map(|c| synth::fractal_noise(64, 48, 6, seed + c).unwrap())
        .collect();
    let path = dir.join(name);
    encode(&MultiImage::new(planes).unwrap(), &path, BitDepth::Eight).unwrap();
    path
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn missing_input_is_a_usage_error() {
    let out = fastgf(&["smooth", "--output", "y.png"]);
    assert_eq!(out.status.code(), Some(2));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("--input"), "{stderr}");
    assert!(stderr.to_lowercase().contains("usage"), "{stderr}");
}

#[test]
fn unknown_flag_and_bad_values_are_usage_errors() {
    assert_eq!(fastgf(&["smooth", "--bogus"]).status.code(), Some(2));
    assert_eq!(
        fastgf(&[
            "smooth",
            "--input",
            "a.png",
            "--output",
            "b.png",
            "--subsample-method",
            "cubic"
        ])
        .status
        .code(),
        Some(2)
    );
    assert_eq!(fastgf(&[]).status.code(), Some(2));
}

#[test]
fn processing_errors_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let missing = dir.path().join("nope.png");
    let out_path = dir.path().join("out.png");
    let out = fastgf(&["smooth", "--input", s(&missing), "--output", s(&out_path)]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not found"));

    let input = write_rgb(dir.path(), "in.png", 1);
    let out = fastgf(&[
        "smooth",
        "--input",
        s(&input),
        "--output",
        s(&out_path),
        "--eps",
        "0",
    ]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn every_subcommand_writes_output() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_rgb(dir.path(), "in.ppm", 3);
    let guide = write_rgb(dir.path(), "guide.png", 7);
    let mask_path = dir.path().join("mask.pgm");
    let mask = synth::disk(64, 48, (32.0, 24.0), 15.0, 1.0, 0.0).unwrap();
    encode(&MultiImage::from_plane(mask), &mask_path, BitDepth::Eight).unwrap();

    let runs: Vec<(&str, Vec<String>)> = vec![
        ("smooth", vec![]),
        ("smooth", vec!["--per-channel".into(), "--exact".into()]),
        ("enhance", vec!["--gain".into(), "3".into()]),
        ("flash-denoise", vec!["--guide".into(), s(&guide).into()]),
        (
            "filter",
            vec![
                "--guide".into(),
                s(&guide).into(),
                "--radius".into(),
                "8".into(),
                "--eps".into(),
                "0.0004".into(),
                "--subsample".into(),
                "1".into(),
            ],
        ),
    ];
    for (k, (cmd, extra)) in runs.into_iter().enumerate() {
        let out_path = dir.path().join(format!("out{k}.png"));
        let mut args = vec![
            cmd.to_string(),
            "--input".into(),
            s(&input).into(),
            "--output".into(),
            s(&out_path).into(),
        ];
        args.extend(extra);
        let out = Command::new(env!("CARGO_BIN_EXE_fastgf"))
            .args(&args)
            .output()
            .unwrap();
        assert!(
            out.status.success(),
            "{cmd}: {}",
            String::from_utf8_lossy(&out.stderr)
        );
        let img = decode(&out_path).unwrap();
        assert_eq!((img.dims(), img.channels()), ((64, 48), 3));
    }

    let out_path = dir.path().join("matte.pgm");
    let out = fastgf(&[
        "feather",
        "--input",
        s(&mask_path),
        "--guide",
        s(&guide),
        "--output",
        s(&out_path),
        "--radius",
        "8",
        "--bit-depth",
        "16",
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert_eq!(decode(&out_path).unwrap().channels(), 1);
}

#[test]
fn filter_subcommand_matches_library_exact_path() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_rgb(dir.path(), "p.png", 11);
    let guide = write_rgb(dir.path(), "i.png", 12);
    let out_path = dir.path().join("q.ppm");
    let out = fastgf(&[
        "filter",
        "--input",
        s(&input),
        "--guide",
        s(&guide),
        "--output",
        s(&out_path),
        "--radius",
        "8",
        "--eps",
        "0.0004",
        "--subsample",
        "1",
    ]);
    assert!(out.status.success());
    let p = decode(&input).unwrap();
    let i = fastgf::to_grayscale(&decode(&guide).unwrap()).unwrap();
    let params = fastgf::FilterParams::new(8, 0.0004, 1).unwrap();
    let q = fastgf::guided_filter(&i, &p, &params).unwrap();
    let expected =
        fastgf::io::encode_bytes(&q, fastgf::io::FileFormat::Ppm, BitDepth::Eight).unwrap();
    assert_eq!(std::fs::read(&out_path).unwrap(), expected);
}

#[test]
fn bench_subcommand_emits_csv() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("bench.csv");
    let out = fastgf(&[
        "bench",
        "--size",
        "128",
        "--radius",
        "8",
        "--ratios",
        "1,2,4",
        "--runs",
        "1",
        "--output",
        s(&csv),
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let text = std::fs::read_to_string(&csv).unwrap();
    let lines: Vec<_> = text.lines().collect();
    assert_eq!(lines[0], fastgf::bench::CSV_HEADER);
    assert_eq!(lines.len(), 4);
    assert!(lines[1].starts_with("128x128,1,8,0.01,1,"));
    assert!(String::from_utf8_lossy(&out.stderr).contains("speedup at s=4"));

    let out = fastgf(&["bench", "--size", "64", "--ratios", "1", "--runs", "1"]);
    assert!(String::from_utf8_lossy(&out.stdout).starts_with(fastgf::bench::CSV_HEADER));
}

#[test]
fn library_entry_point_reports_codes() {
    assert_eq!(fastgf::cli::run(["fastgf", "feather"]), 2);
    assert_eq!(fastgf::cli::run(["fastgf", "--help"]), 0);
}
