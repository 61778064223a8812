//! Edge-preserving smoothing of a photograph with the smoothing preset.
//!
//! ```text
//! cargo run --release --example smooth [-- OUT_DIR]
//! ```

use std::path::PathBuf;

use fastgf::apps::smooth;
use fastgf::io::{decode, encode, BitDepth};
use fastgf::{AppPreset, Guidance};

fn main() -> fastgf::Result<()> {
    let out_dir = out_dir();
    let data = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data");
    let img = decode(data.join("coffee.png"))?;

    let params = AppPreset::SMOOTH.params();
    let fast = smooth(&img, &params, Guidance::Luminance)?;
    let exact = smooth(&img, &params.exact(), Guidance::Luminance)?;

    encode(
        &fast,
        out_dir.join("coffee_smooth_fast.png"),
        BitDepth::Eight,
    )?;
    encode(
        &exact,
        out_dir.join("coffee_smooth_exact.png"),
        BitDepth::Eight,
    )?;
    println!(
        "r={} eps={:.4} s={}: fast vs exact PSNR {:.2} dB -> {}",
        params.radius,
        params.epsilon,
        params.subsample,
        fastgf::bench::psnr_multi(&fast, &exact)?,
        out_dir.display()
    );
    Ok(())
}

fn out_dir() -> PathBuf {
    let dir = std::env::args_os()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| std::env::temp_dir().join("fastgf-examples"));
    std::fs::create_dir_all(&dir).expect("create output directory");
    dir
}
