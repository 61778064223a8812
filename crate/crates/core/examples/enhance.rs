//! Detail enhancement: the base layer is the guided-filtered image and the
//! residual detail is amplified.

use std::path::PathBuf;

use fastgf::apps::enhance;
use fastgf::io::{decode, encode, BitDepth};
use fastgf::{AppPreset, Guidance};

fn main() -> fastgf::Result<()> {
    let out_dir = std::env::temp_dir().join("fastgf-examples");
    std::fs::create_dir_all(&out_dir)?;
    let img = decode(PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data/chelsea.png"))?;

    let preset = AppPreset::ENHANCE;
    for gain in [2.0, preset.gain.unwrap_or(5.0)] {
        let out = enhance(&img, gain, &preset.params(), Guidance::Luminance)?;
        let path = out_dir.join(format!("chelsea_enhance_x{gain}.png"));
        encode(&out, &path, BitDepth::Eight)?;
        println!("gain {gain}: {}", path.display());
    }
    Ok(())
}
