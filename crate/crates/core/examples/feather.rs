//! Matte feathering: a hard binary mask is refined to follow the edges of the
//! guidance photograph.

use std::path::PathBuf;

use fastgf::apps::feather;
use fastgf::io::{decode, encode, BitDepth};
use fastgf::{to_grayscale, AppPreset, MultiImage};

fn main() -> fastgf::Result<()> {
    let img = decode(PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data/astronaut.png"))?;

    // Crude mask: everything brighter than average.
    let gray = to_grayscale(&img)?;
    let threshold = gray.mean() as f32;
    let mask = gray.map(|v| if v > threshold { 1.0 } else { 0.0 })?;

    let matte = feather(&mask, &img, &AppPreset::FEATHER.params())?;
    let soft = matte
        .data()
        .iter()
        .filter(|&&v| v > 0.05 && v < 0.95)
        .count();
    println!(
        "{soft} of {} pixels are fractional after feathering",
        matte.len()
    );

    let dir = std::env::temp_dir().join("fastgf-examples");
    std::fs::create_dir_all(&dir)?;
    encode(
        &MultiImage::from_plane(mask),
        dir.join("mask.png"),
        BitDepth::Eight,
    )?;
    encode(
        &MultiImage::from_plane(matte),
        dir.join("matte.png"),
        BitDepth::Sixteen,
    )?;
    Ok(())
}
