//! Flash/no-flash denoising on a synthetic pair: the clean "flash" shot guides
//! the noisy "no-flash" shot.

use fastgf::apps::flash_denoise;
use fastgf::io::{encode, BitDepth};
use fastgf::{synth, AppPreset, ImagePlane, MultiImage};

fn mse(a: &ImagePlane, b: &ImagePlane) -> f64 {
    a.data()
        .iter()
        .zip(b.data())
        .map(|(&x, &y)| (x as f64 - y as f64).powi(2))
        .sum::<f64>()
        / a.len() as f64
}

fn main() -> fastgf::Result<()> {
    let (w, h) = (512, 384);
    let flash = synth::fractal_noise(w, h, 7, 21)?;
    let noflash = synth::add_gaussian_noise(&flash, 0.05, 22)?;

    let out = flash_denoise(
        &MultiImage::from_plane(noflash.clone()),
        &MultiImage::from_plane(flash.clone()),
        &AppPreset::FLASH_DENOISE.params(),
    )?;
    println!(
        "MSE before {:.3e}, after {:.3e}",
        mse(&noflash, &flash),
        mse(out.plane(0), &flash)
    );

    let dir = std::env::temp_dir().join("fastgf-examples");
    std::fs::create_dir_all(&dir)?;
    encode(
        &MultiImage::from_plane(noflash),
        dir.join("noflash.pgm"),
        BitDepth::Eight,
    )?;
    encode(&out, dir.join("denoised.pgm"), BitDepth::Eight)?;
    Ok(())
}
