//! Reading and writing PNG, PGM and PPM at 8 and 16 bits.

use fastgf::io::{decode_bytes, encode_bytes, BitDepth, FileFormat};
use fastgf::{synth, MultiImage};

fn main() -> fastgf::Result<()> {
    let gray = MultiImage::from_plane(synth::fractal_noise(96, 64, 6, 9)?);
    let rgb = MultiImage::new(
        (0..3)
            .map(|c| synth::fractal_noise(96, 64, 6, c))
            .collect::<Result<_, _>>()?,
    )?;

    for (img, formats) in [
        (&gray, [FileFormat::Png, FileFormat::Pgm]),
        (&rgb, [FileFormat::Png, FileFormat::Ppm]),
    ] {
        for format in formats {
            for depth in [BitDepth::Eight, BitDepth::Sixteen] {
                let bytes = encode_bytes(img, format, depth)?;
                let back = decode_bytes(&bytes)?;
                let err = fastgf::bench::max_abs_error_multi(img, &back)?;
                println!(
                    "{format:?} {depth:?} {}ch: {} bytes, quantization error {err:.2e}",
                    img.channels(),
                    bytes.len()
                );
            }
        }
    }
    Ok(())
}
