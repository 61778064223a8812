//! The raw filter API: exact path vs subsampled path at several ratios, with
//! an explicit guide and a multi-channel input.

use std::time::Instant;

use fastgf::bench::{max_abs_error_multi, psnr_multi};
use fastgf::{fast_guided_filter, guided_filter, synth, FilterParams, MultiImage, SubsampleMethod};

fn main() -> fastgf::Result<()> {
    let (w, h) = (1024, 768);
    let guide = synth::fractal_noise(w, h, 8, 1)?;
    let input = MultiImage::new(vec![
        synth::add_gaussian_noise(&guide, 0.05, 2)?,
        synth::fractal_noise(w, h, 8, 3)?,
        synth::uniform_noise(w, h, 4)?,
    ])?;

    let exact_params = FilterParams::new(8, 0.02 * 0.02, 1)?;
    let start = Instant::now();
    let exact = guided_filter(&guide, &input, &exact_params)?;
    println!(
        "exact           {:7.1} ms",
        start.elapsed().as_secs_f64() * 1e3
    );

    for method in [SubsampleMethod::Nearest, SubsampleMethod::Bilinear] {
        for s in [2, 4, 8] {
            let params = FilterParams::new(8, 0.02 * 0.02, s)?.with_subsample_method(method);
            let start = Instant::now();
            let fast = fast_guided_filter(&guide, &input, &params)?;
            println!(
                "{method:<8} s={s}  {:7.1} ms  r'={}  PSNR {:5.2} dB  max err {:.4}",
                start.elapsed().as_secs_f64() * 1e3,
                params.low_res_radius(),
                psnr_multi(&fast, &exact)?,
                max_abs_error_multi(&fast, &exact)?
            );
        }
    }
    Ok(())
}
