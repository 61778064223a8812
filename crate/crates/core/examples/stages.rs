//! The building blocks exposed individually: box means, local statistics,
//! coefficient maps, resampling and the final blend.

use fastgf::{
    blend_output, box_mean, compute_coefficients, local_statistics, subsample, synth,
    upsample_bilinear, CoefficientMaps, ResampleSpec, SubsampleMethod,
};

fn main() -> fastgf::Result<()> {
    let i = synth::step_edge(64, 32, 32, 0.1, 0.9)?;
    let p = synth::add_gaussian_noise(&i, 0.1, 7)?;

    let smoothed = box_mean(&p, 3)?;
    println!(
        "box mean at (10,16): {:.3} (input {:.3})",
        smoothed.get(10, 16),
        p.get(10, 16)
    );

    let stats = local_statistics(&i, &p, 3)?;
    println!(
        "local variance of I at the edge: {:.4}",
        stats.var_i.get(32, 16)
    );

    // Coefficients at quarter resolution, then back up to full size.
    let spec = ResampleSpec::new(4, SubsampleMethod::Nearest)?;
    let (li, lp) = (subsample(&i, &spec)?, subsample(&p, &spec)?);
    let coeffs = compute_coefficients(&li, &lp, 1, 0.01)?;
    let (w, h) = i.dims();
    let full = CoefficientMaps {
        mean_a: upsample_bilinear(&coeffs.mean_a, w, h)?,
        mean_b: upsample_bilinear(&coeffs.mean_b, w, h)?,
    };
    let q = blend_output(&full, &i)?;

    let row: Vec<String> = (26..38).map(|x| format!("{:.2}", q.get(x, 16))).collect();
    println!("filtered row around the edge: {}", row.join(" "));
    Ok(())
}
