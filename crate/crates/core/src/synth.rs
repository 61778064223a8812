//! Deterministic synthetic images for examples, benchmarks and tests.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

use crate::error::Result;
use crate::image::ImagePlane;
use crate::resample::upsample_bilinear;

/// Independent uniform samples in `[0, 1)`.
pub fn uniform_noise(width: usize, height: usize, seed: u64) -> Result<ImagePlane> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    ImagePlane::new(
        width,
        height,
        (0..width * height).map(|_| rng.random::<f32>()).collect(),
    )
}

/// Multi-octave value noise rescaled to `[0, 1]`. Looks vaguely like terrain or clouds.
pub fn fractal_noise(width: usize, height: usize, octaves: u32, seed: u64) -> Result<ImagePlane> {
    let mut acc = vec![0f64; width * height];
    let mut amplitude = 1.0;
    for octave in 0..octaves {
        let cells = 2usize << octave;
        let gw = cells.min(width);
        let gh = cells.min(height);
        let grid = uniform_noise(gw, gh, seed.wrapping_add(octave as u64 * 7919))?;
        let up = upsample_bilinear(&grid, width, height)?;
        for (a, &v) in acc.iter_mut().zip(up.data()) {
            *a += amplitude * v as f64;
        }
        amplitude *= 0.5;
    }
    let (lo, hi) = acc
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(l, h), &v| {
            (l.min(v), h.max(v))
        });
    let span = if hi > lo { hi - lo } else { 1.0 };
    ImagePlane::new(
        width,
        height,
        acc.iter().map(|&v| ((v - lo) / span) as f32).collect(),
    )
}

/// Adds zero-mean Gaussian noise and clamps to `[0, 1]`.
pub fn add_gaussian_noise(src: &ImagePlane, sigma: f32, seed: u64) -> Result<ImagePlane> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let normal = Normal::new(0.0f32, sigma).map_err(|e| crate::Error::Param(e.to_string()))?;
    src.map(|v| (v + normal.sample(&mut rng)).clamp(0.0, 1.0))
}

/// Vertical step: `low` left of column `edge`, `high` from it on.
pub fn step_edge(
    width: usize,
    height: usize,
    edge: usize,
    low: f32,
    high: f32,
) -> Result<ImagePlane> {
    ImagePlane::from_fn(width, height, |x, _| if x < edge { low } else { high })
}

/// Hard-edged disk centered at `(cx, cy)`.
pub fn disk(
    width: usize,
    height: usize,
    center: (f32, f32),
    radius: f32,
    inside: f32,
    outside: f32,
) -> Result<ImagePlane> {
    ImagePlane::from_fn(width, height, |x, y| {
        let dx = x as f32 + 0.5 - center.0;
        let dy = y as f32 + 0.5 - center.1;
        if dx * dx + dy * dy <= radius * radius {
            inside
        } else {
            outside
        }
    })
}
