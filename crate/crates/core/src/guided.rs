//! Guided filter with scalar guidance, exact and subsampled.
//!
//! Both paths follow the same recipe. Window means of `I`, `p`, `I*I` and
//! `I*p` give the local variance and covariance. The per-window linear
//! coefficients are then
//!
//! ```text
//! a = cov_Ip / (var_I + eps)
//! b = mean_p - a * mean_I
//! ```
//!
//! These are box-averaged again and the output is `q = mean_a * I + mean_b`.
//!
//! The fast path computes everything up to `mean_a`/`mean_b` on an `s`-times
//! subsampled grid with radius `max(1, round(r / s))`, upsamples the two maps
//! bilinearly, and blends them with the full-resolution guidance.
//!
//! Guidance statistics (`mean_I`, `var_I`) are shared across all channels of `p`.

use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::boxfilter::box_mean_pair;
use crate::error::{Error, Result};
use crate::image::{FilterParams, ImagePlane, MultiImage};
use crate::resample::{subsample, upsample_blend, ResampleSpec};

/// Window moments of a guidance/input pair at one resolution.
#[derive(Clone, Debug)]
pub struct LocalStatistics {
    pub mean_i: ImagePlane,
    pub mean_p: ImagePlane,
    /// Clamped to be non-negative.
    pub var_i: ImagePlane,
    pub cov_ip: ImagePlane,
}

/// Window-averaged linear coefficients `(mean_a, mean_b)` for one filtered channel.
#[derive(Clone, Debug)]
pub struct CoefficientMaps {
    pub mean_a: ImagePlane,
    pub mean_b: ImagePlane,
}

/// Wall time of each fast-path stage, summed over channels.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct StageTimings {
    pub subsample: Duration,
    /// Box filters and coefficient arithmetic on the (possibly subsampled) grid.
    pub coefficients: Duration,
    pub upsample_blend: Duration,
}

impl StageTimings {
    pub fn total(&self) -> Duration {
        self.subsample + self.coefficients + self.upsample_blend
    }
}

struct GuidanceStats {
    mean_i: ImagePlane,
    var_i: ImagePlane,
}

impl GuidanceStats {
    fn new(guide: &ImagePlane, radius: usize) -> Result<Self> {
        let sq = square(guide);
        let (mean_i, corr_i) = box_mean_pair(guide, &sq, radius)?;
        let var = mean_i
            .data()
            .iter()
            .zip(corr_i.data())
            .map(|(&m, &c)| {
                let m = m as f64;
                (c as f64 - m * m).max(0.0) as f32
            })
            .collect();
        let var_i = ImagePlane::from_raw(guide.width(), guide.height(), var);
        Ok(Self { mean_i, var_i })
    }
}

fn square(plane: &ImagePlane) -> ImagePlane {
    product(plane, plane)
}

fn product(a: &ImagePlane, b: &ImagePlane) -> ImagePlane {
    let data = a
        .data()
        .iter()
        .zip(b.data())
        .map(|(&x, &y)| x * y)
        .collect();
    ImagePlane::from_raw(a.width(), a.height(), data)
}

/// `(mean_p, cov_Ip)` for one channel.
fn channel_moments(
    guide: &ImagePlane,
    stats: &GuidanceStats,
    input: &ImagePlane,
    radius: usize,
) -> Result<(ImagePlane, ImagePlane)> {
    let (mean_p, corr_ip) = box_mean_pair(input, &product(guide, input), radius)?;
    let cov = stats
        .mean_i
        .data()
        .iter()
        .zip(mean_p.data())
        .zip(corr_ip.data())
        .map(|((&mi, &mp), &c)| (c as f64 - mi as f64 * mp as f64) as f32)
        .collect();
    let cov_ip = ImagePlane::from_raw(guide.width(), guide.height(), cov);
    Ok((mean_p, cov_ip))
}

fn channel_coefficients(
    guide: &ImagePlane,
    stats: &GuidanceStats,
    input: &ImagePlane,
    radius: usize,
    epsilon: f64,
) -> Result<CoefficientMaps> {
    let (mean_p, cov_ip) = channel_moments(guide, stats, input, radius)?;
    let n = guide.len();
    let mut a = Vec::with_capacity(n);
    let mut b = Vec::with_capacity(n);
    for k in 0..n {
        let ak = cov_ip.data()[k] as f64 / (stats.var_i.data()[k] as f64 + epsilon);
        a.push(ak as f32);
        b.push((mean_p.data()[k] as f64 - ak * stats.mean_i.data()[k] as f64) as f32);
    }
    let (w, h) = guide.dims();
    let (mean_a, mean_b) = box_mean_pair(
        &ImagePlane::from_raw(w, h, a),
        &ImagePlane::from_raw(w, h, b),
        radius,
    )?;
    Ok(CoefficientMaps { mean_a, mean_b })
}

fn check_radius_eps(radius: usize, epsilon: f64) -> Result<()> {
    if radius < 1 {
        return Err(Error::Param("radius must be >= 1".into()));
    }
    if !(epsilon > 0.0) || !epsilon.is_finite() {
        return Err(Error::Param(format!(
            "epsilon must be finite and > 0, got {epsilon}"
        )));
    }
    Ok(())
}

/// Local mean, variance and covariance of `guide` and `input` over windows of `radius`.
pub fn local_statistics(
    guide: &ImagePlane,
    input: &ImagePlane,
    radius: usize,
) -> Result<LocalStatistics> {
    guide.ensure_same_dims(input, "guidance and input")?;
    let stats = GuidanceStats::new(guide, radius)?;
    let (mean_p, cov_ip) = channel_moments(guide, &stats, input, radius)?;
    Ok(LocalStatistics {
        mean_i: stats.mean_i,
        mean_p,
        var_i: stats.var_i,
        cov_ip,
    })
}

pub fn compute_coefficients(
    guide: &ImagePlane,
    input: &ImagePlane,
    radius: usize,
    epsilon: f64,
) -> Result<CoefficientMaps> {
    check_radius_eps(radius, epsilon)?;
    guide.ensure_same_dims(input, "guidance and input")?;
    let stats = GuidanceStats::new(guide, radius)?;
    channel_coefficients(guide, &stats, input, radius, epsilon)
}

/// `q = mean_a * I + mean_b`. No clamping.
pub fn blend_output(coeffs: &CoefficientMaps, guide: &ImagePlane) -> Result<ImagePlane> {
    coeffs
        .mean_a
        .ensure_same_dims(guide, "coefficients and guidance")?;
    coeffs
        .mean_b
        .ensure_same_dims(guide, "coefficients and guidance")?;
    let data = coeffs
        .mean_a
        .data()
        .iter()
        .zip(coeffs.mean_b.data())
        .zip(guide.data())
        .map(|((&a, &b), &g)| a * g + b)
        .collect();
    Ok(ImagePlane::from_raw(guide.width(), guide.height(), data))
}

fn check_inputs(guide: &ImagePlane, input: &MultiImage, params: &FilterParams) -> Result<()> {
    params.validate()?;
    if guide.dims() != input.dims() {
        return Err(crate::error::shape_mismatch(
            "guidance and input",
            guide.dims(),
            input.dims(),
        ));
    }
    Ok(())
}

/// Exact guided filter, every channel of `input` steered by `guide`.
/// `params.subsample` is ignored.
pub fn guided_filter(
    guide: &ImagePlane,
    input: &MultiImage,
    params: &FilterParams,
) -> Result<MultiImage> {
    check_inputs(guide, input, params)?;
    let stats = GuidanceStats::new(guide, params.radius)?;
    let planes = input
        .planes()
        .par_iter()
        .map(|p| {
            let coeffs = channel_coefficients(guide, &stats, p, params.radius, params.epsilon)?;
            blend_output(&coeffs, guide)
        })
        .collect::<Result<Vec<_>>>()?;
    MultiImage::new(planes)
}

pub fn fast_guided_filter(
    guide: &ImagePlane,
    input: &MultiImage,
    params: &FilterParams,
) -> Result<MultiImage> {
    fast_guided_filter_timed(guide, input, params).map(|(q, _)| q)
}

/// Fast guided filter that also reports per-stage wall time.
pub fn fast_guided_filter_timed(
    guide: &ImagePlane,
    input: &MultiImage,
    params: &FilterParams,
) -> Result<(MultiImage, StageTimings)> {
    check_inputs(guide, input, params)?;
    let s = params.subsample;
    let (w, h) = guide.dims();
    if s > 1 && s >= w.min(h) {
        return Err(Error::Param(format!(
            "subsample ratio {s} must be smaller than the image's shorter side ({})",
            w.min(h)
        )));
    }
    let spec = ResampleSpec::new(s, params.subsample_method)?;
    let radius = params.low_res_radius();
    let mut timings = StageTimings::default();

    let t0 = Instant::now();
    let low_guide = subsample(guide, &spec)?;
    let low_inputs = input
        .planes()
        .par_iter()
        .map(|p| subsample(p, &spec))
        .collect::<Result<Vec<_>>>()?;
    timings.subsample = t0.elapsed();

    let t1 = Instant::now();
    let stats = GuidanceStats::new(&low_guide, radius)?;
    let coeffs = low_inputs
        .par_iter()
        .map(|p| channel_coefficients(&low_guide, &stats, p, radius, params.epsilon))
        .collect::<Result<Vec<_>>>()?;
    timings.coefficients = t1.elapsed();

    let t2 = Instant::now();
    let planes = coeffs
        .par_iter()
        .map(|c| upsample_blend(&c.mean_a, &c.mean_b, guide))
        .collect::<Result<Vec<_>>>()?;
    timings.upsample_blend = t2.elapsed();

    Ok((MultiImage::new(planes)?, timings))
}

/// Runs the exact path when `params.subsample == 1`, the fast path otherwise.
pub fn filter(guide: &ImagePlane, input: &MultiImage, params: &FilterParams) -> Result<MultiImage> {
    if params.subsample == 1 {
        guided_filter(guide, input, params)
    } else {
        fast_guided_filter(guide, input, params)
    }
}
