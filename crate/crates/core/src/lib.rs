//! Guided image filtering with an O(N) box filter, plus the subsampled
//! "fast" variant that computes the linear coefficients on an `s`-times
//! smaller grid and applies them to the full-resolution guidance.
//!
//! ```
//! use fastgf::{fast_guided_filter, synth, FilterParams, MultiImage};
//!
//! let guide = synth::fractal_noise(128, 96, 6, 1).unwrap();
//! let input = MultiImage::from_plane(guide.clone());
//! let params = FilterParams::new(8, 0.01, 4).unwrap();
//! let smoothed = fast_guided_filter(&guide, &input, &params).unwrap();
//! assert_eq!(smoothed.dims(), (128, 96));
//! ```
//!
//! All intensities are `f32` in nominal `[0, 1]`; `epsilon` is expressed in
//! squared units of that range.

pub mod apps;
pub mod bench;
pub mod boxfilter;
pub mod cli;
mod error;
pub mod guided;
pub mod image;
pub mod io;
pub mod resample;
pub mod synth;

pub use apps::{AppKind, AppPreset, Guidance};
pub use boxfilter::{box_mean, box_mean_pair, WindowSpec};
pub use error::{Error, Result};
pub use guided::{
    blend_output, compute_coefficients, fast_guided_filter, guided_filter, local_statistics,
    CoefficientMaps, LocalStatistics, StageTimings,
};
pub use image::{elementwise, to_grayscale, ElementwiseOp, FilterParams, ImagePlane, MultiImage};
pub use resample::{subsample, upsample_bilinear, ResampleSpec, SubsampleMethod, UpsampleMethod};
