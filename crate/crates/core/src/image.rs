//! Planar raster types and the pointwise operations shared by every filter stage.
//!
//! Intensities are `f32`, row-major, nominally in `[0, 1]`. The `[0, 1]`
//! convention matters: the regularization values used by the presets
//! (`0.2²`, `0.1²`, ...) are only meaningful on that range. Intermediates
//! such as the linear coefficient maps can leave it.

use crate::error::{shape_mismatch, Error, Result};
use crate::resample::{SubsampleMethod, UpsampleMethod};

/// Single-channel raster.
#[derive(Clone, Debug, PartialEq)]
pub struct ImagePlane {
    width: usize,
    height: usize,
    data: Vec<f32>,
}

impl ImagePlane {
    /// Builds a plane, rejecting empty dimensions, length mismatch and non-finite samples.
    pub fn new(width: usize, height: usize, data: Vec<f32>) -> Result<Self> {
        if width == 0 || height == 0 {
            return Err(Error::Param(format!(
                "plane dimensions must be at least 1x1, got {width}x{height}"
            )));
        }
        if data.len() != width * height {
            return Err(Error::Shape(format!(
                "data length {} does not match {width}x{height}",
                data.len()
            )));
        }
        if let Some(pos) = data.iter().position(|v| !v.is_finite()) {
            return Err(Error::Param(format!(
                "non-finite sample at ({}, {})",
                pos % width,
                pos / width
            )));
        }
        Ok(Self {
            width,
            height,
            data,
        })
    }

    /// Caller guarantees `data.len() == width * height`, both non-zero.
    pub(crate) fn from_raw(width: usize, height: usize, data: Vec<f32>) -> Self {
        debug_assert!(width > 0 && height > 0);
        debug_assert_eq!(data.len(), width * height);
        Self {
            width,
            height,
            data,
        }
    }

    pub fn filled(width: usize, height: usize, value: f32) -> Result<Self> {
        Self::new(width, height, vec![value; width * height])
    }

    pub fn zeros(width: usize, height: usize) -> Result<Self> {
        Self::filled(width, height, 0.0)
    }

    /// Builds a plane by evaluating `f(x, y)` at every pixel.
    pub fn from_fn(
        width: usize,
        height: usize,
        mut f: impl FnMut(usize, usize) -> f32,
    ) -> Result<Self> {
        let mut data = Vec::with_capacity(width * height);
        for y in 0..height {
            for x in 0..width {
                data.push(f(x, y));
            }
        }
        Self::new(width, height, data)
    }

    #[inline]
    pub fn width(&self) -> usize {
        self.width
    }

    #[inline]
    pub fn height(&self) -> usize {
        self.height
    }

    #[inline]
    pub fn dims(&self) -> (usize, usize) {
        (self.width, self.height)
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.data.len()
    }

    /// Always false; planes are at least 1x1.
    #[inline]
    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    #[inline]
    pub fn data(&self) -> &[f32] {
        &self.data
    }

    pub fn into_data(self) -> Vec<f32> {
        self.data
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize) -> f32 {
        self.data[y * self.width + x]
    }

    #[inline]
    pub fn row(&self, y: usize) -> &[f32] {
        &self.data[y * self.width..(y + 1) * self.width]
    }

    pub fn rows(&self) -> std::slice::ChunksExact<'_, f32> {
        self.data.chunks_exact(self.width)
    }

    /// `(min, max)` over all samples.
    pub fn min_max(&self) -> (f32, f32) {
        self.data
            .iter()
            .fold((f32::INFINITY, f32::NEG_INFINITY), |(lo, hi), &v| {
                (lo.min(v), hi.max(v))
            })
    }

    pub fn mean(&self) -> f64 {
        self.data.iter().map(|&v| v as f64).sum::<f64>() / self.data.len() as f64
    }

    /// Applies `f` to every sample. Fails if `f` produces a non-finite value.
    pub fn map(&self, mut f: impl FnMut(f32) -> f32) -> Result<Self> {
        Self::new(
            self.width,
            self.height,
            self.data.iter().map(|&v| f(v)).collect(),
        )
    }

    pub(crate) fn ensure_same_dims(&self, other: &ImagePlane, what: &str) -> Result<()> {
        if self.dims() != other.dims() {
            return Err(shape_mismatch(what, self.dims(), other.dims()));
        }
        Ok(())
    }
}

/// One to four planes sharing the same dimensions.
#[derive(Clone, Debug, PartialEq)]
pub struct MultiImage {
    planes: Vec<ImagePlane>,
}

pub const MAX_CHANNELS: usize = 4;

impl MultiImage {
    pub fn new(planes: Vec<ImagePlane>) -> Result<Self> {
        if planes.is_empty() || planes.len() > MAX_CHANNELS {
            return Err(Error::UnsupportedFormat(format!(
                "channel count must be 1..={MAX_CHANNELS}, got {}",
                planes.len()
            )));
        }
        let first = planes[0].dims();
        for p in &planes[1..] {
            if p.dims() != first {
                return Err(shape_mismatch("channel planes", first, p.dims()));
            }
        }
        Ok(Self { planes })
    }

    pub fn from_plane(plane: ImagePlane) -> Self {
        Self {
            planes: vec![plane],
        }
    }

    #[inline]
    pub fn channels(&self) -> usize {
        self.planes.len()
    }

    #[inline]
    pub fn width(&self) -> usize {
        self.planes[0].width()
    }

    #[inline]
    pub fn height(&self) -> usize {
        self.planes[0].height()
    }

    #[inline]
    pub fn dims(&self) -> (usize, usize) {
        self.planes[0].dims()
    }

    pub fn plane(&self, channel: usize) -> &ImagePlane {
        &self.planes[channel]
    }

    pub fn planes(&self) -> &[ImagePlane] {
        &self.planes
    }

    pub fn into_planes(self) -> Vec<ImagePlane> {
        self.planes
    }
}

impl From<ImagePlane> for MultiImage {
    fn from(plane: ImagePlane) -> Self {
        MultiImage::from_plane(plane)
    }
}

/// Window radius, regularization and subsampling settings for one filter run.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FilterParams {
    pub radius: usize,
    /// In squared `[0, 1]` intensity units.
    pub epsilon: f64,
    pub subsample: usize,
    pub subsample_method: SubsampleMethod,
    pub upsample_method: UpsampleMethod,
}

impl FilterParams {
    pub fn new(radius: usize, epsilon: f64, subsample: usize) -> Result<Self> {
        let params = Self {
            radius,
            epsilon,
            subsample,
            subsample_method: SubsampleMethod::default(),
            upsample_method: UpsampleMethod::default(),
        };
        params.validate()?;
        Ok(params)
    }

    pub fn with_subsample_method(mut self, method: SubsampleMethod) -> Self {
        self.subsample_method = method;
        self
    }

    /// Same radius and regularization, full resolution.
    pub fn exact(mut self) -> Self {
        self.subsample = 1;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.radius < 1 {
            return Err(Error::Param("radius must be >= 1".into()));
        }
        if !(self.epsilon > 0.0) || !self.epsilon.is_finite() {
            return Err(Error::Param(format!(
                "epsilon must be finite and > 0, got {}",
                self.epsilon
            )));
        }
        if self.subsample < 1 {
            return Err(Error::Param("subsample ratio must be >= 1".into()));
        }
        Ok(())
    }

    /// Radius used on the subsampled grid: `max(1, round(r / s))`.
    pub fn low_res_radius(&self) -> usize {
        low_res_radius(self.radius, self.subsample)
    }
}

pub fn low_res_radius(radius: usize, subsample: usize) -> usize {
    let scaled = (radius as f64 / subsample.max(1) as f64).round() as usize;
    scaled.max(1)
}

pub const LUMA_WEIGHTS: [f32; 3] = [0.299, 0.587, 0.114];

/// Collapses a 1- or 3-channel image to a single luminance plane.
pub fn to_grayscale(img: &MultiImage) -> Result<ImagePlane> {
    match img.channels() {
        1 => Ok(img.plane(0).clone()),
        3 => {
            let [r, g, b] = [img.plane(0), img.plane(1), img.plane(2)];
            let [wr, wg, wb] = LUMA_WEIGHTS.map(|w| w as f64);
            let data = r
                .data()
                .iter()
                .zip(g.data())
                .zip(b.data())
                .map(|((&r, &g), &b)| (wr * r as f64 + wg * g as f64 + wb * b as f64) as f32)
                .collect();
            Ok(ImagePlane::from_raw(img.width(), img.height(), data))
        }
        n => Err(Error::UnsupportedFormat(format!(
            "grayscale conversion needs 1 or 3 channels, got {n}"
        ))),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ElementwiseOp {
    Mul,
    Add,
    Sub,
    /// Division whose denominator the caller has already offset to be strictly positive.
    DivGuarded,
}

pub fn elementwise(a: &ImagePlane, b: &ImagePlane, op: ElementwiseOp) -> Result<ImagePlane> {
    a.ensure_same_dims(b, "elementwise operands")?;
    let pairs = a.data().iter().zip(b.data());
    let data: Vec<f32> = match op {
        ElementwiseOp::Mul => pairs.map(|(&x, &y)| x * y).collect(),
        ElementwiseOp::Add => pairs.map(|(&x, &y)| x + y).collect(),
        ElementwiseOp::Sub => pairs.map(|(&x, &y)| x - y).collect(),
        ElementwiseOp::DivGuarded => {
            if let Some(&d) = b.data().iter().find(|&&d| !(d > 0.0)) {
                return Err(Error::Param(format!(
                    "guarded division needs a positive denominator, found {d}"
                )));
            }
            pairs.map(|(&x, &y)| x / y).collect()
        }
    };
    ImagePlane::new(a.width(), a.height(), data)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn plane(w: usize, h: usize, v: &[f32]) -> ImagePlane {
        ImagePlane::new(w, h, v.to_vec()).unwrap()
    }

    #[test]
    fn rejects_bad_construction() {
        assert!(matches!(
            ImagePlane::new(0, 3, vec![]),
            Err(Error::Param(_))
        ));
        assert!(matches!(
            ImagePlane::new(2, 2, vec![0.0; 3]),
            Err(Error::Shape(_))
        ));
        assert!(matches!(
            ImagePlane::new(1, 1, vec![f32::NAN]),
            Err(Error::Param(_))
        ));
    }

    #[test]
    fn multi_image_channel_limits() {
        let p = ImagePlane::zeros(2, 2).unwrap();
        assert!(MultiImage::new(vec![]).is_err());
        assert!(MultiImage::new(vec![p.clone(); 5]).is_err());
        assert!(MultiImage::new(vec![p.clone(), ImagePlane::zeros(3, 2).unwrap()]).is_err());
        assert_eq!(MultiImage::new(vec![p; 4]).unwrap().channels(), 4);
    }

    #[test]
    fn grayscale_identity_for_single_channel() {
        let p = plane(2, 1, &[0.1, 0.9]);
        let g = to_grayscale(&MultiImage::from_plane(p.clone())).unwrap();
        assert_eq!(g, p);
    }

    #[test]
    fn grayscale_weights() {
        let c = 0.37;
        let constant = MultiImage::new(vec![ImagePlane::filled(3, 3, c).unwrap(); 3]).unwrap();
        for &v in to_grayscale(&constant).unwrap().data() {
            assert!((v - c).abs() < 1e-7);
        }
        let red = MultiImage::new(vec![
            plane(1, 1, &[1.0]),
            plane(1, 1, &[0.0]),
            plane(1, 1, &[0.0]),
        ])
        .unwrap();
        assert!((to_grayscale(&red).unwrap().get(0, 0) - 0.299).abs() < 1e-7);
    }

    #[test]
    fn grayscale_rejects_two_channels() {
        let p = ImagePlane::zeros(1, 1).unwrap();
        let img = MultiImage::new(vec![p.clone(), p]).unwrap();
        assert!(matches!(
            to_grayscale(&img),
            Err(Error::UnsupportedFormat(_))
        ));
    }

    #[test]
    fn elementwise_cases() {
        let x = plane(2, 2, &[0.1, 0.2, 0.3, 0.4]);
        let ones = ImagePlane::filled(2, 2, 1.0).unwrap();
        assert_eq!(elementwise(&x, &ones, ElementwiseOp::Mul).unwrap(), x);
        assert!(elementwise(&x, &x, ElementwiseOp::Sub)
            .unwrap()
            .data()
            .iter()
            .all(|&v| v == 0.0));
        let half = plane(1, 1, &[0.5]);
        assert_eq!(
            elementwise(&half, &half, ElementwiseOp::Mul)
                .unwrap()
                .data(),
            &[0.25]
        );
        let y = plane(2, 2, &[0.5, 0.25, 2.0, 4.0]);
        let q = elementwise(&x, &y, ElementwiseOp::DivGuarded).unwrap();
        assert!((q.get(0, 0) - 0.2).abs() < 1e-7);
    }

    #[test]
    fn elementwise_errors() {
        let x = ImagePlane::zeros(2, 2).unwrap();
        let y = ImagePlane::zeros(2, 3).unwrap();
        assert!(matches!(
            elementwise(&x, &y, ElementwiseOp::Add),
            Err(Error::Shape(_))
        ));
        assert!(matches!(
            elementwise(&x, &x, ElementwiseOp::DivGuarded),
            Err(Error::Param(_))
        ));
    }

    #[test]
    fn params_validation_and_low_res_radius() {
        assert!(FilterParams::new(0, 0.1, 1).is_err());
        assert!(FilterParams::new(1, 0.0, 1).is_err());
        assert!(FilterParams::new(1, f64::NAN, 1).is_err());
        assert!(FilterParams::new(1, 0.1, 0).is_err());
        assert_eq!(FilterParams::new(16, 0.01, 4).unwrap().low_res_radius(), 4);
        assert_eq!(FilterParams::new(4, 0.04, 4).unwrap().low_res_radius(), 1);
        assert_eq!(FilterParams::new(2, 0.04, 8).unwrap().low_res_radius(), 1);
        assert_eq!(FilterParams::new(6, 0.04, 4).unwrap().low_res_radius(), 2);
        assert_eq!(FilterParams::new(60, 1e-6, 4).unwrap().low_res_radius(), 15);
    }

    proptest::proptest! {
        #[test]
        fn grayscale_stays_in_unit_range(r in 0f32..=1.0, g in 0f32..=1.0, b in 0f32..=1.0) {
            let img = MultiImage::new(vec![
                plane(1, 1, &[r]), plane(1, 1, &[g]), plane(1, 1, &[b]),
            ]).unwrap();
            let v = to_grayscale(&img).unwrap().get(0, 0);
            proptest::prop_assert!((0.0..=1.0).contains(&v));
        }

        #[test]
        fn add_and_mul_commute(v in proptest::collection::vec(-2f32..2.0, 8)) {
            let a = plane(2, 2, &v[..4]);
            let b = plane(2, 2, &v[4..]);
            for op in [ElementwiseOp::Add, ElementwiseOp::Mul] {
                proptest::prop_assert_eq!(elementwise(&a, &b, op).unwrap(), elementwise(&b, &a, op).unwrap());
            }
        }
    }
}
