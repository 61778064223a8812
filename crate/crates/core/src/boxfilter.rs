//! Radius-independent mean filter.
//!
//! A single streaming pass keeps one `f64` accumulator per column holding the
//! sum over the rows currently inside the window. Each output row then takes
//! a prefix sum over those column totals and reads window sums as prefix
//! differences. Both steps cost O(1) per pixel regardless of the radius.
//!
//! Windows are clipped at the image border and normalized by the number of
//! in-bounds pixels. The count is the product of the clipped 1-D extents,
//! which is exactly what box-filtering an all-ones image gives.

use crate::error::{Error, Result};
use crate::image::ImagePlane;

/// Square `(2r+1) x (2r+1)` window clipped to the image.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WindowSpec {
    pub radius: usize,
}

impl WindowSpec {
    pub fn new(radius: usize) -> Result<Self> {
        if radius < 1 {
            return Err(Error::Param("box filter radius must be >= 1".into()));
        }
        Ok(Self { radius })
    }

    /// Inclusive index range of the window centered at `center` along an axis of `len` pixels.
    #[inline]
    pub fn extent(&self, center: usize, len: usize) -> (usize, usize) {
        (
            center.saturating_sub(self.radius),
            (center + self.radius).min(len - 1),
        )
    }

    /// In-bounds pixel count of the window centered at `(x, y)`.
    pub fn pixel_count(&self, width: usize, height: usize, x: usize, y: usize) -> usize {
        let (x0, x1) = self.extent(x, width);
        let (y0, y1) = self.extent(y, height);
        (x1 - x0 + 1) * (y1 - y0 + 1)
    }

    fn inverse_counts(&self, len: usize) -> Vec<f64> {
        (0..len)
            .map(|c| {
                let (lo, hi) = self.extent(c, len);
                1.0 / (hi - lo + 1) as f64
            })
            .collect()
    }
}

/// Mean of `src` over the clipped window of radius `radius` at every pixel.
pub fn box_mean(src: &ImagePlane, radius: usize) -> Result<ImagePlane> {
    let window = WindowSpec::new(radius)?;
    let (w, h) = src.dims();
    let norm = Normalizer::new(window, w, h);
    let mut out = vec![0f32; w * h];
    let mut scratch = Scratch::new(w);
    box_mean_into(src.data(), w, h, window, &norm, &mut scratch, &mut out);
    Ok(ImagePlane::from_raw(w, h, out))
}

/// Box-filters two same-sized planes, sharing the normalization tables and scratch buffers.
pub fn box_mean_pair(
    a: &ImagePlane,
    b: &ImagePlane,
    radius: usize,
) -> Result<(ImagePlane, ImagePlane)> {
    let window = WindowSpec::new(radius)?;
    a.ensure_same_dims(b, "box_mean_pair inputs")?;
    let (w, h) = a.dims();
    let norm = Normalizer::new(window, w, h);
    let mut scratch = Scratch::new(w);
    let mut out_a = vec![0f32; w * h];
    let mut out_b = vec![0f32; w * h];
    box_mean_into(a.data(), w, h, window, &norm, &mut scratch, &mut out_a);
    box_mean_into(b.data(), w, h, window, &norm, &mut scratch, &mut out_b);
    Ok((
        ImagePlane::from_raw(w, h, out_a),
        ImagePlane::from_raw(w, h, out_b),
    ))
}

struct Normalizer {
    inv_x: Vec<f64>,
    inv_y: Vec<f64>,
}

impl Normalizer {
    fn new(window: WindowSpec, w: usize, h: usize) -> Self {
        Self {
            inv_x: window.inverse_counts(w),
            inv_y: window.inverse_counts(h),
        }
    }
}

struct Scratch {
    col_sums: Vec<f64>,
    prefix: Vec<f64>,
}

impl Scratch {
    fn new(w: usize) -> Self {
        Self {
            col_sums: vec![0.0; w],
            prefix: vec![0.0; w + 1],
        }
    }
}

fn box_mean_into(
    src: &[f32],
    w: usize,
    h: usize,
    window: WindowSpec,
    norm: &Normalizer,
    scratch: &mut Scratch,
    out: &mut [f32],
) {
    let r = window.radius;
    let row = |y: usize| &src[y * w..(y + 1) * w];
    let Scratch { col_sums, prefix } = scratch;

    col_sums.fill(0.0);
    for y in 0..=r.min(h - 1) {
        for (acc, &v) in col_sums.iter_mut().zip(row(y)) {
            *acc += v as f64;
        }
    }

    for y in 0..h {
        if y > 0 {
            let entering = y + r;
            if entering < h {
                for (acc, &v) in col_sums.iter_mut().zip(row(entering)) {
                    *acc += v as f64;
                }
            }
            if y > r {
                for (acc, &v) in col_sums.iter_mut().zip(row(y - r - 1)) {
                    *acc -= v as f64;
                }
            }
        }

        let mut running = 0.0;
        for (p, &c) in prefix[1..].iter_mut().zip(col_sums.iter()) {
            running += c;
            *p = running;
        }

        let inv_y = norm.inv_y[y];
        let dst = &mut out[y * w..(y + 1) * w];
        let window_sum = |x: usize| prefix[(x + r).min(w - 1) + 1] - prefix[x.saturating_sub(r)];
        // Columns whose window touches neither border: [r, w - r - 1].
        let (head, tail) = if w > 2 * r { (r, w - r) } else { (w, w) };
        for x in (0..head).chain(tail..w) {
            dst[x] = (window_sum(x) * norm.inv_x[x] * inv_y) as f32;
        }
        if head < tail {
            let inv = norm.inv_x[r] * inv_y;
            let upper = &prefix[2 * r + 1..];
            for ((d, &hi), &lo) in dst[head..tail].iter_mut().zip(upper).zip(prefix.iter()) {
                *d = ((hi - lo) * inv) as f32;
            }
        }
    }
}
