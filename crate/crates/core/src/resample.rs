//! Integer-ratio subsampling and pixel-center bilinear upsampling.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::image::ImagePlane;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum SubsampleMethod {
    /// Top-left pixel of each `s x s` block.
    #[default]
    Nearest,
    /// Mean of each `s x s` block, clipped at the border.
    Bilinear,
}

impl FromStr for SubsampleMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "nearest" => Ok(Self::Nearest),
            "bilinear" => Ok(Self::Bilinear),
            other => Err(Error::Param(format!("unknown subsample method '{other}'"))),
        }
    }
}

impl fmt::Display for SubsampleMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Nearest => "nearest",
            Self::Bilinear => "bilinear",
        })
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum UpsampleMethod {
    #[default]
    Bilinear,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ResampleSpec {
    pub ratio: usize,
    pub method: SubsampleMethod,
}

impl ResampleSpec {
    pub fn new(ratio: usize, method: SubsampleMethod) -> Result<Self> {
        if ratio < 1 {
            return Err(Error::Param("resample ratio must be >= 1".into()));
        }
        Ok(Self { ratio, method })
    }

    /// `ceil(w / s) x ceil(h / s)`.
    pub fn low_res_dims(&self, width: usize, height: usize) -> (usize, usize) {
        (width.div_ceil(self.ratio), height.div_ceil(self.ratio))
    }
}

pub fn subsample(src: &ImagePlane, spec: &ResampleSpec) -> Result<ImagePlane> {
    if spec.ratio < 1 {
        return Err(Error::Param("resample ratio must be >= 1".into()));
    }
    if spec.ratio == 1 {
        return Ok(src.clone());
    }
    let s = spec.ratio;
    let (w, h) = src.dims();
    let (lw, lh) = spec.low_res_dims(w, h);
    let mut out = Vec::with_capacity(lw * lh);
    match spec.method {
        SubsampleMethod::Nearest => {
            for ly in 0..lh {
                let row = src.row(ly * s);
                out.extend(row.iter().step_by(s));
            }
        }
        SubsampleMethod::Bilinear => {
            let mut acc = vec![0f64; lw];
            for ly in 0..lh {
                let y0 = ly * s;
                let y1 = (y0 + s).min(h);
                acc.fill(0.0);
                for y in y0..y1 {
                    for (a, block) in acc.iter_mut().zip(src.row(y).chunks(s)) {
                        *a += block.iter().map(|&v| v as f64).sum::<f64>();
                    }
                }
                let rows = (y1 - y0) as f64;
                for (lx, &a) in acc.iter().enumerate() {
                    let cols = (((lx + 1) * s).min(w) - lx * s) as f64;
                    out.push((a / (rows * cols)) as f32);
                }
            }
        }
    }
    Ok(ImagePlane::from_raw(lw, lh, out))
}

/// Source sample positions for one axis under the pixel-center map
/// `src = (dst + 0.5) * (src_len / dst_len) - 0.5`, clamped to `[0, src_len - 1]`.
#[derive(Clone, Debug)]
pub(crate) struct AxisMap {
    lo: Vec<usize>,
    hi: Vec<usize>,
    frac: Vec<f32>,
}

impl AxisMap {
    pub(crate) fn new(src_len: usize, dst_len: usize) -> Self {
        let scale = src_len as f64 / dst_len as f64;
        let last = (src_len - 1) as f64;
        let mut map = Self {
            lo: Vec::with_capacity(dst_len),
            hi: Vec::with_capacity(dst_len),
            frac: Vec::with_capacity(dst_len),
        };
        for d in 0..dst_len {
            let pos = ((d as f64 + 0.5) * scale - 0.5).clamp(0.0, last);
            let lo = pos.floor() as usize;
            map.lo.push(lo);
            map.hi.push((lo + 1).min(src_len - 1));
            map.frac.push((pos - lo as f64) as f32);
        }
        map
    }
}

#[inline]
fn lerp(a: f32, b: f32, t: f32) -> f32 {
    a + t * (b - a)
}

/// Interpolates every source row to the target width.
fn upsample_rows(src: &ImagePlane, xmap: &AxisMap, target_width: usize) -> Vec<f32> {
    let mut out = Vec::with_capacity(src.height() * target_width);
    for row in src.rows() {
        out.extend(
            xmap.lo
                .iter()
                .zip(&xmap.hi)
                .zip(&xmap.frac)
                .map(|((&l, &h), &t)| lerp(row[l], row[h], t)),
        );
    }
    out
}

fn check_upsample_target(src: &ImagePlane, tw: usize, th: usize) -> Result<()> {
    if tw < src.width() || th < src.height() {
        return Err(Error::Param(format!(
            "upsample target {tw}x{th} is smaller than source {}x{}",
            src.width(),
            src.height()
        )));
    }
    Ok(())
}

/// Bilinear upsampling with pixel-center alignment.
pub fn upsample_bilinear(
    src: &ImagePlane,
    target_width: usize,
    target_height: usize,
) -> Result<ImagePlane> {
    check_upsample_target(src, target_width, target_height)?;
    let xmap = AxisMap::new(src.width(), target_width);
    let ymap = AxisMap::new(src.height(), target_height);
    let rows = upsample_rows(src, &xmap, target_width);
    let tw = target_width;
    let mut out = vec![0f32; tw * target_height];
    for (y, dst) in out.chunks_exact_mut(tw).enumerate() {
        let r0 = &rows[ymap.lo[y] * tw..(ymap.lo[y] + 1) * tw];
        let r1 = &rows[ymap.hi[y] * tw..(ymap.hi[y] + 1) * tw];
        let t = ymap.frac[y];
        for ((d, &a), &b) in dst.iter_mut().zip(r0).zip(r1) {
            *d = lerp(a, b, t);
        }
    }
    Ok(ImagePlane::from_raw(target_width, target_height, out))
}

/// Upsamples both coefficient maps to the guidance size and evaluates `a * guide + b`
/// without materializing the full-resolution maps. Bit-identical to
/// `upsample_bilinear` followed by `blend_output`.
pub(crate) fn upsample_blend(
    mean_a: &ImagePlane,
    mean_b: &ImagePlane,
    guide: &ImagePlane,
) -> Result<ImagePlane> {
    mean_a.ensure_same_dims(mean_b, "coefficient maps")?;
    let (tw, th) = guide.dims();
    check_upsample_target(mean_a, tw, th)?;
    let xmap = AxisMap::new(mean_a.width(), tw);
    let ymap = AxisMap::new(mean_a.height(), th);
    let rows_a = upsample_rows(mean_a, &xmap, tw);
    let rows_b = upsample_rows(mean_b, &xmap, tw);
    let mut out = vec![0f32; tw * th];
    for (y, (dst, g)) in out.chunks_exact_mut(tw).zip(guide.rows()).enumerate() {
        let (l, h, t) = (ymap.lo[y] * tw, ymap.hi[y] * tw, ymap.frac[y]);
        let (a0, a1) = (&rows_a[l..l + tw], &rows_a[h..h + tw]);
        let (b0, b1) = (&rows_b[l..l + tw], &rows_b[h..h + tw]);
        for (((((d, &g), &a0), &a1), &b0), &b1) in
            dst.iter_mut().zip(g).zip(a0).zip(a1).zip(b0).zip(b1)
        {
            *d = lerp(a0, a1, t) * g + lerp(b0, b1, t);
        }
    }
    Ok(ImagePlane::from_raw(tw, th, out))
}
