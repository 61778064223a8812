//! Brute-force reference implementations. Everything here works directly on
//! `f64` samples with explicit window loops and shares no code with the
//! library's filtering paths.

#![allow(dead_code)]

use fastgf::{ImagePlane, MultiImage};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_plane(rng: &mut ChaCha8Rng, w: usize, h: usize) -> ImagePlane {
    ImagePlane::new(w, h, (0..w * h).map(|_| rng.random::<f32>()).collect()).unwrap()
}

pub fn random_multi(rng: &mut ChaCha8Rng, w: usize, h: usize, channels: usize) -> MultiImage {
    MultiImage::new((0..channels).map(|_| random_plane(rng, w, h)).collect()).unwrap()
}

/// A plain `f64` raster used by the oracles.
#[derive(Clone, Debug)]
pub struct Grid {
    pub w: usize,
    pub h: usize,
    pub v: Vec<f64>,
}

impl Grid {
    pub fn from_plane(p: &ImagePlane) -> Self {
        Self {
            w: p.width(),
            h: p.height(),
            v: p.data().iter().map(|&x| x as f64).collect(),
        }
    }

    pub fn at(&self, x: usize, y: usize) -> f64 {
        self.v[y * self.w + x]
    }
}

fn window(c: usize, r: usize, len: usize) -> std::ops::RangeInclusive<usize> {
    c.saturating_sub(r)..=(c + r).min(len - 1)
}

/// Double-loop clipped window mean.
pub fn naive_box_mean(src: &Grid, r: usize) -> Grid {
    let mut v = Vec::with_capacity(src.w * src.h);
    for y in 0..src.h {
        for x in 0..src.w {
            let mut sum = 0.0;
            let mut n = 0usize;
            for yy in window(y, r, src.h) {
                for xx in window(x, r, src.w) {
                    sum += src.at(xx, yy);
                    n += 1;
                }
            }
            v.push(sum / n as f64);
        }
    }
    Grid {
        w: src.w,
        h: src.h,
        v,
    }
}

/// Per-window linear coefficients `(a_k, b_k)` from explicit centered moments.
pub fn brute_window_coefficients(i: &Grid, p: &Grid, r: usize, eps: f64) -> (Grid, Grid) {
    let (w, h) = (i.w, i.h);
    let mut a = Vec::with_capacity(w * h);
    let mut b = Vec::with_capacity(w * h);
    for ky in 0..h {
        for kx in 0..w {
            let mut pix = Vec::new();
            for y in window(ky, r, h) {
                for x in window(kx, r, w) {
                    pix.push((i.at(x, y), p.at(x, y)));
                }
            }
            let n = pix.len() as f64;
            let mu = pix.iter().map(|q| q.0).sum::<f64>() / n;
            let pbar = pix.iter().map(|q| q.1).sum::<f64>() / n;
            let var = pix.iter().map(|q| (q.0 - mu).powi(2)).sum::<f64>() / n;
            let cov = pix.iter().map(|q| q.0 * q.1).sum::<f64>() / n - mu * pbar;
            let ak = cov / (var + eps);
            a.push(ak);
            b.push(pbar - ak * mu);
        }
    }
    (Grid { w, h, v: a }, Grid { w, h, v: b })
}

/// `(mean_a, mean_b)`: window averages of the per-window coefficients.
pub fn brute_coefficients(i: &Grid, p: &Grid, r: usize, eps: f64) -> (Grid, Grid) {
    let (a, b) = brute_window_coefficients(i, p, r, eps);
    (naive_box_mean(&a, r), naive_box_mean(&b, r))
}

/// Exact guided filter output by direct evaluation.
pub fn brute_guided(i: &Grid, p: &Grid, r: usize, eps: f64) -> Grid {
    let (ma, mb) = brute_coefficients(i, p, r, eps);
    blend(&ma, &mb, i)
}

pub fn blend(ma: &Grid, mb: &Grid, i: &Grid) -> Grid {
    let v = (0..i.v.len()).map(|k| ma.v[k] * i.v[k] + mb.v[k]).collect();
    Grid { w: i.w, h: i.h, v }
}

/// Top-left pick (`nearest == true`) or clipped block mean.
pub fn oracle_subsample(src: &Grid, s: usize, nearest: bool) -> Grid {
    let lw = src.w.div_ceil(s);
    let lh = src.h.div_ceil(s);
    let mut v = Vec::with_capacity(lw * lh);
    for ly in 0..lh {
        for lx in 0..lw {
            if nearest {
                v.push(src.at(lx * s, ly * s));
            } else {
                let mut sum = 0.0;
                let mut n = 0;
                for y in ly * s..((ly + 1) * s).min(src.h) {
                    for x in lx * s..((lx + 1) * s).min(src.w) {
                        sum += src.at(x, y);
                        n += 1;
                    }
                }
                v.push(sum / n as f64);
            }
        }
    }
    Grid { w: lw, h: lh, v }
}

/// Direct 2-D bilinear evaluation with the pixel-center coordinate map.
pub fn oracle_upsample(src: &Grid, tw: usize, th: usize) -> Grid {
    let sx = src.w as f64 / tw as f64;
    let sy = src.h as f64 / th as f64;
    let mut v = Vec::with_capacity(tw * th);
    for y in 0..th {
        let fy = ((y as f64 + 0.5) * sy - 0.5).clamp(0.0, (src.h - 1) as f64);
        let y0 = fy.floor() as usize;
        let y1 = (y0 + 1).min(src.h - 1);
        let ty = fy - y0 as f64;
        for x in 0..tw {
            let fx = ((x as f64 + 0.5) * sx - 0.5).clamp(0.0, (src.w - 1) as f64);
            let x0 = fx.floor() as usize;
            let x1 = (x0 + 1).min(src.w - 1);
            let tx = fx - x0 as f64;
            let val = (1.0 - tx) * (1.0 - ty) * src.at(x0, y0)
                + tx * (1.0 - ty) * src.at(x1, y0)
                + (1.0 - tx) * ty * src.at(x0, y1)
                + tx * ty * src.at(x1, y1);
            v.push(val);
        }
    }
    Grid { w: tw, h: th, v }
}

/// Subsample, low-resolution coefficients, upsample, full-resolution blend.
pub fn oracle_fast_guided(i: &Grid, p: &Grid, r: usize, eps: f64, s: usize, nearest: bool) -> Grid {
    let li = oracle_subsample(i, s, nearest);
    let lp = oracle_subsample(p, s, nearest);
    let lr = ((r as f64 / s as f64).round() as usize).max(1);
    let (ma, mb) = brute_coefficients(&li, &lp, lr, eps);
    let ua = oracle_upsample(&ma, i.w, i.h);
    let ub = oracle_upsample(&mb, i.w, i.h);
    blend(&ua, &ub, i)
}

pub fn max_abs_diff(got: &ImagePlane, want: &Grid) -> f64 {
    assert_eq!(got.dims(), (want.w, want.h));
    got.data()
        .iter()
        .zip(&want.v)
        .map(|(&g, &w)| (g as f64 - w).abs())
        .fold(0.0, f64::max)
}

pub fn max_abs_diff_planes(a: &ImagePlane, b: &ImagePlane) -> f64 {
    assert_eq!(a.dims(), b.dims());
    a.data()
        .iter()
        .zip(b.data())
        .map(|(&x, &y)| (x as f64 - y as f64).abs())
        .fold(0.0, f64::max)
}

/// The randomized corpus shared by the oracle checks: up to 16x16, 1 or 3 channels.
pub struct Case {
    pub guide: ImagePlane,
    pub input: MultiImage,
}

pub fn corpus(count: usize, seed: u64) -> Vec<Case> {
    let mut rng = rng(seed);
    (0..count)
        .map(|k| {
            let w = rng.random_range(1..=16);
            let h = rng.random_range(1..=16);
            let channels = if k % 2 == 0 { 1 } else { 3 };
            Case {
                guide: random_plane(&mut rng, w, h),
                input: random_multi(&mut rng, w, h, channels),
            }
        })
        .collect()
}
