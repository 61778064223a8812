//! Ready-made pipelines: smoothing, detail enhancement, flash/no-flash
//! denoising and mask feathering.
//!
//! RGB inputs are guided by their luminance. [`Guidance::PerChannel`] makes
//! `smooth` guide each channel by itself instead.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::guided::filter;
use crate::image::{to_grayscale, FilterParams, ImagePlane, MultiImage};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AppKind {
    Smooth,
    Enhance,
    FlashDenoise,
    Feather,
}

impl AppKind {
    pub const ALL: [AppKind; 4] = [
        AppKind::Smooth,
        AppKind::Enhance,
        AppKind::FlashDenoise,
        AppKind::Feather,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            AppKind::Smooth => "smooth",
            AppKind::Enhance => "enhance",
            AppKind::FlashDenoise => "flash-denoise",
            AppKind::Feather => "feather",
        }
    }

    pub fn preset(&self) -> AppPreset {
        match self {
            AppKind::Smooth => AppPreset::SMOOTH,
            AppKind::Enhance => AppPreset::ENHANCE,
            AppKind::FlashDenoise => AppPreset::FLASH_DENOISE,
            AppKind::Feather => AppPreset::FEATHER,
        }
    }
}

impl fmt::Display for AppKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for AppKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        AppKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::Param(format!("unknown application '{s}'")))
    }
}

/// Default parameters of one application.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AppPreset {
    pub kind: AppKind,
    pub radius: usize,
    pub epsilon: f64,
    pub subsample: usize,
    /// Detail gain, enhancement only.
    pub gain: Option<f64>,
}

impl AppPreset {
    pub const SMOOTH: AppPreset = AppPreset {
        kind: AppKind::Smooth,
        radius: 4,
        epsilon: 0.2 * 0.2,
        subsample: 4,
        gain: None,
    };

    pub const ENHANCE: AppPreset = AppPreset {
        kind: AppKind::Enhance,
        radius: 16,
        epsilon: 0.1 * 0.1,
        subsample: 4,
        gain: Some(5.0),
    };

    pub const FLASH_DENOISE: AppPreset = AppPreset {
        kind: AppKind::FlashDenoise,
        radius: 8,
        epsilon: 0.02 * 0.02,
        subsample: 4,
        gain: None,
    };

    pub const FEATHER: AppPreset = AppPreset {
        kind: AppKind::Feather,
        radius: 60,
        epsilon: 0.001 * 0.001,
        subsample: 4,
        gain: None,
    };

    pub fn params(&self) -> FilterParams {
        FilterParams::new(self.radius, self.epsilon, self.subsample).expect("presets are valid")
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Guidance {
    /// Luminance of the input guides every channel.
    #[default]
    Luminance,
    /// Each channel guides itself.
    PerChannel,
}

/// Edge-preserving smoothing with the input as its own guide.
pub fn smooth(img: &MultiImage, params: &FilterParams, guidance: Guidance) -> Result<MultiImage> {
    match guidance {
        Guidance::Luminance => {
            let guide = luminance_guide(img)?;
            filter(&guide, img, params)
        }
        Guidance::PerChannel => {
            let planes = img
                .planes()
                .iter()
                .map(|p| {
                    let q = filter(p, &MultiImage::from_plane(p.clone()), params)?;
                    Ok(q.into_planes().remove(0))
                })
                .collect::<Result<Vec<_>>>()?;
            MultiImage::new(planes)
        }
    }
}

/// Boosts the detail layer: `out = (img - base) * gain + base` with `base = smooth(img)`.
/// The result is not clamped.
pub fn enhance(
    img: &MultiImage,
    gain: f64,
    params: &FilterParams,
    guidance: Guidance,
) -> Result<MultiImage> {
    if !(gain >= 0.0) || !gain.is_finite() {
        return Err(Error::Param(format!(
            "gain must be finite and >= 0, got {gain}"
        )));
    }
    let base = smooth(img, params, guidance)?;
    let planes = img
        .planes()
        .iter()
        .zip(base.planes())
        .map(|(src, base)| {
            let data = src
                .data()
                .iter()
                .zip(base.data())
                .map(|(&x, &b)| {
                    let (x, b) = (x as f64, b as f64);
                    ((x - b) * gain + b) as f32
                })
                .collect();
            ImagePlane::new(src.width(), src.height(), data)
        })
        .collect::<Result<Vec<_>>>()?;
    MultiImage::new(planes)
}

/// Denoises `noflash` using the luminance of `flash` as guidance.
pub fn flash_denoise(
    noflash: &MultiImage,
    flash: &MultiImage,
    params: &FilterParams,
) -> Result<MultiImage> {
    if noflash.dims() != flash.dims() {
        return Err(crate::error::shape_mismatch(
            "no-flash and flash images",
            noflash.dims(),
            flash.dims(),
        ));
    }
    let guide = luminance_guide(flash)?;
    filter(&guide, noflash, params)
}

/// Turns a hard mask into a soft matte that follows the edges of `guide`.
pub fn feather(mask: &ImagePlane, guide: &MultiImage, params: &FilterParams) -> Result<ImagePlane> {
    if mask.dims() != guide.dims() {
        return Err(crate::error::shape_mismatch(
            "mask and guide",
            mask.dims(),
            guide.dims(),
        ));
    }
    let gray = luminance_guide(guide)?;
    let q = filter(&gray, &MultiImage::from_plane(mask.clone()), params)?;
    Ok(q.into_planes().remove(0))
}

/// Grayscale guide; 4-channel inputs drop their last plane first.
fn luminance_guide(img: &MultiImage) -> Result<ImagePlane> {
    match img.channels() {
        2 => Ok(img.plane(0).clone()),
        4 => to_grayscale(&MultiImage::new(img.planes()[..3].to_vec())?),
        _ => to_grayscale(img),
    }
}
