//! Decoding and encoding of PNG and binary PGM/PPM files.
//!
//! Samples are normalized to `[0, 1]` on decode. On encode they are clamped
//! to `[0, 1]` and quantized with round-half-up.

use std::fmt;
use std::fs;
use std::io::{self, Cursor};
use std::path::{Path, PathBuf};

use image::{DynamicImage, ImageFormat};

use crate::error::{Error, Result};
use crate::image::{ImagePlane, MultiImage};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FileFormat {
    Png,
    Pgm,
    Ppm,
}

impl FileFormat {
    pub fn from_path(path: &Path) -> Result<Self> {
        let ext = path
            .extension()
            .and_then(|e| e.to_str())
            .map(str::to_ascii_lowercase);
        match ext.as_deref() {
            Some("png") => Ok(Self::Png),
            Some("pgm") => Ok(Self::Pgm),
            Some("ppm") => Ok(Self::Ppm),
            _ => Err(Error::UnsupportedFormat(format!(
                "cannot infer image format from '{}'",
                path.display()
            ))),
        }
    }

    fn sniff(bytes: &[u8]) -> Result<Self> {
        const PNG_MAGIC: &[u8] = b"\x89PNG\r\n\x1a\n";
        if bytes.starts_with(PNG_MAGIC) {
            Ok(Self::Png)
        } else if bytes.starts_with(b"P5") {
            Ok(Self::Pgm)
        } else if bytes.starts_with(b"P6") {
            Ok(Self::Ppm)
        } else {
            Err(Error::UnsupportedFormat(
                "not a PNG or binary PGM/PPM file".into(),
            ))
        }
    }
}

impl fmt::Display for FileFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Png => "PNG",
            Self::Pgm => "PGM",
            Self::Ppm => "PPM",
        })
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum BitDepth {
    #[default]
    Eight,
    Sixteen,
}

impl BitDepth {
    pub fn max_value(&self) -> u32 {
        match self {
            BitDepth::Eight => 255,
            BitDepth::Sixteen => 65535,
        }
    }
}

/// A decoded file together with where it came from.
#[derive(Clone, Debug)]
pub struct ImageFile {
    pub path: PathBuf,
    pub format: FileFormat,
    pub bit_depth: BitDepth,
    pub image: MultiImage,
}

impl ImageFile {
    pub fn open(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let bytes = read_file(path)?;
        let format = FileFormat::sniff(&bytes)?;
        let (image, bit_depth) = decode_bytes_with_depth(&bytes)?;
        Ok(Self {
            path: path.to_path_buf(),
            format,
            bit_depth,
            image,
        })
    }
}

fn read_file(path: &Path) -> Result<Vec<u8>> {
    fs::read(path).map_err(|e| match e.kind() {
        io::ErrorKind::NotFound => Error::NotFound(path.to_path_buf()),
        _ => Error::Io(e),
    })
}

pub fn decode(path: impl AsRef<Path>) -> Result<MultiImage> {
    ImageFile::open(path).map(|f| f.image)
}

pub fn decode_bytes(bytes: &[u8]) -> Result<MultiImage> {
    decode_bytes_with_depth(bytes).map(|(img, _)| img)
}

fn decode_bytes_with_depth(bytes: &[u8]) -> Result<(MultiImage, BitDepth)> {
    match FileFormat::sniff(bytes)? {
        FileFormat::Png => decode_png(bytes),
        FileFormat::Pgm | FileFormat::Ppm => decode_pnm(bytes),
    }
}

/// Writes `img`, choosing the format from the file extension.
pub fn encode(img: &MultiImage, path: impl AsRef<Path>, depth: BitDepth) -> Result<()> {
    let path = path.as_ref();
    let bytes = encode_bytes(img, FileFormat::from_path(path)?, depth)?;
    fs::write(path, bytes)?;
    Ok(())
}

pub fn encode_bytes(img: &MultiImage, format: FileFormat, depth: BitDepth) -> Result<Vec<u8>> {
    match format {
        FileFormat::Png => encode_png(img, depth),
        FileFormat::Pgm | FileFormat::Ppm => encode_pnm(img, format, depth),
    }
}

/// Clamp to `[0, 1]`, scale to `max`, round half up.
#[inline]
pub fn quantize(value: f32, max: u32) -> u32 {
    let v = (value as f64).clamp(0.0, 1.0) * max as f64;
    (v + 0.5).floor() as u32
}

fn planes_from_interleaved<T: Copy + Into<f64>>(
    width: usize,
    height: usize,
    channels: usize,
    samples: &[T],
    max: f64,
) -> Result<MultiImage> {
    let planes = (0..channels)
        .map(|c| {
            let data = samples
                .iter()
                .skip(c)
                .step_by(channels)
                .map(|&v| (v.into() / max) as f32)
                .collect();
            ImagePlane::new(width, height, data)
        })
        .collect::<Result<Vec<_>>>()?;
    MultiImage::new(planes)
}

fn decode_png(bytes: &[u8]) -> Result<(MultiImage, BitDepth)> {
    let img = image::load_from_memory_with_format(bytes, ImageFormat::Png)
        .map_err(|e| Error::Corrupt(e.to_string()))?;
    let (w, h) = (img.width() as usize, img.height() as usize);
    match img {
        DynamicImage::ImageLuma8(b) => Ok((
            planes_from_interleaved(w, h, 1, b.as_raw(), 255.0)?,
            BitDepth::Eight,
        )),
        DynamicImage::ImageLumaA8(b) => Ok((
            planes_from_interleaved(w, h, 2, b.as_raw(), 255.0)?,
            BitDepth::Eight,
        )),
        DynamicImage::ImageRgb8(b) => Ok((
            planes_from_interleaved(w, h, 3, b.as_raw(), 255.0)?,
            BitDepth::Eight,
        )),
        DynamicImage::ImageRgba8(b) => Ok((
            planes_from_interleaved(w, h, 4, b.as_raw(), 255.0)?,
            BitDepth::Eight,
        )),
        DynamicImage::ImageLuma16(b) => Ok((
            planes_from_interleaved(w, h, 1, b.as_raw(), 65535.0)?,
            BitDepth::Sixteen,
        )),
        DynamicImage::ImageLumaA16(b) => Ok((
            planes_from_interleaved(w, h, 2, b.as_raw(), 65535.0)?,
            BitDepth::Sixteen,
        )),
        DynamicImage::ImageRgb16(b) => Ok((
            planes_from_interleaved(w, h, 3, b.as_raw(), 65535.0)?,
            BitDepth::Sixteen,
        )),
        DynamicImage::ImageRgba16(b) => Ok((
            planes_from_interleaved(w, h, 4, b.as_raw(), 65535.0)?,
            BitDepth::Sixteen,
        )),
        other => Err(Error::UnsupportedFormat(format!(
            "PNG color type {:?}",
            other.color()
        ))),
    }
}

fn interleave(img: &MultiImage, max: u32) -> Vec<u32> {
    let c = img.channels();
    let mut out = vec![0u32; img.width() * img.height() * c];
    for (ch, plane) in img.planes().iter().enumerate() {
        for (i, &v) in plane.data().iter().enumerate() {
            out[i * c + ch] = quantize(v, max);
        }
    }
    out
}

fn encode_png(img: &MultiImage, depth: BitDepth) -> Result<Vec<u8>> {
    let (w, h) = (img.width() as u32, img.height() as u32);
    let samples = interleave(img, depth.max_value());
    let dynamic = match depth {
        BitDepth::Eight => {
            let raw: Vec<u8> = samples.iter().map(|&v| v as u8).collect();
            match img.channels() {
                1 => image::GrayImage::from_raw(w, h, raw).map(DynamicImage::ImageLuma8),
                2 => image::GrayAlphaImage::from_raw(w, h, raw).map(DynamicImage::ImageLumaA8),
                3 => image::RgbImage::from_raw(w, h, raw).map(DynamicImage::ImageRgb8),
                _ => image::RgbaImage::from_raw(w, h, raw).map(DynamicImage::ImageRgba8),
            }
        }
        BitDepth::Sixteen => {
            let raw: Vec<u16> = samples.iter().map(|&v| v as u16).collect();
            match img.channels() {
                1 => image::ImageBuffer::from_raw(w, h, raw).map(DynamicImage::ImageLuma16),
                2 => image::ImageBuffer::from_raw(w, h, raw).map(DynamicImage::ImageLumaA16),
                3 => image::ImageBuffer::from_raw(w, h, raw).map(DynamicImage::ImageRgb16),
                _ => image::ImageBuffer::from_raw(w, h, raw).map(DynamicImage::ImageRgba16),
            }
        }
    }
    .expect("buffer length matches dimensions");
    let mut out = Cursor::new(Vec::new());
    dynamic
        .write_to(&mut out, ImageFormat::Png)
        .map_err(|e| Error::Io(io::Error::other(e)))?;
    Ok(out.into_inner())
}

fn encode_pnm(img: &MultiImage, format: FileFormat, depth: BitDepth) -> Result<Vec<u8>> {
    let (magic, channels) = match format {
        FileFormat::Pgm => ("P5", 1),
        _ => ("P6", 3),
    };
    if img.channels() != channels {
        return Err(Error::UnsupportedFormat(format!(
            "{format} needs {channels} channel(s), image has {}",
            img.channels()
        )));
    }
    let max = depth.max_value();
    let mut out = format!("{magic}\n{} {}\n{max}\n", img.width(), img.height()).into_bytes();
    for v in interleave(img, max) {
        match depth {
            BitDepth::Eight => out.push(v as u8),
            BitDepth::Sixteen => out.extend_from_slice(&(v as u16).to_be_bytes()),
        }
    }
    Ok(out)
}

struct HeaderReader<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl HeaderReader<'_> {
    fn skip_whitespace_and_comments(&mut self) {
        while let Some(&b) = self.bytes.get(self.pos) {
            if b == b'#' {
                while self.bytes.get(self.pos).is_some_and(|&b| b != b'\n') {
                    self.pos += 1;
                }
            } else if b.is_ascii_whitespace() {
                self.pos += 1;
            } else {
                break;
            }
        }
    }

    fn number(&mut self, what: &str) -> Result<usize> {
        self.skip_whitespace_and_comments();
        let start = self.pos;
        while self.bytes.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        std::str::from_utf8(&self.bytes[start..self.pos])
            .ok()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| Error::Corrupt(format!("bad PNM header field: {what}")))
    }
}

fn decode_pnm(bytes: &[u8]) -> Result<(MultiImage, BitDepth)> {
    let channels = if bytes.starts_with(b"P5") { 1 } else { 3 };
    let mut header = HeaderReader { bytes, pos: 2 };
    let width = header.number("width")?;
    let height = header.number("height")?;
    let maxval = header.number("maxval")?;
    if width == 0 || height == 0 {
        return Err(Error::Corrupt("PNM image has zero size".into()));
    }
    if maxval == 0 || maxval > 65535 {
        return Err(Error::Corrupt(format!("PNM maxval {maxval} out of range")));
    }
    if !bytes.get(header.pos).is_some_and(u8::is_ascii_whitespace) {
        return Err(Error::Corrupt("missing separator after PNM header".into()));
    }
    let payload = &bytes[header.pos + 1..];
    let count = width
        .checked_mul(height)
        .and_then(|n| n.checked_mul(channels))
        .ok_or_else(|| Error::Corrupt("PNM dimensions overflow".into()))?;
    let wide = maxval > 255;
    let needed = if wide { count * 2 } else { count };
    if payload.len() < needed {
        return Err(Error::Corrupt(format!(
            "PNM payload has {} bytes, expected {needed}",
            payload.len()
        )));
    }
    let max = maxval as f64;
    if wide {
        let samples: Vec<u16> = payload[..needed]
            .chunks_exact(2)
            .map(|c| u16::from_be_bytes([c[0], c[1]]))
            .collect();
        Ok((
            planes_from_interleaved(width, height, channels, &samples, max)?,
            BitDepth::Sixteen,
        ))
    } else {
        Ok((
            planes_from_interleaved(width, height, channels, &payload[..needed], max)?,
            BitDepth::Eight,
        ))
    }
}
