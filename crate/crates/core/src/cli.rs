//! Command-line front end. Defaults of every application subcommand come from
//! its [`AppPreset`].

use std::ffi::OsString;
use std::fs;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::apps::{self, AppPreset, Guidance};
use crate::bench::{run_bench_with, BenchConfig};
use crate::error::{Error, Result};
use crate::guided;
use crate::image::{to_grayscale, FilterParams, MultiImage};
use crate::io::{decode, encode, BitDepth};
use crate::resample::SubsampleMethod;
use crate::synth;

#[derive(Debug, Parser)]
#[command(
    name = "fastgf",
    version,
    about = "Guided filtering with optional subsampling"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Edge-preserving smoothing (defaults r=4, eps=0.2^2, s=4)
    Smooth(SmoothArgs),
    /// Detail enhancement (defaults r=16, eps=0.1^2, gain=5, s=4)
    Enhance(EnhanceArgs),
    /// Denoise --input using --guide as the flash image (defaults r=8, eps=0.02^2, s=4)
    FlashDenoise(GuidedArgs),
    /// Feather the --input mask along the edges of --guide (defaults r=60, eps=0.001^2, s=4)
    Feather(GuidedArgs),
    /// Raw guided filter of --input steered by --guide (defaults r=4, eps=0.2^2, s=4)
    Filter(GuidedArgs),
    /// Time the filter at several subsample ratios and report degradation
    Bench(BenchArgs),
}

#[derive(Debug, Args)]
struct FilterFlags {
    /// Window radius in pixels
    #[arg(long)]
    radius: Option<usize>,
    /// Regularization, in squared [0,1] intensity units
    #[arg(long)]
    eps: Option<f64>,
    /// Subsample ratio s
    #[arg(long)]
    subsample: Option<usize>,
    /// nearest | bilinear
    #[arg(long, default_value = "nearest")]
    subsample_method: SubsampleMethod,
    /// Force the exact full-resolution filter (s=1)
    #[arg(long)]
    exact: bool,
    /// Output bit depth: 8 or 16
    #[arg(long, default_value = "8", value_parser = parse_depth)]
    bit_depth: BitDepth,
}

impl FilterFlags {
    fn params(&self, preset: &AppPreset) -> Result<FilterParams> {
        let subsample = if self.exact {
            1
        } else {
            self.subsample.unwrap_or(preset.subsample)
        };
        Ok(FilterParams::new(
            self.radius.unwrap_or(preset.radius),
            self.eps.unwrap_or(preset.epsilon),
            subsample,
        )?
        .with_subsample_method(self.subsample_method))
    }

    fn depth(&self) -> BitDepth {
        self.bit_depth
    }
}

#[derive(Debug, Args)]
struct SmoothArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    output: PathBuf,
    /// Guide each channel by itself instead of by luminance
    #[arg(long)]
    per_channel: bool,
    #[command(flatten)]
    flags: FilterFlags,
}

#[derive(Debug, Args)]
struct EnhanceArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    output: PathBuf,
    /// Detail gain
    #[arg(long)]
    gain: Option<f64>,
    #[arg(long)]
    per_channel: bool,
    #[command(flatten)]
    flags: FilterFlags,
}

#[derive(Debug, Args)]
struct GuidedArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    guide: PathBuf,
    #[arg(long)]
    output: PathBuf,
    #[command(flatten)]
    flags: FilterFlags,
}

#[derive(Debug, Args)]
struct BenchArgs {
    /// Filtering input; a synthetic image is generated when absent
    #[arg(long)]
    input: Option<PathBuf>,
    /// Guidance image; defaults to the input's luminance
    #[arg(long)]
    guide: Option<PathBuf>,
    /// Side length of the synthetic image
    #[arg(long, default_value_t = 2048)]
    size: usize,
    /// Channels of the synthetic image
    #[arg(long, default_value_t = 1)]
    channels: usize,
    #[arg(long, default_value_t = 16)]
    radius: usize,
    #[arg(long, default_value_t = 0.01)]
    eps: f64,
    #[arg(long, default_value = "nearest")]
    subsample_method: SubsampleMethod,
    /// Comma-separated subsample ratios
    #[arg(long, value_delimiter = ',', default_values_t = [1usize, 2, 4, 8])]
    ratios: Vec<usize>,
    /// Timed runs per ratio
    #[arg(long, default_value_t = 5)]
    runs: usize,
    #[arg(long, default_value_t = 1)]
    threads: usize,
    /// CSV destination; stdout when absent
    #[arg(long)]
    output: Option<PathBuf>,
}

/// Parses `args` (including the program name) and runs the command.
/// Returns 0 on success, 2 on usage errors and 1 on processing errors.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    match execute(cli.command) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}

/// Sizes the global thread pool from `GF_THREADS`, if set.
pub fn init_thread_pool_from_env() {
    if let Some(n) = std::env::var("GF_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .filter(|&n| n > 0)
    {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global();
    }
}

fn execute(command: Command) -> Result<()> {
    match command {
        Command::Smooth(a) => {
            let img = decode(&a.input)?;
            let out = apps::smooth(
                &img,
                &a.flags.params(&AppPreset::SMOOTH)?,
                guidance(a.per_channel),
            )?;
            encode(&out, &a.output, a.flags.depth())
        }
        Command::Enhance(a) => {
            let img = decode(&a.input)?;
            let gain = a.gain.or(AppPreset::ENHANCE.gain).unwrap_or(5.0);
            let out = apps::enhance(
                &img,
                gain,
                &a.flags.params(&AppPreset::ENHANCE)?,
                guidance(a.per_channel),
            )?;
            encode(&out, &a.output, a.flags.depth())
        }
        Command::FlashDenoise(a) => {
            let noflash = decode(&a.input)?;
            let flash = decode(&a.guide)?;
            let out = apps::flash_denoise(
                &noflash,
                &flash,
                &a.flags.params(&AppPreset::FLASH_DENOISE)?,
            )?;
            encode(&out, &a.output, a.flags.depth())
        }
        Command::Feather(a) => {
            let mask = decode(&a.input)?;
            if mask.channels() != 1 {
                return Err(Error::UnsupportedFormat(format!(
                    "mask must be single-channel, got {} channels",
                    mask.channels()
                )));
            }
            let guide = decode(&a.guide)?;
            let out = apps::feather(mask.plane(0), &guide, &a.flags.params(&AppPreset::FEATHER)?)?;
            encode(&MultiImage::from_plane(out), &a.output, a.flags.depth())
        }
        Command::Filter(a) => {
            let input = decode(&a.input)?;
            let guide = to_grayscale(&decode(&a.guide)?)?;
            let out = guided::filter(&guide, &input, &a.flags.params(&AppPreset::SMOOTH)?)?;
            encode(&out, &a.output, a.flags.depth())
        }
        Command::Bench(a) => bench(a),
    }
}

fn parse_depth(s: &str) -> std::result::Result<BitDepth, String> {
    match s {
        "8" => Ok(BitDepth::Eight),
        "16" => Ok(BitDepth::Sixteen),
        _ => Err(format!("bit depth must be 8 or 16, got '{s}'")),
    }
}

fn guidance(per_channel: bool) -> Guidance {
    if per_channel {
        Guidance::PerChannel
    } else {
        Guidance::Luminance
    }
}

fn bench(a: BenchArgs) -> Result<()> {
    let input = match &a.input {
        Some(path) => decode(path)?,
        None => {
            let planes = (0..a.channels)
                .map(|c| synth::fractal_noise(a.size, a.size, 8, 17 + c as u64))
                .collect::<Result<Vec<_>>>()?;
            MultiImage::new(planes)?
        }
    };
    let guide = match &a.guide {
        Some(path) => to_grayscale(&decode(path)?)?,
        None if input.channels() == 1 || input.channels() == 3 => to_grayscale(&input)?,
        None => input.plane(0).clone(),
    };
    let params = FilterParams::new(a.radius, a.eps, 1)?.with_subsample_method(a.subsample_method);
    let config = BenchConfig {
        ratios: a.ratios,
        runs: a.runs,
        threads: a.threads,
        ..BenchConfig::default()
    };
    let report = run_bench_with(&guide, &input, &params, &config)?;
    eprint!("{}", report.summary());
    match &a.output {
        Some(path) => fs::write(path, report.to_csv())?,
        None => print!("{}", report.to_csv()),
    }
    Ok(())
}
