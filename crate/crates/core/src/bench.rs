//! Timing and degradation harness for the subsampled filter.
//!
//! For each ratio `s` the fast filter is run end to end (no file I/O) and
//! compared against the `s = 1` output, which is the exact filter.

use std::fmt::Write as _;
use std::time::{Duration, Instant};

use crate::error::{Error, Result};
use crate::guided::{fast_guided_filter_timed, StageTimings};
use crate::image::{FilterParams, ImagePlane, MultiImage};

/// Speedup at `s = 4` reported for optimized native implementations.
pub const REPORTED_SPEEDUP_AT_S4: f64 = 10.0;

pub const PSNR_CAP_DB: f64 = 99.0;

pub const CSV_HEADER: &str = "dims,channels,r,eps,s,time_ms,speedup,psnr_db,max_err";

/// PSNR for unit peak: `10 log10(1 / MSE)`, capped at 99 dB when MSE < 1e-10.
pub fn psnr(a: &ImagePlane, b: &ImagePlane) -> Result<f64> {
    a.ensure_same_dims(b, "psnr operands")?;
    let sse: f64 = a
        .data()
        .iter()
        .zip(b.data())
        .map(|(&x, &y)| (x as f64 - y as f64).powi(2))
        .sum();
    Ok(psnr_from_mse(sse / a.len() as f64))
}

fn psnr_from_mse(mse: f64) -> f64 {
    if mse < 1e-10 {
        PSNR_CAP_DB
    } else {
        (10.0 * (1.0 / mse).log10()).min(PSNR_CAP_DB)
    }
}

/// PSNR over all channels pooled together.
pub fn psnr_multi(a: &MultiImage, b: &MultiImage) -> Result<f64> {
    check_multi(a, b)?;
    let mut sse = 0.0;
    let mut n = 0usize;
    for (pa, pb) in a.planes().iter().zip(b.planes()) {
        sse += pa
            .data()
            .iter()
            .zip(pb.data())
            .map(|(&x, &y)| (x as f64 - y as f64).powi(2))
            .sum::<f64>();
        n += pa.len();
    }
    Ok(psnr_from_mse(sse / n as f64))
}

pub fn max_abs_error(a: &ImagePlane, b: &ImagePlane) -> Result<f64> {
    a.ensure_same_dims(b, "max_abs_error operands")?;
    Ok(a.data()
        .iter()
        .zip(b.data())
        .map(|(&x, &y)| (x as f64 - y as f64).abs())
        .fold(0.0, f64::max))
}

pub fn max_abs_error_multi(a: &MultiImage, b: &MultiImage) -> Result<f64> {
    check_multi(a, b)?;
    a.planes()
        .iter()
        .zip(b.planes())
        .map(|(x, y)| max_abs_error(x, y))
        .try_fold(0.0f64, |m, e| e.map(|e| m.max(e)))
}

fn check_multi(a: &MultiImage, b: &MultiImage) -> Result<()> {
    if a.channels() != b.channels() {
        return Err(Error::Shape(format!(
            "channel count {} vs {}",
            a.channels(),
            b.channels()
        )));
    }
    if a.dims() != b.dims() {
        return Err(crate::error::shape_mismatch(
            "image dims",
            a.dims(),
            b.dims(),
        ));
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TimingStats {
    pub median: Duration,
    pub min: Duration,
    pub max: Duration,
}

impl TimingStats {
    pub fn from_samples(samples: &mut [Duration]) -> Self {
        assert!(!samples.is_empty());
        samples.sort();
        Self {
            median: samples[samples.len() / 2],
            min: samples[0],
            max: samples[samples.len() - 1],
        }
    }
}

/// Runs `f` `warmup` times untimed, then `runs` times timed.
pub fn time_runs(runs: usize, warmup: usize, mut f: impl FnMut()) -> TimingStats {
    for _ in 0..warmup {
        f();
    }
    let mut samples: Vec<Duration> = (0..runs.max(1))
        .map(|_| {
            let t = Instant::now();
            f();
            t.elapsed()
        })
        .collect();
    TimingStats::from_samples(&mut samples)
}

#[derive(Clone, Debug)]
pub struct BenchConfig {
    pub ratios: Vec<usize>,
    pub runs: usize,
    pub warmup: usize,
    /// Worker threads for the filter's parallel paths; 1 keeps numbers stable.
    pub threads: usize,
}

impl Default for BenchConfig {
    fn default() -> Self {
        Self {
            ratios: vec![1, 2, 4, 8],
            runs: 5,
            warmup: 1,
            threads: 1,
        }
    }
}

#[derive(Clone, Debug)]
pub struct RatioResult {
    pub subsample: usize,
    pub time: TimingStats,
    /// Median per-stage time.
    pub stages: StageTimings,
    pub speedup: f64,
    pub psnr_db: f64,
    pub max_err: f64,
}

#[derive(Clone, Debug)]
pub struct BenchReport {
    pub width: usize,
    pub height: usize,
    pub channels: usize,
    pub radius: usize,
    pub epsilon: f64,
    pub threads: usize,
    pub results: Vec<RatioResult>,
}

impl BenchReport {
    pub fn result(&self, subsample: usize) -> Option<&RatioResult> {
        self.results.iter().find(|r| r.subsample == subsample)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from(CSV_HEADER);
        out.push('\n');
        for r in &self.results {
            let _ = writeln!(
                out,
                "{}x{},{},{},{},{},{:.3},{:.3},{:.2},{:.6}",
                self.width,
                self.height,
                self.channels,
                self.radius,
                self.epsilon,
                r.subsample,
                ms(r.time.median),
                r.speedup,
                r.psnr_db,
                r.max_err
            );
        }
        out
    }

    /// Human-readable table with per-stage times.
    pub fn summary(&self) -> String {
        let mut out = format!(
            "{}x{} x{} r={} eps={} threads={}\n",
            self.width, self.height, self.channels, self.radius, self.epsilon, self.threads
        );
        let _ = writeln!(
            out,
            "{:>3} {:>10} {:>10} {:>10} {:>9} {:>9} {:>9} {:>8} {:>8} {:>10}",
            "s",
            "median_ms",
            "min_ms",
            "max_ms",
            "sub_ms",
            "coef_ms",
            "up_ms",
            "speedup",
            "psnr_db",
            "max_err"
        );
        for r in &self.results {
            let _ = writeln!(
                out,
                "{:>3} {:>10.3} {:>10.3} {:>10.3} {:>9.3} {:>9.3} {:>9.3} {:>8.2} {:>8.2} {:>10.6}",
                r.subsample,
                ms(r.time.median),
                ms(r.time.min),
                ms(r.time.max),
                ms(r.stages.subsample),
                ms(r.stages.coefficients),
                ms(r.stages.upsample_blend),
                r.speedup,
                r.psnr_db,
                r.max_err
            );
        }
        if let Some(r) = self.result(4) {
            let _ = writeln!(
                out,
                "speedup at s=4: {:.2}x measured (>{}x reported for optimized native code)",
                r.speedup, REPORTED_SPEEDUP_AT_S4
            );
        }
        out
    }
}

pub fn ms(d: Duration) -> f64 {
    d.as_secs_f64() * 1e3
}

pub fn run_bench(
    guide: &ImagePlane,
    input: &MultiImage,
    params: &FilterParams,
    ratios: &[usize],
) -> Result<BenchReport> {
    let config = BenchConfig {
        ratios: ratios.to_vec(),
        ..BenchConfig::default()
    };
    run_bench_with(guide, input, params, &config)
}

pub fn run_bench_with(
    guide: &ImagePlane,
    input: &MultiImage,
    params: &FilterParams,
    config: &BenchConfig,
) -> Result<BenchReport> {
    if config.ratios.is_empty() {
        return Err(Error::Param(
            "at least one subsample ratio is required".into(),
        ));
    }
    if config.threads < 1 {
        return Err(Error::Param("thread count must be >= 1".into()));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.threads)
        .build()
        .map_err(|e| Error::Param(e.to_string()))?;
    pool.install(|| bench_ratios(guide, input, params, config))
}

struct Measured {
    output: MultiImage,
    time: TimingStats,
    stages: StageTimings,
}

fn measure(
    guide: &ImagePlane,
    input: &MultiImage,
    params: &FilterParams,
    config: &BenchConfig,
) -> Result<Measured> {
    for _ in 0..config.warmup {
        fast_guided_filter_timed(guide, input, params)?;
    }
    let mut output = None;
    let mut totals = Vec::with_capacity(config.runs);
    let mut stage_samples = [Vec::new(), Vec::new(), Vec::new()];
    for _ in 0..config.runs.max(1) {
        let t = Instant::now();
        let (q, stages) = fast_guided_filter_timed(guide, input, params)?;
        totals.push(t.elapsed());
        stage_samples[0].push(stages.subsample);
        stage_samples[1].push(stages.coefficients);
        stage_samples[2].push(stages.upsample_blend);
        output = Some(q);
    }
    let [mut a, mut b, mut c] = stage_samples;
    Ok(Measured {
        output: output.expect("at least one run"),
        time: TimingStats::from_samples(&mut totals),
        stages: StageTimings {
            subsample: TimingStats::from_samples(&mut a).median,
            coefficients: TimingStats::from_samples(&mut b).median,
            upsample_blend: TimingStats::from_samples(&mut c).median,
        },
    })
}

fn bench_ratios(
    guide: &ImagePlane,
    input: &MultiImage,
    params: &FilterParams,
    config: &BenchConfig,
) -> Result<BenchReport> {
    let baseline = measure(guide, input, &params.exact(), config)?;
    let mut results = Vec::with_capacity(config.ratios.len());
    for &s in &config.ratios {
        let run = if s == 1 {
            None
        } else {
            let p = FilterParams {
                subsample: s,
                ..*params
            };
            Some(measure(guide, input, &p, config)?)
        };
        let m = run.as_ref().unwrap_or(&baseline);
        let speedup = if s == 1 {
            1.0
        } else {
            baseline.time.median.as_secs_f64() / m.time.median.as_secs_f64()
        };
        results.push(RatioResult {
            subsample: s,
            time: m.time,
            stages: m.stages,
            speedup,
            psnr_db: psnr_multi(&m.output, &baseline.output)?,
            max_err: max_abs_error_multi(&m.output, &baseline.output)?,
        });
    }
    Ok(BenchReport {
        width: guide.width(),
        height: guide.height(),
        channels: input.channels(),
        radius: params.radius,
        epsilon: params.epsilon,
        threads: config.threads,
        results,
    })
}
