//! Runs the benchmark harness on a synthetic image and prints the CSV report.
//!
//! ```text
//! cargo run --release --example bench -- 2048
//! ```

use fastgf::bench::{run_bench_with, BenchConfig};
use fastgf::{synth, FilterParams, MultiImage};

fn main() -> fastgf::Result<()> {
    let side: usize = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(1024);
    let guide = synth::fractal_noise(side, side, 9, 42)?;
    let input = MultiImage::from_plane(guide.clone());
    let params = FilterParams::new(16, 0.01, 1)?;
    let config = BenchConfig {
        ratios: vec![1, 2, 4, 8],
        ..BenchConfig::default()
    };
    let report = run_bench_with(&guide, &input, &params, &config)?;
    print!("{}", report.to_csv());
    eprint!("{}", report.summary());
    Ok(())
}
