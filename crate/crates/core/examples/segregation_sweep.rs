//! A small segregation-probability sweep over q, written to disk with its
//! figure-1 dataset: empirical probability with Wilson interval against the
//! analytic lower bound.
//!
//!     cargo run --release --example segregation_sweep -- /tmp/sweep 256 100

use std::path::PathBuf;

use offended_voter::experiments::{figure_datasets, run_sweep, ExperimentConfig};

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let dir = args.first().map_or_else(|| std::env::temp_dir().join("ovm-sweep"), PathBuf::from);
    let n: usize = args.get(1).map_or(128, |s| s.parse().unwrap());
    let reps: u64 = args.get(2).map_or(100, |s| s.parse().unwrap());

    let q_grid: Vec<f64> = (1..10).map(|i| i as f64 / 10.0).collect();
    let mut config = ExperimentConfig::new("segregation", q_grid, vec![n], reps, 2024);
    config.output_dir = dir.clone();
    let out = run_sweep(&config).unwrap();
    let fig = figure_datasets(&dir, 1).unwrap();

    println!("{} runs into {}", out.records.len(), dir.display());
    let text = std::fs::read_to_string(&fig.path).unwrap();
    println!("{:>5} {:>7} {:>17} {:>7}", "q", "p_hat", "95% CI", "bound");
    for line in text.lines().skip(1) {
        let v: Vec<f64> = line.split(',').map(|x| x.parse().unwrap()).collect();
        println!("{:>5.2} {:>7.3}   [{:.3}, {:.3}] {:>7.3}", v[0], v[2], v[3], v[4], v[5]);
    }
}
