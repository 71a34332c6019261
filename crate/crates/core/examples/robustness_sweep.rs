// Sweeps multiplicative observation noise and record subsampling.

use theory_shift::benchmark::{generate_benchmark, GeneratorConfig};
use theory_shift::obstruction::{ObstructionWeights, RankOptions};
use theory_shift::stress::{robustness_sweep, RobustnessGrid, RobustnessReport};

pub fn run_example() -> anyhow::Result<RobustnessReport> {
    let cards = generate_benchmark(&GeneratorConfig {
        variants: 1,
        ..GeneratorConfig::default()
    });
    let grid = RobustnessGrid {
        noise_levels: vec![0.0, 0.2],
        record_fractions: vec![1.0, 0.6],
        repeats: 1,
        ..RobustnessGrid::default()
    };
    Ok(robustness_sweep(&cards, &grid, &ObstructionWeights::default(), &RankOptions::default(), 0)?)
}

#[allow(dead_code)]
fn main() -> anyhow::Result<()> {
    let report = run_example()?;
    for m in &report.means {
        println!("noise {:<4} fraction {:<4} top1 {:.3}", m.noise, m.fraction, m.metrics.top1);
    }
    Ok(())
}
