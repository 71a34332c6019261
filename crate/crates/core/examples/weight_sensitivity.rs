// Rescales each weight block and counts how many selections change.

use theory_shift::benchmark::{generate_benchmark, GeneratorConfig};
use theory_shift::obstruction::{score_benchmark, ObstructionWeights, RankOptions};
use theory_shift::stress::{weight_sensitivity, SensitivityReport};

pub fn run_example() -> anyhow::Result<SensitivityReport> {
    let cards = generate_benchmark(&GeneratorConfig {
        variants: 1,
        ..GeneratorConfig::default()
    });
    let sigs = score_benchmark(&cards, &RankOptions::default(), 0)?;
    let multipliers = [0.5, 1.0, 2.0, 8.0];
    Ok(weight_sensitivity(&cards, &sigs, &ObstructionWeights::default(), &multipliers, false)?)
}

#[allow(dead_code)]
fn main() -> anyhow::Result<()> {
    let report = run_example()?;
    for p in &report.points {
        println!(
            "{:<12} x{:<4} top1={:.3} changes={} extension_flips={}",
            p.block, p.multiplier, p.metrics.top1, p.selection_changes, p.extension_flips
        );
    }
    Ok(())
}
