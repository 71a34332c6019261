// Adds wrong-formula, randomized and matched-cost candidates to every card
// and reports the intended candidate's margin over the best wrong one.

use theory_shift::benchmark::{generate_benchmark, GeneratorConfig};
use theory_shift::obstruction::{ObstructionWeights, RankOptions};
use theory_shift::stress::{run_stress, StressConfig, StressReport};

pub fn run_example() -> anyhow::Result<StressReport> {
    let cards = generate_benchmark(&GeneratorConfig {
        variants: 1,
        ..GeneratorConfig::default()
    });
    let run = run_stress(
        &cards,
        &StressConfig::default(),
        &ObstructionWeights::default(),
        &RankOptions::default(),
        0,
    )?;
    Ok(run.report)
}

#[allow(dead_code)]
fn main() -> anyhow::Result<()> {
    let report = run_example()?;
    println!("expanded top1 {:.3}", report.metrics.top1);
    for r in &report.rows {
        println!("{:<28} margin {:>8.4} vs {}", r.card_id, r.margin, r.best_incorrect_id);
    }
    Ok(())
}
