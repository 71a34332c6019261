// Trains the block kernel scorer with each family held out in turn and
// compares it with random ranking.

use theory_shift::benchmark::{generate_benchmark, GeneratorConfig};
use theory_shift::kernel::{candidate_rows, leave_family_out_eval, random_baseline, KernelConfig, LofoReport};
use theory_shift::obstruction::{score_benchmark, RankOptions};

pub fn run_example() -> anyhow::Result<(LofoReport, f64)> {
    let cards = generate_benchmark(&GeneratorConfig {
        variants: 2,
        ..GeneratorConfig::default()
    });
    let sigs = score_benchmark(&cards, &RankOptions::default(), 0)?;
    let rows = candidate_rows(&cards, &sigs)?;
    let report = leave_family_out_eval(&rows, &KernelConfig::default())?;
    Ok((report, random_baseline(&rows)))
}

#[allow(dead_code)]
fn main() -> anyhow::Result<()> {
    let (report, random) = run_example()?;
    for f in &report.folds {
        println!("{:<24} top1={:.3} type={:.3}", f.held_out, f.metrics.top1, f.metrics.type_accuracy);
    }
    println!("aggregate top1={:.3} (random {:.3})", report.aggregate.top1, random);
    Ok(())
}
