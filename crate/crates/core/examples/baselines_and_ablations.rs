// Scores a benchmark once, then compares the obstruction with simpler
// baselines and with single-term ablations without refitting.

use theory_shift::benchmark::{generate_benchmark, GeneratorConfig};
use theory_shift::obstruction::{
    ablated_weights, baseline_score, benchmark_metrics, evaluate_with, obstruction_score, score_benchmark, Baseline,
    Metrics, ObstructionWeights, RankOptions, Term,
};

pub struct Comparison {
    pub baselines: Vec<(Baseline, Metrics)>,
    pub ablations: Vec<(Term, Metrics)>,
}

pub fn run_example() -> anyhow::Result<Comparison> {
    let cards = generate_benchmark(&GeneratorConfig {
        variants: 1,
        ..GeneratorConfig::default()
    });
    let sigs = score_benchmark(&cards, &RankOptions::default(), 0)?;
    let w = ObstructionWeights::default();
    let baselines = Baseline::ALL
        .iter()
        .map(|&b| Ok((b, benchmark_metrics(&evaluate_with(&cards, &sigs, |s| baseline_score(s, b, &w))?))))
        .collect::<anyhow::Result<Vec<_>>>()?;
    let ablations = Term::ALL
        .iter()
        .map(|&t| {
            let x = ablated_weights(&w, t.as_str())?;
            Ok((t, benchmark_metrics(&evaluate_with(&cards, &sigs, |s| obstruction_score(s, &x))?)))
        })
        .collect::<anyhow::Result<Vec<_>>>()?;
    Ok(Comparison { baselines, ablations })
}

#[allow(dead_code)]
fn main() -> anyhow::Result<()> {
    let c = run_example()?;
    for (b, m) in &c.baselines {
        println!("{:<24} top1={:.3} type={:.3}", b.as_str(), m.top1, m.type_accuracy);
    }
    for (t, m) in &c.ablations {
        println!("no_{:<21} top1={:.3} type={:.3}", t.as_str(), m.top1, m.type_accuracy);
    }
    Ok(())
}
