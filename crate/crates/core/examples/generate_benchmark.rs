// Generates a small synthetic benchmark and checks every card is valid.

use theory_shift::benchmark::{generate_benchmark, GeneratorConfig};
use theory_shift::card::{validate_card, TransitionCard};

pub fn run_example() -> anyhow::Result<Vec<TransitionCard>> {
    let cfg = GeneratorConfig {
        variants: 2,
        ..GeneratorConfig::default()
    };
    let cards = generate_benchmark(&cfg);
    for card in &cards {
        validate_card(card).into_result()?;
    }
    Ok(cards)
}

#[allow(dead_code)]
fn main() -> anyhow::Result<()> {
    for card in run_example()? {
        println!(
            "{:<28} {:<20} intended={} candidates={}",
            card.card_id,
            card.evaluation.transition_type.as_str(),
            card.evaluation.intended_candidate_id,
            card.candidates.len()
        );
    }
    Ok(())
}
