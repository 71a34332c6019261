// Ranks the candidates of one Rayleigh-Jeans card by the selection
// obstruction and prints each candidate's signature.

use theory_shift::benchmark::{family, generate_card, GeneratorConfig};
use theory_shift::model::RADIATION;
use theory_shift::obstruction::{rank_card, ObstructionWeights, RankOptions, RankingResult};

pub fn run_example() -> anyhow::Result<RankingResult> {
    let fam = family(RADIATION).ok_or_else(|| anyhow::anyhow!("radiation family missing"))?;
    let card = generate_card(fam, 0, 11, &GeneratorConfig::default());
    let ranking = rank_card(&card.view(), &ObstructionWeights::default(), &RankOptions::default())?;
    Ok(RankingResult::label(&ranking, &card)?)
}

#[allow(dead_code)]
fn main() -> anyhow::Result<()> {
    let r = run_example()?;
    println!("{} ({}), intended {}", r.card_id, r.transition_type.as_str(), r.intended_id);
    for row in &r.rows {
        let s = &row.signature;
        println!(
            "  {:<22} obs={:.3} r_t={:.3} glue={:.3} con={:.3} lim={:.3} cost={}",
            row.candidate_id, row.obs, s.r_t, s.g_glue, s.c_viol, s.p_limit, s.cost
        );
    }
    println!("selected {} (top-1 {})", r.selected_id, r.top1());
    Ok(())
}
