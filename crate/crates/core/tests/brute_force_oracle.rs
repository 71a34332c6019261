//! Closed-form oracle for every signature term on tiny generic cards: the
//! constant and linear laws have exact least-squares solutions, so fitting,
//! residuals, gluing, limit penalty and the final selection can all be
//! recomputed without the optimizer.

mod common;

use common::{oracle, oracle_obs, MENU_LAWS};

use proptest::prelude::*;
use theory_shift::obstruction::{obstruction_score, rank_card, score_card, ObstructionWeights, RankOptions};

fn context(lo: f64) -> impl Strategy<Value = common::Points> {
    prop::collection::vec((lo..lo + 1.0, -5.0f64..5.0), 2..=8)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn signatures_and_selection_match_closed_form(
        s in context(1.0),
        o in context(2.0),
        t in context(3.0),
        costs in (0.0f64..2.0, 0.0f64..2.0),
    ) {
        let card = common::tiny_card(&s, &o, &t, &[], common::generic_menu(costs.0, costs.1));
        let sigs = score_card(&card.view(), &RankOptions::default()).unwrap();
        let w = ObstructionWeights::default();
                let mut obs = Vec::new();
        for (cand, law) in sigs.candidates.iter().zip(MENU_LAWS) {
            let want = oracle(law, &s, &o, &t);
            let got = &cand.signature;
            let got = [got.r_s, got.r_o, got.r_t, got.g_glue, got.p_limit];
            for (k, (g, e)) in got.iter().zip(want).enumerate() {
                prop_assert!((g - e).abs() < 1e-5, "{} term {k}: got {g}, oracle {e}", cand.candidate_id);
            }
            prop_assert_eq!(cand.signature.c_viol, 0.0);
            let c = card.candidates.iter().find(|c| c.id == cand.candidate_id).unwrap().cost;
            obs.push(oracle_obs(want, c));
        }
        let best = obs.iter().copied().fold(f64::INFINITY, f64::min);
        let ranking = rank_card(&card.view(), &w, &RankOptions::default()).unwrap();
        let pos = sigs.candidates.iter().position(|c| c.candidate_id == ranking.selected_id).unwrap();
        prop_assert!(obs[pos] <= best + 1e-4, "selected {} with {} but oracle best is {}", ranking.selected_id, obs[pos], best);
        let sel = &sigs.candidates[pos].signature;
        prop_assert!((obstruction_score(sel, &w) - obs[pos]).abs() < 1e-4);
    }
}

#[test]
fn exact_line_has_zero_obstruction_apart_from_cost() {
    let line = |lo: f64| (0..5).map(|i| lo + 0.2 * i as f64).map(|x| (x, 2.0 * x)).collect::<Vec<_>>();
    let card = common::tiny_card(&line(1.0), &line(2.0), &line(3.0), &line(4.0), common::generic_menu(0.5, 1.0));
    let sigs = score_card(&card.view(), &RankOptions::default()).unwrap();
    let linear = sigs.candidates.iter().find(|c| c.candidate_id == "linear").unwrap();
    let g = &linear.signature;
    for v in [g.r_s, g.r_o, g.r_t, g.r_v, g.g_glue, g.c_viol, g.p_limit] {
        assert!(v.abs() < 1e-6, "{v}");
    }
    assert!((linear.theta_global[0] - 2.0).abs() < 1e-6);
    let ranking = rank_card(&card.view(), &ObstructionWeights::default(), &RankOptions::default()).unwrap();
    assert_eq!(ranking.selected_id, "linear");
}
