//! Invariants of the obstruction and of ranking.

mod common;

use proptest::prelude::*;
use theory_shift::benchmark::{generate_benchmark, GeneratorConfig};
use theory_shift::card::{MoveType, Role, TransitionType};
use theory_shift::model::ResolvedModel;
use theory_shift::obstruction::{
    obstruction_score, rank_by, score_benchmark, score_card, CandidateSignature, CardSignatures,
    ObstructionSignature, ObstructionWeights, RankOptions,
};

fn signature() -> impl Strategy<Value = ObstructionSignature> {
    (prop::array::uniform8(0.0f64..10.0), prop::collection::vec(0.0f64..3.0, 0..4)).prop_map(|(v, psi)| {
        ObstructionSignature {
            r_s: v[0],
            r_o: v[1],
            r_t: v[2],
            r_v: v[3],
            g_glue: v[4],
            c_viol: v[5],
            p_limit: v[6],
            cost: v[7],
            psi,
        }
    })
}

fn weights() -> impl Strategy<Value = ObstructionWeights> {
    prop::array::uniform7(0.0f64..5.0).prop_map(|v| ObstructionWeights {
        w_s: v[0],
        w_o: v[1],
        w_t: v[2],
        w_g: v[3],
        w_c: v[4],
        w_l: v[5],
        lambda: v[6],
    })
}

fn combine(a: f64, x: &ObstructionWeights, b: f64, y: &ObstructionWeights) -> ObstructionWeights {
    ObstructionWeights {
        w_s: a * x.w_s + b * y.w_s,
        w_o: a * x.w_o + b * y.w_o,
        w_t: a * x.w_t + b * y.w_t,
        w_g: a * x.w_g + b * y.w_g,
        w_c: a * x.w_c + b * y.w_c,
        w_l: a * x.w_l + b * y.w_l,
        lambda: a * x.lambda + b * y.lambda,
    }
}

fn card_sigs(sigs: Vec<ObstructionSignature>) -> CardSignatures {
    CardSignatures {
        card_id: "c".into(),
        scale: 1.0,
        candidates: sigs
            .into_iter()
            .enumerate()
            .map(|(i, signature)| CandidateSignature {
                candidate_id: format!("k{i}"),
                move_type: MoveType::Deformation,
                signature,
                theta_global: Vec::new(),
            })
            .collect(),
    }
}

proptest! {
    #[test]
    fn obstruction_is_linear_in_weights(sig in signature(), x in weights(), y in weights(), a in 0.0f64..3.0, b in 0.0f64..3.0) {
        let lhs = obstruction_score(&sig, &combine(a, &x, b, &y));
        let rhs = a * obstruction_score(&sig, &x) + b * obstruction_score(&sig, &y);
        prop_assert!((lhs - rhs).abs() <= 1e-9 * (1.0 + rhs.abs()));
    }

    #[test]
    fn validation_residual_and_graph_never_enter(sig in signature(), w in weights(), r_v in 0.0f64..10.0, psi in prop::collection::vec(0.0f64..9.0, 0..6)) {
        let other = ObstructionSignature { r_v, psi, ..sig.clone() };
        prop_assert_eq!(obstruction_score(&sig, &w), obstruction_score(&other, &w));
    }

    #[test]
    fn positive_scaling_keeps_the_ranking(sigs in prop::collection::vec(signature(), 1..6), w in weights(), k in -3i32..4) {
        // Powers of two scale exactly, so ties survive as ties.
        let c = 2f64.powi(k);
        let cs = card_sigs(sigs);
        let a = rank_by(&cs, |s| obstruction_score(s, &w));
        let b = rank_by(&cs, |s| obstruction_score(s, &w.scaled(c)));
        let ids = |r: &theory_shift::obstruction::Ranking| r.rows.iter().map(|x| x.candidate_id.clone()).collect::<Vec<_>>();
        prop_assert_eq!(ids(&a), ids(&b));
        prop_assert_eq!(a.selected_id, b.selected_id);
    }

    #[test]
    fn selected_candidate_minimizes_the_score(sigs in prop::collection::vec(signature(), 1..6), w in weights()) {
        let cs = card_sigs(sigs);
        let r = rank_by(&cs, |s| obstruction_score(s, &w));
        let best = cs.candidates.iter().map(|c| obstruction_score(&c.signature, &w)).fold(f64::INFINITY, f64::min);
        prop_assert_eq!(r.rows[0].obs, best);
        prop_assert!(r.rows.windows(2).all(|p| p[0].obs <= p[1].obs));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn labels_do_not_reach_ranking(
        ys in prop::collection::vec(-3.0f64..3.0, 12),
        intended in 0usize..3,
        flip_type in any::<bool>(),
        validation_shift in -5.0f64..5.0,
    ) {
        let pts = |lo: f64, k: usize| (0..4).map(|i| (lo + 0.25 * i as f64, ys[k * 4 + i])).collect::<Vec<_>>();
        let valid = [(4.2, 1.0), (4.6, -1.0)];
        let card = common::tiny_card(&pts(1.0, 0), &pts(2.0, 1), &pts(3.0, 2), &valid, common::generic_menu(0.5, 1.0));
        let mut relabeled = card.clone();
        for (i, c) in relabeled.candidates.iter_mut().enumerate() {
            c.role = if i == intended { Role::Intended } else { Role::Incorrect };
        }
        relabeled.evaluation.intended_candidate_id = relabeled.candidates[intended].id.clone();
        if flip_type {
            relabeled.evaluation.transition_type = TransitionType::DeformationSufficient;
        }
        relabeled.evaluation.generating_parameters = vec![validation_shift];
        let opts = RankOptions::default();
        prop_assert_eq!(score_card(&card.view(), &opts).unwrap(), score_card(&relabeled.view(), &opts).unwrap());

        // Validation data changes R_v only.
        let mut shifted = card.clone();
        for r in &mut shifted.datasets.validation.records {
            r.y += validation_shift;
        }
        let w = ObstructionWeights::default();
        let a = score_card(&card.view(), &opts).unwrap();
        let b = score_card(&shifted.view(), &opts).unwrap();
        for (x, y) in a.candidates.iter().zip(&b.candidates) {
            prop_assert_eq!(obstruction_score(&x.signature, &w), obstruction_score(&y.signature, &w));
        }
    }
}

#[test]
fn benchmark_structural_zeros() {
    let cards = generate_benchmark(&GeneratorConfig {
        variants: 2,
        ..GeneratorConfig::default()
    });
    let sigs = score_benchmark(&cards, &RankOptions::default(), 0).unwrap();
    for (card, s) in cards.iter().zip(&sigs) {
        for (cand, cs) in card.candidates.iter().zip(&s.candidates) {
            let model = ResolvedModel::resolve(&cand.model).unwrap();
            if model.free_count() == 0 {
                // One chart fits every context, so the charts agree on the overlap.
                assert_eq!(cs.signature.g_glue, 0.0, "{} {}", card.card_id, cand.id);
            }
            if cand.role == Role::Base {
                // The base law is the source law, which is its own limit.
                assert!(cs.signature.p_limit < 1e-12, "{} base p_limit {}", card.card_id, cs.signature.p_limit);
            }
        }
    }
}
