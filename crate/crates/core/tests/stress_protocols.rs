//! Stress expansion, weight sensitivity and robustness perturbations.

use std::sync::OnceLock;

use theory_shift::benchmark::{generate_benchmark, GeneratorConfig};
use theory_shift::card::{Context, MoveType, Role, TransitionCard};
use theory_shift::model::ResolvedModel;
use theory_shift::obstruction::{score_benchmark, CardSignatures, ObstructionWeights, RankOptions};
use theory_shift::stress::{
    expand_card, perturb_card, rescored_margin, robustness_sweep, run_stress, stress_margin, validation_diagnostics,
    weight_sensitivity, RobustnessGrid, StressConfig, StressKind, MIN_RECORDS,
};
use theory_shift::Error;

fn cards() -> &'static [TransitionCard] {
    static CARDS: OnceLock<Vec<TransitionCard>> = OnceLock::new();
    CARDS.get_or_init(|| {
        generate_benchmark(&GeneratorConfig {
            variants: 1,
            ..GeneratorConfig::default()
        })
    })
}

fn sigs() -> &'static [CardSignatures] {
    static SIGS: OnceLock<Vec<CardSignatures>> = OnceLock::new();
    SIGS.get_or_init(|| score_benchmark(cards(), &RankOptions::default(), 0).unwrap())
}

#[test]
fn expansion_appends_labelled_distractors_only() {
    let cfg = StressConfig {
        n_randomized: 3,
        ..StressConfig::default()
    };
    for card in cards() {
        let out = expand_card(card, &cfg).unwrap();
        let n0 = card.candidates.len();
        assert_eq!(&out.candidates[..n0], &card.candidates[..]);
        assert_eq!(out.datasets, card.datasets);
        assert_eq!(out.evaluation, card.evaluation);
        let added = &out.candidates[n0..];
        assert_eq!(added.len(), 1 + 3 + 1, "{}", card.card_id);
        let intended = card.intended().unwrap();
        for c in added {
            assert_eq!(c.role, Role::Incorrect);
            let model = ResolvedModel::resolve(&c.model).unwrap();
            match StressKind::of(&c.id).expect("stress id prefix") {
                StressKind::WrongFormula => assert_eq!(model.free_count(), 0, "{}", c.id),
                StressKind::Randomized => {
                    assert_eq!(model.free_count(), 0, "{}", c.id);
                    assert_eq!(c.move_type, intended.move_type);
                }
                StressKind::MatchedCost => {
                    assert_eq!(c.cost, intended.cost);
                    assert_eq!(c.move_type, MoveType::Extension);
                }
            }
        }
        let mut ids: Vec<&str> = out.candidates.iter().map(|c| c.id.as_str()).collect();
        ids.sort_unstable();
        ids.dedup();
        assert_eq!(ids.len(), out.candidates.len());
    }
}

#[test]
fn expansion_is_seeded() {
    let card = &cards()[0];
    let cfg = StressConfig::default();
    assert_eq!(expand_card(card, &cfg).unwrap(), expand_card(card, &cfg).unwrap());
    let other = StressConfig {
        seed: cfg.seed + 1,
        ..cfg.clone()
    };
    assert_ne!(expand_card(card, &cfg).unwrap(), expand_card(card, &other).unwrap());
    let bad = StressConfig {
        perturbation_scale: 0.0,
        ..cfg
    };
    assert!(matches!(expand_card(card, &bad), Err(Error::Config(_))));
}

#[test]
fn margins_agree_with_a_two_candidate_rescoring() {
    let w = ObstructionWeights::default();
    let opts = RankOptions::default();
    let run = run_stress(cards(), &StressConfig::default(), &w, &opts, 0).unwrap();
    for ((card, result), row) in run.cards.iter().zip(&run.results).zip(&run.report.rows) {
        let m = stress_margin(result);
        let again = rescored_margin(card, result, &w, &opts).unwrap();
        assert!((m - again).abs() < 1e-9, "{}: {m} vs {again}", card.card_id);
        assert_eq!(row.margin, m);
        // A positive margin means the intended candidate was selected.
        assert_eq!(m > 0.0, row.top1, "{}", card.card_id);
    }
    assert_eq!(run.report.boundary_cases().count(), run.report.rows.iter().filter(|r| r.margin < 0.0).count());
}

#[test]
fn sensitivity_reference_point_changes_nothing() {
    let w = ObstructionWeights::default();
    let report = weight_sensitivity(cards(), sigs(), &w, &[0.5, 1.0, 2.0], true).unwrap();
    for p in report.points.iter().filter(|p| p.multiplier == 1.0) {
        assert_eq!(p.selection_changes, 0, "{}", p.block);
        assert_eq!(p.metrics, report.reference);
    }
    // five blocks plus seven single terms, three multipliers each
    assert_eq!(report.points.len(), 12 * 3);
    assert!(report.point("term:cost", 2.0).is_some());
    assert!(matches!(weight_sensitivity(cards(), sigs(), &w, &[0.5, 2.0], false), Err(Error::Config(_))));
    assert!(matches!(weight_sensitivity(cards(), sigs(), &w, &[1.0, -2.0], false), Err(Error::Config(_))));
}

#[test]
fn perturbation_is_identity_at_zero_noise_and_full_records() {
    for card in cards() {
        let (same, flagged) = perturb_card(card, 0.0, 1.0, 9);
        assert_eq!(&same, card);
        assert!(!flagged);
    }
}

#[test]
fn subsampling_keeps_order_and_floor() {
    let card = &cards()[0];
    let (out, _) = perturb_card(card, 0.0, 0.01, 5);
    for ctx in Context::ALL {
        let before = &card.datasets.get(ctx).records;
        let after = &out.datasets.get(ctx).records;
        assert_eq!(after.len(), MIN_RECORDS.min(before.len()), "{}", ctx.as_str());
        // kept records appear in their original relative order
        let mut it = before.iter();
        assert!(after.iter().all(|r| it.any(|b| b == r)));
    }
    let (a, _) = perturb_card(card, 0.1, 0.5, 5);
    let (b, _) = perturb_card(card, 0.1, 0.5, 5);
    assert_eq!(a, b);
    let (c, _) = perturb_card(card, 0.1, 0.5, 6);
    assert_ne!(a, c);
}

#[test]
fn robustness_identity_cell_matches_clean_ranking() {
    let grid = RobustnessGrid {
        noise_levels: vec![0.0],
        record_fractions: vec![1.0],
        repeats: 2,
        ..RobustnessGrid::default()
    };
    let w = ObstructionWeights::default();
    let report = robustness_sweep(cards(), &grid, &w, &RankOptions::default(), 0).unwrap();
    let clean = theory_shift::obstruction::evaluate_with(cards(), sigs(), |s| {
        theory_shift::obstruction::obstruction_score(s, &w)
    })
    .unwrap();
    let clean = theory_shift::obstruction::benchmark_metrics(&clean);
    assert_eq!(report.cells.len(), 2);
    for cell in &report.cells {
        assert_eq!(cell.metrics, clean);
    }
    assert_eq!(report.mean(0.0, 1.0), Some(&clean));
}

#[test]
fn validation_diagnostics_skip_cards_without_validation_data() {
    let w = ObstructionWeights::default();
    let results = theory_shift::obstruction::evaluate_with(cards(), sigs(), |s| {
        theory_shift::obstruction::obstruction_score(s, &w)
    })
    .unwrap();
    let d = validation_diagnostics(&results, cards()).unwrap();
    assert_eq!(d.n_cards, cards().len());
    let mut bare = cards().to_vec();
    for c in &mut bare {
        c.datasets.validation.records.clear();
    }
    assert!(validation_diagnostics(&results, &bare).is_none());
}
