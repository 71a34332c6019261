//! Stability protocols: stress expansion, weight sensitivity, the noise and
//! record-fraction robustness grid, and validation-residual diagnostics.

mod robustness;
mod sensitivity;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::benchmark::graphs::{constellation, Shape};
use crate::benchmark::{family, DEFAULT_SEED};
use crate::card::{CandidateMove, MoveType, ModelRef, Role, TransitionCard, TransitionType};
use crate::error::{Error, Result};
use crate::obstruction::terms::mix;
use crate::obstruction::{
    benchmark_metrics, evaluate_with, obstruction_score, score_benchmark, score_card, Metrics,
    ObstructionWeights, RankOptions, RankingResult,
};
pub use robustness::{perturb_card, robustness_sweep, CellMean, MIN_RECORDS, RobustnessCell, RobustnessGrid, RobustnessReport};
pub use sensitivity::{weight_sensitivity, SensitivityBlock, SensitivityPoint, SensitivityReport};

const STRESS_SALT: u64 = 0x57_2e55;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct StressConfig {
    pub n_incorrect_formulas: usize,
    pub n_randomized: usize,
    pub n_matched_cost: usize,
    /// Relative standard deviation of randomized parameter perturbations.
    pub perturbation_scale: f64,
    pub seed: u64,
}

impl Default for StressConfig {
    fn default() -> Self {
        Self {
            n_incorrect_formulas: 1,
            n_randomized: 2,
            n_matched_cost: 1,
            perturbation_scale: 0.15,
            seed: DEFAULT_SEED,
        }
    }
}

impl StressConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.perturbation_scale.is_finite() && self.perturbation_scale > 0.0) {
            return Err(Error::Config(format!(
                "perturbation_scale must be positive, got {}",
                self.perturbation_scale
            )));
        }
        Ok(())
    }
}

/// Which stress protocol appended a candidate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StressKind {
    WrongFormula,
    Randomized,
    MatchedCost,
}

impl StressKind {
    pub fn as_str(self) -> &'static str {
        match self {
            StressKind::WrongFormula => "wrong_formula",
            StressKind::Randomized => "randomized",
            StressKind::MatchedCost => "matched_cost",
        }
    }

    fn prefix(self) -> &'static str {
        match self {
            StressKind::WrongFormula => "stress-wrong-",
            StressKind::Randomized => "stress-randomized-",
            StressKind::MatchedCost => "stress-matched-",
        }
    }

    /// Recovers the kind from an appended candidate id.
    pub fn of(candidate_id: &str) -> Option<Self> {
        [StressKind::WrongFormula, StressKind::Randomized, StressKind::MatchedCost]
            .into_iter()
            .find(|k| candidate_id.starts_with(k.prefix()))
    }
}

fn unique_id(card: &TransitionCard, base: String) -> String {
    let mut id = base.clone();
    let mut k = 1;
    while card.candidate(&id).is_some() {
        id = format!("{base}-{k}");
        k += 1;
    }
    id
}

/// Appends wrong formulas, randomized perturbations of the true law and
/// matched-cost extensions, all with role `incorrect`. Existing candidates,
/// datasets and labels are left untouched.
pub fn expand_card(card: &TransitionCard, cfg: &StressConfig) -> Result<TransitionCard> {
    cfg.validate()?;
    let fam = family(&card.family_id)
        .ok_or_else(|| Error::Input(format!("no stress distractors for family `{}`", card.family_id)))?;
    let intended = card
        .intended()
        .ok_or_else(|| Error::Input(format!("card `{}` has no intended candidate", card.card_id)))?
        .clone();
    let extension_cost = card
        .candidates
        .iter()
        .filter(|c| c.move_type == MoveType::Extension)
        .map(|c| c.cost)
        .fold(intended.cost, f64::max);
    let mut out = card.clone();
    let mut rng = ChaCha8Rng::seed_from_u64(mix(cfg.seed ^ card.seed, STRESS_SALT));

    for spec in fam.stress.wrong_formulas.iter().take(cfg.n_incorrect_formulas) {
        let id = unique_id(&out, format!("{}{spec}", StressKind::WrongFormula.prefix()));
        out.candidates.push(CandidateMove {
            id,
            role: Role::Incorrect,
            move_type: MoveType::Extension,
            cost: extension_cost,
            model: ModelRef::new(&card.family_id, spec),
            graph: constellation(&fam.graph, Shape::StructuralExtension),
        });
    }

    let (spec, centre): (&str, Vec<f64>) = match fam.stress.randomized {
        Some((spec, centre)) => (spec, centre.to_vec()),
        None => (fam.generating_spec, card.evaluation.generating_parameters.clone()),
    };
    for k in 0..cfg.n_randomized {
        let params = centre
            .iter()
            .map(|c| {
                let z: f64 = StandardNormal.sample(&mut rng);
                c * (1.0 + cfg.perturbation_scale * z)
            })
            .collect();
        let id = unique_id(&out, format!("{}{spec}-{k}", StressKind::Randomized.prefix()));
        out.candidates.push(CandidateMove {
            id,
            role: Role::Incorrect,
            move_type: intended.move_type,
            cost: extension_cost,
            model: ModelRef::new(&card.family_id, spec).frozen(params),
            graph: intended.graph.clone(),
        });
    }

    for k in 0..cfg.n_matched_cost {
        let spec = fam.stress.matched_extension;
        let suffix = if k == 0 { String::new() } else { format!("-{k}") };
        let id = unique_id(&out, format!("{}{spec}{suffix}", StressKind::MatchedCost.prefix()));
        out.candidates.push(CandidateMove {
            id,
            role: Role::Incorrect,
            move_type: MoveType::Extension,
            cost: intended.cost,
            model: ModelRef::new(&card.family_id, spec),
            graph: constellation(&fam.graph, Shape::CapacityExtension),
        });
    }
    Ok(out)
}

/// Obs(best non-reference) − Obs(reference); negative marks a boundary
/// case. Infinite when the card has a single candidate.
pub fn stress_margin(result: &RankingResult) -> f64 {
    result.margin.unwrap_or(f64::INFINITY)
}

/// The same margin recomputed by fitting only the reference and its best
/// competitor on a fresh two-candidate card.
pub fn rescored_margin(
    card: &TransitionCard,
    result: &RankingResult,
    w: &ObstructionWeights,
    opts: &RankOptions,
) -> Result<f64> {
    let Some(rival) = result.best_incorrect() else {
        return Ok(f64::INFINITY);
    };
    let mut view = card.view();
    view.candidates
        .retain(|c| c.id == result.intended_id || c.id == rival.candidate_id);
    let sigs = score_card(&view, opts)?;
    let obs = |id: &str| {
        sigs.candidates
            .iter()
            .find(|c| c.candidate_id == id)
            .map(|c| obstruction_score(&c.signature, w))
            .ok_or_else(|| Error::Input(format!("candidate `{id}` missing from card `{}`", card.card_id)))
    };
    Ok(obs(&rival.candidate_id)? - obs(&result.intended_id)?)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StressRow {
    pub card_id: String,
    pub family_id: String,
    pub transition_type: TransitionType,
    pub intended_id: String,
    pub selected_id: String,
    pub top1: bool,
    pub margin: f64,
    pub best_incorrect_id: String,
    /// `None` when the best competitor was on the original menu.
    pub best_incorrect_kind: Option<StressKind>,
    /// A matched-cost extension outranks the intended one.
    pub matched_cost_beats_intended: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StressReport {
    pub metrics: Metrics,
    pub rows: Vec<StressRow>,
}

impl StressReport {
    /// Cards with a negative margin.
    pub fn boundary_cases(&self) -> impl Iterator<Item = &StressRow> {
        self.rows.iter().filter(|r| r.margin < 0.0)
    }

    /// Extension-required cards where a matched-cost extension won out.
    pub fn matched_cost_violations(&self) -> impl Iterator<Item = &StressRow> {
        self.rows
            .iter()
            .filter(|r| r.transition_type == TransitionType::ExtensionRequired && r.matched_cost_beats_intended)
    }
}

/// Expanded cards with their ranked results.
pub struct StressRun {
    pub cards: Vec<TransitionCard>,
    pub results: Vec<RankingResult>,
    pub report: StressReport,
}

/// Expands every card, reranks under `w` and summarizes the margins.
pub fn run_stress(
    cards: &[TransitionCard],
    cfg: &StressConfig,
    w: &ObstructionWeights,
    opts: &RankOptions,
    jobs: usize,
) -> Result<StressRun> {
    w.validate()?;
    let expanded = cards.iter().map(|c| expand_card(c, cfg)).collect::<Result<Vec<_>>>()?;
    let sigs = score_benchmark(&expanded, opts, jobs)?;
    let results = evaluate_with(&expanded, &sigs, |s| obstruction_score(s, w))?;
    let rows = results
        .iter()
        .map(|r| {
            let intended_pos = r.intended_rank - 1;
            let rival = r.best_incorrect();
            StressRow {
                card_id: r.card_id.clone(),
                family_id: r.family_id.clone(),
                transition_type: r.transition_type,
                intended_id: r.intended_id.clone(),
                selected_id: r.selected_id.clone(),
                top1: r.top1(),
                margin: stress_margin(r),
                best_incorrect_id: rival.map(|x| x.candidate_id.clone()).unwrap_or_default(),
                best_incorrect_kind: rival.and_then(|x| StressKind::of(&x.candidate_id)),
                matched_cost_beats_intended: r.rows[..intended_pos]
                    .iter()
                    .any(|x| StressKind::of(&x.candidate_id) == Some(StressKind::MatchedCost)),
            }
        })
        .collect();
    let report = StressReport {
        metrics: benchmark_metrics(&results),
        rows,
    };
    Ok(StressRun {
        cards: expanded,
        results,
        report,
    })
}

/// Mean validation residual per candidate class.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ValidationDiagnostics {
    pub n_cards: usize,
    pub intended: f64,
    pub selected: f64,
    pub best_incorrect: f64,
    pub base: f64,
}

/// Averages R_v over cards that carry validation data. `None` when no card
/// does; callers report that as a skipped diagnostic.
pub fn validation_diagnostics(results: &[RankingResult], cards: &[TransitionCard]) -> Option<ValidationDiagnostics> {
    let mut sums = [0.0; 4];
    let mut n = 0usize;
    for r in results {
        let Some(card) = cards.iter().find(|c| c.card_id == r.card_id) else {
            continue;
        };
        if card.datasets.validation.is_empty() {
            continue;
        }
        let base_id = card.base().map(|b| b.id.as_str());
        let rv = |id: Option<&str>| id.and_then(|id| r.row(id)).map(|row| row.signature.r_v);
        let (Some(i), Some(s), Some(b)) = (
            rv(Some(&r.intended_id)),
            rv(Some(&r.selected_id)),
            rv(base_id),
        ) else {
            continue;
        };
        let bi = r.best_incorrect().map_or(i, |row| row.signature.r_v);
        sums[0] += i;
        sums[1] += s;
        sums[2] += bi;
        sums[3] += b;
        n += 1;
    }
    if n == 0 {
        return None;
    }
    let m = |v: f64| v / n as f64;
    Some(ValidationDiagnostics {
        n_cards: n,
        intended: m(sums[0]),
        selected: m(sums[1]),
        best_incorrect: m(sums[2]),
        base: m(sums[3]),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::benchmark::{generate_benchmark, GeneratorConfig};
    use crate::card::validate_card;

    fn cards() -> Vec<TransitionCard> {
        generate_benchmark(&GeneratorConfig {
            variants: 1,
            ..GeneratorConfig::default()
        })
    }

    #[test]
    fn zero_counts_leave_card_unchanged() {
        let cfg = StressConfig {
            n_incorrect_formulas: 0,
            n_randomized: 0,
            n_matched_cost: 0,
            ..StressConfig::default()
        };
        for c in cards() {
            assert_eq!(expand_card(&c, &cfg).unwrap(), c);
        }
    }

    #[test]
    fn expansion_appends_valid_incorrect_candidates() {
        for c in cards() {
            let e = expand_card(&c, &StressConfig::default()).unwrap();
            assert_eq!(e.candidates.len(), c.candidates.len() + 4);
            assert_eq!(&e.candidates[..c.candidates.len()], &c.candidates[..]);
            assert_eq!(e.datasets, c.datasets);
            assert!(e.candidates[c.candidates.len()..].iter().all(|x| x.role == Role::Incorrect));
            let report = validate_card(&e);
            assert!(report.is_valid(), "{}: {:?}", e.card_id, report.violations);
            let intended = e.intended().unwrap();
            let matched: Vec<_> = e
                .candidates
                .iter()
                .filter(|x| StressKind::of(&x.id) == Some(StressKind::MatchedCost))
                .collect();
            assert_eq!(matched.len(), 1);
            assert_eq!(matched[0].cost, intended.cost);
        }
    }

    #[test]
    fn expansion_is_deterministic() {
        let c = &cards()[0];
        let cfg = StressConfig::default();
        assert_eq!(expand_card(c, &cfg).unwrap(), expand_card(c, &cfg).unwrap());
        let other = StressConfig { seed: 1, ..cfg.clone() };
        assert_ne!(expand_card(c, &cfg).unwrap(), expand_card(c, &other).unwrap());
    }

    #[test]
    fn stress_kind_round_trips() {
        for k in [StressKind::WrongFormula, StressKind::Randomized, StressKind::MatchedCost] {
            assert_eq!(StressKind::of(&format!("{}x", k.prefix())), Some(k));
        }
        assert_eq!(StressKind::of("lorentz"), None);
    }
}
