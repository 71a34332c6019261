//! Seeded construction of the default transition-card benchmark.

pub mod families;
pub mod graphs;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::card::{
    CandidateMove, Context, ContextDataset, Datasets, EvaluationLabels, Interval, LimitSpec,
    ModelRef, ObservationRecord, SourceConstellation, TransitionCard, SCHEMA_VERSION,
};
use crate::model::optimize::latin_hypercube;
use crate::model::{lookup, predict};
pub use families::{all_families, family, FamilyDef};
use graphs::{constellation, Shape};

pub const DEFAULT_SEED: u64 = 20240607;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GeneratorConfig {
    pub master_seed: u64,
    pub variants: usize,
    pub source_records: usize,
    pub overlap_records: usize,
    pub target_records: usize,
    pub validation_records: usize,
    /// Relative standard deviation of the multiplicative observation noise.
    pub noise_sigma: f64,
}

impl Default for GeneratorConfig {
    fn default() -> Self {
        Self {
            master_seed: DEFAULT_SEED,
            variants: 5,
            source_records: 40,
            overlap_records: 20,
            target_records: 40,
            validation_records: 20,
            noise_sigma: 0.02,
        }
    }
}

impl GeneratorConfig {
    fn records(&self, c: Context) -> usize {
        match c {
            Context::Source => self.source_records,
            Context::Overlap => self.overlap_records,
            Context::Target => self.target_records,
            Context::Validation => self.validation_records,
        }
    }
}

/// Per-card seed derived from the master seed, family and variant index.
pub fn card_seed(master_seed: u64, family_id: &str, variant: usize) -> u64 {
    let mut h = Sha256::new();
    h.update(master_seed.to_le_bytes());
    h.update(family_id.as_bytes());
    h.update((variant as u64).to_le_bytes());
    let digest = h.finalize();
    u64::from_le_bytes(digest[..8].try_into().expect("eight bytes"))
}

/// Latin-hypercube inputs: uniform per axis, and every stratum is hit once.
fn sample_inputs(rng: &mut ChaCha8Rng, regime: &[Interval], n: usize) -> Vec<Vec<f64>> {
    latin_hypercube(regime.len(), n, rng.random())
        .into_iter()
        .map(|u| u.iter().zip(regime).map(|(ui, iv)| iv.lo + ui * iv.width()).collect())
        .collect()
}

/// Builds one card. Identical arguments give identical cards.
pub fn generate_card(family: &FamilyDef, variant: usize, seed: u64, cfg: &GeneratorConfig) -> TransitionCard {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let family_id = family.family_id;
    let law = lookup(family_id, family.generating_spec).expect("generating law registered");

    let theta: Vec<f64> = family
        .parameter_ranges
        .iter()
        .map(|r| if r.width() == 0.0 { r.lo } else { r.lo + rng.random::<f64>() * r.width() })
        .collect();

    let validation_regime = family.validation_regime();
    let mut dataset = |context: Context| {
        let regime = match context {
            Context::Source => family.regimes[0].clone(),
            Context::Overlap => family.regimes[1].clone(),
            Context::Target => family.regimes[2].clone(),
            Context::Validation => validation_regime.clone(),
        };
        let records = sample_inputs(&mut rng, &regime, cfg.records(context))
            .into_iter()
            .map(|x| {
                let z: f64 = rng.sample(StandardNormal);
                let y = predict(law, &theta, &x).expect("generating law is defined on its regimes");
                ObservationRecord {
                    x,
                    y: y * (1.0 + cfg.noise_sigma * z),
                    context,
                }
            })
            .collect();
        ContextDataset {
            context,
            regime,
            records,
        }
    };
    let datasets = Datasets {
        source: dataset(Context::Source),
        overlap: dataset(Context::Overlap),
        target: dataset(Context::Target),
        validation: dataset(Context::Validation),
    };

    let candidates = family
        .candidates
        .iter()
        .map(|t| CandidateMove {
            id: t.id.to_string(),
            role: t.role,
            move_type: t.move_type,
            cost: t.cost,
            model: ModelRef::new(family_id, t.spec_id),
            graph: constellation(&family.graph, t.shape),
        })
        .collect();

    let source_model = ModelRef::new(family_id, family.source_spec);
    TransitionCard {
        schema_version: SCHEMA_VERSION,
        card_id: format!("{family_id}-v{variant}"),
        family_id: family_id.to_string(),
        variant,
        seed,
        source_constellation: SourceConstellation {
            model: source_model.clone(),
            graph: constellation(&family.graph, Shape::Source),
        },
        datasets,
        candidates,
        constraints: family.constraints.clone(),
        limit: LimitSpec {
            limit_regime: family.limit_regime.clone(),
            n_probe: family.limit_probes,
            reference: source_model,
        },
        evaluation: EvaluationLabels {
            transition_type: family.transition_type,
            intended_candidate_id: family.intended().id.to_string(),
            generating_parameters: theta,
        },
    }
}

/// All families × `cfg.variants` cards, in family then variant order.
pub fn generate_benchmark(cfg: &GeneratorConfig) -> Vec<TransitionCard> {
    all_families()
        .iter()
        .flat_map(|f| {
            (0..cfg.variants).map(move |v| generate_card(f, v, card_seed(cfg.master_seed, f.family_id, v), cfg))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::card::validate_card;

    #[test]
    fn default_benchmark_shape() {
        let cards = generate_benchmark(&GeneratorConfig::default());
        assert_eq!(cards.len(), 30);
        for c in &cards {
            let report = validate_card(c);
            assert!(report.is_valid(), "{}: {:?}", c.card_id, report.violations);
        }
    }

    #[test]
    fn card_seeds_differ_per_variant() {
        let a = card_seed(1, "x", 0);
        assert_ne!(a, card_seed(1, "x", 1));
        assert_ne!(a, card_seed(2, "x", 0));
        assert_ne!(a, card_seed(1, "y", 0));
    }
}
