//! Noise × record-fraction robustness grid.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::benchmark::DEFAULT_SEED;
use crate::card::{Context, TransitionCard};
use crate::error::{Error, Result};
use crate::obstruction::terms::mix;
use crate::obstruction::{obstruction_score, rank_by, score_card, Metrics, ObstructionWeights, RankOptions, RankingResult};
use crate::parallel::par_map;

/// Fewest records a subsampled context may keep.
pub const MIN_RECORDS: usize = 3;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RobustnessGrid {
    /// Relative noise standard deviations, ascending.
    pub noise_levels: Vec<f64>,
    /// Fractions of records kept per context, each in (0, 1].
    pub record_fractions: Vec<f64>,
    pub repeats: usize,
    pub seed: u64,
}

impl Default for RobustnessGrid {
    fn default() -> Self {
        Self {
            noise_levels: vec![0.0, 0.01, 0.02, 0.05, 0.1, 0.2],
            record_fractions: vec![1.0, 0.8, 0.6, 0.4, 0.25],
            repeats: 5,
            seed: DEFAULT_SEED,
        }
    }
}

impl RobustnessGrid {
    pub fn validate(&self) -> Result<()> {
        if self.noise_levels.is_empty() || self.record_fractions.is_empty() {
            return Err(Error::Config("robustness grid needs noise levels and record fractions".into()));
        }
        if self.noise_levels.iter().any(|e| !(e.is_finite() && *e >= 0.0)) {
            return Err(Error::Config("noise levels must be nonnegative".into()));
        }
        if self.noise_levels.windows(2).any(|p| p[0] > p[1]) {
            return Err(Error::Config("noise levels must be sorted ascending".into()));
        }
        if self.record_fractions.iter().any(|q| !(*q > 0.0 && *q <= 1.0)) {
            return Err(Error::Config("record fractions must lie in (0, 1]".into()));
        }
        if self.repeats == 0 {
            return Err(Error::Config("robustness repeats must be positive".into()));
        }
        Ok(())
    }

    fn cell_seed(&self, ei: usize, qi: usize, repeat: usize) -> u64 {
        mix(mix(mix(self.seed, ei as u64 + 1), qi as u64 + 1), repeat as u64 + 1)
    }
}

/// A copy of `card` with multiplicative noise `y·(1 + η·N)` and a seeded
/// fraction `q` of each context's records kept in their original order.
/// The flag is set when a context had fewer than [`MIN_RECORDS`] records and
/// was left unsubsampled.
pub fn perturb_card(card: &TransitionCard, eta: f64, q: f64, seed: u64) -> (TransitionCard, bool) {
    let mut out = card.clone();
    let mut rng = ChaCha8Rng::seed_from_u64(mix(seed, card.seed));
    let mut flagged = false;
    for ctx in [Context::Source, Context::Overlap, Context::Target, Context::Validation] {
        let ds = out.datasets.get_mut(ctx);
        for r in &mut ds.records {
            let z: f64 = StandardNormal.sample(&mut rng);
            r.y *= 1.0 + eta * z;
        }
        let n = ds.records.len();
        if n == 0 {
            continue;
        }
        if n < MIN_RECORDS {
            flagged = true;
            continue;
        }
        let keep = ((q * n as f64).round() as usize).clamp(MIN_RECORDS, n);
        if keep < n {
            let mut idx: Vec<usize> = (0..n).collect();
            idx.shuffle(&mut rng);
            let mut kept = idx[..keep].to_vec();
            kept.sort_unstable();
            let old = std::mem::take(&mut ds.records);
            ds.records = kept.into_iter().map(|i| old[i].clone()).collect();
        }
    }
    (out, flagged)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RobustnessCell {
    pub noise: f64,
    pub fraction: f64,
    pub repeat: usize,
    pub metrics: Metrics,
    pub flagged_cards: Vec<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CellMean {
    pub noise: f64,
    pub fraction: f64,
    pub metrics: Metrics,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RobustnessReport {
    pub cells: Vec<RobustnessCell>,
    /// Means over repeats per (η, q).
    pub means: Vec<CellMean>,
    /// Means over fractions and repeats per noise level.
    pub noise_curve: Vec<CellMean>,
    /// Means over noise levels and repeats per fraction.
    pub fraction_curve: Vec<CellMean>,
}

impl RobustnessReport {
    pub fn mean(&self, noise: f64, fraction: f64) -> Option<&Metrics> {
        self.means
            .iter()
            .find(|m| m.noise == noise && m.fraction == fraction)
            .map(|m| &m.metrics)
    }
}

/// Perturbs copies of every card for each grid cell and repeat, reranks,
/// and aggregates. Work is spread over `jobs` threads per card.
pub fn robustness_sweep(
    cards: &[TransitionCard],
    grid: &RobustnessGrid,
    w: &ObstructionWeights,
    opts: &RankOptions,
    jobs: usize,
) -> Result<RobustnessReport> {
    grid.validate()?;
    w.validate()?;
    let mut units = Vec::new();
    for (ei, &eta) in grid.noise_levels.iter().enumerate() {
        for (qi, &q) in grid.record_fractions.iter().enumerate() {
            for rep in 0..grid.repeats {
                for ci in 0..cards.len() {
                    units.push((ei, qi, rep, ci, eta, q));
                }
            }
        }
    }
    let outcomes = par_map(&units, jobs, |&(ei, qi, rep, ci, eta, q)| -> Result<(RankingResult, bool)> {
        let (card, flagged) = perturb_card(&cards[ci], eta, q, grid.cell_seed(ei, qi, rep));
        let sigs = score_card(&card.view(), opts)?;
        let result = RankingResult::label(&rank_by(&sigs, |s| obstruction_score(s, w)), &card)?;
        Ok((result, flagged))
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;

    let mut cells = Vec::new();
    for (chunk, unit) in outcomes.chunks(cards.len().max(1)).zip(units.chunks(cards.len().max(1))) {
        let (_, _, rep, _, eta, q) = unit[0];
        cells.push(RobustnessCell {
            noise: eta,
            fraction: q,
            repeat: rep,
            metrics: Metrics::from_outcomes(chunk.iter().map(|(r, _)| (r.top1(), r.intended_rank, r.type_correct()))),
            flagged_cards: chunk
                .iter()
                .filter(|(_, f)| *f)
                .map(|(r, _)| r.card_id.clone())
                .collect(),
        });
    }

    let average = |pred: &dyn Fn(&RobustnessCell) -> bool| {
        Metrics::mean(&cells.iter().filter(|c| pred(c)).map(|c| c.metrics).collect::<Vec<_>>())
    };
    let mut means = Vec::new();
    for &eta in &grid.noise_levels {
        for &q in &grid.record_fractions {
            means.push(CellMean {
                noise: eta,
                fraction: q,
                metrics: average(&|c| c.noise == eta && c.fraction == q),
            });
        }
    }
    let fractions_mean = grid.record_fractions.iter().sum::<f64>() / grid.record_fractions.len() as f64;
    let noise_mean = grid.noise_levels.iter().sum::<f64>() / grid.noise_levels.len() as f64;
    let noise_curve = grid
        .noise_levels
        .iter()
        .map(|&eta| CellMean {
            noise: eta,
            fraction: fractions_mean,
            metrics: average(&|c| c.noise == eta),
        })
        .collect();
    let fraction_curve = grid
        .record_fractions
        .iter()
        .map(|&q| CellMean {
            noise: noise_mean,
            fraction: q,
            metrics: average(&|c| c.fraction == q),
        })
        .collect();
    Ok(RobustnessReport {
        cells,
        means,
        noise_curve,
        fraction_curve,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::benchmark::{generate_benchmark, GeneratorConfig};

    #[test]
    fn identity_cell_leaves_card_unchanged() {
        let card = &generate_benchmark(&GeneratorConfig::default())[0];
        let (copy, flagged) = perturb_card(card, 0.0, 1.0, 99);
        assert_eq!(&copy, card);
        assert!(!flagged);
    }

    #[test]
    fn subsampling_keeps_order_and_floor() {
        let card = &generate_benchmark(&GeneratorConfig::default())[0];
        let (copy, _) = perturb_card(card, 0.0, 0.01, 5);
        for ctx in [Context::Source, Context::Overlap, Context::Target, Context::Validation] {
            let kept = &copy.datasets.get(ctx).records;
            let all = &card.datasets.get(ctx).records;
            assert_eq!(kept.len(), MIN_RECORDS);
            let pos: Vec<usize> = kept.iter().map(|r| all.iter().position(|a| a == r).unwrap()).collect();
            assert!(pos.windows(2).all(|p| p[0] < p[1]));
        }
    }

    #[test]
    fn rejects_bad_grids() {
        let bad = [
            RobustnessGrid { record_fractions: vec![0.0], ..RobustnessGrid::default() },
            RobustnessGrid { record_fractions: vec![1.5], ..RobustnessGrid::default() },
            RobustnessGrid { noise_levels: vec![0.1, 0.0], ..RobustnessGrid::default() },
            RobustnessGrid { repeats: 0, ..RobustnessGrid::default() },
        ];
        for g in bad {
            assert!(matches!(g.validate(), Err(Error::Config(_))));
        }
        RobustnessGrid::default().validate().unwrap();
    }
}
