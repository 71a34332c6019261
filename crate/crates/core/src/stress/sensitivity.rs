//! Block-wise weight multipliers over precomputed signatures.

use serde::{Deserialize, Serialize};

use crate::card::TransitionCard;
use crate::error::{Error, Result};
use crate::obstruction::{
    benchmark_metrics, evaluate_with, obstruction_score, CardSignatures, Metrics, ObstructionWeights, Term,
};

/// A group of obstruction terms scaled together.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SensitivityBlock {
    /// Source, overlap and target residuals together.
    Residual,
    Gluing,
    Constraints,
    Limit,
    Cost,
    /// A single term, for per-term sweeps.
    Term(Term),
}

impl SensitivityBlock {
    pub const BLOCKS: [SensitivityBlock; 5] = [
        SensitivityBlock::Residual,
        SensitivityBlock::Gluing,
        SensitivityBlock::Constraints,
        SensitivityBlock::Limit,
        SensitivityBlock::Cost,
    ];

    pub fn terms(self) -> Vec<Term> {
        match self {
            SensitivityBlock::Residual => vec![Term::Source, Term::Overlap, Term::Target],
            SensitivityBlock::Gluing => vec![Term::Gluing],
            SensitivityBlock::Constraints => vec![Term::Constraints],
            SensitivityBlock::Limit => vec![Term::Limit],
            SensitivityBlock::Cost => vec![Term::Cost],
            SensitivityBlock::Term(t) => vec![t],
        }
    }

    pub fn name(self) -> String {
        match self {
            SensitivityBlock::Residual => "residual".into(),
            SensitivityBlock::Gluing => "gluing".into(),
            SensitivityBlock::Constraints => "constraints".into(),
            SensitivityBlock::Limit => "limit".into(),
            SensitivityBlock::Cost => "cost".into(),
            SensitivityBlock::Term(t) => format!("term:{}", t.as_str()),
        }
    }

    /// `w` with this block multiplied by `m`.
    pub fn apply(self, w: &ObstructionWeights, m: f64) -> ObstructionWeights {
        let mut out = *w;
        for t in self.terms() {
            *out.get_mut(t) *= m;
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SensitivityPoint {
    pub block: String,
    pub multiplier: f64,
    pub metrics: Metrics,
    /// Cards whose selection differs from the unscaled reference.
    pub selection_changes: usize,
    /// Of those, cards whose required move is an extension.
    pub extension_flips: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SensitivityReport {
    pub reference: Metrics,
    pub points: Vec<SensitivityPoint>,
}

impl SensitivityReport {
    pub fn point(&self, block: &str, multiplier: f64) -> Option<&SensitivityPoint> {
        self.points
            .iter()
            .find(|p| p.block == block && p.multiplier == multiplier)
    }
}

/// Reranks every card with one block scaled at a time. Per-term sweeps are
/// appended after the block sweeps when `per_term` is set.
pub fn weight_sensitivity(
    cards: &[TransitionCard],
    sigs: &[CardSignatures],
    base: &ObstructionWeights,
    multipliers: &[f64],
    per_term: bool,
) -> Result<SensitivityReport> {
    base.validate()?;
    if multipliers.iter().any(|m| !(m.is_finite() && *m > 0.0)) {
        return Err(Error::Config("sensitivity multipliers must be positive".into()));
    }
    if !multipliers.contains(&1.0) {
        return Err(Error::Config("sensitivity multipliers must include 1.0".into()));
    }
    let reference = evaluate_with(cards, sigs, |s| obstruction_score(s, base))?;
    let mut blocks = SensitivityBlock::BLOCKS.to_vec();
    if per_term {
        blocks.extend(Term::ALL.map(SensitivityBlock::Term));
    }
    let mut points = Vec::new();
    for block in blocks {
        for &m in multipliers {
            let w = block.apply(base, m);
            let results = evaluate_with(cards, sigs, |s| obstruction_score(s, &w))?;
            let changed: Vec<_> = results
                .iter()
                .zip(&reference)
                .filter(|(a, b)| a.selected_id != b.selected_id)
                .map(|(a, _)| a)
                .collect();
            points.push(SensitivityPoint {
                block: block.name(),
                multiplier: m,
                metrics: benchmark_metrics(&results),
                selection_changes: changed.len(),
                extension_flips: changed
                    .iter()
                    .filter(|r| r.transition_type.required_move() == crate::card::MoveType::Extension)
                    .count(),
            });
        }
    }
    Ok(SensitivityReport {
        reference: benchmark_metrics(&reference),
        points,
    })
}
