//! Selection obstruction: signatures, weights, baselines and ranking.

mod rank;
pub mod terms;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use rank::{
    benchmark_metrics, evaluate_with, label_rankings, rank_by, rank_card, score_benchmark, score_card,
    CandidateSignature, CardSignatures, Metrics, Ranking, RankingResult, RankingRow, RankOptions,
};
pub use terms::{constraint_violation, gluing_residual, limit_penalty, stratified_points};

/// Weights of the selection obstruction.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ObstructionWeights {
    pub w_s: f64,
    pub w_o: f64,
    pub w_t: f64,
    pub w_g: f64,
    pub w_c: f64,
    pub w_l: f64,
    pub lambda: f64,
}

impl Default for ObstructionWeights {
    /// Reference weights.
    fn default() -> Self {
        Self {
            w_s: 1.0,
            w_o: 1.0,
            w_t: 1.5,
            w_g: 1.5,
            w_c: 2.0,
            w_l: 1.5,
            lambda: 0.25,
        }
    }
}

impl ObstructionWeights {
    pub fn uniform(w: f64) -> Self {
        Self {
            w_s: w,
            w_o: w,
            w_t: w,
            w_g: w,
            w_c: w,
            w_l: w,
            lambda: w,
        }
    }

    pub fn validate(&self) -> Result<()> {
        for t in Term::ALL {
            let v = self.get(t);
            if !(v >= 0.0 && v.is_finite()) {
                return Err(Error::Config(format!("weight for {t} must be finite and ≥ 0, got {v}")));
            }
        }
        Ok(())
    }

    pub fn get(&self, t: Term) -> f64 {
        match t {
            Term::Source => self.w_s,
            Term::Overlap => self.w_o,
            Term::Target => self.w_t,
            Term::Gluing => self.w_g,
            Term::Constraints => self.w_c,
            Term::Limit => self.w_l,
            Term::Cost => self.lambda,
        }
    }

    pub fn get_mut(&mut self, t: Term) -> &mut f64 {
        match t {
            Term::Source => &mut self.w_s,
            Term::Overlap => &mut self.w_o,
            Term::Target => &mut self.w_t,
            Term::Gluing => &mut self.w_g,
            Term::Constraints => &mut self.w_c,
            Term::Limit => &mut self.w_l,
            Term::Cost => &mut self.lambda,
        }
    }

    /// All weights multiplied by `factor`.
    pub fn scaled(&self, factor: f64) -> Self {
        let mut w = *self;
        for t in Term::ALL {
            *w.get_mut(t) *= factor;
        }
        w
    }
}

/// One additive term of the obstruction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Term {
    Source,
    Overlap,
    Target,
    Gluing,
    Constraints,
    Limit,
    Cost,
}

impl Term {
    pub const ALL: [Term; 7] = [
        Term::Source,
        Term::Overlap,
        Term::Target,
        Term::Gluing,
        Term::Constraints,
        Term::Limit,
        Term::Cost,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Term::Source => "source",
            Term::Overlap => "overlap",
            Term::Target => "target",
            Term::Gluing => "gluing",
            Term::Constraints => "constraints",
            Term::Limit => "limit",
            Term::Cost => "cost",
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Term {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Term::ALL
            .into_iter()
            .find(|t| t.as_str() == s)
            .ok_or_else(|| Error::UnknownTerm(s.to_string()))
    }
}

/// Copy of `w` with the weight of `drop` set to zero.
pub fn ablated_weights(w: &ObstructionWeights, drop: &str) -> Result<ObstructionWeights> {
    let t: Term = drop.parse()?;
    let mut out = *w;
    *out.get_mut(t) = 0.0;
    Ok(out)
}

/// Per-candidate obstruction signature.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ObstructionSignature {
    pub r_s: f64,
    pub r_o: f64,
    pub r_t: f64,
    pub r_v: f64,
    pub g_glue: f64,
    pub c_viol: f64,
    pub p_limit: f64,
    pub cost: f64,
    pub psi: Vec<f64>,
}

impl ObstructionSignature {
    pub fn term(&self, t: Term) -> f64 {
        match t {
            Term::Source => self.r_s,
            Term::Overlap => self.r_o,
            Term::Target => self.r_t,
            Term::Gluing => self.g_glue,
            Term::Constraints => self.c_viol,
            Term::Limit => self.p_limit,
            Term::Cost => self.cost,
        }
    }
}

/// The selection obstruction. `r_v` and `psi` do not enter.
pub fn obstruction_score(sig: &ObstructionSignature, w: &ObstructionWeights) -> f64 {
    w.w_s * sig.r_s
        + w.w_o * sig.r_o
        + w.w_t * sig.r_t
        + w.w_g * sig.g_glue
        + w.w_c * sig.c_viol
        + w.w_l * sig.p_limit
        + w.lambda * sig.cost
}

/// Non-kernel ranking baselines.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Baseline {
    TargetOnly,
    SourceTarget,
    SourceOverlapTarget,
    ResidualCost,
    ResidualGluing,
    Full,
}

impl Baseline {
    pub const ALL: [Baseline; 6] = [
        Baseline::TargetOnly,
        Baseline::SourceTarget,
        Baseline::SourceOverlapTarget,
        Baseline::ResidualCost,
        Baseline::ResidualGluing,
        Baseline::Full,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Baseline::TargetOnly => "target_only",
            Baseline::SourceTarget => "source_target",
            Baseline::SourceOverlapTarget => "source_overlap_target",
            Baseline::ResidualCost => "residual_cost",
            Baseline::ResidualGluing => "residual_gluing",
            Baseline::Full => "full",
        }
    }
}

/// Scores a signature under a baseline. Residual terms use the supplied
/// weights from `ResidualCost` on; the plain residual baselines are
/// unweighted sums.
pub fn baseline_score(sig: &ObstructionSignature, baseline: Baseline, w: &ObstructionWeights) -> f64 {
    let weighted_residuals = w.w_s * sig.r_s + w.w_o * sig.r_o + w.w_t * sig.r_t;
    match baseline {
        Baseline::TargetOnly => sig.r_t,
        Baseline::SourceTarget => sig.r_s + sig.r_t,
        Baseline::SourceOverlapTarget => sig.r_s + sig.r_o + sig.r_t,
        Baseline::ResidualCost => weighted_residuals + w.lambda * sig.cost,
        Baseline::ResidualGluing => weighted_residuals + w.w_g * sig.g_glue,
        Baseline::Full => obstruction_score(sig, w),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sig(v: [f64; 7]) -> ObstructionSignature {
        ObstructionSignature {
            r_s: v[0],
            r_o: v[1],
            r_t: v[2],
            r_v: 0.0,
            g_glue: v[3],
            c_viol: v[4],
            p_limit: v[5],
            cost: v[6],
            psi: vec![],
        }
    }

    #[test]
    fn zero_signature_scores_zero() {
        assert_eq!(obstruction_score(&sig([0.0; 7]), &ObstructionWeights::default()), 0.0);
    }

    #[test]
    fn uniform_unit_signature() {
        assert_eq!(obstruction_score(&sig([1.0; 7]), &ObstructionWeights::uniform(1.0)), 7.0);
    }

    #[test]
    fn ablation_zeroes_one_weight() {
        let w = ObstructionWeights::default();
        let g = ablated_weights(&w, "gluing").unwrap();
        assert_eq!(g.w_g, 0.0);
        assert_eq!(ObstructionWeights { w_g: 1.5, ..g }, w);
        assert_eq!(ablated_weights(&w, "cost").unwrap().lambda, 0.0);
        assert!(matches!(ablated_weights(&w, "entropy"), Err(Error::UnknownTerm(_))));
    }

    #[test]
    fn target_only_is_unweighted() {
        let s = sig([0.1, 0.1, 0.2, 0.1, 0.0, 0.0, 1.6]);
        assert_eq!(baseline_score(&s, Baseline::TargetOnly, &ObstructionWeights::default()), 0.2);
    }
}
