//! Hand-built cards over the generic one-input laws, small enough for
//! closed-form oracles.

#![allow(dead_code)]

use theory_shift::card::{
    CandidateMove, ConstellationGraph, Context, ContextDataset, Datasets, EvaluationLabels, Interval, LimitSpec,
    ModelRef, MoveType, ObservationRecord, Role, SourceConstellation, TransitionCard, TransitionType, SCHEMA_VERSION,
};
use theory_shift::model::GENERIC;

pub fn dataset(context: Context, regime: (f64, f64), points: &[(f64, f64)]) -> ContextDataset {
    ContextDataset {
        context,
        regime: vec![Interval::new(regime.0, regime.1)],
        records: points
            .iter()
            .map(|&(x, y)| ObservationRecord {
                x: vec![x],
                y,
                context,
            })
            .collect(),
    }
}

pub fn candidate(id: &str, role: Role, move_type: MoveType, cost: f64, model: ModelRef) -> CandidateMove {
    CandidateMove {
        id: id.into(),
        role,
        move_type,
        cost,
        model,
        graph: ConstellationGraph::default(),
    }
}

/// Records on `[1,2]`, `[2,3]`, `[3,4]` and `[4,5]`. The limit probe sits at
/// x = 0 against the zero law, so a linear chart has no limit penalty and a
/// constant chart pays `|level| / scale`.
pub fn tiny_card(
    source: &[(f64, f64)],
    overlap: &[(f64, f64)],
    target: &[(f64, f64)],
    validation: &[(f64, f64)],
    candidates: Vec<CandidateMove>,
) -> TransitionCard {
    let intended = candidates
        .iter()
        .find(|c| c.role == Role::Intended)
        .map_or_else(|| candidates[0].id.clone(), |c| c.id.clone());
    TransitionCard {
        schema_version: SCHEMA_VERSION,
        card_id: "tiny-v0".into(),
        family_id: GENERIC.into(),
        variant: 0,
        seed: 1,
        source_constellation: SourceConstellation {
            model: ModelRef::new(GENERIC, "zero"),
            graph: ConstellationGraph::default(),
        },
        datasets: Datasets {
            source: dataset(Context::Source, (1.0, 2.0), source),
            overlap: dataset(Context::Overlap, (2.0, 3.0), overlap),
            target: dataset(Context::Target, (3.0, 4.0), target),
            validation: dataset(Context::Validation, (4.0, 5.0), validation),
        },
        candidates,
        constraints: Vec::new(),
        limit: LimitSpec {
            limit_regime: vec![Interval::new(0.0, 0.0)],
            n_probe: 4,
            reference: ModelRef::new(GENERIC, "zero"),
        },
        evaluation: EvaluationLabels {
            transition_type: TransitionType::ExtensionRequired,
            intended_candidate_id: intended,
            generating_parameters: Vec::new(),
        },
    }
}

/// Base zero law, a fitted constant and a fitted line.
pub fn generic_menu(cost_constant: f64, cost_linear: f64) -> Vec<CandidateMove> {
    vec![
        candidate("zero", Role::Base, MoveType::Deformation, 0.0, ModelRef::new(GENERIC, "zero")),
        candidate(
            "constant",
            Role::Incorrect,
            MoveType::Deformation,
            cost_constant,
            ModelRef::new(GENERIC, "constant"),
        ),
        candidate("linear", Role::Intended, MoveType::Extension, cost_linear, ModelRef::new(GENERIC, "linear")),
    ]
}

pub type Points = Vec<(f64, f64)>;

pub fn scale(ys: &[f64]) -> f64 {
    let n = ys.len() as f64;
    let mean = ys.iter().sum::<f64>() / n;
    let sd = (ys.iter().map(|y| (y - mean).powi(2)).sum::<f64>() / n).sqrt();
    if sd >= 1e-12 {
        sd
    } else {
        let m = ys.iter().fold(0.0f64, |a, y| a.max(y.abs()));
        if m > 0.0 { m } else { 1.0 }
    }
}

pub fn rmse_over(pred: impl Fn(f64) -> f64, pts: &[(f64, f64)], s: f64) -> f64 {
    if pts.is_empty() {
        return 0.0;
    }
    let mse = pts.iter().map(|&(x, y)| (pred(x) - y).powi(2)).sum::<f64>() / pts.len() as f64;
    (mse.sqrt() / s).min(10.0)
}

#[derive(Clone, Copy)]
pub enum Law {
    Zero,
    Constant,
    Linear,
}

impl Law {
    pub fn fit(self, pts: &[(f64, f64)]) -> f64 {
        match self {
            Law::Zero => 0.0,
            Law::Constant => pts.iter().map(|p| p.1).sum::<f64>() / pts.len() as f64,
            Law::Linear => pts.iter().map(|p| p.0 * p.1).sum::<f64>() / pts.iter().map(|p| p.0 * p.0).sum::<f64>(),
        }
    }

    pub fn eval(self, theta: f64, x: f64) -> f64 {
        match self {
            Law::Zero => 0.0,
            Law::Constant => theta,
            Law::Linear => theta * x,
        }
    }
}

/// `[r_s, r_o, r_t, g, p]` from closed-form fits of the base, constant and
/// linear laws; the limit probe sits at x = 0.
pub fn oracle(law: Law, s: &[(f64, f64)], o: &[(f64, f64)], t: &[(f64, f64)]) -> [f64; 5] {
    let global: Points = s.iter().chain(o).chain(t).copied().collect();
    let ys: Vec<f64> = global.iter().map(|p| p.1).collect();
    let sc = scale(&ys);
    let th = law.fit(&global);
    let (ts, tt) = (law.fit(s), law.fit(t));
    let glue_pts: Points = o.iter().map(|&(x, _)| (x, law.eval(tt, x))).collect();
    let g = rmse_over(|x| law.eval(ts, x), &glue_pts, sc);
    let p = (law.eval(th, 0.0).abs() / sc).min(10.0);
    [
        rmse_over(|x| law.eval(th, x), s, sc),
        rmse_over(|x| law.eval(th, x), o, sc),
        rmse_over(|x| law.eval(th, x), t, sc),
        g,
        p,
    ]
}

/// Obstruction under the reference weights from closed-form terms.
pub fn oracle_obs(terms: [f64; 5], cost: f64) -> f64 {
    terms[0] + terms[1] + 1.5 * terms[2] + 1.5 * terms[3] + 1.5 * terms[4] + 0.25 * cost
}

/// The laws of [`generic_menu`] in menu order.
pub const MENU_LAWS: [Law; 3] = [Law::Zero, Law::Constant, Law::Linear];
