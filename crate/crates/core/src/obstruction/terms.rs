//! Gluing, constraint and limit terms.

use crate::card::{CardView, ConstraintKind, Interval};
use crate::error::{Error, Result};
use crate::model::optimize::latin_hypercube;
use crate::model::{chart_predictions_nrmse, predict, FittedChart, ResolvedModel, SATURATION};

/// Probe points per constraint.
pub const CONSTRAINT_PROBES: usize = 64;

const LIMIT_SALT: u64 = 0x11_417;

pub(crate) fn mix(seed: u64, salt: u64) -> u64 {
    // splitmix64 finalizer
    let mut z = seed ^ salt.wrapping_mul(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// `n` Latin-hypercube points spread over a union of boxes; box `i` gets
/// `n / k` points plus one of the remainder while it lasts.
pub fn stratified_points(boxes: &[&[Interval]], n: usize, seed: u64) -> Vec<Vec<f64>> {
    let k = boxes.len();
    let mut out = Vec::with_capacity(n);
    for (i, b) in boxes.iter().enumerate() {
        let m = n / k + usize::from(i < n % k);
        if m == 0 {
            continue;
        }
        for u in latin_hypercube(b.len(), m, mix(seed, i as u64)) {
            out.push(u.iter().zip(b.iter()).map(|(ui, iv)| iv.lo + ui * iv.width()).collect());
        }
    }
    out
}

/// Normalized RMSE between source- and target-fitted charts on the overlap
/// inputs.
pub fn gluing_residual(view: &CardView, source: &FittedChart, target: &FittedChart, scale: f64) -> f64 {
    let xs = || view.datasets.overlap.records.iter().map(|r| r.x.as_slice());
    chart_predictions_nrmse(&source.predictions(xs()), &target.predictions(xs()), scale)
}

/// Mean normalized violation over the card's constraints, capped at 10.
pub fn constraint_violation(view: &CardView, chart: &FittedChart, scale: f64) -> f64 {
    if view.constraints.is_empty() {
        return 0.0;
    }
    let mut total = 0.0;
    for (ci, cs) in view.constraints.iter().enumerate() {
        let boxes: Vec<&[Interval]> = cs
            .applies_in
            .iter()
            .map(|c| view.datasets.get(*c).regime.as_slice())
            .filter(|r| !r.is_empty())
            .collect();
        if boxes.is_empty() {
            continue;
        }
        let pts = stratified_points(&boxes, CONSTRAINT_PROBES, mix(view.seed, ci as u64));
        let f = |x: &[f64]| chart.predict(x).ok();
        let sat = SATURATION * scale;
        let excess: Vec<f64> = match cs.kind {
            ConstraintKind::UpperBound { bound } => {
                pts.iter().map(|x| f(x).map_or(sat, |y| (y - bound).max(0.0))).collect()
            }
            ConstraintKind::LowerBound { bound } => {
                pts.iter().map(|x| f(x).map_or(sat, |y| (bound - y).max(0.0))).collect()
            }
            ConstraintKind::Sign { positive } => pts
                .iter()
                .map(|x| f(x).map_or(sat, |y| if positive { (-y).max(0.0) } else { y.max(0.0) }))
                .collect(),
            ConstraintKind::Finiteness => pts.iter().map(|x| if f(x).is_some() { 0.0 } else { sat }).collect(),
            ConstraintKind::MonotonicIncreasing { axis } | ConstraintKind::MonotonicDecreasing { axis } => {
                let sign = if matches!(cs.kind, ConstraintKind::MonotonicIncreasing { .. }) { 1.0 } else { -1.0 };
                let lo = boxes.iter().map(|b| b[axis].lo).fold(f64::INFINITY, f64::min);
                let hi = boxes.iter().map(|b| b[axis].hi).fold(f64::NEG_INFINITY, f64::max);
                let step = (hi - lo) / CONSTRAINT_PROBES as f64;
                pts.iter()
                    .map(|x| {
                        let mut x2 = x.clone();
                        x2[axis] += step;
                        match (f(x), f(&x2)) {
                            (Some(a), Some(b)) => (-(sign * (b - a) / step)).max(0.0),
                            _ => sat,
                        }
                    })
                    .collect()
            }
        };
        let mean = excess.iter().sum::<f64>() / excess.len() as f64;
        total += (mean / scale).min(SATURATION);
    }
    (total / view.constraints.len() as f64).min(SATURATION)
}

/// Normalized RMSE between the chart and the source law on the limit grid.
pub fn limit_penalty(view: &CardView, chart: &FittedChart, scale: f64) -> Result<f64> {
    let limit = view.limit;
    let reference = ResolvedModel::resolve(&limit.reference)?;
    if reference.free_count() > 0 {
        return Err(Error::Input(format!(
            "limit reference `{}` has unfrozen parameters",
            reference.spec.spec_id
        )));
    }
    let pts = stratified_points(&[limit.limit_regime.as_slice()], limit.n_probe, mix(view.seed, LIMIT_SALT));
    let theta = reference.full_theta(&[]).to_vec();
    let want: Vec<Option<f64>> = pts.iter().map(|x| predict(reference.spec, &theta, x).ok()).collect();
    let got = chart.predictions(pts.iter().map(|x| x.as_slice()));
    Ok(chart_predictions_nrmse(&got, &want, scale))
}
