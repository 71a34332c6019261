//! Fitting charts and normalized residuals.

use crate::card::{Datasets, ObservationRecord};
use crate::error::{Error, Result};

use super::optimize::{minimize, OptimizerOptions};
use super::{predict, ModelSpec, ResolvedModel};

/// Cap on every residual-like term.
pub const SATURATION: f64 = 10.0;

/// A model with its fitted full parameter vector.
#[derive(Clone, Debug)]
pub struct FittedChart {
    pub spec: &'static ModelSpec,
    pub theta_hat: Vec<f64>,
    /// Mean squared loss at `theta_hat`, with saturated invalid points.
    pub fit_loss: f64,
}

impl FittedChart {
    pub fn predict(&self, x: &[f64]) -> Result<f64> {
        predict(self.spec, &self.theta_hat, x)
    }

    /// Predictions at each input; `None` marks a domain-invalid point.
    pub fn predictions<'a, I>(&self, xs: I) -> Vec<Option<f64>>
    where
        I: IntoIterator<Item = &'a [f64]>,
    {
        xs.into_iter().map(|x| self.predict(x).ok()).collect()
    }

    pub fn nrmse(&self, data: &[ObservationRecord], scale: f64) -> f64 {
        nrmse(self.spec, &self.theta_hat, data, scale)
    }
}

/// Population standard deviation of y over D_s ∪ D_o ∪ D_t, falling back to
/// max |y| when the spread is degenerate.
pub fn normalization_scale(datasets: &Datasets) -> f64 {
    let ys: Vec<f64> = datasets.global_records().iter().map(|r| r.y).collect();
    scale_of(&ys)
}

pub(crate) fn scale_of(ys: &[f64]) -> f64 {
    if ys.is_empty() {
        return 1.0;
    }
    let n = ys.len() as f64;
    let mean = ys.iter().sum::<f64>() / n;
    let var = ys.iter().map(|y| (y - mean).powi(2)).sum::<f64>() / n;
    let sd = var.sqrt();
    if sd >= 1e-12 {
        return sd;
    }
    let m = ys.iter().fold(0.0f64, |a, y| a.max(y.abs()));
    if m > 0.0 {
        m
    } else {
        1.0
    }
}

fn mean_squared(spec: &ModelSpec, theta: &[f64], data: &[ObservationRecord], scale: f64) -> (f64, usize) {
    let penalty = (SATURATION * scale).powi(2);
    let mut sum = 0.0;
    let mut invalid = 0;
    for r in data {
        match predict(spec, theta, &r.x) {
            Ok(y) => sum += (y - r.y).powi(2),
            Err(_) => {
                sum += penalty;
                invalid += 1;
            }
        }
    }
    (sum / data.len() as f64, invalid)
}

/// Normalized RMSE of `theta` on `data`. Domain-invalid points contribute a
/// squared error of `(10·scale)²`; the result is capped at 10.
pub fn nrmse(spec: &ModelSpec, theta: &[f64], data: &[ObservationRecord], scale: f64) -> f64 {
    if data.is_empty() {
        return 0.0;
    }
    let (mse, invalid) = mean_squared(spec, theta, data, scale);
    if invalid == data.len() {
        return SATURATION;
    }
    (mse.sqrt() / scale).min(SATURATION)
}

/// Least-squares fit of the model's free parameters on `data`.
///
/// `scale` sets the saturated loss of domain-invalid points. Frozen models
/// are evaluated as-is.
pub fn fit(
    model: &ResolvedModel,
    data: &[ObservationRecord],
    scale: f64,
    opts: &OptimizerOptions,
) -> Result<FittedChart> {
    if data.is_empty() {
        return Err(Error::Input(format!(
            "cannot fit {} on an empty dataset",
            model.spec.spec_id
        )));
    }
    let spec = model.spec;
    let theta_hat = match &model.frozen {
        Some(p) => p.clone(),
        None => {
            let m = minimize(
                |t| mean_squared(spec, t, data, scale).0,
                &model.free_bounds(),
                opts,
            );
            m.x
        }
    };
    let (fit_loss, invalid) = mean_squared(spec, &theta_hat, data, scale);
    if invalid == data.len() {
        return Err(Error::Unfittable(spec.spec_id.to_string()));
    }
    Ok(FittedChart {
        spec,
        theta_hat,
        fit_loss,
    })
}

/// RMSE between two prediction vectors divided by `scale`, capped at 10.
/// Any invalid entry on either side saturates the result.
pub fn chart_predictions_nrmse(a: &[Option<f64>], b: &[Option<f64>], scale: f64) -> f64 {
    if a.is_empty() {
        return 0.0;
    }
    let mut sum = 0.0;
    for (pa, pb) in a.iter().zip(b) {
        match (pa, pb) {
            (Some(x), Some(y)) => sum += (x - y).powi(2),
            _ => return SATURATION,
        }
    }
    ((sum / a.len() as f64).sqrt() / scale).min(SATURATION)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::card::{Context, ModelRef};
    use crate::model::{lookup, GALILEAN, GENERIC, OHM};

    fn rec(x: Vec<f64>, y: f64) -> ObservationRecord {
        ObservationRecord {
            x,
            y,
            context: Context::Source,
        }
    }

    fn resolved(f: &str, s: &str) -> ResolvedModel {
        ResolvedModel::resolve(&ModelRef::new(f, s)).unwrap()
    }

    #[test]
    fn zero_parameter_fit_reports_exact_loss() {
        let data = vec![rec(vec![0.1, 0.2], 0.35), rec(vec![0.3, 0.3], 0.5)];
        let chart = fit(&resolved(GALILEAN, "galilean"), &data, 1.0, &Default::default()).unwrap();
        assert!(chart.theta_hat.is_empty());
        let expected = (0.05f64.powi(2) + 0.1f64.powi(2)) / 2.0;
        assert!((chart.fit_loss - expected).abs() < 1e-15);
    }

    #[test]
    fn linear_slope_recovered() {
        let data: Vec<_> = (1..=10).map(|i| rec(vec![i as f64 * 0.3], 0.6 * i as f64)).collect();
        let chart = fit(&resolved(GENERIC, "linear"), &data, 1.0, &Default::default()).unwrap();
        assert!((chart.theta_hat[0] - 2.0).abs() < 1e-6, "{:?}", chart.theta_hat);
    }

    /// Dense grid over the box, then coordinate bisection on the loss.
    fn grid_oracle(spec: &'static ModelSpec, data: &[ObservationRecord]) -> Vec<f64> {
        let b = spec.bounds();
        let loss = |t: &[f64]| mean_squared(spec, t, data, 1.0).0;
        let n = 200;
        let mut best = (vec![b[0].lo, b[1].lo], f64::INFINITY);
        for i in 0..=n {
            for j in 0..=n {
                let t = vec![
                    b[0].lo + b[0].width() * i as f64 / n as f64,
                    b[1].lo + b[1].width() * j as f64 / n as f64,
                ];
                let l = loss(&t);
                if l < best.1 {
                    best = (t, l);
                }
            }
        }
        let mut t = best.0;
        let mut half = [b[0].width() / n as f64, b[1].width() / n as f64];
        for _ in 0..200 {
            for d in 0..2 {
                let here = loss(&t);
                for dir in [-1.0, 1.0] {
                    let mut c = t.clone();
                    c[d] = (c[d] + dir * half[d]).clamp(b[d].lo, b[d].hi);
                    if loss(&c) < here {
                        t = c;
                        break;
                    }
                }
                half[d] *= 0.7;
            }
        }
        t
    }

    #[test]
    fn ohm_thermal_recovered_against_grid_oracle() {
        let spec = lookup(OHM, "ohm_thermal").unwrap();
        let data: Vec<_> = (0..20)
            .map(|i| {
                let current = 0.1 + 0.045 * i as f64;
                let temp = 290.0 + 7.5 * i as f64;
                let y = current * 100.0 * (1.0 + 0.004 * (temp - 293.15));
                rec(vec![current, temp], y)
            })
            .collect();
        let chart = fit(&resolved(OHM, "ohm_thermal"), &data, 1.0, &Default::default()).unwrap();
        let oracle = grid_oracle(spec, &data);
        for (got, want) in chart.theta_hat.iter().zip([100.0, 0.004]) {
            assert!(((got - want) / want).abs() < 1e-4, "{:?}", chart.theta_hat);
        }
        for (got, want) in chart.theta_hat.iter().zip(&oracle) {
            assert!(((got - want) / want).abs() < 1e-4, "{:?} vs {oracle:?}", chart.theta_hat);
        }
    }

    #[test]
    fn constant_zero_nrmse_closed_form() {
        let spec = lookup(GENERIC, "zero").unwrap();
        let data = vec![rec(vec![0.0], 1.0), rec(vec![1.0], 2.0), rec(vec![2.0], 3.0)];
        // RMSE = sqrt(14/3); population std of {1,2,3} = sqrt(2/3)
        let scale = scale_of(&[1.0, 2.0, 3.0]);
        assert!((scale - (2.0f64 / 3.0).sqrt()).abs() < 1e-15);
        let want = (14.0f64 / 3.0).sqrt() / (2.0f64 / 3.0).sqrt();
        assert!((nrmse(spec, &[], &data, scale) - want).abs() < 1e-12);
    }

    #[test]
    fn fully_invalid_is_saturated_and_unfittable() {
        let data = vec![rec(vec![1.0, -1.0], 0.0)];
        let spec = lookup(GALILEAN, "lorentz").unwrap();
        assert_eq!(nrmse(spec, &[], &data, 0.3), SATURATION);
        assert!(matches!(
            fit(&resolved(GALILEAN, "lorentz"), &data, 0.3, &Default::default()),
            Err(Error::Unfittable(_))
        ));
    }

    #[test]
    fn scale_falls_back_to_max_abs() {
        assert_eq!(scale_of(&[-4.0, -4.0]), 4.0);
    }
}
