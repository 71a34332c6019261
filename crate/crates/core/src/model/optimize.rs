//! Bounded multi-start Nelder–Mead.
//!
//! The search runs in normalized unit-box coordinates; trial points leaving
//! the box are clamped back onto it. Starts are Latin-hypercube stratified
//! and drawn from a seeded stream, so results are reproducible.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::card::Interval;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OptimizerOptions {
    pub starts: usize,
    pub max_evals: usize,
    /// Stop once the simplex diameter (unit-box coordinates) falls below this.
    pub tolerance: f64,
    pub seed: u64,
}

impl Default for OptimizerOptions {
    fn default() -> Self {
        Self {
            starts: 16,
            max_evals: 2000,
            tolerance: 1e-9,
            seed: 0x05ee_df17,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Minimum {
    pub x: Vec<f64>,
    pub value: f64,
    pub evaluations: usize,
}

/// Minimizes `f` over the box `bounds`. With no dimensions the objective is
/// evaluated once at the empty vector.
pub fn minimize<F>(f: F, bounds: &[Interval], opts: &OptimizerOptions) -> Minimum
where
    F: Fn(&[f64]) -> f64,
{
    let dim = bounds.len();
    if dim == 0 {
        return Minimum {
            x: Vec::new(),
            value: f(&[]),
            evaluations: 1,
        };
    }
    let to_param = |u: &[f64]| -> Vec<f64> {
        u.iter()
            .zip(bounds)
            .map(|(ui, b)| b.lo + ui.clamp(0.0, 1.0) * b.width())
            .collect()
    };
    let objective = |u: &[f64]| {
        let v = f(&to_param(u));
        if v.is_nan() {
            f64::INFINITY
        } else {
            v
        }
    };

    let mut best: Option<(Vec<f64>, f64)> = None;
    let mut total = 0;
    for start in latin_hypercube(dim, opts.starts.max(1), opts.seed) {
        let (u, v, n) = nelder_mead(&objective, start, opts.max_evals, opts.tolerance);
        total += n;
        if best.as_ref().is_none_or(|(_, bv)| v < *bv) {
            best = Some((u, v));
        }
    }
    let (u, value) = best.expect("at least one start");
    Minimum {
        x: to_param(&u),
        value,
        evaluations: total,
    }
}

/// `n` stratified points in `[0,1]^dim`; each axis hits every stratum once.
pub fn latin_hypercube(dim: usize, n: usize, seed: u64) -> Vec<Vec<f64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut points = vec![vec![0.0; dim]; n];
    for d in 0..dim {
        let mut strata: Vec<usize> = (0..n).collect();
        strata.shuffle(&mut rng);
        for (p, s) in points.iter_mut().zip(strata) {
            p[d] = (s as f64 + rng.random::<f64>()) / n as f64;
        }
    }
    points
}

fn clamp_unit(v: &mut [f64]) {
    for x in v {
        *x = x.clamp(0.0, 1.0);
    }
}

fn nelder_mead<F>(f: &F, start: Vec<f64>, max_evals: usize, tol: f64) -> (Vec<f64>, f64, usize)
where
    F: Fn(&[f64]) -> f64,
{
    const STEP: f64 = 0.1;
    let dim = start.len();
    let evals = std::cell::Cell::new(0usize);
    let eval = |x: &[f64]| {
        evals.set(evals.get() + 1);
        f(x)
    };

    let mut simplex = vec![start.clone()];
    for d in 0..dim {
        let mut p = start.clone();
        p[d] += if p[d] + STEP <= 1.0 { STEP } else { -STEP };
        simplex.push(p);
    }
    let mut values: Vec<f64> = simplex.iter().map(|p| eval(p)).collect();

    loop {
        let mut order: Vec<usize> = (0..=dim).collect();
        order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
        simplex = order.iter().map(|&i| simplex[i].clone()).collect();
        values = order.iter().map(|&i| values[i]).collect();

        if diameter(&simplex) < tol || evals.get() >= max_evals {
            break;
        }

        let worst = dim;
        let centroid: Vec<f64> = (0..dim)
            .map(|d| simplex[..worst].iter().map(|p| p[d]).sum::<f64>() / dim as f64)
            .collect();
        let along = |t: f64| -> Vec<f64> {
            let mut p: Vec<f64> = centroid
                .iter()
                .zip(&simplex[worst])
                .map(|(c, w)| c + t * (c - w))
                .collect();
            clamp_unit(&mut p);
            p
        };

        let reflected = along(1.0);
        let fr = eval(&reflected);
        if fr < values[0] {
            let expanded = along(2.0);
            let fe = eval(&expanded);
            if fe < fr {
                simplex[worst] = expanded;
                values[worst] = fe;
            } else {
                simplex[worst] = reflected;
                values[worst] = fr;
            }
            continue;
        }
        if fr < values[worst - 1] {
            simplex[worst] = reflected;
            values[worst] = fr;
            continue;
        }
        let contracted = along(if fr < values[worst] { 0.5 } else { -0.5 });
        let fc = eval(&contracted);
        if fc < values[worst].min(fr) {
            simplex[worst] = contracted;
            values[worst] = fc;
            continue;
        }
        // shrink toward the best vertex
        for i in 1..=dim {
            let p: Vec<f64> = simplex[0]
                .iter()
                .zip(&simplex[i])
                .map(|(b, x)| b + 0.5 * (x - b))
                .collect();
            values[i] = eval(&p);
            simplex[i] = p;
        }
    }
    (simplex.swap_remove(0), values[0], evals.get())
}

fn diameter(simplex: &[Vec<f64>]) -> f64 {
    let mut d: f64 = 0.0;
    for i in 0..simplex.len() {
        for j in i + 1..simplex.len() {
            let s: f64 = simplex[i]
                .iter()
                .zip(&simplex[j])
                .map(|(a, b)| (a - b) * (a - b))
                .sum();
            d = d.max(s.sqrt());
        }
    }
    d
}
