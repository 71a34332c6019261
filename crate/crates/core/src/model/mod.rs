//! Compiled registry of parametric law schemas.
//!
//! Units: velocities are fractions of the invariant speed (c = 1), energies
//! are in units of mc², radiance uses λ in units of hc/(kT) with the
//! classical prefactor folded into the unit, pressures use RT = 1.

mod fit;
pub mod optimize;

pub use fit::{
    chart_predictions_nrmse, fit, normalization_scale, nrmse, FittedChart, SATURATION,
};
pub use optimize::OptimizerOptions;

use crate::card::{Interval, ModelRef};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Law {
    // generic helpers
    Linear,
    Constant,
    Zero,
    // velocity composition, x = (u, v)
    Galilean,
    VelocityPolynomial,
    VelocityRescaled,
    VelocitySaturating,
    Lorentz,
    LorentzSpeed,
    VelocityQuadrature,
    // kinetic energy, x = (v)
    Newtonian,
    KineticQuartic,
    KineticRational,
    Relativistic,
    RelativisticSpeed,
    KineticHyperbolic,
    // thermal radiation, x = (λ)
    RayleighJeans,
    RadiationRescaled,
    RadiationPolynomial,
    Wien,
    Planck,
    RadiationCutoff,
    // pendulum, x = (L, θ0)
    SmallAngle,
    FiniteAngle,
    AnharmonicSeries,
    PendulumSecant,
    // gas, x = (ρ)
    IdealGas,
    VirialLinear,
    VirialQuadratic,
    VirialCubic,
    VirialCluster,
    VanDerWaals,
    // resistor, x = (I, T)
    Ohm,
    OhmThermal,
    OhmNonlinear,
    OhmThermalCubic,
    OhmSqrtTemperature,
}

/// A registered law schema with its parameter box and fixed constants.
#[derive(Debug)]
pub struct ModelSpec {
    pub family_id: &'static str,
    pub spec_id: &'static str,
    pub arity: usize,
    pub parameter_names: &'static [&'static str],
    pub parameter_bounds: &'static [(f64, f64)],
    pub fixed_constants: &'static [(&'static str, f64)],
    law: Law,
}

impl ModelSpec {
    pub fn parameter_count(&self) -> usize {
        self.parameter_bounds.len()
    }

    pub fn bounds(&self) -> Vec<Interval> {
        self.parameter_bounds
            .iter()
            .map(|&(lo, hi)| Interval::new(lo, hi))
            .collect()
    }

    pub fn constant(&self, name: &str) -> f64 {
        self.fixed_constants
            .iter()
            .find(|(n, _)| *n == name)
            .map(|(_, v)| *v)
            .unwrap_or_else(|| panic!("{} has no constant `{name}`", self.spec_id))
    }

    pub fn model_ref(&'static self) -> ModelRef {
        ModelRef::new(self.family_id, self.spec_id)
    }
}

macro_rules! spec {
    ($fam:expr, $id:expr, $arity:expr, $law:ident, [$($pn:expr),*], [$($b:expr),*], [$($cn:expr => $cv:expr),*]) => {
        ModelSpec {
            family_id: $fam,
            spec_id: $id,
            arity: $arity,
            parameter_names: &[$($pn),*],
            parameter_bounds: &[$($b),*],
            fixed_constants: &[$(($cn, $cv)),*],
            law: Law::$law,
        }
    };
}

pub const GENERIC: &str = "generic";
pub const GALILEAN: &str = "galilean_lorentz";
pub const NEWTONIAN: &str = "newtonian_relativistic";
pub const RADIATION: &str = "rayleigh_jeans_planck";
pub const PENDULUM: &str = "pendulum_finite_angle";
pub const GAS: &str = "ideal_gas_virial";
pub const OHM: &str = "ohm_temperature";

const G_ACCEL: f64 = 9.81;
const T_REF: f64 = 293.15;

static REGISTRY: &[ModelSpec] = &[
    spec!(GENERIC, "linear", 1, Linear, ["slope"], [(-10.0, 10.0)], []),
    spec!(GENERIC, "constant", 1, Constant, ["level"], [(-1.0e3, 1.0e3)], []),
    spec!(GENERIC, "zero", 1, Zero, [], [], []),
    spec!(GALILEAN, "galilean", 2, Galilean, [], [], ["c" => 1.0]),
    spec!(GALILEAN, "velocity_polynomial", 2, VelocityPolynomial, ["a_uv", "a_uuv"], [(-0.1, 0.1), (-0.1, 0.1)], ["c" => 1.0]),
    spec!(GALILEAN, "velocity_rescaled", 2, VelocityRescaled, ["scale", "a_uuv"], [(0.3, 1.5), (-0.3, 0.3)], ["c" => 1.0]),
    spec!(GALILEAN, "velocity_saturating", 2, VelocitySaturating, [], [], ["c" => 1.0]),
    spec!(GALILEAN, "lorentz", 2, Lorentz, [], [], ["c" => 1.0]),
    spec!(GALILEAN, "lorentz_speed", 2, LorentzSpeed, ["c"], [(0.25, 4.0)], []),
    spec!(GALILEAN, "velocity_quadrature", 2, VelocityQuadrature, [], [], ["c" => 1.0]),
    spec!(NEWTONIAN, "newtonian", 1, Newtonian, [], [], ["m" => 1.0, "c" => 1.0]),
    spec!(NEWTONIAN, "kinetic_quartic", 1, KineticQuartic, ["a4"], [(0.0, 2.0)], ["m" => 1.0, "c" => 1.0]),
    spec!(NEWTONIAN, "kinetic_rational", 1, KineticRational, ["pole"], [(0.0, 0.95)], ["m" => 1.0, "c" => 1.0]),
    spec!(NEWTONIAN, "relativistic", 1, Relativistic, [], [], ["m" => 1.0, "c" => 1.0]),
    spec!(NEWTONIAN, "relativistic_speed", 1, RelativisticSpeed, ["c"], [(0.25, 4.0)], ["m" => 1.0]),
    spec!(NEWTONIAN, "kinetic_hyperbolic", 1, KineticHyperbolic, [], [], ["m" => 1.0, "c" => 1.0]),
    spec!(RADIATION, "rayleigh_jeans", 1, RayleighJeans, [], [], ["temperature" => 1.0]),
    spec!(RADIATION, "radiation_rescaled", 1, RadiationRescaled, ["scale"], [(0.05, 2.0)], ["temperature" => 1.0]),
    spec!(RADIATION, "radiation_polynomial", 1, RadiationPolynomial, ["a1", "a2"], [(-3.0, 3.0), (-3.0, 3.0)], ["temperature" => 1.0]),
    spec!(RADIATION, "wien", 1, Wien, ["quantum"], [(0.2, 5.0)], ["temperature" => 1.0]),
    spec!(RADIATION, "planck", 1, Planck, ["quantum"], [(0.2, 5.0)], ["temperature" => 1.0]),
    spec!(RADIATION, "radiation_cutoff", 1, RadiationCutoff, [], [], ["temperature" => 1.0]),
    spec!(PENDULUM, "small_angle", 2, SmallAngle, [], [], ["g" => G_ACCEL]),
    spec!(PENDULUM, "finite_angle", 2, FiniteAngle, ["a2"], [(0.0, 0.125)], ["g" => G_ACCEL]),
    spec!(PENDULUM, "anharmonic_series", 2, AnharmonicSeries, ["a2", "a6"], [(0.0, 0.125), (-10.0, 10.0)], ["g" => G_ACCEL]),
    spec!(PENDULUM, "pendulum_secant", 2, PendulumSecant, [], [], ["g" => G_ACCEL]),
    spec!(GAS, "ideal_gas", 1, IdealGas, [], [], ["rt" => 1.0]),
    spec!(GAS, "virial_linear", 1, VirialLinear, ["b2"], [(-1.0, 2.0)], ["rt" => 1.0]),
    spec!(GAS, "virial_quadratic", 1, VirialQuadratic, ["b2", "b3"], [(-1.0, 2.0), (-1.0, 2.0)], ["rt" => 1.0]),
    spec!(GAS, "virial_cubic", 1, VirialCubic, ["b2", "b3", "b4"], [(-1.0, 2.0), (-30.0, 30.0), (-30.0, 30.0)], ["rt" => 1.0]),
    spec!(GAS, "virial_cluster", 1, VirialCluster, ["b2", "b3", "b6"], [(-1.0, 2.0), (-1.0, 2.0), (-50.0, 50.0)], ["rt" => 1.0]),
    spec!(GAS, "van_der_waals", 1, VanDerWaals, [], [], ["rt" => 1.0, "a" => 0.5, "b" => 0.6]),
    spec!(OHM, "ohm", 2, Ohm, [], [], ["r0" => 100.0, "t0" => T_REF]),
    spec!(OHM, "ohm_thermal", 2, OhmThermal, ["r0", "alpha"], [(50.0, 150.0), (0.0, 0.01)], ["t0" => T_REF]),
    spec!(OHM, "ohm_nonlinear", 2, OhmNonlinear, ["r0", "alpha", "beta"], [(50.0, 150.0), (0.0, 0.01), (-20.0, 20.0)], ["t0" => T_REF]),
    spec!(OHM, "ohm_thermal_cubic", 2, OhmThermalCubic, ["r0", "alpha", "gamma"], [(50.0, 150.0), (0.0, 0.01), (-1.0e-5, 1.0e-5)], ["t0" => T_REF]),
    spec!(OHM, "ohm_sqrt_temperature", 2, OhmSqrtTemperature, [], [], ["r0" => 100.0, "t0" => T_REF]),
];

pub fn registry() -> &'static [ModelSpec] {
    REGISTRY
}

pub fn lookup(family_id: &str, spec_id: &str) -> Result<&'static ModelSpec> {
    REGISTRY
        .iter()
        .find(|s| s.family_id == family_id && s.spec_id == spec_id)
        .ok_or_else(|| Error::UnknownSpec {
            family_id: family_id.to_string(),
            spec_id: spec_id.to_string(),
        })
}

/// Arity shared by every spec of a family.
pub fn family_arity(family_id: &str) -> Option<usize> {
    REGISTRY
        .iter()
        .find(|s| s.family_id == family_id)
        .map(|s| s.arity)
}

fn domain(spec: &ModelSpec, reason: &str) -> Error {
    Error::Domain {
        spec_id: spec.spec_id.to_string(),
        reason: reason.to_string(),
    }
}

/// Evaluates f_{K,θ}(x).
pub fn predict(spec: &ModelSpec, theta: &[f64], x: &[f64]) -> Result<f64> {
    if x.len() != spec.arity {
        return Err(Error::Input(format!(
            "{} expects {} inputs, got {}",
            spec.spec_id,
            spec.arity,
            x.len()
        )));
    }
    if theta.len() != spec.parameter_count() {
        return Err(Error::Input(format!(
            "{} expects {} parameters, got {}",
            spec.spec_id,
            spec.parameter_count(),
            theta.len()
        )));
    }
    let y = evaluate(spec, theta, x)?;
    if y.is_finite() {
        Ok(y)
    } else {
        Err(domain(spec, "non-finite prediction"))
    }
}

fn evaluate(spec: &ModelSpec, t: &[f64], x: &[f64]) -> Result<f64> {
    let k = |name| spec.constant(name);
    let y = match spec.law {
        Law::Linear => t[0] * x[0],
        Law::Constant => t[0],
        Law::Zero => 0.0,
        Law::Galilean => x[0] + x[1],
        Law::VelocityPolynomial => {
            let (u, v) = (x[0], x[1]);
            u + v + t[0] * u * v + t[1] * (u * u * v + u * v * v)
        }
        Law::VelocityRescaled => (x[0] + x[1]) * (t[0] + t[1] * x[0] * x[1]),
        Law::VelocitySaturating => {
            let c = k("c");
            c * -(-(x[0] + x[1]) / c).exp_m1()
        }
        Law::Lorentz | Law::LorentzSpeed => {
            let c = if spec.law == Law::Lorentz { k("c") } else { t[0] };
            let denom = 1.0 + x[0] * x[1] / (c * c);
            if denom.abs() < 1e-12 {
                return Err(domain(spec, "1 + uv/c² vanishes"));
            }
            (x[0] + x[1]) / denom
        }
        Law::VelocityQuadrature => x[0].hypot(x[1]),
        Law::Newtonian => 0.5 * k("m") * x[0] * x[0],
        Law::KineticQuartic => {
            let b = x[0] / k("c");
            0.5 * k("m") * x[0] * x[0] * (1.0 + t[0] * b * b)
        }
        Law::KineticRational => {
            let denom = 1.0 - t[0] * x[0] / k("c");
            if denom <= 0.0 {
                return Err(domain(spec, "rational pole reached"));
            }
            0.5 * k("m") * x[0] * x[0] / denom
        }
        Law::Relativistic | Law::RelativisticSpeed => {
            let c = if spec.law == Law::Relativistic { k("c") } else { t[0] };
            let b = x[0] / c;
            if b.abs() >= 1.0 {
                return Err(domain(spec, "|v| ≥ c"));
            }
            // (γ - 1) m c², written to avoid cancellation at small β
            let b2 = b * b;
            let s = (1.0 - b2).sqrt();
            k("m") * c * c * b2 / (s * (1.0 + s))
        }
        Law::KineticHyperbolic => {
            let c = k("c");
            let b = x[0] / c;
            k("m") * c * c * 2.0 * (0.5 * b).sinh().powi(2)
        }
        Law::RayleighJeans => {
            let l = positive(spec, x[0], "wavelength")?;
            k("temperature") / l.powi(4)
        }
        Law::RadiationRescaled => {
            let l = positive(spec, x[0], "wavelength")?;
            t[0] * k("temperature") / l.powi(4)
        }
        Law::RadiationPolynomial => {
            let l = positive(spec, x[0], "wavelength")?;
            let inv = 1.0 / l;
            let rj = k("temperature") * inv.powi(4);
            (rj * (1.0 + t[0] * inv + t[1] * inv * inv)).max(0.0)
        }
        Law::Wien => {
            let l = positive(spec, x[0], "wavelength")?;
            l.powi(-5) * (-t[0] / (l * k("temperature"))).exp()
        }
        Law::Planck => {
            let l = positive(spec, x[0], "wavelength")?;
            l.powi(-5) / (t[0] / (l * k("temperature"))).exp_m1()
        }
        Law::RadiationCutoff => {
            let l = positive(spec, x[0], "wavelength")?;
            let temp = k("temperature");
            temp / l.powi(4) * (-1.0 / (l * temp)).exp()
        }
        Law::SmallAngle => period0(spec, x[0])?,
        Law::FiniteAngle => {
            let a2 = x[1] * x[1];
            period0(spec, x[0])? * (1.0 + t[0] * a2)
        }
        Law::AnharmonicSeries => {
            let a2 = x[1] * x[1];
            period0(spec, x[0])? * (1.0 + t[0] * a2 + t[1] * a2 * a2 * a2)
        }
        Law::PendulumSecant => {
            let c = (0.5 * x[1]).cos();
            if c <= 0.0 {
                return Err(domain(spec, "amplitude beyond π"));
            }
            period0(spec, x[0])? / c
        }
        Law::IdealGas => k("rt") * x[0],
        Law::VirialLinear => k("rt") * x[0] * (1.0 + t[0] * x[0]),
        Law::VirialQuadratic => {
            let r = x[0];
            k("rt") * r * (1.0 + t[0] * r + t[1] * r * r)
        }
        Law::VirialCubic => {
            let r = x[0];
            k("rt") * r * (1.0 + r * (t[0] + r * (t[1] + r * t[2])))
        }
        Law::VirialCluster => {
            let r = x[0];
            k("rt") * r * (1.0 + r * (t[0] + r * t[1]) + t[2] * r.powi(5))
        }
        Law::VanDerWaals => {
            let r = x[0];
            let free = 1.0 - k("b") * r;
            if free <= 0.0 {
                return Err(domain(spec, "density beyond excluded volume"));
            }
            k("rt") * r / free - k("a") * r * r
        }
        Law::Ohm => x[0] * k("r0"),
        Law::OhmThermal => x[0] * t[0] * (1.0 + t[1] * (x[1] - k("t0"))),
        Law::OhmNonlinear => x[0] * t[0] * (1.0 + t[1] * (x[1] - k("t0"))) + t[2] * x[0] * x[0],
        Law::OhmThermalCubic => {
            let dt = x[1] - k("t0");
            x[0] * t[0] * (1.0 + dt * (t[1] + t[2] * dt * dt))
        }
        Law::OhmSqrtTemperature => {
            let ratio = x[1] / k("t0");
            if ratio < 0.0 {
                return Err(domain(spec, "negative absolute temperature"));
            }
            x[0] * k("r0") * ratio.sqrt()
        }
    };
    Ok(y)
}

fn positive(spec: &ModelSpec, v: f64, what: &str) -> Result<f64> {
    if v > 0.0 {
        Ok(v)
    } else {
        Err(domain(spec, &format!("non-positive {what}")))
    }
}

fn period0(spec: &ModelSpec, length: f64) -> Result<f64> {
    let l = positive(spec, length, "length")?;
    Ok(2.0 * std::f64::consts::PI * (l / spec.constant("g")).sqrt())
}

/// A registry spec together with an optional frozen parameter vector.
#[derive(Clone, Debug)]
pub struct ResolvedModel {
    pub spec: &'static ModelSpec,
    pub frozen: Option<Vec<f64>>,
}

impl ResolvedModel {
    pub fn resolve(r: &ModelRef) -> Result<Self> {
        let spec = lookup(&r.family_id, &r.spec_id)?;
        if let Some(p) = &r.frozen_parameters {
            if p.len() != spec.parameter_count() {
                return Err(Error::Input(format!(
                    "{} frozen with {} parameters, expects {}",
                    spec.spec_id,
                    p.len(),
                    spec.parameter_count()
                )));
            }
        }
        Ok(Self {
            spec,
            frozen: r.frozen_parameters.clone(),
        })
    }

    /// Number of parameters left to fit.
    pub fn free_count(&self) -> usize {
        if self.frozen.is_some() {
            0
        } else {
            self.spec.parameter_count()
        }
    }

    pub fn free_bounds(&self) -> Vec<Interval> {
        if self.frozen.is_some() {
            Vec::new()
        } else {
            self.spec.bounds()
        }
    }

    /// Full parameter vector for the given free parameters.
    pub fn full_theta<'a>(&'a self, free: &'a [f64]) -> &'a [f64] {
        match &self.frozen {
            Some(p) => p,
            None => free,
        }
    }

    pub fn predict(&self, free: &[f64], x: &[f64]) -> Result<f64> {
        predict(self.spec, self.full_theta(free), x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(f: &str, s: &str) -> &'static ModelSpec {
        lookup(f, s).unwrap()
    }

    #[test]
    fn galilean_adds() {
        let y = predict(spec(GALILEAN, "galilean"), &[], &[0.1, 0.2]).unwrap();
        assert!((y - 0.3).abs() < 1e-15);
    }

    #[test]
    fn lorentz_identity_with_zero() {
        let s = spec(GALILEAN, "lorentz");
        for v in [-0.9, -0.3, 0.0, 0.42, 0.99] {
            assert_eq!(predict(s, &[], &[0.0, v]).unwrap(), v);
        }
    }

    #[test]
    fn lorentz_half_plus_half() {
        // (0.5 + 0.5) / (1 + 0.25) evaluated independently in exact rationals: 4/5
        let y = predict(spec(GALILEAN, "lorentz"), &[], &[0.5, 0.5]).unwrap();
        assert!((y - 0.8).abs() < 1e-15);
    }

    #[test]
    fn lorentz_singular_denominator() {
        let err = predict(spec(GALILEAN, "lorentz"), &[], &[1.0, -1.0]).unwrap_err();
        assert!(matches!(err, Error::Domain { .. }));
    }

    #[test]
    fn relativistic_domain_and_limit() {
        let s = spec(NEWTONIAN, "relativistic");
        assert!(matches!(
            predict(s, &[], &[1.0]),
            Err(Error::Domain { .. })
        ));
        let v: f64 = 1e-4;
        let y = predict(s, &[], &[v]).unwrap();
        assert!((y / (0.5 * v * v) - 1.0).abs() < 1e-7);
        // γ(0.6) = 1.25
        assert!((predict(s, &[], &[0.6]).unwrap() - 0.25).abs() < 1e-14);
    }

    #[test]
    fn planck_reduces_to_rayleigh_jeans_at_long_wavelength() {
        let p = predict(spec(RADIATION, "planck"), &[1.0], &[500.0]).unwrap();
        let rj = predict(spec(RADIATION, "rayleigh_jeans"), &[], &[500.0]).unwrap();
        assert!((p / rj - 1.0).abs() < 2e-3);
    }

    #[test]
    fn arity_mismatch_is_input_error() {
        assert!(matches!(
            predict(spec(GALILEAN, "galilean"), &[], &[0.1]),
            Err(Error::Input(_))
        ));
    }

    #[test]
    fn registry_ids_unique_and_bounds_ordered() {
        let mut seen = std::collections::BTreeSet::new();
        for s in registry() {
            assert!(seen.insert((s.family_id, s.spec_id)));
            assert_eq!(s.parameter_names.len(), s.parameter_count());
            for (lo, hi) in s.parameter_bounds {
                assert!(lo < hi);
            }
            assert_eq!(family_arity(s.family_id), Some(s.arity));
        }
    }
}
