//! The six built-in transition families.

use once_cell::sync::Lazy;

use super::graphs::{GraphVocab, Shape};
use crate::card::{
    Commitments, ConstraintKind, ConstraintSpec, Context, Interval, MoveType, Role,
    TransitionType,
};
use crate::model::{GALILEAN, GAS, NEWTONIAN, OHM, PENDULUM, RADIATION};

#[derive(Clone, Debug)]
pub struct CandidateTemplate {
    pub id: &'static str,
    pub role: Role,
    pub move_type: MoveType,
    pub cost: f64,
    pub spec_id: &'static str,
    pub shape: Shape,
}

/// Appended by the stress protocol.
#[derive(Clone, Debug)]
pub struct StressDistractors {
    /// Zero-parameter formulas from outside the family's candidate menu.
    pub wrong_formulas: &'static [&'static str],
    /// Extension used for the matched-cost alternative.
    pub matched_extension: &'static str,
    /// Spec whose parameters are perturbed for randomized candidates, with
    /// the centre of the perturbation. `None` uses the generating law and
    /// its true parameters.
    pub randomized: Option<(&'static str, &'static [f64])>,
}

#[derive(Clone, Debug)]
pub struct FamilyDef {
    pub family_id: &'static str,
    pub title: &'static str,
    pub transition_type: TransitionType,
    pub source_spec: &'static str,
    pub generating_spec: &'static str,
    /// Per-variant draw box for the generating parameters (degenerate
    /// intervals fix a parameter).
    pub parameter_ranges: Vec<Interval>,
    /// Source, overlap and target regimes.
    pub regimes: [Vec<Interval>; 3],
    pub constraints: Vec<ConstraintSpec>,
    pub limit_regime: Vec<Interval>,
    pub limit_probes: usize,
    pub candidates: Vec<CandidateTemplate>,
    pub graph: GraphVocab,
    pub stress: StressDistractors,
}

impl FamilyDef {
    pub fn intended(&self) -> &CandidateTemplate {
        self.candidates
            .iter()
            .find(|c| c.role == Role::Intended)
            .expect("family has an intended template")
    }

    /// Validation regime: per-axis hull of the three fitting regimes.
    pub fn validation_regime(&self) -> Vec<Interval> {
        (0..self.regimes[0].len())
            .map(|d| {
                let lo = self.regimes.iter().map(|r| r[d].lo).fold(f64::INFINITY, f64::min);
                let hi = self.regimes.iter().map(|r| r[d].hi).fold(f64::NEG_INFINITY, f64::max);
                Interval::new(lo, hi)
            })
            .collect()
    }
}

fn iv(lo: f64, hi: f64) -> Interval {
    Interval::new(lo, hi)
}

fn constraint(id: &str, kind: ConstraintKind, applies_in: &[Context]) -> ConstraintSpec {
    ConstraintSpec {
        id: id.to_string(),
        kind,
        applies_in: applies_in.to_vec(),
    }
}

fn cand(
    id: &'static str,
    role: Role,
    move_type: MoveType,
    cost: f64,
    spec_id: &'static str,
    shape: Shape,
) -> CandidateTemplate {
    CandidateTemplate {
        id,
        role,
        move_type,
        cost,
        spec_id,
        shape,
    }
}

use Context::{Overlap as O, Source as S, Target as T};
use MoveType::{Deformation as Def, Extension as Ext};
use Role::{Base, Deformation as DefRole, Incorrect, Intended};
use Shape::{CapacityExtension as Cap, Deformation as DefShape, Source as Src, StructuralExtension as Struct};

fn flags(set: &[&str]) -> Commitments {
    let mut c = Commitments::default();
    for f in set {
        match *f {
            "invariant_speed" => c.invariant_speed = true,
            "low_speed_limit" => c.low_speed_limit = true,
            "quantization_scale" => c.quantization_scale = true,
            "absolute_time" => c.absolute_time = true,
            "preferred_frame" => c.preferred_frame = true,
            "limit_relation" => c.limit_relation = true,
            "removes_old_posit" => c.removes_old_posit = true,
            "introduces_constraint" => c.introduces_constraint = true,
            other => panic!("unknown commitment {other}"),
        }
    }
    c
}

const EXT_FLAGS: [&str; 3] = ["limit_relation", "removes_old_posit", "introduces_constraint"];

fn ext_flags(extra: &[&str]) -> Commitments {
    let mut all: Vec<&str> = EXT_FLAGS.to_vec();
    all.extend_from_slice(extra);
    flags(&all)
}

fn galilean() -> FamilyDef {
    FamilyDef {
        family_id: GALILEAN,
        title: "Galilean → Lorentz velocity composition",
        transition_type: TransitionType::ExtensionRequired,
        source_spec: "galilean",
        generating_spec: "lorentz",
        parameter_ranges: vec![],
        regimes: [
            vec![iv(0.0, 0.05), iv(-0.05, 0.05)],
            vec![iv(0.05, 0.5), iv(-0.5, 0.5)],
            vec![iv(0.5, 0.7), iv(-0.7, 0.7)],
        ],
        constraints: vec![constraint(
            "subluminal",
            ConstraintKind::UpperBound { bound: 1.0 },
            &[O, T],
        )],
        limit_regime: vec![iv(0.0, 0.01), iv(-0.01, 0.01)],
        limit_probes: 16,
        candidates: vec![
            cand("galilean", Base, Def, 0.0, "galilean", Src),
            cand("velocity_polynomial", DefRole, Def, 0.5, "velocity_polynomial", DefShape),
            cand("velocity_rescaled", DefRole, Def, 0.4, "velocity_rescaled", DefShape),
            cand("velocity_saturating", Incorrect, Ext, 1.5, "velocity_saturating", Cap),
            cand("lorentz", Intended, Ext, 1.6, "lorentz", Struct),
        ],
        graph: GraphVocab {
            inputs: &["velocity_u", "velocity_v"],
            output: "composed_velocity",
            old_posit: "absolute_time",
            new_posit: "invariant_speed",
            constraint: "speed_bound",
            source_flags: flags(&["absolute_time"]),
            extension_flags: ext_flags(&["invariant_speed", "low_speed_limit"]),
        },
        stress: StressDistractors {
            wrong_formulas: &["velocity_quadrature"],
            matched_extension: "velocity_saturating",
            randomized: Some(("lorentz_speed", &[1.0])),
        },
    }
}

fn newtonian() -> FamilyDef {
    FamilyDef {
        family_id: NEWTONIAN,
        title: "Newtonian → relativistic kinetic energy",
        transition_type: TransitionType::ExtensionRequired,
        source_spec: "newtonian",
        generating_spec: "relativistic",
        parameter_ranges: vec![],
        regimes: [vec![iv(0.005, 0.05)], vec![iv(0.05, 0.4)], vec![iv(0.4, 0.95)]],
        constraints: vec![
            constraint("energy_positive", ConstraintKind::Sign { positive: true }, &[S, O, T]),
            constraint("energy_increasing", ConstraintKind::MonotonicIncreasing { axis: 0 }, &[O, T]),
        ],
        limit_regime: vec![iv(0.005, 0.02)],
        limit_probes: 16,
        candidates: vec![
            cand("newtonian", Base, Def, 0.0, "newtonian", Src),
            cand("kinetic_quartic", DefRole, Def, 0.5, "kinetic_quartic", DefShape),
            cand("kinetic_rational", Incorrect, Ext, 1.5, "kinetic_rational", Cap),
            cand("relativistic", Intended, Ext, 1.6, "relativistic", Struct),
        ],
        graph: GraphVocab {
            inputs: &["speed"],
            output: "kinetic_energy",
            old_posit: "absolute_time",
            new_posit: "invariant_speed",
            constraint: "speed_bound",
            source_flags: flags(&["absolute_time"]),
            extension_flags: ext_flags(&["invariant_speed", "low_speed_limit"]),
        },
        stress: StressDistractors {
            wrong_formulas: &["kinetic_hyperbolic"],
            matched_extension: "kinetic_rational",
            randomized: Some(("relativistic_speed", &[1.0])),
        },
    }
}

fn radiation() -> FamilyDef {
    FamilyDef {
        family_id: RADIATION,
        title: "Rayleigh–Jeans → Planck spectral radiance",
        transition_type: TransitionType::ExtensionRequired,
        source_spec: "rayleigh_jeans",
        generating_spec: "planck",
        parameter_ranges: vec![iv(1.0, 1.0)],
        regimes: [vec![iv(4.0, 12.0)], vec![iv(1.5, 4.0)], vec![iv(0.12, 1.5)]],
        constraints: vec![
            constraint("finite_radiance", ConstraintKind::UpperBound { bound: 30.0 }, &[T]),
            constraint("radiance_positive", ConstraintKind::Sign { positive: true }, &[S, O, T]),
        ],
        limit_regime: vec![iv(8.0, 12.0)],
        limit_probes: 16,
        candidates: vec![
            cand("rayleigh_jeans", Base, Def, 0.0, "rayleigh_jeans", Src),
            cand("radiation_rescaled", DefRole, Def, 0.4, "radiation_rescaled", DefShape),
            cand("radiation_polynomial", Incorrect, Ext, 1.5, "radiation_polynomial", Cap),
            cand("planck", Intended, Ext, 1.6, "planck", Struct),
        ],
        graph: GraphVocab {
            inputs: &["wavelength"],
            output: "spectral_radiance",
            old_posit: "equipartition",
            new_posit: "energy_quantum",
            constraint: "finite_energy",
            source_flags: flags(&[]),
            extension_flags: ext_flags(&["quantization_scale"]),
        },
        stress: StressDistractors {
            wrong_formulas: &["radiation_cutoff"],
            matched_extension: "wien",
            randomized: None,
        },
    }
}

fn pendulum() -> FamilyDef {
    FamilyDef {
        family_id: PENDULUM,
        title: "Small-angle → finite-amplitude pendulum",
        transition_type: TransitionType::DeformationSufficient,
        source_spec: "small_angle",
        generating_spec: "finite_angle",
        parameter_ranges: vec![iv(0.0625, 0.0625)],
        regimes: [
            vec![iv(0.5, 2.0), iv(0.02, 0.15)],
            vec![iv(0.5, 2.0), iv(0.15, 1.0)],
            vec![iv(0.5, 2.0), iv(1.0, 2.0)],
        ],
        constraints: vec![
            constraint("period_positive", ConstraintKind::Sign { positive: true }, &[S, O, T]),
            constraint("period_grows_with_length", ConstraintKind::MonotonicIncreasing { axis: 0 }, &[S, O, T]),
        ],
        limit_regime: vec![iv(0.5, 2.0), iv(0.02, 0.05)],
        limit_probes: 16,
        candidates: vec![
            cand("small_angle", Base, Def, 0.0, "small_angle", Src),
            cand("finite_angle", Intended, Def, 0.5, "finite_angle", DefShape),
            cand("anharmonic_series", Incorrect, Ext, 1.5, "anharmonic_series", Cap),
        ],
        graph: GraphVocab {
            inputs: &["length", "amplitude"],
            output: "period",
            old_posit: "harmonic_restoring_force",
            new_posit: "amplitude_dependence",
            constraint: "period_bound",
            source_flags: flags(&[]),
            extension_flags: ext_flags(&[]),
        },
        stress: StressDistractors {
            wrong_formulas: &["pendulum_secant"],
            matched_extension: "anharmonic_series",
            randomized: None,
        },
    }
}

fn gas() -> FamilyDef {
    FamilyDef {
        family_id: GAS,
        title: "Ideal gas → virial equation of state",
        transition_type: TransitionType::DeformationSufficient,
        source_spec: "ideal_gas",
        generating_spec: "virial_quadratic",
        parameter_ranges: vec![iv(0.2, 0.4), iv(0.15, 0.3)],
        regimes: [vec![iv(0.01, 0.15)], vec![iv(0.15, 0.5)], vec![iv(0.5, 2.0)]],
        constraints: vec![
            constraint("pressure_positive", ConstraintKind::Sign { positive: true }, &[S, O, T]),
            constraint("mechanical_stability", ConstraintKind::MonotonicIncreasing { axis: 0 }, &[S, O, T]),
        ],
        limit_regime: vec![iv(0.01, 0.05)],
        limit_probes: 16,
        candidates: vec![
            cand("ideal_gas", Base, Def, 0.0, "ideal_gas", Src),
            cand("virial_linear", DefRole, Def, 0.4, "virial_linear", DefShape),
            cand("virial_quadratic", Intended, Def, 0.5, "virial_quadratic", DefShape),
            cand("virial_cluster", Incorrect, Ext, 1.5, "virial_cluster", Cap),
        ],
        graph: GraphVocab {
            inputs: &["density"],
            output: "pressure",
            old_posit: "non_interacting_molecules",
            new_posit: "molecular_interaction",
            constraint: "stability_bound",
            source_flags: flags(&[]),
            extension_flags: ext_flags(&[]),
        },
        stress: StressDistractors {
            wrong_formulas: &["van_der_waals"],
            matched_extension: "virial_cubic",
            randomized: None,
        },
    }
}

fn ohm() -> FamilyDef {
    FamilyDef {
        family_id: OHM,
        title: "Ohm's law → temperature-dependent resistance",
        transition_type: TransitionType::DeformationSufficient,
        source_spec: "ohm",
        generating_spec: "ohm_thermal",
        parameter_ranges: vec![iv(100.0, 100.0), iv(0.0035, 0.0045)],
        regimes: [
            vec![iv(0.1, 1.0), iv(283.0, 298.0)],
            vec![iv(0.1, 1.0), iv(298.0, 340.0)],
            vec![iv(0.1, 1.0), iv(340.0, 450.0)],
        ],
        constraints: vec![
            constraint("voltage_positive", ConstraintKind::Sign { positive: true }, &[S, O, T]),
            constraint("voltage_grows_with_current", ConstraintKind::MonotonicIncreasing { axis: 0 }, &[S, O, T]),
        ],
        limit_regime: vec![iv(0.1, 1.0), iv(290.0, 296.0)],
        limit_probes: 16,
        candidates: vec![
            cand("ohm", Base, Def, 0.0, "ohm", Src),
            cand("ohm_thermal", Intended, Def, 0.5, "ohm_thermal", DefShape),
            cand("ohm_thermal_cubic", Incorrect, Ext, 1.5, "ohm_thermal_cubic", Cap),
        ],
        graph: GraphVocab {
            inputs: &["current", "temperature"],
            output: "voltage",
            old_posit: "constant_resistance",
            new_posit: "thermal_resistivity",
            constraint: "dissipation_bound",
            source_flags: flags(&[]),
            extension_flags: ext_flags(&[]),
        },
        stress: StressDistractors {
            wrong_formulas: &["ohm_sqrt_temperature"],
            matched_extension: "ohm_nonlinear",
            randomized: None,
        },
    }
}

static FAMILIES: Lazy<Vec<FamilyDef>> =
    Lazy::new(|| vec![galilean(), newtonian(), radiation(), pendulum(), gas(), ohm()]);

/// Built-in families in benchmark order.
pub fn all_families() -> &'static [FamilyDef] {
    &FAMILIES
}

pub fn family(family_id: &str) -> Option<&'static FamilyDef> {
    FAMILIES.iter().find(|f| f.family_id == family_id)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::lookup;

    #[test]
    fn templates_resolve_and_follow_cost_bands() {
        for f in all_families() {
            assert_eq!(f.candidates.iter().filter(|c| c.role == Role::Intended).count(), 1);
            assert_eq!(f.candidates.iter().filter(|c| c.role == Role::Base).count(), 1);
            assert_eq!(f.intended().move_type, f.transition_type.required_move());
            for c in &f.candidates {
                lookup(f.family_id, c.spec_id).unwrap();
                match (c.role, c.move_type) {
                    (Role::Base, _) => assert_eq!(c.cost, 0.0),
                    (Role::Intended, MoveType::Extension) => assert!((1.5..=1.7).contains(&c.cost)),
                    (_, MoveType::Deformation) => assert!((0.4..=0.6).contains(&c.cost)),
                    _ => {}
                }
            }
            let g = lookup(f.family_id, f.generating_spec).unwrap();
            assert_eq!(g.parameter_count(), f.parameter_ranges.len());
            for s in f.stress.wrong_formulas {
                assert_eq!(lookup(f.family_id, s).unwrap().parameter_count(), 0);
            }
            lookup(f.family_id, f.stress.matched_extension).unwrap();
        }
    }

    #[test]
    fn regimes_ordered_and_limit_inside_source() {
        for f in all_families() {
            let [s, o, t] = &f.regimes;
            for (l, src) in f.limit_regime.iter().zip(s) {
                assert!(src.covers(l), "{}", f.family_id);
            }
            // the overlap shares an endpoint with both neighbours along the varying axis
            let touches = |a: &[Interval], b: &[Interval]| {
                a.iter().zip(b).any(|(x, y)| x.hi == y.lo || x.lo == y.hi)
            };
            assert!(touches(s, o) && touches(o, t), "{}", f.family_id);
        }
    }

    #[test]
    fn candidate_counts() {
        let counts: Vec<usize> = all_families().iter().map(|f| f.candidates.len()).collect();
        assert_eq!(counts, vec![5, 4, 4, 3, 4, 3]);
    }
}
