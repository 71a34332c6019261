//! Transition cards: the on-disk benchmark unit.
//!
//! A card bundles a source constellation, four context datasets, a menu of
//! candidate moves, admissibility constraints and a limit probe. The
//! `evaluation` section holds labels that only scoring code may read; ranking
//! works on a [`CardView`] that has them stripped.

pub mod graph;
pub mod io;
pub mod validate;

use serde::{Deserialize, Serialize};

pub use graph::{
    graph_features, Commitments, ConstellationGraph, Edge, EdgeType, Node, NodeType,
};
pub use io::{BenchmarkManifest, ManifestEntry};
pub use validate::{validate_card, ValidationReport, Violation, ViolationKind};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Context {
    Source,
    Overlap,
    Target,
    Validation,
}

impl Context {
    pub const ALL: [Context; 4] = [
        Context::Source,
        Context::Overlap,
        Context::Target,
        Context::Validation,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Context::Source => "source",
            Context::Overlap => "overlap",
            Context::Target => "target",
            Context::Validation => "validation",
        }
    }
}

/// Closed interval `[lo, hi]`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Self {
        Self { lo, hi }
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn covers(&self, other: &Interval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ObservationRecord {
    pub x: Vec<f64>,
    pub y: f64,
    pub context: Context,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ContextDataset {
    pub context: Context,
    pub regime: Vec<Interval>,
    pub records: Vec<ObservationRecord>,
}

impl ContextDataset {
    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Datasets {
    pub source: ContextDataset,
    pub overlap: ContextDataset,
    pub target: ContextDataset,
    pub validation: ContextDataset,
}

impl Datasets {
    pub fn get(&self, c: Context) -> &ContextDataset {
        match c {
            Context::Source => &self.source,
            Context::Overlap => &self.overlap,
            Context::Target => &self.target,
            Context::Validation => &self.validation,
        }
    }

    pub fn get_mut(&mut self, c: Context) -> &mut ContextDataset {
        match c {
            Context::Source => &mut self.source,
            Context::Overlap => &mut self.overlap,
            Context::Target => &mut self.target,
            Context::Validation => &mut self.validation,
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = &ContextDataset> {
        [&self.source, &self.overlap, &self.target, &self.validation].into_iter()
    }

    /// Records of D_s ∪ D_o ∪ D_t, the global fitting set.
    pub fn global_records(&self) -> Vec<ObservationRecord> {
        [&self.source, &self.overlap, &self.target]
            .iter()
            .flat_map(|d| d.records.iter().cloned())
            .collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Role {
    Base,
    Deformation,
    Incorrect,
    Intended,
}

impl Role {
    pub fn as_str(self) -> &'static str {
        match self {
            Role::Base => "base",
            Role::Deformation => "deformation",
            Role::Incorrect => "incorrect",
            Role::Intended => "intended",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MoveType {
    Deformation,
    Extension,
}

impl MoveType {
    pub fn as_str(self) -> &'static str {
        match self {
            MoveType::Deformation => "deformation",
            MoveType::Extension => "extension",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TransitionType {
    DeformationSufficient,
    ExtensionRequired,
}

impl TransitionType {
    pub fn required_move(self) -> MoveType {
        match self {
            TransitionType::DeformationSufficient => MoveType::Deformation,
            TransitionType::ExtensionRequired => MoveType::Extension,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            TransitionType::DeformationSufficient => "deformation_sufficient",
            TransitionType::ExtensionRequired => "extension_required",
        }
    }
}

/// Reference into the compiled model registry.
///
/// `frozen_parameters`, when present, pins every free parameter so the
/// candidate has nothing left to fit.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModelRef {
    pub family_id: String,
    pub spec_id: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub frozen_parameters: Option<Vec<f64>>,
}

impl ModelRef {
    pub fn new(family_id: &str, spec_id: &str) -> Self {
        Self {
            family_id: family_id.to_string(),
            spec_id: spec_id.to_string(),
            frozen_parameters: None,
        }
    }

    pub fn frozen(mut self, params: Vec<f64>) -> Self {
        self.frozen_parameters = Some(params);
        self
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CandidateMove {
    pub id: String,
    pub role: Role,
    pub move_type: MoveType,
    pub cost: f64,
    pub model: ModelRef,
    pub graph: ConstellationGraph,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum ConstraintKind {
    UpperBound { bound: f64 },
    LowerBound { bound: f64 },
    MonotonicIncreasing { axis: usize },
    MonotonicDecreasing { axis: usize },
    Finiteness,
    Sign { positive: bool },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConstraintSpec {
    pub id: String,
    pub kind: ConstraintKind,
    pub applies_in: Vec<Context>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LimitSpec {
    pub limit_regime: Vec<Interval>,
    pub n_probe: usize,
    pub reference: ModelRef,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SourceConstellation {
    pub model: ModelRef,
    pub graph: ConstellationGraph,
}

/// Evaluation-only section. Ranking never reads it.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EvaluationLabels {
    pub transition_type: TransitionType,
    pub intended_candidate_id: String,
    /// Parameters of the generating law (the intended spec) used to draw the
    /// observations; consumed by the stress protocol.
    pub generating_parameters: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TransitionCard {
    pub schema_version: u32,
    pub card_id: String,
    pub family_id: String,
    pub variant: usize,
    pub seed: u64,
    pub source_constellation: SourceConstellation,
    pub datasets: Datasets,
    pub candidates: Vec<CandidateMove>,
    pub constraints: Vec<ConstraintSpec>,
    pub limit: LimitSpec,
    pub evaluation: EvaluationLabels,
}

impl TransitionCard {
    pub fn candidate(&self, id: &str) -> Option<&CandidateMove> {
        self.candidates.iter().find(|c| c.id == id)
    }

    pub fn intended(&self) -> Option<&CandidateMove> {
        self.candidate(&self.evaluation.intended_candidate_id)
    }

    pub fn base(&self) -> Option<&CandidateMove> {
        self.candidates.iter().find(|c| c.role == Role::Base)
    }

    /// Label-stripped view consumed by ranking.
    pub fn view(&self) -> CardView<'_> {
        CardView {
            card_id: &self.card_id,
            seed: self.seed,
            datasets: &self.datasets,
            constraints: &self.constraints,
            limit: &self.limit,
            candidates: self
                .candidates
                .iter()
                .map(|c| CandidateView {
                    id: &c.id,
                    move_type: c.move_type,
                    cost: c.cost,
                    model: &c.model,
                    graph: &c.graph,
                })
                .collect(),
        }
    }
}

/// A candidate as seen by ranking: no role.
#[derive(Clone, Copy, Debug)]
pub struct CandidateView<'a> {
    pub id: &'a str,
    pub move_type: MoveType,
    pub cost: f64,
    pub model: &'a ModelRef,
    pub graph: &'a ConstellationGraph,
}

/// A card without its evaluation labels or candidate roles.
#[derive(Clone, Debug)]
pub struct CardView<'a> {
    pub card_id: &'a str,
    pub seed: u64,
    pub datasets: &'a Datasets,
    pub constraints: &'a [ConstraintSpec],
    pub limit: &'a LimitSpec,
    pub candidates: Vec<CandidateView<'a>>,
}
