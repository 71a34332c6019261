//! Structural validation of transition cards.

use std::collections::BTreeSet;

use serde::Serialize;

use super::{ConstraintKind, Context, Interval, MoveType, Role, TransitionCard, TransitionType, SCHEMA_VERSION};
use crate::error::{Error, Result};
use crate::model::{family_arity, ResolvedModel};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ViolationKind {
    SchemaVersion,
    UnknownFamily,
    Arity,
    NonFinite,
    ContextLabel,
    Regime,
    EmptyDataset,
    Graph,
    DuplicateCandidate,
    UnknownSpec,
    NegativeCost,
    BaseMove,
    MultipleIntended,
    MissingIntended,
    MultipleBase,
    MissingBase,
    IntendedReference,
    TransitionType,
    ConstraintParameters,
    Limit,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Violation {
    pub kind: ViolationKind,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ValidationReport {
    pub card_id: String,
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn count(&self, kind: ViolationKind) -> usize {
        self.violations.iter().filter(|v| v.kind == kind).count()
    }

    pub fn into_result(self) -> Result<()> {
        if self.is_valid() {
            Ok(())
        } else {
            Err(Error::InvalidCard {
                card_id: self.card_id,
                violations: self.violations.into_iter().map(|v| v.message).collect(),
            })
        }
    }
}

struct Collector(Vec<Violation>);

impl Collector {
    fn push(&mut self, kind: ViolationKind, message: String) {
        self.0.push(Violation { kind, message });
    }
}

fn regime_ok(regime: &[Interval], arity: usize) -> bool {
    regime.len() == arity && regime.iter().all(|i| i.lo.is_finite() && i.hi.is_finite() && i.lo <= i.hi)
}

/// Checks every card invariant. The report is empty iff the card is valid.
pub fn validate_card(card: &TransitionCard) -> ValidationReport {
    use ViolationKind as K;
    let mut out = Collector(Vec::new());

    if card.schema_version != SCHEMA_VERSION {
        out.push(K::SchemaVersion, format!("schema_version {} unsupported", card.schema_version));
    }
    let arity = match family_arity(&card.family_id) {
        Some(a) => a,
        None => {
            out.push(K::UnknownFamily, format!("unknown family `{}`", card.family_id));
            // fall back to the arity of the first record so the rest still runs
            card.datasets.source.records.first().map_or(1, |r| r.x.len())
        }
    };

    for declared_context in Context::ALL {
        let ds = card.datasets.get(declared_context);
        let name = ds.context.as_str();
        if ds.context != declared_context {
            out.push(K::ContextLabel, format!("{} slot holds a `{name}` dataset", declared_context.as_str()));
        }
        let no_diagnostics = declared_context == Context::Validation && ds.regime.is_empty();
        if ds.records.is_empty() && !no_diagnostics {
            out.push(K::EmptyDataset, format!("{name} dataset is empty"));
        }
        if !no_diagnostics && !regime_ok(&ds.regime, arity) {
            out.push(K::Regime, format!("{name} regime must be {arity} ordered finite intervals"));
        }
        for (i, r) in ds.records.iter().enumerate() {
            if r.context != declared_context {
                out.push(K::ContextLabel, format!("{name} record {i} labelled `{}`", r.context.as_str()));
            }
            if r.x.len() != arity {
                out.push(K::Arity, format!("{name} record {i} has {} inputs, family arity is {arity}", r.x.len()));
                continue;
            }
            if !r.y.is_finite() || r.x.iter().any(|v| !v.is_finite()) {
                out.push(K::NonFinite, format!("{name} record {i} is not finite"));
                continue;
            }
            if ds.regime.len() == arity && !r.x.iter().zip(&ds.regime).all(|(v, iv)| iv.contains(*v)) {
                out.push(K::Regime, format!("{name} record {i} lies outside the {name} regime"));
            }
        }
    }

    for p in card.source_constellation.graph.problems() {
        out.push(K::Graph, format!("source graph: {p}"));
    }
    if let Err(e) = ResolvedModel::resolve(&card.source_constellation.model) {
        out.push(K::UnknownSpec, format!("source model: {e}"));
    }

    let mut ids = BTreeSet::new();
    let (mut intended, mut base) = (0, 0);
    for c in &card.candidates {
        if !ids.insert(c.id.as_str()) {
            out.push(K::DuplicateCandidate, format!("duplicate candidate id `{}`", c.id));
        }
        match ResolvedModel::resolve(&c.model) {
            Ok(m) if m.spec.arity != arity => {
                out.push(K::Arity, format!("candidate `{}` spec arity {} ≠ {arity}", c.id, m.spec.arity))
            }
            Ok(_) => {}
            Err(e) => out.push(K::UnknownSpec, format!("candidate `{}`: {e}", c.id)),
        }
        if !(c.cost >= 0.0 && c.cost.is_finite()) {
            out.push(K::NegativeCost, format!("candidate `{}` has cost {}", c.id, c.cost));
        }
        for p in c.graph.problems() {
            out.push(K::Graph, format!("candidate `{}` graph: {p}", c.id));
        }
        match c.role {
            Role::Intended => intended += 1,
            Role::Base => {
                base += 1;
                if c.move_type != MoveType::Deformation || c.cost != 0.0 {
                    out.push(K::BaseMove, format!("base candidate `{}` must be a zero-cost deformation", c.id));
                }
            }
            _ => {}
        }
    }
    match intended {
        0 => out.push(K::MissingIntended, "no intended candidate".into()),
        1 => {}
        n => out.push(K::MultipleIntended, format!("multiple intended candidates ({n})")),
    }
    match base {
        0 => out.push(K::MissingBase, "no base candidate".into()),
        1 => {}
        n => out.push(K::MultipleBase, format!("multiple base candidates ({n})")),
    }
    match card.intended() {
        None => out.push(
            K::IntendedReference,
            format!("intended_candidate_id `{}` does not name a candidate", card.evaluation.intended_candidate_id),
        ),
        Some(c) => {
            if c.role != Role::Intended {
                out.push(K::IntendedReference, format!("`{}` is labelled intended but has role {}", c.id, c.role.as_str()));
            }
            let want = card.evaluation.transition_type.required_move();
            if c.move_type != want {
                let tt: TransitionType = card.evaluation.transition_type;
                out.push(
                    K::TransitionType,
                    format!("{} card but intended move is a {}", tt.as_str(), c.move_type.as_str()),
                );
            }
        }
    }

    for cs in &card.constraints {
        if cs.applies_in.is_empty() {
            out.push(K::ConstraintParameters, format!("constraint `{}` applies nowhere", cs.id));
        }
        let complete = match cs.kind {
            ConstraintKind::UpperBound { bound } | ConstraintKind::LowerBound { bound } => bound.is_finite(),
            ConstraintKind::MonotonicIncreasing { axis } | ConstraintKind::MonotonicDecreasing { axis } => axis < arity,
            ConstraintKind::Finiteness | ConstraintKind::Sign { .. } => true,
        };
        if !complete {
            out.push(K::ConstraintParameters, format!("constraint `{}` has incomplete parameters", cs.id));
        }
    }

    let limit = &card.limit;
    if limit.n_probe < 2 {
        out.push(K::Limit, format!("limit n_probe {} < 2", limit.n_probe));
    }
    if !regime_ok(&limit.limit_regime, arity) {
        out.push(K::Limit, format!("limit regime must be {arity} ordered finite intervals"));
    } else if card.datasets.source.regime.len() == arity
        && !card.datasets.source.regime.iter().zip(&limit.limit_regime).all(|(s, l)| s.covers(l))
    {
        out.push(K::Limit, "limit regime is not inside the source regime".into());
    }
    if let Err(e) = ResolvedModel::resolve(&limit.reference) {
        out.push(K::UnknownSpec, format!("limit reference: {e}"));
    }

    ValidationReport {
        card_id: card.card_id.clone(),
        violations: out.0,
    }
}
