//! Per-family constellation templates.
//!
//! Every family shares one skeleton: input and output observables, a law
//! schema that uses them, the posit the source law assumes, a measurement
//! role and one context node per regime. Candidate shapes add to it.

use crate::card::{Commitments, ConstellationGraph, EdgeType as E, NodeType as N};

/// How a candidate changes the source constellation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Shape {
    /// K₀ itself.
    Source,
    /// Correction terms inside the source language.
    Deformation,
    /// New posit, admissibility constraint and limit relation back to K₀.
    StructuralExtension,
    /// Extra law capacity with no constraint or limit relation.
    CapacityExtension,
}

/// Names and commitments used to instantiate a family's graphs.
#[derive(Clone, Debug)]
pub struct GraphVocab {
    pub inputs: &'static [&'static str],
    pub output: &'static str,
    pub old_posit: &'static str,
    pub new_posit: &'static str,
    pub constraint: &'static str,
    pub source_flags: Commitments,
    pub extension_flags: Commitments,
}

const CONTEXTS: [&str; 3] = ["ctx_source", "ctx_overlap", "ctx_target"];

pub fn constellation(v: &GraphVocab, shape: Shape) -> ConstellationGraph {
    let mut g = ConstellationGraph::default();
    for i in v.inputs {
        g.node(i, N::Observable);
    }
    g.node(v.output, N::Observable)
        .node("law", N::LawSchema)
        .node(v.old_posit, N::Posit)
        .node("measurement", N::MeasurementRole);
    for c in CONTEXTS {
        g.node(c, N::Context);
    }
    for i in v.inputs {
        g.edge("law", E::Uses, i);
    }
    g.edge("law", E::Uses, v.output)
        .edge("law", E::Assumes, v.old_posit)
        .edge("measurement", E::Measures, v.output)
        .edge("law", E::ValidIn, "ctx_source");
    g.commitments = v.source_flags;

    match shape {
        Shape::Source => {}
        Shape::Deformation => {
            g.node("correction", N::TransformationRule)
                .edge("correction", E::Preserves, v.old_posit)
                .edge("correction", E::Preserves, "law")
                .edge("law", E::ValidIn, "ctx_overlap")
                .edge("law", E::ValidIn, "ctx_target");
        }
        Shape::StructuralExtension => {
            g.node("extended_law", N::LawSchema)
                .node(v.new_posit, N::Posit)
                .node(v.constraint, N::Constraint)
                .node("limit", N::LimitRelation)
                .node("transformation", N::TransformationRule);
            for i in v.inputs {
                g.edge("extended_law", E::Uses, i);
            }
            g.edge("extended_law", E::Uses, v.output)
                .edge("extended_law", E::Extends, "law")
                .edge("extended_law", E::Introduces, v.new_posit)
                .edge("extended_law", E::Assumes, v.new_posit)
                .edge("extended_law", E::Conflicts, v.old_posit)
                .edge("transformation", E::Removes, v.old_posit)
                .edge("transformation", E::Introduces, v.constraint)
                .edge("extended_law", E::Constrains, v.constraint)
                .edge("limit", E::ReducesTo, "law")
                .edge("limit", E::ValidIn, "ctx_source");
            for c in CONTEXTS {
                g.edge("extended_law", E::ValidIn, c);
            }
            g.commitments = v.extension_flags;
        }
        Shape::CapacityExtension => {
            g.node("extended_law", N::LawSchema)
                .node("extra_term", N::Posit);
            for i in v.inputs {
                g.edge("extended_law", E::Uses, i);
            }
            g.edge("extended_law", E::Uses, v.output)
                .edge("extended_law", E::Extends, "law")
                .edge("extended_law", E::Introduces, "extra_term")
                .edge("extended_law", E::Assumes, v.old_posit)
                .edge("extended_law", E::ValidIn, "ctx_target");
        }
    }
    g
}

/// Every graph the built-in families can produce; defines the typed-triple
/// vocabulary of the feature map.
pub fn all_template_graphs() -> Vec<ConstellationGraph> {
    let shapes = [
        Shape::Source,
        Shape::Deformation,
        Shape::StructuralExtension,
        Shape::CapacityExtension,
    ];
    super::families::all_families()
        .iter()
        .flat_map(|f| shapes.iter().map(move |s| constellation(&f.graph, *s)))
        .collect()
}
