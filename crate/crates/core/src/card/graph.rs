//! Typed constellation graphs and the fixed-length feature map used by the
//! kernel probe.
//!
//! Feature layout (all counts are `f64`):
//!
//! | block | length | order |
//! |-------|--------|-------|
//! | typed node counts | 8 | [`NodeType::ALL`] |
//! | typed edge counts | 11 | [`EdgeType::ALL`] |
//! | typed triple counts | [`triple_vocabulary`]`.len()` | sorted `(src type, edge type, dst type)` |
//! | commitment flags | 8 | [`Commitments::FLAG_NAMES`] |
//!
//! The triple vocabulary is the sorted set of triples that occur in the
//! built-in family graphs. Triples outside it are not counted.

use std::collections::{BTreeSet, HashMap};

use once_cell::sync::Lazy;
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NodeType {
    Observable,
    Posit,
    LawSchema,
    Constraint,
    MeasurementRole,
    LimitRelation,
    TransformationRule,
    Context,
}

impl NodeType {
    pub const ALL: [NodeType; 8] = [
        NodeType::Observable,
        NodeType::Posit,
        NodeType::LawSchema,
        NodeType::Constraint,
        NodeType::MeasurementRole,
        NodeType::LimitRelation,
        NodeType::TransformationRule,
        NodeType::Context,
    ];

    fn index(self) -> usize {
        self as usize
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EdgeType {
    Uses,
    Assumes,
    Constrains,
    Preserves,
    ValidIn,
    ReducesTo,
    Extends,
    Conflicts,
    Measures,
    Introduces,
    Removes,
}

impl EdgeType {
    pub const ALL: [EdgeType; 11] = [
        EdgeType::Uses,
        EdgeType::Assumes,
        EdgeType::Constrains,
        EdgeType::Preserves,
        EdgeType::ValidIn,
        EdgeType::ReducesTo,
        EdgeType::Extends,
        EdgeType::Conflicts,
        EdgeType::Measures,
        EdgeType::Introduces,
        EdgeType::Removes,
    ];

    fn index(self) -> usize {
        self as usize
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Node {
    pub id: String,
    pub node_type: NodeType,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Edge {
    pub src: String,
    pub edge_type: EdgeType,
    pub dst: String,
}

/// Representational commitments carried by a constellation.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Commitments {
    pub invariant_speed: bool,
    pub low_speed_limit: bool,
    pub quantization_scale: bool,
    pub absolute_time: bool,
    pub preferred_frame: bool,
    pub limit_relation: bool,
    pub removes_old_posit: bool,
    pub introduces_constraint: bool,
}

impl Commitments {
    pub const FLAG_NAMES: [&'static str; 8] = [
        "invariant_speed",
        "low_speed_limit",
        "quantization_scale",
        "absolute_time",
        "preferred_frame",
        "limit_relation",
        "removes_old_posit",
        "introduces_constraint",
    ];

    pub fn flags(&self) -> [bool; 8] {
        [
            self.invariant_speed,
            self.low_speed_limit,
            self.quantization_scale,
            self.absolute_time,
            self.preferred_frame,
            self.limit_relation,
            self.removes_old_posit,
            self.introduces_constraint,
        ]
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct ConstellationGraph {
    pub nodes: Vec<Node>,
    pub edges: Vec<Edge>,
    pub commitments: Commitments,
}

pub type Triple = (NodeType, EdgeType, NodeType);

impl ConstellationGraph {
    pub fn node(&mut self, id: &str, node_type: NodeType) -> &mut Self {
        self.nodes.push(Node {
            id: id.to_string(),
            node_type,
        });
        self
    }

    pub fn edge(&mut self, src: &str, edge_type: EdgeType, dst: &str) -> &mut Self {
        self.edges.push(Edge {
            src: src.to_string(),
            edge_type,
            dst: dst.to_string(),
        });
        self
    }

    pub fn has_node(&self, id: &str) -> bool {
        self.nodes.iter().any(|n| n.id == id)
    }

    pub fn remove_node(&mut self, id: &str) {
        self.nodes.retain(|n| n.id != id);
        self.edges.retain(|e| e.src != id && e.dst != id);
    }

    /// Structural problems: duplicate ids, dangling edges, a limit-relation
    /// commitment without a limit-relation node.
    pub fn problems(&self) -> Vec<String> {
        let mut out = Vec::new();
        let mut seen = BTreeSet::new();
        for n in &self.nodes {
            if !seen.insert(n.id.as_str()) {
                out.push(format!("duplicate node id `{}`", n.id));
            }
        }
        for e in &self.edges {
            for end in [&e.src, &e.dst] {
                if !seen.contains(end.as_str()) {
                    out.push(format!("edge endpoint `{end}` is not a node"));
                }
            }
        }
        if self.commitments.limit_relation
            && !self
                .nodes
                .iter()
                .any(|n| n.node_type == NodeType::LimitRelation)
        {
            out.push("limit_relation commitment without a limit_relation node".to_string());
        }
        out
    }

    /// Typed triples `(type(src), edge type, type(dst))`, one per edge whose
    /// endpoints resolve.
    pub fn triples(&self) -> Vec<Triple> {
        let types: HashMap<&str, NodeType> = self
            .nodes
            .iter()
            .map(|n| (n.id.as_str(), n.node_type))
            .collect();
        self.edges
            .iter()
            .filter_map(|e| {
                let s = types.get(e.src.as_str())?;
                let d = types.get(e.dst.as_str())?;
                Some((*s, e.edge_type, *d))
            })
            .collect()
    }
}

static TRIPLE_VOCABULARY: Lazy<Vec<Triple>> = Lazy::new(|| {
    let set: BTreeSet<Triple> = crate::benchmark::graphs::all_template_graphs()
        .iter()
        .flat_map(|g| g.triples())
        .collect();
    set.into_iter().collect()
});

/// Fixed enumeration of typed triples counted by [`graph_features`].
pub fn triple_vocabulary() -> &'static [Triple] {
    &TRIPLE_VOCABULARY
}

pub fn feature_len() -> usize {
    NodeType::ALL.len() + EdgeType::ALL.len() + triple_vocabulary().len() + 8
}

/// Offsets of the four blocks inside the feature vector.
pub fn feature_offsets() -> [usize; 4] {
    let n3 = NodeType::ALL.len() + EdgeType::ALL.len();
    [0, NodeType::ALL.len(), n3, n3 + triple_vocabulary().len()]
}

/// The typed-count feature vector of a constellation graph.
pub fn graph_features(g: &ConstellationGraph) -> Vec<f64> {
    let vocab = triple_vocabulary();
    let [_, e_off, t_off, q_off] = feature_offsets();
    let mut psi = vec![0.0; feature_len()];
    for n in &g.nodes {
        psi[n.node_type.index()] += 1.0;
    }
    for e in &g.edges {
        psi[e_off + e.edge_type.index()] += 1.0;
    }
    for t in g.triples() {
        if let Ok(i) = vocab.binary_search(&t) {
            psi[t_off + i] += 1.0;
        }
    }
    for (i, f) in g.commitments.flags().iter().enumerate() {
        psi[q_off + i] = if *f { 1.0 } else { 0.0 };
    }
    psi
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_graph_is_all_zero() {
        let psi = graph_features(&ConstellationGraph::default());
        assert_eq!(psi.len(), feature_len());
        assert!(psi.iter().all(|v| *v == 0.0));
    }

    #[test]
    fn single_constrains_edge() {
        let mut g = ConstellationGraph::default();
        g.node("law", NodeType::LawSchema)
            .node("bound", NodeType::Constraint)
            .edge("law", EdgeType::Constrains, "bound");
        let psi = graph_features(&g);
        let [_, e_off, t_off, q_off] = feature_offsets();
        assert_eq!(psi[NodeType::LawSchema.index()], 1.0);
        assert_eq!(psi[NodeType::Constraint.index()], 1.0);
        assert_eq!(psi[..e_off].iter().sum::<f64>(), 2.0);
        assert_eq!(psi[e_off + EdgeType::Constrains.index()], 1.0);
        assert_eq!(psi[e_off..t_off].iter().sum::<f64>(), 1.0);
        let t = (NodeType::LawSchema, EdgeType::Constrains, NodeType::Constraint);
        let i = triple_vocabulary().binary_search(&t).expect("triple in vocabulary");
        assert_eq!(psi[t_off + i], 1.0);
        assert_eq!(psi[t_off..q_off].iter().sum::<f64>(), 1.0);
    }

    #[test]
    fn dangling_edge_and_duplicate_id_reported() {
        let mut g = ConstellationGraph::default();
        g.node("a", NodeType::Observable)
            .node("a", NodeType::Posit)
            .edge("a", EdgeType::Uses, "b");
        g.commitments.limit_relation = true;
        let p = g.problems();
        assert_eq!(p.len(), 3, "{p:?}");
    }
}
