//! JSON wire formats.
//!
//! Every big integer travels as a decimal string so that multiplicities
//! and offsets at the 10^100 scale survive any JSON consumer. Parsing an
//! emitted document and serializing it again reproduces the bytes.

use serde::{Deserialize, Serialize};

use lexspectra_core::eigen::MatrixKind;
use lexspectra_core::graph::GraphSpec;
use lexspectra_core::model::{BaseRef, SpectrumDescriptor};

/// Graph file format: `{"order": n, "edges": [[u, v], ...]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GraphJson {
    pub order: usize,
    pub edges: Vec<(usize, usize)>,
}

impl From<GraphJson> for GraphSpec {
    fn from(g: GraphJson) -> Self {
        GraphSpec::EdgeList {
            order: g.order,
            edges: g.edges,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(rename_all = "camelCase")]
pub struct EntryJson {
    pub scale: String,
    pub base_graph: Option<String>,
    pub base_index: Option<usize>,
    pub base_value: Option<String>,
    pub offset: String,
    pub multiplicity: String,
    pub layer: String,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(rename_all = "camelCase")]
pub struct SummarizedLayerJson {
    pub layer: String,
    pub scale: String,
    pub base_graph: Option<String>,
    pub base_index: Option<usize>,
    pub base_value: Option<String>,
    pub base_multiplicity: String,
    pub count: String,
    pub sum: String,
    pub min: String,
    pub max: String,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(rename_all = "camelCase")]
pub struct DescriptorJson {
    pub kind: String,
    pub order: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub regularity: Option<String>,
    pub entries: Vec<EntryJson>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub summarized_layers: Vec<SummarizedLayerJson>,
}

fn base_fields(base: Option<&BaseRef>) -> (Option<String>, Option<usize>, Option<String>) {
    match base {
        Some(b) => (
            Some(b.graph.to_string()),
            Some(b.index),
            Some(b.value.to_string()),
        ),
        None => (None, None, None),
    }
}

pub fn descriptor_json(d: &SpectrumDescriptor, regularity: Option<String>) -> DescriptorJson {
    let kind = match d.kind() {
        MatrixKind::Adjacency => "adjacency",
        MatrixKind::Laplacian => "laplacian",
        MatrixKind::SignlessLaplacian => "signless-laplacian",
    };
    let entries = d
        .entries()
        .iter()
        .map(|e| {
            let (base_graph, base_index, base_value) = base_fields(e.value.base());
            EntryJson {
                scale: e.value.scale().to_string(),
                base_graph,
                base_index,
                base_value,
                offset: e.value.offset().to_string(),
                multiplicity: e.multiplicity.to_string(),
                layer: e.layer.to_string(),
            }
        })
        .collect();
    let summarized_layers = d
        .summarized()
        .iter()
        .map(|s| {
            let (base_graph, base_index, base_value) = base_fields(s.base.as_ref());
            SummarizedLayerJson {
                layer: s.layer.to_string(),
                scale: s.scale.to_string(),
                base_graph,
                base_index,
                base_value,
                base_multiplicity: s.base_multiplicity.to_string(),
                count: s.summary.count.to_string(),
                sum: s.summary.sum.to_string(),
                min: s.summary.min.to_string(),
                max: s.summary.max.to_string(),
            }
        })
        .collect();
    DescriptorJson {
        kind: kind.to_string(),
        order: d.order().to_string(),
        regularity,
        entries,
        summarized_layers,
    }
}

/// Invariant record wire format; missing bounds serialize as `null`.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(rename_all = "camelCase")]
pub struct InvariantsJson {
    pub base: String,
    pub k: u32,
    pub order: String,
    pub min_degree: String,
    pub max_degree: String,
    pub diameter: String,
    pub independence_number: String,
    pub clique_number: String,
    pub vertex_connectivity: String,
    pub connectivity_lower_bound: Option<String>,
    pub connectivity_upper_bound: Option<String>,
    pub signless_index_lower: String,
    pub signless_index_upper: String,
    pub signless_least_strict_upper: String,
    pub hoffman_chromatic_lower_bound: Option<String>,
    pub hoffman_ceiling: Option<String>,
    pub stability_number: String,
    pub stability_upper_bound: String,
}
