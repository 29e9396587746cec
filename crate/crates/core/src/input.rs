//! The JSON model format: a vertex list, an edge list, generator maps,
//! and the cut-set family. Parsing is strict — unknown fields, unknown
//! vertices, and non-bijective generator maps are rejected with the
//! offending path named.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{ModelError, Result};
use crate::graph::{SpaceGraph, VertexSet};
use crate::group::{Group, Perm};

#[derive(Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct ModelDoc {
    vertices: Vec<String>,
    edges: Vec<(String, String)>,
    #[serde(default)]
    generators: Vec<BTreeMap<String, String>>,
    #[serde(default)]
    cut_sets: Vec<Vec<String>>,
}

/// A parsed model: the graph, the generating permutations, and the
/// cut-set family. Parsing checks structure only; whether the generators
/// are automorphisms and the cut sets actually cut is validation.
#[derive(Clone, Debug)]
pub struct Model {
    pub graph: SpaceGraph,
    pub generators: Vec<Perm>,
    pub cut_sets: Vec<VertexSet>,
}

impl Model {
    pub fn group(&self, cap: usize) -> Result<Group> {
        Group::generate(self.graph.vertex_count(), &self.generators, cap)
    }
}

pub fn parse_model(text: &str) -> Result<Model> {
    let doc: ModelDoc = serde_json::from_str(text).map_err(|e| ModelError::Input(e.to_string()))?;
    let graph = SpaceGraph::new(doc.vertices, &doc.edges)?;
    let need = |name: &str, path: String| -> Result<u32> {
        graph
            .index_of(name)
            .ok_or_else(|| ModelError::Input(format!("{path}: \"{name}\" is not a vertex")))
    };

    let mut generators = Vec::with_capacity(doc.generators.len());
    for (gi, map) in doc.generators.iter().enumerate() {
        let mut images = vec![None; graph.vertex_count()];
        for (from, to) in map {
            let f = need(from, format!("generators[{gi}]"))?;
            let t = need(to, format!("generators[{gi}].{from}"))?;
            images[f as usize] = Some(t);
        }
        let mut perm = Vec::with_capacity(graph.vertex_count());
        for (v, img) in images.into_iter().enumerate() {
            match img {
                Some(t) => perm.push(t),
                None => {
                    return Err(ModelError::Input(format!(
                        "generators[{gi}]: no image for vertex \"{}\"",
                        graph.name(v as u32)
                    )))
                }
            }
        }
        let perm = Perm(perm);
        perm.validate(graph.vertex_count()).map_err(|_| {
            ModelError::Input(format!("generators[{gi}]: the map is not a bijection"))
        })?;
        generators.push(perm);
    }

    let mut cut_sets = Vec::with_capacity(doc.cut_sets.len());
    for (ci, names) in doc.cut_sets.iter().enumerate() {
        if names.is_empty() {
            return Err(ModelError::Input(format!("cut_sets[{ci}] is empty")));
        }
        let mut members = Vec::with_capacity(names.len());
        for name in names {
            members.push(need(name, format!("cut_sets[{ci}]"))?);
        }
        let set = VertexSet::new(members);
        if set.len() != names.len() {
            return Err(ModelError::Input(format!(
                "cut_sets[{ci}] repeats a vertex"
            )));
        }
        if cut_sets.contains(&set) {
            return Err(ModelError::Input(format!(
                "cut_sets[{ci}] duplicates an earlier cut set"
            )));
        }
        cut_sets.push(set);
    }

    Ok(Model {
        graph,
        generators,
        cut_sets,
    })
}

/// Serialize a model back to the input format, byte-stable: vertices in
/// graph order, edges and cut sets sorted.
pub fn render_model(graph: &SpaceGraph, generators: &[Perm], cut_sets: &[VertexSet]) -> String {
    let name = |v: u32| graph.name(v).to_string();
    let doc = ModelDoc {
        vertices: graph.names().to_vec(),
        edges: graph
            .edges()
            .iter()
            .map(|&(u, v)| (name(u), name(v)))
            .collect(),
        generators: generators
            .iter()
            .map(|p| {
                (0..graph.vertex_count() as u32)
                    .map(|v| (name(v), name(p.apply(v))))
                    .collect()
            })
            .collect(),
        cut_sets: {
            let mut sets: Vec<Vec<String>> = cut_sets
                .iter()
                .map(|c| c.iter().map(name).collect())
                .collect();
            sets.sort();
            sets
        },
    };
    let mut out = serde_json::to_string_pretty(&doc).expect("model serialization is infallible");
    out.push('\n');
    out
}
