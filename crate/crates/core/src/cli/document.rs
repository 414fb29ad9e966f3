use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::labelled::{generate_family, EdgeSpec, LabelledGraph, LabelledSpace, SetFamily, VertexSet};

/// The JSON input format.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphDocument {
    pub vertices: Vec<String>,
    pub edges: Vec<EdgeRecord>,
    pub family: FamilySpec,
    #[serde(default)]
    pub options: Options,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeRecord {
    pub id: String,
    pub src: String,
    pub rng: String,
    pub label: String,
}

/// `"power_set"`, a generated family, or an explicit member list.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FamilySpec {
    Named(String),
    Generated(GeneratedFamily),
    Explicit(ExplicitFamily),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratedFamily {
    pub generators: Vec<Vec<String>>,
    #[serde(default = "yes")]
    pub close_complements: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExplicitFamily {
    pub members: Vec<Vec<String>>,
}

fn yes() -> bool {
    true
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Options {
    pub word_bound: usize,
    pub lasso_bound: usize,
    pub samples: usize,
    pub seed: u64,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            word_bound: 3,
            lasso_bound: 6,
            samples: 200,
            seed: 0,
        }
    }
}

impl GraphDocument {
    pub fn parse(text: &str) -> Result<Self, Error> {
        serde_json::from_str(text).map_err(|e| Error::Document(e.to_string()))
    }

    pub fn graph(&self) -> Result<LabelledGraph, Error> {
        let edges: Vec<EdgeSpec> = self
            .edges
            .iter()
            .map(|e| EdgeSpec {
                id: e.id.clone(),
                src: e.src.clone(),
                rng: e.rng.clone(),
                label: e.label.clone(),
            })
            .collect();
        LabelledGraph::new(&self.vertices, &edges)
    }

    pub fn space(&self) -> Result<LabelledSpace, Error> {
        let graph = self.graph()?;
        let sets = |lists: &[Vec<String>]| -> Result<Vec<VertexSet>, Error> {
            lists.iter().map(|l| graph.parse_set(l)).collect()
        };
        let family = match &self.family {
            FamilySpec::Named(name) if name == "power_set" => SetFamily::power_set(&graph)?,
            FamilySpec::Named(other) => {
                return Err(Error::Document(format!("unknown family `{other}`")))
            }
            FamilySpec::Generated(g) => {
                generate_family(&graph, &sets(&g.generators)?, g.close_complements)
            }
            FamilySpec::Explicit(e) => SetFamily::from_members(&graph, sets(&e.members)?),
        };
        Ok(LabelledSpace::new(graph, family))
    }
}
