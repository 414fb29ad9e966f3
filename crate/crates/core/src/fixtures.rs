//! The three reference spaces used across tests, the CLI and the FFI layer.
//!
//! * `g1`: three vertices, edges v1→v2, v2→v1, v1→v3 all labelled `a`,
//!   family generated by {v1}.
//! * `g1p`: the same graph with the power set.
//! * `g2`: one edge u→w labelled `a` into a sink, power set.

use crate::cli::GraphDocument;
use crate::labelled::{EdgeSpec, LabelledSpace};

pub const G1_JSON: &str = include_str!("../data/g1.json");
pub const G1P_JSON: &str = include_str!("../data/g1p.json");
pub const G2_JSON: &str = include_str!("../data/g2.json");
pub const LOOP_JSON: &str = include_str!("../data/loop.json");

fn load(text: &str) -> LabelledSpace {
    GraphDocument::parse(text)
        .and_then(|d| d.space())
        .expect("bundled fixture is valid")
}

pub fn g1() -> LabelledSpace {
    load(G1_JSON)
}

pub fn g1p() -> LabelledSpace {
    load(G1P_JSON)
}

pub fn g2() -> LabelledSpace {
    load(G2_JSON)
}

/// A single vertex with one loop.
pub fn single_loop() -> LabelledSpace {
    load(LOOP_JSON)
}

pub fn all() -> Vec<(&'static str, LabelledSpace)> {
    vec![("G1", g1()), ("G1P", g1p()), ("G2", g2())]
}

pub fn g1_vertices() -> Vec<String> {
    vec!["v1".into(), "v2".into(), "v3".into()]
}

pub fn g1_edges() -> Vec<EdgeSpec> {
    [("e1", "v1", "v2"), ("e2", "v2", "v1"), ("e3", "v1", "v3")]
        .iter()
        .map(|&(id, s, r)| EdgeSpec {
            id: id.into(),
            src: s.into(),
            rng: r.into(),
            label: "a".into(),
        })
        .collect()
}
