use std::collections::{BTreeMap, BTreeSet};

use super::bitset::{VertexSet, MAX_VERTICES};
use super::word::{Letter, Word};
use crate::error::Error;

/// Edge as supplied by a caller, with vertex and label names.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeSpec {
    pub id: String,
    pub src: String,
    pub rng: String,
    pub label: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub id: String,
    pub source: usize,
    pub range: usize,
    pub label: Letter,
}

/// Sink/source flags of a vertex. Graphs are finite, so a non-sink is regular.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VertexKind {
    pub sink: bool,
    pub source: bool,
}

impl VertexKind {
    pub fn is_regular(self) -> bool {
        !self.sink
    }
}

/// A finite directed graph whose edges carry letters.
///
/// Vertices and letters are kept in lexicographic order of their names and
/// edges in lexicographic order of their ids.
#[derive(Clone, Debug)]
pub struct LabelledGraph {
    vertices: Vec<String>,
    edges: Vec<Edge>,
    alphabet: Vec<String>,
    // step[a][v] = r({v}, a)
    step: Vec<Vec<VertexSet>>,
    out_edges: Vec<Vec<usize>>,
    in_edges: Vec<Vec<usize>>,
}

impl LabelledGraph {
    pub fn new(vertices: &[String], edges: &[EdgeSpec]) -> Result<Self, Error> {
        let mut names: Vec<String> = vertices.to_vec();
        names.sort();
        for w in names.windows(2) {
            if w[0] == w[1] {
                return Err(Error::DuplicateId(w[0].clone()));
            }
        }
        if names.len() > MAX_VERTICES {
            return Err(Error::TooManyVertices(names.len()));
        }
        if edges.is_empty() {
            return Err(Error::NoEdges);
        }
        let index: BTreeMap<&str, usize> =
            names.iter().enumerate().map(|(i, n)| (n.as_str(), i)).collect();
        let alphabet: Vec<String> = edges
            .iter()
            .map(|e| e.label.clone())
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();

        let mut specs: Vec<&EdgeSpec> = edges.iter().collect();
        specs.sort_by(|a, b| a.id.cmp(&b.id));
        let mut built = Vec::with_capacity(specs.len());
        for (i, e) in specs.iter().enumerate() {
            if i > 0 && specs[i - 1].id == e.id {
                return Err(Error::DuplicateId(e.id.clone()));
            }
            if index.contains_key(e.id.as_str()) {
                return Err(Error::DuplicateId(e.id.clone()));
            }
            let lookup = |v: &str| {
                index.get(v).copied().ok_or_else(|| Error::UnknownVertex {
                    edge: e.id.clone(),
                    vertex: v.to_string(),
                })
            };
            built.push(Edge {
                id: e.id.clone(),
                source: lookup(&e.src)?,
                range: lookup(&e.rng)?,
                label: alphabet.binary_search(&e.label).expect("label collected above"),
            });
        }

        let n = names.len();
        let mut step = vec![vec![VertexSet::EMPTY; n]; alphabet.len()];
        let mut out_edges = vec![Vec::new(); n];
        let mut in_edges = vec![Vec::new(); n];
        for (i, e) in built.iter().enumerate() {
            step[e.label][e.source].insert(e.range);
            out_edges[e.source].push(i);
            in_edges[e.range].push(i);
        }
        Ok(LabelledGraph {
            vertices: names,
            edges: built,
            alphabet,
            step,
            out_edges,
            in_edges,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertex_names(&self) -> &[String] {
        &self.vertices
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.vertices.binary_search_by(|v| v.as_str().cmp(name)).ok()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn alphabet(&self) -> &[String] {
        &self.alphabet
    }

    pub fn letter_index(&self, name: &str) -> Option<Letter> {
        self.alphabet.binary_search_by(|a| a.as_str().cmp(name)).ok()
    }

    /// All vertices, E⁰.
    pub fn all_vertices(&self) -> VertexSet {
        VertexSet::full(self.vertices.len())
    }

    /// Edges leaving `v`, in edge order.
    pub fn out_edges(&self, v: usize) -> &[usize] {
        &self.out_edges[v]
    }

    pub fn in_edges(&self, v: usize) -> &[usize] {
        &self.in_edges[v]
    }

    pub fn vertex_kind(&self, v: usize) -> Result<VertexKind, Error> {
        if v >= self.vertices.len() {
            return Err(Error::UnknownVertexId(v.to_string()));
        }
        Ok(VertexKind {
            sink: self.out_edges[v].is_empty(),
            source: self.in_edges[v].is_empty(),
        })
    }

    pub fn sinks(&self) -> VertexSet {
        (0..self.vertices.len())
            .filter(|&v| self.out_edges[v].is_empty())
            .collect()
    }

    /// r(A, a) for a single letter.
    pub fn step(&self, a: VertexSet, letter: Letter) -> VertexSet {
        a.iter()
            .fold(VertexSet::EMPTY, |acc, v| acc.union(self.step[letter][v]))
    }

    /// r(A, α): ranges of the paths labelled α that start in A.
    pub fn relative_range(&self, a: VertexSet, word: &Word) -> VertexSet {
        let mut cur = a;
        for &l in word.letters() {
            if cur.is_empty() {
                break;
            }
            cur = self.step(cur, l);
        }
        cur
    }

    /// r(α), with r(ε) = E⁰.
    pub fn range_of(&self, word: &Word) -> VertexSet {
        self.relative_range(self.all_vertices(), word)
    }

    /// The word labels some path of the graph (ε always does).
    pub fn is_realized(&self, word: &Word) -> bool {
        word.is_empty() || !self.range_of(word).is_empty()
    }

    /// Letters of the edges leaving `a`.
    pub fn label_set(&self, a: VertexSet) -> Vec<Letter> {
        let mut out: Vec<Letter> = a
            .iter()
            .flat_map(|v| self.out_edges[v].iter().map(|&e| self.edges[e].label))
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Incoming edges of every vertex carry pairwise distinct letters.
    pub fn is_left_resolving(&self) -> bool {
        self.in_edges.iter().all(|ins| {
            let mut labels: Vec<Letter> = ins.iter().map(|&e| self.edges[e].label).collect();
            labels.sort_unstable();
            labels.windows(2).all(|w| w[0] != w[1])
        })
    }

    /// Realized words of length at most `bound`, in shortlex order.
    pub fn words_up_to(&self, bound: usize) -> Vec<Word> {
        let mut out = vec![Word::empty()];
        let mut layer = vec![(Word::empty(), self.all_vertices())];
        for _ in 0..bound {
            let mut next = Vec::new();
            for (w, r) in &layer {
                for a in 0..self.alphabet.len() {
                    let r2 = self.step(*r, a);
                    if !r2.is_empty() {
                        next.push((w.pushed(a), r2));
                    }
                }
            }
            out.extend(next.iter().map(|(w, _)| w.clone()));
            layer = next;
        }
        out
    }

    pub fn format_set(&self, a: VertexSet) -> String {
        let names: Vec<&str> = a.iter().map(|v| self.vertices[v].as_str()).collect();
        format!("{{{}}}", names.join(","))
    }

    pub fn set_names(&self, a: VertexSet) -> Vec<String> {
        a.iter().map(|v| self.vertices[v].clone()).collect()
    }

    pub fn word_names(&self, w: &Word) -> Vec<String> {
        w.letters().iter().map(|&l| self.alphabet[l].clone()).collect()
    }

    /// Compact rendering: letters concatenated, `ε` for the empty word.
    pub fn format_word(&self, w: &Word) -> String {
        if w.is_empty() {
            "ε".to_string()
        } else if self.alphabet.iter().all(|a| a.chars().count() == 1) {
            self.word_names(w).concat()
        } else {
            self.word_names(w).join(".")
        }
    }

    pub fn parse_set(&self, names: &[String]) -> Result<VertexSet, Error> {
        names
            .iter()
            .map(|n| {
                self.vertex_index(n)
                    .ok_or_else(|| Error::UnknownVertexId(n.clone()))
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn relative_ranges_in_g1() {
        let g = fixtures::g1().graph().clone();
        let set = |names: &[&str]| {
            g.parse_set(&names.iter().map(|s| s.to_string()).collect::<Vec<_>>())
                .unwrap()
        };
        let a = Word::letter(0);
        assert_eq!(g.relative_range(set(&["v1"]), &a), set(&["v2", "v3"]));
        assert_eq!(g.relative_range(set(&["v2", "v3"]), &a), set(&["v1"]));
        assert_eq!(g.relative_range(set(&["v1", "v3"]), &Word::empty()), set(&["v1", "v3"]));
        assert_eq!(g.range_of(&a), g.all_vertices());
    }

    #[test]
    fn kinds_and_labels() {
        let g1 = fixtures::g1().graph().clone();
        let v3 = g1.vertex_index("v3").unwrap();
        let v1 = g1.vertex_index("v1").unwrap();
        assert!(g1.vertex_kind(v3).unwrap().sink);
        let k1 = g1.vertex_kind(v1).unwrap();
        assert!(k1.is_regular() && !k1.source);
        assert!(g1.vertex_kind(17).is_err());
        assert_eq!(g1.label_set(VertexSet::singleton(v1)), vec![0]);
        assert!(g1.label_set(VertexSet::EMPTY).is_empty());

        let g2 = fixtures::g2().graph().clone();
        let w = g2.vertex_index("w").unwrap();
        assert!(g2.vertex_kind(w).unwrap().sink);
        assert!(g2.label_set(VertexSet::singleton(w)).is_empty());
    }

    #[test]
    fn left_resolving() {
        assert!(fixtures::g1().graph().is_left_resolving());
        assert!(fixtures::g2().graph().is_left_resolving());
        let mut edges = fixtures::g1_edges();
        edges.push(EdgeSpec {
            id: "e4".into(),
            src: "v2".into(),
            rng: "v2".into(),
            label: "a".into(),
        });
        let g = LabelledGraph::new(&fixtures::g1_vertices(), &edges).unwrap();
        assert!(!g.is_left_resolving());
    }

    #[test]
    fn validation() {
        let mut edges = fixtures::g1_edges();
        edges[0].rng = "v9".into();
        assert!(matches!(
            LabelledGraph::new(&fixtures::g1_vertices(), &edges),
            Err(Error::UnknownVertex { .. })
        ));
        let mut dup = fixtures::g1_edges();
        dup[1].id = "e1".into();
        assert!(matches!(
            LabelledGraph::new(&fixtures::g1_vertices(), &dup),
            Err(Error::DuplicateId(_))
        ));
        assert!(matches!(
            LabelledGraph::new(&fixtures::g1_vertices(), &[]),
            Err(Error::NoEdges)
        ));
    }

    #[test]
    fn realized_words() {
        let g2 = fixtures::g2().graph().clone();
        assert_eq!(g2.words_up_to(3), vec![Word::empty(), Word::letter(0)]);
        assert_eq!(fixtures::g1().graph().words_up_to(2).len(), 3);
    }
}
