use std::collections::BTreeSet;

use super::lasso::{canonical_lasso, retopped_tail};
use super::{enumerate_tight_finite, enumerate_tight_lassos, FiniteFilter, LassoFilter, TightFilter};
use crate::error::Error;
use crate::labelled::{LabelledGraph, LabelledSpace, Letter, VertexSet, Word};

/// A finite path ending at a sink (possibly of length zero) or an eventually
/// periodic infinite path. Edges are indices into the graph's edge list.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BoundaryPath {
    Finite { start: usize, edges: Vec<usize> },
    Lasso { prefix: Vec<usize>, cycle: Vec<usize> },
}

impl BoundaryPath {
    pub fn describe(&self, graph: &LabelledGraph) -> String {
        let ids = |es: &[usize]| es.iter().map(|&e| graph.edges()[e].id.as_str()).collect::<String>();
        match self {
            BoundaryPath::Finite { start, edges } if edges.is_empty() => graph.vertex_names()[*start].clone(),
            BoundaryPath::Finite { edges, .. } => ids(edges),
            BoundaryPath::Lasso { prefix, cycle } => format!("{}({})^ω", ids(prefix), ids(cycle)),
        }
    }

    fn end_vertex(graph: &LabelledGraph, start: usize, edges: &[usize]) -> usize {
        edges.last().map_or(start, |&e| graph.edges()[e].range)
    }
}

/// Finite boundary paths of length ≤ `bound` and canonical lasso paths with
/// |prefix| + |cycle| ≤ `bound`.
pub fn boundary_paths(graph: &LabelledGraph, bound: usize) -> Vec<BoundaryPath> {
    let sinks = graph.sinks();
    let mut finite = Vec::new();
    let mut lassos = BTreeSet::new();
    for start in 0..graph.vertex_count() {
        let mut stack: Vec<Vec<usize>> = vec![Vec::new()];
        while let Some(path) = stack.pop() {
            let end = BoundaryPath::end_vertex(graph, start, &path);
            if sinks.contains(end) {
                finite.push(BoundaryPath::Finite {
                    start,
                    edges: path.clone(),
                });
            }
            for k in 0..path.len() {
                if graph.edges()[path[k]].source == end {
                    let (p, c) = canonical_lasso(path[..k].to_vec(), path[k..].to_vec());
                    lassos.insert(BoundaryPath::Lasso { prefix: p, cycle: c });
                }
            }
            if path.len() < bound {
                for &e in graph.out_edges(end) {
                    let mut next = path.clone();
                    next.push(e);
                    stack.push(next);
                }
            }
        }
    }
    finite.sort_by(|a, b| match (a, b) {
        (
            BoundaryPath::Finite { start: s1, edges: e1 },
            BoundaryPath::Finite { start: s2, edges: e2 },
        ) => e1.len().cmp(&e2.len()).then(e1.cmp(e2)).then(s1.cmp(s2)),
        _ => unreachable!(),
    });
    finite.extend(lassos);
    finite
}

/// Outcome of comparing boundary paths with tight filters.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct BoundaryCheck {
    pub finite_paths: usize,
    pub finite_filters: usize,
    pub lasso_paths: usize,
    pub lasso_filters: usize,
    /// Distinct paths have distinct images.
    pub injective: bool,
    /// Every image is among the enumerated tight filters.
    pub images_enumerated: bool,
    pub bijective: bool,
    /// `(path, filter)` descriptions.
    pub pairs: Vec<(String, String)>,
}

/// The tight filter attached to a boundary path: its label word with
/// singleton range vertices as atoms.
pub fn path_to_filter(space: &LabelledSpace, path: &BoundaryPath) -> TightFilter {
    let g = space.graph();
    let label = |e: usize| -> Letter { g.edges()[e].label };
    match path {
        BoundaryPath::Finite { start, edges } => TightFilter::Finite(FiniteFilter {
            word: Word::from_letters(edges.iter().map(|&e| label(e)).collect()),
            generator: VertexSet::singleton(BoundaryPath::end_vertex(g, *start, edges)),
        }),
        BoundaryPath::Lasso { prefix, cycle } => {
            let pairs = |es: &[usize]| -> Vec<(Letter, VertexSet)> {
                es.iter()
                    .map(|&e| (label(e), VertexSet::singleton(g.edges()[e].range)))
                    .collect()
            };
            let (p, c) = retopped_tail(space, &pairs(prefix), &pairs(cycle), 0, g.all_vertices());
            TightFilter::Lasso(LassoFilter::new(space, p, c))
        }
    }
}

/// Checks that paths ↦ filters is a bijection between boundary paths and
/// tight filters up to `bound`. Needs a left-resolving graph with the power
/// set as family.
pub fn tight_vs_boundary_check(space: &LabelledSpace, bound: usize) -> Result<BoundaryCheck, Error> {
    let g = space.graph();
    if !g.is_left_resolving() {
        return Err(Error::NotLeftResolving);
    }
    if !space.family().is_power_set(g) {
        return Err(Error::NotPowerSet);
    }
    let paths = boundary_paths(g, bound);
    let finite: BTreeSet<TightFilter> = enumerate_tight_finite(space, bound)
        .into_iter()
        .map(TightFilter::Finite)
        .collect();
    let lassos: BTreeSet<TightFilter> = enumerate_tight_lassos(space, bound)
        .lassos
        .into_iter()
        .map(TightFilter::Lasso)
        .collect();

    let mut images = BTreeSet::new();
    let mut pairs = Vec::new();
    let mut images_enumerated = true;
    let (mut finite_paths, mut lasso_paths) = (0, 0);
    for p in &paths {
        let f = path_to_filter(space, p);
        let known = match p {
            BoundaryPath::Finite { .. } => {
                finite_paths += 1;
                finite.contains(&f)
            }
            BoundaryPath::Lasso { .. } => {
                lasso_paths += 1;
                lassos.contains(&f)
            }
        };
        images_enumerated &= known;
        pairs.push((p.describe(g), f.describe(space)));
        images.insert(f);
    }
    let injective = images.len() == paths.len();
    let bijective = injective
        && images_enumerated
        && finite_paths == finite.len()
        && lasso_paths == lassos.len();
    Ok(BoundaryCheck {
        finite_paths,
        finite_filters: finite.len(),
        lasso_paths,
        lasso_filters: lassos.len(),
        injective,
        images_enumerated,
        bijective,
        pairs,
    })
}
