use std::collections::{BTreeMap, HashMap, VecDeque};

use super::{enumerate_tight_finite, enumerate_tight_lassos, f_from_top};
use crate::error::Error;
use crate::labelled::{BaFilter, LabelledSpace, Letter, VertexSet, Word};

/// Transition system whose infinite walks are the coherent atom sequences of
/// infinite-type ultrafilters.
///
/// A node is an ultrafilter ↑U of the algebra below R (stored as a
/// [`BaFilter`] with `top = R`). There is an `a`-edge (R, U) → (R′, U′) when
/// R′ = r(R, a) and f sends ↑U′ back to ↑U.
#[derive(Clone, Debug)]
pub struct StageAutomaton {
    nodes: Vec<BaFilter>,
    successors: Vec<Vec<(Letter, usize)>>,
    initial: Vec<(Letter, usize)>,
}

/// Size of the tight spectrum.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpectrumVerdict {
    Finite(usize),
    CountablyInfinite,
    Uncountable,
}

pub fn build_stage_automaton(space: &LabelledSpace) -> Result<StageAutomaton, Error> {
    space.require_boolean()?;
    let mut atoms_cache: HashMap<VertexSet, Vec<VertexSet>> = HashMap::new();
    let mut atoms = |r: VertexSet| -> Vec<VertexSet> {
        atoms_cache
            .entry(r)
            .or_insert_with(|| space.algebra_at(r).atoms().to_vec())
            .clone()
    };

    let mut index: BTreeMap<BaFilter, usize> = BTreeMap::new();
    let mut nodes = Vec::new();
    let mut queue = VecDeque::new();
    let mut intern = |node: BaFilter, nodes: &mut Vec<BaFilter>, queue: &mut VecDeque<usize>| -> usize {
        *index.entry(node).or_insert_with(|| {
            nodes.push(node);
            queue.push_back(nodes.len() - 1);
            nodes.len() - 1
        })
    };

    let mut initial = Vec::new();
    for a in space.letters() {
        let r = space.range(&Word::letter(a));
        for u in atoms(r) {
            let id = intern(BaFilter::new(r, u), &mut nodes, &mut queue);
            initial.push((a, id));
        }
    }

    let mut successors: Vec<Vec<(Letter, usize)>> = Vec::new();
    while let Some(id) = queue.pop_front() {
        let node = nodes[id];
        let mut out = Vec::new();
        for a in space.letters() {
            let next_top = space.step(node.top, a);
            if next_top.is_empty() {
                continue;
            }
            for u in atoms(next_top) {
                let cand = BaFilter::new(next_top, u);
                if f_from_top(space, node.top, &Word::letter(a), &cand) == Some(node) {
                    out.push((a, intern(cand, &mut nodes, &mut queue)));
                }
            }
        }
        if successors.len() <= id {
            successors.resize(id + 1, Vec::new());
        }
        successors[id] = out;
    }
    successors.resize(nodes.len(), Vec::new());
    Ok(StageAutomaton {
        nodes,
        successors,
        initial,
    })
}

impl StageAutomaton {
    pub fn nodes(&self) -> &[BaFilter] {
        &self.nodes
    }

    pub fn node_index(&self, node: &BaFilter) -> Option<usize> {
        self.nodes.iter().position(|n| n == node)
    }

    pub fn successors(&self, id: usize) -> &[(Letter, usize)] {
        &self.successors[id]
    }

    /// Transitions out of the empty-word stage.
    pub fn initial(&self) -> &[(Letter, usize)] {
        &self.initial
    }

    pub fn has_edge(&self, from: usize, letter: Letter, to: usize) -> bool {
        self.successors[from].contains(&(letter, to))
    }

    pub fn edge_count(&self) -> usize {
        self.successors.iter().map(Vec::len).sum()
    }

    /// Nodes from which some infinite walk starts.
    pub fn live(&self) -> Vec<bool> {
        let mut live = vec![true; self.nodes.len()];
        loop {
            let mut changed = false;
            for v in 0..self.nodes.len() {
                if live[v] && !self.successors[v].iter().any(|&(_, w)| live[w]) {
                    live[v] = false;
                    changed = true;
                }
            }
            if !changed {
                return live;
            }
        }
    }

    /// `reach[v][w]`: w is reachable from v by a walk of length ≥ 1.
    fn reach(&self) -> Vec<Vec<bool>> {
        let n = self.nodes.len();
        (0..n)
            .map(|v| {
                let mut seen = vec![false; n];
                let mut stack: Vec<usize> = self.successors[v].iter().map(|&(_, w)| w).collect();
                while let Some(w) = stack.pop() {
                    if !seen[w] {
                        seen[w] = true;
                        stack.extend(self.successors[w].iter().map(|&(_, x)| x));
                    }
                }
                seen
            })
            .collect()
    }

    /// Infinite walks are finitely many: past any cycle, live nodes never branch.
    pub fn lassos_finite(&self) -> bool {
        let reach = self.reach();
        let live = self.live();
        let n = self.nodes.len();
        (0..n).filter(|&c| reach[c][c]).all(|c| {
            (0..n)
                .filter(|&v| v == c || reach[c][v])
                .filter(|&v| live[v])
                .all(|v| self.successors[v].iter().filter(|&&(_, w)| live[w]).count() <= 1)
        })
    }

    /// Some strongly connected component carries two distinct cycles.
    pub fn lassos_uncountable(&self) -> bool {
        let reach = self.reach();
        (0..self.nodes.len()).filter(|&v| reach[v][v]).any(|v| {
            self.successors[v]
                .iter()
                .filter(|&&(_, w)| w == v || reach[w][v])
                .count()
                >= 2
        })
    }

    /// Some cycle can reach a node whose atom consists of sinks, so finite-type
    /// tight filters exist for arbitrarily long words.
    pub fn finite_type_infinite(&self, space: &LabelledSpace) -> bool {
        let reach = self.reach();
        let sinks = space.sinks();
        (0..self.nodes.len()).filter(|&c| reach[c][c]).any(|c| {
            (0..self.nodes.len()).any(|s| reach[c][s] && self.nodes[s].generator.is_subset(sinks))
        })
    }
}

pub fn spectrum_verdict(space: &LabelledSpace) -> Result<SpectrumVerdict, Error> {
    let aut = build_stage_automaton(space)?;
    if aut.lassos_uncountable() {
        return Ok(SpectrumVerdict::Uncountable);
    }
    if !aut.lassos_finite() || aut.finite_type_infinite(space) {
        return Ok(SpectrumVerdict::CountablyInfinite);
    }
    let n = aut.nodes().len();
    let finite = enumerate_tight_finite(space, n + 1).len();
    let lassos = enumerate_tight_lassos(space, 2 * n + 1).lassos.len();
    Ok(SpectrumVerdict::Finite(finite + lassos))
}
