use std::collections::BTreeSet;

use super::bitset::VertexSet;
use super::graph::LabelledGraph;
use crate::error::Error;

/// Largest vertex count accepted for the full power set.
pub const POWER_SET_LIMIT: usize = 12;

/// A finite family of vertex sets together with the closure properties found
/// by scanning it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetFamily {
    members: Vec<VertexSet>,
    accommodating: bool,
    complements: bool,
    weakly_left_resolving: bool,
}

impl SetFamily {
    /// Takes the members as given and records which closure properties hold.
    pub fn from_members(graph: &LabelledGraph, members: impl IntoIterator<Item = VertexSet>) -> Self {
        let members: Vec<VertexSet> = members.into_iter().collect::<BTreeSet<_>>().into_iter().collect();
        let accommodating = is_accommodating(graph, &members);
        let complements = closed_under_complements(&members);
        let weakly_left_resolving = letters_distribute_over_meets(graph, &members);
        SetFamily {
            members,
            accommodating,
            complements,
            weakly_left_resolving,
        }
    }

    pub fn power_set(graph: &LabelledGraph) -> Result<Self, Error> {
        let n = graph.vertex_count();
        if n > POWER_SET_LIMIT {
            return Err(Error::TooLarge(format!(
                "power set over {n} vertices (limit {POWER_SET_LIMIT})"
            )));
        }
        Ok(Self::from_members(
            graph,
            (0..1u64 << n).map(VertexSet::from_bits),
        ))
    }

    pub fn members(&self) -> &[VertexSet] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, a: VertexSet) -> bool {
        self.members.binary_search(&a).is_ok()
    }

    pub fn is_accommodating(&self) -> bool {
        self.accommodating
    }

    pub fn closed_under_complements(&self) -> bool {
        self.complements
    }

    pub fn is_weakly_left_resolving(&self) -> bool {
        self.weakly_left_resolving
    }

    pub fn is_power_set(&self, graph: &LabelledGraph) -> bool {
        let n = graph.vertex_count();
        n < 64 && self.members.len() as u64 == 1u64 << n
    }
}

/// Least accommodating family containing `generators`, optionally closed under
/// relative complements. Relative ranges are closed letter by letter; closure
/// under words follows from r(A, αb) = r(r(A, α), b).
pub fn generate_family(
    graph: &LabelledGraph,
    generators: &[VertexSet],
    close_complements: bool,
) -> SetFamily {
    let universe = graph.all_vertices();
    let mut set: BTreeSet<VertexSet> = BTreeSet::new();
    set.insert(VertexSet::EMPTY);
    for a in 0..graph.alphabet().len() {
        set.insert(graph.step(universe, a));
    }
    for g in generators {
        set.insert(g.intersection(universe));
    }
    loop {
        let current: Vec<VertexSet> = set.iter().copied().collect();
        let before = set.len();
        for (i, &x) in current.iter().enumerate() {
            for a in 0..graph.alphabet().len() {
                set.insert(graph.step(x, a));
            }
            for &y in &current[i..] {
                set.insert(x.union(y));
                set.insert(x.intersection(y));
                if close_complements {
                    set.insert(x.difference(y));
                    set.insert(y.difference(x));
                }
            }
        }
        if set.len() == before {
            break;
        }
    }
    SetFamily::from_members(graph, set)
}

fn is_accommodating(graph: &LabelledGraph, members: &[VertexSet]) -> bool {
    let has = |s: VertexSet| members.binary_search(&s).is_ok();
    if !has(VertexSet::EMPTY) {
        return false;
    }
    let letters = graph.alphabet().len();
    if !(0..letters).all(|a| has(graph.step(graph.all_vertices(), a))) {
        return false;
    }
    members.iter().enumerate().all(|(i, &x)| {
        (0..letters).all(|a| has(graph.step(x, a)))
            && members[i..]
                .iter()
                .all(|&y| has(x.union(y)) && has(x.intersection(y)))
    })
}

fn closed_under_complements(members: &[VertexSet]) -> bool {
    let has = |s: VertexSet| members.binary_search(&s).is_ok();
    members
        .iter()
        .all(|&x| members.iter().all(|&y| has(x.difference(y))))
}

/// r(A∩B, a) = r(A, a) ∩ r(B, a) for all members and letters. The word
/// version follows by induction on the word length.
fn letters_distribute_over_meets(graph: &LabelledGraph, members: &[VertexSet]) -> bool {
    let letters = graph.alphabet().len();
    members.iter().enumerate().all(|(i, &x)| {
        members[i..].iter().all(|&y| {
            (0..letters).all(|a| {
                graph.step(x.intersection(y), a) == graph.step(x, a).intersection(graph.step(y, a))
            })
        })
    })
}

/// Letter-level weak left-resolving check of `family` against `graph`.
pub fn is_weakly_left_resolving(graph: &LabelledGraph, family: &SetFamily) -> bool {
    letters_distribute_over_meets(graph, family.members())
}
