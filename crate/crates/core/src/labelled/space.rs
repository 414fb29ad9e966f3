use super::bitset::VertexSet;
use super::family::SetFamily;
use super::graph::LabelledGraph;
use super::word::{Letter, Word};
use crate::error::Error;

/// A labelled graph paired with a family of vertex sets. Every other module
/// takes one of these as its context.
#[derive(Clone, Debug)]
pub struct LabelledSpace {
    graph: LabelledGraph,
    family: SetFamily,
}

impl LabelledSpace {
    pub fn new(graph: LabelledGraph, family: SetFamily) -> Self {
        LabelledSpace { graph, family }
    }

    pub fn graph(&self) -> &LabelledGraph {
        &self.graph
    }

    pub fn family(&self) -> &SetFamily {
        &self.family
    }

    pub fn letters(&self) -> std::ops::Range<Letter> {
        0..self.graph.alphabet().len()
    }

    pub fn range(&self, word: &Word) -> VertexSet {
        self.graph.range_of(word)
    }

    pub fn relative_range(&self, a: VertexSet, word: &Word) -> VertexSet {
        self.graph.relative_range(a, word)
    }

    pub fn step(&self, a: VertexSet, letter: Letter) -> VertexSet {
        self.graph.step(a, letter)
    }

    pub fn sinks(&self) -> VertexSet {
        self.graph.sinks()
    }

    /// B(α) = family ∩ P(r(α)).
    pub fn algebra(&self, word: &Word) -> RestrictedAlgebra {
        self.algebra_at(self.range(word))
    }

    /// The members of the family below `top`.
    pub fn algebra_at(&self, top: VertexSet) -> RestrictedAlgebra {
        let members: Vec<VertexSet> = self
            .family
            .members()
            .iter()
            .copied()
            .filter(|m| m.is_subset(top))
            .collect();
        let nonempty: Vec<VertexSet> = members.iter().copied().filter(|m| !m.is_empty()).collect();
        let atoms = nonempty
            .iter()
            .copied()
            .filter(|&m| !nonempty.iter().any(|&o| o != m && o.is_subset(m)))
            .collect();
        RestrictedAlgebra { top, members, atoms }
    }

    /// Fails unless the family is accommodating, closed under relative
    /// complements and weakly left-resolving.
    pub fn require_boolean(&self) -> Result<(), Error> {
        if !self.family.is_accommodating() {
            return Err(Error::NotAccommodating);
        }
        if !self.family.closed_under_complements() {
            return Err(Error::NoComplements);
        }
        if !self.family.is_weakly_left_resolving() {
            return Err(Error::NotWeaklyLeftResolving);
        }
        Ok(())
    }

    /// Largest member of B(top) inside `bound` (members are closed under union).
    pub fn largest_member_within(&self, top: VertexSet, bound: VertexSet) -> VertexSet {
        self.family
            .members()
            .iter()
            .filter(|m| m.is_subset(top) && m.is_subset(bound))
            .fold(VertexSet::EMPTY, |acc, &m| acc.union(m))
    }
}

/// The members of the family contained in a fixed top set r(α).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RestrictedAlgebra {
    top: VertexSet,
    members: Vec<VertexSet>,
    atoms: Vec<VertexSet>,
}

impl RestrictedAlgebra {
    pub fn top(&self) -> VertexSet {
        self.top
    }

    pub fn members(&self) -> &[VertexSet] {
        &self.members
    }

    pub fn atoms(&self) -> &[VertexSet] {
        &self.atoms
    }

    pub fn contains(&self, a: VertexSet) -> bool {
        self.members.binary_search(&a).is_ok()
    }

    pub fn is_atom(&self, a: VertexSet) -> bool {
        self.atoms.binary_search(&a).is_ok()
    }

    pub fn is_trivial(&self) -> bool {
        self.atoms.is_empty()
    }

    /// One ultrafilter per atom.
    pub fn ultrafilters(&self) -> Vec<BaFilter> {
        self.atoms
            .iter()
            .map(|&u| BaFilter::new(self.top, u))
            .collect()
    }

    /// Every filter; each is the up-set of a non-empty member.
    pub fn filters(&self) -> Vec<BaFilter> {
        self.members
            .iter()
            .filter(|m| !m.is_empty())
            .map(|&m| BaFilter::new(self.top, m))
            .collect()
    }
}

/// A filter of a restricted algebra, stored by its minimum.
///
/// `top` identifies the algebra (r(α) for the stage word α) and `generator`
/// is the least member of the filter.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BaFilter {
    pub top: VertexSet,
    pub generator: VertexSet,
}

impl BaFilter {
    pub fn new(top: VertexSet, generator: VertexSet) -> Self {
        BaFilter { top, generator }
    }

    /// Membership of a family member in the up-set.
    pub fn contains(&self, a: VertexSet) -> bool {
        a.is_subset(self.top) && self.generator.is_subset(a)
    }

    pub fn is_ultrafilter(&self, space: &LabelledSpace) -> bool {
        space.algebra_at(self.top).is_atom(self.generator)
    }

    /// The filter as an explicit list of members.
    pub fn members(&self, algebra: &RestrictedAlgebra) -> Vec<VertexSet> {
        algebra
            .members()
            .iter()
            .copied()
            .filter(|&m| self.generator.is_subset(m))
            .collect()
    }
}

/// Exel's criterion on an explicit filter: it is an ultrafilter exactly when
/// every element meeting all of its members already belongs to it.
pub fn is_ultrafilter_oracle(algebra: &RestrictedAlgebra, filter: &[VertexSet]) -> bool {
    algebra
        .members()
        .iter()
        .filter(|y| !y.is_empty())
        .filter(|&&y| filter.iter().all(|&x| !x.is_disjoint(y)))
        .all(|y| filter.contains(y))
}

/// All subsets of the algebra's members that satisfy the filter axioms
/// (non-empty, no ∅, up-closed, closed under ∩). Exponential: small algebras only.
pub fn brute_force_filters(algebra: &RestrictedAlgebra) -> Vec<Vec<VertexSet>> {
    let members = algebra.members();
    assert!(members.len() <= 20, "brute force over {} members", members.len());
    let mut out = Vec::new();
    for mask in 1u32..(1u32 << members.len()) {
        let chosen: Vec<VertexSet> = (0..members.len())
            .filter(|i| mask & (1 << i) != 0)
            .map(|i| members[i])
            .collect();
        if chosen.iter().any(|c| c.is_empty()) {
            continue;
        }
        let up_closed = chosen.iter().all(|&x| {
            members
                .iter()
                .filter(|&&m| x.is_subset(m))
                .all(|m| chosen.contains(m))
        });
        let meet_closed = chosen
            .iter()
            .all(|&x| chosen.iter().all(|&y| chosen.contains(&x.intersection(y))));
        if up_closed && meet_closed {
            out.push(chosen);
        }
    }
    out
}

/// Tallies of [`oracle_agreement`].
#[derive(Clone, Debug, Default, PartialEq, Eq, serde::Serialize)]
pub struct OracleAgreement {
    pub algebras: usize,
    pub filters: usize,
    pub ultrafilters: usize,
    pub disagreements: Vec<String>,
}

/// Compares the atom ultrafilters with Exel's criterion on every filter of
/// each distinct B(α), |α| ≤ `bound`, that has at most 32 members. Algebras
/// with at most 16 members have their filters found by brute force, which is
/// also checked against the principal filters.
pub fn oracle_agreement(space: &LabelledSpace, bound: usize) -> OracleAgreement {
    let g = space.graph();
    let mut report = OracleAgreement::default();
    let mut tops: Vec<VertexSet> = g.words_up_to(bound).iter().map(|w| space.range(w)).collect();
    tops.sort();
    tops.dedup();
    for top in tops {
        let algebra = space.algebra_at(top);
        if algebra.members().len() > 32 {
            continue;
        }
        report.algebras += 1;
        let principal: Vec<Vec<VertexSet>> = algebra.filters().iter().map(|f| f.members(&algebra)).collect();
        let filters = if algebra.members().len() <= 16 {
            let mut brute = brute_force_filters(&algebra);
            let mut expected = principal.clone();
            brute.sort();
            expected.sort();
            if brute != expected {
                report
                    .disagreements
                    .push(format!("B({}) has non-principal filters", g.format_set(top)));
            }
            brute
        } else {
            principal
        };
        let atoms: Vec<Vec<VertexSet>> = algebra.ultrafilters().iter().map(|u| u.members(&algebra)).collect();
        for f in filters {
            report.filters += 1;
            let by_atoms = atoms.contains(&f);
            report.ultrafilters += usize::from(by_atoms);
            if by_atoms != is_ultrafilter_oracle(&algebra, &f) {
                let names: Vec<String> = f.iter().map(|&m| g.format_set(m)).collect();
                report
                    .disagreements
                    .push(format!("B({}): filter [{}]", g.format_set(top), names.join(", ")));
            }
        }
    }
    report
}
