//! Filters in the idempotent semilattice, described by a word and a coherent
//! family of stage filters, plus the classification and enumeration of the
//! tight ones.

mod automaton;
mod boundary;
mod cover;
mod lasso;

pub use automaton::{build_stage_automaton, spectrum_verdict, SpectrumVerdict, StageAutomaton};
pub use boundary::{boundary_paths, path_to_filter, tight_vs_boundary_check, BoundaryCheck, BoundaryPath};
pub use cover::{bounded_cover_falsifier, CoverCounterexample};
pub use lasso::{canonical_lasso, enumerate_tight_lassos, LassoEnumeration, LassoFilter, Step};
pub(crate) use lasso::retopped_tail;

use crate::error::Error;
use crate::labelled::{BaFilter, LabelledSpace, Letter, VertexSet, Word};
use crate::semigroup::Triple;

/// f_{α[β]} with α given by its range `top`: the members A of B(α) with
/// r(A, β) in `filter`. `None` when no member qualifies.
pub fn f_from_top(space: &LabelledSpace, top: VertexSet, suffix: &Word, filter: &BaFilter) -> Option<BaFilter> {
    let mut min: Option<VertexSet> = None;
    for &a in space.family().members() {
        if a.is_subset(top) && filter.contains(space.relative_range(a, suffix)) {
            min = Some(min.map_or(a, |m| m.intersection(a)));
        }
    }
    min.map(|g| BaFilter::new(top, g))
}

/// f_{α[β]}(F) for F a filter in B(αβ).
pub fn f_map(space: &LabelledSpace, prefix: &Word, suffix: &Word, filter: &BaFilter) -> Option<BaFilter> {
    f_from_top(space, space.range(prefix), suffix, filter)
}

/// A filter of finite type: its largest word and the least member of its top
/// stage.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FiniteFilter {
    pub word: Word,
    pub generator: VertexSet,
}

impl FiniteFilter {
    pub fn top_stage(&self, space: &LabelledSpace) -> BaFilter {
        BaFilter::new(space.range(&self.word), self.generator)
    }

    /// Stages 0..=|α|, each obtained from the next by one f-step. Stage 0 may
    /// be empty.
    pub fn complete_family(&self, space: &LabelledSpace) -> Vec<Option<BaFilter>> {
        let n = self.word.len();
        let mut stages = vec![None; n + 1];
        stages[n] = Some(self.top_stage(space));
        for i in (0..n).rev() {
            let next = stages[i + 1].expect("stages above 0 are non-empty");
            let top = space.range(&self.word.prefix(i));
            let letter = Word::letter(self.word.letters()[i]);
            stages[i] = f_from_top(space, top, &letter, &next);
            if stages[i].is_none() {
                assert_eq!(i, 0, "only stage 0 can be empty");
            }
        }
        stages
    }

    pub fn stage(&self, space: &LabelledSpace, n: usize) -> Option<BaFilter> {
        self.complete_family(space)[n]
    }

    /// (α_{1,i}, A, α_{1,i}) ∈ ξ iff r(A, α_{i+1..}) lies in the top stage.
    pub fn contains(&self, space: &LabelledSpace, x: &Triple) -> bool {
        if !x.is_idempotent() || !space.family().contains(x.set) {
            return false;
        }
        match self.word.strip_prefix(&x.left) {
            Some(rest) => {
                x.set.is_subset(space.range(&x.left))
                    && self.top_stage(space).contains(space.relative_range(x.set, &rest))
            }
            None => false,
        }
    }
}

/// The finite-type filter generated by a filter of B(α).
pub fn filter_from_pair(space: &LabelledSpace, word: Word, filter: &BaFilter) -> Result<FiniteFilter, Error> {
    let algebra = space.algebra(&word);
    if filter.top != algebra.top() {
        return Err(Error::Precondition("filter lives in a different algebra".into()));
    }
    if filter.generator.is_empty() || !algebra.contains(filter.generator) {
        return Err(Error::Precondition("generator is not a non-empty member of B(α)".into()));
    }
    Ok(FiniteFilter {
        word,
        generator: filter.generator,
    })
}

/// Completes an admissible family (one entry per stage, `None` for empty)
/// to the finite-type filter it generates.
pub fn complete_admissible(
    space: &LabelledSpace,
    word: Word,
    partial: &[Option<BaFilter>],
) -> Result<FiniteFilter, Error> {
    let n = word.len();
    if partial.len() != n + 1 {
        return Err(Error::Precondition(format!(
            "expected {} stages, got {}",
            n + 1,
            partial.len()
        )));
    }
    for (i, stage) in partial.iter().enumerate() {
        let Some(f) = stage else { continue };
        let algebra = space.algebra(&word.prefix(i));
        if f.top != algebra.top() || f.generator.is_empty() || !algebra.contains(f.generator) {
            return Err(Error::Precondition(format!("stage {i} is not a filter of its algebra")));
        }
        if i < n {
            let ok = match partial[i + 1] {
                Some(next) => next.contains(space.step(f.generator, word.letters()[i])),
                None => false,
            };
            if !ok {
                return Err(Error::Precondition(format!("stage {i} is not admissible")));
            }
        }
    }
    let top = partial[n].ok_or_else(|| Error::Precondition("top stage is empty".into()))?;
    filter_from_pair(space, word, &top)
}

/// Ultrafilters of B(α) in which every letter is killed by some member.
pub fn sink_ultrafilters(space: &LabelledSpace, word: &Word) -> Vec<BaFilter> {
    let algebra = space.algebra(word);
    algebra
        .ultrafilters()
        .into_iter()
        .filter(|uf| {
            space.letters().all(|b| {
                algebra
                    .members()
                    .iter()
                    .any(|&a| uf.contains(a) && space.step(a, b).is_empty())
            })
        })
        .collect()
}

/// Literal tightness test for a finite-type filter. Labels of a finite graph
/// are finite, so the infinite-label alternative never fires.
pub fn is_tight_finite_type(space: &LabelledSpace, filter: &FiniteFilter) -> bool {
    let algebra = space.algebra(&filter.word);
    if !algebra.is_atom(filter.generator) {
        return false;
    }
    let sinks = space.sinks();
    algebra
        .members()
        .iter()
        .filter(|&&a| filter.generator.is_subset(a))
        .all(|&a| {
            let infinitely_many_labels = false;
            let sink_part = algebra
                .members()
                .iter()
                .any(|&b| !b.is_empty() && b.is_subset(a.intersection(sinks)));
            infinitely_many_labels || sink_part
        })
}

/// Tight finite-type filters with |α| ≤ `bound`, ordered by word then atom.
pub fn enumerate_tight_finite(space: &LabelledSpace, bound: usize) -> Vec<FiniteFilter> {
    let mut out = Vec::new();
    for word in space.graph().words_up_to(bound) {
        for &u in space.algebra(&word).atoms() {
            let f = FiniteFilter {
                word: word.clone(),
                generator: u,
            };
            if is_tight_finite_type(space, &f) {
                out.push(f);
            }
        }
    }
    out
}

/// A filter of finite type or an eventually periodic one of infinite type.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TightFilter {
    Finite(FiniteFilter),
    Lasso(LassoFilter),
}

impl TightFilter {
    pub fn contains(&self, space: &LabelledSpace, x: &Triple) -> bool {
        match self {
            TightFilter::Finite(f) => f.contains(space, x),
            TightFilter::Lasso(l) => l.contains(space, x),
        }
    }

    pub fn stage(&self, space: &LabelledSpace, n: usize) -> Option<BaFilter> {
        match self {
            TightFilter::Finite(f) if n <= f.word.len() => f.stage(space, n),
            TightFilter::Finite(_) => None,
            TightFilter::Lasso(l) => l.stage(space, n),
        }
    }

    pub fn stage0(&self, space: &LabelledSpace) -> Option<BaFilter> {
        self.stage(space, 0)
    }

    /// `None` for infinite words.
    pub fn word_len(&self) -> Option<usize> {
        match self {
            TightFilter::Finite(f) => Some(f.word.len()),
            TightFilter::Lasso(_) => None,
        }
    }

    pub fn letter_at(&self, i: usize) -> Option<Letter> {
        match self {
            TightFilter::Finite(f) => f.word.letters().get(i).copied(),
            TightFilter::Lasso(l) => Some(l.step(i + 1).letter),
        }
    }

    /// The first `n` letters (fewer for short finite words).
    pub fn word_prefix(&self, n: usize) -> Word {
        match self {
            TightFilter::Finite(f) => f.word.prefix(n.min(f.word.len())),
            TightFilter::Lasso(l) => l.word_prefix(n),
        }
    }

    pub fn starts_with(&self, w: &Word) -> bool {
        match self {
            TightFilter::Finite(f) => f.word.starts_with(w),
            TightFilter::Lasso(l) => l.word_prefix(w.len()) == *w,
        }
    }

    pub fn is_tight(&self, space: &LabelledSpace) -> bool {
        match self {
            TightFilter::Finite(f) => is_tight_finite_type(space, f),
            TightFilter::Lasso(l) => l.is_valid(space),
        }
    }

    /// Human-readable description used in reports.
    pub fn describe(&self, space: &LabelledSpace) -> String {
        let g = space.graph();
        match self {
            TightFilter::Finite(f) => format!("({}, ↑{})", g.format_word(&f.word), g.format_set(f.generator)),
            TightFilter::Lasso(l) => l.describe(space),
        }
    }
}

pub fn is_ultrafilter_in_es(space: &LabelledSpace, filter: &TightFilter) -> bool {
    match filter {
        TightFilter::Finite(f) => {
            let top = f.top_stage(space);
            top.is_ultrafilter(space) && sink_ultrafilters(space, &f.word).contains(&top)
        }
        TightFilter::Lasso(_) => true,
    }
}

/// Finite-type filters up to `word_bound` followed by lassos up to
/// `lasso_bound`.
pub fn tight_basis(space: &LabelledSpace, word_bound: usize, lasso_bound: usize) -> Vec<TightFilter> {
    let mut out: Vec<TightFilter> = enumerate_tight_finite(space, word_bound)
        .into_iter()
        .map(TightFilter::Finite)
        .collect();
    out.extend(
        enumerate_tight_lassos(space, lasso_bound)
            .lassos
            .into_iter()
            .map(TightFilter::Lasso),
    );
    out
}
