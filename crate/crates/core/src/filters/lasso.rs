use std::collections::{BTreeSet, HashMap};

use super::automaton::build_stage_automaton;
use super::f_from_top;
use crate::labelled::{BaFilter, LabelledSpace, Letter, VertexSet, Word};
use crate::semigroup::Triple;

/// One stage n ≥ 1 of an infinite-type filter: the n-th letter and the stage
/// ultrafilter (top r(α_{1,n}), atom U_n).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Step {
    pub letter: Letter,
    pub node: BaFilter,
}

/// Reduces an eventually periodic sequence `prefix · cycle^ω` to its minimal
/// preperiod and primitive period. The cycle then starts right after the
/// prefix, so its rotation is fixed as well.
pub fn canonical_lasso<T: Clone + PartialEq>(mut prefix: Vec<T>, mut cycle: Vec<T>) -> (Vec<T>, Vec<T>) {
    assert!(!cycle.is_empty(), "cycle must be non-empty");
    let m = cycle.len();
    if let Some(d) = (1..=m).find(|&d| m % d == 0 && (0..m).all(|i| cycle[i] == cycle[i % d])) {
        cycle.truncate(d);
    }
    while let (Some(p), Some(c)) = (prefix.last(), cycle.last()) {
        if p != c {
            break;
        }
        prefix.pop();
        cycle.rotate_right(1);
    }
    (prefix, cycle)
}

/// An infinite-type filter whose stage sequence is eventually periodic.
///
/// Ordering compares the stage-0 generator first, then prefix and cycle.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LassoFilter {
    stage0: Option<VertexSet>,
    prefix: Vec<Step>,
    cycle: Vec<Step>,
}

impl LassoFilter {
    /// Canonicalises `prefix · cycle^ω` and derives stage 0.
    pub fn new(space: &LabelledSpace, prefix: Vec<Step>, cycle: Vec<Step>) -> Self {
        let (prefix, cycle) = canonical_lasso(prefix, cycle);
        let first = prefix.first().unwrap_or(&cycle[0]);
        let stage0 = f_from_top(
            space,
            space.graph().all_vertices(),
            &Word::letter(first.letter),
            &first.node,
        )
        .map(|f| f.generator);
        LassoFilter {
            stage0,
            prefix,
            cycle,
        }
    }

    pub fn prefix(&self) -> &[Step] {
        &self.prefix
    }

    pub fn cycle(&self) -> &[Step] {
        &self.cycle
    }

    pub fn size(&self) -> usize {
        self.prefix.len() + self.cycle.len()
    }

    pub fn stage0_generator(&self) -> Option<VertexSet> {
        self.stage0
    }

    /// Stage `n ≥ 1`.
    pub fn step(&self, n: usize) -> Step {
        assert!(n >= 1);
        if n <= self.prefix.len() {
            self.prefix[n - 1]
        } else {
            self.cycle[(n - self.prefix.len() - 1) % self.cycle.len()]
        }
    }

    pub fn unroll(&self, n: usize) -> Vec<Step> {
        (1..=n).map(|i| self.step(i)).collect()
    }

    pub fn word_prefix(&self, n: usize) -> Word {
        Word::from_letters((1..=n).map(|i| self.step(i).letter).collect())
    }

    pub fn stage(&self, space: &LabelledSpace, n: usize) -> Option<BaFilter> {
        if n == 0 {
            self.stage0
                .map(|g| BaFilter::new(space.graph().all_vertices(), g))
        } else {
            Some(self.step(n).node)
        }
    }

    pub fn contains(&self, space: &LabelledSpace, x: &Triple) -> bool {
        if !x.is_idempotent() || !space.family().contains(x.set) {
            return false;
        }
        let n = x.left.len();
        if self.word_prefix(n) != x.left {
            return false;
        }
        self.stage(space, n).is_some_and(|f| f.contains(x.set))
    }

    /// The stage sequence is an infinite walk of the stage automaton in
    /// canonical form.
    pub fn is_valid(&self, space: &LabelledSpace) -> bool {
        if self.cycle.is_empty() {
            return false;
        }
        let (p, c) = canonical_lasso(self.prefix.clone(), self.cycle.clone());
        if p != self.prefix || c != self.cycle {
            return false;
        }
        let steps = self.unroll(self.size() + 1);
        let mut top = space.graph().all_vertices();
        for (i, s) in steps.iter().enumerate() {
            top = space.step(top, s.letter);
            if s.node.top != top || !space.algebra_at(top).is_atom(s.node.generator) {
                return false;
            }
            if i > 0 {
                let back = f_from_top(space, steps[i - 1].node.top, &Word::letter(s.letter), &s.node);
                if back != Some(steps[i - 1].node) {
                    return false;
                }
            }
        }
        let stage0 = f_from_top(space, space.graph().all_vertices(), &Word::letter(steps[0].letter), &steps[0].node);
        stage0.map(|f| f.generator) == self.stage0
    }

    pub fn describe(&self, space: &LabelledSpace) -> String {
        let g = space.graph();
        let fmt_steps = |steps: &[Step]| -> String {
            steps
                .iter()
                .map(|s| format!("{}:{}", g.alphabet()[s.letter], g.format_set(s.node.generator)))
                .collect::<Vec<_>>()
                .join(" ")
        };
        let head = match self.stage0 {
            Some(s) => format!("↑{}", g.format_set(s)),
            None => "∅".to_string(),
        };
        if self.prefix.is_empty() {
            format!("{} ({})^ω", head, fmt_steps(&self.cycle))
        } else {
            format!("{} {} ({})^ω", head, fmt_steps(&self.prefix), fmt_steps(&self.cycle))
        }
    }
}

/// Re-tops the stages of an eventually periodic sequence of
/// `(letter, generator)` pairs after dropping the first `offset` entries:
/// the new tops start from `top_before` and follow the letters, and each
/// generator is cut down to its new top. Returns the result as an
/// uncanonicalised `(prefix, cycle)` pair.
pub(crate) fn retopped_tail(
    space: &LabelledSpace,
    prefix: &[(Letter, VertexSet)],
    cycle: &[(Letter, VertexSet)],
    offset: usize,
    top_before: VertexSet,
) -> (Vec<Step>, Vec<Step>) {
    assert!(!cycle.is_empty());
    let at = |n: usize| -> (Letter, VertexSet) {
        if n <= prefix.len() {
            prefix[n - 1]
        } else {
            cycle[(n - prefix.len() - 1) % cycle.len()]
        }
    };
    let start = prefix.len().max(offset);
    let mut seen: HashMap<(usize, VertexSet), usize> = HashMap::new();
    let mut out: Vec<Step> = Vec::new();
    let mut top = top_before;
    let mut n = offset;
    loop {
        if n >= start {
            let key = ((n - prefix.len()) % cycle.len(), top);
            if let Some(&j) = seen.get(&key) {
                let cyc = out.split_off(j);
                return (out, cyc);
            }
            seen.insert(key, out.len());
        }
        n += 1;
        let (letter, generator) = at(n);
        top = space.step(top, letter);
        out.push(Step {
            letter,
            node: BaFilter::new(top, generator.intersection(top)),
        });
    }
}

/// Canonical lassos with |prefix| + |cycle| ≤ `size_bound`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LassoEnumeration {
    pub lassos: Vec<LassoFilter>,
    /// The list contains every infinite-type tight filter.
    pub exhaustive: bool,
}

fn walks_to_lassos(space: &LabelledSpace, size_bound: usize) -> BTreeSet<LassoFilter> {
    let Ok(aut) = build_stage_automaton(space) else {
        return BTreeSet::new();
    };
    let mut found = BTreeSet::new();
    let mut stack: Vec<Vec<(Letter, usize)>> = aut.initial().iter().map(|&e| vec![e]).collect();
    while let Some(walk) = stack.pop() {
        let last = walk.last().expect("walks are non-empty").1;
        for k in 0..walk.len() {
            let (letter, target) = walk[k];
            if aut.has_edge(last, letter, target) {
                let to_steps = |part: &[(Letter, usize)]| -> Vec<Step> {
                    part.iter()
                        .map(|&(l, v)| Step {
                            letter: l,
                            node: aut.nodes()[v],
                        })
                        .collect()
                };
                found.insert(LassoFilter::new(space, to_steps(&walk[..k]), to_steps(&walk[k..])));
            }
        }
        if walk.len() < size_bound {
            for &e in aut.successors(last) {
                let mut next = walk.clone();
                next.push(e);
                stack.push(next);
            }
        }
    }
    found.into_iter().filter(|l| l.size() <= size_bound).collect()
}

/// Enumerates infinite-type tight filters as lassos over the stage automaton.
///
/// When no live node past a cycle branches, every infinite walk has a
/// canonical lasso of size at most twice the node count; `exhaustive` is set
/// when all of those are within `size_bound`.
pub fn enumerate_tight_lassos(space: &LabelledSpace, size_bound: usize) -> LassoEnumeration {
    let Ok(aut) = build_stage_automaton(space) else {
        return LassoEnumeration {
            lassos: Vec::new(),
            exhaustive: false,
        };
    };
    let found = walks_to_lassos(space, size_bound);
    let exhaustive = aut.lassos_finite() && {
        let full = 2 * aut.nodes().len();
        full <= size_bound || walks_to_lassos(space, full).len() == found.len()
    };
    LassoEnumeration {
        lassos: found.into_iter().collect(),
        exhaustive,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use proptest::prelude::*;

    #[test]
    fn canonical_examples() {
        assert_eq!(canonical_lasso(vec![1, 2], vec![1, 2]), (vec![], vec![1, 2]));
        assert_eq!(canonical_lasso(vec![0, 2], vec![1, 2]), (vec![0], vec![2, 1]));
        assert_eq!(canonical_lasso(vec![], vec![3, 3, 3]), (vec![], vec![3]));
        assert_eq!(canonical_lasso(vec![5], vec![4, 5, 4, 5]), (vec![], vec![5, 4]));
    }

    fn unroll<T: Clone>(p: &[T], c: &[T], n: usize) -> Vec<T> {
        (0..n)
            .map(|i| if i < p.len() { p[i].clone() } else { c[(i - p.len()) % c.len()].clone() })
            .collect()
    }

    proptest! {
        #[test]
        fn canonical_form_is_stable(p in proptest::collection::vec(0u8..3, 0..5),
                                    c in proptest::collection::vec(0u8..3, 1..5)) {
            let (cp, cc) = canonical_lasso(p.clone(), c.clone());
            let twice = canonical_lasso(cp.clone(), cc.clone());
            prop_assert_eq!(&twice, &(cp.clone(), cc.clone()));
            let n = 3 * (p.len() + c.len());
            prop_assert_eq!(unroll(&p, &c, n), unroll(&cp, &cc, n));
        }

        #[test]
        fn same_sequence_same_canonical_form(p in proptest::collection::vec(0u8..2, 0..4),
                                             c in proptest::collection::vec(0u8..2, 1..4),
                                             extra in 0usize..4, reps in 1usize..3) {
            // unroll `extra` more stages into the prefix and repeat the cycle
            let p2 = unroll(&p, &c, p.len() + extra);
            let rotated: Vec<u8> = (0..c.len()).map(|i| c[(i + extra) % c.len()]).collect();
            let c2: Vec<u8> = rotated.iter().cycle().take(c.len() * reps).copied().collect();
            prop_assert_eq!(canonical_lasso(p, c), canonical_lasso(p2, c2));
        }
    }

    #[test]
    fn g1_has_two_lassos() {
        let g1 = fixtures::g1();
        let e = enumerate_tight_lassos(&g1, 6);
        assert!(e.exhaustive);
        assert_eq!(e.lassos.len(), 2);
        let v1 = g1.graph().parse_set(&["v1".into()]).unwrap();
        let v23 = g1.graph().parse_set(&["v2".into(), "v3".into()]).unwrap();
        // ordered by stage 0: ↑{v1} first
        assert_eq!(e.lassos[0].stage0_generator(), Some(v1));
        assert_eq!(e.lassos[1].stage0_generator(), Some(v23));
        for l in &e.lassos {
            assert!(l.prefix().is_empty());
            assert_eq!(l.cycle().len(), 2);
            assert!(l.is_valid(&g1));
        }
        assert_eq!(e.lassos[0].step(1).node.generator, v23);
    }

    #[test]
    fn g2_and_g1p_lassos() {
        let g2 = enumerate_tight_lassos(&fixtures::g2(), 6);
        assert!(g2.lassos.is_empty() && g2.exhaustive);
        let g1p = fixtures::g1p();
        let e = enumerate_tight_lassos(&g1p, 6);
        assert!(e.exhaustive);
        assert_eq!(e.lassos.len(), 2);
        assert!(e.lassos.iter().all(|l| l.is_valid(&g1p)));
    }

    #[test]
    fn small_bound_is_not_exhaustive() {
        let e = enumerate_tight_lassos(&fixtures::g1(), 1);
        assert!(e.lassos.is_empty());
        assert!(!e.exhaustive);
    }

    #[test]
    fn single_loop_has_one_lasso() {
        let space = fixtures::single_loop();
        let e = enumerate_tight_lassos(&space, 4);
        assert_eq!(e.lassos.len(), 1);
        assert!(e.exhaustive);
    }

    #[test]
    fn retopping_recovers_the_lasso() {
        let g1 = fixtures::g1();
        for l in enumerate_tight_lassos(&g1, 6).lassos {
            let pairs = |s: &[Step]| s.iter().map(|s| (s.letter, s.node.generator)).collect::<Vec<_>>();
            let (p, c) = retopped_tail(&g1, &pairs(l.prefix()), &pairs(l.cycle()), 0, g1.graph().all_vertices());
            assert_eq!(LassoFilter::new(&g1, p, c), l);
        }
    }
}
