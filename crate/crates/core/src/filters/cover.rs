use super::TightFilter;
use crate::labelled::LabelledSpace;
use crate::semigroup::{enumerate_idempotents, leq, multiply, Element, Triple};

/// An element of the filter together with a finite cover of it that the
/// filter misses entirely.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverCounterexample {
    pub element: Triple,
    pub cover: Vec<Triple>,
}

/// Letter parts (αb, r(A, b), αb) plus the largest sink part (α, B, α) with
/// B ⊆ A ∩ sinks.
fn canonical_cover(space: &LabelledSpace, x: &Triple) -> Vec<Triple> {
    let mut cover: Vec<Triple> = space
        .letters()
        .filter_map(|b| {
            let set = space.step(x.set, b);
            (!set.is_empty()).then(|| Triple::idempotent(x.left.pushed(b), set))
        })
        .collect();
    let sink_part = space.largest_member_within(space.range(&x.left), x.set.intersection(space.sinks()));
    if !sink_part.is_empty() {
        cover.push(Triple::idempotent(x.left.clone(), sink_part));
    }
    cover
}

/// Every non-zero y ≤ x with word length ≤ `depth` meets some member of `cover`.
fn covers_up_to(space: &LabelledSpace, x: &Triple, cover: &[Triple], depth: usize) -> bool {
    enumerate_idempotents(space, depth)
        .iter()
        .filter(|y| leq(space, y, x).unwrap_or(false))
        .all(|y| {
            cover.iter().any(|z| {
                !multiply(space, &Element::from(y.clone()), &Element::from(z.clone())).is_zero()
            })
        })
}

/// Searches the members of `filter` with word length ≤ `depth` for one whose
/// canonical cover the filter misses. A hit disproves tightness; no hit
/// proves nothing.
pub fn bounded_cover_falsifier(space: &LabelledSpace, filter: &TightFilter, depth: usize) -> Option<CoverCounterexample> {
    for x in enumerate_idempotents(space, depth) {
        if !filter.contains(space, &x) {
            continue;
        }
        let cover = canonical_cover(space, &x);
        if !covers_up_to(space, &x, &cover, depth + 1) {
            continue;
        }
        if !cover.iter().any(|z| filter.contains(space, z)) {
            return Some(CoverCounterexample { element: x, cover });
        }
    }
    None
}
