//! The inverse semigroup of triples (α, A, β) with a zero.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::error::Error;
use crate::labelled::{LabelledSpace, VertexSet, Word};

/// A non-zero element (α, A, β).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Triple {
    pub left: Word,
    pub set: VertexSet,
    pub right: Word,
}

impl Triple {
    pub fn idempotent(word: Word, set: VertexSet) -> Self {
        Triple {
            left: word.clone(),
            set,
            right: word,
        }
    }

    pub fn is_idempotent(&self) -> bool {
        self.left == self.right
    }

    pub fn adjoint(&self) -> Triple {
        Triple {
            left: self.right.clone(),
            set: self.set,
            right: self.left.clone(),
        }
    }
}

impl fmt::Debug for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?}, {:?}, {:?})", self.left.letters(), self.set, self.right.letters())
    }
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Element {
    Zero,
    Triple(Triple),
}

impl Element {
    pub fn is_zero(&self) -> bool {
        matches!(self, Element::Zero)
    }

    pub fn as_triple(&self) -> Option<&Triple> {
        match self {
            Element::Zero => None,
            Element::Triple(t) => Some(t),
        }
    }

    pub fn is_idempotent(&self) -> bool {
        self.as_triple().is_none_or(Triple::is_idempotent)
    }
}

impl From<Triple> for Element {
    fn from(t: Triple) -> Self {
        Element::Triple(t)
    }
}

/// Validates (α, A, β): A non-empty, in the family, and inside r(α) ∩ r(β).
pub fn make_element(space: &LabelledSpace, left: Word, set: VertexSet, right: Word) -> Result<Element, Error> {
    if set.is_empty() {
        return Err(Error::InvalidElement("empty set; use Zero".into()));
    }
    if !space.family().contains(set) {
        return Err(Error::InvalidElement(format!(
            "{} is not in the family",
            space.graph().format_set(set)
        )));
    }
    if !set.is_subset(space.range(&left)) || !set.is_subset(space.range(&right)) {
        return Err(Error::InvalidElement(format!(
            "{} is not below r(α) ∩ r(β)",
            space.graph().format_set(set)
        )));
    }
    Ok(Element::Triple(Triple { left, set, right }))
}

fn normalized(space: &LabelledSpace, left: Word, set: VertexSet, right: Word) -> Element {
    let set = set
        .intersection(space.range(&left))
        .intersection(space.range(&right));
    if set.is_empty() {
        Element::Zero
    } else {
        Element::Triple(Triple { left, set, right })
    }
}

/// The product. When β = γ both gluing cases give (α, A ∩ B, δ); the first
/// branch covers it.
pub fn multiply(space: &LabelledSpace, s: &Element, t: &Element) -> Element {
    let (Element::Triple(x), Element::Triple(y)) = (s, t) else {
        return Element::Zero;
    };
    if let Some(tail) = y.left.strip_prefix(&x.right) {
        let set = space.relative_range(x.set, &tail).intersection(y.set);
        normalized(space, x.left.concat(&tail), set, y.right.clone())
    } else if let Some(tail) = x.right.strip_prefix(&y.left) {
        let set = x.set.intersection(space.relative_range(y.set, &tail));
        normalized(space, x.left.clone(), set, y.right.concat(&tail))
    } else {
        Element::Zero
    }
}

pub fn involution(s: &Element) -> Element {
    match s {
        Element::Zero => Element::Zero,
        Element::Triple(t) => Element::Triple(t.adjoint()),
    }
}

/// (α, A, α) ≤ (β, B, β) iff α = βα′ and A ⊆ r(B, α′).
pub fn leq(space: &LabelledSpace, p: &Triple, q: &Triple) -> Result<bool, Error> {
    if !p.is_idempotent() || !q.is_idempotent() {
        return Err(Error::NotIdempotent);
    }
    Ok(match p.left.strip_prefix(&q.left) {
        Some(tail) => p.set.is_subset(space.relative_range(q.set, &tail)),
        None => false,
    })
}

pub fn meet(space: &LabelledSpace, p: &Element, q: &Element) -> Result<Element, Error> {
    if !p.is_idempotent() || !q.is_idempotent() {
        return Err(Error::NotIdempotent);
    }
    Ok(multiply(space, p, q))
}

/// Non-zero idempotents (α, A, α) with |α| ≤ `bound`, ordered by word then set.
pub fn enumerate_idempotents(space: &LabelledSpace, bound: usize) -> Vec<Triple> {
    let mut out = Vec::new();
    for w in space.graph().words_up_to(bound) {
        for &a in space.algebra(&w).members() {
            if !a.is_empty() {
                out.push(Triple::idempotent(w.clone(), a));
            }
        }
    }
    out
}

/// All non-zero triples with |α|, |β| ≤ `bound`.
pub fn enumerate_elements(space: &LabelledSpace, bound: usize) -> Vec<Triple> {
    let words = space.graph().words_up_to(bound);
    let mut out = Vec::new();
    for l in &words {
        for r in &words {
            let top = space.range(l).intersection(space.range(r));
            for &a in space.algebra_at(top).members() {
                if !a.is_empty() {
                    out.push(Triple {
                        left: l.clone(),
                        set: a,
                        right: r.clone(),
                    });
                }
            }
        }
    }
    out
}

/// Law tallies over all triples with word length ≤ the bound.
#[derive(Clone, Debug, Default, Serialize)]
pub struct SemigroupReport {
    pub elements: usize,
    pub idempotents: usize,
    pub checked: BTreeMap<String, usize>,
    pub violations: Vec<String>,
}

impl SemigroupReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    fn record(&mut self, law: &str, holds: bool, witness: impl FnOnce() -> String) {
        *self.checked.entry(law.to_string()).or_default() += 1;
        if !holds && self.violations.len() < 20 {
            self.violations.push(format!("{law}: {}", witness()));
        }
    }
}

/// Associativity, the inverse laws, commuting idempotents, the order as
/// p·q = p, and closure of the product under the element invariants.
pub fn semigroup_suite(space: &LabelledSpace, bound: usize) -> SemigroupReport {
    let elements: Vec<Element> = enumerate_elements(space, bound).into_iter().map(Element::from).collect();
    let idempotents = enumerate_idempotents(space, bound);
    let mut report = SemigroupReport {
        elements: elements.len(),
        idempotents: idempotents.len(),
        ..Default::default()
    };
    let valid = |e: &Element| match e {
        Element::Zero => true,
        Element::Triple(t) => make_element(space, t.left.clone(), t.set, t.right.clone()).is_ok(),
    };
    for s in &elements {
        let star = involution(s);
        report.record("s** = s", involution(&star) == *s, || format!("{s:?}"));
        let sss = multiply(space, &multiply(space, s, &star), s);
        report.record("s s* s = s", sss == *s, || format!("{s:?}"));
        let rev = multiply(space, &multiply(space, &star, s), &star);
        report.record("s* s s* = s*", rev == star, || format!("{s:?}"));
        for t in &elements {
            let st = multiply(space, s, t);
            report.record("products are valid", valid(&st), || format!("{s:?}·{t:?}"));
            report.record(
                "(st)* = t* s*",
                involution(&st) == multiply(space, &involution(t), &star),
                || format!("{s:?}, {t:?}"),
            );
            for u in &elements {
                let lhs = multiply(space, &st, u);
                let rhs = multiply(space, s, &multiply(space, t, u));
                report.record("(st)u = s(tu)", lhs == rhs, || format!("{s:?}, {t:?}, {u:?}"));
            }
        }
    }
    for p in &idempotents {
        let pe = Element::from(p.clone());
        for q in &idempotents {
            let qe = Element::from(q.clone());
            let pq = multiply(space, &pe, &qe);
            report.record("pq = qp", pq == multiply(space, &qe, &pe), || format!("{p:?}, {q:?}"));
            let below = leq(space, p, q).unwrap_or(false);
            report.record("p ≤ q ⇔ pq = p", below == (pq == pe), || format!("{p:?}, {q:?}"));
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn set(space: &LabelledSpace, names: &[&str]) -> VertexSet {
        space
            .graph()
            .parse_set(&names.iter().map(|s| s.to_string()).collect::<Vec<_>>())
            .unwrap()
    }

    #[test]
    fn construction() {
        let g1 = fixtures::g1();
        let a = Word::letter(0);
        assert!(make_element(&g1, a.clone(), set(&g1, &["v1"]), a.clone()).is_ok());
        assert!(make_element(&g1, a.clone(), set(&g1, &["v2", "v3"]), Word::empty()).is_ok());
        assert!(make_element(&g1, a.clone(), VertexSet::EMPTY, a.clone()).is_err());
        assert!(make_element(&g1, a.clone(), set(&g1, &["v2"]), a).is_err());
    }

    #[test]
    fn products_in_g1() {
        let g1 = fixtures::g1();
        let a = Word::letter(0);
        let top: Element = Triple::idempotent(Word::empty(), g1.graph().all_vertices()).into();
        let p: Element = Triple::idempotent(a.clone(), set(&g1, &["v1"])).into();
        let q: Element = Triple::idempotent(a, set(&g1, &["v2", "v3"])).into();
        assert_eq!(multiply(&g1, &top, &p), p);
        assert_eq!(multiply(&g1, &p, &q), Element::Zero);
        assert_eq!(multiply(&g1, &p, &Element::Zero), Element::Zero);
    }

    #[test]
    fn involution_examples() {
        let g1 = fixtures::g1();
        let s: Element = Triple {
            left: Word::letter(0),
            set: set(&g1, &["v1"]),
            right: Word::empty(),
        }
        .into();
        let expected: Element = Triple {
            left: Word::empty(),
            set: set(&g1, &["v1"]),
            right: Word::letter(0),
        }
        .into();
        assert_eq!(involution(&s), expected);
        assert_eq!(involution(&Element::Zero), Element::Zero);
    }

    #[test]
    fn order_examples() {
        let g1 = fixtures::g1();
        let a = Word::letter(0);
        let p = Triple::idempotent(a.clone(), set(&g1, &["v1"]));
        let q = Triple::idempotent(Word::empty(), set(&g1, &["v2", "v3"]));
        let r = Triple::idempotent(Word::empty(), set(&g1, &["v1"]));
        assert!(leq(&g1, &p, &q).unwrap());
        assert!(!leq(&g1, &p, &r).unwrap());
        assert!(leq(&g1, &p, &p).unwrap());
        let s = Triple {
            left: a,
            set: set(&g1, &["v1"]),
            right: Word::empty(),
        };
        assert_eq!(leq(&g1, &s, &p), Err(Error::NotIdempotent));
    }

    #[test]
    fn meets() {
        let g1 = fixtures::g1();
        let e: Element = Triple::idempotent(Word::empty(), set(&g1, &["v1"])).into();
        let f: Element = Triple::idempotent(Word::empty(), set(&g1, &["v2", "v3"])).into();
        assert_eq!(meet(&g1, &e, &f).unwrap(), Element::Zero);
        assert_eq!(meet(&g1, &e, &e).unwrap(), e);
    }

    #[test]
    fn idempotent_counts() {
        assert_eq!(enumerate_idempotents(&fixtures::g1(), 0).len(), 3);
        assert_eq!(enumerate_idempotents(&fixtures::g1(), 1).len(), 6);
        assert_eq!(enumerate_idempotents(&fixtures::g2(), 1).len(), 4);
    }

    #[test]
    fn exhaustive_laws() {
        for space in [fixtures::g1(), fixtures::g2()] {
            let elems: Vec<Element> = enumerate_elements(&space, 2)
                .into_iter()
                .map(Element::from)
                .chain([Element::Zero])
                .collect();
            for s in &elems {
                let ss = involution(s);
                assert_eq!(&multiply(&space, &multiply(&space, s, &ss), s), s);
                assert_eq!(multiply(&space, &multiply(&space, &ss, s), &ss), ss);
                assert_eq!(&involution(&ss), s);
                for t in &elems {
                    let st = multiply(&space, s, t);
                    if let Element::Triple(x) = &st {
                        assert!(make_element(&space, x.left.clone(), x.set, x.right.clone()).is_ok());
                    }
                    for u in &elems {
                        assert_eq!(
                            multiply(&space, &st, u),
                            multiply(&space, s, &multiply(&space, t, u))
                        );
                    }
                }
            }
            let idem = enumerate_idempotents(&space, 2);
            for p in &idem {
                for q in &idem {
                    let (pe, qe) = (Element::from(p.clone()), Element::from(q.clone()));
                    assert_eq!(multiply(&space, &pe, &qe), multiply(&space, &qe, &pe));
                    assert_eq!(leq(&space, p, q).unwrap(), multiply(&space, &pe, &qe) == pe);
                }
            }
        }
    }

    #[test]
    fn suite_passes_on_fixtures() {
        for (name, space) in fixtures::all() {
            let report = semigroup_suite(&space, 2);
            assert!(report.passed(), "{name}: {:?}", report.violations);
            assert_eq!(report.checked["(st)u = s(tu)"], report.elements.pow(3));
        }
        assert_eq!(semigroup_suite(&fixtures::g2(), 1).idempotents, 4);
    }
}
