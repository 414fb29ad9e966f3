use std::collections::{BTreeMap, HashMap};

use nalgebra::DMatrix;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::Serialize;

use super::{rep_word, BasisKey, Gen, Operator, Representation};
use crate::error::Error;
use crate::filters::{spectrum_verdict, tight_basis, FiniteFilter, LassoFilter, SpectrumVerdict, Step, TightFilter};
use crate::labelled::{BaFilter, LabelledSpace, VertexSet, Word};
use crate::semigroup::{enumerate_elements, Triple};
use crate::surgery::{cut, glue};

/// ℓ² of the tight spectrum: P_A keeps δ_ξ when A ∈ ξ_0, S_a glues the letter
/// a in front of ξ, and S_a* removes it.
pub struct TightRep<'a> {
    space: &'a LabelledSpace,
    basis: Vec<TightFilter>,
    index: BTreeMap<TightFilter, usize>,
    exhaustive: bool,
}

impl<'a> TightRep<'a> {
    /// Basis: tight filters with words ≤ `word_bound` and lassos of size
    /// ≤ `lasso_bound`.
    pub fn new(space: &'a LabelledSpace, word_bound: usize, lasso_bound: usize) -> Self {
        let basis = tight_basis(space, word_bound, lasso_bound);
        let index = basis.iter().cloned().enumerate().map(|(i, f)| (f, i)).collect();
        let exhaustive = matches!(spectrum_verdict(space), Ok(SpectrumVerdict::Finite(n)) if n == basis.len());
        TightRep {
            space,
            basis,
            index,
            exhaustive,
        }
    }

    pub fn basis(&self) -> &[TightFilter] {
        &self.basis
    }

    pub fn keys(&self) -> Vec<BasisKey> {
        self.basis.iter().cloned().map(BasisKey::Tight).collect()
    }

    /// The basis is the whole tight spectrum.
    pub fn is_exhaustive(&self) -> bool {
        self.exhaustive
    }

    /// Matrix of `op` on the basis, column j being the image of the j-th
    /// basis vector. Needs an exhaustive basis.
    pub fn exact_matrix(&self, op: &Operator) -> Result<Vec<Vec<BigRational>>, Error> {
        if !self.exhaustive {
            return Err(Error::Precondition("the tight basis is not the whole spectrum".into()));
        }
        let n = self.basis.len();
        let mut m = vec![vec![BigRational::from_integer(0.into()); n]; n];
        for (j, f) in self.basis.iter().enumerate() {
            for (k, c) in op.apply_basis(self, &BasisKey::Tight(f.clone())).entries() {
                let BasisKey::Tight(g) = k else { unreachable!() };
                let i = *self
                    .index
                    .get(g)
                    .ok_or_else(|| Error::Inconsistent(format!("{} left the basis", g.describe(self.space))))?;
                m[i][j] = c.clone();
            }
        }
        Ok(m)
    }

    pub fn matrix(&self, op: &Operator) -> Result<DMatrix<f64>, Error> {
        let exact = self.exact_matrix(op)?;
        let n = exact.len();
        Ok(DMatrix::from_fn(n, n, |i, j| exact[i][j].to_f64().unwrap_or(f64::NAN)))
    }

    /// Largest singular value of `op` on the basis.
    pub fn norm(&self, op: &Operator) -> Result<f64, Error> {
        let m = self.matrix(op)?;
        if m.is_empty() {
            return Ok(0.0);
        }
        Ok(m.singular_values().max())
    }
}

impl Representation for TightRep<'_> {
    fn space(&self) -> &LabelledSpace {
        self.space
    }

    fn name(&self) -> &'static str {
        "tight"
    }

    fn act(&self, generator: Gen, key: &BasisKey) -> Option<BasisKey> {
        let BasisKey::Tight(xi) = key else { return None };
        let space = self.space;
        let stage0 = xi.stage0(space);
        match generator {
            Gen::P(a) => stage0.is_some_and(|s| s.contains(a)).then(|| key.clone()),
            Gen::S(a) => {
                let letter = Word::letter(a);
                if !stage0.is_some_and(|s| s.contains(space.range(&letter))) {
                    return None;
                }
                glue(space, &letter, xi).ok().map(BasisKey::Tight)
            }
            Gen::SAdj(a) => cut(space, &Word::letter(a), xi).ok().map(BasisKey::Tight),
        }
    }
}

/// A tight filter whose stage 0 contains `set`: starting from an atom below
/// `set`, follow the first available letter and atom until an atom of sinks
/// is reached or a stage repeats.
pub fn tight_witness(space: &LabelledSpace, set: VertexSet) -> Option<TightFilter> {
    let sinks = space.sinks();
    let mut u = *space
        .algebra(&Word::empty())
        .atoms()
        .iter()
        .find(|u| u.is_subset(set))?;
    let mut word = Word::empty();
    let mut steps: Vec<Step> = Vec::new();
    let mut seen: HashMap<BaFilter, usize> = HashMap::new();
    loop {
        if u.is_subset(sinks) {
            return Some(TightFilter::Finite(FiniteFilter { word, generator: u }));
        }
        let b = space.letters().find(|&b| !space.step(u, b).is_empty())?;
        word = word.pushed(b);
        let top = space.range(&word);
        let next = *space
            .algebra_at(top)
            .atoms()
            .iter()
            .find(|x| x.is_subset(space.step(u, b)))?;
        let node = BaFilter::new(top, next);
        if let Some(&j) = seen.get(&node) {
            let cycle = steps.split_off(j);
            return Some(TightFilter::Lasso(LassoFilter::new(space, steps, cycle)));
        }
        seen.insert(node, steps.len());
        steps.push(Step { letter: b, node });
        u = next;
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct NonvanishingReport {
    pub checked: usize,
    /// `(triple, witness filter)` for the first few triples.
    pub witnesses: Vec<(String, String)>,
    pub failures: Vec<String>,
}

impl NonvanishingReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn describe_triple(space: &LabelledSpace, t: &Triple) -> String {
    let g = space.graph();
    format!("({}, {}, {})", g.format_word(&t.left), g.format_set(t.set), g.format_word(&t.right))
}

/// For every non-zero (α, A, β) with |α|, |β| ≤ `bound`, finds a tight η with
/// A ∈ η_0 and checks S_α P_A S_β* δ_ξ ≠ 0 for ξ = G_(β)(η).
pub fn nonvanishing_check(rep: &TightRep, bound: usize) -> NonvanishingReport {
    let space = rep.space();
    let mut report = NonvanishingReport::default();
    for t in enumerate_elements(space, bound) {
        report.checked += 1;
        let witness = tight_witness(space, t.set).and_then(|eta| glue(space, &t.right, &eta).ok());
        let image = witness.as_ref().and_then(|xi| {
            let op = rep_word(space, &t).ok()?;
            let out = op.apply_basis(rep, &BasisKey::Tight(xi.clone()));
            (!out.is_zero()).then_some(out)
        });
        match (witness, image) {
            (Some(xi), Some(_)) => {
                if report.witnesses.len() < 20 {
                    report.witnesses.push((describe_triple(space, &t), xi.describe(space)));
                }
            }
            (Some(xi), None) => report
                .failures
                .push(format!("{} vanishes on {}", describe_triple(space, &t), xi.describe(space))),
            (None, _) => report.failures.push(format!("{}: no witness", describe_triple(space, &t))),
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use num_traits::{One, Zero};

    fn set(space: &LabelledSpace, names: &[&str]) -> VertexSet {
        space
            .graph()
            .parse_set(&names.iter().map(|s| s.to_string()).collect::<Vec<_>>())
            .unwrap()
    }

    fn ints(m: &[Vec<BigRational>]) -> Vec<Vec<i64>> {
        m.iter()
            .map(|r| r.iter().map(|c| c.to_integer().try_into().unwrap()).collect())
            .collect()
    }

    #[test]
    fn g1_matrices() {
        let g1 = fixtures::g1();
        let rep = TightRep::new(&g1, 3, 6);
        assert!(rep.is_exhaustive());
        assert_eq!(rep.basis().len(), 2);
        let s = rep.exact_matrix(&Operator::s(0)).unwrap();
        assert_eq!(ints(&s), vec![vec![0, 1], vec![1, 0]]);
        let ss = rep.exact_matrix(&Operator::s(0).then(&Operator::s_adj(0))).unwrap();
        assert_eq!(ints(&ss), vec![vec![1, 0], vec![0, 1]]);
        let v1 = set(&g1, &["v1"]);
        assert_eq!(ints(&rep.exact_matrix(&Operator::p(v1)).unwrap()), vec![vec![1, 0], vec![0, 0]]);
        let t = Triple::idempotent(Word::letter(0), v1);
        assert_eq!(ints(&rep.exact_matrix(&rep_word(&g1, &t).unwrap()).unwrap()), vec![vec![0, 0], vec![0, 1]]);
        assert!((rep.norm(&Operator::p(v1)).unwrap() - 1.0).abs() < 1e-12);
        assert!(rep.exact_matrix(&Operator::p(VertexSet::EMPTY)).unwrap().iter().flatten().all(Zero::is_zero));
    }

    #[test]
    fn g2_actions() {
        let g2 = fixtures::g2();
        let rep = TightRep::new(&g2, 3, 6);
        assert!(rep.is_exhaustive());
        let w = set(&g2, &["w"]);
        let at_e = BasisKey::Tight(TightFilter::Finite(FiniteFilter { word: Word::empty(), generator: w }));
        let at_a = BasisKey::Tight(TightFilter::Finite(FiniteFilter { word: Word::letter(0), generator: w }));
        assert_eq!(rep.act(Gen::S(0), &at_e), Some(at_a.clone()));
        assert_eq!(rep.act(Gen::S(0), &at_a), None);
        assert_eq!(rep.act(Gen::P(w), &at_e), Some(at_e.clone()));
        assert_eq!(rep.act(Gen::P(w), &at_a), None);

        let t = Triple { left: Word::letter(0), set: w, right: Word::empty() };
        let m = rep.exact_matrix(&rep_word(&g2, &t).unwrap()).unwrap();
        let ones: usize = m.iter().flatten().filter(|c| c.is_one()).count();
        assert_eq!(ones, 1);
        assert!(m[1][0].is_one());
    }

    #[test]
    fn isometry_relations_on_finite_bases() {
        for space in [fixtures::g1(), fixtures::g2()] {
            let rep = TightRep::new(&space, 3, 6);
            let keys = rep.keys();
            for w in space.graph().words_up_to(3) {
                let mut s = Operator::identity();
                for &a in w.letters() {
                    s = s.then(&Operator::s(a));
                }
                let lhs = s.adjoint().then(&s);
                let rhs = if w.is_empty() { Operator::identity() } else { Operator::p(space.range(&w)) };
                assert_eq!(super::super::first_difference(&rep, &lhs, &rhs, &keys), None);
                for v in space.graph().words_up_to(3) {
                    if !v.comparable(&w) {
                        let mut sv = Operator::identity();
                        for &a in v.letters() {
                            sv = sv.then(&Operator::s(a));
                        }
                        let prod = sv.adjoint().then(&s);
                        assert_eq!(super::super::first_difference(&rep, &prod, &Operator::zero(), &keys), None);
                    }
                }
            }
        }
    }

    #[test]
    fn witnesses() {
        for (_, space) in fixtures::all() {
            for &a in space.family().members() {
                if a.is_empty() {
                    continue;
                }
                let xi = tight_witness(&space, a).unwrap();
                assert!(xi.is_tight(&space));
                assert!(xi.stage0(&space).unwrap().contains(a));
            }
        }
        let g2 = fixtures::g2();
        let w = set(&g2, &["w"]);
        assert_eq!(
            tight_witness(&g2, w),
            Some(TightFilter::Finite(FiniteFilter { word: Word::empty(), generator: w }))
        );
    }

    #[test]
    fn nonvanishing_on_fixtures() {
        for (_, space) in fixtures::all() {
            let rep = TightRep::new(&space, 3, 6);
            let report = nonvanishing_check(&rep, 2);
            assert!(report.passed(), "{:?}", report.failures);
            assert_eq!(report.checked, enumerate_elements(&space, 2).len());
        }
        let g2 = fixtures::g2();
        let rep = TightRep::new(&g2, 3, 6);
        let report = nonvanishing_check(&rep, 1);
        assert!(report.witnesses.contains(&("(a, {w}, a)".to_string(), "(a, ↑{w})".to_string())));
    }
}
