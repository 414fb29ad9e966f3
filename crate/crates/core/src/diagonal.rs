//! Linear combinations of the projections s_α p_A s_α*, multiplied through
//! the idempotent product alone. Identities proved here hold in every
//! quotient, in particular in the diagonal subalgebra.

use std::collections::{BTreeMap, BTreeSet};

use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::Error;
use crate::filters::{enumerate_tight_lassos, tight_basis, FiniteFilter, TightFilter};
use crate::labelled::{LabelledSpace, VertexSet, Word};
use crate::repr::{rep_word, Operator, TightRep};
use crate::semigroup::{enumerate_idempotents, leq, make_element, multiply, Element, Triple};

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DiagonalElement(BTreeMap<Triple, BigRational>);

fn check_idempotent(space: &LabelledSpace, t: &Triple) -> Result<(), Error> {
    if !t.is_idempotent() {
        return Err(Error::NotIdempotent);
    }
    make_element(space, t.left.clone(), t.set, t.right.clone()).map(|_| ())
}

impl DiagonalElement {
    pub fn zero() -> Self {
        DiagonalElement(BTreeMap::new())
    }

    pub fn term(space: &LabelledSpace, t: Triple, c: BigRational) -> Result<Self, Error> {
        check_idempotent(space, &t)?;
        let mut x = Self::zero();
        x.add_term(t, c);
        Ok(x)
    }

    pub fn projection(space: &LabelledSpace, t: Triple) -> Result<Self, Error> {
        Self::term(space, t, BigRational::one())
    }

    pub fn terms(&self) -> &BTreeMap<Triple, BigRational> {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn coefficient(&self, t: &Triple) -> BigRational {
        self.0.get(t).cloned().unwrap_or_else(BigRational::zero)
    }

    fn add_term(&mut self, t: Triple, c: BigRational) {
        let slot = self.0.entry(t.clone()).or_insert_with(BigRational::zero);
        *slot += c;
        if slot.is_zero() {
            self.0.remove(&t);
        }
    }

    pub fn plus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (t, c) in &other.0 {
            out.add_term(t.clone(), c.clone());
        }
        out
    }

    pub fn minus(&self, other: &Self) -> Self {
        self.plus(&other.scaled(&-BigRational::one()))
    }

    pub fn scaled(&self, c: &BigRational) -> Self {
        let mut out = Self::zero();
        for (t, d) in &self.0 {
            out.add_term(t.clone(), c * d);
        }
        out
    }

    /// The element as an operator expression Σ λ S_α P_A S_α*.
    pub fn to_operator(&self, space: &LabelledSpace) -> Operator {
        self.0.iter().fold(Operator::zero(), |acc, (t, c)| {
            acc.plus(&rep_word(space, t).expect("keys are valid").scaled(c))
        })
    }
}

/// Bilinear extension of the product of idempotents.
pub fn multiply_diag(space: &LabelledSpace, x: &DiagonalElement, y: &DiagonalElement) -> DiagonalElement {
    let mut out = DiagonalElement::zero();
    for (s, c) in &x.0 {
        for (t, d) in &y.0 {
            if let Element::Triple(p) = multiply(space, &Element::from(s.clone()), &Element::from(t.clone())) {
                out.add_term(p, c * d);
            }
        }
    }
    out
}

/// Non-zero idempotents any two of which are orthogonal or comparable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainedFamily(Vec<Triple>);

impl ChainedFamily {
    pub fn new(space: &LabelledSpace, members: impl IntoIterator<Item = Triple>) -> Result<Self, Error> {
        let members: Vec<Triple> = members.into_iter().collect::<BTreeSet<_>>().into_iter().collect();
        for t in &members {
            check_idempotent(space, t)?;
        }
        for (i, u) in members.iter().enumerate() {
            for v in &members[i + 1..] {
                let orthogonal = multiply(space, &Element::from(u.clone()), &Element::from(v.clone())).is_zero();
                if !orthogonal && !leq(space, u, v)? && !leq(space, v, u)? {
                    return Err(Error::Inconsistent(format!("{u:?} and {v:?} overlap without nesting")));
                }
            }
        }
        Ok(ChainedFamily(members))
    }

    pub fn members(&self) -> &[Triple] {
        &self.0
    }

    pub fn contains(&self, t: &Triple) -> bool {
        self.0.binary_search(t).is_ok()
    }

    fn below(&self, space: &LabelledSpace, u: &Triple) -> Vec<&Triple> {
        self.0
            .iter()
            .filter(|v| *v != u && leq(space, v, u).unwrap_or(false))
            .collect()
    }
}

/// Splits the union of `sets` by which sets contain each vertex.
fn signature_cells(sets: &[VertexSet]) -> Vec<VertexSet> {
    let union = sets.iter().fold(VertexSet::EMPTY, |acc, &s| acc.union(s));
    let mut cells: BTreeMap<Vec<bool>, VertexSet> = BTreeMap::new();
    for v in union.iter() {
        let signature: Vec<bool> = sets.iter().map(|s| s.contains(v)).collect();
        cells.entry(signature).or_default().insert(v);
    }
    cells.into_values().collect()
}

/// The refinement F′ of F: words are processed by increasing length, and the
/// sets of F at a word together with the ranges of the refined sets at its
/// proper prefixes are split into the cells of their Boolean partition.
pub fn refine_family(space: &LabelledSpace, family: &[Triple]) -> Result<ChainedFamily, Error> {
    let mut by_word: BTreeMap<Word, Vec<VertexSet>> = BTreeMap::new();
    for t in family {
        check_idempotent(space, t)?;
        by_word.entry(t.left.clone()).or_default().push(t.set);
    }
    let mut refined: BTreeMap<Word, Vec<VertexSet>> = BTreeMap::new();
    for (word, own) in &by_word {
        let mut sets = own.clone();
        for (prefix, cells) in &refined {
            if let Some(tail) = word.strip_prefix(prefix) {
                sets.extend(
                    cells
                        .iter()
                        .map(|&c| space.relative_range(c, &tail))
                        .filter(|r| !r.is_empty()),
                );
            }
        }
        refined.insert(word.clone(), signature_cells(&sets));
    }
    ChainedFamily::new(
        space,
        refined
            .into_iter()
            .flat_map(|(w, cells)| cells.into_iter().map(move |c| Triple::idempotent(w.clone(), c))),
    )
}

/// q_u = u · Π_{v ∈ F′, v < u} (u − v).
pub fn q_projection(space: &LabelledSpace, family: &ChainedFamily, u: &Triple) -> Result<DiagonalElement, Error> {
    if !family.contains(u) {
        return Err(Error::Precondition("u is not in the family".into()));
    }
    let pu = DiagonalElement::projection(space, u.clone())?;
    let mut q = pu.clone();
    for v in family.below(space, u) {
        let factor = pu.minus(&DiagonalElement::projection(space, v.clone())?);
        q = multiply_diag(space, &q, &factor);
    }
    Ok(q)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Resolution {
    pub holds: bool,
    pub witness: Option<String>,
}

/// The q_u are pairwise orthogonal and each member is the sum of the q_v
/// below it.
pub fn resolution_check(space: &LabelledSpace, family: &ChainedFamily) -> Resolution {
    let qs: Vec<DiagonalElement> = family
        .members()
        .iter()
        .map(|u| q_projection(space, family, u).expect("member"))
        .collect();
    let members = family.members();
    for i in 0..members.len() {
        for j in 0..members.len() {
            if i != j && !multiply_diag(space, &qs[i], &qs[j]).is_zero() {
                return Resolution {
                    holds: false,
                    witness: Some(format!("q_u q_v ≠ 0 for {:?}, {:?}", members[i], members[j])),
                };
            }
        }
    }
    for (i, u) in members.iter().enumerate() {
        let mut sum = qs[i].clone();
        for (j, v) in members.iter().enumerate() {
            if j != i && leq(space, v, u).unwrap_or(false) {
                sum = sum.plus(&qs[j]);
            }
        }
        if sum != DiagonalElement::projection(space, u.clone()).expect("member") {
            return Resolution {
                holds: false,
                witness: Some(format!("resolution fails at {u:?}")),
            };
        }
    }
    Resolution {
        holds: true,
        witness: None,
    }
}

/// Σ of the coefficients whose keys lie in ξ.
pub fn character_eval(space: &LabelledSpace, xi: &TightFilter, x: &DiagonalElement) -> BigRational {
    x.terms()
        .iter()
        .filter(|(t, _)| xi.contains(space, t))
        .fold(BigRational::zero(), |acc, (_, c)| acc + c)
}

/// The character of ξ on every projection with word length ≤ `depth`.
pub fn sample_character(space: &LabelledSpace, xi: &TightFilter, depth: usize) -> BTreeMap<Triple, BigRational> {
    enumerate_idempotents(space, depth)
        .into_iter()
        .map(|t| {
            let value = if xi.contains(space, &t) { BigRational::one() } else { BigRational::zero() };
            (t, value)
        })
        .collect()
}

/// Rebuilds the tight filter behind a sampled character. The sample is read
/// as the set of projections with value 1; when its longest word reaches the
/// sampling depth, the filter is continued as the smallest enumerated lasso
/// with size ≤ `lasso_bound` that agrees with the sample.
pub fn phi_of_character(
    space: &LabelledSpace,
    assignment: &BTreeMap<Triple, BigRational>,
    lasso_bound: usize,
) -> Result<TightFilter, Error> {
    let mut ones = Vec::new();
    for (t, c) in assignment {
        check_idempotent(space, t)?;
        if c.is_one() {
            ones.push(t.clone());
        } else if !c.is_zero() {
            return Err(Error::Inconsistent(format!("value {c} is not 0 or 1")));
        }
    }
    let depth = assignment.keys().map(|t| t.left.len()).max().unwrap_or(0);
    let longest = ones
        .iter()
        .map(|t| &t.left)
        .max_by_key(|w| w.len())
        .cloned()
        .ok_or_else(|| Error::Inconsistent("the zero assignment is not a character".into()))?;
    if ones.iter().any(|t| !longest.starts_with(&t.left)) {
        return Err(Error::Inconsistent("words of the sample are not a chain".into()));
    }
    let top = ones
        .iter()
        .filter(|t| t.left == longest)
        .fold(space.range(&longest), |acc, t| acc.intersection(t.set));
    let matches = |xi: &TightFilter| assignment.iter().all(|(t, c)| xi.contains(space, t) == c.is_one());

    let finite = TightFilter::Finite(FiniteFilter {
        word: longest.clone(),
        generator: top,
    });
    if !top.is_empty() && matches(&finite) {
        if finite.is_tight(space) {
            return Ok(finite);
        }
        if longest.len() < depth {
            return Err(Error::Inconsistent(format!("{} is not tight", finite.describe(space))));
        }
    } else if longest.len() < depth {
        return Err(Error::Inconsistent("the sample is not a filter".into()));
    }
    enumerate_tight_lassos(space, lasso_bound)
        .lassos
        .into_iter()
        .map(TightFilter::Lasso)
        .filter(|xi| matches(xi))
        .min_by(|a, b| {
            let size = |x: &TightFilter| match x {
                TightFilter::Lasso(l) => l.size(),
                TightFilter::Finite(_) => 0,
            };
            size(a).cmp(&size(b)).then(a.cmp(b))
        })
        .ok_or_else(|| Error::Inconsistent("no tight filter agrees with the sample".into()))
}

/// A non-zero z ≤ w = min(ξ ∩ F′) orthogonal to every member of F′ strictly
/// below w.
pub fn separating_z(space: &LabelledSpace, xi: &TightFilter, family: &ChainedFamily) -> Result<Triple, Error> {
    let inside: Vec<&Triple> = family.members().iter().filter(|t| xi.contains(space, t)).collect();
    if inside.is_empty() {
        return Err(Error::Precondition("ξ misses the family".into()));
    }
    let w = inside
        .iter()
        .find(|w| inside.iter().all(|v| leq(space, w, v).unwrap_or(false)))
        .copied()
        .ok_or_else(|| Error::Inconsistent("ξ ∩ F′ is not a chain".into()))?;
    let lower = family.below(space, w);
    if lower.is_empty() {
        return Ok(w.clone());
    }
    let n = match xi {
        TightFilter::Lasso(_) => lower.iter().map(|u| u.left.len()).max().unwrap_or(0),
        TightFilter::Finite(f) => f.word.len(),
    };
    let word = xi.word_prefix(n);
    let top = space.range(&word);
    let mut c = top;
    for u in &lower {
        if let Some(tail) = word.strip_prefix(&u.left) {
            c = c.intersection(top.difference(space.relative_range(u.set, &tail)));
        }
    }
    let tail = word.suffix_from(w.left.len());
    let d = c.intersection(space.relative_range(w.set, &tail));
    let set = match xi {
        TightFilter::Lasso(_) => d,
        TightFilter::Finite(_) => space.largest_member_within(top, d.intersection(space.sinks())),
    };
    if set.is_empty() {
        return Err(Error::Inconsistent("the separating set is empty".into()));
    }
    let z = Triple::idempotent(word, set);
    check_idempotent(space, &z)?;
    let separates = leq(space, &z, w)?
        && lower
            .iter()
            .all(|u| multiply(space, &Element::from(z.clone()), &Element::from((*u).clone())).is_zero());
    if !separates {
        return Err(Error::Inconsistent(format!("{z:?} does not separate")));
    }
    Ok(z)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NormCheck {
    pub character: f64,
    pub norm: f64,
    pub holds: bool,
}

/// |φ_ξ(x)| ≤ ‖x‖ with the norm taken in the tight representation on its
/// (exhaustive) basis.
pub fn norm_lower_bound_check(
    rep: &TightRep,
    x: &DiagonalElement,
    xi: &TightFilter,
) -> Result<NormCheck, Error> {
    let space = crate::repr::Representation::space(rep);
    let character = character_eval(space, xi, x).abs().to_f64().unwrap_or(f64::INFINITY);
    let norm = rep.norm(&x.to_operator(space))?;
    Ok(NormCheck {
        character,
        norm,
        holds: character <= norm + 1e-9,
    })
}

fn random_coefficient(rng: &mut impl Rng) -> BigRational {
    loop {
        let num: i64 = rng.gen_range(-6..=6);
        if num != 0 {
            return BigRational::new(num.into(), rng.gen_range(1i64..=3).into());
        }
    }
}

/// A random combination of up to `max_terms` projections drawn from `pool`.
pub fn random_element(rng: &mut impl Rng, space: &LabelledSpace, pool: &[Triple], max_terms: usize) -> DiagonalElement {
    let k = rng.gen_range(1..=max_terms.max(1));
    let mut x = DiagonalElement::zero();
    for t in pool.choose_multiple(rng, k) {
        x = x.plus(&DiagonalElement::term(space, t.clone(), random_coefficient(rng)).expect("pool holds projections"));
    }
    x
}

/// Tallies of the randomized diagonal suite over one space.
#[derive(Clone, Debug, Default, Serialize)]
pub struct DiagonalReport {
    pub seed: u64,
    pub refine_trials: usize,
    pub refine_failures: usize,
    pub resolution_failures: usize,
    pub separating_checks: usize,
    pub separating_failures: usize,
    pub multiplicativity_trials: usize,
    pub multiplicativity_failures: usize,
    pub round_trips: usize,
    pub round_trip_failures: usize,
    /// `None` when the tight basis is not the whole spectrum.
    pub norm_checks: Option<usize>,
    pub norm_failures: usize,
    pub witnesses: Vec<String>,
}

impl DiagonalReport {
    pub fn passed(&self) -> bool {
        self.refine_failures == 0
            && self.resolution_failures == 0
            && self.separating_failures == 0
            && self.multiplicativity_failures == 0
            && self.round_trip_failures == 0
            && self.norm_failures == 0
    }

    fn witness(&mut self, s: String) {
        if self.witnesses.len() < 20 {
            self.witnesses.push(s);
        }
    }
}

/// Refinement, resolution, separating elements, multiplicativity, the Φ round
/// trip and the norm bound on `trials` random inputs each.
pub fn diagonal_suite(
    space: &LabelledSpace,
    word_bound: usize,
    lasso_bound: usize,
    trials: usize,
    seed: u64,
) -> Result<DiagonalReport, Error> {
    space.require_boolean()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = DiagonalReport {
        seed,
        ..Default::default()
    };
    let pool = enumerate_idempotents(space, 2.min(word_bound));
    let filters = tight_basis(space, word_bound, lasso_bound);
    let rep = TightRep::new(space, word_bound, lasso_bound);

    for _ in 0..trials {
        let k = rng.gen_range(1..=5);
        let family: Vec<Triple> = pool.choose_multiple(&mut rng, k).cloned().collect();
        report.refine_trials += 1;
        let refined = match refine_family(space, &family) {
            Ok(r) => r,
            Err(e) => {
                report.refine_failures += 1;
                report.witness(format!("refine {family:?}: {e}"));
                continue;
            }
        };
        if !refinement_postconditions(&family, &refined) {
            report.refine_failures += 1;
            report.witness(format!("refinement of {family:?} breaks a postcondition"));
        }
        let resolution = resolution_check(space, &refined);
        if !resolution.holds {
            report.resolution_failures += 1;
            report.witness(resolution.witness.unwrap_or_default());
        }
        for xi in &filters {
            if !refined.members().iter().any(|t| xi.contains(space, t)) {
                continue;
            }
            report.separating_checks += 1;
            if let Err(e) = separating_witness(space, xi, &refined) {
                report.separating_failures += 1;
                report.witness(format!("separating z for {}: {e}", xi.describe(space)));
            }
        }
    }

    for _ in 0..trials {
        let x = random_element(&mut rng, space, &pool, 4);
        let y = random_element(&mut rng, space, &pool, 4);
        let Some(xi) = filters.choose(&mut rng) else { break };
        report.multiplicativity_trials += 1;
        let lhs = character_eval(space, xi, &multiply_diag(space, &x, &y));
        let rhs = character_eval(space, xi, &x) * character_eval(space, xi, &y);
        if lhs != rhs {
            report.multiplicativity_failures += 1;
            report.witness(format!("φ not multiplicative at {}", xi.describe(space)));
        }
    }

    let depth = (word_bound + 1).max(2 * lasso_bound);
    for xi in &filters {
        report.round_trips += 1;
        let sample = sample_character(space, xi, depth);
        match phi_of_character(space, &sample, lasso_bound) {
            Ok(back) if back == *xi && sample_character(space, &back, depth) == sample => {}
            Ok(back) => {
                report.round_trip_failures += 1;
                report.witness(format!("Φ({}) = {}", xi.describe(space), back.describe(space)));
            }
            Err(e) => {
                report.round_trip_failures += 1;
                report.witness(format!("Φ({}): {e}", xi.describe(space)));
            }
        }
    }

    if rep.is_exhaustive() {
        let norm_pool = enumerate_idempotents(space, 3.min(word_bound));
        let mut checks = 0;
        for _ in 0..trials {
            let x = random_element(&mut rng, space, &norm_pool, 4);
            for xi in rep.basis() {
                checks += 1;
                let check = norm_lower_bound_check(&rep, &x, xi)?;
                if !check.holds {
                    report.norm_failures += 1;
                    report.witness(format!("|φ| = {} > ‖x‖ = {}", check.character, check.norm));
                }
            }
        }
        report.norm_checks = Some(checks);
    }
    Ok(report)
}

/// F′ splits every set of F at its word, keeps the words of F, and has
/// disjoint sets at each word.
pub fn refinement_postconditions(family: &[Triple], refined: &ChainedFamily) -> bool {
    let words: BTreeSet<&Word> = family.iter().map(|t| &t.left).collect();
    let refined_words: BTreeSet<&Word> = refined.members().iter().map(|t| &t.left).collect();
    if words != refined_words {
        return false;
    }
    let at = |w: &Word| -> Vec<VertexSet> {
        refined
            .members()
            .iter()
            .filter(|t| &t.left == w)
            .map(|t| t.set)
            .collect()
    };
    for w in &words {
        let cells = at(w);
        for (i, a) in cells.iter().enumerate() {
            if cells[i + 1..].iter().any(|b| !a.is_disjoint(*b)) {
                return false;
            }
        }
    }
    family.iter().all(|t| {
        let parts: Vec<VertexSet> = at(&t.left).into_iter().filter(|c| c.is_subset(t.set)).collect();
        parts.iter().fold(VertexSet::EMPTY, |acc, &c| acc.union(c)) == t.set
            && at(&t.left).iter().all(|c| c.is_subset(t.set) || c.is_disjoint(t.set))
    })
}

/// z from [`separating_z`] together with the identity z · q_w = z.
fn separating_witness(space: &LabelledSpace, xi: &TightFilter, family: &ChainedFamily) -> Result<(), Error> {
    let z = separating_z(space, xi, family)?;
    let inside: Vec<&Triple> = family.members().iter().filter(|t| xi.contains(space, t)).collect();
    let w = inside
        .iter()
        .find(|w| inside.iter().all(|v| leq(space, w, v).unwrap_or(false)))
        .expect("separating_z found the minimum");
    let q = q_projection(space, family, w)?;
    let pz = DiagonalElement::projection(space, z.clone())?;
    if multiply_diag(space, &pz, &q) != pz {
        return Err(Error::Inconsistent(format!("z · q_w ≠ z for z = {z:?}")));
    }
    Ok(())
}
