//! Concrete operator models of the generators p_A and s_a: one on ℓ² of the
//! tight spectrum, one on ℓ² of a disjoint union of path copies.

mod audit;
mod path;
mod tight;

pub use audit::{definition_discriminator, relation_audit, AuditReport, Discrimination, RelationTally, SeparatingSet, Variant};
pub use path::{Container, PathKey, PathRep};
pub use tight::{nonvanishing_check, tight_witness, NonvanishingReport, TightRep};

use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::Error;
use crate::filters::TightFilter;
use crate::labelled::{LabelledSpace, Letter, VertexSet};
use crate::semigroup::Triple;

/// A canonical basis vector of either model.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BasisKey {
    Tight(TightFilter),
    Path(PathKey),
}

/// A generator or the adjoint of one.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Gen {
    P(VertexSet),
    S(Letter),
    SAdj(Letter),
}

impl Gen {
    pub fn adjoint(self) -> Gen {
        match self {
            Gen::P(a) => Gen::P(a),
            Gen::S(a) => Gen::SAdj(a),
            Gen::SAdj(a) => Gen::S(a),
        }
    }
}

/// Both models send every basis vector under every generator to a basis
/// vector or to zero.
pub trait Representation {
    fn space(&self) -> &LabelledSpace;
    fn name(&self) -> &'static str;
    fn act(&self, generator: Gen, key: &BasisKey) -> Option<BasisKey>;
}

/// Finitely supported vector with exact coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SparseVector(BTreeMap<BasisKey, BigRational>);

impl SparseVector {
    pub fn zero() -> Self {
        SparseVector(BTreeMap::new())
    }

    pub fn basis(key: BasisKey) -> Self {
        SparseVector(BTreeMap::from([(key, BigRational::one())]))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &BTreeMap<BasisKey, BigRational> {
        &self.0
    }

    pub fn coefficient(&self, key: &BasisKey) -> BigRational {
        self.0.get(key).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn add_term(&mut self, key: BasisKey, c: BigRational) {
        let slot = self.0.entry(key.clone()).or_insert_with(BigRational::zero);
        *slot += c;
        if slot.is_zero() {
            self.0.remove(&key);
        }
    }
}

/// A linear combination of products of generators. Products apply their
/// rightmost factor first.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Operator {
    terms: Vec<(BigRational, Vec<Gen>)>,
}

impl Operator {
    pub fn zero() -> Self {
        Operator { terms: Vec::new() }
    }

    pub fn identity() -> Self {
        Operator {
            terms: vec![(BigRational::one(), Vec::new())],
        }
    }

    pub fn generator(g: Gen) -> Self {
        Operator {
            terms: vec![(BigRational::one(), vec![g])],
        }
    }

    pub fn p(a: VertexSet) -> Self {
        Self::generator(Gen::P(a))
    }

    pub fn s(a: Letter) -> Self {
        Self::generator(Gen::S(a))
    }

    pub fn s_adj(a: Letter) -> Self {
        Self::generator(Gen::SAdj(a))
    }

    pub fn terms(&self) -> &[(BigRational, Vec<Gen>)] {
        &self.terms
    }

    pub fn then(&self, inner: &Operator) -> Operator {
        let mut terms = Vec::new();
        for (c, w) in &self.terms {
            for (d, v) in &inner.terms {
                let mut word = w.clone();
                word.extend(v.iter().copied());
                terms.push((c * d, word));
            }
        }
        Operator { terms }
    }

    pub fn plus(&self, other: &Operator) -> Operator {
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        Operator { terms }
    }

    pub fn minus(&self, other: &Operator) -> Operator {
        self.plus(&other.scaled(&-BigRational::one()))
    }

    pub fn scaled(&self, c: &BigRational) -> Operator {
        Operator {
            terms: self.terms.iter().map(|(d, w)| (c * d, w.clone())).collect(),
        }
    }

    pub fn adjoint(&self) -> Operator {
        Operator {
            terms: self
                .terms
                .iter()
                .map(|(c, w)| (c.clone(), w.iter().rev().map(|g| g.adjoint()).collect()))
                .collect(),
        }
    }

    pub fn apply_basis(&self, rep: &dyn Representation, key: &BasisKey) -> SparseVector {
        let mut out = SparseVector::zero();
        for (c, word) in &self.terms {
            let mut current = Some(key.clone());
            for &g in word.iter().rev() {
                current = current.and_then(|k| rep.act(g, &k));
                if current.is_none() {
                    break;
                }
            }
            if let Some(k) = current {
                out.add_term(k, c.clone());
            }
        }
        out
    }

    pub fn apply(&self, rep: &dyn Representation, v: &SparseVector) -> SparseVector {
        let mut out = SparseVector::zero();
        for (k, c) in v.entries() {
            for (k2, d) in self.apply_basis(rep, k).entries() {
                out.add_term(k2.clone(), c * d);
            }
        }
        out
    }
}

impl fmt::Display for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Gen::P(a) => write!(f, "P{:#x}", a.bits()),
            Gen::S(a) => write!(f, "S{a}"),
            Gen::SAdj(a) => write!(f, "S{a}*"),
        }
    }
}

/// S_α P_A S_β* for a valid triple; S_ε never appears on its own.
pub fn rep_word(space: &LabelledSpace, t: &Triple) -> Result<Operator, Error> {
    crate::semigroup::make_element(space, t.left.clone(), t.set, t.right.clone())?;
    let mut word: Vec<Gen> = t.left.letters().iter().map(|&a| Gen::S(a)).collect();
    word.push(Gen::P(t.set));
    word.extend(t.right.letters().iter().rev().map(|&a| Gen::SAdj(a)));
    Ok(Operator {
        terms: vec![(BigRational::one(), word)],
    })
}

/// Compares two operators on every key; returns the first key where they
/// differ.
pub fn first_difference(rep: &dyn Representation, lhs: &Operator, rhs: &Operator, keys: &[BasisKey]) -> Option<BasisKey> {
    keys.iter()
        .find(|k| lhs.apply_basis(rep, k) != rhs.apply_basis(rep, k))
        .cloned()
}

pub fn describe_key(space: &LabelledSpace, key: &BasisKey) -> String {
    match key {
        BasisKey::Tight(f) => f.describe(space),
        BasisKey::Path(p) => p.describe(space.graph()),
    }
}
