use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::{describe_key, first_difference, BasisKey, Operator, PathRep, Representation, TightRep};
use crate::error::Error;
use crate::labelled::{LabelledSpace, VertexSet, Word};

/// Which form of the summation relation (iv) is imposed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Variant {
    /// Applies unless a non-empty member of the family lies inside A ∩ sinks.
    #[serde(rename = "def31")]
    Def31,
    /// Applies only when A contains no sink.
    #[serde(rename = "alt")]
    Alternative,
}

impl FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "def31" => Ok(Variant::Def31),
            "alt" | "alternative" => Ok(Variant::Alternative),
            other => Err(Error::Document(format!("unknown variant {other:?}"))),
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variant::Def31 => "def31",
            Variant::Alternative => "alt",
        })
    }
}

fn has_sink_member(space: &LabelledSpace, a: VertexSet) -> bool {
    let inside = a.intersection(space.sinks());
    space
        .family()
        .members()
        .iter()
        .any(|b| !b.is_empty() && b.is_subset(inside))
}

/// A falls under relation (iv) in the given variant.
pub fn summation_applies(space: &LabelledSpace, a: VertexSet, variant: Variant) -> bool {
    if space.graph().label_set(a).is_empty() {
        return false;
    }
    match variant {
        Variant::Def31 => !has_sink_member(space, a),
        Variant::Alternative => a.is_disjoint(space.sinks()),
    }
}

/// Σ_{b ∈ labels(A)} S_b P_{r(A,b)} S_b*.
fn summation(space: &LabelledSpace, a: VertexSet) -> Operator {
    space
        .graph()
        .label_set(a)
        .into_iter()
        .fold(Operator::zero(), |acc, b| {
            acc.plus(
                &Operator::s(b)
                    .then(&Operator::p(space.step(a, b)))
                    .then(&Operator::s_adj(b)),
            )
        })
}

#[derive(Clone, Debug, Serialize)]
pub struct RelationTally {
    pub relation: String,
    pub instances: usize,
    pub failures: usize,
    pub witness: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct AuditReport {
    pub representation: String,
    pub variant: Variant,
    pub keys_checked: usize,
    pub relations: Vec<RelationTally>,
    /// Sets A to which relation (iv) applies.
    pub summation_sets: Vec<String>,
    pub passed: bool,
}

struct Auditor<'r> {
    rep: &'r dyn Representation,
    keys: &'r [BasisKey],
    tallies: Vec<RelationTally>,
}

impl Auditor<'_> {
    fn check(&mut self, relation: &str, label: impl FnOnce() -> String, lhs: &Operator, rhs: &Operator) -> bool {
        let pos = match self.tallies.iter().position(|t| t.relation == relation) {
            Some(p) => p,
            None => {
                self.tallies.push(RelationTally {
                    relation: relation.to_string(),
                    instances: 0,
                    failures: 0,
                    witness: None,
                });
                self.tallies.len() - 1
            }
        };
        let diff = first_difference(self.rep, lhs, rhs, self.keys);
        let tally = &mut self.tallies[pos];
        tally.instances += 1;
        match diff {
            None => true,
            Some(k) => {
                tally.failures += 1;
                if tally.witness.is_none() {
                    tally.witness = Some(format!("{} at {}", label(), describe_key(self.rep.space(), &k)));
                }
                false
            }
        }
    }
}

/// Checks relations (i)-(iv) and the projection and partial-isometry
/// identities on every key.
pub fn relation_audit(rep: &dyn Representation, keys: &[BasisKey], variant: Variant) -> AuditReport {
    let space = rep.space();
    let g = space.graph();
    let members = space.family().members();
    let mut audit = Auditor {
        rep,
        keys,
        tallies: Vec::new(),
    };
    let fmt = |a: VertexSet| g.format_set(a);

    audit.check("p_∅ = 0", || "∅".into(), &Operator::p(VertexSet::EMPTY), &Operator::zero());
    for &a in members {
        let pa = Operator::p(a);
        audit.check("p_A² = p_A = p_A*", || format!("A={}", fmt(a)), &pa.then(&pa), &pa.adjoint());
        for &b in members {
            let label = || format!("A={} B={}", fmt(a), fmt(b));
            let pb = Operator::p(b);
            let meet = Operator::p(a.intersection(b));
            audit.check("(i) p_{A∩B} = p_A p_B", label, &meet, &pa.then(&pb));
            audit.check(
                "(i) p_{A∪B} = p_A + p_B − p_{A∩B}",
                label,
                &Operator::p(a.union(b)),
                &pa.plus(&pb).minus(&meet),
            );
        }
    }
    for letter in space.letters() {
        let s = Operator::s(letter);
        let name = &g.alphabet()[letter];
        audit.check("s_a s_a* s_a = s_a", || format!("a={name}"), &s.then(&s.adjoint()).then(&s), &s);
        for &a in members {
            audit.check(
                "(ii) p_A s_a = s_a p_{r(A,a)}",
                || format!("A={} a={name}", fmt(a)),
                &Operator::p(a).then(&s),
                &s.then(&Operator::p(space.step(a, letter))),
            );
        }
        audit.check(
            "(iii) s_a* s_a = p_{r(a)}",
            || format!("a={name}"),
            &s.adjoint().then(&s),
            &Operator::p(space.range(&Word::letter(letter))),
        );
        for other in space.letters().filter(|&b| b != letter) {
            audit.check(
                "(iii) s_b* s_a = 0",
                || format!("a={name} b={}", g.alphabet()[other]),
                &Operator::s_adj(other).then(&s),
                &Operator::zero(),
            );
        }
    }
    let mut summation_sets = Vec::new();
    for &a in members {
        if summation_applies(space, a, variant) {
            summation_sets.push(fmt(a));
            audit.check("(iv) p_A = Σ s_a p_{r(A,a)} s_a*", || format!("A={}", fmt(a)), &Operator::p(a), &summation(space, a));
        }
    }
    let passed = audit.tallies.iter().all(|t| t.failures == 0);
    AuditReport {
        representation: rep.name().to_string(),
        variant,
        keys_checked: keys.len(),
        relations: audit.tallies,
        summation_sets,
        passed,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SeparatingSet {
    pub set: String,
    /// Relation (iv) for this set holds on the sampled path keys.
    pub holds_in_path_rep: bool,
    pub witness: Option<String>,
    /// Relation (iv) for this set holds on the tight basis.
    pub holds_in_tight_rep: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct Discrimination {
    pub separating_sets: Vec<SeparatingSet>,
    pub definitions_separate: bool,
}

/// Lists the sets falling under relation (iv) in one variant only and tests
/// the relation for each of them in both models.
pub fn definition_discriminator(
    space: &LabelledSpace,
    word_bound: usize,
    lasso_bound: usize,
    samples: usize,
    seed: u64,
) -> Result<Discrimination, Error> {
    let path = PathRep::new(space)?;
    let tight = TightRep::new(space, word_bound, lasso_bound);
    let path_keys = path.sample_keys(samples, seed);
    let tight_keys = tight.keys();
    let mut separating_sets = Vec::new();
    for &a in space.family().members() {
        if summation_applies(space, a, Variant::Def31) == summation_applies(space, a, Variant::Alternative) {
            continue;
        }
        let (lhs, rhs) = (Operator::p(a), summation(space, a));
        let failure = first_difference(&path, &lhs, &rhs, &path_keys);
        separating_sets.push(SeparatingSet {
            set: space.graph().format_set(a),
            holds_in_path_rep: failure.is_none(),
            witness: failure.map(|k| describe_key(space, &k)),
            holds_in_tight_rep: first_difference(&tight, &lhs, &rhs, &tight_keys).is_none(),
        });
    }
    let definitions_separate = separating_sets.iter().any(|s| !s.holds_in_path_rep);
    Ok(Discrimination {
        separating_sets,
        definitions_separate,
    })
}
