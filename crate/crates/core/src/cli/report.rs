use clap::ValueEnum;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::Serialize;
use serde_json::{json, Value};

use super::{GraphDocument, Options};
use crate::diagonal::diagonal_suite;
use crate::error::Error;
use crate::filters::{
    bounded_cover_falsifier, enumerate_tight_finite, enumerate_tight_lassos, spectrum_verdict, tight_vs_boundary_check,
    SpectrumVerdict, TightFilter,
};
use crate::labelled::{oracle_agreement, LabelledSpace};
use crate::repr::{
    definition_discriminator, nonvanishing_check, relation_audit, Operator, PathRep, TightRep, Variant,
};
use crate::semigroup::{enumerate_idempotents, semigroup_suite};
use crate::surgery::surgery_suite;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_INVALID: i32 = 2;

/// Associativity is cubic in the element count, so the law suite stops here.
const SEMIGROUP_BOUND: usize = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    /// Structural verdicts on the graph and family.
    Check,
    /// Tight filters, exhaustiveness and the spectrum verdict.
    Tight,
    /// Inverse semigroup laws.
    Semigroup,
    /// Boundary paths against tight filters.
    Boundary,
    /// The gluing and cutting identities.
    Surgery,
    /// Refinement, resolution, characters and the norm bound.
    Diagonal,
    /// Relation audit and matrices of the tight representation.
    Represent,
    /// Relation (iv) in the two variants across both models.
    Discriminate,
}

/// Command-line values that take precedence over the document's options.
#[derive(Clone, Copy, Debug, Default)]
pub struct Overrides {
    pub word_bound: Option<usize>,
    pub lasso_bound: Option<usize>,
    pub samples: Option<usize>,
    pub seed: Option<u64>,
    pub variant: Option<Variant>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Configuration {
    pub word_bound: usize,
    pub lasso_bound: usize,
    pub samples: usize,
    pub seed: u64,
    pub variant: Variant,
}

impl Configuration {
    pub fn resolve(options: Options, overrides: Overrides) -> Self {
        Configuration {
            word_bound: overrides.word_bound.unwrap_or(options.word_bound),
            lasso_bound: overrides.lasso_bound.unwrap_or(options.lasso_bound),
            samples: overrides.samples.unwrap_or(options.samples),
            seed: overrides.seed.unwrap_or(options.seed),
            variant: overrides.variant.unwrap_or(Variant::Def31),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: Command,
    pub input: String,
    pub configuration: Option<Configuration>,
    pub results: Value,
    pub witnesses: Vec<String>,
    pub exit_status: i32,
}

impl Report {
    /// Pretty JSON with a trailing newline; identical inputs give identical
    /// bytes.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }

    pub fn invalid(command: Command, input: &str, configuration: Option<Configuration>, error: &Error) -> Self {
        Report {
            command,
            input: input.to_string(),
            configuration,
            results: json!({ "error": error.to_string() }),
            witnesses: Vec::new(),
            exit_status: EXIT_INVALID,
        }
    }
}

struct Outcome {
    results: Value,
    witnesses: Vec<String>,
}

/// Parses `text` as a graph document and runs `command` on it.
pub fn run(command: Command, input: &str, text: &str, overrides: Overrides) -> Report {
    let doc = match GraphDocument::parse(text) {
        Ok(doc) => doc,
        Err(e) => return Report::invalid(command, input, None, &e),
    };
    let config = Configuration::resolve(doc.options, overrides);
    match doc.space().and_then(|space| execute(command, &space, &config)) {
        Ok(outcome) => Report {
            command,
            input: input.to_string(),
            configuration: Some(config),
            exit_status: if outcome.witnesses.is_empty() { EXIT_PASS } else { EXIT_VIOLATION },
            results: outcome.results,
            witnesses: outcome.witnesses,
        },
        Err(e) => Report::invalid(command, input, Some(config), &e),
    }
}

fn execute(command: Command, space: &LabelledSpace, config: &Configuration) -> Result<Outcome, Error> {
    match command {
        Command::Check => cmd_check(space, config),
        Command::Tight => cmd_tight(space, config),
        Command::Semigroup => cmd_semigroup(space, config),
        Command::Boundary => cmd_boundary(space, config),
        Command::Surgery => cmd_surgery(space, config),
        Command::Diagonal => cmd_diagonal(space, config),
        Command::Represent => cmd_represent(space, config),
        Command::Discriminate => cmd_discriminate(space, config),
    }
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("reports serialize")
}

fn cmd_check(space: &LabelledSpace, config: &Configuration) -> Result<Outcome, Error> {
    let g = space.graph();
    let f = space.family();
    let mut witnesses = Vec::new();
    for (holds, error) in [
        (f.is_accommodating(), Error::NotAccommodating),
        (f.closed_under_complements(), Error::NoComplements),
        (f.is_weakly_left_resolving(), Error::NotWeaklyLeftResolving),
    ] {
        if !holds {
            witnesses.push(error.to_string());
        }
    }
    let oracle = space.require_boolean().is_ok().then(|| oracle_agreement(space, config.word_bound));
    if let Some(o) = &oracle {
        witnesses.extend(o.disagreements.iter().map(|d| format!("oracle disagreement: {d}")));
    }
    Ok(Outcome {
        results: json!({
            "vertices": g.vertex_count(),
            "edges": g.edges().len(),
            "alphabet": g.alphabet(),
            "sinks": g.set_names(g.sinks()),
            "family_size": f.len(),
            "left_resolving": g.is_left_resolving(),
            "accommodating": f.is_accommodating(),
            "closed_under_complements": f.closed_under_complements(),
            "weakly_left_resolving": f.is_weakly_left_resolving(),
            "ultrafilter_oracle": oracle,
        }),
        witnesses,
    })
}

fn verdict_text(verdict: SpectrumVerdict) -> String {
    match verdict {
        SpectrumVerdict::Finite(1) => "spectrum = 1 point".into(),
        SpectrumVerdict::Finite(n) => format!("spectrum = {n} points"),
        SpectrumVerdict::CountablyInfinite => "countably infinite".into(),
        SpectrumVerdict::Uncountable => "uncountable".into(),
    }
}

fn cmd_tight(space: &LabelledSpace, config: &Configuration) -> Result<Outcome, Error> {
    space.require_boolean()?;
    let finite = enumerate_tight_finite(space, config.word_bound);
    let lassos = enumerate_tight_lassos(space, config.lasso_bound);
    let verdict = spectrum_verdict(space)?;
    let total = finite.len() + lassos.lassos.len();
    let filters: Vec<TightFilter> = finite
        .iter()
        .cloned()
        .map(TightFilter::Finite)
        .chain(lassos.lassos.iter().cloned().map(TightFilter::Lasso))
        .collect();
    let witnesses = filters
        .iter()
        .filter_map(|f| {
            bounded_cover_falsifier(space, f, config.word_bound + 1)
                .map(|c| format!("{} misses a cover of {:?}", f.describe(space), c.element))
        })
        .collect();
    let describe = |fs: &[TightFilter]| fs.iter().map(|f| f.describe(space)).collect::<Vec<_>>();
    Ok(Outcome {
        results: json!({
            "finite_type_count": finite.len(),
            "lasso_count": lassos.lassos.len(),
            "finite_type": describe(&filters[..finite.len()]),
            "lassos": describe(&filters[finite.len()..]),
            "lassos_exhaustive": lassos.exhaustive,
            "exhaustive": verdict == SpectrumVerdict::Finite(total),
            "spectrum": verdict_text(verdict),
        }),
        witnesses,
    })
}

fn cmd_semigroup(space: &LabelledSpace, config: &Configuration) -> Result<Outcome, Error> {
    let bound = config.word_bound.min(SEMIGROUP_BOUND);
    let report = semigroup_suite(space, bound);
    Ok(Outcome {
        results: json!({
            "law_bound": bound,
            "idempotents_at_word_bound": enumerate_idempotents(space, config.word_bound).len(),
            "suite": report,
        }),
        witnesses: report.violations.clone(),
    })
}

fn cmd_boundary(space: &LabelledSpace, config: &Configuration) -> Result<Outcome, Error> {
    let check = tight_vs_boundary_check(space, config.word_bound)?;
    let witnesses = if check.bijective {
        Vec::new()
    } else {
        vec![format!(
            "paths to filters is not a bijection: {} + {} paths, {} + {} filters, injective={}, images enumerated={}",
            check.finite_paths,
            check.lasso_paths,
            check.finite_filters,
            check.lasso_filters,
            check.injective,
            check.images_enumerated
        )]
    };
    Ok(Outcome {
        results: to_value(&check),
        witnesses,
    })
}

fn cmd_surgery(space: &LabelledSpace, config: &Configuration) -> Result<Outcome, Error> {
    let report = surgery_suite(space, config.word_bound, config.lasso_bound)?;
    Ok(Outcome {
        witnesses: report.violations.clone(),
        results: to_value(&report),
    })
}

fn cmd_diagonal(space: &LabelledSpace, config: &Configuration) -> Result<Outcome, Error> {
    let report = diagonal_suite(space, config.word_bound, config.lasso_bound, config.samples, config.seed)?;
    Ok(Outcome {
        witnesses: report.witnesses.clone(),
        results: to_value(&report),
    })
}

fn exact_to_json(x: &BigRational) -> Value {
    match (x.is_integer(), x.to_integer().to_i64()) {
        (true, Some(n)) => json!(n),
        _ => json!(x.to_string()),
    }
}

fn exact_matrix_json(rep: &TightRep, op: &Operator) -> Result<Value, Error> {
    let columns = rep.exact_matrix(op)?;
    let n = columns.len();
    let rows: Vec<Vec<Value>> = (0..n)
        .map(|i| (0..n).map(|j| exact_to_json(&columns[j][i])).collect())
        .collect();
    Ok(json!(rows))
}

fn cmd_represent(space: &LabelledSpace, config: &Configuration) -> Result<Outcome, Error> {
    space.require_boolean()?;
    let rep = TightRep::new(space, config.word_bound, config.lasso_bound);
    let audit = relation_audit(&rep, &rep.keys(), config.variant);
    let nonvanishing = nonvanishing_check(&rep, config.word_bound);
    let mut witnesses: Vec<String> = audit
        .relations
        .iter()
        .filter_map(|t| t.witness.as_ref().map(|w| format!("{}: {w}", t.relation)))
        .collect();
    witnesses.extend(nonvanishing.failures.iter().map(|f| format!("vanishes: {f}")));
    let matrices = if rep.is_exhaustive() {
        let mut out = serde_json::Map::new();
        for a in space.letters() {
            let name = &space.graph().alphabet()[a];
            let s = Operator::s(a);
            out.insert(format!("S_{name}"), exact_matrix_json(&rep, &s)?);
            out.insert(format!("S_{name} S_{name}*"), exact_matrix_json(&rep, &s.then(&s.adjoint()))?);
        }
        Value::Object(out)
    } else {
        Value::Null
    };
    let identity_range = space
        .letters()
        .map(|a| {
            let ss = Operator::s(a).then(&Operator::s_adj(a));
            crate::repr::first_difference(&rep, &ss, &Operator::identity(), &rep.keys()).is_none()
        })
        .collect::<Vec<_>>();
    Ok(Outcome {
        results: json!({
            "basis": rep.basis().iter().map(|f| f.describe(space)).collect::<Vec<_>>(),
            "exhaustive": rep.is_exhaustive(),
            "audit": audit,
            "matrices": matrices,
            "s_a_s_a_star_is_identity": identity_range,
            "nonvanishing": nonvanishing,
        }),
        witnesses,
    })
}

fn cmd_discriminate(space: &LabelledSpace, config: &Configuration) -> Result<Outcome, Error> {
    space.require_boolean()?;
    let discrimination =
        definition_discriminator(space, config.word_bound, config.lasso_bound, config.samples, config.seed)?;
    let path = PathRep::new(space)?;
    let keys = path.sample_keys(config.samples, config.seed);
    let alternative = relation_audit(&path, &keys, Variant::Alternative);
    let def31 = relation_audit(&path, &keys, Variant::Def31);
    let tight = TightRep::new(space, config.word_bound, config.lasso_bound);
    let tight_audit = relation_audit(&tight, &tight.keys(), Variant::Def31);

    let mut witnesses: Vec<String> = alternative
        .relations
        .iter()
        .filter_map(|t| t.witness.as_ref().map(|w| format!("path model, alt {}: {w}", t.relation)))
        .collect();
    witnesses.extend(
        tight_audit
            .relations
            .iter()
            .filter_map(|t| t.witness.as_ref().map(|w| format!("tight model, def31 {}: {w}", t.relation))),
    );
    witnesses.extend(
        discrimination
            .separating_sets
            .iter()
            .filter(|s| !s.holds_in_tight_rep)
            .map(|s| format!("tight model fails (iv) for A={}", s.set)),
    );
    let failing: Vec<String> = discrimination
        .separating_sets
        .iter()
        .filter(|s| !s.holds_in_path_rep)
        .map(|s| format!("A={}", s.set))
        .collect();
    let summary = if failing.is_empty() {
        "definitions agree on the sampled keys".to_string()
    } else {
        format!("definitions separate; witness {}", failing.join(", "))
    };
    Ok(Outcome {
        results: json!({
            "summary": summary,
            "discrimination": discrimination,
            "path_keys": keys.len(),
            "path_alternative_passed": alternative.passed,
            "path_def31_passed": def31.passed,
            "path_def31": def31,
            "tight_def31_passed": tight_audit.passed,
        }),
        witnesses,
    })
}
