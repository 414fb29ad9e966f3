//! Gluing and cutting of word prefixes: g and h on ultrafilters of the
//! restricted algebras, G and H on tight filters.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::Error;
use crate::filters::{
    f_from_top, f_map, retopped_tail, sink_ultrafilters, tight_basis, FiniteFilter, LassoFilter, Step,
    TightFilter,
};
use crate::labelled::{BaFilter, LabelledSpace, Letter, VertexSet, Word};

/// F ∈ X_{(α)β}: F lives in B(β) and contains r(αβ).
pub fn in_glue_domain(space: &LabelledSpace, prefix: &Word, word: &Word, filter: &BaFilter) -> bool {
    filter.top == space.range(word) && filter.contains(space.range(&prefix.concat(word)))
}

/// g_{(α)β}: cuts every member of F down to r(αβ).
pub fn g_map(space: &LabelledSpace, prefix: &Word, word: &Word, filter: &BaFilter) -> Result<BaFilter, Error> {
    if filter.top != space.range(word) {
        return Err(Error::Precondition("filter does not live in B(β)".into()));
    }
    let top = space.range(&prefix.concat(word));
    if !filter.contains(top) {
        return Err(Error::Precondition("r(αβ) is not in the filter".into()));
    }
    Ok(BaFilter::new(top, filter.generator.intersection(top)))
}

/// h_{[α]β}: the up-closure of a filter of B(αβ) inside B(β).
pub fn h_map(space: &LabelledSpace, prefix: &Word, word: &Word, filter: &BaFilter) -> Result<BaFilter, Error> {
    if filter.top != space.range(&prefix.concat(word)) {
        return Err(Error::Precondition("filter does not live in B(αβ)".into()));
    }
    Ok(BaFilter::new(space.range(word), filter.generator))
}

/// ξ ∈ 𝖳_{(α)}, tested on stage 1 when the word of ξ is non-empty.
pub fn in_tight_glue_domain(space: &LabelledSpace, prefix: &Word, xi: &TightFilter) -> bool {
    match xi.letter_at(0) {
        Some(b) => xi
            .stage(space, 1)
            .is_some_and(|s| s.contains(space.range(&prefix.pushed(b)))),
        None => xi.stage0(space).is_some_and(|s| s.contains(space.range(prefix))),
    }
}

fn step_pairs(steps: &[Step]) -> Vec<(Letter, VertexSet)> {
    steps.iter().map(|s| (s.letter, s.node.generator)).collect()
}

/// G_{(α)}: glues α in front of the word of ξ.
pub fn glue(space: &LabelledSpace, prefix: &Word, xi: &TightFilter) -> Result<TightFilter, Error> {
    if prefix.is_empty() {
        return Ok(xi.clone());
    }
    if !in_tight_glue_domain(space, prefix, xi) {
        return Err(Error::Precondition("r(α) is not in stage 0".into()));
    }
    match xi {
        TightFilter::Finite(f) => {
            let word = prefix.concat(&f.word);
            let generator = f.generator.intersection(space.range(&word));
            Ok(TightFilter::Finite(FiniteFilter { word, generator }))
        }
        TightFilter::Lasso(l) => {
            let (tail_prefix, tail_cycle) = retopped_tail(
                space,
                &step_pairs(l.prefix()),
                &step_pairs(l.cycle()),
                0,
                space.range(prefix),
            );
            let first = tail_prefix.first().unwrap_or(&tail_cycle[0]);
            let mut head: Vec<Step> = Vec::with_capacity(prefix.len());
            let mut next = (first.letter, first.node);
            for i in (1..=prefix.len()).rev() {
                let top = space.range(&prefix.prefix(i));
                let node = f_from_top(space, top, &Word::letter(next.0), &next.1)
                    .ok_or_else(|| Error::Precondition("empty stage inside the glued word".into()))?;
                let letter = prefix.letters()[i - 1];
                head.push(Step { letter, node });
                next = (letter, node);
            }
            head.reverse();
            head.extend(tail_prefix);
            Ok(TightFilter::Lasso(LassoFilter::new(space, head, tail_cycle)))
        }
    }
}

/// H_{[α]}: removes the prefix α from the word of ξ.
pub fn cut(space: &LabelledSpace, prefix: &Word, xi: &TightFilter) -> Result<TightFilter, Error> {
    if prefix.is_empty() {
        return Ok(xi.clone());
    }
    if !xi.starts_with(prefix) {
        return Err(Error::Precondition("word does not start with α".into()));
    }
    match xi {
        TightFilter::Finite(f) => Ok(TightFilter::Finite(FiniteFilter {
            word: f.word.suffix_from(prefix.len()),
            generator: f.generator,
        })),
        TightFilter::Lasso(l) => {
            let (p, c) = retopped_tail(
                space,
                &step_pairs(l.prefix()),
                &step_pairs(l.cycle()),
                prefix.len(),
                space.graph().all_vertices(),
            );
            Ok(TightFilter::Lasso(LassoFilter::new(space, p, c)))
        }
    }
}

/// Tally of the surgery identities over one space.
#[derive(Clone, Debug, Default, Serialize)]
pub struct SurgeryReport {
    /// Number of instances checked per identity.
    pub checked: BTreeMap<String, usize>,
    pub violations: Vec<String>,
}

impl SurgeryReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    fn record(&mut self, law: &str, ok: bool, detail: impl FnOnce() -> String) {
        *self.checked.entry(law.to_string()).or_default() += 1;
        if !ok && self.violations.len() < 50 {
            self.violations.push(format!("{law}: {}", detail()));
        }
    }
}

/// Checks every composition, diagram and inverse identity for g, h, G and H
/// over all splittings α·β·γ of realized words of length ≤ `word_bound`,
/// and all tight filters with words ≤ `word_bound` and lassos of size
/// ≤ `lasso_bound`.
pub fn surgery_suite(space: &LabelledSpace, word_bound: usize, lasso_bound: usize) -> Result<SurgeryReport, Error> {
    space.require_boolean()?;
    let mut report = SurgeryReport::default();
    let g = space.graph();
    let words = g.words_up_to(word_bound);
    for w in &words {
        for i in 0..=w.len() {
            for j in i..=w.len() {
                let (alpha, beta, gamma) = (w.prefix(i), w.prefix(j).suffix_from(i), w.suffix_from(j));
                ultrafilter_laws(space, &mut report, &alpha, &beta, &gamma);
            }
        }
    }

    let filters = tight_basis(space, word_bound, lasso_bound);
    for w in &words {
        for i in 0..=w.len() {
            let (alpha, beta) = (w.prefix(i), w.suffix_from(i));
            for xi in &filters {
                tight_laws(space, &mut report, &alpha, &beta, xi);
            }
        }
    }
    Ok(report)
}

fn ultrafilter_laws(space: &LabelledSpace, report: &mut SurgeryReport, alpha: &Word, beta: &Word, gamma: &Word) {
    let g = space.graph();
    let ab = alpha.concat(beta);
    let bg = beta.concat(gamma);
    let abg = ab.concat(gamma);
    let show = |f: &BaFilter| format!("α={} β={} γ={} F=↑{}", g.format_word(alpha), g.format_word(beta), g.format_word(gamma), g.format_set(f.generator));

    let f_laws = if alpha.is_empty() { Vec::new() } else { space.algebra(&bg).ultrafilters() };
    for f in f_laws {
        let image = f_map(space, beta, gamma, &f);
        let image_in = image.is_some_and(|i| in_glue_domain(space, alpha, beta, &i));
        if in_glue_domain(space, alpha, &bg, &f) {
            report.record("f preserves X", image_in, || show(&f));
            let lhs = g_map(space, alpha, &bg, &f).ok().and_then(|x| f_map(space, &ab, gamma, &x));
            let rhs = image.and_then(|i| g_map(space, alpha, beta, &i).ok());
            report.record("f∘g = g∘f", lhs.is_some() && lhs == rhs, || show(&f));
        }
        if image_in {
            report.record("f preimage of X", in_glue_domain(space, alpha, &bg, &f), || show(&f));
        }
    }

    let sinks_g = sink_ultrafilters(space, gamma);
    for f in space.algebra(gamma).ultrafilters() {
        if !in_glue_domain(space, &ab, gamma, &f) {
            continue;
        }
        report.record("X_(αβ)γ ⊆ X_(β)γ", in_glue_domain(space, beta, gamma, &f), || show(&f));
        let inner = g_map(space, beta, gamma, &f);
        let lands = inner.as_ref().is_ok_and(|x| in_glue_domain(space, alpha, &bg, x));
        report.record("g maps X_(αβ)γ into X_(α)βγ", lands, || show(&f));
        let composed = inner.and_then(|x| g_map(space, alpha, &bg, &x));
        let direct = g_map(space, &ab, gamma, &f);
        report.record("g∘g = g", direct.is_ok() && composed == direct, || show(&f));
        if sinks_g.contains(&f) {
            let ok = direct.as_ref().is_ok_and(|x| sink_ultrafilters(space, &abg).contains(x));
            report.record("g preserves sinks", ok, || show(&f));
        }
        let back = direct.and_then(|x| h_map(space, &ab, gamma, &x));
        report.record("h∘g = id", back == Ok(f), || show(&f));
    }

    let sinks_abg = sink_ultrafilters(space, &abg);
    for f in space.algebra(&abg).ultrafilters() {
        let direct = h_map(space, &ab, gamma, &f).ok();
        let composed = h_map(space, alpha, &bg, &f)
            .ok()
            .and_then(|x| h_map(space, beta, gamma, &x).ok());
        report.record("h∘h = h", direct.is_some() && direct == composed, || show(&f));

        let lhs = h_map(space, alpha, &bg, &f).map(|x| f_map(space, beta, gamma, &x));
        let rhs = f_map(space, &ab, gamma, &f)
            .map(|x| h_map(space, alpha, beta, &x))
            .transpose();
        report.record("f∘h = h∘f", lhs.is_ok() && lhs == rhs, || show(&f));

        let up = h_map(space, &ab, gamma, &f);
        let in_x = up.as_ref().is_ok_and(|x| in_glue_domain(space, &ab, gamma, x) && x.is_ultrafilter(space));
        report.record("h lands in X", in_x, || show(&f));
        if sinks_abg.contains(&f) {
            let ok = up.as_ref().is_ok_and(|x| sink_ultrafilters(space, gamma).contains(x));
            report.record("h preserves sinks", ok, || show(&f));
        }
        let back = up.and_then(|x| g_map(space, &ab, gamma, &x));
        report.record("g∘h = id", back == Ok(f), || show(&f));
    }
}

fn tight_laws(space: &LabelledSpace, report: &mut SurgeryReport, alpha: &Word, beta: &Word, xi: &TightFilter) {
    let g = space.graph();
    let ab = alpha.concat(beta);
    let show = || format!("α={} β={} ξ={}", g.format_word(alpha), g.format_word(beta), xi.describe(space));

    if in_tight_glue_domain(space, &ab, xi) {
        let direct = glue(space, &ab, xi);
        let composed = glue(space, beta, xi).and_then(|x| glue(space, alpha, &x));
        report.record("G∘G = G", direct.is_ok() && direct == composed, show);
        let direct = direct.ok();
        let tight = direct.as_ref().is_some_and(|x| x.is_tight(space) && x.starts_with(&ab));
        report.record("G preserves tightness", tight, show);
        let back = direct.map(|x| cut(space, &ab, &x));
        report.record("H∘G = id", back == Some(Ok(xi.clone())), show);
    }
    if xi.starts_with(&ab) {
        let direct = cut(space, &ab, xi);
        let composed = cut(space, alpha, xi).and_then(|x| cut(space, beta, &x));
        report.record("H∘H = H", direct.is_ok() && direct == composed, show);
        let direct = direct.ok();
        let ok = direct
            .as_ref()
            .is_some_and(|x| x.is_tight(space) && in_tight_glue_domain(space, &ab, x));
        report.record("H preserves tightness", ok, show);
        let back = direct.map(|x| glue(space, &ab, &x));
        report.record("G∘H = id", back == Some(Ok(xi.clone())), show);
    }
}
