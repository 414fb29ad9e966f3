//! The ten acceptance criteria, one PASS/FAIL line each.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use tightspace::cli::{run, Command, Overrides};
use tightspace::diagonal::{
    character_eval, multiply_diag, norm_lower_bound_check, phi_of_character, random_element, refine_family,
    resolution_check, sample_character, ChainedFamily,
};
use tightspace::filters::{tight_basis, tight_vs_boundary_check};
use tightspace::fixtures;
use tightspace::labelled::{oracle_agreement, LabelledSpace, VertexSet};
use tightspace::random::random_space;
use tightspace::repr::{
    first_difference, nonvanishing_check, relation_audit, BasisKey, Container, Operator, PathKey, PathRep, TightRep,
    Variant,
};
use tightspace::semigroup::{enumerate_idempotents, leq, multiply, Element, Triple};
use tightspace::surgery::surgery_suite;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn set(space: &LabelledSpace, names: &[&str]) -> VertexSet {
    space
        .graph()
        .parse_set(&names.iter().map(|s| s.to_string()).collect::<Vec<_>>())
        .unwrap()
}

fn int(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

fn spectrum_of_g1() -> Outcome {
    let r = run(Command::Tight, "g1.json", fixtures::G1_JSON, Overrides::default());
    let expected = json!({
        "finite_type_count": 0,
        "lasso_count": 2,
        "exhaustive": true,
        "spectrum": "spectrum = 2 points",
    });
    for (key, value) in expected.as_object().unwrap() {
        ensure(&r.results[key] == value, || format!("{key} = {}", r.results[key]))?;
    }
    ensure(r.exit_status == 0, || format!("exit {}", r.exit_status))?;
    Ok("0 finite-type + 2 lassos, exhaustive".into())
}

fn definition_separation() -> Outcome {
    let r = run(Command::Discriminate, "g1.json", fixtures::G1_JSON, Overrides::default());
    ensure(r.exit_status == 0, || format!("exit {}: {:?}", r.exit_status, r.witnesses))?;
    let sets = r.results["discrimination"]["separating_sets"].as_array().cloned().unwrap_or_default();
    let full = sets
        .iter()
        .find(|s| s["set"] == "{v1,v2,v3}")
        .ok_or("E⁰ is not a separating set")?;
    ensure(full["holds_in_path_rep"] == false, || "(iv) holds for E⁰ in the path model".into())?;
    ensure(full["witness"] == "(SinkCopy(v3),0)", || format!("witness {}", full["witness"]))?;
    ensure(r.results["path_alternative_passed"] == true, || "alternative relations fail".into())?;
    let keys = r.results["path_keys"].as_u64().unwrap_or(0);
    ensure(keys >= 200, || format!("only {keys} keys"))?;

    let g1 = fixtures::g1();
    let path = PathRep::new(&g1).map_err(|e| e.to_string())?;
    let sample = path.sample_keys(200, 0);
    let ss = Operator::s(0).then(&Operator::s_adj(0));
    let v12 = Operator::p(set(&g1, &["v1", "v2"]));
    ensure(first_difference(&path, &ss, &v12, &sample).is_none(), || "S_aS_a* ≠ P_{v1,v2}".into())?;
    let sink = BasisKey::Path(PathKey::new(Container::SinkCopy(g1.graph().vertex_index("v3").unwrap()), 0));
    ensure(
        first_difference(&path, &v12, &Operator::identity(), &sample) == Some(sink),
        || "P_{v1,v2} and 1 do not differ at the sink copy".into(),
    )?;
    Ok(format!("(iv) fails for E⁰ at (SinkCopy(v3),0); alt passes on {keys} keys"))
}

fn tight_audit() -> Outcome {
    for (name, space) in [("G1", fixtures::g1()), ("G2", fixtures::g2())] {
        let rep = TightRep::new(&space, 3, 6);
        ensure(rep.is_exhaustive(), || format!("{name} basis not exhaustive"))?;
        let audit = relation_audit(&rep, &rep.keys(), Variant::Def31);
        ensure(audit.passed, || format!("{name}: {:?}", audit.relations))?;
    }
    let g1 = fixtures::g1();
    let rep = TightRep::new(&g1, 3, 6);
    let s = Operator::s(0);
    let swap = vec![vec![int(0), int(1)], vec![int(1), int(0)]];
    let identity = vec![vec![int(1), int(0)], vec![int(0), int(1)]];
    ensure(rep.exact_matrix(&s).map_err(|e| e.to_string())? == swap, || "S_a is not the swap".into())?;
    ensure(
        rep.exact_matrix(&s.then(&s.adjoint())).map_err(|e| e.to_string())? == identity,
        || "S_aS_a* ≠ 1".into(),
    )?;
    Ok("def31 (i)-(iv) hold on G1 and G2; S_a = swap, S_aS_a* = 1".into())
}

fn nonvanishing() -> Outcome {
    let mut checked = 0;
    for (name, space) in fixtures::all() {
        let rep = TightRep::new(&space, 3, 6);
        let report = nonvanishing_check(&rep, 3);
        ensure(report.passed(), || format!("{name}: {:?}", report.failures))?;
        checked += report.checked;
    }
    Ok(format!("{checked} elements with non-zero images"))
}

fn surgery() -> Outcome {
    let mut checks = 0;
    let mut spaces: Vec<(String, LabelledSpace)> =
        fixtures::all().into_iter().map(|(n, s)| (n.to_string(), s)).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    for i in 0..20 {
        spaces.push((format!("random #{i}"), random_space(&mut rng, 5)));
    }
    for (name, space) in &spaces {
        let report = surgery_suite(space, 4, 6).map_err(|e| format!("{name}: {e}"))?;
        ensure(report.passed(), || format!("{name}: {:?}", report.violations))?;
        checks += report.checked.values().sum::<usize>();
    }
    Ok(format!("{checks} identity instances over {} spaces", spaces.len()))
}

/// Postconditions of the refinement checked member by member.
fn brute_force_refinement(space: &LabelledSpace, family: &[Triple], refined: &ChainedFamily) -> Result<(), String> {
    let members = refined.members();
    let mut words: Vec<_> = family.iter().map(|t| t.left.clone()).collect();
    let mut refined_words: Vec<_> = members.iter().map(|t| t.left.clone()).collect();
    words.sort();
    words.dedup();
    refined_words.sort();
    refined_words.dedup();
    ensure(words == refined_words, || "word sets differ".into())?;
    for t in family {
        let mut union = VertexSet::EMPTY;
        for u in members.iter().filter(|u| u.left == t.left) {
            if u.set.is_subset(t.set) {
                union = union.union(u.set);
            } else {
                ensure(u.set.is_disjoint(t.set), || format!("{u:?} straddles {t:?}"))?;
            }
        }
        ensure(union == t.set, || format!("{t:?} is not partitioned"))?;
    }
    for (i, u) in members.iter().enumerate() {
        for v in &members[i + 1..] {
            if u.left == v.left {
                ensure(u.set.is_disjoint(v.set), || format!("{u:?} meets {v:?}"))?;
            }
            let orthogonal = multiply(space, &Element::from(u.clone()), &Element::from(v.clone())).is_zero();
            let nested = leq(space, u, v).unwrap() || leq(space, v, u).unwrap();
            ensure(orthogonal || nested, || format!("{u:?}, {v:?} break the trichotomy"))?;
        }
    }
    Ok(())
}

fn orthogonalization() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut families = 0;
    for (name, space) in fixtures::all() {
        let pool = enumerate_idempotents(&space, 2);
        for _ in 0..100 {
            let k = rng.gen_range(1..=6);
            let family: Vec<Triple> = pool.choose_multiple(&mut rng, k).cloned().collect();
            let refined = refine_family(&space, &family).map_err(|e| format!("{name}: {e}"))?;
            brute_force_refinement(&space, &family, &refined).map_err(|e| format!("{name}: {e}"))?;
            let resolution = resolution_check(&space, &refined);
            ensure(resolution.holds, || format!("{name}: {:?}", resolution.witness))?;
            families += 1;
        }
    }
    Ok(format!("{families} refined families resolve"))
}

fn characters() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let (mut round_trips, mut products) = (0, 0);
    for (name, space) in fixtures::all() {
        let basis = tight_basis(&space, 3, 6);
        for xi in &basis {
            let sample = sample_character(&space, xi, 12);
            let back = phi_of_character(&space, &sample, 6).map_err(|e| format!("{name}: {e}"))?;
            ensure(back == *xi, || format!("{name}: Φ({}) = {}", xi.describe(&space), back.describe(&space)))?;
            ensure(sample_character(&space, &back, 12) == sample, || format!("{name}: φ_Φ(φ) ≠ φ"))?;
            round_trips += 1;
        }
        let pool = enumerate_idempotents(&space, 3);
        for _ in 0..100 {
            let x = random_element(&mut rng, &space, &pool, 5);
            let y = random_element(&mut rng, &space, &pool, 5);
            let xy = multiply_diag(&space, &x, &y);
            for xi in &basis {
                let lhs = character_eval(&space, xi, &xy);
                let rhs = character_eval(&space, xi, &x) * character_eval(&space, xi, &y);
                ensure(lhs == rhs, || format!("{name}: φ not multiplicative at {}", xi.describe(&space)))?;
                products += 1;
            }
        }
    }
    Ok(format!("{round_trips} round trips, {products} products"))
}

fn norm_bound() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut total = 0;
    for (name, space) in [("G1", fixtures::g1()), ("G2", fixtures::g2())] {
        let rep = TightRep::new(&space, 3, 6);
        ensure(rep.is_exhaustive(), || format!("{name} basis not exhaustive"))?;
        let pool = enumerate_idempotents(&space, 3);
        let mut triples = 0;
        while triples < 100 {
            let x = random_element(&mut rng, &space, &pool, 5);
            for xi in rep.basis() {
                let check = norm_lower_bound_check(&rep, &x, xi).map_err(|e| e.to_string())?;
                ensure(check.holds, || format!("{name}: |φ| = {} > {}", check.character, check.norm))?;
                triples += 1;
            }
        }
        total += triples;
    }
    Ok(format!("{total} (F, λ, ξ) triples"))
}

fn boundary_paths() -> Outcome {
    let mut pairs = 0;
    for (name, space) in [("G2", fixtures::g2()), ("G1P", fixtures::g1p())] {
        for bound in 0..=4 {
            let check = tight_vs_boundary_check(&space, bound).map_err(|e| e.to_string())?;
            ensure(
                check.bijective
                    && check.finite_paths == check.finite_filters
                    && check.lasso_paths == check.lasso_filters,
                || format!("{name} at {bound}: {check:?}"),
            )?;
            pairs += check.pairs.len();
        }
    }
    Ok(format!("{pairs} path/filter pairs"))
}

fn oracle() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mut spaces: Vec<LabelledSpace> = fixtures::all().into_iter().map(|(_, s)| s).collect();
    spaces.push(fixtures::single_loop());
    spaces.extend((0..10).map(|_| random_space(&mut rng, 5)));
    let (mut algebras, mut filters) = (0, 0);
    for space in &spaces {
        let report = oracle_agreement(space, 4);
        ensure(report.disagreements.is_empty(), || format!("{:?}", report.disagreements))?;
        algebras += report.algebras;
        filters += report.filters;
    }
    Ok(format!("{filters} filters over {algebras} algebras"))
}

fn main() -> ExitCode {
    let criteria: [(&str, Option<Duration>, fn() -> Outcome); 10] = [
        ("G1 spectrum has two points", Some(Duration::from_secs(1)), spectrum_of_g1),
        ("definitions separate on G1", Some(Duration::from_secs(1)), definition_separation),
        ("tight representation audit", None, tight_audit),
        ("non-vanishing of s_α p_A s_β*", Some(Duration::from_secs(10)), nonvanishing),
        ("surgery identities", Some(Duration::from_secs(60)), surgery),
        ("diagonal orthogonalization", None, orthogonalization),
        ("character round trip", None, characters),
        ("norm lower bound", None, norm_bound),
        ("boundary path correspondence", None, boundary_paths),
        ("ultrafilter oracle agreement", None, oracle),
    ];
    let mut failed = 0;
    for (i, (name, budget, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let mut outcome = check();
        let elapsed = start.elapsed();
        if let (Ok(detail), Some(limit)) = (&outcome, budget) {
            if elapsed > *limit {
                outcome = Err(format!("{detail}, but took longer than {limit:?}"));
            }
        }
        match outcome {
            Ok(detail) => println!("PASS {:>2}. {name}: {detail} [{elapsed:.2?}]", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2}. {name}: {why} [{elapsed:.2?}]", i + 1);
            }
        }
    }
    println!("{} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
