//! Seeded random labelled spaces for randomized suites.

use rand::Rng;

use crate::labelled::{generate_family, EdgeSpec, LabelledGraph, LabelledSpace, SetFamily, VertexSet};

/// A random labelled graph on 2..=`max_vertices` vertices with one or two
/// letters, carrying either the power set or a family generated by one or two
/// random sets. Retries until the family is a weakly left-resolving Boolean
/// family.
pub fn random_space(rng: &mut impl Rng, max_vertices: usize) -> LabelledSpace {
    let max_vertices = max_vertices.max(2);
    loop {
        let n = rng.gen_range(2..=max_vertices);
        let letters = rng.gen_range(1..=2);
        let edge_count = rng.gen_range(1..=2 * n);
        let names: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
        let edges: Vec<EdgeSpec> = (0..edge_count)
            .map(|k| EdgeSpec {
                id: format!("e{k:02}"),
                src: names[rng.gen_range(0..n)].clone(),
                rng: names[rng.gen_range(0..n)].clone(),
                label: ["a", "b"][rng.gen_range(0..letters)].to_string(),
            })
            .collect();
        let graph = LabelledGraph::new(&names, &edges).expect("generated graph is well formed");
        let family = if rng.gen_bool(0.5) {
            SetFamily::power_set(&graph).expect("small graph")
        } else {
            let generators: Vec<VertexSet> = (0..rng.gen_range(1..=2))
                .map(|_| VertexSet::from_bits(rng.gen_range(1..1u64 << n)))
                .collect();
            generate_family(&graph, &generators, true)
        };
        let space = LabelledSpace::new(graph, family);
        if space.require_boolean().is_ok() {
            return space;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn seeded_and_boolean() {
        let mut a = ChaCha8Rng::seed_from_u64(7);
        let mut b = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let (x, y) = (random_space(&mut a, 5), random_space(&mut b, 5));
            assert_eq!(x.graph().edges(), y.graph().edges());
            assert_eq!(x.family().members(), y.family().members());
            assert!(x.require_boolean().is_ok());
            assert!(x.graph().vertex_count() <= 5);
        }
    }

    #[test]
    fn surgery_laws_hold_on_random_spaces() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..10 {
            let space = random_space(&mut rng, 4);
            let report = crate::surgery::surgery_suite(&space, 3, 5).unwrap();
            assert!(report.passed(), "{:?}", report.violations);
        }
    }
}
