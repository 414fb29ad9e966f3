use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{BasisKey, Gen, Representation};
use crate::error::Error;
use crate::labelled::{LabelledGraph, LabelledSpace};

/// A copy of the natural numbers: E_e for an edge, or the copy attached to a
/// sink.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Container {
    Edge(usize),
    SinkCopy(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PathKey {
    pub container: Container,
    pub index: u64,
}

impl PathKey {
    pub fn new(container: Container, index: u64) -> Self {
        PathKey { container, index }
    }

    pub fn describe(&self, graph: &LabelledGraph) -> String {
        match self.container {
            Container::Edge(e) => format!("({},{})", graph.edges()[e].id, self.index),
            Container::SinkCopy(v) => format!("(SinkCopy({}),{})", graph.vertex_names()[v], self.index),
        }
    }
}

/// ℓ² of X = ⊔_v D_v, where D_v is the sink copy for a sink and ⊔_{s(e)=v} E_e
/// otherwise. S_a moves D_{r(e)} onto E_e along h_e for each a-labelled e.
pub struct PathRep<'a> {
    space: &'a LabelledSpace,
}

impl<'a> PathRep<'a> {
    pub fn new(space: &'a LabelledSpace) -> Result<Self, Error> {
        if !space.graph().is_left_resolving() {
            return Err(Error::NotLeftResolving);
        }
        Ok(PathRep { space })
    }

    /// The vertex v with the container inside D_v.
    pub fn vertex_of(&self, c: Container) -> usize {
        match c {
            Container::Edge(e) => self.space.graph().edges()[e].source,
            Container::SinkCopy(v) => v,
        }
    }

    pub fn containers(&self) -> Vec<Container> {
        let g = self.space.graph();
        let mut out: Vec<Container> = (0..g.edges().len()).map(Container::Edge).collect();
        out.extend(g.sinks().iter().map(Container::SinkCopy));
        out
    }

    fn self_loop_alone(&self, e: usize) -> bool {
        let g = self.space.graph();
        let v = g.edges()[e].range;
        g.out_edges(v) == [e]
    }

    /// h_e : D_{r(e)} → E_e.
    pub fn h(&self, e: usize, x: PathKey) -> Result<PathKey, Error> {
        let g = self.space.graph();
        let v = g.edges()[e].range;
        if self.vertex_of(x.container) != v {
            return Err(Error::Precondition(format!("{} is not in D_{}", x.describe(g), g.vertex_names()[v])));
        }
        let index = match x.container {
            Container::SinkCopy(_) => x.index,
            Container::Edge(_) if self.self_loop_alone(e) => x.index ^ 1,
            Container::Edge(f) => {
                let out = g.out_edges(v);
                let k = out.len() as u64;
                let i = out.iter().position(|&o| o == f).expect("f leaves v") as u64;
                x.index
                    .checked_mul(k)
                    .and_then(|n| n.checked_add(i))
                    .ok_or_else(|| Error::TooLarge("path index".into()))?
            }
        };
        Ok(PathKey::new(Container::Edge(e), index))
    }

    pub fn h_inverse(&self, e: usize, y: PathKey) -> Result<PathKey, Error> {
        let g = self.space.graph();
        if y.container != Container::Edge(e) {
            return Err(Error::Precondition(format!("{} is not in E_{}", y.describe(g), g.edges()[e].id)));
        }
        let v = g.edges()[e].range;
        let out = g.out_edges(v);
        Ok(if out.is_empty() {
            PathKey::new(Container::SinkCopy(v), y.index)
        } else if self.self_loop_alone(e) {
            PathKey::new(Container::Edge(e), y.index ^ 1)
        } else {
            let k = out.len() as u64;
            PathKey::new(Container::Edge(out[(y.index % k) as usize]), y.index / k)
        })
    }

    /// Indices 0..4 of every container followed by `samples` seeded random
    /// keys with index below 1024.
    pub fn sample_keys(&self, samples: usize, seed: u64) -> Vec<BasisKey> {
        let containers = self.containers();
        let mut keys: Vec<PathKey> = containers
            .iter()
            .flat_map(|&c| (0..4).map(move |i| PathKey::new(c, i)))
            .collect();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..samples {
            let c = containers[rng.gen_range(0..containers.len())];
            keys.push(PathKey::new(c, rng.gen_range(0..1024)));
        }
        let mut seen = std::collections::HashSet::new();
        keys.retain(|k| seen.insert(*k));
        keys.into_iter().map(BasisKey::Path).collect()
    }
}

impl Representation for PathRep<'_> {
    fn space(&self) -> &LabelledSpace {
        self.space
    }

    fn name(&self) -> &'static str {
        "path"
    }

    fn act(&self, generator: Gen, key: &BasisKey) -> Option<BasisKey> {
        let BasisKey::Path(x) = key else { return None };
        let g = self.space.graph();
        let v = self.vertex_of(x.container);
        match generator {
            Gen::P(a) => a.contains(v).then(|| key.clone()),
            Gen::S(a) => {
                let e = g.in_edges(v).iter().copied().find(|&e| g.edges()[e].label == a)?;
                self.h(e, *x).ok().map(BasisKey::Path)
            }
            Gen::SAdj(a) => match x.container {
                Container::Edge(e) if g.edges()[e].label == a => self.h_inverse(e, *x).ok().map(BasisKey::Path),
                _ => None,
            },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::repr::{first_difference, Operator};

    fn edge(space: &LabelledSpace, id: &str) -> usize {
        space.graph().edges().iter().position(|e| e.id == id).unwrap()
    }

    #[test]
    fn h_examples() {
        let g1 = fixtures::g1();
        let rep = PathRep::new(&g1).unwrap();
        let (e1, e2) = (edge(&g1, "e1"), edge(&g1, "e2"));
        let x = PathKey::new(Container::Edge(e2), 5);
        assert_eq!(rep.h(e1, x), Ok(PathKey::new(Container::Edge(e1), 5)));
        let y = rep.h(e1, PathKey::new(Container::Edge(e2), 0)).unwrap();
        assert_eq!(y, PathKey::new(Container::Edge(e1), 0));
        assert_eq!(rep.h_inverse(e1, y), Ok(PathKey::new(Container::Edge(e2), 0)));
        assert!(rep.h(e1, PathKey::new(Container::Edge(e1), 0)).is_err());

        let g2 = fixtures::g2();
        let rep = PathRep::new(&g2).unwrap();
        let f = edge(&g2, "f");
        let w = g2.graph().vertex_index("w").unwrap();
        let x = PathKey::new(Container::SinkCopy(w), 3);
        assert_eq!(rep.h(f, x), Ok(PathKey::new(Container::Edge(f), 3)));
    }

    #[test]
    fn lone_self_loop_is_not_the_identity() {
        let space = fixtures::single_loop();
        let rep = PathRep::new(&space).unwrap();
        let x = PathKey::new(Container::Edge(0), 4);
        assert_eq!(rep.h(0, x).unwrap().index, 5);
        assert_eq!(rep.h_inverse(0, rep.h(0, x).unwrap()), Ok(x));
    }

    #[test]
    fn h_is_a_bijection() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for space in [fixtures::g1(), fixtures::g1p(), fixtures::g2(), fixtures::single_loop()] {
            let rep = PathRep::new(&space).unwrap();
            let g = space.graph();
            for e in 0..g.edges().len() {
                let v = g.edges()[e].range;
                let domain: Vec<Container> = rep.containers().into_iter().filter(|&c| rep.vertex_of(c) == v).collect();
                for _ in 0..1000 {
                    let x = PathKey::new(domain[rng.gen_range(0..domain.len())], rng.gen_range(0..1 << 20));
                    let y = rep.h(e, x).unwrap();
                    assert_eq!(y.container, Container::Edge(e));
                    assert_eq!(rep.h_inverse(e, y), Ok(x));
                    let z = PathKey::new(Container::Edge(e), rng.gen_range(0..1 << 20));
                    assert_eq!(rep.h(e, rep.h_inverse(e, z).unwrap()), Ok(z));
                }
            }
        }
    }

    #[test]
    fn g1_example() {
        let g1 = fixtures::g1();
        let rep = PathRep::new(&g1).unwrap();
        let all = g1.graph().all_vertices();
        let v3 = g1.graph().vertex_index("v3").unwrap();
        let sink = BasisKey::Path(PathKey::new(Container::SinkCopy(v3), 0));
        let ss = Operator::s(0).then(&Operator::s_adj(0));
        assert!(ss.apply_basis(&rep, &sink).is_zero());
        assert_eq!(rep.act(Gen::P(all), &sink), Some(sink.clone()));
        let v12 = g1.graph().parse_set(&["v1".into(), "v2".into()]).unwrap();
        let keys = rep.sample_keys(100, 0);
        assert_eq!(first_difference(&rep, &ss, &Operator::p(v12), &keys), None);
        let v1 = g1.graph().parse_set(&["v1".into()]).unwrap();
        let x = BasisKey::Path(PathKey::new(Container::Edge(edge(&g1, "e1")), 3));
        assert_eq!(rep.act(Gen::P(v1), &x), Some(x.clone()));
    }

    #[test]
    fn partial_isometries() {
        for space in [fixtures::g1(), fixtures::g2(), fixtures::g1p()] {
            let rep = PathRep::new(&space).unwrap();
            let keys = rep.sample_keys(50, 9);
            for a in space.letters() {
                let lhs = Operator::s_adj(a).then(&Operator::s(a));
                let domain = Operator::p(space.range(&crate::labelled::Word::letter(a)));
                assert_eq!(first_difference(&rep, &lhs, &domain, &keys), None);
            }
        }
    }

    #[test]
    fn requires_left_resolving() {
        let doc = crate::cli::GraphDocument::parse(
            r#"{"vertices":["x","y"],"edges":[
                {"id":"e","src":"x","rng":"y","label":"a"},
                {"id":"f","src":"y","rng":"y","label":"a"}],"family":"power_set"}"#,
        )
        .unwrap();
        let space = doc.space().unwrap();
        assert_eq!(PathRep::new(&space).err(), Some(Error::NotLeftResolving));
    }
}
