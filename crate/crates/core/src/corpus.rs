//! Seeded random instances for equivalence testing.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::Graph;
use crate::rational::{int, Rational};

#[derive(Debug, Clone)]
pub struct CorpusSpec {
    pub seed: u64,
    pub count: usize,
    pub max_vertices: usize,
    pub max_edges: usize,
    pub max_weight: i64,
}

impl Default for CorpusSpec {
    fn default() -> Self {
        Self {
            seed: 0x5eed,
            count: 200,
            max_vertices: 6,
            max_edges: 10,
            max_weight: 5,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Instance {
    pub graph: Graph,
    pub costs: Vec<Rational>,
}

/// Connected multigraphs: a random spanning tree plus random extra edges
/// (parallel edges allowed), integer weights and costs in `1..=max_weight`.
pub fn generate(spec: &CorpusSpec) -> Vec<Instance> {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    (0..spec.count)
        .map(|_| random_instance(&mut rng, spec))
        .collect()
}

pub fn random_instance(rng: &mut impl Rng, spec: &CorpusSpec) -> Instance {
    let n = rng.gen_range(2..=spec.max_vertices.max(2));
    let max_m = spec.max_edges.max(n - 1);
    let m = rng.gen_range(n - 1..=max_m);
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut pairs = Vec::with_capacity(m);
    for i in 1..n {
        let j = rng.gen_range(0..i);
        pairs.push((order[i], order[j]));
    }
    while pairs.len() < m {
        let u = rng.gen_range(0..n);
        let mut v = rng.gen_range(0..n - 1);
        if v >= u {
            v += 1;
        }
        pairs.push((u, v));
    }
    pairs.shuffle(rng);
    let vertices: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
    let edges = pairs.iter().enumerate().map(|(k, &(u, v))| {
        (
            format!("e{k}"),
            vertices[u].clone(),
            vertices[v].clone(),
            int(rng.gen_range(1..=spec.max_weight)),
        )
    });
    let graph = Graph::new(vertices.clone(), edges.collect::<Vec<_>>()).expect("generated graph is valid");
    let costs = (0..m).map(|_| int(rng.gen_range(1..=spec.max_weight))).collect();
    Instance { graph, costs }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generated_graphs_are_connected_and_bounded() {
        let spec = CorpusSpec {
            count: 50,
            ..CorpusSpec::default()
        };
        for inst in generate(&spec) {
            assert!(inst.graph.is_connected());
            assert!(inst.graph.vertex_count() <= spec.max_vertices);
            assert!(inst.graph.edge_count() <= spec.max_edges);
            assert_eq!(inst.costs.len(), inst.graph.edge_count());
        }
    }

    #[test]
    fn generation_is_deterministic() {
        let spec = CorpusSpec {
            count: 5,
            ..CorpusSpec::default()
        };
        let a = generate(&spec);
        let b = generate(&spec);
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x.graph, y.graph);
            assert_eq!(x.costs, y.costs);
        }
    }
}
