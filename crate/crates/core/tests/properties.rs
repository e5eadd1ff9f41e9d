use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use matroid_forge::adjust::{reinforce, sparsify};
use matroid_forge::bruteforce;
use matroid_forge::corpus::{random_instance, CorpusSpec, Instance};
use matroid_forge::graph::Graph;
use matroid_forge::io;
use matroid_forge::modulus::{homogeneity_via_nsigma, spanning_tree_modulus};
use matroid_forge::polymatroid::SubmodularOracle;
use matroid_forge::rational::{self, int, Rational};
use matroid_forge::verify::verify_instance;
use matroid_forge::{arboricity, is_homogeneous, strength, ExhaustiveBackend, NetworkBackend};

fn instance(seed: u64, max_vertices: usize, max_edges: usize) -> Instance {
    let spec = CorpusSpec {
        seed,
        count: 1,
        max_vertices,
        max_edges,
        max_weight: 4,
    };
    random_instance(&mut ChaCha8Rng::seed_from_u64(seed), &spec)
}

fn small() -> impl Strategy<Value = Instance> {
    any::<u64>().prop_map(|seed| instance(seed, 5, 8))
}

fn reversed(g: &Graph) -> Graph {
    let edges: Vec<_> = g
        .edges()
        .iter()
        .rev()
        .map(|e| {
            (
                e.id.clone(),
                g.vertex_name(e.u).to_string(),
                g.vertex_name(e.v).to_string(),
                e.weight.clone(),
            )
        })
        .collect();
    Graph::new(g.vertices().to_vec(), edges).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ratios_match_exhaustive(inst in small()) {
        let g = &inst.graph;
        let w = g.weights();
        let s = strength(g, &w).unwrap().value;
        let d = arboricity(g, &w).unwrap().value;
        prop_assert_eq!(&s, &bruteforce::exhaustive_strength(g, &w).unwrap().value);
        prop_assert_eq!(&d, &bruteforce::exhaustive_arboricity(g, &w).unwrap().value);
        let mean = rational::sum(&w) / int(g.full_rank() as i64);
        prop_assert!(s <= mean && mean <= d);
    }

    #[test]
    fn ratios_scale_linearly(inst in small(), k in 1i64..6) {
        let g = &inst.graph;
        let w = g.weights();
        let scaled: Vec<Rational> = w.iter().map(|x| x * int(k)).collect();
        prop_assert_eq!(strength(g, &scaled).unwrap().value, strength(g, &w).unwrap().value * int(k));
        prop_assert_eq!(arboricity(g, &scaled).unwrap().value, arboricity(g, &w).unwrap().value * int(k));
    }

    #[test]
    fn backends_agree(inst in small()) {
        let g = &inst.graph;
        let w = g.weights();
        let fast = reinforce(&NetworkBackend, g, &w, &inst.costs).unwrap();
        let slow = reinforce(&ExhaustiveBackend, g, &w, &inst.costs).unwrap();
        prop_assert_eq!(fast.z, slow.z);
        let fast = sparsify(&NetworkBackend, g, &w, &inst.costs).unwrap();
        let slow = sparsify(&ExhaustiveBackend, g, &w, &inst.costs).unwrap();
        prop_assert_eq!(fast.z, slow.z);
    }

    #[test]
    fn adjustments_reach_homogeneity(inst in small()) {
        let g = &inst.graph;
        let w = g.weights();
        let h = is_homogeneous(g, &w).unwrap();
        prop_assert!(h.alpha >= h.beta);
        prop_assert_eq!(h.homogeneous, homogeneity_via_nsigma(&NetworkBackend, g, &w).unwrap());

        let up = reinforce(&NetworkBackend, g, &w, &inst.costs).unwrap();
        prop_assert!(up.z.iter().all(|z| !rational::is_negative(z)));
        let x = up.weights_after(&w, up.steps.len(), true);
        prop_assert!(is_homogeneous(g, &x).unwrap().homogeneous);
        if h.homogeneous {
            prop_assert_eq!(&up.total_cost, &int(0));
        }

        let down = sparsify(&NetworkBackend, g, &w, &inst.costs).unwrap();
        prop_assert!(down.z.iter().zip(&w).all(|(z, s)| !rational::is_negative(z) && z <= s));
        if h.homogeneous {
            prop_assert_eq!(&down.total_cost, &int(0));
        }
    }

    #[test]
    fn edge_order_does_not_change_costs(inst in small(), flat in any::<bool>()) {
        let g = &inst.graph;
        let w = g.weights();
        let costs = if flat { vec![int(1); g.edge_count()] } else { inst.costs.clone() };
        let rev = reversed(g);
        let rev_costs: Vec<Rational> = costs.iter().rev().cloned().collect();
        let rw = rev.weights();
        prop_assert_eq!(
            reinforce(&NetworkBackend, g, &w, &costs).unwrap().total_cost,
            reinforce(&NetworkBackend, &rev, &rw, &rev_costs).unwrap().total_cost
        );
        prop_assert_eq!(
            sparsify(&NetworkBackend, g, &w, &costs).unwrap().total_cost,
            sparsify(&NetworkBackend, &rev, &rw, &rev_costs).unwrap().total_cost
        );
    }

    #[test]
    fn modulus_profile_is_consistent(inst in small()) {
        let g = &inst.graph;
        let w = g.weights();
        let p = spanning_tree_modulus(&NetworkBackend, g, &w).unwrap();
        prop_assert_eq!(rational::sum(&p.eta), int(g.vertex_count() as i64 - 1));
        prop_assert_eq!(&p.mod2 * &p.meo, int(1));
        prop_assert!(p.eta.iter().all(rational::is_positive));
        let usage = p.normalized_usage(&w);
        let max = usage.iter().max().unwrap();
        let min = usage.iter().min().unwrap();
        prop_assert_eq!(int(1) / max, strength(g, &w).unwrap().value);
        prop_assert_eq!(int(1) / min, arboricity(g, &w).unwrap().value);
        let peeled: usize = p.peel_sequence.iter().map(|peel| peel.edges.len()).sum();
        prop_assert_eq!(peeled, g.edge_count());
        prop_assert!(p.peel_sequence.windows(2).all(|w| w[1].density <= w[0].density));
    }

    #[test]
    fn verify_passes(inst in any::<u64>().prop_map(|seed| instance(seed, 4, 6))) {
        let g = &inst.graph;
        let report = verify_instance(&NetworkBackend, g, &g.weights(), &inst.costs).unwrap();
        let failed: Vec<_> = report.checks.iter().filter(|c| !c.ok).map(|c| c.name.clone()).collect();
        prop_assert!(report.ok, "failed checks: {:?}", failed);
    }

    #[test]
    fn json_round_trip(inst in small()) {
        let g = &inst.graph;
        let text = io::render(&io::graph_to_json(g));
        prop_assert_eq!(&io::parse_graph(&text).unwrap(), g);
    }

    #[test]
    fn rationals_round_trip(p in -1000i64..1000, q in 1i64..1000) {
        let r = rational::ratio(p, q);
        prop_assert_eq!(rational::parse(&rational::format(&r)).unwrap(), r);
    }

    #[test]
    fn random_polymatroids_satisfy_axioms(seed in any::<u64>(), size in 1usize..6) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = SubmodularOracle::random(&mut rng, size).unwrap();
        prop_assert!(f.check_axioms().is_ok());
        let c = f.value(f.full_mask()).clone() + int(1);
        prop_assert!(f.translated(&c).check_axioms().is_ok());
    }
}
