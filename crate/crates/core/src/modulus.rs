//! Spanning-tree 2-modulus by peeling D-optimal subgraphs.
//!
//! Each round finds a connected subgraph `H` of maximum density `D`, fixes
//! `η*(e) = σ(e)/D` on its edges and contracts it. The rounds end when a
//! single vertex remains; every other quantity follows from `η*`.

use num_traits::Zero;

use crate::backend::Backend;
use crate::bruteforce::{self, Family};
use crate::error::{Error, Result};
use crate::graph::{EdgeSet, Graph};
use crate::ratio::check_instance;
use crate::rational::{self, Rational};

/// One peeling round.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Peel {
    /// Size of the (contracted) graph the round ran on.
    pub vertex_count: usize,
    pub edge_count: usize,
    /// Names of the peeled vertices in that graph.
    pub vertices: Vec<String>,
    /// Density of the peeled subgraph.
    pub density: Rational,
    /// Peeled edges, as indices into the input graph.
    pub edges: EdgeSet,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModulusProfile {
    /// Optimal expected edge usage `η*`.
    pub eta: Vec<Rational>,
    /// Optimal density `ρ*`.
    pub rho: Vec<Rational>,
    pub mod2: Rational,
    /// Minimum expected overlap, `1 / mod2`.
    pub meo: Rational,
    /// Edges where `η*/σ` is smallest.
    pub e_min: EdgeSet,
    /// Edges where `η*/σ` is largest.
    pub e_max: EdgeSet,
    pub peel_sequence: Vec<Peel>,
}

impl ModulusProfile {
    /// `σ⁻¹η*` per edge.
    pub fn normalized_usage(&self, sigma: &[Rational]) -> Vec<Rational> {
        self.eta.iter().zip(sigma).map(|(h, s)| h / s).collect()
    }
}

pub fn spanning_tree_modulus(
    backend: &dyn Backend,
    g: &Graph,
    sigma: &[Rational],
) -> Result<ModulusProfile> {
    g.check_weights(sigma, false)?;
    check_instance(g, sigma)?;
    let mut eta: Vec<Option<Rational>> = vec![None; g.edge_count()];
    let mut current = g.clone();
    let mut peel_sequence = Vec::new();
    while current.vertex_count() > 1 {
        if peel_sequence.len() >= g.vertex_count() - 1 {
            return Err(Error::Internal("peeling exceeded |V| - 1 rounds".into()));
        }
        let origin: Vec<usize> = current
            .edges()
            .iter()
            .map(|e| g.edge_index(&e.id))
            .collect::<Result<_>>()?;
        let w: Vec<Rational> = origin.iter().map(|&e| sigma[e].clone()).collect();
        let d = backend.arboricity(&current, &w)?;
        let set = d
            .witness
            .vertices()
            .ok_or_else(|| Error::Internal("arboricity witness is not a vertex set".into()))?
            .clone();
        let inside = current.induced_edges(&set);
        if inside.is_empty() {
            return Err(Error::Internal("peeled subgraph has no edges".into()));
        }
        let mut peeled = EdgeSet::new();
        for &e in &inside {
            let k = origin[e];
            eta[k] = Some(&sigma[k] / &d.value);
            peeled.insert(k);
        }
        peel_sequence.push(Peel {
            vertex_count: current.vertex_count(),
            edge_count: current.edge_count(),
            vertices: current.vertex_names(&set),
            density: d.value,
            edges: peeled,
        });
        current = current.contract(&set)?;
    }
    let eta: Vec<Rational> = eta
        .into_iter()
        .map(|v| v.ok_or_else(|| Error::Internal("an edge was never peeled".into())))
        .collect::<Result<_>>()?;
    Ok(profile_from_eta(eta, sigma, peel_sequence))
}

fn profile_from_eta(eta: Vec<Rational>, sigma: &[Rational], peel_sequence: Vec<Peel>) -> ModulusProfile {
    let meo = eta
        .iter()
        .zip(sigma)
        .fold(Rational::zero(), |acc, (h, s)| acc + h * h / s);
    let mod2 = rational::one() / &meo;
    let rho = eta.iter().zip(sigma).map(|(h, s)| h * &mod2 / s).collect();
    let usage: Vec<Rational> = eta.iter().zip(sigma).map(|(h, s)| h / s).collect();
    let lo = usage.iter().min().expect("nonempty").clone();
    let hi = usage.iter().max().expect("nonempty").clone();
    let pick = |v: &Rational| (0..usage.len()).filter(|&e| usage[e] == *v).collect();
    ModulusProfile {
        e_min: pick(&lo),
        e_max: pick(&hi),
        eta,
        rho,
        mod2,
        meo,
        peel_sequence,
    }
}

/// `n_σ(e) = σ(e) f(E) / σ(E)`.
pub fn n_sigma(g: &Graph, sigma: &[Rational]) -> Result<Vec<Rational>> {
    check_instance(g, sigma)?;
    let scale = rational::int(g.full_rank() as i64) / rational::sum(sigma);
    Ok(sigma.iter().map(|s| s * &scale).collect())
}

/// Homogeneity as admissibility of `n_σ`, using the equivalent test
/// `S_σ ≥ σ(E)/f(E)`.
pub fn homogeneity_via_nsigma(backend: &dyn Backend, g: &Graph, sigma: &[Rational]) -> Result<bool> {
    check_instance(g, sigma)?;
    let s = backend.strength(g, sigma)?.value;
    Ok(s >= rational::sum(sigma) / rational::int(g.full_rank() as i64))
}

/// Homogeneity as admissibility of `n_σ`, checked directly against every
/// nonempty complement-closed set.
pub fn homogeneity_via_nsigma_exhaustive(g: &Graph, sigma: &[Rational]) -> Result<bool> {
    let n = n_sigma(g, sigma)?;
    Ok(bruteforce::exhaustive_adm_check(g, &n, Family::Phi)?.admissible)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtremesReport {
    pub strength: Rational,
    pub arboricity: Rational,
    pub max_usage: Rational,
    pub min_usage: Rational,
    /// Every identity that failed, described.
    pub violations: Vec<String>,
}

impl ExtremesReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks `1/max σ⁻¹η* = S_σ`, `1/min σ⁻¹η* = D_σ`, and that `E_max` and
/// `E_min` attain the strength and arboricity ratios.
pub fn verify_extremes(
    backend: &dyn Backend,
    profile: &ModulusProfile,
    g: &Graph,
    sigma: &[Rational],
) -> Result<ExtremesReport> {
    let strength = backend.strength(g, sigma)?.value;
    let arboricity = backend.arboricity(g, sigma)?.value;
    let usage = profile.normalized_usage(sigma);
    let max_usage = usage.iter().max().cloned().unwrap_or_default();
    let min_usage = usage.iter().min().cloned().unwrap_or_default();
    let mut violations = Vec::new();
    let fmt = rational::format;
    if rational::one() / &max_usage != strength {
        violations.push(format!(
            "1/max(η*/σ) = {} but strength is {}",
            fmt(&(rational::one() / &max_usage)),
            fmt(&strength)
        ));
    }
    if rational::one() / &min_usage != arboricity {
        violations.push(format!(
            "1/min(η*/σ) = {} but arboricity is {}",
            fmt(&(rational::one() / &min_usage)),
            fmt(&arboricity)
        ));
    }
    let mass = |set: &EdgeSet| rational::sum(set.iter().map(|&e| &sigma[e]));
    let drop = g.corank(&profile.e_max)?;
    if drop == 0 || mass(&profile.e_max) / rational::int(drop as i64) != strength {
        violations.push("E_max does not attain the strength".into());
    }
    let rank = g.rank(&profile.e_min)?;
    if rank == 0 || mass(&profile.e_min) / rational::int(rank as i64) != arboricity {
        violations.push("E_min does not attain the arboricity".into());
    }
    Ok(ExtremesReport {
        strength,
        arboricity,
        max_usage,
        min_usage,
        violations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::backend::{ExhaustiveBackend, NetworkBackend};
    use crate::fixtures::{bowtie, k3, single_edge};
    use crate::oracles::EdgeOptimum;
    use crate::ratio::{RatioWitness, Witness};
    use crate::rational::{int, ratio};

    #[test]
    fn triangle_profile() {
        let g = k3();
        let p = spanning_tree_modulus(&NetworkBackend, &g, &g.weights()).unwrap();
        assert_eq!(p.eta, vec![ratio(2, 3); 3]);
        assert_eq!(p.mod2, ratio(3, 4));
        assert_eq!(p.meo, ratio(4, 3));
        assert_eq!(p.rho, vec![ratio(1, 2); 3]);
        assert_eq!(p.e_min, EdgeSet::from([0, 1, 2]));
        assert_eq!(p.e_max, p.e_min);
        assert_eq!(p.peel_sequence.len(), 1);
        let report = verify_extremes(&NetworkBackend, &p, &g, &g.weights()).unwrap();
        assert!(report.ok(), "{:?}", report.violations);
    }

    #[test]
    fn bowtie_profile() {
        let g = bowtie();
        let p = spanning_tree_modulus(&NetworkBackend, &g, &g.weights()).unwrap();
        let mut eta = vec![ratio(2, 3); 7];
        eta[3] = int(1);
        assert_eq!(p.eta, eta);
        assert_eq!(rational::sum(&p.eta), int(5));
        assert_eq!(p.meo, ratio(11, 3));
        assert_eq!(p.mod2, ratio(3, 11));
        assert_eq!(p.e_max, EdgeSet::from([3]));
        assert_eq!(p.e_min, EdgeSet::from([0, 1, 2, 4, 5, 6]));
        assert_eq!(p.peel_sequence.len(), 3);
        let report = verify_extremes(&NetworkBackend, &p, &g, &g.weights()).unwrap();
        assert!(report.ok(), "{:?}", report.violations);
        assert_eq!((report.strength, report.arboricity), (int(1), ratio(3, 2)));
    }

    #[test]
    fn single_edge_profile() {
        let g = single_edge(int(7));
        let p = spanning_tree_modulus(&NetworkBackend, &g, &[int(7)]).unwrap();
        assert_eq!(p.eta, vec![int(1)]);
        assert_eq!(p.mod2, int(7));
    }

    /// Picks the last D-optimal connected vertex set instead of the first.
    struct LastTie;

    impl Backend for LastTie {
        fn name(&self) -> &'static str {
            "last-tie"
        }

        fn arboricity(&self, g: &Graph, w: &[Rational]) -> Result<RatioWitness> {
            let d = ExhaustiveBackend.arboricity(g, w)?.value;
            let n = g.vertex_count();
            let best = (1u64..1 << n)
                .rev()
                .map(|m| crate::graph::bits(m).collect::<crate::graph::VertexSet>())
                .find(|s| {
                    s.len() >= 2
                        && g.induced_components(s).len() == 1
                        && crate::ratio::vertex_ratio(g, w, s) == d
                })
                .unwrap();
            Ok(RatioWitness {
                value: d,
                witness: Witness::Vertices(best),
                iterations: 1,
                trace: vec![],
            })
        }

        fn strength(&self, g: &Graph, w: &[Rational]) -> Result<RatioWitness> {
            ExhaustiveBackend.strength(g, w)
        }

        fn attack(&self, g: &Graph, y: &[Rational], l: &Rational) -> Result<EdgeOptimum> {
            ExhaustiveBackend.attack(g, y, l)
        }

        fn reinforcement_oracle(&self, g: &Graph, x: &[Rational], j: usize, a: &Rational) -> Result<EdgeOptimum> {
            ExhaustiveBackend.reinforcement_oracle(g, x, j, a)
        }

        fn sparsification_oracle(&self, g: &Graph, x: &[Rational], j: usize, b: &Rational) -> Result<EdgeOptimum> {
            ExhaustiveBackend.sparsification_oracle(g, x, j, b)
        }
    }

    #[test]
    fn tie_choice_does_not_change_eta() {
        let g = bowtie();
        let first = spanning_tree_modulus(&NetworkBackend, &g, &g.weights()).unwrap();
        let last = spanning_tree_modulus(&LastTie, &g, &g.weights()).unwrap();
        assert_ne!(first.peel_sequence[0].edges, last.peel_sequence[0].edges);
        assert_eq!(first.eta, last.eta);
        assert_eq!(first.mod2, last.mod2);
    }

    #[test]
    fn n_sigma_examples() {
        let g = k3();
        assert_eq!(n_sigma(&g, &g.weights()).unwrap(), vec![ratio(2, 3); 3]);
        assert!(homogeneity_via_nsigma(&NetworkBackend, &g, &g.weights()).unwrap());
        assert!(homogeneity_via_nsigma_exhaustive(&g, &g.weights()).unwrap());
        let b = bowtie();
        assert_eq!(n_sigma(&b, &b.weights()).unwrap(), vec![ratio(5, 7); 7]);
        assert!(!homogeneity_via_nsigma(&NetworkBackend, &b, &b.weights()).unwrap());
        assert!(!homogeneity_via_nsigma_exhaustive(&b, &b.weights()).unwrap());
        let e = single_edge(int(2));
        assert_eq!(n_sigma(&e, &[int(2)]).unwrap(), vec![int(1)]);
        assert!(homogeneity_via_nsigma_exhaustive(&e, &[int(2)]).unwrap());
    }
}
