//! Solver backends selectable by name.
//!
//! The adjustment and modulus algorithms only need a handful of primitives;
//! a [`Backend`] supplies them either through min-cut networks or by
//! exhaustive enumeration.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::bruteforce;
use crate::error::{Error, Result};
use crate::graph::{EdgeIdx, Graph};
use crate::oracles::{self, EdgeOptimum};
use crate::ratio::{self, Homogeneity, RatioWitness, Witness};
use crate::rational::Rational;

pub trait Backend: Send + Sync {
    fn name(&self) -> &'static str;

    /// `D_σ` with a vertex witness inducing a connected D-optimal subgraph.
    fn arboricity(&self, g: &Graph, w: &[Rational]) -> Result<RatioWitness>;

    /// `S_σ` with an edge witness.
    fn strength(&self, g: &Graph, w: &[Rational]) -> Result<RatioWitness>;

    fn attack(&self, g: &Graph, y: &[Rational], lambda: &Rational) -> Result<EdgeOptimum>;

    fn reinforcement_oracle(
        &self,
        g: &Graph,
        x: &[Rational],
        j: EdgeIdx,
        alpha: &Rational,
    ) -> Result<EdgeOptimum>;

    fn sparsification_oracle(
        &self,
        g: &Graph,
        x: &[Rational],
        j: EdgeIdx,
        beta: &Rational,
    ) -> Result<EdgeOptimum>;

    fn homogeneity(&self, g: &Graph, w: &[Rational]) -> Result<Homogeneity> {
        let alpha = self.arboricity(g, w)?.value;
        let beta = self.strength(g, w)?.value;
        Ok(Homogeneity {
            homogeneous: alpha == beta,
            alpha,
            beta,
        })
    }
}

/// Min-cut networks; polynomial in the graph size.
#[derive(Debug, Clone, Copy, Default)]
pub struct NetworkBackend;

impl Backend for NetworkBackend {
    fn name(&self) -> &'static str {
        "network"
    }

    fn arboricity(&self, g: &Graph, w: &[Rational]) -> Result<RatioWitness> {
        ratio::arboricity(g, w)
    }

    fn strength(&self, g: &Graph, w: &[Rational]) -> Result<RatioWitness> {
        ratio::strength(g, w)
    }

    fn attack(&self, g: &Graph, y: &[Rational], lambda: &Rational) -> Result<EdgeOptimum> {
        oracles::attack_oracle(g, y, lambda)
    }

    fn reinforcement_oracle(
        &self,
        g: &Graph,
        x: &[Rational],
        j: EdgeIdx,
        alpha: &Rational,
    ) -> Result<EdgeOptimum> {
        oracles::reinforcement_oracle(g, x, j, alpha)
    }

    fn sparsification_oracle(
        &self,
        g: &Graph,
        x: &[Rational],
        j: EdgeIdx,
        beta: &Rational,
    ) -> Result<EdgeOptimum> {
        oracles::sparsification_oracle(g, x, j, beta)
    }
}

/// Enumeration over all subsets; bounded by the exhaustive size limit.
#[derive(Debug, Clone, Copy, Default)]
pub struct ExhaustiveBackend;

impl Backend for ExhaustiveBackend {
    fn name(&self) -> &'static str {
        "exhaustive"
    }

    fn arboricity(&self, g: &Graph, w: &[Rational]) -> Result<RatioWitness> {
        let (value, vertices) = bruteforce::exhaustive_densest_subgraph(g, w)?;
        Ok(RatioWitness {
            value,
            witness: Witness::Vertices(vertices),
            iterations: 1,
            trace: Vec::new(),
        })
    }

    fn strength(&self, g: &Graph, w: &[Rational]) -> Result<RatioWitness> {
        let mut out = bruteforce::exhaustive_strength(g, w)?;
        out.iterations = 1;
        Ok(out)
    }

    fn attack(&self, g: &Graph, y: &[Rational], lambda: &Rational) -> Result<EdgeOptimum> {
        bruteforce::exhaustive_attack(g, y, lambda)
    }

    fn reinforcement_oracle(
        &self,
        g: &Graph,
        x: &[Rational],
        j: EdgeIdx,
        alpha: &Rational,
    ) -> Result<EdgeOptimum> {
        bruteforce::exhaustive_reinforcement_oracle(g, x, j, alpha)
    }

    fn sparsification_oracle(
        &self,
        g: &Graph,
        x: &[Rational],
        j: EdgeIdx,
        beta: &Rational,
    ) -> Result<EdgeOptimum> {
        bruteforce::exhaustive_sparsification_oracle(g, x, j, beta)
    }
}

/// Backends by name.
#[derive(Clone)]
pub struct Registry {
    backends: BTreeMap<&'static str, Arc<dyn Backend>>,
}

impl Registry {
    pub fn empty() -> Self {
        Self {
            backends: BTreeMap::new(),
        }
    }

    /// Adds a backend, replacing any previous one of the same name.
    pub fn register(&mut self, backend: Arc<dyn Backend>) {
        self.backends.insert(backend.name(), backend);
    }

    pub fn get(&self, name: &str) -> Result<Arc<dyn Backend>> {
        self.backends.get(name).cloned().ok_or_else(|| {
            Error::InvalidArgument(format!(
                "unknown backend `{name}` (available: {})",
                self.names().join(", ")
            ))
        })
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.backends.keys().copied().collect()
    }
}

impl Default for Registry {
    fn default() -> Self {
        let mut r = Self::empty();
        r.register(Arc::new(NetworkBackend));
        r.register(Arc::new(ExhaustiveBackend));
        r
    }
}

impl std::fmt::Debug for Registry {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_list().entries(self.backends.keys()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::bowtie;
    use crate::rational::{int, ratio};

    #[test]
    fn registry_lookup() {
        let r = Registry::default();
        assert_eq!(r.names(), vec!["exhaustive", "network"]);
        assert_eq!(r.get("network").unwrap().name(), "network");
        assert!(matches!(r.get("simplex"), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn backends_agree_on_bowtie() {
        let g = bowtie();
        let w = g.weights();
        let r = Registry::default();
        for name in r.names() {
            let b = r.get(name).unwrap();
            let h = b.homogeneity(&g, &w).unwrap();
            assert_eq!((h.alpha, h.beta), (ratio(3, 2), int(1)), "{name}");
            let d = b.arboricity(&g, &w).unwrap();
            assert_eq!(d.witness.vertices().unwrap().len(), 3, "{name}");
            assert_eq!(
                b.reinforcement_oracle(&g, &w, 3, &ratio(3, 2)).unwrap().value,
                ratio(1, 2)
            );
        }
    }
}
