//! Minimum-cost homogenizing adjustments: raise weights until every part is
//! as dense as the densest one (reinforcement), or lower them until every
//! part is as weak as the weakest cut (sparsification).

use num_traits::Zero;

use crate::backend::Backend;
use crate::error::{Error, Result};
use crate::graph::{EdgeIdx, EdgeSet, Graph};
use crate::ratio::check_instance;
use crate::rational::{self, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdjustmentStep {
    pub edge: EdgeIdx,
    pub epsilon: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdjustmentPlan {
    /// Per-edge change, in graph edge order.
    pub z: Vec<Rational>,
    pub total_cost: Rational,
    /// `α` for reinforcement, `β` for sparsification.
    pub target_level: Rational,
    /// Edges whose adjusted weight is zero (sparsification only).
    pub removable_edges: EdgeSet,
    /// Oracle steps in processing order.
    pub steps: Vec<AdjustmentStep>,
}

impl AdjustmentPlan {
    /// The adjusted weights `σ ± z` after the first `k` steps.
    pub fn weights_after(&self, sigma: &[Rational], k: usize, increase: bool) -> Vec<Rational> {
        let mut x = sigma.to_vec();
        for step in &self.steps[..k] {
            if increase {
                x[step.edge] += &step.epsilon;
            } else {
                x[step.edge] -= &step.epsilon;
            }
        }
        x
    }
}

/// Edge indices sorted by nondecreasing cost, ties by position.
pub fn greedy_order(costs: &[Rational]) -> Vec<EdgeIdx> {
    let mut order: Vec<EdgeIdx> = (0..costs.len()).collect();
    order.sort_by(|&a, &b| costs[a].cmp(&costs[b]));
    order
}

fn check_inputs(g: &Graph, sigma: &[Rational], costs: &[Rational]) -> Result<()> {
    g.check_weights(sigma, false)?;
    check_instance(g, sigma)?;
    if costs.len() != g.edge_count() {
        return Err(Error::InvalidArgument(format!(
            "expected {} costs, got {}",
            g.edge_count(),
            costs.len()
        )));
    }
    if costs.iter().any(rational::is_negative) {
        return Err(Error::InvalidArgument("costs must be nonnegative".into()));
    }
    Ok(())
}

fn total_cost(costs: &[Rational], z: &[Rational]) -> Rational {
    costs.iter().zip(z).fold(Rational::zero(), |acc, (m, z)| acc + m * z)
}

/// Cheapest `z ≥ 0` making `σ + z` homogeneous at level `D_σ(G)`: each edge,
/// cheapest first, is raised as far as the reinforcement oracle allows.
pub fn reinforce(
    backend: &dyn Backend,
    g: &Graph,
    sigma: &[Rational],
    costs: &[Rational],
) -> Result<AdjustmentPlan> {
    check_inputs(g, sigma, costs)?;
    let alpha = backend.arboricity(g, sigma)?.value;
    let mut x = sigma.to_vec();
    let mut z = vec![Rational::zero(); g.edge_count()];
    let mut steps = Vec::with_capacity(g.edge_count());
    for j in greedy_order(costs) {
        let eps = backend.reinforcement_oracle(g, &x, j, &alpha)?.value;
        x[j] += &eps;
        z[j] += &eps;
        steps.push(AdjustmentStep { edge: j, epsilon: eps });
    }
    Ok(AdjustmentPlan {
        total_cost: total_cost(costs, &z),
        z,
        target_level: alpha,
        removable_edges: EdgeSet::new(),
        steps,
    })
}

/// Cheapest `z ≥ 0` making `σ - z` homogeneous at level `S_σ(G)`: each edge,
/// cheapest first, is lowered as far as the sparsification oracle allows.
/// Edges driven to zero stay in the plan and are listed as removable.
pub fn sparsify(
    backend: &dyn Backend,
    g: &Graph,
    sigma: &[Rational],
    costs: &[Rational],
) -> Result<AdjustmentPlan> {
    check_inputs(g, sigma, costs)?;
    let beta = backend.strength(g, sigma)?.value;
    let mut x = sigma.to_vec();
    let mut z = vec![Rational::zero(); g.edge_count()];
    let mut steps = Vec::with_capacity(g.edge_count());
    for j in greedy_order(costs) {
        let eps = backend.sparsification_oracle(g, &x, j, &beta)?.value;
        if eps > x[j] {
            return Err(Error::Internal(format!(
                "sparsification step on `{}` exceeds its weight",
                g.edge(j).id
            )));
        }
        x[j] -= &eps;
        z[j] += &eps;
        steps.push(AdjustmentStep { edge: j, epsilon: eps });
    }
    let removable_edges = (0..g.edge_count()).filter(|&e| x[e].is_zero()).collect();
    Ok(AdjustmentPlan {
        total_cost: total_cost(costs, &z),
        z,
        target_level: beta,
        removable_edges,
        steps,
    })
}

/// The graph with every zero-weight edge deleted, and the matching weights.
pub fn drop_zero_weight(g: &Graph, w: &[Rational]) -> Result<(Graph, Vec<Rational>)> {
    let zero: EdgeSet = (0..g.edge_count()).filter(|&e| w[e].is_zero()).collect();
    let reduced = g.delete(&zero)?;
    let kept = w
        .iter()
        .enumerate()
        .filter(|(e, _)| !zero.contains(e))
        .map(|(_, v)| v.clone())
        .collect();
    Ok((reduced, kept))
}
