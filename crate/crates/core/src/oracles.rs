//! Auxiliary min-cut networks over a graph and the oracles built on them.
//!
//! All networks share one layout: graph vertices keep their indices, the
//! source `r` is vertex `n` and the sink `s` is vertex `n + 1`. A graph
//! edge `e` carries `x(e)/2`, every `v-s` edge carries 1 and every `v-r`
//! edge carries `x(δ(v))/2`, so the cut `A ∪ {r}` is worth
//! `x(E) - x(E_A) + |A|`.

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::graph::{EdgeIdx, EdgeSet, Graph, VertexIdx, VertexSet};
use crate::mincut::{min_rs_cut, CapNetwork, Capacity, CutResult};
use crate::rational::{self, Rational};

/// A minimum over vertex sets together with the minimizing set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexOptimum {
    pub value: Rational,
    pub vertices: VertexSet,
}

/// A minimum over edge sets together with the minimizing set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeOptimum {
    pub value: Rational,
    pub edges: EdgeSet,
}

fn check_nonnegative(g: &Graph, x: &[Rational]) -> Result<()> {
    g.check_weights(x, true)
}

fn check_positive(name: &str, v: &Rational) -> Result<()> {
    if v.is_positive() {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!(
            "{name} must be positive, got {}",
            rational::format(v)
        )))
    }
}

/// Violation network with infinite `v-r` capacity on every vertex of `forced`.
fn network(g: &Graph, x: &[Rational], forced: &[VertexIdx]) -> CapNetwork {
    let n = g.vertex_count();
    let (r, s) = (n, n + 1);
    let half = rational::ratio(1, 2);
    let mut degree = vec![Rational::zero(); n];
    let mut net = CapNetwork::new(n + 2, r, s).expect("terminals are distinct");
    for (e, w) in g.edges().iter().zip(x) {
        degree[e.u] += w;
        degree[e.v] += w;
        net.add_edge(e.u, e.v, Capacity::Finite(w * &half))
            .expect("valid edge");
    }
    for (v, d) in degree.into_iter().enumerate() {
        net.add_edge(v, s, Capacity::Finite(rational::one()))
            .expect("valid edge");
        let cap = if forced.contains(&v) {
            Capacity::Infinite
        } else {
            Capacity::Finite(d * &half)
        };
        net.add_edge(v, r, cap).expect("valid edge");
    }
    net
}

pub fn build_violation_network(g: &Graph, x: &[Rational]) -> Result<CapNetwork> {
    check_nonnegative(g, x)?;
    Ok(network(g, x, &[]))
}

/// `x(E) - x(E_A) + |A|`, the value of the cut `A ∪ {r}`.
pub fn violation_cut_formula(g: &Graph, x: &[Rational], side: &VertexSet) -> Rational {
    let inside = g.induced_edges(side);
    let total = rational::sum(x);
    let within = rational::sum(inside.iter().map(|&e| &x[e]));
    total - within + rational::int(side.len() as i64)
}

fn finite_cut(cut: &CutResult, source: usize) -> Result<(&Rational, VertexSet)> {
    let value = cut
        .value
        .finite()
        .ok_or_else(|| Error::Internal("violation network has no finite cut".into()))?;
    let mut side = cut.source_side.clone();
    side.remove(&source);
    Ok((value, side))
}

/// `min{(|B| - 1) - x(E_B) : ∅ ≠ B ⊆ V}` with its minimizer, using one cut
/// per forced vertex. Ties keep the first vertex in graph order.
pub fn most_violated(g: &Graph, x: &[Rational]) -> Result<VertexOptimum> {
    check_nonnegative(g, x)?;
    if g.vertex_count() == 0 {
        return Err(Error::InvalidArgument("graph has no vertices".into()));
    }
    let total = rational::sum(x);
    let mut best: Option<VertexOptimum> = None;
    for v in 0..g.vertex_count() {
        let cut = min_rs_cut(&network(g, x, &[v]));
        let (value, side) = finite_cut(&cut, g.vertex_count())?;
        let value = value - &total - rational::one();
        if best.as_ref().is_none_or(|b| value < b.value) {
            best = Some(VertexOptimum {
                value,
                vertices: side,
            });
        }
    }
    Ok(best.expect("at least one vertex"))
}

/// `g(b) = min{b(|B| - 1) - σ(E_B) : |B| ≥ 2}`, valid in the regime
/// `b ≤ D_σ(G)` where it coincides with the most-violated inequality for
/// `σ / b`.
pub fn eval_g(g: &Graph, sigma: &[Rational], b: &Rational) -> Result<VertexOptimum> {
    check_positive("b", b)?;
    let x: Vec<Rational> = sigma.iter().map(|s| s / b).collect();
    let mv = most_violated(g, &x)?;
    Ok(VertexOptimum {
        value: mv.value * b,
        vertices: mv.vertices,
    })
}

/// `min{α f(A) - x(A) : j ∈ A ⊆ E}` for `x ∈ α P_f`, from one cut with both
/// endpoints of `j` pinned to the source. The witness is `E_B` for the
/// canonical minimal source side `B`.
pub fn reinforcement_oracle(
    g: &Graph,
    x: &[Rational],
    j: EdgeIdx,
    alpha: &Rational,
) -> Result<EdgeOptimum> {
    check_nonnegative(g, x)?;
    g.check_edge(j)?;
    check_positive("alpha", alpha)?;
    let (value, side) = pinned_cut(g, x, j, alpha);
    if value.is_negative() {
        return Err(Error::Internal(format!(
            "reinforcement oracle for `{}` is negative ({}); weights are outside alpha*P_f",
            g.edge(j).id,
            rational::format(&value)
        )));
    }
    Ok(EdgeOptimum {
        value,
        edges: g.induced_edges(&side),
    })
}

fn pinned_cut(g: &Graph, x: &[Rational], j: EdgeIdx, alpha: &Rational) -> (Rational, VertexSet) {
    let scaled: Vec<Rational> = x.iter().map(|w| w / alpha).collect();
    let edge = g.edge(j);
    let cut = min_rs_cut(&network(g, &scaled, &[edge.u, edge.v]));
    let (value, side) = finite_cut(&cut, g.vertex_count()).expect("pinned network always has a finite cut");
    let value = (value - rational::sum(&scaled) - rational::one()) * alpha;
    (value, side)
}

/// Greedy P-basis of `y` in `λ P_f`, from which every attack minimizer is read off.
///
/// With `x` the basis, `min{λ f(B) - y(B)} = x(E) - y(E)`, and the
/// minimizers are exactly the `x`-tight sets containing every edge with
/// `x(e) < y(e)`.
#[derive(Debug, Clone)]
pub struct AttackSolution {
    pub value: Rational,
    pub basis: Vec<Rational>,
    lambda: Rational,
    demand: Vec<Rational>,
}

impl AttackSolution {
    /// Smallest minimizer: the union of the minimal tight sets around the
    /// edges where the basis falls short of `y`.
    pub fn minimal_witness(&self, g: &Graph) -> EdgeSet {
        let mut out = EdgeSet::new();
        for e in 0..g.edge_count() {
            if self.basis[e] < self.demand[e] && !out.contains(&e) {
                let (value, side) = pinned_cut(g, &self.basis, e, &self.lambda);
                debug_assert!(value.is_zero());
                out.extend(g.induced_edges(&side));
            }
        }
        out
    }

    /// Largest minimizer: every edge lying in some tight set.
    pub fn maximal_witness(&self, g: &Graph) -> EdgeSet {
        (0..g.edge_count())
            .filter(|&e| {
                self.basis[e] < self.demand[e] || {
                    let (value, _) = pinned_cut(g, &self.basis, e, &self.lambda);
                    value.is_zero()
                }
            })
            .collect()
    }
}

pub fn attack_solve(g: &Graph, y: &[Rational], lambda: &Rational) -> Result<AttackSolution> {
    check_nonnegative(g, y)?;
    check_positive("lambda", lambda)?;
    let mut basis = vec![Rational::zero(); g.edge_count()];
    for j in 0..g.edge_count() {
        if y[j].is_zero() {
            continue;
        }
        let (room, _) = pinned_cut(g, &basis, j, lambda);
        basis[j] = room.min(y[j].clone());
    }
    let value = rational::sum(&basis) - rational::sum(y);
    Ok(AttackSolution {
        value,
        basis,
        lambda: lambda.clone(),
        demand: y.to_vec(),
    })
}

/// `min{λ f(B) - y(B) : B ⊆ E}` with its inclusion-minimal minimizer.
pub fn attack_oracle(g: &Graph, y: &[Rational], lambda: &Rational) -> Result<EdgeOptimum> {
    let sol = attack_solve(g, y, lambda)?;
    let edges = sol.minimal_witness(g);
    Ok(EdgeOptimum {
        value: sol.value,
        edges,
    })
}

/// `min{x(A) - β g(A) : j ∈ A ⊆ E}` for `x ∈ β Q_g`.
///
/// Substituting `B = E - A` turns this into `x(E) - β f(E)` plus an attack
/// problem on `G - j` with `λ = β`. The witness is `E - B` for the largest
/// attack minimizer `B`, i.e. the smallest optimal `A`.
pub fn sparsification_oracle(
    g: &Graph,
    x: &[Rational],
    j: EdgeIdx,
    beta: &Rational,
) -> Result<EdgeOptimum> {
    check_nonnegative(g, x)?;
    g.check_edge(j)?;
    check_positive("beta", beta)?;
    let reduced = g.delete(&EdgeSet::from([j]))?;
    let lift = |k: EdgeIdx| if k < j { k } else { k + 1 };
    let y: Vec<Rational> = (0..reduced.edge_count()).map(|k| x[lift(k)].clone()).collect();
    let sol = attack_solve(&reduced, &y, beta)?;
    let keep: EdgeSet = sol.maximal_witness(&reduced).into_iter().map(lift).collect();
    let value = rational::sum(x) - beta * rational::int(g.full_rank() as i64) + &sol.value;
    if value.is_negative() {
        return Err(Error::Internal(format!(
            "sparsification oracle for `{}` is negative ({}); weights are outside beta*Q_g",
            g.edge(j).id,
            rational::format(&value)
        )));
    }
    let edges = (0..g.edge_count()).filter(|e| !keep.contains(e)).collect();
    Ok(EdgeOptimum { value, edges })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{bowtie, k3, single_edge};
    use crate::rational::{int, ratio};

    fn ones(g: &Graph) -> Vec<Rational> {
        vec![int(1); g.edge_count()]
    }

    #[test]
    fn single_edge_network_layout() {
        let g = single_edge(int(2));
        let net = build_violation_network(&g, &[int(2)]).unwrap();
        // u=0, v=1, r=2, s=3
        let caps: Vec<_> = net
            .edges()
            .iter()
            .map(|e| (e.u, e.v, e.capacity.clone()))
            .collect();
        let one = Capacity::Finite(int(1));
        assert!(caps.contains(&(0, 1, one.clone())));
        assert!(caps.contains(&(0, 3, one.clone())));
        assert!(caps.contains(&(1, 3, one.clone())));
        assert!(caps.contains(&(0, 2, one.clone())));
        assert!(caps.contains(&(1, 2, one)));
        assert_eq!(net.cut_value(&VertexSet::from([2])), Capacity::Finite(int(2)));
        assert_eq!(
            net.cut_value(&VertexSet::from([0, 1, 2])),
            Capacity::Finite(int(2))
        );
        assert_eq!(violation_cut_formula(&g, &[int(2)], &VertexSet::from([0, 1])), int(2));
    }

    #[test]
    fn most_violated_examples() {
        let g = k3();
        let mv = most_violated(&g, &vec![ratio(2, 3); 3]).unwrap();
        assert_eq!(mv.value, int(0));
        assert!(!mv.vertices.is_empty());
        let mv = most_violated(&g, &ones(&g)).unwrap();
        assert_eq!(mv.value, int(-1));
        assert_eq!(mv.vertices, VertexSet::from([0, 1, 2]));
        let e = single_edge(int(1));
        let mv = most_violated(&e, &[int(0)]).unwrap();
        assert_eq!(mv.value, int(0));
        assert_eq!(mv.vertices.len(), 1);
    }

    #[test]
    fn eval_g_examples() {
        let g = k3();
        assert_eq!(eval_g(&g, &ones(&g), &ratio(3, 2)).unwrap().value, int(0));
        let at_one = eval_g(&g, &ones(&g), &int(1)).unwrap();
        assert_eq!(at_one.value, int(-1));
        assert_eq!(at_one.vertices, VertexSet::from([0, 1, 2]));
        let b = bowtie();
        let r = eval_g(&b, &ones(&b), &ratio(7, 5)).unwrap();
        assert_eq!(r.value, ratio(-1, 5));
        assert_eq!(r.vertices, VertexSet::from([0, 1, 2]));
        assert!(eval_g(&g, &ones(&g), &int(0)).is_err());
    }

    #[test]
    fn reinforcement_oracle_examples() {
        let g = k3();
        for j in 0..3 {
            let r = reinforcement_oracle(&g, &ones(&g), j, &ratio(3, 2)).unwrap();
            assert_eq!(r.value, int(0));
            assert!(r.edges.contains(&j));
        }
        let e = single_edge(int(1));
        let r = reinforcement_oracle(&e, &[int(1)], 0, &int(2)).unwrap();
        assert_eq!(r.value, int(1));
        assert_eq!(r.edges, EdgeSet::from([0]));

        let b = bowtie();
        let bridge = b.edge_index("e34").unwrap();
        let r = reinforcement_oracle(&b, &ones(&b), bridge, &ratio(3, 2)).unwrap();
        assert_eq!(r.value, ratio(1, 2));
        // {bridge} alone and E tie at 1/2; the minimal cut side gives {bridge}
        assert!(r.edges.contains(&bridge));
    }

    #[test]
    fn reinforcement_oracle_rejects_infeasible_point() {
        let g = k3();
        let err = reinforcement_oracle(&g, &vec![int(2); 3], 0, &int(1)).unwrap_err();
        assert!(matches!(err, Error::Internal(_)));
    }

    #[test]
    fn attack_examples() {
        let g = k3();
        let zero = attack_oracle(&g, &vec![int(0); 3], &int(1)).unwrap();
        assert_eq!(zero.value, int(0));
        assert!(zero.edges.is_empty());
        let a = attack_oracle(&g, &ones(&g), &int(1)).unwrap();
        assert_eq!(a.value, int(-1));
        assert_eq!(a.edges, EdgeSet::from([0, 1, 2]));
        let b = bowtie();
        let a = attack_oracle(&b, &ones(&b), &int(1)).unwrap();
        assert_eq!(a.value, int(-2));
        assert_eq!(a.edges, EdgeSet::from([0, 1, 2, 4, 5, 6]));
    }

    #[test]
    fn attack_beats_greedy_piece_extraction() {
        // Two unit triangles joined by a light bridge: the best single piece
        // is the whole graph (-3/2), but both triangles alone give -2.
        let b = bowtie();
        let mut y = ones(&b);
        y[3] = ratio(1, 2);
        let a = attack_oracle(&b, &y, &int(1)).unwrap();
        assert_eq!(a.value, int(-2));
        assert_eq!(a.edges, EdgeSet::from([0, 1, 2, 4, 5, 6]));
    }

    #[test]
    fn sparsification_oracle_examples() {
        let g = k3();
        for j in 0..3 {
            let r = sparsification_oracle(&g, &ones(&g), j, &ratio(3, 2)).unwrap();
            assert_eq!(r.value, int(0));
            assert!(r.edges.contains(&j));
        }
        let e = single_edge(int(3));
        let r = sparsification_oracle(&e, &[int(3)], 0, &int(2)).unwrap();
        assert_eq!(r.value, int(1));
        assert_eq!(r.edges, EdgeSet::from([0]));
        let b = bowtie();
        let r = sparsification_oracle(&b, &ones(&b), 0, &int(1)).unwrap();
        assert_eq!(r.value, int(1));
        assert_eq!(r.edges, EdgeSet::from([0]));
    }

    #[test]
    fn sparsification_oracle_rejects_infeasible_point() {
        let b = bowtie();
        let err = sparsification_oracle(&b, &ones(&b), 0, &int(2)).unwrap_err();
        assert!(matches!(err, Error::Internal(_)));
    }
}
