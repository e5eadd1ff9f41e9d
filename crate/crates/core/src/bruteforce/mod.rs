//! Exhaustive reference oracles: slow, obvious, and independent of the
//! min-cut machinery. Every fast path is checked against these at desk scale.

mod frank_wolfe;
pub mod lp;

use num_traits::{Signed, Zero};

pub use frank_wolfe::{frank_wolfe_meo, MeoEstimate};

use crate::error::{Error, Result};
use crate::graph::{bits, EdgeIdx, EdgeSet, Graph, VertexSet};
use crate::oracles::{EdgeOptimum, VertexOptimum};
use crate::ratio::{check_instance, densest_component, RatioWitness, Witness};
use crate::rational::{self, Rational};
use lp::{LinearProgram, LpOutcome, Relation};

/// Environment variable overriding the exhaustive size bounds.
pub const MAX_BRUTE_ENV: &str = "MATROID_FORGE_MAX_BRUTE";
pub const DEFAULT_MAX_EDGES: usize = 16;
pub const DEFAULT_LP_MAX_EDGES: usize = 12;

/// The bound in force: the environment override if set, else `default`.
pub fn max_brute(default: usize) -> usize {
    std::env::var(MAX_BRUTE_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(default)
        .min(63)
}

fn guard(what: &'static str, size: usize, default: usize) -> Result<()> {
    let limit = max_brute(default);
    if size > limit {
        Err(Error::TooLarge { what, size, limit })
    } else {
        Ok(())
    }
}

fn mask_sum(w: &[Rational], mask: u64) -> Rational {
    bits(mask).fold(Rational::zero(), |acc, e| acc + &w[e])
}

fn full_mask(m: usize) -> u64 {
    (1u64 << m) - 1
}

fn to_set(mask: u64) -> EdgeSet {
    bits(mask).collect()
}

/// Keeps the running minimum and the intersection of all masks attaining it.
struct MinTracker {
    best: Option<(Rational, u64)>,
}

impl MinTracker {
    fn new() -> Self {
        Self { best: None }
    }

    fn offer(&mut self, value: Rational, mask: u64) {
        match &mut self.best {
            Some((v, m)) if value == *v => *m &= mask,
            Some((v, _)) if value > *v => {}
            _ => self.best = Some((value, mask)),
        }
    }

    fn finish(self) -> EdgeOptimum {
        let (value, mask) = self.best.expect("at least one candidate");
        EdgeOptimum {
            value,
            edges: to_set(mask),
        }
    }
}

/// `min σ(X) / (f(E) - f(E - X))` over all `X` with a positive rank drop.
/// The first minimizing subset in bitmask order is returned.
pub fn exhaustive_strength(g: &Graph, w: &[Rational]) -> Result<RatioWitness> {
    check_instance(g, w)?;
    let m = g.edge_count();
    guard("edge set for exhaustive strength", m, DEFAULT_MAX_EDGES)?;
    let all = full_mask(m);
    let full = g.full_rank();
    let mut best: Option<(Rational, u64)> = None;
    for mask in 1..=all {
        let drop = full - g.rank_mask(all & !mask);
        if drop == 0 {
            continue;
        }
        let r = mask_sum(w, mask) / rational::int(drop as i64);
        if best.as_ref().is_none_or(|(b, _)| r < *b) {
            best = Some((r, mask));
        }
    }
    let (value, mask) = best.expect("E itself has a positive rank drop");
    Ok(RatioWitness {
        value,
        witness: Witness::Edges(to_set(mask)),
        iterations: all as usize,
        trace: Vec::new(),
    })
}

/// `max σ(X) / f(X)` over all `X` with positive rank.
pub fn exhaustive_arboricity(g: &Graph, w: &[Rational]) -> Result<RatioWitness> {
    check_instance(g, w)?;
    let m = g.edge_count();
    guard("edge set for exhaustive arboricity", m, DEFAULT_MAX_EDGES)?;
    let all = full_mask(m);
    let mut best: Option<(Rational, u64)> = None;
    for mask in 1..=all {
        let r = mask_sum(w, mask) / rational::int(g.rank_mask(mask) as i64);
        if best.as_ref().is_none_or(|(b, _)| r > *b) {
            best = Some((r, mask));
        }
    }
    let (value, mask) = best.expect("nonempty edge set");
    Ok(RatioWitness {
        value,
        witness: Witness::Edges(to_set(mask)),
        iterations: all as usize,
        trace: Vec::new(),
    })
}

fn vertex_masks(g: &Graph) -> Result<impl Iterator<Item = VertexSet>> {
    let n = g.vertex_count();
    guard("vertex set for exhaustive search", n, DEFAULT_MAX_EDGES + 1)?;
    Ok((1u64..1 << n).map(|mask| bits(mask).collect::<VertexSet>()))
}

/// The same maximum taken over vertex sets: `max σ(E_B) / (|B| - 1)`.
pub fn arboricity_by_vertex_sets(g: &Graph, w: &[Rational]) -> Result<Rational> {
    check_instance(g, w)?;
    let mut best: Option<Rational> = None;
    for set in vertex_masks(g)?.filter(|s| s.len() >= 2) {
        let r = crate::ratio::vertex_ratio(g, w, &set);
        if best.as_ref().is_none_or(|b| r > *b) {
            best = Some(r);
        }
    }
    Ok(best.expect("at least two vertices"))
}

/// The same maximum restricted to connected vertex-induced subgraphs.
pub fn arboricity_by_connected_subgraphs(g: &Graph, w: &[Rational]) -> Result<Rational> {
    check_instance(g, w)?;
    let mut best: Option<Rational> = None;
    for set in vertex_masks(g)?.filter(|s| s.len() >= 2) {
        if g.induced_components(&set).len() != 1 {
            continue;
        }
        let r = crate::ratio::vertex_ratio(g, w, &set);
        if best.as_ref().is_none_or(|b| r > *b) {
            best = Some(r);
        }
    }
    Ok(best.expect("the whole graph is connected"))
}

/// `D_σ` as a vertex witness: the densest component of the first maximizing
/// vertex set.
pub fn exhaustive_densest_subgraph(g: &Graph, w: &[Rational]) -> Result<(Rational, VertexSet)> {
    check_instance(g, w)?;
    let mut best: Option<(Rational, VertexSet)> = None;
    for set in vertex_masks(g)?.filter(|s| s.len() >= 2) {
        let r = crate::ratio::vertex_ratio(g, w, &set);
        if best.as_ref().is_none_or(|(b, _)| r > *b) {
            best = Some((r, set));
        }
    }
    let (value, set) = best.expect("at least two vertices");
    let (component, _) = densest_component(g, w, &set);
    Ok((value, component))
}

/// `min{λ f(B) - y(B) : B ⊆ E}`; the witness is the intersection of all
/// minimizers, which is itself a minimizer.
pub fn exhaustive_attack(g: &Graph, y: &[Rational], lambda: &Rational) -> Result<EdgeOptimum> {
    g.check_weights(y, true)?;
    let m = g.edge_count();
    guard("edge set for exhaustive attack", m, DEFAULT_MAX_EDGES)?;
    let mut t = MinTracker::new();
    for mask in 0..=full_mask(m) {
        let v = lambda * rational::int(g.rank_mask(mask) as i64) - mask_sum(y, mask);
        t.offer(v, mask);
    }
    Ok(t.finish())
}

/// `min{α f(A) - x(A) : j ∈ A ⊆ E}` with the intersection of all minimizers.
pub fn exhaustive_reinforcement_oracle(
    g: &Graph,
    x: &[Rational],
    j: EdgeIdx,
    alpha: &Rational,
) -> Result<EdgeOptimum> {
    g.check_weights(x, true)?;
    g.check_edge(j)?;
    let m = g.edge_count();
    guard("edge set for exhaustive oracle", m, DEFAULT_MAX_EDGES)?;
    let mut t = MinTracker::new();
    for mask in (0..=full_mask(m)).filter(|mask| mask >> j & 1 == 1) {
        let v = alpha * rational::int(g.rank_mask(mask) as i64) - mask_sum(x, mask);
        t.offer(v, mask);
    }
    Ok(t.finish())
}

/// `min{x(A) - β g(A) : j ∈ A ⊆ E}` with the intersection of all minimizers.
pub fn exhaustive_sparsification_oracle(
    g: &Graph,
    x: &[Rational],
    j: EdgeIdx,
    beta: &Rational,
) -> Result<EdgeOptimum> {
    g.check_weights(x, true)?;
    g.check_edge(j)?;
    let m = g.edge_count();
    guard("edge set for exhaustive oracle", m, DEFAULT_MAX_EDGES)?;
    let all = full_mask(m);
    let full = g.full_rank();
    let mut t = MinTracker::new();
    for mask in (0..=all).filter(|mask| mask >> j & 1 == 1) {
        let drop = full - g.rank_mask(all & !mask);
        let v = mask_sum(x, mask) - beta * rational::int(drop as i64);
        t.offer(v, mask);
    }
    Ok(t.finish())
}

/// `min{(|B| - 1) - x(E_B) : ∅ ≠ B ⊆ V}`; the first minimizing set in
/// bitmask order.
pub fn exhaustive_most_violated(g: &Graph, x: &[Rational]) -> Result<VertexOptimum> {
    g.check_weights(x, true)?;
    let mut best: Option<VertexOptimum> = None;
    for set in vertex_masks(g)? {
        let inside = rational::sum(g.induced_edges(&set).iter().map(|&e| &x[e]));
        let value = rational::int(set.len() as i64 - 1) - inside;
        if best.as_ref().is_none_or(|b| value < b.value) {
            best = Some(VertexOptimum {
                value,
                vertices: set,
            });
        }
    }
    best.ok_or_else(|| Error::InvalidArgument("graph has no vertices".into()))
}

/// `min{b(|B| - 1) - σ(E_B) : ∅ ≠ B ⊆ V}`.
pub fn exhaustive_eval_g(g: &Graph, sigma: &[Rational], b: &Rational) -> Result<VertexOptimum> {
    g.check_weights(sigma, true)?;
    let mut best: Option<VertexOptimum> = None;
    for set in vertex_masks(g)? {
        let inside = rational::sum(g.induced_edges(&set).iter().map(|&e| &sigma[e]));
        let value = b * rational::int(set.len() as i64 - 1) - inside;
        if best.as_ref().is_none_or(|o| value < o.value) {
            best = Some(VertexOptimum {
                value,
                vertices: set,
            });
        }
    }
    best.ok_or_else(|| Error::InvalidArgument("graph has no vertices".into()))
}

/// Optimal cost of a homogenizing adjustment and one optimal `z`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LpSolution {
    pub cost: Rational,
    pub z: Vec<Rational>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Direction {
    Increase,
    Decrease,
}

/// `min m·z` over `z ≥ 0` such that `σ + z` is a nonnegative combination of
/// spanning-tree indicators.
pub fn lp_reinforce(g: &Graph, sigma: &[Rational], costs: &[Rational]) -> Result<LpSolution> {
    lp_adjust(g, sigma, costs, Direction::Increase)
}

/// `min m·z` over `z ≥ 0` such that `σ - z` is a nonnegative combination of
/// spanning-tree indicators.
pub fn lp_sparsify(g: &Graph, sigma: &[Rational], costs: &[Rational]) -> Result<LpSolution> {
    lp_adjust(g, sigma, costs, Direction::Decrease)
}

fn lp_adjust(
    g: &Graph,
    sigma: &[Rational],
    costs: &[Rational],
    dir: Direction,
) -> Result<LpSolution> {
    check_instance(g, sigma)?;
    g.check_weights(costs, true)?;
    let m = g.edge_count();
    guard("edge set for the tree LP", m, DEFAULT_LP_MAX_EDGES)?;
    let trees = g.spanning_trees(63)?;
    let k = trees.len();
    let mut objective = costs.to_vec();
    objective.resize(m + k, Rational::zero());
    let mut lp = LinearProgram::new(objective);
    let z_sign = match dir {
        Direction::Increase => -rational::one(),
        Direction::Decrease => rational::one(),
    };
    for e in 0..m {
        let mut row = vec![Rational::zero(); m + k];
        row[e] = z_sign.clone();
        for (t, tree) in trees.iter().enumerate() {
            if tree.contains(&e) {
                row[m + t] = rational::one();
            }
        }
        lp.constrain(row, Relation::Eq, sigma[e].clone());
    }
    match lp.solve() {
        LpOutcome::Optimal { value, x } => Ok(LpSolution {
            cost: value,
            z: x[..m].to_vec(),
        }),
        other => Err(Error::Internal(format!("tree LP has no optimum: {other:?}"))),
    }
}

/// Family against which a density is tested for admissibility.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    /// Spanning trees with indicator usage.
    Trees,
    /// Nonempty complement-closed sets `X` with usage `𝟙_X / (f(E) - f(E - X))`.
    Phi,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdmCheck {
    pub admissible: bool,
    /// First member (in bitmask order) whose length is below 1.
    pub violation: Option<EdgeSet>,
}

/// Checks `ℓ_ρ(γ) ≥ 1` for every member `γ` of the family.
pub fn exhaustive_adm_check(g: &Graph, density: &[Rational], family: Family) -> Result<AdmCheck> {
    g.check_weights(density, true)?;
    let m = g.edge_count();
    guard("edge set for the admissibility check", m, DEFAULT_MAX_EDGES)?;
    let one = rational::one();
    let violation = match family {
        Family::Trees => g
            .spanning_trees(63)?
            .into_iter()
            .find(|t| rational::sum(t.iter().map(|&e| &density[e])) < one),
        Family::Phi => {
            let all = full_mask(m);
            let full = g.full_rank();
            (1..=all)
                .filter(|&mask| {
                    let rest = all & !mask;
                    let rank_rest = g.rank_mask(rest);
                    // E - X closed: adding any edge of X raises the rank
                    let closed = bits(mask).all(|e| g.rank_mask(rest | 1 << e) > rank_rest);
                    closed && {
                        let drop = rational::int((full - rank_rest) as i64);
                        mask_sum(density, mask) / drop < one
                    }
                })
                .map(to_set)
                .next()
        }
    };
    Ok(AdmCheck {
        admissible: violation.is_none(),
        violation,
    })
}

/// Membership of `x` in the cone of spanning-tree indicators, by the tree LP.
pub fn in_tree_cone(g: &Graph, x: &[Rational]) -> Result<bool> {
    in_tree_hull(g, x, None)
}

/// Membership of `x` in the convex hull of spanning-tree indicators.
pub fn in_tree_polytope(g: &Graph, x: &[Rational]) -> Result<bool> {
    in_tree_hull(g, x, Some(rational::one()))
}

fn in_tree_hull(g: &Graph, x: &[Rational], mass: Option<Rational>) -> Result<bool> {
    g.check_weights(x, true)?;
    let m = g.edge_count();
    guard("edge set for the tree LP", m, DEFAULT_LP_MAX_EDGES)?;
    if x.iter().any(|v| v.is_negative()) {
        return Ok(false);
    }
    let trees = g.spanning_trees(63)?;
    let k = trees.len();
    let mut lp = LinearProgram::new(vec![Rational::zero(); k]);
    for (e, xe) in x.iter().enumerate() {
        let row = trees
            .iter()
            .map(|t| if t.contains(&e) { rational::one() } else { Rational::zero() })
            .collect();
        lp.constrain(row, Relation::Eq, xe.clone());
    }
    if let Some(total) = mass {
        lp.constrain(vec![rational::one(); k], Relation::Eq, total);
    }
    Ok(matches!(lp.solve(), LpOutcome::Optimal { .. }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{bowtie, k3, single_edge};
    use crate::rational::{int, ratio};

    #[test]
    fn ratio_examples() {
        let g = k3();
        let w = g.weights();
        assert_eq!(exhaustive_strength(&g, &w).unwrap().value, ratio(3, 2));
        assert_eq!(exhaustive_arboricity(&g, &w).unwrap().value, ratio(3, 2));

        let b = bowtie();
        let w = b.weights();
        let s = exhaustive_strength(&b, &w).unwrap();
        assert_eq!(s.value, int(1));
        assert_eq!(s.witness, Witness::Edges(EdgeSet::from([3])));
        assert_eq!(exhaustive_arboricity(&b, &w).unwrap().value, ratio(3, 2));
        assert_eq!(arboricity_by_vertex_sets(&b, &w).unwrap(), ratio(3, 2));
        assert_eq!(arboricity_by_connected_subgraphs(&b, &w).unwrap(), ratio(3, 2));
        let (d, set) = exhaustive_densest_subgraph(&b, &w).unwrap();
        assert_eq!((d, set), (ratio(3, 2), VertexSet::from([0, 1, 2])));

        let e = single_edge(int(5));
        assert_eq!(exhaustive_strength(&e, &[int(5)]).unwrap().value, int(5));
        assert_eq!(exhaustive_arboricity(&e, &[int(5)]).unwrap().value, int(5));
    }

    #[test]
    fn attack_takes_both_triangles() {
        let b = bowtie();
        let mut y = b.weights();
        y[3] = ratio(1, 2);
        let opt = exhaustive_attack(&b, &y, &int(1)).unwrap();
        assert_eq!(opt.value, int(-2));
        assert_eq!(opt.edges, EdgeSet::from([0, 1, 2, 4, 5, 6]));
    }

    #[test]
    fn oracles_on_bowtie() {
        let b = bowtie();
        let w = b.weights();
        let r = exhaustive_reinforcement_oracle(&b, &w, 3, &ratio(3, 2)).unwrap();
        assert_eq!(r.value, ratio(1, 2));
        assert_eq!(r.edges, EdgeSet::from([3]));
        let s = exhaustive_sparsification_oracle(&b, &w, 0, &int(1)).unwrap();
        assert_eq!(s.value, int(1));
        assert_eq!(s.edges, EdgeSet::from([0]));
        let mv = exhaustive_most_violated(&k3(), &vec![int(1); 3]).unwrap();
        assert_eq!(mv.value, int(-1));
        assert_eq!(mv.vertices, VertexSet::from([0, 1, 2]));
    }

    #[test]
    fn lp_examples() {
        let b = bowtie();
        let w = b.weights();
        let ones = vec![int(1); 7];
        assert_eq!(lp_reinforce(&b, &w, &ones).unwrap().cost, ratio(1, 2));
        assert_eq!(lp_sparsify(&b, &w, &ones).unwrap().cost, int(2));
        let zeros = vec![int(0); 7];
        assert_eq!(lp_reinforce(&b, &w, &zeros).unwrap().cost, int(0));
        assert_eq!(lp_sparsify(&b, &w, &zeros).unwrap().cost, int(0));
        let g = k3();
        assert_eq!(lp_reinforce(&g, &g.weights(), &vec![int(1); 3]).unwrap().cost, int(0));
        assert_eq!(lp_sparsify(&g, &g.weights(), &vec![int(1); 3]).unwrap().cost, int(0));
    }

    #[test]
    fn admissibility_examples() {
        let b = bowtie();
        let uniform = vec![ratio(1, 5); 7];
        assert!(exhaustive_adm_check(&b, &uniform, Family::Trees).unwrap().admissible);
        let g = k3();
        assert!(exhaustive_adm_check(&g, &vec![ratio(2, 3); 3], Family::Phi).unwrap().admissible);
        let check = exhaustive_adm_check(&b, &vec![ratio(5, 7); 7], Family::Phi).unwrap();
        assert!(!check.admissible);
        assert_eq!(check.violation, Some(EdgeSet::from([3])));
    }

    #[test]
    fn tree_hull_membership() {
        let g = k3();
        assert!(in_tree_polytope(&g, &vec![ratio(2, 3); 3]).unwrap());
        assert!(!in_tree_polytope(&g, &[int(1), int(1), int(1)]).unwrap());
        assert!(in_tree_cone(&g, &[int(1), int(1), int(1)]).unwrap());
        assert!(!in_tree_cone(&bowtie(), &bowtie().weights()).unwrap());
    }

    #[test]
    fn size_bound_is_enforced() {
        let vertices: Vec<String> = (0..2).map(|i| i.to_string()).collect();
        let edges: Vec<_> = (0..20)
            .map(|k| (format!("p{k}"), "0".to_string(), "1".to_string(), int(1)))
            .collect();
        let g = Graph::new(vertices, edges).unwrap();
        assert!(matches!(
            exhaustive_strength(&g, &g.weights()),
            Err(Error::TooLarge { .. })
        ));
    }
}
