//! Fractional arboricity and strength by ratio iteration over min-cut oracles.

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::graph::{EdgeSet, Graph, VertexSet};
use crate::oracles::{attack_solve, eval_g};
use crate::rational::{self, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    Vertices(VertexSet),
    Edges(EdgeSet),
}

impl Witness {
    pub fn vertices(&self) -> Option<&VertexSet> {
        match self {
            Witness::Vertices(v) => Some(v),
            Witness::Edges(_) => None,
        }
    }

    pub fn edges(&self) -> Option<&EdgeSet> {
        match self {
            Witness::Edges(e) => Some(e),
            Witness::Vertices(_) => None,
        }
    }
}

/// An optimal ratio together with the set that attains it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatioWitness {
    pub value: Rational,
    pub witness: Witness,
    /// Number of oracle evaluations performed.
    pub iterations: usize,
    /// Size of each successive witness, starting with the initial one:
    /// `|B|` for arboricity, the rank drop `f(E) - f(E - X)` for strength.
    pub trace: Vec<usize>,
}

pub(crate) fn check_instance(g: &Graph, w: &[Rational]) -> Result<()> {
    g.check_weights(w, true)?;
    if g.edge_count() == 0 {
        return Err(Error::Trivial);
    }
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    if rational::sum(w).is_zero() {
        return Err(Error::InvalidArgument("all weights are zero".into()));
    }
    Ok(())
}

/// `σ(E_B) / (|B| - 1)`.
pub fn vertex_ratio(g: &Graph, w: &[Rational], set: &VertexSet) -> Rational {
    let inside = rational::sum(g.induced_edges(set).iter().map(|&e| &w[e]));
    inside / rational::int(set.len() as i64 - 1)
}

/// The component of `G[B]` with the largest `σ(E_K) / (|K| - 1)`; the
/// first one in vertex order wins ties.
pub fn densest_component(g: &Graph, w: &[Rational], set: &VertexSet) -> (VertexSet, Rational) {
    g.induced_components(set)
        .into_iter()
        .filter(|c| c.len() >= 2)
        .map(|c| {
            let r = vertex_ratio(g, w, &c);
            (c, r)
        })
        .fold(None::<(VertexSet, Rational)>, |best, (c, r)| match best {
            Some((bc, br)) if br >= r => Some((bc, br)),
            _ => Some((c, r)),
        })
        .expect("set induces at least one edge")
}

/// `D_σ(G)` by the lower-bound iteration `b ← σ(E_B)/(|B| - 1)` on the
/// minimizer of `g(b)`, stopping at `g(b) = 0`.
///
/// The returned vertex set induces a connected D-optimal subgraph.
pub fn arboricity(g: &Graph, w: &[Rational]) -> Result<RatioWitness> {
    check_instance(g, w)?;
    let n = g.vertex_count();
    let mut best: VertexSet = (0..n).collect();
    let mut b = rational::sum(w) / rational::int(n as i64 - 1);
    let mut trace = vec![n];
    let mut iterations = 0;
    loop {
        iterations += 1;
        if iterations > n {
            return Err(Error::Internal(format!(
                "arboricity iteration exceeded |V| = {n} evaluations"
            )));
        }
        let step = eval_g(g, w, &b)?;
        if !step.value.is_negative() {
            if step.value.is_positive() {
                return Err(Error::Internal("g(b) > 0 at a feasible lower bound".into()));
            }
            break;
        }
        let size = step.vertices.len();
        if size < 2 || size >= *trace.last().unwrap() {
            return Err(Error::Internal(format!(
                "minimizer sizes must strictly decrease (|B| = {size} after {:?})",
                trace
            )));
        }
        trace.push(size);
        b = vertex_ratio(g, w, &step.vertices);
        best = step.vertices;
    }
    let (component, ratio) = densest_component(g, w, &best);
    if ratio != b {
        return Err(Error::Internal(
            "densest component does not attain the arboricity".into(),
        ));
    }
    Ok(RatioWitness {
        value: b,
        witness: Witness::Vertices(component),
        iterations,
        trace,
    })
}

/// `S_σ(G)` by the mirrored descent: starting from `b = σ(E)/f(E)`, evaluate
/// `a(b) = min_X σ(X) - b (f(E) - f(E - X))` through the attack problem on
/// `B = E - X` and move to the ratio of the minimizer until `a(b) = 0`.
pub fn strength(g: &Graph, w: &[Rational]) -> Result<RatioWitness> {
    check_instance(g, w)?;
    let m = g.edge_count();
    let full = g.full_rank();
    let total = rational::sum(w);
    let mut chosen: EdgeSet = (0..m).collect();
    let mut b = &total / rational::int(full as i64);
    let mut trace = vec![full];
    let mut iterations = 0;
    loop {
        iterations += 1;
        if iterations > full {
            return Err(Error::Internal(format!(
                "strength iteration exceeded f(E) = {full} evaluations"
            )));
        }
        let sol = attack_solve(g, w, &b)?;
        let gap = &total - &b * rational::int(full as i64) + &sol.value;
        if !gap.is_negative() {
            if gap.is_positive() {
                return Err(Error::Internal("a(b) > 0 at a feasible upper bound".into()));
            }
            break;
        }
        let keep = sol.maximal_witness(g);
        let x: EdgeSet = (0..m).filter(|e| !keep.contains(e)).collect();
        let drop = g.corank(&x)?;
        if drop == 0 || drop >= *trace.last().unwrap() {
            return Err(Error::Internal(format!(
                "rank drops must strictly decrease ({drop} after {:?})",
                trace
            )));
        }
        trace.push(drop);
        b = rational::sum(x.iter().map(|&e| &w[e])) / rational::int(drop as i64);
        chosen = x;
    }
    Ok(RatioWitness {
        value: b,
        witness: Witness::Edges(chosen),
        iterations,
        trace,
    })
}

/// Outcome of the homogeneity test: `S_σ = D_σ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Homogeneity {
    pub homogeneous: bool,
    pub alpha: Rational,
    pub beta: Rational,
}

pub fn is_homogeneous(g: &Graph, w: &[Rational]) -> Result<Homogeneity> {
    let alpha = arboricity(g, w)?.value;
    let beta = strength(g, w)?.value;
    Ok(Homogeneity {
        homogeneous: alpha == beta,
        alpha,
        beta,
    })
}
