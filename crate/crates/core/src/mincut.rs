//! Exact minimum `r`-`s` cuts on undirected networks.
//!
//! Capacities are exact rationals or a tagged infinity. The solver is
//! Edmonds-Karp (shortest augmenting paths), which terminates for real
//! capacities, so no denominator clearing is needed.

use std::collections::VecDeque;
use std::fmt;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::graph::VertexSet;
use crate::rational::{self, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Capacity {
    Finite(Rational),
    Infinite,
}

impl Capacity {
    pub fn finite(&self) -> Option<&Rational> {
        match self {
            Capacity::Finite(r) => Some(r),
            Capacity::Infinite => None,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Capacity::Infinite)
    }
}

impl fmt::Display for Capacity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Capacity::Finite(r) => write!(f, "{}", rational::format(r)),
            Capacity::Infinite => write!(f, "inf"),
        }
    }
}

impl From<Rational> for Capacity {
    fn from(r: Rational) -> Self {
        Capacity::Finite(r)
    }
}

#[derive(Debug, Clone)]
pub struct NetEdge {
    pub u: usize,
    pub v: usize,
    pub capacity: Capacity,
}

/// Undirected capacitated network with a distinguished source and sink.
#[derive(Debug, Clone)]
pub struct CapNetwork {
    vertex_count: usize,
    source: usize,
    sink: usize,
    edges: Vec<NetEdge>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CutResult {
    pub value: Capacity,
    /// Vertices reachable from the source in the final residual graph:
    /// the unique inclusion-minimal source side. Empty when the value is
    /// infinite.
    pub source_side: VertexSet,
}

impl CapNetwork {
    pub fn new(vertex_count: usize, source: usize, sink: usize) -> Result<Self> {
        if source == sink || source >= vertex_count || sink >= vertex_count {
            return Err(Error::InvalidArgument(format!(
                "bad terminals r={source}, s={sink} for {vertex_count} vertices"
            )));
        }
        Ok(Self {
            vertex_count,
            source,
            sink,
            edges: Vec::new(),
        })
    }

    pub fn add_edge(&mut self, u: usize, v: usize, capacity: Capacity) -> Result<()> {
        if u >= self.vertex_count || v >= self.vertex_count {
            return Err(Error::InvalidArgument(format!("edge {u}-{v} out of range")));
        }
        if let Capacity::Finite(c) = &capacity {
            if c.is_negative() {
                return Err(Error::InvalidArgument(format!(
                    "negative capacity {} on {u}-{v}",
                    rational::format(c)
                )));
            }
        }
        self.edges.push(NetEdge { u, v, capacity });
        Ok(())
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn source(&self) -> usize {
        self.source
    }

    pub fn sink(&self) -> usize {
        self.sink
    }

    pub fn edges(&self) -> &[NetEdge] {
        &self.edges
    }

    /// Total capacity of edges with exactly one endpoint in `side`.
    pub fn cut_value(&self, side: &VertexSet) -> Capacity {
        let mut total = Rational::zero();
        for e in &self.edges {
            if side.contains(&e.u) != side.contains(&e.v) {
                match &e.capacity {
                    Capacity::Finite(c) => total += c,
                    Capacity::Infinite => return Capacity::Infinite,
                }
            }
        }
        Capacity::Finite(total)
    }
}

/// Residual arc. `None` capacity means infinite.
struct Arc {
    to: usize,
    residual: Option<Rational>,
}

pub fn min_rs_cut(net: &CapNetwork) -> CutResult {
    let n = net.vertex_count;
    let mut arcs: Vec<Arc> = Vec::with_capacity(2 * net.edges.len());
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    for e in &net.edges {
        let cap = e.capacity.finite().cloned();
        adj[e.u].push(arcs.len());
        arcs.push(Arc {
            to: e.v,
            residual: cap.clone(),
        });
        adj[e.v].push(arcs.len());
        arcs.push(Arc {
            to: e.u,
            residual: cap,
        });
    }

    // An all-infinite r-s path means no finite cut exists.
    let inf_reach = reachable(n, net.source, &adj, &arcs, |a| a.residual.is_none());
    if inf_reach[net.sink] {
        return CutResult {
            value: Capacity::Infinite,
            source_side: VertexSet::new(),
        };
    }

    let mut flow = Rational::zero();
    loop {
        let mut parent: Vec<Option<usize>> = vec![None; n];
        let mut seen = vec![false; n];
        seen[net.source] = true;
        let mut queue = VecDeque::from([net.source]);
        while let Some(x) = queue.pop_front() {
            if x == net.sink {
                break;
            }
            for &a in &adj[x] {
                let arc = &arcs[a];
                if !seen[arc.to] && has_room(arc) {
                    seen[arc.to] = true;
                    parent[arc.to] = Some(a);
                    queue.push_back(arc.to);
                }
            }
        }
        if !seen[net.sink] {
            break;
        }
        let mut path = Vec::new();
        let mut x = net.sink;
        while let Some(a) = parent[x] {
            path.push(a);
            x = arcs[a ^ 1].to;
        }
        let delta = path
            .iter()
            .filter_map(|&a| arcs[a].residual.clone())
            .min()
            .expect("augmenting path has a finite arc");
        for &a in &path {
            if let Some(r) = arcs[a].residual.as_mut() {
                *r -= &delta;
            }
            if let Some(r) = arcs[a ^ 1].residual.as_mut() {
                *r += &delta;
            }
        }
        flow += delta;
    }

    let reach = reachable(n, net.source, &adj, &arcs, has_room);
    let source_side: VertexSet = (0..n).filter(|&v| reach[v]).collect();
    let value = net.cut_value(&source_side);
    debug_assert_eq!(value, Capacity::Finite(flow));
    CutResult { value, source_side }
}

fn has_room(arc: &Arc) -> bool {
    arc.residual.as_ref().is_none_or(|r| r.is_positive())
}

fn reachable(
    n: usize,
    from: usize,
    adj: &[Vec<usize>],
    arcs: &[Arc],
    usable: impl Fn(&Arc) -> bool,
) -> Vec<bool> {
    let mut seen = vec![false; n];
    seen[from] = true;
    let mut stack = vec![from];
    while let Some(x) = stack.pop() {
        for &a in &adj[x] {
            let arc = &arcs[a];
            if !seen[arc.to] && usable(arc) {
                seen[arc.to] = true;
                stack.push(arc.to);
            }
        }
    }
    seen
}
