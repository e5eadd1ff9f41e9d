//! Weighted multigraphs and the graphic-matroid rank machinery.
//!
//! Edges are identified by their string id, so parallel edges stay distinct
//! and contraction can carry every surviving edge back to the input graph.
//! Inside the library edges and vertices are addressed by their position
//! (`EdgeIdx` / `VertexIdx`); positions follow input order, which fixes the
//! tie-breaking of every witness.

use std::collections::{BTreeSet, HashMap, HashSet};

use petgraph::unionfind::UnionFind;

use crate::error::{Error, Result};
use crate::rational::{self, Rational};

pub type VertexIdx = usize;
pub type EdgeIdx = usize;
pub type EdgeSet = BTreeSet<EdgeIdx>;
pub type VertexSet = BTreeSet<VertexIdx>;

/// Default bound on `|E|` for spanning-tree enumeration.
pub const DEFAULT_TREE_BOUND: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub id: String,
    pub u: VertexIdx,
    pub v: VertexIdx,
    pub weight: Rational,
}

impl Edge {
    pub fn other(&self, x: VertexIdx) -> VertexIdx {
        if self.u == x {
            self.v
        } else {
            self.u
        }
    }

    pub fn touches(&self, x: VertexIdx) -> bool {
        self.u == x || self.v == x
    }
}

/// Loopless undirected multigraph with rational edge weights.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    vertices: Vec<String>,
    edges: Vec<Edge>,
}

impl Graph {
    /// Builds a graph from vertex names and `(id, u, v, weight)` tuples.
    ///
    /// Weights must be strictly positive; use [`Graph::reweighted`] for the
    /// zero weights that sparsification produces.
    pub fn new<V, E>(vertices: V, edges: E) -> Result<Self>
    where
        V: IntoIterator,
        V::Item: Into<String>,
        E: IntoIterator<Item = (String, String, String, Rational)>,
    {
        let vertices: Vec<String> = vertices.into_iter().map(Into::into).collect();
        let mut index = HashMap::with_capacity(vertices.len());
        for (i, name) in vertices.iter().enumerate() {
            if index.insert(name.clone(), i).is_some() {
                return Err(Error::Duplicate {
                    kind: "vertex",
                    id: name.clone(),
                });
            }
        }
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for (id, u, v, weight) in edges {
            if !seen.insert(id.clone()) {
                return Err(Error::Duplicate { kind: "edge", id });
            }
            let ui = *index.get(&u).ok_or_else(|| Error::UnknownVertex(u.clone()))?;
            let vi = *index.get(&v).ok_or_else(|| Error::UnknownVertex(v.clone()))?;
            if ui == vi {
                return Err(Error::SelfLoop(id));
            }
            if !rational::is_positive(&weight) {
                return Err(Error::NonPositiveWeight {
                    id,
                    weight: rational::format(&weight),
                });
            }
            out.push(Edge {
                id,
                u: ui,
                v: vi,
                weight,
            });
        }
        Ok(Self {
            vertices,
            edges: out,
        })
    }

    /// Convenience constructor for fixtures: `(id, u, v, weight)` with string slices.
    pub fn from_edges(vertices: &[&str], edges: &[(&str, &str, &str, Rational)]) -> Result<Self> {
        Self::new(
            vertices.iter().map(|s| s.to_string()),
            edges
                .iter()
                .map(|(id, u, v, w)| (id.to_string(), u.to_string(), v.to_string(), w.clone())),
        )
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, e: EdgeIdx) -> &Edge {
        &self.edges[e]
    }

    pub fn vertex_name(&self, v: VertexIdx) -> &str {
        &self.vertices[v]
    }

    pub fn weights(&self) -> Vec<Rational> {
        self.edges.iter().map(|e| e.weight.clone()).collect()
    }

    pub fn edge_index(&self, id: &str) -> Result<EdgeIdx> {
        self.edges
            .iter()
            .position(|e| e.id == id)
            .ok_or_else(|| Error::UnknownEdge(id.to_string()))
    }

    pub fn vertex_index(&self, name: &str) -> Result<VertexIdx> {
        self.vertices
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| Error::UnknownVertex(name.to_string()))
    }

    pub fn edge_ids<'a>(&'a self, set: impl IntoIterator<Item = &'a EdgeIdx>) -> Vec<String> {
        set.into_iter().map(|&e| self.edges[e].id.clone()).collect()
    }

    pub fn vertex_names<'a>(&'a self, set: impl IntoIterator<Item = &'a VertexIdx>) -> Vec<String> {
        set.into_iter().map(|&v| self.vertices[v].clone()).collect()
    }

    /// Same structure with new weights. Zero weights are allowed here.
    pub fn reweighted(&self, weights: &[Rational]) -> Result<Self> {
        self.check_weights(weights, true)?;
        let mut g = self.clone();
        for (e, w) in g.edges.iter_mut().zip(weights) {
            e.weight = w.clone();
        }
        Ok(g)
    }

    pub(crate) fn check_weights(&self, weights: &[Rational], allow_zero: bool) -> Result<()> {
        if weights.len() != self.edges.len() {
            return Err(Error::InvalidArgument(format!(
                "expected {} weights, got {}",
                self.edges.len(),
                weights.len()
            )));
        }
        for (e, w) in self.edges.iter().zip(weights) {
            let bad = if allow_zero {
                rational::is_negative(w)
            } else {
                !rational::is_positive(w)
            };
            if bad {
                return Err(Error::NonPositiveWeight {
                    id: e.id.clone(),
                    weight: rational::format(w),
                });
            }
        }
        Ok(())
    }

    pub(crate) fn check_edge(&self, e: EdgeIdx) -> Result<()> {
        if e < self.edges.len() {
            Ok(())
        } else {
            Err(Error::UnknownEdge(format!("#{e}")))
        }
    }

    fn check_edges<'a>(&self, set: impl IntoIterator<Item = &'a EdgeIdx>) -> Result<()> {
        set.into_iter().try_for_each(|&e| self.check_edge(e))
    }

    /// Graphic-matroid rank: `|V(A)|` minus the number of components of `H_A`.
    pub fn rank(&self, set: &EdgeSet) -> Result<usize> {
        self.check_edges(set)?;
        Ok(self.rank_of(set.iter().copied()))
    }

    pub(crate) fn rank_of(&self, set: impl IntoIterator<Item = EdgeIdx>) -> usize {
        let mut uf = UnionFind::new(self.vertices.len());
        set.into_iter()
            .filter(|&e| uf.union(self.edges[e].u, self.edges[e].v))
            .count()
    }

    /// Rank of the edges selected by a bitmask (bit `i` = edge `i`).
    pub fn rank_mask(&self, mask: u64) -> usize {
        self.rank_of(bits(mask))
    }

    pub fn full_rank(&self) -> usize {
        self.rank_of(0..self.edges.len())
    }

    /// `g(U) = f(E) - f(E - U)`.
    pub fn corank(&self, set: &EdgeSet) -> Result<usize> {
        self.check_edges(set)?;
        let rest = (0..self.edges.len()).filter(|e| !set.contains(e));
        Ok(self.full_rank() - self.rank_of(rest))
    }

    pub fn is_connected(&self) -> bool {
        self.vertices.len() <= 1 || self.full_rank() + 1 == self.vertices.len()
    }

    /// `E_W`: edges with both endpoints in `W`.
    pub fn induced_edges(&self, set: &VertexSet) -> EdgeSet {
        self.edges
            .iter()
            .enumerate()
            .filter(|(_, e)| set.contains(&e.u) && set.contains(&e.v))
            .map(|(i, _)| i)
            .collect()
    }

    /// Connected components of the subgraph induced by `W`, ordered by
    /// their smallest vertex.
    pub fn induced_components(&self, set: &VertexSet) -> Vec<VertexSet> {
        let mut uf = UnionFind::new(self.vertices.len());
        for e in self.induced_edges(set) {
            uf.union(self.edges[e].u, self.edges[e].v);
        }
        let mut groups: Vec<(VertexIdx, VertexSet)> = Vec::new();
        for &v in set {
            let root = uf.find(v);
            match groups.iter_mut().find(|(r, _)| *r == root) {
                Some((_, g)) => {
                    g.insert(v);
                }
                None => groups.push((root, VertexSet::from([v]))),
            }
        }
        groups.into_iter().map(|(_, g)| g).collect()
    }

    /// Vertex sets of the connected components of the edge-induced subgraph `H_A`.
    pub fn edge_components(&self, set: &EdgeSet) -> Vec<VertexSet> {
        let mut uf = UnionFind::new(self.vertices.len());
        let mut touched = VertexSet::new();
        for &e in set {
            let edge = &self.edges[e];
            uf.union(edge.u, edge.v);
            touched.insert(edge.u);
            touched.insert(edge.v);
        }
        let mut groups: Vec<(VertexIdx, VertexSet)> = Vec::new();
        for v in touched {
            let root = uf.find(v);
            match groups.iter_mut().find(|(r, _)| *r == root) {
                Some((_, g)) => {
                    g.insert(v);
                }
                None => groups.push((root, VertexSet::from([v]))),
            }
        }
        groups.into_iter().map(|(_, g)| g).collect()
    }

    /// Removes the edges in `X`; vertices are kept.
    pub fn delete(&self, set: &EdgeSet) -> Result<Self> {
        self.check_edges(set)?;
        Ok(Self {
            vertices: self.vertices.clone(),
            edges: self
                .edges
                .iter()
                .enumerate()
                .filter(|(i, _)| !set.contains(i))
                .map(|(_, e)| e.clone())
                .collect(),
        })
    }

    /// Shrinks `W` to a single vertex. Edges inside `W` disappear, edges
    /// leaving `W` keep their ids and weights. The merged vertex sits at the
    /// position of the first member of `W` and is named by joining the
    /// members with `+`.
    pub fn contract(&self, set: &VertexSet) -> Result<Self> {
        if set.is_empty() {
            return Err(Error::InvalidArgument("cannot contract an empty vertex set".into()));
        }
        if let Some(&bad) = set.iter().find(|&&v| v >= self.vertices.len()) {
            return Err(Error::UnknownVertex(format!("#{bad}")));
        }
        if self.induced_components(set).len() != 1 {
            return Err(Error::DisconnectedVertexSet);
        }
        let head = *set.iter().next().unwrap();
        let mut remap = vec![0usize; self.vertices.len()];
        let mut vertices = Vec::new();
        for (i, name) in self.vertices.iter().enumerate() {
            if i == head {
                remap[i] = vertices.len();
                vertices.push(
                    set.iter()
                        .map(|&v| self.vertices[v].as_str())
                        .collect::<Vec<_>>()
                        .join("+"),
                );
            } else if !set.contains(&i) {
                remap[i] = vertices.len();
                vertices.push(name.clone());
            }
        }
        for &v in set {
            remap[v] = remap[head];
        }
        let edges = self
            .edges
            .iter()
            .filter(|e| !(set.contains(&e.u) && set.contains(&e.v)))
            .map(|e| Edge {
                id: e.id.clone(),
                u: remap[e.u],
                v: remap[e.v],
                weight: e.weight.clone(),
            })
            .collect();
        Ok(Self { vertices, edges })
    }

    /// Matroid closure: every edge whose endpoints are joined inside `H_X`.
    pub fn closure(&self, set: &EdgeSet) -> Result<EdgeSet> {
        self.check_edges(set)?;
        let mut uf = UnionFind::new(self.vertices.len());
        for &e in set {
            uf.union(self.edges[e].u, self.edges[e].v);
        }
        Ok(self
            .edges
            .iter()
            .enumerate()
            .filter(|(_, e)| uf.equiv(e.u, e.v))
            .map(|(i, _)| i)
            .collect())
    }

    /// Replaces each edge of integer weight `k` by `k` unit-weight parallel
    /// copies with ids `id#1 .. id#k`.
    pub fn parallel_extension(&self) -> Result<Self> {
        let mut edges = Vec::new();
        for e in &self.edges {
            if !e.weight.is_integer() || !rational::is_positive(&e.weight) {
                return Err(Error::NonIntegerWeight {
                    id: e.id.clone(),
                    weight: rational::format(&e.weight),
                });
            }
            let copies: u64 = e.weight.to_integer().try_into().map_err(|_| {
                Error::InvalidArgument(format!("weight of `{}` too large to expand", e.id))
            })?;
            for k in 1..=copies {
                edges.push(Edge {
                    id: format!("{}#{k}", e.id),
                    u: e.u,
                    v: e.v,
                    weight: rational::one(),
                });
            }
        }
        Ok(Self {
            vertices: self.vertices.clone(),
            edges,
        })
    }

    /// All spanning trees, each as an edge set, in increasing bitmask order.
    pub fn spanning_trees(&self, bound: usize) -> Result<Vec<EdgeSet>> {
        let m = self.edges.len();
        if m > bound || m > 63 {
            return Err(Error::TooLarge {
                what: "edge set for tree enumeration",
                size: m,
                limit: bound.min(63),
            });
        }
        if !self.is_connected() {
            return Err(Error::Disconnected);
        }
        let target = self.vertices.len().saturating_sub(1);
        Ok((0u64..1 << m)
            .filter(|mask| mask.count_ones() as usize == target && self.rank_mask(*mask) == target)
            .map(|mask| bits(mask).collect())
            .collect())
    }
}

/// Indices of the set bits of `mask`, ascending.
pub fn bits(mask: u64) -> impl Iterator<Item = usize> {
    (0..64).filter(move |i| mask >> i & 1 == 1)
}

pub fn mask_of(set: &EdgeSet) -> u64 {
    set.iter().fold(0u64, |m, &e| m | 1 << e)
}
