//! JSON input and output.
//!
//! Rationals are written as reduced `"p/q"` strings. Objects are emitted
//! with sorted keys and edge lists in graph order, so equal inputs give
//! byte-identical output.

use serde::Deserialize;
use serde_json::{json, Map, Value};

use crate::adjust::AdjustmentPlan;
use crate::error::{Error, Result};
use crate::graph::{EdgeSet, Graph};
use crate::modulus::ModulusProfile;
use crate::ratio::{Homogeneity, RatioWitness, Witness};
use crate::rational::{self, Rational};

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphDoc {
    vertices: Vec<Value>,
    edges: Vec<EdgeDoc>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct EdgeDoc {
    id: Value,
    u: Value,
    v: Value,
    #[serde(default)]
    weight: Option<Value>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct CostsDoc {
    costs: Map<String, Value>,
}

/// Vertex and edge ids may be JSON strings or integers.
fn id_string(v: &Value, what: &str) -> Result<String> {
    match v {
        Value::String(s) => Ok(s.clone()),
        Value::Number(n) if n.is_i64() || n.is_u64() => Ok(n.to_string()),
        other => Err(Error::Parse(format!("{what} id must be a string or integer, got {other}"))),
    }
}

/// `{"vertices": [...], "edges": [{"id", "u", "v", "weight"?}]}`; a missing
/// weight is 1.
pub fn parse_graph(text: &str) -> Result<Graph> {
    let doc: GraphDoc = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let vertices = doc
        .vertices
        .iter()
        .map(|v| id_string(v, "vertex"))
        .collect::<Result<Vec<_>>>()?;
    let edges = doc
        .edges
        .iter()
        .map(|e| {
            let weight = match &e.weight {
                Some(w) => rational::from_json(w)?,
                None => rational::one(),
            };
            Ok((
                id_string(&e.id, "edge")?,
                id_string(&e.u, "vertex")?,
                id_string(&e.v, "vertex")?,
                weight,
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    Graph::new(vertices, edges)
}

pub fn graph_to_json(g: &Graph) -> Value {
    json!({
        "vertices": g.vertices(),
        "edges": g.edges().iter().map(|e| json!({
            "id": e.id,
            "u": g.vertex_name(e.u),
            "v": g.vertex_name(e.v),
            "weight": rational::format(&e.weight),
        })).collect::<Vec<_>>(),
    })
}

/// `{"costs": {edge id: "p/q" | int}}`; edges not listed cost 1.
pub fn parse_costs(text: &str, g: &Graph) -> Result<Vec<Rational>> {
    let doc: CostsDoc = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let mut costs = vec![rational::one(); g.edge_count()];
    for (id, v) in &doc.costs {
        let e = g.edge_index(id)?;
        let c = rational::from_json(v)?;
        if rational::is_negative(&c) {
            return Err(Error::InvalidArgument(format!("cost of `{id}` is negative")));
        }
        costs[e] = c;
    }
    Ok(costs)
}

pub fn unit_costs(g: &Graph) -> Vec<Rational> {
    vec![rational::one(); g.edge_count()]
}

fn edge_list(g: &Graph, set: &EdgeSet) -> Value {
    json!(g.edge_ids(set))
}

fn edge_map(g: &Graph, values: &[Rational]) -> Value {
    let map: Map<String, Value> = g
        .edges()
        .iter()
        .zip(values)
        .map(|(e, v)| (e.id.clone(), rational::to_json(v)))
        .collect();
    Value::Object(map)
}

pub fn strength_json(g: &Graph, r: &RatioWitness) -> Value {
    let edges = match &r.witness {
        Witness::Edges(e) => edge_list(g, e),
        Witness::Vertices(v) => edge_list(g, &g.induced_edges(v)),
    };
    json!({
        "strength": rational::format(&r.value),
        "witness_edges": edges,
        "iterations": r.iterations,
    })
}

pub fn arboricity_json(g: &Graph, r: &RatioWitness) -> Value {
    let vertices = match &r.witness {
        Witness::Vertices(v) => g.vertex_names(v),
        Witness::Edges(e) => {
            let mut vs = crate::graph::VertexSet::new();
            for &k in e {
                vs.insert(g.edge(k).u);
                vs.insert(g.edge(k).v);
            }
            g.vertex_names(&vs)
        }
    };
    json!({
        "arboricity": rational::format(&r.value),
        "witness_vertices": vertices,
        "iterations": r.iterations,
    })
}

pub fn homogeneity_json(h: &Homogeneity) -> Value {
    json!({
        "homogeneous": h.homogeneous,
        "alpha": rational::format(&h.alpha),
        "beta": rational::format(&h.beta),
    })
}

/// Plan fields; `removable_edges` only for sparsification.
pub fn plan_json(g: &Graph, plan: &AdjustmentPlan, sparsification: bool) -> Value {
    let mut out = json!({
        "z": edge_map(g, &plan.z),
        "total_cost": rational::format(&plan.total_cost),
        "target_level": rational::format(&plan.target_level),
    });
    if sparsification {
        out["removable_edges"] = edge_list(g, &plan.removable_edges);
    }
    out
}

pub fn profile_json(g: &Graph, p: &ModulusProfile) -> Value {
    json!({
        "eta": edge_map(g, &p.eta),
        "rho": edge_map(g, &p.rho),
        "mod2": rational::format(&p.mod2),
        "meo": rational::format(&p.meo),
        "e_min": edge_list(g, &p.e_min),
        "e_max": edge_list(g, &p.e_max),
        "peel_sequence": p.peel_sequence.iter().map(|s| json!({
            "graph": {"vertices": s.vertex_count, "edges": s.edge_count},
            "vertices": s.vertices,
            "density": rational::format(&s.density),
            "edges": edge_list(g, &s.edges),
        })).collect::<Vec<_>>(),
    })
}

/// Structured error document for stderr.
pub fn error_json(err: &Error) -> Value {
    let kind = match err {
        Error::UnknownEdge(_) => "unknown_edge",
        Error::UnknownVertex(_) => "unknown_vertex",
        Error::Duplicate { .. } => "duplicate_id",
        Error::SelfLoop(_) => "self_loop",
        Error::NonPositiveWeight { .. } => "nonpositive_weight",
        Error::NonIntegerWeight { .. } => "noninteger_weight",
        Error::Disconnected => "disconnected",
        Error::DisconnectedVertexSet => "disconnected_vertex_set",
        Error::Trivial => "trivial_graph",
        Error::InvalidArgument(_) => "invalid_argument",
        Error::TooLarge { .. } => "too_large",
        Error::ParseRational(_) => "bad_rational",
        Error::Parse(_) => "malformed_input",
        Error::Internal(_) => "internal",
    };
    json!({"error": {"kind": kind, "message": err.to_string()}})
}

/// Compact JSON with sorted keys and a trailing newline.
pub fn render(v: &Value) -> String {
    let mut s = serde_json::to_string(v).expect("values always serialize");
    s.push('\n');
    s
}
