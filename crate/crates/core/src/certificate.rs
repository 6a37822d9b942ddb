//! Claim files and their independent re-verification.
//!
//! A claim is a JSON object of one of these shapes:
//!
//! | shape | meaning |
//! |-------|---------|
//! | `{"parts": [[..],[..],[..]]}` | the listed vertices span a `K_3(s)` |
//! | `{"left": [..], "right": [..]}` | a `K_{s,s}`; for tripartite graphs optional `left_part`/`right_part` (default 1, 2) |
//! | `{"triangles": N}` | `T(G) = N` |
//! | `{"min_degree": D}` | `δ(G) = D` |
//! | `{"k3s_free": S}` | no `K_3(S)` exists (decided by the exact detector) |

use serde::Serialize;
use serde_json::Value;

use crate::bipartite::BipartiteGraph;
use crate::detection::{find_k3s, K3sWitness, KssWitness};
use crate::error::{Error, Result};
use crate::graph::{Part, TripartiteGraph, Vertex};
use crate::io::{self, BIP_JSON_FORMAT};

/// A graph file in any supported format.
#[derive(Debug, Clone)]
pub enum AnyGraph {
    Tripartite(TripartiteGraph),
    Bipartite(BipartiteGraph),
}

pub fn parse_any_graph(text: &str) -> Result<AnyGraph> {
    if text.trim_start().starts_with('{') {
        let value: Value = serde_json::from_str(text).map_err(|e| Error::Malformed(format!("invalid JSON: {e}")))?;
        if value.get("format").and_then(Value::as_str) == Some(BIP_JSON_FORMAT) {
            return io::bipartite_from_json(text).map(AnyGraph::Bipartite);
        }
        return io::graph_from_value(&value).map(|d| AnyGraph::Tripartite(d.graph));
    }
    io::from_adjacency_text(text).map(AnyGraph::Tripartite)
}

#[derive(Debug, Clone, PartialEq)]
pub enum Claim {
    K3s(K3sWitness),
    Kss { witness: KssWitness, left_part: Part, right_part: Part },
    Triangles(u64),
    MinDegree(usize),
    K3sFree(usize),
}

fn index_list(v: &Value, what: &str) -> Result<Vec<usize>> {
    v.as_array()
        .ok_or_else(|| Error::Malformed(format!("{what} must be an array")))?
        .iter()
        .map(|x| x.as_u64().map(|x| x as usize).ok_or_else(|| Error::Malformed(format!("{what} entries must be non-negative integers"))))
        .collect()
}

fn part_field(obj: &serde_json::Map<String, Value>, key: &str, default: Part) -> Result<Part> {
    match obj.get(key) {
        None => Ok(default),
        Some(v) => v
            .as_u64()
            .and_then(|k| u8::try_from(k).ok())
            .and_then(Part::from_number)
            .ok_or_else(|| Error::Malformed(format!("{key} must be 1, 2 or 3"))),
    }
}

pub fn parse_claim(text: &str) -> Result<Claim> {
    let value: Value = serde_json::from_str(text).map_err(|e| Error::Malformed(format!("invalid JSON: {e}")))?;
    let obj = value.as_object().ok_or_else(|| Error::Malformed("claim must be a JSON object".into()))?;
    if let Some(parts) = obj.get("parts") {
        let arr = parts.as_array().filter(|a| a.len() == 3).ok_or_else(|| Error::Malformed("parts must hold three arrays".into()))?;
        let parts = [index_list(&arr[0], "parts")?, index_list(&arr[1], "parts")?, index_list(&arr[2], "parts")?];
        return Ok(Claim::K3s(K3sWitness { parts }));
    }
    if let (Some(left), Some(right)) = (obj.get("left"), obj.get("right")) {
        let witness = KssWitness { left: index_list(left, "left")?, right: index_list(right, "right")? };
        let left_part = part_field(obj, "left_part", Part::One)?;
        let right_part = part_field(obj, "right_part", Part::Two)?;
        return Ok(Claim::Kss { witness, left_part, right_part });
    }
    let number = |key: &str| -> Result<Option<u64>> {
        obj.get(key)
            .map(|v| v.as_u64().ok_or_else(|| Error::Malformed(format!("{key} must be a non-negative integer"))))
            .transpose()
    };
    if let Some(t) = number("triangles")? {
        return Ok(Claim::Triangles(t));
    }
    if let Some(d) = number("min_degree")? {
        return Ok(Claim::MinDegree(d as usize));
    }
    if let Some(s) = number("k3s_free")? {
        return Ok(Claim::K3sFree(s as usize));
    }
    Err(Error::Malformed("unrecognised claim".into()))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub claim: &'static str,
    pub holds: bool,
    pub detail: String,
}

fn verdict(claim: &'static str, holds: bool, detail: String) -> Verdict {
    Verdict { claim, holds, detail }
}

/// Re-checks `claim` against `graph` from scratch. Claims that do not apply to
/// the graph kind are an error.
pub fn verify_claim(graph: &AnyGraph, claim: &Claim) -> Result<Verdict> {
    match (graph, claim) {
        (AnyGraph::Tripartite(g), Claim::K3s(w)) => {
            Ok(verdict("k3s", w.verify(g), format!("K_3({}) on {} vertices", w.s(), 3 * w.s())))
        }
        (AnyGraph::Bipartite(b), Claim::Kss { witness, .. }) => {
            Ok(verdict("kss", witness.verify(b), format!("K_{{{0},{0}}}", witness.s())))
        }
        (AnyGraph::Tripartite(g), Claim::Kss { witness, left_part, right_part }) => {
            if left_part == right_part {
                return Err(Error::InvalidParameter("left_part and right_part must differ".into()));
            }
            let n = g.n();
            let in_range = witness.left.iter().chain(&witness.right).all(|&i| i < n);
            let holds = in_range
                && witness.left.len() == witness.right.len()
                && !witness.left.is_empty()
                && distinct(&witness.left)
                && distinct(&witness.right)
                && witness.left.iter().all(|&u| {
                    witness
                        .right
                        .iter()
                        .all(|&v| g.has_edge(Vertex::new(*left_part, u), Vertex::new(*right_part, v)))
                });
            Ok(verdict("kss", holds, format!("K_{{{0},{0}}} between parts {1} and {2}", witness.s(), left_part.number(), right_part.number())))
        }
        (AnyGraph::Tripartite(g), Claim::Triangles(t)) => {
            let actual = g.triangle_count();
            Ok(verdict("triangles", actual == *t, format!("claimed {t}, counted {actual}")))
        }
        (AnyGraph::Tripartite(g), Claim::MinDegree(d)) => {
            let actual = g.min_degree();
            Ok(verdict("min-degree", actual == *d, format!("claimed {d}, computed {actual}")))
        }
        (AnyGraph::Tripartite(g), Claim::K3sFree(s)) => {
            let found = find_k3s(g, *s)?;
            let detail = match &found {
                Some(w) => format!("found K_3({s}) with parts {:?}", w.parts),
                None => format!("no K_3({s})"),
            };
            Ok(verdict("k3s-free", found.is_none(), detail))
        }
        (AnyGraph::Bipartite(_), _) => Err(Error::InvalidParameter("only K_{s,s} claims apply to bipartite graphs".into())),
    }
}

fn distinct(xs: &[usize]) -> bool {
    let mut v = xs.to_vec();
    v.sort_unstable();
    v.windows(2).all(|w| w[0] != w[1])
}
