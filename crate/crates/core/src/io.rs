//! Graph file formats.
//!
//! * `tri-v1` (canonical JSON):
//!   `{"edges":[[i,u,j,v],...],"format":"tri-v1","meta":{...},"n":N}` with
//!   `i < j` part numbers, edges sorted, keys sorted, no whitespace. `meta` is
//!   optional.
//! * `tri-adj-v1` (text): a header line `tri-adj-v1 N` followed by three
//!   `N x N` blocks of `0`/`1` characters for the part pairs 12, 13, 23.
//! * `bip-v1` (JSON) for bipartite graphs:
//!   `{"edges":[[u,v],...],"format":"bip-v1","m":M,"n":N}`.

use std::fmt::Write as _;
use std::path::Path;

use serde_json::{Map, Value};

use crate::bipartite::BipartiteGraph;
use crate::error::{Error, Result};
use crate::graph::{Part, TripartiteGraph, Vertex};

pub const TRI_JSON_FORMAT: &str = "tri-v1";
pub const TRI_ADJ_FORMAT: &str = "tri-adj-v1";
pub const BIP_JSON_FORMAT: &str = "bip-v1";

/// A graph plus the optional `meta` block found in its file.
#[derive(Debug, Clone, PartialEq)]
pub struct GraphDocument {
    pub graph: TripartiteGraph,
    pub meta: Option<Value>,
}

impl GraphDocument {
    pub fn new(graph: TripartiteGraph) -> Self {
        GraphDocument { graph, meta: None }
    }

    pub fn with_meta(graph: TripartiteGraph, meta: Value) -> Self {
        GraphDocument { graph, meta: Some(meta) }
    }
}

/// Serializes a JSON value with object keys sorted at every level and no
/// insignificant whitespace.
pub fn canonical_string(value: &Value) -> String {
    let mut out = String::new();
    write_canonical(value, &mut out);
    out
}

fn write_canonical(value: &Value, out: &mut String) {
    match value {
        Value::Object(map) => {
            let mut keys: Vec<&String> = map.keys().collect();
            keys.sort();
            out.push('{');
            for (k, key) in keys.iter().enumerate() {
                if k > 0 {
                    out.push(',');
                }
                out.push_str(&Value::String((*key).clone()).to_string());
                out.push(':');
                write_canonical(&map[*key], out);
            }
            out.push('}');
        }
        Value::Array(items) => {
            out.push('[');
            for (k, item) in items.iter().enumerate() {
                if k > 0 {
                    out.push(',');
                }
                write_canonical(item, out);
            }
            out.push(']');
        }
        other => out.push_str(&other.to_string()),
    }
}

/// Edges as `[i, u, j, v]` with `i < j`, sorted lexicographically.
pub fn canonical_edges(graph: &TripartiteGraph) -> Vec<[usize; 4]> {
    let mut edges: Vec<[usize; 4]> = graph
        .edges()
        .map(|(x, y)| {
            let (a, b) = if x.part < y.part { (x, y) } else { (y, x) };
            [a.part.number() as usize, a.index, b.part.number() as usize, b.index]
        })
        .collect();
    edges.sort_unstable();
    edges
}

pub fn graph_to_value(doc: &GraphDocument) -> Value {
    let mut map = Map::new();
    map.insert("format".into(), Value::from(TRI_JSON_FORMAT));
    map.insert("n".into(), Value::from(doc.graph.n()));
    map.insert(
        "edges".into(),
        Value::Array(
            canonical_edges(&doc.graph)
                .into_iter()
                .map(|e| Value::Array(e.iter().map(|&x| Value::from(x)).collect()))
                .collect(),
        ),
    );
    if let Some(meta) = &doc.meta {
        map.insert("meta".into(), meta.clone());
    }
    Value::Object(map)
}

/// Canonical `tri-v1` text (no trailing newline).
pub fn to_json(doc: &GraphDocument) -> String {
    canonical_string(&graph_to_value(doc))
}

fn as_index(value: &Value, what: &str) -> Result<usize> {
    value
        .as_u64()
        .map(|x| x as usize)
        .ok_or_else(|| Error::Malformed(format!("{what} must be a non-negative integer, got {value}")))
}

pub fn graph_from_value(value: &Value) -> Result<GraphDocument> {
    let obj = value
        .as_object()
        .ok_or_else(|| Error::Malformed("graph document must be a JSON object".into()))?;
    match obj.get("format").and_then(Value::as_str) {
        Some(TRI_JSON_FORMAT) => {}
        Some(other) => return Err(Error::Malformed(format!("unsupported format {other:?}"))),
        None => return Err(Error::Malformed("missing \"format\"".into())),
    }
    let n = as_index(obj.get("n").ok_or_else(|| Error::Malformed("missing \"n\"".into()))?, "n")?;
    if n == 0 {
        return Err(Error::Malformed("n must be positive".into()));
    }
    let edges = obj
        .get("edges")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Malformed("missing \"edges\" array".into()))?;
    let mut graph = TripartiteGraph::empty(n)?;
    for edge in edges {
        let e = edge
            .as_array()
            .filter(|a| a.len() == 4)
            .ok_or_else(|| Error::Malformed(format!("edge must be [i,u,j,v], got {edge}")))?;
        let i = as_index(&e[0], "part")?;
        let u = as_index(&e[1], "index")?;
        let j = as_index(&e[2], "part")?;
        let v = as_index(&e[3], "index")?;
        let (Some(pi), Some(pj)) = (part_number(i), part_number(j)) else {
            return Err(Error::Malformed(format!("part out of range in edge {edge}")));
        };
        if i == j {
            return Err(Error::Malformed(format!("within-part edge {edge}")));
        }
        if i > j {
            return Err(Error::Malformed(format!("edge {edge} must list the lower part first")));
        }
        if u >= n || v >= n {
            return Err(Error::Malformed(format!("index out of range in edge {edge}")));
        }
        if !graph.set_edge(Vertex::new(pi, u), Vertex::new(pj, v))? {
            return Err(Error::Malformed(format!("duplicate edge {edge}")));
        }
    }
    let meta = match obj.get("meta") {
        None | Some(Value::Null) => None,
        Some(m) => Some(m.clone()),
    };
    Ok(GraphDocument { graph, meta })
}

fn part_number(k: usize) -> Option<Part> {
    u8::try_from(k).ok().and_then(Part::from_number)
}

pub fn from_json(text: &str) -> Result<GraphDocument> {
    let value: Value =
        serde_json::from_str(text).map_err(|e| Error::Malformed(format!("invalid JSON: {e}")))?;
    graph_from_value(&value)
}

const PAIRS: [(Part, Part); 3] = [(Part::One, Part::Two), (Part::One, Part::Three), (Part::Two, Part::Three)];

pub fn to_adjacency_text(graph: &TripartiteGraph) -> String {
    let n = graph.n();
    let mut out = String::with_capacity(3 * n * (n + 1) + 16);
    let _ = writeln!(out, "{TRI_ADJ_FORMAT} {n}");
    for (a, b) in PAIRS {
        for u in 0..n {
            for v in 0..n {
                out.push(if graph.has_edge(Vertex::new(a, u), Vertex::new(b, v)) { '1' } else { '0' });
            }
            out.push('\n');
        }
    }
    out
}

pub fn from_adjacency_text(text: &str) -> Result<TripartiteGraph> {
    let mut lines = text.lines().map(str::trim_end).filter(|l| !l.is_empty());
    let header = lines.next().ok_or_else(|| Error::Malformed("empty input".into()))?;
    let mut fields = header.split_whitespace();
    if fields.next() != Some(TRI_ADJ_FORMAT) {
        return Err(Error::Malformed(format!("bad header {header:?}")));
    }
    let n: usize = fields
        .next()
        .and_then(|s| s.parse().ok())
        .filter(|&n| n > 0)
        .ok_or_else(|| Error::Malformed(format!("bad header {header:?}")))?;
    if fields.next().is_some() {
        return Err(Error::Malformed(format!("bad header {header:?}")));
    }
    let mut graph = TripartiteGraph::empty(n)?;
    for (a, b) in PAIRS {
        for u in 0..n {
            let line = lines
                .next()
                .ok_or_else(|| Error::Malformed(format!("block {}{} truncated", a.number(), b.number())))?;
            if line.len() != n {
                return Err(Error::Malformed(format!("row of length {} (expected {n})", line.len())));
            }
            for (v, ch) in line.chars().enumerate() {
                match ch {
                    '1' => {
                        graph.set_edge(Vertex::new(a, u), Vertex::new(b, v))?;
                    }
                    '0' => {}
                    other => return Err(Error::Malformed(format!("unexpected character {other:?}"))),
                }
            }
        }
    }
    if lines.next().is_some() {
        return Err(Error::Malformed("trailing data after adjacency blocks".into()));
    }
    Ok(graph)
}

/// Parses either format, chosen by the first non-blank character.
pub fn parse_graph(text: &str) -> Result<GraphDocument> {
    if text.trim_start().starts_with('{') {
        from_json(text)
    } else {
        from_adjacency_text(text).map(GraphDocument::new)
    }
}

pub fn read_graph(path: &Path) -> Result<GraphDocument> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_graph(&text)
}

pub fn write_graph(path: &Path, doc: &GraphDocument) -> Result<()> {
    let mut text = to_json(doc);
    text.push('\n');
    std::fs::write(path, text).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

pub fn bipartite_to_json(graph: &BipartiteGraph) -> String {
    let mut map = Map::new();
    map.insert("format".into(), Value::from(BIP_JSON_FORMAT));
    map.insert("m".into(), Value::from(graph.m()));
    map.insert("n".into(), Value::from(graph.n()));
    map.insert(
        "edges".into(),
        Value::Array(graph.edges().map(|(u, v)| Value::from(vec![u, v])).collect()),
    );
    canonical_string(&Value::Object(map))
}

pub fn bipartite_from_json(text: &str) -> Result<BipartiteGraph> {
    let value: Value =
        serde_json::from_str(text).map_err(|e| Error::Malformed(format!("invalid JSON: {e}")))?;
    let obj = value
        .as_object()
        .ok_or_else(|| Error::Malformed("bipartite document must be a JSON object".into()))?;
    if obj.get("format").and_then(Value::as_str) != Some(BIP_JSON_FORMAT) {
        return Err(Error::Malformed("expected format \"bip-v1\"".into()));
    }
    let m = as_index(obj.get("m").unwrap_or(&Value::Null), "m")?;
    let n = as_index(obj.get("n").unwrap_or(&Value::Null), "n")?;
    let edges = obj
        .get("edges")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Malformed("missing \"edges\" array".into()))?;
    let mut graph = BipartiteGraph::new(m, n);
    for edge in edges {
        let e = edge
            .as_array()
            .filter(|a| a.len() == 2)
            .ok_or_else(|| Error::Malformed(format!("edge must be [u,v], got {edge}")))?;
        let u = as_index(&e[0], "u")?;
        let v = as_index(&e[1], "v")?;
        if u >= m || v >= n {
            return Err(Error::Malformed(format!("index out of range in edge {edge}")));
        }
        if graph.has_edge(u, v) {
            return Err(Error::Malformed(format!("duplicate edge {edge}")));
        }
        graph.add_edge(u, v);
    }
    Ok(graph)
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    fn small() -> TripartiteGraph {
        let mut g = TripartiteGraph::empty(2).unwrap();
        g.set_edge(Vertex::new(Part::Two, 1), Vertex::new(Part::Three, 0)).unwrap();
        g.set_edge(Vertex::new(Part::Three, 1), Vertex::new(Part::One, 0)).unwrap();
        g.set_edge(Vertex::new(Part::One, 0), Vertex::new(Part::Two, 1)).unwrap();
        g
    }

    #[test]
    fn canonical_json_layout() {
        let doc = GraphDocument::new(small());
        assert_eq!(
            to_json(&doc),
            r#"{"edges":[[1,0,2,1],[1,0,3,1],[2,1,3,0]],"format":"tri-v1","n":2}"#
        );
        let with_meta = GraphDocument::with_meta(small(), json!({"name": "x", "A": [0, 1]}));
        let text = to_json(&with_meta);
        assert!(text.contains(r#""meta":{"A":[0,1],"name":"x"}"#));
        assert_eq!(from_json(&text).unwrap(), with_meta);
    }

    #[test]
    fn json_reader_rejects_malformed() {
        let bad = [
            r#"{"format":"tri-v2","n":2,"edges":[]}"#,
            r#"{"format":"tri-v1","n":0,"edges":[]}"#,
            r#"{"format":"tri-v1","n":2,"edges":[[1,0,1,1]]}"#,
            r#"{"format":"tri-v1","n":2,"edges":[[1,0,2,2]]}"#,
            r#"{"format":"tri-v1","n":2,"edges":[[1,0,4,1]]}"#,
            r#"{"format":"tri-v1","n":2,"edges":[[1,0,2,1],[1,0,2,1]]}"#,
            r#"{"format":"tri-v1","n":2,"edges":[[2,0,1,1]]}"#,
            r#"{"format":"tri-v1","n":2,"edges":[[1,0,2]]}"#,
            r#"{"format":"tri-v1","n":2}"#,
            r#"[1,2]"#,
            "not json",
        ];
        for text in bad {
            assert!(matches!(from_json(text), Err(Error::Malformed(_))), "accepted {text}");
        }
    }

    #[test]
    fn adjacency_text_round_trip() {
        let g = small();
        let text = to_adjacency_text(&g);
        assert_eq!(text, "tri-adj-v1 2\n01\n00\n01\n00\n00\n10\n");
        assert_eq!(from_adjacency_text(&text).unwrap(), g);
        assert_eq!(parse_graph(&text).unwrap().graph, g);
    }

    #[test]
    fn adjacency_reader_rejects_malformed() {
        let bad = [
            "tri-adj 2\n01\n00\n01\n00\n00\n10\n",
            "tri-adj-v1 x\n",
            "tri-adj-v1 2 3\n01\n00\n01\n00\n00\n10\n",
            "tri-adj-v1 2\n01\n00\n01\n00\n00\n",
            "tri-adj-v1 2\n012\n00\n01\n00\n00\n10\n",
            "tri-adj-v1 2\n02\n00\n01\n00\n00\n10\n",
            "tri-adj-v1 2\n01\n00\n01\n00\n00\n10\n11\n",
        ];
        for text in bad {
            assert!(from_adjacency_text(text).is_err(), "accepted {text:?}");
        }
    }

    #[test]
    fn bipartite_json_round_trip() {
        let b = BipartiteGraph::from_edges(2, 3, [(0, 2), (1, 0)]);
        let text = bipartite_to_json(&b);
        assert_eq!(text, r#"{"edges":[[0,2],[1,0]],"format":"bip-v1","m":2,"n":3}"#);
        assert_eq!(bipartite_from_json(&text).unwrap(), b);
        assert!(bipartite_from_json(r#"{"format":"bip-v1","m":1,"n":1,"edges":[[0,1]]}"#).is_err());
    }
}
