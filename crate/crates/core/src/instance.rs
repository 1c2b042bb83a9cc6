//! The JSON instance format.
//!
//! ```json
//! {
//!   "dimension": 2,
//!   "points": {"1": ["0", "0"], "2": ["4", "0"]},
//!   "edges": [{"id": "a", "tail": "1", "head": "2", "gain": "-6"}],
//!   "bias": [["a", "s", "-b"]]
//! }
//! ```
//!
//! Rationals are strings, `"n"` or `"p/q"`; JSON numbers are refused so no
//! float is ever read. A bias circle lists its edge ids; a leading `-` marks
//! reverse traversal and is accepted for readability only, since the edges
//! determine the circle.

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactla::{format_rational, parse_rational, Vector};
use crate::gaingraph::{Circle, Edge, GainGraph};
use crate::pointconfig::Configuration;
use crate::transport::Triple;

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawEdge {
    id: String,
    tail: String,
    head: String,
    gain: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawInstance {
    dimension: usize,
    points: IndexMap<String, Vec<String>>,
    edges: Vec<RawEdge>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    bias: Vec<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    pub triple: Triple,
    /// Bias circles as written (edge ids, optional leading `-`).
    pub bias: Vec<Vec<String>>,
}

impl Instance {
    pub fn new(triple: Triple) -> Self {
        Instance { triple, bias: Vec::new() }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: RawInstance = serde_json::from_str(text)
            .map_err(|e| Error::parse(format!("line {} column {}", e.line(), e.column()), e.to_string()))?;
        let mut points = IndexMap::new();
        for (label, coords) in &raw.points {
            if coords.len() != raw.dimension {
                return Err(Error::parse(
                    format!("points.{label}"),
                    format!("{} coordinates for dimension {}", coords.len(), raw.dimension),
                ));
            }
            let v = coords
                .iter()
                .enumerate()
                .map(|(i, s)| parse_rational(s).map_err(|m| Error::parse(format!("points.{label}[{i}]"), m)))
                .collect::<Result<Vec<_>>>()?;
            points.insert(label.clone(), Vector(v));
        }
        let config = Configuration::new(raw.dimension, points).map_err(|e| Error::parse("points", e.to_string()))?;
        let mut edges = Vec::with_capacity(raw.edges.len());
        for (i, e) in raw.edges.iter().enumerate() {
            let gain = parse_rational(&e.gain).map_err(|m| Error::parse(format!("edges[{i}].gain"), m))?;
            edges.push(Edge::new(&e.id, &e.tail, &e.head, gain));
        }
        let graph = GainGraph::new(config.points().keys().cloned().collect(), edges)
            .map_err(|e| Error::parse("edges", e.to_string()))?;
        let triple = Triple::new(config, graph).map_err(|e| Error::parse("edges", e.to_string()))?;
        let inst = Instance { triple, bias: raw.bias };
        inst.bias_circles().map_err(|e| Error::parse("bias", e.to_string()))?;
        Ok(inst)
    }

    pub fn to_json(&self) -> String {
        let t = &self.triple;
        let raw = RawInstance {
            dimension: t.config.dim(),
            points: t
                .config
                .points()
                .iter()
                .map(|(k, v)| (k.clone(), v.iter().map(format_rational).collect()))
                .collect(),
            edges: t
                .graph
                .edges()
                .iter()
                .map(|e| RawEdge {
                    id: e.id.clone(),
                    tail: e.tail.clone(),
                    head: e.head.clone(),
                    gain: format_rational(&e.gain),
                })
                .collect(),
            bias: self.bias.clone(),
        };
        serde_json::to_string_pretty(&raw).expect("plain data serializes") + "\n"
    }

    pub fn read(path: &std::path::Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::parse(path.display().to_string(), e.to_string()))?;
        Self::from_json(&text)
    }

    pub fn bias_circles(&self) -> Result<Vec<Circle>> {
        self.bias.iter().map(|ids| parse_circle(&self.triple.graph, ids)).collect()
    }
}

/// Circle from edge ids; a leading `-` on an id is ignored.
pub fn parse_circle(g: &GainGraph, ids: &[String]) -> Result<Circle> {
    let refs: Vec<&str> = ids.iter().map(|s| s.strip_prefix('-').unwrap_or(s)).collect();
    g.circle_from_edges(g.edge_set(&refs)?)
}

/// Splits a command-line bias token into edge ids: `a:s:b` style when it
/// contains `:`, otherwise one id per character (`abs`).
pub fn bias_token_ids(token: &str) -> Vec<String> {
    if token.contains(':') {
        token.split(':').filter(|s| !s.is_empty()).map(str::to_string).collect()
    } else {
        token.chars().map(|c| c.to_string()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const KITE: &str = r#"{
        "dimension": 2,
        "points": {"1": ["0", "0"], "2": ["4", "0"], "3": ["3", "2"], "4": ["1", "2"]},
        "edges": [
            {"id": "a", "tail": "1", "head": "2", "gain": "-6"},
            {"id": "b", "tail": "1", "head": "3", "gain": "0"},
            {"id": "c", "tail": "1", "head": "4", "gain": "2"},
            {"id": "s", "tail": "2", "head": "3", "gain": "2"},
            {"id": "t", "tail": "3", "head": "4", "gain": "6"}
        ],
        "bias": [["a", "s", "t", "-c"]]
    }"#;

    #[test]
    fn round_trip() {
        let inst = Instance::from_json(KITE).unwrap();
        let again = Instance::from_json(&inst.to_json()).unwrap();
        assert_eq!(inst, again);
        assert_eq!(inst.bias_circles().unwrap().len(), 1);
    }

    #[test]
    fn parse_errors() {
        let bad = KITE.replace("\"-6\"", "\"1/0\"");
        let err = Instance::from_json(&bad).unwrap_err();
        assert!(err.is_parse());
        assert!(err.to_string().contains("edges[0].gain"));
        assert!(Instance::from_json(&KITE.replace("\"-6\"", "-6")).unwrap_err().is_parse());
        assert!(Instance::from_json(&KITE.replace("\"-6\"", "\"0.5\"")).unwrap_err().is_parse());
        assert!(Instance::from_json(&KITE.replace("[\"4\", \"0\"]", "[\"0\", \"0\"]")).unwrap_err().is_parse());
        assert!(Instance::from_json("{").unwrap_err().is_parse());
    }

    #[test]
    fn bias_tokens() {
        assert_eq!(bias_token_ids("abs"), vec!["a", "b", "s"]);
        assert_eq!(bias_token_ids("12:57a"), vec!["12", "57a"]);
    }
}
