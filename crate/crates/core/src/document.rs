//! The JSON graph document: `{"vertices": [...], "bundles": [{"id", "source",
//! "target", "multiplicity"}]}` with `"omega"` for infinitely many edges.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::cardinal::Multiplicity;
use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphDocument {
    pub vertices: Vec<String>,
    pub bundles: Vec<BundleEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BundleEntry {
    pub id: String,
    pub source: String,
    pub target: String,
    pub multiplicity: RawMultiplicity,
}

/// A multiplicity as written: a count or the word `omega`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RawMultiplicity {
    Count(u64),
    Word(String),
}

impl RawMultiplicity {
    fn resolve(&self, bundle: &str) -> Result<Multiplicity> {
        match self {
            RawMultiplicity::Count(n) => Multiplicity::finite(*n)
                .ok_or_else(|| Error::input(format!("bundle {bundle:?} has multiplicity 0"))),
            RawMultiplicity::Word(w) if w == "omega" => Ok(Multiplicity::Omega),
            RawMultiplicity::Word(w) => Err(Error::input(format!(
                "bundle {bundle:?} has multiplicity {w:?}; expected a positive integer or \"omega\""
            ))),
        }
    }

    fn of(m: Multiplicity) -> Self {
        match m {
            Multiplicity::Finite(n) => RawMultiplicity::Count(n.get()),
            Multiplicity::Omega => RawMultiplicity::Word("omega".to_string()),
        }
    }
}

impl GraphDocument {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })
    }

    pub fn to_graph(&self) -> Result<Graph> {
        let bundles = self
            .bundles
            .iter()
            .map(|b| {
                Ok((
                    b.id.clone(),
                    b.source.clone(),
                    b.target.clone(),
                    b.multiplicity.resolve(&b.id)?,
                ))
            })
            .collect::<Result<Vec<_>>>()?;
        Graph::new(self.vertices.iter().cloned(), bundles)
    }

    pub fn from_graph(g: &Graph) -> Self {
        GraphDocument {
            vertices: g.vertex_names().to_vec(),
            bundles: g
                .bundles()
                .iter()
                .map(|b| BundleEntry {
                    id: b.id.clone(),
                    source: g.vertex_name(b.source).to_string(),
                    target: g.vertex_name(b.target).to_string(),
                    multiplicity: RawMultiplicity::of(b.multiplicity),
                })
                .collect(),
        }
    }
}

/// Parses and validates a graph document.
pub fn ingest_str(text: &str) -> Result<Graph> {
    GraphDocument::parse(text)?.to_graph()
}

pub fn ingest_path(path: &Path) -> Result<Graph> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::input(format!("cannot read {}: {e}", path.display())))?;
    ingest_str(&text)
}

/// Pretty-printed document for `g`.
pub fn serialize(g: &Graph) -> String {
    serde_json::to_string_pretty(&GraphDocument::from_graph(g)).expect("documents serialize") + "\n"
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::*;

    const GRAPH_C: &str = r#"{
  "vertices": ["p", "u", "w"],
  "bundles": [
    {"id": "a", "source": "p", "target": "u", "multiplicity": "omega"},
    {"id": "b", "source": "p", "target": "w", "multiplicity": 1}
  ]
}"#;

    #[test]
    fn ingest_graph_c() {
        let g = ingest_str(GRAPH_C).unwrap();
        assert_eq!(g.vertex_count(), 3);
        assert_eq!(g.bundles().len(), 2);
        assert_eq!(g, graph_c());
    }

    #[test]
    fn round_trip() {
        for (_, g) in corpus() {
            assert_eq!(ingest_str(&serialize(&g)).unwrap(), g);
        }
    }

    #[test]
    fn rejects_bad_documents() {
        let zero = GRAPH_C.replace("\"multiplicity\": 1", "\"multiplicity\": 0");
        assert!(matches!(ingest_str(&zero), Err(Error::Input(m)) if m.contains("\"b\"")));
        let dangling = GRAPH_C.replace(
            "\"source\": \"p\", \"target\": \"w\"",
            "\"source\": \"x\", \"target\": \"w\"",
        );
        assert!(matches!(ingest_str(&dangling), Err(Error::Input(m)) if m.contains("\"x\"")));
        let dup = GRAPH_C.replace("[\"p\", \"u\", \"w\"]", "[\"p\", \"u\", \"u\"]");
        assert!(matches!(ingest_str(&dup), Err(Error::Input(_))));
        let unknown = GRAPH_C.replace("\"id\": \"a\",", "\"id\": \"a\", \"colour\": 1,");
        assert!(matches!(
            ingest_str(&unknown),
            Err(Error::Parse { line: 4, .. })
        ));
        let broken = "{\n  \"vertices\": [\"p\",,]\n}";
        assert!(matches!(
            ingest_str(broken),
            Err(Error::Parse { line: 2, .. })
        ));
        let word = GRAPH_C.replace("\"omega\"", "\"many\"");
        assert!(matches!(ingest_str(&word), Err(Error::Input(_))));
    }
}
