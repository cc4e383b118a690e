//! JSON wire format for configurations.
//!
//! ```json
//! {"edges":[{"a":"P:1:1","b":"Q:1","exceptional":{"P:1:1":false,"Q:1":false},"kind":"solid"}],
//!  "k":1,
//!  "vertices":[{"id":"P:1:1","label":"circle"},{"id":"Q:1","label":"ruled4"}]}
//! ```
//!
//! Keys are emitted in sorted order and vertices/edges in id order, so the
//! output is byte-stable for a given configuration.

use std::collections::BTreeMap;

use serde::de::{self, Deserializer};
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};

use crate::configuration::{Configuration, Edge, EdgeKind, VertexId, VertexLabel};
use crate::error::{Error, Result};

macro_rules! string_serde {
    ($ty:ty) => {
        impl Serialize for $ty {
            fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
                s.collect_str(self)
            }
        }

        impl<'de> Deserialize<'de> for $ty {
            fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
                let s = String::deserialize(d)?;
                s.parse().map_err(de::Error::custom)
            }
        }
    };
}

string_serde!(VertexId);
string_serde!(VertexLabel);

impl std::fmt::Display for EdgeKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

string_serde!(EdgeKind);

// Field order is alphabetical so struct serialization is already key-sorted.
#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct VertexWire {
    id: VertexId,
    label: VertexLabel,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct EdgeWire {
    a: VertexId,
    b: VertexId,
    #[serde(default)]
    exceptional: BTreeMap<VertexId, bool>,
    kind: EdgeKind,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigurationWire {
    edges: Vec<EdgeWire>,
    k: u32,
    vertices: Vec<VertexWire>,
}

impl From<&Configuration> for ConfigurationWire {
    fn from(c: &Configuration) -> Self {
        ConfigurationWire {
            edges: c
                .edges()
                .map(|e| EdgeWire {
                    a: e.a,
                    b: e.b,
                    exceptional: BTreeMap::from([(e.a, e.exceptional_a), (e.b, e.exceptional_b)]),
                    kind: e.kind,
                })
                .collect(),
            k: c.k(),
            vertices: c.vertices().map(|(id, label)| VertexWire { id, label }).collect(),
        }
    }
}

impl TryFrom<ConfigurationWire> for Configuration {
    type Error = Error;

    fn try_from(w: ConfigurationWire) -> Result<Self> {
        let mut edges = Vec::with_capacity(w.edges.len());
        for e in w.edges {
            if let Some(stray) = e.exceptional.keys().find(|&&v| v != e.a && v != e.b) {
                return Err(Error::InvalidConfiguration(format!(
                    "edge {}–{} has an exceptional entry for non-endpoint {stray}",
                    e.a, e.b
                )));
            }
            let flag = |v| e.exceptional.get(&v).copied().unwrap_or(false);
            edges.push(Edge { a: e.a, b: e.b, kind: e.kind, exceptional_a: flag(e.a), exceptional_b: flag(e.b) });
        }
        Configuration::from_parts(w.k, w.vertices.into_iter().map(|v| (v.id, v.label)), edges)
    }
}

impl Serialize for Configuration {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ConfigurationWire::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for Configuration {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let wire = ConfigurationWire::deserialize(d)?;
        Configuration::try_from(wire).map_err(de::Error::custom)
    }
}

impl Configuration {
    /// Pretty-printed wire JSON followed by a newline.
    pub fn to_json_string(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("configuration serializes");
        s.push('\n');
        s
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(format!("configuration JSON: {e}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::configuration::initial_configuration;

    #[test]
    fn k1_json_is_exact() {
        let c = initial_configuration(1).unwrap();
        assert_eq!(
            serde_json::to_string(&c).unwrap(),
            concat!(
                r#"{"edges":[{"a":"P:1:1","b":"Q:1","exceptional":{"P:1:1":false,"Q:1":false},"kind":"solid"}],"#,
                r#""k":1,"vertices":[{"id":"P:1:1","label":"circle"},{"id":"Q:1","label":"ruled4"}]}"#
            )
        );
    }

    #[test]
    fn missing_exceptional_defaults_to_false() {
        let json = r#"{"k":1,"vertices":[{"id":"P:1:1","label":"circle"},{"id":"Q:1","label":"ruled4"}],
                       "edges":[{"a":"Q:1","b":"P:1:1","kind":"dotted"}]}"#;
        let c = Configuration::from_json_str(json).unwrap();
        let e = c.edge(VertexId::Q(1), VertexId::P(1, 1)).unwrap();
        assert_eq!(e.kind, EdgeKind::Dotted);
        assert!(!e.exceptional_a && !e.exceptional_b);
    }

    #[test]
    fn rejects_bad_input() {
        for bad in [
            r#"{"k":1,"vertices":[],"edges":[]}"#,
            r#"{"k":1,"vertices":[{"id":"P:1:1","label":"hexagon"},{"id":"Q:1","label":"ruled4"}],"edges":[]}"#,
            r#"{"k":1,"vertices":[{"id":"P:1:1","label":"circle"},{"id":"Q:1","label":"circle"}],"edges":[]}"#,
            r#"{"k":1,"vertices":[{"id":"P:1","label":"circle"},{"id":"Q:1","label":"ruled4"}],"edges":[]}"#,
            r#"{"k":1,"vertices":[{"id":"P:1:1","label":"circle"},{"id":"Q:1","label":"ruled4"}],
                "edges":[{"a":"P:1:1","b":"Q:1","kind":"solid","exceptional":{"Q:1":true}}]}"#,
            r#"{"k":1,"vertices":[{"id":"P:1:1","label":"circle"},{"id":"Q:1","label":"ruled4"}],
                "edges":[{"a":"P:1:1","b":"Q:1","kind":"solid"},{"a":"Q:1","b":"P:1:1","kind":"dotted"}]}"#,
            "not json",
        ] {
            assert!(Configuration::from_json_str(bad).is_err(), "{bad}");
        }
    }
}
