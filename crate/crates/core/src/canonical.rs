//! Deterministic digests of configurations, used as node keys by the explorer.
//!
//! Identity keys hash the configuration with its vertex ids. Isomorphism keys
//! hash a canonical form: the lexicographically least relabeled serialization
//! over every bijection that maps `P` vertices to `P` vertices, `Q` to `Q`,
//! and respects labels, edge kinds and exceptional flags. The search is a
//! plain individualization/refinement tree without automorphism pruning,
//! which is plenty for graphs of a few dozen vertices.

use std::fmt;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::configuration::{Configuration, EdgeKind, VertexId, VertexLabel};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum KeyMode {
    /// Vertex ids are part of the key.
    #[default]
    Identity,
    /// Keys agree exactly for isomorphic configurations.
    #[serde(rename = "iso")]
    Isomorphism,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CanonicalKey(String);

impl CanonicalKey {
    pub fn as_str(&self) -> &str {
        &self.0
    }

    /// First 12 hex digits, for display.
    pub fn short(&self) -> &str {
        &self.0[..self.0.len().min(12)]
    }
}

impl fmt::Display for CanonicalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<String> for CanonicalKey {
    fn from(s: String) -> Self {
        CanonicalKey(s)
    }
}

pub fn canonical_key(c: &Configuration, mode: KeyMode) -> CanonicalKey {
    let text = match mode {
        KeyMode::Identity => identity_form(c),
        KeyMode::Isomorphism => isomorphism_form(c),
    };
    let digest = Sha256::digest(text.as_bytes());
    let mut hex = String::with_capacity(64);
    for byte in digest {
        write!(hex, "{byte:02x}").unwrap();
    }
    CanonicalKey(hex)
}

fn label_code(l: VertexLabel) -> char {
    match l {
        VertexLabel::Square => 's',
        VertexLabel::Ellipse => 'e',
        VertexLabel::PlusBox => 'p',
        VertexLabel::Circle => 'c',
        VertexLabel::Ruled4 => 'r',
    }
}

fn kind_code(k: EdgeKind) -> char {
    match k {
        EdgeKind::Solid => 'S',
        EdgeKind::Dotted => 'D',
    }
}

fn identity_form(c: &Configuration) -> String {
    let mut s = format!("id;k={};", c.k());
    for (v, l) in c.vertices() {
        write!(s, "{v}={},", label_code(l)).unwrap();
    }
    s.push(';');
    for e in c.edges() {
        write!(s, "{}-{}:{}{}{},", e.a, e.b, kind_code(e.kind), e.exceptional_a as u8, e.exceptional_b as u8).unwrap();
    }
    s
}

/// Adjacency entry seen from one endpoint: (neighbor, kind, flag here, flag there).
type Incidence = (usize, EdgeKind, bool, bool);

/// Refinement signature: own color plus the sorted colored incidences.
type Signature = (usize, Vec<(EdgeKind, bool, bool, usize)>);

struct Indexed {
    k: u32,
    labels: Vec<(bool, VertexLabel)>,
    adjacency: Vec<Vec<Incidence>>,
}

impl Indexed {
    fn new(c: &Configuration) -> Self {
        let ids: Vec<VertexId> = c.vertices().map(|(v, _)| v).collect();
        let index = |v: VertexId| ids.binary_search(&v).expect("edge endpoint is a vertex");
        let labels = c.vertices().map(|(v, l)| (v.is_q(), l)).collect();
        let mut adjacency = vec![Vec::new(); ids.len()];
        for e in c.edges() {
            let (a, b) = (index(e.a), index(e.b));
            adjacency[a].push((b, e.kind, e.exceptional_a, e.exceptional_b));
            adjacency[b].push((a, e.kind, e.exceptional_b, e.exceptional_a));
        }
        Indexed { k: c.k(), labels, adjacency }
    }

    /// Replaces colors by the rank of their distinct values.
    fn rerank<T: Ord + Clone>(keys: &[T]) -> Vec<usize> {
        let mut distinct: Vec<T> = keys.to_vec();
        distinct.sort();
        distinct.dedup();
        keys.iter().map(|key| distinct.binary_search(key).unwrap()).collect()
    }

    /// Color refinement until the partition stops splitting. Color ids are
    /// ranks of isomorphism-invariant signatures, so they do not depend on
    /// how vertices happen to be indexed.
    fn refine(&self, mut colors: Vec<usize>) -> Vec<usize> {
        let mut classes = count_distinct(&colors);
        loop {
            let signatures: Vec<Signature> = (0..colors.len())
                .map(|v| {
                    let mut nb: Vec<_> = self.adjacency[v]
                        .iter()
                        .map(|&(u, kind, here, there)| (kind, here, there, colors[u]))
                        .collect();
                    nb.sort();
                    (colors[v], nb)
                })
                .collect();
            let next = Self::rerank(&signatures);
            let next_classes = count_distinct(&next);
            colors = next;
            if next_classes == classes {
                return colors;
            }
            classes = next_classes;
        }
    }

    fn serialize(&self, colors: &[usize]) -> Vec<u8> {
        // Discrete coloring: colors[v] is v's position in the canonical order.
        let n = colors.len();
        let mut order = vec![0; n];
        for (v, &c) in colors.iter().enumerate() {
            order[c] = v;
        }
        let mut out = Vec::with_capacity(n * 8);
        for &v in &order {
            out.push(self.labels[v].0 as u8);
            out.push(label_code(self.labels[v].1) as u8);
        }
        let mut edges: Vec<(usize, usize, u8, u8, u8)> = Vec::new();
        for (v, inc) in self.adjacency.iter().enumerate() {
            for &(u, kind, here, there) in inc {
                if colors[v] < colors[u] {
                    edges.push((colors[v], colors[u], kind_code(kind) as u8, here as u8, there as u8));
                }
            }
        }
        edges.sort();
        for (a, b, kind, x, y) in edges {
            out.extend_from_slice(&(a as u32).to_be_bytes());
            out.extend_from_slice(&(b as u32).to_be_bytes());
            out.extend_from_slice(&[kind, x, y]);
        }
        out
    }

    fn search(&self, colors: Vec<usize>, best: &mut Option<Vec<u8>>) {
        let colors = self.refine(colors);
        let n = colors.len();
        let mut sizes = vec![0usize; n];
        for &c in &colors {
            sizes[c] += 1;
        }
        let Some(target) = (0..n).find(|&c| sizes[c] > 1) else {
            let form = self.serialize(&colors);
            if best.as_ref().is_none_or(|b| form < *b) {
                *best = Some(form);
            }
            return;
        };
        for v in (0..n).filter(|&v| colors[v] == target) {
            // v goes first within its cell, the rest of the cell after it.
            let split: Vec<usize> =
                colors.iter().enumerate().map(|(u, &c)| 2 * c + usize::from(c == target && u != v)).collect();
            self.search(Self::rerank(&split), best);
        }
    }
}

fn count_distinct(colors: &[usize]) -> usize {
    let mut seen = colors.to_vec();
    seen.sort_unstable();
    seen.dedup();
    seen.len()
}

fn isomorphism_form(c: &Configuration) -> String {
    let g = Indexed::new(c);
    let initial = Indexed::rerank(&g.labels);
    let mut best = None;
    g.search(initial, &mut best);
    let bytes = best.unwrap_or_default();
    let mut s = format!("iso;k={};", g.k);
    for b in bytes {
        write!(s, "{b:02x}").unwrap();
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::configuration::{initial_configuration, FlopMove};

    #[test]
    fn same_configuration_same_key() {
        let c = initial_configuration(3).unwrap();
        for mode in [KeyMode::Identity, KeyMode::Isomorphism] {
            assert_eq!(canonical_key(&c, mode), canonical_key(&c.clone(), mode));
        }
    }

    #[test]
    fn flop_changes_k1_key() {
        let c = initial_configuration(1).unwrap();
        let f = c.apply_flop(&FlopMove::single(VertexId::P(1, 1))).unwrap();
        for mode in [KeyMode::Identity, KeyMode::Isomorphism] {
            assert_ne!(canonical_key(&c, mode), canonical_key(&f, mode));
        }
    }

    #[test]
    fn keys_are_hex_digests() {
        let key = canonical_key(&initial_configuration(2).unwrap(), KeyMode::Isomorphism);
        assert_eq!(key.as_str().len(), 64);
        assert!(key.as_str().bytes().all(|b| b.is_ascii_hexdigit()));
        assert_eq!(key.short().len(), 12);
    }
}
