//! Breadth-first closure of a configuration under Mukai flops.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use rayon::prelude::*;
use serde::Serialize;

use crate::canonical::{canonical_key, CanonicalKey, KeyMode};
use crate::configuration::{Configuration, FlopMove, VertexId};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExploreOptions {
    /// Also follow simultaneous flops of several disjoint `ℙ²` components.
    pub simultaneous: bool,
    pub mode: KeyMode,
    /// Stop expanding nodes at this BFS depth; `Some(0)` yields the start alone.
    pub max_depth: Option<u32>,
    /// Number of rayon workers used to expand each BFS level; 1 runs inline.
    pub workers: usize,
}

impl Default for ExploreOptions {
    fn default() -> Self {
        ExploreOptions { simultaneous: false, mode: KeyMode::Identity, max_depth: None, workers: 1 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FlopArc {
    pub from: CanonicalKey,
    pub mv: FlopMove,
    pub to: CanonicalKey,
}

impl FlopArc {
    pub fn is_simultaneous(&self) -> bool {
        self.mv.is_simultaneous()
    }
}

/// A flop the rules could not carry out, kept so the graph records where the
/// rewriting alphabet runs out.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DeadArc {
    pub from: CanonicalKey,
    pub mv: FlopMove,
    pub error: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlopGraph {
    pub mode: KeyMode,
    pub root: CanonicalKey,
    pub nodes: BTreeMap<CanonicalKey, Configuration>,
    pub arcs: BTreeSet<FlopArc>,
    pub dead_arcs: BTreeSet<DeadArc>,
    /// BFS depth at which each node was first reached.
    pub depth: BTreeMap<CanonicalKey, u32>,
}

type Expansion = Vec<(FlopMove, Result<(CanonicalKey, Configuration)>)>;

fn expand(c: &Configuration, opts: &ExploreOptions) -> Expansion {
    c.eligible_flops(opts.simultaneous)
        .into_iter()
        .map(|mv| {
            let out = c.apply_flop(&mv).map(|next| (canonical_key(&next, opts.mode), next));
            (mv, out)
        })
        .collect()
}

/// Explores every configuration reachable from `start`.
///
/// Levels are expanded in parallel when `opts.workers > 1`; the expansions
/// are merged in key order, so the resulting graph (including which
/// representative is stored for an isomorphism class) does not depend on
/// scheduling.
pub fn explore(start: &Configuration, opts: ExploreOptions) -> Result<FlopGraph> {
    start.validate()?;
    if opts.workers == 0 {
        return Err(Error::Parameter("workers must be >= 1".into()));
    }
    let root = canonical_key(start, opts.mode);
    let mut graph = FlopGraph {
        mode: opts.mode,
        root: root.clone(),
        nodes: BTreeMap::from([(root.clone(), start.clone())]),
        arcs: BTreeSet::new(),
        dead_arcs: BTreeSet::new(),
        depth: BTreeMap::from([(root.clone(), 0)]),
    };
    let pool = if opts.workers > 1 {
        Some(
            rayon::ThreadPoolBuilder::new()
                .num_threads(opts.workers)
                .build()
                .map_err(|e| Error::Parameter(format!("cannot start worker pool: {e}")))?,
        )
    } else {
        None
    };

    let mut frontier = vec![root];
    let mut level = 0;
    while !frontier.is_empty() && opts.max_depth.is_none_or(|d| level < d) {
        let configs: Vec<&Configuration> = frontier.iter().map(|k| &graph.nodes[k]).collect();
        let expansions: Vec<Expansion> = match &pool {
            Some(pool) => pool.install(|| configs.par_iter().map(|c| expand(c, &opts)).collect()),
            None => configs.iter().map(|c| expand(c, &opts)).collect(),
        };
        let mut next = Vec::new();
        for (from, expansion) in frontier.iter().zip(expansions) {
            for (mv, outcome) in expansion {
                match outcome {
                    Ok((to, config)) => {
                        if !graph.nodes.contains_key(&to) {
                            graph.nodes.insert(to.clone(), config);
                            graph.depth.insert(to.clone(), level + 1);
                            next.push(to.clone());
                        }
                        graph.arcs.insert(FlopArc { from: from.clone(), mv, to });
                    }
                    Err(e) if e.is_unsupported() => {
                        graph.dead_arcs.insert(DeadArc { from: from.clone(), mv, error: e.to_string() });
                    }
                    Err(e) => return Err(e),
                }
            }
        }
        next.sort();
        frontier = next;
        level += 1;
    }
    Ok(graph)
}

impl FlopGraph {
    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn key_of(&self, c: &Configuration) -> CanonicalKey {
        canonical_key(c, self.mode)
    }

    /// Outgoing arcs of `key` in sorted order.
    pub fn arcs_from<'a>(&'a self, key: &'a CanonicalKey) -> impl Iterator<Item = &'a FlopArc> + 'a {
        self.arcs.iter().filter(move |a| &a.from == key)
    }

    /// Fewest flop moves leading from `from` to `to`.
    pub fn shortest_flop_path(&self, from: &CanonicalKey, to: &CanonicalKey) -> Result<Vec<FlopMove>> {
        for key in [from, to] {
            if !self.nodes.contains_key(key) {
                return Err(Error::NotFound(key.to_string()));
            }
        }
        let mut adjacency: BTreeMap<&CanonicalKey, Vec<&FlopArc>> = BTreeMap::new();
        for arc in &self.arcs {
            adjacency.entry(&arc.from).or_default().push(arc);
        }
        let mut parent: BTreeMap<&CanonicalKey, &FlopArc> = BTreeMap::new();
        let mut seen = BTreeSet::from([from]);
        let mut queue = VecDeque::from([from]);
        while let Some(cur) = queue.pop_front() {
            if cur == to {
                let mut path = Vec::new();
                let mut at = cur;
                while at != from {
                    let arc = parent[at];
                    path.push(arc.mv.clone());
                    at = &arc.from;
                }
                path.reverse();
                return Ok(path);
            }
            for arc in adjacency.get(cur).into_iter().flatten() {
                if seen.insert(&arc.to) {
                    parent.insert(&arc.to, arc);
                    queue.push_back(&arc.to);
                }
            }
        }
        Err(Error::NoPath { from: from.to_string(), to: to.to_string() })
    }

    pub fn to_json(&self) -> serde_json::Value {
        #[derive(Serialize)]
        struct ArcWire<'a> {
            centers: Vec<VertexId>,
            from: &'a CanonicalKey,
            to: &'a CanonicalKey,
        }
        #[derive(Serialize)]
        struct DeadWire<'a> {
            centers: Vec<VertexId>,
            error: &'a str,
            from: &'a CanonicalKey,
        }
        #[derive(Serialize)]
        struct GraphWire<'a> {
            arcs: Vec<ArcWire<'a>>,
            dead_arcs: Vec<DeadWire<'a>>,
            nodes: &'a BTreeMap<CanonicalKey, Configuration>,
            root: &'a CanonicalKey,
        }
        let wire = GraphWire {
            arcs: self
                .arcs
                .iter()
                .map(|a| ArcWire { centers: a.mv.centers().collect(), from: &a.from, to: &a.to })
                .collect(),
            dead_arcs: self
                .dead_arcs
                .iter()
                .map(|a| DeadWire { centers: a.mv.centers().collect(), error: &a.error, from: &a.from })
                .collect(),
            nodes: &self.nodes,
            root: &self.root,
        };
        serde_json::to_value(wire).expect("flop graph serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::configuration::initial_configuration;

    #[test]
    fn k1_has_two_nodes() {
        let g = explore(&initial_configuration(1).unwrap(), ExploreOptions::default()).unwrap();
        assert_eq!(g.node_count(), 2);
        assert_eq!(g.arcs.len(), 2);
        assert!(g.dead_arcs.is_empty());
    }

    #[test]
    fn depth_zero_is_just_the_start() {
        let opts = ExploreOptions { max_depth: Some(0), ..Default::default() };
        let g = explore(&initial_configuration(1).unwrap(), opts).unwrap();
        assert_eq!(g.node_count(), 1);
        assert!(g.arcs.is_empty());
    }

    #[test]
    fn zero_workers_rejected() {
        let opts = ExploreOptions { workers: 0, ..Default::default() };
        assert!(matches!(explore(&initial_configuration(1).unwrap(), opts), Err(Error::Parameter(_))));
    }

    #[test]
    fn path_errors() {
        let g = explore(&initial_configuration(1).unwrap(), ExploreOptions::default()).unwrap();
        let missing = CanonicalKey::from("nope".to_string());
        assert!(matches!(g.shortest_flop_path(&g.root, &missing), Err(Error::NotFound(_))));
        assert_eq!(g.shortest_flop_path(&g.root, &g.root).unwrap(), vec![]);

        // A graph whose arcs were dropped has no route between its nodes.
        let mut cut = g.clone();
        cut.arcs.clear();
        let other = g.nodes.keys().find(|&k| k != &g.root).unwrap();
        assert!(matches!(cut.shortest_flop_path(&g.root, other), Err(Error::NoPath { .. })));
    }
}
