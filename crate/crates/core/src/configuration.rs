//! Labeled intersection graphs of the central fiber of `Hilb²(S) → (ℂ²/Γ)^(2)`
//! for `Γ` of type `A_k`, and the Mukai-flop rewriting rules acting on them.
//!
//! Vertices are the components `P(i,j)` (`1 ≤ i ≤ j ≤ k`) and `Q(i)`. Two
//! components meeting in a curve are joined by a solid edge, two meeting in a
//! point by a dotted edge. A solid edge may carry, at either endpoint, a flag
//! recording that the curve is the exceptional curve of that endpoint's
//! one-point blow-up.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum VertexLabel {
    /// `ℙ¹ × ℙ¹`
    Square,
    /// One-point blow-up of `ℙ¹ × ℙ¹`
    Ellipse,
    /// Hirzebruch surface `F₁`
    PlusBox,
    /// `ℙ²`
    Circle,
    /// Hirzebruch surface `F₄`, only ever carried by `Q` vertices.
    Ruled4,
}

impl VertexLabel {
    pub const ALL: [VertexLabel; 5] =
        [VertexLabel::Square, VertexLabel::Ellipse, VertexLabel::PlusBox, VertexLabel::Circle, VertexLabel::Ruled4];

    pub fn as_str(self) -> &'static str {
        match self {
            VertexLabel::Square => "square",
            VertexLabel::Ellipse => "ellipse",
            VertexLabel::PlusBox => "plusbox",
            VertexLabel::Circle => "circle",
            VertexLabel::Ruled4 => "ruled4",
        }
    }
}

impl fmt::Display for VertexLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for VertexLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        VertexLabel::ALL
            .into_iter()
            .find(|l| l.as_str() == s)
            .ok_or_else(|| Error::Parse(format!("unknown vertex label {s:?}")))
    }
}

/// A component of the central fiber. Ordering puts every `P` before every `Q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum VertexId {
    P(u32, u32),
    Q(u32),
}

impl VertexId {
    pub fn is_q(self) -> bool {
        matches!(self, VertexId::Q(_))
    }

    /// Drawing position: `P(i,j)` sits at `(i, j)`, `Q(i)` just below the
    /// diagonal at `(i + 0.5, i - 0.5)`.
    pub fn position(self) -> (f64, f64) {
        match self {
            VertexId::P(i, j) => (i as f64, j as f64),
            VertexId::Q(i) => (i as f64 + 0.5, i as f64 - 0.5),
        }
    }

    fn valid_for(self, k: u32) -> bool {
        match self {
            VertexId::P(i, j) => 1 <= i && i <= j && j <= k,
            VertexId::Q(i) => 1 <= i && i <= k,
        }
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VertexId::P(i, j) => write!(f, "P:{i}:{j}"),
            VertexId::Q(i) => write!(f, "Q:{i}"),
        }
    }
}

impl FromStr for VertexId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("malformed vertex id {s:?} (expected P:i:j or Q:i)"));
        let parts: Vec<&str> = s.split(':').collect();
        let num = |p: &str| p.parse::<u32>().map_err(|_| bad());
        match parts.as_slice() {
            ["P", i, j] => Ok(VertexId::P(num(i)?, num(j)?)),
            ["Q", i] => Ok(VertexId::Q(num(i)?)),
            _ => Err(bad()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum EdgeKind {
    /// The components meet in a `ℙ¹`.
    Solid,
    /// The components meet in a point.
    Dotted,
}

impl EdgeKind {
    pub fn as_str(self) -> &'static str {
        match self {
            EdgeKind::Solid => "solid",
            EdgeKind::Dotted => "dotted",
        }
    }

    fn toggled(self) -> EdgeKind {
        match self {
            EdgeKind::Solid => EdgeKind::Dotted,
            EdgeKind::Dotted => EdgeKind::Solid,
        }
    }
}

impl FromStr for EdgeKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "solid" => Ok(EdgeKind::Solid),
            "dotted" => Ok(EdgeKind::Dotted),
            _ => Err(Error::Parse(format!("unknown edge kind {s:?}"))),
        }
    }
}

/// Kind and exceptional flags of one edge; flags are indexed like the
/// endpoints of the normalized pair `(a, b)` with `a < b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
struct EdgeState {
    kind: EdgeKind,
    exceptional: [bool; 2],
}

impl EdgeState {
    fn plain(kind: EdgeKind) -> Self {
        EdgeState { kind, exceptional: [false; 2] }
    }
}

/// Public view of an edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    pub a: VertexId,
    pub b: VertexId,
    pub kind: EdgeKind,
    pub exceptional_a: bool,
    pub exceptional_b: bool,
}

impl Edge {
    pub fn exceptional_at(&self, v: VertexId) -> bool {
        if v == self.a {
            self.exceptional_a
        } else if v == self.b {
            self.exceptional_b
        } else {
            false
        }
    }

    pub fn other(&self, v: VertexId) -> VertexId {
        if v == self.a {
            self.b
        } else {
            self.a
        }
    }
}

fn ordered(a: VertexId, b: VertexId) -> (VertexId, VertexId) {
    if a < b {
        (a, b)
    } else {
        (b, a)
    }
}

/// Which edges the default initial configuration carries besides the grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InitialAdjacency {
    /// Grid edges and the `Q(i)` incidences only.
    GridOnly,
    /// Grid edges, the `Q(i)` incidences, and the point intersections
    /// `P(p,q)–P(p+1,q+1)` and `P(p,q+1)–P(p+1,q)` at `{x_p, x_q}`, `p < q`.
    LocalModel,
}

/// Labeled intersection graph of the central-fiber components.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Configuration {
    k: u32,
    labels: BTreeMap<VertexId, VertexLabel>,
    edges: BTreeMap<(VertexId, VertexId), EdgeState>,
}

/// A set of pairwise non-adjacent `ℙ²` components flopped together.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FlopMove {
    centers: BTreeSet<VertexId>,
}

impl FlopMove {
    pub fn new(centers: impl IntoIterator<Item = VertexId>) -> Result<Self> {
        let centers: BTreeSet<VertexId> = centers.into_iter().collect();
        if centers.is_empty() {
            return Err(Error::IllegalMove("a flop move needs at least one center".into()));
        }
        Ok(FlopMove { centers })
    }

    pub fn single(center: VertexId) -> Self {
        FlopMove { centers: BTreeSet::from([center]) }
    }

    pub fn centers(&self) -> impl ExactSizeIterator<Item = VertexId> + '_ {
        self.centers.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.centers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.centers.is_empty()
    }

    pub fn is_simultaneous(&self) -> bool {
        self.centers.len() > 1
    }
}

impl fmt::Display for FlopMove {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, c) in self.centers.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str("]")
    }
}

/// Central-fiber configuration of `Hilb²` of the minimal resolution of an
/// `A_k` singularity: `P(i,i)` are `ℙ²`, `P(i,i+1)` one-point blow-ups of
/// `ℙ¹ × ℙ¹`, the remaining `P(i,j)` are `ℙ¹ × ℙ¹`, and `Q(i)` are `F₄`.
pub fn initial_configuration(k: u32) -> Result<Configuration> {
    initial_configuration_with(k, InitialAdjacency::LocalModel)
}

pub fn initial_configuration_with(k: u32, adjacency: InitialAdjacency) -> Result<Configuration> {
    if k < 1 {
        return Err(Error::Parameter("k must be >= 1".into()));
    }
    let mut labels = BTreeMap::new();
    for i in 1..=k {
        for j in i..=k {
            let label = match j - i {
                0 => VertexLabel::Circle,
                1 => VertexLabel::Ellipse,
                _ => VertexLabel::Square,
            };
            labels.insert(VertexId::P(i, j), label);
        }
        labels.insert(VertexId::Q(i), VertexLabel::Ruled4);
    }
    let mut c = Configuration { k, labels, edges: BTreeMap::new() };
    let p = VertexId::P;
    for i in 1..=k {
        for j in i..=k {
            // C_i × {x_j} and {x_i} × C_j
            if j < k {
                c.set_edge(p(i, j), p(i, j + 1), EdgeState::plain(EdgeKind::Solid));
            }
            if i < j {
                c.set_edge(p(i, j), p(i + 1, j), EdgeState::plain(EdgeKind::Solid));
            }
        }
    }
    for i in 1..=k {
        let q = VertexId::Q(i);
        c.set_edge(q, p(i, i), EdgeState::plain(EdgeKind::Solid));
        if i > 1 {
            c.set_edge(q, p(i - 1, i), EdgeState::plain(EdgeKind::Dotted));
        }
        if i < k {
            c.set_edge(q, p(i, i + 1), EdgeState::plain(EdgeKind::Dotted));
        }
    }
    if adjacency == InitialAdjacency::LocalModel {
        // Near {x_p, x_q} (p < q, off the diagonal) the four components
        // P(p..p+1, q..q+1) look like coordinate planes in {xy = 0} × {zw = 0}:
        // opposite corners meet in a single point.
        for pp in 1..k {
            for qq in pp + 1..k {
                c.set_edge(p(pp, qq), p(pp + 1, qq + 1), EdgeState::plain(EdgeKind::Dotted));
                c.set_edge(p(pp, qq + 1), p(pp + 1, qq), EdgeState::plain(EdgeKind::Dotted));
            }
        }
    }
    Ok(c)
}

impl Configuration {
    /// Builds and validates a configuration from explicit parts.
    pub fn from_parts(
        k: u32,
        labels: impl IntoIterator<Item = (VertexId, VertexLabel)>,
        edges: impl IntoIterator<Item = Edge>,
    ) -> Result<Self> {
        let mut c = Configuration { k, labels: BTreeMap::new(), edges: BTreeMap::new() };
        for (v, l) in labels {
            if c.labels.insert(v, l).is_some() {
                return Err(Error::InvalidConfiguration(format!("duplicate vertex {v}")));
            }
        }
        for e in edges {
            if e.a == e.b {
                return Err(Error::InvalidConfiguration(format!("self-loop at {}", e.a)));
            }
            let (a, b) = ordered(e.a, e.b);
            let state = EdgeState { kind: e.kind, exceptional: [e.exceptional_at(a), e.exceptional_at(b)] };
            if c.edges.insert((a, b), state).is_some() {
                return Err(Error::InvalidConfiguration(format!("duplicate edge {a}–{b}")));
            }
        }
        c.validate()?;
        Ok(c)
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn label(&self, v: VertexId) -> Option<VertexLabel> {
        self.labels.get(&v).copied()
    }

    pub fn vertices(&self) -> impl Iterator<Item = (VertexId, VertexLabel)> + '_ {
        self.labels.iter().map(|(&v, &l)| (v, l))
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.edges.iter().map(|(&(a, b), s)| Edge {
            a,
            b,
            kind: s.kind,
            exceptional_a: s.exceptional[0],
            exceptional_b: s.exceptional[1],
        })
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edge(&self, a: VertexId, b: VertexId) -> Option<Edge> {
        let (x, y) = ordered(a, b);
        self.edges.get(&(x, y)).map(|s| Edge {
            a: x,
            b: y,
            kind: s.kind,
            exceptional_a: s.exceptional[0],
            exceptional_b: s.exceptional[1],
        })
    }

    pub fn adjacent(&self, a: VertexId, b: VertexId) -> bool {
        self.edges.contains_key(&ordered(a, b))
    }

    /// Neighbors of `v` with the kind of the joining edge and the
    /// exceptional flag at the neighbor's end.
    pub fn neighbors(&self, v: VertexId) -> Vec<(VertexId, EdgeKind, bool)> {
        self.edges
            .iter()
            .filter_map(|(&(a, b), s)| {
                if a == v {
                    Some((b, s.kind, s.exceptional[1]))
                } else if b == v {
                    Some((a, s.kind, s.exceptional[0]))
                } else {
                    None
                }
            })
            .collect()
    }

    pub fn circles(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.labels.iter().filter(|(_, &l)| l == VertexLabel::Circle).map(|(&v, _)| v)
    }

    /// Some neighbor whose edge carries an exceptional flag at `v`.
    fn flagged_edge_at(&self, v: VertexId) -> Option<VertexId> {
        self.edges.iter().find_map(|(&(a, b), s)| match () {
            _ if a == v && s.exceptional[0] => Some(b),
            _ if b == v && s.exceptional[1] => Some(a),
            _ => None,
        })
    }

    fn set_edge(&mut self, a: VertexId, b: VertexId, state: EdgeState) {
        let (x, y) = ordered(a, b);
        let state = if x == a {
            state
        } else {
            EdgeState { kind: state.kind, exceptional: [state.exceptional[1], state.exceptional[0]] }
        };
        self.edges.insert((x, y), state);
    }

    /// Checks every structural invariant of a configuration.
    pub fn validate(&self) -> Result<()> {
        let invalid = |msg: String| Err(Error::InvalidConfiguration(msg));
        if self.k < 1 {
            return invalid("k must be >= 1".into());
        }
        let expected = (self.k * (self.k + 1) / 2 + self.k) as usize;
        if self.labels.len() != expected {
            return invalid(format!("k={} needs exactly {expected} vertices, found {}", self.k, self.labels.len()));
        }
        for (&v, &l) in &self.labels {
            if !v.valid_for(self.k) {
                return invalid(format!("vertex {v} does not exist for k={}", self.k));
            }
            if v.is_q() != (l == VertexLabel::Ruled4) {
                return invalid(format!("vertex {v} cannot carry label {l}"));
            }
        }
        for (&(a, b), s) in &self.edges {
            if a == b {
                return invalid(format!("self-loop at {a}"));
            }
            if !self.labels.contains_key(&a) || !self.labels.contains_key(&b) {
                return invalid(format!("edge {a}–{b} has an unknown endpoint"));
            }
            for (v, flag) in [(a, s.exceptional[0]), (b, s.exceptional[1])] {
                if !flag {
                    continue;
                }
                if s.kind == EdgeKind::Dotted {
                    return invalid(format!("dotted edge {a}–{b} carries an exceptional flag"));
                }
                if matches!(self.labels[&v], VertexLabel::Ruled4 | VertexLabel::Circle) {
                    return invalid(format!(
                        "edge {a}–{b} is flagged exceptional at {v}, which is labeled {}",
                        self.labels[&v]
                    ));
                }
            }
        }
        Ok(())
    }

    /// Flop moves available in this configuration: one per `ℙ²` component,
    /// or, with `simultaneous`, every nonempty set of pairwise non-adjacent
    /// `ℙ²` components. Moves are returned in lexicographic order of their
    /// sorted centers.
    pub fn eligible_flops(&self, simultaneous: bool) -> Vec<FlopMove> {
        let circles: Vec<VertexId> = self.circles().collect();
        if !simultaneous {
            return circles.into_iter().map(FlopMove::single).collect();
        }
        let mut moves = Vec::new();
        let mut stack = Vec::new();
        self.independent_sets(&circles, 0, &mut stack, &mut moves);
        moves.sort();
        moves
    }

    fn independent_sets(&self, pool: &[VertexId], from: usize, chosen: &mut Vec<VertexId>, out: &mut Vec<FlopMove>) {
        for idx in from..pool.len() {
            let v = pool[idx];
            if chosen.iter().any(|&c| self.adjacent(c, v)) {
                continue;
            }
            chosen.push(v);
            out.push(FlopMove { centers: chosen.iter().copied().collect() });
            self.independent_sets(pool, idx + 1, chosen, out);
            chosen.pop();
        }
    }

    /// Checks that `mv` is legal here: known centers, all `ℙ²`, pairwise
    /// non-adjacent.
    pub fn check_move(&self, mv: &FlopMove) -> Result<()> {
        if mv.centers.is_empty() {
            return Err(Error::IllegalMove("a flop move needs at least one center".into()));
        }
        for &c in &mv.centers {
            match self.labels.get(&c) {
                None => return Err(Error::IllegalMove(format!("{c} is not a vertex for k={}", self.k))),
                Some(VertexLabel::Circle) => {}
                Some(l) => return Err(Error::IllegalMove(format!("{c} is labeled {l}, only circles can be flopped"))),
            }
        }
        let centers: Vec<_> = mv.centers.iter().copied().collect();
        for (i, &a) in centers.iter().enumerate() {
            for &b in &centers[i + 1..] {
                if self.adjacent(a, b) {
                    return Err(Error::IllegalMove(format!("{a} and {b} intersect and cannot be flopped together")));
                }
            }
        }
        Ok(())
    }

    /// Mukai flop along every center of `mv`.
    ///
    /// Centers are pairwise non-adjacent, so their incident edges are
    /// disjoint and the move is carried out one center at a time. A neighbor
    /// shared by several centers can pass through a state the rules do not
    /// cover in one order but not in another; the centers are tried in sorted
    /// order first and then in the remaining orders, and the move fails only
    /// if every order does.
    pub fn apply_flop(&self, mv: &FlopMove) -> Result<Configuration> {
        self.check_move(mv)?;
        let mut order: Vec<VertexId> = mv.centers.iter().copied().collect();
        let mut first_err = None;
        loop {
            match self.flop_in_order(&order) {
                Ok(next) => return Ok(next),
                Err(e) if e.is_unsupported() => {
                    first_err.get_or_insert(e);
                }
                Err(e) => return Err(e),
            }
            if !crate::wreath::next_permutation(&mut order) {
                break;
            }
        }
        Err(first_err.expect("at least one order was tried"))
    }

    /// Flops the centers one after another in the given order.
    pub fn flop_in_order(&self, centers: &[VertexId]) -> Result<Configuration> {
        let mut next = self.clone();
        for &center in centers {
            next.check_move(&FlopMove::single(center))?;
            next = next.flop_at(center)?;
        }
        Ok(next)
    }

    fn flop_at(&self, center: VertexId) -> Result<Configuration> {
        let nbrs = self.neighbors(center);
        let unsupported = |vertex: VertexId, reason: String| Error::UnsupportedState { vertex, center, reason };

        // Relabels are decided up front so an unsupported neighbor aborts
        // before anything is rewritten.
        let mut relabels = Vec::new();
        for &(u, kind, exc) in &nbrs {
            let label = self.labels[&u];
            let next = match (label, kind) {
                (VertexLabel::Ruled4, _) => continue,
                (VertexLabel::Ellipse, EdgeKind::Solid) if exc => (VertexLabel::Square, None),
                (VertexLabel::Ellipse, EdgeKind::Solid) => (VertexLabel::PlusBox, None),
                (VertexLabel::PlusBox, EdgeKind::Solid) => {
                    if let Some(other) = self.flagged_edge_at(u) {
                        return Err(unsupported(
                            u,
                            format!("{u} would become a circle while its edge to {other} is marked exceptional"),
                        ));
                    }
                    (VertexLabel::Circle, None)
                }
                (VertexLabel::Square, EdgeKind::Dotted) => (VertexLabel::Ellipse, Some(true)),
                (VertexLabel::PlusBox, EdgeKind::Dotted) => (VertexLabel::Ellipse, Some(false)),
                (VertexLabel::Circle, EdgeKind::Dotted) => (VertexLabel::PlusBox, None),
                (VertexLabel::Square, EdgeKind::Solid) => (VertexLabel::Square, None),
                (VertexLabel::Circle, EdgeKind::Solid) => (VertexLabel::Circle, None),
                (VertexLabel::Ellipse, EdgeKind::Dotted) => {
                    return Err(unsupported(u, "an ellipse meeting the center in a point has no target label".into()))
                }
            };
            relabels.push((u, next));
        }

        // Pair rules, read off the pre-flop kinds.
        let mut insert = Vec::new();
        let mut remove = Vec::new();
        for (i, &(u1, k1, _)) in nbrs.iter().enumerate() {
            for &(u2, k2, _) in &nbrs[i + 1..] {
                let between = self.edges.get(&ordered(u1, u2)).map(|s| s.kind);
                match (k1, k2, between) {
                    (EdgeKind::Dotted, EdgeKind::Dotted, None) => insert.push((u1, u2)),
                    (EdgeKind::Dotted, EdgeKind::Dotted, Some(existing)) => {
                        return Err(unsupported(
                            u1,
                            format!(
                                "{u1} and {u2} both meet the center in a point but already share a {} edge",
                                existing.as_str()
                            ),
                        ))
                    }
                    (EdgeKind::Solid, EdgeKind::Solid, Some(EdgeKind::Dotted)) => remove.push((u1, u2)),
                    _ => {}
                }
            }
        }

        let mut next = self.clone();
        for (a, b) in remove {
            next.edges.remove(&ordered(a, b));
        }
        for (a, b) in insert {
            next.set_edge(a, b, EdgeState::plain(EdgeKind::Dotted));
        }
        for &(u, kind, _) in &nbrs {
            next.set_edge(center, u, EdgeState::plain(kind.toggled()));
        }
        for (u, (label, flag)) in relabels {
            next.labels.insert(u, label);
            if let Some(flag) = flag {
                let (a, b) = ordered(center, u);
                let state = next.edges.get_mut(&(a, b)).expect("toggled edge exists");
                state.exceptional[if a == u { 0 } else { 1 }] = flag;
            }
        }
        Ok(next)
    }
}
