//! Oriented trees, dimension vectors and reflection functors.

use crate::cycle::laufer_artin_cycle;
use crate::tree::{catalog_tree, Divisor, Family, TreeError, TreeJson, WeightedTree};
use serde::{Deserialize, Serialize};
use std::collections::{HashSet, VecDeque};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuiverError {
    #[error("vertex {0} is not reflectable: it is neither a source nor a sink")]
    NotReflectable(usize),
    #[error("reflection leaves cone: dimension at vertex {vertex} would become {value}")]
    LeavesCone { vertex: usize, value: i64 },
    #[error("bad arrows: {0}")]
    BadArrows(String),
    #[error("dimension vector has {got} entries, quiver has {expected} vertices")]
    LengthMismatch { expected: usize, got: usize },
    #[error("dimension vectors must be nonnegative")]
    NegativeDim,
    #[error("dimension vector is not a root: Tits form is {0}, expected 1")]
    NotARoot(i64),
    #[error("vertex {0} out of range")]
    BadVertex(usize),
    #[error("step {index} cannot be replayed: {reason}")]
    BadStep { index: usize, reason: String },
    #[error(transparent)]
    Tree(#[from] TreeError),
}

/// Nonnegative integer per vertex.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<i64>")]
pub struct DimensionVector(Vec<i64>);

impl DimensionVector {
    pub fn new(dims: Vec<i64>) -> Result<Self, QuiverError> {
        if dims.iter().any(|&d| d < 0) {
            return Err(QuiverError::NegativeDim);
        }
        Ok(DimensionVector(dims))
    }

    /// Absolute values of a divisor's coefficients.
    pub fn from_divisor(y: &Divisor) -> Self {
        DimensionVector(y.coeffs().iter().map(|c| c.abs()).collect())
    }

    pub fn as_slice(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, v: usize) -> i64 {
        self.0[v]
    }

    pub fn sum(&self) -> i64 {
        self.0.iter().sum()
    }
}

impl TryFrom<Vec<i64>> for DimensionVector {
    type Error = QuiverError;
    fn try_from(v: Vec<i64>) -> Result<Self, Self::Error> {
        DimensionVector::new(v)
    }
}

impl From<DimensionVector> for Vec<i64> {
    fn from(d: DimensionVector) -> Self {
        d.0
    }
}

impl fmt::Display for DimensionVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(i64::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Every coordinate positive.
pub fn is_sincere(a: &DimensionVector) -> bool {
    a.0.iter().all(|&d| d > 0)
}

/// A tree with one arrow per edge. `arrows[e]` orients the e-th canonical edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quiver {
    tree: WeightedTree,
    arrows: Vec<(usize, usize)>,
}

impl Quiver {
    /// Arrows in any order; each tree edge must appear exactly once.
    pub fn new(tree: WeightedTree, arrows: &[(usize, usize)]) -> Result<Self, QuiverError> {
        let mut slots: Vec<Option<(usize, usize)>> = vec![None; tree.edges().len()];
        for &(t, h) in arrows {
            let e = tree
                .edge_index(t, h)
                .ok_or_else(|| QuiverError::BadArrows(format!("{t}->{h} is not an edge")))?;
            if slots[e].replace((t, h)).is_some() {
                return Err(QuiverError::BadArrows(format!("edge {t}-{h} oriented twice")));
            }
        }
        let arrows = slots
            .into_iter()
            .zip(tree.edges())
            .map(|(s, &(a, b))| s.ok_or_else(|| QuiverError::BadArrows(format!("edge {a}-{b} has no arrow"))))
            .collect::<Result<_, _>>()?;
        Ok(Quiver { tree, arrows })
    }

    /// Edge e reversed from (min -> max) when bit e of `bits` is set.
    pub fn from_bits(tree: WeightedTree, bits: u64) -> Self {
        let arrows = tree
            .edges()
            .iter()
            .enumerate()
            .map(|(e, &(a, b))| if bits >> e & 1 == 1 { (b, a) } else { (a, b) })
            .collect();
        Quiver { tree, arrows }
    }

    /// All 2^edges orientations in bit order.
    pub fn orientations(tree: &WeightedTree) -> impl Iterator<Item = Quiver> + '_ {
        let e = tree.edges().len();
        assert!(e < 64, "too many edges to enumerate orientations");
        (0..1u64 << e).map(move |bits| Quiver::from_bits(tree.clone(), bits))
    }

    pub fn tree(&self) -> &WeightedTree {
        &self.tree
    }

    pub fn len(&self) -> usize {
        self.tree.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tree.is_empty()
    }

    /// (tail, head) per canonical edge.
    pub fn arrows(&self) -> &[(usize, usize)] {
        &self.arrows
    }

    fn incident(&self, v: usize) -> impl Iterator<Item = (usize, (usize, usize))> + '_ {
        self.tree
            .neighbors(v)
            .iter()
            .map(move |&u| {
                let e = self.tree.edge_index(u, v).unwrap();
                (e, self.arrows[e])
            })
    }

    pub fn is_source(&self, v: usize) -> bool {
        self.incident(v).all(|(_, (t, _))| t == v)
    }

    pub fn is_sink(&self, v: usize) -> bool {
        self.incident(v).all(|(_, (_, h))| h == v)
    }

    fn reverse(&mut self, e: usize) {
        let (t, h) = self.arrows[e];
        self.arrows[e] = (h, t);
    }

    fn reverse_at(&mut self, v: usize) {
        for u in self.tree.neighbors(v).to_vec() {
            let e = self.tree.edge_index(u, v).unwrap();
            self.reverse(e);
        }
    }

    /// Induced quiver on a connected vertex set, ids in the order of `keep`.
    pub fn induced(&self, keep: &[usize]) -> Result<Quiver, QuiverError> {
        let sub = self.tree.induced(keep)?;
        let pos = |v: usize| keep.iter().position(|&k| k == v);
        let arrows: Vec<(usize, usize)> = self
            .arrows
            .iter()
            .filter_map(|&(t, h)| Some((pos(t)?, pos(h)?)))
            .collect();
        Quiver::new(sub, &arrows)
    }

    fn check_dims(&self, a: &DimensionVector) -> Result<(), QuiverError> {
        if a.len() != self.len() {
            return Err(QuiverError::LengthMismatch {
                expected: self.len(),
                got: a.len(),
            });
        }
        Ok(())
    }
}

/// Tree JSON plus `"arrows":[[tail,head],...]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuiverJson {
    #[serde(flatten)]
    pub tree: TreeJson,
    pub arrows: Vec<[usize; 2]>,
}

impl From<&Quiver> for QuiverJson {
    fn from(q: &Quiver) -> Self {
        QuiverJson {
            tree: TreeJson::from(q.tree()),
            arrows: q.arrows.iter().map(|&(t, h)| [t, h]).collect(),
        }
    }
}

impl TryFrom<&QuiverJson> for Quiver {
    type Error = QuiverError;
    fn try_from(j: &QuiverJson) -> Result<Self, Self::Error> {
        let tree = WeightedTree::try_from(&j.tree)?;
        let arrows: Vec<(usize, usize)> = j.arrows.iter().map(|a| (a[0], a[1])).collect();
        Quiver::new(tree, &arrows)
    }
}

/// sum a_v^2 - sum over arrows a_t a_h.
pub fn tits_form(q: &Quiver, a: &DimensionVector) -> i64 {
    let sq: i64 = a.0.iter().map(|d| d * d).sum();
    let cross: i64 = q.arrows.iter().map(|&(t, h)| a.0[t] * a.0[h]).sum();
    sq - cross
}

/// Number of coordinates of the representation space: sum of a_t a_h.
pub fn rep_dimension(q: &Quiver, a: &DimensionVector) -> i64 {
    q.arrows.iter().map(|&(t, h)| a.0[t] * a.0[h]).sum()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ReflectKind {
    Source,
    Sink,
}

/// One replayable move.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "lowercase")]
pub enum Step {
    /// Reflection functor at a source or sink.
    Reflect { vertex: usize, kind: ReflectKind },
    /// Reversal of an arrow with a zero-dimensional endpoint; the
    /// representation space does not change.
    Reverse { tail: usize, head: usize },
}

impl fmt::Display for Step {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Step::Reflect { vertex, kind } => {
                let k = match kind {
                    ReflectKind::Source => "source",
                    ReflectKind::Sink => "sink",
                };
                write!(f, "reflect {vertex} ({k})")
            }
            Step::Reverse { tail, head } => write!(f, "reverse {tail}->{head}"),
        }
    }
}

/// Reflection at a source or sink: a*_v = sum of neighbor dims - a_v.
pub fn reflect(
    q: &Quiver,
    a: &DimensionVector,
    v: usize,
) -> Result<(Quiver, DimensionVector), QuiverError> {
    q.check_dims(a)?;
    if v >= q.len() {
        return Err(QuiverError::BadVertex(v));
    }
    if !q.is_source(v) && !q.is_sink(v) {
        return Err(QuiverError::NotReflectable(v));
    }
    let value: i64 = q.tree.neighbors(v).iter().map(|&u| a.0[u]).sum::<i64>() - a.0[v];
    if value < 0 {
        return Err(QuiverError::LeavesCone { vertex: v, value });
    }
    let mut q2 = q.clone();
    q2.reverse_at(v);
    let mut a2 = a.clone();
    a2.0[v] = value;
    Ok((q2, a2))
}

/// Applies steps in order, checking each one.
pub fn replay(
    q: &Quiver,
    a: &DimensionVector,
    steps: &[Step],
) -> Result<(Quiver, DimensionVector), QuiverError> {
    let mut q = q.clone();
    let mut a = a.clone();
    for (index, step) in steps.iter().enumerate() {
        let bad = |reason: String| QuiverError::BadStep { index, reason };
        match *step {
            Step::Reflect { vertex, kind } => {
                let ok = match kind {
                    ReflectKind::Source => q.is_source(vertex),
                    ReflectKind::Sink => q.is_sink(vertex),
                };
                if !ok {
                    return Err(bad(format!("vertex {vertex} is not a {kind:?}")));
                }
                (q, a) = reflect(&q, &a, vertex).map_err(|e| bad(e.to_string()))?;
            }
            Step::Reverse { tail, head } => {
                let e = q
                    .tree
                    .edge_index(tail, head)
                    .ok_or_else(|| bad(format!("{tail}-{head} is not an edge")))?;
                if q.arrows[e] != (tail, head) {
                    return Err(bad(format!("no arrow {tail}->{head}")));
                }
                if a.0[tail] != 0 && a.0[head] != 0 {
                    return Err(bad(format!("arrow {tail}->{head} has no zero-dimensional end")));
                }
                q.reverse(e);
            }
        }
    }
    Ok((q, a))
}

/// Simply-laced Dynkin types.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum DynkinType {
    A(usize),
    D(usize),
    E(usize),
}

impl fmt::Display for DynkinType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DynkinType::A(n) => write!(f, "A{n}"),
            DynkinType::D(n) => write!(f, "D{n}"),
            DynkinType::E(n) => write!(f, "E{n}"),
        }
    }
}

/// Shape of the subtree induced on `verts`, if it is a Dynkin diagram.
pub fn dynkin_type_of(t: &WeightedTree, verts: &[usize]) -> Option<DynkinType> {
    let n = verts.len();
    if n == 0 || !t.is_connected_subset(verts) {
        return None;
    }
    let inside = |u: usize| verts.contains(&u);
    let deg = |v: usize| t.neighbors(v).iter().filter(|&&u| inside(u)).count();
    let branches: Vec<usize> = verts.iter().copied().filter(|&v| deg(v) >= 3).collect();
    match branches.as_slice() {
        [] => Some(DynkinType::A(n)),
        [b] if deg(*b) == 3 => {
            let mut arms: Vec<usize> = t
                .neighbors(*b)
                .iter()
                .filter(|&&u| inside(u))
                .map(|&start| {
                    let (mut prev, mut cur, mut len) = (*b, start, 1);
                    loop {
                        let next = t
                            .neighbors(cur)
                            .iter()
                            .copied()
                            .find(|&u| u != prev && inside(u));
                        match next {
                            Some(nx) => {
                                (prev, cur) = (cur, nx);
                                len += 1;
                            }
                            None => return len,
                        }
                    }
                })
                .collect();
            arms.sort_unstable();
            match arms.as_slice() {
                [1, 1, _] => Some(DynkinType::D(n)),
                [1, 2, 2..=4] => Some(DynkinType::E(n)),
                _ => None,
            }
        }
        _ => None,
    }
}

/// A connected component of the remaining support after cutting 1-1 arrows.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CorePiece {
    pub vertices: Vec<usize>,
    pub dims: Vec<i64>,
    pub dynkin: Option<DynkinType>,
}

/// Result of reduce_to_core.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReductionTrail {
    pub steps: Vec<Step>,
    #[serde(skip)]
    pub final_quiver: Quiver,
    pub final_dims: DimensionVector,
    /// Number of one-dimensional coordinates split off.
    pub split_off_count: usize,
    /// Edge index of each split-off coordinate.
    pub split_off_edges: Vec<usize>,
    pub core: Vec<CorePiece>,
    /// Set when the reduction stopped before every piece was Dynkin.
    pub diagnostic: Option<String>,
}

impl ReductionTrail {
    pub fn is_complete(&self) -> bool {
        self.diagnostic.is_none()
    }

    pub fn reflection_count(&self) -> usize {
        self.steps
            .iter()
            .filter(|s| matches!(s, Step::Reflect { .. }))
            .count()
    }

    /// Core types sorted, with the sorted dims of each piece.
    pub fn core_signature(&self) -> Vec<(Option<DynkinType>, Vec<i64>)> {
        let mut sig: Vec<_> = self
            .core
            .iter()
            .map(|p| {
                let mut d = p.dims.clone();
                d.sort_unstable();
                (p.dynkin, d)
            })
            .collect();
        sig.sort();
        sig
    }
}

/// Default cap on BFS states when searching for a reorientation.
pub const REORIENT_STATE_LIMIT: usize = 500_000;

/// Mutable walk that records every step.
struct Walk {
    q: Quiver,
    a: DimensionVector,
    steps: Vec<Step>,
}

impl Walk {
    /// Direction forced by the arrows to positive-dimensional neighbors.
    fn legal_kind(q: &Quiver, a: &[i64], v: usize) -> Option<ReflectKind> {
        let mut out = false;
        let mut inn = false;
        for (_, (t, h)) in q.incident(v) {
            let other = if t == v { h } else { t };
            if a[other] == 0 {
                continue;
            }
            if t == v {
                out = true;
            } else {
                inn = true;
            }
        }
        match (out, inn) {
            (true, true) => None,
            (false, true) => Some(ReflectKind::Sink),
            _ => Some(ReflectKind::Source),
        }
    }

    /// Free reversals at zero-dimensional neighbors, then the reflection.
    fn reflect(&mut self, v: usize) -> Result<(), QuiverError> {
        let kind = Walk::legal_kind(&self.q, &self.a.0, v).ok_or(QuiverError::NotReflectable(v))?;
        let flips: Vec<(usize, (usize, usize))> = self.q.incident(v).collect();
        for (e, (t, h)) in flips {
            let wrong = match kind {
                ReflectKind::Source => h == v,
                ReflectKind::Sink => t == v,
            };
            if wrong {
                debug_assert!(self.a.0[t] == 0 || self.a.0[h] == 0);
                self.steps.push(Step::Reverse { tail: t, head: h });
                self.q.reverse(e);
            }
        }
        let (q, a) = reflect(&self.q, &self.a, v)?;
        self.q = q;
        self.a = a;
        self.steps.push(Step::Reflect { vertex: v, kind });
        Ok(())
    }
}

fn neighbor_sum(q: &Quiver, a: &[i64], v: usize) -> i64 {
    q.tree.neighbors(v).iter().map(|&u| a[u]).sum()
}

/// Dimension vector plus full orientation.
type StateKey = (Vec<i64>, Vec<(usize, usize)>);

/// Shortest sequence of reflections (never raising the total dimension above
/// the start) returning to the same dims with `v` reflectable.
fn reorientation_path(q: &Quiver, a: &DimensionVector, v: usize, limit: usize) -> Option<Vec<usize>> {
    if Walk::legal_kind(q, &a.0, v).is_some() {
        return Some(Vec::new());
    }
    let cap = a.sum();
    let key = |q: &Quiver, d: &[i64]| -> (Vec<i64>, Vec<(usize, usize)>) { (d.to_vec(), q.arrows.clone()) };
    let mut states: Vec<(Quiver, Vec<i64>, usize, usize)> = vec![(q.clone(), a.0.clone(), usize::MAX, usize::MAX)];
    let mut seen: HashSet<StateKey> = HashSet::new();
    seen.insert(key(q, &a.0));
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        let (sq, sd) = (states[i].0.clone(), states[i].1.clone());
        let total: i64 = sd.iter().sum();
        for u in 0..sq.len() {
            if Walk::legal_kind(&sq, &sd, u).is_none() {
                continue;
            }
            let nu = neighbor_sum(&sq, &sd, u) - sd[u];
            if nu < 0 || nu == sd[u] && sd[u] == 0 || total - sd[u] + nu > cap {
                continue;
            }
            let mut nq = sq.clone();
            // Align zero-end arrows, then reverse everything at u.
            let kind = Walk::legal_kind(&sq, &sd, u).unwrap();
            for (e, (t, h)) in sq.incident(u).collect::<Vec<_>>() {
                let wrong = match kind {
                    ReflectKind::Source => h == u,
                    ReflectKind::Sink => t == u,
                };
                if wrong {
                    nq.reverse(e);
                }
            }
            nq.reverse_at(u);
            let mut nd = sd.clone();
            nd[u] = nu;
            let k = key(&nq, &nd);
            if !seen.insert(k) {
                continue;
            }
            let idx = states.len();
            let done = nd == a.0 && Walk::legal_kind(&nq, &nd, v).is_some();
            states.push((nq, nd, i, u));
            if done {
                let mut path = Vec::new();
                let mut j = idx;
                while states[j].2 != usize::MAX {
                    path.push(states[j].3);
                    j = states[j].2;
                }
                path.reverse();
                return Some(path);
            }
            if states.len() >= limit {
                return None;
            }
            queue.push_back(idx);
        }
    }
    None
}

/// Support components after removing 1-1 arrows; only components with at least two vertices.
fn core_pieces(q: &Quiver, a: &[i64]) -> (Vec<CorePiece>, Vec<usize>) {
    let n = q.len();
    let mut cut = Vec::new();
    let mut adj = vec![Vec::new(); n];
    for (e, &(x, y)) in q.tree.edges().iter().enumerate() {
        if a[x] == 0 || a[y] == 0 {
            continue;
        }
        if a[x] == 1 && a[y] == 1 {
            cut.push(e);
        } else {
            adj[x].push(y);
            adj[y].push(x);
        }
    }
    let mut seen = vec![false; n];
    let mut pieces = Vec::new();
    for s in 0..n {
        if seen[s] || a[s] == 0 || adj[s].is_empty() {
            continue;
        }
        let mut comp = vec![s];
        seen[s] = true;
        let mut i = 0;
        while i < comp.len() {
            for &u in &adj[comp[i]] {
                if !seen[u] {
                    seen[u] = true;
                    comp.push(u);
                }
            }
            i += 1;
        }
        comp.sort_unstable();
        pieces.push(CorePiece {
            dynkin: dynkin_type_of(&q.tree, &comp),
            dims: comp.iter().map(|&v| a[v]).collect(),
            vertices: comp,
        });
    }
    (pieces, cut)
}

/// Dim-1 vertex whose only positive neighbor has dim 1.
fn zero_leaf(q: &Quiver, a: &[i64]) -> Option<(usize, usize)> {
    (0..q.len()).find_map(|v| {
        if a[v] != 1 {
            return None;
        }
        let mut pos = q.tree.neighbors(v).iter().copied().filter(|&u| a[u] > 0);
        match (pos.next(), pos.next()) {
            (Some(u), None) if a[u] == 1 => Some((v, q.tree.edge_index(u, v).unwrap())),
            _ => None,
        }
    })
}

/// Detaches all-ones arms and shrinks non-Dynkin parts of the support until
/// every remaining piece is a Dynkin diagram.
pub fn reduce_to_core(q: &Quiver, a: &DimensionVector) -> Result<ReductionTrail, QuiverError> {
    reduce_to_core_seeded(q, a, &[])
}

/// Like [`reduce_to_core`], replaying the given reflection vertices first.
pub fn reduce_to_core_seeded(
    q: &Quiver,
    a: &DimensionVector,
    seed: &[usize],
) -> Result<ReductionTrail, QuiverError> {
    q.check_dims(a)?;
    let t = tits_form(q, a);
    if t != 1 {
        return Err(QuiverError::NotARoot(t));
    }
    let mut walk = Walk {
        q: q.clone(),
        a: a.clone(),
        steps: Vec::new(),
    };
    for (index, &v) in seed.iter().enumerate() {
        if v >= q.len() {
            return Err(QuiverError::BadVertex(v));
        }
        walk.reflect(v).map_err(|e| QuiverError::BadStep {
            index,
            reason: e.to_string(),
        })?;
    }
    let mut split_off_edges = Vec::new();
    let mut diagnostic = None;
    loop {
        if let Some((v, e)) = zero_leaf(&walk.q, &walk.a.0) {
            walk.reflect(v)?;
            split_off_edges.push(e);
            continue;
        }
        let (pieces, _) = core_pieces(&walk.q, &walk.a.0);
        let wild: Vec<usize> = pieces
            .iter()
            .filter(|p| p.dynkin.is_none())
            .flat_map(|p| p.vertices.iter().copied())
            .collect();
        if wild.is_empty() {
            break;
        }
        let mut candidates: Vec<usize> = wild
            .into_iter()
            .filter(|&v| neighbor_sum(&walk.q, &walk.a.0, v) < 2 * walk.a.0[v])
            .collect();
        candidates.sort_unstable();
        let mut progressed = false;
        for v in candidates {
            if let Some(path) = reorientation_path(&walk.q, &walk.a, v, REORIENT_STATE_LIMIT) {
                for u in path {
                    walk.reflect(u)?;
                }
                walk.reflect(v)?;
                progressed = true;
                break;
            }
        }
        if !progressed {
            diagnostic = Some("no legal dimension-decreasing reflection on a non-Dynkin piece".into());
            break;
        }
    }
    let (core, cut) = core_pieces(&walk.q, &walk.a.0);
    split_off_edges.extend(cut);
    Ok(ReductionTrail {
        steps: walk.steps,
        final_quiver: walk.q,
        final_dims: walk.a,
        split_off_count: split_off_edges.len(),
        split_off_edges,
        core,
        diagnostic,
    })
}

/// Reflections that lower the number of representation coordinates until it
/// is at most `target`; each chosen vertex is made legal as in reduce_to_core.
pub fn shrink_representation(
    q: &Quiver,
    a: &DimensionVector,
    target: i64,
) -> Result<(Quiver, DimensionVector, Vec<Step>), QuiverError> {
    q.check_dims(a)?;
    let mut walk = Walk {
        q: q.clone(),
        a: a.clone(),
        steps: Vec::new(),
    };
    while rep_dimension(&walk.q, &walk.a) > target {
        let mut progressed = false;
        for v in 0..walk.q.len() {
            if neighbor_sum(&walk.q, &walk.a.0, v) >= 2 * walk.a.0[v] {
                continue;
            }
            if let Some(path) = reorientation_path(&walk.q, &walk.a, v, REORIENT_STATE_LIMIT) {
                for u in path {
                    walk.reflect(u)?;
                }
                walk.reflect(v)?;
                progressed = true;
                break;
            }
        }
        if !progressed {
            break;
        }
    }
    Ok((walk.q, walk.a, walk.steps))
}

/// The three-center example quiver with its highest root and the reflection
/// sequence that brings it to a D4 core.
pub struct ExampleQuiver {
    pub quiver: Quiver,
    pub dims: DimensionVector,
    pub seed: Vec<usize>,
}

pub fn quasi_example_quiver(weights: &[i64]) -> Result<ExampleQuiver, QuiverError> {
    const ARROWS: [(&str, &str); 17] = [
        ("w1", "v1"),
        ("v1", "v2"),
        ("v3", "v2"),
        ("v4", "v3"),
        ("w2", "v4"),
        ("w2", "v5"),
        ("v5", "v6"),
        ("v7", "v6"),
        ("v8", "v7"),
        ("v6", "v9"),
        ("w3", "v3"),
        ("v10", "v11"),
        ("v11", "v12"),
        ("v12", "v13"),
        ("v13", "v14"),
        ("v14", "w3"),
        ("v12", "v15"),
    ];
    const SEED: [&str; 27] = [
        "v2", "v3", "v1", "v2", "v4", "w1", "v1", "v9", "v6", "v5", "v7", "v9", "v6", "v10",
        "v11", "v12", "v13", "v14", "v15", "v10", "v11", "v12", "v10", "v11", "v15", "v13",
        "v12",
    ];
    let tree = catalog_tree(Family::QuasiExample, weights)?;
    let labels = tree.labels().expect("example tree is labelled").to_vec();
    let id = |s: &str| labels.iter().position(|l| l == s).expect("known label");
    let arrows: Vec<(usize, usize)> = ARROWS.iter().map(|&(t, h)| (id(t), id(h))).collect();
    let z = laufer_artin_cycle(&tree).map_err(|e| QuiverError::BadArrows(e.to_string()))?;
    Ok(ExampleQuiver {
        quiver: Quiver::new(tree, &arrows)?,
        dims: DimensionVector::from_divisor(&z),
        seed: SEED.iter().map(|s| id(s)).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tree::{catalog_tree, Family};

    fn dims(v: &[i64]) -> DimensionVector {
        DimensionVector::new(v.to_vec()).unwrap()
    }

    #[test]
    fn tits_examples() {
        let a1 = Quiver::from_bits(catalog_tree(Family::A, &[1]).unwrap(), 0);
        assert_eq!(tits_form(&a1, &dims(&[1])), 1);
        let a2 = Quiver::from_bits(catalog_tree(Family::A, &[2]).unwrap(), 0);
        assert_eq!(tits_form(&a2, &dims(&[1, 1])), 1);
        let d4 = WeightedTree::new(vec![2; 4], &[(0, 1), (0, 2), (0, 3)]).unwrap();
        let q = Quiver::new(d4, &[(1, 0), (2, 0), (3, 0)]).unwrap();
        assert_eq!(tits_form(&q, &dims(&[2, 1, 1, 1])), 1);
        let (_, b) = reflect(&q, &dims(&[2, 1, 1, 1]), 0).unwrap();
        assert_eq!(b, dims(&[1, 1, 1, 1]));
    }

    #[test]
    fn reflect_errors_and_reversal() {
        let a3 = Quiver::new(catalog_tree(Family::A, &[3]).unwrap(), &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(
            reflect(&a3, &dims(&[1, 1, 1]), 1),
            Err(QuiverError::NotReflectable(1))
        );
        let (q, b) = reflect(&a3, &dims(&[1, 1, 1]), 0).unwrap();
        assert_eq!(b, dims(&[0, 1, 1]));
        assert_eq!(q.arrows()[0], (1, 0));
        assert!(matches!(
            reflect(&a3, &dims(&[2, 1, 1]), 0),
            Err(QuiverError::LeavesCone { vertex: 0, value: -1 })
        ));
    }

    #[test]
    fn dynkin_shapes() {
        let e8 = catalog_tree(Family::E8, &[]).unwrap();
        let all: Vec<usize> = (0..8).collect();
        assert_eq!(dynkin_type_of(&e8, &all), Some(DynkinType::E(8)));
        assert_eq!(dynkin_type_of(&e8, &all[..7]), Some(DynkinType::A(7)));
        let d5 = catalog_tree(Family::D, &[5]).unwrap();
        assert_eq!(dynkin_type_of(&d5, &[0, 1, 2, 3, 4]), Some(DynkinType::D(5)));
    }

    #[test]
    fn path_of_ones_dissolves() {
        let h6 = catalog_tree(Family::Hn, &[6]).unwrap();
        for q in Quiver::orientations(&h6) {
            let trail = reduce_to_core(&q, &dims(&[1; 6])).unwrap();
            assert!(trail.core.is_empty());
            assert_eq!(trail.split_off_count, 5);
            let (fq, fa) = replay(&q, &dims(&[1; 6]), &trail.steps).unwrap();
            assert_eq!((fq, fa), (trail.final_quiver.clone(), trail.final_dims.clone()));
        }
    }

    #[test]
    fn example_seed_reaches_d4() {
        let ex = quasi_example_quiver(&[]).unwrap();
        assert_eq!(rep_dimension(&ex.quiver, &ex.dims), 96);
        let trail = reduce_to_core_seeded(&ex.quiver, &ex.dims, &ex.seed).unwrap();
        assert!(trail.is_complete());
        assert_eq!(trail.core.len(), 1);
        assert_eq!(trail.core[0].dynkin, Some(DynkinType::D(4)));
        assert_eq!(trail.core_signature()[0].1, vec![1, 1, 1, 2]);
        assert_eq!(trail.split_off_count, 12);
    }

    #[test]
    fn json_round_trip() {
        let q = Quiver::from_bits(catalog_tree(Family::Hn, &[5]).unwrap(), 5);
        let s = serde_json::to_string(&QuiverJson::from(&q)).unwrap();
        assert!(s.contains("\"arrows\""));
        let back: QuiverJson = serde_json::from_str(&s).unwrap();
        assert_eq!(Quiver::try_from(&back).unwrap(), q);
    }
}
