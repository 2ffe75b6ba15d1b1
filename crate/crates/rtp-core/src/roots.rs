//! Triple and quasi-determinantal root systems.

use crate::cycle::{laufer_artin_cycle, CycleError};
use crate::tree::{classify_rational, Divisor, Family, TreeError, WeightedTree};
use rayon::prelude::*;
use serde::Serialize;
use std::collections::{BTreeSet, VecDeque};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RootError {
    #[error("tree is not rational")]
    NotRational,
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("search box has {size} points, above the limit {max}")]
    BoxTooLarge { size: u128, max: u128 },
    #[error("structural bound violated by {divisor}: {what}")]
    TheoremViolation { divisor: Divisor, what: String },
    #[error("trees have {0} and {1} vertices")]
    SizeMismatch(usize, usize),
    #[error("vertex map is not a bijection")]
    BadVertexMap,
    #[error(transparent)]
    Tree(#[from] TreeError),
    #[error(transparent)]
    Cycle(#[from] CycleError),
}

/// Which membership predicate a tree uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum TreeKind {
    /// All weights 2.
    Dynkin,
    /// One weight-3 vertex, the rest weight 2.
    Triple,
    /// Several heavy vertices, or one of weight above 3.
    Quasi,
}

pub fn tree_kind(t: &WeightedTree) -> TreeKind {
    if t.is_dynkin_shape() {
        TreeKind::Dynkin
    } else if t.is_triple_shape() {
        TreeKind::Triple
    } else {
        TreeKind::Quasi
    }
}

/// Knobs for the quasi-determinantal search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RootOptions {
    /// Apply the pairwise divisibility condition as an iterated fixpoint filter.
    pub divisibility_filter: bool,
    /// Search 0 < Y <= scale * Z instead of 0 < Y <= Z (quasi trees only).
    pub box_scale: i64,
    /// Refuse boxes with more points than this.
    pub max_box: u128,
}

impl Default for RootOptions {
    fn default() -> Self {
        RootOptions {
            divisibility_filter: false,
            box_scale: 1,
            max_box: 50_000_000,
        }
    }
}

/// Side information from an enumeration.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct RootDiagnostics {
    pub kind: Option<TreeKind>,
    pub box_points: u128,
    /// Pairs violating divisibility among the candidates before filtering.
    pub divisibility_violations: usize,
    /// Positive candidates dropped by the fixpoint filter, in removal order.
    pub removed_by_divisibility: Vec<Divisor>,
}

/// A set of roots closed under negation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootSet {
    tree: WeightedTree,
    roots: BTreeSet<Divisor>,
    pub diagnostics: RootDiagnostics,
}

impl RootSet {
    fn from_positive(tree: &WeightedTree, positive: impl IntoIterator<Item = Divisor>) -> Self {
        let mut roots = BTreeSet::new();
        for y in positive {
            roots.insert(y.neg());
            roots.insert(y);
        }
        RootSet {
            tree: tree.clone(),
            roots,
            diagnostics: RootDiagnostics::default(),
        }
    }

    pub fn tree(&self) -> &WeightedTree {
        &self.tree
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn contains(&self, y: &Divisor) -> bool {
        self.roots.contains(y)
    }

    pub fn iter(&self) -> impl Iterator<Item = &Divisor> {
        self.roots.iter()
    }

    pub fn positive(&self) -> impl Iterator<Item = &Divisor> {
        self.roots.iter().filter(|y| y.is_positive())
    }

    pub fn positive_set(&self) -> BTreeSet<Divisor> {
        self.positive().cloned().collect()
    }

    /// Componentwise maximum of the positive roots.
    pub fn highest(&self) -> Option<Divisor> {
        let n = self.tree.len();
        let mut top = vec![0i64; n];
        let mut any = false;
        for y in self.positive() {
            any = true;
            for (t, &c) in top.iter_mut().zip(y.coeffs()) {
                *t = (*t).max(c);
            }
        }
        any.then_some(Divisor(top))
    }
}

fn self_int(weights: &[i64], edges: &[(usize, usize)], y: &[i64]) -> i64 {
    let mut s: i64 = weights.iter().zip(y).map(|(w, c)| -w * c * c).sum();
    for &(a, b) in edges {
        s += 2 * y[a] * y[b];
    }
    s
}

/// Range of admissible Y.Y values for the tree's kind and Artin cycle.
fn self_int_range(kind: TreeKind, z2: i64) -> (i64, i64) {
    match kind {
        TreeKind::Dynkin => (-2, -2),
        TreeKind::Triple => (-3, -2),
        TreeKind::Quasi => (z2.min(-2), -2),
    }
}

/// Membership evaluated directly: nonzero, sign-pure, connected support and
/// the self-intersection range. The pairwise divisibility condition is not
/// checked here since it depends on the whole set.
pub fn is_root(t: &WeightedTree, y: &Divisor) -> Result<bool, RootError> {
    if y.len() != t.len() {
        return Err(TreeError::LengthMismatch {
            expected: t.len(),
            got: y.len(),
        }
        .into());
    }
    let kind = tree_kind(t);
    let z2 = match kind {
        TreeKind::Quasi => {
            let z = laufer_artin_cycle(t)?;
            t.self_intersection(&z)
        }
        _ => 0,
    };
    Ok(root_predicate(t, kind, z2, y))
}

fn root_predicate(t: &WeightedTree, kind: TreeKind, z2: i64, y: &Divisor) -> bool {
    if y.is_zero() || !y.is_sign_pure() || !t.is_connected_subset(&y.support()) {
        return false;
    }
    let (lo, hi) = self_int_range(kind, z2);
    let s = t.self_intersection(y);
    lo <= s && s <= hi
}

/// Enumerates 0 < Y <= bound; `keep` filters by Y.Y.
fn scan_box(
    t: &WeightedTree,
    bound: &[i64],
    keep: impl Fn(i64) -> bool + Sync,
) -> Vec<Divisor> {
    let n = t.len();
    let weights: Vec<i64> = t.weights().iter().map(|&w| w as i64).collect();
    let edges = t.edges();
    let total: u128 = bound.iter().map(|&b| (b + 1) as u128).product();
    let chunk: u128 = 1 << 14;
    let chunks = total.div_ceil(chunk) as u64;
    let mut found: Vec<Divisor> = (0..chunks)
        .into_par_iter()
        .flat_map_iter(|c| {
            let start = c as u128 * chunk;
            let end = (start + chunk).min(total);
            let mut y = vec![0i64; n];
            let mut r = start;
            for (i, &b) in bound.iter().enumerate() {
                let radix = (b + 1) as u128;
                y[i] = (r % radix) as i64;
                r /= radix;
            }
            let mut out = Vec::new();
            for _ in start..end {
                if y.iter().any(|&c| c != 0) && keep(self_int(&weights, edges, &y)) {
                    out.push(Divisor(y.clone()));
                }
                for i in 0..n {
                    if y[i] < bound[i] {
                        y[i] += 1;
                        break;
                    }
                    y[i] = 0;
                }
            }
            out.into_iter()
        })
        .collect();
    found.sort();
    found
}

/// Connected vertex sets of the tree, each listed once.
fn connected_subsets(t: &WeightedTree, limit: usize) -> Option<Vec<Vec<usize>>> {
    fn grow(
        t: &WeightedTree,
        root: usize,
        set: &mut Vec<usize>,
        ext: Vec<usize>,
        blocked: &mut Vec<bool>,
        out: &mut Vec<Vec<usize>>,
        limit: usize,
    ) -> bool {
        if out.len() >= limit {
            return false;
        }
        out.push(set.clone());
        let mut ext = ext;
        let mut popped = Vec::new();
        while let Some(v) = ext.pop() {
            let mut next = ext.clone();
            for &u in t.neighbors(v) {
                if u > root && !set.contains(&u) && !blocked[u] && !next.contains(&u) {
                    next.push(u);
                }
            }
            set.push(v);
            let ok = grow(t, root, set, next, blocked, out, limit);
            set.pop();
            if !ok {
                return false;
            }
            blocked[v] = true;
            popped.push(v);
        }
        for v in popped {
            blocked[v] = false;
        }
        true
    }
    let mut out = Vec::new();
    for r in 0..t.len() {
        let ext = t.neighbors(r).iter().copied().filter(|&u| u > r).collect();
        let mut blocked = vec![false; t.len()];
        if !grow(t, r, &mut vec![r], ext, &mut blocked, &mut out, limit) {
            return None;
        }
    }
    Some(out)
}

/// Divisors with connected support S and 1 <= y_i <= bound_i on S.
fn scan_connected(
    t: &WeightedTree,
    bound: &[i64],
    max_points: u128,
    keep: impl Fn(i64) -> bool + Sync,
) -> Result<(Vec<Divisor>, u128), RootError> {
    let too_large = |size| RootError::BoxTooLarge { size, max: max_points };
    let subsets = connected_subsets(t, max_points.min(usize::MAX as u128) as usize)
        .ok_or_else(|| too_large(max_points + 1))?;
    let points: u128 = subsets
        .iter()
        .map(|s| s.iter().map(|&v| bound[v].max(0) as u128).product::<u128>())
        .sum();
    if points > max_points {
        return Err(too_large(points));
    }
    let weights: Vec<i64> = t.weights().iter().map(|&w| w as i64).collect();
    let edges = t.edges();
    let mut found: Vec<Divisor> = subsets
        .par_iter()
        .flat_map_iter(|s| {
            let mut out = Vec::new();
            if s.iter().any(|&v| bound[v] < 1) {
                return out.into_iter();
            }
            let mut y = vec![0i64; t.len()];
            for &v in s {
                y[v] = 1;
            }
            loop {
                if keep(self_int(&weights, edges, &y)) {
                    out.push(Divisor(y.clone()));
                }
                let mut advanced = false;
                for &v in s {
                    if y[v] < bound[v] {
                        y[v] += 1;
                        advanced = true;
                        break;
                    }
                    y[v] = 1;
                }
                if !advanced {
                    break;
                }
            }
            out.into_iter()
        })
        .collect();
    found.sort();
    Ok((found, points))
}

/// All roots inside the Artin-cycle box, mirrored by negation.
pub fn enumerate_roots_box(t: &WeightedTree) -> Result<RootSet, RootError> {
    enumerate_roots_box_with(t, &RootOptions::default())
}

pub fn enumerate_roots_box_with(t: &WeightedTree, opts: &RootOptions) -> Result<RootSet, RootError> {
    let report = classify_rational(t);
    if !report.rational {
        return Err(RootError::NotRational);
    }
    let z = report.artin_cycle.expect("rational trees have an Artin cycle");
    let z2 = t.self_intersection(&z);
    let kind = tree_kind(t);
    let scale = if kind == TreeKind::Quasi { opts.box_scale.max(1) } else { 1 };
    let bound: Vec<i64> = z.coeffs().iter().map(|&c| c * scale).collect();
    let (lo, hi) = self_int_range(kind, z2);
    let keep = |s: i64| lo <= s && s <= hi;
    let (positive, size) = if kind == TreeKind::Quasi {
        // Condition (i) is part of the definition here, so only connected
        // supports are scanned.
        scan_connected(t, &bound, opts.max_box, keep)?
    } else {
        let size: u128 = bound.iter().map(|&b| (b + 1) as u128).product();
        if size > opts.max_box {
            return Err(RootError::BoxTooLarge {
                size,
                max: opts.max_box,
            });
        }
        let candidates = scan_box(t, &bound, keep);
        if let Some(y) = candidates
            .iter()
            .find(|y| !t.is_connected_subset(&y.support()))
        {
            return Err(RootError::TheoremViolation {
                divisor: y.clone(),
                what: "support of a root is disconnected".into(),
            });
        }
        (candidates, size)
    };
    let mut positive = positive;

    let mut diagnostics = RootDiagnostics {
        kind: Some(kind),
        box_points: size,
        ..Default::default()
    };
    if kind == TreeKind::Quasi && opts.divisibility_filter {
        let (kept, removed, violations) = divisibility_fixpoint(t, positive, -z2, &z);
        diagnostics.divisibility_violations = violations;
        diagnostics.removed_by_divisibility = removed;
        positive = kept;
    }
    let mut set = RootSet::from_positive(t, positive);
    set.diagnostics = diagnostics;
    Ok(set)
}

fn divisible(m: i64, yy: i64, yy2: i64) -> bool {
    (3..=m.max(3)).all(|k| (k * yy2) % yy == 0)
}

/// Drops, one at a time, the non-simple candidate other than `z` with the most
/// divisibility violations until none is left with a violation.
/// Returns (kept, removed in order, initial violating pair count).
fn divisibility_fixpoint(
    t: &WeightedTree,
    candidates: Vec<Divisor>,
    m: i64,
    z: &Divisor,
) -> (Vec<Divisor>, Vec<Divisor>, usize) {
    let k = candidates.len();
    let selfs: Vec<i64> = candidates.iter().map(|y| t.self_intersection(y)).collect();
    let bad: Vec<Vec<usize>> = (0..k)
        .into_par_iter()
        .map(|a| {
            (0..k)
                .filter(|&b| {
                    b != a && {
                        let p = t.pairing_unchecked(&candidates[a], &candidates[b]);
                        !divisible(m, selfs[a], p) || !divisible(m, selfs[b], p)
                    }
                })
                .collect()
        })
        .collect();
    let initial = bad.iter().map(Vec::len).sum::<usize>() / 2;
    let protected: Vec<bool> = candidates
        .iter()
        .map(|y| y == z || y.sum() == 1)
        .collect();
    let mut alive = vec![true; k];
    let mut count: Vec<usize> = bad.iter().map(Vec::len).collect();
    let mut removed = Vec::new();
    loop {
        let pick = (0..k)
            .filter(|&i| alive[i] && !protected[i] && count[i] > 0)
            .max_by_key(|&i| (count[i], std::cmp::Reverse(i)));
        let Some(r) = pick else { break };
        alive[r] = false;
        for &b in &bad[r] {
            count[b] -= 1;
        }
        removed.push(candidates[r].clone());
    }
    let kept = candidates
        .into_iter()
        .zip(alive)
        .filter_map(|(y, a)| a.then_some(y))
        .collect();
    (kept, removed, initial)
}

/// Positive roots built downward from Z by subtracting simple roots.
///
/// From a root Y, E_i is subtracted when (Y.E_i) < 0. The heavy vertex is only
/// eligible when the coefficients of Y on its neighbors add up to 1; every
/// result is checked against the membership predicate before it is kept.
pub fn enumerate_positive_roots_descent(t: &WeightedTree) -> Result<RootSet, RootError> {
    let kind = tree_kind(t);
    if kind == TreeKind::Quasi {
        return Err(RootError::Unsupported(
            "descent enumeration needs a triple or Dynkin tree".into(),
        ));
    }
    let report = classify_rational(t);
    if !report.rational {
        return Err(RootError::NotRational);
    }
    let z = report.artin_cycle.expect("rational trees have an Artin cycle");
    let heavy = t.heavy_vertices().first().copied();
    let mut seen: BTreeSet<Divisor> = BTreeSet::from([z.clone()]);
    let mut queue = VecDeque::from([z]);
    while let Some(y) = queue.pop_front() {
        let heavy_ok = heavy.is_none_or(|h| {
            t.neighbors(h).iter().map(|&v| y.coeffs()[v]).sum::<i64>() == 1
        });
        for i in 0..t.len() {
            if y.coeffs()[i] == 0 || t.pairing_with_vertex(&y, i) >= 0 {
                continue;
            }
            if Some(i) == heavy && !heavy_ok {
                continue;
            }
            let mut next = y.clone();
            next.0[i] -= 1;
            if next.is_zero() || seen.contains(&next) {
                continue;
            }
            if root_predicate(t, kind, 0, &next) {
                seen.insert(next.clone());
                queue.push_back(next);
            }
        }
    }
    let mut set = RootSet::from_positive(t, seen);
    set.diagnostics.kind = Some(kind);
    Ok(set)
}

/// Closed-form root counts.
pub fn root_count_formula(family: Family, params: &[i64]) -> Result<i64, RootError> {
    let want = |k: usize| -> Result<(), RootError> {
        if params.len() != k {
            return Err(TreeError::InvalidParams {
                family: family.name().into(),
                reason: format!("expected {k} parameter(s), got {}", params.len()),
            }
            .into());
        }
        if params.iter().any(|&p| p < 0) {
            return Err(TreeError::InvalidParams {
                family: family.name().into(),
                reason: "parameters must be nonnegative".into(),
            }
            .into());
        }
        Ok(())
    };
    let p = params;
    Ok(match family {
        Family::A | Family::Ani => {
            want(if family == Family::A { 1 } else { 2 })?;
            p[0] * (p[0] + 1)
        }
        Family::D => {
            want(1)?;
            2 * p[0] * (p[0] - 1)
        }
        Family::E6 => 72,
        Family::E7 => 126,
        Family::E8 => 240,
        Family::Anmk => {
            want(3)?;
            let (n, m, k) = (p[0], p[1], p[2]);
            n * n + m * m + k * k + n + m + k + 2 * (n + 1) * (m + 1) * (k + 1)
        }
        Family::Bmn => {
            want(2)?;
            let (m, n) = (p[0], p[1]);
            n * (n + 1) * (m + 1) + m * (m + 1) + n * (n + 1)
        }
        Family::Cmn => {
            want(2)?;
            let (m, n) = (p[0], p[1]);
            2 * m * m + 4 * m * n + n * n + 2 * m + n
        }
        Family::Dn5 => {
            want(1)?;
            p[0] * p[0] + 33 * p[0] + 72
        }
        Family::Fn => {
            want(1)?;
            p[0] * p[0] + 55 * p[0] + 126
        }
        Family::Hn => {
            want(1)?;
            if p[0] < 5 {
                return Err(TreeError::InvalidParams {
                    family: family.name().into(),
                    reason: "n must be at least 5".into(),
                }
                .into());
            }
            (p[0].pow(3) - p[0]) / 3
        }
        Family::E71 => 124,
        Family::E81 => 238,
        Family::E82 => 212,
        other => {
            return Err(RootError::Unsupported(format!(
                "no closed-form count for {other}"
            )))
        }
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Relation {
    Equal,
    Subset,
    Superset,
    Incomparable,
}

/// Outcome of comparing two root systems in shared coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Containment {
    pub relation: Relation,
    /// Roots of the first system (mapped) missing from the second.
    pub only_first: Vec<Divisor>,
    pub only_second: Vec<Divisor>,
}

/// Compares R(t1) and R(t2); vertex i of t1 corresponds to vertex `map[i]` of t2.
pub fn compare_root_systems(
    t1: &WeightedTree,
    t2: &WeightedTree,
    map: &[usize],
) -> Result<Containment, RootError> {
    if t1.len() != t2.len() || map.len() != t1.len() {
        return Err(RootError::SizeMismatch(t1.len(), t2.len()));
    }
    let mut hit = vec![false; map.len()];
    for &v in map {
        if v >= map.len() || std::mem::replace(&mut hit[v], true) {
            return Err(RootError::BadVertexMap);
        }
    }
    let r1: BTreeSet<Divisor> = enumerate_roots_box(t1)?
        .iter()
        .map(|y| y.permuted(map))
        .collect();
    let r2: BTreeSet<Divisor> = enumerate_roots_box(t2)?.iter().cloned().collect();
    let only_first: Vec<Divisor> = r1.difference(&r2).cloned().collect();
    let only_second: Vec<Divisor> = r2.difference(&r1).cloned().collect();
    let relation = match (only_first.is_empty(), only_second.is_empty()) {
        (true, true) => Relation::Equal,
        (true, false) => Relation::Subset,
        (false, true) => Relation::Superset,
        (false, false) => Relation::Incomparable,
    };
    Ok(Containment {
        relation,
        only_first,
        only_second,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tree::catalog_tree;

    fn tree(f: Family, p: &[i64]) -> WeightedTree {
        catalog_tree(f, p).unwrap()
    }

    #[test]
    fn a2_roots() {
        let r = enumerate_roots_box(&tree(Family::A, &[2])).unwrap();
        assert_eq!(r.len(), 6);
        assert!(r.contains(&Divisor(vec![-1, -1])));
    }

    #[test]
    fn small_counts() {
        assert_eq!(enumerate_roots_box(&tree(Family::Hn, &[5])).unwrap().len(), 40);
        assert_eq!(enumerate_roots_box(&tree(Family::Anmk, &[1, 1, 1])).unwrap().len(), 22);
        assert_eq!(root_count_formula(Family::Hn, &[7]).unwrap(), 112);
        assert_eq!(root_count_formula(Family::Bmn, &[1, 1]).unwrap(), 8);
    }

    #[test]
    fn membership() {
        let h5 = tree(Family::Hn, &[5]);
        assert!(is_root(&h5, &Divisor::unit(5, 0)).unwrap());
        let a2 = tree(Family::A, &[2]);
        assert!(!is_root(&a2, &Divisor(vec![1, -1])).unwrap());
    }

    #[test]
    fn descent_matches_box_small() {
        for (f, p) in [(Family::Hn, vec![6]), (Family::Anmk, vec![1, 2, 1]), (Family::E71, vec![])] {
            let t = tree(f, &p);
            assert_eq!(
                enumerate_positive_roots_descent(&t).unwrap().positive_set(),
                enumerate_roots_box(&t).unwrap().positive_set(),
                "{f}"
            );
        }
    }

    #[test]
    fn compare_reports_witnesses() {
        let e7 = tree(Family::E7, &[]);
        let e71 = tree(Family::E71, &[]);
        let c = compare_root_systems(&e71, &e7, &(0..7).collect::<Vec<_>>()).unwrap();
        assert_eq!(c.relation, Relation::Subset);
        let z = laufer_artin_cycle(&e7).unwrap();
        assert_eq!(c.only_second, vec![z.neg(), z]);
    }
}
