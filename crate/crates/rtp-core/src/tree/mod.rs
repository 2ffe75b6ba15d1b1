//! Weighted trees, divisors and the intersection form.

mod catalog;
mod io;

pub use catalog::{catalog_instances, catalog_tree, Family, QuasiPiece};
pub use io::{to_dot, TreeJson, VertexJson};

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use std::collections::VecDeque;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TreeError {
    #[error("a tree needs at least one vertex")]
    Empty,
    #[error("vertex {vertex} has weight {weight}; weights must be at least 2")]
    WeightTooSmall { vertex: usize, weight: u32 },
    #[error("edge ({0},{1}) refers to a missing vertex")]
    BadEdge(usize, usize),
    #[error("edge ({0},{1}) is a loop or a repeated edge")]
    DuplicateEdge(usize, usize),
    #[error("graph is not a tree: {0}")]
    NotATree(String),
    #[error("vertex ids must be 0..n-1 in order")]
    BadIds,
    #[error("divisor has {got} coefficients, tree has {expected} vertices")]
    LengthMismatch { expected: usize, got: usize },
    #[error("divisor must be nonzero")]
    ZeroDivisor,
    #[error("internal error: arithmetic genus is not an integer")]
    HalfIntegerGenus,
    #[error("unknown diagram family `{0}`")]
    UnknownFamily(String),
    #[error("invalid parameters for {family}: {reason}")]
    InvalidParams { family: String, reason: String },
}

/// Integer coefficient vector over the vertices of a tree.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Divisor(pub Vec<i64>);

impl Divisor {
    pub fn zero(n: usize) -> Self {
        Divisor(vec![0; n])
    }

    pub fn ones(n: usize) -> Self {
        Divisor(vec![1; n])
    }

    /// The simple divisor E_i.
    pub fn unit(n: usize, i: usize) -> Self {
        let mut d = vec![0; n];
        d[i] = 1;
        Divisor(d)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    /// Nonzero with all coefficients nonnegative.
    pub fn is_positive(&self) -> bool {
        !self.is_zero() && self.0.iter().all(|&c| c >= 0)
    }

    /// All coefficients of one sign (zero allowed).
    pub fn is_sign_pure(&self) -> bool {
        self.0.iter().all(|&c| c >= 0) || self.0.iter().all(|&c| c <= 0)
    }

    pub fn support(&self) -> Vec<usize> {
        self.0
            .iter()
            .enumerate()
            .filter_map(|(i, &c)| (c != 0).then_some(i))
            .collect()
    }

    pub fn abs(&self) -> Divisor {
        Divisor(self.0.iter().map(|c| c.abs()).collect())
    }

    pub fn neg(&self) -> Divisor {
        Divisor(self.0.iter().map(|c| -c).collect())
    }

    pub fn add(&self, other: &Divisor) -> Divisor {
        Divisor(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Divisor) -> Divisor {
        Divisor(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    /// Componentwise `self <= other`.
    pub fn le(&self, other: &Divisor) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn sum(&self) -> i64 {
        self.0.iter().sum()
    }

    /// Reorders coefficients: entry `i` moves to position `map[i]`.
    pub fn permuted(&self, map: &[usize]) -> Divisor {
        let mut out = vec![0; self.0.len()];
        for (i, &c) in self.0.iter().enumerate() {
            out[map[i]] = c;
        }
        Divisor(out)
    }
}

impl fmt::Display for Divisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Tree with vertex weights w_i >= 2 (self-intersection -w_i).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedTree {
    weights: Vec<u32>,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
    labels: Option<Vec<String>>,
}

impl WeightedTree {
    /// Validates that the edges form a tree on `weights.len()` vertices.
    pub fn new(weights: Vec<u32>, edges: &[(usize, usize)]) -> Result<Self, TreeError> {
        let n = weights.len();
        if n == 0 {
            return Err(TreeError::Empty);
        }
        if let Some((v, &w)) = weights.iter().enumerate().find(|(_, &w)| w < 2) {
            return Err(TreeError::WeightTooSmall { vertex: v, weight: w });
        }
        let mut adj = vec![Vec::new(); n];
        let mut canon = Vec::with_capacity(edges.len());
        for &(a, b) in edges {
            if a >= n || b >= n {
                return Err(TreeError::BadEdge(a, b));
            }
            if a == b || adj[a].contains(&b) {
                return Err(TreeError::DuplicateEdge(a, b));
            }
            adj[a].push(b);
            adj[b].push(a);
            canon.push((a.min(b), a.max(b)));
        }
        if canon.len() != n - 1 {
            return Err(TreeError::NotATree(format!(
                "{} vertices need {} edges, got {}",
                n,
                n - 1,
                canon.len()
            )));
        }
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        while let Some(u) = queue.pop_front() {
            for &v in &adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    queue.push_back(v);
                }
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(TreeError::NotATree("graph is disconnected".into()));
        }
        for a in &mut adj {
            a.sort_unstable();
        }
        canon.sort_unstable();
        Ok(WeightedTree {
            weights,
            edges: canon,
            adj,
            labels: None,
        })
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.len());
        self.labels = Some(labels);
        self
    }

    /// Same graph with the weight at `v` replaced.
    pub fn with_weight(&self, v: usize, w: u32) -> Result<Self, TreeError> {
        if w < 2 {
            return Err(TreeError::WeightTooSmall { vertex: v, weight: w });
        }
        let mut t = self.clone();
        t.weights[v] = w;
        Ok(t)
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn weight(&self, v: usize) -> u32 {
        self.weights[v]
    }

    /// Edges as (smaller id, larger id), sorted: the canonical edge order.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn label(&self, v: usize) -> String {
        match &self.labels {
            Some(l) => l[v].clone(),
            None => format!("E{v}"),
        }
    }

    pub fn edge_index(&self, a: usize, b: usize) -> Option<usize> {
        self.edges.binary_search(&(a.min(b), a.max(b))).ok()
    }

    /// Vertices of weight at least 3.
    pub fn heavy_vertices(&self) -> Vec<usize> {
        (0..self.len()).filter(|&v| self.weights[v] >= 3).collect()
    }

    /// Exactly one vertex of weight 3 and all others of weight 2.
    pub fn is_triple_shape(&self) -> bool {
        self.weights.iter().filter(|&&w| w == 3).count() == 1
            && self.weights.iter().all(|&w| w == 2 || w == 3)
    }

    pub fn is_dynkin_shape(&self) -> bool {
        self.weights.iter().all(|&w| w == 2)
    }

    fn check(&self, y: &Divisor) -> Result<(), TreeError> {
        if y.len() != self.len() {
            return Err(TreeError::LengthMismatch {
                expected: self.len(),
                got: y.len(),
            });
        }
        Ok(())
    }

    /// (Y . E_i) for a single vertex.
    pub fn pairing_with_vertex(&self, y: &Divisor, i: usize) -> i64 {
        let mut s = -(self.weights[i] as i64) * y.0[i];
        for &j in &self.adj[i] {
            s += y.0[j];
        }
        s
    }

    /// (Y . Y') = Y^T M Y' with M_ii = -w_i and M_ij = 1 on edges.
    pub fn intersection_pairing(&self, y: &Divisor, y2: &Divisor) -> Result<i64, TreeError> {
        self.check(y)?;
        self.check(y2)?;
        Ok(self.pairing_unchecked(y, y2))
    }

    pub(crate) fn pairing_unchecked(&self, y: &Divisor, y2: &Divisor) -> i64 {
        let mut s: i64 = (0..self.len())
            .map(|i| -(self.weights[i] as i64) * y.0[i] * y2.0[i])
            .sum();
        for &(a, b) in &self.edges {
            s += y.0[a] * y2.0[b] + y.0[b] * y2.0[a];
        }
        s
    }

    pub fn self_intersection(&self, y: &Divisor) -> i64 {
        self.pairing_unchecked(y, y)
    }

    /// p_a(Y) = (Y.Y + sum m_i (w_i - 2)) / 2 + 1.
    pub fn arithmetic_genus(&self, y: &Divisor) -> Result<i64, TreeError> {
        self.check(y)?;
        if y.is_zero() {
            return Err(TreeError::ZeroDivisor);
        }
        let twice = self.self_intersection(y)
            + y.0
                .iter()
                .zip(&self.weights)
                .map(|(m, &w)| m * (w as i64 - 2))
                .sum::<i64>();
        if twice % 2 != 0 {
            return Err(TreeError::HalfIntegerGenus);
        }
        Ok(twice / 2 + 1)
    }

    /// All leading principal minors of -M(Γ) are positive.
    pub fn is_negative_definite(&self) -> bool {
        let n = self.len();
        let mut a: Vec<Vec<BigInt>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if i == j {
                            BigInt::from(self.weights[i])
                        } else if self.adj[i].contains(&j) {
                            BigInt::from(-1)
                        } else {
                            BigInt::zero()
                        }
                    })
                    .collect()
            })
            .collect();
        // Bareiss without pivoting: a[k][k] after step k is the (k+1)-th leading minor.
        let mut prev = BigInt::from(1);
        for k in 0..n {
            if !a[k][k].is_positive() {
                return false;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = v / &prev;
                }
            }
            prev = a[k][k].clone();
        }
        true
    }

    /// Induced subgraph on `verts` is connected (empty set counts as connected).
    pub fn is_connected_subset(&self, verts: &[usize]) -> bool {
        if verts.is_empty() {
            return true;
        }
        let mut inside = vec![false; self.len()];
        for &v in verts {
            inside[v] = true;
        }
        let mut seen = vec![false; self.len()];
        let mut stack = vec![verts[0]];
        seen[verts[0]] = true;
        let mut count = 1;
        while let Some(u) = stack.pop() {
            for &w in &self.adj[u] {
                if inside[w] && !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == verts.len()
    }

    /// Subtree induced on `keep` (must be connected); ids follow the order of `keep`.
    pub fn induced(&self, keep: &[usize]) -> Result<WeightedTree, TreeError> {
        let mut index = vec![usize::MAX; self.len()];
        for (k, &v) in keep.iter().enumerate() {
            index[v] = k;
        }
        let weights = keep.iter().map(|&v| self.weights[v]).collect();
        let edges: Vec<(usize, usize)> = self
            .edges
            .iter()
            .filter(|(a, b)| index[*a] != usize::MAX && index[*b] != usize::MAX)
            .map(|&(a, b)| (index[a], index[b]))
            .collect();
        let t = WeightedTree::new(weights, &edges)?;
        Ok(match &self.labels {
            Some(l) => t.with_labels(keep.iter().map(|&v| l[v].clone()).collect()),
            None => t,
        })
    }

    /// Leaves (degree <= 1).
    pub fn leaves(&self) -> Vec<usize> {
        (0..self.len()).filter(|&v| self.degree(v) <= 1).collect()
    }
}

/// Outcome of the rationality test.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RationalityReport {
    pub negative_definite: bool,
    pub artin_cycle: Option<Divisor>,
    pub pa_of_z: Option<i64>,
    pub multiplicity: Option<i64>,
    pub rational: bool,
    pub valency_violations: Vec<usize>,
}

/// Negative definiteness, Artin cycle, p_a(Z) and the valency bound v_i <= w_i + 1.
pub fn classify_rational(t: &WeightedTree) -> RationalityReport {
    let negative_definite = t.is_negative_definite();
    let valency_violations = (0..t.len())
        .filter(|&v| t.degree(v) as u32 > t.weight(v) + 1)
        .collect();
    let (artin_cycle, pa_of_z, multiplicity) = if negative_definite {
        match crate::cycle::laufer_artin_cycle(t) {
            Ok(z) => {
                let pa = t.arithmetic_genus(&z).ok();
                let m = -t.self_intersection(&z);
                (Some(z), pa, Some(m))
            }
            Err(_) => (None, None, None),
        }
    } else {
        (None, None, None)
    };
    let rational = negative_definite && pa_of_z == Some(0);
    RationalityReport {
        negative_definite,
        artin_cycle,
        pa_of_z,
        multiplicity,
        rational,
        valency_violations,
    }
}

/// Bounded check of p_a(Y) <= 0 over 0 < Y <= bound; returns the first violator.
pub fn positive_genus_witness(t: &WeightedTree, bound: &Divisor) -> Option<Divisor> {
    let n = t.len();
    let mut y = vec![0i64; n];
    loop {
        let mut i = 0;
        loop {
            if i == n {
                return None;
            }
            if y[i] < bound.0[i] {
                y[i] += 1;
                break;
            }
            y[i] = 0;
            i += 1;
        }
        let d = Divisor(y.clone());
        if t.arithmetic_genus(&d).is_ok_and(|p| p > 0) {
            return Some(d);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize) -> WeightedTree {
        let e: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        WeightedTree::new(vec![2; n], &e).unwrap()
    }

    #[test]
    fn rejects_non_trees() {
        assert_eq!(WeightedTree::new(vec![], &[]), Err(TreeError::Empty));
        assert!(matches!(
            WeightedTree::new(vec![2, 2, 2], &[(0, 1)]),
            Err(TreeError::NotATree(_))
        ));
        assert!(matches!(
            WeightedTree::new(vec![2, 2, 2, 2], &[(0, 1), (1, 2), (2, 0)]),
            Err(TreeError::NotATree(_))
        ));
        assert_eq!(
            WeightedTree::new(vec![2, 1], &[(0, 1)]),
            Err(TreeError::WeightTooSmall { vertex: 1, weight: 1 })
        );
    }

    #[test]
    fn pairing_examples() {
        let a1 = path(1);
        let e = Divisor::unit(1, 0);
        assert_eq!(a1.intersection_pairing(&e, &e).unwrap(), -2);
        let a2 = path(2);
        assert_eq!(
            a2.intersection_pairing(&Divisor::unit(2, 0), &Divisor::unit(2, 1))
                .unwrap(),
            1
        );
        let y = Divisor(vec![1, -1]);
        assert_eq!(a2.intersection_pairing(&y, &y).unwrap(), -6);
    }

    #[test]
    fn genus_examples() {
        for w in 2..6 {
            let t = WeightedTree::new(vec![w], &[]).unwrap();
            assert_eq!(t.arithmetic_genus(&Divisor::unit(1, 0)).unwrap(), 0);
        }
        let star = WeightedTree::new(vec![3, 2, 2, 2], &[(0, 1), (0, 2), (0, 3)]).unwrap();
        assert_eq!(star.self_intersection(&Divisor::ones(4)), -3);
        assert_eq!(star.arithmetic_genus(&Divisor::ones(4)).unwrap(), 0);
        assert_eq!(star.arithmetic_genus(&Divisor::zero(4)), Err(TreeError::ZeroDivisor));
    }

    #[test]
    fn definiteness() {
        assert!(path(2).is_negative_definite());
        assert!(path(1).is_negative_definite());
        let affine_d4 =
            WeightedTree::new(vec![2; 5], &[(0, 1), (0, 2), (0, 3), (0, 4)]).unwrap();
        assert!(!affine_d4.is_negative_definite());
    }

    #[test]
    fn genus_witness_on_elliptic_star() {
        let affine_d4 =
            WeightedTree::new(vec![2; 5], &[(0, 1), (0, 2), (0, 3), (0, 4)]).unwrap();
        let w = positive_genus_witness(&affine_d4, &Divisor(vec![2, 1, 1, 1, 1])).unwrap();
        assert_eq!(affine_d4.arithmetic_genus(&w).unwrap(), 1);
        assert!(positive_genus_witness(&path(4), &Divisor::ones(4)).is_none());
    }
}
