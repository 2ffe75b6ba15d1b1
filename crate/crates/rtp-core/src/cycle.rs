//! Artin cycles: Laufer's algorithm and an exhaustive oracle.

use crate::tree::{Divisor, WeightedTree};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CycleError {
    #[error("intersection form is not negative definite; Laufer's algorithm need not terminate")]
    NotNegativeDefinite,
    #[error("bound too small: no positive divisor with all (Z.E_i) <= 0 in the box 1..={0}")]
    BoundTooSmall(i64),
    #[error("bound must be at least 1")]
    BadBound,
}

/// Which vertex Laufer's step picks when several have (Z.E_i) > 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Selection {
    #[default]
    LowestId,
    HighestId,
}

/// Final cycle plus the intermediate divisors Z_1, Z_2, ... and chosen vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LauferRun {
    pub cycle: Divisor,
    pub trace: Vec<Divisor>,
    pub added: Vec<usize>,
}

pub fn laufer_artin_cycle(t: &WeightedTree) -> Result<Divisor, CycleError> {
    laufer_run(t, Selection::LowestId, false).map(|r| r.cycle)
}

/// Starts at the all-ones divisor and adds E_i while some (Z.E_i) > 0.
pub fn laufer_run(t: &WeightedTree, sel: Selection, trace: bool) -> Result<LauferRun, CycleError> {
    if !t.is_negative_definite() {
        return Err(CycleError::NotNegativeDefinite);
    }
    let n = t.len();
    let mut z = Divisor::ones(n);
    let mut run = LauferRun {
        cycle: z.clone(),
        trace: Vec::new(),
        added: Vec::new(),
    };
    loop {
        if trace {
            run.trace.push(z.clone());
        }
        let mut bad = (0..n).filter(|&i| t.pairing_with_vertex(&z, i) > 0);
        let pick = match sel {
            Selection::LowestId => bad.next(),
            Selection::HighestId => bad.next_back(),
        };
        let Some(i) = pick else { break };
        z.0[i] += 1;
        run.added.push(i);
    }
    run.cycle = z;
    Ok(run)
}

/// Componentwise-minimal positive Z with every (Z.E_i) <= 0 and 1 <= z_i <= bound,
/// by exhaustive branch and bound over the box.
///
/// The set of such divisors is closed under componentwise minimum, so the
/// element of least total is the minimum.
pub fn minimal_cycle_bruteforce(t: &WeightedTree, bound: i64) -> Result<Divisor, CycleError> {
    if bound < 1 {
        return Err(CycleError::BadBound);
    }
    let n = t.len();
    // Post-order from vertex 0: children are fixed before their parent.
    let mut parent = vec![usize::MAX; n];
    let mut pre = vec![0usize];
    let mut i = 0;
    while i < pre.len() {
        let u = pre[i];
        for &v in t.neighbors(u) {
            if v != parent[u] {
                parent[v] = u;
                pre.push(v);
            }
        }
        i += 1;
    }
    let order: Vec<usize> = pre.into_iter().rev().collect();
    let children: Vec<Vec<usize>> = (0..n)
        .map(|u| t.neighbors(u).iter().copied().filter(|&v| v != parent[u]).collect())
        .collect();

    struct Search<'a> {
        t: &'a WeightedTree,
        bound: i64,
        order: &'a [usize],
        parent: &'a [usize],
        children: &'a [Vec<usize>],
        z: Vec<i64>,
        best: Option<(i64, Vec<i64>)>,
    }

    impl Search<'_> {
        fn child_sum(&self, v: usize) -> i64 {
            self.children[v].iter().map(|&c| self.z[c]).sum()
        }

        fn go(&mut self, k: usize, partial: i64) {
            if k == self.order.len() {
                if self.best.as_ref().is_none_or(|(s, _)| partial < *s) {
                    self.best = Some((partial, self.z.clone()));
                }
                return;
            }
            let v = self.order[k];
            let w = self.t.weight(v) as i64;
            let below = self.child_sum(v);
            let above = if self.parent[v] == usize::MAX { 0 } else { 1 };
            let lo = ((below + above + w - 1) / w).max(1);
            let mut hi = self.bound;
            for &c in &self.children[v] {
                let wc = self.t.weight(c) as i64;
                hi = hi.min(wc * self.z[c] - self.child_sum(c));
            }
            let remaining = (self.order.len() - k - 1) as i64;
            for zv in lo..=hi {
                if let Some((s, _)) = &self.best {
                    if partial + zv + remaining >= *s {
                        break;
                    }
                }
                self.z[v] = zv;
                self.go(k + 1, partial + zv);
            }
            self.z[v] = 0;
        }
    }

    let mut s = Search {
        t,
        bound,
        order: &order,
        parent: &parent,
        children: &children,
        z: vec![0; n],
        best: None,
    };
    s.go(0, 0);
    let (_, z) = s.best.ok_or(CycleError::BoundTooSmall(bound))?;
    let z = Divisor(z);
    debug_assert!((0..n).all(|i| t.pairing_with_vertex(&z, i) <= 0));
    Ok(z)
}

/// -(Z.Z) for the Artin cycle Z.
pub fn multiplicity(t: &WeightedTree) -> Result<i64, CycleError> {
    let z = laufer_artin_cycle(t)?;
    Ok(-t.self_intersection(&z))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tree::{catalog_tree, Family};

    #[test]
    fn small_cycles() {
        let a3 = catalog_tree(Family::A, &[3]).unwrap();
        assert_eq!(laufer_artin_cycle(&a3).unwrap(), Divisor::ones(3));
        let d4 = catalog_tree(Family::D, &[4]).unwrap();
        assert_eq!(laufer_artin_cycle(&d4).unwrap(), Divisor(vec![1, 2, 1, 1]));
        assert_eq!(minimal_cycle_bruteforce(&d4, 3).unwrap(), Divisor(vec![1, 2, 1, 1]));
        assert_eq!(
            minimal_cycle_bruteforce(&d4, 1),
            Err(CycleError::BoundTooSmall(1))
        );
    }

    #[test]
    fn e8_highest_root() {
        let e8 = catalog_tree(Family::E8, &[]).unwrap();
        let z = minimal_cycle_bruteforce(&e8, 7).unwrap();
        assert_eq!(z, Divisor(vec![2, 4, 6, 5, 4, 3, 2, 3]));
        assert_eq!(e8.self_intersection(&z), -2);
        assert_eq!(laufer_artin_cycle(&e8).unwrap(), z);
    }

    #[test]
    fn multiplicities() {
        assert_eq!(multiplicity(&catalog_tree(Family::Hn, &[5]).unwrap()).unwrap(), 3);
        let q = catalog_tree(Family::QuasiExample, &[]).unwrap();
        assert_eq!(multiplicity(&q).unwrap(), 8);
        let affine = crate::tree::WeightedTree::new(vec![2; 5], &[(0, 1), (0, 2), (0, 3), (0, 4)]).unwrap();
        assert_eq!(multiplicity(&affine), Err(CycleError::NotNegativeDefinite));
    }
}
