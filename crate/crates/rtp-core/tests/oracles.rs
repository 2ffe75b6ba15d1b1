//! Library results against naive reimplementations and known numbers.

use num_bigint::BigInt;
use rtp_core::cycle::laufer_artin_cycle;
use rtp_core::lfd::{discriminant, infinitesimal_action_matrix, RepSpace};
use rtp_core::poly::SparsePolynomial;
use rtp_core::quiver::{DimensionVector, Quiver};
use rtp_core::roots::enumerate_roots_box;
use rtp_core::tree::{catalog_tree, Divisor, Family, WeightedTree};
use std::collections::BTreeSet;

fn form(t: &WeightedTree, y: &[i64], z: &[i64]) -> i64 {
    let mut s = 0;
    for i in 0..t.len() {
        s -= t.weight(i) as i64 * y[i] * z[i];
    }
    for &(a, b) in t.edges() {
        s += y[a] * z[b] + y[b] * z[a];
    }
    s
}

fn connected(t: &WeightedTree, y: &[i64]) -> bool {
    let supp: Vec<usize> = (0..t.len()).filter(|&i| y[i] != 0).collect();
    let Some(&start) = supp.first() else { return false };
    let mut seen = vec![start];
    let mut stack = vec![start];
    while let Some(u) = stack.pop() {
        for &v in t.neighbors(u) {
            if y[v] != 0 && !seen.contains(&v) {
                seen.push(v);
                stack.push(v);
            }
        }
    }
    seen.len() == supp.len()
}

fn each_point(bound: &[i64], lo_sign: i64, mut f: impl FnMut(&[i64])) {
    let n = bound.len();
    let mut y: Vec<i64> = bound.iter().map(|b| lo_sign * b).collect();
    loop {
        f(&y);
        let mut i = 0;
        loop {
            if i == n {
                return;
            }
            if y[i] < bound[i] {
                y[i] += 1;
                break;
            }
            y[i] = lo_sign * bound[i];
            i += 1;
        }
    }
}

/// Roots straight from the definition, scanning [-Z, Z].
fn naive_roots(t: &WeightedTree) -> BTreeSet<Vec<i64>> {
    let z = laufer_artin_cycle(t).unwrap();
    let allowed: &[i64] = if t.weights().iter().all(|&w| w == 2) { &[-2] } else { &[-2, -3] };
    let mut out = BTreeSet::new();
    each_point(z.coeffs(), -1, |y| {
        let pos = y.iter().all(|&c| c >= 0);
        let neg = y.iter().all(|&c| c <= 0);
        if (pos || neg) && connected(t, y) && allowed.contains(&form(t, y, y)) {
            out.insert(y.to_vec());
        }
    });
    out
}

/// Least-sum positive divisor with all pairings nonpositive in 1..=bound.
fn naive_artin(t: &WeightedTree, bound: i64) -> Vec<i64> {
    let mut best: Option<Vec<i64>> = None;
    let ones = vec![bound; t.len()];
    each_point(&ones, 0, |y| {
        if y.iter().any(|&c| c < 1) {
            return;
        }
        let ok = (0..t.len()).all(|i| {
            let e: Vec<i64> = (0..t.len()).map(|j| i64::from(i == j)).collect();
            form(t, y, &e) <= 0
        });
        if ok && best.as_ref().is_none_or(|b| y.iter().sum::<i64>() < b.iter().sum()) {
            best = Some(y.to_vec());
        }
    });
    best.unwrap()
}

#[test]
fn dynkin_counts() {
    let cases = [
        (Family::A, vec![1], 2),
        (Family::A, vec![4], 20),
        (Family::D, vec![4], 24),
        (Family::D, vec![5], 40),
        (Family::E6, vec![], 72),
        (Family::E7, vec![], 126),
        (Family::E8, vec![], 240),
    ];
    for (f, p, want) in cases {
        let t = catalog_tree(f, &p).unwrap();
        assert_eq!(enumerate_roots_box(&t).unwrap().len(), want, "{f}{p:?}");
    }
}

#[test]
fn box_enumeration_matches_definition() {
    let cases = [
        (Family::Anmk, vec![1, 1, 1]),
        (Family::Anmk, vec![1, 2, 3]),
        (Family::Bmn, vec![2, 3]),
        (Family::Cmn, vec![3, 2]),
        (Family::Dn5, vec![0]),
        (Family::Hn, vec![6]),
        (Family::E71, vec![]),
        (Family::D, vec![5]),
    ];
    for (f, p) in cases {
        let t = catalog_tree(f, &p).unwrap();
        let lib: BTreeSet<Vec<i64>> = enumerate_roots_box(&t).unwrap().iter().map(|y| y.coeffs().to_vec()).collect();
        assert_eq!(lib, naive_roots(&t), "{f}{p:?}");
    }
}

#[test]
fn known_counts() {
    for (f, p, want) in [
        (Family::Anmk, vec![1, 1, 1], 22),
        (Family::Hn, vec![5], 40),
        (Family::Dn5, vec![0], 72),
        (Family::E82, vec![], 212),
    ] {
        assert_eq!(naive_roots(&catalog_tree(f, &p).unwrap()).len(), want, "{f}{p:?}");
    }
}

#[test]
fn artin_cycles_match_exhaustive_search() {
    for (f, p) in [
        (Family::D, vec![4]),
        (Family::E6, vec![]),
        (Family::Anmk, vec![1, 1, 2]),
        (Family::Hn, vec![6]),
        (Family::Bmn, vec![1, 3]),
    ] {
        let t = catalog_tree(f, &p).unwrap();
        let z = laufer_artin_cycle(&t).unwrap();
        assert_eq!(z.coeffs(), naive_artin(&t, 3).as_slice(), "{f}{p:?}");
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

fn sign(p: &[usize]) -> i64 {
    let mut s = 1;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                s = -s;
            }
        }
    }
    s
}

/// Leibniz formula.
fn leibniz(m: &[Vec<SparsePolynomial>], nvars: usize) -> SparsePolynomial {
    let mut acc = SparsePolynomial::zero(nvars);
    for p in permutations(m.len()) {
        let mut term = SparsePolynomial::constant(nvars, BigInt::from(sign(&p)));
        for (r, &c) in p.iter().enumerate() {
            term = &term * &m[r][c];
        }
        acc = &acc + &term;
    }
    acc
}

#[test]
fn discriminants_match_leibniz() {
    let d4 = catalog_tree(Family::D, &[4]).unwrap();
    let a = DimensionVector::new(vec![1, 2, 1, 1]).unwrap();
    for q in Quiver::orientations(&d4) {
        let r = RepSpace::new(&q, &a).unwrap();
        let m = infinitesimal_action_matrix(&r).unwrap();
        let want = leibniz(m.entries(), r.n());
        assert_eq!(discriminant(&q, &a, 12).unwrap(), want);
    }
    let a3 = catalog_tree(Family::A, &[3]).unwrap();
    let ones = DimensionVector::from_divisor(&Divisor::ones(3));
    for q in Quiver::orientations(&a3) {
        let d = discriminant(&q, &ones, 12).unwrap();
        assert_eq!(d.to_string().trim_start_matches('-'), "x0*x1");
    }
}
