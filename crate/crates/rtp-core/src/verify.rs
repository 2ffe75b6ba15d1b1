//! Reproduction table: one check per known result, each reporting
//! pass or fail with a few lines of detail.

use crate::cycle::{laufer_artin_cycle, minimal_cycle_bruteforce};
use crate::lfd::{certify_lfd, certify_lfd_with, discriminant, saito_check, CertifyMode, CertifyOptions};
use crate::poly::{poly_det_bareiss, poly_gcd, poly_is_reduced, SparsePolynomial};
use crate::quiver::{
    quasi_example_quiver, reduce_to_core, reflect, replay, tits_form, DimensionVector, DynkinType, Quiver,
};
use crate::roots::{
    compare_root_systems, enumerate_positive_roots_descent, enumerate_roots_box, is_root,
    root_count_formula, Relation,
};
use crate::tree::{catalog_instances, catalog_tree, Divisor, Family, WeightedTree};
use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use std::collections::BTreeSet;

/// Seed used when the caller does not pick one.
pub const DEFAULT_SEED: u64 = 20240611;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub id: u8,
    pub title: &'static str,
    pub passed: bool,
    pub details: Vec<String>,
}

impl Check {
    fn new(id: u8, title: &'static str) -> Self {
        Check {
            id,
            title,
            passed: true,
            details: Vec::new(),
        }
    }

    fn note(&mut self, line: impl Into<String>) {
        self.details.push(line.into());
    }

    fn fail(&mut self, line: impl Into<String>) {
        self.passed = false;
        self.details.push(format!("FAIL {}", line.into()));
    }

    fn expect(&mut self, ok: bool, line: impl Into<String>) {
        if !ok {
            self.fail(line);
        }
    }
}

/// Positive roots of E8 (vertex order E_1..E_8) absent from E_{8,2}.
pub const E82_EXCLUDED: [[i64; 8]; 14] = [
    [2, 3, 4, 3, 2, 1, 0, 2],
    [2, 3, 4, 3, 2, 1, 1, 2],
    [2, 3, 4, 3, 2, 2, 1, 2],
    [2, 3, 4, 3, 3, 2, 1, 2],
    [2, 3, 4, 4, 3, 2, 1, 2],
    [2, 3, 5, 4, 3, 2, 1, 2],
    [2, 3, 5, 4, 3, 2, 1, 3],
    [2, 4, 5, 4, 3, 2, 1, 2],
    [2, 4, 5, 4, 3, 2, 1, 3],
    [2, 4, 6, 4, 3, 2, 1, 3],
    [2, 4, 6, 5, 3, 2, 1, 3],
    [2, 4, 6, 5, 4, 2, 1, 3],
    [2, 4, 6, 5, 4, 3, 1, 3],
    [2, 4, 6, 5, 4, 3, 2, 3],
];

fn count_cases() -> Vec<(Family, Vec<i64>)> {
    let mut cases = Vec::new();
    for n in 1..=4 {
        for m in 1..=4 {
            for k in 1..=4 {
                cases.push((Family::Anmk, vec![n, m, k]));
            }
        }
    }
    for m in 1..=5 {
        for n in 2..=5 {
            cases.push((Family::Bmn, vec![m, n]));
        }
    }
    for m in 2..=5 {
        for n in 1..=5 {
            cases.push((Family::Cmn, vec![m, n]));
        }
    }
    for n in 0..=6 {
        cases.push((Family::Dn5, vec![n]));
    }
    for n in 0..=5 {
        cases.push((Family::Fn, vec![n]));
    }
    for n in 5..=9 {
        cases.push((Family::Hn, vec![n]));
    }
    for f in [Family::E71, Family::E81, Family::E82] {
        cases.push((f, vec![]));
    }
    cases
}

/// Box enumeration against the closed-form counts.
pub fn check_root_counts() -> Check {
    let mut c = Check::new(1, "root counts match the closed forms");
    let cases = count_cases();
    let results: Vec<_> = cases
        .par_iter()
        .map(|(f, p)| {
            let got = catalog_tree(*f, p)
                .map_err(|e| e.to_string())
                .and_then(|t| enumerate_roots_box(&t).map_err(|e| e.to_string()))
                .map(|r| r.len() as i64);
            let want = root_count_formula(*f, p).map_err(|e| e.to_string());
            (got, want)
        })
        .collect();
    for ((f, p), (got, want)) in cases.iter().zip(results) {
        match (got, want) {
            (Ok(g), Ok(w)) => c.expect(g == w, format!("{f}{p:?}: enumerated {g}, formula {w}")),
            (g, w) => c.fail(format!("{f}{p:?}: {g:?} / {w:?}")),
        }
    }
    for (f, p, want) in [
        (Family::Anmk, vec![1, 1, 1], 22),
        (Family::Dn5, vec![0], 72),
        (Family::Fn, vec![0], 126),
        (Family::Hn, vec![5], 40),
        (Family::E71, vec![], 124),
        (Family::E81, vec![], 238),
        (Family::E82, vec![], 212),
    ] {
        let got = root_count_formula(f, &p).unwrap_or(-1);
        c.expect(got == want, format!("{f}{p:?}: formula gives {got}, expected {want}"));
    }
    c.note(format!("{} trees compared", cases.len()));
    c.note("B_{m,1} for m in 1..=5 not evaluated: the diagram needs F_1 and F_2 distinct");
    c
}

/// R+(E8) minus R+(E_{8,2}) is exactly the 14 listed vectors.
pub fn check_e82_exclusions() -> Check {
    let mut c = Check::new(2, "E_{8,2} exclusion list");
    let run = || -> Result<(BTreeSet<Divisor>, BTreeSet<Divisor>), String> {
        let e8 = enumerate_roots_box(&catalog_tree(Family::E8, &[]).map_err(|e| e.to_string())?)
            .map_err(|e| e.to_string())?;
        let e82 = enumerate_roots_box(&catalog_tree(Family::E82, &[]).map_err(|e| e.to_string())?)
            .map_err(|e| e.to_string())?;
        Ok((e8.positive_set(), e82.positive_set()))
    };
    match run() {
        Ok((e8, e82)) => {
            let missing: BTreeSet<Divisor> = e8.difference(&e82).cloned().collect();
            let listed: BTreeSet<Divisor> = E82_EXCLUDED.iter().map(|r| Divisor(r.to_vec())).collect();
            c.expect(e82.is_subset(&e8), "E_{8,2} roots are not all E8 roots");
            c.expect(missing == listed, format!("difference has {} roots", missing.len()));
            c.note(format!("|R+(E8)| = {}, |R+(E82)| = {}", e8.len(), e82.len()));
        }
        Err(e) => c.fail(e),
    }
    c
}

/// Laufer against brute force, and the self-intersection of Z.
pub fn check_artin_cycles() -> Check {
    let mut c = Check::new(3, "Artin cycles");
    let small = catalog_instances(10);
    let bad: Vec<String> = small
        .par_iter()
        .filter_map(|(f, p, t)| {
            let l = laufer_artin_cycle(t).ok();
            let b = minimal_cycle_bruteforce(t, 8).ok();
            (l.is_none() || l != b).then(|| format!("{f}{p:?}: laufer {l:?} brute {b:?}"))
        })
        .collect();
    for b in bad {
        c.fail(b);
    }
    c.note(format!("{} catalog trees with at most 10 vertices", small.len()));
    let triples: Vec<_> = catalog_instances(12).into_iter().filter(|(f, _, _)| f.is_triple()).collect();
    for (f, p, t) in &triples {
        match laufer_artin_cycle(t) {
            Ok(z) => {
                c.expect(t.arithmetic_genus(&z).ok() == Some(0), format!("{f}{p:?}: p_a(Z) != 0"));
                c.expect(t.self_intersection(&z) == -3, format!("{f}{p:?}: Z^2 != -3"));
            }
            Err(e) => c.fail(format!("{f}{p:?}: {e}")),
        }
    }
    c.note(format!("{} triple trees with at most 12 vertices", triples.len()));
    for w in [[3, 4, 5], [3, 5, 5], [4, 4, 5]] {
        let t = catalog_tree(Family::QuasiExample, &w).expect("weights are valid");
        let want = -(w.iter().sum::<i64>() - 4);
        let got = laufer_artin_cycle(&t).map(|z| t.self_intersection(&z));
        c.expect(got == Ok(want), format!("example {w:?}: Z^2 = {got:?}, expected {want}"));
    }
    c
}

/// Descent and box enumeration agree on R+.
pub fn check_descent() -> Check {
    let mut c = Check::new(4, "descent enumeration equals box enumeration");
    let triples: Vec<_> = catalog_instances(9).into_iter().filter(|(f, _, _)| f.is_triple()).collect();
    let bad: Vec<String> = triples
        .par_iter()
        .filter_map(|(f, p, t)| {
            let d = enumerate_positive_roots_descent(t).map(|r| r.positive_set());
            let b = enumerate_roots_box(t).map(|r| r.positive_set());
            match (d, b) {
                (Ok(d), Ok(b)) if d == b => None,
                (Ok(d), Ok(b)) => Some(format!("{f}{p:?}: descent {} box {}", d.len(), b.len())),
                (d, b) => Some(format!("{f}{p:?}: {:?} / {:?}", d.err(), b.err())),
            }
        })
        .collect();
    for b in bad {
        c.fail(b);
    }
    c.note(format!("{} triple trees with at most 9 vertices", triples.len()));
    c
}

fn tits_of_abs(t: &WeightedTree, y: &[i64]) -> i64 {
    let sq: i64 = y.iter().map(|c| c * c).sum();
    let cross: i64 = t.edges().iter().map(|&(a, b)| y[a].abs() * y[b].abs()).sum();
    sq - cross
}

/// Points of [-z, z] minus the origin where membership disagrees with the
/// Tits-form test.
fn tits_box_mismatches(t: &WeightedTree, z: &Divisor) -> Vec<Divisor> {
    let n = t.len();
    let first = z.coeffs()[0];
    (-first..=first)
        .into_par_iter()
        .flat_map_iter(|y0| {
            let mut bad = Vec::new();
            let mut y = vec![0i64; n];
            y[0] = y0;
            for (slot, &zi) in y.iter_mut().zip(z.coeffs()).skip(1) {
                *slot = -zi;
            }
            loop {
                let d = Divisor(y.clone());
                if !d.is_zero() {
                    let member = is_root(t, &d).unwrap_or(false);
                    let tits = d.is_sign_pure() && tits_of_abs(t, &y) == 1;
                    if member != tits {
                        bad.push(d);
                    }
                }
                let mut i = 1;
                loop {
                    if i == n {
                        return bad;
                    }
                    if y[i] < z.coeffs()[i] {
                        y[i] += 1;
                        break;
                    }
                    y[i] = -z.coeffs()[i];
                    i += 1;
                }
            }
        })
        .collect()
}

/// Membership is the Tits test on the box, and reflections keep the form.
pub fn check_tits(seed: u64, cases: usize) -> Check {
    let mut c = Check::new(5, "Tits form and reflections");
    let triples: Vec<_> = catalog_instances(9).into_iter().filter(|(f, _, _)| f.is_triple()).collect();
    let mut points = 0u128;
    for (f, p, t) in &triples {
        let Ok(z) = laufer_artin_cycle(t) else {
            c.fail(format!("{f}{p:?}: no Artin cycle"));
            continue;
        };
        points += z.coeffs().iter().map(|&x| (2 * x + 1) as u128).product::<u128>() - 1;
        for y in tits_box_mismatches(t, &z).into_iter().take(3) {
            c.fail(format!("{f}{p:?}: membership and Tits test disagree at {y}"));
        }
    }
    c.note(format!("{} triple trees, {points} box points", triples.len()));

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut done = 0;
    let mut attempts = 0;
    while done < cases && attempts < 100 * cases {
        attempts += 1;
        let (f, p, t) = triples.choose(&mut rng).expect("catalog is not empty");
        let Ok(roots) = enumerate_roots_box(t) else { continue };
        let pos: Vec<&Divisor> = roots.positive().collect();
        let y = pos[rng.gen_range(0..pos.len())];
        let a = DimensionVector::from_divisor(y);
        let bits = rng.gen::<u64>() & ((1u64 << t.edges().len()) - 1);
        let mut q = Quiver::from_bits(t.clone(), bits);
        let mut a = a;
        let before = tits_form(&q, &a);
        for _ in 0..rng.gen_range(1..=6) {
            let legal: Vec<usize> = (0..t.len()).filter(|&v| q.is_source(v) || q.is_sink(v)).collect();
            let Some(&v) = legal.choose(&mut rng) else { break };
            match reflect(&q, &a, v) {
                Ok((q2, a2)) => {
                    c.expect(
                        tits_form(&q2, &a2) == before,
                        format!("{f}{p:?}: reflection at {v} changed the Tits form of {a}"),
                    );
                    (q, a) = (q2, a2);
                    done += 1;
                }
                Err(_) => continue,
            }
            if done >= cases {
                break;
            }
        }
    }
    c.expect(done >= cases, format!("only {done} legal reflections sampled"));
    c.note(format!("{done} random reflections, seed {seed}"));
    c
}

fn all_orientations(t: &WeightedTree) -> Vec<Quiver> {
    Quiver::orientations(t).collect()
}

fn coordinate_product(n: usize) -> SparsePolynomial {
    SparsePolynomial::monomial(vec![1; n], 1)
}

fn is_normal_crossing(p: &SparsePolynomial, n: usize) -> bool {
    let prod = coordinate_product(n);
    *p == prod || *p == -&prod
}

/// Discriminants and certificates on the small reference cases.
pub fn check_lfd() -> Check {
    let mut c = Check::new(6, "linear free divisor certificates");
    for n in 1..=5 {
        let t = catalog_tree(Family::A, &[n]).expect("A_n");
        let a = DimensionVector::from_divisor(&Divisor::ones(t.len()));
        for q in all_orientations(&t) {
            let ok = discriminant(&q, &a, 12).is_ok_and(|d| is_normal_crossing(&d, n as usize - 1))
                && certify_lfd(&q, &a, CertifyMode::Direct).is_ok_and(|r| r.verdict);
            c.expect(ok, format!("A_{n} all-ones, arrows {:?}", q.arrows()));
        }
    }
    let d4 = catalog_tree(Family::D, &[4]).expect("D4");
    let a = DimensionVector::new(vec![1, 2, 1, 1]).expect("dims");
    for q in all_orientations(&d4) {
        let ok = discriminant(&q, &a, 12).is_ok_and(|d| {
            d.total_degree() == Some(6) && poly_is_reduced(&d).unwrap_or(false) && saito_check(&d, 6)
        });
        c.expect(ok, format!("D4 (2,1,1,1), arrows {:?}", q.arrows()));
    }
    for n in 5..=8 {
        let t = catalog_tree(Family::Hn, &[n]).expect("H_n");
        let a = DimensionVector::from_divisor(&Divisor::ones(t.len()));
        for q in all_orientations(&t) {
            let ok = discriminant(&q, &a, 12).is_ok_and(|d| is_normal_crossing(&d, t.edges().len()));
            c.expect(ok, format!("H_{n} all-ones, arrows {:?}", q.arrows()));
        }
    }
    for p in [[1, 2], [2, 2]] {
        let t = catalog_tree(Family::Bmn, &p).expect("B_mn");
        let a = DimensionVector::from_divisor(&Divisor::ones(t.len()));
        for q in all_orientations(&t) {
            let direct = certify_lfd(&q, &a, CertifyMode::Direct);
            let comp = certify_lfd(&q, &a, CertifyMode::Compositional);
            let ok = matches!((&direct, &comp), (Ok(d), Ok(k)) if d.verdict && k.verdict && d.degree == k.degree);
            c.expect(ok, format!("B_{p:?} all-ones direct/compositional, arrows {:?}", q.arrows()));
        }
    }
    match quasi_example_quiver(&[3, 4, 5]) {
        Ok(ex) => {
            let opts = CertifyOptions {
                mode: CertifyMode::Compositional,
                seed: ex.seed.clone(),
                ..CertifyOptions::default()
            };
            match certify_lfd_with(&ex.quiver, &ex.dims, &opts) {
                Ok(cert) => {
                    c.expect(cert.verdict, "example quiver: compositional verdict false");
                    let comp = cert.composition.as_ref().expect("compositional");
                    c.expect(comp.pieces.len() == 1, format!("example quiver: {} core pieces", comp.pieces.len()));
                    if let Some(piece) = comp.pieces.first() {
                        let d4 = piece.dynkin == Some(DynkinType::D(4)) && d4_center_has_two(&ex.quiver, piece);
                        c.expect(d4, format!("example quiver core {:?} {:?}", piece.dynkin, piece.dims));
                    }
                    c.note(format!(
                        "example quiver: N = {}, {} split-off factors, core {:?} {:?}",
                        cert.degree,
                        comp.split_off_count,
                        comp.pieces.first().and_then(|p| p.dynkin),
                        comp.pieces.first().map(|p| &p.dims)
                    ));
                }
                Err(e) => c.fail(format!("example quiver: {e}")),
            }
        }
        Err(e) => c.fail(format!("example quiver: {e}")),
    }
    c
}

/// The D4 piece has dimension 2 at its branch vertex and 1 elsewhere.
fn d4_center_has_two(q: &Quiver, piece: &crate::lfd::PieceCertificate) -> bool {
    piece.vertices.iter().zip(&piece.dims).all(|(&v, &d)| {
        let inside = q
            .tree()
            .neighbors(v)
            .iter()
            .filter(|u| piece.vertices.contains(u))
            .count();
        d == if inside == 3 { 2 } else { 1 }
    })
}

fn relation(a: (Family, &[i64]), b: (Family, &[i64])) -> Result<(Relation, Vec<Divisor>, Vec<Divisor>), String> {
    let t1 = catalog_tree(a.0, a.1).map_err(|e| e.to_string())?;
    let t2 = catalog_tree(b.0, b.1).map_err(|e| e.to_string())?;
    let map: Vec<usize> = (0..t1.len()).collect();
    let r = compare_root_systems(&t1, &t2, &map).map_err(|e| e.to_string())?;
    Ok((r.relation, r.only_first, r.only_second))
}

/// Containments between triple root systems and their Dynkin parents.
pub fn check_containments() -> Check {
    let mut c = Check::new(7, "root system containments");
    match (relation((Family::E71, &[]), (Family::E7, &[])), catalog_tree(Family::E7, &[])) {
        (Ok((rel, first, second)), Ok(e7)) => {
            let z = laufer_artin_cycle(&e7).expect("E7 is negative definite");
            let want: BTreeSet<Divisor> = [z.clone(), z.neg()].into_iter().collect();
            let got: BTreeSet<Divisor> = second.into_iter().collect();
            c.expect(
                rel == Relation::Subset && first.is_empty() && got == want,
                format!("E_{{7,1}} vs E7: {rel:?}, extra {:?}", got),
            );
        }
        (r, e) => c.fail(format!("E_{{7,1}} vs E7: {:?} {:?}", r.err(), e.err())),
    }
    for n in 1..=5 {
        for i in 1..=n {
            let r = relation((Family::Ani, &[n, i]), (Family::A, &[n]));
            c.expect(
                matches!(r, Ok((Relation::Equal, _, _))),
                format!("A_{{{n},{i}}} vs A_{n}: {:?}", r.map(|x| x.0)),
            );
        }
    }
    // D_{6,4} <= D_{6,3} <= D_{6,2} <= D_{6,1} = D_{6,6} = D_6
    let chain = [4, 3, 2, 1];
    for w in chain.windows(2) {
        let r = relation((Family::Dni, &[6, w[0]]), (Family::Dni, &[6, w[1]]));
        c.expect(
            matches!(r, Ok((Relation::Subset | Relation::Equal, _, _))),
            format!("D_{{6,{}}} vs D_{{6,{}}}: {:?}", w[0], w[1], r.map(|x| x.0)),
        );
    }
    for (a, b) in [((Family::Dni, &[6, 1][..]), (Family::Dni, &[6, 6][..])), ((Family::Dni, &[6, 6][..]), (Family::D, &[6][..]))] {
        let r = relation(a, b);
        c.expect(
            matches!(r, Ok((Relation::Equal, _, _))),
            format!("{}{:?} vs {}{:?}: {:?}", a.0, a.1, b.0, b.1, r.map(|x| x.0)),
        );
    }
    c
}

fn random_poly(rng: &mut ChaCha8Rng, nvars: usize) -> SparsePolynomial {
    let terms = rng.gen_range(0..=4);
    SparsePolynomial::from_terms(
        nvars,
        (0..terms).map(|_| {
            let e: Vec<u32> = (0..nvars).map(|_| rng.gen_range(0..=2)).collect();
            (e, BigInt::from(rng.gen_range(-5..=5)))
        }),
    )
}

fn random_linear(rng: &mut ChaCha8Rng, nvars: usize) -> SparsePolynomial {
    SparsePolynomial::from_terms(
        nvars,
        (0..nvars).map(|i| {
            let mut e = vec![0; nvars];
            e[i] = 1;
            (e, BigInt::from(rng.gen_range(-3..=3)))
        }),
    )
}

/// Laplace expansion along the first row.
pub fn cofactor_det(m: &[Vec<SparsePolynomial>], nvars: usize) -> SparsePolynomial {
    if m.is_empty() {
        return SparsePolynomial::one(nvars);
    }
    let mut acc = SparsePolynomial::zero(nvars);
    for (j, entry) in m[0].iter().enumerate() {
        let minor: Vec<Vec<SparsePolynomial>> = m[1..]
            .iter()
            .map(|row| row.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, x)| x.clone()).collect())
            .collect();
        let term = entry * &cofactor_det(&minor, nvars);
        acc = if j % 2 == 0 { &acc + &term } else { &acc - &term };
    }
    acc
}

/// Seeded random sweep over the algebraic and quiver invariants.
pub fn check_properties(seed: u64, cases: usize) -> Check {
    let mut c = Check::new(8, "seeded property sweep");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..cases {
        let (a, b, d) = (random_poly(&mut rng, 3), random_poly(&mut rng, 3), random_poly(&mut rng, 3));
        c.expect(&a + &b == &b + &a && &a * &b == &b * &a, format!("commutativity at {a}, {b}"));
        c.expect(&(&a * &b) * &d == &a * &(&b * &d), format!("associativity at {a}, {b}, {d}"));
        c.expect(&a * &(&b + &d) == &(&a * &b) + &(&a * &d), format!("distributivity at {a}, {b}, {d}"));
        let g = poly_gcd(&(&a * &d), &(&b * &d));
        let divides = |x: &SparsePolynomial| x.is_zero() || g.is_zero() || x.div_exact(&g).is_ok();
        c.expect(divides(&(&a * &d)) && divides(&(&b * &d)), format!("gcd {g} does not divide inputs"));
        if !d.is_zero() && !d.is_constant() {
            let sq = &d * &d;
            c.expect(poly_is_reduced(&sq) == Ok(false), format!("{sq} reported squarefree"));
        }
    }
    for k in 0..cases.min(60) {
        let n = k % 5 + 1;
        let m: Vec<Vec<SparsePolynomial>> =
            (0..n).map(|_| (0..n).map(|_| random_linear(&mut rng, 3)).collect()).collect();
        let bareiss = poly_det_bareiss(&m, 12);
        c.expect(bareiss.as_ref().ok() == Some(&cofactor_det(&m, 3)), format!("Bareiss and cofactor differ at size {n}"));
    }
    let lin: Vec<SparsePolynomial> = (0..4).map(|i| SparsePolynomial::var(4, i)).collect();
    let prod = lin.iter().fold(SparsePolynomial::one(4), |acc, x| &acc * x);
    c.expect(poly_is_reduced(&prod) == Ok(true), "product of distinct coordinates not reduced");

    let trees: Vec<_> = catalog_instances(8).into_iter().filter(|(f, _, _)| f.is_triple()).collect();
    for (f, p, t) in trees.iter().step_by(3) {
        let Ok(roots) = enumerate_roots_box(t) else {
            c.fail(format!("{f}{p:?}: enumeration failed"));
            continue;
        };
        let z = laufer_artin_cycle(t).ok();
        let closed = roots.iter().all(|y| roots.contains(&y.neg()) && is_root(t, y).unwrap_or(false));
        c.expect(closed, format!("{f}{p:?}: root set not closed or has non-roots"));
        c.expect(roots.highest() == z, format!("{f}{p:?}: highest root is not Z"));
        let all_simple = (0..t.len()).all(|i| roots.contains(&Divisor::unit(t.len(), i)));
        c.expect(all_simple, format!("{f}{p:?}: missing a simple root"));
    }
    for _ in 0..cases.min(200) {
        let (f, p, t) = trees.choose(&mut rng).expect("catalog is not empty");
        let bits = rng.gen::<u64>() & ((1u64 << t.edges().len()) - 1);
        let q = Quiver::from_bits(t.clone(), bits);
        let z = laufer_artin_cycle(t).expect("rational");
        let a = DimensionVector::from_divisor(&z);
        for v in 0..t.len() {
            if let Ok((q2, a2)) = reflect(&q, &a, v) {
                let back = reflect(&q2, &a2, v);
                c.expect(back == Ok((q.clone(), a.clone())), format!("{f}{p:?}: reflection at {v} is not an involution"));
            }
        }
        match reduce_to_core(&q, &a) {
            Ok(trail) => {
                let replayed = replay(&q, &a, &trail.steps);
                let ok = trail.is_complete()
                    && replayed.as_ref().is_ok_and(|(q2, a2)| a2 == &trail.final_dims && tits_form(q2, a2) == 1);
                c.expect(ok, format!("{f}{p:?}: reduction trail does not replay to a root"));
            }
            Err(e) => c.fail(format!("{f}{p:?}: {e}")),
        }
    }
    c.note(format!("{cases} cases, seed {seed}"));
    c
}

/// Every check, in order.
pub fn run_all(seed: u64) -> Vec<Check> {
    vec![
        check_root_counts(),
        check_e82_exclusions(),
        check_artin_cycles(),
        check_descent(),
        check_tits(seed, 1000),
        check_lfd(),
        check_containments(),
        check_properties(seed, 200),
    ]
}
