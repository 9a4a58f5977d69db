mod common;

use std::collections::BTreeMap;

use common::{kernel, matrices, span, vectors, z};
use ghzn_core::linalg::{
    howell_form, infeasibility_certificate, is_projective, kernel_basis, module_structure, solve_linear,
    InvariantFactors,
};
use ghzn_core::modulus::gcd;
use ghzn_core::{MatZn, Modulus};
use proptest::prelude::*;

const SHAPES: [(usize, usize); 4] = [(1, 1), (1, 2), (2, 1), (2, 2)];

#[test]
fn howell_form_is_a_canonical_span_invariant() {
    for n in 2..=4 {
        let m = z(n);
        let mut by_span: BTreeMap<Vec<Vec<u64>>, MatZn> = BTreeMap::new();
        for a in matrices(&m, 2, 2) {
            let hf = howell_form(&a);
            assert_eq!(hf.transform.mul(&a), hf.h);
            let s: Vec<Vec<u64>> = span(&a).into_iter().collect();
            assert_eq!(span(&hf.h).into_iter().collect::<Vec<_>>(), s);
            assert_eq!(hf.span_size(), s.len() as u128);
            match by_span.get(&s) {
                Some(h) => assert_eq!(h, &hf.h, "two forms for one span over Z/{n}: {a:?}"),
                None => {
                    by_span.insert(s, hf.h);
                }
            }
        }
    }
}

#[test]
fn solver_agrees_with_brute_force() {
    for n in 2..=6 {
        let m = z(n);
        for (r, c) in SHAPES {
            for a in matrices(&m, r, c) {
                let reachable: std::collections::BTreeSet<Vec<u64>> = vectors(n, c).map(|x| a.apply(&x)).collect();
                for b in vectors(n, r) {
                    match solve_linear(&a, &b).unwrap() {
                        Some(x) => assert_eq!(a.apply(&x), b),
                        None => {
                            assert!(!reachable.contains(&b), "missed solution for {a:?} x = {b:?}");
                            let cert = infeasibility_certificate(&a, &b).expect("certificate");
                            assert!(cert.verify(&a, &b));
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn kernel_generators_span_the_kernel() {
    for n in 2..=6 {
        let m = z(n);
        for (r, c) in SHAPES {
            for a in matrices(&m, r, c) {
                let k = kernel_basis(&a);
                let mut brute = kernel(&a);
                brute.sort();
                assert_eq!(span(&k).into_iter().collect::<Vec<_>>(), brute, "{a:?}");
            }
        }
    }
}

/// `|{x : d x ∈ span R}| / |span R|`, the number of elements of the
/// presented module killed by `d`.
fn brute_torsion_count(relations: &MatZn, d: u64) -> u128 {
    let m = relations.modulus();
    let s = span(relations);
    let killed = vectors(m.get(), relations.cols())
        .filter(|x| s.contains(&x.iter().map(|&v| m.mul(v, d)).collect::<Vec<_>>()))
        .count();
    killed as u128 / s.len() as u128
}

fn torsion_count(f: &InvariantFactors, d: u64) -> u128 {
    f.factors.iter().map(|&di| gcd(di, d) as u128).product()
}

#[test]
fn module_structure_matches_torsion_counts() {
    for n in [2, 4, 6, 8, 9, 12] {
        let m = z(n);
        for k in 1..=2 {
            for rows in 0..=2 {
                for rel in matrices(&m, rows, k) {
                    let f = module_structure(k, &rel);
                    for d in m.divisors() {
                        assert_eq!(torsion_count(&f, d), brute_torsion_count(&rel, d), "{rel:?} d={d}");
                    }
                    for w in f.factors.windows(2) {
                        assert_eq!(w[1] % w[0], 0);
                    }
                }
            }
        }
    }
}

/// `Z/d` is projective over `Z/n` iff `Z/n -> Z/d` has a section.
fn cyclic_splits(m: &Modulus, d: u64) -> bool {
    (0..m.get()).any(|e| m.mul(d, e) == 0 && e % d == 1 % d)
}

#[test]
fn projectivity_matches_splitting() {
    for n in 2..=30 {
        let m = z(n);
        let divs = m.divisors();
        for &a in &divs {
            for &b in &divs {
                let module = InvariantFactors::from_cyclic_orders(&m, &[a, b]);
                let splits = cyclic_splits(&m, a) && cyclic_splits(&m, b);
                assert_eq!(is_projective(&module), splits, "Z/{a} + Z/{b} over Z/{n}");
            }
        }
    }
}

fn matrix_strategy() -> impl Strategy<Value = MatZn> {
    (2u64..60, 0usize..5, 1usize..5).prop_flat_map(|(n, r, c)| {
        prop::collection::vec(0..n, r * c).prop_map(move |e| MatZn::from_entries(&z(n), r, c, e).unwrap())
    })
}

/// A random invertible matrix built from elementary operations.
fn unimodular(m: &Modulus, size: usize, ops: &[(usize, usize, u64, u64)]) -> MatZn {
    let mut u = MatZn::identity(m, size);
    if size == 0 {
        return u;
    }
    for &(i, j, q, unit) in ops {
        let (i, j) = (i % size, j % size);
        if i != j {
            let mut e = MatZn::identity(m, size);
            e.set(i, j, m.reduce(q));
            u = e.mul(&u);
        }
        let mut s = MatZn::identity(m, size);
        if m.is_unit(unit % m.get()) {
            s.set(i, i, unit % m.get());
        }
        u = s.mul(&u);
    }
    u
}

proptest! {
    #[test]
    fn howell_transform_and_span(a in matrix_strategy()) {
        let hf = howell_form(&a);
        prop_assert_eq!(hf.transform.mul(&a), hf.h.clone());
        for r in 0..a.rows() {
            prop_assert!(hf.contains(a.row(r)));
        }
        prop_assert_eq!(howell_form(&hf.h).h, hf.h);
    }

    #[test]
    fn solutions_and_certificates(a in matrix_strategy(), seed in prop::collection::vec(0u64..1000, 4)) {
        let m = a.modulus().clone();
        let b: Vec<u64> = (0..a.rows()).map(|i| m.reduce(seed[i % 4] * (i as u64 + 1))).collect();
        match solve_linear(&a, &b).unwrap() {
            Some(x) => prop_assert_eq!(a.apply(&x), b),
            None => prop_assert!(infeasibility_certificate(&a, &b).unwrap().verify(&a, &b)),
        }
    }

    #[test]
    fn kernel_rows_are_annihilated(a in matrix_strategy()) {
        let k = kernel_basis(&a);
        for r in 0..k.rows() {
            prop_assert!(a.apply(k.row(r)).iter().all(|&x| x == 0));
        }
    }

    #[test]
    fn module_structure_is_invariant(
        a in matrix_strategy(),
        row_ops in prop::collection::vec((0usize..5, 0usize..5, 0u64..100, 0u64..100), 0..6),
        col_ops in prop::collection::vec((0usize..5, 0usize..5, 0u64..100, 0u64..100), 0..6),
    ) {
        let m = a.modulus().clone();
        let base = module_structure(a.cols(), &a);
        let p = unimodular(&m, a.rows(), &row_ops);
        let q = unimodular(&m, a.cols(), &col_ops);
        let moved = p.mul(&a).mul(&q);
        prop_assert_eq!(module_structure(a.cols(), &moved), base.clone());
        let size = howell_form(&a).span_size();
        prop_assert_eq!(base.order() * size, (m.get() as u128).pow(a.cols() as u32));
    }
}
