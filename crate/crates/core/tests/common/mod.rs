//! Brute-force oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeSet;

use ghzn_core::{ChainComplex, ChainMap, MatZn, Modulus};

pub fn z(n: u64) -> Modulus {
    Modulus::new(n).unwrap()
}

/// Every vector in `(Z/n)^len`, in lexicographic order.
pub fn vectors(n: u64, len: usize) -> impl Iterator<Item = Vec<u64>> {
    let total = (n as u128).pow(len as u32);
    (0..total).map(move |mut k| {
        let mut v = vec![0; len];
        for slot in v.iter_mut().rev() {
            *slot = (k % n as u128) as u64;
            k /= n as u128;
        }
        v
    })
}

/// All matrices of a given shape.
pub fn matrices(m: &Modulus, rows: usize, cols: usize) -> impl Iterator<Item = MatZn> + '_ {
    vectors(m.get(), rows * cols).map(move |e| MatZn::from_entries(m, rows, cols, e).unwrap())
}

/// Row span of `a`, enumerated.
pub fn span(a: &MatZn) -> BTreeSet<Vec<u64>> {
    let m = a.modulus();
    vectors(m.get(), a.rows())
        .map(|c| {
            let mut v = vec![0; a.cols()];
            for (r, &cr) in c.iter().enumerate() {
                for (j, x) in v.iter_mut().enumerate() {
                    *x = m.add(*x, m.mul(cr, a.get(r, j)));
                }
            }
            v
        })
        .collect()
}

/// Image of `a` acting on column vectors.
pub fn image(a: &MatZn) -> BTreeSet<Vec<u64>> {
    vectors(a.modulus().get(), a.cols()).map(|v| a.apply(&v)).collect()
}

/// `{v : a v = 0}`.
pub fn kernel(a: &MatZn) -> Vec<Vec<u64>> {
    vectors(a.modulus().get(), a.cols()).filter(|v| a.apply(v).iter().all(|&x| x == 0)).collect()
}

/// `|H_i(x)|` by enumerating cycles and boundaries.
pub fn homology_order(x: &ChainComplex, i: i64) -> u128 {
    kernel(&x.d(i)).len() as u128 / image(&x.d(i + 1)).len() as u128
}

pub fn homotopy_matches(f: &ChainMap, s: &[MatZn]) -> bool {
    let (x, y) = (f.source(), f.target());
    let m = x.modulus();
    let s_at = |i: i64| -> MatZn {
        if i < x.lo() || i > x.hi() {
            MatZn::zeros(m, y.rank(i + 1), x.rank(i))
        } else {
            s[(i - x.lo()) as usize].clone()
        }
    };
    x.degrees().all(|i| y.d(i + 1).mul(&s_at(i)).add(&s_at(i - 1).mul(&x.d(i))) == f.component(i))
}

/// Whether a degree-0 map is null-homotopic, by trying every homotopy.
pub fn brute_null_homotopic(f: &ChainMap) -> bool {
    let (x, y) = (f.source(), f.target());
    let m = x.modulus();
    let shapes: Vec<(usize, usize)> = x.degrees().map(|i| (y.rank(i + 1), x.rank(i))).collect();
    let total: usize = shapes.iter().map(|&(r, c)| r * c).sum();
    vectors(m.get(), total).any(|e| {
        let mut off = 0;
        let s: Vec<MatZn> = shapes
            .iter()
            .map(|&(r, c)| {
                let block = MatZn::from_entries(m, r, c, e[off..off + r * c].to_vec()).unwrap();
                off += r * c;
                block
            })
            .collect();
        homotopy_matches(f, &s)
    })
}

/// Every degree-0 chain map `x -> y`.
pub fn all_chain_maps(x: &ChainComplex, y: &ChainComplex) -> Vec<ChainMap> {
    let m = x.modulus();
    let shapes: Vec<(usize, usize)> = x.degrees().map(|i| (y.rank(i), x.rank(i))).collect();
    let total: usize = shapes.iter().map(|&(r, c)| r * c).sum();
    vectors(m.get(), total)
        .filter_map(|e| {
            let mut off = 0;
            let comps = shapes
                .iter()
                .map(|&(r, c)| {
                    let block = MatZn::from_entries(m, r, c, e[off..off + r * c].to_vec()).unwrap();
                    off += r * c;
                    block
                })
                .collect();
            ChainMap::new(x, y, 0, comps).ok()
        })
        .collect()
}

/// Complexes of total rank at most 3 over at most 3 degrees, covering
/// spheres, two-term complexes and three-term complexes.
pub fn small_complexes(m: &Modulus) -> Vec<ChainComplex> {
    let n = m.get();
    let mut out = vec![ChainComplex::sphere(m), ChainComplex::sphere_at(m, 1)];
    for r in 0..n {
        out.push(ChainComplex::two_term(m, r));
    }
    for a in 0..n {
        for b in 0..n {
            let d1 = MatZn::from_entries(m, 1, 1, vec![a]).unwrap();
            let d2 = MatZn::from_entries(m, 1, 1, vec![b]).unwrap();
            if let Ok(x) = ChainComplex::new(m, 0, vec![1, 1, 1], vec![MatZn::zeros(m, 0, 1), d1, d2]) {
                if a != 0 && b != 0 {
                    out.push(x);
                }
            }
        }
    }
    // Rank 2 in degree 0.
    for (a, b) in [(1, 0), (2, 2), (0, 2), (1, 2)] {
        let d1 = MatZn::from_entries(m, 2, 1, vec![a % n, b % n]).unwrap();
        out.push(ChainComplex::new(m, 0, vec![2, 1], vec![MatZn::zeros(m, 0, 2), d1]).unwrap());
    }
    out
}
