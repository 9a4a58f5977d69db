//! Finite `Z/n`-modules presented by generators and relations.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::linalg::MatZn;
use crate::modulus::{gcd, Modulus};

/// Invariant factors `d_1 | d_2 | ... | d_k` of a finite `Z/n`-module
/// `Z/d_1 ⊕ ... ⊕ Z/d_k`. Every factor is `> 1` and divides `n`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct InvariantFactors {
    pub modulus: Modulus,
    pub factors: Vec<u64>,
}

impl InvariantFactors {
    pub fn zero(modulus: &Modulus) -> Self {
        InvariantFactors { modulus: modulus.clone(), factors: Vec::new() }
    }

    /// Normalizes a list of cyclic orders (any order, each dividing `n`,
    /// ones allowed) into a divisibility chain.
    pub fn from_cyclic_orders(modulus: &Modulus, orders: &[u64]) -> Self {
        let mut chains: Vec<Vec<u64>> = Vec::new();
        for &(p, _) in modulus.factors() {
            let mut powers: Vec<u64> = orders
                .iter()
                .map(|&d| {
                    let mut pk = 1;
                    let mut d = gcd(d, modulus.get());
                    while d % p == 0 {
                        d /= p;
                        pk *= p;
                    }
                    pk
                })
                .filter(|&pk| pk > 1)
                .collect();
            powers.sort_unstable();
            chains.push(powers);
        }
        let len = chains.iter().map(Vec::len).max().unwrap_or(0);
        // Align the p-power lists at their largest elements.
        let factors = (0..len)
            .map(|i| {
                chains
                    .iter()
                    .map(|c| {
                        let offset = len - c.len();
                        if i >= offset {
                            c[i - offset]
                        } else {
                            1
                        }
                    })
                    .product()
            })
            .collect();
        InvariantFactors { modulus: modulus.clone(), factors }
    }

    pub fn is_zero(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn order(&self) -> u128 {
        self.factors.iter().map(|&d| d as u128).product()
    }

    /// Number of cyclic summands isomorphic to `Z/n`.
    pub fn free_rank(&self) -> usize {
        self.factors.iter().filter(|&&d| d == self.modulus.get()).count()
    }
}

impl fmt::Debug for InvariantFactors {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} over Z/{}", self.factors, self.modulus.get())
    }
}

/// Diagonal of an integer Smith-style reduction of `rows`, a matrix with
/// `cols` columns. The diagonal need not form a divisibility chain.
fn integer_diagonal(mut mat: Vec<Vec<i128>>, cols: usize, n: i128) -> Vec<i128> {
    let mut diag = Vec::new();
    for t in 0..cols {
        // Restrict attention to columns t.. ; the lattice always contains
        // n * Z^(cols - t), so entries may be reduced mod n as long as the
        // n-multiples of the unit vectors stay present.
        for row in mat.iter_mut() {
            for x in row[t..].iter_mut() {
                *x = x.rem_euclid(n);
            }
        }
        mat.retain(|r| r[t..].iter().any(|&x| x != 0));
        for j in t..cols {
            let mut r = vec![0i128; cols];
            r[j] = n;
            mat.push(r);
        }

        loop {
            // Smallest nonzero entry in the active block becomes the pivot.
            let (pr, pc) = mat
                .iter()
                .enumerate()
                .flat_map(|(i, r)| (t..cols).map(move |j| (i, j, r[j])))
                .filter(|&(_, _, x)| x != 0)
                .min_by_key(|&(_, _, x)| x.abs())
                .map(|(i, j, _)| (i, j))
                .expect("lattice contains n * e_j");
            mat.swap(0, pr);
            for row in mat.iter_mut() {
                row.swap(t, pc);
            }
            let p = mat[0][t];
            let mut clean = true;
            for i in 1..mat.len() {
                let q = mat[i][t].div_euclid(p);
                if q != 0 {
                    let pivot_row = mat[0].clone();
                    for (x, y) in mat[i][t..].iter_mut().zip(&pivot_row[t..]) {
                        *x -= q * y;
                    }
                }
                if mat[i][t] != 0 {
                    clean = false;
                }
            }
            for j in t + 1..cols {
                let q = mat[0][j].div_euclid(p);
                if q != 0 {
                    for row in mat.iter_mut() {
                        let v = row[t];
                        row[j] -= q * v;
                    }
                }
                if mat[0][j] != 0 {
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        diag.push(mat[0][t].abs());
        mat.remove(0);
    }
    diag
}

/// Invariant factors of `(Z/n)^k / rowspan(relations)`.
///
/// The relation matrix is lifted to the integers, `n * I_k` is appended and
/// the integer Smith diagonal is read off.
pub fn module_structure(k: usize, relations: &MatZn) -> InvariantFactors {
    assert_eq!(relations.cols(), k, "relation matrix must have k columns");
    let m = relations.modulus();
    let n = m.get() as i128;
    let rows: Vec<Vec<i128>> =
        (0..relations.rows()).map(|r| relations.row(r).iter().map(|&x| x as i128).collect()).collect();
    let diag = integer_diagonal(rows, k, n);
    let orders: Vec<u64> = diag.into_iter().map(|d| d as u64).collect();
    InvariantFactors::from_cyclic_orders(m, &orders)
}

/// Whether `⊕ Z/d_i` is a projective `Z/n`-module, i.e. every `d_i` is a
/// unitary divisor of `n`.
pub fn is_projective(module: &InvariantFactors) -> bool {
    let n = module.modulus.get();
    module.factors.iter().all(|&d| gcd(d, n / d) == 1)
}
