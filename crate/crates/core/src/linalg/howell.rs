//! Howell normal form over `Z/n`.
//!
//! Row spans over a ring with zero divisors are not determined by an echelon
//! form alone: over `Z/4` the row `[2, 1]` spans `[0, 2]` without either
//! appearing as a pivot row. The Howell form fixes this by closing every
//! pivot row under multiplication by the annihilator of its pivot, which
//! makes the form unique for a given row span and turns membership into a
//! single greedy reduction.

use crate::linalg::MatZn;
use crate::modulus::{xgcd, Modulus};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Pivot {
    pub row: usize,
    pub col: usize,
    /// Always a proper divisor of `n`.
    pub value: u64,
}

/// Howell form `h` of a matrix `a` plus a witness `transform` with
/// `transform * a == h`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HowellForm {
    pub h: MatZn,
    pub transform: MatZn,
    pub pivots: Vec<Pivot>,
}

#[derive(Clone)]
struct TrackedRow {
    vals: Vec<u64>,
    coeffs: Vec<u64>,
}

impl TrackedRow {
    fn is_zero(&self) -> bool {
        self.vals.iter().all(|&x| x == 0)
    }

    fn scaled(&self, m: &Modulus, r: u64) -> TrackedRow {
        TrackedRow {
            vals: self.vals.iter().map(|&x| m.mul(x, r)).collect(),
            coeffs: self.coeffs.iter().map(|&x| m.mul(x, r)).collect(),
        }
    }

    /// `self - q * other`
    fn sub_multiple(&mut self, m: &Modulus, q: u64, other: &TrackedRow) {
        for (a, &b) in self.vals.iter_mut().zip(&other.vals) {
            *a = m.sub(*a, m.mul(q, b));
        }
        for (a, &b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            *a = m.sub(*a, m.mul(q, b));
        }
    }

    fn combine(m: &Modulus, s: u64, x: &TrackedRow, t: u64, y: &TrackedRow) -> TrackedRow {
        let lin = |a: &[u64], b: &[u64]| -> Vec<u64> {
            a.iter().zip(b).map(|(&p, &q)| m.add(m.mul(s, p), m.mul(t, q))).collect()
        };
        TrackedRow { vals: lin(&x.vals, &y.vals), coeffs: lin(&x.coeffs, &y.coeffs) }
    }
}

/// Computes the Howell normal form of `a`.
///
/// Zero rows are dropped, so `h` has exactly one row per pivot; the zero
/// module gives a `0 x cols` matrix.
pub fn howell_form(a: &MatZn) -> HowellForm {
    let m = a.modulus().clone();
    let n = m.get();
    let (rows, cols) = a.shape();

    let mut pending: Vec<TrackedRow> = (0..rows)
        .map(|i| {
            let mut coeffs = vec![0; rows];
            coeffs[i] = 1;
            TrackedRow { vals: a.row(i).to_vec(), coeffs }
        })
        .filter(|r| !r.is_zero())
        .collect();
    let mut basis: Vec<(usize, TrackedRow)> = Vec::new();

    for col in 0..cols {
        let mut pivot: Option<TrackedRow> = None;
        let mut rest = Vec::with_capacity(pending.len());
        for row in pending.drain(..) {
            if row.vals[col] == 0 {
                rest.push(row);
                continue;
            }
            match pivot.take() {
                None => pivot = Some(row),
                Some(p) => {
                    let (a0, b0) = (p.vals[col] as i64, row.vals[col] as i64);
                    let (g, s, t) = xgcd(a0, b0);
                    let top = TrackedRow::combine(&m, m.reduce_signed(s), &p, m.reduce_signed(t), &row);
                    let bottom = TrackedRow::combine(&m, m.reduce_signed(-b0 / g), &p, m.reduce_signed(a0 / g), &row);
                    debug_assert_eq!(bottom.vals[col], 0);
                    if !bottom.is_zero() {
                        rest.push(bottom);
                    }
                    pivot = Some(top);
                }
            }
        }
        pending = rest;

        let Some(p) = pivot else { continue };
        let p = p.scaled(&m, m.normalizing_unit(p.vals[col]));
        let d = p.vals[col];
        debug_assert!(d != 0 && n % d == 0);

        let closure = p.scaled(&m, n / d);
        if !closure.is_zero() {
            pending.push(closure);
        }
        for (_, q) in basis.iter_mut() {
            let quot = q.vals[col] / d;
            if quot != 0 {
                q.sub_multiple(&m, quot, &p);
            }
        }
        basis.push((col, p));
    }
    debug_assert!(pending.iter().all(TrackedRow::is_zero));

    let h = MatZn::from_row_vecs(&m, cols, &basis.iter().map(|(_, r)| r.vals.clone()).collect::<Vec<_>>());
    let transform = MatZn::from_row_vecs(&m, rows, &basis.iter().map(|(_, r)| r.coeffs.clone()).collect::<Vec<_>>());
    let pivots =
        basis.iter().enumerate().map(|(row, (col, r))| Pivot { row, col: *col, value: r.vals[*col] }).collect();
    HowellForm { h, transform, pivots }
}

impl HowellForm {
    /// Greedy reduction of `v` against the pivot rows.
    ///
    /// Returns the coefficients `c` with `v - c * h` minimal; `v` lies in the
    /// row span exactly when the returned remainder is zero.
    pub fn reduce(&self, v: &[u64]) -> (Vec<u64>, Vec<u64>) {
        let m = self.h.modulus();
        assert_eq!(v.len(), self.h.cols(), "vector length");
        let mut rem = v.iter().map(|&x| m.reduce(x)).collect::<Vec<_>>();
        let mut coeffs = vec![0; self.pivots.len()];
        for piv in &self.pivots {
            let x = rem[piv.col];
            if x % piv.value != 0 {
                continue;
            }
            let q = x / piv.value;
            if q == 0 {
                continue;
            }
            coeffs[piv.row] = q;
            for (c, r) in rem.iter_mut().zip(self.h.row(piv.row)) {
                *c = m.sub(*c, m.mul(q, *r));
            }
        }
        (rem, coeffs)
    }

    pub fn contains(&self, v: &[u64]) -> bool {
        self.reduce(v).0.iter().all(|&x| x == 0)
    }

    /// Number of elements of the row span.
    pub fn span_size(&self) -> u128 {
        let n = self.h.modulus().get() as u128;
        self.pivots.iter().map(|p| n / p.value as u128).product()
    }
}
