use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{howell_form, MatZn};

/// Returns some `x` with `a * x == b`, or `None` when the system has no
/// solution over `Z/n`.
pub fn solve_linear(a: &MatZn, b: &[u64]) -> Result<Option<Vec<u64>>> {
    if b.len() != a.rows() {
        return Err(Error::DimensionMismatch(format!(
            "right-hand side has length {} but matrix has {} rows",
            b.len(),
            a.rows()
        )));
    }
    // b is in the column span of a iff b^T is in the row span of a^T.
    let hf = howell_form(&a.transpose());
    let (rem, coeffs) = hf.reduce(b);
    if rem.iter().any(|&x| x != 0) {
        return Ok(None);
    }
    let x = hf.transform.transpose().apply(&coeffs);
    debug_assert_eq!(a.apply(&x), b.iter().map(|&v| a.modulus().reduce(v)).collect::<Vec<_>>());
    Ok(Some(x))
}

/// Generators (as rows) of `{x : a * x == 0}`, in Howell form.
pub fn kernel_basis(a: &MatZn) -> MatZn {
    let m = a.modulus();
    let (rows, cols) = a.shape();
    let aug = a.transpose().hstack(&MatZn::identity(m, cols));
    let hf = howell_form(&aug);
    let kernel_rows: Vec<Vec<u64>> =
        hf.pivots.iter().filter(|p| p.col >= rows).map(|p| hf.h.row(p.row)[rows..].to_vec()).collect();
    MatZn::from_row_vecs(m, cols, &kernel_rows)
}

/// Evidence that `a * x == b` has no solution: a row vector `y` with
/// `y * a == 0` but `y . b != 0`.
///
/// Over `Z/n` such a `y` exists for every unsolvable system because `Z/n` is
/// self-injective.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Infeasibility {
    pub functional: Vec<u64>,
}

impl Infeasibility {
    pub fn verify(&self, a: &MatZn, b: &[u64]) -> bool {
        let m = a.modulus();
        if self.functional.len() != a.rows() || b.len() != a.rows() {
            return false;
        }
        let ya = a.transpose().apply(&self.functional);
        let yb = self.functional.iter().zip(b).fold(0, |acc, (&y, &v)| m.add(acc, m.mul(y, m.reduce(v))));
        ya.iter().all(|&x| x == 0) && yb != 0
    }
}

/// Finds an [`Infeasibility`] certificate for an unsolvable system.
pub fn infeasibility_certificate(a: &MatZn, b: &[u64]) -> Option<Infeasibility> {
    let left = kernel_basis(&a.transpose());
    (0..left.rows()).map(|r| Infeasibility { functional: left.row(r).to_vec() }).find(|cert| cert.verify(a, b))
}
