//! Constructions on complexes: suspension, cones, sums, tensor products and
//! duals.

use crate::complex::{ChainComplex, ChainMap};
use crate::error::{Error, Result};
use crate::linalg::MatZn;

fn same_modulus(x: &ChainComplex, y: &ChainComplex) -> Result<()> {
    if x.modulus() != y.modulus() {
        return Err(Error::ModulusMismatch(x.modulus().get(), y.modulus().get()));
    }
    Ok(())
}

/// `Σ^k X`: `(Σ^k X)_i = X_{i-k}` with differential `(-1)^k d`.
pub fn suspend(x: &ChainComplex, k: i64) -> ChainComplex {
    let sign = x.modulus().sign(k);
    ChainComplex::assemble(x.modulus(), x.lo() + k, x.hi() + k, |i| x.rank(i - k), |i| x.d(i - k).scale(sign))
}

/// Mapping cone of a degree-0 map with its structure maps.
#[derive(Debug, Clone)]
pub struct Cone {
    pub complex: ChainComplex,
    /// `Y -> cone(f)`
    pub inclusion: ChainMap,
    /// `cone(f) -> ΣX`
    pub projection: ChainMap,
}

/// `cone(f)_i = X_{i-1} ⊕ Y_i` with `d(x, y) = (-dx, f x + dy)`.
pub fn cone(f: &ChainMap) -> Result<Cone> {
    if f.degree() != 0 {
        return Err(Error::Precondition(format!("cone needs a degree-0 map, got degree {}", f.degree())));
    }
    let (x, y) = (f.source(), f.target());
    let m = x.modulus();
    let lo = (x.lo() + 1).min(y.lo());
    let hi = (x.hi() + 1).max(y.hi());
    let rank = |i: i64| x.rank(i - 1) + y.rank(i);
    let complex = ChainComplex::assemble(m, lo, hi, rank, |i| {
        let mut d = MatZn::zeros(m, rank(i - 1), rank(i));
        d.set_block(0, 0, &x.d(i - 1).neg());
        d.set_block(x.rank(i - 2), 0, &f.component(i - 1));
        d.set_block(x.rank(i - 2), x.rank(i - 1), &y.d(i));
        d
    });
    let inclusion = ChainMap::assemble(y, &complex, 0, |i| {
        let mut c = MatZn::zeros(m, rank(i), y.rank(i));
        c.set_block(x.rank(i - 1), 0, &MatZn::identity(m, y.rank(i)));
        c
    });
    let shifted = suspend(x, 1);
    let projection = ChainMap::assemble(&complex, &shifted, 0, |i| {
        let mut c = MatZn::zeros(m, x.rank(i - 1), rank(i));
        c.set_block(0, 0, &MatZn::identity(m, x.rank(i - 1)));
        c
    });
    Ok(Cone { complex, inclusion, projection })
}

/// `X ⊕ Y` together with its four structure maps.
#[derive(Debug, Clone)]
pub struct Biproduct {
    pub complex: ChainComplex,
    pub inc_left: ChainMap,
    pub inc_right: ChainMap,
    pub proj_left: ChainMap,
    pub proj_right: ChainMap,
}

pub fn direct_sum(x: &ChainComplex, y: &ChainComplex) -> Result<ChainComplex> {
    same_modulus(x, y)?;
    let lo = x.lo().min(y.lo());
    let hi = x.hi().max(y.hi());
    Ok(ChainComplex::assemble(x.modulus(), lo, hi, |i| x.rank(i) + y.rank(i), |i| x.d(i).block_diag(&y.d(i))))
}

pub fn biproduct(x: &ChainComplex, y: &ChainComplex) -> Result<Biproduct> {
    let complex = direct_sum(x, y)?;
    let m = x.modulus();
    let inc = |z: &ChainComplex, offset: &dyn Fn(i64) -> usize| {
        ChainMap::assemble(z, &complex, 0, |i| {
            let mut c = MatZn::zeros(m, complex.rank(i), z.rank(i));
            c.set_block(offset(i), 0, &MatZn::identity(m, z.rank(i)));
            c
        })
    };
    let inc_left = inc(x, &|_| 0);
    let inc_right = inc(y, &|i| x.rank(i));
    let proj = |z: &ChainComplex, offset: &dyn Fn(i64) -> usize| {
        ChainMap::assemble(&complex, z, 0, |i| {
            let mut c = MatZn::zeros(m, z.rank(i), complex.rank(i));
            c.set_block(0, offset(i), &MatZn::identity(m, z.rank(i)));
            c
        })
    };
    let proj_left = proj(x, &|_| 0);
    let proj_right = proj(y, &|i| x.rank(i));
    Ok(Biproduct { complex, inc_left, inc_right, proj_left, proj_right })
}

/// Block layout of `(X ⊗ Y)_m`: `(p, q, offset, size)` with descending `p`.
pub fn tensor_layout(x: &ChainComplex, y: &ChainComplex, m: i64) -> Vec<(i64, i64, usize, usize)> {
    let p_hi = x.hi().min(m - y.lo());
    let p_lo = x.lo().max(m - y.hi());
    let mut out = Vec::new();
    let mut offset = 0;
    let mut p = p_hi;
    while p >= p_lo {
        let q = m - p;
        let size = x.rank(p) * y.rank(q);
        out.push((p, q, offset, size));
        offset += size;
        p -= 1;
    }
    out
}

fn block_offset(layout: &[(i64, i64, usize, usize)], p: i64) -> Option<usize> {
    layout.iter().find(|b| b.0 == p).map(|b| b.2)
}

/// `X ⊗ Y` with `d(a ⊗ b) = da ⊗ b + (-1)^p a ⊗ db`.
pub fn tensor(x: &ChainComplex, y: &ChainComplex) -> Result<ChainComplex> {
    same_modulus(x, y)?;
    let md = x.modulus();
    let rank = |m: i64| tensor_layout(x, y, m).iter().map(|b| b.3).sum::<usize>();
    Ok(ChainComplex::assemble(md, x.lo() + y.lo(), x.hi() + y.hi(), rank, |m| {
        let src = tensor_layout(x, y, m);
        let dst = tensor_layout(x, y, m - 1);
        let mut d = MatZn::zeros(md, rank(m - 1), rank(m));
        for &(p, q, col, _) in &src {
            if let Some(row) = block_offset(&dst, p - 1) {
                d.set_block(row, col, &x.d(p).kron(&MatZn::identity(md, y.rank(q))));
            }
            if let Some(row) = block_offset(&dst, p) {
                let block = MatZn::identity(md, x.rank(p)).kron(&y.d(q)).scale(md.sign(p));
                d.set_block(row, col, &block);
            }
        }
        d
    }))
}

/// Tensor product of two degree-0 maps, `(f ⊗ g)(a ⊗ b) = f a ⊗ g b`.
pub fn tensor_maps(f: &ChainMap, g: &ChainMap) -> Result<ChainMap> {
    if f.degree() != 0 || g.degree() != 0 {
        return Err(Error::Precondition("tensor of maps requires degree 0".into()));
    }
    let src = tensor(f.source(), g.source())?;
    let tgt = tensor(f.target(), g.target())?;
    let md = src.modulus().clone();
    Ok(ChainMap::assemble(&src, &tgt, 0, |m| {
        let s_layout = tensor_layout(f.source(), g.source(), m);
        let t_layout = tensor_layout(f.target(), g.target(), m);
        let mut c = MatZn::zeros(&md, tgt.rank(m), src.rank(m));
        for &(p, _q, col, _) in &s_layout {
            if let Some(row) = block_offset(&t_layout, p) {
                c.set_block(row, col, &f.component(p).kron(&g.component(m - p)));
            }
        }
        c
    }))
}

/// Linear dual `DX`: `(DX)_i = (X_{-i})^*` with differential the plain
/// transpose, so that `D(DX) = X` and `D(ΣX) = Σ^{-1} DX` hold exactly.
pub fn dualize(x: &ChainComplex) -> ChainComplex {
    ChainComplex::assemble(x.modulus(), -x.hi(), -x.lo(), |i| x.rank(-i), |i| x.d(1 - i).transpose())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modulus::Modulus;

    fn z(n: u64) -> Modulus {
        Modulus::new(n).unwrap()
    }

    #[test]
    fn suspension_round_trip() {
        let m = z(6);
        let x = ChainComplex::two_term(&m, 2);
        assert_eq!(suspend(&x, 0), x);
        assert_eq!(suspend(&suspend(&x, 1), -1), x);
        let s1 = suspend(&ChainComplex::sphere(&m), 1);
        assert_eq!((s1.lo(), s1.hi(), s1.rank(1)), (1, 1, 1));
    }

    #[test]
    fn cone_of_scalar_is_two_term() {
        let m = z(4);
        let s = ChainComplex::sphere(&m);
        let c = cone(&ChainMap::scalar(&s, 2)).unwrap();
        assert_eq!(c.complex, ChainComplex::two_term(&m, 2));
        assert_eq!(c.inclusion.validate(), Ok(()));
        assert_eq!(c.projection.validate(), Ok(()));
    }

    #[test]
    fn tensor_ranks() {
        let m = z(4);
        let c = ChainComplex::two_term(&m, 2);
        let t = tensor(&c, &c).unwrap();
        assert_eq!((t.rank(2), t.rank(1), t.rank(0)), (1, 2, 1));
        assert_eq!(t.validate(), Ok(()));
        let s = ChainComplex::sphere(&m);
        assert_eq!(tensor(&s, &c).unwrap(), c);
        assert_eq!(tensor(&c, &s).unwrap(), c);
    }

    #[test]
    fn dual_laws() {
        let m = z(4);
        let s = ChainComplex::sphere(&m);
        assert_eq!(dualize(&s), s);
        let c = ChainComplex::two_term(&m, 2);
        assert_eq!(dualize(&dualize(&c)), c);
        assert_eq!(dualize(&suspend(&c, 1)), suspend(&dualize(&c), -1));
    }

    #[test]
    fn direct_sum_ranks_add() {
        let m = z(5);
        let x = ChainComplex::two_term(&m, 3);
        let y = suspend(&ChainComplex::sphere(&m), 2);
        let s = direct_sum(&x, &y).unwrap();
        assert_eq!((s.lo(), s.hi()), (0, 2));
        assert_eq!((s.rank(0), s.rank(1), s.rank(2)), (1, 1, 1));
        assert_eq!(direct_sum(&x, &ChainComplex::zero(&m)).unwrap(), x);
        assert!(matches!(direct_sum(&x, &ChainComplex::sphere(&z(7))), Err(Error::ModulusMismatch(5, 7))));
    }
}
