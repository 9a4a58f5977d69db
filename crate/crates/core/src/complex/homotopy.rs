//! Deciding null-homotopy by one linear system over `Z/n`.
//!
//! For a degree-0 map `f: X -> Y` the unknowns are the entries of every
//! `s[i]: X_i -> Y_{i+1}` and the equations are `f[i] = d s[i] + s[i-1] d`,
//! one per entry of every `f[i]`.

use crate::complex::{homology, ChainComplex, ChainMap, Homotopy};
use crate::linalg::{infeasibility_certificate, solve_linear, Infeasibility, MatZn};

/// The assembled system `matrix * s = rhs`.
#[derive(Debug, Clone)]
pub struct HomotopySystem {
    pub matrix: MatZn,
    pub rhs: Vec<u64>,
    /// `(degree, offset, rows, cols)` of each unknown block `s[degree]`.
    pub blocks: Vec<(i64, usize, usize, usize)>,
}

impl HomotopySystem {
    /// Builds the system for a degree-0 map (callers reduce other degrees
    /// with [`ChainMap::to_degree_zero`]).
    pub fn build(f: &ChainMap) -> Self {
        assert_eq!(f.degree(), 0, "homotopy systems are built for degree-0 maps");
        let (x, y) = (f.source(), f.target());
        let md = x.modulus();

        let mut blocks = Vec::new();
        let mut unknowns = 0;
        for i in x.degrees() {
            let (r, c) = (y.rank(i + 1), x.rank(i));
            blocks.push((i, unknowns, r, c));
            unknowns += r * c;
        }
        let offset = |i: i64| blocks.iter().find(|b| b.0 == i).copied();

        let equations: usize = x.degrees().map(|i| y.rank(i) * x.rank(i)).sum();
        let mut matrix = MatZn::zeros(md, equations, unknowns);
        let mut rhs = Vec::with_capacity(equations);
        let mut row = 0;
        for i in x.degrees() {
            let fi = f.component(i);
            let dy = y.d(i + 1);
            let dx = x.d(i);
            let cur = offset(i);
            let prev = offset(i - 1);
            for a in 0..y.rank(i) {
                for b in 0..x.rank(i) {
                    // (d^Y s_i)[a][b] = sum_c d^Y[a][c] s_i[c][b]
                    if let Some((_, off, _, cols)) = cur {
                        for c in 0..y.rank(i + 1) {
                            let v = dy.get(a, c);
                            if v != 0 {
                                let col = off + c * cols + b;
                                matrix.set(row, col, md.add(matrix.get(row, col), v));
                            }
                        }
                    }
                    // (s_{i-1} d^X)[a][b] = sum_c s_{i-1}[a][c] d^X[c][b]
                    if let Some((_, off, _, cols)) = prev {
                        for c in 0..x.rank(i - 1) {
                            let v = dx.get(c, b);
                            if v != 0 {
                                let col = off + a * cols + c;
                                matrix.set(row, col, md.add(matrix.get(row, col), v));
                            }
                        }
                    }
                    rhs.push(fi.get(a, b));
                    row += 1;
                }
            }
        }
        HomotopySystem { matrix, rhs, blocks }
    }

    pub fn unknowns(&self) -> usize {
        self.matrix.cols()
    }

    /// Unpacks a solution vector into homotopy components.
    pub fn homotopy(&self, x: &ChainComplex, solution: &[u64]) -> Homotopy {
        let md = x.modulus();
        let components = self
            .blocks
            .iter()
            .map(|&(_, off, r, c)| MatZn::from_entries(md, r, c, solution[off..off + r * c].to_vec()).expect("block"))
            .collect();
        Homotopy { lo: x.lo(), components }
    }
}

/// Outcome of a null-homotopy decision with its certificate.
#[derive(Debug, Clone)]
pub enum HomotopyDecision {
    /// `f = ds + sd` with the given `s` (for the degree-0 form of `f`).
    Null(Homotopy),
    /// The homotopy system has no solution; the functional proves it.
    Essential(Infeasibility),
}

impl HomotopyDecision {
    pub fn is_null(&self) -> bool {
        matches!(self, HomotopyDecision::Null(_))
    }
}

pub fn decide_null_homotopy(f: &ChainMap) -> HomotopyDecision {
    let f = f.to_degree_zero();
    let sys = HomotopySystem::build(&f);
    match solve_linear(&sys.matrix, &sys.rhs).expect("consistent shapes") {
        Some(sol) => {
            let h = sys.homotopy(f.source(), &sol);
            assert_eq!(h.verify(&f), Ok(()), "solver returned an invalid homotopy");
            HomotopyDecision::Null(h)
        }
        None => HomotopyDecision::Essential(
            infeasibility_certificate(&sys.matrix, &sys.rhs).expect("Z/n is self-injective"),
        ),
    }
}

/// A verified homotopy `f ≃ 0`, or `None` if `f` is essential. For maps of
/// nonzero degree the homotopy refers to [`ChainMap::to_degree_zero`].
pub fn null_homotopy(f: &ChainMap) -> Option<Homotopy> {
    match decide_null_homotopy(f) {
        HomotopyDecision::Null(h) => Some(h),
        HomotopyDecision::Essential(_) => None,
    }
}

/// A contracting homotopy of `id_X`, if one exists.
pub fn is_contractible(x: &ChainComplex) -> Option<Homotopy> {
    null_homotopy(&ChainMap::identity(x))
}

/// Whether `f` induces isomorphisms on homology in every degree.
///
/// Degree by degree the invariant factors of source and target must agree
/// and the induced map must be surjective, which for finite modules of equal
/// order means bijective.
pub fn is_quasi_iso(f: &ChainMap) -> bool {
    let f = f.to_degree_zero();
    let (x, y) = (f.source(), f.target());
    let hx = homology(x);
    let hy = homology(y);
    let lo = x.lo().min(y.lo());
    let hi = x.hi().max(y.hi());
    (lo..=hi).all(|i| {
        if hx.factors(i) != hy.factors(i) {
            return false;
        }
        let (Some(sg), Some(tg)) = (hx.group(i), hy.group(i)) else {
            return true;
        };
        let image = f.component(i).mul(&sg.cycles);
        let sys = image.hstack(&tg.boundaries);
        (0..tg.generators()).all(|l| solve_linear(&sys, &tg.cycles.col_vec(l)).expect("shape").is_some())
    })
}
