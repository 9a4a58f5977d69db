use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::MatZn;
use crate::modulus::Modulus;

/// First invariant violation found while validating chain data.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub degree: i64,
    pub kind: ViolationKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ViolationKind {
    EmptyDegreeRange,
    Shape {
        what: String,
        expected: (usize, usize),
        found: (usize, usize),
    },
    ModulusMismatch {
        expected: u64,
        found: u64,
    },
    /// `d[i-1] * d[i] != 0`
    DifferentialSquare,
    /// `d^Y f[i] != (-1)^k f[i-1] d^X`
    NotChainMap,
    /// `f[i] != d s[i] + s[i-1] d`
    HomotopyEquation,
    Degree {
        expected: i64,
        found: i64,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            ViolationKind::EmptyDegreeRange => write!(f, "empty degree range"),
            ViolationKind::Shape { what, expected, found } => write!(
                f,
                "degree {}: {what} should be {}x{} but is {}x{}",
                self.degree, expected.0, expected.1, found.0, found.1
            ),
            ViolationKind::ModulusMismatch { expected, found } => {
                write!(f, "degree {}: modulus {found} where {expected} was expected", self.degree)
            }
            ViolationKind::DifferentialSquare => {
                write!(f, "d[{}] * d[{}] is nonzero", self.degree - 1, self.degree)
            }
            ViolationKind::NotChainMap => {
                write!(f, "map does not commute with the differentials at degree {}", self.degree)
            }
            ViolationKind::HomotopyEquation => {
                write!(f, "homotopy equation f = ds + sd fails at degree {}", self.degree)
            }
            ViolationKind::Degree { expected, found } => {
                write!(f, "map has degree {found}, expected {expected}")
            }
        }
    }
}

fn violation<T>(degree: i64, kind: ViolationKind) -> std::result::Result<T, Violation> {
    Err(Violation { degree, kind })
}

fn check_shape(
    degree: i64,
    what: &str,
    m: &MatZn,
    modulus: &Modulus,
    expected: (usize, usize),
) -> std::result::Result<(), Violation> {
    if m.modulus() != modulus {
        return violation(degree, ViolationKind::ModulusMismatch { expected: modulus.get(), found: m.modulus().get() });
    }
    if m.shape() != expected {
        return violation(degree, ViolationKind::Shape { what: what.to_string(), expected, found: m.shape() });
    }
    Ok(())
}

/// A bounded complex of finitely generated free `Z/n`-modules with
/// homological grading: `d[i]: C_i -> C_{i-1}` is a `rank(i-1) x rank(i)`
/// matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ChainComplex {
    modulus: Modulus,
    lo: i64,
    ranks: Vec<usize>,
    boundaries: Vec<MatZn>,
}

impl ChainComplex {
    /// Builds and validates a complex supported in degrees
    /// `lo..lo + ranks.len()`; `boundaries[k]` is the differential leaving
    /// degree `lo + k`.
    pub fn new(modulus: &Modulus, lo: i64, ranks: Vec<usize>, boundaries: Vec<MatZn>) -> Result<Self> {
        let c = ChainComplex { modulus: modulus.clone(), lo, ranks, boundaries };
        c.validate().map_err(Error::Invalid)?;
        Ok(c)
    }

    pub(crate) fn new_unchecked(modulus: &Modulus, lo: i64, ranks: Vec<usize>, boundaries: Vec<MatZn>) -> Self {
        let c = ChainComplex { modulus: modulus.clone(), lo, ranks, boundaries };
        debug_assert_eq!(c.validate(), Ok(()));
        c
    }

    /// Assembles a complex from a closure producing the differential at
    /// each degree of `lo..=hi`.
    pub(crate) fn assemble(
        modulus: &Modulus,
        lo: i64,
        hi: i64,
        rank: impl Fn(i64) -> usize,
        d: impl Fn(i64) -> MatZn,
    ) -> Self {
        let ranks = (lo..=hi).map(&rank).collect();
        let boundaries = (lo..=hi).map(d).collect();
        Self::new_unchecked(modulus, lo, ranks, boundaries)
    }

    /// The zero complex (rank 0 in degree 0).
    pub fn zero(modulus: &Modulus) -> Self {
        Self::new_unchecked(modulus, 0, vec![0], vec![MatZn::zeros(modulus, 0, 0)])
    }

    /// The sphere: `Z/n` in degree 0.
    pub fn sphere(modulus: &Modulus) -> Self {
        Self::new_unchecked(modulus, 0, vec![1], vec![MatZn::zeros(modulus, 0, 1)])
    }

    /// `Σ^k S`
    pub fn sphere_at(modulus: &Modulus, degree: i64) -> Self {
        Self::new_unchecked(modulus, degree, vec![1], vec![MatZn::zeros(modulus, 0, 1)])
    }

    /// The two-term complex `Z/n --x--> Z/n` in degrees 1 and 0.
    pub fn two_term(modulus: &Modulus, x: u64) -> Self {
        Self::new_unchecked(modulus, 0, vec![1, 1], vec![MatZn::zeros(modulus, 0, 1), MatZn::scalar(modulus, 1, x)])
    }

    pub fn validate(&self) -> std::result::Result<(), Violation> {
        if self.ranks.is_empty() {
            return violation(self.lo, ViolationKind::EmptyDegreeRange);
        }
        if self.boundaries.len() != self.ranks.len() {
            return violation(
                self.lo,
                ViolationKind::Shape {
                    what: "boundary list".into(),
                    expected: (self.ranks.len(), 1),
                    found: (self.boundaries.len(), 1),
                },
            );
        }
        for i in self.lo..=self.hi() {
            let d = &self.boundaries[(i - self.lo) as usize];
            check_shape(i, "differential", d, &self.modulus, (self.rank(i - 1), self.rank(i)))?;
        }
        for i in self.lo + 1..=self.hi() {
            if !self.d(i - 1).mul(&self.d(i)).is_zero() {
                return violation(i, ViolationKind::DifferentialSquare);
            }
        }
        Ok(())
    }

    #[inline]
    pub fn modulus(&self) -> &Modulus {
        &self.modulus
    }

    #[inline]
    pub fn lo(&self) -> i64 {
        self.lo
    }

    #[inline]
    pub fn hi(&self) -> i64 {
        self.lo + self.ranks.len() as i64 - 1
    }

    pub fn degrees(&self) -> std::ops::RangeInclusive<i64> {
        self.lo..=self.hi()
    }

    /// Rank in degree `i`; zero outside the support.
    pub fn rank(&self, i: i64) -> usize {
        if i < self.lo || i > self.hi() {
            0
        } else {
            self.ranks[(i - self.lo) as usize]
        }
    }

    pub fn total_rank(&self) -> usize {
        self.ranks.iter().sum()
    }

    /// Differential leaving degree `i`, as a `rank(i-1) x rank(i)` matrix.
    pub fn d(&self, i: i64) -> MatZn {
        if i < self.lo || i > self.hi() {
            MatZn::zeros(&self.modulus, self.rank(i - 1), self.rank(i))
        } else {
            self.boundaries[(i - self.lo) as usize].clone()
        }
    }

    pub fn is_zero(&self) -> bool {
        self.total_rank() == 0
    }

    /// Restricts the degree window to the degrees with nonzero rank (the
    /// zero complex keeps the single degree `0`).
    pub fn trimmed(&self) -> Self {
        let nz: Vec<i64> = self.degrees().filter(|&i| self.rank(i) > 0).collect();
        match (nz.first(), nz.last()) {
            (Some(&lo), Some(&hi)) => Self::assemble(&self.modulus, lo, hi, |i| self.rank(i), |i| self.d(i)),
            _ => Self::zero(&self.modulus),
        }
    }
}

impl fmt::Debug for ChainComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ChainComplex(Z/{}; ", self.modulus.get())?;
        for i in self.degrees().rev() {
            write!(f, "[{}]{} ", i, self.rank(i))?;
            if i > self.lo && self.rank(i) > 0 && self.rank(i - 1) > 0 {
                write!(f, "{:?} ", self.d(i))?;
            }
        }
        write!(f, ")")
    }
}

/// A chain map of degree `k`: `f[i]: X_i -> Y_{i+k}` with
/// `d^Y f[i] = (-1)^k f[i-1] d^X`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ChainMap {
    source: ChainComplex,
    target: ChainComplex,
    degree: i64,
    components: Vec<MatZn>,
}

impl ChainMap {
    /// `components[k]` is the component at source degree `source.lo() + k`.
    pub fn new(source: &ChainComplex, target: &ChainComplex, degree: i64, components: Vec<MatZn>) -> Result<Self> {
        if source.modulus != target.modulus {
            return Err(Error::ModulusMismatch(source.modulus.get(), target.modulus.get()));
        }
        let f = ChainMap { source: source.clone(), target: target.clone(), degree, components };
        f.validate().map_err(Error::Invalid)?;
        Ok(f)
    }

    pub(crate) fn new_unchecked(
        source: &ChainComplex,
        target: &ChainComplex,
        degree: i64,
        components: Vec<MatZn>,
    ) -> Self {
        let f = ChainMap { source: source.clone(), target: target.clone(), degree, components };
        debug_assert_eq!(f.validate(), Ok(()));
        f
    }

    pub(crate) fn assemble(
        source: &ChainComplex,
        target: &ChainComplex,
        degree: i64,
        comp: impl Fn(i64) -> MatZn,
    ) -> Self {
        let components = source.degrees().map(comp).collect();
        Self::new_unchecked(source, target, degree, components)
    }

    pub fn validate(&self) -> std::result::Result<(), Violation> {
        let (x, y, k) = (&self.source, &self.target, self.degree);
        if x.modulus != y.modulus {
            return violation(
                x.lo,
                ViolationKind::ModulusMismatch { expected: x.modulus.get(), found: y.modulus.get() },
            );
        }
        x.validate()?;
        y.validate()?;
        if self.components.len() != x.ranks.len() {
            return violation(
                x.lo,
                ViolationKind::Shape {
                    what: "component list".into(),
                    expected: (x.ranks.len(), 1),
                    found: (self.components.len(), 1),
                },
            );
        }
        for i in x.degrees() {
            check_shape(
                i,
                "map component",
                &self.components[(i - x.lo) as usize],
                &x.modulus,
                (y.rank(i + k), x.rank(i)),
            )?;
        }
        let sign = x.modulus.sign(k);
        for i in x.lo..=x.hi() + 1 {
            let lhs = y.d(i + k).mul(&self.component(i));
            let rhs = self.component(i - 1).mul(&x.d(i)).scale(sign);
            if lhs != rhs {
                return violation(i, ViolationKind::NotChainMap);
            }
        }
        Ok(())
    }

    pub fn source(&self) -> &ChainComplex {
        &self.source
    }

    pub fn target(&self) -> &ChainComplex {
        &self.target
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn modulus(&self) -> &Modulus {
        &self.source.modulus
    }

    /// Component at source degree `i` (zero outside the source support).
    pub fn component(&self, i: i64) -> MatZn {
        let x = &self.source;
        if i < x.lo || i > x.hi() {
            MatZn::zeros(&x.modulus, self.target.rank(i + self.degree), x.rank(i))
        } else {
            self.components[(i - x.lo) as usize].clone()
        }
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(MatZn::is_zero)
    }

    pub fn identity(x: &ChainComplex) -> Self {
        Self::scalar(x, 1)
    }

    pub fn zero(source: &ChainComplex, target: &ChainComplex, degree: i64) -> Self {
        Self::assemble(source, target, degree, |i| {
            MatZn::zeros(&source.modulus, target.rank(i + degree), source.rank(i))
        })
    }

    /// Multiplication by `r` in every degree.
    pub fn scalar(x: &ChainComplex, r: u64) -> Self {
        Self::assemble(x, x, 0, |i| MatZn::scalar(&x.modulus, x.rank(i), r))
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &ChainMap) -> Result<ChainMap> {
        if other.target != self.source {
            return Err(Error::DimensionMismatch("composite of maps with mismatched middle complex".into()));
        }
        let k = other.degree;
        Ok(ChainMap::assemble(&other.source, &self.target, k + self.degree, |i| {
            self.component(i + k).mul(&other.component(i))
        }))
    }

    fn check_parallel(&self, other: &ChainMap) -> Result<()> {
        if self.source != other.source || self.target != other.target || self.degree != other.degree {
            return Err(Error::DimensionMismatch("maps are not parallel".into()));
        }
        Ok(())
    }

    pub fn add(&self, other: &ChainMap) -> Result<ChainMap> {
        self.check_parallel(other)?;
        Ok(ChainMap::assemble(&self.source, &self.target, self.degree, |i| self.component(i).add(&other.component(i))))
    }

    pub fn sub(&self, other: &ChainMap) -> Result<ChainMap> {
        self.add(&other.scale(self.modulus().get() - 1))
    }

    pub fn scale(&self, r: u64) -> ChainMap {
        ChainMap::assemble(&self.source, &self.target, self.degree, |i| self.component(i).scale(r))
    }

    /// The equivalent degree-0 map `Σ^k X -> Y` with the same components.
    pub fn to_degree_zero(&self) -> ChainMap {
        if self.degree == 0 {
            return self.clone();
        }
        let src = crate::complex::suspend(&self.source, self.degree);
        let k = self.degree;
        ChainMap::assemble(&src, &self.target, 0, |i| self.component(i - k))
    }

    /// `d s + s d` for a degree-`+1` family `s[i]: X_i -> Y_{i+1}`; always a
    /// (null-homotopic) chain map.
    pub fn from_homotopy(source: &ChainComplex, target: &ChainComplex, s: &Homotopy) -> ChainMap {
        ChainMap::assemble(source, target, 0, |i| {
            target
                .d(i + 1)
                .mul(&s.component(source, target, i))
                .add(&s.component(source, target, i - 1).mul(&source.d(i)))
        })
    }

    /// Direct sum `f ⊕ g : X ⊕ X' -> Y ⊕ Y'` of degree-0 maps.
    pub fn direct_sum(&self, other: &ChainMap) -> Result<ChainMap> {
        if self.degree != 0 || other.degree != 0 {
            return Err(Error::Precondition("direct sum of maps requires degree 0".into()));
        }
        let src = crate::complex::direct_sum(&self.source, &other.source)?;
        let tgt = crate::complex::direct_sum(&self.target, &other.target)?;
        Ok(ChainMap::assemble(&src, &tgt, 0, |i| self.component(i).block_diag(&other.component(i))))
    }
}

impl fmt::Debug for ChainMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ChainMap(degree {}; ", self.degree)?;
        for i in self.source.degrees() {
            write!(f, "[{}]{:?} ", i, self.component(i))?;
        }
        write!(f, ")")
    }
}

/// A degree-`+1` family `s[i]: X_i -> Y_{i+1}` certifying `f = ds + sd` for
/// a degree-0 map `f: X -> Y`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Homotopy {
    pub lo: i64,
    pub components: Vec<MatZn>,
}

impl Homotopy {
    pub fn zero(source: &ChainComplex, target: &ChainComplex) -> Self {
        Homotopy {
            lo: source.lo,
            components: source
                .degrees()
                .map(|i| MatZn::zeros(&source.modulus, target.rank(i + 1), source.rank(i)))
                .collect(),
        }
    }

    /// `s[i]`, shaped `target.rank(i+1) x source.rank(i)`.
    pub fn component(&self, source: &ChainComplex, target: &ChainComplex, i: i64) -> MatZn {
        let k = i - self.lo;
        if k >= 0 && (k as usize) < self.components.len() {
            return self.components[k as usize].clone();
        }
        MatZn::zeros(&source.modulus, target.rank(i + 1), source.rank(i))
    }

    /// Re-checks the certificate equation degree by degree.
    pub fn verify(&self, f: &ChainMap) -> std::result::Result<(), Violation> {
        if f.degree != 0 {
            return violation(f.source.lo, ViolationKind::Degree { expected: 0, found: f.degree });
        }
        let (x, y) = (&f.source, &f.target);
        for (k, c) in self.components.iter().enumerate() {
            let i = self.lo + k as i64;
            check_shape(i, "homotopy component", c, &x.modulus, (y.rank(i + 1), x.rank(i)))?;
        }
        for i in x.degrees() {
            let ds = y.d(i + 1).mul(&self.component(x, y, i));
            let sd = self.component(x, y, i - 1).mul(&x.d(i));
            if ds.add(&sd) != f.component(i) {
                return violation(i, ViolationKind::HomotopyEquation);
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: u64) -> Modulus {
        Modulus::new(n).unwrap()
    }

    #[test]
    fn sphere_is_valid() {
        assert_eq!(ChainComplex::sphere(&z(4)).validate(), Ok(()));
    }

    #[test]
    fn square_zero_depends_on_modulus() {
        // Z/n --2--> Z/n --2--> Z/n is a complex over Z/4 but not over Z/6.
        let build = |n: u64| {
            let m = z(n);
            ChainComplex::new(
                &m,
                0,
                vec![1, 1, 1],
                vec![MatZn::zeros(&m, 0, 1), MatZn::scalar(&m, 1, 2), MatZn::scalar(&m, 1, 2)],
            )
        };
        assert!(build(4).is_ok());
        match build(6) {
            Err(Error::Invalid(v)) => {
                assert_eq!(v.degree, 2);
                assert_eq!(v.kind, ViolationKind::DifferentialSquare);
            }
            other => panic!("expected violation, got {other:?}"),
        }
    }

    #[test]
    fn shape_violation_reported() {
        let m = z(5);
        let err =
            ChainComplex::new(&m, 0, vec![1, 2], vec![MatZn::zeros(&m, 0, 1), MatZn::zeros(&m, 1, 1)]).unwrap_err();
        let Error::Invalid(v) = err else { panic!() };
        assert_eq!(v.degree, 1);
        assert!(matches!(v.kind, ViolationKind::Shape { .. }));
    }

    #[test]
    fn non_chain_map_rejected() {
        let m = z(4);
        let y = ChainComplex::two_term(&m, 2);
        // f = (1 in degree 0, 0 in degree 1) fails: d f_1 = 0 but f_0 d = 2.
        let err = ChainMap::new(&y, &y, 0, vec![MatZn::scalar(&m, 1, 1), MatZn::zeros(&m, 1, 1)]).unwrap_err();
        let Error::Invalid(v) = err else { panic!() };
        assert_eq!(v.kind, ViolationKind::NotChainMap);
        assert_eq!(v.degree, 1);
    }

    #[test]
    fn homotopy_boundary_is_chain_map() {
        let m = z(8);
        let y = ChainComplex::two_term(&m, 2);
        let s = Homotopy { lo: 0, components: vec![MatZn::scalar(&m, 1, 3), MatZn::zeros(&m, 0, 1)] };
        let f = ChainMap::from_homotopy(&y, &y, &s);
        assert_eq!(f.validate(), Ok(()));
        assert_eq!(s.verify(&f), Ok(()));
        assert_eq!(f.component(0), MatZn::scalar(&m, 1, 6));
        assert_eq!(f.component(1), MatZn::scalar(&m, 1, 6));
    }
}
