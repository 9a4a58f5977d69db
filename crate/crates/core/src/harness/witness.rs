use serde::{Deserialize, Serialize};

use crate::complex::{decide_null_homotopy, ChainMap, HomotopyDecision, HomotopySystem};
use crate::doc::{ComplexDocument, DocError, MapDocument, MatrixDoc};
use crate::linalg::{howell_form, kernel_basis, solve_linear, Infeasibility, MatZn};

/// Per-degree proof that `f` kills homology: chosen cycles `Z` spanning
/// `ker d`, and lifts `W` with `d^Y W = f Z`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundaryLift {
    pub degree: i64,
    pub cycles: MatrixDoc,
    pub lifts: MatrixDoc,
}

/// A map with zero induced homology that admits no null-homotopy, with
/// everything needed to re-check both facts from the document alone.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub source: ComplexDocument,
    pub target: ComplexDocument,
    pub map: MapDocument,
    pub homology_certificate: Vec<BoundaryLift>,
    /// Functional `y` on the equations of the homotopy system of `map` with
    /// `y A = 0` and `y b != 0`.
    pub infeasibility: Infeasibility,
}

#[derive(Debug, thiserror::Error)]
pub enum WitnessError {
    #[error(transparent)]
    Document(#[from] DocError),
    #[error("map has nonzero degree {0}")]
    Degree(i64),
    #[error("homology certificate fails at degree {0}: {1}")]
    Homology(i64, &'static str),
    #[error("infeasibility functional does not certify the homotopy system")]
    Infeasibility,
    #[error("map is not essential")]
    NotEssential,
}

/// Builds a witness for `f` if `f` is homology-trivial and essential.
pub fn certify(f: &ChainMap) -> Option<Witness> {
    let f = f.to_degree_zero();
    let (x, y) = (f.source(), f.target());
    let mut lifts = Vec::new();
    for i in x.degrees() {
        let cycles = kernel_basis(&x.d(i)).transpose();
        let image = f.component(i).mul(&cycles);
        let dy = y.d(i + 1);
        let mut w = MatZn::zeros(x.modulus(), dy.cols(), cycles.cols());
        for j in 0..cycles.cols() {
            let sol = solve_linear(&dy, &image.col_vec(j)).expect("shape")?;
            for (r, v) in sol.into_iter().enumerate() {
                w.set(r, j, v);
            }
        }
        lifts.push(BoundaryLift { degree: i, cycles: MatrixDoc::from_mat(&cycles), lifts: MatrixDoc::from_mat(&w) });
    }
    let HomotopyDecision::Essential(infeasibility) = decide_null_homotopy(&f) else {
        return None;
    };
    Some(Witness {
        source: ComplexDocument::from_complex(x),
        target: ComplexDocument::from_complex(y),
        map: MapDocument::from_map(&f),
        homology_certificate: lifts,
        infeasibility,
    })
}

impl Witness {
    pub fn chain_map(&self) -> Result<ChainMap, DocError> {
        self.map.to_map(None)
    }

    /// Re-checks the witness without calling the solver on the homotopy
    /// system: matrix identities for the lifts, a fresh kernel computation
    /// for completeness of the cycles, and `y A = 0`, `y b != 0`.
    pub fn verify(&self) -> Result<(), WitnessError> {
        let f = self.chain_map()?;
        if f.degree() != 0 {
            return Err(WitnessError::Degree(f.degree()));
        }
        if f.source() != &self.source.to_complex()? || f.target() != &self.target.to_complex()? {
            return Err(WitnessError::Document(DocError::Malformed(
                "map endpoints differ from witness complexes".into(),
            )));
        }
        let (x, y) = (f.source(), f.target());
        let m = x.modulus();
        for i in x.degrees() {
            let cert = self
                .homology_certificate
                .iter()
                .find(|c| c.degree == i)
                .ok_or(WitnessError::Homology(i, "missing degree"))?;
            let z = cert.cycles.to_mat(m)?;
            let w = cert.lifts.to_mat(m)?;
            if z.rows() != x.rank(i) || w.rows() != y.rank(i + 1) || w.cols() != z.cols() {
                return Err(WitnessError::Homology(i, "shape"));
            }
            if !x.d(i).mul(&z).is_zero() {
                return Err(WitnessError::Homology(i, "listed vector is not a cycle"));
            }
            let span = howell_form(&z.transpose());
            let kernel = kernel_basis(&x.d(i));
            if !(0..kernel.rows()).all(|r| span.contains(kernel.row(r))) {
                return Err(WitnessError::Homology(i, "cycles do not span the kernel"));
            }
            if y.d(i + 1).mul(&w) != f.component(i).mul(&z) {
                return Err(WitnessError::Homology(i, "lift equation fails"));
            }
        }
        let sys = HomotopySystem::build(&f);
        if !self.infeasibility.verify(&sys.matrix, &sys.rhs) {
            return Err(WitnessError::Infeasibility);
        }
        Ok(())
    }

    /// Independent cross-check through the homology routines.
    pub fn homology_is_trivial(&self) -> Result<bool, DocError> {
        let f = self.chain_map()?;
        Ok(crate::complex::induced_homology_map(&f).is_zero())
    }
}
