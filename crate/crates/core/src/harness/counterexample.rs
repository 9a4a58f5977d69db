use serde::{Deserialize, Serialize};

use crate::complex::{induced_homology_map, ChainComplex, ChainMap};
use crate::error::{Error, Result};
use crate::harness::{certify, SearchConfig, Witness};
use crate::linalg::MatZn;
use crate::modulus::Modulus;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    CounterexampleFound,
    NoneFound,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ReportKind {
    Canonical,
    Search,
    TargetSphereSearch,
}

/// Outcome of a counterexample construction or search.
///
/// `witness` is present exactly when `verdict` is `counterexample_found`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CounterexampleReport {
    pub kind: ReportKind,
    pub modulus: u64,
    pub config: Option<SearchConfig>,
    pub verdict: Verdict,
    pub witness: Option<Witness>,
    pub instances_tested: usize,
    /// Sampled maps that received an explicit, verified null-homotopy.
    pub certified_null: usize,
    /// Sampled maps that were not the zero map.
    pub nonzero_maps: usize,
    pub elapsed_ms: u64,
}

impl CounterexampleReport {
    /// JSON with the timing field zeroed, for replay comparisons.
    pub fn canonical_json(&self) -> String {
        let mut r = self.clone();
        r.elapsed_ms = 0;
        serde_json::to_string(&r).expect("serializable")
    }
}

/// Smallest prime `p` with `p^2 | n`, if any.
pub fn square_prime(m: &Modulus) -> Option<u64> {
    m.factors().iter().find(|&&(_, e)| e >= 2).map(|&(p, _)| p)
}

/// The square-zero element `g = n / p` and the map `h` on
/// `Y = cone(g: S -> S)` that is `g` in degree 0 and zero in degree 1.
///
/// `h` factors through `Y -> ΣS` and `S -> Y`, so it is zero on homology;
/// a null-homotopy would be an `s` with `g = g s` and `s g = 0`.
pub fn canonical_map(m: &Modulus) -> Result<ChainMap> {
    let p = square_prime(m).ok_or_else(|| {
        Error::Precondition(format!(
            "{} is squarefree: Z/{} is von Neumann regular, so every map that is zero on homology is null-homotopic",
            m.get(),
            m.get()
        ))
    })?;
    let g = m.get() / p;
    let y = ChainComplex::two_term(m, g);
    ChainMap::new(&y, &y, 0, vec![MatZn::scalar(m, 1, g), MatZn::zeros(m, 1, 1)])
}

pub fn canonical_counterexample(m: &Modulus) -> Result<CounterexampleReport> {
    let start = std::time::Instant::now();
    let h = canonical_map(m)?;
    assert!(induced_homology_map(&h).is_zero(), "canonical map must vanish on homology");
    let witness = certify(&h).expect("canonical map is essential");
    Ok(CounterexampleReport {
        kind: ReportKind::Canonical,
        modulus: m.get(),
        config: None,
        verdict: Verdict::CounterexampleFound,
        witness: Some(witness),
        instances_tested: 1,
        certified_null: 0,
        nonzero_maps: 1,
        elapsed_ms: start.elapsed().as_millis() as u64,
    })
}
