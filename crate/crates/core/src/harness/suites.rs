//! Structured experiment suites: the annihilator witness, Koszul objects,
//! quasi-isomorphisms with contractible cones, and the end-to-end verdict.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::complex::{
    cone, decide_null_homotopy, induced_homology_map, is_contractible, is_quasi_iso, koszul, ChainComplex, ChainMap,
    Homotopy, KoszulContracts,
};
use crate::error::{Error, Result};
use crate::harness::search::{padded_inclusion, random_complex, random_unit};
use crate::harness::{canonical_counterexample, gh_search, SearchConfig, Verdict};
use crate::linalg::MatZn;
use crate::modulus::Modulus;
use crate::ring::{annihilator, double_annihilator_check, is_regular, relative_gh_predicate, IdealZn, RelativeReason};

#[derive(Debug, Clone)]
pub struct AnnihilatorWitness {
    /// `z·ρ: cone(f) -> ΣS`.
    pub map: ChainMap,
    pub homology_trivial: bool,
    pub null_homotopic: bool,
    pub in_ideal: bool,
}

/// The composite `z·ρ` of the cone projection `ρ: cone(f) -> ΣS` with
/// multiplication by `z`.
///
/// Requires `z ∈ ann ann (f)`. The map is zero on homology, and it is
/// null-homotopic exactly when `z ∈ (f)`; both facts are asserted.
pub fn annihilator_witness_map(m: &Modulus, f: u64, z: u64) -> Result<AnnihilatorWitness> {
    let (f, z) = (m.reduce(f), m.reduce(z));
    let i = IdealZn::principal(m, f);
    if !annihilator(&annihilator(&i)).contains(z) {
        return Err(Error::Precondition(format!("{z} is not in ann ann ({f}) over Z/{}", m.get())));
    }
    let s = ChainComplex::sphere(m);
    let c = cone(&ChainMap::scalar(&s, f))?;
    let map = c.projection.scale(z);
    let homology_trivial = induced_homology_map(&map).is_zero();
    let null_homotopic = decide_null_homotopy(&map).is_null();
    let in_ideal = i.contains(z);
    assert!(homology_trivial, "z·ρ must vanish on homology");
    assert_eq!(null_homotopic, in_ideal, "z·ρ ≃ 0 must match z ∈ (f)");
    Ok(AnnihilatorWitness { map, homology_trivial, null_homotopic, in_ideal })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KoszulSuiteReport {
    pub modulus: u64,
    pub generators: Vec<u64>,
    /// Canonical generator of `I`.
    pub ideal: u64,
    pub contracts: KoszulContracts,
    /// `η ∘ z ≃ 0` exactly for `z ∈ I`, checked for every residue `z`.
    pub unit_detects_ideal: bool,
    /// Multiplication by every `x ∈ I` is null-homotopic on `S/I`.
    pub ideal_acts_trivially: bool,
    pub double_annihilator: bool,
    pub relative_predicate: bool,
    pub relative_reason: RelativeReason,
}

impl KoszulSuiteReport {
    /// Every structural check passed. The relative predicate is data and
    /// does not take part.
    pub fn structural_pass(&self) -> bool {
        self.contracts.all() && self.unit_detects_ideal && self.ideal_acts_trivially && self.double_annihilator
    }
}

pub fn koszul_gh_suite(m: &Modulus, generators: &[u64]) -> Result<KoszulSuiteReport> {
    let bundle = koszul(m, generators)?;
    let ideal = bundle.ideal();
    let contracts = bundle.check_contracts();
    let unit_detects_ideal = (0..m.get()).all(|z| bundle.unit_times_is_null(z) == ideal.contains(z));
    let ideal_acts_trivially = ideal.elements().into_iter().all(|x| bundle.scalar_is_null(x));
    let (relative_predicate, relative_reason) = relative_gh_predicate(&ideal);
    Ok(KoszulSuiteReport {
        modulus: m.get(),
        generators: bundle.generators.clone(),
        ideal: ideal.generator(),
        contracts,
        unit_detects_ideal,
        ideal_acts_trivially,
        double_annihilator: double_annihilator_check(&ideal),
        relative_predicate,
        relative_reason,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuasiIsoSuiteReport {
    pub modulus: u64,
    pub samples: usize,
    pub detected_quasi_iso: usize,
    pub contractible_cones: usize,
    /// Sample indices where either check failed.
    pub failures: Vec<usize>,
}

impl QuasiIsoSuiteReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Builds a quasi-isomorphism for sample `index`: the inclusion of `X`
/// into `X ⊕ P` with `P` contractible, plus `ds + sd`, composed on both
/// sides with unit-scalar automorphisms.
pub fn constructed_quasi_iso(config: &SearchConfig, index: usize) -> Result<ChainMap> {
    let m = config.validate()?;
    let mut rng = config.rng(index);
    let x = random_complex(&mut rng, &m, config.max_degrees, config.max_rank);
    let mut q = if rng.gen_bool(0.15) { ChainMap::identity(&x) } else { padded_inclusion(&mut rng, &x) };
    let y = q.target().clone();
    if rng.gen_bool(0.7) {
        let s = Homotopy {
            lo: x.lo(),
            components: x
                .degrees()
                .map(|i| {
                    let (r, c) = (y.rank(i + 1), x.rank(i));
                    let e = (0..r * c).map(|_| rng.gen_range(0..m.get())).collect();
                    MatZn::from_entries(&m, r, c, e).expect("shape")
                })
                .collect(),
        };
        q = q.add(&ChainMap::from_homotopy(&x, &y, &s))?;
    }
    let (u, v) = (random_unit(&mut rng, &m), random_unit(&mut rng, &m));
    q = ChainMap::scalar(&y, u).compose(&q)?.compose(&ChainMap::scalar(&x, v))?;
    Ok(q)
}

pub fn quasi_iso_cone_suite(config: &SearchConfig) -> Result<QuasiIsoSuiteReport> {
    config.validate()?;
    let mut report = QuasiIsoSuiteReport {
        modulus: config.modulus,
        samples: config.samples,
        detected_quasi_iso: 0,
        contractible_cones: 0,
        failures: Vec::new(),
    };
    for index in 0..config.samples {
        let q = constructed_quasi_iso(config, index)?;
        let detected = is_quasi_iso(&q);
        let contractible = is_contractible(&cone(&q)?.complex).is_some();
        report.detected_quasi_iso += detected as usize;
        report.contractible_cones += contractible as usize;
        if !(detected && contractible) {
            report.failures.push(index);
        }
    }
    Ok(report)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TheoremStatus {
    /// A verified counterexample exists: GH fails over `Z/n`.
    Refuted,
    /// No counterexample was found. This agrees with GH but does not prove it.
    ConsistentAtScale,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoremReport {
    pub modulus: u64,
    pub is_regular: bool,
    pub squarefree: bool,
    pub canonical_counterexample: bool,
    pub search_verdict: Verdict,
    pub search_instances: usize,
    pub status: TheoremStatus,
    /// All four signals agree wherever the theory says they must.
    pub consistent: bool,
}

pub fn theorem_suite(m: &Modulus, config: &SearchConfig) -> Result<TheoremReport> {
    if config.modulus != m.get() {
        return Err(Error::ModulusMismatch(m.get(), config.modulus));
    }
    let regular = is_regular(m);
    let squarefree = m.is_squarefree();
    let canonical = match canonical_counterexample(m) {
        Ok(r) => r.witness.map(|w| w.verify().is_ok()).unwrap_or(false),
        Err(Error::Precondition(_)) => false,
        Err(e) => return Err(e),
    };
    let search = gh_search(config, 1)?;
    let found = search.verdict == Verdict::CounterexampleFound;
    let consistent = regular == squarefree && canonical == !regular && !(found && regular);
    Ok(TheoremReport {
        modulus: m.get(),
        is_regular: regular,
        squarefree,
        canonical_counterexample: canonical,
        search_verdict: search.verdict,
        search_instances: search.instances_tested,
        status: if canonical || found { TheoremStatus::Refuted } else { TheoremStatus::ConsistentAtScale },
        consistent,
    })
}
