//! Generating-hypothesis experiments over `Z/n`.

mod counterexample;
mod search;
mod suites;
mod witness;

pub use counterexample::{
    canonical_counterexample, canonical_map, square_prime, CounterexampleReport, ReportKind, Verdict,
};
pub use search::{
    gh_search, random_complex, random_instance, random_trivial_map, target_sphere_search, Instance, SearchConfig,
    SearchMode, DEFAULT_SEED,
};
pub use suites::{
    annihilator_witness_map, constructed_quasi_iso, koszul_gh_suite, quasi_iso_cone_suite, theorem_suite,
    AnnihilatorWitness, KoszulSuiteReport, QuasiIsoSuiteReport, TheoremReport, TheoremStatus,
};
pub use witness::{certify, BoundaryLift, Witness, WitnessError};
