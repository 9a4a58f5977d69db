//! Seeded random searches for generating-hypothesis counterexamples.
//!
//! Instance `i` of a search draws from its own ChaCha stream `(seed, i)`,
//! so the instance sequence does not depend on how samples are spread over
//! worker threads.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::complex::{
    biproduct, decide_null_homotopy, induced_homology_map, suspend, ChainComplex, ChainMap, Homotopy, HomotopyDecision,
};
use crate::error::{Error, Result};
use crate::harness::{certify, CounterexampleReport, ReportKind, Verdict, Witness};
use crate::linalg::{kernel_basis, MatZn};
use crate::modulus::Modulus;

pub const DEFAULT_SEED: u64 = 20060101;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SearchMode {
    General,
    TargetSphere,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SearchConfig {
    pub modulus: u64,
    pub seed: u64,
    pub samples: usize,
    /// Width of the degree window `0..max_degrees`.
    pub max_degrees: usize,
    /// Upper bound on the rank in each degree.
    pub max_rank: usize,
    pub mode: SearchMode,
}

impl SearchConfig {
    pub fn new(modulus: u64) -> Self {
        SearchConfig {
            modulus,
            seed: DEFAULT_SEED,
            samples: 500,
            max_degrees: 4,
            max_rank: 3,
            mode: SearchMode::General,
        }
    }

    pub fn with_samples(mut self, samples: usize) -> Self {
        self.samples = samples;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_mode(mut self, mode: SearchMode) -> Self {
        self.mode = mode;
        self
    }

    pub fn validate(&self) -> Result<Modulus> {
        let m = Modulus::new(self.modulus)?;
        if self.samples == 0 {
            return Err(Error::Precondition("samples must be at least 1".into()));
        }
        if self.max_degrees == 0 {
            return Err(Error::Precondition("max_degrees must be at least 1".into()));
        }
        Ok(m)
    }

    pub fn rng(&self, index: usize) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(index as u64);
        rng
    }
}

/// A homology-trivial chain map drawn by [`random_instance`].
#[derive(Debug, Clone)]
pub struct Instance {
    pub index: usize,
    pub map: ChainMap,
}

/// Random residue that is nilpotent (a multiple of the radical of `n`).
fn nilpotent(rng: &mut ChaCha8Rng, m: &Modulus) -> u64 {
    let rad = m.radical();
    rng.gen_range(0..m.get() / rad) * rad
}

fn random_residue(rng: &mut ChaCha8Rng, m: &Modulus) -> u64 {
    rng.gen_range(0..m.get())
}

fn random_matrix(rng: &mut ChaCha8Rng, m: &Modulus, rows: usize, cols: usize) -> MatZn {
    let entries = (0..rows * cols).map(|_| random_residue(rng, m)).collect();
    MatZn::from_entries(m, rows, cols, entries).expect("shape")
}

/// Random valid complex in degrees `0..width` with ranks `<= max_rank`.
///
/// Half of the draws are direct sums of shifted spheres and two-term
/// complexes `Z/n --r--> Z/n` with `r` biased towards nilpotents; the rest
/// build each differential out of the kernel of the one below it.
pub fn random_complex(rng: &mut ChaCha8Rng, m: &Modulus, width: usize, max_rank: usize) -> ChainComplex {
    let width = width.max(1) as i64;
    if max_rank == 0 {
        return ChainComplex::assemble(m, 0, width - 1, |_| 0, |_| MatZn::zeros(m, 0, 0));
    }
    if rng.gen_bool(0.5) {
        let mut x = ChainComplex::assemble(m, 0, width - 1, |_| 0, |_| MatZn::zeros(m, 0, 0));
        for _ in 0..rng.gen_range(1..=max_rank.max(1) * 2) {
            let piece = if width >= 2 && rng.gen_bool(0.7) {
                let r = if rng.gen_bool(0.6) { nilpotent(rng, m) } else { random_residue(rng, m) };
                suspend(&ChainComplex::two_term(m, r), rng.gen_range(0..width - 1))
            } else {
                ChainComplex::sphere_at(m, rng.gen_range(0..width))
            };
            let sum = crate::complex::direct_sum(&x, &piece).expect("same modulus");
            if sum.degrees().all(|i| sum.rank(i) <= max_rank) {
                x = sum;
            }
        }
        return x;
    }
    let ranks: Vec<usize> = (0..width).map(|_| rng.gen_range(0..=max_rank)).collect();
    let mut ds: Vec<MatZn> = vec![MatZn::zeros(m, 0, ranks[0])];
    for i in 1..width as usize {
        let kernel = kernel_basis(&ds[i - 1]);
        let mut coeffs = random_matrix(rng, m, kernel.rows(), ranks[i]);
        if rng.gen_bool(0.5) {
            coeffs = coeffs.scale(nilpotent(rng, m));
        }
        ds.push(kernel.transpose().mul(&coeffs));
    }
    ChainComplex::new(m, 0, ranks, ds).expect("columns lie in the kernel below")
}

/// A uniformly random chain map `X -> Y` that is zero on homology.
///
/// The homology-trivial maps form a submodule cut out by linear equations
/// in the entries of `f` and auxiliary lifts `w` (`d^Y f = f d^X` and
/// `f z = d^Y w` for each cycle generator `z`), so a random combination of
/// its kernel generators is uniform on that submodule.
pub fn random_trivial_map(rng: &mut ChaCha8Rng, x: &ChainComplex, y: &ChainComplex) -> ChainMap {
    let m = x.modulus();
    let degrees: Vec<i64> = x.degrees().collect();
    let mut f_off = Vec::new();
    let mut unknowns = 0;
    for &i in &degrees {
        f_off.push(unknowns);
        unknowns += y.rank(i) * x.rank(i);
    }
    let cycles: Vec<MatZn> = degrees.iter().map(|&i| kernel_basis(&x.d(i)).transpose()).collect();
    let mut w_off = Vec::new();
    for (k, &i) in degrees.iter().enumerate() {
        w_off.push(unknowns);
        unknowns += y.rank(i + 1) * cycles[k].cols();
    }
    let var_f = |k: usize, a: usize, b: usize| f_off[k] + a * x.rank(degrees[k]) + b;

    let mut rows: Vec<Vec<u64>> = Vec::new();
    for (k, &i) in degrees.iter().enumerate() {
        // d^Y_i f_i - f_{i-1} d^X_i = 0
        let dy = y.d(i);
        let dx = x.d(i);
        for a in 0..y.rank(i - 1) {
            for b in 0..x.rank(i) {
                let mut row = vec![0; unknowns];
                for c in 0..y.rank(i) {
                    let col = var_f(k, c, b);
                    row[col] = m.add(row[col], dy.get(a, c));
                }
                if k > 0 {
                    for c in 0..x.rank(i - 1) {
                        let col = var_f(k - 1, a, c);
                        row[col] = m.sub(row[col], dx.get(c, b));
                    }
                }
                rows.push(row);
            }
        }
        // f_i z_j - d^Y_{i+1} w_j = 0
        let z = &cycles[k];
        let dy1 = y.d(i + 1);
        for j in 0..z.cols() {
            for a in 0..y.rank(i) {
                let mut row = vec![0; unknowns];
                for b in 0..x.rank(i) {
                    let col = var_f(k, a, b);
                    row[col] = m.add(row[col], z.get(b, j));
                }
                for c in 0..y.rank(i + 1) {
                    let col = w_off[k] + c * z.cols() + j;
                    row[col] = m.sub(row[col], dy1.get(a, c));
                }
                rows.push(row);
            }
        }
    }
    let system = MatZn::from_row_vecs(m, unknowns, &rows);
    let gens = kernel_basis(&system);
    let sparse = rng.gen_bool(0.5);
    let mut sol = vec![0u64; unknowns];
    for r in 0..gens.rows() {
        if sparse && rng.gen_bool(0.5) {
            continue;
        }
        let c = random_residue(rng, m);
        for (s, &g) in sol.iter_mut().zip(gens.row(r)) {
            *s = m.add(*s, m.mul(c, g));
        }
    }
    ChainMap::assemble(x, y, 0, |i| {
        let k = (i - x.lo()) as usize;
        let (r, c) = (y.rank(i), x.rank(i));
        MatZn::from_entries(m, r, c, sol[f_off[k]..f_off[k] + r * c].to_vec()).expect("block")
    })
}

fn random_homotopy(rng: &mut ChaCha8Rng, x: &ChainComplex, y: &ChainComplex) -> Homotopy {
    let m = x.modulus();
    Homotopy { lo: x.lo(), components: x.degrees().map(|i| random_matrix(rng, m, y.rank(i + 1), x.rank(i))).collect() }
}

/// Draws instance `index` of the search described by `config`.
///
/// After sampling a homology-trivial map, a bias stage adds a random
/// `ds + sd` and may multiply by a nilpotent scalar; both keep the map
/// homology-trivial.
pub fn random_instance(config: &SearchConfig, index: usize) -> Result<Instance> {
    let m = config.validate()?;
    let mut rng = config.rng(index);
    let x = random_complex(&mut rng, &m, config.max_degrees, config.max_rank);
    let (x, y) = match config.mode {
        SearchMode::General => (x, random_complex(&mut rng, &m, config.max_degrees, config.max_rank)),
        // Slide the window across degree 0; a source living in degrees
        // >= 0 only admits the zero map to S on homology-trivial grounds.
        SearchMode::TargetSphere => {
            let shift = rng.gen_range(0..config.max_degrees as i64);
            (suspend(&x, -shift), ChainComplex::sphere(&m))
        }
    };
    let mut f = random_trivial_map(&mut rng, &x, &y);
    if rng.gen_bool(0.5) {
        let s = random_homotopy(&mut rng, &x, &y);
        f = f.add(&ChainMap::from_homotopy(&x, &y, &s))?;
    }
    if rng.gen_bool(0.25) {
        let g = nilpotent(&mut rng, &m);
        if g != 0 {
            f = f.scale(g);
        }
    }
    Ok(Instance { index, map: f })
}

enum Outcome {
    Null { nonzero: bool },
    Essential(Box<Witness>),
}

fn evaluate(config: &SearchConfig, index: usize) -> Result<Outcome> {
    let inst = random_instance(config, index)?;
    let f = &inst.map;
    assert!(induced_homology_map(f).is_zero(), "instance {index} is not homology-trivial");
    Ok(match decide_null_homotopy(f) {
        HomotopyDecision::Null(_) => Outcome::Null { nonzero: !f.is_zero() },
        HomotopyDecision::Essential(_) => {
            Outcome::Essential(Box::new(certify(f).expect("essential homology-trivial map certifies")))
        }
    })
}

/// Runs `config.samples` instances and stops at the first essential one.
///
/// `jobs > 1` evaluates instances in parallel; the report is identical for
/// every value of `jobs`.
pub fn gh_search(config: &SearchConfig, jobs: usize) -> Result<CounterexampleReport> {
    config.validate()?;
    let start = Instant::now();
    let chunk = jobs.max(1) * 8;
    let pool = rayon::ThreadPoolBuilder::new().num_threads(jobs.max(1)).build().expect("thread pool");

    let mut tested = 0;
    let mut certified = 0;
    let mut nonzero = 0;
    let mut witness = None;
    let mut next = 0;
    'outer: while next < config.samples {
        let end = (next + chunk).min(config.samples);
        let outcomes: Vec<Result<Outcome>> = if jobs > 1 {
            pool.install(|| (next..end).into_par_iter().map(|i| evaluate(config, i)).collect())
        } else {
            (next..end).map(|i| evaluate(config, i)).collect()
        };
        for outcome in outcomes {
            tested += 1;
            match outcome? {
                Outcome::Null { nonzero: nz } => {
                    certified += 1;
                    nonzero += nz as usize;
                }
                Outcome::Essential(w) => {
                    nonzero += 1;
                    witness = Some(*w);
                    break 'outer;
                }
            }
        }
        next = end;
    }
    let kind = match config.mode {
        SearchMode::General => ReportKind::Search,
        SearchMode::TargetSphere => ReportKind::TargetSphereSearch,
    };
    Ok(CounterexampleReport {
        kind,
        modulus: config.modulus,
        config: Some(config.clone()),
        verdict: if witness.is_some() { Verdict::CounterexampleFound } else { Verdict::NoneFound },
        witness,
        instances_tested: tested,
        certified_null: certified,
        nonzero_maps: nonzero,
        elapsed_ms: start.elapsed().as_millis() as u64,
    })
}

/// [`gh_search`] restricted to maps into the sphere.
pub fn target_sphere_search(config: &SearchConfig, jobs: usize) -> Result<CounterexampleReport> {
    if config.mode != SearchMode::TargetSphere {
        return Err(Error::Precondition("target_sphere_search needs mode = target_sphere".into()));
    }
    gh_search(config, jobs)
}

/// Random unit of `Z/n`.
pub(crate) fn random_unit(rng: &mut ChaCha8Rng, m: &Modulus) -> u64 {
    loop {
        let u = rng.gen_range(1..m.get());
        if m.is_unit(u) {
            return u;
        }
    }
}

/// Pads `x` with a contractible summand and returns the inclusion.
pub(crate) fn padded_inclusion(rng: &mut ChaCha8Rng, x: &ChainComplex) -> ChainMap {
    let m = x.modulus();
    let u = random_unit(rng, m);
    let shift = rng.gen_range(x.lo()..=x.hi());
    let pad = suspend(&ChainComplex::two_term(m, u), shift);
    biproduct(x, &pad).expect("same modulus").inc_left
}
