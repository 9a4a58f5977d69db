use crate::complex::{ChainComplex, ChainMap};
use crate::linalg::{howell_form, kernel_basis, module_structure, solve_linear, HowellForm, InvariantFactors, MatZn};
use crate::modulus::Modulus;

/// `H_i = ker d[i] / im d[i+1]`, presented on a canonical set of cycles.
#[derive(Debug, Clone)]
pub struct HomologyGroup {
    pub degree: i64,
    pub factors: InvariantFactors,
    /// Columns are the chosen cycle representatives (Howell basis of the
    /// cycle module).
    pub cycles: MatZn,
    /// Rows `c` with `cycles * c` a boundary; together with `n` they present
    /// `H_i` on the cycle generators.
    pub relations: MatZn,
    /// `d[i+1]`, whose columns span the boundaries.
    pub boundaries: MatZn,
    relation_form: HowellForm,
}

impl HomologyGroup {
    fn compute(x: &ChainComplex, i: i64) -> Self {
        let cycles = kernel_basis(&x.d(i)).transpose();
        let boundaries = x.d(i + 1);
        let g = cycles.cols();
        let system = cycles.hstack(&boundaries.neg());
        let rel_full = kernel_basis(&system);
        let relations = rel_full.block(0, 0, rel_full.rows(), g);
        let factors = module_structure(g, &relations);
        let relation_form = howell_form(&relations);
        HomologyGroup { degree: i, factors, cycles, relations, boundaries, relation_form }
    }

    pub fn generators(&self) -> usize {
        self.cycles.cols()
    }

    pub fn is_zero(&self) -> bool {
        self.factors.is_zero()
    }

    /// Coordinates of the class of the cycle `v` on the cycle generators,
    /// or `None` if `v` is not a cycle.
    pub fn coordinates(&self, v: &[u64]) -> Option<Vec<u64>> {
        let g = self.generators();
        let sys = self.cycles.hstack(&self.boundaries);
        solve_linear(&sys, v).expect("shape").map(|sol| sol[..g].to_vec())
    }

    pub fn is_boundary(&self, v: &[u64]) -> bool {
        solve_linear(&self.boundaries, v).expect("shape").is_some()
    }

    /// Whether two coordinate vectors name the same homology class.
    pub fn same_class(&self, a: &[u64], b: &[u64]) -> bool {
        let m = self.cycles.modulus();
        let diff: Vec<u64> = a.iter().zip(b).map(|(&x, &y)| m.sub(x, y)).collect();
        self.relation_form.contains(&diff)
    }
}

/// Homology of a complex in every degree of its support.
#[derive(Debug, Clone)]
pub struct HomologyData {
    pub modulus: Modulus,
    pub lo: i64,
    pub groups: Vec<HomologyGroup>,
}

impl HomologyData {
    /// Group in degree `i`; degrees outside the support give the zero group.
    pub fn group(&self, i: i64) -> Option<&HomologyGroup> {
        let k = i - self.lo;
        (k >= 0).then(|| self.groups.get(k as usize)).flatten()
    }

    pub fn factors(&self, i: i64) -> InvariantFactors {
        self.group(i).map(|g| g.factors.clone()).unwrap_or_else(|| InvariantFactors::zero(&self.modulus))
    }

    pub fn is_acyclic(&self) -> bool {
        self.groups.iter().all(HomologyGroup::is_zero)
    }

    /// `(degree, factors)` for every degree with nonzero homology.
    pub fn nonzero(&self) -> Vec<(i64, Vec<u64>)> {
        self.groups.iter().filter(|g| !g.is_zero()).map(|g| (g.degree, g.factors.factors.clone())).collect()
    }
}

pub fn homology(x: &ChainComplex) -> HomologyData {
    HomologyData {
        modulus: x.modulus().clone(),
        lo: x.lo(),
        groups: x.degrees().map(|i| HomologyGroup::compute(x, i)).collect(),
    }
}

/// The map induced on `H_i` in the cycle bases of source and target.
#[derive(Debug, Clone)]
pub struct InducedMap {
    pub degree: i64,
    /// Column `j` holds the target coordinates of the image of source cycle `j`.
    pub matrix: MatZn,
    pub is_zero: bool,
}

/// Induced maps in every degree of the source support, together with the
/// homology of source and target they are expressed in.
#[derive(Debug, Clone)]
pub struct InducedHomology {
    pub source: HomologyData,
    pub target: HomologyData,
    pub maps: Vec<InducedMap>,
}

impl InducedHomology {
    pub fn is_zero(&self) -> bool {
        self.maps.iter().all(|m| m.is_zero)
    }

    pub fn map(&self, i: i64) -> Option<&InducedMap> {
        self.maps.iter().find(|m| m.degree == i)
    }

    /// Equality of induced maps as homomorphisms (matrices compared modulo
    /// the target relations). Both sides must share source and target.
    pub fn same_as(&self, other: &InducedHomology) -> bool {
        self.maps.iter().zip(&other.maps).all(|(a, b)| {
            let Some(tg) = self.target.group(a.degree) else { return true };
            (0..a.matrix.cols()).all(|j| tg.same_class(&a.matrix.col_vec(j), &b.matrix.col_vec(j)))
        }) && self.maps.len() == other.maps.len()
    }
}

/// Map induced on homology by `f`; maps of nonzero degree are first
/// rewritten as degree-0 maps out of a suspended source.
pub fn induced_homology_map(f: &ChainMap) -> InducedHomology {
    let f = f.to_degree_zero();
    let source = homology(f.source());
    let target = homology(f.target());
    let m = f.modulus().clone();
    let maps = source
        .groups
        .iter()
        .map(|sg| {
            let i = sg.degree;
            let image = f.component(i).mul(&sg.cycles);
            match target.group(i) {
                Some(tg) => {
                    let mut matrix = MatZn::zeros(&m, tg.generators(), sg.generators());
                    let mut is_zero = true;
                    for j in 0..image.cols() {
                        let v = image.col_vec(j);
                        let coords = tg.coordinates(&v).expect("image of a cycle is a cycle");
                        for (r, c) in coords.into_iter().enumerate() {
                            matrix.set(r, j, c);
                        }
                        if !tg.is_boundary(&v) {
                            is_zero = false;
                        }
                    }
                    InducedMap { degree: i, matrix, is_zero }
                }
                None => InducedMap { degree: i, matrix: MatZn::zeros(&m, 0, sg.generators()), is_zero: true },
            }
        })
        .collect();
    InducedHomology { source, target, maps }
}
