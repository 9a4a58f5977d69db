//! Koszul objects `S/I = S/x_1 ⊗ ... ⊗ S/x_k` with the unit
//! `η: S -> S/I` and the counit `δ: S/I -> Σ^k S`.

use serde::{Deserialize, Serialize};

use crate::complex::{
    cone, decide_null_homotopy, homology, induced_homology_map, suspend, tensor_maps, ChainComplex, ChainMap,
};
use crate::error::{Error, Result};
use crate::modulus::{gcd, Modulus};
use crate::ring::{annihilator, IdealZn};

#[derive(Debug, Clone)]
pub struct KoszulBundle {
    /// Generators as given; `S/I` depends on this list, not only on `I`.
    pub generators: Vec<u64>,
    pub complex: ChainComplex,
    pub unit: ChainMap,
    pub counit: ChainMap,
}

pub fn koszul(modulus: &Modulus, generators: &[u64]) -> Result<KoszulBundle> {
    if generators.is_empty() {
        return Err(Error::Precondition("a Koszul object needs at least one generator".into()));
    }
    let s = ChainComplex::sphere(modulus);
    let mut unit: Option<ChainMap> = None;
    let mut counit: Option<ChainMap> = None;
    for &x in generators {
        let c = cone(&ChainMap::scalar(&s, x))?;
        unit = Some(match unit {
            None => c.inclusion,
            Some(u) => tensor_maps(&u, &c.inclusion)?,
        });
        counit = Some(match counit {
            None => c.projection,
            Some(d) => tensor_maps(&d, &c.projection)?,
        });
    }
    let (unit, counit) = (unit.expect("nonempty"), counit.expect("nonempty"));
    debug_assert_eq!(unit.source(), &s);
    debug_assert_eq!(counit.target(), &suspend(&s, generators.len() as i64));
    Ok(KoszulBundle {
        generators: generators.iter().map(|&x| modulus.reduce(x)).collect(),
        complex: unit.target().clone(),
        unit,
        counit,
    })
}

/// Results of checking the homology of `S/I` against `η` and `δ`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KoszulContracts {
    /// `H_l(S/I) = 0` for `l < 0`.
    pub below_zero_vanishes: bool,
    /// `H_0(S/I) ≅ Z/n / I` as abstract modules.
    pub h0_is_quotient: bool,
    /// `η_*: Z/n -> H_0(S/I)` is onto with kernel `I`.
    pub unit_is_quotient_map: bool,
    /// `δ_*: H_k(S/I) -> Z/n` is injective with image `ann I`.
    pub counit_is_annihilator_inclusion: bool,
    /// `H_l(S/I) = 0` for `l > k`.
    pub above_top_vanishes: bool,
}

impl KoszulContracts {
    pub fn all(&self) -> bool {
        self.below_zero_vanishes
            && self.h0_is_quotient
            && self.unit_is_quotient_map
            && self.counit_is_annihilator_inclusion
            && self.above_top_vanishes
    }
}

impl KoszulBundle {
    pub fn modulus(&self) -> &Modulus {
        self.complex.modulus()
    }

    pub fn ideal(&self) -> IdealZn {
        IdealZn::generated_by(self.modulus(), &self.generators)
    }

    pub fn top_degree(&self) -> i64 {
        self.generators.len() as i64
    }

    pub fn check_contracts(&self) -> KoszulContracts {
        let m = self.modulus();
        let n = m.get();
        let k = self.top_degree();
        let ideal = self.ideal();
        let h = homology(&self.complex);

        let below_zero_vanishes = h.groups.iter().filter(|g| g.degree < 0).all(|g| g.is_zero());
        let above_top_vanishes = h.groups.iter().filter(|g| g.degree > k).all(|g| g.is_zero());

        let quotient_order = ideal.generator();
        let h0 = h.factors(0);
        let expected: Vec<u64> = if quotient_order > 1 { vec![quotient_order] } else { vec![] };
        let h0_is_quotient = h0.factors == expected;

        // η_*: the image of 1 generates H_0(S/I) and its annihilator is I.
        let eta = induced_homology_map(&self.unit);
        let unit_is_quotient_map = match (eta.map(0), h.group(0)) {
            (Some(map), Some(g0)) => {
                let v = map.matrix.col_vec(0);
                let zero = vec![0; v.len()];
                let kills = |d: u64| g0.same_class(&v.iter().map(|&c| m.mul(c, d)).collect::<Vec<_>>(), &zero);
                let kernel_gen = m.divisors().into_iter().find(|&d| kills(d)).unwrap_or(n);
                // onto: the cyclic submodule Z/n / (kernel_gen) fills H_0.
                let onto = kernel_gen as u128 == h0.order();
                kernel_gen == quotient_order && onto
            }
            _ => false,
        };

        // δ_*: image ideal and injectivity via orders.
        let delta = induced_homology_map(&self.counit);
        let counit_is_annihilator_inclusion = match delta.map(k) {
            Some(map) => {
                let image_gen = (0..map.matrix.cols()).fold(n, |acc, j| {
                    let c = if map.matrix.rows() == 1 { map.matrix.get(0, j) } else { 0 };
                    gcd(acc, c)
                });
                let image = IdealZn::generated_by(m, &[image_gen]);
                image == annihilator(&ideal) && image.size() as u128 == h.factors(k).order()
            }
            None => false,
        };

        KoszulContracts {
            below_zero_vanishes,
            h0_is_quotient,
            unit_is_quotient_map,
            counit_is_annihilator_inclusion,
            above_top_vanishes,
        }
    }

    /// Whether `η ∘ z: S -> S/I` is null-homotopic.
    pub fn unit_times_is_null(&self, z: u64) -> bool {
        let s = self.unit.source();
        let scaled = ChainMap::scalar(s, z);
        decide_null_homotopy(&self.unit.compose(&scaled).expect("composable")).is_null()
    }

    /// Whether multiplication by `x` on `S/I` is null-homotopic.
    pub fn scalar_is_null(&self, x: u64) -> bool {
        decide_null_homotopy(&ChainMap::scalar(&self.complex, x)).is_null()
    }
}
