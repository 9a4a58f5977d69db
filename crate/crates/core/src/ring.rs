//! Ring-theoretic predicates on `Z/n`: regularity, the nilpotence and
//! annihilator criteria, CRT splitting, and ring summands cut out by ideals.
//!
//! Every predicate has a closed form (used by default) and a brute-force
//! evaluation straight from the definition; the brute-force variants are
//! public so reports and tests can cross-check the two.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::modulus::{gcd, Modulus};

/// An ideal of `Z/n`, stored by its canonical generator `g | n`.
///
/// The zero ideal has generator `n`, which is represented as `0` residue-wise
/// but stored here as `g = n` to keep `g | n` meaningful.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IdealZn {
    modulus: Modulus,
    generator: u64,
}

impl IdealZn {
    /// The ideal `(x_1, ..., x_k)`, canonicalized to `gcd(x_1, ..., x_k, n)`.
    pub fn generated_by(modulus: &Modulus, gens: &[u64]) -> Self {
        let g = gens.iter().fold(modulus.get(), |acc, &x| gcd(acc, x % modulus.get()));
        IdealZn { modulus: modulus.clone(), generator: g }
    }

    pub fn principal(modulus: &Modulus, x: u64) -> Self {
        Self::generated_by(modulus, &[x])
    }

    pub fn modulus(&self) -> &Modulus {
        &self.modulus
    }

    /// Canonical generator, a divisor of `n` (equal to `n` for the zero ideal).
    pub fn generator(&self) -> u64 {
        self.generator
    }

    pub fn is_zero(&self) -> bool {
        self.generator == self.modulus.get()
    }

    pub fn contains(&self, x: u64) -> bool {
        (x % self.modulus.get()) % self.generator == 0
    }

    /// Number of elements, `n / g`.
    pub fn size(&self) -> u64 {
        self.modulus.get() / self.generator
    }

    /// All elements in increasing order.
    pub fn elements(&self) -> Vec<u64> {
        (0..self.size()).map(|k| k * self.generator).collect()
    }
}

impl fmt::Debug for IdealZn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g = if self.is_zero() { 0 } else { self.generator };
        write!(f, "({}) ⊂ Z/{}", g, self.modulus.get())
    }
}

pub fn annihilator(i: &IdealZn) -> IdealZn {
    let n = i.modulus.get();
    IdealZn { modulus: i.modulus.clone(), generator: n / i.generator }
}

/// `{y : y * x == 0 for all x in I}` computed by scanning all residues.
pub fn annihilator_brute(i: &IdealZn) -> IdealZn {
    let m = &i.modulus;
    let elems = i.elements();
    let ann: Vec<u64> = (0..m.get()).filter(|&y| elems.iter().all(|&x| m.mul(x, y) == 0)).collect();
    IdealZn::generated_by(m, &ann)
}

pub fn nilpotence_criterion(m: &Modulus) -> bool {
    m.is_squarefree()
}

/// True iff no nonzero residue is nilpotent, checked element by element.
pub fn nilpotence_criterion_brute(m: &Modulus) -> bool {
    let n = m.get();
    // x^k == 0 for some k iff it does for k = bit length of n.
    let k = 64 - n.leading_zeros() as u64;
    (1..n).all(|x| m.pow(x, k) != 0)
}

/// `ann(ann((x))) == (x)` for every `x`. Always true for `Z/n`.
pub fn annihilator_criterion(m: &Modulus) -> bool {
    m.divisors().into_iter().all(|d| double_annihilator_check(&IdealZn::principal(m, d)))
}

pub fn annihilator_criterion_brute(m: &Modulus) -> bool {
    (0..m.get()).all(|x| {
        let i = IdealZn::principal(m, x);
        annihilator_brute(&annihilator_brute(&i)) == i
    })
}

pub fn is_regular(m: &Modulus) -> bool {
    m.is_squarefree()
}

/// `for all x there is y with x*y*x == x`, by exhaustive search.
pub fn is_regular_brute(m: &Modulus) -> bool {
    let n = m.get();
    (0..n).all(|x| (0..n).any(|y| m.mul(m.mul(x, y), x) == x))
}

/// Pairwise coprime prime-power factors of `n`, largest first
/// (`12 -> [4, 3]`).
pub fn crt_decompose(m: &Modulus) -> Vec<u64> {
    let mut parts: Vec<u64> = m.factors().iter().map(|&(p, e)| p.pow(e)).collect();
    parts.sort_unstable_by(|a, b| b.cmp(a));
    parts
}

pub fn double_annihilator_check(i: &IdealZn) -> bool {
    annihilator(&annihilator(i)) == *i
}

/// An idempotent `e` with `(e) == I`, if `I` is a ring summand of `Z/n`.
///
/// With `I = (g)`, `I` is a summand iff `gcd(g, n/g) == 1`; then `e` is the
/// CRT lift of `(0 mod g, 1 mod n/g)`.
pub fn ideal_is_ring_summand(i: &IdealZn) -> Option<u64> {
    let m = &i.modulus;
    let n = m.get();
    let g = i.generator;
    let h = n / g;
    if gcd(g, h) != 1 {
        return None;
    }
    if h == 1 {
        return Some(0);
    }
    // e = g * (g^{-1} mod h)
    let gm = Modulus::new(h).expect("h >= 2");
    let inv = gm.inverse(g % h).expect("coprime");
    Some(m.mul(g, inv))
}

/// Brute-force counterpart of [`ideal_is_ring_summand`]: the smallest
/// idempotent generating `I`.
pub fn ideal_is_ring_summand_brute(i: &IdealZn) -> Option<u64> {
    let m = &i.modulus;
    (0..m.get()).find(|&e| m.mul(e, e) == e && IdealZn::principal(m, e) == *i)
}

/// Outcome of the relative generating-hypothesis predicate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RelativeReason {
    Ok,
    NotSummand,
    QuotientNotRegular,
}

impl RelativeReason {
    pub fn as_str(self) -> &'static str {
        match self {
            RelativeReason::Ok => "ok",
            RelativeReason::NotSummand => "not-summand",
            RelativeReason::QuotientNotRegular => "quotient-not-regular",
        }
    }
}

/// `I` is a ring summand and `Z/n / I ≅ Z/g` is regular.
pub fn relative_gh_predicate(i: &IdealZn) -> (bool, RelativeReason) {
    if ideal_is_ring_summand(i).is_none() {
        return (false, RelativeReason::NotSummand);
    }
    let g = i.generator;
    let quotient_regular = g == 1 || Modulus::new(g).map(|q| q.is_squarefree()).unwrap_or(false);
    if !quotient_regular {
        return (false, RelativeReason::QuotientNotRegular);
    }
    (true, RelativeReason::Ok)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingReport {
    pub modulus: Modulus,
    pub is_regular: bool,
    pub nilpotence_criterion: bool,
    pub annihilator_criterion: bool,
    pub squarefree: bool,
    pub prime_power_factors: Vec<u64>,
    /// Canonical generator of the nilradical (`n` means the zero ideal).
    pub nilradical: u64,
    /// Whether the predicates were also evaluated by exhaustive search.
    pub brute_force_checked: bool,
}

/// Builds a [`RingReport`]; when `n <= max_brute` every predicate is
/// re-evaluated by brute force and any disagreement panics.
pub fn analyze(m: &Modulus, max_brute: u64) -> RingReport {
    let report = RingReport {
        modulus: m.clone(),
        is_regular: is_regular(m),
        nilpotence_criterion: nilpotence_criterion(m),
        annihilator_criterion: annihilator_criterion(m),
        squarefree: m.is_squarefree(),
        prime_power_factors: crt_decompose(m),
        nilradical: m.radical(),
        brute_force_checked: m.get() <= max_brute,
    };
    if report.brute_force_checked {
        assert_eq!(report.is_regular, is_regular_brute(m), "regularity disagrees with brute force");
        assert_eq!(report.nilpotence_criterion, nilpotence_criterion_brute(m));
        assert_eq!(report.annihilator_criterion, annihilator_criterion_brute(m));
    }
    report
}
