use num_bigint::BigInt;
use num_integer::{binomial, Integer};
use num_traits::{ToPrimitive, Zero};

use crate::barcode::{full_barcode, tensor_barcode, CodomainMode};
use crate::coefficients::{CyclotomicRational, NovikovField};
use crate::complexes::{build_cone, tensor_map, tensor_product, FilteredChainComplex, GradedMap};
use crate::error::{Error, Result};
use crate::filtered_linalg::{FilteredSpace, SparseMatrix};
use crate::rational::Rational;

use super::cone::{cone_report, egg_cone_report};
use super::model::EggBeaterModel;

/// qb_k = Σ_s b_{k+2Ns} over in-range indices; N = 0 means qb_k = b_k.
pub fn quantum_betti(betti: &[u64], chern: u32, k: i64) -> u64 {
    let at = |i: i64| {
        if i >= 0 && (i as usize) < betti.len() {
            betti[i as usize]
        } else {
            0
        }
    };
    if chern == 0 {
        return at(k);
    }
    let period = 2 * chern as i64;
    let top = betti.len() as i64;
    // every index k + period·s in [0, top)
    let first = k.rem_euclid(period);
    (0..)
        .map(|s| first + s * period)
        .take_while(|i| *i < top)
        .map(at)
        .sum()
}

pub fn binomial_big(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    binomial(BigInt::from(n), BigInt::from(k))
}

/// Whether C(2p, p) ≡ 2 (mod p).
pub fn babbage_holds(p: u32) -> bool {
    binomial_big(2 * p as u64, p as u64).mod_floor(&BigInt::from(p)) == BigInt::from(2u32 % p)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductMultiplicity {
    pub m1: BigInt,
    pub divisible: bool,
    /// (qb_p + 2 qb_0 + qb_{−p}) mod p.
    pub residue: u32,
}

/// m₁ = Σ_{k=−p+1}^{p+1} C(2p, k+p−1) · qb_{1−k}.
pub fn product_multiplicity(p: u32, betti: &[u64], chern: u32) -> Result<ProductMultiplicity> {
    if !crate::coefficients::is_prime(p) {
        return Err(Error::Config(format!("{p} is not prime")));
    }
    let pi = p as i64;
    let m1: BigInt = (-pi + 1..=pi + 1)
        .map(|k| binomial_big(2 * p as u64, (k + pi - 1) as u64) * BigInt::from(quantum_betti(betti, chern, 1 - k)))
        .sum();
    let qb = |k: i64| BigInt::from(quantum_betti(betti, chern, k));
    let residue = (qb(pi) + BigInt::from(2) * qb(0) + qb(-pi))
        .mod_floor(&BigInt::from(p))
        .to_u32()
        .expect("residue below p");
    Ok(ProductMultiplicity {
        divisible: m1.mod_floor(&BigInt::from(p)).is_zero(),
        m1,
        residue,
    })
}

/// Zero-boundary complex with `ranks[i]` generators at filtration 0 in degree i.
pub fn betti_complex(field: &NovikovField, ranks: &[u64]) -> Result<FilteredChainComplex> {
    if ranks.is_empty() {
        return Err(Error::Config("need at least one rank".into()));
    }
    let spaces = ranks
        .iter()
        .enumerate()
        .map(|(i, r)| {
            FilteredSpace::new(
                (0..*r).map(|a| format!("m{i}.{a}")).collect(),
                vec![Rational::zero(); *r as usize],
                field.clone(),
            )
        })
        .collect::<Result<Vec<_>>>()?;
    let bds = (1..ranks.len())
        .map(|i| SparseMatrix::zeros(ranks[i - 1] as usize, ranks[i] as usize))
        .collect();
    FilteredChainComplex::new(field.clone(), 0, spaces, bds, Rational::zero())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Crosscheck {
    /// Degree-1 concise multiplicity from the SVD of Cone(T⊗𝕀 − ξ𝕀).
    pub direct: usize,
    /// The same from the tensor rules applied to the egg cone barcode.
    pub via_tensor: usize,
    /// m₁ from the closed formula with D's ranks as Betti numbers.
    pub formula: BigInt,
    pub direct_min_positive: Option<Rational>,
    pub via_tensor_min_positive: Option<Rational>,
}

impl Crosscheck {
    pub fn agrees(&self) -> bool {
        BigInt::from(self.direct) == self.formula
            && self.direct == self.via_tensor
            && self.direct_min_positive == self.via_tensor_min_positive
    }
}

/// Computes the degree-1 concise multiplicity of Cone_{C⊗D}(T⊗𝕀 − ξ_p^q𝕀)
/// directly and through the tensor rules, for D with zero boundary.
pub fn product_cone_crosscheck(model: &EggBeaterModel, d: &FilteredChainComplex, q: u32) -> Result<Crosscheck> {
    for k in d.degrees() {
        if !d.boundary_matrix(k).is_zero() {
            return Err(Error::Precondition(format!("factor boundary is nonzero in degree {k}")));
        }
    }
    let c = &model.complex;
    let cd = tensor_product(c, d)?;
    let t = tensor_map(c, d, &model.rotation, &GradedMap::identity(d))?;
    let shift = CyclotomicRational::xi_pow(model.p, q as i64);
    let cone = build_cone(&cd, &t, &shift)?;
    let direct = cone_report(&cone.complex, model.p, &model.lambda, q)?;
    let direct_deg = direct.degree(1);

    let egg = egg_cone_report(model, q, None)?;
    let d_bars = full_barcode(d, CodomainMode::Kernel)?;
    let combined = tensor_barcode(&egg.barcode, &d_bars)?.concise();
    let lengths = combined.finite_lengths(1);

    let ranks: Vec<u64> = (0..=d.hi().max(0))
        .map(|j| if j < d.lo() { 0 } else { d.dim(j) as u64 })
        .collect();
    let formula = if d.lo() >= 0 {
        product_multiplicity(model.p, &ranks, 0)?.m1
    } else {
        return Err(Error::Precondition("factor must start in degree 0 or above".into()));
    };
    Ok(Crosscheck {
        direct: direct_deg.map_or(0, |r| r.concise),
        via_tensor: combined.multiplicity(1),
        formula,
        direct_min_positive: direct_deg.and_then(|r| r.min_positive_length.clone()),
        via_tensor_min_positive: lengths.last().cloned(),
    })
}
