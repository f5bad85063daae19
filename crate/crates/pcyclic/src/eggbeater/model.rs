use num_traits::{Signed, Zero};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::coefficients::{CyclotomicRational, ExponentGroup, NovikovField, NovikovScalar};
use crate::complexes::{verify_complex, FilteredChainComplex, GradedMap};
use crate::error::{Error, Result};
use crate::filtered_linalg::{FilteredMap, FilteredSpace, SparseMatrix, SparseVector};
use crate::rational::{rat, Rational};

use super::signs::{cz_index, SignSequence};

/// One generator: a sign sequence and its position on the rotation orbit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub signs: SignSequence,
    pub orbit: u32,
}

#[derive(Clone, Debug)]
pub struct EggBeaterModel {
    pub p: u32,
    pub lambda: Rational,
    pub seed: u64,
    /// Jitter in (0, 1/2) per sign mask, shared by the whole orbit.
    pub jitter: Vec<Rational>,
    pub complex: FilteredChainComplex,
    /// Generators per degree, in basis order (mask-major, orbit-minor).
    pub generators: Vec<Vec<Generator>>,
    /// The free Z_p rotation (S, j) ↦ (S, j + 1).
    pub rotation: GradedMap,
}

impl EggBeaterModel {
    pub fn generator(&self, k: i64, i: usize) -> &Generator {
        &self.generators[(k - self.complex.lo()) as usize][i]
    }

    /// Orbit id of basis vector i in degree k (its sign mask).
    pub fn orbit_of(&self, k: i64, i: usize) -> u64 {
        self.generator(k, i).signs.mask()
    }

    /// The same complex over Γ = `gamma`; boundaries and rotation are unchanged.
    pub fn over_gamma(&self, gamma: ExponentGroup) -> Result<FilteredChainComplex> {
        let c = &self.complex;
        let field = NovikovField::new(self.p, gamma)?;
        let spaces = c
            .degrees()
            .map(|k| {
                let s = c.space(k);
                FilteredSpace::new(s.labels().to_vec(), s.filtrations().to_vec(), field.clone())
            })
            .collect::<Result<Vec<_>>>()?;
        let bds = (c.lo() + 1..=c.hi()).map(|k| c.boundary_matrix(k)).collect();
        FilteredChainComplex::new(field, c.lo(), spaces, bds, c.strictness().clone())
    }

    pub fn action(&self, mask: u64) -> Rational {
        let plus = mask.count_ones() as i64;
        &self.lambda * (Rational::from_integer(plus.into()) + &self.jitter[mask as usize])
    }
}

fn koszul_sign(mask: u64, bit: u32) -> i64 {
    let below = (mask & ((1u64 << bit) - 1)).count_ones();
    if below % 2 == 0 {
        1
    } else {
        -1
    }
}

pub fn build_model(p: u32, lambda: &Rational, seed: u64) -> Result<EggBeaterModel> {
    if !crate::coefficients::is_prime(p) {
        return Err(Error::Config(format!("{p} is not prime")));
    }
    if !lambda.is_positive() {
        return Err(Error::Config("lambda must be positive".into()));
    }
    if p > 13 {
        return Err(Error::Config("p > 13 gives more than 2^26 sign sequences".into()));
    }
    let field = NovikovField::plain(p)?;
    let n = 2 * p;
    let total = 1u64 << n;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut order: Vec<u64> = (0..total).collect();
    order.shuffle(&mut rng);
    let denom = 2 * (total as i64 + 1);
    let mut jitter = vec![Rational::zero(); total as usize];
    for (rank, mask) in order.iter().enumerate() {
        jitter[*mask as usize] = rat(rank as i64 + 1, denom);
    }

    let lo = -(p as i64) + 1;
    let hi = p as i64 + 1;
    let mut generators: Vec<Vec<Generator>> = Vec::new();
    let mut spaces = Vec::new();
    let mut index_of: Vec<std::collections::HashMap<u64, usize>> = Vec::new();
    for k in lo..=hi {
        let plus = (k + p as i64 - 1) as u32;
        let masks: Vec<u64> = (0..total).filter(|m| m.count_ones() == plus).collect();
        let mut gens = Vec::new();
        let mut labels = Vec::new();
        let mut filt = Vec::new();
        let mut idx = std::collections::HashMap::new();
        for m in &masks {
            let signs = SignSequence::from_mask(p, *m);
            debug_assert_eq!(cz_index(&signs), k);
            idx.insert(*m, gens.len());
            let level = lambda * (Rational::from_integer((plus as i64).into()) + &jitter[*m as usize]);
            for j in 0..p {
                labels.push(format!("{}/{j}", signs.render()));
                filt.push(level.clone());
                gens.push(Generator {
                    signs: signs.clone(),
                    orbit: j,
                });
            }
        }
        spaces.push(FilteredSpace::new(labels, filt, field.clone())?);
        generators.push(gens);
        index_of.push(idx);
    }
    let mut bds = Vec::new();
    for k in lo + 1..=hi {
        let src = &generators[(k - lo) as usize];
        let dst_idx = &index_of[(k - 1 - lo) as usize];
        let rows = generators[(k - 1 - lo) as usize].len();
        let mut cols = Vec::with_capacity(src.len());
        for g in src {
            let mask = g.signs.mask();
            let mut entries = Vec::new();
            for bit in 0..n {
                if mask >> bit & 1 == 1 {
                    let target = mask & !(1 << bit);
                    let row = dst_idx[&target] + g.orbit as usize;
                    entries.push((row, NovikovScalar::from_integer(p, koszul_sign(mask, bit))));
                }
            }
            cols.push(SparseVector::from_entries(rows, entries));
        }
        bds.push(SparseMatrix::from_columns(rows, cols));
    }
    let complex = FilteredChainComplex::new(field, lo, spaces, bds, lambda / Rational::from_integer(2.into()))?;
    let bad = verify_complex(&complex);
    if !bad.is_empty() {
        return Err(Error::Verification(format!("egg-beater complex failed its checks: {bad:?}")));
    }
    let rotation = GradedMap::from_fn(&complex, &complex, 0, |k| {
        let dim = complex.dim(k);
        let pu = p as usize;
        let cols = (0..dim)
            .map(|i| {
                let target = i - i % pu + (i % pu + 1) % pu;
                SparseVector::unit(dim, target, p)
            })
            .collect();
        SparseMatrix::from_columns(dim, cols)
    })?;
    Ok(EggBeaterModel {
        p,
        lambda: lambda.clone(),
        seed,
        jitter,
        complex,
        generators,
        rotation,
    })
}

/// The p×p block of R_p − ξ_p𝕀 on one orbit: −ξ_p on the diagonal, 1 below it
/// and 1 in the top-right corner.
pub fn q_matrix(p: u32) -> Result<FilteredMap> {
    let field = NovikovField::plain(p)?;
    let space = FilteredSpace::new((0..p).map(|j| format!("a{j}")).collect(), vec![Rational::zero(); p as usize], field)?;
    let minus_xi = NovikovScalar::constant(-CyclotomicRational::xi(p));
    let mut t = Vec::new();
    for j in 0..p as usize {
        t.push((j, j, minus_xi.clone()));
        t.push(((j + 1) % p as usize, j, NovikovScalar::one(p)));
    }
    let m = SparseMatrix::from_triplets(p as usize, p as usize, t);
    FilteredMap::new(space.clone(), space, m)
}

/// Σ_i ξ_p^{p−1−i} e_i, spanning the kernel of the Q_p block.
pub fn q_kernel_vector(p: u32) -> SparseVector {
    SparseVector::from_dense(
        &(0..p as i64)
            .map(|i| NovikovScalar::constant(CyclotomicRational::xi_pow(p, p as i64 - 1 - i)))
            .collect::<Vec<_>>(),
    )
}
