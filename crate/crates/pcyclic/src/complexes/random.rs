//! Seeded random complexes whose barcode is known by construction.

use num_traits::Zero;
use rand::Rng;

use crate::coefficients::{CyclotomicRational, NovikovField, NovikovScalar};
use crate::error::{Error, Result};
use crate::filtered_linalg::{FilteredSpace, SparseMatrix, SparseVector};
use crate::rational::{int, rat, Rational};

use super::complex::FilteredChainComplex;
use super::graded::GradedMap;

/// A bar planted by the generator: `end = None` for an infinite bar.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlantedBar {
    pub degree: i64,
    pub start: Rational,
    pub end: Option<Rational>,
}

#[derive(Clone, Debug)]
pub struct RandomComplexConfig {
    pub lo: i64,
    pub hi: i64,
    /// Number of two-generator pieces b → c·a.
    pub pairs: usize,
    /// Number of cycles that never bound.
    pub singletons: usize,
    /// Lower bound for every finite bar length (the strictness of the complex).
    pub strictness: Rational,
    /// Apply a random filtration-preserving change of basis per degree.
    pub scramble: bool,
}

pub struct RandomComplex {
    pub complex: FilteredChainComplex,
    pub bars: Vec<PlantedBar>,
}

pub fn random_nonzero_cyclo<R: Rng>(rng: &mut R, p: u32) -> CyclotomicRational {
    loop {
        let coords: Vec<Rational> = (0..p - 1)
            .map(|_| if rng.gen_bool(0.5) { Rational::zero() } else { rat(rng.gen_range(-3..=3), rng.gen_range(1..=2)) })
            .collect();
        let c = CyclotomicRational::from_coords(p, &coords).expect("width matches");
        if !c.is_zero() {
            return c;
        }
    }
}

/// Random rational in [0, 4) with denominator up to 4.
fn random_level<R: Rng>(rng: &mut R) -> Rational {
    rat(rng.gen_range(0..16), 4)
}

/// Random filtration-preserving automorphism 𝕀 + N of one degree: N only sends
/// e_j into directions of strictly smaller filtration, so it is nilpotent and
/// the inverse is a finite series.
fn random_unipotent<R: Rng>(rng: &mut R, space: &FilteredSpace, field: &NovikovField) -> (SparseMatrix, SparseMatrix) {
    let n = space.dim();
    let p = field.prime;
    let mut cols = Vec::with_capacity(n);
    for j in 0..n {
        let mut entries = vec![(j, NovikovScalar::one(p))];
        for i in 0..n {
            let gap = space.filtration(j) - space.filtration(i);
            if gap > Rational::zero() && rng.gen_bool(0.35) {
                // coefficient t^e with ℓ(e_i) − e ≤ ℓ(e_j) − gap/…; e = 0 suffices
                // for trivial Γ, and e ≥ 0 keeps it non-raising otherwise.
                let e = if field.gamma.is_trivial() { int(0) } else { int(rng.gen_range(0..=1)) };
                entries.push((i, NovikovScalar::monomial(e, random_nonzero_cyclo(rng, p))));
            }
        }
        cols.push(SparseVector::from_entries(n, entries));
    }
    let u = SparseMatrix::from_columns(n, cols);
    let nil = u.sub(&SparseMatrix::identity(n, p));
    let mut inv = SparseMatrix::identity(n, p);
    let mut term = SparseMatrix::identity(n, p);
    for _ in 0..n {
        term = term.mul(&nil).neg();
        if term.is_zero() {
            break;
        }
        inv = inv.add(&term);
    }
    (u, inv)
}

pub fn random_complex<R: Rng>(rng: &mut R, field: &NovikovField, cfg: &RandomComplexConfig) -> Result<RandomComplex> {
    if cfg.hi < cfg.lo {
        return Err(Error::Config("empty degree range".into()));
    }
    if cfg.pairs > 0 && cfg.hi == cfg.lo {
        return Err(Error::Config("two-term pieces need at least two degrees".into()));
    }
    let p = field.prime;
    let ndeg = (cfg.hi - cfg.lo + 1) as usize;
    let mut filtrations: Vec<Vec<Rational>> = vec![Vec::new(); ndeg];
    // (degree index of b, index of b, index of a, coefficient)
    let mut pieces = Vec::new();
    let mut bars = Vec::new();
    for _ in 0..cfg.pairs {
        let kb = rng.gen_range(1..ndeg);
        let la = random_level(rng);
        let len = &cfg.strictness + rat(rng.gen_range(0..8), 4);
        let lb = &la + &len;
        let ia = filtrations[kb - 1].len();
        filtrations[kb - 1].push(la.clone());
        let ib = filtrations[kb].len();
        filtrations[kb].push(lb.clone());
        pieces.push((kb, ib, ia, random_nonzero_cyclo(rng, p)));
        bars.push(PlantedBar {
            degree: cfg.lo + kb as i64 - 1,
            start: la,
            end: Some(lb),
        });
    }
    for _ in 0..cfg.singletons {
        let k = rng.gen_range(0..ndeg);
        let l = random_level(rng);
        filtrations[k].push(l.clone());
        bars.push(PlantedBar {
            degree: cfg.lo + k as i64,
            start: l,
            end: None,
        });
    }
    let spaces = filtrations
        .iter()
        .enumerate()
        .map(|(k, f)| {
            FilteredSpace::new(
                (0..f.len()).map(|i| format!("g{}_{i}", cfg.lo + k as i64)).collect(),
                f.clone(),
                field.clone(),
            )
        })
        .collect::<Result<Vec<_>>>()?;
    let mut bds: Vec<SparseMatrix> = (1..ndeg)
        .map(|k| SparseMatrix::zeros(spaces[k - 1].dim(), spaces[k].dim()))
        .collect();
    for (kb, ib, ia, c) in pieces {
        let m = &bds[kb - 1];
        let mut t: Vec<(usize, usize, NovikovScalar)> = m.triplets().map(|(i, j, s)| (i, j, s.clone())).collect();
        t.push((ia, ib, NovikovScalar::constant(c)));
        bds[kb - 1] = SparseMatrix::from_triplets(m.rows(), m.cols(), t);
    }
    if cfg.scramble {
        let changes: Vec<(SparseMatrix, SparseMatrix)> =
            spaces.iter().map(|s| random_unipotent(rng, s, field)).collect();
        for k in 1..ndeg {
            // ∂' = U_{k−1} ∂ U_k^{-1}
            bds[k - 1] = changes[k - 1].0.mul(&bds[k - 1]).mul(&changes[k].1);
        }
    }
    let complex = FilteredChainComplex::new(field.clone(), cfg.lo, spaces, bds, cfg.strictness.clone())?;
    Ok(RandomComplex { complex, bars })
}

/// Random degree +1 family M with ℓ(M e) < ℓ(e) on every basis vector.
pub fn random_lowering_homotopy<R: Rng>(rng: &mut R, c: &FilteredChainComplex, density: f64) -> GradedMap {
    let p = c.prime();
    let comps = c
        .degrees()
        .map(|k| {
            let (src, dst) = (c.space(k), c.space(k + 1));
            let mut t = Vec::new();
            for j in 0..src.dim() {
                for i in 0..dst.dim() {
                    if dst.filtration(i) < src.filtration(j) && rng.gen_bool(density) {
                        t.push((i, j, NovikovScalar::constant(random_nonzero_cyclo(rng, p))));
                    }
                }
            }
            SparseMatrix::from_triplets(dst.dim(), src.dim(), t)
        })
        .collect();
    GradedMap::new(1, c.lo(), comps)
}
