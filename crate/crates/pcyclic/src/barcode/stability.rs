use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::complexes::{verify_complex, FilteredChainComplex, ViolationKind};
use crate::error::Result;
use crate::rational::{rat, Rational};

use super::bar::Barcode;
use super::compute::{full_barcode, CodomainMode};

/// max_i |β_i(a) − β_i(b)| over the degree-k finite lengths sorted longest
/// first, the shorter list padded with zeros.
pub fn compare_barcodes(a: &Barcode, b: &Barcode, k: i64) -> Rational {
    let la = a.finite_lengths(k);
    let lb = b.finite_lengths(k);
    let n = la.len().max(lb.len());
    let zero = Rational::zero();
    (0..n)
        .map(|i| (la.get(i).unwrap_or(&zero) - lb.get(i).unwrap_or(&zero)).abs())
        .max()
        .unwrap_or(zero)
}

/// Worst degree-wise comparison.
pub fn compare_all_degrees(a: &Barcode, b: &Barcode) -> Rational {
    let mut degs = a.degrees();
    degs.extend(b.degrees());
    degs.into_iter().map(|k| compare_barcodes(a, b, k)).max().unwrap_or_else(Rational::zero)
}

#[derive(Clone, Debug)]
pub struct ProbeConfig {
    pub delta: Rational,
    pub seeds: Vec<u64>,
    pub mode: CodomainMode,
}

#[derive(Clone, Debug)]
pub struct ProbeReport {
    pub delta: Rational,
    /// The hard gate 4δ.
    pub bound: Rational,
    /// (seed, deviation) for every seed that produced a valid complex.
    pub deviations: Vec<(u64, Rational)>,
    /// Seeds whose perturbation broke ∂-monotonicity.
    pub skipped: Vec<u64>,
    pub max_deviation: Rational,
}

impl ProbeReport {
    pub fn within_bound(&self) -> bool {
        self.max_deviation <= self.bound
    }
}

/// Random offset in [−δ, δ] on a grid of 1/8 of δ.
fn offset(rng: &mut ChaCha8Rng, delta: &Rational) -> Rational {
    delta * rat(rng.gen_range(-8..=8), 8)
}

/// Perturbs filtrations of `c` per group by at most δ, maps the result through
/// `transform` (for example a cone construction), and compares barcodes of the
/// transformed complexes. `group_of(k, i)` assigns generators that must move
/// together; generators of one group receive the same offset.
pub fn stability_probe_with(
    c: &FilteredChainComplex,
    cfg: &ProbeConfig,
    group_of: &dyn Fn(i64, usize) -> usize,
    transform: &dyn Fn(&FilteredChainComplex) -> Result<FilteredChainComplex>,
) -> Result<ProbeReport> {
    let reference = full_barcode(&transform(c)?, cfg.mode)?;
    let groups = c.degrees().flat_map(|k| (0..c.dim(k)).map(move |i| (k, i))).map(|(k, i)| group_of(k, i)).max();
    let mut deviations = Vec::new();
    let mut skipped = Vec::new();
    for &seed in &cfg.seeds {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let offsets: Vec<Rational> = (0..=groups.unwrap_or(0)).map(|_| offset(&mut rng, &cfg.delta)).collect();
        let moved = c.with_filtrations(|k, i| c.space(k).filtration(i) + &offsets[group_of(k, i)])?;
        let broken = verify_complex(&moved).iter().any(|v| v.kind == ViolationKind::NotStrict);
        if broken {
            skipped.push(seed);
            continue;
        }
        let Ok(target) = transform(&moved) else {
            skipped.push(seed);
            continue;
        };
        let bc = full_barcode(&target, cfg.mode)?;
        deviations.push((seed, compare_all_degrees(&reference, &bc)));
    }
    let max_deviation = deviations.iter().map(|(_, d)| d.clone()).max().unwrap_or_else(Rational::zero);
    Ok(ProbeReport {
        bound: &cfg.delta * Rational::from_integer(4.into()),
        delta: cfg.delta.clone(),
        deviations,
        skipped,
        max_deviation,
    })
}

/// Independent per-generator perturbations of size ≤ δ on `c` itself.
pub fn stability_probe(c: &FilteredChainComplex, cfg: &ProbeConfig) -> Result<ProbeReport> {
    let offsets: Vec<usize> = c.degrees().map(|k| c.dim(k)).collect();
    let lo = c.lo();
    let starts: Vec<usize> = offsets
        .iter()
        .scan(0, |acc, d| {
            let s = *acc;
            *acc += d;
            Some(s)
        })
        .collect();
    stability_probe_with(c, cfg, &|k, i| starts[(k - lo) as usize] + i, &|x| Ok(x.clone()))
}
