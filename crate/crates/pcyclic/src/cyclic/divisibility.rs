use std::collections::BTreeMap;

use num_traits::Zero;

use crate::barcode::{BarLength, Barcode};
use crate::rational::Rational;

/// 𝔬_k = max_s (β_{sp+1} − β_{(s+1)p}) for lengths β₁ ≥ β₂ ≥ …, with β_j = 0
/// past the end of the list.
pub fn divisibility_invariant_of_lengths(lengths: &[Rational], p: u32) -> Rational {
    let mut sorted: Vec<Rational> = lengths.to_vec();
    sorted.sort_by(|a, b| b.cmp(a));
    let p = p as usize;
    let zero = Rational::zero();
    let beta = |j: usize| sorted.get(j - 1).cloned().unwrap_or_else(|| zero.clone());
    let blocks = sorted.len().div_ceil(p);
    (0..blocks)
        .map(|s| beta(s * p + 1) - beta((s + 1) * p))
        .max()
        .unwrap_or(zero)
}

/// 𝔬 restricted to degree k of a concise barcode (finite bars only).
pub fn divisibility_invariant(barcode: &Barcode, p: u32, k: i64) -> Rational {
    let lengths: Vec<Rational> = barcode
        .concise()
        .finite_lengths(k);
    divisibility_invariant_of_lengths(&lengths, p)
}

/// sup over all degrees present in the barcode.
pub fn divisibility_invariant_all(barcode: &Barcode, p: u32) -> Rational {
    barcode
        .degrees()
        .into_iter()
        .map(|k| divisibility_invariant(barcode, p, k))
        .max()
        .unwrap_or_else(Rational::zero)
}

/// Whether every distinct concise bar (degree, endpoint class, length) occurs
/// with multiplicity divisible by p.
pub fn verify_p_tuple_multiplicity(barcode: &Barcode, p: u32) -> bool {
    let mut counts: BTreeMap<(i64, Rational, BarLength), usize> = BTreeMap::new();
    for b in barcode.concise().bars() {
        *counts.entry((b.degree, b.endpoint.clone(), b.length.clone())).or_default() += 1;
    }
    counts.values().all(|m| m % p as usize == 0)
}
