use std::collections::BTreeMap;

use crate::coefficients::NovikovScalar;
use crate::error::{Error, Result};
use crate::filtered_linalg::{FilteredSpace, SparseMatrix, SparseVector};

use super::complex::FilteredChainComplex;
use super::graded::GradedMap;

pub const TENSOR_SEP: &str = "⊗";

/// Where C_i ⊗ D_j sits inside (C ⊗ D)_{i+j}: blocks ordered by i, then
/// a-major within the block.
#[derive(Clone, Debug)]
pub struct TensorLayout {
    offsets: BTreeMap<(i64, i64), usize>,
    d_dims: BTreeMap<i64, usize>,
}

impl TensorLayout {
    pub fn new(c: &FilteredChainComplex, d: &FilteredChainComplex) -> Self {
        let mut offsets = BTreeMap::new();
        let mut fill: BTreeMap<i64, usize> = BTreeMap::new();
        for i in c.degrees() {
            for j in d.degrees() {
                let slot = fill.entry(i + j).or_insert(0);
                offsets.insert((i, j), *slot);
                *slot += c.dim(i) * d.dim(j);
            }
        }
        TensorLayout {
            offsets,
            d_dims: d.degrees().map(|j| (j, d.dim(j))).collect(),
        }
    }

    /// Index of a ⊗ b (a ∈ C_i basis, b ∈ D_j basis) in degree i + j.
    pub fn position(&self, i: i64, j: i64, a: usize, b: usize) -> usize {
        self.offsets[&(i, j)] + a * self.d_dims[&j] + b
    }

    /// Source blocks (i, j) contributing to degree m.
    pub fn blocks(&self, m: i64) -> impl Iterator<Item = (i64, i64)> + '_ {
        self.offsets.keys().copied().filter(move |(i, j)| i + j == m)
    }
}

fn tensor_space(c: &FilteredChainComplex, d: &FilteredChainComplex, layout: &TensorLayout, m: i64) -> Result<FilteredSpace> {
    let mut labels = Vec::new();
    let mut filtrations = Vec::new();
    for (i, j) in layout.blocks(m) {
        let (ci, dj) = (c.space(i), d.space(j));
        for a in 0..ci.dim() {
            for b in 0..dj.dim() {
                labels.push(format!("{}{TENSOR_SEP}{}", ci.label(a), dj.label(b)));
                filtrations.push(ci.filtration(a) + dj.filtration(b));
            }
        }
    }
    FilteredSpace::new(labels, filtrations, c.field().clone())
}

/// C ⊗ D with ∂(a⊗b) = ∂a⊗b + (−1)^{|a|} a⊗∂b and ℓ(a⊗b) = ℓ(a) + ℓ(b).
pub fn tensor_product(c: &FilteredChainComplex, d: &FilteredChainComplex) -> Result<FilteredChainComplex> {
    if c.field() != d.field() {
        return Err(Error::Config("tensor factors live over different Novikov fields".into()));
    }
    let layout = TensorLayout::new(c, d);
    let lo = c.lo() + d.lo();
    let hi = c.hi() + d.hi();
    let spaces = (lo..=hi).map(|m| tensor_space(c, d, &layout, m)).collect::<Result<Vec<_>>>()?;
    let mut bds = Vec::new();
    for m in lo + 1..=hi {
        let rows = spaces[(m - 1 - lo) as usize].dim();
        let mut cols = Vec::new();
        for (i, j) in layout.blocks(m) {
            let dc = c.boundary_matrix(i);
            let dd = d.boundary_matrix(j);
            let sign = if i.rem_euclid(2) == 0 { 1 } else { -1 };
            for a in 0..c.dim(i) {
                for b in 0..d.dim(j) {
                    let mut entries: Vec<(usize, NovikovScalar)> = Vec::new();
                    if c.dim(i - 1) > 0 {
                        for (r, s) in dc.column(a).entries() {
                            entries.push((layout.position(i - 1, j, *r, b), s.clone()));
                        }
                    }
                    if d.dim(j - 1) > 0 {
                        for (r, s) in dd.column(b).entries() {
                            let v = if sign > 0 { s.clone() } else { -s };
                            entries.push((layout.position(i, j - 1, a, *r), v));
                        }
                    }
                    cols.push(SparseVector::from_entries(rows, entries));
                }
            }
        }
        bds.push(SparseMatrix::from_columns(rows, cols));
    }
    let delta = c.strictness().min(d.strictness()).clone();
    FilteredChainComplex::new(c.field().clone(), lo, spaces, bds, delta)
}

/// F ⊗ G on C ⊗ D for degree-0 families F on C and G on D.
pub fn tensor_map(c: &FilteredChainComplex, d: &FilteredChainComplex, f: &GradedMap, g: &GradedMap) -> Result<GradedMap> {
    if f.degree() != 0 || g.degree() != 0 {
        return Err(Error::Config("tensor_map expects degree-0 maps".into()));
    }
    let layout = TensorLayout::new(c, d);
    let lo = c.lo() + d.lo();
    let hi = c.hi() + d.hi();
    let mut comps = Vec::new();
    for m in lo..=hi {
        let n: usize = layout.blocks(m).map(|(i, j)| c.dim(i) * d.dim(j)).sum();
        let mut cols = Vec::with_capacity(n);
        for (i, j) in layout.blocks(m) {
            let fi = f.at_or_zero(i, c.dim(i), c.dim(i));
            let gj = g.at_or_zero(j, d.dim(j), d.dim(j));
            for a in 0..c.dim(i) {
                for b in 0..d.dim(j) {
                    let mut entries = Vec::new();
                    for (r, x) in fi.column(a).entries() {
                        for (s, y) in gj.column(b).entries() {
                            entries.push((layout.position(i, j, *r, *s), x * y));
                        }
                    }
                    cols.push(SparseVector::from_entries(n, entries));
                }
            }
        }
        comps.push(SparseMatrix::from_columns(n, cols));
    }
    Ok(GradedMap::new(0, lo, comps))
}
