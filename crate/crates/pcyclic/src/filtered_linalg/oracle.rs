//! Plain elimination over the field, ignoring filtrations.

use crate::coefficients::NovikovScalar;
use crate::error::Result;

use super::echelon::Echelon;
use super::matrix::SparseMatrix;
use super::vector::SparseVector;

/// Column elimination that divides by monomial pivots and cross-multiplies
/// otherwise, so polynomial entries never need a series inverse.
/// Returns (rank, kernel basis).
fn eliminate(columns: &[SparseVector], track_kernel: bool, prime: u32) -> (usize, Vec<SparseVector>) {
    let n = columns.len();
    let mut work: Vec<Option<(SparseVector, SparseVector)>> = columns
        .iter()
        .enumerate()
        .map(|(j, c)| {
            let coords = if track_kernel {
                SparseVector::unit(n, j, prime)
            } else {
                SparseVector::zero(n)
            };
            Some((c.clone(), coords))
        })
        .collect();
    let mut rank = 0;
    loop {
        // Prefer a monomial pivot to keep entries small.
        let mut choice: Option<(usize, usize)> = None;
        for (j, w) in work.iter().enumerate() {
            if let Some((img, _)) = w {
                if let Some((i, s)) = img.entries().iter().find(|(_, s)| s.is_monomial()) {
                    let _ = s;
                    choice = Some((j, *i));
                    break;
                }
                if choice.is_none() {
                    if let Some((i, _)) = img.entries().first() {
                        choice = Some((j, *i));
                    }
                }
            }
        }
        let Some((j0, i0)) = choice else { break };
        let (pimg, pcoords) = work[j0].take().expect("active");
        let b = pimg.get(i0).expect("pivot").clone();
        for w in work.iter_mut().flatten() {
            let Some(a) = w.0.get(i0).cloned() else { continue };
            if b.is_monomial() {
                let c = -&a.div_exact(&b).expect("monomial");
                w.0 = w.0.axpy(&c, &pimg);
                w.1 = w.1.axpy(&c, &pcoords);
            } else {
                let na = -&a;
                w.0 = w.0.scale(&b).axpy(&na, &pimg);
                w.1 = w.1.scale(&b).axpy(&na, &pcoords);
            }
        }
        rank += 1;
    }
    let kernel = if track_kernel {
        work.into_iter().flatten().map(|(_, c)| c).collect()
    } else {
        Vec::new()
    };
    (rank, kernel)
}

pub fn field_rank(m: &SparseMatrix) -> usize {
    eliminate(m.columns(), false, m.prime().unwrap_or(2)).0
}

/// Rank of a family of vectors.
pub fn rank_of(vectors: &[SparseVector]) -> usize {
    let prime = vectors.iter().find_map(|v| v.prime()).unwrap_or(2);
    eliminate(vectors, false, prime).0
}

/// A basis of the kernel (in domain coordinates).
pub fn field_kernel(m: &SparseMatrix, prime: u32) -> Vec<SparseVector> {
    eliminate(m.columns(), true, prime).1
}

/// Coefficients c with Σ c_k basis_k = target, when target is in the span.
/// Needs exactly invertible pivots (always available when Γ is trivial).
pub fn solve_in_span(basis: &[SparseVector], target: &SparseVector) -> Result<Option<Vec<NovikovScalar>>> {
    let mut ech: Echelon<NovikovScalar> = Echelon::new();
    let mut member_of = Vec::new();
    for (k, b) in basis.iter().enumerate() {
        if ech.insert(b.entries().iter().map(|(i, s)| (*i, s)))?.is_some() {
            member_of.push(k);
        }
    }
    Ok(ech.express(target.entries().iter().map(|(i, s)| (*i, s))).map(|combo| {
        let mut out = vec![NovikovScalar::zero(); basis.len()];
        for (m, c) in combo {
            out[member_of[m]] = c;
        }
        out
    }))
}

/// Incremental exact independence test by fraction-free elimination.
#[derive(Default)]
pub struct IndependenceTracker {
    pivots: Vec<(usize, SparseVector)>,
}

impl IndependenceTracker {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    fn residual(&self, v: &SparseVector) -> SparseVector {
        let mut v = v.clone();
        for (row, u) in &self.pivots {
            let Some(a) = v.get(*row).cloned() else { continue };
            let b = u.get(*row).expect("pivot entry");
            if b.is_monomial() {
                v = v.axpy(&-&a.div_exact(b).expect("monomial"), u);
            } else {
                v = v.scale(b).axpy(&-&a, u);
            }
        }
        v
    }

    pub fn is_independent(&self, v: &SparseVector) -> bool {
        !self.residual(v).is_zero()
    }

    /// Records `v`; returns whether it was independent of everything seen.
    pub fn insert(&mut self, v: &SparseVector) -> bool {
        let r = self.residual(v);
        if r.is_zero() {
            return false;
        }
        let row = r
            .entries()
            .iter()
            .find(|(_, s)| s.is_monomial())
            .or_else(|| r.entries().first())
            .map(|(i, _)| *i)
            .expect("nonzero");
        self.pivots.push((row, r));
        true
    }
}
