use crate::coefficients::{CyclotomicRational, NovikovScalar};
use crate::error::{Error, Result};
use crate::filtered_linalg::{
    extend_orthogonal, field_kernel, is_orthogonal, orthogonalize, solve_in_span, FilteredMap, FilteredSpace,
    IndependenceTracker, SparseMatrix, SparseVector,
};
use crate::rational::Rational;

use super::action::rational_scalar;

/// Coordinates of `v` in `basis`; errors when `v` is outside the span.
pub(crate) fn coords(basis: &[SparseVector], v: &SparseVector) -> Result<Vec<NovikovScalar>> {
    solve_in_span(basis, v)?.ok_or_else(|| Error::Precondition("vector lies outside the expected span".into()))
}

pub(crate) fn combine(basis: &[SparseVector], c: &[NovikovScalar], dim: usize) -> SparseVector {
    basis
        .iter()
        .zip(c)
        .filter(|(_, s)| !s.is_zero())
        .fold(SparseVector::zero(dim), |acc, (b, s)| acc.axpy(s, b))
}

fn check_order(action: &SparseMatrix, order: u32, p: u32) -> Result<()> {
    if action.pow(order, p) != SparseMatrix::identity(action.rows(), p) {
        return Err(Error::Precondition(format!("action does not have order dividing {order}")));
    }
    Ok(())
}

fn check_isometry(space: &FilteredSpace, action: &SparseMatrix, order: u32) -> Result<()> {
    let p = space.prime();
    for m in [action.clone(), action.pow(order - 1, p)] {
        let f = FilteredMap::new(space.clone(), space.clone(), m)?;
        if f.max_shift().map_or(false, |s| s > Rational::from_integer(0.into())) {
            return Err(Error::Precondition("action raises filtration".into()));
        }
    }
    Ok(())
}

/// Invariant complement of `invariant` inside the invariant span of `ambient`,
/// built as the kernel of (1/n) Σ_g g π g^{-1} for an orthogonal projection π.
pub fn maschke_in_span(
    space: &FilteredSpace,
    action: &SparseMatrix,
    order: u32,
    ambient: &[SparseVector],
    invariant: &[SparseVector],
) -> Result<Vec<SparseVector>> {
    let p = space.prime();
    let dim = space.dim();
    let base = orthogonalize(space, invariant, None)?;
    for v in &base {
        if solve_in_span(&base, &action.apply(v))?.is_none() {
            return Err(Error::Precondition("subspace is not invariant".into()));
        }
    }
    let rest = extend_orthogonal(space, &base, ambient, None)?;
    if rest.is_empty() {
        return Ok(Vec::new());
    }
    let frame: Vec<SparseVector> = base.iter().chain(&rest).cloned().collect();
    let n = frame.len();
    let r = base.len();
    // action and projection in frame coordinates
    let g_cols = frame
        .iter()
        .map(|f| Ok(SparseVector::from_dense(&coords(&frame, &action.apply(f))?)))
        .collect::<Result<Vec<_>>>()?;
    let g = SparseMatrix::from_columns(n, g_cols);
    let proj = SparseMatrix::from_triplets(n, n, (0..r).map(|i| (i, i, NovikovScalar::one(p))));
    let mut avg = SparseMatrix::zeros(n, n);
    let mut gj = SparseMatrix::identity(n, p);
    let g_inv = g.pow(order - 1, p);
    let mut gj_inv = SparseMatrix::identity(n, p);
    for _ in 0..order {
        avg = avg.add(&gj.mul(&proj).mul(&gj_inv));
        gj = gj.mul(&g);
        gj_inv = gj_inv.mul(&g_inv);
    }
    let avg = avg.scale(&rational_scalar(p, &Rational::new(1.into(), (order as i64).into())));
    let kernel: Vec<SparseVector> = field_kernel(&avg, p)
        .iter()
        .map(|k| combine(&frame, &k.to_dense(), dim))
        .collect();
    let w = orthogonalize(space, &kernel, None)?;
    if w.len() != n - r {
        return Err(Error::Verification(format!("complement has dimension {}, expected {}", w.len(), n - r)));
    }
    let union: Vec<SparseVector> = base.iter().chain(&w).cloned().collect();
    if !is_orthogonal(space, &union)? {
        return Err(Error::Verification("averaged complement is not orthogonal".into()));
    }
    Ok(w)
}

/// Orthogonal invariant complement of `invariant` in the whole space, for an
/// isometric action with action^order = 𝕀.
pub fn maschke_complement(
    space: &FilteredSpace,
    action: &FilteredMap,
    order: u32,
    invariant: &[SparseVector],
) -> Result<Vec<SparseVector>> {
    check_order(action.matrix(), order, space.prime())?;
    check_isometry(space, action.matrix(), order)?;
    let units: Vec<SparseVector> = (0..space.dim()).map(|i| space.unit(i)).collect();
    maschke_in_span(space, action.matrix(), order, &units, invariant)
}

/// π_i = (1/p) Σ_j ξ_p^{−ij} A^j for an action with A^p = 𝕀.
pub fn eigen_projectors(action: &SparseMatrix, p: u32) -> Vec<SparseMatrix> {
    let n = action.rows();
    let mut powers = vec![SparseMatrix::identity(n, p)];
    for j in 1..p as usize {
        powers.push(powers[j - 1].mul(action));
    }
    let inv_p = CyclotomicRational::from_rational(p, &Rational::new(1.into(), (p as i64).into()));
    (0..p as i64)
        .map(|i| {
            powers.iter().enumerate().fold(SparseMatrix::zeros(n, n), |acc, (j, a)| {
                let c = &CyclotomicRational::xi_pow(p, -i * j as i64) * &inv_p;
                acc.add(&a.scale(&NovikovScalar::constant(c)))
            })
        })
        .collect()
}

/// Orthogonal bases of the ξ_p^i-eigenspaces, i = 0..p−1.
pub fn eigenspace_decomposition(space: &FilteredSpace, action: &FilteredMap) -> Result<Vec<Vec<SparseVector>>> {
    let p = space.prime();
    check_order(action.matrix(), p, p)?;
    let mut out = Vec::new();
    for pi in eigen_projectors(action.matrix(), p) {
        let mut span = IndependenceTracker::new();
        let cols: Vec<SparseVector> = pi.columns().iter().filter(|c| span.insert(c)).cloned().collect();
        out.push(orthogonalize(space, &cols, None)?);
    }
    let total: usize = out.iter().map(|v| v.len()).sum();
    if total != space.dim() {
        return Err(Error::Verification(format!("eigenspaces span {total} of {} dimensions", space.dim())));
    }
    Ok(out)
}
