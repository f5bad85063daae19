use std::collections::HashMap;

use crate::coefficients::CyclotomicRational;
use crate::error::Result;

use super::complex::FilteredChainComplex;
use super::cone::build_cone;
use super::graded::GradedMap;
use super::tensor::{tensor_map, tensor_product};

/// Whether matching generators by label turns `a` into `b` exactly: same
/// degrees, same filtrations, same boundary entries.
pub fn same_up_to_labels(a: &FilteredChainComplex, b: &FilteredChainComplex) -> bool {
    if a.field() != b.field() {
        return false;
    }
    let lo = a.lo().min(b.lo());
    let hi = a.hi().max(b.hi());
    let mut perms: HashMap<i64, Vec<usize>> = HashMap::new();
    for k in lo..=hi {
        let (sa, sb) = (a.space(k), b.space(k));
        if sa.dim() != sb.dim() {
            return false;
        }
        let index: HashMap<&str, usize> = sb.labels().iter().enumerate().map(|(i, l)| (l.as_str(), i)).collect();
        let mut perm = Vec::with_capacity(sa.dim());
        for (i, l) in sa.labels().iter().enumerate() {
            match index.get(l.as_str()) {
                Some(&j) if sa.filtration(i) == sb.filtration(j) => perm.push(j),
                _ => return false,
            }
        }
        perms.insert(k, perm);
    }
    for k in lo + 1..=hi {
        let (da, db) = (a.boundary_matrix(k), b.boundary_matrix(k));
        let (src, dst) = (&perms[&k], &perms[&(k - 1)]);
        for j in 0..da.cols() {
            let moved = da.column(j).permute(db.rows(), |i| dst[i]);
            if &moved != db.column(src[j]) {
                return false;
            }
        }
    }
    true
}

/// Cone_{C⊗D}(T⊗𝕀 − c) against ⊕_k Cone_C(T − c)_k ⊗ D_{m−k}, matched by the
/// canonical relabeling (the two label schemes coincide generator by generator).
pub fn cone_tensor_iso_check(
    c: &FilteredChainComplex,
    t: &GradedMap,
    scalar_shift: &CyclotomicRational,
    d: &FilteredChainComplex,
) -> Result<bool> {
    let cd = tensor_product(c, d)?;
    let t_id = tensor_map(c, d, t, &GradedMap::identity(d))?;
    let left = build_cone(&cd, &t_id, scalar_shift)?;
    let cone = build_cone(c, t, scalar_shift)?;
    let right = tensor_product(&cone.complex, d)?;
    Ok(same_up_to_labels(&left.complex, &right))
}
