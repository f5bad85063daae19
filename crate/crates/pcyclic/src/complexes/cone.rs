use num_traits::Zero;

use crate::coefficients::CyclotomicRational;
use crate::error::{Error, Result};
use crate::filtered_linalg::{FilteredSpace, SparseMatrix};
use crate::rational::Rational;

use super::complex::{verify_complex, FilteredChainComplex};
use super::graded::{check_filtered_chain_map, GradedMap};

pub const LEFT_TAG: &str = "L:";
pub const RIGHT_TAG: &str = "R:";

/// Cone_C(T − c·𝕀) together with what it was built from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConeComplex {
    pub complex: FilteredChainComplex,
    pub source: FilteredChainComplex,
    pub map: GradedMap,
    pub scalar_shift: CyclotomicRational,
}

fn cone_space(c: &FilteredChainComplex, k: i64) -> Result<FilteredSpace> {
    let left = c.space(k).relabel(|l| format!("{LEFT_TAG}{l}"))?;
    let right = c.space(k - 1).relabel(|l| format!("{RIGHT_TAG}{l}"))?;
    left.direct_sum(&right)
}

/// Cone boundaries [[∂, −F], [0, −∂]] for an arbitrary degree-0 family F.
fn cone_of(c: &FilteredChainComplex, f: &GradedMap) -> Result<FilteredChainComplex> {
    let lo = c.lo();
    let hi = c.hi() + 1;
    let spaces = (lo..=hi).map(|k| cone_space(c, k)).collect::<Result<Vec<_>>>()?;
    let mut bds = Vec::new();
    for k in lo + 1..=hi {
        let a = c.boundary_matrix(k);
        let b = f.at_or_zero(k - 1, c.dim(k - 1), c.dim(k - 1)).neg();
        let z = SparseMatrix::zeros(c.dim(k - 2), c.dim(k));
        let d = c.boundary_matrix(k - 1).neg();
        bds.push(SparseMatrix::block(&a, &b, &z, &d));
    }
    FilteredChainComplex::new(c.field().clone(), lo, spaces, bds, Rational::zero())
}

/// Builds the self-mapping cone of T − shift·𝕀 after checking that T is a
/// filtration non-increasing chain map.
pub fn build_cone(c: &FilteredChainComplex, t: &GradedMap, scalar_shift: &CyclotomicRational) -> Result<ConeComplex> {
    check_filtered_chain_map(c, t)?;
    let complex = cone_of(c, &t.minus_scalar(scalar_shift))?;
    let bad = verify_complex(&complex);
    if !bad.is_empty() {
        return Err(Error::Verification(format!("cone boundary check failed: {bad:?}")));
    }
    Ok(ConeComplex {
        complex,
        source: c.clone(),
        map: t.clone(),
        scalar_shift: scalar_shift.clone(),
    })
}

impl ConeComplex {
    /// Position of the left copy of generator i of C_k inside cone degree k.
    pub fn left_index(&self, _k: i64, i: usize) -> usize {
        i
    }

    /// Position of the right copy of generator i of C_{k−1} inside cone degree k.
    pub fn right_index(&self, k: i64, i: usize) -> usize {
        self.source.dim(k) + i
    }

    /// Block-diagonal lift of a degree-0 family on the source.
    pub fn lift(&self, a: &GradedMap) -> GradedMap {
        let c = &self.source;
        let comps = self
            .complex
            .degrees()
            .map(|k| {
                let top = a.at_or_zero(k, c.dim(k), c.dim(k));
                let bottom = a.at_or_zero(k - 1, c.dim(k - 1), c.dim(k - 1));
                SparseMatrix::block(
                    &top,
                    &SparseMatrix::zeros(c.dim(k), c.dim(k - 1)),
                    &SparseMatrix::zeros(c.dim(k - 1), c.dim(k)),
                    &bottom,
                )
            })
            .collect();
        GradedMap::new(0, self.complex.lo(), comps)
    }
}

/// 𝒟_A = diag(A, A) on the cone; requires [A, ∂] = 0 and [A, T] = 0.
pub fn double_map(cone: &ConeComplex, a: &GradedMap) -> Result<GradedMap> {
    let c = &cone.source;
    if a.degree() != 0 {
        return Err(Error::NotChainMap("double map needs a degree-0 map".into()));
    }
    let bad = a.chain_defects(c, c);
    if !bad.is_empty() {
        return Err(Error::NotChainMap(format!("[A, ∂] ≠ 0 in degrees {bad:?}")));
    }
    let at = a.compose(&cone.map, c);
    let ta = cone.map.compose(a, c);
    if at != ta {
        let degs: Vec<i64> = c.degrees().filter(|k| at.at(*k) != ta.at(*k)).collect();
        return Err(Error::NotChainMap(format!("[A, T] ≠ 0 in degrees {degs:?}")));
    }
    Ok(cone.lift(a))
}

/// The filtered isomorphism F = [[𝕀, −K], [0, 𝕀]] : Cone(Φ) → Cone(Ψ) and its inverse.
#[derive(Clone, Debug)]
pub struct ConeIso {
    pub source: ConeComplex,
    pub target: ConeComplex,
    pub forward: GradedMap,
    pub inverse: GradedMap,
}

fn unipotent(c: &FilteredChainComplex, cone: &FilteredChainComplex, k_map: &GradedMap, sign: i64) -> GradedMap {
    let p = c.prime();
    let comps = cone
        .degrees()
        .map(|k| {
            let kk = k_map.at_or_zero(k - 1, c.dim(k), c.dim(k - 1));
            let kk = if sign < 0 { kk.neg() } else { kk };
            SparseMatrix::block(
                &SparseMatrix::identity(c.dim(k), p),
                &kk,
                &SparseMatrix::zeros(c.dim(k - 1), c.dim(k)),
                &SparseMatrix::identity(c.dim(k - 1), p),
            )
        })
        .collect();
    GradedMap::new(0, cone.lo(), comps)
}

/// Given Φ − Ψ = K∂ + ∂K with K filtration non-increasing, returns the explicit
/// cone isomorphism after checking it is a filtered chain isomorphism.
pub fn cone_homotopy_iso(
    c: &FilteredChainComplex,
    phi: &GradedMap,
    psi: &GradedMap,
    homotopy: &GradedMap,
    scalar_shift: &CyclotomicRational,
) -> Result<ConeIso> {
    if homotopy.degree() != 1 {
        return Err(Error::Precondition("homotopy must raise degree by one".into()));
    }
    if phi.sub(psi)? != GradedMap::homotopy_term(c, homotopy) {
        return Err(Error::Precondition("Φ − Ψ ≠ K∂ + ∂K".into()));
    }
    if let Some(s) = homotopy.max_shift(c, c)? {
        if s > Rational::zero() {
            return Err(Error::Precondition(format!("homotopy raises filtration by {s}")));
        }
    }
    let source = build_cone(c, phi, scalar_shift)?;
    let target = build_cone(c, psi, scalar_shift)?;
    let forward = unipotent(c, &source.complex, homotopy, -1);
    let inverse = unipotent(c, &source.complex, homotopy, 1);
    let (s, t) = (&source.complex, &target.complex);
    if !forward.is_chain_map(s, t) || !inverse.is_chain_map(t, s) {
        return Err(Error::Verification("cone map is not a chain map".into()));
    }
    if forward.compose(&inverse, s) != GradedMap::identity(s) || inverse.compose(&forward, s) != GradedMap::identity(s) {
        return Err(Error::Verification("cone maps are not mutually inverse".into()));
    }
    for (m, a, b) in [(&forward, s, t), (&inverse, t, s)] {
        if let Some(sh) = m.max_shift(a, b)? {
            if sh > Rational::zero() {
                return Err(Error::Verification(format!("cone map raises filtration by {sh}")));
            }
        }
    }
    Ok(ConeIso {
        source,
        target,
        forward,
        inverse,
    })
}
