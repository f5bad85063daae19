use num_traits::Zero;

use crate::coefficients::{CyclotomicRational, NovikovScalar};
use crate::complexes::{build_cone, ConeComplex, FilteredChainComplex, GradedMap};
use crate::error::{Error, Result};
use crate::filtered_linalg::SparseMatrix;
use crate::rational::Rational;

/// A degree-0 map S on the source with S^p = T, split as its permutation part
/// R_{p²} and the full map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootAction {
    pub rotation: GradedMap,
    pub map: GradedMap,
}

/// A cone of T − ξ_p^q together with the decomposition T = R(𝕀 + N).
#[derive(Clone, Debug)]
pub struct CyclicActionData {
    pub cone: ConeComplex,
    pub q: u32,
    /// The permutation part R of T, of order p.
    pub rotation: GradedMap,
    /// N = R^{-1}T − 𝕀.
    pub perturbation: GradedMap,
    pub root: Option<RootAction>,
}

/// Whether every component is a permutation matrix with unit entries.
pub fn is_permutation(m: &GradedMap) -> bool {
    m.components().iter().all(|c| {
        let mut seen = vec![false; c.rows()];
        c.rows() == c.cols()
            && c.columns().iter().all(|col| match col.entries() {
                [(i, s)] if is_unit_one(s) && !seen[*i] => {
                    seen[*i] = true;
                    true
                }
                _ => false,
            })
    })
}

/// Whether the permutation family sends each basis vector to one of equal filtration.
pub fn preserves_filtration(c: &FilteredChainComplex, m: &GradedMap) -> bool {
    c.degrees().all(|k| {
        let sp = c.space(k);
        let comp = m.at_or_zero(k, c.dim(k), c.dim(k));
        comp.columns()
            .iter()
            .enumerate()
            .all(|(j, col)| col.entries().iter().all(|(i, _)| sp.filtration(*i) == sp.filtration(j)))
    })
}

fn is_identity(c: &FilteredChainComplex, m: &GradedMap) -> bool {
    m == &GradedMap::identity(c)
}

/// True when `m` is zero or strictly lowers filtration.
pub fn strictly_lowering(c: &FilteredChainComplex, m: &GradedMap) -> Result<bool> {
    Ok(m.max_shift(c, c)?.map_or(true, |s| s < Rational::zero()))
}

impl CyclicActionData {
    /// Validates every invariant and builds Cone(T − ξ_p^q 𝕀).
    pub fn new(
        source: &FilteredChainComplex,
        t: &GradedMap,
        rotation: &GradedMap,
        root: Option<RootAction>,
        q: u32,
    ) -> Result<Self> {
        let p = source.prime();
        if q == 0 || q >= p {
            return Err(Error::Config(format!("xi power {q} must lie in 1..{p}")));
        }
        if !is_permutation(rotation) || !preserves_filtration(source, rotation) {
            return Err(Error::Precondition("rotation is not a filtration-preserving permutation".into()));
        }
        if !is_identity(source, &rotation.pow(p, source)) {
            return Err(Error::Precondition(format!("rotation does not have order dividing {p}")));
        }
        let inverse = rotation.pow(p - 1, source);
        let perturbation = inverse.compose(t, source).sub(&GradedMap::identity(source))?;
        if !strictly_lowering(source, &perturbation)? {
            return Err(Error::Precondition("T − R does not strictly lower filtration".into()));
        }
        if let Some(r) = &root {
            if !r.map.is_chain_map(source, source) {
                return Err(Error::NotChainMap("root action does not commute with ∂".into()));
            }
            if &r.map.pow(p, source) != t {
                return Err(Error::Precondition("S^p ≠ T".into()));
            }
            if !is_permutation(&r.rotation) || !preserves_filtration(source, &r.rotation) {
                return Err(Error::Precondition("root rotation is not a filtration-preserving permutation".into()));
            }
            let inv = r.rotation.pow(p * p - 1, source);
            let n_s = inv.compose(&r.map, source).sub(&GradedMap::identity(source))?;
            if !strictly_lowering(source, &n_s)? {
                return Err(Error::Precondition("S − R_{p²} does not strictly lower filtration".into()));
            }
        }
        let cone = build_cone(source, t, &CyclotomicRational::xi_pow(p, q as i64))?;
        Ok(CyclicActionData {
            cone,
            q,
            rotation: rotation.clone(),
            perturbation,
            root,
        })
    }

    pub fn prime(&self) -> u32 {
        self.cone.source.prime()
    }

    pub fn source(&self) -> &FilteredChainComplex {
        &self.cone.source
    }

    pub fn t(&self) -> &GradedMap {
        &self.cone.map
    }

    /// ħ = −max shift of N, or `None` when N = 0.
    pub fn hbar(&self) -> Result<Option<Rational>> {
        Ok(self.perturbation.max_shift(self.source(), self.source())?.map(|s| -s))
    }

    /// Double map 𝒟_A on the cone for a degree-0 family on the source.
    pub fn on_cone(&self, a: &GradedMap) -> GradedMap {
        self.cone.lift(a)
    }

    /// Matrix of the double map at cone degree k.
    pub fn cone_component(&self, a: &GradedMap, k: i64) -> SparseMatrix {
        let d = self.cone.complex.dim(k);
        self.on_cone(a).at_or_zero(k, d, d)
    }

    /// Relation checks on the cone: [𝒟_T, ∂_co] = 0 and, with a root,
    /// [𝒟_S, ∂_co] = 0 and [𝒟_S, 𝒟_T] = 0.
    pub fn verify_on_cone(&self) -> Vec<String> {
        let cone = &self.cone.complex;
        let mut bad = Vec::new();
        let dt = self.on_cone(self.t());
        if !dt.is_chain_map(cone, cone) {
            bad.push("𝒟_T does not commute with the cone boundary".into());
        }
        if let Some(r) = &self.root {
            let ds = self.on_cone(&r.map);
            if !ds.is_chain_map(cone, cone) {
                bad.push("𝒟_S does not commute with the cone boundary".into());
            }
            if ds.compose(&dt, cone) != dt.compose(&ds, cone) {
                bad.push("𝒟_S and 𝒟_T do not commute".into());
            }
        }
        bad
    }
}

pub(crate) fn rational_scalar(p: u32, r: &Rational) -> NovikovScalar {
    NovikovScalar::constant(CyclotomicRational::from_rational(p, r))
}

fn is_unit_one(s: &NovikovScalar) -> bool {
    s.prime().map_or(false, |p| s == &NovikovScalar::one(p))
}
