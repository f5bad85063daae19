//! Filtration values, zero-level reductions and orthogonality.

use std::collections::BTreeMap;

use crate::coefficients::{CyclotomicRational, NovikovScalar};
use crate::error::{Error, Result};
use crate::rational::Rational;

use super::echelon::Echelon;
use super::oracle::IndependenceTracker;
use super::space::FilteredSpace;
use super::vector::SparseVector;

/// ℓ(Σ λ_i e_i) = max_i (ℓ(e_i) − ν(λ_i)); `None` stands for −∞.
pub fn filtration_of(space: &FilteredSpace, v: &SparseVector) -> Result<Option<Rational>> {
    space.check_vector(v)?;
    let mut best: Option<Rational> = None;
    for (i, s) in v.entries() {
        if let Some(nu) = s.valuation() {
            let l = space.filtration(*i) - nu;
            if best.as_ref().map_or(true, |b| &l > b) {
                best = Some(l);
            }
        }
    }
    Ok(best)
}

/// Top-level data of a nonzero vector: its filtration, that value's class
/// modulo Γ, and the 𝒦-coefficients sitting exactly at that level.
#[derive(Clone, Debug)]
pub struct Leading {
    pub level: Rational,
    pub class: Rational,
    pub coeffs: Vec<(usize, CyclotomicRational)>,
}

pub fn leading(space: &FilteredSpace, v: &SparseVector) -> Result<Leading> {
    let level = filtration_of(space, v)?
        .ok_or_else(|| Error::Precondition("zero vector has no zero-level reduction".into()))?;
    let coeffs = v
        .entries()
        .iter()
        .filter_map(|(i, s)| {
            let g = space.filtration(*i) - &level;
            s.coeff_at(&g).map(|c| (*i, c.clone()))
        })
        .collect();
    Ok(Leading {
        class: space.gamma().class_rep(&level),
        level,
        coeffs,
    })
}

/// One dense 𝒦-column per input vector: the coefficients at its top level.
pub fn reduce_to_zero_level(space: &FilteredSpace, vectors: &[SparseVector]) -> Result<Vec<Vec<CyclotomicRational>>> {
    let mut out = Vec::with_capacity(vectors.len());
    for v in vectors {
        let lead = leading(space, v)?;
        let prime = lead.coeffs[0].1.prime();
        let mut col = vec![CyclotomicRational::zero(prime); space.dim()];
        for (i, c) in lead.coeffs {
            col[i] = c;
        }
        out.push(col);
    }
    Ok(out)
}

/// Rank over 𝒦 of dense columns.
pub fn k_rank(columns: &[Vec<CyclotomicRational>]) -> usize {
    let mut ech: Echelon<CyclotomicRational> = Echelon::new();
    for c in columns {
        ech.insert(c.iter().enumerate()).expect("field elements are invertible");
    }
    ech.rank()
}

/// Orthogonal iff the zero-level reductions are 𝒦-independent.
pub fn is_orthogonal(space: &FilteredSpace, vectors: &[SparseVector]) -> Result<bool> {
    let mut builder = OrthogonalSet::new(space);
    for v in vectors {
        if !builder.push(v.clone())? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A growing orthogonal family, grouped by filtration class modulo Γ.
pub struct OrthogonalSet<'s> {
    space: &'s FilteredSpace,
    classes: BTreeMap<Rational, (Echelon<CyclotomicRational>, Vec<(SparseVector, Rational)>)>,
    vectors: Vec<SparseVector>,
}

impl<'s> OrthogonalSet<'s> {
    pub fn new(space: &'s FilteredSpace) -> Self {
        OrthogonalSet {
            space,
            classes: BTreeMap::new(),
            vectors: Vec::new(),
        }
    }

    pub fn vectors(&self) -> &[SparseVector] {
        &self.vectors
    }

    pub fn into_vectors(self) -> Vec<SparseVector> {
        self.vectors
    }

    /// Adds `v` if the family stays orthogonal; returns whether it was added.
    pub fn push(&mut self, v: SparseVector) -> Result<bool> {
        let lead = leading(self.space, &v)?;
        let (ech, members) = self.classes.entry(lead.class.clone()).or_insert_with(|| (Echelon::new(), Vec::new()));
        let refs = lead.coeffs.iter().map(|(i, c)| (*i, c));
        match ech.insert(refs)? {
            Some(_) => {
                members.push((v.clone(), lead.level));
                self.vectors.push(v);
                Ok(true)
            }
            None => Ok(false),
        }
    }

    /// Cancels top-level terms of `v` against the family until its reduction
    /// is independent. Returns `None` when `v` reduces to zero, or drops below
    /// `floor` when one is given.
    pub fn reduce(&self, mut v: SparseVector, floor: Option<&Rational>) -> Result<Option<SparseVector>> {
        for _ in 0..1_000_000 {
            if v.is_zero() {
                return Ok(None);
            }
            let lead = leading(self.space, &v)?;
            if floor.map_or(false, |f| &lead.level < f) {
                return Ok(None);
            }
            let Some((ech, members)) = self.classes.get(&lead.class) else {
                return Ok(Some(v));
            };
            let Some(combo) = ech.express(lead.coeffs.iter().map(|(i, c)| (*i, c))) else {
                return Ok(Some(v));
            };
            for (k, alpha) in combo {
                let (u, lu) = &members[k];
                let g = lu - &lead.level;
                v = v.axpy(&NovikovScalar::monomial(g, -&alpha), u);
            }
        }
        Err(Error::Inexact(
            "top-level cancellation did not terminate; supply a truncation floor".into(),
        ))
    }
}

/// Extends an orthogonal family `base` by reduced copies of `candidates`,
/// returning only the new vectors. The union spans base + candidates.
pub fn extend_orthogonal(
    space: &FilteredSpace,
    base: &[SparseVector],
    candidates: &[SparseVector],
    floor: Option<&Rational>,
) -> Result<Vec<SparseVector>> {
    let mut set = OrthogonalSet::new(space);
    let mut span = IndependenceTracker::new();
    for b in base {
        if !set.push(b.clone())? {
            return Err(Error::Precondition("base family is not orthogonal".into()));
        }
        span.insert(b);
    }
    let mut added = Vec::new();
    for c in candidates {
        // Vectors already in the span would be cancelled forever when the
        // coefficients are genuine series, so they are skipped up front.
        if !span.insert(c) {
            continue;
        }
        if let Some(r) = set.reduce(c.clone(), floor)? {
            set.push(r.clone())?;
            added.push(r);
        }
    }
    Ok(added)
}

/// An orthogonal basis of the span of `vectors`.
pub fn orthogonalize(space: &FilteredSpace, vectors: &[SparseVector], floor: Option<&Rational>) -> Result<Vec<SparseVector>> {
    extend_orthogonal(space, &[], vectors, floor)
}
