use crate::coefficients::NovikovScalar;
use crate::error::{Error, Result};
use crate::rational::Rational;

use super::matrix::SparseMatrix;
use super::reduction::filtration_of;
use super::space::FilteredSpace;
use super::vector::SparseVector;

/// A Λ-linear map between filtered spaces, stored as a sparse matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FilteredMap {
    domain: FilteredSpace,
    codomain: FilteredSpace,
    matrix: SparseMatrix,
}

impl FilteredMap {
    pub fn new(domain: FilteredSpace, codomain: FilteredSpace, matrix: SparseMatrix) -> Result<Self> {
        if matrix.rows() != codomain.dim() {
            return Err(Error::Dimension {
                expected: codomain.dim(),
                got: matrix.rows(),
            });
        }
        if matrix.cols() != domain.dim() {
            return Err(Error::Dimension {
                expected: domain.dim(),
                got: matrix.cols(),
            });
        }
        if domain.field() != codomain.field() {
            return Err(Error::Config("domain and codomain use different coefficient fields".into()));
        }
        for (_, _, s) in matrix.triplets() {
            domain.field().check(s)?;
        }
        Ok(FilteredMap {
            domain,
            codomain,
            matrix,
        })
    }

    pub fn zero(domain: FilteredSpace, codomain: FilteredSpace) -> Self {
        let matrix = SparseMatrix::zeros(codomain.dim(), domain.dim());
        FilteredMap {
            domain,
            codomain,
            matrix,
        }
    }

    pub fn identity(space: FilteredSpace) -> Self {
        let matrix = SparseMatrix::identity(space.dim(), space.prime());
        FilteredMap {
            domain: space.clone(),
            codomain: space,
            matrix,
        }
    }

    pub fn domain(&self) -> &FilteredSpace {
        &self.domain
    }

    pub fn codomain(&self) -> &FilteredSpace {
        &self.codomain
    }

    pub fn matrix(&self) -> &SparseMatrix {
        &self.matrix
    }

    pub fn with_matrix(&self, matrix: SparseMatrix) -> Result<Self> {
        Self::new(self.domain.clone(), self.codomain.clone(), matrix)
    }

    pub fn entry(&self, row: usize, col: usize) -> Option<&NovikovScalar> {
        self.matrix.get(row, col)
    }

    pub fn apply(&self, v: &SparseVector) -> SparseVector {
        self.matrix.apply(v)
    }

    /// self ∘ other
    pub fn compose(&self, other: &FilteredMap) -> Result<FilteredMap> {
        if other.codomain.dim() != self.domain.dim() {
            return Err(Error::Dimension {
                expected: self.domain.dim(),
                got: other.codomain.dim(),
            });
        }
        Ok(FilteredMap {
            domain: other.domain.clone(),
            codomain: self.codomain.clone(),
            matrix: self.matrix.mul(&other.matrix),
        })
    }

    /// max over basis vectors of ℓ(A e_j) − ℓ(e_j); `None` for the zero map.
    pub fn max_shift(&self) -> Option<Rational> {
        let mut best: Option<Rational> = None;
        for j in 0..self.domain.dim() {
            let image = self.matrix.column(j);
            if let Some(l) = filtration_of(&self.codomain, image).ok().flatten() {
                let s = l - self.domain.filtration(j);
                if best.as_ref().map_or(true, |b| &s > b) {
                    best = Some(s);
                }
            }
        }
        best
    }

    /// Whether ℓ(Av) ≤ ℓ(v) + δ for every basis vector.
    pub fn is_shift_bounded(&self, delta: &Rational) -> bool {
        self.max_shift().map_or(true, |s| &s <= delta)
    }
}
