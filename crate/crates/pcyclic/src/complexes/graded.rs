use crate::coefficients::{CyclotomicRational, NovikovScalar};
use crate::error::{Error, Result};
use crate::filtered_linalg::{FilteredMap, SparseMatrix};
use crate::rational::Rational;

use super::complex::FilteredChainComplex;

/// A family of maps C_k → D_{k + degree}, stored for the source degrees of C.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedMap {
    degree: i64,
    lo: i64,
    components: Vec<SparseMatrix>,
}

impl GradedMap {
    /// `components[i]` acts on source degree `lo + i`.
    pub fn new(degree: i64, lo: i64, components: Vec<SparseMatrix>) -> Self {
        GradedMap { degree, lo, components }
    }

    /// Builds the map from a per-degree closure over the source complex.
    pub fn from_fn(
        source: &FilteredChainComplex,
        target: &FilteredChainComplex,
        degree: i64,
        f: impl Fn(i64) -> SparseMatrix,
    ) -> Result<Self> {
        let mut components = Vec::new();
        for k in source.degrees() {
            let m = f(k);
            if (m.rows(), m.cols()) != (target.dim(k + degree), source.dim(k)) {
                return Err(Error::Dimension {
                    expected: target.dim(k + degree) * source.dim(k),
                    got: m.rows() * m.cols(),
                });
            }
            components.push(m);
        }
        Ok(GradedMap::new(degree, source.lo(), components))
    }

    pub fn identity(c: &FilteredChainComplex) -> Self {
        let p = c.prime();
        GradedMap::new(0, c.lo(), c.degrees().map(|k| SparseMatrix::identity(c.dim(k), p)).collect())
    }

    pub fn zero(source: &FilteredChainComplex, target: &FilteredChainComplex, degree: i64) -> Self {
        GradedMap::new(
            degree,
            source.lo(),
            source
                .degrees()
                .map(|k| SparseMatrix::zeros(target.dim(k + degree), source.dim(k)))
                .collect(),
        )
    }

    /// ∂ as a degree −1 family.
    pub fn boundary(c: &FilteredChainComplex) -> Self {
        GradedMap::new(-1, c.lo(), c.degrees().map(|k| c.boundary_matrix(k)).collect())
    }

    /// ∂M + M∂ for a degree +1 family M; always a chain map homotopic to zero.
    pub fn homotopy_term(c: &FilteredChainComplex, m: &GradedMap) -> GradedMap {
        let d = GradedMap::boundary(c);
        d.compose(m, c).add(&m.compose(&d, c)).expect("same layout")
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.lo + self.components.len() as i64 - 1
    }

    pub fn components(&self) -> &[SparseMatrix] {
        &self.components
    }

    /// The component on source degree k, if stored.
    pub fn at(&self, k: i64) -> Option<&SparseMatrix> {
        if k < self.lo {
            return None;
        }
        self.components.get((k - self.lo) as usize)
    }

    /// Component on degree k as a matrix of the given shape (zero outside the range).
    pub fn at_or_zero(&self, k: i64, rows: usize, cols: usize) -> SparseMatrix {
        match self.at(k) {
            Some(m) => m.clone(),
            None => SparseMatrix::zeros(rows, cols),
        }
    }

    pub fn component_map(&self, source: &FilteredChainComplex, target: &FilteredChainComplex, k: i64) -> Result<FilteredMap> {
        FilteredMap::new(
            source.space(k),
            target.space(k + self.degree),
            self.at_or_zero(k, target.dim(k + self.degree), source.dim(k)),
        )
    }

    fn zip(&self, other: &GradedMap, f: impl Fn(&SparseMatrix, &SparseMatrix) -> SparseMatrix) -> Result<GradedMap> {
        if (self.degree, self.lo, self.components.len()) != (other.degree, other.lo, other.components.len()) {
            return Err(Error::Config("graded maps have different shapes".into()));
        }
        Ok(GradedMap::new(
            self.degree,
            self.lo,
            self.components.iter().zip(&other.components).map(|(a, b)| f(a, b)).collect(),
        ))
    }

    pub fn add(&self, other: &GradedMap) -> Result<GradedMap> {
        self.zip(other, |a, b| a.add(b))
    }

    pub fn sub(&self, other: &GradedMap) -> Result<GradedMap> {
        self.zip(other, |a, b| a.sub(b))
    }

    pub fn scale(&self, c: &NovikovScalar) -> GradedMap {
        GradedMap::new(self.degree, self.lo, self.components.iter().map(|m| m.scale(c)).collect())
    }

    /// self − c·𝕀 for an endomorphism of degree 0.
    pub fn minus_scalar(&self, c: &CyclotomicRational) -> GradedMap {
        assert_eq!(self.degree, 0, "scalar shift of a map with nonzero degree");
        let shift = NovikovScalar::constant(c.clone());
        GradedMap::new(
            0,
            self.lo,
            self.components
                .iter()
                .map(|m| m.sub(&SparseMatrix::identity(m.rows(), c.prime()).scale(&shift)))
                .collect(),
        )
    }

    /// self ∘ other, both endomorphism families on the same complex layout.
    pub fn compose(&self, other: &GradedMap, c: &FilteredChainComplex) -> GradedMap {
        let degree = self.degree + other.degree;
        GradedMap::new(
            degree,
            c.lo(),
            c.degrees()
                .map(|k| {
                    let mid = k + other.degree;
                    let inner = other.at_or_zero(k, c.dim(mid), c.dim(k));
                    let outer = self.at_or_zero(mid, c.dim(mid + self.degree), c.dim(mid));
                    outer.mul(&inner)
                })
                .collect(),
        )
    }

    pub fn pow(&self, e: u32, c: &FilteredChainComplex) -> GradedMap {
        assert_eq!(self.degree, 0, "power of a map with nonzero degree");
        GradedMap::new(0, self.lo, self.components.iter().map(|m| m.pow(e, c.prime())).collect())
    }

    /// Largest ℓ(Fe) − ℓ(e) over basis vectors; `None` for the zero map.
    pub fn max_shift(&self, source: &FilteredChainComplex, target: &FilteredChainComplex) -> Result<Option<Rational>> {
        let mut best: Option<Rational> = None;
        for k in source.degrees() {
            if let Some(s) = self.component_map(source, target, k)?.max_shift() {
                if best.as_ref().map_or(true, |b| &s > b) {
                    best = Some(s);
                }
            }
        }
        Ok(best)
    }

    /// Degrees where ∂_D F ≠ (−1)^{degree} F ∂_C.
    pub fn chain_defects(&self, source: &FilteredChainComplex, target: &FilteredChainComplex) -> Vec<i64> {
        let d = self.degree;
        let sign_neg = d.rem_euclid(2) == 1;
        let mut bad = Vec::new();
        for k in source.degrees() {
            let f_k = self.at_or_zero(k, target.dim(k + d), source.dim(k));
            let f_km1 = self.at_or_zero(k - 1, target.dim(k - 1 + d), source.dim(k - 1));
            let lhs = target.boundary_matrix(k + d).mul(&f_k);
            let mut rhs = f_km1.mul(&source.boundary_matrix(k));
            if sign_neg {
                rhs = rhs.neg();
            }
            if !lhs.sub(&rhs).is_zero() {
                bad.push(k);
            }
        }
        bad
    }

    pub fn is_chain_map(&self, source: &FilteredChainComplex, target: &FilteredChainComplex) -> bool {
        self.chain_defects(source, target).is_empty()
    }
}

/// Errors unless `t` is a degree-0 chain map on `c` that does not raise filtration.
pub fn check_filtered_chain_map(c: &FilteredChainComplex, t: &GradedMap) -> Result<()> {
    if t.degree() != 0 {
        return Err(Error::NotChainMap(format!("map has degree {}", t.degree())));
    }
    let bad = t.chain_defects(c, c);
    if !bad.is_empty() {
        return Err(Error::NotChainMap(format!("∂T ≠ T∂ in degrees {bad:?}")));
    }
    if let Some(s) = t.max_shift(c, c)? {
        if s > Rational::from_integer(0.into()) {
            return Err(Error::Precondition(format!("map raises filtration by {s}")));
        }
    }
    Ok(())
}
