use num_traits::Zero;

use crate::coefficients::NovikovField;
use crate::error::{Error, Result};
use crate::filtered_linalg::{field_rank, filtration_of, FilteredMap, FilteredSpace, SparseMatrix};
use crate::rational::Rational;

/// A bounded chain complex of filtered spaces, degrees `lo..=hi`.
///
/// `boundary(k)` maps degree k to degree k − 1. Outside the stored range the
/// spaces are zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FilteredChainComplex {
    field: NovikovField,
    lo: i64,
    spaces: Vec<FilteredSpace>,
    /// boundaries[i] is ∂ on degree lo + i + 1.
    boundaries: Vec<FilteredMap>,
    strictness: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ViolationKind {
    SquareNonzero,
    NotStrict,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub degree: i64,
    pub column: usize,
    pub kind: ViolationKind,
}

impl FilteredChainComplex {
    /// `boundaries` lists ∂_{lo+1}, …, ∂_{hi} as codomain-rows × domain-columns
    /// matrices. Shapes and exponents are checked; ∂² = 0 and strictness are
    /// left to [`verify_complex`].
    pub fn new(
        field: NovikovField,
        lo: i64,
        spaces: Vec<FilteredSpace>,
        boundaries: Vec<SparseMatrix>,
        strictness: Rational,
    ) -> Result<Self> {
        if spaces.is_empty() {
            return Err(Error::Config("a complex needs at least one degree".into()));
        }
        if boundaries.len() + 1 != spaces.len() {
            return Err(Error::Dimension {
                expected: spaces.len() - 1,
                got: boundaries.len(),
            });
        }
        if strictness < Rational::zero() {
            return Err(Error::Config("strictness must be non-negative".into()));
        }
        if let Some(s) = spaces.iter().find(|s| s.field() != &field) {
            return Err(Error::Config(format!(
                "space over p = {} does not match the complex field",
                s.prime()
            )));
        }
        let maps = boundaries
            .into_iter()
            .enumerate()
            .map(|(i, m)| FilteredMap::new(spaces[i + 1].clone(), spaces[i].clone(), m))
            .collect::<Result<Vec<_>>>()?;
        Ok(FilteredChainComplex {
            field,
            lo,
            spaces,
            boundaries: maps,
            strictness,
        })
    }

    pub fn field(&self) -> &NovikovField {
        &self.field
    }

    pub fn prime(&self) -> u32 {
        self.field.prime
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.lo + self.spaces.len() as i64 - 1
    }

    pub fn degrees(&self) -> std::ops::RangeInclusive<i64> {
        self.lo..=self.hi()
    }

    pub fn strictness(&self) -> &Rational {
        &self.strictness
    }

    pub fn with_strictness(&self, strictness: Rational) -> Self {
        FilteredChainComplex {
            strictness,
            ..self.clone()
        }
    }

    fn index(&self, k: i64) -> Option<usize> {
        (self.lo..=self.hi()).contains(&k).then(|| (k - self.lo) as usize)
    }

    /// C_k, empty outside the range.
    pub fn space(&self, k: i64) -> FilteredSpace {
        match self.index(k) {
            Some(i) => self.spaces[i].clone(),
            None => FilteredSpace::empty(self.field.clone()),
        }
    }

    pub fn space_ref(&self, k: i64) -> Option<&FilteredSpace> {
        self.index(k).map(|i| &self.spaces[i])
    }

    pub fn dim(&self, k: i64) -> usize {
        self.space_ref(k).map_or(0, |s| s.dim())
    }

    pub fn total_dim(&self) -> usize {
        self.spaces.iter().map(|s| s.dim()).sum()
    }

    /// ∂_k : C_k → C_{k−1}.
    pub fn boundary(&self, k: i64) -> FilteredMap {
        match (self.index(k), self.index(k - 1)) {
            (Some(i), Some(_)) => self.boundaries[i - 1].clone(),
            _ => FilteredMap::zero(self.space(k), self.space(k - 1)),
        }
    }

    pub fn boundary_ref(&self, k: i64) -> Option<&FilteredMap> {
        match (self.index(k), self.index(k - 1)) {
            (Some(i), Some(_)) => Some(&self.boundaries[i - 1]),
            _ => None,
        }
    }

    pub fn boundary_matrix(&self, k: i64) -> SparseMatrix {
        self.boundary_ref(k)
            .map(|m| m.matrix().clone())
            .unwrap_or_else(|| SparseMatrix::zeros(self.dim(k - 1), self.dim(k)))
    }

    /// Same boundaries, new filtration values.
    pub fn with_filtrations(&self, filtrations: impl Fn(i64, usize) -> Rational) -> Result<Self> {
        let spaces = self
            .degrees()
            .map(|k| {
                let s = self.space(k);
                s.with_filtrations((0..s.dim()).map(|i| filtrations(k, i)).collect())
            })
            .collect::<Result<Vec<_>>>()?;
        let bds = (self.lo + 1..=self.hi()).map(|k| self.boundary_matrix(k)).collect();
        FilteredChainComplex::new(self.field.clone(), self.lo, spaces, bds, Rational::zero())
    }

    /// dim ker ∂_k − rank ∂_{k+1}, by plain elimination.
    pub fn homology_rank(&self, k: i64) -> usize {
        let out = self.boundary_ref(k).map_or(0, |m| field_rank(m.matrix()));
        let inc = self.boundary_ref(k + 1).map_or(0, |m| field_rank(m.matrix()));
        self.dim(k) - out - inc
    }

    pub fn homology_ranks(&self) -> Vec<(i64, usize)> {
        self.degrees().map(|k| (k, self.homology_rank(k))).collect()
    }
}

/// Lists every column violating ∂² = 0 or ℓ(∂c) ≤ ℓ(c) − δ.
pub fn verify_complex(c: &FilteredChainComplex) -> Vec<Violation> {
    let mut out = Vec::new();
    for k in c.degrees() {
        let Some(d) = c.boundary_ref(k) else { continue };
        let below = c.boundary_ref(k - 1);
        for j in 0..d.domain().dim() {
            let img = d.matrix().column(j);
            if let Some(below) = below {
                if !below.apply(img).is_zero() {
                    out.push(Violation {
                        degree: k,
                        column: j,
                        kind: ViolationKind::SquareNonzero,
                    });
                }
            }
            if let Some(l) = filtration_of(d.codomain(), img).expect("shapes checked at construction") {
                if l > d.domain().filtration(j) - c.strictness() {
                    out.push(Violation {
                        degree: k,
                        column: j,
                        kind: ViolationKind::NotStrict,
                    });
                }
            }
        }
    }
    out
}
