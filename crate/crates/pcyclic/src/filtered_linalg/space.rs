use std::collections::HashSet;

use crate::coefficients::{ExponentGroup, NovikovField};
use crate::error::{Error, Result};
use crate::rational::Rational;

use super::vector::SparseVector;

/// A finite-dimensional Λ-space with an orthogonal defining basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FilteredSpace {
    labels: Vec<String>,
    filtrations: Vec<Rational>,
    field: NovikovField,
}

impl FilteredSpace {
    pub fn new(labels: Vec<String>, filtrations: Vec<Rational>, field: NovikovField) -> Result<Self> {
        if labels.len() != filtrations.len() {
            return Err(Error::Dimension {
                expected: labels.len(),
                got: filtrations.len(),
            });
        }
        let mut seen = HashSet::new();
        for l in &labels {
            if !seen.insert(l.as_str()) {
                return Err(Error::Config(format!("duplicate generator label {l:?}")));
            }
        }
        Ok(FilteredSpace {
            labels,
            filtrations,
            field,
        })
    }

    pub fn empty(field: NovikovField) -> Self {
        FilteredSpace {
            labels: Vec::new(),
            filtrations: Vec::new(),
            field,
        }
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn filtrations(&self) -> &[Rational] {
        &self.filtrations
    }

    pub fn filtration(&self, i: usize) -> &Rational {
        &self.filtrations[i]
    }

    pub fn gamma(&self) -> &ExponentGroup {
        &self.field.gamma
    }

    pub fn field(&self) -> &NovikovField {
        &self.field
    }

    pub fn prime(&self) -> u32 {
        self.field.prime
    }

    pub fn unit(&self, i: usize) -> SparseVector {
        SparseVector::unit(self.dim(), i, self.field.prime)
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn with_filtrations(&self, filtrations: Vec<Rational>) -> Result<Self> {
        Self::new(self.labels.clone(), filtrations, self.field.clone())
    }

    pub fn relabel(&self, f: impl Fn(&str) -> String) -> Result<Self> {
        Self::new(
            self.labels.iter().map(|l| f(l)).collect(),
            self.filtrations.clone(),
            self.field.clone(),
        )
    }

    /// Direct sum with the other space's labels appended.
    pub fn direct_sum(&self, other: &FilteredSpace) -> Result<Self> {
        let mut labels = self.labels.clone();
        labels.extend(other.labels.iter().cloned());
        let mut filtrations = self.filtrations.clone();
        filtrations.extend(other.filtrations.iter().cloned());
        Self::new(labels, filtrations, self.field.clone())
    }

    pub fn check_vector(&self, v: &SparseVector) -> Result<()> {
        if v.dim() != self.dim() {
            return Err(Error::Dimension {
                expected: self.dim(),
                got: v.dim(),
            });
        }
        Ok(())
    }
}
