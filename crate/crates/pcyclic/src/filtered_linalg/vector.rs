use std::collections::BTreeMap;

use crate::coefficients::{CyclotomicRational, NovikovScalar};
use crate::rational::Rational;

/// A coordinate vector with sorted, nonzero entries.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SparseVector {
    dim: usize,
    entries: Vec<(usize, NovikovScalar)>,
}

impl SparseVector {
    pub fn zero(dim: usize) -> Self {
        SparseVector {
            dim,
            entries: Vec::new(),
        }
    }

    pub fn unit(dim: usize, i: usize, prime: u32) -> Self {
        assert!(i < dim, "unit vector index {i} out of range {dim}");
        SparseVector {
            dim,
            entries: vec![(i, NovikovScalar::one(prime))],
        }
    }

    pub fn from_entries(dim: usize, entries: impl IntoIterator<Item = (usize, NovikovScalar)>) -> Self {
        let mut map: BTreeMap<usize, NovikovScalar> = BTreeMap::new();
        for (i, s) in entries {
            assert!(i < dim, "index {i} out of range {dim}");
            match map.get_mut(&i) {
                Some(acc) => *acc = &*acc + &s,
                None => {
                    map.insert(i, s);
                }
            }
        }
        SparseVector {
            dim,
            entries: map.into_iter().filter(|(_, s)| !s.is_zero()).collect(),
        }
    }

    pub fn from_dense(v: &[NovikovScalar]) -> Self {
        SparseVector {
            dim: v.len(),
            entries: v
                .iter()
                .enumerate()
                .filter(|(_, s)| !s.is_zero())
                .map(|(i, s)| (i, s.clone()))
                .collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[(usize, NovikovScalar)] {
        &self.entries
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, i: usize) -> Option<&NovikovScalar> {
        self.entries
            .binary_search_by_key(&i, |(j, _)| *j)
            .ok()
            .map(|k| &self.entries[k].1)
    }

    pub fn to_dense(&self) -> Vec<NovikovScalar> {
        let mut out = vec![NovikovScalar::zero(); self.dim];
        for (i, s) in &self.entries {
            out[*i] = s.clone();
        }
        out
    }

    pub fn prime(&self) -> Option<u32> {
        self.entries.first().and_then(|(_, s)| s.prime())
    }

    pub fn scale(&self, c: &NovikovScalar) -> Self {
        if c.is_zero() {
            return Self::zero(self.dim);
        }
        SparseVector {
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .map(|(i, s)| (*i, s * c))
                .filter(|(_, s)| !s.is_zero())
                .collect(),
        }
    }

    pub fn scale_k(&self, c: &CyclotomicRational) -> Self {
        self.scale(&NovikovScalar::constant(c.clone()))
    }

    /// Multiplication by c·t^exp.
    pub fn mul_monomial(&self, exp: &Rational, c: &CyclotomicRational) -> Self {
        if c.is_zero() {
            return Self::zero(self.dim);
        }
        SparseVector {
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .map(|(i, s)| (*i, s.mul_monomial(exp, c)))
                .collect(),
        }
    }

    /// self + c·other
    pub fn axpy(&self, c: &NovikovScalar, other: &SparseVector) -> Self {
        assert_eq!(self.dim, other.dim, "vector dimension mismatch");
        if c.is_zero() || other.is_zero() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut a, mut b) = (0, 0);
        while a < self.entries.len() || b < other.entries.len() {
            let ia = self.entries.get(a).map(|e| e.0).unwrap_or(usize::MAX);
            let ib = other.entries.get(b).map(|e| e.0).unwrap_or(usize::MAX);
            if ia < ib {
                out.push(self.entries[a].clone());
                a += 1;
            } else if ib < ia {
                let s = c * &other.entries[b].1;
                if !s.is_zero() {
                    out.push((ib, s));
                }
                b += 1;
            } else {
                let s = &self.entries[a].1 + &(c * &other.entries[b].1);
                if !s.is_zero() {
                    out.push((ia, s));
                }
                a += 1;
                b += 1;
            }
        }
        SparseVector {
            dim: self.dim,
            entries: out,
        }
    }

    pub fn add(&self, other: &SparseVector) -> Self {
        match other.prime() {
            Some(p) => self.axpy(&NovikovScalar::one(p), other),
            None => self.clone(),
        }
    }

    pub fn sub(&self, other: &SparseVector) -> Self {
        match other.prime() {
            Some(p) => self.axpy(&NovikovScalar::from_integer(p, -1), other),
            None => self.clone(),
        }
    }

    pub fn neg(&self) -> Self {
        SparseVector {
            dim: self.dim,
            entries: self.entries.iter().map(|(i, s)| (*i, -s)).collect(),
        }
    }

    /// Places this vector at `offset` inside a vector of dimension `dim`.
    pub fn embed(&self, dim: usize, offset: usize) -> Self {
        assert!(offset + self.dim <= dim);
        SparseVector {
            dim,
            entries: self.entries.iter().map(|(i, s)| (i + offset, s.clone())).collect(),
        }
    }

    /// The coordinates in `range`, reindexed from zero.
    pub fn slice(&self, start: usize, len: usize) -> Self {
        SparseVector {
            dim: len,
            entries: self
                .entries
                .iter()
                .filter(|(i, _)| *i >= start && *i < start + len)
                .map(|(i, s)| (i - start, s.clone()))
                .collect(),
        }
    }

    pub fn permute(&self, dim: usize, map: impl Fn(usize) -> usize) -> Self {
        SparseVector::from_entries(dim, self.entries.iter().map(|(i, s)| (map(*i), s.clone())))
    }
}
