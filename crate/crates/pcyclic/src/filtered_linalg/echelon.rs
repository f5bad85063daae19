//! Incremental row echelon form over an exact field, remembering how each
//! echelon row combines the inserted vectors.

use std::collections::BTreeMap;

use crate::coefficients::{CyclotomicRational, NovikovScalar};
use crate::error::{Error, Result};

pub trait ExactField: Clone + std::fmt::Debug {
    fn is_zero(&self) -> bool;
    /// Whether exact division by this value is available.
    fn is_divisor(&self) -> bool;
    fn mul(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn div(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn one_like(&self) -> Self;
}

impl ExactField for CyclotomicRational {
    fn is_zero(&self) -> bool {
        CyclotomicRational::is_zero(self)
    }
    fn is_divisor(&self) -> bool {
        !CyclotomicRational::is_zero(self)
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn div(&self, o: &Self) -> Self {
        CyclotomicRational::div(self, o).expect("nonzero divisor")
    }
    fn neg(&self) -> Self {
        -self
    }
    fn one_like(&self) -> Self {
        CyclotomicRational::one(self.prime())
    }
}

impl ExactField for NovikovScalar {
    fn is_zero(&self) -> bool {
        NovikovScalar::is_zero(self)
    }
    fn is_divisor(&self) -> bool {
        self.is_monomial()
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn div(&self, o: &Self) -> Self {
        self.div_exact(o).expect("monomial divisor")
    }
    fn neg(&self) -> Self {
        -self
    }
    fn one_like(&self) -> Self {
        NovikovScalar::one(self.prime().expect("nonzero"))
    }
}

pub type SparseRow<F> = BTreeMap<usize, F>;

#[derive(Clone, Debug)]
struct Row<F> {
    pivot: usize,
    vec: SparseRow<F>,
    combo: SparseRow<F>,
}

#[derive(Clone, Debug)]
pub struct Echelon<F> {
    rows: Vec<Row<F>>,
    members: usize,
}

impl<F: ExactField> Default for Echelon<F> {
    fn default() -> Self {
        Echelon {
            rows: Vec::new(),
            members: 0,
        }
    }
}

fn axpy<F: ExactField>(target: &mut SparseRow<F>, c: &F, src: &SparseRow<F>) {
    for (k, s) in src {
        let delta = c.mul(s);
        match target.get_mut(k) {
            Some(t) => {
                let v = t.sub(&delta.neg());
                if v.is_zero() {
                    target.remove(k);
                } else {
                    *t = v;
                }
            }
            None => {
                if !delta.is_zero() {
                    target.insert(*k, delta);
                }
            }
        }
    }
}

impl<F: ExactField> Echelon<F> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Number of vectors accepted so far.
    pub fn members(&self) -> usize {
        self.members
    }

    /// Splits v = residual + Σ combo[k]·member_k.
    pub fn reduce<'a>(&self, v: impl IntoIterator<Item = (usize, &'a F)>) -> (SparseRow<F>, SparseRow<F>)
    where
        F: 'a,
    {
        let mut residual: SparseRow<F> = v
            .into_iter()
            .filter(|(_, s)| !s.is_zero())
            .map(|(i, s)| (i, s.clone()))
            .collect();
        let mut combo = SparseRow::new();
        for row in &self.rows {
            if let Some(c) = residual.get(&row.pivot).cloned() {
                axpy(&mut residual, &c.neg(), &row.vec);
                axpy(&mut combo, &c, &row.combo);
            }
        }
        (residual, combo)
    }

    /// Coefficients expressing v through the members, when v lies in their span.
    pub fn express<'a>(&self, v: impl IntoIterator<Item = (usize, &'a F)>) -> Option<SparseRow<F>>
    where
        F: 'a,
    {
        let (residual, combo) = self.reduce(v);
        residual.is_empty().then_some(combo)
    }

    /// Adds v when independent of the members; returns its member index.
    pub fn insert<'a>(&mut self, v: impl IntoIterator<Item = (usize, &'a F)>) -> Result<Option<usize>>
    where
        F: 'a,
    {
        let (residual, combo) = self.reduce(v);
        if residual.is_empty() {
            return Ok(None);
        }
        let (pivot, pv) = residual
            .iter()
            .find(|(_, s)| s.is_divisor())
            .map(|(i, s)| (*i, s.clone()))
            .ok_or_else(|| Error::Inexact("no exactly invertible pivot available".into()))?;
        let vec = residual.iter().map(|(i, s)| (*i, s.div(&pv))).collect();
        let idx = self.members;
        let mut row_combo: SparseRow<F> = combo.iter().map(|(k, s)| (*k, s.neg().div(&pv))).collect();
        row_combo.insert(idx, pv.one_like().div(&pv));
        self.rows.push(Row {
            pivot,
            vec,
            combo: row_combo,
        });
        self.members += 1;
        Ok(Some(idx))
    }
}
