use crate::coefficients::NovikovScalar;

use super::vector::SparseVector;

/// Column-major sparse matrix over the Novikov field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: usize,
    columns: Vec<SparseVector>,
}

impl SparseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseMatrix {
            rows,
            columns: vec![SparseVector::zero(rows); cols],
        }
    }

    pub fn identity(n: usize, prime: u32) -> Self {
        SparseMatrix {
            rows: n,
            columns: (0..n).map(|i| SparseVector::unit(n, i, prime)).collect(),
        }
    }

    pub fn from_columns(rows: usize, columns: Vec<SparseVector>) -> Self {
        for c in &columns {
            assert_eq!(c.dim(), rows, "column length mismatch");
        }
        SparseMatrix { rows, columns }
    }

    pub fn from_triplets(
        rows: usize,
        cols: usize,
        triplets: impl IntoIterator<Item = (usize, usize, NovikovScalar)>,
    ) -> Self {
        let mut per_col: Vec<Vec<(usize, NovikovScalar)>> = vec![Vec::new(); cols];
        for (r, c, s) in triplets {
            assert!(r < rows && c < cols, "entry ({r},{c}) out of range");
            per_col[c].push((r, s));
        }
        SparseMatrix {
            rows,
            columns: per_col
                .into_iter()
                .map(|e| SparseVector::from_entries(rows, e))
                .collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.columns.len()
    }

    pub fn column(&self, j: usize) -> &SparseVector {
        &self.columns[j]
    }

    pub fn columns(&self) -> &[SparseVector] {
        &self.columns
    }

    pub fn get(&self, i: usize, j: usize) -> Option<&NovikovScalar> {
        self.columns[j].get(i)
    }

    pub fn triplets(&self) -> impl Iterator<Item = (usize, usize, &NovikovScalar)> {
        self.columns
            .iter()
            .enumerate()
            .flat_map(|(j, c)| c.entries().iter().map(move |(i, s)| (*i, j, s)))
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(|c| c.nnz()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(|c| c.is_zero())
    }

    pub fn prime(&self) -> Option<u32> {
        self.columns.iter().find_map(|c| c.prime())
    }

    pub fn apply(&self, v: &SparseVector) -> SparseVector {
        assert_eq!(v.dim(), self.cols(), "matrix-vector dimension mismatch");
        let mut acc = SparseVector::zero(self.rows);
        for (j, s) in v.entries() {
            acc = acc.axpy(s, &self.columns[*j]);
        }
        acc
    }

    /// self · other
    pub fn mul(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.cols(), other.rows, "matrix product dimension mismatch");
        SparseMatrix {
            rows: self.rows,
            columns: other.columns.iter().map(|c| self.apply(c)).collect(),
        }
    }

    pub fn add(&self, other: &SparseMatrix) -> SparseMatrix {
        self.zip(other, |a, b| a.add(b))
    }

    pub fn sub(&self, other: &SparseMatrix) -> SparseMatrix {
        self.zip(other, |a, b| a.sub(b))
    }

    fn zip(&self, other: &SparseMatrix, f: impl Fn(&SparseVector, &SparseVector) -> SparseVector) -> SparseMatrix {
        assert_eq!((self.rows, self.cols()), (other.rows, other.cols()), "shape mismatch");
        SparseMatrix {
            rows: self.rows,
            columns: self
                .columns
                .iter()
                .zip(&other.columns)
                .map(|(a, b)| f(a, b))
                .collect(),
        }
    }

    pub fn scale(&self, c: &NovikovScalar) -> SparseMatrix {
        SparseMatrix {
            rows: self.rows,
            columns: self.columns.iter().map(|v| v.scale(c)).collect(),
        }
    }

    pub fn neg(&self) -> SparseMatrix {
        SparseMatrix {
            rows: self.rows,
            columns: self.columns.iter().map(|v| v.neg()).collect(),
        }
    }

    pub fn pow(&self, e: u32, prime: u32) -> SparseMatrix {
        assert_eq!(self.rows, self.cols(), "power of a non-square matrix");
        let mut acc = SparseMatrix::identity(self.rows, prime);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn transpose(&self) -> SparseMatrix {
        SparseMatrix::from_triplets(
            self.cols(),
            self.rows,
            self.triplets().map(|(i, j, s)| (j, i, s.clone())),
        )
    }

    /// Block matrix [[a, b], [c, d]]; blocks must have compatible shapes.
    pub fn block(a: &SparseMatrix, b: &SparseMatrix, c: &SparseMatrix, d: &SparseMatrix) -> SparseMatrix {
        assert_eq!(a.rows, b.rows);
        assert_eq!(c.rows, d.rows);
        assert_eq!(a.cols(), c.cols());
        assert_eq!(b.cols(), d.cols());
        let rows = a.rows + c.rows;
        let mut columns = Vec::with_capacity(a.cols() + b.cols());
        for j in 0..a.cols() {
            columns.push(a.columns[j].embed(rows, 0).add(&c.columns[j].embed(rows, a.rows)));
        }
        for j in 0..b.cols() {
            columns.push(b.columns[j].embed(rows, 0).add(&d.columns[j].embed(rows, a.rows)));
        }
        SparseMatrix { rows, columns }
    }
}
