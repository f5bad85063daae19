use crate::complexes::FilteredChainComplex;
use crate::error::{Error, Result};
use crate::filtered_linalg::{extend_orthogonal, filtration_of, svd, SparseVector, SvdResult};

use super::bar::{Bar, Barcode, BarcodeKind};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CodomainMode {
    /// Pair against ker ∂_k; unpaired cycles give infinite bars.
    Kernel,
    /// Pair against Im ∂_{k+1}; requires vanishing homology at k.
    Image,
}

/// The decomposition behind one degree of a barcode.
#[derive(Clone, Debug)]
pub struct DegreeBarcode {
    pub barcode: Barcode,
    /// SVD of ∂_{k+1} : C_{k+1} → C_k.
    pub svd: SvdResult,
    /// Cycles completing x_1, …, x_r to an orthogonal basis of ker ∂_k.
    pub unpaired: Vec<SparseVector>,
}

pub fn barcode_detail(c: &FilteredChainComplex, k: i64, mode: CodomainMode) -> Result<DegreeBarcode> {
    barcode_from_svd(c, k, svd(&c.boundary(k + 1)), mode)
}

/// Bars of degree k from a given singular value decomposition of ∂_{k+1}.
pub fn barcode_from_svd(c: &FilteredChainComplex, k: i64, res: SvdResult, mode: CodomainMode) -> Result<DegreeBarcode> {
    let gamma = c.field().gamma.clone();
    let space = c.space(k);
    let mut bars = Vec::new();
    for i in 0..res.rank {
        let lx = filtration_of(&space, &res.codomain_basis[i])?.expect("image vectors are nonzero");
        bars.push(Bar::finite(k, lx, res.shifts[i].clone()));
    }
    let out = svd(&c.boundary(k));
    let cycles: Vec<SparseVector> = out.domain_basis[out.rank..].to_vec();
    let unpaired = match mode {
        CodomainMode::Image => {
            if cycles.len() != res.rank {
                return Err(Error::Precondition(format!(
                    "image mode at degree {k}: dim ker ∂ = {} but rank of incoming ∂ = {}",
                    cycles.len(),
                    res.rank
                )));
            }
            Vec::new()
        }
        CodomainMode::Kernel => {
            let added = extend_orthogonal(&space, &res.codomain_basis[..res.rank], &cycles, None)?;
            if added.len() + res.rank != cycles.len() {
                return Err(Error::Verification(format!(
                    "degree {k}: kernel completion found {} cycles, expected {}",
                    added.len(),
                    cycles.len() - res.rank
                )));
            }
            for z in &added {
                bars.push(Bar::infinite(k, filtration_of(&space, z)?.expect("nonzero cycle")));
            }
            added
        }
    };
    Ok(DegreeBarcode {
        barcode: Barcode::new(BarcodeKind::Verbose, gamma, bars),
        svd: res,
        unpaired,
    })
}

/// Verbose degree-k barcode.
pub fn barcode_of(c: &FilteredChainComplex, k: i64, mode: CodomainMode) -> Result<Barcode> {
    Ok(barcode_detail(c, k, mode)?.barcode)
}

/// Verbose barcode over every degree of the complex.
pub fn full_barcode(c: &FilteredChainComplex, mode: CodomainMode) -> Result<Barcode> {
    let mut acc = Barcode::empty(BarcodeKind::Verbose, c.field().gamma.clone());
    for k in c.degrees() {
        acc = acc.merge(&barcode_of(c, k, mode)?);
    }
    Ok(acc)
}
