use crate::barcode::{barcode_from_svd, barcode_of, Barcode, CodomainMode};
use crate::complexes::FilteredChainComplex;
use crate::error::{Error, Result};

use super::action::CyclicActionData;
use super::ptuple::p_cyclic_svd;
use super::repair::RepairedAction;

/// What a strategy may look at: the complex, and for equivariant strategies
/// the action data whose cone it is.
pub struct StrategyInput<'a> {
    pub complex: &'a FilteredChainComplex,
    pub action: Option<(&'a CyclicActionData, &'a RepairedAction)>,
    pub mode: CodomainMode,
}

pub trait BarcodeStrategy {
    fn name(&self) -> &'static str;
    fn degree_barcode(&self, input: &StrategyInput<'_>, k: i64) -> Result<Barcode>;
}

pub struct FilteredSvdStrategy;

impl BarcodeStrategy for FilteredSvdStrategy {
    fn name(&self) -> &'static str {
        "filtered-svd"
    }

    fn degree_barcode(&self, input: &StrategyInput<'_>, k: i64) -> Result<Barcode> {
        barcode_of(input.complex, k, input.mode)
    }
}

pub struct PCyclicStrategy;

impl BarcodeStrategy for PCyclicStrategy {
    fn name(&self) -> &'static str {
        "p-cyclic"
    }

    fn degree_barcode(&self, input: &StrategyInput<'_>, k: i64) -> Result<Barcode> {
        let (data, repaired) = input
            .action
            .ok_or_else(|| Error::Precondition("p-cyclic strategy needs action data".into()))?;
        if input.complex != &data.cone.complex {
            return Err(Error::Precondition("action data belongs to a different complex".into()));
        }
        let res = p_cyclic_svd(data, repaired, k)?;
        Ok(barcode_from_svd(input.complex, k, res.svd, input.mode)?.barcode)
    }
}

pub fn strategies() -> Vec<Box<dyn BarcodeStrategy>> {
    vec![Box::new(FilteredSvdStrategy), Box::new(PCyclicStrategy)]
}

pub fn strategy(name: &str) -> Option<Box<dyn BarcodeStrategy>> {
    strategies().into_iter().find(|s| s.name() == name)
}

/// Verbose barcode over all degrees through the chosen strategy.
pub fn strategy_barcode(s: &dyn BarcodeStrategy, input: &StrategyInput<'_>) -> Result<Barcode> {
    let mut acc = Barcode::empty(crate::barcode::BarcodeKind::Verbose, input.complex.field().gamma.clone());
    for k in input.complex.degrees() {
        acc = acc.merge(&s.degree_barcode(input, k)?);
    }
    Ok(acc)
}
