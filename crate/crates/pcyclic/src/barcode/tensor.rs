use crate::error::{Error, Result};

use super::bar::{Bar, BarLength, Barcode, BarcodeKind};

/// Bars of C ⊗ D from the bars of C and D.
///
/// With endpoints a, b and lengths L₁, L₂:
/// infinite × infinite gives an infinite bar at a + b in the summed degree;
/// finite × infinite (either order) keeps the finite length at a + b;
/// finite × finite gives two bars of length min(L₁, L₂), one at a + b in the
/// summed degree and one at a + b + max(L₁, L₂) one degree up.
pub fn tensor_barcode(a: &Barcode, b: &Barcode) -> Result<Barcode> {
    if a.gamma() != b.gamma() {
        return Err(Error::Config("barcodes over different exponent groups".into()));
    }
    let mut bars = Vec::new();
    for x in a.bars() {
        for y in b.bars() {
            let deg = x.degree + y.degree;
            let end = &x.endpoint + &y.endpoint;
            match (&x.length, &y.length) {
                (BarLength::Infinite, BarLength::Infinite) => bars.push(Bar::infinite(deg, end)),
                (BarLength::Finite(l), BarLength::Infinite) | (BarLength::Infinite, BarLength::Finite(l)) => {
                    bars.push(Bar::finite(deg, end, l.clone()))
                }
                (BarLength::Finite(l1), BarLength::Finite(l2)) => {
                    let short = l1.min(l2).clone();
                    let long = l1.max(l2).clone();
                    bars.push(Bar::finite(deg, end.clone(), short.clone()));
                    bars.push(Bar::finite(deg + 1, end + long, short));
                }
            }
        }
    }
    let kind = if a.kind() == BarcodeKind::Concise && b.kind() == BarcodeKind::Concise {
        BarcodeKind::Concise
    } else {
        BarcodeKind::Verbose
    };
    Ok(Barcode::new(kind, a.gamma().clone(), bars))
}
