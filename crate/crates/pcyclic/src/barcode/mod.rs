//! Verbose and concise barcodes, the tensor-product rules and stability checks.

mod bar;
mod compute;
mod stability;
mod tensor;
mod wire;

pub use bar::{Bar, BarLength, Barcode, BarcodeKind};
pub use compute::{barcode_detail, barcode_from_svd, barcode_of, full_barcode, CodomainMode, DegreeBarcode};
pub use stability::{compare_all_degrees, compare_barcodes, stability_probe, stability_probe_with, ProbeConfig, ProbeReport};
pub use tensor::tensor_barcode;
pub use wire::{BarWire, BarcodeWire, BARCODE_SCHEMA};
