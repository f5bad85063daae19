//! Exact barcodes of filtered chain complexes over Novikov fields, with the
//! machinery for p-cyclic actions, self-mapping cones and the egg-beater model.

pub mod barcode;
pub mod coefficients;
pub mod complexes;
pub mod cyclic;
pub mod eggbeater;
pub mod error;
pub mod filtered_linalg;
pub mod rational;

pub use error::{Error, Result};

/// Version stamped into every serialized artifact.
pub const SCHEMA_VERSION: u32 = 1;

pub(crate) fn check_schema(found: &str, expected: &str, version: u32) -> Result<()> {
    if found != expected {
        return Err(Error::Parse(format!("expected schema {expected:?}, found {found:?}")));
    }
    if version != SCHEMA_VERSION {
        return Err(Error::Parse(format!(
            "schema version {version} is not supported (expected {SCHEMA_VERSION})"
        )));
    }
    Ok(())
}
