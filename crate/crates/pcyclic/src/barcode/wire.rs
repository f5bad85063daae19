use serde::{Deserialize, Serialize};

use crate::coefficients::ExponentGroup;
use crate::error::{Error, Result};
use crate::rational::{fmt_rational, parse_rational};
use crate::{check_schema, SCHEMA_VERSION};

use super::bar::{Bar, BarLength, Barcode, BarcodeKind};

pub const BARCODE_SCHEMA: &str = "pcyclic.barcode";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BarWire {
    pub degree: i64,
    pub endpoint: String,
    /// "inf" for infinite bars.
    pub length: String,
    pub multiplicity: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BarcodeWire {
    pub schema: String,
    pub version: u32,
    pub kind: String,
    pub gamma: Vec<String>,
    pub bars: Vec<BarWire>,
}

impl BarcodeWire {
    pub fn from_barcode(b: &Barcode) -> Self {
        BarcodeWire {
            schema: BARCODE_SCHEMA.into(),
            version: SCHEMA_VERSION,
            kind: b.kind().name().into(),
            gamma: b.gamma().generators().iter().map(fmt_rational).collect(),
            bars: b
                .collapsed()
                .into_iter()
                .map(|(bar, m)| BarWire {
                    degree: bar.degree,
                    endpoint: fmt_rational(&bar.endpoint),
                    length: bar.length.to_string(),
                    multiplicity: m,
                })
                .collect(),
        }
    }

    pub fn to_barcode(&self) -> Result<Barcode> {
        check_schema(&self.schema, BARCODE_SCHEMA, self.version)?;
        let kind = match self.kind.as_str() {
            "verbose" => BarcodeKind::Verbose,
            "concise" => BarcodeKind::Concise,
            other => return Err(Error::Parse(format!("unknown barcode kind {other:?}"))),
        };
        let gens = self.gamma.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>>>()?;
        let gamma = ExponentGroup::new(gens).map_err(|e| Error::Parse(e.to_string()))?;
        let mut bars = Vec::new();
        for w in &self.bars {
            let length = if w.length == "inf" {
                BarLength::Infinite
            } else {
                BarLength::Finite(parse_rational(&w.length)?)
            };
            let bar = Bar {
                degree: w.degree,
                endpoint: parse_rational(&w.endpoint)?,
                length,
            };
            bars.extend(std::iter::repeat(bar).take(w.multiplicity));
        }
        Ok(Barcode::new(kind, gamma, bars))
    }
}
