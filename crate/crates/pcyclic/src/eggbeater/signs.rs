use crate::error::{Error, Result};

/// Signs at the 2p positions; position 2j holds sign(x_{2j}) and position
/// 2j + 1 holds −sign(y_{2j}).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SignSequence {
    entries: Vec<i8>,
}

impl SignSequence {
    pub fn new(p: u32, entries: Vec<i8>) -> Result<Self> {
        if entries.len() != 2 * p as usize {
            return Err(Error::Dimension {
                expected: 2 * p as usize,
                got: entries.len(),
            });
        }
        if entries.iter().any(|e| *e != 1 && *e != -1) {
            return Err(Error::Config("sign entries must be +1 or -1".into()));
        }
        Ok(SignSequence { entries })
    }

    /// Builds the sequence from per-fixed-point signs of x_{2j} and y_{2j}.
    pub fn from_xy(x: &[i8], y: &[i8]) -> Result<Self> {
        if x.len() != y.len() {
            return Err(Error::Dimension {
                expected: x.len(),
                got: y.len(),
            });
        }
        let entries = x.iter().zip(y).flat_map(|(a, b)| [*a, -*b]).collect();
        Self::new(x.len() as u32, entries)
    }

    /// Bit i of `mask` set means position i carries +1.
    pub fn from_mask(p: u32, mask: u64) -> Self {
        SignSequence {
            entries: (0..2 * p).map(|i| if mask >> i & 1 == 1 { 1 } else { -1 }).collect(),
        }
    }

    pub fn mask(&self) -> u64 {
        self.entries
            .iter()
            .enumerate()
            .filter(|(_, e)| **e == 1)
            .fold(0, |m, (i, _)| m | 1 << i)
    }

    pub fn entries(&self) -> &[i8] {
        &self.entries
    }

    pub fn plus_count(&self) -> usize {
        self.entries.iter().filter(|e| **e == 1).count()
    }

    /// "+-+…" rendering used in generator labels.
    pub fn render(&self) -> String {
        self.entries.iter().map(|e| if *e == 1 { '+' } else { '-' }).collect()
    }
}

/// μ_CZ = 1 + ½ Σ_j (sign x_{2j} − sign y_{2j}).
pub fn cz_index(seq: &SignSequence) -> i64 {
    let sum: i64 = seq.entries().iter().map(|e| *e as i64).sum();
    1 + sum / 2
}
