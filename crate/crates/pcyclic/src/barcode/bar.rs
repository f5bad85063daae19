use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use crate::coefficients::ExponentGroup;
use crate::rational::{fmt_rational, Rational};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BarLength {
    Finite(Rational),
    Infinite,
}

impl BarLength {
    pub fn finite(&self) -> Option<&Rational> {
        match self {
            BarLength::Finite(l) => Some(l),
            BarLength::Infinite => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.finite().map_or(false, |l| l.is_zero())
    }
}

impl fmt::Display for BarLength {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BarLength::Finite(l) => write!(f, "{}", fmt_rational(l)),
            BarLength::Infinite => write!(f, "inf"),
        }
    }
}

/// One bar: left endpoint modulo Γ, length, degree.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Bar {
    pub degree: i64,
    pub endpoint: Rational,
    pub length: BarLength,
}

impl Bar {
    pub fn finite(degree: i64, endpoint: Rational, length: Rational) -> Self {
        Bar {
            degree,
            endpoint,
            length: BarLength::Finite(length),
        }
    }

    pub fn infinite(degree: i64, endpoint: Rational) -> Self {
        Bar {
            degree,
            endpoint,
            length: BarLength::Infinite,
        }
    }
}

/// Longest first, then endpoint, then degree.
fn bar_order(a: &Bar, b: &Bar) -> Ordering {
    b.length
        .cmp(&a.length)
        .then_with(|| a.endpoint.cmp(&b.endpoint))
        .then_with(|| a.degree.cmp(&b.degree))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BarcodeKind {
    Verbose,
    Concise,
}

impl BarcodeKind {
    pub fn name(self) -> &'static str {
        match self {
            BarcodeKind::Verbose => "verbose",
            BarcodeKind::Concise => "concise",
        }
    }
}

/// A multiset of bars kept in canonical order, endpoints reduced modulo Γ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Barcode {
    kind: BarcodeKind,
    gamma: ExponentGroup,
    bars: Vec<Bar>,
}

impl Barcode {
    pub fn new(kind: BarcodeKind, gamma: ExponentGroup, bars: Vec<Bar>) -> Self {
        let mut bars: Vec<Bar> = bars
            .into_iter()
            .filter(|b| kind == BarcodeKind::Verbose || !b.length.is_zero())
            .map(|b| Bar {
                endpoint: gamma.class_rep(&b.endpoint),
                ..b
            })
            .collect();
        bars.sort_by(bar_order);
        Barcode { kind, gamma, bars }
    }

    pub fn empty(kind: BarcodeKind, gamma: ExponentGroup) -> Self {
        Barcode::new(kind, gamma, Vec::new())
    }

    pub fn kind(&self) -> BarcodeKind {
        self.kind
    }

    pub fn gamma(&self) -> &ExponentGroup {
        &self.gamma
    }

    pub fn bars(&self) -> &[Bar] {
        &self.bars
    }

    pub fn len(&self) -> usize {
        self.bars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bars.is_empty()
    }

    /// Drops the zero-length bars.
    pub fn concise(&self) -> Barcode {
        Barcode::new(BarcodeKind::Concise, self.gamma.clone(), self.bars.clone())
    }

    pub fn merge(&self, other: &Barcode) -> Barcode {
        let kind = if self.kind == BarcodeKind::Concise && other.kind == BarcodeKind::Concise {
            BarcodeKind::Concise
        } else {
            BarcodeKind::Verbose
        };
        let mut bars = self.bars.clone();
        bars.extend(other.bars.iter().cloned());
        Barcode::new(kind, self.gamma.clone(), bars)
    }

    pub fn at_degree(&self, k: i64) -> Barcode {
        Barcode::new(self.kind, self.gamma.clone(), self.bars.iter().filter(|b| b.degree == k).cloned().collect())
    }

    pub fn degrees(&self) -> Vec<i64> {
        let mut d: Vec<i64> = self.bars.iter().map(|b| b.degree).collect();
        d.sort_unstable();
        d.dedup();
        d
    }

    pub fn multiplicity(&self, k: i64) -> usize {
        self.bars.iter().filter(|b| b.degree == k).count()
    }

    pub fn zero_length_count(&self) -> usize {
        self.bars.iter().filter(|b| b.length.is_zero()).count()
    }

    pub fn infinite_count(&self) -> usize {
        self.bars.iter().filter(|b| b.length == BarLength::Infinite).count()
    }

    /// Finite lengths at degree k, longest first.
    pub fn finite_lengths(&self, k: i64) -> Vec<Rational> {
        self.bars
            .iter()
            .filter(|b| b.degree == k)
            .filter_map(|b| b.length.finite().cloned())
            .collect()
    }

    /// Smallest positive finite length, if any.
    pub fn min_positive_length(&self) -> Option<Rational> {
        self.bars
            .iter()
            .filter_map(|b| b.length.finite())
            .filter(|l| !l.is_zero())
            .min()
            .cloned()
    }

    /// Rows (degree, endpoint, length, multiplicity) with equal bars collapsed.
    pub fn collapsed(&self) -> Vec<(Bar, usize)> {
        let mut counts: BTreeMap<(i64, Rational, BarLength), usize> = BTreeMap::new();
        for b in &self.bars {
            *counts.entry((b.degree, b.endpoint.clone(), b.length.clone())).or_default() += 1;
        }
        let mut rows: Vec<(Bar, usize)> = counts
            .into_iter()
            .map(|((degree, endpoint, length), m)| {
                (
                    Bar {
                        degree,
                        endpoint,
                        length,
                    },
                    m,
                )
            })
            .collect();
        rows.sort_by(|a, b| bar_order(&a.0, &b.0));
        rows
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("degree,endpoint_num,endpoint_den,length,multiplicity\n");
        for (b, m) in self.collapsed() {
            out.push_str(&format!(
                "{},{},{},{},{}\n",
                b.degree,
                b.endpoint.numer(),
                b.endpoint.denom(),
                b.length,
                m
            ));
        }
        out
    }
}
