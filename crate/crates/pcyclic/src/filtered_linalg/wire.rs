use serde::{Deserialize, Serialize};

use crate::coefficients::{scalar_from_json, scalar_to_json, ExponentGroup, NovikovField, ScalarWire};
use crate::error::{Error, Result};
use crate::rational::{fmt_rational, parse_rational};

use super::map::FilteredMap;
use super::matrix::SparseMatrix;
use super::space::FilteredSpace;
use super::svd::{Pivot, SvdResult};
use super::vector::SparseVector;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldWire {
    pub prime: u32,
    pub gamma: Vec<String>,
}

impl FieldWire {
    pub fn from_field(f: &NovikovField) -> Self {
        FieldWire {
            prime: f.prime,
            gamma: f.gamma.generators().iter().map(fmt_rational).collect(),
        }
    }

    pub fn to_field(&self) -> Result<NovikovField> {
        let gens = self.gamma.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>>>()?;
        NovikovField::new(self.prime, ExponentGroup::new(gens)?).map_err(|e| Error::Parse(e.to_string()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpaceWire {
    pub labels: Vec<String>,
    pub filtrations: Vec<String>,
}

impl SpaceWire {
    pub fn from_space(s: &FilteredSpace) -> Self {
        SpaceWire {
            labels: s.labels().to_vec(),
            filtrations: s.filtrations().iter().map(fmt_rational).collect(),
        }
    }

    pub fn to_space(&self, field: &NovikovField) -> Result<FilteredSpace> {
        let f = self.filtrations.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>>>()?;
        FilteredSpace::new(self.labels.clone(), f, field.clone())
    }
}

pub type VectorWire = Vec<(usize, ScalarWire)>;

pub fn vector_to_wire(v: &SparseVector) -> Result<VectorWire> {
    v.entries().iter().map(|(i, s)| Ok((*i, scalar_to_json(s)?))).collect()
}

pub fn vector_from_wire(w: &VectorWire, dim: usize, prime: u32) -> Result<SparseVector> {
    let mut entries = Vec::with_capacity(w.len());
    for (i, s) in w {
        if *i >= dim {
            return Err(Error::Parse(format!("coordinate {i} out of range {dim}")));
        }
        entries.push((*i, scalar_from_json(s, prime)?));
    }
    Ok(SparseVector::from_entries(dim, entries))
}

pub fn entries_to_wire(m: &SparseMatrix) -> Result<Vec<(usize, usize, ScalarWire)>> {
    m.triplets().map(|(i, j, s)| Ok((i, j, scalar_to_json(s)?))).collect()
}

pub fn entries_from_wire(
    w: &[(usize, usize, ScalarWire)],
    rows: usize,
    cols: usize,
    prime: u32,
) -> Result<SparseMatrix> {
    let mut t = Vec::with_capacity(w.len());
    for (i, j, s) in w {
        if *i >= rows || *j >= cols {
            return Err(Error::Parse(format!("entry ({i},{j}) outside a {rows}x{cols} matrix")));
        }
        t.push((*i, *j, scalar_from_json(s, prime)?));
    }
    Ok(SparseMatrix::from_triplets(rows, cols, t))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapWire {
    pub schema: String,
    pub version: u32,
    pub field: FieldWire,
    pub domain: SpaceWire,
    pub codomain: SpaceWire,
    pub entries: Vec<(usize, usize, ScalarWire)>,
}

impl MapWire {
    pub const SCHEMA: &'static str = "pcyclic.filtered-map";

    pub fn from_map(m: &FilteredMap) -> Result<Self> {
        Ok(MapWire {
            schema: Self::SCHEMA.into(),
            version: crate::SCHEMA_VERSION,
            field: FieldWire::from_field(m.domain().field()),
            domain: SpaceWire::from_space(m.domain()),
            codomain: SpaceWire::from_space(m.codomain()),
            entries: entries_to_wire(m.matrix())?,
        })
    }

    pub fn to_map(&self) -> Result<FilteredMap> {
        crate::check_schema(&self.schema, Self::SCHEMA, self.version)?;
        let field = self.field.to_field()?;
        let dom = self.domain.to_space(&field)?;
        let cod = self.codomain.to_space(&field)?;
        let m = entries_from_wire(&self.entries, cod.dim(), dom.dim(), field.prime)?;
        FilteredMap::new(dom, cod, m)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SvdWire {
    pub schema: String,
    pub version: u32,
    pub rank: usize,
    pub shifts: Vec<String>,
    pub domain_basis: Vec<VectorWire>,
    pub codomain_basis: Vec<VectorWire>,
    pub domain_origin: Vec<usize>,
    pub pivots: Vec<(usize, usize, String)>,
}

impl SvdWire {
    pub const SCHEMA: &'static str = "pcyclic.svd";

    pub fn from_result(r: &SvdResult) -> Result<Self> {
        Ok(SvdWire {
            schema: Self::SCHEMA.into(),
            version: crate::SCHEMA_VERSION,
            rank: r.rank,
            shifts: r.shifts.iter().map(fmt_rational).collect(),
            domain_basis: r.domain_basis.iter().map(vector_to_wire).collect::<Result<_>>()?,
            codomain_basis: r.codomain_basis.iter().map(vector_to_wire).collect::<Result<_>>()?,
            domain_origin: r.domain_origin.clone(),
            pivots: r
                .pivots
                .iter()
                .map(|p| (p.row, p.col, fmt_rational(&p.shift)))
                .collect(),
        })
    }

    pub fn to_result(&self, map: &FilteredMap) -> Result<SvdResult> {
        crate::check_schema(&self.schema, Self::SCHEMA, self.version)?;
        let p = map.domain().prime();
        let n = map.domain().dim();
        let m = map.codomain().dim();
        Ok(SvdResult {
            rank: self.rank,
            shifts: self.shifts.iter().map(|s| parse_rational(s)).collect::<Result<_>>()?,
            domain_basis: self
                .domain_basis
                .iter()
                .map(|v| vector_from_wire(v, n, p))
                .collect::<Result<_>>()?,
            codomain_basis: self
                .codomain_basis
                .iter()
                .map(|v| vector_from_wire(v, m, p))
                .collect::<Result<_>>()?,
            domain_origin: self.domain_origin.clone(),
            pivots: self
                .pivots
                .iter()
                .map(|(row, col, s)| {
                    Ok(Pivot {
                        row: *row,
                        col: *col,
                        shift: parse_rational(s)?,
                    })
                })
                .collect::<Result<_>>()?,
        })
    }
}
