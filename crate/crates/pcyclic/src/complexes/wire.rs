use serde::{Deserialize, Serialize};

use crate::coefficients::{CyclotomicRational, ScalarWire};
use crate::error::{Error, Result};
use crate::filtered_linalg::{entries_from_wire, entries_to_wire, FieldWire, SpaceWire};
use crate::rational::{fmt_rational, parse_rational};
use crate::{check_schema, SCHEMA_VERSION};

use super::complex::FilteredChainComplex;
use super::cone::ConeComplex;
use super::graded::GradedMap;

pub const COMPLEX_SCHEMA: &str = "pcyclic.complex";
pub const CONE_SCHEMA: &str = "pcyclic.cone";

type Entries = Vec<(usize, usize, ScalarWire)>;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DegreeWire {
    pub degree: i64,
    pub space: SpaceWire,
    /// ∂ from this degree to the one below, as (row, column, scalar).
    #[serde(default)]
    pub boundary: Entries,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ComplexWire {
    pub schema: String,
    pub version: u32,
    pub field: FieldWire,
    pub strictness: String,
    pub degrees: Vec<DegreeWire>,
}

impl ComplexWire {
    pub fn from_complex(c: &FilteredChainComplex) -> Result<Self> {
        let degrees = c
            .degrees()
            .map(|k| {
                Ok(DegreeWire {
                    degree: k,
                    space: SpaceWire::from_space(&c.space(k)),
                    boundary: entries_to_wire(&c.boundary_matrix(k))?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(ComplexWire {
            schema: COMPLEX_SCHEMA.into(),
            version: SCHEMA_VERSION,
            field: FieldWire::from_field(c.field()),
            strictness: fmt_rational(c.strictness()),
            degrees,
        })
    }

    pub fn to_complex(&self) -> Result<FilteredChainComplex> {
        check_schema(&self.schema, COMPLEX_SCHEMA, self.version)?;
        let field = self.field.to_field()?;
        let Some(first) = self.degrees.first() else {
            return Err(Error::Parse("complex has no degrees".into()));
        };
        let lo = first.degree;
        for (i, d) in self.degrees.iter().enumerate() {
            if d.degree != lo + i as i64 {
                return Err(Error::Parse("degrees must be listed contiguously in increasing order".into()));
            }
        }
        let spaces = self
            .degrees
            .iter()
            .map(|d| d.space.to_space(&field))
            .collect::<Result<Vec<_>>>()?;
        if !self.degrees[0].boundary.is_empty() {
            return Err(Error::Parse("the lowest degree cannot have a boundary".into()));
        }
        let bds = self.degrees[1..]
            .iter()
            .enumerate()
            .map(|(i, d)| entries_from_wire(&d.boundary, spaces[i].dim(), spaces[i + 1].dim(), field.prime))
            .collect::<Result<Vec<_>>>()?;
        FilteredChainComplex::new(field, lo, spaces, bds, parse_rational(&self.strictness)?)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GradedMapWire {
    pub degree: i64,
    pub components: Vec<(i64, Entries)>,
}

impl GradedMapWire {
    pub fn from_map(m: &GradedMap) -> Result<Self> {
        let components = (m.lo()..=m.hi())
            .map(|k| Ok((k, entries_to_wire(m.at(k).expect("stored degree"))?)))
            .collect::<Result<Vec<_>>>()?;
        Ok(GradedMapWire {
            degree: m.degree(),
            components,
        })
    }

    pub fn to_map(&self, source: &FilteredChainComplex, target: &FilteredChainComplex) -> Result<GradedMap> {
        let p = source.prime();
        let mut comps = Vec::new();
        for k in source.degrees() {
            let entries = self.components.iter().find(|(d, _)| *d == k).map(|(_, e)| e.clone()).unwrap_or_default();
            comps.push(entries_from_wire(&entries, target.dim(k + self.degree), source.dim(k), p)?);
        }
        if let Some((d, _)) = self.components.iter().find(|(d, _)| !source.degrees().contains(d)) {
            return Err(Error::Parse(format!("map component for degree {d} outside the complex")));
        }
        Ok(GradedMap::new(self.degree, source.lo(), comps))
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ConeWire {
    pub schema: String,
    pub version: u32,
    pub source: ComplexWire,
    pub map: GradedMapWire,
    pub scalar_shift: Vec<String>,
    pub complex: ComplexWire,
}

impl ConeWire {
    pub fn from_cone(c: &ConeComplex) -> Result<Self> {
        Ok(ConeWire {
            schema: CONE_SCHEMA.into(),
            version: SCHEMA_VERSION,
            source: ComplexWire::from_complex(&c.source)?,
            map: GradedMapWire::from_map(&c.map)?,
            scalar_shift: c.scalar_shift.coords().iter().map(fmt_rational).collect(),
            complex: ComplexWire::from_complex(&c.complex)?,
        })
    }

    /// Rebuilds the cone from its provenance and checks it against the stored complex.
    pub fn to_cone(&self) -> Result<ConeComplex> {
        check_schema(&self.schema, CONE_SCHEMA, self.version)?;
        let source = self.source.to_complex()?;
        let map = self.map.to_map(&source, &source)?;
        let coords = self.scalar_shift.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>>>()?;
        let shift = CyclotomicRational::from_coords(source.prime(), &coords)?;
        let cone = super::cone::build_cone(&source, &map, &shift)?;
        if cone.complex != self.complex.to_complex()? {
            return Err(Error::Parse("stored cone does not match its provenance".into()));
        }
        Ok(cone)
    }
}
