use num_traits::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::coefficients::NovikovField;
use crate::complexes::{
    random_complex, random_lowering_homotopy, tensor_map, tensor_product, ComplexWire, FilteredChainComplex,
    GradedMap, GradedMapWire, RandomComplexConfig,
};
use crate::error::{Error, Result};
use crate::filtered_linalg::{FilteredSpace, SparseMatrix, SparseVector};
use crate::rational::Rational;
use crate::{check_schema, SCHEMA_VERSION};

use super::action::{CyclicActionData, RootAction};

pub const FIXTURE_SCHEMA: &str = "pcyclic.fixture";

#[derive(Clone, Debug, PartialEq)]
pub struct FixtureConfig {
    pub p: u32,
    /// Number of Z_{p²}-orbits (generators of the factor complex). Two or
    /// fewer leaves no room for a nonzero perturbation.
    pub size: usize,
    pub seed: u64,
    /// Entry density of the random homotopy M; 0 gives S = R_{p²}.
    pub density: f64,
    pub q: u32,
}

impl FixtureConfig {
    pub fn new(p: u32, size: usize, seed: u64) -> Self {
        FixtureConfig {
            p,
            size,
            seed,
            density: 0.5,
            q: 1,
        }
    }
}

/// A p-th power instance: C = (regular Z_{p²}) ⊗ D, S = R_{p²}(𝕀 + ∂M + M∂),
/// T = S^p, and the cone of T − ξ_p^q.
#[derive(Clone, Debug)]
pub struct PowerFixture {
    pub config: FixtureConfig,
    pub factor: FilteredChainComplex,
    pub data: CyclicActionData,
}

/// p² generators in degree 0 at level 0 with zero boundary, and the cyclic shift on them.
fn regular(field: &NovikovField) -> Result<(FilteredChainComplex, GradedMap)> {
    let p = field.prime;
    let n = (p * p) as usize;
    let space = FilteredSpace::new((0..n).map(|a| format!("r{a}")).collect(), vec![Rational::zero(); n], field.clone())?;
    let reg = FilteredChainComplex::new(field.clone(), 0, vec![space], Vec::new(), Rational::zero())?;
    let shift = SparseMatrix::from_columns(n, (0..n).map(|a| SparseVector::unit(n, (a + 1) % n, p)).collect());
    Ok((reg, GradedMap::new(0, 0, vec![shift])))
}

fn assemble(cfg: &FixtureConfig, factor: FilteredChainComplex, s_rot: GradedMap, s: GradedMap, c: &FilteredChainComplex) -> Result<PowerFixture> {
    let p = cfg.p;
    let t = s.pow(p, c);
    let r = s_rot.pow(p, c);
    let data = CyclicActionData::new(
        c,
        &t,
        &r,
        Some(RootAction {
            rotation: s_rot,
            map: s,
        }),
        cfg.q,
    )?;
    Ok(PowerFixture {
        config: cfg.clone(),
        factor,
        data,
    })
}

pub fn generate_power_p_fixture_with(cfg: &FixtureConfig) -> Result<PowerFixture> {
    if cfg.size == 0 {
        return Err(Error::Config("fixture size must be positive".into()));
    }
    let field = NovikovField::plain(cfg.p)?;
    let (reg, shift) = regular(&field)?;
    let mut last = None;
    let mut unperturbed = None;
    // redraw when a draw fails its checks, or when the homotopy happened to
    // cancel out and a perturbation was asked for
    for attempt in 0..8u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed.wrapping_add(attempt << 32));
        let rc = RandomComplexConfig {
            lo: 0,
            hi: 2,
            pairs: cfg.size / 2,
            singletons: cfg.size % 2,
            strictness: Rational::zero(),
            scramble: true,
        };
        let d = random_complex(&mut rng, &field, &rc)?.complex;
        let c = tensor_product(&reg, &d)?;
        let s_rot = tensor_map(&reg, &d, &shift, &GradedMap::identity(&d))?;
        let s = if cfg.density > 0.0 {
            let m = random_lowering_homotopy(&mut rng, &c, cfg.density);
            let n = GradedMap::homotopy_term(&c, &m);
            s_rot.compose(&GradedMap::identity(&c).add(&n)?, &c)
        } else {
            s_rot.clone()
        };
        match assemble(cfg, d, s_rot, s, &c) {
            Ok(f) if cfg.density > 0.0 && f.data.hbar()?.is_none() => {
                unperturbed.get_or_insert(f);
            }
            Ok(f) => return Ok(f),
            Err(e) => last = Some(e),
        }
    }
    match unperturbed {
        Some(f) => Ok(f),
        None => Err(last.expect("at least one attempt")),
    }
}

pub fn generate_power_p_fixture(p: u32, size: usize, seed: u64) -> Result<PowerFixture> {
    generate_power_p_fixture_with(&FixtureConfig::new(p, size, seed))
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FixtureWire {
    pub schema: String,
    pub version: u32,
    pub p: u32,
    pub size: usize,
    pub seed: u64,
    pub density: f64,
    pub xi_power: u32,
    pub factor: ComplexWire,
    pub source: ComplexWire,
    pub root_rotation: GradedMapWire,
    pub root_map: GradedMapWire,
}

impl FixtureWire {
    pub fn from_fixture(f: &PowerFixture) -> Result<Self> {
        let root = f.data.root.as_ref().expect("fixtures carry a root action");
        Ok(FixtureWire {
            schema: FIXTURE_SCHEMA.into(),
            version: SCHEMA_VERSION,
            p: f.config.p,
            size: f.config.size,
            seed: f.config.seed,
            density: f.config.density,
            xi_power: f.config.q,
            factor: ComplexWire::from_complex(&f.factor)?,
            source: ComplexWire::from_complex(f.data.source())?,
            root_rotation: GradedMapWire::from_map(&root.rotation)?,
            root_map: GradedMapWire::from_map(&root.map)?,
        })
    }

    /// Re-validates every invariant while rebuilding.
    pub fn to_fixture(&self) -> Result<PowerFixture> {
        check_schema(&self.schema, FIXTURE_SCHEMA, self.version)?;
        let cfg = FixtureConfig {
            p: self.p,
            size: self.size,
            seed: self.seed,
            density: self.density,
            q: self.xi_power,
        };
        let c = self.source.to_complex()?;
        if c.prime() != self.p {
            return Err(Error::Parse("fixture prime does not match its complex".into()));
        }
        let s_rot = self.root_rotation.to_map(&c, &c)?;
        let s = self.root_map.to_map(&c, &c)?;
        assemble(&cfg, self.factor.to_complex()?, s_rot, s, &c)
    }
}
