use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::barcode::{barcode_detail, stability_probe_with, Barcode, BarcodeKind, CodomainMode, ProbeConfig, ProbeReport};
use crate::coefficients::{CyclotomicRational, ExponentGroup, NovikovScalar};
use crate::complexes::{build_cone, random_nonzero_cyclo, ConeComplex, FilteredChainComplex, GradedMap};
use crate::filtered_linalg::SparseMatrix;
use crate::cyclic::divisibility_invariant_of_lengths;
use crate::error::{Error, Result};
use crate::rational::{fmt_rational, Rational};
use crate::SCHEMA_VERSION;

use super::model::EggBeaterModel;

pub const EGG_REPORT_SCHEMA: &str = "pcyclic.eggbeater-report";

/// Optional perturbation T = R(𝕀 + ∂M + M∂) with M a random degree +1 map
/// with entries c·t^γ.
///
/// With Γ trivial every degree-(k+1) filtration exceeds every degree-k one, so
/// no nonzero lowering M exists; the perturbed cone therefore lives over
/// Γ = ⟨γ⟩ with γ = λ(2p + 2), larger than the whole filtration span, which
/// keeps endpoint classes apart.
#[derive(Clone, Debug, PartialEq)]
pub struct Perturbation {
    pub seed: u64,
    pub density: f64,
}

pub fn perturbation_step(model: &EggBeaterModel) -> Rational {
    &model.lambda * Rational::from_integer((2 * model.p as i64 + 2).into())
}

/// The complex the cone is built on: the model itself, or the model over
/// Γ = ⟨γ⟩ when perturbed.
pub fn egg_source(model: &EggBeaterModel, perturbation: Option<&Perturbation>) -> Result<FilteredChainComplex> {
    match perturbation {
        None => Ok(model.complex.clone()),
        Some(_) => model.over_gamma(ExponentGroup::cyclic(perturbation_step(model))?),
    }
}

/// The continuation stand-in on `egg_source`: the rotation, optionally perturbed.
pub fn egg_map(model: &EggBeaterModel, perturbation: Option<&Perturbation>) -> Result<GradedMap> {
    let Some(pert) = perturbation else {
        return Ok(model.rotation.clone());
    };
    let c = egg_source(model, perturbation)?;
    let p = model.p;
    let step = perturbation_step(model);
    let mut rng = ChaCha8Rng::seed_from_u64(pert.seed);
    let comps = c
        .degrees()
        .map(|k| {
            let (rows, cols) = (c.dim(k + 1), c.dim(k));
            let mut t = Vec::new();
            for j in 0..cols {
                for i in 0..rows {
                    if rng.gen_bool(pert.density) {
                        let coeff = random_nonzero_cyclo(&mut rng, p);
                        t.push((i, j, NovikovScalar::monomial(step.clone(), coeff)));
                    }
                }
            }
            SparseMatrix::from_triplets(rows, cols, t)
        })
        .collect();
    let m = GradedMap::new(1, c.lo(), comps);
    let n = GradedMap::homotopy_term(&c, &m);
    let id_plus_n = GradedMap::identity(&c).add(&n)?;
    Ok(model.rotation.compose(&id_plus_n, &c))
}

fn check_power(p: u32, q: u32) -> Result<()> {
    if q == 0 || q >= p {
        return Err(Error::Config(format!("xi power {q} must lie in 1..{p}")));
    }
    Ok(())
}

/// Cone(T − ξ_p^q 𝕀) on the egg-beater complex.
pub fn egg_cone(model: &EggBeaterModel, q: u32, perturbation: Option<&Perturbation>) -> Result<ConeComplex> {
    check_power(model.p, q)?;
    build_cone(
        &egg_source(model, perturbation)?,
        &egg_map(model, perturbation)?,
        &CyclotomicRational::xi_pow(model.p, q as i64),
    )
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeReport {
    pub degree: i64,
    pub verbose: usize,
    pub concise: usize,
    pub zero_length: usize,
    /// β_{m_k}: the shortest positive bar, when there is one.
    pub min_positive_length: Option<Rational>,
    /// 𝔬_k on this degree.
    pub divisibility: Rational,
}

#[derive(Clone, Debug)]
pub struct EggConeReport {
    pub p: u32,
    pub lambda: Rational,
    pub q: u32,
    pub per_degree: Vec<DegreeReport>,
    pub verbose_total: usize,
    pub concise_total: usize,
    pub zero_length_total: usize,
    /// Degrees k with p ∤ m_k.
    pub nondivisible_degrees: Vec<i64>,
    /// sup of 𝔬_k over all degrees.
    pub divisibility: Rational,
    /// The verbose barcode over all cone degrees.
    pub barcode: Barcode,
}

impl EggConeReport {
    pub fn degree(&self, k: i64) -> Option<&DegreeReport> {
        self.per_degree.iter().find(|d| d.degree == k)
    }
}

/// Barcodes of the cone in image mode with per-degree multiplicities.
pub fn cone_report(cone: &FilteredChainComplex, p: u32, lambda: &Rational, q: u32) -> Result<EggConeReport> {
    let mut per_degree = Vec::new();
    let mut all = Barcode::empty(BarcodeKind::Verbose, cone.field().gamma.clone());
    for k in cone.degrees() {
        let bc = barcode_detail(cone, k, CodomainMode::Image)?.barcode;
        let lengths = bc.concise().finite_lengths(k);
        per_degree.push(DegreeReport {
            degree: k,
            verbose: bc.len(),
            concise: bc.multiplicity(k) - bc.zero_length_count(),
            zero_length: bc.zero_length_count(),
            min_positive_length: lengths.last().cloned(),
            divisibility: divisibility_invariant_of_lengths(&lengths, p),
        });
        all = all.merge(&bc);
    }
    let nondivisible_degrees = per_degree
        .iter()
        .filter(|d| d.concise % p as usize != 0)
        .map(|d| d.degree)
        .collect();
    let divisibility = per_degree
        .iter()
        .map(|d| d.divisibility.clone())
        .max()
        .unwrap_or_else(Rational::zero);
    Ok(EggConeReport {
        p,
        lambda: lambda.clone(),
        q,
        verbose_total: per_degree.iter().map(|d| d.verbose).sum(),
        concise_total: per_degree.iter().map(|d| d.concise).sum(),
        zero_length_total: per_degree.iter().map(|d| d.zero_length).sum(),
        per_degree,
        nondivisible_degrees,
        divisibility,
        barcode: all,
    })
}

pub fn egg_cone_report(model: &EggBeaterModel, q: u32, perturbation: Option<&Perturbation>) -> Result<EggConeReport> {
    let cone = egg_cone(model, q, perturbation)?;
    cone_report(&cone.complex, model.p, &model.lambda, q)
}

/// Stability probe on the egg cone: filtrations of the model move by ≤ δ per
/// orbit, and the cone is rebuilt from the moved complex.
pub fn egg_stability_probe(model: &EggBeaterModel, q: u32, cfg: &ProbeConfig) -> Result<ProbeReport> {
    check_power(model.p, q)?;
    let shift = CyclotomicRational::xi_pow(model.p, q as i64);
    let rotation = model.rotation.clone();
    stability_probe_with(
        &model.complex,
        cfg,
        &|k, i| model.orbit_of(k, i) as usize,
        &|c| Ok(build_cone(c, &rotation, &shift)?.complex),
    )
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeReportWire {
    pub k: i64,
    pub verbose: usize,
    pub concise: usize,
    pub zero_length: usize,
    pub min_positive_length: Option<String>,
    pub divisibility: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TotalsWire {
    pub verbose: usize,
    pub concise: usize,
    pub zero_length: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EggReportWire {
    pub schema: String,
    pub version: u32,
    pub p: u32,
    pub lambda: String,
    pub xi_power: u32,
    pub per_degree: Vec<DegreeReportWire>,
    pub totals: TotalsWire,
    pub nondivisible_degrees: Vec<i64>,
    pub divisibility: String,
}

impl EggReportWire {
    pub fn from_report(r: &EggConeReport) -> Self {
        EggReportWire {
            schema: EGG_REPORT_SCHEMA.into(),
            version: SCHEMA_VERSION,
            p: r.p,
            lambda: fmt_rational(&r.lambda),
            xi_power: r.q,
            per_degree: r
                .per_degree
                .iter()
                .map(|d| DegreeReportWire {
                    k: d.degree,
                    verbose: d.verbose,
                    concise: d.concise,
                    zero_length: d.zero_length,
                    min_positive_length: d.min_positive_length.as_ref().map(fmt_rational),
                    divisibility: fmt_rational(&d.divisibility),
                })
                .collect(),
            totals: TotalsWire {
                verbose: r.verbose_total,
                concise: r.concise_total,
                zero_length: r.zero_length_total,
            },
            nondivisible_degrees: r.nondivisible_degrees.clone(),
            divisibility: fmt_rational(&r.divisibility),
        }
    }
}
