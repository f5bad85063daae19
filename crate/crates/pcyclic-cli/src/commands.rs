use std::fs;
use std::path::Path;

use pcyclic::barcode::{barcode_of, full_barcode, Barcode, BarcodeWire, CodomainMode};
use pcyclic::coefficients::CyclotomicRational;
use pcyclic::complexes::{build_cone, verify_complex, ComplexWire, ConeWire, GradedMapWire, COMPLEX_SCHEMA, CONE_SCHEMA};
use pcyclic::cyclic::{
    divisibility_invariant_all, generate_power_p_fixture_with, p_cyclic_svd, repair_to_group_action, strategy_barcode,
    verify_p_tuple_multiplicity, FilteredSvdStrategy, FixtureConfig, FixtureWire, PCyclicStrategy, PowerFixture,
    StrategyInput, FIXTURE_SCHEMA,
};
use pcyclic::eggbeater::{binomial_big, build_model, egg_cone_report, product_multiplicity, EggReportWire, Perturbation, EGG_REPORT_SCHEMA};
use pcyclic::error::Error;
use pcyclic::filtered_linalg::{svd, verify_svd, MapWire, SvdWire};
use pcyclic::rational::{parse_rational, Rational};
use pcyclic::SCHEMA_VERSION;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::args::{BarcodeArgs, Cli, Command, EggArgs, FixtureArgs, FixtureKind, Mode, VerifyArgs};
use crate::output::{emit, Artifact};

pub const PRODUCT_SCHEMA: &str = "pcyclic.product";
pub const FIXTURE_SET_SCHEMA: &str = "pcyclic.fixture-set";
pub const VERIFY_SCHEMA: &str = "pcyclic.verify-report";

#[derive(Debug)]
pub enum Failure {
    /// Bad arguments or unreadable input: exit 2.
    Usage(String),
    /// A computation or check failed: exit 1.
    Invalid(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(_) | Error::Config(_) => Failure::Usage(e.to_string()),
            other => Failure::Invalid(other.to_string()),
        }
    }
}

type Outcome<T> = Result<T, Failure>;

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Outcome<T> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn rational_arg(s: &str) -> Outcome<Rational> {
    parse_rational(s).map_err(Failure::from)
}

fn mode(m: Mode) -> CodomainMode {
    match m {
        Mode::Kernel => CodomainMode::Kernel,
        Mode::Image => CodomainMode::Image,
    }
}

pub fn run(cli: &Cli) -> Outcome<()> {
    match &cli.command {
        Command::Svd { input } => emit(cli, &svd_cmd(input)?),
        Command::Barcode(a) => emit(cli, &barcode_cmd(a)?),
        Command::Cone { input, map, xi_power } => emit(cli, &cone_cmd(input, map, *xi_power)?),
        Command::Eggbeater(a) => emit(cli, &egg_cmd(a)?),
        Command::Product { p, betti, chern } => emit(cli, &product_cmd(*p, betti, *chern)?),
        Command::Fixtures(a) => emit(cli, &fixtures_cmd(a)?),
        Command::Verify(a) => {
            let report = verify_cmd(a)?;
            emit(cli, &Artifact::json("verify", &report)?)?;
            if report.passed {
                Ok(())
            } else {
                let failed: Vec<&str> = report.checks.iter().filter(|c| !c.passed).map(|c| c.name.as_str()).collect();
                Err(Failure::Invalid(format!("{} check(s) failed: {}", failed.len(), failed.join(", "))))
            }
        }
    }
}

fn svd_cmd(input: &Path) -> Outcome<Artifact> {
    let map = read_json::<MapWire>(input)?.to_map()?;
    let res = svd(&map);
    let problems = verify_svd(&map, &res)?;
    if !problems.is_empty() {
        return Err(Failure::Invalid(problems.join("; ")));
    }
    Artifact::json("svd", &SvdWire::from_result(&res)?)
}

fn barcode_cmd(a: &BarcodeArgs) -> Outcome<Artifact> {
    let c = read_json::<ComplexWire>(&a.input)?.to_complex()?;
    let mut b = match a.degree {
        Some(k) => barcode_of(&c, k, mode(a.mode))?,
        None => full_barcode(&c, mode(a.mode))?,
    };
    if a.concise {
        b = b.concise();
    }
    Ok(Artifact::json("barcode", &BarcodeWire::from_barcode(&b))?.with_csv(b.to_csv()))
}

fn cone_cmd(input: &Path, map: &Path, q: u32) -> Outcome<Artifact> {
    let c = read_json::<ComplexWire>(input)?.to_complex()?;
    let t = read_json::<GradedMapWire>(map)?.to_map(&c, &c)?;
    let p = c.prime();
    if q == 0 || q >= p {
        return Err(Failure::Usage(format!("xi power {q} must lie in 1..{p}")));
    }
    let cone = build_cone(&c, &t, &CyclotomicRational::xi_pow(p, q as i64))?;
    Artifact::json("cone", &ConeWire::from_cone(&cone)?)
}

fn egg_cmd(a: &EggArgs) -> Outcome<Artifact> {
    let lambda = rational_arg(&a.lambda)?;
    let model = build_model(a.p, &lambda, a.seed).map_err(usage_on_domain)?;
    let pert = match a.perturb {
        Some(d) if !(0.0..=1.0).contains(&d) => return Err(Failure::Usage(format!("density {d} outside [0, 1]"))),
        Some(d) => Some(Perturbation { seed: a.seed, density: d }),
        None => None,
    };
    if a.xi_power == 0 || a.xi_power >= a.p {
        return Err(Failure::Usage(format!("xi power {} must lie in 1..{}", a.xi_power, a.p)));
    }
    let report = egg_cone_report(&model, a.xi_power, pert.as_ref())?;
    Ok(Artifact::json("eggbeater", &EggReportWire::from_report(&report))?.with_csv(report.barcode.to_csv()))
}

/// Bad numeric input to a generator is a usage error, not a failed check.
fn usage_on_domain(e: Error) -> Failure {
    match e {
        Error::Domain(m) => Failure::Usage(m),
        other => other.into(),
    }
}

#[derive(Serialize, Deserialize)]
struct ProductWire {
    schema: String,
    version: u32,
    p: u32,
    betti: Vec<u64>,
    chern: u32,
    multiplicity: String,
    residue: u32,
    divisible: bool,
}

fn product_cmd(p: u32, betti: &[u64], chern: u32) -> Outcome<Artifact> {
    let m = product_multiplicity(p, betti, chern).map_err(usage_on_domain)?;
    let wire = ProductWire {
        schema: PRODUCT_SCHEMA.into(),
        version: SCHEMA_VERSION,
        p,
        betti: betti.to_vec(),
        chern,
        multiplicity: m.m1.to_string(),
        residue: m.residue,
        divisible: m.divisible,
    };
    let csv = format!(
        "p,chern,multiplicity,residue,divisible\n{},{},{},{},{}\n",
        p, chern, wire.multiplicity, m.residue, m.divisible
    );
    Ok(Artifact::json("product", &wire)?.with_csv(csv))
}

#[derive(Serialize, Deserialize)]
struct FixtureSet {
    schema: String,
    version: u32,
    fixtures: Vec<FixtureWire>,
}

fn fixture_configs(p: u32, size: usize, seed: u64, count: u64, q: u32) -> Vec<FixtureConfig> {
    (0..count)
        .map(|i| {
            let mut cfg = FixtureConfig::new(p, size, seed.wrapping_add(i));
            cfg.q = q;
            cfg
        })
        .collect()
}

fn fixtures_cmd(a: &FixtureArgs) -> Outcome<Artifact> {
    let mut fixtures = Vec::new();
    for cfg in fixture_configs(a.p, a.size, a.seed, a.count, a.xi_power) {
        let f = generate_power_p_fixture_with(&cfg).map_err(usage_on_domain)?;
        fixtures.push(FixtureWire::from_fixture(&f)?);
    }
    Artifact::json(
        "fixtures",
        &FixtureSet {
            schema: FIXTURE_SET_SCHEMA.into(),
            version: SCHEMA_VERSION,
            fixtures,
        },
    )
}

#[derive(Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Serialize, Deserialize)]
pub struct VerifyReport {
    pub schema: String,
    pub version: u32,
    pub target: String,
    pub checks: Vec<Check>,
    pub passed: bool,
}

fn check(name: impl Into<String>, result: Result<bool, String>) -> Check {
    match result {
        Ok(passed) => Check {
            name: name.into(),
            passed,
            detail: None,
        },
        Err(detail) => Check {
            name: name.into(),
            passed: false,
            detail: Some(detail),
        },
    }
}

fn verify_cmd(a: &VerifyArgs) -> Outcome<VerifyReport> {
    let truncation = a.truncation.as_deref().map(rational_arg).transpose()?;
    let (target, checks) = match (&a.fixtures, &a.input) {
        (Some(FixtureKind::PowerP), _) => {
            let p = a.p.ok_or_else(|| Failure::Usage("--p is required".into()))?;
            let seed = a.seed.ok_or_else(|| Failure::Usage("--seed is required for generated fixtures".into()))?;
            let mut checks = Vec::new();
            for cfg in fixture_configs(p, a.size, seed, a.count, 1) {
                let f = generate_power_p_fixture_with(&cfg).map_err(usage_on_domain)?;
                checks.extend(fixture_checks(&f, truncation.as_ref()));
            }
            ("power-p".to_string(), checks)
        }
        (Some(FixtureKind::Eggbeater), _) => {
            let p = a.p.ok_or_else(|| Failure::Usage("--p is required".into()))?;
            let seed = a.seed.ok_or_else(|| Failure::Usage("--seed is required for the egg-beater model".into()))?;
            let lambda = rational_arg(a.lambda.as_deref().unwrap_or("1"))?;
            let model = build_model(p, &lambda, seed).map_err(usage_on_domain)?;
            let report = egg_cone_report(&model, 1, None)?;
            ("eggbeater".to_string(), egg_checks(&EggReportWire::from_report(&report)))
        }
        (None, Some(path)) => verify_input(path, truncation.as_ref())?,
        (None, None) => return Err(Failure::Usage("verify needs --fixtures or --input".into())),
    };
    let passed = checks.iter().all(|c| c.passed);
    Ok(VerifyReport {
        schema: VERIFY_SCHEMA.into(),
        version: SCHEMA_VERSION,
        target,
        checks,
        passed,
    })
}

fn parse<T: for<'de> Deserialize<'de>>(path: &Path, v: Value) -> Outcome<T> {
    serde_json::from_value(v).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn verify_input(path: &Path, truncation: Option<&Rational>) -> Outcome<(String, Vec<Check>)> {
    let value: Value = read_json(path)?;
    let schema = value
        .get("schema")
        .and_then(Value::as_str)
        .ok_or_else(|| Failure::Usage(format!("{}: missing schema", path.display())))?
        .to_string();
    let checks = match schema.as_str() {
        COMPLEX_SCHEMA => {
            let c = parse::<ComplexWire>(path, value)?.to_complex()?;
            let v = verify_complex(&c);
            vec![check(
                "complex",
                if v.is_empty() { Ok(true) } else { Err(format!("{v:?}")) },
            )]
        }
        CONE_SCHEMA => {
            let w: ConeWire = parse(path, value)?;
            vec![check("cone-provenance", w.to_cone().map(|_| true).map_err(|e| e.to_string()))]
        }
        MapWire::SCHEMA => {
            let m = parse::<MapWire>(path, value)?.to_map()?;
            let res = svd(&m);
            vec![check(
                "svd",
                verify_svd(&m, &res)
                    .map_err(|e| e.to_string())
                    .and_then(|v| if v.is_empty() { Ok(true) } else { Err(v.join("; ")) }),
            )]
        }
        FIXTURE_SCHEMA => {
            let w: FixtureWire = parse(path, value)?;
            match w.to_fixture() {
                Ok(f) => fixture_checks(&f, truncation),
                Err(e) => vec![check("fixture-invariants", Err(e.to_string()))],
            }
        }
        FIXTURE_SET_SCHEMA => {
            let set: FixtureSet = parse(path, value)?;
            let mut checks = Vec::new();
            for w in &set.fixtures {
                match w.to_fixture() {
                    Ok(f) => checks.extend(fixture_checks(&f, truncation)),
                    Err(e) => checks.push(check(format!("fixture-invariants/seed={}", w.seed), Err(e.to_string()))),
                }
            }
            checks
        }
        EGG_REPORT_SCHEMA => egg_checks(&parse::<EggReportWire>(path, value)?),
        other => return Err(Failure::Usage(format!("{}: unknown schema {other:?}", path.display()))),
    };
    Ok((schema, checks))
}

fn fixture_checks(f: &PowerFixture, truncation: Option<&Rational>) -> Vec<Check> {
    let p = f.config.p;
    let tag = format!("p={p}/seed={}", f.config.seed);
    let rep = match repair_to_group_action(&f.data, truncation) {
        Ok(r) => r,
        Err(e) => return vec![check(format!("repair/{tag}"), Err(e.to_string()))],
    };
    let cone = &f.data.cone.complex;
    let blocks = cone.degrees().try_fold(true, |ok, k| {
        p_cyclic_svd(&f.data, &rep, k).map(|r| ok && r.blocks_have_size(p as usize))
    });
    let input = StrategyInput {
        complex: cone,
        action: Some((&f.data, &rep)),
        mode: CodomainMode::Kernel,
    };
    let plain: Result<Barcode, Error> = strategy_barcode(&FilteredSvdStrategy, &input);
    let cyclic = strategy_barcode(&PCyclicStrategy, &input);
    let mut out = vec![check(format!("p-tuple-blocks/{tag}"), blocks.map_err(|e| e.to_string()))];
    match (plain, cyclic) {
        (Ok(a), Ok(b)) => {
            out.push(check(
                format!("strategies-agree/{tag}"),
                Ok(a.concise().collapsed() == b.concise().collapsed()),
            ));
            out.push(check(format!("multiplicity-divisible/{tag}"), Ok(verify_p_tuple_multiplicity(&a, p))));
            let o = divisibility_invariant_all(&a, p);
            out.push(check(
                format!("divisibility-zero/{tag}"),
                if o == Rational::from_integer(0.into()) { Ok(true) } else { Err(format!("o = {o}")) },
            ));
        }
        (Err(e), _) | (_, Err(e)) => out.push(check(format!("barcode/{tag}"), Err(e.to_string()))),
    }
    out
}

fn egg_checks(r: &EggReportWire) -> Vec<Check> {
    let p = r.p as u64;
    let total = 1u64 << (2 * p);
    let mut checks = vec![
        check(
            "concise-total",
            if r.totals.concise as u64 == total { Ok(true) } else { Err(format!("{} ≠ {total}", r.totals.concise)) },
        ),
        check(
            "zero-length-total",
            if r.totals.zero_length as u64 == (p - 1) * total {
                Ok(true)
            } else {
                Err(format!("{} ≠ {}", r.totals.zero_length, (p - 1) * total))
            },
        ),
    ];
    let p_i = p as i64;
    let per_degree_ok = (-p_i + 1..=p_i + 1).all(|k| {
        let expected = binomial_big(2 * p, (k + p_i - 1) as u64) * p;
        let got = r.per_degree.iter().find(|d| d.k == k).map_or(0, |d| d.verbose);
        expected == got.into()
    });
    checks.push(check("per-degree-verbose", Ok(per_degree_ok)));
    checks
}
