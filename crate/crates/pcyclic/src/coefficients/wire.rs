use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use super::cyclotomic::{is_prime, CyclotomicRational};
use super::novikov::NovikovScalar;
use crate::error::{Error, Result};
use crate::rational::{fmt_rational, parse_rational, Rational};

/// JSON shape of a scalar: exponents as integer pairs, coefficients as
/// `"num/den"` coordinate strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScalarWire {
    pub terms: Vec<(i64, i64, Vec<String>)>,
    pub truncation: Option<(i64, i64)>,
}

fn small(r: &Rational) -> Result<(i64, i64)> {
    match (r.numer().to_i64(), r.denom().to_i64()) {
        (Some(n), Some(d)) => Ok((n, d)),
        _ => Err(Error::Parse(format!("exponent {r} exceeds the i64 wire range"))),
    }
}

fn pair(n: i64, d: i64) -> Result<Rational> {
    if d == 0 {
        return Err(Error::Parse("zero denominator in exponent".into()));
    }
    Ok(Rational::new(BigInt::from(n), BigInt::from(d)))
}

pub fn scalar_to_json(a: &NovikovScalar) -> Result<ScalarWire> {
    let terms = a
        .terms()
        .iter()
        .map(|(e, c)| {
            let (n, d) = small(e)?;
            Ok((n, d, c.coords().iter().map(fmt_rational).collect()))
        })
        .collect::<Result<Vec<_>>>()?;
    let truncation = a.truncation().map(small).transpose()?;
    Ok(ScalarWire { terms, truncation })
}

/// Parses a scalar; every coefficient must live in Q(ξ_prime).
pub fn scalar_from_json(w: &ScalarWire, prime: u32) -> Result<NovikovScalar> {
    if !is_prime(prime) {
        return Err(Error::Parse(format!("{prime} is not prime")));
    }
    let mut terms = Vec::with_capacity(w.terms.len());
    for (n, d, coords) in &w.terms {
        if coords.len() + 1 != prime as usize {
            return Err(Error::Parse(format!(
                "coefficient has {} coordinates, expected {}",
                coords.len(),
                prime - 1
            )));
        }
        let coords = coords
            .iter()
            .map(|s| parse_rational(s))
            .collect::<Result<Vec<_>>>()?;
        terms.push((pair(*n, *d)?, CyclotomicRational::from_coords(prime, &coords)?));
    }
    let truncation = w.truncation.map(|(n, d)| pair(n, d)).transpose()?;
    Ok(NovikovScalar::from_terms(terms, truncation))
}
