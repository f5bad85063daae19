//! Exact arithmetic in Q(ξ_p) and in Novikov fields over it.

mod cyclotomic;
mod gamma;
mod novikov;
mod roots;
mod wire;

pub use cyclotomic::{is_prime, CyclotomicRational};
pub use gamma::ExponentGroup;
pub use novikov::NovikovScalar;
pub use roots::{solve_perturbed_unity_root, RootOutcome, UnityTarget};
pub use wire::{scalar_from_json, scalar_to_json, ScalarWire};

use crate::error::{Error, Result};

/// The coefficient data of a Novikov field: the prime p of 𝒦 = Q(ξ_p) and Γ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NovikovField {
    pub prime: u32,
    pub gamma: ExponentGroup,
}

impl NovikovField {
    pub fn new(prime: u32, gamma: ExponentGroup) -> Result<Self> {
        if !is_prime(prime) {
            return Err(Error::Config(format!("{prime} is not prime")));
        }
        Ok(NovikovField { prime, gamma })
    }

    /// Field with trivial Γ: Novikov scalars reduce to elements of 𝒦.
    pub fn plain(prime: u32) -> Result<Self> {
        Self::new(prime, ExponentGroup::trivial())
    }

    pub fn one(&self) -> NovikovScalar {
        NovikovScalar::one(self.prime)
    }

    pub fn int(&self, n: i64) -> NovikovScalar {
        NovikovScalar::from_integer(self.prime, n)
    }

    pub fn xi_pow(&self, k: i64) -> CyclotomicRational {
        CyclotomicRational::xi_pow(self.prime, k)
    }

    /// Checks exponents against Γ and the coefficient field against p.
    pub fn check(&self, a: &NovikovScalar) -> Result<()> {
        check_in_group(&self.gamma, a)?;
        match a.prime() {
            Some(q) if q != self.prime => Err(Error::Config(format!(
                "coefficient from Q(ξ_{q}) used over Q(ξ_{})",
                self.prime
            ))),
            _ => Ok(()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Mul,
}

/// Checks that every exponent of `a` lies in `gamma`.
pub fn check_in_group(gamma: &ExponentGroup, a: &NovikovScalar) -> Result<()> {
    match a.terms().iter().find(|(e, _)| !gamma.contains(e)) {
        Some((e, _)) => Err(Error::Config(format!(
            "exponent {e} is not in the configured exponent group"
        ))),
        None => Ok(()),
    }
}

/// Field operation with the exponent group and coefficient field checked.
pub fn field_arith(
    gamma: &ExponentGroup,
    a: &NovikovScalar,
    b: &NovikovScalar,
    op: FieldOp,
) -> Result<NovikovScalar> {
    check_in_group(gamma, a)?;
    check_in_group(gamma, b)?;
    if let (Some(p), Some(q)) = (a.prime(), b.prime()) {
        if p != q {
            return Err(Error::Config(format!(
                "coefficients from Q(ξ_{p}) and Q(ξ_{q}) cannot be combined"
            )));
        }
    }
    Ok(match op {
        FieldOp::Add => a + b,
        FieldOp::Mul => a * b,
    })
}

/// ν as an `Option`, `None` meaning +∞.
pub fn valuation(a: &NovikovScalar) -> Option<crate::rational::Rational> {
    a.valuation().cloned()
}
