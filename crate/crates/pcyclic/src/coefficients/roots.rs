use num_traits::{Signed, Zero};

use super::cyclotomic::CyclotomicRational;
use super::novikov::NovikovScalar;
use crate::error::{Error, Result};
use crate::rational::Rational;

/// Right-hand constant of x^p = target + h(x).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum UnityTarget {
    One,
    /// ξ_p^q
    XiPower(i64),
}

#[derive(Clone, Debug, PartialEq)]
pub enum RootOutcome {
    Solved(NovikovScalar),
    Unsolvable,
}

/// Evaluates Σ h_i x^i, truncated at `order`.
fn eval_poly(h: &[NovikovScalar], x: &NovikovScalar, prime: u32, order: &Rational) -> NovikovScalar {
    let mut acc = NovikovScalar::zero().with_truncation(order);
    let mut power = NovikovScalar::one(prime).with_truncation(order);
    for (i, c) in h.iter().enumerate() {
        if i > 0 {
            power = (&power * x).with_truncation(order);
        }
        if !c.is_zero() {
            acc = &acc + &(c * &power).with_truncation(order);
        }
    }
    acc
}

fn pth_power(x: &NovikovScalar, prime: u32, order: &Rational) -> NovikovScalar {
    let mut acc = NovikovScalar::one(prime).with_truncation(order);
    for _ in 0..prime {
        acc = (&acc * x).with_truncation(order);
    }
    acc
}

/// Solves x^p = target + h(x) exponent by exponent.
///
/// `h` lists polynomial coefficients h_0, h_1, … (degree below p), each of
/// strictly positive valuation. `branch` selects the zero-level root ξ_p^branch
/// of the unperturbed equation; 0 is the canonical choice.
pub fn solve_perturbed_unity_root(
    prime: u32,
    h: &[NovikovScalar],
    target: UnityTarget,
    order: &Rational,
    branch: i64,
) -> Result<RootOutcome> {
    if h.len() > prime as usize {
        return Err(Error::Precondition(format!(
            "perturbation polynomial must have degree below {prime}"
        )));
    }
    for c in h {
        if let Some(v) = c.valuation() {
            if !v.is_positive() {
                return Err(Error::Precondition(format!(
                    "perturbation coefficient {c} has non-positive valuation"
                )));
            }
        }
    }
    if let UnityTarget::XiPower(q) = target {
        if q.rem_euclid(prime as i64) != 0 {
            // ξ_p^q has no p-th root in Q(ξ_p); no perturbation changes that
            // at the zero level.
            return Ok(RootOutcome::Unsolvable);
        }
    }
    let zeta = CyclotomicRational::xi_pow(prime, branch);
    let mut x = NovikovScalar::constant(zeta.clone());
    if h.iter().all(|c| c.is_zero()) {
        return Ok(RootOutcome::Solved(x));
    }
    let derivative = (&zeta.pow(prime as u64 - 1)).scale(&Rational::from_integer(prime.into()));
    let dinv = derivative.inv().expect("p is invertible in characteristic zero");
    x = x.with_truncation(order);
    let one = NovikovScalar::one(prime);
    for _ in 0..100_000 {
        let residual = &(&pth_power(&x, prime, order) - &one) - &eval_poly(h, &x, prime, order);
        let Some((g, c)) = residual.leading().cloned() else {
            return Ok(RootOutcome::Solved(x));
        };
        debug_assert!(!g.is_zero() || c.is_zero());
        let correction = NovikovScalar::monomial(g, &c * &dinv);
        x = (&x - &correction).with_truncation(order);
    }
    Err(Error::Inexact("root iteration did not settle".into()))
}
