use num_traits::{One, Zero};

use crate::complexes::{FilteredChainComplex, GradedMap};
use crate::error::{Error, Result};
use crate::filtered_linalg::{FilteredMap, FilteredSpace, SparseMatrix};
use crate::rational::Rational;

use super::action::{rational_scalar, strictly_lowering, CyclicActionData};

/// Exact group actions T' (and S') recovered from T (and S).
#[derive(Clone, Debug)]
pub struct RepairedAction {
    pub t: GradedMap,
    pub s: Option<GradedMap>,
    /// False when a series was cut at the truncation order.
    pub exact: bool,
}

/// Number of series terms allowed before giving up: the nilpotency bound when
/// Γ is trivial, otherwise enough terms to pass `order` at the given ħ.
fn term_budget(space: &FilteredSpace, hbar: Option<&Rational>, order: Option<&Rational>) -> Result<(usize, bool)> {
    if space.gamma().is_trivial() {
        let mut levels: Vec<&Rational> = space.filtrations().iter().collect();
        levels.sort();
        levels.dedup();
        return Ok((levels.len() + 1, true));
    }
    match (order, hbar) {
        (_, None) => Ok((1, true)),
        (Some(order), Some(h)) => {
            let n = (order / h).ceil().to_integer();
            Ok((usize::try_from(n).unwrap_or(0) + 1, false))
        }
        (None, Some(_)) => Err(Error::Inexact(
            "series over nontrivial Γ need a truncation order".into(),
        )),
    }
}

/// Σ_n C(α, n) Eⁿ for a strictly lowering E. Returns the sum and whether it
/// terminated by nilpotency.
pub fn binomial_series(
    space: &FilteredSpace,
    e: &SparseMatrix,
    alpha: &Rational,
    order: Option<&Rational>,
) -> Result<(SparseMatrix, bool)> {
    let p = space.prime();
    let n = space.dim();
    let emap = FilteredMap::new(space.clone(), space.clone(), e.clone())?;
    let hbar = emap.max_shift().map(|s| -s);
    if hbar.as_ref().map_or(false, |h| *h <= Rational::zero()) {
        return Err(Error::Precondition("series argument does not strictly lower filtration".into()));
    }
    let (budget, promised) = term_budget(space, hbar.as_ref(), order)?;
    let mut sum = SparseMatrix::identity(n, p);
    let mut term = SparseMatrix::identity(n, p);
    let mut coeff = Rational::one();
    for k in 0..budget {
        term = term.mul(e);
        if term.is_zero() {
            return Ok((sum, true));
        }
        // C(α, k+1) = C(α, k)·(α − k)/(k + 1)
        coeff = coeff * (alpha - Rational::from_integer(k.into())) / Rational::from_integer((k + 1).into());
        sum = sum.add(&term.scale(&rational_scalar(p, &coeff)));
    }
    if promised {
        return Err(Error::Inexact(format!("series did not terminate within {budget} terms")));
    }
    Ok((sum, false))
}

/// Degree-wise T ∘ (T^m)^{α}-style correction: returns F ∘ (F^m)^{α} where
/// F^m = 𝕀 + E.
fn corrected(
    c: &FilteredChainComplex,
    f: &GradedMap,
    power: u32,
    alpha: &Rational,
    order: Option<&Rational>,
) -> Result<(GradedMap, bool)> {
    let fm = f.pow(power, c);
    let mut exact = true;
    let mut comps = Vec::new();
    for k in c.degrees() {
        let d = c.dim(k);
        let e = fm.at_or_zero(k, d, d).sub(&SparseMatrix::identity(d, c.prime()));
        let (s, ex) = binomial_series(&c.space(k), &e, alpha, order)?;
        exact &= ex;
        comps.push(f.at_or_zero(k, d, d).mul(&s));
    }
    Ok((GradedMap::new(0, c.lo(), comps), exact))
}

/// T' = T(𝕀 + E)^{−1/p} with T^p = 𝕀 + E, and S' = S(𝕀 + E)^{−1/p²}.
/// Then (T')^p = 𝕀 and (S')^p = T'.
pub fn repair_to_group_action(data: &CyclicActionData, order: Option<&Rational>) -> Result<RepairedAction> {
    let c = data.source();
    let p = data.prime() as i64;
    let t = data.t();
    let (t_prime, mut exact) = corrected(c, t, p as u32, &Rational::new((-1).into(), p.into()), order)?;
    let s_prime = match &data.root {
        None => None,
        Some(r) => {
            let (s, ex) = corrected(c, &r.map, (p * p) as u32, &Rational::new((-1).into(), (p * p).into()), order)?;
            exact &= ex;
            Some(s)
        }
    };
    let id = GradedMap::identity(c);
    let mut bad = Vec::new();
    if exact && t_prime.pow(p as u32, c) != id {
        bad.push("(T')^p ≠ 𝕀");
    }
    if !t_prime.is_chain_map(c, c) {
        bad.push("[T', ∂] ≠ 0");
    }
    if t_prime.compose(t, c) != t.compose(&t_prime, c) {
        bad.push("[T', T] ≠ 0");
    }
    if !strictly_lowering(c, &t_prime.sub(t)?)? {
        bad.push("T' − T does not strictly lower filtration");
    }
    if let Some(s) = &s_prime {
        if exact && s.pow(p as u32, c) != t_prime {
            bad.push("(S')^p ≠ T'");
        }
        if !s.is_chain_map(c, c) {
            bad.push("[S', ∂] ≠ 0");
        }
    }
    if !bad.is_empty() {
        return Err(Error::Verification(bad.join("; ")));
    }
    Ok(RepairedAction {
        t: t_prime,
        s: s_prime,
        exact,
    })
}

/// Inverse of A when A^n = 𝕀 − Q with Q strictly lowering:
/// A^{n−1}(𝕀 + Q + Q² + …).
pub fn invert_perturbed(a: &FilteredMap, n: u32, order: Option<&Rational>) -> Result<FilteredMap> {
    let space = a.domain();
    if a.codomain() != space {
        return Err(Error::Precondition("invert_perturbed needs an endomorphism".into()));
    }
    if n == 0 {
        return Err(Error::Config("exponent must be positive".into()));
    }
    let p = space.prime();
    let d = space.dim();
    let q = SparseMatrix::identity(d, p).sub(&a.matrix().pow(n, p));
    // Σ Q^k is the binomial series with α = −1 applied to E = −Q
    let (geom, exact) = binomial_series(space, &q.neg(), &Rational::from_integer((-1).into()), order)?;
    let inv = a.with_matrix(a.matrix().pow(n - 1, p).mul(&geom))?;
    if exact {
        let id = SparseMatrix::identity(d, p);
        if a.matrix().mul(inv.matrix()) != id || inv.matrix().mul(a.matrix()) != id {
            return Err(Error::Verification("series inverse is not a two-sided inverse".into()));
        }
    }
    Ok(inv)
}
