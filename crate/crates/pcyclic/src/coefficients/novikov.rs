use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::cyclotomic::CyclotomicRational;
use crate::error::{Error, Result};
use crate::rational::Rational;

/// A finite Novikov series Σ c_g t^g with an optional truncation order.
///
/// When `truncation` is `Some(T)` only the coefficients at exponents below `T`
/// are meaningful and no term at or above `T` is stored.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct NovikovScalar {
    terms: Vec<(Rational, CyclotomicRational)>,
    truncation: Option<Rational>,
}

fn min_opt(a: Option<Rational>, b: Option<Rational>) -> Option<Rational> {
    match (a, b) {
        (Some(x), Some(y)) => Some(if x <= y { x } else { y }),
        (x, None) => x,
        (None, y) => y,
    }
}

impl NovikovScalar {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one(prime: u32) -> Self {
        Self::constant(CyclotomicRational::one(prime))
    }

    pub fn from_integer(prime: u32, n: i64) -> Self {
        Self::constant(CyclotomicRational::from_integer(prime, n))
    }

    pub fn constant(c: CyclotomicRational) -> Self {
        Self::monomial(Rational::zero(), c)
    }

    /// The monomial c·t^exp.
    pub fn monomial(exp: Rational, c: CyclotomicRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        NovikovScalar {
            terms: vec![(exp, c)],
            truncation: None,
        }
    }

    /// Normalizes arbitrary terms: merges equal exponents, sorts, drops zeros
    /// and anything at or beyond the truncation order.
    pub fn from_terms(
        terms: impl IntoIterator<Item = (Rational, CyclotomicRational)>,
        truncation: Option<Rational>,
    ) -> Self {
        let mut map: BTreeMap<Rational, CyclotomicRational> = BTreeMap::new();
        for (e, c) in terms {
            match map.get_mut(&e) {
                Some(acc) => *acc = &*acc + &c,
                None => {
                    map.insert(e, c);
                }
            }
        }
        let terms = map
            .into_iter()
            .filter(|(e, c)| !c.is_zero() && truncation.as_ref().map_or(true, |t| e < t))
            .collect();
        NovikovScalar { terms, truncation }
    }

    fn from_sorted(mut terms: Vec<(Rational, CyclotomicRational)>, truncation: Option<Rational>) -> Self {
        if let Some(t) = &truncation {
            terms.retain(|(e, _)| e < t);
        }
        NovikovScalar { terms, truncation }
    }

    pub fn terms(&self) -> &[(Rational, CyclotomicRational)] {
        &self.terms
    }

    pub fn truncation(&self) -> Option<&Rational> {
        self.truncation.as_ref()
    }

    pub fn is_exact(&self) -> bool {
        self.truncation.is_none()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn prime(&self) -> Option<u32> {
        self.terms.first().map(|(_, c)| c.prime())
    }

    /// ν: the least exponent, or `None` standing for +∞.
    pub fn valuation(&self) -> Option<&Rational> {
        self.terms.first().map(|(e, _)| e)
    }

    pub fn leading(&self) -> Option<&(Rational, CyclotomicRational)> {
        self.terms.first()
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1 && self.truncation.is_none()
    }

    pub fn coeff_at(&self, exp: &Rational) -> Option<&CyclotomicRational> {
        self.terms
            .binary_search_by(|(e, _)| e.cmp(exp))
            .ok()
            .map(|i| &self.terms[i].1)
    }

    /// A lower bound for the valuation that accounts for truncation.
    fn valuation_floor(&self) -> Option<Rational> {
        match (self.valuation(), &self.truncation) {
            (Some(v), _) => Some(v.clone()),
            (None, t) => t.clone(),
        }
    }

    pub fn with_truncation(&self, order: &Rational) -> Self {
        let t = min_opt(self.truncation.clone(), Some(order.clone()));
        Self::from_sorted(self.terms.clone(), t)
    }

    pub fn scale(&self, c: &CyclotomicRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        NovikovScalar {
            terms: self.terms.iter().map(|(e, a)| (e.clone(), a * c)).collect(),
            truncation: self.truncation.clone(),
        }
    }

    /// Multiplication by the monomial c·t^exp.
    pub fn mul_monomial(&self, exp: &Rational, c: &CyclotomicRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        NovikovScalar {
            terms: self
                .terms
                .iter()
                .map(|(e, a)| (e + exp, a * c))
                .collect(),
            truncation: self.truncation.as_ref().map(|t| t + exp),
        }
    }

    /// Exact division; succeeds when the divisor is a nonzero monomial.
    pub fn div_exact(&self, divisor: &NovikovScalar) -> Result<Self> {
        if divisor.is_zero() {
            return Err(Error::Domain("division by zero".into()));
        }
        if divisor.terms.len() != 1 {
            return Err(Error::Inexact(
                "division by a non-monomial needs a truncation order".into(),
            ));
        }
        let (e, c) = &divisor.terms[0];
        let inv = c.inv().expect("nonzero coefficient");
        let mut out = self.mul_monomial(&-e, &inv);
        if let Some(td) = &divisor.truncation {
            // a/b with b known below td: error term has valuation td - 2ν(b) + ν(a).
            let bound = self
                .valuation_floor()
                .map(|va| va + td - e - e);
            out.truncation = min_opt(out.truncation, bound);
            out = Self::from_sorted(out.terms, out.truncation);
        }
        Ok(out)
    }

    /// Inverse up to `order`: a·result = 1 with every coefficient below `order`
    /// exact. Monomials invert exactly and carry no truncation.
    pub fn invert(&self, order: &Rational) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::Domain("cannot invert zero".into()));
        }
        if self.is_monomial() {
            return self.div_exact_of_one();
        }
        let (g, c) = self.terms[0].clone();
        let cinv = c.inv().expect("nonzero coefficient");
        // self = c t^g (1 + u) with ν(u) > 0
        let normalized = self.mul_monomial(&-&g, &cinv);
        let prime = c.prime();
        let one = Self::one(prime);
        let minus_u = &one - &normalized;
        // relative precision `order` so that a·a^{-1} = 1 + O(t^order)
        let target = order.clone();
        let mut sum = one.with_truncation(&target);
        let mut power = one.with_truncation(&target);
        if let Some(step) = minus_u.valuation_floor().filter(|v| v.is_positive()) {
            let mut reach = step.clone();
            while reach < target {
                power = (&power * &minus_u).with_truncation(&target);
                sum = &sum + &power;
                reach += &step;
            }
        }
        let mut out = sum.mul_monomial(&-&g, &cinv);
        let mut t = Some(order - &g);
        if let Some(ta) = &self.truncation {
            t = min_opt(t, Some(ta - &g - &g));
        }
        out.truncation = min_opt(out.truncation, t);
        Ok(Self::from_sorted(out.terms, out.truncation))
    }

    fn div_exact_of_one(&self) -> Result<Self> {
        let prime = self.prime().expect("nonzero");
        Self::one(prime).div_exact(self)
    }

    pub fn pow(&self, e: u32) -> Self {
        let prime = match self.prime() {
            Some(p) => p,
            None => {
                return if e == 0 {
                    panic!("0^0 with unknown coefficient field")
                } else {
                    self.clone()
                }
            }
        };
        let mut acc = Self::one(prime);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Coefficient at exponent `exp`, or zero.
    pub fn coeff_or_zero(&self, exp: &Rational, prime: u32) -> CyclotomicRational {
        self.coeff_at(exp)
            .cloned()
            .unwrap_or_else(|| CyclotomicRational::zero(prime))
    }
}

impl<'a> Add for &'a NovikovScalar {
    type Output = NovikovScalar;
    fn add(self, rhs: Self) -> NovikovScalar {
        let truncation = min_opt(self.truncation.clone(), rhs.truncation.clone());
        if rhs.terms.is_empty() {
            return NovikovScalar::from_sorted(self.terms.clone(), truncation);
        }
        if self.terms.is_empty() {
            return NovikovScalar::from_sorted(rhs.terms.clone(), truncation);
        }
        let mut out = Vec::with_capacity(self.terms.len() + rhs.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < rhs.terms.len() {
            let (ea, ca) = &self.terms[i];
            let (eb, cb) = &rhs.terms[j];
            match ea.cmp(eb) {
                Ordering::Less => {
                    out.push((ea.clone(), ca.clone()));
                    i += 1;
                }
                Ordering::Greater => {
                    out.push((eb.clone(), cb.clone()));
                    j += 1;
                }
                Ordering::Equal => {
                    let s = ca + cb;
                    if !s.is_zero() {
                        out.push((ea.clone(), s));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(self.terms[i..].iter().cloned());
        out.extend(rhs.terms[j..].iter().cloned());
        NovikovScalar::from_sorted(out, truncation)
    }
}

impl<'a> Neg for &'a NovikovScalar {
    type Output = NovikovScalar;
    fn neg(self) -> NovikovScalar {
        NovikovScalar {
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
            truncation: self.truncation.clone(),
        }
    }
}

impl<'a> Sub for &'a NovikovScalar {
    type Output = NovikovScalar;
    fn sub(self, rhs: Self) -> NovikovScalar {
        self + &(-rhs)
    }
}

impl<'a> Mul for &'a NovikovScalar {
    type Output = NovikovScalar;
    fn mul(self, rhs: Self) -> NovikovScalar {
        let truncation = min_opt(
            self.truncation
                .as_ref()
                .and_then(|t| rhs.valuation_floor().map(|v| t + v)),
            rhs.truncation
                .as_ref()
                .and_then(|t| self.valuation_floor().map(|v| t + v)),
        );
        if self.terms.is_empty() || rhs.terms.is_empty() {
            return NovikovScalar {
                terms: Vec::new(),
                truncation,
            };
        }
        if rhs.terms.len() == 1 {
            let (e, c) = &rhs.terms[0];
            let mut out = self.mul_monomial(e, c);
            out.truncation = truncation;
            return NovikovScalar::from_sorted(out.terms, out.truncation);
        }
        if self.terms.len() == 1 {
            let (e, c) = &self.terms[0];
            let mut out = rhs.mul_monomial(e, c);
            out.truncation = truncation;
            return NovikovScalar::from_sorted(out.terms, out.truncation);
        }
        let products = self.terms.iter().flat_map(|(ea, ca)| {
            rhs.terms.iter().map(move |(eb, cb)| (ea + eb, ca * cb))
        });
        NovikovScalar::from_terms(products.collect::<Vec<_>>(), truncation)
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for NovikovScalar {
            type Output = NovikovScalar;
            fn $m(self, rhs: Self) -> NovikovScalar {
                (&self).$m(&rhs)
            }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

impl Neg for NovikovScalar {
    type Output = NovikovScalar;
    fn neg(self) -> NovikovScalar {
        -&self
    }
}

impl From<CyclotomicRational> for NovikovScalar {
    fn from(c: CyclotomicRational) -> Self {
        NovikovScalar::constant(c)
    }
}

impl fmt::Display for NovikovScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            write!(f, "0")?;
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if e.is_zero() {
                write!(f, "({c})")?;
            } else if e.is_one() {
                write!(f, "({c})t")?;
            } else {
                write!(f, "({c})t^{e}")?;
            }
        }
        if let Some(t) = &self.truncation {
            write!(f, " + O(t^{t})")?;
        }
        Ok(())
    }
}

impl fmt::Debug for NovikovScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
