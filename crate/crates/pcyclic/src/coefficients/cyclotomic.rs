//! The cyclotomic field Q(ξ_p), stored in the power basis 1, ξ, …, ξ^{p-2}.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::Rational;

pub fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// An element of Q(ξ_p) with a common denominator.
///
/// Canonical form: `den > 0` and the gcd of `den` with every numerator is 1,
/// so structural equality is field equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CyclotomicRational {
    prime: u32,
    num: Vec<BigInt>,
    den: BigInt,
}

impl CyclotomicRational {
    fn width(prime: u32) -> usize {
        (prime - 1) as usize
    }

    pub fn zero(prime: u32) -> Self {
        CyclotomicRational {
            prime,
            num: vec![BigInt::zero(); Self::width(prime)],
            den: BigInt::one(),
        }
    }

    pub fn one(prime: u32) -> Self {
        Self::from_integer(prime, 1)
    }

    pub fn from_integer(prime: u32, n: i64) -> Self {
        let mut z = Self::zero(prime);
        z.num[0] = BigInt::from(n);
        z
    }

    pub fn from_rational(prime: u32, r: &Rational) -> Self {
        let mut num = vec![BigInt::zero(); Self::width(prime)];
        num[0] = r.numer().clone();
        Self::from_parts(prime, num, r.denom().clone())
    }

    /// Builds a value from p-1 power-basis coordinates.
    pub fn from_coords(prime: u32, coords: &[Rational]) -> Result<Self> {
        if !is_prime(prime) {
            return Err(Error::Config(format!("{prime} is not prime")));
        }
        if coords.len() != Self::width(prime) {
            return Err(Error::Dimension {
                expected: Self::width(prime),
                got: coords.len(),
            });
        }
        let den = coords
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let num = coords
            .iter()
            .map(|c| c.numer() * (&den / c.denom()))
            .collect();
        Ok(Self::from_parts(prime, num, den))
    }

    /// ξ_p^k for any integer k.
    pub fn xi_pow(prime: u32, k: i64) -> Self {
        let p = prime as i64;
        let e = k.rem_euclid(p) as usize;
        let mut z = Self::zero(prime);
        if e < Self::width(prime) {
            z.num[e] = BigInt::one();
        } else {
            for c in z.num.iter_mut() {
                *c = BigInt::from(-1);
            }
        }
        z
    }

    pub fn xi(prime: u32) -> Self {
        Self::xi_pow(prime, 1)
    }

    fn from_parts(prime: u32, mut num: Vec<BigInt>, mut den: BigInt) -> Self {
        if num.iter().all(|c| c.is_zero()) {
            return CyclotomicRational {
                prime,
                num,
                den: BigInt::one(),
            };
        }
        if den.is_negative() {
            den = -den;
            for c in num.iter_mut() {
                *c = -&*c;
            }
        }
        let mut g = den.clone();
        for c in &num {
            if g.is_one() {
                break;
            }
            g = g.gcd(c);
        }
        if !g.is_one() {
            den /= &g;
            for c in num.iter_mut() {
                *c /= &g;
            }
        }
        CyclotomicRational { prime, num, den }
    }

    /// Reduces a length-p coefficient array (indices mod x^p - 1) to the power basis.
    fn from_cyclic(prime: u32, mut c: Vec<BigInt>, den: BigInt) -> Self {
        let w = Self::width(prime);
        let top = c[w].clone();
        c.truncate(w);
        if !top.is_zero() {
            for x in c.iter_mut() {
                *x -= &top;
            }
        }
        Self::from_parts(prime, c, den)
    }

    pub fn prime(&self) -> u32 {
        self.prime
    }

    pub fn coords(&self) -> Vec<Rational> {
        self.num
            .iter()
            .map(|n| Rational::new(n.clone(), self.den.clone()))
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num[0].is_one() && self.num[1..].iter().all(|c| c.is_zero())
    }

    /// The rational value when the element lies in Q.
    pub fn as_rational(&self) -> Option<Rational> {
        if self.num[1..].iter().all(|c| c.is_zero()) {
            Some(Rational::new(self.num[0].clone(), self.den.clone()))
        } else {
            None
        }
    }

    fn check_prime(&self, other: &Self) {
        assert_eq!(
            self.prime, other.prime,
            "mixing coefficients from Q(xi_{}) and Q(xi_{})",
            self.prime, other.prime
        );
    }

    pub fn scale(&self, r: &Rational) -> Self {
        let num = self.num.iter().map(|c| c * r.numer()).collect();
        Self::from_parts(self.prime, num, &self.den * r.denom())
    }

    /// The Galois conjugate sending ξ to ξ^k (k prime to p).
    pub fn conjugate(&self, k: u32) -> Self {
        let p = self.prime as usize;
        let mut c = vec![BigInt::zero(); p];
        for (j, a) in self.num.iter().enumerate() {
            c[(j * k as usize) % p] += a;
        }
        Self::from_cyclic(self.prime, c, self.den.clone())
    }

    /// Multiplicative inverse through the field norm.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let mut rest = Self::one(self.prime);
        for k in 2..self.prime {
            rest = &rest * &self.conjugate(k);
        }
        let norm = (self * &rest)
            .as_rational()
            .expect("field norm lies in Q");
        Some(rest.scale(&norm.recip()))
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.prime);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    pub fn div(&self, other: &Self) -> Option<Self> {
        other.inv().map(|i| self * &i)
    }
}

impl<'a> Add for &'a CyclotomicRational {
    type Output = CyclotomicRational;
    fn add(self, rhs: Self) -> CyclotomicRational {
        self.check_prime(rhs);
        if rhs.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return rhs.clone();
        }
        if self.den == rhs.den {
            let num = self.num.iter().zip(&rhs.num).map(|(a, b)| a + b).collect();
            return CyclotomicRational::from_parts(self.prime, num, self.den.clone());
        }
        let num = self
            .num
            .iter()
            .zip(&rhs.num)
            .map(|(a, b)| a * &rhs.den + b * &self.den)
            .collect();
        CyclotomicRational::from_parts(self.prime, num, &self.den * &rhs.den)
    }
}

impl<'a> Sub for &'a CyclotomicRational {
    type Output = CyclotomicRational;
    fn sub(self, rhs: Self) -> CyclotomicRational {
        self + &(-rhs)
    }
}

impl<'a> Neg for &'a CyclotomicRational {
    type Output = CyclotomicRational;
    fn neg(self) -> CyclotomicRational {
        CyclotomicRational {
            prime: self.prime,
            num: self.num.iter().map(|c| -c).collect(),
            den: self.den.clone(),
        }
    }
}

impl<'a> Mul for &'a CyclotomicRational {
    type Output = CyclotomicRational;
    fn mul(self, rhs: Self) -> CyclotomicRational {
        self.check_prime(rhs);
        let p = self.prime as usize;
        if self.is_zero() || rhs.is_zero() {
            return CyclotomicRational::zero(self.prime);
        }
        let mut c = vec![BigInt::zero(); p];
        for (i, a) in self.num.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.num.iter().enumerate() {
                if !b.is_zero() {
                    c[(i + j) % p] += a * b;
                }
            }
        }
        CyclotomicRational::from_cyclic(self.prime, c, &self.den * &rhs.den)
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for CyclotomicRational {
            type Output = CyclotomicRational;
            fn $m(self, rhs: Self) -> CyclotomicRational {
                (&self).$m(&rhs)
            }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

impl Neg for CyclotomicRational {
    type Output = CyclotomicRational;
    fn neg(self) -> CyclotomicRational {
        -&self
    }
}

impl fmt::Display for CyclotomicRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (j, c) in self.coords().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (sign, mag) = if c.is_negative() { ("-", -c) } else { ("+", c.clone()) };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let unit = mag.is_one();
            match j {
                0 => write!(f, "{mag}")?,
                1 if unit => write!(f, "ξ")?,
                1 => write!(f, "{mag}ξ")?,
                _ if unit => write!(f, "ξ^{j}")?,
                _ => write!(f, "{mag}ξ^{j}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for CyclotomicRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q(ξ_{})[{}]", self.prime, self)
    }
}
