use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{is_integer, rational_gcd, Rational};

/// A finitely generated subgroup of Q, given by positive generators.
///
/// Any such group is cyclic, so membership and reduction go through the
/// single generator `step` (the gcd of the generators).
#[derive(Clone, Debug)]
pub struct ExponentGroup {
    generators: Vec<Rational>,
    step: Option<Rational>,
}

impl ExponentGroup {
    pub fn trivial() -> Self {
        ExponentGroup {
            generators: Vec::new(),
            step: None,
        }
    }

    pub fn new(generators: Vec<Rational>) -> Result<Self> {
        if let Some(g) = generators.iter().find(|g| !g.is_positive()) {
            return Err(Error::Config(format!(
                "exponent group generators must be positive, got {g}"
            )));
        }
        let step = generators
            .iter()
            .skip(1)
            .fold(generators.first().cloned(), |acc, g| {
                acc.map(|a| rational_gcd(&a, g))
            });
        Ok(ExponentGroup { generators, step })
    }

    pub fn cyclic(step: Rational) -> Result<Self> {
        Self::new(vec![step])
    }

    pub fn generators(&self) -> &[Rational] {
        &self.generators
    }

    /// The positive generator of the group, or `None` for the trivial group.
    pub fn step(&self) -> Option<&Rational> {
        self.step.as_ref()
    }

    pub fn is_trivial(&self) -> bool {
        self.step.is_none()
    }

    pub fn contains(&self, x: &Rational) -> bool {
        match &self.step {
            None => x.is_zero(),
            Some(g) => is_integer(&(x / g)),
        }
    }

    /// Canonical representative of `x` modulo the group: `x` itself for the
    /// trivial group, otherwise the representative in `[0, step)`.
    pub fn class_rep(&self, x: &Rational) -> Rational {
        match &self.step {
            None => x.clone(),
            Some(g) => x - (x / g).floor() * g,
        }
    }

    pub fn congruent(&self, a: &Rational, b: &Rational) -> bool {
        self.contains(&(a - b))
    }
}

impl PartialEq for ExponentGroup {
    fn eq(&self, other: &Self) -> bool {
        self.step == other.step
    }
}

impl Eq for ExponentGroup {}
