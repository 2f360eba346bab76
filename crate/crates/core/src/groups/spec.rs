use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::arith::field::{prime_power, GaloisField};
use crate::arith::TruncatedRing;
use crate::error::{invalid, Error, Result};

use super::matrix::MatSpace;

/// Default cap on the number of elements any enumeration may touch.
pub const DEFAULT_BUDGET: u128 = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    GL,
    SL,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::GL => "GL",
            Family::SL => "SL",
        })
    }
}

impl std::str::FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "GL" => Ok(Family::GL),
            "SL" => Ok(Family::SL),
            _ => invalid(format!("unknown family {s:?}")),
        }
    }
}

/// `GL_n` or `SL_n` over `W(q, a, r) = F_{q^a}[π]/π^r`.
///
/// With `a = 1` this is the finite group of rational points; larger `a`
/// approximates the algebraic group by its points over `F_{q^a}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GroupSpec {
    pub family: Family,
    pub n: usize,
    pub q: u32,
    pub a: u32,
    pub r: usize,
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}_{}(W({},{},{}))", self.family, self.n, self.q, self.a, self.r)
    }
}

impl GroupSpec {
    pub fn new(family: Family, n: usize, q: u32, a: u32, r: usize) -> Result<Self> {
        if n == 0 || a == 0 || r == 0 {
            return invalid("n, a and r must be positive");
        }
        if prime_power(q as u64).is_none() {
            return invalid(format!("q = {q} is not a prime power"));
        }
        let spec = GroupSpec { family, n, q, a, r };
        spec.point_field()?;
        Ok(spec)
    }

    pub fn gl(n: usize, q: u32, r: usize) -> Self {
        Self::new(Family::GL, n, q, 1, r).expect("valid GL spec")
    }
    pub fn sl(n: usize, q: u32, r: usize) -> Self {
        Self::new(Family::SL, n, q, 1, r).expect("valid SL spec")
    }

    pub fn p(&self) -> u32 {
        prime_power(self.q as u64).unwrap().0
    }
    pub fn q_exponent(&self) -> u32 {
        prime_power(self.q as u64).unwrap().1
    }
    /// Size of the point field, `q^a`.
    pub fn field_size(&self) -> u64 {
        (self.q as u64).pow(self.a)
    }

    pub fn point_field(&self) -> Result<Arc<GaloisField>> {
        let (p, e) = prime_power(self.q as u64).ok_or_else(|| Error::Invalid("q".into()))?;
        GaloisField::shared(p, e * self.a)
    }

    pub fn space(&self) -> Result<Arc<MatSpace>> {
        let ring = TruncatedRing::new(self.point_field()?, self.r)?;
        MatSpace::shared(self.n, ring, self.q as u64)
    }

    pub fn with_level(&self, r: usize) -> Self {
        GroupSpec { r, ..self.clone() }
    }
    pub fn with_degree(&self, a: u32) -> Self {
        GroupSpec { a, ..self.clone() }
    }
    pub fn with_family(&self, family: Family) -> Self {
        GroupSpec { family, ..self.clone() }
    }
    pub fn rational(&self) -> Self {
        self.with_degree(1)
    }

    /// `p ∤ n`, the condition under which the trace form is nondegenerate on `sl_n`.
    pub fn trace_form_nondegenerate(&self) -> bool {
        self.family == Family::GL || self.n as u32 % self.p() != 0
    }

    /// Closed-form group order.
    pub fn order(&self) -> u128 {
        let qa = self.field_size() as u128;
        let mut gl1 = 1u128;
        for i in 0..self.n as u32 {
            gl1 *= qa.pow(self.n as u32) - qa.pow(i);
        }
        let gl = gl1 * qa.pow(((self.r - 1) * self.n * self.n) as u32);
        match self.family {
            Family::GL => gl,
            Family::SL => gl / ((qa - 1) * qa.pow(self.r as u32 - 1)),
        }
    }

    pub fn check_budget(&self, budget: u128) -> Result<()> {
        let needed = self.order();
        if needed > budget {
            return Err(Error::Budget { what: self.to_string(), needed, budget });
        }
        Ok(())
    }

    /// Stable text encoding used for cache keys and reports.
    pub fn canonical(&self) -> String {
        format!("{}:n={}:q={}:a={}:r={}", self.family, self.n, self.q, self.a, self.r)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_form_orders() {
        assert_eq!(GroupSpec::gl(1, 2, 1).order(), 1);
        assert_eq!(GroupSpec::gl(2, 2, 2).order(), 96);
        assert_eq!(GroupSpec::gl(2, 3, 2).order(), 3888);
        assert_eq!(GroupSpec::sl(2, 3, 2).order(), 648);
        assert_eq!(GroupSpec::new(Family::GL, 2, 2, 2, 2).unwrap().order(), 46080);
    }

    #[test]
    fn validation() {
        assert!(GroupSpec::new(Family::GL, 2, 6, 1, 2).is_err());
        assert!(GroupSpec::new(Family::GL, 0, 2, 1, 2).is_err());
        assert!(GroupSpec::new(Family::GL, 2, 2, 1, 0).is_err());
        assert!(!GroupSpec::sl(2, 2, 2).trace_form_nondegenerate());
        assert!(GroupSpec::sl(2, 3, 2).trace_form_nondegenerate());
        assert!(GroupSpec::gl(2, 3, 3).check_budget(DEFAULT_BUDGET).is_ok());
        assert!(matches!(
            GroupSpec::gl(3, 3, 2).check_budget(DEFAULT_BUDGET),
            Err(Error::Budget { .. })
        ));
    }
}
