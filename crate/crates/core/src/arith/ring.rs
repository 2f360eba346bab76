//! Truncated power-series rings `F[π]/π^r` over a finite field.

use std::sync::Arc;

use smallvec::SmallVec;

use super::field::{Fe, GaloisField};
use crate::error::{invalid, Error, Result};

/// Coefficients `c_0, ..., c_{r-1}` of `c_0 + c_1 π + ... + c_{r-1} π^{r-1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TruncatedRingElem {
    pub coeffs: SmallVec<[Fe; 4]>,
}

impl TruncatedRingElem {
    pub fn is_unit(&self) -> bool {
        self.coeffs[0] != 0
    }
}

#[derive(Clone, Debug)]
pub struct TruncatedRing {
    field: Arc<GaloisField>,
    level: usize,
}

impl PartialEq for TruncatedRing {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.field, &other.field) && self.level == other.level
    }
}
impl Eq for TruncatedRing {}

impl TruncatedRing {
    pub fn new(field: Arc<GaloisField>, level: usize) -> Result<Self> {
        if level == 0 {
            return invalid("truncation level must be at least 1");
        }
        Ok(TruncatedRing { field, level })
    }

    pub fn field(&self) -> &Arc<GaloisField> {
        &self.field
    }
    pub fn level(&self) -> usize {
        self.level
    }

    pub fn elem(&self, coeffs: &[Fe]) -> TruncatedRingElem {
        assert_eq!(coeffs.len(), self.level);
        TruncatedRingElem { coeffs: coeffs.into() }
    }
    pub fn zero(&self) -> TruncatedRingElem {
        self.elem(&vec![0; self.level])
    }
    pub fn one(&self) -> TruncatedRingElem {
        let mut c = vec![0; self.level];
        c[0] = 1;
        self.elem(&c)
    }
    /// `π^k` (zero once `k ≥ r`).
    pub fn uniformizer_pow(&self, k: usize) -> TruncatedRingElem {
        let mut c = vec![0; self.level];
        if k < self.level {
            c[k] = 1;
        }
        self.elem(&c)
    }

    /// Number of elements, `|F|^r`.
    pub fn size(&self) -> u64 {
        (self.field.size() as u64).pow(self.level as u32)
    }

    pub fn elements(&self) -> impl Iterator<Item = TruncatedRingElem> + '_ {
        let q = self.field.size() as u64;
        (0..self.size()).map(move |mut idx| {
            let mut c = SmallVec::new();
            for _ in 0..self.level {
                c.push((idx % q) as Fe);
                idx /= q;
            }
            TruncatedRingElem { coeffs: c }
        })
    }

    pub fn add_into(&self, a: &[Fe], b: &[Fe], out: &mut [Fe]) {
        for l in 0..self.level {
            out[l] = self.field.add(a[l], b[l]);
        }
    }

    /// Truncated convolution, accumulated into `out`.
    pub fn mul_acc(&self, a: &[Fe], b: &[Fe], out: &mut [Fe]) {
        let f = &self.field;
        for (s, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for t in 0..self.level - s {
                if b[t] != 0 {
                    out[s + t] = f.add(out[s + t], f.mul(x, b[t]));
                }
            }
        }
    }

    /// Inverse of a unit given by coefficients, written into `out`.
    pub fn inv_into(&self, a: &[Fe], out: &mut [Fe]) -> Result<()> {
        let f = &self.field;
        if a[0] == 0 {
            return Err(Error::Invalid("inverse of a non-unit".into()));
        }
        let c0 = f.inv(a[0]);
        out[0] = c0;
        for l in 1..self.level {
            let mut s = 0;
            for k in 1..=l {
                s = f.add(s, f.mul(a[k], out[l - k]));
            }
            out[l] = f.neg(f.mul(c0, s));
        }
        Ok(())
    }

    pub fn add(&self, a: &TruncatedRingElem, b: &TruncatedRingElem) -> TruncatedRingElem {
        let mut out = self.zero();
        self.add_into(&a.coeffs, &b.coeffs, &mut out.coeffs);
        out
    }
    pub fn neg(&self, a: &TruncatedRingElem) -> TruncatedRingElem {
        TruncatedRingElem {
            coeffs: a.coeffs.iter().map(|&c| self.field.neg(c)).collect(),
        }
    }
    pub fn sub(&self, a: &TruncatedRingElem, b: &TruncatedRingElem) -> TruncatedRingElem {
        self.add(a, &self.neg(b))
    }
    pub fn mul(&self, a: &TruncatedRingElem, b: &TruncatedRingElem) -> TruncatedRingElem {
        let mut out = self.zero();
        self.mul_acc(&a.coeffs, &b.coeffs, &mut out.coeffs);
        out
    }
    pub fn inverse(&self, a: &TruncatedRingElem) -> Result<TruncatedRingElem> {
        let mut out = self.zero();
        self.inv_into(&a.coeffs, &mut out.coeffs)?;
        Ok(out)
    }

    /// Reduction modulo `π^i`, landing in the level-`i` ring over the same field.
    pub fn reduce(&self, a: &TruncatedRingElem, i: usize) -> Result<TruncatedRingElem> {
        if i == 0 || i > self.level {
            return invalid(format!("reduction level {i} outside 1..={}", self.level));
        }
        Ok(TruncatedRingElem { coeffs: a.coeffs[..i].into() })
    }

    /// Coefficientwise `x ↦ x^q`.
    pub fn frobenius(&self, a: &TruncatedRingElem, q: u64) -> Result<TruncatedRingElem> {
        self.field.subfield_exponent(q)?;
        Ok(TruncatedRingElem {
            coeffs: a.coeffs.iter().map(|&c| self.field.pow(c, q)).collect(),
        })
    }

    pub fn units(&self) -> impl Iterator<Item = TruncatedRingElem> + '_ {
        self.elements().filter(|a| a.is_unit())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    fn ring(p: u32, k: u32, r: usize) -> TruncatedRing {
        TruncatedRing::new(GaloisField::shared(p, k).unwrap(), r).unwrap()
    }

    #[test]
    fn one_plus_pi_times_its_series_inverse() {
        let w = ring(3, 1, 3);
        let a = w.elem(&[1, 1, 0]);
        let b = w.elem(&[1, 2, 1]); // 1 - π + π²
        assert_eq!(w.mul(&a, &b), w.one());
    }

    #[test]
    fn uniformizer_is_nilpotent() {
        for r in 1..=4 {
            let w = ring(2, 1, r);
            let x = w.mul(&w.uniformizer_pow(1), &w.uniformizer_pow(r - 1));
            assert_eq!(x, w.zero());
        }
    }

    #[test]
    fn unit_counts() {
        assert_eq!(ring(2, 1, 2).units().count(), 2);
        for (p, k) in [(2, 1), (3, 1), (2, 2), (2, 3), (3, 2)] {
            for r in 1..=3 {
                let w = ring(p, k, r);
                if w.size() > 729 {
                    continue;
                }
                let qa = w.field().size() as usize;
                let expected = (qa - 1) * qa.pow(r as u32 - 1);
                assert_eq!(w.units().count(), expected, "q^a={qa} r={r}");
            }
        }
    }

    #[test]
    fn inverse_of_units_and_refusal() {
        let w = ring(2, 2, 3);
        for a in w.units() {
            let b = w.inverse(&a).unwrap();
            assert_eq!(w.mul(&a, &b), w.one());
        }
        assert!(w.inverse(&w.uniformizer_pow(1)).is_err());
    }

    #[test]
    fn ring_axioms_exhaustive() {
        let w = ring(3, 1, 2);
        let all: Vec<_> = w.elements().collect();
        for a in &all {
            for b in &all {
                assert_eq!(w.mul(a, b), w.mul(b, a));
                for c in &all {
                    assert_eq!(w.mul(a, &w.add(b, c)), w.add(&w.mul(a, b), &w.mul(a, c)));
                    assert_eq!(w.mul(a, &w.mul(b, c)), w.mul(&w.mul(a, b), c));
                }
            }
        }
    }

    #[test]
    fn reduction_examples() {
        let w = ring(2, 1, 3);
        let a = w.elem(&[1, 1, 1]);
        assert_eq!(w.reduce(&a, 1).unwrap().coeffs.as_slice(), &[1]);
        assert_eq!(w.reduce(&a, 3).unwrap(), a);
        assert!(w.reduce(&a, 0).is_err());
        assert!(w.reduce(&a, 4).is_err());
    }

    #[test]
    fn reduction_is_homomorphism_random() {
        let w = ring(3, 2, 3);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let n = w.size();
        let all: Vec<_> = w.elements().collect();
        for _ in 0..500 {
            let a = &all[rng.gen_range(0..n) as usize];
            let b = &all[rng.gen_range(0..n) as usize];
            for i in 1..=3 {
                let wi = ring(3, 2, i);
                let lhs = w.reduce(&w.mul(a, b), i).unwrap();
                let rhs = wi.mul(&w.reduce(a, i).unwrap(), &w.reduce(b, i).unwrap());
                assert_eq!(lhs, rhs);
            }
        }
    }
}
