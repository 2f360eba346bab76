//! Exact character theory over cyclotomic fields.

pub mod linear;
pub mod table;
pub mod torus;

pub use linear::{linear_characters, LinearCharacter};
pub use table::{CharacterTable, CharacterTableRecord};
pub use torus::{theta_general_position, theta_regular};

use std::sync::Arc;

use rayon::prelude::*;

use crate::arith::CyclotomicNumber;
use crate::error::{invalid, Result};
use crate::groups::MatrixGroup;

/// Values on the conjugacy classes of a group, over a common cyclotomic
/// field containing `Q(ζ_e)` for the group exponent `e`.
#[derive(Clone)]
pub struct ClassFunction {
    group: Arc<MatrixGroup>,
    values: Vec<CyclotomicNumber>,
}

impl std::fmt::Debug for ClassFunction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ClassFunction").field("group", &self.group.name()).field("values", &self.values).finish()
    }
}

impl PartialEq for ClassFunction {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.group, &other.group) && self.values == other.values
    }
}

impl ClassFunction {
    pub fn new(group: Arc<MatrixGroup>, values: Vec<CyclotomicNumber>) -> Result<Self> {
        let k = group.classes().len();
        if values.len() != k {
            return invalid(format!("expected {k} class values, got {}", values.len()));
        }
        let m = values
            .iter()
            .fold(group.exponent() as u64, |m, v| crate::arith::cyclo::lcm(m, v.conductor() as u64)) as u32;
        let lifted = values.iter().map(|v| v.lift(m)).collect();
        Ok(ClassFunction { group, values: lifted })
    }

    pub fn from_fn(group: Arc<MatrixGroup>, f: impl Fn(usize) -> CyclotomicNumber) -> Result<Self> {
        let values = (0..group.classes().len()).map(f).collect();
        Self::new(group, values)
    }

    pub fn constant(group: Arc<MatrixGroup>, c: i128) -> Self {
        let e = group.exponent();
        let k = group.classes().len();
        ClassFunction { group, values: vec![CyclotomicNumber::from_int(e, c); k] }
    }

    pub fn zero(group: Arc<MatrixGroup>) -> Self {
        Self::constant(group, 0)
    }

    pub fn trivial(group: Arc<MatrixGroup>) -> Self {
        Self::constant(group, 1)
    }

    /// `|G|` at the identity, `0` elsewhere.
    pub fn regular(group: Arc<MatrixGroup>) -> Self {
        let e = group.exponent();
        let order = group.order() as i128;
        let k = group.classes().len();
        let values = (0..k)
            .map(|c| CyclotomicNumber::from_int(e, if c == 0 { order } else { 0 }))
            .collect();
        ClassFunction { group, values }
    }

    pub fn group(&self) -> &Arc<MatrixGroup> {
        &self.group
    }
    pub fn values(&self) -> &[CyclotomicNumber] {
        &self.values
    }
    pub fn value(&self, class: usize) -> &CyclotomicNumber {
        &self.values[class]
    }
    /// Value at the element with index `i`.
    pub fn at(&self, i: usize) -> &CyclotomicNumber {
        &self.values[self.group.classes().class_of[i] as usize]
    }
    pub fn degree(&self) -> &CyclotomicNumber {
        &self.values[0]
    }
    pub fn degree_int(&self) -> Option<i128> {
        self.values[0].as_integer()
    }

    fn same_group(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.group, &other.group) {
            Ok(())
        } else {
            invalid(format!("class functions on {} and {}", self.group.name(), other.group.name()))
        }
    }

    fn zip(&self, other: &Self, f: impl Fn(&CyclotomicNumber, &CyclotomicNumber) -> CyclotomicNumber) -> Result<Self> {
        self.same_group(other)?;
        let values = self.values.iter().zip(&other.values).map(|(a, b)| f(a, b)).collect();
        Ok(ClassFunction { group: self.group.clone(), values })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip(other, |a, b| a + b)
    }
    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip(other, |a, b| a - b)
    }
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.zip(other, |a, b| a * b)
    }
    pub fn scale(&self, num: i128, den: i128) -> Self {
        ClassFunction { group: self.group.clone(), values: self.values.iter().map(|v| v.scale(num, den)).collect() }
    }
    pub fn conj(&self) -> Self {
        ClassFunction { group: self.group.clone(), values: self.values.iter().map(|v| v.conj()).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| v.is_zero())
    }

    /// Sum of several class functions on one group.
    pub fn sum<'a>(group: Arc<MatrixGroup>, items: impl IntoIterator<Item = &'a ClassFunction>) -> Result<Self> {
        let mut acc = Self::zero(group);
        for x in items {
            acc = acc.add(x)?;
        }
        Ok(acc)
    }

    /// Restriction to a subgroup of the same matrix space.
    pub fn restrict(&self, h: &Arc<MatrixGroup>) -> Result<ClassFunction> {
        let hc = h.classes();
        let gc = self.group.classes();
        let values = hc
            .reps
            .iter()
            .map(|&r| {
                let i = self
                    .group
                    .index_of(h.element(r))
                    .ok_or_else(|| crate::Error::Invalid(format!("{} is not inside {}", h.name(), self.group.name())))?;
                Ok(self.values[gc.class_of[i] as usize].clone())
            })
            .collect::<Result<Vec<_>>>()?;
        ClassFunction::new(h.clone(), values)
    }

    /// `Ind_H^G` of a class function on `H`.
    pub fn induce(&self, g: &Arc<MatrixGroup>) -> Result<ClassFunction> {
        let h = &self.group;
        let hc = h.classes();
        let gc = g.classes();
        let e = g.exponent();
        let mut sums = vec![CyclotomicNumber::zero(e); gc.len()];
        for (d, &r) in hc.reps.iter().enumerate() {
            let i = g
                .index_of(h.element(r))
                .ok_or_else(|| crate::Error::Invalid(format!("{} is not inside {}", h.name(), g.name())))?;
            let c = gc.class_of[i] as usize;
            sums[c] = &sums[c] + &self.values[d].scale(hc.sizes[d] as i128, 1);
        }
        let (go, ho) = (g.order() as i128, h.order() as i128);
        let values = sums
            .iter()
            .enumerate()
            .map(|(c, s)| s.scale(go, ho * gc.sizes[c] as i128))
            .collect();
        ClassFunction::new(g.clone(), values)
    }
}

/// `⟨χ, ξ⟩ = (1/|G|) Σ_g χ(g) conj(ξ(g))`.
pub fn inner_product(a: &ClassFunction, b: &ClassFunction) -> Result<CyclotomicNumber> {
    a.same_group(b)?;
    let cl = a.group.classes();
    let e = a.group.exponent();
    let terms: Vec<CyclotomicNumber> = (0..cl.len())
        .into_par_iter()
        .map(|c| (&a.values[c] * &b.values[c].conj()).scale(cl.sizes[c] as i128, 1))
        .collect();
    let total = terms.iter().fold(CyclotomicNumber::zero(e), |acc, t| &acc + t);
    Ok(total.scale(1, a.group.order() as i128))
}

/// [`inner_product`] when it is known to be an integer.
pub fn inner_product_int(a: &ClassFunction, b: &ClassFunction) -> Result<i128> {
    let v = inner_product(a, b)?;
    v.as_integer()
        .ok_or_else(|| crate::Error::Verification(format!("inner product {v} is not an integer")))
}
