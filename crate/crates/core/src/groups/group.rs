//! Explicit finite matrix groups: sorted element lists, closure, classes.

use std::sync::{Arc, OnceLock};

use rustc_hash::{FxHashMap, FxHashSet};

use super::matrix::{Mat, MatSpace};
use crate::arith::cyclo::lcm;
use crate::error::{Error, Result};

/// Incremental closure by Dimino's coset method.
///
/// `member` restricts the search to a known superset; leaving it is reported
/// as an error, which is how subset closure is verified.
#[derive(Clone)]
pub struct Closure<'a> {
    space: &'a MatSpace,
    pub elems: Vec<Mat>,
    set: FxHashSet<u128>,
    pub gens: Vec<Mat>,
}

impl<'a> Closure<'a> {
    pub fn new(space: &'a MatSpace) -> Self {
        let id = space.identity();
        let mut set = FxHashSet::default();
        set.insert(space.code(&id));
        Closure { space, elems: vec![id], set, gens: Vec::new() }
    }

    pub fn contains(&self, m: &Mat) -> bool {
        self.set.contains(&self.space.code(m))
    }
    pub fn len(&self) -> usize {
        self.elems.len()
    }
    pub fn is_empty(&self) -> bool {
        false
    }

    /// Adjoins `x`; returns `false` when `x` was already inside.
    pub fn add_generator(
        &mut self,
        x: Mat,
        member: &dyn Fn(u128) -> bool,
        budget: usize,
    ) -> Result<bool> {
        if self.contains(&x) {
            return Ok(false);
        }
        let s = self.space;
        let old: Vec<Mat> = self.elems.clone();
        self.gens.push(x.clone());
        let mut reps = vec![s.identity()];
        let push_coset = |this: &mut Self, e: &Mat| -> Result<()> {
            for h in &old {
                let y = s.mul(h, e);
                let c = s.code(&y);
                if !member(c) {
                    return Err(Error::Invalid(format!("product {} leaves the ambient set", s.render(&y))));
                }
                this.set.insert(c);
                this.elems.push(y);
            }
            if this.elems.len() > budget {
                return Err(Error::Budget {
                    what: "subgroup closure".into(),
                    needed: this.elems.len() as u128,
                    budget: budget as u128,
                });
            }
            Ok(())
        };
        push_coset(self, &x)?;
        reps.push(x);
        let mut i = 1;
        while i < reps.len() {
            for k in 0..self.gens.len() {
                let e = s.mul(&reps[i], &self.gens[k]);
                if !self.contains(&e) {
                    push_coset(self, &e)?;
                    reps.push(e);
                }
            }
            i += 1;
        }
        Ok(true)
    }
}

/// Conjugacy classes of a [`MatrixGroup`]; class 0 is the identity class.
#[derive(Debug, Clone)]
pub struct Classes {
    pub class_of: Vec<u32>,
    pub reps: Vec<usize>,
    pub sizes: Vec<usize>,
    pub members: Vec<Vec<u32>>,
    pub inverse: Vec<usize>,
    pub orders: Vec<u32>,
    pub exponent: u32,
}

impl Classes {
    pub fn len(&self) -> usize {
        self.reps.len()
    }
    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }
}

/// A finite group of matrices, elements sorted by encoding.
pub struct MatrixGroup {
    space: Arc<MatSpace>,
    name: String,
    elems: Vec<Mat>,
    codes: Vec<u128>,
    index: FxHashMap<u128, u32>,
    identity: usize,
    gens: OnceLock<Vec<usize>>,
    inverses: OnceLock<Vec<u32>>,
    classes: OnceLock<Arc<Classes>>,
}

impl std::fmt::Debug for MatrixGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} (order {})", self.name, self.order())
    }
}

impl MatrixGroup {
    /// Builds a group from an element list known to be closed.
    pub fn from_elements(space: Arc<MatSpace>, name: impl Into<String>, elems: Vec<Mat>) -> Self {
        let mut keyed: Vec<(u128, Mat)> = elems.into_iter().map(|m| (space.code(&m), m)).collect();
        keyed.sort_unstable_by_key(|(c, _)| *c);
        keyed.dedup_by_key(|(c, _)| *c);
        let codes: Vec<u128> = keyed.iter().map(|(c, _)| *c).collect();
        let elems: Vec<Mat> = keyed.into_iter().map(|(_, m)| m).collect();
        let index = codes.iter().enumerate().map(|(i, &c)| (c, i as u32)).collect();
        let id = space.code(&space.identity());
        let identity = codes.binary_search(&id).unwrap_or(usize::MAX);
        MatrixGroup {
            space,
            name: name.into(),
            elems,
            codes,
            index,
            identity,
            gens: OnceLock::new(),
            inverses: OnceLock::new(),
            classes: OnceLock::new(),
        }
    }

    /// Like [`from_elements`](Self::from_elements), but checks the group axioms.
    pub fn verified(space: Arc<MatSpace>, name: impl Into<String>, elems: Vec<Mat>) -> Result<Self> {
        let g = Self::from_elements(space, name, elems);
        g.verify_closure()?;
        Ok(g)
    }

    /// The subgroup generated by `gens`.
    pub fn generate(space: Arc<MatSpace>, name: impl Into<String>, gens: &[Mat], budget: usize) -> Result<Self> {
        let mut cl = Closure::new(&space);
        for g in gens {
            cl.add_generator(g.clone(), &|_| true, budget)?;
        }
        let elems = cl.elems;
        Ok(Self::from_elements(space, name, elems))
    }

    pub fn space(&self) -> &Arc<MatSpace> {
        &self.space
    }
    pub fn name(&self) -> &str {
        &self.name
    }
    pub fn renamed(self, name: impl Into<String>) -> Self {
        MatrixGroup { name: name.into(), ..self }
    }
    pub fn order(&self) -> usize {
        self.elems.len()
    }
    pub fn elements(&self) -> &[Mat] {
        &self.elems
    }
    pub fn element(&self, i: usize) -> &Mat {
        &self.elems[i]
    }
    pub fn codes(&self) -> &[u128] {
        &self.codes
    }
    pub fn identity(&self) -> usize {
        self.identity
    }
    pub fn index_of_code(&self, c: u128) -> Option<usize> {
        self.index.get(&c).map(|&i| i as usize)
    }
    pub fn index_of(&self, m: &Mat) -> Option<usize> {
        self.index_of_code(self.space.code(m))
    }
    pub fn contains(&self, m: &Mat) -> bool {
        self.index.contains_key(&self.space.code(m))
    }

    pub fn mul(&self, i: usize, j: usize) -> usize {
        let m = self.space.mul(&self.elems[i], &self.elems[j]);
        self.index_of(&m).expect("group is closed under products")
    }
    pub fn inv(&self, i: usize) -> usize {
        self.inverses()[i] as usize
    }
    pub fn inverses(&self) -> &[u32] {
        self.inverses.get_or_init(|| {
            self.elems
                .iter()
                .map(|m| {
                    let mi = self.space.inverse(m).expect("group elements are invertible");
                    self.index_of(&mi).expect("group is closed under inverses") as u32
                })
                .collect()
        })
    }
    /// `g x g^{-1}` by indices.
    pub fn conj(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inv(g))
    }
    pub fn pow(&self, i: usize, mut k: u64) -> usize {
        let (mut base, mut acc) = (i, self.identity);
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }
    pub fn element_order(&self, i: usize) -> u32 {
        let mut k = 1;
        let mut x = i;
        while x != self.identity {
            x = self.mul(x, i);
            k += 1;
        }
        k
    }

    /// Greedy generating set in element order; also verifies closure.
    pub fn try_generators(&self) -> Result<Vec<usize>> {
        if let Some(g) = self.gens.get() {
            return Ok(g.clone());
        }
        if self.identity == usize::MAX {
            return Err(Error::Invalid(format!("{} does not contain the identity", self.name)));
        }
        let mut cl = Closure::new(&self.space);
        let mut gens = Vec::new();
        let member = |c: u128| self.index.contains_key(&c);
        for (i, m) in self.elems.iter().enumerate() {
            if cl.len() == self.order() {
                break;
            }
            if cl.add_generator(m.clone(), &member, usize::MAX)? {
                gens.push(i);
            }
        }
        Ok(self.gens.get_or_init(|| gens).clone())
    }
    pub fn generators(&self) -> Vec<usize> {
        self.try_generators().expect("group is closed")
    }
    pub fn verify_closure(&self) -> Result<()> {
        self.try_generators().map(|_| ())
    }

    pub fn is_abelian(&self) -> bool {
        let g = self.generators();
        g.iter().all(|&a| g.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn classes(&self) -> Arc<Classes> {
        self.classes.get_or_init(|| Arc::new(self.compute_classes())).clone()
    }

    fn compute_classes(&self) -> Classes {
        let n = self.order();
        let gens = self.generators();
        let abelian = self.is_abelian();
        let s = &self.space;
        let conjugators: Vec<(Mat, Mat)> = gens
            .iter()
            .map(|&g| (self.elems[g].clone(), self.elems[self.inv(g)].clone()))
            .collect();
        let mut class_of = vec![u32::MAX; n];
        let mut members: Vec<Vec<u32>> = Vec::new();
        let order_iter = std::iter::once(self.identity).chain((0..n).filter(|&i| i != self.identity));
        for start in order_iter {
            if class_of[start] != u32::MAX {
                continue;
            }
            let c = members.len() as u32;
            class_of[start] = c;
            let mut orbit = vec![start as u32];
            if !abelian {
                let mut k = 0;
                while k < orbit.len() {
                    let x = &self.elems[orbit[k] as usize];
                    for (g, gi) in &conjugators {
                        let y = s.mul(&s.mul(g, x), gi);
                        let j = self.index_of(&y).expect("closed under conjugation");
                        if class_of[j] == u32::MAX {
                            class_of[j] = c;
                            orbit.push(j as u32);
                        }
                    }
                    k += 1;
                }
            }
            orbit.sort_unstable();
            members.push(orbit);
        }
        let reps: Vec<usize> = members.iter().map(|m| m[0] as usize).collect();
        let sizes = members.iter().map(|m| m.len()).collect();
        let inverse = reps.iter().map(|&r| class_of[self.inv(r)] as usize).collect();
        let orders: Vec<u32> = reps.iter().map(|&r| self.element_order(r)).collect();
        let exponent = orders.iter().fold(1u64, |e, &o| lcm(e, o as u64)) as u32;
        Classes { class_of, reps, sizes, members, inverse, orders, exponent }
    }

    pub fn exponent(&self) -> u32 {
        self.classes().exponent
    }

    /// Elements satisfying `pred`, assumed to form a subgroup.
    pub fn filter(&self, name: impl Into<String>, pred: impl Fn(&Mat) -> bool) -> MatrixGroup {
        let elems = self.elems.iter().filter(|m| pred(m)).cloned().collect();
        MatrixGroup::from_elements(self.space.clone(), name, elems)
    }
    pub fn intersection(&self, other: &MatrixGroup, name: impl Into<String>) -> MatrixGroup {
        self.filter(name, |m| other.contains(m))
    }
    pub fn is_subset_of(&self, other: &MatrixGroup) -> bool {
        self.codes.iter().all(|c| other.index.contains_key(c))
    }
    /// Equality as point sets.
    pub fn same_elements(&self, other: &MatrixGroup) -> bool {
        self.codes == other.codes
    }
    /// Elements as indices into `ambient`.
    pub fn indices_in(&self, ambient: &MatrixGroup) -> Result<Vec<usize>> {
        self.codes
            .iter()
            .map(|&c| {
                ambient
                    .index_of_code(c)
                    .ok_or_else(|| Error::Invalid(format!("{} is not contained in {}", self.name, ambient.name)))
            })
            .collect()
    }
    /// `{ab : a ∈ self, b ∈ other}`; a subgroup when one factor normalizes the other.
    pub fn product(&self, other: &MatrixGroup, name: impl Into<String>) -> MatrixGroup {
        let s = &self.space;
        let mut set: FxHashSet<u128> = FxHashSet::default();
        let mut elems = Vec::new();
        for a in &self.elems {
            for b in &other.elems {
                let m = s.mul(a, b);
                if set.insert(s.code(&m)) {
                    elems.push(m);
                }
            }
        }
        MatrixGroup::from_elements(s.clone(), name, elems)
    }
    /// `F(H) = H` as sets.
    pub fn is_frobenius_stable(&self) -> bool {
        self.elems.iter().all(|m| self.contains(&self.space.frobenius(m)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::GroupSpec;

    #[test]
    fn closure_of_two_involutions_is_s3() {
        let s = GroupSpec::gl(2, 2, 1).space().unwrap();
        let swap = s.from_levels(&[&[0, 1, 1, 0]]).unwrap();
        let shear = s.from_levels(&[&[1, 1, 0, 1]]).unwrap();
        let g = MatrixGroup::generate(s.clone(), "S3", &[swap, shear], 100).unwrap();
        assert_eq!(g.order(), 6);
        g.verify_closure().unwrap();
        assert!(!g.is_abelian());
        let cl = g.classes();
        assert_eq!(cl.len(), 3);
        assert_eq!(cl.reps[0], g.identity());
        let mut sizes = cl.sizes.clone();
        sizes.sort();
        assert_eq!(sizes, vec![1, 2, 3]);
        assert_eq!(cl.exponent, 6);
    }

    #[test]
    fn non_closed_sets_are_rejected() {
        let s = GroupSpec::gl(2, 2, 1).space().unwrap();
        let shear = s.from_levels(&[&[1, 1, 0, 1]]).unwrap();
        let swap = s.from_levels(&[&[0, 1, 1, 0]]).unwrap();
        let bad = MatrixGroup::from_elements(s.clone(), "bad", vec![s.identity(), shear, swap]);
        assert!(bad.verify_closure().is_err());
        assert!(MatrixGroup::generate(s.clone(), "x", &[s.from_levels(&[&[0, 1, 1, 1]]).unwrap()], 2).is_err());
    }

    #[test]
    fn abelian_classes_are_singletons() {
        let s = GroupSpec::gl(1, 5, 2).space().unwrap();
        let g = MatrixGroup::generate(s.clone(), "W^x", &[s.from_levels(&[&[2], &[1]]).unwrap()], 100).unwrap();
        assert!(g.is_abelian());
        let cl = g.classes();
        assert_eq!(cl.len(), g.order());
        assert!(cl.sizes.iter().all(|&k| k == 1));
    }
}
