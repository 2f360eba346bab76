//! Linear characters, stored as exponents of `ζ_m` per element.

use std::sync::Arc;

use super::ClassFunction;
use crate::arith::CyclotomicNumber;
use crate::error::{invalid, Error, Result};
use crate::groups::MatrixGroup;

/// Largest abelian group whose full character group is materialized.
pub const MAX_DUAL_ORDER: usize = 4096;

#[derive(Clone)]
pub struct LinearCharacter {
    group: Arc<MatrixGroup>,
    conductor: u32,
    exps: Vec<u32>,
}

impl std::fmt::Debug for LinearCharacter {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "LinearCharacter(ζ_{} on {}: {:?})", self.conductor, self.group.name(), self.on_generators())
    }
}

impl PartialEq for LinearCharacter {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.group, &other.group)
            && self
                .exps
                .iter()
                .zip(&other.exps)
                .all(|(&a, &b)| a as u64 * other.conductor as u64 == b as u64 * self.conductor as u64)
    }
}

impl LinearCharacter {
    /// Checks multiplicativity against the generators.
    pub fn new(group: Arc<MatrixGroup>, conductor: u32, exps: Vec<u32>) -> Result<Self> {
        if exps.len() != group.order() {
            return invalid("one exponent per element is required");
        }
        let m = conductor;
        for &g in &group.generators() {
            for x in 0..group.order() {
                if (exps[g] + exps[x]) % m != exps[group.mul(g, x)] % m {
                    return invalid("exponents are not multiplicative");
                }
            }
        }
        Ok(Self::new_unchecked(group, conductor, exps))
    }

    pub(crate) fn new_unchecked(group: Arc<MatrixGroup>, conductor: u32, mut exps: Vec<u32>) -> Self {
        exps.iter_mut().for_each(|x| *x %= conductor);
        LinearCharacter { group, conductor, exps }
    }

    pub fn trivial(group: Arc<MatrixGroup>) -> Self {
        let n = group.order();
        LinearCharacter { group, conductor: 1, exps: vec![0; n] }
    }

    pub fn group(&self) -> &Arc<MatrixGroup> {
        &self.group
    }
    pub fn conductor(&self) -> u32 {
        self.conductor
    }
    /// `χ(g_i) = ζ_m^{exp(i)}`.
    pub fn exp(&self, i: usize) -> u32 {
        self.exps[i]
    }
    pub fn exps(&self) -> &[u32] {
        &self.exps
    }
    pub fn value(&self, i: usize) -> CyclotomicNumber {
        CyclotomicNumber::root_of_unity(self.conductor, self.exps[i] as i64)
    }
    pub fn is_trivial(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }
    /// Exponents on the group's generators.
    pub fn on_generators(&self) -> Vec<(usize, u32)> {
        self.group.generators().into_iter().map(|g| (g, self.exps[g])).collect()
    }

    /// Order of the character in the dual group.
    pub fn order(&self) -> u32 {
        let g = self.exps.iter().fold(self.conductor as u64, |g, &e| crate::arith::cyclo::gcd(g, e as u64));
        (self.conductor as u64 / g) as u32
    }

    fn rescaled(&self, m: u32) -> Vec<u32> {
        let s = m / self.conductor;
        self.exps.iter().map(|&e| e * s).collect()
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if !Arc::ptr_eq(&self.group, &other.group) {
            return invalid("characters of different groups");
        }
        let m = crate::arith::cyclo::lcm(self.conductor as u64, other.conductor as u64) as u32;
        let (a, b) = (self.rescaled(m), other.rescaled(m));
        Ok(Self::new_unchecked(self.group.clone(), m, a.iter().zip(&b).map(|(x, y)| x + y).collect()))
    }

    pub fn inverse(&self) -> Self {
        let m = self.conductor;
        Self::new_unchecked(self.group.clone(), m, self.exps.iter().map(|&e| (m - e) % m).collect())
    }

    /// Composes with a homomorphism into this character's group.
    pub fn pull_back(&self, domain: Arc<MatrixGroup>, map: impl Fn(usize) -> usize) -> Self {
        let exps = (0..domain.order()).map(|i| self.exps[map(i)]).collect();
        Self::new_unchecked(domain, self.conductor, exps)
    }

    pub fn restrict(&self, h: &Arc<MatrixGroup>) -> Result<Self> {
        let idx = h.indices_in(&self.group)?;
        Ok(Self::new_unchecked(h.clone(), self.conductor, idx.iter().map(|&i| self.exps[i]).collect()))
    }

    pub fn to_class_function(&self) -> ClassFunction {
        let cl = self.group.classes();
        let values = cl.reps.iter().map(|&r| self.value(r)).collect();
        ClassFunction::new(self.group.clone(), values).expect("one value per class")
    }
}

/// All `|A|` characters of an abelian group, built one generator at a time:
/// a character `χ` of `H` extends to `⟨H, g⟩` in `k = [⟨H, g⟩ : H]` ways by
/// choosing a `k`-th root of `χ(g^k)`.
pub fn linear_characters(a: &Arc<MatrixGroup>) -> Result<Vec<LinearCharacter>> {
    if !a.is_abelian() {
        return invalid(format!("{} is not abelian", a.name()));
    }
    let n = a.order();
    if n > MAX_DUAL_ORDER {
        return Err(Error::Budget { what: format!("dual of {}", a.name()), needed: n as u128, budget: MAX_DUAL_ORDER as u128 });
    }
    let e = a.exponent();
    let id = a.identity();
    let mut in_h = vec![false; n];
    in_h[id] = true;
    let mut pos = vec![usize::MAX; n];
    pos[id] = 0;
    let mut elems = vec![id];
    let mut chars: Vec<Vec<u32>> = vec![vec![0]];
    for g in a.generators() {
        if in_h[g] {
            continue;
        }
        let (mut k, mut gk) = (1u32, g);
        while !in_h[gk] {
            gk = a.mul(gk, g);
            k += 1;
        }
        let base = elems.clone();
        let mut gj = id;
        for _ in 1..k {
            gj = a.mul(gj, g);
            for &h in &base {
                let x = a.mul(h, gj);
                in_h[x] = true;
                pos[x] = elems.len();
                elems.push(x);
            }
        }
        let gk_pos = pos[gk];
        let mut next = Vec::with_capacity(chars.len() * k as usize);
        for chi in &chars {
            let root = chi[gk_pos];
            debug_assert_eq!(root % k, 0);
            for t in 0..k {
                let b = root / k + (e / k) * t;
                let mut ext = Vec::with_capacity(elems.len());
                for j in 0..k {
                    ext.extend(chi.iter().map(|&c| (c + j * b) % e));
                }
                next.push(ext);
            }
        }
        chars = next;
    }
    let out = chars
        .into_iter()
        .map(|c| {
            let mut exps = vec![0; n];
            for (p, &x) in elems.iter().enumerate() {
                exps[x] = c[p];
            }
            LinearCharacter::new_unchecked(a.clone(), e, exps)
        })
        .collect();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{congruence_kernel, named, GroupSpec, DEFAULT_BUDGET};

    #[test]
    fn kernel_and_torus_duals() {
        let spec = GroupSpec::gl(2, 2, 2);
        let k = Arc::new(congruence_kernel(&spec, 1, DEFAULT_BUDGET).unwrap());
        let chars = linear_characters(&k).unwrap();
        assert_eq!(chars.len(), 16);
        for c in &chars {
            LinearCharacter::new(k.clone(), c.conductor(), c.exps().to_vec()).unwrap();
        }
        let t = Arc::new(named::torus(&GroupSpec::gl(2, 3, 2), DEFAULT_BUDGET).unwrap());
        let tc = linear_characters(&t).unwrap();
        assert_eq!(tc.len(), 36);
        for a in tc.iter().take(6) {
            for b in &tc {
                let ab = a.mul(b).unwrap();
                assert!(tc.contains(&ab));
            }
        }
        for (i, a) in tc.iter().enumerate() {
            assert!(tc[..i].iter().all(|b| b != a));
        }
    }

    #[test]
    fn cyclic_three() {
        let spec = GroupSpec::gl(1, 4, 1);
        let g = Arc::new(crate::groups::enumerate(&spec, DEFAULT_BUDGET).unwrap());
        let chars = linear_characters(&g).unwrap();
        assert_eq!(chars.len(), 3);
        let mut orders: Vec<u32> = chars.iter().map(|c| c.order()).collect();
        orders.sort();
        assert_eq!(orders, vec![1, 3, 3]);
    }
}
