//! The dictionary `y ↦ φ_y = φ(Tr(-·y))` between `𝔤^F` and the characters of
//! the last congruence kernel, and the orbit map `Ω′`.

use std::sync::Arc;

use rayon::prelude::*;
use rustc_hash::{FxHashMap, FxHashSet};
use serde::Serialize;

use super::orbits::OrbitPartition;
use super::{LieAlgebra, LieElem};
use crate::arith::CyclotomicNumber;
use crate::chars::{inner_product, ClassFunction, LinearCharacter};
use crate::error::{precondition, Error, Result};
use crate::groups::{congruence_kernel, enumerate, named, Family, GroupSpec, MatrixGroup};

fn check_condition(spec: &GroupSpec) -> Result<()> {
    if spec.r < 2 {
        return precondition("the kernel dictionary needs r ≥ 2");
    }
    if spec.family == Family::SL && spec.n as u32 % spec.p() == 0 {
        return precondition("the trace form is degenerate on sl_n when p | n");
    }
    Ok(())
}

/// Exponents of `φ_y` (conductor `p`) on the Lie elements `xs`.
fn phi_exps(alg: &LieAlgebra, xs: &[LieElem], y: &LieElem) -> Vec<u32> {
    let f = alg.field();
    xs.iter().map(|x| f.abs_trace(alg.trace_form(x, y))).collect()
}

/// `φ_y` as a character of the last congruence kernel of `spec`.
pub fn phi_y(y: &LieElem, spec: &GroupSpec, budget: u128) -> Result<LinearCharacter> {
    check_condition(spec)?;
    let alg = LieAlgebra::new(spec)?;
    let k = Arc::new(congruence_kernel(spec, spec.r - 1, budget)?);
    let xs = k
        .elements()
        .iter()
        .map(|m| alg.from_kernel(k.space(), m))
        .collect::<Result<Vec<_>>>()?;
    LinearCharacter::new(k, spec.p(), phi_exps(&alg, &xs, y))
}

#[derive(Clone, Debug, Serialize)]
pub struct BijectionReport {
    pub spec: String,
    pub algebra_size: usize,
    pub adjoint_orbits: usize,
    pub character_orbits: usize,
    /// `y ↦ φ_y` is injective, hence onto the dual of the kernel.
    pub injective: bool,
    /// Every `φ_y` is a homomorphism.
    pub homomorphisms: bool,
    /// `φ_{gyg^{-1}}(x) = φ_y(g^{-1}xg)` for generators `g`.
    pub equivariant: bool,
    /// Adjoint orbits map onto character orbits.
    pub orbits_match: bool,
    pub zero_to_trivial: bool,
}

impl BijectionReport {
    pub fn passed(&self) -> bool {
        self.injective
            && self.homomorphisms
            && self.equivariant
            && self.orbits_match
            && self.zero_to_trivial
            && self.adjoint_orbits == self.character_orbits
    }
}

/// Shared data for `Ω′` on one group: the kernel, its Lie elements, the
/// adjoint orbits, and per-`y` class sums of `φ_y`.
pub struct Dictionary {
    pub spec: GroupSpec,
    pub algebra: LieAlgebra,
    pub partition: OrbitPartition,
    pub group: Arc<MatrixGroup>,
    pub kernel: Arc<MatrixGroup>,
    /// Lie element of each kernel element.
    pub kernel_elems: Vec<LieElem>,
    /// `𝔤^F` in code order.
    pub ys: Vec<LieElem>,
    kernel_classes: Vec<usize>,
    /// `sums[y][c] = Σ_{x ∈ K ∩ C_c} conj φ_y(x)`.
    sums: Vec<Vec<CyclotomicNumber>>,
    y_index: FxHashMap<u64, usize>,
}

/// `Ω′(σ)` with its Clifford data.
#[derive(Clone, Debug, Serialize)]
pub struct OmegaPrime {
    pub orbit: usize,
    pub rep_code: u64,
    pub multiplicity: i128,
    pub orbit_size: usize,
    pub nilpotent: bool,
    pub regular: bool,
    pub semisimple: bool,
}

impl Dictionary {
    pub fn new(spec: &GroupSpec, group: Arc<MatrixGroup>, budget: u128) -> Result<Self> {
        check_condition(spec)?;
        let algebra = LieAlgebra::new(spec)?;
        let partition = OrbitPartition::compute(spec, budget)?;
        let kernel = Arc::new(congruence_kernel(spec, spec.r - 1, budget)?);
        let kernel_elems = kernel
            .elements()
            .iter()
            .map(|m| algebra.from_kernel(kernel.space(), m))
            .collect::<Result<Vec<_>>>()?;
        let ys = algebra.elements(budget)?;
        let gc = group.classes();
        let kidx = kernel.indices_in(&group)?;
        let mut kernel_classes: Vec<usize> = kidx.iter().map(|&i| gc.class_of[i] as usize).collect();
        kernel_classes.sort_unstable();
        kernel_classes.dedup();
        let pos: FxHashMap<usize, usize> = kernel_classes.iter().enumerate().map(|(i, &c)| (c, i)).collect();
        let slot: Vec<usize> = kidx.iter().map(|&i| pos[&(gc.class_of[i] as usize)]).collect();
        let p = spec.p();
        let sums = ys
            .par_iter()
            .map(|y| {
                let exps = phi_exps(&algebra, &kernel_elems, y);
                let mut counts = vec![vec![0i64; p as usize]; kernel_classes.len()];
                for (x, &e) in exps.iter().enumerate() {
                    counts[slot[x]][((p - e) % p) as usize] += 1;
                }
                counts.iter().map(|c| CyclotomicNumber::from_root_counts(p, c)).collect()
            })
            .collect();
        let y_index = ys.iter().enumerate().map(|(i, y)| (algebra.code(y), i)).collect();
        Ok(Dictionary {
            spec: spec.clone(),
            algebra,
            partition,
            group,
            kernel,
            kernel_elems,
            ys,
            kernel_classes,
            sums,
            y_index,
        })
    }

    pub fn phi(&self, y: &LieElem) -> LinearCharacter {
        LinearCharacter::new_unchecked(self.kernel.clone(), self.spec.p(), phi_exps(&self.algebra, &self.kernel_elems, y))
    }

    /// `⟨Res_K σ, φ_y⟩_K` for every `y`, in the order of [`Self::ys`].
    pub fn kernel_multiplicities(&self, sigma: &ClassFunction) -> Result<Vec<i128>> {
        if !Arc::ptr_eq(sigma.group(), &self.group) {
            return crate::error::invalid("class function lives on another group");
        }
        let korder = self.kernel.order() as i128;
        self.sums
            .par_iter()
            .map(|row| {
                let total = row
                    .iter()
                    .zip(&self.kernel_classes)
                    .fold(CyclotomicNumber::zero(1), |acc, (s, &c)| &acc + &(sigma.value(c) * s));
                let v = total.scale(1, korder);
                v.as_integer()
                    .ok_or_else(|| Error::Verification(format!("kernel multiplicity {v} is not an integer")))
            })
            .collect()
    }

    /// `Ω′(σ)`: the kernel constituents of `σ` form one orbit with uniform
    /// multiplicity, and this returns that orbit.
    pub fn omega_prime(&self, sigma: &ClassFunction) -> Result<OmegaPrime> {
        let norm = inner_product(sigma, sigma)?;
        if norm != CyclotomicNumber::one(1) {
            return precondition(format!("Ω′ needs an irreducible character, ⟨σ,σ⟩ = {norm}"));
        }
        let mults = self.kernel_multiplicities(sigma)?;
        let support: Vec<usize> = (0..mults.len()).filter(|&i| mults[i] != 0).collect();
        let Some(&first) = support.first() else {
            return Err(Error::Verification("restriction to the kernel vanishes".into()));
        };
        let e = mults[first];
        let orbit = self
            .partition
            .orbit_of(&self.ys[first])
            .ok_or_else(|| Error::Verification("constituent outside the orbit partition".into()))?;
        let o = &self.partition.orbits[orbit];
        let codes: FxHashSet<u64> = support.iter().map(|&i| self.algebra.code(&self.ys[i])).collect();
        if codes.len() != o.len() || !o.members.iter().all(|c| codes.contains(c)) {
            return Err(Error::Verification("kernel constituents are not a single orbit".into()));
        }
        if support.iter().any(|&i| mults[i] != e) || e < 0 {
            return Err(Error::Verification("kernel multiplicities are not uniform".into()));
        }
        if sigma.degree_int() != Some(e * o.len() as i128) {
            return Err(Error::Verification("degree is not e·|orbit|".into()));
        }
        Ok(OmegaPrime {
            orbit,
            rep_code: o.members[0],
            multiplicity: e,
            orbit_size: o.len(),
            nilpotent: o.class.nilpotent,
            regular: o.class.regular,
            semisimple: o.class.semisimple,
        })
    }

    /// `Ψ_O = Σ_{y ∈ O} φ_y` as a class function on the kernel.
    pub fn orbit_sum(&self, orbit: usize) -> Result<ClassFunction> {
        let o = &self.partition.orbits[orbit];
        let p = self.spec.p();
        let cl = self.kernel.classes();
        let mut counts = vec![vec![0i64; p as usize]; cl.len()];
        for &c in &o.members {
            let y = &self.ys[self.y_index[&c]];
            for (cls, &rep) in cl.reps.iter().enumerate() {
                let e = self.algebra.field().abs_trace(self.algebra.trace_form(&self.kernel_elems[rep], y));
                counts[cls][e as usize] += 1;
            }
        }
        ClassFunction::new(self.kernel.clone(), counts.iter().map(|c| CyclotomicNumber::from_root_counts(p, c)).collect())
    }
}

/// `Ω′` of an irreducible character via a prepared [`Dictionary`].
pub fn omega_prime(sigma: &ClassFunction, dict: &Dictionary) -> Result<OmegaPrime> {
    dict.omega_prime(sigma)
}

/// Checks that `y ↦ φ_y` is an equivariant isomorphism inducing a
/// bijection between adjoint orbits and character orbits.
pub fn orbit_character_bijection(spec: &GroupSpec, budget: u128) -> Result<BijectionReport> {
    check_condition(spec)?;
    let alg = LieAlgebra::new(spec)?;
    let partition = OrbitPartition::compute(spec, budget)?;
    let kernel = Arc::new(congruence_kernel(spec, spec.r - 1, budget)?);
    let xs = kernel
        .elements()
        .iter()
        .map(|m| alg.from_kernel(kernel.space(), m))
        .collect::<Result<Vec<_>>>()?;
    let x_index: FxHashMap<u64, usize> = xs.iter().enumerate().map(|(i, x)| (alg.code(x), i)).collect();
    let ys = alg.elements(budget)?;
    let chars: Vec<Vec<u32>> = ys.par_iter().map(|y| phi_exps(&alg, &xs, y)).collect();
    let char_index: FxHashMap<&[u32], usize> = chars.iter().enumerate().map(|(i, c)| (c.as_slice(), i)).collect();
    let injective = char_index.len() == ys.len() && ys.len() == kernel.order();
    let homomorphisms = chars
        .iter()
        .all(|c| LinearCharacter::new(kernel.clone(), spec.p(), c.clone()).is_ok());
    let g1 = enumerate(&spec.with_level(1), budget)?;
    let gens: Vec<(Vec<_>, Vec<_>)> = g1
        .generators()
        .into_iter()
        .map(|g| (g1.element(g).data().to_vec(), g1.element(g1.inv(g)).data().to_vec()))
        .collect();
    // g^{-1} x g as a permutation of the kernel, per generator
    let actions: Vec<Vec<usize>> = gens
        .iter()
        .map(|(g, gi)| xs.iter().map(|x| x_index[&alg.code(&alg.conjugate(gi, g, x))]).collect())
        .collect();
    let mut equivariant = true;
    for ((g, gi), act) in gens.iter().zip(&actions) {
        for (yi, y) in ys.iter().enumerate() {
            let gy = alg.conjugate(g, gi, y);
            let lhs = &chars[char_index_of(&alg, &ys, &gy)];
            equivariant &= (0..xs.len()).all(|x| lhs[x] == chars[yi][act[x]]);
        }
    }
    // orbits of the generators on characters, independently of the Lie side
    let mut char_orbit = vec![usize::MAX; chars.len()];
    let mut character_orbits = 0;
    for start in 0..chars.len() {
        if char_orbit[start] != usize::MAX {
            continue;
        }
        char_orbit[start] = character_orbits;
        let mut stack = vec![start];
        while let Some(c) = stack.pop() {
            for act in &actions {
                let moved: Vec<u32> = (0..xs.len()).map(|x| chars[c][act[x]]).collect();
                let d = char_index[moved.as_slice()];
                if char_orbit[d] == usize::MAX {
                    char_orbit[d] = character_orbits;
                    stack.push(d);
                }
            }
        }
        character_orbits += 1;
    }
    let orbits_match = partition.orbits.iter().all(|o| {
        let ids: FxHashSet<usize> = o
            .members
            .iter()
            .map(|&c| char_orbit[char_index_of(&alg, &ys, &alg.decode(c))])
            .collect();
        ids.len() == 1 && char_orbit.iter().filter(|&&k| Some(&k) == ids.iter().next()).count() == o.len()
    });
    let zero_to_trivial = chars[0].iter().all(|&e| e == 0);
    Ok(BijectionReport {
        spec: spec.to_string(),
        algebra_size: ys.len(),
        adjoint_orbits: partition.len(),
        character_orbits,
        injective,
        homomorphisms,
        equivariant,
        orbits_match,
        zero_to_trivial,
    })
}

fn char_index_of(alg: &LieAlgebra, ys: &[LieElem], y: &LieElem) -> usize {
    let c = alg.code(y);
    ys.binary_search_by_key(&c, |v| alg.code(v)).expect("element of the algebra")
}

/// `Ind_{(B^{r-1})^F}^{K} 1 = Σ_{y strictly upper} φ_y` on the kernel `K`.
pub fn induced_trivial_is_upper_sum(spec: &GroupSpec, budget: u128) -> Result<bool> {
    check_condition(spec)?;
    let alg = LieAlgebra::new(spec)?;
    let kernel = Arc::new(congruence_kernel(spec, spec.r - 1, budget)?);
    let b = Arc::new(named::borel_kernel(spec, spec.r - 1, budget)?);
    let induced = ClassFunction::trivial(b).induce(&kernel)?;
    let xs = kernel
        .elements()
        .iter()
        .map(|m| alg.from_kernel(kernel.space(), m))
        .collect::<Result<Vec<_>>>()?;
    let mut sum = ClassFunction::zero(kernel.clone());
    for y in alg.elements(budget)?.iter().filter(|y| alg.is_strictly_upper(y)) {
        let phi = LinearCharacter::new_unchecked(kernel.clone(), spec.p(), phi_exps(&alg, &xs, y));
        sum = sum.add(&phi.to_class_function())?;
    }
    Ok(sum == induced)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chars::CharacterTable;
    use crate::groups::DEFAULT_BUDGET;

    #[test]
    fn phi_examples() {
        let spec = GroupSpec::gl(2, 2, 2);
        let alg = LieAlgebra::new(&spec).unwrap();
        assert!(phi_y(&alg.zero(), &spec, DEFAULT_BUDGET).unwrap().is_trivial());
        let gl1 = GroupSpec::gl(1, 2, 2);
        let a1 = LieAlgebra::new(&gl1).unwrap();
        let phi = phi_y(&a1.scalar(1), &gl1, DEFAULT_BUDGET).unwrap();
        assert!(!phi.is_trivial());
        assert_eq!(phi.order(), 2);
        assert!(phi_y(&alg.zero(), &GroupSpec::sl(2, 2, 2), DEFAULT_BUDGET).is_err());
    }

    #[test]
    fn bijections() {
        for spec in [GroupSpec::gl(2, 2, 2), GroupSpec::sl(2, 3, 2), GroupSpec::gl(2, 3, 2)] {
            let rep = orbit_character_bijection(&spec, DEFAULT_BUDGET).unwrap();
            assert!(rep.passed(), "{rep:?}");
        }
        let rep = orbit_character_bijection(&GroupSpec::sl(2, 3, 2), DEFAULT_BUDGET).unwrap();
        assert_eq!(rep.algebra_size, 27);
    }

    #[test]
    fn upper_sum_identity() {
        for spec in [GroupSpec::gl(2, 2, 2), GroupSpec::gl(2, 3, 2), GroupSpec::sl(2, 3, 2), GroupSpec::gl(3, 2, 2)] {
            assert!(induced_trivial_is_upper_sum(&spec, DEFAULT_BUDGET).unwrap(), "{spec}");
        }
    }

    #[test]
    fn omega_prime_on_order_96() {
        let spec = GroupSpec::gl(2, 2, 2);
        let g = Arc::new(enumerate(&spec, DEFAULT_BUDGET).unwrap());
        let table = CharacterTable::compute(g.clone(), 10_000).unwrap();
        let dict = Dictionary::new(&spec, g.clone(), DEFAULT_BUDGET).unwrap();
        let triv = dict.omega_prime(&table.irreducibles()[0]).unwrap();
        assert_eq!(triv.rep_code, 0);
        for sigma in table.irreducibles() {
            let om = dict.omega_prime(sigma).unwrap();
            assert!(om.multiplicity >= 1);
            if sigma.degree_int() == Some(1) {
                let rep = dict.algebra.decode(om.rep_code);
                assert!(dict.algebra.is_scalar(&rep));
            }
        }
    }
}
