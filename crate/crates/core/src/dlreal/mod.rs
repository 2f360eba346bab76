//! Split realizations `R_{F,C}^θ = Ind_{(C·U_F)^F}^{G^F} θ̃` and the
//! representation-theoretic checks built on them.

pub mod gelfand;
pub mod invariant;
pub mod nilpotent;
pub mod shift;

pub use gelfand::{gelfand_graev, verify_gelfand_graev, verify_regular_coverage, GelfandGraevDatum};
pub use invariant::{invariant_characters, verify_section6_identity};
pub use nilpotent::{nilpotent_reps, verify_non_nilpotency};
pub use shift::verify_orbit_shift;

use std::sync::{Arc, OnceLock};

use crate::chars::table::TABLE_BUDGET;
use crate::chars::{CharacterTable, ClassFunction, LinearCharacter};
use crate::embed::stabilizer::stabilizer_in;
use crate::embed::Flag;
use crate::error::{invalid, precondition, Result};
use crate::groups::algo::normalizes;
use crate::groups::{enumerate, GroupSpec, MatrixGroup};
use crate::liealg::dictionary::{Dictionary, OmegaPrime};

/// A group with its lazily built character table and `Ω′` data.
pub struct Context {
    pub spec: GroupSpec,
    pub budget: u128,
    pub table_budget: u128,
    pub group: Arc<MatrixGroup>,
    table: OnceLock<Arc<CharacterTable>>,
    dictionary: OnceLock<Arc<Dictionary>>,
    omegas: OnceLock<Arc<Vec<OmegaPrime>>>,
}

impl Context {
    pub fn new(spec: &GroupSpec, budget: u128) -> Result<Self> {
        let group = Arc::new(enumerate(spec, budget)?);
        Ok(Context {
            spec: spec.clone(),
            budget,
            table_budget: TABLE_BUDGET,
            group,
            table: OnceLock::new(),
            dictionary: OnceLock::new(),
            omegas: OnceLock::new(),
        })
    }

    pub fn with_table_budget(mut self, b: u128) -> Self {
        self.table_budget = b;
        self
    }

    /// Installs a table built elsewhere (for example, loaded from a cache).
    pub fn set_table(&self, t: CharacterTable) -> Result<()> {
        if !Arc::ptr_eq(t.group(), &self.group) {
            return invalid("table belongs to another group");
        }
        let _ = self.table.set(Arc::new(t));
        Ok(())
    }

    pub fn table(&self) -> Result<Arc<CharacterTable>> {
        if let Some(t) = self.table.get() {
            return Ok(t.clone());
        }
        let t = Arc::new(CharacterTable::compute(self.group.clone(), self.table_budget)?);
        Ok(self.table.get_or_init(|| t).clone())
    }

    pub fn dictionary(&self) -> Result<Arc<Dictionary>> {
        if let Some(d) = self.dictionary.get() {
            return Ok(d.clone());
        }
        let d = Arc::new(Dictionary::new(&self.spec, self.group.clone(), self.budget)?);
        Ok(self.dictionary.get_or_init(|| d).clone())
    }

    /// `Ω′` of every irreducible, in table order.
    pub fn omegas(&self) -> Result<Arc<Vec<OmegaPrime>>> {
        if let Some(o) = self.omegas.get() {
            return Ok(o.clone());
        }
        let table = self.table()?;
        let dict = self.dictionary()?;
        let v = table
            .irreducibles()
            .iter()
            .map(|s| dict.omega_prime(s))
            .collect::<Result<Vec<_>>>()?;
        Ok(self.omegas.get_or_init(|| Arc::new(v)).clone())
    }

    /// Shares a subgroup after checking containment.
    pub fn subgroup(&self, h: MatrixGroup) -> Result<Arc<MatrixGroup>> {
        if !h.is_subset_of(&self.group) {
            return invalid(format!("{} is not inside {}", h.name(), self.group.name()));
        }
        Ok(Arc::new(h))
    }

    /// `Ind_H^G 1`.
    pub fn induced_trivial(&self, h: MatrixGroup) -> Result<ClassFunction> {
        ClassFunction::trivial(self.subgroup(h)?).induce(&self.group)
    }
}

/// `C·U` with `C ∩ U = 1`, `C` normalizing `U`, and the `C`-component of
/// every element, so that characters of `C` inflate to `C·U`.
pub struct SplitRealization {
    pub group: Arc<MatrixGroup>,
    pub cartan: Arc<MatrixGroup>,
    pub radical: Arc<MatrixGroup>,
    pub product: Arc<MatrixGroup>,
    cartan_part: Vec<usize>,
}

impl SplitRealization {
    pub fn new(group: Arc<MatrixGroup>, cartan: Arc<MatrixGroup>, radical: Arc<MatrixGroup>) -> Result<Self> {
        if !radical.is_frobenius_stable() {
            return precondition("U_F is not F-stable; only split realizations are evaluated");
        }
        if !normalizes(&cartan, &radical) {
            return invalid(format!("{} does not normalize {}", cartan.name(), radical.name()));
        }
        if cartan.intersection(&radical, "C∩U").order() != 1 {
            return invalid("C and U_F intersect nontrivially");
        }
        let product = Arc::new(cartan.product(&radical, format!("{}·{}", cartan.name(), radical.name())));
        if !product.is_subset_of(&group) {
            return invalid("C·U_F is not inside the group");
        }
        let s = product.space().clone();
        let cinv: Vec<_> = cartan.elements().iter().map(|c| s.inverse(c).expect("invertible")).collect();
        let cartan_part = product
            .elements()
            .iter()
            .map(|x| {
                (0..cartan.order())
                    .find(|&c| radical.contains(&s.mul(&cinv[c], x)))
                    .expect("every element of C·U factors")
            })
            .collect();
        Ok(SplitRealization { group, cartan, radical, product, cartan_part })
    }

    /// `θ̃(cu) = θ(c)`.
    pub fn inflate(&self, theta: &LinearCharacter) -> Result<LinearCharacter> {
        if !Arc::ptr_eq(theta.group(), &self.cartan) {
            return invalid("θ is not a character of the Cartan subgroup");
        }
        Ok(theta.pull_back(self.product.clone(), |i| self.cartan_part[i]))
    }

    /// `Ind_{C·U}^G θ̃`.
    pub fn character(&self, theta: &LinearCharacter) -> Result<ClassFunction> {
        self.inflate(theta)?.to_class_function().induce(&self.group)
    }

    /// `Σ_θ Ind_{C·U}^G θ̃` over all characters of `C`.
    pub fn sum_over_characters(&self) -> Result<ClassFunction> {
        let all = crate::chars::linear_characters(&self.cartan)?;
        let mut acc = ClassFunction::zero(self.group.clone());
        for theta in &all {
            acc = acc.add(&self.character(theta)?)?;
        }
        Ok(acc)
    }
}

/// An admissible flag, a Cartan subgroup normalizing `U_F`, and `θ` on `C^F`.
pub struct AdmissibleTriple {
    pub flag: Flag,
    pub realization: SplitRealization,
    pub theta: LinearCharacter,
}

impl AdmissibleTriple {
    /// Computes `U_F` as the p-core of the flag stabilizer in `group`.
    pub fn new(flag: Flag, spec: &GroupSpec, group: Arc<MatrixGroup>, cartan: Arc<MatrixGroup>, theta: LinearCharacter) -> Result<Self> {
        let st = stabilizer_in(&flag, &group, spec.p() as usize)?;
        if !st.admissible {
            return precondition("flag is not admissible (U_F = 1)");
        }
        if !cartan.is_subset_of(&st.stabilizer) {
            return invalid("C is not inside the flag stabilizer");
        }
        let realization = SplitRealization::new(group, cartan, Arc::new(st.unipotent_radical))?;
        if !Arc::ptr_eq(theta.group(), &realization.cartan) {
            return invalid("θ is not a character of C");
        }
        Ok(AdmissibleTriple { flag, realization, theta })
    }
}

/// `R_{F,C}^θ` in the split case.
pub fn dl_split(triple: &AdmissibleTriple) -> Result<ClassFunction> {
    triple.realization.character(&triple.theta)
}
