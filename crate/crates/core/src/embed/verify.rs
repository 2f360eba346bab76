//! Checks of the four explicit flags against their closed-form stabilizers.

use serde::Serialize;

use super::flag::{case1_partials, flag_case1, flag_case2, flag_regular, flag_standard_dl, Flag};
use super::stabilizer::{stabilizer_in, stabilizer_linear, FlagStabilizer};
use crate::error::{precondition, Result};
use crate::groups::named::{self, Cell, Pattern};
use crate::groups::{enumerate, GroupSpec, MatrixGroup};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FlagKind {
    StandardDl,
    Case1,
    Case2,
    Regular,
}

impl FlagKind {
    pub const ALL: [FlagKind; 4] = [FlagKind::StandardDl, FlagKind::Case1, FlagKind::Case2, FlagKind::Regular];

    pub fn applies(&self, r: usize) -> bool {
        match self {
            FlagKind::Case1 => r >= 3,
            FlagKind::Case2 => r == 2,
            _ => true,
        }
    }

    pub fn build(&self, spec: &GroupSpec) -> Result<Flag> {
        let f = spec.point_field()?;
        match self {
            FlagKind::StandardDl => flag_standard_dl(f, spec.n, spec.r),
            FlagKind::Case1 => flag_case1(f, spec.n, spec.r),
            FlagKind::Case2 => flag_case2(f, spec.n, spec.r),
            FlagKind::Regular => flag_regular(f, spec.n, spec.r),
        }
    }

    /// Closed forms `(B_F, U_F)`.
    pub fn expected(&self, spec: &GroupSpec, budget: u128) -> Result<(MatrixGroup, MatrixGroup)> {
        Ok(match self {
            FlagKind::StandardDl => {
                let u = named::unipotent(spec, budget)?;
                (named::torus_level1(spec, budget)?.product(&u, "T_1·U"), u)
            }
            FlagKind::Case1 => (
                named::torus_level1_borel_kernel(spec, budget)?,
                named::borel_kernel(spec, spec.r - 1, budget)?,
            ),
            FlagKind::Case2 => (
                named::torus_level1_last_column(spec, budget)?,
                named::last_column_kernel(spec, budget)?,
            ),
            FlagKind::Regular => (named::borel_level1(spec, budget)?, named::unipotent_level1(spec, budget)?),
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct FlagReport {
    pub kind: FlagKind,
    pub spec: String,
    pub stabilizer_order: usize,
    pub expected_order: usize,
    pub stabilizer_matches: bool,
    pub radical_order: usize,
    pub radical_matches: bool,
    pub admissible: bool,
    pub frobenius_stable: bool,
    /// Extra structural checks (partial flags, containments), by name.
    pub extra: Vec<(String, bool)>,
}

impl FlagReport {
    pub fn passed(&self) -> bool {
        self.stabilizer_matches
            && self.radical_matches
            && self.admissible
            && self.frobenius_stable
            && self.extra.iter().all(|(_, ok)| *ok)
    }
}

/// Points of the stabilizer of `F′`: `A_0` lower triangular, `A_1 = ... =
/// A_{r-2} = 0`, `A_{r-1}` arbitrary.
pub fn case1_prime_closed_form(spec: &GroupSpec, budget: u128) -> Result<MatrixGroup> {
    let r = spec.r;
    Pattern::identity(spec)
        .set_where(|l, i, j| l == 0 && i > j, Cell::Free)
        .set_where(|l, i, j| l == 0 && i == j, Cell::NonZero)
        .set_where(|l, _, _| l == r - 1, Cell::Free)
        .group("F′ closed form", budget)
}

/// Builds the flag, computes its stabilizer in `g` and compares with the closed forms.
pub fn verify_flag(kind: FlagKind, spec: &GroupSpec, g: &MatrixGroup, budget: u128) -> Result<FlagReport> {
    verify_flag_with(kind, spec, budget, |flag| stabilizer_in(flag, g, spec.p() as usize))
}

/// As [`verify_flag`], with stabilizers from the linear description, so
/// that the group itself is never enumerated.
pub fn verify_flag_linear(kind: FlagKind, spec: &GroupSpec, budget: u128) -> Result<FlagReport> {
    verify_flag_with(kind, spec, budget, |flag| stabilizer_linear(flag, spec, budget))
}

fn verify_flag_with(
    kind: FlagKind,
    spec: &GroupSpec,
    budget: u128,
    stab: impl Fn(&Flag) -> Result<FlagStabilizer>,
) -> Result<FlagReport> {
    if !kind.applies(spec.r) {
        return precondition(format!("{kind:?} flag does not exist at r = {}", spec.r));
    }
    let flag = kind.build(spec)?;
    let st = stab(&flag)?;
    let (b, u) = kind.expected(spec, budget)?;
    let mut extra = Vec::new();
    match kind {
        FlagKind::Case1 => {
            let [f1, _, _] = case1_partials(spec.point_field()?, spec.n, spec.r)?;
            let s1 = stab(&f1)?;
            extra.push(("partial_flag_closed_form".into(), s1.stabilizer.same_elements(&case1_prime_closed_form(spec, budget)?)));
        }
        FlagKind::Case2 => {
            let b1 = named::borel_kernel(spec, 1, budget)?;
            extra.push(("radical_in_B1".into(), st.unipotent_radical.is_subset_of(&b1)));
        }
        _ => {}
    }
    Ok(FlagReport {
        kind,
        spec: spec.to_string(),
        stabilizer_order: st.stabilizer.order(),
        expected_order: b.order(),
        stabilizer_matches: st.stabilizer.same_elements(&b),
        radical_order: st.unipotent_radical.order(),
        radical_matches: st.unipotent_radical.same_elements(&u),
        admissible: st.admissible,
        frobenius_stable: st.stabilizer.is_frobenius_stable() && st.unipotent_radical.is_frobenius_stable(),
        extra,
    })
}

/// Every applicable flag for `spec`. Stabilizers come from scanning the
/// group when it fits in `budget`, else from the linear description.
pub fn verify_all_flags(spec: &GroupSpec, budget: u128) -> Result<Vec<FlagReport>> {
    let kinds = FlagKind::ALL.iter().filter(|k| k.applies(spec.r));
    match enumerate(spec, budget) {
        Ok(g) => kinds.map(|&k| verify_flag(k, spec, &g, budget)).collect(),
        Err(crate::Error::Budget { .. }) => kinds.map(|&k| verify_flag_linear(k, spec, budget)).collect(),
        Err(e) => Err(e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{Family, DEFAULT_BUDGET};

    #[test]
    fn all_flags_small_specs() {
        for spec in [
            GroupSpec::gl(2, 2, 2),
            GroupSpec::gl(2, 2, 3),
            GroupSpec::sl(2, 3, 2),
            GroupSpec::gl(2, 2, 1),
            GroupSpec::new(Family::GL, 2, 2, 2, 2).unwrap(),
        ] {
            let reports = verify_all_flags(&spec, DEFAULT_BUDGET).unwrap();
            for rep in &reports {
                assert!(rep.passed(), "{rep:?}");
            }
        }
    }

    #[test]
    fn linear_verification_beyond_enumeration() {
        let spec = GroupSpec::gl(3, 3, 2);
        assert!(enumerate(&spec, DEFAULT_BUDGET).is_err());
        let rep = verify_flag_linear(FlagKind::Case2, &spec, DEFAULT_BUDGET).unwrap();
        assert!(rep.passed(), "{rep:?}");
    }

    #[test]
    fn case2_sizes() {
        let spec = GroupSpec::gl(2, 2, 2);
        let g = enumerate(&spec, DEFAULT_BUDGET).unwrap();
        let rep = verify_flag(FlagKind::Case2, &spec, &g, DEFAULT_BUDGET).unwrap();
        assert_eq!(rep.stabilizer_order, 1 * 4);
        let rep = verify_flag(FlagKind::Regular, &spec, &g, DEFAULT_BUDGET).unwrap();
        assert_eq!(rep.stabilizer_order, 2);
        assert!(verify_flag(FlagKind::Case1, &spec, &g, DEFAULT_BUDGET).is_err());
    }
}
