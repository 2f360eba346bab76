//! Flag stabilizers by scanning the group, with the p-core as unipotent radical.

use std::sync::Arc;

use rayon::prelude::*;

use super::flag::Flag;
use super::{apply, embed_matrix};
use crate::arith::linalg::{in_span, nullspace};
use crate::arith::Fe;
use crate::error::{invalid, Error, Result};
use crate::groups::algo::p_core;
use crate::groups::enumerate::in_family;
use crate::groups::{enumerate, GroupSpec, Mat, MatSpace, MatrixGroup};

/// Stabilizer `B_F` of a flag and its p-core `U_F`.
#[derive(Debug)]
pub struct FlagStabilizer {
    pub stabilizer: MatrixGroup,
    pub unipotent_radical: MatrixGroup,
    /// `U_F ≠ 1`.
    pub admissible: bool,
}

/// Whether the embedded action of `g` maps every subspace of `flag` into itself.
pub fn stabilizes(space: &MatSpace, flag: &Flag, g: &Mat) -> bool {
    let e = embed_matrix(space, g);
    let f = space.field();
    let subs = flag.subspaces();
    subs[1..subs.len() - 1]
        .iter()
        .all(|basis| basis.iter().all(|v| in_span(f, basis, &apply(space, &e, v))))
}

/// The stabilizer of `flag` inside an explicit group.
pub fn stabilizer_in(flag: &Flag, group: &MatrixGroup, p: usize) -> Result<FlagStabilizer> {
    let space = group.space();
    if !Arc::ptr_eq(flag.field(), space.field()) || flag.n() != space.n() || flag.r() != space.level() {
        return invalid("flag and group live over different spaces");
    }
    let elems: Vec<Mat> = group
        .elements()
        .par_iter()
        .filter(|g| stabilizes(space, flag, g))
        .cloned()
        .collect();
    let stab = MatrixGroup::from_elements(space.clone(), format!("Stab in {}", group.name()), elems);
    let core = p_core(&stab, p)?;
    let admissible = core.order() > 1;
    Ok(FlagStabilizer { stabilizer: stab, unipotent_radical: core, admissible })
}

/// The stabilizer of `flag` in the group of `spec`, subject to `budget`.
pub fn stabilizer(flag: &Flag, spec: &GroupSpec, budget: u128) -> Result<FlagStabilizer> {
    let g = enumerate(spec, budget)?;
    stabilizer_in(flag, &g, spec.p() as usize)
}

/// The stabilizer as the unit group of `{A : e(A)V ⊆ V for every V}`, an
/// `F`-subspace of `M_n(W)` cut out by linear equations. Only the
/// subalgebra is enumerated, so `budget` bounds its size.
pub fn stabilizer_linear(flag: &Flag, spec: &GroupSpec, budget: u128) -> Result<FlagStabilizer> {
    let space = spec.space()?;
    if !Arc::ptr_eq(flag.field(), space.field()) || flag.n() != spec.n || flag.r() != spec.r {
        return invalid("flag and group live over different spaces");
    }
    let f = space.field().clone();
    let dim = flag.dim();
    let npos = space.len();
    let units: Vec<Vec<Fe>> = (0..npos)
        .map(|k| {
            let mut e = space.zero();
            e.0[k] = 1;
            embed_matrix(&space, &e)
        })
        .collect();
    let subs = flag.subspaces();
    let mut eqs = Vec::new();
    for basis in &subs[1..subs.len() - 1] {
        for w in nullspace(&f, basis.clone(), dim) {
            for v in basis {
                eqs.push(
                    units
                        .iter()
                        .map(|e| {
                            let ev = apply(&space, e, v);
                            w.iter().zip(&ev).fold(0, |acc, (&a, &b)| f.add(acc, f.mul(a, b)))
                        })
                        .collect::<Vec<Fe>>(),
                );
            }
        }
    }
    let basis = nullspace(&f, eqs, npos);
    let q = f.size() as u128;
    let size = q.checked_pow(basis.len() as u32).unwrap_or(u128::MAX);
    if size > budget {
        return Err(Error::Budget { what: "stabilizing subalgebra".into(), needed: size, budget });
    }
    let elems: Vec<Mat> = (0..size)
        .into_par_iter()
        .filter_map(|mut c| {
            let mut m = space.zero();
            for b in &basis {
                let coef = (c % q) as Fe;
                c /= q;
                if coef != 0 {
                    for (x, &y) in m.0.iter_mut().zip(b) {
                        *x = f.add(*x, f.mul(coef, y));
                    }
                }
            }
            in_family(&space, spec.family, &m).then_some(m)
        })
        .collect();
    let stab = MatrixGroup::from_elements(space.clone(), format!("Stab in {spec}"), elems);
    let core = p_core(&stab, spec.p() as usize)?;
    let admissible = core.order() > 1;
    Ok(FlagStabilizer { stabilizer: stab, unipotent_radical: core, admissible })
}

#[cfg(test)]
mod tests {
    use super::super::flag::*;
    use super::*;
    use crate::groups::{named, DEFAULT_BUDGET};

    #[test]
    fn standard_flag_at_level_one_is_classical() {
        let spec = GroupSpec::gl(2, 2, 1);
        let f = spec.point_field().unwrap();
        let st = stabilizer(&flag_standard_dl(f, 2, 1).unwrap(), &spec, DEFAULT_BUDGET).unwrap();
        assert!(st.stabilizer.same_elements(&named::borel_level1(&spec, DEFAULT_BUDGET).unwrap()));
        assert!(st.unipotent_radical.same_elements(&named::unipotent_level1(&spec, DEFAULT_BUDGET).unwrap()));
        assert!(st.admissible);
    }

    #[test]
    fn standard_flag_r2() {
        let spec = GroupSpec::gl(2, 2, 2);
        let f = spec.point_field().unwrap();
        let st = stabilizer(&flag_standard_dl(f, 2, 2).unwrap(), &spec, DEFAULT_BUDGET).unwrap();
        let t1u = named::torus_level1(&spec, DEFAULT_BUDGET)
            .unwrap()
            .product(&named::unipotent(&spec, DEFAULT_BUDGET).unwrap(), "T_1 U");
        assert!(st.stabilizer.same_elements(&t1u));
        st.stabilizer.verify_closure().unwrap();
        assert!(st.stabilizer.is_frobenius_stable());
    }

    #[test]
    fn linear_method_matches_scan() {
        for spec in [GroupSpec::gl(2, 2, 2), GroupSpec::sl(2, 3, 2), GroupSpec::gl(2, 2, 3)] {
            let f = spec.point_field().unwrap();
            let g = enumerate(&spec, DEFAULT_BUDGET).unwrap();
            for (i, flag) in [
                flag_standard_dl(f.clone(), spec.n, spec.r).unwrap(),
                flag_regular(f.clone(), spec.n, spec.r).unwrap(),
                Flag::random(f.clone(), spec.n, spec.r, 11).unwrap(),
            ]
            .iter()
            .enumerate()
            {
                let a = stabilizer_in(flag, &g, spec.p() as usize).unwrap();
                let b = stabilizer_linear(flag, &spec, DEFAULT_BUDGET).unwrap();
                assert!(a.stabilizer.same_elements(&b.stabilizer), "{spec} flag {i}");
                assert!(a.unipotent_radical.same_elements(&b.unipotent_radical));
            }
        }
    }

    #[test]
    fn random_flag_verdict_is_recorded() {
        let spec = GroupSpec::gl(2, 2, 2);
        let f = spec.point_field().unwrap();
        let st = stabilizer(&Flag::random(f, 2, 2, 3).unwrap(), &spec, DEFAULT_BUDGET).unwrap();
        st.stabilizer.verify_closure().unwrap();
        assert_eq!(st.admissible, st.unipotent_radical.order() > 1);
    }
}
