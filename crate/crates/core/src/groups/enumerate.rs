//! Exhaustive enumeration of `GL_n(W)` and `SL_n(W)`.
//!
//! `GL_n(F)` is built column by column (each column outside the span of the
//! previous ones); `GL_n(W)` is then the set of all lifts `A_0 + π(...)`.
//! `SL_n(W)` is the image of the lifts of `SL_n(F)` under
//! `g ↦ g·diag(det(g)^{-1}, 1, ..., 1)`.


use super::group::MatrixGroup;
use super::matrix::{Mat, MatSpace};
use super::spec::{Family, GroupSpec};
use crate::arith::{Fe, GaloisField};
use crate::error::Result;

/// All invertible `n×n` matrices over `f`, row-major, in a fixed order.
pub fn gl_over_field(f: &GaloisField, n: usize) -> Vec<Vec<Fe>> {
    let q = f.size() as usize;
    let total = q.pow(n as u32);
    let vec_of = |mut idx: usize| -> Vec<Fe> {
        (0..n)
            .map(|_| {
                let c = (idx % q) as Fe;
                idx /= q;
                c
            })
            .collect()
    };
    let code_of = |v: &[Fe]| v.iter().rev().fold(0usize, |acc, &c| acc * q + c as usize);
    let mut out = Vec::new();
    // columns chosen so far, and the indicator of their span
    fn rec(
        f: &GaloisField,
        n: usize,
        total: usize,
        cols: &mut Vec<Vec<Fe>>,
        span: &[bool],
        vec_of: &dyn Fn(usize) -> Vec<Fe>,
        code_of: &dyn Fn(&[Fe]) -> usize,
        out: &mut Vec<Vec<Fe>>,
    ) {
        if cols.len() == n {
            let mut m = vec![0; n * n];
            for (j, c) in cols.iter().enumerate() {
                for i in 0..n {
                    m[i * n + j] = c[i];
                }
            }
            out.push(m);
            return;
        }
        for idx in 0..total {
            if span[idx] {
                continue;
            }
            let v = vec_of(idx);
            let mut next = vec![false; total];
            for s in (0..total).filter(|&s| span[s]) {
                let sv = vec_of(s);
                for lam in f.elements() {
                    let w: Vec<Fe> = sv.iter().zip(&v).map(|(&a, &b)| f.add(a, f.mul(lam, b))).collect();
                    next[code_of(&w)] = true;
                }
            }
            cols.push(v);
            rec(f, n, total, cols, &next, vec_of, code_of, out);
            cols.pop();
        }
    }
    let mut span = vec![false; total];
    span[0] = true;
    rec(f, n, total, &mut Vec::new(), &span, &vec_of, &code_of, &mut out);
    out
}

/// Calls `visit` on every determinant-one lift of `a0`, where `det a0 = 1`.
///
/// `det` is affine in each entry with slope the cofactor, so one entry per
/// level with a nonzero cofactor is solved for and the rest run free.
fn for_each_sl_lift(space: &MatSpace, a0: &[Fe], mut visit: impl FnMut(&Mat)) {
    let n = space.n();
    let nn = n * n;
    let f = space.field().clone();
    let q = f.size();
    let l1 = space.with_level(1).expect("level one");
    let base = l1.from_levels(&[a0]).expect("level-1 block");
    let d0 = l1.det(&base).coeffs[0];
    let (pivot, slope) = (0..nn)
        .find_map(|k| {
            let mut m = base.clone();
            m.0[k] = f.add(m.0[k], 1);
            let c = f.sub(l1.det(&m).coeffs[0], d0);
            (c != 0).then_some((k, c))
        })
        .expect("an invertible matrix has a nonzero cofactor");
    let inv_slope = f.inv(slope);
    let free: Vec<usize> = (1..space.level()).flat_map(|l| (0..nn).filter(move |&k| k != pivot).map(move |k| l * nn + k)).collect();
    let mut m = space.zero();
    m.0[..nn].copy_from_slice(a0);
    loop {
        for l in 1..space.level() {
            m.0[l * nn + pivot] = 0;
            let c = space.det(&m).coeffs[l];
            m.0[l * nn + pivot] = f.neg(f.mul(c, inv_slope));
        }
        visit(&m);
        let mut k = 0;
        loop {
            if k == free.len() {
                return;
            }
            let x = &mut m.0[free[k]];
            if (*x as u32) + 1 < q {
                *x += 1;
                break;
            }
            *x = 0;
            k += 1;
        }
    }
}

/// Calls `visit` on every lift of `a0` (all choices of `A_1, ..., A_{r-1}`).
fn for_each_lift(space: &MatSpace, a0: &[Fe], mut visit: impl FnMut(&Mat)) {
    let nn = space.n() * space.n();
    let free = space.len() - nn;
    let q = space.field().size();
    let mut m = space.zero();
    m.0[..nn].copy_from_slice(a0);
    loop {
        visit(&m);
        // odometer over the free coordinates
        let mut k = 0;
        loop {
            if k == free {
                return;
            }
            let x = &mut m.0[nn + k];
            if (*x as u32) + 1 < q {
                *x += 1;
                break;
            }
            *x = 0;
            k += 1;
        }
    }
}

/// The full group of points, subject to `budget`.
pub fn enumerate(spec: &GroupSpec, budget: u128) -> Result<MatrixGroup> {
    spec.check_budget(budget)?;
    let space = spec.space()?;
    let f = space.field().clone();
    let level1 = gl_over_field(&f, spec.n);
    let mut elems = Vec::with_capacity(spec.order() as usize);
    match spec.family {
        Family::GL => {
            for a0 in &level1 {
                for_each_lift(&space, a0, |m| elems.push(m.clone()));
            }
        }
        Family::SL => {
            let l1 = space.with_level(1)?;
            for a0 in &level1 {
                let m0 = l1.from_levels(&[a0]).expect("level-1 block");
                if l1.det(&m0).coeffs[0] != 1 {
                    continue;
                }
                for_each_sl_lift(&space, a0, |m| elems.push(m.clone()));
            }
        }
    }
    Ok(MatrixGroup::from_elements(space, spec.to_string(), elems))
}

/// Whether `m` lies in the family (unit determinant, or determinant one).
pub fn in_family(space: &MatSpace, family: Family, m: &Mat) -> bool {
    match family {
        Family::GL => space.is_invertible(m),
        Family::SL => space.det(m) == space.ring().one(),
    }
}

/// The congruence kernel `G^i = {g ≡ 1 mod π^i}`, `1 ≤ i ≤ r`.
pub fn congruence_kernel(spec: &GroupSpec, i: usize, budget: u128) -> Result<MatrixGroup> {
    if i == 0 || i > spec.r {
        return crate::error::invalid(format!("kernel level {i} outside 1..={}", spec.r));
    }
    let space = spec.space()?;
    let nn = spec.n * spec.n;
    let free = (spec.r - i) * nn;
    let needed = (spec.field_size() as u128).pow(free as u32);
    if needed > budget {
        return Err(crate::error::Error::Budget { what: format!("G^{i} of {spec}"), needed, budget });
    }
    let mut elems = Vec::new();
    let id = space.identity();
    let q = space.field().size() as u128;
    for mut idx in 0..needed {
        let mut m = id.clone();
        for k in 0..free {
            m.0[i * nn + k] = (idx % q) as Fe;
            idx /= q;
        }
        if in_family(&space, spec.family, &m) {
            elems.push(m);
        }
    }
    Ok(MatrixGroup::from_elements(space, format!("{spec}^{i}"), elems))
}

/// Image of `G` under reduction modulo `π^i`, as a group at level `i`.
pub fn reduce_group(g: &MatrixGroup, i: usize) -> Result<MatrixGroup> {
    let target = g.space().with_level(i)?;
    let elems = g
        .elements()
        .iter()
        .map(|m| g.space().reduce(m, &target))
        .collect::<Result<Vec<_>>>()?;
    Ok(MatrixGroup::from_elements(target, format!("{} mod π^{i}", g.name()), elems))
}

/// The image of `g` under the field embedding into `target` (same `n` and level).
pub fn base_change(g: &MatrixGroup, target: std::sync::Arc<MatSpace>) -> Result<MatrixGroup> {
    let table = target.field().embedding_of(g.space().field())?;
    if target.n() != g.space().n() || target.level() != g.space().level() {
        return crate::error::invalid("base change needs matching size and level");
    }
    let elems = g.elements().iter().map(|m| Mat(m.0.iter().map(|&x| table[x as usize]).collect())).collect();
    Ok(MatrixGroup::from_elements(target, format!("{} base-changed", g.name()), elems))
}

/// The Frobenius-fixed points of a group over `F_{q^a}`.
pub fn frobenius_fixed(g: &MatrixGroup) -> MatrixGroup {
    let s = g.space().clone();
    g.filter(format!("{}^F", g.name()), move |m| s.frobenius(m) == *m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::spec::DEFAULT_BUDGET;
    use rustc_hash::FxHashSet;

    #[test]
    fn level_one_counts() {
        for (p, k, n, expected) in [(2, 1, 2, 6), (3, 1, 2, 48), (2, 1, 3, 168), (2, 2, 2, 180)] {
            let f = GaloisField::new(p, k).unwrap();
            assert_eq!(gl_over_field(&f, n).len(), expected);
        }
    }

    #[test]
    fn enumeration_sizes() {
        for spec in [
            GroupSpec::gl(1, 2, 1),
            GroupSpec::gl(2, 2, 2),
            GroupSpec::sl(2, 3, 2),
            GroupSpec::sl(2, 2, 2),
            GroupSpec::gl(1, 3, 3),
            GroupSpec::gl(2, 3, 2),
        ] {
            let g = enumerate(&spec, DEFAULT_BUDGET).unwrap();
            assert_eq!(g.order() as u128, spec.order(), "{spec}");
        }
        assert_eq!(enumerate(&GroupSpec::gl(2, 2, 2), DEFAULT_BUDGET).unwrap().order(), 96);
        assert_eq!(enumerate(&GroupSpec::sl(2, 3, 2), DEFAULT_BUDGET).unwrap().order(), 648);
        assert!(enumerate(&GroupSpec::gl(3, 3, 2), DEFAULT_BUDGET).is_err());
    }

    #[test]
    fn enumerated_groups_are_closed_and_in_family() {
        for spec in [GroupSpec::gl(2, 2, 2), GroupSpec::sl(2, 3, 2)] {
            let g = enumerate(&spec, DEFAULT_BUDGET).unwrap();
            g.verify_closure().unwrap();
            assert!(g.elements().iter().all(|m| in_family(g.space(), spec.family, m)));
        }
    }

    #[test]
    fn kernels_and_reduction() {
        let spec = GroupSpec::gl(2, 2, 2);
        let k = congruence_kernel(&spec, 1, DEFAULT_BUDGET).unwrap();
        assert_eq!(k.order(), 16);
        assert!(k.is_frobenius_stable());
        k.verify_closure().unwrap();
        let g = enumerate(&spec, DEFAULT_BUDGET).unwrap();
        let img = reduce_group(&g, 1).unwrap();
        assert_eq!(img.order(), 6);
        assert!(reduce_group(&g, 2).unwrap().same_elements(&g));
        assert!(congruence_kernel(&spec, 3, DEFAULT_BUDGET).is_err());
        // kernel sizes (q^a)^{(r-i)n²} for GL
        for (n, q, a, r) in [(2, 2, 1, 3), (1, 2, 2, 3), (2, 2, 2, 2)] {
            let spec = GroupSpec::new(Family::GL, n, q, a, r).unwrap();
            for i in 1..=r {
                let k = congruence_kernel(&spec, i, DEFAULT_BUDGET).unwrap();
                assert_eq!(k.order() as u128, (spec.field_size() as u128).pow(((r - i) * n * n) as u32));
                assert!(k.is_frobenius_stable());
            }
        }
    }

    #[test]
    fn kernel_matches_reduction_fibre() {
        let spec = GroupSpec::gl(2, 2, 3);
        let g = enumerate(&spec, DEFAULT_BUDGET).unwrap();
        for i in 1..=3 {
            let t = g.space().with_level(i).unwrap();
            let id = t.identity();
            let fibre = g.filter("fibre", |m| g.space().reduce(m, &t).unwrap() == id);
            let k = congruence_kernel(&spec, i, DEFAULT_BUDGET).unwrap();
            assert!(fibre.same_elements(&k));
            assert_eq!(reduce_group(&g, i).unwrap().order() * k.order(), g.order());
        }
    }

    #[test]
    fn frobenius_fixed_points_and_lang_fibres() {
        let big = GroupSpec::new(Family::GL, 2, 2, 2, 2).unwrap();
        let g = enumerate(&big, DEFAULT_BUDGET).unwrap();
        assert_eq!(g.order(), 46080);
        let fixed = frobenius_fixed(&g);
        assert_eq!(fixed.order(), 96);
        let small = enumerate(&GroupSpec::gl(2, 2, 2), DEFAULT_BUDGET).unwrap();
        assert!(base_change(&small, g.space().clone()).unwrap().same_elements(&fixed));
        let s = g.space();
        let mut fibres: rustc_hash::FxHashMap<u128, usize> = Default::default();
        for m in g.elements() {
            *fibres.entry(s.code(&s.lang(m).unwrap())).or_default() += 1;
        }
        assert!(fibres.values().all(|&c| c == 96));
        assert_eq!(fibres.len(), 46080 / 96);
        // norm image of W^x for GL_1 over F_4 into F_2
        let t = enumerate(&GroupSpec::new(Family::GL, 1, 2, 2, 1).unwrap(), DEFAULT_BUDGET).unwrap();
        let img: FxHashSet<u128> = t.elements().iter().map(|m| t.space().code(&t.space().norm(m, 2))).collect();
        assert_eq!(img.len(), 1);
    }
}
