//! Regularity and general position of characters of the diagonal torus.

use super::LinearCharacter;
use crate::error::{precondition, Result};
use crate::groups::named::permutation_matrix;
use crate::groups::{GroupSpec, Mat};

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..n {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out.sort();
    out
}

fn conjugate_index(theta: &LinearCharacter, w: &Mat, wi: &Mat, t: usize) -> Result<usize> {
    let g = theta.group();
    let s = g.space();
    let m = s.mul(&s.mul(w, g.element(t)), wi);
    g.index_of(&m)
        .ok_or_else(|| crate::Error::Invalid(format!("{} is not normalized by permutation matrices", g.name())))
}

/// No nontrivial Weyl element fixes `θ`.
pub fn theta_general_position(theta: &LinearCharacter, spec: &GroupSpec) -> Result<bool> {
    let s = theta.group().space().clone();
    for perm in permutations(spec.n).into_iter().filter(|p| p.iter().enumerate().any(|(i, &j)| i != j)) {
        let w = permutation_matrix(spec, &perm)?;
        let wi = s.inverse(&w).expect("permutation matrices are invertible");
        let mut fixed = true;
        for t in 0..theta.group().order() {
            if theta.exp(conjugate_index(theta, &w, &wi, t)?) != theta.exp(t) {
                fixed = false;
                break;
            }
        }
        if fixed {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Torus indices of `diag(.., x, .., x^{-1}, ..)` (positions `i`, `j`) for
/// `x ∈ 1 + π^{r-1}F`: the level-`(r-1)` part of the coroot image.
pub fn coroot_kernel(theta: &LinearCharacter, i: usize, j: usize) -> Result<Vec<usize>> {
    let g = theta.group();
    let s = g.space();
    let r = s.level();
    let f = s.field();
    f.elements()
        .map(|c| {
            let mut m = s.identity();
            m.0[s.idx(r - 1, i, i)] = c;
            m.0[s.idx(r - 1, j, j)] = f.neg(c);
            g.index_of(&m).ok_or_else(|| crate::Error::Invalid(format!("coroot element missing from {}", g.name())))
        })
        .collect()
}

/// For every root `α = (i, j)`, `θ` is nontrivial on `(T^α)^{r-1}`, taking
/// `T^α` to be the coroot image.
pub fn theta_regular(theta: &LinearCharacter, spec: &GroupSpec) -> Result<bool> {
    if spec.r < 2 {
        return precondition("regularity needs r ≥ 2");
    }
    if spec.a != 1 {
        return precondition("regularity is only implemented for the split torus over F_q");
    }
    for i in 0..spec.n {
        for j in i + 1..spec.n {
            if coroot_kernel(theta, i, j)?.iter().all(|&t| theta.exp(t) == 0) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `θ` restricted to the elements of `sub` (indices into its group) is nontrivial.
pub fn nontrivial_on(theta: &LinearCharacter, sub: &crate::groups::MatrixGroup) -> Result<bool> {
    Ok(sub.indices_in(theta.group())?.iter().any(|&t| theta.exp(t) != 0))
}

#[cfg(test)]
mod tests {
    use super::super::linear_characters;
    use super::*;
    use crate::groups::{named, DEFAULT_BUDGET};
    use std::sync::Arc;

    #[test]
    fn permutations_count() {
        assert_eq!(permutations(3).len(), 6);
        assert_eq!(permutations(3)[0], vec![0, 1, 2]);
    }

    #[test]
    fn predicates_on_gl2() {
        let spec = GroupSpec::gl(2, 3, 2);
        let t = Arc::new(named::torus(&spec, DEFAULT_BUDGET).unwrap());
        let chars = linear_characters(&t).unwrap();
        let triv = &chars[0];
        assert!(triv.is_trivial());
        assert!(!theta_general_position(triv, &spec).unwrap());
        assert!(!theta_regular(triv, &spec).unwrap());
        let gp = chars.iter().filter(|c| theta_general_position(c, &spec).unwrap()).count();
        // θ = θ_1 ⊗ θ_2 is in general position iff θ_1 ≠ θ_2: 36 − 6.
        assert_eq!(gp, 30);
        let reg = chars.iter().filter(|c| theta_regular(c, &spec).unwrap()).count();
        // θ_1θ_2^{-1} nontrivial on 1 + πF: 6·6 − 6·2.
        assert_eq!(reg, 24);
        let sl = GroupSpec::sl(2, 3, 2);
        let ts = Arc::new(named::torus(&sl, DEFAULT_BUDGET).unwrap());
        let sc = linear_characters(&ts).unwrap();
        assert_eq!(sc.len(), 6);
        assert_eq!(sc.iter().filter(|c| theta_regular(c, &sl).unwrap()).count(), 4);
    }
}
