//! Sylow subgroups, p-cores and double cosets.

use super::group::{Closure, MatrixGroup};
use crate::error::{Error, Result};

pub fn is_power_of(mut n: usize, p: usize) -> bool {
    while n > 1 && n % p == 0 {
        n /= p;
    }
    n == 1
}

/// Largest power of `p` dividing `n`.
pub fn p_part(mut n: usize, p: usize) -> usize {
    let mut out = 1;
    while n % p == 0 {
        n /= p;
        out *= p;
    }
    out
}

/// The subgroup generated by `members` if it is a `p`-group, else `None`.
fn p_closure(g: &MatrixGroup, start: &Closure<'_>, members: &[usize], p: usize) -> Result<Option<Vec<usize>>> {
    let cap = p_part(g.order(), p);
    let member = |c: u128| g.index_of_code(c).is_some();
    let mut cl = start.clone();
    for &m in members {
        match cl.add_generator(g.element(m).clone(), &member, cap) {
            Ok(_) => {}
            Err(Error::Budget { .. }) => return Ok(None),
            Err(e) => return Err(e),
        }
    }
    if !is_power_of(cl.len(), p) {
        return Ok(None);
    }
    Ok(Some(cl.elems.iter().map(|m| g.index_of(m).expect("inside g")).collect()))
}

/// A Sylow `p`-subgroup, grown greedily by adjoining `p`-elements.
pub fn sylow_subgroup(g: &MatrixGroup, p: usize) -> Result<MatrixGroup> {
    let target = p_part(g.order(), p);
    let cls = g.classes();
    let mut cl = Closure::new(g.space());
    let member = |c: u128| g.index_of_code(c).is_some();
    'grow: while cl.len() < target {
        for (i, m) in g.elements().iter().enumerate() {
            let o = cls.orders[cls.class_of[i] as usize] as usize;
            if o == 1 || !is_power_of(o, p) || cl.contains(m) {
                continue;
            }
            if p_closure(g, &cl, &[i], p)?.is_some() {
                cl.add_generator(m.clone(), &member, target)?;
                continue 'grow;
            }
        }
        return Err(Error::Verification(format!("no p-element extends a p-subgroup of {}", g.name())));
    }
    Ok(MatrixGroup::from_elements(g.space().clone(), format!("Syl_{p}({})", g.name()), cl.elems))
}

/// The largest normal `p`-subgroup `O_p(G)`.
///
/// A conjugacy class lies in `O_p(G)` exactly when the normal subgroup it
/// generates is a `p`-group; `O_p(G)` is generated by those classes.
pub fn p_core(g: &MatrixGroup, p: usize) -> Result<MatrixGroup> {
    let cls = g.classes();
    let member = |c: u128| g.index_of_code(c).is_some();
    let mut core = Closure::new(g.space());
    let empty = Closure::new(g.space());
    for c in 1..cls.len() {
        if !is_power_of(cls.orders[c] as usize, p) || core.contains(g.element(cls.reps[c])) {
            continue;
        }
        let members: Vec<usize> = cls.members[c].iter().map(|&i| i as usize).collect();
        if p_closure(g, &empty, &members, p)?.is_some() {
            for &m in &members {
                core.add_generator(g.element(m).clone(), &member, usize::MAX)?;
            }
        }
    }
    Ok(MatrixGroup::from_elements(g.space().clone(), format!("O_{p}({})", g.name()), core.elems))
}

/// Partition of `g` into double cosets `H x K`, each as sorted indices of `g`.
pub fn double_cosets(g: &MatrixGroup, h: &MatrixGroup, k: &MatrixGroup) -> Result<Vec<Vec<usize>>> {
    if !h.is_subset_of(g) || !k.is_subset_of(g) {
        return Err(Error::Invalid("double cosets need subgroups of g".into()));
    }
    let left: Vec<usize> = h.generators().iter().map(|&i| g.index_of(h.element(i)).unwrap()).collect();
    let right: Vec<usize> = k.generators().iter().map(|&i| g.index_of(k.element(i)).unwrap()).collect();
    let mut seen = vec![false; g.order()];
    let mut out = Vec::new();
    for start in 0..g.order() {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut orbit = vec![start];
        let mut i = 0;
        while i < orbit.len() {
            let x = orbit[i];
            for y in left.iter().map(|&a| g.mul(a, x)).chain(right.iter().map(|&b| g.mul(x, b))) {
                if !seen[y] {
                    seen[y] = true;
                    orbit.push(y);
                }
            }
            i += 1;
        }
        orbit.sort_unstable();
        out.push(orbit);
    }
    Ok(out)
}

/// Whether `n` is normalized by every element of `g` (checked on generators).
pub fn normalizes(g: &MatrixGroup, n: &MatrixGroup) -> bool {
    let s = g.space();
    g.generators().iter().all(|&i| {
        let x = g.element(i);
        n.generators().iter().all(|&j| s.conj(x, n.element(j)).map_or(false, |y| n.contains(&y)))
    })
}
