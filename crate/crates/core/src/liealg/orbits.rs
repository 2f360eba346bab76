//! Adjoint orbits of the level-1 point group on `𝔤^F`.

use rustc_hash::FxHashMap;
use serde::Serialize;

use super::{Classification, LieAlgebra, LieElem};
use crate::arith::Fe;
use crate::error::Result;
use crate::groups::{enumerate, GroupSpec, MatrixGroup};

#[derive(Clone, Debug)]
pub struct AdjointOrbit {
    /// Member with the least encoding.
    pub rep: LieElem,
    /// Encodings of all members, sorted.
    pub members: Vec<u64>,
    pub class: Classification,
    /// Order of the centralizer of `rep` in the conjugating group.
    pub centralizer_order: usize,
}

impl AdjointOrbit {
    pub fn len(&self) -> usize {
        self.members.len()
    }
    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
    pub fn contains_code(&self, c: u64) -> bool {
        self.members.binary_search(&c).is_ok()
    }
}

/// Serializable row of an orbit table.
#[derive(Clone, Debug, Serialize)]
pub struct OrbitRow {
    pub index: usize,
    pub rep_code: u64,
    pub rep: Vec<Fe>,
    pub size: usize,
    pub centralizer_order: usize,
    pub nilpotent: bool,
    pub semisimple: bool,
    pub regular: bool,
}

/// Conjugating generators as field matrices with their inverses.
fn conjugators(group: &MatrixGroup) -> Vec<(Vec<Fe>, Vec<Fe>)> {
    group
        .generators()
        .into_iter()
        .map(|g| (group.element(g).data().to_vec(), group.element(group.inv(g)).data().to_vec()))
        .collect()
}

fn expand(alg: &LieAlgebra, gens: &[(Vec<Fe>, Vec<Fe>)], x: &LieElem) -> Vec<LieElem> {
    let mut seen: FxHashMap<u64, ()> = FxHashMap::default();
    seen.insert(alg.code(x), ());
    let mut out = vec![x.clone()];
    let mut i = 0;
    while i < out.len() {
        for (g, gi) in gens {
            let y = alg.conjugate(g, gi, &out[i]);
            if seen.insert(alg.code(&y), ()).is_none() {
                out.push(y);
            }
        }
        i += 1;
    }
    out
}

fn build_orbit(alg: &LieAlgebra, group_order: usize, members: Vec<LieElem>) -> AdjointOrbit {
    let mut codes: Vec<u64> = members.iter().map(|m| alg.code(m)).collect();
    codes.sort_unstable();
    let mut rep = alg.decode(codes[0]);
    rep.family = alg.family();
    AdjointOrbit {
        class: alg.classify(&rep),
        centralizer_order: group_order / codes.len(),
        rep,
        members: codes,
    }
}

/// The orbit of `x` under the level-1 point group of `spec`.
pub fn adjoint_orbit(x: &LieElem, spec: &GroupSpec, budget: u128) -> Result<AdjointOrbit> {
    let alg = LieAlgebra::new(spec)?;
    let g1 = enumerate(&spec.with_level(1), budget)?;
    let members = expand(&alg, &conjugators(&g1), x);
    Ok(build_orbit(&alg, g1.order(), members))
}

/// All adjoint orbits of `𝔤^F`, sorted by representative encoding.
#[derive(Clone, Debug)]
pub struct OrbitPartition {
    pub algebra: LieAlgebra,
    pub group_order: usize,
    pub orbits: Vec<AdjointOrbit>,
    index: FxHashMap<u64, u32>,
}

impl OrbitPartition {
    pub fn compute(spec: &GroupSpec, budget: u128) -> Result<Self> {
        let alg = LieAlgebra::new(spec)?;
        let g1 = enumerate(&spec.with_level(1), budget)?;
        Self::with_group(alg, &g1, budget)
    }

    /// Orbits under an explicit level-1 group.
    pub fn with_group(alg: LieAlgebra, g1: &MatrixGroup, budget: u128) -> Result<Self> {
        let gens = conjugators(g1);
        let mut index: FxHashMap<u64, u32> = FxHashMap::default();
        let mut orbits = Vec::new();
        for x in alg.elements(budget)? {
            if index.contains_key(&alg.code(&x)) {
                continue;
            }
            let o = build_orbit(&alg, g1.order(), expand(&alg, &gens, &x));
            for &c in &o.members {
                index.insert(c, orbits.len() as u32);
            }
            orbits.push(o);
        }
        Ok(OrbitPartition { algebra: alg, group_order: g1.order(), orbits, index })
    }

    pub fn len(&self) -> usize {
        self.orbits.len()
    }
    pub fn is_empty(&self) -> bool {
        self.orbits.is_empty()
    }

    pub fn orbit_of(&self, x: &LieElem) -> Option<usize> {
        self.index.get(&self.algebra.code(x)).map(|&i| i as usize)
    }
    pub fn orbit_of_code(&self, c: u64) -> Option<usize> {
        self.index.get(&c).map(|&i| i as usize)
    }

    /// Total number of elements covered.
    pub fn total(&self) -> usize {
        self.orbits.iter().map(|o| o.len()).sum()
    }

    /// Classification is constant on every orbit.
    pub fn classification_is_invariant(&self) -> bool {
        self.orbits.iter().all(|o| {
            o.members.iter().all(|&c| self.algebra.classify(&self.algebra.decode(c)) == o.class)
        })
    }

    /// Every nilpotent orbit meets the strictly upper triangular matrices.
    pub fn nilpotent_orbits_meet_upper(&self) -> bool {
        self.orbits
            .iter()
            .filter(|o| o.class.nilpotent)
            .all(|o| o.members.iter().any(|&c| self.algebra.is_strictly_upper(&self.algebra.decode(c))))
    }

    pub fn rows(&self) -> Vec<OrbitRow> {
        self.orbits
            .iter()
            .enumerate()
            .map(|(index, o)| OrbitRow {
                index,
                rep_code: o.members[0],
                rep: o.rep.data.clone(),
                size: o.len(),
                centralizer_order: o.centralizer_order,
                nilpotent: o.class.nilpotent,
                semisimple: o.class.semisimple,
                regular: o.class.regular,
            })
            .collect()
    }
}

/// `μ(u′, b′) = 0` for all strictly upper `u′` and upper `b′`; returns the
/// number of pairs checked.
pub fn upper_pairing_vanishes(alg: &LieAlgebra, budget: u128) -> Result<(usize, bool)> {
    let all = alg.elements(budget)?;
    let u: Vec<&LieElem> = all.iter().filter(|x| alg.is_strictly_upper(x)).collect();
    let b: Vec<&LieElem> = all.iter().filter(|x| alg.is_upper(x)).collect();
    let ok = u.iter().all(|x| b.iter().all(|y| alg.trace_form(x, y) == 0));
    Ok((u.len() * b.len(), ok))
}
