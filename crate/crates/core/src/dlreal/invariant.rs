//! Orbit sums `Ψ_O = Σ_{y ∈ O} φ_y` on the last congruence kernel.

use serde::Serialize;

use super::{Context, SplitRealization};
use crate::chars::{inner_product_int, linear_characters, ClassFunction};
use crate::error::Result;
use crate::groups::algo::double_cosets;
use crate::groups::named;

/// One `Ψ_O` per adjoint orbit, in orbit order.
pub fn invariant_characters(ctx: &Context) -> Result<Vec<ClassFunction>> {
    let dict = ctx.dictionary()?;
    (0..dict.partition.len()).map(|o| dict.orbit_sum(o)).collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct InvariantRow {
    pub orbit: usize,
    pub degree: i128,
    /// `⟨Ψ_O, Res_K Ind_{U_1^F}^{G^F} 1⟩_K`.
    pub pairing: i128,
    pub expected: i128,
    /// Number of `θ` on `T_1^F` whose `R_{F,T_1}^θ` pairs nontrivially with `Ψ_O`.
    pub thetas_meeting: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct InvariantReport {
    pub spec: String,
    pub orbits: usize,
    pub double_cosets: usize,
    pub conjugation_invariant: bool,
    /// `⟨Ψ_O, Ψ_{O′}⟩ = δ·|O|`.
    pub orthogonal: bool,
    pub rows: Vec<InvariantRow>,
}

impl InvariantReport {
    pub fn passed(&self) -> bool {
        self.conjugation_invariant
            && self.orthogonal
            && self.rows.len() == self.orbits
            && self.rows.iter().all(|r| r.pairing == r.expected && r.thetas_meeting > 0)
    }
}

/// `⟨Ψ, Res_K Ind_{U_1^F}^{G^F} 1⟩_K = deg Ψ · #(U_1^F \ G^F / K)` for every
/// orbit sum, with the invariance and orthogonality of the `Ψ`.
pub fn verify_section6_identity(ctx: &Context) -> Result<InvariantReport> {
    let dict = ctx.dictionary()?;
    let psis = invariant_characters(ctx)?;
    let k = dict.kernel.clone();
    let u1 = named::unipotent_level1(&ctx.spec, ctx.budget)?;
    let dcs = double_cosets(&ctx.group, &u1, &k)?.len() as i128;
    let res = ctx.induced_trivial(u1)?.restrict(&k)?;

    let s = k.space();
    let kc = k.classes();
    let conjugation_invariant = psis.iter().all(|psi| {
        ctx.group.generators().iter().all(|&g| {
            let gm = ctx.group.element(g);
            (0..k.order()).all(|x| {
                let y = k.index_of(&s.conj(gm, k.element(x)).expect("invertible")).expect("K is normal");
                psi.value(kc.class_of[x] as usize) == psi.value(kc.class_of[y] as usize)
            })
        })
    });
    let mut orthogonal = true;
    for (i, a) in psis.iter().enumerate() {
        for (j, b) in psis.iter().enumerate() {
            let want = if i == j { dict.partition.orbits[i].len() as i128 } else { 0 };
            orthogonal &= inner_product_int(a, b)? == want;
        }
    }

    let t1 = ctx.subgroup(named::torus_level1(&ctx.spec, ctx.budget)?)?;
    let real = SplitRealization::new(
        ctx.group.clone(),
        t1.clone(),
        ctx.subgroup(named::unipotent_level1(&ctx.spec, ctx.budget)?)?,
    )?;
    let summands = linear_characters(&t1)?
        .iter()
        .map(|t| real.character(t)?.restrict(&k))
        .collect::<Result<Vec<_>>>()?;

    let mut rows = Vec::new();
    for (o, psi) in psis.iter().enumerate() {
        let degree = psi.degree_int().unwrap_or(0);
        let mut meeting = 0;
        for r in &summands {
            if inner_product_int(psi, r)? != 0 {
                meeting += 1;
            }
        }
        rows.push(InvariantRow {
            orbit: o,
            degree,
            pairing: inner_product_int(psi, &res)?,
            expected: degree * dcs,
            thetas_meeting: meeting,
        });
    }
    Ok(InvariantReport {
        spec: ctx.spec.to_string(),
        orbits: psis.len(),
        double_cosets: dcs as usize,
        conjugation_invariant,
        orthogonal,
        rows,
    })
}
