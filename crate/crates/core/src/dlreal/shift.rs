//! Comparison of `Ω′` for split representations of `SL_n` and `GL_n`.

use serde::Serialize;

use super::{Context, SplitRealization};
use crate::arith::Fe;
use crate::chars::{inner_product, linear_characters};
use crate::error::{invalid, precondition, Result};
use crate::groups::{enumerate, named, Family, MatrixGroup};
use crate::liealg::{LieAlgebra, LieElem};

#[derive(Clone, Debug, Serialize)]
pub struct ShiftPair {
    pub theta: usize,
    pub gl_irreducible: usize,
    pub sl_irreducible: usize,
    /// Codes of the two orbit representatives.
    pub gl_orbit_rep: u64,
    pub sl_orbit_rep: u64,
    /// `c` with `h z_1 h⁻¹ - z_2 = c·I`.
    pub scalar: Fe,
    pub witness_found: bool,
    pub gl_centralizer: usize,
    pub sl_centralizer: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct OrbitShiftReport {
    pub gl_spec: String,
    pub sl_spec: String,
    pub thetas: usize,
    pub pairs: Vec<ShiftPair>,
}

impl OrbitShiftReport {
    pub fn passed(&self) -> bool {
        !self.pairs.is_empty()
            && self
                .pairs
                .iter()
                .all(|p| p.witness_found && p.gl_centralizer == p.sl_centralizer)
    }
}

/// For every `θ̃` on the split torus of `GL_n` and every pair of
/// constituents `σ̃ ⊂ R_{T̃}^{θ̃}`, `σ ⊂ R_T^θ` with `σ ⊂ Res σ̃`, the orbit
/// of `σ` is a scalar shift of the orbit of `σ̃`.
pub fn verify_orbit_shift(sl: &Context, gl: &Context) -> Result<OrbitShiftReport> {
    if sl.spec.family != Family::SL || gl.spec.family != Family::GL || sl.spec.with_family(Family::GL) != gl.spec {
        return invalid("orbit shift compares SL_n and GL_n over the same ring");
    }
    let n = gl.spec.n;
    if n as u32 % gl.spec.p() == 0 {
        return precondition("orbit shift needs p ∤ n");
    }
    if !sl.group.is_subset_of(&gl.group) {
        return invalid("SL_n is not inside GL_n");
    }
    let gl_real = SplitRealization::new(
        gl.group.clone(),
        gl.subgroup(named::torus(&gl.spec, gl.budget)?)?,
        gl.subgroup(named::unipotent(&gl.spec, gl.budget)?)?,
    )?;
    let sl_real = SplitRealization::new(
        sl.group.clone(),
        sl.subgroup(named::torus(&sl.spec, sl.budget)?)?,
        sl.subgroup(named::unipotent(&sl.spec, sl.budget)?)?,
    )?;
    let (gt, st) = (gl.table()?, sl.table()?);
    let (go, so) = (gl.omegas()?, sl.omegas()?);
    let (gd, sd) = (gl.dictionary()?, sl.dictionary()?);
    let gl1 = enumerate(&gl.spec.with_level(1), gl.budget)?;
    let restricted: Vec<_> = gt
        .irreducibles()
        .iter()
        .map(|x| x.restrict(&sl.group))
        .collect::<Result<_>>()?;
    let thetas = linear_characters(&gl_real.cartan)?;
    let mut pairs = Vec::new();
    for (ti, tt) in thetas.iter().enumerate() {
        let theta = tt.restrict(&sl_real.cartan)?;
        let gc = gt.constituents(&gl_real.character(tt)?)?;
        let sc = st.constituents(&sl_real.character(&theta)?)?;
        for &a in &gc {
            for &b in &sc {
                if inner_product(&restricted[a], &st.irreducibles()[b])?.is_zero() {
                    continue;
                }
                let z1 = gd.algebra.decode(go[a].rep_code);
                let z2 = sd.algebra.decode(so[b].rep_code);
                let (scalar, witness_found) = find_shift(&gd.algebra, &gl1, &z1, &z2);
                pairs.push(ShiftPair {
                    theta: ti,
                    gl_irreducible: a,
                    sl_irreducible: b,
                    gl_orbit_rep: go[a].rep_code,
                    sl_orbit_rep: so[b].rep_code,
                    scalar,
                    witness_found,
                    gl_centralizer: centralizer_order(&gd.algebra, &gl1, &z1),
                    sl_centralizer: centralizer_order(&gd.algebra, &gl1, &z2),
                });
            }
        }
    }
    Ok(OrbitShiftReport { gl_spec: gl.spec.to_string(), sl_spec: sl.spec.to_string(), thetas: thetas.len(), pairs })
}

/// Looks for `h ∈ GL_n(F_q)` with `h z_1 h⁻¹ - z_2` scalar.
fn find_shift(alg: &LieAlgebra, gl1: &MatrixGroup, z1: &LieElem, z2: &LieElem) -> (Fe, bool) {
    let s = gl1.space();
    for h in gl1.elements() {
        let hi = s.inverse(h).expect("invertible");
        let c = alg.conjugate(s.block(h, 0), s.block(&hi, 0), z1);
        let d = alg.sub(&c, z2);
        if alg.is_scalar(&d) {
            return (d.data[0], true);
        }
    }
    (0, false)
}

fn centralizer_order(alg: &LieAlgebra, gl1: &MatrixGroup, z: &LieElem) -> usize {
    let s = gl1.space();
    gl1.elements()
        .iter()
        .filter(|h| {
            let hi = s.inverse(h).expect("invertible");
            alg.conjugate(s.block(h, 0), s.block(&hi, 0), z).data == z.data
        })
        .count()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{GroupSpec, DEFAULT_BUDGET};

    #[test]
    fn shift_sl2_gl2_q3() {
        let sl = Context::new(&GroupSpec::sl(2, 3, 2), DEFAULT_BUDGET).unwrap();
        let gl = Context::new(&GroupSpec::gl(2, 3, 2), DEFAULT_BUDGET).unwrap();
        let rep = verify_orbit_shift(&sl, &gl).unwrap();
        assert!(rep.passed(), "{:?}", rep.pairs.iter().find(|p| !p.witness_found));
        assert_eq!(rep.thetas, 36);
    }

    #[test]
    fn mismatched_specs_refused() {
        let sl = Context::new(&GroupSpec::sl(2, 3, 2), DEFAULT_BUDGET).unwrap();
        let gl = Context::new(&GroupSpec::gl(2, 3, 1), DEFAULT_BUDGET).unwrap();
        assert!(verify_orbit_shift(&sl, &gl).is_err());
    }
}
