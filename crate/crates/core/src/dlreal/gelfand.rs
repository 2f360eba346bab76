//! Gelfand–Graev characters and the covering of regular representations by
//! the regular flag.

use std::collections::BTreeSet;
use std::sync::Arc;

use serde::Serialize;

use super::{Context, SplitRealization};
use crate::arith::Fe;
use crate::chars::{inner_product_int, ClassFunction, LinearCharacter};
use crate::embed::flag::flag_regular;
use crate::embed::stabilizer::stabilizer_in;
use crate::error::{precondition, Result};
use crate::groups::{named, Family, Mat, MatrixGroup};

/// `ψ = Π_i ψ_i(u_{i,i+1})` with `ψ_i(w) = ζ_p^{Tr(Σ_l a_{i,l} w_l)}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GelfandGraevDatum {
    /// `coefficients[i][l] = a_{i,l}`, one row per simple root.
    pub coefficients: Vec<Vec<Fe>>,
}

impl GelfandGraevDatum {
    /// Every datum for `U` over `W_r(F_q)`.
    pub fn all(ctx: &Context) -> Vec<GelfandGraevDatum> {
        let q = ctx.group.space().field().size() as u64;
        let (n, r) = (ctx.spec.n, ctx.spec.r);
        let width = (n - 1) * r;
        let total = q.pow(width as u32);
        (0..total)
            .map(|mut c| {
                let mut flat = Vec::with_capacity(width);
                for _ in 0..width {
                    flat.push((c % q) as Fe);
                    c /= q;
                }
                GelfandGraevDatum { coefficients: flat.chunks(r).map(|x| x.to_vec()).collect() }
            })
            .collect()
    }

    /// `ψ` as a character of `U`.
    pub fn character(&self, u: &Arc<MatrixGroup>) -> LinearCharacter {
        let s = u.space();
        let f = s.field();
        let p = f.characteristic() as u32;
        let exps = u
            .elements()
            .iter()
            .map(|m| {
                let mut t = 0;
                for (i, row) in self.coefficients.iter().enumerate() {
                    for (l, &a) in row.iter().enumerate() {
                        t = f.add(t, f.mul(a, s.get(m, l, i, i + 1)));
                    }
                }
                f.abs_trace(t) as u32 % p
            })
            .collect();
        LinearCharacter::new_unchecked(u.clone(), p, exps)
    }

    /// Every `ψ_i` is nontrivial on the deepest level of its root subgroup,
    /// checked by evaluation.
    pub fn is_nondegenerate(&self, ctx: &Context, u: &Arc<MatrixGroup>) -> bool {
        let psi = self.character(u);
        let s = u.space();
        let r = s.level();
        let q = s.field().size() as Fe;
        (0..self.coefficients.len()).all(|i| {
            (1..q).any(|c| {
                let m = with_entry(ctx, &s.identity(), r - 1, i, i + 1, c);
                u.index_of(&m).map_or(false, |k| psi.exp(k) != 0)
            })
        })
    }
}

/// `m + c·π^l E_{ij}`.
fn with_entry(ctx: &Context, m: &Mat, l: usize, i: usize, j: usize, c: Fe) -> Mat {
    let s = ctx.group.space();
    s.add(m, &s.from_fn(|ll, ii, jj| if (ll, ii, jj) == (l, i, j) { c } else { 0 }))
}

/// `Γ_ψ = Ind_{U^F}^{G^F} ψ`.
pub fn gelfand_graev(ctx: &Context, u: &Arc<MatrixGroup>, datum: &GelfandGraevDatum) -> Result<ClassFunction> {
    if ctx.spec.family != Family::GL {
        return precondition("Gelfand–Graev characters are evaluated for GL_n");
    }
    if !datum.is_nondegenerate(ctx, u) {
        return precondition("ψ is degenerate");
    }
    datum.character(u).to_class_function().induce(&ctx.group)
}

#[derive(Clone, Debug, Serialize)]
pub struct GelfandGraevReport {
    pub spec: String,
    pub nondegenerate_data: usize,
    /// The non-degenerate `ψ` form one orbit under `B^F`.
    pub borel_conjugate: bool,
    pub all_equal: bool,
    pub multiplicity_free: bool,
    pub constituents: Vec<usize>,
    pub regular: Vec<usize>,
    pub degree: i128,
    pub index_of_u: i128,
}

impl GelfandGraevReport {
    pub fn passed(&self) -> bool {
        self.nondegenerate_data > 0
            && self.borel_conjugate
            && self.all_equal
            && self.multiplicity_free
            && self.constituents == self.regular
            && self.degree == self.index_of_u
    }
}

fn unipotent(ctx: &Context) -> Result<Arc<MatrixGroup>> {
    ctx.subgroup(named::unipotent(&ctx.spec, ctx.budget)?)
}

fn regular_set(ctx: &Context) -> Result<Vec<usize>> {
    let om = ctx.omegas()?;
    Ok((0..om.len()).filter(|&i| om[i].regular).collect())
}

/// All non-degenerate `Γ_ψ` agree, are multiplicity free, and consist of
/// the regular irreducibles.
pub fn verify_gelfand_graev(ctx: &Context) -> Result<GelfandGraevReport> {
    if ctx.spec.family != Family::GL || ctx.spec.r < 2 {
        return precondition("Gelfand–Graev checks need GL_n with r ≥ 2");
    }
    let u = unipotent(ctx)?;
    let data: Vec<_> = GelfandGraevDatum::all(ctx).into_iter().filter(|d| d.is_nondegenerate(ctx, &u)).collect();
    let Some(first) = data.first() else {
        return precondition("no non-degenerate ψ");
    };
    let gamma = gelfand_graev(ctx, &u, first)?;
    let mut all_equal = true;
    for d in &data[1..] {
        all_equal &= gelfand_graev(ctx, &u, d)? == gamma;
    }
    let borel = named::borel(&ctx.spec, ctx.budget)?;
    let psis: BTreeSet<Vec<u32>> = data.iter().map(|d| d.character(&u).exps().to_vec()).collect();
    let orbit = borel_orbit(&borel, &u, first.character(&u).exps());
    let table = ctx.table()?;
    let mults = table.decompose(&gamma)?;
    Ok(GelfandGraevReport {
        spec: ctx.spec.to_string(),
        nondegenerate_data: data.len(),
        borel_conjugate: orbit == psis,
        all_equal,
        multiplicity_free: mults.iter().all(|&m| m == 0 || m == 1),
        constituents: table.constituents(&gamma)?,
        regular: regular_set(ctx)?,
        degree: gamma.degree_int().unwrap_or(0),
        index_of_u: (ctx.group.order() / u.order()) as i128,
    })
}

/// `{ψ^b : b ∈ B}` for `ψ` given by exponents on `U`.
fn borel_orbit(borel: &MatrixGroup, u: &MatrixGroup, psi: &[u32]) -> BTreeSet<Vec<u32>> {
    let s = u.space();
    borel
        .elements()
        .iter()
        .map(|b| {
            u.elements()
                .iter()
                .map(|x| psi[u.index_of(&s.conj(b, x).expect("invertible")).expect("B normalizes U")])
                .collect()
        })
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct CoverageReport {
    pub spec: String,
    pub radical_is_u1: bool,
    /// `Σ_θ R_{F,T_1}^θ = Ind_{U_1^F}^{G^F} 1`.
    pub sum_is_induced: bool,
    pub psi_prime_nondegenerate: bool,
    pub psi_prime_trivial_on_u1: bool,
    /// `⟨ψ′, Ind_{U_1}^U 1⟩_U` for every non-degenerate `ψ`.
    pub psi_prime_pairings: Vec<i128>,
    pub gamma_prime_bounded: bool,
    /// Irreducible index and the number of `θ` whose summand contains it.
    pub regular_coverage: Vec<(usize, usize)>,
}

impl CoverageReport {
    pub fn passed(&self) -> bool {
        self.radical_is_u1
            && self.sum_is_induced
            && self.psi_prime_nondegenerate
            && self.psi_prime_trivial_on_u1
            && self.psi_prime_pairings.iter().all(|&m| m == 1)
            && self.gamma_prime_bounded
            && self.regular_coverage.iter().all(|&(_, k)| k > 0)
    }
}

/// Every regular irreducible occurs in some `R_{F,T_1}^θ` for the regular flag.
pub fn verify_regular_coverage(ctx: &Context) -> Result<CoverageReport> {
    let spec = &ctx.spec;
    if spec.family != Family::GL || spec.r < 2 {
        return precondition("regular coverage is checked for GL_n with r ≥ 2");
    }
    let flag = flag_regular(spec.point_field()?, spec.n, spec.r)?;
    let st = stabilizer_in(&flag, &ctx.group, spec.p() as usize)?;
    let u1_named = named::unipotent_level1(spec, ctx.budget)?;
    let radical_is_u1 = st.unipotent_radical.same_elements(&u1_named);
    let t1 = ctx.subgroup(named::torus_level1(spec, ctx.budget)?)?;
    let real = SplitRealization::new(ctx.group.clone(), t1.clone(), ctx.subgroup(st.unipotent_radical)?)?;
    let thetas = crate::chars::linear_characters(&t1)?;
    let summands = thetas.iter().map(|t| real.character(t)).collect::<Result<Vec<_>>>()?;
    let total = ClassFunction::sum(ctx.group.clone(), &summands)?;
    let induced_u1 = ctx.induced_trivial(u1_named)?;
    let sum_is_induced = total == induced_u1;

    let u = unipotent(ctx)?;
    let u1 = Arc::new(named::unipotent_level1(spec, ctx.budget)?);
    let u1_in_u = u1.indices_in(&u)?;
    let ind_u1_u = ClassFunction::trivial(u1.clone()).induce(&u)?;
    let s = u.space();
    let level1 = s.with_level(1)?;
    let constant: Vec<usize> = u
        .elements()
        .iter()
        .map(|x| {
            let red = s.reduce(x, &level1).expect("reduction");
            u.index_of(&s.lift_from(&red, &level1).expect("lift")).expect("constant part lies in U")
        })
        .collect();
    let table = ctx.table()?;
    let mut nondeg = true;
    let mut trivial_on_u1 = true;
    let mut pairings = Vec::new();
    let mut bounded = true;
    let total_mults = table.decompose(&total)?;
    for d in GelfandGraevDatum::all(ctx).into_iter().filter(|d| d.is_nondegenerate(ctx, &u)) {
        let psi = d.character(&u);
        let p = psi.conductor();
        let exps: Vec<u32> = (0..u.order()).map(|i| (psi.exp(i) + p - psi.exp(constant[i])) % p).collect();
        let prime = LinearCharacter::new(u.clone(), p, exps)?;
        nondeg &= prime_is_nondegenerate(ctx, &u, &prime);
        trivial_on_u1 &= u1_in_u.iter().all(|&i| prime.exp(i) == 0);
        pairings.push(inner_product_int(&prime.to_class_function(), &ind_u1_u)?);
        let gamma = prime.to_class_function().induce(&ctx.group)?;
        let gm = table.decompose(&gamma)?;
        bounded &= gm.iter().zip(&total_mults).all(|(a, b)| a <= b);
    }
    let mut coverage = Vec::new();
    let decomposed = summands.iter().map(|r| table.decompose(r)).collect::<Result<Vec<_>>>()?;
    for i in regular_set(ctx)? {
        coverage.push((i, decomposed.iter().filter(|m| m[i] > 0).count()));
    }
    Ok(CoverageReport {
        spec: spec.to_string(),
        radical_is_u1,
        sum_is_induced,
        psi_prime_nondegenerate: nondeg,
        psi_prime_trivial_on_u1: trivial_on_u1,
        psi_prime_pairings: pairings,
        gamma_prime_bounded: bounded,
        regular_coverage: coverage,
    })
}

fn prime_is_nondegenerate(ctx: &Context, u: &Arc<MatrixGroup>, psi: &LinearCharacter) -> bool {
    let s = u.space();
    let r = s.level();
    let q = s.field().size() as Fe;
    (0..ctx.spec.n - 1).all(|i| {
        (1..q).any(|c| {
            let m = with_entry(ctx, &s.identity(), r - 1, i, i + 1, c);
            u.index_of(&m).map_or(false, |k| psi.exp(k) != 0)
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{GroupSpec, DEFAULT_BUDGET};

    #[test]
    fn gelfand_graev_gl2_q2() {
        let ctx = Context::new(&GroupSpec::gl(2, 2, 2), DEFAULT_BUDGET).unwrap();
        let rep = verify_gelfand_graev(&ctx).unwrap();
        assert!(rep.passed(), "{rep:?}");
        assert_eq!(rep.nondegenerate_data, 2);
    }

    #[test]
    fn degenerate_refused() {
        let ctx = Context::new(&GroupSpec::gl(2, 2, 2), DEFAULT_BUDGET).unwrap();
        let u = unipotent(&ctx).unwrap();
        let zero = GelfandGraevDatum { coefficients: vec![vec![0, 0]] };
        assert!(gelfand_graev(&ctx, &u, &zero).is_err());
        let level0 = GelfandGraevDatum { coefficients: vec![vec![1, 0]] };
        assert!(!level0.is_nondegenerate(&ctx, &u));
    }

    #[test]
    fn coverage_gl2_q2() {
        let ctx = Context::new(&GroupSpec::gl(2, 2, 2), DEFAULT_BUDGET).unwrap();
        let rep = verify_regular_coverage(&ctx).unwrap();
        assert!(rep.passed(), "{rep:?}");
    }
}
