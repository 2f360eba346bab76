//! Nilpotent representations, and split representations with regular `θ`.

use std::sync::Arc;

use serde::Serialize;

use super::{Context, SplitRealization};
use crate::chars::torus::{nontrivial_on, theta_general_position, theta_regular};
use crate::chars::{inner_product, ClassFunction, LinearCharacter};
use crate::error::{precondition, Result};
use crate::groups::{named, Family};

/// Nilpotent irreducibles found two ways: by `Ω′` and as constituents of
/// `Ind_{(B^{r-1})^F}^{G^F} 1`.
#[derive(Clone, Debug, Serialize)]
pub struct NilpotentReport {
    pub spec: String,
    pub irreducibles: usize,
    pub via_orbits: Vec<usize>,
    pub via_induction: Vec<usize>,
    pub degrees: Vec<i128>,
}

impl NilpotentReport {
    pub fn agree(&self) -> bool {
        self.via_orbits == self.via_induction
    }
}

pub fn nilpotent_reps(ctx: &Context) -> Result<NilpotentReport> {
    let table = ctx.table()?;
    let omegas = ctx.omegas()?;
    let via_orbits: Vec<usize> = (0..omegas.len()).filter(|&i| omegas[i].nilpotent).collect();
    let induced = ctx.induced_trivial(named::borel_kernel(&ctx.spec, ctx.spec.r - 1, ctx.budget)?)?;
    let via_induction = table.constituents(&induced)?;
    let degrees = table.degrees();
    Ok(NilpotentReport {
        spec: ctx.spec.to_string(),
        irreducibles: table.len(),
        degrees: via_orbits.iter().map(|&i| degrees[i]).collect(),
        via_orbits,
        via_induction,
    })
}

/// Names of the hypotheses on `θ` that fail.
pub fn failed_hypotheses(ctx: &Context, theta: &LinearCharacter) -> Result<Vec<&'static str>> {
    let mut out = Vec::new();
    if ctx.spec.family != Family::GL {
        out.push("family is GL");
    }
    if ctx.spec.r < 2 {
        out.push("r ≥ 2");
        return Ok(out);
    }
    if !theta_regular(theta, &ctx.spec)? {
        out.push("regular");
    }
    if !theta_general_position(theta, &ctx.spec)? {
        out.push("general position");
    }
    if ctx.spec.family == Family::GL && !nontrivial_on(theta, &named::center_reduction_kernel(&ctx.spec)?)? {
        out.push("nontrivial on the scalar kernel");
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct NonNilpotencyReport {
    pub spec: String,
    /// `θ` on the generators of `T^F`, as `(element code, exponent)`.
    pub theta: Vec<(String, u32)>,
    pub conductor: u32,
    pub degree: i128,
    /// `⟨Ind_{(B^{r-1})^F}^{G^F} 1, R_{T,U}^θ⟩`.
    pub pairing: String,
    /// Irreducibles that occur in both.
    pub shared: Vec<usize>,
    /// Constituents of `R_{T,U}^θ` whose orbit is nilpotent.
    pub nilpotent_constituents: Vec<usize>,
}

impl NonNilpotencyReport {
    pub fn passed(&self) -> bool {
        self.pairing == "0" && self.shared.is_empty() && self.nilpotent_constituents.is_empty()
    }
}

/// Data reused across many `θ`.
pub struct NonNilpotencyData {
    pub realization: SplitRealization,
    pub nilpotent_part: ClassFunction,
    pub nilpotent_set: Vec<usize>,
}

impl NonNilpotencyData {
    pub fn new(ctx: &Context) -> Result<Self> {
        let t = ctx.subgroup(named::torus(&ctx.spec, ctx.budget)?)?;
        let u = ctx.subgroup(named::unipotent(&ctx.spec, ctx.budget)?)?;
        let realization = SplitRealization::new(ctx.group.clone(), t, u)?;
        let nilpotent_part = ctx.induced_trivial(named::borel_kernel(&ctx.spec, ctx.spec.r - 1, ctx.budget)?)?;
        let nilpotent_set = ctx.table()?.constituents(&nilpotent_part)?;
        Ok(NonNilpotencyData { realization, nilpotent_part, nilpotent_set })
    }

    pub fn torus(&self) -> &Arc<crate::groups::MatrixGroup> {
        &self.realization.cartan
    }
}

/// Checks that `R_{T,U}^θ` has no nilpotent constituent. Refuses `θ` that
/// fail a hypothesis, naming each failure.
pub fn verify_non_nilpotency(ctx: &Context, data: &NonNilpotencyData, theta: &LinearCharacter) -> Result<NonNilpotencyReport> {
    let failed = failed_hypotheses(ctx, theta)?;
    if !failed.is_empty() {
        return precondition(format!("θ fails: {}", failed.join(", ")));
    }
    evaluate_non_nilpotency(ctx, data, theta)
}

/// The same computation without the hypothesis check.
pub fn evaluate_non_nilpotency(ctx: &Context, data: &NonNilpotencyData, theta: &LinearCharacter) -> Result<NonNilpotencyReport> {
    let table = ctx.table()?;
    let omegas = ctx.omegas()?;
    let r = data.realization.character(theta)?;
    let pairing = inner_product(&data.nilpotent_part, &r)?;
    let constituents = table.constituents(&r)?;
    let shared = constituents.iter().copied().filter(|i| data.nilpotent_set.contains(i)).collect();
    let nilpotent_constituents = constituents.iter().copied().filter(|&i| omegas[i].nilpotent).collect();
    let t = theta.group();
    let space = t.space();
    Ok(NonNilpotencyReport {
        spec: ctx.spec.to_string(),
        theta: theta
            .on_generators()
            .into_iter()
            .map(|(g, e)| (space.code(t.element(g)).to_string(), e))
            .collect(),
        conductor: theta.conductor(),
        degree: r.degree_int().unwrap_or(0),
        pairing: pairing.to_exact_string(),
        shared,
        nilpotent_constituents,
    })
}
