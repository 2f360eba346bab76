//! One function per subcommand.

use std::sync::Arc;

use serde_json::{json, Value};

use flagdl_core::chars::torus::theta_general_position;
use flagdl_core::chars::{linear_characters, LinearCharacter};
use flagdl_core::dlreal::gelfand::{verify_gelfand_graev, verify_regular_coverage};
use flagdl_core::dlreal::nilpotent::{failed_hypotheses, verify_non_nilpotency, NonNilpotencyData};
use flagdl_core::dlreal::{nilpotent_reps, verify_orbit_shift, verify_section6_identity, Context};
use flagdl_core::embed::verify::{verify_all_flags, FlagKind};
use flagdl_core::embed::{verify_embedding_exhaustive, verify_embedding_random};
use flagdl_core::groups::{enumerate, Family, GroupSpec};
use flagdl_core::lefschetz::{
    class_representatives, oracle_rows, pairing_and_closure, verify_41_equals_42, LangData,
};
use flagdl_core::liealg::dictionary::induced_trivial_is_upper_sum;
use flagdl_core::liealg::orbits::{upper_pairing_vanishes, OrbitPartition};
use flagdl_core::liealg::{traceless_annihilator_is_scalar, LieAlgebra};
use flagdl_core::{Error, Result};

use crate::cache::TableCache;
use crate::report::{csv_line, Outcome, Status};

pub struct Config {
    pub spec: GroupSpec,
    pub budget: u128,
    pub seed: u64,
    pub cache: Option<TableCache>,
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("reports serialize")
}

/// A context whose table comes from the cache when possible.
fn context_with_table(cfg: &Config, spec: &GroupSpec) -> Result<Context> {
    let ctx = Context::new(spec, cfg.budget)?;
    if let Some(cache) = &cfg.cache {
        if let Some(t) = cache.load(spec, &ctx.group) {
            ctx.set_table(t)?;
        } else {
            let t = ctx.table()?;
            // A failed write only loses the cache entry.
            let _ = cache.store(spec, &t);
        }
    }
    ctx.table()?;
    Ok(ctx)
}

pub fn embed_verify(cfg: &Config) -> Result<Outcome> {
    let space = cfg.spec.space()?;
    let size = (cfg.spec.field_size() as u128).checked_pow((space.len()) as u32);
    let (mode, chk) = match size {
        Some(s) if s.saturating_mul(s) <= cfg.budget => ("exhaustive", verify_embedding_exhaustive(&space)),
        _ => ("random", verify_embedding_random(&space, 1000, cfg.seed)),
    };
    Ok(Outcome::new(
        chk.passed(),
        json!({
            "mode": mode,
            "pairs_checked": chk.pairs_checked,
            "additive": chk.additive,
            "multiplicative": chk.multiplicative,
            "injective": chk.injective,
        }),
    ))
}

pub fn flags(cfg: &Config) -> Result<Outcome> {
    let reports = verify_all_flags(&cfg.spec, cfg.budget)?;
    let passed = reports.iter().all(|r| r.passed());
    let records = FlagKind::ALL
        .iter()
        .filter(|k| k.applies(cfg.spec.r))
        .map(|k| Ok(to_value(&k.build(&cfg.spec)?.to_record())))
        .collect::<Result<Vec<_>>>()?;
    let mut csv = csv_line(&["kind", "stabilizer_order", "radical_order", "admissible", "passed"].map(String::from));
    for r in &reports {
        csv += &csv_line(&[
            to_value(&r.kind).as_str().unwrap_or_default().to_string(),
            r.stabilizer_order.to_string(),
            r.radical_order.to_string(),
            r.admissible.to_string(),
            r.passed().to_string(),
        ]);
    }
    let not_applicable: Vec<Value> = FlagKind::ALL
        .iter()
        .filter(|k| !k.applies(cfg.spec.r))
        .map(to_value)
        .collect();
    Ok(Outcome::new(
        passed,
        json!({ "reports": reports, "flags": records, "not_applicable": not_applicable }),
    )
    .with_csv(csv))
}

pub fn orbits(cfg: &Config) -> Result<Outcome> {
    let spec = &cfg.spec;
    let part = OrbitPartition::compute(spec, cfg.budget)?;
    let alg = LieAlgebra::new(spec)?;
    let (pairs, upper) = upper_pairing_vanishes(&alg, cfg.budget)?;
    let mut checks = vec![
        ("partition_covers", part.total() as u128 == alg.size()),
        ("classification_invariant", part.classification_is_invariant()),
        ("nilpotent_orbits_meet_upper", part.nilpotent_orbits_meet_upper()),
        ("upper_pairing_vanishes", upper),
    ];
    if spec.r >= 2 {
        match induced_trivial_is_upper_sum(spec, cfg.budget) {
            Ok(ok) => checks.push(("induced_trivial_is_upper_sum", ok)),
            Err(Error::Precondition(_)) => {}
            Err(e) => return Err(e),
        }
    }
    let rows = part.rows();
    let mut csv = csv_line(
        &["index", "rep_code", "size", "centralizer_order", "nilpotent", "semisimple", "regular"].map(String::from),
    );
    for r in &rows {
        csv += &csv_line(&[
            r.index.to_string(),
            r.rep_code.to_string(),
            r.size.to_string(),
            r.centralizer_order.to_string(),
            r.nilpotent.to_string(),
            r.semisimple.to_string(),
            r.regular.to_string(),
        ]);
    }
    let passed = checks.iter().all(|(_, ok)| *ok);
    let checks: serde_json::Map<String, Value> = checks.into_iter().map(|(k, v)| (k.to_string(), json!(v))).collect();
    Ok(Outcome::new(
        passed,
        json!({ "orbits": rows.len(), "upper_pairs_checked": pairs, "checks": checks, "rows": rows }),
    )
    .with_csv(csv))
}

pub fn chartab(cfg: &Config) -> Result<Outcome> {
    let ctx = context_with_table(cfg, &cfg.spec)?;
    let table = ctx.table()?;
    let verified = table.verify().is_ok();
    let degrees = table.degrees();
    let sum_sq: i128 = degrees.iter().map(|d| d * d).sum();
    let cl = ctx.group.classes();
    let mut header = vec!["character".to_string(), "degree".to_string()];
    header.extend((0..cl.len()).map(|c| format!("class_{c}")));
    let mut csv = csv_line(&header);
    for (i, chi) in table.irreducibles().iter().enumerate() {
        let mut row = vec![i.to_string(), degrees[i].to_string()];
        row.extend(chi.values().iter().map(|v| v.to_exact_string()));
        csv += &csv_line(&row);
    }
    let mut data = json!({
        "order": ctx.group.order(),
        "classes": cl.len(),
        "irreducibles": table.len(),
        "degrees": degrees,
        "sum_of_squares": sum_sq.to_string(),
        "orthogonality": verified,
        "table": table.to_record(&cfg.spec.canonical()),
    });
    if cfg.cache.is_some() {
        data["cache_file"] = json!(TableCache::key(&cfg.spec) + ".json");
    }
    Ok(Outcome::new(verified && sum_sq == ctx.group.order() as i128, data).with_csv(csv))
}

pub fn nilpotent(cfg: &Config) -> Result<Outcome> {
    let ctx = context_with_table(cfg, &cfg.spec)?;
    let rep = nilpotent_reps(&ctx)?;
    Ok(Outcome::new(rep.agree(), json!({ "agree": rep.agree(), "report": rep })))
}

pub fn ggmod(cfg: &Config) -> Result<Outcome> {
    let ctx = context_with_table(cfg, &cfg.spec)?;
    let gg = verify_gelfand_graev(&ctx)?;
    let cov = verify_regular_coverage(&ctx)?;
    Ok(Outcome::new(gg.passed() && cov.passed(), json!({ "gelfand_graev": gg, "coverage": cov })))
}

pub fn non_nilpotency(cfg: &Config) -> Result<Outcome> {
    let ctx = context_with_table(cfg, &cfg.spec)?;
    if cfg.spec.family != Family::GL || cfg.spec.r < 2 {
        return Err(Error::Precondition("non-nilpotency is checked for GL_n with r ≥ 2".into()));
    }
    let data = NonNilpotencyData::new(&ctx)?;
    let mut verified = Vec::new();
    let mut skipped = Vec::new();
    for (i, theta) in linear_characters(data.torus())?.iter().enumerate() {
        let failed = failed_hypotheses(&ctx, theta)?;
        if failed.is_empty() {
            verified.push((i, verify_non_nilpotency(&ctx, &data, theta)?));
        } else {
            skipped.push(json!({ "theta": i, "failed": failed }));
        }
    }
    if verified.is_empty() {
        return Err(Error::Precondition("no θ satisfies the hypotheses".into()));
    }
    let passed = verified.iter().all(|(_, r)| r.passed());
    let verified: Vec<Value> = verified.iter().map(|(i, r)| json!({ "theta": i, "passed": r.passed(), "report": r })).collect();
    Ok(Outcome::new(passed, json!({ "checked": verified.len(), "verified": verified, "skipped": skipped })))
}

pub fn orbit_shift(cfg: &Config) -> Result<Outcome> {
    let sl_spec = cfg.spec.with_family(Family::SL);
    let gl_spec = cfg.spec.with_family(Family::GL);
    let sl = context_with_table(cfg, &sl_spec)?;
    let gl = context_with_table(cfg, &gl_spec)?;
    let rep = verify_orbit_shift(&sl, &gl)?;
    let (checked, lemma) = traceless_annihilator_is_scalar(&LieAlgebra::new(&gl_spec)?, cfg.budget)?;
    Ok(Outcome::new(
        rep.passed() && lemma,
        json!({ "shift": rep, "scalar_lemma": { "checked": checked, "holds": lemma } }),
    ))
}

pub fn lefschetz(cfg: &Config) -> Result<Outcome> {
    let sl_spec = cfg.spec.with_family(Family::SL);
    let gl_spec = cfg.spec.with_family(Family::GL);
    let slg = Arc::new(enumerate(&sl_spec, cfg.budget)?);
    let glg = Arc::new(enumerate(&gl_spec, cfg.budget)?);
    let sl = LangData::new(&sl_spec, slg.clone(), cfg.budget)?;
    let gl = LangData::new(&gl_spec, glg, cfg.budget)?;
    let gs = class_representatives(&slg);
    let lifts = linear_characters(&gl.torus)?;
    let nontrivial: Vec<&LinearCharacter> = lifts
        .iter()
        .filter(|t| t.restrict(&sl.torus).map_or(false, |r| !r.is_trivial()))
        .collect();
    let mut choices = vec![&lifts[0]];
    if !nontrivial.is_empty() {
        choices.push(nontrivial[(cfg.seed % nontrivial.len() as u64) as usize]);
    }
    let mut series = Vec::new();
    let mut passed = true;
    for tt in choices {
        let theta = tt.restrict(&sl.torus)?;
        let rep = verify_41_equals_42(&sl, &gl, &theta, tt, &[1, 2], &gs)?;
        passed &= rep.passed();
        series.push(json!({ "general_position": theta_general_position(&theta, &sl_spec).ok(), "report": rep }));
    }
    let oracle = match oracle_rows(&sl, &gs, &[1, 2], 2, cfg.budget) {
        Ok(rows) => {
            let ok = rows.iter().all(|r| r.lang == r.enumerated);
            passed &= ok;
            json!({ "status": "checked", "agree": ok, "rows": rows })
        }
        Err(e @ Error::Budget { .. }) => json!({ "status": "skipped", "reason": e.to_string() }),
        Err(e) => return Err(e),
    };
    let glgs = class_representatives(&gl.group);
    let pairing = match pairing_and_closure(&gl, sl.torus.order(), &glgs, 2, cfg.budget) {
        Ok(p) => Ok(p),
        Err(Error::Budget { .. }) => pairing_and_closure(&gl, sl.torus.order(), &glgs, 1, cfg.budget),
        Err(e) => Err(e),
    }?;
    passed &= pairing.pairing_ok && pairing.closure_ok;
    Ok(Outcome::new(passed, json!({ "series": series, "oracle": oracle, "pairing": pairing })))
}

pub fn invariant(cfg: &Config) -> Result<Outcome> {
    let ctx = Context::new(&cfg.spec, cfg.budget)?;
    let rep = verify_section6_identity(&ctx)?;
    Ok(Outcome::new(rep.passed(), to_value(&rep)))
}

pub type Runner = fn(&Config) -> Result<Outcome>;

pub const SUITE: [(&str, Runner); 10] = [
    ("embed-verify", embed_verify),
    ("flags", flags),
    ("orbits", orbits),
    ("chartab", chartab),
    ("nilpotent", nilpotent),
    ("ggmod", ggmod),
    ("non-nilpotency", non_nilpotency),
    ("orbit-shift", orbit_shift),
    ("lefschetz", lefschetz),
    ("invariant", invariant),
];

pub fn run_one(cfg: &Config, f: Runner) -> Outcome {
    f(cfg).unwrap_or_else(|e| Outcome::from_error(&e))
}

/// Every subcommand; inapplicable ones are marked skipped.
pub fn all(cfg: &Config) -> Outcome {
    let mut sections = serde_json::Map::new();
    let mut csv = csv_line(&["section".to_string(), "status".to_string()]);
    let mut worst = Status::Pass;
    for (name, f) in SUITE {
        let mut out = run_one(cfg, f);
        if out.status == Status::Precondition {
            out.status = Status::Skipped;
        }
        worst = match (worst, out.status) {
            (Status::MathFailure, _) | (_, Status::MathFailure) => Status::MathFailure,
            (Status::Budget, _) | (_, Status::Budget) => Status::Budget,
            _ => Status::Pass,
        };
        csv += &csv_line(&[name.to_string(), to_value(&out.status).as_str().unwrap_or_default().to_string()]);
        sections.insert(name.to_string(), json!({ "status": out.status, "result": out.data }));
    }
    Outcome { status: worst, data: Value::Object(sections), csv: Some(csv) }
}
