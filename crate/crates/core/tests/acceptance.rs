//! Acceptance criteria 1-13. Prints one line per criterion and exits
//! nonzero if any criterion fails or exceeds its time limit.

use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use flagdl_core::chars::{inner_product, linear_characters, CharacterTable, ClassFunction};
use flagdl_core::dlreal::gelfand::{verify_gelfand_graev, verify_regular_coverage};
use flagdl_core::dlreal::nilpotent::{failed_hypotheses, verify_non_nilpotency, NonNilpotencyData};
use flagdl_core::dlreal::{nilpotent_reps, verify_orbit_shift, verify_section6_identity, Context};
use flagdl_core::embed::verify::{verify_flag, verify_flag_linear, FlagKind};
use flagdl_core::embed::{verify_embedding_exhaustive, verify_embedding_random};
use flagdl_core::groups::algo::{double_cosets, sylow_subgroup};
use flagdl_core::groups::{congruence_kernel, enumerate, named, Family, GroupSpec, MatrixGroup};
use flagdl_core::lefschetz::{class_representatives, oracle_rows, pairing_and_closure, verify_41_equals_42, LangData};
use flagdl_core::liealg::dictionary::induced_trivial_is_upper_sum;
use flagdl_core::liealg::orbits::{upper_pairing_vanishes, OrbitPartition};
use flagdl_core::liealg::{traceless_annihilator_is_scalar, LieAlgebra};
use flagdl_core::{Error, Result};

/// Element budget for every enumeration.
const BUDGET: u128 = 1_000_000;
/// Random pairs for the embedding checks.
const EMBED_PAIRS: usize = 1000;
const EMBED_SEED: u64 = 20_240_601;
/// Frobenius reciprocity triples.
const FROBENIUS_TRIPLES: usize = 100;
const FROBENIUS_SEED: u64 = 7;
/// Minimum Mackey pairs per group.
const MACKEY_PAIRS: usize = 5;
/// Limit for the order-96 case inside criterion 6.
const SMALL_TABLE_LIMIT: Duration = Duration::from_secs(60);

struct Verdict {
    passed: bool,
    detail: String,
}

fn verdict(passed: bool, detail: impl Into<String>) -> Result<Verdict> {
    Ok(Verdict { passed, detail: detail.into() })
}

type Check = fn() -> Result<Verdict>;

const CRITERIA: [(u32, &str, u64, Check); 13] = [
    (1, "block embedding is a ring monomorphism", 10, c1_embedding),
    (2, "standard flag stabilizer is T_1·U with p-core U", 300, c2_standard_flag),
    (3, "case I flag stabilizer and partial flag", 120, c3_case1),
    (4, "case II flag stabilizer", 120, c4_case2),
    (5, "upper pairing, induced trivial as φ-sum, nilpotent orbits meet u'", 60, c5_lie),
    (6, "nilpotent irreducibles: orbits versus induction", 1800, c6_nilpotent),
    (7, "regular θ: no nilpotent constituent", 300, c7_non_nilpotency),
    (8, "SL and GL counting series agree", 1800, c8_counting),
    (9, "orbit shift by a scalar and the scalar lemma", 300, c9_orbit_shift),
    (10, "Σ_θ R_{F,T_1}^θ = Ind_{U_1}^G 1", 120, c10_regular_sum),
    (11, "Gelfand–Graev multiplicity one and regular coverage", 1800, c11_gelfand_graev),
    (12, "orbit-sum identity on the last kernel", 300, c12_invariant),
    (13, "tables, Mackey, Frobenius reciprocity, determinism", 600, c13_infrastructure),
];

fn main() {
    let filter: Vec<u32> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let mut failures = 0;
    for (id, name, limit, check) in CRITERIA {
        if !filter.is_empty() && !filter.contains(&id) {
            continue;
        }
        let start = Instant::now();
        let outcome = check();
        let secs = start.elapsed().as_secs_f64();
        let (ok, detail) = match outcome {
            Ok(v) => (v.passed, v.detail),
            Err(e) => (false, format!("error: {e}")),
        };
        let in_time = secs <= limit as f64;
        let status = if ok && in_time { "PASS" } else { "FAIL" };
        if status == "FAIL" {
            failures += 1;
        }
        let late = if in_time { "" } else { " over time limit" };
        println!("criterion {id:>2} {status} {name}: {detail} [{secs:.2}s / {limit}s{late}]");
    }
    if failures > 0 {
        println!("{failures} criteria failed");
        std::process::exit(1);
    }
}

fn gl(n: usize, q: u32, r: usize) -> GroupSpec {
    GroupSpec::gl(n, q, r)
}

fn c1_embedding() -> Result<Verdict> {
    let small = verify_embedding_exhaustive(&*gl(1, 2, 2).space()?);
    let mut ok = small.passed();
    let mut detail = format!("(1,2,2) exhaustive {} pairs", small.pairs_checked);
    for (n, r, q) in [(2, 3, 3), (3, 2, 2)] {
        let c = verify_embedding_random(&*gl(n, q, r).space()?, EMBED_PAIRS, EMBED_SEED);
        ok &= c.passed() && c.pairs_checked == EMBED_PAIRS;
        detail += &format!("; ({n},{r},{q}) {} random pairs", c.pairs_checked);
    }
    verdict(ok, detail)
}

fn c2_standard_flag() -> Result<Verdict> {
    let (mut ran, mut skipped, mut scanned, mut ok) = (0, Vec::new(), 0, true);
    for n in [2, 3] {
        for r in [2, 3] {
            for q in [2, 3] {
                for a in [1, 2] {
                    let spec = GroupSpec::new(Family::GL, n, q, a, r)?;
                    match verify_flag_linear(FlagKind::StandardDl, &spec, BUDGET) {
                        Ok(rep) => {
                            ran += 1;
                            ok &= rep.passed();
                            if let Ok(g) = enumerate(&spec, BUDGET) {
                                scanned += 1;
                                ok &= verify_flag(FlagKind::StandardDl, &spec, &g, BUDGET)?.passed();
                            }
                        }
                        Err(Error::Budget { .. }) => skipped.push(format!("({n},{r},{q},{a})")),
                        Err(e) => return Err(e),
                    }
                }
            }
        }
    }
    verdict(
        ok && ran > 0,
        format!("{ran} of 16 specs within budget ({scanned} also by scan); over budget: {}", skipped.join(" ")),
    )
}

fn c3_case1() -> Result<Verdict> {
    let spec = gl(2, 2, 3);
    let g = enumerate(&spec, BUDGET)?;
    let rep = verify_flag(FlagKind::Case1, &spec, &g, BUDGET)?;
    let partial = rep.extra.iter().any(|(k, v)| k == "partial_flag_closed_form" && *v);
    verdict(
        rep.passed() && partial,
        format!("|B_F| = {}, |U_F| = {}, partial flag closed form {partial}", rep.stabilizer_order, rep.radical_order),
    )
}

fn c4_case2() -> Result<Verdict> {
    let mut ok = true;
    let mut parts = Vec::new();
    for n in [2, 3] {
        for q in [2, 3] {
            let spec = gl(n, q, 2);
            let rep = verify_flag_linear(FlagKind::Case2, &spec, BUDGET)?;
            ok &= rep.passed();
            let mut tag = format!("n={n} q={q}: |B_F| = {}", rep.stabilizer_order);
            if let Ok(g) = enumerate(&spec, BUDGET) {
                ok &= verify_flag(FlagKind::Case2, &spec, &g, BUDGET)?.passed();
                tag += " (scan agrees)";
            }
            parts.push(tag);
        }
    }
    verdict(ok, parts.join("; "))
}

fn c5_lie() -> Result<Verdict> {
    let mut ok = true;
    let mut pairs = 0;
    let mut partitions = 0;
    for n in 1..=3 {
        for q in [2, 3] {
            let spec = gl(n, q, 2);
            let (k, v) = upper_pairing_vanishes(&LieAlgebra::new(&spec)?, BUDGET)?;
            pairs += k;
            ok &= v;
            for s in [spec.clone(), spec.with_family(Family::SL)] {
                if s.trace_form_nondegenerate() {
                    ok &= OrbitPartition::compute(&s, BUDGET)?.nilpotent_orbits_meet_upper();
                    partitions += 1;
                }
            }
        }
    }
    let specs = [gl(2, 2, 2), gl(2, 3, 2), GroupSpec::sl(2, 3, 2), gl(3, 2, 2), gl(2, 2, 3), gl(1, 3, 2)];
    for s in &specs {
        ok &= induced_trivial_is_upper_sum(s, BUDGET)?;
    }
    verdict(
        ok,
        format!("{pairs} pairs (u', b') checked, {partitions} orbit partitions, {} φ-sum identities", specs.len()),
    )
}

fn c6_nilpotent() -> Result<Verdict> {
    let mut ok = true;
    let mut parts = Vec::new();
    for spec in [gl(2, 2, 2), gl(2, 3, 2), GroupSpec::sl(2, 3, 2)] {
        let start = Instant::now();
        let ctx = Context::new(&spec, BUDGET)?;
        let rep = nilpotent_reps(&ctx)?;
        let took = start.elapsed();
        ok &= rep.agree();
        if ctx.group.order() == 96 {
            ok &= took <= SMALL_TABLE_LIMIT;
        }
        parts.push(format!("{spec} order {}: {} of {} nilpotent", ctx.group.order(), rep.via_orbits.len(), rep.irreducibles));
    }
    verdict(ok, parts.join("; "))
}

fn c7_non_nilpotency() -> Result<Verdict> {
    let ctx = Context::new(&gl(2, 3, 2), BUDGET)?;
    let data = NonNilpotencyData::new(&ctx)?;
    let thetas = linear_characters(data.torus())?;
    let (mut checked, mut ok) = (0, true);
    for theta in &thetas {
        if failed_hypotheses(&ctx, theta)?.is_empty() {
            checked += 1;
            ok &= verify_non_nilpotency(&ctx, &data, theta)?.passed();
        }
    }
    verdict(ok && checked > 0, format!("{checked} of {} characters of T^F satisfy the hypotheses", thetas.len()))
}

fn c8_counting() -> Result<Verdict> {
    let sl_spec = GroupSpec::sl(2, 3, 2);
    let gl_spec = gl(2, 3, 2);
    let slg = Arc::new(enumerate(&sl_spec, BUDGET)?);
    let sl = LangData::new(&sl_spec, slg.clone(), BUDGET)?;
    let gll = LangData::new(&gl_spec, Arc::new(enumerate(&gl_spec, BUDGET)?), BUDGET)?;
    let gs = class_representatives(&slg);
    let lifts = linear_characters(&gll.torus)?;
    let nontrivial = lifts
        .iter()
        .find(|t| t.restrict(&sl.torus).map_or(false, |r| !r.is_trivial()))
        .ok_or_else(|| Error::Verification("no lift with nontrivial restriction".into()))?;
    let mut ok = true;
    let mut rows = 0;
    for tt in [&lifts[0], nontrivial] {
        let rep = verify_41_equals_42(&sl, &gll, &tt.restrict(&sl.torus)?, tt, &[1, 2], &gs)?;
        ok &= rep.passed();
        rows += rep.rows.len();
    }
    let oracle = oracle_rows(&sl, &gs, &[1, 2], 2, BUDGET)?;
    ok &= !oracle.is_empty() && oracle.iter().all(|r| r.lang == r.enumerated);
    let small = LangData::new(&gl(2, 2, 2), Arc::new(enumerate(&gl(2, 2, 2), BUDGET)?), BUDGET)?;
    let small_gs = class_representatives(&small.group);
    let pc = pairing_and_closure(&small, 2, &small_gs, 2, BUDGET)?;
    let pc3 = pairing_and_closure(&gll, sl.torus.order(), &class_representatives(&gll.group), 1, BUDGET)?;
    ok &= pc.pairing_ok && pc.closure_ok && pc3.pairing_ok && pc3.closure_ok;
    verdict(
        ok,
        format!(
            "{rows} (d, g, θ) rows over {} classes; {} Lang counts match enumeration over F_9; pairing and closure on {} points",
            gs.len(),
            oracle.len(),
            pc.lang_points + pc3.lang_points
        ),
    )
}

fn c9_orbit_shift() -> Result<Verdict> {
    let sl = Context::new(&GroupSpec::sl(2, 3, 2), BUDGET)?;
    let gl_ctx = Context::new(&gl(2, 3, 2), BUDGET)?;
    let rep = verify_orbit_shift(&sl, &gl_ctx)?;
    let mut ok = rep.passed();
    let mut lemma = Vec::new();
    for n in [2, 3] {
        let (k, v) = traceless_annihilator_is_scalar(&LieAlgebra::new(&gl(n, 3, 1))?, BUDGET)?;
        ok &= v;
        lemma.push(format!("n={n}: {k} elements"));
    }
    verdict(ok, format!("{} constituent pairs over {} θ; scalar lemma {}", rep.pairs.len(), rep.thetas, lemma.join(", ")))
}

fn c10_regular_sum() -> Result<Verdict> {
    let mut ok = true;
    for q in [2, 3] {
        let ctx = Context::new(&gl(2, q, 2), BUDGET)?;
        let rep = verify_regular_coverage(&ctx)?;
        ok &= rep.sum_is_induced && rep.radical_is_u1;
    }
    verdict(ok, "exact class-function equality for q = 2, 3")
}

fn c11_gelfand_graev() -> Result<Verdict> {
    let mut ok = true;
    let mut parts = Vec::new();
    for q in [2, 3] {
        let ctx = Context::new(&gl(2, q, 2), BUDGET)?;
        let gg = verify_gelfand_graev(&ctx)?;
        let cov = verify_regular_coverage(&ctx)?;
        ok &= gg.passed() && cov.passed();
        parts.push(format!(
            "q={q}: {} non-degenerate ψ, {} regular irreducibles, deg Γ = {}",
            gg.nondegenerate_data,
            gg.regular.len(),
            gg.degree
        ));
    }
    verdict(ok, parts.join("; "))
}

fn c12_invariant() -> Result<Verdict> {
    let mut ok = true;
    let mut parts = Vec::new();
    for q in [2, 3] {
        let ctx = Context::new(&gl(2, q, 2), BUDGET)?;
        let rep = verify_section6_identity(&ctx)?;
        ok &= rep.passed();
        parts.push(format!("q={q}: {} orbit sums, {} double cosets", rep.orbits, rep.double_cosets));
    }
    verdict(ok, parts.join("; "))
}

fn subgroups(spec: &GroupSpec) -> Result<Vec<(&'static str, Arc<MatrixGroup>)>> {
    let g = enumerate(spec, BUDGET)?;
    Ok(vec![
        ("B", Arc::new(named::borel(spec, BUDGET)?)),
        ("T", Arc::new(named::torus(spec, BUDGET)?)),
        ("U", Arc::new(named::unipotent(spec, BUDGET)?)),
        ("T_1", Arc::new(named::torus_level1(spec, BUDGET)?)),
        ("U_1", Arc::new(named::unipotent_level1(spec, BUDGET)?)),
        ("B^{r-1}", Arc::new(named::borel_kernel(spec, spec.r - 1, BUDGET)?)),
        ("K", Arc::new(congruence_kernel(spec, spec.r - 1, BUDGET)?)),
        ("Syl", Arc::new(sylow_subgroup(&g, spec.p() as usize)?)),
    ])
}

/// `Res_K Ind_H^G χ = Σ_{HxK} Ind_{K ∩ x⁻¹Hx}^K χ^x`.
fn mackey(g: &Arc<MatrixGroup>, h: &Arc<MatrixGroup>, k: &Arc<MatrixGroup>, chi: &ClassFunction) -> Result<bool> {
    let lhs = chi.induce(g)?.restrict(k)?;
    let s = g.space();
    let mut rhs = ClassFunction::zero(k.clone());
    for dc in double_cosets(g, h, k)? {
        let x = g.element(dc[0]).clone();
        let xi = s.inverse(&x).expect("invertible");
        let inter = Arc::new(k.filter("K∩H^x", |m| h.contains(&s.mul(&s.mul(&x, m), &xi))));
        let reps = inter.classes().reps.clone();
        let part = ClassFunction::from_fn(inter.clone(), |c| {
            let y = s.mul(&s.mul(&x, inter.element(reps[c])), &xi);
            chi.at(h.index_of(&y).expect("conjugate lies in H")).clone()
        })?;
        rhs = rhs.add(&part.induce(k)?)?;
    }
    Ok(lhs == rhs)
}

fn c13_infrastructure() -> Result<Verdict> {
    let mut ok = true;
    let mut tables = 0;
    let mut sizes = Vec::new();
    let specs = [gl(1, 3, 2), gl(2, 2, 1), gl(1, 2, 3), gl(2, 2, 2), GroupSpec::sl(2, 3, 2), gl(2, 3, 2)];
    let mut groups = Vec::new();
    for spec in &specs {
        let g = Arc::new(enumerate(spec, BUDGET)?);
        let t = CharacterTable::compute(g.clone(), BUDGET)?;
        ok &= t.verify().is_ok();
        ok &= t.degrees().iter().map(|d| d * d).sum::<i128>() == g.order() as i128;
        tables += 1;
        sizes.push(g.order());
        groups.push((spec.clone(), g, t));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(FROBENIUS_SEED);
    let mut mackey_total = 0;
    let big: Vec<_> = groups.iter().filter(|(s, _, _)| s.n == 2 && s.r == 2).collect();
    let mut subs = Vec::new();
    for (spec, g, _) in &big {
        let list: Vec<_> = subgroups(spec)?
            .into_iter()
            .map(|(n, h)| CharacterTable::compute(h.clone(), BUDGET).map(|t| (n, h, t)))
            .collect::<Result<_>>()?;
        let pairs = [("B", "T"), ("U", "B"), ("T_1", "U_1"), ("B^{r-1}", "K"), ("Syl", "T"), ("T", "U_1")];
        let find = |n: &str| list.iter().find(|(m, _, _)| *m == n).expect("named subgroup");
        let mut count = 0;
        for (hn, kn) in pairs {
            let ((_, h, th), (_, k, _)) = (find(hn), find(kn));
            let chi = &th.irreducibles()[rng.gen_range(0..th.len())];
            ok &= mackey(g, h, k, chi)?;
            count += 1;
        }
        ok &= count >= MACKEY_PAIRS;
        mackey_total += count;
        subs.push(list);
    }

    for _ in 0..FROBENIUS_TRIPLES {
        let gi = rng.gen_range(0..big.len());
        let (_, g, t) = big[gi];
        let (_, h, th) = &subs[gi][rng.gen_range(0..subs[gi].len())];
        let psi = &th.irreducibles()[rng.gen_range(0..th.len())];
        let chi = &t.irreducibles()[rng.gen_range(0..t.len())];
        ok &= inner_product(&psi.induce(g)?, chi)? == inner_product(psi, &chi.restrict(h)?)?;
    }

    let run = || -> Result<String> {
        let ctx = Context::new(&gl(2, 2, 2), BUDGET)?;
        let rec = ctx.table()?.to_record(&ctx.spec.canonical());
        Ok(format!("{:?}{:?}{:?}", rec, nilpotent_reps(&ctx)?, verify_section6_identity(&ctx)?))
    };
    let deterministic = run()? == run()?;
    ok &= deterministic;
    verdict(
        ok,
        format!(
            "{tables} tables (orders {sizes:?}); {mackey_total} Mackey pairs; {FROBENIUS_TRIPLES} reciprocity triples; deterministic {deterministic}"
        ),
    )
}
