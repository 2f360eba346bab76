//! Twisted fixed-point counts `#{x : L(x) ∈ FU, g·F^d(x)·t = x}` and the
//! comparison of the `θ`-weighted series for `SL_n ⊂ GL_n`.
//!
//! The count is computed through Lang's theorem: `L^{-1}(U) = G^F·U`, and
//! writing `x = γv` gives
//! `count(g, t, d) = q^{d·dim U} / |U^F| · #{γ ∈ G^F : t·γ⁻¹gγ ∈ U^F}`.
//! An enumeration over `G(F_{q^{dk}})` with `g^k = t^k = 1` checks this
//! where the budget allows.

use std::collections::BTreeMap;
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::arith::cyclo::lcm;
use crate::arith::CyclotomicNumber;
use crate::chars::LinearCharacter;
use crate::error::{invalid, precondition, Error, Result};
use crate::groups::{enumerate, named, Family, GroupSpec, Mat, MatSpace, MatrixGroup};

/// Group, split torus and unipotent radical of one family at `a = 1`.
pub struct LangData {
    pub spec: GroupSpec,
    pub group: Arc<MatrixGroup>,
    pub torus: Arc<MatrixGroup>,
    pub unipotent_order: usize,
    /// `dim U = r·n(n-1)/2` as a variety over `F_q`.
    pub dim_u: u32,
}

impl LangData {
    pub fn new(spec: &GroupSpec, group: Arc<MatrixGroup>, budget: u128) -> Result<Self> {
        if spec.a != 1 {
            return precondition("counting series are taken over the rational points, a = 1");
        }
        let torus = Arc::new(named::torus(spec, budget)?);
        let unipotent_order = named::unipotent(spec, budget)?.order();
        Ok(LangData {
            spec: spec.clone(),
            group,
            torus,
            unipotent_order,
            dim_u: (spec.r * spec.n * (spec.n - 1) / 2) as u32,
        })
    }

    /// `hist[τ] = #{γ ∈ G^F : γ⁻¹gγ ∈ τ·U^F}`, indexed by torus element.
    pub fn histogram(&self, g: &Mat) -> Vec<u64> {
        let s = self.group.space();
        let mut hist = vec![0u64; self.torus.order()];
        let parts: Vec<Option<usize>> = self
            .group
            .elements()
            .par_iter()
            .map(|gamma| {
                let h = s.conj(&s.inverse(gamma).expect("invertible"), g).expect("invertible");
                upper_torus_part(s, &h).and_then(|d| self.torus.index_of(&d))
            })
            .collect();
        for t in parts.into_iter().flatten() {
            hist[t] += 1;
        }
        hist
    }

    fn scale(&self, d: u32) -> u128 {
        (self.spec.field_size() as u128).pow(d * self.dim_u)
    }

    /// `count(g, t, d)` for every `t ∈ T^F`, from one histogram.
    pub fn counts(&self, g: &Mat, d: u32) -> Result<Vec<u128>> {
        if d == 0 {
            return invalid("extension degree d must be positive");
        }
        let hist = self.histogram(g);
        let u = self.unipotent_order as u64;
        (0..self.torus.order())
            .map(|t| {
                let h = hist[self.torus.inv(t)];
                if h % u != 0 {
                    return Err(Error::Verification("histogram not a multiple of |U^F|".into()));
                }
                Ok(self.scale(d) * (h / u) as u128)
            })
            .collect()
    }

    /// `#{x : L(x) ∈ FU, g·F^d(x)·t = x}`.
    pub fn twisted_fixed_count(&self, g: &Mat, t: &Mat, d: u32) -> Result<u128> {
        let ti = self.torus.index_of(t).ok_or_else(|| Error::Invalid("t is not in T^F".into()))?;
        Ok(self.counts(g, d)?[ti])
    }

    /// `(1/|T^F|) Σ_t θ(t⁻¹)·count(g, t, d)`.
    pub fn series(&self, theta: &LinearCharacter, g: &Mat, d: u32) -> Result<CyclotomicNumber> {
        if !Arc::ptr_eq(theta.group(), &self.torus) {
            return invalid("θ is not a character of this torus");
        }
        let counts = self.counts(g, d)?;
        let m = theta.conductor();
        let mut weights = vec![0i64; m as usize];
        for (t, &c) in counts.iter().enumerate() {
            weights[((m - theta.exp(t)) % m) as usize] += i64::try_from(c).map_err(|_| Error::Invalid("count overflows".into()))?;
        }
        Ok(CyclotomicNumber::from_root_counts(m, &weights).scale(1, self.torus.order() as i128))
    }
}

/// Diagonal part of an upper-triangular `h`, or `None`.
fn upper_torus_part(s: &MatSpace, h: &Mat) -> Option<Mat> {
    let n = s.n();
    for l in 0..s.level() {
        for i in 0..n {
            for j in 0..i {
                if s.get(h, l, i, j) != 0 {
                    return None;
                }
            }
        }
    }
    Some(s.from_fn(|l, i, j| if i == j { s.get(h, l, i, i) } else { 0 }))
}

fn is_upper_unitriangular(s: &MatSpace, h: &Mat) -> bool {
    let n = s.n();
    (0..s.level()).all(|l| {
        (0..n).all(|i| (0..=i).all(|j| s.get(h, l, i, j) == if i == j && l == 0 { 1 } else { 0 }))
    })
}

fn mat_order(s: &MatSpace, m: &Mat) -> u32 {
    let mut k = 1;
    let mut cur = m.clone();
    while !s.is_identity(&cur) {
        cur = s.mul(&cur, m);
        k += 1;
    }
    k
}

/// `G(W_r(F_{q^m}))` with the embedding of `F_q`-matrices into it.
pub struct Extension {
    pub degree: u32,
    pub group: MatrixGroup,
    table: Vec<crate::arith::Fe>,
}

impl Extension {
    pub fn new(spec: &GroupSpec, m: u32, budget: u128) -> Result<Self> {
        let big = spec.with_degree(m);
        let group = enumerate(&big, budget)?;
        let table = group.space().field().embedding_of(&spec.space()?.field().clone())?;
        Ok(Extension { degree: m, group, table })
    }

    pub fn embed(&self, a: &Mat) -> Mat {
        Mat(a.0.iter().map(|&x| self.table[x as usize]).collect())
    }

    /// Points of `L^{-1}(U)` in this extension.
    pub fn lang_preimage(&self) -> Vec<&Mat> {
        let s = self.group.space();
        self.group
            .elements()
            .par_iter()
            .filter(|x| s.lang(x).map_or(false, |l| is_upper_unitriangular(s, &l)))
            .collect()
    }

    /// Solutions of `g·F^d(x)·t = x` with `L(x) ∈ U`.
    pub fn solutions(&self, g: &Mat, t: &Mat, d: u32) -> Vec<&Mat> {
        let s = self.group.space();
        let (g, t) = (self.embed(g), self.embed(t));
        self.group
            .elements()
            .par_iter()
            .filter(|x| {
                s.mul(&s.mul(&g, &s.frobenius_pow(x, d as usize)), &t) == **x
                    && s.lang(x).map_or(false, |l| is_upper_unitriangular(s, &l))
            })
            .collect()
    }
}

/// The extension degree in which every solution for `(g, t, d)` lies.
pub fn solution_degree(s: &MatSpace, g: &Mat, t: &Mat, d: u32) -> u32 {
    d * lcm(mat_order(s, g) as u64, mat_order(s, t) as u64) as u32
}

/// Direct count over `G(F_{q^{dk}})`.
pub fn twisted_fixed_count_enumerated(spec: &GroupSpec, g: &Mat, t: &Mat, d: u32, budget: u128) -> Result<u128> {
    let s = spec.space()?;
    let m = solution_degree(&s, g, t, d);
    Ok(Extension::new(spec, m, budget)?.solutions(g, t, d).len() as u128)
}

#[derive(Clone, Debug, Serialize)]
pub struct OracleRow {
    pub g: String,
    pub t: String,
    pub d: u32,
    pub extension: u32,
    pub lang: u128,
    pub enumerated: u128,
}

/// Lang-route counts against enumeration, for all `g` in `gs`, all `t` and
/// the given `d`, skipping triples whose extension exceeds `max_degree`.
pub fn oracle_rows(data: &LangData, gs: &[Mat], ds: &[u32], max_degree: u32, budget: u128) -> Result<Vec<OracleRow>> {
    let s = data.group.space().clone();
    let mut exts: BTreeMap<u32, Extension> = BTreeMap::new();
    let mut rows = Vec::new();
    for &d in ds {
        for g in gs {
            let counts = data.counts(g, d)?;
            for (ti, t) in data.torus.elements().iter().enumerate() {
                let m = solution_degree(&s, g, t, d);
                if m > max_degree {
                    continue;
                }
                if !exts.contains_key(&m) {
                    exts.insert(m, Extension::new(&data.spec, m, budget)?);
                }
                let enumerated = exts[&m].solutions(g, t, d).len() as u128;
                rows.push(OracleRow {
                    g: s.code(g).to_string(),
                    t: s.code(t).to_string(),
                    d,
                    extension: m,
                    lang: counts[ti],
                    enumerated,
                });
            }
        }
    }
    Ok(rows)
}

#[derive(Clone, Debug, Serialize)]
pub struct PairingCheck {
    pub extension: u32,
    pub lang_points: usize,
    pub torus_order: usize,
    /// Every `x ∈ L^{-1}(Ũ)` has exactly `|T^F|` partners `λ` with `xλ ∈ SL_n`.
    pub pairing_ok: bool,
    pub solutions_in_sl: usize,
    /// Every solution `y ∈ SL_n` of `g·F^d(y)·t″ = y` has `t″ ∈ SL_n`.
    pub closure_ok: bool,
}

/// Pairing and closure facts on the `GL_n` data, enumerated in degree `m`.
/// Elements of `gs` outside `SL_n` are skipped.
pub fn pairing_and_closure(gl: &LangData, sl_torus_order: usize, gs: &[Mat], m: u32, budget: u128) -> Result<PairingCheck> {
    if gl.spec.family != Family::GL {
        return invalid("pairing check runs on GL_n data");
    }
    let ext = Extension::new(&gl.spec, m, budget)?;
    let s = ext.group.space();
    let one = s.ring().one();
    let lams: Vec<Mat> = gl.torus.elements().iter().map(|l| ext.embed(l)).collect();
    let pts = ext.lang_preimage();
    let pairing_ok = pts
        .par_iter()
        .all(|x| lams.iter().filter(|l| s.det(&s.mul(x, l)) == one).count() == sl_torus_order);
    let mut solutions_in_sl = 0;
    let mut closure_ok = true;
    let base_one = gl.group.space().ring().one();
    for g in gs.iter().filter(|g| gl.group.space().det(g) == base_one) {
        for t in gl.torus.elements() {
            if m % solution_degree(gl.group.space(), g, t, 1) != 0 {
                continue;
            }
            let te = ext.embed(t);
            for y in ext.solutions(g, t, 1) {
                if s.det(y) == one {
                    solutions_in_sl += 1;
                    closure_ok &= s.det(&te) == one;
                }
            }
        }
    }
    Ok(PairingCheck { extension: m, lang_points: pts.len(), torus_order: sl_torus_order, pairing_ok, solutions_in_sl, closure_ok })
}

#[derive(Clone, Debug, Serialize)]
pub struct LefschetzRow {
    pub d: u32,
    pub g: String,
    pub series_41: String,
    pub series_42: String,
    pub equal: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct LefschetzReport {
    pub sl_spec: String,
    pub gl_spec: String,
    pub theta_trivial: bool,
    pub rows: Vec<LefschetzRow>,
}

impl LefschetzReport {
    pub fn passed(&self) -> bool {
        !self.rows.is_empty() && self.rows.iter().all(|r| r.equal)
    }
}

/// Compares the `SL_n` series for `θ` with the `GL_n` series for `θ̃` at
/// every `d` in `ds` and every `g` in `gs ⊂ SL_n^F`.
pub fn verify_41_equals_42(
    sl: &LangData,
    gl: &LangData,
    theta: &LinearCharacter,
    theta_tilde: &LinearCharacter,
    ds: &[u32],
    gs: &[Mat],
) -> Result<LefschetzReport> {
    if sl.spec.family != Family::SL || sl.spec.with_family(Family::GL) != gl.spec {
        return invalid("series comparison needs SL_n inside GL_n over the same ring");
    }
    if theta_tilde.restrict(&sl.torus)?.to_class_function() != theta.to_class_function() {
        return precondition("θ̃ does not restrict to θ");
    }
    let s = sl.group.space();
    let mut rows = Vec::new();
    for &d in ds {
        for g in gs {
            if !sl.group.contains(g) {
                return invalid("g is not in SL_n^F");
            }
            let a = sl.series(theta, g, d)?;
            let b = gl.series(theta_tilde, g, d)?;
            rows.push(LefschetzRow {
                d,
                g: s.code(g).to_string(),
                series_41: a.to_exact_string(),
                series_42: b.to_exact_string(),
                equal: a == b,
            });
        }
    }
    Ok(LefschetzReport {
        sl_spec: sl.spec.to_string(),
        gl_spec: gl.spec.to_string(),
        theta_trivial: theta.is_trivial(),
        rows,
    })
}

/// One representative per conjugacy class.
pub fn class_representatives(g: &MatrixGroup) -> Vec<Mat> {
    g.classes().reps.iter().map(|&i| g.element(i).clone()).collect()
}
