//! The Lie algebra `𝔤 = gl_n` or `sl_n` over `F_{q^a}`, viewed through
//! `ι(X) = I + π^{r-1} X` as the last congruence kernel.

pub mod dictionary;
pub mod orbits;

pub use dictionary::{omega_prime, phi_y, OmegaPrime};
pub use orbits::{adjoint_orbit, AdjointOrbit, OrbitPartition};

use std::sync::Arc;

use serde::Serialize;

use crate::arith::linalg::nullspace;
use crate::arith::{poly, Fe, GaloisField};
use crate::error::{invalid, precondition, Result};
use crate::groups::{Family, GroupSpec, Mat, MatSpace};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LieElem {
    pub family: Family,
    pub n: usize,
    /// Row-major entries.
    pub data: Vec<Fe>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize)]
pub struct Classification {
    pub nilpotent: bool,
    pub semisimple: bool,
    pub regular: bool,
}

#[derive(Clone, Debug)]
pub struct LieAlgebra {
    field: Arc<GaloisField>,
    family: Family,
    n: usize,
}

impl LieAlgebra {
    pub fn new(spec: &GroupSpec) -> Result<Self> {
        Ok(LieAlgebra { field: spec.point_field()?, family: spec.family, n: spec.n })
    }

    pub fn field(&self) -> &Arc<GaloisField> {
        &self.field
    }
    pub fn family(&self) -> Family {
        self.family
    }
    pub fn n(&self) -> usize {
        self.n
    }
    pub fn dim(&self) -> usize {
        match self.family {
            Family::GL => self.n * self.n,
            Family::SL => self.n * self.n - 1,
        }
    }
    pub fn size(&self) -> u128 {
        (self.field.size() as u128).pow(self.dim() as u32)
    }

    pub fn elem(&self, data: Vec<Fe>) -> Result<LieElem> {
        if data.len() != self.n * self.n {
            return invalid(format!("expected {} entries", self.n * self.n));
        }
        let x = LieElem { family: self.family, n: self.n, data };
        if self.family == Family::SL && self.trace(&x) != 0 {
            return invalid("sl elements must be traceless");
        }
        Ok(x)
    }

    pub fn zero(&self) -> LieElem {
        LieElem { family: self.family, n: self.n, data: vec![0; self.n * self.n] }
    }

    /// `c·I` (only traceless in `sl_n` when `p | n` or `c = 0`).
    pub fn scalar(&self, c: Fe) -> LieElem {
        let mut x = self.zero();
        for i in 0..self.n {
            x.data[i * self.n + i] = c;
        }
        x.family = Family::GL;
        x
    }

    /// `E_{ij}` with 0-based indices.
    pub fn elementary(&self, i: usize, j: usize) -> LieElem {
        let mut x = self.zero();
        x.data[i * self.n + j] = 1;
        if i == j {
            x.family = Family::GL;
        }
        x
    }

    pub fn code(&self, x: &LieElem) -> u64 {
        let q = self.field.size() as u64;
        x.data.iter().rev().fold(0, |acc, &c| acc * q + c as u64)
    }

    pub fn decode(&self, mut code: u64) -> LieElem {
        let q = self.field.size() as u64;
        let data = (0..self.n * self.n)
            .map(|_| {
                let c = (code % q) as Fe;
                code /= q;
                c
            })
            .collect();
        let mut x = LieElem { family: Family::GL, n: self.n, data };
        if self.trace(&x) == 0 {
            x.family = self.family;
        }
        x
    }

    /// Every element, in code order.
    pub fn elements(&self, budget: u128) -> Result<Vec<LieElem>> {
        let total = (self.field.size() as u128).pow((self.n * self.n) as u32);
        if total > budget {
            return Err(crate::Error::Budget { what: "Lie algebra".into(), needed: total, budget });
        }
        Ok((0..total as u64)
            .map(|c| self.decode(c))
            .filter(|x| self.family == Family::GL || self.trace(x) == 0)
            .map(|mut x| {
                x.family = self.family;
                x
            })
            .collect())
    }

    pub fn add(&self, x: &LieElem, y: &LieElem) -> LieElem {
        let data = x.data.iter().zip(&y.data).map(|(&a, &b)| self.field.add(a, b)).collect();
        LieElem { family: x.family.min(y.family), n: self.n, data }
    }

    pub fn sub(&self, x: &LieElem, y: &LieElem) -> LieElem {
        let data = x.data.iter().zip(&y.data).map(|(&a, &b)| self.field.sub(a, b)).collect();
        LieElem { family: x.family.min(y.family), n: self.n, data }
    }

    pub fn scale(&self, c: Fe, x: &LieElem) -> LieElem {
        LieElem { family: x.family, n: self.n, data: x.data.iter().map(|&a| self.field.mul(c, a)).collect() }
    }

    /// Matrix product, tagged `gl`.
    pub fn mul(&self, x: &LieElem, y: &LieElem) -> LieElem {
        LieElem { family: Family::GL, n: self.n, data: matmul(&self.field, &x.data, &y.data, self.n) }
    }

    pub fn trace(&self, x: &LieElem) -> Fe {
        (0..self.n).fold(0, |acc, i| self.field.add(acc, x.data[i * self.n + i]))
    }

    /// `μ(X, Y) = Tr(XY)`.
    pub fn trace_form(&self, x: &LieElem, y: &LieElem) -> Fe {
        let n = self.n;
        let f = &self.field;
        let mut acc = 0;
        for i in 0..n {
            for k in 0..n {
                acc = f.add(acc, f.mul(x.data[i * n + k], y.data[k * n + i]));
            }
        }
        acc
    }

    /// `g X g^{-1}` for field matrices `g`, `g_inv`.
    pub fn conjugate(&self, g: &[Fe], g_inv: &[Fe], x: &LieElem) -> LieElem {
        let t = matmul(&self.field, g, &x.data, self.n);
        LieElem { family: x.family, n: self.n, data: matmul(&self.field, &t, g_inv, self.n) }
    }

    pub fn is_scalar(&self, x: &LieElem) -> bool {
        let n = self.n;
        (0..n).all(|i| (0..n).all(|j| if i == j { x.data[i * n + i] == x.data[0] } else { x.data[i * n + j] == 0 }))
    }

    pub fn is_strictly_upper(&self, x: &LieElem) -> bool {
        let n = self.n;
        (0..n).all(|i| (0..=i).all(|j| x.data[i * n + j] == 0))
    }

    pub fn is_upper(&self, x: &LieElem) -> bool {
        let n = self.n;
        (0..n).all(|i| (0..i).all(|j| x.data[i * n + j] == 0))
    }

    pub fn is_nilpotent(&self, x: &LieElem) -> bool {
        let mut p = x.data.clone();
        for _ in 1..self.n {
            p = matmul(&self.field, &p, &x.data, self.n);
        }
        p.iter().all(|&c| c == 0)
    }

    /// Monic minimal polynomial, coefficients from low to high degree.
    pub fn minimal_polynomial(&self, x: &LieElem) -> Vec<Fe> {
        let n = self.n;
        let f = &self.field;
        let mut powers: Vec<Vec<Fe>> = vec![(0..n * n).map(|k| (k / n == k % n) as Fe).collect()];
        loop {
            let next = matmul(f, powers.last().unwrap(), &x.data, n);
            powers.push(next);
            let k = powers.len();
            let rows: Vec<Vec<Fe>> = (0..n * n).map(|e| powers.iter().map(|p| p[e]).collect()).collect();
            let ns = nullspace(f, rows, k);
            if let Some(v) = ns.into_iter().find(|v| v[k - 1] != 0) {
                let inv = f.inv(v[k - 1]);
                return v.iter().map(|&c| f.mul(c, inv)).collect();
            }
        }
    }

    pub fn classify(&self, x: &LieElem) -> Classification {
        let m = self.minimal_polynomial(x);
        Classification {
            nilpotent: self.is_nilpotent(x),
            semisimple: poly::is_squarefree(&self.field, &m),
            regular: m.len() == self.n + 1,
        }
    }

    /// `ε(ν) = I + ν` in the level-1 group.
    pub fn epsilon(&self, nu: &LieElem) -> Result<Mat> {
        if !self.is_nilpotent(nu) {
            return precondition("ε is only defined on nilpotent elements");
        }
        let space = self.level_space(1)?;
        let mut m = space.identity();
        for (k, &c) in nu.data.iter().enumerate() {
            m.0[k] = self.field.add(m.0[k], c);
        }
        Ok(m)
    }

    fn level_space(&self, r: usize) -> Result<Arc<MatSpace>> {
        let q = self.field.size();
        GroupSpec::new(self.family, self.n, q, 1, r)?.space()
    }

    /// `ι(X) = I + π^{r-1} X` in `space`.
    pub fn to_kernel(&self, space: &MatSpace, x: &LieElem) -> Mat {
        let r = space.level();
        let mut m = space.identity();
        for i in 0..self.n {
            for j in 0..self.n {
                let k = space.idx(r - 1, i, j);
                m.0[k] = self.field.add(m.0[k], x.data[i * self.n + j]);
            }
        }
        m
    }

    /// Inverse of [`Self::to_kernel`] on the last congruence kernel.
    pub fn from_kernel(&self, space: &MatSpace, m: &Mat) -> Result<LieElem> {
        let r = space.level();
        let id = space.identity();
        let diff = space.sub(m, &id);
        if (0..r - 1).any(|l| space.block(&diff, l).iter().any(|&c| c != 0)) {
            return invalid("matrix is not in the last congruence kernel");
        }
        self.elem(space.block(&diff, r - 1).to_vec())
    }
}

/// Product of square row-major matrices.
pub fn matmul(f: &GaloisField, a: &[Fe], b: &[Fe], n: usize) -> Vec<Fe> {
    let mut out = vec![0; n * n];
    for i in 0..n {
        for k in 0..n {
            let x = a[i * n + k];
            if x == 0 {
                continue;
            }
            for j in 0..n {
                out[i * n + j] = f.add(out[i * n + j], f.mul(x, b[k * n + j]));
            }
        }
    }
    out
}

/// `Tr(zx) = 0` for every traceless `z` only when `x` is scalar. Returns the
/// number of `x` checked and whether the implication held for all of them.
pub fn traceless_annihilator_is_scalar(alg: &LieAlgebra, budget: u128) -> Result<(usize, bool)> {
    let gl = LieAlgebra { family: Family::GL, ..alg.clone() };
    let all = gl.elements(budget)?;
    let n = alg.n;
    let traceless: Vec<LieElem> = (0..n)
        .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
        .map(|(i, j)| gl.elementary(i, j))
        .chain((1..n).map(|i| gl.sub(&gl.elementary(0, 0), &gl.elementary(i, i))))
        .collect();
    let ok = all
        .iter()
        .filter(|x| traceless.iter().all(|z| gl.trace_form(z, x) == 0))
        .all(|x| gl.is_scalar(x));
    Ok((all.len(), ok))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{enumerate, DEFAULT_BUDGET};

    fn gl2(q: u32) -> LieAlgebra {
        LieAlgebra::new(&GroupSpec::gl(2, q, 2)).unwrap()
    }

    #[test]
    fn classification_examples() {
        let g = gl2(2);
        let c = g.classify(&g.zero());
        assert!(c.nilpotent && c.semisimple && !c.regular);
        let c = g.classify(&g.elementary(0, 1));
        assert!(c.nilpotent && c.regular && !c.semisimple);
        let c = g.classify(&g.elementary(1, 1));
        assert!(c.semisimple && c.regular && !c.nilpotent);
        assert_eq!(g.minimal_polynomial(&g.elementary(0, 1)), vec![0, 0, 1]);
    }

    #[test]
    fn nilpotent_counts() {
        for (n, q) in [(2, 2), (2, 3), (3, 2), (3, 3)] {
            let g = LieAlgebra::new(&GroupSpec::gl(n, q, 2)).unwrap();
            let count = g.elements(DEFAULT_BUDGET).unwrap().iter().filter(|x| g.is_nilpotent(x)).count();
            assert_eq!(count, (q as usize).pow((n * n - n) as u32));
        }
    }

    #[test]
    fn trace_form_examples() {
        let g = gl2(3);
        assert_eq!(g.trace_form(&g.elementary(0, 1), &g.elementary(0, 1)), 0);
        assert_eq!(g.trace_form(&g.elementary(0, 1), &g.elementary(1, 0)), 1);
        assert_eq!(g.trace_form(&g.scalar(1), &g.scalar(1)), 2);
        let x = g.decode(4321);
        let y = g.decode(1234);
        assert_eq!(g.trace_form(&x, &y), g.trace_form(&y, &x));
    }

    #[test]
    fn epsilon_is_equivariant() {
        let spec = GroupSpec::gl(2, 2, 1);
        let g = LieAlgebra::new(&spec).unwrap();
        let grp = enumerate(&spec, DEFAULT_BUDGET).unwrap();
        let space = grp.space().clone();
        assert!(space.is_identity(&g.epsilon(&g.zero()).unwrap()));
        assert!(g.epsilon(&g.scalar(1)).is_err());
        let nils: Vec<LieElem> = g.elements(DEFAULT_BUDGET).unwrap().into_iter().filter(|x| g.is_nilpotent(x)).collect();
        assert_eq!(nils.len(), 4);
        let mut checks = 0;
        for h in grp.elements() {
            let hi = space.inverse(h).unwrap();
            for nu in &nils {
                let lhs = g.epsilon(&g.conjugate(h.data(), hi.data(), nu)).unwrap();
                let rhs = space.mul(&space.mul(h, &g.epsilon(nu).unwrap()), &hi);
                assert_eq!(lhs, rhs);
                assert!(space.det(&lhs) == space.ring().one());
                checks += 1;
            }
        }
        assert_eq!(checks, 24);
    }

    #[test]
    fn kernel_identification_round_trips() {
        let spec = GroupSpec::gl(2, 3, 2);
        let g = LieAlgebra::new(&spec).unwrap();
        let space = spec.space().unwrap();
        for c in [0, 17, 80] {
            let x = g.decode(c);
            assert_eq!(g.from_kernel(&space, &g.to_kernel(&space, &x)).unwrap(), x);
        }
        assert!(g.from_kernel(&space, &space.scalar(&space.ring().elem(&[2, 0]))).is_err());
    }

    #[test]
    fn scalar_lemma() {
        for n in [2, 3] {
            let alg = LieAlgebra::new(&GroupSpec::sl(n, 3, 2)).unwrap();
            let (count, ok) = traceless_annihilator_is_scalar(&alg, DEFAULT_BUDGET).unwrap();
            assert!(ok);
            assert_eq!(count, 3usize.pow((n * n) as u32));
        }
    }
}
