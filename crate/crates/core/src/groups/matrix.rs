//! Square matrices over a truncated ring, stored level by level.
//!
//! A matrix `A = A_0 + A_1 π + ... + A_{r-1} π^{r-1}` is a flat array with
//! `A_l[i][j]` at index `l·n² + i·n + j`. Its encoding is the integer
//! `Σ_k data[k]·Q^k` where `Q` is the field size; sorting by encoding gives
//! the canonical element order used everywhere.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use smallvec::SmallVec;

use crate::arith::{Fe, GaloisField, TruncatedRing, TruncatedRingElem};
use crate::error::{invalid, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mat(pub SmallVec<[Fe; 32]>);

impl Mat {
    pub fn data(&self) -> &[Fe] {
        &self.0
    }
}

/// The ambient `M_n(W)` together with the Frobenius base `q`.
pub struct MatSpace {
    n: usize,
    ring: TruncatedRing,
    q: u64,
    frob: Vec<Fe>,
    perms: Vec<(Vec<usize>, bool)>,
}

impl fmt::Debug for MatSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "M_{}({:?}[π]/π^{}, q={})", self.n, self.ring.field(), self.ring.level(), self.q)
    }
}

impl PartialEq for MatSpace {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.ring == other.ring && self.q == other.q
    }
}
impl Eq for MatSpace {}

fn permutations(n: usize) -> Vec<(Vec<usize>, bool)> {
    fn rec(prefix: &mut Vec<usize>, used: &mut [bool], odd: bool, out: &mut Vec<(Vec<usize>, bool)>) {
        let n = used.len();
        if prefix.len() == n {
            out.push((prefix.clone(), odd));
            return;
        }
        for v in 0..n {
            if !used[v] {
                // inversions contributed by placing v after the current prefix
                let inv = prefix.iter().filter(|&&u| u > v).count();
                used[v] = true;
                prefix.push(v);
                rec(prefix, used, odd ^ (inv % 2 == 1), out);
                prefix.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], false, &mut out);
    out
}

impl MatSpace {
    pub fn new(n: usize, ring: TruncatedRing, q: u64) -> Result<Self> {
        if n == 0 || n > 6 {
            return invalid(format!("matrix size {n} outside 1..=6"));
        }
        let field = ring.field().clone();
        field.subfield_exponent(q)?;
        let bits = (n * n * ring.level()) as f64 * (field.size() as f64).log2();
        if bits > 127.0 {
            return invalid("matrix encodings would not fit in 128 bits");
        }
        let frob = field.elements().map(|x| field.pow(x, q)).collect();
        Ok(MatSpace { n, ring, q, frob, perms: permutations(n) })
    }

    /// Shared instance per `(n, field, level, q)`.
    pub fn shared(n: usize, ring: TruncatedRing, q: u64) -> Result<Arc<MatSpace>> {
        type Key = (usize, u32, u32, usize, u64);
        static CACHE: OnceLock<Mutex<HashMap<Key, Arc<MatSpace>>>> = OnceLock::new();
        let f = ring.field();
        let key = (n, f.characteristic(), f.degree(), ring.level(), q);
        let cache = CACHE.get_or_init(Default::default);
        if let Some(s) = cache.lock().unwrap().get(&key) {
            return Ok(s.clone());
        }
        let s = Arc::new(MatSpace::new(n, ring, q)?);
        Ok(cache.lock().unwrap().entry(key).or_insert(s).clone())
    }

    pub fn n(&self) -> usize {
        self.n
    }
    pub fn ring(&self) -> &TruncatedRing {
        &self.ring
    }
    pub fn field(&self) -> &Arc<GaloisField> {
        self.ring.field()
    }
    pub fn level(&self) -> usize {
        self.ring.level()
    }
    pub fn q(&self) -> u64 {
        self.q
    }
    /// Number of stored coordinates, `r·n²`.
    pub fn len(&self) -> usize {
        self.n * self.n * self.ring.level()
    }
    pub fn is_empty(&self) -> bool {
        false
    }
    #[inline]
    pub fn idx(&self, l: usize, i: usize, j: usize) -> usize {
        l * self.n * self.n + i * self.n + j
    }

    pub fn with_level(&self, level: usize) -> Result<Arc<MatSpace>> {
        MatSpace::shared(self.n, TruncatedRing::new(self.field().clone(), level)?, self.q)
    }

    pub fn zero(&self) -> Mat {
        Mat(SmallVec::from_elem(0, self.len()))
    }
    pub fn identity(&self) -> Mat {
        let mut m = self.zero();
        for i in 0..self.n {
            m.0[self.idx(0, i, i)] = 1;
        }
        m
    }
    pub fn from_fn(&self, mut f: impl FnMut(usize, usize, usize) -> Fe) -> Mat {
        let mut m = self.zero();
        for l in 0..self.level() {
            for i in 0..self.n {
                for j in 0..self.n {
                    m.0[self.idx(l, i, j)] = f(l, i, j);
                }
            }
        }
        m
    }
    /// Matrix with the given `n×n` blocks `A_0, A_1, ...` (missing blocks are zero).
    pub fn from_levels(&self, blocks: &[&[Fe]]) -> Result<Mat> {
        let nn = self.n * self.n;
        if blocks.len() > self.level() || blocks.iter().any(|b| b.len() != nn) {
            return invalid("block shape does not match the matrix space");
        }
        let mut m = self.zero();
        for (l, b) in blocks.iter().enumerate() {
            m.0[l * nn..(l + 1) * nn].copy_from_slice(b);
        }
        Ok(m)
    }
    pub fn from_entries(&self, entries: &[Vec<TruncatedRingElem>]) -> Result<Mat> {
        if entries.len() != self.n || entries.iter().any(|row| row.len() != self.n) {
            return invalid("entry grid has the wrong shape");
        }
        let mut m = self.zero();
        for (i, row) in entries.iter().enumerate() {
            for (j, e) in row.iter().enumerate() {
                if e.coeffs.len() != self.level() {
                    return invalid("entry has the wrong truncation level");
                }
                for l in 0..self.level() {
                    m.0[self.idx(l, i, j)] = e.coeffs[l];
                }
            }
        }
        Ok(m)
    }
    pub fn diag(&self, d: &[TruncatedRingElem]) -> Result<Mat> {
        let z = self.ring.zero();
        let grid: Vec<Vec<_>> = (0..self.n)
            .map(|i| (0..self.n).map(|j| if i == j { d[i].clone() } else { z.clone() }).collect())
            .collect();
        if d.len() != self.n {
            return invalid("diagonal has the wrong length");
        }
        self.from_entries(&grid)
    }
    pub fn scalar(&self, c: &TruncatedRingElem) -> Mat {
        self.diag(&vec![c.clone(); self.n]).expect("scalar shape")
    }

    #[inline]
    pub fn get(&self, m: &Mat, l: usize, i: usize, j: usize) -> Fe {
        m.0[self.idx(l, i, j)]
    }
    pub fn entry(&self, m: &Mat, i: usize, j: usize) -> TruncatedRingElem {
        let c: Vec<Fe> = (0..self.level()).map(|l| self.get(m, l, i, j)).collect();
        self.ring.elem(&c)
    }
    /// The block `A_l` in row-major order.
    pub fn block<'a>(&self, m: &'a Mat, l: usize) -> &'a [Fe] {
        let nn = self.n * self.n;
        &m.0[l * nn..(l + 1) * nn]
    }

    pub fn add(&self, a: &Mat, b: &Mat) -> Mat {
        let f = self.field();
        Mat(a.0.iter().zip(&b.0).map(|(&x, &y)| f.add(x, y)).collect())
    }
    pub fn sub(&self, a: &Mat, b: &Mat) -> Mat {
        let f = self.field();
        Mat(a.0.iter().zip(&b.0).map(|(&x, &y)| f.sub(x, y)).collect())
    }
    pub fn mul(&self, a: &Mat, b: &Mat) -> Mat {
        let (n, r, f) = (self.n, self.level(), self.field());
        let nn = n * n;
        let mut out = self.zero();
        for s in 0..r {
            let ab = &a.0[s * nn..(s + 1) * nn];
            if ab.iter().all(|&x| x == 0) {
                continue;
            }
            for t in 0..r - s {
                let bb = &b.0[t * nn..(t + 1) * nn];
                let ob = &mut out.0[(s + t) * nn..(s + t + 1) * nn];
                for i in 0..n {
                    for k in 0..n {
                        let x = ab[i * n + k];
                        if x == 0 {
                            continue;
                        }
                        for j in 0..n {
                            let y = bb[k * n + j];
                            if y != 0 {
                                ob[i * n + j] = f.add(ob[i * n + j], f.mul(x, y));
                            }
                        }
                    }
                }
            }
        }
        out
    }
    /// `c·A` for a ring scalar `c`.
    pub fn scale(&self, c: &TruncatedRingElem, a: &Mat) -> Mat {
        self.mul(&self.scalar(c), a)
    }

    /// Inverse of an `n×n` matrix over the field, or `None` when singular.
    pub fn field_inverse(&self, a: &[Fe]) -> Option<Vec<Fe>> {
        let (n, f) = (self.n, self.field());
        let mut m: Vec<Fe> = a.to_vec();
        let mut inv: Vec<Fe> = (0..n * n).map(|k| (k / n == k % n) as Fe).collect();
        for c in 0..n {
            let p = (c..n).find(|&i| m[i * n + c] != 0)?;
            for j in 0..n {
                m.swap(p * n + j, c * n + j);
                inv.swap(p * n + j, c * n + j);
            }
            let s = f.inv(m[c * n + c]);
            for j in 0..n {
                m[c * n + j] = f.mul(m[c * n + j], s);
                inv[c * n + j] = f.mul(inv[c * n + j], s);
            }
            for i in 0..n {
                let factor = m[i * n + c];
                if i == c || factor == 0 {
                    continue;
                }
                for j in 0..n {
                    m[i * n + j] = f.sub(m[i * n + j], f.mul(factor, m[c * n + j]));
                    inv[i * n + j] = f.sub(inv[i * n + j], f.mul(factor, inv[c * n + j]));
                }
            }
        }
        Some(inv)
    }

    /// Inverse over `W`: `B_0 = A_0^{-1}`, `B_l = -A_0^{-1} Σ_{s≥1} A_s B_{l-s}`.
    pub fn inverse(&self, a: &Mat) -> Option<Mat> {
        let (n, r, f) = (self.n, self.level(), self.field());
        let nn = n * n;
        let b0 = self.field_inverse(self.block(a, 0))?;
        let mut out = self.zero();
        out.0[..nn].copy_from_slice(&b0);
        let mut acc = vec![0 as Fe; nn];
        for l in 1..r {
            acc.iter_mut().for_each(|x| *x = 0);
            for s in 1..=l {
                let asb = &a.0[s * nn..(s + 1) * nn];
                let bb = &out.0[(l - s) * nn..(l - s + 1) * nn];
                for i in 0..n {
                    for k in 0..n {
                        let x = asb[i * n + k];
                        if x == 0 {
                            continue;
                        }
                        for j in 0..n {
                            acc[i * n + j] = f.add(acc[i * n + j], f.mul(x, bb[k * n + j]));
                        }
                    }
                }
            }
            for i in 0..n {
                for j in 0..n {
                    let mut s = 0;
                    for k in 0..n {
                        s = f.add(s, f.mul(b0[i * n + k], acc[k * n + j]));
                    }
                    out.0[l * nn + i * n + j] = f.neg(s);
                }
            }
        }
        Some(out)
    }

    pub fn det(&self, a: &Mat) -> TruncatedRingElem {
        let w = &self.ring;
        let r = self.level();
        let mut total = w.zero();
        let mut term = vec![0 as Fe; r];
        let mut next = vec![0 as Fe; r];
        let mut col = vec![0 as Fe; r];
        for (perm, odd) in &self.perms {
            term.iter_mut().for_each(|x| *x = 0);
            term[0] = 1;
            for (i, &j) in perm.iter().enumerate() {
                for (l, c) in col.iter_mut().enumerate() {
                    *c = self.get(a, l, i, j);
                }
                next.iter_mut().for_each(|x| *x = 0);
                w.mul_acc(&term, &col, &mut next);
                std::mem::swap(&mut term, &mut next);
            }
            let f = w.field();
            for l in 0..r {
                total.coeffs[l] = if *odd { f.sub(total.coeffs[l], term[l]) } else { f.add(total.coeffs[l], term[l]) };
            }
        }
        total
    }
    pub fn is_invertible(&self, a: &Mat) -> bool {
        self.field_inverse(self.block(a, 0)).is_some()
    }
    pub fn is_identity(&self, a: &Mat) -> bool {
        *a == self.identity()
    }

    /// Entrywise, coefficientwise `x ↦ x^q`.
    pub fn frobenius(&self, a: &Mat) -> Mat {
        Mat(a.0.iter().map(|&x| self.frob[x as usize]).collect())
    }
    pub fn frobenius_pow(&self, a: &Mat, k: usize) -> Mat {
        (0..k).fold(a.clone(), |m, _| self.frobenius(&m))
    }
    /// Lang map `g ↦ g^{-1} F(g)`.
    pub fn lang(&self, g: &Mat) -> Option<Mat> {
        Some(self.mul(&self.inverse(g)?, &self.frobenius(g)))
    }
    /// `t·F(t)···F^{a-1}(t)`.
    pub fn norm(&self, t: &Mat, a: usize) -> Mat {
        let mut acc = self.identity();
        let mut cur = t.clone();
        for _ in 0..a {
            acc = self.mul(&acc, &cur);
            cur = self.frobenius(&cur);
        }
        acc
    }
    pub fn conj(&self, g: &Mat, x: &Mat) -> Option<Mat> {
        Some(self.mul(&self.mul(g, x), &self.inverse(g)?))
    }

    /// Reduction modulo `π^i` into `target`, which must be this space at level `i`.
    pub fn reduce(&self, a: &Mat, target: &MatSpace) -> Result<Mat> {
        let i = target.level();
        if i == 0 || i > self.level() || target.n != self.n || target.field().size() != self.field().size() {
            return invalid(format!("cannot reduce level {} to level {i}", self.level()));
        }
        Ok(Mat(a.0[..target.len()].into()))
    }
    /// Inverse of [`reduce`](Self::reduce) on constant matrices: pads with zero levels.
    pub fn lift_from(&self, a: &Mat, source: &MatSpace) -> Result<Mat> {
        if source.n != self.n || source.level() > self.level() {
            return invalid("cannot lift into a lower level");
        }
        let mut m = self.zero();
        m.0[..source.len()].copy_from_slice(&a.0);
        Ok(m)
    }

    pub fn code(&self, a: &Mat) -> u128 {
        let q = self.field().size() as u128;
        a.0.iter().rev().fold(0u128, |acc, &x| acc * q + x as u128)
    }
    pub fn decode(&self, mut code: u128) -> Mat {
        let q = self.field().size() as u128;
        let mut m = self.zero();
        for x in m.0.iter_mut() {
            *x = (code % q) as Fe;
            code /= q;
        }
        m
    }

    /// Human-readable form: rows of entries written as coefficient tuples.
    pub fn render(&self, a: &Mat) -> String {
        let rows: Vec<String> = (0..self.n)
            .map(|i| {
                let cells: Vec<String> = (0..self.n)
                    .map(|j| {
                        let c: Vec<String> = (0..self.level()).map(|l| self.get(a, l, i, j).to_string()).collect();
                        format!("({})", c.join(","))
                    })
                    .collect();
                format!("[{}]", cells.join(" "))
            })
            .collect();
        rows.join(" ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::GroupSpec;
    use rand::{Rng, SeedableRng};

    fn random_invertible(s: &MatSpace, rng: &mut impl Rng) -> Mat {
        loop {
            let q = s.field().size();
            let m = s.from_fn(|_, _, _| rng.gen_range(0..q) as Fe);
            if s.is_invertible(&m) {
                return m;
            }
        }
    }

    #[test]
    fn permutation_signs() {
        let ps = permutations(3);
        assert_eq!(ps.len(), 6);
        assert_eq!(ps.iter().filter(|p| p.1).count(), 3);
        assert!(!ps[0].1);
    }

    #[test]
    fn inverse_and_determinant_random() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for (n, q, r) in [(2, 2, 2), (2, 3, 3), (3, 2, 2), (3, 3, 2), (1, 4, 3)] {
            let s = GroupSpec::new(crate::groups::Family::GL, n, q, 1, r).unwrap().space().unwrap();
            for _ in 0..200 {
                let a = random_invertible(&s, &mut rng);
                let b = random_invertible(&s, &mut rng);
                let ai = s.inverse(&a).unwrap();
                assert!(s.is_identity(&s.mul(&a, &ai)));
                assert!(s.is_identity(&s.mul(&ai, &a)));
                let w = s.ring();
                assert_eq!(s.det(&s.mul(&a, &b)), w.mul(&s.det(&a), &s.det(&b)));
                assert!(s.det(&a).is_unit());
                assert_eq!(s.decode(s.code(&a)), a);
            }
        }
    }

    #[test]
    fn singular_level_zero_has_no_inverse() {
        let s = GroupSpec::gl(2, 2, 2).space().unwrap();
        let m = s.from_levels(&[&[1, 1, 1, 1], &[1, 0, 0, 1]]).unwrap();
        assert!(s.inverse(&m).is_none());
        assert!(!s.det(&m).is_unit());
    }

    #[test]
    fn frobenius_is_multiplicative_and_fixes_rational_points() {
        let spec = GroupSpec::new(crate::groups::Family::GL, 2, 2, 2, 2).unwrap();
        let s = spec.space().unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(9);
        for _ in 0..1000 {
            let a = random_invertible(&s, &mut rng);
            let b = random_invertible(&s, &mut rng);
            assert_eq!(s.frobenius(&s.mul(&a, &b)), s.mul(&s.frobenius(&a), &s.frobenius(&b)));
            // F^a is the identity on F_{q^a}-points
            assert_eq!(s.frobenius_pow(&a, 2), a);
        }
        let rational = s.from_levels(&[&[1, 1, 0, 1], &[1, 0, 1, 1]]).unwrap();
        assert_eq!(s.frobenius(&rational), rational);
        assert!(s.is_identity(&s.lang(&rational).unwrap()));
    }

    #[test]
    fn norm_examples() {
        let spec = GroupSpec::new(crate::groups::Family::GL, 2, 3, 2, 2).unwrap();
        let s = spec.space().unwrap();
        let t = s.from_levels(&[&[2, 0, 0, 1], &[1, 0, 0, 0]]).unwrap();
        assert_eq!(s.norm(&t, 1), t);
        assert_eq!(s.norm(&t, 2), s.mul(&t, &t));
    }

    #[test]
    fn reduction_commutes_with_products_and_frobenius() {
        let spec = GroupSpec::new(crate::groups::Family::GL, 2, 2, 2, 3).unwrap();
        let s = spec.space().unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        for i in 1..=3 {
            let t = s.with_level(i).unwrap();
            for _ in 0..100 {
                let a = random_invertible(&s, &mut rng);
                let b = random_invertible(&s, &mut rng);
                let ra = s.reduce(&a, &t).unwrap();
                let rb = s.reduce(&b, &t).unwrap();
                assert_eq!(s.reduce(&s.mul(&a, &b), &t).unwrap(), t.mul(&ra, &rb));
                assert_eq!(s.reduce(&s.frobenius(&a), &t).unwrap(), t.frobenius(&ra));
            }
        }
        assert_eq!(s.reduce(&s.identity(), &s).unwrap(), s.identity());
    }
}
