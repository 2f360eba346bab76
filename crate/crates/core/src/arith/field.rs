//! Finite fields GF(p^k) with table-driven arithmetic.
//!
//! An element is stored as a `u8` index `c_0 + c_1 p + ... + c_{k-1} p^{k-1}`
//! where `c_0 + c_1 t + ... + c_{k-1} t^{k-1}` is its residue modulo the
//! defining polynomial. The defining polynomial is the monic irreducible of
//! degree `k` whose lower coefficients have the smallest such index, so
//! encodings are reproducible across runs. Fields are capped at 256 elements.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};
use std::collections::HashMap;

use crate::error::{invalid, Result};

/// Raw element index of a [`GaloisField`].
pub type Fe = u8;

pub struct GaloisField {
    p: u32,
    degree: u32,
    size: u32,
    modulus: Vec<u32>,
    add: Vec<Fe>,
    mul: Vec<Fe>,
    neg: Vec<Fe>,
    inv: Vec<Fe>,
    trace: Vec<u32>,
}

impl fmt::Debug for GaloisField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{}) mod {:?}", self.p, self.degree, self.modulus)
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Splits `q` into `(p, e)` with `q = p^e`, or `None` if `q` is not a prime power.
pub fn prime_power(q: u64) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2;
    while q % p != 0 {
        p += 1;
    }
    if !is_prime(p) {
        return None;
    }
    let (mut m, mut e) = (q, 0);
    while m % p == 0 {
        m /= p;
        e += 1;
    }
    (m == 1).then_some((p as u32, e))
}

fn poly_mulmod(a: &[u32], b: &[u32], modulus: &[u32], p: u32) -> Vec<u32> {
    let k = modulus.len() - 1;
    let mut prod = vec![0u32; 2 * k];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    for d in (k..prod.len()).rev() {
        let c = prod[d];
        if c == 0 {
            continue;
        }
        for (i, &m) in modulus.iter().enumerate().take(k) {
            let idx = d - k + i;
            prod[idx] = (prod[idx] + (p - c) * m) % p;
        }
        prod[d] = 0;
    }
    prod.truncate(k);
    prod
}

/// Remainder of `a` modulo the monic polynomial `m` over F_p (coefficients low to high).
fn poly_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    let dm = m.len() - 1;
    while r.len() > dm {
        let c = *r.last().unwrap();
        let shift = r.len() - 1 - dm;
        for (i, &mi) in m.iter().enumerate() {
            r[shift + i] = (r[shift + i] + (p - c) * mi % p) % p;
        }
        r.pop();
    }
    r
}

fn is_irreducible(f: &[u32], p: u32) -> bool {
    let k = f.len() - 1;
    // trial division by every monic polynomial of degree 1..=k/2
    for d in 1..=k / 2 {
        let count = (p as u64).pow(d as u32);
        for idx in 0..count {
            let mut g = Vec::with_capacity(d + 1);
            let mut v = idx;
            for _ in 0..d {
                g.push((v % p as u64) as u32);
                v /= p as u64;
            }
            g.push(1);
            if poly_rem(f, &g, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

/// The defining polynomial used for GF(p^k): the monic irreducible whose lower
/// coefficients `c_0..c_{k-1}` have the smallest index `Σ c_i p^i`.
pub fn default_modulus(p: u32, k: u32) -> Vec<u32> {
    let count = (p as u64).pow(k);
    for idx in 0..count {
        let mut f = Vec::with_capacity(k as usize + 1);
        let mut v = idx;
        for _ in 0..k {
            f.push((v % p as u64) as u32);
            v /= p as u64;
        }
        f.push(1);
        if is_irreducible(&f, p) {
            return f;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

impl GaloisField {
    pub fn new(p: u32, degree: u32) -> Result<Self> {
        if !is_prime(p as u64) {
            return invalid(format!("{p} is not prime"));
        }
        if degree == 0 {
            return invalid("extension degree must be positive");
        }
        let size = (p as u64).checked_pow(degree).unwrap_or(u64::MAX);
        if size > 256 {
            return invalid(format!("GF({p}^{degree}) exceeds the 256-element cap"));
        }
        let size = size as u32;
        let modulus = default_modulus(p, degree);
        let k = degree as usize;
        let to_poly = |x: u32| -> Vec<u32> {
            let mut v = x;
            (0..k)
                .map(|_| {
                    let c = v % p;
                    v /= p;
                    c
                })
                .collect()
        };
        let from_poly = |c: &[u32]| -> u32 { c.iter().rev().fold(0, |acc, &x| acc * p + x) };
        let polys: Vec<Vec<u32>> = (0..size).map(to_poly).collect();
        let n = size as usize;
        let mut add = vec![0; n * n];
        let mut mul = vec![0; n * n];
        for x in 0..n {
            for y in 0..n {
                let s: Vec<u32> = polys[x]
                    .iter()
                    .zip(&polys[y])
                    .map(|(a, b)| (a + b) % p)
                    .collect();
                add[x * n + y] = from_poly(&s) as Fe;
                mul[x * n + y] = from_poly(&poly_mulmod(&polys[x], &polys[y], &modulus, p)) as Fe;
            }
        }
        let mut neg = vec![0; n];
        let mut inv = vec![0; n];
        for x in 0..n {
            for y in 0..n {
                if add[x * n + y] == 0 {
                    neg[x] = y as Fe;
                }
                if mul[x * n + y] == 1 {
                    inv[x] = y as Fe;
                }
            }
        }
        let mut field = GaloisField {
            p,
            degree,
            size,
            modulus,
            add,
            mul,
            neg,
            inv,
            trace: Vec::new(),
        };
        // absolute trace x + x^p + ... + x^{p^{k-1}} lands in the prime field
        let trace = (0..n)
            .map(|x| {
                let mut acc = 0;
                let mut y = x as Fe;
                for _ in 0..degree {
                    acc = field.add(acc, y);
                    y = field.pow(y, p as u64);
                }
                acc as u32
            })
            .collect();
        field.trace = trace;
        Ok(field)
    }

    /// Shared instance per `(p, k)`.
    pub fn shared(p: u32, degree: u32) -> Result<Arc<GaloisField>> {
        static CACHE: OnceLock<Mutex<HashMap<(u32, u32), Arc<GaloisField>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(Default::default);
        if let Some(f) = cache.lock().unwrap().get(&(p, degree)) {
            return Ok(f.clone());
        }
        let f = Arc::new(GaloisField::new(p, degree)?);
        Ok(cache.lock().unwrap().entry((p, degree)).or_insert(f).clone())
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }
    pub fn degree(&self) -> u32 {
        self.degree
    }
    pub fn size(&self) -> u32 {
        self.size
    }
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    #[inline]
    pub fn add(&self, x: Fe, y: Fe) -> Fe {
        self.add[x as usize * self.size as usize + y as usize]
    }
    #[inline]
    pub fn sub(&self, x: Fe, y: Fe) -> Fe {
        self.add(x, self.neg[y as usize])
    }
    #[inline]
    pub fn mul(&self, x: Fe, y: Fe) -> Fe {
        self.mul[x as usize * self.size as usize + y as usize]
    }
    #[inline]
    pub fn neg(&self, x: Fe) -> Fe {
        self.neg[x as usize]
    }
    /// Inverse of a nonzero element; `inv(0)` is `0`.
    #[inline]
    pub fn inv(&self, x: Fe) -> Fe {
        self.inv[x as usize]
    }
    pub fn pow(&self, x: Fe, mut e: u64) -> Fe {
        let (mut base, mut acc) = (x, 1);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }
    /// The prime-field element `c` (for `c < p`).
    pub fn from_prime(&self, c: u32) -> Fe {
        (c % self.p) as Fe
    }
    /// Absolute trace to F_p, returned as an integer in `0..p`.
    pub fn abs_trace(&self, x: Fe) -> u32 {
        self.trace[x as usize]
    }

    /// Checks that `q` is the size of a subfield, i.e. `q = p^e` with `e | k`.
    pub fn subfield_exponent(&self, q: u64) -> Result<u32> {
        match prime_power(q) {
            Some((p, e)) if p == self.p && self.degree % e == 0 => Ok(e),
            _ => invalid(format!("{q} is not a subfield size of GF({}^{})", self.p, self.degree)),
        }
    }

    /// The `q`-power Frobenius `x ↦ x^q`.
    pub fn frobenius(&self, x: Fe, q: u64) -> Result<Fe> {
        self.subfield_exponent(q)?;
        Ok(self.pow(x, q))
    }

    /// A generator of the cyclic multiplicative group.
    pub fn primitive_element(&self) -> Fe {
        let order = self.size as u64 - 1;
        (1..self.size)
            .map(|g| g as Fe)
            .find(|&g| (1..order).all(|d| order % d != 0 || self.pow(g, d) != 1))
            .unwrap_or(1)
    }

    pub fn elements(&self) -> impl Iterator<Item = Fe> {
        (0..self.size).map(|x| x as Fe)
    }

    /// The field embedding of `small` into `self`, as a lookup table.
    ///
    /// The image of the residue class of `t` is the least root in `self` of
    /// the defining polynomial of `small`, so the embedding is reproducible.
    pub fn embedding_of(&self, small: &GaloisField) -> Result<Vec<Fe>> {
        if small.p != self.p || self.degree % small.degree != 0 {
            return invalid(format!("{small:?} does not embed in {self:?}"));
        }
        let eval = |x: Fe| {
            small.modulus.iter().rev().fold(0, |acc, &c| self.add(self.mul(acc, x), self.from_prime(c)))
        };
        let root = self
            .elements()
            .find(|&x| eval(x) == 0)
            .ok_or_else(|| crate::error::Error::Invalid("no root of the subfield modulus".into()))?;
        let p = small.p as usize;
        Ok((0..small.size as usize)
            .map(|idx| {
                let (mut v, mut acc, mut pw) = (idx, 0, 1);
                for _ in 0..small.degree {
                    acc = self.add(acc, self.mul(self.from_prime((v % p) as u32), pw));
                    pw = self.mul(pw, root);
                    v /= p;
                }
                acc
            })
            .collect())
    }
    pub fn elem(self: &Arc<Self>, value: Fe) -> FieldElem {
        FieldElem { field: self.clone(), value }
    }
}

/// A field element bundled with its field, for convenient operator syntax.
#[derive(Clone)]
pub struct FieldElem {
    pub field: Arc<GaloisField>,
    pub value: Fe,
}

impl PartialEq for FieldElem {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.field, &other.field) && self.value == other.value
    }
}
impl Eq for FieldElem {}

impl fmt::Debug for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl FieldElem {
    pub fn pow(&self, e: u64) -> FieldElem {
        self.field.elem(self.field.pow(self.value, e))
    }
    pub fn inv(&self) -> Option<FieldElem> {
        (self.value != 0).then(|| self.field.elem(self.field.inv(self.value)))
    }
    pub fn frobenius(&self, q: u64) -> Result<FieldElem> {
        Ok(self.field.elem(self.field.frobenius(self.value, q)?))
    }
}

macro_rules! field_binop {
    ($tr:ident, $m:ident) => {
        impl $tr for &FieldElem {
            type Output = FieldElem;
            fn $m(self, rhs: &FieldElem) -> FieldElem {
                assert!(Arc::ptr_eq(&self.field, &rhs.field), "mixed fields");
                self.field.elem(self.field.$m(self.value, rhs.value))
            }
        }
        impl $tr for FieldElem {
            type Output = FieldElem;
            fn $m(self, rhs: FieldElem) -> FieldElem {
                (&self).$m(&rhs)
            }
        }
    };
}
field_binop!(Add, add);
field_binop!(Sub, sub);
field_binop!(Mul, mul);

impl Neg for &FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        self.field.elem(self.field.neg(self.value))
    }
}
