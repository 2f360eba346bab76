//! Exact elements of cyclotomic fields `Q(ζ_m)`.
//!
//! A value is stored in the power basis `1, ζ, ..., ζ^{φ(m)-1}` as integer
//! numerators over one positive common denominator. Arithmetic is checked;
//! an overflow panics instead of producing a wrong value.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use serde::{Deserialize, Serialize};

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

fn gcd_i128(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub fn euler_phi(m: u32) -> u32 {
    (1..=m).filter(|&k| gcd(k as u64, m as u64) == 1).count() as u32
}

/// Coefficients of the `m`-th cyclotomic polynomial, low degree first.
pub fn cyclotomic_poly(m: u32) -> Arc<Vec<i64>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<Vec<i64>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(p) = cache.lock().unwrap().get(&m) {
        return p.clone();
    }
    assert!(m > 0);
    // x^m - 1 divided by Φ_d for every proper divisor d
    let mut num = vec![0i64; m as usize + 1];
    num[0] = -1;
    num[m as usize] = 1;
    for d in 1..m {
        if m % d != 0 {
            continue;
        }
        let div = cyclotomic_poly(d);
        let dd = div.len() - 1;
        let mut quot = vec![0i64; num.len() - dd];
        let mut rem = num.clone();
        for k in (0..quot.len()).rev() {
            let c = rem[k + dd];
            quot[k] = c;
            for (i, &di) in div.iter().enumerate() {
                rem[k + i] -= c * di;
            }
        }
        debug_assert!(rem.iter().all(|&c| c == 0));
        num = quot;
    }
    let p = Arc::new(num);
    cache.lock().unwrap().insert(m, p.clone());
    p
}

#[derive(Clone)]
pub struct CyclotomicNumber {
    conductor: u32,
    num: Vec<i128>,
    den: i128,
}

/// Reduces a polynomial in `ζ_m` (arbitrary length) to the power basis.
fn reduce_poly(m: u32, mut poly: Vec<i128>) -> Vec<i128> {
    let m_us = m as usize;
    if poly.len() > m_us {
        for k in m_us..poly.len() {
            let c = poly[k];
            poly[k % m_us] = poly[k % m_us].checked_add(c).expect("cyclotomic overflow");
        }
        poly.truncate(m_us);
    }
    let phi = cyclotomic_poly(m);
    let deg = phi.len() - 1;
    if poly.len() < deg {
        poly.resize(deg, 0);
    }
    for k in (deg..poly.len()).rev() {
        let c = poly[k];
        if c == 0 {
            continue;
        }
        for (i, &pi) in phi.iter().enumerate() {
            let t = c.checked_mul(pi as i128).expect("cyclotomic overflow");
            poly[k - deg + i] = poly[k - deg + i].checked_sub(t).expect("cyclotomic overflow");
        }
    }
    poly.truncate(deg);
    poly
}

impl CyclotomicNumber {
    fn normalized(conductor: u32, mut num: Vec<i128>, mut den: i128) -> Self {
        assert!(den != 0, "zero denominator");
        if den < 0 {
            den = -den;
            num.iter_mut().for_each(|c| *c = -*c);
        }
        let g = num.iter().fold(den, |g, &c| gcd_i128(g, c));
        if g > 1 {
            num.iter_mut().for_each(|c| *c /= g);
            den /= g;
        }
        CyclotomicNumber { conductor, num, den }
    }

    pub fn zero(m: u32) -> Self {
        Self::from_int(m, 0)
    }
    pub fn one(m: u32) -> Self {
        Self::from_int(m, 1)
    }
    pub fn from_int(m: u32, v: i128) -> Self {
        Self::from_rational(m, v, 1)
    }
    pub fn from_rational(m: u32, num: i128, den: i128) -> Self {
        let deg = euler_phi(m) as usize;
        let mut c = vec![0; deg];
        c[0] = num;
        Self::normalized(m, c, den)
    }
    /// `ζ_m^j`.
    pub fn root_of_unity(m: u32, j: i64) -> Self {
        let mut counts = vec![0i64; m as usize];
        counts[j.rem_euclid(m as i64) as usize] = 1;
        Self::from_root_counts(m, &counts)
    }
    /// `Σ_k counts[k] ζ_m^k` with `counts.len() == m`.
    pub fn from_root_counts(m: u32, counts: &[i64]) -> Self {
        assert_eq!(counts.len(), m as usize);
        let poly = counts.iter().map(|&c| c as i128).collect();
        Self::normalized(m, reduce_poly(m, poly), 1)
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }
    /// Power-basis numerators; the value is `Σ numerators[k] ζ^k / denominator`.
    pub fn numerators(&self) -> &[i128] {
        &self.num
    }
    pub fn denominator(&self) -> i128 {
        self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(|&c| c == 0)
    }

    /// Rewrites the value over `Q(ζ_big)`; `big` must be a multiple of the conductor.
    pub fn lift(&self, big: u32) -> Self {
        assert!(big % self.conductor == 0, "conductor {} does not divide {}", self.conductor, big);
        if big == self.conductor {
            return self.clone();
        }
        let step = (big / self.conductor) as usize;
        let mut poly = vec![0i128; big as usize];
        for (k, &c) in self.num.iter().enumerate() {
            poly[k * step] = c;
        }
        Self::normalized(big, reduce_poly(big, poly), self.den)
    }

    fn unify(&self, other: &Self) -> (Self, Self) {
        let m = lcm(self.conductor as u64, other.conductor as u64) as u32;
        (self.lift(m), other.lift(m))
    }

    pub fn scale(&self, num: i128, den: i128) -> Self {
        let n = self
            .num
            .iter()
            .map(|&c| c.checked_mul(num).expect("cyclotomic overflow"))
            .collect();
        Self::normalized(self.conductor, n, self.den.checked_mul(den).expect("cyclotomic overflow"))
    }

    /// Complex conjugation `ζ ↦ ζ^{-1}`.
    pub fn conj(&self) -> Self {
        let m = self.conductor as usize;
        let mut poly = vec![0i128; m];
        for (k, &c) in self.num.iter().enumerate() {
            poly[(m - k) % m] += c;
        }
        Self::normalized(self.conductor, reduce_poly(self.conductor, poly), self.den)
    }

    /// `Some((num, den))` when the value is rational.
    pub fn as_rational(&self) -> Option<(i128, i128)> {
        self.num[1..].iter().all(|&c| c == 0).then_some((self.num[0], self.den))
    }
    pub fn as_integer(&self) -> Option<i128> {
        match self.as_rational() {
            Some((n, 1)) => Some(n),
            _ => None,
        }
    }

    /// Compact textual form such as `2 - 3*z^2 (z=ζ12)` or `5/3`.
    pub fn to_exact_string(&self) -> String {
        let mut terms = Vec::new();
        for (k, &c) in self.num.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let coef = if self.den == 1 { c.to_string() } else { format!("{c}/{}", self.den) };
            terms.push(match k {
                0 => coef,
                1 => format!("{coef}*z"),
                _ => format!("{coef}*z^{k}"),
            });
        }
        if terms.is_empty() {
            return "0".into();
        }
        let body = terms.join(" + ").replace("+ -", "- ");
        if self.num[1..].iter().any(|&c| c != 0) {
            format!("{body} (z=ζ{})", self.conductor)
        } else {
            body
        }
    }
}

impl PartialEq for CyclotomicNumber {
    fn eq(&self, other: &Self) -> bool {
        if self.conductor == other.conductor {
            return self.den == other.den && self.num == other.num;
        }
        let (a, b) = self.unify(other);
        a.den == b.den && a.num == b.num
    }
}
impl Eq for CyclotomicNumber {}

impl fmt::Debug for CyclotomicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_exact_string())
    }
}
impl fmt::Display for CyclotomicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_exact_string())
    }
}

impl Add for &CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn add(self, rhs: &CyclotomicNumber) -> CyclotomicNumber {
        if self.conductor != rhs.conductor {
            let (a, b) = self.unify(rhs);
            return &a + &b;
        }
        let num = self
            .num
            .iter()
            .zip(&rhs.num)
            .map(|(&x, &y)| {
                x.checked_mul(rhs.den)
                    .and_then(|u| y.checked_mul(self.den).and_then(|v| u.checked_add(v)))
                    .expect("cyclotomic overflow")
            })
            .collect();
        CyclotomicNumber::normalized(
            self.conductor,
            num,
            self.den.checked_mul(rhs.den).expect("cyclotomic overflow"),
        )
    }
}

impl Neg for &CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn neg(self) -> CyclotomicNumber {
        CyclotomicNumber {
            conductor: self.conductor,
            num: self.num.iter().map(|c| -c).collect(),
            den: self.den,
        }
    }
}

impl Sub for &CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn sub(self, rhs: &CyclotomicNumber) -> CyclotomicNumber {
        self + &(-rhs)
    }
}

impl Mul for &CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn mul(self, rhs: &CyclotomicNumber) -> CyclotomicNumber {
        if self.conductor != rhs.conductor {
            let (a, b) = self.unify(rhs);
            return &a * &b;
        }
        let mut poly = vec![0i128; self.num.len() + rhs.num.len()];
        for (i, &x) in self.num.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in rhs.num.iter().enumerate() {
                let t = x.checked_mul(y).expect("cyclotomic overflow");
                poly[i + j] = poly[i + j].checked_add(t).expect("cyclotomic overflow");
            }
        }
        CyclotomicNumber::normalized(
            self.conductor,
            reduce_poly(self.conductor, poly),
            self.den.checked_mul(rhs.den).expect("cyclotomic overflow"),
        )
    }
}

macro_rules! owned_ops {
    ($tr:ident, $m:ident) => {
        impl $tr for CyclotomicNumber {
            type Output = CyclotomicNumber;
            fn $m(self, rhs: CyclotomicNumber) -> CyclotomicNumber {
                (&self).$m(&rhs)
            }
        }
    };
}
owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);

/// Serialized form: conductor plus power-basis coordinates as `"num/den"` strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CyclotomicRecord {
    pub conductor: u32,
    pub coords: Vec<String>,
}

impl From<&CyclotomicNumber> for CyclotomicRecord {
    fn from(c: &CyclotomicNumber) -> Self {
        CyclotomicRecord {
            conductor: c.conductor,
            coords: c
                .num
                .iter()
                .map(|&n| {
                    let g = gcd_i128(n, c.den).max(1);
                    if c.den / g == 1 {
                        (n / g).to_string()
                    } else {
                        format!("{}/{}", n / g, c.den / g)
                    }
                })
                .collect(),
        }
    }
}

impl TryFrom<&CyclotomicRecord> for CyclotomicNumber {
    type Error = crate::error::Error;
    fn try_from(r: &CyclotomicRecord) -> crate::error::Result<Self> {
        let bad = || crate::error::Error::Invalid(format!("malformed cyclotomic record {r:?}"));
        if r.conductor == 0 || r.coords.len() != euler_phi(r.conductor) as usize {
            return Err(bad());
        }
        let mut acc = CyclotomicNumber::zero(r.conductor);
        for (k, s) in r.coords.iter().enumerate() {
            let (n, d) = match s.split_once('/') {
                Some((n, d)) => (n.parse::<i128>().map_err(|_| bad())?, d.parse::<i128>().map_err(|_| bad())?),
                None => (s.parse::<i128>().map_err(|_| bad())?, 1),
            };
            if d == 0 {
                return Err(bad());
            }
            let mut num = vec![0; r.coords.len()];
            num[k] = n;
            acc = &acc + &CyclotomicNumber::normalized(r.conductor, num, d);
        }
        Ok(acc)
    }
}
