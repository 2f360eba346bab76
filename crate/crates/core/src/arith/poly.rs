//! Univariate polynomials over a [`GaloisField`], low degree first, trimmed.

use super::field::{Fe, GaloisField};

pub fn trim(mut p: Vec<Fe>) -> Vec<Fe> {
    while p.last() == Some(&0) {
        p.pop();
    }
    p
}

pub fn mul(f: &GaloisField, a: &[Fe], b: &[Fe]) -> Vec<Fe> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = f.add(out[i + j], f.mul(x, y));
        }
    }
    trim(out)
}

pub fn sub(f: &GaloisField, a: &[Fe], b: &[Fe]) -> Vec<Fe> {
    let n = a.len().max(b.len());
    trim(
        (0..n)
            .map(|i| f.sub(a.get(i).copied().unwrap_or(0), b.get(i).copied().unwrap_or(0)))
            .collect(),
    )
}

pub fn rem(f: &GaloisField, a: &[Fe], b: &[Fe]) -> Vec<Fe> {
    assert!(!b.is_empty(), "division by zero polynomial");
    let mut r = trim(a.to_vec());
    let lead_inv = f.inv(*b.last().unwrap());
    while r.len() >= b.len() {
        let c = f.mul(*r.last().unwrap(), lead_inv);
        let shift = r.len() - b.len();
        for (i, &bi) in b.iter().enumerate() {
            r[shift + i] = f.sub(r[shift + i], f.mul(c, bi));
        }
        r = trim(r);
    }
    r
}

pub fn gcd(f: &GaloisField, a: &[Fe], b: &[Fe]) -> Vec<Fe> {
    let (mut a, mut b) = (trim(a.to_vec()), trim(b.to_vec()));
    while !b.is_empty() {
        let r = rem(f, &a, &b);
        a = b;
        b = r;
    }
    if let Some(&lead) = a.last() {
        let inv = f.inv(lead);
        a.iter_mut().for_each(|c| *c = f.mul(*c, inv));
    }
    a
}

pub fn derivative(f: &GaloisField, a: &[Fe]) -> Vec<Fe> {
    trim(
        a.iter()
            .enumerate()
            .skip(1)
            .map(|(k, &c)| f.mul(f.from_prime(k as u32 % f.characteristic()), c))
            .collect(),
    )
}

/// Squarefree over the (perfect) field iff coprime to its derivative.
pub fn is_squarefree(f: &GaloisField, a: &[Fe]) -> bool {
    gcd(f, a, &derivative(f, a)).len() == 1
}
