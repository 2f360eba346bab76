//! Dense linear algebra over a prime field `F_ℓ` with `ℓ < 2^31`.

pub fn mod_pow(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

pub fn mod_inv(a: u64, m: u64) -> u64 {
    debug_assert!(a % m != 0);
    mod_pow(a, m - 2, m)
}

/// Smallest prime `ℓ ≡ 1 (mod e)` with `ℓ > bound`.
pub fn prime_one_mod(e: u64, bound: u64) -> u64 {
    let mut l = bound / e * e + 1;
    while l <= bound {
        l += e;
    }
    while !super::field::is_prime(l) {
        l += e;
    }
    l
}

/// A generator of `F_ℓ^×`.
pub fn primitive_root(l: u64) -> u64 {
    let n = l - 1;
    let mut factors = Vec::new();
    let mut m = n;
    let mut d = 2;
    while d * d <= m {
        if m % d == 0 {
            factors.push(d);
            while m % d == 0 {
                m /= d;
            }
        }
        d += 1;
    }
    if m > 1 {
        factors.push(m);
    }
    (2..l)
        .find(|&g| factors.iter().all(|&f| mod_pow(g, n / f, l) != 1))
        .unwrap_or(1)
}

/// Row-reduces `rows` in place; returns the pivot columns.
pub fn rref(rows: &mut Vec<Vec<u64>>, l: u64) -> Vec<usize> {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(pr) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, pr);
        let inv = mod_inv(rows[r][c], l);
        for x in rows[r].iter_mut() {
            *x = *x * inv % l;
        }
        for i in 0..rows.len() {
            if i != r && rows[i][c] != 0 {
                let f = rows[i][c];
                for j in 0..ncols {
                    rows[i][j] = (rows[i][j] + (l - f) * rows[r][j]) % l;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

/// Basis of `{v : A v = 0}` for a square or rectangular matrix given by rows.
pub fn nullspace(a: &[Vec<u64>], l: u64) -> Vec<Vec<u64>> {
    let ncols = a.first().map_or(0, |r| r.len());
    let mut m = a.to_vec();
    let pivots = rref(&mut m, l);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![0u64; ncols];
            v[f] = 1;
            for (row, &pc) in m.iter().zip(&pivots) {
                v[pc] = (l - row[f]) % l;
            }
            v
        })
        .collect()
}

/// Characteristic polynomial `det(xI - A)` (low degree first) via Hessenberg reduction.
pub fn charpoly(a: &[Vec<u64>], l: u64) -> Vec<u64> {
    let n = a.len();
    let mut h: Vec<Vec<u64>> = a.to_vec();
    for m in 1..n.saturating_sub(1) {
        let Some(i0) = (m..n).find(|&i| h[i][m - 1] != 0) else {
            continue;
        };
        if i0 != m {
            h.swap(i0, m);
            for row in h.iter_mut() {
                row.swap(i0, m);
            }
        }
        let t_inv = mod_inv(h[m][m - 1], l);
        for i in m + 1..n {
            let u = h[i][m - 1] * t_inv % l;
            if u == 0 {
                continue;
            }
            for j in 0..n {
                h[i][j] = (h[i][j] + (l - u) * h[m][j]) % l;
            }
            for row in h.iter_mut() {
                row[m] = (row[m] + u * row[i]) % l;
            }
        }
    }
    // p_k = (x - h_kk) p_{k-1} - Σ_i t_i h_{k-i,k} p_{k-i-1}, 1-indexed
    let mut polys: Vec<Vec<u64>> = vec![vec![1]];
    for k in 1..=n {
        let prev = &polys[k - 1];
        let mut pk = vec![0u64; k + 1];
        for (d, &c) in prev.iter().enumerate() {
            pk[d + 1] = (pk[d + 1] + c) % l;
            pk[d] = (pk[d] + (l - h[k - 1][k - 1]) * c) % l;
        }
        let mut t = 1u64;
        for i in 1..k {
            t = t * h[k - i][k - i - 1] % l;
            let coef = t * h[k - i - 1][k - 1] % l;
            if coef == 0 {
                continue;
            }
            for (d, &c) in polys[k - i - 1].iter().enumerate() {
                pk[d] = (pk[d] + (l - coef) * c) % l;
            }
        }
        polys.push(pk);
    }
    polys.pop().unwrap()
}

pub fn poly_roots(poly: &[u64], l: u64) -> Vec<u64> {
    (0..l)
        .filter(|&x| poly.iter().rev().fold(0, |acc, &c| (acc * x + c) % l) == 0)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn det(a: &[Vec<u64>], l: u64) -> u64 {
        let n = a.len();
        let mut m = a.to_vec();
        let mut d = 1u64;
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| m[i][c] != 0) else { return 0 };
            if p != c {
                m.swap(p, c);
                d = (l - d) % l;
            }
            d = d * m[c][c] % l;
            let inv = mod_inv(m[c][c], l);
            for i in c + 1..n {
                let f = m[i][c] * inv % l;
                for j in c..n {
                    m[i][j] = (m[i][j] + (l - f) * m[c][j]) % l;
                }
            }
        }
        d
    }

    #[test]
    fn charpoly_matches_determinant_oracle() {
        use rand::{Rng, SeedableRng};
        let l = 37;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for n in 1..7 {
            for _ in 0..5 {
                let a: Vec<Vec<u64>> = (0..n)
                    .map(|_| (0..n).map(|_| if rng.gen_bool(0.4) { 0 } else { rng.gen_range(0..l) }).collect())
                    .collect();
                let cp = charpoly(&a, l);
                assert_eq!(cp.len(), n + 1);
                for x in 0..l {
                    let xa: Vec<Vec<u64>> = (0..n)
                        .map(|i| (0..n).map(|j| ((if i == j { x } else { 0 }) + l - a[i][j]) % l).collect())
                        .collect();
                    let val = cp.iter().rev().fold(0, |acc, &c| (acc * x + c) % l);
                    assert_eq!(val, det(&xa, l));
                }
            }
        }
    }

    #[test]
    fn nullspace_vectors_are_killed() {
        let l = 13;
        let a = vec![vec![1, 2, 3], vec![2, 4, 6], vec![0, 1, 1]];
        let ns = nullspace(&a, l);
        assert_eq!(ns.len(), 1);
        for row in &a {
            assert_eq!(row.iter().zip(&ns[0]).map(|(x, y)| x * y).sum::<u64>() % l, 0);
        }
    }

    #[test]
    fn primes_and_roots() {
        assert_eq!(prime_one_mod(12, 19), 37);
        assert_eq!(prime_one_mod(6, 6), 7);
        let g = primitive_root(37);
        assert_eq!((1..36).filter(|&k| mod_pow(g, k, 37) == 1).count(), 0);
    }
}
