//! Row reduction over a [`GaloisField`].

use super::field::{Fe, GaloisField};

/// Row-reduces `rows` over `f` and drops zero rows.
pub fn echelon(f: &GaloisField, mut rows: Vec<Vec<Fe>>) -> Vec<Vec<Fe>> {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| rows[i][c] != 0) else { continue };
        rows.swap(r, p);
        let inv = f.inv(rows[r][c]);
        for x in rows[r].iter_mut() {
            *x = f.mul(*x, inv);
        }
        for i in 0..rows.len() {
            let factor = rows[i][c];
            if i != r && factor != 0 {
                for k in 0..ncols {
                    let v = f.mul(factor, rows[r][k]);
                    rows[i][k] = f.sub(rows[i][k], v);
                }
            }
        }
        r += 1;
    }
    rows.truncate(r);
    rows
}

pub fn rank(f: &GaloisField, rows: Vec<Vec<Fe>>) -> usize {
    echelon(f, rows).len()
}

/// Whether `v` lies in the span of the reduced echelon basis `basis`.
pub fn in_span(f: &GaloisField, basis: &[Vec<Fe>], v: &[Fe]) -> bool {
    let mut w = v.to_vec();
    for row in basis {
        let Some(pc) = row.iter().position(|&x| x != 0) else { continue };
        let c = w[pc];
        if c != 0 {
            for (k, &x) in row.iter().enumerate() {
                w[k] = f.sub(w[k], f.mul(c, x));
            }
        }
    }
    w.iter().all(|&x| x == 0)
}

/// Basis of `{c : Σ_k rows[i][k] c_k = 0 for all i}`.
pub fn nullspace(f: &GaloisField, rows: Vec<Vec<Fe>>, ncols: usize) -> Vec<Vec<Fe>> {
    let e = echelon(f, rows);
    let pivots: Vec<usize> = e.iter().map(|r| r.iter().position(|&x| x != 0).unwrap()).collect();
    (0..ncols)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![0; ncols];
            v[free] = 1;
            for (row, &pc) in e.iter().zip(&pivots) {
                v[pc] = f.neg(row[free]);
            }
            v
        })
        .collect()
}
