//! The block embedding `M_n(W) → M_{nr}(F)`, flags in `F^{nr}` and their
//! stabilizers.
//!
//! The basis of `F^{nr}` is `x_j^{(i)} = π^i e_j`, ordered
//! `x_1^{(0)}, ..., x_n^{(0)}, x_1^{(1)}, ..., x_n^{(r-1)}`; `x_j^{(i)}` has
//! index `i·n + (j-1)`. Vectors are columns and matrices act on the left.

pub mod flag;
pub mod stabilizer;
pub mod verify;

pub use flag::{BasisVector, Flag, FlagRecord};
pub use stabilizer::{stabilizer, FlagStabilizer};

use crate::arith::Fe;
use crate::groups::{Mat, MatSpace};

/// `A_0 + A_1 π + ...` as the `nr × nr` block lower-triangular matrix whose
/// block in block-row `l`, block-column `t` is `A_{l-t}` (row-major).
pub fn embed_matrix(space: &MatSpace, a: &Mat) -> Vec<Fe> {
    let (n, r) = (space.n(), space.level());
    let dim = n * r;
    let mut out = vec![0; dim * dim];
    for l in 0..r {
        for t in 0..=l {
            let blk = space.block(a, l - t);
            for i in 0..n {
                for j in 0..n {
                    out[(l * n + i) * dim + t * n + j] = blk[i * n + j];
                }
            }
        }
    }
    out
}

/// Product of square row-major matrices over the field of `space`.
pub fn field_matmul(space: &MatSpace, a: &[Fe], b: &[Fe], dim: usize) -> Vec<Fe> {
    let f = space.field();
    let mut out = vec![0; dim * dim];
    for i in 0..dim {
        for k in 0..dim {
            let x = a[i * dim + k];
            if x == 0 {
                continue;
            }
            for j in 0..dim {
                out[i * dim + j] = f.add(out[i * dim + j], f.mul(x, b[k * dim + j]));
            }
        }
    }
    out
}

/// `M v` for a row-major `dim × dim` matrix and a column vector.
pub fn apply(space: &MatSpace, m: &[Fe], v: &[Fe]) -> Vec<Fe> {
    let f = space.field();
    let dim = v.len();
    (0..dim)
        .map(|i| (0..dim).fold(0, |acc, k| f.add(acc, f.mul(m[i * dim + k], v[k]))))
        .collect()
}

/// Outcome of checking that [`embed_matrix`] is a ring monomorphism.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct EmbeddingCheck {
    pub pairs_checked: usize,
    pub additive: bool,
    pub multiplicative: bool,
    pub injective: bool,
}

impl EmbeddingCheck {
    pub fn passed(&self) -> bool {
        self.additive && self.multiplicative && self.injective
    }
}

fn check_pair(space: &MatSpace, a: &Mat, b: &Mat, acc: &mut EmbeddingCheck) {
    let dim = space.n() * space.level();
    let (ea, eb) = (embed_matrix(space, a), embed_matrix(space, b));
    let f = space.field();
    let sum: Vec<Fe> = ea.iter().zip(&eb).map(|(&x, &y)| f.add(x, y)).collect();
    acc.additive &= embed_matrix(space, &space.add(a, b)) == sum;
    acc.multiplicative &= embed_matrix(space, &space.mul(a, b)) == field_matmul(space, &ea, &eb, dim);
    acc.injective &= (a == b) == (ea == eb);
    acc.pairs_checked += 1;
}

/// Checks all pairs of `M_n(W)`.
pub fn verify_embedding_exhaustive(space: &MatSpace) -> EmbeddingCheck {
    let q = space.field().size() as u128;
    let total = q.pow(space.len() as u32);
    let all: Vec<Mat> = (0..total).map(|c| space.decode(c)).collect();
    let mut acc = EmbeddingCheck { additive: true, multiplicative: true, injective: true, ..Default::default() };
    for a in &all {
        for b in &all {
            check_pair(space, a, b, &mut acc);
        }
    }
    acc
}

/// Checks `pairs` seeded random pairs of `M_n(W)`.
pub fn verify_embedding_random(space: &MatSpace, pairs: usize, seed: u64) -> EmbeddingCheck {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let q = space.field().size();
    let mut acc = EmbeddingCheck { additive: true, multiplicative: true, injective: true, ..Default::default() };
    for _ in 0..pairs {
        let a = space.from_fn(|_, _, _| rng.gen_range(0..q) as Fe);
        let b = space.from_fn(|_, _, _| rng.gen_range(0..q) as Fe);
        check_pair(space, &a, &b, &mut acc);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::GroupSpec;

    #[test]
    fn rank_one_display() {
        let s = GroupSpec::gl(1, 3, 2).space().unwrap();
        let a = s.from_levels(&[&[2], &[1]]).unwrap();
        assert_eq!(embed_matrix(&s, &a), vec![2, 0, 1, 2]);
        let id = GroupSpec::gl(2, 2, 3).space().unwrap();
        let e = embed_matrix(&id, &id.identity());
        assert!((0..6).all(|i| (0..6).all(|j| e[i * 6 + j] == (i == j) as Fe)));
    }

    #[test]
    fn monomorphism_checks() {
        let s = GroupSpec::gl(1, 2, 2).space().unwrap();
        let c = verify_embedding_exhaustive(&s);
        assert!(c.passed());
        assert_eq!(c.pairs_checked, 16);
        for (n, q, r) in [(2, 3, 3), (3, 2, 2)] {
            let s = GroupSpec::gl(n, q, r).space().unwrap();
            let c = verify_embedding_random(&s, 1000, 42);
            assert!(c.passed());
        }
    }
}
