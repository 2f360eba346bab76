//! Flags of subspaces of `F^{nr}`, stored as reduced echelon bases.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::arith::linalg::{echelon, in_span};
use crate::arith::{Fe, GaloisField};
use crate::error::{invalid, precondition, Result};

/// Basis vector `x_j^{(i)}` with `j` counted from 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BasisVector {
    pub level: usize,
    pub j: usize,
}

impl BasisVector {
    pub fn new(level: usize, j: usize) -> Self {
        BasisVector { level, j }
    }
    pub fn index(&self, n: usize) -> usize {
        self.level * n + self.j - 1
    }
}

/// A chain `0 = V_0 ⊂ ... ⊂ V_m = F^{nr}` of subspaces. A complete flag has
/// one subspace of every dimension; a partial flag skips some dimensions.
#[derive(Clone, Debug)]
pub struct Flag {
    field: Arc<GaloisField>,
    n: usize,
    r: usize,
    spaces: Vec<Vec<Vec<Fe>>>,
}

impl PartialEq for Flag {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.field, &other.field) && self.n == other.n && self.r == other.r && self.spaces == other.spaces
    }
}

impl Flag {
    /// Builds a chain from subspaces given by spanning rows; `0` and the full
    /// space are added, and nesting is verified.
    pub fn from_subspaces(field: Arc<GaloisField>, n: usize, r: usize, subspaces: Vec<Vec<Vec<Fe>>>) -> Result<Self> {
        let dim = n * r;
        let mut spaces: Vec<Vec<Vec<Fe>>> = Vec::new();
        let full: Vec<Vec<Fe>> = (0..dim).map(|i| (0..dim).map(|j| (i == j) as Fe).collect()).collect();
        for s in std::iter::once(Vec::new()).chain(subspaces).chain(std::iter::once(full)) {
            if s.iter().any(|row| row.len() != dim) {
                return invalid(format!("subspace rows must have length {dim}"));
            }
            let e = echelon(&field, s);
            if let Some(prev) = spaces.last() {
                if e.len() < prev.len() || !prev.iter().all(|v| in_span(&field, &e, v)) {
                    return invalid("subspaces are not nested");
                }
                if e.len() == prev.len() {
                    continue;
                }
            }
            spaces.push(e);
        }
        Ok(Flag { field, n, r, spaces })
    }

    /// The complete flag `V_k = span(v_1, ..., v_k)`.
    pub fn from_vectors(field: Arc<GaloisField>, n: usize, r: usize, vectors: &[Vec<Fe>]) -> Result<Self> {
        let dim = n * r;
        if vectors.len() != dim {
            return invalid(format!("a complete flag needs {dim} vectors"));
        }
        let subs = (1..dim).map(|k| vectors[..k].to_vec()).collect();
        let flag = Self::from_subspaces(field, n, r, subs)?;
        if !flag.is_complete() {
            return invalid("vectors are linearly dependent");
        }
        Ok(flag)
    }

    /// The complete flag on basis vectors added in the given order.
    pub fn from_basis_order(field: Arc<GaloisField>, n: usize, r: usize, order: &[BasisVector]) -> Result<Self> {
        let dim = n * r;
        let vecs = order
            .iter()
            .map(|b| {
                if b.j == 0 || b.j > n || b.level >= r {
                    return invalid(format!("basis vector {b:?} out of range"));
                }
                let mut v = vec![0; dim];
                v[b.index(n)] = 1;
                Ok(v)
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_vectors(field, n, r, &vecs)
    }

    /// The partial flag obtained from the full space by deleting basis vectors
    /// one at a time, in the given order.
    pub fn by_deletion(field: Arc<GaloisField>, n: usize, r: usize, deleted: &[BasisVector]) -> Result<Self> {
        let dim = n * r;
        let mut keep: Vec<bool> = vec![true; dim];
        let mut subs = Vec::new();
        for b in deleted {
            keep[b.index(n)] = false;
            subs.push(
                (0..dim)
                    .filter(|&k| keep[k])
                    .map(|k| (0..dim).map(|c| (c == k) as Fe).collect())
                    .collect::<Vec<_>>(),
            );
        }
        subs.reverse();
        Self::from_subspaces(field, n, r, subs)
    }

    /// A uniformly random complete flag from a seeded generator.
    pub fn random(field: Arc<GaloisField>, n: usize, r: usize, seed: u64) -> Result<Self> {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let dim = n * r;
        loop {
            let vecs: Vec<Vec<Fe>> = (0..dim)
                .map(|_| (0..dim).map(|_| rng.gen_range(0..field.size()) as Fe).collect())
                .collect();
            if echelon(&field, vecs.clone()).len() == dim {
                return Self::from_vectors(field, n, r, &vecs);
            }
        }
    }

    /// The chain containing every subspace of all inputs.
    pub fn compose(parts: &[&Flag]) -> Result<Self> {
        let first = parts.first().ok_or_else(|| crate::Error::Invalid("nothing to compose".into()))?;
        let mut all: Vec<Vec<Vec<Fe>>> = parts.iter().flat_map(|p| p.spaces.iter().cloned()).collect();
        if parts.iter().any(|p| p.n != first.n || p.r != first.r || !Arc::ptr_eq(&p.field, &first.field)) {
            return invalid("flags live in different spaces");
        }
        all.sort_by_key(|s| s.len());
        all.dedup();
        let mut dims: Vec<usize> = all.iter().map(|s| s.len()).collect();
        dims.dedup();
        if dims.len() != all.len() {
            return invalid("two different subspaces of the same dimension");
        }
        Self::from_subspaces(first.field.clone(), first.n, first.r, all)
    }

    pub fn field(&self) -> &Arc<GaloisField> {
        &self.field
    }
    pub fn n(&self) -> usize {
        self.n
    }
    pub fn r(&self) -> usize {
        self.r
    }
    pub fn dim(&self) -> usize {
        self.n * self.r
    }
    /// Reduced echelon bases of the chain, from `0` up to the full space.
    pub fn subspaces(&self) -> &[Vec<Vec<Fe>>] {
        &self.spaces
    }
    pub fn dims(&self) -> Vec<usize> {
        self.spaces.iter().map(|s| s.len()).collect()
    }
    pub fn is_complete(&self) -> bool {
        self.spaces.len() == self.dim() + 1
    }

    /// Whether every subspace has a basis fixed by `x ↦ x^q`.
    pub fn is_rational_over(&self, q: u64) -> bool {
        self.spaces.iter().flatten().all(|row| row.iter().all(|&x| self.field.pow(x, q) == x))
    }

    pub fn to_record(&self) -> FlagRecord {
        FlagRecord {
            p: self.field.characteristic(),
            k: self.field.degree(),
            modulus: self.field.modulus().to_vec(),
            n: self.n,
            r: self.r,
            subspaces: self.spaces.iter().skip(1).take(self.spaces.len().saturating_sub(2)).cloned().collect(),
        }
    }

    pub fn from_record(rec: &FlagRecord) -> Result<Self> {
        let field = GaloisField::shared(rec.p, rec.k)?;
        if field.modulus() != rec.modulus.as_slice() {
            return precondition("flag was written with a different field modulus");
        }
        Self::from_subspaces(field, rec.n, rec.r, rec.subspaces.clone())
    }
}

/// Serialized form of a [`Flag`]: field header, then the proper nonzero
/// subspaces as reduced echelon rows (field elements as integer encodings).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlagRecord {
    pub p: u32,
    pub k: u32,
    pub modulus: Vec<u32>,
    pub n: usize,
    pub r: usize,
    pub subspaces: Vec<Vec<Vec<Fe>>>,
}

fn bv(level: usize, j: usize) -> BasisVector {
    BasisVector::new(level, j)
}

/// Increasing order of the flag whose stabilizer is `T_1·U`:
/// `x_1^{(0)}, ..., x_1^{(r-1)}, x_2^{(0)}, ..., x_n^{(r-1)}`.
pub fn standard_dl_order(n: usize, r: usize) -> Vec<BasisVector> {
    (1..=n).flat_map(|j| (0..r).map(move |l| bv(l, j))).collect()
}

pub fn flag_standard_dl(field: Arc<GaloisField>, n: usize, r: usize) -> Result<Flag> {
    if r == 0 {
        return invalid("r must be positive");
    }
    Flag::from_basis_order(field, n, r, &standard_dl_order(n, r))
}

/// The three partial flags `F′, F″, F‴` of the `r ≥ 3` construction.
///
/// `F′` deletes `x_1^{(r-2)}, ..., x_n^{(r-2)}`; `F″` then deletes the
/// `x_j^{(i)}` with `0 < i ≤ r-3` from the last to the first; `F‴` is the
/// increasing chain `x_1^{(r-1)}, x_1^{(0)}, ..., x_n^{(r-1)}, x_n^{(0)}`.
pub fn case1_partials(field: Arc<GaloisField>, n: usize, r: usize) -> Result<[Flag; 3]> {
    if r < 3 {
        return precondition("this flag needs r ≥ 3");
    }
    let d1: Vec<BasisVector> = (1..=n).map(|j| bv(r - 2, j)).collect();
    let f1 = Flag::by_deletion(field.clone(), n, r, &d1)?;
    let mut d2 = d1.clone();
    let middle: Vec<BasisVector> = (1..r - 2).flat_map(|l| (1..=n).map(move |j| bv(l, j))).rev().collect();
    d2.extend(middle.iter().copied());
    let f2 = Flag::by_deletion(field.clone(), n, r, &d2)?;
    let f2 = Flag::from_subspaces(
        field.clone(),
        n,
        r,
        f2.spaces.iter().filter(|s| s.len() <= n * r - n && s.len() >= 2 * n).cloned().collect(),
    )?;
    let bottom: Vec<BasisVector> = (1..=n).flat_map(|j| [bv(r - 1, j), bv(0, j)]).collect();
    let dim = n * r;
    let subs: Vec<Vec<Vec<Fe>>> = (1..=2 * n)
        .map(|k| {
            bottom[..k]
                .iter()
                .map(|b| (0..dim).map(|c| (c == b.index(n)) as Fe).collect())
                .collect()
        })
        .collect();
    let f3 = Flag::from_subspaces(field, n, r, subs)?;
    Ok([f1, f2, f3])
}

/// Complete flag composed from [`case1_partials`]; stabilizer `T_1·B^{r-1}`.
pub fn flag_case1(field: Arc<GaloisField>, n: usize, r: usize) -> Result<Flag> {
    let [a, b, c] = case1_partials(field, n, r)?;
    Flag::compose(&[&a, &b, &c])
}

/// The `r = 2` flag with increasing order
/// `x_1^{(0)}, ..., x_{n-1}^{(0)}, x_n^{(1)}, x_{n-1}^{(1)}, ..., x_1^{(1)}, x_n^{(0)}`;
/// stabilizer `T_1·(I + πV)`.
pub fn flag_case2(field: Arc<GaloisField>, n: usize, r: usize) -> Result<Flag> {
    if r != 2 {
        return precondition("this flag needs r = 2");
    }
    let mut order: Vec<BasisVector> = (1..n).map(|j| bv(0, j)).collect();
    order.extend((1..=n).rev().map(|j| bv(1, j)));
    order.push(bv(0, n));
    Flag::from_basis_order(field, n, r, &order)
}

/// The flag on the basis order itself; stabilizer `B_1`.
pub fn flag_regular(field: Arc<GaloisField>, n: usize, r: usize) -> Result<Flag> {
    let order: Vec<BasisVector> = (0..r).flat_map(|l| (1..=n).map(move |j| bv(l, j))).collect();
    Flag::from_basis_order(field, n, r, &order)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2() -> Arc<GaloisField> {
        GaloisField::shared(2, 1).unwrap()
    }

    #[test]
    fn nesting_is_enforced() {
        let bad = vec![vec![vec![1, 0, 0, 0]], vec![vec![0, 1, 0, 0], vec![0, 0, 1, 0]]];
        assert!(Flag::from_subspaces(f2(), 2, 2, bad).is_err());
        assert!(Flag::from_vectors(f2(), 2, 2, &[vec![1, 0, 0, 0], vec![1, 0, 0, 0], vec![0, 0, 1, 0], vec![0, 0, 0, 1]]).is_err());
    }

    #[test]
    fn named_flags_are_complete_and_rational() {
        for (n, r) in [(2, 1), (2, 2), (3, 2), (2, 3), (3, 3), (2, 4)] {
            let f = f2();
            let dl = flag_standard_dl(f.clone(), n, r).unwrap();
            assert!(dl.is_complete() && dl.is_rational_over(2));
            assert!(flag_regular(f.clone(), n, r).unwrap().is_complete());
            if r == 2 {
                assert!(flag_case2(f.clone(), n, r).unwrap().is_complete());
            }
            if r >= 3 {
                let [a, b, c] = case1_partials(f.clone(), n, r).unwrap();
                assert_eq!(a.dims(), [vec![0], (n * r - n..=n * r).collect::<Vec<_>>()].concat());
                assert_eq!(c.dims(), [(0..=2 * n).collect::<Vec<_>>(), vec![n * r]].concat());
                if r == 3 {
                    assert_eq!(b.dims(), vec![0, 2 * n, 3 * n]);
                }
                assert!(flag_case1(f.clone(), n, r).unwrap().is_complete());
            }
        }
        assert_eq!(flag_regular(f2(), 2, 1).unwrap(), flag_standard_dl(f2(), 2, 1).unwrap());
        assert!(flag_case1(f2(), 2, 2).is_err());
        assert!(flag_case2(f2(), 2, 3).is_err());
    }

    #[test]
    fn record_round_trip() {
        let f = GaloisField::shared(3, 2).unwrap();
        let flag = Flag::random(f, 2, 2, 7).unwrap();
        let rec = flag.to_record();
        assert_eq!(rec.subspaces.len(), 3);
        assert_eq!(Flag::from_record(&rec).unwrap(), flag);
    }
}
