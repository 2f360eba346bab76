//! Character tables by the Burnside–Dixon method.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{inner_product, ClassFunction};
use crate::arith::modp::{charpoly, mod_inv, mod_pow, nullspace, poly_roots, prime_one_mod, primitive_root, rref};
use crate::arith::{CyclotomicNumber, CyclotomicRecord};
use crate::error::{invalid, Error, Result};
use crate::groups::MatrixGroup;

/// Default cap on the order of a group whose table is computed.
pub const TABLE_BUDGET: u128 = 10_000;

/// Bumped whenever stored tables would change.
pub const TABLE_FORMAT_VERSION: u32 = 1;

pub struct CharacterTable {
    group: Arc<MatrixGroup>,
    irreducibles: Vec<ClassFunction>,
    modulus: u64,
}

impl std::fmt::Debug for CharacterTable {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "CharacterTable({}, {} irreducibles)", self.group.name(), self.irreducibles.len())
    }
}

/// Class-algebra structure constants: `M_j[l][k] = #{x ∈ C_j : x^{-1} g_k ∈ C_l}`.
fn class_matrix(g: &MatrixGroup, j: usize, l: u64) -> Vec<Vec<u64>> {
    let cl = g.classes();
    let k = cl.len();
    let mut m = vec![vec![0u64; k]; k];
    for &x in &cl.members[j] {
        let xi = g.inv(x as usize);
        for (col, &rep) in cl.reps.iter().enumerate() {
            let row = cl.class_of[g.mul(xi, rep)] as usize;
            m[row][col] += 1;
        }
    }
    for row in m.iter_mut() {
        row.iter_mut().for_each(|v| *v %= l);
    }
    m
}

/// Splits the common eigenspaces of all class matrices into lines.
fn eigenvectors(g: &MatrixGroup, l: u64) -> Result<Vec<Vec<u64>>> {
    let k = g.classes().len();
    let mut spaces: Vec<Vec<Vec<u64>>> = vec![(0..k).map(|i| (0..k).map(|j| (i == j) as u64).collect()).collect()];
    for j in 1..k {
        if spaces.iter().all(|s| s.len() == 1) {
            break;
        }
        let m = class_matrix(g, j, l);
        let mut next = Vec::new();
        for basis in spaces {
            if basis.len() == 1 {
                next.push(basis);
                continue;
            }
            let d = basis.len();
            let pivots: Vec<usize> = basis.iter().map(|b| b.iter().position(|&x| x != 0).unwrap()).collect();
            // images of the basis vectors, in coordinates of the basis
            let images: Vec<Vec<u64>> = basis
                .iter()
                .map(|b| (0..k).map(|row| m[row].iter().zip(b).fold(0, |acc, (&a, &x)| (acc + a * x) % l)).collect())
                .collect();
            let restricted: Vec<Vec<u64>> =
                (0..d).map(|t| (0..d).map(|i| images[i][pivots[t]]).collect()).collect();
            let roots = poly_roots(&charpoly(&restricted, l), l);
            let mut total = 0;
            for lam in roots {
                let shifted: Vec<Vec<u64>> = restricted
                    .iter()
                    .enumerate()
                    .map(|(t, row)| row.iter().enumerate().map(|(i, &x)| if i == t { (x + l - lam) % l } else { x }).collect())
                    .collect();
                let coords = nullspace(&shifted, l);
                if coords.is_empty() {
                    continue;
                }
                total += coords.len();
                let mut sub: Vec<Vec<u64>> = coords
                    .iter()
                    .map(|c| (0..k).map(|e| basis.iter().zip(c).fold(0, |acc, (b, &ci)| (acc + b[e] * ci) % l)).collect())
                    .collect();
                rref(&mut sub, l);
                next.push(sub);
            }
            if total != d {
                return Err(Error::Verification(format!("class matrix {j} is not diagonalizable mod {l}")));
            }
        }
        spaces = next;
    }
    if spaces.iter().any(|s| s.len() != 1) {
        return Err(Error::Verification("class matrices do not separate the characters".into()));
    }
    Ok(spaces.into_iter().map(|mut s| s.pop().unwrap()).collect())
}

impl CharacterTable {
    pub fn compute(group: Arc<MatrixGroup>, budget: u128) -> Result<Self> {
        let order = group.order() as u64;
        if order as u128 > budget {
            return Err(Error::Budget { what: format!("character table of {}", group.name()), needed: order as u128, budget });
        }
        let cl = group.classes();
        let e = cl.exponent as u64;
        let bound = (2.0 * (order as f64).sqrt()).floor() as u64;
        let l = prime_one_mod(e, bound);
        let z = mod_pow(primitive_root(l), (l - 1) / e, l);
        let k = cl.len();
        let powers: Vec<Vec<usize>> = cl
            .reps
            .iter()
            .zip(&cl.orders)
            .map(|(&r, &o)| {
                let mut x = group.identity();
                (0..o)
                    .map(|_| {
                        let c = cl.class_of[x] as usize;
                        x = group.mul(x, r);
                        c
                    })
                    .collect()
            })
            .collect();
        let mut irreducibles = Vec::with_capacity(k);
        for w in eigenvectors(&group, l)? {
            let w0 = mod_inv(w[0], l);
            let w: Vec<u64> = w.iter().map(|&x| x * w0 % l).collect();
            let s = (0..k).fold(0, |acc, j| (acc + w[j] * w[cl.inverse[j]] % l * mod_inv(cl.sizes[j] as u64 % l, l)) % l);
            let d2 = order % l * mod_inv(s, l) % l;
            let d = (1..=bound / 2 + 1)
                .find(|&d| d * d % l == d2)
                .ok_or_else(|| Error::Verification(format!("no degree lifts d² ≡ {d2} mod {l}")))?;
            let modular: Vec<u64> = (0..k).map(|j| w[j] * d % l * mod_inv(cl.sizes[j] as u64 % l, l) % l).collect();
            let mut values = Vec::with_capacity(k);
            for j in 0..k {
                let o = cl.orders[j] as u64;
                let zo = mod_pow(z, e / o, l);
                let inv_o = mod_inv(o % l, l);
                let counts: Vec<i64> = (0..o)
                    .map(|t| {
                        let zt = mod_pow(zo, (o - t) % o, l);
                        let mut acc = 0;
                        let mut zp = 1;
                        for i in 0..o as usize {
                            acc = (acc + modular[powers[j][i]] * zp) % l;
                            zp = zp * zt % l;
                        }
                        (acc * inv_o % l) as i64
                    })
                    .collect();
                if counts.iter().any(|&c| c as u64 > d) {
                    return Err(Error::Verification(format!("value at class {j} does not lift mod {l}")));
                }
                values.push(CyclotomicNumber::from_root_counts(o as u32, &counts).lift(e as u32));
            }
            irreducibles.push(ClassFunction::new(group.clone(), values)?);
        }
        sort_characters(&mut irreducibles);
        let table = CharacterTable { group, irreducibles, modulus: l };
        table.verify()?;
        Ok(table)
    }

    pub fn group(&self) -> &Arc<MatrixGroup> {
        &self.group
    }
    pub fn irreducibles(&self) -> &[ClassFunction] {
        &self.irreducibles
    }
    pub fn len(&self) -> usize {
        self.irreducibles.len()
    }
    pub fn is_empty(&self) -> bool {
        self.irreducibles.is_empty()
    }
    /// The Dixon prime used to build the table.
    pub fn modulus(&self) -> u64 {
        self.modulus
    }
    pub fn degrees(&self) -> Vec<i128> {
        self.irreducibles.iter().map(|c| c.degree_int().unwrap_or(0)).collect()
    }

    /// Exact row and column orthogonality and `Σ d² = |G|`.
    pub fn verify(&self) -> Result<()> {
        let g = &self.group;
        let cl = g.classes();
        let k = cl.len();
        if self.irreducibles.len() != k {
            return Err(Error::Verification(format!("{} characters for {k} classes", self.irreducibles.len())));
        }
        let sum_sq: i128 = self.degrees().iter().map(|d| d * d).sum();
        if sum_sq != g.order() as i128 {
            return Err(Error::Verification(format!("Σ d² = {sum_sq} ≠ |G| = {}", g.order())));
        }
        for a in 0..k {
            for b in a..k {
                let ip = inner_product(&self.irreducibles[a], &self.irreducibles[b])?;
                if ip != CyclotomicNumber::from_int(1, (a == b) as i128) {
                    return Err(Error::Verification(format!("⟨χ_{a}, χ_{b}⟩ = {ip}")));
                }
            }
        }
        let e = g.exponent();
        for a in 0..k {
            for b in a..k {
                let s = self.irreducibles.iter().fold(CyclotomicNumber::zero(e), |acc, chi| {
                    &acc + &(chi.value(a) * &chi.value(b).conj())
                });
                let expected = if a == b { (g.order() / cl.sizes[a]) as i128 } else { 0 };
                if s != CyclotomicNumber::from_int(1, expected) {
                    return Err(Error::Verification(format!("column orthogonality fails at classes {a}, {b}")));
                }
            }
        }
        Ok(())
    }

    /// `⟨χ, σ⟩` for every irreducible `σ`, as integers.
    pub fn decompose(&self, chi: &ClassFunction) -> Result<Vec<i128>> {
        self.irreducibles
            .iter()
            .map(|s| {
                let v = inner_product(chi, s)?;
                v.as_integer()
                    .ok_or_else(|| Error::Verification(format!("multiplicity {v} is not an integer")))
            })
            .collect()
    }

    /// Indices of irreducibles with nonzero multiplicity.
    pub fn constituents(&self, chi: &ClassFunction) -> Result<Vec<usize>> {
        Ok(self.decompose(chi)?.iter().enumerate().filter(|(_, &m)| m != 0).map(|(i, _)| i).collect())
    }

    pub fn to_record(&self, spec: &str) -> CharacterTableRecord {
        let cl = self.group.classes();
        CharacterTableRecord {
            version: TABLE_FORMAT_VERSION,
            spec: spec.to_string(),
            group: self.group.name().to_string(),
            order: self.group.order(),
            exponent: cl.exponent,
            modulus: self.modulus,
            class_reps: cl.reps.iter().map(|&r| self.group.codes()[r].to_string()).collect(),
            class_sizes: cl.sizes.clone(),
            characters: self
                .irreducibles
                .iter()
                .map(|c| c.values().iter().map(CyclotomicRecord::from).collect())
                .collect(),
        }
    }

    /// Rebuilds a stored table against `group`, re-deriving the class order
    /// from representatives and re-verifying orthogonality.
    pub fn from_record(group: Arc<MatrixGroup>, rec: &CharacterTableRecord) -> Result<Self> {
        if rec.version != TABLE_FORMAT_VERSION {
            return invalid(format!("table format {} is not {}", rec.version, TABLE_FORMAT_VERSION));
        }
        let cl = group.classes();
        if rec.order != group.order() || rec.class_reps.len() != cl.len() {
            return invalid("stored table does not match the group");
        }
        let mut perm = vec![usize::MAX; cl.len()];
        for (stored, code) in rec.class_reps.iter().enumerate() {
            let code: u128 = code.parse().map_err(|_| Error::Invalid(format!("bad element code {code}")))?;
            let i = group.index_of_code(code).ok_or_else(|| Error::Invalid(format!("code {code} not in group")))?;
            let c = cl.class_of[i] as usize;
            if cl.sizes[c] != rec.class_sizes[stored] {
                return invalid("class sizes disagree");
            }
            perm[c] = stored;
        }
        if perm.contains(&usize::MAX) {
            return invalid("stored classes do not cover the group");
        }
        let mut irreducibles = Vec::with_capacity(rec.characters.len());
        for row in &rec.characters {
            if row.len() != cl.len() {
                return invalid("character row has the wrong length");
            }
            let values = (0..cl.len())
                .map(|c| CyclotomicNumber::try_from(&row[perm[c]]))
                .collect::<Result<Vec<_>>>()?;
            irreducibles.push(ClassFunction::new(group.clone(), values)?);
        }
        let table = CharacterTable { group, irreducibles, modulus: rec.modulus };
        table.verify()?;
        Ok(table)
    }
}

/// Trivial character first, then by degree and exact values.
fn sort_characters(chars: &mut [ClassFunction]) {
    chars.sort_by_cached_key(|c| {
        let trivial = c.values().iter().all(|v| v.as_integer() == Some(1));
        (
            !trivial,
            c.degree_int().unwrap_or(0),
            c.values().iter().map(|v| v.to_exact_string()).collect::<Vec<_>>(),
        )
    });
}

/// Stored form of a table: class representatives as element encodings,
/// class sizes, and values as conductor plus power-basis coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharacterTableRecord {
    pub version: u32,
    pub spec: String,
    pub group: String,
    pub order: usize,
    pub exponent: u32,
    pub modulus: u64,
    pub class_reps: Vec<String>,
    pub class_sizes: Vec<usize>,
    pub characters: Vec<Vec<CyclotomicRecord>>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{enumerate, GroupSpec, DEFAULT_BUDGET};

    fn table(spec: &GroupSpec) -> CharacterTable {
        let g = Arc::new(enumerate(spec, DEFAULT_BUDGET).unwrap());
        CharacterTable::compute(g, TABLE_BUDGET).unwrap()
    }

    #[test]
    fn cyclic_of_order_three() {
        let t = table(&GroupSpec::gl(1, 4, 1));
        assert_eq!(t.degrees(), vec![1, 1, 1]);
        let z3 = CyclotomicNumber::root_of_unity(3, 1);
        let vals: Vec<&CyclotomicNumber> = t.irreducibles().iter().map(|c| c.value(1)).collect();
        assert!(vals.contains(&&z3));
    }

    #[test]
    fn s3_degrees() {
        let mut d = table(&GroupSpec::gl(2, 2, 1)).degrees();
        d.sort();
        assert_eq!(d, vec![1, 1, 2]);
    }

    #[test]
    fn order_96_table() {
        let t = table(&GroupSpec::gl(2, 2, 2));
        assert_eq!(t.degrees().iter().map(|d| d * d).sum::<i128>(), 96);
        let triv = ClassFunction::trivial(t.group().clone());
        assert_eq!(t.irreducibles()[0], triv);
    }

    #[test]
    fn record_round_trip() {
        let t = table(&GroupSpec::gl(2, 3, 1));
        let rec = t.to_record("GL 2 3 1 1");
        assert_eq!(rec.class_reps.len(), rec.class_sizes.len());
        let back = CharacterTable::from_record(t.group().clone(), &rec).unwrap();
        assert_eq!(back.irreducibles(), t.irreducibles());
    }
}
