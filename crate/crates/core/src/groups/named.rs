//! Named subgroups given by coordinate patterns: tori, unipotent and Borel
//! subgroups, their level-one and kernel versions, and the scalar kernel.

use super::enumerate::in_family;
use super::group::MatrixGroup;
use super::matrix::Mat;
use super::spec::{Family, GroupSpec};
use crate::arith::Fe;
use crate::error::{precondition, Error, Result};

/// Allowed values of one coordinate `A_l[i][j]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Cell {
    Fixed(Fe),
    Free,
    NonZero,
}

/// A coordinate pattern over `M_n(W)`; its points are the matrices whose
/// coordinates satisfy every cell and which lie in the family.
#[derive(Clone, Debug)]
pub struct Pattern {
    spec: GroupSpec,
    cells: Vec<Cell>,
}

impl Pattern {
    /// All coordinates fixed to those of the identity.
    pub fn identity(spec: &GroupSpec) -> Self {
        let n = spec.n;
        let mut cells = vec![Cell::Fixed(0); spec.r * n * n];
        for i in 0..n {
            cells[i * n + i] = Cell::Fixed(1);
        }
        Pattern { spec: spec.clone(), cells }
    }
    pub fn set(mut self, l: usize, i: usize, j: usize, c: Cell) -> Self {
        let n = self.spec.n;
        self.cells[l * n * n + i * n + j] = c;
        self
    }
    /// Applies `c` at every `(l, i, j)` accepted by `pred`.
    pub fn set_where(mut self, pred: impl Fn(usize, usize, usize) -> bool, c: Cell) -> Self {
        let n = self.spec.n;
        for l in 0..self.spec.r {
            for i in 0..n {
                for j in 0..n {
                    if pred(l, i, j) {
                        self.cells[l * n * n + i * n + j] = c;
                    }
                }
            }
        }
        self
    }

    pub fn count_bound(&self) -> u128 {
        let q = self.spec.field_size() as u128;
        self.cells
            .iter()
            .map(|c| match c {
                Cell::Fixed(_) => 1,
                Cell::Free => q,
                Cell::NonZero => q - 1,
            })
            .product()
    }

    pub fn matches(&self, m: &Mat) -> bool {
        self.cells.iter().zip(m.data()).all(|(c, &x)| match c {
            Cell::Fixed(v) => x == *v,
            Cell::Free => true,
            Cell::NonZero => x != 0,
        })
    }

    pub fn group(&self, name: impl Into<String>, budget: u128) -> Result<MatrixGroup> {
        let needed = self.count_bound();
        let name = name.into();
        if needed > budget {
            return Err(Error::Budget { what: name, needed, budget });
        }
        let space = self.spec.space()?;
        let q = space.field().size();
        let choices: Vec<Vec<Fe>> = self
            .cells
            .iter()
            .map(|c| match *c {
                Cell::Fixed(v) => vec![v],
                Cell::Free => (0..q).map(|x| x as Fe).collect(),
                Cell::NonZero => (1..q).map(|x| x as Fe).collect(),
            })
            .collect();
        let mut pos = vec![0usize; choices.len()];
        let mut elems = Vec::new();
        let mut m = space.zero();
        'outer: loop {
            for (k, ch) in choices.iter().enumerate() {
                m.0[k] = ch[pos[k]];
            }
            if in_family(&space, self.spec.family, &m) {
                elems.push(m.clone());
            }
            for k in 0..choices.len() {
                if pos[k] + 1 < choices[k].len() {
                    pos[k] += 1;
                    continue 'outer;
                }
                pos[k] = 0;
            }
            break;
        }
        Ok(MatrixGroup::from_elements(space, name, elems))
    }
}

/// Diagonal torus `T`: diagonal entries in `W^×`.
pub fn torus(spec: &GroupSpec, budget: u128) -> Result<MatrixGroup> {
    Pattern::identity(spec)
        .set_where(|l, i, j| i == j && l == 0, Cell::NonZero)
        .set_where(|l, i, j| i == j && l > 0, Cell::Free)
        .group("T", budget)
}

/// Constant diagonal torus `T_1`: diagonal entries in `F^×`.
pub fn torus_level1(spec: &GroupSpec, budget: u128) -> Result<MatrixGroup> {
    Pattern::identity(spec).set_where(|l, i, j| i == j && l == 0, Cell::NonZero).group("T_1", budget)
}

/// Upper unitriangular matrices over `W`.
pub fn unipotent(spec: &GroupSpec, budget: u128) -> Result<MatrixGroup> {
    Pattern::identity(spec).set_where(|_, i, j| i < j, Cell::Free).group("U", budget)
}

/// Constant upper unitriangular matrices.
pub fn unipotent_level1(spec: &GroupSpec, budget: u128) -> Result<MatrixGroup> {
    Pattern::identity(spec).set_where(|l, i, j| l == 0 && i < j, Cell::Free).group("U_1", budget)
}

/// Upper triangular matrices over `W`.
pub fn borel(spec: &GroupSpec, budget: u128) -> Result<MatrixGroup> {
    Pattern::identity(spec)
        .set_where(|_, i, j| i <= j, Cell::Free)
        .set_where(|l, i, j| l == 0 && i == j, Cell::NonZero)
        .group("B", budget)
}

/// Constant upper triangular matrices.
pub fn borel_level1(spec: &GroupSpec, budget: u128) -> Result<MatrixGroup> {
    Pattern::identity(spec)
        .set_where(|l, i, j| l == 0 && i < j, Cell::Free)
        .set_where(|l, i, j| l == 0 && i == j, Cell::NonZero)
        .group("B_1", budget)
}

/// `B^i = {b ∈ B : b ≡ 1 mod π^i}`.
pub fn borel_kernel(spec: &GroupSpec, i: usize, budget: u128) -> Result<MatrixGroup> {
    if i == 0 || i > spec.r {
        return crate::error::invalid(format!("kernel level {i} outside 1..={}", spec.r));
    }
    Pattern::identity(spec).set_where(|l, a, b| l >= i && a <= b, Cell::Free).group(format!("B^{i}"), budget)
}

/// `T_1·B^{r-1}`.
pub fn torus_level1_borel_kernel(spec: &GroupSpec, budget: u128) -> Result<MatrixGroup> {
    if spec.r < 2 {
        return precondition("T_1·B^{r-1} needs r ≥ 2");
    }
    let r = spec.r;
    Pattern::identity(spec)
        .set_where(|l, i, j| l == 0 && i == j, Cell::NonZero)
        .set_where(|l, i, j| l == r - 1 && i <= j, Cell::Free)
        .group("T_1·B^{r-1}", budget)
}

/// `I + πV`, `V` the matrices supported on the last column.
pub fn last_column_kernel(spec: &GroupSpec, budget: u128) -> Result<MatrixGroup> {
    let n = spec.n;
    Pattern::identity(spec).set_where(|l, _, j| l >= 1 && j == n - 1, Cell::Free).group("I+πV", budget)
}

/// `T_1·(I + πV)`.
pub fn torus_level1_last_column(spec: &GroupSpec, budget: u128) -> Result<MatrixGroup> {
    let n = spec.n;
    Pattern::identity(spec)
        .set_where(|l, i, j| l == 0 && i == j, Cell::NonZero)
        .set_where(|l, _, j| l >= 1 && j == n - 1, Cell::Free)
        .group("T_1·(I+πV)", budget)
}

/// The scalar part of the first congruence kernel, `𝒵^F`.
///
/// For `GL_n` these are the scalars `1 + πc`. For `SL_n` with `p ∤ n` it is
/// trivial; with `p | n` the connected part is not modelled and the call is
/// refused.
pub fn center_reduction_kernel(spec: &GroupSpec) -> Result<MatrixGroup> {
    if spec.r < 2 {
        return precondition("the scalar kernel needs r ≥ 2");
    }
    let space = spec.space()?;
    match spec.family {
        Family::GL => {
            let w = space.ring();
            let elems = w
                .elements()
                .filter(|c| c.coeffs[0] == 1)
                .map(|c| space.scalar(&c))
                .collect();
            Ok(MatrixGroup::from_elements(space, "Z", elems))
        }
        Family::SL if spec.n as u32 % spec.p() != 0 => {
            Ok(MatrixGroup::from_elements(space.clone(), "Z", vec![space.identity()]))
        }
        Family::SL => precondition("scalar kernel of SL_n with p | n is not modelled"),
    }
}

/// Constant permutation matrix of `perm` (`e_j ↦ e_{perm[j]}`), sign-corrected
/// in the first row for `SL_n` so that it has determinant one.
pub fn permutation_matrix(spec: &GroupSpec, perm: &[usize]) -> Result<Mat> {
    let space = spec.space()?;
    let n = spec.n;
    let f = space.field().clone();
    let mut block = vec![0 as Fe; n * n];
    for (j, &i) in perm.iter().enumerate() {
        block[i * n + j] = 1;
    }
    let mut m = space.from_levels(&[&block])?;
    if spec.family == Family::SL && space.det(&m) != space.ring().one() {
        for j in 0..n {
            m.0[j] = f.neg(m.0[j]);
        }
    }
    Ok(m)
}
