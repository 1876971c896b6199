//! Generalized matrix algebras `[A M; N B]` assembled from Morita contexts.
//!
//! The assembled basis is always ordered `[A, M, N, B]`, so every corner
//! projection is a coordinate slice.

use std::fmt;

use crate::algebra::{is_zero_vec, sub_vec, Element, StructureConstants};
use crate::error::{Error, Result};
use crate::linalg::{kernel, solve, unit_vector, Matrix, Subspace};
use crate::scalar::Field;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum Block {
    A,
    M,
    N,
    B,
}

impl Block {
    pub const ALL: [Block; 4] = [Block::A, Block::M, Block::N, Block::B];

    pub fn index(self) -> usize {
        self as usize
    }

    /// Block that a product `x·y` with `x ∈ self`, `y ∈ rhs` lands in, or
    /// `None` when the 2×2 multiplication rule forces it to vanish.
    pub fn product(self, rhs: Block) -> Option<Block> {
        use Block::*;
        match (self, rhs) {
            (A, A) | (M, N) => Some(A),
            (A, M) | (M, B) => Some(M),
            (N, A) | (B, N) => Some(N),
            (N, M) | (B, B) => Some(B),
            _ => None,
        }
    }
}

impl fmt::Display for Block {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Block::A => "A",
            Block::M => "M",
            Block::N => "N",
            Block::B => "B",
        };
        f.write_str(s)
    }
}

/// A bimodule over two algebras given by action tensors.
///
/// `left[i][p][q]`: coefficient of `m_q` in `xᵢ·m_p` (`xᵢ` a basis vector of
/// the left algebra). `right[p][j][q]`: coefficient of `m_q` in `m_p·yⱼ`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Bimodule<F> {
    pub dim: usize,
    pub left: Vec<Vec<Vec<F>>>,
    pub right: Vec<Vec<Vec<F>>>,
}

impl<F: Field> Bimodule<F> {
    /// The zero module over algebras with `left_dim`-dimensional left side.
    pub fn zero(left_dim: usize) -> Self {
        Bimodule { dim: 0, left: vec![Vec::new(); left_dim], right: Vec::new() }
    }

    /// The algebra acting on itself by multiplication on both sides.
    pub fn regular(alg: &StructureConstants<F>) -> Self {
        let t = alg.table();
        Bimodule { dim: alg.dim(), left: t.clone(), right: t }
    }

    fn check_shape(&self, name: &str, left_dim: usize, right_dim: usize) -> Result<()> {
        let bad = |what: &str| Error::Shape(format!("bimodule {name}: {what}"));
        if self.left.len() != left_dim {
            return Err(bad("left action must have one slice per left-algebra basis vector"));
        }
        if self.left.iter().any(|s| s.len() != self.dim || s.iter().any(|v| v.len() != self.dim)) {
            return Err(bad("left action slices must be dim x dim"));
        }
        if self.right.len() != self.dim {
            return Err(bad("right action must have one slice per module basis vector"));
        }
        if self.right.iter().any(|s| s.len() != right_dim || s.iter().any(|v| v.len() != self.dim)) {
            return Err(bad("right action slices must be right-algebra-dim x dim"));
        }
        Ok(())
    }
}

/// Raw material of a generalized matrix algebra.
///
/// `zeta[p][q][i]`: coefficient of `aᵢ` in `m_p·n_q`;
/// `psi[q][p][j]`: coefficient of `bⱼ` in `n_q·m_p`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MoritaContext<F> {
    pub a: StructureConstants<F>,
    pub b: StructureConstants<F>,
    pub m: Bimodule<F>,
    pub n: Bimodule<F>,
    pub zeta: Vec<Vec<Vec<F>>>,
    pub psi: Vec<Vec<Vec<F>>>,
}

impl<F: Field> MoritaContext<F> {
    /// Triangular context: `N = 0` with zero pairings.
    pub fn triangular(a: StructureConstants<F>, m: Bimodule<F>, b: StructureConstants<F>) -> Self {
        let n = Bimodule::zero(b.dim());
        let zeta = vec![Vec::new(); m.dim];
        MoritaContext { a, b, m, n, zeta, psi: Vec::new() }
    }

    fn check_shapes(&self) -> Result<()> {
        let (da, db, dm, dn) = (self.a.dim(), self.b.dim(), self.m.dim, self.n.dim);
        self.m.check_shape("M", da, db)?;
        self.n.check_shape("N", db, da)?;
        let ok_zeta = self.zeta.len() == dm
            && self.zeta.iter().all(|s| s.len() == dn && s.iter().all(|v| v.len() == da));
        if !ok_zeta {
            return Err(Error::Shape("zeta must have shape dimM x dimN x dimA".into()));
        }
        let ok_psi = self.psi.len() == dn
            && self.psi.iter().all(|s| s.len() == dm && s.iter().all(|v| v.len() == db));
        if !ok_psi {
            return Err(Error::Shape("psi must have shape dimN x dimM x dimB".into()));
        }
        Ok(())
    }
}

/// An assembled generalized matrix algebra.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Gma<F> {
    algebra: StructureConstants<F>,
    dims: [usize; 4],
}

/// Builds the structure constants of `[A M; N B]`. The single associativity
/// check on the assembled table covers every bimodule and pairing axiom.
pub fn assemble<F: Field>(ctx: &MoritaContext<F>) -> Result<Gma<F>> {
    ctx.check_shapes()?;
    let dims = [ctx.a.dim(), ctx.m.dim, ctx.n.dim, ctx.b.dim()];
    let offs = offsets(&dims);
    let total: usize = dims.iter().sum();
    let locate = |g: usize| -> (Block, usize) {
        for blk in Block::ALL.iter().rev() {
            if g >= offs[blk.index()] && dims[blk.index()] > 0 {
                return (*blk, g - offs[blk.index()]);
            }
        }
        unreachable!("global index inside the algebra")
    };
    let algebra = StructureConstants::from_fn(total, |gi, gj| {
        let mut out = vec![F::zero(); total];
        let (bi, i) = locate(gi);
        let (bj, j) = locate(gj);
        let Some(target) = bi.product(bj) else {
            return out;
        };
        let coeffs: Vec<F> = match (bi, bj) {
            (Block::A, Block::A) => ctx.a.structure_constant(i, j),
            (Block::A, Block::M) => ctx.m.left[i][j].clone(),
            (Block::M, Block::B) => ctx.m.right[i][j].clone(),
            (Block::M, Block::N) => ctx.zeta[i][j].clone(),
            (Block::N, Block::A) => ctx.n.right[i][j].clone(),
            (Block::B, Block::N) => ctx.n.left[i][j].clone(),
            (Block::N, Block::M) => ctx.psi[i][j].clone(),
            (Block::B, Block::B) => ctx.b.structure_constant(i, j),
            _ => unreachable!("product rule returned a block"),
        };
        let o = offs[target.index()];
        for (k, c) in coeffs.into_iter().enumerate() {
            out[o + k] = c;
        }
        out
    })?;
    let mut labels = Vec::with_capacity(total);
    labels.extend(ctx.a.labels().iter().map(|l| format!("A:{l}")));
    labels.extend((1..=dims[1]).map(|p| format!("m{p}")));
    labels.extend((1..=dims[2]).map(|q| format!("n{q}")));
    labels.extend(ctx.b.labels().iter().map(|l| format!("B:{l}")));
    Ok(Gma { algebra: algebra.with_labels(labels)?, dims })
}

/// Generic labels `a1…, m1…, n1…, b1…` for a rebased algebra.
fn block_labels(dims: &[usize; 4]) -> Vec<String> {
    let mut out = Vec::new();
    for (prefix, d) in ["a", "m", "n", "b"].iter().zip(dims) {
        out.extend((1..=*d).map(|i| format!("{prefix}{i}")));
    }
    out
}

fn offsets(dims: &[usize; 4]) -> [usize; 4] {
    [0, dims[0], dims[0] + dims[1], dims[0] + dims[1] + dims[2]]
}

/// The 2×2 matrix algebra over `alg` (which may be non-unital).
pub fn m2_of<F: Field>(alg: &StructureConstants<F>) -> Gma<F> {
    let reg = Bimodule::regular(alg);
    let t = alg.table();
    let ctx = MoritaContext { a: alg.clone(), b: alg.clone(), m: reg.clone(), n: reg, zeta: t.clone(), psi: t };
    let g = assemble(&ctx).expect("matrix algebra over an associative algebra is associative");
    let mut labels = Vec::new();
    for pos in ["11", "12", "21", "22"] {
        labels.extend(alg.labels().iter().map(|l| format!("{l}@{pos}")));
    }
    g.relabel(labels).expect("label count matches")
}

/// Re-expresses a unital algebra in a basis adapted to `e`.
///
/// Returns the generalized matrix algebra `[eAe eAf; fAe fAf]` together with
/// the change-of-basis matrix whose columns are the new basis vectors in the
/// old coordinates.
pub fn peirce_from_idempotent<F: Field>(
    alg: &StructureConstants<F>,
    e: &Element<F>,
) -> Result<(Gma<F>, Matrix<F>)> {
    let n = alg.dim();
    if e.dim() != n {
        return Err(Error::AlgebraMismatch { left: n, right: e.dim() });
    }
    let one = alg.find_unit().ok_or(Error::NotUnital)?;
    if alg.mul_vecs(&e.coords, &e.coords) != e.coords {
        return Err(Error::NotIdempotent);
    }
    if e.is_zero() || *e == one {
        return Err(Error::TrivialIdempotent);
    }
    let f = sub_vec(&one.coords, &e.coords);
    let corner = |l: &[F], r: &[F]| -> Subspace<F> {
        let map = alg.left_mul_matrix(l).mul(&alg.right_mul_matrix(r));
        Subspace::full(n).image(&map).expect("square map")
    };
    let corners = [corner(&e.coords, &e.coords), corner(&e.coords, &f), corner(&f, &e.coords), corner(&f, &f)];
    let dims = [corners[0].dim(), corners[1].dim(), corners[2].dim(), corners[3].dim()];
    let columns: Vec<Vec<F>> = corners.iter().flat_map(|c| c.basis().to_vec()).collect();
    let change = Matrix::from_columns(n, &columns)?;
    let rebased = alg.change_basis(&change)?.with_labels(block_labels(&dims))?;
    let gma = Gma::from_algebra(rebased, dims)?;
    Ok((gma, change))
}

impl<F: Field> Gma<F> {
    /// Wraps an algebra whose basis is already ordered `[A, M, N, B]`,
    /// checking that every product obeys the 2×2 block rules.
    pub fn from_algebra(algebra: StructureConstants<F>, dims: [usize; 4]) -> Result<Self> {
        let total: usize = dims.iter().sum();
        if total != algebra.dim() {
            return Err(Error::DimensionMismatch { expected: algebra.dim(), found: total });
        }
        if dims[0] == 0 || dims[3] == 0 {
            return Err(Error::Shape("corner algebras A and B must be nonzero".into()));
        }
        let g = Gma { algebra, dims };
        for p in Block::ALL {
            for q in Block::ALL {
                for i in g.range(p) {
                    for j in g.range(q) {
                        for (k, _) in g.algebra.basis_product(i, j) {
                            let lands = g.block_of(*k);
                            if p.product(q) != Some(lands) {
                                return Err(Error::BlockStructure(format!(
                                    "product of basis {i} ({p}) and {j} ({q}) has a component in {lands}"
                                )));
                            }
                        }
                    }
                }
            }
        }
        Ok(g)
    }

    pub fn relabel(mut self, labels: Vec<String>) -> Result<Self> {
        self.algebra = self.algebra.with_labels(labels)?;
        Ok(self)
    }

    pub fn algebra(&self) -> &StructureConstants<F> {
        &self.algebra
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn block_dims(&self) -> [usize; 4] {
        self.dims
    }

    pub fn block_dim(&self, b: Block) -> usize {
        self.dims[b.index()]
    }

    pub fn offset(&self, b: Block) -> usize {
        offsets(&self.dims)[b.index()]
    }

    pub fn range(&self, b: Block) -> std::ops::Range<usize> {
        let o = self.offset(b);
        o..o + self.block_dim(b)
    }

    pub fn block_of(&self, index: usize) -> Block {
        *Block::ALL.iter().rev().find(|b| self.block_dim(**b) > 0 && index >= self.offset(**b)).expect("index in range")
    }

    /// Coordinates of the `b`-corner of `x`.
    pub fn project(&self, b: Block, x: &[F]) -> Vec<F> {
        x[self.range(b)].to_vec()
    }

    /// Places corner coordinates into a full element.
    pub fn embed(&self, b: Block, x: &[F]) -> Vec<F> {
        debug_assert_eq!(x.len(), self.block_dim(b));
        let mut out = vec![F::zero(); self.dim()];
        out[self.range(b)].clone_from_slice(x);
        out
    }

    pub fn basis_vector(&self, b: Block, i: usize) -> Vec<F> {
        unit_vector(self.dim(), self.offset(b) + i)
    }

    /// Product of two corner elements, projected to the block it lands in.
    pub fn corner_product(&self, x: (Block, &[F]), y: (Block, &[F])) -> Vec<F> {
        let target = x.0.product(y.0).expect("nonvanishing block product");
        let full = self.algebra.mul_vecs(&self.embed(x.0, x.1), &self.embed(y.0, y.1));
        self.project(target, &full)
    }

    pub fn unit(&self) -> Option<Element<F>> {
        self.algebra.find_unit()
    }

    pub fn is_unital(&self) -> bool {
        self.unit().is_some()
    }

    /// `e = diag(1_A, 0)` for a unital algebra.
    pub fn standard_idempotent(&self) -> Option<Element<F>> {
        let one = self.unit()?;
        Some(Element::new(self.embed(Block::A, &self.project(Block::A, &one.coords))))
    }

    /// The corner algebra `A` or `B` as a standalone algebra.
    pub fn corner_algebra(&self, b: Block) -> StructureConstants<F> {
        assert!(matches!(b, Block::A | Block::B), "only diagonal corners are algebras");
        let r = self.range(b);
        let d = r.len();
        let alg = StructureConstants::from_fn(d, |i, j| {
            let full = self.algebra.structure_constant(r.start + i, r.start + j);
            full[r.clone()].to_vec()
        })
        .expect("corner of an associative algebra is associative");
        alg.with_labels(self.algebra.labels()[r].to_vec()).expect("label count")
    }

    /// Recovers the Morita context from the assembled table.
    pub fn context(&self) -> MoritaContext<F> {
        let a = self.corner_algebra(Block::A);
        let b = self.corner_algebra(Block::B);
        let action = |x: Block, y: Block, i: usize, j: usize| -> Vec<F> {
            let full = self.algebra.structure_constant(self.offset(x) + i, self.offset(y) + j);
            self.project(x.product(y).expect("nonvanishing"), &full)
        };
        let [da, dm, dn, db] = self.dims;
        let tensor = |x: Block, y: Block, d1: usize, d2: usize| -> Vec<Vec<Vec<F>>> {
            (0..d1).map(|i| (0..d2).map(|j| action(x, y, i, j)).collect()).collect()
        };
        let m = Bimodule { dim: dm, left: tensor(Block::A, Block::M, da, dm), right: tensor(Block::M, Block::B, dm, db) };
        let n = Bimodule { dim: dn, left: tensor(Block::B, Block::N, db, dn), right: tensor(Block::N, Block::A, dn, da) };
        let zeta = tensor(Block::M, Block::N, dm, dn);
        let psi = tensor(Block::N, Block::M, dn, dm);
        MoritaContext { a, b, m, n, zeta, psi }
    }

    /// Block-diagonal change of basis inside each corner.
    pub fn rebase_blocks(&self, changes: [&Matrix<F>; 4]) -> Result<Self> {
        let n = self.dim();
        let mut p = Matrix::zeros(n, n);
        for b in Block::ALL {
            let c = changes[b.index()];
            if c.rows() != self.block_dim(b) || c.cols() != self.block_dim(b) {
                return Err(Error::Shape(format!("change of basis for block {b} has wrong size")));
            }
            p.set_block(self.offset(b), self.offset(b), c);
        }
        let alg = self.algebra.change_basis(&p)?.with_labels(block_labels(&self.dims))?;
        Gma::from_algebra(alg, self.dims)
    }

    /// Columns of `map` (a `dim × dim` matrix) belonging to block `b`.
    pub(crate) fn restrict_columns(&self, map: &Matrix<F>, b: Block) -> Matrix<F> {
        map.block(0, self.offset(b), map.rows(), self.block_dim(b))
    }
}

/// Kernels witnessing the annihilating conditions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnnihilatorReport<F: Field> {
    /// `{a ∈ A : aM = 0, Na = 0}` in `A`-coordinates.
    pub a_side: Subspace<F>,
    /// `{b ∈ B : Mb = 0, bN = 0}` in `B`-coordinates.
    pub b_side: Subspace<F>,
}

impl<F: Field> AnnihilatorReport<F> {
    pub fn a_holds(&self) -> bool {
        self.a_side.is_zero()
    }

    pub fn b_holds(&self) -> bool {
        self.b_side.is_zero()
    }

    pub fn holds(&self) -> bool {
        self.a_holds() && self.b_holds()
    }

    pub(crate) fn require(&self) -> Result<()> {
        if let Some(w) = self.a_side.basis().first() {
            return Err(Error::AnnihilatorConditionsFail { side: 'A', witness: fmt_vec(w) });
        }
        if let Some(w) = self.b_side.basis().first() {
            return Err(Error::AnnihilatorConditionsFail { side: 'B', witness: fmt_vec(w) });
        }
        Ok(())
    }
}

pub(crate) fn fmt_vec<F: Field>(v: &[F]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(", "))
}

pub fn check_annihilating_conditions<F: Field>(u: &Gma<F>) -> AnnihilatorReport<F> {
    let side = |x: Block, with_m: bool| -> Subspace<F> {
        let alg = u.algebra();
        let mut rows = Vec::new();
        for p in 0..u.block_dim(Block::M) {
            let m = u.basis_vector(Block::M, p);
            // a·m for x = A, m·b for x = B
            let map = if with_m { alg.right_mul_matrix(&m) } else { alg.left_mul_matrix(&m) };
            rows.extend(u.restrict_columns(&map, x).to_rows());
        }
        for q in 0..u.block_dim(Block::N) {
            let n = u.basis_vector(Block::N, q);
            let map = if with_m { alg.left_mul_matrix(&n) } else { alg.right_mul_matrix(&n) };
            rows.extend(u.restrict_columns(&map, x).to_rows());
        }
        let d = u.block_dim(x);
        if rows.is_empty() {
            return Subspace::full(d);
        }
        kernel(&Matrix::from_rows(d, rows).expect("rows have corner width"))
    };
    AnnihilatorReport { a_side: side(Block::A, true), b_side: side(Block::B, false) }
}

/// The center of a generalized matrix algebra together with its diagonal
/// projections.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CenterDescription<F: Field> {
    pub center: Subspace<F>,
    pub a_part: Subspace<F>,
    pub b_part: Subspace<F>,
}

pub(crate) fn require_unital_annihilating<F: Field>(u: &Gma<F>) -> Result<()> {
    if !u.is_unital() {
        return Err(Error::NotUnital);
    }
    check_annihilating_conditions(u).require()
}

pub fn center_block_description<F: Field>(u: &Gma<F>) -> Result<CenterDescription<F>> {
    require_unital_annihilating(u)?;
    let center = u.algebra().center();
    for (idx, z) in center.basis().iter().enumerate() {
        let off: Vec<F> = u.project(Block::M, z).into_iter().chain(u.project(Block::N, z)).collect();
        if !is_zero_vec(&off) {
            return Err(Error::OffDiagonalCenter { index: idx });
        }
    }
    let project_all = |b: Block| {
        let vs = center.basis().iter().map(|z| u.project(b, z)).collect();
        Subspace::span(u.block_dim(b), vs).expect("corner width")
    };
    let a_part = project_all(Block::A);
    let b_part = project_all(Block::B);
    Ok(CenterDescription { center, a_part, b_part })
}

/// `{diag(a, b) : am = mb, na = bn}` over basis `m`, `n`, computed from the
/// block constraints alone and embedded into the full algebra.
pub fn diagonal_commuting_elements<F: Field>(u: &Gma<F>) -> Subspace<F> {
    let (da, db) = (u.block_dim(Block::A), u.block_dim(Block::B));
    let unknowns = da + db;
    // unknown vector (a, b) ↦ element diag(a, b)
    let mut embed = Matrix::zeros(u.dim(), unknowns);
    for i in 0..da {
        embed[(u.offset(Block::A) + i, i)] = F::one();
    }
    for j in 0..db {
        embed[(u.offset(Block::B) + j, da + j)] = F::one();
    }
    let alg = u.algebra();
    let mut rows = Vec::new();
    for b in [Block::M, Block::N] {
        for p in 0..u.block_dim(b) {
            let x = u.basis_vector(b, p);
            // diag(a, b)·x − x·diag(a, b)
            let comm = alg.right_mul_matrix(&x).sub(&alg.left_mul_matrix(&x));
            rows.extend(comm.mul(&embed).to_rows());
        }
    }
    if rows.is_empty() {
        return Subspace::full(unknowns).image(&embed).expect("shape");
    }
    let k = kernel(&Matrix::from_rows(unknowns, rows).expect("width"));
    k.image(&embed).expect("shape")
}

/// The isomorphism `πA(Z(U)) → πB(Z(U))` with `am = mη(a)`, `na = η(a)n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Eta<F: Field> {
    pub domain: Subspace<F>,
    pub codomain: Subspace<F>,
    /// Pairs `(a, η(a))` from the center basis; the `a`s are independent.
    pub pairs: Vec<(Vec<F>, Vec<F>)>,
}

impl<F: Field> Eta<F> {
    fn solve_in(vectors: &[&Vec<F>], dim: usize, x: &[F]) -> Option<Vec<F>> {
        if vectors.is_empty() {
            return is_zero_vec(x).then(Vec::new);
        }
        let cols: Vec<Vec<F>> = vectors.iter().map(|v| (*v).clone()).collect();
        let m = Matrix::from_columns(dim, &cols).ok()?;
        solve(&m, x).ok()?.map(|s| s.particular)
    }

    /// `η(a)`, or `None` when `a ∉ πA(Z(U))`.
    pub fn apply(&self, a: &[F]) -> Option<Vec<F>> {
        let av: Vec<&Vec<F>> = self.pairs.iter().map(|p| &p.0).collect();
        let c = Self::solve_in(&av, self.domain.ambient_dim(), a)?;
        let bv: Vec<Vec<F>> = self.pairs.iter().map(|p| p.1.clone()).collect();
        Some(crate::linalg::combine(self.codomain.ambient_dim(), &c, &bv))
    }

    /// `η⁻¹(b)`, or `None` when `b ∉ πB(Z(U))`.
    pub fn apply_inverse(&self, b: &[F]) -> Option<Vec<F>> {
        let bv: Vec<&Vec<F>> = self.pairs.iter().map(|p| &p.1).collect();
        let c = Self::solve_in(&bv, self.codomain.ambient_dim(), b)?;
        let av: Vec<Vec<F>> = self.pairs.iter().map(|p| p.0.clone()).collect();
        Some(crate::linalg::combine(self.domain.ambient_dim(), &c, &av))
    }
}

/// Computes η and verifies that it is a multiplicative bijection intertwining
/// the bimodule actions.
pub fn eta_map<F: Field>(u: &Gma<F>) -> Result<Eta<F>> {
    let desc = center_block_description(u)?;
    let pairs: Vec<(Vec<F>, Vec<F>)> =
        desc.center.basis().iter().map(|z| (u.project(Block::A, z), u.project(Block::B, z))).collect();
    if desc.a_part.dim() != pairs.len() || desc.b_part.dim() != pairs.len() {
        return Err(Error::NonUniqueEta);
    }
    let eta = Eta { domain: desc.a_part, codomain: desc.b_part, pairs };
    verify_eta(u, &eta)?;
    Ok(eta)
}

fn verify_eta<F: Field>(u: &Gma<F>, eta: &Eta<F>) -> Result<()> {
    let violation = |s: String| Err(Error::TheoremViolation(format!("eta: {s}")));
    for (a, b) in &eta.pairs {
        for p in 0..u.block_dim(Block::M) {
            let m = unit_vector(u.block_dim(Block::M), p);
            if u.corner_product((Block::A, a), (Block::M, &m)) != u.corner_product((Block::M, &m), (Block::B, b)) {
                return violation(format!("am != m eta(a) for m{}", p + 1));
            }
        }
        for q in 0..u.block_dim(Block::N) {
            let n = unit_vector(u.block_dim(Block::N), q);
            if u.corner_product((Block::N, &n), (Block::A, a)) != u.corner_product((Block::B, b), (Block::N, &n)) {
                return violation(format!("na != eta(a) n for n{}", q + 1));
            }
        }
        for (a2, b2) in &eta.pairs {
            let prod = u.corner_product((Block::A, a), (Block::A, a2));
            let Some(image) = eta.apply(&prod) else {
                return violation("domain is not closed under multiplication".into());
            };
            if image != u.corner_product((Block::B, b), (Block::B, b2)) {
                return violation("not multiplicative".into());
            }
        }
    }
    if let Some(one) = u.unit() {
        let ia = u.project(Block::A, &one.coords);
        if eta.apply(&ia) != Some(u.project(Block::B, &one.coords)) {
            return violation("eta(1_A) != 1_B".into());
        }
    }
    Ok(())
}
