//! Solution spaces of functional identities and the block form of Lie triple
//! centralizers on generalized matrix algebras.
//!
//! Operators are unknown `dim × dim` matrices flattened column-major (see
//! [`LinearOperator::to_vec`]); every identity is linear in those unknowns,
//! so each solution space is the kernel of a stacked constraint system.

use std::fmt;
use std::str::FromStr;

use crate::algebra::{is_zero_vec, StructureConstants};
use crate::error::{Error, Result};
use crate::gma::{check_annihilating_conditions, Block, Gma};
use crate::linalg::{unit_vector, Matrix, RowReducer, Subspace};
use crate::operator::LinearOperator;
use crate::scalar::Field;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum IdentityKind {
    LieCentralizer,
    LieTripleCentralizer,
    JordanCentralizer,
    Derivation,
    LieDerivation,
    JordanDerivation,
    LieTripleDerivation,
    SingularJordanDerivation,
}

impl IdentityKind {
    pub const ALL: [IdentityKind; 8] = [
        IdentityKind::LieCentralizer,
        IdentityKind::LieTripleCentralizer,
        IdentityKind::JordanCentralizer,
        IdentityKind::Derivation,
        IdentityKind::LieDerivation,
        IdentityKind::JordanDerivation,
        IdentityKind::LieTripleDerivation,
        IdentityKind::SingularJordanDerivation,
    ];

    /// Short name used on the command line.
    pub fn code(self) -> &'static str {
        match self {
            IdentityKind::LieCentralizer => "lc",
            IdentityKind::LieTripleCentralizer => "ltc",
            IdentityKind::JordanCentralizer => "jc",
            IdentityKind::Derivation => "der",
            IdentityKind::LieDerivation => "lieder",
            IdentityKind::JordanDerivation => "jder",
            IdentityKind::LieTripleDerivation => "ltd",
            IdentityKind::SingularJordanDerivation => "sjder",
        }
    }

    pub fn is_centralizer(self) -> bool {
        matches!(
            self,
            IdentityKind::LieCentralizer | IdentityKind::LieTripleCentralizer | IdentityKind::JordanCentralizer
        )
    }

    pub fn arity(self) -> usize {
        self.template().product.arity()
    }

    fn template(self) -> Template {
        use IdentityKind::*;
        use Product::*;
        let (product, slots): (Product, &'static [usize]) = match self {
            LieCentralizer => (Bracket, &[0]),
            LieTripleCentralizer => (DoubleBracket, &[0]),
            JordanCentralizer => (Jordan, &[0]),
            Derivation => (Mul, &[0, 1]),
            LieDerivation => (Bracket, &[0, 1]),
            JordanDerivation | SingularJordanDerivation => (Jordan, &[0, 1]),
            LieTripleDerivation => (DoubleBracket, &[0, 1, 2]),
        };
        Template { product, slots }
    }
}

impl fmt::Display for IdentityKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

impl FromStr for IdentityKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        IdentityKind::ALL
            .into_iter()
            .find(|k| k.code() == s)
            .ok_or_else(|| Error::Parse(format!("unknown identity kind '{s}'")))
    }
}

#[derive(Clone, Copy, Debug)]
enum Product {
    Mul,
    Bracket,
    Jordan,
    DoubleBracket,
}

impl Product {
    fn arity(self) -> usize {
        match self {
            Product::DoubleBracket => 3,
            _ => 2,
        }
    }

    fn eval<F: Field>(self, alg: &StructureConstants<F>, args: &[&[F]]) -> Vec<F> {
        match self {
            Product::Mul => alg.mul_vecs(args[0], args[1]),
            Product::Bracket => alg.bracket_vecs(args[0], args[1]),
            Product::Jordan => alg.jordan_vecs(args[0], args[1]),
            Product::DoubleBracket => alg.double_bracket_vecs(args[0], args[1], args[2]),
        }
    }
}

/// `φ(f(x₁,…)) = Σ_{p ∈ slots} f(x₁,…,φ(x_p),…)`.
#[derive(Clone, Copy, Debug)]
struct Template {
    product: Product,
    slots: &'static [usize],
}

/// `f` evaluated on every basis tuple, indexed in base `dim` with the first
/// argument most significant.
struct ProductTable<F> {
    dim: usize,
    arity: usize,
    values: Vec<Vec<F>>,
}

impl<F: Field> ProductTable<F> {
    fn new(alg: &StructureConstants<F>, product: Product) -> Self {
        let n = alg.dim();
        let pairs = |f: &dyn Fn(usize, usize) -> Vec<F>| -> Vec<Vec<F>> {
            (0..n * n).map(|t| f(t / n, t % n)).collect()
        };
        let values = match product {
            Product::Mul => pairs(&|i, j| alg.structure_constant(i, j)),
            Product::Bracket | Product::DoubleBracket => {
                let br = pairs(&|i, j| {
                    crate::algebra::sub_vec(&alg.structure_constant(i, j), &alg.structure_constant(j, i))
                });
                if matches!(product, Product::Bracket) {
                    br
                } else {
                    let mut out = Vec::with_capacity(n * n * n);
                    for ij in &br {
                        for k in 0..n {
                            let mut v = vec![F::zero(); n];
                            for (l, c) in ij.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                                for (r, x) in br[l * n + k].iter().enumerate().filter(|(_, x)| !x.is_zero()) {
                                    v[r] = v[r].clone() + c.clone() * x.clone();
                                }
                            }
                            out.push(v);
                        }
                    }
                    out
                }
            }
            Product::Jordan => pairs(&|i, j| {
                crate::algebra::add_vec(&alg.structure_constant(i, j), &alg.structure_constant(j, i))
            }),
        };
        ProductTable { dim: n, arity: product.arity(), values }
    }

    fn len(&self) -> usize {
        self.values.len()
    }

    fn digits(&self, t: usize) -> Vec<usize> {
        let mut d = vec![0; self.arity];
        let mut rest = t;
        for p in (0..self.arity).rev() {
            d[p] = rest % self.dim;
            rest /= self.dim;
        }
        d
    }

    fn replace(&self, t: usize, digits: &[usize], p: usize, s: usize) -> usize {
        let place = self.dim.pow((self.arity - 1 - p) as u32);
        t - digits[p] * place + s * place
    }
}

/// Pushes the constraint rows of `template` over all basis tuples. Returns
/// early once the system has full rank.
fn push_template_rows<F: Field>(r: &mut RowReducer<F>, table: &ProductTable<F>, slots: &[usize]) {
    let n = table.dim;
    for t in 0..table.len() {
        let digits = table.digits(t);
        for row_coord in 0..n {
            let mut row = Vec::new();
            for (l, w) in table.values[t].iter().enumerate() {
                if !w.is_zero() {
                    row.push((l * n + row_coord, w.clone()));
                }
            }
            for &p in slots {
                for s in 0..n {
                    let v = &table.values[table.replace(t, &digits, p, s)][row_coord];
                    if !v.is_zero() {
                        row.push((digits[p] * n + s, -v.clone()));
                    }
                }
            }
            r.push(row);
        }
        if r.is_full_rank() {
            return;
        }
    }
}

/// Anything that carries structure constants and possibly a block structure.
pub trait AlgebraView<F: Field> {
    fn structure(&self) -> &StructureConstants<F>;

    fn as_gma(&self) -> Option<&Gma<F>> {
        None
    }
}

impl<F: Field> AlgebraView<F> for StructureConstants<F> {
    fn structure(&self) -> &StructureConstants<F> {
        self
    }
}

impl<F: Field> AlgebraView<F> for Gma<F> {
    fn structure(&self) -> &StructureConstants<F> {
        self.algebra()
    }

    fn as_gma(&self) -> Option<&Gma<F>> {
        Some(self)
    }
}

/// Singular Jordan derivations may only map `M → N` and `N → M`.
fn singular_support<F: Field>(u: &Gma<F>, from: usize, to: usize) -> bool {
    matches!((u.block_of(from), u.block_of(to)), (Block::M, Block::N) | (Block::N, Block::M))
}

/// The space of all operators satisfying `kind`, as a subspace of the
/// `dim²`-dimensional operator space (column-major flattening).
pub fn solve_identity_space<F: Field, V: AlgebraView<F> + ?Sized>(x: &V, kind: IdentityKind) -> Result<Subspace<F>> {
    let alg = x.structure();
    let n = alg.dim();
    let mut r = RowReducer::new(n * n);
    if kind == IdentityKind::SingularJordanDerivation {
        let u = x.as_gma().ok_or(Error::NotGma)?;
        for l in 0..n {
            for to in 0..n {
                if !singular_support(u, l, to) {
                    r.push(vec![(l * n + to, F::one())]);
                }
            }
        }
    }
    let t = kind.template();
    push_template_rows(&mut r, &ProductTable::new(alg, t.product), t.slots);
    Ok(r.kernel())
}

/// Lie triple centralizers in the middle-slot form `φ([[a,b],c]) = [[a,φ(b)],c]`.
pub fn solve_ltc_middle_form<F: Field>(alg: &StructureConstants<F>) -> Subspace<F> {
    let n = alg.dim();
    let mut r = RowReducer::new(n * n);
    push_template_rows(&mut r, &ProductTable::new(alg, Product::DoubleBracket), &[1]);
    r.kernel()
}

/// A basis tuple on which an identity fails, with both sides.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityWitness<F> {
    pub tuple: Vec<usize>,
    pub lhs: Vec<F>,
    pub rhs: Vec<F>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Membership<F> {
    pub witness: Option<IdentityWitness<F>>,
}

impl<F> Membership<F> {
    pub fn holds(&self) -> bool {
        self.witness.is_none()
    }
}

fn check_operator<F: Field>(alg: &StructureConstants<F>, phi: &LinearOperator<F>) -> Result<()> {
    if phi.dim() != alg.dim() {
        return Err(Error::DimensionMismatch { expected: alg.dim(), found: phi.dim() });
    }
    Ok(())
}

/// Both sides of the identity on arbitrary arguments: `φ(f(args))` and
/// `Σ f(args with φ applied in each slot)`.
pub fn identity_residual<F: Field>(
    alg: &StructureConstants<F>,
    kind: IdentityKind,
    phi: &LinearOperator<F>,
    args: &[Vec<F>],
) -> Result<(Vec<F>, Vec<F>)> {
    check_operator(alg, phi)?;
    let t = kind.template();
    if args.len() != t.product.arity() {
        return Err(Error::Shape(format!("{kind} takes {} arguments", t.product.arity())));
    }
    if let Some(bad) = args.iter().find(|a| a.len() != alg.dim()) {
        return Err(Error::AlgebraMismatch { left: alg.dim(), right: bad.len() });
    }
    let refs: Vec<&[F]> = args.iter().map(|a| a.as_slice()).collect();
    let lhs = phi.apply(&t.product.eval(alg, &refs));
    let mut rhs = vec![F::zero(); alg.dim()];
    for &p in t.slots {
        let moved = phi.apply(&args[p]);
        let mut r = refs.clone();
        r[p] = &moved;
        rhs = crate::algebra::add_vec(&rhs, &t.product.eval(alg, &r));
    }
    Ok((lhs, rhs))
}

/// Evaluates the identity on every basis tuple by direct element
/// arithmetic, independently of the constraint generator, and reports the
/// first failure in lexicographic order.
pub fn is_identity_member<F: Field, V: AlgebraView<F> + ?Sized>(
    x: &V,
    kind: IdentityKind,
    phi: &LinearOperator<F>,
) -> Result<Membership<F>> {
    let alg = x.structure();
    check_operator(alg, phi)?;
    let n = alg.dim();
    if kind == IdentityKind::SingularJordanDerivation {
        let u = x.as_gma().ok_or(Error::NotGma)?;
        for l in 0..n {
            let image = phi.image_of_basis(l);
            let allowed: Vec<F> =
                image.iter().enumerate().map(|(r, v)| if singular_support(u, l, r) { v.clone() } else { F::zero() }).collect();
            if allowed != image {
                return Ok(Membership { witness: Some(IdentityWitness { tuple: vec![l], lhs: image, rhs: allowed }) });
            }
        }
    }
    let arity = kind.arity();
    let total = n.pow(arity as u32);
    for t in 0..total {
        let mut tuple = vec![0; arity];
        let mut rest = t;
        for p in (0..arity).rev() {
            tuple[p] = rest % n;
            rest /= n;
        }
        let args: Vec<Vec<F>> = tuple.iter().map(|&i| unit_vector(n, i)).collect();
        let (lhs, rhs) = identity_residual(alg, kind, phi, &args)?;
        if lhs != rhs {
            return Ok(Membership { witness: Some(IdentityWitness { tuple, lhs, rhs }) });
        }
    }
    Ok(Membership { witness: None })
}

/// The six component maps of a Lie triple centralizer in block form.
///
/// Each matrix maps corner coordinates to corner coordinates (columns are
/// images of corner basis vectors).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CornerMaps<F: Field> {
    pub a_to_a: Matrix<F>,
    pub b_to_a: Matrix<F>,
    pub m_to_m: Matrix<F>,
    pub n_to_n: Matrix<F>,
    pub a_to_b: Matrix<F>,
    pub b_to_b: Matrix<F>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Comp {
    AtoA,
    BtoA,
    MtoM,
    NtoN,
    AtoB,
    BtoB,
}

impl Comp {
    const ALL: [Comp; 6] = [Comp::AtoA, Comp::BtoA, Comp::MtoM, Comp::NtoN, Comp::AtoB, Comp::BtoB];

    fn ends(self) -> (Block, Block) {
        match self {
            Comp::AtoA => (Block::A, Block::A),
            Comp::BtoA => (Block::B, Block::A),
            Comp::MtoM => (Block::M, Block::M),
            Comp::NtoN => (Block::N, Block::N),
            Comp::AtoB => (Block::A, Block::B),
            Comp::BtoB => (Block::B, Block::B),
        }
    }
}

impl<F: Field> CornerMaps<F> {
    pub fn zero(u: &Gma<F>) -> Self {
        let z = |c: Comp| {
            let (from, to) = c.ends();
            Matrix::zeros(u.block_dim(to), u.block_dim(from))
        };
        CornerMaps {
            a_to_a: z(Comp::AtoA),
            b_to_a: z(Comp::BtoA),
            m_to_m: z(Comp::MtoM),
            n_to_n: z(Comp::NtoN),
            a_to_b: z(Comp::AtoB),
            b_to_b: z(Comp::BtoB),
        }
    }

    /// `(id, 0, id, id, 0, id)`.
    pub fn identity(u: &Gma<F>) -> Self {
        let mut c = Self::zero(u);
        c.a_to_a = Matrix::identity(u.block_dim(Block::A));
        c.m_to_m = Matrix::identity(u.block_dim(Block::M));
        c.n_to_n = Matrix::identity(u.block_dim(Block::N));
        c.b_to_b = Matrix::identity(u.block_dim(Block::B));
        c
    }

    fn get(&self, c: Comp) -> &Matrix<F> {
        match c {
            Comp::AtoA => &self.a_to_a,
            Comp::BtoA => &self.b_to_a,
            Comp::MtoM => &self.m_to_m,
            Comp::NtoN => &self.n_to_n,
            Comp::AtoB => &self.a_to_b,
            Comp::BtoB => &self.b_to_b,
        }
    }

    fn get_mut(&mut self, c: Comp) -> &mut Matrix<F> {
        match c {
            Comp::AtoA => &mut self.a_to_a,
            Comp::BtoA => &mut self.b_to_a,
            Comp::MtoM => &mut self.m_to_m,
            Comp::NtoN => &mut self.n_to_n,
            Comp::AtoB => &mut self.a_to_b,
            Comp::BtoB => &mut self.b_to_b,
        }
    }

    /// Number of scalar unknowns in a component tuple on `u`.
    pub fn unknowns(u: &Gma<F>) -> usize {
        Comp::ALL.iter().map(|c| comp_size(u, *c)).sum()
    }

    /// Flattens the six maps in the order α₁, β₁, τ₂, γ₃, α₄, β₄, each
    /// column-major.
    pub fn to_vec(&self) -> Vec<F> {
        let mut out = Vec::new();
        for c in Comp::ALL {
            let m = self.get(c);
            for j in 0..m.cols() {
                out.extend(m.column(j));
            }
        }
        out
    }

    pub fn from_vec(u: &Gma<F>, v: &[F]) -> Result<Self> {
        let k = Self::unknowns(u);
        if v.len() != k {
            return Err(Error::DimensionMismatch { expected: k, found: v.len() });
        }
        let mut out = Self::zero(u);
        let mut pos = 0;
        for c in Comp::ALL {
            let m = out.get_mut(c);
            for j in 0..m.cols() {
                for r in 0..m.rows() {
                    m[(r, j)] = v[pos].clone();
                    pos += 1;
                }
            }
        }
        Ok(out)
    }

    fn check_shapes(&self, u: &Gma<F>) -> Result<()> {
        for c in Comp::ALL {
            let (from, to) = c.ends();
            let m = self.get(c);
            if m.rows() != u.block_dim(to) || m.cols() != u.block_dim(from) {
                return Err(Error::Shape(format!(
                    "{from}->{to} component must be {}x{}, got {}x{}",
                    u.block_dim(to),
                    u.block_dim(from),
                    m.rows(),
                    m.cols()
                )));
            }
        }
        Ok(())
    }
}

fn comp_size<F: Field>(u: &Gma<F>, c: Comp) -> usize {
    let (from, to) = c.ends();
    u.block_dim(from) * u.block_dim(to)
}

/// Assembles `φ(diag(a,b) + [0 m; n 0]) = [α₁(a)+β₁(b), τ₂(m); γ₃(n), α₄(a)+β₄(b)]`.
pub fn build_from_blocks<F: Field>(u: &Gma<F>, c: &CornerMaps<F>) -> Result<LinearOperator<F>> {
    c.check_shapes(u)?;
    let n = u.dim();
    let mut m = Matrix::zeros(n, n);
    for comp in Comp::ALL {
        let (from, to) = comp.ends();
        m.set_block(u.offset(to), u.offset(from), c.get(comp));
    }
    LinearOperator::new(m)
}

/// All sixteen corner maps of an operator; `corner(from, to)` is
/// `π_to ∘ φ ∘ ι_from`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockDecomposition<F: Field> {
    dims: [usize; 4],
    corners: Vec<Matrix<F>>,
}

impl<F: Field> BlockDecomposition<F> {
    pub fn corner(&self, from: Block, to: Block) -> &Matrix<F> {
        &self.corners[from.index() * 4 + to.index()]
    }

    /// Conventional name of a corner map: α, β, τ, γ by source block and
    /// 1–4 by target block `A, M, N, B`.
    pub fn symbol(from: Block, to: Block) -> String {
        let greek = match from {
            Block::A => "alpha",
            Block::B => "beta",
            Block::M => "tau",
            Block::N => "gamma",
        };
        format!("{greek}{}", to.index() + 1)
    }

    pub fn components(&self) -> CornerMaps<F> {
        CornerMaps {
            a_to_a: self.corner(Block::A, Block::A).clone(),
            b_to_a: self.corner(Block::B, Block::A).clone(),
            m_to_m: self.corner(Block::M, Block::M).clone(),
            n_to_n: self.corner(Block::N, Block::N).clone(),
            a_to_b: self.corner(Block::A, Block::B).clone(),
            b_to_b: self.corner(Block::B, Block::B).clone(),
        }
    }

    /// The ten corners that must vanish for a Lie triple centralizer.
    pub fn off_form_corners() -> Vec<(Block, Block)> {
        let keep = Comp::ALL.map(|c| c.ends());
        let mut out = Vec::new();
        for from in Block::ALL {
            for to in Block::ALL {
                if !keep.contains(&(from, to)) {
                    out.push((from, to));
                }
            }
        }
        out
    }

    pub fn reassemble(&self) -> LinearOperator<F> {
        let n: usize = self.dims.iter().sum();
        let offs = [0, self.dims[0], self.dims[0] + self.dims[1], self.dims[0] + self.dims[1] + self.dims[2]];
        let mut m = Matrix::zeros(n, n);
        for from in Block::ALL {
            for to in Block::ALL {
                m.set_block(offs[to.index()], offs[from.index()], self.corner(from, to));
            }
        }
        LinearOperator::new(m).expect("square")
    }
}

pub fn block_decompose<F: Field>(u: &Gma<F>, phi: &LinearOperator<F>) -> Result<BlockDecomposition<F>> {
    check_operator(u.algebra(), phi)?;
    let mut corners = Vec::with_capacity(16);
    for from in Block::ALL {
        for to in Block::ALL {
            corners.push(phi.matrix().block(u.offset(to), u.offset(from), u.block_dim(to), u.block_dim(from)));
        }
    }
    Ok(BlockDecomposition { dims: u.block_dims(), corners })
}

/// One named condition with its verdict.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConditionCheck {
    pub name: String,
    pub holds: bool,
    pub witness: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConditionReport {
    pub checks: Vec<ConditionCheck>,
}

impl ConditionReport {
    pub fn holds(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }

    pub fn failures(&self) -> impl Iterator<Item = &ConditionCheck> {
        self.checks.iter().filter(|c| !c.holds)
    }

    fn record(&mut self, name: &str, ok: bool, witness: impl FnOnce() -> String) {
        match self.checks.iter_mut().find(|c| c.name == name) {
            Some(c) => {
                if c.holds && !ok {
                    c.holds = false;
                    c.witness = Some(witness());
                }
            }
            None => self.checks.push(ConditionCheck {
                name: name.to_string(),
                holds: ok,
                witness: (!ok).then(witness),
            }),
        }
    }
}

enum Mode<'a, F: Field> {
    Concrete(&'a CornerMaps<F>),
    Symbolic { offsets: [usize; 6], unknowns: usize },
}

/// Evaluates the block-form conditions. A value is a `dim(U) × k` matrix:
/// `k = 1` for concrete component maps, `k = #unknowns` when the components
/// are symbolic, in which case each residual row is a linear constraint.
struct BlockConditions<'a, F: Field> {
    u: &'a Gma<F>,
    mode: Mode<'a, F>,
    ad: Vec<Matrix<F>>,
    left: Vec<Matrix<F>>,
    right: Vec<Matrix<F>>,
}

impl<'a, F: Field> BlockConditions<'a, F> {
    fn new(u: &'a Gma<F>, mode: Mode<'a, F>) -> Self {
        let n = u.dim();
        let alg = u.algebra();
        let left: Vec<Matrix<F>> = (0..n).map(|i| alg.left_mul_matrix(&unit_vector(n, i))).collect();
        let right: Vec<Matrix<F>> = (0..n).map(|i| alg.right_mul_matrix(&unit_vector(n, i))).collect();
        let ad = left.iter().zip(&right).map(|(l, r)| r.sub(l)).collect();
        BlockConditions { u, mode, ad, left, right }
    }

    fn width(&self) -> usize {
        match &self.mode {
            Mode::Concrete(_) => 1,
            Mode::Symbolic { unknowns, .. } => *unknowns,
        }
    }

    fn zero(&self) -> Matrix<F> {
        Matrix::zeros(self.u.dim(), self.width())
    }

    fn g(&self, b: Block, i: usize) -> usize {
        self.u.offset(b) + i
    }

    /// Component `c` applied to the corner vector `x`, placed in `U`.
    fn apply(&self, c: Comp, x: &[F]) -> Matrix<F> {
        let (_, to) = c.ends();
        let mut out = self.zero();
        match &self.mode {
            Mode::Concrete(maps) => {
                let y = maps.get(c).mul_vec(x);
                for (r, v) in y.into_iter().enumerate() {
                    out[(self.u.offset(to) + r, 0)] = v;
                }
            }
            Mode::Symbolic { offsets, .. } => {
                let dt = self.u.block_dim(to);
                let base = offsets[Comp::ALL.iter().position(|x| *x == c).expect("known component")];
                for (l, xl) in x.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                    for r in 0..dt {
                        out[(self.u.offset(to) + r, base + l * dt + r)] = xl.clone();
                    }
                }
            }
        }
        out
    }

    fn apply_basis(&self, c: Comp, i: usize) -> Matrix<F> {
        let (from, _) = c.ends();
        self.apply(c, &unit_vector(self.u.block_dim(from), i))
    }

    /// `[[v, e_y], e_z]` for global basis indices `y`, `z`.
    fn dbl(&self, v: &Matrix<F>, y: usize, z: usize) -> Matrix<F> {
        self.ad[z].mul(&self.ad[y].mul(v))
    }

    /// Projection of `[[e_x, e_y], e_z]` onto block `b`.
    fn dbl_basis(&self, b: Block, x: usize, y: usize, z: usize) -> Vec<F> {
        let n = self.u.dim();
        let w = self.u.algebra().double_bracket_vecs(&unit_vector(n, x), &unit_vector(n, y), &unit_vector(n, z));
        self.u.project(b, &w)
    }

    /// Projection of `e_x · e_y` onto block `b`.
    fn prod_basis(&self, b: Block, x: usize, y: usize) -> Vec<F> {
        let n = self.u.dim();
        self.u.project(b, &self.u.algebra().mul_vecs(&unit_vector(n, x), &unit_vector(n, y)))
    }

    fn run(&self, emit: &mut dyn FnMut(&str, Matrix<F>, &dyn Fn() -> String)) {
        let u = self.u;
        let (da, dm, dn, db) = (
            u.block_dim(Block::A),
            u.block_dim(Block::M),
            u.block_dim(Block::N),
            u.block_dim(Block::B),
        );
        let ga = |i| self.g(Block::A, i);
        let gb = |i| self.g(Block::B, i);
        let gm = |i| self.g(Block::M, i);
        let gn = |i| self.g(Block::N, i);
        let labels = u.algebra().labels();
        let lab = |g: usize| labels[g].clone();

        // (i) and (ii): Lie triple centralizer parts on the diagonal corners
        for (blk, comp, name, kill, kname) in [
            (Block::A, Comp::AtoA, "alpha1 is a Lie triple centralizer of A", Comp::AtoB, "alpha4([[a1, a2], a3]) = 0"),
            (Block::B, Comp::BtoB, "beta4 is a Lie triple centralizer of B", Comp::BtoA, "beta1([[b1, b2], b3]) = 0"),
        ] {
            let d = u.block_dim(blk);
            for i in 0..d {
                for j in 0..d {
                    for k in 0..d {
                        let (x, y, z) = (self.g(blk, i), self.g(blk, j), self.g(blk, k));
                        let w = self.dbl_basis(blk, x, y, z);
                        let wit = || format!("({}, {}, {})", lab(x), lab(y), lab(z));
                        let res = self.apply(comp, &w).sub(&self.dbl(&self.apply_basis(comp, i), y, z));
                        emit(name, res, &wit);
                        emit(kname, self.apply(kill, &w), &wit);
                    }
                }
            }
        }
        // [[alpha4(a), b1], b2] = 0 and [[beta1(b), a1], a2] = 0
        for (src, dst, comp, name) in [
            (Block::A, Block::B, Comp::AtoB, "[[alpha4(a), b1], b2] = 0"),
            (Block::B, Block::A, Comp::BtoA, "[[beta1(b), a1], a2] = 0"),
        ] {
            for i in 0..u.block_dim(src) {
                let v = self.apply_basis(comp, i);
                for j in 0..u.block_dim(dst) {
                    for k in 0..u.block_dim(dst) {
                        let (y, z) = (self.g(dst, j), self.g(dst, k));
                        let wit = || format!("({}, {}, {})", lab(self.g(src, i)), lab(y), lab(z));
                        emit(name, self.dbl(&v, y, z), &wit);
                    }
                }
            }
        }
        // range in the commutant of [A, A] (resp. [B, B])
        for (src, dst, comp, name) in [
            (Block::B, Block::A, Comp::BtoA, "beta1(b) commutes with [A, A]"),
            (Block::A, Block::B, Comp::AtoB, "alpha4(a) commutes with [B, B]"),
        ] {
            for i in 0..u.block_dim(src) {
                let v = self.apply_basis(comp, i);
                for j in 0..u.block_dim(dst) {
                    for k in 0..u.block_dim(dst) {
                        let (y, z) = (self.g(dst, j), self.g(dst, k));
                        // [v, c] with c = yz − zy: R_c = R_z R_y − R_y R_z, L_c = L_y L_z − L_z L_y
                        let r_c = self.right[z].mul(&self.right[y]).sub(&self.right[y].mul(&self.right[z]));
                        let l_c = self.left[y].mul(&self.left[z]).sub(&self.left[z].mul(&self.left[y]));
                        let res = r_c.sub(&l_c).mul(&v);
                        let wit = || format!("({}, {}, {})", lab(self.g(src, i)), lab(y), lab(z));
                        emit(name, res, &wit);
                    }
                }
            }
        }
        // pairings: m ∈ M, n ∈ N
        for p in 0..dm {
            for q in 0..dn {
                let (m, n) = (gm(p), gn(q));
                let wit = || format!("({}, {})", lab(m), lab(n));
                let tau_m = self.apply_basis(Comp::MtoM, p);
                let gamma_n = self.apply_basis(Comp::NtoN, q);
                let mn = self.prod_basis(Block::A, m, n);
                let nm = self.prod_basis(Block::B, n, m);
                let tau_m_n = self.right[n].mul(&tau_m);
                let m_gamma_n = self.left[m].mul(&gamma_n);
                let lhs = self.apply(Comp::AtoA, &mn).sub(&self.apply(Comp::BtoA, &nm));
                emit("alpha1(mn) - beta1(nm) = tau2(m)n", lhs.sub(&tau_m_n), &wit);
                emit("tau2(m)n = m gamma3(n)", tau_m_n.sub(&m_gamma_n), &wit);
                let n_tau_m = self.left[n].mul(&tau_m);
                let gamma_n_m = self.right[m].mul(&gamma_n);
                let lhs = self.apply(Comp::BtoB, &nm).sub(&self.apply(Comp::AtoB, &mn));
                emit("beta4(nm) - alpha4(mn) = n tau2(m)", lhs.sub(&n_tau_m), &wit);
                emit("n tau2(m) = gamma3(n)m", n_tau_m.sub(&gamma_n_m), &wit);
            }
        }
        // (iii) and (iv)
        for p in 0..dm {
            let m = gm(p);
            let tau_m = self.apply_basis(Comp::MtoM, p);
            for i in 0..da {
                let a = ga(i);
                let wit = || format!("({}, {})", lab(a), lab(m));
                let lhs = self.apply(Comp::MtoM, &self.prod_basis(Block::M, a, m));
                let mid = self.left[a].mul(&tau_m);
                let rhs = self.right[m]
                    .mul(&self.apply_basis(Comp::AtoA, i))
                    .sub(&self.left[m].mul(&self.apply_basis(Comp::AtoB, i)));
                emit("tau2(am) = a tau2(m)", lhs.sub(&mid), &wit);
                emit("a tau2(m) = alpha1(a)m - m alpha4(a)", mid.sub(&rhs), &wit);
            }
            for j in 0..db {
                let b = gb(j);
                let wit = || format!("({}, {})", lab(m), lab(b));
                let lhs = self.apply(Comp::MtoM, &self.prod_basis(Block::M, m, b));
                let mid = self.right[b].mul(&tau_m);
                let rhs = self.left[m]
                    .mul(&self.apply_basis(Comp::BtoB, j))
                    .sub(&self.right[m].mul(&self.apply_basis(Comp::BtoA, j)));
                emit("tau2(mb) = tau2(m)b", lhs.sub(&mid), &wit);
                emit("tau2(m)b = m beta4(b) - beta1(b)m", mid.sub(&rhs), &wit);
            }
        }
        for q in 0..dn {
            let n = gn(q);
            let gamma_n = self.apply_basis(Comp::NtoN, q);
            for i in 0..da {
                let a = ga(i);
                let wit = || format!("({}, {})", lab(n), lab(a));
                let lhs = self.apply(Comp::NtoN, &self.prod_basis(Block::N, n, a));
                let mid = self.right[a].mul(&gamma_n);
                let rhs = self.left[n]
                    .mul(&self.apply_basis(Comp::AtoA, i))
                    .sub(&self.right[n].mul(&self.apply_basis(Comp::AtoB, i)));
                emit("gamma3(na) = gamma3(n)a", lhs.sub(&mid), &wit);
                emit("gamma3(n)a = n alpha1(a) - alpha4(a)n", mid.sub(&rhs), &wit);
            }
            for j in 0..db {
                let b = gb(j);
                let wit = || format!("({}, {})", lab(b), lab(n));
                let lhs = self.apply(Comp::NtoN, &self.prod_basis(Block::N, b, n));
                let mid = self.left[b].mul(&gamma_n);
                let rhs = self.right[n]
                    .mul(&self.apply_basis(Comp::BtoB, j))
                    .sub(&self.left[n].mul(&self.apply_basis(Comp::BtoA, j)));
                emit("gamma3(bn) = b gamma3(n)", lhs.sub(&mid), &wit);
                emit("b gamma3(n) = beta4(b)n - n beta1(b)", mid.sub(&rhs), &wit);
            }
        }
    }
}

fn require_unital<F: Field>(u: &Gma<F>) -> Result<()> {
    if u.is_unital() {
        Ok(())
    } else {
        Err(Error::NotUnital)
    }
}

/// Checks an operator's block decomposition against the block-form
/// characterization: ten vanishing corners plus the component conditions.
pub fn verify_thm31_conditions<F: Field>(u: &Gma<F>, d: &BlockDecomposition<F>) -> Result<ConditionReport> {
    require_unital(u)?;
    if d.dims != u.block_dims() {
        return Err(Error::Shape("decomposition was taken on a different block structure".into()));
    }
    let mut report = ConditionReport { checks: Vec::new() };
    for (from, to) in BlockDecomposition::<F>::off_form_corners() {
        let c = d.corner(from, to);
        let name = format!("{} = 0", BlockDecomposition::<F>::symbol(from, to));
        report.record(&name, c.is_zero(), || format!("{c:?}"));
    }
    let comps = d.components();
    let cond = BlockConditions::new(u, Mode::Concrete(&comps));
    cond.run(&mut |name, res, wit| report.record(name, res.is_zero(), || format!("{} gives {:?}", wit(), res.column(0))));
    Ok(report)
}

/// Component tuples `(α₁, β₁, τ₂, γ₃, α₄, β₄)` satisfying every block-form
/// condition, as a subspace in the [`CornerMaps::to_vec`] layout.
pub fn component_space<F: Field>(u: &Gma<F>) -> Result<Subspace<F>> {
    require_unital(u)?;
    let mut offsets = [0; 6];
    let mut acc = 0;
    for (slot, c) in Comp::ALL.iter().enumerate() {
        offsets[slot] = acc;
        acc += comp_size(u, *c);
    }
    let cond = BlockConditions::new(u, Mode::Symbolic { offsets, unknowns: acc });
    let mut r = RowReducer::new(acc);
    cond.run(&mut |_, res, _| {
        for row in res.to_rows() {
            if !is_zero_vec(&row) {
                r.push_dense(&row);
            }
        }
    });
    Ok(r.kernel())
}

/// Under the annihilating conditions: `α₄(A) ⊆ Z(B)` and `β₁(B) ⊆ Z(A)`.
pub fn corollary32_strengthen<F: Field>(u: &Gma<F>, d: &BlockDecomposition<F>) -> Result<ConditionReport> {
    require_unital(u)?;
    check_annihilating_conditions(u).require()?;
    let mut report = ConditionReport { checks: Vec::new() };
    for (from, to, name) in [
        (Block::A, Block::B, "range(alpha4) lies in Z(B)"),
        (Block::B, Block::A, "range(beta1) lies in Z(A)"),
    ] {
        let center = u.corner_algebra(to).center();
        let m = d.corner(from, to);
        let bad = (0..m.cols()).map(|j| m.column(j)).find(|v| !center.contains_vector(v));
        report.record(name, bad.is_none(), || format!("{:?}", bad.clone().unwrap_or_default()));
    }
    Ok(report)
}
