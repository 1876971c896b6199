//! Deciding properness of Lie triple centralizers.
//!
//! A Lie triple centralizer φ is proper when `φ(x) = λx + χ(x)` for some
//! central `λ` and some linear `χ` into the center that kills every double
//! commutator. Two deciders are offered: the block-form criterion on unital
//! generalized matrix algebras with the annihilating conditions, and a direct
//! feasibility solve that works on any algebra.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{is_zero_vec, sub_vec, StructureConstants};
use crate::centralizers::{
    block_decompose, is_identity_member, solve_identity_space, BlockDecomposition, ConditionCheck, ConditionReport,
    IdentityKind,
};
use crate::error::{Error, Result};
use crate::gma::{center_block_description, eta_map, fmt_vec, require_unital_annihilating, Block, Eta, Gma};
use crate::linalg::{combine, solve, unit_vector, Matrix, Subspace};
use crate::operator::LinearOperator;
use crate::scalar::Field;

/// A pair `(λ, χ)` exhibiting properness, with the checks it passed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PropernessCertificate<F: Field> {
    pub lambda: Vec<F>,
    pub chi: LinearOperator<F>,
    /// `ᾱ(a) = α₁(a) − η⁻¹(α₄(a))` as an `A → A` matrix; only on the block route.
    pub alpha_bar: Option<Matrix<F>>,
    /// `β̄(b) = β₄(b) − η(β₁(b))` as a `B → B` matrix; only on the block route.
    pub beta_bar: Option<Matrix<F>>,
    pub transcript: ConditionReport,
}

/// Failure of the unit criterion: `α₄(1_A) ∉ πB(Z)` (side `A`) or
/// `β₁(1_B) ∉ πA(Z)` (side `B`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PropernessFailure<F: Field> {
    pub side: Block,
    pub witness: Vec<F>,
    pub subspace: Subspace<F>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ProperVerdict<F: Field> {
    Proper(PropernessCertificate<F>),
    NotProper(PropernessFailure<F>),
}

impl<F: Field> ProperVerdict<F> {
    pub fn is_proper(&self) -> bool {
        matches!(self, ProperVerdict::Proper(_))
    }

    pub fn certificate(&self) -> Option<&PropernessCertificate<F>> {
        match self {
            ProperVerdict::Proper(c) => Some(c),
            ProperVerdict::NotProper(_) => None,
        }
    }
}

/// Why the direct system has no solution.
///
/// `witness`, when present, is an element `x` with `φ(x) ∉ Z + Z·x`. No
/// proper map can send such an `x` there, since `λx + χ(x)` always lies in
/// `Z·x + Z`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Infeasibility<F: Field> {
    pub witness: Option<(Vec<F>, Vec<F>)>,
    pub center: Subspace<F>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DirectVerdict<F: Field> {
    Proper(PropernessCertificate<F>),
    Infeasible(Infeasibility<F>),
}

impl<F: Field> DirectVerdict<F> {
    pub fn is_proper(&self) -> bool {
        matches!(self, DirectVerdict::Proper(_))
    }

    pub fn certificate(&self) -> Option<&PropernessCertificate<F>> {
        match self {
            DirectVerdict::Proper(c) => Some(c),
            DirectVerdict::Infeasible(_) => None,
        }
    }
}

fn require_ltc<F: Field>(alg: &StructureConstants<F>, phi: &LinearOperator<F>) -> Result<()> {
    let m = is_identity_member(alg, IdentityKind::LieTripleCentralizer, phi)?;
    match m.witness {
        None => Ok(()),
        Some(w) => Err(Error::NotLtc(format!(
            "identity fails on basis triple {:?}: {} != {}",
            w.tuple,
            fmt_vec(&w.lhs),
            fmt_vec(&w.rhs)
        ))),
    }
}

fn all_basis_triples(n: usize) -> impl Iterator<Item = (usize, usize, usize)> {
    (0..n).flat_map(move |i| (0..n).flat_map(move |j| (0..n).map(move |k| (i, j, k))))
}

/// Re-verifies a candidate `(λ, χ)` against every defining property.
pub fn verify_certificate<F: Field>(
    alg: &StructureConstants<F>,
    phi: &LinearOperator<F>,
    lambda: &[F],
    chi: &LinearOperator<F>,
) -> ConditionReport {
    let n = alg.dim();
    let center = alg.center();
    let mut checks = Vec::new();
    let mut push = |name: &str, bad: Option<String>| {
        checks.push(ConditionCheck { name: name.to_string(), holds: bad.is_none(), witness: bad });
    };
    push("lambda is central", (!center.contains_vector(lambda)).then(|| fmt_vec(lambda)));
    let off_center = (0..n).find(|&j| !center.contains_vector(&chi.image_of_basis(j)));
    push("chi maps into the center", off_center.map(|j| format!("chi(e{})", j + 1)));
    let mismatch = (0..n).find(|&j| {
        let e = unit_vector(n, j);
        let rhs = crate::algebra::add_vec(&alg.mul_vecs(lambda, &e), &chi.apply(&e));
        phi.image_of_basis(j) != rhs
    });
    push("phi(x) = lambda x + chi(x) on every basis x", mismatch.map(|j| format!("x = e{}", j + 1)));
    let unit = |i| unit_vector::<F>(n, i);
    let nonzero = all_basis_triples(n).find(|&(i, j, k)| {
        let w = alg.double_bracket_vecs(&unit(i), &unit(j), &unit(k));
        !is_zero_vec(&w) && !is_zero_vec(&chi.apply(&w))
    });
    push("chi vanishes on every basis double commutator", nonzero.map(|t| format!("triple {t:?}")));
    ConditionReport { checks }
}

fn finish<F: Field>(
    alg: &StructureConstants<F>,
    phi: &LinearOperator<F>,
    lambda: Vec<F>,
    chi: LinearOperator<F>,
    alpha_bar: Option<Matrix<F>>,
    beta_bar: Option<Matrix<F>>,
    extra: Vec<ConditionCheck>,
) -> Result<PropernessCertificate<F>> {
    let mut transcript = verify_certificate(alg, phi, &lambda, &chi);
    transcript.checks.extend(extra);
    if let Some(bad) = transcript.failures().next() {
        return Err(Error::TheoremViolation(format!("constructed certificate fails: {}", bad.name)));
    }
    Ok(PropernessCertificate { lambda, chi, alpha_bar, beta_bar, transcript })
}

/// `x` with `φ(x) ∉ Z + Z·x` is an obstruction to properness.
pub fn is_range_obstruction<F: Field>(alg: &StructureConstants<F>, phi: &LinearOperator<F>, x: &[F]) -> bool {
    let center = alg.center();
    let zx: Vec<Vec<F>> = center.basis().iter().map(|z| alg.mul_vecs(z, x)).collect();
    let reach = center.sum(&Subspace::span(alg.dim(), zx).expect("algebra width")).expect("same ambient");
    !reach.contains_vector(&phi.apply(x))
}

/// Direct feasibility: find central `λ` so that `χ = φ − λ·` maps into the
/// center and kills the double-commutator span.
pub fn is_proper_direct<F: Field>(alg: &StructureConstants<F>, phi: &LinearOperator<F>) -> Result<DirectVerdict<F>> {
    is_proper_direct_with_probes(alg, phi, &[])
}

/// As [`is_proper_direct`]; on infeasibility the `probes` are tried as
/// obstruction witnesses before the basis vectors.
pub fn is_proper_direct_with_probes<F: Field>(
    alg: &StructureConstants<F>,
    phi: &LinearOperator<F>,
    probes: &[Vec<F>],
) -> Result<DirectVerdict<F>> {
    require_ltc(alg, phi)?;
    let n = alg.dim();
    let center = alg.center();
    let k = center.dim();
    let constraint = center.constraint_matrix();
    let span = alg.double_commutator_span();
    let mut rows: Vec<Vec<F>> = Vec::new();
    let mut rhs: Vec<F> = Vec::new();
    // range: C·(φ(eⱼ) − λeⱼ) = 0
    for j in 0..n {
        let e = unit_vector(n, j);
        let prods: Vec<Vec<F>> = center.basis().iter().map(|z| constraint.mul_vec(&alg.mul_vecs(z, &e))).collect();
        let target = constraint.mul_vec(&phi.image_of_basis(j));
        for r in 0..constraint.rows() {
            rows.push(prods.iter().map(|p| p[r].clone()).collect());
            rhs.push(target[r].clone());
        }
    }
    // vanishing: λw = φ(w) on the double-commutator span
    for w in span.basis() {
        let prods: Vec<Vec<F>> = center.basis().iter().map(|z| alg.mul_vecs(z, w)).collect();
        let target = phi.apply(w);
        for r in 0..n {
            rows.push(prods.iter().map(|p| p[r].clone()).collect());
            rhs.push(target[r].clone());
        }
    }
    let solution = if rows.is_empty() {
        Some(Vec::new())
    } else {
        solve(&Matrix::from_rows(k, rows)?, &rhs)?.map(|s| s.particular)
    };
    match solution {
        Some(c) => {
            let lambda = combine(n, &c, center.basis());
            let chi = LinearOperator::new(phi.matrix().sub(&alg.left_mul_matrix(&lambda)))?;
            Ok(DirectVerdict::Proper(finish(alg, phi, lambda, chi, None, None, Vec::new())?))
        }
        None => {
            let candidates = probes.iter().cloned().chain((0..n).map(|j| unit_vector(n, j)));
            let witness = candidates.map(|x| (phi.apply(&x), x)).find(|(_, x)| is_range_obstruction(alg, phi, x));
            Ok(DirectVerdict::Infeasible(Infeasibility { witness: witness.map(|(y, x)| (x, y)), center }))
        }
    }
}

struct BlockData<F: Field> {
    d: BlockDecomposition<F>,
    a_part: Subspace<F>,
    b_part: Subspace<F>,
    eta: Eta<F>,
    one_a: Vec<F>,
    one_b: Vec<F>,
}

fn block_data<F: Field>(u: &Gma<F>, phi: &LinearOperator<F>) -> Result<BlockData<F>> {
    require_unital_annihilating(u)?;
    require_ltc(u.algebra(), phi)?;
    let d = block_decompose(u, phi)?;
    let desc = center_block_description(u)?;
    let eta = eta_map(u)?;
    let one = u.unit().ok_or(Error::NotUnital)?;
    Ok(BlockData {
        d,
        a_part: desc.a_part,
        b_part: desc.b_part,
        eta,
        one_a: u.project(Block::A, &one.coords),
        one_b: u.project(Block::B, &one.coords),
    })
}

impl<F: Field> BlockData<F> {
    fn alpha4(&self) -> &Matrix<F> {
        self.d.corner(Block::A, Block::B)
    }

    fn beta1(&self) -> &Matrix<F> {
        self.d.corner(Block::B, Block::A)
    }

    /// Criterion at the units: `α₄(1_A) ∈ πB(Z)` and `β₁(1_B) ∈ πA(Z)`.
    fn unit_failure(&self) -> Option<PropernessFailure<F>> {
        let a4 = self.alpha4().mul_vec(&self.one_a);
        if !self.b_part.contains_vector(&a4) {
            return Some(PropernessFailure { side: Block::A, witness: a4, subspace: self.b_part.clone() });
        }
        let b1 = self.beta1().mul_vec(&self.one_b);
        if !self.a_part.contains_vector(&b1) {
            return Some(PropernessFailure { side: Block::B, witness: b1, subspace: self.a_part.clone() });
        }
        None
    }

    /// Criterion on ranges: `α₄(A) ⊆ πB(Z)` and `β₁(B) ⊆ πA(Z)`.
    fn ranges_hold(&self) -> bool {
        let a4 = self.alpha4();
        let b1 = self.beta1();
        (0..a4.cols()).all(|j| self.b_part.contains_vector(&a4.column(j)))
            && (0..b1.cols()).all(|j| self.a_part.contains_vector(&b1.column(j)))
    }
}

/// The block-form decider on a unital generalized matrix algebra with the
/// annihilating conditions.
///
/// Tests the unit criterion; on success builds `λ = diag(ᾱ(1_A), β̄(1_B))`
/// and `χ(diag(a, b) + off) = diag(η⁻¹(α₄(a)) + β₁(b), α₄(a) + η(β₁(b)))`, then
/// verifies the certificate exhaustively. A certificate that fails to verify
/// after the criterion passed is reported as [`Error::TheoremViolation`].
pub fn is_proper_thm33<F: Field>(u: &Gma<F>, phi: &LinearOperator<F>) -> Result<ProperVerdict<F>> {
    let data = block_data(u, phi)?;
    if let Some(f) = data.unit_failure() {
        return Ok(ProperVerdict::NotProper(f));
    }
    if !data.ranges_hold() {
        return Err(Error::TheoremViolation("unit criterion holds but the range criterion fails".into()));
    }
    let (da, db) = (u.block_dim(Block::A), u.block_dim(Block::B));
    let eta_inv = |b: &[F]| data.eta.apply_inverse(b).expect("range criterion checked");
    let eta = |a: &[F]| data.eta.apply(a).expect("range criterion checked");
    let a1 = data.d.corner(Block::A, Block::A);
    let b4 = data.d.corner(Block::B, Block::B);
    let alpha_bar_cols: Vec<Vec<F>> = (0..da)
        .map(|i| {
            let e = unit_vector(da, i);
            sub_vec(&a1.mul_vec(&e), &eta_inv(&data.alpha4().mul_vec(&e)))
        })
        .collect();
    let beta_bar_cols: Vec<Vec<F>> = (0..db)
        .map(|j| {
            let e = unit_vector(db, j);
            sub_vec(&b4.mul_vec(&e), &eta(&data.beta1().mul_vec(&e)))
        })
        .collect();
    let alpha_bar = Matrix::from_columns(da, &alpha_bar_cols)?;
    let beta_bar = Matrix::from_columns(db, &beta_bar_cols)?;
    let a0 = alpha_bar.mul_vec(&data.one_a);
    let b0 = beta_bar.mul_vec(&data.one_b);
    let lambda = crate::algebra::add_vec(&u.embed(Block::A, &a0), &u.embed(Block::B, &b0));

    let n = u.dim();
    let mut images = vec![vec![F::zero(); n]; n];
    for i in 0..da {
        let a4 = data.alpha4().mul_vec(&unit_vector(da, i));
        images[u.offset(Block::A) + i] =
            crate::algebra::add_vec(&u.embed(Block::A, &eta_inv(&a4)), &u.embed(Block::B, &a4));
    }
    for j in 0..db {
        let b1 = data.beta1().mul_vec(&unit_vector(db, j));
        images[u.offset(Block::B) + j] = crate::algebra::add_vec(&u.embed(Block::A, &b1), &u.embed(Block::B, &eta(&b1)));
    }
    let chi = LinearOperator::from_images(n, &images)?;

    let eta_a0 = data.eta.apply(&a0);
    let extra = vec![ConditionCheck {
        name: "eta(alpha_bar(1_A)) = beta_bar(1_B)".into(),
        holds: eta_a0.as_deref() == Some(&b0[..]),
        witness: (eta_a0.as_deref() != Some(&b0[..])).then(|| fmt_vec(&a0)),
    }];
    let cert = finish(u.algebra(), phi, lambda, chi, Some(alpha_bar), Some(beta_bar), extra)?;
    Ok(ProperVerdict::Proper(cert))
}

/// Uses the block-form decider when its hypotheses hold and the direct solve
/// otherwise. Returns the certificate, or `None` when φ is not proper.
pub fn decompose_proper<F: Field>(u: &Gma<F>, phi: &LinearOperator<F>) -> Result<Option<PropernessCertificate<F>>> {
    if require_unital_annihilating(u).is_ok() {
        Ok(is_proper_thm33(u, phi)?.certificate().cloned())
    } else {
        Ok(is_proper_direct(u.algebra(), phi)?.certificate().cloned())
    }
}

/// One side of the sufficient condition: a center projection equals the
/// corner center, or the corner is spanned by its double commutators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SideReport {
    pub center_projection_full: bool,
    pub double_commutators_span: bool,
}

impl SideReport {
    pub fn holds(&self) -> bool {
        self.center_projection_full || self.double_commutators_span
    }
}

/// Side `(i)`: `πB(Z) = Z(B)` or `[[A,A],A] = A`. Side `(ii)`:
/// `πA(Z) = Z(A)` or `[[B,B],B] = B`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cor36Report {
    pub side_i: SideReport,
    pub side_ii: SideReport,
}

impl Cor36Report {
    /// When true every Lie triple centralizer of the algebra is proper.
    pub fn holds(&self) -> bool {
        self.side_i.holds() && self.side_ii.holds()
    }
}

pub fn check_cor36_hypotheses<F: Field>(u: &Gma<F>) -> Result<Cor36Report> {
    let desc = center_block_description(u)?;
    let a = u.corner_algebra(Block::A);
    let b = u.corner_algebra(Block::B);
    Ok(Cor36Report {
        side_i: SideReport {
            center_projection_full: desc.b_part.equals(&b.center())?,
            double_commutators_span: a.double_commutator_span().is_full(),
        },
        side_ii: SideReport {
            center_projection_full: desc.a_part.equals(&a.center())?,
            double_commutators_span: b.double_commutator_span().is_full(),
        },
    })
}

/// Three properness verdicts for one operator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdicts {
    pub direct: bool,
    pub ranges: bool,
    pub units: bool,
}

impl Verdicts {
    pub fn agree(&self) -> bool {
        self.direct == self.ranges && self.ranges == self.units
    }
}

pub fn properness_verdicts<F: Field>(u: &Gma<F>, phi: &LinearOperator<F>) -> Result<Verdicts> {
    let data = block_data(u, phi)?;
    Ok(Verdicts {
        direct: is_proper_direct(u.algebra(), phi)?.is_proper(),
        ranges: data.ranges_hold(),
        units: data.unit_failure().is_none(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivalenceReport {
    pub tested: usize,
    pub proper: usize,
    /// Descriptions of operators on which the verdicts disagree.
    pub disagreements: Vec<String>,
}

impl EquivalenceReport {
    pub fn consistent(&self) -> bool {
        self.disagreements.is_empty()
    }

    pub fn improper_found(&self) -> bool {
        self.proper < self.tested
    }
}

/// Compares the three verdicts on every basis element of the solved space and
/// on `samples` random integer combinations of it.
pub fn equivalence_audit<F: Field>(u: &Gma<F>, samples: usize, seed: u64) -> Result<EquivalenceReport> {
    let ltc = solve_identity_space(u, IdentityKind::LieTripleCentralizer)?;
    let n = u.dim();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut ops: Vec<(String, Vec<F>)> =
        ltc.basis().iter().enumerate().map(|(i, b)| (format!("basis {i}"), b.clone())).collect();
    for s in 0..samples {
        let coeffs: Vec<F> = (0..ltc.dim()).map(|_| F::from_int(rng.gen_range(-5..=5))).collect();
        ops.push((format!("sample {s}"), combine(n * n, &coeffs, ltc.basis())));
    }
    let mut report = EquivalenceReport { tested: 0, proper: 0, disagreements: Vec::new() };
    for (name, v) in ops {
        let phi = LinearOperator::from_vec(n, &v)?;
        let verdicts = properness_verdicts(u, &phi)?;
        let thm33 = match is_proper_thm33(u, &phi) {
            Ok(v) => Some(v.is_proper()),
            Err(Error::TheoremViolation(_)) => None,
            Err(e) => return Err(e),
        };
        report.tested += 1;
        if verdicts.direct {
            report.proper += 1;
        }
        if !verdicts.agree() || thm33 != Some(verdicts.units) {
            report.disagreements.push(format!("{name}: {verdicts:?}, block route {thm33:?}"));
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use num_rational::BigRational;

    type Q = BigRational;

    #[test]
    fn identity_on_m2_is_proper_with_zero_chi() {
        let m2 = catalog::full_matrix::<Q>(2).gma.unwrap();
        let id = LinearOperator::identity(4);
        let cert = is_proper_thm33(&m2, &id).unwrap();
        let cert = cert.certificate().unwrap();
        assert_eq!(cert.lambda, m2.unit().unwrap().coords);
        assert!(cert.chi.is_zero());
        assert!(cert.transcript.holds());
    }

    #[test]
    fn non_ltc_is_rejected() {
        let m2 = catalog::full_matrix::<Q>(2).gma.unwrap();
        let mut m = Matrix::zeros(4, 4);
        m[(0, 1)] = Q::from_int(1);
        let phi = LinearOperator::new(m).unwrap();
        assert!(matches!(is_proper_thm33(&m2, &phi), Err(Error::NotLtc(_))));
        assert!(matches!(is_proper_direct(m2.algebra(), &phi), Err(Error::NotLtc(_))));
    }

    #[test]
    fn zero_is_proper_everywhere() {
        let ex = catalog::example_1_2::<Q>();
        let z = LinearOperator::zero(12);
        let v = is_proper_direct(ex.gma.algebra(), &z).unwrap();
        let cert = v.certificate().unwrap();
        assert!(is_zero_vec(&cert.lambda) && cert.chi.is_zero());
    }
}
