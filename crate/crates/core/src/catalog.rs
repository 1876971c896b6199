//! Named algebras: the nilpotent example with a non-proper Lie triple
//! centralizer, matrix-unit algebras `Tₙ` and `Mₙ`, small hand-built
//! contexts, and seeded random Morita contexts.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{Element, StructureConstants};
use crate::error::{Error, Result};
use crate::gma::{assemble, m2_of, peirce_from_idempotent, Bimodule, Gma, MoritaContext};
use crate::linalg::{unit_vector, Matrix, Subspace};
use crate::operator::LinearOperator;
use crate::scalar::Field;

/// A catalog algebra, with its block structure when it has one.
#[derive(Clone, Debug)]
pub struct CatalogAlgebra<F: Field> {
    pub name: String,
    pub algebra: StructureConstants<F>,
    pub gma: Option<Gma<F>>,
}

impl<F: Field> CatalogAlgebra<F> {
    fn from_gma(name: impl Into<String>, gma: Gma<F>) -> Self {
        CatalogAlgebra { name: name.into(), algebra: gma.algebra().clone(), gma: Some(gma) }
    }
}

fn one_dim<F: Field>(label: &str) -> StructureConstants<F> {
    StructureConstants::new(1, vec![vec![vec![F::one()]]])
        .and_then(|a| a.with_labels(vec![label.to_string()]))
        .expect("the ground field is associative")
}

/// The ground field as a one-dimensional algebra.
pub fn rationals<F: Field>() -> StructureConstants<F> {
    one_dim("1")
}

/// `ℚ × ℚ` with basis of the two orthogonal idempotents.
pub fn split_pair<F: Field>() -> StructureConstants<F> {
    rationals::<F>().direct_sum(&rationals()).and_then(|a| a.with_labels(vec!["p1".into(), "p2".into()])).expect("labels")
}

/// `ℚ[x]/(x²)` with basis `[1, x]`.
pub fn dual_numbers<F: Field>() -> StructureConstants<F> {
    StructureConstants::from_fn(2, |i, j| if i + j < 2 { unit_vector(2, i + j) } else { vec![F::zero(); 2] })
        .and_then(|a| a.with_labels(vec!["1".into(), "x".into()]))
        .expect("dual numbers are associative")
}

/// Strictly upper triangular 3×3 matrices; basis `u1 = E12`, `u2 = E23`,
/// `u3 = E13` with `u1·u2 = u3` the only nonzero product.
pub fn example_1_2_base<F: Field>() -> StructureConstants<F> {
    StructureConstants::from_fn(3, |i, j| if (i, j) == (0, 1) { unit_vector(3, 2) } else { vec![F::zero(); 3] })
        .and_then(|a| a.with_labels(vec!["u1".into(), "u2".into(), "u3".into()]))
        .expect("nilpotent algebra is associative")
}

/// `M₂(A)` over the nilpotent algebra, with the swap map and the elements
/// used to show it is a Lie triple centralizer that is neither a Lie
/// centralizer nor proper. Encoded over the rationals: every structure
/// constant and witness is rational.
#[derive(Clone, Debug)]
pub struct Example12<F: Field> {
    pub gma: Gma<F>,
    /// `[a m; n b] ↦ [b 0; 0 a]`.
    pub phi: LinearOperator<F>,
    /// `diag(u1 + u2, 2u1 + u2)`.
    pub a0: Vec<F>,
    /// `diag(u1 + u2, u1 + 2u2)`.
    pub b0: Vec<F>,
    /// `φ(A₀) = diag(2u1 + u2, u1 + u2)`; the forced value of `χ(A₀)`.
    pub chi_a0: Vec<F>,
    /// `M₂(C)` with `C = span{u3}`.
    pub expected_center: Subspace<F>,
}

pub fn example_1_2<F: Field>() -> Example12<F> {
    let gma = m2_of(&example_1_2_base::<F>());
    let n = gma.dim();
    // blocks of dim 3 in the order 11, 12, 21, 22
    let at = |block: usize, coords: [i64; 3]| -> Vec<F> {
        let mut v = vec![F::zero(); n];
        for (k, c) in coords.into_iter().enumerate() {
            v[3 * block + k] = F::from_int(c);
        }
        v
    };
    let add = crate::algebra::add_vec::<F>;
    let images: Vec<Vec<F>> = (0..n)
        .map(|j| match j / 3 {
            0 => unit_vector(n, 9 + j % 3),
            3 => unit_vector(n, j % 3),
            _ => vec![F::zero(); n],
        })
        .collect();
    let phi = LinearOperator::from_images(n, &images).expect("square");
    let a0 = add(&at(0, [1, 1, 0]), &at(3, [2, 1, 0]));
    let b0 = add(&at(0, [1, 1, 0]), &at(3, [1, 2, 0]));
    let chi_a0 = add(&at(0, [2, 1, 0]), &at(3, [1, 1, 0]));
    let expected_center = Subspace::span(n, (0..4).map(|b| unit_vector(n, 3 * b + 2)).collect()).expect("ambient");
    Example12 { gma, phi, a0, b0, chi_a0, expected_center }
}

/// Matrix units `E_ij` (all of them, or only `i ≤ j`) ordered as the blocks
/// `[E11 | E1j | Ei1 | rest]`, so that `n ≥ 2` splits as a generalized
/// matrix algebra with `A = ℚE11`.
fn matrix_units<F: Field>(n: usize, upper: bool) -> CatalogAlgebra<F> {
    assert!(n >= 1, "matrix size must be positive");
    let mut units = vec![(0, 0)];
    units.extend((1..n).map(|j| (0, j)));
    if !upper {
        units.extend((1..n).map(|i| (i, 0)));
    }
    for i in 1..n {
        for j in 1..n {
            if !upper || i <= j {
                units.push((i, j));
            }
        }
    }
    let d = units.len();
    let pos = |u: (usize, usize)| units.iter().position(|x| *x == u);
    let alg = StructureConstants::from_fn(d, |a, b| {
        let ((i, j), (k, l)) = (units[a], units[b]);
        if j == k {
            unit_vector(d, pos((i, l)).expect("closed under products"))
        } else {
            vec![F::zero(); d]
        }
    })
    .and_then(|a| a.with_labels(units.iter().map(|(i, j)| format!("e{}{}", i + 1, j + 1)).collect()))
    .expect("matrix units multiply associatively");
    let kind = if upper { "upper_triangular" } else { "full_matrix" };
    let name = format!("{kind}({n})");
    if n == 1 {
        return CatalogAlgebra { name, algebra: alg, gma: None };
    }
    let dims = if upper { [1, n - 1, 0, d - n] } else { [1, n - 1, n - 1, (n - 1) * (n - 1)] };
    let gma = Gma::from_algebra(alg.clone(), dims).expect("matrix units respect the block rules");
    CatalogAlgebra { name, algebra: alg, gma: Some(gma) }
}

/// `Tₙ(ℚ)`, upper triangular matrices.
pub fn upper_triangular<F: Field>(n: usize) -> CatalogAlgebra<F> {
    matrix_units(n, true)
}

/// `Mₙ(ℚ)`.
pub fn full_matrix<F: Field>(n: usize) -> CatalogAlgebra<F> {
    matrix_units(n, false)
}

/// Triangular algebra `[A M; 0 B]`.
pub fn tri<F: Field>(a: &StructureConstants<F>, m: &Bimodule<F>, b: &StructureConstants<F>) -> Result<Gma<F>> {
    assemble(&MoritaContext::triangular(a.clone(), m.clone(), b.clone()))
}

/// `M₂(A)`.
pub fn m2<F: Field>(a: &StructureConstants<F>) -> Gma<F> {
    m2_of(a)
}

/// `Tri(ℚ[x]/(x²), ℚ, ℚ)` where `x` acts on `M = ℚ` as zero, so the
/// annihilating condition fails at `a = x`.
pub fn dual_numbers_on_line<F: Field>() -> Gma<F> {
    let m = Bimodule {
        dim: 1,
        left: vec![vec![vec![F::one()]], vec![vec![F::zero()]]],
        right: vec![vec![vec![F::one()]]],
    };
    tri(&dual_numbers(), &m, &rationals()).expect("valid triangular context")
}

/// `Tri(ℚ[x]/(x²), ℚ[x]/(x²), ℚ)`: `A` acts on `M = A` by multiplication,
/// `B = ℚ` by scalars. Here `πA(Z) = ℚ·1 ≠ Z(A) = A`.
pub fn dual_numbers_faithful<F: Field>() -> Gma<F> {
    let a = dual_numbers::<F>();
    let m = Bimodule { dim: 2, left: a.table(), right: vec![vec![unit_vector(2, 0)], vec![unit_vector(2, 1)]] };
    tri(&a, &m, &rationals()).expect("valid triangular context")
}

/// `Tri(ℚ, ℚ², ℚ × ℚ)` with `B` acting diagonally (the incidence algebra of
/// `1 < 2, 1 < 3`), together with a Lie triple centralizer that is not
/// proper: `α₄(a) = (a, 0)`, `β₄(b₁, b₂) = (−b₁, 0)`, `τ₂(m₁, m₂) = (−m₁, 0)`.
pub fn improper_incidence<F: Field>() -> (Gma<F>, LinearOperator<F>) {
    let m = Bimodule {
        dim: 2,
        left: vec![vec![unit_vector(2, 0), unit_vector(2, 1)]],
        right: vec![vec![unit_vector(2, 0), vec![F::zero(); 2]], vec![vec![F::zero(); 2], unit_vector(2, 1)]],
    };
    let g = tri(&rationals(), &m, &split_pair()).expect("valid triangular context");
    // basis [a, m1, m2, b1, b2]
    let neg = |i: usize| unit_vector::<F>(5, i).into_iter().map(|x| -x).collect::<Vec<F>>();
    let zero = vec![F::zero(); 5];
    let images = vec![unit_vector(5, 3), neg(1), zero.clone(), neg(3), zero];
    (g, LinearOperator::from_images(5, &images).expect("square"))
}

/// Incidence algebra of a preorder on `points`: basis `E_ij` for `i ≤ j`.
pub fn incidence_algebra<F: Field>(points: usize, le: &dyn Fn(usize, usize) -> bool) -> Result<StructureConstants<F>> {
    let pairs: Vec<(usize, usize)> =
        (0..points).flat_map(|i| (0..points).map(move |j| (i, j))).filter(|&(i, j)| le(i, j)).collect();
    if (0..points).any(|i| !le(i, i)) {
        return Err(Error::Shape("incidence relation must be reflexive".into()));
    }
    let d = pairs.len();
    let mut missing = false;
    let alg = StructureConstants::from_fn(d, |a, b| {
        let ((i, j), (k, l)) = (pairs[a], pairs[b]);
        if j != k {
            return vec![F::zero(); d];
        }
        match pairs.iter().position(|p| *p == (i, l)) {
            Some(p) => unit_vector(d, p),
            None => {
                missing = true;
                vec![F::zero(); d]
            }
        }
    });
    if missing {
        return Err(Error::Shape("incidence relation must be transitive".into()));
    }
    alg?.with_labels(pairs.iter().map(|(i, j)| format!("e{}{}", i + 1, j + 1)).collect())
}

fn random_invertible<F: Field>(rng: &mut ChaCha8Rng, d: usize) -> Matrix<F> {
    loop {
        let rows: Vec<Vec<F>> = (0..d).map(|_| (0..d).map(|_| F::from_int(rng.gen_range(-2..=2))).collect()).collect();
        let m = Matrix::from_rows(d, rows).expect("square");
        if m.rank() == d {
            return m;
        }
    }
}

/// Rebases every corner of `g` by a random invertible integer matrix.
pub fn randomize_basis<F: Field>(g: &Gma<F>, rng: &mut ChaCha8Rng) -> Gma<F> {
    let [a, m, n, b] = g.block_dims().map(|d| random_invertible(rng, d));
    g.rebase_blocks([&a, &m, &n, &b]).expect("block-diagonal change of basis preserves the block rules")
}

/// At least `count` (for `count ≥ 6`) associativity-valid Morita contexts
/// with every corner of dimension at most 2, in randomized corner bases.
///
/// Six come from `M₂(R)` and `T₂(R)` for `R ∈ {ℚ, ℚ × ℚ, ℚ[x]/(x²)}`; the
/// rest are Peirce decompositions of incidence algebras of random preorders
/// on two to four points.
pub fn random_contexts<F: Field>(seed: u64, count: usize) -> Vec<(String, Gma<F>)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for (rname, r) in [("Q", rationals::<F>()), ("QxQ", split_pair()), ("Q[x]/(x^2)", dual_numbers())] {
        let reg = Bimodule::regular(&r);
        out.push((format!("M2({rname})"), m2_of(&r)));
        out.push((format!("T2({rname})"), tri(&r, &reg, &r).expect("T2 of an algebra is associative")));
    }
    let mut attempts = 0;
    while out.len() < count && attempts < 10_000 {
        attempts += 1;
        let points = rng.gen_range(2..=4);
        let mut rel = vec![vec![false; points]; points];
        for (i, row) in rel.iter_mut().enumerate() {
            for (j, x) in row.iter_mut().enumerate() {
                *x = i == j || rng.gen_bool(0.35);
            }
        }
        for k in 0..points {
            for i in 0..points {
                for j in 0..points {
                    if rel[i][k] && rel[k][j] {
                        rel[i][j] = true;
                    }
                }
            }
        }
        let alg = incidence_algebra::<F>(points, &|i, j| rel[i][j]).expect("closure is a preorder");
        let mut idx: Vec<usize> = (0..points).collect();
        idx.shuffle(&mut rng);
        let take = rng.gen_range(1..points);
        let mut e = vec![F::zero(); alg.dim()];
        for &p in &idx[..take] {
            let pos = alg.labels().iter().position(|l| *l == format!("e{}{}", p + 1, p + 1)).expect("diagonal unit");
            e[pos] = F::one();
        }
        let Ok((g, _)) = peirce_from_idempotent(&alg, &Element::new(e)) else {
            continue;
        };
        if g.block_dims().iter().any(|&d| d > 2) {
            continue;
        }
        let mut related: Vec<String> = Vec::new();
        for (i, row) in rel.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                if *x && i != j {
                    related.push(format!("{}<={}", i + 1, j + 1));
                }
            }
        }
        let mut corner: Vec<usize> = idx[..take].iter().map(|p| p + 1).collect();
        corner.sort();
        out.push((format!("incidence({points}; {}; e={corner:?})", related.join(",")), g));
    }
    out.into_iter().enumerate().map(|(i, (name, g))| (format!("#{i} {name}"), randomize_basis(&g, &mut rng))).collect()
}

/// Unital catalog algebras with a block structure, used by the audits.
pub fn unital_gmas<F: Field>() -> Vec<(String, Gma<F>)> {
    let mut out: Vec<(String, Gma<F>)> = Vec::new();
    for n in [2, 3] {
        out.push((format!("upper_triangular({n})"), upper_triangular(n).gma.expect("n >= 2")));
        out.push((format!("full_matrix({n})"), full_matrix(n).gma.expect("n >= 2")));
    }
    out.push(("dual_numbers_faithful".into(), dual_numbers_faithful()));
    out.push(("improper_incidence".into(), improper_incidence().0));
    out
}

/// Resolves a catalog name such as `upper_triangular(3)` or `example_1_2`.
pub fn lookup<F: Field>(name: &str) -> Result<CatalogAlgebra<F>> {
    let sized = |prefix: &str| -> Option<Result<usize>> {
        let rest = name.strip_prefix(prefix)?.strip_prefix('(')?.strip_suffix(')')?;
        Some(match rest.trim().parse::<usize>() {
            Ok(n) if n >= 1 => Ok(n),
            _ => Err(Error::Parse(format!("bad size in '{name}'"))),
        })
    };
    if let Some(n) = sized("upper_triangular") {
        return Ok(upper_triangular(n?));
    }
    if let Some(n) = sized("full_matrix") {
        return Ok(full_matrix(n?));
    }
    match name {
        "example_1_2" => Ok(CatalogAlgebra::from_gma(name, example_1_2().gma)),
        "dual_numbers_on_line" => Ok(CatalogAlgebra::from_gma(name, dual_numbers_on_line())),
        "dual_numbers_faithful" => Ok(CatalogAlgebra::from_gma(name, dual_numbers_faithful())),
        "improper_incidence" => Ok(CatalogAlgebra::from_gma(name, improper_incidence().0)),
        "rationals" => Ok(CatalogAlgebra { name: name.into(), algebra: rationals(), gma: None }),
        "dual_numbers" => Ok(CatalogAlgebra { name: name.into(), algebra: dual_numbers(), gma: None }),
        _ => Err(Error::Parse(format!("unknown catalog algebra '{name}'"))),
    }
}

/// Names accepted by [`lookup`], with sizes shown as `n`.
pub const CATALOG_NAMES: &[&str] = &[
    "example_1_2",
    "upper_triangular(n)",
    "full_matrix(n)",
    "dual_numbers_on_line",
    "dual_numbers_faithful",
    "improper_incidence",
    "rationals",
    "dual_numbers",
];

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    type Q = BigRational;

    #[test]
    fn matrix_unit_algebras() {
        let t2 = upper_triangular::<Q>(2);
        assert_eq!(t2.algebra.dim(), 3);
        assert!(t2.algebra.is_unital());
        assert_eq!(t2.algebra.labels(), ["e11", "e12", "e22"]);
        let m3 = full_matrix::<Q>(3);
        assert_eq!(m3.algebra.dim(), 9);
        assert_eq!(m3.algebra.center().dim(), 1);
        assert_eq!(m3.gma.unwrap().block_dims(), [1, 2, 2, 4]);
        assert!(upper_triangular::<Q>(1).gma.is_none());
        assert_eq!(upper_triangular::<Q>(3).gma.unwrap().block_dims(), [1, 2, 0, 3]);
    }

    #[test]
    fn example_shapes() {
        let ex = example_1_2::<Q>();
        assert_eq!(ex.gma.dim(), 12);
        assert!(!ex.gma.is_unital());
        assert_eq!(ex.phi.apply(&ex.a0), ex.chi_a0);
        assert_eq!(ex.gma.algebra().center(), ex.expected_center);
    }

    #[test]
    fn small_contexts() {
        assert_eq!(dual_numbers::<Q>().find_unit().unwrap().coords, unit_vector::<Q>(2, 0));
        assert_eq!(dual_numbers_faithful::<Q>().block_dims(), [2, 2, 0, 1]);
        let (g, _) = improper_incidence::<Q>();
        assert_eq!(g.dim(), 5);
        assert!(g.is_unital());
    }

    #[test]
    fn incidence_needs_a_preorder() {
        assert!(incidence_algebra::<Q>(3, &|i, j| i == j || (i, j) == (0, 1) || (i, j) == (1, 2)).is_err());
        assert_eq!(incidence_algebra::<Q>(2, &|i, j| i <= j).unwrap().dim(), 3);
    }

    #[test]
    fn random_contexts_are_small_and_reproducible() {
        let a = random_contexts::<Q>(7, 20);
        assert!(a.len() >= 20);
        assert!(a.iter().all(|(_, g)| g.block_dims().iter().all(|&d| d <= 2)));
        let b = random_contexts::<Q>(7, 20);
        assert!(a.iter().zip(&b).all(|(x, y)| x.0 == y.0 && x.1 == y.1));
    }

    #[test]
    fn lookup_names() {
        assert_eq!(lookup::<Q>("full_matrix(2)").unwrap().algebra.dim(), 4);
        assert_eq!(lookup::<Q>("example_1_2").unwrap().algebra.dim(), 12);
        assert!(lookup::<Q>("full_matrix(0)").is_err());
        assert!(lookup::<Q>("nope").is_err());
    }
}
