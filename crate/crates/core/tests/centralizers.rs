use lietriple::catalog;
use lietriple::centralizers::{
    block_decompose, build_from_blocks, component_space, corollary32_strengthen, identity_residual,
    is_identity_member, solve_identity_space, solve_ltc_middle_form, verify_thm31_conditions, CornerMaps,
    IdentityKind,
};
use lietriple::gma::Gma;
use lietriple::linalg::{Matrix, Subspace};
use lietriple::{Field, LinearOperator, Rational};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Q = Rational;

fn q(v: i64) -> Q {
    Q::from_int(v)
}

/// Independent oracle: builds the Lie triple centralizer system by literal
/// matrix multiplication of the operator against `ad` matrices and takes the
/// dense kernel.
fn oracle_ltc_dim(alg: &lietriple::Algebra) -> usize {
    let n = alg.dim();
    let e = |i: usize| {
        let mut v = vec![q(0); n];
        v[i] = q(1);
        v
    };
    let mut rows = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let w = alg.double_bracket_vecs(&e(i), &e(j), &e(k));
                // φ(w) − [[φ(eᵢ), eⱼ], eₖ]; the second term is ad_k ad_j applied to column i
                let ad_j = alg.ad_right_matrix(&e(j));
                let ad_k = alg.ad_right_matrix(&e(k));
                let t = ad_k.mul(&ad_j);
                for r in 0..n {
                    let mut row = vec![q(0); n * n];
                    for l in 0..n {
                        row[l * n + r] = row[l * n + r].clone() + w[l].clone();
                    }
                    for s in 0..n {
                        row[i * n + s] = row[i * n + s].clone() - t[(r, s)].clone();
                    }
                    rows.push(row);
                }
            }
        }
    }
    let m = Matrix::from_rows(n * n, rows).unwrap();
    n * n - m.rank()
}

#[test]
fn ltc_dimensions_match_oracle() {
    let t2 = catalog::upper_triangular::<Q>(2).algebra;
    let m2 = catalog::full_matrix::<Q>(2).algebra;
    assert_eq!(oracle_ltc_dim(&t2), 3);
    assert_eq!(oracle_ltc_dim(&m2), 2);
    assert_eq!(solve_identity_space(&t2, IdentityKind::LieTripleCentralizer).unwrap().dim(), 3);
    assert_eq!(solve_identity_space(&m2, IdentityKind::LieTripleCentralizer).unwrap().dim(), 2);
    for n in [3] {
        let t = catalog::upper_triangular::<Q>(n).algebra;
        let m = catalog::full_matrix::<Q>(n).algebra;
        assert_eq!(
            solve_identity_space(&t, IdentityKind::LieTripleCentralizer).unwrap().dim(),
            oracle_ltc_dim(&t)
        );
        assert_eq!(
            solve_identity_space(&m, IdentityKind::LieTripleCentralizer).unwrap().dim(),
            oracle_ltc_dim(&m)
        );
    }
}

#[test]
fn nilpotent_example_spaces() {
    let ex = catalog::example_1_2::<Q>();
    let ltc = solve_identity_space(&ex.gma, IdentityKind::LieTripleCentralizer).unwrap();
    assert_eq!(ltc.dim(), 144);
    let lc = solve_identity_space(&ex.gma, IdentityKind::LieCentralizer).unwrap();
    assert!(lc.dim() < 144);
    assert!(ltc.contains(&lc).unwrap());
    assert!(is_identity_member(&ex.gma, IdentityKind::LieTripleCentralizer, &ex.phi).unwrap().holds());
    assert!(!is_identity_member(&ex.gma, IdentityKind::LieCentralizer, &ex.phi).unwrap().holds());
    let (lhs, rhs) =
        identity_residual(ex.gma.algebra(), IdentityKind::LieCentralizer, &ex.phi, &[ex.a0.clone(), ex.b0.clone()])
            .unwrap();
    assert_ne!(lhs, rhs);
}

fn catalog_algebras() -> Vec<(String, lietriple::Algebra)> {
    let mut out: Vec<(String, lietriple::Algebra)> =
        catalog::unital_gmas::<Q>().into_iter().map(|(n, g)| (n, g.algebra().clone())).collect();
    out.push(("example_1_2".into(), catalog::example_1_2::<Q>().gma.algebra().clone()));
    out.push(("dual_numbers_on_line".into(), catalog::dual_numbers_on_line::<Q>().algebra().clone()));
    out
}

#[test]
fn inclusion_lattice_and_middle_form() {
    for (name, alg) in catalog_algebras() {
        let ltc = solve_identity_space(&alg, IdentityKind::LieTripleCentralizer).unwrap();
        let lc = solve_identity_space(&alg, IdentityKind::LieCentralizer).unwrap();
        let jc = solve_identity_space(&alg, IdentityKind::JordanCentralizer).unwrap();
        assert!(ltc.contains(&lc).unwrap(), "{name}");
        assert!(ltc.contains(&jc).unwrap(), "{name}");
        assert_eq!(solve_ltc_middle_form(&alg), ltc, "{name}");
        let der = solve_identity_space(&alg, IdentityKind::Derivation).unwrap();
        let jder = solve_identity_space(&alg, IdentityKind::JordanDerivation).unwrap();
        let lder = solve_identity_space(&alg, IdentityKind::LieDerivation).unwrap();
        let ltd = solve_identity_space(&alg, IdentityKind::LieTripleDerivation).unwrap();
        let both = jder.intersect(&lder).unwrap();
        assert!(both.contains(&der).unwrap(), "{name}");
        assert!(ltd.contains(&both).unwrap(), "{name}");
    }
}

#[test]
fn membership_agrees_with_solved_space() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for (name, alg) in catalog_algebras().into_iter().filter(|(_, a)| a.dim() <= 9) {
        let n = alg.dim();
        for kind in IdentityKind::ALL.into_iter().filter(|k| *k != IdentityKind::SingularJordanDerivation) {
            let space = solve_identity_space(&alg, kind).unwrap();
            // a random member and a random perturbation
            let coeffs: Vec<Q> = (0..space.dim()).map(|_| q(rng.gen_range(-3..=3))).collect();
            let member = lietriple::linalg::combine(n * n, &coeffs, space.basis());
            let op = LinearOperator::from_vec(n, &member).unwrap();
            assert!(is_identity_member(&alg, kind, &op).unwrap().holds(), "{name} {kind}");
            let mut other = member.clone();
            let pos = rng.gen_range(0..n * n);
            other[pos] = other[pos].clone() + q(1);
            let op = LinearOperator::from_vec(n, &other).unwrap();
            assert_eq!(
                is_identity_member(&alg, kind, &op).unwrap().holds(),
                space.contains_vector(&other),
                "{name} {kind}"
            );
        }
    }
}

#[test]
fn zero_operator_is_always_a_member() {
    for (_, alg) in catalog_algebras() {
        let z = LinearOperator::zero(alg.dim());
        for kind in IdentityKind::ALL.into_iter().filter(|k| *k != IdentityKind::SingularJordanDerivation) {
            assert!(is_identity_member(&alg, kind, &z).unwrap().holds());
        }
    }
}

fn check_block_form(name: &str, u: &Gma<Q>) {
    let ltc = solve_identity_space(u, IdentityKind::LieTripleCentralizer).unwrap();
    let n = u.dim();
    for b in ltc.basis() {
        let phi = LinearOperator::from_vec(n, b).unwrap();
        let d = block_decompose(u, &phi).unwrap();
        assert_eq!(d.reassemble(), phi);
        let report = verify_thm31_conditions(u, &d).unwrap();
        assert!(report.holds(), "{name}: {:?}", report.failures().collect::<Vec<_>>());
    }
    let comps = component_space(u).unwrap();
    assert_eq!(comps.dim(), ltc.dim(), "{name}");
    for c in comps.basis() {
        let op = build_from_blocks(u, &CornerMaps::from_vec(u, c).unwrap()).unwrap();
        assert!(ltc.contains_vector(&op.to_vec()), "{name}");
    }
}

#[test]
fn block_form_on_matrix_algebras() {
    for (name, g) in catalog::unital_gmas::<Q>() {
        check_block_form(&name, &g);
    }
}

#[test]
fn block_form_on_random_contexts() {
    for (name, g) in catalog::random_contexts::<Q>(2024, 20) {
        check_block_form(&name, &g);
    }
}

#[test]
fn triangular_two_family() {
    // α₁ = p, β₁ = q, τ₂ = t, α₄ = r, β₄ = s with t = p − r = s − q
    let t2 = catalog::upper_triangular::<Q>(2).gma.unwrap();
    let ltc = solve_identity_space(&t2, IdentityKind::LieTripleCentralizer).unwrap();
    let build = |p: i64, qq: i64, t: i64, r: i64, s: i64| {
        let mut c = CornerMaps::zero(&t2);
        c.a_to_a = Matrix::from_ints(&[&[p]]);
        c.b_to_a = Matrix::from_ints(&[&[qq]]);
        c.m_to_m = Matrix::from_ints(&[&[t]]);
        c.a_to_b = Matrix::from_ints(&[&[r]]);
        c.b_to_b = Matrix::from_ints(&[&[s]]);
        build_from_blocks(&t2, &c).unwrap()
    };
    let good = build(5, 2, 3, 2, 5);
    assert!(ltc.contains_vector(&good.to_vec()));
    let bad = build(5, 2, 4, 2, 5);
    assert!(!ltc.contains_vector(&bad.to_vec()));
    let m = is_identity_member(&t2, IdentityKind::LieTripleCentralizer, &bad).unwrap();
    assert!(m.witness.is_some());
    let report = verify_thm31_conditions(&t2, &block_decompose(&t2, &bad).unwrap()).unwrap();
    assert!(!report.holds());
}

#[test]
fn swap_is_not_ltc_on_m2() {
    let m2 = catalog::full_matrix::<Q>(2).gma.unwrap();
    // basis [e11, e12, e21, e22]; swap e12 and e21
    let mut images = Vec::new();
    for j in 0..4 {
        let target = match j {
            1 => 2,
            2 => 1,
            x => x,
        };
        let mut v = vec![q(0); 4];
        v[target] = q(1);
        images.push(v);
    }
    let swap = LinearOperator::from_images(4, &images).unwrap();
    let w = is_identity_member(&m2, IdentityKind::LieTripleCentralizer, &swap).unwrap().witness.unwrap();
    assert_ne!(w.lhs, w.rhs);
    let report = verify_thm31_conditions(&m2, &block_decompose(&m2, &swap).unwrap()).unwrap();
    assert!(!report.holds());
}

#[test]
fn corollary_strengthening() {
    for (name, g) in catalog::unital_gmas::<Q>() {
        let ltc = solve_identity_space(&g, IdentityKind::LieTripleCentralizer).unwrap();
        for b in ltc.basis() {
            let d = block_decompose(&g, &LinearOperator::from_vec(g.dim(), b).unwrap()).unwrap();
            assert!(corollary32_strengthen(&g, &d).unwrap().holds(), "{name}");
        }
    }
    let g = catalog::dual_numbers_on_line::<Q>();
    let d = block_decompose(&g, &LinearOperator::zero(g.dim())).unwrap();
    assert!(corollary32_strengthen(&g, &d).is_err());
}

#[test]
fn central_multiplication_block_form() {
    let m2 = catalog::full_matrix::<Q>(2).gma.unwrap();
    let c = q(3);
    let op = LinearOperator::identity(4).scale(&c);
    let d = block_decompose(&m2, &op).unwrap();
    let comps = d.components();
    assert_eq!(comps.a_to_a, Matrix::from_ints(&[&[3]]));
    assert_eq!(comps.m_to_m, Matrix::from_ints(&[&[3]]));
    assert_eq!(comps.n_to_n, Matrix::from_ints(&[&[3]]));
    assert_eq!(comps.b_to_b, Matrix::from_ints(&[&[3]]));
    assert!(comps.a_to_b.is_zero() && comps.b_to_a.is_zero());
    let _ = Subspace::<Q>::zero(1);
}
