use lietriple::catalog;
use lietriple::centralizers::{is_identity_member, solve_identity_space, IdentityKind};
use lietriple::derivations::{
    central_vanishing_space, check_gltd_correspondence, check_thm41_hypotheses, decompose_generalized_ltd,
    decompose_ltd, GltdOutcome, Verdict,
};
use lietriple::linalg::{combine, unit_vector};
use lietriple::{Error, Field, Gma, LinearOperator, Rational};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Q = Rational;

fn q(v: i64) -> Q {
    Q::from_int(v)
}

fn inner(g: &Gma, x: &[Q]) -> LinearOperator {
    let alg = g.algebra();
    LinearOperator::new(alg.left_mul_matrix(x).sub(&alg.right_mul_matrix(x))).unwrap()
}

fn random_member(space: &lietriple::Subspace, n: usize, rng: &mut ChaCha8Rng) -> LinearOperator {
    let coeffs: Vec<Q> = (0..space.dim()).map(|_| q(rng.gen_range(-4..=4))).collect();
    LinearOperator::from_vec(n, &combine(n * n, &coeffs, space.basis())).unwrap()
}

fn t2() -> Gma {
    catalog::upper_triangular::<Q>(2).gma.unwrap()
}

fn m2() -> Gma {
    catalog::full_matrix::<Q>(2).gma.unwrap()
}

#[test]
fn correspondence_basics() {
    let g = m2();
    let xi = inner(&g, &unit_vector(4, 1));
    assert!(check_gltd_correspondence(g.algebra(), &xi, &xi).unwrap().holds);
    let plus_id = xi.add(&LinearOperator::identity(4));
    assert!(check_gltd_correspondence(g.algebra(), &plus_id, &xi).unwrap().holds);
    // swap e12 and e21: the witness triple is found by enumeration
    let mut images: Vec<Vec<Q>> = (0..4).map(|j| unit_vector(4, j)).collect();
    images.swap(1, 2);
    let swap = LinearOperator::from_images(4, &images).unwrap();
    let c = check_gltd_correspondence(g.algebra(), &xi.add(&swap), &xi).unwrap();
    assert!(!c.holds);
    let w = c.witness.unwrap();
    assert_ne!(w.lhs, w.rhs);
    // a map that is not a Lie triple derivation is rejected up front
    assert!(matches!(check_gltd_correspondence(g.algebra(), &swap, &swap), Err(Error::NotLtd(_))));
}

#[test]
fn remark_space_level() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for g in [t2(), m2()] {
        let n = g.dim();
        let ltd = solve_identity_space(&g, IdentityKind::LieTripleDerivation).unwrap();
        let ltc = solve_identity_space(&g, IdentityKind::LieTripleCentralizer).unwrap();
        for _ in 0..50 {
            let xi = random_member(&ltd, n, &mut rng);
            let phi = random_member(&ltc, n, &mut rng);
            assert!(check_gltd_correspondence(g.algebra(), &xi.add(&phi), &xi).unwrap().holds);
            let mut bumped = phi.to_vec();
            let pos = rng.gen_range(0..n * n);
            bumped[pos] = bumped[pos].clone() + q(1);
            let off = LinearOperator::from_vec(n, &bumped).unwrap();
            let expected = ltc.contains_vector(&bumped);
            assert_eq!(check_gltd_correspondence(g.algebra(), &xi.add(&off), &xi).unwrap().holds, expected);
        }
    }
}

#[test]
fn hypotheses_on_t2() {
    let r = check_thm41_hypotheses(&t2(), &[vec![q(1)]], &[]).unwrap();
    assert_eq!(r.iv, Verdict::Holds);
    assert_eq!(r.c, Verdict::Holds);
    assert_eq!(r.c_candidate, Some(vec![q(1)]));
    assert_eq!((r.a, r.b), (Verdict::Fails, Verdict::Fails));
    // N = 0 offers no candidate
    assert_eq!(r.d, Verdict::NotEstablished);
    assert!(r.satisfied());
}

#[test]
fn hypotheses_on_m2() {
    let r = check_thm41_hypotheses(&m2(), &[], &[]).unwrap();
    assert_eq!(r.iv, Verdict::Holds);
    assert_eq!((r.ii, r.iii), (Verdict::Fails, Verdict::Fails));
    assert_eq!((r.a, r.b), (Verdict::Fails, Verdict::Fails));
    assert_eq!(r.c, Verdict::Holds);
    assert!(r.satisfied());
}

#[test]
fn useless_candidate_is_not_a_refutation() {
    let r = check_thm41_hypotheses(&t2(), &[vec![q(0)]], &[]).unwrap();
    assert_eq!(r.c, Verdict::NotEstablished);
}

#[test]
fn ltd_of_inner_derivation() {
    let g = t2();
    let xi = inner(&g, &unit_vector(3, 0));
    let dec = decompose_ltd(&g, &xi).unwrap().unwrap();
    assert_eq!(dec.delta.add(&dec.d).add(&dec.gamma), xi);
    assert!(is_identity_member(&g, IdentityKind::Derivation, &dec.delta).unwrap().holds());
}

#[test]
fn ltd_with_central_part() {
    let g = t2();
    // basis [e11, e12, e22]; Γ(e11) = I, Γ(e12) = 0, Γ(e22) = −I
    let one = vec![q(1), q(0), q(1)];
    let minus: Vec<Q> = one.iter().map(|x| -x.clone()).collect();
    let gamma = LinearOperator::from_images(3, &[one, vec![q(0); 3], minus]).unwrap();
    assert!(central_vanishing_space(&g).contains_vector(&gamma.to_vec()));
    let xi = inner(&g, &unit_vector(3, 0)).add(&gamma);
    assert!(is_identity_member(&g, IdentityKind::LieTripleDerivation, &xi).unwrap().holds());
    let dec = decompose_ltd(&g, &xi).unwrap().unwrap();
    assert_eq!(dec.delta.add(&dec.d).add(&dec.gamma), xi);
    assert!(central_vanishing_space(&g).contains_vector(&dec.gamma.to_vec()));
}

#[test]
fn every_ltd_decomposes_when_hypotheses_hold() {
    for name in ["upper_triangular(2)", "upper_triangular(3)", "full_matrix(2)", "full_matrix(3)"] {
        let g = catalog::lookup::<Q>(name).unwrap().gma.unwrap();
        assert!(check_thm41_hypotheses(&g, &[], &[]).unwrap().satisfied(), "{name}");
        let ltd = solve_identity_space(&g, IdentityKind::LieTripleDerivation).unwrap();
        for b in ltd.basis() {
            let xi = LinearOperator::from_vec(g.dim(), b).unwrap();
            assert!(decompose_ltd(&g, &xi).unwrap().is_some(), "{name}");
        }
    }
}

#[test]
fn gltd_with_identity_shift() {
    let g = t2();
    let xi = inner(&g, &unit_vector(3, 0));
    let big = xi.add(&LinearOperator::identity(3));
    let GltdOutcome::Decomposed(dec) = decompose_generalized_ltd(&g, &big, &xi).unwrap() else { panic!() };
    assert_eq!(dec.lambda, vec![q(1), q(0), q(1)]);
    assert!(dec.certified);
    assert_eq!(dec.label(), "certified");
    let sum = dec.delta.add(&dec.d).add(&dec.psi).add(&LinearOperator::new(g.algebra().left_mul_matrix(&dec.lambda)).unwrap());
    assert_eq!(sum, big);
}

#[test]
fn gltd_with_trace_map() {
    let g = m2();
    let xi = inner(&g, &unit_vector(4, 1));
    let one = vec![q(1), q(0), q(0), q(1)];
    let z = vec![q(0); 4];
    let trace = LinearOperator::from_images(4, &[one.clone(), z.clone(), z, one.clone()]).unwrap();
    let big = xi.add(&trace);
    let GltdOutcome::Decomposed(dec) = decompose_generalized_ltd(&g, &big, &xi).unwrap() else { panic!() };
    assert!(dec.lambda.iter().all(|x| *x == q(0)));
    let center = g.algebra().center();
    for j in 0..4 {
        assert!(center.contains_vector(&dec.psi.image_of_basis(j)));
    }
    assert!(dec.transcript.holds());
}

#[test]
fn gltd_equal_to_xi() {
    let g = m2();
    let xi = inner(&g, &unit_vector(4, 2));
    let GltdOutcome::Decomposed(dec) = decompose_generalized_ltd(&g, &xi, &xi).unwrap() else { panic!() };
    assert!(dec.lambda.iter().all(|x| *x == q(0)));
}

#[test]
fn gltd_rejects_non_associated_pair() {
    let g = m2();
    let xi = inner(&g, &unit_vector(4, 1));
    let mut images: Vec<Vec<Q>> = (0..4).map(|j| unit_vector(4, j)).collect();
    images.swap(1, 2);
    let swap = LinearOperator::from_images(4, &images).unwrap();
    assert!(matches!(decompose_generalized_ltd(&g, &xi.add(&swap), &xi), Err(Error::NotGltd(_))));
}

#[test]
fn random_gltd_pairs() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for g in [t2(), m2()] {
        let n = g.dim();
        let ltd = solve_identity_space(&g, IdentityKind::LieTripleDerivation).unwrap();
        let ltc = solve_identity_space(&g, IdentityKind::LieTripleCentralizer).unwrap();
        for _ in 0..25 {
            let xi = random_member(&ltd, n, &mut rng);
            let big = xi.add(&random_member(&ltc, n, &mut rng));
            let GltdOutcome::Decomposed(dec) = decompose_generalized_ltd(&g, &big, &xi).unwrap() else { panic!() };
            assert!(dec.transcript.holds());
            assert!(dec.certified);
        }
    }
}

#[test]
fn outside_hypotheses_is_labelled() {
    let (g, _) = catalog::improper_incidence::<Q>();
    let xi = LinearOperator::zero(g.dim());
    let id = LinearOperator::identity(g.dim());
    let out = decompose_generalized_ltd(&g, &id, &xi).unwrap();
    let GltdOutcome::Decomposed(dec) = out else { panic!("expected a decomposition") };
    assert!(!dec.certified);
    assert_eq!(dec.label(), "outside certified hypotheses");
}
