//! Acceptance suite: one line per criterion, nonzero exit if any fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::time::{Duration, Instant};

use lietriple::catalog;
use lietriple::centralizers::{
    block_decompose, build_from_blocks, component_space, identity_residual, is_identity_member,
    solve_identity_space, verify_thm31_conditions, CornerMaps, IdentityKind,
};
use lietriple::derivations::{check_gltd_correspondence, decompose_generalized_ltd, GltdOutcome};
use lietriple::gma::{check_annihilating_conditions, diagonal_commuting_elements, eta_map, Block};
use lietriple::linalg::{combine, unit_vector};
use lietriple::properness::{
    check_cor36_hypotheses, decompose_proper, equivalence_audit, is_proper_direct_with_probes, DirectVerdict,
};
use lietriple::{Algebra, Field, Gma, LinearOperator, Matrix, Rational, Subspace};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Q = Rational;

fn q(v: i64) -> Q {
    Q::from_int(v)
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn ok<T, E: std::fmt::Display>(r: Result<T, E>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn matrix_gmas() -> Vec<(String, Gma)> {
    ["upper_triangular(2)", "upper_triangular(3)", "full_matrix(2)", "full_matrix(3)"]
        .iter()
        .map(|n| (n.to_string(), catalog::lookup::<Q>(n).unwrap().gma.unwrap()))
        .collect()
}

fn random_member(space: &Subspace, n: usize, rng: &mut ChaCha8Rng) -> LinearOperator {
    let c: Vec<Q> = (0..space.dim()).map(|_| q(rng.gen_range(-4..=4))).collect();
    LinearOperator::from_vec(n, &combine(n * n, &c, space.basis())).unwrap()
}

/// Dense oracle for the Lie triple centralizer space: one row per basis
/// triple and output coordinate, built from `ad` matrices, then a plain rank.
fn oracle_ltc_dim(alg: &Algebra) -> usize {
    let n = alg.dim();
    let e = |i: usize| unit_vector::<Q>(n, i);
    let ads: Vec<Matrix> = (0..n).map(|i| alg.ad_right_matrix(&e(i))).collect();
    let mut rows = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let t_j = &ads[j];
            for k in 0..n {
                let w = alg.double_bracket_vecs(&e(i), &e(j), &e(k));
                let t = ads[k].mul(t_j);
                for r in 0..n {
                    let mut row = vec![q(0); n * n];
                    for l in 0..n {
                        row[l * n + r] += w[l].clone();
                    }
                    for s in 0..n {
                        row[i * n + s] -= t[(r, s)].clone();
                    }
                    rows.push(row);
                }
            }
        }
    }
    n * n - Matrix::from_rows(n * n, rows).unwrap().rank()
}

fn criterion_1() -> Result<String, String> {
    let start = Instant::now();
    let ex = catalog::example_1_2::<Q>();
    let g = &ex.gma;
    let alg = g.algebra();
    let n = alg.dim();
    ensure(n == 12, || format!("dimension {n}"))?;
    let e = |i| unit_vector::<Q>(n, i);
    let mut triples = 0;
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let w = alg.double_bracket_vecs(&e(i), &e(j), &e(k));
                ensure(w.iter().all(|x| *x == q(0)), || format!("[[e{i},e{j}],e{k}] != 0"))?;
                triples += 1;
            }
        }
    }
    ensure(triples == 1728, || "triple count".into())?;
    let m = ok(is_identity_member(g, IdentityKind::LieTripleCentralizer, &ex.phi))?;
    ensure(m.holds(), || "phi fails the identity".into())?;
    let (lhs, rhs) = ok(identity_residual(alg, IdentityKind::LieCentralizer, &ex.phi, &[ex.a0.clone(), ex.b0.clone()]))?;
    ensure(lhs != rhs, || "phi([A0,B0]) = [phi(A0),B0]".into())?;
    let z = alg.center();
    ensure(z.dim() == 4 && ok(z.equals(&ex.expected_center))?, || format!("center dim {}", z.dim()))?;
    let v = ok(is_proper_direct_with_probes(alg, &ex.phi, &[ex.a0.clone()]))?;
    let DirectVerdict::Infeasible(inf) = v else { return Err("a certificate was found".into()) };
    let (x, y) = inf.witness.ok_or("no witness")?;
    ensure(x == ex.a0 && y == ex.chi_a0 && !z.contains_vector(&y), || "witness is not phi(A0)".into())?;
    let t = start.elapsed();
    ensure(t < Duration::from_secs(10), || format!("took {t:?}"))?;
    Ok(format!("1728 triples vanish, Z dim 4, phi(A0) not central, {:.2}s", t.as_secs_f64()))
}

fn criterion_2() -> Result<String, String> {
    let start = Instant::now();
    let mut algebras = matrix_gmas();
    let random = catalog::random_contexts::<Q>(2024, 20);
    ensure(random.len() >= 20, || "fewer than 20 random contexts".into())?;
    ensure(random.iter().all(|(_, g)| g.block_dims().iter().all(|&d| d <= 2)), || "corner too large".into())?;
    algebras.extend(random);
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    let (mut basis_checked, mut tuples) = (0, 0);
    for (name, g) in &algebras {
        let n = g.dim();
        let ltc = ok(solve_identity_space(g, IdentityKind::LieTripleCentralizer))?;
        for b in ltc.basis() {
            let phi = ok(LinearOperator::from_vec(n, b))?;
            let r = ok(verify_thm31_conditions(g, &ok(block_decompose(g, &phi))?))?;
            ensure(r.holds(), || format!("{name}: basis element fails {:?}", r.failures().next()))?;
            basis_checked += 1;
        }
        let comps = ok(component_space(g))?;
        for _ in 0..10 {
            let c: Vec<Q> = (0..comps.dim()).map(|_| q(rng.gen_range(-5..=5))).collect();
            let v = combine(CornerMaps::unknowns(g), &c, comps.basis());
            let op = ok(build_from_blocks(g, &ok(CornerMaps::from_vec(g, &v))?))?;
            ensure(ltc.contains_vector(&op.to_vec()), || format!("{name}: assembled map outside the space"))?;
            tuples += 1;
        }
    }
    ensure(tuples >= 200, || format!("only {tuples} tuples"))?;
    let t = start.elapsed();
    ensure(t < Duration::from_secs(120), || format!("took {t:?}"))?;
    Ok(format!("{} algebras, {basis_checked} basis elements, {tuples} tuples, {:.2}s", algebras.len(), t.as_secs_f64()))
}

fn criterion_3() -> Result<String, String> {
    let mut algebras = catalog::unital_gmas::<Q>();
    algebras.extend(catalog::random_contexts::<Q>(2024, 20));
    let mut audited = 0;
    for (name, g) in &algebras {
        if !g.is_unital() || !check_annihilating_conditions(g).holds() {
            continue;
        }
        let raw = g.algebra().center();
        ensure(ok(raw.equals(&diagonal_commuting_elements(g)))?, || format!("{name}: centers differ"))?;
        let eta = ok(eta_map(g))?;
        let (dm, dn) = (g.block_dim(Block::M), g.block_dim(Block::N));
        for z in raw.basis() {
            let a = g.project(Block::A, z);
            let b = eta.apply(&a).ok_or_else(|| format!("{name}: eta undefined"))?;
            ensure(b == g.project(Block::B, z), || format!("{name}: eta disagrees with the center"))?;
            for p in 0..dm {
                let m = unit_vector::<Q>(dm, p);
                ensure(
                    g.corner_product((Block::A, &a), (Block::M, &m)) == g.corner_product((Block::M, &m), (Block::B, &b)),
                    || format!("{name}: am != m eta(a)"),
                )?;
            }
            for p in 0..dn {
                let nn = unit_vector::<Q>(dn, p);
                ensure(
                    g.corner_product((Block::N, &nn), (Block::A, &a)) == g.corner_product((Block::B, &b), (Block::N, &nn)),
                    || format!("{name}: na != eta(a) n"),
                )?;
            }
            for z2 in raw.basis() {
                let a2 = g.project(Block::A, z2);
                let prod = g.corner_product((Block::A, &a), (Block::A, &a2));
                let lhs = eta.apply(&prod).ok_or_else(|| format!("{name}: image not closed"))?;
                let rhs = g.corner_product((Block::B, &b), (Block::B, &eta.apply(&a2).unwrap()));
                ensure(lhs == rhs, || format!("{name}: eta not multiplicative"))?;
            }
        }
        ensure(eta.domain.dim() == eta.codomain.dim(), || format!("{name}: eta not bijective"))?;
        audited += 1;
    }
    ensure(audited >= 6, || format!("only {audited} algebras audited"))?;
    Ok(format!("{audited} algebras"))
}

fn criterion_4() -> Result<String, String> {
    let mut tested = 0;
    for (name, g) in matrix_gmas() {
        let r = ok(equivalence_audit(&g, 50, 404))?;
        ensure(r.consistent(), || format!("{name}: {:?}", r.disagreements))?;
        tested += r.tested;
    }
    Ok(format!("{tested} operators, verdicts coincide"))
}

fn criterion_5() -> Result<String, String> {
    let t2 = catalog::upper_triangular::<Q>(2).algebra;
    let m2 = catalog::full_matrix::<Q>(2).algebra;
    let (ot, om) = (oracle_ltc_dim(&t2), oracle_ltc_dim(&m2));
    ensure((ot, om) == (3, 2), || format!("oracle gives {ot}, {om}"))?;
    let mut rng = ChaCha8Rng::seed_from_u64(55);
    let mut decomposed = 0;
    for (name, g) in matrix_gmas() {
        ensure(ok(check_cor36_hypotheses(&g))?.holds(), || format!("{name}: hypotheses fail"))?;
        let ltc = ok(solve_identity_space(&g, IdentityKind::LieTripleCentralizer))?;
        if name == "upper_triangular(2)" || name == "full_matrix(2)" {
            let want = if name.starts_with("upper") { ot } else { om };
            ensure(ltc.dim() == want, || format!("{name}: solved dim {} vs oracle {want}", ltc.dim()))?;
        }
        let mut ops: Vec<LinearOperator> =
            ltc.basis().iter().map(|b| LinearOperator::from_vec(g.dim(), b).unwrap()).collect();
        ops.extend((0..10).map(|_| random_member(&ltc, g.dim(), &mut rng)));
        for phi in ops {
            let cert = ok(decompose_proper(&g, &phi))?.ok_or_else(|| format!("{name}: improper map"))?;
            let residual = phi.matrix().sub(&g.algebra().left_mul_matrix(&cert.lambda)).sub(cert.chi.matrix());
            ensure(residual.is_zero(), || format!("{name}: nonzero residual"))?;
            decomposed += 1;
        }
    }
    Ok(format!("oracle dims T2 = {ot}, M2 = {om}; {decomposed} maps decompose exactly"))
}

fn criterion_6() -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(66);
    let mut pairs = 0;
    for name in ["upper_triangular(2)", "full_matrix(2)"] {
        let g = catalog::lookup::<Q>(name).unwrap().gma.unwrap();
        let n = g.dim();
        let ltd = ok(solve_identity_space(&g, IdentityKind::LieTripleDerivation))?;
        let ltc = ok(solve_identity_space(&g, IdentityKind::LieTripleCentralizer))?;
        for _ in 0..25 {
            let xi = random_member(&ltd, n, &mut rng);
            let big = xi.add(&random_member(&ltc, n, &mut rng));
            ensure(ok(check_gltd_correspondence(g.algebra(), &big, &xi))?.holds, || format!("{name}: correspondence"))?;
            let GltdOutcome::Decomposed(d) = ok(decompose_generalized_ltd(&g, &big, &xi))? else {
                return Err(format!("{name}: infeasible"));
            };
            let lam = LinearOperator::new(g.algebra().left_mul_matrix(&d.lambda)).unwrap();
            ensure(d.delta.add(&d.d).add(&d.psi).add(&lam) == big, || format!("{name}: sum differs"))?;
            ensure(ok(is_identity_member(&g, IdentityKind::Derivation, &d.delta))?.holds(), || "delta".into())?;
            ensure(
                ok(is_identity_member(&g, IdentityKind::SingularJordanDerivation, &d.d))?.holds(),
                || "d".into(),
            )?;
            let z = g.algebra().center();
            ensure(z.contains_vector(&d.lambda), || "lambda".into())?;
            ensure((0..n).all(|j| z.contains_vector(&d.psi.image_of_basis(j))), || "psi range".into())?;
            let dc = g.algebra().double_commutator_span();
            ensure(dc.basis().iter().all(|w| d.psi.apply(w).iter().all(|x| *x == q(0))), || "psi vanishing".into())?;
            pairs += 1;
        }
    }
    Ok(format!("{pairs} pairs decomposed and re-verified"))
}

fn criterion_7() -> Result<String, String> {
    let mut names: Vec<String> = Vec::new();
    for n in catalog::CATALOG_NAMES {
        if n.ends_with("(n)") {
            for k in [1, 2, 3] {
                names.push(n.replace("(n)", &format!("({k})")));
            }
        } else {
            names.push(n.to_string());
        }
    }
    let mut gap = None;
    for name in &names {
        let alg = catalog::lookup::<Q>(name).unwrap().algebra;
        let ltc = ok(solve_identity_space(&alg, IdentityKind::LieTripleCentralizer))?;
        let lc = ok(solve_identity_space(&alg, IdentityKind::LieCentralizer))?;
        let jc = ok(solve_identity_space(&alg, IdentityKind::JordanCentralizer))?;
        ensure(ok(ltc.contains(&lc))? && ok(ltc.contains(&jc))?, || format!("{name}: containment fails"))?;
        if name == "example_1_2" {
            gap = Some((ltc.dim(), lc.dim()));
        }
    }
    let (l, c) = gap.ok_or("example_1_2 missing")?;
    ensure(l == 144 && c < 144, || format!("ltc {l}, lc {c}"))?;
    Ok(format!("{} algebras; example_1_2 ltc {l} vs lc {c}, gap {}", names.len(), l - c))
}

fn criterion_8() -> Result<String, String> {
    let bin = env!("CARGO_BIN_EXE_lietriple");
    let run = || Command::new(bin).arg("verify-paper").output().map_err(|e| e.to_string());
    let first = run()?;
    let second = run()?;
    ensure(first.status.code() == Some(0), || {
        format!("exit {:?}: {}", first.status.code(), String::from_utf8_lossy(&first.stdout))
    })?;
    ensure(second.status.code() == Some(0), || "second run failed".into())?;
    ensure(first.stdout == second.stdout, || "reports differ".into())?;
    Ok(format!("exit 0 twice, {} identical bytes", first.stdout.len()))
}

fn main() {
    let criteria: [(&str, fn() -> Result<String, String>); 8] = [
        ("example reproduction", criterion_1),
        ("block form round trip", criterion_2),
        ("center and eta", criterion_3),
        ("properness equivalence", criterion_4),
        ("sufficient conditions and oracle dimensions", criterion_5),
        ("generalized derivation decomposition", criterion_6),
        ("inclusion lattice", criterion_7),
        ("verify-paper determinism", criterion_8),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("criterion {} {name}: PASS ({detail})", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {} {name}: FAIL ({why})", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
