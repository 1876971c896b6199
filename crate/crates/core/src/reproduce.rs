//! End-to-end reproduction: the nilpotent worked example and the theorem
//! audits over the catalog, collected into a deterministic report.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::is_zero_vec;
use crate::catalog;
use crate::centralizers::{
    block_decompose, component_space, identity_residual, is_identity_member, solve_identity_space,
    verify_thm31_conditions, IdentityKind,
};
use crate::derivations::{check_thm41_hypotheses, decompose_generalized_ltd, decompose_ltd, GltdOutcome};
use crate::error::Result;
use crate::gma::{check_annihilating_conditions, diagonal_commuting_elements, eta_map, Gma};
use crate::io::content_hash;
use crate::linalg::{combine, unit_vector};
use crate::operator::LinearOperator;
use crate::properness::{check_cor36_hypotheses, equivalence_audit, is_proper_direct_with_probes, DirectVerdict};
use crate::scalar::Field;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckLine {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Section {
    pub title: String,
    pub checks: Vec<CheckLine>,
}

impl Section {
    fn new(title: impl Into<String>) -> Self {
        Section { title: title.into(), checks: Vec::new() }
    }

    fn check(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.checks.push(CheckLine { name: name.into(), passed, detail: detail.into() });
    }

    /// Records an error from a computation as a failed check.
    fn run(&mut self, name: &str, f: impl FnOnce() -> Result<(bool, String)>) {
        match f() {
            Ok((ok, detail)) => self.check(name, ok, detail),
            Err(e) => self.check(name, false, format!("error: {e}")),
        }
    }
}

/// Structured, reproducible result of a run. Maps are ordered so the JSON
/// and text renderings are byte-stable.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RunReport {
    pub command: String,
    pub input_hashes: BTreeMap<String, String>,
    pub sections: Vec<Section>,
}

impl RunReport {
    pub fn passed(&self) -> bool {
        self.sections.iter().all(|s| s.checks.iter().all(|c| c.passed))
    }

    pub fn failures(&self) -> Vec<(&str, &CheckLine)> {
        self.sections
            .iter()
            .flat_map(|s| s.checks.iter().filter(|c| !c.passed).map(move |c| (s.title.as_str(), c)))
            .collect()
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{}", self.command);
        for (name, hash) in &self.input_hashes {
            let _ = writeln!(out, "input {name} {hash}");
        }
        for s in &self.sections {
            let _ = writeln!(out, "\n== {}", s.title);
            for c in &s.checks {
                let mark = if c.passed { "pass" } else { "FAIL" };
                if c.detail.is_empty() {
                    let _ = writeln!(out, "[{mark}] {}", c.name);
                } else {
                    let _ = writeln!(out, "[{mark}] {}: {}", c.name, c.detail);
                }
            }
        }
        let total: usize = self.sections.iter().map(|s| s.checks.len()).sum();
        let failed = self.failures().len();
        let _ = writeln!(out, "\n{} checks, {} failed", total, failed);
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

fn fmt_elem<F: Field>(g: &Gma<F>, x: &[F]) -> String {
    g.algebra().format_element(x)
}

fn example_section<F: Field>() -> Section {
    let ex = catalog::example_1_2::<F>();
    let g = &ex.gma;
    let alg = g.algebra();
    let n = alg.dim();
    let mut s = Section::new("example_1_2: M2 over strictly upper triangular 3x3 matrices");
    s.check("dimension", n == 12, format!("{n}"));
    s.check("not unital", !alg.is_unital(), "");

    let e = |i| unit_vector::<F>(n, i);
    let mut nonzero = 0usize;
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                if !is_zero_vec(&alg.double_bracket_vecs(&e(i), &e(j), &e(k))) {
                    nonzero += 1;
                }
            }
        }
    }
    s.check("(a) every basis double commutator vanishes", nonzero == 0, format!("{} triples, {nonzero} nonzero", n * n * n));

    s.run("(b) phi satisfies the Lie triple centralizer identity", || {
        let m = is_identity_member(g, IdentityKind::LieTripleCentralizer, &ex.phi)?;
        Ok((m.holds(), format!("{} basis triples", n * n * n)))
    });

    s.run("(c) phi([A0,B0]) != [phi(A0),B0]", || {
        let (lhs, rhs) = identity_residual(alg, IdentityKind::LieCentralizer, &ex.phi, &[ex.a0.clone(), ex.b0.clone()])?;
        Ok((lhs != rhs, format!("{} vs {}", fmt_elem(g, &lhs), fmt_elem(g, &rhs))))
    });

    let center = alg.center();
    let same = center.equals(&ex.expected_center).unwrap_or(false);
    s.check("(d) center is M2(C) with C = span{u3}", same && center.dim() == 4, format!("dim {}", center.dim()));

    s.run("(e) direct properness solve is infeasible", || {
        let v = is_proper_direct_with_probes(alg, &ex.phi, &[ex.a0.clone()])?;
        Ok(match v {
            DirectVerdict::Infeasible(inf) => match inf.witness {
                Some((x, y)) => {
                    let ok = x == ex.a0 && y == ex.chi_a0 && !center.contains_vector(&y);
                    (ok, format!("phi(A0) = {} is not central", fmt_elem(g, &y)))
                }
                None => (false, "no obstruction element".into()),
            },
            DirectVerdict::Proper(_) => (false, "a certificate was found".into()),
        })
    });

    let annihilates = center.basis().iter().all(|z| (0..n).all(|j| is_zero_vec(&alg.mul_vecs(z, &e(j)))));
    s.check("central elements annihilate the algebra, so lambda contributes nothing", annihilates, "");

    s.run("solution space dimensions", || {
        let ltc = solve_identity_space(g, IdentityKind::LieTripleCentralizer)?;
        let lc = solve_identity_space(g, IdentityKind::LieCentralizer)?;
        let ok = ltc.dim() == 144 && lc.dim() < 144 && ltc.contains(&lc)?;
        Ok((ok, format!("ltc {}, lc {}, gap {}", ltc.dim(), lc.dim(), ltc.dim() - lc.dim())))
    });
    s
}

fn matrix_algebras<F: Field>() -> Vec<(String, Gma<F>)> {
    ["upper_triangular(2)", "upper_triangular(3)", "full_matrix(2)", "full_matrix(3)"]
        .iter()
        .map(|name| (name.to_string(), catalog::lookup(name).ok().and_then(|c| c.gma).expect("catalog entry has blocks")))
        .collect()
}

fn block_form_section<F: Field>(algebras: &[(String, Gma<F>)]) -> Section {
    let mut s = Section::new("block form of Lie triple centralizers");
    for (name, g) in algebras {
        s.run(name, || {
            let ltc = solve_identity_space(g, IdentityKind::LieTripleCentralizer)?;
            for b in ltc.basis() {
                let phi = LinearOperator::from_vec(g.dim(), b)?;
                let report = verify_thm31_conditions(g, &block_decompose(g, &phi)?)?;
                if let Some(f) = report.failures().next() {
                    return Ok((false, format!("basis element fails {}", f.name)));
                };
            }
            let comps = component_space(g)?;
            Ok((comps.dim() == ltc.dim(), format!("ltc dim {}, component dim {}", ltc.dim(), comps.dim())))
        });
    }
    s
}

fn center_section<F: Field>(algebras: &[(String, Gma<F>)]) -> Section {
    let mut s = Section::new("center of a generalized matrix algebra");
    for (name, g) in algebras {
        if !g.is_unital() || !check_annihilating_conditions(g).holds() {
            continue;
        }
        s.run(name, || {
            let raw = g.algebra().center();
            let blockwise = diagonal_commuting_elements(g);
            eta_map(g)?;
            Ok((raw.equals(&blockwise)?, format!("center dim {}", raw.dim())))
        });
    }
    s
}

fn properness_section<F: Field>(algebras: &[(String, Gma<F>)]) -> Section {
    let mut s = Section::new("properness criteria agree");
    for (name, g) in algebras {
        if !g.is_unital() || !check_annihilating_conditions(g).holds() {
            continue;
        }
        s.run(name, || {
            let r = equivalence_audit(g, 10, 2024)?;
            Ok((
                r.consistent(),
                format!("{} operators, {} proper{}", r.tested, r.proper, r.disagreements.first().map(|d| format!(", {d}")).unwrap_or_default()),
            ))
        });
    }
    s
}

fn sufficient_section<F: Field>(algebras: &[(String, Gma<F>)]) -> Section {
    let mut s = Section::new("sufficient conditions for properness");
    for (name, g) in algebras {
        s.run(name, || {
            let r = check_cor36_hypotheses(g)?;
            let ltc = solve_identity_space(g, IdentityKind::LieTripleCentralizer)?;
            let mut all = true;
            for b in ltc.basis() {
                let phi = LinearOperator::from_vec(g.dim(), b)?;
                all &= crate::properness::decompose_proper(g, &phi)?.is_some();
            }
            Ok((r.holds() && all, format!("hypotheses {}, every basis element proper {all}", r.holds())))
        });
    }
    s
}

fn derivation_section<F: Field>(algebras: &[(String, Gma<F>)]) -> Section {
    let mut s = Section::new("Lie triple derivations");
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for (name, g) in algebras {
        s.run(&format!("{name}: decomposition of every basis Lie triple derivation"), || {
            let r = check_thm41_hypotheses(g, &[], &[])?;
            let ltd = solve_identity_space(g, IdentityKind::LieTripleDerivation)?;
            let mut ok = true;
            for b in ltd.basis() {
                ok &= decompose_ltd(g, &LinearOperator::from_vec(g.dim(), b)?)?.is_some();
            }
            Ok((r.satisfied() && ok, format!("hypotheses {}, ltd dim {}", r.satisfied(), ltd.dim())))
        });
        if g.dim() > 4 {
            continue;
        }
        s.run(&format!("{name}: generalized decompositions of random pairs"), || {
            let n = g.dim();
            let ltd = solve_identity_space(g, IdentityKind::LieTripleDerivation)?;
            let ltc = solve_identity_space(g, IdentityKind::LieTripleCentralizer)?;
            let mut pick = |space: &crate::linalg::Subspace<F>| -> Result<LinearOperator<F>> {
                let c: Vec<F> = (0..space.dim()).map(|_| F::from_int(rng.gen_range(-3..=3))).collect();
                LinearOperator::from_vec(n, &combine(n * n, &c, space.basis()))
            };
            let mut ok = 0;
            let pairs = 5;
            for _ in 0..pairs {
                let xi = pick(&ltd)?;
                let big = xi.add(&pick(&ltc)?);
                if let GltdOutcome::Decomposed(d) = decompose_generalized_ltd(g, &big, &xi)? {
                    ok += usize::from(d.certified && d.transcript.holds());
                }
            }
            Ok((ok == pairs, format!("{ok} of {pairs} decomposed")))
        });
    }
    s
}

fn lattice_section<F: Field>() -> Section {
    let mut s = Section::new("inclusions among centralizer spaces");
    let mut algebras: Vec<(String, crate::algebra::StructureConstants<F>)> =
        catalog::unital_gmas::<F>().into_iter().map(|(n, g)| (n, g.algebra().clone())).collect();
    algebras.push(("example_1_2".into(), catalog::example_1_2::<F>().gma.algebra().clone()));
    algebras.push(("dual_numbers_on_line".into(), catalog::dual_numbers_on_line::<F>().algebra().clone()));
    for (name, alg) in algebras {
        s.run(&name, || {
            let ltc = solve_identity_space(&alg, IdentityKind::LieTripleCentralizer)?;
            let lc = solve_identity_space(&alg, IdentityKind::LieCentralizer)?;
            let jc = solve_identity_space(&alg, IdentityKind::JordanCentralizer)?;
            let ok = ltc.contains(&lc)? && ltc.contains(&jc)?;
            Ok((ok, format!("lc {} <= ltc {}, jc {} <= ltc", lc.dim(), ltc.dim(), jc.dim())))
        });
    }
    s
}

/// Runs the worked example and every audit.
pub fn verify_paper_with<F: Field>() -> RunReport {
    let mut algebras = catalog::unital_gmas::<F>();
    algebras.extend(catalog::random_contexts::<F>(2024, 20));
    let matrix = matrix_algebras::<F>();
    let mut input_hashes = BTreeMap::new();
    input_hashes.insert("example_1_2".to_string(), content_hash(catalog::example_1_2::<F>().gma.algebra()));
    for (name, g) in catalog::unital_gmas::<F>() {
        input_hashes.insert(name, content_hash(g.algebra()));
    }
    let sections = vec![
        example_section::<F>(),
        block_form_section(&algebras),
        center_section(&algebras),
        properness_section(&catalog::unital_gmas::<F>()),
        sufficient_section(&matrix),
        derivation_section(&matrix),
        lattice_section::<F>(),
    ];
    RunReport { command: "verify-paper".into(), input_hashes, sections }
}

pub fn verify_paper() -> RunReport {
    verify_paper_with::<crate::Rational>()
}
