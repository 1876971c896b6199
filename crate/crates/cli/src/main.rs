use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use lietriple::catalog::{self, CatalogAlgebra};
use lietriple::centralizers::{block_decompose, solve_identity_space, verify_thm31_conditions, ConditionReport, IdentityKind};
use lietriple::derivations::{check_thm41_hypotheses, decompose_generalized_ltd, GltdOutcome, Thm41Report};
use lietriple::io::{content_hash, format_matrix, format_vec, read_operator, read_vectors, AlgebraDoc, OperatorDoc};
use lietriple::properness::{
    check_cor36_hypotheses, is_proper_direct_with_probes, is_proper_thm33, DirectVerdict, ProperVerdict,
    PropernessCertificate,
};
use lietriple::{Error, Field, Gma, LinearOperator, Rational};

type Alg = CatalogAlgebra<Rational>;

#[derive(Parser)]
#[command(name = "lietriple", version, about = "Lie triple centralizers and derivations on generalized matrix algebras")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Dimension and canonical basis of a solution space.
    Solve {
        algebra: String,
        #[arg(long, value_parser = parse_kind)]
        identity: IdentityKind,
    },
    /// Decide whether a Lie triple centralizer is proper.
    Proper {
        algebra: String,
        operator: PathBuf,
        /// Elements to try first as obstruction witnesses.
        #[arg(long)]
        probes: Option<PathBuf>,
    },
    /// Block decomposition of an operator, or the decomposition of a
    /// generalized Lie triple derivation when `--xi` is given.
    Decompose {
        algebra: String,
        operator: PathBuf,
        #[arg(long)]
        xi: Option<PathBuf>,
    },
    /// Report the sufficient conditions for properness and the hypotheses of
    /// the derivation decomposition.
    Hypotheses {
        algebra: String,
        #[arg(long)]
        candidates_m0: Option<PathBuf>,
        #[arg(long)]
        candidates_n0: Option<PathBuf>,
    },
    /// Reproduce the worked example and run the audits over the catalog.
    VerifyPaper,
    /// Write an algebra document, or an operator file with `--operator`.
    ///
    /// Operators: `identity`, `zero`, `phi` (the named map of `example_1_2`
    /// or `improper_incidence`), or `<kind>:<k>` for the k-th basis element of
    /// a solution space.
    Export {
        algebra: String,
        #[arg(long)]
        operator: Option<String>,
    },
    /// List catalog names.
    Catalog,
}

fn parse_kind(s: &str) -> Result<IdentityKind, String> {
    s.parse::<IdentityKind>().map_err(|e| e.to_string())
}

/// A failure carrying its exit status.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse(_)
            | Error::HashMismatch { .. }
            | Error::DimensionMismatch { .. }
            | Error::Shape(_)
            | Error::BlockStructure(_)
            | Error::NotAssociative { .. }
            | Error::NotGma => 2,
            _ => 1,
        };
        Failure { code, message: e.to_string() }
    }
}

fn input(message: impl Into<String>) -> Failure {
    Failure { code: 2, message: message.into() }
}

struct Out {
    format: Format,
    text: String,
    json: Value,
    code: u8,
}

fn resolve(spec: &str) -> Result<Alg, Failure> {
    Ok(lietriple::io::resolve_algebra(spec)?)
}

fn require_gma(a: &Alg) -> Result<&Gma, Failure> {
    a.gma.as_ref().ok_or_else(|| input(format!("{} has no block structure", a.name)))
}

fn elem(a: &Alg, x: &[Rational]) -> String {
    a.algebra.format_element(x)
}

fn op_text(a: &Alg, op: &LinearOperator) -> String {
    if op.is_zero() {
        return "0".into();
    }
    let labels = a.algebra.labels();
    let parts: Vec<String> = (0..op.dim())
        .filter(|&j| op.image_of_basis(j).iter().any(|x| *x != Rational::from_int(0)))
        .map(|j| format!("{} -> {}", labels[j], elem(a, &op.image_of_basis(j))))
        .collect();
    format!("{{{}}}", parts.join("; "))
}

fn report_json(r: &ConditionReport) -> Value {
    Value::Array(
        r.checks
            .iter()
            .map(|c| json!({"name": c.name, "holds": c.holds, "witness": c.witness}))
            .collect(),
    )
}

fn report_text(r: &ConditionReport) -> String {
    r.checks
        .iter()
        .map(|c| {
            let mark = if c.holds { "pass" } else { "FAIL" };
            match &c.witness {
                Some(w) => format!("  [{mark}] {} ({w})\n", c.name),
                None => format!("  [{mark}] {}\n", c.name),
            }
        })
        .collect()
}

fn certificate_json(cert: &PropernessCertificate<Rational>) -> Value {
    json!({
        "lambda": format_vec(&cert.lambda),
        "chi": format_matrix(cert.chi.matrix()),
        "alpha_bar": cert.alpha_bar.as_ref().map(format_matrix),
        "beta_bar": cert.beta_bar.as_ref().map(format_matrix),
        "transcript": report_json(&cert.transcript),
    })
}

fn solve(a: &Alg, kind: IdentityKind) -> Result<(String, Value), Failure> {
    let space = match &a.gma {
        Some(g) => solve_identity_space(g, kind)?,
        None => solve_identity_space(&a.algebra, kind)?,
    };
    let mut text = format!("dim {}\n", space.dim());
    for (i, b) in space.basis().iter().enumerate() {
        let op = LinearOperator::from_vec(a.algebra.dim(), b)?;
        text.push_str(&format!("{i}: {}\n", op_text(a, &op)));
    }
    let basis: Vec<Vec<String>> = space.basis().iter().map(|b| format_vec(b)).collect();
    Ok((text, json!({"identity": kind.code(), "dim": space.dim(), "basis": basis})))
}

fn default_probes(a: &Alg) -> Vec<Vec<Rational>> {
    if a.name == "example_1_2" {
        vec![catalog::example_1_2::<Rational>().a0]
    } else {
        Vec::new()
    }
}

fn proper(a: &Alg, op: &LinearOperator, probes: Vec<Vec<Rational>>) -> Result<(String, Value), Failure> {
    let block_route = a.gma.as_ref().filter(|g| {
        g.is_unital() && lietriple::gma::check_annihilating_conditions(g).holds()
    });
    if let Some(g) = block_route {
        return Ok(match is_proper_thm33(g, op)? {
            ProperVerdict::Proper(cert) => (
                format!(
                    "PROPER lambda={} chi={}\n{}",
                    elem(a, &cert.lambda),
                    op_text(a, &cert.chi),
                    report_text(&cert.transcript)
                ),
                json!({"verdict": "proper", "route": "block", "certificate": certificate_json(&cert)}),
            ),
            ProperVerdict::NotProper(f) => {
                let what = if f.side == lietriple::gma::Block::A { "alpha4(1_A)" } else { "beta1(1_B)" };
                let target = if f.side == lietriple::gma::Block::A { "pi_B(Z)" } else { "pi_A(Z)" };
                (
                    format!("NOT PROPER\n  {what} = {:?} is not in {target}\n", format_vec(&f.witness)),
                    json!({
                        "verdict": "not proper",
                        "route": "block",
                        "side": f.side.to_string(),
                        "witness": format_vec(&f.witness),
                        "subspace": f.subspace.basis().iter().map(|v| format_vec(v)).collect::<Vec<_>>(),
                    }),
                )
            }
        });
    }
    Ok(match is_proper_direct_with_probes(&a.algebra, op, &probes)? {
        DirectVerdict::Proper(cert) => (
            format!(
                "PROPER lambda={} chi={}\n{}",
                elem(a, &cert.lambda),
                op_text(a, &cert.chi),
                report_text(&cert.transcript)
            ),
            json!({"verdict": "proper", "route": "direct", "certificate": certificate_json(&cert)}),
        ),
        DirectVerdict::Infeasible(inf) => {
            let (text, witness) = match &inf.witness {
                Some((x, y)) => (
                    format!("  phi({}) = {} is not in Z + Z*x\n", elem(a, x), elem(a, y)),
                    json!({"element": format_vec(x), "image": format_vec(y)}),
                ),
                None => ("  no single-element obstruction found\n".to_string(), Value::Null),
            };
            (
                format!("NOT PROPER\n{text}"),
                json!({"verdict": "not proper", "route": "direct", "witness": witness, "center_dim": inf.center.dim()}),
            )
        }
    })
}

fn decompose(a: &Alg, op: &LinearOperator, xi: Option<&LinearOperator>) -> Result<(String, Value, u8), Failure> {
    let g = require_gma(a)?;
    let Some(xi) = xi else {
        let d = block_decompose(g, op)?;
        let comps = d.components();
        let named = [
            ("alpha1", &comps.a_to_a),
            ("beta1", &comps.b_to_a),
            ("tau2", &comps.m_to_m),
            ("gamma3", &comps.n_to_n),
            ("alpha4", &comps.a_to_b),
            ("beta4", &comps.b_to_b),
        ];
        let mut text = String::new();
        let mut obj = serde_json::Map::new();
        for (name, m) in named {
            text.push_str(&format!("{name} = {:?}\n", format_matrix(m)));
            obj.insert(name.into(), json!(format_matrix(m)));
        }
        let mut report = Value::Null;
        if g.is_unital() {
            let r = verify_thm31_conditions(g, &d)?;
            text.push_str(&format!("block-form conditions: {}\n", if r.holds() { "hold" } else { "fail" }));
            text.push_str(&report_text(&r));
            report = report_json(&r);
        }
        obj.insert("conditions".into(), report);
        return Ok((text, Value::Object(obj), 0));
    };
    match decompose_generalized_ltd(g, op, xi)? {
        GltdOutcome::Decomposed(d) => {
            let text = format!(
                "GLTD DECOMPOSITION ({})\ndelta = {}\nd = {}\npsi = {}\nlambda = {}\n{}",
                d.label(),
                op_text(a, &d.delta),
                op_text(a, &d.d),
                op_text(a, &d.psi),
                elem(a, &d.lambda),
                report_text(&d.transcript)
            );
            let j = json!({
                "label": d.label(),
                "certified": d.certified,
                "delta": format_matrix(d.delta.matrix()),
                "d": format_matrix(d.d.matrix()),
                "psi": format_matrix(d.psi.matrix()),
                "lambda": format_vec(&d.lambda),
                "transcript": report_json(&d.transcript),
            });
            Ok((text, j, 0))
        }
        GltdOutcome::ImproperDifference => {
            Ok(("INFEASIBLE: Lambda - xi is not proper\n".into(), json!({"infeasible": "improper difference"}), 1))
        }
        GltdOutcome::LtdInfeasible => Ok((
            "INFEASIBLE: xi is not a sum of a derivation, a singular Jordan derivation and a central map\n".into(),
            json!({"infeasible": "ltd"}),
            1,
        )),
    }
}

fn thm41_json(r: &Thm41Report<Rational>) -> Value {
    let mut obj = serde_json::Map::new();
    for (k, v) in r.entries() {
        obj.insert(k.into(), json!(v.to_string()));
    }
    obj.insert("c_candidate".into(), json!(r.c_candidate.as_deref().map(format_vec)));
    obj.insert("d_candidate".into(), json!(r.d_candidate.as_deref().map(format_vec)));
    obj.insert("two_torsion_free".into(), json!(r.two_torsion_free));
    obj.insert("satisfied".into(), json!(r.satisfied()));
    Value::Object(obj)
}

fn hypotheses(a: &Alg, m0: Vec<Vec<Rational>>, n0: Vec<Vec<Rational>>) -> Result<(String, Value), Failure> {
    let g = require_gma(a)?;
    let c = check_cor36_hypotheses(g)?;
    let t = check_thm41_hypotheses(g, &m0, &n0)?;
    let mut text = String::from("sufficient conditions for properness\n");
    text.push_str(&format!(
        "  (i)  pi_B(Z) = Z(B): {}, [[A,A],A] = A: {}\n",
        c.side_i.center_projection_full, c.side_i.double_commutators_span
    ));
    text.push_str(&format!(
        "  (ii) pi_A(Z) = Z(A): {}, [[B,B],B] = B: {}\n",
        c.side_ii.center_projection_full, c.side_ii.double_commutators_span
    ));
    text.push_str(&format!("  every Lie triple centralizer is proper: {}\n", c.holds()));
    text.push_str("derivation decomposition hypotheses\n");
    for (k, v) in t.entries() {
        text.push_str(&format!("  ({k}) {v}\n"));
    }
    if let Some(m) = &t.c_candidate {
        text.push_str(&format!("  m0 = {:?}\n", format_vec(m)));
    }
    if let Some(n) = &t.d_candidate {
        text.push_str(&format!("  n0 = {:?}\n", format_vec(n)));
    }
    text.push_str(&format!("  satisfied: {}\n", t.satisfied()));
    let side = |s: &lietriple::properness::SideReport| {
        json!({"center_projection_full": s.center_projection_full, "double_commutators_span": s.double_commutators_span})
    };
    let j = json!({
        "cor36": {"i": side(&c.side_i), "ii": side(&c.side_ii), "holds": c.holds()},
        "thm41": thm41_json(&t),
    });
    Ok((text, j))
}

fn export(a: &Alg, which: Option<&str>) -> Result<String, Failure> {
    let Some(which) = which else {
        let doc = match &a.gma {
            Some(g) => AlgebraDoc::from_gma(g),
            None => AlgebraDoc::from_algebra(&a.algebra, None),
        };
        return Ok(serde_json::to_string_pretty(&doc).expect("serializes"));
    };
    let n = a.algebra.dim();
    let op = match which {
        "identity" => LinearOperator::identity(n),
        "zero" => LinearOperator::zero(n),
        "phi" => match a.name.as_str() {
            "example_1_2" => catalog::example_1_2::<Rational>().phi,
            "improper_incidence" => catalog::improper_incidence::<Rational>().1,
            _ => return Err(input(format!("{} has no named operator", a.name))),
        },
        other => {
            let (kind, k) = other.split_once(':').ok_or_else(|| input(format!("unknown operator '{other}'")))?;
            let kind = parse_kind(kind).map_err(input)?;
            let k: usize = k.parse().map_err(|_| input(format!("bad index in '{other}'")))?;
            let space = match &a.gma {
                Some(g) => solve_identity_space(g, kind)?,
                None => solve_identity_space(&a.algebra, kind)?,
            };
            let v = space.basis().get(k).ok_or_else(|| input(format!("{kind} space has dimension {}", space.dim())))?;
            LinearOperator::from_vec(n, v)?
        }
    };
    Ok(serde_json::to_string_pretty(&OperatorDoc::new(&a.algebra, &op)).expect("serializes"))
}

fn run(cli: &Cli) -> Result<Out, Failure> {
    let format = cli.format;
    let out = |text: String, mut body: Value, command: Value, a: Option<&Alg>, code: u8| {
        if let Value::Object(map) = &mut body {
            map.insert("command".into(), command);
            if let Some(a) = a {
                map.insert("algebra".into(), json!(a.name));
                map.insert("algebra_hash".into(), json!(content_hash(&a.algebra)));
            }
            map.insert("exit".into(), json!(code));
        }
        Out { format, text, json: body, code }
    };
    match &cli.command {
        Command::Solve { algebra, identity } => {
            let a = resolve(algebra)?;
            let (text, j) = solve(&a, *identity)?;
            Ok(out(text, j, json!("solve"), Some(&a), 0))
        }
        Command::Proper { algebra, operator, probes } => {
            let a = resolve(algebra)?;
            let op = read_operator(operator, &a.algebra)?;
            let mut p = match probes {
                Some(path) => read_vectors(path)?,
                None => Vec::new(),
            };
            p.extend(default_probes(&a));
            let (text, j) = proper(&a, &op, p)?;
            Ok(out(text, j, json!("proper"), Some(&a), 0))
        }
        Command::Decompose { algebra, operator, xi } => {
            let a = resolve(algebra)?;
            let op = read_operator(operator, &a.algebra)?;
            let xi = match xi {
                Some(path) => Some(read_operator(path, &a.algebra)?),
                None => None,
            };
            let (text, j, code) = decompose(&a, &op, xi.as_ref())?;
            Ok(out(text, j, json!("decompose"), Some(&a), code))
        }
        Command::Hypotheses { algebra, candidates_m0, candidates_n0 } => {
            let a = resolve(algebra)?;
            let read = |p: &Option<PathBuf>| -> Result<Vec<Vec<Rational>>, Failure> {
                Ok(match p {
                    Some(path) => read_vectors(path)?,
                    None => Vec::new(),
                })
            };
            let (text, j) = hypotheses(&a, read(candidates_m0)?, read(candidates_n0)?)?;
            Ok(out(text, j, json!("hypotheses"), Some(&a), 0))
        }
        Command::VerifyPaper => {
            let r = lietriple::reproduce::verify_paper();
            let code = if r.passed() { 0 } else { 1 };
            let json: Value = serde_json::to_value(&r).expect("report serializes");
            Ok(Out { format, text: r.to_text(), json, code })
        }
        Command::Export { algebra, operator } => {
            let a = resolve(algebra)?;
            let text = export(&a, operator.as_deref())?;
            // documents are JSON whatever the format flag says
            Ok(Out { format: Format::Text, text: text + "\n", json: Value::Null, code: 0 })
        }
        Command::Catalog => {
            let text = catalog::CATALOG_NAMES.iter().map(|n| format!("{n}\n")).collect();
            Ok(out(text, json!({"names": catalog::CATALOG_NAMES}), json!("catalog"), None, 0))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(o) => {
            match o.format {
                Format::Text => print!("{}", o.text),
                Format::Json => println!("{}", serde_json::to_string_pretty(&o.json).expect("serializes")),
            }
            ExitCode::from(o.code)
        }
        Err(f) => {
            if cli.format == Format::Json {
                println!("{}", json!({"error": f.message, "exit": f.code}));
            }
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
