//! JSON documents for algebras, Morita contexts and operators.
//!
//! Scalars are written as `"p/q"` strings (or `"p"` for integers). Operator
//! files carry the content hash of the algebra they were written against, so
//! an operator applied to a different basis fails loudly.

use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::algebra::StructureConstants;
use crate::catalog::{self, CatalogAlgebra};
use crate::error::{Error, Result};
use crate::gma::{assemble, Bimodule, Gma, MoritaContext};
use crate::linalg::Matrix;
use crate::operator::LinearOperator;
use crate::scalar::Field;

/// `table[i][j][k]` is the coefficient of `e_k` in `e_i·e_j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraDoc {
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
    pub table: Vec<Vec<Vec<String>>>,
    /// Block sizes `[A, M, N, B]` when the basis is block ordered.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub blocks: Option<[usize; 4]>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BimoduleDoc {
    pub dim: usize,
    pub left: Vec<Vec<Vec<String>>>,
    pub right: Vec<Vec<Vec<String>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ContextDoc {
    #[serde(rename = "A")]
    pub a: AlgebraDoc,
    #[serde(rename = "B")]
    pub b: AlgebraDoc,
    #[serde(rename = "M")]
    pub m: BimoduleDoc,
    #[serde(rename = "N")]
    pub n: BimoduleDoc,
    pub zeta: Vec<Vec<Vec<String>>>,
    pub psi: Vec<Vec<Vec<String>>>,
}

/// `matrix` is written row by row; column `j` is the image of `e_j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OperatorDoc {
    pub algebra_hash: String,
    pub matrix: Vec<Vec<String>>,
}

fn parse_scalar<F: Field>(s: &str) -> Result<F> {
    F::parse_exact(s).ok_or_else(|| Error::Parse(format!("not an exact rational: '{s}'")))
}

fn parse_vec<F: Field>(v: &[String]) -> Result<Vec<F>> {
    v.iter().map(|s| parse_scalar(s)).collect()
}

fn parse_cube<F: Field>(c: &[Vec<Vec<String>>]) -> Result<Vec<Vec<Vec<F>>>> {
    c.iter().map(|s| s.iter().map(|v| parse_vec(v)).collect()).collect()
}

pub fn format_vec<F: Field>(v: &[F]) -> Vec<String> {
    v.iter().map(|x| x.to_string()).collect()
}

fn format_cube<F: Field>(c: &[Vec<Vec<F>>]) -> Vec<Vec<Vec<String>>> {
    c.iter().map(|s| s.iter().map(|v| format_vec(v)).collect()).collect()
}

pub fn format_matrix<F: Field>(m: &Matrix<F>) -> Vec<Vec<String>> {
    m.to_rows().iter().map(|r| format_vec(r)).collect()
}

impl AlgebraDoc {
    pub fn from_algebra<F: Field>(alg: &StructureConstants<F>, blocks: Option<[usize; 4]>) -> Self {
        AlgebraDoc { dim: alg.dim(), labels: Some(alg.labels().to_vec()), table: format_cube(&alg.table()), blocks }
    }

    pub fn from_gma<F: Field>(g: &Gma<F>) -> Self {
        Self::from_algebra(g.algebra(), Some(g.block_dims()))
    }

    /// Validates and builds the algebra, with its block structure if declared.
    pub fn build<F: Field>(&self) -> Result<(StructureConstants<F>, Option<Gma<F>>)> {
        let mut alg = StructureConstants::new(self.dim, parse_cube(&self.table)?)?;
        if let Some(labels) = &self.labels {
            alg = alg.with_labels(labels.clone())?;
        }
        let gma = match self.blocks {
            Some(dims) => Some(Gma::from_algebra(alg.clone(), dims)?),
            None => None,
        };
        Ok((alg, gma))
    }
}

impl BimoduleDoc {
    pub fn from_bimodule<F: Field>(m: &Bimodule<F>) -> Self {
        BimoduleDoc { dim: m.dim, left: format_cube(&m.left), right: format_cube(&m.right) }
    }

    pub fn build<F: Field>(&self) -> Result<Bimodule<F>> {
        Ok(Bimodule { dim: self.dim, left: parse_cube(&self.left)?, right: parse_cube(&self.right)? })
    }
}

impl ContextDoc {
    pub fn from_context<F: Field>(ctx: &MoritaContext<F>) -> Self {
        ContextDoc {
            a: AlgebraDoc::from_algebra(&ctx.a, None),
            b: AlgebraDoc::from_algebra(&ctx.b, None),
            m: BimoduleDoc::from_bimodule(&ctx.m),
            n: BimoduleDoc::from_bimodule(&ctx.n),
            zeta: format_cube(&ctx.zeta),
            psi: format_cube(&ctx.psi),
        }
    }

    pub fn build<F: Field>(&self) -> Result<Gma<F>> {
        let ctx = MoritaContext {
            a: self.a.build()?.0,
            b: self.b.build()?.0,
            m: self.m.build()?,
            n: self.n.build()?,
            zeta: parse_cube(&self.zeta)?,
            psi: parse_cube(&self.psi)?,
        };
        assemble(&ctx)
    }
}

/// SHA-256 over the dimension and the nonzero structure constants in
/// index order. Labels and block sizes do not enter.
pub fn content_hash<F: Field>(alg: &StructureConstants<F>) -> String {
    let mut h = Sha256::new();
    h.update(format!("dim={};", alg.dim()));
    let n = alg.dim();
    for i in 0..n {
        for j in 0..n {
            for (k, c) in alg.structure_constant(i, j).iter().enumerate() {
                if !c.is_zero() {
                    h.update(format!("{i},{j},{k}={c};"));
                }
            }
        }
    }
    hex::encode(h.finalize())
}

impl OperatorDoc {
    pub fn new<F: Field>(alg: &StructureConstants<F>, op: &LinearOperator<F>) -> Self {
        OperatorDoc { algebra_hash: content_hash(alg), matrix: format_matrix(op.matrix()) }
    }

    /// Parses the matrix after checking it was written for `alg`.
    pub fn build<F: Field>(&self, alg: &StructureConstants<F>) -> Result<LinearOperator<F>> {
        let expected = content_hash(alg);
        if self.algebra_hash != expected {
            return Err(Error::HashMismatch { expected, found: self.algebra_hash.clone() });
        }
        let rows: Vec<Vec<F>> = self.matrix.iter().map(|r| parse_vec(r)).collect::<Result<_>>()?;
        if rows.len() != alg.dim() {
            return Err(Error::DimensionMismatch { expected: alg.dim(), found: rows.len() });
        }
        LinearOperator::new(Matrix::from_rows(alg.dim(), rows)?)
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))
}

fn from_json<T: for<'de> Deserialize<'de>>(text: &str, what: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse(format!("invalid {what}: {e}")))
}

pub fn read_operator<F: Field>(path: &Path, alg: &StructureConstants<F>) -> Result<LinearOperator<F>> {
    from_json::<OperatorDoc>(&read(path)?, "operator file")?.build(alg)
}

pub fn write_operator<F: Field>(path: &Path, alg: &StructureConstants<F>, op: &LinearOperator<F>) -> Result<()> {
    let text = serde_json::to_string_pretty(&OperatorDoc::new(alg, op)).expect("documents serialize");
    std::fs::write(path, text + "\n").map_err(|e| Error::Parse(format!("cannot write {}: {e}", path.display())))
}

/// Reads a list of vectors, such as candidate linking elements: a JSON array
/// of arrays of scalar strings.
pub fn read_vectors<F: Field>(path: &Path) -> Result<Vec<Vec<F>>> {
    let raw: Vec<Vec<String>> = from_json(&read(path)?, "vector list")?;
    raw.iter().map(|v| parse_vec(v)).collect()
}

/// Loads an algebra document or a context document from a file.
pub fn read_algebra_file<F: Field>(path: &Path) -> Result<CatalogAlgebra<F>> {
    let text = read(path)?;
    let value: serde_json::Value = from_json(&text, "JSON")?;
    let name = path.display().to_string();
    if value.get("A").is_some() {
        let g: Gma<F> = from_json::<ContextDoc>(&text, "context document")?.build()?;
        return Ok(CatalogAlgebra { name, algebra: g.algebra().clone(), gma: Some(g) });
    }
    let (algebra, gma) = from_json::<AlgebraDoc>(&text, "algebra document")?.build()?;
    Ok(CatalogAlgebra { name, algebra, gma })
}

fn split_args(inner: &str) -> Vec<&str> {
    inner.split(',').map(str::trim).collect()
}

/// Resolves an algebra argument: a catalog name, `tri(A, M, B)` or `m2(A)`
/// with document paths, or the path of an algebra or context document.
pub fn resolve_algebra<F: Field>(spec: &str) -> Result<CatalogAlgebra<F>> {
    let spec = spec.trim();
    if let Some(inner) = spec.strip_prefix("tri(").and_then(|s| s.strip_suffix(')')) {
        let args = split_args(inner);
        let [a, m, b] = args[..] else {
            return Err(Error::Parse("tri takes three document paths".into()));
        };
        let a = read_algebra_file::<F>(Path::new(a))?.algebra;
        let b = read_algebra_file::<F>(Path::new(b))?.algebra;
        let m: Bimodule<F> = from_json::<BimoduleDoc>(&read(Path::new(m))?, "bimodule document")?.build()?;
        let g = catalog::tri(&a, &m, &b)?;
        return Ok(CatalogAlgebra { name: spec.into(), algebra: g.algebra().clone(), gma: Some(g) });
    }
    if let Some(inner) = spec.strip_prefix("m2(").and_then(|s| s.strip_suffix(')')) {
        let a = read_algebra_file::<F>(Path::new(inner.trim()))?.algebra;
        let g = catalog::m2(&a);
        return Ok(CatalogAlgebra { name: spec.into(), algebra: g.algebra().clone(), gma: Some(g) });
    }
    let path = Path::new(spec);
    if path.extension().is_some_and(|e| e == "json") || path.is_file() {
        return read_algebra_file(path);
    }
    catalog::lookup(spec)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    type Q = BigRational;

    #[test]
    fn algebra_doc_round_trip() {
        let g = catalog::full_matrix::<Q>(2).gma.unwrap();
        let doc = AlgebraDoc::from_gma(&g);
        let text = serde_json::to_string(&doc).unwrap();
        let back: AlgebraDoc = serde_json::from_str(&text).unwrap();
        let (alg, gma) = back.build::<Q>().unwrap();
        assert_eq!(content_hash(&alg), content_hash(g.algebra()));
        assert_eq!(gma.unwrap().block_dims(), g.block_dims());
    }

    #[test]
    fn context_doc_round_trip() {
        let g = catalog::dual_numbers_faithful::<Q>();
        let doc = ContextDoc::from_context(&g.context());
        let rebuilt: Gma<Q> = doc.build().unwrap();
        assert_eq!(content_hash(rebuilt.algebra()), content_hash(g.algebra()));
    }

    #[test]
    fn operator_hash_is_checked() {
        let t2 = catalog::upper_triangular::<Q>(2).algebra;
        let m2 = catalog::full_matrix::<Q>(2).algebra;
        let doc = OperatorDoc::new(&t2, &LinearOperator::identity(3));
        assert_eq!(doc.build(&t2).unwrap(), LinearOperator::identity(3));
        assert!(matches!(doc.build(&m2), Err(Error::HashMismatch { .. })));
    }

    #[test]
    fn hash_ignores_labels() {
        let a = catalog::dual_numbers::<Q>();
        let b = a.clone().with_labels(vec!["u".into(), "v".into()]).unwrap();
        assert_eq!(content_hash(&a), content_hash(&b));
        assert_ne!(content_hash(&a), content_hash(&catalog::split_pair::<Q>()));
    }

    #[test]
    fn bad_scalars_are_parse_errors() {
        let doc = AlgebraDoc { dim: 1, labels: None, table: vec![vec![vec!["x".into()]]], blocks: None };
        assert!(matches!(doc.build::<Q>(), Err(Error::Parse(_))));
        assert!(matches!(resolve_algebra::<Q>("no_such_algebra"), Err(Error::Parse(_))));
    }
}
