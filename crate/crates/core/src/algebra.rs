//! Finite-dimensional associative algebras given by structure constants.

use crate::error::{Error, Result};
use crate::linalg::{kernel, unit_vector, Matrix, RowReducer, Subspace};
use crate::scalar::Field;

/// Multiplication table `eᵢ·eⱼ = Σₖ c[i][j][k]·eₖ`.
///
/// Associativity is verified on every basis triple at construction, so every
/// value of this type is an associative algebra.
#[derive(Clone, PartialEq, Eq)]
pub struct StructureConstants<F> {
    dim: usize,
    labels: Vec<String>,
    /// `products[i * dim + j]` = nonzero coordinates of `eᵢ·eⱼ`.
    products: Vec<Vec<(usize, F)>>,
}

/// Coordinates of an algebra element; the algebra is carried by context.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Element<F> {
    pub coords: Vec<F>,
}

impl<F: Field> Element<F> {
    pub fn new(coords: Vec<F>) -> Self {
        Element { coords }
    }

    pub fn zero(dim: usize) -> Self {
        Element { coords: vec![F::zero(); dim] }
    }

    pub fn basis(dim: usize, i: usize) -> Self {
        Element { coords: unit_vector(dim, i) }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn add(&self, other: &Self) -> Self {
        Element { coords: add_vec(&self.coords, &other.coords) }
    }

    pub fn sub(&self, other: &Self) -> Self {
        Element { coords: sub_vec(&self.coords, &other.coords) }
    }

    pub fn scale(&self, s: &F) -> Self {
        Element { coords: self.coords.iter().map(|c| c.clone() * s.clone()).collect() }
    }
}

pub(crate) fn add_vec<F: Field>(x: &[F], y: &[F]) -> Vec<F> {
    x.iter().zip(y).map(|(a, b)| a.clone() + b.clone()).collect()
}

pub(crate) fn sub_vec<F: Field>(x: &[F], y: &[F]) -> Vec<F> {
    x.iter().zip(y).map(|(a, b)| a.clone() - b.clone()).collect()
}

pub(crate) fn is_zero_vec<F: Field>(x: &[F]) -> bool {
    x.iter().all(|v| v.is_zero())
}

impl<F: Field> StructureConstants<F> {
    /// Builds an algebra from a dense table `table[i][j][k]`.
    pub fn new(dim: usize, table: Vec<Vec<Vec<F>>>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::Shape("algebra dimension must be at least 1".into()));
        }
        if table.len() != dim {
            return Err(Error::DimensionMismatch { expected: dim, found: table.len() });
        }
        let mut products = Vec::with_capacity(dim * dim);
        for row in &table {
            if row.len() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: row.len() });
            }
            for v in row {
                if v.len() != dim {
                    return Err(Error::DimensionMismatch { expected: dim, found: v.len() });
                }
                products.push(sparse(v));
            }
        }
        Self::from_sparse(dim, products)
    }

    pub(crate) fn from_sparse(dim: usize, products: Vec<Vec<(usize, F)>>) -> Result<Self> {
        let alg = StructureConstants { dim, labels: default_labels(dim), products };
        alg.check_associative()?;
        Ok(alg)
    }

    /// Builds from a closure giving `eᵢ·eⱼ` as a dense vector.
    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> Vec<F>) -> Result<Self> {
        let mut products = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                let v = f(i, j);
                if v.len() != dim {
                    return Err(Error::DimensionMismatch { expected: dim, found: v.len() });
                }
                products.push(sparse(&v));
            }
        }
        if dim == 0 {
            return Err(Error::Shape("algebra dimension must be at least 1".into()));
        }
        Self::from_sparse(dim, products)
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: labels.len() });
        }
        self.labels = labels;
        Ok(self)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Dense `c[i][j][·]`.
    pub fn structure_constant(&self, i: usize, j: usize) -> Vec<F> {
        let mut v = vec![F::zero(); self.dim];
        for (k, c) in &self.products[i * self.dim + j] {
            v[*k] = c.clone();
        }
        v
    }

    pub fn table(&self) -> Vec<Vec<Vec<F>>> {
        (0..self.dim)
            .map(|i| (0..self.dim).map(|j| self.structure_constant(i, j)).collect())
            .collect()
    }

    pub(crate) fn basis_product(&self, i: usize, j: usize) -> &[(usize, F)] {
        &self.products[i * self.dim + j]
    }

    fn check_associative(&self) -> Result<()> {
        let n = self.dim;
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let left = self.mul_vecs(&self.structure_constant(i, j), &unit_vector(n, k));
                    let right = self.mul_vecs(&unit_vector(n, i), &self.structure_constant(j, k));
                    if left != right {
                        return Err(Error::NotAssociative { i, j, k });
                    }
                }
            }
        }
        Ok(())
    }

    /// Bilinear product of coordinate vectors. Panics on length mismatch.
    pub fn mul_vecs(&self, x: &[F], y: &[F]) -> Vec<F> {
        assert!(x.len() == self.dim && y.len() == self.dim, "coordinate length mismatch");
        let mut out = vec![F::zero(); self.dim];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let s = xi.clone() * yj.clone();
                for (k, c) in self.basis_product(i, j) {
                    out[*k] = out[*k].clone() + s.clone() * c.clone();
                }
            }
        }
        out
    }

    pub fn bracket_vecs(&self, x: &[F], y: &[F]) -> Vec<F> {
        sub_vec(&self.mul_vecs(x, y), &self.mul_vecs(y, x))
    }

    pub fn jordan_vecs(&self, x: &[F], y: &[F]) -> Vec<F> {
        add_vec(&self.mul_vecs(x, y), &self.mul_vecs(y, x))
    }

    pub fn double_bracket_vecs(&self, x: &[F], y: &[F], z: &[F]) -> Vec<F> {
        self.bracket_vecs(&self.bracket_vecs(x, y), z)
    }

    fn check(&self, x: &Element<F>) -> Result<()> {
        if x.dim() != self.dim {
            return Err(Error::AlgebraMismatch { left: self.dim, right: x.dim() });
        }
        Ok(())
    }

    pub fn multiply(&self, x: &Element<F>, y: &Element<F>) -> Result<Element<F>> {
        self.check(x)?;
        self.check(y)?;
        Ok(Element::new(self.mul_vecs(&x.coords, &y.coords)))
    }

    pub fn commutator(&self, x: &Element<F>, y: &Element<F>) -> Result<Element<F>> {
        self.check(x)?;
        self.check(y)?;
        Ok(Element::new(self.bracket_vecs(&x.coords, &y.coords)))
    }

    pub fn jordan_product(&self, x: &Element<F>, y: &Element<F>) -> Result<Element<F>> {
        self.check(x)?;
        self.check(y)?;
        Ok(Element::new(self.jordan_vecs(&x.coords, &y.coords)))
    }

    pub fn double_commutator(&self, x: &Element<F>, y: &Element<F>, z: &Element<F>) -> Result<Element<F>> {
        self.check(x)?;
        self.check(y)?;
        self.check(z)?;
        Ok(Element::new(self.double_bracket_vecs(&x.coords, &y.coords, &z.coords)))
    }

    /// Matrix of `y ↦ x·y`.
    pub fn left_mul_matrix(&self, x: &[F]) -> Matrix<F> {
        let mut m = Matrix::zeros(self.dim, self.dim);
        for j in 0..self.dim {
            let col = self.mul_vecs(x, &unit_vector(self.dim, j));
            for (k, v) in col.into_iter().enumerate() {
                m[(k, j)] = v;
            }
        }
        m
    }

    /// Matrix of `y ↦ y·x`.
    pub fn right_mul_matrix(&self, x: &[F]) -> Matrix<F> {
        let mut m = Matrix::zeros(self.dim, self.dim);
        for j in 0..self.dim {
            let col = self.mul_vecs(&unit_vector(self.dim, j), x);
            for (k, v) in col.into_iter().enumerate() {
                m[(k, j)] = v;
            }
        }
        m
    }

    /// Matrix of `y ↦ [y, x]`.
    pub fn ad_right_matrix(&self, x: &[F]) -> Matrix<F> {
        self.right_mul_matrix(x).sub(&self.left_mul_matrix(x))
    }

    /// Solves `u·eⱼ = eⱼ = eⱼ·u` for all `j`.
    pub fn find_unit(&self) -> Option<Element<F>> {
        let n = self.dim;
        let mut rows = Vec::with_capacity(2 * n * n);
        let mut rhs = Vec::with_capacity(2 * n * n);
        for j in 0..n {
            let l = self.right_mul_matrix(&unit_vector(n, j)); // u ↦ u·eⱼ
            let r = self.left_mul_matrix(&unit_vector(n, j)); // u ↦ eⱼ·u
            for k in 0..n {
                let target = if k == j { F::one() } else { F::zero() };
                rows.push(l.row(k).to_vec());
                rhs.push(target.clone());
                rows.push(r.row(k).to_vec());
                rhs.push(target);
            }
        }
        let m = Matrix::from_rows(n, rows).ok()?;
        crate::linalg::solve(&m, &rhs).ok()?.map(|s| Element::new(s.particular))
    }

    pub fn is_unital(&self) -> bool {
        self.find_unit().is_some()
    }

    /// Stacked commutation constraints `z ↦ [z, s]` over a spanning set.
    fn commutation_matrix<'a>(&self, spanning: impl IntoIterator<Item = &'a Vec<F>>) -> Matrix<F> {
        let mut rows = Vec::new();
        for s in spanning {
            rows.extend(self.ad_right_matrix(s).to_rows());
        }
        Matrix::from_rows(self.dim, rows).expect("commutation rows have algebra length")
    }

    pub fn center(&self) -> Subspace<F> {
        self.commutant(&Subspace::full(self.dim)).expect("full space matches ambient")
    }

    /// `{a : a·s = s·a for every s ∈ S}`.
    pub fn commutant(&self, s: &Subspace<F>) -> Result<Subspace<F>> {
        if s.ambient_dim() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: s.ambient_dim() });
        }
        if s.is_zero() {
            return Ok(Subspace::full(self.dim));
        }
        Ok(kernel(&self.commutation_matrix(s.basis())))
    }

    /// Span of `[[eᵢ, eⱼ], eₖ]` over all basis triples.
    pub fn double_commutator_span(&self) -> Subspace<F> {
        let n = self.dim;
        let mut r = RowReducer::new(n);
        for i in 0..n {
            for j in 0..n {
                let c = self.bracket_vecs(&unit_vector(n, i), &unit_vector(n, j));
                if is_zero_vec(&c) {
                    continue;
                }
                for k in 0..n {
                    r.push_dense(&self.bracket_vecs(&c, &unit_vector(n, k)));
                    if r.is_full_rank() {
                        return r.row_space();
                    }
                }
            }
        }
        r.row_space()
    }

    /// Span of `[eᵢ, eⱼ]`.
    pub fn commutator_span(&self) -> Subspace<F> {
        let n = self.dim;
        let vectors = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .map(|(i, j)| self.bracket_vecs(&unit_vector(n, i), &unit_vector(n, j)))
            .collect();
        Subspace::span_unchecked(n, vectors)
    }

    /// Largest two-sided ideal contained in the center.
    ///
    /// Iterates `V ← V ∩ {v : eᵢv ∈ V, veᵢ ∈ V ∀i}` from `V = Z`; each step
    /// either stabilizes or strictly lowers the dimension.
    pub fn largest_central_ideal(&self) -> Subspace<F> {
        let n = self.dim;
        let mut v = self.center();
        loop {
            let mut next = v.clone();
            for i in 0..n {
                let e = unit_vector(n, i);
                let left = v.preimage(&self.left_mul_matrix(&e)).expect("square map");
                let right = v.preimage(&self.right_mul_matrix(&e)).expect("square map");
                next = next.intersect(&left).and_then(|x| x.intersect(&right)).expect("same ambient");
            }
            if next.dim() == v.dim() {
                return v;
            }
            v = next;
        }
    }

    /// Structure constants in a new basis; `change` holds the new basis
    /// vectors as columns (old coordinates).
    pub fn change_basis(&self, change: &Matrix<F>) -> Result<Self> {
        if change.rows() != self.dim || change.cols() != self.dim {
            return Err(Error::Shape("change of basis must be square of algebra dimension".into()));
        }
        let inv = change.inverse().ok_or_else(|| Error::Shape("change of basis is singular".into()))?;
        let cols: Vec<Vec<F>> = (0..self.dim).map(|j| change.column(j)).collect();
        Self::from_fn(self.dim, |i, j| inv.mul_vec(&self.mul_vecs(&cols[i], &cols[j])))
    }

    /// Direct product `self × other` with basis `[self basis, other basis]`.
    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        let (n1, n2) = (self.dim, other.dim);
        let n = n1 + n2;
        let alg = Self::from_fn(n, |i, j| {
            let mut v = vec![F::zero(); n];
            if i < n1 && j < n1 {
                v[..n1].clone_from_slice(&self.structure_constant(i, j));
            } else if i >= n1 && j >= n1 {
                v[n1..].clone_from_slice(&other.structure_constant(i - n1, j - n1));
            }
            v
        })?;
        let labels = self.labels.iter().chain(&other.labels).cloned().collect();
        alg.with_labels(labels)
    }

    /// Renders an element as a labelled linear combination.
    pub fn format_element(&self, x: &[F]) -> String {
        format_combination(&self.labels, x)
    }
}

pub(crate) fn format_combination<F: Field>(labels: &[String], x: &[F]) -> String {
    let mut parts = Vec::new();
    for (c, l) in x.iter().zip(labels) {
        if c.is_zero() {
            continue;
        }
        let term = if c.is_one() {
            l.clone()
        } else if *c == -F::one() {
            format!("-{l}")
        } else {
            format!("{c}*{l}")
        };
        parts.push(term);
    }
    if parts.is_empty() {
        "0".to_string()
    } else {
        parts.join(" + ").replace("+ -", "- ")
    }
}

fn sparse<F: Field>(v: &[F]) -> Vec<(usize, F)> {
    v.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(k, c)| (k, c.clone())).collect()
}

fn default_labels(dim: usize) -> Vec<String> {
    (1..=dim).map(|i| format!("e{i}")).collect()
}

impl<F> std::fmt::Debug for StructureConstants<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "StructureConstants(dim {}, labels {:?})", self.dim, self.labels)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use num_rational::BigRational;
    use num_traits::Zero;
    use proptest::prelude::*;

    type Q = BigRational;

    fn q(v: i64) -> Q {
        Q::from_int(v)
    }

    fn e(n: usize, i: usize) -> Element<Q> {
        Element::basis(n, i)
    }

    fn field() -> StructureConstants<Q> {
        StructureConstants::new(1, vec![vec![vec![q(1)]]]).unwrap()
    }

    #[test]
    fn nilpotent_example_products() {
        let a = catalog::example_1_2_base::<Q>();
        // basis u1 = E12, u2 = E23, u3 = E13
        assert_eq!(a.multiply(&e(3, 0), &e(3, 1)).unwrap(), e(3, 2));
        assert!(a.multiply(&e(3, 1), &e(3, 0)).unwrap().is_zero());
        let x = Element::new(vec![q(2), q(-1), q(5)]);
        assert!(a.multiply(&x, &Element::zero(3)).unwrap().is_zero());
        assert!(matches!(a.multiply(&x, &e(2, 0)), Err(Error::AlgebraMismatch { .. })));
    }

    #[test]
    fn units() {
        let t2 = catalog::upper_triangular::<Q>(2).algebra;
        // e11 + e22 in the basis [e11, e12, e22]
        assert_eq!(t2.find_unit().unwrap().coords, vec![q(1), q(0), q(1)]);
        assert_eq!(field().find_unit().unwrap().coords, vec![q(1)]);
        assert!(catalog::example_1_2_base::<Q>().find_unit().is_none());
    }

    #[test]
    fn nilpotent_unit_system_is_inconsistent() {
        // Oracle: u·u1 = u1 needs a u1 coefficient in u·u1, but every product
        // lands in span{u3}; the equation for the u1 coordinate reads 0 = 1.
        let a = catalog::example_1_2_base::<Q>();
        for i in 0..3 {
            for j in 0..3 {
                assert!(a.structure_constant(i, j)[0].is_zero());
            }
        }
        assert!(a.find_unit().is_none());
    }

    #[test]
    fn commutator_identities() {
        let t2 = catalog::upper_triangular::<Q>(2).algebra;
        assert_eq!(t2.commutator(&e(3, 0), &e(3, 1)).unwrap(), e(3, 1));
        let m2 = catalog::full_matrix::<Q>(2).algebra;
        let x = Element::new(vec![q(1), q(2), q(-3), q(4)]);
        let z = Element::new(vec![q(0), q(1), q(1), q(7)]);
        let xx = m2.commutator(&x, &x).unwrap();
        assert!(m2.commutator(&xx, &z).unwrap().is_zero());
    }

    #[test]
    fn associativity_violation_is_located() {
        // e0·e0 = e1 but e1·e0 = 0 and e0·e1 = e0: (e0e0)e0 = 0 ≠ e0(e0e0) = e0
        let mut table = vec![vec![vec![q(0); 2]; 2]; 2];
        table[0][0][1] = q(1);
        table[0][1][0] = q(1);
        let err = StructureConstants::new(2, table).unwrap_err();
        assert_eq!(err, Error::NotAssociative { i: 0, j: 0, k: 0 });
    }

    #[test]
    fn centers() {
        let m2 = catalog::full_matrix::<Q>(2).algebra;
        let z = m2.center();
        assert_eq!(z.dim(), 1);
        // identity in basis [e11, e12, e21, e22]
        assert!(z.contains_vector(&[q(1), q(0), q(0), q(1)]));

        let t2 = catalog::upper_triangular::<Q>(2).algebra;
        assert_eq!(t2.center(), Subspace::span(3, vec![vec![q(1), q(0), q(1)]]).unwrap());

        let ex = catalog::example_1_2::<Q>();
        assert_eq!(ex.gma.algebra().center().dim(), 4);
    }

    #[test]
    fn commutants() {
        let m2 = catalog::full_matrix::<Q>(2).algebra;
        assert!(m2.commutant(&Subspace::zero(4)).unwrap().is_full());
        assert_eq!(m2.commutant(&Subspace::full(4)).unwrap(), m2.center());
        // Oracle: [x, e12] = 0 with x = (a, b, c, d) gives c = 0 and a = d.
        let s = Subspace::span(4, vec![vec![q(0), q(1), q(0), q(0)]]).unwrap();
        let expected =
            Subspace::span(4, vec![vec![q(1), q(0), q(0), q(1)], vec![q(0), q(1), q(0), q(0)]]).unwrap();
        assert_eq!(m2.commutant(&s).unwrap(), expected);
        assert!(m2.commutant(&Subspace::zero(3)).is_err());
    }

    #[test]
    fn double_commutator_spans() {
        let m2 = catalog::full_matrix::<Q>(2).algebra;
        let dc = m2.double_commutator_span();
        assert_eq!(dc.dim(), 3);
        assert!(!dc.contains_vector(&[q(1), q(0), q(0), q(1)]));
        assert!(dc.contains_vector(&[q(1), q(0), q(0), q(-1)]));

        let ex = catalog::example_1_2::<Q>();
        assert!(ex.gma.algebra().double_commutator_span().is_zero());

        let t2 = catalog::upper_triangular::<Q>(2).algebra;
        assert_eq!(t2.double_commutator_span(), Subspace::span(3, vec![vec![q(0), q(1), q(0)]]).unwrap());
    }

    #[test]
    fn central_ideals() {
        assert!(catalog::full_matrix::<Q>(2).algebra.largest_central_ideal().is_zero());
        assert!(field().largest_central_ideal().is_full());
        let a = catalog::example_1_2_base::<Q>();
        assert_eq!(a.largest_central_ideal(), Subspace::span(3, vec![vec![q(0), q(0), q(1)]]).unwrap());
    }

    #[test]
    fn double_commutator_span_is_basis_invariant() {
        let m2 = catalog::full_matrix::<Q>(2).algebra;
        let p = Matrix::<Q>::from_ints(&[&[1, 2, 0, 1], &[0, 1, 3, 0], &[1, 0, 1, 0], &[0, 0, 1, 1]]);
        let conj = m2.change_basis(&p).unwrap();
        // new coordinates y correspond to old vectors p·y
        let mapped = conj.double_commutator_span().image(&p).unwrap();
        assert_eq!(mapped, m2.double_commutator_span());
    }

    fn m2_element() -> impl Strategy<Value = Vec<Q>> {
        prop::collection::vec(-4i64..5, 4).prop_map(|v| v.into_iter().map(q).collect())
    }

    proptest! {
        #[test]
        fn double_commutator_via_jordan(a in m2_element(), b in m2_element(), c in m2_element()) {
            let m2 = catalog::full_matrix::<Q>(2).algebra;
            let lhs = m2.double_bracket_vecs(&a, &b, &c);
            let rhs = sub_vec(
                &m2.jordan_vecs(&a, &m2.jordan_vecs(&b, &c)),
                &m2.jordan_vecs(&b, &m2.jordan_vecs(&a, &c)),
            );
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn center_inside_commutant(v in m2_element(), w in m2_element()) {
            let m2 = catalog::full_matrix::<Q>(2).algebra;
            let s1 = Subspace::span(4, vec![v.clone()]).unwrap();
            let s2 = Subspace::span(4, vec![v, w]).unwrap();
            let c1 = m2.commutant(&s1).unwrap();
            let c2 = m2.commutant(&s2).unwrap();
            prop_assert!(c1.contains(&m2.center()).unwrap());
            prop_assert!(c1.contains(&c2).unwrap());
        }
    }

    #[test]
    fn central_ideal_of_t3_is_central_and_stable() {
        let t = catalog::upper_triangular::<Q>(3).algebra;
        let ideal = t.largest_central_ideal();
        assert!(t.center().contains(&ideal).unwrap());
        for i in 0..t.dim() {
            let e = unit_vector(t.dim(), i);
            for v in ideal.basis() {
                assert!(ideal.contains_vector(&t.mul_vecs(&e, v)));
                assert!(ideal.contains_vector(&t.mul_vecs(v, &e)));
            }
        }
    }
}
