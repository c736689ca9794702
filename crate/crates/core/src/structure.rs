//! Products on `V^∧` as `2^n × 4^n` structure matrices.
//!
//! Column `alpha_encode(i, j)` of the product matrix holds the blade
//! coefficients of `e_i · e_j`. The coproduct matrix is its transpose.
//! From these come the Gram operators `A = m·mᵀ`, `B = mᵀ·m` and the
//! iterated operators `A^(r) = m_r·m_rᵀ`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::blade::{check_dim, Blade};
use crate::deformation::{boolean_blade_product, BilinearForm, Cliffordization};
use crate::element::{Element, TensorElement};
use crate::error::{Error, Result};
use crate::exterior::{alpha_decode, alpha_encode, wedge_blades};
use crate::matrix::RectMatrix;
use crate::scalar::{format_rational, Rational, Scalar};

/// Which product generated a set of tables.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum ProductLabel {
    Grassmann,
    /// Circle product for the form with these entries, row-major, rendered
    /// as scalar literals.
    Clifford { form: Vec<Vec<String>> },
    Boolean,
    Custom { name: String },
}

impl ProductLabel {
    pub fn clifford<S: Scalar>(form: &BilinearForm<S>) -> Self {
        ProductLabel::Clifford {
            form: form
                .matrix()
                .to_rows()
                .iter()
                .map(|r| r.iter().map(|x| x.to_string()).collect())
                .collect(),
        }
    }
}

/// The product matrix of one product and its Euclidean-dual coproduct.
#[derive(Clone, Debug)]
pub struct StructureTables<S: Scalar> {
    n: usize,
    product: RectMatrix<S>,
    coproduct: RectMatrix<S>,
    label: ProductLabel,
}

impl<S: Scalar> StructureTables<S> {
    pub fn grassmann(n: usize) -> Result<Self> {
        build_product_matrix(n, wedge_blades, ProductLabel::Grassmann)
    }

    pub fn clifford(form: &BilinearForm<S>) -> Result<Self> {
        let cl = Cliffordization::new(form.clone());
        build_product_matrix(
            form.dim(),
            |s, t| cl.blade_product(s, t),
            ProductLabel::clifford(form),
        )
    }

    pub fn boolean(n: usize) -> Result<Self> {
        build_product_matrix(n, boolean_blade_product, ProductLabel::Boolean)
    }

    /// Tables from an explicit product matrix.
    pub fn from_product_matrix(n: usize, product: RectMatrix<S>, label: ProductLabel) -> Result<Self> {
        check_dim(n)?;
        let expected = (1usize << n, 1usize << (2 * n));
        if product.shape() != expected {
            return Err(Error::ShapeMismatch {
                op: "structure tables",
                left: expected,
                right: product.shape(),
            });
        }
        let coproduct = product.transpose();
        Ok(StructureTables {
            n,
            product,
            coproduct,
            label,
        })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn product_matrix(&self) -> &RectMatrix<S> {
        &self.product
    }

    pub fn coproduct_matrix(&self) -> &RectMatrix<S> {
        &self.coproduct
    }

    pub fn label(&self) -> &ProductLabel {
        &self.label
    }

    /// The product of two elements read back from the matrix.
    pub fn multiply(&self, x: &Element<S>, y: &Element<S>) -> Result<Element<S>> {
        let t = TensorElement::tensor(x, y)?;
        self.apply_product(&t)
    }

    /// `m(t)` for a tensor element.
    pub fn apply_product(&self, t: &TensorElement<S>) -> Result<Element<S>> {
        crate::element::same_dim(self.n, t.dim())?;
        Element::from_dense(self.n, &self.product.mul_vec(&t.to_dense())?)
    }

    /// `Δ(x) = mᵀ x`, the coproduct dual to the product under transposition.
    pub fn apply_coproduct(&self, x: &Element<S>) -> Result<TensorElement<S>> {
        crate::element::same_dim(self.n, x.dim())?;
        TensorElement::from_dense(self.n, &self.coproduct.mul_vec(&x.to_dense())?)
    }

    pub fn to_f64(&self) -> StructureTables<f64> {
        StructureTables {
            n: self.n,
            product: self.product.to_f64(),
            coproduct: self.coproduct.to_f64(),
            label: self.label.clone(),
        }
    }
}

/// Materializes a blade product as a structure matrix.
pub fn build_product_matrix<S: Scalar>(
    n: usize,
    product: impl Fn(Blade, Blade) -> Result<Element<S>>,
    label: ProductLabel,
) -> Result<StructureTables<S>> {
    check_dim(n)?;
    let size = 1usize << n;
    let mut m = RectMatrix::zeros(size, size * size);
    for j in 0..size {
        for i in 0..size {
            let col = alpha_encode(i, j, n)?;
            let value = product(Blade::from_mask(n, i as u32), Blade::from_mask(n, j as u32))?;
            if value.dim() != n {
                return Err(Error::DimensionMismatch {
                    left: n,
                    right: value.dim(),
                });
            }
            for (b, c) in value.terms() {
                m[(b.index(), col)] = c.clone();
            }
        }
    }
    StructureTables::from_product_matrix(n, m, label)
}

/// `A = m·mᵀ`.
pub fn gram_a<S: Scalar>(t: &StructureTables<S>) -> RectMatrix<S> {
    t.product.matmul(&t.coproduct).expect("m and mᵀ conform")
}

/// `B = mᵀ·m`.
pub fn gram_b<S: Scalar>(t: &StructureTables<S>) -> RectMatrix<S> {
    t.coproduct.matmul(&t.product).expect("mᵀ and m conform")
}

/// The r-fold product `m_r : (V^∧)^{⊗r} → V^∧`, left-nested:
/// `m_1 = Id`, `m_r = m·(m_{r−1} ⊗ Id)`. Tuple indices extend the pair
/// convention with the first slot fastest.
pub fn iterated_product_matrix<S: Scalar>(t: &StructureTables<S>, r: usize) -> Result<RectMatrix<S>> {
    if r == 0 {
        return Err(Error::InvalidArgument("iteration order must be at least 1".into()));
    }
    let size = 1usize << t.n;
    let mut current: RectMatrix<S> = RectMatrix::identity(size);
    for _ in 1..r {
        let inner = current.cols();
        let mut next: RectMatrix<S> = RectMatrix::zeros(size, inner * size);
        for last in 0..size {
            for k in 0..size {
                // column of m for e_k ⊗ e_last
                let mcol = alpha_encode(k, last, t.n)?;
                for tuple in 0..inner {
                    let c: &S = &current[(k, tuple)];
                    if c.is_zero() {
                        continue;
                    }
                    let col = tuple + inner * last;
                    for row in 0..size {
                        let v = &t.product[(row, mcol)];
                        if !v.is_zero() {
                            next[(row, col)] = next[(row, col)].clone() + c.clone() * v.clone();
                        }
                    }
                }
            }
        }
        current = next;
    }
    Ok(current)
}

/// `A^(r) = m_r·m_rᵀ`; `A^(1) = Id`, `A^(2) = A`.
pub fn iterated_gram<S: Scalar>(t: &StructureTables<S>, r: usize) -> Result<RectMatrix<S>> {
    let m = iterated_product_matrix(t, r)?;
    m.matmul(&m.transpose())
}

/// Whether `∏ (M − λ_k·Id) = 0` exactly.
pub fn poly_annihilates<S: Scalar>(m: &RectMatrix<S>, roots: &[S]) -> Result<bool> {
    if !S::EXACT {
        return Err(Error::InexactScalars);
    }
    m.require_square()?;
    let mut acc = RectMatrix::identity(m.rows());
    for root in roots {
        acc = acc.matmul(&m.shift(root)?)?;
        if acc.is_zero() {
            return Ok(true);
        }
    }
    Ok(acc.is_zero())
}

/// Exact eigenvalue multiplicities of a symmetric rational matrix whose
/// spectrum lies in `roots`: `mult(λ) = size − rank(M − λ·Id)`.
///
/// Fails with [`Error::NotAnnihilated`] if the candidate roots do not
/// annihilate `M`, since multiplicities would then not account for the
/// whole space.
pub fn spectrum_exact(m: &RectMatrix<Rational>, roots: &[Rational]) -> Result<BTreeMap<Rational, usize>> {
    m.require_square()?;
    if !m.is_symmetric() {
        return Err(Error::NotSymmetric(m.to_f64().max_asymmetry()));
    }
    if !poly_annihilates(m, roots)? {
        return Err(Error::NotAnnihilated);
    }
    let mut out = BTreeMap::new();
    for root in roots {
        if out.contains_key(root) {
            continue;
        }
        let mult = m.rows() - m.shift(root)?.rank_exact();
        if mult > 0 {
            out.insert(root.clone(), mult);
        }
    }
    Ok(out)
}

/// `M` commutes with the projector onto grade `r`, for every grade.
pub fn commutes_with_grade<S: Scalar>(m: &RectMatrix<S>, n: usize) -> bool {
    let size = 1usize << n;
    if m.shape() != (size, size) {
        return false;
    }
    // P_r M = M P_r for all r iff M never couples blades of different grades.
    (0..size).all(|i| {
        (0..size).all(|j| {
            (i as u32).count_ones() == (j as u32).count_ones() || m[(i, j)].is_negligible()
        })
    })
}

/// Serializable form of a set of tables; scalars are rendered as text.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TablesDocument {
    pub dim: usize,
    pub label: ProductLabel,
    pub blades: Vec<String>,
    pub pairs: Vec<String>,
    pub product: Vec<Vec<String>>,
    pub coproduct: Vec<Vec<String>>,
}

impl TablesDocument {
    pub fn from_tables(t: &StructureTables<Rational>) -> Self {
        let n = t.dim();
        let blade_name = |i: usize| Blade::from_mask(n, i as u32).to_string();
        let blades: Vec<String> = (0..1usize << n).map(blade_name).collect();
        let pairs = (0..1usize << (2 * n))
            .map(|p| {
                let (i, j) = alpha_decode(p, n).expect("pair index in range");
                format!("{}⊗{}", blades[i], blades[j])
            })
            .collect();
        let render = |m: &RectMatrix<Rational>| {
            m.to_rows()
                .iter()
                .map(|r| r.iter().map(format_rational).collect())
                .collect()
        };
        TablesDocument {
            dim: n,
            label: t.label().clone(),
            blades,
            pairs,
            product: render(t.product_matrix()),
            coproduct: render(t.coproduct_matrix()),
        }
    }

    /// Rebuilds the tables, checking that the coproduct is the transpose.
    pub fn to_tables(&self) -> Result<StructureTables<Rational>> {
        let parse = |rows: &[Vec<String>]| -> Result<RectMatrix<Rational>> {
            RectMatrix::from_rows(
                rows.iter()
                    .map(|r| r.iter().map(|x| Rational::parse_scalar(x)).collect())
                    .collect::<Result<Vec<Vec<_>>>>()?,
            )
        };
        let t = StructureTables::from_product_matrix(self.dim, parse(&self.product)?, self.label.clone())?;
        if parse(&self.coproduct)? != *t.coproduct_matrix() {
            return Err(Error::InvalidArgument("coproduct is not the transpose of the product".into()));
        }
        Ok(t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type Q = Rational;

    fn q(n: i64) -> Q {
        Q::from_i64(n)
    }

    fn qm(rows: &[&[i64]]) -> RectMatrix<Q> {
        RectMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect()).unwrap()
    }

    #[test]
    fn dim1_tables() {
        let g = StructureTables::<Q>::grassmann(1).unwrap();
        assert_eq!(g.product_matrix(), &qm(&[&[1, 0, 0, 0], &[0, 1, 1, 0]]));
        assert_eq!(g.coproduct_matrix(), &g.product_matrix().transpose());

        let a = Q::from_ratio(7, 3);
        let c = StructureTables::clifford(&BilinearForm::diagonal(&[a.clone()]).unwrap()).unwrap();
        let mut expected = qm(&[&[1, 0, 0, 0], &[0, 1, 1, 0]]);
        expected[(0, 3)] = a;
        assert_eq!(c.product_matrix(), &expected);
    }

    #[test]
    fn gram_dim1_clifford() {
        let a = q(2);
        let t = StructureTables::clifford(&BilinearForm::diagonal(&[a]).unwrap()).unwrap();
        assert_eq!(gram_a(&t), qm(&[&[5, 0], &[0, 2]]));
        assert_eq!(
            gram_b(&t),
            qm(&[&[1, 0, 0, 2], &[0, 1, 1, 0], &[0, 1, 1, 0], &[2, 0, 0, 4]])
        );
    }

    #[test]
    fn gram_grassmann_dim2_by_naive_product() {
        let t = StructureTables::<Q>::grassmann(2).unwrap();
        let m = t.product_matrix();
        let mut naive = RectMatrix::<Q>::zeros(4, 4);
        for i in 0..4 {
            for j in 0..4 {
                let mut acc = q(0);
                for k in 0..16 {
                    acc = acc + m[(i, k)].clone() * m[(j, k)].clone();
                }
                naive[(i, j)] = acc;
            }
        }
        assert_eq!(naive, RectMatrix::diagonal(&[q(1), q(2), q(2), q(4)]));
        assert_eq!(gram_a(&t), naive);
    }

    #[test]
    fn iterated_examples() {
        let t = StructureTables::<Q>::grassmann(2).unwrap();
        assert_eq!(iterated_gram(&t, 1).unwrap(), RectMatrix::identity(4));
        assert_eq!(iterated_gram(&t, 2).unwrap(), gram_a(&t));
        assert_eq!(
            iterated_gram(&t, 3).unwrap(),
            RectMatrix::diagonal(&[q(1), q(3), q(3), q(9)])
        );
        assert!(iterated_product_matrix(&t, 0).is_err());
        assert_eq!(iterated_product_matrix(&t, 3).unwrap().shape(), (4, 64));
    }

    #[test]
    fn iterated_matches_nested_products() {
        let form = BilinearForm::from_rows(vec![vec![q(1), q(2)], vec![q(-1), q(3)]]).unwrap();
        let cl = Cliffordization::new(form.clone());
        let t = StructureTables::clifford(&form).unwrap();
        let m3 = iterated_product_matrix(&t, 3).unwrap();
        for a in 0..4u32 {
            for b in 0..4u32 {
                for c in 0..4u32 {
                    let ea = Element::blade(Blade::new(2, a).unwrap());
                    let eb = Element::blade(Blade::new(2, b).unwrap());
                    let ec = Element::blade(Blade::new(2, c).unwrap());
                    let abc = cl.product(&cl.product(&ea, &eb).unwrap(), &ec).unwrap();
                    let col = (a + 4 * b + 16 * c) as usize;
                    assert_eq!(m3.column(col), abc.to_dense());
                }
            }
        }
    }

    #[test]
    fn poly_annihilation() {
        let t3 = StructureTables::<Q>::grassmann(3).unwrap();
        assert!(poly_annihilates(&gram_a(&t3), &[q(1), q(2), q(4), q(8)]).unwrap());
        let t2 = StructureTables::<Q>::grassmann(2).unwrap();
        assert!(!poly_annihilates(&gram_a(&t2), &[q(1), q(2)]).unwrap());
        assert!(poly_annihilates(&gram_b(&t2), &[q(0), q(1), q(2), q(4)]).unwrap());
        let tf = t2.to_f64();
        assert!(matches!(
            poly_annihilates(&gram_a(&tf), &[1.0, 2.0, 4.0]),
            Err(Error::InexactScalars)
        ));
    }

    #[test]
    fn exact_spectra() {
        let t3 = StructureTables::<Q>::grassmann(3).unwrap();
        let spec = spectrum_exact(&gram_a(&t3), &[q(1), q(2), q(4), q(8)]).unwrap();
        assert_eq!(spec, BTreeMap::from([(q(1), 1), (q(2), 3), (q(4), 3), (q(8), 1)]));

        let t2 = StructureTables::<Q>::grassmann(2).unwrap();
        let spec = spectrum_exact(&gram_b(&t2), &[q(0), q(1), q(2), q(4)]).unwrap();
        assert_eq!(spec, BTreeMap::from([(q(0), 12), (q(1), 1), (q(2), 2), (q(4), 1)]));

        let c1 = StructureTables::clifford(&BilinearForm::diagonal(&[q(1)]).unwrap()).unwrap();
        let spec = spectrum_exact(&gram_a(&c1), &[q(2)]).unwrap();
        assert_eq!(spec, BTreeMap::from([(q(2), 2)]));

        assert!(matches!(
            spectrum_exact(&gram_a(&t3), &[q(1), q(2)]),
            Err(Error::NotAnnihilated)
        ));
        assert!(matches!(
            spectrum_exact(&qm(&[&[1, 2], &[0, 1]]), &[q(1)]),
            Err(Error::NotSymmetric(_))
        ));
    }

    #[test]
    fn custom_product_dimension_check() {
        let bad = build_product_matrix::<Q>(
            2,
            |_, _| Element::unit(3),
            ProductLabel::Custom { name: "bad".into() },
        );
        assert!(matches!(bad, Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn boolean_tables() {
        let t = StructureTables::<Q>::boolean(2).unwrap();
        assert_eq!(gram_a(&t), RectMatrix::identity(4));
    }

    #[test]
    fn document_round_trip() {
        let form = BilinearForm::from_rows(vec![
            vec![q(0), Q::from_ratio(5, 2)],
            vec![Q::from_ratio(-1, 3), q(1)],
        ])
        .unwrap();
        let t = StructureTables::clifford(&form).unwrap();
        let doc = TablesDocument::from_tables(&t);
        assert_eq!(doc.pairs[6], "e2⊗e1");
        let json = serde_json::to_string(&doc).unwrap();
        let back: TablesDocument = serde_json::from_str(&json).unwrap();
        let t2 = back.to_tables().unwrap();
        assert_eq!(t2.product_matrix(), t.product_matrix());
    }

    #[test]
    fn grade_commutation() {
        let t = StructureTables::<Q>::grassmann(3).unwrap();
        assert!(commutes_with_grade(&gram_a(&t), 3));
        assert!(!commutes_with_grade(&qm(&[&[1, 1], &[1, 1]]), 1));
    }
}
