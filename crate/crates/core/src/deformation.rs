//! Twists of the Grassmann product by a bilinear form on `V`.
//!
//! A form `B` on generators is extended to blades by Laplace expansion
//! (`B^∧`), and the circle product
//!
//! ```text
//! x ∘ y = Σ (-1)^{∂x₂·∂y₁} B^∧(x₁, y₁) x₂ ∧ y₂
//! ```
//!
//! sums over the shuffle coproducts `Δ(x) = x₁ ⊗ x₂`, `Δ(y) = y₁ ⊗ y₂`.
//! Also here: the group-like coproduct `δ`, its transpose the Boolean
//! product, and the kernel-valued coproduct `Δ⁻`.

use std::fmt;

use crate::blade::{blade_wedge, check_dim, Blade};
use crate::element::{same_dim, Element, TensorElement};
use crate::error::{Error, Result};
use crate::exterior::tensor_wedge;
use crate::matrix::RectMatrix;
use crate::scalar::Scalar;

/// A bilinear form `B(e_i, e_j)` on the generators. No symmetry assumed.
#[derive(Clone, PartialEq)]
pub struct BilinearForm<S> {
    entries: RectMatrix<S>,
}

impl<S: Scalar> BilinearForm<S> {
    pub fn new(entries: RectMatrix<S>) -> Result<Self> {
        entries.require_square()?;
        check_dim(entries.rows())?;
        Ok(BilinearForm { entries })
    }

    pub fn from_rows(rows: Vec<Vec<S>>) -> Result<Self> {
        BilinearForm::new(RectMatrix::from_rows(rows)?)
    }

    /// The zero form; its circle product is the wedge product.
    pub fn zero(dim: usize) -> Result<Self> {
        BilinearForm::new(RectMatrix::zeros(dim, dim))
    }

    pub fn diagonal(values: &[S]) -> Result<Self> {
        BilinearForm::new(RectMatrix::diagonal(values))
    }

    pub fn dim(&self) -> usize {
        self.entries.rows()
    }

    pub fn matrix(&self) -> &RectMatrix<S> {
        &self.entries
    }

    /// `B(e_i, e_j)` with 1-based generator indices.
    pub fn entry(&self, i: usize, j: usize) -> &S {
        &self.entries[(i - 1, j - 1)]
    }

    pub fn is_symmetric(&self) -> bool {
        self.entries.is_symmetric()
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> BilinearForm<T> {
        BilinearForm {
            entries: self.entries.map(f),
        }
    }

    fn on_generators(&self, s: Blade, t: Blade) -> S {
        debug_assert!(s.grade() == 1 && t.grade() == 1);
        let i = s.mask().trailing_zeros() as usize;
        let j = t.mask().trailing_zeros() as usize;
        self.entries[(i, j)].clone()
    }
}

/// `B^∧` on blade pairs, stored as a `2^n × 2^n` matrix in blade order.
#[derive(Clone, PartialEq)]
pub struct ExtendedForm<S> {
    dim: usize,
    values: RectMatrix<S>,
}

impl<S: Scalar> ExtendedForm<S> {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, s: Blade, t: Blade) -> &S {
        &self.values[(s.index(), t.index())]
    }

    pub fn matrix(&self) -> &RectMatrix<S> {
        &self.values
    }
}

/// Laplace extension of `B` to all blades.
///
/// Grade-mismatched pairs vanish and `B^∧(Id, Id) = 1`. For `|S| = |T| ≥ 1`
/// the leading generator `e_s` of `S = s ∪ S'` is paired with the right
/// coproduct factor of `e_T`:
///
/// ```text
/// B^∧(e_s ∧ e_S', e_T) = Σ_{(T)} ± B(e_s, T₂) B^∧(e_S', T₁),   |T₂| = 1
/// ```
///
/// with the shuffle sign of the split `T = T₁ ⊔ T₂`. This makes
/// `B^∧(e_S, e_T) = (-1)^{k(k-1)/2} det B[S, T]` for `k = |S|`, the
/// convention under which `e12 ∘ e12 = B^∧(e12, e12) + …` carries
/// `B12·B21 − B11·B22` in its scalar part.
pub fn laplace_extend<S: Scalar>(form: &BilinearForm<S>) -> ExtendedForm<S> {
    let n = form.dim();
    let size = 1usize << n;
    let mut values = RectMatrix::zeros(size, size);
    values[(0, 0)] = S::one();
    let mut by_grade: Vec<Vec<Blade>> = vec![Vec::new(); n + 1];
    for b in (0..size as u32).map(|m| Blade::from_mask(n, m)) {
        by_grade[b.grade()].push(b);
    }
    for grade in 1..=n {
        for &s in &by_grade[grade] {
            let lead = s.mask() & s.mask().wrapping_neg();
            let head = Blade::from_mask(n, lead);
            let rest = Blade::from_mask(n, s.mask() & !lead);
            for &t in &by_grade[grade] {
                let mut acc = S::zero();
                for (odd, t1, t2) in t.splits() {
                    if t2.grade() != 1 {
                        continue;
                    }
                    let b = form.on_generators(head, t2);
                    if b.is_zero() {
                        continue;
                    }
                    let inner = values[(rest.index(), t1.index())].clone();
                    if inner.is_zero() {
                        continue;
                    }
                    let term = b * inner;
                    acc = if odd { acc - term } else { acc + term };
                }
                values[(s.index(), t.index())] = acc;
            }
        }
    }
    ExtendedForm { dim: n, values }
}

/// The circle product for a fixed form, with `B^∧` computed once.
#[derive(Clone)]
pub struct Cliffordization<S> {
    form: BilinearForm<S>,
    extended: ExtendedForm<S>,
}

impl<S: Scalar> Cliffordization<S> {
    pub fn new(form: BilinearForm<S>) -> Self {
        let extended = laplace_extend(&form);
        Cliffordization { form, extended }
    }

    pub fn dim(&self) -> usize {
        self.form.dim()
    }

    pub fn form(&self) -> &BilinearForm<S> {
        &self.form
    }

    pub fn extended(&self) -> &ExtendedForm<S> {
        &self.extended
    }

    /// `e_S ∘ e_T`.
    pub fn blade_product(&self, s: Blade, t: Blade) -> Result<Element<S>> {
        same_dim(self.dim(), s.dim())?;
        same_dim(self.dim(), t.dim())?;
        let mut out = Element::zero(self.dim())?;
        for (odd_s, s1, s2) in s.splits() {
            for (odd_t, t1, t2) in t.splits() {
                if s1.grade() != t1.grade() {
                    continue;
                }
                let b = self.extended.get(s1, t1);
                if b.is_zero() {
                    continue;
                }
                let (w, st) = blade_wedge(s2, t2)?;
                if w == 0 {
                    continue;
                }
                let negative =
                    odd_s ^ odd_t ^ (w < 0) ^ (s2.grade() * t1.grade() % 2 == 1);
                let v = b.clone();
                out.add_term(st, if negative { -v } else { v });
            }
        }
        Ok(out)
    }

    pub fn product(&self, x: &Element<S>, y: &Element<S>) -> Result<Element<S>> {
        same_dim(self.dim(), x.dim())?;
        same_dim(self.dim(), y.dim())?;
        let mut out = Element::zero(self.dim())?;
        for (a, ca) in x.terms() {
            for (b, cb) in y.terms() {
                let c = ca.clone() * cb.clone();
                for (blade, v) in self.blade_product(a, b)?.terms() {
                    out.add_term(blade, c.clone() * v.clone());
                }
            }
        }
        Ok(out)
    }
}

impl<S: Scalar> fmt::Debug for BilinearForm<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_tuple("BilinearForm").field(&self.entries).finish()
    }
}

impl<S: Scalar> fmt::Debug for ExtendedForm<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_tuple("ExtendedForm").field(&self.values).finish()
    }
}

impl<S: Scalar> fmt::Debug for Cliffordization<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_tuple("Cliffordization").field(&self.form).finish()
    }
}

/// One-shot circle product `x ∘_B y`.
pub fn circle_product<S: Scalar>(
    x: &Element<S>,
    y: &Element<S>,
    form: &BilinearForm<S>,
) -> Result<Element<S>> {
    same_dim(x.dim(), y.dim())?;
    same_dim(x.dim(), form.dim())?;
    Cliffordization::new(form.clone()).product(x, y)
}

/// `δ(b) = b ⊗ b` on basis blades, extended linearly.
pub fn grouplike_coproduct<S: Scalar>(x: &Element<S>) -> TensorElement<S> {
    TensorElement::from_terms(x.dim(), x.terms().map(|(b, c)| (b, b, c.clone())))
        .expect("terms share the element's dimension")
}

/// `m^B(b ⊗ b') = b` if `b = b'`, else `0`; bilinear.
pub fn boolean_product<S: Scalar>(x: &Element<S>, y: &Element<S>) -> Result<Element<S>> {
    same_dim(x.dim(), y.dim())?;
    Element::from_terms(
        x.dim(),
        x.terms().filter_map(|(b, cx)| {
            let cy = y.coeff(b);
            (!cy.is_zero()).then(|| (b, cx.clone() * cy))
        }),
    )
}

pub fn boolean_blade_product<S: Scalar>(s: Blade, t: Blade) -> Result<Element<S>> {
    same_dim(s.dim(), t.dim())?;
    Ok(if s == t {
        Element::blade(s)
    } else {
        Element::zero(s.dim())?
    })
}

/// `Δ⁻(e_i) = e_i ⊗ Id − Id ⊗ e_i`, extended multiplicatively over the
/// factors of each blade with the graded tensor product. `Δ⁻(Id) = Id ⊗ Id`.
pub fn minus_coproduct<S: Scalar>(x: &Element<S>) -> Result<TensorElement<S>> {
    let n = x.dim();
    let id = Blade::from_mask(n, 0);
    let mut out = TensorElement::zero(n)?;
    for (b, c) in x.terms() {
        let mut acc = TensorElement::term(id, id, S::one())?;
        for i in b.indices() {
            let g = Blade::generator(n, i)?;
            let factor = TensorElement::from_terms(n, [(g, id, S::one()), (id, g, -S::one())])?;
            acc = tensor_wedge(&acc, &factor)?;
        }
        for (l, r, v) in acc.terms() {
            out.add_term(l, r, c.clone() * v.clone());
        }
    }
    Ok(out)
}

/// Rejects forms whose dimension differs from `n`.
pub fn check_form_dim<S: Scalar>(form: &BilinearForm<S>, n: usize) -> Result<()> {
    if form.dim() != n {
        return Err(Error::DimensionMismatch {
            left: n,
            right: form.dim(),
        });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exterior::{contract, wedge, wedge_blades};
    use crate::scalar::Rational;

    type Q = Rational;

    fn q(n: i64) -> Q {
        Q::from_i64(n)
    }

    fn e(dim: usize, idx: &[usize]) -> Blade {
        Blade::from_indices(dim, idx).unwrap()
    }

    fn el(dim: usize, terms: &[(&[usize], Q)]) -> Element<Q> {
        Element::from_terms(dim, terms.iter().map(|(i, c)| (e(dim, i), c.clone()))).unwrap()
    }

    fn rho_nu(rho: Q, nu: Q) -> BilinearForm<Q> {
        BilinearForm::from_rows(vec![
            vec![q(0), rho.clone() + nu.clone()],
            vec![rho - nu, q(0)],
        ])
        .unwrap()
    }

    #[test]
    fn laplace_dim1() {
        let a = Q::from_ratio(7, 3);
        let ext = laplace_extend(&BilinearForm::diagonal(&[a.clone()]).unwrap());
        assert_eq!(ext.matrix(), &RectMatrix::diagonal(&[q(1), a]));
    }

    #[test]
    fn laplace_grade_mismatch_vanishes() {
        let form = BilinearForm::from_rows(vec![vec![q(2), q(3)], vec![q(5), q(7)]]).unwrap();
        let ext = laplace_extend(&form);
        assert_eq!(ext.get(e(2, &[]), e(2, &[1])), &q(0));
        assert_eq!(ext.get(e(2, &[1, 2]), e(2, &[2])), &q(0));
    }

    #[test]
    fn laplace_top_grade_sign() {
        let (rho, nu) = (q(3), q(1));
        let ext = laplace_extend(&rho_nu(rho.clone(), nu.clone()));
        let top = e(2, &[1, 2]);
        assert_eq!(ext.get(top, top), &(rho.clone() * rho - nu.clone() * nu));
    }

    #[test]
    fn circle_with_zero_form_is_wedge() {
        let cl = Cliffordization::new(BilinearForm::<Q>::zero(3).unwrap());
        for s in Blade::basis(3).unwrap() {
            for t in Blade::basis(3).unwrap() {
                assert_eq!(cl.blade_product(s, t).unwrap(), wedge_blades(s, t).unwrap());
            }
        }
    }

    #[test]
    fn circle_dim1() {
        let a = Q::from_ratio(-5, 2);
        let form = BilinearForm::diagonal(&[a.clone()]).unwrap();
        let e1 = Element::generator(1, 1).unwrap();
        assert_eq!(
            circle_product(&e1, &e1, &form).unwrap(),
            Element::scalar(1, a).unwrap()
        );
    }

    #[test]
    fn circle_car_relation() {
        let (rho, nu) = (Q::from_ratio(3, 4), Q::from_ratio(-2, 5));
        let form = rho_nu(rho.clone(), nu);
        let e1 = Element::generator(2, 1).unwrap();
        let e2 = Element::generator(2, 2).unwrap();
        let anti = &circle_product(&e1, &e2, &form).unwrap() + &circle_product(&e2, &e1, &form).unwrap();
        assert_eq!(anti, Element::scalar(2, q(2) * rho).unwrap());
    }

    #[test]
    fn circle_dimension_mismatch() {
        let form = BilinearForm::<Q>::zero(2).unwrap();
        let x = Element::generator(3, 1).unwrap();
        assert!(circle_product(&x, &x, &form).is_err());
    }

    #[test]
    fn grouplike_examples() {
        let id = Element::<Q>::unit(2).unwrap();
        let b0 = e(2, &[]);
        let (b1, b2) = (e(2, &[1]), e(2, &[2]));
        assert_eq!(grouplike_coproduct(&id), TensorElement::term(b0, b0, q(1)).unwrap());
        assert_eq!(
            grouplike_coproduct(&Element::blade(b1)),
            TensorElement::term(b1, b1, q(1)).unwrap()
        );
        let sum = el(2, &[(&[1], q(1)), (&[2], q(1))]);
        assert_eq!(
            grouplike_coproduct(&sum),
            TensorElement::from_terms(2, [(b1, b1, q(1)), (b2, b2, q(1))]).unwrap()
        );
    }

    #[test]
    fn boolean_examples() {
        let e1 = Element::<Q>::generator(2, 1).unwrap();
        let e2 = Element::<Q>::generator(2, 2).unwrap();
        assert_eq!(boolean_product(&e1, &e1).unwrap(), e1);
        assert!(boolean_product(&e1, &e2).unwrap().is_empty());
        for b in Blade::basis(3).unwrap() {
            let x = Element::<Q>::blade(b);
            assert_eq!(boolean_product(&x, &x).unwrap(), x);
        }
    }

    #[test]
    fn minus_coproduct_examples() {
        let id = e(2, &[]);
        let (b1, b2, b12) = (e(2, &[1]), e(2, &[2]), e(2, &[1, 2]));
        assert_eq!(
            minus_coproduct(&Element::<Q>::blade(b1)).unwrap(),
            TensorElement::from_terms(2, [(b1, id, q(1)), (id, b1, q(-1))]).unwrap()
        );
        let d = minus_coproduct(&Element::<Q>::blade(b12)).unwrap();
        assert_eq!(
            d,
            TensorElement::from_terms(
                2,
                [(b12, id, q(1)), (b1, b2, q(-1)), (b2, b1, q(1)), (id, b12, q(1))]
            )
            .unwrap()
        );
        assert!(contract(&d, wedge_blades).unwrap().is_empty());
        let unit = Element::<Q>::unit(2).unwrap();
        assert_eq!(
            contract(&minus_coproduct(&unit).unwrap(), wedge_blades).unwrap(),
            unit
        );
    }

    #[test]
    fn grassmann_product_of_wedge_helper() {
        let x = el(2, &[(&[1], q(2)), (&[2], q(1))]);
        let y = el(2, &[(&[2], q(3))]);
        let cl = Cliffordization::new(BilinearForm::<Q>::zero(2).unwrap());
        assert_eq!(cl.product(&x, &y).unwrap(), wedge(&x, &y).unwrap());
    }
}
