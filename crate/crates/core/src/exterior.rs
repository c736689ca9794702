//! The undeformed Grassmann Hopf algebra on `V^∧`.
//!
//! Product is the wedge product, the coproduct splits a blade into all
//! signed ordered shuffles, the antipode is `(-1)^grade` and the counit
//! reads off the `Id` coefficient.

use crate::blade::{blade_wedge, check_dim, Blade};
use crate::element::{same_dim, Element, TensorElement};
use crate::error::{Error, Result};
use crate::matrix::RectMatrix;
use crate::scalar::Scalar;

/// Pair index of `e_i ⊗ e_j`: `I = j·2^n + i`, first slot fastest.
pub fn alpha_encode(i: usize, j: usize, n: usize) -> Result<usize> {
    check_dim(n)?;
    let bound = 1usize << n;
    for idx in [i, j] {
        if idx >= bound {
            return Err(Error::IndexOutOfRange { index: idx, bound });
        }
    }
    Ok(j * bound + i)
}

/// Inverse of [`alpha_encode`].
pub fn alpha_decode(pair: usize, n: usize) -> Result<(usize, usize)> {
    check_dim(n)?;
    let bound = 1usize << n;
    if pair >= bound * bound {
        return Err(Error::IndexOutOfRange {
            index: pair,
            bound: bound * bound,
        });
    }
    Ok((pair % bound, pair / bound))
}

/// The `4^n × 4^n` permutation matrix of the (ungraded) switch
/// `e_i ⊗ e_j ↦ e_j ⊗ e_i` on pair indices.
pub fn switch_permutation<S: Scalar>(n: usize) -> Result<RectMatrix<S>> {
    check_dim(n)?;
    let size = 1usize << (2 * n);
    let mut p = RectMatrix::zeros(size, size);
    for pair in 0..size {
        let (i, j) = alpha_decode(pair, n)?;
        p[(alpha_encode(j, i, n)?, pair)] = S::one();
    }
    Ok(p)
}

/// Wedge product of two blades as an element (zero if they overlap).
pub fn wedge_blades<S: Scalar>(s: Blade, t: Blade) -> Result<Element<S>> {
    let (sign, b) = blade_wedge(s, t)?;
    Ok(match sign {
        0 => Element::zero(s.dim())?,
        1 => Element::blade(b),
        _ => Element::term(b, -S::one()),
    })
}

pub fn wedge<S: Scalar>(x: &Element<S>, y: &Element<S>) -> Result<Element<S>> {
    same_dim(x.dim(), y.dim())?;
    let mut out = Element::zero(x.dim())?;
    for (a, ca) in x.terms() {
        for (b, cb) in y.terms() {
            let (sign, ab) = blade_wedge(a, b)?;
            if sign == 0 {
                continue;
            }
            let c = ca.clone() * cb.clone();
            out.add_term(ab, if sign < 0 { -c } else { c });
        }
    }
    Ok(out)
}

/// Shuffle coproduct of a single blade: `Σ ± e_{S1} ⊗ e_{S2}` over ordered
/// splits, with the sign of the shuffle permutation.
pub fn blade_coproduct<S: Scalar>(b: Blade) -> TensorElement<S> {
    let mut t = TensorElement::zero(b.dim()).expect("blade dimension is valid");
    for (odd, s1, s2) in b.splits() {
        t.add_term(s1, s2, S::sign(odd));
    }
    t
}

pub fn grassmann_coproduct<S: Scalar>(x: &Element<S>) -> TensorElement<S> {
    let mut t = TensorElement::zero(x.dim()).expect("element dimension is valid");
    for (b, c) in x.terms() {
        for (odd, s1, s2) in b.splits() {
            let v = if odd { -c.clone() } else { c.clone() };
            t.add_term(s1, s2, v);
        }
    }
    t
}

pub fn antipode<S: Scalar>(x: &Element<S>) -> Element<S> {
    Element::from_terms(
        x.dim(),
        x.terms().map(|(b, c)| {
            let c = c.clone();
            (b, if b.grade() % 2 == 1 { -c } else { c })
        }),
    )
    .expect("terms share the element's dimension")
}

pub fn counit<S: Scalar>(x: &Element<S>) -> S {
    x.coeff(Blade::from_mask(x.dim(), 0))
}

pub fn grade_project<S: Scalar>(x: &Element<S>, grade: usize) -> Result<Element<S>> {
    if grade > x.dim() {
        return Err(Error::GradeOutOfRange {
            grade,
            dim: x.dim(),
        });
    }
    Element::from_terms(
        x.dim(),
        x.terms()
            .filter(|(b, _)| b.grade() == grade)
            .map(|(b, c)| (b, c.clone())),
    )
}

/// Product in `V^∧ ⊗ V^∧` with the graded switch:
/// `(a ⊗ b)(c ⊗ d) = (-1)^{|b||c|} (a∧c) ⊗ (b∧d)`.
pub fn tensor_wedge<S: Scalar>(x: &TensorElement<S>, y: &TensorElement<S>) -> Result<TensorElement<S>> {
    same_dim(x.dim(), y.dim())?;
    let mut out = TensorElement::zero(x.dim())?;
    for (a, b, cx) in x.terms() {
        for (c, d, cy) in y.terms() {
            let (s1, ac) = blade_wedge(a, c)?;
            let (s2, bd) = blade_wedge(b, d)?;
            if s1 == 0 || s2 == 0 {
                continue;
            }
            let negative = (s1 * s2 < 0) ^ (b.grade() * c.grade() % 2 == 1);
            let v = cx.clone() * cy.clone();
            out.add_term(ac, bd, if negative { -v } else { v });
        }
    }
    Ok(out)
}

/// Applies a bilinear blade product to a tensor: `m(Σ c·a⊗b) = Σ c·m(a, b)`.
pub fn contract<S: Scalar>(
    t: &TensorElement<S>,
    product: impl Fn(Blade, Blade) -> Result<Element<S>>,
) -> Result<Element<S>> {
    let mut out = Element::zero(t.dim())?;
    for (a, b, c) in t.terms() {
        let ab = product(a, b)?;
        same_dim(t.dim(), ab.dim())?;
        for (blade, v) in ab.terms() {
            out.add_term(blade, c.clone() * v.clone());
        }
    }
    Ok(out)
}

/// Applies `f ⊗ g` to a tensor element.
pub fn tensor_map<S: Scalar>(
    t: &TensorElement<S>,
    f: impl Fn(&Element<S>) -> Element<S>,
    g: impl Fn(&Element<S>) -> Element<S>,
) -> Result<TensorElement<S>> {
    let mut out = TensorElement::zero(t.dim())?;
    for (a, b, c) in t.terms() {
        let fa = f(&Element::blade(a));
        let gb = g(&Element::blade(b));
        for (x, cx) in fa.terms() {
            for (y, cy) in gb.terms() {
                out.add_term(x, y, c.clone() * cx.clone() * cy.clone());
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    type Q = Rational;

    fn q(n: i64) -> Q {
        Q::from_i64(n)
    }

    fn e(dim: usize, idx: &[usize]) -> Blade {
        Blade::from_indices(dim, idx).unwrap()
    }

    fn el(dim: usize, terms: &[(&[usize], i64)]) -> Element<Q> {
        Element::from_terms(dim, terms.iter().map(|(i, c)| (e(dim, i), q(*c)))).unwrap()
    }

    fn tens(dim: usize, terms: &[(&[usize], &[usize], i64)]) -> TensorElement<Q> {
        TensorElement::from_terms(dim, terms.iter().map(|(a, b, c)| (e(dim, a), e(dim, b), q(*c))))
            .unwrap()
    }

    #[test]
    fn wedge_examples() {
        let y = el(2, &[(&[1], 2), (&[1, 2], -3)]);
        assert_eq!(wedge(&Element::unit(2).unwrap(), &y).unwrap(), y);
        let x = el(2, &[(&[1], 1), (&[2], 1)]);
        assert_eq!(
            wedge(&x, &el(2, &[(&[1], 1)])).unwrap(),
            el(2, &[(&[1, 2], -1)])
        );
        assert_eq!(
            wedge(&el(3, &[(&[1, 2], 1)]), &el(3, &[(&[3], 1)])).unwrap(),
            el(3, &[(&[1, 2, 3], 1)])
        );
        assert!(wedge(&el(2, &[(&[1], 1)]), &el(3, &[(&[1], 1)])).is_err());
    }

    #[test]
    fn coproduct_examples() {
        let id = Element::<Q>::unit(2).unwrap();
        assert_eq!(grassmann_coproduct(&id), tens(2, &[(&[], &[], 1)]));
        assert_eq!(
            grassmann_coproduct(&el(2, &[(&[1], 1)])),
            tens(2, &[(&[1], &[], 1), (&[], &[1], 1)])
        );
        // four splits of {1,2}: only ({2},{1}) needs a transposition
        assert_eq!(
            grassmann_coproduct(&el(2, &[(&[1, 2], 1)])),
            tens(
                2,
                &[
                    (&[1, 2], &[], 1),
                    (&[1], &[2], 1),
                    (&[2], &[1], -1),
                    (&[], &[1, 2], 1)
                ]
            )
        );
    }

    #[test]
    fn antipode_counit_grade() {
        let id = Element::<Q>::unit(2).unwrap();
        assert_eq!(antipode(&id), id);
        assert_eq!(antipode(&el(2, &[(&[1], 1)])), el(2, &[(&[1], -1)]));
        assert_eq!(antipode(&el(2, &[(&[1, 2], 1)])), el(2, &[(&[1, 2], 1)]));

        assert_eq!(counit(&id), q(1));
        assert_eq!(counit(&el(2, &[(&[1], 1)])), q(0));
        assert_eq!(counit(&el(2, &[(&[], 3), (&[1, 2], 5)])), q(3));

        let x = el(2, &[(&[], 1), (&[1], 1)]);
        assert_eq!(grade_project(&x, 0).unwrap(), id);
        assert_eq!(grade_project(&x, 1).unwrap(), el(2, &[(&[1], 1)]));
        assert!(grade_project(&el(2, &[(&[1, 2], 1)]), 1).unwrap().is_empty());
        assert!(matches!(grade_project(&x, 3), Err(Error::GradeOutOfRange { .. })));
    }

    #[test]
    fn alpha_examples() {
        assert_eq!(alpha_encode(1, 0, 1).unwrap(), 1);
        assert_eq!(alpha_encode(0, 1, 1).unwrap(), 2);
        assert_eq!(alpha_decode(6, 2).unwrap(), (2, 1));
        assert!(alpha_encode(4, 0, 2).is_err());
        assert!(alpha_decode(16, 2).is_err());
        for n in 1..=3 {
            for pair in 0..(1 << (2 * n)) {
                let (i, j) = alpha_decode(pair, n).unwrap();
                assert_eq!(alpha_encode(i, j, n).unwrap(), pair);
            }
        }
    }

    #[test]
    fn switch_examples() {
        let p = switch_permutation::<Q>(1).unwrap();
        let expected = RectMatrix::from_rows(
            [[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]]
                .iter()
                .map(|r| r.iter().map(|&x| q(x)).collect())
                .collect(),
        )
        .unwrap();
        assert_eq!(p, expected);

        let p2 = switch_permutation::<Q>(2).unwrap();
        assert_eq!(p2.matmul(&p2).unwrap(), RectMatrix::identity(16));
    }

    #[test]
    fn switch_swaps_tensor_factors() {
        let p = switch_permutation::<Q>(2).unwrap();
        let x = el(2, &[(&[], 2), (&[1], -1), (&[1, 2], 3)]);
        let y = el(2, &[(&[2], 5), (&[1, 2], 1)]);
        let xy = TensorElement::tensor(&x, &y).unwrap().to_dense();
        let yx = TensorElement::tensor(&y, &x).unwrap().to_dense();
        assert_eq!(p.mul_vec(&xy).unwrap(), yx);
    }

    #[test]
    fn minus_style_tensor_product() {
        // (e1⊗Id − Id⊗e1)(e2⊗Id − Id⊗e2) under the graded switch
        let a = tens(2, &[(&[1], &[], 1), (&[], &[1], -1)]);
        let b = tens(2, &[(&[2], &[], 1), (&[], &[2], -1)]);
        assert_eq!(
            tensor_wedge(&a, &b).unwrap(),
            tens(
                2,
                &[
                    (&[1, 2], &[], 1),
                    (&[1], &[2], -1),
                    (&[2], &[1], 1),
                    (&[], &[1, 2], 1)
                ]
            )
        );
    }

    #[test]
    fn contract_with_wedge() {
        let t = grassmann_coproduct(&el(3, &[(&[1, 2, 3], 1)]));
        let back = contract(&t, wedge_blades).unwrap();
        assert_eq!(back, el(3, &[(&[1, 2, 3], 8)]));
    }
}
