//! Sparse elements of `V^∧` and `V^∧ ⊗ V^∧`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use crate::blade::{check_dim, Blade};
use crate::error::{Error, Result};
use crate::exterior::{alpha_decode, alpha_encode};
use crate::scalar::Scalar;

/// An element of the exterior algebra as a sparse blade → coefficient map.
/// Exact zeros are never stored.
#[derive(Clone, PartialEq)]
pub struct Element<S> {
    dim: usize,
    coeffs: BTreeMap<Blade, S>,
}

impl<S: Scalar> Element<S> {
    pub fn zero(dim: usize) -> Result<Self> {
        check_dim(dim)?;
        Ok(Element {
            dim,
            coeffs: BTreeMap::new(),
        })
    }

    /// `c · Id`.
    pub fn scalar(dim: usize, c: S) -> Result<Self> {
        let mut x = Element::zero(dim)?;
        x.add_term(Blade::from_mask(dim, 0), c);
        Ok(x)
    }

    pub fn unit(dim: usize) -> Result<Self> {
        Element::scalar(dim, S::one())
    }

    pub fn blade(b: Blade) -> Self {
        Element::term(b, S::one())
    }

    pub fn term(b: Blade, c: S) -> Self {
        let mut x = Element {
            dim: b.dim(),
            coeffs: BTreeMap::new(),
        };
        x.add_term(b, c);
        x
    }

    /// Generator `e_i`, 1-based.
    pub fn generator(dim: usize, i: usize) -> Result<Self> {
        Ok(Element::blade(Blade::generator(dim, i)?))
    }

    pub fn from_terms(dim: usize, terms: impl IntoIterator<Item = (Blade, S)>) -> Result<Self> {
        let mut x = Element::zero(dim)?;
        for (b, c) in terms {
            if b.dim() != dim {
                return Err(Error::DimensionMismatch {
                    left: dim,
                    right: b.dim(),
                });
            }
            x.add_term(b, c);
        }
        Ok(x)
    }

    /// Element from a dense coefficient vector in blade order.
    pub fn from_dense(dim: usize, values: &[S]) -> Result<Self> {
        check_dim(dim)?;
        if values.len() != 1 << dim {
            return Err(Error::DimensionMismatch {
                left: 1 << dim,
                right: values.len(),
            });
        }
        let terms = values
            .iter()
            .enumerate()
            .map(|(m, c)| (Blade::from_mask(dim, m as u32), c.clone()));
        Element::from_terms(dim, terms)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn coeff(&self, b: Blade) -> S {
        self.coeffs.get(&b).cloned().unwrap_or_else(S::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (Blade, &S)> {
        self.coeffs.iter().map(|(b, c)| (*b, c))
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.values().all(|c| c.is_negligible())
    }

    /// Accumulates `c · b`, dropping the entry if it cancels to zero.
    pub fn add_term(&mut self, b: Blade, c: S) {
        debug_assert_eq!(b.dim(), self.dim);
        if c.is_zero() {
            return;
        }
        match self.coeffs.remove(&b) {
            Some(old) => {
                let sum = old + c;
                if !sum.is_zero() {
                    self.coeffs.insert(b, sum);
                }
            }
            None => {
                self.coeffs.insert(b, c);
            }
        }
    }

    pub fn scale(&self, c: &S) -> Self {
        let mut out = Element {
            dim: self.dim,
            coeffs: BTreeMap::new(),
        };
        for (b, x) in &self.coeffs {
            out.add_term(*b, x.clone() * c.clone());
        }
        out
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        same_dim(self.dim, other.dim)?;
        let mut out = self.clone();
        for (b, c) in &other.coeffs {
            out.add_term(*b, c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        same_dim(self.dim, other.dim)?;
        let mut out = self.clone();
        for (b, c) in &other.coeffs {
            out.add_term(*b, -c.clone());
        }
        Ok(out)
    }

    /// Dense coefficient vector in blade order.
    pub fn to_dense(&self) -> Vec<S> {
        let mut v = vec![S::zero(); 1 << self.dim];
        for (b, c) in &self.coeffs {
            v[b.index()] = c.clone();
        }
        v
    }

    /// Coefficient-wise equality under the scalar's notion of equality.
    pub fn approx_eq(&self, other: &Self) -> bool {
        self.dim == other.dim
            && self
                .try_sub(other)
                .map(|d| d.is_zero())
                .unwrap_or(false)
    }

    /// Applies a scalar map to each coefficient.
    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Element<T> {
        let mut out = Element {
            dim: self.dim,
            coeffs: BTreeMap::new(),
        };
        for (b, c) in &self.coeffs {
            out.add_term(*b, f(c));
        }
        out
    }
}

impl<S: Scalar> Add for &Element<S> {
    type Output = Element<S>;

    /// Panics on dimension mismatch; use [`Element::try_add`] otherwise.
    fn add(self, rhs: &Element<S>) -> Element<S> {
        self.try_add(rhs).expect("element dimensions agree")
    }
}

impl<S: Scalar> Sub for &Element<S> {
    type Output = Element<S>;

    fn sub(self, rhs: &Element<S>) -> Element<S> {
        self.try_sub(rhs).expect("element dimensions agree")
    }
}

impl<S: Scalar> Neg for &Element<S> {
    type Output = Element<S>;

    fn neg(self) -> Element<S> {
        self.scale(&-S::one())
    }
}

impl<S: Scalar> fmt::Debug for Element<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl<S: Scalar> fmt::Display for Element<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .map(|(b, c)| format!("({c})·{b}"))
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

/// An element of `V^∧ ⊗ V^∧` as a sparse map over blade pairs.
#[derive(Clone, PartialEq)]
pub struct TensorElement<S> {
    dim: usize,
    coeffs: BTreeMap<(Blade, Blade), S>,
}

impl<S: Scalar> TensorElement<S> {
    pub fn zero(dim: usize) -> Result<Self> {
        check_dim(dim)?;
        Ok(TensorElement {
            dim,
            coeffs: BTreeMap::new(),
        })
    }

    pub fn term(left: Blade, right: Blade, c: S) -> Result<Self> {
        same_dim(left.dim(), right.dim())?;
        let mut t = TensorElement::zero(left.dim())?;
        t.add_term(left, right, c);
        Ok(t)
    }

    /// `x ⊗ y` for elements.
    pub fn tensor(x: &Element<S>, y: &Element<S>) -> Result<Self> {
        same_dim(x.dim(), y.dim())?;
        let mut t = TensorElement::zero(x.dim())?;
        for (a, ca) in x.terms() {
            for (b, cb) in y.terms() {
                t.add_term(a, b, ca.clone() * cb.clone());
            }
        }
        Ok(t)
    }

    pub fn from_terms(
        dim: usize,
        terms: impl IntoIterator<Item = (Blade, Blade, S)>,
    ) -> Result<Self> {
        let mut t = TensorElement::zero(dim)?;
        for (a, b, c) in terms {
            same_dim(dim, a.dim())?;
            same_dim(dim, b.dim())?;
            t.add_term(a, b, c);
        }
        Ok(t)
    }

    /// Tensor element from a dense vector indexed by pair index.
    pub fn from_dense(dim: usize, values: &[S]) -> Result<Self> {
        check_dim(dim)?;
        let len = 1usize << (2 * dim);
        if values.len() != len {
            return Err(Error::DimensionMismatch {
                left: len,
                right: values.len(),
            });
        }
        let mut t = TensorElement::zero(dim)?;
        for (idx, c) in values.iter().enumerate() {
            let (i, j) = alpha_decode(idx, dim)?;
            t.add_term(
                Blade::from_mask(dim, i as u32),
                Blade::from_mask(dim, j as u32),
                c.clone(),
            );
        }
        Ok(t)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn coeff(&self, left: Blade, right: Blade) -> S {
        self.coeffs
            .get(&(left, right))
            .cloned()
            .unwrap_or_else(S::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (Blade, Blade, &S)> {
        self.coeffs.iter().map(|((a, b), c)| (*a, *b, c))
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.values().all(|c| c.is_negligible())
    }

    pub fn add_term(&mut self, left: Blade, right: Blade, c: S) {
        if c.is_zero() {
            return;
        }
        let key = (left, right);
        match self.coeffs.remove(&key) {
            Some(old) => {
                let sum = old + c;
                if !sum.is_zero() {
                    self.coeffs.insert(key, sum);
                }
            }
            None => {
                self.coeffs.insert(key, c);
            }
        }
    }

    pub fn scale(&self, c: &S) -> Self {
        let mut out = TensorElement {
            dim: self.dim,
            coeffs: BTreeMap::new(),
        };
        for ((a, b), x) in &self.coeffs {
            out.add_term(*a, *b, x.clone() * c.clone());
        }
        out
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        same_dim(self.dim, other.dim)?;
        let mut out = self.clone();
        for ((a, b), c) in &other.coeffs {
            out.add_term(*a, *b, c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        same_dim(self.dim, other.dim)?;
        let mut out = self.clone();
        for ((a, b), c) in &other.coeffs {
            out.add_term(*a, *b, -c.clone());
        }
        Ok(out)
    }

    /// Dense vector indexed by [`alpha_encode`].
    pub fn to_dense(&self) -> Vec<S> {
        let mut v = vec![S::zero(); 1 << (2 * self.dim)];
        for ((a, b), c) in &self.coeffs {
            let idx = alpha_encode(a.index(), b.index(), self.dim).expect("blade indices in range");
            v[idx] = c.clone();
        }
        v
    }

    pub fn approx_eq(&self, other: &Self) -> bool {
        self.dim == other.dim
            && self
                .try_sub(other)
                .map(|d| d.is_zero())
                .unwrap_or(false)
    }
}

impl<S: Scalar> fmt::Debug for TensorElement<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl<S: Scalar> fmt::Display for TensorElement<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .map(|((a, b), c)| format!("({c})·{a}⊗{b}"))
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

pub(crate) fn same_dim(left: usize, right: usize) -> Result<()> {
    if left == right {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { left, right })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    fn q(n: i64) -> Rational {
        Rational::from_i64(n)
    }

    #[test]
    fn cancellation_drops_entries() {
        let e1 = Element::<Rational>::generator(2, 1).unwrap();
        let d = &e1 - &e1;
        assert!(d.is_empty());
        assert!(d.is_zero());
    }

    #[test]
    fn dense_round_trip() {
        let vals: Vec<Rational> = (0..4).map(q).collect();
        let x = Element::from_dense(2, &vals).unwrap();
        assert_eq!(x.len(), 3);
        assert_eq!(x.to_dense(), vals);

        let tvals: Vec<Rational> = (0..16).map(|i| q(i % 3)).collect();
        let t = TensorElement::from_dense(2, &tvals).unwrap();
        assert_eq!(t.to_dense(), tvals);
    }

    #[test]
    fn mismatched_dims_are_errors() {
        let a = Element::<Rational>::generator(2, 1).unwrap();
        let b = Element::<Rational>::generator(3, 1).unwrap();
        assert!(a.try_add(&b).is_err());
        assert!(TensorElement::tensor(&a, &b).is_err());
        assert!(Element::<Rational>::from_dense(2, &[q(1)]).is_err());
    }

    #[test]
    fn display_is_readable() {
        let x = Element::from_terms(
            2,
            [
                (Blade::unit(2).unwrap(), q(3)),
                (Blade::new(2, 3).unwrap(), q(-1)),
            ],
        )
        .unwrap();
        assert_eq!(x.to_string(), "(3)·Id + (-1)·e12");
    }
}
