//! Gram spectra of Clifford products for diagonal forms `diag(l_1, …, l_n)`.

use std::collections::BTreeMap;

use crate::blade::Blade;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Eigenvalue of `A` on blade `e_S`: `2^{|S|} · ∏_{i∉S} (1 + l_i²)`.
pub fn diagonal_metric_spectrum<S: Scalar>(n: usize, l: &[S]) -> Result<BTreeMap<Blade, S>> {
    if l.len() != n {
        return Err(Error::DimensionMismatch {
            left: n,
            right: l.len(),
        });
    }
    let two = S::from_i64(2);
    let mut out = BTreeMap::new();
    for b in Blade::basis(n)? {
        let mut value = S::one();
        for (i, li) in l.iter().enumerate() {
            if b.mask() & (1 << i) != 0 {
                value = value * two.clone();
            } else {
                value = value * (S::one() + li.clone() * li.clone());
            }
        }
        out.insert(b, value);
    }
    Ok(out)
}

/// Eigenvalue multiplicities of [`diagonal_metric_spectrum`].
pub fn multiset<S: Scalar + Ord>(spectrum: &BTreeMap<Blade, S>) -> BTreeMap<S, usize> {
    let mut out = BTreeMap::new();
    for v in spectrum.values() {
        *out.entry(v.clone()).or_insert(0) += 1;
    }
    out
}
