//! Basis monomials of the exterior algebra, encoded as bitsets.

use std::fmt;

use crate::error::{Error, Result};

/// Largest supported generator count. Pair indices are `4^n`, so this keeps
/// every index inside `usize` on 32-bit targets too.
pub const MAX_DIM: usize = 15;

/// A basis blade `e_{i1} ∧ … ∧ e_{ir}` with `i1 < … < ir`.
///
/// Bit `i - 1` of `mask` is set iff generator `e_i` is present. The derived
/// ordering compares `dim` first and then `mask`, so blades of one algebra
/// are ordered by integer mask: for `n = 2` that is `Id, e1, e2, e12`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Blade {
    dim: u8,
    mask: u32,
}

impl Blade {
    pub fn new(dim: usize, mask: u32) -> Result<Self> {
        check_dim(dim)?;
        if (mask as u64) >= (1u64 << dim) {
            return Err(Error::IndexOutOfRange {
                index: mask as usize,
                bound: 1 << dim,
            });
        }
        Ok(Blade {
            dim: dim as u8,
            mask,
        })
    }

    /// The unit `Id` (empty index set).
    pub fn unit(dim: usize) -> Result<Self> {
        Blade::new(dim, 0)
    }

    /// Generator `e_i`, 1-based.
    pub fn generator(dim: usize, i: usize) -> Result<Self> {
        if i == 0 || i > dim {
            return Err(Error::IndexOutOfRange {
                index: i,
                bound: dim + 1,
            });
        }
        Blade::new(dim, 1 << (i - 1))
    }

    /// Blade from a list of 1-based generator indices (any order, no repeats).
    pub fn from_indices(dim: usize, indices: &[usize]) -> Result<Self> {
        let mut mask = 0u32;
        for &i in indices {
            let g = Blade::generator(dim, i)?;
            if mask & g.mask != 0 {
                return Err(Error::InvalidArgument(format!("repeated generator e{i}")));
            }
            mask |= g.mask;
        }
        Blade::new(dim, mask)
    }

    /// Internal constructor for masks already known to be in range.
    pub(crate) fn from_mask(dim: usize, mask: u32) -> Self {
        debug_assert!((mask as u64) < (1u64 << dim));
        Blade {
            dim: dim as u8,
            mask,
        }
    }

    pub fn dim(self) -> usize {
        self.dim as usize
    }

    pub fn mask(self) -> u32 {
        self.mask
    }

    /// Position in the linearly ordered blade basis.
    pub fn index(self) -> usize {
        self.mask as usize
    }

    pub fn grade(self) -> usize {
        self.mask.count_ones() as usize
    }

    /// 1-based generator indices in increasing order.
    pub fn indices(self) -> Vec<usize> {
        (0..self.dim as usize)
            .filter(|b| self.mask & (1 << b) != 0)
            .map(|b| b + 1)
            .collect()
    }

    /// All `2^dim` blades in basis order.
    pub fn basis(dim: usize) -> Result<impl Iterator<Item = Blade>> {
        check_dim(dim)?;
        Ok((0..(1u32 << dim)).map(move |m| Blade::from_mask(dim, m)))
    }

    /// Ordered splits `S = S1 ⊔ S2` with their shuffle signs.
    pub fn splits(self) -> impl Iterator<Item = (bool, Blade, Blade)> {
        let dim = self.dim();
        let whole = self.mask;
        // Enumerate submasks of `whole`, including 0 and `whole`.
        let mut sub = Some(whole);
        std::iter::from_fn(move || {
            let s1 = sub?;
            sub = if s1 == 0 { None } else { Some((s1 - 1) & whole) };
            let s2 = whole & !s1;
            Some((
                inversion_parity(s1, s2),
                Blade::from_mask(dim, s1),
                Blade::from_mask(dim, s2),
            ))
        })
    }
}

impl fmt::Debug for Blade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Blade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.mask == 0 {
            return f.write_str("Id");
        }
        f.write_str("e")?;
        let idx = self.indices();
        if self.dim > 9 && idx.len() > 1 {
            let parts: Vec<String> = idx.iter().map(|i| i.to_string()).collect();
            write!(f, "{}", parts.join("_"))
        } else {
            for i in idx {
                write!(f, "{i}")?;
            }
            Ok(())
        }
    }
}

pub(crate) fn check_dim(dim: usize) -> Result<()> {
    if dim == 0 || dim > MAX_DIM {
        Err(Error::InvalidDimension(dim))
    } else {
        Ok(())
    }
}

/// Parity of the number of pairs `(i in left, j in right)` with `i > j`.
///
/// This is the sign of the permutation sorting the concatenation
/// `sorted(left) ++ sorted(right)`.
pub fn inversion_parity(left: u32, right: u32) -> bool {
    let mut count = 0u32;
    let mut r = right;
    while r != 0 {
        let j = r.trailing_zeros();
        // bits of `left` strictly above position j
        let above = if j >= 31 { 0 } else { left & !((2u32 << j) - 1) };
        count += above.count_ones();
        r &= r - 1;
    }
    count % 2 == 1
}

/// Exterior product of two blades.
///
/// Returns `(sign, union)` with `sign` in `{-1, 0, +1}`. The sign is zero
/// exactly when the index sets intersect; the blade is then meaningless.
pub fn blade_wedge(s: Blade, t: Blade) -> Result<(i8, Blade)> {
    if s.dim != t.dim {
        return Err(Error::DimensionMismatch {
            left: s.dim(),
            right: t.dim(),
        });
    }
    let union = Blade::from_mask(s.dim(), s.mask | t.mask);
    if s.mask & t.mask != 0 {
        return Ok((0, union));
    }
    let sign = if inversion_parity(s.mask, t.mask) { -1 } else { 1 };
    Ok((sign, union))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(dim: usize, idx: &[usize]) -> Blade {
        Blade::from_indices(dim, idx).unwrap()
    }

    #[test]
    fn wedge_examples() {
        assert_eq!(blade_wedge(e(2, &[1]), e(2, &[2])).unwrap(), (1, e(2, &[1, 2])));
        assert_eq!(blade_wedge(e(2, &[2]), e(2, &[1])).unwrap(), (-1, e(2, &[1, 2])));
        assert_eq!(blade_wedge(e(2, &[1]), e(2, &[1])).unwrap().0, 0);
    }

    #[test]
    fn wedge_dimension_mismatch() {
        assert!(matches!(
            blade_wedge(e(2, &[1]), e(3, &[2])),
            Err(Error::DimensionMismatch { left: 2, right: 3 })
        ));
    }

    #[test]
    fn basis_order_matches_mask_order() {
        let names: Vec<String> = Blade::basis(2).unwrap().map(|b| b.to_string()).collect();
        assert_eq!(names, ["Id", "e1", "e2", "e12"]);
        let mut sorted: Vec<Blade> = Blade::basis(3).unwrap().collect();
        sorted.reverse();
        sorted.sort();
        assert_eq!(sorted, Blade::basis(3).unwrap().collect::<Vec<_>>());
    }

    #[test]
    fn constructor_bounds() {
        assert!(Blade::new(2, 4).is_err());
        assert!(Blade::new(0, 0).is_err());
        assert!(Blade::new(MAX_DIM + 1, 0).is_err());
        assert!(Blade::generator(3, 0).is_err());
        assert!(Blade::generator(3, 4).is_err());
        assert!(Blade::from_indices(3, &[2, 2]).is_err());
        assert_eq!(e(4, &[3, 1]).indices(), vec![1, 3]);
        assert_eq!(e(4, &[1, 2, 4]).grade(), 3);
    }

    #[test]
    fn split_count_is_power_of_two() {
        for b in Blade::basis(4).unwrap() {
            assert_eq!(b.splits().count(), 1 << b.grade());
        }
    }

    /// Sign of the permutation taking `sorted(S)` to `sorted(S1) ++ sorted(S2)`,
    /// by explicit bubble sort.
    fn brute_shuffle_sign(s1: &[usize], s2: &[usize]) -> bool {
        let mut seq: Vec<usize> = s1.iter().chain(s2).copied().collect();
        let mut swaps = 0;
        for i in 0..seq.len() {
            for j in 0..seq.len() - 1 - i {
                if seq[j] > seq[j + 1] {
                    seq.swap(j, j + 1);
                    swaps += 1;
                }
            }
        }
        swaps % 2 == 1
    }

    #[test]
    fn split_signs_match_bubble_sort() {
        for b in Blade::basis(5).unwrap() {
            for (odd, s1, s2) in b.splits() {
                assert_eq!(s1.mask() | s2.mask(), b.mask());
                assert_eq!(s1.mask() & s2.mask(), 0);
                assert_eq!(odd, brute_shuffle_sign(&s1.indices(), &s2.indices()));
            }
        }
    }

    #[test]
    fn high_generator_parity() {
        // e15 ∧ e1 needs one transposition
        let hi = Blade::generator(15, 15).unwrap();
        let lo = Blade::generator(15, 1).unwrap();
        assert_eq!(blade_wedge(hi, lo).unwrap().0, -1);
        assert_eq!(blade_wedge(lo, hi).unwrap().0, 1);
    }
}
