//! Fixed-width bitsets over universe positions.

use crate::element::{Subset, Universe};
use crate::error::Result;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub(crate) struct Bits(Box<[u64]>);

impl Bits {
    pub(crate) fn zeros(len: usize) -> Bits {
        Bits(vec![0; len.div_ceil(64)].into_boxed_slice())
    }

    pub(crate) fn from_mask(mask: &[bool]) -> Bits {
        let mut b = Bits::zeros(mask.len());
        for (i, _) in mask.iter().enumerate().filter(|(_, &m)| m) {
            b.insert(i);
        }
        b
    }

    pub(crate) fn of(universe: &Universe, s: &Subset) -> Result<Bits> {
        Ok(Bits::from_mask(&universe.mask(s)?))
    }

    pub(crate) fn insert(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    pub(crate) fn contains(&self, i: usize) -> bool {
        self.0[i / 64] >> (i % 64) & 1 == 1
    }

    pub(crate) fn is_subset_of(&self, other: &Bits) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a & !b == 0)
    }

    pub(crate) fn and(&self, other: &Bits) -> Bits {
        Bits(self.0.iter().zip(other.0.iter()).map(|(a, b)| a & b).collect())
    }

    pub(crate) fn and_not(&self, other: &Bits) -> Bits {
        Bits(self.0.iter().zip(other.0.iter()).map(|(a, b)| a & !b).collect())
    }

    #[cfg(test)]
    pub(crate) fn count(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub(crate) fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().flat_map(|(w, &word)| {
            (0..64).filter(move |b| word >> b & 1 == 1).map(move |b| w * 64 + b)
        })
    }

    pub(crate) fn to_subset(&self, universe: &Universe) -> Subset {
        Subset::new(self.ones().map(|i| universe.get(i)))
    }

    /// Sum of `weights` over the set positions.
    pub(crate) fn weigh(&self, weights: &[i64]) -> i128 {
        self.ones().map(|i| weights[i] as i128).sum()
    }
}

/// Spreads the low bits of `code` over `positions`: bit `j` of `code` sets
/// `positions[j]`.
pub(crate) fn scatter(len: usize, positions: &[usize], code: u64) -> Bits {
    let mut b = Bits::zeros(len);
    for (j, &p) in positions.iter().enumerate() {
        if code >> j & 1 == 1 {
            b.insert(p);
        }
    }
    b
}

/// Packs the membership of `positions` in `b` into the low bits of a word.
pub(crate) fn gather(b: &Bits, positions: &[usize]) -> u64 {
    positions
        .iter()
        .enumerate()
        .filter(|(_, &p)| b.contains(p))
        .fold(0, |acc, (j, _)| acc | 1 << j)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scatter_and_gather_are_inverse() {
        let positions = [1, 4, 70];
        for code in 0..8 {
            let b = scatter(80, &positions, code);
            assert_eq!(b.count(), (code as u64).count_ones() as usize);
            assert_eq!(gather(&b, &positions), code);
        }
    }

    #[test]
    fn set_operations_cross_word_boundaries() {
        let a = Bits::from_mask(&(0..130).map(|i| i % 3 == 0).collect::<Vec<_>>());
        let b = Bits::from_mask(&(0..130).map(|i| i == 129).collect::<Vec<_>>());
        assert!(b.is_subset_of(&a));
        assert_eq!(a.and_not(&b).count(), a.count() - 1);
        assert_eq!(b.ones().collect::<Vec<_>>(), vec![129]);
    }
}
