use std::fmt;

use super::perm::{check_strands, Perm};
use crate::error::{Error, Result};

/// A word in the Artin generators of `B_n`, stored in time order: the
/// leftmost letter acts first when the word is run as an R-circuit. Positive
/// `k` is `σ_k`, negative `k` is `σ_k⁻¹`.
///
/// As a group element the word denotes the product of its letters read left
/// to right.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BraidWord {
    n: usize,
    letters: Vec<i32>,
}

impl BraidWord {
    pub fn new(n: usize, letters: Vec<i32>) -> Result<Self> {
        check_strands(n)?;
        for &l in &letters {
            if l == 0 || l.unsigned_abs() as usize >= n {
                return Err(Error::LetterOutOfRange {
                    letter: l as i64,
                    n,
                });
            }
        }
        Ok(BraidWord { n, letters })
    }

    pub(crate) fn new_unchecked(n: usize, letters: Vec<i32>) -> Self {
        debug_assert!(letters.iter().all(|&l| l != 0 && (l.unsigned_abs() as usize) < n));
        BraidWord { n, letters }
    }

    pub fn identity(n: usize) -> Result<Self> {
        BraidWord::new(n, Vec::new())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    pub fn into_letters(self) -> Vec<i32> {
        self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// True when no inverse generator occurs.
    pub fn is_positive(&self) -> bool {
        self.letters.iter().all(|&l| l > 0)
    }

    pub fn exponent_sum(&self) -> i64 {
        self.letters.iter().map(|&l| l.signum() as i64).sum()
    }

    pub fn concat(&self, other: &BraidWord) -> Result<BraidWord> {
        if self.n != other.n {
            return Err(Error::StrandMismatch {
                left: self.n,
                right: other.n,
            });
        }
        let mut letters = Vec::with_capacity(self.len() + other.len());
        letters.extend_from_slice(&self.letters);
        letters.extend_from_slice(&other.letters);
        Ok(BraidWord { n: self.n, letters })
    }

    /// Reverse and negate.
    pub fn invert(&self) -> BraidWord {
        BraidWord {
            n: self.n,
            letters: self.letters.iter().rev().map(|&l| -l).collect(),
        }
    }

    /// Letterwise flip `σ_i ↦ σ_{n-i}`.
    pub fn tau(&self) -> BraidWord {
        let n = self.n as i32;
        BraidWord {
            n: self.n,
            letters: self.letters.iter().map(|&l| l.signum() * (n - l.abs())).collect(),
        }
    }

    pub fn permutation_image(&self) -> Perm {
        let mut p = Perm::identity(self.n);
        for &l in &self.letters {
            p.mul_right_gen(l.unsigned_abs() as usize);
        }
        p
    }
}

impl fmt::Debug for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BraidWord(n={}, {:?})", self.n, self.letters)
    }
}

pub fn invert(w: &BraidWord) -> BraidWord {
    w.invert()
}

pub fn permutation_image(w: &BraidWord) -> Perm {
    w.permutation_image()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(n: usize, letters: &[i32]) -> BraidWord {
        BraidWord::new(n, letters.to_vec()).unwrap()
    }

    #[test]
    fn validates_letters() {
        assert!(BraidWord::new(3, vec![3]).is_err());
        assert!(BraidWord::new(3, vec![0]).is_err());
        assert!(BraidWord::new(3, vec![-2, 1]).is_ok());
        assert!(BraidWord::new(0, vec![]).is_err());
    }

    #[test]
    fn image_examples() {
        assert!(w(3, &[]).permutation_image().is_identity());
        assert_eq!(w(3, &[1, 2, 1]).permutation_image(), Perm::delta(3));
        assert_eq!(w(3, &[-1]).permutation_image(), Perm::transposition(3, 1));
    }

    #[test]
    fn image_is_homomorphism() {
        let a = w(5, &[1, -3, 4, 2]);
        let b = w(5, &[-2, 2, 3, 1, -4]);
        let ab = a.concat(&b).unwrap();
        assert_eq!(
            ab.permutation_image(),
            a.permutation_image().compose(&b.permutation_image()).unwrap()
        );
    }

    #[test]
    fn invert_examples() {
        assert!(w(3, &[]).invert().is_empty());
        assert_eq!(w(3, &[1, -2]).invert().letters(), &[2, -1]);
    }

    #[test]
    fn tau_word_maps_letters() {
        assert_eq!(w(5, &[1, -2, 4]).tau().letters(), &[4, -3, 1]);
    }
}
