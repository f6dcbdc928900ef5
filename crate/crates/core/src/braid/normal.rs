use std::fmt;

use super::perm::{check_strands, left_weight_pair, Perm};
use super::BraidWord;
use crate::error::{Error, Result};

/// Left-greedy normal form `Δ^m s_1 ⋯ s_p`.
///
/// Factors are stored as permutations. No factor is the identity, the first
/// is not `Δ`, and every left descent of `s_{j+1}` is a right descent of
/// `s_j`. Equal braids have equal normal forms, so `==` decides the word
/// problem.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct NormalForm {
    n: usize,
    m: i64,
    factors: Vec<Perm>,
}

/// Half-twist count in a word `Δ^m`: `n(n-1)/2`.
pub fn delta_length(n: usize) -> usize {
    n * (n.saturating_sub(1)) / 2
}

impl NormalForm {
    pub fn identity(n: usize) -> Result<Self> {
        check_strands(n)?;
        Ok(NormalForm {
            n,
            m: 0,
            factors: Vec::new(),
        })
    }

    /// Validates and wraps an already-normal factor sequence.
    pub fn from_parts(n: usize, m: i64, factors: Vec<Perm>) -> Result<Self> {
        check_strands(n)?;
        for (j, f) in factors.iter().enumerate() {
            if f.n() != n {
                return Err(Error::StrandMismatch {
                    left: n,
                    right: f.n(),
                });
            }
            if f.is_identity() {
                return Err(Error::InvalidNormalForm(format!("factor {} is the identity", j + 1)));
            }
        }
        if factors.first().is_some_and(|f| f.is_delta()) {
            return Err(Error::InvalidNormalForm("first factor is Δ".into()));
        }
        if let Some(j) = first_unweighted_pair(&factors) {
            return Err(Error::InvalidNormalForm(format!(
                "factors {} and {} are not left-weighted",
                j + 1,
                j + 2
            )));
        }
        Ok(NormalForm { n, m, factors })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Power of `Δ` (the infimum).
    pub fn infimum(&self) -> i64 {
        self.m
    }

    pub fn factors(&self) -> &[Perm] {
        &self.factors
    }

    /// Number of simple factors `p`.
    pub fn canonical_length(&self) -> usize {
        self.factors.len()
    }

    /// Length of [`NormalForm::word`]: `|m|·n(n-1)/2 + Σ inversions`.
    pub fn letter_length(&self) -> usize {
        self.m.unsigned_abs() as usize * delta_length(self.n)
            + self.factors.iter().map(Perm::inversions).sum::<usize>()
    }

    pub fn is_positive(&self) -> bool {
        self.m >= 0
    }

    pub fn is_identity(&self) -> bool {
        self.m == 0 && self.factors.is_empty()
    }

    /// Exponent sum of any word representing this braid.
    pub fn exponent_sum(&self) -> i64 {
        self.m * delta_length(self.n) as i64
            + self.factors.iter().map(|f| f.inversions() as i64).sum::<i64>()
    }

    pub fn permutation_image(&self) -> Perm {
        let mut p = if self.m.rem_euclid(2) == 1 {
            Perm::delta(self.n)
        } else {
            Perm::identity(self.n)
        };
        for f in &self.factors {
            p = p.compose_unchecked(f);
        }
        p
    }

    /// Back-translation to a word: `|m|` copies of the canonical `Δ` word
    /// (inverted when `m < 0`) followed by the canonical word of each factor.
    pub fn word(&self) -> BraidWord {
        let delta = Perm::delta(self.n).simple_word();
        let delta_letters: Vec<i32> = if self.m >= 0 {
            delta.into_letters()
        } else {
            delta.invert().into_letters()
        };
        let mut letters = Vec::with_capacity(self.letter_length());
        for _ in 0..self.m.unsigned_abs() {
            letters.extend_from_slice(&delta_letters);
        }
        for f in &self.factors {
            letters.extend(f.simple_word().into_letters());
        }
        BraidWord::new_unchecked(self.n, letters)
    }

    /// Normal form of an arbitrary word.
    pub fn of(word: &BraidWord) -> NormalForm {
        let n = word.n();
        let (e, positives) = delta_split(n, word.letters().iter().map(|&l| {
            let i = l.unsigned_abs() as usize;
            (Perm::transposition(n, i), l < 0)
        }));
        Builder::new(n, e, Vec::new()).extend(positives).finish()
    }

    /// `self · other`.
    pub fn mul(&self, other: &NormalForm) -> Result<NormalForm> {
        self.check_same(other.n)?;
        let flipped = self.factors.iter().map(|f| f.tau_pow(other.m)).collect();
        Ok(Builder::new(self.n, self.m + other.m, flipped)
            .extend(other.factors.iter().copied())
            .finish())
    }

    /// `self · w`.
    pub fn mul_word(&self, w: &BraidWord) -> Result<NormalForm> {
        self.check_same(w.n())?;
        self.mul(&NormalForm::of(w))
    }

    /// `w · self`.
    pub fn left_mul_word(&self, w: &BraidWord) -> Result<NormalForm> {
        self.check_same(w.n())?;
        NormalForm::of(w).mul(self)
    }

    pub fn inverse(&self) -> NormalForm {
        // (Δ^m S)⁻¹ = S⁻¹ Δ^{-m} = Δ^{-m} τ^m(S⁻¹)
        let items = self.factors.iter().rev().map(|f| (f.tau_pow(self.m), true));
        let (e, positives) = delta_split(self.n, items);
        Builder::new(self.n, e - self.m, Vec::new()).extend(positives).finish()
    }

    /// `self ≼ other` in the prefix order (`self⁻¹ · other` is positive).
    pub fn left_divides(&self, other: &NormalForm) -> Result<bool> {
        Ok(self.inverse().mul(other)?.is_positive())
    }

    /// Generators `σ_i` with `σ_i ≼ self`; only meaningful for positive braids.
    pub(crate) fn left_atoms(&self) -> super::perm::DescentSet {
        if self.m > 0 {
            Perm::delta(self.n).left_descents()
        } else if self.m == 0 {
            self.factors
                .first()
                .map(|f| f.left_descents())
                .unwrap_or_default()
        } else {
            Default::default()
        }
    }

    fn check_same(&self, n: usize) -> Result<()> {
        if self.n != n {
            return Err(Error::StrandMismatch {
                left: self.n,
                right: n,
            });
        }
        Ok(())
    }
}

impl fmt::Debug for NormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NF(n={}, m={}, {:?})", self.n, self.m, self.factors)
    }
}

/// Rewrites a product of signed simple braids as `Δ^e · (positive simples)`.
///
/// `s⁻¹ = ∂s · Δ⁻¹` with `∂s` the right complement; every `Δ⁻¹` is then
/// pushed to the far left, flipping each factor it crosses. A single
/// right-to-left sweep counts how many flips each factor receives.
fn delta_split(
    n: usize,
    items: impl DoubleEndedIterator<Item = (Perm, bool)> + ExactSizeIterator,
) -> (i64, Vec<Perm>) {
    let mut out = Vec::with_capacity(items.len());
    let mut inverses = 0i64;
    for (s, inverted) in items.rev() {
        let base = if inverted {
            inverses += 1;
            s.right_complement()
        } else {
            s
        };
        out.push(base.tau_pow(inverses));
    }
    out.reverse();
    debug_assert!(out.iter().all(|p| p.n() == n));
    (-inverses, out)
}

/// Incremental left-weighting. Each pushed simple is merged from the right
/// until a pair is already left-weighted.
///
/// A `Δ` produced by a merge is absorbed on the spot: `X·Δ·Y = Δ·τ(X)·Y`.
/// Factors are stored up to a global `τ` parity, so the twist of `X` is a
/// parity toggle plus an explicit twist of the (usually short) tail `Y`.
struct Builder {
    n: usize,
    m: i64,
    raw: Vec<Perm>,
    flip: bool,
    /// Set when a merge leaves an identity factor inside the sequence; the
    /// final pass then re-normalizes from scratch.
    dirty: bool,
}

impl Builder {
    fn new(n: usize, m: i64, factors: Vec<Perm>) -> Self {
        Builder {
            n,
            m,
            raw: factors,
            flip: false,
            dirty: false,
        }
    }

    fn frame(&self, p: Perm) -> Perm {
        if self.flip {
            p.tau()
        } else {
            p
        }
    }

    fn get(&self, i: usize) -> Perm {
        self.frame(self.raw[i])
    }

    fn set(&mut self, i: usize, p: Perm) {
        self.raw[i] = self.frame(p);
    }

    /// Removes the `Δ` at `k`, moving it to the front.
    fn absorb_delta(&mut self, k: usize) {
        self.raw.remove(k);
        self.flip = !self.flip;
        for p in &mut self.raw[k..] {
            *p = p.tau();
        }
        self.m += 1;
    }

    fn push(&mut self, s: Perm) {
        if s.is_identity() {
            return;
        }
        if s.is_delta() && self.raw.is_empty() {
            self.m += 1;
            return;
        }
        let s = self.frame(s);
        self.raw.push(s);
        let mut j = self.raw.len() - 1;
        while j > 0 {
            let a = self.get(j - 1);
            let (u, v) = left_weight_pair(&a, &self.get(j));
            if u == a {
                break;
            }
            self.set(j - 1, u);
            self.set(j, v);
            if v.is_identity() {
                if j + 1 == self.raw.len() {
                    self.raw.pop();
                } else {
                    self.dirty = true;
                }
            }
            if u.is_delta() {
                self.absorb_delta(j - 1);
            }
            j -= 1;
            if j >= self.raw.len() {
                break;
            }
        }
        if self.raw.first().is_some_and(|&p| p.is_delta()) {
            self.absorb_delta(0);
        }
    }

    fn extend(mut self, simples: impl IntoIterator<Item = Perm>) -> Self {
        for s in simples {
            self.push(s);
        }
        self
    }

    fn factors(&self) -> Vec<Perm> {
        (0..self.raw.len()).map(|i| self.get(i)).collect()
    }

    fn finish(self) -> NormalForm {
        let mut factors = self.factors();
        let mut m = self.m;
        if self.dirty {
            let again = Builder::new(self.n, m, Vec::new()).extend(factors);
            debug_assert!(!again.dirty);
            factors = again.factors();
            m = again.m;
        }
        // Bubble passes until no pair moves; a no-op when the incremental
        // merge already produced a normal sequence.
        while let Some(j) = first_unweighted_pair(&factors) {
            let (u, v) = left_weight_pair(&factors[j], &factors[j + 1]);
            factors[j] = u;
            factors[j + 1] = v;
        }
        factors.retain(|f| !f.is_identity());
        let leading = factors.iter().take_while(|f| f.is_delta()).count();
        m += leading as i64;
        factors.drain(..leading);
        debug_assert!(first_unweighted_pair(&factors).is_none());
        NormalForm {
            n: self.n,
            m,
            factors,
        }
    }
}

fn first_unweighted_pair(factors: &[Perm]) -> Option<usize> {
    factors
        .windows(2)
        .position(|w| !w[1].left_descents().is_subset(&w[0].right_descents()))
}

pub fn normal_form(w: &BraidWord) -> NormalForm {
    NormalForm::of(w)
}

pub fn word_of(nf: &NormalForm) -> BraidWord {
    nf.word()
}

pub fn is_positive(nf: &NormalForm) -> bool {
    nf.is_positive()
}
