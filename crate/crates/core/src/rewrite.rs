//! Random words and random relation rewrites, used to fuzz canonical forms.

use rand::Rng;

use crate::braid::BraidWord;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rewrite {
    /// `σ_i^± σ_j^± = σ_j^± σ_i^±` for `|i - j| ≥ 2`.
    Commute,
    /// `σ_i σ_j σ_i = σ_j σ_i σ_j` for `|i - j| = 1`, both signs.
    BraidRelation,
    /// Insert `σ_i σ_i⁻¹` or `σ_i⁻¹ σ_i`.
    InsertPair,
    /// Delete an adjacent cancelling pair.
    DeletePair,
}

/// Uniform random word of the given length (letters and signs uniform).
pub fn random_word<R: Rng + ?Sized>(n: usize, len: usize, rng: &mut R) -> BraidWord {
    assert!(n >= 2 || len == 0);
    let letters = (0..len)
        .map(|_| {
            let i = rng.random_range(1..n as i32);
            if rng.random_bool(0.5) {
                i
            } else {
                -i
            }
        })
        .collect();
    BraidWord::new(n, letters).expect("letters in range")
}

pub fn random_positive_word<R: Rng + ?Sized>(n: usize, len: usize, rng: &mut R) -> BraidWord {
    let letters = (0..len).map(|_| rng.random_range(1..n as i32)).collect();
    BraidWord::new(n, letters).expect("letters in range")
}

/// Applies one rewrite of a randomly chosen kind at a random applicable
/// site. Falls back to insertion when the chosen kind has no site.
pub fn rewrite_once<R: Rng + ?Sized>(letters: &mut Vec<i32>, n: usize, rng: &mut R) -> Rewrite {
    let kind = match rng.random_range(0..4) {
        0 => Rewrite::Commute,
        1 => Rewrite::BraidRelation,
        2 => Rewrite::InsertPair,
        _ => Rewrite::DeletePair,
    };
    let sites: Vec<usize> = match kind {
        Rewrite::Commute => (0..letters.len().saturating_sub(1))
            .filter(|&k| (letters[k].abs() - letters[k + 1].abs()).abs() >= 2)
            .collect(),
        Rewrite::BraidRelation => (0..letters.len().saturating_sub(2))
            .filter(|&k| {
                let (a, b, c) = (letters[k], letters[k + 1], letters[k + 2]);
                a == c && (a.abs() - b.abs()).abs() == 1 && a.signum() == b.signum()
            })
            .collect(),
        Rewrite::DeletePair => (0..letters.len().saturating_sub(1))
            .filter(|&k| letters[k] == -letters[k + 1])
            .collect(),
        Rewrite::InsertPair => Vec::new(),
    };
    if sites.is_empty() || kind == Rewrite::InsertPair {
        let pos = rng.random_range(0..=letters.len());
        let i = rng.random_range(1..n as i32);
        let sign = if rng.random_bool(0.5) { 1 } else { -1 };
        letters.splice(pos..pos, [sign * i, -sign * i]);
        return Rewrite::InsertPair;
    }
    let k = sites[rng.random_range(0..sites.len())];
    match kind {
        Rewrite::Commute => letters.swap(k, k + 1),
        Rewrite::BraidRelation => {
            let (a, b) = (letters[k], letters[k + 1]);
            letters[k..k + 3].copy_from_slice(&[b, a, b]);
        }
        Rewrite::DeletePair => {
            letters.drain(k..k + 2);
        }
        Rewrite::InsertPair => unreachable!(),
    }
    kind
}

/// `count` successive random rewrites of `w`; the result is the same braid.
pub fn random_rewrites<R: Rng + ?Sized>(w: &BraidWord, count: usize, rng: &mut R) -> BraidWord {
    let n = w.n();
    if n < 2 {
        return w.clone();
    }
    let mut letters = w.letters().to_vec();
    for _ in 0..count {
        rewrite_once(&mut letters, n, rng);
    }
    BraidWord::new(n, letters).expect("rewrites keep letters in range")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn rewrites_preserve_permutation_and_exponent_sum() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let w = random_word(6, 40, &mut rng);
            let v = random_rewrites(&w, 30, &mut rng);
            assert_eq!(w.permutation_image(), v.permutation_image());
            assert_eq!(w.exponent_sum(), v.exponent_sum());
        }
    }

    #[test]
    fn braid_relation_site() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let mut seen = false;
        for _ in 0..64 {
            let mut letters = vec![1, 2, 1];
            if rewrite_once(&mut letters, 3, &mut rng) == Rewrite::BraidRelation {
                assert_eq!(letters, vec![2, 1, 2]);
                seen = true;
            }
        }
        assert!(seen);
    }
}
