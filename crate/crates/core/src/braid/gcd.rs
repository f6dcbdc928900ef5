use super::{BraidWord, NormalForm};
use crate::error::{Error, Result};

/// Greatest common left divisor of two positive braids.
///
/// Repeatedly extracts the smallest generator that left-divides both and
/// cancels it from each side. Returns the extracted generators as a
/// positive word.
pub fn left_gcd(a: &BraidWord, b: &BraidWord) -> Result<BraidWord> {
    if a.n() != b.n() {
        return Err(Error::StrandMismatch {
            left: a.n(),
            right: b.n(),
        });
    }
    if !a.is_positive() || !b.is_positive() {
        return Err(Error::NotPositive);
    }
    left_gcd_nf(&NormalForm::of(a), &NormalForm::of(b))
}

/// [`left_gcd`] on normal forms, which need only represent positive braids.
pub fn left_gcd_nf(a: &NormalForm, b: &NormalForm) -> Result<BraidWord> {
    if a.n() != b.n() {
        return Err(Error::StrandMismatch {
            left: a.n(),
            right: b.n(),
        });
    }
    if !a.is_positive() || !b.is_positive() {
        return Err(Error::NotPositive);
    }
    let n = a.n();
    let (mut a, mut b) = (a.clone(), b.clone());
    let mut atoms = Vec::new();
    while let Some(i) = a.left_atoms().intersection(&b.left_atoms()).first() {
        let strip = BraidWord::new_unchecked(n, vec![-(i as i32)]);
        a = a.left_mul_word(&strip)?;
        b = b.left_mul_word(&strip)?;
        atoms.push(i as i32);
    }
    Ok(BraidWord::new_unchecked(n, atoms))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(n: usize, letters: &[i32]) -> BraidWord {
        BraidWord::new(n, letters.to_vec()).unwrap()
    }

    #[test]
    fn gcd_with_itself() {
        let a = w(4, &[1, 3, 2, 2, 1]);
        let g = left_gcd(&a, &a).unwrap();
        assert_eq!(NormalForm::of(&g), NormalForm::of(&a));
    }

    #[test]
    fn small_examples() {
        assert_eq!(left_gcd(&w(3, &[1, 2]), &w(3, &[1, 1])).unwrap().letters(), &[1]);
        assert!(left_gcd(&w(3, &[1]), &w(3, &[2])).unwrap().is_empty());
        // σ1σ2σ1 = σ2σ1σ2 has both atoms, so it shares σ2σ1 with σ2σ1σ1
        let g = left_gcd(&w(3, &[1, 2, 1]), &w(3, &[2, 1, 1])).unwrap();
        assert_eq!(NormalForm::of(&g), NormalForm::of(&w(3, &[2, 1])));
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(left_gcd(&w(3, &[-1]), &w(3, &[1])), Err(Error::NotPositive));
        assert!(matches!(
            left_gcd(&w(3, &[1]), &w(4, &[1])),
            Err(Error::StrandMismatch { .. })
        ));
    }
}
