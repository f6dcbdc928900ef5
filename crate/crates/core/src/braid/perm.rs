use std::fmt;

use super::{BraidWord, MAX_STRANDS};
use crate::error::{Error, Result};

/// A permutation of `{1..n}`, doubling as the simple (permutation) braid that
/// projects onto it.
///
/// Composition is function composition: `f.compose(g)` maps `i` to
/// `f(g(i))`, and the projection of braid words is a homomorphism with
/// `π(uv) = π(u) ∘ π(v)`. Under this convention `σ_i` left-divides the simple
/// braid of `f` iff `f⁻¹(i) > f⁻¹(i+1)`, and right-divides it iff
/// `f(i) > f(i+1)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Perm {
    n: u8,
    // 0-based images; entries past `n` are always zero.
    img: [u8; MAX_STRANDS],
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// Set of generator indices `1..n-1`, bit `i-1` standing for `σ_i`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct DescentSet(u64);

impl DescentSet {
    pub fn empty() -> Self {
        DescentSet(0)
    }

    pub fn contains(&self, i: usize) -> bool {
        (1..=64).contains(&i) && self.0 >> (i - 1) & 1 == 1
    }

    pub fn is_subset(&self, other: &DescentSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_empty(&self) -> bool {
        self.0 == 0
    }

    pub fn len(&self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn difference(&self, other: &DescentSet) -> DescentSet {
        DescentSet(self.0 & !other.0)
    }

    pub fn intersection(&self, other: &DescentSet) -> DescentSet {
        DescentSet(self.0 & other.0)
    }

    /// Smallest member.
    pub fn first(&self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize + 1)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..64).filter(|b| self.0 >> b & 1 == 1).map(|b| b + 1)
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl fmt::Debug for DescentSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

pub(crate) fn check_strands(n: usize) -> Result<()> {
    if n == 0 || n > MAX_STRANDS {
        return Err(Error::StrandCount(n));
    }
    Ok(())
}

impl Perm {
    /// # Panics
    /// If `n` is zero or exceeds [`MAX_STRANDS`].
    pub fn identity(n: usize) -> Perm {
        assert!((1..=MAX_STRANDS).contains(&n), "strand count {n} out of range");
        let mut img = [0u8; MAX_STRANDS];
        for (i, slot) in img.iter_mut().enumerate().take(n) {
            *slot = i as u8;
        }
        Perm { n: n as u8, img }
    }

    /// Builds a permutation from 1-based images.
    pub fn from_images(images: &[usize]) -> Result<Perm> {
        let n = images.len();
        check_strands(n)?;
        let mut seen = [false; MAX_STRANDS];
        let mut img = [0u8; MAX_STRANDS];
        for (i, &x) in images.iter().enumerate() {
            if x == 0 || x > n || seen[x - 1] {
                return Err(Error::InvalidPermutation {
                    n,
                    images: images.to_vec(),
                });
            }
            seen[x - 1] = true;
            img[i] = (x - 1) as u8;
        }
        Ok(Perm { n: n as u8, img })
    }

    /// The transposition `(i i+1)`, image of `σ_i`.
    pub fn transposition(n: usize, i: usize) -> Perm {
        assert!(i >= 1 && i < n, "generator {i} out of range for {n} strands");
        let mut p = Perm::identity(n);
        p.img.swap(i - 1, i);
        p
    }

    /// Order reversal `i ↦ n+1-i`, the image of the half twist `Δ_n`.
    pub fn delta(n: usize) -> Perm {
        let mut p = Perm::identity(n);
        for i in 0..n {
            p.img[i] = (n - 1 - i) as u8;
        }
        p
    }

    pub fn n(&self) -> usize {
        self.n as usize
    }

    /// 1-based images of `1..=n`.
    pub fn images(&self) -> Vec<usize> {
        self.img[..self.n()].iter().map(|&x| x as usize + 1).collect()
    }

    /// Image of the 1-based point `i`.
    pub fn apply(&self, i: usize) -> usize {
        self.img[i - 1] as usize + 1
    }

    pub fn inverse(&self) -> Perm {
        let mut out = *self;
        for i in 0..self.n() {
            out.img[self.img[i] as usize] = i as u8;
        }
        out
    }

    /// `f.compose(g)` is `f ∘ g`, the projection of the braid `f̂ ĝ`.
    pub fn compose(&self, g: &Perm) -> Result<Perm> {
        if self.n != g.n {
            return Err(Error::StrandMismatch {
                left: self.n(),
                right: g.n(),
            });
        }
        Ok(self.compose_unchecked(g))
    }

    pub(crate) fn compose_unchecked(&self, g: &Perm) -> Perm {
        let mut out = *self;
        for i in 0..self.n() {
            out.img[i] = self.img[g.img[i] as usize];
        }
        out
    }

    pub fn is_identity(&self) -> bool {
        (0..self.n()).all(|i| self.img[i] as usize == i)
    }

    pub fn is_delta(&self) -> bool {
        let n = self.n();
        (0..n).all(|i| self.img[i] as usize == n - 1 - i)
    }

    /// Inversion count; equals the letter length of the simple braid.
    pub fn inversions(&self) -> usize {
        let n = self.n();
        let mut count = 0;
        for i in 0..n {
            for j in i + 1..n {
                if self.img[i] > self.img[j] {
                    count += 1;
                }
            }
        }
        count
    }

    /// `{i : f(i) > f(i+1)}`: generators that right-divide the simple braid.
    pub fn right_descents(&self) -> DescentSet {
        descent_mask(&self.img[..self.n()])
    }

    /// `{i : f⁻¹(i) > f⁻¹(i+1)}`: generators that left-divide the simple braid.
    pub fn left_descents(&self) -> DescentSet {
        self.inverse().right_descents()
    }

    pub fn descents(&self, side: Side) -> DescentSet {
        match side {
            Side::Left => self.left_descents(),
            Side::Right => self.right_descents(),
        }
    }

    /// The flip `w₀ ∘ f ∘ w₀`, image of conjugation by `Δ_n`.
    pub fn tau(&self) -> Perm {
        let n = self.n();
        let mut out = *self;
        for i in 0..n {
            out.img[i] = (n - 1) as u8 - self.img[n - 1 - i];
        }
        out
    }

    /// Applies `τ` when `power` is odd.
    pub fn tau_pow(&self, power: i64) -> Perm {
        if power.rem_euclid(2) == 1 {
            self.tau()
        } else {
            *self
        }
    }

    /// `f ∘ s_i`: appends `σ_i` on the right of the simple braid.
    pub(crate) fn mul_right_gen(&mut self, i: usize) {
        self.img.swap(i - 1, i);
    }

    /// `s_i ∘ f`: prepends `σ_i` on the left of the simple braid.
    #[cfg(test)]
    pub(crate) fn mul_left_gen(&mut self, i: usize) {
        let (a, b) = ((i - 1) as u8, i as u8);
        for x in self.img[..self.n as usize].iter_mut() {
            if *x == a {
                *x = b;
            } else if *x == b {
                *x = a;
            }
        }
    }

    /// The complement `f⁻¹ ∘ w₀`: the simple braid `c` with `f̂ c = Δ_n`.
    pub fn right_complement(&self) -> Perm {
        self.inverse().compose_unchecked(&Perm::delta(self.n()))
    }

    /// Canonical reduced positive word: selection sort placing `n`, then
    /// `n-1`, and so on, by adjacent transpositions.
    pub fn simple_word(&self) -> BraidWord {
        let n = self.n();
        let mut arr: Vec<u8> = self.img[..n].to_vec();
        let mut swaps = Vec::with_capacity(self.inversions());
        for value in (0..n).rev() {
            let mut pos = arr.iter().position(|&x| x as usize == value).unwrap();
            while pos < value {
                arr.swap(pos, pos + 1);
                swaps.push(pos as i32 + 1);
                pos += 1;
            }
        }
        swaps.reverse();
        BraidWord::new_unchecked(n, swaps)
    }
}

fn descent_mask(img: &[u8]) -> DescentSet {
    let mut mask = 0u64;
    for i in 0..img.len().saturating_sub(1) {
        if img[i] > img[i + 1] {
            mask |= 1 << i;
        }
    }
    DescentSet(mask)
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm{:?}", self.images())
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.images().iter().map(|x| x.to_string()).collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// `f ∘ g`.
pub fn compose(f: &Perm, g: &Perm) -> Result<Perm> {
    f.compose(g)
}

pub fn descents(f: &Perm, side: Side) -> DescentSet {
    f.descents(side)
}

pub fn delta_perm(n: usize) -> Result<Perm> {
    check_strands(n)?;
    Ok(Perm::delta(n))
}

pub fn tau(f: &Perm) -> Perm {
    f.tau()
}

pub fn simple_to_word(f: &Perm) -> BraidWord {
    f.simple_word()
}

/// Local left-weighting of the pair of simple braids `u v`: moves the
/// largest left divisor `x` of `v` with `u x` still simple across the
/// boundary. That `x` is the prefix meet of `v` and the right complement of
/// `u`. The product and total crossing count are preserved.
pub fn left_weight_pair(u: &Perm, v: &Perm) -> (Perm, Perm) {
    let x = prefix_meet(&u.right_complement(), v);
    if x.is_identity() {
        return (*u, *v);
    }
    (u.compose_unchecked(&x), x.inverse().compose_unchecked(v))
}

/// Greatest common left divisor of two simple braids.
///
/// `x` left-divides `f` exactly when every pair of values inverted by `x`
/// (larger value placed first) is inverted by `f`. The pairs left in natural
/// order by either input are closed transitively; the meet inverts exactly
/// the remaining pairs.
pub fn prefix_meet(p: &Perm, q: &Perm) -> Perm {
    let n = p.n();
    let (pi, qi) = (p.inverse(), q.inverse());
    // upright[a]: values b > a that must stay after a
    let mut upright = [0u64; MAX_STRANDS];
    for a in 0..n {
        let mut row = 0u64;
        for b in a + 1..n {
            if pi.img[a] < pi.img[b] || qi.img[a] < qi.img[b] {
                row |= 1 << b;
            }
        }
        upright[a] = row;
    }
    for k in 0..n {
        for a in 0..k {
            if upright[a] >> k & 1 == 1 {
                upright[a] |= upright[k];
            }
        }
    }
    let mut x = Perm::identity(n);
    for a in 0..n {
        let lower_before = (0..a).filter(|&b| upright[b] >> a & 1 == 1).count();
        let upper_before = (a + 1..n).filter(|&b| upright[a] >> b & 1 == 0).count();
        x.img[lower_before + upper_before] = a as u8;
    }
    x
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(images: &[usize]) -> Perm {
        Perm::from_images(images).unwrap()
    }

    /// One generator at a time: slide every generator that left-divides `v`
    /// but does not right-divide `u`.
    fn left_weight_pair_by_generators(u: &Perm, v: &Perm) -> (Perm, Perm) {
        let (mut u, mut v) = (*u, *v);
        loop {
            let movable = v.left_descents().difference(&u.right_descents());
            match movable.first() {
                None => return (u, v),
                Some(i) => {
                    u.mul_right_gen(i);
                    v.mul_left_gen(i);
                }
            }
        }
    }

    fn all_perms(n: usize) -> Vec<Perm> {
        let mut out = Vec::new();
        let mut cur: Vec<usize> = (1..=n).collect();
        loop {
            out.push(p(&cur));
            let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| cur[i] < cur[i + 1]) else {
                return out;
            };
            let j = (i + 1..n).rev().find(|&j| cur[j] > cur[i]).unwrap();
            cur.swap(i, j);
            cur[i + 1..].reverse();
        }
    }

    #[test]
    fn weighting_matches_generator_sliding() {
        for n in 1..=5 {
            let perms = all_perms(n);
            for u in &perms {
                for v in &perms {
                    assert_eq!(left_weight_pair(u, v), left_weight_pair_by_generators(u, v), "{u:?} {v:?}");
                }
            }
        }
    }

    #[test]
    fn meet_is_a_common_prefix() {
        // prefix test through inversion counts: x ≼ f iff ℓ(x) + ℓ(x⁻¹f) = ℓ(f)
        let prefix = |x: &Perm, f: &Perm| x.inversions() + x.inverse().compose_unchecked(f).inversions() == f.inversions();
        let perms = all_perms(4);
        for a in &perms {
            for b in &perms {
                let m = prefix_meet(a, b);
                assert!(prefix(&m, a) && prefix(&m, b));
                for c in &perms {
                    if prefix(c, a) && prefix(c, b) {
                        assert!(prefix(c, &m));
                    }
                }
            }
        }
    }

    #[test]
    fn compose_examples() {
        let id = Perm::identity(3);
        let t12 = p(&[2, 1, 3]);
        let t23 = p(&[1, 3, 2]);
        assert_eq!(compose(&id, &t12).unwrap(), t12);
        assert!(compose(&t12, &t12).unwrap().is_identity());
        // 1 -> 2 -> 3 -> 1
        assert_eq!(compose(&t12, &t23).unwrap(), p(&[2, 3, 1]));
        assert!(matches!(
            compose(&id, &Perm::identity(4)),
            Err(Error::StrandMismatch { .. })
        ));
    }

    #[test]
    fn rejects_non_bijections() {
        assert!(Perm::from_images(&[1, 1, 2]).is_err());
        assert!(Perm::from_images(&[0, 1]).is_err());
        assert!(Perm::from_images(&[]).is_err());
    }

    #[test]
    fn descent_examples() {
        assert!(Perm::identity(3).left_descents().is_empty());
        assert_eq!(Perm::delta(3).left_descents().to_vec(), vec![1, 2]);
        assert_eq!(Perm::transposition(3, 1).right_descents().to_vec(), vec![1]);
        // s1 ∘ s2 = perm of σ1σ2: only σ1 on the left, only σ2 on the right
        let f = Perm::transposition(3, 1).compose(&Perm::transposition(3, 2)).unwrap();
        assert_eq!(f.left_descents().to_vec(), vec![1]);
        assert_eq!(f.right_descents().to_vec(), vec![2]);
    }

    #[test]
    fn delta_examples() {
        assert!(delta_perm(1).unwrap().is_identity());
        assert_eq!(delta_perm(2).unwrap(), p(&[2, 1]));
        assert_eq!(delta_perm(3).unwrap(), p(&[3, 2, 1]));
        assert_eq!(delta_perm(6).unwrap().inversions(), 15);
        assert!(delta_perm(0).is_err());
    }

    #[test]
    fn tau_examples() {
        assert!(Perm::identity(4).tau().is_identity());
        assert_eq!(Perm::delta(5).tau(), Perm::delta(5));
        assert_eq!(Perm::transposition(4, 1).tau(), Perm::transposition(4, 3));
        let f = p(&[3, 1, 4, 2]);
        assert_eq!(f.tau().tau(), f);
    }

    #[test]
    fn simple_word_examples() {
        assert!(Perm::identity(3).simple_word().is_empty());
        assert_eq!(p(&[2, 1]).simple_word().letters(), &[1]);
        let w = Perm::delta(3).simple_word();
        assert_eq!(w.letters(), &[1, 2, 1]);
        assert_eq!(w.permutation_image(), Perm::delta(3));
        // Δ_4 = Δ_3 σ3 σ2 σ1
        assert_eq!(Perm::delta(4).simple_word().letters(), &[1, 2, 1, 3, 2, 1]);
    }

    #[test]
    fn left_weight_examples() {
        let s1 = Perm::transposition(3, 1);
        let s2 = Perm::transposition(3, 2);
        assert_eq!(left_weight_pair(&s1, &s1), (s1, s1));
        let (u, v) = left_weight_pair(&s1, &s2);
        assert_eq!(u, s1.compose(&s2).unwrap());
        assert!(v.is_identity());
        let f = p(&[3, 1, 2]);
        assert_eq!(left_weight_pair(&Perm::identity(3), &f), (f, Perm::identity(3)));
    }

    #[test]
    fn complement_completes_delta() {
        let f = p(&[2, 4, 1, 3]);
        let c = f.right_complement();
        assert!(f.compose(&c).unwrap().is_delta());
        assert_eq!(f.inversions() + c.inversions(), 6);
    }
}
