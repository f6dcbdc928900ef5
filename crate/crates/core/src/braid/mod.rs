//! Permutations, braid words and Garside left-greedy normal forms in `B_n`.

mod gcd;
mod normal;
mod perm;
mod word;

pub use gcd::{left_gcd, left_gcd_nf};
pub use normal::{delta_length, is_positive, normal_form, word_of, NormalForm};
pub use perm::{
    compose, delta_perm, descents, left_weight_pair, simple_to_word, tau, DescentSet, Perm, Side,
};
pub use word::{invert, permutation_image, BraidWord};

/// Largest supported strand count; descent sets are 64-bit masks.
pub const MAX_STRANDS: usize = 64;
