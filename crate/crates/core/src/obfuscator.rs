//! Normal-form obfuscation of R-circuits and compiled Toffoli circuits.
//!
//! An R-circuit is read as a braid word (`R_i ↔ σ_i`), replaced by its
//! left-greedy normal form and emitted again as a word. Circuits that differ
//! by braid relations therefore produce identical output.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::braid::{BraidWord, NormalForm};
use crate::compiler::{compile_circuit, randomize_word, ToffoliCircuit, ToffoliGate, A5_GATE_ORDER};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ObfuscationStats {
    pub input_len: usize,
    pub output_len: usize,
    pub factor_count: usize,
    pub infimum: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ObfuscationResult {
    pub nf: NormalForm,
    /// `nf.word()`: the emitted R-circuit.
    pub word: BraidWord,
    pub stats: ObfuscationStats,
}

impl ObfuscationResult {
    fn from_nf(nf: NormalForm, input_len: usize) -> ObfuscationResult {
        let word = nf.word();
        let stats = ObfuscationStats {
            input_len,
            output_len: word.len(),
            factor_count: nf.canonical_length(),
            infimum: nf.infimum(),
        };
        ObfuscationResult { nf, word, stats }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    /// Normal form of the plain compiled braid.
    Naive,
    /// Each letter of the compiled braid is independently replaced by
    /// `σ_i^{-59}` with probability 1/2 before normalizing.
    Randomized { seed: u64 },
}

pub fn obfuscate_rcircuit(w: &BraidWord) -> ObfuscationResult {
    ObfuscationResult::from_nf(NormalForm::of(w), w.len())
}

pub fn obfuscate_circuit(c: &ToffoliCircuit, mode: Mode) -> ObfuscationResult {
    let compiled = compile_circuit(c);
    match mode {
        Mode::Naive => obfuscate_rcircuit(&compiled),
        Mode::Randomized { seed } => {
            let randomized =
                randomize_word(&compiled, seed, A5_GATE_ORDER).expect("gate order is positive");
            obfuscate_rcircuit(&randomized)
        }
    }
}

/// Salt gates per original gate.
pub const SALT_FACTOR: usize = 4;

/// Adds `extra_wires` salt wires and random Toffoli gates targeting them,
/// half before and half after the original gates. Salt gates never write an
/// original wire, so the original wires compute exactly what `c` computes;
/// the salt wires end in junk and are ignored.
pub fn salt(c: &ToffoliCircuit, extra_wires: usize, seed: u64) -> Result<ToffoliCircuit> {
    if extra_wires == 0 {
        return Err(Error::Invalid("salting needs at least one extra wire".into()));
    }
    let wires = c.wires() + extra_wires;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let count = SALT_FACTOR * c.gates().len();
    let mut random_gate = || {
        let target = rng.random_range(c.wires() + 1..=wires);
        let mut others: Vec<usize> = (1..=wires).filter(|&x| x != target).collect();
        let a = others.swap_remove(rng.random_range(0..others.len()));
        let b = others[rng.random_range(0..others.len())];
        ToffoliGate::new(a, b, target)
    };
    let mut gates = Vec::with_capacity(count + c.gates().len());
    for _ in 0..count / 2 {
        gates.push(random_gate()?);
    }
    gates.extend_from_slice(c.gates());
    for _ in count / 2..count {
        gates.push(random_gate()?);
    }
    ToffoliCircuit::new(wires, gates)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qdouble::{simulate, simulate_normal_form, DitState, GroupTable};

    fn w(n: usize, letters: &[i32]) -> BraidWord {
        BraidWord::new(n, letters.to_vec()).unwrap()
    }

    #[test]
    fn braid_relation_gives_identical_output() {
        assert_eq!(obfuscate_rcircuit(&w(3, &[1, 2, 1])).nf, obfuscate_rcircuit(&w(3, &[2, 1, 2])).nf);
        assert_eq!(
            obfuscate_rcircuit(&w(3, &[1, 2, 1])).word,
            obfuscate_rcircuit(&w(3, &[2, 1, 2])).word
        );
    }

    #[test]
    fn free_cancellation() {
        let r = obfuscate_rcircuit(&w(4, &[1, -1]));
        assert!(r.nf.is_identity());
        assert!(r.word.is_empty());
        assert_eq!(r.stats.input_len, 2);
        assert_eq!(r.stats.output_len, 0);
    }

    #[test]
    fn empty_circuit() {
        let r = obfuscate_circuit(&ToffoliCircuit::empty(3).unwrap(), Mode::Naive);
        assert!(r.nf.is_identity());
    }

    #[test]
    fn randomized_mode_keeps_behaviour() {
        let c = ToffoliCircuit::new(3, vec![ToffoliGate::new(2, 3, 1).unwrap()]).unwrap();
        let naive = obfuscate_circuit(&c, Mode::Naive);
        let r1 = obfuscate_circuit(&c, Mode::Randomized { seed: 1 });
        let r2 = obfuscate_circuit(&c, Mode::Randomized { seed: 2 });
        assert_ne!(r1.nf, r2.nf);
        assert_ne!(r1.nf, naive.nf);
        let a5 = GroupTable::a5();
        let layout = c.layout();
        for bits in 0..8 {
            let input = layout.encode(&a5, bits).unwrap();
            for r in [&r1, &r2] {
                let out = simulate_normal_form(&a5, &r.nf, &input).unwrap();
                assert_eq!(layout.decode(&a5, &out).unwrap(), c.apply(bits));
            }
        }
        // full-state equivalence on a random state
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let s = DitState::random(&a5, layout.strands(), &mut rng);
        assert_eq!(
            simulate_normal_form(&a5, &r1.nf, &s).unwrap(),
            simulate(&a5, &compile_circuit(&c), &s).unwrap()
        );
    }

    #[test]
    fn salting() {
        let c = ToffoliCircuit::new(3, vec![ToffoliGate::new(1, 2, 3).unwrap()]).unwrap();
        let s = salt(&c, 2, 7).unwrap();
        assert_eq!(s.wires(), 5);
        assert_eq!(s.gates().len(), 5);
        assert_eq!(s.gates()[2], c.gates()[0]);
        for g in s.gates().iter().filter(|g| **g != c.gates()[0]) {
            assert!(g.target > 3);
        }
        assert_eq!(salt(&c, 2, 7).unwrap(), s);
        let empty = ToffoliCircuit::empty(3).unwrap();
        assert_eq!(salt(&empty, 1, 3).unwrap().gates(), empty.gates());
        assert!(salt(&c, 0, 1).is_err());
    }
}
