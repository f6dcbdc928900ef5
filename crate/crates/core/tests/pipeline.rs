use braidobf::attacks::{dictionary_attack, gcd_strip, guess_last_gate, peel_circuit, PeelOptions};
use braidobf::braid::NormalForm;
use braidobf::compiler::{compile_circuit, ToffoliCircuit, ToffoliGate};
use braidobf::obfuscator::{obfuscate_circuit, salt, Mode};
use braidobf::qdouble::{simulate_normal_form, GroupTable};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn circuit(wires: usize, gates: &[(usize, usize, usize)]) -> ToffoliCircuit {
    let gates = gates.iter().map(|&(a, b, t)| ToffoliGate::new(a, b, t).unwrap()).collect();
    ToffoliCircuit::new(wires, gates).unwrap()
}

fn assert_computes(c: &ToffoliCircuit, nf: &NormalForm, wires: usize) {
    let a5 = GroupTable::a5();
    let layout = c.layout();
    for bits in 0..1u64 << c.wires() {
        let out = simulate_normal_form(&a5, nf, &layout.encode(&a5, bits).unwrap()).unwrap();
        let got = layout.decode(&a5, &out).unwrap();
        let mask = (1u64 << wires) - 1;
        assert_eq!(got & mask, c.apply(bits) & mask, "input {bits:04b}");
    }
}

#[test]
fn obfuscated_circuit_computes_the_truth_table() {
    let c = circuit(4, &[(1, 2, 3), (3, 4, 1), (2, 4, 3)]);
    let naive = obfuscate_circuit(&c, Mode::Naive);
    assert_computes(&c, &naive.nf, 4);
    assert!(naive.nf.is_positive());
    assert_eq!(naive.nf, NormalForm::of(&compile_circuit(&c)));
}

#[test]
fn randomized_output_still_computes() {
    let c = circuit(3, &[(2, 3, 1)]);
    let r = obfuscate_circuit(&c, Mode::Randomized { seed: 5 });
    assert_computes(&c, &r.nf, 3);
    assert!(!r.nf.is_positive());
}

#[test]
fn salted_circuit_keeps_original_wires() {
    let c = circuit(3, &[(1, 2, 3), (2, 3, 1)]);
    let salted = salt(&c, 1, 9).unwrap();
    assert_eq!(salted.wires(), 4);
    assert_eq!(salted.gates().len(), 2 + 8);
    let r = obfuscate_circuit(&salted, Mode::Naive);
    for bits in 0..16u64 {
        assert_eq!(salted.apply(bits) & 0b111, c.apply(bits & 0b111));
    }
    assert_computes(&salted, &r.nf, 3);
}

#[test]
fn last_gate_guess_singles_out_the_true_gate() {
    let c = circuit(4, &[(1, 2, 3), (4, 3, 2)]);
    let obf = obfuscate_circuit(&c, Mode::Naive);
    let reports = guess_last_gate(&obf.nf, &c.layout()).unwrap();
    let passing: Vec<_> = reports.iter().filter(|r| r.positive_after_strip).map(|r| r.gate).collect();
    assert_eq!(passing, vec![ToffoliGate::new(4, 3, 2).unwrap()]);
}

#[test]
fn peeling_recovers_a_random_circuit() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let c = ToffoliCircuit::random(4, 3, &mut rng).unwrap();
    let obf = obfuscate_circuit(&c, Mode::Naive);
    let outcome = peel_circuit(&obf.nf, &c.layout(), PeelOptions::default()).unwrap();
    let recovered = outcome.recovered().expect("naive output peels");
    assert_eq!(recovered.truth_table(), c.truth_table());
}

#[test]
fn dictionary_attack_matches_the_source() {
    let candidates = vec![
        circuit(3, &[(1, 2, 3)]),
        circuit(3, &[(2, 3, 1)]),
        circuit(3, &[(2, 3, 1), (1, 2, 3)]),
    ];
    let obf = obfuscate_circuit(&candidates[2], Mode::Naive);
    assert_eq!(dictionary_attack(&obf, &candidates, Mode::Naive), Some(2));
    let other = obfuscate_circuit(&circuit(3, &[(1, 3, 2)]), Mode::Naive);
    assert_eq!(dictionary_attack(&other, &candidates, Mode::Naive), None);
}

#[test]
fn gcd_strip_exposes_a_shared_prefix() {
    let a = circuit(4, &[(1, 2, 3), (2, 3, 4), (1, 4, 2)]);
    let b = circuit(4, &[(1, 2, 3), (2, 3, 4), (3, 4, 1)]);
    let prefix = NormalForm::of(&compile_circuit(&circuit(4, &[(1, 2, 3), (2, 3, 4)])));
    let g = gcd_strip(&obfuscate_circuit(&a, Mode::Naive), &obfuscate_circuit(&b, Mode::Naive)).unwrap();
    assert!(prefix.left_divides(&NormalForm::of(&g)).unwrap());
}
