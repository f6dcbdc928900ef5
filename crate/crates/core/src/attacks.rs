//! Attacks on naive normal-form obfuscation of Toffoli circuits.
//!
//! Every compiled Toffoli gate is a positive braid, so stripping the true last
//! gate from a naive obfuscation leaves a positive braid. Wrong guesses
//! usually leave a negative power of `Δ`. Iterating the test peels the
//! circuit apart gate by gate.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::braid::{left_gcd_nf, BraidWord, NormalForm};
use crate::compiler::{compile_circuit, compile_toffoli, Layout, ToffoliCircuit, ToffoliGate};
use crate::error::{Error, Result};
use crate::formats::Report;
use crate::obfuscator::{obfuscate_circuit, Mode, ObfuscationResult};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GuessReport {
    pub gate: ToffoliGate,
    pub positive_after_strip: bool,
    pub infimum_after_strip: i64,
    /// Letter length of the stripped braid minus that of the original, with
    /// `Δ^m` counted as `|m|·n(n-1)/2` letters.
    pub canonical_length_delta: i64,
}

/// Inverses of every compiled Toffoli placement on one layout.
#[derive(Clone, Debug)]
pub struct GuessTable {
    layout: Layout,
    entries: Vec<(ToffoliGate, NormalForm)>,
}

impl GuessTable {
    pub fn new(layout: Layout) -> Result<GuessTable> {
        let entries = ToffoliGate::all_placements(layout.wires())
            .into_iter()
            .map(|g| Ok((g, NormalForm::of(&compile_toffoli(&g, &layout)?).inverse())))
            .collect::<Result<_>>()?;
        Ok(GuessTable { layout, entries })
    }

    pub fn layout(&self) -> Layout {
        self.layout
    }

    pub fn gates(&self) -> impl Iterator<Item = ToffoliGate> + '_ {
        self.entries.iter().map(|(g, _)| *g)
    }

    /// `obf · compile(gate)⁻¹`.
    pub fn strip(&self, obf: &NormalForm, gate: &ToffoliGate) -> Result<NormalForm> {
        self.check(obf)?;
        let inv = self
            .entries
            .iter()
            .find(|(g, _)| g == gate)
            .map(|(_, inv)| inv)
            .ok_or(Error::InvalidGate {
                c1: gate.c1,
                c2: gate.c2,
                t: gate.target,
                wires: self.layout.wires(),
            })?;
        obf.mul(inv)
    }

    pub fn reports(&self, obf: &NormalForm) -> Result<Vec<GuessReport>> {
        self.check(obf)?;
        let before = obf.letter_length() as i64;
        self.entries
            .iter()
            .map(|(gate, inv)| {
                let s = obf.mul(inv)?;
                Ok(GuessReport {
                    gate: *gate,
                    positive_after_strip: s.is_positive(),
                    infimum_after_strip: s.infimum(),
                    canonical_length_delta: s.letter_length() as i64 - before,
                })
            })
            .collect()
    }

    fn check(&self, obf: &NormalForm) -> Result<()> {
        if obf.n() != self.layout.strands() {
            return Err(Error::StrandMismatch {
                left: obf.n(),
                right: self.layout.strands(),
            });
        }
        Ok(())
    }
}

/// One report per Toffoli placement, in placement order.
pub fn guess_last_gate(obf: &NormalForm, layout: &Layout) -> Result<Vec<GuessReport>> {
    GuessTable::new(*layout)?.reports(obf)
}

/// Change in letter length from stripping `guess`; negative values suggest a
/// correct guess.
pub fn length_attack_score(obf: &NormalForm, guess: &ToffoliGate, layout: &Layout) -> Result<i64> {
    let strip = obf.mul(&NormalForm::of(&compile_toffoli(guess, layout)?).inverse())?;
    Ok(strip.letter_length() as i64 - obf.letter_length() as i64)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PeelOptions {
    pub max_gates: usize,
    /// Explore every passing guess depth-first instead of giving up at the
    /// first ambiguous step.
    pub backtrack: bool,
    /// Upper bound on strips evaluated when backtracking.
    pub budget: usize,
}

impl Default for PeelOptions {
    fn default() -> Self {
        PeelOptions {
            max_gates: 16,
            backtrack: false,
            budget: 100_000,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PeelFailure {
    /// No guess leaves a positive braid after `peeled` gates were removed.
    NoPassingGuess { peeled: usize },
    /// Several guesses pass after `peeled` gates were removed.
    Ambiguous { peeled: usize, candidates: Vec<ToffoliGate> },
    /// The residual is still nontrivial after `max_gates` strips.
    TooManyGates,
    BudgetExhausted,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeelOutcome {
    pub result: std::result::Result<ToffoliCircuit, PeelFailure>,
    /// Steps at which more than one guess passed.
    pub ambiguous_steps: usize,
    pub strips_evaluated: usize,
}

impl PeelOutcome {
    pub fn recovered(&self) -> Option<&ToffoliCircuit> {
        self.result.as_ref().ok()
    }
}

pub fn peel_circuit(obf: &NormalForm, layout: &Layout, options: PeelOptions) -> Result<PeelOutcome> {
    peel_with(&GuessTable::new(*layout)?, obf, options)
}

/// [`peel_circuit`] with a prebuilt guess table.
pub fn peel_with(table: &GuessTable, obf: &NormalForm, options: PeelOptions) -> Result<PeelOutcome> {
    table.check(obf)?;
    let mut state = Peel {
        table,
        options,
        ambiguous_steps: 0,
        strips: 0,
        peeled: Vec::new(),
    };
    let found = state.search(obf.clone())?;
    let result = match found {
        Ok(()) => {
            let mut gates = state.peeled;
            gates.reverse();
            Ok(ToffoliCircuit::new(table.layout.wires(), gates)?)
        }
        Err(f) => Err(f),
    };
    Ok(PeelOutcome {
        result,
        ambiguous_steps: state.ambiguous_steps,
        strips_evaluated: state.strips,
    })
}

struct Peel<'a> {
    table: &'a GuessTable,
    options: PeelOptions,
    ambiguous_steps: usize,
    strips: usize,
    peeled: Vec<ToffoliGate>,
}

impl Peel<'_> {
    fn search(&mut self, residual: NormalForm) -> Result<std::result::Result<(), PeelFailure>> {
        if residual.is_identity() {
            return Ok(Ok(()));
        }
        if self.peeled.len() >= self.options.max_gates {
            return Ok(Err(PeelFailure::TooManyGates));
        }
        if self.options.backtrack && self.strips >= self.options.budget {
            return Ok(Err(PeelFailure::BudgetExhausted));
        }
        let mut passing = Vec::new();
        for (gate, inv) in &self.table.entries {
            self.strips += 1;
            let s = residual.mul(inv)?;
            if s.is_positive() {
                passing.push((*gate, s));
            }
        }
        let peeled = self.peeled.len();
        if passing.len() > 1 {
            self.ambiguous_steps += 1;
        }
        match passing.len() {
            0 => Ok(Err(PeelFailure::NoPassingGuess { peeled })),
            1 => {
                let (gate, s) = passing.pop().expect("one candidate");
                self.peeled.push(gate);
                let r = self.search(s)?;
                if r.is_err() {
                    self.peeled.pop();
                }
                Ok(r)
            }
            _ if !self.options.backtrack => Ok(Err(PeelFailure::Ambiguous {
                peeled,
                candidates: passing.into_iter().map(|(g, _)| g).collect(),
            })),
            _ => {
                let mut last = PeelFailure::NoPassingGuess { peeled };
                for (gate, s) in passing {
                    self.peeled.push(gate);
                    match self.search(s)? {
                        Ok(()) => return Ok(Ok(())),
                        Err(f) => last = f,
                    }
                    self.peeled.pop();
                }
                Ok(Err(last))
            }
        }
    }
}

/// Index of the first candidate whose obfuscation under `mode` equals `obf`.
pub fn dictionary_attack(obf: &ObfuscationResult, candidates: &[ToffoliCircuit], mode: Mode) -> Option<usize> {
    candidates
        .iter()
        .position(|c| c.layout().strands() == obf.nf.n() && obfuscate_circuit(c, mode).nf == obf.nf)
}

/// Left gcd of two naive obfuscations.
pub fn gcd_strip(a: &ObfuscationResult, b: &ObfuscationResult) -> Result<BraidWord> {
    left_gcd_nf(&a.nf, &b.nf)
}

/// Parameters shared by the randomized attack experiments.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExperimentConfig {
    pub trials: usize,
    pub wires: Vec<usize>,
    pub max_gates: usize,
    pub seed: u64,
    pub randomized: bool,
    pub backtrack: bool,
}

impl ExperimentConfig {
    /// Obfuscation mode of one trial; randomized trials get their own seed.
    pub fn mode(&self, trial: usize) -> Mode {
        if self.randomized {
            Mode::Randomized {
                seed: self.seed.wrapping_mul(1_000_003).wrapping_add(trial as u64),
            }
        } else {
            Mode::Naive
        }
    }
}

/// Random circuit instances of an experiment, reproducible from the seed.
pub fn experiment_circuits(config: &ExperimentConfig) -> Result<Vec<ToffoliCircuit>> {
    if config.wires.is_empty() || config.max_gates == 0 {
        return Err(Error::Invalid("experiment needs wires and at least one gate".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    (0..config.trials)
        .map(|_| {
            let w = config.wires[rng.random_range(0..config.wires.len())];
            let gates = rng.random_range(1..=config.max_gates);
            ToffoliCircuit::random(w, gates, &mut rng)
        })
        .collect()
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PeelExperiment {
    pub trials: usize,
    /// Strips of the true last gate, one per gate of every instance.
    pub true_strips: usize,
    pub true_strips_positive: usize,
    pub wrong_guesses: usize,
    pub wrong_guesses_negative: usize,
    pub recovered: usize,
    /// Recoveries whose gate list equals the original one.
    pub recovered_exact: usize,
    pub ambiguous_instances: usize,
    pub no_passing_instances: usize,
    pub length_unique_minimum: usize,
}

impl PeelExperiment {
    pub fn recovery_rate(&self) -> f64 {
        ratio(self.recovered, self.trials)
    }

    pub fn report(&self, config: &ExperimentConfig) -> Report {
        let mut r = Report::new();
        r.push("experiment", "peel");
        r.push("mode", if config.randomized { "randomized" } else { "naive" });
        r.push("seed", config.seed);
        r.push("trials", self.trials);
        r.push("true_strips", self.true_strips);
        r.push("true_strips_positive", self.true_strips_positive);
        r.push("wrong_guesses", self.wrong_guesses);
        r.push("wrong_guesses_negative", self.wrong_guesses_negative);
        r.push("recovered", self.recovered);
        r.push("recovered_exact", self.recovered_exact);
        r.push("recovery_rate", format!("{:.4}", self.recovery_rate()));
        r.push("ambiguous_instances", self.ambiguous_instances);
        r.push("no_passing_instances", self.no_passing_instances);
        r.push("length_unique_minimum", self.length_unique_minimum);
        r
    }
}

fn ratio(a: usize, b: usize) -> f64 {
    if b == 0 {
        0.0
    } else {
        a as f64 / b as f64
    }
}

/// Obfuscates random circuits and runs the last-gate attacks on each.
///
/// The true gate sequence is stripped from the back one gate at a time to
/// measure the positive direction; all other placements at the first step
/// count as wrong guesses. The peeling result counts as recovered when
/// re-obfuscating it reproduces the target exactly.
pub fn peel_experiment(config: &ExperimentConfig) -> Result<PeelExperiment> {
    let instances = experiment_circuits(config)?
        .into_iter()
        .enumerate()
        .map(|(trial, c)| {
            let obf = obfuscate_circuit(&c, config.mode(trial)).nf;
            (c, obf)
        })
        .collect::<Vec<_>>();
    peel_experiment_on(&instances, config)
}

/// [`peel_experiment`] on already obfuscated instances.
pub fn peel_experiment_on(instances: &[(ToffoliCircuit, NormalForm)], config: &ExperimentConfig) -> Result<PeelExperiment> {
    let mut tables: Vec<GuessTable> = Vec::new();
    let mut out = PeelExperiment {
        trials: instances.len(),
        ..Default::default()
    };
    for (c, obf) in instances {
        let layout = c.layout();
        if !tables.iter().any(|t| t.layout == layout) {
            tables.push(GuessTable::new(layout)?);
        }
        let table = tables.iter().find(|t| t.layout == layout).expect("table built");
        let obf = obf.clone();

        let reports = table.reports(&obf)?;
        let Some(&last) = c.gates().last() else {
            continue;
        };
        for r in reports.iter().filter(|r| r.gate != last) {
            out.wrong_guesses += 1;
            out.wrong_guesses_negative += usize::from(!r.positive_after_strip);
        }
        let best = reports.iter().map(|r| r.canonical_length_delta).min();
        let winners: Vec<_> = reports.iter().filter(|r| Some(r.canonical_length_delta) == best).collect();
        if winners.len() == 1 && winners[0].gate == last {
            out.length_unique_minimum += 1;
        }

        let mut residual = obf.clone();
        for g in c.gates().iter().rev() {
            residual = table.strip(&residual, g)?;
            out.true_strips += 1;
            out.true_strips_positive += usize::from(residual.is_positive());
        }

        let options = PeelOptions {
            max_gates: 2 * config.max_gates,
            backtrack: config.backtrack,
            ..Default::default()
        };
        let peel = peel_with(table, &obf, options)?;
        match &peel.result {
            Ok(recovered) => {
                if obfuscate_circuit(recovered, Mode::Naive).nf == obf {
                    out.recovered += 1;
                    out.recovered_exact += usize::from(recovered.gates() == c.gates());
                }
            }
            Err(PeelFailure::Ambiguous { .. }) => out.ambiguous_instances += 1,
            Err(PeelFailure::NoPassingGuess { .. }) => out.no_passing_instances += 1,
            Err(_) => {}
        }
        if peel.ambiguous_steps > 0 && peel.result.is_ok() {
            out.ambiguous_instances += 1;
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GcdExperiment {
    pub pairs: usize,
    /// Pairs where the compiled common prefix left-divides the gcd.
    pub prefix_divides: usize,
    pub mean_gcd_letters: usize,
}

impl GcdExperiment {
    pub fn report(&self, seed: u64) -> Report {
        let mut r = Report::new();
        r.push("experiment", "gcd");
        r.push("seed", seed);
        r.push("pairs", self.pairs);
        r.push("prefix_divides", self.prefix_divides);
        r.push("mean_gcd_letters", self.mean_gcd_letters);
        r
    }
}

/// Pairs of circuits sharing a random prefix and ending in different random
/// suffixes, obfuscated naively and attacked with [`gcd_strip`].
pub fn gcd_experiment(pairs: usize, wires: usize, prefix_gates: usize, seed: u64) -> Result<GcdExperiment> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = GcdExperiment {
        pairs,
        ..Default::default()
    };
    let mut total = 0;
    for _ in 0..pairs {
        let prefix = ToffoliCircuit::random(wires, prefix_gates, &mut rng)?;
        let (s1, s2) = loop {
            let a = ToffoliCircuit::random(wires, rng.random_range(1..=2), &mut rng)?;
            let b = ToffoliCircuit::random(wires, rng.random_range(1..=2), &mut rng)?;
            if a.gates().first() != b.gates().first() {
                break (a, b);
            }
        };
        let join = |s: &ToffoliCircuit| {
            ToffoliCircuit::new(wires, prefix.gates().iter().chain(s.gates()).copied().collect())
        };
        let a = obfuscate_circuit(&join(&s1)?, Mode::Naive);
        let b = obfuscate_circuit(&join(&s2)?, Mode::Naive);
        let g = NormalForm::of(&gcd_strip(&a, &b)?);
        total += g.letter_length();
        let p = NormalForm::of(&compile_circuit(&prefix));
        out.prefix_divides += usize::from(p.left_divides(&g)?);
    }
    out.mean_gcd_letters = total.checked_div(pairs).unwrap_or(0);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tof(c1: usize, c2: usize, t: usize) -> ToffoliGate {
        ToffoliGate::new(c1, c2, t).unwrap()
    }

    #[test]
    fn single_gate_true_guess_is_positive() {
        let l = Layout::new(3).unwrap();
        for g in ToffoliGate::all_placements(3) {
            let obf = NormalForm::of(&compile_toffoli(&g, &l).unwrap());
            let reports = guess_last_gate(&obf, &l).unwrap();
            assert_eq!(reports.len(), 3);
            let r = reports.iter().find(|r| r.gate == g).unwrap();
            assert!(r.positive_after_strip);
            assert_eq!(r.infimum_after_strip, 0);
            assert_eq!(r.canonical_length_delta, -(obf.letter_length() as i64));
            for r in &reports {
                assert_eq!(r.positive_after_strip, r.infimum_after_strip >= 0);
            }
        }
    }

    #[test]
    fn empty_obfuscation_rejects_every_guess() {
        let l = Layout::new(3).unwrap();
        let obf = NormalForm::identity(l.strands()).unwrap();
        for r in guess_last_gate(&obf, &l).unwrap() {
            assert!(r.infimum_after_strip < 0);
            assert!(length_attack_score(&obf, &r.gate, &l).unwrap() > 0);
        }
        let out = peel_circuit(&obf, &l, PeelOptions::default()).unwrap();
        assert_eq!(out.recovered().unwrap().gates(), &[]);
    }

    #[test]
    fn strand_mismatch() {
        let obf = NormalForm::identity(5).unwrap();
        assert!(guess_last_gate(&obf, &Layout::new(3).unwrap()).is_err());
    }

    #[test]
    fn peel_recovers_three_gates() {
        let c = ToffoliCircuit::new(3, vec![tof(2, 3, 1), tof(1, 3, 2), tof(1, 2, 3)]).unwrap();
        let obf = obfuscate_circuit(&c, Mode::Naive).nf;
        let out = peel_circuit(&obf, &c.layout(), PeelOptions::default()).unwrap();
        let rec = out.recovered().expect("peeling succeeds");
        assert_eq!(obfuscate_circuit(rec, Mode::Naive).nf, obf);
    }

    #[test]
    fn dictionary() {
        let target = ToffoliCircuit::new(3, vec![tof(2, 3, 1)]).unwrap();
        let other = ToffoliCircuit::new(3, vec![tof(1, 3, 2)]).unwrap();
        let obf = obfuscate_circuit(&target, Mode::Naive);
        assert_eq!(dictionary_attack(&obf, &[other.clone(), target.clone()], Mode::Naive), Some(1));
        assert_eq!(dictionary_attack(&obf, &[other], Mode::Naive), None);
    }

    #[test]
    fn gcd_of_equal_inputs() {
        let c = ToffoliCircuit::new(3, vec![tof(2, 3, 1), tof(1, 2, 3)]).unwrap();
        let a = obfuscate_circuit(&c, Mode::Naive);
        assert_eq!(NormalForm::of(&gcd_strip(&a, &a).unwrap()), a.nf);
    }

    #[test]
    fn gcd_prefix() {
        let e = gcd_experiment(3, 3, 1, 11).unwrap();
        assert_eq!(e.prefix_divides, 3);
    }
}
