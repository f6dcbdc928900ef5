//! Compilation of Toffoli circuits into braid words over the `A₅` gate.
//!
//! Every logical value lives in an encoded dit `g̃ = (g, g⁻¹)` occupying two
//! adjacent strands. Dits 1–4 hold the catalysts `(14352)`, `(15342)`,
//! `(124)`, `(521)`; dit `4 + k` holds logical wire `k`, with `(345)` for a
//! zero bit and `(435)` for a one bit. A Toffoli gate conjugates the target
//! dit nine times, each time controlled by a catalyst or a logical control,
//! so that the target is conjugated by
//! `f(g₁, g₂) = (521) g₁ (14352) g₂ (124) g₁⁻¹ (15342) g₂⁻¹ (521)`,
//! which is `(12)(34)` when both controls encode one and the identity
//! otherwise.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::braid::BraidWord;
use crate::error::{Error, Result};
use crate::qdouble::{DitState, GElem, GroupTable};

pub const CATALYSTS: [&str; 4] = ["(14352)", "(15342)", "(124)", "(521)"];
pub const ENCODED_ZERO: &str = "(345)";
pub const ENCODED_ONE: &str = "(435)";

/// Order of the `A₅` gate: `R⁶⁰` is the identity.
pub const A5_GATE_ORDER: u32 = 60;

/// Catalysts and bit encodings together with their inverses: the initial
/// values of every dit in a compiled circuit.
pub fn encoding_seed(group: &GroupTable) -> Result<Vec<GElem>> {
    let mut out = Vec::new();
    for text in CATALYSTS.iter().chain([&ENCODED_ZERO, &ENCODED_ONE]) {
        let g = group.parse_cycles(text)?;
        out.push(g);
        out.push(group.inv(g));
    }
    out.sort();
    out.dedup();
    Ok(out)
}

/// Doubly-controlled NOT; controls are kept sorted.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ToffoliGate {
    pub c1: usize,
    pub c2: usize,
    pub target: usize,
}

impl ToffoliGate {
    pub fn new(c1: usize, c2: usize, target: usize) -> Result<ToffoliGate> {
        if c1 == c2 || c1 == target || c2 == target || c1 == 0 || c2 == 0 || target == 0 {
            return Err(Error::InvalidGate {
                c1,
                c2,
                t: target,
                wires: 0,
            });
        }
        Ok(ToffoliGate {
            c1: c1.min(c2),
            c2: c1.max(c2),
            target,
        })
    }

    fn check(&self, wires: usize) -> Result<()> {
        let ok = self.c1 >= 1
            && self.c1 < self.c2
            && self.c2 <= wires
            && self.target >= 1
            && self.target <= wires
            && self.target != self.c1
            && self.target != self.c2;
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidGate {
                c1: self.c1,
                c2: self.c2,
                t: self.target,
                wires,
            })
        }
    }

    /// Bit vectors have wire `k` in bit `k - 1`.
    pub fn apply(&self, bits: u64) -> u64 {
        let b1 = bits >> (self.c1 - 1) & 1;
        let b2 = bits >> (self.c2 - 1) & 1;
        bits ^ ((b1 & b2) << (self.target - 1))
    }

    /// Every placement on `wires` wires: `3·C(wires, 3)` gates, sorted.
    pub fn all_placements(wires: usize) -> Vec<ToffoliGate> {
        let mut out = Vec::new();
        for c1 in 1..=wires {
            for c2 in c1 + 1..=wires {
                for target in 1..=wires {
                    if target != c1 && target != c2 {
                        out.push(ToffoliGate { c1, c2, target });
                    }
                }
            }
        }
        out
    }
}

impl fmt::Display for ToffoliGate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TOF({},{};{})", self.c1, self.c2, self.target)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ToffoliCircuit {
    wires: usize,
    gates: Vec<ToffoliGate>,
}

impl ToffoliCircuit {
    pub fn new(wires: usize, gates: Vec<ToffoliGate>) -> Result<ToffoliCircuit> {
        if !(3..=Layout::MAX_WIRES).contains(&wires) {
            return Err(Error::IndexOutOfBounds {
                index: wires,
                min: 3,
                max: Layout::MAX_WIRES,
            });
        }
        for g in &gates {
            g.check(wires)?;
        }
        Ok(ToffoliCircuit { wires, gates })
    }

    pub fn empty(wires: usize) -> Result<ToffoliCircuit> {
        ToffoliCircuit::new(wires, Vec::new())
    }

    pub fn wires(&self) -> usize {
        self.wires
    }

    pub fn gates(&self) -> &[ToffoliGate] {
        &self.gates
    }

    pub fn layout(&self) -> Layout {
        Layout { wires: self.wires }
    }

    pub fn apply(&self, bits: u64) -> u64 {
        self.gates.iter().fold(bits, |b, g| g.apply(b))
    }

    /// Outputs for every input `0..2^wires`.
    pub fn truth_table(&self) -> Vec<u64> {
        (0..1u64 << self.wires).map(|x| self.apply(x)).collect()
    }

    /// Random circuit with `gates` uniformly chosen placements.
    pub fn random<R: Rng + ?Sized>(wires: usize, gates: usize, rng: &mut R) -> Result<ToffoliCircuit> {
        let placements = ToffoliGate::all_placements(wires);
        let chosen = (0..gates)
            .map(|_| placements[rng.random_range(0..placements.len())])
            .collect();
        ToffoliCircuit::new(wires, chosen)
    }
}

/// Strand and dit embedding of a circuit on `wires` logical wires.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Layout {
    wires: usize,
}

impl Layout {
    pub const CATALYST_DITS: usize = 4;
    /// `2·(wires + 4)` strands must fit the braid strand limit.
    pub const MAX_WIRES: usize = crate::braid::MAX_STRANDS / 2 - Self::CATALYST_DITS;

    pub fn new(wires: usize) -> Result<Layout> {
        if !(1..=Self::MAX_WIRES).contains(&wires) {
            return Err(Error::IndexOutOfBounds {
                index: wires,
                min: 1,
                max: Self::MAX_WIRES,
            });
        }
        Ok(Layout { wires })
    }

    pub fn wires(&self) -> usize {
        self.wires
    }

    pub fn dits(&self) -> usize {
        self.wires + Self::CATALYST_DITS
    }

    pub fn strands(&self) -> usize {
        2 * self.dits()
    }

    pub fn dit_of_wire(&self, wire: usize) -> usize {
        Self::CATALYST_DITS + wire
    }

    fn check_dit(&self, j: usize, max: usize) -> Result<()> {
        if j == 0 || j > max {
            return Err(Error::IndexOutOfBounds {
                index: j,
                min: 1,
                max,
            });
        }
        Ok(())
    }

    /// Encodes logical bits (wire `k` in bit `k - 1`) with the catalysts in
    /// place, as the `2·dits` strand values `(g, g⁻¹)`.
    pub fn encode(&self, group: &GroupTable, bits: u64) -> Result<DitState> {
        let zero = group.parse_cycles(ENCODED_ZERO)?;
        let one = group.parse_cycles(ENCODED_ONE)?;
        let mut values = Vec::with_capacity(self.dits());
        for c in CATALYSTS {
            values.push(group.parse_cycles(c)?);
        }
        for k in 0..self.wires {
            values.push(if bits >> k & 1 == 1 { one } else { zero });
        }
        self.encode_values(group, &values)
    }

    /// Encodes one arbitrary value per dit.
    pub fn encode_values(&self, group: &GroupTable, values: &[GElem]) -> Result<DitState> {
        if values.len() != self.dits() {
            return Err(Error::StrandMismatch {
                left: self.dits(),
                right: values.len(),
            });
        }
        let dits = values.iter().flat_map(|&g| [g, group.inv(g)]).collect();
        DitState::new(group, dits)
    }

    /// Reads logical bits back, checking the pair encoding and that the
    /// catalysts are restored.
    pub fn decode(&self, group: &GroupTable, state: &DitState) -> Result<u64> {
        if state.len() != self.strands() {
            return Err(Error::StrandMismatch {
                left: self.strands(),
                right: state.len(),
            });
        }
        let zero = group.parse_cycles(ENCODED_ZERO)?;
        let one = group.parse_cycles(ENCODED_ONE)?;
        for j in 0..self.dits() {
            let (g, h) = (state.dits[2 * j], state.dits[2 * j + 1]);
            if group.inv(g) != h {
                return Err(Error::Decode(format!("dit {} is not a (g, g⁻¹) pair", j + 1)));
            }
        }
        for (k, c) in CATALYSTS.iter().enumerate() {
            if state.dits[2 * k] != group.parse_cycles(c)? {
                return Err(Error::Decode(format!("catalyst {} not restored", k + 1)));
            }
        }
        let mut bits = 0u64;
        for k in 0..self.wires {
            let g = state.dits[2 * self.dit_of_wire(k + 1) - 2];
            if g == one {
                bits |= 1 << k;
            } else if g != zero {
                return Err(Error::Decode(format!(
                    "wire {} holds {}",
                    k + 1,
                    group.describe(g)
                )));
            }
        }
        Ok(bits)
    }
}

/// Direction of an encoded conjugation: `Plus` maps the target `b` to
/// `aba⁻¹`, `Minus` to `a⁻¹ba`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

/// Encoded swap of dits `j` and `j + 1`.
pub fn swap_macro(j: usize, layout: &Layout) -> Result<Vec<i32>> {
    layout.check_dit(j, layout.dits() - 1)?;
    let k = 2 * j as i32;
    Ok(vec![k, k - 1, k + 1, k])
}

/// Encoded conjugation of dit `j + 1` by dit `j`.
pub fn conj_macro(j: usize, sign: Sign, layout: &Layout) -> Result<Vec<i32>> {
    layout.check_dit(j, layout.dits() - 1)?;
    let k = 2 * j as i32;
    let letters = [k, k + 1, k + 1, k];
    Ok(match sign {
        Sign::Plus => letters.to_vec(),
        Sign::Minus => letters.iter().map(|l| -l).collect(),
    })
}

/// Conjugation of `target` by `control` for arbitrary dit positions.
///
/// A control above the target is swapped down until it sits directly above
/// it. A control below the target is swapped up past it, which leaves it
/// directly above the target too. The swap network is undone afterwards.
///
/// An inverse conjugation is always done in the upside-down form
/// `S·C⁻¹·S`, so a control above the target is first swapped past it. The
/// bare `C⁻¹` is a negative braid, while the sandwiched one keeps every
/// compiled Toffoli gate positive.
pub fn routed_conj(control: usize, target: usize, sign: Sign, layout: &Layout) -> Result<Vec<i32>> {
    layout.check_dit(control, layout.dits())?;
    layout.check_dit(target, layout.dits())?;
    if control == target {
        return Err(Error::Invalid(format!("control and target are both dit {control}")));
    }
    let (mut swaps, pivot): (Vec<usize>, usize) = if control < target {
        ((control..target - 1).collect(), target - 1)
    } else {
        ((target..control).rev().collect(), target)
    };
    if control < target && sign == Sign::Minus {
        swaps.extend([pivot, pivot]);
    }
    let mut letters = Vec::new();
    for &j in &swaps {
        letters.extend(swap_macro(j, layout)?);
    }
    letters.extend(conj_macro(pivot, sign, layout)?);
    for &j in swaps.iter().rev() {
        letters.extend(swap_macro(j, layout)?);
    }
    Ok(letters)
}

/// The nine controlled conjugations realizing one Toffoli gate, in time
/// order, as `(control dit, sign)`.
fn toffoli_schedule(gate: &ToffoliGate, layout: &Layout) -> [(usize, Sign); 9] {
    let c1 = layout.dit_of_wire(gate.c1);
    let c2 = layout.dit_of_wire(gate.c2);
    [
        (4, Sign::Plus),
        (c2, Sign::Minus),
        (2, Sign::Plus),
        (c1, Sign::Minus),
        (3, Sign::Plus),
        (c2, Sign::Plus),
        (1, Sign::Plus),
        (c1, Sign::Plus),
        (4, Sign::Plus),
    ]
}

pub fn compile_toffoli(gate: &ToffoliGate, layout: &Layout) -> Result<BraidWord> {
    gate.check(layout.wires())?;
    let target = layout.dit_of_wire(gate.target);
    let mut letters = Vec::new();
    for (control, sign) in toffoli_schedule(gate, layout) {
        letters.extend(routed_conj(control, target, sign, layout)?);
    }
    BraidWord::new(layout.strands(), letters)
}

/// Concatenation of the compiled gates, in time order.
pub fn compile_circuit(c: &ToffoliCircuit) -> BraidWord {
    let layout = c.layout();
    let mut letters = Vec::new();
    for g in c.gates() {
        letters.extend(compile_toffoli(g, &layout).expect("gates validated").into_letters());
    }
    BraidWord::new(layout.strands(), letters).expect("compiled letters in range")
}

/// Replaces each letter, independently with probability 1/2, by
/// `order - 1` copies of its inverse (`σ_i ↦ σ_i^{1-order}` and
/// `σ_i⁻¹ ↦ σ_i^{order-1}`). Functionality is unchanged whenever the gate
/// satisfies `Rᵒʳᵈᵉʳ = 1`.
pub fn randomize_word(w: &BraidWord, seed: u64, order: u32) -> Result<BraidWord> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    randomize_word_with(w, order, |_| rng.random_bool(0.5))
}

/// [`randomize_word`] with an explicit choice per letter position.
pub fn randomize_word_with(
    w: &BraidWord,
    order: u32,
    mut substitute: impl FnMut(usize) -> bool,
) -> Result<BraidWord> {
    if order < 1 {
        return Err(Error::Invalid("gate order must be positive".into()));
    }
    let mut letters = Vec::with_capacity(w.len());
    for (pos, &l) in w.letters().iter().enumerate() {
        if substitute(pos) {
            letters.extend(std::iter::repeat_n(-l, order as usize - 1));
        } else {
            letters.push(l);
        }
    }
    BraidWord::new(w.n(), letters)
}
