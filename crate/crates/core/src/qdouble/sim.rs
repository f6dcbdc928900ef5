use std::collections::HashMap;

use rand::Rng;

use super::group::{GElem, GroupTable};
use crate::braid::{BraidWord, NormalForm, Perm};
use crate::error::{Error, Result};

/// One group element per strand.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct DitState {
    pub dits: Vec<GElem>,
}

impl DitState {
    pub fn new(group: &GroupTable, dits: Vec<GElem>) -> Result<DitState> {
        if let Some(g) = dits.iter().find(|&&g| !group.contains(g)) {
            return Err(Error::NotInGroup(format!("index {} in {}", g.index(), group.name())));
        }
        Ok(DitState { dits })
    }

    pub fn random<R: Rng + ?Sized>(group: &GroupTable, n: usize, rng: &mut R) -> DitState {
        DitState {
            dits: (0..n)
                .map(|_| group.element(rng.random_range(0..group.order())).unwrap())
                .collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.dits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dits.is_empty()
    }
}

/// `R(a, b) = (b, b⁻¹ab)`.
pub fn r_gate(group: &GroupTable, a: GElem, b: GElem) -> (GElem, GElem) {
    (b, group.conj(a, b))
}

/// `R⁻¹(x, y) = (xyx⁻¹, x)`.
pub fn r_gate_inv(group: &GroupTable, x: GElem, y: GElem) -> (GElem, GElem) {
    (group.mul(group.mul(x, y), group.inv(x)), x)
}

fn run_letters(group: &GroupTable, letters: &[i32], dits: &mut [GElem]) {
    for &l in letters {
        let i = l.unsigned_abs() as usize - 1;
        let (a, b) = (dits[i], dits[i + 1]);
        (dits[i], dits[i + 1]) = if l > 0 {
            r_gate(group, a, b)
        } else {
            r_gate_inv(group, a, b)
        };
    }
}

fn check_width(w: usize, state: &DitState) -> Result<()> {
    if w != state.len() {
        return Err(Error::StrandMismatch {
            left: w,
            right: state.len(),
        });
    }
    Ok(())
}

/// Runs a word as an R-circuit: letter `k` applies `R` to dits `(k, k+1)`,
/// letter `-k` applies `R⁻¹`, leftmost letter first.
pub fn simulate(group: &GroupTable, w: &BraidWord, state: &DitState) -> Result<DitState> {
    check_width(w.n(), state)?;
    let mut dits = state.dits.clone();
    run_letters(group, w.letters(), &mut dits);
    Ok(DitState { dits })
}

/// Runs `nf.word()` without expanding the `Δ` power: the orbit of the state
/// under repeated `Δ^{±1}` is tracked and the power reduced modulo its
/// period.
pub fn simulate_normal_form(group: &GroupTable, nf: &NormalForm, state: &DitState) -> Result<DitState> {
    check_width(nf.n(), state)?;
    let delta = Perm::delta(nf.n()).simple_word();
    let delta = if nf.infimum() >= 0 { delta } else { delta.invert() };
    let steps = nf.infimum().unsigned_abs();

    let mut dits = state.dits.clone();
    let mut seen: HashMap<Vec<GElem>, u64> = HashMap::new();
    let mut k = 0u64;
    while k < steps {
        if let Some(&first) = seen.get(&dits) {
            let period = k - first;
            let remaining = (steps - k) % period;
            for _ in 0..remaining {
                run_letters(group, delta.letters(), &mut dits);
            }
            break;
        }
        seen.insert(dits.clone(), k);
        run_letters(group, delta.letters(), &mut dits);
        k += 1;
    }
    for f in nf.factors() {
        run_letters(group, f.simple_word().letters(), &mut dits);
    }
    Ok(DitState { dits })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn r_gate_examples() {
        let g = GroupTable::a5();
        let a = g.parse_cycles("(14352)").unwrap();
        let e = g.identity();
        assert_eq!(r_gate(&g, a, e), (e, a));
        assert_eq!(r_gate(&g, a, a), (a, a));
        let c345 = g.parse_cycles("(345)").unwrap();
        let v = g.parse_cycles("(12)(34)").unwrap();
        let c435 = g.parse_cycles("(435)").unwrap();
        assert_eq!(r_gate(&g, c345, v), (v, c435));
        assert_eq!(r_gate_inv(&g, v, c435), (c345, v));
        assert_eq!(r_gate_inv(&g, e, a), (a, e));
        assert_eq!(r_gate_inv(&g, a, a), (a, a));
    }

    #[test]
    fn inverse_undoes_gate_on_all_pairs() {
        let g = GroupTable::a5();
        for a in g.elements() {
            for b in g.elements() {
                let (x, y) = r_gate(&g, a, b);
                assert_eq!(r_gate_inv(&g, x, y), (a, b));
            }
        }
    }

    #[test]
    fn encoded_swap_and_conjugation() {
        let g = GroupTable::a5();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let s = DitState::random(&g, 2, &mut rng);
            let (a, b) = (s.dits[0], s.dits[1]);
            let enc = DitState::new(&g, vec![a, g.inv(a), b, g.inv(b)]).unwrap();
            let swapped = simulate(&g, &BraidWord::new(4, vec![2, 1, 3, 2]).unwrap(), &enc).unwrap();
            assert_eq!(swapped.dits, vec![b, g.inv(b), a, g.inv(a)]);
            let conj = simulate(&g, &BraidWord::new(4, vec![2, 3, 3, 2]).unwrap(), &enc).unwrap();
            let aba = g.mul(g.mul(a, b), g.inv(a));
            assert_eq!(conj.dits, vec![a, g.inv(a), aba, g.inv(aba)]);
        }
    }

    #[test]
    fn width_mismatch() {
        let g = GroupTable::a5();
        let s = DitState::new(&g, vec![g.identity(); 3]).unwrap();
        assert!(simulate(&g, &BraidWord::new(4, vec![1]).unwrap(), &s).is_err());
        assert_eq!(simulate(&g, &BraidWord::identity(3).unwrap(), &s).unwrap(), s);
    }

    #[test]
    fn normal_form_shortcut_matches_expansion() {
        let g = GroupTable::a5();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for m in [-37i64, -3, 0, 2, 25] {
            let nf = NormalForm::from_parts(5, m, vec![Perm::transposition(5, 2)]).unwrap();
            let s = DitState::random(&g, 5, &mut rng);
            assert_eq!(
                simulate_normal_form(&g, &nf, &s).unwrap(),
                simulate(&g, &nf.word(), &s).unwrap()
            );
        }
    }
}
