use super::group::GroupTable;
use crate::error::{Error, Result};

/// A reversible two-dit gate: a bijection on `d²` ordered pairs, indexed
/// row-major as `a·d + b`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct PairGate {
    d: usize,
    map: Vec<u32>,
}

impl PairGate {
    pub fn new(d: usize, map: Vec<u32>) -> Result<PairGate> {
        if d == 0 || map.len() != d * d {
            return Err(Error::Invalid(format!(
                "gate on {d}-state dits needs {} images, got {}",
                d * d,
                map.len()
            )));
        }
        let mut seen = vec![false; d * d];
        for &x in &map {
            let x = x as usize;
            if x >= d * d || seen[x] {
                return Err(Error::Invalid(format!("gate map is not a bijection (image {x})")));
            }
            seen[x] = true;
        }
        Ok(PairGate { d, map })
    }

    pub fn from_fn(d: usize, f: impl Fn(usize, usize) -> (usize, usize)) -> Result<PairGate> {
        let mut map = Vec::with_capacity(d * d);
        for a in 0..d {
            for b in 0..d {
                let (x, y) = f(a, b);
                if x >= d || y >= d {
                    return Err(Error::Invalid(format!("image ({x}, {y}) out of range")));
                }
                map.push((x * d + y) as u32);
            }
        }
        PairGate::new(d, map)
    }

    pub fn identity(d: usize) -> PairGate {
        PairGate {
            d,
            map: (0..(d * d) as u32).collect(),
        }
    }

    pub fn swap(d: usize) -> PairGate {
        PairGate::from_fn(d, |a, b| (b, a)).expect("swap is a bijection")
    }

    /// The quantum-double gate `R(a, b) = (b, b⁻¹ab)` over `group`, indexed
    /// by the group's canonical element order.
    pub fn r_gate(group: &GroupTable) -> PairGate {
        let d = group.order();
        PairGate::from_fn(d, |a, b| {
            let (a, b) = (group.element(a).unwrap(), group.element(b).unwrap());
            (b.index(), group.conj(a, b).index())
        })
        .expect("R is a bijection")
    }

    pub fn d(&self) -> usize {
        self.d
    }

    /// Images in row-major pair order.
    pub fn map(&self) -> &[u32] {
        &self.map
    }

    #[inline]
    pub fn apply(&self, a: usize, b: usize) -> (usize, usize) {
        let x = self.map[a * self.d + b] as usize;
        (x / self.d, x % self.d)
    }

    pub fn inverse(&self) -> PairGate {
        let mut map = vec![0u32; self.map.len()];
        for (i, &x) in self.map.iter().enumerate() {
            map[x as usize] = i as u32;
        }
        PairGate { d: self.d, map }
    }

    pub fn is_identity(&self) -> bool {
        self.map.iter().enumerate().all(|(i, &x)| i == x as usize)
    }

    /// `R₁R₂R₁ = R₂R₁R₂` on every triple of dits.
    pub fn check_yang_baxter(&self) -> bool {
        self.yang_baxter_violation().is_none()
    }

    /// First triple on which the two sides of the Yang–Baxter equation differ.
    pub fn yang_baxter_violation(&self) -> Option<(usize, usize, usize)> {
        let d = self.d;
        for a in 0..d {
            for b in 0..d {
                for c in 0..d {
                    let mut lhs = [a, b, c];
                    let mut rhs = [a, b, c];
                    for pos in [0, 1, 0] {
                        (lhs[pos], lhs[pos + 1]) = self.apply(lhs[pos], lhs[pos + 1]);
                    }
                    for pos in [1, 0, 1] {
                        (rhs[pos], rhs[pos + 1]) = self.apply(rhs[pos], rhs[pos + 1]);
                    }
                    if lhs != rhs {
                        return Some((a, b, c));
                    }
                }
            }
        }
        None
    }

    /// Least `k ≥ 1` with `gᵏ` the identity: lcm of the cycle lengths.
    pub fn order(&self) -> u64 {
        let mut seen = vec![false; self.map.len()];
        let mut order = 1u64;
        for start in 0..self.map.len() {
            if seen[start] {
                continue;
            }
            let mut len = 0u64;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.map[x] as usize;
                len += 1;
            }
            order = lcm(order, len);
        }
        order
    }

    /// Restriction to `subset × subset`, relabelled by position in `subset`.
    /// Fails if some pair leaves the subset.
    pub fn restrict(&self, subset: &[usize]) -> Result<PairGate> {
        let mut position = vec![usize::MAX; self.d];
        for (k, &x) in subset.iter().enumerate() {
            if x >= self.d || position[x] != usize::MAX {
                return Err(Error::Invalid(format!("bad subset element {x}")));
            }
            position[x] = k;
        }
        let e = subset.len();
        let mut map = Vec::with_capacity(e * e);
        for &a in subset {
            for &b in subset {
                let (x, y) = self.apply(a, b);
                let (px, py) = (position[x], position[y]);
                if px == usize::MAX || py == usize::MAX {
                    return Err(Error::ClosureViolation { a, b });
                }
                map.push((px * e + py) as u32);
            }
        }
        PairGate::new(e, map)
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

pub fn check_yang_baxter(g: &PairGate) -> bool {
    g.check_yang_baxter()
}

pub fn gate_order(g: &PairGate) -> u64 {
    g.order()
}

pub fn restrict_gate(g: &PairGate, subset: &[usize]) -> Result<PairGate> {
    g.restrict(subset)
}

/// Every permutation gate on `d`-state dits satisfying the Yang–Baxter
/// equation, for `d ∈ {2, 3}`, in lexicographic order of their maps.
pub fn ybe_search(d: usize) -> Result<Vec<PairGate>> {
    if !(2..=3).contains(&d) {
        return Err(Error::UnsupportedDimension(d));
    }
    let mut map: Vec<u32> = (0..(d * d) as u32).collect();
    let mut found = Vec::new();
    loop {
        let gate = PairGate { d, map: map.clone() };
        if gate.check_yang_baxter() {
            found.push(gate);
        }
        if !next_permutation(&mut map) {
            break;
        }
    }
    Ok(found)
}

fn next_permutation(v: &mut [u32]) -> bool {
    let Some(i) = (0..v.len().saturating_sub(1)).rev().find(|&i| v[i] < v[i + 1]) else {
        return false;
    };
    let j = (i + 1..v.len()).rev().find(|&j| v[j] > v[i]).unwrap();
    v.swap(i, j);
    v[i + 1..].reverse();
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn r_over_a5_is_yang_baxter() {
        assert!(PairGate::r_gate(&GroupTable::a5()).check_yang_baxter());
    }

    #[test]
    fn swap_and_identity_are_yang_baxter() {
        for d in 1..5 {
            assert!(PairGate::swap(d).check_yang_baxter());
            assert!(PairGate::identity(d).check_yang_baxter());
        }
    }

    #[test]
    fn shear_over_z2_fails() {
        // (a, b) ↦ (a, a + b)
        let g = PairGate::from_fn(2, |a, b| (a, (a + b) % 2)).unwrap();
        assert!(!g.check_yang_baxter());
        assert!(g.yang_baxter_violation().is_some());
    }

    #[test]
    fn orders() {
        assert_eq!(PairGate::identity(3).order(), 1);
        assert_eq!(PairGate::r_gate(&GroupTable::cyclic(5).unwrap()).order(), 2);
        assert_eq!(PairGate::r_gate(&GroupTable::a5()).order(), 60);
    }

    #[test]
    fn order_matches_repeated_application() {
        let g = PairGate::r_gate(&GroupTable::s5());
        let k = g.order();
        let mut state: Vec<usize> = (0..g.map().len()).collect();
        let mut steps = 0;
        loop {
            for s in state.iter_mut() {
                *s = g.map()[*s] as usize;
            }
            steps += 1;
            if state.iter().enumerate().all(|(i, &s)| i == s) {
                break;
            }
        }
        assert_eq!(steps, k);
    }

    #[test]
    fn restriction() {
        let g = PairGate::r_gate(&GroupTable::a5());
        let all: Vec<usize> = (0..60).collect();
        assert_eq!(g.restrict(&all).unwrap(), g);
        // {identity, one 3-cycle}: conjugating by it is fine, but the class is not closed
        let a5 = GroupTable::a5();
        let c = a5.parse_cycles("(123)").unwrap().index();
        let d = a5.parse_cycles("(345)").unwrap().index();
        assert!(matches!(g.restrict(&[0, c, d]), Err(Error::ClosureViolation { .. })));
    }

    #[test]
    fn rejects_non_bijection() {
        assert!(PairGate::new(2, vec![0, 0, 1, 2]).is_err());
        assert!(PairGate::new(2, vec![0, 1, 2]).is_err());
    }

    #[test]
    fn search_d2() {
        let found = ybe_search(2).unwrap();
        assert_eq!(found.len(), 5);
        assert!(found.contains(&PairGate::identity(2)));
        assert!(found.contains(&PairGate::swap(2)));
        assert!(found.contains(&PairGate::r_gate(&GroupTable::cyclic(2).unwrap())));
        for g in &found {
            assert!(found.contains(&g.inverse()));
        }
        assert!(matches!(ybe_search(4), Err(Error::UnsupportedDimension(4))));
    }
}
