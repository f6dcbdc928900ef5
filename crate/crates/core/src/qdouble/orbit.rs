use std::collections::BTreeSet;

use super::group::{GElem, GroupTable};

/// Closure of `gens` under multiplication and inversion.
pub fn generated_subgroup(group: &GroupTable, gens: &BTreeSet<GElem>) -> BTreeSet<GElem> {
    let mut subgroup: BTreeSet<GElem> = BTreeSet::from([group.identity()]);
    let mut frontier: Vec<GElem> = vec![group.identity()];
    let gens: Vec<GElem> = gens.iter().flat_map(|&g| [g, group.inv(g)]).collect();
    while let Some(x) = frontier.pop() {
        for &g in &gens {
            let y = group.mul(x, g);
            if subgroup.insert(y) {
                frontier.push(y);
            }
        }
    }
    subgroup
}

/// Values reachable from dits initialized in `seed` under `R` and `R⁻¹`:
/// all `b⁻¹ab` with `a ∈ seed` and `b ∈ ⟨seed⟩`.
pub fn orbit_under_r(group: &GroupTable, seed: &BTreeSet<GElem>) -> BTreeSet<GElem> {
    let closure = generated_subgroup(group, seed);
    seed.iter()
        .flat_map(|&a| closure.iter().map(move |&b| group.conj(a, b)))
        .collect()
}

/// How many elements of a set fall into one conjugacy class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassCount {
    pub representative: GElem,
    pub class_size: usize,
    pub in_set: usize,
}

pub fn class_breakdown(group: &GroupTable, set: &BTreeSet<GElem>) -> Vec<ClassCount> {
    group
        .conjugacy_classes()
        .into_iter()
        .map(|class| ClassCount {
            representative: class[0],
            class_size: class.len(),
            in_set: class.iter().filter(|g| set.contains(g)).count(),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_seed() {
        let g = GroupTable::a5();
        let seed = BTreeSet::from([g.identity()]);
        assert_eq!(generated_subgroup(&g, &seed), seed);
        assert_eq!(orbit_under_r(&g, &seed), seed);
    }

    #[test]
    fn cyclic_subgroup() {
        let g = GroupTable::a5();
        let c = g.parse_cycles("(12345)").unwrap();
        assert_eq!(generated_subgroup(&g, &BTreeSet::from([c])).len(), 5);
    }

    #[test]
    fn breakdown_covers_group() {
        let g = GroupTable::a5();
        let all: BTreeSet<GElem> = g.elements().collect();
        let total: usize = class_breakdown(&g, &all).iter().map(|c| c.in_set).sum();
        assert_eq!(total, 60);
    }
}
