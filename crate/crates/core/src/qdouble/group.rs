use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};

/// Element of a [`GroupTable`], as an index into its canonical element order.
/// Index 0 is always the identity.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct GElem(pub(crate) u16);

impl GElem {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// Largest order accepted for custom multiplication tables.
pub const MAX_CUSTOM_ORDER: usize = 256;

/// A finite group given by its full multiplication table.
///
/// The built-ins (`A₅`, `S₅`) keep the permutation of `{1..5}` behind each
/// element, ordered lexicographically by images so the identity comes
/// first. Products compose right to left: `(ab)(x) = a(b(x))`.
#[derive(Clone)]
pub struct GroupTable {
    name: String,
    order: usize,
    perms: Option<Vec<[u8; 5]>>,
    mul: Vec<u16>,
    inv: Vec<u16>,
}

impl fmt::Debug for GroupTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GroupTable({}, order {})", self.name, self.order)
    }
}

fn compose5(a: &[u8; 5], b: &[u8; 5]) -> [u8; 5] {
    let mut out = [0u8; 5];
    for i in 0..5 {
        out[i] = a[b[i] as usize - 1];
    }
    out
}

fn is_even(p: &[u8; 5]) -> bool {
    let mut inversions = 0;
    for i in 0..5 {
        for j in i + 1..5 {
            if p[i] > p[j] {
                inversions += 1;
            }
        }
    }
    inversions % 2 == 0
}

fn all_perms5() -> Vec<[u8; 5]> {
    let mut out = Vec::with_capacity(120);
    let mut cur = [1u8, 2, 3, 4, 5];
    loop {
        out.push(cur);
        // next lexicographic permutation
        let Some(i) = (0..4).rev().find(|&i| cur[i] < cur[i + 1]) else {
            break;
        };
        let j = (i + 1..5).rev().find(|&j| cur[j] > cur[i]).unwrap();
        cur.swap(i, j);
        cur[i + 1..].reverse();
    }
    out
}

impl GroupTable {
    fn from_perms(name: &str, perms: Vec<[u8; 5]>) -> GroupTable {
        let order = perms.len();
        let index = |p: &[u8; 5]| perms.binary_search(p).expect("closed under composition") as u16;
        let mut mul = Vec::with_capacity(order * order);
        for a in &perms {
            for b in &perms {
                mul.push(index(&compose5(a, b)));
            }
        }
        let inv = perms
            .iter()
            .map(|p| {
                let mut q = [0u8; 5];
                for i in 0..5 {
                    q[p[i] as usize - 1] = i as u8 + 1;
                }
                index(&q)
            })
            .collect();
        GroupTable {
            name: name.to_string(),
            order,
            perms: Some(perms),
            mul,
            inv,
        }
    }

    /// The alternating group `A₅` (order 60).
    pub fn a5() -> GroupTable {
        let perms = all_perms5().into_iter().filter(is_even).collect();
        GroupTable::from_perms("a5", perms)
    }

    /// The symmetric group `S₅` (order 120).
    pub fn s5() -> GroupTable {
        GroupTable::from_perms("s5", all_perms5())
    }

    /// The cyclic group `Z_d` under addition.
    pub fn cyclic(d: usize) -> Result<GroupTable> {
        let rows = (0..d).map(|a| (0..d).map(|b| (a + b) % d).collect()).collect();
        GroupTable::from_table(&format!("z{d}"), rows)
    }

    /// Looks up a built-in by name (`a5`, `s5`, `z<d>`).
    pub fn builtin(name: &str) -> Result<GroupTable> {
        match name {
            "a5" => Ok(GroupTable::a5()),
            "s5" => Ok(GroupTable::s5()),
            _ => match name.strip_prefix('z').and_then(|d| d.parse::<usize>().ok()) {
                Some(d) if d >= 1 => GroupTable::cyclic(d),
                _ => Err(Error::InvalidGroup(format!("unknown built-in group `{name}`"))),
            },
        }
    }

    /// Wraps an explicit multiplication table (`rows[a][b]` is the index of
    /// `a·b`, element 0 the identity) after verifying the group axioms,
    /// associativity included.
    pub fn from_table(name: &str, rows: Vec<Vec<usize>>) -> Result<GroupTable> {
        let d = rows.len();
        if d == 0 || d > MAX_CUSTOM_ORDER {
            return Err(Error::InvalidGroup(format!(
                "order {d} outside 1..={MAX_CUSTOM_ORDER}"
            )));
        }
        let mut mul = Vec::with_capacity(d * d);
        for (a, row) in rows.iter().enumerate() {
            if row.len() != d {
                return Err(Error::InvalidGroup(format!(
                    "row {a} has {} entries, expected {d}",
                    row.len()
                )));
            }
            for &x in row {
                if x >= d {
                    return Err(Error::InvalidGroup(format!("entry {x} out of range in row {a}")));
                }
                mul.push(x as u16);
            }
        }
        let at = |a: usize, b: usize| mul[a * d + b] as usize;
        for a in 0..d {
            if at(0, a) != a || at(a, 0) != a {
                return Err(Error::InvalidGroup("element 0 is not the identity".into()));
            }
        }
        let mut inv = vec![0u16; d];
        for a in 0..d {
            let Some(b) = (0..d).find(|&b| at(a, b) == 0) else {
                return Err(Error::InvalidGroup(format!("element {a} has no inverse")));
            };
            if at(b, a) != 0 {
                return Err(Error::InvalidGroup(format!("inverse of {a} is one-sided")));
            }
            inv[a] = b as u16;
        }
        for a in 0..d {
            for b in 0..d {
                let ab = at(a, b);
                for c in 0..d {
                    if at(ab, c) != at(a, at(b, c)) {
                        return Err(Error::InvalidGroup(format!(
                            "not associative at ({a}, {b}, {c})"
                        )));
                    }
                }
            }
        }
        Ok(GroupTable {
            name: name.to_string(),
            order: d,
            perms: None,
            mul,
            inv,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> GElem {
        GElem(0)
    }

    pub fn elements(&self) -> impl Iterator<Item = GElem> {
        (0..self.order as u16).map(GElem)
    }

    pub fn element(&self, index: usize) -> Result<GElem> {
        if index < self.order {
            Ok(GElem(index as u16))
        } else {
            Err(Error::NotInGroup(format!("index {index} in group of order {}", self.order)))
        }
    }

    pub fn contains(&self, g: GElem) -> bool {
        g.index() < self.order
    }

    #[inline]
    pub fn mul(&self, a: GElem, b: GElem) -> GElem {
        GElem(self.mul[a.index() * self.order + b.index()])
    }

    #[inline]
    pub fn inv(&self, a: GElem) -> GElem {
        GElem(self.inv[a.index()])
    }

    /// `b⁻¹ a b`.
    #[inline]
    pub fn conj(&self, a: GElem, b: GElem) -> GElem {
        self.mul(self.mul(self.inv(b), a), b)
    }

    pub fn product(&self, elems: &[GElem]) -> GElem {
        elems.iter().fold(self.identity(), |acc, &g| self.mul(acc, g))
    }

    pub fn element_order(&self, g: GElem) -> usize {
        let mut x = g;
        let mut k = 1;
        while x != self.identity() {
            x = self.mul(x, g);
            k += 1;
        }
        k
    }

    pub fn is_permutation_group(&self) -> bool {
        self.perms.is_some()
    }

    /// Images of `1..=5`, for the built-in permutation groups.
    pub fn images(&self, g: GElem) -> Option<[u8; 5]> {
        self.perms.as_ref().map(|p| p[g.index()])
    }

    pub fn from_images(&self, images: &[u8; 5]) -> Result<GElem> {
        let perms = self
            .perms
            .as_ref()
            .ok_or_else(|| Error::NotInGroup(format!("{} has no permutation representation", self.name)))?;
        perms
            .binary_search(images)
            .map(|i| GElem(i as u16))
            .map_err(|_| Error::NotInGroup(format!("{images:?} in {}", self.name)))
    }

    /// Parses cycle notation such as `(14352)`, `(12)(34)`, `(1 2)(3 4)` or
    /// `()` for the identity. Cycles are composed right to left.
    pub fn parse_cycles(&self, text: &str) -> Result<GElem> {
        let err = || Error::NotInGroup(format!("bad cycle notation `{text}`"));
        let mut images = [1u8, 2, 3, 4, 5];
        let trimmed = text.trim();
        if trimmed == "id" || trimmed == "e" {
            return self.from_images(&images);
        }
        let mut rest = trimmed;
        let mut cycles = Vec::new();
        while !rest.is_empty() {
            let body = rest.strip_prefix('(').ok_or_else(err)?;
            let close = body.find(')').ok_or_else(err)?;
            let inner = &body[..close];
            let points: Vec<u8> = if inner.contains([' ', ',']) {
                inner
                    .split([' ', ','])
                    .filter(|s| !s.is_empty())
                    .map(|s| s.parse::<u8>().map_err(|_| err()))
                    .collect::<Result<_>>()?
            } else {
                inner
                    .chars()
                    .map(|c| c.to_digit(10).map(|d| d as u8).ok_or_else(err))
                    .collect::<Result<_>>()?
            };
            let mut seen = BTreeSet::new();
            if points.iter().any(|&x| !(1..=5).contains(&x) || !seen.insert(x)) {
                return Err(err());
            }
            cycles.push(points);
            rest = body[close + 1..].trim_start();
        }
        for cycle in cycles.iter().rev() {
            let mut c = [1u8, 2, 3, 4, 5];
            for (k, &x) in cycle.iter().enumerate() {
                c[x as usize - 1] = cycle[(k + 1) % cycle.len()];
            }
            images = compose5(&c, &images);
        }
        self.from_images(&images)
    }

    /// Cycle notation for built-ins, `#index` otherwise.
    pub fn describe(&self, g: GElem) -> String {
        let Some(p) = self.images(g) else {
            return format!("#{}", g.index());
        };
        let mut seen = [false; 5];
        let mut out = String::new();
        for start in 1..=5u8 {
            if seen[start as usize - 1] || p[start as usize - 1] == start {
                continue;
            }
            out.push('(');
            let mut x = start;
            while !seen[x as usize - 1] {
                seen[x as usize - 1] = true;
                out.push(char::from(b'0' + x));
                x = p[x as usize - 1];
            }
            out.push(')');
        }
        if out.is_empty() {
            out.push_str("()");
        }
        out
    }

    /// Conjugacy classes, each sorted, ordered by smallest member.
    pub fn conjugacy_classes(&self) -> Vec<Vec<GElem>> {
        let mut assigned = vec![false; self.order];
        let mut classes = Vec::new();
        for a in self.elements() {
            if assigned[a.index()] {
                continue;
            }
            let class: BTreeSet<GElem> = self.elements().map(|b| self.conj(a, b)).collect();
            for c in &class {
                assigned[c.index()] = true;
            }
            classes.push(class.into_iter().collect());
        }
        classes
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_orders() {
        let a5 = GroupTable::a5();
        assert_eq!(a5.order(), 60);
        assert_eq!(GroupTable::s5().order(), 120);
        assert_eq!(a5.images(a5.identity()), Some([1, 2, 3, 4, 5]));
    }

    #[test]
    fn a5_is_a_group() {
        let g = GroupTable::a5();
        for a in g.elements() {
            assert_eq!(g.mul(a, g.inv(a)), g.identity());
            assert_eq!(g.mul(g.inv(a), a), g.identity());
            for b in g.elements() {
                for c in g.elements() {
                    assert_eq!(g.mul(g.mul(a, b), c), g.mul(a, g.mul(b, c)));
                }
            }
        }
    }

    #[test]
    fn cycle_parsing() {
        let g = GroupTable::a5();
        let c = g.parse_cycles("(14352)").unwrap();
        // 1→4→3→5→2→1
        assert_eq!(g.images(c), Some([4, 1, 5, 3, 2]));
        assert_eq!(g.describe(c), "(14352)");
        let v = g.parse_cycles("(12)(34)").unwrap();
        assert_eq!(g.parse_cycles("(1 2)(3 4)").unwrap(), v);
        assert_eq!(g.parse_cycles("()").unwrap(), g.identity());
        assert_eq!(g.describe(g.parse_cycles("(521)").unwrap()), "(152)");
        // odd permutations are not in A5
        assert!(g.parse_cycles("(12)").is_err());
        assert!(GroupTable::s5().parse_cycles("(12)").is_ok());
        assert!(g.parse_cycles("(116)").is_err());
    }

    #[test]
    fn products_compose_right_to_left() {
        let g = GroupTable::s5();
        let a = g.parse_cycles("(12)").unwrap();
        let b = g.parse_cycles("(23)").unwrap();
        // (12)(23): 1 → 2 → 3 → 1
        assert_eq!(g.mul(a, b), g.parse_cycles("(123)").unwrap());
    }

    #[test]
    fn a5_class_sizes() {
        let mut sizes: Vec<usize> = GroupTable::a5().conjugacy_classes().iter().map(Vec::len).collect();
        sizes.sort();
        assert_eq!(sizes, vec![1, 12, 12, 15, 20]);
    }

    #[test]
    fn custom_table_validation() {
        assert!(GroupTable::cyclic(4).is_ok());
        // identity row broken
        assert!(GroupTable::from_table("bad", vec![vec![1, 0], vec![0, 1]]).is_err());
        // latin square that is not associative: quasigroup with identity of order 5
        let loop5 = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        assert!(matches!(
            GroupTable::from_table("loop", loop5),
            Err(Error::InvalidGroup(_))
        ));
        assert!(GroupTable::from_table("big", vec![vec![0; 300]; 300]).is_err());
    }
}
