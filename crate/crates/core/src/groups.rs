//! Finite groups given by full multiplication tables: dihedral groups and small symmetric groups.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rustc_hash::FxHashMap;
use serde::Serialize;

use crate::error::{Error, Result};

/// Index of an element in its group's table.
pub type GroupElt = usize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "family", rename_all = "lowercase")]
pub enum GroupKind {
    /// Order 2m, elements `g^a h^b` stored at index `a*m + b`.
    Dihedral { m: u32 },
    /// Permutations of {1..n} in lexicographic one-line order, `(st)(x) = s(t(x))`.
    Symmetric { n: usize },
}

#[derive(Clone, Debug)]
pub struct FinGroup {
    kind: GroupKind,
    order: usize,
    table: Vec<u32>,
    inverse: Vec<GroupElt>,
    identity: GroupElt,
    labels: Vec<String>,
    generators: Vec<GroupElt>,
    /// One-line images (0-based) for permutation groups.
    perms: Vec<Vec<u8>>,
    perm_index: FxHashMap<Vec<u8>, GroupElt>,
    label_index: FxHashMap<String, GroupElt>,
}

#[derive(Serialize)]
struct GroupJson<'a> {
    kind: GroupKind,
    order: usize,
    labels: &'a [String],
    mult: Vec<Vec<u32>>,
}

impl FinGroup {
    /// The dihedral group of order 2m generated by `g` (order 2) and `h` (order m), `g h g = h^-1`.
    pub fn dihedral(m: u32) -> Result<FinGroup> {
        if !(2..=4096).contains(&m) {
            return Err(Error::validation("bad-group", format!("dihedral parameter must lie in 2..=4096, got {m}")));
        }
        let mu = m as usize;
        let order = 2 * mu;
        let idx = |a: usize, b: usize| a * mu + b;
        let mut table = vec![0u32; order * order];
        for a in 0..2 {
            for b in 0..mu {
                for c in 0..2 {
                    for d in 0..mu {
                        let sb = if c == 0 { b } else { (mu - b) % mu };
                        table[idx(a, b) * order + idx(c, d)] = idx((a + c) % 2, (sb + d) % mu) as u32;
                    }
                }
            }
        }
        let labels = (0..order)
            .map(|x| {
                let (a, b) = (x / mu, x % mu);
                let hpart = match b {
                    0 => String::new(),
                    1 => "h".to_string(),
                    _ => format!("h^{b}"),
                };
                match (a, b) {
                    (0, 0) => "e".to_string(),
                    (0, _) => hpart,
                    _ => format!("g{hpart}"),
                }
            })
            .collect();
        Self::from_table(GroupKind::Dihedral { m }, table, labels, vec![idx(1, 0), idx(0, 1)], vec![])
    }

    /// The symmetric group on n letters, 2 <= n <= 6.
    pub fn symmetric(n: usize) -> Result<FinGroup> {
        if !(2..=6).contains(&n) {
            return Err(Error::validation("bad-group", format!("symmetric degree must lie in 2..=6, got {n}")));
        }
        let mut perms = Vec::new();
        let mut p: Vec<u8> = (0..n as u8).collect();
        loop {
            perms.push(p.clone());
            if !next_permutation(&mut p) {
                break;
            }
        }
        let order = perms.len();
        let index: FxHashMap<Vec<u8>, usize> = perms.iter().enumerate().map(|(i, p)| (p.clone(), i)).collect();
        let mut table = vec![0u32; order * order];
        for (i, s) in perms.iter().enumerate() {
            for (j, t) in perms.iter().enumerate() {
                let st: Vec<u8> = t.iter().map(|&x| s[x as usize]).collect();
                table[i * order + j] = index[&st] as u32;
            }
        }
        let labels = perms.iter().map(|p| cycle_label(p)).collect();
        let generators = (0..n - 1)
            .map(|i| {
                let mut t: Vec<u8> = (0..n as u8).collect();
                t.swap(i, i + 1);
                index[&t]
            })
            .collect();
        Self::from_table(GroupKind::Symmetric { n }, table, labels, generators, perms)
    }

    fn from_table(
        kind: GroupKind,
        table: Vec<u32>,
        labels: Vec<String>,
        generators: Vec<GroupElt>,
        perms: Vec<Vec<u8>>,
    ) -> Result<FinGroup> {
        let order = labels.len();
        let identity = (0..order)
            .find(|&e| (0..order).all(|x| table[e * order + x] as usize == x && table[x * order + e] as usize == x))
            .ok_or_else(|| Error::structural("no-identity", "multiplication table has no identity"))?;
        let mut inverse = vec![usize::MAX; order];
        for x in 0..order {
            inverse[x] = (0..order)
                .find(|&y| table[x * order + y] as usize == identity)
                .ok_or_else(|| Error::structural("no-inverse", format!("element {x} has no inverse")))?;
        }
        let perm_index = perms.iter().enumerate().map(|(i, p)| (p.clone(), i)).collect();
        let label_index = labels.iter().enumerate().map(|(i, l)| (l.clone(), i)).collect();
        Ok(FinGroup { kind, order, table, inverse, identity, labels, generators, perms, perm_index, label_index })
    }

    pub fn kind(&self) -> GroupKind {
        self.kind
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> GroupElt {
        self.identity
    }

    pub fn elements(&self) -> std::ops::Range<GroupElt> {
        0..self.order
    }

    #[inline]
    pub fn mul(&self, a: GroupElt, b: GroupElt) -> GroupElt {
        self.table[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: GroupElt) -> GroupElt {
        self.inverse[a]
    }

    /// `x y x^-1`.
    pub fn conj(&self, x: GroupElt, y: GroupElt) -> GroupElt {
        self.mul(self.mul(x, y), self.inv(x))
    }

    pub fn pow(&self, x: GroupElt, k: i64) -> GroupElt {
        let base = if k < 0 { self.inv(x) } else { x };
        (0..k.unsigned_abs()).fold(self.identity, |acc, _| self.mul(acc, base))
    }

    pub fn element_order(&self, x: GroupElt) -> usize {
        let mut y = x;
        let mut k = 1;
        while y != self.identity {
            y = self.mul(y, x);
            k += 1;
        }
        k
    }

    pub fn label(&self, x: GroupElt) -> &str {
        &self.labels[x]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Generating set used by invariance checks: `g, h` for dihedral groups, adjacent
    /// transpositions for symmetric groups.
    pub fn generators(&self) -> &[GroupElt] {
        &self.generators
    }

    /// Looks an element up by its label; permutation groups also accept any cycle notation.
    pub fn parse_element(&self, s: &str) -> Result<GroupElt> {
        let s = s.trim();
        if let Some(&x) = self.label_index.get(s) {
            return Ok(x);
        }
        if let GroupKind::Symmetric { n } = self.kind {
            let p = parse_cycles(s, n)?;
            return Ok(self.perm_index[&p]);
        }
        Err(Error::validation("unknown-element", format!("no group element labelled {s:?}")))
    }

    /// `g^a h^b` in a dihedral group.
    pub fn dihedral_elt(&self, a: i64, b: i64) -> Result<GroupElt> {
        match self.kind {
            GroupKind::Dihedral { m } => {
                Ok(a.rem_euclid(2) as usize * m as usize + b.rem_euclid(m as i64) as usize)
            }
            _ => Err(Error::validation("wrong-group", "dihedral element requested in a non-dihedral group")),
        }
    }

    /// One-line images (0-based) of a permutation group element.
    pub fn perm(&self, x: GroupElt) -> Option<&[u8]> {
        self.perms.get(x).map(Vec::as_slice)
    }

    pub fn from_perm(&self, p: &[u8]) -> Option<GroupElt> {
        self.perm_index.get(p).copied()
    }

    /// Sign of a permutation; `None` outside symmetric groups.
    pub fn sign(&self, x: GroupElt) -> Option<i64> {
        let p = self.perm(x)?;
        let even = cycle_type(p).iter().filter(|&&l| l % 2 == 0).count() % 2 == 0;
        Some(if even { 1 } else { -1 })
    }

    /// Cycle lengths (including fixed points) in decreasing order.
    pub fn cycle_type(&self, x: GroupElt) -> Option<Vec<usize>> {
        self.perm(x).map(cycle_type)
    }

    /// Order used to list rack elements: lexicographic cycle notation for permutations,
    /// table index otherwise.
    pub fn canonical_cmp(&self, a: GroupElt, b: GroupElt) -> std::cmp::Ordering {
        match self.kind {
            GroupKind::Symmetric { .. } => self.labels[a].cmp(&self.labels[b]),
            GroupKind::Dihedral { .. } => a.cmp(&b),
        }
    }

    pub fn conjugacy_class(&self, x: GroupElt) -> Vec<GroupElt> {
        let mut c: Vec<GroupElt> = self.elements().map(|y| self.conj(y, x)).collect();
        c.sort_unstable_by(|&a, &b| self.canonical_cmp(a, b));
        c.dedup();
        c
    }

    /// All conjugacy classes, ordered by their smallest table index.
    pub fn conjugacy_classes(&self) -> Vec<Vec<GroupElt>> {
        let mut seen = vec![false; self.order];
        let mut out = Vec::new();
        for x in self.elements() {
            if !seen[x] {
                let c = self.conjugacy_class(x);
                for &y in &c {
                    seen[y] = true;
                }
                out.push(c);
            }
        }
        out
    }

    pub fn centralizer(&self, x: GroupElt) -> Vec<GroupElt> {
        self.elements().filter(|&y| self.mul(x, y) == self.mul(y, x)).collect()
    }

    pub fn is_central(&self, x: GroupElt) -> bool {
        self.centralizer(x).len() == self.order
    }

    /// Checks associativity (exhaustively up to `exhaustive_limit` triples, by seeded sampling
    /// beyond), identity and inverses.
    pub fn verify_axioms(&self, exhaustive_limit: usize) -> Result<()> {
        let n = self.order;
        let assoc = |a: usize, b: usize, c: usize| self.mul(self.mul(a, b), c) == self.mul(a, self.mul(b, c));
        let fail = |a: usize, b: usize, c: usize| {
            Error::structural(
                "not-associative",
                format!("({} {}) {} differs from {} ({} {})", self.labels[a], self.labels[b], self.labels[c], self.labels[a], self.labels[b], self.labels[c]),
            )
        };
        if n.saturating_pow(3) <= exhaustive_limit {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        if !assoc(a, b, c) {
                            return Err(fail(a, b, c));
                        }
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(0x9e37_79b9);
            for _ in 0..exhaustive_limit {
                let (a, b, c) = (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n));
                if !assoc(a, b, c) {
                    return Err(fail(a, b, c));
                }
            }
        }
        for x in 0..n {
            if self.mul(x, self.inv(x)) != self.identity || self.mul(self.inv(x), x) != self.identity {
                return Err(Error::structural("no-inverse", format!("bad inverse for {}", self.labels[x])));
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mult = (0..self.order).map(|a| self.table[a * self.order..(a + 1) * self.order].to_vec()).collect();
        serde_json::to_value(GroupJson { kind: self.kind, order: self.order, labels: &self.labels, mult })
            .expect("group serializes")
    }
}

pub(crate) fn next_permutation(p: &mut [u8]) -> bool {
    let Some(i) = (0..p.len().saturating_sub(1)).rev().find(|&i| p[i] < p[i + 1]) else {
        return false;
    };
    let j = (i + 1..p.len()).rev().find(|&j| p[j] > p[i]).expect("successor exists");
    p.swap(i, j);
    p[i + 1..].reverse();
    true
}

fn cycles(p: &[u8]) -> Vec<Vec<u8>> {
    let mut seen = vec![false; p.len()];
    let mut out = Vec::new();
    for s in 0..p.len() {
        if seen[s] {
            continue;
        }
        let mut c = vec![s as u8];
        seen[s] = true;
        let mut x = p[s] as usize;
        while x != s {
            seen[x] = true;
            c.push(x as u8);
            x = p[x] as usize;
        }
        out.push(c);
    }
    out
}

fn cycle_type(p: &[u8]) -> Vec<usize> {
    let mut t: Vec<usize> = cycles(p).iter().map(Vec::len).collect();
    t.sort_unstable_by(|a, b| b.cmp(a));
    t
}

/// Cycle notation with 1-based letters, e.g. `(12)(34)`; the identity is `e`.
fn cycle_label(p: &[u8]) -> String {
    let s: String = cycles(p)
        .into_iter()
        .filter(|c| c.len() > 1)
        .map(|c| format!("({})", c.iter().map(|x| (x + 1).to_string()).collect::<String>()))
        .collect();
    if s.is_empty() {
        "e".to_string()
    } else {
        s
    }
}

/// Parses products of cycles such as `(12)(34)` or `(1 2 3)`, composed right to left.
fn parse_cycles(s: &str, n: usize) -> Result<Vec<u8>> {
    let bad = |why: &str| Error::validation("bad-permutation", format!("{s:?}: {why}"));
    let mut perm: Vec<u8> = (0..n as u8).collect();
    if s == "e" || s == "()" || s == "id" {
        return Ok(perm);
    }
    let mut cycles_found = Vec::new();
    let mut rest = s;
    while !rest.is_empty() {
        rest = rest.trim_start();
        let inner = rest.strip_prefix('(').ok_or_else(|| bad("expected '('"))?;
        let close = inner.find(')').ok_or_else(|| bad("unclosed cycle"))?;
        let letters: Vec<u8> = inner[..close]
            .chars()
            .filter(|c| !c.is_whitespace() && *c != ',')
            .map(|c| c.to_digit(10).map(|d| d as u8).filter(|&d| d >= 1 && (d as usize) <= n).ok_or_else(|| bad("letter out of range")))
            .collect::<Result<_>>()?;
        let mut sorted = letters.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != letters.len() {
            return Err(bad("repeated letter"));
        }
        cycles_found.push(letters);
        rest = &inner[close + 1..];
    }
    for c in cycles_found.iter().rev() {
        let mut cyc: Vec<u8> = (0..n as u8).collect();
        for k in 0..c.len() {
            cyc[(c[k] - 1) as usize] = c[(k + 1) % c.len()] - 1;
        }
        // perm := cyc . perm
        perm = perm.iter().map(|&x| cyc[x as usize]).collect();
    }
    Ok(perm)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dihedral_relations() {
        let d = FinGroup::dihedral(12).unwrap();
        let g = d.dihedral_elt(1, 0).unwrap();
        let h = d.dihedral_elt(0, 1).unwrap();
        assert_eq!(d.mul(d.mul(g, h), g), d.inv(h));
        assert_eq!(d.element_order(h), 12);
        assert_eq!(d.label(d.mul(g, d.pow(h, 3))), "gh^3");
        assert!(d.is_central(d.pow(h, 6)));
        assert_eq!(d.parse_element("gh^3").unwrap(), d.dihedral_elt(1, 3).unwrap());
    }

    #[test]
    fn symmetric_composition_is_right_to_left() {
        let s = FinGroup::symmetric(3).unwrap();
        let a = s.parse_element("(12)").unwrap();
        let b = s.parse_element("(23)").unwrap();
        // (12)(23) sends 1->2? (23) fixes 1, then (12) sends 1 to 2; 2->3->3; 3->2->1.
        assert_eq!(s.label(s.mul(a, b)), "(123)");
        assert_eq!(s.parse_element("(12)(23)").unwrap(), s.mul(a, b));
        assert_eq!(s.labels()[0], "e");
    }

    #[test]
    fn class_sizes_of_s4() {
        let s = FinGroup::symmetric(4).unwrap();
        let mut sizes: Vec<usize> = s.conjugacy_classes().iter().map(Vec::len).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 3, 6, 6, 8]);
        let t = s.parse_element("(12)").unwrap();
        let labels: Vec<&str> = s.conjugacy_class(t).iter().map(|&x| s.label(x)).collect();
        assert_eq!(labels, ["(12)", "(13)", "(14)", "(23)", "(24)", "(34)"]);
        assert_eq!(s.centralizer(t).len(), 4);
        assert_eq!(s.sign(s.parse_element("(1234)").unwrap()), Some(-1));
    }

    #[test]
    fn axioms_hold() {
        FinGroup::dihedral(12).unwrap().verify_axioms(1 << 20).unwrap();
        FinGroup::symmetric(4).unwrap().verify_axioms(1 << 20).unwrap();
        FinGroup::symmetric(5).unwrap().verify_axioms(20_000).unwrap();
    }

    #[test]
    fn rejects_bad_parameters() {
        assert_eq!(FinGroup::symmetric(7).unwrap_err().code(), "bad-group");
        assert_eq!(FinGroup::dihedral(1).unwrap_err().code(), "bad-group");
        let s = FinGroup::symmetric(3).unwrap();
        assert!(s.parse_element("(14)").is_err());
        assert!(s.parse_element("(11)").is_err());
    }
}
