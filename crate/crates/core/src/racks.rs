//! Conjugation racks inside symmetric groups, rack 2-cocycles and their extensions to
//! group 1-cocycles.

use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::groups::{FinGroup, GroupElt, GroupKind};
use crate::scalars::{CycField, CycScalar};

/// A conjugacy class viewed as a rack with `i ▷ j = i j i^-1`.
#[derive(Clone, Debug)]
pub struct Rack {
    group: Arc<FinGroup>,
    elements: Vec<GroupElt>,
    op: Vec<Vec<usize>>,
}

impl Rack {
    /// The conjugacy class of `rep`, listed in the group's canonical order.
    pub fn conjugation(group: Arc<FinGroup>, rep: GroupElt) -> Rack {
        let elements = group.conjugacy_class(rep);
        let pos = |x: GroupElt| elements.iter().position(|&y| y == x).expect("class is closed under conjugation");
        let op = elements.iter().map(|&a| elements.iter().map(|&b| pos(group.conj(a, b))).collect()).collect();
        Rack { group, elements, op }
    }

    /// Transpositions of S_n, listed `(12), (13), ..., (n-1 n)`.
    pub fn transpositions(group: Arc<FinGroup>) -> Result<Rack> {
        match group.kind() {
            GroupKind::Symmetric { .. } => {
                let t = group.parse_element("(12)")?;
                Ok(Rack::conjugation(group, t))
            }
            _ => Err(Error::validation("wrong-group", "transposition racks live in symmetric groups")),
        }
    }

    /// The 4-cycles of S_4.
    pub fn four_cycles(group: Arc<FinGroup>) -> Result<Rack> {
        match group.kind() {
            GroupKind::Symmetric { n: 4 } => {
                let t = group.parse_element("(1234)")?;
                Ok(Rack::conjugation(group, t))
            }
            _ => Err(Error::validation("wrong-group", "the 4-cycle rack needs S_4")),
        }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn group(&self) -> &Arc<FinGroup> {
        &self.group
    }

    /// The group element underlying rack element `i`.
    pub fn element(&self, i: usize) -> GroupElt {
        self.elements[i]
    }

    pub fn elements(&self) -> &[GroupElt] {
        &self.elements
    }

    pub fn label(&self, i: usize) -> &str {
        self.group.label(self.elements[i])
    }

    pub fn index_of(&self, x: GroupElt) -> Option<usize> {
        self.elements.iter().position(|&y| y == x)
    }

    /// `i ▷ j`.
    #[inline]
    pub fn op(&self, i: usize, j: usize) -> usize {
        self.op[i][j]
    }

    /// Conjugation action of an arbitrary group element on rack indices.
    pub fn act(&self, g: GroupElt, j: usize) -> usize {
        self.index_of(self.group.conj(g, self.elements[j])).expect("class is closed under conjugation")
    }

    /// Self-distributivity and bijectivity of every left translation.
    pub fn verify_axioms(&self) -> Result<()> {
        let n = self.len();
        for i in 0..n {
            let mut seen = vec![false; n];
            for j in 0..n {
                seen[self.op(i, j)] = true;
                for k in 0..n {
                    if self.op(i, self.op(j, k)) != self.op(self.op(i, j), self.op(i, k)) {
                        return Err(Error::structural(
                            "not-self-distributive",
                            format!("fails at ({}, {}, {})", self.label(i), self.label(j), self.label(k)),
                        ));
                    }
                }
            }
            if seen.contains(&false) {
                return Err(Error::structural("not-bijective", format!("left translation by {} is not onto", self.label(i))));
            }
        }
        Ok(())
    }

    /// Orbits of the diagonal conjugation action on ordered pairs, in order of first pair.
    pub fn pair_orbits(&self) -> Vec<PairOrbit> {
        let n = self.len();
        let mut orbit_of = vec![usize::MAX; n * n];
        let mut out: Vec<PairOrbit> = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if orbit_of[a * n + b] != usize::MAX {
                    continue;
                }
                let id = out.len();
                let mut pairs = Vec::new();
                for g in self.group.elements() {
                    let p = (self.act(g, a), self.act(g, b));
                    if orbit_of[p.0 * n + p.1] == usize::MAX {
                        orbit_of[p.0 * n + p.1] = id;
                        pairs.push(p);
                    }
                }
                pairs.sort_unstable();
                let product = self.group.mul(self.elements[a], self.elements[b]);
                let product_label = cycle_type_label(&self.group, product);
                out.push(PairOrbit { pairs, product_label });
            }
        }
        out
    }
}

/// An orbit of ordered rack pairs, tagged with the cycle type of the product `τμ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairOrbit {
    pub pairs: Vec<(usize, usize)>,
    pub product_label: String,
}

/// Canonical label of a cycle type, e.g. `id`, `(123)`, `(12)(34)`.
pub fn cycle_type_label(group: &FinGroup, x: GroupElt) -> String {
    let Some(ty) = group.cycle_type(x) else {
        return group.label(x).to_string();
    };
    let mut next = 1;
    let mut s = String::new();
    for len in ty.into_iter().filter(|&l| l > 1) {
        s.push('(');
        for _ in 0..len {
            s.push_str(&next.to_string());
            next += 1;
        }
        s.push(')');
    }
    if s.is_empty() {
        "id".to_string()
    } else {
        s
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CocycleKind {
    /// The constant cocycle -1.
    MinusOne,
    /// The sign-of-order cocycle on transpositions.
    Chi,
    Custom,
}

/// A rack 2-cocycle `q_{ij}`, so that `c(x_i ⊗ x_j) = q_{ij} x_{i▷j} ⊗ x_i`.
#[derive(Clone, Debug)]
pub struct RackCocycle {
    rack: Arc<Rack>,
    q: Vec<Vec<CycScalar>>,
    kind: CocycleKind,
}

impl RackCocycle {
    pub fn minus_one(rack: Arc<Rack>) -> RackCocycle {
        let f = rational_field();
        let q = vec![vec![f.from_int(-1); rack.len()]; rack.len()];
        RackCocycle { rack, q, kind: CocycleKind::MinusOne }
    }

    /// `q_{ij} = χ_j(i)` with `χ_{(ab)}(θ) = +1` iff `θ(a) < θ(b)` (for `a < b`).
    pub fn chi(rack: Arc<Rack>) -> Result<RackCocycle> {
        let f = rational_field();
        let n = rack.len();
        let mut q = vec![vec![f.zero(); n]; n];
        for i in 0..n {
            for j in 0..n {
                q[i][j] = f.from_int(chi_value(&rack, j, rack.element(i))?);
            }
        }
        Ok(RackCocycle { rack, q, kind: CocycleKind::Chi })
    }

    pub fn custom(rack: Arc<Rack>, q: Vec<Vec<CycScalar>>) -> Result<RackCocycle> {
        if q.len() != rack.len() || q.iter().any(|r| r.len() != rack.len()) {
            return Err(Error::validation("bad-cocycle-shape", "cocycle table must be square of rack size"));
        }
        let c = RackCocycle { rack, q, kind: CocycleKind::Custom };
        c.verify()?;
        Ok(c)
    }

    pub fn rack(&self) -> &Arc<Rack> {
        &self.rack
    }

    pub fn kind(&self) -> CocycleKind {
        self.kind
    }

    pub fn q(&self, i: usize, j: usize) -> &CycScalar {
        &self.q[i][j]
    }

    /// Nonvanishing and `q_{i,j▷k} q_{j,k} = q_{i▷j,i▷k} q_{i,k}` on all triples.
    pub fn verify(&self) -> Result<()> {
        let r = &self.rack;
        let n = r.len();
        for i in 0..n {
            for j in 0..n {
                if self.q[i][j].is_zero() {
                    return Err(Error::structural("cocycle-vanishes", format!("q({}, {}) = 0", r.label(i), r.label(j))));
                }
                for k in 0..n {
                    let lhs = &self.q[i][r.op(j, k)] * &self.q[j][k];
                    let rhs = &self.q[r.op(i, j)][r.op(i, k)] * &self.q[i][k];
                    if lhs != rhs {
                        return Err(Error::structural(
                            "not-a-rack-cocycle",
                            format!("cocycle identity fails at ({}, {}, {})", r.label(i), r.label(j), r.label(k)),
                        ));
                    }
                }
            }
        }
        Ok(())
    }

    /// The group 1-cocycle `χ_x(θ)` extending this rack cocycle, verified on all triples.
    pub fn one_cocycle_extension(&self) -> Result<OneCocycle> {
        let r = &self.rack;
        let g = r.group();
        let f = rational_field();
        let mut table = vec![Vec::with_capacity(g.order()); r.len()];
        for (x, row) in table.iter_mut().enumerate() {
            for theta in g.elements() {
                let v = match self.kind {
                    CocycleKind::MinusOne => g
                        .sign(theta)
                        .ok_or_else(|| Error::validation("no-extension", "sign extension needs a permutation group"))?,
                    CocycleKind::Chi => chi_value(r, x, theta)?,
                    CocycleKind::Custom => {
                        return Err(Error::validation("no-extension", "no extension rule for a custom cocycle"))
                    }
                };
                row.push(f.from_int(v));
            }
        }
        let ext = OneCocycle { rack: r.clone(), table };
        ext.verify(self)?;
        Ok(ext)
    }
}

fn rational_field() -> &'static CycField {
    CycField::get(1).expect("conductor 1")
}

fn chi_value(rack: &Rack, x: usize, theta: GroupElt) -> Result<i64> {
    let g = rack.group();
    let not_transposition =
        || Error::validation("chi-needs-transpositions", "the chi cocycle is defined on transpositions only");
    let p = g.perm(rack.element(x)).ok_or_else(not_transposition)?;
    let moved: Vec<usize> = (0..p.len()).filter(|&i| p[i] as usize != i).collect();
    let [a, b] = moved[..] else {
        return Err(not_transposition());
    };
    let t = g.perm(theta).expect("same group");
    Ok(if t[a] < t[b] { 1 } else { -1 })
}

/// A map `χ: X × G → k^×` with `χ_x(στ) = χ_x(τ) χ_{τ▷x}(σ)`.
#[derive(Clone, Debug)]
pub struct OneCocycle {
    rack: Arc<Rack>,
    table: Vec<Vec<CycScalar>>,
}

impl OneCocycle {
    pub fn value(&self, x: usize, theta: GroupElt) -> &CycScalar {
        &self.table[x][theta]
    }

    fn verify(&self, q: &RackCocycle) -> Result<()> {
        let r = &self.rack;
        let g = r.group();
        for x in 0..r.len() {
            for s in g.elements() {
                for t in g.elements() {
                    let lhs = &self.table[x][g.mul(s, t)];
                    let rhs = &self.table[x][t] * &self.table[r.act(t, x)][s];
                    if *lhs != rhs {
                        return Err(Error::structural(
                            "not-a-one-cocycle",
                            format!("fails at x = {}, σ = {}, τ = {}", r.label(x), g.label(s), g.label(t)),
                        ));
                    }
                }
            }
            for y in 0..r.len() {
                if self.table[x][r.element(y)] != *q.q(y, x) {
                    return Err(Error::structural(
                        "extension-mismatch",
                        format!("χ_{}({}) disagrees with the rack cocycle", r.label(x), r.label(y)),
                    ));
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: usize) -> Arc<FinGroup> {
        Arc::new(FinGroup::symmetric(n).unwrap())
    }

    #[test]
    fn transposition_rack_listing_and_axioms() {
        let r = Rack::transpositions(s(4)).unwrap();
        let labels: Vec<&str> = (0..r.len()).map(|i| r.label(i)).collect();
        assert_eq!(labels, ["(12)", "(13)", "(14)", "(23)", "(24)", "(34)"]);
        r.verify_axioms().unwrap();
        // (12) ▷ (23) = (13)
        assert_eq!(r.op(0, 3), 1);
    }

    #[test]
    fn four_cycle_rack_listing() {
        let r = Rack::four_cycles(s(4)).unwrap();
        let labels: Vec<&str> = (0..r.len()).map(|i| r.label(i)).collect();
        assert_eq!(labels, ["(1234)", "(1243)", "(1324)", "(1342)", "(1423)", "(1432)"]);
        r.verify_axioms().unwrap();
    }

    #[test]
    fn cocycles_extend() {
        for n in 3..=5 {
            let r = Arc::new(Rack::transpositions(s(n)).unwrap());
            for c in [RackCocycle::minus_one(r.clone()), RackCocycle::chi(r.clone()).unwrap()] {
                c.verify().unwrap();
                c.one_cocycle_extension().unwrap();
            }
        }
        let r4 = Arc::new(Rack::four_cycles(s(4)).unwrap());
        RackCocycle::minus_one(r4.clone()).one_cocycle_extension().unwrap();
        assert!(RackCocycle::chi(r4).is_err());
    }

    #[test]
    fn pair_orbits_of_transpositions() {
        let r = Rack::transpositions(s(4)).unwrap();
        let orbits = r.pair_orbits();
        let tags: Vec<(&str, usize)> = orbits.iter().map(|o| (o.product_label.as_str(), o.pairs.len())).collect();
        assert_eq!(tags, [("id", 6), ("(123)", 24), ("(12)(34)", 6)]);
        let r = Rack::four_cycles(s(4)).unwrap();
        let tags: Vec<(String, usize)> = r.pair_orbits().into_iter().map(|o| (o.product_label, o.pairs.len())).collect();
        assert_eq!(tags.len(), 3);
        assert_eq!(tags.iter().map(|t| t.1).sum::<usize>(), 36);
    }
}
