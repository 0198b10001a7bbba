//! Based Yetter-Drinfeld modules over group algebras with monomial actions, and their braidings.
//!
//! Every module keeps both the action matrices and the monomial data `g·x_i = χ_i(g) x_{σ(g)(i)}`;
//! the two are cross-checked when the module is built.

use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::groups::{FinGroup, GroupElt, GroupKind};
use crate::linalg::SparseVec;
use crate::racks::RackCocycle;
use crate::scalars::{CycField, CycScalar};

/// One two-dimensional block of a dihedral module, in basis order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum DihedralSummand {
    /// `M_(i,k)`: `h` acts by `diag(w^k, w^-k)`, coaction `h^i`, `h^-i`.
    Ik { i: u32, k: u32 },
    /// `M_l`: `h` acts by `diag(w^l, w^-l)`, coaction `h^n` on both vectors.
    Ell { l: u32 },
}

/// How a module was built; downstream code uses this to index coefficient families.
#[derive(Clone, Debug)]
pub enum ModuleShape {
    Dihedral { m: u32, summands: Vec<DihedralSummand> },
    Rack { cocycle: Arc<RackCocycle> },
}

#[derive(Clone, Debug)]
pub struct YDModule {
    group: Arc<FinGroup>,
    field: &'static CycField,
    labels: Vec<String>,
    /// `action[g][j]`: column `j` of the matrix of `g`.
    action: Vec<Vec<SparseVec>>,
    perm: Vec<Vec<usize>>,
    chars: Vec<Vec<CycScalar>>,
    coaction: Vec<GroupElt>,
    shape: ModuleShape,
}

fn dihedral_m(group: &FinGroup) -> Result<u32> {
    match group.kind() {
        GroupKind::Dihedral { m } if m % 2 == 0 => Ok(m),
        GroupKind::Dihedral { m } => {
            Err(Error::validation("odd-dihedral", format!("dihedral modules need m even, got m = {m}")))
        }
        _ => Err(Error::validation("wrong-group", "dihedral module requested over a non-dihedral group")),
    }
}

impl YDModule {
    /// `M_l` over `D_m`: `g` swaps, `h = diag(w^l, w^-l)`, both vectors of degree `h^n`.
    pub fn m_ell(group: Arc<FinGroup>, l: u32) -> Result<YDModule> {
        let m = dihedral_m(&group)?;
        let n = m / 2;
        if l % 2 == 0 || l == 0 || l >= n {
            return Err(Error::validation("invalid-L", format!("l must be odd with 1 <= l < {n}, got {l}")));
        }
        let summand = DihedralSummand::Ell { l };
        Self::dihedral_block(group, m, summand)
    }

    /// `M_(i,k)` over `D_m`: `g` swaps, `h = diag(w^k, w^-k)`, coaction `h^i`, `h^-i`.
    pub fn m_ik(group: Arc<FinGroup>, i: u32, k: u32) -> Result<YDModule> {
        let m = dihedral_m(&group)?;
        let n = m / 2;
        if i == 0 || i >= n || k >= m {
            return Err(Error::validation(
                "invalid-ik",
                format!("need 1 <= i < {n} and 0 <= k < {m}, got (i, k) = ({i}, {k})"),
            ));
        }
        Self::dihedral_block(group, m, DihedralSummand::Ik { i, k })
    }

    fn dihedral_block(group: Arc<FinGroup>, m: u32, summand: DihedralSummand) -> Result<YDModule> {
        let field = CycField::get(m)?;
        let n = (m / 2) as i64;
        let (hexp, coaction, labels) = match summand {
            DihedralSummand::Ell { l } => (
                l as i64,
                [group.dihedral_elt(0, n)?, group.dihedral_elt(0, n)?],
                [format!("x1[{l}]"), format!("x2[{l}]")],
            ),
            DihedralSummand::Ik { i, k } => (
                k as i64,
                [group.dihedral_elt(0, i as i64)?, group.dihedral_elt(0, -(i as i64))?],
                [format!("y1[{i},{k}]"), format!("y2[{i},{k}]")],
            ),
        };
        // Matrices of g and h; the action of g^a h^b is the matrix product.
        let zero = field.zero();
        let one = field.one();
        let mat_g = [[zero.clone(), one.clone()], [one.clone(), zero.clone()]];
        let mat_h = [[field.root_of_unity(hexp), zero.clone()], [zero.clone(), field.root_of_unity(-hexp)]];
        let mul2 = |a: &[[CycScalar; 2]; 2], b: &[[CycScalar; 2]; 2]| {
            let e = |r: usize, c: usize| &(&a[r][0] * &b[0][c]) + &(&a[r][1] * &b[1][c]);
            [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]]
        };
        let ident = [[one.clone(), zero.clone()], [zero.clone(), one.clone()]];
        let mut action = vec![Vec::new(); group.order()];
        for a in 0..2i64 {
            let mut hb = ident.clone();
            for b in 0..m as i64 {
                let ga = if a == 1 { mat_g.clone() } else { ident.clone() };
                let mat = mul2(&ga, &hb);
                let cols = (0..2).map(|c| SparseVec::from_terms((0..2).map(|r| (r, mat[r][c].clone())))).collect();
                action[group.dihedral_elt(a, b)?] = cols;
                hb = mul2(&hb, &mat_h);
            }
        }
        let shape = ModuleShape::Dihedral { m, summands: vec![summand] };
        Self::from_action(group, field, labels.to_vec(), action, coaction.to_vec(), shape)
    }

    /// `M_I` for a validated index set.
    pub fn m_i(group: Arc<FinGroup>, data: &IndexData) -> Result<YDModule> {
        let mut parts = Vec::new();
        for &(i, k) in &data.pairs {
            parts.push(Self::m_ik(group.clone(), i, k)?);
        }
        for &l in &data.ells {
            parts.push(Self::m_ell(group.clone(), l)?);
        }
        if parts.is_empty() {
            return Err(Error::validation("empty-index-data", "need at least one summand"));
        }
        Self::direct_sum(&parts)
    }

    /// Block-diagonal sum, summands in the given order.
    pub fn direct_sum(parts: &[YDModule]) -> Result<YDModule> {
        let first = parts.first().ok_or_else(|| Error::validation("empty-sum", "direct sum of no modules"))?;
        let group = first.group.clone();
        let field = first.field;
        let mut labels = Vec::new();
        let mut coaction = Vec::new();
        let mut action: Vec<Vec<SparseVec>> = vec![Vec::new(); group.order()];
        let mut summands = Vec::new();
        let mut dihedral = true;
        let mut offset = 0;
        for p in parts {
            if !Arc::ptr_eq(&p.group, &group) && p.group.to_json() != group.to_json() {
                return Err(Error::validation("group-mismatch", "summands live over different groups"));
            }
            if !std::ptr::eq(p.field, field) {
                return Err(Error::validation("group-mismatch", "summands use different scalar fields"));
            }
            labels.extend(p.labels.iter().cloned());
            coaction.extend(p.coaction.iter().copied());
            for g in group.elements() {
                for col in &p.action[g] {
                    action[g].push(SparseVec::from_terms(col.iter().map(|(i, c)| (i + offset, c.clone()))));
                }
            }
            match &p.shape {
                ModuleShape::Dihedral { summands: s, .. } => summands.extend(s.iter().copied()),
                _ => dihedral = false,
            }
            offset += p.dim();
        }
        let shape = match (&first.shape, dihedral) {
            (ModuleShape::Dihedral { m, .. }, true) => ModuleShape::Dihedral { m: *m, summands },
            _ if parts.len() == 1 => first.shape.clone(),
            _ => return Err(Error::validation("unsupported-sum", "only dihedral blocks can be summed")),
        };
        Self::from_action(group, field, labels, action, coaction, shape)
    }

    /// `kX` with `δ(x_τ) = τ ⊗ x_τ` and `θ·x_τ = χ_τ(θ) x_{θ▷τ}`.
    pub fn rack_module(cocycle: Arc<RackCocycle>) -> Result<YDModule> {
        let ext = cocycle.one_cocycle_extension()?;
        let rack = cocycle.rack().clone();
        let group = rack.group().clone();
        let field = CycField::get(1)?;
        let n = rack.len();
        let mut perm = Vec::with_capacity(group.order());
        let mut chars = Vec::with_capacity(group.order());
        for g in group.elements() {
            perm.push((0..n).map(|t| rack.act(g, t)).collect());
            chars.push((0..n).map(|t| ext.value(t, g).clone()).collect());
        }
        let labels = (0..n).map(|t| format!("x{}", rack.label(t))).collect();
        let coaction = rack.elements().to_vec();
        Self::from_monomial(group, field, labels, perm, chars, coaction, ModuleShape::Rack { cocycle })
    }

    fn from_monomial(
        group: Arc<FinGroup>,
        field: &'static CycField,
        labels: Vec<String>,
        perm: Vec<Vec<usize>>,
        chars: Vec<Vec<CycScalar>>,
        coaction: Vec<GroupElt>,
        shape: ModuleShape,
    ) -> Result<YDModule> {
        let action = (0..group.order())
            .map(|g| (0..labels.len()).map(|i| SparseVec::singleton(perm[g][i], chars[g][i].clone())).collect())
            .collect();
        let module = YDModule { group, field, labels, action, perm, chars, coaction, shape };
        module.validate()?;
        Ok(module)
    }

    fn from_action(
        group: Arc<FinGroup>,
        field: &'static CycField,
        labels: Vec<String>,
        action: Vec<Vec<SparseVec>>,
        coaction: Vec<GroupElt>,
        shape: ModuleShape,
    ) -> Result<YDModule> {
        let mut perm = Vec::with_capacity(group.order());
        let mut chars = Vec::with_capacity(group.order());
        for (g, cols) in action.iter().enumerate() {
            let mut p = Vec::with_capacity(cols.len());
            let mut c = Vec::with_capacity(cols.len());
            for col in cols {
                match col.entries() {
                    [(i, x)] => {
                        p.push(*i);
                        c.push(x.clone());
                    }
                    _ => {
                        return Err(Error::structural(
                            "not-monomial",
                            format!("action of {} is not monomial", group.label(g)),
                        ))
                    }
                }
            }
            perm.push(p);
            chars.push(c);
        }
        let module = YDModule { group, field, labels, action, perm, chars, coaction, shape };
        module.validate()?;
        Ok(module)
    }

    /// Representation property, monomial/matrix consistency and YD compatibility, exhaustively.
    pub fn validate(&self) -> Result<()> {
        let g = &self.group;
        let d = self.dim();
        for a in g.elements() {
            for i in 0..d {
                let expected = SparseVec::singleton(self.perm[a][i], self.chars[a][i].clone());
                if self.action[a][i] != expected {
                    return Err(Error::structural("monomial-mismatch", format!("matrix and monomial data disagree at {}", g.label(a))));
                }
                let target = g.mul(g.mul(a, self.coaction[i]), g.inv(a));
                if self.coaction[self.perm[a][i]] != target {
                    return Err(Error::structural(
                        "not-yd",
                        format!("δ({}·{}) is not {}", g.label(a), self.labels[i], g.label(target)),
                    ));
                }
            }
            for b in g.elements() {
                let ab = g.mul(a, b);
                for i in 0..d {
                    let (j, c1) = self.act(b, i);
                    let (k, c2) = self.act(a, j);
                    let (k2, c3) = self.act(ab, i);
                    if k != k2 || &(c1 * c2) != c3 {
                        return Err(Error::structural(
                            "not-a-representation",
                            format!("A({})A({}) != A({})", g.label(a), g.label(b), g.label(ab)),
                        ));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn group(&self) -> &Arc<FinGroup> {
        &self.group
    }

    pub fn field(&self) -> &'static CycField {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn shape(&self) -> &ModuleShape {
        &self.shape
    }

    /// Coaction degree `g_i` of the basis vector `x_i`.
    pub fn degree(&self, i: usize) -> GroupElt {
        self.coaction[i]
    }

    pub fn coaction(&self) -> &[GroupElt] {
        &self.coaction
    }

    /// `g·x_i = c x_j`, returned as `(j, c)`.
    #[inline]
    pub fn act(&self, g: GroupElt, i: usize) -> (usize, &CycScalar) {
        (self.perm[g][i], &self.chars[g][i])
    }

    pub fn action_matrix(&self, g: GroupElt) -> &[SparseVec] {
        &self.action[g]
    }

    /// `c(x_i ⊗ x_j) = g_i·x_j ⊗ x_i`, returned as `(a, b, coefficient)` for `x_a ⊗ x_b`.
    #[inline]
    pub fn braid(&self, i: usize, j: usize) -> (usize, usize, &CycScalar) {
        let (k, c) = self.act(self.coaction[i], j);
        (k, i, c)
    }

    /// Inverse braiding `c^-1(x_a ⊗ x_b) = x_b ⊗ g_b^-1·x_a`.
    pub fn braid_inverse(&self, a: usize, b: usize) -> (usize, usize, CycScalar) {
        let (j, c) = self.act(self.group.inv(self.coaction[b]), a);
        (b, j, c.clone())
    }

    /// Columns of the braiding on `V ⊗ V`, index `a*dim + b` for `x_a ⊗ x_b`.
    pub fn braiding_matrix(&self) -> Vec<SparseVec> {
        let d = self.dim();
        (0..d * d)
            .map(|ij| {
                let (a, b, c) = self.braid(ij / d, ij % d);
                SparseVec::singleton(a * d + b, c.clone())
            })
            .collect()
    }

    /// Applies `c` at tensor positions `(p, p+1)` of a basis word.
    pub fn braid_word(&self, word: &mut [usize], p: usize) -> CycScalar {
        let (a, b, c) = self.braid(word[p], word[p + 1]);
        word[p] = a;
        word[p + 1] = b;
        c.clone()
    }

    /// Braid equation on all of `V^{⊗3}`.
    pub fn verify_braid_equation(&self) -> Result<()> {
        let d = self.dim();
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    let mut w1 = [i, j, k];
                    let c1 = self.braid_word(&mut w1, 0) * self.braid_word(&mut w1, 1) * self.braid_word(&mut w1, 0);
                    let mut w2 = [i, j, k];
                    let c2 = self.braid_word(&mut w2, 1) * self.braid_word(&mut w2, 0) * self.braid_word(&mut w2, 1);
                    if w1 != w2 || c1 != c2 {
                        return Err(Error::structural(
                            "braid-equation",
                            format!("braid equation fails on {}⊗{}⊗{}", self.labels[i], self.labels[j], self.labels[k]),
                        ));
                    }
                }
            }
        }
        Ok(())
    }

    /// `c² = id` on `V ⊗ V`.
    pub fn is_symmetric_braiding(&self) -> bool {
        let d = self.dim();
        (0..d).all(|i| {
            (0..d).all(|j| {
                let (a, b, c1) = self.braid(i, j);
                let (a2, b2, c2) = self.braid(a, b);
                (a2, b2) == (i, j) && (c1 * c2).is_one()
            })
        })
    }

    /// `c = -flip`.
    pub fn is_minus_flip(&self) -> bool {
        let d = self.dim();
        let minus_one = self.field.from_int(-1);
        (0..d).all(|i| {
            (0..d).all(|j| {
                let (a, b, c) = self.braid(i, j);
                (a, b) == (j, i) && *c == minus_one
            })
        })
    }

    pub fn to_json(&self) -> serde_json::Value {
        let action: Vec<Vec<(usize, usize, &CycScalar)>> = self
            .action
            .iter()
            .map(|cols| cols.iter().enumerate().flat_map(|(j, col)| col.iter().map(move |(i, c)| (i, j, c))).collect())
            .collect();
        let coaction: Vec<&str> = self.coaction.iter().map(|&g| self.group.label(g)).collect();
        serde_json::json!({
            "dim": self.dim(),
            "labels": self.labels,
            "action": action,
            "coaction": coaction,
        })
    }
}

/// Dihedral index data `(I, L)` with its membership conditions checked.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IndexData {
    pub m: u32,
    pub pairs: Vec<(u32, u32)>,
    pub ells: Vec<u32>,
}

/// `w^e = -1` for a primitive m-th root of unity `w`.
fn is_minus_one(m: u32, e: i64) -> bool {
    e.rem_euclid(m as i64) == (m / 2) as i64
}

fn is_one(m: u32, e: i64) -> bool {
    e.rem_euclid(m as i64) == 0
}

/// Pairs `(i, k)` with `1 <= i < m/2`, `1 <= k < m` and `w^{ik} = -1`.
pub fn j_set(m: u32) -> Vec<(u32, u32)> {
    let n = m / 2;
    (1..n).flat_map(|i| (1..m).map(move |k| (i, k))).filter(|&(i, k)| is_minus_one(m, (i * k) as i64)).collect()
}

impl IndexData {
    /// Validates `I` against J and the pairwise condition, `L` against oddness and range, and,
    /// when both are present, the mixed condition.
    pub fn new(m: u32, pairs: Vec<(u32, u32)>, ells: Vec<u32>) -> Result<IndexData> {
        if m < 4 || m % 2 != 0 {
            return Err(Error::validation("bad-m", format!("m must be even and at least 4, got {m}")));
        }
        let n = m / 2;
        for &(i, k) in &pairs {
            if !(1..n).contains(&i) || !(1..m).contains(&k) || !is_minus_one(m, (i * k) as i64) {
                return Err(Error::validation(
                    "not-in-J",
                    format!("({i},{k}) is not in J: need 1 <= i < {n}, 1 <= k < {m} and w^(ik) = -1"),
                ));
            }
        }
        for (s, &(is, ks)) in pairs.iter().enumerate() {
            for &(it, kt) in &pairs[s + 1..] {
                if !is_one(m, (is * kt + it * ks) as i64) {
                    return Err(Error::validation(
                        "not-in-I",
                        format!("pairs ({is},{ks}) and ({it},{kt}) violate w^(i_s k_t + i_t k_s) = 1"),
                    ));
                }
            }
        }
        for &l in &ells {
            if l % 2 == 0 || !(1..n).contains(&l) {
                return Err(Error::validation("invalid-L", format!("l = {l} must be odd with 1 <= l < {n}")));
            }
        }
        if !pairs.is_empty() && !ells.is_empty() {
            for &(i, k) in &pairs {
                if k % 2 == 0 {
                    return Err(Error::validation("not-in-K", format!("k = {k} in ({i},{k}) must be odd when L is present")));
                }
                for &l in &ells {
                    if !is_minus_one(m, (i * l) as i64) {
                        return Err(Error::validation("not-in-K", format!("w^(i l) = -1 fails for i = {i}, l = {l}")));
                    }
                }
            }
        }
        if pairs.is_empty() && ells.is_empty() {
            return Err(Error::validation("empty-index-data", "need at least one pair or one l"));
        }
        Ok(IndexData { m, pairs, ells })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d12() -> Arc<FinGroup> {
        Arc::new(FinGroup::dihedral(12).unwrap())
    }

    #[test]
    fn j_set_for_twelve() {
        assert_eq!(j_set(12), vec![(1, 6), (2, 3), (2, 9), (3, 2), (3, 6), (3, 10), (5, 6)]);
    }

    #[test]
    fn index_validation_codes() {
        assert!(IndexData::new(12, vec![(1, 6), (5, 6)], vec![]).is_ok());
        assert!(IndexData::new(12, vec![(2, 3), (2, 9)], vec![]).is_ok());
        assert!(IndexData::new(12, vec![(2, 3)], vec![3]).is_ok());
        assert_eq!(IndexData::new(12, vec![(1, 5)], vec![]).unwrap_err().code(), "not-in-J");
        assert_eq!(IndexData::new(12, vec![(1, 6), (2, 3)], vec![]).unwrap_err().code(), "not-in-I");
        assert_eq!(IndexData::new(12, vec![], vec![2]).unwrap_err().code(), "invalid-L");
        assert_eq!(IndexData::new(12, vec![(1, 6)], vec![3]).unwrap_err().code(), "not-in-K");
    }

    #[test]
    fn dihedral_module_data() {
        let g = d12();
        let m = YDModule::m_ell(g.clone(), 1).unwrap();
        let h = g.dihedral_elt(0, 1).unwrap();
        let (j, c) = m.act(h, 0);
        assert_eq!((j, c.clone()), (0, CycScalar::root_of_unity(12, 1).unwrap()));
        assert_eq!(m.degree(0), g.dihedral_elt(0, 6).unwrap());
        assert!(m.is_minus_flip());
        assert!(m.is_symmetric_braiding());
        m.verify_braid_equation().unwrap();
        let y = YDModule::m_ik(g.clone(), 1, 6).unwrap();
        assert_eq!(y.degree(1), g.dihedral_elt(0, -1).unwrap());
        assert_eq!(y.act(h, 1).1, &CycScalar::root_of_unity(12, -6).unwrap());
        assert!(YDModule::m_ell(g, 2).is_err());
    }

    #[test]
    fn sums_keep_summand_order() {
        let g = d12();
        let data = IndexData::new(12, vec![(2, 3)], vec![3]).unwrap();
        let m = YDModule::m_i(g, &data).unwrap();
        assert_eq!(m.labels(), ["y1[2,3]", "y2[2,3]", "x1[3]", "x2[3]"]);
        assert!(m.is_minus_flip());
        m.verify_braid_equation().unwrap();
    }

    #[test]
    fn braid_inverse_undoes_braid() {
        let g = Arc::new(FinGroup::symmetric(3).unwrap());
        let r = Arc::new(crate::racks::Rack::transpositions(g).unwrap());
        let m = YDModule::rack_module(Arc::new(RackCocycle::chi(r).unwrap())).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                let (a, b, c) = m.braid(i, j);
                let (x, y, d) = m.braid_inverse(a, b);
                assert_eq!((x, y), (i, j));
                assert!((c * &d).is_one());
            }
        }
    }
}
