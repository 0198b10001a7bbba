//! Bilinear forms on `V`, their liftings to Hochschild 2-cocycles on `A = B(V) # kΓ`, the
//! convolution exponential, and the checks that decide whether `e^η̃` is a multiplicative
//! 2-cocycle.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use rand::Rng;
use rayon::prelude::*;
use rustc_hash::FxHashMap;
use serde::Serialize;

use crate::bosonization::BosonHopf;
use crate::error::{Error, Result};
use crate::groups::GroupElt;
use crate::linalg::{rref, Accumulator, SparseVec};
use crate::racks::CocycleKind;
use crate::report::{CheckEntry, Report, Witness};
use crate::scalars::{CycField, CycScalar};
use crate::yetter_drinfeld::{DihedralSummand, ModuleShape, YDModule};

/// A bilinear form `η : V ⊗ V -> k`, stored as its matrix `η(x_i, x_j)`.
#[derive(Clone, Debug)]
pub struct BilinearForm {
    module: Arc<YDModule>,
    matrix: Vec<Vec<CycScalar>>,
}

impl PartialEq for BilinearForm {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.module, &other.module) && self.matrix == other.matrix
    }
}

impl BilinearForm {
    pub fn zero(module: Arc<YDModule>) -> Self {
        let d = module.dim();
        let z = module.field().zero();
        BilinearForm { module, matrix: vec![vec![z; d]; d] }
    }

    pub fn from_matrix(module: Arc<YDModule>, matrix: Vec<Vec<CycScalar>>) -> Result<Self> {
        let d = module.dim();
        if matrix.len() != d || matrix.iter().any(|r| r.len() != d) {
            return Err(Error::validation("bad-form-shape", format!("bilinear form must be {d} x {d}")));
        }
        Ok(BilinearForm { module, matrix })
    }

    /// From a vector indexed by `i * dim + j`.
    pub fn from_vector(module: Arc<YDModule>, v: &SparseVec) -> Self {
        let mut f = Self::zero(module);
        let d = f.dim();
        for (k, c) in v.iter() {
            f.matrix[k / d][k % d] = c.clone();
        }
        f
    }

    pub fn to_vector(&self) -> SparseVec {
        let d = self.dim();
        SparseVec::from_terms((0..d * d).map(|k| (k, self.matrix[k / d][k % d].clone())))
    }

    pub fn module(&self) -> &Arc<YDModule> {
        &self.module
    }

    pub fn dim(&self) -> usize {
        self.module.dim()
    }

    pub fn get(&self, i: usize, j: usize) -> &CycScalar {
        &self.matrix[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, c: CycScalar) {
        self.matrix[i][j] = c;
    }

    pub fn matrix(&self) -> &[Vec<CycScalar>] {
        &self.matrix
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.iter().flatten().all(CycScalar::is_zero)
    }

    pub fn scale(&self, c: &CycScalar) -> Self {
        let matrix = self.matrix.iter().map(|r| r.iter().map(|x| x * c).collect()).collect();
        BilinearForm { module: self.module.clone(), matrix }
    }

    /// `η^g(x_i, x_j) = η(g·x_i, g·x_j)`.
    pub fn transformed(&self, g: GroupElt) -> Self {
        let d = self.dim();
        let mut out = Self::zero(self.module.clone());
        for i in 0..d {
            let (a, ca) = self.module.act(g, i);
            for j in 0..d {
                let (b, cb) = self.module.act(g, j);
                out.matrix[i][j] = &(ca * cb) * &self.matrix[a][b];
            }
        }
        out
    }

    /// First `(i, j)` with `η^g(x_i, x_j) != η(x_i, x_j)`.
    pub fn invariance_failure(&self, g: GroupElt) -> Option<(usize, usize)> {
        let t = self.transformed(g);
        let d = self.dim();
        (0..d * d).map(|k| (k / d, k % d)).find(|&(i, j)| t.matrix[i][j] != self.matrix[i][j])
    }

    /// Invariance under the group generators, which suffices since the action is a representation.
    pub fn is_invariant(&self) -> bool {
        self.module.group().generators().iter().all(|&g| self.invariance_failure(g).is_none())
    }

    /// Basis of the space of invariant forms, from the linear system `η^g = η` over generators.
    pub fn invariant_basis(module: &Arc<YDModule>) -> Vec<BilinearForm> {
        let d = module.dim();
        let one = module.field().one();
        let mut rows = Vec::new();
        for &g in module.group().generators() {
            for i in 0..d {
                let (a, ca) = module.act(g, i);
                for j in 0..d {
                    let (b, cb) = module.act(g, j);
                    rows.push(SparseVec::from_terms([(a * d + b, ca * cb), (i * d + j, -one.clone())]));
                }
            }
        }
        rref(rows, d * d).nullspace().iter().map(|v| BilinearForm::from_vector(module.clone(), v)).collect()
    }

    /// Random linear combination of `basis` with coefficients drawn from `{0, 1, -1, 2, 1/2}`.
    pub fn random_combination<R: Rng + ?Sized>(module: &Arc<YDModule>, basis: &[BilinearForm], rng: &mut R) -> Self {
        let mut out = Self::zero(module.clone());
        for b in basis {
            let c = module.field().random_small(rng);
            out = out.add(&b.scale(&c));
        }
        out
    }

    /// Random form with every entry drawn from `{0, 1, -1, 2, 1/2}`.
    pub fn random<R: Rng + ?Sized>(module: &Arc<YDModule>, rng: &mut R) -> Self {
        let d = module.dim();
        let matrix = (0..d).map(|_| (0..d).map(|_| module.field().random_small(rng)).collect()).collect();
        BilinearForm { module: module.clone(), matrix }
    }

    pub fn add(&self, other: &Self) -> Self {
        let matrix = self
            .matrix
            .iter()
            .zip(&other.matrix)
            .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x + y).collect())
            .collect();
        BilinearForm { module: self.module.clone(), matrix }
    }

    /// `η = Σ β_O Σ_{(τ,μ) ∈ O} d_τ ⊗ d_μ`, one value per product cycle type of the pair orbits.
    /// `values` are matched with `labels`, e.g. `["id", "(123)", "(12)(34)"]`.
    pub fn from_class_values(module: Arc<YDModule>, labels: &[&str], values: &[CycScalar]) -> Result<Self> {
        let ModuleShape::Rack { cocycle } = module.shape() else {
            return Err(Error::validation("not-a-rack-module", "class values need a rack module"));
        };
        if labels.len() != values.len() {
            return Err(Error::validation("bad-class-values", "one value per orbit label is required"));
        }
        let orbits = cocycle.rack().pair_orbits();
        let mut f = Self::zero(module.clone());
        for o in &orbits {
            let Some(k) = labels.iter().position(|l| *l == o.product_label) else {
                return Err(Error::validation(
                    "bad-class-values",
                    format!("no value given for pair orbit with product type {}", o.product_label),
                ));
            };
            for &(a, b) in &o.pairs {
                f.matrix[a][b] = values[k].clone();
            }
        }
        Ok(f)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let d = self.dim();
        let entries: Vec<(usize, usize, String)> = (0..d)
            .flat_map(|i| (0..d).map(move |j| (i, j)))
            .filter(|&(i, j)| !self.matrix[i][j].is_zero())
            .map(|(i, j)| (i, j, self.matrix[i][j].to_string()))
            .collect();
        serde_json::json!({ "labels": self.module.labels(), "entries": entries })
    }
}

/// Position of each summand of a dihedral module: `Ik` blocks first, then `Ell` blocks.
fn dihedral_layout(module: &YDModule) -> Result<(u32, Vec<(u32, u32)>, Vec<u32>)> {
    let ModuleShape::Dihedral { m, summands } = module.shape() else {
        return Err(Error::validation("not-dihedral", "coefficient families need a dihedral module"));
    };
    let mut pairs = Vec::new();
    let mut ells = Vec::new();
    for s in summands {
        match *s {
            DihedralSummand::Ik { i, k } => {
                if !ells.is_empty() {
                    return Err(Error::validation("bad-layout", "pair summands must precede l summands"));
                }
                pairs.push((i, k));
            }
            DihedralSummand::Ell { l } => ells.push(l),
        }
    }
    Ok((*m, pairs, ells))
}

/// Which coefficient family a key belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    /// `α^{r,s}_{P,Q} = η(y_r^P, y_s^Q)`.
    Alpha,
    /// `β^{r,s}_{P,ℓ} = η(y_r^P, x_s^ℓ)`.
    Beta,
    /// `ζ^{r,s}_{P,ℓ} = η(x_s^ℓ, y_r^P)`.
    Zeta,
    /// `ξ^{r,s}_{ℓ,ℓ'} = η(x_r^ℓ, x_s^ℓ')`.
    Xi,
}

/// Coefficient key: family, `(r, s)` in `{1,2}`, and summand positions within `I` or `L`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct CoefKey {
    pub family: Family,
    pub r: u8,
    pub s: u8,
    pub first: usize,
    pub second: usize,
}

/// The dihedral coefficient families of a bilinear form on `M_{I,L}`.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct DihedralCoefficients {
    pub values: BTreeMap<CoefKey, CycScalar>,
}

impl DihedralCoefficients {
    pub fn get(&self, family: Family, r: u8, s: u8, first: usize, second: usize) -> Option<&CycScalar> {
        self.values.get(&CoefKey { family, r, s, first, second })
    }

    pub fn set(&mut self, family: Family, r: u8, s: u8, first: usize, second: usize, c: CycScalar) {
        self.values.insert(CoefKey { family, r, s, first, second }, c);
    }

    fn index_of(key: &CoefKey, npairs: usize) -> (usize, usize) {
        let y = |pos: usize, r: u8| 2 * pos + (r as usize - 1);
        let x = |pos: usize, r: u8| 2 * npairs + 2 * pos + (r as usize - 1);
        match key.family {
            Family::Alpha => (y(key.first, key.r), y(key.second, key.s)),
            Family::Beta => (y(key.first, key.r), x(key.second, key.s)),
            Family::Zeta => (x(key.second, key.s), y(key.first, key.r)),
            Family::Xi => (x(key.first, key.r), x(key.second, key.s)),
        }
    }

    fn all_keys(npairs: usize, nells: usize) -> Vec<CoefKey> {
        let mut out = Vec::new();
        for (family, a, b) in [
            (Family::Alpha, npairs, npairs),
            (Family::Beta, npairs, nells),
            (Family::Zeta, npairs, nells),
            (Family::Xi, nells, nells),
        ] {
            for first in 0..a {
                for second in 0..b {
                    for r in 1..=2 {
                        for s in 1..=2 {
                            out.push(CoefKey { family, r, s, first, second });
                        }
                    }
                }
            }
        }
        out
    }

    pub fn to_form(&self, module: Arc<YDModule>) -> Result<BilinearForm> {
        let (_, pairs, ells) = dihedral_layout(&module)?;
        let mut f = BilinearForm::zero(module);
        for (key, c) in &self.values {
            let (np, nl) = (pairs.len(), ells.len());
            let in_range = match key.family {
                Family::Alpha => key.first < np && key.second < np,
                Family::Beta | Family::Zeta => key.first < np && key.second < nl,
                Family::Xi => key.first < nl && key.second < nl,
            };
            if !in_range || !(1..=2).contains(&key.r) || !(1..=2).contains(&key.s) {
                return Err(Error::validation("bad-coefficient", format!("coefficient {key:?} is out of range")));
            }
            let (i, j) = Self::index_of(key, np);
            f.matrix[i][j] = c.clone();
        }
        Ok(f)
    }

    pub fn from_form(form: &BilinearForm) -> Result<Self> {
        let (_, pairs, ells) = dihedral_layout(form.module())?;
        let mut out = DihedralCoefficients::default();
        for key in Self::all_keys(pairs.len(), ells.len()) {
            let (i, j) = Self::index_of(&key, pairs.len());
            let c = form.get(i, j);
            if !c.is_zero() {
                out.values.insert(key, c.clone());
            }
        }
        Ok(out)
    }

    /// Violations of the closed invariance conditions for dihedral modules: `g`-symmetry
    /// (`c^{1,2} = c^{2,1}`, `c^{1,1} = c^{2,2}`), and the `h`-eigenvalue vanishing conditions
    /// (diagonal entries need `q ≡ -k`, off-diagonal ones `q ≡ k`, with `ℓ` in place of `k`).
    pub fn closed_condition_violations(&self, module: &YDModule) -> Result<Vec<String>> {
        let (m, pairs, ells) = dihedral_layout(module)?;
        let zero = module.field().zero();
        let get = |key: CoefKey| self.values.get(&key).unwrap_or(&zero).clone();
        let mut out = Vec::new();
        let md = |x: i64| x.rem_euclid(m as i64);
        for key in Self::all_keys(pairs.len(), ells.len()) {
            let c = get(key);
            let swapped = get(CoefKey { r: key.s, s: key.r, ..key });
            if c != swapped {
                out.push(format!("{key:?}: value {c} differs from the (s,r) entry {swapped}"));
            }
            let diag = get(CoefKey { r: 1, s: 1, ..key });
            if key.r == key.s && c != diag {
                out.push(format!("{key:?}: (1,1) and (2,2) entries differ"));
            }
            // Weights of the two slots under h.
            let (a, b) = match key.family {
                Family::Alpha => (pairs[key.first].1 as i64, pairs[key.second].1 as i64),
                Family::Beta | Family::Zeta => (pairs[key.first].1 as i64, ells[key.second] as i64),
                Family::Xi => (ells[key.first] as i64, ells[key.second] as i64),
            };
            let allowed = if key.r == key.s { md(a + b) == 0 } else { md(a - b) == 0 };
            if !allowed && !c.is_zero() {
                out.push(format!("{key:?}: must vanish since the h-weights do not cancel"));
            }
        }
        Ok(out)
    }
}

/// Invariance report: group generators (optionally the whole group), plus the closed-form
/// characterization for dihedral and untwisted rack modules, and their agreement.
pub fn invariance_report(form: &BilinearForm, full_group: bool) -> Report {
    let module = form.module();
    let group = module.group();
    let elements: Vec<GroupElt> = if full_group { group.elements().collect() } else { group.generators().to_vec() };
    let mut entries = Vec::new();
    for g in elements {
        let w = form.invariance_failure(g).map(|(i, j)| {
            let t = form.transformed(g);
            Witness {
                indices: vec![i, j],
                labels: vec![module.labels()[i].clone(), module.labels()[j].clone()],
                lhs: t.get(i, j).to_string(),
                rhs: form.get(i, j).to_string(),
            }
        });
        entries.push(CheckEntry::from_witness(format!("invariant-under:{}", group.label(g)), w));
    }
    let by_action = entries.iter().all(|e| e.pass);
    let closed = match module.shape() {
        ModuleShape::Dihedral { .. } => {
            let v = DihedralCoefficients::from_form(form).and_then(|c| c.closed_condition_violations(module));
            Some(match v {
                Ok(v) if v.is_empty() => CheckEntry::passed("closed-conditions"),
                Ok(v) => CheckEntry::failed(
                    "closed-conditions",
                    Witness { indices: vec![], labels: vec![], lhs: v[0].clone(), rhs: format!("{} violations", v.len()) },
                ),
                Err(e) => CheckEntry::failed(
                    "closed-conditions",
                    Witness { indices: vec![], labels: vec![], lhs: e.to_string(), rhs: String::new() },
                ),
            })
        }
        ModuleShape::Rack { cocycle } if cocycle.kind() == CocycleKind::MinusOne => {
            let orbits = cocycle.rack().pair_orbits();
            let w = orbits.iter().find_map(|o| {
                let (a0, b0) = o.pairs[0];
                o.pairs.iter().find(|&&(a, b)| form.get(a, b) != form.get(a0, b0)).map(|&(a, b)| Witness {
                    indices: vec![a0, b0, a, b],
                    labels: [a0, b0, a, b].iter().map(|&i| module.labels()[i].clone()).collect(),
                    lhs: form.get(a0, b0).to_string(),
                    rhs: form.get(a, b).to_string(),
                })
            });
            Some(CheckEntry::from_witness("class-function", w))
        }
        _ => None,
    };
    if let Some(c) = closed {
        let agree = c.pass == by_action;
        entries.push(c);
        entries.push(if agree {
            CheckEntry::passed("characterizations-agree")
        } else {
            CheckEntry::failed(
                "characterizations-agree",
                Witness {
                    indices: vec![],
                    labels: vec![],
                    lhs: format!("action check {by_action}"),
                    rhs: format!("closed check {}", !by_action),
                },
            )
        });
    }
    Report::new("invariance", format!("bilinear form on {}-dimensional module", module.dim()), entries)
}

/// Applies braid generators at the given positions (first applied first) to a basis word.
fn braid_apply(module: &YDModule, word: &mut [usize], positions: &[usize]) -> CycScalar {
    let mut c = module.field().one();
    for &p in positions {
        c = c * module.braid_word(word, p);
    }
    c
}

fn eta_eta(form: &BilinearForm, w: &[usize]) -> CycScalar {
    form.get(w[0], w[1]) * form.get(w[2], w[3])
}

/// The two identities `(η⊗η)c_1324 = (η⊗η)c_2413` and `(η⊗η)c_1423 = (η⊗η)c_2314` on `V^{⊗4}`.
pub fn check_eq1_eq2(form: &BilinearForm) -> Report {
    let module = form.module();
    let d = module.dim();
    // Braid composites as position lists, rightmost factor first.
    let c1324: &[usize] = &[1];
    let c2413: &[usize] = &[0, 2, 1];
    let c1423: &[usize] = &[2, 1];
    let c2314: &[usize] = &[0, 1];
    let check = |lhs: &[usize], rhs: &[usize]| {
        (0..d.pow(4)).into_par_iter().find_map_first(|idx| {
            let w = crate::nichols::word_of(idx, 4, d);
            let (mut a, mut b) = (w.clone(), w.clone());
            let ca = braid_apply(module, &mut a, lhs);
            let cb = braid_apply(module, &mut b, rhs);
            let l = &ca * &eta_eta(form, &a);
            let r = &cb * &eta_eta(form, &b);
            (l != r).then(|| Witness {
                labels: w.iter().map(|&i| module.labels()[i].clone()).collect(),
                indices: w,
                lhs: l.to_string(),
                rhs: r.to_string(),
            })
        })
    };
    let entries = vec![
        CheckEntry::from_witness("eq1", check(c1324, c2413)),
        CheckEntry::from_witness("eq2", check(c1423, c2314)),
    ];
    Report::new("eq12", format!("bilinear form on {}-dimensional module", d), entries)
}

/// `c(id ⊗ η) = (η ⊗ id)c_231` on `V^{⊗3}`: true for every invariant form.
pub fn check_c231_identity(form: &BilinearForm) -> Option<Witness> {
    let module = form.module();
    let d = module.dim();
    (0..d.pow(3)).find_map(|idx| {
        let w = crate::nichols::word_of(idx, 3, d);
        let mut b = w.clone();
        let c = braid_apply(module, &mut b, &[0, 1]);
        // Left: η(w1, w2) x_{w0}; right: coefficient of x_{b2} after the composite.
        let lhs = SparseVec::singleton(w[0], form.get(w[1], w[2]).clone());
        let rhs = SparseVec::singleton(b[2], &c * form.get(b[0], b[1]));
        (lhs != rhs).then(|| Witness {
            labels: w.iter().map(|&i| module.labels()[i].clone()).collect(),
            indices: w,
            lhs: format!("{lhs:?}"),
            rhs: format!("{rhs:?}"),
        })
    })
}

/// A functional on `A ⊗ A`, stored by rows. Values are meaningful for pairs whose degrees are
/// both at most `valid_through`.
#[derive(Clone, Debug, PartialEq)]
pub struct PairFunctional {
    rows: Vec<SparseVec>,
    valid_through: usize,
}

impl PairFunctional {
    pub fn zero(dim: usize, valid_through: usize) -> Self {
        PairFunctional { rows: vec![SparseVec::new(); dim], valid_through }
    }

    pub fn from_rows(rows: Vec<SparseVec>, valid_through: usize) -> Self {
        PairFunctional { rows, valid_through }
    }

    /// `ε ⊗ ε`.
    pub fn counit(a: &BosonHopf) -> Self {
        let mut f = Self::zero(a.dim(), a.top_degree());
        let one = a.field().one();
        for g in a.group().elements() {
            f.rows[a.grouplike(g)] =
                SparseVec::from_terms(a.group().elements().map(|h| (a.grouplike(h), one.clone())));
        }
        f
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn valid_through(&self) -> usize {
        self.valid_through
    }

    pub fn row(&self, u: usize) -> &SparseVec {
        &self.rows[u]
    }

    pub fn get(&self, u: usize, v: usize) -> Option<&CycScalar> {
        self.rows[u].get(v)
    }

    pub fn value(&self, u: usize, v: usize, field: &'static CycField) -> CycScalar {
        self.get(u, v).cloned().unwrap_or_else(|| field.zero())
    }

    pub fn eval(&self, a: &SparseVec, b: &SparseVec, field: &'static CycField) -> CycScalar {
        let mut s = field.zero();
        for (u, x) in a.iter() {
            for (v, y) in b.iter() {
                if let Some(c) = self.get(u, v) {
                    s += &(&(x * y) * c);
                }
            }
        }
        s
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(SparseVec::is_zero)
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(SparseVec::nnz).sum()
    }

    pub fn scale(&self, c: &CycScalar) -> Self {
        PairFunctional { rows: self.rows.iter().map(|r| r.scale(c)).collect(), valid_through: self.valid_through }
    }

    pub fn add(&self, other: &Self) -> Self {
        PairFunctional {
            rows: self.rows.iter().zip(&other.rows).map(|(a, b)| a.add(b)).collect(),
            valid_through: self.valid_through.min(other.valid_through),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        PairFunctional {
            rows: self.rows.iter().zip(&other.rows).map(|(a, b)| a.sub(b)).collect(),
            valid_through: self.valid_through.min(other.valid_through),
        }
    }

    /// Degree pairs `(deg u, deg v)` carrying nonzero values.
    pub fn degree_support(&self, a: &BosonHopf) -> BTreeSet<(usize, usize)> {
        let mut out = BTreeSet::new();
        for (u, row) in self.rows.iter().enumerate() {
            for (v, _) in row.iter() {
                out.insert((a.degree(u), a.degree(v)));
            }
        }
        out
    }

    /// Nonzero entries `(u, v, value)` in row-major order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &CycScalar)> + '_ {
        self.rows.iter().enumerate().flat_map(|(u, r)| r.iter().map(move |(v, c)| (u, v, c)))
    }
}

/// `η̃(x#h, y#h') = η(x, h·y) ε(h')` on `A_1 ⊗ A_1`, zero elsewhere.
pub fn lift_functional(form: &BilinearForm, a: &BosonHopf) -> Result<PairFunctional> {
    let v = a.nichols().module();
    if !Arc::ptr_eq(v, form.module()) {
        return Err(Error::validation("module-mismatch", "the form lives on a different module than the algebra"));
    }
    let mut f = PairFunctional::zero(a.dim(), a.top_degree());
    if a.top_degree() < 1 {
        return Ok(f);
    }
    let off = a.nichols().offset(1);
    let d = v.dim();
    for x in 0..d {
        for h in a.group().elements() {
            let u = a.index(off + x, h);
            let mut terms = Vec::new();
            for y in 0..d {
                let (hy, c) = v.act(h, y);
                let val = c * form.get(x, hy);
                if val.is_zero() {
                    continue;
                }
                for h2 in a.group().elements() {
                    terms.push((a.index(off + y, h2), val.clone()));
                }
            }
            f.rows[u] = SparseVec::from_terms(terms);
        }
    }
    Ok(f)
}

/// Convolution on `Hom(A ⊗ A, k)`, using an index from `(b1, b2)` back to the `b` whose
/// coproduct contains `b1 ⊗ b2`.
pub struct Convolution<'a> {
    algebra: &'a BosonHopf,
    preimage: FxHashMap<(usize, usize), Vec<(usize, CycScalar)>>,
}

impl<'a> Convolution<'a> {
    pub fn new(algebra: &'a BosonHopf) -> Self {
        let mut preimage: FxHashMap<(usize, usize), Vec<(usize, CycScalar)>> = FxHashMap::default();
        for b in 0..algebra.dim() {
            for (b1, b2, c) in algebra.coproduct(b) {
                preimage.entry((*b1, *b2)).or_default().push((b, c.clone()));
            }
        }
        Convolution { algebra, preimage }
    }

    pub fn algebra(&self) -> &BosonHopf {
        self.algebra
    }

    /// `(f * g)(a, b) = Σ f(a1, b1) g(a2, b2)` on pairs with both degrees at most `through`.
    pub fn convolve(&self, f: &PairFunctional, g: &PairFunctional, through: usize) -> PairFunctional {
        let a = self.algebra;
        let through = through.min(f.valid_through).min(g.valid_through);
        let rows = (0..a.dim())
            .into_par_iter()
            .map(|u| {
                if a.degree(u) > through {
                    return SparseVec::new();
                }
                let mut acc = Accumulator::default();
                for (u1, u2, c) in a.coproduct(u) {
                    for (v1, x) in f.row(*u1).iter() {
                        let cx = c * x;
                        for (v2, y) in g.row(*u2).iter() {
                            if let Some(pre) = self.preimage.get(&(v1, v2)) {
                                let cxy = &cx * y;
                                for (v, e) in pre {
                                    if a.degree(*v) <= through {
                                        acc.add_owned(*v, &cxy * e);
                                    }
                                }
                            }
                        }
                    }
                }
                acc.finish()
            })
            .collect();
        PairFunctional { rows, valid_through: through }
    }

    /// `e^f = ε⊗ε + Σ_{k≥1} f^{*k}/k!` on degrees up to `through`. `f` must vanish whenever an
    /// argument has degree 0, so `f^{*k}` lives in degrees at least `k` and the sum is finite.
    pub fn exp_through(&self, f: &PairFunctional, through: usize) -> Result<PairFunctional> {
        let a = self.algebra;
        if f.entries().any(|(u, v, _)| a.degree(u) == 0 || a.degree(v) == 0) {
            return Err(Error::structural("exp-not-nilpotent", "functional does not vanish on degree-0 arguments"));
        }
        let through = through.min(a.top_degree()).min(f.valid_through);
        let mut sum = PairFunctional::counit(a);
        sum.valid_through = through;
        let mut term = f.clone();
        term.valid_through = through;
        let mut k = 1i64;
        let mut factorial = a.field().one();
        while !term.is_zero() {
            if k as usize > a.top_degree() + 1 {
                return Err(Error::structural("exp-no-termination", "convolution powers did not vanish above the top degree"));
            }
            factorial = factorial.mul_int(k);
            sum = sum.add(&term.scale(&factorial.inv()?));
            term = self.convolve(&term, f, through);
            k += 1;
        }
        sum.valid_through = through;
        Ok(sum)
    }

    pub fn exp(&self, f: &PairFunctional) -> Result<PairFunctional> {
        self.exp_through(f, self.algebra.top_degree())
    }
}

fn pair_witness(a: &BosonHopf, idx: &[usize], lhs: &CycScalar, rhs: &CycScalar) -> Witness {
    Witness { indices: idx.to_vec(), labels: idx.iter().map(|&u| a.label(u)).collect(), lhs: lhs.to_string(), rhs: rhs.to_string() }
}

/// Triples inside the cap whose degree sum is at most `limit`.
fn triple_ok(a: &BosonHopf, t: [usize; 3], limit: usize) -> bool {
    let s = a.degree(t[0]) + a.degree(t[1]) + a.degree(t[2]);
    (a.is_uncapped() || s <= a.top_degree()) && s <= limit
}

/// `ε(a)η(b,c) + η(a,bc) = η(a,b)ε(c) + η(ab,c)` on all basis triples inside the cap.
pub fn check_hochschild(f: &PairFunctional, a: &BosonHopf) -> Option<Witness> {
    let n = a.dim();
    let field = a.field();
    let support = f.degree_support(a);
    let limit = if f.valid_through >= a.top_degree() { usize::MAX } else { f.valid_through };
    // Only products that can land in the support of f are computed.
    let needed = |x: usize, y: usize, other_deg: usize, left: bool| {
        let d = a.degree(x) + a.degree(y);
        support.contains(&if left { (d, other_deg) } else { (other_deg, d) })
    };
    (0..n).into_par_iter().find_map_first(|x| {
        for y in 0..n {
            for z in 0..n {
                if !triple_ok(a, [x, y, z], limit) {
                    continue;
                }
                let mut lhs = &a.counit(x) * &f.value(y, z, field);
                if needed(y, z, a.degree(x), false) {
                    lhs += &f.eval(&SparseVec::singleton(x, field.one()), &*a.product(y, z).ok()?, field);
                }
                let mut rhs = &f.value(x, y, field) * &a.counit(z);
                if needed(x, y, a.degree(z), true) {
                    rhs += &f.eval(&*a.product(x, y).ok()?, &SparseVec::singleton(z, field.one()), field);
                }
                if lhs != rhs {
                    return Some(pair_witness(a, &[x, y, z], &lhs, &rhs));
                }
            }
        }
        None
    })
}

/// Verdicts of the two commuting conditions on `A^{⊗3}`.
#[derive(Clone, Debug, Serialize)]
pub struct CommutingReport {
    pub condition_b: bool,
    pub condition_c: bool,
    pub witness_b: Option<Witness>,
    pub witness_c: Option<Witness>,
    pub triples_checked: usize,
}

/// Conditions (b) `(ε⊗η̃)*η̃(id⊗m) = η̃(id⊗m)*(ε⊗η̃)` and (c)
/// `(η̃⊗ε)*η̃(m⊗id) = η̃(m⊗id)*(η̃⊗ε)` on basis triples of degree patterns
/// `(1,1,2)`, `(1,2,1)`, `(2,1,1)`, the only ones where a lifted form can contribute.
pub fn check_commuting_conditions(f: &PairFunctional, a: &BosonHopf) -> Result<CommutingReport> {
    if a.top_degree() < 2 {
        return Err(Error::CapExceeded { degree: 2, cap: a.top_degree() });
    }
    let field = a.field();
    let support = f.degree_support(a);
    let supp = |x: usize, y: usize| support.contains(&(a.degree(x), a.degree(y)));
    // η̃(x, y z), computing the product only if the degrees can be supported.
    let eta_x_yz = |x: usize, y: usize, z: usize| -> Result<CycScalar> {
        if !support.contains(&(a.degree(x), a.degree(y) + a.degree(z))) {
            return Ok(field.zero());
        }
        Ok(f.eval(&SparseVec::singleton(x, field.one()), &*a.product(y, z)?, field))
    };
    let eta_xy_z = |x: usize, y: usize, z: usize| -> Result<CycScalar> {
        if !support.contains(&(a.degree(x) + a.degree(y), a.degree(z))) {
            return Ok(field.zero());
        }
        Ok(f.eval(&*a.product(x, y)?, &SparseVec::singleton(z, field.one()), field))
    };
    let mut triples = Vec::new();
    for pat in [[1, 1, 2], [1, 2, 1], [2, 1, 1]] {
        for x in a.degree_range(pat[0]) {
            for y in a.degree_range(pat[1]) {
                for z in a.degree_range(pat[2]) {
                    triples.push([x, y, z]);
                }
            }
        }
    }
    let eval_b = |[x, y, z]: [usize; 3]| -> Result<Option<Witness>> {
        let mut lhs = field.zero();
        let mut rhs = field.zero();
        for (y1, y2, cy) in a.coproduct(y) {
            for (z1, z2, cz) in a.coproduct(z) {
                let c = cy * cz;
                if supp(*y1, *z1) {
                    let e = f.value(*y1, *z1, field);
                    if !e.is_zero() {
                        lhs += &(&(&c * &e) * &eta_x_yz(x, *y2, *z2)?);
                    }
                }
                if supp(*y2, *z2) {
                    let e = f.value(*y2, *z2, field);
                    if !e.is_zero() {
                        rhs += &(&(&c * &e) * &eta_x_yz(x, *y1, *z1)?);
                    }
                }
            }
        }
        Ok((lhs != rhs).then(|| pair_witness(a, &[x, y, z], &lhs, &rhs)))
    };
    let eval_c = |[x, y, z]: [usize; 3]| -> Result<Option<Witness>> {
        let mut lhs = field.zero();
        let mut rhs = field.zero();
        for (x1, x2, cx) in a.coproduct(x) {
            for (y1, y2, cy) in a.coproduct(y) {
                let c = cx * cy;
                if supp(*x1, *y1) {
                    let e = f.value(*x1, *y1, field);
                    if !e.is_zero() {
                        lhs += &(&(&c * &e) * &eta_xy_z(*x2, *y2, z)?);
                    }
                }
                if supp(*x2, *y2) {
                    let e = f.value(*x2, *y2, field);
                    if !e.is_zero() {
                        rhs += &(&(&c * &e) * &eta_xy_z(*x1, *y1, z)?);
                    }
                }
            }
        }
        Ok((lhs != rhs).then(|| pair_witness(a, &[x, y, z], &lhs, &rhs)))
    };
    let first = |eval: &(dyn Fn([usize; 3]) -> Result<Option<Witness>> + Sync)| -> Result<Option<Witness>> {
        triples.par_iter().map(|&t| eval(t)).find_map_first(|r| match r {
            Ok(None) => None,
            other => Some(other),
        }).unwrap_or(Ok(None))
    };
    let witness_b = first(&eval_b)?;
    let witness_c = first(&eval_c)?;
    Ok(CommutingReport {
        condition_b: witness_b.is_none(),
        condition_c: witness_c.is_none(),
        witness_b,
        witness_c,
        triples_checked: triples.len(),
    })
}

/// Checks for a candidate multiplicative 2-cocycle `σ`.
pub fn check_multiplicative_cocycle(sigma: &PairFunctional, sigma_inv: Option<&PairFunctional>, a: &BosonHopf) -> Report {
    let n = a.dim();
    let field = a.field();
    let limit = if sigma.valid_through >= a.top_degree() { usize::MAX } else { sigma.valid_through };
    let unit = a.unit();
    let one = |u: usize| SparseVec::singleton(u, field.one());

    let normal = (0..n).find_map(|u| {
        let (l, r, e) = (sigma.value(u, unit, field), sigma.value(unit, u, field), a.counit(u));
        (l != e || r != e).then(|| pair_witness(a, &[u], &l, &r))
    });

    // Both sides use T[b,c] = Σ σ(b1,c1) b2c2: σ(a, T[b,c]) = σ(T[a,b], c).
    let twisted: Vec<Option<SparseVec>> = (0..n * n)
            .into_par_iter()
            .map(|k| {
                let (x, y) = (k / n, k % n);
                if !a.in_cap(x, y) || a.degree(x) + a.degree(y) > limit {
                    return None;
                }
                let mut acc = Accumulator::default();
                for (x1, x2, cx) in a.coproduct(x) {
                    for (y1, y2, cy) in a.coproduct(y) {
                        if let Some(s) = sigma.get(*x1, *y1) {
                            let c = &(cx * cy) * s;
                            acc.add_scaled(&*a.product(*x2, *y2).ok()?, &c);
                        }
                    }
                }
                Some(acc.finish())
            })
            .collect();
    let cocycle = (0..n).into_par_iter().find_map_first(|x| {
        for y in 0..n {
            for z in 0..n {
                if !triple_ok(a, [x, y, z], limit) {
                    continue;
                }
                let (Some(lyz), Some(rxy)) = (&twisted[y * n + z], &twisted[x * n + y]) else { continue };
                let lhs = sigma.eval(&one(x), lyz, field);
                let rhs = sigma.eval(rxy, &one(z), field);
                if lhs != rhs {
                    return Some(pair_witness(a, &[x, y, z], &lhs, &rhs));
                }
            }
        }
        None
    });

    let mut entries = vec![CheckEntry::from_witness("normalized", normal), CheckEntry::from_witness("cocycle-identity", cocycle)];
    match (sigma_inv, a.antipode()) {
        (Some(inv), Ok(s)) => {
            let w = (0..n).find_map(|x| {
                (0..n).find_map(|y| {
                    let l = inv.value(x, y, field);
                    let mut r = field.zero();
                    for (x1, x2, c) in a.coproduct(x) {
                        let prod = a.product(*x2, y).ok()?;
                        r += &(c * &sigma.eval(&s[*x1], &prod, field));
                    }
                    (l != r).then(|| pair_witness(a, &[x, y], &l, &r))
                })
            });
            entries.push(CheckEntry::from_witness("inverse-via-antipode", w));
        }
        (Some(_), Err(_)) => entries.push(CheckEntry::skipped("inverse-via-antipode", "capped algebra has no antipode")),
        (None, _) => {}
    }
    Report::new("mult-cocycle", a.instance_name(), entries)
}

/// `f * g = ε ⊗ ε` on all pairs where both are valid.
pub fn check_convolution_inverse(conv: &Convolution<'_>, f: &PairFunctional, g: &PairFunctional) -> Option<Witness> {
    let a = conv.algebra();
    let through = f.valid_through.min(g.valid_through);
    let p = conv.convolve(f, g, through);
    let e = PairFunctional::counit(a);
    (0..a.dim()).filter(|&u| a.degree(u) <= through).find_map(|u| {
        let (l, r) = (p.row(u), e.row(u));
        (l != r).then(|| Witness { indices: vec![u], labels: vec![a.label(u)], lhs: format!("{l:?}"), rhs: format!("{r:?}") })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::FinGroup;
    use crate::nichols::{Cap, TruncatedNichols, DEFAULT_TENSOR_BUDGET};
    use crate::racks::{Rack, RackCocycle};
    use crate::yetter_drinfeld::IndexData;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn dihedral_module(pairs: Vec<(u32, u32)>, ells: Vec<u32>) -> Arc<YDModule> {
        let g = Arc::new(FinGroup::dihedral(12).unwrap());
        Arc::new(YDModule::m_i(g, &IndexData::new(12, pairs, ells).unwrap()).unwrap())
    }

    fn rack_module(n: usize, chi: bool) -> Arc<YDModule> {
        let g = Arc::new(FinGroup::symmetric(n).unwrap());
        let r = Arc::new(Rack::transpositions(g).unwrap());
        let c = if chi { RackCocycle::chi(r).unwrap() } else { RackCocycle::minus_one(r) };
        Arc::new(YDModule::rack_module(Arc::new(c)).unwrap())
    }

    fn algebra(v: Arc<YDModule>) -> BosonHopf {
        BosonHopf::bosonize(Arc::new(TruncatedNichols::build(v, Cap::Full, DEFAULT_TENSOR_BUDGET).unwrap())).unwrap()
    }

    #[test]
    fn closed_conditions_match_generator_check() {
        let v = dihedral_module(vec![(1, 6), (5, 6)], vec![]);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..40 {
            let f = BilinearForm::random(&v, &mut rng);
            let closed = DihedralCoefficients::from_form(&f).unwrap().closed_condition_violations(&v).unwrap().is_empty();
            assert_eq!(closed, f.is_invariant());
        }
        let basis = BilinearForm::invariant_basis(&v);
        for _ in 0..20 {
            let f = BilinearForm::random_combination(&v, &basis, &mut rng);
            assert!(f.is_invariant());
            assert!(invariance_report(&f, true).verdict);
        }
    }

    #[test]
    fn coefficient_round_trip() {
        let v = dihedral_module(vec![(2, 3)], vec![3]);
        let f = CycField::get(12).unwrap();
        let mut c = DihedralCoefficients::default();
        c.set(Family::Beta, 1, 2, 0, 0, f.from_int(5));
        c.set(Family::Zeta, 2, 1, 0, 0, f.from_int(-3));
        let form = c.to_form(v.clone()).unwrap();
        // ζ^{2,1} is the coefficient of d_1^(l) ⊗ d_2^(p,q).
        assert_eq!(form.get(2, 1), &f.from_int(-3));
        assert_eq!(form.get(0, 3), &f.from_int(5));
        assert_eq!(DihedralCoefficients::from_form(&form).unwrap(), c);
    }

    #[test]
    fn lift_support_and_values() {
        let v = dihedral_module(vec![(1, 6)], vec![]);
        let a = algebra(v.clone());
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let form = BilinearForm::random(&v, &mut rng);
        let f = lift_functional(&form, &a).unwrap();
        assert_eq!(f.degree_support(&a), [(1, 1)].into_iter().collect());
        let off = a.nichols().offset(1);
        for x in 0..2 {
            for y in 0..2 {
                for h in a.group().elements() {
                    let (hy, c) = v.act(h, y);
                    let want = c * form.get(x, hy);
                    assert_eq!(f.value(a.index(off + x, h), a.index(off + y, 0), a.field()), want);
                }
            }
        }
    }

    #[test]
    fn exp_of_zero_is_counit_and_inverse_holds() {
        let v = dihedral_module(vec![(1, 6)], vec![]);
        let a = algebra(v.clone());
        let conv = Convolution::new(&a);
        let z = PairFunctional::zero(a.dim(), a.top_degree());
        assert_eq!(conv.exp(&z).unwrap(), PairFunctional::counit(&a));
        let basis = BilinearForm::invariant_basis(&v);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let form = BilinearForm::random_combination(&v, &basis, &mut rng);
        let eta = lift_functional(&form, &a).unwrap();
        let s = conv.exp(&eta).unwrap();
        let si = conv.exp(&eta.scale(&-a.field().one())).unwrap();
        assert!(check_convolution_inverse(&conv, &s, &si).is_none());
        assert!(check_hochschild(&eta, &a).is_none());
        let rep = check_multiplicative_cocycle(&s, Some(&si), &a);
        assert!(rep.verdict, "{:?}", rep.first_failure());
    }

    #[test]
    fn antipode_alone_does_not_invert() {
        // σ(S(a), b) disagrees with σ⁻¹ on degree-one pairs; the coproduct of a is needed.
        let v = dihedral_module(vec![(1, 6)], vec![]);
        let a = algebra(v.clone());
        let conv = Convolution::new(&a);
        let mut form = BilinearForm::zero(v);
        let one = a.field().one();
        form.set(0, 0, one.clone());
        form.set(1, 1, one.clone());
        assert!(form.is_invariant());
        let eta = lift_functional(&form, &a).unwrap();
        let s = conv.exp(&eta).unwrap();
        let si = conv.exp(&eta.scale(&-one.clone())).unwrap();
        let antipode = a.antipode().unwrap();
        let bad = a.degree_range(1).flat_map(|x| a.degree_range(1).map(move |y| (x, y))).find(|&(x, y)| {
            s.eval(&antipode[x], &SparseVec::singleton(y, one.clone()), a.field()) != si.value(x, y, a.field())
        });
        assert!(bad.is_some());
    }

    #[test]
    fn random_table_is_not_hochschild() {
        let v = dihedral_module(vec![(1, 6)], vec![]);
        let a = algebra(v);
        let mut f = PairFunctional::zero(a.dim(), a.top_degree());
        f.rows[a.generator(0)] = SparseVec::singleton(a.degree_range(2).start, a.field().one());
        assert!(check_hochschild(&f, &a).is_some());
        assert!(check_hochschild(&PairFunctional::zero(a.dim(), a.top_degree()), &a).is_none());
    }

    #[test]
    fn rack_eq12_follows_constant_forms() {
        let v = rack_module(4, false);
        let one = CycField::get(1).unwrap();
        let labels = ["id", "(123)", "(12)(34)"];
        let equal = BilinearForm::from_class_values(v.clone(), &labels, &[one.one(), one.one(), one.one()]).unwrap();
        assert!(check_eq1_eq2(&equal).verdict);
        let unequal = BilinearForm::from_class_values(v, &labels, &[one.one(), one.from_int(2), one.one()]).unwrap();
        assert!(unequal.is_invariant());
        assert!(!check_eq1_eq2(&unequal).verdict);
    }

    #[test]
    fn invariant_forms_satisfy_c231() {
        let v = rack_module(3, true);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let basis = BilinearForm::invariant_basis(&v);
        let f = BilinearForm::random_combination(&v, &basis, &mut rng);
        assert!(check_c231_identity(&f).is_none());
    }

    #[test]
    fn commuting_conditions_on_zero_form() {
        let v = rack_module(3, false);
        let a = algebra(v.clone());
        let f = lift_functional(&BilinearForm::zero(v), &a).unwrap();
        let r = check_commuting_conditions(&f, &a).unwrap();
        assert!(r.condition_b && r.condition_c);
    }

    #[test]
    fn lemma_equivalence_on_s3() {
        let v = rack_module(3, false);
        let a = algebra(v.clone());
        let q = CycField::get(1).unwrap();
        let labels = ["id", "(123)"];
        let mut seen = BTreeSet::new();
        for (x, y) in [(1, 1), (1, 2), (0, 1), (2, -1)] {
            let form = BilinearForm::from_class_values(v.clone(), &labels, &[q.from_int(x), q.from_int(y)]).unwrap();
            let eq = check_eq1_eq2(&form).verdict;
            let r = check_commuting_conditions(&lift_functional(&form, &a).unwrap(), &a).unwrap();
            assert_eq!((eq, eq), (r.condition_b, r.condition_c), "values {x}, {y}");
            seen.insert(eq);
        }
        assert_eq!(seen.len(), 2);
    }

    #[test]
    fn exp_of_commuting_sum() {
        let v = dihedral_module(vec![(1, 6)], vec![]);
        let a = algebra(v.clone());
        let conv = Convolution::new(&a);
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let basis = BilinearForm::invariant_basis(&v);
        let eta = lift_functional(&BilinearForm::random_combination(&v, &basis, &mut rng), &a).unwrap();
        let two = a.field().from_int(2);
        let lhs = conv.convolve(&conv.exp(&eta).unwrap(), &conv.exp(&eta.scale(&two)).unwrap(), a.top_degree());
        let rhs = conv.exp(&eta.scale(&a.field().from_int(3))).unwrap();
        assert_eq!(lhs, rhs);
    }

    proptest::proptest! {
        #![proptest_config(proptest::prelude::ProptestConfig::with_cases(16))]
        #[test]
        fn dihedral_invariant_forms_pass_eq12(seed in 0u64..1000) {
            let v = dihedral_module(vec![(1, 6), (5, 6)], vec![]);
            let basis = BilinearForm::invariant_basis(&v);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let f = BilinearForm::random_combination(&v, &basis, &mut rng);
            proptest::prop_assert!(check_eq1_eq2(&f).verdict);
            proptest::prop_assert!(check_c231_identity(&f).is_none());
        }
    }
}
