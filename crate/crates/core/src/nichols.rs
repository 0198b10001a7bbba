//! Degree-truncated Nichols algebras computed from quantum symmetrizers.
//!
//! `B^d(V)` is identified with `V^{⊗d} / ker Q_d`. Its basis is given by the pivot words of the
//! row-reduced symmetrizer (lexicographic word order), and the reduced rows give the projection.
//! Products concatenate pivot words and project; the braided coproduct is expanded on words in
//! the braided tensor product `T(V) ⊗ T(V)` and projected on both sides.

use std::sync::Arc;

use rustc_hash::FxHashMap;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::groups::{next_permutation, GroupElt};
use crate::linalg::{kernel_of_columns, rref, transpose, Accumulator, SparseVec};
use crate::scalars::CycScalar;
use crate::yetter_drinfeld::YDModule;

/// Default bound on `dim(V)^d` for symmetrizer computations.
pub const DEFAULT_TENSOR_BUDGET: usize = 4096;

/// How far to compute.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Cap {
    /// Until the first vanishing degree.
    Full,
    /// Degrees `0..=D` only, unless the algebra vanishes earlier.
    Degree(usize),
}

/// Order in which descents are removed when building a reduced word.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WordStrategy {
    LeftmostDescent,
    RightmostDescent,
}

/// Reduced word for a permutation in one-line notation: the positions `i` of adjacent swaps,
/// in the order in which the braid generators `c_i` are applied.
pub fn reduced_word(perm: &[u8], strategy: WordStrategy) -> Vec<usize> {
    let mut p = perm.to_vec();
    let mut word = Vec::new();
    loop {
        let mut descents = (0..p.len().saturating_sub(1)).filter(|&i| p[i] > p[i + 1]);
        let next = match strategy {
            WordStrategy::LeftmostDescent => descents.next(),
            WordStrategy::RightmostDescent => descents.next_back(),
        };
        match next {
            Some(i) => {
                p.swap(i, i + 1);
                word.push(i);
            }
            None => return word,
        }
    }
}

pub fn inversions(perm: &[u8]) -> usize {
    (0..perm.len()).map(|i| (i + 1..perm.len()).filter(|&j| perm[i] > perm[j]).count()).sum()
}

/// All permutations of `0..d` in lexicographic order.
pub fn permutations(d: usize) -> Vec<Vec<u8>> {
    let mut p: Vec<u8> = (0..d as u8).collect();
    let mut out = vec![p.clone()];
    while next_permutation(&mut p) {
        out.push(p.clone());
    }
    out
}

/// Index of a word in `V^{⊗d}` (lexicographic, first letter most significant).
pub fn word_index(word: &[usize], dim: usize) -> usize {
    word.iter().fold(0, |acc, &x| acc * dim + x)
}

pub fn word_of(mut idx: usize, d: usize, dim: usize) -> Vec<usize> {
    let mut w = vec![0; d];
    for k in (0..d).rev() {
        w[k] = idx % dim;
        idx /= dim;
    }
    w
}

/// The braid group action on `V^{⊗n}` through the braiding of a module.
pub struct BraidWordRep<'a> {
    module: &'a YDModule,
    n: usize,
}

impl<'a> BraidWordRep<'a> {
    pub fn new(module: &'a YDModule, n: usize) -> Self {
        BraidWordRep { module, n }
    }

    /// Applies the generators in `gens` (positions, first applied first) to one basis word.
    pub fn apply_word(&self, gens: &[usize], word: &mut [usize]) -> CycScalar {
        let mut coef = self.module.field().one();
        for &p in gens {
            coef = coef * self.module.braid_word(word, p);
        }
        coef
    }

    /// Braid relations between adjacent and distant generators, on every basis word.
    pub fn verify_relations(&self) -> Result<()> {
        let dim = self.module.dim();
        let total = dim.pow(self.n as u32);
        for idx in 0..total {
            let w = word_of(idx, self.n, dim);
            for i in 0..self.n.saturating_sub(1) {
                for j in 0..self.n - 1 {
                    let (lhs, rhs) = if j == i + 1 {
                        (vec![i, j, i], vec![j, i, j])
                    } else if j > i + 1 {
                        (vec![i, j], vec![j, i])
                    } else {
                        continue;
                    };
                    let (mut a, mut b) = (w.clone(), w.clone());
                    let ca = self.apply_word(&lhs, &mut a);
                    let cb = self.apply_word(&rhs, &mut b);
                    if a != b || ca != cb {
                        return Err(Error::structural("braid-relation", format!("generators {i}, {j} fail on word {w:?}")));
                    }
                }
            }
        }
        Ok(())
    }
}

fn check_budget(dim: usize, d: usize, budget: usize) -> Result<usize> {
    match dim.checked_pow(d as u32) {
        Some(t) if t <= budget => Ok(t),
        _ => Err(Error::budget(
            "tensor-budget",
            format!("dim(V)^{d} = {dim}^{d} exceeds the tensor budget {budget}; lower the degree cap or raise the budget"),
        )),
    }
}

/// Columns of `Q_d = Σ_p M(p)` on `V^{⊗d}`, lifting each permutation through `strategy`.
pub fn matsumoto_symmetrizer(v: &YDModule, d: usize, strategy: WordStrategy, budget: usize) -> Result<Vec<SparseVec>> {
    let dim = v.dim();
    let total = check_budget(dim, d, budget)?;
    let rep = BraidWordRep::new(v, d);
    let words: Vec<Vec<usize>> = permutations(d).iter().map(|p| reduced_word(p, strategy)).collect();
    let mut cols = Vec::with_capacity(total);
    for idx in 0..total {
        let w = word_of(idx, d, dim);
        let mut acc = Accumulator::default();
        for gens in &words {
            let mut x = w.clone();
            let c = rep.apply_word(gens, &mut x);
            acc.add_owned(word_index(&x, dim), c);
        }
        cols.push(acc.finish());
    }
    Ok(cols)
}

/// Checks, permutation by permutation and word by word, that both reduced-word strategies give
/// the same braid action, and that both words have length equal to the number of inversions.
pub fn check_matsumoto(v: &YDModule, d: usize, budget: usize) -> Result<bool> {
    let dim = v.dim();
    let total = check_budget(dim, d, budget)?;
    let rep = BraidWordRep::new(v, d);
    for p in permutations(d) {
        let a = reduced_word(&p, WordStrategy::LeftmostDescent);
        let b = reduced_word(&p, WordStrategy::RightmostDescent);
        if a.len() != inversions(&p) || b.len() != inversions(&p) {
            return Ok(false);
        }
        for idx in 0..total {
            let (mut x, mut y) = (word_of(idx, d, dim), word_of(idx, d, dim));
            if rep.apply_word(&a, &mut x) != rep.apply_word(&b, &mut y) || x != y {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// One homogeneous component `B^d`.
#[derive(Clone, Debug)]
pub struct NicholsDegree {
    pub degree: usize,
    /// Pivot words, i.e. the section `B^d -> V^{⊗d}`, as word indices.
    pub pivots: Vec<usize>,
    /// `proj[w]`: coordinates (local to this degree) of the class of word `w`.
    proj: Vec<SparseVec>,
}

impl NicholsDegree {
    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn project_word(&self, w: usize) -> &SparseVec {
        &self.proj[w]
    }
}

/// `B(V)` through some degree, with global basis indices running over all computed degrees.
#[derive(Clone, Debug)]
pub struct TruncatedNichols {
    module: Arc<YDModule>,
    cap: Cap,
    complete: bool,
    degrees: Vec<NicholsDegree>,
    offsets: Vec<usize>,
    degree_of: Vec<usize>,
    coaction: Vec<GroupElt>,
    labels: Vec<String>,
    /// `product[u * N + v]`, `None` when the degree sum lies above the cap.
    product: Vec<Option<SparseVec>>,
    /// `action[g][u]`.
    action: Vec<Vec<SparseVec>>,
    /// `coproduct[u]`: terms `(u1, u2, c)` of `Δ(u) = Σ c u1 ⊗ u2`.
    coproduct: Vec<Vec<(usize, usize, CycScalar)>>,
}

impl TruncatedNichols {
    pub fn build(module: Arc<YDModule>, cap: Cap, budget: usize) -> Result<TruncatedNichols> {
        let dim = module.dim();
        let one = module.field().one();
        let mut degrees = vec![
            NicholsDegree { degree: 0, pivots: vec![0], proj: vec![SparseVec::singleton(0, one.clone())] },
            NicholsDegree {
                degree: 1,
                pivots: (0..dim).collect(),
                proj: (0..dim).map(|i| SparseVec::singleton(i, one.clone())).collect(),
            },
        ];
        let max_degree = match cap {
            Cap::Full => usize::MAX,
            Cap::Degree(d) => d,
        };
        if max_degree == 0 {
            return Err(Error::validation("bad-cap", "degree cap must be at least 1"));
        }
        let mut complete = false;
        let mut d = 2;
        loop {
            if d > max_degree {
                break;
            }
            let cols = matsumoto_symmetrizer(&module, d, WordStrategy::LeftmostDescent, budget)?;
            let total = cols.len();
            let red = rref(transpose(&cols, total), total);
            if red.rank() == 0 {
                complete = true;
                break;
            }
            let mut proj: Vec<Vec<(usize, CycScalar)>> = vec![Vec::new(); total];
            for (r, row) in red.rows.iter().enumerate() {
                for (w, c) in row.iter() {
                    proj[w].push((r, c.clone()));
                }
            }
            let proj = proj.into_iter().map(SparseVec::from_sorted_unchecked).collect();
            degrees.push(NicholsDegree { degree: d, pivots: red.pivots, proj });
            d += 1;
        }
        if dim == 0 {
            complete = true;
        }
        Self::assemble(module, cap, complete, degrees)
    }

    fn assemble(module: Arc<YDModule>, cap: Cap, complete: bool, degrees: Vec<NicholsDegree>) -> Result<Self> {
        let vdim = module.dim();
        let group = module.group().clone();
        let field = module.field();
        let mut offsets = Vec::new();
        let mut degree_of = Vec::new();
        let mut coaction = Vec::new();
        let mut labels = Vec::new();
        for deg in &degrees {
            offsets.push(degree_of.len());
            for &w in &deg.pivots {
                let word = word_of(w, deg.degree, vdim);
                degree_of.push(deg.degree);
                coaction.push(word.iter().fold(group.identity(), |g, &x| group.mul(g, module.degree(x))));
                labels.push(if word.is_empty() {
                    "1".to_string()
                } else {
                    word.iter().map(|&x| module.labels()[x].as_str()).collect::<Vec<_>>().join("·")
                });
            }
        }
        let mut nb = TruncatedNichols {
            module,
            cap,
            complete,
            degrees,
            offsets,
            degree_of,
            coaction,
            labels,
            product: Vec::new(),
            action: Vec::new(),
            coproduct: Vec::new(),
        };
        let n = nb.dim();
        let top = nb.top_degree();
        let mut product = Vec::with_capacity(n * n);
        for u in 0..n {
            for v in 0..n {
                let d = nb.degree_of[u] + nb.degree_of[v];
                product.push(if d > top {
                    if nb.complete {
                        Some(SparseVec::new())
                    } else {
                        None
                    }
                } else {
                    let mut w = nb.section_word(u);
                    w.extend(nb.section_word(v));
                    Some(nb.project(d, word_index(&w, vdim), &field.one()))
                });
            }
        }
        nb.product = product;
        nb.action = group
            .elements()
            .map(|g| {
                (0..n)
                    .map(|u| {
                        let mut coef = field.one();
                        let w: Vec<usize> = nb
                            .section_word(u)
                            .into_iter()
                            .map(|x| {
                                let (y, c) = nb.module.act(g, x);
                                coef = &coef * c;
                                y
                            })
                            .collect();
                        nb.project(nb.degree_of[u], word_index(&w, vdim), &coef)
                    })
                    .collect()
            })
            .collect();
        nb.coproduct = (0..n).map(|u| nb.coproduct_of_word(&nb.section_word(u))).collect();
        Ok(nb)
    }

    /// Expands `Δ(x_{i1})⋯Δ(x_{id})` in `T(V) ⊗ T(V)` and projects both factors.
    fn coproduct_of_word(&self, word: &[usize]) -> Vec<(usize, usize, CycScalar)> {
        let v = &*self.module;
        let group = v.group();
        let field = v.field();
        // Terms (left word, right word, right degree, coefficient).
        let mut terms: Vec<(Vec<usize>, Vec<usize>, GroupElt, CycScalar)> =
            vec![(vec![], vec![], group.identity(), field.one())];
        for &x in word {
            let mut next = Vec::with_capacity(terms.len() * 2);
            for (l, r, g, c) in terms {
                // (l ⊗ r)(x ⊗ 1) = l (g_r · x) ⊗ r
                let (y, a) = v.act(g, x);
                let mut l2 = l.clone();
                l2.push(y);
                next.push((l2, r.clone(), g, &c * a));
                // (l ⊗ r)(1 ⊗ x) = l ⊗ r x
                let mut r2 = r;
                r2.push(x);
                next.push((l, r2, group.mul(g, v.degree(x)), c));
            }
            terms = next;
        }
        let vdim = v.dim();
        let mut acc: FxHashMap<(usize, usize), CycScalar> = FxHashMap::default();
        for (l, r, _, c) in terms {
            let pl = self.project(l.len(), word_index(&l, vdim), &c);
            if pl.is_zero() {
                continue;
            }
            let pr = self.project(r.len(), word_index(&r, vdim), &field.one());
            for (a, x) in pl.iter() {
                for (b, y) in pr.iter() {
                    let t = x * y;
                    match acc.get_mut(&(a, b)) {
                        Some(s) => *s += &t,
                        None => {
                            acc.insert((a, b), t);
                        }
                    }
                }
            }
        }
        let mut out: Vec<(usize, usize, CycScalar)> =
            acc.into_iter().filter(|(_, c)| !c.is_zero()).map(|((a, b), c)| (a, b, c)).collect();
        out.sort_unstable_by_key(|t| (t.0, t.1));
        out
    }

    /// Class of `coef * word` in global coordinates (zero above the top degree of a complete algebra).
    pub fn project(&self, d: usize, w: usize, coef: &CycScalar) -> SparseVec {
        match self.degrees.get(d) {
            Some(deg) => {
                let off = self.offsets[d];
                SparseVec::from_sorted_unchecked(deg.proj[w].iter().map(|(k, c)| (k + off, c * coef)).filter(|(_, c)| !c.is_zero()).collect())
            }
            None => {
                assert!(self.complete, "projection above the cap");
                SparseVec::new()
            }
        }
    }

    /// Class of a tensor given in word coordinates of degree `d`.
    pub fn project_tensor(&self, d: usize, t: &SparseVec) -> Result<SparseVec> {
        if d > self.top_degree() && !self.complete {
            return Err(Error::CapExceeded { degree: d, cap: self.top_degree() });
        }
        let mut acc = Accumulator::default();
        for (w, c) in t.iter() {
            acc.add_scaled(&self.project(d, w, &self.module.field().one()), c);
        }
        Ok(acc.finish())
    }

    pub fn module(&self) -> &Arc<YDModule> {
        &self.module
    }

    pub fn cap(&self) -> Cap {
        self.cap
    }

    /// Whether the algebra vanishes above `top_degree` (so nothing was truncated).
    pub fn is_complete(&self) -> bool {
        self.complete
    }

    pub fn top_degree(&self) -> usize {
        self.degrees.len() - 1
    }

    pub fn dim(&self) -> usize {
        self.degree_of.len()
    }

    pub fn hilbert_series(&self) -> Vec<usize> {
        self.degrees.iter().map(NicholsDegree::dim).collect()
    }

    pub fn degree_component(&self, d: usize) -> Option<&NicholsDegree> {
        self.degrees.get(d)
    }

    pub fn offset(&self, d: usize) -> usize {
        self.offsets[d]
    }

    pub fn degree(&self, u: usize) -> usize {
        self.degree_of[u]
    }

    /// Coaction degree of a basis element.
    pub fn coaction(&self, u: usize) -> GroupElt {
        self.coaction[u]
    }

    pub fn label(&self, u: usize) -> &str {
        &self.labels[u]
    }

    pub fn section_word(&self, u: usize) -> Vec<usize> {
        let d = self.degree_of[u];
        word_of(self.degrees[d].pivots[u - self.offsets[d]], d, self.module.dim())
    }

    /// Product of two basis elements; errors when the degree sum is above the cap.
    pub fn product(&self, u: usize, v: usize) -> Result<&SparseVec> {
        let n = self.dim();
        self.product[u * n + v].as_ref().ok_or(Error::CapExceeded {
            degree: self.degree_of[u] + self.degree_of[v],
            cap: self.top_degree(),
        })
    }

    pub fn act(&self, g: GroupElt, u: usize) -> &SparseVec {
        &self.action[g][u]
    }

    pub fn coproduct(&self, u: usize) -> &[(usize, usize, CycScalar)] {
        &self.coproduct[u]
    }

    /// Associativity on all basis triples inside the cap.
    pub fn verify_associativity(&self) -> Result<()> {
        let n = self.dim();
        let top = self.top_degree();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if self.degree_of[a] + self.degree_of[b] + self.degree_of[c] > top {
                        continue;
                    }
                    let mut left = Accumulator::default();
                    for (k, x) in self.product(a, b)?.iter() {
                        left.add_scaled(self.product(k, c)?, x);
                    }
                    let mut right = Accumulator::default();
                    for (k, x) in self.product(b, c)?.iter() {
                        right.add_scaled(self.product(a, k)?, x);
                    }
                    if left.finish() != right.finish() {
                        return Err(Error::structural(
                            "not-associative",
                            format!("({} {}) {} differs", self.labels[a], self.labels[b], self.labels[c]),
                        ));
                    }
                }
            }
        }
        Ok(())
    }

    /// Dimension of the primitive space `{u : Δ(u) = u⊗1 + 1⊗u}` inside `B^d`.
    pub fn primitive_dimension(&self, d: usize) -> usize {
        let n = self.dim();
        let Some(deg) = self.degrees.get(d) else { return 0 };
        let off = self.offsets[d];
        let cols: Vec<SparseVec> = (0..deg.dim())
            .map(|k| {
                SparseVec::from_terms(
                    self.coproduct[off + k]
                        .iter()
                        .filter(|(a, b, _)| self.degree_of[*a] != 0 && self.degree_of[*b] != 0)
                        .map(|(a, b, c)| (a * n + b, c.clone())),
                )
            })
            .collect();
        kernel_of_columns(&cols, n * n).len()
    }

    /// Nichols property inside the cap: no primitives in degrees 2 and higher.
    pub fn verify_primitives(&self) -> Result<()> {
        for d in 2..=self.top_degree() {
            let p = self.primitive_dimension(d);
            if p != 0 {
                return Err(Error::structural("extra-primitives", format!("degree {d} has {p} primitive elements")));
            }
        }
        Ok(())
    }

    /// Coassociativity of the braided coproduct on every basis element.
    pub fn verify_coassociativity(&self) -> Result<()> {
        for u in 0..self.dim() {
            let mut left: FxHashMap<(usize, usize, usize), CycScalar> = FxHashMap::default();
            let mut right: FxHashMap<(usize, usize, usize), CycScalar> = FxHashMap::default();
            for (a, b, c) in &self.coproduct[u] {
                for (x, y, e) in &self.coproduct[*a] {
                    let t = c * e;
                    *left.entry((*x, *y, *b)).or_insert_with(|| t.field().zero()) += &t;
                }
                for (x, y, e) in &self.coproduct[*b] {
                    let t = c * e;
                    *right.entry((*a, *x, *y)).or_insert_with(|| t.field().zero()) += &t;
                }
            }
            left.retain(|_, c| !c.is_zero());
            right.retain(|_, c| !c.is_zero());
            if left != right {
                return Err(Error::structural("not-coassociative", format!("fails on {}", self.labels[u])));
            }
        }
        Ok(())
    }

    /// True iff the braiding is `-flip`; in that case the Hilbert series is checked against
    /// binomial coefficients.
    pub fn exterior_check(&self) -> Result<bool> {
        if !self.module.is_minus_flip() {
            return Ok(false);
        }
        let n = self.module.dim();
        let mut binom = 1usize;
        for (d, got) in self.hilbert_series().into_iter().enumerate() {
            if got != binom {
                return Err(Error::structural(
                    "not-exterior",
                    format!("degree {d} has dimension {got}, expected {binom}"),
                ));
            }
            binom = binom * (n - d.min(n)) / (d + 1);
        }
        if self.complete && self.top_degree() != n {
            return Err(Error::structural("not-exterior", "top degree differs from dim V"));
        }
        Ok(true)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let vdim = self.module.dim();
        let degrees: Vec<serde_json::Value> = self
            .degrees
            .iter()
            .map(|deg| {
                let section: Vec<Vec<usize>> = deg.pivots.iter().map(|&w| word_of(w, deg.degree, vdim)).collect();
                let projection: Vec<(usize, &SparseVec)> =
                    deg.proj.iter().enumerate().filter(|(_, p)| !p.is_zero()).collect();
                serde_json::json!({ "degree": deg.degree, "dim": deg.dim(), "section": section, "projection": projection })
            })
            .collect();
        let n = self.dim();
        let product: Vec<(usize, usize, &SparseVec)> = (0..n)
            .flat_map(|u| (0..n).map(move |v| (u, v)))
            .filter_map(|(u, v)| self.product[u * n + v].as_ref().filter(|p| !p.is_zero()).map(|p| (u, v, p)))
            .collect();
        serde_json::json!({
            "module": self.module.to_json(),
            "cap": self.cap,
            "complete": self.complete,
            "hilbert_series": self.hilbert_series(),
            "dim": n,
            "labels": self.labels,
            "degrees": degrees,
            "product": product,
            "coproduct": self.coproduct,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::FinGroup;
    use crate::racks::{Rack, RackCocycle};
    use crate::yetter_drinfeld::IndexData;

    fn rack_module(n: usize, chi: bool) -> Arc<YDModule> {
        let g = Arc::new(FinGroup::symmetric(n).unwrap());
        let r = Arc::new(Rack::transpositions(g).unwrap());
        let c = if chi { RackCocycle::chi(r).unwrap() } else { RackCocycle::minus_one(r) };
        Arc::new(YDModule::rack_module(Arc::new(c)).unwrap())
    }

    #[test]
    fn reduced_words_have_inversion_length() {
        for p in permutations(5) {
            for s in [WordStrategy::LeftmostDescent, WordStrategy::RightmostDescent] {
                assert_eq!(reduced_word(&p, s).len(), inversions(&p));
            }
        }
    }

    #[test]
    fn degree_two_symmetrizer_is_one_plus_c() {
        let v = rack_module(3, false);
        let q = matsumoto_symmetrizer(&v, 2, WordStrategy::LeftmostDescent, 100).unwrap();
        let c = v.braiding_matrix();
        for (w, col) in q.iter().enumerate() {
            let expected = SparseVec::singleton(w, v.field().one()).add(&c[w]);
            assert_eq!(col, &expected);
        }
    }

    #[test]
    fn s3_minus_one_hilbert_series() {
        let v = rack_module(3, false);
        let nb = TruncatedNichols::build(v, Cap::Degree(5), DEFAULT_TENSOR_BUDGET).unwrap();
        assert_eq!(nb.hilbert_series(), vec![1, 3, 4, 3, 1]);
        assert!(nb.is_complete());
        nb.verify_associativity().unwrap();
        nb.verify_coassociativity().unwrap();
        nb.verify_primitives().unwrap();
        assert!(!nb.exterior_check().unwrap());
    }

    #[test]
    fn dihedral_is_exterior() {
        let g = Arc::new(FinGroup::dihedral(12).unwrap());
        let data = IndexData::new(12, vec![(1, 6), (5, 6)], vec![]).unwrap();
        let v = Arc::new(YDModule::m_i(g, &data).unwrap());
        let nb = TruncatedNichols::build(v, Cap::Full, DEFAULT_TENSOR_BUDGET).unwrap();
        assert_eq!(nb.hilbert_series(), vec![1, 4, 6, 4, 1]);
        assert!(nb.exterior_check().unwrap());
        nb.verify_associativity().unwrap();
        nb.verify_primitives().unwrap();
    }

    #[test]
    fn budget_error_is_explicit() {
        let v = rack_module(4, false);
        let err = TruncatedNichols::build(v, Cap::Full, 1000).unwrap_err();
        assert_eq!(err.code(), "tensor-budget");
    }

    #[test]
    fn capped_product_errors_above_cap() {
        let v = rack_module(4, true);
        let nb = TruncatedNichols::build(v, Cap::Degree(2), DEFAULT_TENSOR_BUDGET).unwrap();
        assert!(!nb.is_complete());
        let x = nb.offset(1);
        let xy = nb.offset(2);
        assert!(matches!(nb.product(x, xy), Err(Error::CapExceeded { .. })));
        nb.verify_primitives().unwrap();
    }

    #[test]
    fn braid_relations_hold() {
        let v = rack_module(4, true);
        BraidWordRep::new(&v, 3).verify_relations().unwrap();
    }
}
