//! Sparse exact linear algebra over cyclotomic fields.
//!
//! Elimination is division-based Gauss-Jordan with a sparsest-row pivot choice; the matrices that
//! arise (symmetrizers, invariance systems, coproduct kernels) are small and very sparse.

use std::collections::BTreeMap;

use rustc_hash::FxHashMap;
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::scalars::CycScalar;

/// Sparse vector with strictly increasing indices and no stored zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SparseVec {
    entries: Vec<(usize, CycScalar)>,
}

impl SparseVec {
    pub fn new() -> Self {
        SparseVec { entries: Vec::new() }
    }

    pub fn singleton(i: usize, c: CycScalar) -> Self {
        if c.is_zero() {
            SparseVec::new()
        } else {
            SparseVec { entries: vec![(i, c)] }
        }
    }

    /// Sums duplicate indices and drops zeros.
    pub fn from_terms(terms: impl IntoIterator<Item = (usize, CycScalar)>) -> Self {
        let mut acc = Accumulator::default();
        for (i, c) in terms {
            acc.add(i, &c);
        }
        acc.finish()
    }

    /// Caller guarantees sorted, unique, nonzero entries.
    pub(crate) fn from_sorted_unchecked(entries: Vec<(usize, CycScalar)>) -> Self {
        debug_assert!(entries.windows(2).all(|w| w[0].0 < w[1].0));
        debug_assert!(entries.iter().all(|(_, c)| !c.is_zero()));
        SparseVec { entries }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &CycScalar)> + '_ {
        self.entries.iter().map(|(i, c)| (*i, c))
    }

    pub fn entries(&self) -> &[(usize, CycScalar)] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<(usize, CycScalar)> {
        self.entries
    }

    pub fn get(&self, i: usize) -> Option<&CycScalar> {
        self.entries.binary_search_by_key(&i, |e| e.0).ok().map(|k| &self.entries[k].1)
    }

    pub fn leading(&self) -> Option<(usize, &CycScalar)> {
        self.entries.first().map(|(i, c)| (*i, c))
    }

    pub fn scale(&self, c: &CycScalar) -> SparseVec {
        if c.is_zero() {
            return SparseVec::new();
        }
        SparseVec { entries: self.entries.iter().map(|(i, x)| (*i, x * c)).collect() }
    }

    /// `self + c * other`, by a sorted merge.
    pub fn add_scaled(&self, other: &SparseVec, c: &CycScalar) -> SparseVec {
        if c.is_zero() || other.is_zero() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut a, mut b) = (self.entries.iter().peekable(), other.entries.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (Some((i, x)), Some((j, y))) => {
                    if i < j {
                        out.push((*i, x.clone()));
                        a.next();
                    } else if j < i {
                        out.push((*j, y * c));
                        b.next();
                    } else {
                        let s = x + &(y * c);
                        if !s.is_zero() {
                            out.push((*i, s));
                        }
                        a.next();
                        b.next();
                    }
                }
                (Some((i, x)), None) => {
                    out.push((*i, x.clone()));
                    a.next();
                }
                (None, Some((j, y))) => {
                    out.push((*j, y * c));
                    b.next();
                }
                (None, None) => break,
            }
        }
        SparseVec { entries: out }
    }

    pub fn add(&self, other: &SparseVec) -> SparseVec {
        match other.entries.first() {
            None => self.clone(),
            Some((_, c)) => self.add_scaled(other, &c.field().one()),
        }
    }

    pub fn sub(&self, other: &SparseVec) -> SparseVec {
        match other.entries.first() {
            None => self.clone(),
            Some((_, c)) => self.add_scaled(other, &c.field().from_int(-1)),
        }
    }

    /// Inner product against a dense-by-lookup functional.
    pub fn dot_with(&self, f: impl Fn(usize) -> Option<CycScalar>) -> Option<CycScalar> {
        let mut acc: Option<CycScalar> = None;
        for (i, c) in self.iter() {
            if let Some(v) = f(i) {
                let t = c * &v;
                acc = Some(match acc {
                    None => t,
                    Some(a) => a + t,
                });
            }
        }
        acc
    }
}

impl Serialize for SparseVec {
    /// Serialized as `[[index, scalar], ...]`.
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.entries.len()))?;
        for e in &self.entries {
            seq.serialize_element(e)?;
        }
        seq.end()
    }
}

/// Hash-map accumulator for building sparse vectors out of many scattered terms.
#[derive(Default, Debug, Clone)]
pub struct Accumulator {
    map: FxHashMap<usize, CycScalar>,
}

impl Accumulator {
    pub fn add(&mut self, i: usize, c: &CycScalar) {
        if c.is_zero() {
            return;
        }
        match self.map.get_mut(&i) {
            Some(x) => *x += c,
            None => {
                self.map.insert(i, c.clone());
            }
        }
    }

    pub fn add_owned(&mut self, i: usize, c: CycScalar) {
        if c.is_zero() {
            return;
        }
        match self.map.get_mut(&i) {
            Some(x) => *x += &c,
            None => {
                self.map.insert(i, c);
            }
        }
    }

    pub fn add_scaled(&mut self, v: &SparseVec, c: &CycScalar) {
        if c.is_zero() {
            return;
        }
        for (i, x) in v.iter() {
            self.add_owned(i, x * c);
        }
    }

    pub fn is_empty(&self) -> bool {
        self.map.values().all(CycScalar::is_zero)
    }

    pub fn finish(self) -> SparseVec {
        let mut entries: Vec<(usize, CycScalar)> = self.map.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        entries.sort_unstable_by_key(|e| e.0);
        SparseVec { entries }
    }
}

/// Reduced row echelon form: `rows[r]` has a leading 1 in column `pivots[r]`, and every pivot
/// column is zero in all other rows.
#[derive(Clone, Debug)]
pub struct Rref {
    pub rows: Vec<SparseVec>,
    pub pivots: Vec<usize>,
    pub ncols: usize,
}

impl Rref {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Basis of the right kernel `{v : M v = 0}`, one vector per free column, in column order.
    pub fn nullspace(&self) -> Vec<SparseVec> {
        let pivot_set: FxHashMap<usize, usize> = self.pivots.iter().enumerate().map(|(r, &p)| (p, r)).collect();
        // Column f of the RREF, read off the rows once.
        let mut col_entries: FxHashMap<usize, Vec<(usize, CycScalar)>> = FxHashMap::default();
        for (r, row) in self.rows.iter().enumerate() {
            for (j, c) in row.iter() {
                if !pivot_set.contains_key(&j) {
                    col_entries.entry(j).or_default().push((self.pivots[r], -c));
                }
            }
        }
        let mut out = Vec::new();
        for f in 0..self.ncols {
            if pivot_set.contains_key(&f) {
                continue;
            }
            let one = match self.rows.first().and_then(|r| r.leading()) {
                Some((_, c)) => c.field().one(),
                None => crate::scalars::CycField::get(1).expect("conductor 1").one(),
            };
            let mut terms = col_entries.remove(&f).unwrap_or_default();
            terms.push((f, one));
            terms.sort_unstable_by_key(|e| e.0);
            out.push(SparseVec::from_sorted_unchecked(terms));
        }
        out
    }
}

/// Gauss-Jordan elimination of the given rows (each of length `ncols`).
pub fn rref(rows: Vec<SparseVec>, ncols: usize) -> Rref {
    // Invariant: a row waiting in `buckets[j]` has leading column j, and no earlier pivot
    // column survives in it.
    let mut buckets: BTreeMap<usize, Vec<SparseVec>> = BTreeMap::new();
    for r in rows.into_iter().filter(|r| !r.is_zero()) {
        buckets.entry(r.leading().expect("nonzero").0).or_default().push(r);
    }
    let mut out_rows: Vec<SparseVec> = Vec::new();
    let mut pivots = Vec::new();
    while let Some((j, mut cands)) = buckets.pop_first() {
        let best = (0..cands.len()).min_by_key(|&k| cands[k].nnz()).expect("nonempty bucket");
        let p = cands.swap_remove(best);
        let inv = p.leading().expect("nonzero").1.inv().expect("nonzero pivot");
        let p = p.scale(&inv);
        for r in cands {
            let c = -r.leading().expect("nonzero").1;
            let red = r.add_scaled(&p, &c);
            if let Some((lead, _)) = red.leading() {
                buckets.entry(lead).or_default().push(red);
            }
        }
        pivots.push(j);
        out_rows.push(p);
    }
    for i in (0..out_rows.len()).rev() {
        let (done, rest) = out_rows.split_at_mut(i);
        let piv_row = &rest[0];
        for row in done.iter_mut() {
            if let Some(c) = row.get(pivots[i]) {
                let c = -c;
                *row = row.add_scaled(piv_row, &c);
            }
        }
    }
    Rref { rows: out_rows, pivots, ncols }
}

/// Rows of the transpose of a matrix given by its columns.
pub fn transpose(cols: &[SparseVec], nrows: usize) -> Vec<SparseVec> {
    let mut rows: Vec<Vec<(usize, CycScalar)>> = vec![Vec::new(); nrows];
    for (j, col) in cols.iter().enumerate() {
        for (i, c) in col.iter() {
            rows[i].push((j, c.clone()));
        }
    }
    rows.into_iter().map(SparseVec::from_sorted_unchecked).collect()
}

/// Kernel of the linear map whose columns are `cols`, as vectors over the column index set.
pub fn kernel_of_columns(cols: &[SparseVec], nrows: usize) -> Vec<SparseVec> {
    rref(transpose(cols, nrows), cols.len()).nullspace()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::CycField;

    fn v(m: u32, xs: &[(usize, i64)]) -> SparseVec {
        let f = CycField::get(m).unwrap();
        SparseVec::from_terms(xs.iter().map(|&(i, c)| (i, f.from_int(c))))
    }

    #[test]
    fn rref_of_rank_two_matrix() {
        let rows = vec![v(1, &[(0, 1), (1, 2), (2, 3)]), v(1, &[(0, 2), (1, 4), (2, 6)]), v(1, &[(1, 1), (2, 1)])];
        let r = rref(rows, 3);
        assert_eq!(r.pivots, vec![0, 1]);
        assert_eq!(r.rows[0], v(1, &[(0, 1), (2, 1)]));
        assert_eq!(r.rows[1], v(1, &[(1, 1), (2, 1)]));
        let ns = r.nullspace();
        assert_eq!(ns, vec![v(1, &[(0, -1), (1, -1), (2, 1)])]);
    }

    #[test]
    fn kernel_over_cyclotomic_field() {
        let f = CycField::get(12).unwrap();
        let w = f.root_of_unity(1);
        // Columns (1, w) and (w, w^2) are dependent: second = w * first.
        let c0 = SparseVec::from_terms([(0, f.one()), (1, w.clone())]);
        let c1 = c0.scale(&w);
        let k = kernel_of_columns(&[c0.clone(), c1.clone()], 2);
        assert_eq!(k.len(), 1);
        let image = c0.scale(k[0].get(0).unwrap()).add(&c1.scale(k[0].get(1).unwrap()));
        assert!(image.is_zero());
    }
}
