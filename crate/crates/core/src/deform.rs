//! Cocycle deformations `A_σ` of a bosonization and the relation checks that identify them
//! with the known quadratic liftings over dihedral and symmetric groups.

use std::collections::BTreeMap;
use std::sync::{Arc, OnceLock};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::bosonization::BosonHopf;
use crate::cocycles::{
    check_eq1_eq2, lift_functional, BilinearForm, Convolution, DihedralCoefficients, Family, PairFunctional,
};
use crate::error::{Error, Result};
use crate::groups::{FinGroup, GroupElt};
use crate::linalg::{Accumulator, SparseVec};
use crate::nichols::{Cap, TruncatedNichols, DEFAULT_TENSOR_BUDGET};
use crate::racks::{Rack, RackCocycle};
use crate::report::{Witness, SCHEMA_VERSION};
use crate::scalars::{small_rationals, CycField, CycScalar};
use crate::yetter_drinfeld::{IndexData, YDModule};

/// `A_σ`: the algebra `A` with product `m_σ(a,b) = σ(a1,b1) a2 b2 σ⁻¹(a3,b3)`.
pub struct DeformedAlgebra {
    base: Arc<BosonHopf>,
    sigma: PairFunctional,
    sigma_inv: PairFunctional,
    through: usize,
    table: OnceLock<Vec<Option<SparseVec>>>,
}

impl DeformedAlgebra {
    pub fn new(base: Arc<BosonHopf>, sigma: PairFunctional, sigma_inv: PairFunctional) -> Self {
        let through = sigma.valid_through().min(sigma_inv.valid_through());
        DeformedAlgebra { base, sigma, sigma_inv, through, table: OnceLock::new() }
    }

    /// `σ = e^{η̃}` and `σ⁻¹ = e^{-η̃}` for a bilinear form on `V`.
    pub fn from_form(base: Arc<BosonHopf>, form: &BilinearForm) -> Result<Self> {
        let eta = lift_functional(form, &base)?;
        let (sigma, sigma_inv) = {
            let conv = Convolution::new(&base);
            let minus = -base.field().one();
            (conv.exp(&eta)?, conv.exp(&eta.scale(&minus))?)
        };
        Ok(Self::new(base, sigma, sigma_inv))
    }

    pub fn base(&self) -> &Arc<BosonHopf> {
        &self.base
    }

    pub fn sigma(&self) -> &PairFunctional {
        &self.sigma
    }

    pub fn sigma_inv(&self) -> &PairFunctional {
        &self.sigma_inv
    }

    fn double_coproduct(&self, u: usize) -> Vec<(usize, usize, usize, CycScalar)> {
        let a = &self.base;
        let mut out = Vec::new();
        for (x, u3, c) in a.coproduct(u) {
            for (u1, u2, e) in a.coproduct(*x) {
                out.push((*u1, *u2, *u3, c * e));
            }
        }
        out
    }

    fn compute_product(&self, u: usize, v: usize) -> Result<SparseVec> {
        let a = &self.base;
        let left = self.double_coproduct(u);
        let right = self.double_coproduct(v);
        let mut acc = Accumulator::default();
        for (u1, u2, u3, cu) in &left {
            for (v1, v2, v3, cv) in &right {
                let Some(s) = self.sigma.get(*u1, *v1) else { continue };
                let Some(t) = self.sigma_inv.get(*u3, *v3) else { continue };
                let c = &(&(cu * cv) * s) * t;
                if !c.is_zero() {
                    acc.add_scaled(&*a.product(*u2, *v2)?, &c);
                }
            }
        }
        Ok(acc.finish())
    }

    fn check_range(&self, u: usize, v: usize) -> Result<()> {
        let a = &self.base;
        if !a.in_cap(u, v) {
            return Err(Error::CapExceeded { degree: a.degree(u) + a.degree(v), cap: a.top_degree() });
        }
        if a.degree(u).max(a.degree(v)) > self.through {
            return Err(Error::CapExceeded { degree: a.degree(u).max(a.degree(v)), cap: self.through });
        }
        Ok(())
    }

    /// `m_σ(u, v)` on basis elements.
    pub fn product(&self, u: usize, v: usize) -> Result<SparseVec> {
        self.check_range(u, v)?;
        if let Some(t) = self.table.get() {
            if let Some(p) = &t[u * self.base.dim() + v] {
                return Ok(p.clone());
            }
        }
        self.compute_product(u, v)
    }

    /// Materializes every in-range product; used by the exhaustive checks.
    pub fn product_table(&self) -> &[Option<SparseVec>] {
        self.table.get_or_init(|| {
            let n = self.base.dim();
            (0..n * n)
                .into_par_iter()
                .map(|k| {
                    let (u, v) = (k / n, k % n);
                    self.check_range(u, v).ok()?;
                    self.compute_product(u, v).ok()
                })
                .collect()
        })
    }

    pub fn mul(&self, x: &SparseVec, y: &SparseVec) -> Result<SparseVec> {
        let mut acc = Accumulator::default();
        for (u, a) in x.iter() {
            for (v, b) in y.iter() {
                acc.add_scaled(&self.product(u, v)?, &(a * b));
            }
        }
        Ok(acc.finish())
    }

    /// Deformed product of a word of basis elements; the empty word is the unit.
    pub fn eval_word(&self, word: &[usize]) -> Result<SparseVec> {
        let one = self.base.field().one();
        let mut acc = SparseVec::singleton(self.base.unit(), one.clone());
        for &u in word {
            acc = self.mul(&acc, &SparseVec::singleton(u, one.clone()))?;
        }
        Ok(acc)
    }

    /// `z_i ·_σ z_j = η(x_i,x_j)(1 - g_i g_j) + z_i z_j` for every pair of degree-one generators.
    pub fn check_closed_formula(&self, form: &BilinearForm) -> Option<Witness> {
        let a = &self.base;
        let v = form.module();
        let d = v.dim();
        let one = a.field().one();
        (0..d * d).find_map(|k| {
            let (i, j) = (k / d, k % d);
            let (zi, zj) = (a.generator(i), a.generator(j));
            let lhs = self.product(zi, zj).ok()?;
            let gg = a.group().mul(v.degree(i), v.degree(j));
            let c = form.get(i, j);
            let unit_part = SparseVec::from_terms([(a.unit(), one.clone()), (a.grouplike(gg), -one.clone())]);
            let rhs = unit_part.scale(c).add(&*a.product(zi, zj).ok()?);
            (lhs != rhs).then(|| Witness {
                indices: vec![zi, zj],
                labels: vec![a.label(zi), a.label(zj)],
                lhs: a.format(&lhs),
                rhs: a.format(&rhs),
            })
        })
    }

    /// `(uv)w = u(vw)` and the unit laws on every triple inside the cap.
    pub fn check_associativity(&self) -> Option<Witness> {
        let a = &self.base;
        let n = a.dim();
        let table = self.product_table();
        let unit = a.unit();
        let unit_fail = (0..n).find_map(|u| {
            let e = SparseVec::singleton(u, a.field().one());
            let l = table[unit * n + u].as_ref()?;
            let r = table[u * n + unit].as_ref()?;
            (l != &e || r != &e).then(|| Witness {
                indices: vec![u],
                labels: vec![a.label(u)],
                lhs: a.format(l),
                rhs: a.format(r),
            })
        });
        if unit_fail.is_some() {
            return unit_fail;
        }
        let mul_table = |x: &SparseVec, w: usize, left: bool| -> Option<SparseVec> {
            let mut acc = Accumulator::default();
            for (u, c) in x.iter() {
                let p = if left { table[u * n + w].as_ref()? } else { table[w * n + u].as_ref()? };
                acc.add_scaled(p, c);
            }
            Some(acc.finish())
        };
        (0..n).into_par_iter().find_map_first(|x| {
            for y in 0..n {
                let Some(xy) = table[x * n + y].as_ref() else { continue };
                for z in 0..n {
                    let Some(yz) = table[y * n + z].as_ref() else { continue };
                    if !a.is_uncapped() && a.degree(x) + a.degree(y) + a.degree(z) > a.top_degree() {
                        continue;
                    }
                    let (Some(l), Some(r)) = (mul_table(xy, z, true), mul_table(yz, x, false)) else { continue };
                    if l != r {
                        return Some(Witness {
                            indices: vec![x, y, z],
                            labels: vec![a.label(x), a.label(y), a.label(z)],
                            lhs: a.format(&l),
                            rhs: a.format(&r),
                        });
                    }
                }
            }
            None
        })
    }

    /// `S_σ(a) = σ(a1, S(a2)) S(a3) σ⁻¹(S(a4), a5)`, checked against the antipode axiom for
    /// `(A, m_σ, Δ)`; a failure is a hard error.
    pub fn antipode(&self) -> Result<Vec<SparseVec>> {
        let a = &self.base;
        let s = a.antipode()?;
        let field = a.field();
        let n = a.dim();
        let unit = |u: usize| SparseVec::singleton(u, field.one());
        // Left and right scalar factors, as functionals on A.
        let left: Vec<CycScalar> = (0..n)
            .map(|u| {
                let mut t = field.zero();
                for (u1, u2, c) in a.coproduct(u) {
                    t += &(c * &self.sigma.eval(&unit(*u1), &s[*u2], field));
                }
                t
            })
            .collect();
        let right: Vec<CycScalar> = (0..n)
            .map(|u| {
                let mut t = field.zero();
                for (u1, u2, c) in a.coproduct(u) {
                    t += &(c * &self.sigma_inv.eval(&s[*u1], &unit(*u2), field));
                }
                t
            })
            .collect();
        let out: Vec<SparseVec> = (0..n)
            .map(|u| {
                let mut acc = Accumulator::default();
                for (u1, u2, u3, c) in self.double_coproduct(u) {
                    let k = &(&c * &left[u1]) * &right[u3];
                    if !k.is_zero() {
                        acc.add_scaled(&s[u2], &k);
                    }
                }
                acc.finish()
            })
            .collect();
        self.product_table();
        let bad = (0..n).into_par_iter().find_map_first(|u| {
            let expect = SparseVec::singleton(a.unit(), a.counit(u)).add(&SparseVec::new());
            let mut l = SparseVec::new();
            let mut r = SparseVec::new();
            for (u1, u2, c) in a.coproduct(u) {
                let one = unit(*u2);
                match (self.mul(&out[*u1], &one), self.mul(&unit(*u1), &out[*u2])) {
                    (Ok(x), Ok(y)) => {
                        l = l.add_scaled(&x, c);
                        r = r.add_scaled(&y, c);
                    }
                    _ => return Some(u),
                }
            }
            let expect = if expect.iter().all(|(_, c)| c.is_zero()) { SparseVec::new() } else { expect };
            (l != expect || r != expect).then_some(u)
        });
        if let Some(u) = bad {
            return Err(Error::structural(
                "deformed-antipode",
                format!("antipode axiom fails for the deformed product at {}", a.label(u)),
            ));
        }
        Ok(out)
    }
}

/// `Σ c · (word) = parameter · (1 - grouplike)`, with words of basis elements of `A`.
#[derive(Clone, Debug)]
pub struct RelationTemplate {
    pub name: String,
    pub terms: Vec<(CycScalar, Vec<usize>)>,
    pub parameter: CycScalar,
    pub grouplike: GroupElt,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RelationResult {
    pub name: String,
    pub lhs: String,
    pub rhs: String,
    pub pass: bool,
}

impl RelationTemplate {
    pub fn new(name: impl Into<String>, terms: Vec<(CycScalar, Vec<usize>)>, parameter: CycScalar, grouplike: GroupElt) -> Self {
        RelationTemplate { name: name.into(), terms, parameter, grouplike }
    }

    /// A relation `Σ terms = 0`.
    pub fn homogeneous(name: impl Into<String>, terms: Vec<(CycScalar, Vec<usize>)>, a: &BosonHopf) -> Self {
        Self::new(name, terms, a.field().zero(), a.group().identity())
    }

    pub fn lhs(&self, d: &DeformedAlgebra) -> Result<SparseVec> {
        let mut acc = Accumulator::default();
        for (c, w) in &self.terms {
            acc.add_scaled(&d.eval_word(w)?, c);
        }
        Ok(acc.finish())
    }

    pub fn rhs(&self, a: &BosonHopf) -> SparseVec {
        let one = a.field().one();
        SparseVec::from_terms([(a.unit(), one.clone()), (a.grouplike(self.grouplike), -one)]).scale(&self.parameter)
    }

    pub fn evaluate(&self, d: &DeformedAlgebra) -> RelationResult {
        let a = d.base();
        let rhs = self.rhs(a);
        match self.lhs(d) {
            Ok(lhs) => RelationResult { name: self.name.clone(), lhs: a.format(&lhs), rhs: a.format(&rhs), pass: lhs == rhs },
            Err(e) => RelationResult { name: self.name.clone(), lhs: format!("error: {e}"), rhs: a.format(&rhs), pass: false },
        }
    }
}

/// Evaluates a family of relations and reports it as one line: the first failure, or a count.
fn evaluate_family(name: &str, family: &[RelationTemplate], d: &DeformedAlgebra) -> RelationResult {
    let results: Vec<RelationResult> = family.par_iter().map(|r| r.evaluate(d)).collect();
    match results.into_iter().find(|r| !r.pass) {
        Some(r) => RelationResult { name: format!("{name}: {}", r.name), ..r },
        None => RelationResult {
            name: name.to_string(),
            lhs: format!("{} instances", family.len()),
            rhs: format!("{} instances", family.len()),
            pass: true,
        },
    }
}

/// Theorem-level verdict: every relation of a presentation evaluated inside `A_σ`.
#[derive(Clone, Debug, Serialize)]
pub struct TheoremReport {
    pub schema_version: u32,
    pub theorem: String,
    pub instance: String,
    pub parameters: BTreeMap<String, String>,
    pub relations: Vec<RelationResult>,
    pub overall: bool,
}

impl TheoremReport {
    fn new(theorem: &str, instance: String, parameters: BTreeMap<String, String>, relations: Vec<RelationResult>) -> Self {
        let overall = relations.iter().all(|r| r.pass);
        TheoremReport { schema_version: SCHEMA_VERSION, theorem: theorem.into(), instance, parameters, relations, overall }
    }

    pub fn relation(&self, name: &str) -> Option<&RelationResult> {
        self.relations.iter().find(|r| r.name == name)
    }

    pub fn failures(&self) -> impl Iterator<Item = &RelationResult> {
        self.relations.iter().filter(|r| !r.pass)
    }
}

/// Lifting data over the dihedral group, keyed by positions in `I` and `L`.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct DihedralLiftingDatum {
    pub lambda: BTreeMap<(usize, usize), CycScalar>,
    pub gamma: BTreeMap<(usize, usize), CycScalar>,
    pub theta: BTreeMap<(usize, usize), CycScalar>,
    pub mu: BTreeMap<(usize, usize), CycScalar>,
}

impl DihedralLiftingDatum {
    /// `λ_PQ = α^{11}_PQ + α^{11}_QP`, `γ_PQ = α^{12}_PQ + α^{12}_QP` (`γ = 0` when `|I| = 1`),
    /// `θ_Pl = β^{11}_Pl + ζ^{11}_Pl`, `μ_Pl = β^{12}_Pl + ζ^{12}_Pl`.
    pub fn from_coefficients(c: &DihedralCoefficients, npairs: usize, nells: usize, field: &'static CycField) -> Self {
        let get = |f: Family, r: u8, s: u8, x: usize, y: usize| c.get(f, r, s, x, y).cloned().unwrap_or_else(|| field.zero());
        let mut out = DihedralLiftingDatum::default();
        for p in 0..npairs {
            for q in 0..npairs {
                out.lambda.insert((p, q), get(Family::Alpha, 1, 1, p, q) + get(Family::Alpha, 1, 1, q, p));
                let g = if npairs == 1 { field.zero() } else { get(Family::Alpha, 1, 2, p, q) + get(Family::Alpha, 1, 2, q, p) };
                out.gamma.insert((p, q), g);
            }
            for l in 0..nells {
                out.theta.insert((p, l), get(Family::Beta, 1, 1, p, l) + get(Family::Zeta, 1, 1, p, l));
                out.mu.insert((p, l), get(Family::Beta, 1, 2, p, l) + get(Family::Zeta, 1, 2, p, l));
            }
        }
        out
    }

    /// `λ_{p,m-k,i,k} = λ_{i,k,p,m-k}` and `γ_{p,k,i,k} = γ_{i,k,p,k}`.
    pub fn symmetry_violations(&self, m: u32, pairs: &[(u32, u32)]) -> Vec<String> {
        let mut out = Vec::new();
        for (x, &(p, q)) in pairs.iter().enumerate() {
            for (y, &(i, k)) in pairs.iter().enumerate() {
                if (q + k) % m == 0 && self.lambda.get(&(x, y)) != self.lambda.get(&(y, x)) {
                    out.push(format!("lambda for ({p},{q}),({i},{k}) is not symmetric"));
                }
                if q == k && self.gamma.get(&(x, y)) != self.gamma.get(&(y, x)) {
                    out.push(format!("gamma for ({p},{q}),({i},{k}) is not symmetric"));
                }
            }
        }
        out
    }

    fn describe(&self, pairs: &[(u32, u32)], ells: &[u32]) -> BTreeMap<String, String> {
        let mut out = BTreeMap::new();
        let pl = |x: usize| format!("({},{})", pairs[x].0, pairs[x].1);
        for ((x, y), v) in &self.lambda {
            out.insert(format!("lambda[{},{}]", pl(*x), pl(*y)), v.to_string());
        }
        for ((x, y), v) in &self.gamma {
            out.insert(format!("gamma[{},{}]", pl(*x), pl(*y)), v.to_string());
        }
        for ((x, l), v) in &self.theta {
            out.insert(format!("theta[{},{}]", pl(*x), ells[*l]), v.to_string());
        }
        for ((x, l), v) in &self.mu {
            out.insert(format!("mu[{},{}]", pl(*x), ells[*l]), v.to_string());
        }
        out
    }
}

/// A dihedral bosonization `B(M_{I,L}) # kD_m`, built once and reused for many coefficient draws.
pub struct DihedralInstance {
    pub data: IndexData,
    pub module: Arc<YDModule>,
    pub algebra: Arc<BosonHopf>,
}

impl DihedralInstance {
    pub fn new(m: u32, pairs: Vec<(u32, u32)>, ells: Vec<u32>) -> Result<Self> {
        Self::with_budget(m, pairs, ells, DEFAULT_TENSOR_BUDGET)
    }

    pub fn with_budget(m: u32, pairs: Vec<(u32, u32)>, ells: Vec<u32>, budget: usize) -> Result<Self> {
        let data = IndexData::new(m, pairs, ells)?;
        let group = Arc::new(FinGroup::dihedral(m)?);
        let module = Arc::new(YDModule::m_i(group, &data)?);
        let nichols = TruncatedNichols::build(module.clone(), Cap::Full, budget)?;
        let algebra = Arc::new(BosonHopf::bosonize(Arc::new(nichols))?);
        Ok(DihedralInstance { data, module, algebra })
    }

    pub fn name(&self) -> String {
        let pairs: Vec<String> = self.data.pairs.iter().map(|(i, k)| format!("({i},{k})")).collect();
        let ells: Vec<String> = self.data.ells.iter().map(|l| l.to_string()).collect();
        format!("m={} I=({}) L=({}) dim {}", self.data.m, pairs.join(","), ells.join(","), self.algebra.dim())
    }

    fn y(&self, pos: usize, r: usize) -> usize {
        self.algebra.generator(2 * pos + r - 1)
    }

    fn x(&self, pos: usize, r: usize) -> usize {
        self.algebra.generator(2 * self.data.pairs.len() + 2 * pos + r - 1)
    }

    fn h_pow(&self, e: i64) -> GroupElt {
        self.algebra.group().dihedral_elt(0, e).expect("dihedral group")
    }

    /// Coefficients from a form, rejecting non-invariant data up front.
    pub fn coefficients_checked(&self, c: &DihedralCoefficients) -> Result<BilinearForm> {
        let form = c.to_form(self.module.clone())?;
        let bad = c.closed_condition_violations(&self.module)?;
        if let Some(b) = bad.first() {
            return Err(Error::validation("non-invariant", format!("coefficients are not D_m-invariant: {b}")));
        }
        Ok(form)
    }

    /// Relations shared by both presentations: the group and the `g`, `h` commutation rules.
    fn group_relations(&self, with_a2_weight: bool) -> Vec<RelationTemplate> {
        let a = &*self.algebra;
        let f = a.field();
        let m = self.data.m as i64;
        let one = f.one();
        let g = a.grouplike(a.group().dihedral_elt(1, 0).expect("dihedral group"));
        let h = a.grouplike(self.h_pow(1));
        let mut out = vec![
            RelationTemplate::homogeneous("g^2 = 1", vec![(one.clone(), vec![g, g]), (-one.clone(), vec![])], a),
            RelationTemplate::homogeneous("h^m = 1", vec![(one.clone(), vec![h; m as usize]), (-one.clone(), vec![])], a),
            RelationTemplate::homogeneous(
                "ghg = h^(m-1)",
                vec![(one.clone(), vec![g, h, g]), (-one.clone(), vec![a.grouplike(self.h_pow(m - 1))])],
                a,
            ),
        ];
        for (pos, &(p, q)) in self.data.pairs.iter().enumerate() {
            let (a1, a2) = (self.y(pos, 1), self.y(pos, 2));
            let tag = format!("({p},{q})");
            out.push(RelationTemplate::homogeneous(
                format!("g a1{tag} = a2{tag} g"),
                vec![(one.clone(), vec![g, a1]), (-one.clone(), vec![a2, g])],
                a,
            ));
            out.push(RelationTemplate::homogeneous(
                format!("h a1{tag} = w^q a1{tag} h"),
                vec![(one.clone(), vec![h, a1]), (-f.root_of_unity(q as i64), vec![a1, h])],
                a,
            ));
            if with_a2_weight {
                out.push(RelationTemplate::homogeneous(
                    format!("h a2{tag} = w^-q a2{tag} h"),
                    vec![(one.clone(), vec![h, a2]), (-f.root_of_unity(-(q as i64)), vec![a2, h])],
                    a,
                ));
            }
        }
        out
    }

    fn pair_relations(&self, datum: &DihedralLiftingDatum) -> Vec<RelationTemplate> {
        let a = &*self.algebra;
        let f = a.field();
        let m = self.data.m;
        let one = f.one();
        let mut out = Vec::new();
        for (x, &(p, q)) in self.data.pairs.iter().enumerate() {
            for (y, &(i, k)) in self.data.pairs.iter().enumerate() {
                let (tp, ti) = (format!("({p},{q})"), format!("({i},{k})"));
                let lam = if (q + k) % m == 0 { datum.lambda[&(x, y)].clone() } else { f.zero() };
                out.push(RelationTemplate::new(
                    format!("a1{tp} a1{ti} + a1{ti} a1{tp} = lambda (1 - h^(p+i))"),
                    vec![(one.clone(), vec![self.y(x, 1), self.y(y, 1)]), (one.clone(), vec![self.y(y, 1), self.y(x, 1)])],
                    lam,
                    self.h_pow((p + i) as i64),
                ));
                let gam = if q == k { datum.gamma[&(x, y)].clone() } else { f.zero() };
                out.push(RelationTemplate::new(
                    format!("a1{tp} a2{ti} + a2{ti} a1{tp} = gamma (1 - h^(p-i))"),
                    vec![(one.clone(), vec![self.y(x, 1), self.y(y, 2)]), (one.clone(), vec![self.y(y, 2), self.y(x, 1)])],
                    gam,
                    self.h_pow(p as i64 - i as i64),
                ));
            }
        }
        out
    }

    /// All relations of `A_I(λ, γ)` evaluated in `A_σ` for `σ = e^{η̃}`.
    pub fn verify_ai(&self, coefficients: &DihedralCoefficients) -> Result<TheoremReport> {
        if !self.data.ells.is_empty() {
            return Err(Error::validation("bad-instance", "this presentation needs L to be empty"));
        }
        let form = self.coefficients_checked(coefficients)?;
        let field = self.algebra.field();
        let datum = DihedralLiftingDatum::from_coefficients(coefficients, self.data.pairs.len(), 0, field);
        let d = DeformedAlgebra::from_form(self.algebra.clone(), &form)?;
        let mut relations: Vec<RelationResult> = self.group_relations(true).iter().map(|r| r.evaluate(&d)).collect();
        relations.extend(self.pair_relations(&datum).iter().map(|r| r.evaluate(&d)));
        relations.push(symmetry_result(&datum, &self.data));
        relations.push(closed_formula_result(&d, &form));
        Ok(TheoremReport::new("lifting-AI", self.name(), datum.describe(&self.data.pairs, &[]), relations))
    }

    /// All relations of `B_{I,L}(λ, γ, θ, μ)` evaluated in `A_σ`.
    pub fn verify_bil(&self, coefficients: &DihedralCoefficients) -> Result<TheoremReport> {
        if self.data.pairs.is_empty() || self.data.ells.is_empty() {
            return Err(Error::validation("bad-instance", "this presentation needs nonempty I and L"));
        }
        let form = self.coefficients_checked(coefficients)?;
        let a = &*self.algebra;
        let f = a.field();
        let one = f.one();
        let m = self.data.m;
        let n = (m / 2) as i64;
        let (np, nl) = (self.data.pairs.len(), self.data.ells.len());
        let datum = DihedralLiftingDatum::from_coefficients(coefficients, np, nl, f);
        let d = DeformedAlgebra::from_form(self.algebra.clone(), &form)?;
        let g = a.grouplike(a.group().dihedral_elt(1, 0)?);
        let h = a.grouplike(self.h_pow(1));
        let mut rels = self.group_relations(true);
        for (pos, &l) in self.data.ells.iter().enumerate() {
            let (b1, b2) = (self.x(pos, 1), self.x(pos, 2));
            rels.push(RelationTemplate::homogeneous(
                format!("g b1[{l}] = b2[{l}] g"),
                vec![(one.clone(), vec![g, b1]), (-one.clone(), vec![b2, g])],
                a,
            ));
            rels.push(RelationTemplate::homogeneous(
                format!("h b1[{l}] = w^l b1[{l}] h"),
                vec![(one.clone(), vec![h, b1]), (-f.root_of_unity(l as i64), vec![b1, h])],
                a,
            ));
            rels.push(RelationTemplate::homogeneous(
                format!("h b2[{l}] = w^-l b2[{l}] h"),
                vec![(one.clone(), vec![h, b2]), (-f.root_of_unity(-(l as i64)), vec![b2, h])],
                a,
            ));
        }
        for (pos, &(p, q)) in self.data.pairs.iter().enumerate() {
            for r in 1..=2 {
                let y = self.y(pos, r);
                rels.push(RelationTemplate::homogeneous(format!("[a{r}({p},{q})]^2 = 0"), vec![(one.clone(), vec![y, y])], a));
            }
        }
        for (x, &l) in self.data.ells.iter().enumerate() {
            for (y, &l2) in self.data.ells.iter().enumerate() {
                for (r, s) in [(1, 2), (1, 1)] {
                    let (u, v) = (self.x(x, r), self.x(y, s));
                    rels.push(RelationTemplate::homogeneous(
                        format!("b{r}[{l}] b{s}[{l2}] + b{s}[{l2}] b{r}[{l}] = 0"),
                        vec![(one.clone(), vec![u, v]), (one.clone(), vec![v, u])],
                        a,
                    ));
                }
            }
        }
        rels.extend(self.pair_relations(&datum));
        for (x, &(p, q)) in self.data.pairs.iter().enumerate() {
            for (y, &l) in self.data.ells.iter().enumerate() {
                let a1 = self.y(x, 1);
                let hh = self.h_pow(n + p as i64);
                let theta = if (q + l) % m == 0 { datum.theta[&(x, y)].clone() } else { f.zero() };
                let b1 = self.x(y, 1);
                rels.push(RelationTemplate::new(
                    format!("a1({p},{q}) b1[{l}] + b1[{l}] a1({p},{q}) = theta (1 - h^(n+p))"),
                    vec![(one.clone(), vec![a1, b1]), (one.clone(), vec![b1, a1])],
                    theta,
                    hh,
                ));
                let mu = if q == l { datum.mu[&(x, y)].clone() } else { f.zero() };
                let b2 = self.x(y, 2);
                rels.push(RelationTemplate::new(
                    format!("a1({p},{q}) b2[{l}] + b2[{l}] a1({p},{q}) = mu (1 - h^(n+p))"),
                    vec![(one.clone(), vec![a1, b2]), (one.clone(), vec![b2, a1])],
                    mu,
                    hh,
                ));
            }
        }
        let mut relations: Vec<RelationResult> = rels.par_iter().map(|r| r.evaluate(&d)).collect();
        relations.push(symmetry_result(&datum, &self.data));
        relations.push(closed_formula_result(&d, &form));
        Ok(TheoremReport::new("lifting-BIL", self.name(), datum.describe(&self.data.pairs, &self.data.ells), relations))
    }

    /// Grid of invariant coefficient families: every combination of the invariant basis with
    /// coefficients in `{0, 1, -1, 2, 1/2}` if there are at most `limit`, else a seeded sample.
    pub fn coefficient_grid(&self, limit: usize, seed: u64) -> Result<Vec<DihedralCoefficients>> {
        let basis = BilinearForm::invariant_basis(&self.module);
        let forms = grid_combinations(&self.module, &basis, limit, seed);
        forms.iter().map(DihedralCoefficients::from_form).collect()
    }
}

fn symmetry_result(datum: &DihedralLiftingDatum, data: &IndexData) -> RelationResult {
    let v = datum.symmetry_violations(data.m, &data.pairs);
    RelationResult {
        name: "parameter symmetry".into(),
        lhs: v.first().cloned().unwrap_or_else(|| "symmetric".into()),
        rhs: "symmetric".into(),
        pass: v.is_empty(),
    }
}

fn closed_formula_result(d: &DeformedAlgebra, form: &BilinearForm) -> RelationResult {
    match d.check_closed_formula(form) {
        None => RelationResult { name: "degree-one closed formula".into(), lhs: "holds".into(), rhs: "holds".into(), pass: true },
        Some(w) => RelationResult { name: format!("degree-one closed formula at {:?}", w.labels), lhs: w.lhs, rhs: w.rhs, pass: false },
    }
}

/// Combinations of `basis` with small rational coefficients, exhaustive or sampled.
pub fn grid_combinations(module: &Arc<YDModule>, basis: &[BilinearForm], limit: usize, seed: u64) -> Vec<BilinearForm> {
    let field = module.field();
    let values: Vec<CycScalar> = small_rationals().iter().map(|r| field.from_rational(r)).collect();
    let total = values.len().checked_pow(basis.len() as u32).unwrap_or(usize::MAX);
    let mut indices: Vec<usize> = if total <= limit {
        (0..total).collect()
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut picked: Vec<usize> = (0..limit).map(|_| rand::Rng::gen_range(&mut rng, 0..total)).collect();
        picked.sort_unstable();
        picked.dedup();
        picked.shuffle(&mut rng);
        picked
    };
    if total > limit {
        indices.truncate(limit);
    }
    indices
        .into_iter()
        .map(|mut k| {
            let mut f = BilinearForm::zero(module.clone());
            for b in basis {
                f = f.add(&b.scale(&values[k % values.len()]));
                k /= values.len();
            }
            f
        })
        .collect()
}

/// The symmetric-group presentations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SnVariant {
    /// Transpositions of `S_3` with constant cocycle `-1`.
    Q3,
    /// Transpositions of `S_4` with constant cocycle `-1`.
    Q4,
    /// Four-cycles of `S_4` with constant cocycle `-1`.
    D4,
}

impl std::str::FromStr for SnVariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "q3" => Ok(SnVariant::Q3),
            "q4" => Ok(SnVariant::Q4),
            "d4" => Ok(SnVariant::D4),
            _ => Err(Error::validation("bad-variant", format!("unknown variant {s}; expected q3, q4 or d4"))),
        }
    }
}

/// A bosonization over `S_n` from a rack module, capped or not.
pub struct RackInstance {
    pub cocycle: Arc<RackCocycle>,
    pub module: Arc<YDModule>,
    pub algebra: Arc<BosonHopf>,
}

impl RackInstance {
    pub fn new(cocycle: RackCocycle, cap: Cap, budget: usize) -> Result<Self> {
        let cocycle = Arc::new(cocycle);
        let module = Arc::new(YDModule::rack_module(cocycle.clone())?);
        let nichols = TruncatedNichols::build(module.clone(), cap, budget)?;
        let algebra = Arc::new(BosonHopf::bosonize(Arc::new(nichols))?);
        Ok(RackInstance { cocycle, module, algebra })
    }

    pub fn transpositions(n: usize, chi: bool, cap: Cap) -> Result<Self> {
        let group = Arc::new(FinGroup::symmetric(n)?);
        let rack = Arc::new(Rack::transpositions(group)?);
        let c = if chi { RackCocycle::chi(rack)? } else { RackCocycle::minus_one(rack) };
        Self::new(c, cap, DEFAULT_TENSOR_BUDGET)
    }

    pub fn four_cycles(cap: Cap) -> Result<Self> {
        let group = Arc::new(FinGroup::symmetric(4)?);
        let rack = Arc::new(Rack::four_cycles(group)?);
        Self::new(RackCocycle::minus_one(rack), cap, DEFAULT_TENSOR_BUDGET)
    }

    pub fn name(&self) -> String {
        format!("{} elements, {:?} cocycle, {}", self.cocycle.rack().len(), self.cocycle.kind(), self.algebra.instance_name())
    }

    fn group(&self) -> &FinGroup {
        self.algebra.group()
    }

    fn elt(&self, label: &str) -> Result<GroupElt> {
        self.group().parse_element(label)
    }

    fn gen(&self, label: &str) -> Result<usize> {
        let x = self.elt(label)?;
        let i = self
            .cocycle
            .rack()
            .index_of(x)
            .ok_or_else(|| Error::validation("not-in-rack", format!("{label} is not in the rack")))?;
        Ok(self.algebra.generator(i))
    }

    fn gen_of(&self, x: GroupElt) -> usize {
        self.algebra.generator(self.cocycle.rack().index_of(x).expect("conjugate stays in the rack"))
    }

    /// `h_e = 1`, `h_r h_s = h_rs` and `h_j a_i = c a_{j▷i} h_j`, with `c` the literal `-1` for
    /// `j` in the rack (when `literal_minus`) and the cocycle value for every `j` otherwise.
    fn structural_relations(&self, d: &DeformedAlgebra, literal_minus: bool) -> Result<Vec<RelationResult>> {
        let a = &*self.algebra;
        let g = self.group();
        let one = a.field().one();
        let mut out = vec![RelationTemplate::homogeneous(
            "h_e = 1",
            vec![(one.clone(), vec![a.grouplike(g.identity())]), (-one.clone(), vec![])],
            a,
        )
        .evaluate(d)];
        let mult: Vec<RelationTemplate> = g
            .elements()
            .flat_map(|r| g.elements().map(move |s| (r, s)))
            .map(|(r, s)| {
                RelationTemplate::homogeneous(
                    format!("h{} h{}", g.label(r), g.label(s)),
                    vec![
                        (one.clone(), vec![a.grouplike(r), a.grouplike(s)]),
                        (-one.clone(), vec![a.grouplike(g.mul(r, s))]),
                    ],
                    a,
                )
            })
            .collect();
        out.push(evaluate_family("h_r h_s = h_rs", &mult, d));
        let rack = self.cocycle.rack();
        let ext = self.cocycle.one_cocycle_extension()?;
        let mut conj = Vec::new();
        let mut literal = Vec::new();
        for i in 0..rack.len() {
            for j in g.elements() {
                let target = rack.act(j, i);
                let (ai, at) = (a.generator(i), a.generator(target));
                let c = ext.value(i, j).clone();
                let hj = a.grouplike(j);
                conj.push(RelationTemplate::homogeneous(
                    format!("h{} a{}", g.label(j), rack.label(i)),
                    vec![(one.clone(), vec![hj, ai]), (-c, vec![at, hj])],
                    a,
                ));
                if literal_minus && rack.index_of(j).is_some() {
                    literal.push(RelationTemplate::homogeneous(
                        format!("h{} a{}", g.label(j), rack.label(i)),
                        vec![(one.clone(), vec![hj, ai]), (one.clone(), vec![at, hj])],
                        a,
                    ));
                }
            }
        }
        if literal_minus {
            out.push(evaluate_family("h_j a_i = -a_(j>i) h_j (j in rack)", &literal, d));
        }
        out.push(evaluate_family("h_j a_i = chi_i(j) a_(j>i) h_j (all j)", &conj, d));
        Ok(out)
    }

    /// `Σ signs_k a_{w_k} a_{w'_k}` written on labels and conjugated by every group element.
    fn conjugates(&self, name: &str, terms: &[(i64, &str, &str)], parameter: &CycScalar, grouplike: &[&str]) -> Result<Vec<RelationTemplate>> {
        let g = self.group();
        let a = &*self.algebra;
        let f = a.field();
        let parsed: Vec<(i64, GroupElt, GroupElt)> =
            terms.iter().map(|&(c, x, y)| Ok((c, self.elt(x)?, self.elt(y)?))).collect::<Result<_>>()?;
        let mut hh = g.identity();
        for l in grouplike {
            hh = g.mul(hh, self.elt(l)?);
        }
        let mut out = Vec::new();
        let mut seen = std::collections::BTreeSet::new();
        for t in g.elements() {
            let key: Vec<(GroupElt, GroupElt)> = parsed.iter().map(|&(_, x, y)| (g.conj(t, x), g.conj(t, y))).collect();
            if !seen.insert(key.clone()) {
                continue;
            }
            let ts: Vec<(CycScalar, Vec<usize>)> =
                parsed.iter().zip(&key).map(|(&(c, _, _), &(x, y))| (f.from_int(c), vec![self.gen_of(x), self.gen_of(y)])).collect();
            out.push(RelationTemplate::new(format!("{name} conjugated by {}", g.label(t)), ts, parameter.clone(), g.conj(t, hh)));
        }
        Ok(out)
    }

    fn relation(&self, name: &str, terms: &[(i64, &str, &str)], parameter: &CycScalar, grouplike: &[&str]) -> Result<RelationTemplate> {
        let mut all = self.conjugates(name, terms, parameter, grouplike)?;
        let mut first = all.swap_remove(0);
        first.name = name.to_string();
        Ok(first)
    }

    /// Every defining relation of the presentation for `variant` with parameters `t`, plus
    /// their conjugates.
    pub fn presentation(&self, variant: SnVariant, big_lambda: &CycScalar, big_gamma: &CycScalar) -> Result<Vec<(RelationTemplate, Vec<RelationTemplate>)>> {
        let zero = self.algebra.field().zero();
        let mut out = Vec::new();
        let mut push = |name: &str, terms: &[(i64, &str, &str)], p: &CycScalar, h: &[&str]| -> Result<()> {
            out.push((self.relation(name, terms, p, h)?, self.conjugates(name, terms, p, h)?));
            Ok(())
        };
        match variant {
            SnVariant::Q3 | SnVariant::Q4 => {
                push("a(12)^2 = 0", &[(1, "(12)", "(12)")], &zero, &[])?;
                if variant == SnVariant::Q4 {
                    push(
                        "a(12) a(34) + a(34) a(12) = Lambda (1 - h(12) h(34))",
                        &[(1, "(12)", "(34)"), (1, "(34)", "(12)")],
                        big_lambda,
                        &["(12)", "(34)"],
                    )?;
                }
                push(
                    "a(12) a(23) + a(23) a(13) + a(13) a(12) = Gamma (1 - h(12) h(23))",
                    &[(1, "(12)", "(23)"), (1, "(23)", "(13)"), (1, "(13)", "(12)")],
                    big_gamma,
                    &["(12)", "(23)"],
                )?;
            }
            SnVariant::D4 => {
                push("a(1234)^2 = Lambda (1 - h(13) h(24))", &[(1, "(1234)", "(1234)")], big_lambda, &["(13)", "(24)"])?;
                push(
                    "a(1234) a(1432) + a(1432) a(1234) = 0",
                    &[(1, "(1234)", "(1432)"), (1, "(1432)", "(1234)")],
                    &zero,
                    &[],
                )?;
                push(
                    "a(1234) a(1243) + a(1243) a(1423) + a(1423) a(1234) = Gamma (1 - h(12) h(13))",
                    &[(1, "(1234)", "(1243)"), (1, "(1243)", "(1423)"), (1, "(1423)", "(1234)")],
                    big_gamma,
                    &["(12)", "(13)"],
                )?;
            }
        }
        Ok(out)
    }

    /// The form `c Σ_{τ,μ} d_τ ⊗ d_μ`.
    pub fn constant_form(&self, c: &CycScalar) -> BilinearForm {
        let d = self.module.dim();
        let mut f = BilinearForm::zero(self.module.clone());
        for i in 0..d {
            for j in 0..d {
                f.set(i, j, c.clone());
            }
        }
        f
    }
}

/// Relations of the symmetric-group presentation in `A_σ` for `η = (λ/3) Σ d_τ ⊗ d_μ`, with
/// `(Λ, Γ) = (0, λ)`, `(2λ/3, λ)` or `(λ/3, λ)`. For `Q4` and `D4` the rescaling `a ↦ √3 a`
/// (with `√3 = ζ_12 + ζ_12⁻¹`) is also checked against `(2λ, 3λ)` and `(λ, 3λ)`.
pub fn verify_theorem_sn(variant: SnVariant, lambda: &CycScalar) -> Result<TheoremReport> {
    let inst = match variant {
        SnVariant::Q3 => RackInstance::transpositions(3, false, Cap::Full)?,
        SnVariant::Q4 => RackInstance::transpositions(4, false, Cap::Degree(2))?,
        SnVariant::D4 => RackInstance::four_cycles(Cap::Degree(2))?,
    };
    verify_theorem_sn_on(&inst, variant, lambda)
}

pub fn verify_theorem_sn_on(inst: &RackInstance, variant: SnVariant, lambda: &CycScalar) -> Result<TheoremReport> {
    let field = inst.algebra.field();
    let lambda = if lambda.conductor() == field.conductor() {
        lambda.clone()
    } else {
        let r = lambda
            .as_rational()
            .ok_or_else(|| Error::validation("bad-parameter", "lambda must be rational for symmetric-group instances"))?;
        field.from_rational(&r)
    };
    let third = field.from_int(3).inv()?;
    let eta_value = &lambda * &third;
    let (big_lambda, big_gamma) = match variant {
        SnVariant::Q3 => (field.zero(), lambda.clone()),
        SnVariant::Q4 => (&lambda * &field.from_int(2) * third.clone(), lambda.clone()),
        SnVariant::D4 => (eta_value.clone(), lambda.clone()),
    };
    let form = inst.constant_form(&eta_value);
    let d = DeformedAlgebra::from_form(inst.algebra.clone(), &form)?;
    let mut relations = inst.structural_relations(&d, true)?;
    let presentation = inst.presentation(variant, &big_lambda, &big_gamma)?;
    for (rel, conj) in &presentation {
        relations.push(rel.evaluate(&d));
        relations.push(evaluate_family(&format!("{} (all conjugates)", rel.name), conj, &d));
    }
    relations.push(closed_formula_result(&d, &form));
    let mut parameters = BTreeMap::new();
    parameters.insert("lambda".into(), lambda.to_string());
    parameters.insert("eta".into(), format!("{} on every pair", eta_value));
    parameters.insert("Lambda".into(), big_lambda.to_string());
    parameters.insert("Gamma".into(), big_gamma.to_string());
    if variant != SnVariant::Q3 {
        // a' = s a with s^2 = 3 turns the relations with t into those with 3t.
        let f12 = CycField::get(12)?;
        let s = f12.root_of_unity(1) + f12.root_of_unity(-1);
        let s2 = (&s * &s)
            .as_rational()
            .ok_or_else(|| Error::structural("scaling", "zeta_12 + zeta_12^-1 does not square to a rational"))?;
        let s2 = field.from_rational(&s2);
        parameters.insert("scaled t".into(), format!("({}, {})", &big_lambda * &s2, &big_gamma * &s2));
        for (rel, _) in &presentation {
            let lhs = rel.lhs(&d)?.scale(&s2);
            let scaled = RelationTemplate { parameter: &rel.parameter * &s2, ..rel.clone() };
            let rhs = scaled.rhs(&inst.algebra);
            relations.push(RelationResult {
                name: format!("rescaled: {}", rel.name),
                lhs: inst.algebra.format(&lhs),
                rhs: inst.algebra.format(&rhs),
                pass: lhs == rhs,
            });
        }
    }
    let theorem = match variant {
        SnVariant::Q3 => "lifting-Q3",
        SnVariant::Q4 => "lifting-Q4",
        SnVariant::D4 => "lifting-D4",
    };
    Ok(TheoremReport::new(theorem, inst.name(), parameters, relations))
}

/// One surviving functional of the twisted-transposition scan.
#[derive(Clone, Debug, Serialize)]
pub struct ChiSurvivor {
    pub coefficients: Vec<String>,
    /// Coefficient of `1` in the deformed left side of the triple relation.
    pub lambda: String,
    pub relations_hold_with_zero: bool,
    pub failures: Vec<RelationResult>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ChiScanReport {
    pub schema_version: u32,
    pub n: usize,
    pub invariant_dimension: usize,
    pub candidates: usize,
    pub survivors: Vec<ChiSurvivor>,
    pub only_trivial: bool,
}

/// Scans invariant functionals on the transposition module with the sign-twisted cocycle,
/// keeps those satisfying eq1/eq2, and evaluates the twisted presentation in each `A_σ`
/// (cap 2): reports the `λ` every survivor produces.
pub fn chi_triviality_scan(n: usize, limit: usize, seed: u64) -> Result<ChiScanReport> {
    if !(3..=5).contains(&n) {
        return Err(Error::validation("bad-n", format!("n must be 3, 4 or 5, got {n}")));
    }
    let inst = RackInstance::transpositions(n, true, Cap::Degree(2))?;
    let basis = BilinearForm::invariant_basis(&inst.module);
    let candidates = grid_combinations(&inst.module, &basis, limit, seed);
    let survivors: Vec<BilinearForm> = candidates.par_iter().filter(|f| check_eq1_eq2(f).verdict).cloned().collect();
    let a = &*inst.algebra;
    let f = a.field();
    let one = f.one();
    let g = inst.group();
    let h123 = g.mul(inst.elt("(12)")?, inst.elt("(23)")?);
    let mut out = Vec::new();
    for form in &survivors {
        let d = DeformedAlgebra::from_form(inst.algebra.clone(), form)?;
        let triple = RelationTemplate::new(
            "a(12) a(23) - a(23) a(13) - a(13) a(12) = lambda (1 - h(12) h(23))",
            vec![
                (one.clone(), vec![inst.gen("(12)")?, inst.gen("(23)")?]),
                (-one.clone(), vec![inst.gen("(23)")?, inst.gen("(13)")?]),
                (-one.clone(), vec![inst.gen("(13)")?, inst.gen("(12)")?]),
            ],
            f.zero(),
            h123,
        );
        let lhs = triple.lhs(&d)?;
        let lambda = lhs.get(a.unit()).cloned().unwrap_or_else(|| f.zero());
        let mut rels = inst.structural_relations(&d, false)?;
        rels.push(RelationTemplate::homogeneous("a(12)^2 = 0", vec![(one.clone(), vec![inst.gen("(12)")?; 2])], a).evaluate(&d));
        if n >= 4 {
            let (x, y) = (inst.gen("(12)")?, inst.gen("(34)")?);
            rels.push(
                RelationTemplate::homogeneous("a(12) a(34) - a(34) a(12) = 0", vec![(one.clone(), vec![x, y]), (-one.clone(), vec![y, x])], a)
                    .evaluate(&d),
            );
        }
        rels.push(triple.evaluate(&d));
        let failures: Vec<RelationResult> = rels.into_iter().filter(|r| !r.pass).collect();
        let coefficients = (0..form.dim())
            .flat_map(|i| (0..form.dim()).map(move |j| (i, j)))
            .map(|(i, j)| form.get(i, j).to_string())
            .collect();
        out.push(ChiSurvivor { coefficients, lambda: lambda.to_string(), relations_hold_with_zero: failures.is_empty(), failures });
    }
    let only_trivial = out.iter().all(|s| s.relations_hold_with_zero);
    Ok(ChiScanReport {
        schema_version: SCHEMA_VERSION,
        n,
        invariant_dimension: basis.len(),
        candidates: candidates.len(),
        survivors: out,
        only_trivial,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> &'static CycField {
        CycField::get(1).unwrap()
    }

    #[test]
    fn trivial_cocycle_keeps_product() {
        let inst = DihedralInstance::new(12, vec![(1, 6)], vec![]).unwrap();
        let d = DeformedAlgebra::from_form(inst.algebra.clone(), &BilinearForm::zero(inst.module.clone())).unwrap();
        let a = &inst.algebra;
        for u in 0..a.dim() {
            for v in 0..a.dim() {
                assert_eq!(d.product(u, v).unwrap(), *a.product(u, v).unwrap());
            }
        }
    }

    #[test]
    fn example_with_single_pair() {
        let inst = DihedralInstance::new(12, vec![(1, 6)], vec![]).unwrap();
        let f = inst.algebra.field();
        let mut c = DihedralCoefficients::default();
        c.set(Family::Alpha, 1, 1, 0, 0, f.one());
        c.set(Family::Alpha, 2, 2, 0, 0, f.one());
        let rep = inst.verify_ai(&c).unwrap();
        assert!(rep.overall, "{:?}", rep.failures().collect::<Vec<_>>());
        assert_eq!(rep.parameters["lambda[(1,6),(1,6)]"], "2");
        // a1 ·σ a1 = α(1 - h^2), so 2 a1² = λ(1 - h^2) with λ = 2.
        let form = c.to_form(inst.module.clone()).unwrap();
        let d = DeformedAlgebra::from_form(inst.algebra.clone(), &form).unwrap();
        let a = &inst.algebra;
        let a1 = a.generator(0);
        let sq = d.product(a1, a1).unwrap();
        let h2 = a.grouplike(a.group().dihedral_elt(0, 2).unwrap());
        let expect = SparseVec::from_terms([(a.unit(), f.one()), (h2, -f.one())]);
        assert_eq!(sq, expect);
        let a2 = a.generator(1);
        let hm2 = a.grouplike(a.group().dihedral_elt(0, -2).unwrap());
        assert_eq!(d.product(a2, a2).unwrap(), SparseVec::from_terms([(a.unit(), f.one()), (hm2, -f.one())]));
        let anti = d.product(a1, a2).unwrap().add(&d.product(a2, a1).unwrap());
        assert!(anti.is_zero());
    }

    #[test]
    fn deformed_antipode_on_small_instance() {
        let inst = DihedralInstance::new(12, vec![(1, 6)], vec![]).unwrap();
        let f = inst.algebra.field();
        let mut c = DihedralCoefficients::default();
        for (r, s) in [(1, 1), (2, 2), (1, 2), (2, 1)] {
            c.set(Family::Alpha, r, s, 0, 0, f.from_int(3));
        }
        let form = inst.coefficients_checked(&c).unwrap();
        let d = DeformedAlgebra::from_form(inst.algebra.clone(), &form).unwrap();
        assert!(d.check_associativity().is_none());
        let s = d.antipode().unwrap();
        let a = &inst.algebra;
        for g in a.group().elements() {
            assert_eq!(s[a.grouplike(g)], SparseVec::singleton(a.grouplike(a.group().inv(g)), f.one()));
        }
    }

    #[test]
    fn non_invariant_coefficients_rejected() {
        let inst = DihedralInstance::new(12, vec![(2, 3)], vec![]).unwrap();
        let mut c = DihedralCoefficients::default();
        c.set(Family::Alpha, 1, 1, 0, 0, inst.algebra.field().one());
        assert_eq!(inst.verify_ai(&c).unwrap_err().code(), "non-invariant");
    }

    #[test]
    fn s3_theorem() {
        let rep = verify_theorem_sn(SnVariant::Q3, &q().one()).unwrap();
        assert!(rep.overall, "{:?}", rep.failures().collect::<Vec<_>>());
    }

    #[test]
    fn chi_scan_four() {
        let rep = chi_triviality_scan(4, 200, 1).unwrap();
        assert!(!rep.survivors.is_empty());
        assert!(rep.only_trivial);
    }

    #[test]
    fn chi_scan_three_is_not_trivial() {
        // On S_3 the twisted cocycle is cohomologous to the constant one, which does deform.
        let rep = chi_triviality_scan(3, 200, 1).unwrap();
        assert!(!rep.only_trivial);
        assert!(rep.survivors.iter().any(|s| s.lambda != "0"));
    }

    #[test]
    fn s4_theorems_at_cap_two() {
        for variant in [SnVariant::Q4, SnVariant::D4] {
            for l in [1, -1, 2] {
                let rep = verify_theorem_sn(variant, &q().from_int(l)).unwrap();
                assert!(rep.overall, "{variant:?} {l}: {:?}", rep.failures().collect::<Vec<_>>());
            }
        }
    }

    #[test]
    fn wrong_parameters_fail() {
        let inst = RackInstance::transpositions(4, false, Cap::Degree(2)).unwrap();
        let d = DeformedAlgebra::from_form(inst.algebra.clone(), &inst.constant_form(&q().one())).unwrap();
        let pres = inst.presentation(SnVariant::Q4, &q().from_int(3), &q().from_int(3)).unwrap();
        assert!(!pres[1].0.evaluate(&d).pass);
        assert!(pres[2].0.evaluate(&d).pass);
    }

    #[test]
    fn dihedral_theorems_on_grids() {
        for pairs in [vec![(1, 6)], vec![(2, 3)], vec![(1, 6), (5, 6)], vec![(2, 3), (2, 9)]] {
            let inst = DihedralInstance::new(12, pairs.clone(), vec![]).unwrap();
            for c in inst.coefficient_grid(12, 5).unwrap() {
                let rep = inst.verify_ai(&c).unwrap();
                assert!(rep.overall, "{pairs:?}: {:?}", rep.failures().collect::<Vec<_>>());
            }
        }
        let inst = DihedralInstance::new(12, vec![(2, 3)], vec![3]).unwrap();
        for c in inst.coefficient_grid(12, 5).unwrap() {
            let rep = inst.verify_bil(&c).unwrap();
            assert!(rep.overall, "{:?}", rep.failures().collect::<Vec<_>>());
        }
    }
}
