//! End-to-end acceptance run. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::Arc;
use std::time::Instant;

use hopf_cocycles::bosonization::BosonHopf;
use hopf_cocycles::cocycles::{
    check_commuting_conditions, check_eq1_eq2, check_multiplicative_cocycle, lift_functional, BilinearForm,
    Convolution, DihedralCoefficients, Family,
};
use hopf_cocycles::deform::{
    chi_triviality_scan, verify_theorem_sn, DeformedAlgebra, DihedralInstance, RackInstance, SnVariant,
};
use hopf_cocycles::groups::FinGroup;
use hopf_cocycles::linalg::SparseVec;
use hopf_cocycles::nichols::{check_matsumoto, Cap, TruncatedNichols, DEFAULT_TENSOR_BUDGET};
use hopf_cocycles::racks::{Rack, RackCocycle};
use hopf_cocycles::yetter_drinfeld::{IndexData, YDModule};
use hopf_cocycles::CycField;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn lib<T>(r: hopf_cocycles::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn dihedral(pairs: &[(u32, u32)], ells: &[u32]) -> Arc<YDModule> {
    let g = Arc::new(FinGroup::dihedral(12).unwrap());
    Arc::new(YDModule::m_i(g, &IndexData::new(12, pairs.to_vec(), ells.to_vec()).unwrap()).unwrap())
}

fn transpositions(n: usize, chi: bool) -> Arc<YDModule> {
    let g = Arc::new(FinGroup::symmetric(n).unwrap());
    let r = Arc::new(Rack::transpositions(g).unwrap());
    let c = if chi { RackCocycle::chi(r).unwrap() } else { RackCocycle::minus_one(r) };
    Arc::new(YDModule::rack_module(Arc::new(c)).unwrap())
}

fn four_cycles() -> Arc<YDModule> {
    let g = Arc::new(FinGroup::symmetric(4).unwrap());
    let r = Arc::new(Rack::four_cycles(g).unwrap());
    Arc::new(YDModule::rack_module(Arc::new(RackCocycle::minus_one(r))).unwrap())
}

fn bosonize(v: Arc<YDModule>, cap: Cap) -> Result<BosonHopf, String> {
    let nb = lib(TruncatedNichols::build(v, cap, DEFAULT_TENSOR_BUDGET))?;
    lib(BosonHopf::bosonize(Arc::new(nb)))
}

fn nichols_dimensions() -> Outcome {
    let mut seen = Vec::new();
    for (pairs, ells) in [(vec![(1, 6)], vec![]), (vec![(2, 3)], vec![]), (vec![], vec![1]), (vec![], vec![3]), (vec![], vec![5])] {
        let nb = lib(TruncatedNichols::build(dihedral(&pairs, &ells), Cap::Full, DEFAULT_TENSOR_BUDGET))?;
        ensure(nb.hilbert_series() == [1, 2, 1], || format!("{pairs:?} {ells:?}: {:?}", nb.hilbert_series()))?;
        seen.push(nb.dim());
    }
    let nb = lib(TruncatedNichols::build(dihedral(&[(1, 6), (5, 6)], &[]), Cap::Full, DEFAULT_TENSOR_BUDGET))?;
    ensure(nb.dim() == 16, || format!("|I|=2 dim {}", nb.dim()))?;
    Ok(format!("five summands of dim 4, |I|=2 sum of dim {} ({:?})", nb.dim(), nb.hilbert_series()))
}

fn s3_nichols() -> Outcome {
    let nb = lib(TruncatedNichols::build(transpositions(3, false), Cap::Degree(5), DEFAULT_TENSOR_BUDGET))?;
    ensure(nb.is_complete() && nb.dim() == 12, || format!("{:?}", nb.hilbert_series()))?;
    let top = nb.degree_component(5).map_or(0, |c| c.dim());
    ensure(top == 0, || format!("degree 5 has dim {top}"))?;
    Ok(format!("Hilbert series {:?}, degree 5 vanishes", nb.hilbert_series()))
}

fn hopf_axioms() -> Outcome {
    let mut dims = Vec::new();
    for v in [dihedral(&[(1, 6)], &[]), dihedral(&[(1, 6), (5, 6)], &[]), transpositions(3, false)] {
        let a = bosonize(v, Cap::Full)?;
        let rep = a.verify_hopf_axioms();
        ensure(rep.verdict, || format!("dim {}: {:?}", a.dim(), rep.first_failure()))?;
        dims.push(a.dim());
    }
    ensure(dims == [96, 384, 72], || format!("dims {dims:?}"))?;
    Ok(format!("dims {dims:?}"))
}

fn closed_formula() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut count = 0;
    let instances: Vec<(Arc<YDModule>, Cap)> = vec![
        (dihedral(&[(1, 6)], &[]), Cap::Full),
        (dihedral(&[(2, 3)], &[]), Cap::Full),
        (dihedral(&[], &[3]), Cap::Full),
        (dihedral(&[(1, 6), (5, 6)], &[]), Cap::Full),
        (dihedral(&[(2, 3)], &[3]), Cap::Full),
        (transpositions(3, false), Cap::Full),
        (transpositions(3, true), Cap::Full),
        (transpositions(4, false), Cap::Degree(2)),
        (transpositions(4, true), Cap::Degree(2)),
        (four_cycles(), Cap::Degree(2)),
    ];
    for (v, cap) in instances {
        let a = Arc::new(bosonize(v.clone(), cap)?);
        let basis = BilinearForm::invariant_basis(&v);
        for draw in 0..4 {
            let form = if draw == 0 { BilinearForm::zero(v.clone()) } else { BilinearForm::random_combination(&v, &basis, &mut rng) };
            let d = lib(DeformedAlgebra::from_form(a.clone(), &form))?;
            if let Some(w) = d.check_closed_formula(&form) {
                return Err(format!("{}: {w:?}", a.instance_name()));
            }
            count += 1;
        }
    }
    Ok(format!("{count} (instance, form) pairs, all degree-one products"))
}

fn mult_cocycle() -> Outcome {
    let v = dihedral(&[(1, 6)], &[]);
    let a = bosonize(v.clone(), Cap::Full)?;
    let conv = Convolution::new(&a);
    let basis = BilinearForm::invariant_basis(&v);
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let minus = -a.field().one();
    let draws = 20;
    for i in 0..draws {
        let form = BilinearForm::random_combination(&v, &basis, &mut rng);
        let eta = lib(lift_functional(&form, &a))?;
        let sigma = lib(conv.exp(&eta))?;
        let inv = lib(conv.exp(&eta.scale(&minus)))?;
        let rep = check_multiplicative_cocycle(&sigma, Some(&inv), &a);
        ensure(rep.verdict, || format!("draw {i}: {:?}", rep.first_failure()))?;
    }
    let mut witnessed = 0;
    for _ in 0..5 {
        let form = BilinearForm::random(&v, &mut rng);
        if form.is_invariant() {
            continue;
        }
        let eta = lib(lift_functional(&form, &a))?;
        let sigma = lib(conv.exp(&eta))?;
        let rep = check_multiplicative_cocycle(&sigma, None, &a);
        let has_witness = rep.entries.iter().any(|e| !e.pass && e.counterexample.is_some());
        ensure(!rep.verdict && has_witness, || "non-invariant form passed without a witness".into())?;
        witnessed += 1;
    }
    ensure(witnessed > 0, || "no non-invariant draw".into())?;
    Ok(format!("{draws} invariant draws pass on all triples, {witnessed} non-invariant draws fail with witnesses"))
}

/// Runs (a), (b), (c) on `draws` forms; returns how many had each verdict.
fn equivalence_sweep(v: &Arc<YDModule>, a: &BosonHopf, draws: usize, seed: u64, make: &dyn Fn(&mut ChaCha8Rng, usize) -> BilinearForm) -> Result<(usize, usize), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut yes, mut no) = (0, 0);
    for i in 0..draws {
        let form = make(&mut rng, i);
        let cond_a = check_eq1_eq2(&form).verdict;
        let r = lib(check_commuting_conditions(&lib(lift_functional(&form, a))?, a))?;
        ensure(cond_a == r.condition_b && cond_a == r.condition_c, || {
            format!("{} draw {i}: a={cond_a} b={} c={}", v.dim(), r.condition_b, r.condition_c)
        })?;
        if cond_a {
            yes += 1;
        } else {
            no += 1;
        }
    }
    Ok((yes, no))
}

fn lemma_equivalence() -> Outcome {
    let draws = 100;
    let v = dihedral(&[(1, 6)], &[]);
    let a = bosonize(v.clone(), Cap::Full)?;
    let basis = BilinearForm::invariant_basis(&v);
    let (dy, dn) = equivalence_sweep(&v, &a, draws, 6, &|rng, i| {
        if i % 2 == 0 {
            BilinearForm::random_combination(&v, &basis, rng)
        } else {
            BilinearForm::random(&v, rng)
        }
    })?;

    let w = transpositions(3, false);
    let b = bosonize(w.clone(), Cap::Full)?;
    let q = CycField::get(1).unwrap();
    let labels = ["id", "(123)"];
    let (ry, rn) = equivalence_sweep(&w, &b, draws, 7, &|rng, i| {
        let x = q.from_int(rng.gen_range(-3..=3));
        let y = if i % 2 == 0 { x.clone() } else { q.from_int(rng.gen_range(-3..=3)) };
        if i % 5 == 4 {
            BilinearForm::random(&w, rng)
        } else {
            BilinearForm::from_class_values(w.clone(), &labels, &[x, y]).unwrap()
        }
    })?;
    ensure(ry > 0 && rn > 0, || "rack sweep saw only one verdict".into())?;
    Ok(format!("dihedral {dy} true / {dn} false, rack {ry} true / {rn} false, all agree"))
}

fn symmetric_braiding() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut total = 0;
    for (pairs, ells) in [
        (vec![(1, 6)], vec![]),
        (vec![(2, 3)], vec![]),
        (vec![(1, 6), (5, 6)], vec![]),
        (vec![(2, 3), (2, 9)], vec![]),
        (vec![(2, 3)], vec![3]),
        (vec![(2, 3), (2, 9)], vec![3]),
    ] {
        let v = dihedral(&pairs, &ells);
        ensure(v.is_symmetric_braiding(), || format!("{pairs:?} {ells:?} braiding not symmetric"))?;
        let basis = BilinearForm::invariant_basis(&v);
        for _ in 0..40 {
            let form = BilinearForm::random_combination(&v, &basis, &mut rng);
            let rep = check_eq1_eq2(&form);
            ensure(rep.verdict, || format!("{pairs:?} {ells:?}: {:?}", rep.first_failure()))?;
            total += 1;
        }
    }
    Ok(format!("{total} invariant forms, zero failures"))
}

fn theorem_ai() -> Outcome {
    let mut reports = 0;
    for pairs in [vec![(1, 6)], vec![(2, 3)], vec![(1, 6), (5, 6)]] {
        let inst = lib(DihedralInstance::new(12, pairs.clone(), vec![]))?;
        for c in lib(inst.coefficient_grid(25, 1))? {
            let rep = lib(inst.verify_ai(&c))?;
            ensure(rep.overall, || format!("{pairs:?}: {:?}", rep.failures().next()))?;
            reports += 1;
        }
    }
    // a1 ·σ a1 for α^{11} = α^{22} = 1 on the pair (1,6): λ = 2 and a1² = λ(1 - h^2)/2 in the
    // anticommutator normalization, i.e. a1·a1 = 1 - h^2.
    let inst = lib(DihedralInstance::new(12, vec![(1, 6)], vec![]))?;
    let f = inst.algebra.field();
    let mut c = DihedralCoefficients::default();
    c.set(Family::Alpha, 1, 1, 0, 0, f.one());
    c.set(Family::Alpha, 2, 2, 0, 0, f.one());
    let rep = lib(inst.verify_ai(&c))?;
    ensure(rep.overall, || format!("{:?}", rep.failures().next()))?;
    let form = lib(c.to_form(inst.module.clone()))?;
    let d = lib(DeformedAlgebra::from_form(inst.algebra.clone(), &form))?;
    let a = &inst.algebra;
    let h2 = a.grouplike(lib(a.group().dihedral_elt(0, 2))?);
    let sq = lib(d.product(a.generator(0), a.generator(0)))?;
    let want = SparseVec::from_terms([(a.unit(), f.one()), (h2, -f.one())]);
    ensure(sq == want, || format!("a1 a1 = {}", a.format(&sq)))?;
    Ok(format!("{reports} grid reports pass; single-pair example a1 a1 = {}", a.format(&sq)))
}

fn theorem_bil() -> Outcome {
    let inst = lib(DihedralInstance::new(12, vec![(2, 3)], vec![3]))?;
    let mut reports = 0;
    for c in lib(inst.coefficient_grid(25, 2))? {
        let rep = lib(inst.verify_bil(&c))?;
        ensure(rep.overall, || format!("{:?}", rep.failures().next()))?;
        for name in ["[a1(2,3)]^2 = 0", "b1[3] b1[3] + b1[3] b1[3] = 0", "b1[3] b2[3] + b2[3] b1[3] = 0"] {
            ensure(rep.relation(name).is_some_and(|r| r.pass), || format!("missing or failing: {name}"))?;
        }
        reports += 1;
    }
    Ok(format!("{reports} grid reports pass"))
}

fn theorem_s3() -> Outcome {
    let q = CycField::get(1).unwrap();
    let lambdas = [q.from_int(1), q.from_int(-1), q.from_int(2), q.from_int(2).inv().unwrap()];
    for l in &lambdas {
        let rep = lib(verify_theorem_sn(SnVariant::Q3, l))?;
        ensure(rep.overall, || format!("lambda {l}: {:?}", rep.failures().next()))?;
        ensure(rep.relation("a(12)^2 = 0 (all conjugates)").is_some_and(|r| r.pass), || "a(12)^2 missing".into())?;
    }
    Ok("lambda in {1, -1, 2, 1/2} on the 72-dim algebra".into())
}

fn theorem_s4() -> Outcome {
    let q = CycField::get(1).unwrap();
    for variant in [SnVariant::Q4, SnVariant::D4] {
        for l in [q.from_int(1), q.from_int(-1), q.from_int(2), q.from_int(2).inv().unwrap()] {
            let rep = lib(verify_theorem_sn(variant, &l))?;
            ensure(rep.overall, || format!("{variant:?} {l}: {:?}", rep.failures().next()))?;
        }
    }
    // Independent check of a(1234)·a(1234) = (λ/3)(1 - h(13)h(24)) for λ = 1.
    let inst = lib(RackInstance::four_cycles(Cap::Degree(2)))?;
    let a = inst.algebra.clone();
    // λ = 1 corresponds to η = λ/3 on every pair of the rack.
    let third = q.from_int(3).inv().unwrap();
    let form = inst.constant_form(&third);
    let d = lib(DeformedAlgebra::from_form(a.clone(), &form))?;
    let g = a.group();
    let x = lib(g.parse_element("(1234)"))?;
    let i = inst.cocycle.rack().index_of(x).ok_or("no (1234)")?;
    let sq = lib(d.product(a.generator(i), a.generator(i)))?;
    let h = a.grouplike(g.mul(x, x));
    let mut want = SparseVec::from_terms([(a.unit(), third.clone()), (h, -third.clone())]);
    // Degree-two part of the undeformed square (zero in the Nichols algebra).
    want = want.add(&*lib(a.product(a.generator(i), a.generator(i)))?);
    ensure(sq == want, || format!("a(1234)^2 = {}", a.format(&sq)))?;
    Ok("Q4 and D4 presentations at cap 2 for four values of lambda; a(1234)^2 = (1/3)(1 - h(13)h(24))".into())
}

fn chi_triviality() -> Outcome {
    let rep = lib(chi_triviality_scan(4, 25, 1))?;
    ensure(!rep.survivors.is_empty(), || "no survivors".into())?;
    ensure(rep.only_trivial, || format!("{:?}", rep.survivors.iter().find(|s| !s.relations_hold_with_zero)))?;
    Ok(format!("{} candidates, {} survivors, all with zero right-hand sides", rep.candidates, rep.survivors.len()))
}

fn matsumoto() -> Outcome {
    let budget = 8000;
    let mut checked = 0;
    for v in [
        dihedral(&[(1, 6)], &[]),
        dihedral(&[(2, 3)], &[]),
        dihedral(&[], &[1]),
        dihedral(&[(1, 6), (5, 6)], &[]),
        dihedral(&[(2, 3)], &[3]),
        transpositions(3, false),
        transpositions(3, true),
        transpositions(4, false),
        transpositions(4, true),
        four_cycles(),
    ] {
        for d in 2..=5 {
            ensure(lib(check_matsumoto(&v, d, budget))?, || format!("dim {} degree {d}", v.dim()))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} (instance, degree) pairs agree"))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 13] = [
        ("dihedral Nichols dimensions", nichols_dimensions),
        ("S3 Nichols dimension", s3_nichols),
        ("Hopf axioms of bosonizations", hopf_axioms),
        ("closed degree-one deformation formula", closed_formula),
        ("multiplicative cocycle identity", mult_cocycle),
        ("equivalence of commuting conditions", lemma_equivalence),
        ("symmetric braiding sweep", symmetric_braiding),
        ("dihedral liftings A_I", theorem_ai),
        ("dihedral liftings B_IL", theorem_bil),
        ("S3 lifting", theorem_s3),
        ("S4 liftings at cap 2", theorem_s4),
        ("chi triviality on S4", chi_triviality),
        ("reduced-word independence of Q_d", matsumoto),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            Err(p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_else(|| "panic".into()))
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS {name}: {detail} [{secs:.1}s]", k + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL {name}: {why} [{secs:.1}s]", k + 1);
            }
        }
    }
    println!("{} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
