//! Property tests for the algebraic invariants the library relies on.

use std::sync::{Arc, OnceLock};

use hopf_cocycles::bosonization::BosonHopf;
use hopf_cocycles::cocycles::{check_eq1_eq2, lift_functional, BilinearForm, Convolution, PairFunctional};
use hopf_cocycles::deform::DeformedAlgebra;
use hopf_cocycles::groups::FinGroup;
use hopf_cocycles::linalg::SparseVec;
use hopf_cocycles::nichols::{Cap, TruncatedNichols, DEFAULT_TENSOR_BUDGET};
use hopf_cocycles::racks::{Rack, RackCocycle};
use hopf_cocycles::yetter_drinfeld::{IndexData, YDModule};
use hopf_cocycles::{CycField, CycScalar, Rational};
use num_traits::ToPrimitive;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn scalar(field: &'static CycField, coeffs: &[(i64, i64)]) -> CycScalar {
    let r: Vec<Rational> = coeffs.iter().take(field.degree()).map(|&(n, d)| Rational::new(n, d).unwrap()).collect();
    field.from_coeffs(&r).unwrap()
}

/// Numerical value of a cyclotomic number with ζ = exp(2πi/m).
fn complex(x: &CycScalar) -> (f64, f64) {
    let m = x.conductor() as f64;
    x.coeffs().iter().enumerate().fold((0.0, 0.0), |(re, im), (k, c)| {
        let v = c.numer().to_f64().unwrap() / c.denom().to_f64().unwrap();
        let t = 2.0 * std::f64::consts::PI * k as f64 / m;
        (re + v * t.cos(), im + v * t.sin())
    })
}

fn close(a: (f64, f64), b: (f64, f64)) -> bool {
    (a.0 - b.0).abs() < 1e-6 && (a.1 - b.1).abs() < 1e-6
}

fn coeff_strategy() -> impl Strategy<Value = Vec<(i64, i64)>> {
    proptest::collection::vec((-5i64..=5, 1i64..=4), 4)
}

fn s3_algebra() -> &'static Arc<BosonHopf> {
    static CELL: OnceLock<Arc<BosonHopf>> = OnceLock::new();
    CELL.get_or_init(|| {
        let g = Arc::new(FinGroup::symmetric(3).unwrap());
        let r = Arc::new(Rack::transpositions(g).unwrap());
        let v = Arc::new(YDModule::rack_module(Arc::new(RackCocycle::minus_one(r))).unwrap());
        let nb = TruncatedNichols::build(v, Cap::Full, DEFAULT_TENSOR_BUDGET).unwrap();
        Arc::new(BosonHopf::bosonize(Arc::new(nb)).unwrap())
    })
}

fn dihedral_algebra() -> &'static Arc<BosonHopf> {
    static CELL: OnceLock<Arc<BosonHopf>> = OnceLock::new();
    CELL.get_or_init(|| {
        let g = Arc::new(FinGroup::dihedral(12).unwrap());
        let v = Arc::new(YDModule::m_i(g, &IndexData::new(12, vec![(2, 3)], vec![3]).unwrap()).unwrap());
        let nb = TruncatedNichols::build(v, Cap::Full, DEFAULT_TENSOR_BUDGET).unwrap();
        Arc::new(BosonHopf::bosonize(Arc::new(nb)).unwrap())
    })
}

fn basis(u: usize, a: &BosonHopf) -> SparseVec {
    SparseVec::singleton(u, a.field().one())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn field_operations_match_complex_values(m in prop::sample::select(vec![1u32, 3, 4, 8, 12]), a in coeff_strategy(), b in coeff_strategy()) {
        let f = CycField::get(m).unwrap();
        let (x, y) = (scalar(f, &a), scalar(f, &b));
        let (cx, cy) = (complex(&x), complex(&y));
        prop_assert!(close(complex(&(&x + &y)), (cx.0 + cy.0, cx.1 + cy.1)));
        prop_assert!(close(complex(&(&x * &y)), (cx.0 * cy.0 - cx.1 * cy.1, cx.0 * cy.1 + cx.1 * cy.0)));
        if !x.is_zero() {
            prop_assert!((&x * &x.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn field_distributes(a in coeff_strategy(), b in coeff_strategy(), c in coeff_strategy()) {
        let f = CycField::get(12).unwrap();
        let (x, y, z) = (scalar(f, &a), scalar(f, &b), scalar(f, &c));
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
    }

    #[test]
    fn roots_of_unity_have_order_m(m in prop::sample::select(vec![3u32, 4, 8, 12]), k in -30i64..30) {
        let f = CycField::get(m).unwrap();
        let z = f.root_of_unity(k);
        prop_assert!(z.pow(m as i64).unwrap().is_one());
        prop_assert_eq!(&z * &f.root_of_unity(-k), f.one());
    }

    #[test]
    fn group_axioms(a in 0usize..24, b in 0usize..24, c in 0usize..24, sym in any::<bool>()) {
        let g = if sym { FinGroup::symmetric(4).unwrap() } else { FinGroup::dihedral(12).unwrap() };
        prop_assert_eq!(g.mul(g.mul(a, b), c), g.mul(a, g.mul(b, c)));
        prop_assert_eq!(g.mul(a, g.inv(a)), g.identity());
        prop_assert_eq!(g.conj(a, g.conj(b, c)), g.conj(g.mul(a, b), c));
    }

    #[test]
    fn racks_are_self_distributive(i in 0usize..6, j in 0usize..6, k in 0usize..6, four in any::<bool>()) {
        let g = Arc::new(FinGroup::symmetric(4).unwrap());
        let r = if four { Rack::four_cycles(g).unwrap() } else { Rack::transpositions(g).unwrap() };
        prop_assert_eq!(r.op(i, r.op(j, k)), r.op(r.op(i, j), r.op(i, k)));
    }

    #[test]
    fn bosonization_is_associative_on_random_triples(u in 0usize..72, v in 0usize..72, w in 0usize..72) {
        let a = s3_algebra();
        let (x, y, z) = (basis(u, a), basis(v, a), basis(w, a));
        let lhs = a.mul(&a.mul(&x, &y).unwrap(), &z).unwrap();
        let rhs = a.mul(&x, &a.mul(&y, &z).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn coproduct_is_multiplicative(u in 0usize..72, v in 0usize..72) {
        let a = s3_algebra();
        let prod = a.mul(&basis(u, a), &basis(v, a)).unwrap();
        let lhs = a.coproduct_of(&prod);
        let du = a.coproduct_of(&basis(u, a));
        let dv = a.coproduct_of(&basis(v, a));
        prop_assert_eq!(lhs, a.mul_tensor(&du, &dv).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn exp_has_convolution_inverse(seed in 0u64..10_000) {
        let a = dihedral_algebra();
        let v = a.nichols().module().clone();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let form = BilinearForm::random_combination(&v, &BilinearForm::invariant_basis(&v), &mut rng);
        let conv = Convolution::new(a);
        let eta = lift_functional(&form, a).unwrap();
        let s = conv.exp(&eta).unwrap();
        let si = conv.exp(&eta.scale(&-a.field().one())).unwrap();
        let e: PairFunctional = PairFunctional::counit(a);
        prop_assert_eq!(conv.convolve(&s, &si, a.top_degree()), e);
    }

    #[test]
    fn deformed_product_is_associative(x in -4i64..=4, u in 0usize..72, v in 0usize..72, w in 0usize..72) {
        // Only forms passing eq1/eq2 exponentiate to cocycles; on S_3 these have equal class values.
        let a = s3_algebra();
        let m = a.nichols().module().clone();
        let q = CycField::get(1).unwrap();
        let form = BilinearForm::from_class_values(m, &["id", "(123)"], &[q.from_int(x), q.from_int(x)]).unwrap();
        prop_assert!(check_eq1_eq2(&form).verdict);
        let d = DeformedAlgebra::from_form(a.clone(), &form).unwrap();
        let (x, y, z) = (basis(u, a), basis(v, a), basis(w, a));
        let lhs = d.mul(&d.mul(&x, &y).unwrap(), &z).unwrap();
        let rhs = d.mul(&x, &d.mul(&y, &z).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}

#[test]
fn unequal_class_values_break_associativity() {
    let a = s3_algebra();
    let m = a.nichols().module().clone();
    let q = CycField::get(1).unwrap();
    let form = BilinearForm::from_class_values(m, &["id", "(123)"], &[q.from_int(1), q.from_int(2)]).unwrap();
    assert!(!check_eq1_eq2(&form).verdict);
    let d = DeformedAlgebra::from_form(a.clone(), &form).unwrap();
    assert!(d.check_associativity().is_some());
}
