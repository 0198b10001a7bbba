use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;
use rustc_hash::FxHashMap;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use smallvec::SmallVec;

use super::Rational;
use crate::error::{Error, Result};

/// Largest conductor accepted by the validated constructors.
pub const MAX_CONDUCTOR: u32 = 2048;

/// The cyclotomic field Q(z) with z a primitive m-th root of unity, presented as Q[x]/(Phi_m).
#[derive(Debug)]
pub struct CycField {
    m: u32,
    phi: usize,
    /// Coefficients of Phi_m, constant term first; monic of degree `phi`.
    poly: Vec<i64>,
}

impl CycField {
    /// Interned field for conductor `m`.
    pub fn get(m: u32) -> Result<&'static CycField> {
        if m == 0 || m > MAX_CONDUCTOR {
            return Err(Error::validation(
                "bad-conductor",
                format!("conductor must lie in 1..={MAX_CONDUCTOR}, got {m}"),
            ));
        }
        static FIELDS: OnceLock<Mutex<FxHashMap<u32, &'static CycField>>> = OnceLock::new();
        let mut fields = FIELDS.get_or_init(Default::default).lock().expect("field registry poisoned");
        if let Some(f) = fields.get(&m) {
            return Ok(f);
        }
        let poly: Vec<i64> = cyclotomic_i128(m)
            .into_iter()
            .map(|c| i64::try_from(c).expect("cyclotomic coefficient overflow"))
            .collect();
        let field: &'static CycField = Box::leak(Box::new(CycField { m, phi: poly.len() - 1, poly }));
        fields.insert(m, field);
        Ok(field)
    }

    pub fn conductor(&self) -> u32 {
        self.m
    }

    /// Dimension of the field over Q, i.e. Euler's phi of the conductor.
    pub fn degree(&self) -> usize {
        self.phi
    }

    pub fn zero(&'static self) -> CycScalar {
        CycScalar { field: self, repr: Repr::Small { num: SmallVec::from_elem(0, self.phi), den: 1 } }
    }

    pub fn one(&'static self) -> CycScalar {
        self.from_int(1)
    }

    pub fn from_int(&'static self, n: i64) -> CycScalar {
        let mut num: SmallVec<[i64; 4]> = SmallVec::from_elem(0, self.phi);
        num[0] = n;
        CycScalar { field: self, repr: Repr::Small { num, den: 1 } }
    }

    pub fn from_rational(&'static self, r: &Rational) -> CycScalar {
        let mut num = vec![BigInt::zero(); self.phi];
        num[0] = r.numer().clone();
        finish_big(self, num, r.denom().clone())
    }

    /// z^k, for any integer k.
    pub fn root_of_unity(&'static self, k: i64) -> CycScalar {
        let e = k.rem_euclid(self.m as i64) as usize;
        let mut v = vec![0i128; (e + 1).max(self.phi)];
        v[e] = 1;
        reduce_i128(&mut v, &self.poly).expect("root of unity reduction overflow");
        finish_i128(self, &v[..self.phi], 1).expect("root of unity out of range")
    }

    pub fn from_coeffs(&'static self, coeffs: &[Rational]) -> Result<CycScalar> {
        if coeffs.len() != self.phi {
            return Err(Error::validation(
                "bad-coefficient-length",
                format!("conductor {} needs {} coefficients, got {}", self.m, self.phi, coeffs.len()),
            ));
        }
        let den = coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let num = coeffs.iter().map(|c| c.numer() * (&den / c.denom())).collect();
        Ok(finish_big(self, num, den))
    }

    /// Random element whose power-basis coefficients are drawn from `{0, 1, -1, 2, 1/2}`.
    pub fn random_small<R: Rng + ?Sized>(&'static self, rng: &mut R) -> CycScalar {
        let num: Vec<BigInt> = (0..self.phi).map(|_| BigInt::from([0, 2, -2, 4, 1][rng.gen_range(0..5)])).collect();
        finish_big(self, num, BigInt::from(2))
    }
}

/// Integer coefficients of the m-th cyclotomic polynomial, constant term first.
pub fn cyclotomic_polynomial(m: u32) -> Result<Vec<BigInt>> {
    Ok(CycField::get(m)?.poly.iter().map(|&c| BigInt::from(c)).collect())
}

fn cyclotomic_i128(m: u32) -> Vec<i128> {
    // Phi_m = (x^m - 1) / prod_{d | m, d < m} Phi_d, exact division by monic factors.
    let mut p = vec![0i128; m as usize + 1];
    p[0] = -1;
    p[m as usize] = 1;
    for d in 1..m {
        if m % d == 0 {
            p = div_monic(&p, &cyclotomic_i128(d));
        }
    }
    p
}

fn div_monic(num: &[i128], den: &[i128]) -> Vec<i128> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let mut quot = vec![0i128; num.len() - dd];
    for k in (0..quot.len()).rev() {
        let c = rem[k + dd];
        quot[k] = c;
        for (t, &dc) in den.iter().enumerate() {
            rem[k + t] -= c * dc;
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    quot
}

/// Reduces `v` modulo the monic polynomial `poly` in place; entries at index >= phi become zero.
fn reduce_i128(v: &mut [i128], poly: &[i64]) -> Option<()> {
    let phi = poly.len() - 1;
    for k in (phi..v.len()).rev() {
        let c = v[k];
        if c != 0 {
            for t in 0..phi {
                let d = c.checked_mul(poly[t] as i128)?;
                v[k - phi + t] = v[k - phi + t].checked_sub(d)?;
            }
            v[k] = 0;
        }
    }
    Some(())
}

#[derive(Clone, PartialEq, Eq, Debug)]
enum Repr {
    /// Numerators over a common positive denominator, all fitting in i64.
    Small { num: SmallVec<[i64; 4]>, den: i64 },
    Big { num: Vec<BigInt>, den: BigInt },
}

/// Exact element of a cyclotomic field, stored in the power basis 1, z, ..., z^(phi-1).
///
/// Arithmetic between different conductors is only defined when one operand is rational;
/// anything else is a programming error and panics.
#[derive(Clone)]
pub struct CycScalar {
    field: &'static CycField,
    repr: Repr,
}

fn gcd_i128(a: i128, b: i128) -> i128 {
    a.gcd(&b)
}

/// Canonicalizes a numerator vector and denominator computed in i128.
fn finish_i128(field: &'static CycField, num: &[i128], den: i128) -> Option<CycScalar> {
    let mut den = den;
    let mut num: SmallVec<[i128; 8]> = SmallVec::from_slice(num);
    if num.iter().all(|&n| n == 0) {
        return Some(field.zero());
    }
    if den < 0 {
        den = den.checked_neg()?;
        for n in num.iter_mut() {
            *n = n.checked_neg()?;
        }
    }
    if den != 1 {
        let mut g = den;
        for &n in num.iter() {
            if n != 0 {
                g = gcd_i128(g, n);
                if g == 1 {
                    break;
                }
            }
        }
        if g != 1 {
            den /= g;
            for n in num.iter_mut() {
                *n /= g;
            }
        }
    }
    let fits = i64::try_from(den).is_ok() && num.iter().all(|&n| i64::try_from(n).is_ok());
    if fits {
        Some(CycScalar {
            field,
            repr: Repr::Small { num: num.iter().map(|&n| n as i64).collect(), den: den as i64 },
        })
    } else {
        Some(CycScalar {
            field,
            repr: Repr::Big { num: num.iter().map(|&n| BigInt::from(n)).collect(), den: BigInt::from(den) },
        })
    }
}

fn finish_big(field: &'static CycField, mut num: Vec<BigInt>, mut den: BigInt) -> CycScalar {
    assert!(!den.is_zero(), "zero denominator");
    if num.iter().all(Zero::is_zero) {
        return field.zero();
    }
    if den.is_negative() {
        den = -den;
        for n in num.iter_mut() {
            *n = -std::mem::take(n);
        }
    }
    let mut g = den.clone();
    for n in &num {
        if !g.is_one() {
            g = g.gcd(n);
        }
    }
    if !g.is_one() {
        den /= &g;
        for n in num.iter_mut() {
            *n /= &g;
        }
    }
    let small_den = den.to_i64();
    let small_num: Option<SmallVec<[i64; 4]>> = num.iter().map(|n| n.to_i64()).collect();
    match (small_num, small_den) {
        (Some(num), Some(den)) => CycScalar { field, repr: Repr::Small { num, den } },
        _ => CycScalar { field, repr: Repr::Big { num, den } },
    }
}

impl CycScalar {
    pub fn zero(m: u32) -> Result<Self> {
        Ok(CycField::get(m)?.zero())
    }

    pub fn one(m: u32) -> Result<Self> {
        Ok(CycField::get(m)?.one())
    }

    pub fn from_int(m: u32, n: i64) -> Result<Self> {
        Ok(CycField::get(m)?.from_int(n))
    }

    pub fn from_rational(m: u32, r: &Rational) -> Result<Self> {
        Ok(CycField::get(m)?.from_rational(r))
    }

    /// z^k where z is the distinguished primitive m-th root of unity.
    pub fn root_of_unity(m: u32, k: i64) -> Result<Self> {
        Ok(CycField::get(m)?.root_of_unity(k))
    }

    pub fn field(&self) -> &'static CycField {
        self.field
    }

    pub fn conductor(&self) -> u32 {
        self.field.m
    }

    pub fn is_zero(&self) -> bool {
        match &self.repr {
            Repr::Small { num, .. } => num.iter().all(|&n| n == 0),
            Repr::Big { num, .. } => num.iter().all(Zero::is_zero),
        }
    }

    pub fn is_one(&self) -> bool {
        match &self.repr {
            Repr::Small { num, den } => *den == 1 && num[0] == 1 && num[1..].iter().all(|&n| n == 0),
            Repr::Big { .. } => false,
        }
    }

    /// Power-basis coefficients.
    pub fn coeffs(&self) -> Vec<Rational> {
        let (num, den) = self.to_big();
        num.into_iter().map(|n| Rational::from_bigints(n, den.clone()).expect("positive denominator")).collect()
    }

    /// The value as a rational number, if it lies in Q.
    pub fn as_rational(&self) -> Option<Rational> {
        if !self.is_rational() {
            return None;
        }
        let (num, den) = self.to_big();
        Some(Rational::from_bigints(num[0].clone(), den).expect("positive denominator"))
    }

    pub fn is_rational(&self) -> bool {
        match &self.repr {
            Repr::Small { num, .. } => num[1..].iter().all(|&n| n == 0),
            Repr::Big { num, .. } => num[1..].iter().all(Zero::is_zero),
        }
    }

    fn to_big(&self) -> (Vec<BigInt>, BigInt) {
        match &self.repr {
            Repr::Small { num, den } => (num.iter().map(|&n| BigInt::from(n)).collect(), BigInt::from(*den)),
            Repr::Big { num, den } => (num.clone(), den.clone()),
        }
    }

    /// Re-homes a rational value into another field.
    fn lift_to(&self, field: &'static CycField) -> CycScalar {
        assert!(self.is_rational(), "{}", Error::ConductorMismatch(self.field.m, field.m));
        match &self.repr {
            Repr::Small { num, den } => {
                let mut v: SmallVec<[i64; 4]> = SmallVec::from_elem(0, field.phi);
                v[0] = num[0];
                CycScalar { field, repr: Repr::Small { num: v, den: *den } }
            }
            Repr::Big { num, den } => {
                let mut v = vec![BigInt::zero(); field.phi];
                v[0] = num[0].clone();
                finish_big(field, v, den.clone())
            }
        }
    }

    /// Brings two operands into a common field, or panics on a genuine conductor clash.
    fn align<'a>(a: &'a CycScalar, b: &'a CycScalar) -> (std::borrow::Cow<'a, CycScalar>, std::borrow::Cow<'a, CycScalar>) {
        use std::borrow::Cow;
        if std::ptr::eq(a.field, b.field) {
            (Cow::Borrowed(a), Cow::Borrowed(b))
        } else if a.is_rational() && (a.field.m < b.field.m || !b.is_rational()) {
            (Cow::Owned(a.lift_to(b.field)), Cow::Borrowed(b))
        } else {
            (Cow::Borrowed(a), Cow::Owned(b.lift_to(a.field)))
        }
    }

    fn add_impl(&self, other: &CycScalar, negate: bool) -> CycScalar {
        if !std::ptr::eq(self.field, other.field) {
            let (a, b) = Self::align(self, other);
            return a.add_impl(&b, negate);
        }
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return if negate { -other } else { other.clone() };
        }
        let field = self.field;
        if let (Repr::Small { num: a, den: da }, Repr::Small { num: b, den: db }) = (&self.repr, &other.repr) {
            let sign: i128 = if negate { -1 } else { 1 };
            let mut out: SmallVec<[i128; 8]> = SmallVec::with_capacity(a.len());
            let den;
            if da == db {
                for (x, y) in a.iter().zip(b.iter()) {
                    out.push(*x as i128 + sign * *y as i128);
                }
                den = *da as i128;
            } else {
                let (da, db) = (*da as i128, *db as i128);
                for (x, y) in a.iter().zip(b.iter()) {
                    out.push(*x as i128 * db + sign * *y as i128 * da);
                }
                den = da * db;
            }
            if let Some(r) = finish_i128(field, &out, den) {
                return r;
            }
        }
        let (a, da) = self.to_big();
        let (b, db) = other.to_big();
        let num = a
            .iter()
            .zip(b.iter())
            .map(|(x, y)| if negate { x * &db - y * &da } else { x * &db + y * &da })
            .collect();
        finish_big(field, num, da * db)
    }

    fn mul_impl(&self, other: &CycScalar) -> CycScalar {
        if !std::ptr::eq(self.field, other.field) {
            let (a, b) = Self::align(self, other);
            return a.mul_impl(&b);
        }
        if self.is_zero() || other.is_zero() {
            return self.field.zero();
        }
        if self.is_one() {
            return other.clone();
        }
        if other.is_one() {
            return self.clone();
        }
        let field = self.field;
        let phi = field.phi;
        if let (Repr::Small { num: a, den: da }, Repr::Small { num: b, den: db }) = (&self.repr, &other.repr) {
            if let Some(r) = Self::mul_small(field, a, *da, b, *db) {
                return r;
            }
        }
        let (a, da) = self.to_big();
        let (b, db) = other.to_big();
        let mut prod = vec![BigInt::zero(); 2 * phi - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                prod[i + j] += x * y;
            }
        }
        for k in (phi..prod.len()).rev() {
            let c = std::mem::take(&mut prod[k]);
            if !c.is_zero() {
                for t in 0..phi {
                    prod[k - phi + t] -= &c * field.poly[t];
                }
            }
        }
        prod.truncate(phi);
        finish_big(field, prod, da * db)
    }

    fn mul_small(field: &'static CycField, a: &[i64], da: i64, b: &[i64], db: i64) -> Option<CycScalar> {
        let phi = field.phi;
        let mut prod: SmallVec<[i128; 8]> = SmallVec::from_elem(0, 2 * phi - 1);
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                if y != 0 {
                    prod[i + j] = prod[i + j].checked_add(x as i128 * y as i128)?;
                }
            }
        }
        reduce_i128(&mut prod, &field.poly)?;
        finish_i128(field, &prod[..phi], da as i128 * db as i128)
    }

    /// Multiplicative inverse; fails only for zero.
    pub fn inv(&self) -> Result<CycScalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let field = self.field;
        let (num, den) = self.to_big();
        if self.is_rational() {
            let mut v = vec![BigInt::zero(); field.phi];
            v[0] = den;
            return Ok(finish_big(field, v, num[0].clone()));
        }
        // Extended Euclid in Q[x]: track s with s * a = r (mod Phi_m).
        let a: Vec<BigRational> = num.iter().map(|n| BigRational::new(n.clone(), den.clone())).collect();
        let modulus: Vec<BigRational> = field.poly.iter().map(|&c| BigRational::from_integer(c.into())).collect();
        let mut r0 = trim(modulus);
        let mut r1 = trim(a);
        let mut s0: Vec<BigRational> = vec![];
        let mut s1 = vec![BigRational::one()];
        while r1.len() > 1 {
            let (q, r) = poly_divmod(&r0, &r1);
            let s2 = poly_sub(&s0, &poly_mul(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
        }
        let c = r1[0].clone();
        let mut coeffs: Vec<Rational> = s1.into_iter().map(|x| Rational::from_big(x / &c)).collect();
        coeffs.resize(field.phi, Rational::zero());
        field.from_coeffs(&coeffs)
    }

    pub fn checked_div(&self, other: &CycScalar) -> Result<CycScalar> {
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, e: i64) -> Result<CycScalar> {
        let mut base = if e < 0 { self.inv()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = self.field.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        Ok(acc)
    }

    pub fn mul_int(&self, n: i64) -> CycScalar {
        self * &self.field.from_int(n)
    }

    /// Random element of the same shape as [`CycField::random_small`].
    pub fn random_small<R: Rng + ?Sized>(m: u32, rng: &mut R) -> Result<CycScalar> {
        Ok(CycField::get(m)?.random_small(rng))
    }
}

fn trim(mut p: Vec<BigRational>) -> Vec<BigRational> {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn poly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().max(b.len());
    let z = BigRational::zero();
    trim((0..n).map(|i| a.get(i).unwrap_or(&z) - b.get(i).unwrap_or(&z)).collect())
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn poly_divmod(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut rem = a.to_vec();
    let db = b.len() - 1;
    if rem.len() <= db {
        return (vec![], trim(rem));
    }
    let lead = b[db].clone();
    let mut quot = vec![BigRational::zero(); rem.len() - db];
    for k in (0..quot.len()).rev() {
        let c = &rem[k + db] / &lead;
        for (t, bc) in b.iter().enumerate() {
            rem[k + t] -= &c * bc;
        }
        quot[k] = c;
    }
    rem.truncate(db);
    (trim(quot), trim(rem))
}

impl PartialEq for CycScalar {
    fn eq(&self, other: &Self) -> bool {
        if std::ptr::eq(self.field, other.field) {
            return self.repr == other.repr;
        }
        self.is_rational() && other.is_rational() && self.as_rational() == other.as_rational()
    }
}

impl Eq for CycScalar {}

impl fmt::Debug for CycScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (m={})", self, self.field.m)
    }
}

impl fmt::Display for CycScalar {
    /// Human-readable form in the power basis, e.g. `1/2 - z^3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs().into_iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = if neg { -c } else { c };
            match (first, neg) {
                (true, true) => write!(f, "-")?,
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
                (true, false) => {}
            }
            first = false;
            let unit = mag == Rational::one();
            match (k, unit) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "z")?,
                (1, false) => write!(f, "{mag}*z")?,
                (_, true) => write!(f, "z^{k}")?,
                (_, false) => write!(f, "{mag}*z^{k}")?,
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct CycScalarJson {
    m: u32,
    coeffs: Vec<Rational>,
}

impl Serialize for CycScalar {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CycScalarJson { m: self.field.m, coeffs: self.coeffs() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for CycScalar {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = CycScalarJson::deserialize(d)?;
        CycField::get(j.m).and_then(|f| f.from_coeffs(&j.coeffs)).map_err(D::Error::custom)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $body:expr) => {
        impl $tr<&CycScalar> for &CycScalar {
            type Output = CycScalar;
            fn $method(self, rhs: &CycScalar) -> CycScalar {
                $body(self, rhs)
            }
        }
        impl $tr<CycScalar> for CycScalar {
            type Output = CycScalar;
            fn $method(self, rhs: CycScalar) -> CycScalar {
                $body(&self, &rhs)
            }
        }
        impl $tr<&CycScalar> for CycScalar {
            type Output = CycScalar;
            fn $method(self, rhs: &CycScalar) -> CycScalar {
                $body(&self, rhs)
            }
        }
        impl $tr<CycScalar> for &CycScalar {
            type Output = CycScalar;
            fn $method(self, rhs: CycScalar) -> CycScalar {
                $body(self, &rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a: &CycScalar, b: &CycScalar| a.add_impl(b, false));
forward_binop!(Sub, sub, |a: &CycScalar, b: &CycScalar| a.add_impl(b, true));
forward_binop!(Mul, mul, |a: &CycScalar, b: &CycScalar| a.mul_impl(b));

impl AddAssign<&CycScalar> for CycScalar {
    fn add_assign(&mut self, rhs: &CycScalar) {
        *self = self.add_impl(rhs, false);
    }
}

impl SubAssign<&CycScalar> for CycScalar {
    fn sub_assign(&mut self, rhs: &CycScalar) {
        *self = self.add_impl(rhs, true);
    }
}

impl Neg for &CycScalar {
    type Output = CycScalar;
    fn neg(self) -> CycScalar {
        let repr = match &self.repr {
            Repr::Small { num, den } if num.iter().all(|&n| n != i64::MIN) => {
                Repr::Small { num: num.iter().map(|&n| -n).collect(), den: *den }
            }
            _ => {
                let (num, den) = self.to_big();
                return finish_big(self.field, num.into_iter().map(|n| -n).collect(), den);
            }
        };
        CycScalar { field: self.field, repr }
    }
}

impl Neg for CycScalar {
    type Output = CycScalar;
    fn neg(self) -> CycScalar {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d).unwrap()
    }

    #[test]
    fn small_conductors() {
        assert_eq!(CycScalar::root_of_unity(1, 5).unwrap(), CycScalar::from_int(1, 1).unwrap());
        assert_eq!(CycScalar::root_of_unity(2, 1).unwrap(), CycScalar::from_int(2, -1).unwrap());
        assert_eq!(CycScalar::root_of_unity(2, 1).unwrap(), CycScalar::from_int(1, -1).unwrap());
    }

    #[test]
    fn big_fallback_round_trips() {
        let f = CycField::get(12).unwrap();
        let big = f.from_int(i64::MAX);
        let sq = &big * &big;
        let back = sq.checked_div(&big).unwrap();
        assert_eq!(back, big);
        let tiny = f.from_rational(&q(1, i64::MAX));
        assert!((&tiny * &big).is_one());
    }

    #[test]
    fn inverse_of_generic_element() {
        let f = CycField::get(12).unwrap();
        let a = f.from_coeffs(&[q(1, 2), q(-3, 1), q(0, 1), q(2, 5)]).unwrap();
        let b = a.inv().unwrap();
        assert!((&a * &b).is_one());
        assert!(f.zero().inv().is_err());
    }

    #[test]
    fn mixed_conductor_with_rational_lifts() {
        let w = CycScalar::root_of_unity(12, 1).unwrap();
        let two = CycScalar::from_int(1, 2).unwrap();
        let p = &w * &two;
        assert_eq!(p.conductor(), 12);
        assert_eq!(p, &w + &w);
    }

    #[test]
    fn display_is_readable() {
        let f = CycField::get(12).unwrap();
        let a = f.from_coeffs(&[q(1, 2), q(0, 1), q(-1, 1), q(0, 1)]).unwrap();
        assert_eq!(a.to_string(), "1/2 - z^2");
    }

    #[test]
    fn json_shape() {
        let w = CycScalar::root_of_unity(12, 4).unwrap();
        let s = serde_json::to_string(&w).unwrap();
        assert_eq!(s, r#"{"m":12,"coeffs":[["-1","1"],["0","1"],["1","1"],["0","1"]]}"#);
        assert_eq!(serde_json::from_str::<CycScalar>(&s).unwrap(), w);
    }
}
