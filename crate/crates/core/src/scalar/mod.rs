//! Exact ground fields carrying the deformation parameter `q`.
//!
//! Three fields are supported: the rationals (where `q = 1`), the field of
//! rational functions `Q(q)` (generic `q`), and the cyclotomic field
//! `Q[q]/Φ_m(q)` (`q` a primitive `m`-th root of unity). Every [`Scalar`] is
//! kept in a canonical form so that structural equality is field equality.

mod upoly;

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use upoly::UPoly;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("scalars from different fields: {0} and {1}")]
    FieldMismatch(String, String),
    #[error("cannot specialize {0} at q = 1")]
    NotSpecializable(String),
    #[error("cyclotomic order must be at least 2, got {0}")]
    BadOrder(u32),
}

/// Which exact field the coefficients live in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FieldSpec {
    Rationals,
    GenericQ,
    CyclotomicQ(u32),
}

impl FieldSpec {
    pub fn name(&self) -> String {
        match self {
            FieldSpec::Rationals => "rationals".into(),
            FieldSpec::GenericQ => "generic_q".into(),
            FieldSpec::CyclotomicQ(m) => format!("cyclotomic:{m}"),
        }
    }

    pub fn parse(s: &str) -> Option<FieldSpec> {
        match s.trim() {
            "rationals" | "q=1" => Some(FieldSpec::Rationals),
            "generic_q" | "generic" => Some(FieldSpec::GenericQ),
            other => {
                let m = other.strip_prefix("cyclotomic:")?.trim().parse().ok()?;
                (m >= 2).then_some(FieldSpec::CyclotomicQ(m))
            }
        }
    }

    /// True when `q = 1` in this field.
    pub fn is_classical(&self) -> bool {
        matches!(self, FieldSpec::Rationals)
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

/// A field instance: its kind plus the cyclotomic modulus when relevant.
#[derive(Clone, Debug)]
pub struct Field {
    spec: FieldSpec,
    modulus: Option<Arc<UPoly>>,
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.spec == other.spec
    }
}

impl Eq for Field {}

impl Field {
    pub fn new(spec: FieldSpec) -> Result<Field, ScalarError> {
        let modulus = match spec {
            FieldSpec::CyclotomicQ(m) if m < 2 => return Err(ScalarError::BadOrder(m)),
            FieldSpec::CyclotomicQ(m) => Some(Arc::new(UPoly::cyclotomic(m))),
            _ => None,
        };
        Ok(Field { spec, modulus })
    }

    pub fn rationals() -> Field {
        Field { spec: FieldSpec::Rationals, modulus: None }
    }

    pub fn generic() -> Field {
        Field { spec: FieldSpec::GenericQ, modulus: None }
    }

    pub fn cyclotomic(m: u32) -> Field {
        Field::new(FieldSpec::CyclotomicQ(m)).expect("cyclotomic order must be >= 2")
    }

    pub fn spec(&self) -> FieldSpec {
        self.spec
    }

    pub fn zero(&self) -> Scalar {
        self.from_rational(BigRational::zero())
    }

    pub fn one(&self) -> Scalar {
        self.from_rational(BigRational::one())
    }

    pub fn from_int(&self, c: i64) -> Scalar {
        self.from_rational(BigRational::from_integer(c.into()))
    }

    pub fn from_rational(&self, c: BigRational) -> Scalar {
        match self.spec {
            FieldSpec::Rationals => Scalar::Rat(c),
            FieldSpec::GenericQ => Scalar::Fun(RatFun::constant(c)),
            FieldSpec::CyclotomicQ(m) => Scalar::Cyc(Cyclo {
                order: m,
                modulus: self.modulus.clone().unwrap(),
                value: UPoly::constant(c),
            }),
        }
    }

    /// The parameter `q` itself.
    pub fn q(&self) -> Scalar {
        self.q_power(1)
    }

    /// `q^e` in canonical form; `e` may be negative.
    pub fn q_power(&self, e: i64) -> Scalar {
        match self.spec {
            FieldSpec::Rationals => self.one(),
            FieldSpec::GenericQ => Scalar::Fun(RatFun::q_power(e)),
            FieldSpec::CyclotomicQ(m) => {
                let k = e.rem_euclid(m as i64) as usize;
                let modulus = self.modulus.clone().unwrap();
                let value = UPoly::monomial(BigRational::one(), k).rem(&modulus);
                Scalar::Cyc(Cyclo { order: m, modulus, value })
            }
        }
    }

    /// Lifts a polynomial in `q` into the field.
    pub fn from_upoly(&self, p: &UPoly) -> Scalar {
        match self.spec {
            FieldSpec::Rationals => Scalar::Rat(p.eval(&BigRational::one())),
            FieldSpec::GenericQ => Scalar::Fun(RatFun::from_poly(p.clone())),
            FieldSpec::CyclotomicQ(m) => {
                let modulus = self.modulus.clone().unwrap();
                Scalar::Cyc(Cyclo { order: m, value: p.rem(&modulus), modulus })
            }
        }
    }

    /// True when `s` lives in this field.
    pub fn owns(&self, s: &Scalar) -> bool {
        s.field_spec() == self.spec
    }
}

/// Reduced rational function `num/den` with `den` monic and coprime to `num`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RatFun {
    num: UPoly,
    den: UPoly,
}

impl RatFun {
    pub fn constant(c: BigRational) -> RatFun {
        RatFun { num: UPoly::constant(c), den: UPoly::one() }
    }

    pub fn from_poly(p: UPoly) -> RatFun {
        RatFun { num: p, den: UPoly::one() }
    }

    pub fn q_power(e: i64) -> RatFun {
        let one = BigRational::one();
        if e >= 0 {
            RatFun { num: UPoly::monomial(one, e as usize), den: UPoly::one() }
        } else {
            RatFun { num: UPoly::one(), den: UPoly::monomial(one, e.unsigned_abs() as usize) }
        }
    }

    pub fn new(num: UPoly, den: UPoly) -> Result<RatFun, ScalarError> {
        if den.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: UPoly, den: UPoly) -> RatFun {
        if num.is_zero() {
            return RatFun { num, den: UPoly::one() };
        }
        let g = num.gcd(&den);
        let (mut num, mut den) = if g.is_one() {
            (num, den)
        } else {
            (num.exact_div(&g), den.exact_div(&g))
        };
        let lead = den.leading().unwrap().clone();
        if !lead.is_one() {
            let inv = lead.recip();
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        RatFun { num, den }
    }

    pub fn numerator(&self) -> &UPoly {
        &self.num
    }

    pub fn denominator(&self) -> &UPoly {
        &self.den
    }

    fn add(&self, other: &RatFun) -> RatFun {
        if self.den == other.den {
            if self.den.is_one() {
                return RatFun { num: self.num.add(&other.num), den: UPoly::one() };
            }
            return Self::reduce(self.num.add(&other.num), self.den.clone());
        }
        let num = self.num.mul(&other.den).add(&other.num.mul(&self.den));
        Self::reduce(num, self.den.mul(&other.den))
    }

    fn mul(&self, other: &RatFun) -> RatFun {
        if self.num.is_zero() || other.num.is_zero() {
            return RatFun { num: UPoly::zero(), den: UPoly::one() };
        }
        let g1 = self.num.gcd(&other.den);
        let g2 = other.num.gcd(&self.den);
        let a = self.num.exact_div(&g1);
        let d = other.den.exact_div(&g1);
        let c = other.num.exact_div(&g2);
        let b = self.den.exact_div(&g2);
        // Cross-cancelled factors are already coprime; only normalize the leading coefficient.
        let num = a.mul(&c);
        let den = b.mul(&d);
        let lead = den.leading().unwrap().clone();
        if lead.is_one() {
            RatFun { num, den }
        } else {
            let inv = lead.recip();
            RatFun { num: num.scale(&inv), den: den.scale(&inv) }
        }
    }

    fn inv(&self) -> Option<RatFun> {
        if self.num.is_zero() {
            return None;
        }
        Some(Self::reduce(self.den.clone(), self.num.clone()))
    }

    fn neg(&self) -> RatFun {
        RatFun { num: self.num.neg(), den: self.den.clone() }
    }

    /// Value at `q = 1`, if the denominator does not vanish there.
    pub fn eval_at_one(&self) -> Option<BigRational> {
        let one = BigRational::one();
        let d = self.den.eval(&one);
        (!d.is_zero()).then(|| self.num.eval(&one) / d)
    }
}

/// Residue modulo `Φ_m(q)`, kept of degree `< φ(m)`.
#[derive(Clone, Debug)]
pub struct Cyclo {
    order: u32,
    modulus: Arc<UPoly>,
    value: UPoly,
}

impl PartialEq for Cyclo {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order && self.value == other.value
    }
}

impl Eq for Cyclo {}

impl std::hash::Hash for Cyclo {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.order.hash(state);
        self.value.hash(state);
    }
}

impl Cyclo {
    pub fn value(&self) -> &UPoly {
        &self.value
    }

    fn with(&self, value: UPoly) -> Cyclo {
        Cyclo { order: self.order, modulus: self.modulus.clone(), value }
    }
}

/// An element of one of the supported fields.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Scalar {
    Rat(BigRational),
    Fun(RatFun),
    Cyc(Cyclo),
}

/// The field operations exposed as a single dispatch point.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Mul,
    Neg,
    Inv,
    Eq,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FieldOpResult {
    Value(Scalar),
    Bool(bool),
}

/// Applies `op` to `a` (and `b` for binary operations).
pub fn field_op(a: &Scalar, b: &Scalar, op: FieldOp) -> Result<FieldOpResult, ScalarError> {
    Ok(match op {
        FieldOp::Add => FieldOpResult::Value(a.try_add(b)?),
        FieldOp::Mul => FieldOpResult::Value(a.try_mul(b)?),
        FieldOp::Neg => FieldOpResult::Value(-a),
        FieldOp::Inv => FieldOpResult::Value(a.inv()?),
        FieldOp::Eq => {
            a.check_same(b)?;
            FieldOpResult::Bool(a == b)
        }
    })
}

impl Scalar {
    pub fn field_spec(&self) -> FieldSpec {
        match self {
            Scalar::Rat(_) => FieldSpec::Rationals,
            Scalar::Fun(_) => FieldSpec::GenericQ,
            Scalar::Cyc(c) => FieldSpec::CyclotomicQ(c.order),
        }
    }

    fn check_same(&self, other: &Scalar) -> Result<(), ScalarError> {
        if self.field_spec() == other.field_spec() {
            Ok(())
        } else {
            Err(ScalarError::FieldMismatch(self.field_spec().name(), other.field_spec().name()))
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_zero(),
            Scalar::Fun(f) => f.num.is_zero(),
            Scalar::Cyc(c) => c.value.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_one(),
            Scalar::Fun(f) => f.num.is_one() && f.den.is_one(),
            Scalar::Cyc(c) => c.value.is_one(),
        }
    }

    pub fn zero_like(&self) -> Scalar {
        match self {
            Scalar::Rat(_) => Scalar::Rat(BigRational::zero()),
            Scalar::Fun(_) => Scalar::Fun(RatFun::constant(BigRational::zero())),
            Scalar::Cyc(c) => Scalar::Cyc(c.with(UPoly::zero())),
        }
    }

    pub fn one_like(&self) -> Scalar {
        match self {
            Scalar::Rat(_) => Scalar::Rat(BigRational::one()),
            Scalar::Fun(_) => Scalar::Fun(RatFun::constant(BigRational::one())),
            Scalar::Cyc(c) => Scalar::Cyc(c.with(UPoly::one())),
        }
    }

    pub fn try_add(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        Ok(match (self, other) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a + b),
            (Scalar::Fun(a), Scalar::Fun(b)) => Scalar::Fun(a.add(b)),
            (Scalar::Cyc(a), Scalar::Cyc(b)) if a.order == b.order => {
                Scalar::Cyc(a.with(a.value.add(&b.value)))
            }
            _ => return Err(self.check_same(other).unwrap_err()),
        })
    }

    pub fn try_sub(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        self.try_add(&-other)
    }

    pub fn try_mul(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        Ok(match (self, other) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a * b),
            (Scalar::Fun(a), Scalar::Fun(b)) => Scalar::Fun(a.mul(b)),
            (Scalar::Cyc(a), Scalar::Cyc(b)) if a.order == b.order => {
                Scalar::Cyc(a.with(a.value.mul(&b.value).rem(&a.modulus)))
            }
            _ => return Err(self.check_same(other).unwrap_err()),
        })
    }

    pub fn inv(&self) -> Result<Scalar, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(match self {
            Scalar::Rat(a) => Scalar::Rat(a.recip()),
            Scalar::Fun(a) => Scalar::Fun(a.inv().unwrap()),
            Scalar::Cyc(a) => {
                let inv = a.value.inverse_mod(&a.modulus).ok_or(ScalarError::DivisionByZero)?;
                Scalar::Cyc(a.with(inv))
            }
        })
    }

    pub fn try_div(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        self.check_same(other)?;
        self.try_mul(&other.inv()?)
    }

    pub fn pow(&self, e: i64) -> Result<Scalar, ScalarError> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut acc = match self {
            Scalar::Rat(_) => Scalar::Rat(BigRational::one()),
            Scalar::Fun(_) => Scalar::Fun(RatFun::constant(BigRational::one())),
            Scalar::Cyc(c) => Scalar::Cyc(c.with(UPoly::one())),
        };
        for _ in 0..e.unsigned_abs() {
            acc = &acc * &base;
        }
        Ok(acc)
    }

    /// Value obtained by setting `q = 1`.
    pub fn eval_at_one(&self) -> Result<BigRational, ScalarError> {
        match self {
            Scalar::Rat(r) => Ok(r.clone()),
            Scalar::Fun(f) => f.eval_at_one().ok_or_else(|| ScalarError::NotSpecializable(self.to_string())),
            Scalar::Cyc(_) => Err(ScalarError::NotSpecializable(self.to_string())),
        }
    }

    /// `Some(c)` if the scalar is a rational constant.
    pub fn as_rational(&self) -> Option<BigRational> {
        match self {
            Scalar::Rat(r) => Some(r.clone()),
            Scalar::Fun(f) if f.den.is_one() && f.num.degree().unwrap_or(0) == 0 => {
                Some(f.num.coeffs().first().cloned().unwrap_or_else(BigRational::zero))
            }
            Scalar::Cyc(c) if c.value.degree().unwrap_or(0) == 0 => {
                Some(c.value.coeffs().first().cloned().unwrap_or_else(BigRational::zero))
            }
            _ => None,
        }
    }

    /// True when the printed form needs no parentheses as a coefficient.
    pub fn is_simple(&self) -> bool {
        match self {
            Scalar::Rat(_) => true,
            Scalar::Fun(f) => {
                f.num.as_term().is_some() && (f.den.is_one() || f.den.as_unit_monomial().is_some())
            }
            Scalar::Cyc(c) => c.value.as_term().is_some() || c.value.is_zero(),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rat(r) => write!(f, "{r}"),
            Scalar::Cyc(c) => c.value.write_laurent(f, 0),
            Scalar::Fun(rf) => {
                if rf.den.is_one() {
                    return rf.num.write_laurent(f, 0);
                }
                if let Some(k) = rf.den.as_unit_monomial() {
                    return rf.num.write_laurent(f, -(k as i64));
                }
                // Integer-coefficient numerator and denominator with positive leading denominator.
                let l = {
                    use num_integer::Integer;
                    rf.num.denominator_lcm().lcm(&rf.den.denominator_lcm())
                };
                let lr = BigRational::from_integer(l);
                let num = rf.num.scale(&lr);
                let den = rf.den.scale(&lr);
                let g = {
                    use num_integer::Integer;
                    num.content().gcd(&den.content())
                };
                let g = if g.is_zero() { BigInt::one() } else { g.abs() };
                let gr = BigRational::from_integer(g).recip();
                let num = num.scale(&gr);
                let den = den.scale(&gr);
                let wrap = |p: &UPoly| p.as_term().is_none();
                if wrap(&num) {
                    write!(f, "({num})")?;
                } else {
                    write!(f, "{num}")?;
                }
                if wrap(&den) {
                    write!(f, "/({den})")
                } else {
                    write!(f, "/{den}")
                }
            }
        }
    }
}

impl Serialize for Scalar {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $try:ident) => {
        impl<'a> $trait<&'a Scalar> for &'a Scalar {
            type Output = Scalar;
            /// Panics when the operands come from different fields.
            fn $method(self, rhs: &'a Scalar) -> Scalar {
                self.$try(rhs).expect(concat!("scalar ", stringify!($method)))
            }
        }
        impl $trait<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);
forward_binop!(Div, div, try_div);

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rat(r) => Scalar::Rat(-r),
            Scalar::Fun(f) => Scalar::Fun(f.neg()),
            Scalar::Cyc(c) => Scalar::Cyc(c.with(c.value.neg())),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(a: i64, b: i64) -> Scalar {
        Scalar::Rat(BigRational::new(a.into(), b.into()))
    }

    #[test]
    fn rational_addition() {
        assert_eq!(&rat(1, 2) + &rat(1, 3), rat(5, 6));
    }

    #[test]
    fn generic_inverse_of_q() {
        let f = Field::generic();
        let q = f.q();
        let qi = q.inv().unwrap();
        assert_eq!(qi, f.q_power(-1));
        assert!((&q * &qi).is_one());
        assert_eq!(qi.to_string(), "q^-1");
    }

    #[test]
    fn fourth_root_squares_to_minus_one() {
        let f = Field::cyclotomic(4);
        let q = f.q();
        assert_eq!(&q * &q, f.from_int(-1));
    }

    #[test]
    fn q_power_basics() {
        for f in [Field::rationals(), Field::generic(), Field::cyclotomic(3), Field::cyclotomic(4)] {
            assert!(f.q_power(0).is_one());
        }
        assert!(Field::cyclotomic(3).q_power(3).is_one());
        let f4 = Field::cyclotomic(4);
        // Inverse of q modulo q^2 + 1 computed by extended Euclid is -q.
        assert_eq!(f4.q_power(-1), -f4.q());
        assert!((&f4.q() * &f4.q_power(-1)).is_one());
    }

    #[test]
    fn mixing_fields_is_an_error() {
        let a = Field::generic().q();
        let b = Field::cyclotomic(4).q();
        assert!(matches!(a.try_add(&b), Err(ScalarError::FieldMismatch(..))));
        let c = Field::cyclotomic(3).q();
        assert!(b.try_mul(&c).is_err());
        assert_eq!(
            field_op(&a, &a, FieldOp::Eq).unwrap(),
            FieldOpResult::Bool(true)
        );
    }

    #[test]
    fn inverse_of_zero() {
        for f in [Field::rationals(), Field::generic(), Field::cyclotomic(5)] {
            assert_eq!(f.zero().inv(), Err(ScalarError::DivisionByZero));
        }
    }

    #[test]
    fn rational_function_display_and_canonical_form() {
        let f = Field::generic();
        let q = f.q();
        let one = f.one();
        let x = (&q + &one) / (&q - &one);
        assert_eq!(x.to_string(), "(q + 1)/(q - 1)");
        let y = (&(&q * &q) - &one) / (&q - &one);
        assert_eq!(y, &q + &one);
        let half = f.from_rational(BigRational::new(1.into(), 2.into()));
        let z = &one / &(&half * &q + half.clone());
        assert_eq!(z.to_string(), "2/(q + 1)");
    }
}
