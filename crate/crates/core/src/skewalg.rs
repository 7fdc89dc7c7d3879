//! The quantum polynomial algebra `A_{q,n} = k<x1..x_{n+1}> / (x_i x_j = q x_j x_i, i < j)`.
//!
//! Elements are stored in the PBW basis of increasing-index monomials
//! `x1^a1 * ... * x_{n+1}^a_{n+1}`. Moving a variable past a smaller-index one
//! costs a factor `q^-1`, so two basis monomials multiply as
//! `x^a * x^b = q^{-kappa(a, b)} x^{a+b}` with `kappa(a, b) = sum_{i<j} a_j b_i`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::scalar::{Field, FieldSpec, Scalar};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("operands have {0} and {1} variables")]
    VariableCount(usize, usize),
    #[error("coefficient field {found} does not match algebra field {expected}")]
    FieldMismatch { expected: FieldSpec, found: FieldSpec },
}

/// Exponent vector of a PBW monomial.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Monomial {
        Monomial(exps)
    }

    pub fn one(nvars: usize) -> Monomial {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Monomial {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    /// Product of the listed variables, each to the power `p`.
    pub fn of_vars(nvars: usize, vars: &[usize], p: u32) -> Monomial {
        let mut e = vec![0; nvars];
        for &v in vars {
            e[v] += p;
        }
        Monomial(e)
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn pow(&self, p: u32) -> Monomial {
        Monomial(self.0.iter().map(|a| a * p).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        Monomial(other.0.iter().zip(&self.0).map(|(b, a)| b - a).collect())
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    /// All monomials of total degree `d` in ascending order.
    pub fn all_of_degree(nvars: usize, d: u32) -> Vec<Monomial> {
        let mut out = Vec::new();
        let mut cur = vec![0u32; nvars];
        fn rec(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
            let n = cur.len();
            if i + 1 == n {
                cur[i] = left;
                out.push(Monomial(cur.clone()));
                return;
            }
            for e in 0..=left {
                cur[i] = e;
                rec(i + 1, left - e, cur, out);
            }
        }
        if nvars == 0 {
            if d == 0 {
                out.push(Monomial(Vec::new()));
            }
            return out;
        }
        rec(0, d, &mut cur, &mut out);
        out.sort();
        out
    }
}

/// Graded order; within a degree, exponent vectors compare from `x_{n+1}` down,
/// so `x1 < x2 < ... < x_{n+1}`.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.iter().rev().cmp(other.0.iter().rev()))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        let mut first = true;
        for (i, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "x{}", i + 1)?;
            } else {
                write!(f, "x{}^{}", i + 1, e)?;
            }
        }
        Ok(())
    }
}

/// Inversion count of the concatenated word `x^a x^b`: `sum_{i<j} a_j b_i`.
pub fn kappa(a: &Monomial, b: &Monomial) -> i64 {
    let mut acc = 0i64;
    let mut prefix = 0i64; // sum of b_i for i < j
    for (aj, bj) in a.0.iter().zip(&b.0) {
        acc += *aj as i64 * prefix;
        prefix += *bj as i64;
    }
    acc
}

/// Exponent of `q` in `phi_u(x^b) = q^{twist_exponent(u, b)} x^b`, defined by
/// `u * x^b = phi_u(x^b) * u`.
pub fn twist_exponent(u: &Monomial, b: &Monomial) -> i64 {
    kappa(b, u) - kappa(u, b)
}

/// Element of `A_{q,n}` in PBW normal form.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct SkewPolynomial {
    nvars: usize,
    terms: BTreeMap<Monomial, Scalar>,
}

impl SkewPolynomial {
    pub fn zero(nvars: usize) -> Self {
        SkewPolynomial { nvars, terms: BTreeMap::new() }
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Monomial, Scalar)>) -> Self {
        let mut p = Self::zero(nvars);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Scalar)> + ExactSizeIterator {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> Option<&Scalar> {
        self.terms.get(m)
    }

    pub fn add_term(&mut self, m: Monomial, c: Scalar) {
        debug_assert_eq!(m.nvars(), self.nvars);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get() + &c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, other: &SkewPolynomial) -> SkewPolynomial {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> SkewPolynomial {
        SkewPolynomial { nvars: self.nvars, terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }

    pub fn sub(&self, other: &SkewPolynomial) -> SkewPolynomial {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Scalar) -> SkewPolynomial {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        SkewPolynomial { nvars: self.nvars, terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect() }
    }

    /// Common degree of all terms, `None` if zero or inhomogeneous.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut it = self.terms.keys().map(|m| m.degree());
        let d = it.next()?;
        it.all(|e| e == d).then_some(d)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.homogeneous_degree().is_some()
    }

    /// The scalar if this is a constant (possibly zero) polynomial.
    pub fn as_constant(&self) -> Option<Scalar> {
        match self.terms.len() {
            0 => None,
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    /// Greatest monomial in the storage order.
    pub fn leading(&self) -> Option<(&Monomial, &Scalar)> {
        self.terms.iter().next_back()
    }
}

fn write_term(f: &mut String, m: &Monomial, c: &Scalar) {
    if m.is_one() {
        if c.is_simple() {
            f.push_str(&c.to_string());
        } else {
            f.push_str(&format!("({c})"));
        }
        return;
    }
    if c.is_one() {
        f.push_str(&m.to_string());
    } else if (-c).is_one() {
        f.push('-');
        f.push_str(&m.to_string());
    } else if c.is_simple() {
        f.push_str(&format!("{c} {m}"));
    } else {
        f.push_str(&format!("({c}) {m}"));
    }
}

impl fmt::Display for SkewPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut out = String::new();
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let mut t = String::new();
            write_term(&mut t, m, c);
            if i == 0 {
                out.push_str(&t);
            } else if let Some(rest) = t.strip_prefix('-') {
                out.push_str(" - ");
                out.push_str(rest);
            } else {
                out.push_str(" + ");
                out.push_str(&t);
            }
        }
        f.write_str(&out)
    }
}

impl Serialize for SkewPolynomial {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// The algebra `A_{q,n}` over a chosen field: `n + 1` variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Algebra {
    n: usize,
    field: Field,
}

impl Algebra {
    pub fn new(n: usize, field: Field) -> Algebra {
        Algebra { n, field }
    }

    /// The `n` of `A_{q,n}`; there are `n + 1` variables.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn nvars(&self) -> usize {
        self.n + 1
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn zero(&self) -> SkewPolynomial {
        SkewPolynomial::zero(self.nvars())
    }

    pub fn one(&self) -> SkewPolynomial {
        self.constant(self.field.one())
    }

    pub fn constant(&self, c: Scalar) -> SkewPolynomial {
        SkewPolynomial::from_terms(self.nvars(), [(Monomial::one(self.nvars()), c)])
    }

    pub fn var(&self, i: usize) -> SkewPolynomial {
        self.monomial(Monomial::var(self.nvars(), i))
    }

    pub fn monomial(&self, m: Monomial) -> SkewPolynomial {
        SkewPolynomial::from_terms(self.nvars(), [(m, self.field.one())])
    }

    pub fn q_power(&self, e: i64) -> Scalar {
        self.field.q_power(e)
    }

    /// `x^a * x^b = q^{-kappa(a,b)} x^{a+b}`.
    pub fn monomial_product(&self, a: &Monomial, b: &Monomial) -> (Scalar, Monomial) {
        (self.field.q_power(-kappa(a, b)), a.mul(b))
    }

    fn check(&self, f: &SkewPolynomial) -> Result<(), AlgebraError> {
        if f.nvars != self.nvars() {
            return Err(AlgebraError::VariableCount(self.nvars(), f.nvars));
        }
        if let Some((_, c)) = f.terms.iter().next() {
            if c.field_spec() != self.field.spec() {
                return Err(AlgebraError::FieldMismatch { expected: self.field.spec(), found: c.field_spec() });
            }
        }
        Ok(())
    }

    pub fn multiply(&self, f: &SkewPolynomial, g: &SkewPolynomial) -> Result<SkewPolynomial, AlgebraError> {
        self.check(f)?;
        self.check(g)?;
        let mut out = self.zero();
        for (a, ca) in &f.terms {
            for (b, cb) in &g.terms {
                let (s, m) = self.monomial_product(a, b);
                out.add_term(m, &(ca * cb) * &s);
            }
        }
        Ok(out)
    }

    /// `u * f` for a basis monomial `u`.
    pub fn mul_monomial_left(&self, u: &Monomial, f: &SkewPolynomial) -> SkewPolynomial {
        let terms = f.terms.iter().map(|(b, c)| {
            let (s, m) = self.monomial_product(u, b);
            (m, c * &s)
        });
        SkewPolynomial::from_terms(self.nvars(), terms)
    }

    /// `f * u` for a basis monomial `u`.
    pub fn mul_monomial_right(&self, f: &SkewPolynomial, u: &Monomial) -> SkewPolynomial {
        let terms = f.terms.iter().map(|(b, c)| {
            let (s, m) = self.monomial_product(b, u);
            (m, c * &s)
        });
        SkewPolynomial::from_terms(self.nvars(), terms)
    }

    /// The automorphism with `u * f = phi_twist(u, f) * u`.
    pub fn phi_twist(&self, u: &Monomial, f: &SkewPolynomial) -> SkewPolynomial {
        let terms = f
            .terms
            .iter()
            .map(|(b, c)| (b.clone(), c * &self.field.q_power(twist_exponent(u, b))));
        SkewPolynomial::from_terms(self.nvars(), terms)
    }

    pub fn power(&self, f: &SkewPolynomial, k: u32) -> SkewPolynomial {
        let mut acc = self.one();
        for _ in 0..k {
            acc = self.multiply(&acc, f).expect("same algebra");
        }
        acc
    }

    /// Number of PBW monomials of degree `d`.
    pub fn pbw_dimension(&self, d: u32) -> usize {
        Monomial::all_of_degree(self.nvars(), d).len()
    }

    pub fn parse(&self, s: &str) -> Result<SkewPolynomial, crate::text::ParseError> {
        crate::text::parse_polynomial(s, self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mono(e: &[u32]) -> Monomial {
        Monomial::new(e.to_vec())
    }

    #[test]
    fn commutation_rule() {
        let alg = Algebra::new(1, Field::generic());
        let x1 = alg.var(0);
        let x2 = alg.var(1);
        let p = alg.multiply(&x2, &x1).unwrap();
        assert_eq!(p, alg.monomial(mono(&[1, 1])).scale(&alg.q_power(-1)));
        assert_eq!(alg.multiply(&x1, &x2).unwrap(), alg.monomial(mono(&[1, 1])));
        let x2sq = alg.multiply(&x2, &x2).unwrap();
        assert_eq!(
            alg.multiply(&x2sq, &x1).unwrap(),
            alg.monomial(mono(&[1, 2])).scale(&alg.q_power(-2))
        );
    }

    #[test]
    fn kappa_symmetry() {
        let a = mono(&[1, 0, 2]);
        let b = mono(&[0, 3, 1]);
        let tot = (a.degree() * b.degree()) as i64;
        let diag: i64 = a.exps().iter().zip(b.exps()).map(|(x, y)| (*x * *y) as i64).sum();
        assert_eq!(kappa(&a, &b) + kappa(&b, &a), tot - diag);
    }

    #[test]
    fn twist_identity() {
        let alg = Algebra::new(1, Field::generic());
        let u = mono(&[0, 1]);
        let x1 = alg.var(0);
        // x2 x1 = q^-1 x1 x2, so phi_{x2}(x1) = q^-1 x1.
        assert_eq!(alg.phi_twist(&u, &x1), x1.scale(&alg.q_power(-1)));
        let u = mono(&[1, 1]);
        let lhs = alg.mul_monomial_left(&u, &x1);
        let rhs = alg.mul_monomial_right(&alg.phi_twist(&u, &x1), &u);
        assert_eq!(lhs, rhs);
        let classical = Algebra::new(2, Field::rationals());
        let f = classical.parse("x1*x3 + 2 x2").unwrap();
        assert_eq!(classical.phi_twist(&mono(&[0, 2, 1]), &f), f);
    }

    #[test]
    fn display_and_parse_round_trip() {
        let alg = Algebra::new(1, Field::generic());
        let p = alg.parse("x2*x1 + 2 x2^2").unwrap();
        assert_eq!(p.to_string(), "q^-1 x1*x2 + 2 x2^2");
        assert_eq!(alg.parse(&p.to_string()).unwrap(), p);
        let p = alg.parse("(q+1)/(q-1) x1 - 3/2 q^2 x2 + q^-3").unwrap();
        assert_eq!(alg.parse(&p.to_string()).unwrap(), p);
        assert!(alg.parse("x3").is_err());
    }

    #[test]
    fn pbw_counts() {
        let alg = Algebra::new(2, Field::generic());
        assert_eq!(alg.pbw_dimension(2), 6);
        assert_eq!(Monomial::all_of_degree(2, 1), vec![mono(&[1, 0]), mono(&[0, 1])]);
    }

    #[test]
    fn mismatched_algebras() {
        let a = Algebra::new(1, Field::generic());
        let b = Algebra::new(2, Field::generic());
        assert!(a.multiply(&a.var(0), &b.var(0)).is_err());
        let c = Algebra::new(1, Field::rationals());
        assert!(matches!(a.multiply(&a.var(0), &c.var(0)), Err(AlgebraError::FieldMismatch { .. })));
    }
}
