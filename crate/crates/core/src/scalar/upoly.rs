//! Dense univariate polynomials in `q` with rational coefficients.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Coefficients are stored low degree first with no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct UPoly {
    coeffs: Vec<BigRational>,
}

impl UPoly {
    pub fn zero() -> Self {
        UPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// `c * q^k`.
    pub fn monomial(c: BigRational, k: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigRational::zero(); k + 1];
        coeffs[k] = c;
        UPoly { coeffs }
    }

    pub fn from_coeffs(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UPoly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| BigRational::from_integer(c.into())).collect())
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    /// Exponent of the lowest nonzero term.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// Returns `Some(k)` when the polynomial is exactly `q^k`.
    pub fn as_unit_monomial(&self) -> Option<usize> {
        let k = self.valuation()?;
        (k + 1 == self.coeffs.len() && self.coeffs[k].is_one()).then_some(k)
    }

    /// Returns `(c, k)` when the polynomial is a single term `c q^k`.
    pub fn as_term(&self) -> Option<(&BigRational, usize)> {
        let k = self.valuation()?;
        (k + 1 == self.coeffs.len()).then(|| (&self.coeffs[k], k))
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let zero = BigRational::zero();
        let coeffs = (0..n)
            .map(|i| self.coeffs.get(i).unwrap_or(&zero) + other.coeffs.get(i).unwrap_or(&zero))
            .collect();
        Self::from_coeffs(coeffs)
    }

    pub fn neg(&self) -> Self {
        UPoly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        UPoly { coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    /// Multiply by `q^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() || k == 0 {
            return self.clone();
        }
        let mut coeffs = vec![BigRational::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        UPoly { coeffs }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if let Some((c, k)) = other.as_term() {
            return self.scale(c).shift(k);
        }
        if let Some((c, k)) = self.as_term() {
            return other.scale(c).shift(k);
        }
        let mut coeffs = vec![BigRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        Self::from_coeffs(coeffs)
    }

    /// Euclidean division. Panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let dd = divisor.degree().expect("division by zero polynomial");
        let lead = divisor.leading().unwrap().clone();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![BigRational::zero(); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = &rem[i + dd] / &lead;
            if c.is_zero() {
                continue;
            }
            for (j, b) in divisor.coeffs.iter().enumerate() {
                rem[i + j] -= &c * b;
            }
            quot[i] = c;
        }
        rem.truncate(dd);
        (Self::from_coeffs(quot), Self::from_coeffs(rem))
    }

    pub fn rem(&self, divisor: &Self) -> Self {
        self.div_rem(divisor).1
    }

    /// Exact division; the caller guarantees divisibility.
    pub fn exact_div(&self, divisor: &Self) -> Self {
        if let Some(k) = divisor.as_unit_monomial() {
            return UPoly::from_coeffs(self.coeffs[k.min(self.coeffs.len())..].to_vec());
        }
        let (q, r) = self.div_rem(divisor);
        debug_assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Self::zero(),
            Some(l) if l.is_one() => self.clone(),
            Some(l) => self.scale(&l.recip()),
        }
    }

    /// Monic greatest common divisor. `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.monic();
        }
        if other.is_zero() {
            return self.monic();
        }
        if self.degree() == Some(0) || other.degree() == Some(0) {
            return Self::one();
        }
        // q^k against anything: the common power of q.
        if let Some(k) = self.as_unit_monomial().or_else(|| self.as_term().map(|t| t.1)) {
            let v = other.valuation().unwrap().min(k);
            return Self::monomial(BigRational::one(), v);
        }
        if let Some(k) = other.as_unit_monomial().or_else(|| other.as_term().map(|t| t.1)) {
            let v = self.valuation().unwrap().min(k);
            return Self::monomial(BigRational::one(), v);
        }
        let mut a = self.monic();
        let mut b = other.monic();
        while !b.is_zero() {
            let r = a.rem(&b).monic();
            a = b;
            b = r;
        }
        a
    }

    /// Inverse of `self` modulo `modulus` by extended Euclid, `None` when not coprime.
    pub fn inverse_mod(&self, modulus: &Self) -> Option<Self> {
        let (mut r0, mut r1) = (modulus.clone(), self.rem(modulus));
        let (mut s0, mut s1) = (Self::zero(), Self::one());
        while !r1.is_zero() {
            let (quot, rem) = r0.div_rem(&r1);
            let s2 = s0.sub(&quot.mul(&s1));
            r0 = std::mem::replace(&mut r1, rem);
            s0 = std::mem::replace(&mut s1, s2);
        }
        // r0 is the gcd up to a unit.
        if r0.degree() != Some(0) {
            return None;
        }
        let inv = r0.coeffs[0].recip();
        Some(s0.scale(&inv).rem(modulus))
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.coeffs.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    /// Least common multiple of coefficient denominators.
    pub fn denominator_lcm(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
    }

    /// Gcd of numerators of the (integral) coefficients.
    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c.numer()))
    }

    /// `x^m - 1` divided by all `Φ_d` for proper divisors `d` of `m`.
    pub fn cyclotomic(m: u32) -> Self {
        assert!(m >= 1);
        let mut p = Self::monomial(BigRational::one(), m as usize).sub(&Self::one());
        for d in 1..m {
            if m.is_multiple_of(d) {
                p = p.exact_div(&Self::cyclotomic(d));
            }
        }
        p
    }

    /// Writes the polynomial with integer-looking coefficients, highest degree first,
    /// using `offset` as the exponent of the constant slot (for Laurent output).
    pub fn write_laurent(&self, f: &mut impl fmt::Write, offset: i64) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let e = i as i64 + offset;
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let unit = abs.is_one();
            if !unit || e == 0 {
                write!(f, "{}", abs)?;
                if e != 0 {
                    f.write_str(" ")?;
                }
            }
            match e {
                0 => {}
                1 => f.write_str("q")?,
                _ => write!(f, "q^{}", e)?,
            }
        }
        Ok(())
    }
}

impl fmt::Display for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_laurent(f, 0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(UPoly::cyclotomic(1), UPoly::from_ints(&[-1, 1]));
        assert_eq!(UPoly::cyclotomic(3), UPoly::from_ints(&[1, 1, 1]));
        assert_eq!(UPoly::cyclotomic(4), UPoly::from_ints(&[1, 0, 1]));
        assert_eq!(UPoly::cyclotomic(6), UPoly::from_ints(&[1, -1, 1]));
        assert_eq!(UPoly::cyclotomic(12), UPoly::from_ints(&[1, 0, -1, 0, 1]));
    }

    #[test]
    fn gcd_and_inverse() {
        let a = UPoly::from_ints(&[-1, 0, 1]); // q^2 - 1
        let b = UPoly::from_ints(&[1, 1]); // q + 1
        assert_eq!(a.gcd(&b), b);
        let phi4 = UPoly::cyclotomic(4);
        let q = UPoly::from_ints(&[0, 1]);
        let inv = q.inverse_mod(&phi4).unwrap();
        assert_eq!(inv, UPoly::from_ints(&[0, -1]));
        assert_eq!(q.mul(&inv).rem(&phi4), UPoly::one());
    }

    #[test]
    fn display() {
        let p = UPoly::from_ints(&[1, -3, 2]);
        assert_eq!(p.to_string(), "2 q^2 - 3 q + 1");
    }
}
