//! Dense univariate polynomials in `q` with arbitrary-precision integer
//! coefficients, stored lowest degree first.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// `c * q^k`.
    pub fn monomial(c: BigInt, k: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = c;
        IntPoly { coeffs }
    }

    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    /// Index of the lowest nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn term_count(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }

    /// `Some((c, k))` if the polynomial is `c * q^k`.
    pub fn as_monomial(&self) -> Option<(&BigInt, usize)> {
        if self.term_count() == 1 {
            let k = self.valuation()?;
            Some((&self.coeffs[k], k))
        } else {
            None
        }
    }

    pub fn neg(&self) -> Self {
        IntPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.coeffs.get(i);
            let b = other.coeffs.get(i);
            out.push(match (a, b) {
                (Some(a), Some(b)) => a + b,
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            });
        }
        Self::from_coeffs(out)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        Self::from_coeffs(out)
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        IntPoly {
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    /// Multiply by `q^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() || k == 0 {
            return self.clone();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        IntPoly { coeffs }
    }

    /// Divide by `q^k`; the low `k` coefficients must vanish.
    pub fn unshift(&self, k: usize) -> Self {
        debug_assert!(self.coeffs.iter().take(k).all(|c| c.is_zero()));
        Self::from_coeffs(self.coeffs.iter().skip(k).cloned().collect())
    }

    /// Exact division of every coefficient by `c`.
    pub fn div_exact_scalar(&self, c: &BigInt) -> Self {
        IntPoly {
            coeffs: self.coeffs.iter().map(|x| x / c).collect(),
        }
    }

    /// gcd of all coefficients (nonnegative; zero for the zero polynomial).
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Primitive part with positive leading coefficient.
    pub fn primitive(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut c = self.content();
        if self.leading().is_some_and(|l| l.is_negative()) {
            c = -c;
        }
        self.div_exact_scalar(&c)
    }

    /// Pseudo-remainder of `self` by `divisor`.
    fn pseudo_rem(&self, divisor: &Self) -> Self {
        let dd = divisor.degree().expect("pseudo_rem by zero");
        let lc = divisor.leading().unwrap().clone();
        let mut r = self.clone();
        while let Some(rd) = r.degree() {
            if rd < dd {
                break;
            }
            let rl = r.leading().unwrap().clone();
            // r <- lc*r - rl*q^(rd-dd)*divisor
            let lhs = r.scale(&lc);
            let rhs = divisor.scale(&rl).shift(rd - dd);
            r = lhs.sub(&rhs);
        }
        r
    }

    /// Greatest common divisor, primitive with positive leading coefficient.
    pub fn gcd(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.primitive();
        }
        if other.is_zero() {
            return self.primitive();
        }
        // Common power of q splits off cheaply.
        let v = self.valuation().unwrap().min(other.valuation().unwrap());
        let mut a = self.unshift(self.valuation().unwrap()).primitive();
        let mut b = other.unshift(other.valuation().unwrap()).primitive();
        if a.degree() < b.degree() {
            core::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            if b.degree() == Some(0) {
                return IntPoly::monomial(BigInt::one(), v);
            }
            let r = a.pseudo_rem(&b);
            a = b;
            b = r.primitive();
        }
        a.primitive().shift(v)
    }

    /// Exact polynomial division; panics in debug builds if not exact.
    pub fn div_exact(&self, divisor: &Self) -> Self {
        let dd = divisor.degree().expect("division by zero polynomial");
        if self.is_zero() {
            return Self::zero();
        }
        let lc = divisor.leading().unwrap();
        let mut r = self.clone();
        let nd = r.degree().unwrap();
        if nd < dd {
            debug_assert!(false, "inexact polynomial division");
            return Self::zero();
        }
        let mut quot = vec![BigInt::zero(); nd - dd + 1];
        while let Some(rd) = r.degree() {
            if rd < dd {
                break;
            }
            let (qc, rem) = r.leading().unwrap().div_rem(lc);
            debug_assert!(rem.is_zero(), "inexact coefficient division");
            let _ = rem;
            quot[rd - dd] = qc.clone();
            r = r.sub(&divisor.scale(&qc).shift(rd - dd));
        }
        debug_assert!(r.is_zero(), "inexact polynomial division");
        Self::from_coeffs(quot)
    }

    /// Horner evaluation at an exact rational.
    pub fn eval(&self, x: &num_rational::BigRational) -> num_rational::BigRational {
        let mut acc = num_rational::BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + num_rational::BigRational::from_integer(c.clone());
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gcd_of_cyclotomic_products() {
        // (q^2 - 1) = (q-1)(q+1), (q^2 + 2q + 1) = (q+1)^2
        let a = IntPoly::from_i64(&[-1, 0, 1]);
        let b = IntPoly::from_i64(&[1, 2, 1]);
        assert_eq!(a.gcd(&b), IntPoly::from_i64(&[1, 1]));
    }

    #[test]
    fn gcd_keeps_common_power_of_q() {
        let a = IntPoly::from_i64(&[0, 0, 2, 2]); // 2q^2(1+q)
        let b = IntPoly::from_i64(&[0, 3, 3]); // 3q(1+q)
        assert_eq!(a.gcd(&b), IntPoly::from_i64(&[0, 1, 1]));
    }

    #[test]
    fn exact_division_roundtrip() {
        let a = IntPoly::from_i64(&[1, 1, 1]);
        let b = IntPoly::from_i64(&[-1, 0, 3, 7]);
        assert_eq!(a.mul(&b).div_exact(&b), a);
    }
}
