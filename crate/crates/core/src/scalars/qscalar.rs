//! Exact rational functions in the deformation parameter `q`.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::intpoly::IntPoly;
use crate::error::{Error, Result};

/// Exact rational number; the specialization target for `q`.
pub type QRational = BigRational;

/// A reduced quotient `num / den` of integer polynomials in `q`.
///
/// Canonical form: `gcd(num, den) = 1` as polynomials, the combined
/// integer content of `num` and `den` is 1, and `den` has a positive
/// leading coefficient. Zero is `0 / 1`. With this form structural
/// equality is equality of rational functions.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QScalar {
    num: IntPoly,
    den: IntPoly,
}

impl QScalar {
    pub fn zero() -> Self {
        QScalar {
            num: IntPoly::zero(),
            den: IntPoly::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_bigint(BigInt::from(n))
    }

    pub fn from_bigint(n: BigInt) -> Self {
        QScalar {
            num: IntPoly::constant(n),
            den: IntPoly::one(),
        }
    }

    pub fn from_rational(r: &QRational) -> Self {
        Self::from_parts(
            IntPoly::constant(r.numer().clone()),
            IntPoly::constant(r.denom().clone()),
        )
        .expect("rational with zero denominator")
    }

    /// The parameter `q` itself.
    pub fn q() -> Self {
        Self::q_pow(1)
    }

    /// `q^k` for any integer `k`.
    pub fn q_pow(k: i64) -> Self {
        let m = IntPoly::monomial(BigInt::one(), k.unsigned_abs() as usize);
        if k >= 0 {
            QScalar {
                num: m,
                den: IntPoly::one(),
            }
        } else {
            QScalar {
                num: IntPoly::one(),
                den: m,
            }
        }
    }

    /// `sign * q^k`.
    pub fn signed_q_pow(negative: bool, k: i64) -> Self {
        let s = Self::q_pow(k);
        if negative {
            -s
        } else {
            s
        }
    }

    /// Builds `num / den` and reduces it.
    pub fn from_parts(num: IntPoly, den: IntPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalize(num, den))
    }

    pub fn from_poly(num: IntPoly) -> Self {
        Self::normalize(num, IntPoly::one())
    }

    fn normalize(mut num: IntPoly, mut den: IntPoly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let den_mono = den.as_monomial().map(|(_, k)| k);
        let num_mono = num.as_monomial().map(|(_, k)| k);
        match (den_mono, num_mono) {
            (Some(k), _) => {
                let v = num.valuation().unwrap().min(k);
                if v > 0 {
                    num = num.unshift(v);
                    den = den.unshift(v);
                }
            }
            (None, Some(k)) => {
                let v = den.valuation().unwrap().min(k);
                if v > 0 {
                    num = num.unshift(v);
                    den = den.unshift(v);
                }
            }
            (None, None) => {
                let g = num.gcd(&den);
                if g.degree().unwrap_or(0) > 0 {
                    num = num.div_exact(&g);
                    den = den.div_exact(&g);
                }
            }
        }
        let mut c = num.content().gcd(&den.content());
        if den.leading().is_some_and(|l| l.is_negative()) {
            c = -c;
        }
        if !c.is_one() {
            num = num.div_exact_scalar(&c);
            den = den.div_exact_scalar(&c);
        }
        QScalar { num, den }
    }

    pub fn numer(&self) -> &IntPoly {
        &self.num
    }

    pub fn denom(&self) -> &IntPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// True if the value does not depend on `q`.
    pub fn is_constant(&self) -> bool {
        self.num.degree().unwrap_or(0) == 0 && self.den.degree() == Some(0)
    }

    /// `Some((c, k))` when the value is `c * q^k` with `c` an integer.
    pub fn as_signed_q_power(&self) -> Option<(BigInt, i64)> {
        let (c, kn) = self.num.as_monomial()?;
        let (d, kd) = self.den.as_monomial()?;
        if !d.is_one() {
            return None;
        }
        Some((c.clone(), kn as i64 - kd as i64))
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalize(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, k: i64) -> Result<Self> {
        let base = if k < 0 { self.inv()? } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = Self::one();
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &sq;
            }
            e >>= 1;
            if e > 0 {
                sq = &sq * &sq;
            }
        }
        Ok(acc)
    }

    /// Complex conjugation. `q` is real and coefficients are rational, so
    /// this is the identity.
    pub fn conj(&self) -> Self {
        self.clone()
    }

    /// Exact value at `q = q0`.
    pub fn specialize(&self, q0: &QRational) -> Result<QRational> {
        let d = self.den.eval(q0);
        if d.is_zero() {
            return Err(Error::Pole(q0.to_string()));
        }
        Ok(self.num.eval(q0) / d)
    }

    fn add_ref(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        if self.den == other.den {
            return Self::normalize(self.num.add(&other.num), self.den.clone());
        }
        let num = self.num.mul(&other.den).add(&other.num.mul(&self.den));
        Self::normalize(num, self.den.mul(&other.den))
    }

    fn mul_ref(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if self.den.is_one() && other.den.is_one() {
            return QScalar {
                num: self.num.mul(&other.num),
                den: IntPoly::one(),
            };
        }
        Self::normalize(self.num.mul(&other.num), self.den.mul(&other.den))
    }
}

impl Default for QScalar {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<i64> for QScalar {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl<'a> Add<&'a QScalar> for &'a QScalar {
    type Output = QScalar;
    fn add(self, rhs: &QScalar) -> QScalar {
        self.add_ref(rhs)
    }
}

impl Add for QScalar {
    type Output = QScalar;
    fn add(self, rhs: QScalar) -> QScalar {
        self.add_ref(&rhs)
    }
}

impl<'a> Sub<&'a QScalar> for &'a QScalar {
    type Output = QScalar;
    fn sub(self, rhs: &QScalar) -> QScalar {
        self.add_ref(&-rhs)
    }
}

impl Sub for QScalar {
    type Output = QScalar;
    fn sub(self, rhs: QScalar) -> QScalar {
        self.add_ref(&-rhs)
    }
}

impl<'a> Mul<&'a QScalar> for &'a QScalar {
    type Output = QScalar;
    fn mul(self, rhs: &QScalar) -> QScalar {
        self.mul_ref(rhs)
    }
}

impl Mul for QScalar {
    type Output = QScalar;
    fn mul(self, rhs: QScalar) -> QScalar {
        self.mul_ref(&rhs)
    }
}

impl Neg for &QScalar {
    type Output = QScalar;
    fn neg(self) -> QScalar {
        QScalar {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }
}

impl Neg for QScalar {
    type Output = QScalar;
    fn neg(self) -> QScalar {
        -&self
    }
}

impl core::iter::Sum for QScalar {
    fn sum<I: Iterator<Item = QScalar>>(iter: I) -> Self {
        iter.fold(QScalar::zero(), |a, b| a + b)
    }
}

/// Terms `(coefficient, exponent)` in descending exponent order.
fn laurent_terms(p: &IntPoly, shift: i64) -> Vec<(BigInt, i64)> {
    p.coeffs()
        .iter()
        .enumerate()
        .rev()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| (c.clone(), i as i64 - shift))
        .collect()
}

fn fmt_terms(terms: &[(BigInt, i64)]) -> String {
    if terms.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (idx, (c, e)) in terms.iter().enumerate() {
        let neg = c.is_negative();
        let mag = c.abs();
        let body = match (*e, mag.is_one()) {
            (0, _) => mag.to_string(),
            (1, true) => "q".into(),
            (1, false) => alloc::format!("{mag}*q"),
            (e, true) => alloc::format!("q^{e}"),
            (e, false) => alloc::format!("{mag}*q^{e}"),
        };
        if idx == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        out.push_str(&body);
    }
    out
}

impl QScalar {
    /// True if the printed form is a single signed power of `q` times an
    /// integer.
    pub fn is_single_term(&self) -> bool {
        self.num.term_count() <= 1
            && self
                .den
                .as_monomial()
                .is_some_and(|(c, _)| c.is_one())
    }

    /// True if the printed form has a top-level `+` or `-` between terms.
    pub fn needs_parens(&self) -> bool {
        self.num.term_count() > 1 && self.den.as_monomial().is_some_and(|(c, _)| c.is_one())
    }
}

impl fmt::Display for QScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some((c, k)) = self.den.as_monomial() {
            if c.is_one() {
                return f.write_str(&fmt_terms(&laurent_terms(&self.num, k as i64)));
            }
        }
        let n = fmt_terms(&laurent_terms(&self.num, 0));
        let d = fmt_terms(&laurent_terms(&self.den, 0));
        let n = if self.num.term_count() > 1 {
            alloc::format!("({n})")
        } else {
            n
        };
        let d_atom = self.den.term_count() == 1
            && self
                .den
                .as_monomial()
                .is_some_and(|(c, k)| c.is_one() || k == 0);
        let d = if d_atom { d } else { alloc::format!("({d})") };
        write!(f, "{n}/{d}")
    }
}

impl fmt::Debug for QScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QScalar({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::format;

    fn q_minus_qinv() -> QScalar {
        QScalar::q() - QScalar::q_pow(-1)
    }

    #[test]
    fn additive_identity() {
        let a = q_minus_qinv();
        assert_eq!(&a + &QScalar::zero(), a);
        // stored as (q^2 - 1)/q
        assert_eq!(a.numer(), &IntPoly::from_i64(&[-1, 0, 1]));
        assert_eq!(a.denom(), &IntPoly::from_i64(&[0, 1]));
    }

    #[test]
    fn multiplicative_inverse() {
        let a = q_minus_qinv();
        assert!((&a * &a.inv().unwrap()).is_one());
    }

    #[test]
    fn clears_negative_powers() {
        // (1 - q^-2)/(1 - q^-4) = q^2/(q^2 + 1)
        let one = QScalar::one();
        let v = (&one - &QScalar::q_pow(-2))
            .checked_div(&(&one - &QScalar::q_pow(-4)))
            .unwrap();
        let expect = QScalar::from_parts(IntPoly::from_i64(&[0, 0, 1]), IntPoly::from_i64(&[1, 0, 1]))
            .unwrap();
        assert_eq!(v, expect);
        assert_eq!(format!("{v}"), "q^2/(q^2 + 1)");
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert_eq!(QScalar::one().checked_div(&QScalar::zero()), Err(Error::DivisionByZero));
    }

    #[test]
    fn specialize_values() {
        let v = QScalar::from_parts(IntPoly::from_i64(&[0, 0, 1]), IntPoly::from_i64(&[1, 0, 1]))
            .unwrap();
        let half = QRational::new(1.into(), 2.into());
        assert_eq!(v.specialize(&half).unwrap(), QRational::new(1.into(), 5.into()));
        assert_eq!(QScalar::one().specialize(&half).unwrap(), QRational::one());
        let pole = QScalar::one().checked_div(&(QScalar::q() - QScalar::from_int(2))).unwrap();
        assert!(matches!(pole.specialize(&QRational::from_integer(2.into())), Err(Error::Pole(_))));
    }

    #[test]
    fn display_forms() {
        assert_eq!(format!("{}", QScalar::q() + QScalar::q_pow(-1)), "q + q^-1");
        assert_eq!(format!("{}", -QScalar::q_pow(-1)), "-q^-1");
        assert_eq!(format!("{}", QScalar::zero()), "0");
        let half = QScalar::from_rational(&QRational::new(1.into(), 2.into()));
        assert_eq!(format!("{half}"), "1/2");
        let x = QScalar::one().checked_div(&QScalar::from_int(2)).unwrap() * QScalar::q_pow(-1);
        assert_eq!(format!("{x}"), "1/(2*q)");
    }
}
