//! q-integers, Gaussian binomials, q-Pochhammer symbols, Jackson
//! integrals and the q-Gamma/q-Beta values needed at integer points.

use alloc::format;

use super::qscalar::QScalar;
use super::upoly::QPoly;
use crate::error::{Error, Result};

/// Symmetric q-integer `[n]_q = (q^n - q^-n)/(q - q^-1)`.
pub fn q_number(n: i64) -> Result<QScalar> {
    if n < 0 {
        return Err(Error::OutOfRange(format!("q_number({n})")));
    }
    // q^{1-n} + q^{3-n} + ... + q^{n-1}
    Ok((0..n).map(|j| QScalar::q_pow(2 * j - n + 1)).sum())
}

/// Symmetric q-factorial `[n]_q!`.
pub fn q_factorial(n: i64) -> Result<QScalar> {
    let mut acc = QScalar::one();
    for k in 1..=n {
        acc = &acc * &q_number(k)?;
    }
    Ok(acc)
}

/// Base-`t` integer `(1 - t^k)/(1 - t)`.
pub fn base_number(k: i64, t: &QScalar) -> Result<QScalar> {
    if k < 0 {
        return Err(Error::OutOfRange(format!("base_number({k})")));
    }
    let mut acc = QScalar::zero();
    let mut pw = QScalar::one();
    for _ in 0..k {
        acc = &acc + &pw;
        pw = &pw * t;
    }
    Ok(acc)
}

/// Gaussian binomial `prod_{j=1}^{k} (1 - t^{n-k+j})/(1 - t^j)`.
pub fn gauss_binomial(n: i64, k: i64, t: &QScalar) -> Result<QScalar> {
    if k < 0 || k > n {
        return Err(Error::OutOfRange(format!("gauss_binomial({n}, {k})")));
    }
    // Built from base-t integers to stay polynomial in t (no division
    // until the final quotient), which keeps t = 1 well-defined.
    let mut num = QScalar::one();
    let mut den = QScalar::one();
    for j in 1..=k {
        num = &num * &base_number(n - k + j, t)?;
        den = &den * &base_number(j, t)?;
    }
    num.checked_div(&den)
}

/// `prod_{j=0}^{k-1} (1 - a * base^j)` where `a` is a polynomial in the marker.
pub fn q_pochhammer(a: &QPoly, base: &QScalar, k: usize) -> QPoly {
    let mut acc = QPoly::one();
    let mut pw = QScalar::one();
    for _ in 0..k {
        acc = acc.mul(&QPoly::one().sub(&a.scale(&pw)));
        pw = &pw * base;
    }
    acc
}

/// `int_0^1 f(x) d_p x` using `int_0^1 x^m d_p x = (1-p)/(1-p^{m+1})`.
pub fn jackson_q_integral_01(f: &QPoly, p: &QScalar) -> Result<QScalar> {
    let mut acc = QScalar::zero();
    for (m, c) in f.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        // (1-p)/(1-p^{m+1}) = 1 / (1 + p + ... + p^m)
        let v = base_number(m as i64 + 1, p)?.inv()?;
        acc = &acc + &(c * &v);
    }
    Ok(acc)
}

/// `Gamma_p(m) = [m-1]_p!` with base-p integers, for integer `m >= 1`.
pub fn q_gamma(m: i64, p: &QScalar) -> Result<QScalar> {
    if m < 1 {
        return Err(Error::OutOfRange(format!("q_gamma({m})")));
    }
    let mut acc = QScalar::one();
    for k in 1..m {
        acc = &acc * &base_number(k, p)?;
    }
    Ok(acc)
}

/// `B_p(alpha, beta) = Gamma_p(alpha) Gamma_p(beta) / Gamma_p(alpha + beta)`.
pub fn q_beta(alpha: i64, beta: i64, p: &QScalar) -> Result<QScalar> {
    (&q_gamma(alpha, p)? * &q_gamma(beta, p)?).checked_div(&q_gamma(alpha + beta, p)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{IntPoly, QRational};
    use num_traits::One;
    use proptest::prelude::*;

    fn t() -> QScalar {
        QScalar::q()
    }

    #[test]
    fn q_numbers() {
        assert!(q_number(1).unwrap().is_one());
        assert_eq!(q_number(2).unwrap(), QScalar::q() + QScalar::q_pow(-1));
        assert_eq!(
            q_number(3).unwrap(),
            QScalar::q_pow(2) + QScalar::one() + QScalar::q_pow(-2)
        );
        // oracle: the defining quotient
        for n in 0..8 {
            let def = (QScalar::q_pow(n) - QScalar::q_pow(-n))
                .checked_div(&(QScalar::q() - QScalar::q_pow(-1)))
                .unwrap();
            assert_eq!(q_number(n).unwrap(), def);
        }
    }

    #[test]
    fn q_numbers_at_one() {
        for n in 0..=10 {
            let v = q_number(n).unwrap().specialize(&QRational::one()).unwrap();
            assert_eq!(v, QRational::from_integer(n.into()));
        }
    }

    #[test]
    fn gauss_binomial_examples() {
        assert!(gauss_binomial(5, 0, &t()).unwrap().is_one());
        assert_eq!(gauss_binomial(2, 1, &t()).unwrap(), QScalar::one() + t());
        let a = QScalar::from_poly(IntPoly::from_i64(&[1, 0, 1]));
        let b = QScalar::from_poly(IntPoly::from_i64(&[1, 1, 1]));
        assert_eq!(gauss_binomial(4, 2, &t()).unwrap(), a * b);
        assert!(gauss_binomial(2, 3, &t()).is_err());
    }

    #[test]
    fn gauss_binomial_pascal() {
        for base in [t(), QScalar::q_pow(-2), QScalar::q_pow(2)] {
            for n in 1..=8 {
                for k in 1..n {
                    let lhs = gauss_binomial(n, k, &base).unwrap();
                    let tk = base.pow(k).unwrap();
                    let tnk = base.pow(n - k).unwrap();
                    let r1 = &gauss_binomial(n - 1, k - 1, &base).unwrap()
                        + &(&tk * &gauss_binomial(n - 1, k, &base).unwrap());
                    let r2 = &(&tnk * &gauss_binomial(n - 1, k - 1, &base).unwrap())
                        + &gauss_binomial(n - 1, k, &base).unwrap();
                    assert_eq!(lhs, r1, "first recurrence n={n} k={k}");
                    assert_eq!(lhs, r2, "second recurrence n={n} k={k}");
                }
            }
        }
    }

    #[test]
    fn pochhammer_examples() {
        assert_eq!(q_pochhammer(&QPoly::x(), &t(), 0), QPoly::one());
        assert_eq!(
            q_pochhammer(&QPoly::x(), &t(), 1),
            QPoly::one().sub(&QPoly::x())
        );
        let qm2 = QScalar::q_pow(-2);
        let got = q_pochhammer(&QPoly::x().scale(&qm2), &qm2, 2);
        let expect = QPoly::from_coeffs(alloc::vec![
            QScalar::one(),
            -(QScalar::q_pow(-2) + QScalar::q_pow(-4)),
            QScalar::q_pow(-6),
        ]);
        assert_eq!(got, expect);
    }

    #[test]
    fn jackson_examples() {
        let p = QScalar::q_pow(-2);
        assert!(jackson_q_integral_01(&QPoly::one(), &p).unwrap().is_one());
        let one = QScalar::one();
        assert_eq!(
            jackson_q_integral_01(&QPoly::x(), &p).unwrap(),
            one.checked_div(&(&one + &p)).unwrap()
        );
        let f = QPoly::x().sub(&QPoly::monomial(one.clone(), 2));
        let expect = one.checked_div(&(&one + &p)).unwrap()
            - one.checked_div(&(&one + &p + p.pow(2).unwrap())).unwrap();
        assert_eq!(jackson_q_integral_01(&f, &p).unwrap(), expect);
    }

    #[test]
    fn jackson_matches_truncated_sum() {
        // int_0^1 x^m d_p x = sum_k (1-p) p^k p^{km}; compare partial sums at p=1/3.
        let p0 = QRational::new(1.into(), 3.into());
        for m in 0..4usize {
            let exact = jackson_q_integral_01(&QPoly::monomial(QScalar::one(), m), &QScalar::from_rational(&p0))
                .unwrap()
                .specialize(&QRational::one())
                .unwrap();
            let mut s = QRational::from_integer(0.into());
            let mut pk = QRational::one();
            let ratio = num_traits::pow(p0.clone(), m + 1);
            for _ in 0..60 {
                s += (QRational::one() - &p0) * &pk;
                pk *= &ratio;
            }
            let err = &exact - &s;
            assert!(err >= QRational::from_integer(0.into()));
            assert!(err < QRational::new(1.into(), num_bigint::BigInt::from(10u64).pow(20)));
        }
    }

    #[test]
    fn q_beta_matches_jackson() {
        // B_p(a, b) = int_0^1 x^{a-1} (px; p)_{b-1} d_p x
        let p = QScalar::q_pow(-2);
        for a in 1..4 {
            for b in 1..4 {
                let f = QPoly::monomial(QScalar::one(), (a - 1) as usize)
                    .mul(&q_pochhammer(&QPoly::x().scale(&p), &p, (b - 1) as usize));
                assert_eq!(jackson_q_integral_01(&f, &p).unwrap(), q_beta(a, b, &p).unwrap());
            }
        }
    }

    fn small_scalar() -> impl Strategy<Value = QScalar> {
        (
            proptest::collection::vec(-3i64..=3, 1..4),
            proptest::collection::vec(-3i64..=3, 1..4),
            -2i64..=2,
        )
            .prop_filter_map("zero denominator", |(n, d, s)| {
                let den = IntPoly::from_i64(&d);
                if den.is_zero() {
                    return None;
                }
                let v = QScalar::from_parts(IntPoly::from_i64(&n), den).ok()?;
                Some(&v * &QScalar::q_pow(s))
            })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn field_axioms(a in small_scalar(), b in small_scalar(), c in small_scalar()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &b, &b * &a);
            if !a.is_zero() {
                prop_assert!((&a * &a.inv().unwrap()).is_one());
            }
            prop_assert!((&a - &a).is_zero());
        }

        #[test]
        fn specialize_is_multiplicative(a in small_scalar(), b in small_scalar(), n in 1i64..7, d in 1i64..7) {
            let q0 = QRational::new(n.into(), d.into());
            if let (Ok(x), Ok(y)) = (a.specialize(&q0), b.specialize(&q0)) {
                prop_assert_eq!((&a * &b).specialize(&q0).unwrap(), &x * &y);
                prop_assert_eq!((&a + &b).specialize(&q0).unwrap(), &x + &y);
            }
        }

        #[test]
        fn equality_agrees_with_cross_multiplication(a in small_scalar(), b in small_scalar()) {
            let cross = a.numer().mul(b.denom()) == b.numer().mul(a.denom());
            prop_assert_eq!(a == b, cross);
        }
    }
}
