//! Values recomputed with plain rational arithmetic at fixed q and compared
//! with the engine's exact answers.

use qcoh_core::coherent::{d_chart_coefficient, lemma_integral, qbeta_check, resolution_operator};
use qcoh_core::haar::{haar, haar_zeta_power};
use qcoh_core::ncalg::standard;
use qcoh_core::parse::parse_expr;
use qcoh_core::QRational;

fn r(a: i64, b: i64) -> QRational {
    QRational::new(a.into(), b.into())
}

fn pow(x: &QRational, e: i64) -> QRational {
    let mut acc = r(1, 1);
    for _ in 0..e.unsigned_abs() {
        acc *= x.clone();
    }
    if e < 0 {
        acc = r(1, 1) / acc;
    }
    acc
}

/// `[m]_q = q^{m-1} + q^{m-3} + … + q^{1-m}`.
fn sym(m: i64, q: &QRational) -> QRational {
    (0..m).map(|k| pow(q, m - 1 - 2 * k)).fold(r(0, 1), |a, b| a + b)
}

/// Gaussian binomial in base `t` by the Pascal rule.
fn gauss(n: usize, k: usize, t: &QRational) -> QRational {
    let mut row = vec![r(1, 1)];
    for m in 1..=n {
        let mut next = vec![r(1, 1); m + 1];
        for j in 1..m {
            next[j] = row[j - 1].clone() + pow(t, j as i64) * row[j].clone();
        }
        row = next;
    }
    row[k].clone()
}

/// `∫ x^m` for the measure putting mass `(1-p)p^k` at `p^k`.
fn moment(m: usize, p: &QRational) -> QRational {
    (r(1, 1) - p.clone()) / (r(1, 1) - pow(p, m as i64 + 1))
}

/// Coefficients of `ζ^i (pζ;p)_{n-i}` in powers of ζ.
fn integrand(i: usize, n: usize, p: &QRational) -> Vec<QRational> {
    let mut c = vec![r(1, 1)];
    for k in 1..=(n - i) {
        let a = pow(p, k as i64);
        let mut next = vec![r(0, 1); c.len() + 1];
        for (j, x) in c.iter().enumerate() {
            next[j] += x.clone();
            next[j + 1] -= a.clone() * x.clone();
        }
        c = next;
    }
    let mut out = vec![r(0, 1); i];
    out.extend(c);
    out
}

fn qs() -> Vec<QRational> {
    vec![r(1, 2), r(2, 3), r(3, 1), r(5, 7)]
}

#[test]
fn zeta_moments_match_the_discrete_measure() {
    for q in qs() {
        let p = pow(&q, -2);
        for m in 0..=6 {
            assert_eq!(haar_zeta_power(m as u32).specialize(&q).unwrap(), moment(m, &p), "q = {q}, m = {m}");
        }
    }
}

#[test]
fn hand_values() {
    let g = standard::g();
    let half = r(1, 2);
    // ∫ d a = ∫ d d* = q²/(q²+1)
    let v = haar(&parse_expr("d a", &g).unwrap()).unwrap();
    assert_eq!(v.specialize(&half).unwrap(), r(1, 5));
    let v = haar(&parse_expr("b c", &g).unwrap()).unwrap();
    assert_eq!(v.specialize(&half).unwrap(), r(-2, 5));
    let alpha = resolution_operator(1).unwrap().alpha.unwrap();
    assert_eq!(alpha.specialize(&half).unwrap(), r(1, 5));
}

#[test]
fn alpha_against_symmetric_q_numbers() {
    for n in 0..=3 {
        let alpha = resolution_operator(n).unwrap().alpha.unwrap();
        for q in qs() {
            let expect = pow(&q, n as i64) / sym(n as i64 + 1, &q);
            assert_eq!(alpha.specialize(&q).unwrap(), expect, "n = {n}, q = {q}");
        }
    }
}

#[test]
fn d_chart_coefficients_against_pascal() {
    for q in qs() {
        let t = pow(&q, -2);
        for n in 0..=5usize {
            for i in 0..=n {
                let c2 = (i * i.saturating_sub(1) / 2) as i64;
                let expect = gauss(n, i, &t) * pow(&q, -c2);
                assert_eq!(d_chart_coefficient(n, i).specialize(&q).unwrap(), expect);
            }
        }
    }
}

#[test]
fn qbeta_and_lemma_against_discrete_sums() {
    for q in qs() {
        let p = pow(&q, -2);
        for n in 0..=4usize {
            for i in 0..=n {
                let sum = integrand(i, n, &p)
                    .iter()
                    .enumerate()
                    .map(|(m, c)| c.clone() * moment(m, &p))
                    .fold(r(0, 1), |a, b| a + b);
                // q-beta value 1/(binom(n,i)_p (1 + p + … + pⁿ))
                let beta = r(1, 1)
                    / (gauss(n, i, &p) * (0..=n as i64).map(|k| pow(&p, k)).fold(r(0, 1), |a, b| a + b));
                assert_eq!(sum, beta, "q = {q}, n = {n}, i = {i}");
                let (lhs, rhs) = qbeta_check(i, n).unwrap();
                assert_eq!(lhs.specialize(&q).unwrap(), sum);
                assert_eq!(rhs.specialize(&q).unwrap(), sum);
                let c2 = (i * i.saturating_sub(1) / 2) as i64;
                let diag = lemma_integral(i, i, n).unwrap().specialize(&q).unwrap();
                assert_eq!(diag, pow(&q, 2 * c2) * sum);
            }
        }
    }
}

#[test]
fn classical_limit() {
    let one = r(1, 1);
    for n in 0..=4usize {
        let alpha = resolution_operator(n).unwrap().alpha.unwrap();
        assert_eq!(alpha.specialize(&one).unwrap(), r(1, n as i64 + 1));
        for i in 0..=n {
            let b = (0..i).fold(1i64, |acc, k| acc * (n - k) as i64 / (k + 1) as i64);
            assert_eq!(d_chart_coefficient(n, i).specialize(&one).unwrap(), r(b, 1));
        }
    }
}
