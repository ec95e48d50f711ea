//! The Haar state on O(SU_q(2)).

use alloc::vec::Vec;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::check::Check;
use crate::error::{Error, Result};
use crate::hopf::HopfData;
use crate::ncalg::{basis_monomials, split_mono, standard, NCPoly};
use crate::scalars::{q_number, QRational, QScalar};

/// `∫ ζ^r = (1 - q^-2)/(1 - q^{-2(r+1)})` with `ζ = -q bc`.
pub fn haar_zeta_power(r: u32) -> QScalar {
    let one = QScalar::one();
    (&one - &QScalar::q_pow(-2))
        .checked_div(&(&one - &QScalar::q_pow(-2 * (r as i64 + 1))))
        .expect("nonzero for r >= 0")
}

/// Value on a normal monomial `a^k b^r c^s d^t` of G.
pub fn haar_mono(exps: &[i64]) -> QScalar {
    let [k, r, s, t] = [exps[0], exps[1], exps[2], exps[3]];
    if k != 0 || t != 0 || r != s {
        return QScalar::zero();
    }
    // (bc)^r = (-q^-1 ζ)^r
    &(-QScalar::q_pow(-1)).pow(r).unwrap() * &haar_zeta_power(r as u32)
}

/// The Haar state; defined on G only.
pub fn haar(p: &NCPoly) -> Result<QScalar> {
    if p.pres().name() != "G" {
        return Err(Error::Localized(alloc::format!(
            "the Haar state is defined on G, not {}",
            p.pres().name()
        )));
    }
    Ok(p.terms().iter().map(|(m, c)| c * &haar_mono(m.exps())).sum())
}

/// `(id⊗∫)` or `(∫⊗id)` on an element of G⊗G.
pub fn haar_slot(x: &NCPoly, slot: usize) -> Result<NCPoly> {
    let g = standard::g();
    let mut acc = NCPoly::zero(&g);
    for (m, c) in x.terms() {
        let parts = split_mono(x.pres(), m);
        let h = haar_mono(parts[slot].exps());
        if !h.is_zero() {
            acc = acc.add(&NCPoly::monomial(&g, c * &h, parts[1 - slot].clone()))?;
        }
    }
    Ok(acc)
}

/// Left and right invariance on every basis monomial up to `degree`.
pub fn verify_invariance(h: &HopfData, degree: i64) -> Result<Vec<Check>> {
    let g = h.algebra();
    let mut left = None;
    let mut right = None;
    let mut star = None;
    for m in basis_monomials(g, degree) {
        let x = NCPoly::monomial(g, QScalar::one(), m.clone());
        let dx = h.coproduct(&x)?;
        let ix = NCPoly::scalar(g, haar(&x)?);
        if left.is_none() {
            let l = haar_slot(&dx, 1)?;
            if l != ix {
                left = Some(alloc::format!("{x}: (id⊗∫)Δ = {l}, ∫ = {ix}"));
            }
        }
        if right.is_none() {
            let r = haar_slot(&dx, 0)?;
            if r != ix {
                right = Some(alloc::format!("{x}: (∫⊗id)Δ = {r}, ∫ = {ix}"));
            }
        }
        if star.is_none() {
            let s = haar(&x.star()?)?;
            if s != haar(&x)?.conj() {
                star = Some(alloc::format!("{x}: ∫x* = {s}"));
            }
        }
    }
    Ok(alloc::vec![
        Check::from_witness("haar_left_invariance", "(id⊗∫)Δ(a) = (∫a)·1", left),
        Check::from_witness("haar_right_invariance", "(∫⊗id)Δ(a) = (∫a)·1", right),
        Check::from_witness("haar_star", "∫(p*) = conj(∫p)", star),
        Check::from_witness(
            "haar_normalized",
            "∫1 = 1",
            (!haar(&NCPoly::one(g))?.is_one()).then(|| "∫1 != 1".into()),
        ),
    ])
}

/// Random element of G: up to four basis monomials of degree at most
/// `degree` with small integer coefficients times powers of q.
pub fn random_element(degree: i64, rng: &mut ChaCha8Rng) -> NCPoly {
    let g = standard::g();
    let basis = basis_monomials(&g, degree);
    loop {
        let mut f = NCPoly::zero(&g);
        for _ in 0..rng.gen_range(1..=4) {
            let m = basis[rng.gen_range(0..basis.len())].clone();
            let mut c = rng.gen_range(-3i64..=3);
            if c == 0 {
                c = 1;
            }
            let coef = QScalar::from_int(c) * QScalar::q_pow(rng.gen_range(-2..=2));
            f = f.add(&NCPoly::monomial(&g, coef, m)).unwrap();
        }
        if !f.is_zero() {
            return f;
        }
    }
}

/// `∫(f f*) > 0` at `q = q0` for random nonzero `f`.
pub fn verify_positivity(q0: &QRational, samples: usize, degree: i64, seed: u64) -> Result<Vec<Check>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut bad = None;
    for _ in 0..samples {
        let f = random_element(degree, &mut rng);
        let v = haar(&f.mul(&f.star()?)?)?.specialize(q0)?;
        if v <= QRational::zero() {
            bad = Some(alloc::format!("f = {f}: ∫ff* = {v}"));
            break;
        }
    }
    Ok(alloc::vec![Check::from_witness(
        "haar_positivity",
        "∫(f f*) > 0 at q0",
        bad
    )])
}

/// `∫ζ^r` against the symmetric q-number, `q^r/[r+1]_q`.
pub fn verify_zeta_moments(r_max: u32) -> Result<Vec<Check>> {
    Ok(alloc::vec![zeta_moments_with_sign(r_max, 1)?])
}

/// `∫ζ^r = q^-r/[r+1]_q`. Agrees with the closed form only at `r = 0`.
pub fn zeta_moments_q_minus_r(r_max: u32) -> Result<Check> {
    zeta_moments_with_sign(r_max, -1)
}

fn zeta_moments_with_sign(r_max: u32, sign: i64) -> Result<Check> {
    let mut w = None;
    for r in 0..=r_max {
        let v = haar_zeta_power(r);
        let qn = q_number(r as i64 + 1)?;
        let e = sign * r as i64;
        let closed = QScalar::q_pow(e).checked_div(&qn)?;
        if v != closed {
            w = Some(alloc::format!("r = {r}: ∫ζ^r = {v}, q^{e}/[r+1] = {closed}"));
            break;
        }
    }
    Ok(if sign > 0 {
        Check::from_witness("haar_zeta_moments", "∫ζ^r = q^r/[r+1]_q", w)
    } else {
        Check::from_witness("haar_zeta_moments_q_minus_r", "∫ζ^r = q^-r/[r+1]_q", w)
    })
}
