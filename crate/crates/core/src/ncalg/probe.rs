//! Randomized confluence probe for the rewriting kernel.

use alloc::string::String;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::poly::NCPoly;
use super::presentation::{Pres, Word};
use super::rewrite::Strategy;
use crate::scalars::QScalar;

#[derive(Clone, Debug, PartialEq)]
pub struct Discrepancy {
    pub word: String,
    pub first: String,
    pub second: String,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ProbeReport {
    pub samples: usize,
    pub discrepancies: Vec<Discrepancy>,
    /// Output monomials containing both letters of an ordered rule.
    pub non_canonical: Vec<String>,
}

impl ProbeReport {
    pub fn passed(&self) -> bool {
        self.discrepancies.is_empty() && self.non_canonical.is_empty()
    }
}

fn non_canonical_terms(p: &NCPoly) -> impl Iterator<Item = String> + '_ {
    let pres = p.pres();
    p.terms()
        .keys()
        .filter(move |m| pres.ordered_rules().iter().any(|r| m.exp(r.left) != 0 && m.exp(r.right) != 0))
        .map(move |m| NCPoly::mono_string(pres, m))
}

/// Random word of length `1..=degree`; exponents in `1..=max_exp`, or
/// `-max_exp..=max_exp` minus zero for invertible generators.
pub fn random_word(pres: &Pres, degree: usize, max_exp: i64, rng: &mut ChaCha8Rng) -> Word {
    let len = rng.gen_range(1..=degree.max(1));
    (0..len)
        .map(|_| {
            let g = rng.gen_range(0..pres.ngens());
            let e = if pres.gens()[g].invertible {
                let e = rng.gen_range(1..=max_exp);
                if rng.gen_bool(0.5) {
                    -e
                } else {
                    e
                }
            } else {
                rng.gen_range(1..=max_exp)
            };
            (g, e)
        })
        .collect()
}

pub fn word_string(pres: &Pres, w: &Word) -> String {
    w.iter()
        .map(|&(g, e)| {
            let n = &pres.gens()[g].name;
            if e == 1 {
                n.clone()
            } else {
                alloc::format!("{n}^{e}")
            }
        })
        .collect::<Vec<_>>()
        .join(" ")
}

/// Reduces random words under two independently randomized strategies
/// and the deterministic one; reports every disagreement.
pub fn confluence_probe(pres: &Pres, samples: usize, degree: usize, max_exp: i64, seed: u64) -> ProbeReport {
    let mut words_rng = ChaCha8Rng::seed_from_u64(seed);
    let mut r1 = ChaCha8Rng::seed_from_u64(seed.wrapping_add(1));
    let mut r2 = ChaCha8Rng::seed_from_u64(seed.wrapping_add(2));
    let mut discrepancies = Vec::new();
    let mut non_canonical = Vec::new();
    for _ in 0..samples {
        let w = random_word(pres, degree, max_exp, &mut words_rng);
        let input = alloc::vec![(QScalar::one(), w.clone())];
        let a = NCPoly::from_words_with(pres, input.clone(), &mut Strategy::Random(&mut r1));
        let b = NCPoly::from_words_with(pres, input.clone(), &mut Strategy::Random(&mut r2));
        let c = NCPoly::from_words_with(pres, input, &mut Strategy::First);
        non_canonical.extend(non_canonical_terms(&c));
        for (x, y) in [(&a, &b), (&a, &c)] {
            if x != y {
                discrepancies.push(Discrepancy {
                    word: word_string(pres, &w),
                    first: alloc::format!("{x}"),
                    second: alloc::format!("{y}"),
                });
                break;
            }
        }
    }
    ProbeReport {
        samples,
        discrepancies,
        non_canonical,
    }
}

/// Random word of total degree `1..=degree`, one letter per unit of
/// degree; invertible letters get a random sign.
pub fn random_word_deg(pres: &Pres, degree: usize, rng: &mut ChaCha8Rng) -> Word {
    let len = rng.gen_range(1..=degree.max(1));
    (0..len)
        .map(|_| {
            let g = rng.gen_range(0..pres.ngens());
            let e = if pres.gens()[g].invertible && rng.gen_bool(0.5) { -1 } else { 1 };
            (g, e)
        })
        .collect()
}

/// Every normal monomial of total degree at most `max_deg`.
pub fn basis_monomials(pres: &Pres, max_deg: i64) -> Vec<super::Mono> {
    fn rec(pres: &Pres, g: usize, left: i64, cur: &mut Vec<i64>, out: &mut Vec<super::Mono>) {
        if g == pres.ngens() {
            let m = super::Mono::new(cur.clone());
            let nf = NCPoly::from_word(pres, QScalar::one(), &m.word()).expect("valid word");
            if nf == NCPoly::monomial(pres, QScalar::one(), m.clone()) {
                out.push(m);
            }
            return;
        }
        let lo = if pres.gens()[g].invertible { -left } else { 0 };
        for e in lo..=left {
            cur.push(e);
            rec(pres, g + 1, left - e.abs(), cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(pres, 0, max_deg, &mut Vec::new(), &mut out);
    out.sort();
    out
}
