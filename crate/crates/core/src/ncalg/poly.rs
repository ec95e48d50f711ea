//! Normal monomials and noncommutative polynomials.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use super::presentation::{Pres, Presentation, Word};
use super::rewrite::{reduce, Strategy};
use crate::error::{Error, Result};
use crate::scalars::QScalar;

/// Exponent vector of a normal monomial, in generator order.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Mono {
    exps: Vec<i64>,
}

impl Mono {
    pub fn new(exps: Vec<i64>) -> Self {
        Mono { exps }
    }

    pub fn one(ngens: usize) -> Self {
        Mono {
            exps: alloc::vec![0; ngens],
        }
    }

    pub fn exps(&self) -> &[i64] {
        &self.exps
    }

    pub fn exp(&self, g: usize) -> i64 {
        self.exps[g]
    }

    pub fn degree(&self) -> i64 {
        self.exps.iter().map(|e| e.abs()).sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn word(&self) -> Word {
        self.exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e != 0)
            .map(|(g, &e)| (g, e))
            .collect()
    }
}

/// Degree first, then the monomial with the larger exponent on the
/// earliest generator.
impl Ord for Mono {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| other.exps.cmp(&self.exps))
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// An element of the algebra given by a presentation, stored in normal form.
#[derive(Clone)]
pub struct NCPoly {
    pres: Pres,
    terms: BTreeMap<Mono, QScalar>,
}

impl PartialEq for NCPoly {
    fn eq(&self, other: &Self) -> bool {
        Presentation::same(&self.pres, &other.pres) && self.terms == other.terms
    }
}

impl Eq for NCPoly {}

impl NCPoly {
    pub(crate) fn from_terms(pres: &Pres, terms: BTreeMap<Mono, QScalar>) -> Self {
        NCPoly {
            pres: pres.clone(),
            terms,
        }
    }

    pub fn zero(pres: &Pres) -> Self {
        Self::from_terms(pres, BTreeMap::new())
    }

    pub fn one(pres: &Pres) -> Self {
        Self::scalar(pres, QScalar::one())
    }

    pub fn scalar(pres: &Pres, c: QScalar) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Mono::one(pres.ngens()), c);
        }
        Self::from_terms(pres, terms)
    }

    /// Checks exponents against invertibility.
    pub fn check_word(pres: &Presentation, w: &Word) -> Result<()> {
        for &(g, e) in w {
            if g >= pres.ngens() {
                return Err(Error::UnknownGenerator(alloc::format!("#{g}")));
            }
            if e < 0 && !pres.gens()[g].invertible {
                return Err(Error::NegativeExponent(pres.gens()[g].name.clone()));
            }
        }
        Ok(())
    }

    /// Normal form of a formal product.
    pub fn from_word(pres: &Pres, c: QScalar, w: &Word) -> Result<Self> {
        Self::from_words(pres, [(c, w.clone())])
    }

    pub fn from_words<I: IntoIterator<Item = (QScalar, Word)>>(pres: &Pres, words: I) -> Result<Self> {
        let words: Vec<(QScalar, Word)> = words.into_iter().collect();
        for (_, w) in &words {
            Self::check_word(pres, w)?;
        }
        Ok(Self::from_terms(pres, reduce(pres, words, &mut Strategy::First)))
    }

    /// Normal form under the given redex strategy (no validity checks).
    pub fn from_words_with(pres: &Pres, words: Vec<(QScalar, Word)>, strategy: &mut Strategy<'_>) -> Self {
        Self::from_terms(pres, reduce(pres, words, strategy))
    }

    pub fn monomial(pres: &Pres, c: QScalar, m: Mono) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Self::from_terms(pres, terms)
    }

    /// Generator `name` (slot 0) to the power `e`.
    pub fn gen(pres: &Pres, name: &str, e: i64) -> Result<Self> {
        let g = pres
            .index(name)
            .ok_or_else(|| Error::UnknownGenerator(name.into()))?;
        Self::from_word(pres, QScalar::one(), &alloc::vec![(g, e)])
    }

    /// Generator by index.
    pub fn gen_idx(pres: &Pres, g: usize, e: i64) -> Result<Self> {
        Self::from_word(pres, QScalar::one(), &alloc::vec![(g, e)])
    }

    pub fn pres(&self) -> &Pres {
        &self.pres
    }

    pub fn terms(&self) -> &BTreeMap<Mono, QScalar> {
        &self.terms
    }

    pub fn into_terms(self) -> BTreeMap<Mono, QScalar> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Mono) -> QScalar {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn constant_term(&self) -> QScalar {
        self.coeff(&Mono::one(self.pres.ngens()))
    }

    /// `Some(c)` if the element is the scalar `c`.
    pub fn as_scalar(&self) -> Option<QScalar> {
        match self.terms.len() {
            0 => Some(QScalar::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if Presentation::same(&self.pres, &other.pres) {
            Ok(())
        } else {
            Err(Error::PresentationMismatch {
                left: self.pres.name().into(),
                right: other.pres.name().into(),
            })
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            let s = &terms.get(m).cloned().unwrap_or_default() + c;
            if s.is_zero() {
                terms.remove(m);
            } else {
                terms.insert(m.clone(), s);
            }
        }
        Ok(Self::from_terms(&self.pres, terms))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&QScalar::from_int(-1))
    }

    pub fn scale(&self, c: &QScalar) -> Self {
        if c.is_zero() {
            return Self::zero(&self.pres);
        }
        Self::from_terms(
            &self.pres,
            self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        )
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(&self.pres));
        }
        let mut words = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (m1, c1) in &self.terms {
            let w1 = m1.word();
            for (m2, c2) in &other.terms {
                let mut w = w1.clone();
                w.extend(m2.word());
                words.push((c1 * c2, w));
            }
        }
        Ok(Self::from_terms(&self.pres, reduce(&self.pres, words, &mut Strategy::First)))
    }

    /// Nonnegative power.
    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(&self.pres);
        for _ in 0..k {
            acc = acc.mul(self).expect("same presentation");
        }
        acc
    }

    /// Maximum total absolute exponent; `None` for zero.
    pub fn filtration_degree(&self) -> Option<i64> {
        self.terms.keys().map(Mono::degree).max()
    }

    /// True if some term has a negative exponent.
    pub fn has_inverses(&self) -> bool {
        self.terms.keys().any(|m| m.exps().iter().any(|&e| e < 0))
    }

    /// Antilinear antihomomorphic extension of the generator star table.
    pub fn star(&self) -> Result<Self> {
        let table = self
            .pres
            .star_table()
            .ok_or_else(|| Error::Localized(alloc::format!("no star structure on {}", self.pres.name())))?;
        if self.has_inverses() {
            return Err(Error::Localized("star of an element with inverted generators".into()));
        }
        let mut words = Vec::new();
        for (m, c) in &self.terms {
            let mut coef = c.conj();
            let mut w: Word = Vec::new();
            for (g, e) in m.word().into_iter().rev() {
                let (k, h) = &table[g];
                coef = &coef * &k.pow(e).expect("nonzero star coefficient");
                w.push((*h, e));
            }
            words.push((coef, w));
        }
        Ok(Self::from_terms(&self.pres, reduce(&self.pres, words, &mut Strategy::First)))
    }

    /// Exact specialization of every coefficient at `q = q0`, returned as
    /// `(monomial, value)` pairs; zero values are dropped.
    pub fn specialize(&self, q0: &crate::scalars::QRational) -> Result<Vec<(Mono, crate::scalars::QRational)>> {
        let mut out = Vec::new();
        for (m, c) in &self.terms {
            let v = c.specialize(q0)?;
            if !num_traits::Zero::is_zero(&v) {
                out.push((m.clone(), v));
            }
        }
        Ok(out)
    }

    pub fn mono_string(pres: &Presentation, m: &Mono) -> String {
        let mut slots: Vec<Vec<String>> = alloc::vec![Vec::new(); pres.nslots()];
        for (g, e) in m.word() {
            let gen = &pres.gens()[g];
            let s = if e == 1 {
                gen.name.clone()
            } else {
                alloc::format!("{}^{}", gen.name, e)
            };
            slots[gen.slot].push(s);
        }
        slots
            .iter()
            .map(|s| if s.is_empty() { String::from("1") } else { s.join(" ") })
            .collect::<Vec<_>>()
            .join(" ⊗ ")
    }
}

fn coeff_prefix(c: &QScalar) -> String {
    if c.is_one() {
        String::new()
    } else if (-c).is_one() {
        "-".into()
    } else if c.needs_parens() {
        alloc::format!("({c}) ")
    } else {
        alloc::format!("{c} ")
    }
}

impl fmt::Display for NCPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let body = if m.is_one() && self.pres.nslots() == 1 {
                alloc::format!("{c}")
            } else {
                alloc::format!("{}{}", coeff_prefix(c), Self::mono_string(&self.pres, m))
            };
            if i == 0 {
                f.write_str(&body)?;
            } else if let Some(rest) = body.strip_prefix('-') {
                write!(f, " - {rest}")?;
            } else {
                write!(f, " + {body}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for NCPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NCPoly[{}]({self})", self.pres.name())
    }
}
