//! Algebra homomorphisms given on generators, and tensor embeddings.

use alloc::collections::btree_map::Entry;
use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use super::poly::{Mono, NCPoly};
use super::presentation::{Pres, Presentation, Word};
use crate::error::{Error, Result};
use crate::scalars::QScalar;

/// Inverse of `c * m` when every letter of `m` is invertible.
pub fn monomial_inverse(p: &NCPoly) -> Option<NCPoly> {
    if p.len() != 1 {
        return None;
    }
    let (m, c) = p.terms().iter().next().unwrap();
    let pres = p.pres();
    let w: Word = m.word().into_iter().rev().map(|(g, e)| (g, -e)).collect();
    if w.iter().any(|&(g, _)| !pres.gens()[g].invertible) {
        return None;
    }
    NCPoly::from_word(pres, c.inv().ok()?, &w).ok()
}

/// Places an element of one tensor factor into a flattened tensor product,
/// its generators starting at index `offset`.
pub fn embed(p: &NCPoly, target: &Pres, offset: usize) -> NCPoly {
    let n = target.ngens();
    let terms = p
        .terms()
        .iter()
        .map(|(m, c)| {
            let mut exps = alloc::vec![0; n];
            exps[offset..offset + m.exps().len()].copy_from_slice(m.exps());
            (Mono::new(exps), c.clone())
        })
        .collect();
    NCPoly::from_terms(target, terms)
}

/// `p_1 ⊗ p_2 ⊗ ...` in the flattened tensor presentation.
pub fn tensor_elems(parts: &[&NCPoly]) -> NCPoly {
    let pres: Vec<&Pres> = parts.iter().map(|p| p.pres()).collect();
    let target = Presentation::tensor(&pres);
    let mut acc: BTreeMap<Mono, QScalar> = BTreeMap::new();
    acc.insert(Mono::new(Vec::new()), QScalar::one());
    for p in parts {
        let mut next = BTreeMap::new();
        for (m1, c1) in &acc {
            for (m2, c2) in p.terms() {
                let mut e = m1.exps().to_vec();
                e.extend_from_slice(m2.exps());
                next.insert(Mono::new(e), c1 * c2);
            }
        }
        acc = next;
    }
    NCPoly::from_terms(&target, acc)
}

/// Splits a monomial of a flattened tensor into its factor monomials.
pub fn split_mono(pres: &Presentation, m: &Mono) -> Vec<Mono> {
    let mut out = Vec::new();
    let mut off = 0;
    for (_, k) in pres.factors() {
        out.push(Mono::new(m.exps()[off..off + k].to_vec()));
        off += k;
    }
    out
}

#[derive(Clone, Debug)]
pub struct AlgebraMap {
    source: Pres,
    target: Pres,
    images: Vec<Option<NCPoly>>,
    inverses: Vec<Option<NCPoly>>,
}

impl AlgebraMap {
    pub fn new(source: &Pres, target: &Pres) -> Self {
        AlgebraMap {
            source: source.clone(),
            target: target.clone(),
            images: alloc::vec![None; source.ngens()],
            inverses: alloc::vec![None; source.ngens()],
        }
    }

    pub fn source(&self) -> &Pres {
        &self.source
    }

    pub fn target(&self) -> &Pres {
        &self.target
    }

    pub fn image(&self, g: usize) -> Option<&NCPoly> {
        self.images[g].as_ref()
    }

    pub fn inverse_image(&self, g: usize) -> Option<&NCPoly> {
        self.inverses[g].as_ref()
    }

    /// Sets the image of generator `g`. For invertible generators the
    /// inverse is found by monomial inversion.
    pub fn set(&mut self, g: usize, image: NCPoly) -> Result<()> {
        if self.source.gens()[g].invertible {
            let inv = monomial_inverse(&image)
                .ok_or_else(|| Error::NotInvertible(self.source.gens()[g].name.clone()))?;
            return self.set_with_inverse(g, image, inv);
        }
        self.check_target(&image)?;
        self.images[g] = Some(image);
        Ok(())
    }

    /// Sets an invertible generator's image together with its inverse,
    /// verifying both products are 1.
    pub fn set_with_inverse(&mut self, g: usize, image: NCPoly, inverse: NCPoly) -> Result<()> {
        self.check_target(&image)?;
        self.check_target(&inverse)?;
        let one = NCPoly::one(&self.target);
        if image.mul(&inverse)? != one || inverse.mul(&image)? != one {
            return Err(Error::NotInvertible(self.source.gens()[g].name.clone()));
        }
        self.images[g] = Some(image);
        self.inverses[g] = Some(inverse);
        Ok(())
    }

    pub fn with(mut self, name: &str, image: NCPoly) -> Result<Self> {
        let g = self
            .source
            .index(name)
            .ok_or_else(|| Error::UnknownGenerator(name.into()))?;
        self.set(g, image)?;
        Ok(self)
    }

    fn check_target(&self, p: &NCPoly) -> Result<()> {
        if Presentation::same(p.pres(), &self.target) {
            Ok(())
        } else {
            Err(Error::PresentationMismatch {
                left: p.pres().name().into(),
                right: self.target.name().into(),
            })
        }
    }

    pub fn identity(pres: &Pres) -> Self {
        Self::inclusion(pres, pres).expect("identity")
    }

    /// Name-preserving map into a presentation with the same generator
    /// names (localization maps, identity).
    pub fn inclusion(source: &Pres, target: &Pres) -> Result<Self> {
        let mut f = Self::new(source, target);
        for (g, gen) in source.gens().iter().enumerate() {
            let h = target
                .find(&gen.name, gen.slot)
                .ok_or_else(|| Error::UndefinedGenerator(gen.name.clone()))?;
            f.set(g, NCPoly::gen_idx(target, h, 1)?)?;
        }
        Ok(f)
    }

    fn letter(&self, g: usize, e: i64) -> Result<NCPoly> {
        let name = || self.source.gens()[g].name.clone();
        let base = if e >= 0 {
            self.images[g].as_ref().ok_or_else(|| Error::UndefinedGenerator(name()))?
        } else {
            self.inverses[g].as_ref().ok_or_else(|| Error::NotInvertible(name()))?
        };
        Ok(base.pow(e.unsigned_abs() as u32))
    }

    /// Image of a formal product (no reduction in the source).
    pub fn apply_word(&self, w: &Word) -> Result<NCPoly> {
        let mut acc = NCPoly::one(&self.target);
        for &(g, e) in w {
            acc = acc.mul(&self.letter(g, e)?)?;
        }
        Ok(acc)
    }

    pub fn apply(&self, p: &NCPoly) -> Result<NCPoly> {
        if !Presentation::same(p.pres(), &self.source) {
            return Err(Error::PresentationMismatch {
                left: p.pres().name().into(),
                right: self.source.name().into(),
            });
        }
        let mut cache: BTreeMap<(usize, i64), NCPoly> = BTreeMap::new();
        let mut acc = NCPoly::zero(&self.target);
        for (m, c) in p.terms() {
            let mut t = NCPoly::scalar(&self.target, c.clone());
            for (g, e) in m.word() {
                if let Entry::Vacant(v) = cache.entry((g, e)) {
                    v.insert(self.letter(g, e)?);
                }
                t = t.mul(&cache[&(g, e)])?;
                if t.is_zero() {
                    break;
                }
            }
            acc = acc.add(&t)?;
        }
        Ok(acc)
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &AlgebraMap) -> Result<AlgebraMap> {
        let mut f = AlgebraMap::new(&first.source, &self.target);
        for g in 0..first.source.ngens() {
            let img = first.images[g]
                .as_ref()
                .ok_or_else(|| Error::UndefinedGenerator(first.source.gens()[g].name.clone()))?;
            f.images[g] = Some(self.apply(img)?);
            if let Some(inv) = &first.inverses[g] {
                f.inverses[g] = Some(self.apply(inv)?);
            }
        }
        Ok(f)
    }

    /// `f_1 ⊗ f_2 ⊗ ...` between flattened tensor products.
    pub fn tensor(maps: &[&AlgebraMap]) -> AlgebraMap {
        let sources: Vec<&Pres> = maps.iter().map(|f| &f.source).collect();
        let targets: Vec<&Pres> = maps.iter().map(|f| &f.target).collect();
        let source = Presentation::tensor(&sources);
        let target = Presentation::tensor(&targets);
        let mut out = AlgebraMap::new(&source, &target);
        let mut soff = 0;
        let mut toff = 0;
        for f in maps {
            for g in 0..f.source.ngens() {
                out.images[soff + g] = f.images[g].as_ref().map(|p| embed(p, &target, toff));
                out.inverses[soff + g] = f.inverses[g].as_ref().map(|p| embed(p, &target, toff));
            }
            soff += f.source.ngens();
            toff += f.target.ngens();
        }
        out
    }

    /// Defining relations of the source whose images disagree, as text.
    pub fn relation_failures(&self) -> Result<Vec<String>> {
        let src = &self.source;
        let rels = src.relations();
        let mut bad = Vec::new();
        for (lhs, rhs) in rels {
            let l = self.apply_word(&lhs)?;
            let mut r = NCPoly::zero(&self.target);
            for (c, w) in &rhs {
                r = r.add(&self.apply_word(w)?.scale(c))?;
            }
            if l != r {
                let name = |w: &Word| {
                    w.iter()
                        .map(|&(g, e)| {
                            if e == 1 {
                                src.gens()[g].name.clone()
                            } else {
                                alloc::format!("{}^{}", src.gens()[g].name, e)
                            }
                        })
                        .collect::<Vec<_>>()
                        .join(" ")
                };
                bad.push(alloc::format!("{}: {} != {}", name(&lhs), l, r));
            }
        }
        Ok(bad)
    }
}
