//! Coproduct, counit, antipode and star on G and on the Borel quotient.

use alloc::string::String;
use alloc::vec::Vec;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::check::Check;
use crate::error::{Error, Result};
use crate::linalg::{poly_equations, solve, SparseVec};
use crate::ncalg::{
    basis_monomials, monomial_inverse, random_word_deg, split_mono, standard, tensor_elems, word_string, AlgebraMap,
    Mono, NCPoly, Pres, Presentation, Word,
};
use crate::parse::parse_expr;
use crate::scalars::QScalar;

#[derive(Clone, Debug)]
pub struct HopfData {
    algebra: Pres,
    coproduct: AlgebraMap,
    counit: AlgebraMap,
    antipode: Vec<NCPoly>,
    antipode_inv: Vec<Option<NCPoly>>,
}

fn expr(s: &str, p: &Pres) -> NCPoly {
    parse_expr(s, p).expect("built-in expression")
}

fn sl2_coproduct(g: &Pres, delta_b: &str) -> AlgebraMap {
    let gg = Presentation::tensor(&[g, g]);
    let mut f = AlgebraMap::new(g, &gg);
    for (name, img) in [
        ("a", "a ⊗ a + b ⊗ c"),
        ("b", delta_b),
        ("c", "c ⊗ a + d ⊗ c"),
        ("d", "c ⊗ b + d ⊗ d"),
    ] {
        f = f.with(name, expr(img, &gg)).expect("coproduct image");
    }
    f
}

fn counit_map(p: &Pres, values: &[(&str, i64)]) -> AlgebraMap {
    let k = standard::scalars();
    let mut f = AlgebraMap::new(p, &k);
    for &(name, v) in values {
        f = f.with(name, NCPoly::scalar(&k, QScalar::from_int(v))).expect("counit value");
    }
    f
}

impl HopfData {
    /// O(SL_q(2)) with the matrix coproduct; the antipode is solved for.
    pub fn sl2() -> Result<Self> {
        let g = standard::g();
        let delta = sl2_coproduct(&g, "a ⊗ b + b ⊗ d");
        let eps = counit_map(&g, &[("a", 1), ("b", 0), ("c", 0), ("d", 1)]);
        Self::solve(g, delta, eps, 1)
    }

    /// Negative control: `Δ(b) = a⊗b + q b⊗d` with the true antipode.
    pub fn sl2_corrupted() -> Self {
        let good = Self::sl2().expect("standard structure");
        let delta = sl2_coproduct(&good.algebra, "a ⊗ b + q b ⊗ d");
        HopfData { coproduct: delta, ..good }
    }

    /// The lower Borel quotient B = G/(b).
    pub fn borel() -> Result<Self> {
        let b = standard::borel();
        let bb = Presentation::tensor(&[&b, &b]);
        let delta = AlgebraMap::new(&b, &bb)
            .with("lambda", expr("lambda ⊗ lambda", &bb))?
            .with("xi", expr("xi ⊗ lambda + lambda^-1 ⊗ xi", &bb))?;
        let eps = counit_map(&b, &[("lambda", 1), ("xi", 0)]);
        Self::solve(b, delta, eps, 2)
    }

    /// Solves `μ(S⊗id)Δ(g) = ε(g) = μ(id⊗S)Δ(g)` on generators with an
    /// ansatz of all normal monomials up to `deg`. Invertible generators
    /// must be group-like (`S(g) = g^-1`).
    fn solve(algebra: Pres, coproduct: AlgebraMap, counit: AlgebraMap, deg: i64) -> Result<Self> {
        let n = algebra.ngens();
        let mut known: Vec<Option<NCPoly>> = alloc::vec![None; n];
        for (g, gen) in algebra.gens().iter().enumerate() {
            if gen.invertible {
                known[g] = Some(NCPoly::gen_idx(&algebra, g, -1)?);
            }
        }
        let unknown: Vec<usize> = (0..n).filter(|&g| known[g].is_none()).collect();
        let basis = basis_monomials(&algebra, deg);
        let ncols = unknown.len() * basis.len();
        let col = |ui: usize, bi: usize| ui * basis.len() + bi;
        let tensor = coproduct.target().clone();

        let known_s = |m: &Mono| -> Option<NCPoly> {
            let mut acc = NCPoly::one(&algebra);
            for (g, e) in m.word().into_iter().rev() {
                let sg = known[g].as_ref()?;
                let f = if e > 0 {
                    sg.pow(e as u32)
                } else {
                    monomial_inverse(sg)?.pow((-e) as u32)
                };
                acc = acc.mul(&f).ok()?;
            }
            Some(acc)
        };
        let single_unknown = |m: &Mono| -> Option<usize> {
            let w = m.word();
            (w.len() == 1 && w[0].1 == 1).then(|| unknown.iter().position(|&u| u == w[0].0)).flatten()
        };

        let mut rows: Vec<SparseVec> = Vec::new();
        let mut rhs: Vec<QScalar> = Vec::new();
        for h in 0..n {
            let dh = coproduct.image(h).ok_or_else(|| Error::UndefinedGenerator(algebra.gens()[h].name.clone()))?;
            let eh = counit.image(h).and_then(NCPoly::as_scalar).unwrap_or_default();
            for left in [true, false] {
                let mut cols = alloc::vec![NCPoly::zero(&algebra); ncols];
                let mut r = NCPoly::scalar(&algebra, eh.clone());
                for (m, c) in dh.terms() {
                    let parts = split_mono(&tensor, m);
                    let (s_part, other) = if left { (&parts[0], &parts[1]) } else { (&parts[1], &parts[0]) };
                    let other = NCPoly::monomial(&algebra, c.clone(), other.clone());
                    if let Some(ui) = single_unknown(s_part) {
                        for (bi, b) in basis.iter().enumerate() {
                            let bm = NCPoly::monomial(&algebra, QScalar::one(), b.clone());
                            let t = if left { bm.mul(&other)? } else { other.mul(&bm)? };
                            cols[col(ui, bi)] = cols[col(ui, bi)].add(&t)?;
                        }
                    } else if let Some(s) = known_s(s_part) {
                        let t = if left { s.mul(&other)? } else { other.mul(&s)? };
                        r = r.sub(&t)?;
                    } else {
                        return Err(Error::NoSolution("antipode ansatz is not linear".into()));
                    }
                }
                let (rw, b) = poly_equations(&cols, &r);
                rows.extend(rw);
                rhs.extend(b);
            }
        }
        let (x, ker) = solve(rows, rhs, ncols).ok_or_else(|| Error::NoSolution("antipode equations".into()))?;
        if !ker.is_empty() {
            return Err(Error::NoSolution("antipode is not unique in the ansatz".into()));
        }
        let mut antipode: Vec<NCPoly> = Vec::with_capacity(n);
        let mut antipode_inv = alloc::vec![None; n];
        for g in 0..n {
            if let Some(k) = &known[g] {
                antipode.push(k.clone());
                antipode_inv[g] = Some(NCPoly::gen_idx(&algebra, g, 1)?);
            } else {
                let ui = unknown.iter().position(|&u| u == g).unwrap();
                let mut s = NCPoly::zero(&algebra);
                for (bi, b) in basis.iter().enumerate() {
                    s = s.add(&NCPoly::monomial(&algebra, x[col(ui, bi)].clone(), b.clone()))?;
                }
                antipode.push(s);
            }
        }
        Ok(HopfData {
            algebra,
            coproduct,
            counit,
            antipode,
            antipode_inv,
        })
    }

    pub fn algebra(&self) -> &Pres {
        &self.algebra
    }

    pub fn tensor2(&self) -> &Pres {
        self.coproduct.target()
    }

    pub fn coproduct_map(&self) -> &AlgebraMap {
        &self.coproduct
    }

    pub fn counit_map(&self) -> &AlgebraMap {
        &self.counit
    }

    pub fn coproduct(&self, p: &NCPoly) -> Result<NCPoly> {
        self.coproduct.apply(p)
    }

    pub fn counit(&self, p: &NCPoly) -> Result<QScalar> {
        Ok(self.counit.apply(p)?.as_scalar().expect("counit lands in scalars"))
    }

    pub fn antipode_of_generator(&self, g: usize) -> &NCPoly {
        &self.antipode[g]
    }

    /// Antihomomorphic extension of the generator values.
    pub fn antipode_word(&self, w: &Word) -> Result<NCPoly> {
        let mut acc = NCPoly::one(&self.algebra);
        for &(g, e) in w.iter().rev() {
            let f = if e >= 0 {
                self.antipode[g].pow(e as u32)
            } else {
                self.antipode_inv[g]
                    .as_ref()
                    .ok_or_else(|| Error::NotInvertible(self.algebra.gens()[g].name.clone()))?
                    .pow((-e) as u32)
            };
            acc = acc.mul(&f)?;
        }
        Ok(acc)
    }

    pub fn antipode(&self, p: &NCPoly) -> Result<NCPoly> {
        if !Presentation::same(p.pres(), &self.algebra) {
            return Err(Error::PresentationMismatch {
                left: p.pres().name().into(),
                right: self.algebra.name().into(),
            });
        }
        let mut acc = NCPoly::zero(&self.algebra);
        for (m, c) in p.terms() {
            acc = acc.add(&self.antipode_word(&m.word())?.scale(c))?;
        }
        Ok(acc)
    }

    /// `μ(f ⊗ g)` applied to an element of the tensor square, where `f`
    /// and `g` are linear maps on the algebra given per monomial.
    pub fn mu_apply<F, H>(&self, x: &NCPoly, f: F, h: H) -> Result<NCPoly>
    where
        F: Fn(&NCPoly) -> Result<NCPoly>,
        H: Fn(&NCPoly) -> Result<NCPoly>,
    {
        let mut acc = NCPoly::zero(&self.algebra);
        for (m, c) in x.terms() {
            let parts = split_mono(x.pres(), m);
            let l = f(&NCPoly::monomial(&self.algebra, c.clone(), parts[0].clone()))?;
            let r = h(&NCPoly::monomial(&self.algebra, QScalar::one(), parts[1].clone()))?;
            acc = acc.add(&l.mul(&r)?)?;
        }
        Ok(acc)
    }
}

/// The quotient map π: G → B.
pub fn projection_pi() -> AlgebraMap {
    let g = standard::g();
    let b = standard::borel();
    AlgebraMap::new(&g, &b)
        .with("a", expr("lambda", &b))
        .and_then(|f| f.with("b", NCPoly::zero(&b)))
        .and_then(|f| f.with("c", expr("xi", &b)))
        .and_then(|f| f.with("d", expr("lambda^-1", &b)))
        .expect("projection")
}

/// `Δ(p) = p ⊗ p` and `ε(p) = 1`.
pub fn is_group_like(h: &HopfData, p: &NCPoly) -> Result<bool> {
    Ok(h.coproduct(p)? == tensor_elems(&[p, p]) && h.counit(p)?.is_one())
}

fn first_bad<T, F>(items: &[T], mut f: F) -> Result<Option<String>>
where
    F: FnMut(&T) -> Result<Option<String>>,
{
    for it in items {
        if let Some(w) = f(it)? {
            return Ok(Some(w));
        }
    }
    Ok(None)
}

/// Checks every Hopf axiom on generators and on random words.
pub fn verify_hopf(h: &HopfData, degree: usize, samples: usize, seed: u64) -> Result<Vec<Check>> {
    let a = h.algebra();
    let id = AlgebraMap::identity(a);
    let d_id = AlgebraMap::tensor(&[h.coproduct_map(), &id]);
    let id_d = AlgebraMap::tensor(&[&id, h.coproduct_map()]);
    let eps_id = AlgebraMap::tensor(&[h.counit_map(), &id]);
    let id_eps = AlgebraMap::tensor(&[&id, h.counit_map()]);

    let mut words: Vec<Word> = Vec::new();
    for g in 0..a.ngens() {
        words.push(alloc::vec![(g, 1)]);
        if a.gens()[g].invertible {
            words.push(alloc::vec![(g, -1)]);
        }
    }
    let ngen_words = words.len();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        words.push(random_word_deg(a, degree, &mut rng));
    }
    let elems: Vec<(String, NCPoly)> = words
        .iter()
        .map(|w| Ok((word_string(a, w), NCPoly::from_word(a, QScalar::one(), w)?)))
        .collect::<Result<_>>()?;

    let mut checks = Vec::new();
    let rel = |f: &AlgebraMap| -> Result<Option<String>> { Ok(f.relation_failures()?.into_iter().next()) };
    checks.push(Check::from_witness(
        "coproduct_preserves_relations",
        "Δ extends to an algebra map",
        rel(h.coproduct_map())?,
    ));
    checks.push(Check::from_witness(
        "counit_preserves_relations",
        "ε extends to an algebra map",
        rel(h.counit_map())?,
    ));

    let coassoc = first_bad(&elems, |(name, x)| {
        let dx = h.coproduct(x)?;
        let l = d_id.apply(&dx)?;
        let r = id_d.apply(&dx)?;
        Ok((l != r).then(|| alloc::format!("{name}: {l} != {r}")))
    })?;
    checks.push(Check::from_witness("coassociativity", "(Δ⊗id)Δ = (id⊗Δ)Δ", coassoc));

    let counit = first_bad(&elems, |(name, x)| {
        let dx = h.coproduct(x)?;
        let l = eps_id.apply(&dx)?;
        let r = id_eps.apply(&dx)?;
        Ok((l != *x || r != *x).then(|| alloc::format!("{name}: (ε⊗id)Δ = {l}, (id⊗ε)Δ = {r}")))
    })?;
    checks.push(Check::from_witness("counit_law", "(ε⊗id)Δ = id = (id⊗ε)Δ", counit));

    let antipode = first_bad(&elems, |(name, x)| {
        let dx = h.coproduct(x)?;
        let e = NCPoly::scalar(a, h.counit(x)?);
        let l = h.mu_apply(&dx, |y| h.antipode(y), |y| Ok(y.clone()))?;
        let r = h.mu_apply(&dx, |y| Ok(y.clone()), |y| h.antipode(y))?;
        Ok((l != e || r != e).then(|| alloc::format!("{name}: μ(S⊗id)Δ = {l}, μ(id⊗S)Δ = {r}, ε = {e}")))
    })?;
    checks.push(Check::from_witness("antipode_law", "μ(S⊗id)Δ = ηε = μ(id⊗S)Δ", antipode));

    let s_rel = first_bad(&a.relations(), |(lhs, rhs)| {
        let l = h.antipode_word(lhs)?;
        let mut r = NCPoly::zero(a);
        for (c, w) in rhs {
            r = r.add(&h.antipode_word(w)?.scale(c))?;
        }
        Ok((l != r).then(|| alloc::format!("S({}) = {l} != {r}", word_string(a, lhs))))
    })?;
    checks.push(Check::from_witness(
        "antipode_preserves_relations",
        "S extends to an antihomomorphism",
        s_rel,
    ));

    if a.has_star() {
        let star_words: Vec<&(String, NCPoly)> = elems.iter().filter(|(_, x)| !x.has_inverses()).collect();
        let star = first_bad(&star_words, |(name, x)| {
            let l = h.coproduct(&x.star()?)?;
            let r = h.coproduct(x)?.star()?;
            let e1 = h.counit(&x.star()?)?;
            let e2 = h.counit(x)?.conj();
            Ok((l != r || e1 != e2).then(|| alloc::format!("{name}: Δ(x*) = {l}, (*⊗*)Δ(x) = {r}")))
        })?;
        checks.push(Check::from_witness(
            "star_compatibility",
            "Δ(x*) = (*⊗*)Δ(x) and ε(x*) = conj ε(x)",
            star,
        ));
        let sss = first_bad(&elems[..ngen_words], |(name, x)| {
            let y = h.antipode(&h.antipode(x)?.star()?)?.star()?;
            Ok((y != *x).then(|| alloc::format!("{name}: S(S(x)*)* = {y}")))
        })?;
        checks.push(Check::from_witness("star_antipode", "* ∘ S ∘ * ∘ S = id", sss));
    } else {
        checks.push(Check::skip(
            "star_compatibility",
            "Δ(x*) = (*⊗*)Δ(x) and ε(x*) = conj ε(x)",
            alloc::format!("{} carries no star structure", a.name()),
        ));
    }
    Ok(checks)
}

/// π is a Hopf map on all basis monomials up to `degree`.
pub fn verify_projection(g: &HopfData, b: &HopfData, degree: i64) -> Result<Vec<Check>> {
    let pi = projection_pi();
    let pipi = AlgebraMap::tensor(&[&pi, &pi]);
    let basis = basis_monomials(g.algebra(), degree);
    let mut checks = Vec::new();
    checks.push(Check::from_witness(
        "pi_preserves_relations",
        "π: G → B is an algebra map killing b",
        pi.relation_failures()?.into_iter().next(),
    ));
    let mut w_delta = None;
    let mut w_eps = None;
    let mut w_s = None;
    for m in &basis {
        let x = NCPoly::monomial(g.algebra(), QScalar::one(), m.clone());
        let px = pi.apply(&x)?;
        if w_delta.is_none() {
            let l = pipi.apply(&g.coproduct(&x)?)?;
            let r = b.coproduct(&px)?;
            if l != r {
                w_delta = Some(alloc::format!("{x}: {l} != {r}"));
            }
        }
        if w_eps.is_none() && g.counit(&x)? != b.counit(&px)? {
            w_eps = Some(alloc::format!("{x}"));
        }
        if w_s.is_none() {
            let l = pi.apply(&g.antipode(&x)?)?;
            let r = b.antipode(&px)?;
            if l != r {
                w_s = Some(alloc::format!("{x}: π(S x) = {l}, S(π x) = {r}"));
            }
        }
    }
    checks.push(Check::from_witness("pi_coproduct", "(π⊗π)Δ_G = Δ_B π", w_delta));
    checks.push(Check::from_witness("pi_counit", "ε_B π = ε_G", w_eps));
    checks.push(Check::from_witness("pi_antipode", "S_B π = π S_G", w_s));
    Ok(checks)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::check::all_ok;
    use alloc::format;

    #[test]
    fn antipode_values() {
        let h = HopfData::sl2().unwrap();
        let g = h.algebra().clone();
        let s = |x: &str| format!("{}", h.antipode(&parse_expr(x, &g).unwrap()).unwrap());
        assert_eq!(s("a"), "d");
        assert_eq!(s("d"), "a");
        assert_eq!(s("b"), "-q^-1 b");
        assert_eq!(s("c"), "-q c");
        let b = HopfData::borel().unwrap();
        let bp = b.algebra().clone();
        assert_eq!(format!("{}", b.antipode(&parse_expr("xi", &bp).unwrap()).unwrap()), "-q xi");
        assert_eq!(format!("{}", b.antipode(&parse_expr("lambda", &bp).unwrap()).unwrap()), "lambda^-1");
    }

    #[test]
    fn coproduct_examples() {
        let h = HopfData::sl2().unwrap();
        let g = h.algebra().clone();
        assert_eq!(format!("{}", h.coproduct(&NCPoly::one(&g)).unwrap()), "1 ⊗ 1");
        assert_eq!(format!("{}", h.coproduct(&parse_expr("a", &g).unwrap()).unwrap()), "a ⊗ a + b ⊗ c");
        assert!(h.counit(&parse_expr("a d", &g).unwrap()).unwrap().is_one());
        let b = HopfData::borel().unwrap();
        let bp = b.algebra().clone();
        assert_eq!(
            format!("{}", b.coproduct(&parse_expr("lambda^-1", &bp).unwrap()).unwrap()),
            "lambda^-1 ⊗ lambda^-1"
        );
    }

    #[test]
    fn group_likes() {
        let b = HopfData::borel().unwrap();
        let bp = b.algebra().clone();
        assert!(is_group_like(&b, &parse_expr("lambda^-3", &bp).unwrap()).unwrap());
        assert!(is_group_like(&b, &NCPoly::one(&bp)).unwrap());
        assert!(!is_group_like(&b, &parse_expr("lambda + xi", &bp).unwrap()).unwrap());
    }

    #[test]
    fn axioms_hold() {
        let g = HopfData::sl2().unwrap();
        let checks = verify_hopf(&g, 4, 20, 1).unwrap();
        assert!(all_ok(&checks), "{checks:?}");
        let b = HopfData::borel().unwrap();
        let checks = verify_hopf(&b, 4, 20, 1).unwrap();
        assert!(all_ok(&checks), "{checks:?}");
        assert!(all_ok(&verify_projection(&g, &b, 3).unwrap()));
    }

    #[test]
    fn corrupted_coproduct_is_caught() {
        let bad = HopfData::sl2_corrupted();
        let checks = verify_hopf(&bad, 3, 5, 1).unwrap();
        let fail = crate::check::first_failure(&checks).expect("must fail");
        assert!(fail.witness.is_some());
    }
}
