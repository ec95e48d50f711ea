//! The rewriting kernel: reduces words to normal monomials.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::poly::Mono;
use super::presentation::{Presentation, Rhs, Swap, Word};
use crate::scalars::QScalar;

/// Which redex to contract next.
pub enum Strategy<'a> {
    /// Leftmost redex, fixed priority. Deterministic.
    First,
    /// Uniformly random redex; used by the confluence probe.
    Random(&'a mut ChaCha8Rng),
}

#[derive(Clone, Copy, Debug)]
enum Redex {
    Zero(usize),
    Merge(usize),
    Elim(usize),
    Swap(usize),
    Ordered { rule: usize, p: usize, r: usize },
}

fn swap_applies(pres: &Presentation, w: &Word, p: usize) -> bool {
    let (j, m) = w[p];
    let (i, n) = w[p + 1];
    if j <= i {
        return false;
    }
    match pres.swap(j, i) {
        Swap::QCommute(_) => true,
        Swap::Rewrite(_) => m > 0 && n > 0,
    }
}

fn redexes(pres: &Presentation, w: &Word, all: bool) -> Vec<Redex> {
    let mut out = Vec::new();
    for (p, &(g, e)) in w.iter().enumerate() {
        if e == 0 {
            out.push(Redex::Zero(p));
        } else if e > 0 && pres.elimination(g).is_some() {
            out.push(Redex::Elim(p));
        } else if p + 1 < w.len() && w[p + 1].0 == g {
            out.push(Redex::Merge(p));
        } else if p + 1 < w.len() && swap_applies(pres, w, p) {
            out.push(Redex::Swap(p));
        }
        if !all && !out.is_empty() {
            return out;
        }
    }
    for (k, rule) in pres.ordered_rules().iter().enumerate() {
        for p in 0..w.len() {
            if w[p].0 != rule.left || w[p].1 <= 0 {
                continue;
            }
            for (r, &(g, e)) in w.iter().enumerate().skip(p + 1) {
                if g == rule.right && e > 0 {
                    out.push(Redex::Ordered { rule: k, p, r });
                    break;
                }
                if pres.commute_exp(rule.right, g).is_none() {
                    break;
                }
            }
            if !all && !out.is_empty() {
                return out;
            }
        }
    }
    out
}

fn splice(w: &Word, lo: usize, hi: usize, mid: &[(usize, i64)]) -> Word {
    let mut out = Vec::with_capacity(w.len() + mid.len());
    out.extend_from_slice(&w[..lo]);
    out.extend_from_slice(mid);
    out.extend_from_slice(&w[hi..]);
    out
}

/// Replace `w[lo..hi]` by `pre · rhs · post`, each term scaled by `c`.
fn expand(w: &Word, lo: usize, hi: usize, pre: &[(usize, i64)], rhs: &Rhs, post: &[(usize, i64)], c: &QScalar) -> Vec<(QScalar, Word)> {
    rhs.iter()
        .map(|(k, rw)| {
            let mut mid: Word = pre.to_vec();
            mid.extend_from_slice(rw);
            mid.extend_from_slice(post);
            (k * c, splice(w, lo, hi, &mid))
        })
        .collect()
}

fn contract(pres: &Presentation, w: &Word, rdx: Redex) -> Vec<(QScalar, Word)> {
    let one = QScalar::one();
    match rdx {
        Redex::Zero(p) => alloc::vec![(one, splice(w, p, p + 1, &[]))],
        Redex::Merge(p) => {
            let (g, e1) = w[p];
            let e2 = w[p + 1].1;
            alloc::vec![(one, splice(w, p, p + 2, &[(g, e1 + e2)]))]
        }
        Redex::Elim(p) => {
            let (g, e) = w[p];
            let rhs = pres.elimination(g).unwrap();
            expand(w, p, p + 1, &[(g, e - 1)], rhs, &[], &one)
        }
        Redex::Swap(p) => {
            let (j, m) = w[p];
            let (i, n) = w[p + 1];
            match pres.swap(j, i) {
                Swap::QCommute(k) => {
                    alloc::vec![(QScalar::q_pow(k * m * n), splice(w, p, p + 2, &[(i, n), (j, m)]))]
                }
                Swap::Rewrite(rhs) => expand(w, p, p + 2, &[(j, m - 1)], rhs, &[(i, n - 1)], &one),
            }
        }
        Redex::Ordered { rule, p, r } => {
            let rule = &pres.ordered_rules()[rule];
            let mut k = 0i64;
            for &(g, e) in &w[p + 1..r] {
                k += pres.commute_exp(rule.right, g).unwrap() * e;
            }
            let (l, m) = w[p];
            let (rg, t) = w[r];
            // w[..p] l^{m-1} rhs w[p+1..r] rg^{t-1} w[r+1..]
            let mut tail: Word = w[p + 1..r].to_vec();
            tail.push((rg, t - 1));
            let c = QScalar::q_pow(k);
            expand(w, p, r + 1, &[(l, m - 1)], &rule.rhs, &tail, &c)
        }
    }
}

fn to_mono(pres: &Presentation, w: &Word) -> Mono {
    let mut exps = alloc::vec![0i64; pres.ngens()];
    for &(g, e) in w {
        exps[g] += e;
    }
    Mono::new(exps)
}

fn add_into<K: Ord>(map: &mut BTreeMap<K, QScalar>, key: K, c: QScalar) {
    use alloc::collections::btree_map::Entry;
    match map.entry(key) {
        Entry::Vacant(v) => {
            if !c.is_zero() {
                v.insert(c);
            }
        }
        Entry::Occupied(mut o) => {
            let s = o.get() + &c;
            if s.is_zero() {
                o.remove();
            } else {
                *o.get_mut() = s;
            }
        }
    }
}

/// Reduces a linear combination of words to normal form.
pub(crate) fn reduce<I>(pres: &Presentation, input: I, strategy: &mut Strategy<'_>) -> BTreeMap<Mono, QScalar>
where
    I: IntoIterator<Item = (QScalar, Word)>,
{
    let mut pending: BTreeMap<Word, QScalar> = BTreeMap::new();
    for (c, w) in input {
        add_into(&mut pending, w, c);
    }
    let mut out = BTreeMap::new();
    while let Some((w, c)) = pending.pop_last() {
        let all = matches!(strategy, Strategy::Random(_));
        let rs = redexes(pres, &w, all);
        if rs.is_empty() {
            debug_assert!(
                w.windows(2).all(|p| p[0].0 < p[1].0),
                "irreducible but unsorted word {w:?} in {}",
                pres.name()
            );
            add_into(&mut out, to_mono(pres, &w), c);
            continue;
        }
        let rdx = match strategy {
            Strategy::First => rs[0],
            Strategy::Random(rng) => rs[rng.gen_range(0..rs.len())],
        };
        for (k, nw) in contract(pres, &w, rdx) {
            add_into(&mut pending, nw, &k * &c);
        }
    }
    out
}
