//! Generator/relation presentations driving the rewriting engine.

use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::scalars::QScalar;

/// A word: generator index with a (possibly negative) exponent.
pub type Word = Vec<(usize, i64)>;

/// A right-hand side: linear combination of words.
pub type Rhs = Vec<(QScalar, Word)>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    pub invertible: bool,
    /// Tensor slot the generator lives in.
    pub slot: usize,
}

/// Rule for an out-of-order pair `g_j g_i` with `j > i`.
#[derive(Clone, Debug, PartialEq)]
pub enum Swap {
    /// `g_j^m g_i^n = q^{k m n} g_i^n g_j^m` for all exponents.
    QCommute(i64),
    /// `g_j g_i -> rhs`; only applies to positive exponents, one letter at a time.
    Rewrite(Rhs),
}

/// `left ... right -> rhs` for `left < right` whenever the letters in
/// between q-commute with `right`. Keeps `left` and `right` apart in
/// normal words.
#[derive(Clone, Debug, PartialEq)]
pub struct OrderedRule {
    pub left: usize,
    pub right: usize,
    pub rhs: Rhs,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Presentation {
    pub(crate) name: String,
    pub(crate) gens: Vec<Generator>,
    /// `swaps[j][i]` for `i < j`.
    pub(crate) swaps: Vec<Vec<Swap>>,
    pub(crate) ordered: Vec<OrderedRule>,
    /// Letter elimination `g -> rhs` (non-invertible `g` only).
    pub(crate) elim: Vec<Option<Rhs>>,
    /// Base factor names and generator counts (one entry unless a tensor).
    pub(crate) factors: Vec<(String, usize)>,
    /// `g* = c * h` on generators, when a star structure is known.
    pub(crate) star: Option<Vec<(QScalar, usize)>>,
}

pub type Pres = Arc<Presentation>;

impl Presentation {
    /// Presentation with all pairs commuting and no extra rules.
    pub fn free_commutative(name: &str, gens: &[(&str, bool)]) -> Self {
        let n = gens.len();
        Presentation {
            name: name.into(),
            gens: gens
                .iter()
                .map(|(g, inv)| Generator {
                    name: (*g).into(),
                    invertible: *inv,
                    slot: 0,
                })
                .collect(),
            swaps: (0..n).map(|j| alloc::vec![Swap::QCommute(0); j]).collect(),
            ordered: Vec::new(),
            elim: alloc::vec![None; n],
            factors: alloc::vec![(name.into(), n)],
            star: None,
        }
    }

    /// The ground field: no generators.
    pub fn scalars() -> Pres {
        Arc::new(Self::free_commutative("k", &[]))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn gens(&self) -> &[Generator] {
        &self.gens
    }

    pub fn ngens(&self) -> usize {
        self.gens.len()
    }

    pub fn nslots(&self) -> usize {
        self.factors.len().max(1)
    }

    pub fn factors(&self) -> &[(String, usize)] {
        &self.factors
    }

    pub fn ordered_rules(&self) -> &[OrderedRule] {
        &self.ordered
    }

    pub fn swap(&self, j: usize, i: usize) -> &Swap {
        &self.swaps[j][i]
    }

    pub fn elimination(&self, g: usize) -> Option<&Rhs> {
        self.elim[g].as_ref()
    }

    pub fn has_star(&self) -> bool {
        self.star.is_some()
    }

    pub fn star_table(&self) -> Option<&[(QScalar, usize)]> {
        self.star.as_deref()
    }

    /// Index of the generator called `name` in `slot`.
    pub fn find(&self, name: &str, slot: usize) -> Option<usize> {
        self.gens
            .iter()
            .position(|g| g.name == name && g.slot == slot)
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.find(name, 0)
    }

    /// First generator index of each slot.
    pub fn slot_offset(&self, slot: usize) -> usize {
        self.factors[..slot].iter().map(|f| f.1).sum()
    }

    pub(crate) fn set_swap(&mut self, j: usize, i: usize, s: Swap) {
        assert!(i < j);
        self.swaps[j][i] = s;
    }

    /// `k` with `y^m x^n = q^{k m n} x^n y^m`, if `x` and `y` q-commute.
    pub fn commute_exp(&self, x: usize, y: usize) -> Option<i64> {
        use core::cmp::Ordering::*;
        match x.cmp(&y) {
            Equal => Some(0),
            Less => match &self.swaps[y][x] {
                Swap::QCommute(k) => Some(*k),
                Swap::Rewrite(_) => None,
            },
            Greater => match &self.swaps[x][y] {
                Swap::QCommute(k) => Some(-*k),
                Swap::Rewrite(_) => None,
            },
        }
    }

    /// Flattened tensor product; factors with no generators are dropped.
    pub fn tensor(parts: &[&Pres]) -> Pres {
        let parts: Vec<&Pres> = parts.iter().copied().filter(|p| p.ngens() > 0).collect();
        if parts.is_empty() {
            return Self::scalars();
        }
        if parts.len() == 1 {
            return parts[0].clone();
        }
        let mut gens = Vec::new();
        let mut factors = Vec::new();
        let mut offsets = Vec::new();
        for p in &parts {
            offsets.push(gens.len());
            let slot0 = factors.len();
            for g in &p.gens {
                gens.push(Generator {
                    name: g.name.clone(),
                    invertible: g.invertible,
                    slot: slot0 + g.slot,
                });
            }
            factors.extend(p.factors.iter().cloned());
        }
        let n = gens.len();
        let mut swaps: Vec<Vec<Swap>> = (0..n).map(|j| alloc::vec![Swap::QCommute(0); j]).collect();
        let mut ordered = Vec::new();
        let mut elim = alloc::vec![None; n];
        let mut star: Option<Vec<(QScalar, usize)>> = Some(Vec::new());
        let shift = |w: &Word, off: usize| -> Word { w.iter().map(|&(g, e)| (g + off, e)).collect() };
        let shift_rhs = |r: &Rhs, off: usize| -> Rhs {
            r.iter().map(|(c, w)| (c.clone(), shift(w, off))).collect()
        };
        for (p, &off) in parts.iter().zip(&offsets) {
            for j in 0..p.ngens() {
                for i in 0..j {
                    swaps[j + off][i + off] = match &p.swaps[j][i] {
                        Swap::QCommute(k) => Swap::QCommute(*k),
                        Swap::Rewrite(r) => Swap::Rewrite(shift_rhs(r, off)),
                    };
                }
                if let Some(r) = &p.elim[j] {
                    elim[j + off] = Some(shift_rhs(r, off));
                }
            }
            for r in &p.ordered {
                ordered.push(OrderedRule {
                    left: r.left + off,
                    right: r.right + off,
                    rhs: shift_rhs(&r.rhs, off),
                });
            }
            star = match (star, &p.star) {
                (Some(mut s), Some(t)) => {
                    s.extend(t.iter().map(|(c, g)| (c.clone(), g + off)));
                    Some(s)
                }
                _ => None,
            };
        }
        let name = factors
            .iter()
            .map(|f: &(String, usize)| f.0.as_str())
            .collect::<Vec<_>>()
            .join("⊗");
        Arc::new(Presentation {
            name,
            gens,
            swaps,
            ordered,
            elim,
            factors,
            star,
        })
    }

    /// Defining relations `lhs = rhs`: one per generator pair, plus the
    /// elimination and ordered rules.
    pub fn relations(&self) -> Vec<(Word, Rhs)> {
        let mut rels = Vec::new();
        for j in 0..self.ngens() {
            for i in 0..j {
                let lhs = alloc::vec![(j, 1), (i, 1)];
                let rhs = match &self.swaps[j][i] {
                    Swap::QCommute(k) => alloc::vec![(QScalar::q_pow(*k), alloc::vec![(i, 1), (j, 1)])],
                    Swap::Rewrite(r) => r.clone(),
                };
                rels.push((lhs, rhs));
            }
            if let Some(r) = &self.elim[j] {
                rels.push((alloc::vec![(j, 1)], r.clone()));
            }
        }
        for r in &self.ordered {
            rels.push((alloc::vec![(r.left, 1), (r.right, 1)], r.rhs.clone()));
        }
        rels
    }

    pub fn same(a: &Pres, b: &Pres) -> bool {
        Arc::ptr_eq(a, b) || a.name == b.name
    }
}
