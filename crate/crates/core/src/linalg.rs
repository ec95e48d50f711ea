//! Sparse exact linear algebra over `QScalar`.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::ncalg::{Mono, NCPoly};
use crate::scalars::QScalar;

pub type SparseVec = BTreeMap<usize, QScalar>;

fn cost(c: &QScalar) -> usize {
    c.numer().term_count() + c.denom().term_count()
}

/// Reduced row echelon form.
#[derive(Clone, Debug)]
pub struct Rref {
    pub rows: Vec<SparseVec>,
    pub pivots: Vec<usize>,
    pub ncols: usize,
}

fn axpy(row: &mut SparseVec, f: &QScalar, other: &SparseVec) {
    for (&j, v) in other {
        let t = &(f * v);
        let s = match row.get(&j) {
            Some(x) => x - t,
            None => -t,
        };
        if s.is_zero() {
            row.remove(&j);
        } else {
            row.insert(j, s);
        }
    }
}

pub fn rref(mut rows: Vec<SparseVec>, ncols: usize) -> Rref {
    rows.retain(|r| !r.is_empty());
    let mut done: Vec<SparseVec> = Vec::new();
    let mut pivots = Vec::new();
    for col in 0..ncols {
        let best = rows
            .iter()
            .enumerate()
            .filter_map(|(i, r)| r.get(&col).map(|v| (cost(v) * 1024 + r.len(), i)))
            .min();
        let Some((_, i)) = best else { continue };
        let mut piv = rows.swap_remove(i);
        let inv = piv[&col].inv().expect("nonzero pivot");
        for v in piv.values_mut() {
            *v = &*v * &inv;
        }
        for r in rows.iter_mut().chain(done.iter_mut()) {
            if let Some(f) = r.get(&col).cloned() {
                axpy(r, &f, &piv);
            }
        }
        rows.retain(|r| !r.is_empty());
        done.push(piv);
        pivots.push(col);
    }
    Rref {
        rows: done,
        pivots,
        ncols,
    }
}

impl Rref {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Basis of the null space, one vector per free column.
    pub fn kernel(&self) -> Vec<Vec<QScalar>> {
        let piv: BTreeMap<usize, usize> = self.pivots.iter().enumerate().map(|(r, &c)| (c, r)).collect();
        let mut out = Vec::new();
        for free in 0..self.ncols {
            if piv.contains_key(&free) {
                continue;
            }
            let mut v = alloc::vec![QScalar::zero(); self.ncols];
            v[free] = QScalar::one();
            for (&c, &r) in &piv {
                if let Some(x) = self.rows[r].get(&free) {
                    v[c] = -x;
                }
            }
            out.push(v);
        }
        out
    }
}

pub fn rank(rows: Vec<SparseVec>, ncols: usize) -> usize {
    rref(rows, ncols).rank()
}

pub fn kernel(rows: Vec<SparseVec>, ncols: usize) -> Vec<Vec<QScalar>> {
    rref(rows, ncols).kernel()
}

/// Solution set of `rows · x = rhs`: a particular solution and the kernel,
/// or `None` when inconsistent.
pub fn solve(rows: Vec<SparseVec>, rhs: Vec<QScalar>, ncols: usize) -> Option<(Vec<QScalar>, Vec<Vec<QScalar>>)> {
    // augment with column `ncols`
    let aug: Vec<SparseVec> = rows
        .into_iter()
        .zip(rhs)
        .map(|(mut r, b)| {
            if !b.is_zero() {
                r.insert(ncols, b);
            }
            r
        })
        .collect();
    let red = rref(aug, ncols + 1);
    if red.pivots.last() == Some(&ncols) {
        return None;
    }
    let mut x = alloc::vec![QScalar::zero(); ncols];
    for (r, &c) in red.pivots.iter().enumerate() {
        if let Some(b) = red.rows[r].get(&ncols) {
            x[c] = b.clone();
        }
    }
    let kernel = Rref {
        rows: red
            .rows
            .into_iter()
            .map(|mut r| {
                r.remove(&ncols);
                r
            })
            .collect(),
        pivots: red.pivots,
        ncols,
    }
    .kernel();
    Some((x, kernel))
}

/// Linear equations `sum_k x_k cols[k] = rhs`, one row per monomial.
pub fn poly_equations(cols: &[NCPoly], rhs: &NCPoly) -> (Vec<SparseVec>, Vec<QScalar>) {
    let mut by_mono: BTreeMap<Mono, (SparseVec, QScalar)> = BTreeMap::new();
    for (k, p) in cols.iter().enumerate() {
        for (m, c) in p.terms() {
            by_mono.entry(m.clone()).or_default().0.insert(k, c.clone());
        }
    }
    for (m, c) in rhs.terms() {
        by_mono.entry(m.clone()).or_default().1 = c.clone();
    }
    by_mono.into_values().unzip()
}

/// Solves `sum_k x_k cols[k] = rhs` for scalars `x_k`.
pub fn solve_poly(cols: &[NCPoly], rhs: &NCPoly) -> Option<(Vec<QScalar>, Vec<Vec<QScalar>>)> {
    let (rows, b) = poly_equations(cols, rhs);
    solve(rows, b, cols.len())
}

/// Rank of a family of polynomials as vectors over `QScalar`.
pub fn poly_rank(polys: &[NCPoly]) -> usize {
    let mut index: BTreeMap<Mono, usize> = BTreeMap::new();
    let rows: Vec<SparseVec> = polys
        .iter()
        .map(|p| {
            p.terms()
                .iter()
                .map(|(m, c)| {
                    let n = index.len();
                    (*index.entry(m.clone()).or_insert(n), c.clone())
                })
                .collect()
        })
        .collect();
    rank(rows, index.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn row(entries: &[(usize, QScalar)]) -> SparseVec {
        entries.iter().cloned().collect()
    }

    #[test]
    fn solves_small_system() {
        let q = QScalar::q();
        // x + q y = 1, q x + y = 0
        let rows = alloc::vec![
            row(&[(0, QScalar::one()), (1, q.clone())]),
            row(&[(0, q.clone()), (1, QScalar::one())]),
        ];
        let (x, k) = solve(rows, alloc::vec![QScalar::one(), QScalar::zero()], 2).unwrap();
        assert!(k.is_empty());
        let det = &QScalar::one() - &(&q * &q);
        assert_eq!(x[0], QScalar::one().checked_div(&det).unwrap());
        assert_eq!(x[1], (-&q).checked_div(&det).unwrap());
    }

    #[test]
    fn detects_inconsistency() {
        let rows = alloc::vec![row(&[(0, QScalar::one())]), row(&[(0, QScalar::from_int(2))])];
        assert!(solve(rows, alloc::vec![QScalar::one(), QScalar::one()], 1).is_none());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]
        #[test]
        fn kernel_vectors_are_annihilated(
            entries in proptest::collection::vec(proptest::collection::vec((-2i64..=2, -2i64..=2), 4), 1..4)
        ) {
            let rows: Vec<SparseVec> = entries
                .iter()
                .map(|r| {
                    r.iter()
                        .enumerate()
                        .filter(|(_, (c, _))| *c != 0)
                        .map(|(j, &(c, k))| (j, QScalar::from_int(c) * QScalar::q_pow(k)))
                        .collect()
                })
                .collect();
            let red = rref(rows.clone(), 4);
            let ker = red.kernel();
            prop_assert_eq!(ker.len() + red.rank(), 4);
            for v in &ker {
                for r in &rows {
                    let s: QScalar = r.iter().map(|(&j, c)| c * &v[j]).sum();
                    prop_assert!(s.is_zero());
                }
            }
        }
    }
}
