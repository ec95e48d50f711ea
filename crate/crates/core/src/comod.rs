//! The Manin-plane comodules V_n, weight covectors and coinvariant
//! inner products.

use alloc::string::String;
use alloc::vec::Vec;

use crate::check::Check;
use crate::error::{Error, Result};
use crate::hopf::{projection_pi, HopfData};
use crate::linalg::{kernel, poly_equations, SparseVec};
use crate::ncalg::{split_mono, standard, AlgebraMap, NCPoly, Pres, Presentation};
use crate::parse::parse_expr;
use crate::scalars::{gauss_binomial, QRational, QScalar};

/// Order of the two Sweedler legs in the coinvariance identity
/// `<w|z> 1 = sum <w_(0)|z_(0)> (...)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GramOrder {
    /// `z_(1) w*_(1)`
    Printed,
    /// `w*_(1) z_(1)`
    Swapped,
}

impl GramOrder {
    pub fn as_str(self) -> &'static str {
        match self {
            GramOrder::Printed => "z(1) w*(1)",
            GramOrder::Swapped => "w*(1) z(1)",
        }
    }
}

/// The order in which the monomial Gram form is `1/binom(n,i)_{q^-2}`;
/// fixed by [`solve_coinvariant_gram`] and asserted by the tests.
pub const GRAM_ORDER: GramOrder = GramOrder::Swapped;

/// The comodule V_n: span of `e_i = x^i y^{n-i}` with
/// `ρ(e_j) = sum_i e_i ⊗ t_ij`.
#[derive(Clone, Debug)]
pub struct VnComodule {
    n: usize,
    manin: Pres,
    g: Pres,
    rho: AlgebraMap,
    t: Vec<Vec<NCPoly>>,
}

impl VnComodule {
    pub fn new(n: usize) -> Result<Self> {
        let manin = standard::manin();
        let g = standard::g();
        let vg = Presentation::tensor(&[&manin, &g]);
        let rho = AlgebraMap::new(&manin, &vg)
            .with("x", parse_expr("x ⊗ a + y ⊗ c", &vg)?)?
            .with("y", parse_expr("x ⊗ b + y ⊗ d", &vg)?)?;
        let mut v = VnComodule {
            n,
            manin,
            g: g.clone(),
            rho,
            t: Vec::new(),
        };
        let mut t = alloc::vec![alloc::vec![NCPoly::zero(&g); n + 1]; n + 1];
        for j in 0..=n {
            let comps = v.coaction(&v.basis(j))?;
            for (row, c) in t.iter_mut().zip(comps) {
                row[j] = c;
            }
        }
        v.t = t;
        Ok(v)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.n + 1
    }

    pub fn manin(&self) -> &Pres {
        &self.manin
    }

    pub fn rho_map(&self) -> &AlgebraMap {
        &self.rho
    }

    /// `e_i = x^i y^{n-i}`.
    pub fn basis(&self, i: usize) -> NCPoly {
        let x = NCPoly::gen_idx(&self.manin, standard::X, 1).unwrap();
        let y = NCPoly::gen_idx(&self.manin, standard::Y, 1).unwrap();
        x.pow(i as u32).mul(&y.pow((self.n - i) as u32)).unwrap()
    }

    /// Coordinates in the basis `e_i`; fails off V_n.
    pub fn coords(&self, v: &NCPoly) -> Result<Vec<QScalar>> {
        let mut out = alloc::vec![QScalar::zero(); self.dim()];
        for (m, c) in v.terms() {
            let (i, j) = (m.exp(standard::X), m.exp(standard::Y));
            if i < 0 || j < 0 || (i + j) as usize != self.n {
                return Err(Error::OutOfRange(alloc::format!("{v} is not in V_{}", self.n)));
            }
            out[i as usize] = c.clone();
        }
        Ok(out)
    }

    pub fn from_coords(&self, c: &[QScalar]) -> NCPoly {
        let mut v = NCPoly::zero(&self.manin);
        for (i, ci) in c.iter().enumerate() {
            v = v.add(&self.basis(i).scale(ci)).unwrap();
        }
        v
    }

    /// `ρ(v) = sum_i e_i ⊗ r_i`, returned as the `r_i`.
    pub fn coaction(&self, v: &NCPoly) -> Result<Vec<NCPoly>> {
        let full = self.rho.apply(v)?;
        let mut out = alloc::vec![NCPoly::zero(&self.g); self.dim()];
        for (m, c) in full.terms() {
            let parts = split_mono(full.pres(), m);
            let i = parts[0].exp(standard::X);
            if i < 0 || (i + parts[0].exp(standard::Y)) as usize != self.n {
                return Err(Error::OutOfRange(alloc::format!("{v} is not in V_{}", self.n)));
            }
            out[i as usize] = out[i as usize].add(&NCPoly::monomial(&self.g, c.clone(), parts[1].clone()))?;
        }
        Ok(out)
    }

    /// The raw coaction in `V ⊗ G`.
    pub fn coaction_tensor(&self, v: &NCPoly) -> Result<NCPoly> {
        self.rho.apply(v)
    }

    /// `t[i][j]`.
    pub fn matrix(&self) -> &[Vec<NCPoly>] {
        &self.t
    }

    /// Comodule axioms as matrix identities, plus homogeneity.
    pub fn verify_axioms(&self, h: &HopfData) -> Result<Vec<Check>> {
        let d = self.dim();
        let mut coassoc = None;
        let mut counit = None;
        let mut homog = None;
        for i in 0..d {
            for j in 0..d {
                let t = &self.t[i][j];
                let lhs = h.coproduct(t)?;
                let mut rhs = NCPoly::zero(h.tensor2());
                for k in 0..d {
                    rhs = rhs.add(&crate::ncalg::tensor_elems(&[&self.t[i][k], &self.t[k][j]]))?;
                }
                if coassoc.is_none() && lhs != rhs {
                    coassoc = Some(alloc::format!("Δ(t_{i}{j}) = {lhs} != {rhs}"));
                }
                let e = h.counit(t)?;
                if counit.is_none() && e != QScalar::from_int((i == j) as i64) {
                    counit = Some(alloc::format!("ε(t_{i}{j}) = {e}"));
                }
                // ad - q bc = 1 only preserves degree mod 2 in normal form
                let n = self.n as i64;
                if homog.is_none() && t.terms().keys().any(|m| m.degree() > n || (n - m.degree()) % 2 != 0) {
                    homog = Some(alloc::format!("t_{i}{j} = {t}"));
                }
            }
        }
        let n = self.n;
        Ok(alloc::vec![
            Check::from_witness(alloc::format!("comodule_coassociativity_n{n}"), "(ρ⊗id)ρ = (id⊗Δ)ρ", coassoc),
            Check::from_witness(alloc::format!("comodule_counit_n{n}"), "(id⊗ε)ρ = id", counit),
            Check::from_witness(alloc::format!("comodule_homogeneous_n{n}"), "coaction matrix of degree n (mod the determinant relation)", homog),
        ])
    }

    /// Basis of `{v : (id⊗π)ρ(v) = v ⊗ χ}`.
    pub fn weight_covectors(&self, chi: &NCPoly) -> Result<Vec<NCPoly>> {
        let pi = projection_pi();
        let b = pi.target().clone();
        let vb = Presentation::tensor(&[&self.manin, &b]);
        let mut cols = Vec::new();
        for j in 0..self.dim() {
            let mut col = NCPoly::zero(&vb);
            for i in 0..self.dim() {
                let p = pi.apply(&self.t[i][j])?;
                col = col.add(&crate::ncalg::tensor_elems(&[&self.basis(i), &p]))?;
            }
            col = col.sub(&crate::ncalg::tensor_elems(&[&self.basis(j), chi]))?;
            cols.push(col);
        }
        let (rows, _) = poly_equations(&cols, &NCPoly::zero(&vb));
        Ok(kernel(rows, self.dim()).iter().map(|k| self.from_coords(k)).collect())
    }

    /// Solves the coinvariance identity for a full Gram matrix in the
    /// given order. Returns the one-dimensional solution space's
    /// generator, normalized so `<y^n|y^n> = 1`, or `None`.
    pub fn solve_gram_matrix(&self, order: GramOrder) -> Result<Option<Vec<Vec<QScalar>>>> {
        let d = self.dim();
        let g = &self.g;
        let star: Vec<Vec<NCPoly>> = self
            .t
            .iter()
            .map(|row| row.iter().map(NCPoly::star).collect::<Result<Vec<_>>>())
            .collect::<Result<_>>()?;
        let unk = |i: usize, ip: usize| i * d + ip;
        let mut rows: Vec<SparseVec> = Vec::new();
        for k in 0..d {
            for l in 0..d {
                let mut cols = alloc::vec![NCPoly::zero(g); d * d];
                for i in 0..d {
                    for ip in 0..d {
                        // <e_i|e_ip> t_{ip l} t_{ik}*  or  t_{ik}* t_{ip l}
                        let p = match order {
                            GramOrder::Printed => self.t[ip][l].mul(&star[i][k])?,
                            GramOrder::Swapped => star[i][k].mul(&self.t[ip][l])?,
                        };
                        cols[unk(i, ip)] = p;
                    }
                }
                cols[unk(k, l)] = cols[unk(k, l)].sub(&NCPoly::one(g))?;
                rows.extend(poly_equations(&cols, &NCPoly::zero(g)).0);
            }
        }
        let ker = kernel(rows, d * d);
        if ker.len() != 1 {
            return Ok(None);
        }
        let v = &ker[0];
        let g0 = &v[unk(0, 0)];
        if g0.is_zero() {
            return Ok(None);
        }
        let inv = g0.inv()?;
        Ok(Some(
            (0..d)
                .map(|i| (0..d).map(|ip| &v[unk(i, ip)] * &inv).collect())
                .collect(),
        ))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct GramForm {
    pub n: usize,
    /// `g_i = <e_i|e_i>`, `e_i = x^i y^{n-i}`; `g_0 = <y^n|y^n> = 1`.
    pub diag: Vec<QScalar>,
    pub order: GramOrder,
}

impl GramForm {
    /// `<u|v>` for `u, v` given by coordinates; antilinear in `u`.
    pub fn inner(&self, u: &[QScalar], v: &[QScalar]) -> QScalar {
        u.iter()
            .zip(v)
            .zip(&self.diag)
            .map(|((a, b), g)| &(&a.conj() * b) * g)
            .sum()
    }
}

/// `1/binom(n,i)_{q^-2}` for `i = 0..=n`.
pub fn orthonormal_gram(n: usize) -> Vec<QScalar> {
    (0..=n)
        .map(|i| {
            gauss_binomial(n as i64, i as i64, &QScalar::q_pow(-2))
                .and_then(|b| b.inv())
                .expect("nonzero binomial")
        })
        .collect()
}

fn diagonal(m: &[Vec<QScalar>]) -> Option<Vec<QScalar>> {
    for (i, row) in m.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            if i != j && !v.is_zero() {
                return None;
            }
        }
    }
    Some(m.iter().enumerate().map(|(i, r)| r[i].clone()).collect())
}

/// Outcome of solving in one order.
#[derive(Clone, Debug, PartialEq)]
pub struct GramAttempt {
    pub order: GramOrder,
    pub diag: Option<Vec<QScalar>>,
}

/// Solves both orders. The returned form uses the order whose solution is
/// diagonal and equals `1/binom(n,i)_{q^-2}` if one does (ties go to
/// [`GRAM_ORDER`]), otherwise the first order with a diagonal solution.
pub fn solve_coinvariant_gram(v: &VnComodule) -> Result<(GramForm, Vec<GramAttempt>)> {
    let mut attempts = Vec::new();
    for order in [GramOrder::Printed, GramOrder::Swapped] {
        let m = v.solve_gram_matrix(order)?;
        attempts.push(GramAttempt {
            order,
            diag: m.as_deref().and_then(diagonal),
        });
    }
    let target = orthonormal_gram(v.n());
    let matching = |a: &&GramAttempt| a.diag.as_ref() == Some(&target);
    let pick = attempts
        .iter()
        .filter(matching)
        .find(|a| a.order == GRAM_ORDER)
        .or_else(|| attempts.iter().find(matching))
        .or_else(|| attempts.iter().find(|a| a.diag.is_some()))
        .ok_or_else(|| Error::NoSolution(alloc::format!("no diagonal coinvariant Gram for n = {}", v.n())))?;
    Ok((
        GramForm {
            n: v.n(),
            diag: pick.diag.clone().unwrap(),
            order: pick.order,
        },
        attempts,
    ))
}

/// `<F|v> = sum_i <e_i|v> f_i` for `F = sum_i e_i ⊗ f_i`.
pub fn pairing(f: &[NCPoly], v: &[QScalar], gram: &GramForm) -> Result<NCPoly> {
    let pres = f[0].pres().clone();
    let mut acc = NCPoly::zero(&pres);
    for (i, fi) in f.iter().enumerate() {
        let c = &gram.diag[i] * &v[i];
        acc = acc.add(&fi.scale(&c))?;
    }
    Ok(acc)
}

/// `α` if `a = α·Id`, otherwise the first offending entry.
pub fn schur_scalar(a: &[Vec<QScalar>]) -> Result<QScalar> {
    let alpha = a[0][0].clone();
    for (i, row) in a.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            let expect = if i == j { &alpha } else { &QScalar::zero() };
            if v != expect {
                return Err(Error::NotScalar {
                    row: i,
                    col: j,
                    value: alloc::format!("{v}"),
                });
            }
        }
    }
    Ok(alpha)
}

/// Basis of the scalar matrices `M` with `sum_k t_ik M_kj = sum_k M_ik t_kj`.
pub fn intertwiners(v: &VnComodule) -> Result<Vec<Vec<Vec<QScalar>>>> {
    let d = v.dim();
    let g = &v.g;
    let mut rows: Vec<SparseVec> = Vec::new();
    for i in 0..d {
        for j in 0..d {
            let mut cols = alloc::vec![NCPoly::zero(g); d * d];
            for k in 0..d {
                cols[k * d + j] = cols[k * d + j].add(&v.t[i][k])?;
                cols[i * d + k] = cols[i * d + k].sub(&v.t[k][j])?;
            }
            rows.extend(poly_equations(&cols, &NCPoly::zero(g)).0);
        }
    }
    Ok(kernel(rows, d * d)
        .into_iter()
        .map(|k| (0..d).map(|i| k[i * d..(i + 1) * d].to_vec()).collect())
        .collect())
}

/// Checks for the comodule and Gram suite over `ns`.
pub fn verify_gram(ns: &[usize], q0: &QRational) -> Result<Vec<Check>> {
    let h = HopfData::sl2()?;
    let mut checks = Vec::new();
    for &n in ns {
        let v = VnComodule::new(n)?;
        checks.extend(v.verify_axioms(&h)?);
        let (form, attempts) = solve_coinvariant_gram(&v)?;
        let desc = |a: &GramAttempt| -> String {
            match &a.diag {
                Some(d) => d.iter().map(|x| alloc::format!("{x}")).collect::<Vec<_>>().join(", "),
                None => "no diagonal solution".into(),
            }
        };
        for a in &attempts {
            let name = alloc::format!(
                "gram_order_{}_n{n}",
                if a.order == GramOrder::Printed { "printed" } else { "swapped" }
            );
            checks.push(
                Check::pass(name, alloc::format!("coinvariant inner product in order {}", a.order.as_str()))
                    .with_witness(desc(a)),
            );
        }
        let orth = form.diag == orthonormal_gram(n);
        checks.push(Check::from_witness(
            alloc::format!("gram_orthonormal_basis_n{n}"),
            "sqrt(binom(n,i)_{q^-2}) x^i y^{n-i} orthonormal",
            (!orth || form.order != GRAM_ORDER).then(|| desc(&attempts[1])),
        ));
        let positive = form.diag.iter().all(|g| {
            g.specialize(q0)
                .map(|x| x > QRational::from_integer(0.into()))
                .unwrap_or(false)
        });
        checks.push(Check::from_witness(
            alloc::format!("gram_positive_n{n}"),
            "Gram diagonal positive at q0",
            (!positive).then(|| desc(&attempts[1])),
        ));
        let chi = NCPoly::gen_idx(&standard::borel(), standard::LAMBDA, -(n as i64))?;
        let wc = v.weight_covectors(&chi)?;
        let ok = wc.len() == 1 && v.coords(&wc[0])?[1..].iter().all(QScalar::is_zero);
        checks.push(Check::from_witness(
            alloc::format!("weight_covector_n{n}"),
            "(id⊗π)ρ v = v ⊗ λ^-n exactly on span{y^n}",
            (!ok).then(|| alloc::format!("{wc:?}")),
        ));
        if n <= 3 {
            let ints = intertwiners(&v)?;
            let ok = ints.len() == 1 && schur_scalar(&ints[0]).is_ok();
            checks.push(Check::from_witness(
                alloc::format!("simplicity_n{n}"),
                "every comodule endomorphism of V_n is scalar",
                (!ok).then(|| alloc::format!("{} independent intertwiners", ints.len())),
            ));
        }
    }
    Ok(checks)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::check::all_ok;
    use alloc::format;

    #[test]
    fn coaction_examples() {
        let v1 = VnComodule::new(1).unwrap();
        let x = v1.basis(1);
        assert_eq!(format!("{}", v1.coaction_tensor(&x).unwrap()), "x ⊗ a + y ⊗ c");
        let t = v1.matrix();
        assert_eq!(format!("{} {} {} {}", t[1][1], t[0][1], t[1][0], t[0][0]), "a c b d");
        let v0 = VnComodule::new(0).unwrap();
        assert_eq!(format!("{}", v0.coaction_tensor(&v0.basis(0)).unwrap()), "1 ⊗ 1");
        // ρ(y^2): coefficient of x y is binom(2,1)_{q^-2} b d
        let v2 = VnComodule::new(2).unwrap();
        let r = v2.coaction(&v2.basis(0)).unwrap();
        let g = standard::g();
        assert_eq!(r[1], parse_expr("(1 + q^-2) b d", &g).unwrap());
        assert_eq!(r[2], parse_expr("b^2", &g).unwrap());
        assert_eq!(r[0], parse_expr("d^2", &g).unwrap());
    }

    #[test]
    fn weight_covectors_examples() {
        let b = standard::borel();
        let chi = |k: i64| NCPoly::gen_idx(&b, standard::LAMBDA, k).unwrap();
        let v1 = VnComodule::new(1).unwrap();
        let w = v1.weight_covectors(&chi(-1)).unwrap();
        assert_eq!(w.len(), 1);
        assert_eq!(v1.coords(&w[0]).unwrap()[1], QScalar::zero());
        let v3 = VnComodule::new(3).unwrap();
        assert_eq!(v3.weight_covectors(&chi(-3)).unwrap().len(), 1);
        let v2 = VnComodule::new(2).unwrap();
        assert!(v2.weight_covectors(&chi(-1)).unwrap().is_empty());
    }

    #[test]
    fn gram_examples() {
        let (g0, _) = solve_coinvariant_gram(&VnComodule::new(0).unwrap()).unwrap();
        assert_eq!(g0.diag, alloc::vec![QScalar::one()]);
        let (g1, attempts) = solve_coinvariant_gram(&VnComodule::new(1).unwrap()).unwrap();
        assert_eq!(g1.order, GramOrder::Swapped);
        assert_eq!(g1.diag, alloc::vec![QScalar::one(), QScalar::one()]);
        // printed order: g_1 = q^-2 g_0
        assert_eq!(attempts[0].diag, Some(alloc::vec![QScalar::one(), QScalar::q_pow(-2)]));
        for n in 2..=4 {
            let (g, _) = solve_coinvariant_gram(&VnComodule::new(n).unwrap()).unwrap();
            assert_eq!(g.order, GRAM_ORDER);
            assert_eq!(g.diag, orthonormal_gram(n), "n={n}");
        }
    }

    #[test]
    fn pairing_examples() {
        let gd = standard::g_d();
        let (g1, _) = solve_coinvariant_gram(&VnComodule::new(1).unwrap()).unwrap();
        let one = QScalar::one();
        let zero = QScalar::zero();
        let d = parse_expr("d", &gd).unwrap();
        let u = parse_expr("b d^-1", &gd).unwrap();
        // <y ⊗ d | y> = d
        let f = alloc::vec![d.clone(), NCPoly::zero(&gd)];
        assert_eq!(pairing(&f, &[one.clone(), zero.clone()], &g1).unwrap(), d);
        // <x ⊗ u | y> = 0
        let f = alloc::vec![NCPoly::zero(&gd), u.clone()];
        assert!(pairing(&f, &[one.clone(), zero.clone()], &g1).unwrap().is_zero());
        // <x ⊗ u + y ⊗ 1 | x> = g_1 u
        let f = alloc::vec![NCPoly::one(&gd), u.clone()];
        assert_eq!(pairing(&f, &[zero, one], &g1).unwrap(), u.scale(&g1.diag[1]));
    }

    #[test]
    fn schur_examples() {
        let q = QScalar::q();
        let (o, z) = (QScalar::one(), QScalar::zero());
        assert!(schur_scalar(&[alloc::vec![o.clone(), z.clone()], alloc::vec![z.clone(), o.clone()]]).unwrap().is_one());
        assert_eq!(schur_scalar(&[alloc::vec![q.clone(), z.clone()], alloc::vec![z.clone(), q.clone()]]).unwrap(), q);
        let err = schur_scalar(&[alloc::vec![o, z.clone()], alloc::vec![z, q]]).unwrap_err();
        assert!(matches!(err, Error::NotScalar { row: 1, col: 1, .. }));
    }

    #[test]
    fn suite_passes() {
        let checks = verify_gram(&[0, 1, 2, 3], &QRational::new(1.into(), 2.into())).unwrap();
        assert!(all_ok(&checks), "{:?}", crate::check::first_failure(&checks));
    }
}
