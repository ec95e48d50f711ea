//! Sections of the line bundle L_χ over the two-chart cover, the
//! cotensor slices of G, the κ transforms and the gluing isomorphism.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::charts::{borel_coaction_g, ChartKind, TrivializationChart};
use crate::check::Check;
use crate::comod::VnComodule;
use crate::error::{Error, Result};
use crate::hopf::{projection_pi, HopfData};
use crate::linalg::{kernel, poly_equations, poly_rank, solve_poly, SparseVec};
use crate::ncalg::{
    basis_monomials, random_word_deg, split_mono, standard, tensor_elems, AlgebraMap, Mono, NCPoly, Pres,
};
use crate::scalars::{QPoly, QScalar};

/// `χ = λ⁻ⁿ` in B.
pub fn chi(n: usize) -> NCPoly {
    NCPoly::gen_idx(&standard::borel(), standard::LAMBDA, -(n as i64)).expect("λ is invertible")
}

/// A global section: `f_b ∈ C[u′]`, `f_d ∈ C[u]`.
#[derive(Clone, Debug, PartialEq)]
pub struct Section {
    pub f_b: QPoly,
    pub f_d: QPoly,
}

impl Section {
    /// `(f_b, f_d)` printed in the chart coordinates.
    pub fn display(&self) -> String {
        format!("({}, {})", self.f_b.display_with("u'"), self.f_d.display_with("u"))
    }
}

/// Both charts with their inclusions into G_bd.
#[derive(Clone, Debug)]
pub struct Cover {
    pub b: TrivializationChart,
    pub d: TrivializationChart,
    pub double: Pres,
    pub jb: AlgebraMap,
    pub jd: AlgebraMap,
}

impl Cover {
    pub fn new() -> Result<Self> {
        let b = TrivializationChart::new(ChartKind::B)?;
        let d = TrivializationChart::new(ChartKind::D)?;
        let double = standard::g_bd();
        let jb = AlgebraMap::inclusion(b.algebra(), &double)?;
        let jd = AlgebraMap::inclusion(d.algebra(), &double)?;
        Ok(Cover { b, d, double, jb, jd })
    }

    pub fn chart(&self, kind: ChartKind) -> &TrivializationChart {
        match kind {
            ChartKind::B => &self.b,
            ChartKind::D => &self.d,
        }
    }

    /// Gluing defect `j_b(f_b γ_b(χ)) − j_d(f_d γ_d(χ))`, and the same
    /// with the products formed after mapping into G_bd.
    pub fn glue_defects(&self, f_b: &NCPoly, f_d: &NCPoly, n: usize) -> Result<[NCPoly; 2]> {
        let gb = self.b.gamma_weight(-(n as i64))?;
        let gd = self.d.gamma_weight(-(n as i64))?;
        let first = self.jb.apply(&f_b.mul(&gb)?)?.sub(&self.jd.apply(&f_d.mul(&gd)?)?)?;
        let second = self
            .jb
            .apply(f_b)?
            .mul(&self.jb.apply(&gb)?)?
            .sub(&self.jd.apply(f_d)?.mul(&self.jd.apply(&gd)?)?)?;
        Ok([first, second])
    }

    pub fn glues(&self, f_b: &NCPoly, f_d: &NCPoly, n: usize) -> Result<bool> {
        Ok(self.glue_defects(f_b, f_d, n)?.iter().all(NCPoly::is_zero))
    }
}

/// Basis of the sections with `deg f_b, deg f_d ≤ degree`.
pub fn sections_space(cover: &Cover, n: usize, degree: usize) -> Result<Vec<Section>> {
    let gb = cover.b.gamma_weight(-(n as i64))?;
    let gd = cover.d.gamma_weight(-(n as i64))?;
    let mut cols = Vec::new();
    let mut pw = NCPoly::one(cover.b.algebra());
    for _ in 0..=degree {
        cols.push(cover.jb.apply(&pw.mul(&gb)?)?);
        pw = pw.mul(cover.b.coinvariant_generator())?;
    }
    let mut pw = NCPoly::one(cover.d.algebra());
    for _ in 0..=degree {
        cols.push(cover.jd.apply(&pw.mul(&gd)?)?.neg());
        pw = pw.mul(cover.d.coinvariant_generator())?;
    }
    let (rows, _) = poly_equations(&cols, &NCPoly::zero(&cover.double));
    let k = degree + 1;
    Ok(kernel(rows, 2 * k)
        .into_iter()
        .map(|v| Section {
            f_b: QPoly::from_coeffs(v[..k].to_vec()),
            f_d: QPoly::from_coeffs(v[k..].to_vec()),
        })
        .collect())
}

/// `{g ∈ G : ρ_B(g) = g ⊗ λ⁻ⁿ}` within the degree cutoff.
#[derive(Clone, Debug)]
pub struct CotensorSlice {
    pub n: usize,
    pub degree: i64,
    pub basis: Vec<NCPoly>,
}

fn combine(pres: &Pres, monos: &[Mono], v: &[QScalar]) -> NCPoly {
    let mut terms = BTreeMap::new();
    for (m, c) in monos.iter().zip(v) {
        if !c.is_zero() {
            terms.insert(m.clone(), c.clone());
        }
    }
    NCPoly::from_terms(pres, terms)
}

pub fn cotensor_slice(n: usize, degree: i64) -> Result<CotensorSlice> {
    let g = standard::g();
    let rho = borel_coaction_g()?;
    let ch = chi(n);
    let monos = basis_monomials(&g, degree);
    let cols: Vec<NCPoly> = monos
        .iter()
        .map(|m| {
            let x = NCPoly::monomial(&g, QScalar::one(), m.clone());
            rho.apply(&x)?.sub(&tensor_elems(&[&x, &ch]))
        })
        .collect::<Result<_>>()?;
    let (rows, _) = poly_equations(&cols, &NCPoly::zero(rho.target()));
    let basis = kernel(rows, monos.len()).iter().map(|v| combine(&g, &monos, v)).collect();
    Ok(CotensorSlice { n, degree, basis })
}

/// Converts a comodule matrix between sides: a right coaction
/// `e_j ↦ Σ_i e_i ⊗ t_ij` becomes the left coaction
/// `e_j ↦ Σ_i S(t_ij) ⊗ e_i`, and a left coaction `e_j ↦ Σ_i l_ij ⊗ e_i`
/// becomes the right coaction `e_j ↦ Σ_i e_i ⊗ S(l_ij)`.
pub fn flip_side(h: &HopfData, m: &[Vec<NCPoly>]) -> Result<Vec<Vec<NCPoly>>> {
    m.iter()
        .map(|row| row.iter().map(|x| h.antipode(x)).collect())
        .collect()
}

/// A finite-dimensional left B-comodule `m_j ↦ Σ_i l_ij ⊗ m_i`.
#[derive(Clone, Debug)]
pub struct LeftBorelComodule {
    pub name: String,
    pub l: Vec<Vec<NCPoly>>,
}

impl LeftBorelComodule {
    /// `C_χ`: `1 ↦ χ ⊗ 1`.
    pub fn character(n: usize) -> Self {
        LeftBorelComodule {
            name: format!("C_chi(n={n})"),
            l: alloc::vec![alloc::vec![chi(n)]],
        }
    }

    /// `V_n` restricted along π and moved to the left side.
    pub fn from_vn(v: &VnComodule, bh: &HopfData) -> Result<Self> {
        let pi = projection_pi();
        let pt: Vec<Vec<NCPoly>> = v
            .matrix()
            .iter()
            .map(|row| row.iter().map(|x| pi.apply(x)).collect())
            .collect::<Result<_>>()?;
        Ok(LeftBorelComodule {
            name: format!("V_{}", v.n()),
            l: flip_side(bh, &pt)?,
        })
    }

    pub fn dim(&self) -> usize {
        self.l.len()
    }

    /// `Δ(l_ij) = Σ_k l_kj ⊗ l_ik` and `ε(l_ij) = δ_ij`.
    pub fn axiom_failure(&self, bh: &HopfData) -> Result<Option<String>> {
        let d = self.dim();
        for i in 0..d {
            for j in 0..d {
                let lhs = bh.coproduct(&self.l[i][j])?;
                let mut rhs = NCPoly::zero(bh.tensor2());
                for k in 0..d {
                    rhs = rhs.add(&tensor_elems(&[&self.l[k][j], &self.l[i][k]]))?;
                }
                if lhs != rhs {
                    return Ok(Some(format!("Δ(l_{i}{j}) = {lhs} != {rhs}")));
                }
                if bh.counit(&self.l[i][j])? != QScalar::from_int((i == j) as i64) {
                    return Ok(Some(format!("ε(l_{i}{j}) != δ")));
                }
            }
        }
        Ok(None)
    }
}

/// `κ(Σ_j f_j ⊗ m_j) = Σ_{i,j} f_j γ(l_ij) ⊗ m_i`.
pub fn kappa(chart: &TrivializationChart, m: &LeftBorelComodule, f: &[NCPoly]) -> Result<Vec<NCPoly>> {
    apply_matrix(chart, &m.l, f)
}

/// `κ̄` uses the convolution inverse `γ ∘ S`.
pub fn kappa_bar(
    chart: &TrivializationChart,
    m: &LeftBorelComodule,
    bh: &HopfData,
    f: &[NCPoly],
) -> Result<Vec<NCPoly>> {
    apply_matrix(chart, &flip_side(bh, &m.l)?, f)
}

fn apply_matrix(chart: &TrivializationChart, l: &[Vec<NCPoly>], f: &[NCPoly]) -> Result<Vec<NCPoly>> {
    let d = l.len();
    let mut out = alloc::vec![NCPoly::zero(chart.algebra()); d];
    for i in 0..d {
        for j in 0..d {
            if f[j].is_zero() || l[i][j].is_zero() {
                continue;
            }
            out[i] = out[i].add(&f[j].mul(&chart.gamma().apply(&l[i][j])?)?)?;
        }
    }
    Ok(out)
}

/// `ρ_E(X_k) = Σ_i X_i ⊗ l_ki` for every `k`.
pub fn in_cotensor(chart: &TrivializationChart, m: &LeftBorelComodule, x: &[NCPoly]) -> Result<bool> {
    for k in 0..m.dim() {
        let lhs = chart.coaction().apply(&x[k])?;
        let mut rhs = NCPoly::zero(chart.coaction_target());
        for (i, xi) in x.iter().enumerate() {
            rhs = rhs.add(&tensor_elems(&[xi, &m.l[k][i]]))?;
        }
        if lhs != rhs {
            return Ok(false);
        }
    }
    Ok(true)
}

fn is_coinvariant(chart: &TrivializationChart, x: &NCPoly) -> Result<bool> {
    let one = NCPoly::one(&standard::borel());
    Ok(chart.coaction().apply(x)? == tensor_elems(&[x, &one]))
}

fn random_chart_element(chart: &TrivializationChart, rng: &mut ChaCha8Rng) -> NCPoly {
    let p = chart.algebra();
    let mut acc = NCPoly::zero(p);
    for _ in 0..rng.gen_range(1..=3) {
        let w = random_word_deg(p, 3, rng);
        let c = QScalar::from_int(rng.gen_range(-3..=3)) * QScalar::q_pow(rng.gen_range(-2..=2));
        acc = acc.add(&NCPoly::from_word(p, c, &w).expect("random word")).expect("same algebra");
    }
    acc
}

fn random_coinvariant(chart: &TrivializationChart, rng: &mut ChaCha8Rng) -> NCPoly {
    let coeffs: Vec<QScalar> = (0..rng.gen_range(1..=4))
        .map(|_| QScalar::from_int(rng.gen_range(-3..=3)) * QScalar::q_pow(rng.gen_range(-2..=2)))
        .collect();
    chart.poly_in_generator(&QPoly::from_coeffs(coeffs)).expect("polynomial in u")
}

/// κ∘κ̄ = κ̄∘κ = id on `samples` random inputs for `C_χ` and `V_n`, and the
/// image characterization on spanning sets.
pub fn verify_kappa(cover: &Cover, ns: &[usize], samples: usize, seed: u64) -> Result<Vec<Check>> {
    let bh = HopfData::borel()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut checks = Vec::new();
    let mut axioms = None;
    let mut inverse = None;
    let mut image = None;
    let mut image_bar = None;
    let mut count = 0usize;
    for &n in ns {
        let v = VnComodule::new(n)?;
        let mods = [LeftBorelComodule::character(n), LeftBorelComodule::from_vn(&v, &bh)?];
        for m in &mods {
            if axioms.is_none() {
                axioms = m.axiom_failure(&bh)?.map(|w| format!("{}: {w}", m.name));
            }
            for kind in [ChartKind::D, ChartKind::B] {
                let ch = cover.chart(kind);
                for _ in 0..samples {
                    let f: Vec<NCPoly> = (0..m.dim())
                        .map(|_| {
                            if m.dim() == 1 {
                                random_coinvariant(ch, &mut rng)
                            } else {
                                random_chart_element(ch, &mut rng)
                            }
                        })
                        .collect();
                    count += 1;
                    let kb = kappa_bar(ch, m, &bh, &kappa(ch, m, &f)?)?;
                    let bk = kappa(ch, m, &kappa_bar(ch, m, &bh, &f)?)?;
                    if inverse.is_none() && (kb != f || bk != f) {
                        inverse = Some(format!("{} {}: F = {:?}", m.name, ch.name(), f));
                    }
                }
                // κ(coinvariants ⊗ M) lands in the cotensor
                for p in 0..=2 {
                    let u = ch.coinvariant_generator().pow(p);
                    for j in 0..m.dim() {
                        let mut f = alloc::vec![NCPoly::zero(ch.algebra()); m.dim()];
                        f[j] = u.clone();
                        let x = kappa(ch, m, &f)?;
                        if image.is_none() && !in_cotensor(ch, m, &x)? {
                            image = Some(format!("{} {}: κ(u^{p} ⊗ m_{j}) not in the cotensor", m.name, ch.name()));
                        }
                    }
                }
            }
        }
        // κ̄ maps the cotensor of C_χ into coinvariants
        let cm = LeftBorelComodule::character(n);
        for kind in [ChartKind::D, ChartKind::B] {
            let ch = cover.chart(kind);
            for x in chart_cotensor(ch, n, (n + 2) as i64)? {
                let y = kappa_bar(ch, &cm, &bh, core::slice::from_ref(&x))?;
                if image_bar.is_none() && !is_coinvariant(ch, &y[0])? {
                    image_bar = Some(format!("{}: κ̄({x}) = {} is not coinvariant", ch.name(), y[0]));
                }
            }
        }
    }
    checks.push(Check::from_witness(
        "kappa.left_comodules",
        "C_χ and V_n are left B-comodules after the side conversion",
        axioms,
    ));
    let anchor = format!("κ∘κ̄ = κ̄∘κ = id on {count} random inputs");
    checks.push(Check::from_witness("kappa.inverse", anchor, inverse));
    checks.push(Check::from_witness(
        "kappa.image",
        "κ maps coinvariants ⊗ M into the cotensor product",
        image,
    ));
    checks.push(Check::from_witness(
        "kappa_bar.image",
        "κ̄ maps the cotensor product with C_χ into coinvariants",
        image_bar,
    ));
    Ok(checks)
}

/// `{e ∈ chart : ρ(e) = e ⊗ χ}` on normal monomials up to `degree`.
pub fn chart_cotensor(chart: &TrivializationChart, n: usize, degree: i64) -> Result<Vec<NCPoly>> {
    let ch = chi(n);
    let monos = basis_monomials(chart.algebra(), degree);
    let cols: Vec<NCPoly> = monos
        .iter()
        .map(|m| {
            let x = NCPoly::monomial(chart.algebra(), QScalar::one(), m.clone());
            chart.coaction().apply(&x)?.sub(&tensor_elems(&[&x, &ch]))
        })
        .collect::<Result<_>>()?;
    let (rows, _) = poly_equations(&cols, &NCPoly::zero(chart.coaction_target()));
    Ok(kernel(rows, monos.len())
        .iter()
        .map(|v| combine(chart.algebra(), &monos, v))
        .collect())
}

/// The left coaction `Δ(s_j) = Σ_i c_ij ⊗ s_i` of G on a slice.
pub fn slice_left_coaction(h: &HopfData, slice: &CotensorSlice) -> Result<Vec<Vec<NCPoly>>> {
    let g = h.algebra().clone();
    let d = slice.basis.len();
    let mut c = alloc::vec![alloc::vec![NCPoly::zero(&g); d]; d];
    for (j, s) in slice.basis.iter().enumerate() {
        let dl = h.coproduct(s)?;
        let mut by_first: BTreeMap<Mono, NCPoly> = BTreeMap::new();
        for (m, coef) in dl.terms() {
            let parts = split_mono(dl.pres(), m);
            let e = by_first.entry(parts[0].clone()).or_insert_with(|| NCPoly::zero(&g));
            *e = e.add(&NCPoly::monomial(&g, coef.clone(), parts[1].clone()))?;
        }
        for (m1, p) in by_first {
            let (x, _) = solve_poly(&slice.basis, &p)
                .ok_or_else(|| Error::NotCoinvariant(format!("Δ({s}) leaves the slice")))?;
            let first = NCPoly::monomial(&g, QScalar::one(), m1);
            for (i, xi) in x.iter().enumerate() {
                if !xi.is_zero() {
                    c[i][j] = c[i][j].add(&first.scale(xi))?;
                }
            }
        }
    }
    Ok(c)
}

/// Basis of scalar matrices `M` (rows: V_n basis, columns: slice basis)
/// with `t M = M r`, `r` the slice's right coaction matrix.
pub fn slice_intertwiners(v: &VnComodule, r: &[Vec<NCPoly>]) -> Result<Vec<Vec<Vec<QScalar>>>> {
    let d = v.dim();
    let k = r.len();
    let g = standard::g();
    let t = v.matrix();
    let mut rows: Vec<SparseVec> = Vec::new();
    for l in 0..d {
        for j in 0..k {
            let mut cols = alloc::vec![NCPoly::zero(&g); d * k];
            for i in 0..d {
                cols[i * k + j] = cols[i * k + j].add(&t[l][i])?;
            }
            for kk in 0..k {
                cols[l * k + kk] = cols[l * k + kk].sub(&r[kk][j])?;
            }
            rows.extend(poly_equations(&cols, &NCPoly::zero(&g)).0);
        }
    }
    Ok(kernel(rows, d * k)
        .into_iter()
        .map(|x| (0..d).map(|i| x[i * k..(i + 1) * k].to_vec()).collect())
        .collect())
}

fn det_nonzero(m: &[Vec<QScalar>]) -> bool {
    let n = m.len();
    if m.iter().any(|r| r.len() != n) {
        return false;
    }
    let rows: Vec<SparseVec> = m
        .iter()
        .map(|r| r.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(j, c)| (j, c.clone())).collect())
        .collect();
    crate::linalg::rank(rows, n) == n
}

/// Result of the gluing isomorphism for one `n`.
#[derive(Clone, Debug)]
pub struct GlueIso {
    pub n: usize,
    pub slice: CotensorSlice,
    pub sections: Vec<Section>,
    pub images: Vec<Section>,
    pub intertwiner: Option<Vec<Vec<QScalar>>>,
}

pub fn glue_iso(cover: &Cover, h: &HopfData, n: usize, degree: usize) -> Result<(GlueIso, Vec<Check>)> {
    let slice = cotensor_slice(n, degree as i64)?;
    let sections = sections_space(cover, n, degree)?;
    let mut checks = Vec::new();
    let g = standard::g();
    let ib = AlgebraMap::inclusion(&g, cover.b.algebra())?;
    let id = AlgebraMap::inclusion(&g, cover.d.algebra())?;
    let gbi = cover.b.gamma_weight(n as i64)?;
    let gdi = cover.d.gamma_weight(n as i64)?;
    let mut images = Vec::new();
    let mut w_form = None;
    let mut w_glue = None;
    for s in &slice.basis {
        let fb = ib.apply(s)?.mul(&gbi)?;
        let fd = id.apply(s)?.mul(&gdi)?;
        let pb = cover.b.as_poly_in_generator(&fb, degree)?;
        let pd = cover.d.as_poly_in_generator(&fd, degree)?;
        match (pb, pd) {
            (Some(pb), Some(pd)) => {
                if w_glue.is_none() && !cover.glues(&fb, &fd, n)? {
                    w_glue = Some(format!("image of {s} does not glue"));
                }
                images.push(Section { f_b: pb, f_d: pd });
            }
            _ => {
                if w_form.is_none() {
                    w_form = Some(format!("{s} ↦ ({fb}, {fd}) is not polynomial in u′, u"));
                }
            }
        }
    }
    checks.push(Check::from_witness(
        format!("glue.images_in_coordinates.n{n}"),
        "g ↦ (ι_b(g)γ_b(χ)⁻¹, ι_d(g)γ_d(χ)⁻¹) lands in C[u′] × C[u]",
        w_form,
    ));
    checks.push(Check::from_witness(
        format!("glue.images_glue.n{n}"),
        "images of cotensor elements satisfy the gluing condition",
        w_glue,
    ));
    // bijective: injective images spanning a space of the section dimension
    let flat: Vec<NCPoly> = images
        .iter()
        .map(|s| {
            let b = cover.b.poly_in_generator(&s.f_b)?;
            let d = cover.d.poly_in_generator(&s.f_d)?;
            Ok(tensor_elems(&[&b, &d]))
        })
        .collect::<Result<_>>()?;
    let r = poly_rank(&flat);
    let bij = r == slice.basis.len() && r == sections.len() && images.len() == slice.basis.len();
    checks.push(if bij {
        Check::pass(format!("glue.bijective.n{n}"), "the cotensor slice maps bijectively onto the sections")
    } else {
        Check::fail(
            format!("glue.bijective.n{n}"),
            "the cotensor slice maps bijectively onto the sections",
            format!("slice {}, sections {}, image rank {r}", slice.basis.len(), sections.len()),
        )
    });

    // G-comodule structure: intertwiner with V_n
    let v = VnComodule::new(n)?;
    let c = slice_left_coaction(h, &slice)?;
    let r = flip_side(h, &c)?;
    let ints = slice_intertwiners(&v, &r)?;
    let intertwiner = if ints.len() == 1 && det_nonzero(&ints[0]) {
        Some(normalize_intertwiner(&ints[0]))
    } else {
        None
    };
    checks.push(match &intertwiner {
        Some(_) => Check::pass(
            format!("glue.intertwiner.n{n}"),
            "the right G-coaction on the slice is isomorphic to V_n via a unique invertible intertwiner",
        ),
        None => Check::fail(
            format!("glue.intertwiner.n{n}"),
            "the right G-coaction on the slice is isomorphic to V_n via a unique invertible intertwiner",
            format!("{} intertwiners found", ints.len()),
        ),
    });
    Ok((
        GlueIso {
            n,
            slice,
            sections,
            images,
            intertwiner,
        },
        checks,
    ))
}

/// Scales the intertwiner so its first nonzero entry is 1.
fn normalize_intertwiner(m: &[Vec<QScalar>]) -> Vec<Vec<QScalar>> {
    let pivot = m.iter().flatten().find(|c| !c.is_zero()).cloned().unwrap_or_else(QScalar::one);
    let inv = pivot.inv().expect("nonzero");
    m.iter().map(|r| r.iter().map(|c| c * &inv).collect()).collect()
}

/// Dimension, stability, κ and gluing checks for `ns`.
pub fn verify_bundle(ns: &[usize], max_degree: usize, samples: usize, seed: u64) -> Result<Vec<Check>> {
    let cover = Cover::new()?;
    let h = HopfData::sl2()?;
    let mut checks = Vec::new();
    for &n in ns {
        let top = max_degree.max(n + 1);
        let mut dims = Vec::new();
        for deg in (n + 1)..=top {
            let s = sections_space(&cover, n, deg)?.len();
            let c = cotensor_slice(n, deg as i64)?.basis.len();
            dims.push((deg, s, c));
        }
        let bad = dims.iter().find(|&&(_, s, c)| s != n + 1 || c != n + 1);
        checks.push(Check::from_witness(
            format!("bundle.dimensions.n{n}"),
            "dim sections = dim cotensor slice = n + 1 at every cutoff",
            bad.map(|(d, s, c)| format!("degree {d}: sections {s}, slice {c}")),
        ));
        let (_, cs) = glue_iso(&cover, &h, n, (n + 2).max(top))?;
        checks.extend(cs);
    }
    checks.extend(verify_kappa(&cover, ns, samples, seed)?);
    Ok(checks)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::check::all_ok;
    use crate::parse::parse_expr;
    use alloc::string::ToString;

    #[test]
    fn section_dimensions() {
        let cover = Cover::new().unwrap();
        assert_eq!(sections_space(&cover, 0, 2).unwrap().len(), 1);
        assert_eq!(sections_space(&cover, 1, 3).unwrap().len(), 2);
        assert_eq!(sections_space(&cover, 3, 5).unwrap().len(), 4);
    }

    #[test]
    fn cotensor_examples() {
        let g = standard::g();
        let s1 = cotensor_slice(1, 1).unwrap();
        assert_eq!(s1.basis.len(), 2);
        let span = [parse_expr("b", &g).unwrap(), parse_expr("d", &g).unwrap()];
        for x in &s1.basis {
            assert!(solve_poly(&span, x).is_some());
        }
        let s2 = cotensor_slice(2, 2).unwrap();
        let span2 = ["b^2", "b d", "d^2"].map(|e| parse_expr(e, &g).unwrap());
        assert_eq!(s2.basis.len(), 3);
        for x in &s2.basis {
            assert!(solve_poly(&span2, x).is_some());
        }
        assert_eq!(cotensor_slice(1, 3).unwrap().basis.len(), 2);
    }

    #[test]
    fn kappa_on_character() {
        let cover = Cover::new().unwrap();
        let bh = HopfData::borel().unwrap();
        let ch = &cover.d;
        let m = LeftBorelComodule::character(2);
        let u = ch.coinvariant_generator().clone();
        let k = kappa(ch, &m, core::slice::from_ref(&u)).unwrap();
        assert_eq!(k[0], u.mul(&ch.gamma_weight(-2).unwrap()).unwrap());
        assert_eq!(kappa_bar(ch, &m, &bh, &k).unwrap()[0], u);
        let triv = LeftBorelComodule::character(0);
        assert_eq!(kappa(ch, &triv, core::slice::from_ref(&u)).unwrap()[0], u);
    }

    #[test]
    fn n1_intertwiner() {
        let cover = Cover::new().unwrap();
        let h = HopfData::sl2().unwrap();
        let (iso, checks) = glue_iso(&cover, &h, 1, 3).unwrap();
        assert!(all_ok(&checks), "{:?}", checks);
        // slice basis is {b, d} up to order and scale; check the images
        let v = VnComodule::new(1).unwrap();
        let m = iso.intertwiner.unwrap();
        let g = standard::g();
        let b = parse_expr("b", &g).unwrap();
        let d = parse_expr("d", &g).unwrap();
        let coords = |x: &NCPoly| solve_poly(&iso.slice.basis, x).unwrap().0;
        let image = |c: Vec<QScalar>| {
            let mut out = alloc::vec![QScalar::zero(); 2];
            for (i, o) in out.iter_mut().enumerate() {
                *o = (0..2).map(|j| &m[i][j] * &c[j]).sum();
            }
            v.from_coords(&out)
        };
        let fb = image(coords(&b));
        let fd = image(coords(&d));
        // b ↦ s·y and d ↦ −q s·x
        let y = parse_expr("y", v.manin()).unwrap();
        let s = fb.coeff(y.terms().keys().next().unwrap());
        assert_eq!(fb, y.scale(&s));
        assert_eq!(fd, parse_expr("-q x", v.manin()).unwrap().scale(&s));
    }

    #[test]
    fn bundle_suite_small() {
        let checks = verify_bundle(&[0, 1, 2], 4, 5, 11).unwrap();
        assert!(all_ok(&checks), "{:?}", crate::check::first_failure(&checks));
    }

    #[test]
    fn section_display() {
        let s = Section {
            f_b: QPoly::from_coeffs(alloc::vec![QScalar::zero(), QScalar::one()]),
            f_d: QPoly::one(),
        };
        assert_eq!(s.display(), "(u', 1)");
        let _ = s.display().to_string();
    }
}
