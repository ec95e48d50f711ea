//! The two Ore-localization charts G_b and G_d of G: extended Borel
//! coactions, localized coinvariants, Gauss decomposition, the
//! trivializations γ_b, γ_d and the cover equalizer.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::check::Check;
use crate::error::{Error, Result};
use crate::hopf::{projection_pi, HopfData};
use crate::linalg::{kernel, poly_equations, solve, SparseVec};
use crate::ncalg::{
    basis_monomials, random_word_deg, standard, tensor_elems, AlgebraMap, Mono, NCPoly, Pres, Presentation,
};
use crate::parse::parse_expr;
use crate::scalars::{QPoly, QScalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ChartKind {
    /// b inverted.
    B,
    /// d inverted.
    D,
}

impl ChartKind {
    pub fn name(self) -> &'static str {
        match self {
            ChartKind::B => "b-chart",
            ChartKind::D => "d-chart",
        }
    }

    pub fn algebra(self) -> Pres {
        match self {
            ChartKind::B => standard::g_b(),
            ChartKind::D => standard::g_d(),
        }
    }

    /// Row permutation used in `T = wUA`.
    pub fn permutation(self) -> [usize; 2] {
        match self {
            ChartKind::B => [1, 0],
            ChartKind::D => [0, 1],
        }
    }
}

/// `T = w U A` with `U = [[1, u12], [0, 1]]`, `A = [[a11, 0], [a21, a22]]`.
#[derive(Clone, Debug)]
pub struct Gauss {
    pub w: [usize; 2],
    pub u12: NCPoly,
    pub a11: NCPoly,
    pub a21: NCPoly,
    pub a22: NCPoly,
}

impl Gauss {
    /// Entries of `wUA`, row major.
    pub fn product(&self) -> Result<[[NCPoly; 2]; 2]> {
        let ua = [
            [self.a11.add(&self.u12.mul(&self.a21)?)?, self.u12.mul(&self.a22)?],
            [self.a21.clone(), self.a22.clone()],
        ];
        let mut out = [[ua[0][0].clone(), ua[0][1].clone()], [ua[1][0].clone(), ua[1][1].clone()]];
        for (i, &r) in self.w.iter().enumerate() {
            out[r] = ua[i].clone();
        }
        Ok(out)
    }
}

/// Solution of the γ constraint system.
#[derive(Clone, Debug)]
pub struct GammaSolution {
    pub lambda: NCPoly,
    pub lambda_inv: NCPoly,
    pub xi: NCPoly,
    /// Dimension of the ansatz solutions of `ρ(γ(λ)) = γ(λ)⊗λ`.
    pub lambda_kernel_dim: usize,
    /// No free parameters remain once `γ(λ) = A11` is fixed.
    pub unique: bool,
}

#[derive(Clone, Debug)]
pub struct TrivializationChart {
    kind: ChartKind,
    algebra: Pres,
    target: Pres,
    iota: AlgebraMap,
    coaction: AlgebraMap,
    gauss: Gauss,
    gamma_solution: GammaSolution,
    gamma: AlgebraMap,
    coinvariant: NCPoly,
}

fn expr(s: &str, p: &Pres) -> NCPoly {
    parse_expr(s, p).expect("built-in expression")
}

/// The Borel coaction `(id⊗π)Δ` on G.
pub fn borel_coaction_g() -> Result<AlgebraMap> {
    let h = HopfData::sl2()?;
    let pi = projection_pi();
    let id_pi = AlgebraMap::tensor(&[&AlgebraMap::identity(h.algebra()), &pi]);
    id_pi.compose(h.coproduct_map())
}

fn extend_coaction(algebra: &Pres) -> Result<AlgebraMap> {
    let b = standard::borel();
    let t = Presentation::tensor(&[algebra, &b]);
    let mut f = AlgebraMap::new(algebra, &t);
    for (name, img) in [
        ("a", "a ⊗ lambda + b ⊗ xi"),
        ("b", "b ⊗ lambda^-1"),
        ("c", "c ⊗ lambda + d ⊗ xi"),
        ("d", "d ⊗ lambda^-1"),
    ] {
        f = f.with(name, expr(img, &t))?;
    }
    Ok(f)
}

fn gauss_decompose_in(kind: ChartKind, algebra: &Pres) -> Result<Gauss> {
    let w = kind.permutation();
    let t = [["a", "b"], ["c", "d"]];
    let gen = |s: &str| NCPoly::gen(algebra, s, 1);
    // second row of UA is (A21, A22) = row w[1] of T
    let a21 = gen(t[w[1]][0])?;
    let a22 = gen(t[w[1]][1])?;
    let a22_inv = crate::ncalg::monomial_inverse(&a22).ok_or_else(|| {
        Error::NoSolution(format!("{} is not invertible in {}", a22, algebra.name()))
    })?;
    let u12 = gen(t[w[0]][1])?.mul(&a22_inv)?;
    let a11 = gen(t[w[0]][0])?.sub(&u12.mul(&a21)?)?;
    Ok(Gauss { w, u12, a11, a21, a22 })
}

fn ansatz(g: &Gauss) -> [NCPoly; 5] {
    [
        g.a11.clone(),
        g.a21.clone(),
        g.a22.clone(),
        g.u12.clone(),
        NCPoly::one(g.a11.pres()),
    ]
}

/// Accumulates linear equations `Σ x_j p_j = rhs` over several
/// presentations into one system.
struct System {
    rows: Vec<SparseVec>,
    rhs: Vec<QScalar>,
    ncols: usize,
}

impl System {
    fn new(ncols: usize) -> Self {
        System {
            rows: Vec::new(),
            rhs: Vec::new(),
            ncols,
        }
    }

    /// `cols[k] = (unknown index, polynomial)`.
    fn push(&mut self, cols: &[(usize, NCPoly)], rhs: &NCPoly) {
        let polys: Vec<NCPoly> = cols.iter().map(|(_, p)| p.clone()).collect();
        let (rows, b) = poly_equations(&polys, rhs);
        for (r, b) in rows.into_iter().zip(b) {
            let mut out = SparseVec::new();
            for (k, c) in r {
                let j = cols[k].0;
                let v = out.remove(&j).map(|x| &x + &c).unwrap_or(c);
                if !v.is_zero() {
                    out.insert(j, v);
                }
            }
            self.rows.push(out);
            self.rhs.push(b);
        }
    }
}

fn solve_gamma(
    algebra: &Pres,
    coaction: &AlgebraMap,
    gauss: &Gauss,
    forced_lambda_inv: Option<&NCPoly>,
) -> Result<GammaSolution> {
    let b = standard::borel();
    let t = coaction.target().clone();
    let basis = ansatz(gauss);
    let tensor = |x: &NCPoly, y: &NCPoly| -> NCPoly { tensor_elems(&[x, y]) };

    // ρ(γ(λ)) = γ(λ)⊗λ within the ansatz
    let lam_cols: Vec<NCPoly> = basis
        .iter()
        .map(|e| coaction.apply(e)?.sub(&tensor(e, &b_gen(&b, "lambda"))))
        .collect::<Result<_>>()?;
    let (rows, _) = poly_equations(&lam_cols, &NCPoly::zero(&t));
    let lambda_kernel_dim = kernel(rows, basis.len()).len();
    let gl = gauss.a11.clone();

    // unknowns: y_0..y_4 for γ(λ⁻¹), z_0..z_4 for γ(ξ)
    let k = basis.len();
    let mut sys = System::new(2 * k);
    let one = NCPoly::one(algebra);
    let zero = NCPoly::zero(algebra);
    let ycols = |f: &dyn Fn(&NCPoly) -> Result<NCPoly>| -> Result<Vec<(usize, NCPoly)>> {
        basis.iter().enumerate().map(|(j, e)| Ok((j, f(e)?))).collect()
    };
    let zcols = |f: &dyn Fn(&NCPoly) -> Result<NCPoly>| -> Result<Vec<(usize, NCPoly)>> {
        basis.iter().enumerate().map(|(j, e)| Ok((k + j, f(e)?))).collect()
    };
    sys.push(&ycols(&|e| gl.mul(e))?, &one);
    sys.push(&ycols(&|e| e.mul(&gl))?, &one);
    sys.push(&zcols(&|e| gl.mul(e)?.sub(&e.mul(&gl)?.scale(&QScalar::q())))?, &zero);
    let tz = NCPoly::zero(&t);
    sys.push(
        &ycols(&|e| coaction.apply(e)?.sub(&tensor(e, &b_gen(&b, "lambda^-1"))))?,
        &tz,
    );
    let mut cols = zcols(&|e| coaction.apply(e)?.sub(&tensor(e, &b_gen(&b, "lambda"))))?;
    cols.extend(ycols(&|e| Ok(tensor(e, &b_gen(&b, "xi")).neg()))?);
    sys.push(&cols, &tz);
    if let Some(f) = forced_lambda_inv {
        // γ(λ⁻¹) = f
        sys.push(&ycols(&|e| Ok(e.clone()))?, f);
    }
    let (x, ker) = solve(sys.rows, sys.rhs, sys.ncols)
        .ok_or_else(|| Error::NoSolution(format!("γ constraints are inconsistent in {}", algebra.name())))?;
    let comb = |off: usize| -> Result<NCPoly> {
        let mut acc = NCPoly::zero(algebra);
        for (j, e) in basis.iter().enumerate() {
            acc = acc.add(&e.scale(&x[off + j]))?;
        }
        Ok(acc)
    };
    Ok(GammaSolution {
        lambda: gl,
        lambda_inv: comb(0)?,
        xi: comb(k)?,
        lambda_kernel_dim,
        unique: ker.is_empty() && lambda_kernel_dim == 1,
    })
}

fn b_gen(b: &Pres, s: &str) -> NCPoly {
    expr(s, b)
}

impl TrivializationChart {
    pub fn new(kind: ChartKind) -> Result<Self> {
        let algebra = kind.algebra();
        let g = standard::g();
        let iota = AlgebraMap::inclusion(&g, &algebra)?;
        let coaction = extend_coaction(&algebra)?;
        let target = coaction.target().clone();
        let gauss = gauss_decompose_in(kind, &algebra)?;
        let sol = solve_gamma(&algebra, &coaction, &gauss, None)?;
        let gamma = gamma_map(&algebra, &sol)?;
        let coinvariant = gauss.u12.clone();
        Ok(TrivializationChart {
            kind,
            algebra,
            target,
            iota,
            coaction,
            gauss,
            gamma_solution: sol,
            gamma,
            coinvariant,
        })
    }

    pub fn kind(&self) -> ChartKind {
        self.kind
    }

    pub fn name(&self) -> &'static str {
        self.kind.name()
    }

    pub fn algebra(&self) -> &Pres {
        &self.algebra
    }

    /// The presentation `chart ⊗ B`.
    pub fn coaction_target(&self) -> &Pres {
        &self.target
    }

    pub fn iota(&self) -> &AlgebraMap {
        &self.iota
    }

    pub fn coaction(&self) -> &AlgebraMap {
        &self.coaction
    }

    pub fn gauss(&self) -> &Gauss {
        &self.gauss
    }

    pub fn gamma(&self) -> &AlgebraMap {
        &self.gamma
    }

    pub fn gamma_solution(&self) -> &GammaSolution {
        &self.gamma_solution
    }

    /// `u = bd⁻¹` in the d-chart, `u′ = db⁻¹` in the b-chart.
    pub fn coinvariant_generator(&self) -> &NCPoly {
        &self.coinvariant
    }

    /// `γ(λ^e)`.
    pub fn gamma_weight(&self, e: i64) -> Result<NCPoly> {
        let b = standard::borel();
        self.gamma.apply(&NCPoly::gen_idx(&b, standard::LAMBDA, e)?)
    }

    /// `Σ c_i u^i` for the chart's coinvariant generator.
    pub fn poly_in_generator(&self, p: &QPoly) -> Result<NCPoly> {
        let mut acc = NCPoly::zero(&self.algebra);
        let mut pw = NCPoly::one(&self.algebra);
        for c in p.coeffs() {
            if !c.is_zero() {
                acc = acc.add(&pw.scale(c))?;
            }
            pw = pw.mul(&self.coinvariant)?;
        }
        Ok(acc)
    }

    /// Coefficients of `x` as a polynomial of degree ≤ `max_deg` in the
    /// coinvariant generator, if it is one.
    pub fn as_poly_in_generator(&self, x: &NCPoly, max_deg: usize) -> Result<Option<QPoly>> {
        let mut powers = Vec::new();
        let mut pw = NCPoly::one(&self.algebra);
        for _ in 0..=max_deg {
            powers.push(pw.clone());
            pw = pw.mul(&self.coinvariant)?;
        }
        Ok(crate::linalg::solve_poly(&powers, x).map(|(c, _)| QPoly::from_coeffs(c)))
    }

    pub fn verify(&self, seed: u64) -> Result<Vec<Check>> {
        verify_chart(self, seed)
    }
}

fn gamma_map(algebra: &Pres, sol: &GammaSolution) -> Result<AlgebraMap> {
    let b = standard::borel();
    let mut f = AlgebraMap::new(&b, algebra);
    f.set_with_inverse(standard::LAMBDA, sol.lambda.clone(), sol.lambda_inv.clone())?;
    f.set(standard::XI, sol.xi.clone())?;
    Ok(f)
}

pub fn gauss_decompose(chart: &TrivializationChart) -> &Gauss {
    chart.gauss()
}

/// Tries `T = wUA` with the other chart's permutation; fails because the
/// required pivot is not invertible.
pub fn gauss_decompose_with(kind: ChartKind, w: [usize; 2]) -> Result<Gauss> {
    let algebra = kind.algebra();
    let k = if w == [0, 1] { ChartKind::D } else { ChartKind::B };
    gauss_decompose_in(k, &algebra)
}

/// Re-runs the γ solve with `γ(λ⁻¹)` forced to `f`.
pub fn build_gamma_forced(chart: &TrivializationChart, lambda_inv: &NCPoly) -> Result<GammaSolution> {
    solve_gamma(&chart.algebra, &chart.coaction, &chart.gauss, Some(lambda_inv))
}

pub fn build_gamma(chart: &TrivializationChart) -> Result<GammaSolution> {
    solve_gamma(&chart.algebra, &chart.coaction, &chart.gauss, None)
}

/// Kernel of `ρ_B − (·⊗1)` on normal monomials of the chart up to `degree`.
#[derive(Clone, Debug)]
pub struct LocalizedCoinvariants {
    pub degree: i64,
    pub kernel: Vec<NCPoly>,
    /// Each kernel element as a polynomial in the coinvariant generator,
    /// `None` when some element is not of that form.
    pub in_generator: Option<Vec<QPoly>>,
}

pub fn localized_coinvariants(chart: &TrivializationChart, degree: i64) -> Result<LocalizedCoinvariants> {
    let b = standard::borel();
    let monos = basis_monomials(&chart.algebra, degree);
    let one_b = NCPoly::one(&b);
    let cols: Vec<NCPoly> = monos
        .iter()
        .map(|m| {
            let x = NCPoly::monomial(&chart.algebra, QScalar::one(), m.clone());
            chart.coaction.apply(&x)?.sub(&tensor_elems(&[&x, &one_b]))
        })
        .collect::<Result<_>>()?;
    let (rows, _) = poly_equations(&cols, &NCPoly::zero(&chart.target));
    let ker = kernel(rows, monos.len());
    let mut elems = Vec::new();
    for v in &ker {
        let mut acc = NCPoly::zero(&chart.algebra);
        for (m, c) in monos.iter().zip(v) {
            if !c.is_zero() {
                acc = acc.add(&NCPoly::monomial(&chart.algebra, c.clone(), m.clone()))?;
            }
        }
        elems.push(acc);
    }
    let max_pow = (degree / 2).max(0) as usize;
    let mut polys = Some(Vec::new());
    for e in &elems {
        match (chart.as_poly_in_generator(e, max_pow)?, polys.as_mut()) {
            (Some(p), Some(v)) => v.push(p),
            _ => polys = None,
        }
    }
    Ok(LocalizedCoinvariants {
        degree,
        kernel: elems,
        in_generator: polys,
    })
}

fn borel_random_words(n: usize, degree: usize, seed: u64) -> Vec<NCPoly> {
    let b = standard::borel();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| {
            let w = random_word_deg(&b, degree, &mut rng);
            NCPoly::from_word(&b, QScalar::one(), &w).expect("random Borel word")
        })
        .collect()
}

/// Checks `ρ(γ(x)) = (γ⊗id)Δ_B(x)`.
fn comodule_map_witness(chart: &TrivializationChart, bh: &HopfData, xs: &[NCPoly]) -> Result<Option<String>> {
    let b = standard::borel();
    let gid = AlgebraMap::tensor(&[&chart.gamma, &AlgebraMap::identity(&b)]);
    for x in xs {
        let l = chart.coaction.apply(&chart.gamma.apply(x)?)?;
        let r = gid.apply(&bh.coproduct(x)?)?;
        if l != r {
            return Ok(Some(format!("x = {x}: ρ(γ(x)) = {l}, (γ⊗id)Δ(x) = {r}")));
        }
    }
    Ok(None)
}

pub fn verify_chart(chart: &TrivializationChart, seed: u64) -> Result<Vec<Check>> {
    let name = chart.name();
    let n = |s: &str| format!("{name}.{s}");
    let b = standard::borel();
    let bh = HopfData::borel()?;
    let g = standard::g();
    let mut checks = Vec::new();

    checks.push(Check::from_witness(
        n("coaction_algebra_map"),
        "the extended Borel coaction respects every relation of the chart",
        chart.coaction.relation_failures()?.into_iter().next(),
    ));

    let rho_g = borel_coaction_g()?;
    let iota_id = AlgebraMap::tensor(&[&chart.iota, &AlgebraMap::identity(&b)]);
    let mut w = None;
    for m in basis_monomials(&g, 4) {
        let x = NCPoly::monomial(&g, QScalar::one(), m);
        let l = chart.coaction.apply(&chart.iota.apply(&x)?)?;
        let r = iota_id.apply(&rho_g.apply(&x)?)?;
        if l != r {
            w = Some(format!("{x}: {l} != {r}"));
            break;
        }
    }
    checks.push(Check::from_witness(
        n("coaction_restricts"),
        "ρ_B ∘ ι = (ι⊗id)(id⊗π)Δ on G",
        w,
    ));

    let one = NCPoly::one(&chart.algebra);
    let gl = &chart.gamma_solution.lambda;
    let gli = &chart.gamma_solution.lambda_inv;
    let inv_ok = gl.mul(gli)? == one && gli.mul(gl)? == one;
    checks.push(if inv_ok {
        Check::pass(n("gamma_inverse"), "γ(λ)γ(λ⁻¹) = γ(λ⁻¹)γ(λ) = 1")
    } else {
        Check::fail(
            n("gamma_inverse"),
            "γ(λ)γ(λ⁻¹) = γ(λ⁻¹)γ(λ) = 1",
            format!("{} · {} = {}", gl, gli, gl.mul(gli)?),
        )
    });
    checks.push(Check::from_witness(
        n("gamma_algebra_map"),
        "γ respects λξ = qξλ and λλ⁻¹ = 1",
        chart.gamma.relation_failures()?.into_iter().next(),
    ));

    let mut xs = alloc::vec![b_gen(&b, "lambda"), b_gen(&b, "lambda^-1"), b_gen(&b, "xi")];
    let gens_w = comodule_map_witness(chart, &bh, &xs)?;
    checks.push(Check::from_witness(
        n("gamma_comodule_map"),
        "ρ_B ∘ γ = (γ⊗id) Δ_B on generators",
        gens_w,
    ));
    xs = borel_random_words(50, 5, seed);
    let words_w = comodule_map_witness(chart, &bh, &xs)?;
    let mut alg_w = None;
    for pair in xs.chunks(2) {
        if let [x, y] = pair {
            let l = chart.gamma.apply(&x.mul(y)?)?;
            let r = chart.gamma.apply(x)?.mul(&chart.gamma.apply(y)?)?;
            if l != r {
                alg_w = Some(format!("γ({x} · {y})"));
                break;
            }
        }
    }
    checks.push(Check::from_witness(
        n("gamma_random_words"),
        "γ is multiplicative and a comodule map on 50 random Borel words",
        words_w.or(alg_w),
    ));

    checks.push(if chart.gamma_solution.unique {
        Check::pass(n("gamma_unique"), "the γ constraints have a unique solution with γ(λ) = A11")
    } else {
        Check::fail(
            n("gamma_unique"),
            "the γ constraints have a unique solution with γ(λ) = A11",
            format!("λ-kernel dimension {}", chart.gamma_solution.lambda_kernel_dim),
        )
    });

    let u = &chart.coinvariant;
    let lu = chart.coaction.apply(u)?;
    let ru = tensor_elems(&[u, &NCPoly::one(&b)]);
    checks.push(if lu == ru {
        Check::pass(n("coinvariant_generator"), "ρ_B(u) = u ⊗ 1")
    } else {
        Check::fail(n("coinvariant_generator"), "ρ_B(u) = u ⊗ 1", format!("ρ_B({u}) = {lu}"))
    });

    let prod = chart.gauss.product()?;
    let tm = [["a", "b"], ["c", "d"]];
    let mut gw = None;
    for i in 0..2 {
        for j in 0..2 {
            let e = NCPoly::gen(&chart.algebra, tm[i][j], 1)?;
            if prod[i][j] != e {
                gw = Some(format!("(wUA)[{i}][{j}] = {} != {e}", prod[i][j]));
            }
        }
    }
    checks.push(Check::from_witness(n("gauss_decomposition"), "T = wUA exactly", gw));

    let mut ww = None;
    for k in 0..=4 {
        let x = chart.gamma_weight(-k)?;
        let l = chart.coaction.apply(&x)?;
        let r = tensor_elems(&[&x, &NCPoly::gen_idx(&b, standard::LAMBDA, -k)?]);
        if l != r {
            ww = Some(format!("n = {k}: ρ_B({x}) = {l}"));
            break;
        }
    }
    checks.push(Check::from_witness(
        n("gamma_weight_vectors"),
        "ρ_B(γ(λ⁻ⁿ)) = γ(λ⁻ⁿ) ⊗ λ⁻ⁿ for n ≤ 4",
        ww,
    ));

    if chart.kind == ChartKind::D {
        let mut dw = None;
        for k in 0..=4 {
            let x = chart.gamma_weight(-k)?;
            let dn = NCPoly::gen(&chart.algebra, "d", k)?;
            if x != dn {
                dw = Some(format!("γ_d(λ^-{k}) = {x}"));
                break;
            }
        }
        checks.push(Check::from_witness(n("gamma_chi_monomial"), "γ_d(λ⁻ⁿ) = dⁿ", dw));

        let mut pw = None;
        for (g, e, img) in [(standard::LAMBDA, 1, "a - b d^-1 c"), (standard::LAMBDA, -1, "d"), (standard::XI, 1, "c")] {
            let x = NCPoly::gen_idx(&b, g, e)?;
            let got = chart.gamma.apply(&x)?;
            if got != crate::parse::parse_expr(img, &chart.algebra)? {
                pw = Some(format!("γ_d({x}) = {got}, expected {img}"));
                break;
            }
        }
        checks.push(Check::from_witness(
            n("gamma_generator_images"),
            "γ_d(λ) = a − bd⁻¹c, γ_d(λ⁻¹) = d, γ_d(ξ) = c",
            pw,
        ));
    }
    Ok(checks)
}

/// `(e_a − e_d, e_b − e_c)`; every relation of the G family is
/// homogeneous for this grading.
pub fn weight(m: &Mono) -> (i64, i64) {
    let e = m.exps();
    (e[standard::A] - e[standard::D], e[standard::B] - e[standard::C])
}

fn by_weight(monos: Vec<Mono>) -> BTreeMap<(i64, i64), Vec<Mono>> {
    let mut out: BTreeMap<(i64, i64), Vec<Mono>> = BTreeMap::new();
    for m in monos {
        out.entry(weight(&m)).or_default().push(m);
    }
    out
}

/// Injectivity and gluing of `G → G_b × G_d ⇉ G_bd` on degree slices.
/// `reverse` sets up the fork as `(j_d, −j_b)` instead of `(j_b, −j_d)`.
pub fn cover_equalizer(degree: i64, reverse: bool) -> Result<Vec<Check>> {
    let g = standard::g();
    let gb = standard::g_b();
    let gd = standard::g_d();
    let gbd = standard::g_bd();
    let ib = AlgebraMap::inclusion(&g, &gb)?;
    let id = AlgebraMap::inclusion(&g, &gd)?;
    let jb = AlgebraMap::inclusion(&gb, &gbd)?;
    let jd = AlgebraMap::inclusion(&gd, &gbd)?;
    let tag = if reverse { "d_then_b" } else { "b_then_d" };
    let mut checks = Vec::new();

    // injectivity on the G slice
    let gmonos = basis_monomials(&g, degree);
    let mut index: BTreeMap<(u8, Mono), usize> = BTreeMap::new();
    let mut rows: Vec<SparseVec> = Vec::new();
    let mut id_images = BTreeMap::new();
    for m in &gmonos {
        let x = NCPoly::monomial(&g, QScalar::one(), m.clone());
        let xb = ib.apply(&x)?;
        let xd = id.apply(&x)?;
        let mut row = SparseVec::new();
        for (side, p) in [(0u8, &xb), (1u8, &xd)] {
            for (mm, c) in p.terms() {
                let n = index.len();
                let k = *index.entry((side, mm.clone())).or_insert(n);
                row.insert(k, c.clone());
            }
        }
        rows.push(row);
        id_images.insert(m.clone(), xd);
    }
    let r = crate::linalg::rank(rows, index.len());
    checks.push(if r == gmonos.len() {
        Check::pass(
            format!("cover.injective.deg{degree}"),
            "ι_b(f) = 0 and ι_d(f) = 0 imply f = 0",
        )
    } else {
        Check::fail(
            format!("cover.injective.deg{degree}"),
            "ι_b(f) = 0 and ι_d(f) = 0 imply f = 0",
            format!("rank {r} < {}", gmonos.len()),
        )
    });

    // gluing: kernel of the fork, block by weight
    let bblocks = by_weight(basis_monomials(&gb, degree));
    let dblocks = by_weight(basis_monomials(&gd, degree));
    let gblocks = by_weight(gmonos.clone());
    let mut keys: Vec<(i64, i64)> = bblocks.keys().chain(dblocks.keys()).cloned().collect();
    keys.sort();
    keys.dedup();
    let empty = Vec::new();
    let mut witness = None;
    let mut kdim = 0usize;
    let mut wdim = 0usize;
    for key in keys {
        let bm = bblocks.get(&key).unwrap_or(&empty);
        let dm = dblocks.get(&key).unwrap_or(&empty);
        let mut cols = Vec::new();
        for m in bm {
            let x = jb.apply(&NCPoly::monomial(&gb, QScalar::one(), m.clone()))?;
            cols.push(if reverse { x.neg() } else { x });
        }
        for m in dm {
            let x = jd.apply(&NCPoly::monomial(&gd, QScalar::one(), m.clone()))?;
            cols.push(if reverse { x } else { x.neg() });
        }
        let (rows, _) = poly_equations(&cols, &NCPoly::zero(&gbd));
        let ker = kernel(rows, cols.len());
        kdim += ker.len();
        for v in &ker {
            let mut fb: BTreeMap<Mono, QScalar> = BTreeMap::new();
            let mut fd = NCPoly::zero(&gd);
            for (k, c) in v.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                if k < bm.len() {
                    fb.insert(bm[k].clone(), c.clone());
                } else {
                    fd = fd.add(&NCPoly::monomial(&gd, c.clone(), dm[k - bm.len()].clone()))?;
                }
            }
            if witness.is_some() {
                continue;
            }
            if fb.keys().any(|m| m.exp(standard::B) < 0) {
                witness = Some(format!("glued pair with f_d = {fd} has no preimage in G"));
                continue;
            }
            let mut f = NCPoly::zero(&g);
            for (m, c) in &fb {
                f = f.add(&NCPoly::monomial(&g, c.clone(), m.clone()))?;
            }
            if id.apply(&f)? != fd {
                witness = Some(format!("f = {f}: ι_d(f) = {} != {fd}", id.apply(&f)?));
            }
        }
        // elements of G whose d-image stays within the cutoff
        if let Some(gm) = gblocks.get(&key) {
            let high: Vec<NCPoly> = gm
                .iter()
                .map(|m| {
                    let img = &id_images[m];
                    let terms = img
                        .terms()
                        .iter()
                        .filter(|(mm, _)| mm.degree() > degree)
                        .map(|(mm, c)| (mm.clone(), c.clone()))
                        .collect();
                    NCPoly::from_terms(&gd, terms)
                })
                .collect();
            let (rows, _) = poly_equations(&high, &NCPoly::zero(&gd));
            wdim += kernel(rows, gm.len()).len();
        }
    }
    if witness.is_none() && kdim != wdim {
        witness = Some(format!("equalizer dimension {kdim} != {wdim} elements of G in range"));
    }
    checks.push(Check::from_witness(
        format!("cover.gluing.{tag}.deg{degree}"),
        "every pair agreeing in G_bd comes from a unique element of G",
        witness,
    ));
    Ok(checks)
}

/// Runs the equalizer at each degree in `1..=max_degree`, both orders.
pub fn verify_cover(max_degree: i64) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for d in 1..=max_degree {
        out.extend(cover_equalizer(d, false)?);
        out.extend(cover_equalizer(d, true)?.into_iter().filter(|c| c.name.contains("gluing")));
    }
    Ok(out)
}

/// Every chart-level check plus the negative controls.
pub fn verify_charts(seed: u64) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for kind in [ChartKind::D, ChartKind::B] {
        let ch = TrivializationChart::new(kind)?;
        out.extend(verify_chart(&ch, seed)?);
        let lc = localized_coinvariants(&ch, 4)?;
        let ok = lc.kernel.len() == 3 && lc.in_generator.is_some();
        let anchor = "localized coinvariants at degree 4 are the polynomials of degree ≤ 2 in the chart coordinate";
        let cname = format!("{}.localized_coinvariants", ch.name());
        out.push(if ok {
            Check::pass(cname, anchor)
        } else {
            Check::fail(cname, anchor, format!("kernel dimension {}", lc.kernel.len()))
        });
    }
    let bch = TrivializationChart::new(ChartKind::B)?;
    let forced = NCPoly::gen(bch.algebra(), "b", 1)?;
    let anchor = "forcing γ_b(λ⁻¹) = b makes the γ constraints inconsistent";
    out.push(match build_gamma_forced(&bch, &forced) {
        Err(Error::NoSolution(_)) => Check::pass("b-chart.gamma_forced_b_rejected", anchor),
        Err(e) => return Err(e),
        Ok(s) => Check::fail(
            "b-chart.gamma_forced_b_rejected",
            anchor,
            format!("solver accepted γ(λ⁻¹) = {}", s.lambda_inv),
        ),
    });
    let anchor = "T = wUA has no solution in G_d with w the transposition";
    out.push(match gauss_decompose_with(ChartKind::D, [1, 0]) {
        Err(_) => Check::pass("d-chart.gauss_wrong_permutation_rejected", anchor),
        Ok(gs) => Check::fail(
            "d-chart.gauss_wrong_permutation_rejected",
            anchor,
            format!("found U12 = {}", gs.u12),
        ),
    });
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::check::all_ok;
    use alloc::string::ToString;

    fn s(p: &NCPoly) -> String {
        p.to_string()
    }

    #[test]
    fn extended_coaction_on_inverses() {
        let ch = TrivializationChart::new(ChartKind::B).unwrap();
        let rho = ch.coaction();
        let bi = NCPoly::gen(ch.algebra(), "b", -1).unwrap();
        assert_eq!(s(&rho.apply(&bi).unwrap()), "b^-1 ⊗ lambda");
        let a = NCPoly::gen(ch.algebra(), "a", 1).unwrap();
        assert_eq!(s(&rho.apply(&a).unwrap()), "a ⊗ lambda + b ⊗ xi");
        let dch = TrivializationChart::new(ChartKind::D).unwrap();
        let di = NCPoly::gen(dch.algebra(), "d", -1).unwrap();
        assert_eq!(s(&dch.coaction().apply(&di).unwrap()), "d^-1 ⊗ lambda");
    }

    #[test]
    fn gauss_entries() {
        let d = TrivializationChart::new(ChartKind::D).unwrap();
        let gd = d.algebra().clone();
        let e = |x: &str| parse_expr(x, &gd).unwrap();
        assert_eq!(d.gauss().u12, e("b d^-1"));
        assert_eq!(d.gauss().a11, e("a - b d^-1 c"));
        assert_eq!(d.gauss().a21, e("c"));
        assert_eq!(d.gauss().a22, e("d"));
        let b = TrivializationChart::new(ChartKind::B).unwrap();
        assert_eq!(b.gauss().u12, parse_expr("d b^-1", b.algebra()).unwrap());
        assert!(gauss_decompose_with(ChartKind::D, [1, 0]).is_err());
        assert!(gauss_decompose_with(ChartKind::B, [0, 1]).is_err());
    }

    #[test]
    fn gamma_solutions() {
        let d = TrivializationChart::new(ChartKind::D).unwrap();
        let gd = d.algebra().clone();
        let sol = d.gamma_solution();
        assert!(sol.unique);
        assert_eq!(sol.lambda, parse_expr("a - b d^-1 c", &gd).unwrap());
        assert_eq!(sol.lambda_inv, parse_expr("d", &gd).unwrap());
        assert_eq!(sol.xi, parse_expr("c", &gd).unwrap());

        let b = TrivializationChart::new(ChartKind::B).unwrap();
        let gb = b.algebra().clone();
        let sol = b.gamma_solution();
        assert!(sol.unique);
        assert_eq!(sol.lambda, parse_expr("c - d b^-1 a", &gb).unwrap());
        assert_eq!(sol.lambda_inv, parse_expr("-q^-1 b", &gb).unwrap());
        assert_eq!(sol.xi, parse_expr("-q^-1 a", &gb).unwrap());
    }

    #[test]
    fn forced_gamma_is_inconsistent() {
        let b = TrivializationChart::new(ChartKind::B).unwrap();
        let gb = b.algebra().clone();
        // (c − db⁻¹a) b = −q
        let prod = b.gamma_solution().lambda.mul(&parse_expr("b", &gb).unwrap()).unwrap();
        assert_eq!(s(&prod), "-q");
        let r = build_gamma_forced(&b, &parse_expr("b", &gb).unwrap());
        assert!(matches!(r, Err(Error::NoSolution(_))));
    }

    #[test]
    fn localized_coinvariant_spans() {
        let d = TrivializationChart::new(ChartKind::D).unwrap();
        let lc2 = localized_coinvariants(&d, 2).unwrap();
        assert_eq!(lc2.kernel.len(), 2);
        let polys = lc2.in_generator.unwrap();
        let degs: Vec<_> = polys.iter().map(|p| p.degree()).collect();
        assert!(degs.contains(&Some(0)) && degs.contains(&Some(1)));
        let lc4 = localized_coinvariants(&d, 4).unwrap();
        assert_eq!(lc4.kernel.len(), 3);
        assert!(lc4.in_generator.is_some());
        let b = TrivializationChart::new(ChartKind::B).unwrap();
        let lcb = localized_coinvariants(&b, 2).unwrap();
        assert_eq!(lcb.kernel.len(), 2);
        assert!(lcb.in_generator.is_some());
        // dimension k + 1 at degree 2k
        for k in 0..=3 {
            assert_eq!(localized_coinvariants(&d, 2 * k).unwrap().kernel.len(), k as usize + 1);
        }
    }

    #[test]
    fn d_chart_products_reduce_to_one() {
        let d = TrivializationChart::new(ChartKind::D).unwrap();
        let one = NCPoly::one(d.algebra());
        let sol = d.gamma_solution();
        assert_eq!(sol.lambda.mul(&sol.lambda_inv).unwrap(), one);
        assert_eq!(sol.lambda_inv.mul(&sol.lambda).unwrap(), one);
    }

    #[test]
    fn charts_verify() {
        let checks = verify_charts(7).unwrap();
        assert!(all_ok(&checks), "{:?}", crate::check::first_failure(&checks));
    }

    #[test]
    fn gamma_b_chi() {
        let b = TrivializationChart::new(ChartKind::B).unwrap();
        for n in 0..=3 {
            let x = b.gamma_weight(-n).unwrap();
            let want = parse_expr(&format!("(-q^-1 b)^{n}"), b.algebra()).unwrap();
            assert_eq!(x, want);
        }
    }

    #[test]
    fn cover_low_degrees() {
        for d in 1..=3 {
            let c = verify_cover_at(d);
            assert!(all_ok(&c), "{:?}", crate::check::first_failure(&c));
        }
    }

    fn verify_cover_at(d: i64) -> Vec<Check> {
        let mut v = cover_equalizer(d, false).unwrap();
        v.extend(cover_equalizer(d, true).unwrap());
        v
    }
}
