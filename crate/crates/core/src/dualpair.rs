//! Dual pairs acting on W = Hom(V^s, V): dagger, symplectic form, the two
//! momentum maps, and constructive sampling of their level sets.

use std::collections::BTreeMap;
use std::fmt;

use nalgebra::{DMatrix, DVector};
use serde::Serialize;

use crate::classify::{classify_nilpotent, random_group_element, semisimple_orbit_check, Classification, ClassifyOptions};
use crate::divalg::{CMat, Quat, QuatMatrix, Tag, C64};
use crate::error::{OrbitError, Result};
use crate::liealg::{Family, LieAlgebraDescriptor, LieElement};
use crate::linalg::{c, expm, fro, max_abs, real_nullity, real_rank};
use crate::poisson::half_trace;
use crate::random::{self, Rng};
use crate::triples::OrbitType;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum DualPairCase {
    /// (O(s′,s″), sp(ℓ,ℝ)) on Hom(ℝ^s, ℝ^{2ℓ})
    OSp,
    /// (U(s′,s″), u(p,q)) on Hom(ℂ^s, ℂ^{p+q})
    UU,
    /// (Sp(s′,s″), so*(2n)) on Hom(ℍ^s, ℍⁿ)
    SpSoStar,
    /// (Sp(s,ℝ), so(2,q)) on Hom(ℝ^{2s}, ℝ^{2,q})
    SpSo2q,
}

impl DualPairCase {
    pub fn parse(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "o-sp" | "osp" => Ok(DualPairCase::OSp),
            "u-u" | "uu" => Ok(DualPairCase::UU),
            "sp-sostar" | "sp-so*" | "spsostar" => Ok(DualPairCase::SpSoStar),
            "sp-so2q" | "spso2q" => Ok(DualPairCase::SpSo2q),
            _ => Err(OrbitError::InvalidParams(format!("unknown dual pair case '{s}'"))),
        }
    }

    pub fn key(&self) -> &'static str {
        match self {
            DualPairCase::OSp => "o-sp",
            DualPairCase::UU => "u-u",
            DualPairCase::SpSoStar => "sp-sostar",
            DualPairCase::SpSo2q => "sp-so2q",
        }
    }
}

impl fmt::Display for DualPairCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.key())
    }
}

#[derive(Clone, Debug)]
pub struct DualPairConfig {
    pub case: DualPairCase,
    pub s_plus: usize,
    pub s_minus: usize,
    pub target: LieAlgebraDescriptor,
    /// s over the base algebra (for so(2,q) the symplectic domain is ℝ^{2s}).
    pub s: usize,
    /// α† = left · α* · right in the complex representation.
    dagger_left: CMat,
    dagger_right: CMat,
    /// Form on V^s in the complex representation: Q (cases with V = range of a
    /// hermitian-type form) or the symplectic J_B.
    domain_form: CMat,
    /// Rows/cols of α in the complex representation.
    pub alpha_shape: (usize, usize),
}

fn diag_q(s_plus: usize, s_minus: usize) -> CMat {
    let n = s_plus + s_minus;
    CMat::from_fn(n, n, |i, j| if i != j { c(0.0, 0.0) } else if i < s_plus { c(1.0, 0.0) } else { c(-1.0, 0.0) })
}

fn symplectic_block(s: usize) -> CMat {
    // [[0, I], [−I, 0]]
    let mut j = CMat::zeros(2 * s, 2 * s);
    for k in 0..s {
        j[(k, s + k)] = c(1.0, 0.0);
        j[(s + k, k)] = c(-1.0, 0.0);
    }
    j
}

impl DualPairConfig {
    pub fn new(case: DualPairCase, s_plus: usize, s_minus: usize, target: Family) -> Result<Self> {
        let ok = matches!(
            (case, target),
            (DualPairCase::OSp, Family::Sp { .. })
                | (DualPairCase::UU, Family::U { .. })
                | (DualPairCase::SpSoStar, Family::SoStar { .. })
                | (DualPairCase::SpSo2q, Family::So2q { .. })
        );
        if !ok {
            return Err(OrbitError::DescriptorMismatch(case.to_string(), target.to_string()));
        }
        let desc = LieAlgebraDescriptor::new(target)?;
        let s = s_plus + s_minus;
        if s == 0 {
            return Err(OrbitError::InvalidParams("s must be positive".into()));
        }
        let (left, right, dom, shape) = match case {
            DualPairCase::OSp | DualPairCase::UU => {
                let q = diag_q(s_plus, s_minus);
                (q.clone(), desc.j_v.clone().unwrap(), q, (desc.rep_dim, s))
            }
            DualPairCase::SpSoStar => {
                let q = diag_q(s_plus, s_minus);
                let q2 = crate::linalg::block_diag(&q, &q);
                (q2.clone(), desc.j_v.clone().unwrap(), q2, (desc.rep_dim, 2 * s))
            }
            DualPairCase::SpSo2q => {
                if s_minus != 0 {
                    return Err(OrbitError::InvalidParams("Sp(s,ℝ) has no signature; set s″ = 0".into()));
                }
                let jb = symplectic_block(s);
                let jb_inv = -&jb;
                (jb_inv, desc.metric.clone().unwrap(), jb, (desc.rep_dim, 2 * s))
            }
        };
        Ok(DualPairConfig {
            case,
            s_plus,
            s_minus,
            target: desc,
            s,
            dagger_left: left,
            dagger_right: right,
            domain_form: dom,
            alpha_shape: shape,
        })
    }

    pub fn base(&self) -> Tag {
        match self.case {
            DualPairCase::OSp | DualPairCase::SpSo2q => Tag::R,
            DualPairCase::UU => Tag::C,
            DualPairCase::SpSoStar => Tag::H,
        }
    }

    pub fn is_compact(&self) -> bool {
        self.s_minus == 0 && self.case != DualPairCase::SpSo2q
    }

    /// Real dimension of W.
    pub fn w_dim(&self) -> usize {
        let (r, cc) = self.alpha_shape;
        match self.base() {
            Tag::R => r * cc,
            Tag::C => 2 * r * cc,
            _ => r * cc,
        }
    }

    pub fn domain_form(&self) -> &CMat {
        &self.domain_form
    }

    fn check_shape(&self, a: &CMat) -> Result<()> {
        if (a.nrows(), a.ncols()) != self.alpha_shape {
            return Err(OrbitError::Shape {
                expected: format!("{}x{}", self.alpha_shape.0, self.alpha_shape.1),
                got: format!("{}x{}", a.nrows(), a.ncols()),
            });
        }
        Ok(())
    }

    pub fn dagger(&self, a: &CMat) -> Result<CMat> {
        self.check_shape(a)?;
        Ok(&self.dagger_left * a.adjoint() * &self.dagger_right)
    }

    /// μ_H(α) = −α†α.
    pub fn mu_h(&self, a: &CMat) -> Result<CMat> {
        Ok(-(self.dagger(a)? * a))
    }

    /// μ_G(α) = αα†, an element of the target algebra.
    pub fn mu_g(&self, a: &CMat) -> Result<LieElement> {
        let m = a * self.dagger(a)?;
        Ok(self.target.wrap(m))
    }

    /// Real part of the trace over the base algebra.
    pub fn trace_r(&self, m: &CMat) -> f64 {
        let t = m.trace().re;
        if self.base() == Tag::H {
            0.5 * t
        } else {
            t
        }
    }

    /// ω_W(α, β) = trace_r(β†α).
    pub fn omega_w(&self, a: &CMat, b: &CMat) -> Result<f64> {
        Ok(self.trace_r(&(self.dagger(b)? * a)))
    }

    /// Real basis of W in the complex representation.
    pub fn w_basis(&self) -> Vec<CMat> {
        let (r, cc) = self.alpha_shape;
        let mut out = Vec::new();
        match self.base() {
            Tag::R => {
                for i in 0..r {
                    for j in 0..cc {
                        let mut m = CMat::zeros(r, cc);
                        m[(i, j)] = c(1.0, 0.0);
                        out.push(m);
                    }
                }
            }
            Tag::C => {
                for unit in [c(1.0, 0.0), c(0.0, 1.0)] {
                    for i in 0..r {
                        for j in 0..cc {
                            let mut m = CMat::zeros(r, cc);
                            m[(i, j)] = unit;
                            out.push(m);
                        }
                    }
                }
            }
            _ => {
                let (n, s) = (r / 2, cc / 2);
                for u in [Quat::ONE, Quat::I, Quat::J, Quat::K] {
                    for i in 0..n {
                        for j in 0..s {
                            out.push(QuatMatrix::from_fn(n, s, |a, b| if (a, b) == (i, j) { u } else { Quat::default() }).complex_rep());
                        }
                    }
                }
            }
        }
        out
    }

    /// Real coordinates of α in the order of `w_basis`.
    pub fn w_coords(&self, a: &CMat) -> Result<Vec<f64>> {
        self.check_shape(a)?;
        let (r, cc) = self.alpha_shape;
        Ok(match self.base() {
            Tag::R => (0..r).flat_map(|i| (0..cc).map(move |j| (i, j))).map(|ij| a[ij].re).collect(),
            Tag::C => {
                let idx: Vec<_> = (0..r).flat_map(|i| (0..cc).map(move |j| (i, j))).collect();
                idx.iter().map(|ij| a[*ij].re).chain(idx.iter().map(|ij| a[*ij].im)).collect()
            }
            _ => {
                let qm = QuatMatrix::from_complex_rep(a, 1e-9)?;
                let (n, s) = (r / 2, cc / 2);
                let mut v = Vec::with_capacity(4 * n * s);
                for k in 0..4 {
                    for i in 0..n {
                        for j in 0..s {
                            v.push(qm.get(i, j).0[k]);
                        }
                    }
                }
                v
            }
        })
    }

    /// Basis of 𝔥 acting on V^s (complex representation).
    pub fn h_basis(&self) -> Vec<CMat> {
        let s = self.s;
        let mut ks = Vec::new();
        match self.case {
            DualPairCase::OSp => {
                for i in 0..s {
                    for j in (i + 1)..s {
                        let mut k = CMat::zeros(s, s);
                        k[(i, j)] = c(1.0, 0.0);
                        k[(j, i)] = c(-1.0, 0.0);
                        ks.push(k);
                    }
                }
            }
            DualPairCase::UU => {
                for i in 0..s {
                    let mut k = CMat::zeros(s, s);
                    k[(i, i)] = c(0.0, 1.0);
                    ks.push(k);
                    for j in (i + 1)..s {
                        let mut k = CMat::zeros(s, s);
                        k[(i, j)] = c(1.0, 0.0);
                        k[(j, i)] = c(-1.0, 0.0);
                        ks.push(k);
                        let mut k = CMat::zeros(s, s);
                        k[(i, j)] = c(0.0, 1.0);
                        k[(j, i)] = c(0.0, 1.0);
                        ks.push(k);
                    }
                }
            }
            DualPairCase::SpSoStar => {
                for i in 0..s {
                    for u in [Quat::I, Quat::J, Quat::K] {
                        ks.push(QuatMatrix::from_fn(s, s, |a, b| if a == i && b == i { u } else { Quat::default() }).complex_rep());
                    }
                    for j in (i + 1)..s {
                        for u in [Quat::ONE, Quat::I, Quat::J, Quat::K] {
                            ks.push(
                                QuatMatrix::from_fn(s, s, |a, b| {
                                    if (a, b) == (i, j) {
                                        u
                                    } else if (a, b) == (j, i) {
                                        -u.conj()
                                    } else {
                                        Quat::default()
                                    }
                                })
                                .complex_rep(),
                            );
                        }
                    }
                }
            }
            DualPairCase::SpSo2q => {
                // Y = J_B⁻¹ S with S symmetric
                let jb_inv = -symplectic_block(s);
                let n = 2 * s;
                for i in 0..n {
                    for j in i..n {
                        let mut m = CMat::zeros(n, n);
                        m[(i, j)] = c(1.0, 0.0);
                        m[(j, i)] = c(1.0, 0.0);
                        ks.push(&jb_inv * m);
                    }
                }
                return ks;
            }
        }
        // Y = Q·K with K skew-adjoint
        ks.into_iter().map(|k| &self.domain_form * k).collect()
    }

    /// Representatives of the non-identity components of H (O(s′,s″) only).
    pub fn component_generators(&self) -> Vec<CMat> {
        if self.case != DualPairCase::OSp {
            return Vec::new();
        }
        let mut out = Vec::new();
        for (k, present) in [(0, self.s_plus > 0), (self.s_plus, self.s_minus > 0)] {
            if present {
                let mut r = CMat::identity(self.s, self.s);
                r[(k, k)] = c(-1.0, 0.0);
                out.push(r);
            }
        }
        out
    }

    /// Distance of Y from 𝔥: the form-adjointness defect.
    pub fn h_residual(&self, y: &CMat) -> f64 {
        let f = &self.domain_form;
        let m = f * y;
        match self.case {
            DualPairCase::SpSo2q => max_abs(&(&m - m.transpose())),
            _ => max_abs(&(&m + m.adjoint())),
        }
    }

    /// Random element of H near the identity, with its inverse.
    pub fn random_h_element(&self, rng: &mut Rng, scale: f64) -> (CMat, CMat) {
        let basis = self.h_basis();
        let n = self.domain_form.nrows();
        let mut y = CMat::zeros(n, n);
        for b in &basis {
            y += b.scale(scale * random::gauss(rng));
        }
        (expm(&y), expm(&(-y)))
    }

    /// ½·trace_r(Y·μ_H(α)), the 𝔥-component of the momentum.
    pub fn h_pairing(&self, y: &CMat, a: &CMat) -> Result<f64> {
        Ok(0.5 * self.trace_r(&(y * self.mu_h(a)?)))
    }

    /// Defining identity of the dagger on random vectors: with the forms
    /// oriented as in each case, returns |lhs − rhs|.
    pub fn dagger_identity_residual(&self, a: &CMat, u: &CMat, v: &CMat) -> Result<f64> {
        let ad = self.dagger(a)?;
        let (lhs, rhs) = match self.case {
            DualPairCase::SpSo2q => {
                // (αu, v)_G = ℬ(u, α†v) with ℬ(x,y) = xᵀJ_B y
                let g = self.target.metric.as_ref().unwrap();
                ((a * u).transpose() * g * v, u.transpose() * &self.domain_form * (&ad * v))
            }
            _ => {
                // (α†u, v)_Q = ℬ(u, αv) with ℬ(x,y) = −x*J_V y
                let j = self.target.j_v.as_ref().unwrap();
                ((&ad * u).adjoint() * &self.domain_form * v, -(u.adjoint() * j * (a * v)))
            }
        };
        Ok((lhs[(0, 0)] - rhs[(0, 0)]).norm())
    }

    /// Maximal dimension of an isotropic subspace of V, the bound on ranks of
    /// zero-level images.
    pub fn isotropic_basis(&self) -> CMat {
        let d = &self.target;
        let r = d.split_rank;
        match self.case {
            DualPairCase::OSp => CMat::from_fn(d.rep_dim, r, |i, j| if i == j { c(1.0, 0.0) } else { c(0.0, 0.0) }),
            DualPairCase::UU => {
                let p = match d.family {
                    Family::U { p, .. } => p,
                    _ => unreachable!(),
                };
                CMat::from_fn(d.rep_dim, r, |i, j| if i == j || i == p + j { c(1.0, 0.0) } else { c(0.0, 0.0) })
            }
            DualPairCase::SpSoStar => QuatMatrix::from_fn(d.n, r, |i, j| {
                if i == 2 * j {
                    Quat::ONE
                } else if i == 2 * j + 1 {
                    Quat::I
                } else {
                    Quat::default()
                }
            })
            .complex_rep(),
            DualPairCase::SpSo2q => CMat::from_fn(d.rep_dim, 2, |i, j| if i == j || i == j + 2 { c(1.0, 0.0) } else { c(0.0, 0.0) }),
        }
    }

    fn random_base_matrix(&self, rng: &mut Rng, rows: usize, cols: usize) -> CMat {
        match self.base() {
            Tag::R => random::real_matrix(rng, rows, cols).map(|x| c(x, 0.0)),
            Tag::C => random::complex_matrix(rng, rows, cols),
            _ => QuatMatrix::from_fn(rows, cols, |_, _| random::quat(rng)).complex_rep(),
        }
    }

    fn random_coefficients(&self, rng: &mut Rng, k_max: usize) -> CMat {
        // A = B·C of random rank k ≤ k_max, shape (isotropic dim) × s
        let r = match self.case {
            DualPairCase::SpSo2q => 2,
            _ => self.target.split_rank,
        };
        let cols = match self.case {
            DualPairCase::SpSo2q => 2 * self.s,
            _ => self.s,
        };
        let k = rng_index(rng, k_max + 1);
        if k == 0 {
            let (rr, cc) = self.rep_size(r, cols);
            return CMat::zeros(rr, cc);
        }
        self.random_base_matrix(rng, r, k) * self.random_base_matrix(rng, k, cols)
    }

    fn rep_size(&self, r: usize, c: usize) -> (usize, usize) {
        if self.base() == Tag::H {
            (2 * r, 2 * c)
        } else {
            (r, c)
        }
    }

    /// Elements of μ_H⁻¹(0): α = g·N·A·x⁻¹ with N spanning an isotropic
    /// subspace, A of random rank and g, x random isometries.
    pub fn sample_zero_level(&self, count: usize, seed: u64) -> Vec<CMat> {
        let n = self.isotropic_basis();
        let k_max = n.ncols().min(self.s_plus_rank_bound());
        (0..count as u64)
            .map(|k| {
                let mut rng = random::substream(seed, k);
                let a = self.random_coefficients(&mut rng, k_max);
                let (g, _) = random_group_element(&self.target, 3, &mut rng);
                let (_, xinv) = self.random_h_element(&mut rng, 0.3);
                g * &n * a * xinv
            })
            .collect()
    }

    fn s_plus_rank_bound(&self) -> usize {
        match self.case {
            DualPairCase::SpSo2q => 2,
            _ => self.s,
        }
    }
}

fn rng_index(rng: &mut Rng, n: usize) -> usize {
    use rand::Rng as _;
    rng.random_range(0..n)
}

#[derive(Clone, Debug, Default)]
pub struct ReductionReport {
    pub case: String,
    pub target: String,
    pub s_plus: usize,
    pub s_minus: usize,
    pub samples: usize,
    pub histogram: BTreeMap<OrbitType, usize>,
    pub not_pseudoholomorphic: usize,
    pub max_level_residual: f64,
    /// max ‖μ_G²‖/‖μ_G‖² over nonzero images
    pub max_square_residual: f64,
}

impl ReductionReport {
    pub fn support(&self) -> Vec<OrbitType> {
        self.histogram.keys().copied().collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let hist: serde_json::Map<String, serde_json::Value> =
            self.histogram.iter().map(|(k, v)| (k.to_string(), serde_json::json!(v))).collect();
        serde_json::json!({
            "case": self.case,
            "target": self.target,
            "s_plus": self.s_plus,
            "s_minus": self.s_minus,
            "samples": self.samples,
            "histogram": hist,
            "not_pseudoholomorphic": self.not_pseudoholomorphic,
            "max_level_residual": self.max_level_residual,
            "max_square_residual": self.max_square_residual,
        })
    }
}

/// Classifies μ_G over zero-level samples.
pub fn reduce_and_classify(cfg: &DualPairConfig, count: usize, seed: u64, opts: &ClassifyOptions) -> Result<ReductionReport> {
    let mut rep = ReductionReport {
        case: cfg.case.to_string(),
        target: cfg.target.name(),
        s_plus: cfg.s_plus,
        s_minus: cfg.s_minus,
        samples: count,
        ..Default::default()
    };
    for a in cfg.sample_zero_level(count, seed) {
        let lvl = max_abs(&cfg.mu_h(&a)?) / max_abs(&a).powi(2).max(1.0);
        rep.max_level_residual = rep.max_level_residual.max(lvl);
        let x = cfg.mu_g(&a)?;
        let nx = fro(&x.mat);
        if nx > 0.0 {
            rep.max_square_residual = rep.max_square_residual.max(fro(&(&x.mat * &x.mat)) / (nx * nx));
        }
        match classify_nilpotent(&cfg.target, &x, opts)? {
            Classification::Type(t) => *rep.histogram.entry(t).or_default() += 1,
            Classification::NotPseudoholomorphic => rep.not_pseudoholomorphic += 1,
        }
    }
    Ok(rep)
}

#[derive(Clone, Debug, Serialize)]
pub struct InvariantQuadratics {
    pub dim: usize,
    pub g_dim: usize,
    /// rank of the μ_G component forms
    pub mu_g_rank: usize,
    /// max |L_Yᵀ S + S L_Y| over μ_G component forms S
    pub mu_g_invariance_residual: f64,
}

impl InvariantQuadratics {
    pub fn spans(&self) -> bool {
        self.mu_g_rank == self.dim
    }
}

pub const MAX_W_DIM_FOR_INVARIANTS: usize = 24;

fn sym_index(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect()
}

/// Dimension of the H-invariant quadratic forms on W, computed as the null
/// space of S ↦ (L_Yᵀ S + S L_Y)_Y over a basis of 𝔥.
pub fn invariant_quadratics_dim(cfg: &DualPairConfig) -> Result<InvariantQuadratics> {
    let nw = cfg.w_dim();
    if nw > MAX_W_DIM_FOR_INVARIANTS {
        return Err(OrbitError::TooLarge(format!("dim W = {nw} exceeds {MAX_W_DIM_FOR_INVARIANTS}")));
    }
    let wb = cfg.w_basis();
    let hb = cfg.h_basis();
    // L_Y: α ↦ −αY in real coordinates
    let mut ls = Vec::new();
    for y in &hb {
        let mut l = DMatrix::<f64>::zeros(nw, nw);
        for (j, b) in wb.iter().enumerate() {
            let img = cfg.w_coords(&(-(b * y)))?;
            for (i, v) in img.iter().enumerate() {
                l[(i, j)] = *v;
            }
        }
        ls.push(l);
    }
    // O(s′,s″) is disconnected: add reflections, acting as α ↦ αR
    let mut refl = Vec::new();
    for r in cfg.component_generators() {
        let mut l = DMatrix::<f64>::zeros(nw, nw);
        for (j, b) in wb.iter().enumerate() {
            for (i, v) in cfg.w_coords(&(b * &r))?.iter().enumerate() {
                l[(i, j)] = *v;
            }
        }
        refl.push(l);
    }
    let idx = sym_index(nw);
    let m = idx.len();
    let sym = |k: usize| {
        let (i, j) = idx[k];
        let mut s = DMatrix::<f64>::zeros(nw, nw);
        s[(i, j)] = 1.0;
        s[(j, i)] = 1.0;
        s
    };
    let neq = ls.len() + refl.len();
    let dim = if neq == 0 {
        m
    } else {
        let mut big = DMatrix::<f64>::zeros(neq * m, m);
        for k in 0..m {
            let s = sym(k);
            let conds = ls.iter().map(|l| l.transpose() * &s + &s * l).chain(refl.iter().map(|r| r.transpose() * &s * r - &s));
            for (h, r) in conds.enumerate() {
                for (t, &(i, j)) in idx.iter().enumerate() {
                    big[(h * m + t, k)] = r[(i, j)];
                }
            }
        }
        real_nullity(&big, 1e-9)
    };

    // μ_G components, polarized
    let g = &cfg.target;
    let gb = g.basis();
    let quad = |b: &CMat, a: &CMat| -> Result<f64> { Ok(half_trace(g, &(b * cfg.mu_g(a)?.mat)).re) };
    let mut forms = DMatrix::<f64>::zeros(m, gb.len());
    let mut resid = 0.0_f64;
    for (col, b) in gb.iter().enumerate() {
        let mut s = DMatrix::<f64>::zeros(nw, nw);
        for i in 0..nw {
            s[(i, i)] = quad(b, &wb[i])?;
        }
        for i in 0..nw {
            for j in (i + 1)..nw {
                let v = 0.5 * (quad(b, &(&wb[i] + &wb[j]))? - s[(i, i)] - s[(j, j)]);
                s[(i, j)] = v;
                s[(j, i)] = v;
            }
        }
        for l in &ls {
            let r = l.transpose() * &s + &s * l;
            resid = resid.max(r.amax());
        }
        for (t, &(i, j)) in idx.iter().enumerate() {
            forms[(t, col)] = s[(i, j)];
        }
    }
    Ok(InvariantQuadratics { dim, g_dim: g.dim, mu_g_rank: real_rank(&forms, 1e-9), mu_g_invariance_residual: resid })
}

/// Gram matrix of ω_W on the real basis of W.
pub fn omega_gram(cfg: &DualPairConfig) -> Result<DMatrix<f64>> {
    let wb = cfg.w_basis();
    let n = wb.len();
    let mut g = DMatrix::<f64>::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            g[(i, j)] = cfg.omega_w(&wb[i], &wb[j])?;
        }
    }
    Ok(g)
}

#[derive(Clone, Debug, Serialize)]
pub struct SemisimpleReduction {
    pub eps: f64,
    pub samples: usize,
    pub passed: usize,
    pub max_level_residual: f64,
}

impl SemisimpleReduction {
    pub fn all_pass(&self) -> bool {
        self.passed == self.samples
    }
}

/// Level −εJ_V: α = √ε·g·x⁻¹ with g ∈ G and x in the circle generated by J_V;
/// the images μ_G(α) must share the characteristic polynomial of 2εz.
pub fn semisimple_reduction_check(cfg: &DualPairConfig, eps: f64, count: usize, seed: u64, tol: f64) -> Result<SemisimpleReduction> {
    if eps <= 0.0 {
        return Err(OrbitError::InvalidParams("ε must be positive".into()));
    }
    let d = &cfg.target;
    let square = cfg.case != DualPairCase::SpSo2q && cfg.s_minus == 0 && cfg.domain_form.nrows() == d.rep_dim;
    if !square {
        return Err(OrbitError::Unsupported("semisimple reduction needs the compact square case".into()));
    }
    let j = d.j_v.clone().unwrap();
    let base = CMat::identity(d.rep_dim, d.rep_dim).scale(eps.sqrt());
    let mut out = SemisimpleReduction { eps, samples: count, passed: 0, max_level_residual: 0.0 };
    for k in 0..count as u64 {
        let mut rng = random::substream(seed, k);
        let a = if k == 0 {
            base.clone()
        } else {
            let (g, _) = random_group_element(d, 3, &mut rng);
            let theta = random::gauss(&mut rng);
            g * &base * expm(&j.scale(-theta))
        };
        let lvl = max_abs(&(cfg.mu_h(&a)? + j.scale(eps)));
        out.max_level_residual = out.max_level_residual.max(lvl);
        if semisimple_orbit_check(d, &cfg.mu_g(&a)?, eps, tol)? && lvl <= tol * eps.max(1.0) {
            out.passed += 1;
        }
    }
    Ok(out)
}

/// The two maps Hom(ℝ², ℝ^{2,q}) whose images under μ_G lie on the orbits of
/// the first two so(2,q) triple e-elements.
pub fn so2q_alphas(q: usize) -> (CMat, CMat) {
    let n = q + 2;
    let col = |v: &[f64]| (0..n).map(|i| c(*v.get(i).unwrap_or(&0.0), 0.0)).collect::<Vec<C64>>();
    let mk = |a: &[f64], b: &[f64]| {
        let (ca, cb) = (col(a), col(b));
        CMat::from_fn(n, 2, |i, j| if j == 0 { ca[i] } else { cb[i] })
    };
    (mk(&[1.0, 0.0, 1.0, 0.0], &[0.0, 1.0, 0.0, -1.0]), mk(&[0.0, -1.0, 1.0, 0.0], &[1.0, 0.0, 0.0, 1.0]))
}

/// Maps α: ℝ² → ℝ^{2,q} with μ_H(α) in the nilcone of sp(1,ℝ).
pub fn sample_so2q_nilcone(cfg: &DualPairConfig, count: usize, seed: u64) -> Result<Vec<CMat>> {
    if cfg.case != DualPairCase::SpSo2q || cfg.s != 1 {
        return Err(OrbitError::Unsupported("nilcone sampler is for (Sp(1,ℝ), so(2,q))".into()));
    }
    let g = cfg.target.metric.clone().unwrap();
    let n = g.nrows();
    let dotg = |x: &DVector<f64>, y: &DVector<f64>| -> f64 { (0..n).map(|i| x[i] * g[(i, i)].re * y[i]).sum() };
    let mut out = Vec::with_capacity(count);
    for k in 0..count as u64 {
        let mut rng = random::substream(seed, k);
        let kind = rng_index(&mut rng, 3);
        let (a, b) = if kind == 0 {
            // isotropic pair: the zero level
            let iso = cfg.isotropic_basis();
            let m = iso * random::real_matrix(&mut rng, 2, 2).map(|x| c(x, 0.0));
            (m.column(0).map(|z| z.re), m.column(1).map(|z| z.re))
        } else {
            // b = t·a + ν with ν null and G-orthogonal to a
            let a = DVector::from_fn(n, |_, _| random::gauss(&mut rng));
            let aa = dotg(&a, &a);
            let mut perp = |want_pos: bool| -> DVector<f64> {
                loop {
                    let v = DVector::from_fn(n, |_, _| random::gauss(&mut rng));
                    let v = &v - &a * (dotg(&v, &a) / aa);
                    let vv = dotg(&v, &v);
                    if (vv > 0.1) == want_pos && vv.abs() > 0.1 {
                        return v;
                    }
                }
            };
            let u = perp(true);
            let w = perp(false);
            let w = &w - &u * (dotg(&w, &u) / dotg(&u, &u));
            let nu = &u / dotg(&u, &u).sqrt() + &w / (-dotg(&w, &w)).sqrt();
            let t = random::gauss(&mut rng);
            let sc = random::gauss(&mut rng);
            (a.clone(), &a * t + nu * sc)
        };
        out.push(pack(&a, &b, kind == 2));
    }
    // spread by isometries on both sides
    Ok(out
        .into_iter()
        .enumerate()
        .map(|(k, m)| {
            let mut rng = random::substream(seed ^ 0x5eed, k as u64);
            let (gg, _) = random_group_element(&cfg.target, 3, &mut rng);
            let (_, xinv) = cfg.random_h_element(&mut rng, 0.3);
            gg * m * xinv
        })
        .collect())
}

fn pack(a: &DVector<f64>, b: &DVector<f64>, swap: bool) -> CMat {
    let (x, y) = if swap { (b, a) } else { (a, b) };
    CMat::from_fn(a.len(), 2, |i, j| c(if j == 0 { x[i] } else { y[i] }, 0.0))
}

/// Standard symplectic matrix J = [[0, −I], [I, 0]] on ℝ^{2m} with
/// coordinates (q¹…q^m, p¹…p^m).
pub fn symplectic_j(m: usize) -> DMatrix<f64> {
    let mut j = DMatrix::zeros(2 * m, 2 * m);
    for k in 0..m {
        j[(k, m + k)] = -1.0;
        j[(m + k, k)] = 1.0;
    }
    j
}

/// ω(u, v) = Σ (u_q v_p − u_p v_q).
pub fn omega(u: &DVector<f64>, v: &DVector<f64>) -> f64 {
    let m = u.len() / 2;
    -(u.transpose() * symplectic_j(m) * v)[(0, 0)]
}

/// v†: the functional u ↦ ω(u, v), as a row vector.
pub fn v_dagger(v: &DVector<f64>) -> DMatrix<f64> {
    let m = v.len() / 2;
    let row = v.transpose() * symplectic_j(m);
    DMatrix::from_row_slice(1, 2 * m, row.as_slice())
}

/// f_X(v) = ½ω(Xv, v) for X in the symplectic algebra.
pub fn quadratic_hamiltonian(x: &DMatrix<f64>, v: &DVector<f64>) -> Result<f64> {
    let n = v.len();
    if n % 2 != 0 || x.nrows() != n || x.ncols() != n {
        return Err(OrbitError::Shape { expected: format!("{n}x{n}, even"), got: format!("{}x{}", x.nrows(), x.ncols()) });
    }
    let j = symplectic_j(n / 2);
    let res = (x.transpose() * &j + &j * x).amax();
    if res > 1e-9 * x.amax().max(1.0) {
        return Err(OrbitError::NotMember { family: format!("sp({},ℝ)", n / 2), residual: res });
    }
    Ok(0.5 * omega(&(x * v), v))
}

/// v·v†, an element of the symplectic algebra with ½tr(X·vv†) = f_X(v).
pub fn rank_one_moment(v: &DVector<f64>) -> DMatrix<f64> {
    v * v_dagger(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn paper_dagger_example() {
        // ℓ = 1, s = 2, rows q and p
        let cfg = DualPairConfig::new(DualPairCase::OSp, 2, 0, Family::Sp { l: 1 }).unwrap();
        let a = CMat::from_row_slice(2, 2, &[c(1.0, 0.0), c(2.0, 0.0), c(3.0, 0.0), c(4.0, 0.0)]);
        let d = cfg.dagger(&a).unwrap();
        let want = CMat::from_row_slice(2, 2, &[c(3.0, 0.0), c(-1.0, 0.0), c(4.0, 0.0), c(-2.0, 0.0)]);
        assert_eq!(d, want);
    }

    #[test]
    fn wrong_family_rejected() {
        assert!(DualPairConfig::new(DualPairCase::OSp, 1, 0, Family::U { p: 1, q: 1 }).is_err());
        assert!(DualPairConfig::new(DualPairCase::SpSo2q, 1, 1, Family::So2q { q: 3 }).is_err());
    }
}
