//! Orbit type (t,u) of square-zero matrices, closure membership and orbit
//! sampling.

use serde::{Deserialize, Serialize};

use crate::divalg::{CMat, C64};
use crate::error::{OrbitError, Result};
use crate::liealg::{Family, LieAlgebraDescriptor, LieElement, PPlusElement};
use crate::linalg::{self, fro, inertia, is_nilpotent, max_abs, RANK_REL_TOL};
use crate::random::{self, Rng};
use crate::triples::{orbit_rep, OrbitType};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClassifyOptions {
    /// Relative eigenvalue/singular value threshold.
    pub rank_tol: f64,
    /// Relative tolerance for ‖X^k‖ ≈ 0 and power-sum tests.
    pub nil_tol: f64,
    /// Relative membership tolerance for the input matrix.
    pub member_tol: f64,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions { rank_tol: RANK_REL_TOL, nil_tol: 1e-9, member_tol: 1e-7 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Classification {
    Type(OrbitType),
    NotPseudoholomorphic,
}

impl Classification {
    pub fn orbit_type(&self) -> Option<OrbitType> {
        match self {
            Classification::Type(t) => Some(*t),
            Classification::NotPseudoholomorphic => None,
        }
    }
}

fn ensure_member(desc: &LieAlgebraDescriptor, x: &LieElement, tol: f64) -> Result<()> {
    if x.family != desc.family {
        return Err(OrbitError::DescriptorMismatch(desc.name(), x.family.to_string()));
    }
    if !desc.contains_rep(&x.mat, tol)? {
        return Err(OrbitError::NotMember { family: desc.name(), residual: desc.membership_residual(&x.mat)? });
    }
    Ok(())
}

fn small(m: &CMat, scale: f64, tol: f64) -> bool {
    fro(m) <= tol * scale
}

/// Invariants used to tell the so(2,q) orbits apart.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct So2qDiscriminant {
    /// 0 (zero), 1 (X² = 0), 2 (X³ = 0, X² ≠ 0), 3 otherwise.
    pub rank_class: usize,
    /// Sign of tr(zX).
    pub trace_sign: i8,
    /// Signature of the symmetric matrix G·X².
    pub g_signature: i64,
}

pub fn so2q_discriminant(desc: &LieAlgebraDescriptor, x: &CMat, opts: &ClassifyOptions) -> So2qDiscriminant {
    let s = fro(x);
    if s == 0.0 {
        return So2qDiscriminant { rank_class: 0, trace_sign: 0, g_signature: 0 };
    }
    let x2 = x * x;
    let rank_class = if small(&x2, s * s, opts.nil_tol) {
        1
    } else if small(&(&x2 * x), s * s * s, opts.nil_tol) {
        2
    } else {
        3
    };
    let tr = (&desc.z * x).trace().re;
    let trace_sign = if tr.abs() <= 1e-7 * s {
        0
    } else if tr > 0.0 {
        1
    } else {
        -1
    };
    let g = desc.metric.as_ref().expect("so(2,q) carries its Lorentz metric");
    let gx2 = g * &x2;
    let g_signature = if rank_class == 2 {
        inertia(&gx2, opts.rank_tol.max(1e-6), 1e-12 * s * s).signature()
    } else {
        0
    };
    So2qDiscriminant { rank_class, trace_sign, g_signature }
}

/// Discriminant values observed on the representatives e_{t,u}.
#[derive(Clone, Debug)]
pub struct So2qCalibration {
    pub table: Vec<(OrbitType, So2qDiscriminant)>,
    /// G·X² signature shared by e_{1,1}; it separates 𝒪_{1,1} from 𝒪_{2,0}, 𝒪_{0,2}.
    pub mixed_g_signature: i64,
}

impl So2qCalibration {
    pub fn new(desc: &LieAlgebraDescriptor, opts: &ClassifyOptions) -> Result<Self> {
        let mut table = Vec::new();
        for ty in OrbitType::all(2) {
            let x = orbit_rep(desc, ty.t, ty.u)?;
            table.push((ty, so2q_discriminant(desc, &x.mat, opts)));
        }
        let get = |t, u| table.iter().find(|(ty, _)| *ty == OrbitType::new(t, u)).unwrap().1;
        let mixed = get(1, 1).g_signature;
        let (d20, d02, d10, d01) = (get(2, 0), get(0, 2), get(1, 0), get(0, 1));
        // the calibration must separate every type
        let separated = d20.g_signature != mixed
            && d02.g_signature != mixed
            && d20.trace_sign != 0
            && d20.trace_sign == -d02.trace_sign
            && d10.trace_sign != 0
            && d10.trace_sign == -d01.trace_sign;
        if !separated {
            return Err(OrbitError::Internal("so(2,q) discriminant does not separate the representatives".into()));
        }
        Ok(So2qCalibration { table, mixed_g_signature: mixed })
    }

    pub fn holomorphic_trace_sign(&self) -> i8 {
        self.lookup(OrbitType::new(1, 0)).trace_sign
    }

    fn lookup(&self, ty: OrbitType) -> So2qDiscriminant {
        self.table.iter().find(|(t, _)| *t == ty).unwrap().1
    }

    pub fn classify(&self, d: &So2qDiscriminant) -> Classification {
        let pick = |a: OrbitType, b: OrbitType| {
            if d.trace_sign == self.lookup(a).trace_sign {
                Classification::Type(a)
            } else if d.trace_sign == self.lookup(b).trace_sign {
                Classification::Type(b)
            } else {
                Classification::NotPseudoholomorphic
            }
        };
        match d.rank_class {
            0 => Classification::Type(OrbitType::new(0, 0)),
            1 => pick(OrbitType::new(1, 0), OrbitType::new(0, 1)),
            2 if d.g_signature == self.mixed_g_signature => Classification::Type(OrbitType::new(1, 1)),
            2 => pick(OrbitType::new(2, 0), OrbitType::new(0, 2)),
            _ => Classification::NotPseudoholomorphic,
        }
    }
}

pub fn classify_nilpotent(desc: &LieAlgebraDescriptor, x: &LieElement, opts: &ClassifyOptions) -> Result<Classification> {
    ensure_member(desc, x, opts.member_tol)?;
    if let Family::So2q { .. } = desc.family {
        let cal = So2qCalibration::new(desc, opts)?;
        return Ok(cal.classify(&so2q_discriminant(desc, &x.mat, opts)));
    }
    let s = fro(&x.mat);
    if s == 0.0 {
        return Ok(Classification::Type(OrbitType::new(0, 0)));
    }
    if !small(&(&x.mat * &x.mat), s * s, opts.nil_tol) {
        return Ok(Classification::NotPseudoholomorphic);
    }
    let b = desc.b_x_form(x, opts.rank_tol)?;
    let t = (b.rank as i64 + b.signature) / 2;
    let u = (b.rank as i64 - b.signature) / 2;
    Ok(Classification::Type(OrbitType::new(t as usize, u as usize)))
}

pub fn is_holomorphic(desc: &LieAlgebraDescriptor, x: &LieElement, opts: &ClassifyOptions) -> Result<bool> {
    match classify_nilpotent(desc, x, opts)? {
        Classification::Type(t) => Ok(t.is_holomorphic()),
        Classification::NotPseudoholomorphic => {
            Err(OrbitError::Unsupported("holomorphicity is only defined on pseudoholomorphic orbits".into()))
        }
    }
}

/// Smallest eigenvalue of −J_V·X.
pub fn min_b_eigenvalue(desc: &LieAlgebraDescriptor, x: &LieElement) -> Result<f64> {
    let j = desc.j_v.as_ref().ok_or_else(|| OrbitError::Unsupported(format!("no B_X form on {}", desc.name())))?;
    let ev = linalg::herm_eigenvalues(&-(j * &x.mat));
    Ok(ev.first().copied().unwrap_or(0.0))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClosureReport {
    pub s: usize,
    pub rank: usize,
    pub rank_ok: bool,
    pub nilpotent_ok: bool,
    pub nonnegative_ok: bool,
    pub in_closure: bool,
    pub failed: Vec<String>,
    pub notes: Vec<String>,
}

/// Semi-algebraic membership of X in the closure of 𝒪_s: (1) K-rank ≤ s,
/// (2) X nilpotent, (3) −J_V X ≥ 0. so(2,q) substitutes rank class, X^{s+1} = 0
/// and the holomorphic-side discriminant.
pub fn in_closure(desc: &LieAlgebraDescriptor, x: &LieElement, s: usize, opts: &ClassifyOptions) -> Result<ClosureReport> {
    ensure_member(desc, x, opts.member_tol)?;
    if s > desc.split_rank {
        return Err(OrbitError::InvalidParams(format!("s = {s} exceeds split rank {}", desc.split_rank)));
    }
    let scale = fro(&x.mat);
    let mut notes = Vec::new();
    let (rank, rank_ok, nilpotent_ok, nonnegative_ok) = if let Family::So2q { .. } = desc.family {
        notes.push("so(2,q): rank class, X^(s+1) = 0 and trace-side discriminant".to_string());
        let cal = So2qCalibration::new(desc, opts)?;
        let d = so2q_discriminant(desc, &x.mat, opts);
        let mut p = CMat::identity(desc.rep_dim, desc.rep_dim);
        for _ in 0..=s {
            p = &p * &x.mat;
        }
        let nil = small(&p, scale.powi(s as i32 + 1), opts.nil_tol);
        let hol = d.rank_class == 0
            || (d.trace_sign == cal.holomorphic_trace_sign()
                && (d.rank_class == 1 || d.g_signature != cal.mixed_g_signature));
        (d.rank_class, d.rank_class <= s, nil, hol)
    } else {
        let b = desc.b_x_form(x, opts.rank_tol)?;
        let min_ev = min_b_eigenvalue(desc, x)?;
        let nil = is_nilpotent(&x.mat, opts.nil_tol);
        (b.rank, b.rank <= s, nil, min_ev >= -opts.rank_tol * scale.max(1e-300))
    };
    let mut failed = Vec::new();
    if !rank_ok {
        failed.push(format!("rank {rank} > {s}"));
    }
    if !nilpotent_ok {
        failed.push("not nilpotent".into());
    }
    if !nonnegative_ok {
        failed.push("not non-negative".into());
    }
    Ok(ClosureReport {
        s,
        rank,
        rank_ok,
        nilpotent_ok,
        nonnegative_ok,
        in_closure: failed.is_empty(),
        failed,
        notes,
    })
}

/// Rank of a p⁺ model matrix: matrix rank for sp/u(p,q)/so* (even for so*),
/// and 0/1/2 (zero, nonzero on the quadric, off the quadric) for so(2,q).
pub fn model_rank(w: &PPlusElement, rel_tol: f64) -> usize {
    let s = fro(&w.model);
    if s == 0.0 {
        return 0;
    }
    match w.family {
        Family::So2q { .. } => {
            let f: C64 = w.model.iter().map(|v| v * v).sum();
            if f.norm() <= rel_tol * s * s {
                1
            } else {
                2
            }
        }
        _ => linalg::rank(&w.model, rel_tol, 0.0),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PPlusClosure {
    pub s: usize,
    pub model_rank: usize,
    pub quadric_residual: Option<f64>,
    pub in_closure: bool,
}

pub fn pplus_closure_report(w: &PPlusElement, s: usize, rel_tol: f64) -> PPlusClosure {
    let r = model_rank(w, rel_tol);
    let (bound, quadric) = match w.family {
        Family::SoStar { .. } => (2 * s, None),
        Family::So2q { .. } => {
            let f: C64 = w.model.iter().map(|v| v * v).sum();
            (s, Some(f.norm()))
        }
        _ => (s, None),
    };
    PPlusClosure { s, model_rank: r, quadric_residual: quadric, in_closure: r <= bound }
}

/// Conjugates X by a product of `steps` exponentials exp(ξᵢ), ‖ξᵢ‖ ≤ 0.5.
pub fn random_conjugate(desc: &LieAlgebraDescriptor, x: &LieElement, steps: usize, rng: &mut Rng) -> LieElement {
    let (g, ginv) = random_group_element(desc, steps, rng);
    desc.wrap(&g * &x.mat * &ginv)
}

/// Random g = exp(ξ₁)…exp(ξ_k) and its inverse.
pub fn random_group_element(desc: &LieAlgebraDescriptor, steps: usize, rng: &mut Rng) -> (CMat, CMat) {
    let n = desc.rep_dim;
    let mut g = CMat::identity(n, n);
    let mut ginv = CMat::identity(n, n);
    for _ in 0..steps {
        let r = 0.5 * (0.25 + 0.75 * rand::Rng::random::<f64>(rng));
        let xi = desc.random_element(rng, r);
        g = &g * linalg::expm(&xi.mat);
        ginv = linalg::expm(&(-&xi.mat)) * &ginv;
    }
    (g, ginv)
}

pub fn random_conjugate_seeded(desc: &LieAlgebraDescriptor, x: &LieElement, steps: usize, seed: u64) -> LieElement {
    random_conjugate(desc, x, steps, &mut random::seeded(seed))
}

/// Necessary condition for X ∈ G(2εz): equal characteristic polynomials.
pub fn semisimple_orbit_check(desc: &LieAlgebraDescriptor, x: &LieElement, eps: f64, tol: f64) -> Result<bool> {
    if eps <= 0.0 {
        return Err(OrbitError::InvalidParams("ε must be positive".into()));
    }
    let a = linalg::char_poly(&x.mat.scale(1.0 / eps));
    let b = linalg::char_poly(&desc.z.scale(2.0));
    let worst = a.iter().zip(&b).map(|(p, q)| (p - q).norm()).fold(0.0, f64::max);
    let scale = b.iter().map(|v| v.norm()).fold(1.0, f64::max);
    Ok(worst <= tol * scale)
}

/// Residual ‖X^k‖ relative to ‖X‖^k.
pub fn power_residual(x: &CMat, k: u32) -> f64 {
    let s = max_abs(x);
    if s == 0.0 {
        return 0.0;
    }
    let xs = x.scale(1.0 / s);
    let mut p = xs.clone();
    for _ in 1..k {
        p = &p * &xs;
    }
    max_abs(&p)
}
