//! Commuting H₁-triples, orbit representatives e_{t,u} and Kostant–Sekiguchi
//! elements.
//!
//! sp(ℓ,ℝ) uses κ_k(−E), κ_k(−F), κ_k(H) in the k-th coordinate sl(2). The
//! u(p,q) and so*(2n) triples are images of the sp triples under the standard
//! embeddings (the u(p,q) one composed with complex conjugation so that it sends
//! the H-element of sp(r,ℝ) to that of u(p,q)). so(2,q) has explicit 4×4 blocks.

use serde::{Deserialize, Serialize};

use crate::divalg::{CMat, C64};
use crate::error::{OrbitError, Result};
use crate::liealg::{Family, LieAlgebraDescriptor, LieElement, PPlusElement};
use crate::linalg::{c, commutator, fro, max_abs};

#[derive(Clone, Debug, PartialEq)]
pub struct SL2Triple {
    pub e: LieElement,
    pub f: LieElement,
    pub h: LieElement,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TripleFlags {
    pub sl2: bool,
    pub invariant: bool,
    pub h1: bool,
    /// All three matrices vanish; the identities then hold vacuously.
    pub zero: bool,
    pub sl2_residual: f64,
    pub invariant_residual: f64,
    pub h1_residual: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct OrbitType {
    pub t: usize,
    pub u: usize,
}

impl OrbitType {
    pub fn new(t: usize, u: usize) -> Self {
        OrbitType { t, u }
    }

    pub fn rank(&self) -> usize {
        self.t + self.u
    }

    pub fn signature(&self) -> i64 {
        self.t as i64 - self.u as i64
    }

    pub fn is_holomorphic(&self) -> bool {
        self.u == 0
    }

    pub fn is_antiholomorphic(&self) -> bool {
        self.t == 0
    }

    /// All (t,u) with t+u ≤ r; there are (r+1)(r+2)/2 of them.
    pub fn all(r: usize) -> Vec<OrbitType> {
        let mut v = Vec::new();
        for s in 0..=r {
            for t in (0..=s).rev() {
                v.push(OrbitType::new(t, s - t));
            }
        }
        v
    }
}

impl std::fmt::Display for OrbitType {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({},{})", self.t, self.u)
    }
}

fn real(m: &[&[f64]]) -> CMat {
    CMat::from_fn(m.len(), m[0].len(), |i, j| c(m[i][j], 0.0))
}

/// κ_k: place a 2×2 real matrix in coordinate k of sp(ℓ,ℝ).
fn sp_kappa(l: usize, k: usize, a: f64, b: f64, cc: f64) -> CMat {
    let mut x = CMat::zeros(2 * l, 2 * l);
    x[(k, k)] = c(a, 0.0);
    x[(k, l + k)] = c(b, 0.0);
    x[(l + k, k)] = c(cc, 0.0);
    x[(l + k, l + k)] = c(-a, 0.0);
    x
}

/// (e, f, h) matrices of the k-th standard triple of sp(ℓ,ℝ).
fn sp_triple_mats(l: usize, k: usize) -> [CMat; 3] {
    [sp_kappa(l, k, 0.0, -1.0, 0.0), sp_kappa(l, k, 0.0, 0.0, -1.0), sp_kappa(l, k, 1.0, 0.0, 0.0)]
}

/// Splits X ∈ sp(r,ℝ) as k-part [[A′,B′],[−B′,A′]] plus p-part [[A″,B″],[B″,−A″]].
fn sp_parts(x: &CMat, r: usize) -> (CMat, CMat, CMat, CMat) {
    let a = x.view((0, 0), (r, r)).into_owned();
    let b = x.view((0, r), (r, r)).into_owned();
    let cc = x.view((r, 0), (r, r)).into_owned();
    let a1 = (&a - a.transpose()).scale(0.5);
    let b1 = (&b - &cc).scale(0.5);
    let a2 = (&a + a.transpose()).scale(0.5);
    let b2 = (&b + &cc).scale(0.5);
    (a1, b1, a2, b2)
}

fn embed_u(x: &CMat, p: usize, q: usize) -> CMat {
    let r = p.min(q);
    let (a1, b1, a2, b2) = sp_parts(x, r);
    let i = c(0.0, 1.0);
    let mut y = CMat::zeros(p + q, p + q);
    y.view_mut((0, 0), (r, r)).copy_from(&(&a1 + b1.map(|v| v * i)));
    y.view_mut((0, p), (r, r)).copy_from(&(a2.map(|v| v * i) + &b2));
    y.view_mut((p, 0), (r, r)).copy_from(&(a2.map(|v| -v * i) + &b2));
    y.view_mut((p, p), (r, r)).copy_from(&(&a1 - b1.map(|v| v * i)));
    y.map(|v| v.conj())
}

fn embed_sostar(x: &CMat, n: usize) -> CMat {
    let l = n / 2;
    let (a1, b1, a2, b2) = sp_parts(x, l);
    let i = c(0.0, 1.0);
    let mut u = CMat::zeros(n, n);
    let mut v = CMat::zeros(n, n);
    u.view_mut((0, 0), (l, l)).copy_from(&a1);
    u.view_mut((0, l), (l, l)).copy_from(&b2.map(|t| t * i));
    u.view_mut((l, 0), (l, l)).copy_from(&b2.map(|t| -t * i));
    u.view_mut((l, l), (l, l)).copy_from(&a1);
    v.view_mut((0, 0), (l, l)).copy_from(&(-&b1));
    v.view_mut((0, l), (l, l)).copy_from(&a2.map(|t| t * i));
    v.view_mut((l, 0), (l, l)).copy_from(&a2.map(|t| -t * i));
    v.view_mut((l, l), (l, l)).copy_from(&(-&b1));
    let mut y = CMat::zeros(2 * n, 2 * n);
    y.view_mut((0, 0), (n, n)).copy_from(&u);
    y.view_mut((0, n), (n, n)).copy_from(&(-&v));
    y.view_mut((n, 0), (n, n)).copy_from(&v.map(|t| t.conj()));
    y.view_mut((n, n), (n, n)).copy_from(&u.map(|t| t.conj()));
    y
}

/// The 4×4 generators of so(2,2) ⊂ so(2,q): X, Y, A₁, A₂, B₁, B₂.
pub struct So22Generators {
    pub x: CMat,
    pub y: CMat,
    pub a1: CMat,
    pub a2: CMat,
    pub b1: CMat,
    pub b2: CMat,
}

pub fn so22_generators(q: usize) -> So22Generators {
    let n = q + 2;
    let pad = |m: CMat| {
        let mut out = CMat::zeros(n, n);
        out.view_mut((0, 0), (4, 4)).copy_from(&m);
        out
    };
    So22Generators {
        x: pad(real(&[&[0., 1., 0., 0.], &[-1., 0., 0., 0.], &[0., 0., 0., 1.], &[0., 0., -1., 0.]])),
        y: pad(real(&[&[0., 1., 0., 0.], &[-1., 0., 0., 0.], &[0., 0., 0., -1.], &[0., 0., 1., 0.]])),
        a1: pad(real(&[&[0., 0., 1., 0.], &[0., 0., 0., -1.], &[1., 0., 0., 0.], &[0., -1., 0., 0.]])),
        a2: pad(real(&[&[0., 0., 0., 1.], &[0., 0., 1., 0.], &[0., 1., 0., 0.], &[1., 0., 0., 0.]])),
        b1: pad(real(&[&[0., 0., 0., 1.], &[0., 0., -1., 0.], &[0., -1., 0., 0.], &[1., 0., 0., 0.]])),
        b2: pad(real(&[&[0., 0., 1., 0.], &[0., 0., 0., 1.], &[1., 0., 0., 0.], &[0., 1., 0., 0.]])),
    }
}

pub fn standard_triples(desc: &LieAlgebraDescriptor) -> Vec<SL2Triple> {
    let wrap = |[e, f, h]: [CMat; 3]| SL2Triple { e: desc.wrap(e), f: desc.wrap(f), h: desc.wrap(h) };
    match desc.family {
        Family::Sp { l } => (0..l).map(|k| wrap(sp_triple_mats(l, k))).collect(),
        Family::U { p, q } => {
            let r = p.min(q);
            (0..r).map(|k| wrap(sp_triple_mats(r, k).map(|m| embed_u(&m, p, q)))).collect()
        }
        Family::SoStar { n } => {
            let l = n / 2;
            (0..l).map(|k| wrap(sp_triple_mats(l, k).map(|m| embed_sostar(&m, n)))).collect()
        }
        Family::So2q { q } => {
            let g = so22_generators(q);
            let half = |m: CMat| m.scale(0.5);
            vec![
                wrap([half(&g.a2 + &g.x), half(&g.a2 - &g.x), g.a1.clone()]),
                wrap([half(&g.b2 + &g.y), half(&g.b2 - &g.y), g.b1.clone()]),
            ]
        }
    }
}

pub fn check_triple(desc: &LieAlgebraDescriptor, e: &LieElement, f: &LieElement, h: &LieElement, tol: f64) -> TripleFlags {
    check_triple_with_z(desc, e, f, h, &desc.z, tol)
}

/// Same as `check_triple` but against an arbitrary H-element candidate.
pub fn check_triple_with_z(
    desc: &LieAlgebraDescriptor,
    e: &LieElement,
    f: &LieElement,
    h: &LieElement,
    z: &CMat,
    tol: f64,
) -> TripleFlags {
    let (e, f, h) = (&e.mat, &f.mat, &h.mat);
    let scale = max_abs(e).max(max_abs(f)).max(max_abs(h)).max(1.0);
    let sl2 = max_abs(&(commutator(h, e) - e.scale(2.0)))
        .max(max_abs(&(commutator(h, f) + f.scale(2.0))))
        .max(max_abs(&(commutator(e, f) - h)));
    let invariant = max_abs(&desc.proj_p(&(e - f)))
        .max(max_abs(&desc.proj_k(&(e + f))))
        .max(max_abs(&desc.proj_k(h)));
    let ef = e + f;
    let h1 = max_abs(&(commutator(z, &ef) - h)).max(max_abs(&(commutator(z, h) + &ef)));
    let ok = |r: f64| r <= tol * scale * scale;
    TripleFlags {
        sl2: ok(sl2),
        invariant: ok(invariant),
        h1: ok(h1),
        zero: max_abs(e) == 0.0 && max_abs(f) == 0.0 && max_abs(h) == 0.0,
        sl2_residual: sl2,
        invariant_residual: invariant,
        h1_residual: h1,
    }
}

/// Max over j ≠ k of ‖[x_j, y_k]‖ for x, y ∈ {e, f, h}.
pub fn max_cross_commutator(triples: &[SL2Triple]) -> f64 {
    let mut worst = 0.0_f64;
    for (j, a) in triples.iter().enumerate() {
        for (k, b) in triples.iter().enumerate() {
            if j == k {
                continue;
            }
            for x in [&a.e, &a.f, &a.h] {
                for y in [&b.e, &b.f, &b.h] {
                    worst = worst.max(max_abs(&commutator(&x.mat, &y.mat)));
                }
            }
        }
    }
    worst
}

/// e_{t,u} = e₁ + … + e_t − e_{t+1} − … − e_{t+u}.
pub fn orbit_rep(desc: &LieAlgebraDescriptor, t: usize, u: usize) -> Result<LieElement> {
    if t + u > desc.split_rank {
        return Err(OrbitError::InvalidParams(format!(
            "type ({t},{u}) needs t+u ≤ {} in {}",
            desc.split_rank,
            desc.name()
        )));
    }
    let triples = standard_triples(desc);
    let mut m = CMat::zeros(desc.rep_dim, desc.rep_dim);
    for (k, tr) in triples.iter().enumerate().take(t + u) {
        if k < t {
            m += &tr.e.mat;
        } else {
            m -= &tr.e.mat;
        }
    }
    Ok(desc.wrap(m))
}

/// Sums e^s, f^s, h^s over the first s standard triples.
pub fn partial_triple(desc: &LieAlgebraDescriptor, s: usize) -> Result<SL2Triple> {
    if s > desc.split_rank {
        return Err(OrbitError::InvalidParams(format!("s = {s} exceeds split rank {}", desc.split_rank)));
    }
    let mut acc = SL2Triple { e: desc.zero(), f: desc.zero(), h: desc.zero() };
    for tr in standard_triples(desc).iter().take(s) {
        acc.e = acc.e.add(&tr.e);
        acc.f = acc.f.add(&tr.f);
        acc.h = acc.h.add(&tr.h);
    }
    Ok(acc)
}

/// Model image of x = ½(e + f − i·h).
pub fn ks_from_triple(desc: &LieAlgebraDescriptor, tr: &SL2Triple) -> PPlusElement {
    let x = (&tr.e.mat + &tr.f.mat - tr.h.mat.map(|v| v * C64::new(0.0, 1.0))).scale(0.5);
    desc.pplus_from_complexified(&x)
}

pub fn ks_element(desc: &LieAlgebraDescriptor, s: usize) -> Result<PPlusElement> {
    Ok(ks_from_triple(desc, &partial_triple(desc, s)?))
}

/// Residual of ½(e+f−ih) lying in p⁺ (its p-component reproduces it).
pub fn ks_pplus_residual(desc: &LieAlgebraDescriptor, tr: &SL2Triple) -> f64 {
    let x = (&tr.e.mat + &tr.f.mat - tr.h.mat.map(|v| v * C64::new(0.0, 1.0))).scale(0.5);
    let xp = desc.proj_p(&tr.e.mat);
    let p = &xp - desc.jz(&xp).map(|v| v * C64::new(0.0, 1.0));
    fro(&(x - p))
}
