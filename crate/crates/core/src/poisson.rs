//! Lie–Poisson brackets of linear functions under the half-trace pairing,
//! p⁺ polarization checks, and the ε-contraction model of sl(2,ℝ).

use nalgebra::DMatrix;

use crate::divalg::{CMat, Tag, C64};
use crate::error::{OrbitError, Result};
use crate::liealg::{Family, LieAlgebraDescriptor, LieElement, PPlusElement};
use crate::linalg::{c, commutator};

/// ½·tr over the base algebra; for ℍ the real trace of the quaternion matrix
/// is half the trace of its complex representation.
pub fn half_trace(desc: &LieAlgebraDescriptor, m: &CMat) -> C64 {
    let f = if desc.base == Tag::H { 0.25 } else { 0.5 };
    m.trace() * f
}

/// Linear coordinate μ_a(ξ) = ½tr(aξ).
pub fn mu(desc: &LieAlgebraDescriptor, a: &CMat, xi: &CMat) -> C64 {
    half_trace(desc, &(a * xi))
}

pub struct PoissonContext {
    pub desc: LieAlgebraDescriptor,
    pub basis: Vec<CMat>,
    /// P_ab = ½tr(b_a b_b).
    pub pairing: DMatrix<f64>,
    pairing_inv: DMatrix<f64>,
    /// c[a][b][k] with [b_a, b_b] = Σ_k c[a][b][k] b_k.
    pub structure: Vec<Vec<Vec<f64>>>,
}

impl PoissonContext {
    pub fn new(desc: &LieAlgebraDescriptor) -> Result<Self> {
        let basis = desc.basis();
        let n = basis.len();
        let pairing = DMatrix::from_fn(n, n, |a, b| half_trace(desc, &(&basis[a] * &basis[b])).re);
        let pairing_inv = pairing
            .clone()
            .try_inverse()
            .ok_or_else(|| OrbitError::Internal("half-trace pairing is degenerate".into()))?;
        let mut ctx = PoissonContext { desc: desc.clone(), basis, pairing, pairing_inv, structure: Vec::new() };
        let mut structure = vec![vec![vec![0.0; n]; n]; n];
        for a in 0..n {
            for b in 0..n {
                let br = commutator(&ctx.basis[a], &ctx.basis[b]);
                structure[a][b] = ctx.coords(&br);
            }
        }
        ctx.structure = structure;
        Ok(ctx)
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Real coordinates of a real element in the basis.
    pub fn coords(&self, x: &CMat) -> Vec<f64> {
        let rhs = nalgebra::DVector::from_iterator(
            self.dim(),
            self.basis.iter().map(|b| half_trace(&self.desc, &(b * x)).re),
        );
        (&self.pairing_inv * rhs).iter().copied().collect()
    }

    /// Complex coordinates of an element of the complexification, via the
    /// real and imaginary parts in the real form (X = x + i·y, x, y ∈ 𝔤).
    pub fn complex_coords(&self, x: &CMat) -> Result<Vec<C64>> {
        let (re, im) = self.split_real_form(x)?;
        Ok(self.coords(&re).iter().zip(self.coords(&im)).map(|(a, b)| c(*a, b)).collect())
    }

    /// Splits an element of 𝔤^ℂ = 𝔤 ⊕ i𝔤 (as complex matrices).
    pub fn split_real_form(&self, x: &CMat) -> Result<(CMat, CMat)> {
        let (re, im) = conj_split(&self.desc, x);
        let tol = 1e-9 * crate::linalg::max_abs(x).max(1.0);
        if self.desc.membership_residual(&re)? > tol || self.desc.membership_residual(&im)? > tol {
            return Err(OrbitError::NotMember { family: format!("{}^C", self.desc.name()), residual: f64::NAN });
        }
        Ok((re, im))
    }

    pub fn element(&self, coords: &[f64]) -> CMat {
        let n = self.desc.rep_dim;
        let mut m = CMat::zeros(n, n);
        for (b, x) in self.basis.iter().zip(coords) {
            m += b.scale(*x);
        }
        m
    }

    /// Σ_e (c_ab^e c_ec^d + c_bc^e c_ea^d + c_ca^e c_eb^d), max abs over a,b,c,d.
    pub fn jacobi_residual(&self) -> f64 {
        let n = self.dim();
        let s = &self.structure;
        let mut worst = 0.0_f64;
        for a in 0..n {
            for b in 0..n {
                for cc in 0..n {
                    for d in 0..n {
                        let mut acc = 0.0;
                        for e in 0..n {
                            acc += s[a][b][e] * s[e][cc][d] + s[b][cc][e] * s[e][a][d] + s[cc][a][e] * s[e][b][d];
                        }
                        worst = worst.max(acc.abs());
                    }
                }
            }
        }
        worst
    }

    pub fn antisymmetry_residual(&self) -> f64 {
        let n = self.dim();
        let mut worst = 0.0_f64;
        for a in 0..n {
            for b in 0..n {
                for k in 0..n {
                    worst = worst.max((self.structure[a][b][k] + self.structure[b][a][k]).abs());
                }
            }
        }
        worst
    }

    /// {μ_a, μ_b}(ξ) evaluated through structure constants, for complex
    /// combinations a, b of the real basis.
    pub fn bracket_via_structure(&self, a: &CMat, b: &CMat, xi: &CMat) -> Result<C64> {
        let ca = self.complex_coords(a)?;
        let cb = self.complex_coords(b)?;
        let mus: Vec<C64> = self.basis.iter().map(|bk| mu(&self.desc, bk, xi)).collect();
        let n = self.dim();
        let mut acc = c(0.0, 0.0);
        for i in 0..n {
            if ca[i] == c(0.0, 0.0) {
                continue;
            }
            for j in 0..n {
                if cb[j] == c(0.0, 0.0) {
                    continue;
                }
                let w = ca[i] * cb[j];
                for k in 0..n {
                    acc += w * self.structure[i][j][k] * mus[k];
                }
            }
        }
        Ok(acc)
    }
}

/// Real/imaginary parts of X ∈ 𝔤^ℂ with respect to the real form 𝔤.
pub fn conj_split(desc: &LieAlgebraDescriptor, x: &CMat) -> (CMat, CMat) {
    let bar = real_form_conj(desc, x);
    let re = (x + &bar).scale(0.5);
    let im = (x - &bar).map(|v| v * c(0.0, -0.5));
    (re, im)
}

/// Conjugation of 𝔤^ℂ fixing 𝔤, in the complex representation. For the
/// families realized by complex matrices over ℝ this is entrywise conjugation;
/// for u(p,q) it is X ↦ −I X* I; for so* it is X ↦ Ω X̄ Ω⁻¹ with
/// Ω = [[0, −I], [I, 0]].
pub fn real_form_conj(desc: &LieAlgebraDescriptor, x: &CMat) -> CMat {
    match desc.family {
        Family::Sp { .. } | Family::So2q { .. } => x.map(|v| v.conj()),
        Family::U { .. } => {
            let ipq = desc.metric.as_ref().unwrap();
            -(ipq * x.adjoint() * ipq)
        }
        Family::SoStar { .. } => {
            let om = desc.j_v.as_ref().unwrap();
            -(om * x.map(|v| v.conj()) * om)
        }
    }
}

/// {μ_a, μ_b}(ξ) = ½tr([a,b]ξ).
pub fn lie_poisson_bracket(desc: &LieAlgebraDescriptor, a: &CMat, b: &CMat, xi: &CMat) -> C64 {
    mu(desc, &commutator(a, b), xi)
}

/// ζ-basis of p⁺: complexified images of the model's standard basis, together
/// with their conjugates.
pub fn pplus_basis(desc: &LieAlgebraDescriptor) -> Result<Vec<(CMat, CMat)>> {
    let (r, cc) = desc.pplus_shape();
    let mut models = Vec::new();
    match desc.family {
        Family::Sp { .. } => {
            for i in 0..r {
                for j in i..r {
                    let mut m = CMat::zeros(r, cc);
                    m[(i, j)] = c(1.0, 0.0);
                    m[(j, i)] = c(1.0, 0.0);
                    models.push(m);
                }
            }
        }
        Family::SoStar { .. } => {
            for i in 0..r {
                for j in (i + 1)..r {
                    let mut m = CMat::zeros(r, cc);
                    m[(i, j)] = c(1.0, 0.0);
                    m[(j, i)] = c(-1.0, 0.0);
                    models.push(m);
                }
            }
        }
        _ => {
            for i in 0..r {
                for j in 0..cc {
                    let mut m = CMat::zeros(r, cc);
                    m[(i, j)] = c(1.0, 0.0);
                    models.push(m);
                }
            }
        }
    }
    models
        .into_iter()
        .map(|m| {
            let x = desc.from_p_plus(&PPlusElement::new(desc.family, m))?;
            let jx = desc.jz(&x.mat);
            let a = &x.mat - jx.map(|v| v * c(0.0, 1.0));
            let abar = &x.mat + jx.map(|v| v * c(0.0, 1.0));
            Ok((a, abar))
        })
        .collect()
}

pub struct PPlusBrackets {
    /// [{ζ_j, ζ_k}(ξ)]
    pub holo: CMat,
    /// [{ζ_j, ζ̄_k}(ξ)]
    pub mixed: CMat,
}

pub fn pplus_bracket_matrix(desc: &LieAlgebraDescriptor, basis: &[(CMat, CMat)], xi: &CMat) -> PPlusBrackets {
    let m = basis.len();
    let holo = CMat::from_fn(m, m, |j, k| lie_poisson_bracket(desc, &basis[j].0, &basis[k].0, xi));
    let mixed = CMat::from_fn(m, m, |j, k| lie_poisson_bracket(desc, &basis[j].0, &basis[k].1, xi));
    PPlusBrackets { holo, mixed }
}

/// Polynomial in linear coordinate functions: Σ coef · Π μ_{f_i}.
#[derive(Clone, Debug, Default)]
pub struct Polynomial {
    pub terms: Vec<(C64, Vec<usize>)>,
}

pub const MAX_POLY_DEGREE: usize = 4;

impl Polynomial {
    pub fn degree(&self) -> usize {
        self.terms.iter().map(|t| t.1.len()).max().unwrap_or(0)
    }
}

/// {μ_a, P}(ξ) by the Leibniz rule from linear brackets.
pub fn bracket_linear_with_poly(
    desc: &LieAlgebraDescriptor,
    a: &CMat,
    fns: &[CMat],
    poly: &Polynomial,
    xi: &CMat,
) -> Result<C64> {
    if poly.degree() > MAX_POLY_DEGREE {
        return Err(OrbitError::Unsupported(format!("polynomial degree above {MAX_POLY_DEGREE}")));
    }
    let vals: Vec<C64> = fns.iter().map(|f| mu(desc, f, xi)).collect();
    let brs: Vec<C64> = fns.iter().map(|f| lie_poisson_bracket(desc, a, f, xi)).collect();
    let mut acc = c(0.0, 0.0);
    for (coef, mono) in &poly.terms {
        for (i, &fi) in mono.iter().enumerate() {
            let mut term = *coef * brs[fi];
            for (j, &fj) in mono.iter().enumerate() {
                if i != j {
                    term *= vals[fj];
                }
            }
            acc += term;
        }
    }
    Ok(acc)
}

/// Elements b₀, b₁, b₂ of sp(1,ℝ) whose half-trace coordinates are x₀, x₁, x₂:
/// x₀ = −μ_{E−F}, x₁ = μ_{E+F}, x₂ = μ_H.
pub fn sl2_coordinate_elements() -> [CMat; 3] {
    let m = |a: f64, b: f64, cc: f64, d: f64| CMat::from_row_slice(2, 2, &[c(a, 0.0), c(b, 0.0), c(cc, 0.0), c(d, 0.0)]);
    [m(0.0, -1.0, 1.0, 0.0), m(0.0, 1.0, 1.0, 0.0), m(1.0, 0.0, 0.0, -1.0)]
}

/// [{x_i, x_j}(ξ)] for the sl(2) coordinates above, and [x₀, x₁, x₂](ξ).
pub fn sl2_bracket_table(xi: &CMat) -> Result<([[f64; 3]; 3], [f64; 3])> {
    let desc = LieAlgebraDescriptor::new(Family::Sp { l: 1 })?;
    let b = sl2_coordinate_elements();
    let mut t = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            t[i][j] = lie_poisson_bracket(&desc, &b[i], &b[j], xi).re;
        }
    }
    let x = [0, 1, 2].map(|i| mu(&desc, &b[i], xi).re);
    Ok((t, x))
}

/// Circle momentum of X, signed so that it is positive on holomorphic orbits.
pub fn s1_energy(desc: &LieAlgebraDescriptor, x: &LieElement) -> f64 {
    desc.energy_sign * half_trace(desc, &(&desc.z * &x.mat)).re
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ContractionModel {
    pub eps: f64,
    /// ±1: upper or lower sheet.
    pub sign: f64,
}

impl ContractionModel {
    pub fn new(eps: f64, sign: f64) -> Result<Self> {
        if eps < 0.0 || eps.is_nan() {
            return Err(OrbitError::InvalidParams("ε must be non-negative".into()));
        }
        Ok(ContractionModel { eps, sign: if sign < 0.0 { -1.0 } else { 1.0 } })
    }
}

/// {x₁, x₂} = x₀ = ±√(ε² + x₁² + x₂²).
pub fn contraction_bracket(m: &ContractionModel, x1: f64, x2: f64) -> f64 {
    m.sign * (m.eps * m.eps + x1 * x1 + x2 * x2).sqrt()
}

/// Metric coefficient 1/√(ε²+|ζ|²) and curvature −ε²/(ε²+|ζ|²)^{5/2}.
pub fn model_metric_and_curvature(m: &ContractionModel, zeta: C64) -> Result<(f64, f64)> {
    let r2 = m.eps * m.eps + zeta.norm_sqr();
    if r2 == 0.0 {
        return Err(OrbitError::Singular("ε = 0 at ζ = 0 (cone vertex)".into()));
    }
    Ok((1.0 / r2.sqrt(), -(m.eps * m.eps) / r2.powf(2.5)))
}

/// (x₁, x₂) ↦ x/(1 + x₀/ε) on the upper sheet.
pub fn stereographic(eps: f64, x1: f64, x2: f64) -> (f64, f64) {
    let x0 = (eps * eps + x1 * x1 + x2 * x2).sqrt();
    let d = 1.0 + x0 / eps;
    (x1 / d, x2 / d)
}

/// ε/4·(1 − r²/ε²)² on the disc r < ε.
pub fn disc_model_bracket(eps: f64, y1: f64, y2: f64) -> Result<f64> {
    if eps <= 0.0 {
        return Err(OrbitError::InvalidParams("ε must be positive".into()));
    }
    let r2 = y1 * y1 + y2 * y2;
    if r2 >= eps * eps {
        return Err(OrbitError::OutsideDomain(format!("y₁²+y₂² = {r2} is not below ε² = {}", eps * eps)));
    }
    let t = 1.0 - r2 / (eps * eps);
    Ok(eps / 4.0 * t * t)
}

fn stereographic_c(eps: f64, x1: C64, x2: C64) -> (C64, C64) {
    let x0 = (x1 * x1 + x2 * x2 + eps * eps).sqrt();
    let d = x0 / eps + 1.0;
    (x1 / d, x2 / d)
}

/// {y₁, y₂} pushed forward from the upper sheet through the stereographic map:
/// det(∂y/∂x)·{x₁, x₂}, with the Jacobian taken by complex-step differentiation.
pub fn stereographic_pushforward_bracket(eps: f64, x1: f64, x2: f64) -> f64 {
    let h = 1e-30;
    let (a1, a2) = stereographic_c(eps, c(x1, h), c(x2, 0.0));
    let (b1, b2) = stereographic_c(eps, c(x1, 0.0), c(x2, h));
    let j = [[a1.im / h, b1.im / h], [a2.im / h, b2.im / h]];
    let det = j[0][0] * j[1][1] - j[0][1] * j[1][0];
    let m = ContractionModel { eps, sign: 1.0 };
    det * contraction_bracket(&m, x1, x2)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sp1_pairing_is_invertible() {
        let d = LieAlgebraDescriptor::new(Family::Sp { l: 1 }).unwrap();
        let ctx = PoissonContext::new(&d).unwrap();
        assert_eq!(ctx.dim(), 3);
        assert!(ctx.jacobi_residual() < 1e-12);
    }

    #[test]
    fn curvature_examples() {
        let m = ContractionModel::new(1.0, 1.0).unwrap();
        assert_eq!(model_metric_and_curvature(&m, c(0.0, 0.0)).unwrap(), (1.0, -1.0));
        let m2 = ContractionModel::new(2.0, 1.0).unwrap();
        assert!((model_metric_and_curvature(&m2, c(0.0, 0.0)).unwrap().1 + 1.0 / 8.0).abs() < 1e-15);
        let m0 = ContractionModel::new(0.0, 1.0).unwrap();
        assert!(model_metric_and_curvature(&m0, c(0.0, 0.0)).is_err());
        assert_eq!(model_metric_and_curvature(&m0, c(0.3, 0.4)).unwrap().1, 0.0);
    }

    #[test]
    fn disc_examples() {
        assert_eq!(disc_model_bracket(1.0, 0.0, 0.0).unwrap(), 0.25);
        assert_eq!(disc_model_bracket(4.0, 0.0, 0.0).unwrap(), 1.0);
        assert!(disc_model_bracket(1.0, 1.0, 0.0).is_err());
    }
}
