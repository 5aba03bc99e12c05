//! The classical hermitian families sp(ℓ,ℝ), u(p,q), so*(2n), so(2,q) as
//! matrix algebras, with Cartan decomposition and the identification p → p⁺.
//!
//! Every element is carried as its faithful complex matrix: real entries are
//! embedded, quaternionic n×n matrices become 2n×2n via `QuatMatrix::complex_rep`.

use std::fmt;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::divalg::{CMat, DAMatrix, Quat, QuatMatrix, Tag, C64};
use crate::error::{OrbitError, Result};
use crate::linalg::{self, c, commutator, max_abs, Inertia};
use crate::random::{self, Rng};

pub const DEFAULT_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    Sp { l: usize },
    U { p: usize, q: usize },
    SoStar { n: usize },
    So2q { q: usize },
}

impl Family {
    /// Parses a CLI/JSON family name and its size parameters.
    pub fn parse(name: &str, params: &[usize]) -> Result<Family> {
        let want = |k: usize| -> Result<()> {
            if params.len() != k {
                return Err(OrbitError::InvalidParams(format!(
                    "{name} takes {k} parameter(s), got {}",
                    params.len()
                )));
            }
            Ok(())
        };
        match name {
            "sp" => {
                want(1)?;
                Ok(Family::Sp { l: params[0] })
            }
            "u" | "su" => {
                want(2)?;
                Ok(Family::U { p: params[0], q: params[1] })
            }
            "sostar" | "so*" => {
                want(1)?;
                Ok(Family::SoStar { n: params[0] })
            }
            "so2q" => {
                want(1)?;
                Ok(Family::So2q { q: params[0] })
            }
            _ => Err(OrbitError::InvalidParams(format!("unknown family {name:?}"))),
        }
    }

    pub fn key(&self) -> &'static str {
        match self {
            Family::Sp { .. } => "sp",
            Family::U { .. } => "u",
            Family::SoStar { .. } => "sostar",
            Family::So2q { .. } => "so2q",
        }
    }

    pub fn params(&self) -> Vec<usize> {
        match *self {
            Family::Sp { l } => vec![l],
            Family::U { p, q } => vec![p, q],
            Family::SoStar { n } => vec![n],
            Family::So2q { q } => vec![q],
        }
    }

    pub fn is_standard(&self) -> bool {
        !matches!(self, Family::So2q { .. })
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Family::Sp { l } => write!(f, "sp({l},R)"),
            Family::U { p, q } => write!(f, "u({p},{q})"),
            Family::SoStar { n } => write!(f, "so*({})", 2 * n),
            Family::So2q { q } => write!(f, "so(2,{q})"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct LieAlgebraDescriptor {
    pub family: Family,
    pub base: Tag,
    /// Matrix size over the base algebra.
    pub n: usize,
    /// Size of the complex representation (2n for ℍ).
    pub rep_dim: usize,
    pub split_rank: usize,
    pub dim: usize,
    /// Complex representation of J_V; absent for so(2,q).
    pub j_v: Option<CMat>,
    /// Hermitian/Lorentz metric: I_{p,q} for u(p,q), G for so(2,q).
    pub metric: Option<CMat>,
    pub z: CMat,
    /// Cartan involution is X ↦ C X C⁻¹ with this C.
    cartan: CMat,
    cartan_inv: CMat,
    /// Scalar applied when reading the p⁺ model off a complexified matrix.
    pub pplus_calibration: C64,
    /// Multiplies ½tr(zX) so that the circle momentum is positive on holomorphic orbits.
    pub energy_sign: f64,
}

fn sp_j(l: usize) -> CMat {
    let mut j = CMat::zeros(2 * l, 2 * l);
    for k in 0..l {
        j[(k, l + k)] = c(-1.0, 0.0);
        j[(l + k, k)] = c(1.0, 0.0);
    }
    j
}

pub fn make_algebra(family: Family) -> Result<LieAlgebraDescriptor> {
    LieAlgebraDescriptor::new(family)
}

impl LieAlgebraDescriptor {
    pub fn new(family: Family) -> Result<Self> {
        let bad = |m: &str| Err(OrbitError::InvalidParams(format!("{family}: {m}")));
        match family {
            Family::Sp { l } => {
                if l == 0 {
                    return bad("ℓ must be positive");
                }
                let j = sp_j(l);
                Ok(Self::standard(family, Tag::R, 2 * l, l, 2 * l * l + l, j, None, c(0.0, 1.0)))
            }
            Family::U { p, q } => {
                if p == 0 || q == 0 {
                    return bad("p and q must be positive");
                }
                let ipq = CMat::from_fn(p + q, p + q, |i, k| {
                    if i != k {
                        c(0.0, 0.0)
                    } else if i < p {
                        c(1.0, 0.0)
                    } else {
                        c(-1.0, 0.0)
                    }
                });
                let j = ipq.map(|x| x * c(0.0, 1.0));
                let n = p + q;
                Ok(Self::standard(family, Tag::C, n, p.min(q), n * n, j, Some(ipq), c(-1.0, 0.0)))
            }
            Family::SoStar { n } => {
                if n == 0 {
                    return bad("n must be positive");
                }
                let j = QuatMatrix::from_fn(n, n, |i, k| if i == k { Quat::J } else { Quat::default() })
                    .complex_rep();
                Ok(Self::standard(family, Tag::H, n, n / 2, n * (2 * n - 1), j, None, c(-1.0, 0.0)))
            }
            Family::So2q { q } => {
                if q < 2 {
                    return bad("q must be at least 2");
                }
                let n = q + 2;
                let g = CMat::from_fn(n, n, |i, k| {
                    if i != k {
                        c(0.0, 0.0)
                    } else if i < 2 {
                        c(1.0, 0.0)
                    } else {
                        c(-1.0, 0.0)
                    }
                });
                let mut z = CMat::zeros(n, n);
                z[(0, 1)] = c(1.0, 0.0);
                z[(1, 0)] = c(-1.0, 0.0);
                Ok(LieAlgebraDescriptor {
                    family,
                    base: Tag::R,
                    n,
                    rep_dim: n,
                    split_rank: 2,
                    dim: (q + 2) * (q + 1) / 2,
                    j_v: None,
                    metric: Some(g.clone()),
                    z,
                    cartan: g.clone(),
                    cartan_inv: g,
                    pplus_calibration: c(-1.0, 0.0),
                    energy_sign: -1.0,
                })
            }
        }
    }

    #[allow(clippy::too_many_arguments)]
    fn standard(
        family: Family,
        base: Tag,
        n: usize,
        r: usize,
        dim: usize,
        j: CMat,
        metric: Option<CMat>,
        calib: C64,
    ) -> Self {
        let rep_dim = j.nrows();
        LieAlgebraDescriptor {
            family,
            base,
            n,
            rep_dim,
            split_rank: r,
            dim,
            z: j.scale(0.5),
            cartan_inv: -&j,
            cartan: j.clone(),
            j_v: Some(j),
            metric,
            pplus_calibration: calib,
            energy_sign: -1.0,
        }
    }

    pub fn name(&self) -> String {
        self.family.to_string()
    }

    /// Multiplier turning complex-rep ranks into ranks over the base algebra.
    pub fn rank_divisor(&self) -> usize {
        if self.base == Tag::H {
            2
        } else {
            1
        }
    }

    /// Max deviation from the family's block equations.
    pub fn membership_residual(&self, m: &CMat) -> Result<f64> {
        if m.shape() != (self.rep_dim, self.rep_dim) {
            return Err(OrbitError::Shape {
                expected: format!("{0}x{0}", self.rep_dim),
                got: format!("{}x{}", m.nrows(), m.ncols()),
            });
        }
        let blk = |r0: usize, c0: usize, r: usize, cc: usize| m.view((r0, c0), (r, cc)).into_owned();
        let imag = || m.iter().fold(0.0_f64, |a, z| a.max(z.im.abs()));
        let res = match self.family {
            Family::Sp { l } => {
                let (a, b) = (blk(0, 0, l, l), blk(0, l, l, l));
                let (cc, d) = (blk(l, 0, l, l), blk(l, l, l, l));
                max_abs(&(d + a.transpose()))
                    .max(max_abs(&(&b - b.transpose())))
                    .max(max_abs(&(&cc - cc.transpose())))
                    .max(imag())
            }
            Family::U { p, q } => {
                let (a, b) = (blk(0, 0, p, p), blk(0, p, p, q));
                let (cc, d) = (blk(p, 0, q, p), blk(p, p, q, q));
                max_abs(&(&a + a.adjoint()))
                    .max(max_abs(&(&d + d.adjoint())))
                    .max(max_abs(&(cc - b.adjoint())))
            }
            Family::SoStar { n } => {
                let a = blk(0, 0, n, n);
                let b = -blk(0, n, n, n);
                let pattern = max_abs(&(blk(n, 0, n, n) - b.map(|z| z.conj())))
                    .max(max_abs(&(blk(n, n, n, n) - a.map(|z| z.conj()))));
                pattern
                    .max(max_abs(&(&a + a.transpose())))
                    .max(max_abs(&(&b - b.adjoint())))
            }
            Family::So2q { q } => {
                let (a, b) = (blk(0, 0, 2, 2), blk(0, 2, 2, q));
                let (cc, d) = (blk(2, 0, q, 2), blk(2, 2, q, q));
                max_abs(&(&a + a.transpose()))
                    .max(max_abs(&(&d + d.transpose())))
                    .max(max_abs(&(cc - b.transpose())))
                    .max(imag())
            }
        };
        Ok(res)
    }

    pub fn contains_rep(&self, m: &CMat, tol: f64) -> Result<bool> {
        let r = self.membership_residual(m)?;
        Ok(r <= tol * max_abs(m).max(1.0))
    }

    pub fn contains(&self, m: &DAMatrix, tol: f64) -> Result<bool> {
        if m.tag() != self.base {
            return Err(OrbitError::TagMismatch(self.base, m.tag()));
        }
        if m.rows() != self.n || m.cols() != self.n {
            return Err(OrbitError::Shape {
                expected: format!("{0}x{0}", self.n),
                got: format!("{}x{}", m.rows(), m.cols()),
            });
        }
        self.contains_rep(&m.to_complex(), tol)
    }

    pub fn element(&self, m: &DAMatrix, tol: f64) -> Result<LieElement> {
        if !self.contains(m, tol)? {
            return Err(OrbitError::NotMember {
                family: self.name(),
                residual: self.membership_residual(&m.to_complex())?,
            });
        }
        Ok(LieElement { family: self.family, mat: m.to_complex() })
    }

    pub fn element_from_rep(&self, m: CMat, tol: f64) -> Result<LieElement> {
        if !self.contains_rep(&m, tol)? {
            return Err(OrbitError::NotMember { family: self.name(), residual: self.membership_residual(&m)? });
        }
        Ok(LieElement { family: self.family, mat: m })
    }

    /// Wraps a matrix built by construction (no membership check).
    pub fn wrap(&self, m: CMat) -> LieElement {
        LieElement { family: self.family, mat: m }
    }

    pub fn zero(&self) -> LieElement {
        self.wrap(CMat::zeros(self.rep_dim, self.rep_dim))
    }

    pub fn z_element(&self) -> LieElement {
        self.wrap(self.z.clone())
    }

    fn check(&self, x: &LieElement) -> Result<()> {
        if x.family != self.family {
            return Err(OrbitError::DescriptorMismatch(self.name(), x.family.to_string()));
        }
        Ok(())
    }

    pub fn theta(&self, m: &CMat) -> CMat {
        &self.cartan * m * &self.cartan_inv
    }

    pub fn cartan_split(&self, x: &LieElement) -> Result<(LieElement, LieElement)> {
        self.check(x)?;
        if !self.contains_rep(&x.mat, 1e-8)? {
            return Err(OrbitError::NotMember { family: self.name(), residual: self.membership_residual(&x.mat)? });
        }
        Ok(self.cartan_split_unchecked(&x.mat))
    }

    pub fn cartan_split_unchecked(&self, m: &CMat) -> (LieElement, LieElement) {
        let t = self.theta(m);
        let k = (m + &t).scale(0.5);
        let p = m - &k;
        (self.wrap(k), self.wrap(p))
    }

    pub fn proj_p(&self, m: &CMat) -> CMat {
        (m - self.theta(m)).scale(0.5)
    }

    pub fn proj_k(&self, m: &CMat) -> CMat {
        (m + self.theta(m)).scale(0.5)
    }

    /// Complex structure J_z = ad z on p (left multiplication by J_V for the
    /// standard families).
    pub fn jz(&self, m: &CMat) -> CMat {
        commutator(&self.z, m)
    }

    pub fn bracket(&self, x: &LieElement, y: &LieElement) -> Result<LieElement> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.wrap(commutator(&x.mat, &y.mat)))
    }

    /// −J_V·X with its rank and signature over the base algebra.
    pub fn b_x_form(&self, x: &LieElement, rel_tol: f64) -> Result<BForm> {
        self.check(x)?;
        let j = self
            .j_v
            .as_ref()
            .ok_or_else(|| OrbitError::Unsupported(format!("no B_X form on {}", self.name())))?;
        let form = -(j * &x.mat);
        let floor = 1e-13 * max_abs(&x.mat).max(1e-300);
        let inertia = linalg::inertia(&form, rel_tol, floor);
        let d = self.rank_divisor();
        Ok(BForm {
            hermitian_residual: max_abs(&(&form - form.adjoint())),
            form,
            rank: inertia.rank() / d,
            signature: inertia.signature() / d as i64,
            inertia,
        })
    }

    /// w ↦ w − i·J_z w, read into the family's model of p⁺.
    pub fn to_p_plus(&self, x_p: &LieElement) -> Result<PPlusElement> {
        self.check(x_p)?;
        let pc = &x_p.mat - self.jz(&x_p.mat).map(|v| v * c(0.0, 1.0));
        Ok(self.pplus_from_complexified(&pc))
    }

    /// Reads the p⁺ model off an element of the complexification that lies in p⁺.
    pub fn pplus_from_complexified(&self, pc: &CMat) -> PPlusElement {
        let k = self.pplus_calibration;
        let model = match self.family {
            Family::Sp { l } => pc.view((0, 0), (l, l)).map(|v| v * k),
            Family::U { p, q } => pc.view((0, p), (p, q)).transpose().map(|v| v * k),
            Family::SoStar { n } => pc.view((0, n), (n, n)).map(|v| v * k),
            Family::So2q { q } => pc.view((0, 2), (1, q)).transpose().map(|v| v * k),
        };
        PPlusElement { family: self.family, model }
    }

    /// Complexified p⁺ element w − i·J_z w from a model matrix.
    pub fn pplus_to_complexified(&self, w: &PPlusElement) -> Result<CMat> {
        let x = self.from_p_plus(w)?;
        Ok(&x.mat - self.jz(&x.mat).map(|v| v * c(0.0, 1.0)))
    }

    pub fn pplus_shape(&self) -> (usize, usize) {
        match self.family {
            Family::Sp { l } => (l, l),
            Family::U { p, q } => (q, p),
            Family::SoStar { n } => (n, n),
            Family::So2q { q } => (q, 1),
        }
    }

    pub fn from_p_plus(&self, w: &PPlusElement) -> Result<LieElement> {
        if w.family != self.family || w.model.shape() != self.pplus_shape() {
            return Err(OrbitError::Shape {
                expected: format!("{:?} model for {}", self.pplus_shape(), self.name()),
                got: format!("{:?}", w.model.shape()),
            });
        }
        let zm = w.model.map(|v| v / self.pplus_calibration);
        let n = self.rep_dim;
        let mut m = CMat::zeros(n, n);
        match self.family {
            Family::Sp { l } => {
                let s = zm.map(|v| c(v.re, 0.0));
                let t = zm.map(|v| c(v.im, 0.0));
                m.view_mut((0, 0), (l, l)).copy_from(&s);
                m.view_mut((0, l), (l, l)).copy_from(&t);
                m.view_mut((l, 0), (l, l)).copy_from(&t);
                m.view_mut((l, l), (l, l)).copy_from(&(-&s));
            }
            Family::U { p, q } => {
                let b = zm.transpose().scale(0.5);
                m.view_mut((0, p), (p, q)).copy_from(&b);
                m.view_mut((p, 0), (q, p)).copy_from(&b.adjoint());
            }
            Family::SoStar { n: k } => {
                // Z = V − iW with V, W real antisymmetric
                let iv = zm.map(|v| c(0.0, v.re));
                let iw = zm.map(|v| c(0.0, -v.im));
                m.view_mut((0, 0), (k, k)).copy_from(&iv);
                m.view_mut((0, k), (k, k)).copy_from(&(-&iw));
                m.view_mut((k, 0), (k, k)).copy_from(&(-&iw));
                m.view_mut((k, k), (k, k)).copy_from(&(-&iv));
            }
            Family::So2q { q } => {
                for j in 0..q {
                    let v = zm[(j, 0)];
                    let (x, y) = (v.re, -v.im);
                    m[(0, 2 + j)] = c(x, 0.0);
                    m[(1, 2 + j)] = c(y, 0.0);
                    m[(2 + j, 0)] = c(x, 0.0);
                    m[(2 + j, 1)] = c(y, 0.0);
                }
            }
        }
        Ok(self.wrap(m))
    }

    /// Real basis of 𝔤: X = −J_V·H over a basis of hermitian H (standard
    /// families), X = G·S over real antisymmetric S for so(2,q).
    pub fn basis(&self) -> Vec<CMat> {
        let mut out = Vec::with_capacity(self.dim);
        match self.family {
            Family::So2q { .. } => {
                let g = self.metric.as_ref().unwrap();
                let n = self.n;
                for i in 0..n {
                    for j in (i + 1)..n {
                        let mut s = CMat::zeros(n, n);
                        s[(i, j)] = c(1.0, 0.0);
                        s[(j, i)] = c(-1.0, 0.0);
                        out.push(g * s);
                    }
                }
            }
            _ => {
                let j = self.j_v.as_ref().unwrap();
                for h in hermitian_basis(self.base, self.n) {
                    out.push(-(j * h));
                }
            }
        }
        out
    }

    /// Gaussian combination of the basis, rescaled to Frobenius norm `scale`.
    pub fn random_element(&self, rng: &mut Rng, scale: f64) -> LieElement {
        let mut m = CMat::zeros(self.rep_dim, self.rep_dim);
        for b in self.basis() {
            m += b.scale(random::gauss(rng));
        }
        let f = linalg::fro(&m);
        if f > 0.0 {
            m.scale_mut(scale / f);
        }
        self.wrap(m)
    }

    pub fn to_damatrix(&self, x: &LieElement) -> Result<DAMatrix> {
        DAMatrix::from_complex(self.base, &x.mat, 1e-9)
    }

    pub fn element_to_json(&self, x: &LieElement) -> Result<Value> {
        Ok(json!({
            "family": self.family.key(),
            "params": self.family.params(),
            "matrix": self.to_damatrix(x)?.to_json(),
        }))
    }

    pub fn element_from_json(&self, v: &Value, tol: f64) -> Result<LieElement> {
        let m = v.get("matrix").unwrap_or(v);
        self.element(&DAMatrix::from_json(m)?, tol)
    }
}

/// Real basis of hermitian n×n matrices over `tag`, as complex representations.
fn hermitian_basis(tag: Tag, n: usize) -> Vec<CMat> {
    let mut out = Vec::new();
    let units: &[Quat] = match tag {
        Tag::R => &[Quat::ONE],
        Tag::C => &[Quat::ONE, Quat::I],
        _ => &[Quat::ONE, Quat::I, Quat::J, Quat::K],
    };
    let embed = |i: usize, j: usize, q: Quat| -> CMat {
        let m = QuatMatrix::from_fn(n, n, |a, b| {
            if (a, b) == (i, j) {
                q
            } else if (a, b) == (j, i) {
                q.conj()
            } else {
                Quat::default()
            }
        });
        match tag {
            Tag::H => m.complex_rep(),
            _ => m.a.clone(),
        }
    };
    for i in 0..n {
        out.push(embed(i, i, Quat::ONE));
        for j in (i + 1)..n {
            for &u in units {
                out.push(embed(i, j, u));
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq)]
pub struct LieElement {
    pub family: Family,
    /// Faithful complex representation.
    pub mat: CMat,
}

impl LieElement {
    pub fn scale(&self, s: f64) -> LieElement {
        LieElement { family: self.family, mat: self.mat.scale(s) }
    }

    pub fn add(&self, o: &LieElement) -> LieElement {
        LieElement { family: self.family, mat: &self.mat + &o.mat }
    }

    pub fn sub(&self, o: &LieElement) -> LieElement {
        LieElement { family: self.family, mat: &self.mat - &o.mat }
    }

    pub fn norm(&self) -> f64 {
        linalg::fro(&self.mat)
    }
}

#[derive(Clone, Debug)]
pub struct BForm {
    pub form: CMat,
    pub hermitian_residual: f64,
    pub rank: usize,
    pub signature: i64,
    pub inertia: Inertia,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PPlusElement {
    pub family: Family,
    /// Model matrix (q×1 column for so(2,q)).
    pub model: CMat,
}

impl PPlusElement {
    pub fn new(family: Family, model: CMat) -> Self {
        PPlusElement { family, model }
    }

    /// Deviation from the model's symmetry constraint.
    pub fn shape_residual(&self) -> f64 {
        match self.family {
            Family::Sp { .. } => max_abs(&(&self.model - self.model.transpose())),
            Family::SoStar { .. } => max_abs(&(&self.model + self.model.transpose())),
            _ => 0.0,
        }
    }

    pub fn scale(&self, s: C64) -> PPlusElement {
        PPlusElement { family: self.family, model: self.model.map(|v| v * s) }
    }

    pub fn to_json(&self) -> Value {
        let rows: Vec<Value> = self
            .model
            .row_iter()
            .map(|r| Value::Array(r.iter().map(|z| json!([z.re + 0.0, z.im + 0.0])).collect()))
            .collect();
        json!({ "family": self.family.key(), "params": self.family.params(), "model": rows })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn families() -> Vec<Family> {
        vec![
            Family::Sp { l: 1 },
            Family::Sp { l: 3 },
            Family::U { p: 2, q: 1 },
            Family::U { p: 1, q: 3 },
            Family::SoStar { n: 3 },
            Family::SoStar { n: 4 },
            Family::So2q { q: 3 },
        ]
    }

    #[test]
    fn basis_has_the_stated_dimension_and_is_inside() {
        for f in families() {
            let d = LieAlgebraDescriptor::new(f).unwrap();
            let b = d.basis();
            assert_eq!(b.len(), d.dim, "{f}");
            for x in &b {
                assert!(d.contains_rep(x, 1e-12).unwrap(), "{f}");
            }
            assert!(d.contains_rep(&d.z, 1e-12).unwrap(), "{f}");
        }
    }

    #[test]
    fn j_v_squares_to_minus_one() {
        for f in families().into_iter().filter(Family::is_standard) {
            let d = LieAlgebraDescriptor::new(f).unwrap();
            let j = d.j_v.as_ref().unwrap();
            let id = CMat::identity(d.rep_dim, d.rep_dim);
            assert!(max_abs(&(j * j + id)) < 1e-15);
        }
    }

    #[test]
    fn membership_matches_hermitian_criterion() {
        // independent check: X ∈ 𝔤 ⇔ J_V X hermitian (standard families)
        let mut rng = random::seeded(3);
        for f in families().into_iter().filter(Family::is_standard) {
            let d = LieAlgebraDescriptor::new(f).unwrap();
            let x = d.random_element(&mut rng, 1.0);
            let jx = d.j_v.as_ref().unwrap() * &x.mat;
            assert!(max_abs(&(&jx - jx.adjoint())) < 1e-12);
        }
    }

    #[test]
    fn sp_cartan_blocks() {
        let d = LieAlgebraDescriptor::new(Family::Sp { l: 1 }).unwrap();
        // [[a, b], [c, −a]] → k-part [[0, (b−c)/2], [(c−b)/2, 0]]
        let x = d.wrap(CMat::from_row_slice(2, 2, &[c(1.0, 0.0), c(2.0, 0.0), c(5.0, 0.0), c(-1.0, 0.0)]));
        let (k, p) = d.cartan_split(&x).unwrap();
        let want = CMat::from_row_slice(2, 2, &[c(0.0, 0.0), c(-1.5, 0.0), c(1.5, 0.0), c(0.0, 0.0)]);
        assert!(max_abs(&(&k.mat - want)) < 1e-15);
        assert!(max_abs(&(&k.mat + &p.mat - &x.mat)) == 0.0);
    }

    #[test]
    fn pplus_round_trip() {
        let mut rng = random::seeded(5);
        for f in families() {
            let d = LieAlgebraDescriptor::new(f).unwrap();
            let x = d.random_element(&mut rng, 1.0);
            let xp = d.wrap(d.proj_p(&x.mat));
            let w = d.to_p_plus(&xp).unwrap();
            assert!(w.shape_residual() < 1e-12, "{f}");
            let back = d.from_p_plus(&w).unwrap();
            assert!(max_abs(&(&back.mat - &xp.mat)) < 1e-12, "{f}");
        }
    }

    #[test]
    fn invalid_params() {
        assert!(LieAlgebraDescriptor::new(Family::So2q { q: 1 }).is_err());
        assert!(LieAlgebraDescriptor::new(Family::Sp { l: 0 }).is_err());
        assert!(Family::parse("sp", &[1, 2]).is_err());
    }
}
