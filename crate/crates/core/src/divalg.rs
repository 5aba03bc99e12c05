//! Division-algebra tower R ⊂ C ⊂ H ⊂ O, complexified octonions, and
//! matrices over R/C/H.
//!
//! Quaternions are written q = q0 + q1·ℐ + q2·𝒥 + q3·𝒦. Octonions are pairs of
//! quaternions multiplied by (a,b)(c,d) = (ac − d̄b, da + bc̄). A quaternion
//! matrix M = A + B𝒥 (A, B complex) is represented by the complex block matrix
//! [[A, −B], [B̄, Ā]].

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{OrbitError, Result};

pub type C64 = Complex64;
pub type CMat = DMatrix<C64>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Tag {
    R,
    C,
    H,
    O,
    OC,
}

impl fmt::Display for Tag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Tag::R => "R",
            Tag::C => "C",
            Tag::H => "H",
            Tag::O => "O",
            Tag::OC => "OC",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct Quat(pub [f64; 4]);

impl Quat {
    pub const ONE: Quat = Quat([1.0, 0.0, 0.0, 0.0]);
    pub const I: Quat = Quat([0.0, 1.0, 0.0, 0.0]);
    pub const J: Quat = Quat([0.0, 0.0, 1.0, 0.0]);
    pub const K: Quat = Quat([0.0, 0.0, 0.0, 1.0]);

    pub fn real(x: f64) -> Self {
        Quat([x, 0.0, 0.0, 0.0])
    }

    /// q = z1 + z2·𝒥
    pub fn from_pair(z1: C64, z2: C64) -> Self {
        Quat([z1.re, z1.im, z2.re, z2.im])
    }

    pub fn pair(&self) -> (C64, C64) {
        (C64::new(self.0[0], self.0[1]), C64::new(self.0[2], self.0[3]))
    }

    pub fn conj(&self) -> Self {
        let q = self.0;
        Quat([q[0], -q[1], -q[2], -q[3]])
    }

    pub fn norm(&self) -> f64 {
        self.0.iter().map(|x| x * x).sum()
    }

    pub fn trace(&self) -> f64 {
        2.0 * self.0[0]
    }

    pub fn scale(&self, s: f64) -> Self {
        Quat(self.0.map(|x| x * s))
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().fold(0.0, |m, x| m.max(x.abs()))
    }
}

impl Add for Quat {
    type Output = Quat;
    fn add(self, o: Quat) -> Quat {
        Quat(std::array::from_fn(|i| self.0[i] + o.0[i]))
    }
}

impl Sub for Quat {
    type Output = Quat;
    fn sub(self, o: Quat) -> Quat {
        Quat(std::array::from_fn(|i| self.0[i] - o.0[i]))
    }
}

impl Neg for Quat {
    type Output = Quat;
    fn neg(self) -> Quat {
        Quat(self.0.map(|x| -x))
    }
}

impl Mul for Quat {
    type Output = Quat;
    fn mul(self, b: Quat) -> Quat {
        let [a0, a1, a2, a3] = self.0;
        let [b0, b1, b2, b3] = b.0;
        Quat([
            a0 * b0 - a1 * b1 - a2 * b2 - a3 * b3,
            a0 * b1 + a1 * b0 + a2 * b3 - a3 * b2,
            a0 * b2 - a1 * b3 + a2 * b0 + a3 * b1,
            a0 * b3 + a1 * b2 - a2 * b1 + a3 * b0,
        ])
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct Oct(pub [f64; 8]);

impl Oct {
    pub fn real(x: f64) -> Self {
        let mut c = [0.0; 8];
        c[0] = x;
        Oct(c)
    }

    pub fn unit(k: usize) -> Self {
        let mut c = [0.0; 8];
        c[k] = 1.0;
        Oct(c)
    }

    fn halves(&self) -> (Quat, Quat) {
        let c = self.0;
        (Quat([c[0], c[1], c[2], c[3]]), Quat([c[4], c[5], c[6], c[7]]))
    }

    fn from_halves(a: Quat, b: Quat) -> Self {
        let mut c = [0.0; 8];
        c[..4].copy_from_slice(&a.0);
        c[4..].copy_from_slice(&b.0);
        Oct(c)
    }

    pub fn conj(&self) -> Self {
        let mut c = self.0.map(|x| -x);
        c[0] = self.0[0];
        Oct(c)
    }

    pub fn norm(&self) -> f64 {
        self.0.iter().map(|x| x * x).sum()
    }

    pub fn trace(&self) -> f64 {
        2.0 * self.0[0]
    }

    /// Symmetric bilinear form with ⟨x,x⟩ = n(x).
    pub fn dot(&self, o: &Oct) -> f64 {
        self.0.iter().zip(o.0.iter()).map(|(a, b)| a * b).sum()
    }

    pub fn scale(&self, s: f64) -> Self {
        Oct(self.0.map(|x| x * s))
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().fold(0.0, |m, x| m.max(x.abs()))
    }
}

impl Add for Oct {
    type Output = Oct;
    fn add(self, o: Oct) -> Oct {
        Oct(std::array::from_fn(|i| self.0[i] + o.0[i]))
    }
}

impl Sub for Oct {
    type Output = Oct;
    fn sub(self, o: Oct) -> Oct {
        Oct(std::array::from_fn(|i| self.0[i] - o.0[i]))
    }
}

impl Neg for Oct {
    type Output = Oct;
    fn neg(self) -> Oct {
        Oct(self.0.map(|x| -x))
    }
}

impl Mul for Oct {
    type Output = Oct;
    fn mul(self, o: Oct) -> Oct {
        let (a, b) = self.halves();
        let (c, d) = o.halves();
        Oct::from_halves(a * c - d.conj() * b, d * a + b * c.conj())
    }
}

/// Complexified octonion re + i·im.
#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct OctC {
    pub re: Oct,
    pub im: Oct,
}

impl OctC {
    pub fn new(re: Oct, im: Oct) -> Self {
        OctC { re, im }
    }

    pub fn from_real(re: Oct) -> Self {
        OctC { re, im: Oct::default() }
    }

    pub fn scalar(z: C64) -> Self {
        OctC { re: Oct::real(z.re), im: Oct::real(z.im) }
    }

    pub fn conj(&self) -> Self {
        OctC { re: self.re.conj(), im: self.im.conj() }
    }

    /// n(x + iy) = n(x) − n(y) + 2i⟨x,y⟩
    pub fn norm(&self) -> C64 {
        C64::new(self.re.norm() - self.im.norm(), 2.0 * self.re.dot(&self.im))
    }

    pub fn trace(&self) -> C64 {
        C64::new(self.re.trace(), self.im.trace())
    }

    pub fn scale(&self, s: C64) -> Self {
        OctC {
            re: self.re.scale(s.re) - self.im.scale(s.im),
            im: self.re.scale(s.im) + self.im.scale(s.re),
        }
    }

    pub fn max_abs(&self) -> f64 {
        self.re.max_abs().max(self.im.max_abs())
    }
}

impl Add for OctC {
    type Output = OctC;
    fn add(self, o: OctC) -> OctC {
        OctC { re: self.re + o.re, im: self.im + o.im }
    }
}

impl Sub for OctC {
    type Output = OctC;
    fn sub(self, o: OctC) -> OctC {
        OctC { re: self.re - o.re, im: self.im - o.im }
    }
}

impl Neg for OctC {
    type Output = OctC;
    fn neg(self) -> OctC {
        OctC { re: -self.re, im: -self.im }
    }
}

impl Mul for OctC {
    type Output = OctC;
    fn mul(self, o: OctC) -> OctC {
        OctC {
            re: self.re * o.re - self.im * o.im,
            im: self.re * o.im + self.im * o.re,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum AlgebraElement {
    R(f64),
    C(C64),
    H(Quat),
    O(Oct),
    OC(OctC),
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ConjNormTrace {
    pub conj: AlgebraElement,
    /// Real for R/C/H/O.
    pub norm: C64,
    pub trace: C64,
}

impl AlgebraElement {
    pub fn tag(&self) -> Tag {
        match self {
            AlgebraElement::R(_) => Tag::R,
            AlgebraElement::C(_) => Tag::C,
            AlgebraElement::H(_) => Tag::H,
            AlgebraElement::O(_) => Tag::O,
            AlgebraElement::OC(_) => Tag::OC,
        }
    }

    pub fn one(tag: Tag) -> Self {
        match tag {
            Tag::R => AlgebraElement::R(1.0),
            Tag::C => AlgebraElement::C(C64::new(1.0, 0.0)),
            Tag::H => AlgebraElement::H(Quat::ONE),
            Tag::O => AlgebraElement::O(Oct::real(1.0)),
            Tag::OC => AlgebraElement::OC(OctC::from_real(Oct::real(1.0))),
        }
    }

    pub fn conj(&self) -> Self {
        match self {
            AlgebraElement::R(x) => AlgebraElement::R(*x),
            AlgebraElement::C(z) => AlgebraElement::C(z.conj()),
            AlgebraElement::H(q) => AlgebraElement::H(q.conj()),
            AlgebraElement::O(o) => AlgebraElement::O(o.conj()),
            AlgebraElement::OC(o) => AlgebraElement::OC(o.conj()),
        }
    }

    pub fn norm(&self) -> C64 {
        match self {
            AlgebraElement::R(x) => (x * x).into(),
            AlgebraElement::C(z) => z.norm_sqr().into(),
            AlgebraElement::H(q) => q.norm().into(),
            AlgebraElement::O(o) => o.norm().into(),
            AlgebraElement::OC(o) => o.norm(),
        }
    }

    pub fn trace(&self) -> C64 {
        match self {
            AlgebraElement::R(x) => (2.0 * x).into(),
            AlgebraElement::C(z) => (2.0 * z.re).into(),
            AlgebraElement::H(q) => q.trace().into(),
            AlgebraElement::O(o) => o.trace().into(),
            AlgebraElement::OC(o) => o.trace(),
        }
    }

    pub fn conj_norm_trace(&self) -> ConjNormTrace {
        ConjNormTrace { conj: self.conj(), norm: self.norm(), trace: self.trace() }
    }

    pub fn mul(&self, o: &AlgebraElement) -> Result<AlgebraElement> {
        use AlgebraElement::*;
        Ok(match (self, o) {
            (R(a), R(b)) => R(a * b),
            (C(a), C(b)) => C(a * b),
            (H(a), H(b)) => H(*a * *b),
            (O(a), O(b)) => O(*a * *b),
            (OC(a), OC(b)) => OC(*a * *b),
            _ => return Err(OrbitError::TagMismatch(self.tag(), o.tag())),
        })
    }

    pub fn add(&self, o: &AlgebraElement) -> Result<AlgebraElement> {
        use AlgebraElement::*;
        Ok(match (self, o) {
            (R(a), R(b)) => R(a + b),
            (C(a), C(b)) => C(a + b),
            (H(a), H(b)) => H(*a + *b),
            (O(a), O(b)) => O(*a + *b),
            (OC(a), OC(b)) => OC(*a + *b),
            _ => return Err(OrbitError::TagMismatch(self.tag(), o.tag())),
        })
    }

    pub fn sub(&self, o: &AlgebraElement) -> Result<AlgebraElement> {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> AlgebraElement {
        use AlgebraElement::*;
        match self {
            R(a) => R(-a),
            C(a) => C(-a),
            H(a) => H(-*a),
            O(a) => O(-*a),
            OC(a) => OC(-*a),
        }
    }

    /// Coefficients as listed in the JSON encoding, flattened.
    pub fn coeffs(&self) -> Vec<f64> {
        match self {
            AlgebraElement::R(x) => vec![*x],
            AlgebraElement::C(z) => vec![z.re, z.im],
            AlgebraElement::H(q) => q.0.to_vec(),
            AlgebraElement::O(o) => o.0.to_vec(),
            AlgebraElement::OC(o) => o.re.0.iter().chain(o.im.0.iter()).copied().collect(),
        }
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs().iter().fold(0.0, |m, x| m.max(x.abs()))
    }

    pub fn to_json(&self) -> Value {
        match self {
            AlgebraElement::R(x) => json!(x),
            AlgebraElement::C(z) => json!([z.re, z.im]),
            AlgebraElement::H(q) => json!(q.0),
            AlgebraElement::O(o) => json!(o.0),
            AlgebraElement::OC(o) => json!([o.re.0, o.im.0]),
        }
    }

    pub fn from_json(tag: Tag, v: &Value) -> Result<Self> {
        let bad = || OrbitError::Json(format!("bad {tag} scalar: {v}"));
        let floats = |v: &Value, n: usize| -> Result<Vec<f64>> {
            let arr = v.as_array().ok_or_else(bad)?;
            if arr.len() != n {
                return Err(bad());
            }
            arr.iter().map(|x| x.as_f64().ok_or_else(bad)).collect()
        };
        Ok(match tag {
            Tag::R => AlgebraElement::R(v.as_f64().ok_or_else(bad)?),
            Tag::C => {
                let c = floats(v, 2)?;
                AlgebraElement::C(C64::new(c[0], c[1]))
            }
            Tag::H => {
                let c = floats(v, 4)?;
                AlgebraElement::H(Quat([c[0], c[1], c[2], c[3]]))
            }
            Tag::O => AlgebraElement::O(Oct(floats(v, 8)?.try_into().unwrap())),
            Tag::OC => {
                let arr = v.as_array().filter(|a| a.len() == 2).ok_or_else(bad)?;
                AlgebraElement::OC(OctC {
                    re: Oct(floats(&arr[0], 8)?.try_into().unwrap()),
                    im: Oct(floats(&arr[1], 8)?.try_into().unwrap()),
                })
            }
        })
    }
}

pub fn da_mul(a: &AlgebraElement, b: &AlgebraElement) -> Result<AlgebraElement> {
    a.mul(b)
}

pub fn da_conj_norm_trace(a: &AlgebraElement) -> ConjNormTrace {
    a.conj_norm_trace()
}

/// Quaternion matrix stored as A + B𝒥.
#[derive(Clone, Debug, PartialEq)]
pub struct QuatMatrix {
    pub a: CMat,
    pub b: CMat,
}

impl QuatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QuatMatrix { a: CMat::zeros(rows, cols), b: CMat::zeros(rows, cols) }
    }

    pub fn identity(n: usize) -> Self {
        QuatMatrix { a: CMat::identity(n, n), b: CMat::zeros(n, n) }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Quat) -> Self {
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                let (z1, z2) = f(i, j).pair();
                m.a[(i, j)] = z1;
                m.b[(i, j)] = z2;
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.a.nrows()
    }

    pub fn cols(&self) -> usize {
        self.a.ncols()
    }

    pub fn get(&self, i: usize, j: usize) -> Quat {
        Quat::from_pair(self.a[(i, j)], self.b[(i, j)])
    }

    /// (A + B𝒥)(C + D𝒥) = (AC − BD̄) + (AD + BC̄)𝒥, using 𝒥z = z̄𝒥.
    pub fn mul(&self, o: &QuatMatrix) -> QuatMatrix {
        QuatMatrix {
            a: &self.a * &o.a - &self.b * o.b.map(|z| z.conj()),
            b: &self.a * &o.b + &self.b * o.a.map(|z| z.conj()),
        }
    }

    pub fn complex_rep(&self) -> CMat {
        let (m, n) = (self.rows(), self.cols());
        let mut out = CMat::zeros(2 * m, 2 * n);
        out.view_mut((0, 0), (m, n)).copy_from(&self.a);
        out.view_mut((0, n), (m, n)).copy_from(&(-&self.b));
        out.view_mut((m, 0), (m, n)).copy_from(&self.b.map(|z| z.conj()));
        out.view_mut((m, n), (m, n)).copy_from(&self.a.map(|z| z.conj()));
        out
    }

    /// Inverse of `complex_rep`; rejects matrices without the [[A,−B],[B̄,Ā]] pattern.
    pub fn from_complex_rep(c: &CMat, tol: f64) -> Result<Self> {
        if c.nrows() % 2 != 0 || c.ncols() % 2 != 0 {
            return Err(OrbitError::Shape {
                expected: "even dimensions".into(),
                got: format!("{}x{}", c.nrows(), c.ncols()),
            });
        }
        let (m, n) = (c.nrows() / 2, c.ncols() / 2);
        let a = c.view((0, 0), (m, n)).into_owned();
        let b = -c.view((0, n), (m, n)).into_owned();
        let r1 = (c.view((m, 0), (m, n)) - b.map(|z| z.conj())).camax();
        let r2 = (c.view((m, n), (m, n)) - a.map(|z| z.conj())).camax();
        let scale = c.camax().max(1.0);
        if r1.max(r2) > tol * scale {
            return Err(OrbitError::NotMember {
                family: "quaternionic pattern".into(),
                residual: r1.max(r2),
            });
        }
        Ok(QuatMatrix { a, b })
    }

    pub fn conj_transpose(&self) -> QuatMatrix {
        // entrywise conj(z1 + z2𝒥) = z̄1 − z2𝒥
        QuatMatrix { a: self.a.adjoint(), b: -self.b.transpose() }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum DAMatrix {
    Real(DMatrix<f64>),
    Complex(CMat),
    Quat(QuatMatrix),
}

impl DAMatrix {
    pub fn tag(&self) -> Tag {
        match self {
            DAMatrix::Real(_) => Tag::R,
            DAMatrix::Complex(_) => Tag::C,
            DAMatrix::Quat(_) => Tag::H,
        }
    }

    pub fn zeros(tag: Tag, rows: usize, cols: usize) -> Result<Self> {
        Ok(match tag {
            Tag::R => DAMatrix::Real(DMatrix::zeros(rows, cols)),
            Tag::C => DAMatrix::Complex(CMat::zeros(rows, cols)),
            Tag::H => DAMatrix::Quat(QuatMatrix::zeros(rows, cols)),
            t => return Err(OrbitError::Unsupported(format!("matrices over {t}"))),
        })
    }

    pub fn rows(&self) -> usize {
        match self {
            DAMatrix::Real(m) => m.nrows(),
            DAMatrix::Complex(m) => m.nrows(),
            DAMatrix::Quat(m) => m.rows(),
        }
    }

    pub fn cols(&self) -> usize {
        match self {
            DAMatrix::Real(m) => m.ncols(),
            DAMatrix::Complex(m) => m.ncols(),
            DAMatrix::Quat(m) => m.cols(),
        }
    }

    pub fn get(&self, i: usize, j: usize) -> AlgebraElement {
        match self {
            DAMatrix::Real(m) => AlgebraElement::R(m[(i, j)]),
            DAMatrix::Complex(m) => AlgebraElement::C(m[(i, j)]),
            DAMatrix::Quat(m) => AlgebraElement::H(m.get(i, j)),
        }
    }

    pub fn mul(&self, o: &DAMatrix) -> Result<DAMatrix> {
        if self.cols() != o.rows() {
            return Err(OrbitError::Shape {
                expected: format!("{} rows", self.cols()),
                got: format!("{}", o.rows()),
            });
        }
        Ok(match (self, o) {
            (DAMatrix::Real(a), DAMatrix::Real(b)) => DAMatrix::Real(a * b),
            (DAMatrix::Complex(a), DAMatrix::Complex(b)) => DAMatrix::Complex(a * b),
            (DAMatrix::Quat(a), DAMatrix::Quat(b)) => DAMatrix::Quat(a.mul(b)),
            _ => return Err(OrbitError::TagMismatch(self.tag(), o.tag())),
        })
    }

    /// Faithful complex representation: real entries embedded, complex kept,
    /// quaternionic m×n doubled to 2m×2n.
    pub fn to_complex(&self) -> CMat {
        match self {
            DAMatrix::Real(m) => m.map(|x| C64::new(x, 0.0)),
            DAMatrix::Complex(m) => m.clone(),
            DAMatrix::Quat(m) => m.complex_rep(),
        }
    }

    /// Reads a complex representation back as a matrix over `tag`.
    pub fn from_complex(tag: Tag, c: &CMat, tol: f64) -> Result<Self> {
        match tag {
            Tag::R => {
                let scale = c.camax().max(1.0);
                let im = c.iter().fold(0.0_f64, |m, z| m.max(z.im.abs()));
                if im > tol * scale {
                    return Err(OrbitError::NotMember { family: "real matrices".into(), residual: im });
                }
                Ok(DAMatrix::Real(c.map(|z| z.re)))
            }
            Tag::C => Ok(DAMatrix::Complex(c.clone())),
            Tag::H => Ok(DAMatrix::Quat(QuatMatrix::from_complex_rep(c, tol)?)),
            t => Err(OrbitError::Unsupported(format!("matrices over {t}"))),
        }
    }

    pub fn to_json(&self) -> Value {
        let rows: Vec<Value> = (0..self.rows())
            .map(|i| Value::Array((0..self.cols()).map(|j| self.get(i, j).to_json()).collect()))
            .collect();
        json!({ "algebra": self.tag().to_string(), "entries": rows })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let tag = match v.get("algebra").and_then(Value::as_str) {
            Some("R") => Tag::R,
            Some("C") => Tag::C,
            Some("H") => Tag::H,
            other => return Err(OrbitError::Json(format!("unknown matrix algebra {other:?}"))),
        };
        let rows = v
            .get("entries")
            .and_then(Value::as_array)
            .ok_or_else(|| OrbitError::Json("missing entries".into()))?;
        let nr = rows.len();
        let nc = rows.first().and_then(Value::as_array).map_or(0, Vec::len);
        let mut grid = Vec::with_capacity(nr * nc);
        for r in rows {
            let r = r.as_array().filter(|r| r.len() == nc).ok_or_else(|| {
                OrbitError::Json("ragged matrix rows".into())
            })?;
            for x in r {
                grid.push(AlgebraElement::from_json(tag, x)?);
            }
        }
        let at = |i: usize, j: usize| grid[i * nc + j];
        Ok(match tag {
            Tag::R => DAMatrix::Real(DMatrix::from_fn(nr, nc, |i, j| match at(i, j) {
                AlgebraElement::R(x) => x,
                _ => unreachable!(),
            })),
            Tag::C => DAMatrix::Complex(CMat::from_fn(nr, nc, |i, j| match at(i, j) {
                AlgebraElement::C(z) => z,
                _ => unreachable!(),
            })),
            _ => DAMatrix::Quat(QuatMatrix::from_fn(nr, nc, |i, j| match at(i, j) {
                AlgebraElement::H(q) => q,
                _ => unreachable!(),
            })),
        })
    }
}

pub fn complex_rep(m: &QuatMatrix) -> CMat {
    m.complex_rep()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quaternion_units() {
        assert_eq!(Quat::J * Quat::J, Quat::real(-1.0));
        assert_eq!(Quat::I * Quat::J, Quat::K);
        assert_eq!(Quat::J * Quat::I, -Quat::K);
    }

    #[test]
    fn octonion_unit_conj() {
        let e1 = AlgebraElement::O(Oct::unit(1));
        let cnt = e1.conj_norm_trace();
        assert_eq!(cnt.conj, AlgebraElement::O(-Oct::unit(1)));
        assert_eq!(cnt.norm, C64::new(1.0, 0.0));
        assert_eq!(cnt.trace, C64::new(0.0, 0.0));
        assert_eq!(Oct::unit(1) * Oct::unit(1), Oct::real(-1.0));
    }

    #[test]
    fn tag_mismatch_is_error() {
        let a = AlgebraElement::R(1.0);
        let b = AlgebraElement::C(C64::new(0.0, 1.0));
        assert!(matches!(a.mul(&b), Err(OrbitError::TagMismatch(Tag::R, Tag::C))));
    }

    #[test]
    fn rep_of_j_has_rank_two() {
        let m = QuatMatrix::from_fn(1, 1, |_, _| Quat::J);
        let c = m.complex_rep();
        assert_eq!(c[(0, 1)], C64::new(-1.0, 0.0));
        assert_eq!(c[(1, 0)], C64::new(1.0, 0.0));
        assert_eq!(c.rank(1e-12), 2);
    }

    #[test]
    fn oc_norm_matches_product() {
        let a = OctC::new(Oct([1.0, 2.0, 0.0, 0.0, 0.5, 0.0, 0.0, 1.0]), Oct::unit(3));
        let p = a * a.conj();
        let n = a.norm();
        assert!((p.re.0[0] - n.re).abs() < 1e-12 && (p.im.0[0] - n.im).abs() < 1e-12);
        assert!(p.re.0[1..].iter().chain(p.im.0[1..].iter()).all(|x| x.abs() < 1e-12));
    }
}
