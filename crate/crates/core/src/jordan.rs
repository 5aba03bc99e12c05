//! Albert algebra H₃(𝕆_K), its generic norm and rank, and the Jordan rank and
//! fundamental relative invariant on the classical p⁺ models.

use serde_json::{json, Value};

use crate::classify::model_rank;
use crate::divalg::{AlgebraElement, CMat, Oct, OctC, Tag, C64};
use crate::error::{OrbitError, Result};
use crate::liealg::{Family, PPlusElement};
use crate::linalg::{c, fro};
use crate::random::{self, Rng};

/// [[α₁, a₃, ā₂], [ā₃, α₂, a₁], [a₂, ā₁, α₃]] with α_i ∈ K, a_i ∈ 𝕆_K.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AlbertElement {
    /// `Tag::R` or `Tag::C`.
    pub field: Tag,
    pub alpha: [C64; 3],
    pub a: [OctC; 3],
}

fn check_field(t: Tag) -> Result<()> {
    if t == Tag::R || t == Tag::C {
        Ok(())
    } else {
        Err(OrbitError::InvalidParams(format!("Albert algebra over {t}; expected R or C")))
    }
}

impl AlbertElement {
    pub fn new(field: Tag, alpha: [C64; 3], a: [OctC; 3]) -> Result<Self> {
        check_field(field)?;
        if field == Tag::R && (alpha.iter().any(|x| x.im != 0.0) || a.iter().any(|x| x.im != Oct::default())) {
            return Err(OrbitError::InvalidParams("real Albert element with complex entries".into()));
        }
        Ok(AlbertElement { field, alpha, a })
    }

    pub fn real(alpha: [f64; 3], a: [Oct; 3]) -> Self {
        AlbertElement { field: Tag::R, alpha: alpha.map(|x| c(x, 0.0)), a: a.map(OctC::from_real) }
    }

    pub fn identity(field: Tag) -> Self {
        AlbertElement { field, alpha: [c(1.0, 0.0); 3], a: [OctC::default(); 3] }
    }

    pub fn diag(field: Tag, d: [f64; 3]) -> Self {
        AlbertElement { field, alpha: d.map(|x| c(x, 0.0)), a: [OctC::default(); 3] }
    }

    pub fn zero(field: Tag) -> Self {
        Self::diag(field, [0.0; 3])
    }

    pub fn scale(&self, s: C64) -> Self {
        AlbertElement { field: self.field, alpha: self.alpha.map(|x| x * s), a: self.a.map(|x| x.scale(s)) }
    }

    pub fn add(&self, o: &AlbertElement) -> Result<Self> {
        self.same_field(o)?;
        Ok(AlbertElement {
            field: self.field,
            alpha: std::array::from_fn(|i| self.alpha[i] + o.alpha[i]),
            a: std::array::from_fn(|i| self.a[i] + o.a[i]),
        })
    }

    pub fn sub(&self, o: &AlbertElement) -> Result<Self> {
        self.add(&o.scale(c(-1.0, 0.0)))
    }

    pub fn max_abs(&self) -> f64 {
        let m = self.alpha.iter().fold(0.0_f64, |m, x| m.max(x.norm()));
        self.a.iter().fold(m, |m, x| m.max(x.max_abs()))
    }

    fn same_field(&self, o: &AlbertElement) -> Result<()> {
        if self.field != o.field {
            return Err(OrbitError::TagMismatch(self.field, o.field));
        }
        Ok(())
    }

    /// The 3×3 matrix of complexified octonions.
    pub fn matrix(&self) -> [[OctC; 3]; 3] {
        let s = |z: C64| OctC::scalar(z);
        let [a1, a2, a3] = self.a;
        [
            [s(self.alpha[0]), a3, a2.conj()],
            [a3.conj(), s(self.alpha[1]), a1],
            [a2, a1.conj(), s(self.alpha[2])],
        ]
    }

    /// Reads back a hermitian octonion matrix; returns the element and the
    /// largest deviation from the hermitian pattern.
    pub fn from_matrix(field: Tag, m: &[[OctC; 3]; 3]) -> Result<(Self, f64)> {
        check_field(field)?;
        let scalar = |x: &OctC| c(x.re.0[0], x.im.0[0]);
        let off_scalar = |x: &OctC| {
            let mut y = *x;
            y.re.0[0] = 0.0;
            y.im.0[0] = 0.0;
            y.max_abs()
        };
        let alpha = [scalar(&m[0][0]), scalar(&m[1][1]), scalar(&m[2][2])];
        let a = [m[1][2], m[2][0], m[0][1]];
        let mut dev = (0..3).map(|i| off_scalar(&m[i][i])).fold(0.0_f64, f64::max);
        dev = dev.max((m[2][1] - m[1][2].conj()).max_abs());
        dev = dev.max((m[0][2] - m[2][0].conj()).max_abs());
        dev = dev.max((m[1][0] - m[0][1].conj()).max_abs());
        Ok((AlbertElement { field, alpha, a }, dev))
    }

    pub fn to_json(&self) -> Value {
        let alpha: Vec<Value> = self
            .alpha
            .iter()
            .map(|z| if self.field == Tag::R { AlgebraElement::R(z.re).to_json() } else { AlgebraElement::C(*z).to_json() })
            .collect();
        let a: Vec<Value> = self
            .a
            .iter()
            .map(|o| if self.field == Tag::R { AlgebraElement::O(o.re).to_json() } else { AlgebraElement::OC(*o).to_json() })
            .collect();
        json!({"field": self.field.to_string(), "alpha": alpha, "a": a})
    }

    /// {"field": "R"|"C" (default R), "alpha": [3 scalars], "a": [3 octonions]}.
    pub fn from_json(v: &Value) -> Result<Self> {
        let field = match v.get("field").and_then(Value::as_str) {
            None | Some("R") => Tag::R,
            Some("C") => Tag::C,
            Some(other) => return Err(OrbitError::Json(format!("unknown field '{other}'"))),
        };
        let arr = |key: &str| -> Result<Vec<Value>> {
            let a = v.get(key).and_then(Value::as_array).ok_or_else(|| OrbitError::Json(format!("missing '{key}'")))?;
            if a.len() != 3 {
                return Err(OrbitError::Json(format!("'{key}' needs 3 entries")));
            }
            Ok(a.clone())
        };
        let (st, ot) = if field == Tag::R { (Tag::R, Tag::O) } else { (Tag::C, Tag::OC) };
        let mut alpha = [c(0.0, 0.0); 3];
        for (i, x) in arr("alpha")?.iter().enumerate() {
            alpha[i] = match AlgebraElement::from_json(st, x)? {
                AlgebraElement::R(r) => c(r, 0.0),
                AlgebraElement::C(z) => z,
                _ => unreachable!(),
            };
        }
        let mut a = [OctC::default(); 3];
        for (i, x) in arr("a")?.iter().enumerate() {
            a[i] = match AlgebraElement::from_json(ot, x)? {
                AlgebraElement::O(o) => OctC::from_real(o),
                AlgebraElement::OC(o) => o,
                _ => unreachable!(),
            };
        }
        AlbertElement::new(field, alpha, a)
    }
}

fn mat_mul(x: &[[OctC; 3]; 3], y: &[[OctC; 3]; 3]) -> [[OctC; 3]; 3] {
    std::array::from_fn(|i| std::array::from_fn(|j| (0..3).fold(OctC::default(), |acc, k| acc + x[i][k] * y[k][j])))
}

/// x ∘ y = ½(xy + yx).
pub fn jordan_product(x: &AlbertElement, y: &AlbertElement) -> Result<AlbertElement> {
    x.same_field(y)?;
    let (mx, my) = (x.matrix(), y.matrix());
    let (p, q) = (mat_mul(&mx, &my), mat_mul(&my, &mx));
    let half = c(0.5, 0.0);
    let m: [[OctC; 3]; 3] = std::array::from_fn(|i| std::array::from_fn(|j| (p[i][j] + q[i][j]).scale(half)));
    let (out, dev) = AlbertElement::from_matrix(x.field, &m)?;
    let scale = x.max_abs().max(1.0) * y.max_abs().max(1.0);
    if dev > 1e-9 * scale {
        return Err(OrbitError::Internal(format!("Jordan product left the hermitian matrices ({dev:e})")));
    }
    Ok(out)
}

/// ν(A) = α₁α₂α₃ + t(a₃a₁a₂) − α₁n(a₁) − α₂n(a₂) − α₃n(a₃).
pub fn generic_norm(x: &AlbertElement) -> C64 {
    let [al1, al2, al3] = x.alpha;
    let [a1, a2, a3] = x.a;
    al1 * al2 * al3 + ((a3 * a1) * a2).trace() - al1 * a1.norm() - al2 * a2.norm() - al3 * a3.norm()
}

/// Freudenthal adjoint A#: diagonal α₂α₃ − n(a₁) (cyclic), off-diagonal
/// conj(a₂a₃) − α₁a₁ (cyclic).
pub fn freudenthal_adjoint(x: &AlbertElement) -> AlbertElement {
    let [al1, al2, al3] = x.alpha;
    let [a1, a2, a3] = x.a;
    AlbertElement {
        field: x.field,
        alpha: [al2 * al3 - a1.norm(), al3 * al1 - a2.norm(), al1 * al2 - a3.norm()],
        a: [(a2 * a3).conj() - a1.scale(al1), (a3 * a1).conj() - a2.scale(al2), (a1 * a2).conj() - a3.scale(al3)],
    }
}

/// max |A∘A# − ν(A)·1|, the identity validating the adjoint formula.
pub fn adjoint_identity_residual(x: &AlbertElement) -> Result<f64> {
    let lhs = jordan_product(x, &freudenthal_adjoint(x))?;
    let rhs = AlbertElement::identity(x.field).scale(generic_norm(x));
    Ok(lhs.sub(&rhs)?.max_abs())
}

fn scalar(rng: &mut Rng, field: Tag) -> C64 {
    if field == Tag::R {
        c(random::gauss(rng), 0.0)
    } else {
        random::complex(rng)
    }
}

/// Gaussian entries; generic, so of rank 3 almost surely.
pub fn random_albert(rng: &mut Rng, field: Tag) -> AlbertElement {
    let alpha = std::array::from_fn(|_| scalar(rng, field));
    let a = std::array::from_fn(|_| if field == Tag::R { OctC::from_real(random::oct(rng)) } else { random::octc(rng) });
    AlbertElement { field, alpha, a }
}

/// Sum of k generic elements x·x̄ᵀ, x ∈ Q³ for a random quaternion subalgebra Q
/// (two imaginary octonions generate an associative one). Rank exactly k for
/// k ≤ 2 and generic inputs; k = 3 falls back to `random_albert`.
pub fn random_albert_of_rank(rng: &mut Rng, field: Tag, k: usize) -> Result<AlbertElement> {
    check_field(field)?;
    if k > 3 {
        return Err(OrbitError::InvalidParams(format!("Albert rank {k} > 3")));
    }
    if k == 3 {
        return Ok(random_albert(rng, field));
    }
    let mut im = || {
        let mut o = random::oct(rng);
        o.0[0] = 0.0;
        o
    };
    let (u, v) = (im(), im());
    let basis = [Oct::real(1.0), u, v, u * v].map(OctC::from_real);
    let mut acc = AlbertElement::zero(field);
    for _ in 0..k {
        let x: [OctC; 3] = std::array::from_fn(|_| {
            basis.iter().fold(OctC::default(), |s, b| s + b.scale(scalar(rng, field)))
        });
        let m: [[OctC; 3]; 3] = std::array::from_fn(|i| std::array::from_fn(|j| x[i] * x[j].conj()));
        acc = acc.add(&AlbertElement::from_matrix(field, &m)?.0)?;
    }
    Ok(acc)
}

pub const ALBERT_REL_TOL: f64 = 1e-9;

/// 3 if ν ≠ 0, else 2 if A# ≠ 0, else 1 if A ≠ 0, else 0; thresholds are
/// relative to ‖A‖³, ‖A‖², ‖A‖.
pub fn albert_rank(x: &AlbertElement, rel_tol: f64) -> usize {
    let s = x.max_abs();
    if s == 0.0 {
        return 0;
    }
    if generic_norm(x).norm() > rel_tol * s.powi(3) {
        3
    } else if freudenthal_adjoint(x).max_abs() > rel_tol * s * s {
        2
    } else {
        1
    }
}

/// Jordan rank on the classical p⁺ models: matrix rank (sp, u), half of it
/// (so*), or 0/1/2 via the quadric (so(2,q)).
pub fn jordan_rank_classical(w: &PPlusElement, rel_tol: f64) -> Result<usize> {
    let r = model_rank(w, rel_tol);
    match w.family {
        Family::SoStar { .. } => {
            if r % 2 != 0 {
                return Err(OrbitError::Internal(format!("antisymmetric model of odd rank {r}")));
            }
            Ok(r / 2)
        }
        _ => Ok(r),
    }
}

/// Whether p⁺ of this family is a regular pre-homogeneous space (has a
/// fundamental relative invariant).
pub fn is_regular(f: Family) -> bool {
    match f {
        Family::Sp { .. } | Family::So2q { .. } => true,
        Family::U { p, q } => p == q,
        Family::SoStar { n } => n % 2 == 0,
    }
}

/// Fundamental relative invariant of p⁺: det (sp, u(p,p)), Pfaffian (so*(4ℓ),
/// whose square is the determinant), Σw² (so(2,q)).
pub fn fundamental_invariant(w: &PPlusElement) -> Result<C64> {
    if !is_regular(w.family) {
        return Err(OrbitError::Unsupported(format!("p⁺ of {} is not regular", w.family)));
    }
    Ok(match w.family {
        Family::So2q { .. } => w.model.iter().map(|v| v * v).sum(),
        Family::SoStar { .. } => pfaffian(&w.model)?,
        _ => w.model.determinant(),
    })
}

/// Degree of the fundamental invariant, for scale-aware zero tests.
pub fn fundamental_invariant_degree(f: Family) -> usize {
    match f {
        Family::Sp { l } => l,
        Family::U { p, .. } => p,
        Family::SoStar { n } => n / 2,
        Family::So2q { .. } => 2,
    }
}

/// |f(w)| ≤ tol·‖w‖^deg.
pub fn fundamental_invariant_vanishes(w: &PPlusElement, rel_tol: f64) -> Result<bool> {
    let v = fundamental_invariant(w)?;
    let s = fro(&w.model);
    Ok(v.norm() <= rel_tol * s.powi(fundamental_invariant_degree(w.family) as i32))
}

/// Pfaffian of an even antisymmetric matrix by pivoted skew elimination.
pub fn pfaffian(m: &CMat) -> Result<C64> {
    let n = m.nrows();
    if n != m.ncols() || n % 2 != 0 {
        return Err(OrbitError::Shape { expected: "even square".into(), got: format!("{}x{}", m.nrows(), m.ncols()) });
    }
    let mut a = m.clone();
    let mut pf = c(1.0, 0.0);
    let mut k = 0;
    while k < n {
        let mut piv = k + 1;
        for j in (k + 1)..n {
            if a[(k, j)].norm() > a[(k, piv)].norm() {
                piv = j;
            }
        }
        if piv != k + 1 {
            a.swap_rows(k + 1, piv);
            a.swap_columns(k + 1, piv);
            pf = -pf;
        }
        let p = a[(k, k + 1)];
        if p.norm() == 0.0 {
            return Ok(c(0.0, 0.0));
        }
        pf *= p;
        // eliminate row/col k+2.. against the pivot pair (k, k+1)
        for i in (k + 2)..n {
            let t = a[(k, i)] / p;
            for j in k..n {
                let v = a[(k + 1, j)] * t;
                a[(i, j)] -= v;
            }
            for j in k..n {
                let v = a[(j, k + 1)] * t;
                a[(j, i)] -= v;
            }
        }
        k += 2;
    }
    Ok(pf)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pfaffian_small() {
        let m = CMat::from_row_slice(2, 2, &[c(0.0, 0.0), c(3.0, 0.0), c(-3.0, 0.0), c(0.0, 0.0)]);
        assert_eq!(pfaffian(&m).unwrap(), c(3.0, 0.0));
        // 4×4: a12 a34 − a13 a24 + a14 a23
        let v = [1.0, 2.0, 3.0, 4.0, 5.0, 6.0];
        let mut m = CMat::zeros(4, 4);
        let mut k = 0;
        for i in 0..4 {
            for j in (i + 1)..4 {
                m[(i, j)] = c(v[k], 0.0);
                m[(j, i)] = c(-v[k], 0.0);
                k += 1;
            }
        }
        let want = 1.0 * 6.0 - 2.0 * 5.0 + 3.0 * 4.0;
        assert!((pfaffian(&m).unwrap() - c(want, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn identity_norm_and_rank() {
        let i = AlbertElement::identity(Tag::C);
        assert_eq!(generic_norm(&i), c(1.0, 0.0));
        assert_eq!(albert_rank(&i, ALBERT_REL_TOL), 3);
        assert_eq!(albert_rank(&AlbertElement::diag(Tag::C, [1.0, 1.0, 0.0]), ALBERT_REL_TOL), 2);
        assert_eq!(albert_rank(&AlbertElement::diag(Tag::C, [1.0, 0.0, 0.0]), ALBERT_REL_TOL), 1);
        assert_eq!(albert_rank(&AlbertElement::zero(Tag::C), ALBERT_REL_TOL), 0);
    }
}
