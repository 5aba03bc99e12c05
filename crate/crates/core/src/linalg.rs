//! Small numerical helpers on complex matrices.

use nalgebra::{DMatrix, SymmetricEigen};

use crate::divalg::{CMat, C64};

/// Relative threshold below which eigenvalues/singular values count as zero.
pub const RANK_REL_TOL: f64 = 1e-8;

pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

pub fn max_abs(m: &CMat) -> f64 {
    m.iter().fold(0.0, |a, z| a.max(z.norm()))
}

pub fn fro(m: &CMat) -> f64 {
    m.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

pub fn commutator(a: &CMat, b: &CMat) -> CMat {
    a * b - b * a
}

pub fn real_to_c(m: &DMatrix<f64>) -> CMat {
    m.map(|x| c(x, 0.0))
}

pub fn herm_part(h: &CMat) -> CMat {
    (h + h.adjoint()).scale(0.5)
}

/// Eigenvalues of the hermitian part of `h`, ascending.
pub fn herm_eigenvalues(h: &CMat) -> Vec<f64> {
    let mut ev: Vec<f64> = SymmetricEigen::new(herm_part(h)).eigenvalues.iter().copied().collect();
    ev.sort_by(|a, b| a.total_cmp(b));
    ev
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Inertia {
    pub pos: usize,
    pub neg: usize,
    pub zero: usize,
}

impl Inertia {
    pub fn rank(&self) -> usize {
        self.pos + self.neg
    }

    pub fn signature(&self) -> i64 {
        self.pos as i64 - self.neg as i64
    }
}

/// Inertia of a hermitian matrix; eigenvalues below `rel_tol`·max|λ| are zero.
/// `abs_floor` guards the all-zero case.
pub fn inertia(h: &CMat, rel_tol: f64, abs_floor: f64) -> Inertia {
    let ev = herm_eigenvalues(h);
    let top = ev.iter().fold(0.0_f64, |m, x| m.max(x.abs()));
    let thr = (rel_tol * top).max(abs_floor);
    let pos = ev.iter().filter(|&&x| x > thr).count();
    let neg = ev.iter().filter(|&&x| x < -thr).count();
    Inertia { pos, neg, zero: ev.len() - pos - neg }
}

pub fn singular_values(m: &CMat) -> Vec<f64> {
    if m.nrows() == 0 || m.ncols() == 0 {
        return Vec::new();
    }
    let mut sv: Vec<f64> = m.clone().svd(false, false).singular_values.iter().copied().collect();
    sv.sort_by(|a, b| b.total_cmp(a));
    sv
}

pub fn rank(m: &CMat, rel_tol: f64, abs_floor: f64) -> usize {
    let sv = singular_values(m);
    let top = sv.first().copied().unwrap_or(0.0);
    let thr = (rel_tol * top).max(abs_floor);
    sv.iter().filter(|&&s| s > thr).count()
}

pub fn real_singular_values(m: &DMatrix<f64>) -> Vec<f64> {
    if m.nrows() == 0 || m.ncols() == 0 {
        return Vec::new();
    }
    let mut sv: Vec<f64> = m.clone().svd(false, false).singular_values.iter().copied().collect();
    sv.sort_by(|a, b| b.total_cmp(a));
    sv
}

pub fn real_rank(m: &DMatrix<f64>, rel_tol: f64) -> usize {
    let sv = real_singular_values(m);
    let top = sv.first().copied().unwrap_or(0.0);
    sv.iter().filter(|&&s| s > rel_tol * top && s > 0.0).count()
}

/// Nullity of a real linear map given as a matrix (columns = unknowns).
pub fn real_nullity(m: &DMatrix<f64>, rel_tol: f64) -> usize {
    let (r, c) = m.shape();
    if r == 0 {
        return c;
    }
    // pad wide matrices with zero rows so the SVD sees every column
    let tall = if r < c { m.clone().resize_vertically(c, 0.0) } else { m.clone() };
    c - real_rank(&tall, rel_tol)
}

pub fn expm(m: &CMat) -> CMat {
    m.exp()
}

/// Power-sum nilpotency test: |tr(X^k)| ≤ tol·‖X‖^k for k = 1..n.
/// Eigenvalues of a perturbed nilpotent matrix scatter like ε^(1/d), traces of
/// powers do not.
pub fn is_nilpotent(x: &CMat, tol: f64) -> bool {
    let n = x.nrows();
    let s = fro(x);
    if s == 0.0 {
        return true;
    }
    let xs = x.scale(1.0 / s);
    let mut p = xs.clone();
    for _ in 0..n {
        if p.trace().norm() > tol * n as f64 {
            return false;
        }
        p = &p * &xs;
    }
    true
}

/// Smallest d with ‖X^d‖ ≤ tol·‖X‖^d, capped at `cap` (returns cap+1 if not reached).
pub fn nilpotency_degree(x: &CMat, tol: f64, cap: usize) -> usize {
    let s = fro(x);
    if s == 0.0 {
        return 0;
    }
    let xs = x.scale(1.0 / s);
    let mut p = xs.clone();
    for d in 1..=cap {
        if fro(&p) <= tol {
            return d;
        }
        p = &p * &xs;
    }
    cap + 1
}

pub fn block_diag(a: &CMat, b: &CMat) -> CMat {
    let mut m = CMat::zeros(a.nrows() + b.nrows(), a.ncols() + b.ncols());
    m.view_mut((0, 0), a.shape()).copy_from(a);
    m.view_mut(a.shape(), b.shape()).copy_from(b);
    m
}

/// Characteristic polynomial coefficients via Faddeev–LeVerrier, highest degree first.
pub fn char_poly(m: &CMat) -> Vec<C64> {
    let n = m.nrows();
    let mut coeffs = vec![c(1.0, 0.0)];
    let mut mk = CMat::zeros(n, n);
    let id = CMat::identity(n, n);
    for k in 1..=n {
        mk = m * (&mk + &id * coeffs[k - 1]);
        let ck = -mk.trace() / k as f64;
        coeffs.push(ck);
    }
    coeffs
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inertia_of_diag() {
        let h = CMat::from_diagonal(&nalgebra::DVector::from_vec(vec![c(2.0, 0.0), c(-1.0, 0.0), c(1e-14, 0.0)]));
        let i = inertia(&h, RANK_REL_TOL, 0.0);
        assert_eq!((i.pos, i.neg, i.zero), (1, 1, 1));
    }

    #[test]
    fn nilpotent_proxy() {
        let mut x = CMat::zeros(3, 3);
        x[(0, 1)] = c(1.0, 0.0);
        x[(1, 2)] = c(1.0, 0.0);
        assert!(is_nilpotent(&x, 1e-10));
        assert_eq!(nilpotency_degree(&x, 1e-12, 5), 3);
        x[(2, 2)] = c(0.1, 0.0);
        assert!(!is_nilpotent(&x, 1e-10));
    }

    #[test]
    fn char_poly_of_diag() {
        let m = CMat::from_diagonal(&nalgebra::DVector::from_vec(vec![c(1.0, 0.0), c(2.0, 0.0)]));
        let p = char_poly(&m);
        assert!((p[1] - c(-3.0, 0.0)).norm() < 1e-14);
        assert!((p[2] - c(2.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn nullity_counts_free_directions() {
        let m = DMatrix::from_row_slice(1, 3, &[1.0, 1.0, 0.0]);
        assert_eq!(real_nullity(&m, 1e-9), 2);
    }
}
