use orbitkit::classify::random_conjugate;
use orbitkit::divalg::{CMat, Oct, Tag, C64};
use orbitkit::jordan::*;
use orbitkit::liealg::{Family, LieAlgebraDescriptor, PPlusElement};
use orbitkit::linalg::c;
use orbitkit::random::{self, Rng};
use orbitkit::triples::{ks_element, orbit_rep};

fn integer_albert(rng: &mut Rng) -> AlbertElement {
    use rand::Rng as _;
    let mut int = || rng.random_range(-5i32..=5) as f64;
    let alpha = [int(), int(), int()];
    let a = std::array::from_fn(|_| Oct(std::array::from_fn(|_| int())));
    AlbertElement::real(alpha, a)
}

fn stratum_sample(rng: &mut Rng, field: Tag, k: usize) -> AlbertElement {
    random_albert_of_rank(rng, field, k).unwrap()
}

#[test]
fn jordan_product_basics() {
    let mut rng = random::seeded(1);
    for field in [Tag::R, Tag::C] {
        for _ in 0..50 {
            let x = random_albert(&mut rng, field);
            let y = random_albert(&mut rng, field);
            let xy = jordan_product(&x, &y).unwrap();
            let yx = jordan_product(&y, &x).unwrap();
            assert_eq!(xy, yx);
            let xi = jordan_product(&x, &AlbertElement::identity(field)).unwrap();
            assert!(xi.sub(&x).unwrap().max_abs() < 1e-14);
            // x²∘(x∘y) = x∘(x²∘y)
            let x2 = jordan_product(&x, &x).unwrap();
            let lhs = jordan_product(&x2, &xy).unwrap();
            let rhs = jordan_product(&x, &jordan_product(&x2, &y).unwrap()).unwrap();
            assert!(lhs.sub(&rhs).unwrap().max_abs() < 1e-10 * lhs.max_abs().max(1.0));
        }
    }
    let e1 = AlbertElement::diag(Tag::R, [1.0, 0.0, 0.0]);
    let e2 = AlbertElement::diag(Tag::R, [0.0, 1.0, 0.0]);
    assert_eq!(jordan_product(&e1, &e2).unwrap().max_abs(), 0.0);
    assert_eq!(jordan_product(&e1, &e1).unwrap(), e1);
    assert!(jordan_product(&e1, &AlbertElement::identity(Tag::C)).is_err());
}

#[test]
fn generic_norm_values() {
    assert_eq!(generic_norm(&AlbertElement::identity(Tag::R)), c(1.0, 0.0));
    assert_eq!(generic_norm(&AlbertElement::diag(Tag::R, [1.0, 1.0, 0.0])), c(0.0, 0.0));
    assert_eq!(generic_norm(&AlbertElement::diag(Tag::R, [2.0, 3.0, -1.0])), c(-6.0, 0.0));
    let mut rng = random::seeded(2);
    // exact homogeneity on integer entries with rational λ of small denominator
    for _ in 0..100 {
        let x = integer_albert(&mut rng);
        let n = generic_norm(&x);
        for lam in [2.0, 3.0, -1.0, 0.5, 0.25, -1.5] {
            assert_eq!(generic_norm(&x.scale(c(lam, 0.0))), n * (lam * lam * lam), "λ = {lam}");
        }
    }
    // cyclic symmetry
    for _ in 0..50 {
        let x = random_albert(&mut rng, Tag::C);
        let y = AlbertElement::new(Tag::C, [x.alpha[1], x.alpha[2], x.alpha[0]], [x.a[1], x.a[2], x.a[0]]).unwrap();
        assert!((generic_norm(&x) - generic_norm(&y)).norm() < 1e-11);
    }
}

#[test]
fn norm_of_real_symmetric_block_is_determinant() {
    // a real symmetric 3×3 matrix embedded with real octonion entries
    let (a, b, d, e, f, g) = (1.5, -2.0, 0.5, 3.0, 1.0, -0.7);
    let x = AlbertElement::real([a, b, d], [Oct::real(e), Oct::real(f), Oct::real(g)]);
    let m = nalgebra::Matrix3::new(a, g, f, g, b, e, f, e, d);
    assert!((generic_norm(&x).re - m.determinant()).abs() < 1e-12);
}

#[test]
fn freudenthal_adjoint_identity() {
    let mut rng = random::seeded(3);
    for field in [Tag::R, Tag::C] {
        for _ in 0..100 {
            let x = random_albert(&mut rng, field);
            assert!(adjoint_identity_residual(&x).unwrap() < 1e-10);
        }
    }
}

#[test]
fn albert_rank_strata() {
    let mut rng = random::seeded(4);
    for field in [Tag::R, Tag::C] {
        for k in 1..=3 {
            for _ in 0..200 {
                let x = stratum_sample(&mut rng, field, k);
                assert_eq!(albert_rank(&x, ALBERT_REL_TOL), k, "{field} stratum {k}");
            }
        }
    }
}

#[test]
fn albert_rank_lower_semicontinuous() {
    let mut rng = random::seeded(5);
    for k in 0..=3 {
        for _ in 0..30 {
            let x = if k == 0 { AlbertElement::zero(Tag::C) } else { stratum_sample(&mut rng, Tag::C, k) };
            let d = random_albert(&mut rng, Tag::C).scale(c(1e-3, 0.0));
            assert!(albert_rank(&x.add(&d).unwrap(), ALBERT_REL_TOL) >= albert_rank(&x, ALBERT_REL_TOL));
        }
    }
}

#[test]
fn albert_json_round_trip() {
    let mut rng = random::seeded(6);
    for field in [Tag::R, Tag::C] {
        let x = random_albert(&mut rng, field);
        let back = AlbertElement::from_json(&x.to_json()).unwrap();
        assert_eq!(back, x);
    }
    let v = serde_json::json!({"alpha": [1, 2, 3], "a": [[0,0,0,0,0,0,0,0],[0,0,0,0,0,0,0,0],[0,0,0,0,0,0,0,0]]});
    let x = AlbertElement::from_json(&v).unwrap();
    assert_eq!(generic_norm(&x), c(6.0, 0.0));
    assert!(AlbertElement::from_json(&serde_json::json!({"alpha": [1, 2]})).is_err());
}

const REGULAR: [Family; 5] =
    [Family::Sp { l: 3 }, Family::U { p: 2, q: 2 }, Family::SoStar { n: 4 }, Family::So2q { q: 4 }, Family::So2q { q: 6 }];

#[test]
fn ks_elements_have_jordan_rank_s() {
    for f in [Family::Sp { l: 4 }, Family::U { p: 3, q: 2 }, Family::SoStar { n: 5 }, Family::So2q { q: 5 }] {
        let d = LieAlgebraDescriptor::new(f).unwrap();
        for s in 0..=d.split_rank {
            let w = ks_element(&d, s).unwrap();
            assert_eq!(jordan_rank_classical(&w, 1e-9).unwrap(), s, "{f}");
        }
    }
}

#[test]
fn conjugates_project_to_their_stratum() {
    for (i, f) in REGULAR.iter().chain(&[Family::U { p: 3, q: 1 }, Family::SoStar { n: 5 }]).enumerate() {
        let d = LieAlgebraDescriptor::new(*f).unwrap();
        let r = d.split_rank;
        let mut rng = random::seeded(40 + i as u64);
        for s in 0..=r {
            let e = orbit_rep(&d, s, 0).unwrap();
            for _ in 0..40 {
                let x = random_conjugate(&d, &e, 3, &mut rng);
                let w = d.to_p_plus(&d.wrap(d.proj_p(&x.mat))).unwrap();
                assert_eq!(jordan_rank_classical(&w, 1e-8).unwrap(), s, "{f} s={s}");
                if is_regular(*f) {
                    assert_eq!(fundamental_invariant_vanishes(&w, 1e-8).unwrap(), s < r, "{f} s={s}");
                }
            }
        }
    }
}

#[test]
fn fundamental_invariant_examples() {
    // so(2,q): the image of e₁ lies on the quadric
    let w = PPlusElement::new(Family::So2q { q: 4 }, CMat::from_column_slice(4, 1, &[c(0.0, 1.0), c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]));
    assert_eq!(fundamental_invariant(&w).unwrap(), c(0.0, 0.0));
    let w = PPlusElement::new(Family::So2q { q: 4 }, CMat::from_column_slice(4, 1, &[c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]));
    assert_eq!(fundamental_invariant(&w).unwrap(), c(1.0, 0.0));

    let id = |n: usize| CMat::identity(n, n);
    assert_eq!(fundamental_invariant(&PPlusElement::new(Family::Sp { l: 3 }, id(3))).unwrap(), c(1.0, 0.0));
    assert_eq!(fundamental_invariant(&PPlusElement::new(Family::U { p: 2, q: 2 }, id(2))).unwrap(), c(1.0, 0.0));
    let mut j = CMat::zeros(4, 4);
    j[(0, 1)] = c(1.0, 0.0);
    j[(1, 0)] = c(-1.0, 0.0);
    j[(2, 3)] = c(1.0, 0.0);
    j[(3, 2)] = c(-1.0, 0.0);
    let wj = PPlusElement::new(Family::SoStar { n: 4 }, j.clone());
    assert_eq!(fundamental_invariant(&wj).unwrap(), c(1.0, 0.0));
    assert!((pfaffian(&j).unwrap().powi(2) - j.determinant()).norm() < 1e-14);

    // random antisymmetric: Pf² = det
    let mut rng = random::seeded(7);
    for n in [2, 4, 6, 8] {
        let a = random::complex_matrix(&mut rng, n, n);
        let a = &a - a.transpose();
        let pf: C64 = pfaffian(&a).unwrap();
        assert!((pf * pf - a.determinant()).norm() < 1e-9 * a.determinant().norm().max(1.0));
    }

    assert!(fundamental_invariant(&PPlusElement::new(Family::U { p: 2, q: 1 }, CMat::zeros(1, 2))).is_err());
    assert!(fundamental_invariant(&PPlusElement::new(Family::SoStar { n: 3 }, CMat::zeros(3, 3))).is_err());
    assert!(pfaffian(&CMat::zeros(3, 3)).is_err());
}
