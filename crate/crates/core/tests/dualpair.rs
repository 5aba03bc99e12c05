use nalgebra::{DMatrix, DVector};
use orbitkit::classify::{classify_nilpotent, random_group_element, Classification, ClassifyOptions};
use orbitkit::divalg::CMat;
use orbitkit::dualpair::*;
use orbitkit::liealg::Family;
use orbitkit::linalg::{self, c, fro, max_abs};
use orbitkit::random;
use orbitkit::triples::{standard_triples, OrbitType};

fn configs() -> Vec<DualPairConfig> {
    vec![
        DualPairConfig::new(DualPairCase::OSp, 2, 0, Family::Sp { l: 2 }).unwrap(),
        DualPairConfig::new(DualPairCase::OSp, 2, 1, Family::Sp { l: 2 }).unwrap(),
        DualPairConfig::new(DualPairCase::UU, 2, 0, Family::U { p: 2, q: 1 }).unwrap(),
        DualPairConfig::new(DualPairCase::UU, 1, 1, Family::U { p: 2, q: 2 }).unwrap(),
        DualPairConfig::new(DualPairCase::SpSoStar, 2, 0, Family::SoStar { n: 3 }).unwrap(),
        DualPairConfig::new(DualPairCase::SpSoStar, 1, 1, Family::SoStar { n: 2 }).unwrap(),
        DualPairConfig::new(DualPairCase::SpSo2q, 1, 0, Family::So2q { q: 3 }).unwrap(),
    ]
}

fn random_alpha(cfg: &DualPairConfig, rng: &mut random::Rng) -> CMat {
    let wb = cfg.w_basis();
    let mut a = CMat::zeros(cfg.alpha_shape.0, cfg.alpha_shape.1);
    for b in &wb {
        a += b.scale(random::gauss(rng));
    }
    a
}

fn random_vec(rng: &mut random::Rng, n: usize, real: bool) -> CMat {
    CMat::from_fn(n, 1, |_, _| if real { c(random::gauss(rng), 0.0) } else { random::complex(rng) })
}

#[test]
fn dagger_defining_identity() {
    for (i, cfg) in configs().iter().enumerate() {
        let mut rng = random::seeded(i as u64);
        let real = cfg.case == DualPairCase::OSp || cfg.case == DualPairCase::SpSo2q;
        for _ in 0..100 {
            let a = random_alpha(cfg, &mut rng);
            let (u, v) = if cfg.case == DualPairCase::SpSo2q {
                (random_vec(&mut rng, cfg.alpha_shape.1, real), random_vec(&mut rng, cfg.alpha_shape.0, real))
            } else {
                (random_vec(&mut rng, cfg.alpha_shape.0, real), random_vec(&mut rng, cfg.alpha_shape.1, real))
            };
            assert!(cfg.dagger_identity_residual(&a, &u, &v).unwrap() < 1e-10, "{}", cfg.case);
        }
        let z = CMat::zeros(cfg.alpha_shape.0, cfg.alpha_shape.1);
        assert_eq!(max_abs(&cfg.dagger(&z).unwrap()), 0.0);
        assert!(cfg.dagger(&CMat::zeros(1, 1)).is_err());
    }
}

#[test]
fn momentum_maps_land_in_their_algebras() {
    for (i, cfg) in configs().iter().enumerate() {
        let mut rng = random::seeded(50 + i as u64);
        for _ in 0..20 {
            let a = random_alpha(cfg, &mut rng);
            let mh = cfg.mu_h(&a).unwrap();
            assert!(cfg.h_residual(&mh) < 1e-10 * max_abs(&mh).max(1.0), "{}", cfg.case);
            let mg = cfg.mu_g(&a).unwrap();
            assert!(cfg.target.contains_rep(&mg.mat, 1e-10).unwrap(), "{}", cfg.case);
        }
        for y in cfg.h_basis() {
            assert!(cfg.h_residual(&y) < 1e-14);
        }
    }
}

#[test]
fn equivariance_under_both_groups() {
    for (i, cfg) in configs().iter().enumerate() {
        let mut rng = random::seeded(90 + i as u64);
        for _ in 0..10 {
            let a = random_alpha(cfg, &mut rng);
            let (y, yinv) = random_group_element(&cfg.target, 2, &mut rng);
            let (x, xinv) = cfg.random_h_element(&mut rng, 0.4);
            let b = &y * &a * &xinv;
            let lhs = cfg.mu_g(&b).unwrap().mat;
            let rhs = &y * cfg.mu_g(&a).unwrap().mat * &yinv;
            assert!(max_abs(&(&lhs - &rhs)) <= 1e-9 * max_abs(&rhs).max(1.0), "{}", cfg.case);
            let lhs = cfg.mu_h(&b).unwrap();
            let rhs = &x * cfg.mu_h(&a).unwrap() * &xinv;
            assert!(max_abs(&(&lhs - &rhs)) <= 1e-9 * max_abs(&rhs).max(1.0));
            // (yαx⁻¹)† = xα†y⁻¹
            let lhs = cfg.dagger(&b).unwrap();
            let rhs = &x * cfg.dagger(&a).unwrap() * &yinv;
            assert!(max_abs(&(&lhs - &rhs)) <= 1e-9 * max_abs(&rhs).max(1.0));
        }
    }
}

#[test]
fn symplectic_form_on_w() {
    for cfg in configs() {
        let g = omega_gram(&cfg).unwrap();
        assert!((&g + g.transpose()).amax() < 1e-12, "{}", cfg.case);
        assert_eq!(linalg::real_rank(&g, 1e-10), cfg.w_dim(), "{}", cfg.case);
    }
    // ℓ = 1, s = 1: ω((q¹,p¹),(q²,p²)) = q¹p² − q²p¹
    let cfg = DualPairConfig::new(DualPairCase::OSp, 1, 0, Family::Sp { l: 1 }).unwrap();
    let v = |q: f64, p: f64| CMat::from_column_slice(2, 1, &[c(q, 0.0), c(p, 0.0)]);
    let (q1, p1, q2, p2) = (0.3, -1.2, 2.0, 0.7);
    let w = cfg.omega_w(&v(q1, p1), &v(q2, p2)).unwrap();
    assert!((w - (q1 * p2 - q2 * p1)).abs() < 1e-15);
}

#[test]
fn angular_momentum_example() {
    let cfg = DualPairConfig::new(DualPairCase::OSp, 2, 0, Family::Sp { l: 1 }).unwrap();
    let (q, p) = ([0.4, -1.1], [2.0, 0.3]);
    let a = CMat::from_row_slice(2, 2, &[c(q[0], 0.0), c(q[1], 0.0), c(p[0], 0.0), c(p[1], 0.0)]);
    let l = q[0] * p[1] - q[1] * p[0];
    let mh = cfg.mu_h(&a).unwrap();
    let want = CMat::from_row_slice(2, 2, &[c(0.0, 0.0), c(l, 0.0), c(-l, 0.0), c(0.0, 0.0)]);
    assert!(max_abs(&(mh - want)) < 1e-14);
}

#[test]
fn wedge_sum_for_larger_l() {
    // μ_H(α) = Σ q_k ∧ p_k
    let cfg = DualPairConfig::new(DualPairCase::OSp, 3, 0, Family::Sp { l: 2 }).unwrap();
    let mut rng = random::seeded(3);
    let a = random_alpha(&cfg, &mut rng);
    let mh = cfg.mu_h(&a).unwrap();
    let mut want = CMat::zeros(3, 3);
    for k in 0..2 {
        let qk = a.row(k).transpose();
        let pk = a.row(2 + k).transpose();
        want += &qk * pk.transpose() - &pk * qk.transpose();
    }
    assert!(max_abs(&(mh - want)) < 1e-13);
}

#[test]
fn zero_level_compact() {
    let opts = ClassifyOptions::default();
    for (case, fam, s) in [
        (DualPairCase::OSp, Family::Sp { l: 2 }, 1),
        (DualPairCase::OSp, Family::Sp { l: 2 }, 2),
        (DualPairCase::OSp, Family::Sp { l: 2 }, 3),
        (DualPairCase::UU, Family::U { p: 2, q: 2 }, 1),
        (DualPairCase::UU, Family::U { p: 3, q: 2 }, 3),
        (DualPairCase::SpSoStar, Family::SoStar { n: 4 }, 1),
        (DualPairCase::SpSoStar, Family::SoStar { n: 4 }, 3),
    ] {
        let cfg = DualPairConfig::new(case, s, 0, fam).unwrap();
        let r = cfg.target.split_rank;
        let samples = cfg.sample_zero_level(60, 11);
        for a in &samples {
            assert!(max_abs(&cfg.mu_h(a).unwrap()) <= 1e-10 * max_abs(a).powi(2).max(1.0));
            let x = cfg.mu_g(a).unwrap();
            let n = fro(&x.mat);
            assert!(fro(&(&x.mat * &x.mat)) <= 1e-9 * (n * n).max(1e-300));
            match classify_nilpotent(&cfg.target, &x, &opts).unwrap() {
                Classification::Type(t) => {
                    assert_eq!(t.u, 0, "{case} {fam} s={s}");
                    assert!(t.t <= r.min(s));
                }
                other => panic!("{other:?}"),
            }
        }
        let rep = reduce_and_classify(&cfg, 60, 11, &opts).unwrap();
        assert!(rep.histogram.contains_key(&OrbitType::new(r.min(s), 0)), "{case} {fam} s={s}");
    }
}

#[test]
fn o2_on_hom_r2_r4_types() {
    let cfg = DualPairConfig::new(DualPairCase::OSp, 2, 0, Family::Sp { l: 2 }).unwrap();
    let rep = reduce_and_classify(&cfg, 200, 5, &ClassifyOptions::default()).unwrap();
    assert_eq!(rep.support(), vec![OrbitType::new(0, 0), OrbitType::new(1, 0), OrbitType::new(2, 0)]);
    assert_eq!(rep.histogram.values().sum::<usize>(), 200);
}

#[test]
fn non_compact_both_signs() {
    let opts = ClassifyOptions::default();
    let cfg = DualPairConfig::new(DualPairCase::OSp, 1, 1, Family::Sp { l: 1 }).unwrap();
    let rep = reduce_and_classify(&cfg, 200, 8, &opts).unwrap();
    assert!(rep.histogram.contains_key(&OrbitType::new(1, 0)));
    assert!(rep.histogram.contains_key(&OrbitType::new(0, 1)));
    assert_eq!(rep.not_pseudoholomorphic, 0);

    for (case, fam, sp, sm) in [
        (DualPairCase::OSp, Family::Sp { l: 3 }, 2, 1),
        (DualPairCase::UU, Family::U { p: 2, q: 2 }, 1, 2),
        (DualPairCase::SpSoStar, Family::SoStar { n: 4 }, 1, 1),
    ] {
        let cfg = DualPairConfig::new(case, sp, sm, fam).unwrap();
        let r = cfg.target.split_rank;
        let rep = reduce_and_classify(&cfg, 150, 21, &opts).unwrap();
        assert_eq!(rep.not_pseudoholomorphic, 0);
        for t in rep.support() {
            assert!(t.t <= r.min(sp) && t.u <= r.min(sm), "{case} {t}");
        }
        assert!(rep.histogram.contains_key(&OrbitType::new(r.min(sp), r.min(sm).min(r - r.min(sp)))));
    }
}

#[test]
fn invariant_quadratics_examples() {
    let cfg = DualPairConfig::new(DualPairCase::OSp, 2, 0, Family::Sp { l: 2 }).unwrap();
    let iq = invariant_quadratics_dim(&cfg).unwrap();
    assert_eq!(iq.dim, 10);
    assert!(iq.spans());
    assert!(iq.mu_g_invariance_residual < 1e-10);

    let cfg = DualPairConfig::new(DualPairCase::UU, 1, 0, Family::U { p: 2, q: 1 }).unwrap();
    let iq = invariant_quadratics_dim(&cfg).unwrap();
    assert_eq!(iq.dim, 9);
    assert!(iq.spans());

    // O(1) has trivial Lie algebra: every quadratic form is invariant
    let cfg = DualPairConfig::new(DualPairCase::OSp, 1, 0, Family::Sp { l: 2 }).unwrap();
    assert_eq!(invariant_quadratics_dim(&cfg).unwrap().dim, 10);

    let cfg = DualPairConfig::new(DualPairCase::SpSoStar, 1, 0, Family::SoStar { n: 2 }).unwrap();
    let iq = invariant_quadratics_dim(&cfg).unwrap();
    assert_eq!(iq.dim, cfg.target.dim);
    assert!(iq.spans());

    let big = DualPairConfig::new(DualPairCase::OSp, 4, 0, Family::Sp { l: 4 }).unwrap();
    assert!(invariant_quadratics_dim(&big).is_err());
}

#[test]
fn semisimple_level() {
    for (case, fam, s) in [
        (DualPairCase::OSp, Family::Sp { l: 2 }, 4),
        (DualPairCase::UU, Family::U { p: 2, q: 1 }, 3),
        (DualPairCase::SpSoStar, Family::SoStar { n: 3 }, 3),
    ] {
        let cfg = DualPairConfig::new(case, s, 0, fam).unwrap();
        let rep = semisimple_reduction_check(&cfg, 1.0, 20, 4, 1e-7).unwrap();
        assert!(rep.all_pass(), "{case}: {rep:?}");
        let rep = semisimple_reduction_check(&cfg, 0.25, 5, 4, 1e-7).unwrap();
        assert!(rep.all_pass());
    }
    let cfg = DualPairConfig::new(DualPairCase::OSp, 2, 0, Family::Sp { l: 2 }).unwrap();
    assert!(semisimple_reduction_check(&cfg, 1.0, 1, 0, 1e-7).is_err());
    let cfg = DualPairConfig::new(DualPairCase::OSp, 4, 0, Family::Sp { l: 2 }).unwrap();
    assert!(semisimple_reduction_check(&cfg, 0.0, 1, 0, 1e-7).is_err());
}

#[test]
fn doubling_eps_doubles_eigenvalues() {
    let cfg = DualPairConfig::new(DualPairCase::UU, 3, 0, Family::U { p: 2, q: 1 }).unwrap();
    let a = CMat::identity(3, 3);
    let e1 = linalg::char_poly(&cfg.mu_g(&a).unwrap().mat);
    let e2 = linalg::char_poly(&cfg.mu_g(&a.scale(2f64.sqrt())).unwrap().mat);
    // char poly coefficients scale as 2^k
    for (k, (x, y)) in e1.iter().zip(&e2).enumerate() {
        assert!((x * 2f64.powi(k as i32) - y).norm() < 1e-12);
    }
}

#[test]
fn so2q_sp1_moment_display() {
    let cfg = DualPairConfig::new(DualPairCase::SpSo2q, 1, 0, Family::So2q { q: 5 }).unwrap();
    let mut rng = random::seeded(6);
    let g = cfg.target.metric.clone().unwrap();
    for _ in 0..20 {
        let a = random_alpha(&cfg, &mut rng);
        let w1: CMat = a.columns(0, 1).into_owned();
        let w2: CMat = a.columns(1, 1).into_owned();
        let dot = |x: &CMat, y: &CMat| (x.transpose() * &g * y)[(0, 0)];
        let want = CMat::from_row_slice(
            2,
            2,
            &[dot(&w1, &w2), dot(&w2, &w2), -dot(&w1, &w1), -dot(&w1, &w2)],
        );
        assert!(max_abs(&(cfg.mu_h(&a).unwrap() - want)) < 1e-12);
    }
}

#[test]
fn so2q_nilcone_chain() {
    for q in [3, 5] {
        let cfg = DualPairConfig::new(DualPairCase::SpSo2q, 1, 0, Family::So2q { q }).unwrap();
        let samples = sample_so2q_nilcone(&cfg, 200, 13).unwrap();
        let opts = ClassifyOptions::default();
        let mut seen = std::collections::BTreeSet::new();
        for a in &samples {
            let mh = cfg.mu_h(a).unwrap();
            assert!(max_abs(&(&mh * &mh)) <= 1e-9 * max_abs(&mh).powi(2).max(1.0));
            let x = cfg.mu_g(a).unwrap().mat;
            let n = fro(&x);
            assert!(fro(&(&x * &x * &x)) <= 1e-9 * n.powi(3).max(1e-300));
            if let Classification::Type(t) = classify_nilpotent(&cfg.target, &cfg.target.wrap(x), &opts).unwrap() {
                seen.insert(t);
            }
        }
        // zero level and its complement in the nilcone reach several components
        assert!(seen.len() >= 3, "{seen:?}");
    }
}

#[test]
fn so2q_alpha_images_are_minus_twice_the_triple_e() {
    let cfg = DualPairConfig::new(DualPairCase::SpSo2q, 1, 0, Family::So2q { q: 5 }).unwrap();
    let (a1, a2) = so2q_alphas(5);
    let t = standard_triples(&cfg.target);
    for (a, tr) in [(a1, &t[0]), (a2, &t[1])] {
        assert!(max_abs(&cfg.mu_h(&a).unwrap()) < 1e-15);
        let m = cfg.mu_g(&a).unwrap().mat;
        assert!(max_abs(&(m + tr.e.mat.scale(2.0))) < 1e-14);
    }
}

#[test]
fn quadratic_hamiltonians_on_the_plane() {
    let v = DVector::from_vec(vec![0.7, -1.3]); // (q, p)
    let (q, p) = (v[0], v[1]);
    let e = DMatrix::from_row_slice(2, 2, &[0.0, 1.0, 0.0, 0.0]);
    let f = DMatrix::from_row_slice(2, 2, &[0.0, 0.0, 1.0, 0.0]);
    let h = DMatrix::from_row_slice(2, 2, &[1.0, 0.0, 0.0, -1.0]);
    assert!((quadratic_hamiltonian(&e, &v).unwrap() - p * p / 2.0).abs() < 1e-15);
    assert!((quadratic_hamiltonian(&f, &v).unwrap() + q * q / 2.0).abs() < 1e-15);
    assert!((quadratic_hamiltonian(&h, &v).unwrap() - p * q).abs() < 1e-15);
    let bad = DMatrix::from_row_slice(2, 2, &[1.0, 0.0, 0.0, 1.0]);
    assert!(quadratic_hamiltonian(&bad, &v).is_err());
}

#[test]
fn rank_one_moment_matrix() {
    let (q1, q2, p1, p2) = (1.5, -0.5, 2.0, 3.0);
    let v = DVector::from_vec(vec![q1, q2, p1, p2]);
    let m = rank_one_moment(&v);
    #[rustfmt::skip]
    let want = DMatrix::from_row_slice(4, 4, &[
        q1 * p1, q1 * p2, -q1 * q1, -q1 * q2,
        q2 * p1, q2 * p2, -q2 * q1, -q2 * q2,
        p1 * p1, p1 * p2, -p1 * q1, -p1 * q2,
        p2 * p1, p2 * p2, -p2 * q1, -p2 * q2,
    ]);
    assert!((&m - want).amax() < 1e-15);
    assert_eq!(rank_one_moment(&DVector::zeros(4)).amax(), 0.0);

    // ½tr(X·vv†) = f_X(v), and df_X(v)[w] = ω(Xv, w)
    let mut rng = random::seeded(8);
    let j = symplectic_j(2);
    for _ in 0..20 {
        let s = random::real_matrix(&mut rng, 4, 4);
        let s = &s + s.transpose();
        let x = &j * s; // J·S is symplectic
        let fx = quadratic_hamiltonian(&x, &v).unwrap();
        assert!((0.5 * (&x * &m).trace() - fx).abs() < 1e-12);
        let w = DVector::from_fn(4, |_, _| random::gauss(&mut rng));
        let hstep = 1e-4;
        let fd = (quadratic_hamiltonian(&x, &(&v + &w * hstep)).unwrap()
            - quadratic_hamiltonian(&x, &(&v - &w * hstep)).unwrap())
            / (2.0 * hstep);
        assert!((fd - omega(&(&x * &v), &w)).abs() < 1e-6);
    }
}

#[test]
fn h_pairing_is_the_momentum_of_the_action() {
    // d/dt ½ω_W(α·exp(−tY)... ) : ⟨Y, μ_H(α)⟩ equals ½ω_W(−αY, α)
    for (i, cfg) in configs().iter().enumerate() {
        let mut rng = random::seeded(200 + i as u64);
        let a = random_alpha(cfg, &mut rng);
        for y in cfg.h_basis() {
            let lhs = cfg.h_pairing(&y, &a).unwrap();
            let rhs = 0.5 * cfg.omega_w(&(-(&a * &y)), &a).unwrap();
            assert!((lhs - rhs).abs() < 1e-10 * (1.0 + lhs.abs()), "{}: {lhs} vs {rhs}", cfg.case);
        }
    }
}
