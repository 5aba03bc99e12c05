use orbitkit::classify::{classify_nilpotent, Classification, ClassifyOptions};
use orbitkit::liealg::{Family, LieAlgebraDescriptor};
use orbitkit::linalg::{commutator, max_abs};
use orbitkit::triples::*;

fn default_families() -> Vec<Family> {
    let mut v = Vec::new();
    for l in 1..=4 {
        v.push(Family::Sp { l });
    }
    for p in 1..=3 {
        for q in 1..=3 {
            v.push(Family::U { p, q });
        }
    }
    for n in 1..=4 {
        v.push(Family::SoStar { n });
    }
    for q in 2..=6 {
        v.push(Family::So2q { q });
    }
    v
}

#[test]
fn standard_triples_are_exact_h1_triples() {
    for f in default_families() {
        let d = LieAlgebraDescriptor::new(f).unwrap();
        let trs = standard_triples(&d);
        assert_eq!(trs.len(), d.split_rank, "{f}");
        for tr in &trs {
            let fl = check_triple(&d, &tr.e, &tr.f, &tr.h, 0.0);
            assert!(fl.sl2 && fl.invariant && fl.h1, "{f}: {fl:?}");
            for m in [&tr.e, &tr.f, &tr.h] {
                assert!(d.contains_rep(&m.mat, 0.0).unwrap(), "{f}");
            }
        }
        assert_eq!(max_cross_commutator(&trs), 0.0, "{f}");
        // the h_k commute pairwise
        for a in &trs {
            for b in &trs {
                assert_eq!(max_abs(&commutator(&a.h.mat, &b.h.mat)), 0.0);
            }
        }
    }
}

#[test]
fn representatives_classify_to_their_type() {
    let opts = ClassifyOptions::default();
    for f in default_families() {
        let d = LieAlgebraDescriptor::new(f).unwrap();
        for ty in OrbitType::all(d.split_rank) {
            let x = orbit_rep(&d, ty.t, ty.u).unwrap();
            assert_eq!(classify_nilpotent(&d, &x, &opts).unwrap(), Classification::Type(ty), "{f} {ty}");
            if f.is_standard() {
                assert_eq!(max_abs(&(&x.mat * &x.mat)), 0.0);
                let b = d.b_x_form(&x, 1e-8).unwrap();
                assert_eq!((b.rank, b.signature), (ty.rank(), ty.signature()));
            } else {
                let x3 = &x.mat * &x.mat * &x.mat;
                assert_eq!(max_abs(&x3), 0.0);
                if ty.rank() == 2 {
                    assert!(max_abs(&(&x.mat * &x.mat)) > 0.0);
                }
            }
        }
    }
}

#[test]
fn ks_elements_have_model_rank_s() {
    for f in default_families() {
        let d = LieAlgebraDescriptor::new(f).unwrap();
        for s in 0..=d.split_rank {
            let w = ks_element(&d, s).unwrap();
            assert!(w.shape_residual() < 1e-14);
            let tr = partial_triple(&d, s).unwrap();
            assert!(ks_pplus_residual(&d, &tr) < 1e-14, "{f} s={s}");
            let r = orbitkit::classify::model_rank(&w, 1e-8);
            assert_eq!(r, if s == 0 { 0 } else if matches!(f, Family::SoStar { .. }) { 2 * s } else { s }, "{f} s={s}");
        }
    }
}

#[test]
fn orbit_rep_rejects_oversized_type() {
    let d = LieAlgebraDescriptor::new(Family::Sp { l: 2 }).unwrap();
    assert!(orbit_rep(&d, 2, 1).is_err());
}
