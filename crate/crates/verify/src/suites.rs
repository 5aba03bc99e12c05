use std::collections::{BTreeMap, BTreeSet};

use serde_json::{json, Value};

use orbitkit::classify::{
    classify_nilpotent, in_closure, is_holomorphic, pplus_closure_report, random_conjugate, semisimple_orbit_check,
    Classification, ClassifyOptions,
};
use orbitkit::divalg::{CMat, Oct, Tag, C64};
use orbitkit::dualpair::{
    invariant_quadratics_dim, reduce_and_classify, sample_so2q_nilcone, semisimple_reduction_check, so2q_alphas,
    DualPairCase, DualPairConfig,
};
use orbitkit::jordan::{
    adjoint_identity_residual, albert_rank, fundamental_invariant, fundamental_invariant_vanishes, generic_norm,
    is_regular, jordan_rank_classical, pfaffian, random_albert, random_albert_of_rank, AlbertElement, ALBERT_REL_TOL,
};
use orbitkit::liealg::{Family, LieAlgebraDescriptor, PPlusElement};
use orbitkit::linalg::{c, fro, herm_eigenvalues, max_abs};
use orbitkit::poisson::{
    bracket_linear_with_poly, contraction_bracket, disc_model_bracket, model_metric_and_curvature, pplus_basis,
    pplus_bracket_matrix, s1_energy, sl2_bracket_table, stereographic, stereographic_pushforward_bracket,
    ContractionModel, PoissonContext, Polynomial,
};
use orbitkit::random::{self, Rng};
use orbitkit::triples::{
    check_triple, ks_element, ks_pplus_residual, max_cross_commutator, orbit_rep, partial_triple, standard_triples,
    OrbitType,
};
use orbitkit::Result;

use crate::{CheckSpec, Outcome, Suite, VerifyOptions};

/// One small and one large member of each family, within sp(ℓ≤4), u(p≤3,q≤3),
/// so*(2n≤8), so(2,q≤6).
pub const DEFAULT_FAMILIES: [Family; 8] = [
    Family::Sp { l: 2 },
    Family::Sp { l: 4 },
    Family::U { p: 2, q: 1 },
    Family::U { p: 3, q: 3 },
    Family::SoStar { n: 3 },
    Family::SoStar { n: 4 },
    Family::So2q { q: 3 },
    Family::So2q { q: 6 },
];

const CONJ_STEPS: usize = 3;
const RANK_TOL: f64 = 1e-8;
const POLARIZATION_TOL: f64 = 1e-12;
const SEMISIMPLE_TOL: f64 = 1e-7;

fn out(pass: bool, residual: f64, detail: Value) -> Result<Outcome> {
    Ok(Outcome { pass, residual, detail })
}

fn descriptors() -> Result<Vec<LieAlgebraDescriptor>> {
    DEFAULT_FAMILIES.iter().map(|f| LieAlgebraDescriptor::new(*f)).collect()
}

/// Independent stream per (check, item) so results do not depend on order.
fn stream(opts: &VerifyOptions, check: u64, item: u64) -> Rng {
    random::substream(opts.seed.wrapping_mul(0x9e37_79b9).wrapping_add(check), item)
}

fn conj_projection(d: &LieAlgebraDescriptor, x: &orbitkit::liealg::LieElement, rng: &mut Rng) -> Result<PPlusElement> {
    let y = random_conjugate(d, x, CONJ_STEPS, rng);
    d.to_p_plus(&d.wrap(d.proj_p(&y.mat)))
}

pub(crate) fn all_checks() -> Vec<CheckSpec> {
    use Suite::*;
    let spec = |name, suite, statement, run| CheckSpec { name, suite, statement, run };
    vec![
        spec("triples.relations", Triples,
            "standard H1-triples satisfy the sl2, Cartan-compatibility and H1 relations exactly and commute pairwise",
            triple_relations),
        spec("triples.square_zero", Triples,
            "e_{t,u} squares to zero (cubes to zero in so(2,q), with nonzero square when t+u = 2)",
            triple_square_zero),
        spec("triples.ks_rank", Triples,
            "the p+ element of the first s triples has Jordan rank s", ks_rank),
        spec("classify.conjugation_invariance", Classify,
            "random conjugates of e_{t,u} classify back to (t,u) for all (r+1)(r+2)/2 types", conjugation_invariance),
        spec("classify.holomorphic_nonnegative", Classify,
            "conjugates of e_{s,0} have -J_V X positive semidefinite; conjugates of e_{1,1} are indefinite",
            holomorphic_nonnegative),
        spec("closure.chain", Closure,
            "e_{s,0} lies in the closure of the rank-s' holomorphic orbit iff s' >= s", closure_chain),
        spec("closure.pplus_ranks", Closure,
            "p+ determinantal rank conditions reproduce the holomorphic closure order", pplus_ranks),
        spec("closure.so2q_quadric", Closure,
            "p+ images of conjugates of e_1 in so(2,q) lie on the quadric sum w_j^2 = 0", so2q_quadric),
        spec("reduction.compact_o", Reduction,
            "O(s) zero-level images in sp(l,R) are holomorphic of rank <= min(l,s), the maximum is attained and the support stabilizes at s = l",
            compact_o),
        spec("reduction.compact_u", Reduction,
            "U(s) zero-level images in u(p,q) are holomorphic of rank <= min(r,s), the maximum is attained and the support stabilizes at s = r",
            compact_u),
        spec("reduction.compact_sp", Reduction,
            "Sp(s) zero-level images in so*(2n) are holomorphic of rank <= min(r,s), the maximum is attained and the support stabilizes at s = r",
            compact_sp),
        spec("reduction.noncompact_o11", Reduction,
            "O(1,1) on Hom(R^2,R^2) reaches both (1,0) and (0,1): the whole nilcone of sp(1,R)", noncompact_o11),
        spec("reduction.noncompact_bounds", Reduction,
            "O(s',s''), U(s',s''), Sp(s',s'') zero-level types satisfy t <= min(r,s'), u <= min(r,s'')", noncompact_bounds),
        spec("reduction.semisimple_level", Reduction,
            "the level -eps J_V maps onto the semisimple orbit of 2 eps z", semisimple_level),
        spec("invariants.first_main_theorem", Invariants,
            "H-invariant quadratics on W have dimension dim g and are spanned by the components of mu_G",
            first_main_theorem),
        spec("invariants.momentum_property", Invariants,
            "<Y, mu_H(alpha)> equals half the symplectic pairing of the infinitesimal action with alpha",
            momentum_property),
        spec("invariants.nilcone_cube", Invariants,
            "mu_H(alpha) in the sp(1,R) nilcone implies mu_G(alpha)^3 = 0 in so(2,q)", nilcone_cube),
        spec("invariants.alpha_images", Invariants,
            "mu_G(alpha_1), mu_G(alpha_2) reproduce the so(2,q) triple elements e_1, e_2 entrywise", alpha_images),
        spec("poisson.structure_constants", Poisson,
            "structure constants are antisymmetric and satisfy the Jacobi identity", structure_constants),
        spec("poisson.polarization", Poisson,
            "holomorphic p+ coordinates Poisson-commute at every point", polarization),
        spec("poisson.cauchy_riemann", Poisson,
            "brackets of a holomorphic coordinate with holomorphic polynomials of degree <= 2 vanish", cauchy_riemann),
        spec("poisson.energy_sign", Poisson,
            "the circle momentum is positive on holomorphic and negative on antiholomorphic representatives", energy_sign),
        spec("contraction.sl2_table", Contraction,
            "sl(2,R) coordinate brackets reproduce the model table up to the documented sign and factor 2", sl2_table),
        spec("contraction.curvature", Contraction,
            "model curvature is -1 at (eps, zeta) = (1, 0) and vanishes identically at eps = 0", curvature),
        spec("contraction.stereographic", Contraction,
            "the stereographic change of variables carries the hyperboloid bracket to the disc model", stereographic_check),
        spec("contraction.convergence", Contraction,
            "sup |bracket_eps - bracket_0| <= eps on a grid", convergence),
        spec("contraction.semisimple_orbit", Contraction,
            "conjugates of 2 eps z share its characteristic polynomial; nilpotents do not", semisimple_orbit),
        spec("jordan.adjoint_identity", Jordan,
            "A o A# = nu(A) 1 on random Albert elements", adjoint_identity),
        spec("jordan.norm_values", Jordan,
            "nu(1) = 1, nu is exactly cubic under rational scaling and invariant under the cyclic symmetry", norm_values),
        spec("jordan.albert_rank_strata", Jordan,
            "Albert rank recovers the stratum of constructed rank-k elements", albert_rank_strata),
        spec("jordan.classical_strata", Jordan,
            "p+ images of conjugates of e_{s,0} have Jordan rank s; the fundamental invariant vanishes exactly below maximal rank",
            classical_strata),
        spec("jordan.fundamental_invariant_normalization", Jordan,
            "the fundamental invariant is 1 on the identity pattern and Pf^2 = det", fundamental_normalization),
    ]
}

// ---------------------------------------------------------------- triples

fn triple_relations(opts: &VerifyOptions) -> Result<Outcome> {
    let mut worst = 0.0_f64;
    let mut flags_ok = true;
    let mut rows = Vec::new();
    for d in descriptors()? {
        let ts = standard_triples(&d);
        let mut rel = 0.0_f64;
        for t in &ts {
            let fl = check_triple(&d, &t.e, &t.f, &t.h, opts.tolerance);
            flags_ok &= fl.sl2 && fl.invariant && fl.h1 && !fl.zero;
            rel = rel.max(fl.sl2_residual).max(fl.invariant_residual).max(fl.h1_residual);
        }
        let cross = max_cross_commutator(&ts);
        flags_ok &= ts.len() == d.split_rank;
        worst = worst.max(rel).max(cross);
        rows.push(json!({"family": d.name(), "triples": ts.len(), "relation_residual": rel, "cross_commutator": cross}));
    }
    out(flags_ok && worst == 0.0, worst, json!({ "families": rows }))
}

fn matrix_power(m: &CMat, k: usize) -> CMat {
    let mut p = m.clone();
    for _ in 1..k {
        p = &p * m;
    }
    p
}

fn triple_square_zero(_: &VerifyOptions) -> Result<Outcome> {
    let mut worst = 0.0_f64;
    let mut ok = true;
    for d in descriptors()? {
        let so2q = matches!(d.family, Family::So2q { .. });
        for ty in OrbitType::all(d.split_rank) {
            let e = orbit_rep(&d, ty.t, ty.u)?.mat;
            let sq = max_abs(&(&e * &e));
            if so2q && ty.rank() == 2 {
                let cube = max_abs(&matrix_power(&e, 3));
                worst = worst.max(cube);
                ok &= cube == 0.0 && sq > 0.0;
            } else {
                worst = worst.max(sq);
                ok &= sq == 0.0;
            }
        }
    }
    out(ok, worst, json!({}))
}

fn ks_rank(opts: &VerifyOptions) -> Result<Outcome> {
    let mut mismatches = 0;
    let mut worst = 0.0_f64;
    for d in descriptors()? {
        for s in 0..=d.split_rank {
            if jordan_rank_classical(&ks_element(&d, s)?, RANK_TOL)? != s {
                mismatches += 1;
            }
            worst = worst.max(ks_pplus_residual(&d, &partial_triple(&d, s)?));
        }
    }
    out(mismatches == 0 && worst <= opts.tolerance, worst, json!({ "rank_mismatches": mismatches }))
}

// ---------------------------------------------------------------- classify

fn conjugation_invariance(opts: &VerifyOptions) -> Result<Outcome> {
    let n = opts.samples_or(100);
    let copts = ClassifyOptions::default();
    let mut total_bad = 0;
    let mut ok = true;
    let mut rows = Vec::new();
    for (fi, d) in descriptors()?.iter().enumerate() {
        let r = d.split_rank;
        let types = OrbitType::all(r);
        ok &= types.len() == (r + 1) * (r + 2) / 2;
        let mut bad = 0;
        for (ti, ty) in types.iter().enumerate() {
            let x = orbit_rep(d, ty.t, ty.u)?;
            let mut rng = stream(opts, 1, (fi * 64 + ti) as u64);
            for _ in 0..n {
                let y = random_conjugate(d, &x, CONJ_STEPS, &mut rng);
                if classify_nilpotent(d, &y, &copts)? != Classification::Type(*ty) {
                    bad += 1;
                }
            }
        }
        total_bad += bad;
        rows.push(json!({"family": d.name(), "types": types.len(), "samples_per_type": n, "mismatches": bad}));
    }
    out(ok && total_bad == 0, total_bad as f64, json!({ "families": rows }))
}

fn holomorphic_nonnegative(opts: &VerifyOptions) -> Result<Outcome> {
    let n = opts.samples_or(100);
    let copts = ClassifyOptions::default();
    let mut worst = 0.0_f64;
    let mut failures = 0;
    for (fi, d) in descriptors()?.iter().enumerate() {
        let mut rng = stream(opts, 2, fi as u64);
        let r = d.split_rank;
        for s in 1..=r {
            let x = orbit_rep(d, s, 0)?;
            for _ in 0..n {
                let y = random_conjugate(d, &x, CONJ_STEPS, &mut rng);
                match &d.j_v {
                    Some(j) => {
                        let ev = herm_eigenvalues(&-(j * &y.mat));
                        let scale = ev.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
                        let lo = ev.first().copied().unwrap_or(0.0);
                        worst = worst.max(-lo / scale);
                        if lo < -RANK_TOL * scale {
                            failures += 1;
                        }
                    }
                    None => {
                        if !is_holomorphic(d, &y, &copts)? {
                            failures += 1;
                        }
                    }
                }
            }
        }
        if r >= 2 {
            let x = orbit_rep(d, 1, 1)?;
            for _ in 0..n {
                let y = random_conjugate(d, &x, CONJ_STEPS, &mut rng);
                let indefinite = match &d.j_v {
                    Some(j) => {
                        let ev = herm_eigenvalues(&-(j * &y.mat));
                        let scale = ev.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
                        ev[0] < -RANK_TOL * scale && ev[ev.len() - 1] > RANK_TOL * scale
                    }
                    None => !is_holomorphic(d, &y, &copts)?,
                };
                if !indefinite {
                    failures += 1;
                }
            }
        }
    }
    out(failures == 0, worst.max(0.0), json!({ "failures": failures, "samples_per_orbit": n }))
}

// ---------------------------------------------------------------- closure

fn closure_chain(opts: &VerifyOptions) -> Result<Outcome> {
    let copts = ClassifyOptions::default();
    let mut bad = 0;
    for (fi, d) in descriptors()?.iter().enumerate() {
        let mut rng = stream(opts, 3, fi as u64);
        let r = d.split_rank;
        for s in 0..=r {
            let x = orbit_rep(d, s, 0)?;
            let y = random_conjugate(d, &x, CONJ_STEPS, &mut rng);
            for s2 in 0..=r {
                for z in [&x, &y] {
                    if in_closure(d, z, s2, &copts)?.in_closure != (s2 >= s) {
                        bad += 1;
                    }
                }
            }
        }
        if r >= 2 {
            let x = orbit_rep(d, 1, 1)?;
            for s2 in 0..=r {
                if in_closure(d, &x, s2, &copts)?.in_closure {
                    bad += 1;
                }
            }
        }
    }
    out(bad == 0, bad as f64, json!({ "mismatches": bad }))
}

fn pplus_ranks(opts: &VerifyOptions) -> Result<Outcome> {
    let n = opts.samples_or(20);
    let mut bad = 0;
    for (fi, d) in descriptors()?.iter().enumerate() {
        let mut rng = stream(opts, 4, fi as u64);
        let r = d.split_rank;
        for s in 0..=r {
            let x = orbit_rep(d, s, 0)?;
            for _ in 0..n {
                let w = conj_projection(d, &x, &mut rng)?;
                for s2 in 0..=r {
                    if pplus_closure_report(&w, s2, RANK_TOL).in_closure != (s2 >= s) {
                        bad += 1;
                    }
                }
            }
        }
    }
    out(bad == 0, bad as f64, json!({ "mismatches": bad, "samples_per_stratum": n }))
}

fn so2q_quadric(opts: &VerifyOptions) -> Result<Outcome> {
    let n = opts.samples_or(100);
    let mut worst_abs = 0.0_f64;
    let mut worst_rel = 0.0_f64;
    let mut ok = true;
    for (fi, d) in descriptors()?.iter().enumerate().filter(|(_, d)| matches!(d.family, Family::So2q { .. })) {
        let mut rng = stream(opts, 5, fi as u64);
        let x = orbit_rep(d, 1, 0)?;
        for _ in 0..n {
            let w = conj_projection(d, &x, &mut rng)?;
            let f: C64 = w.model.iter().map(|v| v * v).sum();
            let nw = fro(&w.model);
            worst_abs = worst_abs.max(f.norm());
            worst_rel = worst_rel.max(f.norm() / (nw * nw));
            ok &= f.norm() <= opts.tolerance * (nw * nw).max(1.0) && nw > 0.0;
        }
    }
    out(ok, worst_abs, json!({ "max_relative": worst_rel, "samples_per_family": n }))
}

// ---------------------------------------------------------------- reduction

fn check_compact(case: DualPairCase, target: Family, opts: &VerifyOptions) -> Result<Outcome> {
    let n = opts.samples_or(500);
    let copts = ClassifyOptions::default();
    let r = LieAlgebraDescriptor::new(target)?.split_rank;
    let mut ok = true;
    let mut worst = 0.0_f64;
    let mut supports: BTreeMap<usize, Vec<OrbitType>> = BTreeMap::new();
    let mut reports = Vec::new();
    for s in 1..=r + 1 {
        let cfg = DualPairConfig::new(case, s, 0, target)?;
        let rep = reduce_and_classify(&cfg, n, opts.seed.wrapping_mul(1000).wrapping_add(s as u64), &copts)?;
        let bound = r.min(s);
        ok &= rep.not_pseudoholomorphic == 0;
        ok &= rep.support().iter().all(|t| t.u == 0 && t.t <= bound);
        ok &= rep.histogram.contains_key(&OrbitType::new(bound, 0));
        ok &= rep.max_level_residual <= opts.tolerance && rep.max_square_residual <= opts.tolerance;
        worst = worst.max(rep.max_level_residual).max(rep.max_square_residual);
        supports.insert(s, rep.support());
        reports.push(rep.to_json());
    }
    let stable = supports.get(&r) == supports.get(&(r + 1));
    out(ok && stable, worst, json!({ "stable_support": stable, "reports": reports }))
}

fn compact_o(opts: &VerifyOptions) -> Result<Outcome> {
    check_compact(DualPairCase::OSp, Family::Sp { l: 3 }, opts)
}

fn compact_u(opts: &VerifyOptions) -> Result<Outcome> {
    check_compact(DualPairCase::UU, Family::U { p: 3, q: 3 }, opts)
}

fn compact_sp(opts: &VerifyOptions) -> Result<Outcome> {
    check_compact(DualPairCase::SpSoStar, Family::SoStar { n: 4 }, opts)
}

fn noncompact_o11(opts: &VerifyOptions) -> Result<Outcome> {
    let n = opts.samples_or(200);
    let cfg = DualPairConfig::new(DualPairCase::OSp, 1, 1, Family::Sp { l: 1 })?;
    let rep = reduce_and_classify(&cfg, n, opts.seed.wrapping_add(11), &ClassifyOptions::default())?;
    let both = rep.histogram.contains_key(&OrbitType::new(1, 0)) && rep.histogram.contains_key(&OrbitType::new(0, 1));
    let ok = both && rep.not_pseudoholomorphic == 0 && rep.max_square_residual <= opts.tolerance;
    out(ok, rep.max_square_residual, rep.to_json())
}

fn noncompact_bounds(opts: &VerifyOptions) -> Result<Outcome> {
    let n = opts.samples_or(150);
    let copts = ClassifyOptions::default();
    let mut ok = true;
    let mut worst = 0.0_f64;
    let mut reports = Vec::new();
    for (k, (case, fam, sp, sm)) in [
        (DualPairCase::OSp, Family::Sp { l: 3 }, 2, 1),
        (DualPairCase::UU, Family::U { p: 2, q: 2 }, 1, 2),
        (DualPairCase::SpSoStar, Family::SoStar { n: 4 }, 1, 1),
    ]
    .into_iter()
    .enumerate()
    {
        let cfg = DualPairConfig::new(case, sp, sm, fam)?;
        let r = cfg.target.split_rank;
        let rep = reduce_and_classify(&cfg, n, opts.seed.wrapping_mul(31).wrapping_add(k as u64), &copts)?;
        ok &= rep.not_pseudoholomorphic == 0;
        ok &= rep.support().iter().all(|t| t.t <= r.min(sp) && t.u <= r.min(sm));
        ok &= rep.max_square_residual <= opts.tolerance;
        worst = worst.max(rep.max_square_residual);
        reports.push(rep.to_json());
    }
    out(ok, worst, json!({ "reports": reports }))
}

fn semisimple_level(opts: &VerifyOptions) -> Result<Outcome> {
    let n = opts.samples_or(20);
    let mut ok = true;
    let mut worst = 0.0_f64;
    let mut rows = Vec::new();
    for (case, fam, s) in [
        (DualPairCase::OSp, Family::Sp { l: 2 }, 4),
        (DualPairCase::UU, Family::U { p: 2, q: 1 }, 3),
        (DualPairCase::SpSoStar, Family::SoStar { n: 3 }, 3),
    ] {
        let cfg = DualPairConfig::new(case, s, 0, fam)?;
        for eps in [1.0, 0.25] {
            let rep = semisimple_reduction_check(&cfg, eps, n, opts.seed, SEMISIMPLE_TOL)?;
            ok &= rep.all_pass();
            worst = worst.max(rep.max_level_residual);
            rows.push(json!({"case": case.key(), "target": cfg.target.name(), "eps": eps, "passed": rep.passed, "samples": rep.samples}));
        }
    }
    out(ok, worst, json!({ "runs": rows }))
}

// ---------------------------------------------------------------- invariants

fn first_main_theorem(opts: &VerifyOptions) -> Result<Outcome> {
    let mut ok = true;
    let mut worst = 0.0_f64;
    let mut rows = Vec::new();
    for (case, s, fam, want) in [
        (DualPairCase::OSp, 2, Family::Sp { l: 2 }, 10),
        (DualPairCase::UU, 1, Family::U { p: 2, q: 1 }, 9),
    ] {
        let cfg = DualPairConfig::new(case, s, 0, fam)?;
        let iq = invariant_quadratics_dim(&cfg)?;
        ok &= iq.dim == want && iq.g_dim == want && iq.spans() && iq.mu_g_invariance_residual <= opts.tolerance;
        worst = worst.max(iq.mu_g_invariance_residual);
        rows.push(json!({"case": case.key(), "target": cfg.target.name(), "dim": iq.dim, "g_dim": iq.g_dim, "mu_g_rank": iq.mu_g_rank}));
    }
    out(ok, worst, json!({ "configs": rows }))
}

fn random_alpha(cfg: &DualPairConfig, rng: &mut Rng) -> CMat {
    let mut a = CMat::zeros(cfg.alpha_shape.0, cfg.alpha_shape.1);
    for b in cfg.w_basis() {
        a += b.scale(random::gauss(rng));
    }
    a
}

fn momentum_property(opts: &VerifyOptions) -> Result<Outcome> {
    let mut worst = 0.0_f64;
    let configs = [
        DualPairConfig::new(DualPairCase::OSp, 2, 1, Family::Sp { l: 2 })?,
        DualPairConfig::new(DualPairCase::UU, 1, 1, Family::U { p: 2, q: 2 })?,
        DualPairConfig::new(DualPairCase::SpSoStar, 2, 0, Family::SoStar { n: 3 })?,
        DualPairConfig::new(DualPairCase::SpSo2q, 1, 0, Family::So2q { q: 3 })?,
    ];
    for (k, cfg) in configs.iter().enumerate() {
        let mut rng = stream(opts, 6, k as u64);
        for _ in 0..5 {
            let a = random_alpha(cfg, &mut rng);
            for y in cfg.h_basis() {
                let lhs = cfg.h_pairing(&y, &a)?;
                let rhs = 0.5 * cfg.omega_w(&(-(&a * &y)), &a)?;
                worst = worst.max((lhs - rhs).abs() / (1.0 + lhs.abs()));
            }
        }
    }
    out(worst <= opts.tolerance, worst, json!({}))
}

const SO2Q_SIZES: [usize; 2] = [3, 6];

fn nilcone_cube(opts: &VerifyOptions) -> Result<Outcome> {
    let n = opts.samples_or(200);
    let mut worst_cube = 0.0_f64;
    let mut worst_level = 0.0_f64;
    for q in SO2Q_SIZES {
        let cfg = DualPairConfig::new(DualPairCase::SpSo2q, 1, 0, Family::So2q { q })?;
        for a in sample_so2q_nilcone(&cfg, n, opts.seed.wrapping_add(q as u64))? {
            // relative to ‖α‖⁴: on the zero level μ_H itself is rounding noise
            let mh = cfg.mu_h(&a)?;
            worst_level = worst_level.max(fro(&(&mh * &mh)) / fro(&a).powi(4));
            let x = cfg.mu_g(&a)?.mat;
            let nx = fro(&x);
            if nx > 0.0 {
                worst_cube = worst_cube.max(fro(&matrix_power(&x, 3)) / nx.powi(3));
            }
        }
    }
    let ok = worst_cube <= opts.tolerance && worst_level <= opts.tolerance;
    out(ok, worst_cube, json!({ "max_level_square": worst_level, "samples_per_size": n }))
}

fn alpha_images(opts: &VerifyOptions) -> Result<Outcome> {
    let mut worst = 0.0_f64;
    let mut rows = Vec::new();
    for q in SO2Q_SIZES {
        let cfg = DualPairConfig::new(DualPairCase::SpSo2q, 1, 0, Family::So2q { q })?;
        let (a1, a2) = so2q_alphas(q);
        let triples = standard_triples(&cfg.target);
        for (i, (a, tr)) in [(a1, &triples[0]), (a2, &triples[1])].into_iter().enumerate() {
            let m = cfg.mu_g(&a)?.mat;
            let e = &tr.e.mat;
            let dev = max_abs(&(&m - e));
            // least-squares multiple of e closest to the image
            let ratio = e.iter().zip(m.iter()).map(|(x, y)| (x.conj() * y).re).sum::<f64>() / fro(e).powi(2);
            let off = max_abs(&(&m - e.scale(ratio)));
            worst = worst.max(dev);
            rows.push(json!({"q": q, "index": i + 1, "max_entry_deviation": dev, "multiple_of_e": ratio,
                "residual_after_rescaling": off, "mu_h_norm": max_abs(&cfg.mu_h(&a)?)}));
        }
    }
    out(worst <= opts.tolerance, worst, json!({ "images": rows }))
}

// ---------------------------------------------------------------- poisson

fn structure_constants(_: &VerifyOptions) -> Result<Outcome> {
    let mut worst_j = 0.0_f64;
    let mut worst_a = 0.0_f64;
    for d in descriptors()? {
        let ctx = PoissonContext::new(&d)?;
        worst_j = worst_j.max(ctx.jacobi_residual());
        worst_a = worst_a.max(ctx.antisymmetry_residual());
    }
    out(worst_j <= 1e-10 && worst_a <= 1e-12, worst_j, json!({ "antisymmetry": worst_a }))
}

fn polarization(opts: &VerifyOptions) -> Result<Outcome> {
    let n = opts.samples_or(200);
    let mut worst = 0.0_f64;
    let mut worst_k = 0.0_f64;
    let mut rows = Vec::new();
    for (fi, d) in descriptors()?.iter().enumerate() {
        let basis = pplus_basis(d)?;
        let mut rng = stream(opts, 7, fi as u64);
        let mut fw = 0.0_f64;
        for _ in 0..n {
            let xi = d.random_element(&mut rng, 1.0).mat;
            let br = pplus_bracket_matrix(d, &basis, &xi);
            fw = fw.max(max_abs(&br.holo));
            let brk = pplus_bracket_matrix(d, &basis, &d.proj_k(&xi));
            worst_k = worst_k.max(max_abs(&(&br.mixed - &brk.mixed)));
        }
        worst = worst.max(fw);
        rows.push(json!({"family": d.name(), "coordinates": basis.len(), "max_holomorphic_bracket": fw}));
    }
    out(worst <= POLARIZATION_TOL, worst, json!({ "mixed_noncompact_dependence": worst_k, "points_per_family": n, "families": rows }))
}

fn cauchy_riemann(opts: &VerifyOptions) -> Result<Outcome> {
    let mut worst = 0.0_f64;
    for (fi, d) in descriptors()?.iter().enumerate() {
        let fns: Vec<CMat> = pplus_basis(d)?.into_iter().map(|(a, _)| a).collect();
        let m = fns.len();
        let mut rng = stream(opts, 8, fi as u64);
        let mut terms = Vec::new();
        for i in 0..m {
            terms.push((random::complex(&mut rng), vec![i]));
            for j in i..m {
                terms.push((random::complex(&mut rng), vec![i, j]));
            }
        }
        let poly = Polynomial { terms };
        for _ in 0..5 {
            let xi = d.random_element(&mut rng, 1.0).mat;
            for a in &fns {
                worst = worst.max(bracket_linear_with_poly(d, a, &fns, &poly, &xi)?.norm());
            }
        }
    }
    out(worst <= 1e-10, worst, json!({}))
}

fn energy_sign(_: &VerifyOptions) -> Result<Outcome> {
    let mut ok = true;
    let mut worst = f64::INFINITY;
    for d in descriptors()? {
        for s in 1..=d.split_rank {
            let hol = s1_energy(&d, &orbit_rep(&d, s, 0)?);
            let anti = s1_energy(&d, &orbit_rep(&d, 0, s)?);
            ok &= hol > 0.0 && anti < 0.0;
            worst = worst.min(hol).min(-anti);
        }
    }
    out(ok, worst, json!({ "min_margin": worst }))
}

// ---------------------------------------------------------------- contraction

fn sl2_table(opts: &VerifyOptions) -> Result<Outcome> {
    let n = opts.samples_or(100);
    let d = LieAlgebraDescriptor::new(Family::Sp { l: 1 })?;
    let mut rng = stream(opts, 9, 0);
    let mut worst = 0.0_f64;
    for _ in 0..n {
        let xi = d.random_element(&mut rng, 1.5).mat;
        let (t, x) = sl2_bracket_table(&xi)?;
        worst = worst
            .max((t[1][2] - 2.0 * x[0]).abs())
            .max((t[0][2] - 2.0 * x[1]).abs())
            .max((t[0][1] + 2.0 * x[2]).abs());
        for (i, row) in t.iter().enumerate() {
            worst = worst.max(row[i].abs()).max((row[(i + 1) % 3] + t[(i + 1) % 3][i]).abs());
            // Casimir x0² − x1² − x2²
            let cas = -2.0 * x[0] * row[0] + 2.0 * x[1] * row[1] + 2.0 * x[2] * row[2];
            worst = worst.max(cas.abs());
        }
    }
    // at 2εz the first coordinate is −ε
    let mut x0_dev = 0.0_f64;
    for eps in [0.5, 1.0, 2.0] {
        let (_, x) = sl2_bracket_table(&d.z.scale(2.0 * eps))?;
        x0_dev = x0_dev.max((x[0] + eps).abs());
    }
    out(worst <= opts.tolerance && x0_dev <= opts.tolerance, worst.max(x0_dev), json!({ "x0_at_2eps_z": x0_dev }))
}

fn curvature(opts: &VerifyOptions) -> Result<Outcome> {
    let k1 = model_metric_and_curvature(&ContractionModel::new(1.0, 1.0)?, c(0.0, 0.0))?.1;
    let m0 = ContractionModel::new(0.0, 1.0)?;
    let mut rng = stream(opts, 10, 0);
    let mut flat = 0.0_f64;
    for _ in 0..opts.samples_or(100) {
        flat = flat.max(model_metric_and_curvature(&m0, random::complex(&mut rng))?.1.abs());
    }
    out(k1 == -1.0 && flat == 0.0, (k1 + 1.0).abs().max(flat), json!({ "curvature_eps1_origin": k1, "max_abs_curvature_eps0": flat }))
}

fn stereographic_check(opts: &VerifyOptions) -> Result<Outcome> {
    let mut rng = stream(opts, 11, 0);
    let mut worst = 0.0_f64;
    let mut inside = true;
    for k in 0..opts.samples_or(100) {
        let eps = 0.2 + (k % 7) as f64 * 0.4;
        let x1 = 3.0 * random::gauss(&mut rng);
        let x2 = 3.0 * random::gauss(&mut rng);
        let (y1, y2) = stereographic(eps, x1, x2);
        inside &= y1 * y1 + y2 * y2 < eps * eps;
        let pushed = stereographic_pushforward_bracket(eps, x1, x2);
        let model = disc_model_bracket(eps, y1, y2)?;
        worst = worst.max((pushed - model).abs() / model.abs().max(1e-3));
    }
    out(inside && worst <= opts.tolerance, worst, json!({}))
}

fn convergence(_: &VerifyOptions) -> Result<Outcome> {
    let mut worst = 0.0_f64;
    for eps in [1.0, 0.5, 0.1, 0.01] {
        for sign in [1.0, -1.0] {
            let me = ContractionModel::new(eps, sign)?;
            let m0 = ContractionModel::new(0.0, sign)?;
            for i in 0..25 {
                for j in 0..25 {
                    let (x1, x2) = (-3.0 + 0.25 * i as f64, -3.0 + 0.25 * j as f64);
                    let gap = (contraction_bracket(&me, x1, x2) - contraction_bracket(&m0, x1, x2)).abs();
                    worst = worst.max(gap / eps);
                }
            }
        }
    }
    out(worst <= 1.0 + 1e-12, worst, json!({ "max_gap_over_eps": worst }))
}

fn semisimple_orbit(opts: &VerifyOptions) -> Result<Outcome> {
    let mut ok = true;
    for (fi, f) in [Family::Sp { l: 2 }, Family::U { p: 2, q: 1 }, Family::SoStar { n: 3 }, Family::So2q { q: 3 }]
        .into_iter()
        .enumerate()
    {
        let d = LieAlgebraDescriptor::new(f)?;
        let mut rng = stream(opts, 12, fi as u64);
        for eps in [0.3, 1.0] {
            let x = d.z_element().scale(2.0 * eps);
            for _ in 0..5 {
                let y = random_conjugate(&d, &x, CONJ_STEPS, &mut rng);
                ok &= semisimple_orbit_check(&d, &y, eps, SEMISIMPLE_TOL)?;
            }
            ok &= !semisimple_orbit_check(&d, &orbit_rep(&d, 1, 0)?, eps, SEMISIMPLE_TOL)?;
        }
    }
    out(ok, 0.0, json!({}))
}

// ---------------------------------------------------------------- jordan

fn adjoint_identity(opts: &VerifyOptions) -> Result<Outcome> {
    let mut rng = stream(opts, 13, 0);
    let mut worst = 0.0_f64;
    for field in [Tag::R, Tag::C] {
        for _ in 0..opts.samples_or(100) {
            let x = random_albert(&mut rng, field);
            worst = worst.max(adjoint_identity_residual(&x)? / x.max_abs().powi(3).max(1.0));
        }
    }
    out(worst <= 1e-10, worst, json!({}))
}

fn integer_albert(rng: &mut Rng) -> AlbertElement {
    use rand::Rng as _;
    let mut int = || rng.random_range(-5i32..=5) as f64;
    let alpha = [int(), int(), int()];
    let a = std::array::from_fn(|_| Oct(std::array::from_fn(|_| int())));
    AlbertElement::real(alpha, a)
}

fn norm_values(opts: &VerifyOptions) -> Result<Outcome> {
    let mut ok = generic_norm(&AlbertElement::identity(Tag::R)) == c(1.0, 0.0)
        && generic_norm(&AlbertElement::identity(Tag::C)) == c(1.0, 0.0)
        && generic_norm(&AlbertElement::diag(Tag::R, [1.0, 1.0, 0.0])) == c(0.0, 0.0);
    let mut rng = stream(opts, 14, 0);
    let mut inexact = 0;
    for _ in 0..opts.samples_or(100) {
        let x = integer_albert(&mut rng);
        let n = generic_norm(&x);
        for lam in [2.0, 3.0, -1.0, 0.5, 0.25, -1.5] {
            if generic_norm(&x.scale(c(lam, 0.0))) != n * (lam * lam * lam) {
                inexact += 1;
            }
        }
    }
    let mut cyclic = 0.0_f64;
    for _ in 0..50 {
        let x = random_albert(&mut rng, Tag::C);
        let y = AlbertElement::new(Tag::C, [x.alpha[1], x.alpha[2], x.alpha[0]], [x.a[1], x.a[2], x.a[0]])?;
        cyclic = cyclic.max((generic_norm(&x) - generic_norm(&y)).norm() / x.max_abs().powi(3));
    }
    ok &= inexact == 0 && cyclic <= 1e-12;
    out(ok, cyclic, json!({ "inexact_homogeneity": inexact, "cyclic_residual": cyclic }))
}

fn albert_rank_strata(opts: &VerifyOptions) -> Result<Outcome> {
    let n = opts.samples_or(200);
    let mut rng = stream(opts, 15, 0);
    let mut bad = BTreeMap::new();
    for field in [Tag::R, Tag::C] {
        for k in 0..=3 {
            let mut b = 0;
            for _ in 0..n {
                let x = if k == 0 { AlbertElement::zero(field) } else { random_albert_of_rank(&mut rng, field, k)? };
                if albert_rank(&x, ALBERT_REL_TOL) != k {
                    b += 1;
                }
            }
            bad.insert(format!("{field}:{k}"), b);
        }
    }
    let total: usize = bad.values().sum();
    out(total == 0, total as f64, json!({ "mismatches": bad, "samples_per_stratum": n }))
}

fn classical_strata(opts: &VerifyOptions) -> Result<Outcome> {
    let n = opts.samples_or(200);
    let mut rank_bad = 0;
    let mut inv_bad = 0;
    let mut regular = BTreeSet::new();
    for (fi, d) in descriptors()?.iter().enumerate() {
        let r = d.split_rank;
        let reg = is_regular(d.family);
        if reg {
            regular.insert(d.name());
        }
        for s in 0..=r {
            let x = orbit_rep(d, s, 0)?;
            let mut rng = stream(opts, 16, (fi * 16 + s) as u64);
            for _ in 0..n {
                let w = conj_projection(d, &x, &mut rng)?;
                if jordan_rank_classical(&w, RANK_TOL)? != s {
                    rank_bad += 1;
                }
                if reg && fundamental_invariant_vanishes(&w, RANK_TOL)? != (s < r) {
                    inv_bad += 1;
                }
            }
        }
    }
    out(
        rank_bad == 0 && inv_bad == 0,
        (rank_bad + inv_bad) as f64,
        json!({ "rank_mismatches": rank_bad, "invariant_mismatches": inv_bad, "regular_families": regular, "samples_per_stratum": n }),
    )
}

fn fundamental_normalization(opts: &VerifyOptions) -> Result<Outcome> {
    let mut worst = 0.0_f64;
    let mut ok = true;
    for d in descriptors()? {
        if !is_regular(d.family) {
            continue;
        }
        let (rows, cols) = d.pplus_shape();
        let model = match d.family {
            Family::SoStar { .. } => CMat::from_fn(rows, cols, |i, j| {
                if i % 2 == 0 && j == i + 1 {
                    c(1.0, 0.0)
                } else if j % 2 == 0 && i == j + 1 {
                    c(-1.0, 0.0)
                } else {
                    c(0.0, 0.0)
                }
            }),
            Family::So2q { .. } => CMat::from_fn(rows, cols, |i, _| c(if i == 0 { 1.0 } else { 0.0 }, 0.0)),
            _ => CMat::identity(rows, cols),
        };
        let v = fundamental_invariant(&PPlusElement::new(d.family, model))?;
        worst = worst.max((v - c(1.0, 0.0)).norm());
        ok &= v == c(1.0, 0.0);
    }
    let mut rng = stream(opts, 17, 0);
    let mut pf = 0.0_f64;
    for n in [2, 4, 6, 8] {
        let a = random::complex_matrix(&mut rng, n, n);
        let a = &a - a.transpose();
        let p = pfaffian(&a)?;
        let det = a.determinant();
        pf = pf.max((p * p - det).norm() / det.norm().max(1.0));
    }
    out(ok && pf <= 1e-9, worst.max(pf), json!({ "pfaffian_squared_vs_det": pf }))
}
