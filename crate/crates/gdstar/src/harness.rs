//! Fuzz and report harness: runs every verification suite over structured
//! random corpora and serializes findings. Iteration i of a suite draws its
//! generator from (master seed, suite, i), so any counterexample replays in
//! isolation.

use std::collections::BTreeMap;

use crate::decomp::{self, CnForm};
use crate::geninv::{self, GDParams, GdRoute};
use crate::io::{Counterexample, MatrixFile, RunReport, SuiteReport};
use crate::laws::{self, TripleVariant};
use crate::matcore::{self, CMat, GenClass, Rng, Tolerance, C64};
use crate::orders::{self, OrderKind, OrderRelation};
use crate::perturb::{self, PerturbMode};
use crate::report::{CheckReport, ItemStatus};
use crate::solve;
use crate::starfam;

/// All suite names understood by the harness and the CLI.
pub const SUITE_NAMES: [&str; 13] = [
    "gd", "gdmp", "mpgd", "sa3", "dual", "star-one", "special", "spectral", "repr", "orders",
    "laws", "perturb", "solve",
];

/// Harness configuration mirroring the CLI flags.
#[derive(Debug, Clone)]
pub struct FuzzConfig {
    pub suites: Vec<String>,
    pub iterations: usize,
    pub max_size: usize,
    pub seed: u64,
    pub tol: Tolerance,
}

fn suite_lane(suite: &str) -> u64 {
    SUITE_NAMES
        .iter()
        .position(|&s| s == suite)
        .map(|p| p as u64 + 1)
        .unwrap_or(0)
        << 32
}

/// Structured corpus draw: cycles classes and feasible (rank, index) shapes.
fn corpus_matrix(iter: usize, rng: &mut Rng, max_size: usize) -> (CMat, GenClass) {
    let class = GenClass::ALL[iter % GenClass::ALL.len()];
    let m = rng.usize_in(2, max_size.max(2));
    let (r, k) = match class {
        GenClass::Nilpotent => (0, rng.usize_in(1, m.min(4))),
        GenClass::Ep | GenClass::HermitianPsd => {
            let r = rng.usize_in(1, m);
            (r, usize::from(r < m))
        }
        _ => {
            let r = rng.usize_in(0, m);
            let k = if r == m { 0 } else { rng.usize_in(1, (m - r).min(4)) };
            (r, k)
        }
    };
    let a = matcore::gen_structured(m, r, k, class, rng).expect("feasible shape");
    (a, class)
}

fn witness(a: &CMat, rng: &mut Rng, route: GdRoute, tol: &Tolerance) -> CMat {
    let params = GDParams::seeded(a, rng, tol).expect("params");
    geninv::gd_sample(a, &params, tol, route).expect("gd sample")
}

type SuiteOutcome = (CheckReport, BTreeMap<String, CMat>);

fn inputs(pairs: &[(&str, &CMat)]) -> BTreeMap<String, CMat> {
    pairs
        .iter()
        .map(|(name, m)| (name.to_string(), (*m).clone()))
        .collect()
}

fn suite_gd(iter: usize, rng: &mut Rng, cfg: &FuzzConfig) -> SuiteOutcome {
    let tol = &cfg.tol;
    let (a, _) = corpus_matrix(iter, rng, cfg.max_size);
    let mut rep = CheckReport::new();
    for draw in 0..10 {
        let params = GDParams::seeded(&a, rng, tol).expect("params");
        for route in [GdRoute::UnitaryKa7, GdRoute::SimilarityGd2] {
            let x = geninv::gd_sample(&a, &params, tol, route).expect("sample");
            let tag = format!(
                "draw{draw}_{}",
                if route == GdRoute::UnitaryKa7 { "ka7" } else { "gd2" }
            );
            rep.absorb(&tag, geninv::gd_verify(&a, &x, tol));
            rep.absorb(&format!("{tag}_collapse"), geninv::gd_to_drazin(&a, &x, tol));
        }
    }
    (rep, inputs(&[("a", &a)]))
}

fn suite_gdmp(iter: usize, rng: &mut Rng, cfg: &FuzzConfig) -> SuiteOutcome {
    let tol = &cfg.tol;
    let (a, class) = corpus_matrix(iter, rng, cfg.max_size);
    let mut rep = CheckReport::new();
    for draw in 0..3 {
        let x = witness(&a, rng, GdRoute::UnitaryKa7, tol);
        let y = geninv::gdmp(&a, &x, tol).expect("gdmp");
        let z = geninv::mpgd(&a, &x, tol).expect("mpgd");
        rep.absorb(&format!("draw{draw}_gdmp"), geninv::verify_gdmp_system(&a, &y, tol));
        rep.absorb(&format!("draw{draw}_mpgd"), geninv::verify_mpgd_system(&a, &z, tol));
        // GDMP is {1,2,3}; MPGD is {1,2,4}
        let py = geninv::penrose_report(&a, &y, tol);
        for item in py.items {
            if item.name.starts_with("p4") {
                rep.info(&format!("draw{draw}_gdmp_{}", item.name), item.residual);
            } else {
                rep.check_residual(
                    &format!("draw{draw}_gdmp_{}", item.name),
                    item.residual,
                    item.status == ItemStatus::Passed,
                );
            }
        }
        let pz = geninv::penrose_report(&a, &z, tol);
        for item in pz.items {
            if item.name.starts_with("p3") {
                rep.info(&format!("draw{draw}_mpgd_{}", item.name), item.residual);
            } else {
                rep.check_residual(
                    &format!("draw{draw}_mpgd_{}", item.name),
                    item.residual,
                    item.status == ItemStatus::Passed,
                );
            }
        }
        if class == GenClass::Ep {
            let pinv = geninv::moore_penrose(&a, tol);
            rep.check_eq(&format!("draw{draw}_ep_gdmp_is_pinv"), &y, &pinv, tol);
            // the EP collapse runs through A^D A A+, not A^D A A*
            // (diag(2,0) already separates the two)
            let drazin_mp = &(&geninv::drazin(&a, tol) * &a) * &pinv;
            rep.check_eq(&format!("draw{draw}_ep_drazin_mp_is_pinv"), &drazin_mp, &pinv, tol);
            let (_, lit) = geninv::drazin_star(&a, tol).approx_eq_to(&pinv, tol);
            rep.info(&format!("draw{draw}_ep_drazin_star_literal"), lit);
        } else {
            rep.skip(&format!("draw{draw}_ep_gdmp_is_pinv"));
            rep.skip(&format!("draw{draw}_ep_drazin_mp_is_pinv"));
        }
    }
    (rep, inputs(&[("a", &a)]))
}

fn suite_lemma(
    which: &str,
    iter: usize,
    rng: &mut Rng,
    cfg: &FuzzConfig,
) -> SuiteOutcome {
    let tol = &cfg.tol;
    let (a, _) = corpus_matrix(iter, rng, cfg.max_size);
    let mut rep = CheckReport::new();
    let mut last_witness = CMat::zeros(a.nrows(), a.nrows());
    for draw in 0..5 {
        let route = if draw % 2 == 0 { GdRoute::UnitaryKa7 } else { GdRoute::SimilarityGd2 };
        let x = witness(&a, rng, route, tol);
        let sub = match which {
            "sa3" => {
                let mut s = starfam::verify_lemma_sa3(&a, &x, tol).expect("suite");
                let star = starfam::gd_star(&a, &x, tol).expect("gd_star");
                s.absorb("solution", starfam::gd_star_solution_check(&a, &star, &x, tol));
                s
            }
            "dual" => starfam::verify_dual_lemma(&a, &x, tol).expect("suite"),
            "star-one" => starfam::verify_star_one_lemma(&a, &x, tol).expect("suite"),
            _ => unreachable!(),
        };
        rep.absorb(&format!("draw{draw}"), sub);
        last_witness = x;
    }
    (rep, inputs(&[("a", &a), ("witness", &last_witness)]))
}

fn suite_special(iter: usize, rng: &mut Rng, cfg: &FuzzConfig) -> SuiteOutcome {
    let tol = &cfg.tol;
    let (a, class) = corpus_matrix(iter, rng, cfg.max_size);
    let mut rep = CheckReport::new();
    let x = witness(&a, rng, GdRoute::SimilarityGd2, tol);
    rep.absorb("random_witness", starfam::special_class_identities(&a, &x, tol).expect("suite"));
    // group-witness leg: exercised with the Drazin inverse where it exists
    if matcore::index(&a, tol) <= 1 {
        let sharp = geninv::drazin(&a, tol);
        rep.absorb(
            "group_witness",
            starfam::special_class_identities(&a, &sharp, tol).expect("suite"),
        );
    } else {
        rep.skip("group_witness/ind_above_one");
    }
    if class == GenClass::PartialIsometry || matcore::classify(&a, tol).partial_isometry {
        rep.absorb(
            "pi_solutions",
            starfam::partial_isometry_solutions(&a, &x, tol).expect("suite"),
        );
    } else {
        rep.skip("pi_solutions/not_partial_isometry");
    }
    (rep, inputs(&[("a", &a), ("witness", &x)]))
}

fn suite_spectral(iter: usize, rng: &mut Rng, cfg: &FuzzConfig) -> SuiteOutcome {
    let tol = &cfg.tol;
    let (a, _) = corpus_matrix(iter, rng, cfg.max_size);
    let mut rep = CheckReport::new();
    if a.fro_norm() == 0.0 {
        rep.skip("zero_matrix");
        return (rep, inputs(&[("a", &a)]));
    }
    let x = witness(&a, rng, GdRoute::UnitaryKa7, tol);
    rep.absorb("identities", starfam::spectral_identities(&a, &x, tol).expect("suite"));
    (rep, inputs(&[("a", &a), ("witness", &x)]))
}

fn suite_repr(iter: usize, rng: &mut Rng, cfg: &FuzzConfig) -> SuiteOutcome {
    let tol = &cfg.tol;
    let (a, _) = corpus_matrix(iter, rng, cfg.max_size);
    let mut rep = CheckReport::new();
    let params = GDParams::seeded(&a, rng, tol).expect("params");
    let xgd = geninv::gd_sample(&a, &params, tol, GdRoute::UnitaryKa7).expect("sample");
    let direct = starfam::gd_star(&a, &xgd, tol).expect("gd_star");

    let via_cn = starfam::gd_star_via_core_nilpotent(&a, &params, tol).expect("repr");
    let scale = 1.0 + direct.fro_norm();
    let cn_res = (&direct - &via_cn).fro_norm() / scale;
    rep.check_residual("ka6_vs_definitional", cn_res, cn_res <= 1e-9);

    if a.fro_norm() > 0.0 {
        let (via_hs, conds) = starfam::gd_star_via_hs(&a, &xgd, tol).expect("repr");
        let hs_res = (&direct - &via_hs).fro_norm() / scale;
        rep.check_residual("hs_vs_definitional", hs_res, hs_res <= 1e-9);
        let pair = (&via_cn - &via_hs).fro_norm() / scale;
        rep.check_residual("ka6_vs_hs", pair, pair <= 1e-9);
        rep.absorb("hs_conditions", conds);
    } else {
        rep.skip("hs_vs_definitional");
        rep.skip("ka6_vs_hs");
    }

    // Drazin against the power oracle
    let d = geninv::drazin(&a, tol);
    let k = matcore::index(&a, tol);
    let power_scale = a.op_norm().powi(2 * k as i32 + 1);
    let mid = geninv::moore_penrose_with_scale(&matcore::mat_pow(&a, 2 * k + 1), power_scale, tol);
    let ak = matcore::mat_pow(&a, k);
    let oracle = &(&ak * &mid) * &ak;
    let dz_res = (&d - &oracle).fro_norm() / (1.0 + oracle.fro_norm());
    rep.check_residual("drazin_power_oracle", dz_res, dz_res <= 1e-8);

    // definitional consistency through the GDMP route
    let via_gdmp = &(&geninv::gdmp(&a, &xgd, tol).expect("gdmp") * &a) * &a.adjoint();
    let cons = (&direct - &via_gdmp).fro_norm();
    rep.check_residual("gdmp_route_consistency", cons, cons <= 1e-12 * scale);

    // dual representation: corrected asserted, literal informational
    let dual_direct = starfam::dual_gd_star(&a, &xgd, tol).expect("dual");
    let (dual_corr, dual_lit) = starfam::dual_gd_star_via_core_nilpotent(&a, &params, tol).expect("repr");
    let dual_scale = 1.0 + dual_direct.fro_norm();
    let corr_res = (&dual_direct - &dual_corr).fro_norm() / dual_scale;
    rep.check_residual("dual_repr_corrected", corr_res, corr_res <= 1e-9);
    rep.info("dual_repr_literal", (&dual_direct - &dual_lit).fro_norm() / dual_scale);
    (rep, inputs(&[("a", &a), ("witness", &xgd)]))
}

fn suite_orders(iter: usize, rng: &mut Rng, cfg: &FuzzConfig) -> SuiteOutcome {
    let tol = &cfg.tol;
    let mut rep = CheckReport::new();

    // reflexivity across the relations on a corpus matrix
    let (a, _) = corpus_matrix(iter, rng, cfg.max_size);
    let xgd = witness(&a, rng, GdRoute::SimilarityGd2, tol);
    let pinv = geninv::moore_penrose(&a, tol);
    for kind in [
        OrderKind::Minus,
        OrderKind::Star,
        OrderKind::Group,
        OrderKind::DrazinPre,
        OrderKind::GDPre,
        OrderKind::GDStar,
        OrderKind::DDagger,
    ] {
        if kind == OrderKind::Group && matcore::index(&a, tol) > 1 {
            rep.skip("reflexive_group");
            continue;
        }
        let w = match kind {
            OrderKind::Minus => Some(pinv.clone()),
            OrderKind::GDPre | OrderKind::GDStar => Some(xgd.clone()),
            _ => None,
        };
        let (ok, _) = orders::leq(&a, &a, &OrderRelation::new(kind, w), tol).expect("leq");
        rep.check_residual(
            &format!("reflexive_{}", kind.name()),
            if ok { 0.0 } else { 1.0 },
            ok,
        );
    }

    // constructed order pair: characterization round trip plus consequences
    let blk = block_diag_matrix(rng);
    let params = GDParams::seeded(&blk, rng, tol).expect("params");
    let canon = orders::gd_star_characterize(&blk, &params, tol).expect("characterize");
    let b = canon.generate(rng, tol);
    let w_blk = canon.witness();
    let (round, round_rep) = canon.test(&b, tol);
    rep.absorb("canonical_form", round_rep);
    rep.check_residual("characterization_round_trip", if round { 0.0 } else { 1.0 }, round);
    let params_b = GDParams::seeded(&b, rng, tol).expect("params");
    let w_b = geninv::gd_sample(&b, &params_b, tol, GdRoute::SimilarityGd2).expect("sample");
    rep.absorb(
        "theorem_suite",
        orders::order_theorem_suite(&blk, &b, &b, &w_blk, &w_b, tol).expect("suite"),
    );
    // a visible perturbation leaves the admissible family
    let mut spoiled = b.clone();
    spoiled.set(0, blk.nrows() - 1, spoiled.get(0, blk.nrows() - 1) + C64::new(1e-3, 0.0));
    let (still, _) = canon.test(&spoiled, tol);
    rep.check_residual("perturbed_pair_rejected", if still { 1.0 } else { 0.0 }, !still);

    // implication lattice on constructed pairs
    let pair_b = minus_star_pair(&blk, &w_blk, rng, tol);
    rep.absorb(
        "minus_star_implication",
        orders::implication_minus_star(&blk, &pair_b, &w_blk, tol).expect("suite"),
    );
    rep.absorb(
        "gd_drazin_implication",
        orders::implication_gd_drazin(&blk, &pair_b, &w_blk, tol).expect("suite"),
    );

    // index-one equivalence on a commuting pair
    let (ia, ib, iw) = ind1_pair(rng, iter);
    rep.absorb(
        "ind1",
        orders::ind1_equivalence_suite(&ia, &ib, &iw, tol).expect("suite"),
    );
    (rep, inputs(&[("a", &blk), ("b", &b), ("witness", &w_blk)]))
}

/// P diag(C, N) P* with unitary P: the family the GD-star characterization
/// applies to.
fn block_diag_matrix(rng: &mut Rng) -> CMat {
    let m = rng.usize_in(3, 6);
    let r = rng.usize_in(1, m - 2);
    let k = rng.usize_in(2, m - r);
    let p = rng.unitary(m);
    let mut inner = CMat::zeros(m, m);
    for j in 0..r {
        inner.set(j, j, C64::new(rng.uniform_in(0.9, 3.0), 0.0));
    }
    for i in 0..k.saturating_sub(1) {
        inner.set(r + i, r + i + 1, C64::new(rng.uniform_in(0.5, 2.0), 0.0));
    }
    &(&p * &inner) * &p.adjoint()
}

/// B = A + delta with delta annihilating A*, *A, and the witness on both
/// sides, so minus (for the witness) and star both hold.
fn minus_star_pair(a: &CMat, xgd: &CMat, rng: &mut Rng, tol: &Tolerance) -> CMat {
    let m = a.nrows();
    let pinv = geninv::moore_penrose(a, tol);
    let left = &CMat::identity(m) - &(a * &pinv);
    let right = &CMat::identity(m) - &(&pinv * a);
    let raw = rng.gaussian_matrix(m, m);
    let mut delta = &(&left * &raw) * &right;
    let xp = geninv::moore_penrose(xgd, tol);
    let kill_right = &CMat::identity(m) - &(xgd * &xp);
    let kill_left = &CMat::identity(m) - &(&xp * xgd);
    delta = &(&kill_left * &delta) * &kill_right;
    delta = &(&left * &delta) * &right;
    a + &delta
}

/// Commuting diagonal pair in a shared unitary frame; even iterations match
/// on the support (all five conditions true), odd ones perturb it (all false).
fn ind1_pair(rng: &mut Rng, iter: usize) -> (CMat, CMat, CMat) {
    let m = rng.usize_in(2, 5);
    let p = rng.unitary(m);
    let mut da = CMat::zeros(m, m);
    let mut db = CMat::zeros(m, m);
    let mut wa = CMat::zeros(m, m);
    for j in 0..m {
        let zero = rng.uniform() < 0.4;
        let aval = if zero { 0.0 } else { rng.uniform_in(0.5, 2.0) };
        da.set(j, j, C64::new(aval, 0.0));
        wa.set(j, j, C64::new(if zero { 0.0 } else { 1.0 / aval }, 0.0));
        let bval = if zero {
            rng.uniform_in(0.0, 2.0)
        } else if iter % 2 == 0 {
            aval
        } else {
            aval + rng.uniform_in(0.1, 1.0)
        };
        db.set(j, j, C64::new(bval, 0.0));
    }
    (
        &(&p * &da) * &p.adjoint(),
        &(&p * &db) * &p.adjoint(),
        &(&p * &wa) * &p.adjoint(),
    )
}

/// Commuting matrices in a shared frame: diagonal coordinates plus a single
/// nilpotent chain slot. `a` carries the chain; `b` and `c` are scalar on it.
/// These are the instances every law checker runs on.
pub struct SlotFamily {
    pub a: CMat,
    pub b: CMat,
    pub c: CMat,
    pub wa: CMat,
    pub wb: CMat,
    pub wc: CMat,
}

/// Generator for commuting law instances; `spoil` breaks one hypothesis so
/// skip paths stay exercised.
pub fn slot_family(rng: &mut Rng, tol: &Tolerance, spoil: bool) -> SlotFamily {
    let diag_n = rng.usize_in(2, 3);
    let chain = rng.usize_in(2, 3);
    let m = diag_n + chain;
    let p = rng.unitary(m);
    let frame = |inner: &CMat| -> CMat { &(&p * inner) * &p.adjoint() };

    // A: diagonal with a zero plus the chain
    let mut ad = CMat::zeros(m, m);
    let mut wad = CMat::zeros(m, m);
    for j in 0..diag_n {
        let zero = j == 0 && rng.uniform() < 0.5;
        let v = if zero { 0.0 } else { rng.uniform_in(0.5, 2.0) };
        ad.set(j, j, C64::new(v, 0.0));
        wad.set(j, j, C64::new(if zero { 0.0 } else { 1.0 / v }, 0.0));
    }
    let mut jchain = CMat::zeros(chain, chain);
    for i in 0..chain - 1 {
        jchain.set(i, i + 1, C64::new(rng.uniform_in(0.5, 2.0), 0.0));
    }
    for i in 0..chain {
        for j in 0..chain {
            ad.set(diag_n + i, diag_n + j, jchain.get(i, j));
        }
    }
    // witness slot: any {1}-inverse of the chain
    let params = GDParams::seeded_for(&jchain, rng, tol);
    let n_minus = geninv::one_inverse_sample(&jchain, &params.w, &params.v, tol);
    for i in 0..chain {
        for j in 0..chain {
            wad.set(diag_n + i, diag_n + j, n_minus.get(i, j));
        }
    }

    // B, C: nonzero on A's support; scalar and invertible on the chain slot
    let build = |rng: &mut Rng, spoil_this: bool| -> (CMat, CMat) {
        let mut d = CMat::zeros(m, m);
        let mut w = CMat::zeros(m, m);
        for j in 0..diag_n {
            let v = if spoil_this && j == 0 {
                0.0
            } else {
                rng.uniform_in(0.5, 2.0)
            };
            d.set(j, j, C64::new(v, 0.0));
            w.set(j, j, C64::new(if v == 0.0 { 0.0 } else { 1.0 / v }, 0.0));
        }
        let s = rng.uniform_in(0.5, 2.0);
        for i in 0..chain {
            d.set(diag_n + i, diag_n + i, C64::new(s, 0.0));
            w.set(diag_n + i, diag_n + i, C64::new(1.0 / s, 0.0));
        }
        (d, w)
    };
    // spoil breaks the range containment by zeroing B on a support column of A
    let spoil_b = spoil && ad.get(0, 0).norm() > 0.0;
    let (bd, wbd) = build(rng, spoil_b);
    let (cd, wcd) = build(rng, false);

    SlotFamily {
        a: frame(&ad),
        b: frame(&bd),
        c: frame(&cd),
        wa: frame(&wad),
        wb: frame(&wbd),
        wc: frame(&wcd),
    }
}

/// Disjoint-support pair for the additive laws, with a chain slot on A's side.
pub fn additive_family(rng: &mut Rng, tol: &Tolerance, spoil: bool) -> (CMat, CMat, CMat, CMat) {
    let na = rng.usize_in(1, 2);
    let nb = rng.usize_in(1, 2);
    let chain = rng.usize_in(2, 3);
    let m = na + nb + chain;
    let p = rng.unitary(m);
    let frame = |inner: &CMat| -> CMat { &(&p * inner) * &p.adjoint() };

    let mut ad = CMat::zeros(m, m);
    let mut wad = CMat::zeros(m, m);
    for j in 0..na {
        let v = rng.uniform_in(0.5, 2.0);
        ad.set(j, j, C64::new(v, 0.0));
        wad.set(j, j, C64::new(1.0 / v, 0.0));
    }
    let mut jchain = CMat::zeros(chain, chain);
    for i in 0..chain - 1 {
        jchain.set(i, i + 1, C64::new(rng.uniform_in(0.5, 2.0), 0.0));
    }
    for i in 0..chain {
        for j in 0..chain {
            ad.set(na + nb + i, na + nb + j, jchain.get(i, j));
        }
    }
    let params = GDParams::seeded_for(&jchain, rng, tol);
    let n_minus = geninv::one_inverse_sample(&jchain, &params.w, &params.v, tol);
    for i in 0..chain {
        for j in 0..chain {
            wad.set(na + nb + i, na + nb + j, n_minus.get(i, j));
        }
    }

    let mut bd = CMat::zeros(m, m);
    let mut wbd = CMat::zeros(m, m);
    for j in na..na + nb {
        let v = rng.uniform_in(0.5, 2.0);
        bd.set(j, j, C64::new(v, 0.0));
        wbd.set(j, j, C64::new(1.0 / v, 0.0));
    }
    if spoil {
        // witness of B leaks onto A's support: annihilation hypothesis fails
        wbd.set(0, 0, C64::new(1.0, 0.0));
    }
    (frame(&ad), frame(&bd), frame(&wad), frame(&wbd))
}

fn suite_laws(iter: usize, rng: &mut Rng, cfg: &FuzzConfig) -> SuiteOutcome {
    let tol = &cfg.tol;
    let mut rep = CheckReport::new();
    // every tenth iteration exercises the hypothesis-failure (skip) paths
    let spoil = iter % 10 == 9;

    let fam = slot_family(rng, tol, spoil);
    rep.absorb("reverse_gd", laws::reverse_gd(&fam.a, &fam.b, &fam.wa, &fam.wb, tol));
    rep.absorb("forward_gd", laws::forward_gd(&fam.b, &fam.a, &fam.wb, &fam.wa, tol));
    let variant = TripleVariant::ALL[iter % 4];
    rep.absorb(
        &format!("triple_reverse_{}", variant.name()),
        laws::triple_reverse_gd(&fam.a, &fam.b, &fam.c, &fam.wa, &fam.wb, &fam.wc, variant, tol),
    );
    // forward law on the reversed factor order, so the chain-bearing matrix
    // sits where every variant's range hypothesis can hold
    rep.absorb(
        &format!("triple_forward_{}", variant.name()),
        laws::triple_forward_gd(&fam.c, &fam.b, &fam.a, &fam.wc, &fam.wb, &fam.wa, variant, tol),
    );
    rep.absorb(
        "reverse_gd_star",
        laws::reverse_gd_star(&fam.a, &fam.b, &fam.wa, &fam.wb, tol),
    );
    rep.absorb(
        "forward_gd_star",
        laws::forward_gd_star(&fam.b, &fam.a, &fam.wb, &fam.wa, tol),
    );

    let (aa, ab, awa, awb) = additive_family(rng, tol, spoil);
    rep.absorb("additive_gd", laws::additive_gd(&aa, &ab, &awa, &awb, tol));
    rep.absorb("additive_gd_star", laws::additive_gd_star(&aa, &ab, &awa, &awb, tol));

    // additive-necessary: identity-style instance plus a skip-path pair
    let mut urng = Rng::derived(rng.next_u64(), 11);
    let u = urng.unitary(3);
    let mut d = CMat::zeros(3, 3);
    for j in 0..3 {
        d.set(j, j, C64::new(urng.uniform_in(0.5, 2.0), 0.0));
    }
    let nn = &(&u * &d) * &u.adjoint();
    let nninv = geninv::moore_penrose(&nn, tol);
    rep.absorb(
        "additive_necessary",
        laws::additive_necessary(&nn, &nn, &nninv, &nninv, tol),
    );
    rep.absorb(
        "additive_necessary_skip_path",
        laws::additive_necessary(&aa, &ab, &awa, &awb, tol),
    );
    (
        rep,
        inputs(&[("a", &fam.a), ("b", &fam.b), ("c", &fam.c)]),
    )
}

fn suite_perturb(iter: usize, rng: &mut Rng, cfg: &FuzzConfig) -> SuiteOutcome {
    let tol = &cfg.tol;
    let mut rep = CheckReport::new();
    // norm bound on a contraction-scaled random matrix
    let m = rng.usize_in(2, cfg.max_size.max(2));
    let raw = rng.gaussian_matrix(m, m);
    let target = [0.9, 0.5, 0.0][iter % 3];
    let a_small = if target == 0.0 {
        CMat::zeros(m, m)
    } else {
        raw.scale(C64::new(target / raw.op_norm(), 0.0))
    };
    rep.absorb("stewart", perturb::stewart_check(&a_small, tol));

    // structural perturbation of a corpus matrix
    let (a, _) = corpus_matrix(iter, rng, cfg.max_size);
    let pert = perturb::admissible_perturbation(&a, PerturbMode::Structural, rng, tol).expect("pert");
    rep.check_residual(
        "structural_form_holds",
        if pert.structural_holds { 0.0 } else { 1.0 },
        pert.structural_holds,
    );
    let cn = decomp::core_nilpotent(&a, tol, CnForm::Similarity).expect("cn");
    let xgd = geninv::gd_sample(&a, &GDParams::dagger(cn.nil_dim()), tol, GdRoute::SimilarityGd2)
        .expect("sample");
    let (_, one_rep) = perturb::perturbed_one_inverse(&a, &xgd, &pert.e, tol, true).expect("solve");
    rep.absorb("structural", one_rep);

    // strict mode on a matrix with a unit eigenvalue in the core
    let strict_a = unit_eigenvalue_matrix(rng);
    let pert = perturb::admissible_perturbation(&strict_a, PerturbMode::Strict, rng, tol).expect("pert");
    rep.check_residual(
        "strict_form_holds",
        if pert.strict_holds || pert.zero_flagged { 0.0 } else { 1.0 },
        pert.strict_holds || pert.zero_flagged,
    );
    if !pert.zero_flagged {
        let cn = decomp::core_nilpotent(&strict_a, tol, CnForm::Similarity).expect("cn");
        let xgd = geninv::gd_sample(
            &strict_a,
            &GDParams::dagger(cn.nil_dim()),
            tol,
            GdRoute::SimilarityGd2,
        )
        .expect("sample");
        let (_, one_rep) =
            perturb::perturbed_one_inverse(&strict_a, &xgd, &pert.e, tol, false).expect("solve");
        rep.absorb("strict", one_rep);
    } else {
        rep.skip("strict/bgb_eq_b");
    }
    (rep, inputs(&[("a", &a), ("strict_a", &strict_a)]))
}

/// Core block with an eigenvalue pinned at one, so null(A^k - I) is nontrivial.
fn unit_eigenvalue_matrix(rng: &mut Rng) -> CMat {
    let m = rng.usize_in(3, 5);
    let p = rng.unitary(m);
    let mut inner = CMat::zeros(m, m);
    inner.set(0, 0, C64::new(1.0, 0.0));
    for j in 1..m - 2 {
        inner.set(j, j, C64::new(rng.uniform_in(0.9, 3.0), 0.0));
    }
    inner.set(m - 2, m - 1, C64::new(rng.uniform_in(0.5, 2.0), 0.0));
    &(&p * &inner) * &p.adjoint()
}

fn suite_solve(iter: usize, rng: &mut Rng, cfg: &FuzzConfig) -> SuiteOutcome {
    let tol = &cfg.tol;
    let mut rep = CheckReport::new();
    let (a, _) = corpus_matrix(iter, rng, cfg.max_size);
    let m = a.nrows();
    let xgd = witness(&a, rng, GdRoute::SimilarityGd2, tol);

    let b = rng.gaussian_matrix(m, 1);
    let sol = solve::lsq_gdmp(&a, &b, &xgd, tol).expect("lsq");
    rep.absorb("lsq", sol.report);

    // consistent right-hand side for the minimum-norm leg
    let b_cons = &a * &rng.gaussian_matrix(m, 1);
    let sol = solve::minnorm_mpgd(&a, &b_cons, &xgd, tol).expect("minnorm");
    rep.absorb("minnorm", sol.report);

    let z = rng.gaussian_matrix(m, 1);
    let sol = solve::gram_solve(&a, &b, &xgd, &z, tol).expect("gram");
    rep.absorb("gram", sol.report);

    // random ergodic chain
    let dim = rng.usize_in(2, 5);
    let mut t_mat = CMat::zeros(dim, dim);
    for i in 0..dim {
        let mut row: Vec<f64> = (0..dim).map(|_| rng.uniform_in(0.05, 1.0)).collect();
        let sum: f64 = row.iter().sum();
        for v in &mut row {
            *v /= sum;
        }
        for (j, &v) in row.iter().enumerate() {
            t_mat.set(i, j, C64::new(v, 0.0));
        }
    }
    let res = solve::markov_stationary(&t_mat, rng, tol).expect("markov");
    rep.absorb("markov", res.report);
    (rep, inputs(&[("a", &a), ("transition", &t_mat)]))
}

fn run_suite_iteration(suite: &str, iter: usize, cfg: &FuzzConfig) -> SuiteOutcome {
    let mut rng = Rng::derived(cfg.seed, suite_lane(suite) | iter as u64);
    match suite {
        "gd" => suite_gd(iter, &mut rng, cfg),
        "gdmp" | "mpgd" => suite_gdmp(iter, &mut rng, cfg),
        "sa3" | "dual" | "star-one" => suite_lemma(suite, iter, &mut rng, cfg),
        "special" => suite_special(iter, &mut rng, cfg),
        "spectral" => suite_spectral(iter, &mut rng, cfg),
        "repr" => suite_repr(iter, &mut rng, cfg),
        "orders" => suite_orders(iter, &mut rng, cfg),
        "laws" => suite_laws(iter, &mut rng, cfg),
        "perturb" => suite_perturb(iter, &mut rng, cfg),
        "solve" => suite_solve(iter, &mut rng, cfg),
        other => {
            let mut rep = CheckReport::new();
            rep.check_residual(&format!("unknown_suite_{other}"), 1.0, false);
            (rep, BTreeMap::new())
        }
    }
}

/// Run the configured suites and assemble the deterministic report
/// (iteration order is fixed; only `timing_ms` varies between runs).
pub fn run_fuzz(cfg: &FuzzConfig) -> RunReport {
    let start = std::time::Instant::now();
    let mut suites = Vec::new();
    let mut counterexamples = Vec::new();
    for suite in &cfg.suites {
        let mut reports = Vec::with_capacity(cfg.iterations);
        for iter in 0..cfg.iterations {
            let (rep, ins) = run_suite_iteration(suite, iter, cfg);
            if rep.count(ItemStatus::Failed) > 0 {
                counterexamples.push(Counterexample {
                    suite: suite.clone(),
                    iteration: iter,
                    seed: cfg.seed,
                    failed_items: rep.failures().cloned().collect(),
                    inputs: ins
                        .iter()
                        .map(|(k, v)| (k.clone(), MatrixFile::from_cmat(v)))
                        .collect(),
                });
            }
            reports.push(rep);
        }
        let (passed, failed, skipped, info, max_residual) = crate::io::tally(&reports);
        suites.push(SuiteReport {
            name: suite.clone(),
            iterations: cfg.iterations,
            passed,
            failed,
            skipped,
            info,
            max_residual,
        });
    }
    let verdict = if suites.iter().all(|s| s.failed == 0) {
        "pass"
    } else {
        "fail"
    };
    RunReport {
        schema: 1,
        command: format!(
            "fuzz --suites {} --n {} --max-size {} --seed {}",
            cfg.suites.join(","),
            cfg.iterations,
            cfg.max_size,
            cfg.seed
        ),
        seed: cfg.seed,
        tolerance: cfg.tol,
        suites,
        counterexamples,
        verdict: verdict.to_string(),
        timing_ms: start.elapsed().as_millis() as u64,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smoke_every_suite() {
        let cfg = FuzzConfig {
            suites: SUITE_NAMES.iter().map(|s| s.to_string()).collect(),
            iterations: 3,
            max_size: 5,
            seed: 11,
            tol: Tolerance::default(),
        };
        let report = run_fuzz(&cfg);
        assert_eq!(report.verdict, "pass", "{:#?}", report.counterexamples);
        assert_eq!(report.suites.len(), SUITE_NAMES.len());
        for s in &report.suites {
            assert!(s.passed > 0, "suite {} ran nothing", s.name);
        }
    }

    #[test]
    fn determinism_modulo_timing() {
        let cfg = FuzzConfig {
            suites: vec!["gd".into(), "laws".into()],
            iterations: 4,
            max_size: 5,
            seed: 7,
            tol: Tolerance::default(),
        };
        let mut a = run_fuzz(&cfg);
        let mut b = run_fuzz(&cfg);
        a.timing_ms = 0;
        b.timing_ms = 0;
        assert_eq!(
            serde_json::to_string(&a).unwrap(),
            serde_json::to_string(&b).unwrap()
        );
    }

    #[test]
    fn skip_paths_are_counted() {
        let cfg = FuzzConfig {
            suites: vec!["laws".into(), "special".into()],
            iterations: 12,
            max_size: 5,
            seed: 3,
            tol: Tolerance::default(),
        };
        let report = run_fuzz(&cfg);
        assert_eq!(report.verdict, "pass", "{:#?}", report.counterexamples);
        for s in &report.suites {
            assert!(s.skipped > 0, "suite {} recorded no skips", s.name);
        }
    }
}
