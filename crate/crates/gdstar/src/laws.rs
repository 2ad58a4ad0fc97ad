//! Reverse-order, forward-order (double and triple), and additive laws for
//! GD inverses and GD-star matrices.
//!
//! Every checker is hypothesis-gated: hypothesis residuals are recorded as
//! informational items, and the conclusion is asserted only when all of them
//! hold; otherwise it is marked skipped. A failed conclusion under passing
//! hypotheses is the report's most valuable outcome and is never suppressed.

use crate::geninv;
use crate::matcore::{self, CMat, Tolerance};
use crate::report::CheckReport;

/// Projection criterion for R(X) within R(Y): || Y Y+ X - X || small
/// relative to ||X||.
fn range_contained(x: &CMat, y: &CMat, tol: &Tolerance) -> (bool, f64) {
    let proj = &(y * &geninv::moore_penrose(y, tol)) * x;
    let residual = (&proj - x).fro_norm();
    let bound = tol.residual_atol + tol.residual_rtol * x.fro_norm();
    (residual <= bound, residual)
}

fn commutes(a: &CMat, b: &CMat, tol: &Tolerance) -> (bool, f64) {
    let residual = (&(a * b) - &(b * a)).fro_norm();
    let bound = tol.residual_atol + tol.residual_rtol * (a.fro_norm() * b.fro_norm() + 1.0);
    (residual <= bound, residual)
}

struct Gate {
    all_hold: bool,
}

impl Gate {
    fn new() -> Gate {
        Gate { all_hold: true }
    }

    fn hypothesis(&mut self, rep: &mut CheckReport, name: &str, holds: bool, residual: f64) {
        rep.info(
            &format!("hyp_{name}_{}", if holds { "holds" } else { "fails" }),
            residual,
        );
        self.all_hold &= holds;
    }

    fn witness(&mut self, rep: &mut CheckReport, name: &str, a: &CMat, x: &CMat, tol: &Tolerance) {
        let v = geninv::gd_verify(a, x, tol);
        let ok = v.overall();
        rep.info(
            &format!("hyp_{name}_{}", if ok { "holds" } else { "fails" }),
            v.max_residual(),
        );
        self.all_hold &= ok;
    }
}

fn assert_gd_conclusion(
    rep: &mut CheckReport,
    product: &CMat,
    candidate: &CMat,
    k: usize,
    tol: &Tolerance,
) {
    let verify = geninv::gd_verify_with_index(product, candidate, k, tol);
    rep.absorb("conclusion", verify);
}

fn skip_gd_conclusion(rep: &mut CheckReport) {
    for name in [
        "conclusion/axa_eq_a",
        "conclusion/ak_commutes",
        "conclusion/x_ak1_eq_ak",
        "conclusion/ak1_x_eq_ak",
        "conclusion/axa_eq_a_char2",
        "conclusion/characterizations_consistent",
    ] {
        rep.skip(name);
    }
}

/// (AB)^GD = B^GD A^GD under AB = BA and R(A^GD) within R(B).
pub fn reverse_gd(a: &CMat, b: &CMat, wa: &CMat, wb: &CMat, tol: &Tolerance) -> CheckReport {
    let mut rep = CheckReport::new();
    let mut gate = Gate::new();
    gate.witness(&mut rep, "witness_a", a, wa, tol);
    gate.witness(&mut rep, "witness_b", b, wb, tol);
    let (c_ok, c_res) = commutes(a, b, tol);
    gate.hypothesis(&mut rep, "commute", c_ok, c_res);
    let (r_ok, r_res) = range_contained(wa, b, tol);
    gate.hypothesis(&mut rep, "range_agd_in_b", r_ok, r_res);
    if gate.all_hold {
        let k = matcore::index(a, tol).max(matcore::index(b, tol));
        assert_gd_conclusion(&mut rep, &(a * b), &(wb * wa), k, tol);
    } else {
        skip_gd_conclusion(&mut rep);
    }
    rep
}

/// (AB)^GD = A^GD B^GD under AB = BA and R(B^GD) within R(A).
pub fn forward_gd(a: &CMat, b: &CMat, wa: &CMat, wb: &CMat, tol: &Tolerance) -> CheckReport {
    let mut rep = CheckReport::new();
    let mut gate = Gate::new();
    gate.witness(&mut rep, "witness_a", a, wa, tol);
    gate.witness(&mut rep, "witness_b", b, wb, tol);
    let (c_ok, c_res) = commutes(a, b, tol);
    gate.hypothesis(&mut rep, "commute", c_ok, c_res);
    let (r_ok, r_res) = range_contained(wb, a, tol);
    gate.hypothesis(&mut rep, "range_bgd_in_a", r_ok, r_res);
    if gate.all_hold {
        let k = matcore::index(a, tol).max(matcore::index(b, tol));
        assert_gd_conclusion(&mut rep, &(a * b), &(wa * wb), k, tol);
    } else {
        skip_gd_conclusion(&mut rep);
    }
    rep
}

/// Variant hypotheses of the triple-product laws.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TripleVariant {
    I,
    II,
    III,
    IV,
}

impl TripleVariant {
    pub const ALL: [TripleVariant; 4] = [
        TripleVariant::I,
        TripleVariant::II,
        TripleVariant::III,
        TripleVariant::IV,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            TripleVariant::I => "i",
            TripleVariant::II => "ii",
            TripleVariant::III => "iii",
            TripleVariant::IV => "iv",
        }
    }
}

struct TripleArgs<'a> {
    a: &'a CMat,
    b: &'a CMat,
    c: &'a CMat,
    wa: &'a CMat,
    wb: &'a CMat,
    wc: &'a CMat,
}

fn triple_common(args: &TripleArgs, rep: &mut CheckReport, gate: &mut Gate, tol: &Tolerance) {
    gate.witness(rep, "witness_a", args.a, args.wa, tol);
    gate.witness(rep, "witness_b", args.b, args.wb, tol);
    gate.witness(rep, "witness_c", args.c, args.wc, tol);
    let (ok_ab, r_ab) = commutes(args.a, args.b, tol);
    gate.hypothesis(rep, "commute_ab", ok_ab, r_ab);
    let (ok_ac, r_ac) = commutes(args.a, args.c, tol);
    gate.hypothesis(rep, "commute_ac", ok_ac, r_ac);
    let (ok_bc, r_bc) = commutes(args.b, args.c, tol);
    gate.hypothesis(rep, "commute_bc", ok_bc, r_bc);
}

fn triple_variant_hypotheses(
    args: &TripleArgs,
    reverse: bool,
    variant: TripleVariant,
    rep: &mut CheckReport,
    gate: &mut Gate,
    tol: &Tolerance,
) {
    let TripleArgs { a, b, c, wa, wb, wc } = *args;
    let comm_pair = |rep: &mut CheckReport, gate: &mut Gate, name: &str, l: &CMat, r: &CMat| {
        let (ok, res) = commutes(l, r, tol);
        gate.hypothesis(rep, name, ok, res);
    };
    match (reverse, variant) {
        (true, TripleVariant::I) => {
            let (ok, res) = range_contained(&(wb * b), c, tol);
            gate.hypothesis(rep, "range_bgdb_in_c", ok, res);
            comm_pair(rep, gate, "agd_with_bc", wa, &(b * c));
        }
        (true, TripleVariant::II) => {
            let (ok, res) = range_contained(&(wa * a), b, tol);
            gate.hypothesis(rep, "range_agda_in_b", ok, res);
            comm_pair(rep, gate, "cgd_with_ab", wc, &(a * b));
        }
        (false, TripleVariant::I) => {
            let (ok, res) = range_contained(&(wc * c), b, tol);
            gate.hypothesis(rep, "range_cgdc_in_b", ok, res);
            comm_pair(rep, gate, "agd_with_bc", wa, &(b * c));
        }
        (false, TripleVariant::II) => {
            let (ok, res) = range_contained(&(wb * b), a, tol);
            gate.hypothesis(rep, "range_bgdb_in_a", ok, res);
            comm_pair(rep, gate, "cgd_with_ab", wc, &(a * b));
        }
        (_, TripleVariant::III) => {
            comm_pair(rep, gate, "cgd_with_ab", wc, &(a * b));
            let lhs = &(&(wa * a) * b);
            let rhs = &(&(b * wa) * a);
            let (ok, res) = lhs.approx_eq_to(rhs, tol);
            gate.hypothesis(rep, "agda_b_commute", ok, res);
        }
        (_, TripleVariant::IV) => {
            comm_pair(rep, gate, "agd_with_bc", wa, &(b * c));
            let lhs = &(&(c * wc) * b);
            let rhs = &(&(b * c) * wc);
            let (ok, res) = lhs.approx_eq_to(rhs, tol);
            gate.hypothesis(rep, "ccgd_b_commute", ok, res);
        }
    }
}

fn triple_law(args: TripleArgs, reverse: bool, variant: TripleVariant, tol: &Tolerance) -> CheckReport {
    let mut rep = CheckReport::new();
    let mut gate = Gate::new();
    triple_common(&args, &mut rep, &mut gate, tol);
    triple_variant_hypotheses(&args, reverse, variant, &mut rep, &mut gate, tol);
    if gate.all_hold {
        let k = matcore::index(args.a, tol)
            .max(matcore::index(args.b, tol))
            .max(matcore::index(args.c, tol));
        let product = &(args.a * args.b) * args.c;
        let candidate = if reverse {
            &(args.wc * args.wb) * args.wa
        } else {
            &(args.wa * args.wb) * args.wc
        };
        assert_gd_conclusion(&mut rep, &product, &candidate, k, tol);
    } else {
        skip_gd_conclusion(&mut rep);
    }
    rep
}

/// (ABC)^GD = C^GD B^GD A^GD under pairwise commutation and one of the four
/// variant hypothesis pairs.
#[allow(clippy::too_many_arguments)]
pub fn triple_reverse_gd(
    a: &CMat,
    b: &CMat,
    c: &CMat,
    wa: &CMat,
    wb: &CMat,
    wc: &CMat,
    variant: TripleVariant,
    tol: &Tolerance,
) -> CheckReport {
    triple_law(TripleArgs { a, b, c, wa, wb, wc }, true, variant, tol)
}

/// (ABC)^GD = A^GD B^GD C^GD, mirrored variants.
#[allow(clippy::too_many_arguments)]
pub fn triple_forward_gd(
    a: &CMat,
    b: &CMat,
    c: &CMat,
    wa: &CMat,
    wb: &CMat,
    wc: &CMat,
    variant: TripleVariant,
    tol: &Tolerance,
) -> CheckReport {
    triple_law(TripleArgs { a, b, c, wa, wb, wc }, false, variant, tol)
}

/// (AB)^{GD,*} = B^{GD,*} A^{GD,*} under the reverse-GD hypotheses plus
/// A^GD A B B* = B B* A^GD A. The product witness B^GD A^GD is certified as
/// a GD inverse of AB first, then the star identity is asserted.
pub fn reverse_gd_star(a: &CMat, b: &CMat, wa: &CMat, wb: &CMat, tol: &Tolerance) -> CheckReport {
    let mut rep = CheckReport::new();
    let mut gate = Gate::new();
    gate.witness(&mut rep, "witness_a", a, wa, tol);
    gate.witness(&mut rep, "witness_b", b, wb, tol);
    let (c_ok, c_res) = commutes(a, b, tol);
    gate.hypothesis(&mut rep, "commute", c_ok, c_res);
    let (r_ok, r_res) = range_contained(wa, b, tol);
    gate.hypothesis(&mut rep, "range_agd_in_b", r_ok, r_res);
    let bb = b * &b.adjoint();
    let waa = wa * a;
    let (s_ok, s_res) = (&waa * &bb).approx_eq_to(&(&bb * &waa), tol);
    gate.hypothesis(&mut rep, "agda_bbstar_commute", s_ok, s_res);
    if gate.all_hold {
        let ab = a * b;
        let k = matcore::index(a, tol).max(matcore::index(b, tol));
        let product_witness = wb * wa;
        assert_gd_conclusion(&mut rep, &ab, &product_witness, k, tol);
        let lhs = &(&product_witness * &ab) * &ab.adjoint();
        let star_a = &(wa * a) * &a.adjoint();
        let star_b = &(wb * b) * &b.adjoint();
        rep.check_eq("gd_star_reverse_product", &lhs, &(&star_b * &star_a), tol);
    } else {
        skip_gd_conclusion(&mut rep);
        rep.skip("gd_star_reverse_product");
    }
    rep
}

/// (AB)^{GD,*} = A^{GD,*} B^{GD,*} under the forward-GD hypotheses plus
/// B^GD B A A* = A A* B^GD B.
pub fn forward_gd_star(a: &CMat, b: &CMat, wa: &CMat, wb: &CMat, tol: &Tolerance) -> CheckReport {
    let mut rep = CheckReport::new();
    let mut gate = Gate::new();
    gate.witness(&mut rep, "witness_a", a, wa, tol);
    gate.witness(&mut rep, "witness_b", b, wb, tol);
    let (c_ok, c_res) = commutes(a, b, tol);
    gate.hypothesis(&mut rep, "commute", c_ok, c_res);
    let (r_ok, r_res) = range_contained(wb, a, tol);
    gate.hypothesis(&mut rep, "range_bgd_in_a", r_ok, r_res);
    let aa = a * &a.adjoint();
    let wbb = wb * b;
    let (s_ok, s_res) = (&wbb * &aa).approx_eq_to(&(&aa * &wbb), tol);
    gate.hypothesis(&mut rep, "bgdb_aastar_commute", s_ok, s_res);
    if gate.all_hold {
        let ab = a * b;
        let k = matcore::index(a, tol).max(matcore::index(b, tol));
        let product_witness = wa * wb;
        assert_gd_conclusion(&mut rep, &ab, &product_witness, k, tol);
        let lhs = &(&product_witness * &ab) * &ab.adjoint();
        let star_a = &(wa * a) * &a.adjoint();
        let star_b = &(wb * b) * &b.adjoint();
        rep.check_eq("gd_star_forward_product", &lhs, &(&star_a * &star_b), tol);
    } else {
        skip_gd_conclusion(&mut rep);
        rep.skip("gd_star_forward_product");
    }
    rep
}

fn additive_hypotheses(
    a: &CMat,
    b: &CMat,
    wa: &CMat,
    wb: &CMat,
    rep: &mut CheckReport,
    gate: &mut Gate,
    tol: &Tolerance,
) {
    gate.witness(rep, "witness_a", a, wa, tol);
    gate.witness(rep, "witness_b", b, wb, tol);
    let m = a.nrows();
    let zero = CMat::zeros(m, m);
    for (name, prod) in [
        ("ab_zero", a * b),
        ("ba_zero", b * a),
        ("agd_b_zero", wa * b),
        ("b_agd_zero", b * wa),
        ("bgd_a_zero", wb * a),
        ("a_bgd_zero", a * wb),
    ] {
        let (ok, res) = prod.approx_eq_to(&zero, tol);
        gate.hypothesis(rep, name, ok, res);
    }
}

/// (A + B)^GD = A^GD + B^GD under AB = BA = 0 and mutual annihilation of
/// the witnesses.
pub fn additive_gd(a: &CMat, b: &CMat, wa: &CMat, wb: &CMat, tol: &Tolerance) -> CheckReport {
    let mut rep = CheckReport::new();
    let mut gate = Gate::new();
    additive_hypotheses(a, b, wa, wb, &mut rep, &mut gate, tol);
    if gate.all_hold {
        let k = matcore::index(a, tol).max(matcore::index(b, tol));
        assert_gd_conclusion(&mut rep, &(a + b), &(wa + wb), k, tol);
    } else {
        skip_gd_conclusion(&mut rep);
    }
    rep
}

/// (A + B)^{GD,*} = A^{GD,*} + B^{GD,*} under the additive hypotheses plus
/// B A* = 0.
pub fn additive_gd_star(a: &CMat, b: &CMat, wa: &CMat, wb: &CMat, tol: &Tolerance) -> CheckReport {
    let mut rep = CheckReport::new();
    let mut gate = Gate::new();
    additive_hypotheses(a, b, wa, wb, &mut rep, &mut gate, tol);
    let m = a.nrows();
    let (ok, res) = (b * &a.adjoint()).approx_eq_to(&CMat::zeros(m, m), tol);
    gate.hypothesis(&mut rep, "b_astar_zero", ok, res);
    if gate.all_hold {
        let sum = a + b;
        let sum_witness = wa + wb;
        let k = matcore::index(a, tol).max(matcore::index(b, tol));
        assert_gd_conclusion(&mut rep, &sum, &sum_witness, k, tol);
        let lhs = &(&sum_witness * &sum) * &sum.adjoint();
        let star_a = &(wa * a) * &a.adjoint();
        let star_b = &(wb * b) * &b.adjoint();
        rep.check_eq("gd_star_additive", &lhs, &(&star_a + &star_b), tol);
    } else {
        skip_gd_conclusion(&mut rep);
        rep.skip("gd_star_additive");
    }
    rep
}

/// Necessary conditions from the additive GD-star identity: when
/// A^{GD,*} ((A*)+ + (B*)+) B^{GD,*} = A^{GD,*} + B^{GD,*}, both
/// (i) A A* B B+ = A A* and (ii) A^GD A B^GD B = B^GD B must hold.
pub fn additive_necessary(a: &CMat, b: &CMat, wa: &CMat, wb: &CMat, tol: &Tolerance) -> CheckReport {
    let mut rep = CheckReport::new();
    let mut gate = Gate::new();
    gate.witness(&mut rep, "witness_a", a, wa, tol);
    gate.witness(&mut rep, "witness_b", b, wb, tol);
    if !gate.all_hold {
        rep.skip("hyp_additive_identity");
        rep.skip("conclusion_i_projector");
        rep.skip("conclusion_ii_witness_product");
        return rep;
    }
    let star_a = &(wa * a) * &a.adjoint();
    let star_b = &(wb * b) * &b.adjoint();
    let mid = &geninv::moore_penrose(&a.adjoint(), tol) + &geninv::moore_penrose(&b.adjoint(), tol);
    let lhs = &(&star_a * &mid) * &star_b;
    let (hyp_ok, hyp_res) = lhs.approx_eq_to(&(&star_a + &star_b), tol);
    gate.hypothesis(&mut rep, "additive_identity", hyp_ok, hyp_res);
    if gate.all_hold {
        let gram = a * &a.adjoint();
        let b_proj = b * &geninv::moore_penrose(b, tol);
        rep.check_eq("conclusion_i_projector", &(&gram * &b_proj), &gram, tol);
        rep.check_eq(
            "conclusion_ii_witness_product",
            &(&(wa * a) * &(wb * b)),
            &(wb * b),
            tol,
        );
    } else {
        rep.skip("conclusion_i_projector");
        rep.skip("conclusion_ii_witness_product");
    }
    rep
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matcore::Rng;
    use crate::matcore::C64;
    use crate::report::ItemStatus;
    use crate::testkit::m2;

    fn tol() -> Tolerance {
        Tolerance::default()
    }

    fn diag(vals: &[f64]) -> CMat {
        let n = vals.len();
        let mut m = CMat::zeros(n, n);
        for (i, &v) in vals.iter().enumerate() {
            m.set(i, i, C64::new(v, 0.0));
        }
        m
    }

    fn concluded(rep: &CheckReport) -> bool {
        rep.items
            .iter()
            .any(|i| i.name.starts_with("conclusion") && i.status == ItemStatus::Passed)
    }

    fn skipped(rep: &CheckReport) -> bool {
        rep.items
            .iter()
            .any(|i| i.name.starts_with("conclusion") && i.status == ItemStatus::Skipped)
    }

    #[test]
    fn reverse_gd_examples() {
        let t = tol();
        let a = diag(&[2.0, 0.0]);
        let b = diag(&[3.0, 5.0]);
        let wa = diag(&[0.5, 0.0]);
        let wb = diag(&[1.0 / 3.0, 0.2]);
        let rep = reverse_gd(&a, &b, &wa, &wb, &t);
        assert!(rep.overall(), "{:?}", rep.failures().collect::<Vec<_>>());
        assert!(concluded(&rep));

        let i = CMat::identity(2);
        let rep = reverse_gd(&i, &i, &i, &i, &t);
        assert!(rep.overall() && concluded(&rep));

        // commuting but with a range mismatch: B singular off A's support
        let b_bad = diag(&[0.0, 5.0]);
        let wb_bad = diag(&[0.0, 0.2]);
        let rep = reverse_gd(&a, &b_bad, &wa, &wb_bad, &t);
        assert!(rep.overall());
        assert!(skipped(&rep), "conclusion must be skipped");
        assert!(rep.items.iter().any(|i| i.name == "hyp_range_agd_in_b_fails"));
    }

    #[test]
    fn forward_gd_examples() {
        let t = tol();
        let a = diag(&[3.0, 5.0]);
        let b = diag(&[2.0, 0.0]);
        let wa = diag(&[1.0 / 3.0, 0.2]);
        let wb = diag(&[0.5, 0.0]);
        let rep = forward_gd(&a, &b, &wa, &wb, &t);
        assert!(rep.overall() && concluded(&rep));

        let i = CMat::identity(3);
        let rep = forward_gd(&i, &i, &i, &i, &t);
        assert!(rep.overall() && concluded(&rep));

        let a_bad = diag(&[0.0, 5.0]);
        let wa_bad = diag(&[0.0, 0.2]);
        let rep = forward_gd(&a_bad, &b, &wa_bad, &wb, &t);
        assert!(rep.overall() && skipped(&rep));
    }

    #[test]
    fn triple_laws_identity_and_diagonals() {
        let t = tol();
        let i = CMat::identity(2);
        for variant in TripleVariant::ALL {
            let rep = triple_reverse_gd(&i, &i, &i, &i, &i, &i, variant, &t);
            assert!(rep.overall() && concluded(&rep), "variant {variant:?}");
            let rep = triple_forward_gd(&i, &i, &i, &i, &i, &i, variant, &t);
            assert!(rep.overall() && concluded(&rep), "variant {variant:?}");
        }

        // commuting diagonals, variant (i): R(B^GD B) within R(C) since C
        // is nonsingular
        let a = diag(&[2.0, 0.0, 1.0]);
        let b = diag(&[1.0, 1.0, 1.0]);
        let c = diag(&[3.0, 4.0, 5.0]);
        let wa = diag(&[0.5, 0.0, 1.0]);
        let wb = CMat::identity(3);
        let wc = diag(&[1.0 / 3.0, 0.25, 0.2]);
        let rep = triple_reverse_gd(&a, &b, &c, &wa, &wb, &wc, TripleVariant::I, &t);
        assert!(rep.overall() && concluded(&rep), "{:?}", rep.failures().collect::<Vec<_>>());
        // forward variant (i) needs R(C^GD C) within R(B); B is the identity
        let rep = triple_forward_gd(&a, &b, &c, &wa, &wb, &wc, TripleVariant::I, &t);
        assert!(rep.overall() && concluded(&rep));
    }

    #[test]
    fn triple_variant_iii_hypothesis_violation() {
        let t = tol();
        // C's witness has an off-diagonal block over C's kernel; it fails to
        // commute with AB when AB has distinct diagonal entries there
        let a = diag(&[2.0, 1.0, 1.0]);
        let b = diag(&[1.0, 2.0, 3.0]);
        let c = diag(&[3.0, 0.0, 0.0]);
        let wa = diag(&[0.5, 1.0, 1.0]);
        let wb = diag(&[1.0, 0.5, 1.0 / 3.0]);
        let mut wc = diag(&[1.0 / 3.0, 0.0, 0.0]);
        wc.set(1, 2, C64::new(1.0, 0.0));
        let rep = triple_reverse_gd(&a, &b, &c, &wa, &wb, &wc, TripleVariant::III, &t);
        assert!(rep.overall());
        assert!(skipped(&rep));
        assert!(rep.items.iter().any(|i| i.name == "hyp_cgd_with_ab_fails"));
    }

    #[test]
    fn gd_star_laws_on_diagonal_pairs() {
        let t = tol();
        let a = diag(&[2.0, 0.0]);
        let b = diag(&[3.0, 5.0]);
        let wa = diag(&[0.5, 0.0]);
        let wb = diag(&[1.0 / 3.0, 0.2]);
        let rep = reverse_gd_star(&a, &b, &wa, &wb, &t);
        assert!(rep.overall(), "{:?}", rep.failures().collect::<Vec<_>>());
        assert!(rep
            .items
            .iter()
            .any(|i| i.name == "gd_star_reverse_product" && i.status == ItemStatus::Passed));

        let rep = forward_gd_star(&b, &a, &wb, &wa, &t);
        assert!(rep.overall(), "{:?}", rep.failures().collect::<Vec<_>>());

        let i = CMat::identity(2);
        assert!(reverse_gd_star(&i, &i, &i, &i, &t).overall());
        assert!(forward_gd_star(&i, &i, &i, &i, &t).overall());

        // commuting pair with the range hypothesis broken: conclusion skipped
        let a2 = m2(1.0, 1.0, 0.0, 0.0);
        let wa2 = m2(1.0, 0.7, 0.0, 0.3);
        let b3 = m2(0.0, 0.0, 0.0, 1.0);
        let wb3 = m2(0.0, 0.0, 0.0, 1.0);
        let rep = reverse_gd_star(&a2, &b3, &wa2, &wb3, &t);
        assert!(rep.overall());
        assert!(rep
            .items
            .iter()
            .any(|i| i.name == "gd_star_reverse_product" && i.status == ItemStatus::Skipped));
    }

    #[test]
    fn additive_gd_examples() {
        let t = tol();
        let a = diag(&[1.0, 0.0, 0.0]);
        let b = diag(&[0.0, 2.0, 0.0]);
        let wa = diag(&[1.0, 0.0, 0.0]);
        let wb = diag(&[0.0, 0.5, 0.0]);
        let rep = additive_gd(&a, &b, &wa, &wb, &t);
        assert!(rep.overall() && concluded(&rep), "{:?}", rep.failures().collect::<Vec<_>>());

        // degenerate: B = 0 with zero witness
        let z = CMat::zeros(3, 3);
        let rep = additive_gd(&a, &z, &wa, &z, &t);
        assert!(rep.overall() && concluded(&rep));

        // witnesses with nonzero cross products are a hypothesis failure
        let wa_bad = diag(&[1.0, 5.0, 0.0]);
        let rep = additive_gd(&a, &b, &wa_bad, &wb, &t);
        assert!(rep.overall() && skipped(&rep));
        assert!(rep.items.iter().any(|i| i.name == "hyp_agd_b_zero_fails"));
    }

    #[test]
    fn additive_gd_star_examples() {
        let t = tol();
        let a = diag(&[1.0, 0.0, 0.0]);
        let b = diag(&[0.0, 2.0, 0.0]);
        let wa = diag(&[1.0, 0.0, 0.0]);
        let wb = diag(&[0.0, 0.5, 0.0]);
        let rep = additive_gd_star(&a, &b, &wa, &wb, &t);
        assert!(rep.overall(), "{:?}", rep.failures().collect::<Vec<_>>());
        assert!(rep
            .items
            .iter()
            .any(|i| i.name == "gd_star_additive" && i.status == ItemStatus::Passed));

        let z = CMat::zeros(3, 3);
        let rep = additive_gd_star(&a, &z, &wa, &z, &t);
        assert!(rep.overall());
    }

    #[test]
    fn additive_necessary_examples() {
        let t = tol();
        let i = CMat::identity(2);
        let rep = additive_necessary(&i, &i, &i, &i, &t);
        assert!(rep.overall(), "{:?}", rep.failures().collect::<Vec<_>>());
        assert!(rep
            .items
            .iter()
            .any(|i| i.name == "conclusion_i_projector" && i.status == ItemStatus::Passed));

        // A = B nonsingular random
        let mut rng = Rng::seeded(12);
        let u = rng.unitary(3);
        let d = diag(&[1.5, 0.7, 2.2]);
        let a = &(&u * &d) * &u.adjoint();
        let ainv = geninv::moore_penrose(&a, &t);
        let rep = additive_necessary(&a, &a, &ainv, &ainv, &t);
        assert!(rep.overall(), "{:?}", rep.failures().collect::<Vec<_>>());
        assert!(rep
            .items
            .iter()
            .any(|i| i.name == "conclusion_ii_witness_product" && i.status == ItemStatus::Passed));

        // random pair: hypothesis fails, conclusions skipped
        let b = diag(&[1.0, 0.0, 3.0]);
        let wb = diag(&[1.0, 0.0, 1.0 / 3.0]);
        let rep = additive_necessary(&a, &b, &ainv, &wb, &t);
        assert!(rep.overall());
        assert!(rep
            .items
            .iter()
            .any(|i| i.name == "conclusion_i_projector" && i.status == ItemStatus::Skipped));
    }
}
