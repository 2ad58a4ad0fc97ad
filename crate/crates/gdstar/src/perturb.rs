//! Norm bound for (I + A)^-1 and the perturbation construction producing a
//! {1}-inverse of B = A + E from a GD inverse of A.
//!
//! Two admissibility modes are measured separately: the literal hypothesis
//! A^k E = E (strict) and the structural consequence its proof actually uses
//! (E vanishes on the trailing block rows of the similarity frame).

use crate::decomp::{self, CnForm};
use crate::error::Error;
use crate::geninv::{self, GDParams, GdRoute};
use crate::matcore::{self, CMat, Rng, Tolerance, C64};
use crate::report::CheckReport;
use crate::Result;

/// How the perturbation is drawn.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PerturbMode {
    /// Columns from null(A^k - I); zero (flagged) when that space is trivial.
    Strict,
    /// E = P [[E1, E2], [0, 0]] Pinv in the similarity frame.
    Structural,
}

/// A drawn perturbation with the conditions it actually satisfies.
#[derive(Debug, Clone)]
pub struct Perturbation {
    pub e: CMat,
    pub strict_holds: bool,
    pub structural_holds: bool,
    /// Strict mode found an empty null space and returned the zero matrix.
    pub zero_flagged: bool,
}

/// Norm bound check: for ||A||_2 < 1, I + A is nonsingular with
/// ||(I + A)^-1||_2 <= 1 / (1 - ||A||_2). Skipped outside the hypothesis.
pub fn stewart_check(a: &CMat, tol: &Tolerance) -> CheckReport {
    assert!(a.is_square());
    let mut rep = CheckReport::new();
    let norm = a.op_norm();
    if norm >= 1.0 {
        rep.skip("stewart_nonsingular");
        rep.skip("stewart_norm_bound");
        return rep;
    }
    let m = a.nrows();
    let shifted = &CMat::identity(m) + a;
    let smin = shifted
        .singular_values()
        .into_iter()
        .fold(f64::INFINITY, f64::min);
    rep.check_residual("stewart_nonsingular", smin, smin > (1.0 - norm) * 0.5);
    let inv_norm = 1.0 / smin; // largest singular value of the inverse
    let bound = 1.0 / (1.0 - norm);
    rep.check_residual(
        "stewart_norm_bound",
        inv_norm,
        inv_norm <= bound * (1.0 + tol.residual_rtol) + tol.residual_atol,
    );
    rep
}

/// Draw an admissible perturbation for A in the requested mode, scaled so the
/// Neumann contraction holds for the N+ style witness.
pub fn admissible_perturbation(
    a: &CMat,
    mode: PerturbMode,
    rng: &mut Rng,
    tol: &Tolerance,
) -> Result<Perturbation> {
    assert!(a.is_square());
    let m = a.nrows();
    let cn = decomp::core_nilpotent(a, tol, CnForm::Similarity)?;
    let k = cn.k;
    let dagger_witness =
        geninv::gd_sample(a, &GDParams::dagger(cn.nil_dim()), tol, GdRoute::SimilarityGd2)?;

    let mut zero_flagged = false;
    let raw = match mode {
        PerturbMode::Strict => {
            // columns in null(A^k - I)
            let ak = matcore::mat_pow(a, k);
            let shifted = &ak - &CMat::identity(m);
            let svd = crate::svd::svd(shifted.as_dmatrix());
            let smax = svd.sigma.first().copied().unwrap_or(0.0);
            let cutoff = tol.rank_cutoff(smax.max(1.0), m);
            let null_cols: Vec<usize> = (0..m).filter(|&i| svd.sigma[i] <= cutoff).collect();
            if null_cols.is_empty() {
                zero_flagged = true;
                CMat::zeros(m, m)
            } else {
                let mut e = CMat::zeros(m, m);
                for col in 0..m {
                    for &nc in &null_cols {
                        let coeff = rng.complex_gaussian();
                        for row in 0..m {
                            let v = e.get(row, col) + svd.v[(row, nc)] * coeff;
                            e.set(row, col, v);
                        }
                    }
                }
                e
            }
        }
        PerturbMode::Structural => {
            let r = cn.core_dim();
            let s = cn.nil_dim();
            let e1 = rng.gaussian_matrix(r, r);
            let e2 = rng.gaussian_matrix(r, s);
            let inner = CMat::block2x2(&e1, &e2, &CMat::zeros(s, r), &CMat::zeros(s, s));
            &(&cn.p * &inner) * &cn.pinv
        }
    };

    // scale so the dagger-style witness satisfies the contraction comfortably
    let e = if raw.fro_norm() > 0.0 {
        let prod = (&dagger_witness * &raw).op_norm();
        if prod > 0.5 {
            raw.scale(C64::new(0.5 / prod, 0.0))
        } else {
            raw
        }
    } else {
        raw
    };

    let ak = matcore::mat_pow(a, k);
    let strict_res = (&(&ak * &e) - &e).fro_norm();
    let strict_holds = strict_res <= tol.residual_atol + tol.residual_rtol * (1.0 + e.fro_norm());
    let framed = &(&cn.pinv * &e) * &cn.p;
    let r = cn.core_dim();
    let s = cn.nil_dim();
    let low = framed.block(r, 0, s, m).fro_norm();
    let structural_holds = low <= tol.residual_atol + tol.residual_rtol * (1.0 + e.fro_norm());
    Ok(Perturbation {
        e,
        strict_holds,
        structural_holds,
        zero_flagged,
    })
}

/// G = (I + X_gd E)^-1 X_gd is a {1}-inverse of B = A + E whenever
/// ||X_gd E|| < 1 and E is admissible. A witness built from the N+ parameter
/// choice is expected to push G all the way to the Moore-Penrose inverse of
/// B; `record_mp_claim` logs that residual without asserting it.
pub fn perturbed_one_inverse(
    a: &CMat,
    xgd: &CMat,
    e: &CMat,
    tol: &Tolerance,
    record_mp_claim: bool,
) -> Result<(CMat, CheckReport)> {
    let rep_w = geninv::gd_verify(a, xgd, tol);
    if !rep_w.overall() {
        return Err(Error::InvalidWitness {
            residual: rep_w.max_residual(),
        });
    }
    let m = a.nrows();
    let contraction = (xgd * e).op_norm();
    if contraction >= 1.0 {
        return Err(Error::ContractionViolated { norm: contraction });
    }
    let shifted = &CMat::identity(m) + &(xgd * e);
    let inv = shifted
        .as_dmatrix()
        .clone()
        .lu()
        .try_inverse()
        .ok_or(Error::ContractionViolated { norm: contraction })?;
    let g = &CMat::from_dmatrix(inv) * xgd;
    let b = a + e;
    let mut rep = CheckReport::new();
    rep.info("contraction_norm", contraction);
    rep.check_eq("bgb_eq_b", &(&(&b * &g) * &b), &b, tol);
    if record_mp_claim {
        let (_, mp_res) = g.approx_eq_to(&geninv::moore_penrose(&b, tol), tol);
        rep.info("mp_claim_residual", mp_res);
    }
    Ok((g, rep))
}
