//! Linear-system applications: least squares through GDMP, minimum norm
//! through MPGD, the gram system A x = A A* b, and the stationary
//! distribution of an ergodic chain through a weak-Drazin construction.

use crate::error::Error;
use crate::geninv::{self, GDParams, GdRoute};
use crate::matcore::{CMat, Rng, Tolerance, C64};
use crate::report::CheckReport;
use crate::Result;

/// A computed solution with the residual checks that certify it.
#[derive(Debug, Clone)]
pub struct Solution {
    pub x: CMat,
    pub report: CheckReport,
}

fn require_col(b: &CMat, rows: usize) -> Result<()> {
    if b.shape() != (rows, 1) {
        return Err(Error::ShapeMismatch {
            expected: (rows, 1),
            got: b.shape(),
        });
    }
    Ok(())
}

/// Least-squares solution x = (X_gd A A+) b; its residual matches the
/// Moore-Penrose least-squares residual because GDMP is a {1,3}-inverse.
pub fn lsq_gdmp(a: &CMat, b: &CMat, xgd: &CMat, tol: &Tolerance) -> Result<Solution> {
    require_col(b, a.nrows())?;
    let y = geninv::gdmp(a, xgd, tol)?;
    let x = &y * b;
    let pinv = geninv::moore_penrose(a, tol);
    let res_gdmp = (&(a * &x) - b).fro_norm();
    let res_mp = (&(a * &(&pinv * b)) - b).fro_norm();
    let mut report = CheckReport::new();
    report.check_residual(
        "lsq_residual_parity",
        (res_gdmp - res_mp).abs(),
        (res_gdmp - res_mp).abs() <= tol.residual_atol + tol.residual_rtol * (1.0 + b.fro_norm()),
    );
    report.info("lsq_residual", res_gdmp);
    Ok(Solution { x, report })
}

/// Minimum-norm solution x = (A+ A X_gd) b of a consistent system.
pub fn minnorm_mpgd(a: &CMat, b: &CMat, xgd: &CMat, tol: &Tolerance) -> Result<Solution> {
    require_col(b, a.nrows())?;
    let pinv = geninv::moore_penrose(a, tol);
    let projected = &(a * &(&pinv * b));
    let consistency = (projected - b).fro_norm();
    if consistency > tol.residual_atol + tol.residual_rtol * b.fro_norm() {
        return Err(Error::Inconsistent {
            residual: consistency,
        });
    }
    let z = geninv::mpgd(a, xgd, tol)?;
    let x = &z * b;
    let mut report = CheckReport::new();
    report.check_eq("minnorm_solves", &(a * &x), b, tol);
    let norm_gap = (x.fro_norm() - (&pinv * b).fro_norm()).abs();
    report.check_residual(
        "minnorm_norm_parity",
        norm_gap,
        norm_gap <= tol.residual_atol + tol.residual_rtol * (1.0 + b.fro_norm()),
    );
    Ok(Solution { x, report })
}

/// General solution x = X_gd A A* b + (I - X_gd A) z of A x = A A* b.
pub fn gram_solve(a: &CMat, b: &CMat, xgd: &CMat, z: &CMat, tol: &Tolerance) -> Result<Solution> {
    require_col(b, a.nrows())?;
    require_col(z, a.nrows())?;
    let star = crate::starfam::gd_star(a, xgd, tol)?;
    let m = a.nrows();
    let complement = &CMat::identity(m) - &(xgd * a);
    let x = &(&star * b) + &(&complement * z);
    let rhs = &(a * &a.adjoint()) * b;
    let mut report = CheckReport::new();
    let res = (&(a * &x) - &rhs).fro_norm();
    let bound = tol.residual_atol + tol.residual_rtol * (1.0 + rhs.fro_norm());
    report.check_residual("gram_residual", res, res <= bound);
    let x0 = &star * b;
    let res0 = (&(a * &x0) - &rhs).fro_norm();
    report.check_residual("gram_residual_z0", res0, res0 <= bound);
    Ok(Solution { x, report })
}

/// Stationary distribution of an ergodic row-stochastic chain.
#[derive(Debug, Clone)]
pub struct StationaryResult {
    pub w: Vec<f64>,
    pub report: CheckReport,
}

fn eigenvalue_moduli(t_mat: &CMat) -> Vec<f64> {
    let (_, tri) = crate::schur::schur(t_mat.as_dmatrix());
    let mut mags: Vec<f64> = (0..t_mat.nrows()).map(|i| tri[(i, i)].norm()).collect();
    mags.sort_by(|x, y| y.partial_cmp(x).unwrap());
    mags
}

/// Independent oracle: stationary vector as the normalized null vector of
/// (T - I)^T, computed straight from the SVD.
pub fn stationary_eigen_oracle(t_mat: &CMat, tol: &Tolerance) -> Result<Vec<f64>> {
    let m = t_mat.nrows();
    let shifted = &t_mat.transpose() - &CMat::identity(m);
    let svd = crate::svd::svd(shifted.as_dmatrix());
    let smax = svd.sigma.first().copied().unwrap_or(0.0);
    let cutoff = tol.rank_cutoff(smax.max(1.0), m);
    // smallest singular value direction
    if svd.sigma[m - 1] > cutoff {
        return Err(Error::NotErgodic {
            second_eigenvalue: f64::NAN,
        });
    }
    let mut w: Vec<f64> = (0..m).map(|i| svd.v[(i, m - 1)].re).collect();
    let sum: f64 = w.iter().sum();
    if sum.abs() < 1e-300 {
        return Err(Error::NotErgodic {
            second_eigenvalue: f64::NAN,
        });
    }
    for v in &mut w {
        *v /= sum;
    }
    Ok(w)
}

/// Rows of I - X_gd A with A = I - T all equal the stationary vector of T,
/// for any GD inverse of A. Asserts row equality, witness invariance across
/// five draws, and agreement with the eigenvector oracle.
pub fn markov_stationary(t_mat: &CMat, rng: &mut Rng, tol: &Tolerance) -> Result<StationaryResult> {
    assert!(t_mat.is_square());
    let m = t_mat.nrows();
    // row-stochastic validation
    for i in 0..m {
        let mut sum = 0.0;
        for j in 0..m {
            let e = t_mat.get(i, j);
            if e.im.abs() > 1e-12 || e.re < -1e-12 {
                return Err(Error::NotStochastic(format!(
                    "entry ({i}, {j}) = {e} is not a probability"
                )));
            }
            sum += e.re;
        }
        if (sum - 1.0).abs() > 1e-10 {
            return Err(Error::NotStochastic(format!("row {i} sums to {sum}")));
        }
    }
    // ergodicity through the spectral gap
    let mags = eigenvalue_moduli(t_mat);
    if mags.len() > 1 && mags[1] >= 1.0 - 1e-8 {
        return Err(Error::NotErgodic {
            second_eigenvalue: mags[1],
        });
    }

    let a = &CMat::identity(m) - t_mat;
    let mut report = CheckReport::new();
    let mut rows: Vec<Vec<f64>> = Vec::new();
    for draw in 0..5 {
        let params = GDParams::seeded(&a, rng, tol)?;
        let route = if draw % 2 == 0 { GdRoute::SimilarityGd2 } else { GdRoute::UnitaryKa7 };
        let xgd = geninv::gd_sample(&a, &params, tol, route)?;
        let fixed = &CMat::identity(m) - &(&xgd * &a);
        // all rows equal
        let mut worst: f64 = 0.0;
        for i in 1..m {
            for j in 0..m {
                let d = (fixed.get(i, j) - fixed.get(0, j)).norm();
                worst = worst.max(d);
            }
        }
        let bound = tol.residual_atol + tol.residual_rtol * (1.0 + fixed.fro_norm());
        report.check_residual(&format!("rows_equal_draw_{draw}"), worst, worst <= bound);
        let mut row: Vec<f64> = (0..m).map(|j| fixed.get(0, j).re).collect();
        let imag: f64 = (0..m).map(|j| fixed.get(0, j).im.abs()).fold(0.0, f64::max);
        report.check_residual(&format!("row_real_draw_{draw}"), imag, imag <= bound);
        let sum: f64 = row.iter().sum();
        for v in &mut row {
            *v /= sum;
        }
        rows.push(row);
    }
    // witness invariance
    let mut witness_spread: f64 = 0.0;
    for row in &rows[1..] {
        for (x, y) in row.iter().zip(&rows[0]) {
            witness_spread = witness_spread.max((x - y).abs());
        }
    }
    report.check_residual("witness_invariance", witness_spread, witness_spread <= 1e-10);

    let w = rows.swap_remove(0);
    // stationarity and the eigen oracle
    let wt = CMat::from_rows(&[w.iter().map(|&x| C64::new(x, 0.0)).collect::<Vec<_>>()])?;
    let residual = (&(&wt * t_mat) - &wt).fro_norm();
    report.check_residual(
        "stationarity",
        residual,
        residual <= tol.residual_atol + tol.residual_rtol * (1.0 + wt.fro_norm()),
    );
    let oracle = stationary_eigen_oracle(t_mat, tol)?;
    let oracle_gap = w
        .iter()
        .zip(&oracle)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max);
    report.check_residual("eigen_oracle", oracle_gap, oracle_gap <= 1e-10);
    Ok(StationaryResult { w, report })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testkit::m2;

    fn tol() -> Tolerance {
        Tolerance::default()
    }

    fn col(vals: &[f64]) -> CMat {
        CMat::col_from_real(vals)
    }

    #[test]
    fn lsq_example() {
        let t = tol();
        let a = m2(1.0, 1.0, 0.0, 0.0);
        let xgd = m2(1.0, 0.25, 0.0, 0.75);
        let sol = lsq_gdmp(&a, &col(&[1.0, 1.0]), &xgd, &t).unwrap();
        assert!(sol.report.overall());
        assert!(sol.x.approx_eq_to(&col(&[1.0, 0.0]), &t).0);
        let res = sol
            .report
            .items
            .iter()
            .find(|i| i.name == "lsq_residual")
            .unwrap()
            .residual;
        assert!((res - 1.0).abs() < 1e-12);

        // identity: exact solve
        let i = CMat::identity(2);
        let sol = lsq_gdmp(&i, &col(&[2.0, -1.0]), &i, &t).unwrap();
        assert!(sol.x.approx_eq_to(&col(&[2.0, -1.0]), &t).0);
    }

    #[test]
    fn minnorm_example() {
        let t = tol();
        let a = m2(1.0, 1.0, 0.0, 0.0);
        let xgd = m2(1.0, 0.25, 0.0, 0.75);
        let sol = minnorm_mpgd(&a, &col(&[2.0, 0.0]), &xgd, &t).unwrap();
        assert!(sol.report.overall(), "{:?}", sol.report.failures().collect::<Vec<_>>());
        assert!(sol.x.approx_eq_to(&col(&[1.0, 1.0]), &t).0);
        assert!((sol.x.fro_norm() - std::f64::consts::SQRT_2).abs() < 1e-12);

        // inconsistent right-hand side
        assert!(matches!(
            minnorm_mpgd(&a, &col(&[0.0, 1.0]), &xgd, &t),
            Err(Error::Inconsistent { .. })
        ));

        let i = CMat::identity(2);
        let sol = minnorm_mpgd(&i, &col(&[3.0, 4.0]), &i, &t).unwrap();
        assert!(sol.x.approx_eq_to(&col(&[3.0, 4.0]), &t).0);
    }

    #[test]
    fn gram_example() {
        let t = tol();
        let a = m2(1.0, 1.0, 0.0, 0.0);
        let xgd = m2(1.0, 0.25, 0.0, 0.75);
        let sol = gram_solve(&a, &col(&[1.0, 0.0]), &xgd, &col(&[0.0, 0.0]), &t).unwrap();
        assert!(sol.report.overall());
        assert!(sol.x.approx_eq_to(&col(&[2.0, 0.0]), &t).0);

        // zero matrix: every x solves, the solution is z itself
        let z2 = CMat::zeros(2, 2);
        let zero_witness = CMat::zeros(2, 2); // valid GD witness of 0? AXA = 0 holds
        let sol = gram_solve(&z2, &col(&[1.0, 2.0]), &zero_witness, &col(&[5.0, -1.0]), &t).unwrap();
        assert!(sol.report.overall());
        assert!(sol.x.approx_eq_to(&col(&[5.0, -1.0]), &t).0);

        // distinct z values both solve the system
        let mut rng = Rng::seeded(8);
        let a5 = crate::matcore::gen_structured(5, 2, 2, crate::matcore::GenClass::Generic, &mut rng)
            .unwrap();
        let params = GDParams::seeded(&a5, &mut rng, &t).unwrap();
        let w5 = geninv::gd_sample(&a5, &params, &t, GdRoute::UnitaryKa7).unwrap();
        let b5 = rng.gaussian_matrix(5, 1);
        let z1 = rng.gaussian_matrix(5, 1);
        let z2b = rng.gaussian_matrix(5, 1);
        let s1 = gram_solve(&a5, &b5, &w5, &z1, &t).unwrap();
        let s2 = gram_solve(&a5, &b5, &w5, &z2b, &t).unwrap();
        assert!(s1.report.overall() && s2.report.overall());
        assert!((&s1.x - &s2.x).fro_norm() > 1e-8, "distinct z must move x");
    }

    #[test]
    fn markov_examples() {
        let t = tol();
        let mut rng = Rng::seeded(3);
        let uniform = m2(0.5, 0.5, 0.5, 0.5);
        let res = markov_stationary(&uniform, &mut rng, &t).unwrap();
        assert!(res.report.overall(), "{:?}", res.report.failures().collect::<Vec<_>>());
        assert!((res.w[0] - 0.5).abs() < 1e-12);
        assert!((res.w[1] - 0.5).abs() < 1e-12);

        let skewed = m2(0.9, 0.1, 0.5, 0.5);
        let res = markov_stationary(&skewed, &mut rng, &t).unwrap();
        assert!(res.report.overall(), "{:?}", res.report.failures().collect::<Vec<_>>());
        assert!((res.w[0] - 5.0 / 6.0).abs() < 1e-10, "w0 = {}", res.w[0]);
        assert!((res.w[1] - 1.0 / 6.0).abs() < 1e-10);

        // identity chain is not ergodic
        assert!(matches!(
            markov_stationary(&CMat::identity(2), &mut rng, &t),
            Err(Error::NotErgodic { .. })
        ));
        // non-stochastic rejected
        let bad = m2(0.7, 0.7, 0.5, 0.5);
        assert!(matches!(
            markov_stationary(&bad, &mut rng, &t),
            Err(Error::NotStochastic(_))
        ));
    }

    #[test]
    fn markov_random_chains_match_oracle() {
        let t = tol();
        for seed in 0..10u64 {
            let mut rng = Rng::seeded(40 + seed);
            let m = rng.usize_in(2, 6);
            let mut t_mat = CMat::zeros(m, m);
            for i in 0..m {
                let mut row: Vec<f64> = (0..m).map(|_| rng.uniform_in(0.05, 1.0)).collect();
                let sum: f64 = row.iter().sum();
                for v in &mut row {
                    *v /= sum;
                }
                for (j, &v) in row.iter().enumerate() {
                    t_mat.set(i, j, C64::new(v, 0.0));
                }
            }
            let res = markov_stationary(&t_mat, &mut rng, &t).unwrap();
            assert!(res.report.overall(), "seed {seed}: {:?}", res.report.failures().collect::<Vec<_>>());
        }
    }
}
