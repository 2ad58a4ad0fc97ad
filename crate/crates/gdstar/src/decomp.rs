//! Decompositions behind the representation theorems: the zero-ordered Schur
//! triangularization, the core-nilpotent split in unitary
//! A = P [[C, S], [0, N]] P* and similarity A = P diag(C, N) Pinv forms, the
//! triangular Sylvester solver linking the two, and the Hartwig-Spindelboeck
//! decomposition A = U [[SK, SL], [0, 0]] U*.
//!
//! Zero eigenvalues of a defective matrix are only determined to eps^(1/k) by
//! QR iteration, so the split is never decided from the Schur diagonal.
//! Instead the core invariant subspace is taken as R(A^k) from an SVD of the
//! stabilized power (rank thresholds scaled by ||A||^j), the core block alone
//! goes through QR Schur, and the nilpotent block is triangularized exactly
//! by an orthonormal basis adapted to its null-space flag.

use nalgebra::{DMatrix, DVector};

use crate::error::Error;
use crate::matcore::{self, CMat, Tolerance, C64};
use crate::Result;

/// Which core-nilpotent form was computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CnForm {
    /// P unitary, coupling block S present: A = P [[C, S], [0, N]] P*.
    Unitary,
    /// S eliminated through a Sylvester solve; P no longer unitary and Pinv
    /// is tracked explicitly: A = P diag(C, N) Pinv.
    Similarity,
}

/// Factors of the core-nilpotent decomposition. `c` is the nonsingular core
/// (r x r, upper triangular), `n` the strictly upper triangular nilpotent
/// block with N^k = 0, and `k` the index of A.
#[derive(Debug, Clone)]
pub struct CoreNilpotent {
    pub p: CMat,
    pub pinv: CMat,
    pub c: CMat,
    pub s: CMat,
    pub n: CMat,
    pub k: usize,
    pub form: CnForm,
    /// Set when the zero/nonzero eigenvalue split was numerically delicate
    /// (singular values within a decade of the cutoff, or a noticeable
    /// residual was forced to zero).
    pub straddle: bool,
}

impl CoreNilpotent {
    pub fn core_dim(&self) -> usize {
        self.c.nrows()
    }

    pub fn nil_dim(&self) -> usize {
        self.n.nrows()
    }

    /// P [[C, S], [0, N]] Pinv.
    pub fn reconstruct(&self) -> CMat {
        let r = self.core_dim();
        let s = self.nil_dim();
        let inner = CMat::block2x2(&self.c, &self.s, &CMat::zeros(s, r), &self.n);
        &(&self.p * &inner) * &self.pinv
    }

    /// Embed an (r x r, s x s) diagonal block pair and conjugate back:
    /// P diag(top, bottom) Pinv.
    pub fn assemble_diag(&self, top: &CMat, bottom: &CMat) -> CMat {
        let r = self.core_dim();
        let s = self.nil_dim();
        assert_eq!(top.shape(), (r, r));
        assert_eq!(bottom.shape(), (s, s));
        let inner = CMat::block2x2(top, &CMat::zeros(r, s), &CMat::zeros(s, r), bottom);
        &(&self.p * &inner) * &self.pinv
    }
}

/// Hartwig-Spindelboeck factors: A = U [[SK, SL], [0, 0]] U* with
/// K K* + L L* = I_r and `sigma` the nonincreasing nonzero singular values.
#[derive(Debug, Clone)]
pub struct HSFactors {
    pub u: CMat,
    pub sigma: Vec<f64>,
    pub k_blk: CMat,
    pub l_blk: CMat,
    pub r: usize,
}

impl HSFactors {
    pub fn sigma_mat(&self) -> CMat {
        let d = DMatrix::from_diagonal(&DVector::from_iterator(
            self.r,
            self.sigma.iter().map(|&s| C64::new(s, 0.0)),
        ));
        CMat::from_dmatrix(d)
    }

    pub fn reconstruct(&self) -> CMat {
        let m = self.u.nrows();
        let r = self.r;
        let sig = self.sigma_mat();
        let top = CMat::block2x2(
            &(&sig * &self.k_blk),
            &(&sig * &self.l_blk),
            &CMat::zeros(m - r, r),
            &CMat::zeros(m - r, m - r),
        );
        &(&self.u * &top) * &self.u.adjoint()
    }
}

/// Rank against a caller-supplied scale: singular values above
/// `rank_rtol * scale * max_dim`. Used on powers A^j with scale ||A||^j,
/// where the plain sigma_max-relative rule would count rounding noise.
pub fn rank_with_scale(a: &CMat, scale: f64, tol: &Tolerance) -> usize {
    if a.nrows() == 0 || a.ncols() == 0 || scale <= 0.0 {
        return 0;
    }
    let cutoff = tol.rank_cutoff(scale, a.nrows().max(a.ncols()));
    a.singular_values().iter().filter(|&&s| s > cutoff).count()
}

fn near_cutoff(sv: &[f64], cutoff: f64) -> bool {
    cutoff > 0.0 && sv.iter().any(|&s| s > 0.1 * cutoff && s < 10.0 * cutoff)
}

struct OrderedSplit {
    p: CMat,
    c: CMat,
    s: CMat,
    n: CMat,
    k: usize,
    straddle: bool,
}

/// Index and stabilized rank through scale-aware ranks of powers.
fn power_rank_profile(a: &CMat, tol: &Tolerance) -> (usize, usize, bool) {
    let m = a.nrows();
    let anorm = a.op_norm();
    if anorm == 0.0 {
        // zero matrix: rank(A^0) = m, rank(A^1) = 0 = rank(A^2)
        return (1.min(m), 0, false);
    }
    let mut straddle = false;
    let mut power = a.clone();
    let mut prev_rank = m;
    for j in 1..=m {
        let scale = anorm.powi(j as i32);
        let sv = power.singular_values();
        let cutoff = tol.rank_cutoff(scale, m);
        let rank_j = sv.iter().filter(|&&s| s > cutoff).count();
        straddle |= near_cutoff(&sv, cutoff);
        if rank_j == prev_rank {
            return (j - 1, rank_j, straddle);
        }
        prev_rank = rank_j;
        if j < m {
            power = &power * a;
        }
    }
    (m, prev_rank, straddle)
}

/// Orthonormal basis adapted to the null-space flag of a nilpotent block:
/// columns ordered so the block becomes strictly upper triangular. Returns
/// the basis and the flag depth (the nilpotency degree).
fn nilpotent_flag_basis(n0: &CMat, ambient_scale: f64, tol: &Tolerance) -> (CMat, usize) {
    let s = n0.nrows();
    if s == 0 {
        return (CMat::zeros(0, 0), 0);
    }
    let mut basis = DMatrix::<C64>::zeros(s, 0);
    let mut depth = 0;
    let mut power = CMat::identity(s);
    while basis.ncols() < s && depth < s {
        depth += 1;
        power = &power * n0;
        // null space of N0^depth at the ambient scale
        let scale = ambient_scale.max(f64::EPSILON).powi(depth as i32);
        let cutoff = tol.rank_cutoff(scale, s);
        let svd = crate::svd::svd(power.as_dmatrix());
        let nullity = s - svd.sigma.iter().filter(|&&x| x > cutoff).count();
        let mut candidates = DMatrix::<C64>::zeros(s, nullity);
        let mut c_idx = 0;
        for i in 0..s {
            if svd.sigma[i] <= cutoff {
                for row in 0..s {
                    candidates[(row, c_idx)] = svd.v[(row, i)];
                }
                c_idx += 1;
            }
        }
        // project out the basis collected so far, orthonormalize the rest
        for col in 0..candidates.ncols() {
            let mut v = candidates.column(col).into_owned();
            for b in 0..basis.ncols() {
                let proj = basis.column(b).dotc(&v);
                v -= basis.column(b) * proj;
            }
            // re-orthogonalize once for stability
            for b in 0..basis.ncols() {
                let proj = basis.column(b).dotc(&v);
                v -= basis.column(b) * proj;
            }
            let norm = v.norm();
            if norm > 1e-8 {
                v /= C64::new(norm, 0.0);
                basis = DMatrix::from_columns(
                    &basis
                        .column_iter()
                        .map(|c| c.into_owned())
                        .chain(std::iter::once(v))
                        .collect::<Vec<_>>(),
                );
            }
        }
        if power.fro_norm() <= tol.rank_cutoff(scale, s) * (s as f64) {
            break;
        }
    }
    // complete the basis if rounding lost a direction
    while basis.ncols() < s {
        for e in 0..s {
            let mut v = DVector::<C64>::zeros(s);
            v[e] = C64::new(1.0, 0.0);
            for b in 0..basis.ncols() {
                let proj = basis.column(b).dotc(&v);
                v -= basis.column(b) * proj;
            }
            let norm = v.norm();
            if norm > 1e-6 {
                v /= C64::new(norm, 0.0);
                basis = DMatrix::from_columns(
                    &basis
                        .column_iter()
                        .map(|c| c.into_owned())
                        .chain(std::iter::once(v))
                        .collect::<Vec<_>>(),
                );
                break;
            }
        }
    }
    (CMat::from_dmatrix(basis), depth.max(1))
}

/// Force entries on and below the diagonal to zero, returning the largest
/// magnitude removed.
fn force_strictly_upper(n: &mut CMat) -> f64 {
    let s = n.nrows();
    let mut worst: f64 = 0.0;
    for i in 0..s {
        for j in 0..=i {
            worst = worst.max(n.get(i, j).norm());
            n.set(i, j, C64::new(0.0, 0.0));
        }
    }
    worst
}

fn force_upper(t: &mut CMat) -> f64 {
    let s = t.nrows();
    let mut worst: f64 = 0.0;
    for i in 0..s {
        for j in 0..i {
            worst = worst.max(t.get(i, j).norm());
            t.set(i, j, C64::new(0.0, 0.0));
        }
    }
    worst
}

fn ordered_split(a: &CMat, tol: &Tolerance) -> OrderedSplit {
    assert!(a.is_square(), "decomposition requires a square matrix");
    let m = a.nrows();
    if m == 0 {
        return OrderedSplit {
            p: CMat::zeros(0, 0),
            c: CMat::zeros(0, 0),
            s: CMat::zeros(0, 0),
            n: CMat::zeros(0, 0),
            k: 0,
            straddle: false,
        };
    }
    let anorm = a.op_norm();
    let (k, r, mut straddle) = power_rank_profile(a, tol);

    if r == m {
        // nonsingular: plain Schur, empty nilpotent part
        let (q, t) = crate::schur::schur(a.as_dmatrix());
        let mut c = CMat::from_dmatrix(t);
        force_upper(&mut c);
        return OrderedSplit {
            p: CMat::from_dmatrix(q),
            c,
            s: CMat::zeros(m, 0),
            n: CMat::zeros(0, 0),
            k: 0,
            straddle,
        };
    }

    // core basis: orthonormal columns spanning R(A^k) (A-invariant)
    let (q1, q2) = if r == 0 {
        (CMat::zeros(m, 0), CMat::identity(m))
    } else {
        let ak = matcore::mat_pow(a, k);
        let svd = crate::svd::svd(ak.as_dmatrix());
        (
            CMat::from_dmatrix(svd.u.columns(0, r).into_owned()),
            CMat::from_dmatrix(svd.u.columns(r, m - r).into_owned()),
        )
    };

    let c0 = &(&q1.adjoint() * a) * &q1;
    let s0 = &(&q1.adjoint() * a) * &q2;
    let n0 = &(&q2.adjoint() * a) * &q2;
    let low0 = &(&q2.adjoint() * a) * &q1;
    if low0.fro_norm() > 1e-8 * anorm.max(1e-300) {
        straddle = true;
    }

    // triangularize the core by QR Schur (its spectrum is away from zero)
    let (qc, c) = if r == 0 {
        (CMat::zeros(0, 0), CMat::zeros(0, 0))
    } else {
        let (q, t) = crate::schur::schur(c0.as_dmatrix());
        let mut c = CMat::from_dmatrix(t);
        force_upper(&mut c);
        (CMat::from_dmatrix(q), c)
    };

    // triangularize the nilpotent block along its null-space flag
    let (qn, depth) = nilpotent_flag_basis(&n0, anorm, tol);
    let mut n = &(&qn.adjoint() * &n0) * &qn;
    let removed = force_strictly_upper(&mut n);
    if removed > 1e-8 * anorm.max(1e-300) {
        straddle = true;
    }
    // flush machine-noise entries so a numerically-zero block is exactly zero
    // (its pseudoinverse would otherwise be enormous)
    let flush = 64.0 * f64::EPSILON * anorm;
    for i in 0..n.nrows() {
        for j in 0..n.ncols() {
            if n.get(i, j).norm() <= flush {
                n.set(i, j, C64::new(0.0, 0.0));
            }
        }
    }

    let s_blk = if r == 0 {
        CMat::zeros(0, m)
    } else {
        &(&qc.adjoint() * &s0) * &qn
    };
    // P = [Q1 Qc | Q2 Qn]
    let p_left = if r == 0 { CMat::zeros(m, 0) } else { &q1 * &qc };
    let p_right = &q2 * &qn;
    let mut p = DMatrix::<C64>::zeros(m, m);
    for j in 0..r {
        for i in 0..m {
            p[(i, j)] = p_left.get(i, j);
        }
    }
    for j in 0..(m - r) {
        for i in 0..m {
            p[(i, r + j)] = p_right.get(i, j);
        }
    }
    let k_eff = if m - r == 0 { 0 } else { depth.max(k).max(1) };
    OrderedSplit {
        p: CMat::from_dmatrix(p),
        c,
        s: s_blk,
        n,
        k: k_eff,
        straddle,
    }
}

/// Schur-type triangularization A = P T P* with the eigenvalues of the
/// nonsingular core leading and the (exactly triangularized) zero eigenvalues
/// trailing. P is unitary, T upper triangular.
pub fn schur_zero_ordered(a: &CMat, tol: &Tolerance) -> (CMat, CMat) {
    let split = ordered_split(a, tol);
    let r = split.c.nrows();
    let s = split.n.nrows();
    let t = CMat::block2x2(&split.c, &split.s, &CMat::zeros(s, r), &split.n);
    (split.p, t)
}

/// Index of A through the ordered-split route (nilpotency degree of N).
pub(crate) fn index_via_schur(a: &CMat, tol: &Tolerance) -> usize {
    ordered_split(a, tol).k
}

/// Core-nilpotent decomposition of a square matrix, in either form.
/// Nonsingular A yields an empty N; nilpotent A an empty C.
pub fn core_nilpotent(a: &CMat, tol: &Tolerance, form: CnForm) -> Result<CoreNilpotent> {
    let split = ordered_split(a, tol);
    let r = split.c.nrows();
    let s_dim = split.n.nrows();
    match form {
        CnForm::Unitary => Ok(CoreNilpotent {
            pinv: split.p.adjoint(),
            p: split.p,
            c: split.c,
            s: split.s,
            n: split.n,
            k: split.k,
            form,
            straddle: split.straddle,
        }),
        CnForm::Similarity => {
            // Solve C Y - Y N = S, then conjugate by W = [[I, -Y], [0, I]]
            // to zero the coupling block: A = (P W) diag(C, N) (W^-1 P*).
            let y = sylvester_upper(&split.c, &split.n, &split.s)?;
            let i_r = CMat::identity(r);
            let i_s = CMat::identity(s_dim);
            let w = CMat::block2x2(&i_r, &-(&y), &CMat::zeros(s_dim, r), &i_s);
            let w_inv = CMat::block2x2(&i_r, &y, &CMat::zeros(s_dim, r), &i_s);
            let p_sim = &split.p * &w;
            let pinv_sim = &w_inv * &split.p.adjoint();
            Ok(CoreNilpotent {
                p: p_sim,
                pinv: pinv_sim,
                c: split.c,
                s: CMat::zeros(r, s_dim),
                n: split.n,
                k: split.k,
                form,
                straddle: split.straddle,
            })
        }
    }
}

/// Solve C Y - Y N = S by back-substitution, column by column. C must be
/// upper triangular and nonsingular, N upper triangular and nilpotent, so the
/// spectra are disjoint and the solution unique.
pub fn sylvester_upper(c: &CMat, n: &CMat, s: &CMat) -> Result<CMat> {
    let r = c.nrows();
    let cols = n.nrows();
    assert!(c.is_square() && n.is_square());
    assert_eq!(s.shape(), (r, cols), "sylvester rhs shape");
    let cm = c.as_dmatrix();
    let nm = n.as_dmatrix();
    let sm = s.as_dmatrix();
    let mut y = DMatrix::<C64>::zeros(r, cols);
    for j in 0..cols {
        // (C - n_jj I) y_j = s_j + sum_{i<j} n_ij y_i
        let mut rhs = DVector::<C64>::zeros(r);
        for i in 0..r {
            rhs[i] = sm[(i, j)];
        }
        for i in 0..j {
            let nij = nm[(i, j)];
            if nij != C64::new(0.0, 0.0) {
                for row in 0..r {
                    rhs[row] += nij * y[(row, i)];
                }
            }
        }
        let njj = nm[(j, j)];
        // back-substitution against upper-triangular C - njj I
        for row in (0..r).rev() {
            let mut acc = rhs[row];
            for col in row + 1..r {
                acc -= cm[(row, col)] * y[(col, j)];
            }
            let diag = cm[(row, row)] - njj;
            if diag.norm() == 0.0 {
                return Err(Error::IllConditioned { residual: f64::INFINITY });
            }
            y[(row, j)] = acc / diag;
        }
    }
    let y = CMat::from_dmatrix(y);
    let residual = (&(&(c * &y) - &(&y * n)) - s).fro_norm();
    let scale = 1.0 + s.fro_norm() + c.fro_norm() * y.fro_norm();
    if residual > 1e-9 * scale {
        return Err(Error::IllConditioned { residual });
    }
    Ok(y)
}

/// Hartwig-Spindelboeck decomposition of a nonzero square matrix.
pub fn hartwig_spindelboeck(a: &CMat, tol: &Tolerance) -> Result<HSFactors> {
    assert!(a.is_square(), "hartwig_spindelboeck requires a square matrix");
    let m = a.nrows();
    let svd = crate::svd::svd(a.as_dmatrix());
    let sv = &svd.sigma;
    let smax = sv.first().copied().unwrap_or(0.0);
    let cutoff = tol.rank_cutoff(smax, m);
    let r = sv.iter().filter(|&&x| x > cutoff).count();
    if r == 0 {
        return Err(Error::ZeroMatrix);
    }
    let u = CMat::from_dmatrix(svd.u);
    let vt = CMat::from_dmatrix(svd.v.adjoint());
    // [K L] = first r rows of V* U
    let kl = &vt * &u;
    Ok(HSFactors {
        sigma: sv.iter().take(r).copied().collect(),
        k_blk: kl.block(0, 0, r, r),
        l_blk: kl.block(0, r, r, m - r),
        u,
        r,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matcore::{self, gen_structured, GenClass, Rng};
    use crate::testkit::{feasible_shape, m2};

    fn tol() -> Tolerance {
        Tolerance::default()
    }

    fn assert_upper(t: &CMat) {
        for i in 0..t.nrows() {
            for j in 0..i {
                assert_eq!(t.get(i, j), C64::new(0.0, 0.0));
            }
        }
    }

    #[test]
    fn schur_ordered_examples() {
        let t = tol();
        // already ordered: both eigenvalues zero
        let nil = m2(0.0, 1.0, 0.0, 0.0);
        let (p, tt) = schur_zero_ordered(&nil, &t);
        let recon = &(&p * &tt) * &p.adjoint();
        assert!(recon.approx_eq_to(&nil, &t).0);
        assert_upper(&tt);

        // diag(0, 3) must reorder to diagonal (3, 0)
        let d = m2(0.0, 0.0, 0.0, 3.0);
        let (p, tt) = schur_zero_ordered(&d, &t);
        assert!((tt.get(0, 0).norm() - 3.0).abs() < 1e-12);
        assert!(tt.get(1, 1).norm() < 1e-12);
        let recon = &(&p * &tt) * &p.adjoint();
        assert!(recon.approx_eq_to(&d, &t).0);

        // eigenvalues {1, 0}
        let a = m2(1.0, 1.0, 0.0, 0.0);
        let (p, tt) = schur_zero_ordered(&a, &t);
        assert!((tt.get(0, 0).norm() - 1.0).abs() < 1e-12);
        let recon = &(&p * &tt) * &p.adjoint();
        assert!(recon.approx_eq_to(&a, &t).0);
        let unit = (&p * &p.adjoint()).approx_eq_to(&CMat::identity(2), &t);
        assert!(unit.0);
    }

    #[test]
    fn schur_ordering_on_corpus() {
        let t = tol();
        for seed in 0..25u64 {
            let mut rng = Rng::seeded(40 + seed);
            let class = GenClass::ALL[(seed % 5) as usize];
            let (m, r, k) = feasible_shape(class, &mut rng);
            let a = gen_structured(m, r, k, class, &mut rng).unwrap();
            let (p, tt) = schur_zero_ordered(&a, &t);
            let recon = &(&p * &tt) * &p.adjoint();
            let rel = (&recon - &a).fro_norm() / a.fro_norm().max(1e-30);
            assert!(rel <= 1e-10 || a.fro_norm() == 0.0, "seed {seed} rel {rel:.3e}");
            assert_upper(&tt);
            let unit = (&p * &p.adjoint()).approx_eq_to(&CMat::identity(m), &t);
            assert!(unit.0, "seed {seed}");
        }
    }

    #[test]
    fn core_nilpotent_examples() {
        let t = tol();
        let nil = m2(0.0, 1.0, 0.0, 0.0);
        let cn = core_nilpotent(&nil, &t, CnForm::Unitary).unwrap();
        assert_eq!(cn.core_dim(), 0);
        assert_eq!(cn.k, 2);
        assert!(cn.reconstruct().approx_eq_to(&nil, &t).0);

        let d = m2(2.0, 0.0, 0.0, 0.0);
        let cn = core_nilpotent(&d, &t, CnForm::Unitary).unwrap();
        assert_eq!(cn.core_dim(), 1);
        assert_eq!(cn.k, 1);
        assert!((cn.c.get(0, 0).norm() - 2.0).abs() < 1e-12);

        // similarity form of [[1,1],[0,0]]: C = [1], N = [0], residual check
        let a = m2(1.0, 1.0, 0.0, 0.0);
        let cn = core_nilpotent(&a, &t, CnForm::Similarity).unwrap();
        assert_eq!(cn.core_dim(), 1);
        assert_eq!(cn.k, 1);
        assert!(cn.s.fro_norm() == 0.0);
        let recon = cn.reconstruct();
        assert!((&recon - &a).fro_norm() <= 1e-12);
        let ident = (&cn.p * &cn.pinv).approx_eq_to(&CMat::identity(2), &t);
        assert!(ident.0);
    }

    #[test]
    fn core_nilpotent_invariants_on_corpus() {
        let t = tol();
        for seed in 0..40u64 {
            let mut rng = Rng::seeded(90 + seed);
            let class = GenClass::ALL[(seed % 5) as usize];
            let (m, r, k) = feasible_shape(class, &mut rng);
            let a = gen_structured(m, r, k, class, &mut rng).unwrap();
            for form in [CnForm::Unitary, CnForm::Similarity] {
                let cn = core_nilpotent(&a, &t, form).unwrap();
                let recon = cn.reconstruct();
                let rel = (&recon - &a).fro_norm() / a.fro_norm().max(1e-30);
                assert!(rel <= 1e-10 || a.fro_norm() == 0.0, "seed {seed} rel {rel:.3e}");
                assert_eq!(cn.k, matcore::index(&a, &t), "seed {seed}");
                // C nonsingular above the rank threshold
                if cn.core_dim() > 0 {
                    let smin = cn.c.singular_values().into_iter().fold(f64::INFINITY, f64::min);
                    assert!(smin > t.rank_cutoff(a.op_norm(), m), "seed {seed} smin {smin:.3e}");
                }
                // N strictly upper: N^k at noise level, N^{k-1} substantial
                if cn.nil_dim() > 0 {
                    let scale = (1.0 + a.op_norm()).powi(cn.k as i32);
                    let nk = matcore::mat_pow(&cn.n, cn.k);
                    assert!(nk.fro_norm() <= 1e-10 * scale, "seed {seed}");
                    if cn.k >= 2 {
                        let prev = matcore::mat_pow(&cn.n, cn.k - 1);
                        assert!(prev.fro_norm() > 1e-8 * scale, "seed {seed}");
                    }
                }
            }
        }
    }

    #[test]
    fn sylvester_examples() {
        let t = tol();
        let c = CMat::from_real_rows(&[&[2.0]]).unwrap();
        let n = CMat::from_real_rows(&[&[0.0]]).unwrap();
        let s = CMat::from_real_rows(&[&[4.0]]).unwrap();
        let y = sylvester_upper(&c, &n, &s).unwrap();
        assert!((y.get(0, 0).re - 2.0).abs() < 1e-14);

        let c = CMat::identity(2);
        let n = m2(0.0, 1.0, 0.0, 0.0);
        let s = CMat::identity(2);
        let y = sylvester_upper(&c, &n, &s).unwrap();
        let expect = m2(1.0, 1.0, 0.0, 1.0);
        assert!(y.approx_eq_to(&expect, &t).0);
    }

    #[test]
    fn sylvester_random_triangular() {
        for seed in 0..20u64 {
            let mut rng = Rng::seeded(400 + seed);
            // random upper-triangular C (4x4, diag away from zero), nilpotent N (3x3)
            let mut c = rng.gaussian_matrix(4, 4);
            for i in 0..4 {
                for j in 0..i {
                    c.set(i, j, C64::new(0.0, 0.0));
                }
                let d = c.get(i, i);
                let boosted = d + C64::new(3.0_f64.copysign(d.re), 0.0);
                c.set(i, i, boosted);
            }
            let mut n = rng.gaussian_matrix(3, 3);
            for i in 0..3 {
                for j in 0..=i {
                    n.set(i, j, C64::new(0.0, 0.0));
                }
            }
            let s = rng.gaussian_matrix(4, 3);
            let y = sylvester_upper(&c, &n, &s).unwrap();
            let resid = (&(&(&c * &y) - &(&y * &n)) - &s).fro_norm();
            assert!(resid <= 1e-11 * (1.0 + s.fro_norm()), "seed {seed} resid {resid:.3e}");
        }
    }

    #[test]
    fn hs_examples() {
        let t = tol();
        let a = m2(1.0, 1.0, 0.0, 0.0);
        let hs = hartwig_spindelboeck(&a, &t).unwrap();
        assert_eq!(hs.r, 1);
        assert!((hs.sigma[0] - std::f64::consts::SQRT_2).abs() < 1e-12);
        assert!((hs.k_blk.get(0, 0).norm() - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-12);
        assert!((hs.l_blk.get(0, 0).norm() - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-12);
        assert!(hs.reconstruct().approx_eq_to(&a, &t).0);

        let d = m2(3.0, 0.0, 0.0, 0.0);
        let hs = hartwig_spindelboeck(&d, &t).unwrap();
        assert_eq!(hs.r, 1);
        assert!((hs.sigma[0] - 3.0).abs() < 1e-12);
        assert!((hs.k_blk.get(0, 0).norm() - 1.0).abs() < 1e-12);
        assert!(hs.l_blk.get(0, 0).norm() < 1e-12);

        // unitary input: sigma = ones, L empty
        let mut rng = Rng::seeded(3);
        let u = rng.unitary(3);
        let hs = hartwig_spindelboeck(&u, &t).unwrap();
        assert_eq!(hs.r, 3);
        for s in &hs.sigma {
            assert!((s - 1.0).abs() < 1e-12);
        }
        assert_eq!(hs.l_blk.ncols(), 0);
        assert!(hs.reconstruct().approx_eq_to(&u, &t).0);

        assert!(matches!(
            hartwig_spindelboeck(&CMat::zeros(2, 2), &t),
            Err(Error::ZeroMatrix)
        ));
    }

    #[test]
    fn hs_invariants_on_corpus() {
        let t = tol();
        for seed in 0..30u64 {
            let mut rng = Rng::seeded(700 + seed);
            let class = GenClass::ALL[(seed % 5) as usize];
            let (m, r, k) = feasible_shape(class, &mut rng);
            let a = gen_structured(m, r, k, class, &mut rng).unwrap();
            if a.fro_norm() == 0.0 {
                continue;
            }
            let hs = hartwig_spindelboeck(&a, &t).unwrap();
            let rel = (&hs.reconstruct() - &a).fro_norm() / a.fro_norm();
            assert!(rel <= 1e-10, "seed {seed} rel {rel:.3e}");
            let gram = &(&hs.k_blk * &hs.k_blk.adjoint()) + &(&hs.l_blk * &hs.l_blk.adjoint());
            let dev = (&gram - &CMat::identity(hs.r)).fro_norm();
            assert!(dev <= 1e-12, "seed {seed} KK*+LL* dev {dev:.3e}");
            for w in hs.sigma.windows(2) {
                assert!(w[0] >= w[1] - 1e-14);
            }
        }
    }
}
