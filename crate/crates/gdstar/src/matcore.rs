//! Complex dense matrices, numerical policies, and structured random
//! generation for the fuzz corpus.
//!
//! `CMat` is the universal value type of the crate: a dense `m x n` complex
//! matrix with finite entries. Rank, index, and comparison decisions all go
//! through `Tolerance` so every suite shares one residual policy.

use nalgebra::{DMatrix, DVector};
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha12Rng;
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::Result;

pub type C64 = nalgebra::Complex<f64>;

/// Dense complex matrix with explicit row/column counts, row-major semantics
/// on construction, and finite entries.
#[derive(Debug, Clone, PartialEq)]
pub struct CMat {
    m: DMatrix<C64>,
}

impl CMat {
    pub fn zeros(rows: usize, cols: usize) -> CMat {
        CMat {
            m: DMatrix::zeros(rows, cols),
        }
    }

    pub fn identity(n: usize) -> CMat {
        CMat {
            m: DMatrix::identity(n, n),
        }
    }

    /// Row-major construction with the finiteness invariant enforced.
    pub fn from_row_major(rows: usize, cols: usize, data: Vec<C64>) -> Result<CMat> {
        if data.len() != rows * cols {
            return Err(Error::ShapeMismatch {
                expected: (rows, cols),
                got: (data.len(), 1),
            });
        }
        if data.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(CMat {
            m: DMatrix::from_row_slice(rows, cols, &data),
        })
    }

    pub fn from_rows(rows: &[Vec<C64>]) -> Result<CMat> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::ShapeMismatch {
                expected: (r, c),
                got: (r, 0),
            });
        }
        CMat::from_row_major(r, c, rows.concat())
    }

    /// Real entries, row-major.
    pub fn from_real_rows(rows: &[&[f64]]) -> Result<CMat> {
        let data: Vec<Vec<C64>> = rows
            .iter()
            .map(|row| row.iter().map(|&x| C64::new(x, 0.0)).collect())
            .collect();
        CMat::from_rows(&data)
    }

    /// Column vector from real entries.
    pub fn col_from_real(entries: &[f64]) -> CMat {
        CMat {
            m: DMatrix::from_iterator(entries.len(), 1, entries.iter().map(|&x| C64::new(x, 0.0))),
        }
    }

    pub(crate) fn from_dmatrix(m: DMatrix<C64>) -> CMat {
        debug_assert!(m.iter().all(|z| z.re.is_finite() && z.im.is_finite()));
        CMat { m }
    }

    pub(crate) fn as_dmatrix(&self) -> &DMatrix<C64> {
        &self.m
    }

    pub fn nrows(&self) -> usize {
        self.m.nrows()
    }

    pub fn ncols(&self) -> usize {
        self.m.ncols()
    }

    pub fn is_square(&self) -> bool {
        self.nrows() == self.ncols()
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.nrows(), self.ncols())
    }

    pub fn get(&self, i: usize, j: usize) -> C64 {
        self.m[(i, j)]
    }

    pub fn set(&mut self, i: usize, j: usize, value: C64) {
        self.m[(i, j)] = value;
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> CMat {
        CMat { m: self.m.adjoint() }
    }

    pub fn transpose(&self) -> CMat {
        CMat {
            m: self.m.transpose(),
        }
    }

    pub fn scale(&self, factor: C64) -> CMat {
        CMat {
            m: self.m.map(|z| z * factor),
        }
    }

    pub fn fro_norm(&self) -> f64 {
        self.m.norm()
    }

    /// Operator 2-norm (largest singular value).
    pub fn op_norm(&self) -> f64 {
        crate::svd::singular_values(&self.m)
            .first()
            .copied()
            .unwrap_or(0.0)
    }

    /// Singular values, nonincreasing.
    pub fn singular_values(&self) -> Vec<f64> {
        crate::svd::singular_values(&self.m)
    }

    /// Contiguous sub-block starting at (i0, j0) of size ni x nj.
    pub fn block(&self, i0: usize, j0: usize, ni: usize, nj: usize) -> CMat {
        CMat {
            m: self.m.view((i0, j0), (ni, nj)).into_owned(),
        }
    }

    /// Assemble [[a, b], [c, d]]; block heights/widths must agree.
    pub fn block2x2(a: &CMat, b: &CMat, c: &CMat, d: &CMat) -> CMat {
        let r0 = a.nrows();
        let r1 = c.nrows();
        let c0 = a.ncols();
        let c1 = b.ncols();
        assert_eq!(b.nrows(), r0);
        assert_eq!(d.nrows(), r1);
        assert_eq!(c.ncols(), c0);
        assert_eq!(d.ncols(), c1);
        let mut m = DMatrix::zeros(r0 + r1, c0 + c1);
        m.view_mut((0, 0), (r0, c0)).copy_from(&a.m);
        m.view_mut((0, c0), (r0, c1)).copy_from(&b.m);
        m.view_mut((r0, 0), (r1, c0)).copy_from(&c.m);
        m.view_mut((r0, c0), (r1, c1)).copy_from(&d.m);
        CMat { m }
    }

    /// Residual and verdict of the crate-wide comparison policy:
    /// pass iff ||A-B||_F <= atol + rtol * (||A||_F + ||B||_F).
    /// Panics on shape mismatch; use `matcore::approx_eq` at API boundaries.
    pub fn approx_eq_to(&self, other: &CMat, tol: &Tolerance) -> (bool, f64) {
        assert_eq!(self.shape(), other.shape(), "approx_eq shape mismatch");
        let residual = (&self.m - &other.m).norm();
        let bound = tol.residual_atol + tol.residual_rtol * (self.m.norm() + other.m.norm());
        (residual <= bound, residual)
    }

    pub fn is_zero_to(&self, tol: &Tolerance) -> bool {
        self.fro_norm() <= tol.residual_atol
    }
}

impl std::ops::Add for &CMat {
    type Output = CMat;
    fn add(self, rhs: &CMat) -> CMat {
        CMat { m: &self.m + &rhs.m }
    }
}

impl std::ops::Sub for &CMat {
    type Output = CMat;
    fn sub(self, rhs: &CMat) -> CMat {
        CMat { m: &self.m - &rhs.m }
    }
}

impl std::ops::Mul for &CMat {
    type Output = CMat;
    fn mul(self, rhs: &CMat) -> CMat {
        CMat { m: &self.m * &rhs.m }
    }
}

impl std::ops::Neg for &CMat {
    type Output = CMat;
    fn neg(self) -> CMat {
        CMat { m: -&self.m }
    }
}

/// Rank threshold, eigenvalue-zero threshold, and residual comparison policy.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerance {
    pub rank_rtol: f64,
    pub residual_rtol: f64,
    pub residual_atol: f64,
    pub eig_zero_rtol: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance {
            rank_rtol: 1e-10,
            residual_rtol: 1e-9,
            residual_atol: 1e-12,
            eig_zero_rtol: 1e-10,
        }
    }
}

impl Tolerance {
    pub fn validate(&self) -> Result<()> {
        let fields = [
            self.rank_rtol,
            self.residual_rtol,
            self.residual_atol,
            self.eig_zero_rtol,
        ];
        if fields.iter().all(|&t| t > 0.0 && t < 1.0) {
            Ok(())
        } else {
            Err(Error::BadTolerance)
        }
    }

    /// Singular-value cutoff for a matrix with largest singular value `sigma_max`.
    pub fn rank_cutoff(&self, sigma_max: f64, max_dim: usize) -> f64 {
        self.rank_rtol * sigma_max * max_dim as f64
    }
}

/// Structural classification flags of a square matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureFlags {
    pub hermitian: bool,
    pub ep: bool,
    pub partial_isometry: bool,
    pub normal: bool,
    pub nilpotent: bool,
    pub nonsingular: bool,
    pub index: usize,
}

/// Matrix class requested from the structured generator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GenClass {
    Generic,
    Ep,
    PartialIsometry,
    Nilpotent,
    HermitianPsd,
}

impl GenClass {
    pub const ALL: [GenClass; 5] = [
        GenClass::Generic,
        GenClass::Ep,
        GenClass::PartialIsometry,
        GenClass::Nilpotent,
        GenClass::HermitianPsd,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            GenClass::Generic => "generic",
            GenClass::Ep => "ep",
            GenClass::PartialIsometry => "partial_isometry",
            GenClass::Nilpotent => "nilpotent",
            GenClass::HermitianPsd => "hermitian_psd",
        }
    }
}

/// Deterministic generator: ChaCha12 keyed by a 64-bit seed. The same seed
/// reproduces the same matrix stream bit for bit.
#[derive(Debug, Clone)]
pub struct Rng {
    seed: u64,
    chacha: ChaCha12Rng,
}

impl Rng {
    pub fn seeded(seed: u64) -> Rng {
        Rng {
            seed,
            chacha: ChaCha12Rng::seed_from_u64(seed),
        }
    }

    /// Independent stream for (master seed, lane); used by the fuzz harness
    /// so iteration i is reproducible in isolation.
    pub fn derived(master: u64, lane: u64) -> Rng {
        // splitmix64 finalizer over the pair
        let mut z = master ^ lane.wrapping_mul(0x9e37_79b9_7f4a_7c15);
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        Rng::seeded(z ^ (z >> 31))
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn next_u64(&mut self) -> u64 {
        self.chacha.next_u64()
    }

    /// Uniform in [0, 1).
    pub fn uniform(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    pub fn uniform_in(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.uniform()
    }

    pub fn usize_in(&mut self, lo: usize, hi_inclusive: usize) -> usize {
        debug_assert!(hi_inclusive >= lo);
        lo + (self.next_u64() % (hi_inclusive - lo + 1) as u64) as usize
    }

    /// Standard normal via Box-Muller.
    pub fn standard_normal(&mut self) -> f64 {
        let u1 = (1.0 - self.uniform()).max(f64::MIN_POSITIVE);
        let u2 = self.uniform();
        (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos()
    }

    /// Standard complex Gaussian (unit expected square norm).
    pub fn complex_gaussian(&mut self) -> C64 {
        C64::new(
            self.standard_normal() * std::f64::consts::FRAC_1_SQRT_2,
            self.standard_normal() * std::f64::consts::FRAC_1_SQRT_2,
        )
    }

    pub fn gaussian_matrix(&mut self, rows: usize, cols: usize) -> CMat {
        let data: Vec<C64> = (0..rows * cols).map(|_| self.complex_gaussian()).collect();
        CMat::from_dmatrix(DMatrix::from_row_slice(rows, cols, &data))
    }

    /// Haar-like random unitary: QR of a complex Ginibre matrix with the
    /// phases of R's diagonal folded into Q.
    pub fn unitary(&mut self, n: usize) -> CMat {
        if n == 0 {
            return CMat::zeros(0, 0);
        }
        let g = self.gaussian_matrix(n, n);
        let qr = g.m.qr();
        let r = qr.r();
        let mut q = qr.q();
        for j in 0..n {
            let d = r[(j, j)];
            let phase = if d.norm() > 0.0 { d / d.norm() } else { C64::new(1.0, 0.0) };
            for i in 0..n {
                q[(i, j)] *= phase;
            }
        }
        CMat::from_dmatrix(q)
    }
}

/// Numerical rank: singular values above `rank_rtol * sigma_max * max(m, n)`.
pub fn rank(a: &CMat, tol: &Tolerance) -> usize {
    if a.nrows() == 0 || a.ncols() == 0 {
        return 0;
    }
    let sv = a.singular_values();
    let sigma_max = sv.iter().copied().fold(0.0, f64::max);
    let cutoff = tol.rank_cutoff(sigma_max, a.nrows().max(a.ncols()));
    sv.iter().filter(|&&s| s > cutoff).count()
}

/// Index of a square matrix, computed from the nilpotent block of the ordered
/// Schur split (see `decomp`). The zero matrix has index 1 by convention.
pub fn index(a: &CMat, tol: &Tolerance) -> usize {
    assert!(a.is_square(), "index requires a square matrix");
    crate::decomp::index_via_schur(a, tol)
}

/// Rank-sequence definition of the index, kept as an independent oracle:
/// smallest k >= 0 with rank(A^k) = rank(A^{k+1}). Rank cutoffs for A^j are
/// scaled by ||A||_2^j; the sigma_max-relative rule would misread the
/// rounding noise of an exactly-vanishing power as full rank.
pub fn index_rank_oracle(a: &CMat, tol: &Tolerance) -> usize {
    assert!(a.is_square(), "index requires a square matrix");
    let n = a.nrows();
    let anorm = a.op_norm();
    let mut power = CMat::identity(n);
    let mut prev_rank = n;
    for k in 0..=n {
        let next = &power * a;
        let next_rank =
            crate::decomp::rank_with_scale(&next, anorm.powi(k as i32 + 1), tol);
        if next_rank == prev_rank {
            return k;
        }
        power = next;
        prev_rank = next_rank;
    }
    n
}

/// A^p by repeated multiplication; A^0 is the identity.
pub fn mat_pow(a: &CMat, p: usize) -> CMat {
    assert!(a.is_square(), "mat_pow requires a square matrix");
    let mut out = CMat::identity(a.nrows());
    for _ in 0..p {
        out = &out * a;
    }
    out
}

/// Shape-checked comparison under the residual policy.
pub fn approx_eq(a: &CMat, b: &CMat, tol: &Tolerance) -> Result<(bool, f64)> {
    if a.shape() != b.shape() {
        return Err(Error::ShapeMismatch {
            expected: a.shape(),
            got: b.shape(),
        });
    }
    Ok(a.approx_eq_to(b, tol))
}

/// Structural classification of a square matrix.
pub fn classify(a: &CMat, tol: &Tolerance) -> StructureFlags {
    assert!(a.is_square(), "classify requires a square matrix");
    let n = a.nrows();
    let adj = a.adjoint();
    let pinv = crate::geninv::moore_penrose(a, tol);
    let hermitian = a.approx_eq_to(&adj, tol).0;
    let ep_product = (a * &pinv).approx_eq_to(&(&pinv * a), tol).0;
    let nonsingular = rank(a, tol) == n;
    let ep = ep_product || hermitian || nonsingular;
    let partial_isometry = pinv.approx_eq_to(&adj, tol).0;
    let normal = (a * &adj).approx_eq_to(&(&adj * a), tol).0;
    let nilpotent = {
        let p = mat_pow(a, n);
        let scale = a.fro_norm().powi(n as i32);
        p.fro_norm() <= (tol.eig_zero_rtol * scale).max(tol.residual_atol)
    };
    StructureFlags {
        hermitian,
        ep,
        partial_isometry,
        normal,
        nilpotent,
        nonsingular,
        index: index(a, tol),
    }
}

/// Nilpotent single-chain block of size `dim` and nilpotency degree exactly
/// `degree`: random nonzero entries on the leading superdiagonal chain.
fn jordan_chain(dim: usize, degree: usize, rng: &mut Rng) -> CMat {
    assert!(degree >= 1 && degree <= dim.max(1));
    let mut n = CMat::zeros(dim, dim);
    for i in 0..degree.saturating_sub(1) {
        let mag = rng.uniform_in(0.5, 2.0);
        let phase = rng.uniform_in(0.0, 2.0 * std::f64::consts::PI);
        n.set(i, i + 1, C64::new(mag * phase.cos(), mag * phase.sin()));
    }
    n
}

/// Well-conditioned r x r core: random unitaries around singular values in
/// [0.9, 4], so the condition number stays at desk scale and powers keep a
/// wide margin over rank cutoffs.
fn conditioned_core(r: usize, rng: &mut Rng) -> CMat {
    if r == 0 {
        return CMat::zeros(0, 0);
    }
    let u = rng.unitary(r);
    let v = rng.unitary(r);
    let d = DMatrix::from_diagonal(&DVector::from_iterator(
        r,
        (0..r).map(|_| C64::new(rng.uniform_in(0.9, 4.0), 0.0)),
    ));
    &(&u * &CMat::from_dmatrix(d)) * &v.adjoint()
}

/// Structured random matrix: P [[C, S], [0, N]] P* with Haar-like unitary P,
/// well-conditioned core C of size `r`, and nilpotent N of degree exactly `k`.
/// Class variants reshape the blocks as documented on `GenClass`.
pub fn gen_structured(m: usize, r: usize, k: usize, class: GenClass, rng: &mut Rng) -> Result<CMat> {
    if m == 0 {
        return Err(Error::Infeasible("matrix size must be positive".into()));
    }
    if r > m {
        return Err(Error::Infeasible(format!("rank {r} exceeds size {m}")));
    }
    if r == m && k != 0 {
        return Err(Error::Infeasible("full-rank matrix has index 0".into()));
    }
    if r < m && (k == 0 || k > m - r) {
        return Err(Error::Infeasible(format!(
            "index {k} not realizable with rank {r} in size {m} (need 1 <= k <= {})",
            m - r
        )));
    }
    match class {
        GenClass::Nilpotent if r != 0 => {
            return Err(Error::Infeasible("nilpotent class requires rank 0".into()))
        }
        GenClass::Ep | GenClass::HermitianPsd if k > 1 => {
            return Err(Error::Infeasible(format!(
                "{} class has index at most 1",
                class.name()
            )))
        }
        _ => {}
    }

    let s_dim = m - r;
    let p = rng.unitary(m);
    let core = match class {
        GenClass::HermitianPsd => {
            let d = DMatrix::from_diagonal(&DVector::from_iterator(
                r,
                (0..r).map(|_| C64::new(rng.uniform_in(0.5, 5.0), 0.0)),
            ));
            CMat::from_dmatrix(d)
        }
        _ => conditioned_core(r, rng),
    };

    let a = match class {
        GenClass::Generic | GenClass::PartialIsometry => {
            let s = rng.gaussian_matrix(r, s_dim);
            let n = jordan_chain(s_dim, k.max(1), rng);
            let inner = CMat::block2x2(&core, &s, &CMat::zeros(s_dim, r), &n);
            &(&p * &inner) * &p.adjoint()
        }
        GenClass::Ep | GenClass::HermitianPsd => {
            let inner = CMat::block2x2(
                &core,
                &CMat::zeros(r, s_dim),
                &CMat::zeros(s_dim, r),
                &CMat::zeros(s_dim, s_dim),
            );
            &(&p * &inner) * &p.adjoint()
        }
        GenClass::Nilpotent => {
            let n = jordan_chain(m, k, rng);
            &(&p * &n) * &p.adjoint()
        }
    };

    if class == GenClass::PartialIsometry {
        // project nonzero singular values to one
        let tol = Tolerance::default();
        let svd = crate::svd::svd(a.as_dmatrix());
        let smax = svd.sigma.first().copied().unwrap_or(0.0);
        let cutoff = tol.rank_cutoff(smax, m);
        let mut d = DMatrix::<C64>::zeros(m, m);
        for (i, &s) in svd.sigma.iter().enumerate() {
            if s > cutoff {
                d[(i, i)] = C64::new(1.0, 0.0);
            }
        }
        return Ok(CMat::from_dmatrix(&svd.u * d * svd.v.adjoint()));
    }
    Ok(a)
}
