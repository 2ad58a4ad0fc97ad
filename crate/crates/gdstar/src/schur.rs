//! Complex Schur decomposition: Householder Hessenberg reduction followed by
//! single-shift QR iteration with Wilkinson shifts and deflation.
//!
//! nalgebra's generic Schur crawls (tens of seconds on a 6x6) when complex
//! matrices carry repeated eigenvalues, so the triangularizations here use
//! this implementation exclusively. Accuracy is certified downstream by the
//! reconstruction residual checks every caller performs.

use nalgebra::DMatrix;

use crate::matcore::C64;

fn zero() -> C64 {
    C64::new(0.0, 0.0)
}

/// Complex Givens pair (c real, s) with G = [[c, s], [-conj(s), c]] unitary
/// and G* [a, b]^T = [r, 0]^T.
fn givens(a: C64, b: C64) -> (f64, C64) {
    let norm = (a.norm_sqr() + b.norm_sqr()).sqrt();
    if norm == 0.0 || b.norm() == 0.0 {
        return (1.0, zero());
    }
    let abs_a = a.norm();
    if abs_a == 0.0 {
        return (0.0, C64::new(1.0, 0.0));
    }
    let c = abs_a / norm;
    let phase = a / abs_a;
    let s = phase * b.conj() / norm;
    (c, s)
}

/// Apply G* from the left to rows (i, j) of m over columns [from..].
fn rotate_left(m: &mut DMatrix<C64>, i: usize, j: usize, c: f64, s: C64, from: usize) {
    for col in from..m.ncols() {
        let a = m[(i, col)];
        let b = m[(j, col)];
        m[(i, col)] = a * C64::new(c, 0.0) + b * s;
        m[(j, col)] = -(a * s.conj()) + b * C64::new(c, 0.0);
    }
}

/// Apply G* from the right to columns (i, j) of m over rows [..to], where G
/// is the rotation `rotate_left` applies from the left.
fn rotate_right(m: &mut DMatrix<C64>, i: usize, j: usize, c: f64, s: C64, to: usize) {
    for row in 0..to {
        let a = m[(row, i)];
        let b = m[(row, j)];
        m[(row, i)] = a * C64::new(c, 0.0) + b * s.conj();
        m[(row, j)] = -(a * s) + b * C64::new(c, 0.0);
    }
}

/// Householder reduction to upper Hessenberg form: A = Q H Q*.
fn hessenberg(a: &DMatrix<C64>) -> (DMatrix<C64>, DMatrix<C64>) {
    let n = a.nrows();
    let mut h = a.clone();
    let mut q = DMatrix::<C64>::identity(n, n);
    for col in 0..n.saturating_sub(2) {
        // reflector zeroing h[col+2.., col]
        let tail = col + 1;
        let x_norm: f64 = (tail..n).map(|i| h[(i, col)].norm_sqr()).sum::<f64>().sqrt();
        if x_norm == 0.0 {
            continue;
        }
        let x0 = h[(tail, col)];
        let phase = if x0.norm() > 0.0 { x0 / x0.norm() } else { C64::new(1.0, 0.0) };
        let alpha = -phase * x_norm;
        let mut v: Vec<C64> = (tail..n).map(|i| h[(i, col)]).collect();
        v[0] -= alpha;
        let v_norm: f64 = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if v_norm == 0.0 {
            continue;
        }
        for z in &mut v {
            *z /= C64::new(v_norm, 0.0);
        }
        // H <- (I - 2 v v*) H
        for c2 in col..n {
            let dot: C64 = (0..v.len()).map(|i| v[i].conj() * h[(tail + i, c2)]).sum();
            for i in 0..v.len() {
                let val = h[(tail + i, c2)] - v[i] * dot * C64::new(2.0, 0.0);
                h[(tail + i, c2)] = val;
            }
        }
        // H <- H (I - 2 v v*)
        for r2 in 0..n {
            let dot: C64 = (0..v.len()).map(|i| h[(r2, tail + i)] * v[i]).sum();
            for i in 0..v.len() {
                let val = h[(r2, tail + i)] - dot * v[i].conj() * C64::new(2.0, 0.0);
                h[(r2, tail + i)] = val;
            }
        }
        // Q <- Q (I - 2 v v*)
        for r2 in 0..n {
            let dot: C64 = (0..v.len()).map(|i| q[(r2, tail + i)] * v[i]).sum();
            for i in 0..v.len() {
                let val = q[(r2, tail + i)] - dot * v[i].conj() * C64::new(2.0, 0.0);
                q[(r2, tail + i)] = val;
            }
        }
        for i in tail + 1..n {
            h[(i, col)] = zero();
        }
        h[(tail, col)] = alpha;
    }
    (q, h)
}

/// Eigenvalue of [[a, b], [c, d]] closest to d.
fn wilkinson_shift(a: C64, b: C64, c: C64, d: C64) -> C64 {
    let tr = a + d;
    let det = a * d - b * c;
    let disc = (tr * tr - det * C64::new(4.0, 0.0)).sqrt();
    let l1 = (tr + disc) * C64::new(0.5, 0.0);
    let l2 = (tr - disc) * C64::new(0.5, 0.0);
    if (l1 - d).norm() <= (l2 - d).norm() {
        l1
    } else {
        l2
    }
}

/// Schur decomposition A = Q T Q* with T upper triangular.
pub(crate) fn schur(a: &DMatrix<C64>) -> (DMatrix<C64>, DMatrix<C64>) {
    let n = a.nrows();
    assert_eq!(n, a.ncols());
    if n == 0 {
        return (DMatrix::identity(0, 0), a.clone());
    }
    if n == 1 {
        return (DMatrix::identity(1, 1), a.clone());
    }
    let (mut q, mut t) = hessenberg(a);
    let eps = f64::EPSILON;
    let mut hi = n - 1;
    let mut stagnation = 0usize;
    let mut total = 0usize;
    let max_total = 300 * n;
    while hi > 0 {
        // deflate any negligible subdiagonal inside the active window
        let mut lo = hi;
        while lo > 0 {
            let gate = eps * (t[(lo - 1, lo - 1)].norm() + t[(lo, lo)].norm()) + f64::MIN_POSITIVE;
            if t[(lo, lo - 1)].norm() <= gate {
                t[(lo, lo - 1)] = zero();
                break;
            }
            lo -= 1;
        }
        if t[(hi, hi - 1)] == zero() {
            hi -= 1;
            stagnation = 0;
            continue;
        }
        total += 1;
        stagnation += 1;
        if total > max_total {
            // force deflation of the smallest remaining subdiagonal; the
            // reconstruction checks downstream surface any damage
            let mut best = hi;
            let mut best_mag = f64::INFINITY;
            for i in lo..=hi {
                if i > 0 {
                    let mag = t[(i, i - 1)].norm();
                    if mag < best_mag {
                        best_mag = mag;
                        best = i;
                    }
                }
            }
            t[(best, best - 1)] = zero();
            continue;
        }
        let mu = if stagnation % 24 == 0 {
            // exceptional shift breaks symmetric stalls
            t[(hi, hi)] + C64::new(0.75 * t[(hi, hi - 1)].norm(), 0.0)
        } else {
            wilkinson_shift(
                t[(hi - 1, hi - 1)],
                t[(hi - 1, hi)],
                t[(hi, hi - 1)],
                t[(hi, hi)],
            )
        };
        // explicit single-shift QR sweep on the active window [lo..=hi]
        let mut rotations: Vec<(usize, f64, C64)> = Vec::with_capacity(hi - lo);
        for i in lo..=hi {
            t[(i, i)] -= mu;
        }
        for i in lo..hi {
            let (c, s) = givens(t[(i, i)], t[(i + 1, i)]);
            rotate_left(&mut t, i, i + 1, c, s, i);
            t[(i + 1, i)] = zero();
            rotations.push((i, c, s));
        }
        for &(i, c, s) in &rotations {
            rotate_right(&mut t, i, i + 1, c, s, (i + 2).min(n));
            rotate_right(&mut q, i, i + 1, c, s, n);
        }
        for i in lo..=hi {
            t[(i, i)] += mu;
        }
    }
    // clean the strictly lower part
    for i in 0..n {
        for j in 0..i {
            t[(i, j)] = zero();
        }
    }
    (q, t)
}
