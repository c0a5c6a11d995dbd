//! Real QZ iteration (Moler–Stewart) for eigenvalues of `A v = λ B v`.
//!
//! `B` is first triangularised by QR, then `(A, B)` is brought to
//! Hessenberg-triangular form with Givens rotations. The double-shift sweep
//! chases a 3×1 bulge down the active window. A zero on the diagonal of `B`
//! is chased to the bottom of the window, where it splits off as an infinite
//! eigenvalue. Only eigenvalues are computed, so every transformation is
//! restricted to the active diagonal window.

use super::{DensePencil, LuFactors};
use crate::error::{Error, Result};
use nalgebra::{Complex, DMatrix, DVector};

/// One eigenvalue as the ratio `alpha / beta`; `beta == 0` marks infinity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PencilEigenvalue {
    pub alpha: Complex<f64>,
    pub beta: f64,
}

impl PencilEigenvalue {
    pub fn is_infinite(&self) -> bool {
        self.beta == 0.0
    }

    /// `alpha / beta`, or `+∞ + 0i` as the sentinel for infinite eigenvalues.
    pub fn value(&self) -> Complex<f64> {
        if self.is_infinite() {
            Complex::new(f64::INFINITY, 0.0)
        } else {
            self.alpha / self.beta
        }
    }
}

struct Reflector {
    v: [f64; 3],
    len: usize,
    tau: f64,
}

impl Reflector {
    /// `H x = β e₁`.
    fn first(x: &[f64]) -> Self {
        let len = x.len();
        let mut v = [0.0; 3];
        v[..len].copy_from_slice(x);
        let tail: f64 = x[1..].iter().map(|t| t * t).sum();
        if tail == 0.0 {
            return Self { v, len, tau: 0.0 };
        }
        let alpha = x[0];
        let norm = (alpha * alpha + tail).sqrt();
        let beta = if alpha >= 0.0 { -norm } else { norm };
        let scale = 1.0 / (alpha - beta);
        for t in v[1..len].iter_mut() {
            *t *= scale;
        }
        v[0] = 1.0;
        Self {
            v,
            len,
            tau: (beta - alpha) / beta,
        }
    }

    /// `xᵀ H = β e_lastᵀ`.
    fn last(x: &[f64]) -> Self {
        let mut rev = [0.0; 3];
        let len = x.len();
        for (i, t) in x.iter().enumerate() {
            rev[len - 1 - i] = *t;
        }
        let r = Self::first(&rev[..len]);
        let mut v = [0.0; 3];
        for i in 0..len {
            v[i] = r.v[len - 1 - i];
        }
        Self { v, len, tau: r.tau }
    }

    fn apply_left(&self, m: &mut DMatrix<f64>, r0: usize, cols: std::ops::RangeInclusive<usize>) {
        if self.tau == 0.0 {
            return;
        }
        for c in cols {
            let mut s = 0.0;
            for i in 0..self.len {
                s += self.v[i] * m[(r0 + i, c)];
            }
            s *= self.tau;
            for i in 0..self.len {
                m[(r0 + i, c)] -= s * self.v[i];
            }
        }
    }

    fn apply_right(&self, m: &mut DMatrix<f64>, c0: usize, rows: std::ops::RangeInclusive<usize>) {
        if self.tau == 0.0 {
            return;
        }
        for r in rows {
            let mut s = 0.0;
            for i in 0..self.len {
                s += self.v[i] * m[(r, c0 + i)];
            }
            s *= self.tau;
            for i in 0..self.len {
                m[(r, c0 + i)] -= s * self.v[i];
            }
        }
    }
}

/// `(c, s)` with `c·x + s·y = r`, `−s·x + c·y = 0`.
fn givens(x: f64, y: f64) -> Option<(f64, f64)> {
    let r = x.hypot(y);
    if r == 0.0 {
        None
    } else {
        Some((x / r, y / r))
    }
}

fn rot_rows(m: &mut DMatrix<f64>, p: usize, q: usize, c: f64, s: f64, cols: std::ops::RangeInclusive<usize>) {
    for j in cols {
        let (t1, t2) = (m[(p, j)], m[(q, j)]);
        m[(p, j)] = c * t1 + s * t2;
        m[(q, j)] = -s * t1 + c * t2;
    }
}

/// Column rotation acting on columns `p < q`; with `c = y/r, s = x/r` it
/// zeroes entry `x` of a row whose `(p, q)` entries are `(x, y)`.
fn rot_cols(m: &mut DMatrix<f64>, p: usize, q: usize, c: f64, s: f64, rows: std::ops::RangeInclusive<usize>) {
    for i in rows {
        let (t1, t2) = (m[(i, p)], m[(i, q)]);
        m[(i, p)] = c * t1 - s * t2;
        m[(i, q)] = s * t1 + c * t2;
    }
}

fn zero_col_entry(x: f64, y: f64) -> Option<(f64, f64)> {
    let r = x.hypot(y);
    if r == 0.0 {
        None
    } else {
        Some((y / r, x / r))
    }
}

/// All eigenvalues of the pencil, infinite ones included.
pub fn general_eig(p: &DensePencil) -> Result<Vec<PencilEigenvalue>> {
    let n = p.dim();
    if n == 0 {
        return Ok(Vec::new());
    }
    let anorm = p.a.norm();
    let bnorm = p.b.norm();
    if bnorm == 0.0 {
        if anorm == 0.0 {
            return Err(Error::SingularPencil);
        }
        // every eigenvalue is infinite unless A is singular too
        let rcond = LuFactors::new(&p.a).map(|lu| lu.rcond()).unwrap_or(0.0);
        if rcond < f64::EPSILON {
            return Err(Error::SingularPencil);
        }
        return Ok(vec![
            PencilEigenvalue {
                alpha: Complex::new(1.0, 0.0),
                beta: 0.0
            };
            n
        ]);
    }

    let qr = p.b.clone().qr();
    let mut a = qr.q().transpose() * &p.a;
    let mut b = qr.r();

    hessenberg_triangular(&mut a, &mut b);
    let btol = f64::EPSILON * bnorm;
    let atol = f64::EPSILON * anorm.max(f64::MIN_POSITIVE);
    qz_sweeps(&mut a, &mut b, btol)?;
    extract(&a, &b, atol, btol)
}

fn hessenberg_triangular(a: &mut DMatrix<f64>, b: &mut DMatrix<f64>) {
    let n = a.nrows();
    if n < 3 {
        return;
    }
    for j in 0..n - 2 {
        for i in (j + 2..n).rev() {
            if let Some((c, s)) = givens(a[(i - 1, j)], a[(i, j)]) {
                rot_rows(a, i - 1, i, c, s, j..=n - 1);
                rot_rows(b, i - 1, i, c, s, i - 1..=n - 1);
                a[(i, j)] = 0.0;
            }
            if let Some((c, s)) = zero_col_entry(b[(i, i - 1)], b[(i, i)]) {
                rot_cols(b, i - 1, i, c, s, 0..=i);
                rot_cols(a, i - 1, i, c, s, 0..=n - 1);
                b[(i, i - 1)] = 0.0;
            }
        }
    }
}

fn negligible(sub: f64, d1: f64, d2: f64, fallback: f64) -> bool {
    let scale = d1.abs() + d2.abs();
    let scale = if scale == 0.0 { fallback } else { scale };
    sub.abs() <= f64::EPSILON * scale
}

fn qz_sweeps(a: &mut DMatrix<f64>, b: &mut DMatrix<f64>, btol: f64) -> Result<()> {
    let n = a.nrows();
    let anorm = a.norm();
    let max_sweeps = 40 * n.max(10);
    let mut sweeps = 0;
    let mut stall = 0;
    let mut hi = n - 1;
    while hi > 0 {
        let mut lo = 0;
        for k in (1..=hi).rev() {
            if negligible(a[(k, k - 1)], a[(k - 1, k - 1)], a[(k, k)], anorm) {
                a[(k, k - 1)] = 0.0;
                lo = k;
                break;
            }
        }
        if lo == hi {
            hi -= 1;
            stall = 0;
            continue;
        }
        if let Some(k) = (lo..=hi).find(|&k| b[(k, k)].abs() <= btol) {
            chase_zero(a, b, k, lo, hi);
            stall = 0;
            continue;
        }
        if lo + 1 == hi {
            if hi < 2 {
                break;
            }
            hi -= 2;
            stall = 0;
            continue;
        }
        sweeps += 1;
        stall += 1;
        if sweeps > max_sweeps {
            return Err(Error::NoConvergence(sweeps));
        }
        double_shift(a, b, lo, hi, stall % 10 == 0);
    }
    Ok(())
}

/// Moves a zero at `b[k, k]` to `b[hi, hi]` and splits it off.
fn chase_zero(a: &mut DMatrix<f64>, b: &mut DMatrix<f64>, k: usize, lo: usize, hi: usize) {
    b[(k, k)] = 0.0;
    for j in k..hi {
        if let Some((c, s)) = givens(b[(j, j + 1)], b[(j + 1, j + 1)]) {
            rot_rows(b, j, j + 1, c, s, j..=hi);
            rot_rows(a, j, j + 1, c, s, j.saturating_sub(1).max(lo)..=hi);
        }
        b[(j + 1, j + 1)] = 0.0;
        if j > lo {
            if let Some((c, s)) = zero_col_entry(a[(j + 1, j - 1)], a[(j + 1, j)]) {
                rot_cols(a, j - 1, j, c, s, lo..=hi);
                rot_cols(b, j - 1, j, c, s, lo..=j);
            }
            a[(j + 1, j - 1)] = 0.0;
        }
    }
    if let Some((c, s)) = zero_col_entry(a[(hi, hi - 1)], a[(hi, hi)]) {
        rot_cols(a, hi - 1, hi, c, s, lo..=hi);
        rot_cols(b, hi - 1, hi, c, s, lo..=hi);
    }
    a[(hi, hi - 1)] = 0.0;
    b[(hi, hi - 1)] = 0.0;
}

fn double_shift(a: &mut DMatrix<f64>, b: &mut DMatrix<f64>, lo: usize, hi: usize, exceptional: bool) {
    let (i, j) = (hi - 1, hi);
    let (s, p) = if exceptional {
        let w = (a[(j, i)] / b[(i, i)]).abs() + (a[(i, i - 1)] / b[(i - 1, i - 1)]).abs();
        let shift = a[(j, j)] / b[(j, j)] + 0.75 * w;
        (2.0 * shift, shift * shift)
    } else {
        let (tii, tij, tjj) = (b[(i, i)], b[(i, j)], b[(j, j)]);
        let det = tii * tjj;
        (
            (a[(i, i)] * tjj + a[(j, j)] * tii - a[(j, i)] * tij) / det,
            (a[(i, i)] * a[(j, j)] - a[(i, j)] * a[(j, i)]) / det,
        )
    };

    // first column of M² − sM + pI with M = A B⁻¹
    let x0 = a[(lo, lo)] / b[(lo, lo)];
    let x1 = a[(lo + 1, lo)] / b[(lo, lo)];
    let y1 = x1 / b[(lo + 1, lo + 1)];
    let y0 = (x0 - b[(lo, lo + 1)] * y1) / b[(lo, lo)];
    let z0 = a[(lo, lo)] * y0 + a[(lo, lo + 1)] * y1;
    let z1 = a[(lo + 1, lo)] * y0 + a[(lo + 1, lo + 1)] * y1;
    let z2 = a[(lo + 2, lo + 1)] * y1;
    let (mut x, mut y, mut z) = (z0 - s * x0 + p, z1 - s * x1, z2);

    for k in lo..=hi - 2 {
        let cmin = if k > lo { k - 1 } else { lo };
        let q = Reflector::first(&[x, y, z]);
        q.apply_left(a, k, cmin..=hi);
        q.apply_left(b, k, cmin..=hi);
        if k > lo {
            a[(k + 1, k - 1)] = 0.0;
            a[(k + 2, k - 1)] = 0.0;
        }

        let rmax = (k + 3).min(hi);
        let z1 = Reflector::last(&[b[(k + 2, k)], b[(k + 2, k + 1)], b[(k + 2, k + 2)]]);
        z1.apply_right(a, k, lo..=rmax);
        z1.apply_right(b, k, lo..=rmax);
        b[(k + 2, k)] = 0.0;
        b[(k + 2, k + 1)] = 0.0;

        let z2 = Reflector::last(&[b[(k + 1, k)], b[(k + 1, k + 1)]]);
        z2.apply_right(a, k, lo..=rmax);
        z2.apply_right(b, k, lo..=rmax);
        b[(k + 1, k)] = 0.0;

        x = a[(k + 1, k)];
        y = a[(k + 2, k)];
        z = if k + 3 <= hi { a[(k + 3, k)] } else { 0.0 };
    }

    let k = hi - 1;
    let cmin = if k > lo { k - 1 } else { lo };
    let q = Reflector::first(&[x, y]);
    q.apply_left(a, k, cmin..=hi);
    q.apply_left(b, k, cmin..=hi);
    if k > lo {
        a[(k + 1, k - 1)] = 0.0;
    }
    let z = Reflector::last(&[b[(hi, hi - 1)], b[(hi, hi)]]);
    z.apply_right(a, hi - 1, lo..=hi);
    z.apply_right(b, hi - 1, lo..=hi);
    b[(hi, hi - 1)] = 0.0;
}

fn extract(a: &DMatrix<f64>, b: &DMatrix<f64>, atol: f64, btol: f64) -> Result<Vec<PencilEigenvalue>> {
    let n = a.nrows();
    let mut out = Vec::with_capacity(n);
    let finite = |v: Complex<f64>| PencilEigenvalue { alpha: v, beta: 1.0 };
    let infinite = PencilEigenvalue {
        alpha: Complex::new(1.0, 0.0),
        beta: 0.0,
    };
    let mut k = 0;
    while k < n {
        if k + 1 < n && a[(k + 1, k)] != 0.0 {
            let (h11, h12, h21, h22) = (a[(k, k)], a[(k, k + 1)], a[(k + 1, k)], a[(k + 1, k + 1)]);
            let (t11, t12, t22) = (b[(k, k)], b[(k, k + 1)], b[(k + 1, k + 1)]);
            let qa = t11 * t22;
            let qb = -(h11 * t22 + h22 * t11 - h21 * t12);
            let qc = h11 * h22 - h12 * h21;
            if t11.abs() <= btol || t22.abs() <= btol {
                if qb.abs() <= atol * btol.max(f64::MIN_POSITIVE) && qc.abs() <= atol * atol {
                    return Err(Error::SingularPencil);
                }
                out.push(infinite);
                out.push(finite(Complex::new(-qc / qb, 0.0)));
            } else {
                let disc = qb * qb - 4.0 * qa * qc;
                if disc >= 0.0 {
                    let root = disc.sqrt();
                    let q = -0.5 * (qb + if qb >= 0.0 { root } else { -root });
                    let r1 = q / qa;
                    let r2 = if q != 0.0 { qc / q } else { 0.0 };
                    out.push(finite(Complex::new(r1, 0.0)));
                    out.push(finite(Complex::new(r2, 0.0)));
                } else {
                    let re = -qb / (2.0 * qa);
                    let im = (-disc).sqrt() / (2.0 * qa.abs());
                    out.push(finite(Complex::new(re, im)));
                    out.push(finite(Complex::new(re, -im)));
                }
            }
            k += 2;
        } else {
            let (alpha, beta) = (a[(k, k)], b[(k, k)]);
            if beta.abs() <= btol {
                if alpha.abs() <= atol {
                    return Err(Error::SingularPencil);
                }
                out.push(infinite);
            } else {
                out.push(finite(Complex::new(alpha / beta, 0.0)));
            }
            k += 1;
        }
    }
    Ok(out)
}

/// Right eigenvector for a real eigenvalue estimate `lambda` by inverse
/// iteration on `(A − λB) x⁺ = B x`. Returns a unit vector and the refined
/// Rayleigh-type eigenvalue `xᵀAx / xᵀBx` is left to the caller.
pub fn inverse_iteration(a: &DMatrix<f64>, b: &DMatrix<f64>, lambda: f64, iters: usize) -> Result<DVector<f64>> {
    let n = a.nrows();
    let mut shift = lambda;
    let mut lu = None;
    for attempt in 0..4 {
        match LuFactors::new(&(a - b * shift)) {
            Ok(f) => {
                lu = Some(f);
                break;
            }
            Err(_) => {
                shift = lambda * (1.0 + 1e-13 * (1 + attempt) as f64) + 1e-300;
            }
        }
    }
    let lu = lu.ok_or(Error::SingularSystem { rcond: 0.0 })?;
    let mut x = DVector::from_fn(n, |i, _| 1.0 + ((i * 7919) % 101) as f64 / 101.0);
    x /= x.norm();
    for _ in 0..iters.max(1) {
        let rhs = b * &x;
        let rhs = if rhs.norm() == 0.0 { x.clone() } else { rhs };
        let mut y = lu.solve(&rhs);
        let norm = y.norm();
        if !norm.is_finite() || norm == 0.0 {
            return Err(Error::SingularSystem { rcond: 0.0 });
        }
        y /= norm;
        x = y;
    }
    Ok(x)
}
