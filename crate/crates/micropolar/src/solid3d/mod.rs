//! Exact 3D reference: separable Cosserat elastodynamics in a plate-shaped
//! block, simply supported on the lateral faces and traction free on top
//! and bottom.
//!
//! With `u₁ = cos·sin z₁(x₃)`, `u₂ = sin·cos z₂`, `u₃ = sin·sin z₃`,
//! `φ₁ = sin·cos z₄`, `φ₂ = cos·sin z₅`, `φ₃ = cos·cos z₆` the balance laws
//! reduce to six ODEs in `x₃`, `(C₂ D² + C₁ D + C₀) z = ω² A z`, with
//! traction rows `D z = 0` on both faces. The coefficients below are scaled
//! by `a²` (field rows) and `a` (traction rows), the form in which they are
//! usually tabulated as `b₁…b₁₄` and `d₁…d₉`.

mod forced;
mod grid;
mod residual;

pub use forced::{forced_response, pressure_amplitude, refine_peaks, resonance_scan, ResonancePeak};
pub use grid::CollocationGrid;
pub use residual::{residual_check, ResidualReport};

use crate::error::{Error, Result};
use crate::material::{MaterialParams, MicroInertia};
use crate::numeig::{general_eig, inverse_iteration, DensePencil};
use nalgebra::{DMatrix, DVector, Matrix6, Vector6};
use std::f64::consts::PI;

/// Which coefficient matrices to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OperatorVariant {
    /// Matrices derived from the balance laws for arbitrary `(n, m)`.
    #[default]
    Derived,
    /// Tabulated matrices with `C₀[3,3] = b₈`.
    PrintedPatched,
    /// Tabulated matrices exactly as listed, `C₀[3,3] = 0`.
    PrintedStrict,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolidCoefficients {
    /// `b₁…b₁₄`, zero-based storage.
    pub b: [f64; 14],
    /// `d₁…d₉`, zero-based storage.
    pub d: [f64; 9],
    pub c0: Matrix6<f64>,
    pub c1: Matrix6<f64>,
    pub c2: Matrix6<f64>,
    pub amat: Matrix6<f64>,
    /// Traction rows: `D z = dz0 z + dz1 z′`.
    pub dz0: Matrix6<f64>,
    pub dz1: Matrix6<f64>,
    /// Right-hand side of the top-face traction rows per unit pressure.
    pub d0: Vector6<f64>,
    pub a: f64,
    pub n: u32,
    pub m: u32,
    pub variant: OperatorVariant,
    pub material: MaterialParams,
    pub inertia: MicroInertia,
}

impl SolidCoefficients {
    /// One-based `bᵢ`.
    pub fn b(&self, i: usize) -> f64 {
        self.b[i - 1]
    }

    /// One-based `dᵢ`.
    pub fn d(&self, i: usize) -> f64 {
        self.d[i - 1]
    }

    pub fn wavenumbers(&self) -> (f64, f64) {
        (self.n as f64 * PI / self.a, self.m as f64 * PI / self.a)
    }
}

/// Mode `(1, 1)` with the derived operator.
pub fn solid_coefficients(mp: &MaterialParams, j: &MicroInertia, a: f64) -> Result<SolidCoefficients> {
    solid_coefficients_with(mp, j, a, 1, 1, OperatorVariant::Derived)
}

pub fn solid_coefficients_with(
    mp: &MaterialParams,
    j: &MicroInertia,
    a: f64,
    n: u32,
    m: u32,
    variant: OperatorVariant,
) -> Result<SolidCoefficients> {
    if !j.is_diagonal() {
        return Err(Error::InvalidArgument("the 3D solver needs a diagonal micro-inertia".into()));
    }
    if !(a > 0.0) || n == 0 || m == 0 {
        return Err(Error::InvalidArgument("need a > 0 and mode indices from 1".into()));
    }
    if variant != OperatorVariant::Derived && (n, m) != (1, 1) {
        return Err(Error::InvalidArgument("tabulated operators exist for mode (1,1) only".into()));
    }
    mp.validate()?;
    let MaterialParams {
        lambda: l,
        mu,
        alpha: al,
        beta: be,
        gamma: ga,
        epsilon: ep,
        rho,
    } = *mp;
    let a2 = a * a;
    let pi2 = PI * PI;
    let b = [
        a2 * (mu + al),
        -pi2 * (al + l + 3.0 * mu),
        -pi2 * (l + mu - al),
        a * PI * (l + mu - al),
        2.0 * a2 * al,
        2.0 * a * PI * al,
        a2 * (2.0 * mu + l),
        -2.0 * pi2 * (al + mu),
        a2 * (ga + ep),
        -pi2 * (be + ep + 3.0 * ga),
        -pi2 * (be + ga - ep),
        -a * PI * (be + ga - ep),
        a2 * (be + 2.0 * ga),
        -2.0 * pi2 * (ga + ep) - 4.0 * a2 * al,
    ];
    let d = [
        a * (mu + al),
        -PI * (mu - al),
        2.0 * a * al,
        a * (l + 2.0 * mu),
        -PI * l,
        a * (ga + ep),
        a * (ga - ep),
        PI * be,
        a * (be + 2.0 * ga),
    ];
    let jd = j.j;
    let amat = Matrix6::from_diagonal(&Vector6::new(
        -a2 * rho,
        -a2 * rho,
        -a2 * rho,
        -a2 * jd[(0, 0)],
        -a2 * jd[(1, 1)],
        -a2 * jd[(2, 2)],
    ));
    let (c0, c1, c2, dz0, dz1) = match variant {
        OperatorVariant::Derived => derived(mp, a, n, m),
        OperatorVariant::PrintedPatched | OperatorVariant::PrintedStrict => {
            printed(&b, &d, variant == OperatorVariant::PrintedPatched)
        }
    };
    Ok(SolidCoefficients {
        b,
        d,
        c0,
        c1,
        c2,
        amat,
        dz0,
        dz1,
        d0: Vector6::new(0.0, 0.0, a, 0.0, 0.0, 0.0),
        a,
        n,
        m,
        variant,
        material: *mp,
        inertia: *j,
    })
}

type Ops = (Matrix6<f64>, Matrix6<f64>, Matrix6<f64>, Matrix6<f64>, Matrix6<f64>);

fn derived(mp: &MaterialParams, a: f64, n: u32, m: u32) -> Ops {
    let MaterialParams {
        lambda: l,
        mu,
        alpha: al,
        beta: be,
        gamma: ga,
        epsilon: ep,
        ..
    } = *mp;
    let kx = n as f64 * PI / a;
    let ky = m as f64 * PI / a;
    let (kx2, ky2) = (kx * kx, ky * ky);
    let mut c0 = Matrix6::zeros();
    let mut c1 = Matrix6::zeros();
    let s = l + mu - al;
    let t = be + ga - ep;
    c0[(0, 0)] = -(l + 2.0 * mu) * kx2 - (mu + al) * ky2;
    c0[(0, 1)] = -kx * ky * s;
    c0[(0, 5)] = -2.0 * al * ky;
    c0[(1, 0)] = -kx * ky * s;
    c0[(1, 1)] = -(mu + al) * kx2 - (l + 2.0 * mu) * ky2;
    c0[(1, 5)] = 2.0 * al * kx;
    c0[(2, 2)] = -(mu + al) * (kx2 + ky2);
    c0[(2, 3)] = 2.0 * al * ky;
    c0[(2, 4)] = -2.0 * al * kx;
    c0[(3, 2)] = 2.0 * al * ky;
    c0[(3, 3)] = -4.0 * al - (be + 2.0 * ga) * kx2 - (ga + ep) * ky2;
    c0[(3, 4)] = -kx * ky * t;
    c0[(4, 2)] = -2.0 * al * kx;
    c0[(4, 3)] = -kx * ky * t;
    c0[(4, 4)] = -4.0 * al - (ga + ep) * kx2 - (be + 2.0 * ga) * ky2;
    c0[(5, 0)] = -2.0 * al * ky;
    c0[(5, 1)] = 2.0 * al * kx;
    c0[(5, 5)] = -4.0 * al - (ga + ep) * (kx2 + ky2);

    c1[(0, 2)] = kx * s;
    c1[(0, 4)] = -2.0 * al;
    c1[(1, 2)] = ky * s;
    c1[(1, 3)] = 2.0 * al;
    c1[(2, 0)] = -kx * s;
    c1[(2, 1)] = -ky * s;
    c1[(3, 1)] = -2.0 * al;
    c1[(3, 5)] = -kx * t;
    c1[(4, 0)] = 2.0 * al;
    c1[(4, 5)] = -ky * t;
    c1[(5, 3)] = kx * t;
    c1[(5, 4)] = ky * t;

    let diag = Vector6::new(mu + al, mu + al, l + 2.0 * mu, ga + ep, ga + ep, be + 2.0 * ga);
    let c2 = Matrix6::from_diagonal(&diag);

    let mut dz0 = Matrix6::zeros();
    dz0[(0, 2)] = kx * (mu - al);
    dz0[(0, 4)] = -2.0 * al;
    dz0[(1, 2)] = ky * (mu - al);
    dz0[(1, 3)] = 2.0 * al;
    dz0[(2, 0)] = -kx * l;
    dz0[(2, 1)] = -ky * l;
    dz0[(3, 5)] = -kx * (ga - ep);
    dz0[(4, 5)] = -ky * (ga - ep);
    dz0[(5, 3)] = kx * be;
    dz0[(5, 4)] = ky * be;
    let dz1 = Matrix6::from_diagonal(&diag);

    let a2 = a * a;
    (c0 * a2, c1 * a2, c2 * a2, dz0 * a, dz1 * a)
}

fn printed(b: &[f64; 14], d: &[f64; 9], patch_b8: bool) -> Ops {
    let bb = |i: usize| b[i - 1];
    let dd = |i: usize| d[i - 1];
    #[rustfmt::skip]
    let mut c0 = Matrix6::from_row_slice(&[
        bb(2), bb(3), 0.0, 0.0, 0.0, -bb(6),
        bb(3), bb(2), 0.0, 0.0, 0.0, bb(6),
        0.0, 0.0, 0.0, bb(6), -bb(6), 0.0,
        0.0, 0.0, bb(6), bb(10), bb(11), 0.0,
        0.0, 0.0, -bb(6), bb(11), bb(10), 0.0,
        -bb(6), bb(6), 0.0, 0.0, 0.0, bb(14),
    ]);
    if patch_b8 {
        c0[(2, 2)] = bb(8);
    }
    #[rustfmt::skip]
    let c1 = Matrix6::from_row_slice(&[
        0.0, 0.0, bb(4), 0.0, -bb(5), 0.0,
        0.0, 0.0, bb(4), bb(5), 0.0, 0.0,
        -bb(4), bb(4), 0.0, 0.0, 0.0, 0.0,
        0.0, bb(5), 0.0, 0.0, 0.0, bb(12),
        bb(5), 0.0, 0.0, 0.0, 0.0, bb(12),
        0.0, 0.0, 0.0, -bb(12), bb(12), 0.0,
    ]);
    let c2 = Matrix6::from_diagonal(&Vector6::new(bb(1), bb(1), bb(7), bb(9), bb(9), bb(13)));
    #[rustfmt::skip]
    let dz0 = Matrix6::from_row_slice(&[
        0.0, 0.0, dd(2), 0.0, -dd(3), 0.0,
        0.0, 0.0, dd(2), dd(3), 0.0, 0.0,
        dd(4), dd(4), 0.0, 0.0, 0.0, 0.0,
        0.0, 0.0, 0.0, 0.0, 0.0, dd(7),
        0.0, 0.0, 0.0, 0.0, 0.0, dd(7),
        0.0, 0.0, 0.0, dd(8), dd(8), 0.0,
    ]);
    let dz1 = Matrix6::from_diagonal(&Vector6::new(dd(1), dd(1), dd(5), dd(6), dd(6), dd(9)));
    (c0, c1, c2, dz0, dz1)
}

/// Discretized pencil `Bh z = ω² Ah z`; unknowns are ordered field-major,
/// `z_k` at node `i` sits at `k·N + i`.
#[derive(Debug, Clone)]
pub struct SolidPencil {
    pub bh: DMatrix<f64>,
    pub ah: DMatrix<f64>,
    /// Rows replaced by traction conditions.
    pub mask: Vec<bool>,
    pub nodes: usize,
}

/// Scaled pencil; the original unknowns are `col ∘ y`.
#[derive(Debug, Clone)]
pub struct Equilibrated {
    pub bh: DMatrix<f64>,
    pub ah: DMatrix<f64>,
    pub row: DVector<f64>,
    pub col: DVector<f64>,
}

impl SolidPencil {
    /// Row-scaled and field-block column-scaled copy `R Bh C`, `R Ah C`.
    /// Stress and couple-stress rows differ by many orders of magnitude, so
    /// without this the small blocks drown in rounding from the large ones.
    /// Factors are powers of two and therefore exact.
    pub fn equilibrated(&self) -> Equilibrated {
        let n = self.nodes;
        let dim = self.bh.nrows();
        let pow2 = |m: f64| if m > 0.0 { (-m.log2().round()).exp2() } else { 1.0 };
        let mut bh = self.bh.clone();
        let mut ah = self.ah.clone();
        let mut row = DVector::from_element(dim, 1.0);
        let mut col = DVector::from_element(dim, 1.0);
        for _ in 0..2 {
            for i in 0..dim {
                let s = pow2(bh.row(i).amax());
                bh.row_mut(i).scale_mut(s);
                ah.row_mut(i).scale_mut(s);
                row[i] *= s;
            }
            for k in 0..6 {
                let s = pow2(bh.columns(k * n, n).amax());
                bh.columns_mut(k * n, n).scale_mut(s);
                ah.columns_mut(k * n, n).scale_mut(s);
                col.rows_mut(k * n, n).scale_mut(s);
            }
        }
        Equilibrated { bh, ah, row, col }
    }

    /// Row of traction condition `k` on the top (`top = true`) or bottom face.
    pub fn bc_row(&self, k: usize, top: bool) -> usize {
        k * self.nodes + if top { 0 } else { self.nodes - 1 }
    }
}

pub fn build_pencil(sc: &SolidCoefficients, grid: &CollocationGrid) -> Result<SolidPencil> {
    let nn = grid.len();
    if nn < 8 {
        return Err(Error::InvalidArgument("collocation needs at least 8 nodes".into()));
    }
    let dim = 6 * nn;
    let mut bh = DMatrix::zeros(dim, dim);
    let mut ah = DMatrix::zeros(dim, dim);
    for r in 0..6 {
        for c in 0..6 {
            let (k0, k1, k2, am) = (sc.c0[(r, c)], sc.c1[(r, c)], sc.c2[(r, c)], sc.amat[(r, c)]);
            for i in 0..nn {
                let row = r * nn + i;
                if k0 != 0.0 {
                    bh[(row, c * nn + i)] += k0;
                }
                if am != 0.0 {
                    ah[(row, c * nn + i)] += am;
                }
                for jn in 0..nn {
                    bh[(row, c * nn + jn)] += k1 * grid.d1[(i, jn)] + k2 * grid.d2[(i, jn)];
                }
            }
        }
    }
    let mut mask = vec![false; dim];
    for face in [0, nn - 1] {
        for r in 0..6 {
            let row = r * nn + face;
            mask[row] = true;
            bh.row_mut(row).fill(0.0);
            ah.row_mut(row).fill(0.0);
            for c in 0..6 {
                bh[(row, c * nn + face)] += sc.dz0[(r, c)];
                let k1 = sc.dz1[(r, c)];
                if k1 != 0.0 {
                    for jn in 0..nn {
                        bh[(row, c * nn + jn)] += k1 * grid.d1[(face, jn)];
                    }
                }
            }
        }
    }
    Ok(SolidPencil { bh, ah, mask, nodes: nn })
}

/// One retained 3D mode.
#[derive(Debug, Clone)]
pub struct SolidMode {
    pub freq_hz: f64,
    pub omega2: f64,
    /// Nodal values of `z₁…z₆`, field-major, unit 2-norm.
    pub z: DVector<f64>,
    /// Relative interior residual of the discrete pencil.
    pub residual: f64,
}

#[derive(Debug, Clone)]
pub struct SolidSpectrum {
    pub modes: Vec<SolidMode>,
}

impl SolidSpectrum {
    pub fn freqs_hz(&self) -> Vec<f64> {
        self.modes.iter().map(|m| m.freq_hz).collect()
    }
}

/// Finite, real and positive eigenvalues of the pencil, ascending.
pub fn physical_eigenvalues(pencil: &SolidPencil) -> Result<Vec<f64>> {
    let eq = pencil.equilibrated();
    let p = DensePencil::general(eq.bh, eq.ah)?;
    let eig = general_eig(&p)?;
    let finite: Vec<_> = eig.iter().filter(|e| !e.is_infinite()).map(|e| e.value()).collect();
    let mut mags: Vec<f64> = finite.iter().map(|v| v.norm()).collect();
    mags.sort_by(f64::total_cmp);
    let median = mags.get(mags.len() / 2).copied().unwrap_or(0.0);
    let mut vals: Vec<f64> = finite
        .iter()
        .filter(|v| v.norm() <= 1e12 * median && v.im.abs() <= 1e-6 * v.norm() && v.re > 0.0)
        .map(|v| v.re)
        .collect();
    vals.sort_by(f64::total_cmp);
    Ok(vals)
}

/// The `k` lowest physical modes with inverse-iteration eigenvectors.
pub fn solid_spectrum(pencil: &SolidPencil, k: usize) -> Result<SolidSpectrum> {
    let vals = physical_eigenvalues(pencil)?;
    if vals.is_empty() {
        return Err(Error::NoPhysicalEigenvalues);
    }
    let eq = pencil.equilibrated();
    let mut modes = Vec::with_capacity(k.min(vals.len()));
    for &w0 in vals.iter().take(k) {
        let w2 = w0;
        let y = inverse_iteration(&eq.bh, &eq.ah, w2, 3)?;
        let z = y.component_mul(&eq.col).normalize();
        let residual = interior_residual(pencil, &z, w2);
        if !(residual <= 1e-8) {
            return Err(Error::NoConvergence(modes.len()));
        }
        modes.push(SolidMode {
            freq_hz: w2.sqrt() / (2.0 * PI),
            omega2: w2,
            z,
            residual,
        });
    }
    Ok(SolidSpectrum { modes })
}

/// `‖(Bh − ω² Ah) z‖∞` over interior rows, relative to
/// `(‖Bh‖∞ + |ω²| ‖Ah‖∞) ‖z‖∞` restricted to the same rows.
pub fn interior_residual(pencil: &SolidPencil, z: &DVector<f64>, omega2: f64) -> f64 {
    let r = &pencil.bh * z - (&pencil.ah * z) * omega2;
    let (mut num, mut nb, mut na) = (0.0f64, 0.0f64, 0.0f64);
    for (i, &bc) in pencil.mask.iter().enumerate() {
        if !bc {
            num = num.max(r[i].abs());
            nb = nb.max(pencil.bh.row(i).iter().map(|v| v.abs()).sum());
            na = na.max(pencil.ah.row(i).iter().map(|v| v.abs()).sum());
        }
    }
    let den = (nb + omega2.abs() * na) * z.amax();
    if den == 0.0 {
        num
    } else {
        num / den
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn foam() -> MaterialParams {
        MaterialParams {
            lambda: 762.616e6,
            mu: 103.993e6,
            alpha: 4.333e6,
            beta: 39.975,
            gamma: 39.975,
            epsilon: 4.505,
            rho: 34.0,
        }
    }

    fn ball() -> MicroInertia {
        MicroInertia::diagonal(1e-3, 1e-3, 1e-3)
    }

    #[test]
    fn b1_and_d9() {
        let sc = solid_coefficients(&foam(), &ball(), 3.0).unwrap();
        assert!((sc.b(1) - 9.7493e8).abs() < 1e-4 * 9.7493e8);
        assert!((sc.d(9) - 3.0 * 3.0 * 39.975).abs() < 1e-9);
    }

    #[test]
    fn derived_agrees_with_tabulated_where_they_should() {
        let sc = solid_coefficients(&foam(), &ball(), 3.0).unwrap();
        let p = solid_coefficients_with(&foam(), &ball(), 3.0, 1, 1, OperatorVariant::PrintedPatched).unwrap();
        let close = |x: f64, y: f64| (x - y).abs() <= 1e-9 * x.abs().max(y.abs()).max(1.0);
        assert_eq!(sc.c2, p.c2);
        for (r, c) in [(0, 0), (0, 1), (0, 5), (1, 1), (1, 5), (2, 2), (2, 3), (2, 4), (3, 4), (5, 5)] {
            assert!(close(sc.c0[(r, c)], p.c0[(r, c)]), "C0[{r},{c}]");
        }
        assert!(close(sc.c0[(3, 3)], p.b(10) - 4.0 * 9.0 * foam().alpha));
        assert!(close(sc.c1[(2, 1)], -p.b(4)));
        assert!(close(sc.c1[(3, 1)], -p.b(5)));
        assert!(close(sc.c1[(5, 4)], -p.b(12)));
        assert!(close(sc.dz0[(2, 0)], p.d(5)));
        assert!(close(sc.dz1[(2, 2)], p.d(4)));
    }

    #[test]
    fn alpha_zero_decouples() {
        let sc = solid_coefficients(&foam().with_alpha(0.0), &ball(), 3.0).unwrap();
        for r in 0..6 {
            for c in 0..6 {
                if (r < 3) != (c < 3) {
                    for m in [&sc.c0, &sc.c1, &sc.c2, &sc.dz0, &sc.dz1] {
                        assert_eq!(m[(r, c)], 0.0);
                    }
                }
            }
        }
        assert_eq!(sc.b(5), 0.0);
        assert_eq!(sc.b(6), 0.0);
    }

    #[test]
    fn rejects_rotated_inertia() {
        let j = crate::material::rotate_inertia(2e-3, 1e-3, 1e-4, 0.3, Default::default());
        assert!(solid_coefficients(&foam(), &j, 3.0).is_err());
    }

    #[test]
    fn pencil_rows() {
        let sc = solid_coefficients_with(&foam(), &ball(), 3.0, 1, 1, OperatorVariant::PrintedPatched).unwrap();
        let grid = CollocationGrid::new(12, 0.1);
        let p = build_pencil(&sc, &grid).unwrap();
        assert_eq!(p.mask.iter().filter(|&&m| m).count(), 12);
        // z = e_k constant: interior rows reproduce C0[:, k].
        let k = 3;
        let mut z = DVector::zeros(72);
        z.rows_mut(k * 12, 12).fill(1.0);
        let bz = &p.bh * &z;
        for r in 0..6 {
            assert!((bz[r * 12 + 5] - sc.c0[(r, k)]).abs() <= 1e-6 * sc.c0[(r, k)].abs().max(1.0));
        }
        // z₃ = x₃: top row 3 gives d₅.
        let mut z = DVector::zeros(72);
        z.rows_mut(2 * 12, 12).copy_from(&grid.nodes);
        let bz = &p.bh * &z;
        let top = p.bc_row(2, true);
        assert!((bz[top] - sc.d(5)).abs() <= 1e-9 * sc.d(5).abs());
        assert!(p.ah.row(top).iter().all(|&x| x == 0.0));
    }

    fn lowest(n: usize, k: usize) -> (SolidCoefficients, CollocationGrid, SolidSpectrum) {
        let sc = solid_coefficients(&foam(), &ball(), 3.0).unwrap();
        let grid = CollocationGrid::new(n, 0.1);
        let s = solid_spectrum(&build_pencil(&sc, &grid).unwrap(), k).unwrap();
        (sc, grid, s)
    }

    #[test]
    fn spectrum_passes_both_residual_checks() {
        let (sc, grid, s) = lowest(32, 10);
        let f = s.freqs_hz();
        assert!(f.windows(2).all(|w| w[0] <= w[1]));
        for m in &s.modes {
            assert!(m.residual <= 1e-8);
            let r = residual_check(m, &sc, &grid);
            assert!(r.max() <= 1e-6, "{} Hz: {r:?}", m.freq_hz);
        }
    }

    #[test]
    fn residual_check_sees_a_wrong_eigenvalue() {
        let (sc, grid, s) = lowest(32, 6);
        for m in &s.modes {
            let ok = residual_check(m, &sc, &grid).balance;
            let off = SolidMode { omega2: m.omega2 * 1.01, ..m.clone() };
            let off = residual_check(&off, &sc, &grid).balance;
            // Bending stresses dwarf the inertia of the flexural mode, so a 1%
            // shift there reads as ~3.5e-4; it still stands far above `ok`.
            if m.freq_hz < 100.0 {
                assert!(off >= 1e3 * ok, "{off} vs {ok}");
            } else {
                assert!(off >= 1e-3, "{} Hz: {off}", m.freq_hz);
            }
        }
        let zero = SolidMode { z: DVector::zeros(6 * 32), ..s.modes[0].clone() };
        assert_eq!(residual_check(&zero, &sc, &grid).max(), 0.0);
    }

    #[test]
    fn refinement_leaves_spectrum_put() {
        let (_, _, a) = lowest(32, 10);
        let (_, _, b) = lowest(48, 10);
        for (x, y) in a.freqs_hz().iter().zip(b.freqs_hz()) {
            assert!((x - y).abs() <= 1e-6 * y, "{x} vs {y}");
        }
    }

    #[test]
    fn alpha_zero_modes_are_pure() {
        let sc = solid_coefficients(&foam().with_alpha(0.0), &ball(), 3.0).unwrap();
        let grid = CollocationGrid::new(16, 0.1);
        let s = solid_spectrum(&build_pencil(&sc, &grid).unwrap(), 6).unwrap();
        for m in &s.modes {
            let disp = m.z.rows(0, 48).amax();
            let rot = m.z.rows(48, 48).amax();
            assert!(disp.min(rot) <= 1e-8 * disp.max(rot), "{} Hz", m.freq_hz);
        }
    }

    #[test]
    fn resonance_sits_on_an_eigenvalue() {
        let (sc, grid, s) = lowest(16, 1);
        let f0 = s.modes[0].freq_hz;
        let peaks = resonance_scan(&sc, &grid, 0.9 * f0, 1.1 * f0, 21).unwrap();
        assert_eq!(peaks.len(), 1);
        assert!((peaks[0].freq_hz - f0).abs() <= 1e-6 * f0);
        let near = forced_response(&sc, &grid, 2.0 * PI * 0.999 * f0, 1.0).unwrap();
        let far = forced_response(&sc, &grid, 2.0 * PI * 0.5 * f0, 1.0).unwrap();
        assert!(near > 10.0 * far);
    }
}
