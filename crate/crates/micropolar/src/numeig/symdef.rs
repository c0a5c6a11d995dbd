use super::{DensePencil, PencilKind};
use crate::error::{Error, Result};
use super::LuFactors;
use nalgebra::{DMatrix, DVector, SymmetricEigen};

/// Eigenpairs of a symmetric-definite pencil, ascending, `Vᵀ B V = I`.
#[derive(Debug, Clone)]
pub struct SymEigen {
    pub values: DVector<f64>,
    pub vectors: DMatrix<f64>,
}

/// Solves `A v = λ B v` by Cholesky reduction `B = L Lᵀ` to
/// `L⁻¹ A L⁻ᵀ y = λ y`, then symmetric tridiagonal QR.
pub fn sym_def_eig(p: &DensePencil) -> Result<SymEigen> {
    if p.kind != PencilKind::SymmetricDefinite {
        return Err(Error::InvalidArgument(
            "sym_def_eig needs a symmetric-definite pencil".into(),
        ));
    }
    let n = p.dim();
    let l = p
        .b
        .clone()
        .cholesky()
        .ok_or(Error::NotPositiveDefinite("B"))?
        .unpack();

    // C = L⁻¹ A L⁻ᵀ
    let x = l
        .solve_lower_triangular(&p.a)
        .ok_or(Error::NotPositiveDefinite("B"))?;
    let c = l
        .solve_lower_triangular(&x.transpose())
        .ok_or(Error::NotPositiveDefinite("B"))?;
    let c = (&c + c.transpose()) * 0.5;

    let eig = SymmetricEigen::try_new(c, f64::EPSILON, 0).ok_or(Error::NoConvergence(0))?;
    let y = eig.eigenvectors;
    let v = l
        .transpose()
        .solve_upper_triangular(&y)
        .ok_or(Error::NotPositiveDefinite("B"))?;

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[i].total_cmp(&eig.eigenvalues[j]));
    let values = DVector::from_iterator(n, order.iter().map(|&i| eig.eigenvalues[i]));
    let mut vectors = DMatrix::zeros(n, n);
    for (k, &i) in order.iter().enumerate() {
        vectors.set_column(k, &v.column(i));
    }
    Ok(SymEigen { values, vectors })
}

/// Eigenpairs of `Gᵀ G v = λ B v` from the singular values of `G L⁻ᵀ`,
/// `B = L Lᵀ`. Small eigenvalues keep an absolute accuracy of about
/// `ε √λ_max √λ` instead of `ε λ_max`.
pub fn sym_def_eig_factored(g: &DMatrix<f64>, b: &DMatrix<f64>) -> Result<SymEigen> {
    let n = b.nrows();
    if g.ncols() != n || !b.is_square() {
        return Err(Error::InvalidArgument("factor and B sizes differ".into()));
    }
    let l = b.clone().cholesky().ok_or(Error::NotPositiveDefinite("B"))?.unpack();
    // G L⁻ᵀ = (L⁻¹ Gᵀ)ᵀ
    let bt = l
        .solve_lower_triangular(&g.transpose())
        .ok_or(Error::NotPositiveDefinite("B"))?
        .transpose();
    let (sing, y) = jacobi_svd(bt)?;
    let vals: Vec<f64> = sing.iter().map(|s| s * s).collect();
    let v = l
        .transpose()
        .solve_upper_triangular(&y)
        .ok_or(Error::NotPositiveDefinite("B"))?;
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| vals[i].total_cmp(&vals[j]));
    Ok(SymEigen {
        values: DVector::from_iterator(n, order.iter().map(|&i| vals[i])),
        vectors: DMatrix::from_columns(&order.iter().map(|&i| v.column(i)).collect::<Vec<_>>()),
    })
}

/// One-sided Jacobi SVD of `a` (`m × n`): the `n` singular values and the
/// right singular vectors as columns.
///
/// Column rotations keep small singular values to high relative accuracy.
/// nalgebra's bidiagonal SVD was seen to stop early on the plate factors
/// (reconstruction error 7e-5), which spoils the stiff modes.
fn jacobi_svd(a: DMatrix<f64>) -> Result<(Vec<f64>, DMatrix<f64>)> {
    let (m, n) = a.shape();
    // Fewer rows than columns: zero rows complete the null space.
    let mut w = if m >= n { a } else { a.resize_vertically(n, 0.0) };
    let mut v = DMatrix::<f64>::identity(n, n);
    let tol = f64::EPSILON * (w.nrows() as f64).sqrt();
    // Columns this small are numerically zero; rotating against them only cycles.
    let floor = (n as f64 * f64::EPSILON * w.norm()).powi(2);
    for _ in 0..60 {
        let mut rotated = false;
        for p in 0..n {
            for q in p + 1..n {
                let alpha = w.column(p).norm_squared();
                let beta = w.column(q).norm_squared();
                let gamma = w.column(p).dot(&w.column(q));
                if gamma.abs() <= tol * (alpha * beta).sqrt() || alpha.min(beta) <= floor {
                    continue;
                }
                rotated = true;
                let zeta = (beta - alpha) / (2.0 * gamma);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                for mat in [&mut w, &mut v] {
                    for r in 0..mat.nrows() {
                        let (x, y) = (mat[(r, p)], mat[(r, q)]);
                        mat[(r, p)] = c * x - s * y;
                        mat[(r, q)] = s * x + c * y;
                    }
                }
            }
        }
        if !rotated {
            let sing = (0..n).map(|j| w.column(j).norm()).collect();
            return Ok((sing, v));
        }
    }
    Err(Error::NoConvergence(60))
}

#[cfg(test)]
mod jacobi_tests {
    use super::jacobi_svd;
    use nalgebra::DMatrix;

    #[test]
    fn reconstructs_graded_matrices() {
        // Columns spanning twelve orders of magnitude, like the plate factor.
        let a = DMatrix::from_fn(9, 5, |i, j| ((i * 7 + j * 3) % 11) as f64 - 5.0 + 0.1 * j as f64)
            * DMatrix::from_diagonal(&nalgebra::DVector::from_fn(5, |j, _| 10f64.powi(3 * j as i32)));
        let (s, v) = jacobi_svd(a.clone()).unwrap();
        let orth = (v.transpose() * &v - DMatrix::<f64>::identity(5, 5)).amax();
        assert!(orth < 1e-14, "{orth}");
        // ‖A v_j‖ = σ_j for every column.
        for j in 0..5 {
            let r = (a.clone() * v.column(j)).norm();
            assert!((r - s[j]).abs() <= 1e-13 * s[j].max(1e-300) + 1e-15 * a.norm(), "{j}: {r} vs {}", s[j]);
        }
    }

    #[test]
    fn wide_input_gets_a_null_space() {
        let a = DMatrix::from_row_slice(2, 3, &[1.0, 2.0, 3.0, 4.0, 5.0, 6.0]);
        let (s, v) = jacobi_svd(a.clone()).unwrap();
        assert_eq!(s.len(), 3);
        let zero = s.iter().position(|&x| x < 1e-12).expect("one null direction");
        assert!((a * v.column(zero)).norm() < 1e-12);
    }
}

/// Polishes every pair of `eig` by shifted inverse iteration on the
/// original pencil, with Rayleigh-quotient updates.
///
/// The Cholesky reduction loses accuracy on small eigenvalues when `B` is
/// badly graded; iterating on `A − σB` directly recovers it. Vectors of a
/// cluster are kept `B`-orthogonal to the ones already polished.
pub fn refine_sym_def(p: &DensePencil, eig: &SymEigen, iters: usize) -> Result<SymEigen> {
    let n = p.dim();
    let (a, b) = (&p.a, &p.b);
    let mut values = eig.values.clone();
    let mut vectors = eig.vectors.clone();
    let scale = eig.values.amax().max(f64::MIN_POSITIVE);
    for i in 0..n {
        let cluster: Vec<usize> = (0..i)
            .filter(|&k| (values[k] - values[i]).abs() <= 1e-6 * values[i].abs().max(1e-12 * scale))
            .collect();
        let mut v = vectors.column(i).into_owned();
        let mut sigma = values[i];
        for _ in 0..iters {
            let mut shifted = a - b * sigma;
            let lu = match LuFactors::new(&shifted) {
                Ok(lu) => lu,
                Err(_) => {
                    shifted = a - b * (sigma * (1.0 + 1e-13) + 1e-300);
                    LuFactors::new(&shifted)?
                }
            };
            let mut y = lu.solve(&(b * &v));
            for &k in &cluster {
                let u = vectors.column(k);
                let c = (u.transpose() * b * &y)[(0, 0)];
                y -= u * c;
            }
            let norm = (y.transpose() * b * &y)[(0, 0)].sqrt();
            if !(norm > 0.0 && norm.is_finite()) {
                break;
            }
            v = y / norm;
            sigma = (v.transpose() * a * &v)[(0, 0)];
        }
        values[i] = sigma;
        vectors.set_column(i, &v);
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| values[i].total_cmp(&values[j]));
    Ok(SymEigen {
        values: DVector::from_iterator(n, order.iter().map(|&i| values[i])),
        vectors: DMatrix::from_columns(&order.iter().map(|&i| vectors.column(i)).collect::<Vec<_>>()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diagonal_pencil() {
        let p = DensePencil::symmetric_definite(
            DMatrix::from_diagonal(&DVector::from_vec(vec![4.0, 1.0])),
            DMatrix::identity(2, 2),
        )
        .unwrap();
        let e = sym_def_eig(&p).unwrap();
        assert!((e.values[0] - 1.0).abs() < 1e-14);
        assert!((e.values[1] - 4.0).abs() < 1e-14);
        assert!((e.vectors[(1, 0)].abs() - 1.0).abs() < 1e-14);
        assert!((e.vectors[(0, 1)].abs() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn a_equals_b_gives_unit_spectrum() {
        let b = DMatrix::from_row_slice(3, 3, &[4.0, 1.0, 0.5, 1.0, 3.0, 0.2, 0.5, 0.2, 2.0]);
        let p = DensePencil::symmetric_definite(b.clone(), b).unwrap();
        let e = sym_def_eig(&p).unwrap();
        for v in e.values.iter() {
            assert!((v - 1.0).abs() < 1e-13);
        }
    }

    #[test]
    fn indefinite_b_rejected() {
        let b = DMatrix::from_row_slice(2, 2, &[1.0, 0.0, 0.0, -1.0]);
        let r = DensePencil::symmetric_definite(DMatrix::identity(2, 2), b);
        assert_eq!(r.unwrap_err(), Error::NotPositiveDefinite("B"));
    }
}
