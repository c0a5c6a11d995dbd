//! Dense eigen and linear-system kernels.
//!
//! Sized for a few hundred unknowns. Three entry points:
//!
//! * [`sym_def_eig`] for `A v = λ B v` with `A` symmetric and `B` SPD,
//! * [`general_eig`] for arbitrary real pencils, infinite eigenvalues included,
//! * [`dense_solve`] for `M x = b` with partial pivoting.

mod lu;
mod qz;
mod symdef;

pub use lu::{dense_solve, LuFactors};
pub use qz::{general_eig, inverse_iteration, PencilEigenvalue};
pub use symdef::{refine_sym_def, sym_def_eig, sym_def_eig_factored, SymEigen};

use crate::error::{Error, Result};
use nalgebra::DMatrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PencilKind {
    SymmetricDefinite,
    GeneralReal,
}

/// The pencil `(A, B)` of the problem `A v = λ B v`.
#[derive(Debug, Clone)]
pub struct DensePencil {
    pub a: DMatrix<f64>,
    pub b: DMatrix<f64>,
    pub kind: PencilKind,
}

/// Relative asymmetry `‖M − Mᵀ‖_F / ‖M‖_F` (zero for the zero matrix).
pub fn asymmetry(m: &DMatrix<f64>) -> f64 {
    let norm = m.norm();
    if norm == 0.0 {
        return 0.0;
    }
    (m - m.transpose()).norm() / norm
}

impl DensePencil {
    /// Checked constructor for the symmetric-definite case.
    pub fn symmetric_definite(a: DMatrix<f64>, b: DMatrix<f64>) -> Result<Self> {
        check_square(&a, &b)?;
        let asym = asymmetry(&a);
        if asym > 1e-10 {
            return Err(Error::NotSymmetric(asym));
        }
        let asym = asymmetry(&b);
        if asym > 1e-10 {
            return Err(Error::NotSymmetric(asym));
        }
        if b.clone().cholesky().is_none() {
            return Err(Error::NotPositiveDefinite("B"));
        }
        Ok(Self {
            a,
            b,
            kind: PencilKind::SymmetricDefinite,
        })
    }

    pub fn general(a: DMatrix<f64>, b: DMatrix<f64>) -> Result<Self> {
        check_square(&a, &b)?;
        Ok(Self {
            a,
            b,
            kind: PencilKind::GeneralReal,
        })
    }

    pub fn dim(&self) -> usize {
        self.a.nrows()
    }
}

fn check_square(a: &DMatrix<f64>, b: &DMatrix<f64>) -> Result<()> {
    if !a.is_square() || a.shape() != b.shape() {
        return Err(Error::InvalidArgument(format!(
            "pencil shapes {:?} and {:?} are not equal and square",
            a.shape(),
            b.shape()
        )));
    }
    Ok(())
}
