use nalgebra::{DMatrix, DVector};
use num_complex::Complex64 as C64;

use super::basis::{dim_cap, FockBasis};
use crate::error::{Error, Result};
use crate::linalg::{self, hermitian_eig};

/// Norm tolerance for factory-constructed states.
pub const FACTORY_NORM_TOL: f64 = 1e-10;
/// Norm tolerance after applying truncated (near-)unitaries.
pub const APPLIED_NORM_TOL: f64 = 1e-6;

/// A pure state vector over a truncated Fock basis.
#[derive(Clone, Debug)]
pub struct FockState {
    basis: FockBasis,
    amplitudes: DVector<C64>,
}

impl FockState {
    pub fn new(basis: FockBasis, amplitudes: DVector<C64>, norm_tol: f64) -> Result<Self> {
        if amplitudes.len() != basis.total_dim() {
            return Err(Error::BasisMismatch(format!(
                "amplitude vector has length {}, basis dimension is {}",
                amplitudes.len(),
                basis.total_dim()
            )));
        }
        let dev = (amplitudes.norm() - 1.0).abs();
        if dev > norm_tol {
            return Err(Error::NotNormalized(dev));
        }
        Ok(Self { basis, amplitudes })
    }

    /// Basis state |n_0, n_1, …⟩.
    pub fn basis_state(basis: FockBasis, occupation: &[usize]) -> Result<Self> {
        let idx = basis.index_of(occupation)?;
        let mut amplitudes = DVector::zeros(basis.total_dim());
        amplitudes[idx] = linalg::ONE;
        Ok(Self { basis, amplitudes })
    }

    pub fn vacuum(basis: FockBasis) -> Self {
        let occ = vec![0; basis.num_modes()];
        Self::basis_state(basis, &occ).expect("vacuum always exists")
    }

    pub fn basis(&self) -> &FockBasis {
        &self.basis
    }

    pub fn amplitudes(&self) -> &DVector<C64> {
        &self.amplitudes
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes.norm()
    }

    pub fn normalized(&self) -> Self {
        let n = self.norm();
        Self { basis: self.basis.clone(), amplitudes: self.amplitudes.map(|z| z / n) }
    }

    /// ⟨ψ|A|ψ⟩.
    pub fn expectation(&self, op: &DMatrix<C64>) -> C64 {
        (self.amplitudes.adjoint() * op * &self.amplitudes)[(0, 0)]
    }

    /// Var(ψ, A) for Hermitian A.
    pub fn variance(&self, op: &DMatrix<C64>) -> f64 {
        let av = op * &self.amplitudes;
        let mean = (self.amplitudes.adjoint() * &av)[(0, 0)].re;
        let second = av.norm_squared();
        second - mean * mean
    }

    /// Apply an operator and renormalize, checking the norm only loosely
    /// (truncated unitaries leak at the top of the ladder).
    pub fn apply(&self, op: &DMatrix<C64>) -> Result<Self> {
        let amplitudes = op * &self.amplitudes;
        let dev = (amplitudes.norm() - 1.0).abs();
        if dev > APPLIED_NORM_TOL {
            return Err(Error::NotNormalized(dev));
        }
        let n = amplitudes.norm();
        Ok(Self { basis: self.basis.clone(), amplitudes: amplitudes.map(|z| z / n) })
    }

    pub fn inner(&self, other: &FockState) -> C64 {
        (self.amplitudes.adjoint() * &other.amplitudes)[(0, 0)]
    }

    pub fn to_density(&self) -> DensityMatrix {
        let m = &self.amplitudes * self.amplitudes.adjoint();
        DensityMatrix { basis: self.basis.clone(), matrix: m }
    }
}

/// A Hermitian, trace-one density matrix over a truncated Fock basis.
#[derive(Clone, Debug)]
pub struct DensityMatrix {
    basis: FockBasis,
    matrix: DMatrix<C64>,
}

impl DensityMatrix {
    pub const HERMITICITY_TOL: f64 = 1e-10;
    pub const TRACE_TOL: f64 = 1e-8;

    pub fn new(basis: FockBasis, matrix: DMatrix<C64>) -> Result<Self> {
        let d = basis.total_dim();
        if matrix.nrows() != d || matrix.ncols() != d {
            return Err(Error::BasisMismatch(format!(
                "matrix is {}x{}, basis dimension is {}",
                matrix.nrows(),
                matrix.ncols(),
                d
            )));
        }
        if d.saturating_mul(d) > dim_cap() {
            return Err(Error::DimensionCap { requested: d * d, cap: dim_cap() });
        }
        let dev = linalg::hermiticity_deviation(&matrix);
        if dev > Self::HERMITICITY_TOL {
            return Err(Error::NotHermitian(dev));
        }
        let tr = matrix.trace();
        if (tr.re - 1.0).abs() > Self::TRACE_TOL || tr.im.abs() > Self::TRACE_TOL {
            return Err(Error::NotNormalized((tr - linalg::ONE).norm()));
        }
        Ok(Self { basis, matrix })
    }

    /// Internal constructor for outputs that are Hermitian and trace-one by
    /// construction (partial traces, unitary conjugations).
    pub(crate) fn new_unchecked(basis: FockBasis, matrix: DMatrix<C64>) -> Self {
        Self { basis, matrix }
    }

    pub fn basis(&self) -> &FockBasis {
        &self.basis
    }

    pub fn matrix(&self) -> &DMatrix<C64> {
        &self.matrix
    }

    pub fn trace(&self) -> C64 {
        self.matrix.trace()
    }

    pub fn purity(&self) -> f64 {
        self.matrix.iter().map(|z| z.norm_sqr()).sum()
    }

    /// Tr[ρ A].
    pub fn expectation(&self, op: &DMatrix<C64>) -> C64 {
        let mut acc = linalg::ZERO;
        let d = self.matrix.nrows();
        for i in 0..d {
            for k in 0..d {
                acc += self.matrix[(i, k)] * op[(k, i)];
            }
        }
        acc
    }

    /// Eigendecomposition with eigenvalues clamped at zero and sorted
    /// descending; tiny negative values are numerical noise.
    pub fn eigendecomposition(&self) -> Result<linalg::HermitianEig> {
        let mut eig = hermitian_eig(&self.matrix)?;
        for v in eig.values.iter_mut() {
            if *v < 0.0 {
                if *v < -1e-8 {
                    return Err(Error::Numerics(format!(
                        "density matrix has eigenvalue {v:.3e}"
                    )));
                }
                *v = 0.0;
            }
        }
        Ok(eig)
    }

    /// Extract the pure state of a purity-one density matrix.
    pub fn pure_state(&self) -> Result<FockState> {
        let p = self.purity();
        if (p - 1.0).abs() > 1e-8 {
            return Err(Error::NotPure(p));
        }
        let eig = self.eigendecomposition()?;
        let v = eig.vectors.column(0).clone_owned();
        FockState::new(self.basis.clone(), v, 1e-6)
    }

    pub fn conjugate_by(&self, u: &DMatrix<C64>) -> DensityMatrix {
        let m = u * &self.matrix * u.adjoint();
        DensityMatrix::new_unchecked(self.basis.clone(), m)
    }

    /// Validate Hermiticity, trace, and positive semidefiniteness.
    pub fn validate(&self) -> Result<()> {
        let dev = linalg::hermiticity_deviation(&self.matrix);
        if dev > Self::HERMITICITY_TOL {
            return Err(Error::NotHermitian(dev));
        }
        let tr = self.trace();
        if (tr.re - 1.0).abs() > Self::TRACE_TOL {
            return Err(Error::NotNormalized((tr - linalg::ONE).norm()));
        }
        self.eigendecomposition().map(|_| ())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basis_state_and_density() {
        let b = FockBasis::new(&[3]).unwrap();
        let s = FockState::basis_state(b, &[1]).unwrap();
        let rho = s.to_density();
        assert!((rho.purity() - 1.0).abs() < 1e-14);
        let back = rho.pure_state().unwrap();
        assert!((back.inner(&s).norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn unnormalized_rejected() {
        let b = FockBasis::new(&[2]).unwrap();
        let v = DVector::from_vec(vec![C64::new(0.5, 0.0), C64::new(0.0, 0.0)]);
        assert!(matches!(FockState::new(b, v, 1e-10), Err(Error::NotNormalized(_))));
    }
}
