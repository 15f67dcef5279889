//! Spectral quantum Fisher information for displacement generators, the
//! quadrature QFI matrix, and the metrological power.
//!
//! For ρ = Σ λ_i|i⟩⟨i| and a Hermitian generator A,
//! `I_F(ρ, A) = 2 Σ_{ij} (λ_i − λ_j)²/(λ_i + λ_j) |⟨i|A|j⟩|²`,
//! with pairs whose eigenvalue sum falls below a floor skipped: the
//! formula is singular-safe only with explicit support restriction.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::fock::{quadrature_ops, DensityMatrix};
use crate::linalg::{self, HermitianEig};

/// Eigenvalues of ρ below this are treated as exactly zero.
pub const EIGENVALUE_FLOOR: f64 = 1e-12;
/// Default skip threshold for λ_i + λ_j in the spectral sum.
pub const DEFAULT_PAIR_TOL: f64 = 1e-12;

/// A real unit vector on the 2N-dimensional quadrature sphere.
#[derive(Clone, Debug, PartialEq)]
pub struct QuadratureDirection(DVector<f64>);

impl QuadratureDirection {
    pub fn new(v: DVector<f64>) -> Result<Self> {
        let n = v.norm();
        if (n - 1.0).abs() > 1e-12 {
            return Err(Error::NotNormalized((n - 1.0).abs()));
        }
        Ok(Self(v))
    }

    /// Normalize an arbitrary nonzero vector onto the sphere.
    pub fn from_unnormalized(v: DVector<f64>) -> Result<Self> {
        let n = v.norm();
        if n < 1e-14 {
            return Err(Error::InvalidSpec("direction vector is zero".into()));
        }
        Ok(Self(v / n))
    }

    /// The x̂ direction of `mode` in an N-mode system.
    pub fn axis(num_modes: usize, component: usize) -> Self {
        let mut v = DVector::zeros(2 * num_modes);
        v[component] = 1.0;
        Self(v)
    }

    pub fn vector(&self) -> &DVector<f64> {
        &self.0
    }

    pub fn num_modes(&self) -> usize {
        self.0.len() / 2
    }
}

/// X̂_μ = Σ_k μ_k R̂^(k) as a Fock-space matrix.
pub fn x_mu(
    quads: &[DMatrix<C64>],
    mu: &QuadratureDirection,
) -> Result<DMatrix<C64>> {
    if quads.len() != mu.vector().len() {
        return Err(Error::BasisMismatch(format!(
            "direction has {} components, basis has {} quadratures",
            mu.vector().len(),
            quads.len()
        )));
    }
    let d = quads[0].nrows();
    let mut out = DMatrix::zeros(d, d);
    for (k, q) in quads.iter().enumerate() {
        let w = C64::new(mu.vector()[k], 0.0);
        out += q.map(|z| z * w);
    }
    Ok(out)
}

/// QFI of ρ with respect to a Hermitian generator, via the spectral formula.
pub fn spectral_qfi(rho: &DensityMatrix, a: &DMatrix<C64>, pair_tol: f64) -> Result<f64> {
    let dev = linalg::hermiticity_deviation(a);
    if dev > 1e-9 {
        return Err(Error::NotHermitian(dev));
    }
    let eig = rho.eigendecomposition()?;
    Ok(spectral_qfi_with(&eig, a, pair_tol))
}

/// Same, reusing an existing eigendecomposition of ρ.
pub fn spectral_qfi_with(eig: &HermitianEig, a: &DMatrix<C64>, pair_tol: f64) -> f64 {
    let lambdas: Vec<f64> =
        eig.values.iter().map(|&l| if l < EIGENVALUE_FLOOR { 0.0 } else { l }).collect();
    let b = eig.vectors.adjoint() * a * &eig.vectors;
    let n = lambdas.len();
    let mut total = 0.0;
    for i in 0..n {
        for j in 0..n {
            let s = lambdas[i] + lambdas[j];
            if s < pair_tol {
                continue;
            }
            let d = lambdas[i] - lambdas[j];
            if d == 0.0 {
                continue;
            }
            total += 2.0 * d * d / s * b[(i, j)].norm_sqr();
        }
    }
    total
}

/// The real symmetric quadrature QFI matrix
/// F_kl = 2 Σ_{ij} (λ_i−λ_j)²/(λ_i+λ_j) ⟨i|R^(k)|j⟩⟨j|R^(l)|i⟩,
/// assembled from a single eigendecomposition of ρ.
#[derive(Clone, Debug)]
pub struct QfiMatrix {
    matrix: DMatrix<f64>,
    eigenvalues: DVector<f64>,
    eigenvectors: DMatrix<f64>,
}

impl QfiMatrix {
    pub fn from_matrix(matrix: DMatrix<f64>) -> Result<Self> {
        let n = matrix.nrows();
        let mut dev: f64 = 0.0;
        for i in 0..n {
            for j in i..n {
                dev = dev.max((matrix[(i, j)] - matrix[(j, i)]).abs());
            }
        }
        if dev > 1e-9 {
            return Err(Error::NotHermitian(dev));
        }
        // symmetrize before the spectral step so tiny asymmetries cannot leak
        let sym = (&matrix + matrix.transpose()) * 0.5;
        let eig = linalg::symmetric_eig(&sym)?;
        if eig.values[n - 1] < -1e-8 {
            return Err(Error::Numerics(format!(
                "QFI matrix has negative eigenvalue {:.3e}",
                eig.values[n - 1]
            )));
        }
        Ok(Self { matrix: sym, eigenvalues: eig.values, eigenvectors: eig.vectors })
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    pub fn num_modes(&self) -> usize {
        self.matrix.nrows() / 2
    }

    /// Eigenvalues, descending.
    pub fn eigenvalues(&self) -> &DVector<f64> {
        &self.eigenvalues
    }

    pub fn lambda_max(&self) -> f64 {
        self.eigenvalues[0]
    }

    /// μᵀ F μ.
    pub fn quadratic_form(&self, mu: &QuadratureDirection) -> f64 {
        (mu.vector().transpose() * &self.matrix * mu.vector())[(0, 0)]
    }

    /// I_opt = λ_max(F)/2.
    pub fn i_opt(&self) -> f64 {
        self.lambda_max() / 2.0
    }

    /// I_mean = Tr F / (4N).
    pub fn i_mean(&self) -> f64 {
        self.matrix.trace() / (4.0 * self.num_modes() as f64)
    }

    /// Unit eigenvector of λ_max; a degenerate top eigenvalue resolves to
    /// the first eigenvector after the deterministic stable sort.
    pub fn optimal_direction(&self) -> QuadratureDirection {
        QuadratureDirection::from_unnormalized(self.eigenvectors.column(0).clone_owned())
            .expect("eigenvector is unit norm")
    }
}

pub fn i_opt(f: &QfiMatrix) -> f64 {
    f.i_opt()
}

pub fn i_mean(f: &QfiMatrix) -> f64 {
    f.i_mean()
}

pub fn optimal_direction(f: &QfiMatrix) -> QuadratureDirection {
    f.optimal_direction()
}

/// Assemble the QFI matrix of a Fock-space state.
pub fn qfi_matrix(rho: &DensityMatrix) -> Result<QfiMatrix> {
    let quads = quadrature_ops(rho.basis())?;
    qfi_matrix_with_ops(rho, &quads)
}

pub fn qfi_matrix_with_ops(rho: &DensityMatrix, quads: &[DMatrix<C64>]) -> Result<QfiMatrix> {
    let eig = rho.eigendecomposition()?;
    let lambdas: Vec<f64> =
        eig.values.iter().map(|&l| if l < EIGENVALUE_FLOOR { 0.0 } else { l }).collect();
    let k2 = quads.len();
    let n = lambdas.len();
    let transformed: Vec<DMatrix<C64>> =
        quads.iter().map(|r| eig.vectors.adjoint() * r * &eig.vectors).collect();
    let mut f = DMatrix::zeros(k2, k2);
    for k in 0..k2 {
        for l in k..k2 {
            let mut acc = 0.0;
            for i in 0..n {
                for j in 0..n {
                    let s = lambdas[i] + lambdas[j];
                    if s < DEFAULT_PAIR_TOL {
                        continue;
                    }
                    let d = lambdas[i] - lambdas[j];
                    if d == 0.0 {
                        continue;
                    }
                    acc += 2.0 * d * d / s
                        * (transformed[k][(i, j)] * transformed[l][(j, i)]).re;
                }
            }
            f[(k, l)] = acc;
            f[(l, k)] = acc;
        }
    }
    QfiMatrix::from_matrix(f)
}

/// Moment-route QFI matrix for a pure state: F_kl = 2⟨{R_k,R_l}⟩ − 4⟨R_k⟩⟨R_l⟩.
///
/// Kept independent of the spectral path so the two can check each other.
pub fn qfi_matrix_pure(psi: &crate::fock::FockState) -> Result<QfiMatrix> {
    let quads = quadrature_ops(psi.basis())?;
    let k2 = quads.len();
    let applied: Vec<DVector<C64>> = quads.iter().map(|r| r * psi.amplitudes()).collect();
    let means: Vec<f64> = applied
        .iter()
        .map(|v| (psi.amplitudes().adjoint() * v)[(0, 0)].re)
        .collect();
    let mut f = DMatrix::zeros(k2, k2);
    for k in 0..k2 {
        for l in k..k2 {
            let overlap = (applied[k].adjoint() * &applied[l])[(0, 0)].re;
            let val = 4.0 * overlap - 4.0 * means[k] * means[l];
            f[(k, l)] = val;
            f[(l, k)] = val;
        }
    }
    QfiMatrix::from_matrix(f)
}

/// Metrological power M = max{λ_max(F)/2 − 1, 0} with its achieving
/// direction: min_μ (Δθ)²_μ = 1/λ_max(F) along the certificate.
#[derive(Clone, Debug)]
pub struct MetrologicalPower {
    pub value: f64,
    pub lambda_max: f64,
    pub direction: QuadratureDirection,
}

pub fn metrological_power(rho: &DensityMatrix) -> Result<MetrologicalPower> {
    let f = qfi_matrix(rho)?;
    Ok(MetrologicalPower {
        value: (f.lambda_max() / 2.0 - 1.0).max(0.0),
        lambda_max: f.lambda_max(),
        direction: f.optimal_direction(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::{build_state, StateKind, StateSpec};

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn coherent_qfi_is_two_along_any_quadrature() {
        let spec = StateSpec::uniform(StateKind::Coherent { alphas: vec![c(0.9, 0.4)] }, 35);
        let rho = build_state(&spec).unwrap().density();
        let quads = quadrature_ops(rho.basis()).unwrap();
        for theta in [0.0, 0.7, 1.3, 2.9] {
            let mu = QuadratureDirection::from_unnormalized(DVector::from_vec(vec![
                f64::cos(theta),
                f64::sin(theta),
            ]))
            .unwrap();
            let xm = x_mu(&quads, &mu).unwrap();
            let i = spectral_qfi(&rho, &xm, DEFAULT_PAIR_TOL).unwrap();
            assert!((i - 2.0).abs() < 1e-8, "theta {theta}: {i}");
        }
    }

    #[test]
    fn thermal_qfi_closed_form() {
        // I_F(τ, x̂) = 2/(2n̄+1)
        let spec = StateSpec::uniform(StateKind::Thermal { nbar: 1.0 }, 60);
        let rho = build_state(&spec).unwrap().density();
        let quads = quadrature_ops(rho.basis()).unwrap();
        let i = spectral_qfi(&rho, &quads[0], DEFAULT_PAIR_TOL).unwrap();
        assert!((i - 2.0 / 3.0).abs() < 1e-5, "{i}");
    }

    #[test]
    fn fock_number_qfi_vanishes() {
        let spec = StateSpec::uniform(StateKind::Fock { n: 2 }, 20);
        let rho = build_state(&spec).unwrap().density();
        let n_op = crate::fock::number_op(rho.basis(), 0).unwrap();
        let i = spectral_qfi(&rho, &n_op, DEFAULT_PAIR_TOL).unwrap();
        assert_eq!(i, 0.0);
    }

    #[test]
    fn pure_state_qfi_is_four_variances() {
        let spec = StateSpec::uniform(StateKind::Cat { alpha: c(1.0, 0.0), sign: 1 }, 30);
        let built = build_state(&spec).unwrap();
        let psi = built.as_pure().unwrap();
        let rho = built.density();
        let quads = quadrature_ops(rho.basis()).unwrap();
        for q in &quads {
            let spectral = spectral_qfi(&rho, q, DEFAULT_PAIR_TOL).unwrap();
            let moment = 4.0 * psi.variance(q);
            assert!((spectral - moment).abs() < 1e-7, "{spectral} vs {moment}");
        }
    }

    #[test]
    fn vacuum_qfi_matrix_is_two_identity() {
        let spec = StateSpec::uniform(StateKind::Vacuum { modes: 1 }, 12);
        let rho = build_state(&spec).unwrap().density();
        let f = qfi_matrix(&rho).unwrap();
        let diff = f.matrix() - DMatrix::<f64>::identity(2, 2) * 2.0;
        assert!(diff.norm() < 1e-8);
    }

    #[test]
    fn fock_tensor_vacuum_qfi_matrix() {
        let spec = StateSpec::new(
            StateKind::Noon { n: 1 }, // placeholder basis; replaced below
            vec![10, 10],
        );
        // |1⟩⊗|0⟩ built by hand
        let basis = spec.basis().unwrap();
        let s = crate::fock::FockState::basis_state(basis, &[1, 0]).unwrap();
        let f = qfi_matrix(&s.to_density()).unwrap();
        let expect = DMatrix::from_diagonal(&DVector::from_vec(vec![6.0, 6.0, 2.0, 2.0]));
        assert!((f.matrix() - expect).norm() < 1e-6);
        assert!((f.i_mean() - 2.0).abs() < 1e-6);
        assert!((f.i_opt() - 3.0).abs() < 1e-6);
    }

    #[test]
    fn squeezed_vacuum_qfi_matrix() {
        let spec = StateSpec::uniform(StateKind::SqueezedVacuum { xi: c(0.5, 0.0) }, 40);
        let rho = build_state(&spec).unwrap().density();
        let f = qfi_matrix(&rho).unwrap();
        // x squeezed for real ξ: F = diag(2e^{-1}, 2e^{+1})
        assert!((f.matrix()[(0, 0)] - 2.0 * (-1.0f64).exp()).abs() < 1e-5);
        assert!((f.matrix()[(1, 1)] - 2.0 * (1.0f64).exp()).abs() < 1e-5);
        assert!(f.matrix()[(0, 1)].abs() < 1e-6);
    }

    #[test]
    fn quadratic_form_matches_spectral() {
        let spec = StateSpec::uniform(StateKind::DecoheredCat { alpha: c(1.0, 0.0), gamma: 0.5 }, 30);
        let rho = build_state(&spec).unwrap().density();
        let f = qfi_matrix(&rho).unwrap();
        let quads = quadrature_ops(rho.basis()).unwrap();
        for theta in [0.3f64, 1.1, 2.2] {
            let mu = QuadratureDirection::from_unnormalized(DVector::from_vec(vec![
                theta.cos(),
                theta.sin(),
            ]))
            .unwrap();
            let xm = x_mu(&quads, &mu).unwrap();
            let direct = spectral_qfi(&rho, &xm, DEFAULT_PAIR_TOL).unwrap();
            assert!((f.quadratic_form(&mu) - direct).abs() < 1e-6);
        }
    }

    #[test]
    fn fock_metrological_power() {
        for n in 1..=3usize {
            let spec = StateSpec::uniform(StateKind::Fock { n }, n + 20);
            let rho = build_state(&spec).unwrap().density();
            let m = metrological_power(&rho).unwrap();
            assert!((m.value - 2.0 * n as f64).abs() < 1e-6, "n={n}: {}", m.value);
        }
    }

    #[test]
    fn decohered_cat_power_closed_form() {
        let (alpha, gamma) = (1.0f64, 0.5f64);
        let spec =
            StateSpec::uniform(StateKind::DecoheredCat { alpha: c(alpha, 0.0), gamma }, 35);
        let rho = build_state(&spec).unwrap().density();
        let m = metrological_power(&rho).unwrap();
        let e = (-2.0 * alpha * alpha).exp();
        let ng = 2.0 + 2.0 * gamma * e;
        let closed = (16.0 * alpha * alpha / (ng * ng) * gamma * (gamma + e)).max(0.0);
        assert!((m.value - closed).abs() < 1e-5, "{} vs {closed}", m.value);
        assert!((closed - 1.1147072).abs() < 1e-6);
    }

    #[test]
    fn odd_decohered_cat_zero_power_point() {
        let alpha = 1.0f64;
        let gamma = -(-2.0 * alpha * alpha).exp();
        let spec =
            StateSpec::uniform(StateKind::DecoheredCat { alpha: c(alpha, 0.0), gamma }, 35);
        let rho = build_state(&spec).unwrap().density();
        let m = metrological_power(&rho).unwrap();
        assert!(m.value < 1e-7, "{}", m.value);
    }

    #[test]
    fn pure_route_agrees_with_spectral_route() {
        let spec = StateSpec::uniform(StateKind::PhotonAddedCoherent { alpha: c(0.6, 0.3) }, 30);
        let built = build_state(&spec).unwrap();
        let f_spectral = qfi_matrix(&built.density()).unwrap();
        let f_pure = qfi_matrix_pure(built.as_pure().unwrap()).unwrap();
        assert!((f_spectral.matrix() - f_pure.matrix()).norm() < 1e-6);
    }

    #[test]
    fn direction_must_be_unit() {
        assert!(QuadratureDirection::new(DVector::from_vec(vec![0.5, 0.0])).is_err());
    }
}
