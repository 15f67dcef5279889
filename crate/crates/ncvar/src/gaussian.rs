//! Gaussian-state covariance formalism: Williamson decomposition, the
//! closed-form metrological power, the single-mode squeezing relation, and
//! classicality margins.
//!
//! Convention: mean d_k = Tr[ρ R^(k)], covariance
//! V_kl = Tr[ρ {R^(k)−d_k, R^(l)−d_l}] with the anticommutator and no 1/2,
//! so the vacuum covariance is the identity and physicality reads
//! V + iΩ ⪰ 0, i.e. all symplectic eigenvalues ν_n ≥ 1.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64 as C64;
use rand::Rng;

use crate::error::{Error, Result};
use crate::fock::{quadrature_ops, DensityMatrix, StateKind, StateSpec};
use crate::linalg::{hermitian_eig, spd_inv_sqrt, symmetric_eig, to_complex};
use crate::qfi::QfiMatrix;

/// The symplectic form ⊕_n [[0, 1], [−1, 0]] for the (x₁,p₁,…,x_N,p_N)
/// quadrature ordering.
pub fn omega(num_modes: usize) -> DMatrix<f64> {
    let mut m = DMatrix::zeros(2 * num_modes, 2 * num_modes);
    for n in 0..num_modes {
        m[(2 * n, 2 * n + 1)] = 1.0;
        m[(2 * n + 1, 2 * n)] = -1.0;
    }
    m
}

pub fn symplectic_deviation(s: &DMatrix<f64>) -> f64 {
    let n = s.nrows() / 2;
    let om = omega(n);
    (s * &om * s.transpose() - om).norm()
}

/// Mean vector and covariance matrix of a Gaussian state.
#[derive(Clone, Debug)]
pub struct GaussianState {
    mean: DVector<f64>,
    cov: DMatrix<f64>,
}

pub const PHYSICALITY_TOL: f64 = 1e-8;

impl GaussianState {
    pub fn new(mean: DVector<f64>, cov: DMatrix<f64>) -> Result<Self> {
        let dim = mean.len();
        if dim == 0 || dim % 2 != 0 || cov.nrows() != dim || cov.ncols() != dim {
            return Err(Error::UnphysicalCovariance(format!(
                "mean has length {dim}, covariance is {}x{}",
                cov.nrows(),
                cov.ncols()
            )));
        }
        let sym_dev = (&cov - cov.transpose()).norm();
        if sym_dev > 1e-10 {
            return Err(Error::UnphysicalCovariance(format!(
                "covariance asymmetric by {sym_dev:.3e}"
            )));
        }
        let state = Self { mean, cov };
        let nus = state.symplectic_eigenvalues()?;
        let nu_min = nus.last().copied().unwrap_or(0.0);
        if nu_min < 1.0 - PHYSICALITY_TOL {
            return Err(Error::UnphysicalCovariance(format!(
                "min symplectic eigenvalue {nu_min:.8} < 1"
            )));
        }
        Ok(state)
    }

    pub fn vacuum(num_modes: usize) -> Self {
        Self {
            mean: DVector::zeros(2 * num_modes),
            cov: DMatrix::identity(2 * num_modes, 2 * num_modes),
        }
    }

    pub fn num_modes(&self) -> usize {
        self.mean.len() / 2
    }

    pub fn mean(&self) -> &DVector<f64> {
        &self.mean
    }

    pub fn cov(&self) -> &DMatrix<f64> {
        &self.cov
    }

    /// Symplectic spectrum, descending.
    pub fn symplectic_eigenvalues(&self) -> Result<Vec<f64>> {
        symplectic_eigenvalues(&self.cov)
    }

    /// n̄ = (Tr V − 2N)/4 + ‖d‖²/2.
    pub fn mean_photon(&self) -> f64 {
        let n = self.num_modes() as f64;
        (self.cov.trace() - 2.0 * n) / 4.0 + self.mean.norm_squared() / 2.0
    }

    /// First and second moments extracted from a Fock-space state.
    pub fn from_fock(rho: &DensityMatrix) -> Result<Self> {
        let quads = quadrature_ops(rho.basis())?;
        let k2 = quads.len();
        let mut mean = DVector::zeros(k2);
        for (k, q) in quads.iter().enumerate() {
            mean[k] = rho.expectation(q).re;
        }
        let mut cov = DMatrix::zeros(k2, k2);
        for k in 0..k2 {
            for l in k..k2 {
                let anti = rho.expectation(&(&quads[k] * &quads[l] + &quads[l] * &quads[k])).re;
                let v = anti - 2.0 * mean[k] * mean[l];
                cov[(k, l)] = v;
                cov[(l, k)] = v;
            }
        }
        Self::new(mean, cov)
    }

    /// Closed-form moments for the Gaussian state families.
    pub fn from_spec(spec: &StateSpec) -> Result<Self> {
        spec.validate()?;
        match &spec.kind {
            StateKind::Vacuum { modes } => Ok(Self::vacuum(*modes)),
            StateKind::Coherent { alphas } => {
                let n = alphas.len();
                let mut mean = DVector::zeros(2 * n);
                for (k, a) in alphas.iter().enumerate() {
                    mean[2 * k] = 2f64.sqrt() * a.re;
                    mean[2 * k + 1] = 2f64.sqrt() * a.im;
                }
                Ok(Self { mean, cov: DMatrix::identity(2 * n, 2 * n) })
            }
            StateKind::Thermal { nbar } => {
                let nu = 2.0 * nbar + 1.0;
                Ok(Self {
                    mean: DVector::zeros(2),
                    cov: DMatrix::identity(2, 2) * nu,
                })
            }
            StateKind::SqueezedVacuum { xi } => {
                Ok(Self { mean: DVector::zeros(2), cov: squeezed_cov(*xi, 0.0) })
            }
            StateKind::SqueezedThermal { xi, nbar } => {
                Ok(Self { mean: DVector::zeros(2), cov: squeezed_cov(*xi, *nbar) })
            }
            StateKind::SqueezedCoherent { xi, alpha } => {
                // ⟨â⟩ on S(ξ)|α⟩ is α cosh r − α* e^{iθ} sinh r
                let r = xi.norm();
                let phase = if r > 0.0 { *xi / r } else { C64::new(1.0, 0.0) };
                let a = alpha * r.cosh() - alpha.conj() * phase * r.sinh();
                let mean = DVector::from_vec(vec![2f64.sqrt() * a.re, 2f64.sqrt() * a.im]);
                Self::new(mean, squeezed_cov(*xi, 0.0))
            }
            other => Err(Error::InvalidSpec(format!(
                "state kind {} has no Gaussian description",
                other.name()
            ))),
        }
    }
}

/// Covariance of S(ξ) τ(n̄) S†(ξ) in the crate squeeze convention
/// (real ξ = r squeezes x̂): R(θ/2) diag(νe^{−2r}, νe^{2r}) R(θ/2)ᵀ.
pub fn squeezed_cov(xi: C64, nbar: f64) -> DMatrix<f64> {
    let r = xi.norm();
    let nu = 2.0 * nbar + 1.0;
    let half = xi.arg() / 2.0;
    let rot = DMatrix::from_row_slice(2, 2, &[half.cos(), -half.sin(), half.sin(), half.cos()]);
    let d = DMatrix::from_diagonal(&DVector::from_vec(vec![
        nu * (-2.0 * r).exp(),
        nu * (2.0 * r).exp(),
    ]));
    &rot * d * rot.transpose()
}

fn symplectic_eigenvalues(v: &DMatrix<f64>) -> Result<Vec<f64>> {
    let n = v.nrows() / 2;
    let om = omega(n);
    // eigenvalues of iΩV come in ±ν pairs
    let m = to_complex(&(&om * v)).map(|z| z * C64::new(0.0, 1.0));
    // iΩV is not Hermitian, but V^{1/2}(iΩ)V^{1/2} is and shares its spectrum
    let (sqrt_v, _) = spd_inv_sqrt(v).map_err(|_| {
        Error::UnphysicalCovariance("covariance is not positive definite".into())
    })?;
    let _ = m;
    let herm = to_complex(&(&sqrt_v * &om * &sqrt_v)).map(|z| z * C64::new(0.0, 1.0));
    let eig = hermitian_eig(&herm)?;
    let mut nus: Vec<f64> = eig.values.iter().copied().filter(|&x| x > 0.0).collect();
    nus.sort_by(|a, b| b.partial_cmp(a).unwrap());
    if nus.len() != n {
        return Err(Error::UnphysicalCovariance(format!(
            "expected {n} positive symplectic eigenvalues, found {}",
            nus.len()
        )));
    }
    Ok(nus)
}

/// Williamson decomposition V = S · diag(ν₁,ν₁,…,ν_N,ν_N) · Sᵀ with
/// S Ω Sᵀ = Ω and ν sorted descending.
#[derive(Clone, Debug)]
pub struct WilliamsonData {
    pub s: DMatrix<f64>,
    pub nus: Vec<f64>,
}

impl WilliamsonData {
    pub fn diag(&self) -> DMatrix<f64> {
        let n = self.nus.len();
        let mut d = DMatrix::zeros(2 * n, 2 * n);
        for (k, &nu) in self.nus.iter().enumerate() {
            d[(2 * k, 2 * k)] = nu;
            d[(2 * k + 1, 2 * k + 1)] = nu;
        }
        d
    }
}

/// Compute the Williamson normal form of a physical covariance matrix.
///
/// Algorithm: M := V^{-1/2} Ω V^{-1/2} is real antisymmetric; the
/// eigenvectors of the Hermitian iM at its positive eigenvalues κ_n = 1/ν_n
/// give an orthogonal Q bringing M to ⊕ κ_n Ω₂, and S := V^{1/2} Q D^{-1/2}.
/// Eigenvector phases are fixed deterministically, so the representative is
/// reproducible; the residual freedom S → S·O (orthogonal symplectic O
/// commuting with D) is the gauge the formulas downstream must not see.
pub fn williamson(v: &DMatrix<f64>) -> Result<WilliamsonData> {
    let n = v.nrows() / 2;
    if v.nrows() != v.ncols() || v.nrows() == 0 || v.nrows() % 2 != 0 {
        return Err(Error::UnphysicalCovariance("covariance must be 2N×2N".into()));
    }
    let (sqrt_v, inv_sqrt_v) = spd_inv_sqrt(v)
        .map_err(|_| Error::UnphysicalCovariance("covariance is not positive definite".into()))?;
    let om = omega(n);
    let m = &inv_sqrt_v * &om * &inv_sqrt_v;
    let herm = to_complex(&m).map(|z| z * C64::new(0.0, 1.0));
    let eig = hermitian_eig(&herm)?;
    // positive eigenvalues κ = 1/ν ascending ⇒ ν descending
    let mut pos: Vec<(f64, usize)> = eig
        .values
        .iter()
        .enumerate()
        .filter(|(_, &k)| k > 0.0)
        .map(|(i, &k)| (k, i))
        .collect();
    if pos.len() != n {
        return Err(Error::UnphysicalCovariance(format!(
            "expected {n} positive eigenvalues of iM, found {}",
            pos.len()
        )));
    }
    pos.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    let mut q = DMatrix::zeros(2 * n, 2 * n);
    let mut nus = Vec::with_capacity(n);
    for (slot, &(kappa, col)) in pos.iter().enumerate() {
        let nu = 1.0 / kappa;
        nus.push(nu);
        let u = eig.vectors.column(col);
        // u = (x − iy)/√2 with Mx = −κy, My = κx
        let sqrt2 = 2f64.sqrt();
        for row in 0..2 * n {
            q[(row, 2 * slot)] = sqrt2 * u[row].re;
            q[(row, 2 * slot + 1)] = -sqrt2 * u[row].im;
        }
    }
    let mut d_inv_sqrt = DMatrix::zeros(2 * n, 2 * n);
    for (k, &nu) in nus.iter().enumerate() {
        d_inv_sqrt[(2 * k, 2 * k)] = 1.0 / nu.sqrt();
        d_inv_sqrt[(2 * k + 1, 2 * k + 1)] = 1.0 / nu.sqrt();
    }
    let s = &sqrt_v * q * d_inv_sqrt;
    let data = WilliamsonData { s, nus };
    let sym_dev = symplectic_deviation(&data.s);
    if sym_dev > 1e-7 {
        return Err(Error::Numerics(format!(
            "Williamson factor fails symplectic check by {sym_dev:.3e}"
        )));
    }
    let recon = &data.s * data.diag() * data.s.transpose();
    let recon_dev = (recon - v).norm();
    if recon_dev > 1e-7 * (1.0 + v.norm()) {
        return Err(Error::Numerics(format!(
            "Williamson reconstruction off by {recon_dev:.3e}"
        )));
    }
    if data.nus.iter().any(|&nu| nu < 1.0 - PHYSICALITY_TOL) {
        return Err(Error::UnphysicalCovariance(format!(
            "min symplectic eigenvalue {:.8} < 1",
            data.nus.last().unwrap()
        )));
    }
    Ok(data)
}

/// The Gaussian quadrature QFI matrix F = 2 Ωᵀ V⁻¹ Ω.
///
/// Equal to 2 S D⁻¹ Sᵀ for any Williamson representative (the symplectic
/// identity S⁻¹ = Ω Sᵀ Ωᵀ makes the two forms coincide), so it is manifestly
/// gauge independent, reduces to (2/ν)·1 for thermal states and to 2V for
/// pure ones, and matches the spectral Fock pipeline entrywise.
pub fn gaussian_qfi_matrix(v: &DMatrix<f64>) -> Result<QfiMatrix> {
    let data = williamson(v)?;
    let _ = &data; // physicality gate
    let n = v.nrows() / 2;
    let om = omega(n);
    let inv = v
        .clone()
        .try_inverse()
        .ok_or_else(|| Error::UnphysicalCovariance("covariance is singular".into()))?;
    let f = om.transpose() * inv * om * 2.0;
    QfiMatrix::from_matrix((&f + f.transpose()) * 0.5)
}

/// M = max{λ_max(F)/2 − 1, 0} from the covariance matrix alone.
pub fn gaussian_metrological_power(v: &DMatrix<f64>) -> Result<f64> {
    let f = gaussian_qfi_matrix(v)?;
    Ok((f.lambda_max() / 2.0 - 1.0).max(0.0))
}

/// Single-mode squeezing content G with M = e^{2G} − 1 whenever M > 0:
/// the log of the larger singular value of the Williamson S, discounted by
/// the thermal radius ½·log ν.
pub fn single_mode_squeezing_g(v: &DMatrix<f64>) -> Result<f64> {
    if v.nrows() != 2 {
        return Err(Error::InvalidSpec(
            "squeezing content G is defined here for single-mode covariances".into(),
        ));
    }
    let data = williamson(v)?;
    let svd = data.s.clone().svd(false, false);
    let s_max = svd.singular_values.max();
    Ok(s_max.ln() - 0.5 * data.nus[0].ln())
}

/// Classicality verdict with its margin λ_min(V) − 1.
#[derive(Clone, Debug)]
pub struct Classicality {
    pub classical: bool,
    pub margin: f64,
    /// For multimode input the λ_min(V) ≥ 1 criterion is a
    /// standard-literature extension, not the single-mode equivalence.
    pub scope: &'static str,
}

pub fn gaussian_classicality(v: &DMatrix<f64>) -> Result<Classicality> {
    williamson(v)?;
    let eig = symmetric_eig(v)?;
    let margin = eig.values[v.nrows() - 1] - 1.0;
    Ok(Classicality {
        classical: margin >= -PHYSICALITY_TOL,
        margin,
        scope: if v.nrows() == 2 { "single-mode equivalence" } else { "standard-literature extension" },
    })
}

/// V → S V Sᵀ, d → S d + shift.
pub fn apply_symplectic(
    g: &GaussianState,
    s_op: &DMatrix<f64>,
    shift: &DVector<f64>,
) -> Result<GaussianState> {
    let dev = symplectic_deviation(s_op);
    if dev > 1e-8 {
        return Err(Error::NotSymplectic(dev));
    }
    let mean = s_op * g.mean() + shift;
    let cov = s_op * g.cov() * s_op.transpose();
    GaussianState::new(mean, (&cov + cov.transpose()) * 0.5)
}

/// Symplectic matrix of a single-mode squeeze in the crate convention,
/// embedded at `mode` of an N-mode system.
pub fn squeeze_symplectic(num_modes: usize, mode: usize, xi: C64) -> DMatrix<f64> {
    let r = xi.norm();
    let half = xi.arg() / 2.0;
    let rot = DMatrix::from_row_slice(2, 2, &[half.cos(), -half.sin(), half.sin(), half.cos()]);
    let d = DMatrix::from_diagonal(&DVector::from_vec(vec![(-r).exp(), r.exp()]));
    let block = &rot * d * rot.transpose();
    let mut s = DMatrix::identity(2 * num_modes, 2 * num_modes);
    for i in 0..2 {
        for j in 0..2 {
            s[(2 * mode + i, 2 * mode + j)] = block[(i, j)];
        }
    }
    s
}

/// Symplectic matrix of a beam splitter on `(mode_a, mode_b)`: the
/// realification of its 2×2 mixing block, matching
/// [`crate::linopt::PassiveUnitary::quadrature_rotation`].
pub fn beam_splitter_symplectic(
    num_modes: usize,
    modes: (usize, usize),
    theta: f64,
    phi: f64,
) -> DMatrix<f64> {
    let mut w = DMatrix::<C64>::identity(num_modes, num_modes);
    let (a, b) = modes;
    let e = C64::new(0.0, phi).exp();
    w[(a, a)] = C64::new(theta.cos(), 0.0);
    w[(a, b)] = e * theta.sin();
    w[(b, a)] = -e.conj() * theta.sin();
    w[(b, b)] = C64::new(theta.cos(), 0.0);
    realify_adjoint(&w)
}

/// Realification of W† (each entry a+bi becomes [[a, −b], [b, a]]).
pub fn realify_adjoint(w: &DMatrix<C64>) -> DMatrix<f64> {
    let n = w.nrows();
    let wd = w.adjoint();
    let mut o = DMatrix::zeros(2 * n, 2 * n);
    for r in 0..n {
        for c in 0..n {
            let z = wd[(r, c)];
            o[(2 * r, 2 * c)] = z.re;
            o[(2 * r, 2 * c + 1)] = -z.im;
            o[(2 * r + 1, 2 * c)] = z.im;
            o[(2 * r + 1, 2 * c + 1)] = z.re;
        }
    }
    o
}

/// Random orthogonal symplectic matrix (realified Haar-ish unitary); these
/// are the gauge freedoms of the Williamson representative for degenerate
/// symplectic spectra, and per-mode rotations in the nondegenerate case.
pub fn random_orthogonal_symplectic<R: Rng>(num_modes: usize, rng: &mut R) -> DMatrix<f64> {
    realify_adjoint(&crate::linopt::random_unitary(num_modes, rng))
}

/// Random per-mode phase rotations; always a valid Williamson gauge.
pub fn random_mode_rotations<R: Rng>(num_modes: usize, rng: &mut R) -> DMatrix<f64> {
    let mut s = DMatrix::identity(2 * num_modes, 2 * num_modes);
    for mode in 0..num_modes {
        let t: f64 = rng.random_range(0.0..std::f64::consts::TAU);
        s[(2 * mode, 2 * mode)] = t.cos();
        s[(2 * mode, 2 * mode + 1)] = -t.sin();
        s[(2 * mode + 1, 2 * mode)] = t.sin();
        s[(2 * mode + 1, 2 * mode + 1)] = t.cos();
    }
    s
}
