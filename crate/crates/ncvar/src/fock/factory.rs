use nalgebra::{DMatrix, DVector};
use num_complex::Complex64 as C64;

use super::basis::FockBasis;
use super::operators::{
    annihilation_block, displacement_generator, squeeze_generator, tensor_pure,
};
use super::state::{DensityMatrix, FockState};
use crate::error::{Error, Result};

/// Construction leakage (norm or trace deficit of the truncated analytic
/// form) above which the factory refuses to build.
pub const FACTORY_LEAKAGE_TOL: f64 = 1e-8;

/// State families of the test corpus.
///
/// Squeezing parameters follow the crate convention: `xi = r·e^{iθ}` with
/// real `r > 0` squeezing the quadrature at phase-space angle `θ/2`
/// (x̂ for θ = 0).
#[derive(Clone, Debug, PartialEq)]
pub enum StateKind {
    Vacuum { modes: usize },
    Coherent { alphas: Vec<C64> },
    Fock { n: usize },
    /// (|α⟩ + sign·|−α⟩)/√N with N = 2 + 2·sign·e^{−2|α|²}.
    Cat { alpha: C64, sign: i8 },
    /// ρ_Γ = N_Γ⁻¹[|α⟩⟨α| + |−α⟩⟨−α| + Γ(|α⟩⟨−α| + |−α⟩⟨α|)].
    DecoheredCat { alpha: C64, gamma: f64 },
    /// (|n,0⟩ + |0,n⟩)/√2.
    Noon { n: usize },
    /// |α_1…α_N⟩ + sign·|−α_1…−α_N⟩, normalized.
    EntangledCoherent { alphas: Vec<C64>, sign: i8 },
    SqueezedVacuum { xi: C64 },
    Thermal { nbar: f64 },
    SqueezedThermal { xi: C64, nbar: f64 },
    /// S(ξ)|α⟩.
    SqueezedCoherent { xi: C64, alpha: C64 },
    /// â†|α⟩, normalized.
    PhotonAddedCoherent { alpha: C64 },
    /// (|n⟩ + |α⟩), normalized.
    FockPlusCoherent { n: usize, alpha: C64 },
    /// Convex combination of same-shape components.
    Mixture { components: Vec<(f64, StateKind)> },
}

impl StateKind {
    pub fn num_modes(&self) -> usize {
        match self {
            StateKind::Vacuum { modes } => *modes,
            StateKind::Coherent { alphas } => alphas.len().max(1),
            StateKind::Noon { .. } => 2,
            StateKind::EntangledCoherent { alphas, .. } => alphas.len().max(1),
            StateKind::Mixture { components } => {
                components.first().map(|(_, k)| k.num_modes()).unwrap_or(1)
            }
            _ => 1,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            StateKind::Vacuum { .. } => "vacuum",
            StateKind::Coherent { .. } => "coherent",
            StateKind::Fock { .. } => "fock",
            StateKind::Cat { .. } => "cat",
            StateKind::DecoheredCat { .. } => "decohered_cat",
            StateKind::Noon { .. } => "noon",
            StateKind::EntangledCoherent { .. } => "entangled_coherent",
            StateKind::SqueezedVacuum { .. } => "squeezed_vacuum",
            StateKind::Thermal { .. } => "thermal",
            StateKind::SqueezedThermal { .. } => "squeezed_thermal",
            StateKind::SqueezedCoherent { .. } => "squeezed_coherent",
            StateKind::PhotonAddedCoherent { .. } => "photon_added_coherent",
            StateKind::FockPlusCoherent { .. } => "fock_plus_coherent",
            StateKind::Mixture { .. } => "mixture",
        }
    }

    /// Classical kinds: statistical mixtures of coherent states.
    pub fn is_classical(&self) -> bool {
        match self {
            StateKind::Vacuum { .. } | StateKind::Coherent { .. } | StateKind::Thermal { .. } => {
                true
            }
            StateKind::Mixture { components } => {
                components.iter().all(|(_, k)| k.is_classical())
            }
            _ => false,
        }
    }

    fn validate(&self) -> Result<()> {
        match self {
            StateKind::Vacuum { modes } if *modes == 0 => {
                Err(Error::InvalidSpec("vacuum needs at least one mode".into()))
            }
            StateKind::Coherent { alphas } | StateKind::EntangledCoherent { alphas, .. }
                if alphas.is_empty() =>
            {
                Err(Error::InvalidSpec("coherent family needs at least one amplitude".into()))
            }
            StateKind::Cat { sign, .. } | StateKind::EntangledCoherent { sign, .. }
                if ![-1i8, 1].contains(sign) =>
            {
                Err(Error::InvalidSpec("sign must be +1 or -1".into()))
            }
            StateKind::DecoheredCat { gamma, .. } if gamma.abs() > 1.0 + 1e-12 => {
                Err(Error::InvalidSpec(format!("|Γ| must be ≤ 1, got {gamma}")))
            }
            StateKind::Noon { n } if *n == 0 => {
                Err(Error::InvalidSpec("NOON state needs n ≥ 1".into()))
            }
            StateKind::Thermal { nbar } | StateKind::SqueezedThermal { nbar, .. }
                if *nbar < 0.0 =>
            {
                Err(Error::InvalidSpec(format!("thermal occupation must be ≥ 0, got {nbar}")))
            }
            StateKind::Mixture { components } => {
                if components.is_empty() {
                    return Err(Error::InvalidSpec("mixture needs components".into()));
                }
                let modes = components[0].1.num_modes();
                let mut total = 0.0;
                for (w, kind) in components {
                    if *w < 0.0 {
                        return Err(Error::InvalidSpec(format!("mixture weight {w} < 0")));
                    }
                    if kind.num_modes() != modes {
                        return Err(Error::InvalidSpec(
                            "mixture components must share the mode count".into(),
                        ));
                    }
                    kind.validate()?;
                    total += w;
                }
                if (total - 1.0).abs() > 1e-9 {
                    return Err(Error::InvalidSpec(format!(
                        "mixture weights sum to {total}, expected 1"
                    )));
                }
                Ok(())
            }
            _ => Ok(()),
        }
    }
}

/// Declarative description of a state: family plus per-mode cutoffs.
#[derive(Clone, Debug, PartialEq)]
pub struct StateSpec {
    pub kind: StateKind,
    pub cutoffs: Vec<usize>,
}

impl StateSpec {
    pub fn new(kind: StateKind, cutoffs: Vec<usize>) -> Self {
        Self { kind, cutoffs }
    }

    /// Single shared cutoff across all modes.
    pub fn uniform(kind: StateKind, cutoff: usize) -> Self {
        let modes = kind.num_modes();
        Self { kind, cutoffs: vec![cutoff; modes] }
    }

    pub fn num_modes(&self) -> usize {
        self.kind.num_modes()
    }

    pub fn validate(&self) -> Result<()> {
        self.kind.validate()?;
        if self.cutoffs.len() != self.kind.num_modes() {
            return Err(Error::InvalidSpec(format!(
                "{} cutoffs given for a {}-mode state",
                self.cutoffs.len(),
                self.kind.num_modes()
            )));
        }
        if let StateKind::Fock { n } = &self.kind {
            if *n >= self.cutoffs[0] {
                return Err(Error::InvalidSpec(format!(
                    "Fock level {n} needs cutoff > {n}"
                )));
            }
        }
        if let StateKind::Noon { n } = &self.kind {
            if self.cutoffs.iter().any(|&d| d <= *n) {
                return Err(Error::InvalidSpec(format!(
                    "NOON level {n} needs cutoffs > {n}"
                )));
            }
        }
        FockBasis::new(&self.cutoffs).map(|_| ())
    }

    pub fn basis(&self) -> Result<FockBasis> {
        FockBasis::new(&self.cutoffs)
    }

    pub fn widened(&self, delta: usize) -> Self {
        Self {
            kind: self.kind.clone(),
            cutoffs: self.cutoffs.iter().map(|&d| d + delta).collect(),
        }
    }
}

/// Heuristic cutoff giving construction leakage comfortably below 1e-8.
pub fn default_cutoff(kind: &StateKind) -> usize {
    fn for_mean(nbar: f64) -> usize {
        let n = nbar.max(0.1);
        (n + 8.0 * n.sqrt() + 12.0).ceil() as usize
    }
    match kind {
        StateKind::Vacuum { .. } => 8,
        StateKind::Coherent { alphas } => {
            alphas.iter().map(|a| for_mean(a.norm_sqr())).max().unwrap_or(8)
        }
        StateKind::Fock { n } => n + 12,
        StateKind::Cat { alpha, .. } | StateKind::DecoheredCat { alpha, .. } => {
            for_mean(alpha.norm_sqr())
        }
        StateKind::Noon { n } => n + 8,
        StateKind::EntangledCoherent { alphas, .. } => {
            alphas.iter().map(|a| for_mean(a.norm_sqr())).max().unwrap_or(8)
        }
        StateKind::SqueezedVacuum { xi } => for_mean(xi.norm().sinh().powi(2)) + 16,
        StateKind::Thermal { nbar } => for_mean(4.0 * nbar),
        StateKind::SqueezedThermal { xi, nbar } => {
            for_mean((2.0 * nbar + 1.0) * xi.norm().sinh().powi(2) + nbar) + 24
        }
        StateKind::SqueezedCoherent { xi, alpha } => {
            for_mean(xi.norm().sinh().powi(2) + alpha.norm_sqr() * (2.0 * xi.norm()).exp()) + 16
        }
        StateKind::PhotonAddedCoherent { alpha } => for_mean(alpha.norm_sqr() + 1.0),
        StateKind::FockPlusCoherent { n, alpha } => {
            (*n + 12).max(for_mean(alpha.norm_sqr()))
        }
        StateKind::Mixture { components } => {
            components.iter().map(|(_, k)| default_cutoff(k)).max().unwrap_or(8)
        }
    }
}

/// A factory product: pure kinds keep their vector form.
#[derive(Clone, Debug)]
pub enum BuiltState {
    Pure(FockState),
    Mixed(DensityMatrix),
}

impl BuiltState {
    pub fn basis(&self) -> &FockBasis {
        match self {
            BuiltState::Pure(s) => s.basis(),
            BuiltState::Mixed(r) => r.basis(),
        }
    }

    pub fn density(&self) -> DensityMatrix {
        match self {
            BuiltState::Pure(s) => s.to_density(),
            BuiltState::Mixed(r) => r.clone(),
        }
    }

    pub fn as_pure(&self) -> Option<&FockState> {
        match self {
            BuiltState::Pure(s) => Some(s),
            BuiltState::Mixed(_) => None,
        }
    }

    pub fn is_pure(&self) -> bool {
        matches!(self, BuiltState::Pure(_))
    }
}

/// Unnormalized coherent-state coefficient vector; returns the truncated
/// vector together with the lost tail mass.
fn coherent_coeffs(alpha: C64, d: usize) -> (DVector<C64>, f64) {
    let mut c = DVector::zeros(d);
    c[0] = C64::new((-alpha.norm_sqr() / 2.0).exp(), 0.0);
    for k in 1..d {
        c[k] = c[k - 1] * alpha / C64::new((k as f64).sqrt(), 0.0);
    }
    let mass: f64 = c.iter().map(|z| z.norm_sqr()).sum();
    (c, (1.0 - mass).max(0.0))
}

fn check_leakage(leak: f64) -> Result<()> {
    if leak > FACTORY_LEAKAGE_TOL {
        return Err(Error::CutoffTooSmall { leakage: leak, tol: FACTORY_LEAKAGE_TOL });
    }
    Ok(())
}

fn pure_from_raw(basis: FockBasis, raw: DVector<C64>, enforce: bool) -> Result<FockState> {
    let norm = raw.norm();
    if norm <= 0.0 {
        return Err(Error::Numerics("state vector vanished under truncation".into()));
    }
    if enforce {
        check_leakage((1.0 - norm * norm).abs())?;
    }
    FockState::new(basis, raw.map(|z| z / norm), 1e-9)
}

/// Matrix exponential of a single-mode generator, built on a widened
/// internal cutoff and projected back, then applied to the state.
///
/// Exponentiating the generator truncated at the target cutoff distorts the
/// top of the ladder; the widened build keeps that error below the leakage
/// budget.
fn apply_single_mode_exp(
    raw: &DVector<C64>,
    d: usize,
    gen_at: impl Fn(usize) -> DMatrix<C64>,
) -> DVector<C64> {
    let wide = d + (d / 2).max(16);
    let u = gen_at(wide).exp();
    let mut v = DVector::zeros(wide);
    for k in 0..d {
        v[k] = raw[k];
    }
    let w = u * v;
    DVector::from_fn(d, |k, _| w[k])
}

fn apply_single_mode_exp_density(
    m: &DMatrix<C64>,
    d: usize,
    gen_at: impl Fn(usize) -> DMatrix<C64>,
) -> DMatrix<C64> {
    let wide = d + (d / 2).max(16);
    let u = gen_at(wide).exp();
    let mut big = DMatrix::zeros(wide, wide);
    for i in 0..d {
        for j in 0..d {
            big[(i, j)] = m[(i, j)];
        }
    }
    let rot = &u * big * u.adjoint();
    let mut out = DMatrix::zeros(d, d);
    for i in 0..d {
        for j in 0..d {
            out[(i, j)] = rot[(i, j)];
        }
    }
    let tr = out.trace().re;
    out.map(|z| z / tr)
}

fn thermal_weights(nbar: f64, d: usize) -> (DVector<f64>, f64) {
    let mut w = DVector::zeros(d);
    if nbar == 0.0 {
        w[0] = 1.0;
        return (w, 0.0);
    }
    let q = nbar / (1.0 + nbar);
    w[0] = 1.0 / (1.0 + nbar);
    for k in 1..d {
        w[k] = w[k - 1] * q;
    }
    let mass = w.sum();
    (w, (1.0 - mass).max(0.0))
}

/// Build the state described by `spec`, refusing when the truncated
/// construction loses more than [`FACTORY_LEAKAGE_TOL`] of its mass.
pub fn build_state(spec: &StateSpec) -> Result<BuiltState> {
    build_state_impl(spec, true)
}

/// Build without the leakage gate; used by diagnostics that must inspect
/// deliberately undersized cutoffs.
pub fn build_state_unchecked(spec: &StateSpec) -> Result<BuiltState> {
    build_state_impl(spec, false)
}

fn build_state_impl(spec: &StateSpec, enforce: bool) -> Result<BuiltState> {
    spec.validate()?;
    let basis = spec.basis()?;
    let d0 = spec.cutoffs[0];
    match &spec.kind {
        StateKind::Vacuum { .. } => Ok(BuiltState::Pure(FockState::vacuum(basis))),
        StateKind::Fock { n } => {
            Ok(BuiltState::Pure(FockState::basis_state(basis, &[*n])?))
        }
        StateKind::Coherent { alphas } => {
            let mut state: Option<FockState> = None;
            for (mode, &alpha) in alphas.iter().enumerate() {
                let (c, leak) = coherent_coeffs(alpha, spec.cutoffs[mode]);
                if enforce {
                    check_leakage(leak)?;
                }
                let mode_basis = FockBasis::single_mode(spec.cutoffs[mode])?;
                let s = pure_from_raw(mode_basis, c, false)?;
                state = Some(match state {
                    None => s,
                    Some(acc) => tensor_pure(&acc, &s)?,
                });
            }
            Ok(BuiltState::Pure(state.expect("at least one mode")))
        }
        StateKind::Cat { alpha, sign } => {
            let (cp, leak_p) = coherent_coeffs(*alpha, d0);
            let (cm, leak_m) = coherent_coeffs(-*alpha, d0);
            if enforce {
                check_leakage(leak_p.max(leak_m))?;
            }
            let raw = if *sign > 0 { cp + cm } else { cp - cm };
            Ok(BuiltState::Pure(pure_from_raw(basis, raw, false)?))
        }
        StateKind::DecoheredCat { alpha, gamma } => {
            let (cp, leak_p) = coherent_coeffs(*alpha, d0);
            let (cm, leak_m) = coherent_coeffs(-*alpha, d0);
            if enforce {
                check_leakage(leak_p.max(leak_m))?;
            }
            let g = C64::new(*gamma, 0.0);
            let raw = &cp * cp.adjoint()
                + &cm * cm.adjoint()
                + (&cp * cm.adjoint() + &cm * cp.adjoint()).map(|z| z * g);
            let tr = raw.trace().re;
            Ok(BuiltState::Mixed(DensityMatrix::new(basis, raw.map(|z| z / tr))?))
        }
        StateKind::Noon { n } => {
            let mut raw = DVector::zeros(basis.total_dim());
            let inv = C64::new(1.0 / 2f64.sqrt(), 0.0);
            raw[basis.index_of(&[*n, 0])?] = inv;
            raw[basis.index_of(&[0, *n])?] = inv;
            Ok(BuiltState::Pure(FockState::new(basis, raw, 1e-12)?))
        }
        StateKind::EntangledCoherent { alphas, sign } => {
            let mut plus: Option<DVector<C64>> = None;
            let mut minus: Option<DVector<C64>> = None;
            for (mode, &alpha) in alphas.iter().enumerate() {
                let (cp, leak_p) = coherent_coeffs(alpha, spec.cutoffs[mode]);
                let (cm, leak_m) = coherent_coeffs(-alpha, spec.cutoffs[mode]);
                if enforce {
                    check_leakage(leak_p.max(leak_m))?;
                }
                plus = Some(match plus {
                    None => cp,
                    Some(acc) => acc.kronecker(&cp),
                });
                minus = Some(match minus {
                    None => cm,
                    Some(acc) => acc.kronecker(&cm),
                });
            }
            let (plus, minus) = (plus.unwrap(), minus.unwrap());
            let raw = if *sign > 0 { plus + minus } else { plus - minus };
            Ok(BuiltState::Pure(pure_from_raw(basis, raw, false)?))
        }
        StateKind::SqueezedVacuum { xi } => {
            let mut raw = DVector::zeros(d0);
            raw[0] = C64::new(1.0, 0.0);
            let out = apply_single_mode_exp(&raw, d0, |d| squeeze_generator(d, *xi));
            let state = pure_from_raw(basis, out, enforce)?;
            Ok(BuiltState::Pure(state))
        }
        StateKind::SqueezedCoherent { xi, alpha } => {
            let wide = d0 + (d0 / 2).max(16);
            let (c, leak) = coherent_coeffs(*alpha, wide);
            if enforce {
                check_leakage(leak)?;
            }
            let u = squeeze_generator(wide, *xi).exp();
            let w = u * c;
            let raw = DVector::from_fn(d0, |k, _| w[k]);
            Ok(BuiltState::Pure(pure_from_raw(basis, raw, enforce)?))
        }
        StateKind::Thermal { nbar } => {
            let (w, leak) = thermal_weights(*nbar, d0);
            if enforce {
                check_leakage(leak)?;
            }
            let total = w.sum();
            let m = DMatrix::from_diagonal(&w.map(|x| C64::new(x / total, 0.0)));
            Ok(BuiltState::Mixed(DensityMatrix::new(basis, m)?))
        }
        StateKind::SqueezedThermal { xi, nbar } => {
            let (w, leak) = thermal_weights(*nbar, d0);
            if enforce {
                check_leakage(leak)?;
            }
            let total = w.sum();
            let tau = DMatrix::from_diagonal(&w.map(|x| C64::new(x / total, 0.0)));
            let m = apply_single_mode_exp_density(&tau, d0, |d| squeeze_generator(d, *xi));
            Ok(BuiltState::Mixed(DensityMatrix::new(basis, m)?))
        }
        StateKind::PhotonAddedCoherent { alpha } => {
            let (c, leak) = coherent_coeffs(*alpha, d0);
            if enforce {
                check_leakage(leak)?;
            }
            let raw = annihilation_block(d0).adjoint() * c;
            Ok(BuiltState::Pure(pure_from_raw(basis, raw, false)?))
        }
        StateKind::FockPlusCoherent { n, alpha } => {
            if *n >= d0 {
                return Err(Error::InvalidSpec(format!("Fock level {n} needs cutoff > {n}")));
            }
            let (mut raw, leak) = coherent_coeffs(*alpha, d0);
            if enforce {
                check_leakage(leak)?;
            }
            raw[*n] += C64::new(1.0, 0.0);
            Ok(BuiltState::Pure(pure_from_raw(basis, raw, false)?))
        }
        StateKind::Mixture { components } => {
            let mut acc: Option<DMatrix<C64>> = None;
            for (weight, kind) in components {
                let sub = StateSpec { kind: kind.clone(), cutoffs: spec.cutoffs.clone() };
                let rho = build_state_impl(&sub, enforce)?.density();
                let term = rho.matrix().map(|z| z * C64::new(*weight, 0.0));
                acc = Some(match acc {
                    None => term,
                    Some(m) => m + term,
                });
            }
            let m = acc.ok_or_else(|| Error::InvalidSpec("empty mixture".into()))?;
            Ok(BuiltState::Mixed(DensityMatrix::new(basis, m)?))
        }
    }
}

/// Displacement helper used by tests: D(β) applied to a built pure state.
pub fn displaced(state: &FockState, mode: usize, beta: C64) -> Result<FockState> {
    let basis = state.basis();
    basis.check_mode(mode)?;
    let block = displacement_generator(basis.cutoffs()[mode], beta).exp();
    let full = super::operators::embed_single_mode(basis, mode, &block);
    state.apply(&full)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::operators::{mean_photon, mean_photon_pure, quadrature_ops};

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn fock_mean_photon_exact() {
        let spec = StateSpec::uniform(StateKind::Fock { n: 1 }, 12);
        let s = build_state(&spec).unwrap();
        assert_eq!(mean_photon(&s.density()), 1.0);
    }

    #[test]
    fn coherent_is_ladder_eigenstate() {
        let spec = StateSpec::uniform(StateKind::Coherent { alphas: vec![c(0.7, 0.0)] }, 30);
        let s = build_state(&spec).unwrap();
        let psi = s.as_pure().unwrap();
        let a = super::super::operators::annihilation_op(psi.basis(), 0).unwrap();
        let ev = psi.expectation(&a);
        assert!((ev - c(0.7, 0.0)).norm() < 1e-8);
    }

    #[test]
    fn coherent_mean_x() {
        let spec = StateSpec::uniform(StateKind::Coherent { alphas: vec![c(1.0, 0.0)] }, 30);
        let s = build_state(&spec).unwrap();
        let psi = s.as_pure().unwrap();
        let r = quadrature_ops(psi.basis()).unwrap();
        assert!((psi.expectation(&r[0]).re - 2f64.sqrt()).abs() < 1e-8);
    }

    #[test]
    fn cat_mean_photon_matches_norm_ratio() {
        // n̄(even cat) = |α|²·N_o/N_e, n̄(odd cat) = |α|²·N_e/N_o
        for (sign, expect) in [(1i8, 1.0 * (1f64).tanh()), (-1, 1.0 / (1f64).tanh())] {
            let spec = StateSpec::uniform(StateKind::Cat { alpha: c(1.0, 0.0), sign }, 30);
            let s = build_state(&spec).unwrap();
            let nbar = mean_photon_pure(s.as_pure().unwrap());
            assert!((nbar - expect).abs() < 1e-8, "sign {sign}: {nbar} vs {expect}");
        }
    }

    #[test]
    fn decohered_cat_eigenvalues() {
        // eigenvalues N_e(1+Γ)/(2N_Γ), N_o(1−Γ)/(2N_Γ) on even/odd cats
        let (alpha, gamma) = (1.0f64, 0.5f64);
        let spec =
            StateSpec::uniform(StateKind::DecoheredCat { alpha: c(alpha, 0.0), gamma }, 30);
        let rho = build_state(&spec).unwrap().density();
        let eig = rho.eigendecomposition().unwrap();
        let e2a = (-2.0 * alpha * alpha).exp();
        let (ne, no, ng) = (2.0 + 2.0 * e2a, 2.0 - 2.0 * e2a, 2.0 + 2.0 * gamma * e2a);
        let expect_hi = ne * (1.0 + gamma) / (2.0 * ng);
        let expect_lo = no * (1.0 - gamma) / (2.0 * ng);
        assert!((eig.values[0] - expect_hi).abs() < 1e-10);
        assert!((eig.values[1] - expect_lo).abs() < 1e-10);
        assert!(eig.values[2].abs() < 1e-10);
    }

    #[test]
    fn decohered_cat_extremes_are_pure_cats() {
        for (gamma, sign) in [(1.0, 1i8), (-1.0, -1)] {
            let spec =
                StateSpec::uniform(StateKind::DecoheredCat { alpha: c(1.0, 0.0), gamma }, 25);
            let rho = build_state(&spec).unwrap().density();
            let cat = StateSpec::uniform(StateKind::Cat { alpha: c(1.0, 0.0), sign }, 25);
            let cat = build_state(&cat).unwrap();
            let proj = cat.as_pure().unwrap().to_density();
            let diff = rho.matrix() - proj.matrix();
            assert!(crate::linalg::frobenius(&diff) < 1e-10);
        }
    }

    #[test]
    fn squeezed_thermal_x_variance() {
        let spec = StateSpec::uniform(
            StateKind::SqueezedThermal { xi: c(0.8, 0.0), nbar: 0.5 },
            60,
        );
        let rho = build_state(&spec).unwrap().density();
        let r = quadrature_ops(rho.basis()).unwrap();
        let x = &r[0];
        let mean = rho.expectation(x).re;
        let second = rho.expectation(&(x * x)).re;
        let var = second - mean * mean;
        let expect = (-1.6f64).exp() * (2.0 * 0.5 + 1.0) / 2.0;
        assert!((var - expect).abs() < 1e-4, "{var} vs {expect}");
    }

    #[test]
    fn thermal_mean_photon() {
        let spec = StateSpec::uniform(StateKind::Thermal { nbar: 0.5 }, 40);
        let rho = build_state(&spec).unwrap().density();
        assert!((mean_photon(&rho) - 0.5).abs() < 1e-6);
    }

    #[test]
    fn factory_outputs_are_states() {
        let specs = vec![
            StateSpec::uniform(StateKind::Cat { alpha: c(1.0, 0.5), sign: -1 }, 30),
            StateSpec::uniform(StateKind::SqueezedVacuum { xi: c(0.5, 0.3) }, 40),
            StateSpec::uniform(StateKind::PhotonAddedCoherent { alpha: c(0.8, 0.0) }, 30),
            StateSpec::uniform(StateKind::FockPlusCoherent { n: 1, alpha: c(1.0, 0.0) }, 30),
            StateSpec::uniform(
                StateKind::Mixture {
                    components: vec![
                        (0.5, StateKind::Coherent { alphas: vec![c(1.0, 0.0)] }),
                        (0.5, StateKind::Coherent { alphas: vec![c(-1.0, 0.0)] }),
                    ],
                },
                30,
            ),
            StateSpec::new(
                StateKind::EntangledCoherent { alphas: vec![c(0.8, 0.0), c(0.8, 0.0)], sign: 1 },
                vec![16, 16],
            ),
        ];
        for spec in specs {
            let built = build_state(&spec).unwrap();
            let rho = built.density();
            rho.validate().unwrap();
            if let BuiltState::Pure(_) = built {
                assert!((rho.purity() - 1.0).abs() < 1e-8, "{}", spec.kind.name());
            }
        }
    }

    #[test]
    fn undersized_cutoff_rejected_with_leakage() {
        let spec = StateSpec::uniform(StateKind::Cat { alpha: c(3.0, 0.0), sign: 1 }, 12);
        match build_state(&spec) {
            Err(Error::CutoffTooSmall { leakage, .. }) => assert!(leakage > 1e-8),
            other => panic!("expected CutoffTooSmall, got {other:?}"),
        }
    }

    #[test]
    fn mixture_weights_validated() {
        let bad = StateSpec::uniform(
            StateKind::Mixture {
                components: vec![(0.7, StateKind::Vacuum { modes: 1 })],
            },
            10,
        );
        assert!(build_state(&bad).is_err());
    }

    #[test]
    fn displaced_vacuum_is_coherent() {
        let spec = StateSpec::uniform(StateKind::Vacuum { modes: 1 }, 30);
        let vac = build_state(&spec).unwrap();
        let moved = displaced(vac.as_pure().unwrap(), 0, c(0.5, 0.0)).unwrap();
        let coh = StateSpec::uniform(StateKind::Coherent { alphas: vec![c(0.5, 0.0)] }, 30);
        let coh = build_state(&coh).unwrap();
        let overlap = moved.inner(coh.as_pure().unwrap()).norm();
        assert!((overlap - 1.0).abs() < 1e-8);
    }
}
