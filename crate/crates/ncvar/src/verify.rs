//! Named check suites over the whole library: per-module invariant suites
//! for the CLI `verify` command and the ten acceptance criteria used as the
//! exit gate of the test suite. Every tolerance is pinned here.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64 as C64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::estimation::{simulate_and_estimate, HomodyneExperiment};
use crate::fock::{
    build_state, leakage_report_for_spec, mean_photon, quadrature_ops, tensor_density,
    with_increased_cutoff, BuiltState, DensityMatrix, FockBasis, FockState, StateKind, StateSpec,
};
use crate::gaussian::{
    gaussian_metrological_power, random_mode_rotations, squeezed_cov, williamson, GaussianState,
};
use crate::linopt::{
    coherent_folding_unitary, LinOpticalUnitary, PassiveUnitary, PhiLChannel,
};
use crate::measures::{monotonicity_audit, q_convex_roof_upper, q_pure, QPure, RoofOptions};
use crate::phase::{
    asymptotic_ratio, heisenberg_sweep, m_phase_alpha, m_phase_series, number_qfi,
    sufficient_alpha, sql_witness, PhaseOptimizerParams,
};
use crate::qfi::{
    metrological_power, qfi_matrix, spectral_qfi, x_mu, QuadratureDirection, DEFAULT_PAIR_TOL,
};
use crate::sweeps::{m_sweep_rows, q_sweep_rows};

/// One named check with its observed value and acceptance window.
#[derive(Clone, Debug)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub observed: f64,
    pub expected: String,
    pub tolerance: f64,
}

impl Check {
    pub fn close(name: impl Into<String>, observed: f64, expected: f64, tol: f64) -> Self {
        Self {
            name: name.into(),
            passed: (observed - expected).abs() <= tol,
            observed,
            expected: format!("{expected:.9}"),
            tolerance: tol,
        }
    }

    pub fn at_most(name: impl Into<String>, observed: f64, bound: f64) -> Self {
        Self {
            name: name.into(),
            passed: observed <= bound,
            observed,
            expected: format!("<= {bound:.3e}"),
            tolerance: bound,
        }
    }

    pub fn at_least(name: impl Into<String>, observed: f64, bound: f64) -> Self {
        Self {
            name: name.into(),
            passed: observed >= bound,
            observed,
            expected: format!(">= {bound:.3e}"),
            tolerance: bound,
        }
    }

    pub fn in_band(name: impl Into<String>, observed: f64, lo: f64, hi: f64) -> Self {
        Self {
            name: name.into(),
            passed: observed >= lo && observed <= hi,
            observed,
            expected: format!("[{lo:.4}, {hi:.4}]"),
            tolerance: hi - lo,
        }
    }

    pub fn flag(name: impl Into<String>, passed: bool) -> Self {
        Self {
            name: name.into(),
            passed,
            observed: if passed { 1.0 } else { 0.0 },
            expected: "pass".into(),
            tolerance: 0.0,
        }
    }
}

#[derive(Clone, Debug)]
pub struct SuiteResult {
    pub suite: String,
    pub checks: Vec<Check>,
    pub seed: u64,
}

impl SuiteResult {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

fn c64(re: f64) -> C64 {
    C64::new(re, 0.0)
}

fn fock_spec(n: usize, cutoff: usize) -> StateSpec {
    StateSpec::uniform(StateKind::Fock { n }, cutoff)
}

fn cat_spec(alpha: f64, cutoff: usize) -> StateSpec {
    StateSpec::uniform(StateKind::Cat { alpha: c64(alpha), sign: 1 }, cutoff)
}

// ---------------------------------------------------------------------------
// randomized helpers
// ---------------------------------------------------------------------------

/// Random density matrix of bounded rank on a given basis.
fn random_density<R: Rng>(basis: &FockBasis, rank: usize, rng: &mut R) -> DensityMatrix {
    use rand_distr::{Distribution, StandardNormal};
    let d = basis.total_dim();
    let mut m = DMatrix::<C64>::zeros(d, d);
    let weights: Vec<f64> = (0..rank).map(|_| rng.random_range(0.05..1.0)).collect();
    let total: f64 = weights.iter().sum();
    for w in &weights {
        let raw = DVector::from_fn(d, |_, _| {
            let re: f64 = StandardNormal.sample(rng);
            let im: f64 = StandardNormal.sample(rng);
            C64::new(re, im)
        });
        let norm = raw.norm();
        let v = raw.map(|z| z / norm);
        m += (&v * v.adjoint()).map(|z| z * c64(w / total));
    }
    let m = (&m + m.adjoint()).map(|z| z * c64(0.5));
    DensityMatrix::new(basis.clone(), m).expect("random density is valid")
}

fn random_pure<R: Rng>(basis: &FockBasis, rng: &mut R) -> FockState {
    use rand_distr::{Distribution, StandardNormal};
    let d = basis.total_dim();
    let raw = DVector::from_fn(d, |_, _| {
        let re: f64 = StandardNormal.sample(rng);
        let im: f64 = StandardNormal.sample(rng);
        C64::new(re, im)
    });
    let norm = raw.norm();
    FockState::new(basis.clone(), raw.map(|z| z / norm), 1e-9).expect("unit vector")
}

/// Random pure state with total occupation at most `max_total`, so
/// number-conserving mixing keeps it away from the truncation edge and
/// truncated-operator identities hold exactly on it.
fn random_pure_low<R: Rng>(basis: &FockBasis, max_total: usize, rng: &mut R) -> FockState {
    use rand_distr::{Distribution, StandardNormal};
    let d = basis.total_dim();
    let raw = DVector::from_fn(d, |idx, _| {
        if basis.occupation(idx).iter().sum::<usize>() > max_total {
            C64::new(0.0, 0.0)
        } else {
            let re: f64 = StandardNormal.sample(rng);
            let im: f64 = StandardNormal.sample(rng);
            C64::new(re, im)
        }
    });
    let norm = raw.norm();
    FockState::new(basis.clone(), raw.map(|z| z / norm), 1e-9).expect("unit vector")
}

fn random_density_low<R: Rng>(
    basis: &FockBasis,
    max_total: usize,
    rank: usize,
    rng: &mut R,
) -> DensityMatrix {
    let d = basis.total_dim();
    let mut m = DMatrix::<C64>::zeros(d, d);
    let weights: Vec<f64> = (0..rank).map(|_| rng.random_range(0.05..1.0)).collect();
    let total: f64 = weights.iter().sum();
    for w in &weights {
        let v = random_pure_low(basis, max_total, rng);
        m += (v.amplitudes() * v.amplitudes().adjoint()).map(|z| z * c64(w / total));
    }
    let m = (&m + m.adjoint()).map(|z| z * c64(0.5));
    DensityMatrix::new(basis.clone(), m).expect("random density is valid")
}

fn random_hermitian<R: Rng>(d: usize, rng: &mut R) -> DMatrix<C64> {
    use rand_distr::{Distribution, StandardNormal};
    let g = DMatrix::from_fn(d, d, |_, _| {
        let re: f64 = StandardNormal.sample(rng);
        let im: f64 = StandardNormal.sample(rng);
        C64::new(re, im)
    });
    (&g + g.adjoint()).map(|z| z * c64(0.5))
}

fn random_direction<R: Rng>(dim: usize, rng: &mut R) -> QuadratureDirection {
    use rand_distr::{Distribution, StandardNormal};
    loop {
        let v = DVector::from_fn(dim, |_, _| {
            let x: f64 = StandardNormal.sample(rng);
            x
        });
        if v.norm() > 1e-6 {
            return QuadratureDirection::from_unnormalized(v).unwrap();
        }
    }
}

/// Random classical spec usable as a channel ancilla.
fn random_classical_ancilla<R: Rng>(rng: &mut R, cutoff: usize) -> StateSpec {
    match rng.random_range(0..3u8) {
        0 => StateSpec::uniform(StateKind::Vacuum { modes: 1 }, cutoff),
        1 => {
            let re = rng.random_range(-0.6..0.6);
            let im = rng.random_range(-0.6..0.6);
            StateSpec::uniform(StateKind::Coherent { alphas: vec![C64::new(re, im)] }, cutoff)
        }
        _ => {
            let nbar = rng.random_range(0.05..0.4);
            StateSpec::uniform(StateKind::Thermal { nbar }, cutoff)
        }
    }
}

/// Random single-ancilla linear optical channel on `sys_modes` system modes.
pub fn random_channel<R: Rng>(sys_modes: usize, rng: &mut R, anc_cutoff: usize) -> PhiLChannel {
    let ancilla = random_classical_ancilla(rng, anc_cutoff);
    let passive = PassiveUnitary::random(sys_modes + 1, rng);
    let displacements: Vec<C64> = (0..sys_modes + 1)
        .map(|_| {
            if rng.random_bool(0.5) {
                C64::new(rng.random_range(-0.3..0.3), rng.random_range(-0.3..0.3))
            } else {
                C64::new(0.0, 0.0)
            }
        })
        .collect();
    PhiLChannel::new(ancilla, LinOpticalUnitary::new(passive, displacements).unwrap())
        .expect("classical ancilla by construction")
}

// ---------------------------------------------------------------------------
// module suites
// ---------------------------------------------------------------------------

pub fn fock_suite(_seed: u64) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    let fock1 = build_state(&fock_spec(1, 16))?;
    checks.push(Check::close("fock.n1.mean_photon", mean_photon(&fock1.density()), 1.0, 1e-12));

    let cat = build_state(&cat_spec(1.0, 30))?;
    let nbar = mean_photon(&cat.density());
    checks.push(Check::close("fock.cat.mean_photon", nbar, 1.0f64.tanh(), 1e-8));

    let st = build_state(&StateSpec::uniform(
        StateKind::SqueezedThermal { xi: c64(0.8), nbar: 0.5 },
        60,
    ))?;
    let quads = quadrature_ops(st.basis())?;
    let rho = st.density();
    let var = rho.expectation(&(&quads[0] * &quads[0])).re - rho.expectation(&quads[0]).re.powi(2);
    checks.push(Check::close("fock.squeezed_thermal.var_x", var, (-1.6f64).exp(), 1e-4));

    let leak = leakage_report_for_spec(&cat_spec(3.0, 12))?;
    checks.push(Check::flag("fock.leakage.undersized_cat_flagged", leak.flagged));
    let leak_ok = leakage_report_for_spec(&StateSpec::uniform(
        StateKind::Coherent { alphas: vec![c64(2.0)] },
        30,
    ))?;
    checks.push(Check::at_most(
        "fock.leakage.coherent_top_level",
        leak_ok.top_level_population[0],
        1e-8,
    ));

    // truncation convergence: doubling the cutoff margin moves M by < 1e-6
    for (name, spec) in [
        ("fock.truncation.cat", cat_spec(1.0, 35)),
        (
            "fock.truncation.decohered_cat",
            StateSpec::uniform(StateKind::DecoheredCat { alpha: c64(1.0), gamma: 0.5 }, 35),
        ),
    ] {
        let m_of = |s: &BuiltState| Ok(metrological_power(&s.density())?.value);
        let (_, m_delta) = with_increased_cutoff(&spec, 8, m_of)?;
        let (_, m_delta2) = with_increased_cutoff(&spec, 16, m_of)?;
        checks.push(Check::at_most(name, (m_delta - m_delta2).abs(), 1e-6));
    }
    Ok(checks)
}

pub fn linopt_suite(seed: u64) -> Result<Vec<Check>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut checks = Vec::new();

    // 50:50 on |α⟩|α⟩ → |√2α⟩|0⟩
    let alpha = 0.8;
    let pair = build_state(&StateSpec::new(
        StateKind::Coherent { alphas: vec![c64(alpha), c64(alpha)] },
        vec![18, 18],
    ))?;
    let bs = crate::linopt::beam_splitter(pair.basis(), (0, 1), std::f64::consts::FRAC_PI_4, 0.0)?;
    let merged = pair.as_pure().unwrap().apply(&bs)?;
    let target = build_state(&StateSpec::new(
        StateKind::Coherent { alphas: vec![c64(alpha * 2f64.sqrt()), c64(0.0)] },
        vec![18, 18],
    ))?;
    let overlap = merged.inner(target.as_pure().unwrap()).norm();
    checks.push(Check::close("linopt.bs5050.coherent_merge", overlap, 1.0, 1e-8));

    // photon conservation under random passive unitaries
    let basis = FockBasis::new(&[6, 6])?;
    let mut worst: f64 = 0.0;
    for _ in 0..50 {
        let p = PassiveUnitary::random(2, &mut rng);
        let state = random_pure(&basis, &mut rng);
        let rotated = p.apply_to_state(&state)?;
        worst = worst.max(
            (crate::fock::mean_photon_pure(&state) - crate::fock::mean_photon_pure(&rotated))
                .abs(),
        );
    }
    checks.push(Check::at_most("linopt.passive.number_conservation", worst, 1e-8));

    // Φ_L with identity unitary and vacuum ancilla is the identity
    let cat = build_state(&cat_spec(1.0, 20))?.density();
    let ch = crate::linopt::identity_channel(1, &[20], 6)?;
    let out = ch.apply(&cat)?;
    checks.push(Check::at_most(
        "linopt.phil.identity",
        crate::linalg::frobenius(&(out.matrix() - cat.matrix())),
        1e-10,
    ));

    // coherent states stay at M = 0 through random channels
    let coh = build_state(&StateSpec::uniform(
        StateKind::Coherent { alphas: vec![c64(0.7)] },
        24,
    ))?
    .density();
    let mut worst_m: f64 = 0.0;
    for _ in 0..20 {
        let ch = random_channel(1, &mut rng, 10);
        let out = ch.apply(&coh)?;
        worst_m = worst_m.max(metrological_power(&out)?.value);
    }
    checks.push(Check::at_most("linopt.phil.coherent_stays_classical", worst_m, 1e-7));

    // loss channel: beam splitter with thermal ancilla on |1⟩ decreases M
    let fock1 = build_state(&fock_spec(1, 14))?.density();
    let anc = StateSpec::uniform(StateKind::Thermal { nbar: 0.2 }, 10);
    let eta: f64 = 0.7;
    let mut mixing = DMatrix::<C64>::identity(2, 2);
    mixing[(0, 0)] = c64(eta.sqrt());
    mixing[(0, 1)] = c64((1.0 - eta).sqrt());
    mixing[(1, 0)] = c64(-(1.0 - eta).sqrt());
    mixing[(1, 1)] = c64(eta.sqrt());
    let ch = PhiLChannel::new(
        anc,
        LinOpticalUnitary::passive_only(PassiveUnitary::new(mixing)?),
    )?;
    let out = ch.apply(&fock1)?;
    let m_before = metrological_power(&fock1)?.value;
    let m_after = metrological_power(&out)?.value;
    checks.push(Check::at_most("linopt.phil.loss_contracts_m", m_after, m_before + 1e-7));
    Ok(checks)
}

pub fn qfi_suite(seed: u64, scale: f64) -> Result<Vec<Check>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut checks = Vec::new();

    // `scale` is the fault-injection hook for the verify mutation test: it
    // multiplies the observed spectral values and defaults to 1.
    let coh = build_state(&StateSpec::uniform(
        StateKind::Coherent { alphas: vec![c64(0.9)] },
        30,
    ))?
    .density();
    let quads = quadrature_ops(coh.basis())?;
    let i = spectral_qfi(&coh, &quads[0], DEFAULT_PAIR_TOL)? * scale;
    checks.push(Check::close("qfi.coherent.x_quadrature", i, 2.0, 1e-8));

    let th = build_state(&StateSpec::uniform(StateKind::Thermal { nbar: 1.0 }, 60))?.density();
    let quads_th = quadrature_ops(th.basis())?;
    let i_th = spectral_qfi(&th, &quads_th[0], DEFAULT_PAIR_TOL)? * scale;
    checks.push(Check::close("qfi.thermal.closed_form", i_th, 2.0 / 3.0, 1e-5));

    for n in [1usize, 2, 3] {
        let rho = build_state(&fock_spec(n, n + 20))?.density();
        let m = metrological_power(&rho)?.value * scale;
        checks.push(Check::close(format!("qfi.fock{n}.power"), m, 2.0 * n as f64, 1e-6));
    }

    // unitary invariance of M under random passive + displacement
    let cat = build_state(&cat_spec(1.0, 26))?.density();
    let m_cat = metrological_power(&cat)?.value;
    let mut worst: f64 = 0.0;
    for _ in 0..10 {
        let u = LinOpticalUnitary::new(
            PassiveUnitary::random(1, &mut rng),
            vec![C64::new(rng.random_range(-0.3..0.3), rng.random_range(-0.3..0.3))],
        )?;
        let rotated = cat.conjugate_by(&u.to_fock(cat.basis())?);
        worst = worst.max((metrological_power(&rotated)?.value - m_cat).abs());
    }
    checks.push(Check::at_most("qfi.power.unitary_invariance", worst, 1e-6));

    // tensor rule M(ρ⊗σ) = max{M(ρ), M(σ)}
    let a = build_state(&fock_spec(1, 10))?.density();
    let b = build_state(&StateSpec::uniform(StateKind::Thermal { nbar: 0.3 }, 10))?.density();
    let joint = tensor_density(&a, &b)?;
    let m_joint = metrological_power(&joint)?.value;
    let m_max = metrological_power(&a)?.value.max(metrological_power(&b)?.value);
    checks.push(Check::close("qfi.power.tensor_rule", m_joint, m_max, 1e-6));

    // convexity on random two-component mixtures
    let basis = FockBasis::single_mode(10)?;
    let mut worst_gap: f64 = 0.0;
    for _ in 0..10 {
        let r1 = random_density(&basis, 2, &mut rng);
        let r2 = random_density(&basis, 2, &mut rng);
        let p: f64 = rng.random_range(0.1..0.9);
        let mixed = DensityMatrix::new(
            basis.clone(),
            r1.matrix().map(|z| z * c64(p)) + r2.matrix().map(|z| z * c64(1.0 - p)),
        )?;
        let lhs = metrological_power(&mixed)?.value;
        let rhs =
            p * metrological_power(&r1)?.value + (1.0 - p) * metrological_power(&r2)?.value;
        worst_gap = worst_gap.max(lhs - rhs);
    }
    checks.push(Check::at_most("qfi.power.convexity", worst_gap, 1e-7));

    // pure-state identity I_mean − 1 = Q_pure
    let psi = build_state(&cat_spec(1.0, 26))?;
    let f = qfi_matrix(&psi.density())?;
    let qp = q_pure(psi.as_pure().unwrap())?;
    checks.push(Check::close("qfi.pure.mean_matches_variance", f.i_mean() - 1.0, qp.q, 1e-7));
    Ok(checks)
}

pub fn gaussian_suite(seed: u64) -> Result<Vec<Check>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut checks = Vec::new();

    let v = squeezed_cov(c64(0.8), 0.5);
    let m = gaussian_metrological_power(&v)?;
    checks.push(Check::close(
        "gaussian.squeezed_thermal.closed_form",
        m,
        (1.6f64).exp() / 2.0 - 1.0,
        1e-6,
    ));

    let data = williamson(&v)?;
    checks.push(Check::close("gaussian.williamson.nu", data.nus[0], 2.0, 1e-8));

    for nbar in [0.1, 0.5, 1.0] {
        let rc = 0.5 * (2.0 * nbar + 1.0f64).ln();
        let v = squeezed_cov(c64(rc), nbar);
        checks.push(Check::at_most(
            format!("gaussian.critical_point.nbar{nbar}"),
            gaussian_metrological_power(&v)?,
            1e-9,
        ));
    }

    // gauge invariance under Williamson right factors
    let v = squeezed_cov(c64(0.6), 0.3);
    let data = williamson(&v)?;
    let m0 = gaussian_metrological_power(&v)?;
    let mut worst: f64 = 0.0;
    for _ in 0..10 {
        let o = random_mode_rotations(1, &mut rng);
        let s_alt = &data.s * o;
        let v_alt = &s_alt * data.diag() * s_alt.transpose();
        worst = worst.max((gaussian_metrological_power(&v_alt)? - m0).abs());
    }
    checks.push(Check::at_most("gaussian.gauge_invariance", worst, 1e-7));

    // cross-pipeline at one pinned point
    let spec = StateSpec::uniform(StateKind::SqueezedThermal { xi: c64(0.8), nbar: 0.5 }, 60);
    let m_fock = metrological_power(&build_state(&spec)?.density())?.value;
    checks.push(Check::close("gaussian.cross_pipeline.r08_n05", m_fock, m, 1e-4));

    // moment extraction agrees with the closed form
    let g_spec = GaussianState::from_spec(&spec)?;
    let g_fock = GaussianState::from_fock(&build_state(&spec)?.density())?;
    checks.push(Check::at_most(
        "gaussian.moment_extraction",
        (g_spec.cov() - g_fock.cov()).norm(),
        1e-3,
    ));
    Ok(checks)
}

pub fn measures_suite(seed: u64) -> Result<Vec<Check>> {
    let mut checks = Vec::new();

    let coh = build_state(&StateSpec::uniform(
        StateKind::Coherent { alphas: vec![c64(0.8)] },
        26,
    ))?;
    checks.push(Check::close(
        "measures.coherent.q_pure",
        q_pure(coh.as_pure().unwrap())?.q,
        0.0,
        1e-8,
    ));

    let fock2 = build_state(&fock_spec(2, 20))?;
    let QPure { q, saturated } = q_pure(fock2.as_pure().unwrap())?;
    checks.push(Check::close("measures.fock2.q_pure", q, 4.0, 1e-6));
    checks.push(Check::flag("measures.fock2.saturated", saturated));

    let cat = build_state(&cat_spec(1.0, 30))?;
    let (q_ub, decomp) = q_convex_roof_upper(&cat.density(), &RoofOptions::default())?;
    checks.push(Check::close(
        "measures.roof.pure_input",
        q_ub,
        q_pure(cat.as_pure().unwrap())?.q,
        1e-7,
    ));
    checks.push(Check::at_most(
        "measures.roof.reconstruction",
        decomp.reconstruction_error(&cat.density()),
        1e-7,
    ));

    let mix = build_state(&StateSpec::uniform(
        StateKind::Mixture {
            components: vec![
                (0.5, StateKind::Coherent { alphas: vec![c64(1.0)] }),
                (0.5, StateKind::Coherent { alphas: vec![c64(-1.0)] }),
            ],
        },
        30,
    ))?;
    let opts = RoofOptions { restarts: 16, seed, ..Default::default() };
    let (q_mix, _) = q_convex_roof_upper(&mix.density(), &opts)?;
    checks.push(Check::at_most("measures.roof.classical_mixture", q_mix, 1e-3));
    Ok(checks)
}

pub fn phase_suite(seed: u64) -> Result<Vec<Check>> {
    let params = PhaseOptimizerParams { seed, ..Default::default() };
    let mut checks = Vec::new();

    let coh =
        build_state(&StateSpec::uniform(StateKind::Coherent { alphas: vec![c64(0.7)] }, 30))?;
    checks.push(Check::close("phase.coherent.witness", sql_witness(&coh, 0)?, 0.0, 1e-8));

    let fock1 = build_state(&fock_spec(1, 25))?;
    checks.push(Check::close("phase.fock1.number_qfi", number_qfi(&fock1, 0)?, 0.0, 1e-12));
    let report = m_phase_alpha(&fock1, 0.0, &params)?;
    checks.push(Check::at_most("phase.fock1.budget0", report.value, 1e-7));

    let alpha = sufficient_alpha(&fock1, &params)?;
    let boosted = m_phase_alpha(&fock1, alpha, &params)?;
    checks.push(Check::at_least("phase.fock1.sufficient_alpha", boosted.value, 0.05));

    let series = m_phase_series(&fock1, &[0.0, 1.0, 2.0], &params)?;
    let mut worst_drop: f64 = 0.0;
    for w in series.windows(2) {
        worst_drop = worst_drop.max(w[0].value - w[1].value);
    }
    checks.push(Check::at_most("phase.fock1.budget_monotone", worst_drop, 1e-6));
    Ok(checks)
}

pub fn estimation_suite(seed: u64) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    let base = HomodyneExperiment {
        state: GaussianState::vacuum(1),
        generator: QuadratureDirection::axis(1, 0),
        measured: None,
        theta_true: 0.3,
        shots: 20_000,
        trials: 120,
        seed,
    };
    let report = simulate_and_estimate(&base)?;
    checks.push(Check::in_band("estimation.vacuum.ratio", report.ratio, 0.85, 1.25));
    checks.push(Check::at_most(
        "estimation.vacuum.bias",
        report.bias.abs(),
        4.0 * report.theta_mean_stderr,
    ));
    let squeezed = HomodyneExperiment {
        state: GaussianState::new(DVector::zeros(2), squeezed_cov(c64(0.8), 0.0))?,
        generator: QuadratureDirection::axis(1, 1),
        ..base
    };
    let report = simulate_and_estimate(&squeezed)?;
    checks.push(Check::in_band("estimation.squeezed.ratio", report.ratio, 0.85, 1.25));
    Ok(checks)
}

// ---------------------------------------------------------------------------
// acceptance criteria
// ---------------------------------------------------------------------------

/// Criterion 1: closed-form equivalence of the Fock pipeline for Fock,
/// cat, and decohered-cat states.
pub fn criterion_1() -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    for n in [1usize, 2, 3] {
        let rho = build_state(&fock_spec(n, n + 20))?.density();
        checks.push(Check::close(
            format!("c1.fock{n}.m"),
            metrological_power(&rho)?.value,
            2.0 * n as f64,
            1e-6,
        ));
    }
    for alpha in [0.5, 1.0, 1.5] {
        let built = build_state(&cat_spec(alpha, 35))?;
        let nbar = mean_photon(&built.density());
        checks.push(Check::close(
            format!("c1.cat_a{alpha}.m"),
            metrological_power(&built.density())?.value,
            2.0 * (nbar + alpha * alpha),
            1e-5,
        ));
    }
    for alpha in [0.5f64, 1.0, 2.0] {
        let e = (-2.0 * alpha * alpha).exp();
        for gamma in [-1.0, -0.5, -e, 0.0, 0.3, 0.7, 1.0] {
            let spec =
                StateSpec::uniform(StateKind::DecoheredCat { alpha: c64(alpha), gamma }, 42);
            let m = metrological_power(&build_state(&spec)?.density())?.value;
            let closed = crate::sweeps::decohered_cat_closed_form(alpha, gamma);
            checks.push(Check::close(
                format!("c1.decohered_a{alpha}_g{gamma:.3}.m"),
                m,
                closed,
                1e-5,
            ));
        }
    }
    Ok(checks)
}

/// Criterion 2: Gaussian/Fock cross-pipeline agreement for squeezed thermal
/// states and the critical-squeezing zero.
pub fn criterion_2() -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    for r in [0.0, 0.3, 0.8] {
        for nbar in [0.0, 0.1, 0.5, 1.0] {
            let spec = StateSpec::uniform(StateKind::SqueezedThermal { xi: c64(r), nbar }, 60);
            let m_fock = metrological_power(&build_state(&spec)?.density())?.value;
            let m_gauss = gaussian_metrological_power(&squeezed_cov(c64(r), nbar))?;
            checks.push(Check::close(format!("c2.cross_r{r}_n{nbar}"), m_fock, m_gauss, 1e-4));
        }
    }
    for nbar in [0.1, 0.5, 1.0] {
        let rc = 0.5 * (2.0 * nbar + 1.0f64).ln();
        checks.push(Check::at_most(
            format!("c2.critical_closed_n{nbar}"),
            gaussian_metrological_power(&squeezed_cov(c64(rc), nbar))?,
            1e-9,
        ));
        let spec = StateSpec::uniform(StateKind::SqueezedThermal { xi: c64(rc), nbar }, 60);
        checks.push(Check::at_most(
            format!("c2.critical_fock_n{nbar}"),
            metrological_power(&build_state(&spec)?.density())?.value,
            1e-4,
        ));
    }
    Ok(checks)
}

/// Criterion 3: beam-splitter equivalences between entangled coherent
/// states and single-mode cats.
pub fn criterion_3() -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    for alpha in [0.5, 1.0] {
        let ecs = build_state(&StateSpec::new(
            StateKind::EntangledCoherent { alphas: vec![c64(alpha), c64(alpha)], sign: 1 },
            vec![20, 20],
        ))?;
        let m_ecs = metrological_power(&ecs.density())?.value;
        let cat = build_state(&cat_spec(alpha * 2f64.sqrt(), 30))?;
        let m_cat = metrological_power(&cat.density())?.value;
        checks.push(Check::close(format!("c3.ecs_a{alpha}"), m_ecs, m_cat, 1e-7));
    }
    // three-mode reduction onto a single-mode cat of amplitude |γ|
    let alphas = [C64::new(0.6, 0.0), C64::new(0.0, 0.5), C64::new(0.4, 0.0)];
    let gamma = alphas.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    let ecs = build_state(&StateSpec::new(
        StateKind::EntangledCoherent { alphas: alphas.to_vec(), sign: 1 },
        vec![14, 14, 14],
    ))?;
    let folding = coherent_folding_unitary(&alphas)?;
    let folded = folding.apply_to_state(ecs.as_pure().unwrap())?;
    let target = build_state(&StateSpec::new(
        StateKind::EntangledCoherent {
            alphas: vec![c64(gamma), c64(0.0), c64(0.0)],
            sign: 1,
        },
        vec![14, 14, 14],
    ))?;
    let dist = (folded.amplitudes() - target.as_pure().unwrap().amplitudes()).norm();
    checks.push(Check::at_most("c3.three_mode_reduction", dist, 1e-6));
    Ok(checks)
}

/// Criterion 4: randomized property suites — quadrature-QFI covariance and
/// invariance facts, block additivity, and the QFI triangle inequality,
/// 200 instances each.
pub fn criterion_4(seed: u64) -> Result<Vec<Check>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut checks = Vec::new();

    let basis2 = FockBasis::new(&[7, 7])?;
    let quads2 = quadrature_ops(&basis2)?;
    let mut violations = 0usize;
    let mut worst: f64 = 0.0;
    for k in 0..200 {
        match k % 4 {
            0 => {
                // operator covariance Û† X̂_μ Û = X̂_{Oμ} on safe sectors
                let p = PassiveUnitary::random(2, &mut rng);
                let u = p.to_fock(&basis2)?;
                let mu = random_direction(4, &mut rng);
                let lhs = u.adjoint() * x_mu(&quads2, &mu)? * &u;
                let o = p.quadrature_rotation();
                let rotated = QuadratureDirection::from_unnormalized(&o * mu.vector()).unwrap();
                let rhs = x_mu(&quads2, &rotated)?;
                let diff = lhs - rhs;
                let mut dev: f64 = 0.0;
                for row in 0..basis2.total_dim() {
                    if basis2.occupation(row).iter().sum::<usize>() > 5 {
                        continue;
                    }
                    for col in 0..basis2.total_dim() {
                        if basis2.occupation(col).iter().sum::<usize>() > 5 {
                            continue;
                        }
                        dev = dev.max(diff[(row, col)].norm());
                    }
                }
                worst = worst.max(dev);
                if dev > 1e-7 {
                    violations += 1;
                }
            }
            1 => {
                // pure states: I_opt ≥ I_mean ≥ 1
                let basis = FockBasis::single_mode(12)?;
                let psi = random_pure_low(&basis, 5, &mut rng);
                let f = crate::qfi::qfi_matrix_pure(&psi)?;
                let dev = (1.0 - f.i_mean()).max(f.i_mean() - f.i_opt());
                worst = worst.max(dev);
                if dev > 1e-9 {
                    violations += 1;
                }
            }
            2 => {
                // classical mixtures of coherent states: I_opt ≤ 1
                let n_comp = rng.random_range(1..=3usize);
                let components = (0..n_comp)
                    .map(|_| {
                        let a = C64::new(
                            rng.random_range(-0.8..0.8),
                            rng.random_range(-0.8..0.8),
                        );
                        (1.0 / n_comp as f64, StateKind::Coherent { alphas: vec![a] })
                    })
                    .collect();
                let spec = StateSpec::uniform(StateKind::Mixture { components }, 26);
                let f = qfi_matrix(&build_state(&spec)?.density())?;
                let dev = f.i_opt() - 1.0;
                worst = worst.max(dev);
                if dev > 1e-7 {
                    violations += 1;
                }
            }
            _ => {
                // invariance of I_opt and I_mean under passive unitaries
                let rho = random_density_low(&basis2, 5, 2, &mut rng);
                let p = PassiveUnitary::random(2, &mut rng);
                let rotated = rho.conjugate_by(&p.to_fock(&basis2)?);
                let f0 = qfi_matrix(&rho)?;
                let f1 = qfi_matrix(&rotated)?;
                let dev = (f0.i_opt() - f1.i_opt()).abs().max((f0.i_mean() - f1.i_mean()).abs());
                worst = worst.max(dev);
                if dev > 1e-6 {
                    violations += 1;
                }
            }
        }
    }
    checks.push(Check::flag(
        format!("c4.quadrature_qfi_properties[violations={violations},worst={worst:.2e}]"),
        violations == 0,
    ));

    // block additivity: I_F(Σ p_i ρ_i ⊗ |i⟩⟨i|, L⊗1) = Σ p_i I_F(ρ_i, L)
    let mut violations = 0usize;
    let mut worst: f64 = 0.0;
    for _ in 0..200 {
        let d_sys = 6usize;
        let blocks = rng.random_range(2..=3usize);
        let sys_basis = FockBasis::single_mode(d_sys)?;
        let block_basis = FockBasis::new(&[d_sys, blocks])?;
        let mut weights: Vec<f64> = (0..blocks).map(|_| rng.random_range(0.1..1.0)).collect();
        let total: f64 = weights.iter().sum();
        weights.iter_mut().for_each(|w| *w /= total);
        let parts: Vec<DensityMatrix> =
            (0..blocks).map(|_| random_density(&sys_basis, 2, &mut rng)).collect();
        let d = block_basis.total_dim();
        let mut m = DMatrix::<C64>::zeros(d, d);
        for (b, (w, part)) in weights.iter().zip(&parts).enumerate() {
            for i in 0..d_sys {
                for j in 0..d_sys {
                    m[(i * blocks + b, j * blocks + b)] = part.matrix()[(i, j)] * c64(*w);
                }
            }
        }
        let block_state = DensityMatrix::new(block_basis.clone(), m)?;
        let l = random_hermitian(d_sys, &mut rng);
        let mut l_big = DMatrix::<C64>::zeros(d, d);
        for i in 0..d_sys {
            for j in 0..d_sys {
                for b in 0..blocks {
                    l_big[(i * blocks + b, j * blocks + b)] = l[(i, j)];
                }
            }
        }
        let lhs = spectral_qfi(&block_state, &l_big, DEFAULT_PAIR_TOL)?;
        let mut rhs = 0.0;
        for (w, part) in weights.iter().zip(&parts) {
            rhs += w * spectral_qfi(part, &l, DEFAULT_PAIR_TOL)?;
        }
        let dev = (lhs - rhs).abs() / (1.0 + rhs.abs());
        worst = worst.max(dev);
        if dev > 1e-7 {
            violations += 1;
        }
    }
    checks.push(Check::flag(
        format!("c4.block_additivity[violations={violations},worst={worst:.2e}]"),
        violations == 0,
    ));

    // triangle inequality |√I(A) − √I(B)| ≤ √I(A+B) ≤ √I(A) + √I(B)
    let mut violations = 0usize;
    let mut worst: f64 = 0.0;
    let basis = FockBasis::single_mode(10)?;
    for _ in 0..200 {
        let rho = random_density(&basis, 3, &mut rng);
        let a = random_hermitian(10, &mut rng);
        let b = random_hermitian(10, &mut rng);
        let eig = rho.eigendecomposition()?;
        let ia = crate::qfi::spectral_qfi_with(&eig, &a, DEFAULT_PAIR_TOL).sqrt();
        let ib = crate::qfi::spectral_qfi_with(&eig, &b, DEFAULT_PAIR_TOL).sqrt();
        let iab = crate::qfi::spectral_qfi_with(&eig, &(&a + &b), DEFAULT_PAIR_TOL).sqrt();
        let dev = ((ia - ib).abs() - iab).max(iab - ia - ib);
        worst = worst.max(dev);
        if dev > 1e-7 {
            violations += 1;
        }
    }
    checks.push(Check::flag(
        format!("c4.qfi_triangle[violations={violations},worst={worst:.2e}]"),
        violations == 0,
    ));
    Ok(checks)
}

/// Criterion 5: monotonicity of M and of the Q upper bound under a random
/// channel corpus: 10 channels on each of 10 states.
pub fn criterion_5(seed: u64) -> Result<Vec<Check>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let states: Vec<StateSpec> = vec![
        fock_spec(1, 24),
        cat_spec(1.0, 24),
        cat_spec(0.6, 24),
        StateSpec::uniform(StateKind::Cat { alpha: c64(0.8), sign: -1 }, 24),
        StateSpec::uniform(StateKind::DecoheredCat { alpha: c64(1.0), gamma: 0.5 }, 24),
        StateSpec::uniform(StateKind::DecoheredCat { alpha: c64(0.8), gamma: -0.4 }, 24),
        StateSpec::uniform(StateKind::Coherent { alphas: vec![c64(0.7)] }, 24),
        StateSpec::uniform(StateKind::Thermal { nbar: 0.3 }, 24),
        StateSpec::uniform(
            StateKind::Mixture {
                components: vec![
                    (0.5, StateKind::Coherent { alphas: vec![c64(0.8)] }),
                    (0.5, StateKind::Coherent { alphas: vec![c64(-0.8)] }),
                ],
            },
            24,
        ),
        StateSpec::uniform(StateKind::PhotonAddedCoherent { alpha: c64(0.5) }, 24),
    ];
    let opts = RoofOptions {
        num_extra: 1,
        restarts: 3,
        max_iters: 2000,
        seed,
        rank_tol: 1e-8,
        max_params: 600,
    };
    let mut checks = Vec::new();
    let mut m_worst: f64 = 0.0;
    let mut q_worst: f64 = 0.0;
    let mut m_violations = 0usize;
    let mut q_violations = 0usize;
    for spec in &states {
        let rho = build_state(spec)?.density();
        let channels: Vec<PhiLChannel> =
            (0..10).map(|_| random_channel(1, &mut rng, 16)).collect();
        let report = monotonicity_audit(&rho, &channels, &opts)?;
        m_violations += report.m_violations;
        q_violations += report.q_violations;
        for row in &report.rows {
            m_worst = m_worst.max(row.m_increase);
            q_worst = q_worst.max(row.q_increase);
        }
    }
    checks.push(Check::flag(
        format!("c5.m_monotone[violations={m_violations},worst={m_worst:.2e}]"),
        m_violations == 0,
    ));
    checks.push(Check::flag(
        format!("c5.q_ub_monotone[violations={q_violations},worst={q_worst:.2e}]"),
        q_violations == 0,
    ));
    Ok(checks)
}

/// Criterion 6: convex-roof quality: classical mixtures collapse below
/// 1e-3, pure inputs reproduce Q exactly.
pub fn criterion_6(seed: u64) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    let opts = RoofOptions { restarts: 32, seed, ..Default::default() };
    let mixtures: Vec<(&str, StateKind)> = vec![
        (
            "pair_sym",
            StateKind::Mixture {
                components: vec![
                    (0.5, StateKind::Coherent { alphas: vec![c64(1.0)] }),
                    (0.5, StateKind::Coherent { alphas: vec![c64(-1.0)] }),
                ],
            },
        ),
        (
            "pair_skew",
            StateKind::Mixture {
                components: vec![
                    (0.3, StateKind::Coherent { alphas: vec![c64(0.8)] }),
                    (0.7, StateKind::Coherent { alphas: vec![c64(-0.5)] }),
                ],
            },
        ),
        (
            "triple_ring",
            StateKind::Mixture {
                components: vec![
                    (1.0 / 3.0, StateKind::Coherent { alphas: vec![C64::new(0.9, 0.0)] }),
                    (1.0 / 3.0, StateKind::Coherent { alphas: vec![C64::new(-0.45, 0.779)] }),
                    (1.0 / 3.0, StateKind::Coherent { alphas: vec![C64::new(-0.45, -0.779)] }),
                ],
            },
        ),
        (
            "pair_complex",
            StateKind::Mixture {
                components: vec![
                    (0.5, StateKind::Coherent { alphas: vec![C64::new(0.6, 0.3)] }),
                    (0.5, StateKind::Coherent { alphas: vec![C64::new(-0.6, -0.3)] }),
                ],
            },
        ),
        (
            "triple_line",
            StateKind::Mixture {
                components: vec![
                    (0.25, StateKind::Coherent { alphas: vec![c64(1.1)] }),
                    (0.5, StateKind::Coherent { alphas: vec![c64(0.0)] }),
                    (0.25, StateKind::Coherent { alphas: vec![c64(-1.1)] }),
                ],
            },
        ),
    ];
    for (name, kind) in mixtures {
        let rho = build_state(&StateSpec::uniform(kind, 30))?.density();
        let (q_ub, _) = q_convex_roof_upper(&rho, &opts)?;
        checks.push(Check::at_most(format!("c6.classical.{name}"), q_ub, 1e-3));
    }
    for (name, spec) in [
        ("cat", cat_spec(1.0, 30)),
        ("fock2", fock_spec(2, 22)),
        ("squeezed", StateSpec::uniform(StateKind::SqueezedVacuum { xi: c64(0.5) }, 40)),
    ] {
        let built = build_state(&spec)?;
        let expect = q_pure(built.as_pure().unwrap())?.q;
        let (q_ub, _) = q_convex_roof_upper(&built.density(), &opts)?;
        checks.push(Check::close(format!("c6.pure.{name}"), q_ub, expect, 1e-7));
    }
    Ok(checks)
}

/// Criterion 7: the phase-estimation suite.
pub fn criterion_7(seed: u64) -> Result<Vec<Check>> {
    let params = PhaseOptimizerParams { seed, ..Default::default() };
    let mut checks = Vec::new();

    for alpha in [0.5, 1.0] {
        let coh = build_state(&StateSpec::uniform(
            StateKind::Coherent { alphas: vec![c64(alpha)] },
            35,
        ))?;
        checks.push(Check::close(
            format!("c7.witness.coherent{alpha}"),
            sql_witness(&coh, 0)?,
            0.0,
            1e-8,
        ));
    }
    for n in [1usize, 2] {
        let fock = build_state(&fock_spec(n, n + 20))?;
        checks.push(Check::close(
            format!("c7.number_qfi.fock{n}"),
            number_qfi(&fock, 0)?,
            0.0,
            1e-12,
        ));
    }

    let fock1 = build_state(&fock_spec(1, 25))?;
    let budget = sufficient_alpha(&fock1, &params)?;
    let boosted = m_phase_alpha(&fock1, budget, &params)?;
    checks.push(Check::at_least("c7.sufficient_alpha.fock1", boosted.value, 0.05));

    for (name, state) in
        [("fock1", build_state(&fock_spec(1, 25))?), ("cat1", build_state(&cat_spec(1.0, 35))?)]
    {
        let m = metrological_power(&state.density())?.value;
        let ratios = asymptotic_ratio(&state, &[5.0, 10.0, 20.0], &params)?;
        let final_ratio = ratios.last().unwrap().1;
        checks.push(Check::in_band(
            format!("c7.asymptotic.{name}"),
            final_ratio,
            0.95 * m,
            1.05 * (m + 1.0),
        ));
    }

    for (name, state) in
        [("fock1", build_state(&fock_spec(1, 25))?), ("cat1", build_state(&cat_spec(1.0, 35))?)]
    {
        let series = m_phase_series(&state, &[0.0, 1.0, 2.0, 5.0, 10.0], &params)?;
        let mut worst_drop: f64 = 0.0;
        for w in series.windows(2) {
            worst_drop = worst_drop.max(w[0].value - w[1].value);
        }
        checks.push(Check::at_most(format!("c7.budget_monotone.{name}"), worst_drop, 1e-6));
    }
    Ok(checks)
}

/// Criterion 8: Heisenberg-scaling sweep slopes.
pub fn criterion_8(seed: u64) -> Result<Vec<Check>> {
    let params = PhaseOptimizerParams { seed, ..Default::default() };
    let mut checks = Vec::new();
    let fock_family: Vec<StateSpec> = (1..=8).map(|n| fock_spec(n, n + 14)).collect();
    let sweep = heisenberg_sweep(&fock_family, 4.0, &params)?;
    checks.push(Check::in_band("c8.fock_family_slope", sweep.slope, 1.8, 2.05));

    let coherent_family: Vec<StateSpec> = (1..=8)
        .map(|n| {
            StateSpec::uniform(
                StateKind::Coherent { alphas: vec![c64((n as f64).sqrt())] },
                (n as f64 + 8.0 * (n as f64).sqrt() + 14.0).ceil() as usize,
            )
        })
        .collect();
    let sweep = heisenberg_sweep(&coherent_family, 4.0, &params)?;
    checks.push(Check::at_most("c8.coherent_family_slope", sweep.slope, 1.1));
    Ok(checks)
}

/// Pinned Monte Carlo seed for criterion 9; the experiment is exactly
/// reproducible, so the band check is deterministic.
pub const CRB_SEED: u64 = 12;

/// Criterion 9: Cramér–Rao Monte Carlo ratios.
pub fn criterion_9() -> Result<Vec<Check>> {
    criterion_9_seeded(CRB_SEED)
}

/// Seeded variant: the three experiments draw from distinct substream
/// families (seed, seed+1, seed+2).
pub fn criterion_9_seeded(seed: u64) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    let base = HomodyneExperiment {
        state: GaussianState::vacuum(1),
        generator: QuadratureDirection::axis(1, 0),
        measured: None,
        theta_true: 0.3,
        shots: 100_000,
        trials: 200,
        seed,
    };
    let report = simulate_and_estimate(&base)?;
    checks.push(Check::in_band("c9.vacuum.ratio", report.ratio, 0.95, 1.08));

    let squeezed = HomodyneExperiment {
        state: GaussianState::new(DVector::zeros(2), squeezed_cov(c64(0.8), 0.0))?,
        generator: QuadratureDirection::axis(1, 1),
        seed: seed + 1,
        ..base.clone()
    };
    let report = simulate_and_estimate(&squeezed)?;
    checks.push(Check::in_band("c9.squeezed.ratio", report.ratio, 0.95, 1.08));

    let thermal = HomodyneExperiment {
        state: GaussianState::new(DVector::zeros(2), DMatrix::identity(2, 2) * 3.0)?,
        seed: seed + 2,
        ..base
    };
    let report = simulate_and_estimate(&thermal)?;
    checks.push(Check::at_least("c9.thermal.ratio", report.ratio, 0.98));
    Ok(checks)
}

/// Criterion 10: figure-sweep reproduction: closed-form deltas below 1e-6
/// on the mixed families, bound and saturation structure on the pure ones.
pub fn criterion_10() -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    let m_rows = m_sweep_rows()?;
    let cat_rows = m_rows.iter().filter(|r| r.family == "decohered_cat").count();
    checks.push(Check::close("c10.fig2b.cat_row_count", cat_rows as f64, 12.0, 0.0));
    let mut worst: f64 = 0.0;
    for row in &m_rows {
        worst = worst.max(row.delta);
    }
    checks.push(Check::at_most("c10.fig2b.closed_form_delta", worst, 1e-6));

    let q_rows = q_sweep_rows()?;
    let mut bound_excess: f64 = 0.0;
    let mut saturation_dev: f64 = 0.0;
    let mut structure_ok = true;
    for row in &q_rows {
        bound_excess = bound_excess.max(row.q - row.bound);
        let centered = matches!(row.family, "fock" | "noon" | "cat" | "squeezed_vacuum");
        if centered {
            saturation_dev = saturation_dev.max((row.q - row.bound).abs());
        }
        if row.saturated != centered {
            structure_ok = false;
        }
    }
    checks.push(Check::at_most("c10.fig2a.bound_respected", bound_excess, 1e-8));
    checks.push(Check::at_most("c10.fig2a.saturation_on_centered", saturation_dev, 1e-6));
    checks.push(Check::flag("c10.fig2a.saturation_flags", structure_ok));
    Ok(checks)
}

// ---------------------------------------------------------------------------
// suite runner
// ---------------------------------------------------------------------------

pub const SUITES: &[&str] = &[
    "fock",
    "linopt",
    "qfi",
    "gaussian",
    "measures",
    "phase",
    "estimation",
    "acceptance",
    "all",
];

/// Fault-injection hook for the verify mutation test: scales the observed
/// QFI values inside the qfi suite. Production value is 1.
pub fn qfi_scale_from_env() -> f64 {
    std::env::var("NCVAR_TEST_QFI_SCALE")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(1.0)
}

pub fn run_suite(name: &str, seed: u64) -> Result<Vec<SuiteResult>> {
    let scale = qfi_scale_from_env();
    let single =
        |suite: &str, checks: Vec<Check>| SuiteResult { suite: suite.to_string(), checks, seed };
    match name {
        "fock" => Ok(vec![single("fock", fock_suite(seed)?)]),
        "linopt" => Ok(vec![single("linopt", linopt_suite(seed)?)]),
        "qfi" => Ok(vec![single("qfi", qfi_suite(seed, scale)?)]),
        "gaussian" => Ok(vec![single("gaussian", gaussian_suite(seed)?)]),
        "measures" => Ok(vec![single("measures", measures_suite(seed)?)]),
        "phase" => Ok(vec![single("phase", phase_suite(seed)?)]),
        "estimation" => Ok(vec![single("estimation", estimation_suite(seed)?)]),
        "acceptance" => Ok(vec![
            single("acceptance.1", criterion_1()?),
            single("acceptance.2", criterion_2()?),
            single("acceptance.3", criterion_3()?),
            single("acceptance.4", criterion_4(seed)?),
            single("acceptance.5", criterion_5(seed)?),
            single("acceptance.6", criterion_6(seed)?),
            single("acceptance.7", criterion_7(seed)?),
            single("acceptance.8", criterion_8(seed)?),
            single("acceptance.9", criterion_9()?),
            single("acceptance.10", criterion_10()?),
        ]),
        "all" => {
            let mut out = run_suite("fock", seed)?;
            for s in ["linopt", "qfi", "gaussian", "measures", "phase", "estimation", "acceptance"]
            {
                out.extend(run_suite(s, seed)?);
            }
            Ok(out)
        }
        other => Err(Error::InvalidSpec(format!(
            "unknown suite '{other}', expected one of {SUITES:?}"
        ))),
    }
}
