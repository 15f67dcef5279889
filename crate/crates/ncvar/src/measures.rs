//! The mean-quadrature-variance nonclassicality measure: exact for pure
//! states, certified upper bound via decomposition search for mixed states,
//! plus the photon-number bound and the channel monotonicity audit.
//!
//! The convex roof Q(ρ) = min_{p_i,ψ_i} Σ p_i V̄(ψ_i) − 1 has no known
//! algorithm; any pure-state decomposition upper-bounds the infimum, so the
//! optimizer's output is always labeled an upper bound and initialized at
//! the eigendecomposition, which is itself a feasible point.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64 as C64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::fock::{mean_photon, mean_photon_pure, quadrature_ops, DensityMatrix, FockState};
use crate::linopt::PhiLChannel;
use crate::optimize::{nelder_mead, SimplexOptions};
use crate::qfi::metrological_power;

/// V̄(ψ) = (1/N) Σ_k Var(ψ, R^(k)); always ≥ 1, with equality exactly on
/// coherent states.
pub fn mean_quadrature_variance(psi: &FockState) -> Result<f64> {
    let quads = quadrature_ops(psi.basis())?;
    let n = psi.basis().num_modes() as f64;
    let total: f64 = quads.iter().map(|q| psi.variance(q)).sum();
    Ok(total / n)
}

/// Purity-gated variant for density-matrix input.
pub fn mean_quadrature_variance_density(rho: &DensityMatrix) -> Result<f64> {
    let psi = rho.pure_state()?;
    mean_quadrature_variance(&psi)
}

#[derive(Clone, Copy, Debug)]
pub struct QPure {
    pub q: f64,
    /// Set when ⟨ψ|R^(k)|ψ⟩ = 0 for every k (within 1e-6): for centered
    /// states the 2n̄/N bound saturates.
    pub saturated: bool,
}

/// Q(ψ) = V̄(ψ) − 1 for a pure state.
pub fn q_pure(psi: &FockState) -> Result<QPure> {
    let quads = quadrature_ops(psi.basis())?;
    let n = psi.basis().num_modes() as f64;
    let mut total = 0.0;
    let mut centered = true;
    for q in &quads {
        total += psi.variance(q);
        if psi.expectation(q).re.abs() > 1e-6 {
            centered = false;
        }
    }
    Ok(QPure { q: total / n - 1.0, saturated: centered })
}

/// The photon-number bound 2n̄/N on Q.
pub fn q_bound(rho: &DensityMatrix) -> f64 {
    2.0 * mean_photon(rho) / rho.basis().num_modes() as f64
}

pub fn q_bound_pure(psi: &FockState) -> f64 {
    2.0 * mean_photon_pure(psi) / psi.basis().num_modes() as f64
}

/// Options for the decomposition search.
#[derive(Clone, Copy, Debug)]
pub struct RoofOptions {
    /// Extra components beyond the rank (m = r + num_extra), at most 3.
    pub num_extra: usize,
    pub restarts: usize,
    pub max_iters: usize,
    pub seed: u64,
    /// Eigenvalues of ρ below this do not enter the support.
    pub rank_tol: f64,
    /// Refuse optimizations with more than this many real parameters.
    pub max_params: usize,
}

impl Default for RoofOptions {
    fn default() -> Self {
        Self {
            num_extra: 1,
            restarts: 8,
            max_iters: 4000,
            seed: 7,
            rank_tol: 1e-10,
            max_params: 600,
        }
    }
}

/// A pure-state decomposition ρ = Σ p_j |ψ_j⟩⟨ψ_j| produced by the search,
/// together with the isometry that generated it from the scaled
/// eigenvectors √λ_i |i⟩.
#[derive(Clone, Debug)]
pub struct Decomposition {
    pub weights: Vec<f64>,
    pub components: Vec<FockState>,
    pub isometry: DMatrix<C64>,
}

impl Decomposition {
    /// Frobenius distance between Σ p_j |ψ_j⟩⟨ψ_j| and ρ.
    pub fn reconstruction_error(&self, rho: &DensityMatrix) -> f64 {
        let d = rho.basis().total_dim();
        let mut acc = DMatrix::<C64>::zeros(d, d);
        for (w, psi) in self.weights.iter().zip(&self.components) {
            acc += (psi.amplitudes() * psi.amplitudes().adjoint())
                .map(|z| z * C64::new(*w, 0.0));
        }
        crate::linalg::frobenius(&(acc - rho.matrix()))
    }
}

struct RoofProblem {
    lambdas: Vec<f64>,
    /// G_k[i,i'] = √(λ_i λ_i') ⟨e_i|R_k|e_i'⟩, one per quadrature.
    gram: Vec<DMatrix<C64>>,
    /// (1/N) Σ_k Tr[ρ R_k²] − 1, the decomposition-independent part.
    const_term: f64,
    num_modes: usize,
    m: usize,
    r: usize,
}

impl RoofProblem {
    /// Objective contribution of a single component row of the isometry.
    fn row_term_slice(&self, row: &[C64]) -> f64 {
        let r = self.r;
        let mut p = 0.0;
        for i in 0..r {
            p += self.lambdas[i] * row[i].norm_sqr();
        }
        if p < 1e-14 {
            return 0.0;
        }
        let mut spent = 0.0;
        for g in &self.gram {
            let mut mean = C64::new(0.0, 0.0);
            for i in 0..r {
                for i2 in 0..r {
                    mean += row[i].conj() * g[(i, i2)] * row[i2];
                }
            }
            spent += mean.re * mean.re / p;
        }
        spent
    }

    fn row_term(&self, t: &DMatrix<C64>, j: usize) -> f64 {
        let row: Vec<C64> = (0..self.r).map(|i| t[(j, i)]).collect();
        self.row_term_slice(&row)
    }

    /// Local refinement by 2×2 rotations between component pairs: every
    /// decomposition is a unitary mixing of the incumbent's components, so
    /// sweeping pair rotations (θ, φ) with a grid seed plus simplex polish
    /// walks downhill without gradients and scales to larger ranks than a
    /// full-dimensional simplex would.
    fn pair_sweep_refine(&self, t: &mut DMatrix<C64>, max_sweeps: usize) -> f64 {
        let m = self.m;
        let mut spent_rows: Vec<f64> = (0..m).map(|j| self.row_term(t, j)).collect();
        let mut buf_j = vec![C64::new(0.0, 0.0); self.r];
        let mut buf_k = vec![C64::new(0.0, 0.0); self.r];
        for _ in 0..max_sweeps {
            let mut improved = false;
            for j in 0..m {
                for k in j + 1..m {
                    let base = spent_rows[j] + spent_rows[k];
                    let row_j: Vec<C64> = (0..self.r).map(|i| t[(j, i)]).collect();
                    let row_k: Vec<C64> = (0..self.r).map(|i| t[(k, i)]).collect();
                    let mut rotated_terms = |theta: f64, phi: f64| -> f64 {
                        let (c, s) = (theta.cos(), theta.sin());
                        let e = C64::new(0.0, phi).exp();
                        for i in 0..self.r {
                            buf_j[i] = row_j[i] * c + row_k[i] * e * s;
                            buf_k[i] = -row_j[i] * e.conj() * s + row_k[i] * c;
                        }
                        self.row_term_slice(&buf_j) + self.row_term_slice(&buf_k)
                    };
                    // maximize the spent term over the pair rotation
                    let mut best = (0.0f64, 0.0f64, base);
                    for gt in 0..8 {
                        let theta = std::f64::consts::FRAC_PI_2 * gt as f64 / 8.0;
                        for gp in 0..8 {
                            let phi = std::f64::consts::TAU * gp as f64 / 8.0;
                            let v = rotated_terms(theta, phi);
                            if v > best.2 + 1e-13 {
                                best = (theta, phi, v);
                            }
                        }
                    }
                    let polish = nelder_mead(
                        |x: &[f64]| -rotated_terms(x[0], x[1]),
                        &[best.0, best.1],
                        SimplexOptions { max_iters: 80, ftol: 1e-12, step: 0.15 },
                    );
                    if -polish.value > best.2 + 1e-13 {
                        best = (polish.x[0], polish.x[1], -polish.value);
                    }
                    if best.2 > base + 1e-12 {
                        let (c, s) = (best.0.cos(), best.0.sin());
                        let e = C64::new(0.0, best.1).exp();
                        for i in 0..self.r {
                            let old_j = t[(j, i)];
                            let old_k = t[(k, i)];
                            t[(j, i)] = old_j * c + old_k * e * s;
                            t[(k, i)] = -old_j * e.conj() * s + old_k * c;
                        }
                        spent_rows[j] = self.row_term(t, j);
                        spent_rows[k] = self.row_term(t, k);
                        improved = true;
                    }
                }
            }
            if !improved {
                break;
            }
        }
        self.const_term - spent_rows.iter().sum::<f64>() / self.num_modes as f64
    }

    /// Orthonormalize the raw complex m×r matrix column by column.
    fn isometry_from_params(&self, x: &[f64]) -> DMatrix<C64> {
        let (m, r) = (self.m, self.r);
        let mut t = DMatrix::from_fn(m, r, |row, col| {
            let base = 2 * (col * m + row);
            C64::new(x[base], x[base + 1])
        });
        for col in 0..r {
            for prev in 0..col {
                let proj = {
                    let mut acc = C64::new(0.0, 0.0);
                    for row in 0..m {
                        acc += t[(row, prev)].conj() * t[(row, col)];
                    }
                    acc
                };
                for row in 0..m {
                    let sub = proj * t[(row, prev)];
                    t[(row, col)] -= sub;
                }
            }
            let mut norm = 0.0;
            for row in 0..m {
                norm += t[(row, col)].norm_sqr();
            }
            let mut norm = norm.sqrt();
            if norm < 1e-10 {
                // degenerate draw: fall back to a unit vector not yet used
                t[(col % m, col)] += C64::new(1.0, 0.0);
                norm = {
                    let mut acc = 0.0;
                    for row in 0..m {
                        acc += t[(row, col)].norm_sqr();
                    }
                    acc.sqrt()
                };
            }
            for row in 0..m {
                t[(row, col)] /= C64::new(norm, 0.0);
            }
        }
        t
    }

    fn value(&self, t: &DMatrix<C64>) -> f64 {
        let (m, r) = (self.m, self.r);
        let mut spent = 0.0;
        for j in 0..m {
            let mut p = 0.0;
            for i in 0..r {
                p += self.lambdas[i] * t[(j, i)].norm_sqr();
            }
            if p < 1e-14 {
                continue;
            }
            for g in &self.gram {
                let mut mean = C64::new(0.0, 0.0);
                for i in 0..r {
                    for i2 in 0..r {
                        mean += t[(j, i)].conj() * g[(i, i2)] * t[(j, i2)];
                    }
                }
                spent += mean.re * mean.re / p;
            }
        }
        self.const_term - spent / self.num_modes as f64
    }
}

/// Certified upper bound on Q(ρ): the best pure-state decomposition found,
/// never worse than the eigendecomposition incumbent. Deterministic for a
/// fixed seed; restarts run in parallel with private optimizer state.
pub fn q_convex_roof_upper(
    rho: &DensityMatrix,
    opts: &RoofOptions,
) -> Result<(f64, Decomposition)> {
    let eig = rho.eigendecomposition()?;
    let support: Vec<usize> =
        (0..eig.values.len()).filter(|&i| eig.values[i] >= opts.rank_tol).collect();
    let r = support.len();
    if r == 0 {
        return Err(Error::Numerics("state has empty support".into()));
    }
    let m = r + opts.num_extra.min(3);
    let dim_params = 2 * m * r;
    if dim_params > opts.max_params {
        return Err(Error::DimensionCap { requested: dim_params, cap: opts.max_params });
    }

    let quads = quadrature_ops(rho.basis())?;
    let n_modes = rho.basis().num_modes();
    let lambdas: Vec<f64> = support.iter().map(|&i| eig.values[i]).collect();
    let vectors: Vec<DVector<C64>> =
        support.iter().map(|&i| eig.vectors.column(i).clone_owned()).collect();

    let mut gram = Vec::with_capacity(quads.len());
    let mut const_term = -1.0;
    for q in &quads {
        let applied: Vec<DVector<C64>> = vectors.iter().map(|v| q * v).collect();
        let mut g = DMatrix::zeros(r, r);
        for i in 0..r {
            for i2 in 0..r {
                let scale = (lambdas[i] * lambdas[i2]).sqrt();
                g[(i, i2)] = (vectors[i].adjoint() * &applied[i2])[(0, 0)]
                    * C64::new(scale, 0.0);
            }
        }
        gram.push(g);
        const_term += rho.expectation(&(q * q)).re / n_modes as f64;
    }
    let problem = RoofProblem { lambdas, gram, const_term, num_modes: n_modes, m, r };

    // eigendecomposition incumbent: T = [1_r; 0]
    let mut x0 = vec![0.0; dim_params];
    for i in 0..r {
        x0[2 * (i * m + i)] = 1.0;
    }
    let incumbent_t = problem.isometry_from_params(&x0);
    let incumbent_value = problem.value(&incumbent_t);

    let objective = |x: &[f64]| problem.value(&problem.isometry_from_params(x));
    let sim_opts = SimplexOptions { max_iters: opts.max_iters, ..Default::default() };
    // a full-dimensional simplex only helps while the parameter count is
    // small; beyond that the pair sweeps do the work
    let use_simplex = dim_params <= 64;

    let starts: Vec<Vec<f64>> = (0..opts.restarts.max(1))
        .map(|k| {
            if k == 0 {
                x0.clone()
            } else {
                let mut rng = ChaCha8Rng::seed_from_u64(opts.seed.wrapping_add(k as u64));
                (0..dim_params).map(|_| rng.random_range(-1.0..1.0)).collect()
            }
        })
        .collect();
    let results: Vec<(f64, DMatrix<C64>)> = starts
        .par_iter()
        .map(|x| {
            let refined = if use_simplex {
                nelder_mead(&objective, x, sim_opts).x
            } else {
                x.clone()
            };
            let mut t = problem.isometry_from_params(&refined);
            let value = problem.pair_sweep_refine(&mut t, 40);
            (value, t)
        })
        .collect();

    let mut best_t = incumbent_t;
    let mut best_value = incumbent_value;
    for (value, t_cand) in results {
        if value < best_value - 1e-12 {
            best_value = value;
            best_t = t_cand;
        }
    }

    let t = best_t;
    let mut weights = Vec::new();
    let mut components = Vec::new();
    for j in 0..m {
        let mut phi = DVector::<C64>::zeros(rho.basis().total_dim());
        let mut p = 0.0;
        for i in 0..r {
            let coeff = t[(j, i)] * C64::new(problem.lambdas[i].sqrt(), 0.0);
            phi += &vectors[i] * coeff;
            p += problem.lambdas[i] * t[(j, i)].norm_sqr();
        }
        if p < 1e-12 {
            continue;
        }
        let psi = FockState::new(
            rho.basis().clone(),
            phi.map(|z| z / C64::new(p.sqrt(), 0.0)),
            1e-6,
        )?;
        weights.push(p);
        components.push(psi);
    }
    Ok((best_value.max(0.0), Decomposition { weights, components, isometry: t }))
}

/// Upper bound on Q with the rank-adaptive fallback used by the audit: the
/// decomposition search where affordable, otherwise the eigendecomposition
/// feasible point Σ λ_i Q_pure(e_i).
pub fn q_upper_adaptive(rho: &DensityMatrix, opts: &RoofOptions) -> Result<(f64, &'static str)> {
    let eig = rho.eigendecomposition()?;
    let rank = eig.values.iter().filter(|&&l| l >= opts.rank_tol).count();
    if 2 * (rank + opts.num_extra.min(3)) * rank <= opts.max_params {
        let (q, _) = q_convex_roof_upper(rho, opts)?;
        Ok((q, "decomposition search"))
    } else {
        let mut acc = 0.0;
        for i in 0..eig.values.len() {
            if eig.values[i] < opts.rank_tol {
                continue;
            }
            let psi = FockState::new(
                rho.basis().clone(),
                eig.vectors.column(i).clone_owned(),
                1e-6,
            )?;
            acc += eig.values[i] * q_pure(&psi)?.q;
        }
        Ok((acc.max(0.0), "eigendecomposition bound"))
    }
}

/// One channel's worth of before/after measurements.
#[derive(Clone, Debug)]
pub struct AuditRow {
    pub m_before: f64,
    pub m_after: f64,
    pub q_before: f64,
    pub q_after: f64,
    pub q_method: &'static str,
    pub m_increase: f64,
    pub q_increase: f64,
}

#[derive(Clone, Debug)]
pub struct AuditReport {
    pub rows: Vec<AuditRow>,
    pub m_slack: f64,
    pub q_slack: f64,
    pub m_violations: usize,
    pub q_violations: usize,
}

pub const AUDIT_M_SLACK: f64 = 1e-5;
pub const AUDIT_Q_SLACK: f64 = 5e-3;

/// Apply every channel to ρ and record the movement of M and of the Q
/// upper bound; linear optical maps must not increase either beyond
/// optimizer noise.
pub fn monotonicity_audit(
    rho: &DensityMatrix,
    channels: &[PhiLChannel],
    opts: &RoofOptions,
) -> Result<AuditReport> {
    let m_before = metrological_power(rho)?.value;
    let (q_before, _) = q_upper_adaptive(rho, opts)?;
    let rows: Vec<Result<AuditRow>> = channels
        .par_iter()
        .map(|ch| {
            let out = ch.apply(rho)?;
            let m_after = metrological_power(&out)?.value;
            let (q_after, q_method) = q_upper_adaptive(&out, opts)?;
            Ok(AuditRow {
                m_before,
                m_after,
                q_before,
                q_after,
                q_method,
                m_increase: (m_after - m_before).max(0.0),
                q_increase: (q_after - q_before).max(0.0),
            })
        })
        .collect();
    let rows: Vec<AuditRow> = rows.into_iter().collect::<Result<_>>()?;
    let m_violations = rows.iter().filter(|r| r.m_increase > AUDIT_M_SLACK).count();
    let q_violations = rows.iter().filter(|r| r.q_increase > AUDIT_Q_SLACK).count();
    Ok(AuditReport {
        rows,
        m_slack: AUDIT_M_SLACK,
        q_slack: AUDIT_Q_SLACK,
        m_violations,
        q_violations,
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
    fn coherent_variance_is_one() {
        let spec = StateSpec::uniform(StateKind::Coherent { alphas: vec![c(0.8, -0.3)] }, 30);
        let built = build_state(&spec).unwrap();
        let v = mean_quadrature_variance(built.as_pure().unwrap()).unwrap();
        assert!((v - 1.0).abs() < 1e-8);
        let qp = q_pure(built.as_pure().unwrap()).unwrap();
        assert!(qp.q.abs() < 1e-8);
        assert!(!qp.saturated);
    }

    #[test]
    fn fock_variance_and_bound() {
        for n in [1usize, 2, 3] {
            let spec = StateSpec::uniform(StateKind::Fock { n }, n + 15);
            let built = build_state(&spec).unwrap();
            let psi = built.as_pure().unwrap();
            let v = mean_quadrature_variance(psi).unwrap();
            assert!((v - (2 * n + 1) as f64).abs() < 1e-6);
            let qp = q_pure(psi).unwrap();
            assert!((qp.q - 2.0 * n as f64).abs() < 1e-6);
            assert!(qp.saturated);
            assert!((q_bound_pure(psi) - 2.0 * n as f64).abs() < 1e-10);
        }
    }

    #[test]
    fn even_cat_saturates_bound() {
        let spec = StateSpec::uniform(StateKind::Cat { alpha: c(1.0, 0.0), sign: 1 }, 30);
        let built = build_state(&spec).unwrap();
        let psi = built.as_pure().unwrap();
        let v = mean_quadrature_variance(psi).unwrap();
        let nbar = mean_photon_pure(psi);
        assert!((v - (1.0 + 2.0 * nbar)).abs() < 1e-5);
        assert!((v - 2.5231883).abs() < 1e-5);
        assert!(q_pure(psi).unwrap().saturated);
    }

    #[test]
    fn squeezed_coherent_stays_below_bound() {
        let spec = StateSpec::uniform(
            StateKind::SqueezedCoherent { xi: c(1.0, 0.0), alpha: c(1.0, 0.0) },
            70,
        );
        let built = build_state(&spec).unwrap();
        let psi = built.as_pure().unwrap();
        let qp = q_pure(psi).unwrap();
        let bound = q_bound_pure(psi);
        assert!(qp.q > 0.0);
        assert!(qp.q < bound - 1e-6, "q {} bound {bound}", qp.q);
        assert!(!qp.saturated);
    }

    #[test]
    fn mixed_input_rejected_for_pure_measure() {
        let spec = StateSpec::uniform(StateKind::Thermal { nbar: 0.3 }, 25);
        let rho = build_state(&spec).unwrap().density();
        assert!(matches!(
            mean_quadrature_variance_density(&rho),
            Err(Error::NotPure(_))
        ));
    }

    #[test]
    fn noon_bound() {
        let spec = StateSpec::new(StateKind::Noon { n: 2 }, vec![8, 8]);
        let rho = build_state(&spec).unwrap().density();
        assert!((q_bound(&rho) - 2.0).abs() < 1e-12);
    }

    #[test]
    fn roof_on_pure_input_equals_q_pure() {
        let spec = StateSpec::uniform(StateKind::Cat { alpha: c(1.0, 0.0), sign: 1 }, 25);
        let built = build_state(&spec).unwrap();
        let expect = q_pure(built.as_pure().unwrap()).unwrap().q;
        let (q_ub, decomp) =
            q_convex_roof_upper(&built.density(), &RoofOptions::default()).unwrap();
        assert!((q_ub - expect).abs() < 1e-7, "{q_ub} vs {expect}");
        assert!(decomp.reconstruction_error(&built.density()) < 1e-7);
    }

    #[test]
    fn roof_rediscovers_coherent_decomposition() {
        let spec = StateSpec::uniform(
            StateKind::Mixture {
                components: vec![
                    (0.5, StateKind::Coherent { alphas: vec![c(1.0, 0.0)] }),
                    (0.5, StateKind::Coherent { alphas: vec![c(-1.0, 0.0)] }),
                ],
            },
            30,
        );
        let rho = build_state(&spec).unwrap().density();
        let opts = RoofOptions { restarts: 16, ..Default::default() };
        let (q_ub, decomp) = q_convex_roof_upper(&rho, &opts).unwrap();
        assert!(q_ub < 1e-3, "optimizer stopped at {q_ub}");
        assert!(decomp.reconstruction_error(&rho) < 1e-7);
    }

    #[test]
    fn roof_never_beats_eigendecomposition_incumbent_downward() {
        let spec =
            StateSpec::uniform(StateKind::DecoheredCat { alpha: c(1.0, 0.0), gamma: 0.5 }, 25);
        let rho = build_state(&spec).unwrap().density();
        let eig = rho.eigendecomposition().unwrap();
        let mut eig_value = 0.0;
        for i in 0..eig.values.len() {
            if eig.values[i] < 1e-10 {
                continue;
            }
            let psi =
                FockState::new(rho.basis().clone(), eig.vectors.column(i).clone_owned(), 1e-6)
                    .unwrap();
            eig_value += eig.values[i] * q_pure(&psi).unwrap().q;
        }
        let (q_ub, _) = q_convex_roof_upper(&rho, &RoofOptions::default()).unwrap();
        assert!(q_ub <= eig_value + 1e-9);
        assert!(q_ub >= 0.0);
    }

    #[test]
    fn dimension_cap_enforced() {
        let spec = StateSpec::uniform(StateKind::Thermal { nbar: 1.0 }, 40);
        let rho = build_state(&spec).unwrap().density();
        let opts = RoofOptions { max_params: 16, ..Default::default() };
        assert!(matches!(
            q_convex_roof_upper(&rho, &opts),
            Err(Error::DimensionCap { .. })
        ));
    }
}
