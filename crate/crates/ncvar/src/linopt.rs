//! Linear optical unitaries in Fock space (displacement, phase rotation,
//! beam splitter, general passive unitary) and the linear optical channel
//! Φ_L(ρ) = Tr_E[Û (ρ ⊗ σ_E) Û†] with a classical ancilla.
//!
//! Passive unitaries are parameterized by an N×N unitary mixing matrix W
//! acting in the Heisenberg picture as Û† â_m Û = Σ_n W_mn â_n; the bridge
//! to the quadrature picture is the deterministic U(N) → O(2N) ∩ Sp(2N)
//! embedding of W†.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64 as C64;
use rand::Rng;

use crate::error::{Error, Result};
use crate::fock::{
    annihilation_block, apply_single_mode_to_vector, apply_two_mode_to_vector, build_state,
    displacement_generator, embed_single_mode, embed_two_mode, partial_trace, tensor_density,
    DensityMatrix, FockBasis, FockState, StateSpec,
};
use crate::linalg::{kron, unitarity_deviation, ZERO};

pub const UNITARITY_TOL: f64 = 1e-10;

/// D(β) = exp(βâ† − β*â) on `mode`.
pub fn displacement_unitary(basis: &FockBasis, mode: usize, beta: C64) -> Result<DMatrix<C64>> {
    basis.check_mode(mode)?;
    let block = displacement_generator(basis.cutoffs()[mode], beta).exp();
    Ok(embed_single_mode(basis, mode, &block))
}

/// exp(−iθ n̂) on `mode`, sending â → e^{−iθ} â.
pub fn phase_rotation(basis: &FockBasis, mode: usize, theta: f64) -> Result<DMatrix<C64>> {
    basis.check_mode(mode)?;
    let d = basis.total_dim();
    let mut m = DMatrix::zeros(d, d);
    for idx in 0..d {
        let n = basis.occupation(idx)[mode] as f64;
        m[(idx, idx)] = C64::new(0.0, -theta * n).exp();
    }
    Ok(m)
}

fn beam_splitter_block(da: usize, db: usize, theta: f64, phi: f64) -> DMatrix<C64> {
    let a = annihilation_block(da);
    let b = annihilation_block(db);
    let up = kron(&a.adjoint(), &b).map(|z| z * C64::new(0.0, phi).exp() * theta);
    let g = &up - up.adjoint();
    g.exp()
}

/// Number-conserving beam splitter on `(mode_a, mode_b)` realizing
/// â_a → cosθ â_a + e^{iφ} sinθ â_b, â_b → cosθ â_b − e^{−iφ} sinθ â_a.
pub fn beam_splitter(
    basis: &FockBasis,
    modes: (usize, usize),
    theta: f64,
    phi: f64,
) -> Result<DMatrix<C64>> {
    let (ma, mb) = modes;
    if ma == mb {
        return Err(Error::InvalidSpec("beam splitter needs two distinct modes".into()));
    }
    // the builder is symmetric under swapping modes with θ → −θ, φ → −φ
    if ma > mb {
        return beam_splitter(basis, (mb, ma), -theta, -phi);
    }
    basis.check_mode(mb)?;
    let block = beam_splitter_block(basis.cutoffs()[ma], basis.cutoffs()[mb], theta, phi);
    embed_two_mode(basis, (ma, mb), &block)
}

/// One Givens rotation of a mixing-matrix decomposition.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GivensStep {
    pub modes: (usize, usize),
    pub theta: f64,
    pub phi: f64,
}

impl GivensStep {
    /// The 2×2 mixing block [[cosθ, e^{iφ}sinθ], [−e^{−iφ}sinθ, cosθ]].
    fn mixing_block(&self) -> [[C64; 2]; 2] {
        let (c, s) = (self.theta.cos(), self.theta.sin());
        let e = C64::new(0.0, self.phi).exp();
        [
            [C64::new(c, 0.0), e * s],
            [-e.conj() * s, C64::new(c, 0.0)],
        ]
    }
}

/// Triangular (Reck-style) Givens decomposition of an N×N unitary:
/// eliminates sub-diagonal entries column by column, bottom-up, on adjacent
/// row pairs, leaving a diagonal of phases. Elimination order is fixed and
/// ties resolve to θ = 0, so parameter vectors are reproducible.
pub fn givens_decompose(mixing: &DMatrix<C64>) -> (Vec<GivensStep>, Vec<f64>) {
    let n = mixing.nrows();
    let mut w = mixing.clone();
    let mut steps = Vec::new();
    for col in 0..n.saturating_sub(1) {
        for row in (col + 1..n).rev() {
            let below = w[(row, col)];
            let (theta, phi) = if below.norm() < 1e-14 {
                continue;
            } else {
                let above = w[(row - 1, col)];
                if above.norm() < 1e-14 {
                    (std::f64::consts::FRAC_PI_2, 0.0)
                } else {
                    let z = below / above;
                    (z.norm().atan(), -z.arg())
                }
            };
            let step = GivensStep { modes: (row - 1, row), theta, phi };
            let blk = step.mixing_block();
            for c in 0..n {
                let top = w[(row - 1, c)];
                let bot = w[(row, c)];
                w[(row - 1, c)] = blk[0][0] * top + blk[0][1] * bot;
                w[(row, c)] = blk[1][0] * top + blk[1][1] * bot;
            }
            steps.push(step);
        }
    }
    let phases: Vec<f64> = (0..n).map(|k| w[(k, k)].arg()).collect();
    (steps, phases)
}

/// Rebuild the mixing matrix from its Givens decomposition (test oracle for
/// [`givens_decompose`]).
pub fn givens_compose(n: usize, steps: &[GivensStep], phases: &[f64]) -> DMatrix<C64> {
    let mut w = DMatrix::from_diagonal(&DVector::from_iterator(
        n,
        phases.iter().map(|&p| C64::new(0.0, p).exp()),
    ));
    for step in steps.iter().rev() {
        // left-multiply by G†
        let blk = step.mixing_block();
        let (a, b) = step.modes;
        for c in 0..n {
            let top = w[(a, c)];
            let bot = w[(b, c)];
            w[(a, c)] = blk[0][0].conj() * top + blk[1][0].conj() * bot;
            w[(b, c)] = blk[0][1].conj() * top + blk[1][1].conj() * bot;
        }
    }
    w
}

/// A passive (number-conserving) linear optical unitary.
#[derive(Clone, Debug)]
pub struct PassiveUnitary {
    mixing: DMatrix<C64>,
}

impl PassiveUnitary {
    pub fn new(mixing: DMatrix<C64>) -> Result<Self> {
        if mixing.nrows() != mixing.ncols() {
            return Err(Error::InvalidSpec("mixing matrix must be square".into()));
        }
        let dev = unitarity_deviation(&mixing);
        if dev > UNITARITY_TOL {
            return Err(Error::NotUnitary(dev));
        }
        Ok(Self { mixing })
    }

    pub fn identity(n: usize) -> Self {
        Self { mixing: DMatrix::identity(n, n) }
    }

    pub fn random<R: Rng>(n: usize, rng: &mut R) -> Self {
        Self { mixing: random_unitary(n, rng) }
    }

    pub fn num_modes(&self) -> usize {
        self.mixing.nrows()
    }

    pub fn mixing(&self) -> &DMatrix<C64> {
        &self.mixing
    }

    /// Fock-space unitary with Û† â_m Û = Σ_n W_mn â_n, composed from the
    /// Givens decomposition (beam splitters on adjacent pairs plus phases).
    pub fn to_fock(&self, basis: &FockBasis) -> Result<DMatrix<C64>> {
        if basis.num_modes() != self.num_modes() {
            return Err(Error::BasisMismatch(format!(
                "basis has {} modes, mixing matrix {}",
                basis.num_modes(),
                self.num_modes()
            )));
        }
        let (steps, phases) = givens_decompose(&self.mixing);
        let d = basis.total_dim();
        let mut u = DMatrix::identity(d, d);
        // W = G_1† G_2† … G_K† R  ⇒  Û = Û(G_1†) … Û(G_K†) Û(R)
        for step in &steps {
            let factor = beam_splitter(basis, step.modes, -step.theta, step.phi)?;
            u *= factor;
        }
        for (mode, &delta) in phases.iter().enumerate() {
            u *= phase_rotation(basis, mode, -delta)?;
        }
        Ok(u)
    }

    /// Apply to a pure state without materializing the full-dimension
    /// unitary; each Givens factor touches one two-mode block.
    pub fn apply_to_state(&self, state: &FockState) -> Result<FockState> {
        let basis = state.basis();
        if basis.num_modes() != self.num_modes() {
            return Err(Error::BasisMismatch("mode count mismatch".into()));
        }
        let (steps, phases) = givens_decompose(&self.mixing);
        let mut v = state.amplitudes().clone();
        // rightmost factor first: phases, then G_K†, …, G_1†
        for idx in 0..basis.total_dim() {
            let occ = basis.occupation(idx);
            let total: f64 =
                occ.iter().zip(phases.iter()).map(|(&n, &p)| -(n as f64) * p).sum();
            v[idx] *= C64::new(0.0, total).exp();
        }
        for step in steps.iter().rev() {
            let (ma, mb) = step.modes;
            let block = beam_splitter_block(
                basis.cutoffs()[ma],
                basis.cutoffs()[mb],
                -step.theta,
                step.phi,
            );
            v = apply_two_mode_to_vector(basis, (ma, mb), &block, &v)?;
        }
        FockState::new(basis.clone(), v, crate::fock::APPLIED_NORM_TOL)
    }

    /// The real orthogonal symplectic 2N×2N matrix O with
    /// Û† X̂_μ Û = X̂_{Oμ}; realification of W†.
    pub fn quadrature_rotation(&self) -> DMatrix<f64> {
        let n = self.num_modes();
        let wd = self.mixing.adjoint();
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
}

/// Haar-ish random unitary from the QR of a Ginibre sample.
pub fn random_unitary<R: Rng>(n: usize, rng: &mut R) -> DMatrix<C64> {
    use rand_distr::{Distribution, StandardNormal};
    let g = DMatrix::from_fn(n, n, |_, _| {
        let re: f64 = StandardNormal.sample(rng);
        let im: f64 = StandardNormal.sample(rng);
        C64::new(re, im)
    });
    let qr = g.qr();
    let mut q = qr.q();
    let r = qr.r();
    for c in 0..n {
        let d = r[(c, c)];
        if d.norm() > 0.0 {
            let phase = d / d.norm();
            for rr in 0..n {
                q[(rr, c)] *= phase.conj();
            }
        }
    }
    q
}

/// Mixing matrix folding a coherent amplitude vector onto mode 0:
/// W·α = (|γ|, 0, …, 0) with |γ| = √(Σ|α_n|²).
pub fn coherent_folding_unitary(alphas: &[C64]) -> Result<PassiveUnitary> {
    let n = alphas.len();
    let gamma = alphas.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    if gamma < 1e-14 {
        return Ok(PassiveUnitary::identity(n));
    }
    let mut w = DMatrix::<C64>::identity(n, n);
    let mut v = DVector::from_row_slice(alphas);
    // fold bottom-up onto component 0 with adjacent Givens rotations
    for row in (1..n).rev() {
        let below = v[row];
        if below.norm() < 1e-15 {
            continue;
        }
        let above = v[row - 1];
        let (theta, phi) = if above.norm() < 1e-15 {
            (std::f64::consts::FRAC_PI_2, -below.arg())
        } else {
            let z = below / above;
            (z.norm().atan(), -z.arg())
        };
        let step = GivensStep { modes: (row - 1, row), theta, phi };
        let blk = step.mixing_block();
        let (top, bot) = (v[row - 1], v[row]);
        v[row - 1] = blk[0][0] * top + blk[0][1] * bot;
        v[row] = blk[1][0] * top + blk[1][1] * bot;
        let mut g = DMatrix::<C64>::identity(n, n);
        g[(row - 1, row - 1)] = blk[0][0];
        g[(row - 1, row)] = blk[0][1];
        g[(row, row - 1)] = blk[1][0];
        g[(row, row)] = blk[1][1];
        w = g * w;
    }
    // rotate the residual phase of component 0 away
    let phase = v[0].arg();
    if phase.abs() > 1e-15 {
        let mut g = DMatrix::<C64>::identity(n, n);
        g[(0, 0)] = C64::new(0.0, -phase).exp();
        w = g * w;
    }
    PassiveUnitary::new(w)
}

/// A linear optical unitary Û_L^α = [⊗_n D̂_n(α_n)] · Û_L^0 with
/// displacement budget |α|² = Σ_n |α_n|².
#[derive(Clone, Debug)]
pub struct LinOpticalUnitary {
    pub passive: PassiveUnitary,
    pub displacements: Vec<C64>,
}

impl LinOpticalUnitary {
    pub fn new(passive: PassiveUnitary, displacements: Vec<C64>) -> Result<Self> {
        if displacements.len() != passive.num_modes() {
            return Err(Error::BasisMismatch(
                "one displacement per mode is required".into(),
            ));
        }
        Ok(Self { passive, displacements })
    }

    pub fn passive_only(passive: PassiveUnitary) -> Self {
        let n = passive.num_modes();
        Self { passive, displacements: vec![ZERO; n] }
    }

    pub fn budget(&self) -> f64 {
        self.displacements.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn to_fock(&self, basis: &FockBasis) -> Result<DMatrix<C64>> {
        let mut u = self.passive.to_fock(basis)?;
        for (mode, &alpha) in self.displacements.iter().enumerate() {
            if alpha != ZERO {
                u = displacement_unitary(basis, mode, alpha)? * u;
            }
        }
        Ok(u)
    }

    pub fn apply_to_state(&self, state: &FockState) -> Result<FockState> {
        let mut out = self.passive.apply_to_state(state)?;
        for (mode, &alpha) in self.displacements.iter().enumerate() {
            if alpha != ZERO {
                let basis = out.basis().clone();
                let block = displacement_generator(basis.cutoffs()[mode], alpha).exp();
                let v = apply_single_mode_to_vector(&basis, mode, &block, out.amplitudes())?;
                out = FockState::new(basis, v, crate::fock::APPLIED_NORM_TOL)?;
            }
        }
        Ok(out)
    }
}

/// A linear optical channel: dilation by a classical ancilla, a linear
/// optical unitary on the joint system, and a partial trace over the
/// ancilla modes.
#[derive(Clone, Debug)]
pub struct PhiLChannel {
    pub ancilla: StateSpec,
    pub unitary: LinOpticalUnitary,
}

impl PhiLChannel {
    pub fn new(ancilla: StateSpec, unitary: LinOpticalUnitary) -> Result<Self> {
        if !ancilla.kind.is_classical() {
            return Err(Error::NonClassicalAncilla(ancilla.kind.name().into()));
        }
        Ok(Self { ancilla, unitary })
    }

    /// Tr_E[Û (ρ_A ⊗ σ_E) Û†].
    pub fn apply(&self, rho_a: &DensityMatrix) -> Result<DensityMatrix> {
        let sigma = build_state(&self.ancilla)?.density();
        let joint = tensor_density(rho_a, &sigma)?;
        let n_sys = rho_a.basis().num_modes();
        let n_tot = joint.basis().num_modes();
        if self.unitary.passive.num_modes() != n_tot {
            return Err(Error::BasisMismatch(format!(
                "channel unitary acts on {} modes, joint state has {}",
                self.unitary.passive.num_modes(),
                n_tot
            )));
        }
        let u = self.unitary.to_fock(joint.basis())?;
        let rotated = joint.conjugate_by(&u);
        let keep: Vec<usize> = (0..n_sys).collect();
        let out = partial_trace(&rotated, &keep)?;
        let tr = out.trace();
        if (tr.re - 1.0).abs() > 1e-9 {
            return Err(Error::Numerics(format!(
                "channel output trace deviates by {:.3e}",
                (tr.re - 1.0).abs()
            )));
        }
        Ok(out)
    }
}

/// Identity-unitary channel with a vacuum ancilla (useful as a baseline).
pub fn identity_channel(sys_modes: usize, sys_cutoffs: &[usize], anc_cutoff: usize) -> Result<PhiLChannel> {
    let _ = sys_cutoffs;
    let ancilla = StateSpec::uniform(crate::fock::StateKind::Vacuum { modes: 1 }, anc_cutoff);
    let passive = PassiveUnitary::identity(sys_modes + 1);
    Ok(PhiLChannel::new(ancilla, LinOpticalUnitary::passive_only(passive))?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::{mean_photon_pure, quadrature_ops, StateKind};
    use crate::linalg::frobenius;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn displacement_creates_coherent() {
        let basis = FockBasis::single_mode(30).unwrap();
        let u = displacement_unitary(&basis, 0, c(0.5, 0.0)).unwrap();
        let moved = FockState::vacuum(basis.clone()).apply(&u).unwrap();
        let coh = build_state(&StateSpec::uniform(
            StateKind::Coherent { alphas: vec![c(0.5, 0.0)] },
            30,
        ))
        .unwrap();
        assert!((moved.inner(coh.as_pure().unwrap()).norm() - 1.0).abs() < 1e-8);
    }

    #[test]
    fn displacement_inverse() {
        let basis = FockBasis::single_mode(25).unwrap();
        let u = displacement_unitary(&basis, 0, c(0.4, 0.3)).unwrap();
        let v = displacement_unitary(&basis, 0, c(-0.4, -0.3)).unwrap();
        let prod = &u * &v;
        let d = basis.total_dim();
        // identity away from the truncation edge
        let sub = prod.view((0, 0), (d - 4, d - 4)).clone_owned();
        let id = DMatrix::<C64>::identity(d - 4, d - 4);
        assert!(frobenius(&(sub - id)) < 1e-8);
    }

    #[test]
    fn displacement_shifts_cat_mean() {
        let spec = StateSpec::uniform(StateKind::Cat { alpha: c(1.0, 0.0), sign: 1 }, 40);
        let cat = build_state(&spec).unwrap();
        let basis = cat.basis().clone();
        let r = quadrature_ops(&basis).unwrap();
        let before = cat.as_pure().unwrap().expectation(&r[0]).re;
        let beta = c(0.3, 0.2);
        let u = displacement_unitary(&basis, 0, beta).unwrap();
        let after = cat.as_pure().unwrap().apply(&u).unwrap().expectation(&r[0]).re;
        assert!((after - before - 2f64.sqrt() * beta.re).abs() < 1e-7);
    }

    #[test]
    fn fifty_fifty_merges_coherent_pair() {
        let alpha = 0.8;
        let spec = StateSpec::new(
            StateKind::Coherent { alphas: vec![c(alpha, 0.0), c(alpha, 0.0)] },
            vec![18, 18],
        );
        let s = build_state(&spec).unwrap();
        let u = beam_splitter(s.basis(), (0, 1), std::f64::consts::FRAC_PI_4, 0.0).unwrap();
        let merged = s.as_pure().unwrap().apply(&u).unwrap();
        let target = StateSpec::new(
            StateKind::Coherent { alphas: vec![c(alpha * 2f64.sqrt(), 0.0), ZERO] },
            vec![18, 18],
        );
        let target = build_state(&target).unwrap();
        assert!((merged.inner(target.as_pure().unwrap()).norm() - 1.0).abs() < 1e-8);
    }

    #[test]
    fn fifty_fifty_maps_ecs_to_cat() {
        let alpha = 1.0;
        let spec = StateSpec::new(
            StateKind::EntangledCoherent { alphas: vec![c(alpha, 0.0), c(alpha, 0.0)], sign: 1 },
            vec![20, 20],
        );
        let ecs = build_state(&spec).unwrap();
        let u = beam_splitter(ecs.basis(), (0, 1), std::f64::consts::FRAC_PI_4, 0.0).unwrap();
        let merged = ecs.as_pure().unwrap().apply(&u).unwrap();
        let target = StateSpec::new(
            StateKind::EntangledCoherent {
                alphas: vec![c(alpha * 2f64.sqrt(), 0.0), ZERO],
                sign: 1,
            },
            vec![20, 20],
        );
        let target = build_state(&target).unwrap();
        assert!((merged.inner(target.as_pure().unwrap()).norm() - 1.0).abs() < 1e-8);
    }

    #[test]
    fn random_passive_conserves_photon_number() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let basis = FockBasis::new(&[6, 6]).unwrap();
        for _ in 0..50 {
            let p = PassiveUnitary::random(2, &mut rng);
            // random two-mode pure state
            let dim = basis.total_dim();
            let raw = DVector::from_fn(dim, |_, _| {
                use rand_distr::{Distribution, StandardNormal};
                let re: f64 = StandardNormal.sample(&mut rng);
                let im: f64 = StandardNormal.sample(&mut rng);
                c(re, im)
            });
            let norm = raw.norm();
            let state =
                FockState::new(basis.clone(), raw.map(|z| z / norm), 1e-9).unwrap();
            let rotated = p.apply_to_state(&state).unwrap();
            let before = mean_photon_pure(&state);
            let after = mean_photon_pure(&rotated);
            assert!((before - after).abs() < 1e-8, "{before} vs {after}");
        }
    }

    #[test]
    fn givens_reconstructs_random_unitaries() {
        let mut rng = ChaCha8Rng::seed_from_u64(19);
        for n in [2usize, 3, 4] {
            for _ in 0..10 {
                let w = random_unitary(n, &mut rng);
                let (steps, phases) = givens_decompose(&w);
                let back = givens_compose(n, &steps, &phases);
                assert!(frobenius(&(back - &w)) < 1e-10);
            }
        }
    }

    #[test]
    fn to_fock_realizes_heisenberg_mixing() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let basis = FockBasis::new(&[7, 7]).unwrap();
        let p = PassiveUnitary::random(2, &mut rng);
        let u = p.to_fock(&basis).unwrap();
        assert!(unitarity_deviation(&u) < 1e-10);
        let w = p.mixing();
        for m in 0..2 {
            let am = crate::fock::annihilation_op(&basis, m).unwrap();
            let lhs = u.adjoint() * &am * &u;
            let mut rhs = DMatrix::<C64>::zeros(basis.total_dim(), basis.total_dim());
            for n in 0..2 {
                let an = crate::fock::annihilation_op(&basis, n).unwrap();
                rhs += an.map(|z| z * w[(m, n)]);
            }
            // compare on the subspace with total photon number ≤ cutoff − 2
            let diff = lhs - rhs;
            let mut max_entry: f64 = 0.0;
            for row in 0..basis.total_dim() {
                let ro = basis.occupation(row);
                if ro.iter().sum::<usize>() > 5 {
                    continue;
                }
                for col in 0..basis.total_dim() {
                    let co = basis.occupation(col);
                    if co.iter().sum::<usize>() > 5 {
                        continue;
                    }
                    max_entry = max_entry.max(diff[(row, col)].norm());
                }
            }
            assert!(max_entry < 1e-9, "mode {m}: {max_entry}");
        }
    }

    #[test]
    fn quadrature_rotation_is_orthogonal_symplectic() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let p = PassiveUnitary::random(3, &mut rng);
        let o = p.quadrature_rotation();
        let id = DMatrix::<f64>::identity(6, 6);
        assert!((o.transpose() * &o - &id).norm() < 1e-12);
        let omega = crate::gaussian::omega(3);
        assert!((&o * &omega * o.transpose() - &omega).norm() < 1e-12);
    }

    #[test]
    fn folding_unitary_concentrates_amplitudes() {
        let alphas = [c(0.6, 0.1), c(-0.3, 0.4), c(0.5, 0.0)];
        let w = coherent_folding_unitary(&alphas).unwrap();
        let v = DVector::from_row_slice(&alphas);
        let folded = w.mixing() * v;
        let gamma = alphas.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        assert!((folded[0] - c(gamma, 0.0)).norm() < 1e-12);
        assert!(folded[1].norm() < 1e-12 && folded[2].norm() < 1e-12);
    }

    #[test]
    fn identity_channel_preserves_state() {
        let spec = StateSpec::uniform(StateKind::Cat { alpha: c(1.0, 0.0), sign: 1 }, 20);
        let rho = build_state(&spec).unwrap().density();
        let ch = identity_channel(1, &[20], 6).unwrap();
        let out = ch.apply(&rho).unwrap();
        assert!(frobenius(&(out.matrix() - rho.matrix())) < 1e-10);
    }

    #[test]
    fn nonclassical_ancilla_rejected() {
        let anc = StateSpec::uniform(StateKind::Fock { n: 1 }, 6);
        let u = LinOpticalUnitary::passive_only(PassiveUnitary::identity(2));
        assert!(matches!(PhiLChannel::new(anc, u), Err(Error::NonClassicalAncilla(_))));
    }
}
