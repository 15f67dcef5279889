use nalgebra::{DMatrix, DVector};
use num_complex::Complex64 as C64;

use super::basis::FockBasis;
use super::state::{DensityMatrix, FockState};
use crate::error::{Error, Result};
use crate::linalg::{kron, ZERO};

/// Single-mode ladder matrix ⟨m-1|â|m⟩ = √m on a `d`-level truncation.
///
/// The top level is annihilated into leakage: the matrix is the exact
/// truncation of the infinite operator with no renormalization, so all
/// correctness near the edge is delegated to the leakage checks.
pub fn annihilation_block(d: usize) -> DMatrix<C64> {
    let mut a = DMatrix::zeros(d, d);
    for m in 1..d {
        a[(m - 1, m)] = C64::new((m as f64).sqrt(), 0.0);
    }
    a
}

/// â on `mode`, identity on all other modes.
pub fn annihilation_op(basis: &FockBasis, mode: usize) -> Result<DMatrix<C64>> {
    basis.check_mode(mode)?;
    Ok(embed_single_mode(basis, mode, &annihilation_block(basis.cutoffs()[mode])))
}

pub fn creation_op(basis: &FockBasis, mode: usize) -> Result<DMatrix<C64>> {
    Ok(annihilation_op(basis, mode)?.adjoint())
}

/// Diagonal number operator on one mode.
pub fn number_op(basis: &FockBasis, mode: usize) -> Result<DMatrix<C64>> {
    basis.check_mode(mode)?;
    let d = basis.total_dim();
    let mut m = DMatrix::zeros(d, d);
    for idx in 0..d {
        m[(idx, idx)] = C64::new(basis.occupation(idx)[mode] as f64, 0.0);
    }
    Ok(m)
}

pub fn total_number_op(basis: &FockBasis) -> DMatrix<C64> {
    let d = basis.total_dim();
    let mut m = DMatrix::zeros(d, d);
    for idx in 0..d {
        let n: usize = basis.occupation(idx).iter().sum();
        m[(idx, idx)] = C64::new(n as f64, 0.0);
    }
    m
}

/// The 2N Hermitian quadratures (x̂_1, p̂_1, …, x̂_N, p̂_N) with
/// x̂ = (â + â†)/√2 and p̂ = (â − â†)/(i√2).
pub fn quadrature_ops(basis: &FockBasis) -> Result<Vec<DMatrix<C64>>> {
    let inv_sqrt2 = 1.0 / 2f64.sqrt();
    let mut ops = Vec::with_capacity(2 * basis.num_modes());
    for mode in 0..basis.num_modes() {
        let a = annihilation_op(basis, mode)?;
        let ad = a.adjoint();
        let x = (&a + &ad).map(|z| z * inv_sqrt2);
        let p = (&a - &ad).map(|z| z * C64::new(0.0, -inv_sqrt2));
        ops.push(x);
        ops.push(p);
    }
    Ok(ops)
}

/// Generator of the displacement D(β) = exp(βâ† − β*â) on one mode block.
pub fn displacement_generator(d: usize, beta: C64) -> DMatrix<C64> {
    let a = annihilation_block(d);
    let ad = a.adjoint();
    ad.map(|z| z * beta) - a.map(|z| z * beta.conj())
}

/// Generator of the squeeze S(ξ) = exp[(ξ*â² − ξâ†²)/2] on one mode block.
///
/// With this sign a real ξ = r > 0 squeezes the x̂ quadrature:
/// Var(x̂) = e^{-2r}/2 on S(r)|0⟩.
pub fn squeeze_generator(d: usize, xi: C64) -> DMatrix<C64> {
    let a = annihilation_block(d);
    let a2 = &a * &a;
    let ad2 = a2.adjoint();
    a2.map(|z| z * (0.5 * xi.conj())) - ad2.map(|z| z * (0.5 * xi))
}

/// Embed a single-mode operator block at `mode` (identity elsewhere).
pub fn embed_single_mode(basis: &FockBasis, mode: usize, block: &DMatrix<C64>) -> DMatrix<C64> {
    let pre: usize = basis.cutoffs()[..mode].iter().product();
    let post: usize = basis.cutoffs()[mode + 1..].iter().product();
    let mut out = DMatrix::identity(pre, pre);
    out = kron(&out, block);
    kron(&out, &DMatrix::identity(post, post))
}

/// Embed a two-mode operator block acting on `(mode_a, mode_b)` with
/// `mode_a < mode_b`; the block row index is `n_a · d_b + n_b`.
pub fn embed_two_mode(
    basis: &FockBasis,
    modes: (usize, usize),
    block: &DMatrix<C64>,
) -> Result<DMatrix<C64>> {
    let (ma, mb) = modes;
    basis.check_mode(ma)?;
    basis.check_mode(mb)?;
    if ma >= mb {
        return Err(Error::InvalidSpec("two-mode embed needs mode_a < mode_b".into()));
    }
    let (da, db) = (basis.cutoffs()[ma], basis.cutoffs()[mb]);
    let d = basis.total_dim();
    let mut out = DMatrix::zeros(d, d);
    for row in 0..d {
        let occ = basis.occupation(row);
        let r2 = occ[ma] * db + occ[mb];
        for na in 0..da {
            for nb in 0..db {
                let c2 = na * db + nb;
                let z = block[(r2, c2)];
                if z == ZERO {
                    continue;
                }
                let mut col_occ = occ.clone();
                col_occ[ma] = na;
                col_occ[mb] = nb;
                let col = basis.index_of(&col_occ)?;
                out[(row, col)] = z;
            }
        }
    }
    Ok(out)
}

/// Apply a single-mode block to a state vector without materializing the
/// embedded operator.
pub fn apply_single_mode_to_vector(
    basis: &FockBasis,
    mode: usize,
    block: &DMatrix<C64>,
    v: &DVector<C64>,
) -> Result<DVector<C64>> {
    basis.check_mode(mode)?;
    let dm = basis.cutoffs()[mode];
    let d = basis.total_dim();
    let mut out = DVector::zeros(d);
    for row in 0..d {
        let occ = basis.occupation(row);
        let mut acc = ZERO;
        let mut col_occ = occ.clone();
        for n in 0..dm {
            let z = block[(occ[mode], n)];
            if z == ZERO {
                continue;
            }
            col_occ[mode] = n;
            acc += z * v[basis.index_of(&col_occ)?];
        }
        out[row] = acc;
    }
    Ok(out)
}

/// Apply a two-mode block to a state vector without materializing the
/// embedded operator.
pub fn apply_two_mode_to_vector(
    basis: &FockBasis,
    modes: (usize, usize),
    block: &DMatrix<C64>,
    v: &DVector<C64>,
) -> Result<DVector<C64>> {
    let (ma, mb) = modes;
    basis.check_mode(ma)?;
    basis.check_mode(mb)?;
    let (da, db) = (basis.cutoffs()[ma], basis.cutoffs()[mb]);
    let d = basis.total_dim();
    let mut out = DVector::zeros(d);
    for row in 0..d {
        let occ = basis.occupation(row);
        let r2 = occ[ma] * db + occ[mb];
        let mut acc = ZERO;
        let mut col_occ = occ.clone();
        for na in 0..da {
            for nb in 0..db {
                let z = block[(r2, na * db + nb)];
                if z == ZERO {
                    continue;
                }
                col_occ[ma] = na;
                col_occ[mb] = nb;
                acc += z * v[basis.index_of(&col_occ)?];
            }
        }
        out[row] = acc;
    }
    Ok(out)
}

pub fn tensor_pure(a: &FockState, b: &FockState) -> Result<FockState> {
    let basis = a.basis().tensor(b.basis())?;
    let amplitudes = a.amplitudes().kronecker(b.amplitudes());
    FockState::new(basis, amplitudes, 1e-9)
}

pub fn tensor_density(a: &DensityMatrix, b: &DensityMatrix) -> Result<DensityMatrix> {
    let basis = a.basis().tensor(b.basis())?;
    let d = basis.total_dim();
    if d.saturating_mul(d) > super::basis::dim_cap() {
        return Err(Error::DimensionCap { requested: d * d, cap: super::basis::dim_cap() });
    }
    Ok(DensityMatrix::new_unchecked(basis, kron(a.matrix(), b.matrix())))
}

/// Trace out every mode not listed in `keep` (indices ascending).
pub fn partial_trace(rho: &DensityMatrix, keep: &[usize]) -> Result<DensityMatrix> {
    let basis = rho.basis();
    if keep.is_empty() {
        return Err(Error::InvalidSpec("keep_modes must be nonempty".into()));
    }
    let mut sorted = keep.to_vec();
    sorted.dedup();
    if sorted.len() != keep.len() || keep.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidSpec("keep_modes must be strictly ascending".into()));
    }
    for &m in keep {
        basis.check_mode(m)?;
    }
    let kept_cutoffs: Vec<usize> = keep.iter().map(|&m| basis.cutoffs()[m]).collect();
    let out_basis = FockBasis::new(&kept_cutoffs)?;
    let d = basis.total_dim();
    // For every full index, its (kept, traced) sub-indices.
    let mut kept_idx = vec![0usize; d];
    let mut traced_idx = vec![0usize; d];
    for idx in 0..d {
        let occ = basis.occupation(idx);
        let mut ki = 0;
        let mut ti = 0;
        for (mode, &n) in occ.iter().enumerate() {
            if keep.contains(&mode) {
                ki = ki * basis.cutoffs()[mode] + n;
            } else {
                ti = ti * basis.cutoffs()[mode] + n;
            }
        }
        kept_idx[idx] = ki;
        traced_idx[idx] = ti;
    }
    let dk = out_basis.total_dim();
    let mut out = DMatrix::zeros(dk, dk);
    let m = rho.matrix();
    for row in 0..d {
        for col in 0..d {
            if traced_idx[row] == traced_idx[col] {
                out[(kept_idx[row], kept_idx[col])] += m[(row, col)];
            }
        }
    }
    Ok(DensityMatrix::new_unchecked(out_basis, out))
}

/// Total mean photon number Tr[Σ â†_n â_n ρ].
pub fn mean_photon(rho: &DensityMatrix) -> f64 {
    let basis = rho.basis();
    let mut acc = 0.0;
    for idx in 0..basis.total_dim() {
        let n: usize = basis.occupation(idx).iter().sum();
        acc += rho.matrix()[(idx, idx)].re * n as f64;
    }
    acc
}

pub fn mean_photon_mode(rho: &DensityMatrix, mode: usize) -> Result<f64> {
    rho.basis().check_mode(mode)?;
    let basis = rho.basis();
    let mut acc = 0.0;
    for idx in 0..basis.total_dim() {
        acc += rho.matrix()[(idx, idx)].re * basis.occupation(idx)[mode] as f64;
    }
    Ok(acc)
}

pub fn mean_photon_pure(psi: &FockState) -> f64 {
    let basis = psi.basis();
    let mut acc = 0.0;
    for idx in 0..basis.total_dim() {
        let n: usize = basis.occupation(idx).iter().sum();
        acc += psi.amplitudes()[idx].norm_sqr() * n as f64;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{frobenius, ONE};

    #[test]
    fn ladder_entries() {
        let a = annihilation_block(3);
        assert_eq!(a[(0, 1)], ONE);
        assert!((a[(1, 2)].re - 2f64.sqrt()).abs() < 1e-15);
        assert_eq!(a[(2, 2)], ZERO);
    }

    #[test]
    fn annihilate_vacuum() {
        let b = FockBasis::new(&[4, 3]).unwrap();
        let vac = FockState::vacuum(b.clone());
        for mode in 0..2 {
            let a = annihilation_op(&b, mode).unwrap();
            assert!((a * vac.amplitudes()).norm() < 1e-15);
        }
    }

    #[test]
    fn mode_out_of_range() {
        let b = FockBasis::new(&[4]).unwrap();
        assert!(matches!(annihilation_op(&b, 1), Err(Error::ModeOutOfRange { .. })));
    }

    #[test]
    fn vacuum_quadrature_variances() {
        let b = FockBasis::single_mode(12).unwrap();
        let vac = FockState::vacuum(b.clone());
        let r = quadrature_ops(&b).unwrap();
        assert!((vac.variance(&r[0]) - 0.5).abs() < 1e-10);
        assert!((vac.variance(&r[1]) - 0.5).abs() < 1e-10);
    }

    #[test]
    fn canonical_commutator_away_from_edge() {
        let d = 14;
        let b = FockBasis::single_mode(d).unwrap();
        let r = quadrature_ops(&b).unwrap();
        let comm = &r[0] * &r[1] - &r[1] * &r[0];
        // exact on the subspace excluding the top two Fock levels
        let proj = comm.view((0, 0), (d - 2, d - 2)).clone_owned();
        let expect = DMatrix::from_diagonal(&DVector::from_element(d - 2, C64::new(0.0, 1.0)));
        assert!(frobenius(&(proj - expect)) < 1e-8);
    }

    #[test]
    fn two_mode_embed_matches_kron() {
        let b = FockBasis::new(&[3, 2, 4]).unwrap();
        // block = a ⊗ a† on modes (0, 2)
        let a0 = annihilation_block(3);
        let a2 = annihilation_block(4);
        let block = kron(&a0, &a2.adjoint());
        let emb = embed_two_mode(&b, (0, 2), &block).unwrap();
        let direct = annihilation_op(&b, 0).unwrap() * creation_op(&b, 2).unwrap();
        assert!(frobenius(&(emb - direct)) < 1e-13);
    }

    #[test]
    fn partial_trace_of_product() {
        let b1 = FockBasis::single_mode(5).unwrap();
        let b2 = FockBasis::single_mode(4).unwrap();
        let s = FockState::basis_state(b1, &[2]).unwrap();
        let vac = FockState::vacuum(b2);
        let joint = tensor_density(&s.to_density(), &vac.to_density()).unwrap();
        let red = partial_trace(&joint, &[0]).unwrap();
        let diff = red.matrix() - s.to_density().matrix();
        assert!(frobenius(&diff) < 1e-12);
        assert!((red.trace().re - 1.0).abs() < 1e-12);
    }

    #[test]
    fn mean_photon_fock() {
        let b = FockBasis::new(&[6, 6]).unwrap();
        let s = FockState::basis_state(b, &[2, 3]).unwrap();
        assert!((mean_photon_pure(&s) - 5.0).abs() < 1e-14);
        assert!((mean_photon(&s.to_density()) - 5.0).abs() < 1e-14);
    }
}
