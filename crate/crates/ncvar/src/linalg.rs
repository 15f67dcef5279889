//! Dense linear-algebra helpers shared across the crate: Kronecker products,
//! Hermitian eigendecompositions with a deterministic ordering, and small
//! validation utilities.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64 as C64;

use crate::error::{Error, Result};

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);

/// Kronecker product with the left factor owning the slow index.
pub fn kron(a: &DMatrix<C64>, b: &DMatrix<C64>) -> DMatrix<C64> {
    a.kronecker(b)
}

pub fn frobenius(m: &DMatrix<C64>) -> f64 {
    m.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Largest |A - A†| entry.
pub fn hermiticity_deviation(m: &DMatrix<C64>) -> f64 {
    let n = m.nrows();
    let mut dev: f64 = 0.0;
    for i in 0..n {
        for j in i..n {
            dev = dev.max((m[(i, j)] - m[(j, i)].conj()).norm());
        }
    }
    dev
}

pub fn unitarity_deviation(m: &DMatrix<C64>) -> f64 {
    let n = m.ncols();
    frobenius(&(m.adjoint() * m - DMatrix::<C64>::identity(n, n)))
}

/// Eigendecomposition of a Hermitian matrix, eigenvalues sorted descending.
///
/// The sort is stable and each eigenvector carries a deterministic phase
/// (largest-magnitude component rotated onto the positive real axis), so
/// degenerate spectra still produce reproducible output.
pub struct HermitianEig {
    /// Eigenvalues, descending.
    pub values: DVector<f64>,
    /// Columns are the matching eigenvectors.
    pub vectors: DMatrix<C64>,
}

pub fn hermitian_eig(m: &DMatrix<C64>) -> Result<HermitianEig> {
    let dev = hermiticity_deviation(m);
    if dev > 1e-8 {
        return Err(Error::NotHermitian(dev));
    }
    let n = m.nrows();
    let (mut raw_values, raw_vectors) = herm_eig_householder_ql(m)?;
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| {
        raw_values[j].partial_cmp(&raw_values[i]).expect("eigenvalue is NaN")
    });
    let mut values = DVector::zeros(n);
    let mut vectors = DMatrix::<C64>::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        values[dst] = raw_values[src];
        let mut col = raw_vectors.column(src).clone_owned();
        fix_phase(&mut col);
        vectors.set_column(dst, &col);
    }
    let _ = &mut raw_values;
    Ok(HermitianEig { values, vectors })
}

/// Hermitian eigendecomposition via complex Householder reduction to a real
/// symmetric tridiagonal followed by the implicit-shift QL iteration.
///
/// Hand-rolled because the general-purpose solver in the linear-algebra
/// backend breaks down (NaN output) on density matrices with structured
/// zero patterns, e.g. Kronecker products of sparse coherent amplitudes.
fn herm_eig_householder_ql(m: &DMatrix<C64>) -> Result<(Vec<f64>, DMatrix<C64>)> {
    let n = m.nrows();
    let mut a = m.clone();
    let mut q = DMatrix::<C64>::identity(n, n);
    // Householder reduction to Hermitian tridiagonal form
    for k in 0..n.saturating_sub(2) {
        let mut sigma = 0.0;
        for row in k + 1..n {
            sigma += a[(row, k)].norm_sqr();
        }
        let sigma = sigma.sqrt();
        if sigma < 1e-300 {
            continue;
        }
        let pivot = a[(k + 1, k)];
        let phase = if pivot.norm() > 0.0 { pivot / pivot.norm() } else { ONE };
        // v = x + phase·σ·e₁, normalized
        let mut v = DVector::<C64>::zeros(n);
        for row in k + 1..n {
            v[row] = a[(row, k)];
        }
        v[k + 1] += phase * sigma;
        let vnorm = v.norm();
        if vnorm < 1e-300 {
            continue;
        }
        for entry in v.iter_mut() {
            *entry /= vnorm;
        }
        // A ← (1 − 2vv†) A (1 − 2vv†) as a Hermitian rank-2 update
        let p = &a * &v;
        let kappa = (v.adjoint() * &p)[(0, 0)].re;
        let w = &p - &v * C64::new(kappa, 0.0);
        for row in 0..n {
            for col in 0..n {
                let upd = v[row] * w[col].conj() + w[row] * v[col].conj();
                a[(row, col)] -= upd * 2.0;
            }
        }
        // Q ← Q (1 − 2vv†)
        let qv = &q * &v;
        for row in 0..n {
            for col in 0..n {
                let upd = qv[row] * v[col].conj();
                q[(row, col)] -= upd * 2.0;
            }
        }
    }
    // rotate the complex subdiagonal onto the real axis: T̃ = D T D† with
    // D = diag(s), s_{i+1} chosen so each subdiagonal becomes |T_{i+1,i}|,
    // and the eigenvector frame follows as Q ← Q D†
    let mut d = vec![0.0; n];
    let mut e = vec![0.0; n];
    let mut s = vec![ONE; n];
    for i in 0..n {
        d[i] = a[(i, i)].re;
        if i + 1 < n {
            let sub = a[(i + 1, i)];
            let mag = sub.norm();
            e[i] = mag;
            s[i + 1] = if mag > 0.0 { s[i] * (sub.conj() / mag) } else { s[i] };
        }
    }
    for col in 0..n {
        let ph = s[col].conj();
        for row in 0..n {
            q[(row, col)] *= ph;
        }
    }
    ql_implicit_shift(&mut d, &mut e, &mut q)?;
    Ok((d, q))
}

/// Implicit-shift QL iteration on a real symmetric tridiagonal (d, e),
/// rotating the (complex) columns of `q` along; `e[i]` couples i and i+1.
/// EISPACK tql2 lineage: the deflation test is absolute against a running
/// norm of the tridiagonal, which keeps rank-deficient matrices (large
/// exact-zero eigenvalue blocks) from stalling the iteration.
fn ql_implicit_shift(d: &mut [f64], e: &mut [f64], q: &mut DMatrix<C64>) -> Result<()> {
    let n = d.len();
    if n <= 1 {
        return Ok(());
    }
    e[n - 1] = 0.0;
    let eps = f64::EPSILON;
    let mut f = 0.0;
    let mut tst1: f64 = 0.0;
    for l in 0..n {
        tst1 = tst1.max(d[l].abs() + e[l].abs());
        let mut m = l;
        while m < n {
            if e[m].abs() <= eps * tst1 {
                break;
            }
            m += 1;
        }
        if m > l {
            let mut iter = 0;
            loop {
                iter += 1;
                if iter > 200 {
                    return Err(Error::Numerics(
                        "tridiagonal QL failed to converge after 200 sweeps".into(),
                    ));
                }
                // implicit shift
                let g = d[l];
                let mut p = (d[l + 1] - g) / (2.0 * e[l]);
                let mut r = p.hypot(1.0);
                if p < 0.0 {
                    r = -r;
                }
                d[l] = e[l] / (p + r);
                d[l + 1] = e[l] * (p + r);
                let dl1 = d[l + 1];
                let mut h = g - d[l];
                for i in (l + 2)..n {
                    d[i] -= h;
                }
                f += h;
                // implicit QL sweep
                p = d[m];
                let mut c = 1.0;
                let mut c2 = c;
                let mut c3 = c;
                let el1 = e[l + 1];
                let mut s = 0.0;
                let mut s2 = 0.0;
                for i in (l..m).rev() {
                    c3 = c2;
                    c2 = c;
                    s2 = s;
                    let g = c * e[i];
                    h = c * p;
                    r = p.hypot(e[i]);
                    e[i + 1] = s * r;
                    s = e[i] / r;
                    c = p / r;
                    p = c * d[i] - s * g;
                    d[i + 1] = h + s * (c * g + s * d[i]);
                    for row in 0..q.nrows() {
                        let hi = q[(row, i + 1)];
                        let qi = q[(row, i)];
                        q[(row, i + 1)] =
                            C64::new(s * qi.re + c * hi.re, s * qi.im + c * hi.im);
                        q[(row, i)] = C64::new(c * qi.re - s * hi.re, c * qi.im - s * hi.im);
                    }
                }
                // tail correction (Jama/EISPACK form)
                p = -s * s2 * c3 * el1 * e[l] / dl1;
                e[l] = s * p;
                d[l] = c * p;
                if e[l].abs() <= eps * tst1 {
                    break;
                }
            }
        }
        d[l] += f;
        e[l] = 0.0;
    }
    Ok(())
}

fn fix_phase(v: &mut DVector<C64>) {
    let mut best = 0usize;
    let mut mag = -1.0;
    for (k, z) in v.iter().enumerate() {
        if z.norm() > mag + 1e-12 {
            mag = z.norm();
            best = k;
        }
    }
    let z = v[best];
    if z.norm() > 0.0 {
        let phase = z / z.norm();
        for entry in v.iter_mut() {
            *entry /= phase;
        }
    }
}

/// Real symmetric eigendecomposition, descending, deterministic signs
/// (largest-magnitude component positive).
pub struct SymmetricEig {
    pub values: DVector<f64>,
    pub vectors: DMatrix<f64>,
}

pub fn symmetric_eig(m: &DMatrix<f64>) -> Result<SymmetricEig> {
    let n = m.nrows();
    let mut dev: f64 = 0.0;
    for i in 0..n {
        for j in i..n {
            dev = dev.max((m[(i, j)] - m[(j, i)]).abs());
        }
    }
    if dev > 1e-8 {
        return Err(Error::NotHermitian(dev));
    }
    let sym = m.clone().symmetric_eigen();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| {
        sym.eigenvalues[j]
            .partial_cmp(&sym.eigenvalues[i])
            .expect("eigenvalue is NaN")
    });
    let mut values = DVector::zeros(n);
    let mut vectors = DMatrix::<f64>::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        values[dst] = sym.eigenvalues[src];
        let mut col = sym.eigenvectors.column(src).clone_owned();
        let mut best = 0usize;
        let mut mag = -1.0;
        for (k, x) in col.iter().enumerate() {
            if x.abs() > mag + 1e-12 {
                mag = x.abs();
                best = k;
            }
        }
        if col[best] < 0.0 {
            col.neg_mut();
        }
        vectors.set_column(dst, &col);
    }
    Ok(SymmetricEig { values, vectors })
}

/// Inverse square root of a symmetric positive definite matrix.
pub fn spd_inv_sqrt(m: &DMatrix<f64>) -> Result<(DMatrix<f64>, DMatrix<f64>)> {
    let eig = symmetric_eig(m)?;
    let n = m.nrows();
    if eig.values[n - 1] <= 0.0 {
        return Err(Error::Numerics(format!(
            "matrix not positive definite (min eigenvalue {:.3e})",
            eig.values[n - 1]
        )));
    }
    let sqrt_d = DMatrix::from_diagonal(&eig.values.map(|x| x.sqrt()));
    let inv_sqrt_d = DMatrix::from_diagonal(&eig.values.map(|x| 1.0 / x.sqrt()));
    let sqrt = &eig.vectors * sqrt_d * eig.vectors.transpose();
    let inv_sqrt = &eig.vectors * inv_sqrt_d * eig.vectors.transpose();
    Ok((sqrt, inv_sqrt))
}

pub fn to_complex(m: &DMatrix<f64>) -> DMatrix<C64> {
    m.map(|x| C64::new(x, 0.0))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hermitian_eig_reconstructs() {
        let m = DMatrix::from_row_slice(
            3,
            3,
            &[
                C64::new(1.0, 0.0),
                C64::new(0.5, 0.3),
                C64::new(0.0, -0.2),
                C64::new(0.5, -0.3),
                C64::new(2.0, 0.0),
                C64::new(0.1, 0.0),
                C64::new(0.0, 0.2),
                C64::new(0.1, 0.0),
                C64::new(-1.0, 0.0),
            ],
        );
        let eig = hermitian_eig(&m).unwrap();
        assert!(eig.values[0] >= eig.values[1] && eig.values[1] >= eig.values[2]);
        let d = DMatrix::from_diagonal(&eig.values.map(|x| C64::new(x, 0.0)));
        let recon = &eig.vectors * d * eig.vectors.adjoint();
        assert!(frobenius(&(recon - m)) < 1e-12);
    }

    #[test]
    fn non_hermitian_rejected() {
        let m = DMatrix::from_row_slice(2, 2, &[ONE, ONE, ZERO, ONE]);
        assert!(hermitian_eig(&m).is_err());
    }

    #[test]
    fn random_hermitian_eig_properties() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for n in [1usize, 2, 5, 17, 40] {
            let g = DMatrix::from_fn(n, n, |_, _| {
                C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
            });
            let h = (&g + g.adjoint()).map(|z| z * C64::new(0.5, 0.0));
            let eig = hermitian_eig(&h).unwrap();
            let d = DMatrix::from_diagonal(&eig.values.map(|x| C64::new(x, 0.0)));
            let recon = &eig.vectors * d * eig.vectors.adjoint();
            assert!(frobenius(&(recon - &h)) < 1e-10 * (1.0 + frobenius(&h)), "n={n}");
            assert!(unitarity_deviation(&eig.vectors) < 1e-10, "n={n}");
        }
    }

    #[test]
    fn structured_zero_pattern_eig() {
        // Kronecker products of sparse coherent amplitudes broke the
        // general-purpose solver; pin the robust behavior here.
        let d = 20usize;
        let alpha = C64::new(0.5, 0.0);
        let mut cp = DVector::<C64>::zeros(d);
        let mut cm = DVector::<C64>::zeros(d);
        cp[0] = C64::new((-alpha.norm_sqr() / 2.0).exp(), 0.0);
        cm[0] = cp[0];
        for k in 1..d {
            cp[k] = cp[k - 1] * alpha / C64::new((k as f64).sqrt(), 0.0);
            cm[k] = cm[k - 1] * (-alpha) / C64::new((k as f64).sqrt(), 0.0);
        }
        let plus = cp.kronecker(&cp) + cm.kronecker(&cm);
        let norm = plus.norm();
        let psi = plus.map(|z| z / norm);
        let rho = &psi * psi.adjoint();
        let eig = hermitian_eig(&rho).unwrap();
        assert!(eig.values.iter().all(|x| x.is_finite()));
        assert!((eig.values[0] - 1.0).abs() < 1e-10);
        assert!(eig.values[1].abs() < 1e-10);
        let overlap = (eig.vectors.column(0).adjoint() * &psi)[(0, 0)].norm();
        assert!((overlap - 1.0).abs() < 1e-10);
    }

    #[test]
    fn degenerate_spectrum_orthonormal() {
        // maximally mixed block plus an isolated eigenvalue
        let n = 6;
        let mut h = DMatrix::<C64>::identity(n, n);
        h[(0, 0)] = C64::new(3.0, 0.0);
        let eig = hermitian_eig(&h).unwrap();
        assert!((eig.values[0] - 3.0).abs() < 1e-12);
        for k in 1..n {
            assert!((eig.values[k] - 1.0).abs() < 1e-12);
        }
        assert!(unitarity_deviation(&eig.vectors) < 1e-12);
    }

    #[test]
    fn spd_inv_sqrt_roundtrip() {
        let m = DMatrix::from_row_slice(2, 2, &[2.0, 0.3, 0.3, 1.0]);
        let (s, si) = spd_inv_sqrt(&m).unwrap();
        assert!((&s * &s - &m).norm() < 1e-12);
        assert!((&s * &si - DMatrix::<f64>::identity(2, 2)).norm() < 1e-12);
    }
}
