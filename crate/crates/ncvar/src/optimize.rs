//! A small deterministic Nelder–Mead simplex minimizer for the
//! derivative-free searches (convex-roof decompositions, phase-estimation
//! meshes). Smooth nonconvex objectives, low dimension, multi-start.

/// Stopping and shape parameters.
#[derive(Clone, Copy, Debug)]
pub struct SimplexOptions {
    pub max_iters: usize,
    /// Stop when the simplex function spread falls below this.
    pub ftol: f64,
    /// Initial simplex step per coordinate.
    pub step: f64,
}

impl Default for SimplexOptions {
    fn default() -> Self {
        Self { max_iters: 2000, ftol: 1e-11, step: 0.25 }
    }
}

#[derive(Clone, Debug)]
pub struct SimplexResult {
    pub x: Vec<f64>,
    pub value: f64,
    pub iterations: usize,
    pub converged: bool,
}

/// Minimize `f` from `x0` with the standard reflect/expand/contract/shrink
/// moves (α=1, γ=2, ρ=1/2, σ=1/2). Fully deterministic for a fixed start.
pub fn nelder_mead<F>(mut f: F, x0: &[f64], opts: SimplexOptions) -> SimplexResult
where
    F: FnMut(&[f64]) -> f64,
{
    let dim = x0.len();
    assert!(dim > 0, "optimizer needs at least one coordinate");
    let mut simplex: Vec<Vec<f64>> = Vec::with_capacity(dim + 1);
    simplex.push(x0.to_vec());
    for k in 0..dim {
        let mut v = x0.to_vec();
        v[k] += if v[k].abs() > 1e-9 { opts.step * v[k].abs() } else { opts.step };
        simplex.push(v);
    }
    let mut values: Vec<f64> = simplex.iter().map(|v| f(v)).collect();

    let mut iterations = 0;
    let mut converged = false;
    while iterations < opts.max_iters {
        iterations += 1;
        // order ascending by value
        let mut order: Vec<usize> = (0..=dim).collect();
        order.sort_by(|&i, &j| values[i].partial_cmp(&values[j]).unwrap());
        let reordered: Vec<Vec<f64>> = order.iter().map(|&i| simplex[i].clone()).collect();
        let revalues: Vec<f64> = order.iter().map(|&i| values[i]).collect();
        simplex = reordered;
        values = revalues;

        if (values[dim] - values[0]).abs() < opts.ftol * (1.0 + values[0].abs()) {
            converged = true;
            break;
        }

        let centroid: Vec<f64> = (0..dim)
            .map(|k| simplex[..dim].iter().map(|v| v[k]).sum::<f64>() / dim as f64)
            .collect();
        let worst = simplex[dim].clone();
        let reflect: Vec<f64> =
            (0..dim).map(|k| centroid[k] + (centroid[k] - worst[k])).collect();
        let f_reflect = f(&reflect);

        if f_reflect < values[0] {
            let expand: Vec<f64> =
                (0..dim).map(|k| centroid[k] + 2.0 * (centroid[k] - worst[k])).collect();
            let f_expand = f(&expand);
            if f_expand < f_reflect {
                simplex[dim] = expand;
                values[dim] = f_expand;
            } else {
                simplex[dim] = reflect;
                values[dim] = f_reflect;
            }
        } else if f_reflect < values[dim - 1] {
            simplex[dim] = reflect;
            values[dim] = f_reflect;
        } else {
            let contract: Vec<f64> =
                (0..dim).map(|k| centroid[k] + 0.5 * (worst[k] - centroid[k])).collect();
            let f_contract = f(&contract);
            if f_contract < values[dim] {
                simplex[dim] = contract;
                values[dim] = f_contract;
            } else {
                // shrink toward the best vertex
                let best = simplex[0].clone();
                for v in simplex.iter_mut().skip(1) {
                    for k in 0..dim {
                        v[k] = best[k] + 0.5 * (v[k] - best[k]);
                    }
                }
                for (i, v) in simplex.iter().enumerate().skip(1) {
                    values[i] = f(v);
                }
            }
        }
    }

    let mut best = 0;
    for i in 1..=dim {
        if values[i] < values[best] {
            best = i;
        }
    }
    SimplexResult {
        x: simplex[best].clone(),
        value: values[best],
        iterations,
        converged,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadratic_bowl() {
        let f = |x: &[f64]| (x[0] - 1.5).powi(2) + 2.0 * (x[1] + 0.5).powi(2);
        let r = nelder_mead(f, &[0.0, 0.0], SimplexOptions::default());
        assert!(r.converged);
        assert!((r.x[0] - 1.5).abs() < 1e-5 && (r.x[1] + 0.5).abs() < 1e-5);
    }

    #[test]
    fn rosenbrock_valley() {
        let f = |x: &[f64]| (1.0 - x[0]).powi(2) + 100.0 * (x[1] - x[0] * x[0]).powi(2);
        let r = nelder_mead(
            f,
            &[-1.2, 1.0],
            SimplexOptions { max_iters: 5000, ..Default::default() },
        );
        assert!(r.value < 1e-8, "{}", r.value);
    }

    #[test]
    fn deterministic() {
        let f = |x: &[f64]| x.iter().map(|v| v.cos() + 0.1 * v * v).sum::<f64>();
        let a = nelder_mead(f, &[0.3, -0.7, 1.1], SimplexOptions::default());
        let b = nelder_mead(f, &[0.3, -0.7, 1.1], SimplexOptions::default());
        assert_eq!(a.x, b.x);
        assert_eq!(a.value, b.value);
    }
}
