//! Parameter sweeps over the state families: Q against its photon-number
//! bound for the pure families, and M against the closed forms for
//! decohered cats and squeezed thermal states. These feed both the CLI CSV
//! output and the acceptance checks.

use num_complex::Complex64 as C64;
use rayon::prelude::*;

use crate::error::Result;
use crate::fock::{build_state, mean_photon, StateKind, StateSpec};
use crate::measures::q_pure;
use crate::qfi::metrological_power;

/// One pure-family sweep point: Q, its bound 2n̄/N, and the saturation flag.
#[derive(Clone, Debug)]
pub struct QRow {
    pub family: &'static str,
    pub parameter: f64,
    pub nbar: f64,
    pub q: f64,
    pub bound: f64,
    pub saturated: bool,
}

/// One mixed-family sweep point: numeric M next to its closed form.
#[derive(Clone, Debug)]
pub struct MRow {
    pub family: &'static str,
    pub label: String,
    pub parameter: f64,
    pub nbar: f64,
    pub m: f64,
    pub closed_form: f64,
    pub delta: f64,
}

fn c(re: f64) -> C64 {
    C64::new(re, 0.0)
}

/// The pure families: saturating (Fock, NOON, cat, squeezed vacuum) and
/// non-centered (Fock+coherent superposition, squeezed coherent,
/// photon-added coherent).
pub fn q_sweep_rows() -> Result<Vec<QRow>> {
    let mut specs: Vec<(&'static str, f64, StateSpec)> = Vec::new();
    for n in 1..=3usize {
        specs.push((
            "fock",
            n as f64,
            StateSpec::uniform(StateKind::Fock { n }, n + 20),
        ));
        specs.push((
            "noon",
            n as f64,
            StateSpec::uniform(StateKind::Noon { n }, n + 8),
        ));
    }
    for alpha in [0.5, 1.0, 1.5] {
        specs.push((
            "cat",
            alpha,
            StateSpec::uniform(StateKind::Cat { alpha: c(alpha), sign: 1 }, 35),
        ));
    }
    for r in [0.3, 0.6, 0.9] {
        specs.push((
            "squeezed_vacuum",
            r,
            StateSpec::uniform(StateKind::SqueezedVacuum { xi: c(r) }, 50),
        ));
    }
    for n in [1usize, 2] {
        let alpha = (n as f64).sqrt();
        specs.push((
            "fock_plus_coherent",
            n as f64,
            StateSpec::uniform(StateKind::FockPlusCoherent { n, alpha: c(alpha) }, 35),
        ));
    }
    for alpha in [0.5, 1.0] {
        specs.push((
            "squeezed_coherent",
            alpha,
            StateSpec::uniform(StateKind::SqueezedCoherent { xi: c(1.0), alpha: c(alpha) }, 70),
        ));
        specs.push((
            "photon_added_coherent",
            alpha,
            StateSpec::uniform(StateKind::PhotonAddedCoherent { alpha: c(alpha) }, 35),
        ));
    }
    specs
        .par_iter()
        .map(|(family, parameter, spec)| {
            let built = build_state(spec)?;
            let psi = built.as_pure().expect("pure family");
            let qp = q_pure(psi)?;
            Ok(QRow {
                family,
                parameter: *parameter,
                nbar: crate::fock::mean_photon_pure(psi),
                q: qp.q,
                bound: crate::measures::q_bound_pure(psi),
                saturated: qp.saturated,
            })
        })
        .collect()
}

/// Closed form for the decohered cat:
/// M = max{16|α|²Γ(Γ + e^{−2|α|²})/N_Γ², 0}, N_Γ = 2 + 2Γe^{−2|α|²}.
pub fn decohered_cat_closed_form(alpha: f64, gamma: f64) -> f64 {
    let e = (-2.0 * alpha * alpha).exp();
    let ng = 2.0 + 2.0 * gamma * e;
    (16.0 * alpha * alpha / (ng * ng) * gamma * (gamma + e)).max(0.0)
}

/// Closed form for the squeezed thermal state: M = max{e^{2r}/(2n̄+1) − 1, 0}.
pub fn squeezed_thermal_closed_form(r: f64, nbar: f64) -> f64 {
    ((2.0 * r).exp() / (2.0 * nbar + 1.0) - 1.0).max(0.0)
}

pub const DECOHERED_GAMMAS: [f64; 3] = [0.01, 0.3, 0.7];
pub const DECOHERED_ALPHAS: [f64; 4] = [0.5, 1.0, 1.5, 2.0];
pub const SQUEEZED_NBARS: [f64; 4] = [0.01, 0.1, 0.5, 1.0];
pub const SQUEEZED_RS: [f64; 2] = [0.4, 0.8];

/// The mixed-family sweep: 12 decohered-cat rows (Γ × α grid) and 8
/// squeezed-thermal rows (n̄ × r grid), each with its closed form.
pub fn m_sweep_rows() -> Result<Vec<MRow>> {
    let mut jobs: Vec<(&'static str, String, f64, StateSpec, f64)> = Vec::new();
    for &gamma in &DECOHERED_GAMMAS {
        for &alpha in &DECOHERED_ALPHAS {
            jobs.push((
                "decohered_cat",
                format!("gamma={gamma}"),
                alpha,
                StateSpec::uniform(StateKind::DecoheredCat { alpha: c(alpha), gamma }, 45),
                decohered_cat_closed_form(alpha, gamma),
            ));
        }
    }
    for &nbar in &SQUEEZED_NBARS {
        for &r in &SQUEEZED_RS {
            jobs.push((
                "squeezed_thermal",
                format!("nbar={nbar}"),
                r,
                StateSpec::uniform(StateKind::SqueezedThermal { xi: c(r), nbar }, 150),
                squeezed_thermal_closed_form(r, nbar),
            ));
        }
    }
    jobs.par_iter()
        .map(|(family, label, parameter, spec, closed)| {
            let rho = build_state(spec)?.density();
            let m = metrological_power(&rho)?.value;
            Ok(MRow {
                family,
                label: label.clone(),
                parameter: *parameter,
                nbar: mean_photon(&rho),
                m,
                closed_form: *closed,
                delta: (m - closed).abs(),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn q_rows_respect_the_bound() {
        let rows = q_sweep_rows().unwrap();
        assert!(!rows.is_empty());
        for row in &rows {
            assert!(row.q <= row.bound + 1e-8, "{} at {}: {row:?}", row.family, row.parameter);
            let centered = matches!(row.family, "fock" | "noon" | "cat" | "squeezed_vacuum");
            assert_eq!(row.saturated, centered, "{row:?}");
            if centered {
                assert!((row.q - row.bound).abs() < 1e-6, "{row:?}");
            }
        }
    }

    #[test]
    fn fock_row_saturates_exactly() {
        let rows = q_sweep_rows().unwrap();
        let row = rows
            .iter()
            .find(|r| r.family == "fock" && (r.parameter - 3.0).abs() < 1e-12)
            .unwrap();
        assert!((row.q - 6.0).abs() < 1e-6);
    }
}
