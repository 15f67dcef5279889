use super::factory::{build_state_unchecked, BuiltState, StateSpec};
use crate::error::Result;

/// Truncation diagnostics: population sitting in the top Fock levels of each
/// mode. Anything above the threshold means reported quantities cannot be
/// trusted at this cutoff.
#[derive(Clone, Debug)]
pub struct LeakageReport {
    /// Population of the single top level, per mode.
    pub top_level_population: Vec<f64>,
    /// Population of the top two levels, per mode.
    pub top_two_population: Vec<f64>,
    pub threshold: f64,
    pub flagged: bool,
}

pub const LEAKAGE_FLAG_THRESHOLD: f64 = 1e-8;

pub fn leakage_report(state: &BuiltState) -> LeakageReport {
    let basis = state.basis();
    let modes = basis.num_modes();
    let mut top = vec![0.0; modes];
    let mut top2 = vec![0.0; modes];
    let weight = |idx: usize| -> f64 {
        match state {
            BuiltState::Pure(s) => s.amplitudes()[idx].norm_sqr(),
            BuiltState::Mixed(r) => r.matrix()[(idx, idx)].re,
        }
    };
    for idx in 0..basis.total_dim() {
        let occ = basis.occupation(idx);
        let w = weight(idx);
        for (mode, &n) in occ.iter().enumerate() {
            let d = basis.cutoffs()[mode];
            if n + 1 == d {
                top[mode] += w;
                top2[mode] += w;
            } else if n + 2 == d {
                top2[mode] += w;
            }
        }
    }
    let flagged = top2.iter().any(|&p| p > LEAKAGE_FLAG_THRESHOLD);
    LeakageReport {
        top_level_population: top,
        top_two_population: top2,
        threshold: LEAKAGE_FLAG_THRESHOLD,
        flagged,
    }
}

/// Leakage diagnostics for a spec, bypassing the factory's cutoff gate so
/// deliberately undersized cutoffs can be inspected.
pub fn leakage_report_for_spec(spec: &StateSpec) -> Result<LeakageReport> {
    Ok(leakage_report(&build_state_unchecked(spec)?))
}

/// Evaluate a quantity at the spec's cutoff and again with every cutoff
/// raised by `delta` (default 8); the difference is the truncation
/// convergence estimate that accompanies reported values.
pub fn with_increased_cutoff<F>(
    spec: &StateSpec,
    delta: usize,
    f: F,
) -> Result<(f64, f64)>
where
    F: Fn(&BuiltState) -> Result<f64>,
{
    let base = f(&super::factory::build_state(spec)?)?;
    let widened = f(&super::factory::build_state(&spec.widened(delta))?)?;
    Ok((base, widened))
}

pub const DEFAULT_CUTOFF_DELTA: usize = 8;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::factory::{StateKind, StateSpec};
    use num_complex::Complex64 as C64;

    #[test]
    fn vacuum_has_no_leakage() {
        let spec = StateSpec::uniform(StateKind::Vacuum { modes: 1 }, 8);
        let rep = leakage_report_for_spec(&spec).unwrap();
        assert_eq!(rep.top_level_population[0], 0.0);
        assert!(!rep.flagged);
    }

    #[test]
    fn coherent_tail_is_negligible_at_cutoff_30() {
        let spec =
            StateSpec::uniform(StateKind::Coherent { alphas: vec![C64::new(2.0, 0.0)] }, 30);
        let rep = leakage_report_for_spec(&spec).unwrap();
        assert!(rep.top_level_population[0] < 1e-8);
        assert!(!rep.flagged);
    }

    #[test]
    fn undersized_cat_is_flagged() {
        let spec = StateSpec::uniform(StateKind::Cat { alpha: C64::new(3.0, 0.0), sign: 1 }, 12);
        let rep = leakage_report_for_spec(&spec).unwrap();
        assert!(rep.flagged, "top population {:?}", rep.top_level_population);
    }
}
