use crate::error::{Error, Result};

/// Default cap on the number of complex entries of any single stored object
/// (state vector or density matrix). Overridable via `NCVAR_DIM_CAP`.
pub const DEFAULT_DIM_CAP: usize = 1 << 22;

pub fn dim_cap() -> usize {
    std::env::var("NCVAR_DIM_CAP")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(DEFAULT_DIM_CAP)
}

/// Truncated multimode Fock basis.
///
/// Mode `n` holds levels `|0..d_n-1⟩`. Basis states are enumerated with
/// mode 0 as the slowest index: `index = ((n_0·d_1 + n_1)·d_2 + n_2)…`,
/// matching the Kronecker-product order used by the operator builders.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FockBasis {
    cutoffs: Vec<usize>,
}

impl FockBasis {
    pub fn new(cutoffs: &[usize]) -> Result<Self> {
        if cutoffs.is_empty() || cutoffs.iter().any(|&d| d == 0) {
            return Err(Error::InvalidSpec(
                "basis needs at least one mode with a positive cutoff".into(),
            ));
        }
        let mut total: usize = 1;
        for &d in cutoffs {
            total = total
                .checked_mul(d)
                .ok_or(Error::DimensionCap { requested: usize::MAX, cap: dim_cap() })?;
        }
        if total > dim_cap() {
            return Err(Error::DimensionCap { requested: total, cap: dim_cap() });
        }
        Ok(Self { cutoffs: cutoffs.to_vec() })
    }

    pub fn single_mode(cutoff: usize) -> Result<Self> {
        Self::new(&[cutoff])
    }

    pub fn num_modes(&self) -> usize {
        self.cutoffs.len()
    }

    pub fn cutoffs(&self) -> &[usize] {
        &self.cutoffs
    }

    pub fn total_dim(&self) -> usize {
        self.cutoffs.iter().product()
    }

    /// Occupation numbers of the basis state at `index`.
    pub fn occupation(&self, index: usize) -> Vec<usize> {
        let mut occ = vec![0; self.num_modes()];
        let mut rem = index;
        for mode in (0..self.num_modes()).rev() {
            occ[mode] = rem % self.cutoffs[mode];
            rem /= self.cutoffs[mode];
        }
        occ
    }

    pub fn index_of(&self, occupation: &[usize]) -> Result<usize> {
        if occupation.len() != self.num_modes() {
            return Err(Error::BasisMismatch(format!(
                "occupation has {} modes, basis has {}",
                occupation.len(),
                self.num_modes()
            )));
        }
        let mut index = 0;
        for (mode, (&n, &d)) in occupation.iter().zip(&self.cutoffs).enumerate() {
            if n >= d {
                return Err(Error::InvalidSpec(format!(
                    "occupation {n} exceeds cutoff {d} on mode {mode}"
                )));
            }
            index = index * d + n;
        }
        Ok(index)
    }

    pub fn check_mode(&self, mode: usize) -> Result<()> {
        if mode >= self.num_modes() {
            return Err(Error::ModeOutOfRange { mode, num_modes: self.num_modes() });
        }
        Ok(())
    }

    pub fn tensor(&self, other: &FockBasis) -> Result<FockBasis> {
        let mut cutoffs = self.cutoffs.clone();
        cutoffs.extend_from_slice(&other.cutoffs);
        FockBasis::new(&cutoffs)
    }

    /// Same mode structure with every cutoff raised by `delta`.
    pub fn widened(&self, delta: usize) -> Result<FockBasis> {
        let cutoffs: Vec<usize> = self.cutoffs.iter().map(|&d| d + delta).collect();
        FockBasis::new(&cutoffs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enumeration_round_trips() {
        let b = FockBasis::new(&[3, 4, 2]).unwrap();
        assert_eq!(b.total_dim(), 24);
        for idx in 0..b.total_dim() {
            let occ = b.occupation(idx);
            assert_eq!(b.index_of(&occ).unwrap(), idx);
        }
        // mode 0 is the slowest index
        assert_eq!(b.index_of(&[1, 0, 0]).unwrap(), 8);
        assert_eq!(b.index_of(&[0, 1, 0]).unwrap(), 2);
        assert_eq!(b.index_of(&[0, 0, 1]).unwrap(), 1);
    }

    #[test]
    fn cap_enforced() {
        assert!(matches!(
            FockBasis::new(&[1 << 12, 1 << 12]),
            Err(Error::DimensionCap { .. })
        ));
    }
}
