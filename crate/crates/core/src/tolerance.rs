use serde::Serialize;

use crate::error::{Error, Result};

/// Environment variable that overrides the default solver tolerance.
pub const TOLERANCE_ENV: &str = "OCTOEIG_TOLERANCE";

/// Absolute tolerances for identity checks and solver residuals.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Tolerance {
    /// Algebraic identities evaluated on O(1) inputs.
    pub eps_identity: f64,
    /// Eigenpair residuals and constraint checks.
    pub eps_solve: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance {
            eps_identity: 1e-12,
            eps_solve: 1e-9,
        }
    }
}

impl Tolerance {
    pub fn new(eps_identity: f64, eps_solve: f64) -> Result<Self> {
        if !(eps_identity > 0.0 && eps_identity.is_finite()) {
            return Err(Error::InvalidTolerance(format!(
                "eps_identity must be positive, got {eps_identity}"
            )));
        }
        if !(eps_solve > 0.0 && eps_solve.is_finite()) {
            return Err(Error::InvalidTolerance(format!(
                "eps_solve must be positive, got {eps_solve}"
            )));
        }
        if eps_identity > eps_solve {
            return Err(Error::InvalidTolerance(format!(
                "eps_identity ({eps_identity}) exceeds eps_solve ({eps_solve})"
            )));
        }
        Ok(Tolerance {
            eps_identity,
            eps_solve,
        })
    }

    /// Defaults, with `eps_solve` replaced by the value of
    /// [`TOLERANCE_ENV`] when it is set.
    pub fn from_env() -> Result<Self> {
        match std::env::var(TOLERANCE_ENV) {
            Ok(raw) => {
                let eps_solve: f64 = raw.trim().parse().map_err(|_| Error::Parse {
                    context: TOLERANCE_ENV.to_string(),
                    message: format!("not a number: {raw:?}"),
                })?;
                let eps_identity = Tolerance::default().eps_identity.min(eps_solve);
                Tolerance::new(eps_identity, eps_solve)
            }
            Err(_) => Ok(Tolerance::default()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_are_ordered() {
        let t = Tolerance::default();
        assert!(t.eps_identity <= t.eps_solve);
        assert_eq!(Tolerance::new(t.eps_identity, t.eps_solve), Ok(t));
    }

    #[test]
    fn rejects_bad_values() {
        assert!(Tolerance::new(0.0, 1e-9).is_err());
        assert!(Tolerance::new(1e-12, -1.0).is_err());
        assert!(Tolerance::new(1e-6, 1e-9).is_err());
        assert!(Tolerance::new(f64::NAN, 1e-9).is_err());
    }
}
