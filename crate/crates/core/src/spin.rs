//! Spin operators on octonionic 2-spinors.
//!
//! `L_a psi = -(r_a psi) l` with `r_x = [[0, l], [l, 0]] / 2`,
//! `r_y = [[0, 1], [-1, 0]] / 2`, `r_z = [[l, 0], [0, -l]] / 2` (hbar = 1).
//! Inner products are projected onto the complex subalgebra spanned by
//! `1` and `l`.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{inner, OctMatrix, OctVector};
use crate::octonion::Octonion;

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(transparent)]
pub struct SpinState {
    pub psi: OctVector,
}

impl SpinState {
    pub fn new(up: Octonion, down: Octonion) -> Self {
        Self {
            psi: OctVector::new(vec![up, down]),
        }
    }

    /// `(1, k)`: spin up along z.
    pub fn psi_plus() -> Self {
        Self::new(Octonion::ONE, Octonion::K)
    }

    /// `(-k, 1)`: spin down along z.
    pub fn psi_minus() -> Self {
        Self::new(-Octonion::K, Octonion::ONE)
    }

    pub fn scale_right(&self, lambda: Octonion) -> Self {
        Self {
            psi: self.psi.scale_right(lambda),
        }
    }

    /// Euclidean distance between the component vectors.
    pub fn distance(&self, other: &SpinState) -> f64 {
        (&self.psi - &other.psi).norm()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SpinAxis {
    X,
    Y,
    Z,
}

impl SpinAxis {
    pub const ALL: [SpinAxis; 3] = [SpinAxis::X, SpinAxis::Y, SpinAxis::Z];

    pub fn generator(self) -> OctMatrix {
        let h = 0.5;
        let l = Octonion::L * h;
        let z = Octonion::ZERO;
        let rows = match self {
            SpinAxis::X => vec![vec![z, l], vec![l, z]],
            SpinAxis::Y => vec![vec![z, Octonion::real(h)], vec![Octonion::real(-h), z]],
            SpinAxis::Z => vec![vec![l, z], vec![z, -l]],
        };
        OctMatrix::from_rows(rows).expect("2x2 generator")
    }
}

impl fmt::Display for SpinAxis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SpinAxis::X => "x",
            SpinAxis::Y => "y",
            SpinAxis::Z => "z",
        })
    }
}

pub fn apply_l(axis: SpinAxis, state: &SpinState) -> SpinState {
    let r_psi = axis.generator().matvec(&state.psi).expect("2-spinor");
    let psi = OctVector::new(r_psi.iter().map(|c| -(*c * Octonion::L)).collect());
    SpinState { psi }
}

/// `(q + (l q) conj(l)) / 2`.
pub fn pi_project(q: Octonion) -> Octonion {
    (q + (Octonion::L * q) * Octonion::L.conj()) * 0.5
}

pub fn spin_inner(psi: &SpinState, chi: &SpinState) -> Octonion {
    pi_project(inner(&psi.psi, &chi.psi).expect("2-spinors"))
}

/// `Psi+ e^{l theta}`.
pub fn phase_state(theta: f64) -> SpinState {
    let phase = Octonion::unit_complex(Octonion::L, theta, 0.0).expect("l is a unit");
    SpinState::psi_plus().scale_right(phase)
}

/// Solves `psi_i lambda = (L psi)_i` on every non-zero component and
/// requires the solutions to agree within `eps`.
pub fn right_eigenvalue(axis: SpinAxis, state: &SpinState, eps: f64) -> Result<Octonion> {
    let image = apply_l(axis, state);
    let mut solutions = state
        .psi
        .iter()
        .zip(image.psi.iter())
        .filter(|(c, _)| c.norm() > eps)
        .map(|(c, lc)| c.inverse(0.0).map(|inv| inv * *lc));
    let first = solutions.next().ok_or(Error::ZeroComponent { index: 0 })??;
    for other in solutions {
        let other = other?;
        let gap = (other - first).norm();
        if gap > eps {
            return Err(Error::InvalidPair(format!(
                "not an eigenstate of L_{axis}: component eigenvalues {first} and {other} differ by {gap:e}"
            )));
        }
    }
    Ok(first)
}

/// `(4 L_x (L_y psi), 4 L_y (L_x psi))`, innermost operator first.
pub fn commutator_terms(state: &SpinState) -> (SpinState, SpinState) {
    let xy = apply_l(SpinAxis::X, &apply_l(SpinAxis::Y, state));
    let yx = apply_l(SpinAxis::Y, &apply_l(SpinAxis::X, state));
    let four = Octonion::real(4.0);
    (xy.scale_right(four), yx.scale_right(four))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpinEigenEntry {
    pub state: String,
    pub axis: SpinAxis,
    pub lambda: Octonion,
    /// `|L psi - psi lambda|`
    pub residual: f64,
}

/// Right eigenvalues of `L_x`, `L_y`, `L_z` on `Psi+`, `Psi-` and the phase
/// family at each `theta`.
pub fn eigenvalue_table(thetas: &[f64], eps: f64) -> Result<Vec<SpinEigenEntry>> {
    let mut states = vec![
        ("psi+".to_string(), SpinState::psi_plus()),
        ("psi-".to_string(), SpinState::psi_minus()),
    ];
    states.extend(thetas.iter().map(|t| (format!("phase({t})"), phase_state(*t))));
    let mut out = Vec::with_capacity(states.len() * 3);
    for (name, state) in &states {
        for axis in SpinAxis::ALL {
            let lambda = right_eigenvalue(axis, state, eps)?;
            let residual = apply_l(axis, state).distance(&state.scale_right(lambda));
            out.push(SpinEigenEntry {
                state: name.clone(),
                axis,
                lambda,
                residual,
            });
        }
    }
    Ok(out)
}
